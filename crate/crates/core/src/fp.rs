//! Dense vectors over a prime field `F_p` and the few eliminations the
//! presentation checks need.

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

pub fn inverse(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    let (mut base, mut exp, mut acc) = (a % p, p - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// `a += c * b`, entrywise mod `p`.
pub fn axpy(a: &mut [u64], c: u64, b: &[u64], p: u64) {
    for (x, y) in a.iter_mut().zip(b) {
        *x = (*x + c * y) % p;
    }
}

/// Row-reduces `rows` in place and returns the nonzero echelon rows.
pub fn echelon(mut rows: Vec<Vec<u64>>, p: u64) -> Vec<Vec<u64>> {
    let width = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..width {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] % p != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = inverse(rows[rank][col], p);
        for x in rows[rank].iter_mut() {
            *x = *x * inv % p;
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[col] != 0 {
                let c = p - row[col];
                axpy(row, c, &pivot_row, p);
            }
        }
        rank += 1;
    }
    rows.truncate(rank);
    rows
}

pub fn rank(rows: &[Vec<u64>], p: u64) -> usize {
    echelon(rows.to_vec(), p).len()
}

pub fn in_span(span: &[Vec<u64>], v: &[u64], p: u64) -> bool {
    if v.iter().all(|&x| x % p == 0) {
        return true;
    }
    let base = rank(span, p);
    let mut with = span.to_vec();
    with.push(v.to_vec());
    rank(&with, p) == base
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_and_inverses() {
        assert!(is_prime(2) && is_prime(3) && is_prime(5) && !is_prime(9) && !is_prime(1));
        for a in 1..7 {
            assert_eq!(a * inverse(a, 7) % 7, 1);
        }
    }

    #[test]
    fn span_membership() {
        let span = vec![vec![1, 1, 0], vec![0, 1, 1]];
        assert!(in_span(&span, &[1, 0, 1], 2));
        assert!(!in_span(&span, &[1, 0, 1], 3));
        assert!(in_span(&span, &[1, 2, 1], 3));
        assert!(in_span(&[], &[0, 0], 5));
        assert_eq!(rank(&[vec![2, 4], vec![1, 2]], 5), 1);
    }
}
