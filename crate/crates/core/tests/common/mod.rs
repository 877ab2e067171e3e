//! Independent oracles shared by the integration tests and the acceptance
//! suite. Nothing here calls the algorithms it checks.
#![allow(dead_code)]

use std::collections::HashSet;

use rand::Rng;
use thomsq::{RingContext, SWMonomial, SWPolynomial};

/// A polynomial in `t_1..t_n` over F2, as a set of exponent vectors.
pub type TPoly = HashSet<Vec<u32>>;

fn toggle(p: &mut TPoly, m: Vec<u32>) {
    if !p.remove(&m) {
        p.insert(m);
    }
}

fn t_mul(a: &TPoly, b: &TPoly) -> TPoly {
    let mut out = TPoly::new();
    for x in a {
        for y in b {
            toggle(&mut out, x.iter().zip(y).map(|(i, j)| i + j).collect());
        }
    }
    out
}

/// Elementary symmetric polynomial `e_j(t_1..t_n)`.
fn elementary(j: usize, n: usize) -> TPoly {
    let mut out = TPoly::new();
    for mask in 0u32..1 << n {
        if mask.count_ones() as usize == j {
            out.insert((0..n).map(|i| mask >> i & 1).collect());
        }
    }
    out
}

/// Pulls a Stiefel-Whitney polynomial back to `n` line bundles, where
/// `w_j` becomes `e_j`. Injective on `H^*(BO_n)`.
pub fn split(p: &SWPolynomial, n: usize) -> TPoly {
    let mut out = TPoly::new();
    for m in p.terms() {
        let mut acc: TPoly = [vec![0; n]].into_iter().collect();
        for (j, e) in m.factors() {
            let ej = elementary(j as usize, n);
            for _ in 0..e {
                acc = t_mul(&acc, &ej);
            }
        }
        for x in acc {
            toggle(&mut out, x);
        }
    }
    out
}

/// `Sq^k` on `F2[t_1..t_n]` from `Sq(t) = t + t^2`:
/// `Sq^k t^a = sum_{|b| = k} prod C(a_i, b_i) t^{a+b}`.
pub fn sq_split(k: u32, p: &TPoly) -> TPoly {
    let mut out = TPoly::new();
    for a in p {
        let mut stack = vec![(0usize, k, a.clone())];
        while let Some((i, left, cur)) = stack.pop() {
            if i == a.len() {
                if left == 0 {
                    toggle(&mut out, cur);
                }
                continue;
            }
            for b in 0..=left.min(a[i]) {
                // C(a_i, b) is odd iff b's bits are a subset of a_i's
                if b & a[i] == b {
                    let mut next = cur.clone();
                    next[i] += b;
                    stack.push((i + 1, left - b, next));
                }
            }
        }
    }
    out
}

/// A random homogeneous polynomial of degree `d` with up to `terms` monomials.
pub fn random_poly<R: Rng>(rng: &mut R, ctx: RingContext, d: u32, terms: usize) -> SWPolynomial {
    let low = if ctx.oriented() { 2 } else { 1 };
    let mut out = SWPolynomial::zero(ctx);
    if d == 0 {
        return SWPolynomial::one(ctx);
    }
    for _ in 0..terms {
        let mut left = d;
        let mut pairs = Vec::new();
        let mut ok = true;
        while left > 0 {
            let top = left.min(ctx.rank());
            if top < low {
                ok = false;
                break;
            }
            let j = rng.gen_range(low..=top);
            pairs.push((j, 1));
            left -= j;
        }
        if ok {
            out.toggle(SWMonomial::from_exponents(pairs));
        }
    }
    out
}

/// Admissibility straight from the definition: `i_j >= 2 i_{j+1}`.
pub fn admissible(seq: &[u32]) -> bool {
    seq.windows(2).all(|w| w[0] >= 2 * w[1])
}

/// `2 i_1 - |I|`, which equals the telescoped excess of an admissible word.
pub fn excess(seq: &[u32]) -> i64 {
    match seq.first() {
        None => 0,
        Some(&i1) => 2 * i1 as i64 - seq.iter().map(|&i| i as i64).sum::<i64>(),
    }
}

fn all_sequences(budget: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    out.push(prefix.clone());
    for i in 1..=budget {
        prefix.push(i);
        all_sequences(budget - i, prefix, out);
        prefix.pop();
    }
}

/// Every sequence of positive integers with sum at most `d_max - k`,
/// filtered to admissible ones of excess below `k`.
pub fn brute_serre(k: u32, d_max: u32) -> Vec<Vec<u32>> {
    let mut all = Vec::new();
    if d_max >= k {
        all_sequences(d_max - k, &mut Vec::new(), &mut all);
    }
    all.into_iter()
        .filter(|s| admissible(s) && excess(s) < k as i64)
        .collect()
}

/// Reads a file from the repository's `fixtures/` directory.
pub fn fixture(name: &str) -> String {
    let path = format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("cannot read {path}: {e}"))
}
