//! The mod-2 Steenrod algebra in the basis of composable squares.
//!
//! A [`SqWord`] is a formal composite `Sq^{i1} Sq^{i2} ... Sq^{ir}` (applied
//! right to left) and a [`SteenrodElement`] is an F2-linear combination of
//! words. Adem relations rewrite any element into the admissible basis.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SteenrodError {
    #[error("element is not homogeneous: found degrees {0:?}")]
    NonHomogeneous(Vec<u32>),
    #[error("square indices must be positive")]
    ZeroIndex,
    #[error("cannot parse Steenrod element `{input}`: {reason}")]
    Parse { input: String, reason: String },
    #[error("Adem rewriting exceeded {cap} rounds in degree {degree}")]
    RewriteCap { degree: u32, cap: usize },
}

/// `C(m, n) mod 2` for `m >= 0`, by Lucas: odd iff the bits of `n` are a
/// subset of the bits of `m`.
#[inline]
pub fn binomial_mod2(m: i64, n: i64) -> bool {
    if m < 0 || n < 0 {
        return false;
    }
    n & m == n
}

/// A composite of Steenrod squares, leftmost square applied last.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct SqWord(Vec<u32>);

impl SqWord {
    pub fn new(indices: Vec<u32>) -> Result<Self, SteenrodError> {
        if indices.contains(&0) {
            return Err(SteenrodError::ZeroIndex);
        }
        Ok(SqWord(indices))
    }

    /// The empty word, i.e. `Sq^0 = 1`.
    pub fn identity() -> Self {
        SqWord(Vec::new())
    }

    pub fn indices(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_admissible(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= 2 * w[1])
    }

    /// `sum_j (i_j - 2 i_{j+1})` with `i_{r+1} = 0`.
    ///
    /// For inadmissible words some summands are negative; the result is
    /// clamped at zero in that case.
    pub fn excess(&self) -> u32 {
        let mut total: i64 = 0;
        for (j, &i) in self.0.iter().enumerate() {
            let next = self.0.get(j + 1).copied().unwrap_or(0) as i64;
            total += i as i64 - 2 * next;
        }
        total.max(0) as u32
    }

    /// Index of the leftmost adjacent pair `Sq^a Sq^b` with `a < 2b`.
    fn first_inadmissible(&self) -> Option<usize> {
        self.0.windows(2).position(|w| w[0] < 2 * w[1])
    }

    /// Composite `self ∘ other`.
    pub fn compose(&self, other: &SqWord) -> SqWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        SqWord(v)
    }
}

impl fmt::Display for SqWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (n, i) in self.0.iter().enumerate() {
            if n > 0 {
                f.write_str(".")?;
            }
            write!(f, "Sq{i}")?;
        }
        Ok(())
    }
}

impl FromStr for SqWord {
    type Err = SteenrodError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let err = |reason: &str| SteenrodError::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        if s == "1" {
            return Ok(SqWord::identity());
        }
        if s.is_empty() {
            return Err(err("empty word"));
        }
        let mut indices = Vec::new();
        for part in s.split('.') {
            let digits = part
                .trim()
                .strip_prefix("Sq")
                .ok_or_else(|| err("each factor must look like `Sq<n>`"))?;
            let i: u32 = digits
                .parse()
                .map_err(|_| err("square index is not a non-negative integer"))?;
            // Sq0 is the identity.
            if i > 0 {
                indices.push(i);
            }
        }
        Ok(SqWord(indices))
    }
}

/// An F2-linear combination of [`SqWord`]s, kept in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct SteenrodElement {
    terms: BTreeSet<SqWord>,
}

impl SteenrodElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from(SqWord::identity())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = &SqWord> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds a word with coefficient one; a word already present cancels.
    pub fn toggle(&mut self, word: SqWord) {
        if !self.terms.remove(&word) {
            self.terms.insert(word);
        }
    }

    pub fn add(&self, other: &SteenrodElement) -> SteenrodElement {
        let mut out = self.clone();
        for w in &other.terms {
            out.toggle(w.clone());
        }
        out
    }

    /// Product in the free algebra on the squares (concatenation), before
    /// any Adem reduction.
    pub fn compose(&self, other: &SteenrodElement) -> SteenrodElement {
        let mut out = SteenrodElement::zero();
        for a in &self.terms {
            for b in &other.terms {
                out.toggle(a.compose(b));
            }
        }
        out
    }

    /// Common degree of all terms; `Ok(None)` for the zero element.
    pub fn degree(&self) -> Result<Option<u32>, SteenrodError> {
        let degrees: BTreeSet<u32> = self.terms.iter().map(SqWord::degree).collect();
        match degrees.len() {
            0 => Ok(None),
            1 => Ok(degrees.into_iter().next()),
            _ => Err(SteenrodError::NonHomogeneous(degrees.into_iter().collect())),
        }
    }

    pub fn is_admissible(&self) -> bool {
        self.terms.iter().all(SqWord::is_admissible)
    }
}

impl From<SqWord> for SteenrodElement {
    fn from(w: SqWord) -> Self {
        let mut terms = BTreeSet::new();
        terms.insert(w);
        SteenrodElement { terms }
    }
}

impl FromIterator<SqWord> for SteenrodElement {
    fn from_iter<T: IntoIterator<Item = SqWord>>(iter: T) -> Self {
        let mut out = SteenrodElement::zero();
        for w in iter {
            out.toggle(w);
        }
        out
    }
}

impl fmt::Display for SteenrodElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, w) in self.terms.iter().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{w}")?;
        }
        Ok(())
    }
}

impl FromStr for SteenrodElement {
    type Err = SteenrodError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "0" {
            return Ok(SteenrodElement::zero());
        }
        s.split('+').map(str::parse::<SqWord>).collect()
    }
}

/// Rewrites `Sq^a Sq^b` (with `a < 2b`) as
/// `sum_j C(b-1-j, a-2j) Sq^{a+b-j} Sq^j`.
pub fn adem_relation(a: u32, b: u32) -> SteenrodElement {
    debug_assert!(a < 2 * b);
    let mut out = SteenrodElement::zero();
    for j in 0..=a / 2 {
        if binomial_mod2(b as i64 - 1 - j as i64, a as i64 - 2 * j as i64) {
            let mut w = vec![a + b - j];
            if j > 0 {
                w.push(j);
            }
            out.toggle(SqWord(w));
        }
    }
    out
}

/// Reduces a homogeneous element to its unique expression in admissible
/// words.
///
/// Every round rewrites the leftmost inadmissible pair of each remaining
/// word. A rewrite strictly lowers the weighted sum `sum_p p * i_p`, which is
/// bounded by `degree^2`, so the number of rounds is capped there.
pub fn adem_normalize(e: &SteenrodElement) -> Result<SteenrodElement, SteenrodError> {
    let degree = match e.degree()? {
        None => return Ok(SteenrodElement::zero()),
        Some(d) => d,
    };
    let cap = (degree as usize) * (degree as usize) + 2;
    let mut done = SteenrodElement::zero();
    let mut pending = e.clone();
    let mut rounds = 0;
    while !pending.is_zero() {
        if rounds > cap {
            return Err(SteenrodError::RewriteCap { degree, cap });
        }
        rounds += 1;
        let mut next = SteenrodElement::zero();
        for word in pending.terms {
            match word.first_inadmissible() {
                None => done.toggle(word),
                Some(p) => {
                    let (a, b) = (word.0[p], word.0[p + 1]);
                    for repl in adem_relation(a, b).terms {
                        let mut v = word.0[..p].to_vec();
                        v.extend_from_slice(&repl.0);
                        v.extend_from_slice(&word.0[p + 2..]);
                        next.toggle(SqWord(v));
                    }
                }
            }
        }
        pending = next;
    }
    Ok(done)
}

/// All admissible words of degree at most `max_degree`, in no particular
/// order. Includes the empty word.
fn admissible_words(max_degree: u32) -> Vec<SqWord> {
    fn extend(prefix: &mut Vec<u32>, budget: u32, out: &mut Vec<SqWord>) {
        out.push(SqWord(prefix.clone()));
        let bound = match prefix.last() {
            Some(&last) => (last / 2).min(budget),
            None => budget,
        };
        for i in 1..=bound {
            prefix.push(i);
            extend(prefix, budget - i, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), max_degree, &mut out);
    out
}

fn sort_by_degree_then_lex(words: &mut [SqWord]) {
    words.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)));
}

/// Admissible words of excess below `k` with `k + |I| <= d_max`: the
/// indices of the polynomial generators `Sq^I ι_k` of `H^*(K(Z/2, k); F2)`
/// through degree `d_max`.
pub fn serre_generators(k: u32, d_max: u32) -> Vec<SqWord> {
    if d_max < k {
        return Vec::new();
    }
    let mut words: Vec<SqWord> = admissible_words(d_max - k)
        .into_iter()
        .filter(|w| w.excess() < k)
        .collect();
    sort_by_degree_then_lex(&mut words);
    words
}

/// Nonempty admissible `J` with excess below `k`, `j_1 != 1` and `|J| + k`
/// even, restricted to `k + |J| <= d_max`. For these, `(Sq^J ι_k)^2` is not
/// the reduction of an integral class.
///
/// Returns an empty list for `k < 2`.
pub fn gsz_candidates(k: u32, d_max: u32) -> Vec<SqWord> {
    if k < 2 {
        return Vec::new();
    }
    serre_generators(k, d_max)
        .into_iter()
        .filter(|w| match w.indices().first() {
            Some(&j1) => j1 != 1 && (w.degree() + k) % 2 == 0,
            None => false,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[u32]) -> SqWord {
        SqWord::new(v.to_vec()).unwrap()
    }

    fn el(s: &str) -> SteenrodElement {
        s.parse().unwrap()
    }

    #[test]
    fn binomials_follow_lucas() {
        assert!(binomial_mod2(0, 0));
        assert!(binomial_mod2(5, 1));
        assert!(!binomial_mod2(4, 1));
        assert!(!binomial_mod2(2, 3));
        assert!(binomial_mod2(9, 9));
        assert!(!binomial_mod2(-1, 0));
    }

    #[test]
    fn adem_examples() {
        assert_eq!(adem_normalize(&el("Sq1.Sq10")).unwrap(), el("Sq11"));
        assert_eq!(adem_normalize(&el("Sq3")).unwrap(), el("Sq3"));
        assert_eq!(adem_normalize(&el("Sq2.Sq2")).unwrap(), el("Sq3.Sq1"));
        assert_eq!(adem_normalize(&el("Sq1.Sq1")).unwrap(), SteenrodElement::zero());
        // Sq2 Sq3 = Sq5 + Sq4 Sq1
        assert_eq!(adem_normalize(&el("Sq2.Sq3")).unwrap(), el("Sq5 + Sq4.Sq1"));
    }

    #[test]
    fn normalize_rejects_mixed_degrees() {
        let err = adem_normalize(&el("Sq1 + Sq2")).unwrap_err();
        assert_eq!(err, SteenrodError::NonHomogeneous(vec![1, 2]));
    }

    #[test]
    fn excess_examples() {
        assert_eq!(w(&[2, 1]).excess(), 1);
        assert_eq!(w(&[6, 2]).excess(), 4);
        for k in 1..20 {
            assert_eq!(w(&[k]).excess(), k);
        }
        assert_eq!(SqWord::identity().excess(), 0);
    }

    #[test]
    fn parse_and_print() {
        assert_eq!(el("Sq4.Sq2.Sq1").to_string(), "Sq4.Sq2.Sq1");
        assert_eq!(el("1").to_string(), "1");
        assert_eq!(el("0").to_string(), "0");
        assert_eq!(el("Sq2.Sq2 + Sq2.Sq2"), SteenrodElement::zero());
        assert!("sq4".parse::<SqWord>().is_err());
        assert!("Sq".parse::<SqWord>().is_err());
        assert!(SqWord::new(vec![2, 0]).is_err());
    }

    #[test]
    fn serre_small_cases() {
        assert_eq!(serre_generators(3, 3), vec![SqWord::identity()]);
        assert!(serre_generators(3, 2).is_empty());
        assert!(serre_generators(3, 6).contains(&w(&[2, 1])));
        assert!(!serre_generators(3, 5).contains(&w(&[2, 1])));
    }

    #[test]
    fn gsz_filter() {
        let c = gsz_candidates(3, 20);
        assert!(c.contains(&w(&[2, 1])));
        assert!(!c.contains(&w(&[1])));
        assert!(gsz_candidates(1, 20).is_empty());
    }
}
