//! Mod-2 cohomology of `BO_k` / `BSO_k` as a polynomial ring in the
//! Stiefel-Whitney classes, with the Steenrod action given by the Wu formula
//! on generators and the Cartan formula on products.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use crate::expr::{self, ExprError};
use crate::steenrod::{binomial_mod2, SteenrodElement, SteenrodError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CharRingError {
    #[error("invalid ring context: {0}")]
    InvalidContext(String),
    #[error("w{index} is not a generator of {ctx}")]
    InvalidGenerator { index: u32, ctx: RingContext },
    #[error("polynomial is not homogeneous: found degrees {0:?}")]
    NonHomogeneous(Vec<u32>),
    #[error("degree {degree} exceeds the ring's degree cap {cap}")]
    DegreeCap { degree: u32, cap: u32 },
    #[error("p{index} needs w{} but the ring only has generators up to w{rank}", 2 * index)]
    PontryaginIndex { index: u32, rank: u32 },
    #[error("Pontryagin reduction requires an oriented ring")]
    NotOriented,
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error(transparent)]
    Parse(#[from] ExprError),
    #[error(transparent)]
    Steenrod(#[from] SteenrodError),
}

/// Which Stiefel-Whitney ring we compute in: `H^*(BO_k)` or, when
/// `oriented`, `H^*(BSO_k)` (where `w_1 = 0`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RingContext {
    rank: u32,
    oriented: bool,
    degree_cap: u32,
}

impl RingContext {
    /// A context with the default degree cap `2k + 2`.
    pub fn new(rank: u32, oriented: bool) -> Result<Self, CharRingError> {
        Self::with_degree_cap(rank, oriented, 2 * rank + 2)
    }

    pub fn with_degree_cap(rank: u32, oriented: bool, degree_cap: u32) -> Result<Self, CharRingError> {
        if rank < 1 {
            return Err(CharRingError::InvalidContext("rank must be at least 1".into()));
        }
        if rank > u16::MAX as u32 {
            return Err(CharRingError::InvalidContext("rank too large".into()));
        }
        if degree_cap < rank {
            return Err(CharRingError::InvalidContext(format!(
                "degree cap {degree_cap} is below the rank {rank}"
            )));
        }
        Ok(RingContext { rank, oriented, degree_cap })
    }

    /// `H^*(BO_k)`.
    pub fn bo(rank: u32) -> Result<Self, CharRingError> {
        Self::new(rank, false)
    }

    /// `H^*(BSO_k)`.
    pub fn bso(rank: u32) -> Result<Self, CharRingError> {
        Self::new(rank, true)
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn oriented(&self) -> bool {
        self.oriented
    }

    pub fn degree_cap(&self) -> u32 {
        self.degree_cap
    }

    pub fn is_generator(&self, j: u32) -> bool {
        j >= 1 && j <= self.rank && !(self.oriented && j == 1)
    }

    pub fn generators(&self) -> impl Iterator<Item = u32> + '_ {
        (1..=self.rank).filter(|&j| self.is_generator(j))
    }
}

impl fmt::Display for RingContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = if self.oriented { "BSO" } else { "BO" };
        write!(f, "{name}_{}", self.rank)
    }
}

/// A monomial `prod_i w_i^{e_i}`, stored as an exponent vector indexed by
/// `i - 1` with trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct SWMonomial {
    exps: Vec<u16>,
}

impl SWMonomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn generator(j: u32) -> Self {
        Self::from_exponents([(j, 1)])
    }

    /// Builds a monomial from `(index, exponent)` pairs; index 0 is ignored.
    pub fn from_exponents(pairs: impl IntoIterator<Item = (u32, u32)>) -> Self {
        let mut exps: Vec<u16> = Vec::new();
        for (j, e) in pairs {
            if j == 0 || e == 0 {
                continue;
            }
            let idx = (j - 1) as usize;
            if exps.len() <= idx {
                exps.resize(idx + 1, 0);
            }
            exps[idx] += e as u16;
        }
        let mut m = SWMonomial { exps };
        m.trim();
        m
    }

    fn trim(&mut self) {
        while self.exps.last() == Some(&0) {
            self.exps.pop();
        }
    }

    pub fn exponent(&self, j: u32) -> u32 {
        if j == 0 {
            return 0;
        }
        self.exps.get((j - 1) as usize).copied().unwrap_or(0) as u32
    }

    /// `(index, exponent)` pairs with nonzero exponent, highest index first.
    pub fn factors(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.exps
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| (i as u32 + 1, e as u32))
    }

    pub fn degree(&self) -> u32 {
        self.exps
            .iter()
            .enumerate()
            .map(|(i, &e)| (i as u32 + 1) * e as u32)
            .sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn max_index(&self) -> u32 {
        self.exps.len() as u32
    }

    pub fn mul(&self, other: &SWMonomial) -> SWMonomial {
        let (long, short) = if self.exps.len() >= other.exps.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut exps = long.exps.clone();
        for (a, b) in exps.iter_mut().zip(&short.exps) {
            *a += b;
        }
        SWMonomial { exps }
    }

    /// Raises to the power `2^s`.
    pub fn frobenius(&self, s: u32) -> SWMonomial {
        SWMonomial {
            exps: self.exps.iter().map(|&e| e << s).collect(),
        }
    }

    /// Whether every generator lies in `ctx`.
    pub fn lives_in(&self, ctx: &RingContext) -> bool {
        self.factors().all(|(j, _)| ctx.is_generator(j))
    }

    pub fn divisible_by(&self, j: u32) -> bool {
        self.exponent(j) >= 1
    }

    /// Divides by `w_j` once; `None` if not divisible.
    pub fn divide_by(&self, j: u32) -> Option<SWMonomial> {
        if !self.divisible_by(j) {
            return None;
        }
        let mut m = self.clone();
        m.exps[(j - 1) as usize] -= 1;
        m.trim();
        Some(m)
    }
}

impl Ord for SWMonomial {
    /// Graded, then lexicographic with the higher generator index more
    /// significant.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let n = self.exps.len().max(other.exps.len());
            for i in (0..n).rev() {
                let a = self.exps.get(i).copied().unwrap_or(0);
                let b = other.exps.get(i).copied().unwrap_or(0);
                match a.cmp(&b) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for SWMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SWMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        for (n, (j, e)) in self.factors().enumerate() {
            if n > 0 {
                f.write_str("*")?;
            }
            if e == 1 {
                write!(f, "w{j}")?;
            } else {
                write!(f, "w{j}^{e}")?;
            }
        }
        Ok(())
    }
}

/// An F2-polynomial in Stiefel-Whitney classes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SWPolynomial {
    ctx: RingContext,
    terms: BTreeSet<SWMonomial>,
}

impl SWPolynomial {
    pub fn zero(ctx: RingContext) -> Self {
        SWPolynomial { ctx, terms: BTreeSet::new() }
    }

    pub fn one(ctx: RingContext) -> Self {
        Self::from_monomial(ctx, SWMonomial::one())
    }

    /// A single monomial; monomials outside `ctx` give zero.
    pub fn from_monomial(ctx: RingContext, m: SWMonomial) -> Self {
        let mut p = Self::zero(ctx);
        p.toggle(m);
        p
    }

    pub fn from_monomials(ctx: RingContext, ms: impl IntoIterator<Item = SWMonomial>) -> Self {
        let mut p = Self::zero(ctx);
        for m in ms {
            p.toggle(m);
        }
        p
    }

    /// `w_j`, rejecting indices that are not generators of `ctx`.
    pub fn generator(ctx: RingContext, j: u32) -> Result<Self, CharRingError> {
        if !ctx.is_generator(j) {
            return Err(CharRingError::InvalidGenerator { index: j, ctx });
        }
        Ok(Self::from_monomial(ctx, SWMonomial::generator(j)))
    }

    /// Parses text such as `w11*w6*w3 + w11*w2^4`. Coefficients are reduced
    /// mod 2 and monomials involving classes outside `ctx` vanish.
    pub fn parse(text: &str, ctx: RingContext) -> Result<Self, CharRingError> {
        let poly = expr::parse(text)?;
        let mut out = Self::zero(ctx);
        for (mono, coeff) in poly {
            let mut pairs = Vec::new();
            for (var, e) in mono {
                let j = var
                    .strip_prefix('w')
                    .and_then(|d| d.parse::<u32>().ok())
                    .filter(|&j| j >= 1)
                    .ok_or_else(|| CharRingError::UnknownSymbol(var.clone()))?;
                pairs.push((j, e));
            }
            if coeff.rem_euclid(2) == 1 {
                out.toggle(SWMonomial::from_exponents(pairs));
            }
        }
        Ok(out)
    }

    pub fn context(&self) -> RingContext {
        self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn contains(&self, m: &SWMonomial) -> bool {
        self.terms.contains(m)
    }

    /// Terms in canonical printing order (largest first).
    pub fn terms(&self) -> impl Iterator<Item = &SWMonomial> {
        self.terms.iter().rev()
    }

    /// Adds a monomial with coefficient one; monomials outside the context
    /// are the zero class and are dropped.
    pub fn toggle(&mut self, m: SWMonomial) {
        if !m.lives_in(&self.ctx) {
            return;
        }
        if !self.terms.remove(&m) {
            self.terms.insert(m);
        }
    }

    /// Common degree of all terms; `Ok(None)` for zero.
    pub fn degree(&self) -> Result<Option<u32>, CharRingError> {
        let first = match self.terms.first() {
            None => return Ok(None),
            Some(m) => m.degree(),
        };
        let last = self.terms.last().map(SWMonomial::degree).unwrap_or(first);
        // terms are sorted by degree first
        if first == last {
            Ok(Some(first))
        } else {
            let degrees: BTreeSet<u32> = self.terms.iter().map(SWMonomial::degree).collect();
            Err(CharRingError::NonHomogeneous(degrees.into_iter().collect()))
        }
    }

    fn same_ctx(&self, other: &SWPolynomial) {
        assert_eq!(self.ctx, other.ctx, "polynomials from different ring contexts");
    }

    pub fn add(&self, other: &SWPolynomial) -> SWPolynomial {
        self.same_ctx(other);
        let mut out = self.clone();
        for m in &other.terms {
            out.toggle(m.clone());
        }
        out
    }

    pub fn mul(&self, other: &SWPolynomial) -> SWPolynomial {
        self.same_ctx(other);
        let mut out = SWPolynomial::zero(self.ctx);
        for a in &self.terms {
            for b in &other.terms {
                out.toggle(a.mul(b));
            }
        }
        out
    }

    pub fn square(&self) -> SWPolynomial {
        SWPolynomial::from_monomials(self.ctx, self.terms.iter().map(|m| m.frobenius(1)))
    }

    /// Restriction to a smaller ring: drops every monomial involving a class
    /// that is zero in `ctx`.
    pub fn project(&self, ctx: RingContext) -> SWPolynomial {
        SWPolynomial::from_monomials(ctx, self.terms.iter().cloned())
    }

    /// Whether every term is divisible by `w_j` (membership in the ideal).
    pub fn divisible_by(&self, j: u32) -> bool {
        self.terms.iter().all(|m| m.divisible_by(j))
    }

    /// Exact quotient by `w_j`, if every term is divisible.
    pub fn divide_by(&self, j: u32) -> Option<SWPolynomial> {
        let ms: Option<Vec<_>> = self.terms.iter().map(|m| m.divide_by(j)).collect();
        ms.map(|ms| SWPolynomial::from_monomials(self.ctx, ms))
    }

    /// Prints with `w_j` factored out, e.g. `w11*(w10*w3 + w9*w2^2)`. Falls
    /// back to the plain form when not every term is divisible.
    pub fn display_factored(&self, j: u32) -> String {
        if self.is_zero() {
            return "0".into();
        }
        match self.divide_by(j) {
            Some(q) if q.len() > 1 => format!("w{j}*({q})"),
            Some(q) if q.terms().next().is_some_and(SWMonomial::is_one) => format!("w{j}"),
            Some(q) => format!("w{j}*{q}"),
            None => self.to_string(),
        }
    }
}

impl fmt::Display for SWPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, m) in self.terms().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

/// `Sq^i(w_j)` by the Wu formula
/// `sum_t C(j-i+t-1, t) w_{i-t} w_{j+t}` (with `w_0 = 1`), together with
/// the unstable axioms for `i >= j`.
pub fn sq_generator(i: u32, j: u32, ctx: RingContext) -> Result<SWPolynomial, CharRingError> {
    if !ctx.is_generator(j) {
        return Err(CharRingError::InvalidGenerator { index: j, ctx });
    }
    let mut out = SWPolynomial::zero(ctx);
    if i > j {
        return Ok(out);
    }
    if i == j {
        out.toggle(SWMonomial::from_exponents([(j, 2)]));
        return Ok(out);
    }
    if i == 0 {
        out.toggle(SWMonomial::generator(j));
        return Ok(out);
    }
    for t in 0..=i {
        let top = j as i64 - i as i64 + t as i64 - 1;
        if t == 0 || binomial_mod2(top, t as i64) {
            out.toggle(SWMonomial::from_exponents([(i - t, 1), (j + t, 1)]));
        }
    }
    Ok(out)
}

/// Graded pieces `(extra degree, Sq^i(w_j)^{2^s})` of the total square of
/// `w_j^{2^s}`.
type Pieces = Vec<(u32, Vec<SWMonomial>)>;

fn total_square_pieces(
    j: u32,
    s: u32,
    ctx: RingContext,
    cache: &mut HashMap<(u32, u32), Pieces>,
) -> Result<Pieces, CharRingError> {
    if let Some(p) = cache.get(&(j, s)) {
        return Ok(p.clone());
    }
    let mut pieces = Vec::new();
    for i in 0..=j {
        let sq = sq_generator(i, j, ctx)?;
        if sq.is_zero() {
            continue;
        }
        pieces.push((i << s, sq.terms.iter().map(|m| m.frobenius(s)).collect()));
    }
    cache.insert((j, s), pieces.clone());
    Ok(pieces)
}

/// `Sq^n(p)`: the component of degree `deg p + n` of the total square
/// `Sq(p)`, where `Sq` is the ring map with `Sq(w_j) = sum_i Sq^i(w_j)`.
pub fn sq_poly(n: u32, p: &SWPolynomial) -> Result<SWPolynomial, CharRingError> {
    let ctx = p.ctx;
    let d = match p.degree()? {
        None => return Ok(SWPolynomial::zero(ctx)),
        Some(d) => d,
    };
    if n == 0 {
        return Ok(p.clone());
    }
    if n > d {
        return Ok(SWPolynomial::zero(ctx));
    }
    if d + n > ctx.degree_cap {
        return Err(CharRingError::DegreeCap { degree: d + n, cap: ctx.degree_cap });
    }
    let n_us = n as usize;
    let mut cache = HashMap::new();
    let mut out = SWPolynomial::zero(ctx);
    for mono in &p.terms {
        // acc[m] holds the part of the partial product raised by m degrees
        let mut acc: Vec<BTreeMap<SWMonomial, ()>> = vec![BTreeMap::new(); n_us + 1];
        acc[0].insert(SWMonomial::one(), ());
        for (j, e) in mono.factors() {
            let mut bits = e;
            let mut s = 0;
            while bits > 0 {
                if bits & 1 == 1 {
                    let pieces = total_square_pieces(j, s, ctx, &mut cache)?;
                    let mut next: Vec<BTreeMap<SWMonomial, ()>> = vec![BTreeMap::new(); n_us + 1];
                    for (m, part) in acc.iter().enumerate() {
                        for (shift, ms) in &pieces {
                            let target = m + *shift as usize;
                            if target > n_us {
                                continue;
                            }
                            for a in part.keys() {
                                for b in ms {
                                    let prod = a.mul(b);
                                    if next[target].remove(&prod).is_none() {
                                        next[target].insert(prod, ());
                                    }
                                }
                            }
                        }
                    }
                    acc = next;
                }
                bits >>= 1;
                s += 1;
            }
        }
        for m in acc.swap_remove(n_us).into_keys() {
            out.toggle(m);
        }
    }
    Ok(out)
}

/// Applies a Steenrod element, each word right to left.
pub fn apply_steenrod(e: &SteenrodElement, p: &SWPolynomial) -> Result<SWPolynomial, CharRingError> {
    p.degree()?;
    let mut out = SWPolynomial::zero(p.ctx);
    for word in e.terms() {
        let mut cur = p.clone();
        for &i in word.indices().iter().rev() {
            if cur.is_zero() {
                break;
            }
            cur = sq_poly(i, &cur)?;
        }
        out = out.add(&cur);
    }
    Ok(out)
}

/// A monomial `t^a p_1^{e_1} p_2^{e_2} ...` on the integral side.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct PontryaginMonomial {
    pub thom: u32,
    /// Exponent of `p_i` at index `i - 1`.
    pub pontryagin: Vec<u32>,
}

/// Integer polynomial in Pontryagin classes, possibly times the Thom class.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PontryaginExpression {
    pub terms: BTreeMap<PontryaginMonomial, i64>,
}

impl PontryaginExpression {
    /// Parses e.g. `t*(p1^2 - 2*p2)`.
    pub fn parse(text: &str) -> Result<Self, CharRingError> {
        let poly = expr::parse(text)?;
        let mut terms = BTreeMap::new();
        for (mono, coeff) in poly {
            let mut pm = PontryaginMonomial::default();
            for (var, e) in mono {
                if var == "t" {
                    pm.thom += e;
                    continue;
                }
                let i = var
                    .strip_prefix('p')
                    .and_then(|d| d.parse::<usize>().ok())
                    .filter(|&i| i >= 1)
                    .ok_or_else(|| CharRingError::UnknownSymbol(var.clone()))?;
                if pm.pontryagin.len() < i {
                    pm.pontryagin.resize(i, 0);
                }
                pm.pontryagin[i - 1] += e;
            }
            terms.insert(pm, coeff);
        }
        Ok(PontryaginExpression { terms })
    }

    pub fn max_index(&self) -> u32 {
        self.terms
            .keys()
            .filter_map(|m| m.pontryagin.iter().rposition(|&e| e > 0))
            .map(|i| i as u32 + 1)
            .max()
            .unwrap_or(0)
    }
}

/// Reduces mod 2 via `p_i -> w_{2i}^2` and `t -> w_k`.
pub fn reduce_pontryagin(
    expr: &PontryaginExpression,
    ctx: RingContext,
) -> Result<SWPolynomial, CharRingError> {
    if !ctx.oriented() {
        return Err(CharRingError::NotOriented);
    }
    let top = expr.max_index();
    if 2 * top > ctx.rank() {
        return Err(CharRingError::PontryaginIndex { index: top, rank: ctx.rank() });
    }
    let mut out = SWPolynomial::zero(ctx);
    for (m, &c) in &expr.terms {
        if c.rem_euclid(2) == 0 {
            continue;
        }
        let mut pairs = vec![(ctx.rank(), m.thom)];
        for (i, &e) in m.pontryagin.iter().enumerate() {
            pairs.push((2 * (i as u32 + 1), 2 * e));
        }
        out.toggle(SWMonomial::from_exponents(pairs));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bso11() -> RingContext {
        RingContext::bso(11).unwrap()
    }

    fn poly(s: &str, ctx: RingContext) -> SWPolynomial {
        SWPolynomial::parse(s, ctx).unwrap()
    }

    #[test]
    fn context_rules() {
        assert!(RingContext::bo(0).is_err());
        assert!(RingContext::with_degree_cap(5, false, 4).is_err());
        let c = bso11();
        assert_eq!(c.degree_cap(), 24);
        assert!(!c.is_generator(1));
        assert!(c.is_generator(11));
        assert!(!c.is_generator(12));
        assert!(RingContext::bo(3).unwrap().is_generator(1));
    }

    #[test]
    fn wu_examples() {
        let c = bso11();
        assert_eq!(sq_generator(2, 11, c).unwrap(), poly("w11*w2", c));
        assert_eq!(sq_generator(10, 11, c).unwrap(), poly("w11*w10", c));
        for j in 2..=11 {
            assert_eq!(sq_generator(j, j, c).unwrap(), poly(&format!("w{j}^2"), c));
            assert!(sq_generator(j + 1, j, c).unwrap().is_zero());
        }
        let bo3 = RingContext::bo(3).unwrap();
        assert_eq!(sq_generator(1, 2, bo3).unwrap(), poly("w1*w2 + w3", bo3));
        assert!(matches!(
            sq_generator(1, 1, c),
            Err(CharRingError::InvalidGenerator { index: 1, .. })
        ));
    }

    #[test]
    fn sq_poly_examples() {
        let c = bso11();
        assert_eq!(
            sq_poly(4, &poly("w11*w6*w3", c)).unwrap(),
            poly("w11*(w10*w3 + w8*w3*w2 + w6*w3*w2^2)", c)
        );
        assert_eq!(
            sq_poly(9, &poly("w11*w2^2", c)).unwrap(),
            poly("w11*(w9*w2^2 + w7*w3^2 + w5*w2^4)", c)
        );
        assert_eq!(sq_poly(5, &poly("w11*w2^4", c)).unwrap(), poly("w11*w5*w2^4", c));
        let p = poly("w11*w3 + w7*w5*w2", c);
        assert_eq!(sq_poly(0, &p).unwrap(), p);
    }

    #[test]
    fn sq_poly_rejects_bad_input() {
        let c = bso11();
        assert!(matches!(
            sq_poly(1, &poly("w2 + w3", c)),
            Err(CharRingError::NonHomogeneous(_))
        ));
        assert!(matches!(
            sq_poly(11, &poly("w11*w3", c)),
            Err(CharRingError::DegreeCap { degree: 25, cap: 24 })
        ));
    }

    #[test]
    fn pontryagin_reduction() {
        let c = bso11();
        let r = |s: &str| reduce_pontryagin(&PontryaginExpression::parse(s).unwrap(), c).unwrap();
        assert_eq!(r("t*p1"), poly("w11*w2^2", c));
        assert_eq!(r("t*(p1^2 - 2*p2)"), poly("w11*w2^4", c));
        assert_eq!(r("t"), poly("w11", c));
        assert_eq!(r("t*p2"), poly("w11*w4^2", c));
        let big = PontryaginExpression::parse("t*p6").unwrap();
        assert!(matches!(
            reduce_pontryagin(&big, c),
            Err(CharRingError::PontryaginIndex { index: 6, rank: 11 })
        ));
        let bo = RingContext::bo(11).unwrap();
        assert_eq!(reduce_pontryagin(&big, bo), Err(CharRingError::NotOriented));
    }

    #[test]
    fn printing_is_canonical() {
        let c = bso11();
        let p = poly("w9*w2^2 + w3*w10", c);
        assert_eq!(p.to_string(), "w10*w3 + w9*w2^2");
        let q = poly("w11*w10*w3 + w11*w9*w2^2", c);
        assert_eq!(q.display_factored(11), "w11*(w10*w3 + w9*w2^2)");
        assert_eq!(poly("w11*w5*w2^4", c).display_factored(11), "w11*w5*w2^4");
        assert_eq!(poly("w11", c).display_factored(11), "w11");
        assert_eq!(SWPolynomial::zero(c).to_string(), "0");
    }

    #[test]
    fn parse_drops_classes_outside_the_ring() {
        let c = bso11();
        assert!(poly("w1*w3 + w12", c).is_zero());
        assert!(SWPolynomial::parse("w0", c).is_err());
        assert!(SWPolynomial::parse("p1", c).is_err());
    }
}
