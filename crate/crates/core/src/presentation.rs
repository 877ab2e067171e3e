//! Finite graded `F_p`-algebras standing in for the cohomology of a manifold.
//!
//! A presentation lists a basis in each degree, a sparse cup-product table,
//! sparse tables for the operations `Sq^i` (or `P^i` at odd primes), the
//! subspaces of classes known to lift to integral classes, named facts, and
//! optionally the fundamental class. Absent operation data is *unknown*, not
//! zero: lookups report [`PresentationError::NoData`] instead of guessing.
//!
//! File format, one statement per line, `#` starts a comment:
//!
//! ```text
//! space N24
//! prime 2
//! dim 24
//! gen 11 x
//! gen 13 y
//! gen 24 top
//! cup x y = top
//! op Sq2 x = y
//! rho_image 15 = none
//! fact betaP1_3_x_vanishes = true
//! fundamental top
//! ```

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::expr;
use crate::fp;
use crate::steenrod::binomial_mod2;

/// Sparse `F_p`-combination of generators, keyed by generator index.
/// Coefficients are nonzero and reduced mod `p`.
pub type Combination = BTreeMap<usize, u64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OpLabel {
    Sq(u32),
    P(u32),
}

impl OpLabel {
    /// Degree raised by the operation at prime `p`.
    pub fn shift(&self, p: u64) -> u32 {
        match *self {
            OpLabel::Sq(i) => i,
            OpLabel::P(i) => 2 * i * (p as u32 - 1),
        }
    }

    fn fits_prime(&self, p: u64) -> bool {
        matches!((self, p), (OpLabel::Sq(_), 2)) || matches!(self, OpLabel::P(_)) && p != 2
    }
}

impl fmt::Display for OpLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OpLabel::Sq(i) => write!(f, "Sq{i}"),
            OpLabel::P(i) => write!(f, "P{i}"),
        }
    }
}

impl FromStr for OpLabel {
    type Err = PresentationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || PresentationError::BadLabel(s.to_string());
        if let Some(d) = s.strip_prefix("Sq") {
            d.parse().map(OpLabel::Sq).map_err(|_| bad())
        } else if let Some(d) = s.strip_prefix('P') {
            d.parse().map(OpLabel::P).map_err(|_| bad())
        } else {
            Err(bad())
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
}

/// Classes in one degree that are reductions of integral classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RhoImage {
    All,
    /// Spanning set; empty means only zero lifts.
    Span(Vec<Combination>),
}

/// A class of fixed degree as a coefficient vector in that degree's basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PresentedClass {
    pub degree: u32,
    pub coeffs: Vec<u64>,
}

impl PresentedClass {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("{0}")]
    Syntax(String),
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error("degree {degree} is outside [0, {dim}]")]
    DegreeOutOfRange { degree: u32, dim: u32 },
    #[error("degree rule violated: {0}")]
    DegreeRule(String),
    #[error("unknown class `{0}`")]
    UnknownName(String),
    #[error("duplicate statement: {0}")]
    Duplicate(String),
    #[error("missing statement: {0}")]
    Missing(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("no data for {label} on `{generator}`")]
    NoData { label: String, generator: String },
    #[error("`{0}` is not an operation label (expected Sq<i> or P<i>)")]
    BadLabel(String),
    #[error("operation {label} is not defined at the prime {prime}")]
    LabelPrime { label: String, prime: u64 },
    #[error("cannot read class `{text}`: {reason}")]
    BadClass { text: String, reason: String },
    #[error("expected a class of degree {expected}, found degree {found}")]
    DegreeMismatch { expected: u32, found: u32 },
    #[error("class vector has length {found}, degree {degree} has dimension {expected}")]
    BadLength { degree: u32, expected: usize, found: usize },
    #[error("presentation has no fundamental class")]
    NoFundamental,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraPresentation {
    name: String,
    prime: u64,
    dim: u32,
    /// Index 0 is the unit `1` in degree 0.
    generators: Vec<Generator>,
    cup: BTreeMap<(usize, usize), Combination>,
    ops: BTreeMap<OpLabel, BTreeMap<usize, Combination>>,
    rho_image: BTreeMap<u32, RhoImage>,
    facts: BTreeMap<String, bool>,
    fundamental: Option<usize>,
}

const UNIT: usize = 0;

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
}

impl AlgebraPresentation {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn fact(&self, name: &str) -> Option<bool> {
        self.facts.get(name).copied()
    }

    pub fn facts(&self) -> &BTreeMap<String, bool> {
        &self.facts
    }

    pub fn rho_image(&self, degree: u32) -> Option<&RhoImage> {
        self.rho_image.get(&degree)
    }

    pub fn fundamental(&self) -> Option<&Generator> {
        self.fundamental.map(|g| &self.generators[g])
    }

    pub fn has_label(&self, label: OpLabel) -> bool {
        self.ops.contains_key(&label)
    }

    pub fn labels(&self) -> impl Iterator<Item = OpLabel> + '_ {
        self.ops.keys().copied()
    }

    fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    /// Generator indices of degree `d`, in declaration order.
    pub fn basis(&self, d: u32) -> Vec<usize> {
        self.generators
            .iter()
            .enumerate()
            .filter(|(_, g)| g.degree == d)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn dimension(&self, d: u32) -> usize {
        self.generators.iter().filter(|g| g.degree == d).count()
    }

    /// Degrees with a nonzero basis.
    pub fn degrees(&self) -> BTreeMap<u32, usize> {
        let mut out = BTreeMap::new();
        for g in &self.generators {
            *out.entry(g.degree).or_insert(0) += 1;
        }
        out
    }

    pub fn zero(&self, degree: u32) -> PresentedClass {
        PresentedClass { degree, coeffs: vec![0; self.dimension(degree)] }
    }

    fn class_of(&self, degree: u32, comb: &Combination) -> PresentedClass {
        let basis = self.basis(degree);
        let coeffs = basis
            .iter()
            .map(|g| comb.get(g).copied().unwrap_or(0))
            .collect();
        PresentedClass { degree, coeffs }
    }

    fn combination_of(&self, c: &PresentedClass) -> Combination {
        self.basis(c.degree)
            .into_iter()
            .zip(&c.coeffs)
            .filter(|(_, &x)| x % self.prime != 0)
            .map(|(g, &x)| (g, x % self.prime))
            .collect()
    }

    fn generator_class(&self, g: usize) -> PresentedClass {
        let mut comb = Combination::new();
        comb.insert(g, 1);
        self.class_of(self.generators[g].degree, &comb)
    }

    /// Checks that `c` is a well-formed vector for its degree.
    pub fn check_class(&self, c: &PresentedClass) -> Result<(), PresentationError> {
        let expected = self.dimension(c.degree);
        if c.coeffs.len() != expected {
            return Err(PresentationError::BadLength {
                degree: c.degree,
                expected,
                found: c.coeffs.len(),
            });
        }
        Ok(())
    }

    /// Reads a combination of generator names such as `x + 2*y`. `0` gives
    /// the zero class of `degree` when a degree is supplied.
    pub fn class(&self, text: &str) -> Result<PresentedClass, PresentationError> {
        self.class_in_degree(text, None)
    }

    pub fn class_in_degree(
        &self,
        text: &str,
        degree: Option<u32>,
    ) -> Result<PresentedClass, PresentationError> {
        let bad = |reason: String| PresentationError::BadClass { text: text.to_string(), reason };
        let (comb, found) = self.read_combination(text).map_err(|(_, k)| bad(k.to_string()))?;
        match (found, degree) {
            (Some(f), Some(d)) if f != d => Err(PresentationError::DegreeMismatch { expected: d, found: f }),
            (Some(f), _) => Ok(self.class_of(f, &comb)),
            (None, Some(d)) => Ok(self.zero(d)),
            (None, None) => Err(bad("the zero class needs an explicit degree".into())),
        }
    }

    /// Renders a class as a combination of generator names.
    pub fn render(&self, c: &PresentedClass) -> String {
        self.render_combination(&self.combination_of(c))
    }

    fn render_combination(&self, comb: &Combination) -> String {
        if comb.is_empty() {
            return "0".into();
        }
        comb.iter()
            .map(|(&g, &x)| {
                let name = &self.generators[g].name;
                if x == 1 {
                    name.clone()
                } else {
                    format!("{x}*{name}")
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Parses a linear combination; returns the combination and its degree
    /// (`None` for zero). Errors carry a 0-based column within `text`.
    fn read_combination(&self, text: &str) -> Result<(Combination, Option<u32>), (usize, ParseErrorKind)> {
        let poly = expr::parse(text)
            .map_err(|e| (e.column.saturating_sub(1), ParseErrorKind::Syntax(e.message)))?;
        let mut comb = Combination::new();
        let mut degree = None;
        for (mono, coeff) in poly {
            let g = match mono.len() {
                0 => UNIT,
                1 => {
                    let (name, &e) = mono.iter().next().expect("one variable");
                    if e != 1 {
                        return Err((0, ParseErrorKind::Syntax(format!("`{name}^{e}` is not linear"))));
                    }
                    self.generator_index(name).ok_or_else(|| {
                        (text.find(name.as_str()).unwrap_or(0), ParseErrorKind::UnknownName(name.clone()))
                    })?
                }
                _ => return Err((0, ParseErrorKind::Syntax("products are not allowed here".into()))),
            };
            let c = coeff.rem_euclid(self.prime as i64) as u64;
            if c == 0 {
                continue;
            }
            let d = self.generators[g].degree;
            if let Some(prev) = degree {
                if prev != d {
                    return Err((
                        0,
                        ParseErrorKind::DegreeRule(format!("combination mixes degrees {prev} and {d}")),
                    ));
                }
            }
            degree = Some(d);
            comb.insert(g, c);
        }
        Ok((comb, degree))
    }

    fn op_on_generator(&self, label: OpLabel, g: usize) -> Result<PresentedClass, PresentationError> {
        let d = self.generators[g].degree;
        let target = d + label.shift(self.prime);
        match label {
            OpLabel::Sq(0) | OpLabel::P(0) => return Ok(self.generator_class(g)),
            _ => {}
        }
        // forced by degrees or instability
        let unstable_zero = match label {
            OpLabel::Sq(i) => i > d,
            OpLabel::P(i) => 2 * i > d,
        };
        if target > self.dim || self.dimension(target) == 0 || unstable_zero {
            return Ok(self.zero(target));
        }
        if let Some(entry) = self.ops.get(&label).and_then(|m| m.get(&g)) {
            return Ok(self.class_of(target, entry));
        }
        if let OpLabel::Sq(i) = label {
            if self.prime == 2 && !i.is_power_of_two() {
                return self.sq_decomposed(i, &self.generator_class(g));
            }
        }
        Err(PresentationError::NoData {
            label: label.to_string(),
            generator: self.generators[g].name.clone(),
        })
    }

    /// `Sq^i` for `i = 2^s + r` with `0 < r < 2^s`, via the Adem relation
    /// for `Sq^r Sq^{2^s}`:
    /// `Sq^i = Sq^r Sq^{2^s} + sum_{j>=1} C(2^s-1-j, r-2j) Sq^{i-j} Sq^j`.
    fn sq_decomposed(&self, i: u32, c: &PresentedClass) -> Result<PresentedClass, PresentationError> {
        let high = 1u32 << (31 - i.leading_zeros());
        let r = i - high;
        let mut out = self.apply_op(OpLabel::Sq(r), &self.apply_op(OpLabel::Sq(high), c)?)?;
        for j in 1..=r / 2 {
            if binomial_mod2(high as i64 - 1 - j as i64, r as i64 - 2 * j as i64) {
                let term = self.apply_op(OpLabel::Sq(i - j), &self.apply_op(OpLabel::Sq(j), c)?)?;
                fp::axpy(&mut out.coeffs, 1, &term.coeffs, 2);
            }
        }
        Ok(out)
    }

    /// Applies an operation by its table. Values forced by degree, by
    /// instability or (for decomposable squares) by Adem relations are used
    /// when no entry is given; otherwise the result is `NoData`.
    pub fn apply_op(&self, label: OpLabel, c: &PresentedClass) -> Result<PresentedClass, PresentationError> {
        if !label.fits_prime(self.prime) {
            return Err(PresentationError::LabelPrime { label: label.to_string(), prime: self.prime });
        }
        self.check_class(c)?;
        let target = c.degree + label.shift(self.prime);
        let mut out = self.zero(target);
        for (g, &x) in self.basis(c.degree).into_iter().zip(&c.coeffs) {
            if x % self.prime == 0 {
                continue;
            }
            let img = self.op_on_generator(label, g)?;
            fp::axpy(&mut out.coeffs, x, &img.coeffs, self.prime);
        }
        Ok(out)
    }

    /// [`apply_op`](Self::apply_op) with a textual label such as `Sq2`.
    pub fn sq_apply(&self, label: &str, c: &PresentedClass) -> Result<PresentedClass, PresentationError> {
        self.apply_op(label.parse()?, c)
    }

    fn product_of_generators(&self, g: usize, h: usize) -> Combination {
        if g == UNIT {
            return [(h, 1)].into_iter().collect();
        }
        if h == UNIT {
            return [(g, 1)].into_iter().collect();
        }
        if let Some(c) = self.cup.get(&(g, h)) {
            return c.clone();
        }
        if let Some(c) = self.cup.get(&(h, g)) {
            let odd = self.generators[g].degree % 2 == 1 && self.generators[h].degree % 2 == 1;
            if odd && self.prime != 2 {
                return c.iter().map(|(&k, &x)| (k, self.prime - x)).collect();
            }
            return c.clone();
        }
        Combination::new()
    }

    /// Cup product from the table; unlisted products of generators are zero
    /// and the reversed entry is used with the graded sign.
    pub fn cup(&self, a: &PresentedClass, b: &PresentedClass) -> Result<PresentedClass, PresentationError> {
        self.check_class(a)?;
        self.check_class(b)?;
        let degree = a.degree + b.degree;
        let mut out = self.zero(degree);
        let p = self.prime;
        for (g, &x) in self.basis(a.degree).into_iter().zip(&a.coeffs) {
            for (h, &y) in self.basis(b.degree).into_iter().zip(&b.coeffs) {
                if x % p == 0 || y % p == 0 {
                    continue;
                }
                let prod = self.class_of(degree, &self.product_of_generators(g, h));
                fp::axpy(&mut out.coeffs, x * y % p, &prod.coeffs, p);
            }
        }
        Ok(out)
    }

    /// Evaluation on the fundamental class: the coefficient of the top
    /// generator, zero in other degrees.
    pub fn evaluate(&self, c: &PresentedClass) -> Result<u64, PresentationError> {
        let f = self.fundamental.ok_or(PresentationError::NoFundamental)?;
        self.check_class(c)?;
        if c.degree != self.generators[f].degree {
            return Ok(0);
        }
        Ok(self.combination_of(c).get(&f).copied().unwrap_or(0))
    }

    /// Basis of the declared `rho_image` subspace in `degree`, or `None` when
    /// nothing was declared.
    pub fn rho_image_basis(&self, degree: u32) -> Option<Vec<PresentedClass>> {
        let n = self.dimension(degree);
        let rows: Vec<Vec<u64>> = match self.rho_image.get(&degree)? {
            RhoImage::All => (0..n)
                .map(|i| (0..n).map(|j| u64::from(i == j)).collect())
                .collect(),
            RhoImage::Span(span) => {
                let rows = span.iter().map(|c| self.class_of(degree, c).coeffs).collect();
                fp::echelon(rows, self.prime)
            }
        };
        Some(rows.into_iter().map(|coeffs| PresentedClass { degree, coeffs }).collect())
    }

    /// Whether `c` lies in the declared integral-lift subspace; `None` when
    /// the degree has no `rho_image` statement.
    pub fn lifts_integrally(&self, c: &PresentedClass) -> Option<bool> {
        let basis = self.rho_image_basis(c.degree)?;
        let rows: Vec<Vec<u64>> = basis.into_iter().map(|b| b.coeffs).collect();
        Some(fp::in_span(&rows, &c.coeffs, self.prime))
    }
}

/// Splits a line into whitespace-separated tokens with 1-based columns.
fn tokens(s: &str, offset: usize) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in s.char_indices() {
        if ch.is_whitespace() {
            if let Some(st) = start.take() {
                out.push((offset + st + 1, &s[st..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(st) = start {
        out.push((offset + st + 1, &s[st..]));
    }
    out
}

struct Statement<'a> {
    line: usize,
    lhs: Vec<(usize, &'a str)>,
    rhs: Option<(usize, &'a str)>,
}

impl Statement<'_> {
    fn err(&self, column: usize, kind: ParseErrorKind) -> ParseError {
        ParseError { line: self.line, column, kind }
    }

    fn syntax(&self, column: usize, msg: impl Into<String>) -> ParseError {
        self.err(column, ParseErrorKind::Syntax(msg.into()))
    }

    fn expect_shape(&self, words: usize, has_rhs: bool, usage: &str) -> Result<(), ParseError> {
        if self.lhs.len() != words || self.rhs.is_some() != has_rhs {
            return Err(self.syntax(1, format!("expected `{usage}`")));
        }
        Ok(())
    }

    fn number<T: FromStr>(&self, idx: usize) -> Result<T, ParseError> {
        let (col, tok) = self.lhs[idx];
        tok.parse().map_err(|_| self.syntax(col, format!("`{tok}` is not a number")))
    }
}

/// Parses the line-oriented presentation format.
pub fn parse_presentation(text: &str) -> Result<AlgebraPresentation, ParseError> {
    let mut statements = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        let (lhs, rhs) = match line.find('=') {
            Some(eq) => (tokens(&line[..eq], 0), Some((eq + 1, &line[eq + 1..]))),
            None => (tokens(line, 0), None),
        };
        statements.push(Statement { line: n + 1, lhs, rhs });
    }

    let mut name = None;
    let mut prime = None;
    let mut dim = None;
    for st in &statements {
        let (col, keyword) = st.lhs.first().copied().unwrap_or((1, ""));
        match keyword {
            "space" => {
                st.expect_shape(2, false, "space <name>")?;
                if name.replace(st.lhs[1].1.to_string()).is_some() {
                    return Err(st.err(col, ParseErrorKind::Duplicate("space".into())));
                }
            }
            "prime" => {
                st.expect_shape(2, false, "prime <p>")?;
                let p: u64 = st.number(1)?;
                if !fp::is_prime(p) || p > 1 << 16 {
                    return Err(st.syntax(st.lhs[1].0, format!("{p} is not a supported prime")));
                }
                if prime.replace(p).is_some() {
                    return Err(st.err(col, ParseErrorKind::Duplicate("prime".into())));
                }
            }
            "dim" => {
                st.expect_shape(2, false, "dim <n>")?;
                if dim.replace(st.number::<u32>(1)?).is_some() {
                    return Err(st.err(col, ParseErrorKind::Duplicate("dim".into())));
                }
            }
            "gen" | "cup" | "op" | "sq" | "rho_image" | "fact" | "fundamental" => {}
            "" => return Err(st.syntax(1, "statement has no keyword")),
            other => return Err(st.syntax(col, format!("unknown keyword `{other}`"))),
        }
    }
    let dim = dim.ok_or(ParseError {
        line: 1,
        column: 1,
        kind: ParseErrorKind::Missing("dim <n>".into()),
    })?;
    let mut a = AlgebraPresentation {
        name: name.unwrap_or_default(),
        prime: prime.unwrap_or(2),
        dim,
        generators: vec![Generator { name: "1".into(), degree: 0 }],
        cup: BTreeMap::new(),
        ops: BTreeMap::new(),
        rho_image: BTreeMap::new(),
        facts: BTreeMap::new(),
        fundamental: None,
    };

    for st in statements.iter().filter(|s| s.lhs[0].1 == "gen") {
        st.expect_shape(3, false, "gen <degree> <name>")?;
        let degree: u32 = st.number(1)?;
        let (col, gname) = st.lhs[2];
        if degree > dim {
            return Err(st.err(st.lhs[1].0, ParseErrorKind::DegreeOutOfRange { degree, dim }));
        }
        if !is_identifier(gname) {
            return Err(st.syntax(col, format!("`{gname}` is not a valid class name")));
        }
        if a.generator_index(gname).is_some() {
            return Err(st.err(col, ParseErrorKind::DuplicateGenerator(gname.into())));
        }
        a.generators.push(Generator { name: gname.into(), degree });
    }

    let lookup = |a: &AlgebraPresentation, st: &Statement, idx: usize| -> Result<usize, ParseError> {
        let (col, n) = st.lhs[idx];
        a.generator_index(n)
            .ok_or_else(|| st.err(col, ParseErrorKind::UnknownName(n.into())))
    };
    let combination = |a: &AlgebraPresentation, st: &Statement, text: &str, col: usize, expected: u32| {
        let (comb, found) = a
            .read_combination(text)
            .map_err(|(c, kind)| st.err(col + c + 1, kind))?;
        match found {
            Some(d) if d != expected => Err(st.err(
                col + 1,
                ParseErrorKind::DegreeRule(format!("right-hand side has degree {d}, expected {expected}")),
            )),
            _ => Ok(comb),
        }
    };

    for st in &statements {
        let (col, keyword) = st.lhs[0];
        match keyword {
            "cup" => {
                st.expect_shape(3, true, "cup <name> <name> = <combination>")?;
                let g = lookup(&a, st, 1)?;
                let h = lookup(&a, st, 2)?;
                let (rcol, rhs) = st.rhs.expect("shape checked");
                let expected = a.generators[g].degree + a.generators[h].degree;
                let comb = combination(&a, st, rhs, rcol, expected)?;
                if a.cup.insert((g, h), comb).is_some() {
                    return Err(st.err(col, ParseErrorKind::Duplicate(format!(
                        "cup {} {}", st.lhs[1].1, st.lhs[2].1
                    ))));
                }
            }
            "op" | "sq" => {
                let label = if keyword == "op" {
                    st.expect_shape(3, true, "op <label> <name> = <combination>")?;
                    let (lcol, l) = st.lhs[1];
                    l.parse::<OpLabel>().map_err(|e| st.syntax(lcol, e.to_string()))?
                } else {
                    st.expect_shape(3, true, "sq <i> <name> = <combination>")?;
                    OpLabel::Sq(st.number(1)?)
                };
                if !label.fits_prime(a.prime) {
                    return Err(st.syntax(st.lhs[1].0, format!("{label} is not defined at p = {}", a.prime)));
                }
                let g = lookup(&a, st, 2)?;
                let (rcol, rhs) = st.rhs.expect("shape checked");
                let expected = a.generators[g].degree + label.shift(a.prime);
                let comb = combination(&a, st, rhs, rcol, expected)?;
                if a.ops.entry(label).or_default().insert(g, comb).is_some() {
                    return Err(st.err(col, ParseErrorKind::Duplicate(format!("{label} {}", st.lhs[2].1))));
                }
            }
            "rho_image" => {
                st.expect_shape(2, true, "rho_image <degree> = <names | none | all>")?;
                let degree: u32 = st.number(1)?;
                if degree > dim {
                    return Err(st.err(st.lhs[1].0, ParseErrorKind::DegreeOutOfRange { degree, dim }));
                }
                let (rcol, rhs) = st.rhs.expect("shape checked");
                let image = match rhs.trim() {
                    "all" => RhoImage::All,
                    "none" => RhoImage::Span(Vec::new()),
                    _ => {
                        let mut span = Vec::new();
                        let mut offset = rcol;
                        for part in rhs.split(',') {
                            span.push(combination(&a, st, part, offset, degree)?);
                            offset += part.len() + 1;
                        }
                        RhoImage::Span(span)
                    }
                };
                if a.rho_image.insert(degree, image).is_some() {
                    return Err(st.err(col, ParseErrorKind::Duplicate(format!("rho_image {degree}"))));
                }
            }
            "fact" => {
                st.expect_shape(2, true, "fact <identifier> = <true|false>")?;
                let (fcol, fname) = st.lhs[1];
                if !is_identifier(fname) {
                    return Err(st.syntax(fcol, format!("`{fname}` is not a valid fact name")));
                }
                let (rcol, rhs) = st.rhs.expect("shape checked");
                let value = match rhs.trim() {
                    "true" => true,
                    "false" => false,
                    other => return Err(st.syntax(rcol + 1, format!("expected true or false, found `{other}`"))),
                };
                if a.facts.insert(fname.into(), value).is_some() {
                    return Err(st.err(col, ParseErrorKind::Duplicate(format!("fact {fname}"))));
                }
            }
            "fundamental" => {
                st.expect_shape(2, false, "fundamental <name>")?;
                let g = lookup(&a, st, 1)?;
                if a.fundamental.replace(g).is_some() {
                    return Err(st.err(col, ParseErrorKind::Duplicate("fundamental".into())));
                }
            }
            _ => {}
        }
    }
    Ok(a)
}

impl FromStr for AlgebraPresentation {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_presentation(s)
    }
}

impl fmt::Display for AlgebraPresentation {
    /// Canonical text form; parses back to an equal presentation.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.name.is_empty() {
            writeln!(f, "space {}", self.name)?;
        }
        writeln!(f, "prime {}", self.prime)?;
        writeln!(f, "dim {}", self.dim)?;
        for g in &self.generators[1..] {
            writeln!(f, "gen {} {}", g.degree, g.name)?;
        }
        for ((g, h), c) in &self.cup {
            let name = |i: usize| &self.generators[i].name;
            writeln!(f, "cup {} {} = {}", name(*g), name(*h), self.render_combination(c))?;
        }
        for (label, entries) in &self.ops {
            for (g, c) in entries {
                writeln!(f, "op {label} {} = {}", self.generators[*g].name, self.render_combination(c))?;
            }
        }
        for (d, image) in &self.rho_image {
            let rhs = match image {
                RhoImage::All => "all".to_string(),
                RhoImage::Span(s) if s.is_empty() => "none".to_string(),
                RhoImage::Span(s) => s
                    .iter()
                    .map(|c| self.render_combination(c))
                    .collect::<Vec<_>>()
                    .join(", "),
            };
            writeln!(f, "rho_image {d} = {rhs}")?;
        }
        for (name, v) in &self.facts {
            writeln!(f, "fact {name} = {v}")?;
        }
        if let Some(g) = self.fundamental {
            writeln!(f, "fundamental {}", self.generators[g].name)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FindingKind {
    DegreeRule,
    SqZero,
    Unstable,
    Cartan,
    Adem,
    Commutativity,
    Pairing,
}

impl fmt::Display for FindingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FindingKind::DegreeRule => "degree-rule",
            FindingKind::SqZero => "identity-operation",
            FindingKind::Unstable => "unstable-axiom",
            FindingKind::Cartan => "cartan",
            FindingKind::Adem => "adem",
            FindingKind::Commutativity => "commutativity",
            FindingKind::Pairing => "pairing",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Finding {
    pub kind: FindingKind,
    pub witness: String,
}

/// `<g · op(g), [M]>` for an operation landing in the complementary degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelfPairing {
    pub class: String,
    pub label: OpLabel,
    pub value: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub findings: Vec<Finding>,
    /// Checks that passed, one line each.
    pub confirmed: Vec<String>,
    /// Checks skipped because some operation value is unknown.
    pub skipped: usize,
    pub self_pairings: Vec<SelfPairing>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.findings.is_empty()
    }

    fn fail(&mut self, kind: FindingKind, witness: String) {
        self.findings.push(Finding { kind, witness });
    }
}

/// Checks a presentation against the axioms wherever its data determines
/// both sides. Never fails; every problem becomes a finding.
pub fn validate(a: &AlgebraPresentation) -> ValidationReport {
    let mut report = ValidationReport::default();
    let p = a.prime;
    let name = |g: usize| a.generators[g].name.clone();

    // degree rules on stored data
    for ((g, h), comb) in &a.cup {
        let d = a.generators[*g].degree + a.generators[*h].degree;
        if comb.keys().any(|&k| a.generators[k].degree != d) {
            report.fail(FindingKind::DegreeRule, format!("cup {} {} is not in degree {d}", name(*g), name(*h)));
        }
    }
    for (label, entries) in &a.ops {
        for (g, comb) in entries {
            let d = a.generators[*g].degree + label.shift(p);
            if comb.keys().any(|&k| a.generators[k].degree != d) {
                report.fail(FindingKind::DegreeRule, format!("{label} {} is not in degree {d}", name(*g)));
            }
            let i = match label {
                OpLabel::Sq(i) | OpLabel::P(i) => *i,
            };
            if i == 0 && comb != &[(*g, 1)].into_iter().collect::<Combination>() {
                report.fail(FindingKind::SqZero, format!("{label} {} = {} is not the identity", name(*g), a.render_combination(comb)));
            }
            let deg_g = a.generators[*g].degree;
            let above = match label {
                OpLabel::Sq(i) => *i > deg_g,
                OpLabel::P(i) => 2 * i > deg_g,
            };
            if above && !comb.is_empty() {
                report.fail(
                    FindingKind::Unstable,
                    format!("{label} {} = {} but {label} vanishes in degree {deg_g}", name(*g), a.render_combination(comb)),
                );
            }
            if let (OpLabel::Sq(i), Some(sq)) = (label, a.cup.get(&(*g, *g))) {
                if *i == deg_g {
                    if sq == comb {
                        report.confirmed.push(format!("{label} {} equals its cup square", name(*g)));
                    } else {
                        report.fail(
                            FindingKind::Unstable,
                            format!(
                                "{label} {} = {} but {}^2 = {}",
                                name(*g),
                                a.render_combination(comb),
                                name(*g),
                                a.render_combination(sq)
                            ),
                        );
                    }
                }
            }
        }
    }

    // graded commutativity where both orders are listed
    for (&(g, h), comb) in &a.cup {
        if g < h {
            if let Some(rev) = a.cup.get(&(h, g)) {
                let odd = a.generators[g].degree % 2 == 1 && a.generators[h].degree % 2 == 1;
                let expected: Combination = if odd && p != 2 {
                    rev.iter().map(|(&k, &x)| (k, p - x)).collect()
                } else {
                    rev.clone()
                };
                if &expected != comb {
                    report.fail(FindingKind::Commutativity, format!("{}·{} and {}·{} disagree", name(g), name(h), name(h), name(g)));
                }
            }
        }
    }

    if p == 2 {
        check_cartan(a, &mut report);
        check_adem(a, &mut report);
    }
    check_pairing(a, &mut report);
    report
}

fn check_cartan(a: &AlgebraPresentation, report: &mut ValidationReport) {
    for (&(g, h), _) in &a.cup {
        let (x, y) = (a.generator_class(g), a.generator_class(h));
        let Ok(xy) = a.cup(&x, &y) else { continue };
        for n in 1..=(x.degree + y.degree) {
            if xy.degree + n > a.dim {
                break;
            }
            let lhs = a.apply_op(OpLabel::Sq(n), &xy);
            let rhs = (0..=n).try_fold(a.zero(xy.degree + n), |mut acc, i| {
                let l = a.apply_op(OpLabel::Sq(i), &x)?;
                let r = a.apply_op(OpLabel::Sq(n - i), &y)?;
                fp::axpy(&mut acc.coeffs, 1, &a.cup(&l, &r)?.coeffs, 2);
                Ok::<_, PresentationError>(acc)
            });
            match (lhs, rhs) {
                (Ok(l), Ok(r)) if l == r => {}
                (Ok(l), Ok(r)) => report.fail(
                    FindingKind::Cartan,
                    format!(
                        "Sq{n}({}·{}) = {} but the Cartan sum is {}",
                        a.generators[g].name,
                        a.generators[h].name,
                        a.render(&l),
                        a.render(&r)
                    ),
                ),
                _ => report.skipped += 1,
            }
        }
    }
}

fn check_adem(a: &AlgebraPresentation, report: &mut ValidationReport) {
    let mut checked = 0usize;
    for g in 1..a.generators.len() {
        let c = a.generator_class(g);
        for b in 1..=a.dim.saturating_sub(c.degree) {
            for x in 1..2 * b {
                if c.degree + x + b > a.dim {
                    break;
                }
                let lhs = a
                    .apply_op(OpLabel::Sq(b), &c)
                    .and_then(|v| a.apply_op(OpLabel::Sq(x), &v));
                let rhs = (0..=x / 2).try_fold(a.zero(c.degree + x + b), |mut acc, j| {
                    if binomial_mod2(b as i64 - 1 - j as i64, x as i64 - 2 * j as i64) {
                        let inner = a.apply_op(OpLabel::Sq(j), &c)?;
                        let t = a.apply_op(OpLabel::Sq(x + b - j), &inner)?;
                        fp::axpy(&mut acc.coeffs, 1, &t.coeffs, 2);
                    }
                    Ok::<_, PresentationError>(acc)
                });
                match (lhs, rhs) {
                    (Ok(l), Ok(r)) if l == r => checked += 1,
                    (Ok(l), Ok(r)) => report.fail(
                        FindingKind::Adem,
                        format!(
                            "Sq{x}Sq{b}({}) = {} but the Adem expansion gives {}",
                            a.generators[g].name,
                            a.render(&l),
                            a.render(&r)
                        ),
                    ),
                    _ => report.skipped += 1,
                }
            }
        }
    }
    if checked > 0 {
        report.confirmed.push(format!("{checked} Adem relations hold on generators"));
    }
}

fn check_pairing(a: &AlgebraPresentation, report: &mut ValidationReport) {
    let Some(f) = a.fundamental else { return };
    let n = a.dim;
    if a.generators[f].degree != n || a.dimension(n) != 1 {
        report.fail(
            FindingKind::Pairing,
            format!("fundamental class must be the only generator of degree {n}"),
        );
        return;
    }
    let degrees: BTreeSet<u32> = a.generators.iter().map(|g| g.degree).collect();
    for &d in degrees.iter().filter(|&&d| 2 * d <= n) {
        let (low, high) = (a.basis(d), a.basis(n - d));
        if low.len() != high.len() {
            report.fail(
                FindingKind::Pairing,
                format!("H^{d} has dimension {} but H^{} has dimension {}", low.len(), n - d, high.len()),
            );
            continue;
        }
        let rows: Vec<Vec<u64>> = low
            .iter()
            .map(|&g| {
                high.iter()
                    .map(|&h| {
                        let prod = a.class_of(n, &a.product_of_generators(g, h));
                        a.evaluate(&prod).unwrap_or(0)
                    })
                    .collect()
            })
            .collect();
        if fp::rank(&rows, a.prime) == low.len() {
            report.confirmed.push(format!("pairing H^{d} x H^{} is nondegenerate", n - d));
        } else {
            report.fail(FindingKind::Pairing, format!("pairing H^{d} x H^{} is degenerate", n - d));
        }
    }
    for g in 1..a.generators.len() {
        let c = a.generator_class(g);
        for label in a.labels().collect::<Vec<_>>() {
            if 2 * c.degree + label.shift(a.prime) != n {
                continue;
            }
            if let Ok(img) = a.apply_op(label, &c) {
                if let Ok(value) = a.cup(&c, &img).and_then(|v| a.evaluate(&v)) {
                    report.confirmed.push(format!(
                        "<{}·{label}({}), [M]> = {value}",
                        a.generators[g].name, a.generators[g].name
                    ));
                    report.self_pairings.push(SelfPairing {
                        class: a.generators[g].name.clone(),
                        label,
                        value,
                    });
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const N24: &str = "\
space N24
prime 2
dim 24
gen 11 x
gen 13 y
gen 24 top
cup x y = top
op Sq2 x = y
rho_image 15 = none
rho_image 19 = none
fundamental top
";

    fn n24() -> AlgebraPresentation {
        parse_presentation(N24).unwrap()
    }

    #[test]
    fn parses_n24() {
        let a = n24();
        let dims: Vec<_> = a.degrees().into_iter().collect();
        assert_eq!(dims, vec![(0, 1), (11, 1), (13, 1), (24, 1)]);
        assert_eq!(a.fundamental().unwrap().name, "top");
    }

    #[test]
    fn point() {
        let a = parse_presentation("space pt\ndim 0\n").unwrap();
        assert_eq!(a.degrees().into_iter().collect::<Vec<_>>(), vec![(0, 1)]);
        assert_eq!(a.prime(), 2);
    }

    #[test]
    fn parse_errors() {
        let e = parse_presentation("dim 20\ngen 11 x\ngen 13 y\ngen 14 z\nsq 2 x = z\n").unwrap_err();
        assert_eq!(e.line, 5);
        assert!(matches!(e.kind, ParseErrorKind::DegreeRule(_)));

        let e = parse_presentation("dim 20\ngen 3 x\ngen 4 x\n").unwrap_err();
        assert_eq!((e.line, e.column), (3, 7));
        assert_eq!(e.kind, ParseErrorKind::DuplicateGenerator("x".into()));

        let e = parse_presentation("dim 5\ngen 6 x\n").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::DegreeOutOfRange { degree: 6, dim: 5 });

        let e = parse_presentation("prime 2\n").unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::Missing(_)));

        let e = parse_presentation("dim 4\ngen 2 x\ncup x x = y\n").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnknownName("y".into()));
        assert_eq!(e.column, 11);

        let e = parse_presentation("dim 4\nfrob x\n").unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::Syntax(_)));

        let e = parse_presentation("prime 2\ndim 8\ngen 3 x\nop P1 x = 0\n").unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::Syntax(_)));
    }

    #[test]
    fn operations_and_products() {
        let a = n24();
        let x = a.class("x").unwrap();
        let y = a.class("y").unwrap();
        assert_eq!(a.sq_apply("Sq2", &x).unwrap(), y);
        assert_eq!(a.sq_apply("Sq0", &x).unwrap(), x);
        assert_eq!(a.cup(&x, &y).unwrap(), a.class("top").unwrap());
        assert_eq!(a.cup(&y, &x).unwrap(), a.class("top").unwrap());
        // Sq11 = Sq3 Sq8 and H^21 = 0
        assert!(a.sq_apply("Sq11", &y).unwrap().is_zero());
        // H^15 = 0
        assert!(a.sq_apply("Sq4", &x).unwrap().is_zero());
        assert!(matches!(a.sq_apply("Q2", &x), Err(PresentationError::BadLabel(_))));
    }

    #[test]
    fn missing_entry_is_not_zero() {
        let a = parse_presentation("dim 24\ngen 11 x\ngen 13 y\ngen 24 top\ncup x y = top\n").unwrap();
        let x = a.class("x").unwrap();
        let err = a.sq_apply("Sq2", &x).unwrap_err();
        assert_eq!(err, PresentationError::NoData { label: "Sq2".into(), generator: "x".into() });
    }

    #[test]
    fn validate_n24() {
        let r = validate(&n24());
        assert!(r.is_valid(), "{:?}", r.findings);
        assert!(r
            .self_pairings
            .iter()
            .any(|s| s.class == "x" && s.label == OpLabel::Sq(2) && s.value == 1));
    }

    #[test]
    fn validate_reports_adem_violation() {
        let a = parse_presentation("dim 6\ngen 2 u\ngen 3 v\ngen 4 w\nop Sq1 u = v\nop Sq1 v = w\n").unwrap();
        let r = validate(&a);
        assert!(r.findings.iter().any(|f| f.kind == FindingKind::Adem), "{:?}", r.findings);
    }

    #[test]
    fn validate_reports_unstable_violation() {
        let a = parse_presentation("dim 24\ngen 11 x\ngen 24 z\nop Sq13 x = z\n").unwrap();
        let r = validate(&a);
        assert!(r.findings.iter().any(|f| f.kind == FindingKind::Unstable), "{:?}", r.findings);
    }

    #[test]
    fn validate_reports_bad_square_and_pairing() {
        let a = parse_presentation("dim 4\ngen 2 u\ngen 4 z\ncup u u = z\nop Sq2 u = 0\nfundamental z\n").unwrap();
        let r = validate(&a);
        assert!(r.findings.iter().any(|f| f.kind == FindingKind::Unstable));
        let b = parse_presentation("dim 4\ngen 2 u\ngen 4 z\nfundamental z\n").unwrap();
        assert!(validate(&b).findings.iter().any(|f| f.kind == FindingKind::Pairing));
    }

    #[test]
    fn odd_prime_signs() {
        let a = parse_presentation("prime 3\ndim 10\ngen 3 x\ngen 7 y\ngen 10 u\ncup x y = u\nop P1 x = y\nfundamental u\n").unwrap();
        let x = a.class("x").unwrap();
        let y = a.class("y").unwrap();
        assert_eq!(a.cup(&y, &x).unwrap().coeffs, vec![2]);
        assert_eq!(a.sq_apply("P1", &x).unwrap(), y);
        assert!(validate(&a).is_valid());
    }

    #[test]
    fn rho_image_membership() {
        let a = parse_presentation("dim 8\ngen 4 a\ngen 4 b\nrho_image 4 = a + b\nrho_image 8 = all\n").unwrap();
        assert_eq!(a.lifts_integrally(&a.class("a + b").unwrap()), Some(true));
        assert_eq!(a.lifts_integrally(&a.class("a").unwrap()), Some(false));
        assert_eq!(a.lifts_integrally(&a.zero(8)), Some(true));
        assert_eq!(a.lifts_integrally(&a.zero(3)), None);
    }

    #[test]
    fn prints_canonically() {
        let a = n24();
        let again = parse_presentation(&a.to_string()).unwrap();
        assert_eq!(a, again);
    }
}
