//! Embedding and immersion obstructions evaluated on presentations, and the
//! mod-2 Whitney double-point ledger.
//!
//! `NotEmbedded` and `NotImmersed` are certificates. `Immersed` is reported
//! only by the rule in [`check_prop_kq`]. Everything else is `Inconclusive`,
//! which never claims that an embedding or immersion exists. A verdict never
//! rests on operation or lift data that the presentation leaves unspecified.

use std::fmt;

use thiserror::Error;

use crate::fp;
use crate::presentation::{AlgebraPresentation, OpLabel, PresentationError, PresentedClass};
use crate::steenrod::SqWord;
use crate::thom::mso3_mod3_degree_dims;

/// Default bound on candidate tuples in [`check_theorem_c`].
pub const DEFAULT_CAP: u64 = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Outcome {
    NotEmbedded,
    NotImmersed,
    Immersed,
    Inconclusive,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Outcome::NotEmbedded => "NotEmbedded",
            Outcome::NotImmersed => "NotImmersed",
            Outcome::Immersed => "Immersed",
            Outcome::Inconclusive => "Inconclusive",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// A nonzero class that should have vanished.
    Class { label: String, value: String },
    /// Values satisfying the necessary condition.
    Assignment(Vec<(String, String)>),
    MissingData(String),
    Facts(Vec<(String, bool)>),
    Reason(String),
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Class { label, value } => write!(f, "{label} = {value}"),
            Witness::Assignment(pairs) => {
                let parts: Vec<_> = pairs.iter().map(|(k, v)| format!("{k} = {v}")).collect();
                f.write_str(&parts.join(", "))
            }
            Witness::MissingData(reason) => write!(f, "missing data: {reason}"),
            Witness::Facts(facts) => {
                let parts: Vec<_> = facts.iter().map(|(k, v)| format!("{k} = {v}")).collect();
                f.write_str(&parts.join(", "))
            }
            Witness::Reason(reason) => f.write_str(reason),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub outcome: Outcome,
    pub witness: Witness,
    pub trail: Vec<String>,
}

impl Verdict {
    /// True for `NotEmbedded`, `NotImmersed` and `Immersed`.
    pub fn is_certificate(&self) -> bool {
        self.outcome != Outcome::Inconclusive
    }

    pub fn is_missing_data(&self) -> bool {
        matches!(self.witness, Witness::MissingData(_))
    }

    fn inconclusive(witness: Witness, trail: Vec<String>) -> Self {
        Verdict { outcome: Outcome::Inconclusive, witness, trail }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ObstructionError {
    #[error("this check needs a presentation over F_{expected}, found F_{found}")]
    Prime { expected: u64, found: u64 },
    #[error("{what} must have degree {expected}, found {found}")]
    Degree { what: String, expected: u32, found: u32 },
    #[error("presentation has dimension {found}, expected {expected}")]
    Dimension { expected: String, found: u32 },
    #[error("{0} is not admissible")]
    NotAdmissible(SqWord),
    #[error("{word} has excess {excess}, expected {k}")]
    Excess { word: SqWord, excess: u32, k: u32 },
    #[error("the class must have degree at least 2, found {0}")]
    LowDegree(u32),
    #[error("presentation has no fundamental class")]
    NoFundamental,
    #[error("{tuples} candidate tuples exceed the cap of {cap}; refusing to sample")]
    CapExceeded { tuples: String, cap: u64 },
    #[error(transparent)]
    Presentation(PresentationError),
}

/// Unwraps a computation, turning unknown operation data into a
/// missing-data verdict and other failures into errors.
macro_rules! known {
    ($e:expr, $trail:expr) => {
        match $e {
            Ok(v) => v,
            Err(PresentationError::NoData { label, generator }) => {
                let reason = format!("no {label} value for `{generator}`");
                let mut trail = $trail.clone();
                trail.push(format!("stopped: {reason}"));
                return Ok(Verdict::inconclusive(Witness::MissingData(reason), trail));
            }
            Err(other) => return Err(ObstructionError::Presentation(other)),
        }
    };
}

fn require_prime(a: &AlgebraPresentation, p: u64) -> Result<(), ObstructionError> {
    if a.prime() != p {
        return Err(ObstructionError::Prime { expected: p, found: a.prime() });
    }
    Ok(())
}

fn require_degree(x: &PresentedClass, what: &str, d: u32) -> Result<(), ObstructionError> {
    if x.degree != d {
        return Err(ObstructionError::Degree { what: what.into(), expected: d, found: x.degree });
    }
    Ok(())
}

fn add(a: &AlgebraPresentation, x: &PresentedClass, y: &PresentedClass) -> PresentedClass {
    let mut out = x.clone();
    fp::axpy(&mut out.coeffs, 1, &y.coeffs, a.prime());
    out
}

/// Applies a word right to left: `Sq6.Sq2` applies `Sq2` first.
fn apply_word(a: &AlgebraPresentation, word: &[u32], x: &PresentedClass) -> Result<PresentedClass, PresentationError> {
    word.iter()
        .rev()
        .try_fold(x.clone(), |c, &i| a.apply_op(OpLabel::Sq(i), &c))
}

fn apply_sum(a: &AlgebraPresentation, words: &[&[u32]], x: &PresentedClass) -> Result<PresentedClass, PresentationError> {
    let target = x.degree + words[0].iter().sum::<u32>();
    words.iter().try_fold(a.zero(target), |acc, w| Ok(add(a, &acc, &apply_word(a, w, x)?)))
}

fn unit_vectors(a: &AlgebraPresentation, d: u32) -> Vec<PresentedClass> {
    let n = a.dimension(d);
    (0..n)
        .map(|i| PresentedClass { degree: d, coeffs: (0..n).map(|j| u64::from(i == j)).collect() })
        .collect()
}

/// One unknown of the degree-24 equation: a name, the operator applied to
/// it, and the basis it ranges over.
struct Slot {
    name: &'static str,
    words: &'static [&'static [u32]],
    basis: Vec<PresentedClass>,
}

/// Necessary condition for an embedding in codimension 11 of the manifold
/// dual to `x` in a 24-dimensional `N`: classes `α ∈ H^20`, `γ ∈ H^16`,
/// `β ∈ ρ2 H^19(N; Z)` and `δ ∈ ρ2 H^15(N; Z)` with
/// `(Sq4 + Sq3Sq1)α + Sq5β + (Sq8 + Sq7Sq1 + Sq6Sq2)γ + Sq9δ = x Sq2x + Sq11 Sq2x`,
/// plus a class `β'` whose mod-3 reduction is `P^2 x`.
///
/// The integral classes in degrees 15 and 19 are read from `rho_image`
/// statements, which must be present even when those groups vanish. The
/// `β'` clause uses the facts `P2_3_<x>_vanishes` and `P2_3_<x>_lifts`.
pub fn check_theorem_c(a: &AlgebraPresentation, x: &PresentedClass, cap: u64) -> Result<Verdict, ObstructionError> {
    require_prime(a, 2)?;
    require_degree(x, "x", 11)?;
    if a.dim() < 24 {
        return Err(ObstructionError::Dimension { expected: "at least 24".into(), found: a.dim() });
    }
    a.check_class(x).map_err(ObstructionError::Presentation)?;
    let name = a.render(x);
    let mut trail = vec![format!("x = {name}")];

    let sq2x = known!(a.apply_op(OpLabel::Sq(2), x), trail);
    let x_sq2x = known!(a.cup(x, &sq2x), trail);
    let sq11_sq2x = known!(a.apply_op(OpLabel::Sq(11), &sq2x), trail);
    let rhs = add(a, &x_sq2x, &sq11_sq2x);
    trail.push(format!("Sq2x = {}", a.render(&sq2x)));
    trail.push(format!("x·Sq2x = {}", a.render(&x_sq2x)));
    trail.push(format!("Sq11Sq2x = {}", a.render(&sq11_sq2x)));
    trail.push(format!("right-hand side = {}", a.render(&rhs)));

    let lifted = |d: u32, trail: &mut Vec<String>| match a.rho_image_basis(d) {
        Some(b) => {
            trail.push(format!("integral classes in degree {d}: rank {} of dim H^{d} = {}", b.len(), a.dimension(d)));
            Ok(b)
        }
        None => Err(format!("no rho_image statement for degree {d}")),
    };
    let beta_basis = lifted(19, &mut trail);
    let delta_basis = lifted(15, &mut trail);
    let (beta_basis, delta_basis) = match (beta_basis, delta_basis) {
        (Ok(b), Ok(d)) => (b, d),
        (Err(reason), _) | (_, Err(reason)) => {
            trail.push(format!("stopped: {reason}"));
            return Ok(Verdict::inconclusive(Witness::MissingData(reason), trail));
        }
    };
    trail.push("integral lifts in degrees 15 and 19 are taken from the declared rho_image subspaces".into());

    let slots = [
        Slot { name: "alpha", words: &[&[4], &[3, 1]], basis: unit_vectors(a, 20) },
        Slot { name: "beta", words: &[&[5]], basis: beta_basis },
        Slot { name: "gamma", words: &[&[8], &[7, 1], &[6, 2]], basis: unit_vectors(a, 16) },
        Slot { name: "delta", words: &[&[9]], basis: delta_basis },
    ];

    // image of each basis vector, in candidate order
    let mut columns = Vec::new();
    for slot in &slots {
        trail.push(format!("{} ranges over a space of dimension {}", slot.name, slot.basis.len()));
        for v in &slot.basis {
            columns.push(known!(apply_sum(a, slot.words, v), trail).coeffs);
        }
    }
    let n = columns.len();
    if n >= 64 || 1u64 << n > cap {
        return Err(ObstructionError::CapExceeded { tuples: format!("2^{n}"), cap });
    }

    let beta_prime = beta_prime_clause(a, &name);
    trail.push(beta_prime.note.clone());

    let target: Vec<u64> = rhs.coeffs.iter().map(|c| c % 2).collect();
    let width = target.len();
    let solution = (0u64..1 << n).find(|&mask| {
        let mut acc = vec![0u64; width];
        for (i, col) in columns.iter().enumerate() {
            if mask >> (n - 1 - i) & 1 == 1 {
                fp::axpy(&mut acc, 1, col, 2);
            }
        }
        acc == target
    });

    let Some(mask) = solution else {
        trail.push(format!("no tuple among 2^{n} satisfies the equation"));
        let label = if n == 0 {
            "x·Sq2x + Sq11Sq2x (all candidate spaces are zero)".to_string()
        } else {
            "x·Sq2x + Sq11Sq2x (outside the image of the left-hand side)".to_string()
        };
        return Ok(Verdict {
            outcome: Outcome::NotEmbedded,
            witness: Witness::Class { label, value: a.render(&rhs) },
            trail,
        });
    };

    if beta_prime.obstructs {
        trail.push("the equation is solvable, but no class beta' exists".into());
        return Ok(Verdict {
            outcome: Outcome::NotEmbedded,
            witness: Witness::Facts(beta_prime.facts),
            trail,
        });
    }

    let mut assignment = Vec::new();
    let mut offset = 0;
    for slot in &slots {
        let degree = match slot.name {
            "alpha" => 20,
            "beta" => 19,
            "gamma" => 16,
            _ => 15,
        };
        let mut value = a.zero(degree);
        for (j, v) in slot.basis.iter().enumerate() {
            if mask >> (n - 1 - (offset + j)) & 1 == 1 {
                fp::axpy(&mut value.coeffs, 1, &v.coeffs, 2);
            }
        }
        offset += slot.basis.len();
        assignment.push((slot.name.to_string(), a.render(&value)));
    }
    trail.push("a satisfying tuple exists; the condition is necessary only".into());
    Ok(Verdict::inconclusive(Witness::Assignment(assignment), trail))
}

struct BetaPrime {
    obstructs: bool,
    note: String,
    facts: Vec<(String, bool)>,
}

fn beta_prime_clause(a: &AlgebraPresentation, name: &str) -> BetaPrime {
    let vanishes_key = format!("P2_3_{name}_vanishes");
    let lifts_key = format!("P2_3_{name}_lifts");
    match (a.fact(&vanishes_key), a.fact(&lifts_key)) {
        (Some(true), _) => BetaPrime {
            obstructs: false,
            note: "beta' clause vacuous: P2_3 x vanishes, take beta' = 0".into(),
            facts: vec![],
        },
        (Some(false), Some(false)) => BetaPrime {
            obstructs: true,
            note: "beta' clause fails: P2_3 x is nonzero and has no integral lift".into(),
            facts: vec![(vanishes_key, false), (lifts_key, false)],
        },
        (Some(false), Some(true)) => BetaPrime {
            obstructs: false,
            note: "beta' clause satisfied: P2_3 x lifts to an integral class".into(),
            facts: vec![],
        },
        _ => BetaPrime {
            obstructs: false,
            note: format!("beta' clause unchecked: no mod-3 facts `{vanishes_key}` / `{lifts_key}`"),
            facts: vec![],
        },
    }
}

/// Codimension-3 test at the prime 3: if `<x·P1(x), [M]> ≠ 0` the class
/// dual to `x` is not embedded, since `H~^10(MSO_3; F3) = 0`.
pub fn check_bhk_codim3(a: &AlgebraPresentation, x: &PresentedClass) -> Result<Verdict, ObstructionError> {
    require_prime(a, 3)?;
    require_degree(x, "x", 3)?;
    if a.fundamental().is_none() {
        return Err(ObstructionError::NoFundamental);
    }
    if a.dim() != 10 {
        return Err(ObstructionError::Dimension { expected: "10".into(), found: a.dim() });
    }
    a.check_class(x).map_err(ObstructionError::Presentation)?;
    let mut trail = vec![format!("x = {}", a.render(x))];
    let p1x = known!(a.apply_op(OpLabel::P(1), x), trail);
    let product = known!(a.cup(x, &p1x), trail);
    let value = known!(a.evaluate(&product), trail);
    trail.push(format!("P1x = {}", a.render(&p1x)));
    trail.push(format!("x·P1x = {}", a.render(&product)));
    trail.push(format!("<x·P1x, [M]> = {value}"));

    let thom_dim = mso3_mod3_degree_dims(10)[10].1;
    trail.push(format!("dim H~^10(MSO_3; F3) = {thom_dim}"));
    if value != 0 && thom_dim == 0 {
        trail.push("an embedding would pull x·P1x back from H~^10(MSO_3; F3) = 0".into());
        return Ok(Verdict {
            outcome: Outcome::NotEmbedded,
            witness: Witness::Class { label: "<x·P1x, [M]>".into(), value: value.to_string() },
            trail,
        });
    }
    Ok(Verdict::inconclusive(Witness::Reason("x·P1x pairs to zero".into()), trail))
}

/// Immersion test for a class `x` of degree `k`: for admissible `I` of
/// excess `k`, the class `Sq^I x` of a codimension-`k` immersion is the
/// reduction of an integral class. If it lies outside the declared
/// `rho_image`, the dual class is not immersed.
pub fn check_gsz_immersion(
    a: &AlgebraPresentation,
    x: &PresentedClass,
    word: &SqWord,
) -> Result<Verdict, ObstructionError> {
    require_prime(a, 2)?;
    let k = x.degree;
    if k < 2 {
        return Err(ObstructionError::LowDegree(k));
    }
    if !word.is_admissible() {
        return Err(ObstructionError::NotAdmissible(word.clone()));
    }
    if word.excess() != k {
        return Err(ObstructionError::Excess { word: word.clone(), excess: word.excess(), k });
    }
    a.check_class(x).map_err(ObstructionError::Presentation)?;
    let mut trail = vec![format!("x = {} in degree {k}", a.render(x)), format!("{word} has excess {k}")];
    let image = known!(apply_word(a, word.indices(), x), trail);
    let target = image.degree;
    trail.push(format!("{word}(x) = {}", a.render(&image)));
    if image.is_zero() {
        return Ok(Verdict::inconclusive(Witness::Reason("the image is zero, which always lifts".into()), trail));
    }
    match a.lifts_integrally(&image) {
        None => {
            let reason = format!("no rho_image statement for degree {target}");
            trail.push(format!("stopped: {reason}"));
            Ok(Verdict::inconclusive(Witness::MissingData(reason), trail))
        }
        Some(true) => {
            trail.push(format!("{word}(x) lies in the declared integral image in degree {target}"));
            Ok(Verdict::inconclusive(Witness::Reason("the image lifts to an integral class".into()), trail))
        }
        Some(false) => {
            trail.push(format!("{word}(x) is not the reduction of an integral class, so its Bockstein is nonzero"));
            Ok(Verdict {
                outcome: Outcome::NotImmersed,
                witness: Witness::Class { label: format!("{word}(x)"), value: a.render(&image) },
                trail,
            })
        }
    }
}

/// Sufficient condition for immersing the class dual to `x` in a
/// 24-manifold: the facts `betaP1_3_<x>_vanishes`, `betaP2_3_<x>_vanishes`
/// and `betaP1_5_<x>_vanishes` all hold.
pub fn check_prop_kq(a: &AlgebraPresentation, x: &PresentedClass) -> Result<Verdict, ObstructionError> {
    if a.dim() != 24 {
        return Err(ObstructionError::Dimension { expected: "24".into(), found: a.dim() });
    }
    require_degree(x, "x", 11)?;
    a.check_class(x).map_err(ObstructionError::Presentation)?;
    let name = a.render(x);
    let keys = ["betaP1_3", "betaP2_3", "betaP1_5"].map(|op| format!("{op}_{name}_vanishes"));
    let mut trail = vec![format!("x = {name}")];
    let mut facts = Vec::new();
    let mut missing = Vec::new();
    for key in keys {
        match a.fact(&key) {
            Some(v) => {
                trail.push(format!("{key} = {v}"));
                facts.push((key, v));
            }
            None => {
                trail.push(format!("{key} not given"));
                missing.push(key);
            }
        }
    }
    if !missing.is_empty() {
        let reason = format!("facts not given: {}", missing.join(", "));
        return Ok(Verdict::inconclusive(Witness::MissingData(reason), trail));
    }
    if facts.iter().all(|(_, v)| *v) {
        trail.push("all three Bocksteins vanish".into());
        return Ok(Verdict { outcome: Outcome::Immersed, witness: Witness::Facts(facts), trail });
    }
    trail.push("some Bockstein is nonzero; the criterion says nothing".into());
    Ok(Verdict::inconclusive(Witness::Facts(facts), trail))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WhitneyLedger {
    /// `ρ2 m2(f)`.
    pub m2: PresentedClass,
    /// `Sq2 ρ2 m2(f)` when the data determine it.
    pub sq2_m2: Option<PresentedClass>,
    pub trail: Vec<String>,
}

/// Mod-2 reduction of `f*(x) = e(ν_f) + m2(f)`, using `ρ2 e(ν) = w_k(ν)`:
/// returns `ρ2 m2(f) = f*x + w_k(ν_f)`.
pub fn whitney_m2_mod2(
    a: &AlgebraPresentation,
    f_star_x: &PresentedClass,
    wk_nu: &PresentedClass,
) -> Result<WhitneyLedger, ObstructionError> {
    require_prime(a, 2)?;
    require_degree(wk_nu, "w_k(nu)", f_star_x.degree)?;
    a.check_class(f_star_x).map_err(ObstructionError::Presentation)?;
    a.check_class(wk_nu).map_err(ObstructionError::Presentation)?;
    let k = f_star_x.degree;
    let m2 = add(a, f_star_x, wk_nu);
    let mut trail = vec![
        format!("f*x = {}", a.render(f_star_x)),
        format!("w{k}(nu) = {}", a.render(wk_nu)),
        format!("rho2 m2(f) = f*x + w{k}(nu) = {}", a.render(&m2)),
    ];
    if k % 2 == 1 {
        trail.push(format!("nu has odd rank {k}, so e(nu) = -e(nu) is 2-torsion"));
    }
    let sq2_m2 = match a.apply_op(OpLabel::Sq(2), &m2) {
        Ok(c) => {
            trail.push(format!("Sq2 rho2 m2(f) = {}", a.render(&c)));
            if !c.is_zero() {
                trail.push("Sq2 rho2 m2(f) is nonzero, hence m2(f) is nonzero".into());
            }
            Some(c)
        }
        Err(PresentationError::NoData { .. }) => {
            trail.push("Sq2 rho2 m2(f) is not determined by the data".into());
            None
        }
        Err(e) => return Err(ObstructionError::Presentation(e)),
    };
    Ok(WhitneyLedger { m2, sq2_m2, trail })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse_presentation;

    const N24: &str = "dim 24\ngen 11 x\ngen 13 y\ngen 24 top\ncup x y = top\nop Sq2 x = y\n\
                       rho_image 15 = none\nrho_image 19 = none\nfundamental top\n";

    #[test]
    fn embed_c_on_n24() {
        let a = parse_presentation(N24).unwrap();
        let v = check_theorem_c(&a, &a.class("x").unwrap(), DEFAULT_CAP).unwrap();
        assert_eq!(v.outcome, Outcome::NotEmbedded);
        assert!(matches!(&v.witness, Witness::Class { value, .. } if value == "top"));

        let zero = check_theorem_c(&a, &a.zero(11), DEFAULT_CAP).unwrap();
        assert_eq!(zero.outcome, Outcome::Inconclusive);
        assert!(matches!(&zero.witness, Witness::Assignment(t) if t.iter().all(|(_, v)| v == "0")));
    }

    #[test]
    fn embed_c_cap_refuses() {
        let mut text = String::from("dim 24\ngen 11 x\nrho_image 15 = none\nrho_image 19 = none\n");
        for i in 0..3 {
            text.push_str(&format!("gen 20 a{i}\n"));
        }
        let a = parse_presentation(&text).unwrap();
        let err = check_theorem_c(&a, &a.class("x").unwrap(), 4).unwrap_err();
        assert!(matches!(err, ObstructionError::CapExceeded { .. }));
    }

    #[test]
    fn beta_prime_facts() {
        let base = "dim 24\ngen 11 x\ngen 13 y\nop Sq2 x = 0\nrho_image 15 = none\nrho_image 19 = none\n";
        let a = parse_presentation(base).unwrap();
        let v = check_theorem_c(&a, &a.class("x").unwrap(), DEFAULT_CAP).unwrap();
        assert_eq!(v.outcome, Outcome::Inconclusive);
        assert!(v.trail.iter().any(|t| t.contains("unchecked")));

        let text = format!("{base}fact P2_3_x_vanishes = false\nfact P2_3_x_lifts = false\n");
        let a = parse_presentation(&text).unwrap();
        let v = check_theorem_c(&a, &a.class("x").unwrap(), DEFAULT_CAP).unwrap();
        assert_eq!(v.outcome, Outcome::NotEmbedded);
        assert!(matches!(v.witness, Witness::Facts(_)));
    }

    #[test]
    fn gsz_preconditions() {
        let a = parse_presentation("dim 27\ngen 4 x\n").unwrap();
        let x = a.class("x").unwrap();
        let bad = "Sq2.Sq2".parse::<SqWord>().unwrap();
        assert!(matches!(check_gsz_immersion(&a, &x, &bad), Err(ObstructionError::NotAdmissible(_))));
        let wrong = "Sq4.Sq2".parse::<SqWord>().unwrap();
        assert!(matches!(check_gsz_immersion(&a, &x, &wrong), Err(ObstructionError::Excess { .. })));
    }

    #[test]
    fn whitney_sum() {
        let a = parse_presentation("dim 13\ngen 2 s\ngen 11 u\ngen 13 v\ncup s u = v\nop Sq2 u = v\nfundamental v\n").unwrap();
        let u = a.class("u").unwrap();
        let l = whitney_m2_mod2(&a, &u, &a.zero(11)).unwrap();
        assert_eq!(l.m2, u);
        assert_eq!(l.sq2_m2.unwrap(), a.class("v").unwrap());
        assert!(l.trail.iter().any(|t| t.contains("2-torsion")));
        assert!(whitney_m2_mod2(&a, &u, &u).unwrap().m2.is_zero());
    }
}
