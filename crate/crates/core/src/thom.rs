//! Thom-space models: `H~^*(MSO_k; F2)` as the ideal `(w_k)` in
//! `H^*(BSO_k; F2)`, the codimension-11 identity in degree 24, and the
//! mod-3 degree table of `MSO_3`.

use crate::char_ring::{
    apply_steenrod, reduce_pontryagin, sq_poly, CharRingError, PontryaginExpression, RingContext,
    SWPolynomial,
};
use crate::steenrod::SteenrodElement;

/// The ideal generated by the Thom class `t = w_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThomModel {
    ctx: RingContext,
    thom_class: SWPolynomial,
}

impl ThomModel {
    pub fn new(ctx: RingContext) -> Self {
        let thom_class = SWPolynomial::generator(ctx, ctx.rank())
            .expect("the top class is always a generator");
        ThomModel { ctx, thom_class }
    }

    /// `MSO_k` with the default degree cap.
    pub fn mso(rank: u32) -> Result<Self, CharRingError> {
        Ok(Self::new(RingContext::bso(rank)?))
    }

    pub fn context(&self) -> RingContext {
        self.ctx
    }

    pub fn thom_class(&self) -> &SWPolynomial {
        &self.thom_class
    }

    /// Membership in the ideal: every monomial contains `w_k`.
    pub fn contains(&self, p: &SWPolynomial) -> bool {
        p.divisible_by(self.ctx.rank())
    }

    /// `t * q`.
    pub fn element(&self, q: &SWPolynomial) -> SWPolynomial {
        self.thom_class.mul(q)
    }

    pub fn display(&self, p: &SWPolynomial) -> String {
        p.display_factored(self.ctx.rank())
    }
}

/// One displayed computation: an operation applied to a named class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TranscriptEntry {
    /// e.g. `Sq3Sq1(alpha)`
    pub label: String,
    pub operation: SteenrodElement,
    pub input: SWPolynomial,
    pub result: SWPolynomial,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityReport {
    pub model: ThomModel,
    /// The classes `alpha, beta, beta', gamma, delta` in order.
    pub classes: Vec<(String, SWPolynomial)>,
    pub lhs_terms: Vec<TranscriptEntry>,
    pub rhs_terms: Vec<TranscriptEntry>,
    pub lhs: SWPolynomial,
    pub rhs: SWPolynomial,
    pub equal: bool,
    /// `lhs + rhs`; zero exactly when `equal`.
    pub difference: SWPolynomial,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct IdentityOptions {
    /// Leaves out the `Sq^9 delta` term, which must break the identity.
    pub omit_sq9_delta: bool,
}

/// Checks, in degree 24 of `MSO_11`,
/// `(Sq4 + Sq3Sq1)α + Sq5β + (Sq8 + Sq7Sq1 + Sq6Sq2)γ + Sq9δ = t Sq2 t + Sq11 Sq2 t`
/// with `α = w11 w6 w3`, `β = ρ2(t(p1^2 - 2p2))`, `γ = w11 w3 w2`,
/// `δ = ρ2(t p1)`. The class `β' = ρ2(t p2)` is built and reported but
/// takes no part in the equation.
pub fn verify_codim11_identity() -> IdentityReport {
    verify_codim11_identity_with(IdentityOptions::default())
}

pub fn verify_codim11_identity_with(options: IdentityOptions) -> IdentityReport {
    let model = ThomModel::mso(11).expect("MSO_11 is a valid context");
    let ctx = model.context();
    let sw = |s: &str| SWPolynomial::parse(s, ctx).expect("fixed class parses");
    let pont = |s: &str| {
        let e = PontryaginExpression::parse(s).expect("fixed expression parses");
        reduce_pontryagin(&e, ctx).expect("fixed expression reduces in BSO_11")
    };
    let op = |s: &str| s.parse::<SteenrodElement>().expect("fixed operation parses");

    let alpha = sw("w11*w6*w3");
    let beta = pont("t*(p1^2 - 2*p2)");
    let beta_prime = pont("t*p2");
    let gamma = sw("w11*w3*w2");
    let delta = pont("t*p1");
    let t = model.thom_class().clone();

    let mut lhs_plan = vec![
        ("Sq4", "alpha", &alpha),
        ("Sq3.Sq1", "alpha", &alpha),
        ("Sq5", "beta", &beta),
        ("Sq8", "gamma", &gamma),
        ("Sq7.Sq1", "gamma", &gamma),
        ("Sq6.Sq2", "gamma", &gamma),
    ];
    if !options.omit_sq9_delta {
        lhs_plan.push(("Sq9", "delta", &delta));
    }

    let run = |operation: &str, name: &str, input: &SWPolynomial| {
        let operation = op(operation);
        let result = apply_steenrod(&operation, input).expect("stays within degree 24");
        TranscriptEntry {
            label: format!("{}({name})", operation.to_string().replace('.', "")),
            operation,
            input: input.clone(),
            result,
        }
    };

    let lhs_terms: Vec<_> = lhs_plan.iter().map(|(o, n, c)| run(o, n, c)).collect();

    let sq2_t = sq_poly(2, &t).expect("degree 13 is within the cap");
    let t_sq2_t = TranscriptEntry {
        label: "tSq2(t)".into(),
        operation: SteenrodElement::one(),
        input: t.clone(),
        result: t.mul(&sq2_t),
    };
    let rhs_terms = vec![t_sq2_t, run("Sq11.Sq2", "t", &t)];

    let sum = |entries: &[TranscriptEntry]| {
        entries
            .iter()
            .fold(SWPolynomial::zero(ctx), |acc, e| acc.add(&e.result))
    };
    let lhs = sum(&lhs_terms);
    let rhs = sum(&rhs_terms);
    let difference = lhs.add(&rhs);

    IdentityReport {
        classes: vec![
            ("alpha".into(), alpha.clone()),
            ("beta".into(), beta.clone()),
            ("beta'".into(), beta_prime),
            ("gamma".into(), gamma.clone()),
            ("delta".into(), delta.clone()),
        ],
        model,
        lhs_terms,
        rhs_terms,
        equal: difference.is_zero(),
        lhs,
        rhs,
        difference,
    }
}

/// Dimensions of `H~^d(MSO_3; Z/3) = (t * Z/3[p_1])_d` for `d <= d_max`,
/// with `deg t = 3` and `deg p_1 = 4`. Counts monomials `t p_1^s`.
pub fn mso3_mod3_degree_dims(d_max: u32) -> Vec<(u32, u32)> {
    (0..=d_max)
        .map(|d| {
            let count = (0..=d / 4).filter(|s| 3 + 4 * s == d).count() as u32;
            (d, count)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_holds() {
        let r = verify_codim11_identity();
        assert!(r.equal);
        assert_eq!(r.model.display(&r.lhs), "w11*(w10*w3 + w9*w2^2)");
        assert_eq!(r.model.display(&r.rhs), "w11*(w10*w3 + w9*w2^2)");
        assert_eq!(r.lhs_terms.len(), 7);
        assert_eq!(r.lhs_terms[1].label, "Sq3Sq1(alpha)");
        assert_eq!(r.model.display(&r.lhs_terms[1].result), "w11*w7*w3^2");
    }

    #[test]
    fn dropping_sq9_delta_breaks_it() {
        let r = verify_codim11_identity_with(IdentityOptions { omit_sq9_delta: true });
        assert!(!r.equal);
        let ctx = r.model.context();
        let expected = SWPolynomial::parse("w11*(w9*w2^2 + w7*w3^2 + w5*w2^4)", ctx).unwrap();
        assert_eq!(r.difference, expected);
    }

    #[test]
    fn beta_prime_is_reported() {
        let r = verify_codim11_identity();
        let (name, bp) = &r.classes[2];
        assert_eq!(name, "beta'");
        assert_eq!(bp.to_string(), "w11*w4^2");
    }

    #[test]
    fn mso3_degrees() {
        let dims = mso3_mod3_degree_dims(12);
        assert_eq!(dims[10], (10, 0));
        assert_eq!(dims[3], (3, 1));
        assert_eq!(dims[7], (7, 1));
        assert_eq!(dims[12], (12, 0));
    }

    #[test]
    fn ideal_membership() {
        let m = ThomModel::mso(11).unwrap();
        let ctx = m.context();
        assert!(m.contains(&SWPolynomial::parse("w11*w2 + w11^2", ctx).unwrap()));
        assert!(!m.contains(&SWPolynomial::parse("w11*w2 + w10*w3", ctx).unwrap()));
    }
}
