//! Structured identities and the exact verifier.
//!
//! An [`Identity`] is a named, parameterized equation: flat lists of
//! left- and right-hand terms (each a normalized [`RationalFunction`]),
//! plus an optional polynomial constraint cutting out the variety on which
//! a conditional identity holds, together with a rational parametrization
//! of that variety.
//!
//! [`verify_exact`] decides an identity by bringing the signed term sum
//! over a common denominator and testing the numerator for zero. For
//! conditional identities the parametrization is substituted into every
//! term first: since each constraint here is irreducible and linear in the
//! bound variable, vanishing along the parametrization is vanishing on the
//! whole variety.

use std::fmt;
use std::time::{Duration, Instant};

use num_traits::One;

use crate::gcd::{divexact, gcd};
use crate::number::BigRational;
use crate::poly::{ExponentVector, SparsePoly};
use crate::ratfunc::{PoleError, RationalFunction};

/// The identity families in the catalog.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    /// Chaundy-Bullard: two binomial sums in one variable adding to 1.
    Cb,
    /// Two-variable homogeneous form built on xy/(x+y).
    Homogeneous,
    /// Graham-Knuth-Patashnik conditional form on xy = x + y.
    Gkp,
    /// Partial-fraction decomposition of 1/(x_1 ... x_n).
    BaseN,
    /// Inverse-power expansion of 1/(x_1^{m_1+1} ... x_n^{m_n+1}).
    InverseN,
    /// n-variable homogeneous identity on S_{n,n}/S_{n-1,n}.
    NPowers,
    /// Three-variable conditional form on xyz = xy + yz + zx.
    Knuth3,
    /// Three-variable form on xy + yz + zx = 1 with right side 1.
    S2One,
    /// Polynomial identity in u-coordinates for (u_1 + ... + u_n)^{M+1}.
    Transformed,
    /// Three-parameter generalization with a case-split right side.
    ThreeParam,
    /// Auxiliary single-variable binomial identity used by ThreeParam.
    Ks27,
}

impl Family {
    pub const ALL: [Family; 11] = [
        Family::Cb,
        Family::Homogeneous,
        Family::Gkp,
        Family::BaseN,
        Family::InverseN,
        Family::NPowers,
        Family::Knuth3,
        Family::S2One,
        Family::Transformed,
        Family::ThreeParam,
        Family::Ks27,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Family::Cb => "cb",
            Family::Homogeneous => "homogeneous",
            Family::Gkp => "gkp",
            Family::BaseN => "base_n",
            Family::InverseN => "inverse_n",
            Family::NPowers => "n_powers",
            Family::Knuth3 => "knuth3",
            Family::S2One => "s2_one",
            Family::Transformed => "transformed",
            Family::ThreeParam => "three_param",
            Family::Ks27 => "ks27",
        }
    }

    pub fn parse(name: &str) -> Option<Family> {
        Family::ALL.iter().copied().find(|f| f.name() == name)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Rational solution of a constraint, expressing one variable through the
/// others.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Parametrization {
    pub var: usize,
    pub value: RationalFunction,
}

/// Which side of an identity a term sits on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Lhs,
    Rhs,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Identity {
    family: Family,
    params: Vec<i64>,
    arity: usize,
    lhs: Vec<RationalFunction>,
    rhs: Vec<RationalFunction>,
    constraint: Option<SparsePoly>,
    parametrization: Option<Parametrization>,
}

impl Identity {
    /// An unconditional identity.
    pub fn new(
        family: Family,
        params: Vec<i64>,
        arity: usize,
        lhs: Vec<RationalFunction>,
        rhs: Vec<RationalFunction>,
    ) -> Self {
        let id = Identity {
            family,
            params,
            arity,
            lhs,
            rhs,
            constraint: None,
            parametrization: None,
        };
        id.check_invariants();
        id
    }

    /// A conditional identity asserted on the variety `constraint = 0`,
    /// with a rational parametrization of that variety.
    pub fn new_conditional(
        family: Family,
        params: Vec<i64>,
        arity: usize,
        lhs: Vec<RationalFunction>,
        rhs: Vec<RationalFunction>,
        constraint: SparsePoly,
        parametrization: Parametrization,
    ) -> Self {
        let id = Identity {
            family,
            params,
            arity,
            lhs,
            rhs,
            constraint: Some(constraint),
            parametrization: Some(parametrization),
        };
        id.check_invariants();
        id
    }

    fn check_invariants(&self) {
        assert!(self.arity >= 1);
        for t in self.lhs.iter().chain(&self.rhs) {
            assert_eq!(
                t.arity(),
                self.arity,
                "term arity must match identity arity"
            );
        }
        if let Some(c) = &self.constraint {
            assert_eq!(c.arity(), self.arity);
            let p = self
                .parametrization
                .as_ref()
                .expect("constraint requires a parametrization");
            assert!(p.var < self.arity);
            assert_eq!(p.value.arity(), self.arity);
            let image = RationalFunction::from_poly(c.clone())
                .substitute(p.var, &p.value)
                .expect("parametrization must not sit inside a pole of the constraint");
            assert!(
                image.is_zero(),
                "parametrization must annihilate the constraint"
            );
        } else {
            assert!(self.parametrization.is_none());
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn params(&self) -> &[i64] {
        &self.params
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn lhs(&self) -> &[RationalFunction] {
        &self.lhs
    }

    pub fn rhs(&self) -> &[RationalFunction] {
        &self.rhs
    }

    pub fn constraint(&self) -> Option<&SparsePoly> {
        self.constraint.as_ref()
    }

    pub fn parametrization(&self) -> Option<&Parametrization> {
        self.parametrization.as_ref()
    }

    /// A copy with one term scaled by `factor`. Scaling by `(c+1)/c`
    /// realizes a single-coefficient mutation of a term with scalar `c`,
    /// which verification must detect.
    pub fn with_term_scaled(&self, side: Side, index: usize, factor: &BigRational) -> Identity {
        let mut out = self.clone();
        let term = match side {
            Side::Lhs => &mut out.lhs[index],
            Side::Rhs => &mut out.rhs[index],
        };
        *term = term.scale(factor);
        out
    }
}

/// Verification method of a report.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Exact,
    ModP,
}

impl Method {
    pub fn name(&self) -> &'static str {
        match self {
            Method::Exact => "exact",
            Method::ModP => "modp",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails,
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Outcome of a verification run.
#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub family: Family,
    pub params: Vec<i64>,
    pub method: Method,
    pub verdict: Verdict,
    /// `LHS - RHS` as a normalized rational function, present exactly when
    /// an exact check fails.
    pub residual: Option<RationalFunction>,
    pub trials: Option<u32>,
    pub seed: Option<u64>,
    pub elapsed: Duration,
}

impl VerificationReport {
    pub(crate) fn exact(
        id: &Identity,
        residual: Option<RationalFunction>,
        elapsed: Duration,
    ) -> Self {
        let verdict = match &residual {
            None => Verdict::Holds,
            Some(r) => {
                assert!(!r.is_zero(), "a failing residual must be nonzero");
                Verdict::Fails
            }
        };
        VerificationReport {
            family: id.family(),
            params: id.params().to_vec(),
            method: Method::Exact,
            verdict,
            residual,
            trials: None,
            seed: None,
            elapsed,
        }
    }

    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }
}

/// Exact verification failed to run (not: the identity failed).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VerifyError {
    /// The parametrization substitution produced an identically-zero
    /// denominator in some term, which indicates a malformed builder.
    ParametrizationPole,
}

impl fmt::Display for VerifyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerifyError::ParametrizationPole => {
                write!(
                    f,
                    "parametrization substitution hits an identically-zero denominator"
                )
            }
        }
    }
}

impl std::error::Error for VerifyError {}

impl From<PoleError> for VerifyError {
    fn from(_: PoleError) -> Self {
        VerifyError::ParametrizationPole
    }
}

/// Decides an identity exactly.
///
/// Unconditional identities: the signed sum of all terms is brought over a
/// common denominator; the identity holds iff the numerator is the zero
/// polynomial. Conditional identities are reduced to unconditional ones by
/// substituting the parametrization into every term first.
pub fn verify_exact(id: &Identity) -> Result<VerificationReport, VerifyError> {
    let start = Instant::now();
    let signed = signed_terms(id)?;
    let cleared = ClearedSum::build(id.arity(), &signed);
    let numerator = cleared.numerator();
    let residual = if numerator.is_zero() {
        None
    } else {
        Some(RationalFunction::new(numerator, cleared.denominator))
    };
    Ok(VerificationReport::exact(id, residual, start.elapsed()))
}

/// All terms of the identity as `(negated, term)` pairs (RHS negated),
/// after substituting the parametrization if one is present.
pub(crate) fn signed_terms(id: &Identity) -> Result<Vec<(bool, RationalFunction)>, PoleError> {
    let mut out = Vec::with_capacity(id.lhs().len() + id.rhs().len());
    for (negated, terms) in [(false, id.lhs()), (true, id.rhs())] {
        for t in terms {
            let t = match id.parametrization() {
                Some(p) => t.substitute(p.var, &p.value)?,
                None => t.clone(),
            };
            out.push((negated, t));
        }
    }
    Ok(out)
}

/// A signed sum of rational functions brought over one common denominator:
/// `sum_i (+/-) num_i * cofactor_i / denominator`.
///
/// Denominators in this catalog are monomials times powers of a common
/// irreducible factor, so the lcm and the cofactors are computed with a
/// monomial split and a divisibility chain over the distinct primitive
/// parts, falling back to the general gcd when the structure is absent.
pub(crate) struct ClearedSum {
    pub denominator: SparsePoly,
    /// `(negated, numerator, cofactor)` per term, where
    /// `cofactor = denominator / term_denominator`.
    pub entries: Vec<(bool, SparsePoly, SparsePoly)>,
}

impl ClearedSum {
    pub(crate) fn build(arity: usize, terms: &[(bool, RationalFunction)]) -> ClearedSum {
        use std::collections::BTreeMap;

        // split each distinct denominator as content * monomial * primitive
        struct DenParts {
            content: BigRational,
            mono: ExponentVector,
            prim: SparsePoly,
        }
        let mut parts: BTreeMap<&SparsePoly, DenParts> = BTreeMap::new();
        for (_, t) in terms {
            parts.entry(t.den()).or_insert_with(|| {
                let den = t.den();
                let content = den.rational_content();
                let integral = den.primitive_part();
                let mono = integral.monomial_content();
                let prim = divexact(
                    &integral,
                    &SparsePoly::monomial(mono.clone(), BigRational::one()),
                )
                .expect("monomial content divides");
                DenParts {
                    content,
                    mono,
                    prim,
                }
            });
        }

        // lcm of the primitive parts, largest first so that the divisibility
        // chain common here short-circuits the gcd
        let mut prims: Vec<&SparsePoly> = {
            let mut seen = BTreeMap::new();
            for p in parts.values() {
                seen.entry(&p.prim).or_insert(());
            }
            seen.into_keys().collect()
        };
        prims.sort_by(|a, b| {
            b.total_degree()
                .cmp(&a.total_degree())
                .then_with(|| b.cmp(a))
        });
        let mut prim_lcm = match prims.first() {
            Some(p) => (*p).clone(),
            None => SparsePoly::one(arity),
        };
        for p in prims.iter().skip(1) {
            if divexact(&prim_lcm, p).is_some() {
                continue;
            }
            let g = gcd(&prim_lcm, p);
            let extra = divexact(p, &g).expect("gcd divides");
            prim_lcm = prim_lcm.mul(&extra);
        }

        // cofactors of the primitive parts; consecutive entries usually
        // divide each other, extending the previous cofactor by the ratio
        let mut prim_cofactor: BTreeMap<&SparsePoly, SparsePoly> = BTreeMap::new();
        let mut prev: Option<(&SparsePoly, SparsePoly)> = None;
        for p in &prims {
            let cof = match &prev {
                Some((prev_p, prev_cof)) => match divexact(prev_p, p) {
                    Some(step) => prev_cof.mul(&step),
                    None => divexact(&prim_lcm, p).expect("lcm is divisible"),
                },
                None => divexact(&prim_lcm, p).expect("lcm is divisible"),
            };
            prim_cofactor.insert(*p, cof.clone());
            prev = Some((*p, cof));
        }

        let mono_max = parts.values().fold(ExponentVector::zero(arity), |acc, p| {
            acc.componentwise_max(&p.mono)
        });

        let denominator = prim_lcm.mul_monomial(&mono_max, &BigRational::one());
        let entries = terms
            .iter()
            .map(|(negated, t)| {
                let p = &parts[t.den()];
                debug_assert!(p.mono.divides(&mono_max));
                let delta = mono_max.div(&p.mono);
                let cof = prim_cofactor[&p.prim].mul_monomial(&delta, &p.content.clone().recip());
                (*negated, t.num().clone(), cof)
            })
            .collect();

        ClearedSum {
            denominator,
            entries,
        }
    }

    /// The signed numerator sum over the common denominator.
    pub(crate) fn numerator(&self) -> SparsePoly {
        let arity = self.denominator.arity();
        let mut acc = SparsePoly::zero(arity);
        for (negated, num, cof) in &self.entries {
            let contribution = num.mul(cof);
            acc = if *negated {
                acc.sub(&contribution)
            } else {
                acc.add(&contribution)
            };
        }
        acc
    }
}

/// Multiset equality of term lists under canonical-form equality.
pub fn term_multiset_eq(a: &[RationalFunction], b: &[RationalFunction]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut a: Vec<_> = a.to_vec();
    let mut b: Vec<_> = b.to_vec();
    a.sort();
    b.sort();
    a == b
}

/// First term whose multiplicities differ between the two multisets.
pub fn first_multiset_mismatch(
    a: &[RationalFunction],
    b: &[RationalFunction],
) -> Option<RationalFunction> {
    use std::collections::BTreeMap;
    let mut counts: BTreeMap<&RationalFunction, i64> = BTreeMap::new();
    for t in a {
        *counts.entry(t).or_insert(0) += 1;
    }
    for t in b {
        *counts.entry(t).or_insert(0) -= 1;
    }
    counts
        .into_iter()
        .find(|(_, c)| *c != 0)
        .map(|(t, _)| t.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::number::{rat, rat_frac};

    fn one_var(p: SparsePoly) -> RationalFunction {
        RationalFunction::from_poly(p)
    }

    fn x1() -> SparsePoly {
        SparsePoly::variable(1, 0)
    }

    /// x + (1 - x) = 1, hand-assembled.
    fn toy_identity() -> Identity {
        let x = one_var(x1());
        let one_minus_x = one_var(SparsePoly::one(1).sub(&x1()));
        Identity::new(
            Family::Cb,
            vec![0, 0],
            1,
            vec![x, one_minus_x],
            vec![RationalFunction::one(1)],
        )
    }

    #[test]
    fn exact_verifier_accepts_toy_identity() {
        let report = verify_exact(&toy_identity()).unwrap();
        assert!(report.holds());
        assert!(report.residual.is_none());
        assert_eq!(report.method, Method::Exact);
    }

    #[test]
    fn exact_verifier_rejects_mutation() {
        let mutated = toy_identity().with_term_scaled(Side::Lhs, 0, &rat(2));
        let report = verify_exact(&mutated).unwrap();
        assert_eq!(report.verdict, Verdict::Fails);
        let residual = report
            .residual
            .expect("failing exact check carries a residual");
        // residual is (2x + (1-x)) - 1 = x
        assert_eq!(residual, one_var(x1()));
    }

    #[test]
    fn cleared_sum_over_shared_denominators() {
        // 1/(x(x+y)) + 1/(y(x+y)) - 1/(xy) must clear to zero
        let x = SparsePoly::variable(2, 0);
        let y = SparsePoly::variable(2, 1);
        let s = x.add(&y);
        let terms = vec![
            (false, RationalFunction::new(SparsePoly::one(2), x.mul(&s))),
            (false, RationalFunction::new(SparsePoly::one(2), y.mul(&s))),
            (true, RationalFunction::new(SparsePoly::one(2), x.mul(&y))),
        ];
        let cleared = ClearedSum::build(2, &terms);
        // common denominator is x y (x+y)
        assert_eq!(cleared.denominator, x.mul(&y).mul(&s));
        assert!(cleared.numerator().is_zero());
    }

    #[test]
    fn cleared_sum_handles_contents_and_fractions() {
        // 1/(2x) + 1/(2x) - 1/x = 0, denominators carrying content 2
        let x = SparsePoly::variable(1, 0);
        let half_x = RationalFunction::new(SparsePoly::one(1), x.scale(&rat(2)));
        let terms = vec![
            (false, half_x.clone()),
            (false, half_x),
            (true, RationalFunction::new(SparsePoly::one(1), x.clone())),
        ];
        let cleared = ClearedSum::build(1, &terms);
        assert!(cleared.numerator().is_zero());
    }

    #[test]
    fn conditional_invariant_is_enforced() {
        // constraint xy - x - y with parametrization y -> x/(x-1)
        let x = SparsePoly::variable(2, 0);
        let y = SparsePoly::variable(2, 1);
        let constraint = x.mul(&y).sub(&x).sub(&y);
        let value = RationalFunction::new(x.clone(), x.sub(&SparsePoly::one(2)));
        let id = Identity::new_conditional(
            Family::Gkp,
            vec![0, 0],
            2,
            vec![RationalFunction::from_poly(x.mul(&y))],
            vec![
                RationalFunction::from_poly(x.clone()),
                RationalFunction::from_poly(y.clone()),
            ],
            constraint,
            Parametrization { var: 1, value },
        );
        let report = verify_exact(&id).unwrap();
        assert!(report.holds());
    }

    #[test]
    #[should_panic(expected = "annihilate")]
    fn bad_parametrization_panics() {
        let x = SparsePoly::variable(2, 0);
        let y = SparsePoly::variable(2, 1);
        let constraint = x.mul(&y).sub(&x).sub(&y);
        // y -> x does not solve the constraint
        let id = Identity::new_conditional(
            Family::Gkp,
            vec![0, 0],
            2,
            vec![],
            vec![],
            constraint,
            Parametrization {
                var: 1,
                value: RationalFunction::variable(2, 0),
            },
        );
        drop(id);
    }

    #[test]
    fn multiset_comparison() {
        let a = vec![one_var(x1()), RationalFunction::one(1)];
        let b = vec![RationalFunction::one(1), one_var(x1())];
        assert!(term_multiset_eq(&a, &b));
        let c = vec![one_var(x1()), one_var(x1())];
        assert!(!term_multiset_eq(&a, &c));
        assert_eq!(first_multiset_mismatch(&a, &b), None);
        assert!(first_multiset_mismatch(&a, &c).is_some());
    }

    #[test]
    fn scaled_term_mutation_changes_scalar() {
        let id = toy_identity();
        let mutated = id.with_term_scaled(Side::Lhs, 1, &rat_frac(2, 1));
        assert_ne!(id.lhs()[1], mutated.lhs()[1]);
        assert_eq!(id.lhs()[0], mutated.lhs()[0]);
    }
}
