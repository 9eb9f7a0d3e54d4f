//! Normalized rational functions: quotients of sparse polynomials in
//! canonical form.
//!
//! The canonical representative has numerator and denominator with integer
//! coefficients, no common polynomial factor, coprime contents, and a
//! denominator whose lexicographically-leading coefficient is positive.
//! Normalizing a normalized value is the identity, so structural equality
//! is mathematical equality.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use crate::gcd::{divexact, gcd};
use crate::number::BigRational;
use crate::poly::{ExponentVector, SparsePoly};

/// Substitution produced an identically-zero denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoleError;

impl fmt::Display for PoleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "substitution hits pole identically")
    }
}

impl std::error::Error for PoleError {}

/// Denominator is the zero polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroDenominator;

impl fmt::Display for ZeroDenominator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "denominator is the zero polynomial")
    }
}

impl std::error::Error for ZeroDenominator {}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RationalFunction {
    num: SparsePoly,
    den: SparsePoly,
}

impl RationalFunction {
    /// Canonical quotient `num / den`. Panics if `den` is zero.
    pub fn new(num: SparsePoly, den: SparsePoly) -> Self {
        Self::try_new(num, den).expect("denominator is the zero polynomial")
    }

    /// Canonical quotient `num / den`, rejecting a zero denominator.
    pub fn try_new(num: SparsePoly, den: SparsePoly) -> Result<Self, ZeroDenominator> {
        if den.is_zero() {
            return Err(ZeroDenominator);
        }
        assert_eq!(num.arity(), den.arity(), "arity mismatch");
        if num.is_zero() {
            return Ok(Self {
                num: SparsePoly::zero(den.arity()),
                den: SparsePoly::one(den.arity()),
            });
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                divexact(&num, &g).expect("gcd divides"),
                divexact(&den, &g).expect("gcd divides"),
            )
        };
        Ok(Self::from_reduced(num, den))
    }

    /// Builds from a pair already free of common polynomial factors; only
    /// the content and sign canonicalization is applied.
    fn from_reduced(num: SparsePoly, den: SparsePoly) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return Self {
                num: SparsePoly::zero(den.arity()),
                den: SparsePoly::one(den.arity()),
            };
        }
        let scalar = num.rational_content() / den.rational_content();
        let num = num
            .primitive_part()
            .scale(&BigRational::from_integer(scalar.numer().clone()));
        let den = den
            .primitive_part()
            .scale(&BigRational::from_integer(scalar.denom().clone()));
        Self { num, den }
    }

    pub fn zero(arity: usize) -> Self {
        Self {
            num: SparsePoly::zero(arity),
            den: SparsePoly::one(arity),
        }
    }

    pub fn one(arity: usize) -> Self {
        Self::from_poly(SparsePoly::one(arity))
    }

    pub fn constant(arity: usize, c: BigRational) -> Self {
        Self::from_poly(SparsePoly::constant(arity, c))
    }

    pub fn from_poly(p: SparsePoly) -> Self {
        let den = SparsePoly::one(p.arity());
        Self::from_reduced(p, den)
    }

    /// The single variable `x_var` as a rational function.
    pub fn variable(arity: usize, var: usize) -> Self {
        Self::from_poly(SparsePoly::variable(arity, var))
    }

    pub fn num(&self) -> &SparsePoly {
        &self.num
    }

    pub fn den(&self) -> &SparsePoly {
        &self.den
    }

    pub fn arity(&self) -> usize {
        self.num.arity()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// The polynomial this value equals, if the denominator is constant.
    pub fn as_polynomial(&self) -> Option<SparsePoly> {
        let c = self.den.constant_value()?;
        Some(self.num.scale(&c.recip()))
    }

    /// The scalar multiplier separating this value from its coefficient-free
    /// shape: the rational content of the numerator divided by the (positive)
    /// content of the denominator.
    pub fn scalar_content(&self) -> BigRational {
        if self.is_zero() {
            return BigRational::zero();
        }
        self.num.rational_content() / self.den.rational_content()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.arity(), other.arity(), "arity mismatch");
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let g = gcd(&self.den, &other.den);
        if g.is_one() {
            let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
            let den = self.den.mul(&other.den);
            Self::new(num, den)
        } else {
            let da = divexact(&self.den, &g).expect("gcd divides");
            let db = divexact(&other.den, &g).expect("gcd divides");
            let num = self.num.mul(&db).add(&other.num.mul(&da));
            let den = self.den.mul(&db);
            Self::new(num, den)
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.arity(), other.arity(), "arity mismatch");
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.arity());
        }
        // cross-cancel so the result needs no further polynomial gcd
        let g1 = gcd(&self.num, &other.den);
        let g2 = gcd(&other.num, &self.den);
        let n1 = divexact(&self.num, &g1).expect("gcd divides");
        let d2 = divexact(&other.den, &g1).expect("gcd divides");
        let n2 = divexact(&other.num, &g2).expect("gcd divides");
        let d1 = divexact(&self.den, &g2).expect("gcd divides");
        Self::from_reduced(n1.mul(&n2), d1.mul(&d2))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.arity());
        }
        Self::from_reduced(self.num.scale(c), self.den.clone())
    }

    /// Integer power; negative exponents invert. Panics when asked to
    /// invert zero.
    pub fn pow(&self, e: i64) -> Self {
        if e == 0 {
            return Self::one(self.arity());
        }
        let k = e.unsigned_abs() as u32;
        if e > 0 {
            // coprimality survives powering, so no gcd is needed
            Self::from_reduced(self.num.pow(k), self.den.pow(k))
        } else {
            assert!(!self.is_zero(), "inversion of zero");
            Self::from_reduced(self.den.pow(k), self.num.pow(k))
        }
    }

    /// Exact partial derivative by the quotient rule, normalized.
    pub fn partial_derivative(&self, var: usize) -> Self {
        let n = &self.num;
        let d = &self.den;
        let n_prime = n.partial_derivative(var);
        let d_prime = d.partial_derivative(var);
        if d_prime.is_zero() {
            return Self::new(n_prime, d.clone());
        }
        // with g = gcd(d, d'), d = g u and d' = g w:
        // (n/d)' = (n' u - n w) / (g u^2)
        let g = gcd(d, &d_prime);
        let u = divexact(d, &g).expect("gcd divides");
        let w = divexact(&d_prime, &g).expect("gcd divides");
        let num = n_prime.mul(&u).sub(&n.mul(&w));
        let den = g.mul(&u).mul(&u);
        Self::new(num, den)
    }

    /// Substitutes the rational function `g` for variable `var`, clearing
    /// denominators with a shared power of `g`'s denominator.
    pub fn substitute(&self, var: usize, g: &Self) -> Result<Self, PoleError> {
        assert_eq!(self.arity(), g.arity(), "arity mismatch");
        assert!(var < self.arity(), "variable index out of range");
        let e = self.num.degree_in(var).max(self.den.degree_in(var));
        let num_hat = substitute_cleared(&self.num, var, g, e);
        let den_hat = substitute_cleared(&self.den, var, g, e);
        if den_hat.is_zero() {
            return Err(PoleError);
        }
        Ok(Self::new(num_hat, den_hat))
    }

    /// Exact evaluation; `None` when the denominator vanishes at the point.
    pub fn eval(&self, point: &[BigRational]) -> Option<BigRational> {
        let d = self.den.eval(point);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(point) / d)
    }
}

/// `p(.., x_var -> g, ..) * g.den^e` as a polynomial, for `e >= deg_var(p)`.
fn substitute_cleared(p: &SparsePoly, var: usize, g: &RationalFunction, e: u32) -> SparsePoly {
    let arity = p.arity();
    let mut num_pows: Vec<SparsePoly> = Vec::with_capacity(e as usize + 1);
    let mut den_pows: Vec<SparsePoly> = Vec::with_capacity(e as usize + 1);
    num_pows.push(SparsePoly::one(arity));
    den_pows.push(SparsePoly::one(arity));
    for i in 0..e as usize {
        num_pows.push(num_pows[i].mul(g.num()));
        den_pows.push(den_pows[i].mul(g.den()));
    }
    let mut out = SparsePoly::zero(arity);
    for (ev, c) in p.terms() {
        let k = ev.get(var) as usize;
        let mut exps = ev.exponents().to_vec();
        exps[var] = 0;
        let shell = SparsePoly::monomial(ExponentVector::new(exps), c.clone());
        out = out.add(&shell.mul(&num_pows[k]).mul(&den_pows[e as usize - k]));
    }
    out
}

macro_rules! forward_rf_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for &RationalFunction {
            type Output = RationalFunction;
            fn $method(self, rhs: &RationalFunction) -> RationalFunction {
                RationalFunction::$method(self, rhs)
            }
        }
    };
}

forward_rf_binop!(Add, add);
forward_rf_binop!(Sub, sub);
forward_rf_binop!(Mul, mul);

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction::neg(self)
    }
}
