//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! A polynomial is a finite map from exponent vectors to nonzero
//! coefficients. Stored coefficients are never zero, every exponent vector
//! has length equal to the ring arity, and iteration order is lexicographic
//! with variable 0 most significant. The zero polynomial keeps an explicit
//! arity so arity checks stay total.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::modp::{self, PrimeField};
use crate::number::BigRational;

/// Exponent vector of a monomial: one non-negative exponent per variable.
///
/// The derived `Ord` is lexicographic with index 0 most significant, which
/// is the term order used for canonical iteration and leading terms.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    pub fn new(exponents: Vec<u32>) -> Self {
        ExponentVector(exponents)
    }

    pub fn zero(arity: usize) -> Self {
        ExponentVector(vec![0; arity])
    }

    /// The exponent vector of the single variable `var`.
    pub fn unit(arity: usize, var: usize) -> Self {
        assert!(
            var < arity,
            "variable index {var} out of range for arity {arity}"
        );
        let mut e = vec![0; arity];
        e[var] = 1;
        ExponentVector(e)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, var: usize) -> u32 {
        self.0[var]
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_constant(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Product of monomials: componentwise sum.
    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.len(), other.len());
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Whether `self` divides `other` componentwise.
    pub fn divides(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Quotient monomial `self / other`. Panics unless `other` divides `self`.
    pub fn div(&self, other: &Self) -> Self {
        debug_assert!(other.divides(self));
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn componentwise_min(&self, other: &Self) -> Self {
        ExponentVector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.min(b))
                .collect(),
        )
    }

    pub fn componentwise_max(&self, other: &Self) -> Self {
        ExponentVector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }
}

/// Sparse multivariate polynomial over the exact rationals.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SparsePoly {
    arity: usize,
    terms: BTreeMap<ExponentVector, BigRational>,
}

impl SparsePoly {
    pub fn zero(arity: usize) -> Self {
        assert!(arity >= 1, "arity must be positive");
        SparsePoly {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(arity: usize) -> Self {
        Self::constant(arity, BigRational::one())
    }

    pub fn constant(arity: usize, c: BigRational) -> Self {
        let mut p = Self::zero(arity);
        if !c.is_zero() {
            p.terms.insert(ExponentVector::zero(arity), c);
        }
        p
    }

    /// The single variable `x_var`.
    pub fn variable(arity: usize, var: usize) -> Self {
        Self::monomial(ExponentVector::unit(arity, var), BigRational::one())
    }

    /// `c * x^exponents`.
    pub fn monomial(exponents: ExponentVector, c: BigRational) -> Self {
        let mut p = Self::zero(exponents.len());
        if !c.is_zero() {
            p.terms.insert(exponents, c);
        }
        p
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, summing
    /// duplicates and purging zeros.
    pub fn from_terms<I>(arity: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (ExponentVector, BigRational)>,
    {
        let mut p = Self::zero(arity);
        for (ev, c) in terms {
            p.add_term(ev, c);
        }
        p
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .first_key_value()
                .map(|(ev, c)| ev.is_constant() && c.is_one())
                .unwrap_or(false)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.keys().all(ExponentVector::is_constant)
    }

    /// The constant value, if this polynomial is constant.
    pub fn constant_value(&self) -> Option<BigRational> {
        if self.is_zero() {
            Some(BigRational::zero())
        } else if self.is_constant() {
            self.terms.first_key_value().map(|(_, c)| c.clone())
        } else {
            None
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &BigRational)> {
        self.terms.iter()
    }

    /// The lexicographically greatest term.
    pub fn leading(&self) -> Option<(&ExponentVector, &BigRational)> {
        self.terms.last_key_value()
    }

    pub fn coefficient(&self, ev: &ExponentVector) -> BigRational {
        self.terms
            .get(ev)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(ExponentVector::total_degree)
            .max()
            .unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        assert!(var < self.arity, "variable index {var} out of range");
        self.terms.keys().map(|ev| ev.get(var)).max().unwrap_or(0)
    }

    /// Componentwise maximum exponent over all terms (zero vector for 0).
    pub fn max_exponents(&self) -> ExponentVector {
        self.terms
            .keys()
            .fold(ExponentVector::zero(self.arity), |acc, ev| {
                acc.componentwise_max(ev)
            })
    }

    /// The largest monomial dividing every term (zero vector for 0).
    pub fn monomial_content(&self) -> ExponentVector {
        let mut it = self.terms.keys();
        let first = match it.next() {
            Some(ev) => ev.clone(),
            None => return ExponentVector::zero(self.arity),
        };
        it.fold(first, |acc, ev| acc.componentwise_min(ev))
    }

    fn add_term(&mut self, ev: ExponentVector, c: BigRational) {
        assert_eq!(
            ev.len(),
            self.arity,
            "exponent vector length must equal arity"
        );
        if c.is_zero() {
            return;
        }
        match self.terms.entry(ev) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    fn assert_same_arity(&self, other: &Self) {
        assert_eq!(
            self.arity, other.arity,
            "arity mismatch: {} vs {}",
            self.arity, other.arity
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_same_arity(other);
        let mut out = self.clone();
        for (ev, c) in &other.terms {
            out.add_term(ev.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.assert_same_arity(other);
        let mut out = self.clone();
        for (ev, c) in &other.terms {
            out.add_term(ev.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        SparsePoly {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .map(|(ev, c)| (ev.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.assert_same_arity(other);
        let mut out = Self::zero(self.arity);
        // iterate the smaller operand on the outside
        let (small, large) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        for (ev_a, c_a) in &small.terms {
            for (ev_b, c_b) in &large.terms {
                out.add_term(ev_a.mul(ev_b), c_a * c_b);
            }
        }
        out
    }

    /// Multiplies by the monomial `c * x^ev` without building a second map.
    pub fn mul_monomial(&self, ev: &ExponentVector, c: &BigRational) -> Self {
        assert_eq!(ev.len(), self.arity);
        if c.is_zero() {
            return Self::zero(self.arity);
        }
        SparsePoly {
            arity: self.arity,
            terms: self.terms.iter().map(|(e, k)| (e.mul(ev), k * c)).collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.arity);
        }
        SparsePoly {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .map(|(ev, k)| (ev.clone(), k * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        if e == 0 {
            return Self::one(self.arity);
        }
        let mut base = self.clone();
        let mut exp = e;
        let mut acc: Option<SparsePoly> = None;
        loop {
            if exp & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.mul(&base),
                });
            }
            exp >>= 1;
            if exp == 0 {
                break;
            }
            base = base.mul(&base);
        }
        acc.unwrap()
    }

    /// Exact formal partial derivative with respect to `x_var`.
    pub fn partial_derivative(&self, var: usize) -> Self {
        assert!(var < self.arity, "variable index {var} out of range");
        let mut out = Self::zero(self.arity);
        for (ev, c) in &self.terms {
            let e = ev.get(var);
            if e == 0 {
                continue;
            }
            let mut exps = ev.exponents().to_vec();
            exps[var] = e - 1;
            out.add_term(
                ExponentVector::new(exps),
                c * BigRational::from_integer(BigInt::from(e)),
            );
        }
        out
    }

    /// Exact evaluation at a rational point.
    pub fn eval(&self, point: &[BigRational]) -> BigRational {
        assert_eq!(point.len(), self.arity, "point length must equal arity");
        let max = self.max_exponents();
        // power tables per variable
        let tables: Vec<Vec<BigRational>> = point
            .iter()
            .enumerate()
            .map(|(v, x)| {
                let d = max.get(v) as usize;
                let mut t = Vec::with_capacity(d + 1);
                t.push(BigRational::one());
                for i in 0..d {
                    let next = &t[i] * x;
                    t.push(next);
                }
                t
            })
            .collect();
        let mut acc = BigRational::zero();
        for (ev, c) in &self.terms {
            let mut term = c.clone();
            for (v, &e) in ev.exponents().iter().enumerate() {
                if e > 0 {
                    term *= &tables[v][e as usize];
                }
            }
            acc += term;
        }
        acc
    }

    /// Evaluation over the prime field `Z/p`, reducing each coefficient as
    /// `num * den^-1 mod p`.
    ///
    /// Fails with [`modp::PrimeFieldError::BadPrime`] when some coefficient
    /// denominator is divisible by `p`.
    pub fn eval_modp(&self, point: &[u64], prime: u64) -> Result<u64, modp::PrimeFieldError> {
        assert_eq!(point.len(), self.arity, "point length must equal arity");
        let field = PrimeField::new(prime);
        let max = self.max_exponents();
        let tables: Vec<Vec<u64>> = point
            .iter()
            .enumerate()
            .map(|(v, &x)| {
                let d = max.get(v) as usize;
                let mut t = Vec::with_capacity(d + 1);
                t.push(1u64);
                for i in 0..d {
                    t.push(field.mul(t[i], x % prime));
                }
                t
            })
            .collect();
        let mut acc = 0u64;
        for (ev, c) in &self.terms {
            let mut term = field.reduce_rational(c)?;
            for (v, &e) in ev.exponents().iter().enumerate() {
                if e > 0 {
                    term = field.mul(term, tables[v][e as usize]);
                }
            }
            acc = field.add(acc, term);
        }
        Ok(acc)
    }

    /// The rational content: the unique `c` with `self = c * p` where `p`
    /// has integer coefficients, content 1, and positive leading
    /// coefficient. Returns 0 for the zero polynomial.
    pub fn rational_content(&self) -> BigRational {
        if self.is_zero() {
            return BigRational::zero();
        }
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut content = BigRational::new(num_gcd, den_lcm);
        if self
            .leading()
            .map(|(_, c)| c.is_negative())
            .unwrap_or(false)
        {
            content = -content;
        }
        content
    }

    /// `self / rational_content()`: integer coefficients, content 1,
    /// positive leading coefficient. Returns 0 for the zero polynomial.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let c = self.rational_content().recip();
        self.scale(&c)
    }

    /// Reflects exponents against `bounds`: `x^e` becomes `x^(bounds - e)`.
    /// Realizes `x_i -> 1/x_i` after clearing `x^bounds`; `bounds` must
    /// dominate every exponent vector of `self`.
    pub fn reflect(&self, bounds: &ExponentVector) -> Self {
        assert_eq!(bounds.len(), self.arity);
        SparsePoly {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .map(|(ev, c)| {
                    assert!(
                        ev.divides(bounds),
                        "reflection bounds do not dominate terms"
                    );
                    (bounds.div(ev), c.clone())
                })
                .collect(),
        }
    }

    /// Removes variable `var` from the ring. The polynomial must not
    /// depend on it (degree 0 in `var`).
    pub fn drop_var(&self, var: usize) -> Self {
        assert!(var < self.arity);
        assert_eq!(
            self.degree_in(var),
            0,
            "cannot drop a variable the polynomial depends on"
        );
        assert!(self.arity > 1, "cannot drop the last variable");
        SparsePoly {
            arity: self.arity - 1,
            terms: self
                .terms
                .iter()
                .map(|(ev, c)| {
                    let mut exps = ev.exponents().to_vec();
                    exps.remove(var);
                    (ExponentVector::new(exps), c.clone())
                })
                .collect(),
        }
    }

    /// Substitutes the polynomial `g` (same arity) for variable `var`.
    pub fn substitute(&self, var: usize, g: &SparsePoly) -> SparsePoly {
        assert!(var < self.arity);
        self.assert_same_arity(g);
        let deg = self.degree_in(var);
        // powers of g up to deg
        let mut powers: Vec<SparsePoly> = Vec::with_capacity(deg as usize + 1);
        powers.push(SparsePoly::one(self.arity));
        for i in 0..deg as usize {
            powers.push(powers[i].mul(g));
        }
        let mut out = SparsePoly::zero(self.arity);
        for (ev, c) in &self.terms {
            let e = ev.get(var);
            let mut exps = ev.exponents().to_vec();
            exps[var] = 0;
            let rest = SparsePoly::monomial(ExponentVector::new(exps), c.clone());
            out = out.add(&rest.mul(&powers[e as usize]));
        }
        out
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for &SparsePoly {
            type Output = SparsePoly;
            fn $method(self, rhs: &SparsePoly) -> SparsePoly {
                SparsePoly::$method(self, rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for &SparsePoly {
    type Output = SparsePoly;
    fn neg(self) -> SparsePoly {
        SparsePoly::neg(self)
    }
}
