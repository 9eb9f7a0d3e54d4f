//! Exact scalar arithmetic: arbitrary-precision rationals and the
//! combinatorial coefficients that appear throughout the identity catalog.
//!
//! The coefficient domain is [`BigRational`] from `num-rational`, which
//! already maintains the canonical-form invariants we rely on everywhere:
//! a positive denominator, a fully reduced fraction, and zero stored as 0/1.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub use num_rational::BigRational;

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `num / den` as an exact rational. Panics if `den == 0`.
pub fn rat_frac(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// `n!` as an exact big integer.
pub fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    acc
}

/// Binomial coefficient `C(n, r)` with the extended convention
/// `C(n, r) = 0` for `r < 0` or `r > n`.
///
/// The zero convention lets identity builders sum over their stated index
/// ranges without special-casing vanishing terms.
pub fn binomial(n: u64, r: i64) -> BigRational {
    if r < 0 || r as u64 > n {
        return BigRational::zero();
    }
    let r = (r as u64).min(n - r as u64);
    let mut acc = BigInt::one();
    for i in 0..r {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    BigRational::from_integer(acc)
}

/// Multinomial coefficient `(sum orders)! / prod (orders[i]!)`.
pub fn multinomial(orders: &[u64]) -> BigRational {
    let total: u64 = orders.iter().sum();
    let mut num = factorial(total);
    for &k in orders {
        num /= factorial(k);
    }
    BigRational::from_integer(num)
}

/// Integer gcd of two rationals: `gcd(a/b, c/d) = gcd(a, c) / lcm(b, d)`.
///
/// This is the scalar that divides both arguments with integer quotients of
/// gcd 1; it is what content extraction over the rationals needs.
pub fn rat_gcd(a: &BigRational, b: &BigRational) -> BigRational {
    use num_integer::Integer;
    if a.is_zero() {
        return b.abs();
    }
    if b.is_zero() {
        return a.abs();
    }
    let num = a.numer().gcd(b.numer());
    let den = a.denom().lcm(b.denom());
    BigRational::new(num, den)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle: straight factorial quotient.
    fn binomial_oracle(n: u64, r: u64) -> BigRational {
        BigRational::from_integer(factorial(n) / (factorial(r) * factorial(n - r)))
    }

    #[test]
    fn binomial_small_values() {
        assert_eq!(binomial(4, 2), rat(6));
        assert_eq!(binomial(0, 0), rat(1));
        assert_eq!(binomial(7, 4), rat(35));
    }

    #[test]
    fn binomial_out_of_range_is_zero() {
        assert_eq!(binomial(5, 7), rat(0));
        assert_eq!(binomial(5, -1), rat(0));
        assert_eq!(binomial(0, 1), rat(0));
    }

    #[test]
    fn binomial_matches_factorial_oracle() {
        assert_eq!(binomial(10, 3), binomial_oracle(10, 3));
        assert_eq!(binomial_oracle(10, 3), rat(120));
        for n in 0..=12u64 {
            for r in 0..=n {
                assert_eq!(binomial(n, r as i64), binomial_oracle(n, r));
            }
        }
    }

    #[test]
    fn multinomial_values() {
        assert_eq!(multinomial(&[1, 1, 1]), rat(6));
        assert_eq!(multinomial(&[2, 0]), rat(1));
        // factorial oracle: 4!/(2! 1! 1!) = 12
        assert_eq!(multinomial(&[2, 1, 1]), rat(12));
        assert_eq!(
            multinomial(&[2, 1, 1]),
            BigRational::from_integer(factorial(4) / (factorial(2) * factorial(1) * factorial(1)))
        );
    }

    #[test]
    fn multinomial_of_empty_and_single() {
        assert_eq!(multinomial(&[]), rat(1));
        assert_eq!(multinomial(&[5]), rat(1));
    }

    #[test]
    fn rat_gcd_basics() {
        assert_eq!(rat_gcd(&rat(6), &rat(4)), rat(2));
        assert_eq!(rat_gcd(&rat_frac(1, 2), &rat_frac(1, 3)), rat_frac(1, 6));
        assert_eq!(rat_gcd(&rat(0), &rat(-5)), rat(5));
        assert_eq!(rat_gcd(&rat(-4), &rat(-6)), rat(2));
    }

    #[test]
    fn factorial_is_exact_past_machine_range() {
        // 25! does not fit in u64; exactness is the whole point.
        let f25 = factorial(25);
        assert_eq!(f25, factorial(24) * BigInt::from(25));
        assert!(f25 > BigInt::from(u64::MAX));
    }
}
