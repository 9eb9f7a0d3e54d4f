//! Arithmetic in the prime field `Z/p` for primes below 2^62.
//!
//! The randomized verifier works over a fixed 61-bit prime (default
//! 2^61 - 1). Elements are `u64` residues in `[0, p)`; products go through
//! `u128` so any prime under 2^62 is safe.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

use crate::number::BigRational;

/// Default modulus: the Mersenne prime 2^61 - 1.
pub const DEFAULT_PRIME: u64 = 2_305_843_009_213_693_951;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PrimeFieldError {
    /// A coefficient denominator reduced to 0 mod p, so the coefficient has
    /// no image in the field.
    BadPrime { prime: u64 },
    /// Division by zero in the field.
    ZeroDivision,
}

impl fmt::Display for PrimeFieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrimeFieldError::BadPrime { prime } => {
                write!(f, "bad prime {prime}, choose another")
            }
            PrimeFieldError::ZeroDivision => write!(f, "division by zero mod p"),
        }
    }
}

impl std::error::Error for PrimeFieldError {}

/// Arithmetic context for a fixed prime `p < 2^62`.
#[derive(Clone, Copy, Debug)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Self {
        assert!(
            (2..(1u64 << 62)).contains(&p),
            "modulus out of supported range"
        );
        PrimeField { p }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            self.p - b + a
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse by Fermat's little theorem; requires `p` prime.
    pub fn inv(&self, a: u64) -> Result<u64, PrimeFieldError> {
        if a.is_multiple_of(self.p) {
            return Err(PrimeFieldError::ZeroDivision);
        }
        Ok(self.pow(a, self.p - 2))
    }

    /// Reduces a big integer into `[0, p)`.
    pub fn reduce_bigint(&self, n: &BigInt) -> u64 {
        let p = BigInt::from(self.p);
        let r = n.mod_floor(&p);
        debug_assert!(!r.is_negative());
        r.to_u64().expect("residue fits in u64")
    }

    /// Reduces a rational coefficient as `num * den^-1 mod p`.
    pub fn reduce_rational(&self, c: &BigRational) -> Result<u64, PrimeFieldError> {
        let den = self.reduce_bigint(c.denom());
        if den == 0 {
            return Err(PrimeFieldError::BadPrime { prime: self.p });
        }
        let num = self.reduce_bigint(c.numer());
        let inv = self.inv(den)?;
        Ok(self.mul(num, inv))
    }
}

/// Deterministic Miller-Rabin primality test, exact for all `u64` inputs.
///
/// The witness set {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37} is known to
/// be complete below 3.3 * 10^24, which covers the whole u64 range.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &small in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == small {
            return true;
        }
        if n.is_multiple_of(small) {
            return false;
        }
    }
    if n >= (1 << 62) {
        // keep within PrimeField's multiplication range; the verifier only
        // accepts primes below 2^62 anyway
        return false;
    }
    let field = PrimeField::new(n);
    let mut d = n - 1;
    let mut s = 0u32;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = field.pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = field.mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::number::{rat, rat_frac};

    #[test]
    fn mersenne_61_is_prime() {
        assert!(is_prime_u64(DEFAULT_PRIME));
    }

    #[test]
    fn small_primality_table() {
        let primes: Vec<u64> = (0..60).filter(|&n| is_prime_u64(n)).collect();
        assert_eq!(
            primes,
            vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]
        );
    }

    #[test]
    fn known_composites_rejected() {
        assert!(!is_prime_u64(1));
        assert!(!is_prime_u64((1 << 61) + 1)); // 3 * ...
        assert!(!is_prime_u64(3_215_031_751)); // strong pseudoprime to bases 2,3,5,7
    }

    #[test]
    fn field_ops_round_trip() {
        let f = PrimeField::new(DEFAULT_PRIME);
        let a = 123_456_789_012_345u64;
        let inv = f.inv(a).unwrap();
        assert_eq!(f.mul(a, inv), 1);
        assert_eq!(f.add(f.neg(a), a), 0);
        assert_eq!(f.sub(5, 7), DEFAULT_PRIME - 2);
    }

    #[test]
    fn rational_reduction() {
        let f = PrimeField::new(97);
        // -1/2 mod 97 = 96 * inv(2) = 96 * 49 mod 97 = 48
        let r = f.reduce_rational(&rat_frac(-1, 2)).unwrap();
        assert_eq!(f.mul(r, 2), 96);
        assert_eq!(f.reduce_rational(&rat(100)).unwrap(), 3);
        // denominator divisible by p is a bad prime for this coefficient
        assert_eq!(
            f.reduce_rational(&rat_frac(1, 97)),
            Err(PrimeFieldError::BadPrime { prime: 97 })
        );
    }
}
