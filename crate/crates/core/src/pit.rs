//! Randomized polynomial identity testing over a 61-bit prime field.
//!
//! A fast cross-check of the exact verifier: the identity's terms are
//! cleared over one common denominator once, then evaluated at uniform
//! random field points. For a conditional identity the free coordinates
//! are drawn and the bound coordinate is computed from the rational
//! parametrization, so every sampled point lies on the constraint variety
//! mod p (asserted per trial). A nonzero difference of total degree d
//! survives a single trial with probability at most d/p, so 64 trials at
//! p ~ 2^61 leave nothing to chance.

use std::fmt;
use std::time::Instant;

use crate::identity::{ClearedSum, Identity, Method, Verdict, VerificationReport};
use crate::modp::{is_prime_u64, PrimeField, PrimeFieldError, DEFAULT_PRIME};
use crate::poly::{ExponentVector, SparsePoly};

/// Default seed when neither the caller nor the environment picks one.
pub const DEFAULT_SEED: u64 = 0xcb1d_5eed;

/// Configuration of a randomized verification run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FuzzConfig {
    /// Number of random evaluation points.
    pub trials: u32,
    /// Field modulus; must be prime and below 2^62.
    pub prime: u64,
    /// PRNG seed; identical configurations replay identically.
    pub seed: u64,
    /// Resampling budget per trial for points hitting a denominator zero.
    pub max_resamples: u32,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        FuzzConfig {
            trials: 64,
            prime: DEFAULT_PRIME,
            seed: DEFAULT_SEED,
            max_resamples: 100,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FuzzError {
    /// The configured modulus failed the primality check.
    NotPrime(u64),
    /// Some coefficient denominator is divisible by the prime.
    BadPrime(u64),
    /// Too many sampled points hit denominator zeros.
    DegenerateSampling,
    /// A sampled point missed the constraint variety, which indicates a
    /// malformed identity.
    ConstraintViolated,
}

impl fmt::Display for FuzzError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FuzzError::NotPrime(p) => write!(f, "{p} is not prime"),
            FuzzError::BadPrime(p) => write!(f, "bad prime {p}, choose another"),
            FuzzError::DegenerateSampling => {
                write!(
                    f,
                    "degenerate sampling; raise max_resamples or change prime"
                )
            }
            FuzzError::ConstraintViolated => {
                write!(f, "sampled point violates the constraint")
            }
        }
    }
}

impl std::error::Error for FuzzError {}

impl From<PrimeFieldError> for FuzzError {
    fn from(e: PrimeFieldError) -> Self {
        match e {
            PrimeFieldError::BadPrime { prime } => FuzzError::BadPrime(prime),
            PrimeFieldError::ZeroDivision => FuzzError::DegenerateSampling,
        }
    }
}

/// SplitMix64: the canonical splittable 64-bit generator. Deterministic
/// across platforms, which makes reports replayable from their seed.
struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform draw in `[0, bound)` by masked rejection.
    fn next_below(&mut self, bound: u64) -> u64 {
        let bits = 64 - (bound - 1).leading_zeros().min(63);
        loop {
            let v = self.next_u64() >> (64 - bits);
            if v < bound {
                return v;
            }
        }
    }
}

/// A polynomial with coefficients pre-reduced into the field, for cheap
/// repeated evaluation.
struct ReducedPoly {
    terms: Vec<(ExponentVector, u64)>,
    max_exponents: ExponentVector,
    arity: usize,
}

impl ReducedPoly {
    fn reduce(p: &SparsePoly, field: &PrimeField) -> Result<Self, PrimeFieldError> {
        let mut terms = Vec::with_capacity(p.num_terms());
        for (ev, c) in p.terms() {
            let r = field.reduce_rational(c)?;
            if r != 0 {
                terms.push((ev.clone(), r));
            }
        }
        Ok(ReducedPoly {
            terms,
            max_exponents: p.max_exponents(),
            arity: p.arity(),
        })
    }

    fn eval(&self, point: &[u64], field: &PrimeField) -> u64 {
        debug_assert_eq!(point.len(), self.arity);
        let tables: Vec<Vec<u64>> = point
            .iter()
            .enumerate()
            .map(|(v, &x)| {
                let d = self.max_exponents.get(v) as usize;
                let mut t = Vec::with_capacity(d + 1);
                t.push(1u64);
                for i in 0..d {
                    t.push(field.mul(t[i], x));
                }
                t
            })
            .collect();
        let mut acc = 0u64;
        for (ev, c) in &self.terms {
            let mut term = *c;
            for (v, &e) in ev.exponents().iter().enumerate() {
                if e > 0 {
                    term = field.mul(term, tables[v][e as usize]);
                }
            }
            acc = field.add(acc, term);
        }
        acc
    }
}

/// Randomized Schwartz-Zippel verification. Deterministic in
/// `(identity, config)`.
pub fn fuzz_verify(id: &Identity, cfg: &FuzzConfig) -> Result<VerificationReport, FuzzError> {
    let start = Instant::now();
    if !is_prime_u64(cfg.prime) {
        return Err(FuzzError::NotPrime(cfg.prime));
    }
    assert!(cfg.trials >= 1, "at least one trial required");
    let field = PrimeField::new(cfg.prime);
    let arity = id.arity();

    // clear denominators once: LHS - RHS = sum_i (+/-) num_i * cof_i / D
    let signed: Vec<(bool, crate::ratfunc::RationalFunction)> = id
        .lhs()
        .iter()
        .map(|t| (false, t.clone()))
        .chain(id.rhs().iter().map(|t| (true, t.clone())))
        .collect();
    let cleared = ClearedSum::build(arity, &signed);
    let denominator = ReducedPoly::reduce(&cleared.denominator, &field)?;
    let entries: Vec<(bool, ReducedPoly, ReducedPoly)> = cleared
        .entries
        .iter()
        .map(|(negated, num, cof)| {
            Ok((
                *negated,
                ReducedPoly::reduce(num, &field)?,
                ReducedPoly::reduce(cof, &field)?,
            ))
        })
        .collect::<Result<_, PrimeFieldError>>()?;

    let parametrization = match id.parametrization() {
        Some(p) => Some((
            p.var,
            ReducedPoly::reduce(p.value.num(), &field)?,
            ReducedPoly::reduce(p.value.den(), &field)?,
        )),
        None => None,
    };
    let constraint = match id.constraint() {
        Some(c) => Some(ReducedPoly::reduce(c, &field)?),
        None => None,
    };

    let mut rng = SplitMix64::new(cfg.seed);
    let mut verdict = Verdict::Holds;
    let mut trials_run = 0u32;
    'trials: for _ in 0..cfg.trials {
        let mut resamples = 0u32;
        let point = loop {
            let mut point: Vec<u64> = (0..arity).map(|_| rng.next_below(cfg.prime)).collect();
            if let Some((var, pnum, pden)) = &parametrization {
                let d = pden.eval(&point, &field);
                if d == 0 {
                    resamples += 1;
                    if resamples > cfg.max_resamples {
                        return Err(FuzzError::DegenerateSampling);
                    }
                    continue;
                }
                let n = pnum.eval(&point, &field);
                point[*var] = field.mul(n, field.inv(d)?);
            }
            if denominator.eval(&point, &field) == 0 {
                resamples += 1;
                if resamples > cfg.max_resamples {
                    return Err(FuzzError::DegenerateSampling);
                }
                continue;
            }
            break point;
        };
        if let Some(c) = &constraint {
            // every sampled point must sit on the variety mod p
            if c.eval(&point, &field) != 0 {
                return Err(FuzzError::ConstraintViolated);
            }
        }
        let mut acc = 0u64;
        for (negated, num, cof) in &entries {
            let v = field.mul(num.eval(&point, &field), cof.eval(&point, &field));
            acc = if *negated {
                field.sub(acc, v)
            } else {
                field.add(acc, v)
            };
        }
        trials_run += 1;
        if acc != 0 {
            verdict = Verdict::Fails;
            break 'trials;
        }
    }

    Ok(VerificationReport {
        family: id.family(),
        params: id.params().to_vec(),
        method: Method::ModP,
        verdict,
        residual: None,
        trials: Some(trials_run),
        seed: Some(cfg.seed),
        elapsed: start.elapsed(),
    })
}

/// Convenience: fuzz an identity against the default configuration with a
/// caller-supplied seed.
pub fn fuzz_verify_seeded(id: &Identity, seed: u64) -> Result<VerificationReport, FuzzError> {
    fuzz_verify(
        id,
        &FuzzConfig {
            seed,
            ..FuzzConfig::default()
        },
    )
}
