//! Exact symbolic engine for the Chaundy-Bullard identity and its
//! relatives.
//!
//! The crate provides:
//!
//! * an exact arithmetic kernel: arbitrary-precision rationals, sparse
//!   multivariate polynomials, multivariate gcd, and canonical rational
//!   functions ([`poly`], [`gcd`], [`ratfunc`], [`number`]);
//! * builders materializing each identity of the catalog as a structured
//!   [`Identity`] with flat term lists, plus the exact verifier
//!   ([`builders`], [`identity`]);
//! * a derivation engine that reproduces the inverse-power identity by
//!   applying `prod_t (-d/dx_t)^{m_t}` to the partial-fraction base
//!   identity and flattening the Leibniz expansion ([`derivation`]);
//! * a randomized Schwartz-Zippel verifier over a 61-bit prime field as an
//!   independent cross-check ([`pit`], [`modp`]).
//!
//! All values are immutable after construction and all operations are pure
//! functions, so everything is safe to share and send across threads.

pub mod builders;
pub mod derivation;
pub mod gcd;
pub mod identity;
pub mod modp;
pub mod number;
pub mod pit;
pub mod poly;
pub mod ratfunc;

pub use builders::{
    build, build_base_n, build_cb, build_gkp, build_homogeneous, build_inverse_n, build_knuth3,
    build_ks27, build_n_powers, build_s2_one, build_three_param, build_transformed, BuildError,
};
pub use derivation::{
    apply_operator, derive_inverse_identity, invert_variables, DerivedIdentity, OperatorOrders,
};
pub use identity::{
    first_multiset_mismatch, term_multiset_eq, verify_exact, Family, Identity, Method,
    Parametrization, Side, Verdict, VerificationReport, VerifyError,
};
pub use number::{binomial, factorial, multinomial, BigRational};
pub use pit::{fuzz_verify, fuzz_verify_seeded, FuzzConfig, FuzzError, DEFAULT_SEED};
pub use poly::{ExponentVector, SparsePoly};
pub use ratfunc::{PoleError, RationalFunction, ZeroDenominator};
