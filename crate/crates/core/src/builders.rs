//! Builders materializing each identity in the catalog as a structured
//! [`Identity`].
//!
//! Terms are emitted flat, one rational function per summand, so that
//! reports and the derivation engine can compare term multisets. Binomial
//! coefficients use the extended zero convention, and summands whose
//! coefficient vanishes are skipped.

use std::fmt;

use num_traits::One;

use crate::identity::{Family, Identity, Parametrization};
use crate::number::{binomial, multinomial, BigRational};
use crate::poly::{ExponentVector, SparsePoly};
use crate::ratfunc::RationalFunction;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BuildError {
    /// The family's parameter constraint is violated (three_param requires
    /// `m - r + k - l = 0`).
    ParameterConstraint,
    /// The requested identity has no terms (ks27 requires `m > r`).
    EmptyIdentity,
    /// Wrong parameter count, negative entries, or an out-of-range arity.
    InvalidParams(String),
}

impl fmt::Display for BuildError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BuildError::ParameterConstraint => write!(f, "parameter constraint violated"),
            BuildError::EmptyIdentity => write!(f, "empty identity"),
            BuildError::InvalidParams(msg) => write!(f, "{msg}"),
        }
    }
}

impl std::error::Error for BuildError {}

fn var(arity: usize, v: usize) -> SparsePoly {
    SparsePoly::variable(arity, v)
}

/// `x_1 + ... + x_n`.
fn sum_of_vars(arity: usize) -> SparsePoly {
    let mut s = SparsePoly::zero(arity);
    for v in 0..arity {
        s = s.add(&var(arity, v));
    }
    s
}

/// `sum_t prod_{j != t} x_j`, the degree-(n-1) elementary symmetric
/// polynomial.
fn skip_products_sum(arity: usize) -> SparsePoly {
    let mut s = SparsePoly::zero(arity);
    for t in 0..arity {
        s = s.add(&SparsePoly::monomial(
            skip_monomial(arity, t, &vec![0; arity]),
            BigRational::one(),
        ));
    }
    s
}

/// The monomial `prod_{j != t} x_j^{extra[j] + 1}`.
fn skip_monomial(arity: usize, t: usize, extra: &[u32]) -> ExponentVector {
    let mut exps = vec![0u32; arity];
    for (j, e) in exps.iter_mut().enumerate() {
        if j != t {
            *e = extra[j] + 1;
        }
    }
    ExponentVector::new(exps)
}

/// `1 - x` in one variable.
fn one_minus_x() -> SparsePoly {
    SparsePoly::one(1).sub(&var(1, 0))
}

/// `x^e` as a rational function of one variable, negative exponents
/// allowed.
fn x_power(e: i64) -> RationalFunction {
    let p = var(1, 0).pow(e.unsigned_abs() as u32);
    if e >= 0 {
        RationalFunction::from_poly(p)
    } else {
        RationalFunction::new(SparsePoly::one(1), p)
    }
}

/// Successive powers `base^0 .. base^max`.
fn power_table(base: &SparsePoly, max: u32) -> Vec<SparsePoly> {
    let mut t = Vec::with_capacity(max as usize + 1);
    t.push(SparsePoly::one(base.arity()));
    for i in 0..max as usize {
        t.push(t[i].mul(base));
    }
    t
}

/// Runs `f` over every index vector `i` of length `bounds.len()` with
/// `0 <= i[j] <= bounds[j]` for `j != skip` and `i[skip] = 0`.
fn for_each_skip_index(bounds: &[u32], skip: usize, f: &mut impl FnMut(&[u32])) {
    let n = bounds.len();
    let mut idx = vec![0u32; n];
    loop {
        f(&idx);
        // odometer increment over all positions except `skip`
        let mut pos = 0;
        loop {
            if pos == n {
                return;
            }
            if pos == skip {
                pos += 1;
                continue;
            }
            if idx[pos] < bounds[pos] {
                idx[pos] += 1;
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

/// Chaundy-Bullard:
///
/// ```text
/// 1 = x^{k+1} sum_{i<=m} C(k+i,k) (1-x)^i
///   + (1-x)^{m+1} sum_{i<=k} C(m+i,m) x^i
/// ```
pub fn build_cb(k: u32, m: u32) -> Identity {
    let x = var(1, 0);
    let omx = one_minus_x();
    let omx_pows = power_table(&omx, m.max(1));
    let x_k1 = x.pow(k + 1);
    let omx_m1 = omx.pow(m + 1);
    let mut lhs = Vec::new();
    for i in 0..=m {
        let c = binomial((k + i) as u64, k as i64);
        lhs.push(RationalFunction::from_poly(
            x_k1.mul(&omx_pows[i as usize]).scale(&c),
        ));
    }
    for i in 0..=k {
        let c = binomial((m + i) as u64, m as i64);
        lhs.push(RationalFunction::from_poly(omx_m1.mul(&x.pow(i)).scale(&c)));
    }
    Identity::new(
        Family::Cb,
        vec![k as i64, m as i64],
        1,
        lhs,
        vec![RationalFunction::one(1)],
    )
}

/// Homogeneous two-variable form:
///
/// ```text
/// sum_{i<=m} C(k+i,k) x^{m-i+1} (xy/(x+y))^{k+i+1}
///   + sum_{i<=k} C(m+i,m) y^{k-i+1} (xy/(x+y))^{m+i+1}
///   = x^{m+1} y^{k+1}
/// ```
pub fn build_homogeneous(k: u32, m: u32) -> Identity {
    let x = var(2, 0);
    let y = var(2, 1);
    let s_pows = power_table(&sum_of_vars(2), k + m + 1);
    let xy = ExponentVector::new(vec![1, 1]);
    let mut lhs = Vec::new();
    let term = |c: BigRational, var_part: SparsePoly, ratio_exp: u32| {
        // var_part * (xy)^ratio_exp / (x+y)^ratio_exp
        let mut mono = xy.clone();
        for _ in 1..ratio_exp {
            mono = mono.mul(&xy);
        }
        let num = var_part.mul_monomial(&mono, &c);
        RationalFunction::new(num, s_pows[ratio_exp as usize].clone())
    };
    for i in 0..=m {
        let c = binomial((k + i) as u64, k as i64);
        lhs.push(term(c, x.pow(m - i + 1), k + i + 1));
    }
    for i in 0..=k {
        let c = binomial((m + i) as u64, m as i64);
        lhs.push(term(c, y.pow(k - i + 1), m + i + 1));
    }
    let rhs = vec![RationalFunction::from_poly(x.pow(m + 1).mul(&y.pow(k + 1)))];
    Identity::new(Family::Homogeneous, vec![k as i64, m as i64], 2, lhs, rhs)
}

/// Graham-Knuth-Patashnik conditional form: if `xy = x + y` then
///
/// ```text
/// x^{m+1} y^{k+1} = sum_{i<=m} C(k+i,k) x^{m-i+1}
///                 + sum_{i<=k} C(m+i,m) y^{k-i+1}
/// ```
pub fn build_gkp(k: u32, m: u32) -> Identity {
    let x = var(2, 0);
    let y = var(2, 1);
    let lhs = vec![RationalFunction::from_poly(x.pow(m + 1).mul(&y.pow(k + 1)))];
    let mut rhs = Vec::new();
    for i in 0..=m {
        let c = binomial((k + i) as u64, k as i64);
        rhs.push(RationalFunction::from_poly(x.pow(m - i + 1).scale(&c)));
    }
    for i in 0..=k {
        let c = binomial((m + i) as u64, m as i64);
        rhs.push(RationalFunction::from_poly(y.pow(k - i + 1).scale(&c)));
    }
    let constraint = x.mul(&y).sub(&x).sub(&y);
    let parametrization = Parametrization {
        var: 1,
        value: RationalFunction::new(x.clone(), x.sub(&SparsePoly::one(2))),
    };
    Identity::new_conditional(
        Family::Gkp,
        vec![k as i64, m as i64],
        2,
        lhs,
        rhs,
        constraint,
        parametrization,
    )
}

/// Partial-fraction base identity:
///
/// ```text
/// 1/(x_1 ... x_n) = sum_t 1/(x_1 ... <x_t skipped> ... x_n (x_1+...+x_n))
/// ```
pub fn build_base_n(n: usize) -> Identity {
    assert!(n >= 2, "base identity needs at least two variables");
    let s = sum_of_vars(n);
    let all = ExponentVector::new(vec![1; n]);
    let lhs = vec![RationalFunction::new(
        SparsePoly::one(n),
        SparsePoly::monomial(all, BigRational::one()),
    )];
    let rhs = (0..n)
        .map(|t| {
            let den = s.mul_monomial(&skip_monomial(n, t, &vec![0; n]), &BigRational::one());
            RationalFunction::new(SparsePoly::one(n), den)
        })
        .collect();
    Identity::new(Family::BaseN, vec![n as i64], n, lhs, rhs)
}

/// Inverse-power identity:
///
/// ```text
/// 1/prod_t x_t^{m_t+1}
///   = sum_t sum_{0<=i_j<=m_j, j!=t} multinomial(i_1,..,m_t,..,i_n)
///       / (prod_{j!=t} x_j^{m_j-i_j+1} * (x_1+...+x_n)^{E+1})
/// ```
///
/// with `E = m_t + sum_{j!=t} i_j`.
pub fn build_inverse_n(m: &[u32]) -> Identity {
    let n = m.len();
    assert!(
        n >= 2,
        "inverse-power identity needs at least two variables"
    );
    let s = sum_of_vars(n);
    let total: u32 = m.iter().sum();
    let s_pows = power_table(&s, total + 1);
    let mut exps = vec![0u32; n];
    for (j, &mj) in m.iter().enumerate() {
        exps[j] = mj + 1;
    }
    let lhs = vec![RationalFunction::new(
        SparsePoly::one(n),
        SparsePoly::monomial(ExponentVector::new(exps), BigRational::one()),
    )];
    let mut rhs = Vec::new();
    for t in 0..n {
        for_each_skip_index(m, t, &mut |idx| {
            let mut orders: Vec<u64> = idx.iter().map(|&i| i as u64).collect();
            orders[t] = m[t] as u64;
            let coeff = multinomial(&orders);
            let big_e: u32 = orders.iter().sum::<u64>() as u32;
            let extra: Vec<u32> = m.iter().zip(idx).map(|(&mj, &ij)| mj - ij).collect();
            let den = s_pows[big_e as usize + 1]
                .mul_monomial(&skip_monomial(n, t, &extra), &BigRational::one());
            rhs.push(RationalFunction::new(SparsePoly::constant(n, coeff), den));
        });
    }
    let params = m.iter().map(|&v| v as i64).collect();
    Identity::new(Family::InverseN, params, n, lhs, rhs)
}

/// Main homogeneous identity:
///
/// ```text
/// sum_t sum_{0<=i_j<=m_j, j!=t} multinomial(i_1,..,m_t,..,i_n)
///   * prod_{j!=t} x_j^{m_j-i_j+1} * (S_{n,n}/S_{n-1,n})^{E+1}
///   = prod_t x_t^{m_t+1}
/// ```
///
/// with `S_{n,n} = x_1...x_n` and `S_{n-1,n} = sum_t prod_{j!=t} x_j`.
pub fn build_n_powers(m: &[u32]) -> Identity {
    let n = m.len();
    assert!(n >= 2, "homogeneous identity needs at least two variables");
    let s_low = skip_products_sum(n);
    let total: u32 = m.iter().sum();
    let s_pows = power_table(&s_low, total + 1);
    let product_all = ExponentVector::new(vec![1; n]);
    let mut lhs = Vec::new();
    for t in 0..n {
        for_each_skip_index(m, t, &mut |idx| {
            let mut orders: Vec<u64> = idx.iter().map(|&i| i as u64).collect();
            orders[t] = m[t] as u64;
            let coeff = multinomial(&orders);
            let big_e: u32 = orders.iter().sum::<u64>() as u32;
            // numerator: skip-monomial * (x_1...x_n)^{E+1}
            let extra: Vec<u32> = m.iter().zip(idx).map(|(&mj, &ij)| mj - ij).collect();
            let mut mono = skip_monomial(n, t, &extra);
            for _ in 0..(big_e + 1) {
                mono = mono.mul(&product_all);
            }
            let num = SparsePoly::monomial(mono, coeff);
            lhs.push(RationalFunction::new(
                num,
                s_pows[big_e as usize + 1].clone(),
            ));
        });
    }
    let mut exps = vec![0u32; n];
    for (j, &mj) in m.iter().enumerate() {
        exps[j] = mj + 1;
    }
    let rhs = vec![RationalFunction::from_poly(SparsePoly::monomial(
        ExponentVector::new(exps),
        BigRational::one(),
    ))];
    let params = m.iter().map(|&v| v as i64).collect();
    Identity::new(Family::NPowers, params, n, lhs, rhs)
}

/// Three-variable conditional form: if `xyz = xy + yz + zx` then
/// `x^{m_1+1} y^{m_2+1} z^{m_3+1}` equals the three double sums with
/// multinomial coefficients and two-variable monomials.
pub fn build_knuth3(m1: u32, m2: u32, m3: u32) -> Identity {
    let m = [m1, m2, m3];
    let x = var(3, 0);
    let y = var(3, 1);
    let z = var(3, 2);
    let lhs = vec![RationalFunction::from_poly(
        x.pow(m1 + 1).mul(&y.pow(m2 + 1)).mul(&z.pow(m3 + 1)),
    )];
    let mut rhs = Vec::new();
    for t in 0..3 {
        for_each_skip_index(&m, t, &mut |idx| {
            let mut orders: Vec<u64> = idx.iter().map(|&i| i as u64).collect();
            orders[t] = m[t] as u64;
            let coeff = multinomial(&orders);
            let extra: Vec<u32> = m.iter().zip(idx).map(|(&mj, &ij)| mj - ij).collect();
            rhs.push(RationalFunction::from_poly(SparsePoly::monomial(
                skip_monomial(3, t, &extra),
                coeff,
            )));
        });
    }
    // constraint xyz - xy - yz - zx, solved for z = xy / (xy - x - y)
    let xy = x.mul(&y);
    let constraint = xy.mul(&z).sub(&xy).sub(&y.mul(&z)).sub(&z.mul(&x));
    let parametrization = Parametrization {
        var: 2,
        value: RationalFunction::new(xy.clone(), xy.sub(&x).sub(&y)),
    };
    Identity::new_conditional(
        Family::Knuth3,
        vec![m1 as i64, m2 as i64, m3 as i64],
        3,
        lhs,
        rhs,
        constraint,
        parametrization,
    )
}

/// Three-variable analogue of Chaundy-Bullard: if `xy + yz + zx = 1` then
///
/// ```text
/// (yz)^{m_1+1} sum_{j<=m_2,k<=m_3} mult * y^k z^j x^{j+k}
///   + (zx)^{m_2+1} sum_{k<=m_3,i<=m_1} mult * z^i x^k y^{i+k}
///   + (xy)^{m_3+1} sum_{i<=m_1,j<=m_2} mult * x^j y^i z^{i+j} = 1
/// ```
pub fn build_s2_one(m1: u32, m2: u32, m3: u32) -> Identity {
    let m = [m1, m2, m3];
    let x = var(3, 0);
    let y = var(3, 1);
    let z = var(3, 2);
    let mut lhs = Vec::new();
    for t in 0..3usize {
        // (product of the other two variables)^{m_t+1}
        let prefactor = skip_monomial(3, t, &[m[t], m[t], m[t]]);
        for_each_skip_index(&m, t, &mut |idx| {
            let mut orders: Vec<u64> = idx.iter().map(|&i| i as u64).collect();
            orders[t] = m[t] as u64;
            let coeff = multinomial(&orders);
            // cross pattern: x_t gets the sum of the others' indices, and
            // each other variable gets the opposite one's index
            let others: Vec<usize> = (0..3).filter(|&j| j != t).collect();
            let (a, b) = (others[0], others[1]);
            let mut exps = vec![0u32; 3];
            exps[t] = idx[a] + idx[b];
            exps[a] = idx[b];
            exps[b] = idx[a];
            let mono = ExponentVector::new(exps).mul(&prefactor);
            lhs.push(RationalFunction::from_poly(SparsePoly::monomial(
                mono, coeff,
            )));
        });
    }
    let rhs = vec![RationalFunction::one(3)];
    // constraint xy + yz + zx - 1, solved for z = (1 - xy) / (x + y)
    let constraint = x
        .mul(&y)
        .add(&y.mul(&z))
        .add(&z.mul(&x))
        .sub(&SparsePoly::one(3));
    let parametrization = Parametrization {
        var: 2,
        value: RationalFunction::new(SparsePoly::one(3).sub(&x.mul(&y)), x.add(&y)),
    };
    Identity::new_conditional(
        Family::S2One,
        vec![m1 as i64, m2 as i64, m3 as i64],
        3,
        lhs,
        rhs,
        constraint,
        parametrization,
    )
}

/// Polynomial identity in u-coordinates:
///
/// ```text
/// (u_1+...+u_n)^{M+1}
///   = sum_t u_t^{m_t+1} sum_{0<=i_j<=m_j, j!=t} multinomial(i_1,..,m_t,..,i_n)
///       * prod_{j!=t} u_j^{i_j} * (u_1+...+u_n)^{sum_{j!=t}(m_j-i_j)}
/// ```
///
/// with `M = m_1 + ... + m_n`.
pub fn build_transformed(m: &[u32]) -> Identity {
    let n = m.len();
    assert!(n >= 2, "transformed identity needs at least two variables");
    let u_sum = sum_of_vars(n);
    let total: u32 = m.iter().sum();
    let u_pows = power_table(&u_sum, total + 1);
    let mut lhs = Vec::new();
    for t in 0..n {
        for_each_skip_index(m, t, &mut |idx| {
            let mut orders: Vec<u64> = idx.iter().map(|&i| i as u64).collect();
            orders[t] = m[t] as u64;
            let coeff = multinomial(&orders);
            let mut exps = idx.to_vec();
            exps[t] = m[t] + 1;
            let drop: u32 = m
                .iter()
                .zip(idx)
                .enumerate()
                .filter(|(j, _)| *j != t)
                .map(|(_, (&mj, &ij))| mj - ij)
                .sum();
            let term = u_pows[drop as usize].mul_monomial(&ExponentVector::new(exps), &coeff);
            lhs.push(RationalFunction::from_poly(term));
        });
    }
    let rhs = vec![RationalFunction::from_poly(
        u_pows[total as usize + 1].clone(),
    )];
    let params = m.iter().map(|&v| v as i64).collect();
    Identity::new(Family::Transformed, params, n, lhs, rhs)
}

/// Three-parameter generalization, for `m - r + k - l = 0`:
///
/// ```text
/// (1-x)^{r+1} sum_{i<=k} C(m+i,r) x^{i+m-r}
///   + x^{l+1} sum_{i<=m} C(k+i,l) (1-x)^{i+k-l}
/// ```
///
/// equals `1` minus a correction sum that depends on the sign of `m - r`.
///
/// Sums run over the full stated ranges; the zero-binomial convention
/// silently drops the summands that would otherwise carry a negative
/// power, so every surviving term is polynomial. The `k - l > 0` case
/// follows from the `m - r > 0` case under `x -> 1 - x` together with
/// swapping `(m, r)` and `(k, l)`.
pub fn build_three_param(m: u32, r: u32, k: u32, l: u32) -> Result<Identity, BuildError> {
    if m as i64 - r as i64 + k as i64 - l as i64 != 0 {
        return Err(BuildError::ParameterConstraint);
    }
    let x = var(1, 0);
    let omx = one_minus_x();
    let mut lhs = Vec::new();
    let omx_r1 = omx.pow(r + 1);
    for i in 0..=k {
        let c = binomial((m + i) as u64, r as i64);
        if c == BigRational::from_integer(0.into()) {
            continue;
        }
        let power = x_power(i as i64 + m as i64 - r as i64);
        lhs.push(power.mul(&RationalFunction::from_poly(omx_r1.scale(&c))));
    }
    let x_l1 = x.pow(l + 1);
    for i in 0..=m {
        let c = binomial((k + i) as u64, l as i64);
        if c == BigRational::from_integer(0.into()) {
            continue;
        }
        let e = i as i64 + k as i64 - l as i64;
        let omx_part = if e >= 0 {
            RationalFunction::from_poly(omx.pow(e as u32))
        } else {
            RationalFunction::new(SparsePoly::one(1), omx.pow((-e) as u32))
        };
        lhs.push(omx_part.mul(&RationalFunction::from_poly(x_l1.scale(&c))));
    }
    let mut rhs = vec![RationalFunction::one(1)];
    if m > r {
        for i in 0..(m - r) {
            let c = binomial(m as u64, i as i64);
            rhs.push(RationalFunction::from_poly(
                x.pow(i).mul(&omx.pow(m - i)).scale(&-c),
            ));
        }
    } else if k > l {
        for i in 0..(k - l) {
            let c = binomial(k as u64, i as i64);
            rhs.push(RationalFunction::from_poly(
                omx.pow(i).mul(&x.pow(k - i)).scale(&-c),
            ));
        }
    }
    Ok(Identity::new(
        Family::ThreeParam,
        vec![m as i64, r as i64, k as i64, l as i64],
        1,
        lhs,
        rhs,
    ))
}

/// Auxiliary binomial identity, for `m > r >= 0`:
///
/// ```text
/// sum_{j<=m-r-1} C(j+r,r) x^j = sum_{i<=m-r-1} C(m,i) x^i (1-x)^{m-r-i-1}
/// ```
pub fn build_ks27(m: u32, r: u32) -> Result<Identity, BuildError> {
    if m <= r {
        return Err(BuildError::EmptyIdentity);
    }
    let x = var(1, 0);
    let omx = one_minus_x();
    let mut lhs = Vec::new();
    let mut rhs = Vec::new();
    for j in 0..(m - r) {
        let c = binomial((j + r) as u64, r as i64);
        lhs.push(RationalFunction::from_poly(x.pow(j).scale(&c)));
    }
    for i in 0..(m - r) {
        let c = binomial(m as u64, i as i64);
        rhs.push(RationalFunction::from_poly(
            x.pow(i).mul(&omx.pow(m - r - i - 1)).scale(&c),
        ));
    }
    Ok(Identity::new(
        Family::Ks27,
        vec![m as i64, r as i64],
        1,
        lhs,
        rhs,
    ))
}

/// Dispatches a family name and parameter list to the right builder,
/// validating the parameter shape.
pub fn build(family: Family, params: &[i64]) -> Result<Identity, BuildError> {
    fn as_u32(params: &[i64]) -> Result<Vec<u32>, BuildError> {
        params
            .iter()
            .map(|&p| {
                u32::try_from(p).map_err(|_| {
                    BuildError::InvalidParams(format!("parameter {p} must be non-negative"))
                })
            })
            .collect()
    }
    fn expect_len(params: &[i64], n: usize, family: Family) -> Result<(), BuildError> {
        if params.len() != n {
            return Err(BuildError::InvalidParams(format!(
                "{} takes {} parameter(s), got {}",
                family,
                n,
                params.len()
            )));
        }
        Ok(())
    }
    match family {
        Family::Cb => {
            expect_len(params, 2, family)?;
            let p = as_u32(params)?;
            Ok(build_cb(p[0], p[1]))
        }
        Family::Homogeneous => {
            expect_len(params, 2, family)?;
            let p = as_u32(params)?;
            Ok(build_homogeneous(p[0], p[1]))
        }
        Family::Gkp => {
            expect_len(params, 2, family)?;
            let p = as_u32(params)?;
            Ok(build_gkp(p[0], p[1]))
        }
        Family::BaseN => {
            expect_len(params, 1, family)?;
            if params[0] < 2 {
                return Err(BuildError::InvalidParams(
                    "base_n takes an arity n >= 2".into(),
                ));
            }
            Ok(build_base_n(params[0] as usize))
        }
        Family::InverseN | Family::NPowers | Family::Transformed => {
            if params.len() < 2 {
                return Err(BuildError::InvalidParams(format!(
                    "{family} takes at least two orders m_1 .. m_n"
                )));
            }
            let p = as_u32(params)?;
            Ok(match family {
                Family::InverseN => build_inverse_n(&p),
                Family::NPowers => build_n_powers(&p),
                _ => build_transformed(&p),
            })
        }
        Family::Knuth3 => {
            expect_len(params, 3, family)?;
            let p = as_u32(params)?;
            Ok(build_knuth3(p[0], p[1], p[2]))
        }
        Family::S2One => {
            expect_len(params, 3, family)?;
            let p = as_u32(params)?;
            Ok(build_s2_one(p[0], p[1], p[2]))
        }
        Family::ThreeParam => {
            expect_len(params, 4, family)?;
            let p = as_u32(params)?;
            build_three_param(p[0], p[1], p[2], p[3])
        }
        Family::Ks27 => {
            expect_len(params, 2, family)?;
            let p = as_u32(params)?;
            build_ks27(p[0], p[1])
        }
    }
}
