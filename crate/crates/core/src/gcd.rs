//! Exact multivariate polynomial division and gcd.
//!
//! The gcd is the canonical associate: integer coefficients, content 1,
//! positive lexicographically-leading coefficient, monomial factors
//! included. Cheap tactics dispatch the structured calls this crate
//! actually makes (monomial content split, mutual exact division for
//! powers of a shared factor). The remaining work is routed by shape:
//!
//! * a sound modular projection first proves, variable by variable, that
//!   the gcd is free of a variable, so coprime inputs exit immediately;
//! * univariate and bivariate cores are computed over the 61-bit prime
//!   field (Euclid, then dense interpolation in the second variable) and
//!   certified by exact trial division;
//! * anything else, and any case the modular route fails to certify,
//!   falls back to the classical primitive pseudo-remainder recursion,
//!   which is exact everywhere.

use num_bigint::BigInt;
use num_traits::One;

use crate::modp::{PrimeField, DEFAULT_PRIME};
use crate::number::BigRational;
use crate::poly::{ExponentVector, SparsePoly};

/// Exact division `p / q` over the rationals. Returns `None` when `q` does
/// not divide `p`. Panics if `q` is zero.
pub fn divexact(p: &SparsePoly, q: &SparsePoly) -> Option<SparsePoly> {
    assert!(!q.is_zero(), "division by the zero polynomial");
    assert_eq!(p.arity(), q.arity(), "arity mismatch");
    if p.is_zero() {
        return Some(SparsePoly::zero(p.arity()));
    }
    if let Some(c) = q.constant_value() {
        return Some(p.scale(&c.recip()));
    }
    let (q_lead, q_lead_coeff) = q.leading().expect("nonzero");
    let q_lead = q_lead.clone();
    let q_lead_coeff = q_lead_coeff.clone();
    let mut rem = p.clone();
    let mut quot = SparsePoly::zero(p.arity());
    while !rem.is_zero() {
        let (r_lead, r_coeff) = rem.leading().expect("nonzero");
        if !q_lead.divides(r_lead) {
            return None;
        }
        let t_exp = r_lead.div(&q_lead);
        let t_coeff = r_coeff / &q_lead_coeff;
        let t = SparsePoly::monomial(t_exp, t_coeff);
        rem = rem.sub(&t.mul(q));
        quot = quot.add(&t);
    }
    Some(quot)
}

/// Canonical gcd over the rationals: primitive integer coefficients and a
/// positive leading coefficient. `gcd(0, q)` is the canonical associate of
/// `q`; `gcd(0, 0) = 0`.
pub fn gcd(a: &SparsePoly, b: &SparsePoly) -> SparsePoly {
    assert_eq!(a.arity(), b.arity(), "arity mismatch");
    if a.is_zero() {
        return b.primitive_part();
    }
    if b.is_zero() {
        return a.primitive_part();
    }
    let mono_a = a.monomial_content();
    let mono_b = b.monomial_content();
    let mono = mono_a.componentwise_min(&mono_b);
    let pa = strip_monomial(a, &mono_a).primitive_part();
    let pb = strip_monomial(b, &mono_b).primitive_part();
    let core = gcd_primitive(&pa, &pb);
    core.mul_monomial(&mono, &BigRational::one())
}

/// Canonical least common multiple; zero if either argument is zero.
pub fn lcm(a: &SparsePoly, b: &SparsePoly) -> SparsePoly {
    if a.is_zero() || b.is_zero() {
        return SparsePoly::zero(a.arity());
    }
    let g = gcd(a, b);
    let q = divexact(b, &g).expect("gcd divides its arguments");
    a.mul(&q).primitive_part()
}

/// Divides out a known monomial factor.
fn strip_monomial(p: &SparsePoly, mono: &ExponentVector) -> SparsePoly {
    if mono.is_constant() {
        return p.clone();
    }
    SparsePoly::from_terms(
        p.arity(),
        p.terms().map(|(ev, c)| (ev.div(mono), c.clone())),
    )
}

/// gcd of two nonzero, primitive, monomial-content-free polynomials.
fn gcd_primitive(a: &SparsePoly, b: &SparsePoly) -> SparsePoly {
    let arity = a.arity();
    if a.is_constant() || b.is_constant() {
        return SparsePoly::one(arity);
    }
    if a == b {
        return a.clone();
    }
    // two powers of a shared factor, or one argument dividing the other,
    // are the common cases; catch them before any heavy machinery
    let (lo, hi) = if a.total_degree() <= b.total_degree() {
        (a, b)
    } else {
        (b, a)
    };
    if divexact(hi, lo).is_some() {
        return lo.clone();
    }

    // the gcd can only involve variables appearing in both arguments, and
    // a constant-degree modular projection can prove a variable absent
    let mut live: Vec<usize> = Vec::new();
    for v in 0..arity {
        let da = a.degree_in(v);
        let db = b.degree_in(v);
        if da == 0 || db == 0 {
            continue;
        }
        if !projection_proves_var_free(a, b, v) {
            live.push(v);
        }
    }
    if live.is_empty() {
        return SparsePoly::one(arity);
    }

    // main variable: the live one with the smallest degrees
    let v = *live
        .iter()
        .min_by_key(|&&v| {
            let da = a.degree_in(v);
            let db = b.degree_in(v);
            (da.min(db), da.max(db))
        })
        .expect("nonempty");

    let cont_a = content_in_var(a, v);
    let cont_b = content_in_var(b, v);
    let prim_a = divexact(a, &cont_a).expect("content divides");
    let prim_b = divexact(b, &cont_b).expect("content divides");
    let cont_gcd = gcd(&cont_a, &cont_b);

    let occurring: Vec<usize> = (0..arity)
        .filter(|&w| prim_a.degree_in(w) > 0 || prim_b.degree_in(w) > 0)
        .collect();
    let core = if occurring == [v] {
        univariate_gcd_modular(&prim_a, &prim_b, v).unwrap_or_else(|| prs_gcd(&prim_a, &prim_b, v))
    } else if occurring.len() == 2 {
        let v_sub = occurring
            .into_iter()
            .find(|&w| w != v)
            .expect("two variables");
        bivariate_gcd_modular(&prim_a, &prim_b, v, v_sub)
            .unwrap_or_else(|| prs_gcd(&prim_a, &prim_b, v))
    } else {
        prs_gcd(&prim_a, &prim_b, v)
    };
    cont_gcd.mul(&core).primitive_part()
}

/// Classical primitive pseudo-remainder recursion in the main variable
/// `v`; exact for every input, used where the modular routes do not apply.
fn prs_gcd(prim_a: &SparsePoly, prim_b: &SparsePoly, v: usize) -> SparsePoly {
    let arity = prim_a.arity();
    let (mut big, mut small) = if prim_a.degree_in(v) >= prim_b.degree_in(v) {
        (prim_a.clone(), prim_b.clone())
    } else {
        (prim_b.clone(), prim_a.clone())
    };
    loop {
        let rem = pseudo_rem(&big, &small, v);
        if rem.is_zero() {
            break;
        }
        if rem.degree_in(v) == 0 {
            // the gcd is free of v; v-primitive inputs then share nothing
            small = SparsePoly::one(arity);
            break;
        }
        let reduced = primitive_in_var(&rem, v);
        big = small;
        small = reduced;
    }
    primitive_in_var(&small, v)
}

/// Content of `p` viewed as a univariate polynomial in `v`: the gcd of its
/// `v`-coefficients (polynomials in the remaining variables).
fn content_in_var(p: &SparsePoly, v: usize) -> SparsePoly {
    let mut acc = SparsePoly::zero(p.arity());
    for coeff in v_coefficients(p, v) {
        acc = gcd(&acc, &coeff);
        if acc.is_one() {
            break;
        }
    }
    acc
}

fn primitive_in_var(p: &SparsePoly, v: usize) -> SparsePoly {
    // strip monomial content first (safe here: the target gcd of
    // monomial-free inputs is monomial-free)
    let mono = p.monomial_content();
    let stripped = strip_monomial(p, &mono).primitive_part();
    let cont = content_in_var(&stripped, v);
    if cont.is_one() {
        return stripped;
    }
    divexact(&stripped, &cont)
        .expect("content divides")
        .primitive_part()
}

/// The nonzero coefficients of `p` as a polynomial in `v`, each returned
/// with the `v`-exponent zeroed out.
fn v_coefficients(p: &SparsePoly, v: usize) -> Vec<SparsePoly> {
    let mut by_degree: std::collections::BTreeMap<u32, Vec<(ExponentVector, BigRational)>> =
        std::collections::BTreeMap::new();
    for (ev, c) in p.terms() {
        let e = ev.get(v);
        let mut exps = ev.exponents().to_vec();
        exps[v] = 0;
        by_degree
            .entry(e)
            .or_default()
            .push((ExponentVector::new(exps), c.clone()));
    }
    by_degree
        .into_values()
        .map(|terms| SparsePoly::from_terms(p.arity(), terms))
        .collect()
}

/// Leading coefficient of `p` in the variable `v` (a polynomial with
/// `v`-degree zero).
fn leading_coeff_in_var(p: &SparsePoly, v: usize) -> SparsePoly {
    let d = p.degree_in(v);
    SparsePoly::from_terms(
        p.arity(),
        p.terms().filter(|(ev, _)| ev.get(v) == d).map(|(ev, c)| {
            let mut exps = ev.exponents().to_vec();
            exps[v] = 0;
            (ExponentVector::new(exps), c.clone())
        }),
    )
}

/// Pseudo-remainder of `a` by `b` in the variable `v`. Intermediate
/// results are rescaled by their rational content, which only changes the
/// outcome by a `v`-free unit and is harmless for gcd use.
fn pseudo_rem(a: &SparsePoly, b: &SparsePoly, v: usize) -> SparsePoly {
    let db = b.degree_in(v);
    let lead_b = leading_coeff_in_var(b, v);
    let mut rem = a.clone();
    while !rem.is_zero() {
        let dr = rem.degree_in(v);
        if dr < db {
            break;
        }
        let lead_r = leading_coeff_in_var(&rem, v);
        let shift = SparsePoly::monomial(ExponentVector::unit(a.arity(), v), BigRational::one())
            .pow(dr - db);
        rem = rem.mul(&lead_b).sub(&b.mul(&lead_r).mul(&shift));
        debug_assert!(rem.is_zero() || rem.degree_in(v) < dr);
        if rem.num_terms() > 16 {
            rem = rem.primitive_part();
        }
    }
    rem
}

// ---------------------------------------------------------------------
// modular machinery: sound projections and interpolation cores
// ---------------------------------------------------------------------

/// Fixed seed for projection points; gcd results stay deterministic.
const PROJECTION_SEED: u64 = 0x9e37_79b9_7f4a_7c15;

struct SplitMix64(u64);

impl SplitMix64 {
    fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

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

/// Reduces an integer-coefficient polynomial's coefficient into the field.
fn reduce_coeff(field: &PrimeField, c: &BigRational) -> u64 {
    debug_assert!(c.denom().is_one(), "modular cores take integer polynomials");
    field.reduce_bigint(c.numer())
}

/// Dense univariate polynomial over the field, index = degree.
type FpUni = Vec<u64>;

fn uni_trim(p: &mut FpUni) {
    while p.last() == Some(&0) {
        p.pop();
    }
}

fn uni_deg(p: &FpUni) -> Option<usize> {
    if p.is_empty() {
        None
    } else {
        Some(p.len() - 1)
    }
}

fn uni_eval(field: &PrimeField, p: &FpUni, t: u64) -> u64 {
    let mut acc = 0u64;
    for &c in p.iter().rev() {
        acc = field.add(field.mul(acc, t), c);
    }
    acc
}

fn uni_scale(field: &PrimeField, p: &FpUni, s: u64) -> FpUni {
    p.iter().map(|&c| field.mul(c, s)).collect()
}

fn uni_monic(field: &PrimeField, p: &FpUni) -> FpUni {
    match p.last() {
        None => Vec::new(),
        Some(&lc) => uni_scale(
            field,
            p,
            field.inv(lc).expect("nonzero leading coefficient"),
        ),
    }
}

/// Remainder of `a` by nonzero `b` over the field.
fn uni_rem(field: &PrimeField, a: &FpUni, b: &FpUni) -> FpUni {
    let db = uni_deg(b).expect("nonzero divisor");
    let lc_inv = field.inv(b[db]).expect("nonzero leading coefficient");
    let mut r = a.clone();
    uni_trim(&mut r);
    while let Some(dr) = uni_deg(&r) {
        if dr < db {
            break;
        }
        let q = field.mul(r[dr], lc_inv);
        for (i, &bc) in b.iter().enumerate().take(db + 1) {
            let idx = dr - db + i;
            r[idx] = field.sub(r[idx], field.mul(q, bc));
        }
        uni_trim(&mut r);
    }
    r
}

/// Monic gcd over the field.
fn uni_gcd(field: &PrimeField, a: &FpUni, b: &FpUni) -> FpUni {
    let mut a = a.clone();
    let mut b = b.clone();
    uni_trim(&mut a);
    uni_trim(&mut b);
    while !b.is_empty() {
        let r = uni_rem(field, &a, &b);
        a = b;
        b = r;
    }
    uni_monic(field, &a)
}

/// Newton interpolation over the field at pairwise-distinct nodes.
fn uni_interpolate(field: &PrimeField, nodes: &[u64], values: &[u64]) -> FpUni {
    debug_assert_eq!(nodes.len(), values.len());
    // divided differences
    let n = nodes.len();
    let mut coeffs = values.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            let dx = field.sub(nodes[i], nodes[i - level]);
            let num = field.sub(coeffs[i], coeffs[i - 1]);
            coeffs[i] = field.mul(num, field.inv(dx).expect("distinct nodes"));
        }
    }
    // expand the Newton form into monomial coefficients
    let mut poly: FpUni = Vec::new();
    for i in (0..n).rev() {
        // poly = poly * (x - nodes[i]) + coeffs[i]
        let mut next: FpUni = vec![0; poly.len() + 1];
        for (d, &c) in poly.iter().enumerate() {
            next[d + 1] = field.add(next[d + 1], c);
            next[d] = field.sub(next[d], field.mul(c, nodes[i]));
        }
        if next.is_empty() {
            next.push(0);
        }
        next[0] = field.add(next[0], coeffs[i]);
        poly = next;
        uni_trim(&mut poly);
    }
    poly
}

/// Projects `p` to a univariate polynomial in `v` by substituting the
/// given field values for every other variable.
fn project_to_uni(field: &PrimeField, p: &SparsePoly, v: usize, point: &[u64]) -> FpUni {
    let mut out: FpUni = vec![0; p.degree_in(v) as usize + 1];
    let max = p.max_exponents();
    let tables: Vec<Vec<u64>> = (0..p.arity())
        .map(|w| {
            if w == v {
                return Vec::new();
            }
            let d = max.get(w) as usize;
            let mut t = Vec::with_capacity(d + 1);
            t.push(1u64);
            for i in 0..d {
                t.push(field.mul(t[i], point[w]));
            }
            t
        })
        .collect();
    for (ev, c) in p.terms() {
        let mut val = reduce_coeff(field, c);
        for (w, &e) in ev.exponents().iter().enumerate() {
            if w != v && e > 0 {
                val = field.mul(val, tables[w][e as usize]);
            }
        }
        let d = ev.get(v) as usize;
        out[d] = field.add(out[d], val);
    }
    uni_trim(&mut out);
    out
}

/// Soundly proves `gcd(a, b)` has degree 0 in `v` via a univariate
/// projection: when the projection preserves `a`'s leading `v`-coefficient
/// and the projected gcd is constant, the true gcd is `v`-free. A `false`
/// answer is merely inconclusive.
fn projection_proves_var_free(a: &SparsePoly, b: &SparsePoly, v: usize) -> bool {
    let field = PrimeField::new(DEFAULT_PRIME);
    let mut rng = SplitMix64(PROJECTION_SEED ^ (v as u64));
    let da = a.degree_in(v) as usize;
    for _ in 0..4 {
        let point: Vec<u64> = (0..a.arity())
            .map(|_| rng.next_below(DEFAULT_PRIME))
            .collect();
        let pa = project_to_uni(&field, a, v, &point);
        if uni_deg(&pa) != Some(da) {
            // the projection lost the leading coefficient; try another point
            continue;
        }
        let pb = project_to_uni(&field, b, v, &point);
        if pb.is_empty() {
            continue;
        }
        let g = uni_gcd(&field, &pa, &pb);
        return uni_deg(&g) == Some(0);
    }
    false
}

/// Symmetric lift from `[0, p)` to `(-p/2, p/2]` as a big integer.
fn symmetric_lift(field: &PrimeField, c: u64) -> BigInt {
    let p = field.modulus();
    if c > p / 2 {
        BigInt::from(c) - BigInt::from(p)
    } else {
        BigInt::from(c)
    }
}

/// Univariate-in-`v` gcd of integer polynomials by one modular image plus
/// an exact trial-division certificate. `None` means fall back.
fn univariate_gcd_modular(a: &SparsePoly, b: &SparsePoly, v: usize) -> Option<SparsePoly> {
    let field = PrimeField::new(DEFAULT_PRIME);
    let arity = a.arity();
    let zeros = vec![0u64; arity];
    let pa = project_to_uni(&field, a, v, &zeros);
    let pb = project_to_uni(&field, b, v, &zeros);
    if uni_deg(&pa) != Some(a.degree_in(v) as usize)
        || uni_deg(&pb) != Some(b.degree_in(v) as usize)
    {
        return None; // p divides a leading coefficient
    }
    let g = uni_gcd(&field, &pa, &pb);
    if uni_deg(&g) == Some(0) {
        return Some(SparsePoly::one(arity));
    }
    // integer gcd of the leading coefficients scales the monic image back
    // to an integer polynomial
    let lc_gcd = integer_leading_gcd(a, b, v)?;
    let scaled = uni_scale(&field, &g, field.reduce_bigint(&lc_gcd));
    let candidate = lift_uni(&field, &scaled, v, arity).primitive_part();
    verify_divides(&candidate, a, b)
}

fn integer_leading_gcd(a: &SparsePoly, b: &SparsePoly, v: usize) -> Option<BigInt> {
    use num_integer::Integer;
    let la = leading_coeff_in_var(a, v).constant_value()?;
    let lb = leading_coeff_in_var(b, v).constant_value()?;
    Some(la.numer().gcd(lb.numer()))
}

fn lift_uni(field: &PrimeField, p: &FpUni, v: usize, arity: usize) -> SparsePoly {
    SparsePoly::from_terms(
        arity,
        p.iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(d, &c)| {
                let mut exps = vec![0u32; arity];
                exps[v] = d as u32;
                (
                    ExponentVector::new(exps),
                    BigRational::from_integer(symmetric_lift(field, c)),
                )
            }),
    )
}

fn verify_divides(candidate: &SparsePoly, a: &SparsePoly, b: &SparsePoly) -> Option<SparsePoly> {
    if candidate.is_zero() {
        return None;
    }
    if divexact(a, candidate).is_some() && divexact(b, candidate).is_some() {
        Some(candidate.clone())
    } else {
        None
    }
}

/// Dense interpolation gcd for polynomials supported on exactly two
/// variables, `v_main`-primitive, certified by trial division. `None`
/// means fall back to the pseudo-remainder route.
fn bivariate_gcd_modular(
    a: &SparsePoly,
    b: &SparsePoly,
    v_main: usize,
    v_sub: usize,
) -> Option<SparsePoly> {
    let field = PrimeField::new(DEFAULT_PRIME);
    let arity = a.arity();

    // integer-polynomial gcd of the leading coefficients (univariate in
    // v_sub) normalizes the interpolated images
    let lc_a = leading_coeff_in_var(a, v_main);
    let lc_b = leading_coeff_in_var(b, v_main);
    let gamma = gcd(&lc_a, &lc_b);
    let zeros = vec![0u64; arity];
    let gamma_uni = project_to_uni(&field, &gamma, v_sub, &zeros);
    let lc_a_uni = project_to_uni(&field, &lc_a, v_sub, &zeros);
    let lc_b_uni = project_to_uni(&field, &lc_b, v_sub, &zeros);
    if uni_deg(&gamma_uni) != Some(gamma.degree_in(v_sub) as usize) {
        return None;
    }

    let sub_bound =
        gamma.degree_in(v_sub) as usize + a.degree_in(v_sub).min(b.degree_in(v_sub)) as usize;
    let needed = sub_bound + 1;

    let mut nodes: Vec<u64> = Vec::with_capacity(needed);
    let mut images: Vec<FpUni> = Vec::with_capacity(needed);
    let mut dmin = usize::MAX;
    let mut t = 0u64;
    let budget = 8 * needed as u64 + 32;
    while nodes.len() < needed {
        if t >= budget {
            return None;
        }
        let node = t;
        t += 1;
        if uni_eval(&field, &lc_a_uni, node) == 0 || uni_eval(&field, &lc_b_uni, node) == 0 {
            continue;
        }
        let mut point = vec![0u64; arity];
        point[v_sub] = node;
        let at = project_to_uni(&field, a, v_main, &point);
        let bt = project_to_uni(&field, b, v_main, &point);
        let g = uni_gcd(&field, &at, &bt);
        let d = uni_deg(&g).expect("gcd of nonzero images is nonzero");
        if d == 0 {
            // v_main-primitive inputs with a trivial image share nothing
            return Some(SparsePoly::one(arity));
        }
        if d > dmin {
            continue; // unlucky evaluation point
        }
        if d < dmin {
            dmin = d;
            nodes.clear();
            images.clear();
        }
        let scale = uni_eval(&field, &gamma_uni, node);
        nodes.push(node);
        images.push(uni_scale(&field, &g, scale));
    }

    // interpolate each main-degree coefficient in v_sub
    let mut candidate = SparsePoly::zero(arity);
    for k in 0..=dmin {
        let values: Vec<u64> = images
            .iter()
            .map(|img| img.get(k).copied().unwrap_or(0))
            .collect();
        let coeff_poly = uni_interpolate(&field, &nodes, &values);
        for (d, &c) in coeff_poly.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mut exps = vec![0u32; arity];
            exps[v_main] = k as u32;
            exps[v_sub] = d as u32;
            candidate = candidate.add(&SparsePoly::monomial(
                ExponentVector::new(exps),
                BigRational::from_integer(symmetric_lift(&field, c)),
            ));
        }
    }
    if candidate.is_zero() {
        return None;
    }
    // remove the v_sub-only factor introduced by the gamma scaling
    let cont = content_in_var(&candidate, v_main);
    let candidate = divexact(&candidate, &cont)?.primitive_part();
    verify_divides(&candidate, a, b)
}
