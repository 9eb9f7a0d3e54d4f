//! Text rendering and parsing of polynomials and rational-function terms.
//!
//! The plain/JSON syntax is lossless and language-neutral: a polynomial is
//! a sum of terms `c*x1^a*x2^b`, variables are named `x1..xn` (`u1..un`
//! for the u-coordinate identities), coefficients are exact `num/den`
//! strings, and a rational function is `(num)/(den)`. The parser accepts
//! everything the renderer emits plus optional whitespace, `^1` exponents
//! and explicit unit coefficients.

use std::fmt::Write as _;

use cbid_core::{BigRational, ExponentVector, Family, RationalFunction, SparsePoly};
use num_traits::{One, Signed};

/// Variable name stem for a family: the transformed identity lives in
/// u-coordinates, everything else in x-coordinates.
pub fn variable_stem(family: Family) -> &'static str {
    match family {
        Family::Transformed => "u",
        _ => "x",
    }
}

fn coefficient_string(c: &BigRational) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Renders a polynomial with terms in descending lexicographic order.
pub fn poly_to_string(p: &SparsePoly, stem: &str) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (ev, c)) in p.terms().collect::<Vec<_>>().into_iter().rev().enumerate() {
        let negative = c.is_negative();
        let abs = c.abs();
        if i == 0 {
            if negative {
                out.push('-');
            }
        } else if negative {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        let mut factors: Vec<String> = Vec::new();
        if !abs.is_one() || ev.is_constant() {
            factors.push(coefficient_string(&abs));
        }
        for (v, &e) in ev.exponents().iter().enumerate() {
            match e {
                0 => {}
                1 => factors.push(format!("{stem}{}", v + 1)),
                _ => factors.push(format!("{stem}{}^{}", v + 1, e)),
            }
        }
        out.push_str(&factors.join("*"));
    }
    out
}

/// Renders a rational function: a bare polynomial when the denominator is
/// 1, otherwise `(num)/(den)`.
pub fn term_to_string(t: &RationalFunction, stem: &str) -> String {
    if t.den().is_one() {
        poly_to_string(t.num(), stem)
    } else {
        format!(
            "({})/({})",
            poly_to_string(t.num(), stem),
            poly_to_string(t.den(), stem)
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError(pub String);

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "parse error: {}", self.0)
    }
}

impl std::error::Error for ParseError {}

/// Parses a term string back into a rational function of the given arity.
pub fn parse_term(s: &str, arity: usize) -> Result<RationalFunction, ParseError> {
    let s = s.trim();
    // split "(num)/(den)" at the top level
    if let Some(rest) = s.strip_prefix('(') {
        if let Some((num_part, den_part)) = split_quotient(rest) {
            let num = parse_poly(num_part, arity)?;
            let den = parse_poly(den_part, arity)?;
            return RationalFunction::try_new(num, den).map_err(|e| ParseError(e.to_string()));
        }
    }
    Ok(RationalFunction::from_poly(parse_poly(s, arity)?))
}

/// For input following an initial '(': finds the matching ")/(" split and
/// returns the inner numerator and denominator strings.
fn split_quotient(rest: &str) -> Option<(&str, &str)> {
    let mut depth = 1usize;
    for (i, ch) in rest.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    let tail = rest[i + 1..].trim_start();
                    let tail = tail.strip_prefix('/')?.trim_start();
                    let tail = tail.strip_prefix('(')?;
                    let tail = tail.strip_suffix(')')?;
                    return Some((&rest[..i], tail));
                }
            }
            _ => {}
        }
    }
    None
}

/// Parses a polynomial in the `c*x1^a` syntax.
pub fn parse_poly(s: &str, arity: usize) -> Result<SparsePoly, ParseError> {
    let mut p = SparsePoly::zero(arity);
    let mut rest = s.trim();
    if rest.is_empty() {
        return Err(ParseError("empty polynomial".into()));
    }
    let mut sign = BigRational::one();
    if let Some(r) = rest.strip_prefix('-') {
        sign = -sign;
        rest = r.trim_start();
    } else if let Some(r) = rest.strip_prefix('+') {
        rest = r.trim_start();
    }
    loop {
        let (term_str, tail) = split_term(rest);
        let (ev, c) = parse_monomial(term_str.trim(), arity)?;
        p = p.add(&SparsePoly::monomial(ev, c * &sign));
        match tail {
            None => break,
            Some((next_sign, tail)) => {
                sign = if next_sign == '-' {
                    -BigRational::one()
                } else {
                    BigRational::one()
                };
                rest = tail.trim_start();
            }
        }
    }
    Ok(p)
}

/// Splits off the leading term at the first top-level ` + ` or ` - `.
fn split_term(s: &str) -> (&str, Option<(char, &str)>) {
    let bytes = s.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        if (bytes[i] == b'+' || bytes[i] == b'-') && i > 0 && bytes[i - 1].is_ascii_whitespace() {
            return (&s[..i], Some((bytes[i] as char, &s[i + 1..])));
        }
        i += 1;
    }
    (s, None)
}

/// Parses `c*x1^a*x2^b` (any factor order, coefficient optional).
fn parse_monomial(s: &str, arity: usize) -> Result<(ExponentVector, BigRational), ParseError> {
    let mut coeff = BigRational::one();
    let mut exps = vec![0u32; arity];
    for factor in s.split('*') {
        let f = factor.trim();
        if f.is_empty() {
            return Err(ParseError(format!("empty factor in {s:?}")));
        }
        if f.starts_with(|c: char| c.is_ascii_digit() || c == '-' || c == '+') {
            coeff *= parse_rational(f)?;
        } else {
            let (var, exp) = match f.split_once('^') {
                Some((v, e)) => (
                    v.trim(),
                    e.trim()
                        .parse::<u32>()
                        .map_err(|_| ParseError(format!("bad exponent in {f:?}")))?,
                ),
                None => (f, 1),
            };
            let idx = parse_variable(var, arity)?;
            exps[idx] += exp;
        }
    }
    Ok((ExponentVector::new(exps), coeff))
}

fn parse_variable(v: &str, arity: usize) -> Result<usize, ParseError> {
    let digits = v.trim_start_matches(|c: char| c.is_ascii_alphabetic());
    let stem_len = v.len() - digits.len();
    if stem_len == 0 {
        return Err(ParseError(format!("bad variable {v:?}")));
    }
    let idx: usize = digits
        .parse()
        .map_err(|_| ParseError(format!("bad variable {v:?}")))?;
    if idx == 0 || idx > arity {
        return Err(ParseError(format!(
            "variable {v:?} out of range for arity {arity}"
        )));
    }
    Ok(idx - 1)
}

fn parse_rational(s: &str) -> Result<BigRational, ParseError> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: num_bigint::BigInt = num
        .parse()
        .map_err(|_| ParseError(format!("bad number {s:?}")))?;
    let d: num_bigint::BigInt = den
        .parse()
        .map_err(|_| ParseError(format!("bad number {s:?}")))?;
    if d == num_bigint::BigInt::from(0) {
        return Err(ParseError("zero denominator".into()));
    }
    Ok(BigRational::new(n, d))
}

// ----------------------------------------------------------------------
// LaTeX rendering
// ----------------------------------------------------------------------

/// LaTeX variable names: x, y, z up to three variables, x_{i} beyond
/// (u_{i} for the u-coordinate identities).
fn latex_var(family: Family, v: usize, arity: usize) -> String {
    match family {
        Family::Transformed => format!("u_{{{}}}", v + 1),
        _ if arity <= 3 => ["x", "y", "z"][v].to_string(),
        _ => format!("x_{{{}}}", v + 1),
    }
}

fn latex_coefficient(c: &BigRational) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("\\frac{{{}}}{{{}}}", c.numer(), c.denom())
    }
}

pub fn poly_to_latex(p: &SparsePoly, family: Family) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let arity = p.arity();
    let mut out = String::new();
    for (i, (ev, c)) in p.terms().collect::<Vec<_>>().into_iter().rev().enumerate() {
        let negative = c.is_negative();
        let abs = c.abs();
        if i == 0 {
            if negative {
                out.push('-');
            }
        } else if negative {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        if !abs.is_one() || ev.is_constant() {
            out.push_str(&latex_coefficient(&abs));
            if !ev.is_constant() {
                out.push(' ');
            }
        }
        for (v, &e) in ev.exponents().iter().enumerate() {
            match e {
                0 => {}
                1 => {
                    let _ = write!(out, "{}", latex_var(family, v, arity));
                }
                _ => {
                    let _ = write!(out, "{}^{{{}}}", latex_var(family, v, arity), e);
                }
            }
        }
    }
    out
}

pub fn term_to_latex(t: &RationalFunction, family: Family) -> String {
    if t.den().is_one() {
        poly_to_latex(t.num(), family)
    } else {
        format!(
            "\\frac{{{}}}{{{}}}",
            poly_to_latex(t.num(), family),
            poly_to_latex(t.den(), family)
        )
    }
}
