//! Implementations of the `verify`, `expand`, `derive` and `grid`
//! subcommands.

use std::time::Instant;

use cbid_core::{
    build, build_inverse_n, build_n_powers, derive_inverse_identity, fuzz_verify, invert_variables,
    term_multiset_eq, verify_exact, Family, FuzzConfig, Identity, VerificationReport,
};
use clap::ValueEnum;

use crate::json::{IdentityDoc, ReportDoc};
use crate::text::{poly_to_latex, poly_to_string, term_to_latex, term_to_string, variable_stem};
use crate::Outcome;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Exact,
    Fuzz,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GridMode {
    Exact,
    Fuzz,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Latex,
    Json,
}

/// Fuzz settings from flags and the environment; `--seed` wins over
/// `CBID_SEED`, which wins over the built-in default.
pub fn resolve_config(
    seed: Option<u64>,
    trials: Option<u32>,
    prime: Option<u64>,
) -> Result<FuzzConfig, String> {
    let mut cfg = FuzzConfig::default();
    if let Ok(s) = std::env::var("CBID_SEED") {
        cfg.seed = s
            .trim()
            .parse()
            .map_err(|_| format!("CBID_SEED must be a 64-bit unsigned integer, got {s:?}"))?;
    }
    if let Some(s) = seed {
        cfg.seed = s;
    }
    if let Some(t) = trials {
        if t == 0 {
            return Err("--trials must be at least 1".to_string());
        }
        cfg.trials = t;
    }
    if let Some(p) = prime {
        cfg.prime = p;
    }
    Ok(cfg)
}

fn parse_family(name: &str) -> Result<Family, String> {
    Family::parse(name).ok_or_else(|| {
        let known: Vec<&str> = Family::ALL.iter().map(|f| f.name()).collect();
        format!(
            "unknown family {name:?}; known families: {}",
            known.join(", ")
        )
    })
}

fn build_identity(name: &str, params: &[i64]) -> Result<Identity, String> {
    let family = parse_family(name)?;
    build(family, params).map_err(|e| e.to_string())
}

fn report_line(report: &VerificationReport) -> String {
    let params: Vec<String> = report.params.iter().map(|p| p.to_string()).collect();
    let mut line = format!(
        "{}({}) {}: {}",
        report.family,
        params.join(", "),
        report.method,
        report.verdict
    );
    if let Some(trials) = report.trials {
        line.push_str(&format!(", {trials} trials"));
    }
    if let Some(seed) = report.seed {
        line.push_str(&format!(", seed {seed}"));
    }
    line.push_str(&format!(" ({:.3} ms)", report.elapsed.as_secs_f64() * 1e3));
    if let Some(residual) = &report.residual {
        line.push_str(&format!(
            "\n  residual: {}",
            term_to_string(residual, variable_stem(report.family))
        ));
    }
    line
}

pub fn cmd_verify(
    family: &str,
    params: &[i64],
    mode: Mode,
    json: bool,
    cfg: &FuzzConfig,
) -> Outcome {
    let id = match build_identity(family, params) {
        Ok(id) => id,
        Err(e) => {
            eprintln!("error: {e}");
            return Outcome::UsageError;
        }
    };
    let mut reports: Vec<VerificationReport> = Vec::new();
    if matches!(mode, Mode::Exact | Mode::Both) {
        match verify_exact(&id) {
            Ok(r) => reports.push(r),
            Err(e) => {
                eprintln!("error: {e}");
                return Outcome::UsageError;
            }
        }
    }
    if matches!(mode, Mode::Fuzz | Mode::Both) {
        match fuzz_verify(&id, cfg) {
            Ok(r) => reports.push(r),
            Err(e) => {
                eprintln!("error: {e}");
                return Outcome::UsageError;
            }
        }
    }
    if json {
        let docs: Vec<ReportDoc> = reports.iter().map(ReportDoc::from_report).collect();
        let body = if docs.len() == 1 {
            serde_json::to_string_pretty(&docs[0])
        } else {
            serde_json::to_string_pretty(&docs)
        };
        println!("{}", body.expect("report serializes"));
    } else {
        println!("{}", identity_summary(&id));
        for r in &reports {
            println!("{}", report_line(r));
        }
    }
    if reports.iter().all(VerificationReport::holds) {
        Outcome::AllHold
    } else {
        Outcome::Failed
    }
}

/// One-line shape summary; sides short enough to read are printed inline.
fn identity_summary(id: &Identity) -> String {
    let stem = variable_stem(id.family());
    let side = |terms: &[cbid_core::RationalFunction]| -> String {
        let rendered: Vec<String> = terms.iter().map(|t| plain_term(t, stem)).collect();
        let joined = rendered.join(" + ");
        if joined.len() <= 48 {
            joined
        } else {
            format!("<{} terms>", terms.len())
        }
    };
    let mut line = format!("identity: {} = {}", side(id.lhs()), side(id.rhs()));
    if let Some(c) = id.constraint() {
        line.push_str(&format!("  [on {} = 0]", poly_to_string(c, stem)));
    }
    line
}

pub fn cmd_expand(family: &str, params: &[i64], format: Format) -> Outcome {
    let id = match build_identity(family, params) {
        Ok(id) => id,
        Err(e) => {
            eprintln!("error: {e}");
            return Outcome::UsageError;
        }
    };
    match format {
        Format::Plain => {
            if let Some(c) = id.constraint() {
                println!(
                    "condition: {} = 0",
                    poly_to_string(c, variable_stem(id.family()))
                );
            }
            println!("{}", equation_plain(&id));
        }
        Format::Latex => {
            println!("{}", equation_latex(&id));
        }
        Format::Json => {
            let doc = IdentityDoc::from_identity(&id);
            println!(
                "{}",
                serde_json::to_string_pretty(&doc).expect("identity serializes")
            );
        }
    }
    Outcome::AllHold
}

fn plain_term(t: &cbid_core::RationalFunction, stem: &str) -> String {
    let s = term_to_string(t, stem);
    if t.den().is_one() && t.num().num_terms() > 1 {
        format!("({s})")
    } else {
        s
    }
}

fn equation_plain(id: &Identity) -> String {
    let stem = variable_stem(id.family());
    let lhs: Vec<String> = id.lhs().iter().map(|t| plain_term(t, stem)).collect();
    let rhs: Vec<String> = id.rhs().iter().map(|t| plain_term(t, stem)).collect();
    format!("{} = {}", lhs.join(" + "), rhs.join(" + "))
}

fn equation_latex(id: &Identity) -> String {
    let family = id.family();
    let wrap = |t: &cbid_core::RationalFunction| {
        let s = term_to_latex(t, family);
        if t.den().is_one() && t.num().num_terms() > 1 {
            format!("\\left({s}\\right)")
        } else {
            s
        }
    };
    let lhs: Vec<String> = id.lhs().iter().map(&wrap).collect();
    let rhs: Vec<String> = id.rhs().iter().map(&wrap).collect();
    let mut out = format!("{} = {}", lhs.join(" + "), rhs.join(" + "));
    if let Some(c) = id.constraint() {
        out.push_str(&format!(
            " \\quad \\text{{if }} {} = 0",
            poly_to_latex(c, family)
        ));
    }
    out
}

pub fn cmd_derive(orders: &[i64]) -> Outcome {
    if orders.len() < 2 {
        eprintln!("error: derive takes at least two orders m_1 m_2 ...");
        return Outcome::UsageError;
    }
    let mut m = Vec::with_capacity(orders.len());
    for &o in orders {
        match u32::try_from(o) {
            Ok(v) => m.push(v),
            Err(_) => {
                eprintln!("error: orders must be non-negative, got {o}");
                return Outcome::UsageError;
            }
        }
    }
    let derived = derive_inverse_identity(&m);
    let closed = build_inverse_n(&m);
    let zero_ok = derived.report.holds();
    let inverse_ok = term_multiset_eq(derived.identity.lhs(), closed.lhs())
        && term_multiset_eq(derived.identity.rhs(), closed.rhs());
    let inverted = invert_variables(&derived.identity);
    let powers = build_n_powers(&m);
    let powers_ok = term_multiset_eq(inverted.lhs(), powers.lhs())
        && term_multiset_eq(inverted.rhs(), powers.rhs());

    println!("derive orders {m:?}");
    println!("derived identity verifies exactly: {}", yes_no(zero_ok));
    println!("matches inverse_n: {}", yes_no(inverse_ok));
    println!("matches n_powers after inversion: {}", yes_no(powers_ok));
    if zero_ok && inverse_ok && powers_ok {
        Outcome::AllHold
    } else {
        if let Some(offending) = &derived.report.residual {
            println!(
                "first offending term: {}",
                term_to_string(offending, variable_stem(Family::InverseN))
            );
        }
        Outcome::Failed
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Parameter tuples of a family with every entry bounded by `bound`
/// (variable-arity families run at n = 2 and n = 3).
pub fn grid_tuples(family: Family, bound: i64) -> Vec<Vec<i64>> {
    fn boxes(n: usize, bound: i64) -> Vec<Vec<i64>> {
        let mut out = vec![vec![]];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|v| {
                    (0..=bound).map(move |e| {
                        let mut w = v.clone();
                        w.push(e);
                        w
                    })
                })
                .collect();
        }
        out
    }
    match family {
        Family::Cb | Family::Homogeneous | Family::Gkp => boxes(2, bound),
        Family::BaseN => (2..=bound).map(|n| vec![n]).collect(),
        Family::Knuth3 | Family::S2One => boxes(3, bound),
        Family::InverseN | Family::NPowers | Family::Transformed => {
            let mut out = boxes(2, bound);
            out.extend(boxes(3, bound));
            out
        }
        Family::ThreeParam => boxes(4, bound)
            .into_iter()
            .filter(|t| t[0] - t[1] + t[2] - t[3] == 0)
            .collect(),
        Family::Ks27 => {
            let mut out = Vec::new();
            for m in 1..=bound {
                for r in 0..m {
                    out.push(vec![m, r]);
                }
            }
            out
        }
    }
}

pub fn cmd_grid(family: &str, bound: i64, mode: GridMode, cfg: &FuzzConfig) -> Outcome {
    let family = match parse_family(family) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("error: {e}");
            return Outcome::UsageError;
        }
    };
    if bound < 0 {
        eprintln!("error: bound must be non-negative");
        return Outcome::UsageError;
    }
    let start = Instant::now();
    let tuples = grid_tuples(family, bound);
    let mut pass = 0usize;
    let mut fail = 0usize;
    for tuple in &tuples {
        let id = match build(family, tuple) {
            Ok(id) => id,
            Err(e) => {
                eprintln!("error: {family}({tuple:?}): {e}");
                return Outcome::UsageError;
            }
        };
        let report = match mode {
            GridMode::Exact => verify_exact(&id).map_err(|e| e.to_string()),
            GridMode::Fuzz => fuzz_verify(&id, cfg).map_err(|e| e.to_string()),
        };
        match report {
            Ok(r) => {
                let params: Vec<String> = tuple.iter().map(|p| p.to_string()).collect();
                println!("{}({}) {}", family, params.join(", "), r.verdict);
                if r.holds() {
                    pass += 1;
                } else {
                    fail += 1;
                }
            }
            Err(e) => {
                eprintln!("error: {e}");
                return Outcome::UsageError;
            }
        }
    }
    println!(
        "{} identities, {pass} pass, {fail} fail ({:.3} s total)",
        tuples.len(),
        start.elapsed().as_secs_f64()
    );
    if fail == 0 {
        Outcome::AllHold
    } else {
        Outcome::Failed
    }
}
