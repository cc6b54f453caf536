//! Verification suites behind `sympmod verify`.

use std::io::Write;

use clap::ValueEnum;
use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;
use sympmod_core::lollipop;
use sympmod_core::modules::{self, DimMethod, ModuleDescriptor};
use sympmod_core::params::{self, half, Case};
use sympmod_core::verlinde::{self, TrigEvalConfig};
use sympmod_core::weights::{alcove_pairing, DominantWeight};
use sympmod_core::weyl;

use crate::{CmdResult, Format, EXIT_OK, EXIT_VERIFY};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Oracle,
    #[value(name = "closed-form", alias = "appendixb")]
    ClosedForm,
    Weyl,
    Jantzen,
    Alcove,
    Lemmas,
    Interpolate,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Oracle => "oracle",
            Suite::ClosedForm => "closed-form",
            Suite::Weyl => "weyl",
            Suite::Jantzen => "jantzen",
            Suite::Alcove => "alcove",
            Suite::Lemmas => "lemmas",
            Suite::Interpolate => "interpolate",
            Suite::All => "all",
        }
    }

    fn members(self) -> Vec<Suite> {
        match self {
            Suite::All => vec![
                Suite::Oracle,
                Suite::ClosedForm,
                Suite::Weyl,
                Suite::Jantzen,
                Suite::Alcove,
                Suite::Lemmas,
                Suite::Interpolate,
            ],
            s => vec![s],
        }
    }
}

/// One check at one parameter tuple.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub tuple: String,
    pub check: String,
    pub expected: String,
    pub got: String,
    pub pass: bool,
}

impl Check {
    fn new(tuple: impl ToString, check: &str, expected: impl ToString, got: impl ToString) -> Self {
        let (expected, got) = (expected.to_string(), got.to_string());
        let pass = expected == got;
        Check { tuple: tuple.to_string(), check: check.into(), expected, got, pass }
    }

    fn holds(tuple: impl ToString, check: &str, ok: bool, detail: impl ToString) -> Self {
        Check { tuple: tuple.to_string(), check: check.into(), expected: "true".into(), got: detail.to_string(), pass: ok }
    }
}

fn shown<T: std::fmt::Display>(r: sympmod_core::Result<T>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => format!("error: {e}"),
    }
}

/// `(p, g, c)` triples in grid order.
fn triples(pmax: u32, gs: impl IntoIterator<Item = usize> + Clone) -> Vec<(u32, usize, u32)> {
    let mut out = Vec::new();
    for p in params::primes_between(5, pmax) {
        for g in gs.clone() {
            for c in 0..half(p) {
                out.push((p, g, c));
            }
        }
    }
    out
}

fn tuple(p: u32, g: usize, c: u32, eps: u8) -> String {
    format!("(p={p}, g={g}, c={c}, eps={eps})")
}

/// Trigonometric sums against coloring counts of both types.
pub fn oracle(pmax: u32, gmax: usize) -> Vec<Check> {
    triples(pmax, 1..=gmax)
        .into_par_iter()
        .flat_map_iter(|(p, g, c)| {
            let cfg = TrigEvalConfig::for_params(p, g);
            let counts: Vec<BigInt> =
                (0..2).map(|eps| BigInt::from(lollipop::count(p, g, c, eps).expect("valid grid point"))).collect();
            let t = format!("(p={p}, g={g}, c={c})");
            let mut out = vec![
                Check::new(&t, "D = count(0) + count(1)", &counts[0] + &counts[1], shown(verlinde::with_retry(&cfg, |k| verlinde::verlinde_d(p, g, c, k)))),
                Check::new(&t, "delta = count(0) - count(1)", &counts[0] - &counts[1], shown(verlinde::with_retry(&cfg, |k| verlinde::verlinde_delta(p, g, c, k)))),
            ];
            for eps in 0..2u8 {
                out.push(Check::new(
                    tuple(p, g, c, eps),
                    "dim formula = count",
                    &counts[eps as usize],
                    shown(verlinde::dim_formula(p, g, c, eps, &cfg)),
                ));
            }
            out
        })
        .collect()
}

/// Closed-form polynomials against the trigonometric formula and counts.
pub fn closed_form(pmax: u32, gmax: usize) -> Vec<Check> {
    triples(pmax, (2..=4).filter(|&g| g <= gmax))
        .into_par_iter()
        .flat_map_iter(|(p, g, c)| {
            (0..2u8).filter_map(move |eps| {
                let case = Case::of(c, eps);
                verlinde::closed_form_poly(g, case).ok()?;
                let desc = ModuleDescriptor { p, g, c, eps };
                let count = shown(modules::dim(&desc, DimMethod::Count));
                let formula = shown(modules::dim(&desc, DimMethod::Formula));
                let poly = shown(modules::dim(&desc, DimMethod::Polynomial));
                let ok = count == formula && formula == poly;
                Some(Check {
                    tuple: tuple(p, g, c, eps),
                    check: format!("closed form (case {case}) = formula = count"),
                    expected: count,
                    got: format!("{poly} / {formula}"),
                    pass: ok,
                })
            })
        })
        .collect()
}

/// Rank 2: Weyl dimension of every defined highest weight.
pub fn weyl_rank2(pmax: u32) -> Vec<Check> {
    let mut out = Vec::new();
    for (p, g, c) in triples(pmax, [2]) {
        for eps in 0..2 {
            let desc = ModuleDescriptor { p, g, c, eps };
            let Ok(lam) = modules::highest_weight_closed(&desc) else { continue };
            out.push(Check::new(
                tuple(p, g, c, eps),
                "Weyl dimension = count",
                shown(modules::dim(&desc, DimMethod::Count)),
                shown(weyl::weyl_dim(2, &lam)),
            ));
        }
    }
    out
}

/// Rank 3, even type: the Weyl-module difference, and where the plain Weyl
/// dimension already agrees.
pub fn jantzen(pmax: u32) -> Vec<Check> {
    let mut out = Vec::new();
    for (p, g, c) in triples(pmax, [3]) {
        let desc = ModuleDescriptor { p, g, c, eps: 0 };
        let count = modules::dim(&desc, DimMethod::Count).expect("valid grid point");
        out.push(Check::new(tuple(p, g, c, 0), "Jantzen difference = count", &count, shown(weyl::jantzen_rank3_dim(p, c))));
        let lam = modules::highest_weight_closed(&desc).expect("defined at rank 3");
        let plain = weyl::weyl_dim(3, &lam).expect("dominant");
        out.push(Check::holds(
            tuple(p, g, c, 0),
            "Weyl dimension = count iff c <= 1",
            (plain == count) == (c <= 1),
            format!("weyl {plain}, count {count}"),
        ));
    }
    out
}

/// Alcove pairings of the family weights, and the p = 5 fundamental weights.
pub fn alcove(pmax: u32) -> Vec<Check> {
    let mut out = Vec::new();
    for (p, g, c) in triples(pmax, [5, 6]) {
        for eps in 0..2 {
            let desc = ModuleDescriptor { p, g, c, eps };
            let got = shown(modules::highest_weight_closed(&desc).map(|lam| alcove_pairing(&lam)));
            out.push(Check::new(tuple(p, g, c, eps), "alcove pairing = p + 2g - 4", p as usize + 2 * g - 4, got));
        }
    }
    for p in params::primes_between(5, pmax) {
        let desc = ModuleDescriptor { p, g: 3, c: 0, eps: 1 };
        let got = shown(modules::highest_weight_closed(&desc).map(|lam| alcove_pairing(&lam)));
        out.push(Check::new(tuple(p, 3, 0, 1), "alcove pairing = p", p, got));
    }
    for g in 3..=5 {
        let got: Vec<String> = [(0, 0), (1, 0), (1, 1), (0, 1)]
            .iter()
            .map(|&(c, eps)| shown(modules::highest_weight_closed(&ModuleDescriptor { p: 5, g, c, eps })))
            .collect();
        let expect: Vec<String> = (0..4).map(|k| DominantWeight::fundamental(g, g - k).to_string()).collect();
        out.push(Check::new(format!("(p=5, g={g})"), "highest weights are w_g .. w_(g-3)", expect.join(", "), got.join(", ")));
    }
    out
}

/// Coloring-level structural properties and the per-module consistency
/// report (characters, highest weights, reductions).
pub fn lemmas(pmax: u32, gmax: usize) -> Vec<Check> {
    let grid = ModuleDescriptor::grid(pmax, gmax);
    let mut out: Vec<Check> = grid
        .iter()
        .map(|d| {
            let first = lollipop::fold(
                d.p,
                d.g,
                d.c,
                d.eps,
                || None,
                |acc: &mut Option<String>, s| {
                    if acc.is_none() {
                        *acc = lollipop::structural_violation(s).map(|v| format!("a={:?} b={:?}: {v}", s.a, s.b));
                    }
                },
                |x, y| x.or(y),
            )
            .expect("valid grid point");
            Check::holds(d, "structural properties of every coloring", first.is_none(), first.unwrap_or_else(|| "true".into()))
        })
        .collect();
    let reports: Vec<Check> = grid
        .par_iter()
        .flat_map_iter(|d| {
            modules::consistency_report(d)
                .records
                .into_iter()
                .map(|r| Check { tuple: d.to_string(), check: r.check, expected: r.route_b, got: r.route_a, pass: r.pass })
        })
        .collect();
    out.extend(reports);
    out
}

/// Exact interpolation in `p` against the closed forms, plus the rank-4
/// even-type degree and held-out primes.
pub fn interpolate(gmax: usize) -> Vec<Check> {
    let mut out = Vec::new();
    for g in (2..=3).filter(|&g| g <= gmax) {
        for c in 0..=2 {
            for eps in 0..2 {
                let case = Case::of(c, eps);
                let Ok(reference) = verlinde::closed_form_at_c(g, case, c) else { continue };
                let primes = verlinde::sample_primes(c, verlinde::required_points(g));
                let fit = verlinde::interpolate_dim(g, c, eps, &primes);
                out.push(Check::new(tuple(0, g, c, eps).replace("p=0, ", ""), "interpolant = closed form", &reference, shown(fit)));
            }
        }
    }
    if gmax >= 4 {
        let primes = verlinde::sample_primes(0, 10);
        match verlinde::interpolate_dim(4, 0, 0, &primes) {
            Ok(fit) => {
                out.push(Check::new("(g=4, c=0, eps=0)", "interpolant degree", 9, shown(fit.degree().ok_or(sympmod_core::Error::EmptyModule))));
                for p in [41u32, 43] {
                    let count = lollipop::count(p, 4, 0, 0).expect("valid");
                    let value = fit.eval(&BigRational::from_integer(p.into()));
                    out.push(Check::new(tuple(p, 4, 0, 0), "interpolant at held-out prime", BigRational::from_integer(count.into()), value));
                }
            }
            Err(e) => out.push(Check::holds("(g=4, c=0, eps=0)", "interpolation", false, e)),
        }
    }
    out
}

pub fn run_suite(suite: Suite, pmax: u32, gmax: usize) -> Vec<Check> {
    match suite {
        Suite::Oracle => oracle(pmax, gmax),
        Suite::ClosedForm => closed_form(pmax, gmax),
        Suite::Weyl if gmax >= 2 => weyl_rank2(pmax),
        Suite::Jantzen if gmax >= 3 => jantzen(pmax),
        Suite::Weyl | Suite::Jantzen => Vec::new(),
        Suite::Alcove => alcove(pmax),
        Suite::Lemmas => lemmas(pmax, gmax),
        Suite::Interpolate => interpolate(gmax),
        Suite::All => suite.members().into_iter().flat_map(|s| run_suite(s, pmax, gmax)).collect(),
    }
}

pub fn cmd_verify(suite: Suite, pmax: u32, gmax: usize, fmt: Format, out: &mut dyn Write) -> CmdResult {
    if pmax < 5 || gmax == 0 {
        return Err(sympmod_core::Error::BadParameters("need pmax ≥ 5 and gmax ≥ 1".into()).into());
    }
    let results: Vec<(Suite, Vec<Check>)> = suite.members().into_iter().map(|s| (s, run_suite(s, pmax, gmax))).collect();
    let passed = results.iter().all(|(_, checks)| checks.iter().all(|c| c.pass));
    match fmt {
        Format::Json => {
            let suites: Vec<_> = results
                .iter()
                .map(|(s, checks)| {
                    json!({
                        "suite": s.name(),
                        "checks": checks.len(),
                        "failed": checks.iter().filter(|c| !c.pass).count(),
                        "failures": checks.iter().filter(|c| !c.pass).collect::<Vec<_>>(),
                    })
                })
                .collect();
            crate::write_json(out, &json!({ "pass": passed, "suites": suites }))?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["suite", "tuple", "check", "expected", "got", "pass"])?;
            for (s, checks) in &results {
                for c in checks {
                    w.write_record([s.name(), &c.tuple, &c.check, &c.expected, &c.got, if c.pass { "true" } else { "false" }])?;
                }
            }
            w.flush()?;
        }
        Format::Plain => {
            for (s, checks) in &results {
                for c in checks.iter().filter(|c| !c.pass) {
                    writeln!(out, "FAIL {} {}: {}: expected {}, got {}", s.name(), c.tuple, c.check, c.expected, c.got)?;
                }
                let failed = checks.iter().filter(|c| !c.pass).count();
                writeln!(out, "{}: {} checks, {} failed", s.name(), checks.len(), failed)?;
            }
            writeln!(out, "{}", if passed { "PASS" } else { "FAIL" })?;
        }
    }
    Ok(if passed { EXIT_OK } else { EXIT_VERIFY })
}
