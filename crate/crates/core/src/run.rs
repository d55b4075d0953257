//! Command dispatch: problem text in, report plus exit code out.
//!
//! Exit codes: `0` extends / success, `1` does not extend / check failed,
//! `2` unknown or no constructive witness, `3` input error, `4` budget
//! exhausted.  Reports are line-oriented and name the rule justifying the
//! verdict; output is deterministic given the problem, seed, and budget.

use std::fmt::Write as _;

use crate::exec::ExecMode;
use crate::extend_finite::{
    commutator_witness, decide_nonplanar, decide_planar_with, extend_representation,
    non_orientable_witness, witness_planar, ExtendError, SearchOptions,
};
use crate::extend_infinite::{
    decide_nonorientable_positive_genus, decide_orientable_positive_genus,
    decide_planar_infinite, InfOptions, Status, Verdict, WitnessChecks, WitnessError,
    WitnessPolicy,
};
use crate::lazy::{write_expr, EvalError};
use crate::perm::{class_elements, is_transitive, Perm};
use crate::problem::{parse_problem, Degree, ProblemFile};
use crate::regular::{abelian_infinite_boundary_check, regular_witness_search, RegularError};
use crate::strip::build_strip_cover;
use crate::surface::SurfaceRep;
use crate::witness::{emit, verify_text, WitnessDoc, WitnessFileError};

pub const EXIT_EXTENDS: i32 = 0;
pub const EXIT_NOT_EXTENDS: i32 = 1;
pub const EXIT_UNKNOWN: i32 = 2;
pub const EXIT_INPUT: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;

/// The CLI subcommands.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Decide,
    Count,
    Witness,
    Ore,
    Verify,
    BuildStrip,
    Regular,
}

/// What a command produced: exit code, report text, optional witness file.
#[derive(Clone, Debug)]
pub struct RunOutcome {
    pub exit_code: i32,
    pub report: String,
    pub witness: Option<String>,
}

fn outcome(exit_code: i32, report: String) -> RunOutcome {
    RunOutcome { exit_code, report, witness: None }
}

fn input_error(msg: impl std::fmt::Display) -> RunOutcome {
    outcome(EXIT_INPUT, format!("error: {msg}\n"))
}

fn budget_exhausted(msg: impl std::fmt::Display) -> RunOutcome {
    outcome(EXIT_BUDGET, format!("verdict: unknown\nreason: budget-exhausted\ndetail: {msg}\n"))
}

fn status_word(s: Status) -> &'static str {
    match s {
        Status::Extends => "extends",
        Status::NotExtends => "does-not-extend",
        Status::Unknown => "unknown",
    }
}

fn status_exit(s: Status) -> i32 {
    match s {
        Status::Extends => EXIT_EXTENDS,
        Status::NotExtends => EXIT_NOT_EXTENDS,
        Status::Unknown => EXIT_UNKNOWN,
    }
}

fn search_options(p: &ProblemFile) -> SearchOptions {
    let mut opts = SearchOptions::default();
    if let Some(b) = p.budget {
        opts.node_budget = b;
    }
    opts
}

fn witness_checks(p: &ProblemFile) -> WitnessChecks {
    let mut c = WitnessChecks::default();
    if let Some(w) = p.window {
        c.window = w;
        c.transitivity_window = c.transitivity_window.min(w);
    }
    if let Some(b) = p.budget {
        c.per_point_budget = b;
        c.census_budget = b;
    }
    if let Some(wb) = p.word_budget {
        c.word_budget = wb;
    }
    c
}

fn inf_options(p: &ProblemFile) -> InfOptions {
    InfOptions {
        seed: p.seed as i64,
        policy: WitnessPolicy::Budgeted,
        checks: witness_checks(p),
    }
}

/// Report + witness file for a finite covering representation.
fn finite_success(p: &ProblemFile, rep: SurfaceRep, reason: &str) -> RunOutcome {
    let transitive = is_transitive(&rep.all_images(), rep.degree);
    let mut report = format!("verdict: extends\nreason: {reason}\n");
    let _ = writeln!(report, "degree: {}", rep.degree);
    let _ = writeln!(report, "connected: {transitive}");
    let doc = WitnessDoc::finite(rep, p.classes.clone(), transitive, false);
    RunOutcome { exit_code: EXIT_EXTENDS, report, witness: Some(emit(&doc)) }
}

fn decide_finite(p: &ProblemFile) -> RunOutcome {
    let opts = search_options(p);
    if p.surface.orientable && p.surface.genus == 0 {
        if p.connected {
            return match witness_planar(&p.classes, true, &opts) {
                Ok(Some(tuple)) => match SurfaceRep::orientable(0, vec![], tuple) {
                    Ok(rep) => finite_success(p, rep, "frobenius-count"),
                    Err(e) => input_error(e),
                },
                Ok(None) => outcome(
                    EXIT_NOT_EXTENDS,
                    "verdict: does-not-extend\nreason: exhaustive-search-absence\n".into(),
                ),
                Err(ExtendError::BudgetExhausted) => budget_exhausted("planar tuple scan"),
                Err(e) => input_error(e),
            };
        }
        return match decide_planar_with(&p.classes, ExecMode::default()) {
            Ok((true, count)) => {
                let constructive = witness_planar(&p.classes, false, &opts);
                match constructive {
                    Ok(Some(tuple)) => match SurfaceRep::orientable(0, vec![], tuple) {
                        Ok(rep) => {
                            let mut out = finite_success(p, rep, "frobenius-count");
                            let _ = writeln!(out.report, "count: {count}");
                            out
                        }
                        Err(e) => input_error(e),
                    },
                    // The count already certifies extension; the witness
                    // search is best-effort under the budget.
                    _ => outcome(
                        EXIT_EXTENDS,
                        format!(
                            "verdict: extends\nreason: frobenius-count\ncount: {count}\n"
                        ),
                    ),
                }
            }
            Ok((false, _)) => outcome(
                EXIT_NOT_EXTENDS,
                "verdict: does-not-extend\nreason: frobenius-count\ncount: 0\n".into(),
            ),
            Err(e) => input_error(e),
        };
    }
    if p.surface.orientable {
        match decide_nonplanar(&p.classes, p.surface.genus) {
            Ok(false) => {
                return outcome(
                    EXIT_NOT_EXTENDS,
                    "verdict: does-not-extend\nreason: odd-boundary-sign\n".into(),
                )
            }
            Ok(true) => {}
            Err(e) => return input_error(e),
        }
        return match extend_representation(p.surface.genus, &p.classes, p.connected, &opts) {
            Ok(Some(rep)) => finite_success(p, rep, "handle-commutator-absorption"),
            Ok(None) => outcome(
                EXIT_UNKNOWN,
                "verdict: unknown\nreason: inconclusive\ndetail: even boundary sign but no representative tuple found\n"
                    .into(),
            ),
            Err(ExtendError::BudgetExhausted) => budget_exhausted("representative tuple scan"),
            Err(e) => input_error(e),
        };
    }
    match non_orientable_witness(p.surface.genus, &p.classes, p.connected, &opts) {
        Ok(Some(rep)) => finite_success(p, rep, "crosscap-square-absorption"),
        Ok(None) => outcome(
            EXIT_NOT_EXTENDS,
            "verdict: does-not-extend\nreason: exhaustive-search-absence\n".into(),
        ),
        Err(ExtendError::BudgetExhausted) => budget_exhausted("cross-cap tuple scan"),
        Err(e) => input_error(e),
    }
}

/// Report + optional witness file from an infinite-side verdict.
fn verdict_outcome(p: &ProblemFile, v: Verdict, checks: WitnessChecks) -> RunOutcome {
    let mut status = v.status;
    let mut extra = String::new();
    if p.connected && status == Status::Extends {
        let connected_witness = v.witness.as_ref().is_some_and(|w| w.transitive);
        if !connected_witness {
            // Extension exists, but no witness verified connected: the
            // connected variant stays open rather than overclaimed.
            status = Status::Unknown;
            extra = "detail: extension verified, connectedness not established\n".into();
        }
    }
    let mut report = format!("verdict: {}\nreason: {}\n", status_word(status), v.reason.code());
    if !v.detail.is_empty() {
        let _ = writeln!(report, "detail: {}", v.detail);
    }
    report.push_str(&extra);
    let witness = v.witness.map(|w| {
        let _ = writeln!(report, "connected: {}", w.transitive);
        emit(&WitnessDoc::infinite(
            p.surface.clone(),
            p.specs.clone(),
            w,
            p.seed as i64,
            checks,
        ))
    });
    RunOutcome { exit_code: status_exit(status), report, witness }
}

fn decide_infinite(p: &ProblemFile) -> RunOutcome {
    let opts = inf_options(p);
    let verdict = if p.surface.orientable && p.surface.genus == 0 {
        decide_planar_infinite(&p.specs, p.connected)
    } else if p.surface.orientable {
        decide_orientable_positive_genus(&p.surface, &p.specs, &opts)
    } else {
        decide_nonorientable_positive_genus(&p.surface, &p.specs, &opts)
    };
    match verdict {
        Ok(v) => verdict_outcome(p, v, opts.checks),
        Err(EvalError::BudgetExhausted { limit }) => {
            budget_exhausted(format!("evaluation budget {limit}"))
        }
        Err(e) => input_error(e),
    }
}

fn run_decide(p: &ProblemFile) -> RunOutcome {
    match p.degree {
        Degree::Finite(_) => decide_finite(p),
        Degree::Infinite => decide_infinite(p),
    }
}

fn run_count(p: &ProblemFile) -> RunOutcome {
    if !(p.surface.orientable && p.surface.genus == 0) {
        return input_error("count is defined for orientable genus-0 surfaces only");
    }
    if p.degree == Degree::Infinite {
        return input_error("count requires a finite degree");
    }
    match decide_planar_with(&p.classes, ExecMode::default()) {
        Ok((_, count)) => outcome(
            EXIT_EXTENDS,
            format!("count: {count}\nreason: frobenius-count\n"),
        ),
        Err(e) => input_error(e),
    }
}

fn run_witness(p: &ProblemFile) -> RunOutcome {
    let out = run_decide(p);
    if out.exit_code == EXIT_EXTENDS && out.witness.is_none() {
        let mut report = out.report;
        report.push_str("witness: none constructive under this policy\n");
        return outcome(EXIT_UNKNOWN, report);
    }
    out
}

fn run_ore(p: &ProblemFile) -> RunOutcome {
    if !p.surface.orientable || p.surface.genus == 0 || p.surface.boundary != 1 {
        return input_error("ore requires an orientable surface of genus >= 1 with k=1");
    }
    match p.degree {
        Degree::Finite(_) => {
            let class = &p.classes[0];
            let s1 = class_elements(class)
                .into_iter()
                .next()
                .expect("nonempty class");
            let target = s1.inverse();
            match commutator_witness(&target, p.connected, &search_options(p)) {
                Ok(Some((a, b))) => {
                    let mut handles = vec![(a.clone(), b.clone())];
                    handles.resize(
                        p.surface.genus,
                        (Perm::identity(s1.degree()), Perm::identity(s1.degree())),
                    );
                    match SurfaceRep::orientable(p.surface.genus, handles, vec![s1]) {
                        Ok(rep) => {
                            let mut out =
                                finite_success(p, rep, "handle-commutator-absorption");
                            let _ = writeln!(out.report, "a1: {a}");
                            let _ = writeln!(out.report, "b1: {b}");
                            out
                        }
                        Err(e) => input_error(e),
                    }
                }
                Ok(None) => outcome(
                    EXIT_NOT_EXTENDS,
                    "verdict: does-not-extend\nreason: odd-boundary-sign\n".into(),
                ),
                Err(ExtendError::BudgetExhausted) => budget_exhausted("commutator pair scan"),
                Err(e) => input_error(e),
            }
        }
        Degree::Infinite => {
            let opts = inf_options(p);
            match decide_orientable_positive_genus(&p.surface, &p.specs, &opts) {
                Ok(v) => {
                    let expr_lines = v.witness.as_ref().map(|w| {
                        let mut s = String::new();
                        if let Some((a, b)) = w.handles.first() {
                            let _ = writeln!(s, "a1: {}", write_expr(a));
                            let _ = writeln!(s, "b1: {}", write_expr(b));
                        }
                        if let Some(b0) = w.boundaries.first() {
                            let _ = writeln!(s, "s1: {}", write_expr(b0));
                        }
                        s
                    });
                    let mut out = verdict_outcome(p, v, opts.checks);
                    if let Some(lines) = expr_lines {
                        out.report.push_str(&lines);
                    }
                    out
                }
                Err(EvalError::BudgetExhausted { limit }) => {
                    budget_exhausted(format!("evaluation budget {limit}"))
                }
                Err(e) => input_error(e),
            }
        }
    }
}

fn run_build_strip(p: &ProblemFile) -> RunOutcome {
    let (sigma, tau) = match (&p.sigma, &p.tau) {
        (Some(s), Some(t)) => (s, t),
        _ => return input_error("build-strip needs `sigma` and `tau` lines"),
    };
    match build_strip_cover(sigma, tau) {
        Ok(complex) => {
            let monodromy: Vec<String> = complex
                .boundary_monodromy()
                .parts()
                .iter()
                .map(|p| p.to_string())
                .collect();
            outcome(
                EXIT_EXTENDS,
                format!(
                    "squares: {}\neuler-characteristic: {}\nboundary-circles: {}\nboundary-monodromy: {}\n",
                    complex.squares,
                    complex.euler_characteristic(),
                    complex.boundary_circles(),
                    monodromy.join(" ")
                ),
            )
        }
        Err(e) => input_error(e),
    }
}

fn run_regular(p: &ProblemFile) -> RunOutcome {
    match p.degree {
        Degree::Finite(n) => {
            let strict = !p.relaxed;
            match regular_witness_search(
                &p.surface,
                &p.classes,
                n,
                strict,
                ExecMode::default(),
            ) {
                Ok(Some(w)) => {
                    let transitive = w.transitive;
                    let mut report = format!(
                        "verdict: extends\nreason: regular-representative-search\nconnected: {transitive}\n"
                    );
                    let _ = writeln!(report, "mode: {}", if strict { "strict" } else { "relaxed" });
                    let doc = WitnessDoc::finite(w.rep, p.classes.clone(), transitive, true);
                    RunOutcome {
                        exit_code: EXIT_EXTENDS,
                        report,
                        witness: Some(emit(&doc)),
                    }
                }
                Ok(None) => outcome(
                    EXIT_NOT_EXTENDS,
                    "verdict: does-not-extend\nreason: exhaustive-search-absence\n".into(),
                ),
                Err(RegularError::DegreeBound(n)) => outcome(
                    EXIT_UNKNOWN,
                    format!(
                        "verdict: unknown\nreason: degree-bound\ndetail: degree {n} beyond the exhaustive range\n"
                    ),
                ),
                Err(e) => input_error(e),
            }
        }
        Degree::Infinite => {
            if p.surface.boundary != 1 || p.surface.genus == 0 || !p.surface.orientable {
                return input_error(
                    "infinite regular analysis covers orientable surfaces of genus >= 1 with k=1",
                );
            }
            match abelian_infinite_boundary_check(p.surface.genus, 1) {
                Ok(true) => outcome(
                    EXIT_EXTENDS,
                    "check: passed\nreason: abelian-commutator-boundary\ndetail: abelian regular covers give every boundary lift degree 1\n"
                        .into(),
                ),
                Ok(false) => outcome(
                    EXIT_NOT_EXTENDS,
                    "check: failed\nreason: abelian-commutator-boundary\n".into(),
                ),
                Err(e) => input_error(e),
            }
        }
    }
}

fn run_verify(text: &str) -> RunOutcome {
    match verify_text(text) {
        Ok(doc) => {
            let mut report = String::from("witness: verified\n");
            let _ = writeln!(
                report,
                "surface: {} g={} k={}",
                if doc.surface.orientable { "orientable" } else { "nonorientable" },
                doc.surface.genus,
                doc.surface.boundary
            );
            match doc.degree {
                Degree::Finite(n) => {
                    let _ = writeln!(report, "degree: {n}");
                }
                Degree::Infinite => {
                    let _ = writeln!(report, "degree: inf");
                }
            }
            let mut claims = Vec::new();
            if doc.transitive {
                claims.push("transitive");
            }
            if doc.regular {
                claims.push("regular");
            }
            let _ = writeln!(
                report,
                "claims: {}",
                if claims.is_empty() { "none".to_string() } else { claims.join(" ") }
            );
            outcome(EXIT_EXTENDS, report)
        }
        Err(e) => {
            let exit = match &e {
                WitnessFileError::MissingChecksum
                | WitnessFileError::ChecksumMismatch
                | WitnessFileError::Malformed { .. }
                | WitnessFileError::Shape(_) => EXIT_INPUT,
                WitnessFileError::Infinite(WitnessError::Eval(
                    EvalError::BudgetExhausted { .. },
                )) => EXIT_BUDGET,
                _ => EXIT_NOT_EXTENDS,
            };
            outcome(exit, format!("witness: rejected\nerror: {e}\n"))
        }
    }
}

/// Parses and dispatches. `Verify` treats the input as a witness file;
/// every other command treats it as a problem file.
pub fn run_command(cmd: Command, input: &str) -> RunOutcome {
    if cmd == Command::Verify {
        return run_verify(input);
    }
    let problem = match parse_problem(input) {
        Ok(p) => p,
        Err(e) => return input_error(format!("[{}] {e}", e.code())),
    };
    match cmd {
        Command::Decide => run_decide(&problem),
        Command::Count => run_count(&problem),
        Command::Witness => run_witness(&problem),
        Command::Ore => run_ore(&problem),
        Command::BuildStrip => run_build_strip(&problem),
        Command::Regular => run_regular(&problem),
        Command::Verify => unreachable!("handled above"),
    }
}
