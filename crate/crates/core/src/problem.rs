//! Plain-text problem files.
//!
//! One directive per line; `#` starts a comment and blank lines are
//! skipped.  The surface line comes first, then the degree, then one
//! class line per boundary circle, then options in any order:
//!
//! ```text
//! surface orientable g=1 k=2    # or: nonorientable
//! n 5                           # finite degree, or: n inf
//! class 3 1 1                   # finite problems: partition of n
//! class 5
//! connected                     # require a connected cover
//! regular                       # ask for a regular (Galois) cover
//! relaxed                       # regular search: handles absorb the product
//! seed 7                        # infinite constructions: orbit seed
//! budget 4194304                # evaluation-step budget per check
//! window 8                      # verification window radius
//! wordbudget 200                # transitivity word-length bound
//! ```
//!
//! Infinite problems (`n inf`) replace `class` lines with `spec` lines
//! holding `size:count` entries (`spec inf:1` or `spec 3:1, 1:inf`).
//! Strip-cover problems add `sigma (1 2 3)` and `tau (1 3)` lines in
//! cycle notation instead of class lines.

use thiserror::Error;

use crate::lazy::CycleTypeSpec;
use crate::perm::{CycleType, Perm};
use crate::surface::SurfaceSpec;

/// Covering degree requested by a problem.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Degree {
    Finite(usize),
    Infinite,
}

/// A validated problem file.
#[derive(Clone, Debug)]
pub struct ProblemFile {
    pub surface: SurfaceSpec,
    pub degree: Degree,
    /// One entry per boundary circle when the degree is finite.
    pub classes: Vec<CycleType>,
    /// One entry per boundary circle when the degree is infinite.
    pub specs: Vec<CycleTypeSpec>,
    pub connected: bool,
    pub regular: bool,
    pub relaxed: bool,
    pub seed: u64,
    pub budget: Option<u64>,
    pub window: Option<i64>,
    pub word_budget: Option<usize>,
    /// Strip-cover inputs, present only for `build-strip` problems.
    pub sigma: Option<Perm>,
    pub tau: Option<Perm>,
}

#[derive(Debug, Error)]
pub enum ProblemError {
    #[error("line {line}: expected `surface <orientable|nonorientable> g=<int> k=<int>`: {msg}")]
    BadSurface { line: usize, msg: String },
    #[error("line {line}: expected `n <int>` or `n inf`: {msg}")]
    BadDegree { line: usize, msg: String },
    #[error("line {line}: bad class line: {msg}")]
    BadClass { line: usize, msg: String },
    #[error("line {line}: bad spec line: {msg}")]
    BadSpec { line: usize, msg: String },
    #[error("line {line}: bad permutation: {msg}")]
    BadPerm { line: usize, msg: String },
    #[error("line {line}: bad value for `{what}`: {msg}")]
    BadValue { line: usize, what: &'static str, msg: String },
    #[error("line {line}: unknown directive `{word}`")]
    UnknownDirective { line: usize, word: String },
    #[error("line {line}: duplicate `{what}` line")]
    Duplicate { line: usize, what: &'static str },
    #[error("line {line}: `{what}` must come after the `n` line")]
    BeforeDegree { line: usize, what: &'static str },
    #[error("line {line}: class of degree {got} in a degree-{want} problem")]
    ClassDegree { line: usize, got: usize, want: usize },
    #[error("line {line}: `class` lines require a finite degree")]
    ClassNeedsFinite { line: usize },
    #[error("line {line}: `spec` lines require `n inf`")]
    SpecNeedsInfinite { line: usize },
    #[error("missing `surface` line")]
    MissingSurface,
    #[error("missing `n` line")]
    MissingDegree,
    #[error("{got} boundary lines for a surface with k={want}")]
    BoundaryCount { got: usize, want: usize },
}

impl ProblemError {
    /// Short stable identifier, one per variant.
    pub fn code(&self) -> &'static str {
        match self {
            ProblemError::BadSurface { .. } => "bad-surface",
            ProblemError::BadDegree { .. } => "bad-degree",
            ProblemError::BadClass { .. } => "bad-class",
            ProblemError::BadSpec { .. } => "bad-spec",
            ProblemError::BadPerm { .. } => "bad-perm",
            ProblemError::BadValue { .. } => "bad-value",
            ProblemError::UnknownDirective { .. } => "unknown-directive",
            ProblemError::Duplicate { .. } => "duplicate-line",
            ProblemError::BeforeDegree { .. } => "before-degree",
            ProblemError::ClassDegree { .. } => "class-degree-mismatch",
            ProblemError::ClassNeedsFinite { .. } => "class-needs-finite",
            ProblemError::SpecNeedsInfinite { .. } => "spec-needs-infinite",
            ProblemError::MissingSurface => "missing-surface",
            ProblemError::MissingDegree => "missing-degree",
            ProblemError::BoundaryCount { .. } => "boundary-count",
        }
    }
}

pub(crate) fn parse_surface(line: usize, rest: &str) -> Result<SurfaceSpec, ProblemError> {
    let bad = |msg: &str| ProblemError::BadSurface { line, msg: msg.to_string() };
    let mut orientable = None;
    let mut genus = None;
    let mut boundary = None;
    for tok in rest.split_whitespace() {
        if tok.eq_ignore_ascii_case("orientable") {
            orientable = Some(true);
        } else if tok.eq_ignore_ascii_case("nonorientable") {
            orientable = Some(false);
        } else if let Some(v) = tok.strip_prefix("g=") {
            genus = Some(v.parse::<usize>().map_err(|_| bad(&format!("bad genus {v:?}")))?);
        } else if let Some(v) = tok.strip_prefix("k=") {
            boundary =
                Some(v.parse::<usize>().map_err(|_| bad(&format!("bad boundary count {v:?}")))?);
        } else {
            return Err(bad(&format!("unexpected token {tok:?}")));
        }
    }
    let orientable = orientable.ok_or_else(|| bad("orientability missing"))?;
    let genus = genus.ok_or_else(|| bad("g= missing"))?;
    let boundary = boundary.ok_or_else(|| bad("k= missing"))?;
    SurfaceSpec::new(orientable, genus, boundary)
        .map_err(|e| ProblemError::BadSurface { line, msg: e.to_string() })
}

pub(crate) fn parse_degree(line: usize, rest: &str) -> Result<Degree, ProblemError> {
    let rest = rest.trim();
    if rest.eq_ignore_ascii_case("inf") {
        return Ok(Degree::Infinite);
    }
    match rest.parse::<usize>() {
        Ok(n) if n >= 1 => Ok(Degree::Finite(n)),
        Ok(n) => Err(ProblemError::BadDegree { line, msg: format!("degree {n} must be positive") }),
        Err(_) => Err(ProblemError::BadDegree { line, msg: format!("unreadable degree {rest:?}") }),
    }
}

/// Parses a problem file. Errors carry the 1-based line number and a
/// distinct code per failure kind.
pub fn parse_problem(text: &str) -> Result<ProblemFile, ProblemError> {
    let mut surface: Option<SurfaceSpec> = None;
    let mut degree: Option<Degree> = None;
    let mut classes: Vec<CycleType> = Vec::new();
    let mut specs: Vec<CycleTypeSpec> = Vec::new();
    let mut connected = false;
    let mut regular = false;
    let mut relaxed = false;
    let mut seed: Option<u64> = None;
    let mut budget: Option<u64> = None;
    let mut window: Option<i64> = None;
    let mut word_budget: Option<usize> = None;
    let mut sigma: Option<Perm> = None;
    let mut tau: Option<Perm> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (word, rest) = match content.split_once(char::is_whitespace) {
            Some((w, r)) => (w, r.trim()),
            None => (content, ""),
        };
        match word.to_ascii_lowercase().as_str() {
            "surface" => {
                if surface.is_some() {
                    return Err(ProblemError::Duplicate { line, what: "surface" });
                }
                surface = Some(parse_surface(line, rest)?);
            }
            "n" => {
                if degree.is_some() {
                    return Err(ProblemError::Duplicate { line, what: "n" });
                }
                degree = Some(parse_degree(line, rest)?);
            }
            "class" => match degree {
                None => return Err(ProblemError::BeforeDegree { line, what: "class" }),
                Some(Degree::Infinite) => {
                    return Err(ProblemError::ClassNeedsFinite { line });
                }
                Some(Degree::Finite(n)) => {
                    let mut parts = Vec::new();
                    for tok in rest.split_whitespace() {
                        let p = tok.parse::<usize>().map_err(|_| ProblemError::BadClass {
                            line,
                            msg: format!("unreadable part {tok:?}"),
                        })?;
                        parts.push(p);
                    }
                    let got: usize = parts.iter().sum();
                    if got != n {
                        return Err(ProblemError::ClassDegree { line, got, want: n });
                    }
                    let ct = CycleType::new(parts, n)
                        .map_err(|e| ProblemError::BadClass { line, msg: e.to_string() })?;
                    classes.push(ct);
                }
            },
            "spec" => match degree {
                None => return Err(ProblemError::BeforeDegree { line, what: "spec" }),
                Some(Degree::Finite(_)) => {
                    return Err(ProblemError::SpecNeedsInfinite { line });
                }
                Some(Degree::Infinite) => {
                    let s = CycleTypeSpec::parse(rest)
                        .map_err(|e| ProblemError::BadSpec { line, msg: e.to_string() })?;
                    specs.push(s);
                }
            },
            "sigma" | "tau" => {
                let n = match degree {
                    Some(Degree::Finite(n)) => n,
                    Some(Degree::Infinite) => {
                        return Err(ProblemError::ClassNeedsFinite { line });
                    }
                    None => return Err(ProblemError::BeforeDegree { line, what: "sigma/tau" }),
                };
                let p = Perm::parse(n, rest)
                    .map_err(|e| ProblemError::BadPerm { line, msg: e.to_string() })?;
                let slot = if word.eq_ignore_ascii_case("sigma") { &mut sigma } else { &mut tau };
                if slot.is_some() {
                    return Err(ProblemError::Duplicate { line, what: "sigma/tau" });
                }
                *slot = Some(p);
            }
            "connected" => connected = true,
            "regular" => regular = true,
            "relaxed" => relaxed = true,
            "seed" | "budget" | "window" | "wordbudget" => {
                let what = match word.to_ascii_lowercase().as_str() {
                    "seed" => "seed",
                    "budget" => "budget",
                    "window" => "window",
                    _ => "wordbudget",
                };
                let value = |slot_taken: bool| -> Result<u64, ProblemError> {
                    if slot_taken {
                        return Err(ProblemError::Duplicate { line, what });
                    }
                    rest.parse::<u64>().map_err(|_| ProblemError::BadValue {
                        line,
                        what,
                        msg: format!("unreadable integer {rest:?}"),
                    })
                };
                match what {
                    "seed" => seed = Some(value(seed.is_some())?),
                    "budget" => budget = Some(value(budget.is_some())?),
                    "window" => {
                        let v = value(window.is_some())?;
                        if v == 0 || v > i64::MAX as u64 {
                            return Err(ProblemError::BadValue {
                                line,
                                what,
                                msg: format!("radius {v} out of range"),
                            });
                        }
                        window = Some(v as i64);
                    }
                    _ => word_budget = Some(value(word_budget.is_some())? as usize),
                }
            }
            _ => {
                return Err(ProblemError::UnknownDirective { line, word: word.to_string() });
            }
        }
    }

    let surface = surface.ok_or(ProblemError::MissingSurface)?;
    let degree = degree.ok_or(ProblemError::MissingDegree)?;
    let boundary_lines = classes.len() + specs.len();
    // Strip-cover problems describe their boundary through sigma/tau.
    if sigma.is_none() && tau.is_none() && boundary_lines != surface.boundary {
        return Err(ProblemError::BoundaryCount { got: boundary_lines, want: surface.boundary });
    }

    Ok(ProblemFile {
        surface,
        degree,
        classes,
        specs,
        connected,
        regular,
        relaxed,
        seed: seed.unwrap_or(0),
        budget,
        window,
        word_budget,
        sigma,
        tau,
    })
}
