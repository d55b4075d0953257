//! Text grammar for lazy-permutation expressions, one expression per line:
//!
//! ```text
//! EXPR := ID
//!       | SHIFT(step)
//!       | SIGMA_INF(spec)
//!       | SIGMA_FIN(spec)
//!       | CONJ(mode, spec, seed)        mode ∈ {caseA, caseB}
//!       | INV(EXPR)
//!       | COMP(EXPR, EXPR)              applies the second operand first
//!       | ROOT(family-id, n)
//!       | POW(EXPR, k)
//!
//! spec      := comma-separated `size:count`, `inf` for the infinite value
//! family-id := (ROWS | SHIFT(step) | PSI(A, spec) | PSI(B, spec))
//!              '@' start ['..'] ['%' seed]
//! ```
//!
//! `CONJ` arguments are read positionally: the first comma-field is the
//! mode, the last is the seed, and everything between is the spec (specs
//! contain commas).  `ROOT`'s family-id names the slice of the cycle family
//! being rooted: `@s` a single block of `n` cycles starting at index `s`,
//! `@s..` blocks of `n` repeating forever, `%seed` the position skew.
//! Parsing rebuilds constructor state (layouts, families), so a serialized
//! expression evaluates identically in any process.

use super::conj::make_families;
use super::family::{Family, FamilyKind};
use super::spec::{CaseMode, CycleTypeSpec};
use super::{EvalError, LazyPerm, Node};

/// Serializes an expression tree.
pub fn write_expr(e: &LazyPerm) -> String {
    match e.node() {
        Node::Id => "ID".to_string(),
        Node::Shift { step } => format!("SHIFT({step})"),
        Node::SigmaInf { spec, .. } => format!("SIGMA_INF({spec})"),
        Node::SigmaFin { spec, .. } => format!("SIGMA_FIN({spec})"),
        Node::Conj { mode, spec, seed, .. } => format!("CONJ({mode}, {spec}, {seed})"),
        Node::Inv { inner } => format!("INV({})", write_expr(inner)),
        Node::Comp { outer, inner } => {
            format!("COMP({}, {})", write_expr(outer), write_expr(inner))
        }
        Node::Root { family, start, group, repeating, seed } => {
            let kind = match family.kind() {
                FamilyKind::Rows => "ROWS".to_string(),
                FamilyKind::Shift(step) => format!("SHIFT({step})"),
                FamilyKind::PsiA(spec) => format!("PSI(A, {spec})"),
                FamilyKind::PsiB(spec) => format!("PSI(B, {spec})"),
            };
            let dots = if *repeating { ".." } else { "" };
            let skew = if *seed != 0 { format!("%{seed}") } else { String::new() };
            format!("ROOT({kind}@{start}{dots}{skew}, {group})")
        }
        Node::Pow { base, exp } => format!("POW({}, {})", write_expr(base), exp),
    }
}

fn err(msg: impl Into<String>) -> EvalError {
    EvalError::Parse(msg.into())
}

/// Splits on commas at parenthesis depth zero.
fn split_top_level(s: &str) -> Result<Vec<&str>, EvalError> {
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth = depth.checked_sub(1).ok_or_else(|| err("unbalanced `)`"))?,
            ',' if depth == 0 => {
                parts.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(err("unbalanced `(`"));
    }
    parts.push(s[start..].trim());
    Ok(parts)
}

/// Splits `HEAD( interior )`, requiring the final `)` to close the first `(`.
fn head_and_interior(s: &str) -> Result<(&str, &str), EvalError> {
    let open = s.find('(').ok_or_else(|| err(format!("expected `(` in `{s}`")))?;
    if !s.ends_with(')') {
        return Err(err(format!("expected trailing `)` in `{s}`")));
    }
    Ok((s[..open].trim(), &s[open + 1..s.len() - 1]))
}

fn parse_int(s: &str) -> Result<i64, EvalError> {
    s.trim().parse::<i64>().map_err(|_| err(format!("expected an integer, found `{s}`")))
}

fn parse_family_id(s: &str) -> Result<(Family, u64, bool, i64), EvalError> {
    let s = s.trim();
    let at = s.rfind('@').ok_or_else(|| err(format!("family id `{s}` lacks `@start`")))?;
    let (kind_text, mut slice) = (s[..at].trim(), s[at + 1..].trim());
    let mut seed = 0i64;
    if let Some(pct) = slice.rfind('%') {
        seed = parse_int(&slice[pct + 1..])?;
        slice = slice[..pct].trim();
    }
    let repeating = slice.ends_with("..");
    let start_text = if repeating { &slice[..slice.len() - 2] } else { slice };
    let start = start_text
        .trim()
        .parse::<u64>()
        .map_err(|_| err(format!("expected a start index, found `{start_text}`")))?;

    let kind = if kind_text == "ROWS" {
        FamilyKind::Rows
    } else {
        let (head, interior) = head_and_interior(kind_text)?;
        match head {
            "SHIFT" => FamilyKind::Shift(parse_int(interior)?),
            "PSI" => {
                let parts = split_top_level(interior)?;
                if parts.len() < 2 {
                    return Err(err("PSI needs a regime and a spec"));
                }
                let spec = CycleTypeSpec::parse(&parts[1..].join(","))?;
                match parts[0] {
                    "A" => FamilyKind::PsiA(spec),
                    "B" => FamilyKind::PsiB(spec),
                    other => return Err(err(format!("unknown PSI regime `{other}`"))),
                }
            }
            other => return Err(err(format!("unknown family `{other}`"))),
        }
    };
    Ok((Family::new(kind)?, start, repeating, seed))
}

fn parse_mode(s: &str) -> Result<CaseMode, EvalError> {
    match s.trim() {
        "caseA" => Ok(CaseMode::CaseA),
        "caseB" => Ok(CaseMode::CaseB),
        other => Err(err(format!("unknown regime `{other}`: expected caseA or caseB"))),
    }
}

/// Parses one expression.
pub fn parse_expr(s: &str) -> Result<LazyPerm, EvalError> {
    let s = s.trim();
    if s == "ID" {
        return Ok(LazyPerm::identity());
    }
    let (head, interior) = head_and_interior(s)?;
    let fields = split_top_level(interior)?;
    match head {
        "SHIFT" => {
            if fields.len() != 1 {
                return Err(err("SHIFT takes one argument"));
            }
            Ok(LazyPerm::shift(parse_int(fields[0])?))
        }
        "SIGMA_INF" => LazyPerm::sigma_infinite(&CycleTypeSpec::parse(interior)?),
        "SIGMA_FIN" => LazyPerm::sigma_finite(&CycleTypeSpec::parse(interior)?),
        "CONJ" => {
            if fields.len() < 3 {
                return Err(err("CONJ takes a regime, a spec and a seed"));
            }
            let mode = parse_mode(fields[0])?;
            let seed = parse_int(fields[fields.len() - 1])?;
            let spec = CycleTypeSpec::parse(&fields[1..fields.len() - 1].join(","))?;
            let (tau, psi) = make_families(mode, &spec)?;
            // Reject regime/spec mismatches exactly like the constructor.
            if spec.case() != mode {
                return Err(EvalError::WrongBuilder { expected: spec.case(), spec: spec.to_string() });
            }
            Ok(LazyPerm::from_node(Node::Conj { mode, spec, seed, tau, psi }))
        }
        "INV" => {
            if fields.len() != 1 {
                return Err(err("INV takes one expression"));
            }
            Ok(parse_expr(fields[0])?.inverse())
        }
        "COMP" => {
            if fields.len() != 2 {
                return Err(err("COMP takes two expressions"));
            }
            Ok(parse_expr(fields[0])?.after(&parse_expr(fields[1])?))
        }
        "ROOT" => {
            if fields.len() != 2 {
                return Err(err("ROOT takes a family id and a group size"));
            }
            let (family, start, repeating, seed) = parse_family_id(fields[0])?;
            let group = fields[1]
                .parse::<u64>()
                .map_err(|_| err(format!("expected a group size, found `{}`", fields[1])))?;
            LazyPerm::root(family, start, group, repeating, seed)
        }
        "POW" => {
            if fields.len() != 2 {
                return Err(err("POW takes an expression and an exponent"));
            }
            Ok(parse_expr(fields[0])?.pow(parse_int(fields[1])?))
        }
        other => Err(err(format!("unknown constructor `{other}`"))),
    }
}
