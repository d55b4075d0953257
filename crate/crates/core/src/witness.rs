//! Witness files: plain-text covering certificates that re-verify from the
//! file alone.
//!
//! Format (line-oriented, machine-emitted, no comments):
//!
//! ```text
//! covering witness v1
//! surface orientable g=1 k=1
//! n 5                        # or: n inf
//! class 5                    # finite problems; infinite ones use spec lines
//! transitive                 # claims, present only when made
//! regular
//! a1 (1 2 3 4 5)             # handle images a_i, b_i
//! b1 (1 3 5 2 4)
//! s1 (1 4 2 5 3)             # boundary images s_1..s_k; v_j for cross-caps
//! checksum 7be0…             # sha256 of every byte above this line
//! ```
//!
//! Infinite witnesses carry lazy-permutation expressions instead of cycle
//! notation, plus the verification parameters (`window`, `pointbudget`,
//! `censusbudget`, `transitivitywindow`, `wordbudget`, `nodecap`) so that
//! verification is reproducible with no out-of-band state.
//!
//! Verification checks the checksum first, then rebuilds the covering data
//! and re-runs the structural checks: boundary classes, the surface
//! relator, and any transitivity or regularity claims.

use std::fmt::Write as _;

use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::extend_infinite::{InfWitness, WitnessChecks, WitnessError};
use crate::lazy::{parse_expr, write_expr, CycleTypeSpec, LazyPerm};
use crate::perm::{generated_subgroup, is_transitive, CycleType, Perm};
use crate::problem::{parse_degree, parse_surface, Degree};
use crate::surface::{check_representation, SurfaceRep, SurfaceSpec};

/// The covering data carried by a witness file.
#[derive(Clone, Debug)]
pub enum WitnessBody {
    Finite(SurfaceRep),
    Infinite(InfWitness),
}

/// A parsed witness file.
#[derive(Clone, Debug)]
pub struct WitnessDoc {
    pub surface: SurfaceSpec,
    pub degree: Degree,
    /// Boundary classes the witness claims to realize (finite degree).
    pub classes: Vec<CycleType>,
    /// Boundary cycle-type specifications (infinite degree).
    pub specs: Vec<CycleTypeSpec>,
    /// Claim: the covering is connected (images act transitively).
    pub transitive: bool,
    /// Claim: the covering is regular (image group order equals degree).
    pub regular: bool,
    /// Seed used by the construction; informational.
    pub seed: i64,
    /// Verification parameters for infinite witnesses.
    pub checks: WitnessChecks,
    pub body: WitnessBody,
}

#[derive(Debug, Error)]
pub enum WitnessFileError {
    #[error("missing checksum line")]
    MissingChecksum,
    #[error("checksum mismatch: the file does not match its digest")]
    ChecksumMismatch,
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("generator lines do not fit the surface: {0}")]
    Shape(String),
    #[error("boundary image {index} does not lie in the claimed class")]
    ClassMismatch { index: usize },
    #[error("relator is not the identity")]
    RelatorBroken,
    #[error("images do not act transitively, contrary to the claim")]
    NotTransitive,
    #[error("image group order differs from the degree, contrary to the regularity claim")]
    NotRegular,
    #[error(transparent)]
    Infinite(#[from] WitnessError),
}

impl WitnessDoc {
    /// Wraps a finite covering representation.
    pub fn finite(
        rep: SurfaceRep,
        classes: Vec<CycleType>,
        transitive: bool,
        regular: bool,
    ) -> Self {
        WitnessDoc {
            surface: rep.spec.clone(),
            degree: Degree::Finite(rep.degree),
            classes,
            specs: Vec::new(),
            transitive,
            regular,
            seed: 0,
            checks: WitnessChecks::default(),
            body: WitnessBody::Finite(rep),
        }
    }

    /// Wraps an infinite witness together with its verification parameters.
    pub fn infinite(
        surface: SurfaceSpec,
        specs: Vec<CycleTypeSpec>,
        witness: InfWitness,
        seed: i64,
        checks: WitnessChecks,
    ) -> Self {
        WitnessDoc {
            surface,
            degree: Degree::Infinite,
            classes: Vec::new(),
            specs,
            transitive: witness.transitive,
            regular: false,
            seed,
            checks,
            body: WitnessBody::Infinite(witness),
        }
    }
}

fn surface_line(s: &SurfaceSpec) -> String {
    format!(
        "surface {} g={} k={}",
        if s.orientable { "orientable" } else { "nonorientable" },
        s.genus,
        s.boundary
    )
}

/// Serializes a witness document; the final line is the sha256 digest of
/// everything before it. Byte-for-byte deterministic.
pub fn emit(doc: &WitnessDoc) -> String {
    let mut out = String::new();
    let mut line = |s: String| {
        out.push_str(&s);
        out.push('\n');
    };
    line("covering witness v1".into());
    line(surface_line(&doc.surface));
    match doc.degree {
        Degree::Finite(n) => line(format!("n {n}")),
        Degree::Infinite => line("n inf".into()),
    }
    for c in &doc.classes {
        let parts: Vec<String> = c.parts().iter().map(|p| p.to_string()).collect();
        line(format!("class {}", parts.join(" ")));
    }
    for s in &doc.specs {
        line(format!("spec {s}"));
    }
    if doc.transitive {
        line("transitive".into());
    }
    if doc.regular {
        line("regular".into());
    }
    if doc.seed != 0 {
        line(format!("seed {}", doc.seed));
    }
    match &doc.body {
        WitnessBody::Finite(rep) => {
            for (i, (a, b)) in rep.handles.iter().enumerate() {
                line(format!("a{} {}", i + 1, a));
                line(format!("b{} {}", i + 1, b));
            }
            for (j, v) in rep.crosscaps.iter().enumerate() {
                line(format!("v{} {}", j + 1, v));
            }
            for (i, s) in rep.boundary.iter().enumerate() {
                line(format!("s{} {}", i + 1, s));
            }
        }
        WitnessBody::Infinite(w) => {
            let c = &doc.checks;
            line(format!("window {}", c.window));
            line(format!("pointbudget {}", c.per_point_budget));
            line(format!("censusbudget {}", c.census_budget));
            line(format!("transitivitywindow {}", c.transitivity_window));
            line(format!("wordbudget {}", c.word_budget));
            line(format!("nodecap {}", c.node_cap));
            for (i, (a, b)) in w.handles.iter().enumerate() {
                line(format!("a{} {}", i + 1, write_expr(a)));
                line(format!("b{} {}", i + 1, write_expr(b)));
            }
            for (j, v) in w.crosscaps.iter().enumerate() {
                line(format!("v{} {}", j + 1, write_expr(v)));
            }
            for (i, s) in w.boundaries.iter().enumerate() {
                line(format!("s{} {}", i + 1, write_expr(s)));
            }
        }
    }
    let digest = hex::encode(Sha256::digest(out.as_bytes()));
    let _ = writeln!(out, "checksum {digest}");
    out
}

/// Splits off and validates the checksum line, returning the covered text.
fn checked_prefix(text: &str) -> Result<&str, WitnessFileError> {
    let tail_start = text
        .trim_end()
        .rfind('\n')
        .map(|i| i + 1)
        .ok_or(WitnessFileError::MissingChecksum)?;
    let tail = text[tail_start..].trim_end();
    let hex_digest = tail.strip_prefix("checksum ").ok_or(WitnessFileError::MissingChecksum)?;
    let body = &text[..tail_start];
    let digest = hex::encode(Sha256::digest(body.as_bytes()));
    if !digest.eq_ignore_ascii_case(hex_digest.trim()) {
        return Err(WitnessFileError::ChecksumMismatch);
    }
    Ok(body)
}

/// Generator lines collected by role before assembly.
struct Slots<T> {
    a: Vec<(usize, T)>,
    b: Vec<(usize, T)>,
    v: Vec<(usize, T)>,
    s: Vec<(usize, T)>,
}

impl<T> Default for Slots<T> {
    fn default() -> Self {
        Slots { a: Vec::new(), b: Vec::new(), v: Vec::new(), s: Vec::new() }
    }
}

impl<T> Slots<T> {
    fn push(&mut self, role: char, index: usize, value: T) {
        let list = match role {
            'a' => &mut self.a,
            'b' => &mut self.b,
            'v' => &mut self.v,
            _ => &mut self.s,
        };
        list.push((index, value));
    }
}

/// Sorted values, requiring indices to be exactly 1..=len.
fn take<T>(mut list: Vec<(usize, T)>, role: char) -> Result<Vec<T>, WitnessFileError> {
    list.sort_by_key(|(i, _)| *i);
    for (pos, (i, _)) in list.iter().enumerate() {
        if *i != pos + 1 {
            return Err(WitnessFileError::Shape(format!(
                "{role} indices must be 1..{}, found {role}{i}",
                list.len()
            )));
        }
    }
    Ok(list.into_iter().map(|(_, v)| v).collect())
}

fn role_of(word: &str) -> Option<(char, usize)> {
    let mut chars = word.chars();
    let role = chars.next()?;
    if !matches!(role, 'a' | 'b' | 'v' | 's') {
        return None;
    }
    let rest = chars.as_str();
    if rest.is_empty() {
        return None;
    }
    let index: usize = rest.parse().ok()?;
    (index >= 1).then_some((role, index))
}

/// Parses a witness file, verifying its checksum but not yet the covering
/// claims; see [`verify`] for those.
pub fn parse(text: &str) -> Result<WitnessDoc, WitnessFileError> {
    let body = checked_prefix(text)?;
    let malformed =
        |line: usize, msg: String| WitnessFileError::Malformed { line, msg };

    let mut surface: Option<SurfaceSpec> = None;
    let mut degree: Option<Degree> = None;
    let mut classes: Vec<CycleType> = Vec::new();
    let mut specs: Vec<CycleTypeSpec> = Vec::new();
    let mut transitive = false;
    let mut regular = false;
    let mut seed: i64 = 0;
    let mut checks = WitnessChecks::default();
    let mut finite_slots: Slots<Perm> = Slots::default();
    let mut lazy_slots: Slots<LazyPerm> = Slots::default();
    let mut header_seen = false;

    for (idx, raw) in body.lines().enumerate() {
        let line = idx + 1;
        let content = raw.trim();
        if content.is_empty() {
            continue;
        }
        if !header_seen {
            if content != "covering witness v1" {
                return Err(malformed(line, "expected header `covering witness v1`".into()));
            }
            header_seen = true;
            continue;
        }
        let (word, rest) = match content.split_once(char::is_whitespace) {
            Some((w, r)) => (w, r.trim()),
            None => (content, ""),
        };
        match word {
            "surface" => {
                surface = Some(
                    parse_surface(line, rest).map_err(|e| malformed(line, e.to_string()))?,
                );
            }
            "n" => {
                degree =
                    Some(parse_degree(line, rest).map_err(|e| malformed(line, e.to_string()))?);
            }
            "class" => {
                let n = match degree {
                    Some(Degree::Finite(n)) => n,
                    _ => return Err(malformed(line, "class line before a finite `n`".into())),
                };
                let mut parts = Vec::new();
                for tok in rest.split_whitespace() {
                    parts.push(
                        tok.parse::<usize>()
                            .map_err(|_| malformed(line, format!("unreadable part {tok:?}")))?,
                    );
                }
                classes.push(
                    CycleType::new(parts, n).map_err(|e| malformed(line, e.to_string()))?,
                );
            }
            "spec" => {
                specs.push(
                    CycleTypeSpec::parse(rest).map_err(|e| malformed(line, e.to_string()))?,
                );
            }
            "transitive" => transitive = true,
            "regular" => regular = true,
            "seed" => {
                seed = rest
                    .parse::<i64>()
                    .map_err(|_| malformed(line, format!("unreadable seed {rest:?}")))?;
            }
            "window" | "pointbudget" | "censusbudget" | "transitivitywindow" | "wordbudget"
            | "nodecap" => {
                let v = rest
                    .parse::<u64>()
                    .map_err(|_| malformed(line, format!("unreadable value {rest:?}")))?;
                match word {
                    "window" => checks.window = v as i64,
                    "pointbudget" => checks.per_point_budget = v,
                    "censusbudget" => checks.census_budget = v,
                    "transitivitywindow" => checks.transitivity_window = v as i64,
                    "wordbudget" => checks.word_budget = v as usize,
                    _ => checks.node_cap = v as usize,
                }
            }
            _ => match role_of(word) {
                Some((role, index)) => match degree {
                    Some(Degree::Finite(n)) => {
                        let p = Perm::parse(n, rest)
                            .map_err(|e| malformed(line, e.to_string()))?;
                        finite_slots.push(role, index, p);
                    }
                    Some(Degree::Infinite) => {
                        let e = parse_expr(rest)
                            .map_err(|e| malformed(line, e.to_string()))?;
                        lazy_slots.push(role, index, e);
                    }
                    None => {
                        return Err(malformed(line, "generator line before the `n` line".into()))
                    }
                },
                None => return Err(malformed(line, format!("unknown directive {word:?}"))),
            },
        }
    }

    let surface = surface
        .ok_or_else(|| malformed(0, "missing surface line".into()))?;
    let degree = degree.ok_or_else(|| malformed(0, "missing degree line".into()))?;

    let body = match degree {
        Degree::Finite(_) => {
            let a = take(finite_slots.a, 'a')?;
            let b = take(finite_slots.b, 'b')?;
            let v = take(finite_slots.v, 'v')?;
            let s = take(finite_slots.s, 's')?;
            if a.len() != b.len() {
                return Err(WitnessFileError::Shape(format!(
                    "{} a-lines but {} b-lines",
                    a.len(),
                    b.len()
                )));
            }
            let rep = if surface.orientable {
                if !v.is_empty() {
                    return Err(WitnessFileError::Shape(
                        "cross-cap lines on an orientable surface".into(),
                    ));
                }
                SurfaceRep::orientable(surface.genus, a.into_iter().zip(b).collect(), s)
            } else {
                if !a.is_empty() {
                    return Err(WitnessFileError::Shape(
                        "handle lines on a non-orientable surface".into(),
                    ));
                }
                SurfaceRep::non_orientable(surface.genus, v, s)
            }
            .map_err(|e| WitnessFileError::Shape(e.to_string()))?;
            WitnessBody::Finite(rep)
        }
        Degree::Infinite => {
            let a = take(lazy_slots.a, 'a')?;
            let b = take(lazy_slots.b, 'b')?;
            let v = take(lazy_slots.v, 'v')?;
            let s = take(lazy_slots.s, 's')?;
            if a.len() != b.len() {
                return Err(WitnessFileError::Shape(format!(
                    "{} a-lines but {} b-lines",
                    a.len(),
                    b.len()
                )));
            }
            let expect_handles = if surface.orientable { surface.genus } else { 0 };
            let expect_caps = if surface.orientable { 0 } else { surface.genus };
            if a.len() != expect_handles || v.len() != expect_caps {
                return Err(WitnessFileError::Shape(format!(
                    "{} handle pairs and {} cross-caps for {}",
                    a.len(),
                    v.len(),
                    surface_line(&surface)
                )));
            }
            WitnessBody::Infinite(InfWitness {
                handles: a.into_iter().zip(b).collect(),
                crosscaps: v,
                boundaries: s,
                transitive,
            })
        }
    };

    Ok(WitnessDoc {
        surface,
        degree,
        classes,
        specs,
        transitive,
        regular,
        seed,
        checks,
        body,
    })
}

/// Re-runs every check a witness claims, using only the document.
pub fn verify(doc: &WitnessDoc) -> Result<(), WitnessFileError> {
    match &doc.body {
        WitnessBody::Finite(rep) => {
            if doc.classes.len() != rep.boundary.len() {
                return Err(WitnessFileError::Shape(format!(
                    "{} class lines but {} boundary images",
                    doc.classes.len(),
                    rep.boundary.len()
                )));
            }
            if rep.spec != doc.surface {
                return Err(WitnessFileError::Shape(
                    "surface line disagrees with the generator lines".into(),
                ));
            }
            for (index, (s, c)) in rep.boundary.iter().zip(&doc.classes).enumerate() {
                if s.cycle_type() != *c {
                    return Err(WitnessFileError::ClassMismatch { index });
                }
            }
            if !check_representation(rep) {
                return Err(WitnessFileError::RelatorBroken);
            }
            let images = rep.all_images();
            if doc.transitive && !is_transitive(&images, rep.degree) {
                return Err(WitnessFileError::NotTransitive);
            }
            if doc.regular {
                match generated_subgroup(&images, rep.degree) {
                    Some(g) if g.len() == rep.degree => {}
                    _ => return Err(WitnessFileError::NotRegular),
                }
            }
            Ok(())
        }
        WitnessBody::Infinite(w) => {
            if doc.specs.len() != w.boundaries.len() {
                return Err(WitnessFileError::Shape(format!(
                    "{} spec lines but {} boundary expressions",
                    doc.specs.len(),
                    w.boundaries.len()
                )));
            }
            w.verify(&doc.specs, &doc.checks)?;
            Ok(())
        }
    }
}

/// Parses and verifies in one step: the full `verify` command path.
pub fn verify_text(text: &str) -> Result<WitnessDoc, WitnessFileError> {
    let doc = parse(text)?;
    verify(&doc)?;
    Ok(doc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extend_infinite::{decide_orientable_positive_genus, InfOptions, Status};
    use crate::perm::class_elements;

    fn five_cycle_doc() -> WitnessDoc {
        let sigma = Perm::parse(5, "(1 2 3 4 5)").unwrap();
        let (a, b) = crate::extend_finite::commutator_witness(
            &sigma,
            true,
            &crate::extend_finite::SearchOptions::default(),
        )
        .unwrap()
        .unwrap();
        let rep = SurfaceRep::orientable(1, vec![(a, b)], vec![sigma.inverse()]).unwrap();
        let class = rep.boundary[0].cycle_type();
        WitnessDoc::finite(rep, vec![class], true, false)
    }

    #[test]
    fn finite_round_trip_re_verifies() {
        let doc = five_cycle_doc();
        let text = emit(&doc);
        let parsed = verify_text(&text).expect("emitted witness verifies");
        assert_eq!(emit(&parsed), text, "round trip is byte-identical");
    }

    #[test]
    fn infinite_round_trip_re_verifies() {
        let spec = CycleTypeSpec::parse("inf:1").unwrap();
        let checks = WitnessChecks {
            window: 5,
            per_point_budget: 1 << 20,
            census_budget: 1 << 24,
            transitivity_window: 2,
            word_budget: 60,
            node_cap: 50_000,
        };
        let opts = InfOptions { seed: 0, checks, ..InfOptions::default() };
        let surface = SurfaceSpec::new(true, 1, 1).unwrap();
        let verdict =
            decide_orientable_positive_genus(&surface, &[spec.clone()], &opts).unwrap();
        assert_eq!(verdict.status, Status::Extends);
        let doc =
            WitnessDoc::infinite(surface, vec![spec], verdict.witness.unwrap(), 0, checks);
        let text = emit(&doc);
        let parsed = verify_text(&text).expect("emitted witness verifies");
        assert_eq!(emit(&parsed), text);
    }

    #[test]
    fn tampered_permutation_entry_is_detected() {
        let text = emit(&five_cycle_doc());
        // Flip one digit inside the boundary line.
        let pos = text.rfind("s1 ").expect("boundary line") + 4;
        let mut bytes = text.into_bytes();
        let original = bytes[pos];
        bytes[pos] = if original == b'2' { b'3' } else { b'2' };
        let tampered = String::from_utf8(bytes).unwrap();
        assert!(matches!(
            verify_text(&tampered),
            Err(WitnessFileError::ChecksumMismatch)
        ));
    }

    #[test]
    fn recomputed_checksum_does_not_mask_broken_claims() {
        // Re-sign a semantically broken file: checksum passes, claims fail.
        let doc = five_cycle_doc();
        let text = emit(&doc);
        let body_end = text.rfind("checksum").unwrap();
        let mut body = text[..body_end].to_string();
        body = body.replace("s1 (1 5 4 3 2)", "s1 (1 4 5 3 2)");
        let digest = hex::encode(Sha256::digest(body.as_bytes()));
        let resigned = format!("{body}checksum {digest}\n");
        assert!(matches!(
            verify_text(&resigned),
            Err(WitnessFileError::RelatorBroken | WitnessFileError::ClassMismatch { .. })
        ));
    }

    #[test]
    fn false_transitivity_claim_is_caught() {
        // Two disjoint 2-cycles on 4 points: valid rep, intransitive.
        let s = Perm::parse(4, "(1 2)(3 4)").unwrap();
        let rep =
            SurfaceRep::orientable(0, vec![], vec![s.clone(), s.inverse()]).unwrap();
        let classes = vec![s.cycle_type(), s.cycle_type()];
        let doc = WitnessDoc::finite(rep, classes, true, false);
        assert!(matches!(verify(&doc), Err(WitnessFileError::NotTransitive)));
    }

    #[test]
    fn regularity_claim_is_checked() {
        // A transposition in S_3 generates order 2 ≠ 3.
        let t = Perm::parse(3, "(1 2)").unwrap();
        let rep = SurfaceRep::orientable(0, vec![], vec![t.clone(), t.inverse()]).unwrap();
        let doc = WitnessDoc::finite(rep, vec![t.cycle_type(), t.cycle_type()], false, true);
        assert!(matches!(verify(&doc), Err(WitnessFileError::NotRegular)));

        // A 3-cycle generates the full deck group of order 3.
        let c = class_elements(&CycleType::new(vec![3], 3).unwrap())[0].clone();
        let rep = SurfaceRep::orientable(0, vec![], vec![c.clone(), c.inverse()]).unwrap();
        let doc = WitnessDoc::finite(rep, vec![c.cycle_type(), c.cycle_type()], true, true);
        verify(&doc).expect("cyclic witness is regular");
    }

    #[test]
    fn malformed_files_report_lines() {
        let missing = "covering witness v1\nsurface orientable g=1 k=1\nn 5\n";
        assert!(matches!(parse(missing), Err(WitnessFileError::MissingChecksum)));

        let doc = five_cycle_doc();
        let text = emit(&doc).replace("covering witness v1", "covering witness v9");
        // Header change breaks the checksum first.
        assert!(matches!(parse(&text), Err(WitnessFileError::ChecksumMismatch)));

        let body = "covering witness v9\n";
        let digest = hex::encode(Sha256::digest(body.as_bytes()));
        let signed = format!("{body}checksum {digest}\n");
        assert!(matches!(
            parse(&signed),
            Err(WitnessFileError::Malformed { line: 1, .. })
        ));
    }
}
