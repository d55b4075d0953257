//! Extension of finite boundary coverings across a surface.
//!
//! Given conjugacy classes `C_1..C_k` in `S_n` prescribing the monodromy
//! around each boundary circle:
//! - on a planar surface the covering extends iff some representatives
//!   multiply to the identity (decided exactly by the character count);
//! - on an orientable surface of positive genus it extends iff the class
//!   signs multiply to `+1`, since handles absorb any even product as a
//!   commutator.
//!
//! Searches scan a canonically ordered candidate space and return the
//! first hit; a truncated scan that finds nothing reports budget
//! exhaustion rather than absence.

use num::bigint::BigUint;
use num::Zero;
use thiserror::Error;

use crate::chars::{frobenius_count_with, CharError};
use crate::exec::{decode_mixed_radix, find_first_index, space_size, ExecMode};
use crate::perm::{all_perms, class_elements, is_transitive, CycleType, Perm};
use crate::surface::{SurfaceError, SurfaceRep};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExtendError {
    #[error("search budget exhausted")]
    BudgetExhausted,
    #[error("no boundary classes given")]
    NoBoundary,
    #[error("genus must be positive here")]
    GenusZero,
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error(transparent)]
    Char(#[from] CharError),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
}

/// Options shared by the representative searches.
#[derive(Debug, Clone, Copy)]
pub struct SearchOptions {
    /// Maximum number of candidates examined, as a prefix of the
    /// canonical ordering; identical in both execution modes.
    pub node_budget: u64,
    pub mode: ExecMode,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            node_budget: 1_000_000,
            mode: ExecMode::default(),
        }
    }
}

fn check_same_degree(classes: &[CycleType]) -> Result<usize, ExtendError> {
    let n = classes.first().ok_or(ExtendError::NoBoundary)?.degree();
    for c in classes {
        if c.degree() != n {
            return Err(ExtendError::DegreeMismatch(c.degree(), n));
        }
    }
    Ok(n)
}

/// Planar decision: `(extends, exact tuple count)`.
pub fn decide_planar(classes: &[CycleType]) -> Result<(bool, BigUint), ExtendError> {
    decide_planar_with(classes, ExecMode::default())
}

pub fn decide_planar_with(
    classes: &[CycleType],
    mode: ExecMode,
) -> Result<(bool, BigUint), ExtendError> {
    check_same_degree(classes)?;
    let count = frobenius_count_with(classes, mode)?;
    Ok((!count.is_zero(), count))
}

/// First representative tuple `(s_1..s_k)` with `s_i` in `C_i` and
/// `s_1...s_k = e`, in lexicographic order of the free coordinates.
/// `Ok(None)` means the whole space was scanned and no tuple exists.
pub fn witness_planar(
    classes: &[CycleType],
    require_transitive: bool,
    opts: &SearchOptions,
) -> Result<Option<Vec<Perm>>, ExtendError> {
    let n = check_same_degree(classes)?;
    let k = classes.len();
    let free: Vec<Vec<Perm>> = classes[..k - 1].iter().map(class_elements).collect();
    let radices: Vec<u64> = free.iter().map(|c| c.len() as u64).collect();
    let total = space_size(&radices);
    let limit = total.min(opts.node_budget);
    let last = &classes[k - 1];

    let tuple_at = |idx: u64| -> Vec<Perm> {
        let digits = decode_mixed_radix(idx, &radices);
        digits
            .iter()
            .zip(&free)
            .map(|(&d, c)| c[d as usize].clone())
            .collect()
    };
    let accept = |idx: u64| -> bool {
        let tuple = tuple_at(idx);
        let prod = tuple
            .iter()
            .fold(Perm::identity(n), |acc, s| acc.compose(s));
        let forced = prod.inverse();
        if forced.cycle_type() != *last {
            return false;
        }
        if require_transitive {
            let mut gens = tuple;
            gens.push(forced);
            return is_transitive(&gens, n);
        }
        true
    };

    match find_first_index(limit, opts.mode, accept) {
        Some(idx) => {
            let mut tuple = tuple_at(idx);
            let prod = tuple
                .iter()
                .fold(Perm::identity(n), |acc, s| acc.compose(s));
            tuple.push(prod.inverse());
            Ok(Some(tuple))
        }
        None if limit < total => Err(ExtendError::BudgetExhausted),
        None => Ok(None),
    }
}

/// Positive-genus orientable rule: extends iff the class signs multiply
/// to `+1`.
pub fn decide_nonplanar(classes: &[CycleType], genus: usize) -> Result<bool, ExtendError> {
    check_same_degree(classes)?;
    if genus == 0 {
        return Err(ExtendError::GenusZero);
    }
    let sign: i32 = classes.iter().map(|c| c.sign() as i32).product();
    Ok(sign == 1)
}

/// A pair `(a, b)` with `[a, b] = sigma`, or `Ok(None)` for odd `sigma`.
///
/// Candidates for `a` are the full cycles first: if `a^-1 sigma` is again
/// a full cycle, conjugating it onto `a^-1` solves for `b`, and `<a>`
/// alone is already transitive. A bounded scan over all pairs backs the
/// heuristic up.
pub fn commutator_witness(
    sigma: &Perm,
    require_transitive: bool,
    opts: &SearchOptions,
) -> Result<Option<(Perm, Perm)>, ExtendError> {
    let n = sigma.degree();
    if sigma.sign() < 0 {
        return Ok(None);
    }
    let full_cycle = CycleType::new(vec![n], n).expect("n >= 1");
    let n_cycles: Vec<Perm> = if n > 0 { class_elements(&full_cycle) } else { vec![] };

    let solve = |a: &Perm| -> Option<(Perm, Perm)> {
        // [a, b] = sigma  <=>  b a^-1 b^-1 = a^-1 sigma, a conjugacy
        // equation in q = b^-1.
        let target = a.inverse().compose(sigma);
        let q = Perm::conjugating_perm(&a.inverse(), &target)?;
        let b = q.inverse();
        debug_assert_eq!(Perm::commutator(a, &b), *sigma);
        Some((a.clone(), b))
    };

    // Phase 1: full cycles. a n-cycle makes the pair transitive for free,
    // and works whenever a^-1 sigma is itself an n-cycle.
    let phase1_limit = (n_cycles.len() as u64).min(opts.node_budget);
    let hit = find_first_index(phase1_limit, opts.mode, |i| {
        let a = &n_cycles[i as usize];
        a.inverse().compose(sigma).cycle_type() == full_cycle
    });
    if let Some(i) = hit {
        let a = &n_cycles[i as usize];
        return Ok(solve(a).map(|(a, b)| (a, b)));
    }

    // Phase 2: every a whose inverse-shifted target is conjugate back to
    // a. Scanned in lexicographic order under the remaining budget.
    let all: Vec<Perm> = all_perms(n).collect();
    let remaining = opts.node_budget.saturating_sub(phase1_limit);
    let total = all.len() as u64;
    let limit = total.min(remaining);
    let accept = |i: u64| -> bool {
        let a = &all[i as usize];
        let target = a.inverse().compose(sigma);
        if target.cycle_type() != a.cycle_type() {
            return false;
        }
        match solve(a) {
            Some((aa, bb)) => !require_transitive || is_transitive(&[aa, bb], n),
            None => false,
        }
    };
    match find_first_index(limit, opts.mode, accept) {
        Some(i) => Ok(solve(&all[i as usize])),
        None if limit < total => Err(ExtendError::BudgetExhausted),
        None => Ok(None),
    }
}

/// Explicit covering representation for an orientable surface of genus
/// `g` with boundary classes `C_1..C_k`, when one exists. All handles
/// beyond the first carry the identity.
pub fn extend_representation(
    genus: usize,
    classes: &[CycleType],
    connected: bool,
    opts: &SearchOptions,
) -> Result<Option<SurfaceRep>, ExtendError> {
    let n = check_same_degree(classes)?;
    if genus == 0 {
        let tuple = match witness_planar(classes, connected, opts)? {
            Some(t) => t,
            None => return Ok(None),
        };
        return Ok(Some(SurfaceRep::orientable(0, vec![], tuple)?));
    }
    if !decide_nonplanar(classes, genus)? {
        return Ok(None);
    }

    // Scan representative tuples; each even product admits a commutator
    // pair, so the first tuple nearly always succeeds.
    let elems: Vec<Vec<Perm>> = classes.iter().map(class_elements).collect();
    let radices: Vec<u64> = elems.iter().map(|c| c.len() as u64).collect();
    let total = space_size(&radices);
    let limit = total.min(opts.node_budget);
    let build = |idx: u64| -> Option<SurfaceRep> {
        let digits = decode_mixed_radix(idx, &radices);
        let tuple: Vec<Perm> = digits
            .iter()
            .zip(&elems)
            .map(|(&d, c)| c[d as usize].clone())
            .collect();
        let prod = tuple
            .iter()
            .fold(Perm::identity(n), |acc, s| acc.compose(s));
        let delta = prod.inverse();
        let (a, b) = match commutator_witness(&delta, false, opts) {
            Ok(Some(pair)) => pair,
            _ => return None,
        };
        let mut handles = vec![(a, b)];
        handles.resize(genus, (Perm::identity(n), Perm::identity(n)));
        let rep = SurfaceRep::orientable(genus, handles, tuple).ok()?;
        if connected {
            let images = rep.all_images();
            if !is_transitive(&images, n) {
                return None;
            }
        }
        debug_assert!(crate::surface::check_representation(&rep));
        Some(rep)
    };
    match find_first_index(limit, opts.mode, |i| build(i).is_some()) {
        Some(i) => Ok(build(i)),
        None if limit < total => Err(ExtendError::BudgetExhausted),
        None => Ok(None),
    }
}

/// Bounded witness search for non-orientable surfaces: scans cross-cap
/// tuples and free boundary representatives in lexicographic order.
/// `Ok(None)` is exhaustive absence; callers must treat a budget error
/// as inconclusive, not as a refusal.
pub fn non_orientable_witness(
    genus: usize,
    classes: &[CycleType],
    connected: bool,
    opts: &SearchOptions,
) -> Result<Option<SurfaceRep>, ExtendError> {
    let n = check_same_degree(classes)?;
    if genus == 0 {
        return Err(ExtendError::GenusZero);
    }
    let k = classes.len();
    let all: Vec<Perm> = all_perms(n).collect();
    let free: Vec<Vec<Perm>> = classes[..k - 1].iter().map(class_elements).collect();
    let mut radices: Vec<u64> = vec![all.len() as u64; genus];
    radices.extend(free.iter().map(|c| c.len() as u64));
    let total = space_size(&radices);
    let limit = total.min(opts.node_budget);
    let last = &classes[k - 1];

    let build = |idx: u64| -> Option<SurfaceRep> {
        let digits = decode_mixed_radix(idx, &radices);
        let caps: Vec<Perm> = digits[..genus]
            .iter()
            .map(|&d| all[d as usize].clone())
            .collect();
        let mut acc = Perm::identity(n);
        for v in &caps {
            acc = acc.compose(v).compose(v);
        }
        let mut boundary: Vec<Perm> = Vec::with_capacity(k);
        for (&d, c) in digits[genus..].iter().zip(&free) {
            boundary.push(c[d as usize].clone());
        }
        let prefix = boundary
            .iter()
            .fold(Perm::identity(n), |a, s| a.compose(s));
        // v_1^2..v_g^2 s_1..s_k = e forces the last boundary image.
        let forced = prefix.inverse().compose(&acc.inverse());
        if forced.cycle_type() != *last {
            return None;
        }
        boundary.push(forced);
        let rep = SurfaceRep::non_orientable(genus, caps, boundary).ok()?;
        if connected && !is_transitive(&rep.all_images(), n) {
            return None;
        }
        debug_assert!(crate::surface::check_representation(&rep));
        Some(rep)
    };
    match find_first_index(limit, opts.mode, |i| build(i).is_some()) {
        Some(i) => Ok(build(i)),
        None if limit < total => Err(ExtendError::BudgetExhausted),
        None => Ok(None),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::check_representation;

    fn ct(parts: &[usize], n: usize) -> CycleType {
        CycleType::new(parts.to_vec(), n).unwrap()
    }

    fn p(n: usize, s: &str) -> Perm {
        Perm::parse(n, s).unwrap()
    }

    #[test]
    fn planar_three_cycles_in_s3() {
        let c3 = ct(&[3], 3);
        let (ok, count) = decide_planar(&[c3.clone(), c3.clone(), c3.clone()]).unwrap();
        assert!(ok);
        assert_eq!(count, BigUint::from(2u32));
        let w = witness_planar(&[c3.clone(), c3.clone(), c3], false, &SearchOptions::default())
            .unwrap()
            .unwrap();
        let expected = p(3, "(1 2 3)");
        assert_eq!(w, vec![expected.clone(), expected.clone(), expected]);
    }

    #[test]
    fn planar_odd_product_is_empty() {
        let tr = ct(&[2, 1], 3);
        let classes = [tr.clone(), tr.clone(), tr];
        let (ok, count) = decide_planar(&classes).unwrap();
        assert!(!ok);
        assert!(count.is_zero());
        assert_eq!(
            witness_planar(&classes, false, &SearchOptions::default()).unwrap(),
            None
        );
    }

    #[test]
    fn transitivity_filter_can_empty_a_class_pair() {
        let tr = ct(&[2, 1], 3);
        let classes = [tr.clone(), tr];
        assert!(witness_planar(&classes, false, &SearchOptions::default())
            .unwrap()
            .is_some());
        assert_eq!(
            witness_planar(&classes, true, &SearchOptions::default()).unwrap(),
            None
        );
    }

    #[test]
    fn witness_agrees_with_decision_on_s4() {
        use itertools::Itertools;
        let types: Vec<CycleType> = all_perms(4)
            .map(|q| q.cycle_type())
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect();
        for k in 1..=2 {
            for combo in (0..types.len()).combinations_with_replacement(k) {
                let classes: Vec<CycleType> = combo.iter().map(|&i| types[i].clone()).collect();
                let (ok, _) = decide_planar(&classes).unwrap();
                let w = witness_planar(&classes, false, &SearchOptions::default()).unwrap();
                assert_eq!(ok, w.is_some(), "classes {classes:?}");
                if let Some(tuple) = w {
                    let prod = tuple
                        .iter()
                        .fold(Perm::identity(4), |a, s| a.compose(s));
                    assert!(prod.is_identity());
                    for (s, c) in tuple.iter().zip(&classes) {
                        assert_eq!(s.cycle_type(), *c);
                    }
                }
            }
        }
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let c3 = ct(&[2, 1], 3);
        let opts = SearchOptions {
            node_budget: 0,
            mode: ExecMode::Sequential,
        };
        assert_eq!(
            witness_planar(&[c3.clone(), c3], false, &opts),
            Err(ExtendError::BudgetExhausted)
        );
    }

    #[test]
    fn nonplanar_parity_rule() {
        assert!(decide_nonplanar(&[ct(&[3], 3)], 1).unwrap());
        assert!(!decide_nonplanar(&[ct(&[2, 1], 3)], 1).unwrap());
        assert!(decide_nonplanar(&[ct(&[2, 1], 3), ct(&[2, 1], 3)], 2).unwrap());
        assert!(decide_nonplanar(&[ct(&vec![1; 4], 4)], 5).unwrap());
    }

    #[test]
    fn commutator_witness_hits_even_elements() {
        let sigma = p(3, "(1 2 3)");
        let (a, b) = commutator_witness(&sigma, true, &SearchOptions::default())
            .unwrap()
            .unwrap();
        assert_eq!(Perm::commutator(&a, &b), sigma);
        assert!(is_transitive(&[a, b], 3));
    }

    #[test]
    fn commutator_witness_rejects_odd() {
        let sigma = p(4, "(1 2)");
        assert_eq!(
            commutator_witness(&sigma, false, &SearchOptions::default()).unwrap(),
            None
        );
    }

    #[test]
    fn commutator_witness_covers_a5() {
        for sigma in all_perms(5).filter(|q| q.sign() > 0) {
            let (a, b) = commutator_witness(&sigma, true, &SearchOptions::default())
                .unwrap()
                .unwrap_or_else(|| panic!("no witness for {sigma}"));
            assert_eq!(Perm::commutator(&a, &b), sigma);
            assert!(is_transitive(&[a, b], 5));
        }
    }

    #[test]
    fn extended_representation_is_valid() {
        let rep = extend_representation(1, &[ct(&[3], 3)], true, &SearchOptions::default())
            .unwrap()
            .unwrap();
        assert!(check_representation(&rep));
        assert_eq!(rep.boundary[0].cycle_type().parts(), &[3]);
        assert!(is_transitive(&rep.all_images(), 3));
        // Odd class on one handle: no extension.
        assert!(
            extend_representation(1, &[ct(&[2, 1], 3)], false, &SearchOptions::default())
                .unwrap()
                .is_none()
        );
    }

    #[test]
    fn non_orientable_search_finds_mobius_cover() {
        let rep = non_orientable_witness(1, &[ct(&[1, 1], 2)], false, &SearchOptions::default())
            .unwrap()
            .unwrap();
        assert!(check_representation(&rep));
        // A transposition boundary needs sigma_1 = (v^2)^-1 odd: impossible.
        assert!(
            non_orientable_witness(1, &[ct(&[2], 2)], false, &SearchOptions::default())
                .unwrap()
                .is_none()
        );
    }
}
