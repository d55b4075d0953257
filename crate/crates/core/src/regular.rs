//! Regular (Galois) covering checks and witness searches.
//!
//! A degree-`n` covering is regular when its deck group acts transitively
//! on fibers, equivalently when the monodromy images generate a group of
//! order `n` acting freely and transitively.  This module provides:
//!
//! * [`regular_witness_search`] — bounded exhaustive search for boundary
//!   representatives generating an order-`n` group.  Strict mode demands
//!   the boundary product be exactly the identity; relaxed mode demands
//!   transitivity and, on positive genus, lets the handles or cross-caps
//!   absorb the product as `g` commutators or `g` squares inside the group.
//! * [`regq_check`] — exhaustive confirmation that no nontrivial regular
//!   finite cover of a positive-genus one-boundary surface keeps a single
//!   boundary circle upstairs.
//! * [`abelian_boundary_components`] — boundary-circle count of an abelian
//!   regular cover with one boundary circle downstairs (the relator forces
//!   trivial boundary monodromy, so the count equals the degree).
//! * [`abelian_infinite_boundary_check`] — the same mechanism exposed as a
//!   rule with finite-quotient spot checks.

use std::collections::HashSet;

use thiserror::Error;

use crate::exec::{decode_mixed_radix, find_first_index, space_size, ExecMode};
use crate::perm::{all_perms, class_elements, generated_subgroup, is_transitive, CycleType, Perm};
use crate::surface::{SurfaceError, SurfaceRep, SurfaceSpec};

/// Largest degree the exhaustive searches accept.
pub const MAX_SEARCH_DEGREE: usize = 8;

#[derive(Debug, Error)]
pub enum RegularError {
    #[error("degree {0} outside the supported range 1..={MAX_SEARCH_DEGREE}")]
    DegreeBound(usize),
    #[error("class of degree {got} given for a degree-{want} search")]
    ClassDegree { got: usize, want: usize },
    #[error("{got} classes given for a surface with {want} boundary circles")]
    ClassCount { got: usize, want: usize },
    #[error("images do not pairwise commute")]
    NonAbelianImage,
    #[error("expected exactly one boundary circle, found {0}")]
    BoundaryCount(usize),
    #[error("representation is not regular: {0}")]
    NotRegular(&'static str),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
}

/// A representation found by [`regular_witness_search`].
#[derive(Clone, Debug)]
pub struct RegularWitness {
    pub rep: SurfaceRep,
    /// Whether the boundary images act transitively.  Relaxed mode only
    /// returns transitive witnesses; strict mode returns the first witness
    /// and flags intransitive ones here.
    pub transitive: bool,
}

/// Left-first product `γ₁ ⋯ γ_k` (finite-side convention).
fn product(perms: &[Perm], n: usize) -> Perm {
    perms.iter().fold(Perm::identity(n), |acc, p| acc.compose(p))
}

/// All values `[a, b]` (orientable) or `v²` (non-orientable) over a group.
fn factor_values(group: &[Perm], orientable: bool) -> Vec<Perm> {
    let mut seen = HashSet::new();
    if orientable {
        for a in group {
            for b in group {
                seen.insert(Perm::commutator(a, b));
            }
        }
    } else {
        for v in group {
            seen.insert(v.compose(v));
        }
    }
    let mut out: Vec<Perm> = seen.into_iter().collect();
    out.sort();
    out
}

/// Targets expressible as a left-first product of exactly `g` factor
/// values; index `j` of the returned list holds the `j`-factor products.
fn reachable_products(values: &[Perm], n: usize, g: usize) -> Vec<HashSet<Perm>> {
    let mut layers: Vec<HashSet<Perm>> = Vec::with_capacity(g + 1);
    layers.push(HashSet::from([Perm::identity(n)]));
    for _ in 0..g {
        let prev = layers.last().unwrap();
        let mut next = HashSet::new();
        for p in prev {
            for v in values {
                next.insert(p.compose(v));
            }
        }
        layers.push(next);
    }
    layers
}

/// Writes `target` as a left-first product of `g` commutators over the
/// group, returning the realizing pairs.
fn realize_commutators(group: &[Perm], target: &Perm, g: usize) -> Option<Vec<(Perm, Perm)>> {
    let n = target.degree();
    let values = factor_values(group, true);
    let layers = reachable_products(&values, n, g);
    let mut pairs = Vec::with_capacity(g);
    let mut rest = target.clone();
    for level in (0..g).rev() {
        let (a, b) = group.iter().find_map(|a| {
            group.iter().find_map(|b| {
                let tail = Perm::commutator(a, b).inverse().compose(&rest);
                layers[level].contains(&tail).then(|| (a.clone(), b.clone()))
            })
        })?;
        rest = Perm::commutator(&a, &b).inverse().compose(&rest);
        pairs.push((a, b));
    }
    rest.is_identity().then_some(pairs)
}

/// Writes `target` as a left-first product of `g` squares over the group.
fn realize_squares(group: &[Perm], target: &Perm, g: usize) -> Option<Vec<Perm>> {
    let n = target.degree();
    let values = factor_values(group, false);
    let layers = reachable_products(&values, n, g);
    let mut roots = Vec::with_capacity(g);
    let mut rest = target.clone();
    for level in (0..g).rev() {
        let v = group.iter().find(|v| {
            let tail = v.compose(v).inverse().compose(&rest);
            layers[level].contains(&tail)
        })?;
        rest = v.compose(v).inverse().compose(&rest);
        roots.push(v.clone());
    }
    rest.is_identity().then_some(roots)
}

fn identity_handles(n: usize, genus: usize) -> Vec<(Perm, Perm)> {
    (0..genus).map(|_| (Perm::identity(n), Perm::identity(n))).collect()
}

/// Assembles the representation for a chosen boundary tuple; relaxed mode
/// searches the generated group for handle or cross-cap realizers.
fn assemble(
    spec: &SurfaceSpec,
    boundary: Vec<Perm>,
    group: &[Perm],
    n: usize,
    strict: bool,
) -> Option<RegularWitness> {
    let pi = product(&boundary, n);
    let rep = if strict || spec.genus == 0 {
        if !pi.is_identity() {
            return None;
        }
        if spec.orientable {
            SurfaceRep::orientable(spec.genus, identity_handles(n, spec.genus), boundary)
        } else {
            SurfaceRep::non_orientable(
                spec.genus,
                vec![Perm::identity(n); spec.genus],
                boundary,
            )
        }
    } else if spec.orientable {
        let handles = realize_commutators(group, &pi.inverse(), spec.genus)?;
        SurfaceRep::orientable(spec.genus, handles, boundary)
    } else {
        let crosscaps = realize_squares(group, &pi.inverse(), spec.genus)?;
        SurfaceRep::non_orientable(spec.genus, crosscaps, boundary)
    };
    let rep = rep.ok()?;
    let transitive = is_transitive(&rep.boundary, n);
    Some(RegularWitness { rep, transitive })
}

/// Tests one decoded choice of class representatives.  When the boundary
/// product is constrained to the identity the last representative is not
/// enumerated but forced to the inverse of the prefix product, filtered by
/// cycle type.
fn candidate(
    spec: &SurfaceSpec,
    classes: &[CycleType],
    pools: &[Vec<Perm>],
    choice: &[u64],
    n: usize,
    strict: bool,
    forced_last: bool,
) -> Option<RegularWitness> {
    let mut boundary: Vec<Perm> = pools
        .iter()
        .zip(choice)
        .map(|(pool, &i)| pool[i as usize].clone())
        .collect();
    if forced_last {
        let last = product(&boundary, n).inverse();
        if last.cycle_type() != classes[classes.len() - 1] {
            return None;
        }
        boundary.push(last);
    }
    let group = generated_subgroup(&boundary, n)?;
    if group.len() != n {
        return None;
    }
    if !strict && !is_transitive(&boundary, n) {
        return None;
    }
    assemble(spec, boundary, &group, n, strict)
}

/// Exhaustive deterministic search for boundary representatives of the
/// given classes that generate an order-`n` group and satisfy the surface
/// relator.
///
/// Strict mode requires the boundary product to be the identity outright
/// (handles and cross-caps are filled with identities).  Relaxed mode
/// requires the boundary images to act transitively and, for genus ≥ 1,
/// absorbs the product into `g` commutators (orientable) or `g` squares
/// (non-orientable) found inside the generated group.  The first witness
/// in enumeration order is returned; parallel and sequential modes agree.
///
/// Whenever the relator pins the product to the identity (strict mode, or
/// genus 0 where nothing can absorb it), the last representative is forced
/// rather than enumerated, shrinking the search space by one class size.
pub fn regular_witness_search(
    spec: &SurfaceSpec,
    classes: &[CycleType],
    n: usize,
    strict: bool,
    mode: ExecMode,
) -> Result<Option<RegularWitness>, RegularError> {
    if n == 0 || n > MAX_SEARCH_DEGREE {
        return Err(RegularError::DegreeBound(n));
    }
    if classes.len() != spec.boundary {
        return Err(RegularError::ClassCount { got: classes.len(), want: spec.boundary });
    }
    for class in classes {
        if class.degree() != n {
            return Err(RegularError::ClassDegree { got: class.degree(), want: n });
        }
    }
    let forced_last = (strict || spec.genus == 0) && !classes.is_empty();
    let free = if forced_last { &classes[..classes.len() - 1] } else { classes };
    let pools: Vec<Vec<Perm>> = free.iter().map(class_elements).collect();
    let radices: Vec<u64> = pools.iter().map(|p| p.len() as u64).collect();
    let limit = space_size(&radices);
    let found = find_first_index(limit, mode, |index| {
        let choice = decode_mixed_radix(index, &radices);
        candidate(spec, classes, &pools, &choice, n, strict, forced_last).is_some()
    });
    Ok(found.and_then(|index| {
        let choice = decode_mixed_radix(index, &radices);
        candidate(spec, classes, &pools, &choice, n, strict, forced_last)
    }))
}

/// Confirms that for `2 ≤ n ≤ n_max` no regular degree-`n` representation
/// of the orientable genus-`g` surface with one boundary circle has a
/// boundary image that is a single `n`-cycle.
///
/// A return of `false` would exhibit a nontrivial finite regular cover
/// with one boundary circle upstairs and downstairs, contradicting the
/// covering-space count, so `true` is the expected outcome.
pub fn regq_check(genus: usize, n_max: usize, mode: ExecMode) -> bool {
    assert!(genus >= 1, "positive genus required");
    for n in 2..=n_max.min(MAX_SEARCH_DEGREE) {
        let perms: Vec<Perm> = all_perms(n).collect();
        let radices = vec![perms.len() as u64; 2 * genus];
        let limit = space_size(&radices);
        let counterexample = find_first_index(limit, mode, |index| {
            let choice = decode_mixed_radix(index, &radices);
            let handles: Vec<(Perm, Perm)> = choice
                .chunks(2)
                .map(|ab| (perms[ab[0] as usize].clone(), perms[ab[1] as usize].clone()))
                .collect();
            let sigma = handles
                .iter()
                .fold(Perm::identity(n), |acc, (a, b)| acc.compose(&Perm::commutator(a, b)))
                .inverse();
            if !sigma.is_n_cycle() {
                return false;
            }
            let gens: Vec<Perm> = handles.iter().flat_map(|(a, b)| [a.clone(), b.clone()]).collect();
            matches!(generated_subgroup(&gens, n), Some(g) if g.len() == n)
                && is_transitive(&gens, n)
        });
        if counterexample.is_some() {
            return false;
        }
    }
    true
}

fn pairwise_commuting(images: &[Perm]) -> bool {
    images
        .iter()
        .enumerate()
        .all(|(i, a)| images[i + 1..].iter().all(|b| a.compose(b) == b.compose(a)))
}

/// Boundary-circle count of a regular covering with abelian deck group and
/// one boundary circle downstairs.
///
/// The relator writes the boundary image as a product of commutators, so
/// an abelian image forces it to the identity and the count equals the
/// degree for orientable surfaces.
pub fn abelian_boundary_components(rep: &SurfaceRep) -> Result<usize, RegularError> {
    let images = rep.all_images();
    if !pairwise_commuting(&images) {
        return Err(RegularError::NonAbelianImage);
    }
    if rep.boundary.len() != 1 {
        return Err(RegularError::BoundaryCount(rep.boundary.len()));
    }
    match generated_subgroup(&images, rep.degree) {
        Some(group) if group.len() == rep.degree => {}
        _ => return Err(RegularError::NotRegular("image group order differs from the degree")),
    }
    if !is_transitive(&images, rep.degree) {
        return Err(RegularError::NotRegular("image group is not transitive"));
    }
    let description = crate::surface::describe_cover(rep)?;
    Ok(description.total_boundary_circles())
}

/// Tiny deterministic generator for the spot checks below.
struct XorShift(u64);

impl XorShift {
    fn next(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }

    fn pick<'a, T>(&mut self, items: &'a [T]) -> &'a T {
        &items[(self.next() % items.len() as u64) as usize]
    }
}

/// Rule: over a one-boundary surface of any genus, every regular covering
/// with abelian deck group has trivial boundary monodromy, so each boundary
/// lift covers the base circle exactly once.
///
/// The relator places the boundary image in the commutator subgroup, which
/// dies in any abelian image.  The rule is spot-checked on finite abelian
/// quotients: exhaustively over commuting pairs for genus 1, and over
/// deterministically sampled commuting tuples for higher genus, all with
/// degree ≤ 6.
pub fn abelian_infinite_boundary_check(
    genus: usize,
    boundary_circles: usize,
) -> Result<bool, RegularError> {
    if boundary_circles != 1 {
        return Err(RegularError::BoundaryCount(boundary_circles));
    }
    for n in 1..=6 {
        let perms: Vec<Perm> = all_perms(n).collect();
        if genus == 1 {
            for a in &perms {
                for b in &perms {
                    if a.compose(b) != b.compose(a) {
                        continue;
                    }
                    if !Perm::commutator(a, b).inverse().is_identity() {
                        return Ok(false);
                    }
                }
            }
        } else {
            let mut rng = XorShift(0x9e37_79b9_7f4a_7c15 ^ ((genus as u64) << 8) ^ n as u64);
            for _ in 0..64 {
                let mut tuple: Vec<Perm> = Vec::with_capacity(2 * genus);
                for _ in 0..2 * genus {
                    let commuting: Vec<Perm> = perms
                        .iter()
                        .filter(|p| tuple.iter().all(|q| p.compose(q) == q.compose(*p)))
                        .cloned()
                        .collect();
                    tuple.push(rng.pick(&commuting).clone());
                }
                let sigma = tuple
                    .chunks(2)
                    .fold(Perm::identity(n), |acc, ab| {
                        acc.compose(&Perm::commutator(&ab[0], &ab[1]))
                    })
                    .inverse();
                if !sigma.is_identity() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}
