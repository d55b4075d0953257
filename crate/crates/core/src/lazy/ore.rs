//! Constructive product decompositions of built permutations.
//!
//! Both constructions factor through the same identity.  A builder output
//! `σ` composed with the matching vertical shift `τ` gives `ψ = σ ∘ τ`,
//! which is conjugate to `τ`, so:
//!
//! * [`transitive_ore`] returns `(a, τ, σ)` with `[a, τ] = ψ ∘ τ⁻¹ = σ`
//!   exactly — a single commutator of two explicit permutations whose
//!   generated group acts transitively on the lattice;
//! * [`powers_decomposition`] writes `σ = (α₁^{n₁} ∘ ⋯ ∘ α_k^{n_k}) ∘
//!   (β₁^{l₁} ∘ ⋯ ∘ β_r^{l_r})` by taking interleaved roots of the cycle
//!   families of `ψ` (the `α` side) and of `τ⁻¹` (the `β` side): blocks of
//!   `n₁, …, n_{k−1}` cycles followed by infinitely many blocks of `n_k`
//!   carve up the whole family, and each root's `n`-th power advances its
//!   block once, so the power product rebuilds `ψ` and `τ⁻¹` wholesale.
//!
//! Factors on the same side have disjoint supports and commute; the seed
//! skews the roots and the conjugator without changing any of the products.

use super::conj::conjugator;
use super::family::{Family, FamilyKind};
use super::spec::{CaseMode, CycleTypeSpec};
use super::{EvalError, LazyPerm};

/// How to realize a commutator pair for an identity-type spec.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum OreMode {
    /// Always build the conjugator pair; for the identity spec this still
    /// yields two translations generating a transitive group.
    #[default]
    TransitivePair,
    /// Short-circuit the identity spec to `(e, e, e)`.
    TrivialIdentity,
}

/// Vertical shift step of the regime's reference permutation `τ`.
fn tau_step(mode: CaseMode) -> i64 {
    match mode {
        CaseMode::CaseA => 1,
        CaseMode::CaseB => 2,
    }
}

/// Returns `(g, h, σ)` where `σ` is the built permutation of the spec and
/// `[g, h] = σ` holds exactly at every lattice point.
pub fn transitive_ore(
    spec: &CycleTypeSpec,
    seed: i64,
    mode: OreMode,
) -> Result<(LazyPerm, LazyPerm, LazyPerm), EvalError> {
    if mode == OreMode::TrivialIdentity && spec.is_identity() {
        let id = LazyPerm::identity();
        return Ok((id.clone(), id.clone(), id));
    }
    let sigma = LazyPerm::sigma(spec)?;
    let a = conjugator(&sigma, spec.case(), seed)?;
    Ok((a, LazyPerm::shift(tau_step(spec.case())), sigma))
}

/// Interleaved roots slicing a whole family into blocks of sizes
/// `groups[0], …, groups[last]`, the last size repeating forever.
fn root_slices(
    family: &Family,
    groups: &[u64],
    seed: i64,
) -> Result<Vec<LazyPerm>, EvalError> {
    if groups.is_empty() || groups.contains(&0) {
        return Err(EvalError::BadArgument(
            "power decomposition needs at least one exponent, all nonzero".into(),
        ));
    }
    let mut roots = Vec::with_capacity(groups.len());
    let mut start = 0u64;
    for (i, &n) in groups.iter().enumerate() {
        let repeating = i + 1 == groups.len();
        roots.push(LazyPerm::root(family.clone(), start, n, repeating, seed)?);
        start += n;
    }
    Ok(roots)
}

/// Writes the built permutation of `spec` as a product of powers:
/// `σ = α₁^{ns[0]} ∘ ⋯ ∘ α_k^{ns[k−1]} ∘ β₁^{ls[0]} ∘ ⋯ ∘ β_r^{ls[r−1]}`.
///
/// Returns `(alphas, betas, σ)`.  The `α` factors pairwise commute, as do
/// the `β` factors.  The seed skews the `α` side only; the `β` side is
/// canonical.
pub fn powers_decomposition(
    spec: &CycleTypeSpec,
    ns: &[u64],
    ls: &[u64],
    seed: i64,
) -> Result<(Vec<LazyPerm>, Vec<LazyPerm>, LazyPerm), EvalError> {
    let sigma = LazyPerm::sigma(spec)?;
    let step = tau_step(spec.case());
    let psi_family = Family::new(match spec.case() {
        CaseMode::CaseA => FamilyKind::PsiA(spec.clone()),
        CaseMode::CaseB => FamilyKind::PsiB(spec.clone()),
    })?;
    let tau_inv_family = Family::new(FamilyKind::Shift(-step))?;
    let alphas = root_slices(&psi_family, ns, seed)?;
    let betas = root_slices(&tau_inv_family, ls, 0)?;
    Ok((alphas, betas, sigma))
}
