//! Verdicts for infinite-degree boundary-extension problems.
//!
//! Given a compact surface with boundary and a cycle-type spec for the
//! monodromy over each boundary circle, decide whether some covering of the
//! whole surface restricts to a covering of the boundary with those
//! monodromies.  Positive-genus surfaces absorb every boundary datum; the
//! planar cases are governed by rule tables.  Wherever a construction is
//! available, the verdict carries a witness assembled from lazy
//! permutations, checkable point-by-point on a window.
//!
//! Products follow the infinite-side convention: juxtaposition is function
//! composition, so in `v₁²v₂²σ₁` the rightmost factor applies first.  The
//! relator of an orientable genus-`g` surface with `k` boundary circles is
//! `[a₁,b₁]⋯[a_g,b_g]·σ₁⋯σ_k`, of a non-orientable one `v₁²⋯v_g²·σ₁⋯σ_k`;
//! a witness is a choice of generators making the relator the identity with
//! every `σᵢ` in the prescribed class.

use thiserror::Error;

use crate::lazy::{
    census_consistent_with_spec, powers_decomposition, required_census_radius, transitive_ore,
    window_agree, window_cycle_census, window_transitivity, Budget, CycleTypeSpec, EvalError,
    LazyPerm, OreMode,
};
use crate::surface::SurfaceSpec;

/// Extension verdict status.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Extends,
    NotExtends,
    Unknown,
}

/// Rule or construction justifying a verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Reason {
    /// Positive-genus orientable surfaces absorb every infinite boundary
    /// datum (existence).
    PositiveGenusAbsorption,
    /// Constructive: boundary class realized as a commutator of a
    /// transitive pair.
    OreTransitiveCommutator,
    /// Constructive for several boundary circles: the tail boundary
    /// permutation is rebuilt from a window census of the concrete product.
    BudgetedProductAnalysis,
    /// Constructive: boundary class realized as a product of two squares.
    CrosscapSquaresDecomposition,
    /// Constructive: commutator rewritten as three squares.
    ThreeSquaresCommutator,
    /// Positive-genus non-orientable surfaces absorb every infinite
    /// boundary datum (existence).
    CrosscapExistence,
    /// Coverings of the disk have trivial monodromy.
    DiskTrivialMonodromy,
    /// Non-trivial monodromy over the disk, or no connected infinite cover.
    DiskObstruction,
    /// Cylinder: the two boundary monodromies are conjugate, so equal cycle
    /// types extend.
    CylinderConjugateMonodromy,
    /// Cylinder: differing cycle types cannot bound.
    CylinderMismatch,
    /// Cylinder: the only connected infinite cover is the infinite cyclic
    /// one.
    CylinderInfiniteCyclic,
    /// Cylinder: connected cover demanded but the monodromy is not a single
    /// infinite cycle.
    CylinderNotInfiniteCyclic,
    /// Three boundary circles: two infinite cyclic sides force even parity
    /// on the finitely supported third.
    BertramParityObstruction,
    /// Three boundary circles, all with infinite support and two containing
    /// an infinite cycle (existence).
    ThreeBoundaryInfiniteCycles,
    /// Four or more boundary circles, all with infinite support (existence).
    DrosteInfiniteSupport,
    /// No rule applies.
    Inconclusive,
}

impl Reason {
    /// Stable text code used in reports and serialized verdicts.
    pub fn code(&self) -> &'static str {
        match self {
            Reason::PositiveGenusAbsorption => "positive-genus-absorption",
            Reason::OreTransitiveCommutator => "ore-transitive-commutator",
            Reason::BudgetedProductAnalysis => "budgeted-product-analysis",
            Reason::CrosscapSquaresDecomposition => "crosscap-squares-decomposition",
            Reason::ThreeSquaresCommutator => "three-squares-commutator",
            Reason::CrosscapExistence => "crosscap-existence",
            Reason::DiskTrivialMonodromy => "disk-trivial-monodromy",
            Reason::DiskObstruction => "disk-obstruction",
            Reason::CylinderConjugateMonodromy => "cylinder-conjugate-monodromy",
            Reason::CylinderMismatch => "cylinder-mismatch",
            Reason::CylinderInfiniteCyclic => "cylinder-infinite-cyclic",
            Reason::CylinderNotInfiniteCyclic => "cylinder-not-infinite-cyclic",
            Reason::BertramParityObstruction => "bertram-parity-obstruction",
            Reason::ThreeBoundaryInfiniteCycles => "three-boundary-infinite-cycles",
            Reason::DrosteInfiniteSupport => "droste-infinite-support",
            Reason::Inconclusive => "inconclusive",
        }
    }
}

impl std::fmt::Display for Reason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.code())
    }
}

/// Witness for an infinite-degree extension: generators of a surface-group
/// representation into the lazy permutations.
#[derive(Clone, Debug)]
pub struct InfWitness {
    /// Handle generator pairs `(aᵢ, bᵢ)` (orientable surfaces).
    pub handles: Vec<(LazyPerm, LazyPerm)>,
    /// Cross-cap generators `vᵢ` (non-orientable surfaces).
    pub crosscaps: Vec<LazyPerm>,
    /// Boundary permutations `σ₁, …, σ_k`.
    pub boundaries: Vec<LazyPerm>,
    /// True when the witness additionally claims the covering is connected,
    /// i.e. the generated group was verified transitive on a window.
    pub transitive: bool,
}

/// Knobs for witness verification.
#[derive(Clone, Copy, Debug)]
pub struct WitnessChecks {
    /// Half-width of the pointwise relator window.
    pub window: i64,
    /// Fresh budget per pointwise evaluation.
    pub per_point_budget: u64,
    /// Shared budget for each boundary census.
    pub census_budget: u64,
    /// Half-width of the transitivity window.
    pub transitivity_window: i64,
    /// Maximum word length of the transitivity search.
    pub word_budget: usize,
    /// Cap on states expanded by the transitivity search.
    pub node_cap: usize,
}

impl Default for WitnessChecks {
    fn default() -> Self {
        WitnessChecks {
            window: 8,
            per_point_budget: 1 << 22,
            census_budget: 1 << 26,
            transitivity_window: 4,
            word_budget: 200,
            node_cap: 200_000,
        }
    }
}

/// A witness check that failed.
#[derive(Debug, Error)]
pub enum WitnessError {
    #[error("witness has {got} boundary permutations, the problem has {want}")]
    BoundaryCount { got: usize, want: usize },
    #[error("the relator does not fix the verification window pointwise")]
    RelatorBroken,
    #[error("boundary {index} fails its cycle-type census")]
    CensusMismatch { index: usize },
    #[error(
        "transitivity not confirmed: reached {reached} of {target} window points{}",
        if *inconclusive { " (search was cut short)" } else { "" }
    )]
    NotTransitive { reached: usize, target: usize, inconclusive: bool },
    #[error("evaluation failed during verification: {0}")]
    Eval(#[from] EvalError),
}

impl InfWitness {
    /// The surface relator `∏[aᵢ,bᵢ] ∘ ∏vᵢ² ∘ ∏σᵢ`.
    pub fn relator(&self) -> LazyPerm {
        let mut factors: Vec<LazyPerm> = Vec::new();
        for (a, b) in &self.handles {
            factors.push(LazyPerm::commutator(a, b));
        }
        for v in &self.crosscaps {
            factors.push(v.pow(2));
        }
        factors.extend(self.boundaries.iter().cloned());
        factors
            .into_iter()
            .reduce(|acc, f| acc.after(&f))
            .unwrap_or_else(LazyPerm::identity)
    }

    /// All generators of the representation, for orbit searches.
    pub fn generators(&self) -> Vec<LazyPerm> {
        let mut gens: Vec<LazyPerm> = Vec::new();
        for (a, b) in &self.handles {
            gens.push(a.clone());
            gens.push(b.clone());
        }
        gens.extend(self.crosscaps.iter().cloned());
        gens.extend(self.boundaries.iter().cloned());
        gens
    }

    /// Re-verifies the witness against the prescribed boundary classes:
    /// the relator fixes the window pointwise, every boundary permutation
    /// passes the census of its class, and — when the witness claims a
    /// connected covering — the generated group is transitive on a window.
    pub fn verify(
        &self,
        boundary_specs: &[CycleTypeSpec],
        checks: &WitnessChecks,
    ) -> Result<(), WitnessError> {
        if self.boundaries.len() != boundary_specs.len() {
            return Err(WitnessError::BoundaryCount {
                got: self.boundaries.len(),
                want: boundary_specs.len(),
            });
        }
        if !window_agree(
            &self.relator(),
            &LazyPerm::identity(),
            checks.window,
            checks.per_point_budget,
        )? {
            return Err(WitnessError::RelatorBroken);
        }
        for (index, (sigma, spec)) in self.boundaries.iter().zip(boundary_specs).enumerate() {
            let radius = required_census_radius(spec);
            let census = window_cycle_census(sigma, radius, &Budget::new(checks.census_budget))?;
            if !census_consistent_with_spec(&census, spec) {
                return Err(WitnessError::CensusMismatch { index });
            }
        }
        if self.transitive {
            let report = window_transitivity(
                &self.generators(),
                checks.transitivity_window,
                checks.word_budget,
                checks.per_point_budget,
                checks.node_cap,
            );
            if !report.is_transitive() {
                return Err(WitnessError::NotTransitive {
                    reached: report.reached,
                    target: report.target_points,
                    inconclusive: report.inconclusive,
                });
            }
        }
        Ok(())
    }
}

/// Outcome of an extension decision.
#[derive(Clone, Debug)]
pub struct Verdict {
    pub status: Status,
    pub reason: Reason,
    /// Free-text elaboration (downgrade causes, rule notes).
    pub detail: String,
    pub witness: Option<InfWitness>,
}

impl Verdict {
    fn new(status: Status, reason: Reason, detail: impl Into<String>) -> Self {
        Verdict { status, reason, detail: detail.into(), witness: None }
    }

    fn with_witness(mut self, witness: InfWitness) -> Self {
        self.witness = Some(witness);
        self
    }
}

/// Whether to attempt constructive witnesses beyond the exact cases.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum WitnessPolicy {
    /// Only cite the covering theorem where no exact construction exists.
    ExistenceOnly,
    /// Additionally attempt the window-census construction for several
    /// boundary circles, downgrading to existence on any failure.
    #[default]
    Budgeted,
}

/// Options shared by the positive-genus deciders.
#[derive(Clone, Debug, Default)]
pub struct InfOptions {
    /// Seed diversifying conjugators and roots; any value is valid.
    pub seed: i64,
    pub policy: WitnessPolicy,
    pub checks: WitnessChecks,
}

fn identity_pairs(count: usize) -> Vec<(LazyPerm, LazyPerm)> {
    (0..count).map(|_| (LazyPerm::identity(), LazyPerm::identity())).collect()
}

/// Probes connectedness of the witness covering; the claim is recorded only
/// when the orbit search confirms it.
fn probe_transitive(witness: &mut InfWitness, checks: &WitnessChecks) {
    let report = window_transitivity(
        &witness.generators(),
        checks.transitivity_window,
        checks.word_budget,
        checks.per_point_budget,
        checks.node_cap,
    );
    witness.transitive = report.is_transitive();
}

/// Composes `σ₁ ∘ σ₂ ∘ ⋯` (rightmost applies first).
fn compose_all(factors: &[LazyPerm]) -> LazyPerm {
    factors
        .iter()
        .cloned()
        .reduce(|acc, f| acc.after(&f))
        .unwrap_or_else(LazyPerm::identity)
}

/// Builds a spec from the window census of a concrete permutation: observed
/// finite cycle counts verbatim, fixed points and infinite cycles padded to
/// `ℵ0` when seen at all.
fn census_spec(p: &LazyPerm, radius: i64, budget_limit: u64) -> Result<CycleTypeSpec, EvalError> {
    use crate::lazy::{Count, SpecEntry};
    let census = window_cycle_census(p, radius, &Budget::new(budget_limit))?;
    let mut entries: Vec<SpecEntry> = Vec::new();
    if census.truncated > 0 {
        entries.push(SpecEntry { size: Count::Infinite, count: Count::Infinite });
    }
    for (&size, &count) in &census.finite {
        if size >= 2 {
            entries.push(SpecEntry { size: Count::Finite(size), count: Count::Finite(count) });
        } else {
            entries.push(SpecEntry { size: Count::Finite(1), count: Count::Infinite });
        }
    }
    Ok(CycleTypeSpec::new(entries)?)
}

/// The window-census construction for `k ≥ 2` boundary circles.
///
/// The first `k−1` boundary permutations are builder outputs of their specs;
/// their product `P` is concrete but of unknown cycle type.  A window census
/// of `P⁻¹` suggests a spec `T`; the caller realizes `σ_T` (with `[g,h] =
/// σ_T` or `σ_T = α²β²`), and the tail boundary is defined as `σ_k := P⁻¹ ∘
/// σ_T⁻¹`, which makes the relator the identity *exactly*.  What remains —
/// and can fail, downgrading the witness — is the census check that `σ_k`
/// lies in its prescribed class.
fn budgeted_tail(
    boundary_specs: &[CycleTypeSpec],
    checks: &WitnessChecks,
) -> Result<(CycleTypeSpec, Vec<LazyPerm>, LazyPerm), EvalError> {
    let head: Vec<LazyPerm> = boundary_specs[..boundary_specs.len() - 1]
        .iter()
        .map(LazyPerm::sigma)
        .collect::<Result<_, _>>()?;
    let product = compose_all(&head);
    let t = census_spec(&product.inverse(), checks.window, checks.census_budget)?;
    Ok((t, head, product))
}

/// Completes the budgeted construction given `σ_T` in the census class.
fn budgeted_finish(
    head: Vec<LazyPerm>,
    product: &LazyPerm,
    sigma_t: &LazyPerm,
    tail_spec: &CycleTypeSpec,
    checks: &WitnessChecks,
) -> Result<Vec<LazyPerm>, WitnessError> {
    let tail = product.inverse().after(&sigma_t.inverse());
    let radius = required_census_radius(tail_spec);
    let census = window_cycle_census(&tail, radius, &Budget::new(checks.census_budget))?;
    if !census_consistent_with_spec(&census, tail_spec) {
        return Err(WitnessError::CensusMismatch { index: head.len() });
    }
    let mut boundaries = head;
    boundaries.push(tail);
    Ok(boundaries)
}

fn validate_positive_genus(
    surface: &SurfaceSpec,
    boundary_specs: &[CycleTypeSpec],
    orientable: bool,
) -> Result<(), EvalError> {
    if surface.orientable != orientable {
        return Err(EvalError::BadArgument(format!(
            "expected {} surface",
            if orientable { "an orientable" } else { "a non-orientable" }
        )));
    }
    if surface.genus == 0 {
        return Err(EvalError::BadArgument(
            "positive-genus decider called with genus 0".into(),
        ));
    }
    if surface.boundary == 0 || surface.boundary != boundary_specs.len() {
        return Err(EvalError::BadArgument(format!(
            "surface has {} boundary circles but {} specs were given",
            surface.boundary,
            boundary_specs.len()
        )));
    }
    Ok(())
}

/// Extension over an orientable surface of genus ≥ 1: always extends.
///
/// For one boundary circle the witness is exact: a transitive commutator
/// pair fills one handle and the boundary is its inverse.  For several
/// circles the budgeted policy attempts the window-census construction and
/// downgrades to an existence verdict if any check fails.
pub fn decide_orientable_positive_genus(
    surface: &SurfaceSpec,
    boundary_specs: &[CycleTypeSpec],
    opts: &InfOptions,
) -> Result<Verdict, EvalError> {
    validate_positive_genus(surface, boundary_specs, true)?;
    let checks = &opts.checks;

    if boundary_specs.len() == 1 {
        let (g, h, sigma) =
            transitive_ore(&boundary_specs[0], opts.seed, OreMode::TransitivePair)?;
        let mut handles = vec![(g, h)];
        handles.extend(identity_pairs(surface.genus - 1));
        let mut witness = InfWitness {
            handles,
            crosscaps: Vec::new(),
            boundaries: vec![sigma.inverse()],
            transitive: false,
        };
        probe_transitive(&mut witness, checks);
        return Ok(Verdict::new(
            Status::Extends,
            Reason::OreTransitiveCommutator,
            "boundary class realized exactly as a commutator of a transitive pair",
        )
        .with_witness(witness));
    }

    if opts.policy == WitnessPolicy::Budgeted {
        let attempt = (|| -> Result<InfWitness, WitnessError> {
            let (t, head, product) = budgeted_tail(boundary_specs, checks)?;
            let (g, h, sigma_t) = transitive_ore(&t, opts.seed, OreMode::TransitivePair)?;
            let boundaries = budgeted_finish(
                head,
                &product,
                &sigma_t,
                boundary_specs.last().unwrap(),
                checks,
            )?;
            let mut handles = vec![(g, h)];
            handles.extend(identity_pairs(surface.genus - 1));
            let mut witness =
                InfWitness { handles, crosscaps: Vec::new(), boundaries, transitive: false };
            witness.verify(boundary_specs, checks)?;
            probe_transitive(&mut witness, checks);
            Ok(witness)
        })();
        match attempt {
            Ok(witness) => {
                return Ok(Verdict::new(
                    Status::Extends,
                    Reason::BudgetedProductAnalysis,
                    "tail boundary rebuilt from a window census of the concrete product",
                )
                .with_witness(witness));
            }
            Err(err) => {
                return Ok(Verdict::new(
                    Status::Extends,
                    Reason::PositiveGenusAbsorption,
                    format!("budgeted construction downgraded to existence: {err}"),
                ));
            }
        }
    }

    Ok(Verdict::new(
        Status::Extends,
        Reason::PositiveGenusAbsorption,
        "positive-genus orientable surfaces absorb every boundary datum",
    ))
}

/// Square roots rewriting a commutator as three squares:
/// with `A = x∘y`, `B = y⁻¹∘x⁻¹∘y`, `C = y⁻¹` one has `A²B²C² = [x, y]`.
pub fn three_squares_expressions(x: &LazyPerm, y: &LazyPerm) -> [LazyPerm; 3] {
    let a = x.after(y);
    let b = y.inverse().after(&x.inverse()).after(y);
    let c = y.inverse();
    [a, b, c]
}

/// Extension over a non-orientable surface of genus ≥ 1: always extends.
///
/// Genus 2 realizes the boundary as `α²β²` (two cross-caps); genus ≥ 3
/// rewrites a transitive commutator as three squares.  Genus 1 would need
/// the boundary class to be a single square, which fails for a class with
/// exactly one infinite cycle, so only the existence verdict is returned.
pub fn decide_nonorientable_positive_genus(
    surface: &SurfaceSpec,
    boundary_specs: &[CycleTypeSpec],
    opts: &InfOptions,
) -> Result<Verdict, EvalError> {
    validate_positive_genus(surface, boundary_specs, false)?;
    let checks = &opts.checks;

    if surface.genus == 1 {
        return Ok(Verdict::new(
            Status::Extends,
            Reason::CrosscapExistence,
            "genus-1 witnesses need the boundary written as one square; existence only",
        ));
    }

    if boundary_specs.len() == 1 {
        let spec = &boundary_specs[0];
        let (mut crosscaps, sigma, reason, detail) = if surface.genus == 2 {
            let (alphas, betas, sigma) = powers_decomposition(spec, &[2], &[2], opts.seed)?;
            (
                vec![alphas[0].clone(), betas[0].clone()],
                sigma,
                Reason::CrosscapSquaresDecomposition,
                "boundary class realized exactly as a product of two squares",
            )
        } else {
            let (x, y, sigma) = transitive_ore(spec, opts.seed, OreMode::TransitivePair)?;
            (
                three_squares_expressions(&x, &y).to_vec(),
                sigma,
                Reason::ThreeSquaresCommutator,
                "transitive commutator rewritten as three squares",
            )
        };
        crosscaps.resize(surface.genus, LazyPerm::identity());
        let mut witness = InfWitness {
            handles: Vec::new(),
            crosscaps,
            boundaries: vec![sigma.inverse()],
            transitive: false,
        };
        probe_transitive(&mut witness, checks);
        return Ok(Verdict::new(Status::Extends, reason, detail).with_witness(witness));
    }

    if opts.policy == WitnessPolicy::Budgeted {
        let attempt = (|| -> Result<InfWitness, WitnessError> {
            let (t, head, product) = budgeted_tail(boundary_specs, checks)?;
            let (alphas, betas, sigma_t) = powers_decomposition(&t, &[2], &[2], opts.seed)?;
            let boundaries = budgeted_finish(
                head,
                &product,
                &sigma_t,
                boundary_specs.last().unwrap(),
                checks,
            )?;
            let mut crosscaps = vec![alphas[0].clone(), betas[0].clone()];
            crosscaps.resize(surface.genus, LazyPerm::identity());
            let mut witness =
                InfWitness { handles: Vec::new(), crosscaps, boundaries, transitive: false };
            witness.verify(boundary_specs, checks)?;
            probe_transitive(&mut witness, checks);
            Ok(witness)
        })();
        match attempt {
            Ok(witness) => {
                return Ok(Verdict::new(
                    Status::Extends,
                    Reason::BudgetedProductAnalysis,
                    "tail boundary rebuilt from a window census of the concrete product",
                )
                .with_witness(witness));
            }
            Err(err) => {
                return Ok(Verdict::new(
                    Status::Extends,
                    Reason::CrosscapExistence,
                    format!("budgeted construction downgraded to existence: {err}"),
                ));
            }
        }
    }

    Ok(Verdict::new(
        Status::Extends,
        Reason::CrosscapExistence,
        "positive-genus non-orientable surfaces absorb every boundary datum",
    ))
}

/// Is the spec exactly one infinite cycle moving every point?
fn is_pure_infinite_cycle(spec: &CycleTypeSpec) -> bool {
    spec.is_single_infinite_cycle(false)
}

/// Extension over planar surfaces (genus 0, `k` boundary circles), decided
/// by rule tables.
///
/// With `connected` set, existence-only rules cannot promise a connected
/// cover and downgrade to `Unknown`; the disk admits no connected infinite
/// cover at all, and the cylinder only the infinite cyclic one.
pub fn decide_planar_infinite(
    boundary_specs: &[CycleTypeSpec],
    connected: bool,
) -> Result<Verdict, EvalError> {
    let k = boundary_specs.len();
    if k == 0 {
        return Err(EvalError::BadArgument("at least one boundary circle required".into()));
    }
    match k {
        1 => {
            let spec = &boundary_specs[0];
            if connected {
                return Ok(Verdict::new(
                    Status::NotExtends,
                    Reason::DiskObstruction,
                    "the disk has no connected infinite cover",
                ));
            }
            if spec.is_identity() {
                let witness = InfWitness {
                    handles: Vec::new(),
                    crosscaps: Vec::new(),
                    boundaries: vec![LazyPerm::identity()],
                    transitive: false,
                };
                Ok(Verdict::new(
                    Status::Extends,
                    Reason::DiskTrivialMonodromy,
                    "trivial monodromy bounds a disjoint union of disks",
                )
                .with_witness(witness))
            } else {
                Ok(Verdict::new(
                    Status::NotExtends,
                    Reason::DiskObstruction,
                    "coverings of the disk have trivial boundary monodromy",
                ))
            }
        }
        2 => {
            let (first, second) = (&boundary_specs[0], &boundary_specs[1]);
            if connected {
                if is_pure_infinite_cycle(first) && is_pure_infinite_cycle(second) {
                    let sigma = LazyPerm::sigma(first)?;
                    let mut witness = InfWitness {
                        handles: Vec::new(),
                        crosscaps: Vec::new(),
                        boundaries: vec![sigma.inverse(), sigma],
                        transitive: false,
                    };
                    probe_transitive(&mut witness, &WitnessChecks::default());
                    Ok(Verdict::new(
                        Status::Extends,
                        Reason::CylinderInfiniteCyclic,
                        "the infinite cyclic cover of the cylinder",
                    )
                    .with_witness(witness))
                } else {
                    Ok(Verdict::new(
                        Status::NotExtends,
                        Reason::CylinderNotInfiniteCyclic,
                        "the only connected infinite cover of the cylinder is infinite cyclic",
                    ))
                }
            } else if first == second {
                let sigma = LazyPerm::sigma(first)?;
                let witness = InfWitness {
                    handles: Vec::new(),
                    crosscaps: Vec::new(),
                    boundaries: vec![sigma.inverse(), sigma],
                    transitive: false,
                };
                Ok(Verdict::new(
                    Status::Extends,
                    Reason::CylinderConjugateMonodromy,
                    "cylinder monodromies are mutually inverse, so conjugate cycle types bound",
                )
                .with_witness(witness))
            } else {
                Ok(Verdict::new(
                    Status::NotExtends,
                    Reason::CylinderMismatch,
                    "cylinder boundary monodromies must share a cycle type",
                ))
            }
        }
        3 => {
            for third in 0..3 {
                let others: Vec<&CycleTypeSpec> = (0..3)
                    .filter(|&i| i != third)
                    .map(|i| &boundary_specs[i])
                    .collect();
                if others.iter().all(|s| s.is_single_infinite_cycle(true))
                    && boundary_specs[third].finite_support_parity() == Some(1)
                {
                    return Ok(Verdict::new(
                        Status::NotExtends,
                        Reason::BertramParityObstruction,
                        "two infinite cyclic sides force an even number of even cycles \
                         on the finitely supported third",
                    ));
                }
            }
            let infinite_support = boundary_specs.iter().all(|s| s.has_infinite_support());
            let with_infinite_cycle =
                boundary_specs.iter().filter(|s| s.has_infinite_cycle()).count();
            if infinite_support && with_infinite_cycle >= 2 {
                if connected {
                    return Ok(Verdict::new(
                        Status::Unknown,
                        Reason::Inconclusive,
                        "the three-boundary existence rule makes no connectedness statement",
                    ));
                }
                return Ok(Verdict::new(
                    Status::Extends,
                    Reason::ThreeBoundaryInfiniteCycles,
                    "all supports infinite and two classes contain an infinite cycle \
                     (existence only)",
                ));
            }
            Ok(Verdict::new(
                Status::Unknown,
                Reason::Inconclusive,
                "no three-boundary rule applies",
            ))
        }
        _ => {
            if boundary_specs.iter().all(|s| s.has_infinite_support()) {
                if connected {
                    return Ok(Verdict::new(
                        Status::Unknown,
                        Reason::Inconclusive,
                        "the many-boundary existence rule makes no connectedness statement",
                    ));
                }
                Ok(Verdict::new(
                    Status::Extends,
                    Reason::DrosteInfiniteSupport,
                    "every class has infinite support (existence only)",
                ))
            } else {
                Ok(Verdict::new(
                    Status::Unknown,
                    Reason::Inconclusive,
                    "some class has finite support; no many-boundary rule applies",
                ))
            }
        }
    }
}
