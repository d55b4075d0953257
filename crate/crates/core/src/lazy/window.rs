//! Window-bounded verification of lazy permutations.
//!
//! Every permutation here acts on the whole lattice, so checks restrict to
//! the square window `[-n, n]²` and report what was observed there.  The
//! three tools, in increasing strength:
//!
//! * [`window_agree`] / [`window_commutator_check`] — pointwise identity of
//!   two expressions on the window, each point under its own fresh budget,
//!   so the parallel and sequential execution paths return the same answer.
//! * [`window_transitivity`] — breadth-first search over the group generated
//!   by the given expressions, starting at the origin; definitive only when
//!   the orbit closes naturally within the caps.
//! * [`window_cycle_census`] — classifies every window point into a complete
//!   finite cycle or a truncated chain that exits the window, and
//!   [`census_consistent_with_spec`] compares the tally against a cycle-type
//!   specification whose layout fits inside the window.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use super::layout::census_extent;
use super::spec::CycleTypeSpec;
use super::{Budget, Dir, EvalError, LazyPerm, Point};

/// The window `[-n, n]²` in row-major order (y outer, x inner).
pub fn window_points(n: i64) -> Vec<Point> {
    let mut pts = Vec::with_capacity(((2 * n + 1) * (2 * n + 1)) as usize);
    for y in -n..=n {
        for x in -n..=n {
            pts.push(Point::new(x, y));
        }
    }
    pts
}

/// Maps every window point through `f`, in parallel when the `parallel`
/// feature is enabled.  Results come back in row-major order either way, and
/// each call gets its own budget, so the reduction below is deterministic.
fn per_point<T, F>(points: &[Point], f: F) -> Vec<T>
where
    T: Send,
    F: Fn(Point) -> T + Sync,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        points.par_iter().map(|&q| f(q)).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        points.iter().map(|&q| f(q)).collect()
    }
}

/// Reduces per-point outcomes in row-major order: the first point that
/// errors or disagrees decides the answer.
fn reduce_pointwise(results: Vec<Result<bool, EvalError>>) -> Result<bool, EvalError> {
    for r in results {
        match r {
            Ok(true) => {}
            other => return other,
        }
    }
    Ok(true)
}

/// Do `lhs` and `rhs` agree on every point of `[-n, n]²`?
pub fn window_agree(
    lhs: &LazyPerm,
    rhs: &LazyPerm,
    n: i64,
    per_point_budget: u64,
) -> Result<bool, EvalError> {
    let points = window_points(n);
    let results = per_point(&points, |q| {
        let budget = Budget::new(per_point_budget);
        Ok(lhs.eval_with(q, Dir::Fwd, &budget)? == rhs.eval_with(q, Dir::Fwd, &budget)?)
    });
    reduce_pointwise(results)
}

/// Does the commutator `g ∘ h ∘ g⁻¹ ∘ h⁻¹` equal `sigma` on `[-n, n]²`?
pub fn window_commutator_check(
    g: &LazyPerm,
    h: &LazyPerm,
    sigma: &LazyPerm,
    n: i64,
    per_point_budget: u64,
) -> Result<bool, EvalError> {
    window_agree(&LazyPerm::commutator(g, h), sigma, n, per_point_budget)
}

/// Is `|y(p(q)) − y(q)| ≤ max_dy` for every window point `q`?
pub fn check_vertical_discipline(
    p: &LazyPerm,
    n: i64,
    max_dy: i64,
    per_point_budget: u64,
) -> Result<bool, EvalError> {
    let points = window_points(n);
    let results = per_point(&points, |q| {
        let budget = Budget::new(per_point_budget);
        let image = p.eval_with(q, Dir::Fwd, &budget)?;
        Ok((image.y - q.y).abs() <= max_dy)
    });
    reduce_pointwise(results)
}

/// Outcome of a bounded orbit search from the origin.
#[derive(Clone, Debug)]
pub struct TransitivityReport {
    /// Points of the target window.
    pub target_points: usize,
    /// Target-window points reached from the origin.
    pub reached: usize,
    /// All states expanded, including through-points outside the window.
    pub visited: usize,
    /// True when a cap or an evaluation failure cut the search short, so a
    /// shortfall in `reached` proves nothing.
    pub inconclusive: bool,
}

impl TransitivityReport {
    /// The orbit of the origin covers the whole window and the search
    /// completed; the generated group moves the origin onto every window
    /// point.
    pub fn is_transitive(&self) -> bool {
        self.reached == self.target_points && !self.inconclusive
    }

    /// The orbit closed on its own without covering the window, so the
    /// generated group is definitively intransitive.
    pub fn is_definitively_intransitive(&self) -> bool {
        self.reached < self.target_points && !self.inconclusive
    }
}

/// Breadth-first orbit of the origin under `gens` and their inverses.
///
/// `max_word_len` caps the word length explored, `node_cap` the number of
/// expanded states; evaluation failures skip the edge.  Any of the three
/// marks the report inconclusive unless the window was already covered.
pub fn window_transitivity(
    gens: &[LazyPerm],
    n: i64,
    max_word_len: usize,
    per_eval_budget: u64,
    node_cap: usize,
) -> TransitivityReport {
    let target: HashSet<Point> = window_points(n).into_iter().collect();
    let mut visited: HashSet<Point> = HashSet::new();
    let mut queue: VecDeque<(Point, usize)> = VecDeque::new();
    let mut inconclusive = false;

    visited.insert(Point::new(0, 0));
    queue.push_back((Point::new(0, 0), 0));

    while let Some((q, depth)) = queue.pop_front() {
        if depth == max_word_len {
            // Unexpanded frontier: deeper words might still reach new points.
            inconclusive = true;
            continue;
        }
        for g in gens {
            for dir in [Dir::Fwd, Dir::Bwd] {
                let budget = Budget::new(per_eval_budget);
                match g.eval_with(q, dir, &budget) {
                    Ok(next) => {
                        if visited.len() >= node_cap && !visited.contains(&next) {
                            inconclusive = true;
                            continue;
                        }
                        if visited.insert(next) {
                            queue.push_back((next, depth + 1));
                        }
                    }
                    Err(_) => inconclusive = true,
                }
            }
        }
    }

    let reached = visited.iter().filter(|p| target.contains(p)).count();
    if reached == target.len() {
        inconclusive = false;
    }
    TransitivityReport { target_points: target.len(), reached, visited: visited.len(), inconclusive }
}

/// Cycle tally of a window: complete cycles by length, plus chains that
/// exit the window.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CycleCensus {
    /// `finite[s]` complete cycles of length `s` lie entirely in the window.
    pub finite: BTreeMap<u64, u64>,
    /// Maximal chains that leave the window on at least one side.  One orbit
    /// counts once per window re-entry, so this is an upper bound on the
    /// number of distinct orbits touching the boundary.
    pub truncated: u64,
    /// Half-width of the window that was swept.
    pub radius: i64,
}

/// Sweeps `[-radius, radius]²` and classifies every point's orbit.
///
/// An orbit whose forward walk returns to its start without leaving the
/// window is a complete finite cycle.  A walk that exits instead is extended
/// backwards to the other window edge and recorded as one truncated chain.
/// The budget is shared across the whole sweep.
pub fn window_cycle_census(
    p: &LazyPerm,
    radius: i64,
    budget: &Budget,
) -> Result<CycleCensus, EvalError> {
    let inside =
        |q: Point| q.x.abs() <= radius && q.y.abs() <= radius;
    let mut seen: HashSet<Point> = HashSet::new();
    let mut census = CycleCensus { radius, ..CycleCensus::default() };

    for start in window_points(radius) {
        if seen.contains(&start) {
            continue;
        }
        // Forward walk until we return to `start` or step outside.
        let mut chain = vec![start];
        let mut q = start;
        let closed = loop {
            q = p.eval_with(q, Dir::Fwd, budget)?;
            if q == start {
                break true;
            }
            if !inside(q) {
                break false;
            }
            chain.push(q);
        };
        if closed {
            seen.extend(chain.iter().copied());
            *census.finite.entry(chain.len() as u64).or_insert(0) += 1;
            continue;
        }
        // Truncated: extend backwards to the other edge of the window.
        let mut q = start;
        loop {
            q = p.eval_with(q, Dir::Bwd, budget)?;
            if !inside(q) {
                break;
            }
            chain.push(q);
        }
        seen.extend(chain.iter().copied());
        census.truncated += 1;
    }
    Ok(census)
}

/// Smallest window half-width at which [`census_consistent_with_spec`] can
/// accept a census for this spec: the placed cycles and one full filler
/// block of each size must fit inside the window.
pub fn required_census_radius(spec: &CycleTypeSpec) -> i64 {
    census_extent(spec)
}

/// Does a census taken at sufficient radius match a cycle-type spec?
///
/// Requires `census.radius ≥` the spec layout's census extent, which
/// guarantees the placed cycles and one full filler block of each size fit
/// inside the window.  The rules checked:
///
/// * every placed `size:count` entry appears with exactly that count;
/// * every filler size appears at least once;
/// * a spec with infinite cycles leaves at least one truncated chain;
/// * a spec with no infinite cycles and only fixed-point filler leaves none;
/// * every observed finite cycle length is a size the spec mentions.
pub fn census_consistent_with_spec(census: &CycleCensus, spec: &CycleTypeSpec) -> bool {
    if census.radius < census_extent(spec) {
        return false;
    }
    let placed: HashMap<u64, u64> = spec.placed_entries().into_iter().collect();
    let fillers = spec.filler_sizes();

    for (&size, &count) in &placed {
        if census.finite.get(&size).copied().unwrap_or(0) != count {
            return false;
        }
    }
    for &size in &fillers {
        if census.finite.get(&size).copied().unwrap_or(0) == 0 {
            return false;
        }
    }
    if spec.has_infinite_cycle() && census.truncated == 0 {
        return false;
    }
    if !spec.has_infinite_cycle() && fillers.iter().all(|&s| s == 1) && census.truncated != 0 {
        return false;
    }
    let mentioned: HashSet<u64> =
        placed.keys().copied().chain(fillers.iter().copied()).collect();
    census.finite.keys().all(|s| mentioned.contains(s))
}
