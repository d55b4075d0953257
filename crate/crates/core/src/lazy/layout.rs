//! Concrete realizations of cycle-type specifications on the lattice.
//!
//! [`InfLayout`] realizes specs with infinitely many cycles while leaving
//! every horizontal line invariant; [`FinLayout`] realizes specs with a
//! finite cycle decomposition while moving points by at most one line.
//!
//! Placement conventions (fixed so window censuses are exact and
//! reproducible):
//!
//! * Finite cycles with finite multiplicity are placed consecutively on a
//!   single *ledger* line, the largest size first, each cycle acting as
//!   `x ↦ x + 1` with a wrap from its right end to its left end.
//! * On translated ledger lines the placed block starts at `x = 0`.  When
//!   the rest of the ledger line is carried by a through-going cycle (the
//!   skip line of [`InfLayout`] and the x-axis of [`FinLayout`]) the block
//!   occupies `x ∈ [1, T]` and the through cycle jumps `0 ↦ T + 1`.
//! * Finite sizes with multiplicity `ℵ0` tile their lines periodically in
//!   blocks of one cycle of each such size, in increasing size order.

use super::spec::{CaseMode, Count, CycleTypeSpec};
use super::sweeps::{mirror_columns, quad_bwd, quad_fwd, reflect_rows, semi_bwd, semi_fwd};
use super::{Budget, Dir, EvalError, Point};

/// Finitely many cycles laid end-to-end on one line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct PlacedSegment {
    /// `(start, len)` per cycle; starts are consecutive: the segment covers
    /// `[start_0, start_0 + total)`.
    cycles: Vec<(i64, u64)>,
    start: i64,
    end: i64, // exclusive
}

impl PlacedSegment {
    fn new(spec: &CycleTypeSpec, start: i64) -> Self {
        let mut cycles = Vec::new();
        let mut at = start;
        for (size, mult) in spec.placed_entries() {
            for _ in 0..mult {
                cycles.push((at, size));
                at += size as i64;
            }
        }
        PlacedSegment { cycles, start, end: at }
    }

    pub(crate) fn contains(&self, x: i64) -> bool {
        self.start <= x && x < self.end
    }

    fn step(&self, x: i64, dir: Dir) -> i64 {
        let idx = self
            .cycles
            .partition_point(|&(s, _)| s <= x)
            .checked_sub(1)
            .expect("x inside segment");
        let (s, len) = self.cycles[idx];
        let last = s + len as i64 - 1;
        match dir {
            Dir::Fwd => {
                if x < last {
                    x + 1
                } else {
                    s
                }
            }
            Dir::Bwd => {
                if x > s {
                    x - 1
                } else {
                    last
                }
            }
        }
    }
}

/// Periodic tiling of a line by one cycle of each filler size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct FillPattern {
    /// `(offset, len)` of each cycle within one period, offsets increasing.
    blocks: Vec<(i64, u64)>,
    period: i64,
}

impl FillPattern {
    fn new(spec: &CycleTypeSpec) -> Option<Self> {
        let sizes = spec.filler_sizes();
        if sizes.is_empty() {
            return None;
        }
        let mut blocks = Vec::new();
        let mut at = 0i64;
        for s in sizes {
            blocks.push((at, s));
            at += s as i64;
        }
        Some(FillPattern { blocks, period: at })
    }

    /// Acts at `x` on a line tiled with period blocks anchored at `anchor`
    /// (block boundaries at `anchor + j·period`).
    fn step(&self, x: i64, anchor: i64, dir: Dir) -> i64 {
        let d = (x - anchor).rem_euclid(self.period);
        let idx = self
            .blocks
            .partition_point(|&(o, _)| o <= d)
            .checked_sub(1)
            .expect("offset in period");
        let (o, len) = self.blocks[idx];
        let last = o + len as i64 - 1;
        match dir {
            Dir::Fwd => {
                if d < last {
                    x + 1
                } else {
                    x - (len as i64 - 1)
                }
            }
            Dir::Bwd => {
                if d > o {
                    x - 1
                } else {
                    x + (len as i64 - 1)
                }
            }
        }
    }
}

/// Line assignment of the line-preserving builder.
#[derive(Clone, Debug, PartialEq, Eq)]
enum LineCase {
    /// Infinitely many infinite cycles and nothing else: translate every
    /// line.
    AllLines,
    /// Infinitely many infinite cycles plus filler sizes: translate even
    /// lines; line 1 is the ledger; other odd lines are pure filler.
    EvenInfinite,
    /// Infinitely many infinite cycles plus placed cycles only: line 0
    /// carries the placed block on `[1, T]` and a through cycle skipping it;
    /// all other lines translate.
    SkipLine,
    /// Finitely many (possibly zero) infinite cycles plus filler sizes:
    /// lines `1..=c` translate, line 0 is the ledger, the rest pure filler.
    FiniteInfinite { lines: i64 },
}

/// Line-preserving realization (`y(σ(p)) = y(p)` everywhere).
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct InfLayout {
    case: LineCase,
    placed: PlacedSegment,
    filler: Option<FillPattern>,
}

impl InfLayout {
    pub(crate) fn new(spec: &CycleTypeSpec) -> Result<Self, EvalError> {
        if spec.case() != CaseMode::CaseA {
            return Err(EvalError::WrongBuilder {
                expected: CaseMode::CaseB,
                spec: spec.to_string(),
            });
        }
        let filler = FillPattern::new(spec);
        let placed_entries = spec.placed_entries();
        let case = match (spec.infinite_cycles(), &filler) {
            (Count::Infinite, None) if placed_entries.is_empty() => LineCase::AllLines,
            (Count::Infinite, None) => LineCase::SkipLine,
            (Count::Infinite, Some(_)) => LineCase::EvenInfinite,
            (Count::Finite(c), Some(_)) => LineCase::FiniteInfinite { lines: c as i64 },
            (Count::Finite(_), None) => unreachable!("finite spec without filler routes to the finite builder"),
        };
        // The skip line's through cycle must pass x = 0, so its placed block
        // starts at 1; translated ledgers start at 0.
        let placed_start = if case == LineCase::SkipLine { 1 } else { 0 };
        let placed = PlacedSegment::new(spec, placed_start);
        Ok(InfLayout { case, placed, filler })
    }

    fn ledger_step(&self, x: i64, dir: Dir) -> i64 {
        if self.placed.contains(x) {
            self.placed.step(x, dir)
        } else {
            let fill = self.filler.as_ref().expect("ledger lines always have filler");
            // Blocks anchored at 0 to the left of the placed segment and at
            // its exclusive end to the right; both regions are invariant.
            let anchor = if x >= self.placed.end { self.placed.end } else { 0 };
            fill.step(x, anchor, dir)
        }
    }

    pub(crate) fn eval(&self, p: Point, dir: Dir) -> Point {
        let shift = |x: i64| match dir {
            Dir::Fwd => x + 1,
            Dir::Bwd => x - 1,
        };
        let x = match &self.case {
            LineCase::AllLines => shift(p.x),
            LineCase::EvenInfinite => {
                if p.y % 2 == 0 {
                    shift(p.x)
                } else if p.y == 1 {
                    self.ledger_step(p.x, dir)
                } else {
                    self.filler.as_ref().unwrap().step(p.x, 0, dir)
                }
            }
            LineCase::SkipLine => {
                if p.y != 0 {
                    shift(p.x)
                } else if self.placed.contains(p.x) {
                    self.placed.step(p.x, dir)
                } else {
                    // Through cycle: translation skipping the placed block.
                    match dir {
                        Dir::Fwd => {
                            if p.x == self.placed.start - 1 {
                                self.placed.end
                            } else {
                                p.x + 1
                            }
                        }
                        Dir::Bwd => {
                            if p.x == self.placed.end {
                                self.placed.start - 1
                            } else {
                                p.x - 1
                            }
                        }
                    }
                }
            }
            LineCase::FiniteInfinite { lines } => {
                if 1 <= p.y && p.y <= *lines {
                    shift(p.x)
                } else if p.y == 0 {
                    self.ledger_step(p.x, dir)
                } else {
                    self.filler.as_ref().unwrap().step(p.x, 0, dir)
                }
            }
        };
        Point { x, y: p.y }
    }
}

/// Carrier split of the finite-decomposition realization.
#[derive(Clone, Debug, PartialEq, Eq)]
enum Carrier {
    /// One infinite cycle sweeping the whole plane: the half-plane sweep on
    /// `{y >= 0}`, its row reflection (arrows reversed) on `{y <= −1}`,
    /// joined by `(0, −1) ↦ (0, 0)`.
    WholePlane,
    /// `k >= 2` infinite cycles: the first sweeps `{y >= 0}` (quarter-plane
    /// sweep mirrored across the vertical axis with a join at the origin),
    /// cycles `2..k` translate the lines `−1, …, 2 − k`, and the last is the
    /// row reflection of the first on `{y <= 1 − k}`.
    Split { k: i64 },
}

/// Realization with finitely many cycles and `|Δy| <= 1` everywhere.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct FinLayout {
    carrier: Carrier,
    placed: PlacedSegment,
}

impl FinLayout {
    pub(crate) fn new(spec: &CycleTypeSpec) -> Result<Self, EvalError> {
        if spec.case() != CaseMode::CaseB {
            return Err(EvalError::WrongBuilder {
                expected: CaseMode::CaseA,
                spec: spec.to_string(),
            });
        }
        let carrier = match spec.infinite_cycles() {
            Count::Finite(0) => {
                return Err(EvalError::InfeasibleSpec(format!(
                    "spec `{spec}` has finitely many cycles but no infinite one"
                )))
            }
            Count::Finite(1) => Carrier::WholePlane,
            Count::Finite(c) => Carrier::Split { k: c as i64 },
            Count::Infinite => unreachable!("infinite count routes to the line builder"),
        };
        // Placed cycles sit on [1, T] × {0}; the origin is excluded so the
        // gluing steps of the carrier cycles are never patched away.
        Ok(FinLayout { carrier, placed: PlacedSegment::new(spec, 1) })
    }

    /// First infinite cycle on `{y >= 0}` for the split carrier.
    fn upper_step(p: Point, dir: Dir) -> Point {
        debug_assert!(p.y >= 0);
        match dir {
            Dir::Fwd => {
                if p.x >= 0 {
                    quad_fwd(p)
                } else {
                    // Mirrored half, traversed with arrows reversed; the
                    // mirror image of the origin glues back to the origin.
                    match quad_bwd(mirror_columns(p)) {
                        Some(q) => mirror_columns(q),
                        None => Point { x: 0, y: 0 },
                    }
                }
            }
            Dir::Bwd => {
                if p.x < 0 {
                    mirror_columns(quad_fwd(mirror_columns(p)))
                } else if p.x == 0 && p.y == 0 {
                    Point { x: -1, y: 0 }
                } else {
                    quad_bwd(p).expect("only the origin lacks a quarter-sweep predecessor")
                }
            }
        }
    }

    /// The carrier permutation before finite cycles are patched in.
    fn carrier_step(&self, p: Point, dir: Dir) -> Point {
        match &self.carrier {
            Carrier::WholePlane => match dir {
                Dir::Fwd => {
                    if p.y >= 0 {
                        semi_fwd(p)
                    } else {
                        match semi_bwd(reflect_rows(-1, p)) {
                            Some(q) => reflect_rows(-1, q),
                            None => Point { x: 0, y: 0 },
                        }
                    }
                }
                Dir::Bwd => {
                    if p.y < 0 {
                        reflect_rows(-1, semi_fwd(reflect_rows(-1, p)))
                    } else if p.x == 0 && p.y == 0 {
                        Point { x: 0, y: -1 }
                    } else {
                        semi_bwd(p).expect("only the origin lacks a half-sweep predecessor")
                    }
                }
            },
            Carrier::Split { k } => {
                if p.y >= 0 {
                    Self::upper_step(p, dir)
                } else if p.y >= 2 - k {
                    // Middle cycles: plain translations of their lines.
                    let x = match dir {
                        Dir::Fwd => p.x + 1,
                        Dir::Bwd => p.x - 1,
                    };
                    Point { x, y: p.y }
                } else {
                    // Last cycle: row reflection of the first, arrows
                    // reversed.
                    let r = reflect_rows(1 - k, p);
                    reflect_rows(1 - k, Self::upper_step(r, dir.flip()))
                }
            }
        }
    }

    pub(crate) fn eval(&self, p: Point, dir: Dir, budget: &Budget) -> Result<Point, EvalError> {
        if p.y == 0 && self.placed.contains(p.x) {
            return Ok(Point { x: self.placed.step(p.x, dir), y: 0 });
        }
        // Follow the carrier, skipping over the patched-out placed block.
        let mut q = self.carrier_step(p, dir);
        while q.y == 0 && self.placed.contains(q.x) {
            budget.charge(1)?;
            q = self.carrier_step(q, dir);
        }
        Ok(q)
    }
}

/// Window radius beyond which a census of the built permutation must see
/// every placed cycle exactly and at least one cycle of each filler size.
pub(crate) fn census_extent(spec: &CycleTypeSpec) -> i64 {
    let placed = spec.placed_support() as i64;
    let period: i64 = spec.filler_sizes().iter().map(|&s| s as i64).sum();
    let lines = match spec.infinite_cycles() {
        Count::Finite(c) => c as i64,
        Count::Infinite => 1,
    };
    (placed + 2).max(period + 3).max(lines + 1).max(2)
}

#[cfg(test)]
mod tests {
    use super::super::spec::CycleTypeSpec;
    use super::*;

    fn spec(text: &str) -> CycleTypeSpec {
        CycleTypeSpec::parse(text).unwrap()
    }

    fn pt(x: i64, y: i64) -> Point {
        Point { x, y }
    }

    fn check_inverse_inf(layout: &InfLayout, r: i64) {
        for x in -r..=r {
            for y in -r..=r {
                let p = pt(x, y);
                let f = layout.eval(p, Dir::Fwd);
                assert_eq!(f.y, p.y, "line preserved at {p:?}");
                assert_eq!(layout.eval(f, Dir::Bwd), p, "inverse at {p:?}");
            }
        }
    }

    fn check_inverse_fin(layout: &FinLayout, r: i64) {
        let budget = Budget::new(1 << 20);
        for x in -r..=r {
            for y in -r..=r {
                let p = pt(x, y);
                let f = layout.eval(p, Dir::Fwd, &budget).unwrap();
                assert!((f.y - p.y).abs() <= 1, "vertical step at {p:?} -> {f:?}");
                assert_eq!(layout.eval(f, Dir::Bwd, &budget).unwrap(), p, "inverse at {p:?}");
            }
        }
    }

    #[test]
    fn all_lines_translate() {
        let layout = InfLayout::new(&spec("inf:inf")).unwrap();
        assert_eq!(layout.eval(pt(3, -5), Dir::Fwd), pt(4, -5));
        check_inverse_inf(&layout, 8);
    }

    #[test]
    fn single_translated_line_with_fixed_points() {
        let layout = InfLayout::new(&spec("inf:1, 1:inf")).unwrap();
        // The one infinite cycle translates line 1.
        assert_eq!(layout.eval(pt(7, 1), Dir::Fwd), pt(8, 1));
        // Everything else is fixed.
        for x in -6..=6 {
            for y in -6..=6 {
                if y != 1 {
                    assert_eq!(layout.eval(pt(x, y), Dir::Fwd), pt(x, y));
                }
            }
        }
        check_inverse_inf(&layout, 8);
    }

    #[test]
    fn transposition_filler_tiles_every_line() {
        let layout = InfLayout::new(&spec("2:inf")).unwrap();
        for x in -8..=8 {
            for y in -8..=8 {
                let p = pt(x, y);
                let f = layout.eval(p, Dir::Fwd);
                assert_eq!(f.y, y);
                assert_eq!((f.x - x).abs(), 1, "adjacent transposition at {p:?}");
                assert_eq!(layout.eval(f, Dir::Fwd), p, "involution at {p:?}");
            }
        }
        check_inverse_inf(&layout, 8);
    }

    #[test]
    fn skip_line_jumps_over_placed_block() {
        // Placed support: one 3-cycle and one 2-cycle on [1, 5] of line 0.
        let layout = InfLayout::new(&spec("inf:inf, 3:1, 2:1")).unwrap();
        assert_eq!(layout.eval(pt(0, 0), Dir::Fwd), pt(6, 0));
        assert_eq!(layout.eval(pt(6, 0), Dir::Bwd), pt(0, 0));
        // The 3-cycle occupies [1,3], the 2-cycle [4,5].
        assert_eq!(layout.eval(pt(3, 0), Dir::Fwd), pt(1, 0));
        assert_eq!(layout.eval(pt(5, 0), Dir::Fwd), pt(4, 0));
        // Other lines translate.
        assert_eq!(layout.eval(pt(2, 4), Dir::Fwd), pt(3, 4));
        check_inverse_inf(&layout, 9);
    }

    #[test]
    fn ledger_line_mixes_placed_and_filler() {
        // Finitely many infinite cycles forces the ledger onto line 0.
        let layout = InfLayout::new(&spec("inf:2, 3:1, 2:inf")).unwrap();
        // Lines 1 and 2 are the infinite cycles.
        assert_eq!(layout.eval(pt(0, 1), Dir::Fwd), pt(1, 1));
        assert_eq!(layout.eval(pt(0, 2), Dir::Fwd), pt(1, 2));
        // Line 0 starts with the placed 3-cycle on [0, 2]...
        assert_eq!(layout.eval(pt(2, 0), Dir::Fwd), pt(0, 0));
        // ...followed by 2-cycle filler blocks on both sides.
        assert_eq!(layout.eval(pt(3, 0), Dir::Fwd), pt(4, 0));
        assert_eq!(layout.eval(pt(4, 0), Dir::Fwd), pt(3, 0));
        assert_eq!(layout.eval(pt(-1, 0), Dir::Fwd), pt(-2, 0));
        // Other lines are pure filler.
        assert_eq!(layout.eval(pt(0, 3), Dir::Fwd), pt(1, 3));
        assert_eq!(layout.eval(pt(1, 3), Dir::Fwd), pt(0, 3));
        check_inverse_inf(&layout, 9);
    }

    #[test]
    fn whole_plane_carrier_follows_pinned_chain() {
        let layout = FinLayout::new(&spec("inf:1")).unwrap();
        let budget = Budget::new(1 << 20);
        assert_eq!(layout.eval(pt(0, 0), Dir::Fwd, &budget).unwrap(), pt(1, 0));
        assert_eq!(layout.eval(pt(1, 0), Dir::Fwd, &budget).unwrap(), pt(1, 1));
        assert_eq!(layout.eval(pt(1, 1), Dir::Fwd, &budget).unwrap(), pt(0, 1));
        // Lower half-plane joins into the origin.
        assert_eq!(layout.eval(pt(0, -1), Dir::Fwd, &budget).unwrap(), pt(0, 0));
        check_inverse_fin(&layout, 9);
    }

    #[test]
    fn whole_plane_carrier_is_a_single_cycle() {
        let layout = FinLayout::new(&spec("inf:1")).unwrap();
        let budget = Budget::new(1 << 20);
        let mut seen = std::collections::HashSet::new();
        // Start outside the box in the lower half-plane: the lower walk runs
        // inward toward the join at the origin, so everything it should
        // cover must lie between the start and the join.
        let mut p = pt(0, -22);
        for _ in 0..6_000 {
            assert!(seen.insert(p), "revisited {p:?}");
            p = layout.eval(p, Dir::Fwd, &budget).unwrap();
        }
        for x in -20..=20 {
            for y in -20..=20 {
                assert!(seen.contains(&pt(x, y)), "missed ({x},{y})");
            }
        }
    }

    #[test]
    fn split_carrier_follows_pinned_chain() {
        let layout = FinLayout::new(&spec("inf:2")).unwrap();
        let budget = Budget::new(1 << 20);
        for (p, q) in [
            (pt(0, 0), pt(1, 0)),
            (pt(1, 0), pt(1, 1)),
            (pt(1, 1), pt(0, 1)),
            (pt(0, 1), pt(0, 2)),
            (pt(-1, 0), pt(0, 0)), // mirrored half joins at the origin
        ] {
            assert_eq!(layout.eval(p, Dir::Fwd, &budget).unwrap(), q);
        }
        check_inverse_fin(&layout, 9);
    }

    #[test]
    fn split_carrier_has_exactly_k_orbits_locally() {
        // With k = 4 the lines −1 and −2 are translations and the lower
        // sweep starts at y <= −3.
        let layout = FinLayout::new(&spec("inf:4")).unwrap();
        let budget = Budget::new(1 << 20);
        assert_eq!(layout.eval(pt(5, -1), Dir::Fwd, &budget).unwrap(), pt(6, -1));
        assert_eq!(layout.eval(pt(5, -2), Dir::Fwd, &budget).unwrap(), pt(6, -2));
        // The reflected copy reverses arrows, so the image of the join
        // arrow (−1,0) → (0,0) runs (0,−3) → (−1,−3).
        assert_eq!(layout.eval(pt(0, -3), Dir::Fwd, &budget).unwrap(), pt(-1, -3));
        check_inverse_fin(&layout, 9);
    }

    #[test]
    fn placed_cycles_are_patched_into_the_sweep() {
        let layout = FinLayout::new(&spec("inf:1, 3:1")).unwrap();
        let budget = Budget::new(1 << 20);
        // The 3-cycle occupies [1,3] × {0}.
        assert_eq!(layout.eval(pt(1, 0), Dir::Fwd, &budget).unwrap(), pt(2, 0));
        assert_eq!(layout.eval(pt(3, 0), Dir::Fwd, &budget).unwrap(), pt(1, 0));
        // The sweep skips the block: (0,0) hops over (1,0) to (1,1).
        assert_eq!(layout.eval(pt(0, 0), Dir::Fwd, &budget).unwrap(), pt(1, 1));
        assert_eq!(layout.eval(pt(1, 1), Dir::Bwd, &budget).unwrap(), pt(0, 0));
        check_inverse_fin(&layout, 9);
    }

    #[test]
    fn infeasible_and_wrong_builder_specs_are_rejected() {
        assert!(matches!(
            FinLayout::new(&spec("inf:inf")),
            Err(EvalError::WrongBuilder { .. })
        ));
        assert!(matches!(
            InfLayout::new(&spec("inf:1")),
            Err(EvalError::WrongBuilder { .. })
        ));
        // A finite-cycle-only spec is padded with fixed points, so it now
        // routes to the line builder rather than being infeasible.
        assert!(InfLayout::new(&spec("3:1")).is_ok());
    }
}
