//! Enumerated families of disjoint cycles covering the lattice.
//!
//! A [`Family`] is an indexed collection of pairwise disjoint infinite
//! cycles whose union of supports is all of `Z²`, exposed through two total
//! budgeted maps:
//!
//! * `address(q) = (t, m)` — the index `t` of the cycle through `q` and the
//!   signed position `m` of `q` along that cycle, measured from the cycle's
//!   canonical base point;
//! * `point(t, m)` — the inverse lookup.
//!
//! Families are consumed by the conjugator (which transports one family onto
//! another orbit-by-orbit) and by the interleaved-root constructor.
//!
//! Index enumerations follow the zig-zag order `0, 1, −1, 2, −2, …` written
//! [`spiral`], so every family index is reached from a bounded region of the
//! plane and vice versa.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use super::spec::CycleTypeSpec;
use super::{Budget, Dir, EvalError, LazyPerm, Point};

/// Zig-zag enumeration of the integers: `0, 1, −1, 2, −2, …`.
pub(crate) fn spiral(k: u64) -> i64 {
    if k == 0 {
        0
    } else if k % 2 == 1 {
        ((k + 1) / 2) as i64
    } else {
        -((k / 2) as i64)
    }
}

/// Inverse of [`spiral`].
pub(crate) fn inv_spiral(x: i64) -> u64 {
    if x == 0 {
        0
    } else if x > 0 {
        (2 * x - 1) as u64
    } else {
        (-2 * x) as u64
    }
}

/// The kinds of cycle family the grammar can name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyKind {
    /// Horizontal lines, each traversed by `x ↦ x + 1`; line `y` has index
    /// `inv_spiral(y)` and base point `(0, y)`.
    Rows,
    /// Orbits of the vertical shift by `step`: for `d = |step|` the cycle
    /// with index `t` lives on column `spiral(t / d)` in the residue class
    /// `y ≡ t mod d`, with base point at the smallest nonnegative residue
    /// and positions advancing by `step`.
    Shift(i64),
    /// Cycles of `ψ = σ ∘ SHIFT(1)` for the line-preserving builder's `σ`.
    /// Every `ψ`-orbit crosses the axis `y = 0` exactly once; the orbit
    /// through `(c, 0)` has index `inv_spiral(c)` and base point `(c, 0)`.
    PsiA(CycleTypeSpec),
    /// Cycles of `ψ = σ ∘ SHIFT(2)` for the finite-decomposition builder's
    /// `σ`.  `ψ` raises `y` by 1, 2, or 3, so every orbit meets the band
    /// `y ∈ {0, 1, 2}` in at most three points; the orbit's *anchor* is its
    /// first band point in the fixed scan order `band_point(0), band_point(1),
    /// …`, orbits are indexed by the order in which their anchors appear in
    /// that scan, and positions are measured from the anchor.
    PsiB(CycleTypeSpec),
}

/// Scan over band points discovering anchors of the `PsiB` family.
///
/// The scan state is a pure function of how far the scan has advanced, so
/// memoizing it is call-order independent.
#[derive(Debug, Default)]
struct AnchorScan {
    anchors: Vec<Point>,
    index_by_anchor: HashMap<Point, u64>,
    next_band: u64,
}

/// Band point enumeration: index `k` names the point
/// `(spiral(k / 3), k mod 3)` of the band `Z × {0, 1, 2}`.
fn band_point(k: u64) -> Point {
    Point { x: spiral(k / 3), y: (k % 3) as i64 }
}

#[derive(Clone, Debug)]
pub struct Family {
    kind: FamilyKind,
    /// The permutation whose cycles are enumerated (`None` for the closed
    /// forms `Rows` and `Shift`).
    psi: Option<LazyPerm>,
    anchors: Option<Arc<Mutex<AnchorScan>>>,
}

impl Family {
    pub fn new(kind: FamilyKind) -> Result<Self, EvalError> {
        let (psi, anchors) = match &kind {
            FamilyKind::Rows => (None, None),
            FamilyKind::Shift(step) => {
                if *step == 0 {
                    return Err(EvalError::BadArgument("shift family needs a nonzero step".into()));
                }
                (None, None)
            }
            FamilyKind::PsiA(spec) => {
                let sigma = LazyPerm::sigma_infinite(spec)?;
                (Some(sigma.after(&LazyPerm::shift(1))), None)
            }
            FamilyKind::PsiB(spec) => {
                let sigma = LazyPerm::sigma_finite(spec)?;
                (
                    Some(sigma.after(&LazyPerm::shift(2))),
                    Some(Arc::new(Mutex::new(AnchorScan::default()))),
                )
            }
        };
        Ok(Family { kind, psi, anchors })
    }

    pub fn kind(&self) -> &FamilyKind {
        &self.kind
    }

    /// The enumerated permutation itself (product of all family cycles).
    pub fn product(&self) -> Result<LazyPerm, EvalError> {
        match &self.kind {
            FamilyKind::Rows => Err(EvalError::BadArgument(
                "row translations have no single product expression".into(),
            )),
            FamilyKind::Shift(step) => Ok(LazyPerm::shift(*step)),
            FamilyKind::PsiA(_) | FamilyKind::PsiB(_) => Ok(self.psi.clone().unwrap()),
        }
    }

    fn psi_walk(&self, from: Point, steps: i64, budget: &Budget) -> Result<Point, EvalError> {
        let psi = self.psi.as_ref().expect("walking requires an enumerated permutation");
        let dir = if steps >= 0 { Dir::Fwd } else { Dir::Bwd };
        let mut q = from;
        for _ in 0..steps.unsigned_abs() {
            q = psi.eval_with(q, dir, budget)?;
        }
        Ok(q)
    }

    /// Locates the anchor of the `PsiB` orbit through `q`, returning the
    /// anchor and the signed position of `q` relative to it.
    ///
    /// Along a `ψ`-orbit `y` is strictly increasing, so the orbit's band
    /// points split into those weakly behind `q` (found walking backward
    /// while `y >= 0`) and those strictly ahead (found walking forward while
    /// `y <= 2`); both walks terminate because each step changes `y` by at
    /// least one.
    fn locate_anchor(&self, q: Point, budget: &Budget) -> Result<(Point, i64), EvalError> {
        let psi = self.psi.as_ref().expect("anchor search requires a permutation");
        let mut band: Vec<(Point, i64)> = Vec::new();
        let mut cur = q;
        let mut s = 0i64;
        while cur.y >= 0 {
            budget.charge(1)?;
            if cur.y <= 2 {
                band.push((cur, s));
            }
            cur = psi.eval_with(cur, Dir::Bwd, budget)?;
            s -= 1;
        }
        cur = psi.eval_with(q, Dir::Fwd, budget)?;
        s = 1;
        while cur.y <= 2 {
            budget.charge(1)?;
            if cur.y >= 0 {
                band.push((cur, s));
            }
            cur = psi.eval_with(cur, Dir::Fwd, budget)?;
            s += 1;
        }
        let (anchor, s_anchor) = band
            .into_iter()
            .min_by_key(|(p, _)| 3 * inv_spiral(p.x) + p.y as u64)
            .expect("every orbit meets the band");
        Ok((anchor, -s_anchor))
    }

    /// Advances the anchor scan by one band point.  The cursor moves only
    /// after a successful probe, so a budget failure leaves the memo table
    /// exactly as if the call had never happened.
    fn scan_step(&self, scan: &mut AnchorScan, budget: &Budget) -> Result<(), EvalError> {
        let p = band_point(scan.next_band);
        let (anchor, _) = self.locate_anchor(p, budget)?;
        scan.next_band += 1;
        if anchor == p {
            let idx = scan.anchors.len() as u64;
            scan.anchors.push(p);
            scan.index_by_anchor.insert(p, idx);
        }
        Ok(())
    }

    fn anchor_of_index(&self, t: u64, budget: &Budget) -> Result<Point, EvalError> {
        let cell = self.anchors.as_ref().expect("anchor table");
        let mut scan = cell.lock().unwrap();
        while (scan.anchors.len() as u64) <= t {
            self.scan_step(&mut scan, budget)?;
        }
        Ok(scan.anchors[t as usize])
    }

    fn index_of_anchor(&self, anchor: Point, budget: &Budget) -> Result<u64, EvalError> {
        let cell = self.anchors.as_ref().expect("anchor table");
        let mut scan = cell.lock().unwrap();
        loop {
            if let Some(&i) = scan.index_by_anchor.get(&anchor) {
                return Ok(i);
            }
            self.scan_step(&mut scan, budget)?;
        }
    }

    /// Cycle index and signed position of `q`.
    pub fn address(&self, q: Point, budget: &Budget) -> Result<(u64, i64), EvalError> {
        budget.charge(1)?;
        match &self.kind {
            FamilyKind::Rows => Ok((inv_spiral(q.y), q.x)),
            FamilyKind::Shift(step) => {
                let d = step.abs();
                let r0 = q.y.rem_euclid(d);
                let t = d as u64 * inv_spiral(q.x) + r0 as u64;
                Ok((t, (q.y - r0) / step))
            }
            FamilyKind::PsiA(_) => {
                let base = self.psi_walk(q, -q.y, budget)?;
                debug_assert_eq!(base.y, 0);
                Ok((inv_spiral(base.x), q.y))
            }
            FamilyKind::PsiB(_) => {
                let (anchor, m) = self.locate_anchor(q, budget)?;
                Ok((self.index_of_anchor(anchor, budget)?, m))
            }
        }
    }

    /// The point at signed position `m` of cycle `t`.
    pub fn point(&self, t: u64, m: i64, budget: &Budget) -> Result<Point, EvalError> {
        budget.charge(1)?;
        match &self.kind {
            FamilyKind::Rows => Ok(Point { x: m, y: spiral(t) }),
            FamilyKind::Shift(step) => {
                let d = step.unsigned_abs();
                let col = spiral(t / d);
                let r0 = (t % d) as i64;
                Ok(Point { x: col, y: r0 + m * *step })
            }
            FamilyKind::PsiA(_) => self.psi_walk(Point { x: spiral(t), y: 0 }, m, budget),
            FamilyKind::PsiB(_) => {
                let anchor = self.anchor_of_index(t, budget)?;
                self.psi_walk(anchor, m, budget)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(x: i64, y: i64) -> Point {
        Point::new(x, y)
    }

    fn spec(text: &str) -> CycleTypeSpec {
        CycleTypeSpec::parse(text).unwrap()
    }

    #[test]
    fn spiral_enumeration_round_trips() {
        assert_eq!((0..7).map(spiral).collect::<Vec<_>>(), vec![0, 1, -1, 2, -2, 3, -3]);
        for k in 0..100 {
            assert_eq!(inv_spiral(spiral(k)), k);
        }
    }

    fn check_round_trip(fam: &Family, r: i64) {
        let budget = Budget::new(1 << 22);
        for x in -r..=r {
            for y in -r..=r {
                let q = pt(x, y);
                let (t, m) = fam.address(q, &budget).unwrap();
                assert_eq!(fam.point(t, m, &budget).unwrap(), q, "{:?} at {q:?}", fam.kind());
                // Positions advance along the enumerated permutation.
                if let Ok(p) = fam.product() {
                    let next = p.eval(q).unwrap();
                    let (t2, m2) = fam.address(next, &budget).unwrap();
                    assert_eq!((t2, m2), (t, m + 1), "{:?} advance at {q:?}", fam.kind());
                }
            }
        }
    }

    #[test]
    fn rows_and_shift_addressing() {
        let rows = Family::new(FamilyKind::Rows).unwrap();
        let budget = Budget::default();
        assert_eq!(rows.address(pt(5, -1), &budget).unwrap(), (2, 5));
        check_round_trip(&rows, 8);

        let tau = Family::new(FamilyKind::Shift(2)).unwrap();
        // Column 0, even residue: index 0; odd residue: index 1.
        assert_eq!(tau.address(pt(0, 0), &budget).unwrap(), (0, 0));
        assert_eq!(tau.address(pt(0, 1), &budget).unwrap(), (1, 0));
        assert_eq!(tau.address(pt(0, -2), &budget).unwrap(), (0, -1));
        assert_eq!(tau.address(pt(1, 5), &budget).unwrap(), (3, 2));
        check_round_trip(&tau, 8);

        let down = Family::new(FamilyKind::Shift(-1)).unwrap();
        assert_eq!(down.address(pt(0, -3), &budget).unwrap(), (0, 3));
        check_round_trip(&down, 8);
    }

    #[test]
    fn line_builder_psi_orbits_cross_the_axis_once() {
        let fam = Family::new(FamilyKind::PsiA(spec("2:inf"))).unwrap();
        check_round_trip(&fam, 7);
        let budget = Budget::default();
        // ψ raises y by exactly 1, so position equals height.
        let (t, m) = fam.address(pt(0, 4), &budget).unwrap();
        assert_eq!(m, 4);
        let back = fam.point(t, 0, &budget).unwrap();
        assert_eq!(back.y, 0);
    }

    #[test]
    fn finite_builder_psi_orbits_anchor_in_the_band() {
        let fam = Family::new(FamilyKind::PsiB(spec("inf:1"))).unwrap();
        check_round_trip(&fam, 6);
        let budget = Budget::new(1 << 22);
        // Anchors are genuine band points and index_of/anchor_of invert
        // each other.
        for t in 0..12 {
            let a = fam.anchor_of_index(t, &budget).unwrap();
            assert!((0..=2).contains(&a.y), "anchor {a:?} outside band");
            assert_eq!(fam.index_of_anchor(a, &budget).unwrap(), t);
        }
    }

    #[test]
    fn distinct_points_get_distinct_addresses() {
        for kind in [
            FamilyKind::Rows,
            FamilyKind::Shift(2),
            FamilyKind::PsiA(spec("inf:inf")),
            FamilyKind::PsiB(spec("inf:2")),
        ] {
            let fam = Family::new(kind).unwrap();
            let budget = Budget::new(1 << 22);
            let mut seen = std::collections::HashMap::new();
            for x in -5..=5 {
                for y in -5..=5 {
                    let q = pt(x, y);
                    let addr = fam.address(q, &budget).unwrap();
                    if let Some(prev) = seen.insert(addr, q) {
                        panic!("{:?}: {prev:?} and {q:?} share address {addr:?}", fam.kind());
                    }
                }
            }
        }
    }
}
