//! Lazily evaluated permutations of the integer lattice `Z²`.
//!
//! Permutations of an infinite set are represented as constructor-expression
//! trees ([`LazyPerm`]) exposing forward and backward evaluation at single
//! points; nothing is ever materialized.  Closed expressions exist for the
//! identity, vertical shifts, the two cycle-type builders, conjugators
//! realizing a prescribed commutator, interleaved roots of cycle families,
//! inverses, compositions and powers; a line-oriented text grammar
//! ([`grammar`]) round-trips every tree.
//!
//! # Conventions
//!
//! Unlike the finite-degree side of this crate (where products are read left
//! to right), products of lazy permutations are written and evaluated as
//! *function composition*: `comp(f, g)` — serialized `COMP(f, g)` — applies
//! `g` first, so `comp(f, g)(q) = f(g(q))`.  The commutator is
//! `[f, h] = f ∘ h ∘ f⁻¹ ∘ h⁻¹`.  Points are written `(x, y)`; the vertical
//! shift `SHIFT(s)` maps `(x, y) ↦ (x, y + s)`.
//!
//! Every evaluation is budgeted: walks inside constructors (conjugator
//! orbit chasing, root addressing, patched sweeps) charge elementary steps
//! against a [`Budget`], and exhausting it is an explicit error, never a
//! wrong answer.  Memo tables (cycle-matching in the finite-decomposition
//! conjugator) only ever cache results, so evaluation results are
//! deterministic and independent of call history.

pub mod conj;
pub mod family;
pub mod grammar;
pub mod layout;
pub mod ore;
pub mod spec;
pub mod sweeps;
pub mod window;

use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use thiserror::Error;

pub use family::{Family, FamilyKind};
pub use grammar::{parse_expr, write_expr};
pub use ore::{powers_decomposition, transitive_ore, OreMode};
pub use spec::{CaseMode, Count, CycleTypeSpec, SpecEntry, SpecError};
pub use window::{
    census_consistent_with_spec, check_vertical_discipline, required_census_radius,
    window_agree, window_commutator_check, window_cycle_census, window_points,
    window_transitivity, CycleCensus, TransitivityReport,
};

use layout::{FinLayout, InfLayout};

/// A lattice point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0, y: 0 };

    pub fn new(x: i64, y: i64) -> Self {
        Point { x, y }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Evaluation direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dir {
    Fwd,
    Bwd,
}

impl Dir {
    pub fn flip(self) -> Dir {
        match self {
            Dir::Fwd => Dir::Bwd,
            Dir::Bwd => Dir::Fwd,
        }
    }
}

/// Default number of elementary steps allowed per evaluation entry point.
pub const DEFAULT_EVAL_BUDGET: u64 = 1_000_000;

/// Step meter shared by the evaluators reached from one entry point.
///
/// Thread-safe so window sweeps can share a meter across worker threads.
#[derive(Debug)]
pub struct Budget {
    limit: u64,
    remaining: AtomicU64,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget { limit, remaining: AtomicU64::new(limit) }
    }

    pub fn charge(&self, cost: u64) -> Result<(), EvalError> {
        self.remaining
            .fetch_update(Ordering::Relaxed, Ordering::Relaxed, |r| r.checked_sub(cost))
            .map(|_| ())
            .map_err(|_| EvalError::BudgetExhausted { limit: self.limit })
    }

    pub fn remaining(&self) -> u64 {
        self.remaining.load(Ordering::Relaxed)
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(DEFAULT_EVAL_BUDGET)
    }
}

/// Errors surfaced by construction and evaluation of lazy permutations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EvalError {
    #[error("evaluation budget of {limit} elementary steps exhausted")]
    BudgetExhausted { limit: u64 },
    #[error("spec `{spec}` belongs to the {expected} builder")]
    WrongBuilder { expected: CaseMode, spec: String },
    #[error("infeasible spec: {0}")]
    InfeasibleSpec(String),
    #[error("invalid argument: {0}")]
    BadArgument(String),
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error("parse error: {0}")]
    Parse(String),
}

#[derive(Debug)]
pub(crate) enum Node {
    Id,
    Shift {
        step: i64,
    },
    SigmaInf {
        spec: CycleTypeSpec,
        layout: InfLayout,
    },
    SigmaFin {
        spec: CycleTypeSpec,
        layout: FinLayout,
    },
    Conj {
        mode: CaseMode,
        spec: CycleTypeSpec,
        seed: i64,
        tau: Family,
        psi: Family,
    },
    Inv {
        inner: LazyPerm,
    },
    Comp {
        outer: LazyPerm,
        inner: LazyPerm,
    },
    Root {
        family: Family,
        start: u64,
        group: u64,
        repeating: bool,
        seed: i64,
    },
    Pow {
        base: LazyPerm,
        exp: i64,
    },
}

/// A computable bijection of the lattice, exposed through budgeted forward
/// and backward evaluation.  Cheap to clone (shared tree).
#[derive(Clone, Debug)]
pub struct LazyPerm {
    node: Arc<Node>,
}

impl LazyPerm {
    pub(crate) fn from_node(node: Node) -> Self {
        LazyPerm { node: Arc::new(node) }
    }

    pub(crate) fn node(&self) -> &Node {
        &self.node
    }

    pub fn identity() -> Self {
        Self::from_node(Node::Id)
    }

    /// Vertical shift `(x, y) ↦ (x, y + step)`.
    pub fn shift(step: i64) -> Self {
        Self::from_node(Node::Shift { step })
    }

    /// Line-preserving realization of a spec with infinitely many cycles.
    pub fn sigma_infinite(spec: &CycleTypeSpec) -> Result<Self, EvalError> {
        let layout = InfLayout::new(spec)?;
        Ok(Self::from_node(Node::SigmaInf { spec: spec.clone(), layout }))
    }

    /// Bounded-vertical-step realization of a spec with finitely many
    /// cycles.
    pub fn sigma_finite(spec: &CycleTypeSpec) -> Result<Self, EvalError> {
        let layout = FinLayout::new(spec)?;
        Ok(Self::from_node(Node::SigmaFin { spec: spec.clone(), layout }))
    }

    /// Realization of a spec by whichever builder matches its regime.
    pub fn sigma(spec: &CycleTypeSpec) -> Result<Self, EvalError> {
        match spec.case() {
            CaseMode::CaseA => Self::sigma_infinite(spec),
            CaseMode::CaseB => Self::sigma_finite(spec),
        }
    }

    /// The spec and regime of a builder output (`None` for other nodes).
    pub fn built_spec(&self) -> Option<(CaseMode, &CycleTypeSpec)> {
        match self.node() {
            Node::SigmaInf { spec, .. } => Some((CaseMode::CaseA, spec)),
            Node::SigmaFin { spec, .. } => Some((CaseMode::CaseB, spec)),
            _ => None,
        }
    }

    pub fn inverse(&self) -> Self {
        match self.node() {
            Node::Inv { inner } => inner.clone(),
            _ => Self::from_node(Node::Inv { inner: self.clone() }),
        }
    }

    /// Composition applying `inner` first: `outer.after(inner)(q) =
    /// outer(inner(q))`.
    pub fn after(&self, inner: &LazyPerm) -> Self {
        Self::from_node(Node::Comp { outer: self.clone(), inner: inner.clone() })
    }

    /// `k`-th power (negative exponents via the inverse).
    pub fn pow(&self, k: i64) -> Self {
        Self::from_node(Node::Pow { base: self.clone(), exp: k })
    }

    /// Interleaved root over a slice of a cycle family: within each
    /// consecutive block of `group` cycles (starting at family index
    /// `start`, one block or repeating forever), the root advances from each
    /// cycle to the next and steps one position forward when wrapping, so
    /// its `group`-th power restricted to the block is the product of the
    /// block's cycles.  Points on cycles outside the slice are fixed.  The
    /// seed skews the position transported between consecutive cycles and
    /// never changes the `group`-th power.
    pub fn root(
        family: Family,
        start: u64,
        group: u64,
        repeating: bool,
        seed: i64,
    ) -> Result<Self, EvalError> {
        if group == 0 {
            return Err(EvalError::BadArgument("root group size must be at least 1".into()));
        }
        Ok(Self::from_node(Node::Root { family, start, group, repeating, seed }))
    }

    /// Commutator `[f, h] = f ∘ h ∘ f⁻¹ ∘ h⁻¹`.
    pub fn commutator(f: &LazyPerm, h: &LazyPerm) -> Self {
        f.after(h).after(&f.inverse()).after(&h.inverse())
    }

    /// Forward image under a fresh default budget.
    pub fn eval(&self, p: Point) -> Result<Point, EvalError> {
        self.eval_with(p, Dir::Fwd, &Budget::default())
    }

    /// Preimage under a fresh default budget.
    pub fn eval_back(&self, p: Point) -> Result<Point, EvalError> {
        self.eval_with(p, Dir::Bwd, &Budget::default())
    }

    /// Budgeted evaluation in either direction.
    pub fn eval_with(&self, p: Point, dir: Dir, budget: &Budget) -> Result<Point, EvalError> {
        budget.charge(1)?;
        match self.node() {
            Node::Id => Ok(p),
            Node::Shift { step } => {
                let dy = match dir {
                    Dir::Fwd => *step,
                    Dir::Bwd => -*step,
                };
                Ok(Point { x: p.x, y: p.y + dy })
            }
            Node::SigmaInf { layout, .. } => Ok(layout.eval(p, dir)),
            Node::SigmaFin { layout, .. } => layout.eval(p, dir, budget),
            Node::Conj { mode, seed, tau, psi, .. } => {
                conj::eval(*mode, *seed, tau, psi, p, dir, budget)
            }
            Node::Inv { inner } => inner.eval_with(p, dir.flip(), budget),
            Node::Comp { outer, inner } => match dir {
                Dir::Fwd => outer.eval_with(inner.eval_with(p, Dir::Fwd, budget)?, Dir::Fwd, budget),
                Dir::Bwd => inner.eval_with(outer.eval_with(p, Dir::Bwd, budget)?, Dir::Bwd, budget),
            },
            Node::Root { family, start, group, repeating, seed } => {
                root_eval(family, *start, *group, *repeating, *seed, p, dir, budget)
            }
            Node::Pow { base, exp } => {
                let dir = if *exp < 0 { dir.flip() } else { dir };
                let mut q = p;
                for _ in 0..exp.unsigned_abs() {
                    q = base.eval_with(q, dir, budget)?;
                }
                Ok(q)
            }
        }
    }

    /// Serialized grammar form of the expression tree.
    pub fn to_expr(&self) -> String {
        grammar::write_expr(self)
    }
}

impl fmt::Display for LazyPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_expr())
    }
}

impl FromStr for LazyPerm {
    type Err = EvalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        grammar::parse_expr(s)
    }
}

/// Evaluation of the interleaved-root constructor.
#[allow(clippy::too_many_arguments)]
fn root_eval(
    family: &Family,
    start: u64,
    group: u64,
    repeating: bool,
    seed: i64,
    p: Point,
    dir: Dir,
    budget: &Budget,
) -> Result<Point, EvalError> {
    let (t, m) = family.address(p, budget)?;
    if t < start || (!repeating && t >= start + group) {
        return Ok(p);
    }
    let u = (t - start) % group;
    let n = group as i64;
    // Positions are transported with a per-step skew of `seed`; the wrap
    // step undoes the accumulated skew and advances by one, so the
    // `group`-th power advances every point exactly one position along its
    // own cycle regardless of the seed.
    let (t2, m2) = match dir {
        Dir::Fwd => {
            if u + 1 < group {
                (t + 1, m + seed)
            } else {
                (t + 1 - group, m - seed * (n - 1) + 1)
            }
        }
        Dir::Bwd => {
            if u > 0 {
                (t - 1, m - seed)
            } else {
                (t + group - 1, m + seed * (n - 1) - 1)
            }
        }
    };
    family.point(t2, m2, budget)
}
