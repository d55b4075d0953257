//! Deterministic plane-filling sweeps used by the finite-decomposition
//! builder.
//!
//! Two primitive walks are defined here, both organized in square shells
//! `m = max(|x|, y)` resp. `m = max(x, y)`:
//!
//! * [`semi_fwd`] walks the upper half-plane `{y >= 0}` in a single chain
//!   starting `(0,0) → (1,0) → (1,1) → (0,1) → (−1,1) → (−1,0) → (−2,0) → …`,
//!   odd shells entered at `(m, 0)` and traversed counterclockwise, even
//!   shells entered at `(−m, 0)` and traversed clockwise.
//! * [`quad_fwd`] walks the quarter-plane `{x >= 0, y >= 0}` in a single
//!   chain `(0,0) → (1,0) → (1,1) → (0,1) → (0,2) → (1,2) → (2,2) → …`,
//!   odd shells entered at `(m, 0)` and exited at `(0, m)`, even shells
//!   entered at `(0, m)` and exited at `(m, 0)`.
//!
//! Every individual step moves to a lattice neighbour, so any permutation
//! assembled from these walks (plus reflections, whose gluing steps are also
//! vertical neighbours) changes `y` by at most one.
//!
//! The backward walks return `None` exactly at the chain origin `(0,0)`.

use super::Point;

/// Row reflection `(x, y) ↦ (x, c − y)`, an involution swapping `{y >= 0}`
/// with `{y <= c}` when `c <= −1`.  Used with `c = −1` to fold the lower
/// half-plane onto the upper one, and with `c = 1 − k` to fold the carrier
/// of the last of `k` infinite cycles.
pub fn reflect_rows(c: i64, p: Point) -> Point {
    Point { x: p.x, y: c - p.y }
}

/// Mirror `(x, y) ↦ (−1 − x, y)`, swapping `{x >= 0}` with `{x <= −1}`.
pub fn mirror_columns(p: Point) -> Point {
    Point { x: -1 - p.x, y: p.y }
}

/// Forward step of the half-plane sweep; defined for all `y >= 0`.
pub fn semi_fwd(p: Point) -> Point {
    let (x, y) = (p.x, p.y);
    debug_assert!(y >= 0);
    let m = x.abs().max(y);
    if m == 0 {
        return Point { x: 1, y: 0 };
    }
    if m % 2 == 1 {
        // Enter at (m, 0): up the column x = m, left along the row y = m,
        // down the column x = −m, exit to (−m − 1, 0).
        if x == m && y < m {
            Point { x, y: y + 1 }
        } else if y == m && x > -m {
            Point { x: x - 1, y }
        } else if y > 0 {
            Point { x, y: y - 1 }
        } else {
            Point { x: -m - 1, y: 0 }
        }
    } else {
        // Mirror image: enter at (−m, 0), up, right, down, exit to (m + 1, 0).
        if x == -m && y < m {
            Point { x, y: y + 1 }
        } else if y == m && x < m {
            Point { x: x + 1, y }
        } else if y > 0 {
            Point { x, y: y - 1 }
        } else {
            Point { x: m + 1, y: 0 }
        }
    }
}

/// Backward step of the half-plane sweep; `None` only at the origin.
pub fn semi_bwd(p: Point) -> Option<Point> {
    let (x, y) = (p.x, p.y);
    debug_assert!(y >= 0);
    let m = x.abs().max(y);
    if m == 0 {
        return None;
    }
    Some(if m % 2 == 1 {
        if x == m && y == 0 {
            // Shell entry point: predecessor is the previous shell's exit.
            Point { x: m - 1, y: 0 }
        } else if x == m {
            Point { x, y: y - 1 }
        } else if y == m {
            Point { x: x + 1, y }
        } else {
            Point { x, y: y + 1 }
        }
    } else if x == -m && y == 0 {
        Point { x: -m + 1, y: 0 }
    } else if x == -m {
        Point { x, y: y - 1 }
    } else if y == m {
        Point { x: x - 1, y }
    } else {
        Point { x, y: y + 1 }
    })
}

/// Forward step of the quarter-plane sweep; defined for all `x, y >= 0`.
pub fn quad_fwd(p: Point) -> Point {
    let (x, y) = (p.x, p.y);
    debug_assert!(x >= 0 && y >= 0);
    let m = x.max(y);
    if m == 0 {
        return Point { x: 1, y: 0 };
    }
    if m % 2 == 1 {
        // Enter at (m, 0): up the column x = m, left along the row y = m,
        // exit upward from (0, m).
        if x == m && y < m {
            Point { x, y: y + 1 }
        } else if x > 0 {
            Point { x: x - 1, y }
        } else {
            Point { x: 0, y: m + 1 }
        }
    } else {
        // Enter at (0, m): right along the row y = m, down the column x = m,
        // exit rightward from (m, 0).
        if y == m && x < m {
            Point { x: x + 1, y }
        } else if y > 0 {
            Point { x, y: y - 1 }
        } else {
            Point { x: m + 1, y: 0 }
        }
    }
}

/// Backward step of the quarter-plane sweep; `None` only at the origin.
pub fn quad_bwd(p: Point) -> Option<Point> {
    let (x, y) = (p.x, p.y);
    debug_assert!(x >= 0 && y >= 0);
    let m = x.max(y);
    if m == 0 {
        return None;
    }
    Some(if m % 2 == 1 {
        if x == m && y == 0 {
            Point { x: m - 1, y: 0 }
        } else if x == m {
            Point { x, y: y - 1 }
        } else {
            Point { x: x + 1, y }
        }
    } else if x == 0 && y == m {
        Point { x: 0, y: m - 1 }
    } else if y == m {
        Point { x: x - 1, y }
    } else {
        Point { x, y: y + 1 }
    })
}
