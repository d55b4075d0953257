//! Square-tiled covers of the one-holed torus.
//!
//! The base surface is a single square with its right edge glued to its
//! left and its top to its bottom, and the corner removed. A degree-`n`
//! cover is `n` squares `D_1..D_n` with the right edge of `D_i` glued to
//! the left edge of `D_{sigma(i)}` and the top of `D_i` to the bottom of
//! `D_{tau(i)}`. All four corners of every square lie over the puncture,
//! so vertices are excluded when counting the Euler characteristic.

use std::fmt;

use thiserror::Error;

use crate::perm::{CycleType, Perm};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum StripError {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("empty cover")]
    Empty,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Corner {
    SW,
    SE,
    NE,
    NW,
}

/// A glued family of `n` squares covering the one-holed torus.
#[derive(Debug, Clone)]
pub struct GluingComplex {
    pub squares: usize,
    pub sigma: Perm,
    pub tau: Perm,
    /// Corner orbits around the puncture preimages, each listed from its
    /// least corner in rotation order.
    pub vertex_classes: Vec<Vec<(usize, Corner)>>,
}

/// One step of the rotation around a vertex: cross the edge clockwise
/// of the current corner sector into the neighbouring square.
fn rotate(sigma: &Perm, tau: &Perm, sq: usize, c: Corner) -> (usize, Corner) {
    match c {
        // Crossing the left edge of D_i lands right of D_{sigma^-1(i)}.
        Corner::SW => (sigma.inverse().apply(sq), Corner::SE),
        // Crossing the bottom lands on top of D_{tau^-1(i)}.
        Corner::SE => (tau.inverse().apply(sq), Corner::NE),
        // Crossing the right edge lands left of D_{sigma(i)}.
        Corner::NE => (sigma.apply(sq), Corner::NW),
        // Crossing the top lands on the bottom of D_{tau(i)}.
        Corner::NW => (tau.apply(sq), Corner::SW),
    }
}

pub fn build_strip_cover(sigma: &Perm, tau: &Perm) -> Result<GluingComplex, StripError> {
    if sigma.degree() != tau.degree() {
        return Err(StripError::DegreeMismatch(sigma.degree(), tau.degree()));
    }
    let n = sigma.degree();
    if n == 0 {
        return Err(StripError::Empty);
    }
    let corners = [Corner::SW, Corner::SE, Corner::NE, Corner::NW];
    let mut seen = vec![false; 4 * n];
    let idx = |sq: usize, c: Corner| sq * 4 + c as usize;
    let mut vertex_classes = Vec::new();
    for sq in 0..n {
        for &c in &corners {
            if seen[idx(sq, c)] {
                continue;
            }
            let mut class = Vec::new();
            let (mut s, mut cc) = (sq, c);
            loop {
                seen[idx(s, cc)] = true;
                class.push((s, cc));
                let next = rotate(sigma, tau, s, cc);
                if next == (sq, c) {
                    break;
                }
                (s, cc) = next;
            }
            vertex_classes.push(class);
        }
    }
    Ok(GluingComplex {
        squares: n,
        sigma: sigma.clone(),
        tau: tau.clone(),
        vertex_classes,
    })
}

impl GluingComplex {
    /// `F - E` with all vertices excluded as puncture preimages:
    /// `n` faces and `2n` glued edge pairs give `-n`.
    pub fn euler_characteristic(&self) -> i64 {
        let faces = self.squares as i64;
        let edges = (4 * self.squares / 2) as i64;
        faces - edges
    }

    /// Cycle type of the boundary, read off by traversing the corner
    /// links: each puncture preimage contributes one boundary circle
    /// whose covering degree is a quarter of its corner count.
    pub fn boundary_monodromy(&self) -> CycleType {
        let mut parts: Vec<usize> = self
            .vertex_classes
            .iter()
            .map(|class| {
                debug_assert_eq!(class.len() % 4, 0);
                class.len() / 4
            })
            .collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        CycleType::new(parts, self.squares).expect("corner classes partition the squares")
    }

    pub fn boundary_circles(&self) -> usize {
        self.vertex_classes.len()
    }
}

impl fmt::Display for GluingComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "squares {}", self.squares)?;
        writeln!(f, "sigma {}", self.sigma)?;
        writeln!(f, "tau {}", self.tau)?;
        writeln!(f, "euler {}", self.euler_characteristic())?;
        writeln!(f, "boundary circles {}", self.boundary_circles())?;
        write!(f, "boundary monodromy {}", self.boundary_monodromy())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, s: &str) -> Perm {
        Perm::parse(n, s).unwrap()
    }

    #[test]
    fn three_square_example() {
        let sigma = p(3, "(1 2 3)");
        let tau = p(3, "(1 2)");
        let complex = build_strip_cover(&sigma, &tau).unwrap();
        assert_eq!(complex.euler_characteristic(), -3);
        assert_eq!(complex.boundary_circles(), 1);
        assert_eq!(complex.boundary_monodromy().parts(), &[3]);
    }

    #[test]
    fn trivial_cover_of_degree_one() {
        let complex = build_strip_cover(&Perm::identity(1), &Perm::identity(1)).unwrap();
        assert_eq!(complex.euler_characteristic(), -1);
        assert_eq!(complex.boundary_monodromy().parts(), &[1]);
    }

    #[test]
    fn commuting_pair_splits_boundary() {
        // sigma = tau = (1 2): commutator is trivial, so every sheet
        // carries its own boundary circle.
        let sigma = p(2, "(1 2)");
        let complex = build_strip_cover(&sigma, &sigma).unwrap();
        assert_eq!(complex.boundary_circles(), 2);
        assert_eq!(complex.boundary_monodromy().parts(), &[1, 1]);
    }

    #[test]
    fn monodromy_matches_commutator_class() {
        // The corner traversal must reproduce the commutator's cycle type;
        // the two routes are independent.
        let cases = [
            (5, "(1 2 3 4 5)", "(1 3)"),
            (5, "(1 2)(3 4)", "(2 5 3)"),
            (4, "(1 2 3 4)", "(1 2 3 4)"),
            (6, "(1 2 3)(4 5 6)", "(3 4)"),
        ];
        for (n, s, t) in cases {
            let sigma = p(n, s);
            let tau = p(n, t);
            let complex = build_strip_cover(&sigma, &tau).unwrap();
            assert_eq!(
                complex.boundary_monodromy(),
                Perm::commutator(&sigma, &tau).cycle_type(),
                "sigma={sigma} tau={tau}"
            );
            assert_eq!(complex.euler_characteristic(), -(n as i64));
        }
    }

    #[test]
    fn corner_count_is_conserved() {
        let sigma = p(4, "(1 2 3 4)");
        let tau = p(4, "(1 3)");
        let complex = build_strip_cover(&sigma, &tau).unwrap();
        let total: usize = complex.vertex_classes.iter().map(|c| c.len()).sum();
        assert_eq!(total, 16);
    }
}
