//! Compact surfaces with boundary, their fundamental-group relators, and
//! finite covers described by permutation images of the generators.
//!
//! An orientable surface of genus `g` with `k` boundary circles has the
//! relator `[a_1,b_1]...[a_g,b_g] s_1...s_k = e`; a non-orientable one
//! with `g` cross-caps has `v_1^2...v_g^2 s_1...s_k = e`. Products are
//! left-to-right as in [`crate::perm`].

use thiserror::Error;

use crate::perm::{orbits, Perm};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SurfaceError {
    #[error("a non-orientable surface needs at least one cross-cap")]
    NonOrientableGenusZero,
    #[error("expected {0} generators, got {1}")]
    GeneratorCount(usize, usize),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("relator does not evaluate to the identity")]
    RelatorBroken,
}

/// Topological type: orientability, genus (cross-cap count when
/// non-orientable), and number of boundary circles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SurfaceSpec {
    pub orientable: bool,
    pub genus: usize,
    pub boundary: usize,
}

impl SurfaceSpec {
    pub fn new(orientable: bool, genus: usize, boundary: usize) -> Result<Self, SurfaceError> {
        if !orientable && genus == 0 {
            return Err(SurfaceError::NonOrientableGenusZero);
        }
        Ok(SurfaceSpec {
            orientable,
            genus,
            boundary,
        })
    }

    /// `2 - 2g - k` orientable, `2 - g - k` non-orientable.
    pub fn euler_characteristic(&self) -> i64 {
        let g = self.genus as i64;
        let k = self.boundary as i64;
        if self.orientable {
            2 - 2 * g - k
        } else {
            2 - g - k
        }
    }

    pub fn is_planar(&self) -> bool {
        self.orientable && self.genus == 0
    }
}

/// Permutation images of the generators of a surface group, one image per
/// generator, all of the same degree.
#[derive(Debug, Clone)]
pub struct SurfaceRep {
    pub spec: SurfaceSpec,
    pub degree: usize,
    /// `(a_j, b_j)` pairs; empty for non-orientable surfaces.
    pub handles: Vec<(Perm, Perm)>,
    /// `v_j` images; empty for orientable surfaces.
    pub crosscaps: Vec<Perm>,
    /// Boundary images `s_1..s_k`.
    pub boundary: Vec<Perm>,
}

impl SurfaceRep {
    pub fn orientable(
        genus: usize,
        handles: Vec<(Perm, Perm)>,
        boundary: Vec<Perm>,
    ) -> Result<Self, SurfaceError> {
        let spec = SurfaceSpec::new(true, genus, boundary.len())?;
        if handles.len() != genus {
            return Err(SurfaceError::GeneratorCount(genus, handles.len()));
        }
        let rep = SurfaceRep {
            spec,
            degree: 0,
            handles,
            crosscaps: Vec::new(),
            boundary,
        };
        rep.with_checked_degree()
    }

    pub fn non_orientable(
        genus: usize,
        crosscaps: Vec<Perm>,
        boundary: Vec<Perm>,
    ) -> Result<Self, SurfaceError> {
        let spec = SurfaceSpec::new(false, genus, boundary.len())?;
        if crosscaps.len() != genus {
            return Err(SurfaceError::GeneratorCount(genus, crosscaps.len()));
        }
        let rep = SurfaceRep {
            spec,
            degree: 0,
            handles: Vec::new(),
            crosscaps,
            boundary,
        };
        rep.with_checked_degree()
    }

    fn with_checked_degree(mut self) -> Result<Self, SurfaceError> {
        let mut degree = None;
        for p in self.all_images() {
            match degree {
                None => degree = Some(p.degree()),
                Some(d) if d != p.degree() => {
                    return Err(SurfaceError::DegreeMismatch(d, p.degree()))
                }
                _ => {}
            }
        }
        self.degree = degree.unwrap_or(0);
        Ok(self)
    }

    pub fn all_images(&self) -> Vec<Perm> {
        let mut out = Vec::new();
        for (a, b) in &self.handles {
            out.push(a.clone());
            out.push(b.clone());
        }
        out.extend(self.crosscaps.iter().cloned());
        out.extend(self.boundary.iter().cloned());
        out
    }

    /// The surface relator evaluated at this representation.
    pub fn relator(&self) -> Perm {
        let mut acc = Perm::identity(self.degree);
        for (a, b) in &self.handles {
            acc = acc.compose(&Perm::commutator(a, b));
        }
        for v in &self.crosscaps {
            acc = acc.compose(v).compose(v);
        }
        for s in &self.boundary {
            acc = acc.compose(s);
        }
        acc
    }
}

/// True iff the relator maps to the identity, i.e. the images define a
/// degree-`n` covering of the surface.
pub fn check_representation(rep: &SurfaceRep) -> bool {
    rep.relator().is_identity()
}

/// One connected component of the covering surface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverComponent {
    /// 0-based sheet labels in this component, sorted.
    pub points: Vec<usize>,
    pub degree: usize,
    pub euler_characteristic: i64,
    /// For each boundary index (0-based), the degrees of the circles
    /// lying over it, descending.
    pub boundary_circles: Vec<(usize, Vec<usize>)>,
    /// Genus of the component; present iff the base is orientable.
    pub genus: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverDescription {
    pub components: Vec<CoverComponent>,
}

impl CoverDescription {
    pub fn is_connected(&self) -> bool {
        self.components.len() <= 1
    }

    pub fn total_boundary_circles(&self) -> usize {
        self.components
            .iter()
            .map(|c| {
                c.boundary_circles
                    .iter()
                    .map(|(_, ds)| ds.len())
                    .sum::<usize>()
            })
            .sum()
    }
}

/// Decomposes a covering into connected components with their boundary
/// circle structure. Requires a valid representation.
pub fn describe_cover(rep: &SurfaceRep) -> Result<CoverDescription, SurfaceError> {
    if !check_representation(rep) {
        return Err(SurfaceError::RelatorBroken);
    }
    let n = rep.degree;
    let images = rep.all_images();
    let base_chi = rep.spec.euler_characteristic();
    let mut components = Vec::new();
    for orbit in orbits(&images, n) {
        let degree = orbit.len();
        let chi = base_chi * degree as i64;
        let in_orbit = |x: usize| orbit.binary_search(&x).is_ok();
        let mut boundary_circles = Vec::new();
        let mut total_circles = 0usize;
        for (i, s) in rep.boundary.iter().enumerate() {
            let mut degs: Vec<usize> = s
                .cycles()
                .into_iter()
                .filter(|c| in_orbit(c[0]))
                .map(|c| c.len())
                .collect();
            degs.sort_unstable_by(|a, b| b.cmp(a));
            total_circles += degs.len();
            boundary_circles.push((i, degs));
        }
        let genus = if rep.spec.orientable {
            // chi = 2 - 2g - circles; covers of orientable surfaces are
            // orientable, so this is a non-negative even split.
            let num = 2 - chi - total_circles as i64;
            assert!(num >= 0 && num % 2 == 0, "inconsistent component data");
            Some((num / 2) as usize)
        } else {
            None
        };
        components.push(CoverComponent {
            points: orbit,
            degree,
            euler_characteristic: chi,
            boundary_circles,
            genus,
        });
    }
    Ok(CoverDescription { components })
}
