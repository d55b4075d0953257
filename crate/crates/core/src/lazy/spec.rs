//! Cycle-type specifications for permutations of a countably infinite set.
//!
//! A conjugacy class of a permutation of a countable set is determined by the
//! function sending each cycle size (including `∞` and fixed points) to the
//! number of cycles of that size (a cardinal up to `ℵ0`).  A
//! [`CycleTypeSpec`] records that function as a finite list of
//! `(size, count)` entries with pairwise distinct sizes.
//!
//! Every spec describes a permutation of an infinite set.  A spec whose
//! entries all have finite size and finite count would only cover finitely
//! many points, so it is padded with `(1, ℵ0)` fixed points on construction;
//! the padding is part of the documented normal form.

use std::fmt;

use thiserror::Error;

/// A cycle size or cycle count that may be countably infinite.
///
/// `Infinite` stands for `∞` when used as a size and for `ℵ0` when used as a
/// count; both are written `inf` in text form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Count {
    Finite(u64),
    Infinite,
}

impl Count {
    pub fn is_infinite(self) -> bool {
        matches!(self, Count::Infinite)
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            Count::Finite(n) => Some(n),
            Count::Infinite => None,
        }
    }
}

impl fmt::Display for Count {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Count::Finite(n) => write!(f, "{n}"),
            Count::Infinite => write!(f, "inf"),
        }
    }
}

/// One `size: count` entry of a cycle-type specification.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SpecEntry {
    pub size: Count,
    pub count: Count,
}

/// Errors raised while building or parsing a [`CycleTypeSpec`].
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpecError {
    #[error("cycle size must be at least 1")]
    ZeroSize,
    #[error("duplicate cycle size {0}")]
    DuplicateSize(Count),
    #[error("malformed spec entry `{0}`: expected `size:count`")]
    MalformedEntry(String),
    #[error("malformed spec value `{0}`: expected a nonnegative integer or `inf`")]
    MalformedValue(String),
    #[error("empty specification")]
    Empty,
}

/// Which of the two construction regimes realizes a spec on the lattice.
///
/// Specs with finitely many cycles in total (every count finite — forcing at
/// least one infinite cycle) are realized by the finite-decomposition builder
/// (`CaseB`); everything else, in particular any spec with `ℵ0` fixed points,
/// by the line-preserving builder (`CaseA`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CaseMode {
    CaseA,
    CaseB,
}

impl fmt::Display for CaseMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CaseMode::CaseA => write!(f, "caseA"),
            CaseMode::CaseB => write!(f, "caseB"),
        }
    }
}

/// Normalized cycle-type specification.
///
/// Entries are kept sorted with the infinite size first and finite sizes in
/// decreasing order; zero-count entries are dropped; a spec with finite total
/// support gains the `(1, ℵ0)` padding entry.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycleTypeSpec {
    entries: Vec<SpecEntry>,
}

impl CycleTypeSpec {
    /// Builds a normalized spec from raw entries.
    pub fn new(raw: impl IntoIterator<Item = SpecEntry>) -> Result<Self, SpecError> {
        let mut entries: Vec<SpecEntry> = Vec::new();
        for e in raw {
            if e.size == Count::Finite(0) {
                return Err(SpecError::ZeroSize);
            }
            if e.count == Count::Finite(0) {
                continue;
            }
            if entries.iter().any(|p| p.size == e.size) {
                return Err(SpecError::DuplicateSize(e.size));
            }
            entries.push(e);
        }
        let infinite_support_points = entries.iter().any(|e| {
            e.size.is_infinite() || (e.count.is_infinite() && e.size != Count::Finite(0))
        });
        if !infinite_support_points {
            // Total support is finite: pad with infinitely many fixed points
            // so the spec describes a permutation of the whole lattice.
            if let Some(fp) = entries.iter_mut().find(|e| e.size == Count::Finite(1)) {
                fp.count = Count::Infinite;
            } else {
                entries.push(SpecEntry { size: Count::Finite(1), count: Count::Infinite });
            }
        }
        if entries.is_empty() {
            return Err(SpecError::Empty);
        }
        entries.sort_by(|a, b| match (a.size, b.size) {
            (Count::Infinite, Count::Infinite) => std::cmp::Ordering::Equal,
            (Count::Infinite, _) => std::cmp::Ordering::Less,
            (_, Count::Infinite) => std::cmp::Ordering::Greater,
            (Count::Finite(x), Count::Finite(y)) => y.cmp(&x),
        });
        Ok(CycleTypeSpec { entries })
    }

    /// Convenience constructor from `(size, count)` pairs.
    pub fn from_pairs(pairs: &[(Count, Count)]) -> Result<Self, SpecError> {
        Self::new(pairs.iter().map(|&(size, count)| SpecEntry { size, count }))
    }

    /// Parses the text form: comma-separated `size:count` with `inf` for the
    /// infinite value, e.g. `inf:1, 1:inf`.
    pub fn parse(text: &str) -> Result<Self, SpecError> {
        fn value(tok: &str) -> Result<Count, SpecError> {
            let tok = tok.trim();
            if tok.eq_ignore_ascii_case("inf") {
                return Ok(Count::Infinite);
            }
            tok.parse::<u64>()
                .map(Count::Finite)
                .map_err(|_| SpecError::MalformedValue(tok.to_string()))
        }
        let mut entries = Vec::new();
        for part in text.split(',') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let (s, c) = part
                .split_once(':')
                .ok_or_else(|| SpecError::MalformedEntry(part.to_string()))?;
            entries.push(SpecEntry { size: value(s)?, count: value(c)? });
        }
        Self::new(entries)
    }

    pub fn entries(&self) -> &[SpecEntry] {
        &self.entries
    }

    /// Count of infinite cycles (zero if none are prescribed).
    pub fn infinite_cycles(&self) -> Count {
        self.entries
            .iter()
            .find(|e| e.size.is_infinite())
            .map(|e| e.count)
            .unwrap_or(Count::Finite(0))
    }

    pub fn has_infinite_cycle(&self) -> bool {
        self.infinite_cycles() != Count::Finite(0)
    }

    /// Finite-size entries placed a fixed number of times, largest size
    /// first: the deterministically placed cycles of the builders.
    pub fn placed_entries(&self) -> Vec<(u64, u64)> {
        self.entries
            .iter()
            .filter_map(|e| match (e.size, e.count) {
                (Count::Finite(s), Count::Finite(m)) => Some((s, m)),
                _ => None,
            })
            .collect()
    }

    /// Total number of points covered by the placed cycles.
    pub fn placed_support(&self) -> u64 {
        self.placed_entries().iter().map(|&(s, m)| s * m).sum()
    }

    /// Finite sizes prescribed with count `ℵ0`, in increasing size order:
    /// the periodic filler cycles of the line-preserving builder.
    pub fn filler_sizes(&self) -> Vec<u64> {
        let mut sizes: Vec<u64> = self
            .entries
            .iter()
            .filter_map(|e| match (e.size, e.count) {
                (Count::Finite(s), Count::Infinite) => Some(s),
                _ => None,
            })
            .collect();
        sizes.sort_unstable();
        sizes
    }

    /// Total number of cycles, counting fixed points as cycles.
    pub fn total_cycles(&self) -> Count {
        let mut total = 0u64;
        for e in &self.entries {
            match e.count {
                Count::Infinite => return Count::Infinite,
                Count::Finite(m) => total += m,
            }
        }
        Count::Finite(total)
    }

    /// Construction regime: finitely many cycles in total goes to the
    /// finite-decomposition builder, everything else to the line-preserving
    /// builder.
    pub fn case(&self) -> CaseMode {
        match self.total_cycles() {
            Count::Finite(_) => CaseMode::CaseB,
            Count::Infinite => CaseMode::CaseA,
        }
    }

    /// True for the all-fixed-points spec (the identity permutation).
    pub fn is_identity(&self) -> bool {
        self.entries.len() == 1
            && self.entries[0].size == Count::Finite(1)
            && self.entries[0].count == Count::Infinite
    }

    /// True if the spec is exactly one infinite cycle, optionally together
    /// with fixed points (and nothing else).
    pub fn is_single_infinite_cycle(&self, allow_fixed_points: bool) -> bool {
        let mut saw_cycle = false;
        for e in &self.entries {
            match e.size {
                Count::Infinite => {
                    if e.count != Count::Finite(1) {
                        return false;
                    }
                    saw_cycle = true;
                }
                Count::Finite(1) if allow_fixed_points => {}
                _ => return false,
            }
        }
        saw_cycle
    }

    /// True if the described permutation moves infinitely many points: some
    /// infinite cycle, or infinitely many cycles of some size at least 2.
    pub fn has_infinite_support(&self) -> bool {
        self.entries.iter().any(|e| match e.size {
            Count::Infinite => true,
            Count::Finite(s) => s >= 2 && e.count.is_infinite(),
        })
    }

    /// Parity of the permutation when its support is finite: `Some(0)` for
    /// even, `Some(1)` for odd, `None` when the support is infinite.
    pub fn finite_support_parity(&self) -> Option<u8> {
        if self.has_infinite_support() {
            return None;
        }
        let mut parity = 0u64;
        for e in &self.entries {
            if let (Count::Finite(s), Count::Finite(m)) = (e.size, e.count) {
                parity += (s - 1) * m;
            }
        }
        Some((parity % 2) as u8)
    }
}

impl fmt::Display for CycleTypeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for e in &self.entries {
            if !first {
                write!(f, ", ")?;
            }
            write!(f, "{}:{}", e.size, e.count)?;
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(text: &str) -> CycleTypeSpec {
        CycleTypeSpec::parse(text).unwrap()
    }

    #[test]
    fn parse_and_display_round_trip() {
        let s = spec("inf:1, 1:inf");
        assert_eq!(s.to_string(), "inf:1, 1:inf");
        let s = spec("2:inf,inf:3");
        assert_eq!(s.to_string(), "inf:3, 2:inf");
        assert_eq!(spec(&s.to_string()), s);
    }

    #[test]
    fn finite_support_is_padded_with_fixed_points() {
        let s = spec("3:1");
        assert_eq!(s.to_string(), "3:1, 1:inf");
        // Padding merges with an explicit finite fixed-point entry.
        let s = spec("3:1, 1:5");
        assert_eq!(s.to_string(), "3:1, 1:inf");
    }

    #[test]
    fn zero_counts_are_dropped() {
        let s = spec("inf:2, 5:0");
        assert_eq!(s.to_string(), "inf:2");
    }

    #[test]
    fn duplicate_sizes_rejected() {
        assert!(matches!(
            CycleTypeSpec::parse("2:1, 2:3"),
            Err(SpecError::DuplicateSize(Count::Finite(2)))
        ));
        assert!(CycleTypeSpec::parse("0:1").is_err());
        assert!(CycleTypeSpec::parse("2").is_err());
        assert!(CycleTypeSpec::parse("a:b").is_err());
    }

    #[test]
    fn case_routing() {
        // All counts finite (with an infinite cycle): finite-decomposition.
        assert_eq!(spec("inf:1").case(), CaseMode::CaseB);
        assert_eq!(spec("inf:2, 4:5").case(), CaseMode::CaseB);
        // Any infinite count: line-preserving.
        assert_eq!(spec("inf:inf").case(), CaseMode::CaseA);
        assert_eq!(spec("2:inf").case(), CaseMode::CaseA);
        assert_eq!(spec("inf:1, 1:inf").case(), CaseMode::CaseA);
        // Finite support pads fixed points, which forces the line case.
        assert_eq!(spec("3:1").case(), CaseMode::CaseA);
    }

    #[test]
    fn classification_queries() {
        assert!(spec("1:inf").is_identity());
        assert!(!spec("2:1").is_identity());
        assert!(spec("inf:1").is_single_infinite_cycle(false));
        assert!(spec("inf:1, 1:inf").is_single_infinite_cycle(true));
        assert!(!spec("inf:1, 1:inf").is_single_infinite_cycle(false));
        assert!(!spec("inf:2").is_single_infinite_cycle(true));
        assert!(!spec("inf:1, 2:1").is_single_infinite_cycle(true));

        assert!(spec("inf:1").has_infinite_support());
        assert!(spec("2:inf").has_infinite_support());
        assert!(!spec("2:1").has_infinite_support());
        assert!(!spec("1:inf").has_infinite_support());

        assert_eq!(spec("2:1").finite_support_parity(), Some(1));
        assert_eq!(spec("3:1").finite_support_parity(), Some(0));
        assert_eq!(spec("2:2, 3:1").finite_support_parity(), Some(0));
        assert_eq!(spec("inf:1").finite_support_parity(), None);
    }

    #[test]
    fn placed_and_filler_views() {
        let s = spec("inf:2, 4:5, 2:inf, 3:1");
        assert_eq!(s.placed_entries(), vec![(4, 5), (3, 1)]);
        assert_eq!(s.placed_support(), 23);
        assert_eq!(s.filler_sizes(), vec![2]);
        assert_eq!(s.infinite_cycles(), Count::Finite(2));
    }
}
