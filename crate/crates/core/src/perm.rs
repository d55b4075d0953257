//! Finite permutations of `{1..n}` and their cycle structure.
//!
//! Products are read left to right: `compose(a, b)` applies `a` first,
//! so `compose(a, b)` sends `x` to `b(a(x))`. The commutator is
//! `[a, b] = a b a^-1 b^-1` in that product, and `conjugate(p, q)` is
//! `q^-1 p q`, the relabelling of `p` along `q`. Points are 1-based in
//! all text I/O and 0-based internally.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use num::bigint::BigUint;
use num::One;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PermError {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("invalid image list: not a bijection of 0..{0}")]
    NotBijective(usize),
    #[error("cycle entry {0} out of range 1..={1}")]
    EntryOutOfRange(usize, usize),
    #[error("cycle entry {0} repeated")]
    EntryRepeated(usize),
    #[error("malformed cycle notation: {0}")]
    Malformed(String),
    #[error("parts {0:?} do not sum to degree {1}")]
    BadPartition(Vec<usize>, usize),
}

/// A permutation of `{0..n-1}`, stored as its image list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm {
            images: (0..n).collect(),
        }
    }

    /// Builds a permutation from its 0-based image list.
    pub fn from_images(images: Vec<usize>) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &im in &images {
            if im >= n || seen[im] {
                return Err(PermError::NotBijective(n));
            }
            seen[im] = true;
        }
        Ok(Perm { images })
    }

    /// Builds a permutation of degree `n` from disjoint cycles with
    /// 1-based entries. Fixed points may be omitted.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self, PermError> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut seen = vec![false; n];
        for cycle in cycles {
            for &e in cycle {
                if e == 0 || e > n {
                    return Err(PermError::EntryOutOfRange(e, n));
                }
                if seen[e - 1] {
                    return Err(PermError::EntryRepeated(e));
                }
                seen[e - 1] = true;
            }
            for (i, &e) in cycle.iter().enumerate() {
                let next = cycle[(i + 1) % cycle.len()];
                images[e - 1] = next - 1;
            }
        }
        Ok(Perm { images })
    }

    /// Parses cycle notation such as `(1 2 3)(4 5)`. `()` is the identity.
    pub fn parse(n: usize, s: &str) -> Result<Self, PermError> {
        let s = s.trim();
        if s.is_empty() {
            return Err(PermError::Malformed("empty string".into()));
        }
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut rest = s;
        while !rest.is_empty() {
            if !rest.starts_with('(') {
                return Err(PermError::Malformed(format!("expected '(' in {s:?}")));
            }
            let close = rest
                .find(')')
                .ok_or_else(|| PermError::Malformed(format!("unclosed '(' in {s:?}")))?;
            let body = &rest[1..close];
            let mut cycle = Vec::new();
            for tok in body.split_whitespace() {
                let e: usize = tok
                    .parse()
                    .map_err(|_| PermError::Malformed(format!("bad entry {tok:?}")))?;
                cycle.push(e);
            }
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
            rest = rest[close + 1..].trim_start();
        }
        Perm::from_cycles(n, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 0-based point `x`.
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &im)| i == im)
    }

    /// `self` followed by `other`: `x` maps to `other(self(x))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Perm {
            images: self.images.iter().map(|&i| other.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0; self.degree()];
        for (i, &im) in self.images.iter().enumerate() {
            images[im] = i;
        }
        Perm { images }
    }

    /// Power by repeated squaring; negative exponents invert first.
    pub fn pow(&self, k: i64) -> Perm {
        let mut base = if k < 0 { self.inverse() } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Perm::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&base);
            }
            base = base.compose(&base);
            e >>= 1;
        }
        acc
    }

    /// `[a, b] = a b a^-1 b^-1` in the left-to-right product.
    pub fn commutator(a: &Perm, b: &Perm) -> Perm {
        a.compose(b).compose(&a.inverse()).compose(&b.inverse())
    }

    /// `q^-1 p q`: sends `q(i)` to `q(p(i))`.
    pub fn conjugate(p: &Perm, q: &Perm) -> Perm {
        assert_eq!(p.degree(), q.degree(), "degree mismatch");
        let mut images = vec![0; p.degree()];
        for i in 0..p.degree() {
            images[q.images[i]] = q.images[p.images[i]];
        }
        Perm { images }
    }

    /// Disjoint cycles in canonical form: each cycle starts at its least
    /// point, cycles ordered by least point, fixed points included.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.images[start];
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_type(&self) -> CycleType {
        let mut parts: Vec<usize> = self.cycles().iter().map(|c| c.len()).collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        CycleType { parts }
    }

    /// +1 for even permutations, -1 for odd.
    pub fn sign(&self) -> i8 {
        let transpositions: usize = self.cycles().iter().map(|c| c.len() - 1).sum();
        if transpositions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn is_n_cycle(&self) -> bool {
        let n = self.degree();
        n > 0 && self.cycle_type().parts == [n]
    }

    /// Number of length-1 cycles.
    pub fn fixed_points(&self) -> usize {
        self.images
            .iter()
            .enumerate()
            .filter(|&(i, &im)| i == im)
            .count()
    }

    /// Some `q` with `conjugate(p, q) = t`, if the cycle types agree.
    /// Deterministic: matches canonical cycle lists length by length.
    pub fn conjugating_perm(p: &Perm, t: &Perm) -> Option<Perm> {
        if p.degree() != t.degree() || p.cycle_type() != t.cycle_type() {
            return None;
        }
        let group = |perm: &Perm| {
            let mut cs = perm.cycles();
            cs.sort_by_key(|c| (c.len(), c[0]));
            cs
        };
        let pc = group(p);
        let tc = group(t);
        let mut images = vec![0; p.degree()];
        for (cp, ct) in pc.iter().zip(tc.iter()) {
            for (a, b) in cp.iter().zip(ct.iter()) {
                images[*a] = *b;
            }
        }
        Some(Perm { images })
    }

    /// Writes `[x, y]` as a product of three squares:
    /// `s1 = xy`, `s2 = y^-1 x^-1 y`, `s3 = y^-1` satisfy
    /// `s1^2 s2^2 s3^2 = [x, y]`, and `{s1, s3}` generates `<x, y>`.
    pub fn three_squares(x: &Perm, y: &Perm) -> (Perm, Perm, Perm) {
        let s1 = x.compose(y);
        let s2 = y.inverse().compose(&x.inverse()).compose(y);
        let s3 = y.inverse();
        (s1, s2, s3)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nontrivial: Vec<_> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if nontrivial.is_empty() {
            return write!(f, "()");
        }
        for cycle in nontrivial {
            write!(f, "(")?;
            for (i, x) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", x + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm[{}]{}", self.degree(), self)
    }
}

/// A cycle type: a partition of the degree, parts descending.
/// Fixed points are length-1 parts and are counted.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleType {
    parts: Vec<usize>,
}

impl CycleType {
    /// Parts in any order; must be positive and sum to `n`.
    pub fn new(mut parts: Vec<usize>, n: usize) -> Result<Self, PermError> {
        if parts.iter().any(|&p| p == 0) || parts.iter().sum::<usize>() != n {
            return Err(PermError::BadPartition(parts, n));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(CycleType { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn degree(&self) -> usize {
        self.parts.iter().sum()
    }

    /// +1 when the class consists of even permutations, else -1.
    pub fn sign(&self) -> i8 {
        let t: usize = self.parts.iter().map(|p| p - 1).sum();
        if t % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Multiplicity of each part length as `(length, multiplicity)`,
    /// lengths ascending.
    pub fn multiplicities(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &p in self.parts.iter().rev() {
            match out.last_mut() {
                Some((len, m)) if *len == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// Size of the conjugacy class in `S_n`: `n! / prod(k^{m_k} m_k!)`.
    pub fn class_size(&self) -> BigUint {
        let n = self.degree();
        let mut num = BigUint::one();
        for i in 1..=n {
            num *= BigUint::from(i);
        }
        let mut den = BigUint::one();
        for (len, m) in self.multiplicities() {
            den *= BigUint::from(len).pow(m as u32);
            for i in 1..=m {
                den *= BigUint::from(i);
            }
        }
        &num / &den
    }

    /// Centralizer order `prod(k^{m_k} m_k!)`.
    pub fn centralizer_order(&self) -> BigUint {
        let mut z = BigUint::one();
        for (len, m) in self.multiplicities() {
            z *= BigUint::from(len).pow(m as u32);
            for i in 1..=m {
                z *= BigUint::from(i);
            }
        }
        z
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycleType[{}]", self)
    }
}

/// Orbits of `{0..n-1}` under a set of permutations, found by breadth-first
/// search; each orbit sorted, orbits ordered by least element.
pub fn orbits(gens: &[Perm], n: usize) -> Vec<Vec<usize>> {
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut orbit = Vec::new();
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        while let Some(x) = queue.pop_front() {
            orbit.push(x);
            for g in gens {
                for y in [g.apply(x), g.inverse().apply(x)] {
                    if !seen[y] {
                        seen[y] = true;
                        queue.push_back(y);
                    }
                }
            }
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    out
}

pub fn is_transitive(gens: &[Perm], n: usize) -> bool {
    orbits(gens, n).len() <= 1
}

/// Closure of `gens` under composition, or `None` once it exceeds `limit`
/// elements. Identity is always included.
pub fn generated_subgroup(gens: &[Perm], limit: usize) -> Option<Vec<Perm>> {
    let n = gens.first().map_or(0, |g| g.degree());
    let mut elems: HashSet<Perm> = HashSet::new();
    let mut queue = VecDeque::new();
    let id = Perm::identity(n);
    elems.insert(id.clone());
    queue.push_back(id);
    while let Some(g) = queue.pop_front() {
        for h in gens {
            let gh = g.compose(h);
            if elems.insert(gh.clone()) {
                if elems.len() > limit {
                    return None;
                }
                queue.push_back(gh);
            }
        }
    }
    let mut out: Vec<Perm> = elems.into_iter().collect();
    out.sort();
    Some(out)
}

/// All permutations of degree `n` in lexicographic order of image lists.
pub fn all_perms(n: usize) -> impl Iterator<Item = Perm> {
    use itertools::Itertools;
    (0..n).permutations(n).map(|images| Perm { images })
}

/// All elements of the conjugacy class `ct`, in lexicographic order.
pub fn class_elements(ct: &CycleType) -> Vec<Perm> {
    let ct = ct.clone();
    all_perms(ct.degree())
        .filter(|p| p.cycle_type() == ct)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, s: &str) -> Perm {
        Perm::parse(n, s).unwrap()
    }

    #[test]
    fn compose_applies_left_factor_first() {
        let a = p(3, "(1 2 3)");
        let b = p(3, "(1 2)");
        let ab = a.compose(&b);
        // x -> b(a(x)): 1 -> a 2 -> b 1
        assert_eq!(ab.apply(0), 0);
        assert_eq!(ab.apply(1), 2);
        assert_eq!(ab.apply(2), 1);
    }

    #[test]
    fn commutator_of_three_cycle_and_transposition() {
        let a = p(3, "(1 2 3)");
        let b = p(3, "(1 2)");
        let c = Perm::commutator(&a, &b);
        assert_eq!(c, p(3, "(1 3 2)"));
        assert_eq!(c.cycle_type().parts(), &[3]);
    }

    #[test]
    fn inverse_and_pow() {
        let a = p(5, "(1 2 3 4 5)");
        assert!(a.compose(&a.inverse()).is_identity());
        assert_eq!(a.pow(5), Perm::identity(5));
        assert_eq!(a.pow(-2), a.inverse().compose(&a.inverse()));
        assert_eq!(a.pow(0), Perm::identity(5));
    }

    #[test]
    fn sign_is_multiplicative() {
        let a = p(4, "(1 2)");
        let b = p(4, "(2 3 4)");
        assert_eq!(a.sign(), -1);
        assert_eq!(b.sign(), 1);
        assert_eq!(a.compose(&b).sign(), -1);
        assert_eq!(a.compose(&a).sign(), 1);
    }

    #[test]
    fn cycle_type_and_fixed_points() {
        let a = p(6, "(1 2 3)(4 5)");
        assert_eq!(a.cycle_type().parts(), &[3, 2, 1]);
        assert_eq!(a.fixed_points(), 1);
        assert_eq!(a.cycle_type().sign(), -1);
    }

    #[test]
    fn conjugation_preserves_cycle_type_and_relabels() {
        let a = p(5, "(1 2 3)(4 5)");
        let q = p(5, "(1 4)(2 5)");
        let c = Perm::conjugate(&a, &q);
        assert_eq!(c.cycle_type(), a.cycle_type());
        // q^-1 a q sends q(i) to q(a(i)): q(1)=4, q(a(1))=q(2)=5.
        assert_eq!(c.apply(3), 4);
    }

    #[test]
    fn conjugating_perm_solves_conjugacy() {
        let a = p(6, "(1 2 3)(4 5)");
        let t = p(6, "(2 4 6)(1 3)");
        let q = Perm::conjugating_perm(&a, &t).unwrap();
        assert_eq!(Perm::conjugate(&a, &q), t);
        assert!(Perm::conjugating_perm(&a, &p(6, "(1 2 3 4)")).is_none());
    }

    #[test]
    fn three_squares_identity_and_generation() {
        let x = p(5, "(1 2 3 4 5)");
        let y = p(5, "(1 3)(2 4)");
        let (s1, s2, s3) = Perm::three_squares(&x, &y);
        let lhs = s1
            .compose(&s1)
            .compose(&s2)
            .compose(&s2)
            .compose(&s3)
            .compose(&s3);
        assert_eq!(lhs, Perm::commutator(&x, &y));
        let full = generated_subgroup(&[x.clone(), y.clone()], 200).unwrap();
        let pair = generated_subgroup(&[s1, s3], 200).unwrap();
        assert_eq!(full, pair);
    }

    #[test]
    fn class_sizes_match_direct_enumeration() {
        // n <= 5: compare the formula with a raw count over S_n.
        for n in 1..=5 {
            let mut counts: std::collections::HashMap<CycleType, usize> =
                std::collections::HashMap::new();
            for q in all_perms(n) {
                *counts.entry(q.cycle_type()).or_default() += 1;
            }
            for (ct, count) in counts {
                assert_eq!(ct.class_size(), BigUint::from(count), "class {ct}");
            }
        }
    }

    #[test]
    fn class_size_examples() {
        let ct = CycleType::new(vec![2, 1, 1], 4).unwrap();
        assert_eq!(ct.class_size(), BigUint::from(6u32));
        let ct = CycleType::new(vec![3, 1], 4).unwrap();
        assert_eq!(ct.class_size(), BigUint::from(8u32));
        let ct = CycleType::new(vec![5], 5).unwrap();
        assert_eq!(ct.class_size(), BigUint::from(24u32));
    }

    #[test]
    fn cycle_notation_round_trip() {
        for s in ["(1 2 3)(4 5)", "(2 6)", "()"] {
            let q = p(6, s);
            assert_eq!(q, p(6, &q.to_string()));
        }
        assert_eq!(p(4, "()"), Perm::identity(4));
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert!(matches!(
            Perm::parse(3, "(1 2 4)"),
            Err(PermError::EntryOutOfRange(4, 3))
        ));
        assert!(matches!(
            Perm::parse(3, "(1 2 2)"),
            Err(PermError::EntryRepeated(2))
        ));
        assert!(Perm::parse(3, "(1 2").is_err());
        assert!(Perm::parse(3, "1 2 3").is_err());
        assert!(Perm::parse(3, "(1 0 2)").is_err());
    }

    #[test]
    fn orbits_and_transitivity() {
        let a = p(6, "(1 2 3)");
        let b = p(6, "(4 5)");
        let os = orbits(&[a.clone(), b.clone()], 6);
        assert_eq!(os, vec![vec![0, 1, 2], vec![3, 4], vec![5]]);
        assert!(!is_transitive(&[a, b], 6));
        assert!(is_transitive(&[p(6, "(1 2 3 4 5 6)")], 6));
    }

    #[test]
    fn subgroup_closure_with_limit() {
        let gens = [p(3, "(1 2)"), p(3, "(1 2 3)")];
        let g = generated_subgroup(&gens, 6).unwrap();
        assert_eq!(g.len(), 6);
        assert!(generated_subgroup(&gens, 5).is_none());
    }

    #[test]
    fn n_cycle_detection() {
        assert!(p(4, "(1 3 2 4)").is_n_cycle());
        assert!(!p(4, "(1 2 3)").is_n_cycle());
    }
}
