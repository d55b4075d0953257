//! Integer partitions and symmetric-group characters.
//!
//! Character values are computed by the Murnaghan-Nakayama border-strip
//! recursion over beta-numbers, memoized on the pair (shape, remaining
//! class parts). Dimensions are cross-checkable against the hook-length
//! formula. Counting of identity products over conjugacy classes uses the
//! classical character sum
//!
//! `N = |C_1|...|C_k| / |G| * sum_chi chi(x_1)...chi(x_k) / chi(1)^(k-2)`
//!
//! evaluated in exact rational arithmetic; a non-integral result is a bug
//! in the table, not a data error, and aborts.

use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;

use num::bigint::{BigInt, BigUint};
use num::rational::BigRational;
use num::{One, Signed, Zero};
use thiserror::Error;

use crate::exec::ExecMode;
use crate::perm::CycleType;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CharError {
    #[error("partition {0:?} does not sum to {1}")]
    BadPartition(Vec<usize>, usize),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("no classes given")]
    Empty,
}

/// A partition of `n`: weakly decreasing positive parts.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self, CharError> {
        if parts.iter().any(|&p| p == 0) {
            let n = parts.iter().sum();
            return Err(CharError::BadPartition(parts, n));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn sum(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Dimension of the irreducible indexed by this shape, by the
    /// hook-length formula `n! / prod(hooks)`.
    pub fn hook_length_dimension(&self) -> BigUint {
        let mut num = BigUint::one();
        for i in 1..=self.sum() {
            num *= BigUint::from(i);
        }
        let mut den = BigUint::one();
        let rows = self.parts.len();
        for (i, &len) in self.parts.iter().enumerate() {
            for j in 0..len {
                let arm = len - j - 1;
                let leg = (i + 1..rows).filter(|&r| self.parts[r] > j).count();
                den *= BigUint::from(arm + leg + 1);
            }
        }
        &num / &den
    }
}

impl From<&CycleType> for Partition {
    fn from(ct: &CycleType) -> Self {
        Partition {
            parts: ct.parts().to_vec(),
        }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// All partitions of `n` in reverse lexicographic order:
/// `[n]` first, `[1,...,1]` last.
pub fn partitions(n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(remaining: usize, max: usize, current: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition {
                parts: current.clone(),
            });
            return;
        }
        for next in (1..=remaining.min(max)).rev() {
            current.push(next);
            rec(remaining - next, next, current, out);
            current.pop();
        }
    }
    rec(n, n, &mut current, &mut out);
    out
}

type MemoKey = (Vec<usize>, Vec<usize>);

/// Character values of `S_n`, rows and columns both indexed by
/// `partitions(n)` (rows: shapes, columns: class types).
pub struct CharacterValueTable {
    n: usize,
    shapes: Vec<Partition>,
    memo: Mutex<HashMap<MemoKey, i64>>,
}

impl CharacterValueTable {
    pub fn new(n: usize) -> Self {
        CharacterValueTable {
            n,
            shapes: partitions(n),
            memo: Mutex::new(HashMap::new()),
        }
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn shapes(&self) -> &[Partition] {
        &self.shapes
    }

    /// `chi_lambda(mu)`.
    pub fn value(&self, lambda: &Partition, mu: &Partition) -> Result<i64, CharError> {
        if lambda.sum() != self.n || mu.sum() != self.n {
            return Err(CharError::DegreeMismatch(lambda.sum(), mu.sum()));
        }
        Ok(mn_value(
            lambda.parts(),
            mu.parts(),
            Some(&self.memo),
            &mut HashMap::new(),
        ))
    }

    /// Column of values `chi_lambda(mu)` over all shapes, in shape order.
    pub fn column(&self, mu: &Partition) -> Result<Vec<i64>, CharError> {
        self.shapes.iter().map(|l| self.value(l, mu)).collect()
    }

    /// `chi_lambda(e)`, computed through the same recursion as every other
    /// value (the hook-length formula is a separate check).
    pub fn dimension(&self, lambda: &Partition) -> Result<i64, CharError> {
        let id = Partition {
            parts: vec![1; self.n],
        };
        self.value(lambda, &id)
    }
}

/// Murnaghan-Nakayama over beta-numbers. `shared` is the table-wide memo;
/// `local` serves callers that want lock-free recursion.
fn mn_value(
    lambda: &[usize],
    mu: &[usize],
    shared: Option<&Mutex<HashMap<MemoKey, i64>>>,
    local: &mut HashMap<MemoKey, i64>,
) -> i64 {
    if lambda.is_empty() {
        return 1;
    }
    let key = (lambda.to_vec(), mu.to_vec());
    if let Some(m) = shared {
        if let Some(&v) = m.lock().unwrap().get(&key) {
            return v;
        }
    } else if let Some(&v) = local.get(&key) {
        return v;
    }

    let r = mu[0];
    let rest = &mu[1..];
    let m = lambda.len();
    // Strictly decreasing beta set for the shape.
    let betas: Vec<usize> = lambda
        .iter()
        .enumerate()
        .map(|(i, &p)| p + (m - 1 - i))
        .collect();
    let mut total = 0i64;
    for (i, &b) in betas.iter().enumerate() {
        if b < r || betas.contains(&(b - r)) {
            continue;
        }
        let height = betas.iter().filter(|&&c| c < b && c > b - r).count();
        let mut next: Vec<usize> = betas.clone();
        next[i] = b - r;
        next.sort_unstable_by(|a, b| b.cmp(a));
        // Convert back to a partition, dropping zero parts.
        let shape: Vec<usize> = next
            .iter()
            .enumerate()
            .map(|(j, &c)| c - (m - 1 - j))
            .filter(|&p| p > 0)
            .collect();
        let sign = if height % 2 == 0 { 1 } else { -1 };
        total += sign * mn_value(&shape, rest, shared, local);
    }

    if let Some(mm) = shared {
        mm.lock().unwrap().insert(key, total);
    } else {
        local.insert(key, total);
    }
    total
}

pub fn factorial(n: usize) -> BigUint {
    let mut out = BigUint::one();
    for i in 1..=n {
        out *= BigUint::from(i);
    }
    out
}

/// Exact number of tuples `(x_1..x_k)`, `x_i` in class `i`, whose product
/// is the identity. Each class is a cycle type of the same degree.
pub fn frobenius_count(classes: &[CycleType]) -> Result<BigUint, CharError> {
    frobenius_count_with(classes, ExecMode::default())
}

pub fn frobenius_count_with(classes: &[CycleType], mode: ExecMode) -> Result<BigUint, CharError> {
    if classes.is_empty() {
        return Err(CharError::Empty);
    }
    let n = classes[0].degree();
    for c in classes {
        if c.degree() != n {
            return Err(CharError::DegreeMismatch(c.degree(), n));
        }
    }
    let k = classes.len();
    let shapes = partitions(n);
    let mus: Vec<Partition> = classes.iter().map(Partition::from).collect();
    let id = Partition {
        parts: vec![1; n],
    };

    let term = |lambda: &Partition| -> BigRational {
        // Lock-free per-shape recursion keeps the parallel path contention
        // free; values are identical either way.
        let mut local = HashMap::new();
        let dim = mn_value(lambda.parts(), id.parts(), None, &mut local);
        assert!(dim > 0, "non-positive dimension for {lambda}");
        let mut prod = BigInt::one();
        for mu in &mus {
            prod *= BigInt::from(mn_value(lambda.parts(), mu.parts(), None, &mut local));
        }
        if k >= 2 {
            BigRational::new(prod, BigInt::from(dim).pow((k - 2) as u32))
        } else {
            BigRational::from(prod * BigInt::from(dim))
        }
    };

    let sum: BigRational = sum_terms(&shapes, term, mode);

    let mut scale = BigRational::new(BigInt::one(), BigInt::from(factorial(n)));
    for c in classes {
        scale *= BigRational::from(BigInt::from(c.class_size()));
    }
    let total = sum * scale;
    // The count is a non-negative integer by construction; anything else
    // means the character values are wrong.
    assert!(
        total.denom().is_one(),
        "non-integral class product count {total}"
    );
    assert!(
        !total.numer().is_negative(),
        "negative class product count {total}"
    );
    Ok(total.numer().to_biguint().unwrap())
}

fn sum_terms<F>(shapes: &[Partition], term: F, mode: ExecMode) -> BigRational
where
    F: Fn(&Partition) -> BigRational + Sync,
{
    #[cfg(feature = "parallel")]
    if mode.is_parallel() {
        use rayon::prelude::*;
        return shapes
            .par_iter()
            .map(&term)
            .reduce(BigRational::zero, |a, b| a + b);
    }
    let _ = mode;
    shapes.iter().map(&term).fold(BigRational::zero(), |a, b| a + b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ct(parts: &[usize], n: usize) -> CycleType {
        CycleType::new(parts.to_vec(), n).unwrap()
    }

    #[test]
    fn partition_counts() {
        assert_eq!(partitions(4).len(), 5);
        assert_eq!(partitions(10).len(), 42);
        assert_eq!(partitions(0).len(), 1);
    }

    #[test]
    fn partitions_in_reverse_lex_order() {
        let got: Vec<Vec<usize>> = partitions(4).iter().map(|p| p.parts().to_vec()).collect();
        assert_eq!(
            got,
            vec![
                vec![4],
                vec![3, 1],
                vec![2, 2],
                vec![2, 1, 1],
                vec![1, 1, 1, 1]
            ]
        );
    }

    #[test]
    fn s3_character_table() {
        let t = CharacterValueTable::new(3);
        let p3 = Partition::new(vec![3]).unwrap();
        let p21 = Partition::new(vec![2, 1]).unwrap();
        let p111 = Partition::new(vec![1, 1, 1]).unwrap();
        // Trivial character.
        assert_eq!(t.value(&p3, &p3).unwrap(), 1);
        assert_eq!(t.value(&p3, &p21).unwrap(), 1);
        assert_eq!(t.value(&p3, &p111).unwrap(), 1);
        // Standard character: dimension 2, zero on transpositions.
        assert_eq!(t.value(&p21, &p111).unwrap(), 2);
        assert_eq!(t.value(&p21, &p21).unwrap(), 0);
        assert_eq!(t.value(&p21, &p3).unwrap(), -1);
        // Sign character.
        assert_eq!(t.value(&p111, &p21).unwrap(), -1);
        assert_eq!(t.value(&p111, &p3).unwrap(), 1);
    }

    #[test]
    fn dimensions_match_hook_lengths() {
        for n in 1..=8 {
            let t = CharacterValueTable::new(n);
            for shape in t.shapes() {
                let mn = t.dimension(shape).unwrap();
                assert_eq!(
                    BigUint::from(mn as u64),
                    shape.hook_length_dimension(),
                    "shape {shape}"
                );
            }
        }
    }

    #[test]
    fn column_orthogonality_small() {
        // sum_lambda chi(mu) chi(nu) = delta * centralizer order.
        for n in 1..=6 {
            let t = CharacterValueTable::new(n);
            let classes = partitions(n);
            for mu in &classes {
                for nu in &classes {
                    let cm = t.column(mu).unwrap();
                    let cn = t.column(nu).unwrap();
                    let dot: i64 = cm.iter().zip(&cn).map(|(a, b)| a * b).sum();
                    let expected = if mu == nu {
                        let ct = CycleType::new(mu.parts().to_vec(), n).unwrap();
                        ct.centralizer_order()
                    } else {
                        BigUint::zero()
                    };
                    assert_eq!(BigInt::from(dot), BigInt::from(expected), "{mu} {nu}");
                }
            }
        }
    }

    #[test]
    fn identity_class_counts_one_tuple() {
        // k = 1: only the identity class contains a product equal to e.
        for n in 1..=6 {
            let id = ct(&vec![1; n], n);
            assert_eq!(frobenius_count(&[id]).unwrap(), BigUint::one());
            if n >= 2 {
                let tr = ct(&[&[2][..], &vec![1; n - 2][..]].concat(), n);
                assert_eq!(frobenius_count(&[tr]).unwrap(), BigUint::zero());
            }
        }
    }

    #[test]
    fn three_cycle_triples_in_s3() {
        let c3 = ct(&[3], 3);
        let count = frobenius_count(&[c3.clone(), c3.clone(), c3]).unwrap();
        assert_eq!(count, BigUint::from(2u32));
    }

    #[test]
    fn odd_products_vanish() {
        let tr = ct(&[2, 1], 3);
        let count = frobenius_count(&[tr.clone(), tr.clone(), tr]).unwrap();
        assert_eq!(count, BigUint::zero());
    }

    #[test]
    fn pair_counts_are_class_sizes() {
        // k = 2: pairs with product e are (x, x^-1), one per class element.
        for parts in [vec![3, 1], vec![2, 2], vec![4]] {
            let c = ct(&parts, 4);
            let count = frobenius_count(&[c.clone(), c.clone()]).unwrap();
            assert_eq!(count, c.class_size());
        }
        // Mismatched classes multiply to e never.
        let a = ct(&[3, 1], 4);
        let b = ct(&[2, 2], 4);
        assert_eq!(frobenius_count(&[a, b]).unwrap(), BigUint::zero());
    }

    #[test]
    fn parallel_and_sequential_agree() {
        let c5 = ct(&[5], 5);
        let c311 = ct(&[3, 1, 1], 5);
        let classes = [c5, c311.clone(), c311];
        let a = frobenius_count_with(&classes, ExecMode::Sequential).unwrap();
        let b = frobenius_count_with(&classes, ExecMode::Parallel).unwrap();
        assert_eq!(a, b);
    }
}
