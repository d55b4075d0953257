//! Independent oracles for the integration suites.
//!
//! Everything here recomputes expected values by raw enumeration or by a
//! different algorithm than the library uses, so that agreement is
//! meaningful. Keep these free of calls into the code paths under test.

#![allow(dead_code)]

use covex::perm::{all_perms, class_elements, generated_subgroup, is_transitive, CycleType, Perm};

/// Number of tuples `(s_1..s_k)` with `s_i` in class `i` and
/// `s_1 s_2 ... s_k = e`, counted by filtering raw products.
/// The last factor is forced, so the cost is the product of the first
/// `k-1` class sizes.
pub fn brute_force_identity_products(classes: &[CycleType]) -> u64 {
    assert!(!classes.is_empty());
    let n = classes[0].degree();
    assert!(classes.iter().all(|c| c.degree() == n));
    let last = classes.last().unwrap();
    let mut count = 0u64;
    let mut stack: Vec<Perm> = vec![Perm::identity(n)];
    // Depth-first over the first k-1 classes, with the running product.
    fn rec(
        classes: &[CycleType],
        depth: usize,
        acc: &Perm,
        last: &CycleType,
        count: &mut u64,
        stack: &mut Vec<Perm>,
    ) {
        if depth == classes.len() - 1 {
            // s_k must be acc^-1; it contributes iff it lies in the last class.
            if acc.inverse().cycle_type() == *last {
                *count += 1;
            }
            return;
        }
        for s in class_elements(&classes[depth]) {
            let next = acc.compose(&s);
            stack.push(s);
            rec(classes, depth + 1, &next, last, count, stack);
            stack.pop();
        }
    }
    rec(classes, 0, &Perm::identity(n), last, &mut count, &mut stack);
    count
}

/// Whether any tuple with identity product is transitive, plus the
/// lexicographically first such tuple if one exists.
pub fn brute_force_identity_witness(
    classes: &[CycleType],
    require_transitive: bool,
) -> Option<Vec<Perm>> {
    let n = classes[0].degree();
    fn rec(
        classes: &[CycleType],
        depth: usize,
        acc: &Perm,
        chosen: &mut Vec<Perm>,
        require_transitive: bool,
        n: usize,
    ) -> bool {
        if depth == classes.len() - 1 {
            let last = acc.inverse();
            if last.cycle_type() != classes[depth] {
                return false;
            }
            chosen.push(last);
            if !require_transitive || is_transitive(chosen, n) {
                return true;
            }
            chosen.pop();
            return false;
        }
        for s in class_elements(&classes[depth]) {
            let next = acc.compose(&s);
            chosen.push(s);
            if rec(classes, depth + 1, &next, chosen, require_transitive, n) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    let mut chosen = Vec::new();
    if rec(
        classes,
        0,
        &Perm::identity(n),
        &mut chosen,
        require_transitive,
        n,
    ) {
        Some(chosen)
    } else {
        None
    }
}

/// Exhaustive search over all pairs for `[a, b] = sigma`, the ground truth
/// for the commutator witness heuristic.
pub fn exhaustive_commutator_pair(sigma: &Perm, require_transitive: bool) -> Option<(Perm, Perm)> {
    let n = sigma.degree();
    for a in all_perms(n) {
        for b in all_perms(n) {
            if Perm::commutator(&a, &b) == *sigma {
                if require_transitive && !is_transitive(&[a.clone(), b.clone()], n) {
                    continue;
                }
                return Some((a, b));
            }
        }
    }
    None
}

/// Partition counts by Euler's pentagonal-number recurrence, independent
/// of the enumeration the library uses.
pub fn partition_count(n: usize) -> u64 {
    let mut p = vec![0i64; n + 1];
    p[0] = 1;
    for m in 1..=n {
        let mut total = 0i64;
        let mut k = 1i64;
        loop {
            let g1 = k * (3 * k - 1) / 2;
            let g2 = k * (3 * k + 1) / 2;
            if g1 as usize > m && g2 as usize > m {
                break;
            }
            let sign = if k % 2 == 0 { -1 } else { 1 };
            if g1 as usize <= m {
                total += sign * p[m - g1 as usize];
            }
            if g2 as usize <= m {
                total += sign * p[m - g2 as usize];
            }
            k += 1;
        }
        p[m] = total;
    }
    p[n] as u64
}

/// Order of the subgroup generated by a tuple, unbounded within `cap`.
pub fn subgroup_order(gens: &[Perm], cap: usize) -> Option<usize> {
    generated_subgroup(gens, cap).map(|g| g.len())
}

/// All cycle types of `S_n`, by filtering every permutation. Slow but
/// independent of the partition generator.
pub fn all_cycle_types(n: usize) -> Vec<CycleType> {
    let mut seen = std::collections::BTreeSet::new();
    for q in all_perms(n) {
        seen.insert(q.cycle_type());
    }
    seen.into_iter().collect()
}
