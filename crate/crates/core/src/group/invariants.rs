use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::FiniteGroup;

/// Isomorphism invariants read off the multiplication table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructuralInvariants {
    pub order: usize,
    pub element_order_histogram: BTreeMap<usize, usize>,
    pub center_size: usize,
    /// Invariant factors of G/[G, G], each dividing the next; empty when perfect.
    pub abelianization_invariants: Vec<usize>,
    /// Sorted multiset of conjugacy class sizes.
    pub conjugacy_class_sizes: Vec<usize>,
}

pub fn structural_invariants(g: &FiniteGroup) -> StructuralInvariants {
    let mut hist = BTreeMap::new();
    for o in g.element_orders() {
        *hist.entry(o).or_insert(0) += 1;
    }
    let derived = g.commutator_subgroup();
    let (ab, _) = g.quotient(&derived).expect("commutator subgroup is normal");
    let mut classes: Vec<usize> = g.conjugacy_classes().iter().map(Vec::len).collect();
    classes.sort_unstable();
    StructuralInvariants {
        order: g.order(),
        element_order_histogram: hist,
        center_size: g.center().len(),
        abelianization_invariants: abelian_invariants(&ab),
        conjugacy_class_sizes: classes,
    }
}

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Invariant factors of an abelian group, in increasing divisibility order.
///
/// For each prime p the counts `|A[p^j]| = p^{Σ min(j, e_i)}` determine the
/// exponents `e_i` of the p-primary cyclic factors.
pub fn abelian_invariants(a: &FiniteGroup) -> Vec<usize> {
    debug_assert!(a.is_abelian());
    let orders = a.element_orders();
    // per prime: exponents of the cyclic p-primary factors, descending
    let mut primary: Vec<(usize, Vec<u32>)> = Vec::new();
    for p in prime_factors(a.order()) {
        let mut counts = vec![0u32];
        let mut pj = 1usize;
        loop {
            pj *= p;
            let c = orders.iter().filter(|&&o| pj % o == 0).count();
            let log = (c as f64).log(p as f64).round() as u32;
            if log == *counts.last().expect("nonempty") {
                break;
            }
            counts.push(log);
        }
        // number of factors with exponent ≥ j is counts[j] − counts[j−1]
        let at_least: Vec<u32> = counts.windows(2).map(|w| w[1] - w[0]).collect();
        let mut exps = Vec::new();
        for (j, &n) in at_least.iter().enumerate() {
            let next = at_least.get(j + 1).copied().unwrap_or(0);
            for _ in 0..(n - next) {
                exps.push(j as u32 + 1);
            }
        }
        exps.sort_unstable_by(|a, b| b.cmp(a));
        primary.push((p, exps));
    }
    let rank = primary.iter().map(|(_, e)| e.len()).max().unwrap_or(0);
    let mut factors = vec![1usize; rank];
    for (p, exps) in &primary {
        for (i, &e) in exps.iter().enumerate() {
            // the largest factor sits last
            factors[rank - 1 - i] *= p.pow(e);
        }
    }
    factors.retain(|&f| f > 1);
    factors
}
