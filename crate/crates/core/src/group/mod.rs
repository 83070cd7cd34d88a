//! Finite groups as dense multiplication tables.

mod build;
mod family;
mod invariants;
mod iso;
mod numbers;

use std::collections::{HashMap, VecDeque};
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

pub use build::*;
pub use family::{matches_family, matches_family_tag, max_cyclic_normal_index, Family};
pub use invariants::{abelian_invariants, structural_invariants, StructuralInvariants};
pub use iso::{find_isomorphism, is_isomorphic, minimal_generating_set};
pub use numbers::{log10_constant_c, order_gl, ConstantC};

/// Largest group order any constructor or search accepts.
pub const MAX_ORDER: usize = 512;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    size: usize,
    table: Vec<u32>,
    identity: usize,
    inverses: Vec<usize>,
    labels: Option<Vec<String>>,
}

/// On-disk form of a group table.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupJson {
    pub version: u32,
    pub size: usize,
    pub identity: usize,
    pub table: Vec<Vec<u32>>,
    pub labels: Option<Vec<String>>,
}

pub const GROUP_JSON_VERSION: u32 = 1;

impl FiniteGroup {
    /// Validates the table: Latin square, two-sided identity, associativity.
    pub fn from_table(table: Vec<Vec<u32>>, identity: usize, labels: Option<Vec<String>>) -> Result<Self> {
        let size = table.len();
        if size == 0 {
            return invalid("a group needs at least one element");
        }
        if size > MAX_ORDER {
            return Err(Error::Budget(format!("group order {size} exceeds cap {MAX_ORDER}")));
        }
        if table.iter().any(|row| row.len() != size) {
            return invalid("multiplication table is not square");
        }
        if labels.as_ref().is_some_and(|l| l.len() != size) {
            return invalid("label count does not match group order");
        }
        let flat: Vec<u32> = table.into_iter().flatten().collect();
        Self::from_flat(size, flat, identity, labels)
    }

    pub(crate) fn from_flat(size: usize, table: Vec<u32>, identity: usize, labels: Option<Vec<String>>) -> Result<Self> {
        if size > MAX_ORDER {
            return Err(Error::Budget(format!("group order {size} exceeds cap {MAX_ORDER}")));
        }
        if identity >= size {
            return invalid("identity index out of range");
        }
        if table.iter().any(|&x| x as usize >= size) {
            return invalid("table entry out of range");
        }
        let mut seen = vec![0usize; size];
        for r in 0..size {
            for c in 0..size {
                let v = table[r * size + c] as usize;
                if seen[v] == 2 * r + 1 {
                    return invalid(format!("row {r} is not a permutation"));
                }
                seen[v] = 2 * r + 1;
            }
        }
        for c in 0..size {
            let mut col = vec![false; size];
            for r in 0..size {
                let v = table[r * size + c] as usize;
                if col[v] {
                    return invalid(format!("column {c} is not a permutation"));
                }
                col[v] = true;
            }
        }
        for g in 0..size {
            if table[identity * size + g] as usize != g || table[g * size + identity] as usize != g {
                return invalid("identity row/column does not act trivially");
            }
        }
        let mut inverses = vec![usize::MAX; size];
        for g in 0..size {
            for h in 0..size {
                if table[g * size + h] as usize == identity {
                    inverses[g] = h;
                    break;
                }
            }
            if table[inverses[g] * size + g] as usize != identity {
                return invalid(format!("element {g} has no two-sided inverse"));
            }
        }
        let group = Self {
            size,
            table,
            identity,
            inverses,
            labels,
        };
        group.check_associative()?;
        Ok(group)
    }

    /// Light's test: associativity against a generating set suffices.
    fn check_associative(&self) -> Result<()> {
        let gens = self.closure_generating_set();
        for &s in &gens {
            for x in 0..self.size {
                for y in 0..self.size {
                    if self.mul(self.mul(x, y), s) != self.mul(x, self.mul(y, s)) {
                        return invalid(format!("table is not associative at ({x}, {y}, {s})"));
                    }
                }
            }
        }
        Ok(())
    }

    /// Brute-force associativity over all triples.
    pub fn is_associative_brute_force(&self) -> bool {
        (0..self.size).all(|x| {
            (0..self.size).all(|y| {
                let xy = self.mul(x, y);
                (0..self.size).all(|z| self.mul(xy, z) == self.mul(x, self.mul(y, z)))
            })
        })
    }

    /// Elements whose products (no inverses used) reach every element.
    fn closure_generating_set(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut reached = vec![false; self.size];
        reached[self.identity] = true;
        let mut elems = vec![self.identity];
        for g in 0..self.size {
            if reached[g] {
                continue;
            }
            gens.push(g);
            // grow the closure of the current generators
            let mut queue: VecDeque<usize> = elems.iter().copied().collect();
            while let Some(x) = queue.pop_front() {
                for &s in &gens {
                    for y in [self.mul(x, s), self.mul(s, x)] {
                        if !reached[y] {
                            reached[y] = true;
                            elems.push(y);
                            queue.push_back(y);
                        }
                    }
                }
            }
        }
        gens
    }

    pub fn order(&self) -> usize {
        self.size
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.size + b] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, g: usize) -> String {
        match &self.labels {
            Some(l) => l[g].clone(),
            None => format!("g{g}"),
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.size {
            return invalid("label count does not match group order");
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn pow(&self, g: usize, k: u64) -> usize {
        let mut acc = self.identity;
        let mut base = g;
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn element_orders(&self) -> Vec<usize> {
        (0..self.size).map(|g| self.element_order(g)).collect()
    }

    pub fn conjugate(&self, g: usize, by: usize) -> usize {
        self.mul(self.mul(by, g), self.inv(by))
    }

    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.size).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_central(&self, g: usize) -> bool {
        (0..self.size).all(|h| self.mul(g, h) == self.mul(h, g))
    }

    pub fn center(&self) -> Vec<usize> {
        (0..self.size).filter(|&g| self.is_central(g)).collect()
    }

    /// Sorted elements of the subgroup generated by `gens`.
    pub fn subgroup_generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut member = vec![false; self.size];
        member[self.identity] = true;
        let mut elems = vec![self.identity];
        let mut i = 0;
        while i < elems.len() {
            let x = elems[i];
            i += 1;
            for &s in gens {
                let y = self.mul(x, s);
                if !member[y] {
                    member[y] = true;
                    elems.push(y);
                }
            }
        }
        elems.sort_unstable();
        elems
    }

    pub fn cyclic_subgroup(&self, g: usize) -> Vec<usize> {
        self.subgroup_generated(&[g])
    }

    pub fn is_normal(&self, subgroup: &[usize]) -> bool {
        let member = self.membership(subgroup);
        subgroup
            .iter()
            .all(|&h| (0..self.size).all(|g| member[self.conjugate(h, g)]))
    }

    pub(crate) fn membership(&self, subset: &[usize]) -> Vec<bool> {
        let mut m = vec![false; self.size];
        for &x in subset {
            m[x] = true;
        }
        m
    }

    pub fn commutator_subgroup(&self) -> Vec<usize> {
        let mut comms: Vec<usize> = (0..self.size)
            .flat_map(|a| (0..self.size).map(move |b| (a, b)))
            .map(|(a, b)| self.commutator(a, b))
            .collect();
        comms.sort_unstable();
        comms.dedup();
        self.subgroup_generated(&comms)
    }

    /// Quotient by a normal subgroup, plus the projection onto coset indices.
    pub fn quotient(&self, normal: &[usize]) -> Result<(FiniteGroup, Vec<usize>)> {
        if !self.is_normal(normal) {
            return invalid("quotient requires a normal subgroup");
        }
        let mut coset = vec![usize::MAX; self.size];
        let mut reps = Vec::new();
        for g in 0..self.size {
            if coset[g] != usize::MAX {
                continue;
            }
            let id = reps.len();
            reps.push(g);
            for &n in normal {
                coset[self.mul(g, n)] = id;
            }
        }
        let q = reps.len();
        let mut table = Vec::with_capacity(q * q);
        for &a in &reps {
            for &b in &reps {
                table.push(coset[self.mul(a, b)] as u32);
            }
        }
        let group = FiniteGroup::from_flat(q, table, coset[self.identity], None)?;
        Ok((group, coset))
    }

    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut assigned = vec![false; self.size];
        let mut classes = Vec::new();
        for g in 0..self.size {
            if assigned[g] {
                continue;
            }
            let mut class: Vec<usize> = (0..self.size).map(|h| self.conjugate(g, h)).collect();
            class.sort_unstable();
            class.dedup();
            for &c in &class {
                assigned[c] = true;
            }
            classes.push(class);
        }
        classes
    }

    /// Subgroup of `self` as a standalone group, with the inclusion map.
    pub fn subgroup_as_group(&self, subgroup: &[usize]) -> Result<(FiniteGroup, Vec<usize>)> {
        let index: HashMap<usize, usize> = subgroup.iter().enumerate().map(|(i, &g)| (g, i)).collect();
        let n = subgroup.len();
        let mut table = Vec::with_capacity(n * n);
        for &a in subgroup {
            for &b in subgroup {
                let p = self.mul(a, b);
                let i = *index
                    .get(&p)
                    .ok_or_else(|| Error::InvalidInput("subset is not closed under multiplication".into()))?;
                table.push(i as u32);
            }
        }
        let id = *index
            .get(&self.identity)
            .ok_or_else(|| Error::InvalidInput("subset misses the identity".into()))?;
        Ok((FiniteGroup::from_flat(n, table, id, None)?, subgroup.to_vec()))
    }

    pub fn to_json(&self) -> GroupJson {
        GroupJson {
            version: GROUP_JSON_VERSION,
            size: self.size,
            identity: self.identity,
            table: self.table.chunks(self.size).map(|r| r.to_vec()).collect(),
            labels: self.labels.clone(),
        }
    }

    pub fn from_json(json: GroupJson) -> Result<Self> {
        if json.version != GROUP_JSON_VERSION {
            return invalid(format!("unsupported group JSON version {}", json.version));
        }
        if json.size != json.table.len() {
            return invalid("size field disagrees with table");
        }
        Self::from_table(json.table, json.identity, json.labels)
    }
}

/// Closes `gens` under multiplication and tabulates the result. Elements are
/// identified through `key`, which must be constant on equal elements.
pub fn closure<T, K, M, F>(gens: &[T], identity: T, mul: M, key: F) -> Result<(FiniteGroup, Vec<T>)>
where
    T: Clone,
    K: Hash + Eq,
    M: Fn(&T, &T) -> T,
    F: Fn(&T) -> K,
{
    let mut elems = vec![identity.clone()];
    let mut index: HashMap<K, usize> = HashMap::new();
    index.insert(key(&identity), 0);
    let mut i = 0;
    while i < elems.len() {
        for g in gens {
            let p = mul(&elems[i], g);
            let k = key(&p);
            if !index.contains_key(&k) {
                if elems.len() >= MAX_ORDER {
                    return Err(Error::Budget(format!(
                        "generated group exceeds order cap {MAX_ORDER}"
                    )));
                }
                index.insert(k, elems.len());
                elems.push(p);
            }
        }
        i += 1;
    }
    let n = elems.len();
    let mut table = Vec::with_capacity(n * n);
    for a in &elems {
        for b in &elems {
            let k = key(&mul(a, b));
            let j = *index
                .get(&k)
                .ok_or_else(|| Error::InvalidInput("element keys are not stable under multiplication".into()))?;
            table.push(j as u32);
        }
    }
    let group = FiniteGroup::from_flat(n, table, 0, None)?;
    Ok((group, elems))
}

/// Rounds real coordinates onto a 1e-6 grid for use as a hash key.
pub fn float_key(values: impl IntoIterator<Item = f64>) -> Vec<i64> {
    values
        .into_iter()
        .map(|v| {
            let r = (v * 1e6).round() as i64;
            if r == 0 {
                0
            } else {
                r
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_latin_tables() {
        assert!(FiniteGroup::from_table(vec![vec![0, 1], vec![1, 1]], 0, None).is_err());
        assert!(FiniteGroup::from_table(vec![vec![0, 1], vec![1]], 0, None).is_err());
        assert!(FiniteGroup::from_table(vec![], 0, None).is_err());
    }

    #[test]
    fn rejects_non_associative_quasigroup() {
        // a Latin square loop of order 5 that is not a group
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(FiniteGroup::from_table(t, 0, None).is_err());
    }

    #[test]
    fn json_round_trip() {
        let g = cyclic(5).unwrap();
        let back = FiniteGroup::from_json(g.to_json()).unwrap();
        assert_eq!(g, back);
        let mut j = g.to_json();
        j.version = 9;
        assert!(FiniteGroup::from_json(j).is_err());
    }

    #[test]
    fn quotient_by_center_of_q8() {
        let q8 = build_standard(GroupKind::Quaternion8).unwrap();
        let (q, proj) = q8.quotient(&q8.center()).unwrap();
        assert_eq!(q.order(), 4);
        assert!(q.element_orders().iter().all(|&o| o <= 2));
        assert_eq!(proj.len(), 8);
    }

    #[test]
    fn closure_respects_cap() {
        let r = closure(&[1u64], 0u64, |a, b| (a + b) % 1000, |a| *a);
        assert!(matches!(r, Err(Error::Budget(_))));
    }
}
