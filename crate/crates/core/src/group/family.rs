//! Structural membership tests for the group shapes named by the classification
//! statements.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::{
    build::{cyclic, dicyclic_two_power, direct_product, pow_mod, validate_thm11_params, MetacyclicParams},
    is_isomorphic, minimal_generating_set, FiniteGroup, MAX_ORDER,
};
use crate::error::{invalid, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    /// `Z_n`.
    Cyclic,
    /// `Z_n ⋊ Z₂`, n odd.
    OddCyclicByZ2,
    /// `Z_n ⋊ Z₄`, n odd.
    OddCyclicByZ4,
    /// `Z_n ⋊ (Z₂ ⊕ Z₂)`, n odd.
    OddCyclicByKlein,
    /// `D*_{2^n·m₋} × Z_{m₊}` with n, m₋, m₊ odd and `(m₋, m₊) = 1`.
    DicyclicTimesCyclic,
    /// `((Z_{m₋} ⋊ Z_{2^{n+1}}) × Z_{m₊}) ⋊ Z₂` with n > 1 odd.
    DicyclicExtensionByZ2,
    /// `⟨A, B | A^m = B^n = 1, BAB⁻¹ = A^r⟩` with the odd-order side conditions.
    OddMetacyclic,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::Cyclic,
        Family::OddCyclicByZ2,
        Family::OddCyclicByZ4,
        Family::OddCyclicByKlein,
        Family::DicyclicTimesCyclic,
        Family::DicyclicExtensionByZ2,
        Family::OddMetacyclic,
    ];

    pub fn tag(&self) -> &'static str {
        match self {
            Family::Cyclic => "Z_n",
            Family::OddCyclicByZ2 => "Z_n:Z_2",
            Family::OddCyclicByZ4 => "Z_n:Z_4",
            Family::OddCyclicByKlein => "Z_n:(Z_2+Z_2)",
            Family::DicyclicTimesCyclic => "D*_{2^n m-} x Z_{m+}",
            Family::DicyclicExtensionByZ2 => "((Z_{m-}:Z_{2^{n+1}}) x Z_{m+}):Z_2",
            Family::OddMetacyclic => "<A,B|A^m=B^n=1,BAB^-1=A^r>",
        }
    }

    pub fn parse(tag: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.tag() == tag.trim())
            .ok_or_else(|| Error::InvalidInput(format!("unknown family tag {tag:?}")))
    }
}

/// Distinct cyclic subgroups as `(generator, sorted elements)`.
fn cyclic_subgroups(g: &FiniteGroup) -> Vec<(usize, Vec<usize>)> {
    let mut seen: Vec<Vec<usize>> = Vec::new();
    let mut out = Vec::new();
    for x in 0..g.order() {
        let c = g.cyclic_subgroup(x);
        if !seen.contains(&c) {
            seen.push(c.clone());
            out.push((x, c));
        }
    }
    out
}

fn normal_cyclic_subgroups(g: &FiniteGroup) -> Vec<(usize, Vec<usize>)> {
    cyclic_subgroups(g).into_iter().filter(|(_, c)| g.is_normal(c)).collect()
}

/// Smallest index `|G : C|` over normal cyclic subgroups C.
pub fn max_cyclic_normal_index(g: &FiniteGroup) -> Result<usize> {
    if g.order() > MAX_ORDER {
        return Err(Error::Budget(format!("order {} above cap {MAX_ORDER}", g.order())));
    }
    Ok(normal_cyclic_subgroups(g)
        .iter()
        .map(|(_, c)| g.order() / c.len())
        .min()
        .unwrap_or(g.order()))
}

fn odd_cyclic_with_quotient(g: &FiniteGroup, index: usize, quotient_ok: impl Fn(&FiniteGroup) -> bool) -> Result<bool> {
    for (_, c) in normal_cyclic_subgroups(g) {
        if c.len() % 2 == 1 && g.order() == index * c.len() {
            let (q, _) = g.quotient(&c)?;
            if quotient_ok(&q) {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

fn two_part(n: usize) -> (u32, usize) {
    let e = n.trailing_zeros();
    (e, n >> e)
}

fn coprime_splits(odd: usize) -> Vec<(usize, usize)> {
    (1..=odd)
        .filter(|d| odd % d == 0 && d.gcd(&(odd / d)) == 1)
        .map(|d| (d, odd / d))
        .collect()
}

fn dicyclic_times_cyclic(two_exp: u32, m_minus: usize, m_plus: usize) -> Result<FiniteGroup> {
    let d = dicyclic_two_power(1u64 << two_exp, m_minus as u64)?;
    direct_product(&d, &cyclic(m_plus)?)
}

fn is_dicyclic_times_cyclic(g: &FiniteGroup, require_exp: Option<u32>) -> Result<bool> {
    let (e, odd) = two_part(g.order());
    if e == 0 || require_exp.is_some_and(|r| r != e) {
        return Ok(false);
    }
    for (m_minus, m_plus) in coprime_splits(odd) {
        if is_isomorphic(g, &dicyclic_times_cyclic(e, m_minus, m_plus)?)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Index-2 subgroups, as kernels of the nonzero maps `G → Z₂`.
fn index_two_subgroups(g: &FiniteGroup) -> Result<Vec<Vec<usize>>> {
    let squares: Vec<usize> = (0..g.order()).map(|x| g.mul(x, x)).collect();
    let sq = g.subgroup_generated(&squares);
    let (q, proj) = g.quotient(&sq)?;
    let basis = minimal_generating_set(&q);
    let d = basis.len();
    let mut out = Vec::new();
    for mask in 1u32..(1 << d) {
        let images: Vec<usize> = (0..d).map(|i| ((mask >> i) & 1) as usize).collect();
        let z2 = cyclic(2)?;
        let Some(phi) = super::iso::extend_homomorphism(&q, &z2, &basis, &images) else {
            continue;
        };
        out.push((0..g.order()).filter(|&x| phi[proj[x]] == 0).collect());
    }
    Ok(out)
}

fn is_lemma_842(g: &FiniteGroup) -> Result<bool> {
    let (e, _) = two_part(g.order());
    // order 2^{n+2}·odd with n > 1 odd
    if e < 5 || (e - 2) % 2 == 0 {
        return Ok(false);
    }
    for n_sub in index_two_subgroups(g)? {
        let member = g.membership(&n_sub);
        let split = (0..g.order()).any(|x| !member[x] && g.element_order(x) == 2);
        if !split {
            continue;
        }
        let (sub, _) = g.subgroup_as_group(&n_sub)?;
        if is_dicyclic_times_cyclic(&sub, Some(e - 1))? {
            return Ok(true);
        }
    }
    Ok(false)
}

fn is_odd_metacyclic(g: &FiniteGroup) -> Result<bool> {
    if g.order() % 2 == 0 {
        return Ok(false);
    }
    for (a, c) in normal_cyclic_subgroups(g) {
        let m = c.len();
        let n = g.order() / m;
        let in_a = g.membership(&c);
        for b in 0..g.order() {
            if g.element_order(b) != n {
                continue;
            }
            let meets = g.cyclic_subgroup(b).iter().filter(|&&x| in_a[x]).count();
            if meets != 1 {
                continue;
            }
            let conj = g.conjugate(a, b);
            let Some(r) = (0..m).find(|&r| g.pow(a, r as u64) == conj) else {
                continue;
            };
            let p = MetacyclicParams {
                m: m as u64,
                n: n as u64,
                r: r as u64,
            };
            debug_assert_eq!(pow_mod(p.r, p.n, p.m), 1 % p.m);
            if validate_thm11_params(&p) {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

pub fn matches_family(g: &FiniteGroup, family: Family) -> Result<bool> {
    if g.order() > MAX_ORDER {
        return Err(Error::Budget(format!("order {} above cap {MAX_ORDER}", g.order())));
    }
    match family {
        Family::Cyclic => Ok(g.element_orders().contains(&g.order())),
        Family::OddCyclicByZ2 => odd_cyclic_with_quotient(g, 2, |_| true),
        Family::OddCyclicByZ4 => odd_cyclic_with_quotient(g, 4, |q| q.element_orders().contains(&4)),
        Family::OddCyclicByKlein => odd_cyclic_with_quotient(g, 4, |q| q.element_orders().iter().all(|&o| o <= 2)),
        Family::DicyclicTimesCyclic => {
            let (e, _) = two_part(g.order());
            if e % 2 == 0 {
                return Ok(false);
            }
            is_dicyclic_times_cyclic(g, None)
        }
        Family::DicyclicExtensionByZ2 => is_lemma_842(g),
        Family::OddMetacyclic => is_odd_metacyclic(g),
    }
}

/// Parses a tag and tests membership.
pub fn matches_family_tag(g: &FiniteGroup, tag: &str) -> Result<bool> {
    match Family::parse(tag) {
        Ok(f) => matches_family(g, f),
        Err(e) => invalid(e.to_string()),
    }
}
