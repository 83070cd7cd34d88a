use super::{structural_invariants, FiniteGroup, MAX_ORDER};
use crate::error::{Error, Result};

/// Greedy small generating set: repeatedly adds the element that enlarges the
/// generated subgroup the most (lowest index on ties).
pub fn minimal_generating_set(g: &FiniteGroup) -> Vec<usize> {
    let mut gens: Vec<usize> = Vec::new();
    let mut current = g.subgroup_generated(&gens);
    while current.len() < g.order() {
        let member = g.membership(&current);
        let mut best = (0usize, usize::MAX);
        for x in 0..g.order() {
            if member[x] {
                continue;
            }
            let mut trial = gens.clone();
            trial.push(x);
            let size = g.subgroup_generated(&trial).len();
            if size > best.0 {
                best = (size, x);
                if size == g.order() {
                    break;
                }
            }
        }
        gens.push(best.1);
        current = g.subgroup_generated(&gens);
    }
    gens
}

/// Extends `gens ↦ images` to a homomorphism defined on `⟨gens⟩`, returning the
/// full map (entries outside `⟨gens⟩` are `usize::MAX`), or `None` when the
/// assignment is inconsistent.
fn extend_partial(g: &FiniteGroup, h: &FiniteGroup, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
    let mut map = vec![usize::MAX; g.order()];
    map[g.identity()] = h.identity();
    let mut queue = vec![g.identity()];
    let mut i = 0;
    while i < queue.len() {
        let x = queue[i];
        i += 1;
        for (&s, &t) in gens.iter().zip(images) {
            let y = g.mul(x, s);
            let img = h.mul(map[x], t);
            if map[y] == usize::MAX {
                map[y] = img;
                queue.push(y);
            } else if map[y] != img {
                return None;
            }
        }
    }
    Some(map)
}

/// Homomorphism `G → H` sending `gens[i] ↦ images[i]`, when `gens` generates G
/// and the assignment respects all relations.
pub fn extend_homomorphism(g: &FiniteGroup, h: &FiniteGroup, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
    let map = extend_partial(g, h, gens, images)?;
    if map.contains(&usize::MAX) {
        return None;
    }
    Some(map)
}

fn is_injective(map: &[usize], size: usize) -> bool {
    let mut seen = vec![false; size];
    for &y in map.iter().filter(|&&y| y != usize::MAX) {
        if seen[y] {
            return false;
        }
        seen[y] = true;
    }
    true
}

/// Isomorphism `G → H` as an element map, if one exists.
///
/// Screens by structural invariants, then backtracks over images of a greedy
/// generating set of G, pruning on element order, class size and consistency
/// of the partial homomorphism on the subgroup generated so far.
pub fn find_isomorphism(g: &FiniteGroup, h: &FiniteGroup) -> Result<Option<Vec<usize>>> {
    if g.order() > MAX_ORDER || h.order() > MAX_ORDER {
        return Err(Error::Budget(format!("isomorphism test above order cap {MAX_ORDER}")));
    }
    if g.order() != h.order() {
        return Ok(None);
    }
    if structural_invariants(g) != structural_invariants(h) {
        return Ok(None);
    }
    let gens = minimal_generating_set(g);
    let class_size = |grp: &FiniteGroup| -> Vec<usize> {
        let mut size = vec![0; grp.order()];
        for class in grp.conjugacy_classes() {
            for &c in &class {
                size[c] = class.len();
            }
        }
        size
    };
    let (g_orders, h_orders) = (g.element_orders(), h.element_orders());
    let (g_class, h_class) = (class_size(g), class_size(h));
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&s| {
            (0..h.order())
                .filter(|&t| h_orders[t] == g_orders[s] && h_class[t] == g_class[s])
                .collect()
        })
        .collect();
    let mut images = Vec::with_capacity(gens.len());
    Ok(search(g, h, &gens, &candidates, &mut images))
}

fn search(
    g: &FiniteGroup,
    h: &FiniteGroup,
    gens: &[usize],
    candidates: &[Vec<usize>],
    images: &mut Vec<usize>,
) -> Option<Vec<usize>> {
    let depth = images.len();
    if depth == gens.len() {
        let map = extend_partial(g, h, gens, images)?;
        return (!map.contains(&usize::MAX) && is_injective(&map, h.order())).then_some(map);
    }
    for &t in &candidates[depth] {
        images.push(t);
        let ok = extend_partial(g, h, &gens[..=depth], images).is_some_and(|m| is_injective(&m, h.order()));
        if ok {
            if let Some(map) = search(g, h, gens, candidates, images) {
                return Some(map);
            }
        }
        images.pop();
    }
    None
}

pub fn is_isomorphic(g: &FiniteGroup, h: &FiniteGroup) -> Result<bool> {
    Ok(find_isomorphism(g, h)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{abelian2, build_standard, cyclic, dihedral, GroupKind};

    #[test]
    fn reflexive_on_examples() {
        for kind in [GroupKind::Tetra, GroupKind::Quaternion8, GroupKind::BinaryTetra, GroupKind::Dihedral(12)] {
            let g = build_standard(kind).unwrap();
            assert!(is_isomorphic(&g, &g).unwrap());
        }
    }

    #[test]
    fn cyclic_four_versus_klein() {
        assert!(!is_isomorphic(&cyclic(4).unwrap(), &abelian2(2, 2).unwrap()).unwrap());
    }

    #[test]
    fn returned_map_is_an_isomorphism() {
        let a = build_standard(GroupKind::Octa).unwrap();
        let b = build_standard(GroupKind::BinaryOcta).unwrap();
        let (q, _) = b.quotient(&b.center()).unwrap();
        let map = find_isomorphism(&a, &q).unwrap().expect("O*/Z2 is S4");
        for x in 0..24 {
            for y in 0..24 {
                assert_eq!(map[a.mul(x, y)], q.mul(map[x], map[y]));
            }
        }
    }

    #[test]
    fn dihedral_twelve_splits() {
        // D12 ≅ D6 × Z2 because 6 = 2·3 with 3 odd
        let d12 = dihedral(6).unwrap();
        let prod = crate::group::direct_product(&dihedral(3).unwrap(), &cyclic(2).unwrap()).unwrap();
        assert!(is_isomorphic(&d12, &prod).unwrap());
        assert!(!is_isomorphic(&d12, &build_standard(GroupKind::BinaryDihedral(12)).unwrap()).unwrap());
    }

    #[test]
    fn generating_sets_are_small() {
        for kind in [GroupKind::BinaryIcosa, GroupKind::Octa, GroupKind::Icosa] {
            let g = build_standard(kind).unwrap();
            let gens = minimal_generating_set(&g);
            assert!(gens.len() <= 2);
            assert_eq!(g.subgroup_generated(&gens).len(), g.order());
        }
        let v8 = crate::group::direct_product(&abelian2(2, 2).unwrap(), &cyclic(2).unwrap()).unwrap();
        assert_eq!(minimal_generating_set(&v8).len(), 3);
    }
}
