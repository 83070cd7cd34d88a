use curvsym::group::{
    abelian2, alternating, build_metacyclic, build_standard, cyclic, cyclic_central_product, dicyclic_two_power,
    dihedral, direct_product, is_isomorphic, klein_by_cyclic, quaternion_by_cyclic, symmetric, FiniteGroup, GroupKind,
    MetacyclicParams,
};

fn std(kind: GroupKind) -> FiniteGroup {
    build_standard(kind).unwrap()
}

fn meta(m: u64, n: u64, r: u64) -> FiniteGroup {
    build_metacyclic(&MetacyclicParams::new(m, n, r).unwrap()).unwrap()
}

fn prod(a: &FiniteGroup, b: &FiniteGroup) -> FiniteGroup {
    direct_product(a, b).unwrap()
}

/// Tries every assignment of images to a greedy generating set and checks
/// the induced map in full.
fn brute_isomorphic(g: &FiniteGroup, h: &FiniteGroup) -> bool {
    let n = g.order();
    if n != h.order() {
        return false;
    }
    let mut gens = Vec::new();
    let mut span = vec![g.identity()];
    for x in 0..n {
        if !span.contains(&x) {
            gens.push(x);
            span = g.subgroup_generated(&gens);
        }
    }
    let k = gens.len();
    let mut images = vec![0usize; k];
    loop {
        if try_map(g, h, &gens, &images) {
            return true;
        }
        let mut i = 0;
        while i < k {
            images[i] += 1;
            if images[i] < n {
                break;
            }
            images[i] = 0;
            i += 1;
        }
        if i == k {
            return false;
        }
    }
}

fn try_map(g: &FiniteGroup, h: &FiniteGroup, gens: &[usize], images: &[usize]) -> bool {
    let n = g.order();
    let mut map = vec![usize::MAX; n];
    map[g.identity()] = h.identity();
    let mut queue = vec![g.identity()];
    while let Some(x) = queue.pop() {
        for (s, t) in gens.iter().zip(images) {
            let y = g.mul(x, *s);
            let img = h.mul(map[x], *t);
            if map[y] == usize::MAX {
                map[y] = img;
                queue.push(y);
            } else if map[y] != img {
                return false;
            }
        }
    }
    let mut seen = vec![false; n];
    for &v in &map {
        if seen[v] {
            return false;
        }
        seen[v] = true;
    }
    (0..n).all(|a| (0..n).all(|b| map[g.mul(a, b)] == h.mul(map[a], map[b])))
}

fn small_pool() -> Vec<(&'static str, FiniteGroup)> {
    let z = |n| cyclic(n).unwrap();
    vec![
        ("Z4", z(4)),
        ("Z2+Z2", abelian2(2, 2).unwrap()),
        ("Z6", z(6)),
        ("S3", dihedral(3).unwrap()),
        ("Z3:Z2", meta(3, 2, 2)),
        ("Z8", z(8)),
        ("Z2+Z4", abelian2(2, 4).unwrap()),
        ("Z2^3", prod(&abelian2(2, 2).unwrap(), &z(2))),
        ("D8", dihedral(4).unwrap()),
        ("Q8", std(GroupKind::Quaternion8)),
        ("D*8", std(GroupKind::BinaryDihedral(8))),
        ("Z12", z(12)),
        ("Z2+Z6", abelian2(2, 6).unwrap()),
        ("A4", alternating(4).unwrap()),
        ("V4:Z3", klein_by_cyclic(3).unwrap()),
        ("D12", dihedral(6).unwrap()),
        ("S3xZ2", prod(&dihedral(3).unwrap(), &z(2))),
        ("Z3:Z4", dicyclic_two_power(4, 3).unwrap()),
        ("D*12", std(GroupKind::BinaryDihedral(12))),
        ("Z16", z(16)),
        ("Z4+Z4", abelian2(4, 4).unwrap()),
        ("D16", dihedral(8).unwrap()),
        ("Q8xZ2", prod(&std(GroupKind::Quaternion8), &z(2))),
        ("D8xZ2", prod(&dihedral(4).unwrap(), &z(2))),
        ("Z4:Z4", meta(4, 4, 3)),
        ("Z10", z(10)),
        ("D10", dihedral(5).unwrap()),
        ("Z7:Z2", meta(7, 2, 6)),
        ("D14", dihedral(7).unwrap()),
    ]
}

#[test]
fn isomorphism_agrees_with_brute_force_below_17() {
    let pool = small_pool();
    let mut iso_pairs = 0;
    for (i, (na, a)) in pool.iter().enumerate() {
        assert!(a.order() <= 16);
        for (nb, b) in &pool[i..] {
            let fast = is_isomorphic(a, b).unwrap();
            let slow = brute_isomorphic(a, b);
            assert_eq!(fast, slow, "{na} vs {nb}");
            iso_pairs += usize::from(fast);
        }
    }
    // each group with itself plus the known coincidences
    let expected_coincidences = ["S3~Z3:Z2", "Q8~D*8", "A4~V4:Z3", "Z3:Z4~D*12", "D14~Z7:Z2", "D12~S3xZ2"];
    assert_eq!(iso_pairs, pool.len() + expected_coincidences.len());
}

#[test]
fn larger_pool_matches_known_isomorphisms() {
    let z = |n| cyclic(n).unwrap();
    // (name, class label, group): equal labels mean isomorphic
    let pool: Vec<(&str, u32, FiniteGroup)> = vec![
        ("A4", 1, std(GroupKind::Tetra)),
        ("Alt4", 1, alternating(4).unwrap()),
        ("S4", 2, std(GroupKind::Octa)),
        ("Sym4", 2, symmetric(4).unwrap()),
        ("A5", 3, std(GroupKind::Icosa)),
        ("Alt5", 3, alternating(5).unwrap()),
        ("T*", 4, std(GroupKind::BinaryTetra)),
        ("Q8:Z3", 4, quaternion_by_cyclic(3).unwrap()),
        ("SL(2,3) as Z2-central product", 4, cyclic_central_product(2, GroupKind::BinaryTetra).unwrap()),
        ("O*", 5, std(GroupKind::BinaryOcta)),
        ("Z2 x_Z2 O*", 5, cyclic_central_product(2, GroupKind::BinaryOcta).unwrap()),
        ("I*", 6, std(GroupKind::BinaryIcosa)),
        ("Z2xA5", 7, prod(&z(2), &std(GroupKind::Icosa))),
        ("Z2xA5 swapped", 7, prod(&std(GroupKind::Icosa), &z(2))),
        ("Z2xS4", 8, prod(&z(2), &std(GroupKind::Octa))),
        ("Z2xT*", 9, prod(&z(2), &std(GroupKind::BinaryTetra))),
        ("Z4 x_Z2 T*", 10, cyclic_central_product(4, GroupKind::BinaryTetra).unwrap()),
        ("Z7:Z3", 11, meta(7, 3, 2)),
        ("Z7:Z3 other r", 11, meta(7, 3, 4)),
        ("Z21", 12, z(21)),
        ("Z3xZ7", 12, abelian2(1, 21).unwrap()),
        ("D24", 13, dihedral(12).unwrap()),
        ("D*24", 14, std(GroupKind::BinaryDihedral(24))),
        ("Z3:Z8", 15, dicyclic_two_power(8, 3).unwrap()),
        ("D6xZ4", 16, prod(&dihedral(3).unwrap(), &z(4))),
        ("V4:Z9", 17, klein_by_cyclic(9).unwrap()),
        ("A4xZ3", 18, prod(&std(GroupKind::Tetra), &z(3))),
    ];
    assert!(pool.len() >= 20);
    for (i, (na, la, a)) in pool.iter().enumerate() {
        for (nb, lb, b) in &pool[i + 1..] {
            assert_eq!(is_isomorphic(a, b).unwrap(), la == lb, "{na} vs {nb}");
        }
    }
}
