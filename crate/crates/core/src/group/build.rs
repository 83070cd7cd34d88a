use std::f64::consts::PI;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::{closure, float_key, iso::extend_homomorphism, FiniteGroup, MAX_ORDER};
use crate::error::{invalid, Error, Result};
use crate::quat::Quat;

/// Standard group families. Parameters are group orders.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GroupKind {
    Cyclic(usize),
    Dihedral(usize),
    Tetra,
    Octa,
    Icosa,
    Quaternion8,
    BinaryTetra,
    BinaryOcta,
    BinaryIcosa,
    BinaryDihedral(usize),
}

impl GroupKind {
    pub fn order(&self) -> usize {
        match *self {
            GroupKind::Cyclic(n) | GroupKind::Dihedral(n) | GroupKind::BinaryDihedral(n) => n,
            GroupKind::Tetra => 12,
            GroupKind::Octa => 24,
            GroupKind::Icosa => 60,
            GroupKind::Quaternion8 => 8,
            GroupKind::BinaryTetra => 24,
            GroupKind::BinaryOcta => 48,
            GroupKind::BinaryIcosa => 120,
        }
    }

    pub fn name(&self) -> String {
        match *self {
            GroupKind::Cyclic(n) => format!("Z{n}"),
            GroupKind::Dihedral(n) => format!("D{n}"),
            GroupKind::Tetra => "A4".into(),
            GroupKind::Octa => "S4".into(),
            GroupKind::Icosa => "A5".into(),
            GroupKind::Quaternion8 => "Q8".into(),
            GroupKind::BinaryTetra => "T*".into(),
            GroupKind::BinaryOcta => "O*".into(),
            GroupKind::BinaryIcosa => "I*".into(),
            GroupKind::BinaryDihedral(n) => format!("D*{n}"),
        }
    }

    /// Inverse of [`GroupKind::name`], also accepting a few spelled-out aliases.
    pub fn parse(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        let num = |prefix: &str| -> Option<usize> { lower.strip_prefix(prefix).and_then(|r| r.parse().ok()) };
        let kind = match lower.as_str() {
            "a4" | "tetra" | "t" => GroupKind::Tetra,
            "s4" | "octa" | "o" => GroupKind::Octa,
            "a5" | "icosa" | "i" => GroupKind::Icosa,
            "q8" => GroupKind::Quaternion8,
            "t*" | "binarytetra" => GroupKind::BinaryTetra,
            "o*" | "binaryocta" => GroupKind::BinaryOcta,
            "i*" | "binaryicosa" => GroupKind::BinaryIcosa,
            _ => {
                if let Some(n) = num("d*") {
                    GroupKind::BinaryDihedral(n)
                } else if let Some(n) = num("z") {
                    GroupKind::Cyclic(n)
                } else if let Some(n) = num("d") {
                    GroupKind::Dihedral(n)
                } else {
                    return invalid(format!("unknown group name {s:?}"));
                }
            }
        };
        Ok(kind)
    }
}

pub fn build_standard(kind: GroupKind) -> Result<FiniteGroup> {
    if kind.order() > MAX_ORDER {
        return Err(Error::Budget(format!(
            "{} has order {} above cap {MAX_ORDER}",
            kind.name(),
            kind.order()
        )));
    }
    match kind {
        GroupKind::Cyclic(n) => cyclic(n),
        GroupKind::Dihedral(n) => {
            if n < 2 || n % 2 != 0 {
                return invalid(format!("dihedral order must be even and >= 2, got {n}"));
            }
            dihedral(n / 2)
        }
        GroupKind::Tetra => alternating(4),
        GroupKind::Octa => symmetric(4),
        GroupKind::Icosa => alternating(5),
        GroupKind::Quaternion8
        | GroupKind::BinaryTetra
        | GroupKind::BinaryOcta
        | GroupKind::BinaryIcosa
        | GroupKind::BinaryDihedral(_) => quaternion_model(kind).map(|(g, _)| g),
    }
}

pub fn cyclic(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return invalid("cyclic group order must be positive");
    }
    if n > MAX_ORDER {
        return Err(Error::Budget(format!("cyclic order {n} above cap {MAX_ORDER}")));
    }
    let table = (0..n)
        .flat_map(|a| (0..n).map(move |b| ((a + b) % n) as u32))
        .collect();
    let labels = (0..n).map(|a| format!("a^{a}")).collect();
    FiniteGroup::from_flat(n, table, 0, Some(labels))
}

/// Dihedral group of order 2k on `r^a s^b`, stored at index `a + k·b`.
pub fn dihedral(k: usize) -> Result<FiniteGroup> {
    if k == 0 {
        return invalid("dihedral parameter must be positive");
    }
    let n = 2 * k;
    if n > MAX_ORDER {
        return Err(Error::Budget(format!("dihedral order {n} above cap {MAX_ORDER}")));
    }
    let mut table = Vec::with_capacity(n * n);
    for x in 0..n {
        let (a, b) = (x % k, x / k);
        for y in 0..n {
            let (c, d) = (y % k, y / k);
            let rot = if b == 0 { (a + c) % k } else { (a + k - c) % k };
            table.push((rot + k * ((b + d) % 2)) as u32);
        }
    }
    let labels = (0..n)
        .map(|x| if x < k { format!("r^{x}") } else { format!("r^{}s", x - k) })
        .collect();
    FiniteGroup::from_flat(n, table, 0, Some(labels))
}

fn compose(p: &Vec<u8>, q: &Vec<u8>) -> Vec<u8> {
    q.iter().map(|&i| p[i as usize]).collect()
}

fn cycle(n: usize, points: &[u8]) -> Vec<u8> {
    let mut p: Vec<u8> = (0..n as u8).collect();
    for w in 0..points.len() {
        p[points[w] as usize] = points[(w + 1) % points.len()];
    }
    p
}

fn permutation_group(n: usize, gens: &[Vec<u8>]) -> Result<FiniteGroup> {
    let id: Vec<u8> = (0..n as u8).collect();
    let (g, perms) = closure(gens, id, compose, |p| p.clone())?;
    let labels = perms
        .iter()
        .map(|p| p.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(""))
        .collect();
    g.with_labels(labels)
}

pub fn symmetric(n: usize) -> Result<FiniteGroup> {
    if n == 0 || n > 6 {
        return invalid(format!("symmetric group degree {n} unsupported"));
    }
    if n == 1 {
        return cyclic(1);
    }
    let idx: Vec<u8> = (0..n as u8).collect();
    permutation_group(n, &[cycle(n, &[0, 1]), cycle(n, &idx)])
}

pub fn alternating(n: usize) -> Result<FiniteGroup> {
    if n == 0 || n > 6 {
        return invalid(format!("alternating group degree {n} unsupported"));
    }
    if n < 3 {
        return cyclic(1);
    }
    let gens: Vec<Vec<u8>> = (2..n as u8).map(|t| cycle(n, &[0, 1, t])).collect();
    permutation_group(n, &gens)
}

fn unit_quat_key(q: &Quat) -> Vec<i64> {
    float_key(q.to_array())
}

/// Generators of the binary polyhedral groups inside the unit quaternions.
fn quaternion_generators(kind: GroupKind) -> Result<Vec<Quat>> {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let s = Quat::new(0.5, 0.5, 0.5, 0.5);
    let r = std::f64::consts::FRAC_1_SQRT_2;
    Ok(match kind {
        GroupKind::Quaternion8 => vec![Quat::I, Quat::J],
        GroupKind::BinaryTetra => vec![Quat::I, Quat::J, s],
        GroupKind::BinaryOcta => vec![Quat::new(r, r, 0.0, 0.0), s],
        GroupKind::BinaryIcosa => vec![s, Quat::new(phi / 2.0, 0.5 / phi, 0.5, 0.0)],
        GroupKind::BinaryDihedral(n) => {
            if n < 4 || n % 4 != 0 {
                return invalid(format!("binary dihedral order must be a positive multiple of 4, got {n}"));
            }
            let k = n / 4;
            vec![Quat::exp_i(PI / k as f64), Quat::J]
        }
        other => return invalid(format!("{} has no unit-quaternion model", other.name())),
    })
}

/// Binary polyhedral group together with the unit quaternion of each element.
pub fn quaternion_model(kind: GroupKind) -> Result<(FiniteGroup, Vec<Quat>)> {
    let gens = quaternion_generators(kind)?;
    let (g, quats) = closure(&gens, Quat::ONE, |a, b| *a * *b, unit_quat_key)?;
    if g.order() != kind.order() {
        return Err(Error::InvalidInput(format!(
            "quaternion model of {} closed at order {}",
            kind.name(),
            g.order()
        )));
    }
    Ok((g, quats))
}

/// Index of the quaternion `-1` in a model produced by [`quaternion_model`].
pub fn quaternion_minus_one(quats: &[Quat]) -> Option<usize> {
    quats.iter().position(|q| q.distance(-Quat::ONE) < 1e-9)
}

pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Result<FiniteGroup> {
    let (a, b) = (g.order(), h.order());
    let n = a * b;
    if n > MAX_ORDER {
        return Err(Error::Budget(format!("direct product order {n} above cap {MAX_ORDER}")));
    }
    let mut table = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            table.push((g.mul(x / b, y / b) * b + h.mul(x % b, y % b)) as u32);
        }
    }
    FiniteGroup::from_flat(n, table, g.identity() * b + h.identity(), None)
}

/// `Z_a × Z_b`.
pub fn abelian2(a: usize, b: usize) -> Result<FiniteGroup> {
    direct_product(&cyclic(a)?, &cyclic(b)?)
}

/// `G ×_{Z₂} H`: the quotient of `G × H` by `{(1,1), (z_g, z_h)}`.
pub fn central_product(g: &FiniteGroup, h: &FiniteGroup, zg: usize, zh: usize) -> Result<FiniteGroup> {
    for (grp, z, name) in [(g, zg, "first"), (h, zh, "second")] {
        if z >= grp.order() || grp.element_order(z) != 2 || !grp.is_central(z) {
            return invalid(format!("{name} identified element must be a central involution"));
        }
    }
    let b = h.order();
    let n = g.order() * b;
    if n / 2 > MAX_ORDER {
        return Err(Error::Budget(format!("central product order {} above cap {MAX_ORDER}", n / 2)));
    }
    let partner = |x: usize| g.mul(x / b, zg) * b + h.mul(x % b, zh);
    let mut class = vec![usize::MAX; n];
    let mut reps = Vec::with_capacity(n / 2);
    for x in 0..n {
        if class[x] == usize::MAX {
            class[x] = reps.len();
            class[partner(x)] = reps.len();
            reps.push(x);
        }
    }
    let m = reps.len();
    let mut table = Vec::with_capacity(m * m);
    for &x in &reps {
        for &y in &reps {
            let p = g.mul(x / b, y / b) * b + h.mul(x % b, y % b);
            table.push(class[p] as u32);
        }
    }
    FiniteGroup::from_flat(m, table, class[g.identity() * b + h.identity()], None)
}

/// `N ⋊ Z_c` where the generator of `Z_c` acts through the automorphism `aut`
/// (a permutation of N's elements with `aut^c = id`). Element `(x, t)` is
/// stored at `x + |N|·t`.
pub fn semidirect_cyclic(normal: &FiniteGroup, c: usize, aut: &[usize]) -> Result<FiniteGroup> {
    let a = normal.order();
    if aut.len() != a || c == 0 {
        return invalid("automorphism must permute the normal subgroup; c must be positive");
    }
    for x in 0..a {
        for y in 0..a {
            if aut[normal.mul(x, y)] != normal.mul(aut[x], aut[y]) {
                return invalid("map is not a homomorphism");
            }
        }
    }
    let mut powers: Vec<Vec<usize>> = vec![(0..a).collect()];
    for t in 1..=c {
        let prev = &powers[t - 1];
        powers.push(prev.iter().map(|&x| aut[x]).collect());
    }
    if powers[c] != powers[0] {
        return invalid("automorphism order does not divide c");
    }
    let n = a * c;
    if n > MAX_ORDER {
        return Err(Error::Budget(format!("semidirect product order {n} above cap {MAX_ORDER}")));
    }
    let mut table = Vec::with_capacity(n * n);
    for u in 0..n {
        let (x1, t1) = (u % a, u / a);
        for v in 0..n {
            let (x2, t2) = (v % a, v / a);
            let x = normal.mul(x1, powers[t1][x2]);
            table.push((x + a * ((t1 + t2) % c)) as u32);
        }
    }
    FiniteGroup::from_flat(n, table, normal.identity(), None)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MetacyclicParams {
    pub m: u64,
    pub n: u64,
    pub r: u64,
}

pub fn pow_mod(base: u64, exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    let mut b = base % m;
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

impl MetacyclicParams {
    pub fn new(m: u64, n: u64, r: u64) -> Result<Self> {
        let p = Self { m, n, r };
        if m == 0 || n == 0 {
            return invalid("metacyclic m and n must be positive");
        }
        if !p.is_well_defined() {
            return invalid(format!("r^n = {r}^{n} is not 1 mod {m}"));
        }
        Ok(p)
    }

    pub fn is_well_defined(&self) -> bool {
        self.m > 0 && self.n > 0 && pow_mod(self.r, self.n, self.m) == 1 % self.m
    }

    pub fn order(&self) -> u64 {
        self.m * self.n
    }
}

/// The conditions `gcd(n(r−1), m) = 1`, `r³ ≡ 1`, `r ≢ 1 (mod m)`, m and n odd.
pub fn validate_thm11_params(p: &MetacyclicParams) -> bool {
    if p.m == 0 || p.n == 0 {
        return false;
    }
    let r = p.r % p.m;
    let r_minus_1 = (r + p.m - 1) % p.m;
    let coprime = (p.n * r_minus_1).gcd(&p.m) == 1;
    coprime && pow_mod(r, 3, p.m) == 1 % p.m && r != 1 % p.m && p.m % 2 == 1 && p.n % 2 == 1
}

/// `⟨A, B | A^m = B^n = 1, BAB⁻¹ = A^r⟩` on pairs `(a, b)` stored at `a + m·b`,
/// the pair standing for `A^a B^b`.
pub fn build_metacyclic(p: &MetacyclicParams) -> Result<FiniteGroup> {
    if !p.is_well_defined() {
        return invalid(format!("r^n = {}^{} is not 1 mod {}", p.r, p.n, p.m));
    }
    let (m, n) = (p.m as usize, p.n as usize);
    let size = m * n;
    if size > MAX_ORDER {
        return Err(Error::Budget(format!("metacyclic order {size} above cap {MAX_ORDER}")));
    }
    let rpow: Vec<usize> = (0..n).map(|b| pow_mod(p.r, b as u64, p.m) as usize).collect();
    let mut table = Vec::with_capacity(size * size);
    for u in 0..size {
        let (a1, b1) = (u % m, u / m);
        for v in 0..size {
            let (a2, b2) = (v % m, v / m);
            let a = (a1 + rpow[b1] * a2) % m;
            table.push((a + m * ((b1 + b2) % n)) as u32);
        }
    }
    let labels = (0..size).map(|u| format!("A^{}B^{}", u % m, u / m)).collect();
    FiniteGroup::from_flat(size, table, 0, Some(labels))
}

/// `(Z₂ ⊕ Z₂) ⋊ Z_c` with the generator cycling the three involutions; c must
/// be a multiple of 3.
pub fn klein_by_cyclic(c: usize) -> Result<FiniteGroup> {
    if c % 3 != 0 {
        return invalid(format!("order-3 action needs 3 | c, got c = {c}"));
    }
    let v4 = abelian2(2, 2)?;
    semidirect_cyclic(&v4, c, &[0, 2, 3, 1])
}

/// `Q₈ ⋊ Z_c` with the generator acting by `i ↦ j ↦ k ↦ i`; c must be a
/// multiple of 3.
pub fn quaternion_by_cyclic(c: usize) -> Result<FiniteGroup> {
    if c % 3 != 0 {
        return invalid(format!("order-3 action needs 3 | c, got c = {c}"));
    }
    let (q8, quats) = quaternion_model(GroupKind::Quaternion8)?;
    let find = |q: Quat| quats.iter().position(|x| x.distance(q) < 1e-9).expect("unit in Q8");
    let (i, j, k) = (find(Quat::I), find(Quat::J), find(Quat::K));
    let aut = extend_homomorphism(&q8, &q8, &[i, j], &[j, k])
        .ok_or_else(|| Error::InvalidInput("i -> j -> k does not define an automorphism".into()))?;
    semidirect_cyclic(&q8, c, &aut)
}

/// `Z_m ×_{Z₂} H` for a binary polyhedral or binary dihedral H; m even.
pub fn cyclic_central_product(m: usize, kind: GroupKind) -> Result<FiniteGroup> {
    if m % 2 != 0 || m == 0 {
        return invalid(format!("central product with Z_m needs m even, got {m}"));
    }
    let (h, quats) = quaternion_model(kind)?;
    let minus = quaternion_minus_one(&quats)
        .ok_or_else(|| Error::InvalidInput(format!("{} does not contain -1", kind.name())))?;
    central_product(&cyclic(m)?, &h, m / 2, minus)
}

/// Wolf's `D*_{2^e·m}` = `Z_m ⋊ Z_{2^e}` with the generator inverting Z_m (m odd).
pub fn dicyclic_two_power(two_power: u64, m: u64) -> Result<FiniteGroup> {
    if m % 2 == 0 || !two_power.is_power_of_two() {
        return invalid("need an odd m and a power of two");
    }
    let r = if m == 1 { 0 } else { m - 1 };
    build_metacyclic(&MetacyclicParams::new(m, two_power, r)?)
}
