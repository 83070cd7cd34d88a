//! Explicit orthogonal and unitary realizations of the finite groups in play.
//!
//! Most constructions work the same way: write down matrix generators, close
//! them under multiplication, then match the closed matrix group against the
//! abstract target with [`find_isomorphism`]. Faithfulness is re-checked
//! independently by [`is_faithful_rep`].

use std::f64::consts::PI;

use nalgebra::{Complex, DMatrix, Matrix4};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::cohomology::{klein_metacyclic_product, quaternion_metacyclic_central_product};
use crate::error::{invalid, Error, Result};
use crate::group::{
    abelian2, build_metacyclic, build_standard, closure, cyclic, cyclic_central_product, direct_product,
    find_isomorphism, float_key, quaternion_by_cyclic, quaternion_model, validate_thm11_params, FiniteGroup,
    GroupKind, MetacyclicParams,
};
use crate::quat::Quat;

pub type C64 = Complex<f64>;
pub type CMat = DMatrix<C64>;

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldTag {
    Real,
    Complex,
}

/// One matrix per group element, indexed like the group.
#[derive(Debug, Clone)]
pub struct MatrixRep {
    pub group: FiniteGroup,
    pub dimension: usize,
    pub field_tag: FieldTag,
    pub projective: bool,
    pub matrices: Vec<CMat>,
    pub tolerance: f64,
}

/// Residuals measured on a representation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RepCheck {
    /// max ‖M(g)M(h) − M(gh)‖ (projective reps: after phase normalization)
    pub homomorphism_residual: f64,
    /// max ‖M*M − I‖
    pub unitarity_residual: f64,
    /// max |det M − 1| (real, non-projective reps only; 0 otherwise)
    pub determinant_residual: f64,
    /// min distance between matrices of distinct elements
    pub min_separation: f64,
    pub faithful: bool,
}

impl MatrixRep {
    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn matrix(&self, g: usize) -> &CMat {
        &self.matrices[g]
    }

    /// Real part of each matrix; meaningful for real reps.
    pub fn real_matrices(&self) -> Vec<DMatrix<f64>> {
        self.matrices.iter().map(|m| m.map(|z| z.re)).collect()
    }

    pub fn check(&self) -> RepCheck {
        check_rep(self)
    }

    /// Orthogonal with determinant +1 on every element.
    pub fn is_special_orthogonal(&self) -> bool {
        let c = self.check();
        self.field_tag == FieldTag::Real
            && !self.projective
            && c.unitarity_residual < self.tolerance
            && c.determinant_residual < self.tolerance
    }

    /// Row-major JSON: reals for real reps, `[re, im]` pairs otherwise.
    pub fn to_json(&self) -> serde_json::Value {
        let matrices: Vec<serde_json::Value> = self
            .matrices
            .iter()
            .map(|m| {
                let mut rows = Vec::with_capacity(m.nrows());
                for i in 0..m.nrows() {
                    let row: Vec<serde_json::Value> = (0..m.ncols())
                        .map(|j| match self.field_tag {
                            FieldTag::Real => json!(m[(i, j)].re),
                            FieldTag::Complex => json!([m[(i, j)].re, m[(i, j)].im]),
                        })
                        .collect();
                    rows.push(serde_json::Value::Array(row));
                }
                serde_json::Value::Array(rows)
            })
            .collect();
        json!({
            "order": self.order(),
            "dimension": self.dimension,
            "field_tag": self.field_tag,
            "projective": self.projective,
            "tolerance": self.tolerance,
            "matrices": matrices,
        })
    }
}

fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

fn real_to_c(m: &DMatrix<f64>) -> CMat {
    m.map(c)
}

fn rotation2(theta: f64) -> DMatrix<f64> {
    DMatrix::from_row_slice(2, 2, &[theta.cos(), -theta.sin(), theta.sin(), theta.cos()])
}

/// Block-diagonal sum.
pub fn block_diag(blocks: &[DMatrix<f64>]) -> DMatrix<f64> {
    let n: usize = blocks.iter().map(|b| b.nrows()).sum();
    let mut out = DMatrix::zeros(n, n);
    let mut at = 0;
    for b in blocks {
        out.view_mut((at, at), (b.nrows(), b.ncols())).copy_from(b);
        at += b.nrows();
    }
    out
}

/// `[[A, −B], [B, A]]` for `M = A + iB`: U(n) into SO(2n).
pub fn realify(m: &CMat) -> DMatrix<f64> {
    let n = m.nrows();
    let mut out = DMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            let z = m[(i, j)];
            out[(i, j)] = z.re;
            out[(i + n, j + n)] = z.re;
            out[(i, j + n)] = -z.im;
            out[(i + n, j)] = z.im;
        }
    }
    out
}

/// Multiplies by a unit scalar so the first nonzero entry (row-major) is real positive.
pub fn normalize_phase(m: &CMat) -> CMat {
    let mut pivot = None;
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            if pivot.is_none() && m[(i, j)].norm() > 1e-6 {
                pivot = Some(m[(i, j)]);
            }
        }
    }
    match pivot {
        Some(z) => m * C64::new(z.re / z.norm(), -z.im / z.norm()),
        None => m.clone(),
    }
}

fn residual(a: &CMat, b: &CMat) -> f64 {
    (a - b).norm()
}

pub fn check_rep(rep: &MatrixRep) -> RepCheck {
    let n = rep.order();
    let d = rep.dimension;
    let ident = CMat::identity(d, d);
    let shape_ok = rep.matrices.len() == n && rep.matrices.iter().all(|m| m.nrows() == d && m.ncols() == d);
    if !shape_ok {
        return RepCheck {
            homomorphism_residual: f64::INFINITY,
            unitarity_residual: f64::INFINITY,
            determinant_residual: f64::INFINITY,
            min_separation: 0.0,
            faithful: false,
        };
    }
    let unitarity = rep
        .matrices
        .iter()
        .map(|m| residual(&(m.adjoint() * m), &ident))
        .fold(0.0, f64::max);
    let determinant = if rep.field_tag == FieldTag::Real && !rep.projective {
        rep.matrices
            .iter()
            .map(|m| (m.clone().determinant() - c(1.0)).norm())
            .fold(0.0, f64::max)
    } else {
        0.0
    };
    let normalized: Vec<CMat> = if rep.projective {
        rep.matrices.iter().map(normalize_phase).collect()
    } else {
        rep.matrices.clone()
    };
    let mut hom = 0.0f64;
    for g in 0..n {
        for h in 0..n {
            let prod = &normalized[g] * &normalized[h];
            let lhs = if rep.projective { normalize_phase(&prod) } else { prod };
            hom = hom.max(residual(&lhs, &normalized[rep.group.mul(g, h)]));
        }
    }
    let mut sep = f64::INFINITY;
    for g in 0..n {
        for h in g + 1..n {
            sep = sep.min(residual(&normalized[g], &normalized[h]));
        }
    }
    let tol = rep.tolerance;
    RepCheck {
        homomorphism_residual: hom,
        unitarity_residual: unitarity,
        determinant_residual: determinant,
        min_separation: sep,
        faithful: hom < tol && unitarity < tol && sep > 10.0 * tol,
    }
}

pub fn is_faithful_rep(rep: &MatrixRep) -> bool {
    check_rep(rep).faithful
}

fn matrix_key(m: &CMat) -> Vec<i64> {
    float_key(m.iter().flat_map(|z| [z.re, z.im]))
}

/// Closes the generators and matches the result against `target`.
fn realize(target: &FiniteGroup, gens: &[CMat], field_tag: FieldTag) -> Result<MatrixRep> {
    let d = gens.first().map_or(1, CMat::nrows);
    let (closed, elems) = closure(gens, CMat::identity(d, d), |a, b| a * b, matrix_key)?;
    let map = find_isomorphism(target, &closed)?
        .ok_or_else(|| Error::InvalidInput("generated matrix group is not isomorphic to the target".into()))?;
    let rep = MatrixRep {
        group: target.clone(),
        dimension: d,
        field_tag,
        projective: false,
        matrices: map.iter().map(|&i| elems[i].clone()).collect(),
        tolerance: DEFAULT_TOLERANCE,
    };
    if !is_faithful_rep(&rep) {
        return Err(Error::InvalidInput("constructed representation is not faithful".into()));
    }
    Ok(rep)
}

/// Pads a 4-dimensional orthogonal rep with a `det g` block, landing in SO(5).
fn pad_to_so5(rep: MatrixRep) -> Result<MatrixRep> {
    let mut out = Vec::with_capacity(rep.matrices.len());
    for m in &rep.matrices {
        if m.nrows() == 5 {
            out.push(m.clone());
            continue;
        }
        let re = m.map(|z| z.re);
        let det = re.determinant().signum();
        let block = DMatrix::identity(5 - re.nrows(), 5 - re.nrows()) * det;
        out.push(real_to_c(&block_diag(&[re, block])));
    }
    let rep = MatrixRep {
        dimension: 5,
        matrices: out,
        ..rep
    };
    if !rep.is_special_orthogonal() || !is_faithful_rep(&rep) {
        return Err(Error::InvalidInput("padded representation left SO(5)".into()));
    }
    Ok(rep)
}

/// Pair of unit quaternions acting on ℍ = ℝ⁴ by `x ↦ p x q̄`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuatPair {
    pub p: Quat,
    pub q: Quat,
}

impl QuatPair {
    pub fn new(p: Quat, q: Quat) -> Result<Self> {
        for (name, u) in [("p", p), ("q", q)] {
            if (u.norm() - 1.0).abs() > 1e-12 {
                return invalid(format!("{name} is not a unit quaternion (norm {})", u.norm()));
            }
        }
        Ok(Self { p, q })
    }
}

pub fn quat_pair_to_so4(pair: QuatPair) -> Result<Matrix4<f64>> {
    let pair = QuatPair::new(pair.p, pair.q)?;
    let basis = [Quat::ONE, Quat::I, Quat::J, Quat::K];
    let mut m = Matrix4::zeros();
    for (col, b) in basis.iter().enumerate() {
        let img = (pair.p * *b * pair.q.conj()).to_array();
        for row in 0..4 {
            m[(row, col)] = img[row];
        }
    }
    Ok(m)
}

fn so4_c(pair: QuatPair) -> Result<CMat> {
    let m = quat_pair_to_so4(pair)?;
    Ok(CMat::from_fn(4, 4, |i, j| c(m[(i, j)])))
}

fn su2_c(q: Quat) -> CMat {
    let m = q.to_su2();
    CMat::from_fn(2, 2, |i, j| m[(i, j)])
}

fn scalar2(theta: f64) -> CMat {
    CMat::identity(2, 2) * C64::from_polar(1.0, theta)
}

/// 3-dimensional rotation model of a polyhedral group.
pub fn polyhedral_so3(kind: GroupKind) -> Result<MatrixRep> {
    let target = build_standard(kind)?;
    let rz = |theta: f64| block_diag(&[rotation2(theta), DMatrix::identity(1, 1)]);
    let perm = DMatrix::from_row_slice(3, 3, &[0.0, 0.0, 1.0, 1.0, 0.0, 0.0, 0.0, 1.0, 0.0]);
    let gens: Vec<DMatrix<f64>> = match kind {
        GroupKind::Cyclic(n) => vec![rz(2.0 * PI / n as f64)],
        GroupKind::Dihedral(n) => {
            let half_turn_x = DMatrix::from_row_slice(3, 3, &[1.0, 0.0, 0.0, 0.0, -1.0, 0.0, 0.0, 0.0, -1.0]);
            vec![rz(4.0 * PI / n as f64), half_turn_x]
        }
        GroupKind::Tetra => vec![perm.clone(), DMatrix::from_row_slice(3, 3, &[1.0, 0.0, 0.0, 0.0, -1.0, 0.0, 0.0, 0.0, -1.0])],
        GroupKind::Octa => vec![perm, rz(PI / 2.0)],
        GroupKind::Icosa => {
            let phi = (1.0 + 5f64.sqrt()) / 2.0;
            let a = Quat::new(0.5, 0.5, 0.5, 0.5);
            let b = Quat::new(phi / 2.0, 0.5 / phi, 0.5, 0.0);
            [a, b]
                .iter()
                .map(|q| {
                    let r = q.to_so3();
                    DMatrix::from_fn(3, 3, |i, j| r[(i, j)])
                })
                .collect()
        }
        other => return invalid(format!("{} is not a polyhedral group", other.name())),
    };
    if target.order() == 1 {
        return Ok(MatrixRep {
            group: target,
            dimension: 3,
            field_tag: FieldTag::Real,
            projective: false,
            matrices: vec![CMat::identity(3, 3)],
            tolerance: DEFAULT_TOLERANCE,
        });
    }
    let gens: Vec<CMat> = gens.iter().map(real_to_c).collect();
    realize(&target, &gens, FieldTag::Real)
}

/// The explicit recipes, each realizing one family of groups in SO(5).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "recipe", rename_all = "kebab-case")]
pub enum Recipe {
    /// `Z_a ⊕ Z_b` as two planar rotations.
    AbelianRank2 { a: usize, b: usize },
    /// Trivial extension `H × Z_m`: polyhedral block plus a planar rotation.
    So3xSo2 { quotient: GroupKind, m: usize },
    /// `V₄ ⊂ SO(3)` with `diag(P₃, R(2π/n))`, 3 | n: `(V₄ ⋊ Z_{3^a}) × Z_{n/3^a}`.
    So3xSo2Twisted { rotation_order: u64 },
    /// `Z_m ×_{Z₂} H` for binary polyhedral H through quaternion pairs.
    So4CentralProduct { m: usize, kind: GroupKind },
    /// `⟨Q₈, ω·t, λ⟩ ⊂ U(2)`: ω scalar of order 3^{s+1}, λ scalar of order c.
    U2 { scalar_order: u64, s: u32 },
    /// The odd-k dihedral extension groups in O(4), then `g ↦ diag(g, det g)`.
    O4InSo5 { m: u64, k: u64 },
}

impl Recipe {
    pub fn tag(&self) -> &'static str {
        match self {
            Recipe::AbelianRank2 { .. } => "so2xso2",
            Recipe::So3xSo2 { .. } | Recipe::So3xSo2Twisted { .. } => "so3xso2",
            Recipe::So4CentralProduct { .. } => "so4-central-product",
            Recipe::U2 { .. } => "u2",
            Recipe::O4InSo5 { .. } => "o4-in-so5",
        }
    }

    /// The abstract group this recipe realizes.
    pub fn target(&self) -> Result<FiniteGroup> {
        match *self {
            Recipe::AbelianRank2 { a, b } => abelian2(a, b),
            Recipe::So3xSo2 { quotient, m } => direct_product(&build_standard(quotient)?, &cyclic(m)?),
            Recipe::So3xSo2Twisted { rotation_order } => {
                let (three, rest) = split_three(rotation_order)?;
                klein_metacyclic_product(three as usize, rest as usize)
            }
            Recipe::So4CentralProduct { m, kind } => cyclic_central_product(m, kind),
            Recipe::U2 { scalar_order, s } => u2_target(scalar_order, s),
            Recipe::O4InSo5 { m, k } => {
                if m % 2 == 0 {
                    cyclic_central_product(m as usize, GroupKind::BinaryDihedral(4 * k as usize))
                } else {
                    direct_product(&build_standard(GroupKind::Dihedral(2 * k as usize))?, &cyclic(m as usize)?)
                }
            }
        }
    }
}

fn split_three(n: u64) -> Result<(u64, u64)> {
    if n == 0 || n % 3 != 0 {
        return invalid(format!("rotation order must be a multiple of 3, got {n}"));
    }
    let mut three = 1;
    let mut rest = n;
    while rest % 3 == 0 {
        three *= 3;
        rest /= 3;
    }
    Ok((three, rest))
}

fn u2_target(scalar_order: u64, s: u32) -> Result<FiniteGroup> {
    if scalar_order == 0 || scalar_order % 3 == 0 {
        return invalid("scalar order must be positive and prime to 3");
    }
    let c3 = 3u64.pow(s + 1);
    if scalar_order % 2 == 0 {
        quaternion_metacyclic_central_product(scalar_order, s + 1)
    } else {
        direct_product(&quaternion_by_cyclic(c3 as usize)?, &cyclic(scalar_order as usize)?)
    }
}

/// Generators of the U(2) groups: Q₈, ω·t and the central scalar.
fn u2_generators(scalar_order: u64, s: u32) -> Vec<CMat> {
    let c3 = 3u64.pow(s + 1) as f64;
    let t = Quat::new(-0.5, 0.5, 0.5, 0.5);
    let mut gens = vec![
        su2_c(Quat::I),
        su2_c(Quat::J),
        su2_c(t) * C64::from_polar(1.0, 2.0 * PI / c3),
    ];
    if scalar_order > 1 {
        gens.push(scalar2(2.0 * PI / scalar_order as f64));
    }
    gens
}

/// The 2-dimensional complex rep of `⟨Q₈, ω·t, λ⟩`.
pub fn u2_rep(scalar_order: u64, s: u32) -> Result<MatrixRep> {
    let target = u2_target(scalar_order, s)?;
    realize(&target, &u2_generators(scalar_order, s), FieldTag::Complex)
}

pub fn build_recipe_rep(recipe: Recipe) -> Result<MatrixRep> {
    let target = recipe.target()?;
    let rep = match recipe {
        Recipe::AbelianRank2 { a, b } => {
            let gens = [
                block_diag(&[rotation2(2.0 * PI / a as f64), DMatrix::identity(3, 3)]),
                block_diag(&[DMatrix::identity(2, 2), rotation2(2.0 * PI / b as f64), DMatrix::identity(1, 1)]),
            ];
            realize_real(&target, &gens)?
        }
        Recipe::So3xSo2 { quotient, m } => {
            let h = polyhedral_so3(quotient)?;
            let hgens = crate::group::minimal_generating_set(&h.group);
            let mut gens: Vec<DMatrix<f64>> = hgens
                .iter()
                .map(|&g| block_diag(&[h.matrices[g].map(|z| z.re), DMatrix::identity(2, 2)]))
                .collect();
            gens.push(block_diag(&[DMatrix::identity(3, 3), rotation2(2.0 * PI / m as f64)]));
            realize_real(&target, &gens)?
        }
        Recipe::So3xSo2Twisted { rotation_order } => {
            let perm = DMatrix::from_row_slice(3, 3, &[0.0, 0.0, 1.0, 1.0, 0.0, 0.0, 0.0, 1.0, 0.0]);
            let sign = |a: f64, b: f64, c: f64| DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![a, b, c, 1.0, 1.0]));
            let gens = [
                sign(1.0, -1.0, -1.0),
                sign(-1.0, 1.0, -1.0),
                block_diag(&[perm, rotation2(2.0 * PI / rotation_order as f64)]),
            ];
            realize_real(&target, &gens)?
        }
        Recipe::So4CentralProduct { m, kind } => {
            if m % 2 != 0 {
                return invalid("central product with Z_m needs m even");
            }
            let (h, quats) = quaternion_model(kind)?;
            let mut gens = Vec::new();
            for g in crate::group::minimal_generating_set(&h) {
                gens.push(so4_c(QuatPair::new(quats[g], Quat::ONE)?)?);
            }
            gens.push(so4_c(QuatPair::new(Quat::ONE, Quat::exp_i(2.0 * PI / m as f64))?)?);
            pad_to_so5(realize(&target, &gens, FieldTag::Real)?)?
        }
        Recipe::U2 { scalar_order, s } => {
            let gens: Vec<CMat> = u2_generators(scalar_order, s)
                .iter()
                .map(|g| real_to_c(&realify(g)))
                .collect();
            pad_to_so5(realize(&target, &gens, FieldTag::Real)?)?
        }
        Recipe::O4InSo5 { m, k } => {
            if k % 2 == 0 || k < 3 || m == 0 {
                return invalid("need odd k >= 3 and m >= 1");
            }
            let gens: Vec<CMat> = if m % 2 == 0 {
                [
                    su2_c(Quat::exp_i(PI / k as f64)),
                    su2_c(Quat::J),
                    scalar2(2.0 * PI / m as f64),
                ]
                .iter()
                .map(|g| real_to_c(&realify(g)))
                .collect()
            } else {
                // D_{2k} ⊂ O(2) beside a rotation of order m
                let refl = DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -1.0]);
                [
                    block_diag(&[rotation2(2.0 * PI / k as f64), DMatrix::identity(2, 2)]),
                    block_diag(&[refl, DMatrix::identity(2, 2)]),
                    block_diag(&[DMatrix::identity(2, 2), rotation2(2.0 * PI / m as f64)]),
                ]
                .iter()
                .map(real_to_c)
                .collect()
            };
            pad_to_so5(realize(&target, &gens, FieldTag::Real)?)?
        }
    };
    if !rep.is_special_orthogonal() {
        return Err(Error::InvalidInput(format!("recipe {} left SO(5)", recipe.tag())));
    }
    Ok(rep)
}

fn realize_real(target: &FiniteGroup, gens: &[DMatrix<f64>]) -> Result<MatrixRep> {
    let gens: Vec<CMat> = gens.iter().map(real_to_c).collect();
    realize(target, &gens, FieldTag::Real)
}

/// What is known about how a group was put together.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum StructureHint {
    /// Extension by a cyclic polyhedral group: abelian of rank ≤ 2.
    Abelian { a: usize, b: usize },
    TrivialExtension { quotient: GroupKind, m: usize },
    /// Nontrivial extension of Z_m by S₄ or A₅.
    PolyhedralCentralProduct { m: usize, kind: GroupKind },
    /// Nontrivial extension of `Z_{3^r·m₊}` by A₄.
    KleinTwist { r: u32, m_plus: u64 },
    /// Extension of `Z_{2^r·3^s·m₊}` by A₄ through U(2); s = 0 is the T* case.
    QuaternionTwist { scalar_order: u64, s: u32 },
    /// Nontrivial extension of Z_m by D_{2k}, k odd.
    OddDihedral { m: u64, k: u64 },
    /// Extension by a dihedral group of order divisible by 4.
    DihedralTwoPower { m: u64, order: u64 },
}

impl StructureHint {
    pub fn recipe(&self) -> Result<Recipe> {
        Ok(match *self {
            StructureHint::Abelian { a, b } => Recipe::AbelianRank2 { a, b },
            StructureHint::TrivialExtension { quotient, m } => Recipe::So3xSo2 { quotient, m },
            StructureHint::PolyhedralCentralProduct { m, kind } => {
                let binary = match kind {
                    GroupKind::Octa | GroupKind::BinaryOcta => GroupKind::BinaryOcta,
                    GroupKind::Icosa | GroupKind::BinaryIcosa => GroupKind::BinaryIcosa,
                    GroupKind::Tetra | GroupKind::BinaryTetra => GroupKind::BinaryTetra,
                    other => return invalid(format!("no central-product recipe over {}", other.name())),
                };
                Recipe::So4CentralProduct { m, kind: binary }
            }
            // the extension class lifts the order-3 rotation to order 3^{r+1}·m₊
            StructureHint::KleinTwist { r, m_plus } => Recipe::So3xSo2Twisted {
                rotation_order: 3u64.pow(r + 1) * m_plus,
            },
            StructureHint::QuaternionTwist { scalar_order, s } => Recipe::U2 { scalar_order, s },
            StructureHint::OddDihedral { m, k } => Recipe::O4InSo5 { m, k },
            StructureHint::DihedralTwoPower { m, order } => {
                return Err(Error::Unsupported(format!(
                    "extension of Z{m} by the dihedral group of order {order}: no explicit recipe"
                )))
            }
        })
    }
}

/// Faithful 5-dimensional special-orthogonal rep of G, following the hint.
pub fn embed_into_so5(g: &FiniteGroup, hint: StructureHint) -> Result<MatrixRep> {
    let recipe = hint.recipe()?;
    let built = build_recipe_rep(recipe)?;
    if built.order() != g.order() {
        return invalid(format!(
            "hint describes a group of order {}, got order {}",
            built.order(),
            g.order()
        ));
    }
    let map = find_isomorphism(g, &built.group)?
        .ok_or_else(|| Error::InvalidInput("group does not match its structure hint".into()))?;
    let rep = MatrixRep {
        group: g.clone(),
        matrices: map.iter().map(|&i| built.matrices[i].clone()).collect(),
        ..built
    };
    if !rep.is_special_orthogonal() || !is_faithful_rep(&rep) {
        return Err(Error::InvalidInput("embedding failed verification".into()));
    }
    Ok(rep)
}

/// `A ↦ diag(ζ, ζ^r, ζ^{r²})`, `B ↦` the cyclic shift `e_j ↦ e_{j−1}`.
pub fn pu3_generators(p: &MetacyclicParams) -> (CMat, CMat) {
    let zeta = |k: u64| C64::from_polar(1.0, 2.0 * PI * (k % p.m) as f64 / p.m as f64);
    let r = p.r % p.m.max(1);
    let a = CMat::from_diagonal(&nalgebra::DVector::from_vec(vec![zeta(1), zeta(r), zeta(r * r)]));
    let mut b = CMat::zeros(3, 3);
    for j in 0..3 {
        b[((j + 2) % 3, j)] = c(1.0);
    }
    (a, b)
}

/// `[‖A^m − I‖, ‖B³ − I‖, ‖BAB⁻¹ − A^r‖]`, as plain matrices.
pub fn pu3_relation_residuals(p: &MetacyclicParams) -> [f64; 3] {
    let (a, b) = pu3_generators(p);
    let ident = CMat::identity(3, 3);
    let am = a.pow(p.m as u32);
    let b3 = b.pow(3);
    let binv = b.adjoint();
    let ar = a.pow((p.r % p.m.max(1)) as u32);
    [residual(&am, &ident), residual(&b3, &ident), residual(&(&b * &a * binv), &ar)]
}

/// Projective rep of the Theorem-1.1 metacyclic group in PU(3).
pub fn pu3_metacyclic(p: &MetacyclicParams) -> Result<MatrixRep> {
    if p.n != 3 {
        return invalid(format!("the diagonal-plus-shift model needs n = 3, got {}", p.n));
    }
    if p.m != 1 && !validate_thm11_params(p) {
        return invalid(format!("({}, {}, {}) fails the metacyclic conditions", p.m, p.n, p.r));
    }
    let group = build_metacyclic(p)?;
    let (a, b) = pu3_generators(p);
    let m = p.m as usize;
    let matrices = (0..group.order())
        .map(|u| a.pow((u % m) as u32) * b.pow((u / m) as u32))
        .collect();
    let rep = MatrixRep {
        group,
        dimension: 3,
        field_tag: FieldTag::Complex,
        projective: true,
        matrices,
        tolerance: DEFAULT_TOLERANCE,
    };
    if !is_faithful_rep(&rep) {
        return Err(Error::InvalidInput("pu3 model is not faithful".into()));
    }
    Ok(rep)
}

/// Abelian groups of rank at most 2 as `Z_a ⊕ Z_b`, a | b, order at most `bound`.
pub fn abelian_rank2_catalog(bound: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for a in 1..=bound {
        for b in a..=bound / a {
            if b % a == 0 && a * b <= bound {
                out.push((a, b));
            }
        }
    }
    out
}
