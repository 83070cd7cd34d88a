//! Fixed sets of linear actions on S⁴ and CP², and the trace identities they satisfy.

use nalgebra::{Complex, DMatrix};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

pub type C64 = Complex<f64>;

/// Eigenvalues closer than this are treated as equal.
pub const CLUSTER_TOLERANCE: f64 = 1e-9;
pub const ORTHOGONALITY_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedComponent {
    pub dimension: u32,
    pub euler_char: i64,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedSetDescriptor {
    pub components: Vec<FixedComponent>,
}

impl FixedSetDescriptor {
    pub fn euler_char(&self) -> i64 {
        self.components.iter().map(|c| c.euler_char).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LefschetzRecord {
    pub lefschetz: i64,
    pub fix_euler: i64,
    pub pass: bool,
}

fn sphere(d: u32) -> FixedComponent {
    FixedComponent {
        dimension: d,
        euler_char: if d % 2 == 0 { 2 } else { 0 },
        label: if d == 0 { "S0 (two points)".into() } else { format!("S{d}") },
    }
}

fn check_orthogonal(g: &DMatrix<f64>, n: usize) -> Result<()> {
    if g.nrows() != n || g.ncols() != n {
        return invalid(format!("expected a {n}x{n} matrix, got {}x{}", g.nrows(), g.ncols()));
    }
    let r = (g.transpose() * g - DMatrix::<f64>::identity(n, n)).norm();
    if r > ORTHOGONALITY_TOLERANCE {
        return invalid(format!("matrix is not orthogonal (residual {r:.3e})"));
    }
    Ok(())
}

/// Fixed set of `g ∈ SO(5)` on the unit sphere S⁴: the sphere of the 1-eigenspace.
pub fn fixed_set_s4(g: &DMatrix<f64>) -> Result<FixedSetDescriptor> {
    check_orthogonal(g, 5)?;
    if (g.determinant() - 1.0).abs() > ORTHOGONALITY_TOLERANCE {
        return invalid("matrix is orientation reversing");
    }
    // g is normal, so the singular values of g − I are |λ − 1|
    let sv = (g - DMatrix::<f64>::identity(5, 5)).singular_values();
    let d = sv.iter().filter(|&&s| s < CLUSTER_TOLERANCE).count() as u32;
    let components = if d == 0 { Vec::new() } else { vec![sphere(d - 1)] };
    Ok(FixedSetDescriptor { components })
}

/// Traces on H⁰ and H⁴ against χ(Fix g).
pub fn lefschetz_check_s4(g: &DMatrix<f64>) -> Result<LefschetzRecord> {
    let fix = fixed_set_s4(g)?;
    // H⁰ is fixed; H⁴ picks up the degree, det g
    let lefschetz = 1 + g.determinant().round() as i64;
    let fix_euler = fix.euler_char();
    Ok(LefschetzRecord {
        lefschetz,
        fix_euler,
        pass: lefschetz == fix_euler,
    })
}

fn check_unitary(u: &DMatrix<C64>) -> Result<()> {
    if u.nrows() != 3 || u.ncols() != 3 {
        return invalid(format!("expected a 3x3 matrix, got {}x{}", u.nrows(), u.ncols()));
    }
    let r = (u.adjoint() * u - DMatrix::<C64>::identity(3, 3)).norm();
    if r > ORTHOGONALITY_TOLERANCE {
        return invalid(format!("matrix is not unitary (residual {r:.3e})"));
    }
    Ok(())
}

/// Multiplicities of the eigenvalues of u, clustered within [`CLUSTER_TOLERANCE`].
pub fn eigenvalue_pattern(u: &DMatrix<C64>) -> Result<Vec<usize>> {
    check_unitary(u)?;
    let eig = u
        .clone()
        .schur()
        .eigenvalues()
        .ok_or_else(|| crate::Error::InvalidInput("Schur form did not converge".into()))?;
    let mut clusters: Vec<(C64, usize)> = Vec::new();
    for z in eig.iter() {
        match clusters.iter_mut().find(|(c, _)| (c - z).norm() < CLUSTER_TOLERANCE) {
            Some(entry) => entry.1 += 1,
            None => clusters.push((*z, 1)),
        }
    }
    let mut pattern: Vec<usize> = clusters.into_iter().map(|(_, k)| k).collect();
    pattern.sort_unstable_by(|a, b| b.cmp(a));
    Ok(pattern)
}

/// Fixed set of the projective action of u on CP²: one CP^{k−1} per eigenspace of dimension k.
pub fn fixed_set_cp2(u: &DMatrix<C64>) -> Result<FixedSetDescriptor> {
    let components = eigenvalue_pattern(u)?
        .into_iter()
        .map(|k| match k {
            1 => FixedComponent {
                dimension: 0,
                euler_char: 1,
                label: "point".into(),
            },
            2 => FixedComponent {
                dimension: 2,
                euler_char: 2,
                label: "CP1".into(),
            },
            _ => FixedComponent {
                dimension: 4,
                euler_char: 3,
                label: "CP2".into(),
            },
        })
        .collect();
    Ok(FixedSetDescriptor { components })
}

/// A projective unitary map is isotopic to the identity, so it acts trivially
/// on H⁰, H², H⁴ and the Lefschetz number is 3.
pub fn lefschetz_check_cp2(u: &DMatrix<C64>) -> Result<LefschetzRecord> {
    let fix = fixed_set_cp2(u)?;
    let traces = [1i64, 1, 1];
    let lefschetz = traces.iter().sum();
    let fix_euler = fix.euler_char();
    Ok(LefschetzRecord {
        lefschetz,
        fix_euler,
        pass: lefschetz == fix_euler,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvolutionTraceData {
    pub trace_h2: i64,
    pub signature_g: i64,
    pub fix_euler: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvolutionRecord {
    pub eq62_pass: bool,
    /// Read off from the signature, not computed from the fixed surface.
    pub derived_self_intersection: i64,
}

pub fn involution_identity_check(data: InvolutionTraceData) -> InvolutionRecord {
    InvolutionRecord {
        eq62_pass: data.fix_euler == 2 + data.signature_g,
        derived_self_intersection: data.signature_g,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvolutionEntry {
    pub name: String,
    pub description: String,
    pub data: InvolutionTraceData,
}

/// The involutions on CP² (definite form, so signature = trace) and the
/// free involution that cannot exist.
pub fn involution_catalog() -> Result<Vec<InvolutionEntry>> {
    // conjugation reverses the orientation of each complex line: −1 on H²;
    // its fixed set is the real points RP², χ(RP²) = 1
    let conjugation = InvolutionTraceData {
        trace_h2: -1,
        signature_g: -1,
        fix_euler: 1,
    };
    let holo = diag_unitary(&[C64::new(1.0, 0.0), C64::new(1.0, 0.0), C64::new(-1.0, 0.0)]);
    let holo_fix = fixed_set_cp2(&holo)?.euler_char();
    let holomorphic = InvolutionTraceData {
        trace_h2: 1,
        signature_g: 1,
        fix_euler: holo_fix,
    };
    let free = InvolutionTraceData {
        trace_h2: 0,
        signature_g: 0,
        fix_euler: 0,
    };
    Ok(vec![
        InvolutionEntry {
            name: "cp2-conjugation".into(),
            description: "complex conjugation on CP2, fixed set RP2".into(),
            data: conjugation,
        },
        InvolutionEntry {
            name: "cp2-diag-1-1-minus1".into(),
            description: "holomorphic involution diag(1,1,-1), fixed set CP1 + point".into(),
            data: holomorphic,
        },
        InvolutionEntry {
            name: "hypothetical-free".into(),
            description: "free involution on a definite manifold with trivial trace".into(),
            data: free,
        },
    ])
}

pub fn diag_unitary(entries: &[C64]) -> DMatrix<C64> {
    DMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(entries))
}

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Haar-distributed element of SO(5): QR of a Gaussian matrix with the sign fix.
pub fn random_so5(rng: &mut impl RngCore) -> DMatrix<f64> {
    let a = DMatrix::<f64>::from_fn(5, 5, |_, _| StandardNormal.sample(rng));
    let qr = a.qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..5 {
        if r[(j, j)] < 0.0 {
            q.column_mut(j).neg_mut();
        }
    }
    if q.determinant() < 0.0 {
        q.column_mut(0).neg_mut();
    }
    q
}

/// Haar-distributed element of U(3), with the phase fix on R's diagonal.
pub fn random_u3(rng: &mut impl RngCore) -> DMatrix<C64> {
    let a = DMatrix::<C64>::from_fn(3, 3, |_, _| C64::new(StandardNormal.sample(rng), StandardNormal.sample(rng)));
    let qr = a.qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..3 {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { C64::new(1.0, 0.0) };
        for i in 0..3 {
            q[(i, j)] *= phase;
        }
    }
    q
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BatchSummary {
    pub count: usize,
    pub passed: usize,
}

impl BatchSummary {
    pub fn all_pass(&self) -> bool {
        self.count == self.passed
    }
}

/// Lefschetz check on `count` seeded random elements of SO(5).
pub fn batch_lefschetz_s4(count: usize, seed: u64) -> BatchSummary {
    let passed = (0..count)
        .into_par_iter()
        .filter(|&i| {
            let g = random_so5(&mut rng_for(seed, i as u64));
            lefschetz_check_s4(&g).is_ok_and(|r| r.pass && r.fix_euler == 2)
        })
        .count();
    BatchSummary { count, passed }
}

/// Lefschetz check on `count` seeded random elements of U(3).
pub fn batch_lefschetz_cp2(count: usize, seed: u64) -> BatchSummary {
    let passed = (0..count)
        .into_par_iter()
        .filter(|&i| {
            let u = random_u3(&mut rng_for(seed, i as u64));
            lefschetz_check_cp2(&u).is_ok_and(|r| r.pass && r.fix_euler == 3)
        })
        .count();
    BatchSummary { count, passed }
}
