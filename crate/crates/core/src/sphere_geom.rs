//! Round S³, its free cyclic quotients L(n; k, l), and q-extent estimates.
//!
//! Points of S³ are stored as four reals `(x₀, x₁, x₂, x₃)` read as the two
//! complex coordinates `z₁ = x₀ + i x₁`, `z₂ = x₂ + i x₃`. The generator of the
//! deck group Z_n rotates `z₁` by `2πk/n` and `z₂` by `2πl/n`.

use std::f64::consts::PI;

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// Norm tolerance for points of S³.
pub const UNIT_TOL: f64 = 1e-12;

/// Largest deck group handled by the exhaustive quotient distance.
pub const MAX_DECK_ORDER: u64 = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpherePoint {
    pub coords: [f64; 4],
}

impl SpherePoint {
    pub fn new(coords: [f64; 4]) -> Result<Self> {
        let norm = coords.iter().map(|c| c * c).sum::<f64>().sqrt();
        if !norm.is_finite() || (norm - 1.0).abs() > UNIT_TOL {
            return invalid(format!("point {coords:?} has norm {norm}, expected 1"));
        }
        Ok(Self { coords })
    }

    /// Projects a nonzero vector radially onto S³.
    pub fn normalized(v: [f64; 4]) -> Result<Self> {
        let norm = v.iter().map(|c| c * c).sum::<f64>().sqrt();
        if !(norm > 0.0 && norm.is_finite()) {
            return invalid("cannot normalize a zero or non-finite vector");
        }
        Ok(Self {
            coords: v.map(|c| c / norm),
        })
    }

    pub fn dot(&self, other: &SpherePoint) -> f64 {
        self.coords
            .iter()
            .zip(other.coords.iter())
            .map(|(a, b)| a * b)
            .sum()
    }

    fn is_unit(&self) -> bool {
        let norm = self.coords.iter().map(|c| c * c).sum::<f64>().sqrt();
        (norm - 1.0).abs() <= UNIT_TOL
    }
}

/// The triple (n; k, l) of a lens space. `n = 1` is S³ itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LensParams {
    pub n: u64,
    pub k: u64,
    pub l: u64,
}

impl LensParams {
    /// Checks coprimality only; use [`canonicalize_lens`] for the normal form.
    pub fn new(n: u64, k: u64, l: u64) -> Result<Self> {
        if n == 0 || k == 0 || l == 0 {
            return invalid(format!("lens parameters must be positive, got ({n}; {k}, {l})"));
        }
        if k.gcd(&n) != 1 || l.gcd(&n) != 1 {
            return invalid(format!("({n}; {k}, {l}): k and l must be coprime to n"));
        }
        Ok(Self { n, k, l })
    }

    pub fn sphere() -> Self {
        Self { n: 1, k: 1, l: 1 }
    }

    /// `0 < k ≤ l < n/2` for n ≥ 3; `k = l = 1` for n ≤ 2.
    pub fn is_canonical(&self) -> bool {
        if self.n <= 2 {
            return self.k == 1 && self.l == 1;
        }
        0 < self.k && self.k <= self.l && 2 * self.l < self.n
    }
}

/// Coordinate map carrying L(n; k, l) onto its canonical form: optional complex
/// conjugation of either factor, then an optional swap of the two factors.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SphereIsometry {
    pub conj_first: bool,
    pub conj_second: bool,
    pub swap: bool,
}

impl SphereIsometry {
    pub fn apply(&self, p: &SpherePoint) -> SpherePoint {
        let [mut a, mut b, mut c, mut d] = p.coords;
        if self.conj_first {
            b = -b;
        }
        if self.conj_second {
            d = -d;
        }
        if self.swap {
            std::mem::swap(&mut a, &mut c);
            std::mem::swap(&mut b, &mut d);
        }
        SpherePoint {
            coords: [a, b, c, d],
        }
    }
}

pub fn s3_distance(p: &SpherePoint, q: &SpherePoint) -> Result<f64> {
    if !p.is_unit() || !q.is_unit() {
        return invalid("s3_distance expects unit vectors");
    }
    Ok(p.dot(q).clamp(-1.0, 1.0).acos())
}

/// Angle `2π·t/n` with `t` reduced mod n first.
fn turn(t: u64, n: u64) -> f64 {
    2.0 * PI * ((t % n) as f64) / (n as f64)
}

pub fn deck_transform(lens: &LensParams, j: u64, p: &SpherePoint) -> Result<SpherePoint> {
    if j >= lens.n {
        return invalid(format!("deck index {j} out of range for n = {}", lens.n));
    }
    let a = turn(j * (lens.k % lens.n), lens.n);
    let b = turn(j * (lens.l % lens.n), lens.n);
    Ok(rotate_planes(p, a, b))
}

fn rotate_planes(p: &SpherePoint, a: f64, b: f64) -> SpherePoint {
    let [x0, x1, x2, x3] = p.coords;
    let (sa, ca) = a.sin_cos();
    let (sb, cb) = b.sin_cos();
    SpherePoint {
        coords: [
            ca * x0 - sa * x1,
            sa * x0 + ca * x1,
            cb * x2 - sb * x3,
            sb * x2 + cb * x3,
        ],
    }
}

/// Precomputed deck rotations for repeated quotient-distance evaluation.
#[derive(Debug, Clone)]
pub struct LensMetric {
    params: LensParams,
    first: Vec<(f64, f64)>,
    second: Vec<(f64, f64)>,
}

impl LensMetric {
    pub fn new(params: LensParams) -> Result<Self> {
        if params.n > MAX_DECK_ORDER {
            return Err(Error::Budget(format!(
                "deck group order {} exceeds cap {MAX_DECK_ORDER}",
                params.n
            )));
        }
        let n = params.n;
        let table = |e: u64| -> Vec<(f64, f64)> {
            (0..n)
                .map(|j| {
                    let (s, c) = turn(j * (e % n), n).sin_cos();
                    (c, s)
                })
                .collect()
        };
        Ok(Self {
            first: table(params.k),
            second: table(params.l),
            params,
        })
    }

    pub fn params(&self) -> &LensParams {
        &self.params
    }

    /// Largest inner product `⟨p, g^j q⟩` over the orbit.
    fn best_dot(&self, p: &SpherePoint, q: &SpherePoint) -> f64 {
        let [p0, p1, p2, p3] = p.coords;
        let [q0, q1, q2, q3] = q.coords;
        // ⟨p, R(θ)q⟩ in one plane is (p·q) cos θ + (p × q) sin θ
        let a_re = p0 * q0 + p1 * q1;
        let a_im = p1 * q0 - p0 * q1;
        let b_re = p2 * q2 + p3 * q3;
        let b_im = p3 * q2 - p2 * q3;
        self.first
            .iter()
            .zip(self.second.iter())
            .map(|(&(c1, s1), &(c2, s2))| a_re * c1 + a_im * s1 + b_re * c2 + b_im * s2)
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn distance(&self, p: &SpherePoint, q: &SpherePoint) -> f64 {
        self.best_dot(p, q).clamp(-1.0, 1.0).acos()
    }
}

pub fn lens_distance(lens: &LensParams, p: &SpherePoint, q: &SpherePoint) -> Result<f64> {
    if !p.is_unit() || !q.is_unit() {
        return invalid("lens_distance expects unit vectors");
    }
    Ok(LensMetric::new(*lens)?.distance(p, q))
}

/// `π / (2(2 − 1/⌊(q+1)/2⌋))`.
pub fn alpha_q(q: u32) -> Result<f64> {
    if q < 2 {
        return invalid(format!("tuple size q must be at least 2, got {q}"));
    }
    let bracket = f64::from((q + 1) / 2);
    Ok(PI / (2.0 * (2.0 - 1.0 / bracket)))
}

/// Closed-form upper bound for xt_q(L(n; k, l)), canonical parameters with n ≥ 3.
///
/// The value depends on n and q only.
pub fn extent_upper_bound(lens: &LensParams, q: u32) -> Result<f64> {
    if lens.n < 3 {
        return Err(Error::Unsupported(format!(
            "upper-bound formula needs n >= 3, got n = {}",
            lens.n
        )));
    }
    if !lens.is_canonical() {
        return invalid(format!(
            "({}; {}, {}) is not canonical; canonicalize first",
            lens.n, lens.k, lens.l
        ));
    }
    upper_bound_formula(lens.n, q)
}

pub(crate) fn upper_bound_formula(n: u64, q: u32) -> Result<f64> {
    let alpha = alpha_q(q)?;
    let nf = n as f64;
    let root = nf.sqrt();
    let c_root = (PI / root).cos();
    let c_n = (PI / nf).cos();
    let s_a = alpha.sin();
    let spread = root * (PI / nf).sin() - (PI / root).sin();
    let inner = (c_root - c_n).powi(2) + s_a * s_a * spread * spread;
    Ok((alpha.cos() * c_root - 0.5 * inner.sqrt()).clamp(-1.0, 1.0).acos())
}

/// Reduces (n; k, l) to `0 < k ≤ l < n/2` by negating k, negating l and swapping.
pub fn canonicalize_lens(n: u64, k: u64, l: u64) -> Result<LensParams> {
    canonical_form_with_map(n, k, l).map(|(p, _)| p)
}

/// Canonical form together with the sphere map that intertwines the two actions.
pub fn canonical_form_with_map(n: u64, k: u64, l: u64) -> Result<(LensParams, SphereIsometry)> {
    LensParams::new(n, k, l)?;
    if n <= 2 {
        return Ok((LensParams { n, k: 1, l: 1 }, SphereIsometry::default()));
    }
    let mut map = SphereIsometry::default();
    let mut k = k % n;
    let mut l = l % n;
    if 2 * k > n {
        k = n - k;
        map.conj_first = true;
    }
    if 2 * l > n {
        l = n - l;
        map.conj_second = true;
    }
    if k > l {
        std::mem::swap(&mut k, &mut l);
        map.swap = true;
    }
    Ok((LensParams { n, k, l }, map))
}

/// Canonical coprime pairs `(k, l)` with `0 < k ≤ l < n/2`.
pub fn canonical_pairs(n: u64) -> Vec<(u64, u64)> {
    let coprime: Vec<u64> = (1..n).take_while(|&k| 2 * k < n).filter(|k| k.gcd(&n) == 1).collect();
    let mut out = Vec::new();
    for (i, &k) in coprime.iter().enumerate() {
        for &l in &coprime[i..] {
            out.push((k, l));
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanRow {
    pub n: u64,
    pub k: u64,
    pub l: u64,
    pub q: u32,
    pub upper_bound: f64,
    pub threshold: f64,
    pub pass: bool,
}

pub const SCAN_CSV_HEADER: &str = "n,k,l,q,upper_bound,threshold,pass";

impl ScanRow {
    pub fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{:.15},{:.15},{}",
            self.n, self.k, self.l, self.q, self.upper_bound, self.threshold, self.pass
        )
    }
}

/// Every canonical lens space in `n_min..=n_max` with its bound; `pass` means
/// the bound is strictly below `threshold`.
pub fn scan_extent(n_min: u64, n_max: u64, q: u32, threshold: f64) -> Result<Vec<ScanRow>> {
    if n_min < 3 {
        return invalid(format!("scan range must start at n >= 3, got {n_min}"));
    }
    alpha_q(q)?;
    let rows: Vec<Vec<ScanRow>> = (n_min..=n_max)
        .into_par_iter()
        .map(|n| {
            let pairs = canonical_pairs(n);
            let bound = upper_bound_formula(n, q).expect("q validated above");
            pairs
                .into_iter()
                .map(|(k, l)| {
                    let upper_bound = extent_upper_bound(&LensParams { n, k, l }, q)
                        .expect("canonical by construction");
                    debug_assert_eq!(upper_bound, bound);
                    ScanRow {
                        n,
                        k,
                        l,
                        q,
                        upper_bound,
                        threshold,
                        pass: upper_bound < threshold,
                    }
                })
                .collect()
        })
        .collect();
    Ok(rows.into_iter().flatten().collect())
}

/// The entries of [`scan_extent`] whose bound reaches the threshold. An empty
/// list certifies `xt_q < threshold` on the whole range.
pub fn scan_extent_threshold(n_min: u64, n_max: u64, q: u32, threshold: f64) -> Result<Vec<ScanRow>> {
    Ok(scan_extent(n_min, n_max, q, threshold)?
        .into_iter()
        .filter(|r| !r.pass)
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AngleBudget {
    pub six_point_budget: f64,
    pub contradiction: bool,
}

/// Angle budget for six isolated fixed points: each point contributes at most
/// ten angles bounded by the 5-extent of its link, against the `> 20π` angle
/// sum of the twenty comparison triangles.
pub fn isolated_fixed_point_budget(extent_bound: f64) -> AngleBudget {
    AngleBudget {
        six_point_budget: 6.0 * 10.0 * extent_bound,
        contradiction: extent_bound <= PI / 3.0,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExtentConfig {
    pub q: u32,
    pub restarts: u32,
    pub max_iters: u32,
    pub seed: u64,
    pub step_tolerance: f64,
}

impl Default for ExtentConfig {
    fn default() -> Self {
        Self {
            q: 5,
            restarts: 32,
            max_iters: 400,
            seed: 0,
            step_tolerance: 1e-5,
        }
    }
}

impl ExtentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.q < 2 {
            return invalid("q must be at least 2");
        }
        if self.restarts == 0 || self.max_iters == 0 {
            return invalid("restarts and max_iters must be positive");
        }
        if !(self.step_tolerance > 0.0 && self.step_tolerance < 1e-2) {
            return invalid("step_tolerance must lie in (0, 1e-2)");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtentReport {
    pub params: LensParams,
    pub q: u32,
    pub upper_bound: f64,
    pub lower_bound: f64,
    pub best_config: Vec<SpherePoint>,
    pub iterations_used: u64,
}

/// Random tangent directions tried per point per sweep.
const DIRECTIONS_PER_STEP: usize = 8;
const INITIAL_STEP: f64 = 0.5;

fn random_point(rng: &mut ChaCha8Rng) -> SpherePoint {
    loop {
        let v: [f64; 4] = std::array::from_fn(|_| rng.sample(StandardNormal));
        if let Ok(p) = SpherePoint::normalized(v) {
            return p;
        }
    }
}

/// Geodesic step from `p` of length `t` along a random tangent direction.
fn perturb(p: &SpherePoint, t: f64, rng: &mut ChaCha8Rng) -> SpherePoint {
    loop {
        let v: [f64; 4] = std::array::from_fn(|_| rng.sample(StandardNormal));
        let along = p.coords.iter().zip(v.iter()).map(|(a, b)| a * b).sum::<f64>();
        let tangent: [f64; 4] = std::array::from_fn(|i| v[i] - along * p.coords[i]);
        let norm = tangent.iter().map(|c| c * c).sum::<f64>().sqrt();
        if norm < 1e-12 {
            continue;
        }
        let (s, c) = t.sin_cos();
        let moved: [f64; 4] = std::array::from_fn(|i| c * p.coords[i] + s * tangent[i] / norm);
        // renormalize to stay on S³ despite rounding
        return SpherePoint::normalized(moved).expect("nonzero by construction");
    }
}

struct RestartOutcome {
    total: f64,
    points: Vec<SpherePoint>,
    sweeps: u64,
}

fn run_restart(metric: &LensMetric, cfg: &ExtentConfig, index: u32) -> RestartOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(u64::from(index));
    let q = cfg.q as usize;
    let mut points: Vec<SpherePoint> = (0..q).map(|_| random_point(&mut rng)).collect();
    let contribution = |pts: &[SpherePoint], i: usize, cand: &SpherePoint| -> f64 {
        pts.iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, other)| metric.distance(cand, other))
            .sum()
    };
    let mut total: f64 = (0..q)
        .flat_map(|i| (i + 1..q).map(move |j| (i, j)))
        .map(|(i, j)| metric.distance(&points[i], &points[j]))
        .sum();
    let mut step = INITIAL_STEP;
    let mut sweeps = 0u64;
    while sweeps < u64::from(cfg.max_iters) && step >= cfg.step_tolerance {
        sweeps += 1;
        let mut improved = false;
        for i in 0..q {
            let current = contribution(&points, i, &points[i]);
            let mut best: Option<(f64, SpherePoint)> = None;
            for _ in 0..DIRECTIONS_PER_STEP {
                let cand = perturb(&points[i], step, &mut rng);
                let value = contribution(&points, i, &cand);
                if value > current && best.as_ref().is_none_or(|(b, _)| value > *b) {
                    best = Some((value, cand));
                }
            }
            if let Some((value, cand)) = best {
                total += value - current;
                points[i] = cand;
                improved = true;
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    RestartOutcome {
        total,
        points,
        sweeps,
    }
}

/// Multi-start maximization of the mean pairwise quotient distance over
/// q-tuples. Restarts use independent streams of one seeded generator, so the
/// result does not depend on how they are scheduled.
pub fn extent_lower_bound(lens: &LensParams, cfg: &ExtentConfig) -> Result<ExtentReport> {
    cfg.validate()?;
    LensParams::new(lens.n, lens.k, lens.l)?;
    let metric = LensMetric::new(*lens)?;
    let outcomes: Vec<RestartOutcome> = (0..cfg.restarts)
        .into_par_iter()
        .map(|r| run_restart(&metric, cfg, r))
        .collect();
    let pairs = f64::from(cfg.q * (cfg.q - 1) / 2);
    let mut best_index = 0;
    for (i, o) in outcomes.iter().enumerate() {
        if o.total > outcomes[best_index].total {
            best_index = i;
        }
    }
    let best = &outcomes[best_index];
    // recompute from scratch so accumulated rounding in the running sum cannot leak out
    let q = best.points.len();
    let exact_total: f64 = (0..q)
        .flat_map(|i| (i + 1..q).map(move |j| (i, j)))
        .map(|(i, j)| metric.distance(&best.points[i], &best.points[j]))
        .sum();
    let upper_bound = if lens.n >= 3 && lens.is_canonical() {
        upper_bound_formula(lens.n, cfg.q)?
    } else {
        PI
    };
    Ok(ExtentReport {
        params: *lens,
        q: cfg.q,
        upper_bound,
        lower_bound: (exact_total / pairs).clamp(0.0, PI),
        best_config: best.points.clone(),
        iterations_used: outcomes.iter().map(|o| o.sweeps).sum(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(c: [f64; 4]) -> SpherePoint {
        SpherePoint::new(c).unwrap()
    }

    #[test]
    fn s3_distance_examples() {
        let e0 = pt([1.0, 0.0, 0.0, 0.0]);
        assert_eq!(s3_distance(&e0, &e0).unwrap(), 0.0);
        assert!((s3_distance(&e0, &pt([-1.0, 0.0, 0.0, 0.0])).unwrap() - PI).abs() < 1e-15);
        assert!((s3_distance(&e0, &pt([0.0, 1.0, 0.0, 0.0])).unwrap() - PI / 2.0).abs() < 1e-15);
    }

    #[test]
    fn non_unit_points_rejected() {
        assert!(SpherePoint::new([1.0, 1.0, 0.0, 0.0]).is_err());
        let bad = SpherePoint {
            coords: [2.0, 0.0, 0.0, 0.0],
        };
        let e0 = pt([1.0, 0.0, 0.0, 0.0]);
        assert!(matches!(s3_distance(&bad, &e0), Err(Error::InvalidInput(_))));
        assert!(lens_distance(&LensParams::sphere(), &e0, &bad).is_err());
    }

    #[test]
    fn deck_examples() {
        let l4 = LensParams::new(4, 1, 1).unwrap();
        let e0 = pt([1.0, 0.0, 0.0, 0.0]);
        let img = deck_transform(&l4, 2, &e0).unwrap();
        assert!((img.coords[0] + 1.0).abs() < 1e-15 && img.coords[1].abs() < 1e-15);
        assert_eq!(deck_transform(&l4, 0, &e0).unwrap(), e0);

        let l3 = LensParams::new(3, 1, 2).unwrap();
        let img = deck_transform(&l3, 1, &pt([0.0, 0.0, 1.0, 0.0])).unwrap();
        let a = 4.0 * PI / 3.0;
        assert!((img.coords[2] - a.cos()).abs() < 1e-15);
        assert!((img.coords[3] - a.sin()).abs() < 1e-15);
        assert!(img.coords[0].abs() < 1e-15 && img.coords[1].abs() < 1e-15);

        assert!(deck_transform(&l3, 3, &e0).is_err());
    }

    #[test]
    fn deck_composition_law() {
        let lens = LensParams::new(7, 2, 3).unwrap();
        let p = SpherePoint::normalized([0.3, -0.2, 0.5, 0.7]).unwrap();
        for a in 0..7 {
            for b in 0..7 {
                let two = deck_transform(&lens, a, &deck_transform(&lens, b, &p).unwrap()).unwrap();
                let one = deck_transform(&lens, (a + b) % 7, &p).unwrap();
                for i in 0..4 {
                    assert!((two.coords[i] - one.coords[i]).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn lens_distance_examples() {
        let e0 = pt([1.0, 0.0, 0.0, 0.0]);
        let anti = pt([-1.0, 0.0, 0.0, 0.0]);
        let other = SpherePoint::normalized([0.1, 0.4, -0.3, 0.2]).unwrap();
        let l2 = LensParams::new(2, 1, 1).unwrap();
        assert_eq!(lens_distance(&l2, &e0, &e0).unwrap(), 0.0);
        assert!(lens_distance(&l2, &e0, &anti).unwrap() < 1e-7);
        let s3 = LensParams::sphere();
        assert_eq!(
            lens_distance(&s3, &e0, &other).unwrap(),
            s3_distance(&e0, &other).unwrap()
        );
    }

    #[test]
    fn deck_cap_is_a_budget_error() {
        let lens = LensParams::new(MAX_DECK_ORDER + 1, 1, 1).unwrap();
        assert!(matches!(LensMetric::new(lens), Err(Error::Budget(_))));
    }

    #[test]
    fn alpha_values() {
        assert!((alpha_q(2).unwrap() - PI / 2.0).abs() < 1e-15);
        assert!((alpha_q(4).unwrap() - PI / 3.0).abs() < 1e-15);
        assert!((alpha_q(5).unwrap() - 3.0 * PI / 10.0).abs() < 1e-15);
        assert!(alpha_q(1).is_err());
    }

    #[test]
    fn upper_bound_threshold_values() {
        // reference values from a 40-digit evaluation of the same expression
        let b61 = extent_upper_bound(&LensParams::new(61, 1, 1).unwrap(), 5).unwrap();
        let b60 = extent_upper_bound(&LensParams::new(60, 1, 1).unwrap(), 5).unwrap();
        assert!((b61 - 1.045_585_400_858_693_9).abs() < 1e-12);
        assert!((b60 - 1.047_217_244_169_482_6).abs() < 1e-12);
        assert!(b61 < PI / 3.0 && b60 > PI / 3.0);
        let b1000 = extent_upper_bound(&LensParams::new(1000, 1, 1).unwrap(), 5).unwrap();
        assert!((b1000 - 0.949_089_769_626_658_8).abs() < 1e-12);
        assert!(b1000 < b61);
    }

    #[test]
    fn upper_bound_rejects_small_and_noncanonical() {
        assert!(matches!(
            extent_upper_bound(&LensParams::new(2, 1, 1).unwrap(), 5),
            Err(Error::Unsupported(_))
        ));
        assert!(matches!(
            extent_upper_bound(&LensParams::new(7, 6, 2).unwrap(), 5),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(canonicalize_lens(7, 6, 2).unwrap(), LensParams { n: 7, k: 1, l: 2 });
        assert_eq!(canonicalize_lens(5, 3, 4).unwrap(), LensParams { n: 5, k: 1, l: 2 });
        assert_eq!(canonicalize_lens(4, 1, 1).unwrap(), LensParams { n: 4, k: 1, l: 1 });
        assert!(canonicalize_lens(6, 2, 1).is_err());
        assert!(canonicalize_lens(9, 3, 1).is_err());
    }

    #[test]
    fn canonical_pairs_count() {
        // φ(61)/2 = 30 residues in (0, n/2), so 30·31/2 pairs
        assert_eq!(canonical_pairs(61).len(), 465);
        assert_eq!(canonical_pairs(4), vec![(1, 1)]);
        assert!(canonical_pairs(60).iter().all(|&(k, l)| k <= l && 2 * l < 60));
    }

    #[test]
    fn scan_examples() {
        assert!(scan_extent_threshold(61, 300, 5, PI / 3.0).unwrap().is_empty());
        let at60 = scan_extent_threshold(60, 60, 5, PI / 3.0).unwrap();
        assert_eq!(at60.len(), canonical_pairs(60).len());
        assert!(scan_extent_threshold(61, 61, 5, PI).unwrap().is_empty());
        assert!(scan_extent(2, 10, 5, PI).is_err());
    }

    #[test]
    fn scan_csv_line_format() {
        let row = &scan_extent(61, 61, 5, PI / 3.0).unwrap()[0];
        let line = row.csv_line();
        assert!(line.starts_with("61,1,1,5,1.04558540085869"));
        assert!(line.ends_with(",true"));
        assert_eq!(line.split(',').count(), SCAN_CSV_HEADER.split(',').count());
    }

    #[test]
    fn budget_examples() {
        let b = isolated_fixed_point_budget(PI / 3.0);
        assert!((b.six_point_budget - 20.0 * PI).abs() < 1e-12);
        assert!(b.contradiction);
        let b = isolated_fixed_point_budget(1.0456);
        assert!((b.six_point_budget - 62.736).abs() < 1e-9);
        assert!(b.contradiction);
        assert!(!isolated_fixed_point_budget(1.2).contradiction);
    }

    #[test]
    fn config_validation() {
        assert!(ExtentConfig::default().validate().is_ok());
        let bad = ExtentConfig {
            step_tolerance: 0.1,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
        let bad = ExtentConfig {
            restarts: 0,
            ..Default::default()
        };
        assert!(extent_lower_bound(&LensParams::sphere(), &bad).is_err());
    }

    #[test]
    fn sphere_antipodal_pair() {
        let cfg = ExtentConfig {
            q: 2,
            restarts: 8,
            max_iters: 400,
            seed: 7,
            step_tolerance: 1e-6,
        };
        let rep = extent_lower_bound(&LensParams::sphere(), &cfg).unwrap();
        assert!(rep.lower_bound >= PI - 1e-3, "{}", rep.lower_bound);
        assert_eq!(rep.best_config.len(), 2);
    }

    #[test]
    fn optimizer_is_deterministic() {
        let lens = LensParams::new(11, 1, 3).unwrap();
        let cfg = ExtentConfig {
            restarts: 4,
            max_iters: 60,
            seed: 99,
            ..Default::default()
        };
        let a = extent_lower_bound(&lens, &cfg).unwrap();
        let b = extent_lower_bound(&lens, &cfg).unwrap();
        assert_eq!(a, b);
        assert!(a.lower_bound <= a.upper_bound + 1e-9);
    }

    #[test]
    fn report_json_field_names() {
        let cfg = ExtentConfig {
            q: 3,
            restarts: 1,
            max_iters: 5,
            ..Default::default()
        };
        let rep = extent_lower_bound(&LensParams::new(5, 1, 2).unwrap(), &cfg).unwrap();
        let v = serde_json::to_value(&rep).unwrap();
        for key in ["params", "q", "upper_bound", "lower_bound", "best_config", "iterations_used"] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
        let back: ExtentReport = serde_json::from_value(v).unwrap();
        assert_eq!(back, rep);
    }
}
