//! One test per acceptance criterion. Each prints a `criterion N: PASS|FAIL`
//! line straight to stdout so it shows up without `--nocapture`.

use std::f64::consts::PI;
use std::io::Write;
use std::time::Instant;

use num_bigint::BigUint;
use rand::seq::IndexedRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use curvsym::cohomology::{build_central_extension, classify_central_extensions, SecondCohomology};
use curvsym::fixed_point::{
    batch_lefschetz_cp2, batch_lefschetz_s4, involution_catalog, involution_identity_check, lefschetz_check_cp2,
};
use curvsym::group::{
    abelian2, build_standard, central_product, cyclic, cyclic_central_product, dihedral, direct_product, is_isomorphic,
    max_cyclic_normal_index, order_gl, pow_mod, validate_thm11_params, FiniteGroup, GroupKind, MetacyclicParams,
};
use curvsym::matrix_embed::{
    abelian_rank2_catalog, embed_into_so5, pu3_metacyclic, pu3_relation_residuals, u2_rep, MatrixRep, StructureHint,
};
use curvsym::report::{acceptance_catalog, random_lenses};
use curvsym::sphere_geom::{
    canonical_pairs, extent_lower_bound, extent_upper_bound, isolated_fixed_point_budget, scan_extent_threshold,
    ExtentConfig, LensParams,
};
use curvsym::Error;

fn report(n: u32, ok: bool, detail: &str) {
    let line = format!("criterion {n}: {} {detail}\n", if ok { "PASS" } else { "FAIL" });
    let mut out = std::io::stdout().lock();
    out.write_all(line.as_bytes()).unwrap();
    out.flush().unwrap();
}

fn nontrivial_extensions(q: &FiniteGroup, m: u64) -> Vec<FiniteGroup> {
    let h2 = SecondCohomology::compute(q, m).unwrap();
    h2.representatives()
        .unwrap()
        .into_iter()
        .filter(|r| r.order > 1)
        .map(|r| build_central_extension(q, m, &r.cocycle).unwrap())
        .collect()
}

fn so5_ok(rep: &MatrixRep) -> bool {
    let c = rep.check();
    rep.is_special_orthogonal()
        && c.faithful
        && c.homomorphism_residual < 1e-9
        && c.unitarity_residual < 1e-9
        && c.determinant_residual < 1e-9
}

#[test]
fn criterion_01_threshold_scan() {
    let start = Instant::now();
    let third = PI / 3.0;
    let violations = scan_extent_threshold(61, 300, 5, third).unwrap();
    let pairs: usize = (61..=300).map(|n| canonical_pairs(n).len()).sum();
    let at60 = extent_upper_bound(&LensParams::new(60, 1, 1).unwrap(), 5).unwrap();
    let secs = start.elapsed().as_secs_f64();
    let ok = violations.is_empty() && at60 > third && secs < 60.0;
    report(
        1,
        ok,
        &format!("{pairs} lens spaces, {} violations, bound(60) = {at60:.6} > pi/3, {secs:.2}s", violations.len()),
    );
    assert!(ok);
}

#[test]
fn criterion_02_angle_budget() {
    let bound = extent_upper_bound(&LensParams::new(61, 1, 1).unwrap(), 5).unwrap();
    let budget = isolated_fixed_point_budget(bound);
    let ok = budget.contradiction && (bound - 1.0456).abs() < 5e-4 && budget.six_point_budget <= 20.0 * PI;
    report(
        2,
        ok,
        &format!("bound {bound:.5}, 6*10*bound = {:.4} <= 20pi = {:.4}", budget.six_point_budget, 20.0 * PI),
    );
    assert!(ok);
}

#[test]
fn criterion_03_optimizer_soundness() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let lenses = random_lenses(&mut rng, 50, 200).unwrap();
    let mut worst = f64::NEG_INFINITY;
    for (i, lens) in lenses.iter().enumerate() {
        let cfg = ExtentConfig {
            q: 5,
            restarts: 3,
            max_iters: 60,
            seed: i as u64,
            ..ExtentConfig::default()
        };
        let r = extent_lower_bound(lens, &cfg).unwrap();
        worst = worst.max(r.lower_bound - r.upper_bound);
    }
    let s3 = extent_lower_bound(
        &LensParams::sphere(),
        &ExtentConfig {
            q: 2,
            restarts: 8,
            max_iters: 400,
            seed: 7,
            step_tolerance: 1e-6,
        },
    )
    .unwrap();
    let ok = worst <= 1e-9 && s3.lower_bound >= PI - 1e-3;
    report(
        3,
        ok,
        &format!("max(lower - upper) over 50 lens spaces = {worst:.4}, xt2(S3) >= {:.6}", s3.lower_bound),
    );
    assert!(ok);
}

#[test]
fn criterion_04_cohomology_table() {
    let factors = |kind: GroupKind, m: u64| -> Vec<u64> {
        SecondCohomology::compute(&build_standard(kind).unwrap(), m)
            .unwrap()
            .result()
            .invariant_factors
    };
    let cyc = |d: u64| if d > 1 { vec![d] } else { vec![] };
    let mut mismatches = Vec::new();
    let mut check = |name: String, got: Vec<u64>, want: Vec<u64>| {
        if got != want {
            mismatches.push(format!("{name}: {got:?} vs {want:?}"));
        }
    };
    for m in [2u64, 3, 4, 5, 6, 12] {
        check(format!("A4 m={m}"), factors(GroupKind::Tetra, m), cyc(num_integer::gcd(m, 6)));
    }
    for m in [2u64, 3, 4, 6] {
        check(format!("A5 m={m}"), factors(GroupKind::Icosa, m), cyc(num_integer::gcd(m, 2)));
    }
    for order in [6usize, 10] {
        for m in [3u64, 5, 7] {
            check(format!("D{order} m={m}"), factors(GroupKind::Dihedral(order), m), vec![]);
        }
        for m in [2u64, 4, 6] {
            check(format!("D{order} m={m}"), factors(GroupKind::Dihedral(order), m), vec![2]);
        }
    }
    for order in [8usize, 12] {
        for m in [2u64, 4, 6] {
            check(format!("D{order} m={m}"), factors(GroupKind::Dihedral(order), m), vec![2, 2, 2]);
        }
    }
    // reported, never failed: the tabulated Z_m (x) Z2 against the computed value
    let s4: Vec<String> = [2u64, 3, 4]
        .iter()
        .map(|&m| {
            let got = factors(GroupKind::Octa, m);
            let tag = if got == cyc(num_integer::gcd(m, 2)) { "agrees" } else { "DISCREPANCY" };
            format!("S4 m={m} {got:?} {tag}")
        })
        .collect();
    let ok = mismatches.is_empty();
    report(4, ok, &format!("{} mismatches; {}", mismatches.len(), s4.join(", ")));
    assert!(ok, "{mismatches:?}");
}

#[test]
fn criterion_05_polyhedral_extensions() {
    let a5 = build_standard(GroupKind::Icosa).unwrap();
    let types = classify_central_extensions(&a5, 2).unwrap();
    let z2a5 = direct_product(&cyclic(2).unwrap(), &a5).unwrap();
    let istar = build_standard(GroupKind::BinaryIcosa).unwrap();
    let a5_ok = types.len() == 2
        && types.iter().any(|t| t.includes_trivial && is_isomorphic(&t.group, &z2a5).unwrap())
        && types.iter().any(|t| !t.includes_trivial && is_isomorphic(&t.group, &istar).unwrap());

    let s4 = build_standard(GroupKind::Octa).unwrap();
    let h2_order = SecondCohomology::compute(&s4, 2).unwrap().result().order;
    let types = classify_central_extensions(&s4, 2).unwrap();
    let z2s4 = direct_product(&cyclic(2).unwrap(), &s4).unwrap();
    let ostar = build_standard(GroupKind::BinaryOcta).unwrap();
    let ostar_hits = types
        .iter()
        .filter(|t| !t.includes_trivial && is_isomorphic(&t.group, &ostar).unwrap())
        .count();
    let s4_ok = types.iter().any(|t| t.includes_trivial && is_isomorphic(&t.group, &z2s4).unwrap())
        && ostar_hits == 1
        && types.len() as u64 <= h2_order;
    let ok = a5_ok && s4_ok;
    report(
        5,
        ok,
        &format!(
            "A5: {{Z2 x A5, I*}} {a5_ok}; S4: |H2| = {h2_order}, {} types, O* among them {s4_ok}",
            types.len()
        ),
    );
    assert!(ok);
}

/// `Z_m ×_{Z₂} D_{4k}` with D_{4k} the binary dihedral group.
fn claimed_dihedral_extension(m: u64, k: u64) -> FiniteGroup {
    cyclic_central_product(m as usize, GroupKind::BinaryDihedral(4 * k as usize)).unwrap()
}

#[test]
fn criterion_06_dihedral_extensions() {
    let mut parts = Vec::new();
    let mut ok = true;
    for (m, k) in [(2u64, 3u64), (2, 5), (4, 3)] {
        let q = build_standard(GroupKind::Dihedral(2 * k as usize)).unwrap();
        let ext = nontrivial_extensions(&q, m);
        let binary = claimed_dihedral_extension(m, k);
        // the plain dihedral group of order 4k glued along its central rotation
        let plain = central_product(
            &cyclic(m as usize).unwrap(),
            &dihedral(2 * k as usize).unwrap(),
            m as usize / 2,
            k as usize,
        )
        .unwrap();
        let binary_hits = ext.iter().filter(|g| is_isomorphic(g, &binary).unwrap()).count();
        let plain_hits = ext.iter().filter(|g| is_isomorphic(g, &plain).unwrap()).count();
        let pass = !ext.is_empty() && binary_hits == ext.len();
        ok &= pass;
        parts.push(format!(
            "(m,k)=({m},{k}) {} nontrivial, binary reading {binary_hits}, dihedral reading {plain_hits}",
            ext.len()
        ));
    }
    report(6, ok, &parts.join("; "));
    assert!(ok, "{}", parts.join("; "));
}

#[test]
fn criterion_07_metacyclic_pu3() {
    let mut parts = Vec::new();
    let mut ok = true;
    for (m, n, r) in [(7u64, 3u64, 2u64), (13, 3, 3), (31, 3, 5)] {
        let p = MetacyclicParams::new(m, n, r).unwrap();
        // the presentation conditions, recomputed here
        let conditions = num_integer::gcd(n * (r - 1), m) == 1 && r % m != 1 && pow_mod(r, 3, m) == 1;
        let valid = validate_thm11_params(&p);
        let residual = pu3_relation_residuals(&p).into_iter().fold(0.0, f64::max);
        let rep = pu3_metacyclic(&p).unwrap();
        let faithful = rep.check().faithful;
        let lefschetz = rep
            .matrices
            .iter()
            .filter(|u| lefschetz_check_cp2(u).is_ok_and(|l| l.pass && l.fix_euler == 3))
            .count();
        let pass =
            conditions && valid && residual < 1e-12 && faithful && lefschetz == rep.order() && rep.order() == (m * n) as usize;
        ok &= pass;
        parts.push(format!("({m},{n},{r}) residual {residual:.1e}, faithful {faithful}, chi=3 {lefschetz}/{}", rep.order()));
    }
    report(7, ok, &parts.join("; "));
    assert!(ok);
}

#[test]
fn criterion_08_so5_catalog() {
    let mut failures = Vec::new();
    let mut embedded = 0;
    let mut run = |name: String, g: &FiniteGroup, hint: StructureHint| match embed_into_so5(g, hint) {
        Ok(rep) if so5_ok(&rep) => embedded += 1,
        Ok(_) => failures.push(format!("{name}: failed verification")),
        Err(e) => failures.push(format!("{name}: {e}")),
    };
    let catalog = abelian_rank2_catalog(100);
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for &(a, b) in catalog.choose_multiple(&mut rng, 10) {
        run(format!("Z{a}+Z{b}"), &abelian2(a, b).unwrap(), StructureHint::Abelian { a, b });
    }
    for kind in [GroupKind::BinaryOcta, GroupKind::BinaryIcosa] {
        for m in [2usize, 4] {
            let g = cyclic_central_product(m, kind).unwrap();
            run(format!("Z{m} x_Z2 {}", kind.name()), &g, StructureHint::PolyhedralCentralProduct { m, kind });
        }
    }
    let a4 = build_standard(GroupKind::Tetra).unwrap();
    for (r, m_plus) in [(1u32, 1u64), (2, 1), (1, 5), (1, 7)] {
        let m = 3u64.pow(r) * m_plus;
        for g in nontrivial_extensions(&a4, m) {
            run(format!("A4 by Z{m}"), &g, StructureHint::KleinTwist { r, m_plus });
        }
    }
    let d6 = build_standard(GroupKind::Dihedral(6)).unwrap();
    for g in nontrivial_extensions(&d6, 2) {
        run("Z2 x_Z2 D*12".into(), &g, StructureHint::OddDihedral { m: 2, k: 3 });
    }
    let u2 = u2_rep(1, 1).unwrap();
    let u2_check = u2.check();
    let u2_ok = u2.order() == 72 && u2_check.faithful && u2_check.homomorphism_residual < 1e-9;
    if !u2_ok {
        failures.push("Q8:Z9 in U(2)".into());
    }
    let d8 = build_standard(GroupKind::Dihedral(8)).unwrap();
    let unsupported = nontrivial_extensions(&d8, 2)
        .iter()
        .all(|g| matches!(embed_into_so5(g, StructureHint::DihedralTwoPower { m: 2, order: 8 }), Err(Error::Unsupported(_))));
    let ok = failures.is_empty() && unsupported;
    report(
        8,
        ok,
        &format!(
            "{embedded} SO(5) embeddings verified, Q8:Z9 in U(2) {u2_ok}, 2-group case UNSUPPORTED {unsupported}; failures {failures:?}"
        ),
    );
    assert!(ok);
}

#[test]
fn criterion_09_fixed_points() {
    let s4 = batch_lefschetz_s4(1000, 9);
    let cp2 = batch_lefschetz_cp2(1000, 9);
    let conj = involution_catalog()
        .unwrap()
        .into_iter()
        .find(|e| e.name == "cp2-conjugation")
        .unwrap();
    let rec = involution_identity_check(conj.data);
    let conj_ok = rec.eq62_pass && conj.data.fix_euler == 1 && conj.data.signature_g == -1;
    let ok = s4.all_pass() && cp2.all_pass() && conj_ok;
    report(
        9,
        ok,
        &format!(
            "SO(5) {}/{}, U(3) {}/{}, conjugation 1 = 2 + (-1) {conj_ok}",
            s4.passed, s4.count, cp2.passed, cp2.count
        ),
    );
    assert!(ok);
}

#[test]
fn criterion_10_arithmetic_anchors() {
    let gl = order_gl(3, 2).unwrap();
    let product = (8u32 - 1) * (8 - 2) * (8 - 4);
    let mut worst = 0;
    let mut a5_index = 0;
    for (name, g) in acceptance_catalog().unwrap() {
        let idx = max_cyclic_normal_index(&g).unwrap();
        worst = worst.max(idx);
        if name == "A5" {
            a5_index = idx;
        }
    }
    let ok = gl == BigUint::from(168u32) && gl == BigUint::from(product) && worst <= 120 && a5_index == 60;
    report(10, ok, &format!("|GL(3,2)| = {gl}, max normal cyclic index {worst}, A5 {a5_index}"));
    assert!(ok);
}
