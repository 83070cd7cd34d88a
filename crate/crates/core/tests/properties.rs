use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use curvsym::snf::{smith_normal_form, IntMatrix};
use curvsym::sphere_geom::{canonical_form_with_map, lens_distance, LensParams, SpherePoint};

fn point() -> impl Strategy<Value = SpherePoint> {
    prop::array::uniform4(-1.0f64..1.0)
        .prop_filter("nonzero", |v| v.iter().map(|x| x * x).sum::<f64>() > 1e-3)
        .prop_map(|v| SpherePoint::normalized(v).unwrap())
}

fn lens() -> impl Strategy<Value = LensParams> {
    (3u64..60)
        .prop_flat_map(|n| (Just(n), 1..n, 1..n))
        .prop_filter("coprime", |(n, k, l)| k.gcd(n) == 1 && l.gcd(n) == 1)
        .prop_map(|(n, k, l)| LensParams::new(n, k, l).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn lens_distance_is_a_metric(l in lens(), p in point(), q in point(), r in point()) {
        let d = |a: &SpherePoint, b: &SpherePoint| lens_distance(&l, a, b).unwrap();
        prop_assert!(d(&p, &p) < 1e-6);
        prop_assert!((d(&p, &q) - d(&q, &p)).abs() < 1e-9);
        prop_assert!(d(&p, &r) <= d(&p, &q) + d(&q, &r) + 1e-9);
        prop_assert!(d(&p, &q) <= std::f64::consts::PI / 2.0 + 1e-9 || l.n < 2);
    }

    #[test]
    fn canonical_map_is_an_isometry(l in lens(), p in point(), q in point()) {
        let (canon, map) = canonical_form_with_map(l.n, l.k, l.l).unwrap();
        prop_assert!(canon.is_canonical());
        let before = lens_distance(&l, &p, &q).unwrap();
        let after = lens_distance(&canon, &map.apply(&p), &map.apply(&q)).unwrap();
        prop_assert!((before - after).abs() < 1e-9, "{} vs {}", before, after);
    }
}

/// Fraction-free (Bareiss) determinant.
fn det(m: &IntMatrix) -> BigInt {
    let n = m.rows();
    let mut a: Vec<Vec<BigInt>> = (0..n).map(|i| (0..n).map(|j| m.get(i, j).clone()).collect()).collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

fn submatrix(m: &IntMatrix, rows: &[usize], cols: &[usize]) -> IntMatrix {
    let mut s = IntMatrix::zeros(rows.len(), cols.len());
    for (i, &r) in rows.iter().enumerate() {
        for (j, &c) in cols.iter().enumerate() {
            s.set(i, j, m.get(r, c).clone());
        }
    }
    s
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    (0..n)
        .flat_map(|last| {
            subsets(last, k - 1).into_iter().map(move |mut s| {
                s.push(last);
                s
            })
        })
        .collect()
}

/// gcd of all k×k minors.
fn determinantal_divisor(m: &IntMatrix, k: usize) -> BigInt {
    let mut g = BigInt::zero();
    for rows in subsets(m.rows(), k) {
        for cols in subsets(m.cols(), k) {
            g = g.gcd(&det(&submatrix(m, &rows, &cols)));
        }
    }
    g
}

fn matrix(max_dim: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-9i64..=9, c), r))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn snf_is_a_unimodular_diagonalization(rows in matrix(40)) {
        let a = IntMatrix::from_rows(&rows);
        let f = smith_normal_form(&a);
        prop_assert_eq!(f.u.mul(&a).mul(&f.v), f.d.clone());
        prop_assert!(f.d.is_diagonal());
        prop_assert_eq!(f.u.mul(&f.u_inv), IntMatrix::identity(a.rows()));
        prop_assert_eq!(det(&f.v).abs(), BigInt::one());
        let diag: Vec<BigInt> = (0..a.rows().min(a.cols())).map(|i| f.d.get(i, i).clone()).collect();
        prop_assert!(diag.iter().all(|d| !d.is_negative()));
        for w in diag.windows(2) {
            // each factor divides the next, zeros last
            prop_assert!(w[1].is_zero() || (!w[0].is_zero() && (&w[1] % &w[0]).is_zero()));
        }
    }

    #[test]
    fn snf_matches_determinantal_divisors(rows in matrix(4)) {
        let a = IntMatrix::from_rows(&rows);
        let f = smith_normal_form(&a);
        let mut running = BigInt::one();
        for k in 1..=a.rows().min(a.cols()) {
            running *= f.d.get(k - 1, k - 1);
            prop_assert_eq!(determinantal_divisor(&a, k), running.clone());
        }
    }
}
