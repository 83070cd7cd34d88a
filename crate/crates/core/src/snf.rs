//! Exact integer Smith normal form, and diagonalization over Z/m.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense integer matrix in row-major order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self {
            rows: r,
            cols: c,
            data: rows.iter().flatten().map(|&x| BigInt::from(x)).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.cols + c] = v;
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * other.get(k, j);
                    out.data[i * other.cols + j] += prod;
                }
            }
        }
        out
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for r in 0..self.rows {
                self.data.swap(r * self.cols + a, r * self.cols + b);
            }
        }
    }

    /// `row[dst] += q · row[src]`
    fn add_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        for c in 0..self.cols {
            let v = q * &self.data[src * self.cols + c];
            self.data[dst * self.cols + c] += v;
        }
    }

    /// `col[dst] += q · col[src]`
    fn add_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        for r in 0..self.rows {
            let v = q * &self.data[r * self.cols + src];
            self.data[r * self.cols + dst] += v;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = -std::mem::take(&mut self.data[r * self.cols + c]);
            self.data[r * self.cols + c] = v;
        }
    }

    fn negate_col(&mut self, c: usize) {
        for r in 0..self.rows {
            let v = -std::mem::take(&mut self.data[r * self.cols + c]);
            self.data[r * self.cols + c] = v;
        }
    }
}

/// `D = U·A·V` with U, V unimodular and D diagonal, each diagonal entry
/// dividing the next. `u_inv` is kept alongside U.
#[derive(Debug, Clone)]
pub struct SmithForm {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// Nonzero diagonal entries, in divisibility order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols))
            .map(|i| self.d.get(i, i).clone())
            .filter(|x| !x.is_zero())
            .collect()
    }
}

struct Tracker {
    a: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
}

impl Tracker {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
    }

    fn add_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        self.a.add_row(dst, src, q);
        self.u.add_row(dst, src, q);
        // inverse elementary op, applied on the right of U⁻¹
        let neg = -q;
        self.u_inv.add_col(src, dst, &neg);
    }

    fn add_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        self.a.add_col(dst, src, q);
        self.v.add_col(dst, src, q);
    }

    fn negate_row(&mut self, r: usize) {
        self.a.negate_row(r);
        self.u.negate_row(r);
        self.u_inv.negate_col(r);
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let (rows, cols) = (a.rows, a.cols);
    let mut t = Tracker {
        a: a.clone(),
        u: IntMatrix::identity(rows),
        u_inv: IntMatrix::identity(rows),
        v: IntMatrix::identity(cols),
    };
    for p in 0..rows.min(cols) {
        // smallest nonzero entry of the trailing block becomes the pivot
        let Some((pi, pj)) = min_abs_position(&t.a, p) else {
            break;
        };
        t.swap_rows(p, pi);
        t.swap_cols(p, pj);
        loop {
            let mut dirty = false;
            for i in p + 1..rows {
                if t.a.get(i, p).is_zero() {
                    continue;
                }
                let q = t.a.get(i, p).div_floor(t.a.get(p, p));
                t.add_row(i, p, &-q);
                if !t.a.get(i, p).is_zero() {
                    dirty = true;
                }
            }
            for j in p + 1..cols {
                if t.a.get(p, j).is_zero() {
                    continue;
                }
                let q = t.a.get(p, j).div_floor(t.a.get(p, p));
                t.add_col(j, p, &-q);
                if !t.a.get(p, j).is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                // a remainder survived: move the smallest entry of row/column p to the pivot
                let (mut bi, mut bj) = (p, p);
                let mut best = t.a.get(p, p).abs();
                for i in p + 1..rows {
                    let v = t.a.get(i, p).abs();
                    if !v.is_zero() && v < best {
                        best = v;
                        (bi, bj) = (i, p);
                    }
                }
                for j in p + 1..cols {
                    let v = t.a.get(p, j).abs();
                    if !v.is_zero() && v < best {
                        best = v;
                        (bi, bj) = (p, j);
                    }
                }
                t.swap_rows(p, bi);
                t.swap_cols(p, bj);
                continue;
            }
            // row and column are clear; enforce divisibility of the trailing block
            let pivot = t.a.get(p, p).clone();
            let offender = (p + 1..rows).find(|&i| (p + 1..cols).any(|j| !(t.a.get(i, j) % &pivot).is_zero()));
            match offender {
                Some(i) => t.add_row(p, i, &BigInt::one()),
                None => break,
            }
        }
        if t.a.get(p, p).is_negative() {
            t.negate_row(p);
        }
    }
    SmithForm {
        d: t.a,
        u: t.u,
        u_inv: t.u_inv,
        v: t.v,
    }
}

fn min_abs_position(a: &IntMatrix, from: usize) -> Option<(usize, usize)> {
    let mut best: Option<(BigInt, usize, usize)> = None;
    for i in from..a.rows {
        for j in from..a.cols {
            let v = a.get(i, j).abs();
            if !v.is_zero() && best.as_ref().is_none_or(|(b, _, _)| &v < b) {
                best = Some((v, i, j));
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

/// Extended gcd on non-negative integers: `s·a + t·b = g`, with `(s, t) = (1, 0)`
/// whenever `a` divides `b`.
fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if a != 0 && b % a == 0 {
        return (a, 1, 0);
    }
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i64, 0i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    (r0, s0, t0)
}

/// Diagonal form `P·A·Q = D` over Z/m for a dense matrix with entries in `[0, m)`.
///
/// Q and Q⁻¹ are tracked explicitly; P is applied to the supplied right-hand
/// sides instead of being stored.
#[derive(Debug, Clone)]
pub struct ModDiagonal {
    pub modulus: u64,
    pub rows: usize,
    pub cols: usize,
    /// `diag[i]` for `i < min(rows, cols)`; zero past the rank.
    pub diag: Vec<u64>,
    pub q: Vec<Vec<u64>>,
    pub q_inv: Vec<Vec<u64>>,
    /// `P·b` for each right-hand side b.
    pub rhs: Vec<Vec<u64>>,
}

pub fn diagonalize_mod(a: &[Vec<u64>], cols: usize, m: u64, rhs: Vec<Vec<u64>>) -> ModDiagonal {
    assert!(m >= 1, "modulus must be positive");
    let rows = a.len();
    let mi = m as i64;
    let md = |x: i64| x.rem_euclid(mi);
    let mut mat: Vec<Vec<i64>> = a
        .iter()
        .map(|r| {
            assert_eq!(r.len(), cols, "ragged matrix");
            r.iter().map(|&x| md(x as i64)).collect()
        })
        .collect();
    let mut rhs: Vec<Vec<i64>> = rhs
        .into_iter()
        .map(|b| {
            assert_eq!(b.len(), rows, "rhs length must equal row count");
            b.into_iter().map(|x| md(x as i64)).collect()
        })
        .collect();
    let ident = |n: usize| -> Vec<Vec<i64>> { (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect() };
    let mut q = ident(cols);
    let mut q_inv = ident(cols);
    let gcd_m = |x: i64| x.gcd(&mi);
    let mut diag = Vec::new();
    for p in 0..rows.min(cols) {
        // pivot with the smallest ideal (x) + (m)
        let mut best: Option<(i64, usize, usize)> = None;
        for (i, row) in mat.iter().enumerate().skip(p) {
            for (j, &x) in row.iter().enumerate().skip(p) {
                if x != 0 && best.is_none_or(|(g, _, _)| gcd_m(x) < g) {
                    best = Some((gcd_m(x), i, j));
                }
            }
            if best.is_some_and(|(g, _, _)| g == 1) {
                break;
            }
        }
        let Some((_, pi, pj)) = best else {
            break;
        };
        mat.swap(p, pi);
        for b in rhs.iter_mut() {
            b.swap(p, pi);
        }
        if pj != p {
            for row in mat.iter_mut() {
                row.swap(p, pj);
            }
            for row in q.iter_mut() {
                row.swap(p, pj);
            }
            q_inv.swap(p, pj);
        }
        loop {
            for i in p + 1..rows {
                let b = mat[i][p];
                if b == 0 {
                    continue;
                }
                let a0 = mat[p][p];
                let (g, s, t) = ext_gcd(a0, b);
                let (x, y) = (a0 / g, b / g);
                let (top, bot) = {
                    let (head, tail) = mat.split_at_mut(i);
                    (&mut head[p], &mut tail[0])
                };
                for c in p..cols {
                    let (u, v) = (top[c], bot[c]);
                    top[c] = md(s * u + t * v);
                    bot[c] = md(-y * u + x * v);
                }
                for r in rhs.iter_mut() {
                    let (u, v) = (r[p], r[i]);
                    r[p] = md(s * u + t * v);
                    r[i] = md(-y * u + x * v);
                }
            }
            let mut row_dirty = false;
            for j in p + 1..cols {
                let b = mat[p][j];
                if b == 0 {
                    continue;
                }
                row_dirty = true;
                let a0 = mat[p][p];
                let (g, s, t) = ext_gcd(a0, b);
                let (x, y) = (a0 / g, b / g);
                for row in mat.iter_mut() {
                    let (u, v) = (row[p], row[j]);
                    row[p] = md(s * u + t * v);
                    row[j] = md(-y * u + x * v);
                }
                for row in q.iter_mut() {
                    let (u, v) = (row[p], row[j]);
                    row[p] = md(s * u + t * v);
                    row[j] = md(-y * u + x * v);
                }
                let (rp, rj) = {
                    let (lo, hi) = q_inv.split_at_mut(j);
                    (&mut lo[p], &mut hi[0])
                };
                for c in 0..cols {
                    let (u, v) = (rp[c], rj[c]);
                    rp[c] = md(x * u + y * v);
                    rj[c] = md(-t * u + s * v);
                }
            }
            let col_dirty = (p + 1..rows).any(|i| mat[i][p] != 0);
            if !row_dirty || !col_dirty {
                if !col_dirty {
                    break;
                }
                if !row_dirty {
                    continue;
                }
            }
        }
        diag.push(mat[p][p] as u64);
    }
    diag.resize(rows.min(cols), 0);
    let to_u = |v: Vec<Vec<i64>>| -> Vec<Vec<u64>> { v.into_iter().map(|r| r.into_iter().map(|x| x as u64).collect()).collect() };
    ModDiagonal {
        modulus: m,
        rows,
        cols,
        diag,
        q: to_u(q),
        q_inv: to_u(q_inv),
        rhs: to_u(rhs),
    }
}

impl ModDiagonal {
    /// Order of the kernel generator attached to column i: `gcd(d_i, m)`,
    /// with `d_i = 0` past the rank.
    pub fn kernel_orders(&self) -> Vec<u64> {
        (0..self.cols)
            .map(|i| {
                let d = self.diag.get(i).copied().unwrap_or(0);
                d.gcd(&self.modulus)
            })
            .collect()
    }

    /// Whether `A x = b` is solvable mod m for right-hand side number `k`.
    pub fn is_solvable(&self, k: usize) -> bool {
        let pb = &self.rhs[k];
        (0..self.rows).all(|i| {
            let d = self.diag.get(i).copied().unwrap_or(0);
            pb[i] % d.gcd(&self.modulus) == 0
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(a: &IntMatrix) {
        let s = smith_normal_form(a);
        assert_eq!(s.u.mul(a).mul(&s.v), s.d);
        assert!(s.d.is_diagonal());
        assert_eq!(s.u.mul(&s.u_inv), IntMatrix::identity(a.rows()));
        let f = s.invariant_factors();
        for w in f.windows(2) {
            assert!((&w[1] % &w[0]).is_zero());
        }
        assert!(f.iter().all(|x| x.is_positive()));
    }

    #[test]
    fn small_known_forms() {
        let a = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        let f: Vec<i64> = smith_normal_form(&a)
            .invariant_factors()
            .iter()
            .map(|x| i64::try_from(x).unwrap())
            .collect();
        assert_eq!(f, vec![2, 6, 12]);
        check(&a);
        check(&IntMatrix::from_rows(&[vec![0, 0], vec![0, 0]]));
        check(&IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]));
        check(&IntMatrix::zeros(0, 3));
    }

    #[test]
    fn coprime_diagonal_merges() {
        let a = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        let f = smith_normal_form(&a).invariant_factors();
        assert_eq!(f, vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn mod_diagonal_kernel_of_zero_map() {
        let d = diagonalize_mod(&[vec![0, 0]], 2, 6, vec![]);
        assert_eq!(d.kernel_orders(), vec![6, 6]);
    }

    #[test]
    fn mod_diagonal_solvability() {
        // 2x = 1 has no solution mod 4; 2x = 2 does
        let a = vec![vec![2u64]];
        let d = diagonalize_mod(&a, 1, 4, vec![vec![1], vec![2]]);
        assert!(!d.is_solvable(0));
        assert!(d.is_solvable(1));
        assert_eq!(d.kernel_orders(), vec![2]);
    }

    #[test]
    fn mod_diagonal_transform_consistency() {
        let m = 12u64;
        let a = vec![vec![4, 6, 3], vec![8, 0, 9], vec![2, 2, 2], vec![6, 6, 0]];
        let d = diagonalize_mod(&a, 3, m, vec![]);
        for i in 0..3 {
            for j in 0..3 {
                let s: u64 = (0..3).map(|k| d.q[i][k] * d.q_inv[k][j]).sum::<u64>() % m;
                assert_eq!(s, u64::from(i == j));
            }
        }
    }
}
