//! Dense matrices over arbitrary-precision integers, and Smith normal form.
//!
//! The normal form keeps the row and column operations it applied as
//! unimodular transform matrices together with their inverses, maintained
//! move by move. That makes unimodularity checkable by exact multiplication
//! (a two-sided integer inverse forces determinant plus or minus one) without
//! ever computing a determinant.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>, // row-major
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut m = IntMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.data[i * cols + j] = f(i, j);
            }
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IntMatrix::from_fn(r, c, |i, j| BigInt::from(rows[i][j]))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn add_at(&mut self, i: usize, j: usize, v: &BigInt) {
        self.data[i * self.cols + j] += v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Product, skipping zero entries of the left factor. The matrices this
    /// crate builds (coboundaries, pullback sums) are sparse, so this keeps
    /// products near linear in the number of nonzeros.
    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    out.data[i * rhs.cols + j] += a * b;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "matrix-vector dimension mismatch");
        let mut out = vec![BigInt::zero(); self.rows];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() || v[k].is_zero() {
                    continue;
                }
                out[i] += a * &v[k];
            }
        }
        out
    }

    pub fn sub(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        IntMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j) - rhs.get(i, j))
    }

    pub fn scale(&self, c: i64) -> IntMatrix {
        let c = BigInt::from(c);
        IntMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j) * &c)
    }

    pub fn col_vec(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    /// Columns j0..j1 as a new matrix.
    pub fn col_block(&self, j0: usize, j1: usize) -> IntMatrix {
        assert!(j0 <= j1 && j1 <= self.cols);
        IntMatrix::from_fn(self.rows, j1 - j0, |i, j| self.get(i, j0 + j).clone())
    }

    /// Rows i0..i1 as a new matrix.
    pub fn row_block(&self, i0: usize, i1: usize) -> IntMatrix {
        assert!(i0 <= i1 && i1 <= self.rows);
        IntMatrix::from_fn(i1 - i0, self.cols, |i, j| self.get(i0 + i, j).clone())
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + i, r * self.cols + j);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for c in 0..self.cols {
            let idx = i * self.cols + c;
            let v = std::mem::take(&mut self.data[idx]);
            self.data[idx] = -v;
        }
    }

    fn negate_col(&mut self, j: usize) {
        for r in 0..self.rows {
            let idx = r * self.cols + j;
            let v = std::mem::take(&mut self.data[idx]);
            self.data[idx] = -v;
        }
    }

    /// row_i += c * row_j
    fn addmul_row(&mut self, i: usize, j: usize, c: &BigInt) {
        assert_ne!(i, j);
        for k in 0..self.cols {
            let t = self.get(j, k);
            if t.is_zero() {
                continue;
            }
            let add = c * t;
            self.data[i * self.cols + k] += add;
        }
    }

    /// col_j += c * col_i
    fn addmul_col(&mut self, j: usize, i: usize, c: &BigInt) {
        assert_ne!(i, j);
        for k in 0..self.rows {
            let t = self.get(k, i);
            if t.is_zero() {
                continue;
            }
            let add = c * t;
            self.data[k * self.cols + j] += add;
        }
    }

    /// (row_i, row_j) <- (m11 row_i + m12 row_j, m21 row_i + m22 row_j)
    fn combine_rows(
        &mut self,
        i: usize,
        j: usize,
        m11: &BigInt,
        m12: &BigInt,
        m21: &BigInt,
        m22: &BigInt,
    ) {
        assert_ne!(i, j);
        for k in 0..self.cols {
            let a = self.get(i, k).clone();
            let b = self.get(j, k).clone();
            self.data[i * self.cols + k] = m11 * &a + m12 * &b;
            self.data[j * self.cols + k] = m21 * &a + m22 * &b;
        }
    }

    /// (col_i, col_j) <- (m11 col_i + m21 col_j, m12 col_i + m22 col_j)
    fn combine_cols(
        &mut self,
        i: usize,
        j: usize,
        m11: &BigInt,
        m21: &BigInt,
        m12: &BigInt,
        m22: &BigInt,
    ) {
        assert_ne!(i, j);
        for k in 0..self.rows {
            let a = self.get(k, i).clone();
            let b = self.get(k, j).clone();
            self.data[k * self.cols + i] = m11 * &a + m21 * &b;
            self.data[k * self.cols + j] = m12 * &a + m22 * &b;
        }
    }
}

// Grid display keeps test failures readable.
impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Which transform matrices a Smith normal form call should maintain.
/// Skipping the big side keeps large eliminations cheap; the kernel
/// computation for an m x n matrix only ever needs the n x n pair.
#[derive(Clone, Copy, Default)]
pub struct Transforms {
    pub u: bool,
    pub uinv: bool,
    pub v: bool,
    pub vinv: bool,
}

impl Transforms {
    pub fn all() -> Self {
        Transforms { u: true, uinv: true, v: true, vinv: true }
    }

    pub fn right_pair() -> Self {
        Transforms { u: false, uinv: false, v: true, vinv: true }
    }

    pub fn left_pair() -> Self {
        Transforms { u: true, uinv: true, v: false, vinv: false }
    }
}

/// Smith normal form of an integer matrix: U * A * V = diag(d_1..d_r, 0..)
/// with d_1 | d_2 | ... | d_r, all positive, and U, V unimodular.
pub struct SnfResult {
    pub divisors: Vec<BigInt>,
    pub rank: usize,
    pub rows: usize,
    pub cols: usize,
    pub u: Option<IntMatrix>,
    pub uinv: Option<IntMatrix>,
    pub v: Option<IntMatrix>,
    pub vinv: Option<IntMatrix>,
}

struct Work {
    m: IntMatrix,
    u: Option<IntMatrix>,
    uinv: Option<IntMatrix>,
    v: Option<IntMatrix>,
    vinv: Option<IntMatrix>,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.m.swap_rows(i, j);
        if let Some(u) = &mut self.u {
            u.swap_rows(i, j);
        }
        if let Some(uinv) = &mut self.uinv {
            uinv.swap_cols(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.m.swap_cols(i, j);
        if let Some(v) = &mut self.v {
            v.swap_cols(i, j);
        }
        if let Some(vinv) = &mut self.vinv {
            vinv.swap_rows(i, j);
        }
    }

    fn negate_row(&mut self, i: usize) {
        self.m.negate_row(i);
        if let Some(u) = &mut self.u {
            u.negate_row(i);
        }
        if let Some(uinv) = &mut self.uinv {
            uinv.negate_col(i);
        }
    }

    /// row_i += c * row_j, inverse updated with the opposite column move.
    fn addmul_row(&mut self, i: usize, j: usize, c: &BigInt) {
        self.m.addmul_row(i, j, c);
        if let Some(u) = &mut self.u {
            u.addmul_row(i, j, c);
        }
        if let Some(uinv) = &mut self.uinv {
            let neg = -c;
            uinv.addmul_col(j, i, &neg);
        }
    }

    fn addmul_col(&mut self, j: usize, i: usize, c: &BigInt) {
        self.m.addmul_col(j, i, c);
        if let Some(v) = &mut self.v {
            v.addmul_col(j, i, c);
        }
        if let Some(vinv) = &mut self.vinv {
            let neg = -c;
            vinv.addmul_row(i, j, &neg);
        }
    }

    /// Unimodular two-row move with determinant one; the inverse transform
    /// picks up the adjugate on columns.
    fn combine_rows(&mut self, i: usize, j: usize, m11: &BigInt, m12: &BigInt, m21: &BigInt, m22: &BigInt) {
        debug_assert!((m11 * m22 - m12 * m21).is_one());
        self.m.combine_rows(i, j, m11, m12, m21, m22);
        if let Some(u) = &mut self.u {
            u.combine_rows(i, j, m11, m12, m21, m22);
        }
        if let Some(uinv) = &mut self.uinv {
            // right-multiply by [[m22, -m12], [-m21, m11]]
            uinv.combine_cols(i, j, m22, &-m21, &-m12, m11);
        }
    }

    fn combine_cols(&mut self, i: usize, j: usize, m11: &BigInt, m21: &BigInt, m12: &BigInt, m22: &BigInt) {
        debug_assert!((m11 * m22 - m12 * m21).is_one());
        self.m.combine_cols(i, j, m11, m21, m12, m22);
        if let Some(v) = &mut self.v {
            v.combine_cols(i, j, m11, m21, m12, m22);
        }
        if let Some(vinv) = &mut self.vinv {
            vinv.combine_rows(i, j, m22, &-m12, &-m21, m11);
        }
    }
}

fn xgcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    let (g, x, y) = (e.gcd, e.x, e.y);
    debug_assert_eq!(&x * a + &y * b, g);
    if g.is_negative() {
        (-g, -x, -y)
    } else {
        (g, x, y)
    }
}

fn find_pivot(m: &IntMatrix, k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    let mut best_abs = BigInt::zero();
    for i in k..m.rows() {
        for j in k..m.cols() {
            let v = m.get(i, j);
            if v.is_zero() {
                continue;
            }
            let a = v.abs();
            if best.is_none() || a < best_abs {
                best = Some((i, j));
                best_abs = a;
                if best_abs.is_one() {
                    return best;
                }
            }
        }
    }
    best
}

pub fn smith_normal_form(a: &IntMatrix) -> SnfResult {
    snf_with(a, Transforms::all())
}

pub fn snf_with(a: &IntMatrix, want: Transforms) -> SnfResult {
    let (rows, cols) = (a.rows(), a.cols());
    let mut w = Work {
        m: a.clone(),
        u: want.u.then(|| IntMatrix::identity(rows)),
        uinv: want.uinv.then(|| IntMatrix::identity(rows)),
        v: want.v.then(|| IntMatrix::identity(cols)),
        vinv: want.vinv.then(|| IntMatrix::identity(cols)),
    };

    let bound = rows.min(cols);
    let mut k = 0;
    while k < bound {
        let Some((pi, pj)) = find_pivot(&w.m, k) else {
            break;
        };
        w.swap_rows(k, pi);
        w.swap_cols(k, pj);

        loop {
            let mut touched = false;
            for i in k + 1..rows {
                if w.m.get(i, k).is_zero() {
                    continue;
                }
                touched = true;
                let a_kk = w.m.get(k, k).clone();
                let b = w.m.get(i, k).clone();
                if (&b % &a_kk).is_zero() {
                    let q = -(&b / &a_kk);
                    w.addmul_row(i, k, &q);
                } else {
                    let (g, x, y) = xgcd(&a_kk, &b);
                    let ad = &a_kk / &g;
                    let bd = &b / &g;
                    w.combine_rows(k, i, &x, &y, &-bd, &ad);
                }
            }
            for j in k + 1..cols {
                if w.m.get(k, j).is_zero() {
                    continue;
                }
                touched = true;
                let a_kk = w.m.get(k, k).clone();
                let b = w.m.get(k, j).clone();
                if (&b % &a_kk).is_zero() {
                    let q = -(&b / &a_kk);
                    w.addmul_col(j, k, &q);
                } else {
                    let (g, x, y) = xgcd(&a_kk, &b);
                    let ad = &a_kk / &g;
                    let bd = &b / &g;
                    w.combine_cols(k, j, &x, &y, &-bd, &ad);
                }
            }
            if touched {
                continue;
            }

            // Pivot must divide the rest of the submatrix for the divisor
            // chain; pull an offending row up and reduce again.
            let pivot = w.m.get(k, k).clone();
            let mut offender = None;
            'scan: for i in k + 1..rows {
                for j in k + 1..cols {
                    if !(w.m.get(i, j) % &pivot).is_zero() {
                        offender = Some(i);
                        break 'scan;
                    }
                }
            }
            match offender {
                Some(i) => w.addmul_row(k, i, &BigInt::one()),
                None => break,
            }
        }

        if w.m.get(k, k).is_negative() {
            w.negate_row(k);
        }
        k += 1;
    }

    let divisors: Vec<BigInt> = (0..k).map(|i| w.m.get(i, i).clone()).collect();
    SnfResult {
        rank: divisors.len(),
        divisors,
        rows,
        cols,
        u: w.u,
        uinv: w.uinv,
        v: w.v,
        vinv: w.vinv,
    }
}

impl SnfResult {
    pub fn diagonal(&self) -> IntMatrix {
        let mut d = IntMatrix::zeros(self.rows, self.cols);
        for (i, di) in self.divisors.iter().enumerate() {
            d.set(i, i, di.clone());
        }
        d
    }

    /// Lattice basis of the integer kernel of A: the columns of V past the
    /// rank. Columns of a unimodular matrix extend to a basis of the ambient
    /// lattice, so the kernel they span is automatically saturated.
    pub fn kernel(&self) -> IntMatrix {
        let v = self.v.as_ref().expect("kernel needs the V transform");
        v.col_block(self.rank, self.cols)
    }

    /// One integer solution x of A x = y, if any exists.
    pub fn solve(&self, y: &[BigInt]) -> Option<Vec<BigInt>> {
        let u = self.u.as_ref().expect("solve needs the U transform");
        let v = self.v.as_ref().expect("solve needs the V transform");
        let uy = u.mul_vec(y);
        let mut w = vec![BigInt::zero(); self.cols];
        for i in 0..self.rows {
            if i < self.rank {
                let (q, r) = uy[i].div_rem(&self.divisors[i]);
                if !r.is_zero() {
                    return None;
                }
                w[i] = q;
            } else if !uy[i].is_zero() {
                return None;
            }
        }
        Some(v.mul_vec(&w))
    }

    /// Exact consistency check. Verifies the divisor chain, U A V = D for
    /// whichever transforms are present, and that the tracked inverses really
    /// invert (full product below the cutoff, deterministic probe columns
    /// above it; every move was unimodular by construction, the product check
    /// guards the bookkeeping).
    pub fn verify(&self, a: &IntMatrix) -> Result<()> {
        for d in &self.divisors {
            if !d.is_positive() {
                return Err(Error::Invalid(format!("divisor {d} not positive")));
            }
        }
        for pair in self.divisors.windows(2) {
            if !(&pair[1] % &pair[0]).is_zero() {
                return Err(Error::Invalid(format!(
                    "divisor chain broken: {} does not divide {}",
                    pair[0], pair[1]
                )));
            }
        }
        if let (Some(u), Some(v)) = (&self.u, &self.v) {
            let uav = u.mul(a).mul(v);
            if uav != self.diagonal() {
                return Err(Error::Invalid("U*A*V is not the diagonal".into()));
            }
        }
        check_inverse_pair(&self.u, &self.uinv, "U")?;
        check_inverse_pair(&self.v, &self.vinv, "V")?;
        Ok(())
    }
}

const FULL_INVERSE_CHECK_DIM: usize = 256;

fn check_inverse_pair(m: &Option<IntMatrix>, minv: &Option<IntMatrix>, name: &str) -> Result<()> {
    let (Some(m), Some(minv)) = (m, minv) else {
        return Ok(());
    };
    let n = m.rows();
    if n <= FULL_INVERSE_CHECK_DIM {
        if m.mul(minv) != IntMatrix::identity(n) {
            return Err(Error::Invalid(format!("{name} * {name}inv is not the identity")));
        }
        return Ok(());
    }
    let step = (n / 16).max(1);
    for j in (0..n).step_by(step) {
        let col = minv.col_vec(j);
        let probe = m.mul_vec(&col);
        for (i, entry) in probe.iter().enumerate() {
            let ok = if i == j { entry.is_one() } else { entry.is_zero() };
            if !ok {
                return Err(Error::Invalid(format!(
                    "{name} * {name}inv column {j} is not a unit column"
                )));
            }
        }
    }
    Ok(())
}
