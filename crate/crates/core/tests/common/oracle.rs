//! A naive, self-contained route to integral cohomology, used to cross-check
//! the library's Smith-normal-form route. Nothing here touches the library's
//! matrix code: kernels come from Euclidean row reduction on plain grids,
//! image coordinates from rational Gaussian elimination, and invariant
//! factors from a remainder-loop diagonalization without transform tracking.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Grid = Vec<Vec<BigInt>>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbGroup {
    pub free_rank: usize,
    /// Invariant factors greater than one, in divisibility order.
    pub torsion: Vec<BigInt>,
}

impl std::fmt::Display for AbGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        if self.free_rank == 1 {
            parts.push("Z".to_string());
        } else if self.free_rank > 1 {
            parts.push(format!("Z^{}", self.free_rank));
        }
        for d in &self.torsion {
            parts.push(format!("Z/{d}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Basis of the integer kernel of `a` (rows x cols), as row vectors of
/// length cols. Works on [a^T | I]: integer row reduction zeroes out rows of
/// the a^T part exactly for kernel vectors, and the identity part tracks
/// which combination produced them.
pub fn kernel_basis(a: &Grid) -> Vec<Vec<BigInt>> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut work: Grid = (0..cols)
        .map(|i| {
            let mut row: Vec<BigInt> = (0..rows).map(|r| a[r][i].clone()).collect();
            row.extend((0..cols).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }));
            row
        })
        .collect();

    let mut pivot_row = 0;
    for col in 0..rows {
        loop {
            let best = (pivot_row..cols)
                .filter(|&r| !work[r][col].is_zero())
                .min_by_key(|&r| work[r][col].abs());
            let Some(best) = best else { break };
            work.swap(pivot_row, best);
            let mut cleared = true;
            for r in pivot_row + 1..cols {
                if work[r][col].is_zero() {
                    continue;
                }
                let q = &work[r][col] / &work[pivot_row][col];
                if !q.is_zero() {
                    for j in 0..rows + cols {
                        let delta = &q * &work[pivot_row][j];
                        work[r][j] -= delta;
                    }
                }
                if !work[r][col].is_zero() {
                    cleared = false;
                }
            }
            if cleared {
                pivot_row += 1;
                break;
            }
        }
    }

    let mut basis = Vec::new();
    for r in pivot_row..cols {
        assert!(
            work[r][..rows].iter().all(|x| x.is_zero()),
            "rows past the pivots must have vanished in the a^T part"
        );
        basis.push(work[r][rows..].to_vec());
    }
    basis
}

/// Solve basis^T x = v over the rationals (basis rows are independent), and
/// insist the solution is integral: v must lie in the lattice the basis
/// spans. Returns the coordinates of v in the basis.
pub fn coords_in_basis(basis: &[Vec<BigInt>], v: &[BigInt]) -> Vec<BigInt> {
    let r = basis.len();
    let n = v.len();
    let rat = |x: &BigInt| BigRational::from_integer(x.clone());
    // augmented system: n equations, r unknowns
    let mut m: Vec<Vec<BigRational>> = (0..n)
        .map(|row| {
            let mut line: Vec<BigRational> = (0..r).map(|k| rat(&basis[k][row])).collect();
            line.push(rat(&v[row]));
            line
        })
        .collect();

    let mut pivot_of_col = Vec::new();
    let mut row = 0;
    for col in 0..r {
        let Some(p) = (row..n).find(|&i| !m[i][col].is_zero()) else {
            panic!("kernel basis rows must be independent");
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for j in col..=r {
            m[row][j] = &m[row][j] * &inv;
        }
        for i in 0..n {
            if i != row && !m[i][col].is_zero() {
                let factor = m[i][col].clone();
                for j in col..=r {
                    let delta = &factor * &m[row][j];
                    m[i][j] = &m[i][j] - delta;
                }
            }
        }
        pivot_of_col.push(row);
        row += 1;
    }
    for i in row..n {
        assert!(m[i][r].is_zero(), "vector lies outside the span of the basis");
    }
    (0..r)
        .map(|col| {
            let val = m[pivot_of_col[col]][r].clone();
            assert!(val.is_integer(), "vector lies outside the integer lattice of the basis");
            val.to_integer()
        })
        .collect()
}

/// Rank and invariant factors (> 1) of an integer matrix by repeated
/// remainder reduction, with the divisibility fix-up. No transforms.
pub fn invariant_factors(m: &Grid) -> (usize, Vec<BigInt>) {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut w = m.clone();
    let mut diag = Vec::new();
    let mut k = 0;
    while k < rows.min(cols) {
        let mut best: Option<(usize, usize)> = None;
        for i in k..rows {
            for j in k..cols {
                if !w[i][j].is_zero()
                    && best.map_or(true, |(bi, bj)| w[i][j].abs() < w[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        w.swap(k, bi);
        for row in w.iter_mut() {
            row.swap(k, bj);
        }
        let mut dirty = false;
        for i in k + 1..rows {
            if !w[i][k].is_zero() {
                let q = &w[i][k] / &w[k][k];
                for j in k..cols {
                    let delta = &q * &w[k][j];
                    w[i][j] -= delta;
                }
                if !w[i][k].is_zero() {
                    dirty = true;
                }
            }
        }
        for j in k + 1..cols {
            if !w[k][j].is_zero() {
                let q = &w[k][j] / &w[k][k];
                for i in k..rows {
                    let delta = &q * &w[i][k];
                    w[i][j] -= delta;
                }
                if !w[k][j].is_zero() {
                    dirty = true;
                }
            }
        }
        if dirty {
            continue;
        }
        // pivot row and column are clear; enforce divisibility of the rest
        let mut offender = None;
        'scan: for i in k + 1..rows {
            for j in k + 1..cols {
                if !(&w[i][j] % &w[k][k]).is_zero() {
                    offender = Some(i);
                    break 'scan;
                }
            }
        }
        if let Some(i) = offender {
            for j in 0..cols {
                let add = w[i][j].clone();
                w[k][j] += add;
            }
            continue;
        }
        diag.push(w[k][k].abs());
        k += 1;
    }
    let rank = diag.len();
    let torsion = diag.into_iter().filter(|d| !d.is_one()).collect();
    (rank, torsion)
}

/// H = ker(d_up) / im(d_down), with d_up mapping out of the level and d_down
/// into it. Pass an empty grid (no columns) for d_down at the bottom level.
pub fn cohomology_group(d_up: &Grid, d_down_cols: &[Vec<BigInt>]) -> AbGroup {
    let basis = kernel_basis(d_up);
    let r = basis.len();
    if d_down_cols.is_empty() {
        return AbGroup { free_rank: r, torsion: Vec::new() };
    }
    let coord_grid: Grid = {
        // coordinates arrive per column; invariant_factors wants rows
        let per_col: Vec<Vec<BigInt>> =
            d_down_cols.iter().map(|c| coords_in_basis(&basis, c)).collect();
        (0..r).map(|i| per_col.iter().map(|c| c[i].clone()).collect()).collect()
    };
    let (rank, torsion) = invariant_factors(&coord_grid);
    AbGroup { free_rank: r - rank, torsion }
}
