//! Integral cohomology of the nerve.
//!
//! C^p is the free abelian group of integer functions on the level-p cells,
//! with the lex-sorted cell order of [`NerveLevel`] as basis. The coboundary
//! is the alternating sum over faces, (d f)(tau) = sum_j (-1)^j f(d_j tau).
//! H^p = ker(d^p) / im(d^{p-1}) is put in normal form through two Smith
//! reductions: one of d^p for a saturated kernel basis, one of the image
//! expressed in that basis for the invariant factors.

use crate::error::{Error, Result};
use crate::groupoid::FiniteGroupoid;
use crate::matrix::{snf_with, IntMatrix, Transforms};
use crate::nerve::{face, NerveLevel};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// Matrix of d: C^p -> C^{p+1}; rows indexed by the upper level's cells,
/// columns by the lower level's.
pub fn coboundary_matrix(
    g: &FiniteGroupoid,
    lower: &NerveLevel,
    upper: &NerveLevel,
) -> IntMatrix {
    assert_eq!(upper.level, lower.level + 1, "coboundary joins adjacent levels");
    let mut m = IntMatrix::zeros(upper.len(), lower.len());
    for (row, tau) in upper.tuples.iter().enumerate() {
        for j in 0..=upper.level {
            let sigma = face(g, tau, j);
            let col = lower
                .index_of(&sigma)
                .expect("faces of nerve cells are nerve cells");
            let sign = if j % 2 == 0 { BigInt::one() } else { -BigInt::one() };
            m.add_at(row, col, &sign);
        }
    }
    m
}

/// An abelian group in normal form: free rank plus invariant factors > 1 in
/// divisibility order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologyGroup {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl CohomologyGroup {
    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Number of normal-form coordinates (torsion then free).
    pub fn coords_len(&self) -> usize {
        self.torsion.len() + self.free_rank
    }
}

impl std::fmt::Display for CohomologyGroup {
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

/// H^p with enough of the reduction retained to put cocycles into class
/// coordinates and to produce generator cocycles.
pub struct CohomologySpace {
    pub level: usize,
    /// Number of level-p cells, the length of cochain vectors.
    pub dim: usize,
    group: CohomologyGroup,
    d_up: IntMatrix,
    rank_up: usize,
    kernel: IntMatrix,
    vinv_up: IntMatrix,
    u_c: IntMatrix,
    uinv_c: IntMatrix,
    divisors_c: Vec<BigInt>,
    rank_c: usize,
}

pub fn cohomology(g: &FiniteGroupoid, p: usize, max_cells: u64) -> Result<CohomologySpace> {
    let level_p = NerveLevel::build(g, p, max_cells)?;
    let level_up = NerveLevel::build(g, p + 1, max_cells)?;
    let d_up = coboundary_matrix(g, &level_p, &level_up);

    let snf_up = snf_with(&d_up, Transforms::right_pair());
    let rank_up = snf_up.rank;
    let kernel = snf_up.kernel();
    let vinv_up = snf_up.vinv.clone().expect("right pair tracks vinv");
    let r = kernel.cols();

    let d_down = if p == 0 {
        IntMatrix::zeros(level_p.len(), 0)
    } else {
        let level_down = NerveLevel::build(g, p - 1, max_cells)?;
        coboundary_matrix(g, &level_down, &level_p)
    };

    // image columns in kernel coordinates: the first rank_up rows of
    // vinv * d_down vanish because d∘d = 0, the rest are the coordinates
    let coords_full = vinv_up.mul(&d_down);
    for i in 0..rank_up {
        for j in 0..d_down.cols() {
            assert!(
                coords_full.get(i, j).is_zero(),
                "coboundaries must lie in the kernel (d∘d = 0)"
            );
        }
    }
    let c = coords_full.row_block(rank_up, coords_full.rows());

    let snf_c = snf_with(&c, Transforms::left_pair());
    let rank_c = snf_c.rank;
    let torsion: Vec<BigInt> =
        snf_c.divisors.iter().filter(|d| !d.is_one()).cloned().collect();

    Ok(CohomologySpace {
        level: p,
        dim: level_p.len(),
        group: CohomologyGroup { free_rank: r - rank_c, torsion },
        d_up,
        rank_up,
        kernel,
        vinv_up,
        u_c: snf_c.u.expect("left pair tracks u"),
        uinv_c: snf_c.uinv.expect("left pair tracks uinv"),
        divisors_c: snf_c.divisors,
        rank_c,
    })
}

impl CohomologySpace {
    pub fn group(&self) -> &CohomologyGroup {
        &self.group
    }

    fn check_len(&self, cochain: &[BigInt]) -> Result<()> {
        if cochain.len() != self.dim {
            return Err(Error::LevelMismatch {
                level: self.level,
                got: cochain.len(),
                want: self.dim,
            });
        }
        Ok(())
    }

    /// Error unless d x = 0, with the first offending upper cell index.
    pub fn check_cocycle(&self, cochain: &[BigInt]) -> Result<()> {
        self.check_len(cochain)?;
        let image = self.d_up.mul_vec(cochain);
        if let Some(row) = image.iter().position(|x| !x.is_zero()) {
            return Err(Error::NotACocycle(format!(
                "coboundary is nonzero at level-{} cell index {} (value {})",
                self.level + 1,
                row,
                image[row]
            )));
        }
        Ok(())
    }

    /// Class coordinates in normal form: one coordinate per torsion factor
    /// (reduced into [0, d)), then free coordinates. All-zero means the
    /// class is trivial.
    pub fn class_coords(&self, cochain: &[BigInt]) -> Result<Vec<BigInt>> {
        self.check_cocycle(cochain)?;
        let y = self.vinv_up.mul_vec(cochain);
        debug_assert!(y[..self.rank_up].iter().all(|x| x.is_zero()));
        let w = self.u_c.mul_vec(&y[self.rank_up..]);
        let mut coords = Vec::with_capacity(self.group.coords_len());
        for (i, d) in self.divisors_c.iter().enumerate().take(self.rank_c) {
            if !d.is_one() {
                coords.push(w[i].mod_floor(d));
            }
        }
        coords.extend_from_slice(&w[self.rank_c..]);
        Ok(coords)
    }

    pub fn is_coboundary(&self, cochain: &[BigInt]) -> Result<bool> {
        Ok(self.class_coords(cochain)?.iter().all(|x| x.is_zero()))
    }

    pub fn classes_equal(&self, a: &[BigInt], b: &[BigInt]) -> Result<bool> {
        Ok(self.class_coords(a)? == self.class_coords(b)?)
    }

    /// A cocycle whose class has coordinates e_j in normal form.
    pub fn generator_cocycle(&self, j: usize) -> Vec<BigInt> {
        assert!(j < self.group.coords_len(), "generator index out of range");
        let torsion_slots: Vec<usize> = (0..self.rank_c)
            .filter(|&i| !self.divisors_c[i].is_one())
            .collect();
        let w_index = if j < torsion_slots.len() {
            torsion_slots[j]
        } else {
            self.rank_c + (j - torsion_slots.len())
        };
        // kernel coordinates of the generator: column w_index of uinv_c
        let r = self.kernel.cols();
        let mut cocycle = vec![BigInt::zero(); self.dim];
        for k in 0..r {
            let coeff = self.uinv_c.get(k, w_index);
            if coeff.is_zero() {
                continue;
            }
            for row in 0..self.dim {
                let term = self.kernel.get(row, k) * coeff;
                cocycle[row] += term;
            }
        }
        cocycle
    }
}

/// The groups H^0..H^pmax in one pass.
pub fn cohomology_range(
    g: &FiniteGroupoid,
    pmax: usize,
    max_cells: u64,
) -> Result<Vec<CohomologyGroup>> {
    (0..=pmax).map(|p| Ok(cohomology(g, p, max_cells)?.group().clone())).collect()
}
