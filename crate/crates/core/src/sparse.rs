//! Compressed-sparse-row Hermitian matrices and deterministic parallel kernels.

use nalgebra::{ComplexField, DMatrix};
use num_complex::Complex64 as C64;
use rand::Rng;
use rayon::prelude::*;

/// Rows per parallel task. Fixed so reductions sum in the same order on any thread count.
const CHUNK: usize = 4096;

/// Scalar type of the Hamiltonians: `f64` or `Complex64`.
pub trait Field: ComplexField<RealField = f64> + Copy + Send + Sync + 'static {
    fn sample<R: Rng>(rng: &mut R) -> Self;
    fn to_c64(self) -> C64;
}

impl Field for f64 {
    fn sample<R: Rng>(rng: &mut R) -> Self {
        rng.random_range(-1.0..1.0)
    }

    fn to_c64(self) -> C64 {
        C64::new(self, 0.0)
    }
}

impl Field for C64 {
    fn sample<R: Rng>(rng: &mut R) -> Self {
        C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
    }

    fn to_c64(self) -> C64 {
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CsrMatrix<T> {
    dim: usize,
    row_ptr: Vec<usize>,
    cols: Vec<usize>,
    vals: Vec<T>,
}

impl<T: Field> CsrMatrix<T> {
    /// Assemble from `(row, col, value)` entries; duplicates are summed and exact zeros dropped.
    pub fn from_triplets(dim: usize, mut entries: Vec<(usize, usize, T)>) -> Self {
        entries.sort_unstable_by_key(|&(r, c, _)| (r, c));
        let mut row_ptr = vec![0; dim + 1];
        let mut cols = Vec::with_capacity(entries.len());
        let mut vals: Vec<T> = Vec::with_capacity(entries.len());
        let mut last = None;
        for (r, c, v) in entries {
            assert!(r < dim && c < dim, "entry ({r}, {c}) outside a {dim}-dimensional matrix");
            if last == Some((r, c)) {
                let x = vals.last_mut().unwrap();
                *x += v;
            } else {
                cols.push(c);
                vals.push(v);
                row_ptr[r + 1] += 1;
                last = Some((r, c));
            }
        }
        for r in 0..dim {
            row_ptr[r + 1] += row_ptr[r];
        }
        let m = Self { dim, row_ptr, cols, vals };
        m.pruned()
    }

    fn pruned(self) -> Self {
        if self.vals.iter().all(|v| !v.is_zero()) {
            return self;
        }
        let mut row_ptr = vec![0; self.dim + 1];
        let mut cols = Vec::new();
        let mut vals = Vec::new();
        for r in 0..self.dim {
            for idx in self.row_ptr[r]..self.row_ptr[r + 1] {
                if !self.vals[idx].is_zero() {
                    cols.push(self.cols[idx]);
                    vals.push(self.vals[idx]);
                }
            }
            row_ptr[r + 1] = cols.len();
        }
        Self {
            dim: self.dim,
            row_ptr,
            cols,
            vals,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    pub fn row(&self, r: usize) -> impl Iterator<Item = (usize, T)> + '_ {
        (self.row_ptr[r]..self.row_ptr[r + 1]).map(move |i| (self.cols[i], self.vals[i]))
    }

    pub fn get(&self, r: usize, c: usize) -> T {
        self.row(r).find(|&(j, _)| j == c).map_or_else(T::zero, |(_, v)| v)
    }

    pub fn max_row_nnz(&self) -> usize {
        (0..self.dim).map(|r| self.row_ptr[r + 1] - self.row_ptr[r]).max().unwrap_or(0)
    }

    /// `y = H x`, parallel over rows.
    pub fn matvec(&self, x: &[T], y: &mut [T]) {
        assert_eq!(x.len(), self.dim);
        assert_eq!(y.len(), self.dim);
        y.par_chunks_mut(CHUNK).enumerate().for_each(|(chunk, out)| {
            let base = chunk * CHUNK;
            for (k, yr) in out.iter_mut().enumerate() {
                let r = base + k;
                let mut acc = T::zero();
                for idx in self.row_ptr[r]..self.row_ptr[r + 1] {
                    acc += self.vals[idx] * x[self.cols[idx]];
                }
                *yr = acc;
            }
        });
    }

    /// Principal submatrix on `indices` (which must be sorted and distinct).
    pub fn restrict(&self, indices: &[usize]) -> Self {
        let mut position = vec![usize::MAX; self.dim];
        for (new, &old) in indices.iter().enumerate() {
            position[old] = new;
        }
        let mut row_ptr = Vec::with_capacity(indices.len() + 1);
        row_ptr.push(0);
        let mut cols = Vec::new();
        let mut vals = Vec::new();
        for &old in indices {
            for (c, v) in self.row(old) {
                if position[c] != usize::MAX {
                    cols.push(position[c]);
                    vals.push(v);
                }
            }
            row_ptr.push(cols.len());
        }
        Self {
            dim: indices.len(),
            row_ptr,
            cols,
            vals,
        }
    }

    /// Largest entry of `H - H†`, computed over stored entries and their mirrors.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for r in 0..self.dim {
            for (c, v) in self.row(r) {
                worst = worst.max((v - self.get(c, r).conjugate()).modulus());
            }
        }
        worst
    }

    /// `|| D₁ H D₂ - H ||_max` for diagonal `D₁`, `D₂`, optionally conjugating `H`
    /// (the antiunitary case). Used to check symmetry operators on assembled matrices.
    pub fn diagonal_similarity_defect(&self, left: &[f64], right: &[f64], conjugate: bool) -> f64 {
        let mut worst: f64 = 0.0;
        for r in 0..self.dim {
            for (c, v) in self.row(r) {
                let w = if conjugate { v.conjugate() } else { v };
                worst = worst.max((w * T::from_real(left[r] * right[c]) - v).modulus());
            }
        }
        worst
    }

    pub fn to_dense(&self) -> DMatrix<T> {
        let mut m = DMatrix::from_element(self.dim, self.dim, T::zero());
        for r in 0..self.dim {
            for (c, v) in self.row(r) {
                m[(r, c)] = v;
            }
        }
        m
    }

    /// Σ_r x_r* (H x)_r
    pub fn expectation(&self, x: &[T]) -> T {
        let mut y = vec![T::zero(); self.dim];
        self.matvec(x, &mut y);
        dot(x, &y)
    }
}

/// `Σ conj(a_i) b_i`, summed chunkwise in a fixed order.
pub fn dot<T: Field>(a: &[T], b: &[T]) -> T {
    assert_eq!(a.len(), b.len());
    let partial: Vec<T> = a
        .par_chunks(CHUNK)
        .zip(b.par_chunks(CHUNK))
        .map(|(x, y)| x.iter().zip(y).fold(T::zero(), |acc, (&u, &v)| acc + u.conjugate() * v))
        .collect();
    partial.into_iter().fold(T::zero(), |acc, p| acc + p)
}

pub fn norm<T: Field>(a: &[T]) -> f64 {
    dot(a, a).real().sqrt()
}

/// `y += s x`
pub fn axpy<T: Field>(s: T, x: &[T], y: &mut [T]) {
    y.par_chunks_mut(CHUNK).zip(x.par_chunks(CHUNK)).for_each(|(yc, xc)| {
        for (yi, &xi) in yc.iter_mut().zip(xc) {
            *yi += s * xi;
        }
    });
}

pub fn scale<T: Field>(s: T, x: &mut [T]) {
    x.par_chunks_mut(CHUNK).for_each(|c| c.iter_mut().for_each(|v| *v *= s));
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> CsrMatrix<f64> {
        CsrMatrix::from_triplets(3, vec![(0, 0, 1.0), (0, 1, 2.0), (1, 0, 2.0), (2, 2, 3.0), (2, 2, -1.0), (1, 1, 0.0)])
    }

    #[test]
    fn assembly_sums_duplicates_and_drops_zeros() {
        let m = sample();
        assert_eq!(m.nnz(), 4);
        assert_eq!(m.get(2, 2), 2.0);
        assert_eq!(m.get(1, 1), 0.0);
        assert_eq!(m.hermiticity_defect(), 0.0);
    }

    #[test]
    fn matvec_matches_dense() {
        let m = sample();
        let x = [1.0, -2.0, 0.5];
        let mut y = [0.0; 3];
        m.matvec(&x, &mut y);
        let dense = m.to_dense() * nalgebra::DVector::from_row_slice(&x);
        for i in 0..3 {
            assert_eq!(y[i], dense[i]);
        }
    }

    #[test]
    fn restriction_keeps_principal_block() {
        let r = sample().restrict(&[0, 2]);
        assert_eq!(r.dim(), 2);
        assert_eq!(r.get(0, 0), 1.0);
        assert_eq!(r.get(1, 1), 2.0);
        assert_eq!(r.get(0, 1), 0.0);
    }

    #[test]
    fn complex_hermiticity_is_checked() {
        let good = CsrMatrix::from_triplets(2, vec![(0, 1, C64::new(0.0, 1.0)), (1, 0, C64::new(0.0, -1.0))]);
        assert_eq!(good.hermiticity_defect(), 0.0);
        let bad = CsrMatrix::from_triplets(2, vec![(0, 1, C64::new(0.0, 1.0)), (1, 0, C64::new(0.0, 1.0))]);
        assert_eq!(bad.hermiticity_defect(), 2.0);
    }

    #[test]
    fn dot_is_conjugate_linear_in_first_argument() {
        let a = [C64::new(0.0, 1.0)];
        let b = [C64::new(1.0, 0.0)];
        assert_eq!(dot(&a, &b), C64::new(0.0, -1.0));
    }
}
