//! Thick-restart Lanczos for the lowest eigenpairs of a sparse Hermitian matrix.
//!
//! Every new Krylov vector is reorthogonalized twice against the whole basis,
//! so the projected matrix is assembled from the Gram-Schmidt coefficients
//! themselves. On restart the lowest Ritz vectors are kept together with the
//! current residual direction. All reductions are chunked in a fixed order, so
//! results do not depend on the number of worker threads.

use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::sparse::{axpy, dot, norm, scale, CsrMatrix, Field};

/// Below this dimension the matrix is diagonalized densely.
const DENSE_LIMIT: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LanczosOptions {
    /// Relative residual tolerance: `|H x - θ x| ≤ tol · max(1, |θ|)`.
    pub tol: f64,
    /// Maximum number of matrix-vector products.
    pub max_matvecs: usize,
    pub krylov_dim: usize,
    pub seed: u64,
}

impl Default for LanczosOptions {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            max_matvecs: 50_000,
            krylov_dim: 120,
            seed: 0x5eed,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Eigenpairs<T> {
    /// Ascending.
    pub values: Vec<f64>,
    pub vectors: Vec<Vec<T>>,
    pub residuals: Vec<f64>,
    pub matvecs: usize,
}

pub fn lowest_eigenpairs<T: Field>(h: &CsrMatrix<T>, k: usize, opts: &LanczosOptions) -> Result<Eigenpairs<T>> {
    let n = h.dim();
    if k == 0 || k > n {
        return Err(Error::InvalidParams(format!("cannot compute {k} eigenpairs of a {n}-dimensional matrix")));
    }
    if n <= DENSE_LIMIT.max(opts.krylov_dim) {
        return dense(h, k);
    }
    let m = opts.krylov_dim.max(2 * k + 10).min(n);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let fresh = |rng: &mut ChaCha8Rng, basis: &[Vec<T>]| -> Option<Vec<T>> {
        for _ in 0..4 {
            let mut v: Vec<T> = (0..n).map(|_| T::sample(rng)).collect();
            orthogonalize(basis, &mut v);
            let nv = norm(&v);
            if nv > 1e-8 {
                scale(T::from_real(1.0 / nv), &mut v);
                return Some(v);
            }
        }
        None
    };

    let mut basis: Vec<Vec<T>> = vec![fresh(&mut rng, &[]).unwrap()];
    // proj[(i, j)] = ⟨v_i, H v_j⟩, with one extra row for the residual coupling
    let mut proj = DMatrix::from_element(m + 1, m, T::zero());
    let mut start = 0;
    let mut matvecs = 0;
    let mut w = vec![T::zero(); n];

    loop {
        let mut size = m;
        for j in start..m {
            h.matvec(&basis[j], &mut w);
            matvecs += 1;
            let coeffs = orthogonalize(&basis, &mut w);
            for (i, c) in coeffs.into_iter().enumerate() {
                proj[(i, j)] = c;
            }
            let beta = norm(&w);
            let scale_ref = proj[(j, j)].modulus().max(1.0);
            if j + 1 == m {
                if beta > 0.0 {
                    scale(T::from_real(1.0 / beta), &mut w);
                }
                proj[(m, j)] = T::from_real(beta);
                basis.push(w.clone());
                break;
            }
            if beta <= 1e-12 * scale_ref {
                // invariant subspace: continue from a fresh direction
                proj[(j + 1, j)] = T::zero();
                match fresh(&mut rng, &basis) {
                    Some(v) => basis.push(v),
                    None => {
                        size = j + 1;
                        break;
                    }
                }
            } else {
                scale(T::from_real(1.0 / beta), &mut w);
                proj[(j + 1, j)] = T::from_real(beta);
                basis.push(w.clone());
            }
        }

        let t = proj.view((0, 0), (size, size)).into_owned();
        let t = (&t + t.adjoint()).scale(0.5);
        let eig = t.symmetric_eigen();
        let mut order: Vec<usize> = (0..size).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        let tail = if size == m { Some(&basis[m]) } else { None };
        let resid = |idx: usize| -> f64 {
            if size < m {
                0.0
            } else {
                (proj[(m, m - 1)] * eig.eigenvectors[(m - 1, idx)]).modulus()
            }
        };
        let wanted = k.min(size);
        let converged = (0..wanted).all(|r| {
            let idx = order[r];
            resid(idx) <= opts.tol * eig.eigenvalues[idx].abs().max(1.0)
        });
        let last_residual = (0..wanted).map(|r| resid(order[r])).fold(0.0, f64::max);

        if converged || size < m {
            let mut values = Vec::with_capacity(wanted);
            let mut vectors = Vec::with_capacity(wanted);
            let mut residuals = Vec::with_capacity(wanted);
            for &idx in order.iter().take(wanted) {
                let mut x = combine(&basis[..size], eig.eigenvectors.column(idx).as_slice());
                let nx = norm(&x);
                scale(T::from_real(1.0 / nx), &mut x);
                let theta = h.expectation(&x).real();
                h.matvec(&x, &mut w);
                axpy(T::from_real(-theta), &x, &mut w);
                values.push(theta);
                residuals.push(norm(&w));
                vectors.push(x);
            }
            if wanted < k {
                return Err(Error::Convergence {
                    iterations: matvecs,
                    residual: f64::NAN,
                });
            }
            return Ok(Eigenpairs {
                values,
                vectors,
                residuals,
                matvecs,
            });
        }
        if matvecs >= opts.max_matvecs {
            return Err(Error::Convergence {
                iterations: matvecs,
                residual: last_residual,
            });
        }

        // thick restart: keep the lowest `keep` Ritz vectors plus the residual direction
        let keep = (k + (m - k) / 3).max(k + 1).min(m - 2);
        let tail = tail.unwrap().clone();
        let mut new_basis = Vec::with_capacity(m + 1);
        let mut new_proj = DMatrix::from_element(m + 1, m, T::zero());
        let beta = proj[(m, m - 1)];
        for (slot, &idx) in order.iter().take(keep).enumerate() {
            new_basis.push(combine(&basis[..m], eig.eigenvectors.column(idx).as_slice()));
            new_proj[(slot, slot)] = T::from_real(eig.eigenvalues[idx]);
            let s = beta * eig.eigenvectors[(m - 1, idx)];
            new_proj[(keep, slot)] = s;
            new_proj[(slot, keep)] = s.conjugate();
        }
        new_basis.push(tail);
        basis = new_basis;
        proj = new_proj;
        start = keep;
    }
}

/// Removes the components of `v` along the (orthonormal) `basis` twice and
/// returns the accumulated coefficients `⟨b_i, v⟩`.
fn orthogonalize<T: Field>(basis: &[Vec<T>], v: &mut [T]) -> Vec<T> {
    let mut total = vec![T::zero(); basis.len()];
    for _ in 0..2 {
        for (i, b) in basis.iter().enumerate() {
            let c = dot(b, v);
            axpy(-c, b, v);
            total[i] += c;
        }
    }
    total
}

fn combine<T: Field>(basis: &[Vec<T>], coeffs: &[T]) -> Vec<T> {
    let mut x = vec![T::zero(); basis[0].len()];
    for (b, &c) in basis.iter().zip(coeffs) {
        axpy(c, b, &mut x);
    }
    x
}

fn dense<T: Field>(h: &CsrMatrix<T>, k: usize) -> Result<Eigenpairs<T>> {
    let d = h.to_dense();
    let d = (&d + d.adjoint()).scale(0.5);
    let eig = d.symmetric_eigen();
    let mut order: Vec<usize> = (0..h.dim()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let mut out = Eigenpairs {
        values: Vec::new(),
        vectors: Vec::new(),
        residuals: Vec::new(),
        matvecs: 0,
    };
    let mut w = vec![T::zero(); h.dim()];
    for &idx in order.iter().take(k) {
        let x: Vec<T> = eig.eigenvectors.column(idx).iter().copied().collect();
        h.matvec(&x, &mut w);
        axpy(T::from_real(-eig.eigenvalues[idx]), &x, &mut w);
        out.values.push(eig.eigenvalues[idx]);
        out.residuals.push(norm(&w));
        out.vectors.push(x);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64 as C64;

    fn chain(n: usize) -> CsrMatrix<f64> {
        // 1D Laplacian with a weak potential; eigenvalues are close together at the bottom
        let mut t = Vec::new();
        for i in 0..n {
            t.push((i, i, 2.0 + 1e-3 * (i as f64).sin()));
            if i + 1 < n {
                t.push((i, i + 1, -1.0));
                t.push((i + 1, i, -1.0));
            }
        }
        CsrMatrix::from_triplets(n, t)
    }

    #[test]
    fn diagonal_minimum() {
        let n = 1000;
        let h = CsrMatrix::from_triplets(n, (0..n).map(|i| (i, i, ((i * 7919) % 1000) as f64 + 0.5)).collect());
        let r = lowest_eigenpairs(&h, 2, &LanczosOptions::default()).unwrap();
        assert!((r.values[0] - 0.5).abs() < 1e-10);
        assert!((r.values[1] - 1.5).abs() < 1e-10);
    }

    #[test]
    fn matches_dense_on_a_chain() {
        let n = 600;
        let h = chain(n);
        let r = lowest_eigenpairs(&h, 3, &LanczosOptions::default()).unwrap();
        let mut exact: Vec<f64> = h.to_dense().symmetric_eigen().eigenvalues.iter().copied().collect();
        exact.sort_by(f64::total_cmp);
        for i in 0..3 {
            assert!((r.values[i] - exact[i]).abs() < 1e-9, "{i}: {} vs {}", r.values[i], exact[i]);
            assert!(r.residuals[i] < 1e-8);
        }
    }

    #[test]
    fn complex_hermitian() {
        let n = 400;
        let mut t = Vec::new();
        for i in 0..n {
            t.push((i, i, C64::new(i as f64 * 0.01, 0.0)));
            if i + 1 < n {
                t.push((i, i + 1, C64::new(0.0, 0.3)));
                t.push((i + 1, i, C64::new(0.0, -0.3)));
            }
        }
        let h = CsrMatrix::from_triplets(n, t);
        let r = lowest_eigenpairs(&h, 1, &LanczosOptions::default()).unwrap();
        let exact = h.to_dense().symmetric_eigen().eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
        assert!((r.values[0] - exact).abs() < 1e-9);
    }

    #[test]
    fn deterministic_for_fixed_seed() {
        let h = chain(800);
        let a = lowest_eigenpairs(&h, 1, &LanczosOptions::default()).unwrap();
        let b = lowest_eigenpairs(&h, 1, &LanczosOptions::default()).unwrap();
        assert_eq!(a.values, b.values);
        assert_eq!(a.vectors, b.vectors);
    }

    #[test]
    fn budget_exhaustion_reports_convergence_error() {
        let opts = LanczosOptions {
            max_matvecs: 50,
            krylov_dim: 20,
            ..Default::default()
        };
        let big = chain(DENSE_LIMIT + 500);
        assert!(matches!(lowest_eigenpairs(&big, 1, &opts), Err(Error::Convergence { .. })));
    }
}
