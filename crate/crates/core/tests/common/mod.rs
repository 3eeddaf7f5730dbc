//! Brute-force Fock-space treatment of a quadratic form, used as an oracle.
#![allow(dead_code)]

use dicke_hp::ed;
use dicke_hp::gaussian::QuadraticForm;
use dicke_hp::lanczos::{lowest_eigenpairs, LanczosOptions};
use dicke_hp::sparse::CsrMatrix;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A weakly coupled, stable form with frequencies in [1, 2].
pub fn random_form(rng: &mut ChaCha8Rng, n: usize) -> QuadraticForm {
    let mut c = |scale: f64| C64::new(rng.random_range(-scale..scale), rng.random_range(-scale..scale));
    let mut a = DMatrix::from_element(n, n, C64::new(0.0, 0.0));
    let mut b = DMatrix::from_element(n, n, C64::new(0.0, 0.0));
    for i in 0..n {
        a[(i, i)] = C64::new(1.0 + c(0.5).re.abs() * 2.0, 0.0);
        b[(i, i)] = c(0.12);
        for j in i + 1..n {
            let z = c(0.1);
            a[(i, j)] = z;
            a[(j, i)] = z.conj();
            let w = c(0.1);
            b[(i, j)] = w;
            b[(j, i)] = w;
        }
    }
    let d = DVector::from_fn(n, |_, _| c(0.15));
    QuadraticForm::new(a, b, d, 0.0).unwrap()
}

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `form` on `levels` Fock states per mode; mode 0 is the outermost index.
pub fn fock_hamiltonian(form: &QuadraticForm, levels: usize) -> CsrMatrix<C64> {
    let n = form.n_modes();
    let dim = levels.pow(n as u32);
    let digits = |mut idx: usize| {
        let mut occ = vec![0usize; n];
        for m in (0..n).rev() {
            occ[m] = idx % levels;
            idx /= levels;
        }
        occ
    };
    let index = |occ: &[usize]| occ.iter().fold(0, |acc, &k| acc * levels + k);
    // apply ladder operators right to left; `true` is a creation operator
    let apply = |occ: &[usize], ops: &[(usize, bool)]| -> Option<(usize, f64)> {
        let mut occ = occ.to_vec();
        let mut amp = 1.0;
        for &(m, create) in ops.iter().rev() {
            if create {
                if occ[m] + 1 >= levels {
                    return None;
                }
                occ[m] += 1;
                amp *= (occ[m] as f64).sqrt();
            } else {
                if occ[m] == 0 {
                    return None;
                }
                amp *= (occ[m] as f64).sqrt();
                occ[m] -= 1;
            }
        }
        Some((index(&occ), amp))
    };
    let (a, b, d) = (form.a(), form.b(), form.d());
    let mut t = Vec::new();
    for col in 0..dim {
        let occ = digits(col);
        let mut push = |ops: &[(usize, bool)], coeff: C64| {
            if coeff != C64::new(0.0, 0.0) {
                if let Some((row, amp)) = apply(&occ, ops) {
                    t.push((row, col, coeff * amp));
                }
            }
        };
        push(&[], C64::new(form.e0(), 0.0));
        for i in 0..n {
            push(&[(i, false)], d[i]);
            push(&[(i, true)], d[i].conj());
            for j in 0..n {
                push(&[(i, true), (j, false)], a[(i, j)]);
                push(&[(i, false), (j, false)], b[(i, j)] * 0.5);
                push(&[(i, true), (j, true)], b[(i, j)].conj() * 0.5);
            }
        }
    }
    CsrMatrix::from_triplets(dim, t)
}

pub struct FockGround {
    pub energies: Vec<f64>,
    /// Von Neumann entropy (bits) of mode 0.
    pub entropy: f64,
}

pub fn fock_ground(form: &QuadraticForm, levels: usize, k: usize) -> FockGround {
    let h = fock_hamiltonian(form, levels);
    let opts = LanczosOptions {
        tol: 1e-12,
        ..Default::default()
    };
    let pairs = lowest_eigenpairs(&h, k, &opts).unwrap();
    FockGround {
        entropy: ed::photon_entropy(&pairs.vectors[0], levels),
        energies: pairs.values,
    }
}
