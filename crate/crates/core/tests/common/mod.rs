//! Reference computations that do not go through the library's eigensolver.

#![allow(dead_code)]

use dimer_entanglement::ComplexMatrixF64;
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Pure-state negativity from Schmidt coefficients, for states whose
/// 3×3 coefficient matrix has at most one nonzero entry per row and column.
/// Then the Schmidt coefficients are just the squared amplitudes.
pub fn schmidt_negativity(psi: &[Complex64]) -> f64 {
    let nz: Vec<(usize, usize, f64)> = psi
        .iter()
        .enumerate()
        .filter(|(_, c)| c.norm() > 1e-15)
        .map(|(i, c)| (i / 3, i % 3, c.norm_sqr()))
        .collect();
    for (a, &(ra, ca, _)) in nz.iter().enumerate() {
        for &(rb, cb, _) in &nz[a + 1..] {
            assert!(ra != rb && ca != cb, "state is not in Schmidt form");
        }
    }
    let s: f64 = nz.iter().map(|&(_, _, l)| l.sqrt()).sum();
    (s * s - 1.0) / 2.0
}

/// Zero-field threshold temperature by iterating
/// `T ← 3(J − K) / ln((5 + 3e^{2J/T}) / 2)`.
pub fn threshold_fixed_point(j: f64, k: f64) -> f64 {
    let mut t = 1.0f64;
    for _ in 0..10_000 {
        let next = 3.0 * (j - k) / ((5.0 + 3.0 * (2.0 * j / t).exp()) / 2.0).ln();
        if (next - t).abs() < 1e-15 {
            return next;
        }
        t = next;
    }
    t
}

/// Haar-ish random unitary from Gram-Schmidt on a complex Gaussian-like matrix.
pub fn random_unitary(rng: &mut ChaCha8Rng, n: usize) -> ComplexMatrixF64 {
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    while cols.len() < n {
        let mut v: Vec<Complex64> = (0..n)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        for c in &cols {
            let ip: Complex64 = c.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (x, a) in v.iter_mut().zip(c) {
                *x -= ip * a;
            }
        }
        let norm = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-3 {
            continue;
        }
        cols.push(v.into_iter().map(|x| x / norm).collect());
    }
    ComplexMatrixF64::from_fn(n, |i, j| cols[j][i])
}

/// Random Hermitian matrix with entries in the unit box.
pub fn random_hermitian(rng: &mut ChaCha8Rng, n: usize) -> ComplexMatrixF64 {
    let mut m = ComplexMatrixF64::zeros(n);
    for i in 0..n {
        m[(i, i)] = Complex64::new(rng.gen_range(-1.0..1.0), 0.0);
        for j in i + 1..n {
            let z = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            m[(i, j)] = z;
            m[(j, i)] = z.conj();
        }
    }
    m
}

pub fn sorted(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    v
}
