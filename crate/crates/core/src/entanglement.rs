//! Negativity `N(ρ) = (‖ρ^{T_A}‖₁ − 1)/2`, reported together with the
//! negative spectrum of the partial transpose it is built from.

use serde::Serialize;

use crate::error::Result;
use crate::linalg::{hermitian_eig, partial_transpose_a, partial_transpose_b, ComplexMatrix};
use crate::model::{ModelParams, SITE_DIM};
use crate::scalar::Real;
use crate::thermal::{gibbs_state, DensityMatrix};

/// Which tensor factor gets transposed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    A,
    B,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NegativityResult<T> {
    /// `Σ|negative eigenvalues|`, clamped to exactly 0 when at or below
    /// `T::default_tol()`.
    pub negativity: T,
    pub negative_eigenvalues: Vec<T>,
    pub trace_norm: T,
}

/// Negativity of a two-spin-1 state, transposing site A.
pub fn negativity<T: Real>(rho: &DensityMatrix<T>) -> Result<NegativityResult<T>> {
    negativity_bipartite(rho, SITE_DIM, SITE_DIM, Subsystem::A)
}

/// Validates `m` as a density matrix first.
pub fn negativity_of_matrix<T: Real>(m: ComplexMatrix<T>) -> Result<NegativityResult<T>> {
    negativity(&DensityMatrix::new(m)?)
}

pub fn negativity_bipartite<T: Real>(
    rho: &DensityMatrix<T>,
    dim_a: usize,
    dim_b: usize,
    transposed: Subsystem,
) -> Result<NegativityResult<T>> {
    let tol = T::default_tol();
    let pt = match transposed {
        Subsystem::A => partial_transpose_a(rho.matrix(), dim_a, dim_b)?,
        Subsystem::B => partial_transpose_b(rho.matrix(), dim_a, dim_b)?,
    };
    let spec = hermitian_eig(&pt, tol)?;
    let negative_eigenvalues: Vec<T> = spec
        .eigenvalues
        .iter()
        .copied()
        .filter(|&x| x < T::zero())
        .collect();
    let trace_norm = spec.eigenvalues.iter().map(|x| x.abs()).sum();
    let raw: T = negative_eigenvalues.iter().map(|x| x.abs()).sum();
    let negativity = if raw <= tol { T::zero() } else { raw };
    Ok(NegativityResult {
        negativity,
        negative_eigenvalues,
        trace_norm,
    })
}

/// Thermal negativity at `p` (requires `T > 0`).
pub fn negativity_at<T: Real>(p: &ModelParams<T>) -> Result<T> {
    Ok(negativity(&gibbs_state(p)?)?.negativity)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::model::analytic_spectrum;

    fn level_state(label: u8) -> DensityMatrix<f64> {
        let p = ModelParams::new(-0.4, -0.6, 0.1, 1.0).unwrap();
        DensityMatrix::pure(&analytic_spectrum(&p).level(label).state).unwrap()
    }

    #[test]
    fn canonical_pure_states() {
        assert_eq!(negativity(&level_state(7)).unwrap().negativity, 0.0);
        let n1 = negativity(&level_state(1)).unwrap();
        assert!((n1.negativity - 0.5).abs() < 1e-12);
        assert!((n1.trace_norm - 2.0).abs() < 1e-12);
        let n9 = negativity(&level_state(9)).unwrap();
        assert!((n9.negativity - 1.0).abs() < 1e-12);
        assert!((n9.negative_eigenvalues[0] + 1.0 / 3.0).abs() < 1e-12);
        assert_eq!(
            negativity(&DensityMatrix::<f64>::maximally_mixed(9))
                .unwrap()
                .negativity,
            0.0
        );
    }

    #[test]
    fn two_forms_agree() {
        for label in 1..=9 {
            let r = negativity(&level_state(label)).unwrap();
            assert!((r.negativity - (r.trace_norm - 1.0) / 2.0).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_invalid_state() {
        let m = ComplexMatrix::<f64>::identity(9);
        assert!(matches!(
            negativity_of_matrix(m),
            Err(Error::InvalidState(_))
        ));
    }

    #[test]
    fn low_temperature_endpoints() {
        let n: f64 = negativity_at(&ModelParams::new(-0.4, -0.6, 0.0, 1e-3).unwrap()).unwrap();
        assert!((n - 1.0).abs() < 1e-6);
        let n: f64 = negativity_at(&ModelParams::new(-0.4, -0.6, 0.5, 1e-3).unwrap()).unwrap();
        assert!(n.abs() < 1e-6);
    }

    #[test]
    fn single_precision_singlet() {
        let p = ModelParams::<f32>::new(-0.4, -0.6, 0.0, 1.0).unwrap();
        let rho = DensityMatrix::pure(&analytic_spectrum(&p).level(9).state).unwrap();
        assert!((negativity(&rho).unwrap().negativity - 1.0).abs() < 1e-5);
    }
}
