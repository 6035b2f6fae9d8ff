//! Canonical equilibrium state `ρ = e^{−H/T} / Z`.
//!
//! Boltzmann weights are always evaluated relative to the lowest level,
//! `e^{−(Eᵢ − E_min)/T}`, so the state itself never overflows. The
//! closed-form partition function is unshifted and can overflow for very
//! small `T`.

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eig, ComplexMatrix};
use crate::model::{analytic_spectrum, Level, ModelParams};
use crate::scalar::{lit, Real};

/// Hermitian, unit-trace, positive semidefinite matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix<T> {
    mat: ComplexMatrix<T>,
}

impl<T: Real> DensityMatrix<T> {
    /// Validates Hermiticity and trace against `T::default_tol()` and the
    /// smallest eigenvalue against `−100·T::default_tol()`.
    pub fn new(mat: ComplexMatrix<T>) -> Result<Self> {
        let tol = T::default_tol();
        mat.ensure_finite()?;
        let dev = mat.hermiticity_deviation();
        if dev > tol {
            return Err(Error::InvalidState(format!(
                "not Hermitian (deviation {dev:e})"
            )));
        }
        let tr = mat.trace();
        if (tr.re - T::one()).abs() > tol || tr.im.abs() > tol {
            return Err(Error::InvalidState(format!("trace {tr} differs from 1")));
        }
        let spec = hermitian_eig(&mat, tol)?;
        let min = spec.eigenvalues[0];
        if min < -lit::<T>(100.0) * tol {
            return Err(Error::InvalidState(format!("negative eigenvalue {min:e}")));
        }
        Ok(Self { mat })
    }

    /// For states that are valid by construction.
    pub(crate) fn from_trusted(mat: ComplexMatrix<T>) -> Self {
        Self { mat }
    }

    /// Pure state `|ψ⟩⟨ψ|`; `psi` is normalized first.
    pub fn pure(psi: &[num_complex::Complex<T>]) -> Result<Self> {
        let norm = psi.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt();
        if !norm.is_finite() || norm <= T::zero() {
            return Err(Error::InvalidState(
                "state vector has zero or non-finite norm".into(),
            ));
        }
        let unit: Vec<_> = psi.iter().map(|&z| z / norm).collect();
        Ok(Self::from_trusted(ComplexMatrix::outer(&unit)))
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self::from_trusted(ComplexMatrix::identity(dim).scale_real(T::one() / lit(dim as f64)))
    }

    pub fn matrix(&self) -> &ComplexMatrix<T> {
        &self.mat
    }

    pub fn into_matrix(self) -> ComplexMatrix<T> {
        self.mat
    }

    pub fn dim(&self) -> usize {
        self.mat.dim()
    }

    /// `Tr ρ²`
    pub fn purity(&self) -> T {
        // Tr(ρ²) = Σ |ρ_ij|² for Hermitian ρ.
        self.mat.as_slice().iter().map(|z| z.norm_sqr()).sum()
    }
}

fn check_temperature<T: Real>(temperature: T) -> Result<()> {
    if temperature > T::zero() && temperature.is_finite() {
        Ok(())
    } else {
        Err(Error::NonpositiveTemperature(
            temperature.to_f64().unwrap_or(f64::NAN),
        ))
    }
}

/// Closed-form `Z` for the dimer:
///
/// ```text
/// Z = 2e^{−βK} cosh(βJ) (1 + 2cosh(βB)) + 2e^{−β(K+J)} cosh(2βB) + e^{−β(4K−2J)}
/// ```
pub fn partition_function<T: Real>(p: &ModelParams<T>) -> Result<T> {
    check_temperature(p.temperature)?;
    let beta = p.temperature.recip();
    let (j, k, b) = (p.bilinear, p.biquadratic, p.field);
    let two = lit::<T>(2.0);
    let mixed = two * (-beta * k).exp() * (beta * j).cosh() * (T::one() + two * (beta * b).cosh());
    let stretched = two * (-beta * (k + j)).exp() * (two * beta * b).cosh();
    let singlet = (-beta * (lit::<T>(4.0) * k - two * j)).exp();
    Ok(mixed + stretched + singlet)
}

/// `Σᵢ e^{−Eᵢ/T}`, summed directly.
pub fn spectral_partition_function<T: Real>(energies: &[T], temperature: T) -> Result<T> {
    check_temperature(temperature)?;
    Ok(energies.iter().map(|&e| (-e / temperature).exp()).sum())
}

/// Weights `e^{−(Eᵢ − E_min)/T}`, unnormalized.
pub fn shifted_boltzmann_weights<T: Real>(energies: &[T], temperature: T) -> Result<Vec<T>> {
    check_temperature(temperature)?;
    let e_min = energies.iter().copied().fold(T::infinity(), T::min);
    Ok(energies
        .iter()
        .map(|&e| (-(e - e_min) / temperature).exp())
        .collect())
}

/// Thermal state assembled from explicit orthonormal levels.
pub fn gibbs_state_from_levels<T: Real>(
    levels: &[Level<T>],
    temperature: T,
) -> Result<DensityMatrix<T>> {
    let energies: Vec<T> = levels.iter().map(|l| l.energy).collect();
    let weights = shifted_boltzmann_weights(&energies, temperature)?;
    let z: T = weights.iter().copied().sum();
    let dim = levels[0].state.len();
    let mut rho = ComplexMatrix::zeros(dim);
    for (level, &w) in levels.iter().zip(&weights) {
        let w = w / z;
        if w.is_zero() {
            continue;
        }
        for i in 0..dim {
            let vi = level.state[i] * w;
            for j in 0..dim {
                rho[(i, j)] += vi * level.state[j].conj();
            }
        }
    }
    Ok(DensityMatrix::from_trusted(rho))
}

/// Thermal state of the dimer built from the closed-form levels.
pub fn gibbs_state<T: Real>(p: &ModelParams<T>) -> Result<DensityMatrix<T>> {
    check_temperature(p.temperature)?;
    gibbs_state_from_levels(&analytic_spectrum(p).levels, p.temperature)
}

/// Thermal state of an arbitrary Hermitian `h` through its numerical
/// eigendecomposition.
pub fn gibbs_state_numeric<T: Real>(
    h: &ComplexMatrix<T>,
    temperature: T,
) -> Result<DensityMatrix<T>> {
    check_temperature(temperature)?;
    let spec = hermitian_eig(h, T::default_tol())?;
    let weights = shifted_boltzmann_weights(&spec.eigenvalues, temperature)?;
    let z: T = weights.iter().copied().sum();
    let normalized: Vec<T> = weights.iter().map(|&w| w / z).collect();
    let rho = spec.weighted_sum(&normalized);
    Ok(DensityMatrix::from_trusted(rho))
}
