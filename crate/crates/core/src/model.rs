//! Two-site spin-1 dimer with bilinear and biquadratic exchange in a
//! longitudinal field:
//!
//! ```text
//! H = J (S₁·S₂) + K (S₁·S₂)² + B (S₁z + S₂z)
//! ```
//!
//! Product basis `|m₁, m₂⟩` with `m ∈ {1, 0, −1}` descending, site 1 major,
//! so index = `3·(1 − m₁) + (1 − m₂)`.

use num_complex::Complex;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{kron, ComplexMatrix};
use crate::scalar::{lit, Real};

/// Local dimension of one spin-1 site.
pub const SITE_DIM: usize = 3;
/// Hilbert space dimension of the dimer.
pub const DIMER_DIM: usize = SITE_DIM * SITE_DIM;

/// Couplings, field and temperature, in units with `k_B = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModelParams<T> {
    /// `J`, coefficient of `S₁·S₂`.
    pub bilinear: T,
    /// `K`, coefficient of `(S₁·S₂)²`.
    pub biquadratic: T,
    /// `B`, longitudinal field.
    pub field: T,
    /// `T ≥ 0`. Thermal operations additionally require `T > 0`.
    pub temperature: T,
}

impl<T: Real> ModelParams<T> {
    pub fn new(bilinear: T, biquadratic: T, field: T, temperature: T) -> Result<Self> {
        let p = Self {
            bilinear,
            biquadratic,
            field,
            temperature,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("J", self.bilinear),
            ("K", self.biquadratic),
            ("B", self.field),
            ("T", self.temperature),
        ] {
            if !v.is_finite() {
                return Err(Error::NonFinite(format!("parameter {name}")));
            }
        }
        if self.temperature < T::zero() {
            return Err(Error::NonpositiveTemperature(
                self.temperature.to_f64().unwrap_or(f64::NAN),
            ));
        }
        Ok(())
    }

    pub fn with_field(self, field: T) -> Self {
        Self { field, ..self }
    }

    pub fn with_temperature(self, temperature: T) -> Self {
        Self {
            temperature,
            ..self
        }
    }
}

/// Bose-Hubbard inputs: hopping `t` and the spin-0 / spin-2 channel
/// repulsions `U₀`, `U₂`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HubbardParams<T> {
    pub hopping: T,
    pub repulsion_spin0: T,
    pub repulsion_spin2: T,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HubbardCouplings<T> {
    pub bilinear: T,
    pub biquadratic: T,
    /// Constant energy offset `ε = J − K`. Not part of [`build_hamiltonian`].
    pub offset: T,
}

/// Second-order strong-coupling map from Hubbard parameters:
/// `J = −2t²/U₂`, `K = −2t²/(3U₂) − 4t²/U₀`, `ε = J − K`.
pub fn couplings_from_hubbard<T: Real>(h: HubbardParams<T>) -> Result<HubbardCouplings<T>> {
    if h.repulsion_spin0.is_zero() {
        return Err(Error::ZeroRepulsion { channel: 0 });
    }
    if h.repulsion_spin2.is_zero() {
        return Err(Error::ZeroRepulsion { channel: 2 });
    }
    let t2 = h.hopping * h.hopping;
    let bilinear = -lit::<T>(2.0) * t2 / h.repulsion_spin2;
    let biquadratic = -lit::<T>(2.0) * t2 / (lit::<T>(3.0) * h.repulsion_spin2)
        - lit::<T>(4.0) * t2 / h.repulsion_spin0;
    Ok(HubbardCouplings {
        bilinear,
        biquadratic,
        offset: bilinear - biquadratic,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpinOperators<T> {
    pub x: ComplexMatrix<T>,
    pub y: ComplexMatrix<T>,
    pub z: ComplexMatrix<T>,
}

/// Spin-1 matrices in the `m = 1, 0, −1` basis.
pub fn spin1_operators<T: Real>() -> SpinOperators<T> {
    let zero = T::zero();
    let h = T::FRAC_1_SQRT_2();
    let re = |x: T| Complex::new(x, zero);
    let im = |x: T| Complex::new(zero, x);
    let o = Complex::zero();
    let x = ComplexMatrix::from_fn(SITE_DIM, |i, j| if i.abs_diff(j) == 1 { re(h) } else { o });
    // Upper off-diagonal −i/√2, lower +i/√2.
    let y = ComplexMatrix::from_fn(SITE_DIM, |i, j| {
        if j == i + 1 {
            im(-h)
        } else if i == j + 1 {
            im(h)
        } else {
            o
        }
    });
    let z = ComplexMatrix::from_real_diag(&[T::one(), zero, -T::one()]);
    SpinOperators { x, y, z }
}

/// `S₁·S₂ = Σ_a S_a ⊗ S_a`.
pub fn spin_exchange<T: Real>() -> ComplexMatrix<T> {
    let s = spin1_operators::<T>();
    let xx = kron(&s.x, &s.x);
    let yy = kron(&s.y, &s.y);
    let zz = kron(&s.z, &s.z);
    &(&xx + &yy) + &zz
}

/// `S₁z ⊗ I + I ⊗ S₂z`.
pub fn total_sz<T: Real>() -> ComplexMatrix<T> {
    let s = spin1_operators::<T>();
    let id = ComplexMatrix::identity(SITE_DIM);
    &kron(&s.z, &id) + &kron(&id, &s.z)
}

/// The 9×9 Hamiltonian. The temperature field of `p` is ignored.
pub fn build_hamiltonian<T: Real>(p: &ModelParams<T>) -> ComplexMatrix<T> {
    let d = spin_exchange::<T>();
    let d2 = &d * &d;
    let bilinear = d.scale_real(p.bilinear);
    let biquadratic = d2.scale_real(p.biquadratic);
    let zeeman = total_sz::<T>().scale_real(p.field);
    &(&bilinear + &biquadratic) + &zeeman
}

/// Index of `|m₁, m₂⟩` in the product basis.
pub fn basis_index(m1: i8, m2: i8) -> usize {
    assert!((-1..=1).contains(&m1) && (-1..=1).contains(&m2));
    (3 * (1 - m1) + (1 - m2)) as usize
}

#[derive(Debug, Clone, PartialEq)]
pub struct Level<T> {
    /// 1..=9, matching the conventional numbering of the nine eigenstates.
    pub label: u8,
    pub energy: T,
    pub state: Vec<Complex<T>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnalyticSpectrum<T> {
    pub levels: Vec<Level<T>>,
}

impl<T: Real> AnalyticSpectrum<T> {
    pub fn level(&self, label: u8) -> &Level<T> {
        &self.levels[usize::from(label) - 1]
    }

    pub fn energies(&self) -> Vec<T> {
        self.levels.iter().map(|l| l.energy).collect()
    }

    pub fn min_energy(&self) -> T {
        self.levels
            .iter()
            .map(|l| l.energy)
            .fold(T::infinity(), T::min)
    }
}

fn ket<T: Real>(terms: &[(i8, i8, T)]) -> Vec<Complex<T>> {
    let mut v = vec![Complex::zero(); DIMER_DIM];
    for &(m1, m2, amp) in terms {
        v[basis_index(m1, m2)] += Complex::new(amp, T::zero());
    }
    v
}

/// The nine closed-form levels. States are fixed vectors; within degenerate
/// levels they are one particular choice of basis.
pub fn analytic_spectrum<T: Real>(p: &ModelParams<T>) -> AnalyticSpectrum<T> {
    let (j, k, b) = (p.bilinear, p.biquadratic, p.field);
    let two = lit::<T>(2.0);
    let one = T::one();
    let h = T::FRAC_1_SQRT_2();
    let r6 = one / lit::<T>(6.0).sqrt();
    let r3 = one / lit::<T>(3.0).sqrt();

    let table: [(T, Vec<Complex<T>>); 9] = [
        (k + j - b, ket(&[(0, -1, h), (-1, 0, h)])),
        (k + j + b, ket(&[(1, 0, h), (0, 1, h)])),
        (k - j + b, ket(&[(1, 0, -h), (0, 1, h)])),
        (k - j - b, ket(&[(0, -1, -h), (-1, 0, h)])),
        (k + j, ket(&[(1, -1, r6), (-1, 1, r6), (0, 0, two * r6)])),
        (k - j, ket(&[(1, -1, h), (-1, 1, -h)])),
        (k + j + two * b, ket(&[(1, 1, one)])),
        (k + j - two * b, ket(&[(-1, -1, one)])),
        (
            lit::<T>(4.0) * k - two * j,
            ket(&[(1, -1, r3), (-1, 1, r3), (0, 0, -r3)]),
        ),
    ];
    AnalyticSpectrum {
        levels: table
            .into_iter()
            .enumerate()
            .map(|(i, (energy, state))| Level {
                label: i as u8 + 1,
                energy,
                state,
            })
            .collect(),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GroundState<T> {
    /// All labels within the tie tolerance of the minimum, ascending.
    pub labels: Vec<u8>,
    pub energy: T,
}

/// Ground level(s) of the closed-form spectrum. Levels within
/// `T::default_tol()` of the minimum are reported together.
pub fn ground_state<T: Real>(p: &ModelParams<T>) -> GroundState<T> {
    let spec = analytic_spectrum(p);
    let energy = spec.min_energy();
    let tol = T::default_tol();
    let labels = spec
        .levels
        .iter()
        .filter(|l| l.energy - energy <= tol)
        .map(|l| l.label)
        .collect();
    GroundState { labels, energy }
}
