//! Exact thermal entanglement of a two-site spin-1 dimer with bilinear and
//! biquadratic exchange in a longitudinal field.
//!
//! The numerical core is generic over the real scalar ([`Real`], implemented
//! for `f64` and `f32`); the aliases below fix it to a concrete precision.

pub mod analysis;
pub mod cli;
pub mod entanglement;
pub mod error;
pub mod linalg;
pub mod model;
pub mod output;
pub mod recipes;
pub mod roots;
pub mod scalar;
pub mod thermal;

pub use error::{Error, Result};
pub use scalar::Real;

pub use analysis::{Axis, Param, SweepGrid, SweepSpec};
pub use entanglement::NegativityResult;
pub use linalg::{ComplexMatrix, Spectrum};
pub use model::{AnalyticSpectrum, HubbardParams, ModelParams};
pub use roots::ThresholdResult;
pub use thermal::DensityMatrix;

pub type ComplexMatrixF64 = ComplexMatrix<f64>;
pub type ComplexMatrixF32 = ComplexMatrix<f32>;
pub type SpectrumF64 = Spectrum<f64>;
pub type SpectrumF32 = Spectrum<f32>;
pub type ModelParamsF64 = ModelParams<f64>;
pub type ModelParamsF32 = ModelParams<f32>;
pub type HubbardParamsF64 = HubbardParams<f64>;
pub type AnalyticSpectrumF64 = AnalyticSpectrum<f64>;
pub type DensityMatrixF64 = DensityMatrix<f64>;
pub type DensityMatrixF32 = DensityMatrix<f32>;
pub type NegativityResultF64 = NegativityResult<f64>;
pub type ThresholdResultF64 = ThresholdResult<f64>;
pub type SweepSpecF64 = SweepSpec<f64>;
pub type SweepGridF64 = SweepGrid<f64>;
