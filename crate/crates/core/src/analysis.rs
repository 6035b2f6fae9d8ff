//! Critical field, the zero-field existence condition, threshold
//! temperatures and dense negativity sweeps.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::entanglement::negativity_at;
use crate::error::{Error, Result};
use crate::model::ModelParams;
use crate::roots::{bisect, BisectOptions, ThresholdResult};
use crate::scalar::{lit, Real};

/// Negativities at or below this are treated as "not entangled" when
/// locating boundaries.
pub const ZERO_NEGATIVITY_THRESHOLD: f64 = 1e-6;
pub const DEFAULT_BISECTION_TOL: f64 = 1e-8;
pub const MAX_BISECTION_ITERATIONS: usize = 200;
/// Log-spaced coarse temperature scan used by [`threshold_temperature_numeric`].
pub const SCAN_POINTS: usize = 200;
pub const SCAN_T_MIN: f64 = 1e-3;
pub const SCAN_T_MAX: f64 = 10.0;
/// Upper limit when growing a temperature bracket.
const MAX_BRACKET_T: f64 = 1e6;

/// Field at which the product state `|−1,−1⟩` crosses the singlet-like
/// level: `B_c = 3/2 (J − K)`.
pub fn critical_field<T: Real>(bilinear: T, biquadratic: T) -> T {
    lit::<T>(1.5) * (bilinear - biquadratic)
}

/// `ln((5 + 3e^x) / 2)` without overflow for large `x`.
fn ln_mixture<T: Real>(x: T) -> T {
    let (three, five) = (lit::<T>(3.0), lit::<T>(5.0));
    let ln2 = T::LN_2();
    if x > T::zero() {
        x + (three + five * (-x).exp()).ln() - ln2
    } else {
        (five + three * x.exp()).ln() - ln2
    }
}

/// Largest `K` at which the zero-field thermal state is entangled:
/// `J − (T/3) ln((5 + 3e^{2J/T}) / 2)`. Entanglement exists iff `K` is
/// strictly below this bound.
pub fn existence_bound_k<T: Real>(bilinear: T, temperature: T) -> Result<T> {
    if !temperature.is_finite() || temperature <= T::zero() {
        return Err(Error::NonpositiveTemperature(
            temperature.to_f64().unwrap_or(f64::NAN),
        ));
    }
    let x = lit::<T>(2.0) * bilinear / temperature;
    Ok(bilinear - temperature / lit::<T>(3.0) * ln_mixture(x))
}

/// Solves `existence_bound_k(J, T) = K` for `T` by bisection. The bracket
/// starts at `[1e-6, 10]` and its upper end doubles until the sign changes.
pub fn threshold_temperature_zero_field<T: Real>(
    bilinear: T,
    biquadratic: T,
    tol: T,
) -> Result<ThresholdResult<T>> {
    let f = |t: T| existence_bound_k(bilinear, t).map(|bound| bound - biquadratic);
    let lo = lit::<T>(1e-6);
    let mut hi = lit::<T>(10.0);
    if f(lo)? <= T::zero() {
        return Err(Error::NoRoot(format!(
            "K = {biquadratic} is not below the low-temperature bound J = {bilinear}"
        )));
    }
    while f(hi)? > T::zero() {
        hi = hi + hi;
        if hi > lit(MAX_BRACKET_T) {
            return Err(Error::NoRoot("threshold temperature beyond 1e6".into()));
        }
    }
    bisect(
        f,
        lo,
        hi,
        BisectOptions {
            x_tol: tol,
            f_tol: Some(tol),
            max_iterations: MAX_BISECTION_ITERATIONS,
        },
    )
}

/// The temperature scan grid of [`threshold_temperature_numeric`].
pub fn scan_temperatures<T: Real>() -> Vec<T> {
    let (a, b) = (SCAN_T_MIN.log10(), SCAN_T_MAX.log10());
    (0..SCAN_POINTS)
        .map(|i| {
            let e = a + (b - a) * i as f64 / (SCAN_POINTS - 1) as f64;
            lit(10f64.powf(e))
        })
        .collect()
}

/// Highest temperature at which the thermal negativity drops to zero.
///
/// Scans [`scan_temperatures`], then bisects between the last entangled scan
/// point and its successor. Since `N(T)` need not be monotonic, only the
/// topmost crossing is returned.
pub fn threshold_temperature_numeric<T: Real>(
    bilinear: T,
    biquadratic: T,
    field: T,
    tol: T,
) -> Result<ThresholdResult<T>> {
    let thr = lit::<T>(ZERO_NEGATIVITY_THRESHOLD);
    let at = |t: T| -> Result<T> {
        let p = ModelParams::new(bilinear, biquadratic, field, t)?;
        Ok(negativity_at(&p)? - thr)
    };
    let temps = scan_temperatures::<T>();
    let excess = temps
        .par_iter()
        .map(|&t| at(t))
        .collect::<Result<Vec<T>>>()?;
    let last = match excess.iter().rposition(|&g| g > T::zero()) {
        Some(i) => i,
        None => {
            return Err(Error::NeverEntangled {
                lo: SCAN_T_MIN,
                hi: SCAN_T_MAX,
            })
        }
    };
    let (lo, hi) = if last + 1 < temps.len() {
        (temps[last], temps[last + 1])
    } else {
        let mut lo = temps[last];
        let mut hi = lo + lo;
        while at(hi)? > T::zero() {
            lo = hi;
            hi = hi + hi;
            if hi > lit(MAX_BRACKET_T) {
                return Err(Error::NoRoot("threshold temperature beyond 1e6".into()));
            }
        }
        (lo, hi)
    };
    bisect(
        at,
        lo,
        hi,
        BisectOptions {
            x_tol: tol,
            f_tol: None,
            max_iterations: MAX_BISECTION_ITERATIONS,
        },
    )
}

/// Where, along `axis` between `lo` and `hi` (all other values from
/// `base`), the negativity crosses [`ZERO_NEGATIVITY_THRESHOLD`].
pub fn negativity_crossing<T: Real>(
    base: ModelParams<T>,
    axis: Param,
    lo: T,
    hi: T,
    tol: T,
) -> Result<ThresholdResult<T>> {
    let thr = lit::<T>(ZERO_NEGATIVITY_THRESHOLD);
    bisect(
        |v| Ok(negativity_at(&axis.set(base, v))? - thr),
        lo,
        hi,
        BisectOptions {
            x_tol: tol,
            f_tol: None,
            max_iterations: MAX_BISECTION_ITERATIONS,
        },
    )
}

/// A model parameter that can be swept.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Param {
    #[serde(rename = "J")]
    Bilinear,
    #[serde(rename = "K")]
    Biquadratic,
    #[serde(rename = "B")]
    Field,
    #[serde(rename = "T")]
    Temperature,
}

impl Param {
    pub const ALL: [Param; 4] = [
        Param::Bilinear,
        Param::Biquadratic,
        Param::Field,
        Param::Temperature,
    ];

    pub fn symbol(self) -> &'static str {
        match self {
            Param::Bilinear => "J",
            Param::Biquadratic => "K",
            Param::Field => "B",
            Param::Temperature => "T",
        }
    }

    pub fn get<T: Real>(self, p: &ModelParams<T>) -> T {
        match self {
            Param::Bilinear => p.bilinear,
            Param::Biquadratic => p.biquadratic,
            Param::Field => p.field,
            Param::Temperature => p.temperature,
        }
    }

    pub fn set<T: Real>(self, mut p: ModelParams<T>, v: T) -> ModelParams<T> {
        match self {
            Param::Bilinear => p.bilinear = v,
            Param::Biquadratic => p.biquadratic = v,
            Param::Field => p.field = v,
            Param::Temperature => p.temperature = v,
        }
        p
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl FromStr for Param {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Param::ALL
            .into_iter()
            .find(|p| p.symbol() == s)
            .ok_or_else(|| {
                Error::InvalidAxis(format!("unknown parameter {s:?}, expected J, K, B or T"))
            })
    }
}

/// `count` equally spaced values from `min` to `max` inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Axis<T> {
    pub param: Param,
    pub min: T,
    pub max: T,
    pub count: usize,
}

impl<T: Real> Axis<T> {
    pub fn new(param: Param, min: T, max: T, count: usize) -> Self {
        Self {
            param,
            min,
            max,
            count,
        }
    }

    pub fn value(&self, i: usize) -> T {
        if i + 1 == self.count {
            self.max
        } else {
            let frac = lit::<T>(i as f64) / lit::<T>((self.count - 1) as f64);
            self.min + (self.max - self.min) * frac
        }
    }

    pub fn values(&self) -> Vec<T> {
        (0..self.count).map(|i| self.value(i)).collect()
    }

    fn validate(&self) -> Result<()> {
        if self.count < 2 {
            return Err(Error::InvalidAxis(format!(
                "axis {} needs at least 2 points, got {}",
                self.param, self.count
            )));
        }
        if !(self.min.is_finite() && self.max.is_finite()) {
            return Err(Error::InvalidAxis(format!(
                "axis {} has non-finite bounds",
                self.param
            )));
        }
        if self.min >= self.max {
            return Err(Error::InvalidAxis(format!(
                "axis {} must satisfy min < max (got {} .. {})",
                self.param, self.min, self.max
            )));
        }
        if self.param == Param::Temperature && self.min <= T::zero() {
            return Err(Error::NonpositiveTemperature(
                self.min.to_f64().unwrap_or(f64::NAN),
            ));
        }
        Ok(())
    }
}

/// Parses `NAME:MIN:MAX:COUNT`, e.g. `B:0:1:101`.
impl<T: Real> FromStr for Axis<T> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 4 {
            return Err(Error::InvalidAxis(format!(
                "expected NAME:MIN:MAX:COUNT, got {s:?}"
            )));
        }
        let param: Param = parts[0].parse()?;
        let num = |x: &str| {
            x.parse::<f64>()
                .ok()
                .and_then(T::from_f64)
                .ok_or_else(|| Error::InvalidAxis(format!("bad number {x:?} in {s:?}")))
        };
        let count = parts[3]
            .parse::<usize>()
            .map_err(|_| Error::InvalidAxis(format!("bad count {:?} in {s:?}", parts[3])))?;
        Ok(Axis::new(param, num(parts[1])?, num(parts[2])?, count))
    }
}

/// Two swept axes; the other two parameters come from `base`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSpec<T> {
    pub x: Axis<T>,
    pub y: Axis<T>,
    pub base: ModelParams<T>,
}

impl<T: Real> SweepSpec<T> {
    /// The two parameters held fixed, in `J, K, B, T` order.
    pub fn fixed(&self) -> Vec<(Param, T)> {
        Param::ALL
            .into_iter()
            .filter(|&p| p != self.x.param && p != self.y.param)
            .map(|p| (p, p.get(&self.base)))
            .collect()
    }

    pub fn validate(&self) -> Result<()> {
        if self.x.param == self.y.param {
            return Err(Error::InvalidAxis(format!(
                "both axes sweep {}",
                self.x.param
            )));
        }
        self.x.validate()?;
        self.y.validate()?;
        for (p, v) in self.fixed() {
            if !v.is_finite() {
                return Err(Error::NonFinite(format!("fixed parameter {p}")));
            }
            if p == Param::Temperature && v <= T::zero() {
                return Err(Error::NonpositiveTemperature(
                    v.to_f64().unwrap_or(f64::NAN),
                ));
            }
        }
        Ok(())
    }

    pub fn point(&self, ix: usize, iy: usize) -> ModelParams<T> {
        let p = self.x.param.set(self.base, self.x.value(ix));
        self.y.param.set(p, self.y.value(iy))
    }
}

/// Negativity on a dense grid, stored x-major: `values[ix * ny + iy]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepGrid<T> {
    pub x: Axis<T>,
    pub y: Axis<T>,
    pub fixed: Vec<(Param, T)>,
    pub values: Vec<T>,
}

impl<T: Real> SweepGrid<T> {
    pub fn get(&self, ix: usize, iy: usize) -> T {
        self.values[ix * self.y.count + iy]
    }

    /// `(x, y, negativity)` in storage order.
    pub fn rows(&self) -> impl Iterator<Item = (T, T, T)> + '_ {
        let ny = self.y.count;
        self.values
            .iter()
            .enumerate()
            .map(move |(idx, &v)| (self.x.value(idx / ny), self.y.value(idx % ny), v))
    }
}

/// Evaluates the thermal negativity at every grid point. Points are
/// independent, so the parallel evaluation returns exactly what a
/// sequential loop would.
pub fn sweep<T: Real>(spec: &SweepSpec<T>) -> Result<SweepGrid<T>> {
    spec.validate()?;
    let (nx, ny) = (spec.x.count, spec.y.count);
    let values = (0..nx * ny)
        .into_par_iter()
        .map(|idx| negativity_at(&spec.point(idx / ny, idx % ny)))
        .collect::<Result<Vec<T>>>()?;
    Ok(SweepGrid {
        x: spec.x,
        y: spec.y,
        fixed: spec.fixed(),
        values,
    })
}
