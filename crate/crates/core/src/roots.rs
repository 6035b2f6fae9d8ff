//! Bracketed bisection.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{lit, Real};

/// Outcome of a bracketed root search.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThresholdResult<T> {
    /// Midpoint of the final bracket.
    pub value: T,
    pub bracket: (T, T),
    pub iterations: usize,
    pub converged: bool,
}

/// Stopping rule for [`bisect`].
#[derive(Debug, Clone, Copy)]
pub struct BisectOptions<T> {
    /// Required final bracket width.
    pub x_tol: T,
    /// When set, `|f(midpoint)|` must also be within this bound.
    pub f_tol: Option<T>,
    pub max_iterations: usize,
}

/// Bisects `f` on `[lo, hi]`, which must straddle a sign change
/// (`f(lo) > 0 ≥ f(hi)` or `f(lo) ≤ 0 < f(hi)`).
///
/// Returns `converged: false` rather than an error when the iteration budget
/// runs out; the bracket is still valid.
pub fn bisect<T: Real>(
    mut f: impl FnMut(T) -> Result<T>,
    lo: T,
    hi: T,
    opts: BisectOptions<T>,
) -> Result<ThresholdResult<T>> {
    let (mut lo, mut hi) = (lo, hi);
    let f_lo = f(lo)?;
    let f_hi = f(hi)?;
    let lo_positive = f_lo > T::zero();
    if lo_positive == (f_hi > T::zero()) {
        return Err(Error::NoRoot(format!(
            "no sign change on [{lo}, {hi}] (f = {f_lo:e}, {f_hi:e})"
        )));
    }
    let half = lit::<T>(0.5);
    let mut iterations = 0;
    loop {
        let mid = lo + (hi - lo) * half;
        if hi - lo <= opts.x_tol {
            let f_ok = match opts.f_tol {
                None => true,
                Some(ft) => f(mid)?.abs() <= ft,
            };
            if f_ok {
                return Ok(ThresholdResult {
                    value: mid,
                    bracket: (lo, hi),
                    iterations,
                    converged: true,
                });
            }
        }
        if iterations >= opts.max_iterations || mid <= lo || mid >= hi {
            return Ok(ThresholdResult {
                value: mid,
                bracket: (lo, hi),
                iterations,
                converged: false,
            });
        }
        let f_mid = f(mid)?;
        if (f_mid > T::zero()) == lo_positive {
            lo = mid;
        } else {
            hi = mid;
        }
        iterations += 1;
    }
}
