//! Small dense complex linear algebra: just enough for 9×9 operators.
//!
//! Matrices are square and stored row-major. The eigensolver is a cyclic
//! complex Jacobi iteration, which at these sizes converges in a handful of
//! sweeps and yields an orthonormal eigenbasis directly.

use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{lit, Real};

/// Sweep budget for [`hermitian_eig`].
pub const DEFAULT_MAX_SWEEPS: usize = 100;

#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix<T> {
    dim: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> ComplexMatrix<T> {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "matrix dimension must be at least 1");
        Self {
            dim,
            data: vec![Complex::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex::one();
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex<T>) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Builds a matrix from explicit rows, rejecting ragged input and
    /// non-finite entries.
    pub fn from_rows(rows: Vec<Vec<Complex<T>>>) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::DimensionMismatch {
                expected: 1,
                found: 0,
            });
        }
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        let m = Self { dim, data };
        m.ensure_finite()?;
        Ok(m)
    }

    /// Real rows convenience constructor.
    pub fn from_real_rows(rows: &[&[T]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Complex::new(x, T::zero())).collect())
                .collect(),
        )
    }

    pub fn from_real_diag(diag: &[T]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = Complex::new(d, T::zero());
        }
        m
    }

    /// Projector `|v⟩⟨v|` (no normalization applied).
    pub fn outer(v: &[Complex<T>]) -> Self {
        Self::from_fn(v.len(), |i, j| v[i] * v[j].conj())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[Complex<T>] {
        &self.data
    }

    pub fn ensure_finite(&self) -> Result<()> {
        match self
            .data
            .iter()
            .position(|z| !(z.re.is_finite() && z.im.is_finite()))
        {
            None => Ok(()),
            Some(idx) => Err(Error::NonFinite(format!(
                "matrix entry ({}, {})",
                idx / self.dim,
                idx % self.dim
            ))),
        }
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)])
    }

    pub fn trace(&self) -> Complex<T> {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn scale(&self, c: Complex<T>) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|&z| z * c).collect(),
        }
    }

    pub fn scale_real(&self, c: T) -> Self {
        self.scale(Complex::new(c, T::zero()))
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Complex<T>]) -> Vec<Complex<T>> {
        assert_eq!(
            v.len(),
            self.dim,
            "vector length must match matrix dimension"
        );
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self[(i, j)] * v[j]).sum())
            .collect()
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (*a - *b).norm())
            .fold(T::zero(), T::max)
    }

    pub fn max_abs(&self) -> T {
        self.data.iter().map(|z| z.norm()).fold(T::zero(), T::max)
    }

    pub fn frobenius_norm(&self) -> T {
        self.data.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt()
    }

    /// `max |M[i][j] - conj(M[j][i])|`.
    pub fn hermiticity_deviation(&self) -> T {
        let mut dev = T::zero();
        for i in 0..self.dim {
            for j in i..self.dim {
                dev = dev.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        dev
    }

    pub fn is_hermitian(&self, tol: T) -> bool {
        self.hermiticity_deviation() <= tol
    }

    fn ensure_hermitian(&self, tol: T) -> Result<()> {
        self.ensure_finite()?;
        let deviation = self.hermiticity_deviation();
        if deviation <= tol {
            Ok(())
        } else {
            Err(Error::NotHermitian {
                deviation: deviation.to_f64().unwrap_or(f64::NAN),
                tol: tol.to_f64().unwrap_or(f64::NAN),
            })
        }
    }
}

impl<T> Index<(usize, usize)> for ComplexMatrix<T> {
    type Output = Complex<T>;

    fn index(&self, (i, j): (usize, usize)) -> &Complex<T> {
        &self.data[i * self.dim + j]
    }
}

impl<T> IndexMut<(usize, usize)> for ComplexMatrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<T> {
        &mut self.data[i * self.dim + j]
    }
}

impl<T: Real> Mul for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;

    fn mul(self, rhs: Self) -> ComplexMatrix<T> {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let n = self.dim;
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl<T: Real> Add for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;

    fn add(self, rhs: Self) -> ComplexMatrix<T> {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        ComplexMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl<T: Real> Sub for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;

    fn sub(self, rhs: Self) -> ComplexMatrix<T> {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        ComplexMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

/// `[a, b] = ab - ba`
pub fn commutator<T: Real>(a: &ComplexMatrix<T>, b: &ComplexMatrix<T>) -> ComplexMatrix<T> {
    &(a * b) - &(b * a)
}

/// Kronecker product: entry `(i·dimB + k, j·dimB + l)` is `A[i][j]·B[k][l]`.
pub fn kron<T: Real>(a: &ComplexMatrix<T>, b: &ComplexMatrix<T>) -> ComplexMatrix<T> {
    let (na, nb) = (a.dim, b.dim);
    let mut out = ComplexMatrix::zeros(na * nb);
    for i in 0..na {
        for j in 0..na {
            let aij = a[(i, j)];
            for k in 0..nb {
                for l in 0..nb {
                    out[(i * nb + k, j * nb + l)] = aij * b[(k, l)];
                }
            }
        }
    }
    out
}

fn check_bipartite<T>(m: &ComplexMatrix<T>, dim_a: usize, dim_b: usize) -> Result<()> {
    if m.dim != dim_a * dim_b {
        return Err(Error::DimensionMismatch {
            expected: dim_a * dim_b,
            found: m.dim,
        });
    }
    Ok(())
}

/// Transposes the indices of the first tensor factor:
/// `out[(i,k),(j,l)] = m[(j,k),(i,l)]`.
pub fn partial_transpose_a<T: Real>(
    m: &ComplexMatrix<T>,
    dim_a: usize,
    dim_b: usize,
) -> Result<ComplexMatrix<T>> {
    check_bipartite(m, dim_a, dim_b)?;
    Ok(ComplexMatrix::from_fn(m.dim, |r, c| {
        let (i, k) = (r / dim_b, r % dim_b);
        let (j, l) = (c / dim_b, c % dim_b);
        m[(j * dim_b + k, i * dim_b + l)]
    }))
}

/// Transposes the indices of the second tensor factor:
/// `out[(i,k),(j,l)] = m[(i,l),(j,k)]`.
pub fn partial_transpose_b<T: Real>(
    m: &ComplexMatrix<T>,
    dim_a: usize,
    dim_b: usize,
) -> Result<ComplexMatrix<T>> {
    check_bipartite(m, dim_a, dim_b)?;
    Ok(ComplexMatrix::from_fn(m.dim, |r, c| {
        let (i, k) = (r / dim_b, r % dim_b);
        let (j, l) = (c / dim_b, c % dim_b);
        m[(i * dim_b + l, j * dim_b + k)]
    }))
}

/// Eigenvalues in ascending order with their unit eigenvectors.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum<T> {
    pub eigenvalues: Vec<T>,
    pub eigenvectors: Vec<Vec<Complex<T>>>,
}

impl<T: Real> Spectrum<T> {
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    /// `V · diag(f(λ)) · V†`
    pub fn map_reconstruct(&self, f: impl Fn(T) -> T) -> ComplexMatrix<T> {
        let weights: Vec<T> = self.eigenvalues.iter().map(|&x| f(x)).collect();
        self.weighted_sum(&weights)
    }

    /// `Σ_k w_k |v_k⟩⟨v_k|`
    pub fn weighted_sum(&self, weights: &[T]) -> ComplexMatrix<T> {
        assert_eq!(weights.len(), self.len(), "one weight per eigenpair");
        let n = self.len();
        let mut out = ComplexMatrix::zeros(n);
        for (&w, v) in weights.iter().zip(&self.eigenvectors) {
            for i in 0..n {
                let vi = v[i] * w;
                for j in 0..n {
                    out[(i, j)] += vi * v[j].conj();
                }
            }
        }
        out
    }

    pub fn reconstruct(&self) -> ComplexMatrix<T> {
        self.map_reconstruct(|x| x)
    }

    /// Largest `‖M·v_k − λ_k·v_k‖₂` over the spectrum.
    pub fn max_residual(&self, m: &ComplexMatrix<T>) -> T {
        self.eigenvalues
            .iter()
            .zip(&self.eigenvectors)
            .map(|(&lambda, v)| {
                m.apply(v)
                    .iter()
                    .zip(v)
                    .map(|(mv, vi)| (*mv - *vi * lambda).norm_sqr())
                    .sum::<T>()
                    .sqrt()
            })
            .fold(T::zero(), T::max)
    }
}

/// Eigendecomposition of a Hermitian matrix, default sweep budget.
pub fn hermitian_eig<T: Real>(m: &ComplexMatrix<T>, tol: T) -> Result<Spectrum<T>> {
    hermitian_eig_with(m, tol, DEFAULT_MAX_SWEEPS)
}

/// Cyclic complex Jacobi.
///
/// Each rotation first rephases the `(p, q)` pair so the pivot is real, then
/// applies an ordinary real Jacobi rotation. Iterates until the off-diagonal
/// Frobenius norm reaches machine precision relative to the matrix norm; if
/// the budget runs out first the result is still accepted when the
/// off-diagonal norm is within `tol`.
pub fn hermitian_eig_with<T: Real>(
    m: &ComplexMatrix<T>,
    tol: T,
    max_sweeps: usize,
) -> Result<Spectrum<T>> {
    m.ensure_hermitian(tol)?;
    let n = m.dim;
    // Symmetrize so the iteration starts from an exactly Hermitian matrix.
    let mut a = ComplexMatrix::from_fn(n, |i, j| {
        if i == j {
            Complex::new(m[(i, i)].re, T::zero())
        } else {
            (m[(i, j)] + m[(j, i)].conj()) * lit::<T>(0.5)
        }
    });
    let mut v = ComplexMatrix::<T>::identity(n);

    let frob = a.frobenius_norm();
    let target = T::epsilon() * frob;
    let mut off = off_diagonal_norm(&a);
    let mut sweeps = 0;
    while off > target && sweeps < max_sweeps {
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
        sweeps += 1;
        let next = off_diagonal_norm(&a);
        if next >= off && next <= tol {
            // Stalled at the rounding floor.
            off = next;
            break;
        }
        off = next;
    }
    if off > target && off > tol {
        return Err(Error::NoConvergence {
            sweeps,
            off_norm: off.to_f64().unwrap_or(f64::NAN),
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| a[(x, x)].re.partial_cmp(&a[(y, y)].re).unwrap());
    let eigenvalues = order.iter().map(|&k| a[(k, k)].re).collect();
    let eigenvectors = order
        .iter()
        .map(|&k| {
            let col: Vec<Complex<T>> = (0..n).map(|i| v[(i, k)]).collect();
            let norm = col.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt();
            col.into_iter().map(|z| z / norm).collect()
        })
        .collect();
    Ok(Spectrum {
        eigenvalues,
        eigenvectors,
    })
}

fn off_diagonal_norm<T: Real>(a: &ComplexMatrix<T>) -> T {
    let mut s = T::zero();
    for i in 0..a.dim {
        for j in 0..a.dim {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

fn rotate<T: Real>(a: &mut ComplexMatrix<T>, v: &mut ComplexMatrix<T>, p: usize, q: usize) {
    let apq = a[(p, q)];
    let mag = apq.norm();
    if mag.is_zero() {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    // Rephasing: e^{-iφ} with a_pq = |a_pq| e^{iφ}.
    let phase = apq.conj() / mag;

    let theta = (aqq - app) / (lit::<T>(2.0) * mag);
    let t = if theta.is_infinite() {
        T::zero()
    } else {
        let sign = if theta < T::zero() {
            -T::one()
        } else {
            T::one()
        };
        sign / (theta.abs() + (theta * theta + T::one()).sqrt())
    };
    if t.is_zero() {
        // Pivot negligible relative to the diagonal gap.
        a[(p, q)] = Complex::zero();
        a[(q, p)] = Complex::zero();
        return;
    }
    let c = T::one() / (t * t + T::one()).sqrt();
    let s = t * c;

    // U acts on columns p, q:
    //   U = [[c, s], [-s·e^{-iφ}, c·e^{-iφ}]]
    let u_pp = Complex::new(c, T::zero());
    let u_pq = Complex::new(s, T::zero());
    let u_qp = phase * (-s);
    let u_qq = phase * c;

    let n = a.dim;
    // A ← A·U
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * u_pp + akq * u_qp;
        a[(k, q)] = akp * u_pq + akq * u_qq;
    }
    // A ← U†·A
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = u_pp.conj() * apk + u_qp.conj() * aqk;
        a[(q, k)] = u_pq.conj() * apk + u_qq.conj() * aqk;
    }
    a[(p, q)] = Complex::zero();
    a[(q, p)] = Complex::zero();
    a[(p, p)] = Complex::new(app - t * mag, T::zero());
    a[(q, q)] = Complex::new(aqq + t * mag, T::zero());
    // V ← V·U
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * u_pp + vkq * u_qp;
        v[(k, q)] = vkp * u_pq + vkq * u_qq;
    }
}

/// `Σ|λ_k|` over the spectrum of a Hermitian matrix.
pub fn trace_norm_hermitian<T: Real>(m: &ComplexMatrix<T>, tol: T) -> Result<T> {
    let spec = hermitian_eig(m, tol)?;
    Ok(spec.eigenvalues.iter().map(|x| x.abs()).sum())
}
