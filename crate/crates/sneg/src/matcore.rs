//! Dense complex matrices and spectral routines for small Hermitian problems.
//!
//! Everything here is deterministic: fixed sweep order in the Jacobi solver,
//! no threading, no tolerance that depends on anything but the input.

use num_complex::Complex64;
use thiserror::Error;

/// Default elementwise tolerance for the Hermiticity check.
pub const HERMITICITY_TOL: f64 = 1e-8;

const MAX_SWEEPS: usize = 100;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MatError {
    #[error("matrix is not Hermitian: max |m - m\u{2020}| = {residual:e} exceeds {tol:e}")]
    NonHermitianInput { residual: f64, tol: f64 },
    #[error("eigensolver failed to converge within {0} sweeps")]
    NoConvergence(usize),
    #[error("index out of range: k={k}, j={j} for dimension {n}")]
    IndexOutOfRange { k: usize, j: usize, n: usize },
}

/// Dense row-major complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    n_rows: usize,
    n_cols: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(n_rows: usize, n_cols: usize) -> Self {
        assert!(n_rows > 0 && n_cols > 0);
        Self { n_rows, n_cols, entries: vec![Complex64::new(0.0, 0.0); n_rows * n_cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Complex64::new(1.0, 0.0));
        }
        m
    }

    pub fn from_fn(n_rows: usize, n_cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(n_rows, n_cols);
        for i in 0..n_rows {
            for j in 0..n_cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn diag(values: &[Complex64]) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (i, &v) in values.iter().enumerate() {
            m.set(i, i, v);
        }
        m
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn is_square(&self) -> bool {
        self.n_rows == self.n_cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.n_cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.entries[i * self.n_cols + j] = v;
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn is_finite(&self) -> bool {
        self.entries.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.n_cols, self.n_rows, |i, j| self.get(j, i).conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n_cols, self.n_rows, |i, j| self.get(j, i))
    }

    pub fn conjugate(&self) -> Self {
        Self::from_fn(self.n_rows, self.n_cols, |i, j| self.get(i, j).conj())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.n_rows, self.n_cols), (other.n_rows, other.n_cols));
        Self::from_fn(self.n_rows, self.n_cols, |i, j| self.get(i, j) + other.get(i, j))
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.n_rows, self.n_cols), (other.n_rows, other.n_cols));
        Self::from_fn(self.n_rows, self.n_cols, |i, j| self.get(i, j) - other.get(i, j))
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self::from_fn(self.n_rows, self.n_cols, |i, j| c * self.get(i, j))
    }

    pub fn scale_re(&self, c: f64) -> Self {
        self.scale(Complex64::new(c, 0.0))
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.n_cols, other.n_rows, "inner dimensions must match");
        let mut out = Self::zeros(self.n_rows, other.n_cols);
        for i in 0..self.n_rows {
            for k in 0..self.n_cols {
                let a = self.get(i, k);
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..other.n_cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        assert!(self.is_square());
        (0..self.n_rows).map(|i| self.get(i, i)).sum()
    }

    /// Kronecker product; dimensions multiply.
    pub fn kron(&self, other: &Self) -> Self {
        let (ra, ca) = (self.n_rows, self.n_cols);
        let (rb, cb) = (other.n_rows, other.n_cols);
        Self::from_fn(ra * rb, ca * cb, |i, j| {
            self.get(i / rb, j / cb) * other.get(i % rb, j % cb)
        })
    }

    /// Max elementwise |self - other|.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!((self.n_rows, self.n_cols), (other.n_rows, other.n_cols));
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn hermiticity_residual(&self) -> f64 {
        self.max_abs_diff(&self.adjoint())
    }
}

/// Real eigenvalues of a Hermitian matrix, sorted ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianSpectrum {
    eigenvalues: Vec<f64>,
    source_dim: usize,
}

impl HermitianSpectrum {
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn min(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn max(&self) -> f64 {
        *self.eigenvalues.last().unwrap()
    }

    /// 1-based ascending access, matching the usual eigenvalue-inequality indexing.
    pub fn nth_ascending(&self, k: usize) -> f64 {
        self.eigenvalues[k - 1]
    }
}

/// Eigenvalues of a Hermitian matrix, ascending. `tol` bounds the allowed
/// Hermiticity residual; the input is symmetrized before solving.
pub fn eigvals_hermitian(m: &ComplexMatrix, tol: f64) -> Result<HermitianSpectrum, MatError> {
    let (values, _) = eigh_hermitian_impl(m, tol, false)?;
    Ok(HermitianSpectrum { source_dim: m.n_rows(), eigenvalues: values })
}

/// Full eigendecomposition: ascending eigenvalues and the unitary of
/// eigenvectors (column i pairs with eigenvalue i).
pub fn eigh_hermitian(m: &ComplexMatrix, tol: f64) -> Result<(Vec<f64>, ComplexMatrix), MatError> {
    let (values, vectors) = eigh_hermitian_impl(m, tol, true)?;
    Ok((values, vectors.unwrap()))
}

/// Cyclic complex Jacobi. The matrix is tiny (≤ 128×128 including the SVD
/// dilation), so plain sweeps converge in a handful of passes.
fn eigh_hermitian_impl(
    m: &ComplexMatrix,
    tol: f64,
    want_vectors: bool,
) -> Result<(Vec<f64>, Option<ComplexMatrix>), MatError> {
    assert!(m.is_square(), "eigensolver requires a square matrix");
    let n = m.n_rows();
    let residual = m.hermiticity_residual();
    if residual > tol {
        return Err(MatError::NonHermitianInput { residual, tol });
    }
    // Symmetrize to absorb constructor round-off.
    let mut a = m.add(&m.adjoint()).scale_re(0.5);
    let mut v = want_vectors.then(|| ComplexMatrix::identity(n));

    let scale = a.frobenius_norm().max(f64::MIN_POSITIVE);
    let stop = 1e-15 * scale;

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        let off = off_diag_norm(&a);
        if off <= stop {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                jacobi_rotate(&mut a, v.as_mut(), p, q);
            }
        }
    }
    if !converged && off_diag_norm(&a) > stop {
        return Err(MatError::NoConvergence(MAX_SWEEPS));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a.get(i, i).re.partial_cmp(&a.get(j, j).re).unwrap());
    let values: Vec<f64> = order.iter().map(|&i| a.get(i, i).re).collect();
    let vectors = v.map(|v| {
        ComplexMatrix::from_fn(n, n, |i, j| v.get(i, order[j]))
    });
    Ok((values, vectors))
}

fn off_diag_norm(a: &ComplexMatrix) -> f64 {
    let n = a.n_rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a.get(i, j).norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// One complex Jacobi rotation annihilating a[p][q]. Equivalent to a phase
/// rotation making the pivot real followed by a real Jacobi rotation.
fn jacobi_rotate(a: &mut ComplexMatrix, v: Option<&mut ComplexMatrix>, p: usize, q: usize) {
    let apq = a.get(p, q);
    let h = apq.norm();
    if h == 0.0 {
        return;
    }
    let app = a.get(p, p).re;
    let aqq = a.get(q, q).re;
    let alpha = apq / h; // unit phase of the pivot

    let tau = (aqq - app) / (2.0 * h);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    let n = a.n_rows();
    let sa = s * alpha;
    let sac = sa.conj();

    // rows p, q of W†A
    for j in 0..n {
        let rp = a.get(p, j);
        let rq = a.get(q, j);
        a.set(p, j, rp * c - rq * sa);
        a.set(q, j, rp * s + rq * (c * alpha));
    }
    // columns p, q of (W†A)W
    for i in 0..n {
        let cp = a.get(i, p);
        let cq = a.get(i, q);
        a.set(i, p, cp * c - cq * sac);
        a.set(i, q, cp * s + cq * (c * alpha.conj()));
    }
    // clean the pivot explicitly
    a.set(p, q, Complex64::new(0.0, 0.0));
    a.set(q, p, Complex64::new(0.0, 0.0));
    let dpp = a.get(p, p);
    let dqq = a.get(q, q);
    a.set(p, p, Complex64::new(dpp.re, 0.0));
    a.set(q, q, Complex64::new(dqq.re, 0.0));

    if let Some(v) = v {
        for i in 0..n {
            let cp = v.get(i, p);
            let cq = v.get(i, q);
            v.set(i, p, cp * c - cq * sac);
            v.set(i, q, cp * s + cq * (c * alpha.conj()));
        }
    }
}

/// Singular values sorted descending, from the eigenvalues of the Hermitian
/// dilation [[0, m], [m†, 0]] (which come in ±σ pairs). This stays a route
/// independent of the Gram-matrix identity σ² = λ(m†m) used as a test oracle.
pub fn singular_values(m: &ComplexMatrix) -> Result<Vec<f64>, MatError> {
    assert!(m.is_square());
    let n = m.n_rows();
    let adj = m.adjoint();
    let dilation = ComplexMatrix::from_fn(2 * n, 2 * n, |i, j| {
        if i < n && j >= n {
            m.get(i, j - n)
        } else if i >= n && j < n {
            adj.get(i - n, j)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let spectrum = eigvals_hermitian(&dilation, HERMITICITY_TOL)?;
    let mut top: Vec<f64> = spectrum.eigenvalues()[n..].iter().rev().map(|&x| x.max(0.0)).collect();
    top.sort_by(|a, b| b.partial_cmp(a).unwrap());
    Ok(top)
}

/// Trace norm: sum of singular values.
pub fn trace_norm(m: &ComplexMatrix) -> Result<f64, MatError> {
    Ok(singular_values(m)?.iter().sum())
}

/// Weyl's inequality for Hermitian a, b with ascending eigenvalues and
/// 1-based indices: λ_k(a+b) ≤ λ_{k+j}(a) + λ_{n−j}(b).
pub fn weyl_holds(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    k: usize,
    j: usize,
) -> Result<bool, MatError> {
    assert!(a.is_square() && b.is_square());
    assert_eq!(a.n_rows(), b.n_rows());
    let n = a.n_rows();
    if k < 1 || k + j > n {
        return Err(MatError::IndexOutOfRange { k, j, n });
    }
    let sum_spec = eigvals_hermitian(&a.add(b), HERMITICITY_TOL)?;
    let a_spec = eigvals_hermitian(a, HERMITICITY_TOL)?;
    let b_spec = eigvals_hermitian(b, HERMITICITY_TOL)?;
    let lhs = sum_spec.nth_ascending(k);
    let rhs = a_spec.nth_ascending(k + j) + b_spec.nth_ascending(n - j);
    Ok(lhs <= rhs + 1e-10)
}
