//! Dense complex matrices and the two spectral primitives used by every
//! criterion: Hermitian eigenvalues and singular values.
//!
//! Both spectra are computed with cyclic Jacobi rotations (two-sided for the
//! Hermitian eigenproblem, one-sided Hestenes for the SVD). The minimum
//! singular value additionally has a cheaper dedicated path: Householder
//! bidiagonalization followed by Sturm-count bisection on the Golub-Kahan
//! tridiagonal form, which never forms the rest of the spectrum.

use std::fmt;
use std::ops::{Add, Index, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Default absolute tolerance on `max |m - m†|`.
pub const HERMITIAN_TOL: f64 = 1e-9;

/// Default PSD tolerance, relative to the trace.
pub const PSD_TOL: f64 = 1e-9;

const MAX_SWEEPS: usize = 80;

/// Dense complex matrix stored row-major.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries, rejecting empty shapes,
    /// length mismatches and non-finite entries.
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyMatrix);
        }
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch {
                rows,
                cols,
                len: data.len(),
            });
        }
        if let Some(pos) = data
            .iter()
            .position(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::NonFinite {
                row: pos / cols,
                col: pos % cols,
            });
        }
        Ok(Self { rows, cols, data })
    }

    /// Real matrix from nested rows. Panics on ragged input.
    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == m), "ragged rows");
        let data = rows
            .iter()
            .flat_map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)))
            .collect();
        Self::new(n, m, data)
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        assert!(rows > 0 && cols > 0, "empty matrix");
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| Complex64::new(0.0, 0.0))
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| {
            Complex64::new(if i == j { 1.0 } else { 0.0 }, 0.0)
        })
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        let n = diag.len();
        Self::from_fn(n, n, |i, j| {
            Complex64::new(if i == j { diag[i] } else { 0.0 }, 0.0)
        })
    }

    /// Rank-one projector `|v><v|`.
    pub fn outer(v: &[Complex64]) -> Self {
        let n = v.len();
        Self::from_fn(n, n, |i, j| v[i] * v[j].conj())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.cols + j]
    }

    /// Row-major entries.
    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| f(z)).collect(),
        }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entrywise modulus of `self - other`. Shapes must match.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `max |m_ij - conj(m_ji)|`; infinite for non-square matrices.
    pub fn hermiticity_deviation(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let n = self.rows;
        let mut dev: f64 = 0.0;
        for i in 0..n {
            for j in i..n {
                dev = dev.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        dev
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Self) -> Self {
        let (r2, c2) = (other.rows, other.cols);
        Self::from_fn(self.rows * r2, self.cols * c2, |i, j| {
            self.get(i / r2, j / c2) * other.get(i % r2, j % c2)
        })
    }

    /// Entries as `Vec<Vec<_>>`, one inner vector per row.
    pub fn to_rows(&self) -> Vec<Vec<Complex64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self
                .row(i)
                .iter()
                .map(|z| {
                    if z.im == 0.0 {
                        format!("{:.6}", z.re)
                    } else {
                        format!("{:.6}{:+.6}i", z.re, z.im)
                    }
                })
                .collect();
            writeln!(f, "  {}", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "shape mismatch in add"
        );
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "shape mismatch in sub"
        );
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in mul");
        let mut data = vec![Complex64::new(0.0, 0.0); self.rows * rhs.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                let out = &mut data[i * rhs.cols..(i + 1) * rhs.cols];
                for (o, b) in out.iter_mut().zip(rhs.row(k)) {
                    *o += a * b;
                }
            }
        }
        ComplexMatrix {
            rows: self.rows,
            cols: rhs.cols,
            data,
        }
    }
}

/// Real eigenvalues of a Hermitian matrix, sorted descending.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianSpectrum {
    eigenvalues: Vec<f64>,
}

impl HermitianSpectrum {
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn max(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn min(&self) -> f64 {
        *self.eigenvalues.last().expect("spectrum is never empty")
    }

    pub fn sum(&self) -> f64 {
        self.eigenvalues.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }
}

/// Singular values, sorted descending; `values().last()` is `s_min`.
#[derive(Debug, Clone, PartialEq)]
pub struct SingularSpectrum {
    values: Vec<f64>,
}

impl SingularSpectrum {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn max(&self) -> f64 {
        self.values[0]
    }

    pub fn min(&self) -> f64 {
        *self.values.last().expect("spectrum is never empty")
    }

    /// Sum of the singular values, i.e. the trace norm.
    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

fn sort_descending(v: &mut [f64]) {
    v.sort_by(|a, b| b.total_cmp(a));
}

/// Eigenvalues of a Hermitian matrix.
///
/// Fails with [`Error::NotSquare`] or with [`Error::NotHermitian`] carrying
/// `max |m - m†|` when that exceeds `tol`. The matrix is symmetrized before
/// the Jacobi sweeps so sub-tolerance noise cannot leak into the spectrum.
pub fn hermitian_eigenvalues(m: &ComplexMatrix, tol: f64) -> Result<HermitianSpectrum> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    let deviation = m.hermiticity_deviation();
    if deviation > tol {
        return Err(Error::NotHermitian { deviation });
    }

    let n = m.rows;
    let mut a: Vec<Complex64> = ComplexMatrix::from_fn(n, n, |i, j| {
        if i == j {
            Complex64::new(m.get(i, i).re, 0.0)
        } else {
            (m.get(i, j) + m.get(j, i).conj()) * 0.5
        }
    })
    .data;

    let scale = a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let threshold = f64::EPSILON * scale;

    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|p| ((p + 1)..n).map(move |q| (p, q)))
            .map(|(p, q)| a[p * n + q].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= threshold || off == 0.0 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                jacobi_rotate(&mut a, n, p, q);
            }
        }
    }

    let mut eigenvalues: Vec<f64> = (0..n).map(|i| a[i * n + i].re).collect();
    sort_descending(&mut eigenvalues);
    Ok(HermitianSpectrum { eigenvalues })
}

/// One two-sided complex Jacobi rotation annihilating `a[p][q]`.
fn jacobi_rotate(a: &mut [Complex64], n: usize, p: usize, q: usize) {
    let g = a[p * n + q];
    let g_abs = g.norm();
    if g_abs == 0.0 {
        return;
    }
    let app = a[p * n + p].re;
    let aqq = a[q * n + q].re;
    // Skip rotations too small to change the diagonal in floating point.
    if g_abs < f64::EPSILON * 1e-3 * (app.abs() + aqq.abs()) {
        a[p * n + q] = Complex64::new(0.0, 0.0);
        a[q * n + p] = Complex64::new(0.0, 0.0);
        return;
    }
    let phase = g / g_abs;
    let theta = (aqq - app) / (2.0 * g_abs);
    let t = if theta >= 0.0 {
        1.0 / (theta + (theta * theta + 1.0).sqrt())
    } else {
        -1.0 / (-theta + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    // A <- A U with U = [[c, s e], [-s conj(e), c]] on (p, q).
    let sp = phase * s;
    let sp_conj = sp.conj();
    for k in 0..n {
        let akp = a[k * n + p];
        let akq = a[k * n + q];
        a[k * n + p] = akp * c - akq * sp_conj;
        a[k * n + q] = akp * sp + akq * c;
    }
    // A <- U† A
    for k in 0..n {
        let apk = a[p * n + k];
        let aqk = a[q * n + k];
        a[p * n + k] = apk * c - aqk * sp;
        a[q * n + k] = apk * sp_conj + aqk * c;
    }
    a[p * n + q] = Complex64::new(0.0, 0.0);
    a[q * n + p] = Complex64::new(0.0, 0.0);
    a[p * n + p] = Complex64::new(app - t * g_abs, 0.0);
    a[q * n + q] = Complex64::new(aqq + t * g_abs, 0.0);
}

/// Columns of `m` (or of `m†` when `m` is wide), so that the result has at
/// least as many rows as columns.
fn tall_columns(m: &ComplexMatrix) -> (usize, Vec<Vec<Complex64>>) {
    if m.rows >= m.cols {
        let cols = (0..m.cols)
            .map(|j| (0..m.rows).map(|i| m.get(i, j)).collect())
            .collect();
        (m.rows, cols)
    } else {
        let cols = (0..m.rows)
            .map(|i| m.row(i).iter().map(|z| z.conj()).collect())
            .collect();
        (m.cols, cols)
    }
}

/// All `min(rows, cols)` singular values via one-sided Jacobi.
pub fn singular_values(m: &ComplexMatrix) -> SingularSpectrum {
    let (_, mut cols) = tall_columns(m);
    let n = cols.len();

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for i in 0..n {
            for j in (i + 1)..n {
                rotated |= hestenes_rotate(&mut cols, i, j);
            }
        }
        if !rotated {
            break;
        }
    }

    let mut values: Vec<f64> = cols
        .iter()
        .map(|c| c.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt())
        .collect();
    sort_descending(&mut values);
    SingularSpectrum { values }
}

/// Orthogonalizes columns `i` and `j`; returns whether a rotation was applied.
fn hestenes_rotate(cols: &mut [Vec<Complex64>], i: usize, j: usize) -> bool {
    let (alpha, beta, gamma) = {
        let (ci, cj) = (&cols[i], &cols[j]);
        let alpha: f64 = ci.iter().map(|z| z.norm_sqr()).sum();
        let beta: f64 = cj.iter().map(|z| z.norm_sqr()).sum();
        let gamma: Complex64 = ci.iter().zip(cj).map(|(a, b)| a.conj() * b).sum();
        (alpha, beta, gamma)
    };
    let g_abs = gamma.norm();
    if g_abs == 0.0 || g_abs <= f64::EPSILON * (alpha * beta).sqrt() {
        return false;
    }
    let phase_conj = (gamma / g_abs).conj();
    let zeta = (beta - alpha) / (2.0 * g_abs);
    let t = if zeta >= 0.0 {
        1.0 / (zeta + (1.0 + zeta * zeta).sqrt())
    } else {
        -1.0 / (-zeta + (1.0 + zeta * zeta).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = c * t;

    let (left, right) = cols.split_at_mut(j);
    let ci = &mut left[i];
    let cj = &mut right[0];
    for (x, y) in ci.iter_mut().zip(cj.iter_mut()) {
        let yp = *y * phase_conj;
        let xi = *x;
        *x = xi * c - yp * s;
        *y = xi * s + yp * c;
    }
    true
}

/// Sum of singular values.
pub fn trace_norm(m: &ComplexMatrix) -> f64 {
    singular_values(m).sum()
}

/// Smallest singular value without computing the rest of the spectrum.
///
/// Householder bidiagonalization reduces `m` to a bidiagonal `B` with the
/// same singular values; the smallest one is then isolated by bisection on
/// the Golub-Kahan form `[[0, B^T], [B, 0]]`, whose eigenvalues are `±σ_i`.
pub fn min_singular_value(m: &ComplexMatrix) -> f64 {
    let (diag, superdiag) = bidiagonal_magnitudes(m);
    smallest_bidiagonal_singular_value(&diag, &superdiag)
}

/// Moduli of the diagonal and superdiagonal of a Householder
/// bidiagonalization of `m` (or of `m†` when `m` is wide).
fn bidiagonal_magnitudes(m: &ComplexMatrix) -> (Vec<f64>, Vec<f64>) {
    let (rows, cols) = tall_columns(m);
    let n = cols.len();
    // Work row-major on the tall matrix.
    let mut w = vec![Complex64::new(0.0, 0.0); rows * n];
    for (j, col) in cols.iter().enumerate() {
        for (i, &z) in col.iter().enumerate() {
            w[i * n + j] = z;
        }
    }

    let mut diag = Vec::with_capacity(n);
    let mut superdiag = Vec::with_capacity(n.saturating_sub(1));
    let mut v = vec![Complex64::new(0.0, 0.0); rows];
    let mut u = vec![Complex64::new(0.0, 0.0); n];

    for k in 0..n {
        // Left reflector on column k, rows k..rows.
        let norm = (k..rows)
            .map(|i| w[i * n + k].norm_sqr())
            .sum::<f64>()
            .sqrt();
        diag.push(norm);
        if norm > 0.0 {
            for i in k..rows {
                v[i] = w[i * n + k];
            }
            let shift = unit_phase(v[k]) * norm;
            v[k] += shift;
            let vnorm2: f64 = (k..rows).map(|i| v[i].norm_sqr()).sum();
            for j in (k + 1)..n {
                let dot: Complex64 = (k..rows).map(|i| v[i].conj() * w[i * n + j]).sum();
                let f = dot * (2.0 / vnorm2);
                for i in k..rows {
                    w[i * n + j] -= v[i] * f;
                }
            }
        }

        if k + 1 >= n {
            break;
        }
        // Right reflector on row k, columns k+1..n.
        let norm = ((k + 1)..n)
            .map(|j| w[k * n + j].norm_sqr())
            .sum::<f64>()
            .sqrt();
        superdiag.push(norm);
        if norm > 0.0 {
            for j in (k + 1)..n {
                u[j] = w[k * n + j].conj();
            }
            let shift = unit_phase(u[k + 1]) * norm;
            u[k + 1] += shift;
            let unorm2: f64 = ((k + 1)..n).map(|j| u[j].norm_sqr()).sum();
            for i in (k + 1)..rows {
                let dot: Complex64 = ((k + 1)..n).map(|j| w[i * n + j] * u[j]).sum();
                let f = dot * (2.0 / unorm2);
                for j in (k + 1)..n {
                    w[i * n + j] -= f * u[j].conj();
                }
            }
        }
    }
    (diag, superdiag)
}

fn unit_phase(z: Complex64) -> Complex64 {
    let r = z.norm();
    if r == 0.0 {
        Complex64::new(1.0, 0.0)
    } else {
        z / r
    }
}

/// Smallest singular value of the real bidiagonal with the given diagonal
/// and superdiagonal.
fn smallest_bidiagonal_singular_value(diag: &[f64], superdiag: &[f64]) -> f64 {
    let n = diag.len();
    // Off-diagonal of the 2n x 2n Golub-Kahan tridiagonal: d1, e1, d2, e2, ..., dn.
    let offdiag: Vec<f64> = (0..2 * n - 1)
        .map(|k| {
            if k % 2 == 0 {
                diag[k / 2]
            } else {
                superdiag[k / 2]
            }
        })
        .collect();
    let bound = offdiag
        .iter()
        .enumerate()
        .map(|(k, &x)| {
            x + if k + 1 < offdiag.len() {
                offdiag[k + 1]
            } else {
                0.0
            }
        })
        .fold(0.0, f64::max);
    if bound == 0.0 {
        return 0.0;
    }
    let squares: Vec<f64> = offdiag.iter().map(|x| x * x).collect();
    let pivmin = f64::MIN_POSITIVE * squares.iter().cloned().fold(1.0, f64::max);

    // Exactly n eigenvalues are <= 0 from the negative half; s_min is the
    // smallest x with more than n eigenvalues below it.
    let (mut lo, mut hi) = (0.0_f64, bound);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if sturm_count(&squares, mid, pivmin) > n {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Number of eigenvalues below `x` of the zero-diagonal symmetric tridiagonal
/// whose squared off-diagonal entries are `squares`.
fn sturm_count(squares: &[f64], x: f64, pivmin: f64) -> usize {
    let mut count = 0;
    let mut q = -x;
    if q.abs() < pivmin {
        q = -pivmin;
    }
    if q < 0.0 {
        count += 1;
    }
    for &b2 in squares {
        q = -x - b2 / q;
        if q.abs() < pivmin {
            q = -pivmin;
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// PSD test against `-tol * trace`.
pub fn is_positive_semidefinite(m: &ComplexMatrix, tol: f64) -> Result<bool> {
    let spectrum = hermitian_eigenvalues(m, tol)?;
    let trace = m.trace().re;
    Ok(spectrum.min() >= -tol * trace.abs())
}
