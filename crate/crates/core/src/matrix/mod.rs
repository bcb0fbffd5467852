//! Dense complex matrices and the numerical kernels built on them.
//!
//! [`CMat`] is a plain row-major complex matrix. [`HermMat`] wraps a square
//! `CMat` that has been checked to be Hermitian; it is the ambient algebra of
//! self-adjoint operators everything else works in.

mod eig;
mod expm;
pub mod io;
mod svd;

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use eig::{herm_eig, HermEig};
pub use expm::expm;
pub use svd::{svd, Svd};

pub type C64 = Complex64;

/// Numerical thresholds shared by every operation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Tolerances {
    /// Max-entry bound on `M - M*` for accepting a matrix as Hermitian.
    pub tol_herm: f64,
    /// Operator-norm bound on `p^2 - p` for accepting a projection.
    pub tol_proj: f64,
    /// Gap below which spectral values are treated as one cluster.
    pub tol_cluster: f64,
    /// Smallest admissible eigenvalue of `P1(a)b` on `range(a)`.
    pub tol_invert: f64,
    /// Generic equality threshold for structural checks.
    pub tol_eq: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            tol_herm: 1e-12,
            tol_proj: 1e-9,
            tol_cluster: 1e-8,
            tol_invert: 1e-10,
            tol_eq: 1e-9,
        }
    }
}

impl Tolerances {
    pub fn validate(&self) -> Result<()> {
        let all = [
            ("tol_herm", self.tol_herm),
            ("tol_proj", self.tol_proj),
            ("tol_cluster", self.tol_cluster),
            ("tol_invert", self.tol_invert),
            ("tol_eq", self.tol_eq),
        ];
        for (name, v) in all {
            if !(v >= 0.0 && v.is_finite()) {
                return Err(Error::InvalidTolerances(format!("{name} = {v} must be finite and >= 0")));
            }
        }
        if self.tol_cluster <= self.tol_eq {
            return Err(Error::InvalidTolerances(format!(
                "tol_cluster ({}) must exceed tol_eq ({})",
                self.tol_cluster, self.tol_eq
            )));
        }
        Ok(())
    }
}

/// Dense row-major complex matrix.
#[derive(Clone, PartialEq)]
pub struct CMat {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl fmt::Debug for CMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self[(i, j)];
                write!(f, "{:>10.6}{:+.6}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl CMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMat { rows, cols, data: vec![C64::new(0.0, 0.0); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = CMat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        CMat { rows, cols, data }
    }

    /// Builds a matrix from row-major data, rejecting wrong lengths and non-finite entries.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::dims((1, 1), (rows, cols)));
        }
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: format!("{} entries", rows * cols),
                found: format!("{} entries", data.len()),
            });
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NumericalFailure("matrix has non-finite entries".into()));
        }
        Ok(CMat { rows, cols, data })
    }

    /// Real matrix from nested rows. Panics on ragged input; intended for literals.
    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        CMat::from_fn(r, c, |i, j| C64::new(rows[i][j], 0.0))
    }

    pub fn from_diag(d: &[f64]) -> Self {
        let mut m = CMat::zeros(d.len(), d.len());
        for (i, &x) in d.iter().enumerate() {
            m[(i, i)] = C64::new(x, 0.0);
        }
        m
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, cols: &[Vec<C64>]) -> Self {
        CMat::from_fn(rows, cols.len(), |i, j| cols[j][i])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn column(&self, j: usize) -> Vec<C64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    /// Sub-matrix made of the listed columns.
    pub fn select_columns(&self, idx: &[usize]) -> CMat {
        CMat::from_fn(self.rows, idx.len(), |i, j| self[(i, idx[j])])
    }

    pub fn adjoint(&self) -> CMat {
        CMat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn scale(&self, s: f64) -> CMat {
        self.map(|z| z * s)
    }

    pub fn scale_c(&self, s: C64) -> CMat {
        self.map(|z| z * s)
    }

    pub fn map(&self, f: impl Fn(C64) -> C64) -> CMat {
        CMat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&z| f(z)).collect() }
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, z| m.max(z.norm()))
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Max-norm distance to the adjoint.
    pub fn hermitian_defect(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut worst: f64 = 0.0;
        for i in 0..self.rows {
            for j in i..self.cols {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn matmul(&self, rhs: &CMat) -> Result<CMat> {
        if self.cols != rhs.rows {
            return Err(Error::dims((self.cols, rhs.cols), (rhs.rows, rhs.cols)));
        }
        Ok(self.matmul_unchecked(rhs))
    }

    fn matmul_unchecked(&self, rhs: &CMat) -> CMat {
        let mut out = CMat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                let row = &rhs.data[k * rhs.cols..(k + 1) * rhs.cols];
                let dst = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
                for (d, &b) in dst.iter_mut().zip(row) {
                    *d += a * b;
                }
            }
        }
        out
    }

    fn zip_with(&self, rhs: &CMat, f: impl Fn(C64, C64) -> C64) -> Result<CMat> {
        if self.shape() != rhs.shape() {
            return Err(Error::dims(self.shape(), rhs.shape()));
        }
        Ok(CMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| f(a, b)).collect(),
        })
    }

    pub fn try_add(&self, rhs: &CMat) -> Result<CMat> {
        self.zip_with(rhs, |a, b| a + b)
    }

    pub fn try_sub(&self, rhs: &CMat) -> Result<CMat> {
        self.zip_with(rhs, |a, b| a - b)
    }

    /// `(M + M*) / 2`.
    pub fn hermitian_part(&self) -> CMat {
        assert!(self.is_square());
        CMat::from_fn(self.rows, self.cols, |i, j| (self[(i, j)] + self[(j, i)].conj()) * 0.5)
    }

    /// Largest singular value.
    pub fn op_norm(&self) -> f64 {
        op_norm(self)
    }
}

impl Index<(usize, usize)> for CMat {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for CMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.cols + j]
    }
}

// Operator sugar panics on shape mismatch; fallible variants are `try_*`/`matmul`.
impl Mul for &CMat {
    type Output = CMat;
    fn mul(self, rhs: &CMat) -> CMat {
        assert_eq!(self.cols, rhs.rows, "matmul shape mismatch");
        self.matmul_unchecked(rhs)
    }
}

impl Add for &CMat {
    type Output = CMat;
    fn add(self, rhs: &CMat) -> CMat {
        self.try_add(rhs).expect("add shape mismatch")
    }
}

impl Sub for &CMat {
    type Output = CMat;
    fn sub(self, rhs: &CMat) -> CMat {
        self.try_sub(rhs).expect("sub shape mismatch")
    }
}

impl Neg for &CMat {
    type Output = CMat;
    fn neg(self) -> CMat {
        self.map(|z| -z)
    }
}

impl Mul<f64> for &CMat {
    type Output = CMat;
    fn mul(self, s: f64) -> CMat {
        self.scale(s)
    }
}

/// Operator norm (largest singular value).
pub fn op_norm(m: &CMat) -> f64 {
    if m.max_abs() == 0.0 {
        return 0.0;
    }
    if m.is_square() && m.hermitian_defect() <= 1e-14 * m.max_abs() {
        let h = m.hermitian_part();
        return match herm_eig(&HermMat::new_unchecked(h)) {
            Ok(e) => e.values.iter().fold(0.0_f64, |acc, v| acc.max(v.abs())),
            Err(_) => m.frobenius(),
        };
    }
    let gram = if m.rows >= m.cols { &m.adjoint() * m } else { m * &m.adjoint() };
    match herm_eig(&HermMat::new_unchecked(gram.hermitian_part())) {
        Ok(e) => e.values[0].max(0.0).sqrt(),
        Err(_) => m.frobenius(),
    }
}

/// A square complex matrix equal to its adjoint within `tol_herm`.
#[derive(Clone, PartialEq)]
pub struct HermMat(CMat);

impl fmt::Debug for HermMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Herm{:?}", self.0)
    }
}

impl HermMat {
    /// Validates Hermiticity and stores the exact Hermitian part.
    pub fn new(m: CMat, tol: &Tolerances) -> Result<Self> {
        if !m.is_square() || m.rows == 0 {
            return Err(Error::dims((m.rows, m.rows), m.shape()));
        }
        if !m.is_finite() {
            return Err(Error::NumericalFailure("matrix has non-finite entries".into()));
        }
        let residual = m.hermitian_defect();
        if residual > tol.tol_herm {
            return Err(Error::HermitianViolation { residual });
        }
        Ok(HermMat(m.hermitian_part()))
    }

    /// Takes the Hermitian part without checking the defect. Used for results of
    /// operations that are Hermitian by construction.
    pub fn new_unchecked(m: CMat) -> Self {
        debug_assert!(m.is_square());
        HermMat(m.hermitian_part())
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        HermMat::new(CMat::from_real_rows(rows), &Tolerances::default()).expect("not symmetric")
    }

    pub fn from_diag(d: &[f64]) -> Self {
        HermMat(CMat::from_diag(d))
    }

    pub fn zeros(n: usize) -> Self {
        HermMat(CMat::zeros(n, n))
    }

    pub fn identity(n: usize) -> Self {
        HermMat(CMat::identity(n))
    }

    pub fn n(&self) -> usize {
        self.0.rows
    }

    pub fn mat(&self) -> &CMat {
        &self.0
    }

    pub fn into_mat(self) -> CMat {
        self.0
    }

    pub fn add(&self, other: &HermMat) -> HermMat {
        HermMat(&self.0 + &other.0)
    }

    pub fn sub(&self, other: &HermMat) -> HermMat {
        HermMat(&self.0 - &other.0)
    }

    pub fn scale(&self, s: f64) -> HermMat {
        HermMat(self.0.scale(s))
    }

    /// Real trace.
    pub fn trace(&self) -> f64 {
        self.0.trace().re
    }

    pub fn op_norm(&self) -> f64 {
        op_norm(&self.0)
    }

    pub fn max_abs(&self) -> f64 {
        self.0.max_abs()
    }

    /// Operator-norm distance to another Hermitian matrix.
    pub fn dist(&self, other: &HermMat) -> f64 {
        self.sub(other).op_norm()
    }

    pub(crate) fn check_same_dim(&self, other: &HermMat) -> Result<()> {
        if self.n() != other.n() {
            return Err(Error::dims((self.n(), self.n()), (other.n(), other.n())));
        }
        Ok(())
    }
}

impl AsRef<CMat> for HermMat {
    fn as_ref(&self) -> &CMat {
        &self.0
    }
}

/// Projection test: `‖M² − M‖ ≤ tol_proj`, with rank counted as eigenvalues above ½.
pub fn is_projection(m: &HermMat, tol: &Tolerances) -> (bool, usize) {
    let sq = m.mat() * m.mat();
    let residual = op_norm(&(&sq - m.mat()));
    let rank = match herm_eig(m) {
        Ok(e) => e.values.iter().filter(|&&v| v > 0.5).count(),
        Err(_) => 0,
    };
    (residual <= tol.tol_proj, rank)
}

/// Orthonormalizes `v` against the columns in `basis` (modified Gram–Schmidt,
/// two passes). Returns `None` when the remainder is below `floor`.
pub(crate) fn orthonormalize_against(mut v: Vec<C64>, basis: &[Vec<C64>], floor: f64) -> Option<Vec<C64>> {
    for _ in 0..2 {
        for b in basis {
            let proj: C64 = b.iter().zip(&v).map(|(x, y)| x.conj() * y).sum();
            for (vi, bi) in v.iter_mut().zip(b) {
                *vi -= proj * bi;
            }
        }
    }
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if norm <= floor {
        return None;
    }
    Some(v.into_iter().map(|z| z / norm).collect())
}
