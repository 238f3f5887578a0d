//! Small dense complex linear algebra.
//!
//! Only what the duality computations need: inner products, Gram matrices,
//! a cyclic Jacobi eigensolver for Hermitian matrices, numerical rank and a
//! density-matrix validity check.
//!
//! **Convention:** [`inner`] conjugates its *first* argument, so
//! `inner(u, v)` is the bra-ket `⟨u|v⟩`.

use std::ops::{Index, IndexMut};

use num_complex::Complex64;

use crate::error::{DualityError, Result};

pub type ComplexScalar = Complex64;

/// Default relative tolerance for [`numerical_rank`].
pub const DEFAULT_RANK_TOL: f64 = 1e-10;

const JACOBI_MAX_SWEEPS: usize = 64;

/// A finite complex vector.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexVector(Vec<Complex64>);

impl ComplexVector {
    /// Wraps `entries`, rejecting empty or non-finite input.
    pub fn new(entries: Vec<Complex64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(DualityError::invariant(
                "vector dimension must be positive",
                None,
            ));
        }
        if let Some(index) = entries.iter().position(|z| !z.is_finite()) {
            return Err(DualityError::NonFinite { index });
        }
        Ok(ComplexVector(entries))
    }

    /// Real-valued vector, convenient for the real scenario families.
    pub fn from_real(entries: &[f64]) -> Result<Self> {
        Self::new(entries.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// The `k`-th standard basis vector of dimension `dim`.
    pub fn basis(dim: usize, k: usize) -> Self {
        assert!(k < dim, "basis index {k} out of range for dimension {dim}");
        let mut v = vec![Complex64::new(0.0, 0.0); dim];
        v[k] = Complex64::new(1.0, 0.0);
        ComplexVector(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.0
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        ComplexVector(self.0.iter().map(|z| z * factor).collect())
    }

    /// Rescales to unit norm. Fails on the zero vector.
    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if n == 0.0 || !n.is_finite() {
            return Err(DualityError::invariant(
                "cannot normalize a zero vector",
                None,
            ));
        }
        Ok(self.scaled(Complex64::new(1.0 / n, 0.0)))
    }
}

impl Index<usize> for ComplexVector {
    type Output = Complex64;
    fn index(&self, i: usize) -> &Complex64 {
        &self.0[i]
    }
}

/// `⟨u|v⟩ = Σ conj(u_k) v_k`.
pub fn inner(u: &ComplexVector, v: &ComplexVector) -> Result<Complex64> {
    if u.dim() != v.dim() {
        return Err(DualityError::DimensionMismatch {
            expected: u.dim(),
            found: v.dim(),
        });
    }
    Ok(u.0.iter().zip(&v.0).map(|(a, b)| a.conj() * b).sum())
}

/// `1 - |⟨u|v⟩|² / (‖u‖²‖v‖²)` via the Lagrange identity
/// `‖u‖²‖v‖² - |⟨u|v⟩|² = Σ_{k<l} |u_k v_l - u_l v_k|²`.
///
/// Stays accurate as the overlap approaches 1, where direct subtraction loses
/// all significant digits. Errors on zero vectors.
pub fn overlap_defect(u: &ComplexVector, v: &ComplexVector) -> Result<f64> {
    if u.dim() != v.dim() {
        return Err(DualityError::DimensionMismatch {
            expected: u.dim(),
            found: v.dim(),
        });
    }
    let scale = u.norm_sqr() * v.norm_sqr();
    if scale == 0.0 {
        return Err(DualityError::Precondition(
            "overlap defect of a zero vector".into(),
        ));
    }
    let (a, b) = (&u.0, &v.0);
    let mut sum = 0.0;
    for k in 0..a.len() {
        for l in k + 1..a.len() {
            sum += (a[k] * b[l] - a[l] * b[k]).norm_sqr();
        }
    }
    Ok((sum / scale).min(1.0))
}

/// Dense row-major complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ComplexMatrix {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Builds from nested rows. Rows must be equally long and finite.
    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(nrows * ncols);
        for row in rows {
            if row.len() != ncols {
                return Err(DualityError::DimensionMismatch {
                    expected: ncols,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        if let Some(index) = data.iter().position(|z| !z.is_finite()) {
            return Err(DualityError::NonFinite { index });
        }
        Ok(ComplexMatrix {
            rows: nrows,
            cols: ncols,
            data,
        })
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = Complex64::new(d, 0.0);
        }
        m
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

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    /// Largest entrywise modulus of `self - self†`.
    pub fn hermiticity_defect(&self) -> f64 {
        assert!(self.is_square());
        let mut worst = 0.0_f64;
        for i in 0..self.rows {
            for j in i..self.cols {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn scale(&self, factor: f64) -> Self {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    /// `self + factor * other`. Shapes must match.
    pub fn add_scaled(&self, other: &ComplexMatrix, factor: f64) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(DualityError::DimensionMismatch {
                expected: self.rows * self.cols,
                found: other.rows * other.cols,
            });
        }
        Ok(ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b * factor)
                .collect(),
        })
    }

    pub fn matmul(&self, other: &ComplexMatrix) -> Result<Self> {
        if self.cols != other.rows {
            return Err(DualityError::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    /// Row `i` as a slice.
    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Gram matrix `G[i][j] = ⟨v_i|v_j⟩`.
///
/// The upper triangle is computed and mirrored by conjugation, so the result
/// is exactly Hermitian with a real diagonal.
pub fn gram(vectors: &[ComplexVector]) -> Result<ComplexMatrix> {
    let n = vectors.len();
    let mut g = ComplexMatrix::zeros(n, n);
    if let Some(first) = vectors.first() {
        if let Some(bad) = vectors.iter().find(|v| v.dim() != first.dim()) {
            return Err(DualityError::DimensionMismatch {
                expected: first.dim(),
                found: bad.dim(),
            });
        }
    }
    for i in 0..n {
        g[(i, i)] = Complex64::new(vectors[i].norm_sqr(), 0.0);
        for j in i + 1..n {
            let z = inner(&vectors[i], &vectors[j])?;
            g[(i, j)] = z;
            g[(j, i)] = z.conj();
        }
    }
    Ok(g)
}

/// Eigenvalues of a Hermitian matrix by cyclic Jacobi rotations, ascending.
///
/// Only the Hermitian part of the input is used; callers are expected to
/// pass a matrix that is Hermitian to working precision.
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Result<Vec<f64>> {
    if !m.is_square() {
        return Err(DualityError::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    // Symmetrize first: a = (m + m†)/2.
    let mut a = m.add_scaled(&m.adjoint(), 1.0)?.scale(0.5);
    for i in 0..n {
        a[(i, i)] = Complex64::new(a[(i, i)].re, 0.0);
    }

    let total: f64 = a.data.iter().map(|z| z.norm_sqr()).sum();
    let threshold = (f64::EPSILON * f64::EPSILON) * total;

    for _ in 0..JACOBI_MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)].norm_sqr())
            .sum();
        if off <= threshold {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                jacobi_rotate(&mut a, p, q);
            }
        }
    }

    let mut eig: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    eig.sort_by(f64::total_cmp);
    Ok(eig)
}

/// Annihilates `a[p][q]` with the unitary `J = diag(1, e^{-iα}) · R(θ)`
/// acting on the (p, q) plane, replacing `a` by `J† a J`.
fn jacobi_rotate(a: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let modulus = apq.norm();
    if modulus == 0.0 {
        return;
    }
    let phase = apq / modulus;
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let zeta = (aqq - app) / (2.0 * modulus);
    let t = if zeta.is_infinite() {
        0.0
    } else {
        zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    let phase_conj = phase.conj();
    let j_pp = Complex64::new(c, 0.0);
    let j_pq = Complex64::new(s, 0.0);
    let j_qp = phase_conj * (-s);
    let j_qq = phase_conj * c;

    let n = a.rows();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * j_pp + akq * j_qp;
        a[(k, q)] = akp * j_pq + akq * j_qq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = j_pp.conj() * apk + j_qp.conj() * aqk;
        a[(q, k)] = j_pq.conj() * apk + j_qq.conj() * aqk;
    }
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
    a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);
}

/// Number of eigenvalues above `tol` times the largest one.
///
/// Intended for Hermitian PSD inputs such as Gram matrices.
pub fn numerical_rank(m: &ComplexMatrix, tol: f64) -> Result<usize> {
    if !(tol > 0.0) {
        return Err(DualityError::Precondition(format!(
            "rank tolerance must be positive, got {tol}"
        )));
    }
    let eig = hermitian_eigenvalues(m)?;
    let largest = eig.iter().fold(0.0_f64, |acc, &x| acc.max(x.abs()));
    if largest == 0.0 {
        return Ok(0);
    }
    Ok(eig.iter().filter(|&&x| x > tol * largest).count())
}

/// True iff `m` is Hermitian, PSD and unit-trace, each within `tol`.
pub fn is_hermitian_psd_trace1(m: &ComplexMatrix, tol: f64) -> bool {
    if !m.is_square() || m.data.iter().any(|z| !z.is_finite()) {
        return false;
    }
    if m.hermiticity_defect() > tol {
        return false;
    }
    let tr = m.trace();
    if (tr.re - 1.0).abs() > tol || tr.im.abs() > tol {
        return false;
    }
    match hermitian_eigenvalues(m) {
        Ok(eig) => eig.iter().all(|&x| x >= -tol),
        Err(_) => false,
    }
}
