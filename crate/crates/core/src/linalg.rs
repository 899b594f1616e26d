//! Small dense complex linear algebra: matrices, state vectors, Kronecker
//! products and a cyclic Jacobi eigensolver for Hermitian matrices.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);

/// Largest |A - A^H| entry accepted as Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-10;
/// Eigenvalues closer than this are reported as one degenerate cluster.
pub const DEGENERACY_GAP: f64 = 1e-8;
/// Entries below this magnitude are skipped when fixing eigenvector phases.
const PHASE_PIVOT: f64 = 1e-9;
const MAX_SWEEPS: usize = 100;

/// Dense row-major complex matrix.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<C64>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Self::from_vec(r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&x| C64::new(x, 0.0)).collect())
                .collect(),
        )
    }

    pub fn diagonal(values: &[f64]) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = C64::new(v, 0.0);
        }
        m
    }

    /// `|u><v|`.
    pub fn outer(u: &StateVector, v: &StateVector) -> Self {
        let mut m = Self::zeros(u.dim(), v.dim());
        for i in 0..u.dim() {
            for j in 0..v.dim() {
                m[(i, j)] = u[i] * v[j].conj();
            }
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

    pub fn entries(&self) -> &[C64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[C64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> StateVector {
        StateVector::new((0..self.rows).map(|i| self[(i, j)]).collect())
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(j, i)] = self[(i, j)].conj();
            }
        }
        m
    }

    pub fn checked_mul(&self, other: &ComplexMatrix) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut m = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                for j in 0..other.cols {
                    m.data[i * other.cols + j] += a * other.data[k * other.cols + j];
                }
            }
        }
        Ok(m)
    }

    fn zip_with(&self, other: &ComplexMatrix, f: impl Fn(C64, C64) -> C64) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }

    pub fn add(&self, other: &ComplexMatrix) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &ComplexMatrix) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, s: C64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| a * s).collect(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|a| a.norm()).fold(0.0, f64::max)
    }

    /// Max-entry norm of `self - other`.
    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> Result<f64> {
        Ok(self.sub(other)?.max_abs())
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn hermitian_deviation(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut dev: f64 = 0.0;
        for i in 0..self.rows {
            for j in i..self.cols {
                dev = dev.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        dev
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_deviation() <= tol
    }

    /// `|| U^H U - I ||_max`.
    pub fn unitarity_residual(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let p = self.adjoint().checked_mul(self).expect("square");
        p.max_abs_diff(&Self::identity(self.rows))
            .expect("same shape")
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_residual() <= tol
    }

    /// Kronecker product.
    pub fn tensor(&self, other: &ComplexMatrix) -> Self {
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        let mut m = Self::zeros(r, c);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self[(i, j)];
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        m[(i * other.rows + k, j * other.cols + l)] = a * other[(k, l)];
                    }
                }
            }
        }
        m
    }

    pub fn apply(&self, v: &StateVector) -> Result<StateVector> {
        if self.cols != v.dim() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix applied to a {}-vector",
                self.rows,
                self.cols,
                v.dim()
            )));
        }
        Ok(StateVector::new(
            (0..self.rows)
                .map(|i| {
                    self.row(i)
                        .iter()
                        .zip(v.amplitudes())
                        .map(|(a, b)| a * b)
                        .sum()
                })
                .collect(),
        ))
    }

    /// `A B - B A`.
    pub fn commutator(&self, other: &ComplexMatrix) -> Result<Self> {
        self.checked_mul(other)?.sub(&other.checked_mul(self)?)
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;

    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    /// Panics on mismatched shapes; use [`ComplexMatrix::checked_mul`] otherwise.
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.checked_mul(rhs).expect("matrix shapes must agree")
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for z in self.row(i) {
                write!(f, "{:+.6}{:+.6}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// A ket in a finite-dimensional Hilbert space. Normalization is not forced.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    data: Vec<C64>,
}

impl StateVector {
    pub fn new(data: Vec<C64>) -> Self {
        Self { data }
    }

    pub fn from_real(values: &[f64]) -> Self {
        Self::new(values.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    pub fn basis(dim: usize, i: usize) -> Self {
        let mut data = vec![ZERO; dim];
        data[i] = ONE;
        Self { data }
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            data: vec![ZERO; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.data.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.data
    }

    pub fn is_finite(&self) -> bool {
        self.data
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// `<self|other>`, conjugate-linear in `self`.
    pub fn inner(&self, other: &StateVector) -> Result<C64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch(format!(
                "inner product of {}- and {}-vectors",
                self.dim(),
                other.dim()
            )));
        }
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    pub fn norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn normalized(&self) -> Option<StateVector> {
        let n = self.norm();
        (n > 0.0).then(|| self.scale(C64::new(1.0 / n, 0.0)))
    }

    pub fn scale(&self, s: C64) -> StateVector {
        StateVector::new(self.data.iter().map(|&a| a * s).collect())
    }

    pub fn add(&self, other: &StateVector) -> Result<StateVector> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch("vector sum".into()));
        }
        Ok(StateVector::new(
            self.data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        ))
    }

    pub fn sub(&self, other: &StateVector) -> Result<StateVector> {
        self.add(&other.scale(C64::new(-1.0, 0.0)))
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn tensor(&self, other: &StateVector) -> StateVector {
        StateVector::new(
            self.data
                .iter()
                .flat_map(|a| other.data.iter().map(move |b| a * b))
                .collect(),
        )
    }
}

impl Index<usize> for StateVector {
    type Output = C64;

    fn index(&self, i: usize) -> &C64 {
        &self.data[i]
    }
}

pub fn inner(u: &StateVector, v: &StateVector) -> Result<C64> {
    u.inner(v)
}

pub fn tensor(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a.tensor(b)
}

pub fn is_unitary(u: &ComplexMatrix) -> bool {
    u.is_unitary(1e-10)
}

/// A group of numerically equal eigenvalues and the projector onto their
/// joint eigenspace.
#[derive(Debug, Clone)]
pub struct EigenCluster {
    pub value: f64,
    pub multiplicity: usize,
    /// Index of the first eigenvalue of the cluster in ascending order.
    pub start: usize,
    pub projector: ComplexMatrix,
}

/// Ascending eigenvalues with orthonormal eigenvectors stored as columns.
#[derive(Debug, Clone)]
pub struct SpectralData {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
    pub clusters: Vec<EigenCluster>,
}

impl SpectralData {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvector(&self, i: usize) -> StateVector {
        self.eigenvectors.column(i)
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.clusters.iter().all(|c| c.multiplicity == 1)
    }

    pub fn multiplicities(&self) -> Vec<usize> {
        self.clusters.iter().map(|c| c.multiplicity).collect()
    }

    /// `sum_i u_i |e_i><e_i|`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.dim();
        let mut m = ComplexMatrix::zeros(n, n);
        for (i, &u) in self.eigenvalues.iter().enumerate() {
            let e = self.eigenvector(i);
            let p = ComplexMatrix::outer(&e, &e).scale(C64::new(u, 0.0));
            m = m.add(&p).expect("square");
        }
        m
    }

    pub fn cluster_for(&self, value: f64, tol: f64) -> Option<&EigenCluster> {
        self.clusters
            .iter()
            .find(|c| (c.value - value).abs() <= tol)
    }
}

/// Hermitian eigendecomposition with default tolerances.
pub fn eigh(a: &ComplexMatrix) -> Result<SpectralData> {
    eigh_with(a, HERMITIAN_TOL, DEGENERACY_GAP)
}

/// Cyclic complex Jacobi. Each step applies the unitary `W = D G` on the
/// `(p, q)` plane, where `D` rotates the phase of `a_pq` onto the real axis and
/// `G` is the real rotation annihilating the resulting symmetric 2x2 block.
///
/// Eigenvalues are returned in ascending order; each eigenvector is scaled so
/// its first entry above `PHASE_PIVOT` in magnitude is real and positive.
pub fn eigh_with(a: &ComplexMatrix, hermitian_tol: f64, gap: f64) -> Result<SpectralData> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "eigh needs a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    let dev = a.hermitian_deviation();
    if dev > hermitian_tol {
        return Err(Error::NotHermitian(dev));
    }
    let n = a.rows();
    // Symmetrize so rounding in the input cannot leak into the rotations.
    let mut m = a.add(&a.adjoint())?.scale(C64::new(0.5, 0.0));
    let mut v = ComplexMatrix::identity(n);
    let scale = m.max_abs().max(f64::MIN_POSITIVE);

    let off_norm = |m: &ComplexMatrix| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += m[(i, j)].norm_sqr();
                }
            }
        }
        s.sqrt()
    };

    let mut sweeps = 0;
    loop {
        let off = off_norm(&m);
        if off <= 1e-15 * scale || n < 2 {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence {
                sweeps,
                residual: off,
            });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[(p, q)];
                let r = apq.norm();
                if r <= 1e-300 {
                    continue;
                }
                let phase = apq / r; // e^{i alpha}
                let app = m[(p, p)].re;
                let aqq = m[(q, q)].re;
                let theta = 0.5 * (2.0 * r).atan2(app - aqq);
                let (s, c) = theta.sin_cos();
                let w_pp = C64::new(c, 0.0);
                let w_pq = C64::new(-s, 0.0);
                let w_qp = phase.conj() * s;
                let w_qq = phase.conj() * c;
                // m <- m W
                for i in 0..n {
                    let (x, y) = (m[(i, p)], m[(i, q)]);
                    m[(i, p)] = x * w_pp + y * w_qp;
                    m[(i, q)] = x * w_pq + y * w_qq;
                }
                // m <- W^H m
                for j in 0..n {
                    let (x, y) = (m[(p, j)], m[(q, j)]);
                    m[(p, j)] = w_pp.conj() * x + w_qp.conj() * y;
                    m[(q, j)] = w_pq.conj() * x + w_qq.conj() * y;
                }
                m[(p, q)] = ZERO;
                m[(q, p)] = ZERO;
                m[(p, p)] = C64::new(m[(p, p)].re, 0.0);
                m[(q, q)] = C64::new(m[(q, q)].re, 0.0);
                // v <- v W
                for i in 0..n {
                    let (x, y) = (v[(i, p)], v[(i, q)]);
                    v[(i, p)] = x * w_pp + y * w_qp;
                    v[(i, q)] = x * w_pq + y * w_qq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(i, i)].re.total_cmp(&m[(j, j)].re).then(i.cmp(&j)));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| m[(i, i)].re).collect();
    let mut vectors = ComplexMatrix::zeros(n, n);
    for (col, &src) in order.iter().enumerate() {
        let pivot = (0..n)
            .map(|i| v[(i, src)])
            .find(|z| z.norm() > PHASE_PIVOT)
            .unwrap_or(ONE);
        let fix = pivot.conj() / pivot.norm();
        for i in 0..n {
            vectors[(i, col)] = v[(i, src)] * fix;
        }
    }

    let mut clusters: Vec<EigenCluster> = Vec::new();
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && eigenvalues[end] - eigenvalues[end - 1] < gap {
            end += 1;
        }
        let mut projector = ComplexMatrix::zeros(n, n);
        for col in start..end {
            let e = vectors.column(col);
            projector = projector.add(&ComplexMatrix::outer(&e, &e))?;
        }
        let value = eigenvalues[start..end].iter().sum::<f64>() / (end - start) as f64;
        clusters.push(EigenCluster {
            value,
            multiplicity: end - start,
            start,
            projector,
        });
        start = end;
    }

    Ok(SpectralData {
        eigenvalues,
        eigenvectors: vectors,
        clusters,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn diagonal_spectrum_is_sorted() {
        let s = eigh(&ComplexMatrix::diagonal(&[1.0, -1.0])).unwrap();
        assert_eq!(s.eigenvalues, vec![-1.0, 1.0]);
        assert!((s.eigenvector(0)[1] - ONE).norm() < 1e-15);
    }

    #[test]
    fn swap_matrix_eigenvectors() {
        let x = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap();
        let s = eigh(&x).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((s.eigenvalues[0] + 1.0).abs() < 1e-14);
        assert!((s.eigenvalues[1] - 1.0).abs() < 1e-14);
        let minus = s.eigenvector(0);
        let plus = s.eigenvector(1);
        assert!((minus[0] - c(h, 0.0)).norm() < 1e-14 && (minus[1] - c(-h, 0.0)).norm() < 1e-14);
        assert!((plus[0] - c(h, 0.0)).norm() < 1e-14 && (plus[1] - c(h, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn complex_hermitian_2x2() {
        // sigma_y has eigenvalues -1, 1
        let y = ComplexMatrix::from_rows(vec![vec![ZERO, c(0.0, -1.0)], vec![c(0.0, 1.0), ZERO]])
            .unwrap();
        let s = eigh(&y).unwrap();
        assert!((s.eigenvalues[0] + 1.0).abs() < 1e-14);
        assert!(s.reconstruct().max_abs_diff(&y).unwrap() < 1e-14);
        assert!(s.eigenvectors.is_unitary(1e-12));
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]).unwrap();
        assert!(matches!(eigh(&m), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn degenerate_cluster_reported_by_projector() {
        let s = eigh(&ComplexMatrix::diagonal(&[2.0, 0.0, 2.0])).unwrap();
        assert_eq!(s.multiplicities(), vec![1, 2]);
        let p = &s.clusters[1].projector;
        assert!(
            p.max_abs_diff(&ComplexMatrix::diagonal(&[1.0, 0.0, 1.0]))
                .unwrap()
                < 1e-14
        );
    }

    #[test]
    fn basic_products() {
        assert!(is_unitary(&ComplexMatrix::identity(3)));
        assert_eq!(
            tensor(&ComplexMatrix::identity(2), &ComplexMatrix::identity(2)),
            ComplexMatrix::identity(4)
        );
        let v = StateVector::new(vec![c(1.0, 2.0), c(-0.5, 0.25)]);
        let ip = inner(&v, &v).unwrap();
        assert!(ip.im.abs() < 1e-15 && (ip.re - v.norm().powi(2)).abs() < 1e-14);
        assert!(ComplexMatrix::identity(2)
            .apply(&StateVector::zeros(3))
            .is_err());
        assert!(ComplexMatrix::identity(2)
            .checked_mul(&ComplexMatrix::identity(3))
            .is_err());
    }

    #[test]
    fn inner_is_conjugate_linear_in_first_argument() {
        let u = StateVector::basis(2, 0);
        let v = StateVector::basis(2, 0);
        let i = c(0.0, 1.0);
        assert_eq!(u.scale(i).inner(&v).unwrap(), -i);
        assert_eq!(u.inner(&v.scale(i)).unwrap(), i);
    }
}
