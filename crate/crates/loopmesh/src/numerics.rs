//! Dense complex linear algebra primitives, Haar-random unitary sampling and
//! the deterministic randomness contract shared by the Monte-Carlo drivers.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::{Error, Result};

/// Dense square-or-rectangular complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn from_entries(rows: usize, cols: usize, entries: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidDimension { min: 1, got: 0 });
        }
        if entries.len() != rows * cols {
            return Err(Error::InvalidArgument(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn diagonal(values: &[Complex64]) -> Self {
        let n = values.len();
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = values[i];
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

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn is_finite(&self) -> bool {
        self.entries.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn mul(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(
                self.rows, self.cols, other.rows, other.cols,
            ));
        }
        let mut out = ComplexMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn adjoint(&self) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn scale(&self, factor: Complex64) -> ComplexMatrix {
        let entries = self.entries.iter().map(|z| z * factor).collect();
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// ‖U†U − I‖_F, zero for a perfect unitary.
    pub fn unitarity_defect(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let gram = self.adjoint().mul(self).expect("square");
        let mut sum = 0.0;
        for i in 0..self.rows {
            for j in 0..self.cols {
                let expect = if i == j { 1.0 } else { 0.0 };
                sum += (gram[(i, j)] - expect).norm_sqr();
            }
        }
        sum.sqrt()
    }

    /// Left-multiply in place by a 2x2 block acting on rows `(p-1, p)`, 1-based `p`.
    pub fn apply_two_mode_left(&mut self, g: &ComplexMatrix, pair: usize) {
        debug_assert_eq!(g.rows, 2);
        debug_assert_eq!(g.cols, 2);
        let (a, b) = (pair - 1, pair);
        for j in 0..self.cols {
            let top = self[(a, j)];
            let bot = self[(b, j)];
            self[(a, j)] = g[(0, 0)] * top + g[(0, 1)] * bot;
            self[(b, j)] = g[(1, 0)] * top + g[(1, 1)] * bot;
        }
    }

    /// Right-multiply in place by a 2x2 block acting on columns `(p-1, p)`, 1-based `p`.
    pub fn apply_two_mode_right(&mut self, g: &ComplexMatrix, pair: usize) {
        debug_assert_eq!(g.rows, 2);
        debug_assert_eq!(g.cols, 2);
        let (a, b) = (pair - 1, pair);
        for i in 0..self.rows {
            let left = self[(i, a)];
            let right = self[(i, b)];
            self[(i, a)] = left * g[(0, 0)] + right * g[(1, 0)];
            self[(i, b)] = left * g[(0, 1)] + right * g[(1, 1)];
        }
    }

    /// Scale row `mode-1` (1-based mode index) by a real factor.
    pub fn scale_row(&mut self, mode: usize, factor: f64) {
        let i = mode - 1;
        for j in 0..self.cols {
            self[(i, j)] *= factor;
        }
    }

    fn to_nalgebra(&self) -> DMatrix<Complex64> {
        DMatrix::from_fn(self.rows, self.cols, |i, j| self[(i, j)])
    }

    fn from_nalgebra(m: &DMatrix<Complex64>) -> Self {
        let mut out = Self::zeros(m.nrows(), m.ncols());
        for i in 0..m.nrows() {
            for j in 0..m.ncols() {
                out[(i, j)] = m[(i, j)];
            }
        }
        out
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.entries[i * self.cols + j]
    }
}

/// Deterministic per-trial randomness: ChaCha8 keyed by `base_seed`, with the
/// trial number selecting an independent stream. Identical
/// `(base_seed, stream_index)` pairs reproduce the draw sequence bit for bit
/// within one build; distinct stream indices are statistically independent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandomSource {
    pub base_seed: u64,
    pub stream_index: u64,
}

impl RandomSource {
    pub fn new(base_seed: u64, stream_index: u64) -> Self {
        Self { base_seed, stream_index }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.base_seed);
        rng.set_stream(self.stream_index);
        rng
    }
}

/// Sample an n x n unitary from the Haar measure: fill with standard complex
/// Gaussians, QR-orthonormalize, then fix each column's phase so the
/// triangular factor has positive real diagonal.
pub fn haar_unitary(n: usize, source: &RandomSource) -> Result<ComplexMatrix> {
    if n == 0 {
        return Err(Error::InvalidDimension { min: 1, got: 0 });
    }
    let mut rng = source.rng();
    let half = std::f64::consts::FRAC_1_SQRT_2;
    let gauss = DMatrix::from_fn(n, n, |_, _| {
        Complex64::new(
            rng.sample::<f64, _>(StandardNormal) * half,
            rng.sample::<f64, _>(StandardNormal) * half,
        )
    });
    let qr = gauss.qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            d / d.norm()
        };
        for i in 0..n {
            q[(i, j)] *= phase;
        }
    }
    Ok(ComplexMatrix::from_nalgebra(&q))
}

/// All singular values of a square matrix, descending. The internally
/// computed factors are checked to reconstruct the input to 1e-10.
pub fn svd_values(m: &ComplexMatrix) -> Result<Vec<f64>> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    if !m.is_finite() {
        return Err(Error::NonFinite);
    }
    let nm = m.to_nalgebra();
    let svd = nm.clone().try_svd(true, true, f64::EPSILON * 16.0, 0).ok_or(Error::SvdFailure)?;
    let recomposed = svd.clone().recompose().map_err(|_| Error::SvdFailure)?;
    let residual = (&nm - &recomposed).norm();
    if residual > 1e-10 * (1.0 + nm.norm()) {
        return Err(Error::SvdFailure);
    }
    let mut values: Vec<f64> = svd.singular_values.iter().copied().collect();
    values.sort_by(|a, b| b.partial_cmp(a).unwrap());
    Ok(values)
}

/// √(Σ|a_ij − b_ij|²).
pub fn frobenius_distance(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64> {
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return Err(Error::DimensionMismatch(a.rows(), a.cols(), b.rows(), b.cols()));
    }
    let sum: f64 = a
        .entries()
        .iter()
        .zip(b.entries())
        .map(|(x, y)| (x - y).norm_sqr())
        .sum();
    Ok(sum.sqrt())
}
