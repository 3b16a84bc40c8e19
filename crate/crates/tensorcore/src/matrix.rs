//! Row-major dense complex matrices.

use num_complex::Complex64;
use thiserror::Error;

/// Errors from shape-sensitive matrix operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    /// Inner dimensions do not agree for a product.
    #[error("matmul dimension mismatch: ({0}x{1}) * ({2}x{3})")]
    MatMulShape(usize, usize, usize, usize),
    /// Two matrices that must share a shape do not.
    #[error("shape mismatch: ({0}x{1}) vs ({2}x{3})")]
    Shape(usize, usize, usize, usize),
    /// A constructor was handed rows of unequal length.
    #[error("ragged rows: row {0} has length {1}, expected {2}")]
    Ragged(usize, usize, usize),
    /// A constructor was handed no rows or no columns.
    #[error("matrix must have at least one row and one column")]
    Empty,
}

/// A dense complex matrix, stored row-major.
///
/// Entry `(r, c)` lives at `entries[r * cols + c]`. All operations either
/// return a fresh matrix or a scalar; nothing mutates in place, which keeps
/// the call sites in the equality oracles easy to audit.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    /// The all-zero matrix of the given shape.
    ///
    /// # Panics
    /// Panics if either dimension is zero.
    #[must_use]
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        Self {
            rows,
            cols,
            entries: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    /// The n×n identity.
    #[must_use]
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Builds a matrix from explicit rows.
    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Result<Self, MatrixError> {
        if rows.is_empty() || rows[0].is_empty() {
            return Err(MatrixError::Empty);
        }
        let cols = rows[0].len();
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(MatrixError::Ragged(i, r.len(), cols));
            }
        }
        let n_rows = rows.len();
        let entries = rows.into_iter().flatten().collect();
        Ok(Self {
            rows: n_rows,
            cols,
            entries,
        })
    }

    /// Builds a matrix of the given shape from real entries (imaginary
    /// parts zero). Convenience for the many real-valued fixtures in tests.
    pub fn from_real(rows: usize, cols: usize, data: &[f64]) -> Result<Self, MatrixError> {
        if rows == 0 || cols == 0 {
            return Err(MatrixError::Empty);
        }
        if data.len() != rows * cols {
            return Err(MatrixError::Shape(rows, cols, 1, data.len()));
        }
        Ok(Self {
            rows,
            cols,
            entries: data.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        })
    }

    /// Builds a matrix of the given shape directly from row-major entries.
    pub fn from_entries(
        rows: usize,
        cols: usize,
        entries: Vec<Complex64>,
    ) -> Result<Self, MatrixError> {
        if rows == 0 || cols == 0 {
            return Err(MatrixError::Empty);
        }
        if entries.len() != rows * cols {
            return Err(MatrixError::Shape(rows, cols, 1, entries.len()));
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    /// Builds a column vector from amplitudes.
    pub fn column(data: &[Complex64]) -> Result<Self, MatrixError> {
        if data.is_empty() {
            return Err(MatrixError::Empty);
        }
        Ok(Self {
            rows: data.len(),
            cols: 1,
            entries: data.to_vec(),
        })
    }

    /// A 1×1 matrix holding a single scalar.
    #[must_use]
    pub fn scalar(z: Complex64) -> Self {
        Self {
            rows: 1,
            cols: 1,
            entries: vec![z],
        }
    }

    /// Number of rows.
    #[must_use]
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Number of columns.
    #[must_use]
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Entry at `(r, c)`.
    ///
    /// # Panics
    /// Panics if the index is out of range.
    #[must_use]
    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        assert!(r < self.rows && c < self.cols, "index out of range");
        self.entries[r * self.cols + c]
    }

    /// Sets entry `(r, c)`.
    ///
    /// # Panics
    /// Panics if the index is out of range.
    pub fn set(&mut self, r: usize, c: usize, z: Complex64) {
        assert!(r < self.rows && c < self.cols, "index out of range");
        self.entries[r * self.cols + c] = z;
    }

    /// Read-only view of the row-major entries.
    #[must_use]
    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    /// Matrix product `self * rhs`.
    pub fn matmul(&self, rhs: &Self) -> Result<Self, MatrixError> {
        if self.cols != rhs.rows {
            return Err(MatrixError::MatMulShape(
                self.rows, self.cols, rhs.rows, rhs.cols,
            ));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.entries[i * self.cols + k];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.entries[i * rhs.cols + j] += a * rhs.entries[k * rhs.cols + j];
                }
            }
        }
        Ok(out)
    }

    /// Kronecker (tensor) product `self ⊗ rhs`.
    ///
    /// Row/column index blocks of `self` are more significant: entry
    /// `((i1,i2),(j1,j2))` of the product is `self[i1,j1] * rhs[i2,j2]` at
    /// flat position `(i1*rhs.rows + i2, j1*rhs.cols + j2)`.
    #[must_use]
    pub fn kron(&self, rhs: &Self) -> Self {
        let rows = self.rows * rhs.rows;
        let cols = self.cols * rhs.cols;
        let mut out = Self::zeros(rows, cols);
        for i1 in 0..self.rows {
            for j1 in 0..self.cols {
                let a = self.entries[i1 * self.cols + j1];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for i2 in 0..rhs.rows {
                    for j2 in 0..rhs.cols {
                        out.entries[(i1 * rhs.rows + i2) * cols + (j1 * rhs.cols + j2)] =
                            a * rhs.entries[i2 * rhs.cols + j2];
                    }
                }
            }
        }
        out
    }

    /// Conjugate transpose.
    #[must_use]
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.entries[c * self.rows + r] = self.entries[r * self.cols + c].conj();
            }
        }
        out
    }

    /// Transpose without conjugation.
    #[must_use]
    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.entries[c * self.rows + r] = self.entries[r * self.cols + c];
            }
        }
        out
    }

    /// Entrywise scaling by a complex factor.
    #[must_use]
    pub fn scale(&self, z: Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|&e| e * z).collect(),
        }
    }

    /// Entrywise sum.
    pub fn add(&self, rhs: &Self) -> Result<Self, MatrixError> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(MatrixError::Shape(self.rows, self.cols, rhs.rows, rhs.cols));
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(&a, &b)| a + b)
                .collect(),
        })
    }

    /// Entrywise difference `self − rhs`.
    pub fn sub(&self, rhs: &Self) -> Result<Self, MatrixError> {
        self.add(&rhs.scale(Complex64::new(-1.0, 0.0)))
    }

    /// Frobenius (entrywise 2-) norm: `sqrt(Σ |a_ij|²)`.
    #[must_use]
    pub fn two_norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entry magnitude, useful for scale-aware diagnostics.
    #[must_use]
    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Entrywise comparison with absolute tolerance: every `|a_ij − b_ij|`
    /// must be ≤ `tol`. Shapes must match exactly (a shape mismatch is
    /// `false`, not an error — comparing differently-shaped operators is a
    /// legitimate question with answer "no").
    #[must_use]
    pub fn approx_equal(&self, rhs: &Self, tol: f64) -> bool {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return false;
        }
        self.entries
            .iter()
            .zip(&rhs.entries)
            .all(|(&a, &b)| (a - b).norm() <= tol)
    }

    /// True when `self = λ · rhs` for some unit-modulus λ, to tolerance.
    ///
    /// λ is determined from the largest-magnitude entry of `rhs`: with that
    /// entry `b` and the corresponding entry `a` of `self`, λ = a/b is
    /// normalized to unit modulus and the comparison is
    /// `approx_equal(self, λ·rhs, tol)`. An all-zero `rhs` (max magnitude
    /// ≤ tol) is phase-equal only to an all-zero `self`.
    #[must_use]
    pub fn equal_up_to_global_phase(&self, rhs: &Self, tol: f64) -> bool {
        match self.global_phase_against(rhs, tol) {
            PhaseRelation::Zero => true,
            PhaseRelation::Phase(lambda) => self.approx_equal(&rhs.scale(lambda), tol),
            PhaseRelation::No => false,
        }
    }

    /// True when `self = ±rhs` to tolerance.
    #[must_use]
    pub fn equal_up_to_sign(&self, rhs: &Self, tol: f64) -> bool {
        self.approx_equal(rhs, tol) || self.approx_equal(&rhs.scale(Complex64::new(-1.0, 0.0)), tol)
    }

    /// The unit phase λ with `self ≈ λ·rhs`, if one exists.
    ///
    /// Returns `None` when no unit phase works, `Some(None)` when both sides
    /// are zero (any phase works), and `Some(Some(λ))` otherwise. Exposed so
    /// callers that need the phase value itself (scalar bookkeeping checks)
    /// do not re-derive it.
    #[must_use]
    pub fn global_phase_factor(&self, rhs: &Self, tol: f64) -> Option<Option<Complex64>> {
        match self.global_phase_against(rhs, tol) {
            PhaseRelation::Zero => Some(None),
            PhaseRelation::Phase(lambda) => {
                if self.approx_equal(&rhs.scale(lambda), tol) {
                    Some(Some(lambda))
                } else {
                    None
                }
            }
            PhaseRelation::No => None,
        }
    }

    fn global_phase_against(&self, rhs: &Self, tol: f64) -> PhaseRelation {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return PhaseRelation::No;
        }
        // Anchor the phase at rhs's largest-magnitude entry for stability.
        let (mut best_idx, mut best_mag) = (0usize, 0.0f64);
        for (i, z) in rhs.entries.iter().enumerate() {
            let m = z.norm();
            if m > best_mag {
                best_mag = m;
                best_idx = i;
            }
        }
        if best_mag <= tol {
            // rhs is (numerically) zero: equal up to phase iff self is too.
            if self.max_abs() <= tol {
                return PhaseRelation::Zero;
            }
            return PhaseRelation::No;
        }
        let a = self.entries[best_idx];
        if a.norm() <= tol {
            return PhaseRelation::No;
        }
        let lambda = a / rhs.entries[best_idx];
        let lambda = lambda / lambda.norm();
        PhaseRelation::Phase(lambda)
    }
}

enum PhaseRelation {
    /// Both sides zero; any phase relates them.
    Zero,
    /// Candidate unit phase extracted from the anchor entry.
    Phase(Complex64),
    /// No unit phase can relate them.
    No,
}

/// Common fixed operators, provided once so every crate and test agrees on
/// the matrix conventions (qubit 0 = most significant index bit).
impl ComplexMatrix {
    /// Pauli X.
    #[must_use]
    pub fn pauli_x() -> Self {
        Self::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0]).unwrap()
    }

    /// Pauli Y.
    #[must_use]
    pub fn pauli_y() -> Self {
        Self::from_rows(vec![
            vec![Complex64::new(0.0, 0.0), Complex64::new(0.0, -1.0)],
            vec![Complex64::new(0.0, 1.0), Complex64::new(0.0, 0.0)],
        ])
        .unwrap()
    }

    /// Pauli Z.
    #[must_use]
    pub fn pauli_z() -> Self {
        Self::from_real(2, 2, &[1.0, 0.0, 0.0, -1.0]).unwrap()
    }

    /// Hadamard.
    #[must_use]
    pub fn hadamard() -> Self {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        Self::from_real(2, 2, &[s, s, s, -s]).unwrap()
    }

    /// Z-axis rotation as the diagonal `diag(1, e^{iθ})`.
    #[must_use]
    pub fn rz(theta: f64) -> Self {
        Self::from_rows(vec![
            vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
            vec![Complex64::new(0.0, 0.0), Complex64::from_polar(1.0, theta)],
        ])
        .unwrap()
    }

    /// CNOT with the first (more significant) qubit as control.
    #[must_use]
    pub fn cnot() -> Self {
        Self::from_real(
            4,
            4,
            &[
                1.0, 0.0, 0.0, 0.0, //
                0.0, 1.0, 0.0, 0.0, //
                0.0, 0.0, 0.0, 1.0, //
                0.0, 0.0, 1.0, 0.0,
            ],
        )
        .unwrap()
    }

    /// Computational basis ket |b⟩ as a 2×1 column.
    #[must_use]
    pub fn ket_basis(b: u8) -> Self {
        match b {
            0 => Self::from_real(2, 1, &[1.0, 0.0]).unwrap(),
            1 => Self::from_real(2, 1, &[0.0, 1.0]).unwrap(),
            _ => panic!("basis bit must be 0 or 1"),
        }
    }

    /// |+⟩ or |−⟩ as a 2×1 column (`sign` = false ⇒ |+⟩).
    #[must_use]
    pub fn ket_plus_minus(minus: bool) -> Self {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        if minus {
            Self::from_real(2, 1, &[s, -s]).unwrap()
        } else {
            Self::from_real(2, 1, &[s, s]).unwrap()
        }
    }
}
