//! Dense complex matrices and unit vectors.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{contract, Error, Result};

pub type ComplexMatrix = DMatrix<Complex64>;

/// Largest Hilbert space dimension accepted anywhere in the module.
pub const MAX_DIMENSION: usize = 64;

/// Tolerance for operator invariants (Hermiticity, idempotence, trace).
pub const VALIDATION_TOL: f64 = 1e-9;

/// Tolerance for comparing probabilities and unit norms.
pub const PROBABILITY_TOL: f64 = 1e-10;

pub(crate) fn check_dimension(n: usize) -> Result<()> {
    if n == 0 {
        return contract("Hilbert space dimension must be at least 1");
    }
    if n > MAX_DIMENSION {
        return Err(Error::Capacity { what: "Hilbert space dimension".into(), needed: n as u128, limit: MAX_DIMENSION as u128 });
    }
    Ok(())
}

/// Dimension of a square matrix with finite entries.
pub(crate) fn check_operator(m: &ComplexMatrix) -> Result<usize> {
    if m.nrows() != m.ncols() {
        return contract(format!("operator is {}x{}, not square", m.nrows(), m.ncols()));
    }
    check_dimension(m.nrows())?;
    if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return contract("operator has a non-finite entry");
    }
    Ok(m.nrows())
}

pub(crate) fn check_same_dimension(expected: usize, actual: usize) -> Result<()> {
    if expected == actual {
        Ok(())
    } else {
        Err(Error::Dimension { expected, actual })
    }
}

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn identity(n: usize) -> ComplexMatrix {
    ComplexMatrix::identity(n, n)
}

/// Builds a matrix from real-part rows. Handy in tests and fixtures.
pub fn real_matrix(rows: &[&[f64]]) -> ComplexMatrix {
    let n = rows.len();
    let m = rows.first().map_or(0, |r| r.len());
    ComplexMatrix::from_fn(n, m, |i, j| c(rows[i][j], 0.0))
}

pub fn diag(values: &[f64]) -> ComplexMatrix {
    ComplexMatrix::from_diagonal(&DVector::from_iterator(values.len(), values.iter().map(|&v| c(v, 0.0))))
}

/// `‖M − M†‖` in the Frobenius norm.
pub fn hermitian_residual(m: &ComplexMatrix) -> f64 {
    (m - m.adjoint()).norm()
}

/// `tr(AB)` without forming the product.
pub fn trace_product(a: &ComplexMatrix, b: &ComplexMatrix) -> Complex64 {
    let n = a.nrows();
    let mut s = Complex64::new(0.0, 0.0);
    for i in 0..n {
        for j in 0..a.ncols() {
            s += a[(i, j)] * b[(j, i)];
        }
    }
    s
}

pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a.kronecker(b)
}

/// The Pauli matrices `σx, σy, σz`.
pub fn pauli() -> [ComplexMatrix; 3] {
    let o = c(0.0, 0.0);
    let one = c(1.0, 0.0);
    let i = c(0.0, 1.0);
    [
        ComplexMatrix::from_row_slice(2, 2, &[o, one, one, o]),
        ComplexMatrix::from_row_slice(2, 2, &[o, -i, i, o]),
        ComplexMatrix::from_row_slice(2, 2, &[one, o, o, -one]),
    ]
}

/// `(I + w·σ)/2` for a real 3-vector `w`.
pub fn bloch_operator(w: [f64; 3]) -> ComplexMatrix {
    let [sx, sy, sz] = pauli();
    (identity(2) + sx * c(w[0], 0.0) + sy * c(w[1], 0.0) + sz * c(w[2], 0.0)) * c(0.5, 0.0)
}

/// A unit vector of a finite-dimensional Hilbert space.
#[derive(Debug, Clone, PartialEq)]
pub struct Ket(DVector<Complex64>);

impl Ket {
    /// Accepts amplitudes whose norm is 1 within [`PROBABILITY_TOL`].
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Ket> {
        let v = DVector::from_vec(amplitudes);
        check_dimension(v.len())?;
        if v.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return contract("ket has a non-finite amplitude");
        }
        let n = v.norm();
        if (n - 1.0).abs() > PROBABILITY_TOL {
            return contract(format!("ket has norm {n}, expected 1"));
        }
        Ok(Ket(v))
    }

    /// Rescales nonzero amplitudes to unit norm.
    pub fn normalized(amplitudes: Vec<Complex64>) -> Result<Ket> {
        let v = DVector::from_vec(amplitudes);
        check_dimension(v.len())?;
        let n = v.norm();
        if !n.is_finite() || n < 1e-300 {
            return contract("cannot normalize a zero or non-finite vector");
        }
        Ok(Ket(v.unscale(n)))
    }

    pub fn from_real(amplitudes: &[f64]) -> Result<Ket> {
        Ket::normalized(amplitudes.iter().map(|&a| c(a, 0.0)).collect())
    }

    /// The `k`-th computational basis vector.
    pub fn basis(n: usize, k: usize) -> Ket {
        assert!(k < n, "basis index {k} out of range for dimension {n}");
        let mut v = DVector::zeros(n);
        v[k] = c(1.0, 0.0);
        Ket(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn amplitudes(&self) -> &DVector<Complex64> {
        &self.0
    }

    /// `⟨self, other⟩`, antilinear in `self`.
    pub fn inner(&self, other: &Ket) -> Complex64 {
        self.0.dotc(&other.0)
    }

    pub fn tensor(&self, other: &Ket) -> Ket {
        Ket(self.0.kronecker(&other.0))
    }

    /// `|c⟩⟨c|`.
    pub fn projector(&self) -> ComplexMatrix {
        &self.0 * self.0.adjoint()
    }

    /// `⟨c, A c⟩`.
    pub fn expectation(&self, a: &ComplexMatrix) -> Complex64 {
        self.0.dotc(&(a * &self.0))
    }

    pub(crate) fn from_unit_vector(v: DVector<Complex64>) -> Ket {
        Ket(v)
    }
}
