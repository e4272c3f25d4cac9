//! Dense complex matrices sized for a handful of qubits.
//!
//! Qubit 0 is the leftmost tensor factor, i.e. the most significant bit of a
//! computational-basis index. Every module in the crate shares this ordering.

mod eigen;

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub use eigen::{hermitian_eigenvalues, hermitian_eigh, Eigh};

/// Tolerance on |a_rc - conj(a_cr)| for density matrices.
pub const HERM_TOL: f64 = 1e-12;
/// Tolerance on |tr ρ - 1|.
pub const TRACE_TOL: f64 = 1e-10;
/// Smallest eigenvalue still accepted as non-negative.
pub const PSD_TOL: f64 = 1e-10;
/// Elementwise agreement required between closed-form and dense channels.
pub const ORACLE_TOL: f64 = 1e-10;
/// Hermiticity tolerance for inputs to the eigensolver.
pub const EIGEN_HERM_TOL: f64 = 1e-10;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const I: Complex64 = Complex64::new(0.0, 1.0);

#[inline]
pub(crate) fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[inline]
pub(crate) fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Square matrix of complex entries, row-major.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "matrix dimension must be at least 1");
        Self {
            dim,
            data: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = ONE;
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(dim);
        for r in 0..dim {
            for col in 0..dim {
                m.data[r * dim + col] = f(r, col);
            }
        }
        m
    }

    pub fn from_diagonal(diag: &[Complex64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let d: Vec<_> = diag.iter().map(|&x| re(x)).collect();
        Self::from_diagonal(&d)
    }

    /// Builds a matrix from row-major entries; the length must be a perfect square.
    pub fn from_row_major(data: Vec<Complex64>) -> Result<Self> {
        let dim = (data.len() as f64).sqrt().round() as usize;
        if dim == 0 || dim * dim != data.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} entries do not form a non-empty square matrix",
                data.len()
            )));
        }
        Ok(Self { dim, data })
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 || rows.iter().any(|r| r.len() != dim) {
            return Err(Error::DimensionMismatch("rows do not form a square matrix".into()));
        }
        Ok(Self {
            dim,
            data: rows.iter().flatten().copied().collect(),
        })
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn get(&self, row: usize, col: usize) -> Result<Complex64> {
        if row >= self.dim || col >= self.dim {
            return Err(Error::IndexOutOfRange {
                row,
                col,
                dim: self.dim,
            });
        }
        Ok(self.data[row * self.dim + col])
    }

    pub fn set(&mut self, row: usize, col: usize, value: Complex64) -> Result<()> {
        if row >= self.dim || col >= self.dim {
            return Err(Error::IndexOutOfRange {
                row,
                col,
                dim: self.dim,
            });
        }
        self.data[row * self.dim + col] = value;
        Ok(())
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.data[i * self.dim + i]).sum()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |r, col| self[(col, r)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |r, col| self[(col, r)])
    }

    pub fn scale(&self, k: Complex64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|&x| x * k).collect(),
        }
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "matmul dimension mismatch");
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == ZERO {
                    continue;
                }
                let row = &other.data[k * n..(k + 1) * n];
                let dst = &mut out.data[i * n..(i + 1) * n];
                for (d, &b) in dst.iter_mut().zip(row) {
                    *d += a * b;
                }
            }
        }
        out
    }

    /// Largest entrywise modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest |a_rc - conj(a_cr)|.
    pub fn hermiticity_deviation(&self) -> f64 {
        let n = self.dim;
        let mut worst = 0.0f64;
        for r in 0..n {
            for col in r..n {
                let d = (self[(r, col)] - self[(col, r)].conj()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_deviation() <= tol
    }

    /// Largest entry of |U U^† - I|.
    pub fn unitarity_deviation(&self) -> f64 {
        self.matmul(&self.adjoint())
            .max_abs_diff(&Self::identity(self.dim))
    }

    /// (A + A^†)/2.
    pub fn hermitian_part(&self) -> Self {
        Self::from_fn(self.dim, |r, col| (self[(r, col)] + self[(col, r)].conj()) * 0.5)
    }

    /// Number of qubits if the dimension is a power of two.
    pub fn qubit_count(&self) -> Option<usize> {
        self.dim
            .is_power_of_two()
            .then(|| self.dim.trailing_zeros() as usize)
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    #[inline]
    fn index(&self, (r, col): (usize, usize)) -> &Complex64 {
        assert!(
            r < self.dim && col < self.dim,
            "index ({r}, {col}) out of range for dimension {}",
            self.dim
        );
        &self.data[r * self.dim + col]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (r, col): (usize, usize)) -> &mut Complex64 {
        assert!(
            r < self.dim && col < self.dim,
            "index ({r}, {col}) out of range for dimension {}",
            self.dim
        );
        &mut self.data[r * self.dim + col]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs)
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{})", self.dim, self.dim)?;
        for r in 0..self.dim {
            let row: Vec<String> = (0..self.dim)
                .map(|col| {
                    let z = self[(r, col)];
                    format!("{:+.4}{:+.4}i", z.re, z.im)
                })
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Hermitian, unit-trace, positive semidefinite matrix on `nqubits` qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    mat: ComplexMatrix,
    nqubits: usize,
}

impl DensityMatrix {
    /// Validates Hermiticity, trace and positivity.
    pub fn new(mat: ComplexMatrix) -> Result<Self> {
        let nqubits = mat.qubit_count().ok_or_else(|| {
            Error::NotDensity(format!("dimension {} is not a power of two", mat.dim()))
        })?;
        let herm = mat.hermiticity_deviation();
        if herm > HERM_TOL {
            return Err(Error::NotHermitian { deviation: herm });
        }
        let tr = mat.trace();
        if (tr - ONE).norm() > TRACE_TOL {
            return Err(Error::NotDensity(format!(
                "trace is {:.12}{:+.3e}i, expected 1",
                tr.re, tr.im
            )));
        }
        let min = hermitian_eigenvalues(&mat)?[0];
        if min < -PSD_TOL {
            return Err(Error::NotPositive(format!("smallest eigenvalue {min:.3e}")));
        }
        Ok(Self { mat, nqubits })
    }

    /// Wraps a matrix known to be a valid state (products and unitary images of
    /// valid states). Checks only the cheap invariants in debug builds.
    pub(crate) fn from_trusted(mat: ComplexMatrix) -> Self {
        let nqubits = mat
            .qubit_count()
            .expect("trusted density matrix must have power-of-two dimension");
        debug_assert!(mat.hermiticity_deviation() < 1e-9);
        debug_assert!((mat.trace() - ONE).norm() < 1e-9);
        Self { mat, nqubits }
    }

    /// |ψ⟩⟨ψ| for a normalised state vector.
    pub fn pure(psi: &[Complex64]) -> Result<Self> {
        let norm: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
        if (norm - 1.0).abs() > TRACE_TOL {
            return Err(Error::NotDensity(format!("state vector has norm² {norm}")));
        }
        let n = psi.len();
        let mat = ComplexMatrix::from_fn(n, |r, col| psi[r] * psi[col].conj());
        if mat.qubit_count().is_none() {
            return Err(Error::NotDensity(format!("dimension {n} is not a power of two")));
        }
        Ok(Self::from_trusted(mat))
    }

    pub fn maximally_mixed(nqubits: usize) -> Self {
        let d = 1usize << nqubits;
        Self::from_trusted(ComplexMatrix::identity(d).scale(re(1.0 / d as f64)))
    }

    #[inline]
    pub fn nqubits(&self) -> usize {
        self.nqubits
    }

    #[inline]
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.mat
    }

    pub fn dim(&self) -> usize {
        self.mat.dim()
    }

    pub fn kron(&self, other: &DensityMatrix) -> DensityMatrix {
        DensityMatrix::from_trusted(kron(&self.mat, &other.mat))
    }
}

impl Index<(usize, usize)> for DensityMatrix {
    type Output = Complex64;
    fn index(&self, idx: (usize, usize)) -> &Complex64 {
        &self.mat[idx]
    }
}

/// Kronecker product a ⊗ b.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (na, nb) = (a.dim(), b.dim());
    let n = na * nb;
    let mut out = ComplexMatrix::zeros(n);
    for i in 0..na {
        for j in 0..na {
            let aij = a[(i, j)];
            if aij == ZERO {
                continue;
            }
            for k in 0..nb {
                for l in 0..nb {
                    out.data[(i * nb + k) * n + j * nb + l] = aij * b[(k, l)];
                }
            }
        }
    }
    out
}

/// Σ|λ_i| over the eigenvalues of a Hermitian matrix.
pub fn trace_norm(a: &ComplexMatrix) -> Result<f64> {
    Ok(hermitian_eigenvalues(a)?.iter().map(|l| l.abs()).sum())
}

/// Bit mask, in basis-index space, of the given qubits of an `nqubits` register.
fn qubit_mask(nqubits: usize, qubits: &[usize]) -> usize {
    qubits
        .iter()
        .fold(0usize, |m, &q| m | (1 << (nqubits - 1 - q)))
}

fn check_increasing(nqubits: usize, qubits: &[usize], what: &str) -> Result<()> {
    if qubits.is_empty() {
        return Err(Error::BadSubsystem(format!("{what}: empty qubit set")));
    }
    if let Some(&q) = qubits.iter().find(|&&q| q >= nqubits) {
        return Err(Error::BadSubsystem(format!(
            "{what}: qubit {q} out of range for {nqubits} qubits"
        )));
    }
    if qubits.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::BadSubsystem(format!(
            "{what}: qubits {qubits:?} must be strictly increasing"
        )));
    }
    Ok(())
}

/// Partial trace of an arbitrary operator on `nqubits` qubits, keeping `keep`
/// (strictly increasing) in their original order.
pub fn partial_trace_matrix(
    mat: &ComplexMatrix,
    nqubits: usize,
    keep: &[usize],
) -> Result<ComplexMatrix> {
    if mat.dim() != 1 << nqubits {
        return Err(Error::DimensionMismatch(format!(
            "dimension {} does not match {nqubits} qubits",
            mat.dim()
        )));
    }
    check_increasing(nqubits, keep, "partial trace")?;
    let traced: Vec<usize> = (0..nqubits).filter(|q| !keep.contains(q)).collect();

    // Scatter a compact index over `qubits` into a full basis index.
    let scatter = |compact: usize, qubits: &[usize]| -> usize {
        let m = qubits.len();
        qubits.iter().enumerate().fold(0usize, |acc, (k, &q)| {
            let bit = (compact >> (m - 1 - k)) & 1;
            acc | (bit << (nqubits - 1 - q))
        })
    };
    let dk = 1usize << keep.len();
    let dt = 1usize << traced.len();
    let keep_idx: Vec<usize> = (0..dk).map(|i| scatter(i, keep)).collect();
    let trace_idx: Vec<usize> = (0..dt).map(|i| scatter(i, &traced)).collect();

    let mut out = ComplexMatrix::zeros(dk);
    for (r, &kr) in keep_idx.iter().enumerate() {
        for (col, &kc) in keep_idx.iter().enumerate() {
            let mut acc = ZERO;
            for &t in &trace_idx {
                acc += mat[(kr | t, kc | t)];
            }
            out[(r, col)] = acc;
        }
    }
    Ok(out)
}

/// Reduced state on `keep`.
pub fn partial_trace(rho: &DensityMatrix, keep: &[usize]) -> Result<DensityMatrix> {
    let mat = partial_trace_matrix(rho.matrix(), rho.nqubits(), keep)?;
    Ok(DensityMatrix::from_trusted(mat))
}

/// Transposes the row/column indices of the qubits in `subsystem` only.
pub fn partial_transpose(rho: &DensityMatrix, subsystem: &[usize]) -> Result<ComplexMatrix> {
    partial_transpose_matrix(rho.matrix(), rho.nqubits(), subsystem)
}

pub fn partial_transpose_matrix(
    mat: &ComplexMatrix,
    nqubits: usize,
    subsystem: &[usize],
) -> Result<ComplexMatrix> {
    if mat.dim() != 1 << nqubits {
        return Err(Error::DimensionMismatch(format!(
            "dimension {} does not match {nqubits} qubits",
            mat.dim()
        )));
    }
    let mut sorted = subsystem.to_vec();
    sorted.sort_unstable();
    check_increasing(nqubits, &sorted, "partial transpose")?;
    let m = qubit_mask(nqubits, &sorted);
    Ok(ComplexMatrix::from_fn(mat.dim(), |r, col| {
        mat[((r & !m) | (col & m), (col & !m) | (r & m))]
    }))
}

/// exp(-i h t) for Hermitian h, via its spectral decomposition.
pub fn matrix_exp_hermitian(h: &ComplexMatrix, t: f64) -> Result<ComplexMatrix> {
    let Eigh { values, vectors } = hermitian_eigh(h)?;
    let n = h.dim();
    let phases: Vec<Complex64> = values.iter().map(|&l| Complex64::from_polar(1.0, -l * t)).collect();
    Ok(ComplexMatrix::from_fn(n, |r, col| {
        (0..n)
            .map(|k| vectors[(r, k)] * phases[k] * vectors[(col, k)].conj())
            .sum()
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn singlet() -> DensityMatrix {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        DensityMatrix::pure(&[ZERO, re(s), re(-s), ZERO]).unwrap()
    }

    fn ket0() -> DensityMatrix {
        DensityMatrix::pure(&[ONE, ZERO]).unwrap()
    }

    #[test]
    fn kron_identity_and_diagonal() {
        let i4 = kron(&ComplexMatrix::identity(2), &ComplexMatrix::identity(2));
        assert_eq!(i4, ComplexMatrix::identity(4));
        let d = kron(
            &ComplexMatrix::from_real_diagonal(&[1.0, 2.0]),
            &ComplexMatrix::from_real_diagonal(&[3.0, 4.0]),
        );
        assert_eq!(d, ComplexMatrix::from_real_diagonal(&[3.0, 4.0, 6.0, 8.0]));
    }

    #[test]
    fn kron_of_singlets_is_a_16_dim_state() {
        let rho = singlet().kron(&singlet());
        assert_eq!(rho.dim(), 16);
        assert!((rho.matrix().trace() - ONE).norm() < 1e-15);
    }

    #[test]
    fn kron_index_layout() {
        let a = ComplexMatrix::from_fn(2, |r, col| re((r * 2 + col) as f64 + 1.0));
        let b = ComplexMatrix::from_fn(3, |r, col| c(r as f64, col as f64));
        let k = kron(&a, &b);
        for i in 0..2 {
            for j in 0..2 {
                for p in 0..3 {
                    for q in 0..3 {
                        assert_eq!(k[(i * 3 + p, j * 3 + q)], a[(i, j)] * b[(p, q)]);
                    }
                }
            }
        }
    }

    #[test]
    fn out_of_range_access_is_an_error() {
        let m = ComplexMatrix::identity(2);
        assert!(matches!(m.get(2, 0), Err(Error::IndexOutOfRange { .. })));
        assert!(m.get(1, 1).is_ok());
    }

    #[test]
    #[should_panic(expected = "out of range")]
    fn out_of_range_index_panics_instead_of_wrapping() {
        let m = ComplexMatrix::identity(2);
        let _ = m[(0, 2)];
    }

    #[test]
    fn from_row_major_requires_square() {
        assert!(ComplexMatrix::from_row_major(vec![ZERO; 3]).is_err());
        assert!(ComplexMatrix::from_row_major(vec![ZERO; 4]).is_ok());
    }

    #[test]
    fn trace_norm_examples() {
        assert!((trace_norm(singlet().matrix()).unwrap() - 1.0).abs() < 1e-12);
        let pt = partial_transpose(&singlet(), &[1]).unwrap();
        assert!((trace_norm(&pt).unwrap() - 2.0).abs() < 1e-12);
        assert_eq!(trace_norm(&ComplexMatrix::zeros(3)).unwrap(), 0.0);
    }

    #[test]
    fn partial_trace_recovers_product_factor() {
        let rho = singlet().kron(&ket0()).kron(&ket0());
        let r = partial_trace(&rho, &[0, 1]).unwrap();
        assert!(r.matrix().max_abs_diff(singlet().matrix()) < 1e-15);
        let m = partial_trace(&singlet(), &[0]).unwrap();
        assert!(m.matrix().max_abs_diff(&ComplexMatrix::identity(2).scale(re(0.5))) < 1e-15);
    }

    #[test]
    fn partial_trace_keeps_non_adjacent_qubits_in_order() {
        // |0⟩ ⊗ |1⟩ ⊗ |+⟩: keeping {0, 2} must give |0⟩⟨0| ⊗ |+⟩⟨+|.
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let one = DensityMatrix::pure(&[ZERO, ONE]).unwrap();
        let plus = DensityMatrix::pure(&[re(s), re(s)]).unwrap();
        let rho = ket0().kron(&one).kron(&plus);
        let r = partial_trace(&rho, &[0, 2]).unwrap();
        assert!(r.matrix().max_abs_diff(ket0().kron(&plus).matrix()) < 1e-15);
    }

    #[test]
    fn partial_trace_rejects_bad_subsystems() {
        let rho = singlet();
        assert!(matches!(partial_trace(&rho, &[]), Err(Error::BadSubsystem(_))));
        assert!(matches!(partial_trace(&rho, &[2]), Err(Error::BadSubsystem(_))));
        assert!(matches!(partial_trace(&rho, &[1, 1]), Err(Error::BadSubsystem(_))));
        assert!(matches!(partial_trace(&rho, &[1, 0]), Err(Error::BadSubsystem(_))));
    }

    #[test]
    fn partial_transpose_of_singlet() {
        let pt = partial_transpose(&singlet(), &[1]).unwrap();
        let ev = hermitian_eigenvalues(&pt).unwrap();
        let expect = [-0.5, 0.5, 0.5, 0.5];
        for (a, b) in ev.iter().zip(expect) {
            assert!((a - b).abs() < 1e-12, "{ev:?}");
        }
        let twice = partial_transpose_matrix(&pt, 2, &[1]).unwrap();
        assert!(twice.max_abs_diff(singlet().matrix()) < 1e-15);
        assert!(matches!(
            partial_transpose(&singlet(), &[3]),
            Err(Error::BadSubsystem(_))
        ));
    }

    #[test]
    fn partial_transpose_keeps_product_states_positive() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let plus = DensityMatrix::pure(&[re(s), c(0.0, s)]).unwrap();
        let rho = plus.kron(&ket0()).kron(&plus);
        for sub in [vec![0], vec![1], vec![2], vec![0, 2]] {
            let pt = partial_transpose(&rho, &sub).unwrap();
            assert!(DensityMatrix::new(pt).is_ok());
        }
    }

    #[test]
    fn density_matrix_validation() {
        assert!(DensityMatrix::new(ComplexMatrix::identity(3).scale(re(1.0 / 3.0))).is_err());
        assert!(matches!(
            DensityMatrix::new(ComplexMatrix::identity(2)),
            Err(Error::NotDensity(_))
        ));
        let mut m = ComplexMatrix::identity(2).scale(re(0.5));
        m[(0, 1)] = c(0.1, 0.0);
        assert!(matches!(DensityMatrix::new(m), Err(Error::NotHermitian { .. })));
        let neg = ComplexMatrix::from_real_diagonal(&[1.5, -0.5]);
        assert!(matches!(DensityMatrix::new(neg), Err(Error::NotPositive(_))));
    }

    #[test]
    fn exp_examples() {
        let h = ComplexMatrix::from_real_diagonal(&[std::f64::consts::PI, 0.0]);
        let u = matrix_exp_hermitian(&h, 1.0).unwrap();
        assert!(u.max_abs_diff(&ComplexMatrix::from_real_diagonal(&[-1.0, 1.0])) < 1e-15);
        let h = ComplexMatrix::from_fn(4, |r, col| c((r + col) as f64, r as f64 - col as f64));
        let u0 = matrix_exp_hermitian(&h, 0.0).unwrap();
        assert!(u0.max_abs_diff(&ComplexMatrix::identity(4)) < 1e-14);
        assert!(matches!(
            matrix_exp_hermitian(&ComplexMatrix::from_fn(2, |r, _| re(r as f64)), 1.0),
            Err(Error::NotHermitian { .. })
        ));
    }
}
