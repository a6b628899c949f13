//! Dense complex linear algebra on the 8-dimensional three-qubit space.
//!
//! Basis order is fixed to `|000⟩, |001⟩, …, |111⟩`, so the matrix index of a
//! basis ket is the binary number `q1 q2 q3` with qubit 1 as the most
//! significant bit.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;
use thiserror::Error;

/// Hilbert-space dimension of three qubits.
pub const DIM: usize = 8;

/// Entrywise tolerance for `|M[i][j] - conj(M[j][i])|`.
pub const HERMITIAN_TOL: f64 = 1e-10;
/// Tolerance for `|tr(ρ) - 1|`.
pub const TRACE_TOL: f64 = 1e-9;
/// Smallest eigenvalue accepted as non-negative.
pub const PSD_TOL: f64 = 1e-10;
/// Tolerance on the norm of a pure state.
pub const NORM_TOL: f64 = 1e-12;

const JACOBI_OFF_TOL: f64 = 1e-13;
const JACOBI_MAX_SWEEPS: usize = 100;

/// A 2×2 complex matrix, one tensor factor of a local operator.
pub type Matrix2 = [[Complex64; 2]; 2];

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum LinalgError {
    #[error("matrix is not Hermitian: max |M[i][j] - conj(M[j][i])| = {deviation:e}")]
    NotHermitian { deviation: f64 },
    #[error("trace is not one: |tr - 1| = {deviation:e}")]
    TraceNotOne { deviation: f64 },
    #[error("matrix is not positive semidefinite: minimum eigenvalue = {min_eigenvalue:e}")]
    NotPositiveSemidefinite { min_eigenvalue: f64 },
    #[error("state vector is not normalized: |norm - 1| = {deviation:e}")]
    NotNormalized { deviation: f64 },
    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },
    #[error("invalid subsystem index {0}; expected 1, 2 or 3")]
    InvalidSubsystem(usize),
}

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn identity2() -> Matrix2 {
    [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(1.0, 0.0)]]
}

pub fn pauli_x() -> Matrix2 {
    [[c(0.0, 0.0), c(1.0, 0.0)], [c(1.0, 0.0), c(0.0, 0.0)]]
}

pub fn pauli_y() -> Matrix2 {
    [[c(0.0, 0.0), c(0.0, -1.0)], [c(0.0, 1.0), c(0.0, 0.0)]]
}

pub fn pauli_z() -> Matrix2 {
    [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(-1.0, 0.0)]]
}

/// 8×8 complex matrix in the fixed three-qubit basis order.
#[derive(Clone, Copy, PartialEq)]
pub struct ComplexMatrix8(pub [[Complex64; DIM]; DIM]);

impl fmt::Debug for ComplexMatrix8 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix8 [")?;
        for row in &self.0 {
            write!(f, "  ")?;
            for z in row {
                write!(f, "{:+.6}{:+.6}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl Default for ComplexMatrix8 {
    fn default() -> Self {
        Self::zeros()
    }
}

impl ComplexMatrix8 {
    pub fn zeros() -> Self {
        ComplexMatrix8([[Complex64::new(0.0, 0.0); DIM]; DIM])
    }

    pub fn identity() -> Self {
        Self::from_fn(|i, j| if i == j { c(1.0, 0.0) } else { c(0.0, 0.0) })
    }

    pub fn from_fn(mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros();
        for i in 0..DIM {
            for j in 0..DIM {
                m.0[i][j] = f(i, j);
            }
        }
        m
    }

    pub fn diagonal(d: &[f64; DIM]) -> Self {
        Self::from_fn(|i, j| if i == j { c(d[i], 0.0) } else { c(0.0, 0.0) })
    }

    /// `|u⟩⟨v|`
    pub fn outer(u: &[Complex64; DIM], v: &[Complex64; DIM]) -> Self {
        Self::from_fn(|i, j| u[i] * v[j].conj())
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(|i, j| self.0[j][i].conj())
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::from_fn(|i, j| self.0[i][j] * s)
    }

    pub fn scale_complex(&self, s: Complex64) -> Self {
        Self::from_fn(|i, j| self.0[i][j] * s)
    }

    pub fn trace(&self) -> Complex64 {
        (0..DIM).map(|i| self.0[i][i]).sum()
    }

    pub fn apply(&self, v: &[Complex64; DIM]) -> [Complex64; DIM] {
        let mut out = [c(0.0, 0.0); DIM];
        for (i, o) in out.iter_mut().enumerate() {
            *o = (0..DIM).map(|j| self.0[i][j] * v[j]).sum();
        }
        out
    }

    /// Largest entrywise deviation `|M[i][j] - conj(M[j][i])|`.
    pub fn hermitian_deviation(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..DIM {
            for j in i..DIM {
                worst = worst.max((self.0[i][j] - self.0[j][i].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermitian_deviation() <= HERMITIAN_TOL
    }

    /// `(M + M†) / 2`
    pub fn hermitian_part(&self) -> Self {
        Self::from_fn(|i, j| (self.0[i][j] + self.0[j][i].conj()) * 0.5)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.0
            .iter()
            .flatten()
            .zip(other.0.iter().flatten())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Transposes tensor factor `subsystem` (1, 2 or 3).
    pub fn partial_transpose(&self, subsystem: usize) -> Result<Self, LinalgError> {
        let bit = subsystem_bit(subsystem)?;
        Ok(Self::from_fn(|i, j| {
            let (bi, bj) = (i & bit, j & bit);
            let src_row = (i & !bit) | bj;
            let src_col = (j & !bit) | bi;
            self.0[src_row][src_col]
        }))
    }
}

fn subsystem_bit(subsystem: usize) -> Result<usize, LinalgError> {
    match subsystem {
        1 => Ok(0b100),
        2 => Ok(0b010),
        3 => Ok(0b001),
        other => Err(LinalgError::InvalidSubsystem(other)),
    }
}

impl Index<(usize, usize)> for ComplexMatrix8 {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.0[i][j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix8 {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.0[i][j]
    }
}

impl Mul for ComplexMatrix8 {
    type Output = ComplexMatrix8;
    fn mul(self, rhs: ComplexMatrix8) -> ComplexMatrix8 {
        ComplexMatrix8::from_fn(|i, j| (0..DIM).map(|k| self.0[i][k] * rhs.0[k][j]).sum())
    }
}

impl Mul for &ComplexMatrix8 {
    type Output = ComplexMatrix8;
    fn mul(self, rhs: &ComplexMatrix8) -> ComplexMatrix8 {
        *self * *rhs
    }
}

impl Add for ComplexMatrix8 {
    type Output = ComplexMatrix8;
    fn add(self, rhs: ComplexMatrix8) -> ComplexMatrix8 {
        ComplexMatrix8::from_fn(|i, j| self.0[i][j] + rhs.0[i][j])
    }
}

impl Sub for ComplexMatrix8 {
    type Output = ComplexMatrix8;
    fn sub(self, rhs: ComplexMatrix8) -> ComplexMatrix8 {
        ComplexMatrix8::from_fn(|i, j| self.0[i][j] - rhs.0[i][j])
    }
}

/// Tensor product `A ⊗ B ⊗ C`; `A` acts on qubit 1.
pub fn kron3(a: &Matrix2, b: &Matrix2, cm: &Matrix2) -> ComplexMatrix8 {
    ComplexMatrix8::from_fn(|i, j| {
        let (i1, i2, i3) = ((i >> 2) & 1, (i >> 1) & 1, i & 1);
        let (j1, j2, j3) = ((j >> 2) & 1, (j >> 1) & 1, j & 1);
        a[i1][j1] * b[i2][j2] * cm[i3][j3]
    })
}

/// Normalized three-qubit state vector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PureState8 {
    amplitudes: [Complex64; DIM],
}

impl PureState8 {
    pub fn new(amplitudes: [Complex64; DIM]) -> Result<Self, LinalgError> {
        let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let deviation = (norm - 1.0).abs();
        if deviation > NORM_TOL {
            return Err(LinalgError::NotNormalized { deviation });
        }
        Ok(PureState8 { amplitudes })
    }

    /// Normalizes `amplitudes` first; panics on the zero vector.
    pub fn normalized(amplitudes: [Complex64; DIM]) -> Self {
        let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        assert!(norm > 0.0, "cannot normalize the zero vector");
        PureState8 {
            amplitudes: amplitudes.map(|z| z / norm),
        }
    }

    pub fn basis(index: usize) -> Self {
        let mut amplitudes = [c(0.0, 0.0); DIM];
        amplitudes[index] = c(1.0, 0.0);
        PureState8 { amplitudes }
    }

    /// `(|000⟩ + |111⟩)/√2`
    pub fn ghz_plus() -> Self {
        let mut amplitudes = [c(0.0, 0.0); DIM];
        amplitudes[0] = c(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        amplitudes[7] = c(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        PureState8 { amplitudes }
    }

    /// `(|000⟩ - |111⟩)/√2`
    pub fn ghz_minus() -> Self {
        let mut amplitudes = [c(0.0, 0.0); DIM];
        amplitudes[0] = c(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        amplitudes[7] = c(-std::f64::consts::FRAC_1_SQRT_2, 0.0);
        PureState8 { amplitudes }
    }

    /// `(|001⟩ + |010⟩ + |100⟩)/√3`
    pub fn w() -> Self {
        let a = 1.0 / 3f64.sqrt();
        let mut amplitudes = [c(0.0, 0.0); DIM];
        for idx in [0b001, 0b010, 0b100] {
            amplitudes[idx] = c(a, 0.0);
        }
        PureState8 { amplitudes }
    }

    /// Product state from three single-qubit amplitude pairs.
    pub fn product(q1: [Complex64; 2], q2: [Complex64; 2], q3: [Complex64; 2]) -> Self {
        let mut amplitudes = [c(0.0, 0.0); DIM];
        for (idx, amp) in amplitudes.iter_mut().enumerate() {
            *amp = q1[(idx >> 2) & 1] * q2[(idx >> 1) & 1] * q3[idx & 1];
        }
        Self::normalized(amplitudes)
    }

    pub fn amplitudes(&self) -> &[Complex64; DIM] {
        &self.amplitudes
    }

    pub fn projector(&self) -> ComplexMatrix8 {
        ComplexMatrix8::outer(&self.amplitudes, &self.amplitudes)
    }
}

/// Validated three-qubit mixed state: Hermitian, unit trace, positive semidefinite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix8,
}

impl DensityMatrix {
    pub fn new(matrix: ComplexMatrix8) -> Result<Self, LinalgError> {
        make_density_matrix(matrix)
    }

    /// `𝟙/8`
    pub fn maximally_mixed() -> Self {
        DensityMatrix {
            matrix: ComplexMatrix8::identity().scale(1.0 / DIM as f64),
        }
    }

    pub fn from_pure(state: &PureState8) -> Self {
        DensityMatrix {
            matrix: state.projector(),
        }
    }

    pub fn matrix(&self) -> &ComplexMatrix8 {
        &self.matrix
    }

    pub fn eigenvalues(&self) -> [f64; DIM] {
        // validated at construction; the solver cannot fail on a Hermitian input
        hermitian_eigenvalues(&self.matrix).expect("validated density matrix")
    }

    /// Convex combination `(1 - p)·self + p·other`.
    pub fn mix(&self, other: &DensityMatrix, p: f64) -> Result<Self, LinalgError> {
        DensityMatrix::new(self.matrix.scale(1.0 - p) + other.matrix.scale(p))
    }
}

/// Validates `entries` as a density matrix.
pub fn make_density_matrix(entries: ComplexMatrix8) -> Result<DensityMatrix, LinalgError> {
    let deviation = entries.hermitian_deviation();
    if deviation > HERMITIAN_TOL {
        return Err(LinalgError::NotHermitian { deviation });
    }
    let deviation = (entries.trace() - 1.0).norm();
    if deviation > TRACE_TOL {
        return Err(LinalgError::TraceNotOne { deviation });
    }
    let spectrum = hermitian_eigenvalues(&entries)?;
    if spectrum[0] < -PSD_TOL {
        return Err(LinalgError::NotPositiveSemidefinite {
            min_eigenvalue: spectrum[0],
        });
    }
    Ok(DensityMatrix { matrix: entries })
}

/// Eigenvalues of a Hermitian matrix in ascending order, by cyclic complex
/// Jacobi rotations.
pub fn hermitian_eigenvalues(m: &ComplexMatrix8) -> Result<[f64; DIM], LinalgError> {
    let deviation = m.hermitian_deviation();
    if deviation > HERMITIAN_TOL {
        return Err(LinalgError::NotHermitian { deviation });
    }
    let mut a = m.hermitian_part().0;
    let scale = m.frobenius_norm().max(1.0);

    let off_norm = |a: &[[Complex64; DIM]; DIM]| -> f64 {
        a.iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().enumerate().filter(move |&(j, _)| j != i))
            .map(|(_, z)| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    };

    let mut sweeps = 0;
    loop {
        let off = off_norm(&a);
        if off <= JACOBI_OFF_TOL * scale {
            break;
        }
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(LinalgError::NoConvergence {
                sweeps,
                off_norm: off,
            });
        }
        sweeps += 1;
        for p in 0..DIM - 1 {
            for q in p + 1..DIM {
                jacobi_rotate(&mut a, p, q);
            }
        }
    }

    let mut eig = [0.0; DIM];
    for (i, e) in eig.iter_mut().enumerate() {
        *e = a[i][i].re;
    }
    eig.sort_by(|x, y| x.total_cmp(y));
    Ok(eig)
}

/// Annihilates `a[p][q]` with the unitary `V = D·R`, where `D` removes the
/// phase of `a[p][q]` and `R` is the real Jacobi rotation; `a ← V† a V`.
fn jacobi_rotate(a: &mut [[Complex64; DIM]; DIM], p: usize, q: usize) {
    let apq = a[p][q];
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let phase = apq / r;
    let app = a[p][p].re;
    let aqq = a[q][q].re;
    let theta = (aqq - app) / (2.0 * r);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let t = if theta == 0.0 { 1.0 } else { t };
    let cs = 1.0 / (t * t + 1.0).sqrt();
    let sn = t * cs;
    let ph_conj = phase.conj();

    // columns: a ← a V
    for row in a.iter_mut() {
        let (kp, kq) = (row[p], row[q]);
        row[p] = kp * cs - kq * ph_conj * sn;
        row[q] = kp * sn + kq * ph_conj * cs;
    }
    // rows: a ← V† a
    #[allow(clippy::needless_range_loop)]
    for k in 0..DIM {
        let (pk, qk) = (a[p][k], a[q][k]);
        a[p][k] = pk * cs - qk * phase * sn;
        a[q][k] = pk * sn + qk * phase * cs;
    }
    a[p][q] = c(0.0, 0.0);
    a[q][p] = c(0.0, 0.0);
    a[p][p] = c(a[p][p].re, 0.0);
    a[q][q] = c(a[q][q].re, 0.0);
}

/// Partial transpose of `rho` on qubit `subsystem` (1, 2 or 3).
pub fn partial_transpose(
    rho: &DensityMatrix,
    subsystem: usize,
) -> Result<ComplexMatrix8, LinalgError> {
    rho.matrix.partial_transpose(subsystem)
}

/// `Re tr(M ρ)` for Hermitian `M`.
pub fn expectation(m: &ComplexMatrix8, rho: &DensityMatrix) -> Result<f64, LinalgError> {
    let deviation = m.hermitian_deviation();
    if deviation > HERMITIAN_TOL {
        return Err(LinalgError::NotHermitian { deviation });
    }
    let mut tr = c(0.0, 0.0);
    for i in 0..DIM {
        for k in 0..DIM {
            tr += m.0[i][k] * rho.matrix.0[k][i];
        }
    }
    debug_assert!(tr.im.abs() <= 1e-10 * m.frobenius_norm().max(1.0));
    Ok(tr.re)
}
