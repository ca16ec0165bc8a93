//! Elementary two-qubit operator algebra.
//!
//! Everything lives in the computational basis ordered `|00>, |01>, |10>, |11>`
//! with `|ij> = |i> (x) |j>`; qubit A is the left tensor factor. Energies are
//! angular frequencies (hbar = 1).

use nalgebra::{Complex, Matrix2, Matrix4, SMatrix, SVector, Vector4};

use crate::error::{Error, Result};

pub type C64 = Complex<f64>;
pub type Op2 = Matrix2<C64>;
pub type Op4 = Matrix4<C64>;
pub type Ket4 = Vector4<C64>;
/// Superoperator on vectorized 4x4 operators.
pub type SuperOp = SMatrix<C64, 16, 16>;
pub type Vec16 = SVector<C64, 16>;

/// Absolute structural tolerance; scaled by `1 + ||.||_F` where it is applied.
pub const STRUCTURAL_TOL: f64 = 1e-10;

#[inline]
pub fn c64(re: f64, im: f64) -> C64 {
    Complex::new(re, im)
}

/// `e^{i x}`
#[inline]
/// Angle reduced to `[0, 2 pi)`, with values within roundoff of `2 pi` mapped to `0`.
pub fn wrap_phase(x: f64) -> f64 {
    let r = x.rem_euclid(std::f64::consts::TAU);
    if std::f64::consts::TAU - r < 1e-12 {
        0.0
    } else {
        r
    }
}

pub fn cis(x: f64) -> C64 {
    Complex::from_polar(1.0, x)
}

pub fn kron2(a: &Op2, b: &Op2) -> Op4 {
    Op4::from_fn(|r, c| a[(r / 2, c / 2)] * b[(r % 2, c % 2)])
}

pub fn commutator(a: &Op4, b: &Op4) -> Op4 {
    a * b - b * a
}

pub fn anticommutator(a: &Op4, b: &Op4) -> Op4 {
    a * b + b * a
}

/// Hilbert-Schmidt inner product `Tr(A^dag B)`, conjugate-linear in `a`.
pub fn hs_inner(a: &Op4, b: &Op4) -> C64 {
    a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum()
}

pub fn hs_norm(a: &Op4) -> f64 {
    a.norm()
}

/// Hilbert-Schmidt distance `sqrt(Tr |r1 - r2|^2)` between single-qubit operators.
pub fn hs_distance2(r1: &Op2, r2: &Op2) -> f64 {
    (r1 - r2).norm()
}

/// `||[M, M^dag]||_F`
pub fn normality_residual<const N: usize>(m: &SMatrix<C64, N, N>) -> f64 {
    let md = m.adjoint();
    (m * md - md * m).norm()
}

pub fn is_normal(m: &Op4, tol: f64) -> bool {
    normality_residual(m) <= tol * (1.0 + m.norm_squared())
}

pub fn is_hermitian(m: &Op4, tol: f64) -> bool {
    (m - m.adjoint()).norm() <= tol * (1.0 + m.norm())
}

pub fn trace4(m: &Op4) -> C64 {
    m.trace()
}

pub fn identity4() -> Op4 {
    Op4::identity()
}

/// Computational basis ket `|idx>` where `idx = 2 i + j` for `|ij>`.
pub fn ket(idx: usize) -> Ket4 {
    let mut v = Ket4::zeros();
    v[idx] = c64(1.0, 0.0);
    v
}

/// `|u><v|`
pub fn ketbra(u: &Ket4, v: &Ket4) -> Op4 {
    u * v.adjoint()
}

/// Matrix unit `|r><c|` in the computational basis.
pub fn unit(r: usize, c: usize) -> Op4 {
    let mut m = Op4::zeros();
    m[(r, c)] = c64(1.0, 0.0);
    m
}

/// The SWAP operator exchanging the two qubits.
pub fn swap() -> Op4 {
    unit(0, 0) + unit(1, 2) + unit(2, 1) + unit(3, 3)
}

pub fn sigma_x() -> Op2 {
    Op2::new(c64(0.0, 0.0), c64(1.0, 0.0), c64(1.0, 0.0), c64(0.0, 0.0))
}

pub fn sigma_y() -> Op2 {
    Op2::new(c64(0.0, 0.0), c64(0.0, -1.0), c64(0.0, 1.0), c64(0.0, 0.0))
}

/// Column-stacking vectorization: entry `(r, c)` goes to index `4 c + r`.
pub fn vectorize(x: &Op4) -> Vec16 {
    Vec16::from_fn(|i, _| x[(i % 4, i / 4)])
}

pub fn devectorize(v: &Vec16) -> Op4 {
    Op4::from_fn(|r, c| v[4 * c + r])
}

/// Which qubit a partial trace removes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    A,
    B,
}

/// Trace out `traced` from a 4x4 operator. `partial_trace(rho, Subsystem::B)`
/// is the reduced operator of qubit A.
pub fn partial_trace(rho: &Op4, traced: Subsystem) -> Op2 {
    let mut out = Op2::zeros();
    for r in 0..2 {
        for c in 0..2 {
            out[(r, c)] = match traced {
                Subsystem::B => rho[(2 * r, 2 * c)] + rho[(2 * r + 1, 2 * c + 1)],
                Subsystem::A => rho[(r, c)] + rho[(2 + r, 2 + c)],
            };
        }
    }
    out
}

/// Reduced state of qubit A (`Tr_B`).
pub fn reduced_a(rho: &Op4) -> Op2 {
    partial_trace(rho, Subsystem::B)
}

/// Reduced state of qubit B (`Tr_A`).
pub fn reduced_b(rho: &Op4) -> Op2 {
    partial_trace(rho, Subsystem::A)
}

/// Modified Gram-Schmidt under `Tr(A^dag B)`.
///
/// Fails with [`Error::RankDeficient`] when an input is (numerically) in the
/// span of its predecessors.
pub fn hs_orthonormalize(basis: &[Op4]) -> Result<Vec<Op4>> {
    let mut out: Vec<Op4> = Vec::with_capacity(basis.len());
    for (index, x) in basis.iter().enumerate() {
        let mut v = *x;
        for q in &out {
            let p = hs_inner(q, &v);
            v -= q * p;
        }
        let residual = v.norm();
        if residual < STRUCTURAL_TOL * (1.0 + x.norm()) {
            return Err(Error::RankDeficient { index, residual });
        }
        out.push(v / c64(residual, 0.0));
    }
    Ok(out)
}

/// Like [`hs_orthonormalize`] but silently drops dependent inputs. Two passes
/// of projection keep the output orthonormal to working precision.
pub(crate) fn hs_span_basis(basis: &[Op4], rel_tol: f64) -> Vec<Op4> {
    let mut out: Vec<Op4> = Vec::new();
    for x in basis {
        let mut v = *x;
        for _ in 0..2 {
            for q in &out {
                let p = hs_inner(q, &v);
                v -= q * p;
            }
        }
        let residual = v.norm();
        if residual > rel_tol * (1.0 + x.norm()) {
            out.push(v / c64(residual, 0.0));
        }
    }
    out
}

/// Phase-locking basis `{|00>, |psi1>, |psi2>, |11>}` with
/// `|psi1,2> = (|01> +- e^{i phi}|10>)/sqrt(2)`, returned as the columns of a
/// unitary change-of-basis matrix.
pub fn phase_locking_basis(phi: f64) -> Op4 {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let e = cis(phi) * s;
    let z = c64(0.0, 0.0);
    let one = c64(1.0, 0.0);
    let h = c64(s, 0.0);
    #[rustfmt::skip]
    #[rustfmt::skip]
    let t = Op4::new(
        one, z, z,  z,
        z,   h, h,  z,
        z,   e, -e, z,
        z,   z, z,  one,
    );
    t
}

/// `|psi1>` for phase shift `phi`.
pub fn psi1(phi: f64) -> Ket4 {
    phase_locking_basis(phi).column(1).into_owned()
}

/// `|psi2>` for phase shift `phi`.
pub fn psi2(phi: f64) -> Ket4 {
    phase_locking_basis(phi).column(2).into_owned()
}

/// Pure state from amplitudes `(x1, x2, x3, x4)` in the phase-locking basis.
pub fn ket_from_phase_locking(amps: [C64; 4], phi: f64) -> Ket4 {
    phase_locking_basis(phi) * Ket4::from_column_slice(&amps)
}

/// Free two-qubit Hamiltonian `H0 (x) I + I (x) H0` with `H0 = diag(E0, E1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoQubitHamiltonian {
    e0: f64,
    e1: f64,
    matrix: Op4,
}

impl TwoQubitHamiltonian {
    pub fn new(e0: f64, e1: f64) -> Result<Self> {
        if !(e0.is_finite() && e1.is_finite()) {
            return Err(Error::InvalidParam("energies must be finite".into()));
        }
        if (e0 - e1).abs() < STRUCTURAL_TOL * (1.0 + e0.abs() + e1.abs()) {
            return Err(Error::DegenerateHamiltonian { e0, e1 });
        }
        let d = [2.0 * e0, e0 + e1, e0 + e1, 2.0 * e1];
        let matrix = Op4::from_fn(|r, c| if r == c { c64(d[r], 0.0) } else { c64(0.0, 0.0) });
        Ok(Self { e0, e1, matrix })
    }

    pub fn matrix(&self) -> &Op4 {
        &self.matrix
    }

    /// `dE = E0 - E1`, the single-qubit transition frequency.
    pub fn delta_e(&self) -> f64 {
        self.e0 - self.e1
    }

    pub fn e0(&self) -> f64 {
        self.e0
    }

    pub fn e1(&self) -> f64 {
        self.e1
    }

    /// Diagonal of `H`.
    pub fn energies(&self) -> [f64; 4] {
        [2.0 * self.e0, self.e0 + self.e1, self.e0 + self.e1, 2.0 * self.e1]
    }

    /// `e^{-i H t}` (diagonal).
    pub fn unitary(&self, t: f64) -> Op4 {
        let e = self.energies();
        Op4::from_fn(|r, c| if r == c { cis(-e[r] * t) } else { c64(0.0, 0.0) })
    }
}

/// Parameters of a normal 2x2 matrix
/// `[[a, b], [e^{2ik} conj(b), a + m e^{ik}]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalParams2x2 {
    pub a: C64,
    pub b: C64,
    pub k: f64,
    pub m: f64,
}

impl NormalParams2x2 {
    /// Read the parameters back off a normal 2x2 matrix. Gauge: if `b != 0`,
    /// `k` is fixed by `b` in `(-pi/2, pi/2]`; otherwise `m >= 0` and `k` is
    /// the phase of `d - a`.
    pub fn from_matrix(m: &Op2, tol: f64) -> Self {
        let a = m[(0, 0)];
        let b = m[(0, 1)];
        let diff = m[(1, 1)] - a;
        let scale = tol * (1.0 + m.norm());
        if b.norm() > scale {
            let e2k = m[(1, 0)] / b.conj();
            let mut k = 0.5 * e2k.arg();
            if k <= -std::f64::consts::FRAC_PI_2 {
                k += std::f64::consts::PI;
            }
            let mm = (diff * cis(-k)).re;
            Self { a, b, k, m: mm }
        } else if diff.norm() > scale {
            Self { a, b: c64(0.0, 0.0), k: diff.arg(), m: diff.norm() }
        } else {
            Self { a, b: c64(0.0, 0.0), k: 0.0, m: 0.0 }
        }
    }
}

pub fn normal_2x2(p: &NormalParams2x2) -> Op2 {
    Op2::new(p.a, p.b, cis(2.0 * p.k) * p.b.conj(), p.a + cis(p.k) * p.m)
}

/// A validated two-qubit state.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator {
    matrix: Op4,
}

/// Tolerance used when validating states.
pub const STATE_TOL: f64 = 1e-8;

impl DensityOperator {
    pub fn new(matrix: Op4) -> Result<Self> {
        Self::with_tol(matrix, STATE_TOL)
    }

    pub fn with_tol(matrix: Op4, tol: f64) -> Result<Self> {
        if matrix.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidState("non-finite entry".into()));
        }
        if !is_hermitian(&matrix, tol) {
            return Err(Error::InvalidState("not Hermitian".into()));
        }
        let tr = matrix.trace();
        if (tr - c64(1.0, 0.0)).norm() > tol {
            return Err(Error::InvalidState(format!("trace {tr} != 1")));
        }
        let min = min_eigenvalue(&matrix);
        if min < -tol {
            return Err(Error::InvalidState(format!("negative eigenvalue {min:e}")));
        }
        Ok(Self { matrix })
    }

    /// Accepts an unnormalized ket.
    pub fn from_pure(psi: &Ket4) -> Result<Self> {
        let n = psi.norm();
        if n == 0.0 || !n.is_finite() {
            return Err(Error::InvalidState("zero or non-finite state vector".into()));
        }
        let v = psi / c64(n, 0.0);
        Ok(Self { matrix: ketbra(&v, &v) })
    }

    /// Wraps a matrix already known to be a state (integrator output).
    pub(crate) fn from_matrix_unchecked(matrix: Op4) -> Self {
        Self { matrix }
    }

    pub fn maximally_mixed() -> Self {
        Self { matrix: Op4::identity() * c64(0.25, 0.0) }
    }

    pub fn matrix(&self) -> &Op4 {
        &self.matrix
    }

    pub fn into_matrix(self) -> Op4 {
        self.matrix
    }

    pub fn purity(&self) -> f64 {
        (self.matrix * self.matrix).trace().re
    }

    pub fn reduced_a(&self) -> Op2 {
        reduced_a(&self.matrix)
    }

    pub fn reduced_b(&self) -> Op2 {
        reduced_b(&self.matrix)
    }
}

/// Smallest eigenvalue of the Hermitian part of `m`.
pub fn min_eigenvalue(m: &Op4) -> f64 {
    let h = (m + m.adjoint()) * c64(0.5, 0.0);
    h.symmetric_eigenvalues().iter().cloned().fold(f64::INFINITY, f64::min)
}
