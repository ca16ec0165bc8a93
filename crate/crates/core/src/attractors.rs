//! Asymptotic spectrum and attractor spaces.
//!
//! Two independent routes compute the attractor space of a generator with
//! normal Lindblad operators:
//!
//! * [`attractor_space_eig`] diagonalizes the 16x16 superoperator and takes
//!   the kernels `Ker(L - lambda)` for every purely imaginary eigenvalue.
//! * [`attractor_space_structure`] solves the commutant conditions
//!   `[L_j, X] = [L_j^dag, X] = 0` inside each frequency subspace `X_omega`
//!   of `X -> [H, X]`.
//!
//! Both return an HS-orthonormal basis, so the asymptotic state is the plain
//! projection `sum_i e^{-i omega_i t} Tr(X_i^dag rho0) X_i`.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::liouvillian::Liouvillian;
use crate::mechanisms::LindbladOp;
use crate::operators::{
    c64, cis, hs_inner, hs_span_basis, partial_trace, unit, wrap_phase, Op2, Op4, Subsystem, TwoQubitHamiltonian, C64,
};

/// Relative threshold for "purely imaginary" eigenvalues.
pub const DEFAULT_EPS: f64 = 1e-9;

/// Relative singular-value threshold for commutant nullspaces.
pub const NULLSPACE_TOL: f64 = 1e-10;

/// The five eigenspaces of `X -> [H, X]` for the free two-qubit Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FrequencyTag {
    #[serde(rename = "X_-2dE")]
    MinusTwoDelta,
    #[serde(rename = "X_-dE")]
    MinusDelta,
    #[serde(rename = "X_0")]
    Zero,
    #[serde(rename = "X_dE")]
    PlusDelta,
    #[serde(rename = "X_2dE")]
    PlusTwoDelta,
}

impl FrequencyTag {
    pub const ALL: [FrequencyTag; 5] = [
        FrequencyTag::MinusTwoDelta,
        FrequencyTag::MinusDelta,
        FrequencyTag::Zero,
        FrequencyTag::PlusDelta,
        FrequencyTag::PlusTwoDelta,
    ];

    /// `omega / dE`
    pub fn multiple(self) -> i32 {
        match self {
            FrequencyTag::MinusTwoDelta => -2,
            FrequencyTag::MinusDelta => -1,
            FrequencyTag::Zero => 0,
            FrequencyTag::PlusDelta => 1,
            FrequencyTag::PlusTwoDelta => 2,
        }
    }

    pub fn from_multiple(n: i32) -> Option<Self> {
        Self::ALL.iter().copied().find(|t| t.multiple() == n)
    }

    pub fn conjugate(self) -> Self {
        Self::from_multiple(-self.multiple()).unwrap()
    }

    /// Matrix units `|r><c|` spanning this subspace. `|r><c|` has
    /// `[H, |r><c|] = (n1(c) - n1(r)) dE |r><c|`, `n1` counting excited qubits.
    pub fn units(self) -> Vec<Op4> {
        let mut out = Vec::new();
        for r in 0..4usize {
            for c in 0..4usize {
                if c.count_ones() as i32 - r.count_ones() as i32 == self.multiple() {
                    out.push(unit(r, c));
                }
            }
        }
        out
    }
}

/// An eigenoperator of the generator with eigenvalue `-i omega`.
#[derive(Debug, Clone, PartialEq)]
pub struct Attractor {
    pub matrix: Op4,
    pub omega: f64,
    pub tag: FrequencyTag,
}

#[derive(Debug, Clone)]
pub struct AttractorSpace {
    basis: Vec<Attractor>,
    delta_e: f64,
}

#[derive(Serialize, Deserialize)]
struct AttractorJson {
    omega: f64,
    tag: FrequencyTag,
    matrix: Vec<[f64; 2]>,
}

impl AttractorSpace {
    pub fn new(basis: Vec<Attractor>, delta_e: f64) -> Self {
        Self { basis, delta_e }
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Attractor] {
        &self.basis
    }

    pub fn delta_e(&self) -> f64 {
        self.delta_e
    }

    pub fn block(&self, tag: FrequencyTag) -> impl Iterator<Item = &Attractor> {
        self.basis.iter().filter(move |x| x.tag == tag)
    }

    pub fn block_dimension(&self, tag: FrequencyTag) -> usize {
        self.block(tag).count()
    }

    pub fn matrices(&self) -> Vec<Op4> {
        self.basis.iter().map(|x| x.matrix).collect()
    }

    /// Orthogonal projection of `x` onto the span, returned as the residual norm.
    pub fn projection_residual(&self, x: &Op4) -> f64 {
        let mut r = *x;
        for a in &self.basis {
            r -= a.matrix * hs_inner(&a.matrix, x);
        }
        r.norm()
    }

    /// JSON list of `{omega, tag, matrix}` with the matrix as 16 `[re, im]`
    /// pairs in row-major order.
    pub fn to_json(&self) -> serde_json::Value {
        let list: Vec<AttractorJson> = self
            .basis
            .iter()
            .map(|x| AttractorJson {
                omega: x.omega,
                tag: x.tag,
                matrix: (0..16)
                    .map(|i| {
                        let z = x.matrix[(i / 4, i % 4)];
                        [z.re, z.im]
                    })
                    .collect(),
            })
            .collect();
        serde_json::to_value(list).expect("attractor JSON")
    }

    pub fn from_json(value: &serde_json::Value, delta_e: f64) -> Result<Self> {
        let list: Vec<AttractorJson> = serde_json::from_value(value.clone())?;
        let mut basis = Vec::with_capacity(list.len());
        for item in list {
            if item.matrix.len() != 16 {
                return Err(Error::Config(format!("attractor matrix has {} entries", item.matrix.len())));
            }
            let matrix = Op4::from_fn(|r, c| {
                let [re, im] = item.matrix[4 * r + c];
                c64(re, im)
            });
            basis.push(Attractor { matrix, omega: item.omega, tag: item.tag });
        }
        Ok(Self { basis, delta_e })
    }
}

fn to_columns(mats: &[Op4]) -> DMatrix<C64> {
    DMatrix::from_fn(16, mats.len(), |i, j| mats[j][(i / 4, i % 4)])
}

/// Eigenvalues of a complex square matrix via Schur decomposition.
pub(crate) fn eigenvalues(m: &DMatrix<C64>) -> Vec<C64> {
    let (_, t) = m.clone().schur().unpack();
    let n = t.nrows();
    let mut out = Vec::with_capacity(n);
    let mut i = 0;
    while i < n {
        let sub = if i + 1 < n { t[(i + 1, i)].norm() } else { 0.0 };
        if i + 1 < n && sub > 1e-14 * (t[(i, i)].norm() + t[(i + 1, i + 1)].norm() + 1e-300) {
            // Unreduced 2x2 block.
            let (a, b, c, d) = (t[(i, i)], t[(i, i + 1)], t[(i + 1, i)], t[(i + 1, i + 1)]);
            let half_tr = (a + d) * 0.5;
            let disc = ((a - d) * 0.5 * ((a - d) * 0.5) + b * c).sqrt();
            out.push(half_tr + disc);
            out.push(half_tr - disc);
            i += 2;
        } else {
            out.push(t[(i, i)]);
            i += 1;
        }
    }
    out
}

fn threshold(gen: &Liouvillian, eps: f64) -> f64 {
    eps * gen.matrix().norm().max(1.0)
}

/// Purely imaginary eigenvalues (with multiplicity), real parts snapped to 0,
/// sorted by imaginary part.
pub fn asymptotic_spectrum(gen: &Liouvillian, eps: f64) -> Result<Vec<C64>> {
    let thr = threshold(gen, eps);
    let all = eigenvalues(&DMatrix::from_fn(16, 16, |r, c| gen.matrix()[(r, c)]));
    let mut out = Vec::new();
    for z in all {
        if !z.re.is_finite() || !z.im.is_finite() {
            return Err(Error::IllConditioned("non-finite eigenvalue".into()));
        }
        let re = z.re.abs();
        if re < thr {
            out.push(c64(0.0, z.im));
        } else if re < 10.0 * thr {
            log::warn!("borderline eigenvalue {z} (threshold {thr:e})");
        }
    }
    out.sort_by(|a, b| a.im.partial_cmp(&b.im).unwrap());
    Ok(out)
}

/// Smallest decay rate `min |Re lambda|` over the non-asymptotic spectrum;
/// infinite when every eigenvalue is asymptotic.
pub fn spectral_gap(gen: &Liouvillian, eps: f64) -> f64 {
    let thr = threshold(gen, eps);
    eigenvalues(&DMatrix::from_fn(16, 16, |r, c| gen.matrix()[(r, c)]))
        .into_iter()
        .map(|z| z.re.abs())
        .filter(|&r| r >= thr)
        .fold(f64::INFINITY, f64::min)
}

fn tag_for(omega: f64, delta_e: f64) -> Result<FrequencyTag> {
    let n = (omega / delta_e).round();
    let tag = FrequencyTag::from_multiple(n as i32);
    match tag {
        Some(t) if (omega - n * delta_e).abs() <= delta_e.abs() / 100.0 => Ok(t),
        _ => Err(Error::UntaggedFrequency { omega, delta_e }),
    }
}

/// Right-singular vectors of `a` whose singular values fall below
/// `rel_tol * sigma_max`, as columns.
fn nullspace(a: &DMatrix<C64>, rel_tol: f64) -> DMatrix<C64> {
    let n = a.ncols();
    // Pad to at least square so that V is complete.
    let a = if a.nrows() < n {
        let mut p = DMatrix::zeros(n, n);
        p.view_mut((0, 0), (a.nrows(), n)).copy_from(a);
        p
    } else {
        a.clone()
    };
    let svd = a.svd(false, true);
    let vt = svd.v_t.expect("v_t requested");
    let smax = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    let cols: Vec<DVector<C64>> = svd
        .singular_values
        .iter()
        .enumerate()
        .filter(|(_, &s)| s <= rel_tol * smax.max(1.0))
        .map(|(i, _)| vt.row(i).adjoint())
        .collect();
    if cols.is_empty() {
        DMatrix::zeros(n, 0)
    } else {
        DMatrix::from_columns(&cols)
    }
}

/// Orthonormal basis of `{X in span(subspace) : [L, X] = [L^dag, X] = 0 for all L}`.
pub fn commutant_in(ops: &[Op4], subspace: &[Op4], rel_tol: f64) -> Vec<Op4> {
    let sub = hs_span_basis(subspace, 1e-12);
    if ops.is_empty() {
        return sub;
    }
    let n = sub.len();
    if n == 0 {
        return sub;
    }
    let rows = 32 * ops.len();
    let mut a = DMatrix::<C64>::zeros(rows, n);
    for (j, x) in sub.iter().enumerate() {
        for (o, l) in ops.iter().enumerate() {
            let ld = l.adjoint();
            let c1 = l * x - x * l;
            let c2 = ld * x - x * ld;
            for i in 0..16 {
                a[(32 * o + i, j)] = c1[(i / 4, i % 4)];
                a[(32 * o + 16 + i, j)] = c2[(i / 4, i % 4)];
            }
        }
    }
    let ns = nullspace(&a, rel_tol);
    let sols: Vec<Op4> = (0..ns.ncols())
        .map(|k| {
            let mut x = Op4::zeros();
            for (j, b) in sub.iter().enumerate() {
                x += b * ns[(j, k)];
            }
            x
        })
        .collect();
    hs_span_basis(&sols, 1e-8)
}

/// Orthonormal basis of the joint commutant of `ops` and their adjoints.
pub fn commutant(ops: &[LindbladOp]) -> Vec<Op4> {
    let mats: Vec<Op4> = ops.iter().map(|l| *l.matrix()).collect();
    let full: Vec<Op4> = (0..16).map(|i| unit(i / 4, i % 4)).collect();
    commutant_in(&mats, &full, NULLSPACE_TOL)
}

/// Attractor space from the superoperator spectrum.
pub fn attractor_space_eig(gen: &Liouvillian, eps: f64) -> Result<AttractorSpace> {
    let delta_e = gen.hamiltonian().delta_e();
    let spec = asymptotic_spectrum(gen, eps)?;
    let lmat = DMatrix::from_fn(16, 16, |r, c| gen.matrix()[(r, c)]);
    let scale = gen.matrix().norm().max(1.0);

    // Cluster by imaginary part.
    let cluster_tol = 1e-6 * delta_e.abs().max(1.0);
    let mut clusters: Vec<Vec<f64>> = Vec::new();
    for z in &spec {
        match clusters.last_mut() {
            Some(c) if (z.im - c[c.len() - 1]).abs() < cluster_tol => c.push(z.im),
            _ => clusters.push(vec![z.im]),
        }
    }

    let mut basis = Vec::new();
    for cluster in clusters {
        let mult = cluster.len();
        let im = cluster.iter().sum::<f64>() / mult as f64;
        // lambda = -i omega
        let omega = -im;
        let tag = tag_for(omega, delta_e)?;
        let shifted = &lmat - DMatrix::<C64>::identity(16, 16) * c64(0.0, im);
        let svd = shifted.svd(false, true);
        let vt = svd.v_t.expect("v_t requested");
        let mut idx: Vec<usize> = (0..16).collect();
        idx.sort_by(|&a, &b| svd.singular_values[a].partial_cmp(&svd.singular_values[b]).unwrap());
        let worst = svd.singular_values[idx[mult - 1]];
        if worst > 1e-6 * scale {
            return Err(Error::IllConditioned(format!(
                "eigenvalue {im}i has multiplicity {mult} but only a smaller kernel (sigma = {worst:e})"
            )));
        }
        let vecs: Vec<Op4> = idx[..mult]
            .iter()
            .map(|&i| {
                let v = vt.row(i).adjoint();
                Op4::from_fn(|r, c| v[4 * c + r])
            })
            .collect();
        for m in hs_span_basis(&vecs, 1e-8) {
            basis.push(Attractor { matrix: m, omega: tag.multiple() as f64 * delta_e, tag });
        }
    }
    Ok(AttractorSpace { basis, delta_e })
}

/// Attractor space from the commutant conditions, one frequency subspace at a time.
pub fn attractor_space_structure(h: &TwoQubitHamiltonian, ops: &[LindbladOp], eps: f64) -> Result<AttractorSpace> {
    let mats: Vec<Op4> = ops.iter().map(|l| *l.matrix()).collect();
    let delta_e = h.delta_e();
    let rel = eps.clamp(1e-14, 1e-6) * 0.1;
    let mut basis = Vec::new();
    for tag in FrequencyTag::ALL {
        for m in commutant_in(&mats, &tag.units(), rel) {
            basis.push(Attractor { matrix: m, omega: tag.multiple() as f64 * delta_e, tag });
        }
    }
    Ok(AttractorSpace { basis, delta_e })
}

/// Principal angles between two spans of 4x4 operators (largest first).
/// `None` when the dimensions differ.
pub fn principal_angles(a: &[Op4], b: &[Op4]) -> Option<Vec<f64>> {
    let qa = hs_span_basis(a, 1e-12);
    let qb = hs_span_basis(b, 1e-12);
    if qa.len() != qb.len() {
        return None;
    }
    if qa.is_empty() {
        return Some(Vec::new());
    }
    // sin(theta_i) are the singular values of (I - Pa) Qb.
    let ma = to_columns(&qa);
    let mb = to_columns(&qb);
    let resid = &mb - &ma * (ma.adjoint() * &mb);
    let mut s: Vec<f64> = resid.singular_values().iter().map(|x| x.min(1.0).asin()).collect();
    s.sort_by(|x, y| y.partial_cmp(x).unwrap());
    Some(s)
}

/// The asymptotic state `sum_i e^{-i omega_i t} Tr(X_i^dag rho0) X_i`.
pub fn asymptotic_state(space: &AttractorSpace, rho0: &Op4, t: f64) -> Op4 {
    let mut out = Op4::zeros();
    for x in &space.basis {
        out += x.matrix * (cis(-x.omega * t) * hs_inner(&x.matrix, rho0));
    }
    out
}

/// Reduced single-qubit states of the asymptotic trajectory, split into the
/// stationary (`omega = 0`) and dynamical (`omega != 0`) contributions.
#[derive(Debug, Clone, PartialEq)]
pub struct StationaryDynamicSplit {
    pub a_st: Op2,
    pub b_st: Op2,
    pub a_dyn: Op2,
    pub b_dyn: Op2,
}

pub fn stationary_dynamic_split(space: &AttractorSpace, rho0: &Op4, t: f64) -> StationaryDynamicSplit {
    let mut st = Op4::zeros();
    let mut dy = Op4::zeros();
    for x in &space.basis {
        let term = x.matrix * (cis(-x.omega * t) * hs_inner(&x.matrix, rho0));
        if x.tag == FrequencyTag::Zero {
            st += term;
        } else {
            dy += term;
        }
    }
    StationaryDynamicSplit {
        a_st: partial_trace(&st, Subsystem::B),
        b_st: partial_trace(&st, Subsystem::A),
        a_dyn: partial_trace(&dy, Subsystem::B),
        b_dyn: partial_trace(&dy, Subsystem::A),
    }
}

/// How the `X_dE` part of a commutant relates the two reduced states.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LockingStatus {
    /// No attractor in `X_dE`: local dynamics dies out.
    NoDynamicAttractors,
    /// Every `X_dE` attractor has vanishing partial traces.
    Trivial { dim: usize },
    /// `Tr_A X = e^{i phi} Tr_B X` on the whole `X_dE` block.
    Locked { phi: f64, dim: usize },
    /// Attractors with different phase relations coexist.
    Unlocked { dim: usize },
}

/// `(Tr_A X)_{01}` and `(Tr_B X)_{01}` for `X` in `X_dE`.
pub fn delta_traces(x: &Op4) -> (C64, C64) {
    (x[(0, 1)] + x[(2, 3)], x[(0, 2)] + x[(1, 3)])
}

/// Examine `X_dE ∩ commutant(ops)`.
pub fn delta_locking(ops: &[Op4], tol: f64) -> LockingStatus {
    let k = commutant_in(ops, &FrequencyTag::PlusDelta.units(), NULLSPACE_TOL);
    locking_of(&k, tol)
}

/// Locking relation of an explicit set of `X_dE` operators.
pub fn locking_of(k: &[Op4], tol: f64) -> LockingStatus {
    let dim = k.len();
    if dim == 0 {
        return LockingStatus::NoDynamicAttractors;
    }
    let (u, v): (Vec<C64>, Vec<C64>) = k.iter().map(delta_traces).unzip();
    let nu = u.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let nv = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if nu < tol && nv < tol {
        return LockingStatus::Trivial { dim };
    }
    if nv < tol {
        return LockingStatus::Unlocked { dim };
    }
    let z: C64 = v.iter().zip(&u).map(|(a, b)| a.conj() * b).sum::<C64>() / (nv * nv);
    let resid = u.iter().zip(&v).map(|(a, b)| (a - z * b).norm_sqr()).sum::<f64>().sqrt();
    if resid < tol * (1.0 + nu) && (z.norm() - 1.0).abs() < tol {
        LockingStatus::Locked { phi: wrap_phase(z.arg()), dim }
    } else {
        LockingStatus::Unlocked { dim }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liouvillian::build_generator;
    use crate::mechanisms::{make_ls, MechanismSpec};
    use crate::operators::{hs_orthonormalize, ket, swap, DensityOperator};

    fn h() -> TwoQubitHamiltonian {
        TwoQubitHamiltonian::new(1.0, 0.0).unwrap()
    }

    #[test]
    fn frequency_subspaces_partition_operator_space() {
        let dims: Vec<usize> = FrequencyTag::ALL.iter().map(|t| t.units().len()).collect();
        assert_eq!(dims, vec![1, 4, 6, 4, 1]);
        let hm = h();
        for tag in FrequencyTag::ALL {
            for x in tag.units() {
                let c = hm.matrix() * x - x * hm.matrix();
                assert!((c - x * c64(tag.multiple() as f64 * hm.delta_e(), 0.0)).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn unitary_spectrum_counts() {
        let gen = build_generator(&h(), &[]).unwrap();
        let spec = asymptotic_spectrum(&gen, DEFAULT_EPS).unwrap();
        assert_eq!(spec.len(), 16);
        let count = |w: f64| spec.iter().filter(|z| (z.im + w).abs() < 1e-9).count();
        assert_eq!(count(0.0), 6);
        assert_eq!(count(1.0), 4);
        assert_eq!(count(-1.0), 4);
        assert_eq!(count(2.0), 1);
        assert_eq!(count(-2.0), 1);
    }

    #[test]
    fn commutant_examples() {
        assert_eq!(commutant(&[]).len(), 16);
        let pi = LindbladOp::new(swap()).unwrap();
        assert_eq!(commutant(&[pi]).len(), 10);
        let id = LindbladOp::new(Op4::identity()).unwrap();
        assert_eq!(commutant(&[id]).len(), 16);
    }

    #[test]
    fn identity_operator_does_not_change_attractors() {
        let id = LindbladOp::new(Op4::identity()).unwrap();
        let a = attractor_space_structure(&h(), &[id], DEFAULT_EPS).unwrap();
        let b = attractor_space_structure(&h(), &[], DEFAULT_EPS).unwrap();
        assert_eq!(a.dimension(), 16);
        let angles = principal_angles(&a.matrices(), &b.matrices()).unwrap();
        assert!(angles[0] < 1e-12);
    }

    #[test]
    fn swap_class_has_ten_attractors_both_routes() {
        let op = make_ls(c64(0.0, 0.0), c64(1.0, 0.0), 0.4).unwrap();
        let gen = build_generator(&h(), std::slice::from_ref(&op)).unwrap();
        let eig = attractor_space_eig(&gen, DEFAULT_EPS).unwrap();
        let st = attractor_space_structure(&h(), &[op], DEFAULT_EPS).unwrap();
        assert_eq!(eig.dimension(), 10);
        assert_eq!(st.dimension(), 10);
        let angles = principal_angles(&eig.matrices(), &st.matrices()).unwrap();
        assert!(angles[0] < 1e-7, "{angles:?}");
    }

    #[test]
    fn asymptotic_state_of_maximally_mixed_is_stationary() {
        let spec = MechanismSpec::l1(0.3, c64(0.4, 0.1), c64(0.6, -0.2), 1.0, 0.2, 0.5);
        let op = LindbladOp::from_spec(&spec).unwrap();
        let space = attractor_space_structure(&h(), &[op], DEFAULT_EPS).unwrap();
        let mm = DensityOperator::maximally_mixed();
        for t in [0.0, 1.3, 10.0] {
            let r = asymptotic_state(&space, mm.matrix(), t);
            assert!((r - mm.matrix()).norm() < 1e-12);
        }
    }

    #[test]
    fn closed_system_diagonal_state_has_no_dynamic_part() {
        let space = attractor_space_structure(&h(), &[], DEFAULT_EPS).unwrap();
        let rho =
            Op4::from_diagonal(&nalgebra::Vector4::new(c64(0.1, 0.0), c64(0.2, 0.0), c64(0.3, 0.0), c64(0.4, 0.0)));
        let s = stationary_dynamic_split(&space, &rho, 2.0);
        assert!(s.a_dyn.norm() < 1e-14 && s.b_dyn.norm() < 1e-14);
        assert!((s.a_st.trace() - c64(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn locking_of_explicit_sets() {
        let phi = 2.0;
        let x = unit(0, 1) + unit(0, 2) * cis(-phi);
        match locking_of(&hs_orthonormalize(&[x]).unwrap(), 1e-9) {
            LockingStatus::Locked { phi: p, dim } => {
                assert_eq!(dim, 1);
                assert!((p - phi).abs() < 1e-12);
            }
            s => panic!("{s:?}"),
        }
        let y = unit(1, 3) - unit(2, 3) * cis(phi);
        assert!(matches!(locking_of(&hs_orthonormalize(&[x, y]).unwrap(), 1e-9), LockingStatus::Unlocked { dim: 2 }));
        assert_eq!(locking_of(&[], 1e-9), LockingStatus::NoDynamicAttractors);
        let _ = ket(0);
    }

    #[test]
    fn json_roundtrip() {
        let op = make_ls(c64(0.0, 0.0), c64(1.0, 0.0), 0.0).unwrap();
        let space = attractor_space_structure(&h(), &[op], DEFAULT_EPS).unwrap();
        let js = space.to_json();
        let back = AttractorSpace::from_json(&js, 1.0).unwrap();
        assert_eq!(back.dimension(), 10);
        for (a, b) in back.basis().iter().zip(space.basis()) {
            assert!((a.matrix - b.matrix).norm() < 1e-15);
            assert_eq!(a.tag, b.tag);
        }
    }
}
