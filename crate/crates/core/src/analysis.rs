//! Synchronization verdicts and asymptotic observables.

use std::f64::consts::TAU;

use serde::Serialize;

use crate::attractors::{
    asymptotic_state, attractor_space_structure, locking_of, stationary_dynamic_split, Attractor, AttractorSpace,
    FrequencyTag, LockingStatus, DEFAULT_EPS,
};
use crate::error::{Error, Result};
use crate::mechanisms::{ClassTag, LindbladOp, MechanismSpec};
use crate::operators::{
    c64, cis, hs_inner, hs_span_basis, ket, ket_from_phase_locking, kron2, psi2, sigma_y, swap, wrap_phase,
    DensityOperator, Op2, Op4, TwoQubitHamiltonian, C64,
};

/// Residual below which a sample counts as phase-locked.
pub const LOCK_TOL: f64 = 1e-7;

/// Largest spread over a period for which the asymptotic concurrence counts as constant.
pub const SPREAD_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SyncReport {
    pub phase_locked: bool,
    /// `None` when every `X_dE` attractor has vanishing partial traces.
    pub phi_measured: Option<f64>,
    /// Phase-locked with equal stationary parts.
    pub complete: bool,
    /// `max ||rho_B,dyn(t) - D rho_A,dyn(t) D^dag||` with `D = diag(1, e^{-i phi})`.
    pub residual: f64,
    /// `max ||rho_A,st - rho_B,st||`
    pub stationary_gap: f64,
}

/// 64 points over two periods `4 pi / |dE|`.
pub fn default_t_grid(delta_e: f64) -> Vec<f64> {
    let span = 2.0 * TAU / delta_e.abs();
    (0..64).map(|i| span * i as f64 / 64.0).collect()
}

/// Relative phase `phi` read off the `X_dE` block: `Tr_A X = e^{i phi} Tr_B X`.
pub fn measured_phase(space: &AttractorSpace) -> Option<f64> {
    let block: Vec<Op4> = space.block(FrequencyTag::PlusDelta).map(|x| x.matrix).collect();
    match locking_of(&block, 1e-8) {
        LockingStatus::Locked { phi, .. } => Some(phi),
        LockingStatus::Unlocked { .. } => block
            .iter()
            .map(crate::attractors::delta_traces)
            .filter(|(_, fb)| fb.norm() > 1e-8)
            .max_by(|x, y| x.1.norm().partial_cmp(&y.1.norm()).unwrap())
            .map(|(fa, fb)| wrap_phase((fa / fb).arg())),
        _ => None,
    }
}

/// `D rho D^dag` with `D = diag(1, e^{-i phi})`: shifts the coherence by `e^{i phi}`.
fn phase_shift(rho: &Op2, phi: f64) -> Op2 {
    let d = Op2::new(c64(1.0, 0.0), c64(0.0, 0.0), c64(0.0, 0.0), cis(-phi));
    d * rho * d.adjoint()
}

pub fn sync_verdict(space: &AttractorSpace, phi: f64, samples: &[DensityOperator], t_grid: &[f64]) -> SyncReport {
    let mut residual: f64 = 0.0;
    let mut gap: f64 = 0.0;
    for rho in samples {
        for &t in t_grid {
            let s = stationary_dynamic_split(space, rho.matrix(), t);
            residual = residual.max((s.b_dyn - phase_shift(&s.a_dyn, phi)).norm());
            gap = gap.max((s.a_st - s.b_st).norm());
        }
    }
    let phase_locked = residual < LOCK_TOL;
    SyncReport {
        phase_locked,
        phi_measured: measured_phase(space),
        complete: phase_locked && gap < LOCK_TOL,
        residual,
        stationary_gap: gap,
    }
}

/// `(|psi2> + |11>)/sqrt(2)`: its `X_dE` coherence carries phase `phi + pi`,
/// so it exposes mechanisms that leave `|psi2><11|` undamped.
pub fn unlocked_probe_state(phi: f64) -> DensityOperator {
    DensityOperator::from_pure(&(psi2(phi) + ket(3))).expect("nonzero ket")
}

/// `2|y|` with `y` the off-diagonal element of a qubit state.
pub fn visibility(rho: &Op2) -> f64 {
    2.0 * rho[(0, 1)].norm()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CoMKind {
    /// `e^{-i w t} X + e^{i w t} X^dag`
    C1,
    /// `i (e^{-i w t} X - e^{i w t} X^dag)`
    C2,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConstantOfMotion {
    pub x: Attractor,
    pub kind: CoMKind,
}

impl ConstantOfMotion {
    /// The Hermitian observable `C(t)`.
    pub fn observable(&self, t: f64) -> Op4 {
        let e = cis(-self.x.omega * t);
        let a = self.x.matrix * e;
        match self.kind {
            CoMKind::C1 => a + a.adjoint(),
            CoMKind::C2 => (a - a.adjoint()) * c64(0.0, 1.0),
        }
    }

    /// `Tr(C(t) rho)`
    pub fn mean(&self, rho: &Op4, t: f64) -> f64 {
        (self.observable(t) * rho).trace().re
    }
}

/// One constant per `omega = 0` attractor and two per conjugate pair.
pub fn constants_of_motion(space: &AttractorSpace) -> Result<Vec<ConstantOfMotion>> {
    let mut out = Vec::new();
    let zero: Vec<&Attractor> = space.block(FrequencyTag::Zero).collect();
    let mut herm = Vec::new();
    for x in &zero {
        herm.push(x.matrix + x.matrix.adjoint());
        herm.push((x.matrix - x.matrix.adjoint()) * c64(0.0, 1.0));
    }
    for y in hs_span_basis(&herm, 1e-8) {
        let y = (y + y.adjoint()) * c64(0.5, 0.0);
        out.push(ConstantOfMotion {
            x: Attractor { matrix: y * c64(0.5, 0.0), omega: 0.0, tag: FrequencyTag::Zero },
            kind: CoMKind::C1,
        });
    }
    if out.len() != zero.len() {
        return Err(Error::PairingBroken { omega: 0.0 });
    }
    for tag in [FrequencyTag::PlusDelta, FrequencyTag::PlusTwoDelta] {
        let partner: Vec<Op4> = space.block(tag.conjugate()).map(|x| x.matrix).collect();
        let block: Vec<&Attractor> = space.block(tag).collect();
        if block.len() != partner.len() {
            return Err(Error::PairingBroken { omega: tag.multiple() as f64 * space.delta_e() });
        }
        for x in block {
            let adj = x.matrix.adjoint();
            let mut r = adj;
            for p in &partner {
                r -= p * hs_inner(p, &adj);
            }
            if r.norm() > 1e-8 {
                return Err(Error::PairingBroken { omega: x.omega });
            }
            out.push(ConstantOfMotion { x: x.clone(), kind: CoMKind::C1 });
            out.push(ConstantOfMotion { x: x.clone(), kind: CoMKind::C2 });
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PermutationReport {
    pub states_invariant: bool,
    pub lindblad_invariant: bool,
    /// Common `nu` in `Pi L Pi = e^{i nu} L`, in `[0, 2 pi)`.
    pub nu: Option<f64>,
}

/// `nu` with `Pi L Pi = e^{i nu} L`, if any.
pub fn permutation_phase(l: &Op4, tol: f64) -> Option<f64> {
    let p = swap();
    let pl = p * l * p;
    let idx = (0..16).max_by(|&a, &b| l[(a / 4, a % 4)].norm().partial_cmp(&l[(b / 4, b % 4)].norm()).unwrap())?;
    let z = l[(idx / 4, idx % 4)];
    if z.norm() == 0.0 {
        return Some(0.0);
    }
    let ratio = pl[(idx / 4, idx % 4)] / z;
    let nu = ratio.arg();
    if (pl - l * cis(nu)).norm() < tol * (1.0 + l.norm()) {
        Some(wrap_phase(nu))
    } else {
        None
    }
}

pub fn permutation_checks(space: &AttractorSpace, ops: &[LindbladOp]) -> PermutationReport {
    let p = swap();
    let states_invariant = space.basis().iter().all(|x| (x.matrix - p * x.matrix * p).norm() < 1e-9);
    let nus: Vec<Option<f64>> = ops.iter().map(|o| permutation_phase(o.matrix(), 1e-9)).collect();
    let lindblad_invariant = nus.iter().all(|n| n.is_some());
    let nu = if lindblad_invariant {
        let first = nus.first().copied().flatten().unwrap_or(0.0);
        let same = nus.iter().flatten().all(|n| {
            let d = (n - first).rem_euclid(TAU);
            d.min(TAU - d) < 1e-9
        });
        same.then_some(first)
    } else {
        None
    };
    PermutationReport { states_invariant, lindblad_invariant, nu }
}

/// Eigenvalues of `rho` below this are roundoff and are zeroed before `sqrt(rho)`.
const EIG_FLOOR: f64 = 1e-14;

/// Wootters concurrence of a two-qubit operator treated as a state. The
/// `lambda_i` are the singular values of `sqrt(rho) (Y x Y) conj(sqrt(rho))`,
/// which avoids square roots of the near-zero eigenvalues of `rho rho~`.
pub fn concurrence_of(rho: &Op4) -> f64 {
    let yy = kron2(&sigma_y(), &sigma_y());
    let h = (rho + rho.adjoint()) * c64(0.5, 0.0);
    let eig = h.symmetric_eigen();
    let sqrt_vals = eig.eigenvalues.map(|v| c64(if v > EIG_FLOOR { v.sqrt() } else { 0.0 }, 0.0));
    let sq = eig.eigenvectors * Op4::from_diagonal(&sqrt_vals) * eig.eigenvectors.adjoint();
    let a = sq * yy * sq.conjugate();
    let mut s: Vec<f64> = a.singular_values().iter().copied().collect();
    s.sort_by(|a, b| b.partial_cmp(a).unwrap());
    (s[0] - s[1] - s[2] - s[3]).clamp(0.0, 1.0)
}

pub fn concurrence(rho: &DensityOperator) -> f64 {
    concurrence_of(rho.matrix())
}

/// `2 |x1 x4 - (e^{i phi}/2)(x2^2 - x3^2)|` for a normalized pure state with
/// phase-locking amplitudes `x`.
pub fn concurrence_pure(x: [C64; 4], phi: f64) -> f64 {
    2.0 * (x[0] * x[3] - cis(phi) * 0.5 * (x[1] * x[1] - x[2] * x[2])).norm()
}

/// Phase-locking amplitudes of the three entanglement scenarios.
pub fn scenario_amplitudes(index: usize, phi: f64) -> Option<[C64; 4]> {
    let z = c64(0.0, 0.0);
    let r3 = 1.0 / 3f64.sqrt();
    match index {
        1 => Some([c64(r3, 0.0), c64(r3, 0.0), c64(r3, 0.0), z]),
        2 => Some([c64(r3, 0.0), c64(0.0, -1.0) * cis(phi / 2.0) * r3, z, c64(r3, 0.0)]),
        3 => Some([c64(0.5, 0.0), cis(-phi / 2.0) * std::f64::consts::FRAC_1_SQRT_2, z, c64(0.5, 0.0)]),
        _ => None,
    }
}

pub fn scenario_state(index: usize, phi: f64) -> Option<DensityOperator> {
    let amps = scenario_amplitudes(index, phi)?;
    DensityOperator::from_pure(&ket_from_phase_locking(amps, phi)).ok()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScenarioOutcome {
    pub scenario: usize,
    pub initial: f64,
    /// Mean asymptotic concurrence over one period.
    pub asymptotic: f64,
    /// `max - min` of the asymptotic concurrence over one period.
    pub spread: f64,
    pub time_independent: bool,
}

/// Asymptotic concurrence for the three scenarios under an `L1` mechanism.
pub fn entanglement_scenarios(h: &TwoQubitHamiltonian, spec: &MechanismSpec) -> Result<Vec<ScenarioOutcome>> {
    if spec.class != ClassTag::L1 {
        return Err(Error::InvalidParam(format!("scenarios are defined for class L1, got {}", spec.class)));
    }
    let op = LindbladOp::from_spec(spec)?;
    let space = attractor_space_structure(h, &[op], DEFAULT_EPS)?;
    let period = TAU / h.delta_e().abs();
    let grid: Vec<f64> = (0..32).map(|i| period * i as f64 / 32.0).collect();
    let mut out = Vec::new();
    for idx in 1..=3 {
        let rho = scenario_state(idx, spec.phi).expect("scenario index");
        let values: Vec<f64> =
            grid.iter().map(|&t| concurrence_of(&asymptotic_state(&space, rho.matrix(), t))).collect();
        let max = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let min = values.iter().cloned().fold(f64::INFINITY, f64::min);
        let mean = values.iter().sum::<f64>() / values.len() as f64;
        let spread = max - min;
        if spread > SPREAD_TOL {
            log::warn!("scenario {idx}: asymptotic concurrence oscillates in [{min}, {max}]");
        }
        out.push(ScenarioOutcome {
            scenario: idx,
            initial: concurrence(&rho),
            asymptotic: mean,
            spread,
            time_independent: spread <= SPREAD_TOL,
        });
    }
    Ok(out)
}

/// Largest asymptotic single-qubit visibility of qubit A reachable from `rho0`.
pub fn asymptotic_visibility(space: &AttractorSpace, rho0: &Op4) -> f64 {
    let s = stationary_dynamic_split(space, rho0, 0.0);
    visibility(&s.a_dyn)
}
