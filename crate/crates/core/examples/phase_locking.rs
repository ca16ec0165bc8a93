use std::f64::consts::PI;

use qsync::analysis::{default_t_grid, sync_verdict, unlocked_probe_state};
use qsync::attractors::{attractor_space_structure, DEFAULT_EPS};
use qsync::mechanisms::{enforces, LindbladOp, MechanismSpec};
use qsync::operators::{c64, DensityOperator, TwoQubitHamiltonian};
use qsync::scenario::psi_in;

fn report(h: &TwoQubitHamiltonian, label: &str, spec: MechanismSpec) -> qsync::Result<()> {
    let op = LindbladOp::from_spec(&spec)?;
    let verdict = enforces(&op)?;
    let space = attractor_space_structure(h, &[op], DEFAULT_EPS)?;
    let samples = [DensityOperator::from_pure(&psi_in())?, unlocked_probe_state(spec.phi)];
    let rep = sync_verdict(&space, spec.phi, &samples, &default_t_grid(h.delta_e()));
    println!(
        "{label:<28} enforces={:<5} locked={:<5} complete={:<5} residual={:.2e} phi_measured={:?}",
        verdict.enforces_phase_locking, rep.phase_locked, rep.complete, rep.residual, rep.phi_measured
    );
    Ok(())
}

fn main() -> qsync::Result<()> {
    let h = TwoQubitHamiltonian::new(4.0 * PI / 15.0, 0.0)?;
    let (a, b, z) = (c64(0.75, 1.0), c64(5.0 / 7.0, 1.0), c64(0.0, 0.0));
    for phi in [0.0, PI / 3.0, PI, 1.5 * PI] {
        report(&h, &format!("L1 phi={phi:.3}"), MechanismSpec::l1(phi, a, b, 0.5, 0.3, 0.4))?;
    }
    report(&h, "L1 b=0 m=0 (a != c)", MechanismSpec::l1(PI / 3.0, a, z, 0.5, 0.3, 0.0))?;
    Ok(())
}
