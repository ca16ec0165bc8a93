//! Integrate a scenario with RK4, compare the endpoint with the asymptotic
//! projection and print the single-qubit visibilities as CSV.

use std::f64::consts::PI;
use std::io;

use qsync::analysis::visibility;
use qsync::attractors::{asymptotic_state, attractor_space_eig, spectral_gap, DEFAULT_EPS};
use qsync::liouvillian::build_generator;
use qsync::mechanisms::{LindbladOp, MechanismSpec};
use qsync::operators::{c64, DensityOperator, TwoQubitHamiltonian};
use qsync::scenario::psi_in;

fn main() -> qsync::Result<()> {
    let h = TwoQubitHamiltonian::new(4.0 * PI / 15.0, 0.0)?;
    let spec = MechanismSpec::l1(PI, c64(0.75, 1.0), c64(5.0 / 7.0, 1.0), 0.5, 0.3, 0.4);
    let gen = build_generator(&h, &[LindbladOp::from_spec(&spec)?])?;
    let rho0 = DensityOperator::from_pure(&psi_in())?;

    let t_final = 40.0;
    let traj = gen.evolve_sampled(&rho0, t_final, gen.default_dt(), 50)?;
    let vis_a = traj.states.iter().map(|r| visibility(&r.reduced_a())).collect();
    let vis_b = traj.states.iter().map(|r| visibility(&r.reduced_b())).collect();
    traj.write_csv(io::stdout().lock(), &[("visibility_A", vis_a), ("visibility_B", vis_b)])?;

    let space = attractor_space_eig(&gen, DEFAULT_EPS)?;
    let far = asymptotic_state(&space, rho0.matrix(), t_final);
    eprintln!(
        "gap {:.4}, |rho(t) - rho_asym(t)| = {:.3e} at t = {t_final}",
        spectral_gap(&gen, DEFAULT_EPS),
        (traj.last().matrix() - far).norm()
    );
    Ok(())
}
