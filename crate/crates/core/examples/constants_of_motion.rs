use std::f64::consts::PI;

use qsync::analysis::constants_of_motion;
use qsync::attractors::{attractor_space_eig, DEFAULT_EPS};
use qsync::liouvillian::build_generator;
use qsync::mechanisms::{LindbladOp, MechanismSpec};
use qsync::operators::{c64, DensityOperator, TwoQubitHamiltonian};
use qsync::scenario::psi_in;

fn main() -> qsync::Result<()> {
    let h = TwoQubitHamiltonian::new(1.0, 0.0)?;
    let spec = MechanismSpec::ls(PI / 2.0, c64(0.0, 0.0), c64(1.0, 0.0));
    let gen = build_generator(&h, &[LindbladOp::from_spec(&spec)?])?;
    let space = attractor_space_eig(&gen, DEFAULT_EPS)?;
    let com = constants_of_motion(&space)?;
    println!("{} attractors, {} constants of motion", space.dimension(), com.len());

    let rho0 = DensityOperator::from_pure(&psi_in())?;
    let traj = gen.evolve_sampled(&rho0, 20.0, 0.005, 1000)?;
    for (i, c) in com.iter().enumerate() {
        let drift = traj
            .times
            .iter()
            .zip(&traj.states)
            .map(|(t, r)| (c.mean(r.matrix(), *t) - c.mean(rho0.matrix(), 0.0)).abs())
            .fold(0.0, f64::max);
        println!(
            "C{i:<2} {:?} omega={:+.1} <C>={:+.6} drift={drift:.1e}",
            c.kind,
            c.x.omega,
            c.mean(rho0.matrix(), 0.0)
        );
    }
    Ok(())
}
