//! Attractor-space dimensions and frequency blocks for one member of each
//! mechanism class, computed both from the spectrum of the generator and
//! from the commutant structure.

use std::f64::consts::PI;

use qsync::attractors::{attractor_space_eig, attractor_space_structure, principal_angles, FrequencyTag, DEFAULT_EPS};
use qsync::liouvillian::build_generator;
use qsync::mechanisms::{LindbladOp, MechanismSpec};
use qsync::operators::{c64, TwoQubitHamiltonian};

fn main() -> qsync::Result<()> {
    let h = TwoQubitHamiltonian::new(1.0, 0.0)?;
    let (a, b, z) = (c64(0.75, 1.0), c64(0.7, 1.0), c64(0.0, 0.0));
    let specs = [
        ("L1, b != 0", MechanismSpec::l1(PI / 3.0, a, b, 0.5, 0.3, 0.4)),
        ("L1, b = 0", MechanismSpec::l1(PI / 3.0, a, z, 0.5, 0.3, 0.4)),
        ("L2, b != 0", MechanismSpec::l2(PI / 3.0, a, b, 0.5, 0.3, 0.4)),
        ("Ls", MechanismSpec::ls(PI / 3.0, z, c64(1.0, 0.0))),
        ("Ltheta, theta = pi/5", MechanismSpec::ltheta(PI / 3.0, PI / 5.0, a, b, 0.3, 0.4)),
    ];
    println!("{:<22} {:>4} {:>6}  blocks (-2dE..2dE)", "mechanism", "dim", "angle");
    for (name, spec) in specs {
        let op = LindbladOp::from_spec(&spec)?;
        let gen = build_generator(&h, std::slice::from_ref(&op))?;
        let eig = attractor_space_eig(&gen, DEFAULT_EPS)?;
        let st = attractor_space_structure(&h, &[op], DEFAULT_EPS)?;
        let angle = principal_angles(&eig.matrices(), &st.matrices()).and_then(|v| v.first().copied()).unwrap_or(0.0);
        let blocks: Vec<usize> = FrequencyTag::ALL.iter().map(|&t| eig.block_dimension(t)).collect();
        println!("{name:<22} {:>4} {angle:>6.0e}  {blocks:?}", eig.dimension());
    }
    Ok(())
}
