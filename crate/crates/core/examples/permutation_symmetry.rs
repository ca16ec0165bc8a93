use std::f64::consts::{FRAC_PI_4, PI};

use qsync::analysis::permutation_checks;
use qsync::attractors::{attractor_space_structure, DEFAULT_EPS};
use qsync::mechanisms::{LindbladOp, MechanismSpec};
use qsync::operators::{c64, TwoQubitHamiltonian};

fn main() -> qsync::Result<()> {
    let h = TwoQubitHamiltonian::new(1.0, 0.0)?;
    let (a, b, z) = (c64(0.75, 1.0), c64(5.0 / 7.0, 1.0), c64(0.0, 0.0));
    let cases = [
        ("L1 sync, b=0", MechanismSpec::l1(0.0, a, z, 0.5, 0.3, 0.4)),
        ("L1 sync, b!=0", MechanismSpec::l1(0.0, a, b, 0.5, 0.3, 0.4)),
        ("L1 sync, only b", MechanismSpec::l1(0.0, z, b, 0.0, 0.0, 0.0)),
        ("L1 antisync", MechanismSpec::l1(PI, a, b, 0.5, 0.3, 0.4)),
        ("L2 antisync", MechanismSpec::l2(PI, a, b, 0.5, 0.3, 0.4)),
        ("L+pi/4 sync", MechanismSpec::ltheta(0.0, FRAC_PI_4, a, b, 0.3, 0.4)),
    ];
    println!("{:<18} {:>7} {:>9} {:>6}", "mechanism", "states", "operator", "nu");
    for (name, spec) in cases {
        let op = LindbladOp::from_spec(&spec)?;
        let space = attractor_space_structure(&h, std::slice::from_ref(&op), DEFAULT_EPS)?;
        let r = permutation_checks(&space, &[op]);
        let nu = r.nu.map_or("-".to_string(), |v| format!("{v:.3}"));
        println!("{name:<18} {:>7} {:>9} {nu:>6}", r.states_invariant, r.lindblad_invariant);
    }
    Ok(())
}
