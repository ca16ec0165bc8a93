//! Largest asymptotic visibility reachable under `Ltheta` compared with
//! `|sin 2 theta| / 2`, sampled over Haar-random pure states.

use std::f64::consts::PI;

use qsync::analysis::asymptotic_visibility;
use qsync::attractors::{attractor_space_structure, DEFAULT_EPS};
use qsync::mechanisms::{LindbladOp, MechanismSpec};
use qsync::operators::{c64, TwoQubitHamiltonian};
use qsync::scenario::haar_ket;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> qsync::Result<()> {
    let h = TwoQubitHamiltonian::new(1.0, 0.0)?;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    println!("{:>8} {:>10} {:>10}", "theta", "max vis", "bound");
    for i in 1..8 {
        let theta = PI / 16.0 * i as f64;
        let spec = MechanismSpec::ltheta(0.0, theta, c64(0.2, 0.1), c64(0.6, 0.3), 0.3, 0.4);
        let space = attractor_space_structure(&h, &[LindbladOp::from_spec(&spec)?], DEFAULT_EPS)?;
        let best = (0..5000)
            .map(|_| {
                let psi = haar_ket(&mut rng);
                asymptotic_visibility(&space, &(psi * psi.adjoint()))
            })
            .fold(0.0, f64::max);
        println!("{theta:>8.4} {best:>10.5} {:>10.5}", 0.5 * (2.0 * theta).sin().abs());
    }
    Ok(())
}
