//! Asymptotic concurrence of the three entanglement scenarios under `L1`,
//! with and without the `b` coupling.

use std::f64::consts::PI;

use qsync::analysis::entanglement_scenarios;
use qsync::mechanisms::MechanismSpec;
use qsync::operators::{c64, TwoQubitHamiltonian};

fn main() -> qsync::Result<()> {
    let h = TwoQubitHamiltonian::new(4.0 * PI / 15.0, 0.0)?;
    let a = c64(0.75, 1.0);
    for (label, b) in [("b != 0", c64(5.0 / 7.0, 1.0)), ("b = 0", c64(0.0, 0.0))] {
        let spec = MechanismSpec::l1(PI / 3.0, a, b, 0.5, 0.3, 0.4);
        for o in entanglement_scenarios(&h, &spec)? {
            println!(
                "{label:<7} scenario {}: C(0) = {:.6}  C(inf) = {:.6}  constant = {}",
                o.scenario, o.initial, o.asymptotic, o.time_independent
            );
        }
    }
    Ok(())
}
