//! Recover the mechanism class and parameters of a bare 4x4 matrix.

use qsync::mechanisms::{classify, enforces, LindbladOp, MechanismSpec};
use qsync::operators::{c64, cis, swap, Op4};

fn main() -> qsync::Result<()> {
    let spec = MechanismSpec::ltheta(0.4, -0.6, c64(0.1, 0.2), c64(0.5, -0.5), 1.0, 0.8);
    // A global phase does not change the generated dynamics.
    let hidden: Op4 = LindbladOp::from_spec(&spec)?.matrix() * cis(2.2);
    let found = classify(&hidden, 1e-9)?.expect("enforcing operator");
    println!("built    {spec:?}");
    println!("found    {found:?}");

    let p = swap();
    let conjugated = p * hidden * p;
    if let Some(s) = classify(&conjugated, 1e-9)? {
        println!("Pi L Pi  class {} theta {:.4} phi {:.4}", s.class, s.theta, s.phi);
    }

    let not_locking =
        Op4::from_diagonal(&nalgebra::Vector4::new(c64(1.0, 0.0), c64(0.0, 0.0), c64(0.0, 0.0), c64(-1.0, 0.0)));
    println!("diag(1,0,0,-1): {:?}", classify(&not_locking, 1e-9)?);
    println!("verdict for the built operator: {:?}", enforces(&LindbladOp::from_spec(&spec)?)?);
    Ok(())
}
