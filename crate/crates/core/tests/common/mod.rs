#![allow(dead_code)]

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use qsync::attractors::{spectral_gap, DEFAULT_EPS};
use qsync::liouvillian::build_generator;
use qsync::mechanisms::{LindbladOp, MechanismSpec};
use qsync::operators::{c64, DensityOperator, Op4, TwoQubitHamiltonian, C64};
use qsync::scenario::haar_ket;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn h() -> TwoQubitHamiltonian {
    TwoQubitHamiltonian::new(1.0, 0.0).unwrap()
}

pub fn cplx(r: &mut impl Rng, scale: f64) -> C64 {
    c64(r.random_range(-scale..scale), r.random_range(-scale..scale))
}

/// Complex number with modulus in `[lo, hi]`.
pub fn cplx_mod(r: &mut impl Rng, lo: f64, hi: f64) -> C64 {
    C64::from_polar(r.random_range(lo..hi), r.random_range(0.0..TAU))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    L1Coupled,
    L1Split,
    L2Coupled,
    L2Split,
    Ls,
    Ltheta,
}

impl Variant {
    pub const ALL: [Variant; 6] =
        [Variant::L1Coupled, Variant::L1Split, Variant::L2Coupled, Variant::L2Split, Variant::Ls, Variant::Ltheta];

    pub fn name(self) -> &'static str {
        match self {
            Variant::L1Coupled => "L1(b!=0)",
            Variant::L1Split => "L1(b=0)",
            Variant::L2Coupled => "L2(b!=0)",
            Variant::L2Split => "L2(b=0)",
            Variant::Ls => "Ls",
            Variant::Ltheta => "Ltheta",
        }
    }

    pub fn expected_dimension(self) -> usize {
        match self {
            Variant::L1Coupled | Variant::L2Coupled => 5,
            Variant::L1Split | Variant::L2Split => 6,
            Variant::Ls => 10,
            Variant::Ltheta => 4,
        }
    }
}

/// Random enforcing mechanism of the given variant. Eigenvalue gaps of the
/// split variants are kept at least `0.6` apart so that convergence stays fast.
pub fn random_spec(v: Variant, phi: f64, r: &mut impl Rng) -> MechanismSpec {
    let a = cplx(r, 1.0);
    let b = cplx_mod(r, 0.4, 1.0);
    let c: f64 = r.random_range(-1.0..1.0);
    let k: f64 = r.random_range(-PI..PI);
    let m: f64 = r.random_range(0.4..1.0) * if r.random_bool(0.5) { 1.0 } else { -1.0 };
    let z = c64(0.0, 0.0);
    match v {
        Variant::L1Coupled => MechanismSpec::l1(phi, a, b, c, k, m),
        Variant::L2Coupled => MechanismSpec::l2(phi, a, b, c, k, m),
        Variant::L1Split | Variant::L2Split => loop {
            let a = cplx(r, 1.0);
            let c: f64 = r.random_range(-1.0..1.0);
            let k: f64 = r.random_range(-PI..PI);
            let m: f64 = r.random_range(0.6..1.2);
            let d = a + C64::from_polar(m, k);
            let cc = c64(c, 0.0);
            if (a - cc).norm() > 0.6 && (d - cc).norm() > 0.6 {
                break if v == Variant::L1Split {
                    MechanismSpec::l1(phi, a, z, c, k, m)
                } else {
                    MechanismSpec::l2(phi, a, z, c, k, m)
                };
            }
        },
        Variant::Ls => MechanismSpec::ls(phi, cplx(r, 1.0), cplx_mod(r, 0.5, 1.0)),
        Variant::Ltheta => {
            let mag: f64 = r.random_range(0.2..FRAC_PI_2 - 0.2);
            let theta = if r.random_bool(0.5) { mag } else { -mag };
            MechanismSpec::ltheta(phi, theta, a, b, k, m)
        }
    }
}

/// Like [`random_spec`] but redrawn until the spectral gap exceeds `min_gap`.
pub fn random_spec_with_gap(v: Variant, phi: f64, min_gap: f64, r: &mut impl Rng) -> (MechanismSpec, f64) {
    loop {
        let s = random_spec(v, phi, r);
        let gen = build_generator(&h(), &[LindbladOp::from_spec(&s).unwrap()]).unwrap();
        let gap = spectral_gap(&gen, DEFAULT_EPS);
        if gap > min_gap {
            return (s, gap);
        }
    }
}

pub fn haar_unitary(r: &mut impl Rng) -> Op4 {
    let cols: Vec<_> = (0..4).map(|_| haar_ket(r)).collect();
    let m = Op4::from_columns(&cols);
    m.qr().q()
}

/// Random normal operator; with `degenerate` the spectrum has a repeated eigenvalue.
pub fn random_normal(r: &mut impl Rng, degenerate: bool) -> Op4 {
    let u = haar_unitary(r);
    let mut ev: Vec<C64> = (0..4).map(|_| cplx(r, 1.0)).collect();
    if degenerate {
        ev[1] = ev[0];
    }
    u * Op4::from_diagonal(&nalgebra::Vector4::from_column_slice(&ev)) * u.adjoint()
}

/// Random normal operator commuting with a random diagonal projector
/// structure, which leaves nontrivial attractors.
pub fn random_block_normal(r: &mut impl Rng) -> Op4 {
    // Unitary mixing only |01>, |10> keeps X_omega structure visible.
    let (s, c) = r.random_range(0.0..TAU).sin_cos();
    let ph = C64::from_polar(1.0, r.random_range(0.0..TAU));
    let z = c64(0.0, 0.0);
    let one = c64(1.0, 0.0);
    #[rustfmt::skip]
    let u = Op4::new(
        one, z, z, z,
        z, c64(c, 0.0), -ph.conj() * s, z,
        z, ph * s, c64(c, 0.0), z,
        z, z, z, one,
    );
    let mut ev: Vec<C64> = (0..4).map(|_| cplx(r, 1.0)).collect();
    if r.random_bool(0.5) {
        ev[3] = ev[0];
    }
    u * Op4::from_diagonal(&nalgebra::Vector4::from_column_slice(&ev)) * u.adjoint()
}

pub fn haar_state(r: &mut impl Rng) -> DensityOperator {
    DensityOperator::from_pure(&haar_ket(r)).unwrap()
}

/// Random full-rank mixed state.
pub fn random_mixed(r: &mut impl Rng) -> DensityOperator {
    let g = Op4::from_fn(|_, _| cplx(r, 1.0));
    let m = g * g.adjoint();
    let tr = m.trace();
    DensityOperator::new(m / tr).unwrap()
}

pub fn wrap_diff(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TAU);
    d.min(TAU - d)
}
