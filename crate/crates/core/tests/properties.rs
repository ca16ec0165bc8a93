mod common;

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use common::{h, haar_unitary, random_spec, rng, wrap_diff, Variant};
use proptest::prelude::*;
use qsync::analysis::{concurrence_of, concurrence_pure, constants_of_motion};
use qsync::attractors::{
    attractor_space_eig, attractor_space_structure, principal_angles, spectral_gap, FrequencyTag, DEFAULT_EPS,
};
use qsync::liouvillian::build_generator;
use qsync::mechanisms::{classify, enforces, ClassTag, LindbladOp, MechanismSpec};
use qsync::operators::{
    c64, cis, commutator, hs_inner, hs_orthonormalize, ket_from_phase_locking, kron2, normal_2x2, normality_residual,
    partial_trace, swap, trace4, DensityOperator, NormalParams2x2, Op2, Op4, Subsystem, C64,
};
use qsync::scenario::{haar_ket, mechanism_presets};
use rand::Rng;

fn complex(scale: f64) -> impl Strategy<Value = C64> {
    (-scale..scale, -scale..scale).prop_map(|(re, im)| c64(re, im))
}

fn polar(lo: f64, hi: f64) -> impl Strategy<Value = C64> {
    (lo..hi, 0.0..TAU).prop_map(|(r, t)| C64::from_polar(r, t))
}

fn op4() -> impl Strategy<Value = Op4> {
    proptest::collection::vec(complex(1.0), 16).prop_map(Op4::from_iterator)
}

fn l1_l2(class: ClassTag) -> impl Strategy<Value = MechanismSpec> {
    (0.0..TAU, complex(1.0), polar(0.3, 1.0), -1.0..1.0, -PI..PI, 0.3..1.0f64).prop_map(move |(phi, a, b, c, k, m)| {
        let s = MechanismSpec::l1(phi, a, b, c, k, m);
        MechanismSpec { class, ..s }
    })
}

fn ls() -> impl Strategy<Value = MechanismSpec> {
    (0.0..TAU, complex(1.0), polar(0.3, 1.0)).prop_map(|(phi, j, ks)| MechanismSpec::ls(phi, j, ks))
}

fn ltheta() -> impl Strategy<Value = MechanismSpec> {
    let theta = prop_oneof![0.1..FRAC_PI_2 - 0.1, -(FRAC_PI_2 - 0.1)..-0.1];
    (0.0..TAU, theta, complex(1.0), polar(0.3, 1.0), -PI..PI, 0.3..1.0f64)
        .prop_map(|(phi, theta, a, b, k, m)| MechanismSpec::ltheta(phi, theta, a, b, k, m))
}

fn any_spec() -> impl Strategy<Value = MechanismSpec> {
    prop_oneof![l1_l2(ClassTag::L1), l1_l2(ClassTag::L2), ls(), ltheta()]
}

fn assert_round_trip(spec: &MechanismSpec) -> Result<(), TestCaseError> {
    let op = LindbladOp::from_spec(spec).unwrap();
    let got = classify(op.matrix(), 1e-9).unwrap();
    prop_assert!(got.is_some(), "classify rejected {spec:?}");
    let got = got.unwrap();
    prop_assert_eq!(got.class, spec.class);
    prop_assert!(wrap_diff(got.phi, spec.phi) < 1e-7, "phi {} vs {}", got.phi, spec.phi);
    if spec.class == ClassTag::Ltheta {
        prop_assert!((got.theta - spec.theta).abs() < 1e-7);
    }
    Ok(())
}

proptest! {
    #[test]
    fn normal_2x2_is_normal(a in complex(3.0), b in complex(3.0), k in -PI..PI, m in -3.0..3.0f64) {
        let mat = normal_2x2(&NormalParams2x2 { a, b, k, m });
        prop_assert!(normality_residual(&mat) < 1e-12 * (1.0 + mat.norm_squared()));
    }

    #[test]
    fn partial_trace_is_linear_and_trace_preserving(x in op4(), y in op4(), al in complex(2.0), be in complex(2.0)) {
        for s in [Subsystem::A, Subsystem::B] {
            let lhs = partial_trace(&(x * al + y * be), s);
            let rhs = partial_trace(&x, s) * al + partial_trace(&y, s) * be;
            prop_assert!((lhs - rhs).norm() < 1e-12);
            prop_assert!((partial_trace(&x, s).trace() - trace4(&x)).norm() < 1e-12);
        }
    }

    #[test]
    fn orthonormalized_gram_is_identity(v in proptest::collection::vec(op4(), 1..8)) {
        let q = hs_orthonormalize(&v).unwrap();
        for (i, a) in q.iter().enumerate() {
            for (j, b) in q.iter().enumerate() {
                let want = if i == j { 1.0 } else { 0.0 };
                prop_assert!((hs_inner(a, b) - c64(want, 0.0)).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn hamiltonian_commutes_with_swap(e0 in -5.0..5.0f64, e1 in -5.0..5.0f64) {
        prop_assume!((e0 - e1).abs() > 1e-3);
        let h = qsync::operators::TwoQubitHamiltonian::new(e0, e1).unwrap();
        prop_assert_eq!(commutator(h.matrix(), &swap()).norm(), 0.0);
    }

    #[test]
    fn constructed_operators_are_normal(spec in any_spec()) {
        let op = LindbladOp::from_spec(&spec).unwrap();
        let l = op.matrix();
        prop_assert!(normality_residual(l) < 1e-10 * (1.0 + l.norm_squared()));
    }

    #[test]
    fn delta_attractors_obey_locking(spec in any_spec()) {
        let op = LindbladOp::from_spec(&spec).unwrap();
        prop_assert!(enforces(&op).unwrap().enforces_phase_locking);
        let gen = build_generator(&h(), &[op]).unwrap();
        let space = attractor_space_eig(&gen, DEFAULT_EPS).unwrap();
        for x in space.block(FrequencyTag::PlusDelta) {
            let d = partial_trace(&x.matrix, Subsystem::A) - partial_trace(&x.matrix, Subsystem::B) * cis(spec.phi);
            prop_assert!(d.norm() < 1e-8, "locking defect {}", d.norm());
        }
    }

    #[test]
    fn structure_attractors_satisfy_commutant_conditions(spec in any_spec()) {
        let op = LindbladOp::from_spec(&spec).unwrap();
        let l = *op.matrix();
        let space = attractor_space_structure(&h(), &[op], DEFAULT_EPS).unwrap();
        prop_assert!(space.dimension() <= 10);
        for x in space.basis() {
            prop_assert!(commutator(&l, &x.matrix).norm() < 1e-8);
            prop_assert!(commutator(&l.adjoint(), &x.matrix).norm() < 1e-8);
            let heig = commutator(h().matrix(), &x.matrix) - x.matrix * c64(x.omega, 0.0);
            prop_assert!(heig.norm() < 1e-8);
        }
    }

    #[test]
    fn scaling_leaves_attractors_unchanged(spec in any_spec(), s in 0.2..5.0f64) {
        let op = LindbladOp::from_spec(&spec).unwrap();
        let a = attractor_space_structure(&h(), std::slice::from_ref(&op), DEFAULT_EPS).unwrap();
        let b = attractor_space_structure(&h(), &[op.scaled(c64(s, 0.0))], DEFAULT_EPS).unwrap();
        let ang = principal_angles(&a.matrices(), &b.matrices()).expect("same dimension");
        prop_assert!(ang.first().copied().unwrap_or(0.0) < 1e-7);
    }

    #[test]
    fn global_phase_leaves_generator_unchanged(spec in any_spec(), nu in 0.0..TAU) {
        let op = LindbladOp::from_spec(&spec).unwrap();
        let g1 = build_generator(&h(), std::slice::from_ref(&op)).unwrap();
        let g2 = build_generator(&h(), &[op.scaled(cis(nu))]).unwrap();
        prop_assert!((g1.matrix() - g2.matrix()).norm() < 1e-12 * (1.0 + g1.matrix().norm()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn classify_round_trip_l1(spec in l1_l2(ClassTag::L1)) {
        assert_round_trip(&spec)?;
    }

    #[test]
    fn classify_round_trip_l2(spec in l1_l2(ClassTag::L2)) {
        assert_round_trip(&spec)?;
    }

    #[test]
    fn classify_round_trip_ls(spec in ls()) {
        assert_round_trip(&spec)?;
    }

    #[test]
    fn classify_round_trip_ltheta(spec in ltheta()) {
        assert_round_trip(&spec)?;
    }
}

#[test]
fn concurrence_formulas_agree() {
    let mut r = rng(11);
    for _ in 0..1000 {
        let phi = r.random_range(0.0..TAU);
        let k = haar_ket(&mut r);
        let x = [k[0], k[1], k[2], k[3]];
        let rho = DensityOperator::from_pure(&ket_from_phase_locking(x, phi)).unwrap();
        assert!((concurrence_of(rho.matrix()) - concurrence_pure(x, phi)).abs() < 1e-9);
    }
}

#[test]
fn concurrence_invariant_under_local_unitaries() {
    let mut r = rng(12);
    for _ in 0..100 {
        let k = haar_ket(&mut r);
        let u = haar_unitary(&mut r);
        let mixed = (k * k.adjoint()) * c64(0.7, 0.0)
            + u * Op4::from_diagonal_element(c64(0.3, 0.0)) * u.adjoint() * c64(0.25, 0.0);
        let (ua, ub) = (local_unitary(&mut r), local_unitary(&mut r));
        let w = kron2(&ua, &ub);
        let moved = w * mixed * w.adjoint();
        assert!((concurrence_of(&mixed) - concurrence_of(&moved)).abs() < 1e-9);
    }
}

fn local_unitary(r: &mut impl Rng) -> Op2 {
    let m = Op2::from_fn(|_, _| c64(r.random_range(-1.0..1.0), r.random_range(-1.0..1.0)));
    m.qr().q()
}

#[test]
fn residual_does_not_grow_after_transient() {
    let mut r = rng(13);
    for v in Variant::ALL {
        let spec = random_spec(v, r.random_range(0.0..TAU), &mut r);
        let op = LindbladOp::from_spec(&spec).unwrap();
        let gen = build_generator(&h(), &[op]).unwrap();
        let gap = spectral_gap(&gen, DEFAULT_EPS);
        let period = TAU / h().delta_e();
        let residual = |rho: &Op4| {
            let (a, b) = (partial_trace(rho, Subsystem::B), partial_trace(rho, Subsystem::A));
            (b[(0, 1)] - a[(0, 1)] * cis(spec.phi)).norm() * 2f64.sqrt()
        };
        let rho0 = DensityOperator::from_pure(&haar_ket(&mut r)).unwrap();
        let t = 20.0 / gap;
        let r1 = residual(&gen.propagate(rho0.matrix(), t));
        let r2 = residual(&gen.propagate(rho0.matrix(), t + period));
        assert!(r2 <= r1 + 1e-12, "{}: {r1:e} -> {r2:e}", v.name());
    }
}

#[test]
fn constants_of_motion_match_dimension() {
    for (name, spec) in mechanism_presets() {
        let gen = build_generator(&h(), &[LindbladOp::from_spec(&spec).unwrap()]).unwrap();
        let space = attractor_space_eig(&gen, DEFAULT_EPS).unwrap();
        assert_eq!(constants_of_motion(&space).unwrap().len(), space.dimension(), "{name}");
    }
}
