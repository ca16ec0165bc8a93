//! Catalogue of phase-locking Lindblad operators.
//!
//! Four classes, each tied to one attractor in `X_dE`:
//!
//! | class    | attractor                                   | block structure             |
//! |----------|---------------------------------------------|-----------------------------|
//! | `L1`     | `|00><01| + e^{-i phi}|00><10|`             | `c, c, M` on `00, psi1, psi2, 11` |
//! | `L2`     | `|01><11| + e^{i phi}|10><11|`              | `M, c, c` on `00, psi2, psi1, 11` |
//! | `Ls`     | both of the above                           | `j I + k_s SWAP_phi`        |
//! | `Ltheta` | [`x_theta`]                                 | `M (+) M'` in the `V_theta` frame |
//!
//! `M` is the normal 2x2 matrix of [`normal_2x2`].

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, TAU};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::attractors::{delta_locking, LockingStatus};
use crate::error::{Error, Result};
use crate::operators::{
    c64, cis, normal_2x2, normality_residual, phase_locking_basis, unit, wrap_phase, NormalParams2x2, Op2, Op4, C64,
    STRUCTURAL_TOL,
};

/// Relative threshold for the `!=` tests in the enforcement conditions.
pub const CONDITION_TOL: f64 = 1e-9;
const BORDERLINE_LO: f64 = 1e-12;
const BORDERLINE_HI: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ClassTag {
    L1,
    L2,
    Ls,
    Ltheta,
}

impl fmt::Display for ClassTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ClassTag::L1 => "L1",
            ClassTag::L2 => "L2",
            ClassTag::Ls => "Ls",
            ClassTag::Ltheta => "Ltheta",
        };
        f.write_str(s)
    }
}

mod pair {
    use super::C64;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(z: &C64, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq([z.re, z.im])
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<C64, D::Error> {
        let [re, im] = <[f64; 2]>::deserialize(d)?;
        Ok(C64::new(re, im))
    }
}

/// Parameter record for one catalogue operator. Fields a class does not use
/// are ignored by its constructor.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MechanismSpec {
    pub class: ClassTag,
    #[serde(default)]
    pub phi: f64,
    #[serde(default, with = "pair")]
    pub a: C64,
    #[serde(default, with = "pair")]
    pub b: C64,
    #[serde(default)]
    pub c: f64,
    #[serde(default)]
    pub k: f64,
    #[serde(default)]
    pub m: f64,
    #[serde(default)]
    pub theta: f64,
    #[serde(default, with = "pair")]
    pub j: C64,
    #[serde(default, with = "pair")]
    pub ks: C64,
}

impl MechanismSpec {
    fn blank(class: ClassTag, phi: f64) -> Self {
        let z = C64::new(0.0, 0.0);
        Self { class, phi, a: z, b: z, c: 0.0, k: 0.0, m: 0.0, theta: 0.0, j: z, ks: z }
    }

    pub fn l1(phi: f64, a: C64, b: C64, c: f64, k: f64, m: f64) -> Self {
        Self { a, b, c, k, m, ..Self::blank(ClassTag::L1, phi) }
    }

    pub fn l2(phi: f64, a: C64, b: C64, c: f64, k: f64, m: f64) -> Self {
        Self { a, b, c, k, m, ..Self::blank(ClassTag::L2, phi) }
    }

    pub fn ls(phi: f64, j: C64, ks: C64) -> Self {
        Self { j, ks, ..Self::blank(ClassTag::Ls, phi) }
    }

    pub fn ltheta(phi: f64, theta: f64, a: C64, b: C64, k: f64, m: f64) -> Self {
        Self { a, b, k, m, theta, ..Self::blank(ClassTag::Ltheta, phi) }
    }

    fn block(&self) -> NormalParams2x2 {
        NormalParams2x2 { a: self.a, b: self.b, k: self.k, m: self.m }
    }

    /// Copy with `j = 0` for `Ls`, whose identity part does not change the generator.
    pub fn canonical(&self) -> Self {
        let mut s = *self;
        s.phi = wrap_phase(s.phi);
        if s.class == ClassTag::Ls {
            s.j = C64::new(0.0, 0.0);
        }
        s
    }
}

/// A normal Lindblad operator, optionally remembering the catalogue entry it came from.
#[derive(Debug, Clone, PartialEq)]
pub struct LindbladOp {
    matrix: Op4,
    spec: Option<MechanismSpec>,
}

impl LindbladOp {
    pub fn new(matrix: Op4) -> Result<Self> {
        Self::with_tol(matrix, STRUCTURAL_TOL)
    }

    pub fn with_tol(matrix: Op4, tol: f64) -> Result<Self> {
        if matrix.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidParam("Lindblad operator has non-finite entries".into()));
        }
        let residual = normality_residual(&matrix);
        if residual > tol * (1.0 + matrix.norm_squared()) {
            return Err(Error::NotNormal { residual });
        }
        Ok(Self { matrix, spec: None })
    }

    pub fn from_spec(spec: &MechanismSpec) -> Result<Self> {
        match spec.class {
            ClassTag::L1 => make_l1(spec),
            ClassTag::L2 => make_l2(spec),
            ClassTag::Ls => make_ls(spec.j, spec.ks, spec.phi),
            ClassTag::Ltheta => make_ltheta(spec),
        }
    }

    pub fn matrix(&self) -> &Op4 {
        &self.matrix
    }

    pub fn spec(&self) -> Option<&MechanismSpec> {
        self.spec.as_ref()
    }

    pub fn phi(&self) -> Option<f64> {
        self.spec.map(|s| s.phi)
    }

    pub fn scaled(&self, z: C64) -> Self {
        Self { matrix: self.matrix * z, spec: None }
    }
}

fn finite(spec: &MechanismSpec) -> Result<()> {
    let vals = [
        spec.phi, spec.a.re, spec.a.im, spec.b.re, spec.b.im, spec.c, spec.k, spec.m, spec.theta, spec.j.re, spec.j.im,
        spec.ks.re, spec.ks.im,
    ];
    if vals.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(Error::InvalidParam("non-finite mechanism parameter".into()))
    }
}

fn expect_class(spec: &MechanismSpec, class: ClassTag) -> Result<()> {
    if spec.class != class {
        return Err(Error::InvalidParam(format!("expected class {class}, got {}", spec.class)));
    }
    finite(spec)
}

fn block_diag(m1: &Op2, m2: &Op2) -> Op4 {
    let mut d = Op4::zeros();
    d.fixed_view_mut::<2, 2>(0, 0).copy_from(m1);
    d.fixed_view_mut::<2, 2>(2, 2).copy_from(m2);
    d
}

fn build(spec: &MechanismSpec, t: &Op4, inner: &Op4) -> Result<LindbladOp> {
    let mut op = LindbladOp::new(t * inner * t.adjoint())?;
    let mut s = *spec;
    s.phi = wrap_phase(s.phi);
    op.spec = Some(s);
    Ok(op)
}

/// Change of basis with columns `|00>, psi2, psi1, |11>`.
pub fn l2_basis(phi: f64) -> Op4 {
    let t = phase_locking_basis(phi);
    let mut out = t;
    out.set_column(1, &t.column(2));
    out.set_column(2, &t.column(1));
    out
}

/// Change of basis of the `Ltheta` family.
#[rustfmt::skip]
pub fn v_theta(theta: f64, phi: f64) -> Op4 {
    let (s, c) = theta.sin_cos();
    let z = C64::new(0.0, 0.0);
    let one = C64::new(1.0, 0.0);
    let i = C64::new(0.0, 1.0);
    Op4::new(
        one, z, z, z,
        z, i * cis(-phi) * s, c64(c, 0.0), z,
        z, c64(-c, 0.0), -i * cis(phi) * s, z,
        z, z, z, one,
    )
}

/// `|00><01| + e^{-i phi}|00><10|`
pub fn x1(phi: f64) -> Op4 {
    unit(0, 1) + unit(0, 2) * cis(-phi)
}

/// `|01><11| + e^{i phi}|10><11|`
pub fn x2(phi: f64) -> Op4 {
    unit(1, 3) + unit(2, 3) * cis(phi)
}

/// Class attractor of `Ltheta`, normalized so that `X_01 = cos(theta)`.
pub fn x_theta(theta: f64, phi: f64) -> Op4 {
    let alpha = c64(theta.cos(), 0.0);
    let beta = C64::new(0.0, 1.0) * cis(-phi) * theta.sin();
    let s = cis(-2.0 * theta);
    unit(0, 1) * alpha + unit(0, 2) * beta + unit(1, 3) * (s * beta) - unit(2, 3) * (s * alpha)
}

/// `|00><00| + e^{-i phi}|01><10| + e^{i phi}|10><01| + |11><11|`
pub fn swap_phi(phi: f64) -> Op4 {
    unit(0, 0) + unit(1, 2) * cis(-phi) + unit(2, 1) * cis(phi) + unit(3, 3)
}

pub fn make_l1(spec: &MechanismSpec) -> Result<LindbladOp> {
    expect_class(spec, ClassTag::L1)?;
    let c = c64(spec.c, 0.0);
    let inner = block_diag(&Op2::new(c, C64::new(0.0, 0.0), C64::new(0.0, 0.0), c), &normal_2x2(&spec.block()));
    build(spec, &phase_locking_basis(spec.phi), &inner)
}

pub fn make_l2(spec: &MechanismSpec) -> Result<LindbladOp> {
    expect_class(spec, ClassTag::L2)?;
    let c = c64(spec.c, 0.0);
    let inner = block_diag(&normal_2x2(&spec.block()), &Op2::new(c, C64::new(0.0, 0.0), C64::new(0.0, 0.0), c));
    build(spec, &l2_basis(spec.phi), &inner)
}

pub fn make_ls(j: C64, ks: C64, phi: f64) -> Result<LindbladOp> {
    let spec = MechanismSpec::ls(phi, j, ks);
    finite(&spec)?;
    if ks.norm() == 0.0 {
        return Err(Error::InvalidParam("k_s must be nonzero".into()));
    }
    let mut op = LindbladOp::new(Op4::identity() * j + swap_phi(phi) * ks)?;
    op.spec = Some(MechanismSpec { phi: wrap_phase(phi), ..spec });
    Ok(op)
}

pub fn make_ltheta(spec: &MechanismSpec) -> Result<LindbladOp> {
    expect_class(spec, ClassTag::Ltheta)?;
    let th = spec.theta;
    if th == 0.0 || th.abs() >= FRAC_PI_2 {
        return Err(Error::InvalidParam(format!("theta = {th} outside (-pi/2, 0) u (0, pi/2)")));
    }
    let m1 = normal_2x2(&spec.block());
    let m2 = normal_2x2(&NormalParams2x2 { b: spec.b * cis(-2.0 * th), ..spec.block() });
    build(spec, &v_theta(th, spec.phi), &block_diag(&m1, &m2))
}

/// Which condition decided the verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Reason {
    /// Some operator has `b != 0`.
    OffDiagonalCoupling,
    /// `a != c` (L1) or `a + m e^{ik} != c` (L2) together with `m != 0`,
    /// possibly met by different operators.
    DoubleCondition,
    /// An operator of the `Ls` form is present.
    SwapClass,
    NoConditionMet,
    /// Operators from incompatible families.
    MixedClasses,
    PhaseMismatch,
    ThetaMismatch,
    Empty,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnforcementVerdict {
    pub enforces_phase_locking: bool,
    pub enforces_complete_sync: bool,
    pub reason: Reason,
    /// Some `!=` test was decided by a relative gap in `(1e-12, 1e-6)`.
    pub borderline: bool,
}

impl EnforcementVerdict {
    fn no(reason: Reason, borderline: bool) -> Self {
        Self { enforces_phase_locking: false, enforces_complete_sync: false, reason, borderline }
    }
}

#[derive(Default)]
struct Cmp {
    borderline: bool,
}

impl Cmp {
    fn neq(&mut self, x: C64, y: C64) -> bool {
        let rel = (x - y).norm() / 1f64.max(x.norm()).max(y.norm());
        if rel > BORDERLINE_LO && rel < BORDERLINE_HI {
            self.borderline = true;
        }
        rel > CONDITION_TOL
    }

    fn nonzero(&mut self, x: C64) -> bool {
        self.neq(x, C64::new(0.0, 0.0))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Family {
    Scalar,
    L1,
    L2,
    Both,
    Theta(f64),
}

struct Flags {
    family: Family,
    b: bool,
    /// `a != c` for L1, `a + m e^{ik} != c` for L2
    split: bool,
    m: bool,
}

fn flags(s: &MechanismSpec, cmp: &mut Cmp) -> Flags {
    let a = s.a;
    let d = s.a + cis(s.k) * s.m;
    let c = c64(s.c, 0.0);
    let b = cmp.nonzero(s.b);
    let m = cmp.nonzero(c64(s.m, 0.0));
    match s.class {
        ClassTag::L1 => {
            let split = cmp.neq(a, c);
            let family = if b {
                Family::L1
            } else if !split && !m {
                Family::Scalar
            } else if !cmp.neq(d, c) {
                Family::Both
            } else {
                Family::L1
            };
            Flags { family, b, split, m }
        }
        ClassTag::L2 => {
            let split = cmp.neq(d, c);
            let family = if b {
                Family::L2
            } else if !split && !m {
                Family::Scalar
            } else if !cmp.neq(a, c) {
                Family::Both
            } else {
                Family::L2
            };
            Flags { family, b, split, m }
        }
        ClassTag::Ls => Flags { family: Family::Both, b: false, split: false, m: false },
        ClassTag::Ltheta => {
            let family = if !b && !m { Family::Scalar } else { Family::Theta(s.theta) };
            Flags { family, b, split: false, m }
        }
    }
}

fn is_quarter(theta: f64) -> bool {
    (theta.abs() - FRAC_PI_4).abs() < CONDITION_TOL
}

fn same_phase(p: f64, q: f64) -> bool {
    let d = (p - q).rem_euclid(TAU);
    d.min(TAU - d) < CONDITION_TOL
}

/// Enforcement verdict for a single catalogue operator.
pub fn enforces(op: &LindbladOp) -> Result<EnforcementVerdict> {
    validate_combination(std::slice::from_ref(op))
}

/// Enforcement verdict for a generator with several catalogue operators.
pub fn validate_combination(ops: &[LindbladOp]) -> Result<EnforcementVerdict> {
    let specs: Vec<MechanismSpec> = ops.iter().map(|o| o.spec.ok_or(Error::NoSpec)).collect::<Result<_>>()?;
    if specs.is_empty() {
        return Ok(EnforcementVerdict::no(Reason::Empty, false));
    }
    let mut cmp = Cmp::default();
    let fl: Vec<Flags> = specs.iter().map(|s| flags(s, &mut cmp)).collect();
    let active: Vec<usize> = (0..specs.len()).filter(|&i| fl[i].family != Family::Scalar).collect();
    if active.is_empty() {
        return Ok(EnforcementVerdict::no(Reason::NoConditionMet, cmp.borderline));
    }
    let phi0 = specs[active[0]].phi;
    if active.iter().any(|&i| !same_phase(specs[i].phi, phi0)) {
        return Ok(EnforcementVerdict::no(Reason::PhaseMismatch, cmp.borderline));
    }

    let thetas: Vec<f64> = active
        .iter()
        .filter_map(|&i| match fl[i].family {
            Family::Theta(t) => Some(t),
            _ => None,
        })
        .collect();
    if !thetas.is_empty() {
        if thetas.len() != active.len() {
            return Ok(EnforcementVerdict::no(Reason::MixedClasses, cmp.borderline));
        }
        if thetas.iter().any(|t| (t - thetas[0]).abs() > CONDITION_TOL) {
            return Ok(EnforcementVerdict::no(Reason::ThetaMismatch, cmp.borderline));
        }
        if active.iter().any(|&i| fl[i].b) {
            return Ok(EnforcementVerdict {
                enforces_phase_locking: true,
                enforces_complete_sync: is_quarter(thetas[0]),
                reason: Reason::OffDiagonalCoupling,
                borderline: cmp.borderline,
            });
        }
        return Ok(EnforcementVerdict::no(Reason::NoConditionMet, cmp.borderline));
    }

    let has = |f: Family| active.iter().any(|&i| fl[i].family == f);
    if has(Family::L1) && has(Family::L2) {
        return Ok(EnforcementVerdict::no(Reason::MixedClasses, cmp.borderline));
    }
    let yes = |reason| {
        Ok(EnforcementVerdict {
            enforces_phase_locking: true,
            enforces_complete_sync: true,
            reason,
            borderline: cmp.borderline,
        })
    };
    if has(Family::Both) {
        return yes(Reason::SwapClass);
    }
    if active.iter().any(|&i| fl[i].b) {
        return yes(Reason::OffDiagonalCoupling);
    }
    if active.iter().any(|&i| fl[i].split) && active.iter().any(|&i| fl[i].m) {
        return yes(Reason::DoubleCondition);
    }
    Ok(EnforcementVerdict::no(Reason::NoConditionMet, cmp.borderline))
}

fn commutes(l: &Op4, x: &Op4, tol: f64) -> bool {
    (l * x - x * l).norm() <= tol * (1.0 + l.norm()) * x.norm()
}

fn gauge_from(candidates: &[C64], scale: f64) -> C64 {
    for z in candidates {
        if z.norm() > 1e-9 * scale {
            return z.conj() / z.norm();
        }
    }
    C64::new(1.0, 0.0)
}

fn sub2(m: &Op4, r: usize) -> Op2 {
    m.fixed_view::<2, 2>(r, r).into_owned()
}

/// Recover the catalogue entry of a phase-locking-enforcing operator, up to
/// an overall phase. Returns `None` for operators outside the catalogue or
/// for commuting operators that do not enforce phase-locking.
pub fn classify(l: &Op4, tol: f64) -> Result<Option<MechanismSpec>> {
    let residual = normality_residual(l);
    if residual > tol * (1.0 + l.norm_squared()) {
        return Err(Error::NotNormal { residual });
    }
    let scale = l.norm().max(1e-300);
    let lock_tol = 1e-7;
    let phi = match delta_locking(&[*l], lock_tol) {
        LockingStatus::Locked { phi, .. } => phi,
        _ => return Ok(None),
    };
    let ctol = 1e-8;
    let c1 = commutes(l, &x1(phi), ctol);
    let c2 = commutes(l, &x2(phi), ctol);

    let spec = if c1 && c2 {
        let lt = phase_locking_basis(phi).adjoint() * l * phase_locking_basis(phi);
        let (c, d) = (lt[(0, 0)], lt[(2, 2)]);
        let ks = (c - d) * 0.5;
        let g = gauge_from(&[ks], scale);
        MechanismSpec::ls(phi, (c + d) * 0.5 * g, ks * g)
    } else if c1 {
        let lt = phase_locking_basis(phi).adjoint() * l * phase_locking_basis(phi);
        let blk = sub2(&lt, 2);
        let g = gauge_from(&[lt[(0, 0)], blk[(0, 0)], blk[(0, 1)]], scale);
        let p = NormalParams2x2::from_matrix(&(blk * g), tol.max(1e-9));
        MechanismSpec::l1(phi, p.a, p.b, (lt[(0, 0)] * g).re, p.k, p.m)
    } else if c2 {
        let t = l2_basis(phi);
        let lt = t.adjoint() * l * t;
        let blk = sub2(&lt, 0);
        let g = gauge_from(&[lt[(3, 3)], blk[(0, 0)], blk[(0, 1)]], scale);
        let p = NormalParams2x2::from_matrix(&(blk * g), tol.max(1e-9));
        MechanismSpec::l2(phi, p.a, p.b, (lt[(3, 3)] * g).re, p.k, p.m)
    } else {
        let ks = crate::attractors::commutant_in(
            &[*l],
            &crate::attractors::FrequencyTag::PlusDelta.units(),
            crate::attractors::NULLSPACE_TOL,
        );
        if ks.len() != 1 {
            return Ok(None);
        }
        let x = ks[0];
        let alpha = x[(0, 1)];
        if alpha.norm() < 1e-9 {
            return Ok(None);
        }
        let ph = alpha.conj() / alpha.norm();
        let n = (alpha.norm_sqr() + x[(0, 2)].norm_sqr()).sqrt();
        let beta = x[(0, 2)] * ph / n;
        let sin_t = (C64::new(0.0, -1.0) * cis(phi) * beta).re;
        let theta = sin_t.atan2(alpha.norm() / n);
        if theta == 0.0 || theta.abs() >= FRAC_PI_2 {
            return Ok(None);
        }
        let v = v_theta(theta, phi);
        let lt = v.adjoint() * l * v;
        let blk = sub2(&lt, 0);
        let g = gauge_from(&[blk[(0, 0)], blk[(0, 1)]], scale);
        let p = NormalParams2x2::from_matrix(&(blk * g), tol.max(1e-9));
        MechanismSpec::ltheta(phi, theta, p.a, p.b, p.k, p.m)
    };

    let rebuilt = match LindbladOp::from_spec(&spec) {
        Ok(op) => op.matrix,
        Err(_) => return Ok(None),
    };
    // The gauge factor is whatever unit phase maps `l` onto `rebuilt`.
    let overlap: C64 = l.iter().zip(rebuilt.iter()).map(|(x, y)| x.conj() * y).sum();
    let g = if overlap.norm() > 0.0 { overlap / overlap.norm() } else { C64::new(1.0, 0.0) };
    if (rebuilt - l * g).norm() > 1e-7 * (1.0 + scale) {
        return Ok(None);
    }
    Ok(Some(spec))
}
