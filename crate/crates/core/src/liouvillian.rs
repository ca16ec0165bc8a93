//! The GKSL generator
//! `L(rho) = -i[H, rho] + sum_j (L_j rho L_j^dag - 1/2 {L_j^dag L_j, rho})`
//! as a 16x16 superoperator, plus time integration.
//!
//! Vectorization stacks columns: `vec(X)[4 c + r] = X[r, c]`, so that
//! `vec(A X B) = (B^T (x) A) vec(X)`.

use std::io::Write;

use crate::error::{Error, Result};
use crate::mechanisms::LindbladOp;
use crate::operators::{c64, devectorize, vectorize, DensityOperator, Op4, SuperOp, TwoQubitHamiltonian};

/// `P (x) Q` for 4x4 factors.
pub fn kron4(p: &Op4, q: &Op4) -> SuperOp {
    SuperOp::from_fn(|row, col| p[(row / 4, col / 4)] * q[(row % 4, col % 4)])
}

#[derive(Debug, Clone)]
pub struct Liouvillian {
    matrix: SuperOp,
    hamiltonian: TwoQubitHamiltonian,
    lindblads: Vec<LindbladOp>,
    norm2: f64,
}

pub fn build_generator(h: &TwoQubitHamiltonian, ops: &[LindbladOp]) -> Result<Liouvillian> {
    let id = Op4::identity();
    let hm = h.matrix();
    let i = c64(0.0, 1.0);
    let mut m = (kron4(&id, hm) - kron4(&hm.transpose(), &id)) * (-i);
    for op in ops {
        let l = op.matrix();
        let ldl = l.adjoint() * l;
        m += kron4(&l.conjugate(), l) - (kron4(&id, &ldl) + kron4(&ldl.transpose(), &id)) * c64(0.5, 0.0);
    }
    let norm2 = m.singular_values().max();
    Ok(Liouvillian { matrix: m, hamiltonian: h.clone(), lindblads: ops.to_vec(), norm2 })
}

/// Samples of a state trajectory.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<DensityOperator>,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn last(&self) -> &DensityOperator {
        self.states.last().expect("trajectory holds the initial state")
    }

    /// CSV with `t`, `re_rc`/`im_rc` for the 16 entries in row-major order,
    /// then the given extra columns.
    pub fn write_csv<W: Write>(&self, mut w: W, extra: &[(&str, Vec<f64>)]) -> Result<()> {
        let mut header = vec!["t".to_string()];
        for r in 0..4 {
            for c in 0..4 {
                header.push(format!("re_{r}{c}"));
                header.push(format!("im_{r}{c}"));
            }
        }
        for (name, col) in extra {
            if col.len() != self.len() {
                return Err(Error::InvalidParam(format!(
                    "column {name} has {} rows, expected {}",
                    col.len(),
                    self.len()
                )));
            }
            header.push((*name).to_string());
        }
        writeln!(w, "{}", header.join(","))?;
        for (n, (t, s)) in self.times.iter().zip(&self.states).enumerate() {
            let mut row = vec![fmt_num(*t)];
            for r in 0..4 {
                for c in 0..4 {
                    let z = s.matrix()[(r, c)];
                    row.push(fmt_num(z.re));
                    row.push(fmt_num(z.im));
                }
            }
            for (_, col) in extra {
                row.push(fmt_num(col[n]));
            }
            writeln!(w, "{}", row.join(","))?;
        }
        Ok(())
    }
}

/// 17 significant digits.
pub fn fmt_num(x: f64) -> String {
    format!("{x:.16e}")
}

fn clean(rho: &Op4) -> Op4 {
    let h = (rho + rho.adjoint()) * c64(0.5, 0.0);
    let tr = h.trace().re;
    h / c64(tr, 0.0)
}

impl Liouvillian {
    pub fn matrix(&self) -> &SuperOp {
        &self.matrix
    }

    pub fn hamiltonian(&self) -> &TwoQubitHamiltonian {
        &self.hamiltonian
    }

    pub fn lindblads(&self) -> &[LindbladOp] {
        &self.lindblads
    }

    /// Spectral norm `||L||_2`.
    pub fn norm2(&self) -> f64 {
        self.norm2
    }

    pub fn default_dt(&self) -> f64 {
        0.01f64.min(0.1 / self.norm2.max(1e-300))
    }

    /// Direct evaluation of the master-equation right-hand side.
    pub fn apply(&self, rho: &Op4) -> Op4 {
        let h = self.hamiltonian.matrix();
        let mut out = (h * rho - rho * h) * c64(0.0, -1.0);
        for op in &self.lindblads {
            let l = op.matrix();
            let ld = l.adjoint();
            let ldl = ld * l;
            out += l * rho * ld - (ldl * rho + rho * ldl) * c64(0.5, 0.0);
        }
        out
    }

    /// Superoperator route, `devec(L vec(rho))`.
    pub fn apply_vectorized(&self, rho: &Op4) -> Op4 {
        devectorize(&(self.matrix * vectorize(rho)))
    }

    /// `exp(t L)`
    pub fn propagator(&self, t: f64) -> SuperOp {
        (self.matrix * c64(t, 0.0)).exp()
    }

    pub fn propagate(&self, rho: &Op4, t: f64) -> Op4 {
        devectorize(&(self.propagator(t) * vectorize(rho)))
    }

    fn rk4_step(&self, rho: &Op4, dt: f64) -> Op4 {
        let h = c64(dt, 0.0);
        let half = c64(0.5 * dt, 0.0);
        let k1 = self.apply(rho);
        let k2 = self.apply(&(rho + k1 * half));
        let k3 = self.apply(&(rho + k2 * half));
        let k4 = self.apply(&(rho + k3 * h));
        clean(&(rho + (k1 + k2 * c64(2.0, 0.0) + k3 * c64(2.0, 0.0) + k4) * c64(dt / 6.0, 0.0)))
    }

    fn check_step(&self, t_final: f64, dt: f64) -> Result<()> {
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(Error::InvalidParam(format!("dt = {dt} must be positive")));
        }
        if !(t_final >= 0.0 && t_final.is_finite()) {
            return Err(Error::InvalidParam(format!("t_final = {t_final} must be non-negative")));
        }
        let product = dt * self.norm2;
        if product > 1.0 {
            return Err(Error::StepTooLarge { product });
        }
        Ok(())
    }

    fn integrate<F: FnMut(f64, &Op4)>(&self, rho0: &Op4, t_final: f64, dt: f64, mut visit: F) -> Op4 {
        let n = (t_final / dt).floor() as usize;
        let mut rho = *rho0;
        visit(0.0, &rho);
        for i in 1..=n {
            rho = self.rk4_step(&rho, dt);
            visit(i as f64 * dt, &rho);
        }
        let rest = t_final - n as f64 * dt;
        if rest > 1e-12 * dt.max(t_final) {
            rho = self.rk4_step(&rho, rest);
            visit(t_final, &rho);
        }
        rho
    }

    /// Fixed-step RK4 with every step stored.
    pub fn evolve(&self, rho0: &DensityOperator, t_final: f64, dt: f64) -> Result<Trajectory> {
        self.evolve_sampled(rho0, t_final, dt, 1)
    }

    /// Fixed-step RK4 keeping every `stride`-th step plus the endpoint.
    pub fn evolve_sampled(&self, rho0: &DensityOperator, t_final: f64, dt: f64, stride: usize) -> Result<Trajectory> {
        self.check_step(t_final, dt)?;
        let stride = stride.max(1);
        let mut times = Vec::new();
        let mut states = Vec::new();
        let mut count = 0usize;
        let mut last = (0.0, *rho0.matrix());
        self.integrate(rho0.matrix(), t_final, dt, |t, rho| {
            if count.is_multiple_of(stride) {
                times.push(t);
                states.push(DensityOperator::from_matrix_unchecked(*rho));
            }
            count += 1;
            last = (t, *rho);
        });
        if times.last() != Some(&last.0) {
            times.push(last.0);
            states.push(DensityOperator::from_matrix_unchecked(last.1));
        }
        Ok(Trajectory { times, states })
    }

    /// Endpoint of the RK4 integration only.
    pub fn evolve_to(&self, rho0: &DensityOperator, t_final: f64, dt: f64) -> Result<Op4> {
        self.check_step(t_final, dt)?;
        Ok(self.integrate(rho0.matrix(), t_final, dt, |_, _| {}))
    }
}
