//! Configuration-driven scenario runs: JSON in, CSV/JSON artifacts out.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::fs::{self, OpenOptions};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::analysis::{concurrence_of, constants_of_motion, default_t_grid, sync_verdict, visibility, SyncReport};
use crate::attractors::{
    asymptotic_spectrum, asymptotic_state, attractor_space_eig, attractor_space_structure, principal_angles,
    spectral_gap, AttractorSpace, FrequencyTag, DEFAULT_EPS,
};
use crate::error::{Error, Result};
use crate::liouvillian::{build_generator, fmt_num, Liouvillian, Trajectory};
use crate::mechanisms::{validate_combination, EnforcementVerdict, LindbladOp, MechanismSpec};
use crate::operators::{
    c64, hs_distance2, ket_from_phase_locking, reduced_a, reduced_b, DensityOperator, Ket4, Op2, Op4,
    TwoQubitHamiltonian, C64, STATE_TOL,
};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HamiltonianConfig {
    #[serde(rename = "E0")]
    pub e0: f64,
    #[serde(rename = "E1")]
    pub e1: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AmplitudeBasis {
    #[default]
    Computational,
    /// `|00>, psi1, psi2, |11>` for the first mechanism's `phi`.
    PhaseLocking,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PureState {
    pub amplitudes: Vec<[f64; 2]>,
    #[serde(default)]
    pub basis: AmplitudeBasis,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum InitialState {
    Preset(String),
    /// Row-major rows of `[re, im]` pairs.
    Matrix(Vec<Vec<[f64; 2]>>),
    Pure(PureState),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputKind {
    Trajectory,
    Attractors,
    SyncReport,
    Concurrence,
    Distances,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub hamiltonian: HamiltonianConfig,
    pub mechanisms: Vec<MechanismSpec>,
    pub initial_state: InitialState,
    pub t_final: f64,
    /// Defaults to `min(0.01, 0.1 / ||L||_2)`.
    #[serde(default)]
    pub dt: Option<f64>,
    #[serde(default)]
    pub outputs: Vec<OutputKind>,
    /// Single-qubit reference for distance traces, 2x2 of `[re, im]`.
    #[serde(default)]
    pub reference_state: Option<Vec<Vec<[f64; 2]>>>,
    #[serde(default)]
    pub seed: u64,
}

impl ScenarioConfig {
    pub fn from_json_str(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)?;
        serde_json::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }

    fn phi(&self) -> f64 {
        self.mechanisms.first().map_or(0.0, |m| m.phi)
    }

    fn wants(&self, k: OutputKind) -> bool {
        self.outputs.contains(&k)
    }
}

fn matrix_from_pairs<const N: usize>(rows: &[Vec<[f64; 2]>], what: &str) -> Result<nalgebra::SMatrix<C64, N, N>> {
    if rows.len() != N || rows.iter().any(|r| r.len() != N) {
        return Err(Error::Config(format!("{what} must be {N}x{N}")));
    }
    Ok(nalgebra::SMatrix::from_fn(|r, c| {
        let [re, im] = rows[r][c];
        c64(re, im)
    }))
}

pub fn parse_matrix4(rows: &[Vec<[f64; 2]>]) -> Result<Op4> {
    matrix_from_pairs::<4>(rows, "matrix")
}

pub const STATE_PRESETS: &[(&str, &str)] = &[
    ("psi_in", "(1/25)(3|0> + 4|1>) (x) (3|0> - 4i|1>)"),
    ("bell_phi_plus", "(|00> + |11>)/sqrt(2)"),
    ("scenario1", "(|00> + psi1 + psi2)/sqrt(3)"),
    ("scenario2", "x1 = x4 = 1/sqrt(3), x2 = -i e^{i phi/2}/sqrt(3)"),
    ("scenario3", "x1 = x4 = 1/2, x2 = e^{-i phi/2}/sqrt(2)"),
    ("maximally_mixed", "I/4"),
    ("haar_random", "Haar-random pure state drawn from the config seed"),
];

/// Product state `(3|0> + 4|1>)/5 (x) (3|0> - 4i|1>)/5`.
pub fn psi_in() -> Ket4 {
    let a = [c64(3.0, 0.0), c64(4.0, 0.0)];
    let b = [c64(3.0, 0.0), c64(0.0, -4.0)];
    Ket4::new(a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]) / c64(25.0, 0.0)
}

pub fn haar_ket(rng: &mut impl rand::Rng) -> Ket4 {
    let mut v = Ket4::from_fn(|_, _| {
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        c64(re, im)
    });
    let n = v.norm();
    v /= c64(n, 0.0);
    v
}

/// Named initial state; `phi` feeds the phase-locking-basis presets.
pub fn preset_state(name: &str, phi: f64, seed: u64) -> Result<DensityOperator> {
    let ket = match name {
        "psi_in" => psi_in(),
        "bell_phi_plus" => Ket4::new(c64(FRAC_1_SQRT_2, 0.0), c64(0.0, 0.0), c64(0.0, 0.0), c64(FRAC_1_SQRT_2, 0.0)),
        "scenario1" | "scenario2" | "scenario3" => {
            let idx = name.as_bytes()[name.len() - 1] - b'0';
            return crate::analysis::scenario_state(idx as usize, phi)
                .ok_or_else(|| Error::Config(format!("unknown preset {name}")));
        }
        "maximally_mixed" => return Ok(DensityOperator::maximally_mixed()),
        "haar_random" => haar_ket(&mut ChaCha8Rng::seed_from_u64(seed)),
        _ => return Err(Error::Config(format!("unknown initial-state preset \"{name}\""))),
    };
    DensityOperator::from_pure(&ket)
}

/// Mechanism presets used by the bundled configs.
pub fn mechanism_presets() -> Vec<(&'static str, MechanismSpec)> {
    let a = c64(0.75, 1.0);
    let b = c64(5.0 / 7.0, 1.0);
    let z = c64(0.0, 0.0);
    vec![
        ("l1_antisync", MechanismSpec::l1(PI, a, b, 0.5, 0.3, 0.4)),
        ("l2_antisync", MechanismSpec::l2(PI, a, b, 0.5, 0.3, 0.4)),
        ("ltheta_antisync", MechanismSpec::ltheta(PI, PI / 6.0, a, b, 0.3, 0.4)),
        ("l1_uncoupled", MechanismSpec::l1(PI / 3.0, a, z, 0.5, 0.3, 0.4)),
        ("l1_sync", MechanismSpec::l1(0.0, a, b, 0.5, 0.3, 0.4)),
        ("swap", MechanismSpec::ls(0.0, z, c64(1.0, 0.0))),
    ]
}

/// `E0 = 4 pi / 15, E1 = 0`, the energy gap used by the presets.
pub const PRESET_HAMILTONIAN: HamiltonianConfig = HamiltonianConfig { e0: 4.0 * PI / 15.0, e1: 0.0 };

pub fn initial_state(cfg: &ScenarioConfig, tol: f64) -> Result<DensityOperator> {
    match &cfg.initial_state {
        InitialState::Preset(name) => preset_state(name, cfg.phi(), cfg.seed),
        InitialState::Matrix(rows) => DensityOperator::with_tol(parse_matrix4(rows)?, tol.max(STATE_TOL)),
        InitialState::Pure(p) => {
            if p.amplitudes.len() != 4 {
                return Err(Error::Config("pure.amplitudes needs 4 entries".into()));
            }
            let amps = [0, 1, 2, 3].map(|i| c64(p.amplitudes[i][0], p.amplitudes[i][1]));
            let ket = match p.basis {
                AmplitudeBasis::Computational => Ket4::from_column_slice(&amps),
                AmplitudeBasis::PhaseLocking => ket_from_phase_locking(amps, cfg.phi()),
            };
            DensityOperator::from_pure(&ket)
        }
    }
}

/// Generator, operators and Hamiltonian of a config.
pub struct Prepared {
    pub hamiltonian: TwoQubitHamiltonian,
    pub ops: Vec<LindbladOp>,
    pub generator: Liouvillian,
}

pub fn prepare(cfg: &ScenarioConfig) -> Result<Prepared> {
    let hamiltonian = TwoQubitHamiltonian::new(cfg.hamiltonian.e0, cfg.hamiltonian.e1)?;
    let ops = cfg.mechanisms.iter().map(LindbladOp::from_spec).collect::<Result<Vec<_>>>()?;
    let generator = build_generator(&hamiltonian, &ops)?;
    Ok(Prepared { hamiltonian, ops, generator })
}

#[derive(Debug, Clone, Serialize)]
pub struct AttractorSummary {
    pub dimension_eig: usize,
    pub dimension_structure: usize,
    pub max_principal_angle: Option<f64>,
    pub block_dimensions: Vec<(FrequencyTag, usize)>,
    pub asymptotic_spectrum_im: Vec<f64>,
    pub spectral_gap: f64,
    pub constants_of_motion: usize,
}

pub fn summarize_attractors(p: &Prepared) -> Result<(AttractorSummary, AttractorSpace, AttractorSpace)> {
    let eig = attractor_space_eig(&p.generator, DEFAULT_EPS)?;
    let st = attractor_space_structure(&p.hamiltonian, &p.ops, DEFAULT_EPS)?;
    let angles = principal_angles(&eig.matrices(), &st.matrices());
    let summary = AttractorSummary {
        dimension_eig: eig.dimension(),
        dimension_structure: st.dimension(),
        max_principal_angle: angles.map(|a| a.first().copied().unwrap_or(0.0)),
        block_dimensions: FrequencyTag::ALL.iter().map(|&t| (t, st.block_dimension(t))).collect(),
        asymptotic_spectrum_im: asymptotic_spectrum(&p.generator, DEFAULT_EPS)?.iter().map(|z| z.im).collect(),
        spectral_gap: spectral_gap(&p.generator, DEFAULT_EPS),
        constants_of_motion: constants_of_motion(&st)?.len(),
    };
    Ok((summary, eig, st))
}

#[derive(Debug, Clone, Serialize)]
struct RunReport {
    sync: SyncReport,
    phi_target: f64,
    enforcement: Option<EnforcementVerdict>,
    attractors: AttractorSummary,
    final_time: f64,
    steps: usize,
    dt: f64,
}

fn create(path: &Path, force: bool) -> Result<BufWriter<fs::File>> {
    let mut o = OpenOptions::new();
    o.write(true);
    if force {
        o.create(true).truncate(true);
    } else {
        o.create_new(true);
    }
    o.open(path).map(BufWriter::new).map_err(|e| {
        if e.kind() == std::io::ErrorKind::AlreadyExists {
            std::io::Error::new(e.kind(), format!("{} exists (use --force to overwrite)", path.display())).into()
        } else {
            e.into()
        }
    })
}

fn write_columns<W: Write>(mut w: W, t: &[f64], cols: &[(&str, Vec<f64>)]) -> Result<()> {
    let names: Vec<&str> = std::iter::once("t").chain(cols.iter().map(|c| c.0)).collect();
    writeln!(w, "{}", names.join(","))?;
    for (i, ti) in t.iter().enumerate() {
        let row: Vec<String> = std::iter::once(fmt_num(*ti)).chain(cols.iter().map(|c| fmt_num(c.1[i]))).collect();
        writeln!(w, "{}", row.join(","))?;
    }
    Ok(())
}

/// Explicit reference, or the first qubit's asymptotic state at `t = 0`.
fn reference(cfg: &ScenarioConfig, space: Option<&AttractorSpace>, rho0: &DensityOperator) -> Result<Op2> {
    match (&cfg.reference_state, space) {
        (Some(rows), _) => matrix_from_pairs::<2>(rows, "reference_state"),
        (None, Some(space)) => Ok(reduced_a(&asymptotic_state(space, rho0.matrix(), 0.0))),
        (None, None) => Err(Error::Config("distances need a reference_state or an attractor space".into())),
    }
}

/// Files written by [`run`].
#[derive(Debug, Clone)]
pub struct RunOutput {
    pub files: Vec<PathBuf>,
    pub trajectory: Trajectory,
}

pub fn run(cfg: &ScenarioConfig, out_dir: &Path, force: bool, tol: f64) -> Result<RunOutput> {
    let prep = prepare(cfg)?;
    let rho0 = initial_state(cfg, tol)?;
    let dt = cfg.dt.unwrap_or_else(|| prep.generator.default_dt());
    let traj = prep.generator.evolve(&rho0, cfg.t_final, dt)?;
    fs::create_dir_all(out_dir)?;
    let mut files = Vec::new();

    let needs_space = cfg.wants(OutputKind::Attractors)
        || cfg.wants(OutputKind::SyncReport)
        || (cfg.wants(OutputKind::Distances) && cfg.reference_state.is_none());
    let spaces = if needs_space { Some(summarize_attractors(&prep)?) } else { None };

    let mut cols: Vec<(&str, Vec<f64>)> = vec![
        ("visibility_A", traj.states.iter().map(|s| visibility(&s.reduced_a())).collect()),
        ("visibility_B", traj.states.iter().map(|s| visibility(&s.reduced_b())).collect()),
    ];
    if cfg.wants(OutputKind::Concurrence) {
        cols.push(("concurrence", traj.states.iter().map(|s| concurrence_of(s.matrix())).collect()));
    }
    if cfg.wants(OutputKind::Distances) {
        let r = reference(cfg, spaces.as_ref().map(|s| &s.2), &rho0)?;
        cols.push(("hs_distance_A", traj.states.iter().map(|s| hs_distance2(&reduced_a(s.matrix()), &r)).collect()));
        cols.push(("hs_distance_B", traj.states.iter().map(|s| hs_distance2(&reduced_b(s.matrix()), &r)).collect()));
    }

    if cfg.wants(OutputKind::Trajectory) {
        let path = out_dir.join("trajectory.csv");
        let mut w = create(&path, force)?;
        traj.write_csv(&mut w, &cols)?;
        w.flush()?;
        files.push(path);
    } else if cfg.wants(OutputKind::Concurrence) || cfg.wants(OutputKind::Distances) {
        let path = out_dir.join("observables.csv");
        let mut w = create(&path, force)?;
        write_columns(&mut w, &traj.times, &cols)?;
        w.flush()?;
        files.push(path);
    }

    if let Some((summary, eig, st)) = &spaces {
        if cfg.wants(OutputKind::Attractors) {
            let path = out_dir.join("attractors.json");
            let mut w = create(&path, force)?;
            serde_json::to_writer_pretty(&mut w, &eig.to_json())?;
            writeln!(w)?;
            w.flush()?;
            files.push(path);
        }
        if cfg.wants(OutputKind::SyncReport) {
            let phi = cfg.phi();
            let sync = sync_verdict(st, phi, std::slice::from_ref(&rho0), &default_t_grid(prep.hamiltonian.delta_e()));
            let report = RunReport {
                sync,
                phi_target: phi,
                enforcement: validate_combination(&prep.ops).ok(),
                attractors: summary.clone(),
                final_time: *traj.times.last().unwrap(),
                steps: traj.len() - 1,
                dt,
            };
            let path = out_dir.join("sync_report.json");
            let mut w = create(&path, force)?;
            serde_json::to_writer_pretty(&mut w, &report)?;
            writeln!(w)?;
            w.flush()?;
            files.push(path);
        }
    }
    Ok(RunOutput { files, trajectory: traj })
}

/// JSON document printed by `qsync attractors`.
pub fn attractors_report(cfg: &ScenarioConfig) -> Result<serde_json::Value> {
    let prep = prepare(cfg)?;
    let (summary, eig, _) = summarize_attractors(&prep)?;
    Ok(serde_json::json!({
        "summary": summary,
        "attractors": eig.to_json(),
    }))
}

/// Listing printed by `qsync presets`.
pub fn presets_report() -> serde_json::Value {
    let states: Vec<_> =
        STATE_PRESETS.iter().map(|(n, d)| serde_json::json!({ "name": n, "description": d })).collect();
    let mechs: Vec<_> = mechanism_presets()
        .into_iter()
        .map(|(n, s)| serde_json::json!({ "name": n, "mechanism": s, "hamiltonian": PRESET_HAMILTONIAN }))
        .collect();
    serde_json::json!({ "initial_states": states, "mechanisms": mechs })
}
