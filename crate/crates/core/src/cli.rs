//! Command driver behind the `twirl-lab` binary.

use std::fs;
use std::path::{Path, PathBuf};

use crate::clifford::{CliffordTableau, Ensemble};
use crate::design::{verify_k_design, CompiledEnsemble, Mode, VerifyOptions};
use crate::error::{Error, Result};
use crate::frame::frame_potential;
use crate::mixing::{check_pauli_2_mixing, check_pauli_mixing, group_census};
use crate::operator::MAX_DENSE_DIM;
use crate::pauli::SystemParams;
use crate::perm::{w_pauli_decomposition, w_pauli_decomposition_dense, Permutation};
use crate::report::Report;
use crate::witness::{witness_not_4_design, witness_qudit_not_3_design};

/// Environment variable naming a directory for cached group enumerations.
pub const CACHE_ENV: &str = "TWIRL_LAB_CACHE";

pub const EXIT_PASS: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    VerifyDesign,
    CheckMixing,
    Check2Mixing,
    FramePotential,
    WitnessNot4Design,
    WitnessQudit3,
    DecomposeW,
    GroupCensus,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::VerifyDesign => "verify-design",
            Command::CheckMixing => "check-mixing",
            Command::Check2Mixing => "check-2mixing",
            Command::FramePotential => "frame-potential",
            Command::WitnessNot4Design => "witness-not-4-design",
            Command::WitnessQudit3 => "witness-qudit-3",
            Command::DecomposeW => "decompose-w",
            Command::GroupCensus => "group-census",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EnsembleSource {
    /// `clifford-uniform`, `pauli-uniform`, or `identity`.
    Named(String),
    File(PathBuf),
}

impl EnsembleSource {
    /// Known names are builtins; anything else is a path.
    pub fn parse(text: &str) -> Self {
        match text {
            "clifford-uniform" | "pauli-uniform" | "identity" => EnsembleSource::Named(text.to_string()),
            _ => EnsembleSource::File(PathBuf::from(text)),
        }
    }
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: Command,
    pub n: Option<usize>,
    pub d: Option<u32>,
    pub k: Option<usize>,
    pub ensemble: EnsembleSource,
    pub mode: Mode,
    pub out: Option<PathBuf>,
    pub witness_cap: usize,
    pub threads: Option<usize>,
    /// Permutation in cycle notation, for `decompose-w`.
    pub perm: Option<String>,
    /// Record wall-clock time in the report.
    pub timing: bool,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            n: None,
            d: None,
            k: None,
            ensemble: EnsembleSource::Named("clifford-uniform".into()),
            mode: Mode::Exhaustive,
            out: None,
            witness_cap: VerifyOptions::default().witness_cap,
            threads: None,
            perm: None,
            timing: true,
        }
    }

    fn params(&self) -> Result<SystemParams> {
        SystemParams::new(self.n.unwrap_or(1), self.d.unwrap_or(2))
    }

    fn k(&self) -> Result<usize> {
        self.k
            .ok_or_else(|| Error::Parameter(format!("{} needs --k", self.command.name())))
    }
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub report: Report,
    pub exit_code: i32,
}

fn cache_path(dir: &Path, params: SystemParams) -> PathBuf {
    dir.join(format!("clifford-n{}-d{}.json", params.n(), params.d()))
}

fn clifford_uniform_cached(params: SystemParams) -> Result<Ensemble> {
    let Some(dir) = std::env::var_os(CACHE_ENV).map(PathBuf::from) else {
        return Ensemble::clifford_uniform(params);
    };
    let path = cache_path(&dir, params);
    if let Ok(text) = fs::read_to_string(&path) {
        if let Ok(e) = Ensemble::from_json(&text) {
            if e.params() == params {
                return Ok(e);
            }
        }
    }
    let e = Ensemble::clifford_uniform(params)?;
    // A cache that cannot be written is not an error.
    if fs::create_dir_all(&dir).is_ok() {
        let _ = e.to_json().map(|text| fs::write(&path, text));
    }
    Ok(e)
}

/// Builtin ensemble by name, or an ensemble file; `params` must agree with a file's header.
pub fn load_ensemble(source: &EnsembleSource, n: Option<usize>, d: Option<u32>) -> Result<Ensemble> {
    match source {
        EnsembleSource::Named(name) => {
            let params = SystemParams::new(n.unwrap_or(1), d.unwrap_or(2))?;
            match name.as_str() {
                "clifford-uniform" => clifford_uniform_cached(params),
                "pauli-uniform" => Ensemble::pauli_uniform(params),
                "identity" => Ensemble::singleton(CliffordTableau::identity(params)),
                other => Err(Error::Parameter(format!("unknown ensemble name {other:?}"))),
            }
        }
        EnsembleSource::File(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Error::Parameter(format!("cannot read ensemble file {}: {e}", path.display())))?;
            let e = Ensemble::from_json(&text)?;
            let p = e.params();
            if n.is_some_and(|n| n != p.n()) || d.is_some_and(|d| d != p.d()) {
                return Err(Error::Parameter(format!(
                    "ensemble file is for n={}, d={}, flags ask for n={}, d={}",
                    p.n(),
                    p.d(),
                    n.map_or("-".into(), |v| v.to_string()),
                    d.map_or("-".into(), |v| v.to_string()),
                )));
            }
            Ok(e)
        }
    }
}

fn compiled(config: &RunConfig) -> Result<CompiledEnsemble> {
    CompiledEnsemble::new(&load_ensemble(&config.ensemble, config.n, config.d)?)
}

fn verdict(pass: bool) -> i32 {
    if pass {
        EXIT_PASS
    } else {
        EXIT_NEGATIVE
    }
}

/// Run one check. Errors map to exit code 2 in the binary.
pub fn run(config: &RunConfig) -> Result<Outcome> {
    let (report, exit_code) = match config.command {
        Command::VerifyDesign => {
            let options = VerifyOptions {
                mode: config.mode,
                witness_cap: config.witness_cap,
                threads: config.threads,
            };
            let r = verify_k_design(&compiled(config)?, config.k()?, &options)?;
            (Report::verify_design(&r), verdict(r.pass()))
        }
        Command::CheckMixing => {
            let r = check_pauli_mixing(&compiled(config)?)?;
            (Report::mixing(&r), verdict(r.pass))
        }
        Command::Check2Mixing => {
            let r = check_pauli_2_mixing(&compiled(config)?)?;
            (Report::mixing(&r), verdict(r.pass))
        }
        Command::FramePotential => {
            let r = frame_potential(&compiled(config)?, config.k()?, config.threads)?;
            (Report::frame_potential(&r), verdict(r.is_design()))
        }
        Command::WitnessNot4Design | Command::WitnessQudit3 => {
            let ens = compiled(config)?;
            let r = if config.command == Command::WitnessNot4Design {
                witness_not_4_design(&ens)?
            } else {
                witness_qudit_not_3_design(&ens)?
            };
            if let Some(p) = r.probes.iter().find(|p| !p.formula_holds()) {
                return Err(Error::Contract(format!(
                    "closed form {} gives {} but the Haar twirl gives {} on probe {}",
                    p.formula_text, p.formula, p.haar, p.probe
                )));
            }
            (Report::witness(config.command.name(), &r), verdict(r.witness.is_none()))
        }
        Command::DecomposeW => {
            let text = config
                .perm
                .as_deref()
                .ok_or_else(|| Error::Parameter("decompose-w needs --perm".into()))?;
            let k = match config.k {
                Some(k) => k,
                None => infer_k(text)?,
            };
            let pi = Permutation::parse(text, k)?;
            let params = config.params()?;
            let op = w_pauli_decomposition(&pi, params)?;
            let dense = params
                .dim()
                .checked_pow(k as u32)
                .filter(|&dim| dim <= MAX_DENSE_DIM)
                .map(|_| w_pauli_decomposition_dense(&pi, params).map(|dense| dense == op))
                .transpose()?;
            (
                Report::decomposition(&pi, params, &op, dense),
                verdict(dense.unwrap_or(true)),
            )
        }
        Command::GroupCensus => {
            let r = group_census(config.params()?)?;
            (Report::group_census(&r), verdict(r.pass))
        }
    };
    let report = if config.timing { report } else { report.without_timing() };
    if let Some(path) = &config.out {
        fs::write(path, report.to_json_string())?;
    }
    Ok(Outcome { report, exit_code })
}

/// Largest point named in a cycle string; points are single digits.
fn infer_k(text: &str) -> Result<usize> {
    match text.chars().filter_map(|c| c.to_digit(10)).max() {
        Some(k) if k > 0 => Ok(k as usize),
        _ => Err(Error::Parameter(
            "decompose-w needs --k for the identity permutation".into(),
        )),
    }
}
