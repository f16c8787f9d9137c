use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use twirl_lab::cli::{run, Command, EnsembleSource, RunConfig, EXIT_ERROR};
use twirl_lab::design::Mode;

#[derive(Parser)]
#[command(name = "twirl-lab", version, about = "Exact k-design checks for Clifford ensembles")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Compare the ensemble twirl with the Haar twirl on every Pauli basis tensor.
    VerifyDesign(Opts),
    /// Check that every nonidentity Pauli is sent uniformly over phased Paulis.
    CheckMixing(Opts),
    /// Check that every independent Pauli pair is sent uniformly over its H class.
    #[command(name = "check-2mixing")]
    Check2Mixing(Opts),
    /// Exact frame potential against the Haar value.
    FramePotential(Opts),
    /// Qubit probes showing the ensemble is not a 4-design.
    #[command(name = "witness-not-4-design")]
    WitnessNot4Design(Opts),
    /// Qudit probes showing the ensemble is not a 3-design.
    #[command(name = "witness-qudit-3")]
    WitnessQudit3(Opts),
    /// Pauli expansion of a permutation operator W_pi.
    DecomposeW(Opts),
    /// Clifford group order and the pair census.
    GroupCensus(Opts),
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Random,
}

#[derive(Args)]
struct Opts {
    /// Number of qudits [default: 1, or the ensemble file's value]
    #[arg(long)]
    n: Option<usize>,
    /// Local dimension [default: 2, or the ensemble file's value]
    #[arg(long)]
    d: Option<u32>,
    /// Number of tensor copies
    #[arg(long)]
    k: Option<usize>,
    /// Builtin name (clifford-uniform, pauli-uniform, identity) or a JSON file.
    #[arg(long, default_value = "clifford-uniform")]
    ensemble: String,
    /// Sweep the full Pauli basis or a seeded random sample of it
    #[arg(long, value_enum, default_value = "exhaustive")]
    mode: ModeArg,
    /// Basis tensors to draw in random mode
    #[arg(long)]
    samples: Option<u64>,
    /// RNG seed for random mode
    #[arg(long)]
    seed: Option<u64>,
    /// Write the JSON report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Maximum number of witnesses recorded in the report
    #[arg(long, default_value_t = 8)]
    witness_cap: usize,
    /// Worker threads [default: all cores]
    #[arg(long)]
    threads: Option<usize>,
    /// Permutation in cycle notation, e.g. "(123)" or "(12)(34)".
    #[arg(long)]
    perm: Option<String>,
    /// Write elapsed_ms as 0 so reruns are byte-identical.
    #[arg(long)]
    no_timing: bool,
}

fn config(command: Command, o: Opts) -> Result<RunConfig, String> {
    let mode = match o.mode {
        ModeArg::Exhaustive => Mode::Exhaustive,
        ModeArg::Random => Mode::Random {
            samples: o.samples.ok_or("--mode random needs --samples")?,
            seed: o.seed.ok_or("--mode random needs --seed")?,
        },
    };
    Ok(RunConfig {
        command,
        n: o.n,
        d: o.d,
        k: o.k,
        ensemble: EnsembleSource::parse(&o.ensemble),
        mode,
        out: o.out,
        witness_cap: o.witness_cap,
        threads: o.threads,
        perm: o.perm,
        timing: !o.no_timing,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, opts) = match cli.command {
        Sub::VerifyDesign(o) => (Command::VerifyDesign, o),
        Sub::CheckMixing(o) => (Command::CheckMixing, o),
        Sub::Check2Mixing(o) => (Command::Check2Mixing, o),
        Sub::FramePotential(o) => (Command::FramePotential, o),
        Sub::WitnessNot4Design(o) => (Command::WitnessNot4Design, o),
        Sub::WitnessQudit3(o) => (Command::WitnessQudit3, o),
        Sub::DecomposeW(o) => (Command::DecomposeW, o),
        Sub::GroupCensus(o) => (Command::GroupCensus, o),
    };
    let result = config(command, opts)
        .map_err(|e| e.to_string())
        .and_then(|c| run(&c).map(|out| (c, out)).map_err(|e| e.to_string()));
    match result {
        Ok((c, out)) => {
            if c.out.is_none() {
                print!("{}", out.report.to_json_string());
            }
            eprintln!(
                "{}: {}",
                command.name(),
                if out.report.pass { "pass" } else { "negative" }
            );
            ExitCode::from(out.exit_code as u8)
        }
        Err(e) => {
            eprintln!("twirl-lab: {e}");
            ExitCode::from(EXIT_ERROR as u8)
        }
    }
}
