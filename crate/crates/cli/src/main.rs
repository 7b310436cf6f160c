mod commands;
mod error;
mod output;
mod qnormal_cmd;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use error::CliError;

/// Homology gradients, q-normal certificates, RAAG analysis and rebuilding audits.
#[derive(Parser)]
#[command(name = "gradlab", version)]
struct Cli {
    /// Cap on live cosets during coset enumeration.
    #[arg(long, global = true)]
    budget: Option<usize>,
    /// Word-length radius of truncated coset graphs.
    #[arg(long, global = true)]
    radius: Option<usize>,
    /// Reserved; every computation is deterministic.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Directory for reports and the run manifest.
    #[arg(long, global = true, default_value = "gradlab-out")]
    out: PathBuf,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Homology of the covers along a subgroup chain and its gradients.
    Homology(HomologyArgs),
    /// q-normality certificates and coset graphs.
    #[command(subcommand)]
    Qnormal(QnormalCommand),
    /// Right-angled Artin group analysis.
    #[command(subcommand)]
    Raag(RaagCommand),
    /// Fixed-point ratios along a subgroup chain.
    Farber(FarberArgs),
    /// Rebuilding data audits.
    #[command(subcommand)]
    Rebuild(RebuildCommand),
}

#[derive(Args)]
struct HomologyArgs {
    /// Group file (JSON).
    #[arg(long)]
    group: PathBuf,
    /// Chain, e.g. `abelian:n=1..5`, `cyclic:images=1,0;n=2..8`, or a JSON level list.
    #[arg(long)]
    chain: String,
    /// Primes for mod-p Betti numbers, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "2")]
    primes: Vec<u64>,
    /// Invariants to report; defaults to betti_q, betti_f<p> per prime, log_torsion.
    #[arg(long, value_delimiter = ',')]
    invariants: Vec<String>,
    /// Known ℓ² value to measure the ratios against.
    #[arg(long)]
    l2_reference: Option<f64>,
}

#[derive(Subcommand)]
enum QnormalCommand {
    /// Verify a chain certificate or a single witness set.
    Verify {
        #[arg(long)]
        certificate: PathBuf,
    },
    /// Build the coset graph `G/L` with edges `{gL, gsL}`.
    Graph {
        #[arg(long)]
        spec: PathBuf,
    },
    /// Blow up an outer coset graph by an inner one.
    Blowup {
        #[arg(long)]
        spec: PathBuf,
    },
    /// Keep only the edge orbits needed to reach the given generators.
    Trim {
        #[arg(long)]
        spec: PathBuf,
    },
}

#[derive(Subcommand)]
enum RaagCommand {
    /// Inner-amenability verdict, chain-commuting sequence and emitted chain.
    Analyze {
        #[arg(long)]
        graph: PathBuf,
    },
}

#[derive(Args)]
struct FarberArgs {
    #[arg(long)]
    group: PathBuf,
    #[arg(long)]
    chain: String,
    /// Nontrivial elements separated by `;`, e.g. `a;b;ab` or `1;2;1,2`.
    #[arg(long)]
    gammas: String,
    /// Threshold as an integer, fraction `p/q` or decimal.
    #[arg(long, default_value = "0")]
    eps: String,
}

#[derive(Subcommand)]
enum RebuildCommand {
    /// Validate rebuilding data and audit it at quality `(T, κ)`.
    Check {
        #[arg(long)]
        data: PathBuf,
        #[arg(long = "T", alias = "t")]
        t: f64,
        /// Omit to report the least passing κ.
        #[arg(long)]
        kappa: Option<f64>,
    },
}

pub struct Globals {
    pub budget: usize,
    pub radius: Option<usize>,
    pub out: PathBuf,
}

fn run(cli: Cli) -> Result<(), CliError> {
    let g = Globals { budget: cli.budget.unwrap_or(100_000), radius: cli.radius, out: cli.out };
    match cli.command {
        Command::Homology(a) => commands::homology(&g, &a.group, &a.chain, &a.primes, &a.invariants, a.l2_reference),
        Command::Qnormal(QnormalCommand::Verify { certificate }) => qnormal_cmd::verify(&g, &certificate),
        Command::Qnormal(QnormalCommand::Graph { spec }) => qnormal_cmd::graph(&g, &spec),
        Command::Qnormal(QnormalCommand::Blowup { spec }) => qnormal_cmd::blowup(&g, &spec),
        Command::Qnormal(QnormalCommand::Trim { spec }) => qnormal_cmd::trim(&g, &spec),
        Command::Raag(RaagCommand::Analyze { graph }) => commands::raag_analyze(&g, &graph),
        Command::Farber(a) => commands::farber(&g, &a.group, &a.chain, &a.gammas, &a.eps),
        Command::Rebuild(RebuildCommand::Check { data, t, kappa }) => commands::rebuild_check(&g, &data, t, kappa),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("gradlab: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
