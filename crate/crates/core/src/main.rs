use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qnd_core::network::{net_invariants, FiniteNet};
use qnd_core::report::{Check, SuiteReport, EXIT_USAGE};
use qnd_core::suites::{self, DEFAULT_SEED};
use qnd_core::toy::{self, Potential, ToyConfig};

#[derive(Parser)]
#[command(
    name = "qnd",
    version,
    about = "Exact verification suites for quantum network dynamics"
)]
struct Cli {
    /// Seed for randomized checks.
    #[arg(long, global = true, env = "QND_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one verification suite.
    Verify {
        #[arg(value_enum)]
        target: Target,
    },
    /// Path invariant N(n) of a net given as JSON {"num_nodes", "arrows"}.
    Invariants {
        #[arg(long)]
        net: PathBuf,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
    },
    /// Toy model: remote vs. local amplitude and the variation study.
    Toy {
        #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u64).range(2..=256))]
        dim: u64,
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..=64))]
        steps: u64,
        #[arg(long, default_value = "harmonic")]
        potential: String,
        #[arg(long, default_value_t = 1.0)]
        tav: f64,
        #[arg(long, default_value_t = 1.0)]
        mass: f64,
    },
    /// S(4) factorization and Lorentz classification.
    S4 {
        /// Emit one row per permutation.
        #[arg(long)]
        all: bool,
    },
    /// Exchange behaviour of nested generators.
    Exchange,
    /// Every suite.
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    Ccr,
    Vacuum,
    Dipole,
    Quadrupole,
}

fn toy_report(cfg: &ToyConfig, seed: u64) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let mut r = SuiteReport::new("toy");
    r.meta("seed", seed)
        .meta("dim", cfg.dim)
        .meta("steps", cfg.steps)
        .meta("tav", cfg.tav)
        .meta("potential", cfg.potential.name());
    r.push(toy::toy_row(cfg));
    let dh: Vec<toy::CMatrix> = (0..cfg.steps)
        .map(|_| toy::random_hermitian(cfg.dim, &mut rng))
        .collect();
    let study = toy::schwinger_variation(cfg, &dh, toy::variation_start(&cfg.hamiltonian()), 3);
    let (lo, hi) = toy::RATIO_BAND;
    let mut c = Check::new(
        "schwinger-residual-scaling",
        study.ratios.iter().all(|x| (lo..=hi).contains(x)),
        format!("residual ratios under halving {:?}", study.ratios),
    );
    for (k, x) in study.ratios.iter().enumerate() {
        c = c.with(format!("ratio{k}"), *x);
    }
    r.push(c);
    r
}

fn run(cli: Cli) -> Result<SuiteReport, String> {
    let seed = cli.seed;
    let report = match cli.command {
        Command::Verify { target } => {
            let name = match target {
                Target::Ccr => "ccr",
                Target::Vacuum => "vacuum",
                Target::Dipole => "dipole",
                Target::Quadrupole => "quadrupole",
            };
            suites::run_suite(name, seed).map_err(|e| e.to_string())?
        }
        Command::Invariants { net, n } => {
            let text = std::fs::read_to_string(&net).map_err(|e| format!("{}: {e}", net.display()))?;
            let net = FiniteNet::from_json(&text).map_err(|e| e.to_string())?;
            net_invariants(&net, n as usize)
        }
        Command::Toy {
            dim,
            steps,
            potential,
            tav,
            mass,
        } => {
            let potential = Potential::parse(&potential).map_err(|e| e.to_string())?;
            let cfg = ToyConfig::from_seed(dim as usize, steps as usize, potential, tav, mass, seed)
                .map_err(|e| e.to_string())?;
            toy_report(&cfg, seed)
        }
        Command::S4 { all } => qnd_core::symmetry::s4_suite(seed, all),
        Command::Exchange => qnd_core::network::exchange_suite(),
        Command::All => suites::all_suite(seed),
    };
    Ok(report)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(report) => {
            println!("{}", report.to_json());
            eprint!("{}", report.summary());
            ExitCode::from(report.exit_code())
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
