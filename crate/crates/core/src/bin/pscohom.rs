use std::process::ExitCode;

use clap::{Parser, Subcommand};
use pscohom::report::RunReport;
use pscohom::runner::{self, Limits, VerifyArgs};
use pscohom::transfer::{SamplingConfig, SignVariant};

/// Thread count for the worker pool; falls back to rayon's default.
const THREADS_ENV: &str = "PSCOHOM_THREADS";

#[derive(Parser)]
#[command(name = "pscohom", version, about = "Cohomology and transferred products of the free two-step nilpotent Lie algebra")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit the JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Also write the JSON report to this file.
    #[arg(long, global = true)]
    out: Option<std::path::PathBuf>,
    /// Lift the default cost guards (dim V <= 5, arity <= 5).
    #[arg(long, global = true)]
    no_guard: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Homology dimensions by degree and weight.
    Homology {
        #[arg(long)]
        dim_v: usize,
    },
    /// Littlewood's identity truncated at a total degree.
    Littlewood {
        #[arg(long)]
        vars: usize,
        #[arg(long)]
        max_deg: u32,
    },
    /// Evaluate a transferred product on harmonic classes.
    Transfer {
        #[arg(long)]
        dim_v: usize,
        /// m2, m3 or mn.
        #[arg(long)]
        op: String,
        #[arg(long)]
        arity: Option<usize>,
        /// Comma separated classes, e.g. "e1,e2,e3" or "e1,e{1,2}^e3".
        #[arg(long)]
        args: String,
        /// Skip calibration and use this sign variant, e.g. "u+1".
        #[arg(long)]
        sign_variant: Option<String>,
    },
    /// Run a verification suite.
    Verify {
        /// retract, stasheff, cinfty, duality, hilbert, generation, jw or signs.
        #[arg(long)]
        suite: String,
        #[arg(long)]
        dim_v: usize,
        #[arg(long, default_value_t = 12)]
        max_deg: u32,
        #[arg(long, default_value_t = 4)]
        up_to: usize,
        #[arg(long)]
        sign_variant: Option<String>,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = SamplingConfig::default().seed)]
        seed: u64,
    },
}

fn variant(s: &Option<String>) -> Result<Option<SignVariant>, String> {
    match s {
        None => Ok(None),
        Some(s) => SignVariant::parse(s).map(Some).ok_or_else(|| format!("unknown sign variant `{s}`")),
    }
}

fn run(cli: &Cli) -> Result<RunReport, String> {
    let limits = if cli.no_guard { Limits::unbounded() } else { Limits::default() };
    let report = match &cli.command {
        Command::Homology { dim_v } => runner::homology(*dim_v, limits),
        Command::Littlewood { vars, max_deg } => Ok(runner::littlewood(*vars, *max_deg)),
        Command::Transfer { dim_v, op, arity, args, sign_variant } => {
            runner::transfer(*dim_v, op, *arity, args, variant(sign_variant)?, limits)
        }
        Command::Verify { suite, dim_v, max_deg, up_to, sign_variant, samples, seed } => {
            let args = VerifyArgs {
                suite: suite.clone(),
                dim_v: *dim_v,
                max_deg: *max_deg,
                up_to: *up_to,
                variant: variant(sign_variant)?,
                sampling: SamplingConfig { seed: *seed, samples: *samples },
            };
            runner::verify(&args, limits)
        }
    };
    report.map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(k) = std::env::var(THREADS_ENV).ok().and_then(|v| v.parse::<usize>().ok()) {
        rayon::ThreadPoolBuilder::new().num_threads(k).build_global().ok();
    }
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if cli.json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.render_text());
    }
    if let Some(path) = &cli.out {
        if let Err(e) = std::fs::write(path, report.to_json()) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
