use std::io::Write;
use std::process::ExitCode;

use bqz_cli::spec::ParamsSpec;
use bqz_cli::{cmd_eval, cmd_golden_suite, cmd_recurrence, cmd_verify_catalog, Settings};
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "bqz", version, about = "Biquaternion Z transforms and recurrences")]
struct Cli {
    /// Print the machine-readable JSON report.
    #[arg(long, global = true)]
    json: bool,

    /// Target bound on the truncated-series tail.
    #[arg(long, global = true, default_value_t = 1e-12)]
    eps: f64,

    /// Verification tolerance.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,

    /// Term budget for truncated series.
    #[arg(long, global = true, default_value_t = 10_000)]
    max_terms: usize,

    /// Seed for sampled parameters and points.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Use the printed forms of the n p^n table row and of the Ij recurrence
    /// sign instead of the corrected ones.
    #[arg(long, global = true)]
    as_printed: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a catalog transform and compare it with its truncated series.
    Eval {
        /// Catalog row name, e.g. pow_p.
        sequence: String,
        /// Evaluation point as a biquaternion literal.
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        /// Ratio parameter `p`.
        #[arg(long, allow_hyphen_values = true)]
        p: Option<String>,
        /// Parameter `q` for the trigonometric, binomial and exponential rows.
        #[arg(long, allow_hyphen_values = true)]
        q: Option<String>,
        /// Integer order `m` for the binomial rows.
        #[arg(long)]
        m: Option<u32>,
    },
    /// Check every catalog closed form against its series at random points.
    VerifyCatalog {
        /// Comma-separated subset of rows.
        #[arg(long, value_delimiter = ',')]
        rows: Vec<String>,
        #[arg(long, default_value_t = 20)]
        points: usize,
    },
    /// Iterate a recurrence or deconvolution spec and verify its candidate.
    Recurrence {
        /// Path to a JSON spec, or bundled:example1 .. bundled:example5.
        spec: String,
        /// Horizon; defaults to the spec's.
        #[arg(long)]
        n: Option<usize>,
        /// Complex evaluation points for the transform cross-check.
        #[arg(long, allow_hyphen_values = true)]
        x: Vec<String>,
    },
    /// Run the worked-example suite.
    #[command(name = "paper-suite")]
    GoldenSuite,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let settings = Settings {
        eps: cli.eps,
        tol: cli.tol,
        max_terms: cli.max_terms,
        seed: cli.seed,
        as_printed: cli.as_printed,
    };
    let report = match &cli.command {
        Command::Eval { sequence, x, p, q, m } => {
            let params = ParamsSpec { p: p.clone(), q: q.clone(), m: *m };
            cmd_eval(sequence, &params, x, &settings)
        }
        Command::VerifyCatalog { rows, points } => cmd_verify_catalog(Some(rows), *points, &settings),
        Command::Recurrence { spec, n, x } => cmd_recurrence(spec, *n, x, &settings),
        Command::GoldenSuite => cmd_golden_suite(&settings),
    };
    let text = if cli.json {
        report.to_json_string() + "\n"
    } else {
        report.to_text()
    };
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
    ExitCode::from(report.status.exit_code() as u8)
}
