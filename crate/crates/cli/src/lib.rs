//! Command-line driver: one job per invocation, JSON report on stdout.
//!
//! Exit codes: `0` success, `1` domain failure (validation violations,
//! matrix mismatch, internal consistency), `2` usage or parse failure.

mod commands;
pub mod config;
pub mod report;

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use config::JobConfig;
use report::{config_digest, Report, TimingSection, SCHEMA_VERSION};

#[derive(Debug)]
pub struct CliError {
    pub message: String,
    pub exit: i32,
}

impl CliError {
    pub fn usage(message: String) -> Self {
        CliError { message, exit: 2 }
    }

    pub fn domain(message: String) -> Self {
        CliError { message, exit: 1 }
    }
}

#[derive(Parser)]
#[command(
    name = "hochschild",
    version,
    about = "Exact classical, higher order, and secondary Hochschild cohomology of structure-constant algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate the configured algebras, morphism, module, and pair.
    Validate(JobArgs),
    /// Compute cohomology dimensions per degree.
    Cohomology(JobArgs),
    /// Check that the directly-built secondary differential equals the
    /// disk-pair differential, entry for entry.
    VerifyTheorem(VerifyTheoremArgs),
    /// Pull back along the inclusion of the circle into the disk and
    /// verify the cochain-map property against both differentials.
    Phi(JobArgs),
}

#[derive(Args)]
struct JobArgs {
    /// Path to a JSON job configuration.
    #[arg(long, value_name = "PATH", conflicts_with = "fixture")]
    config: Option<PathBuf>,
    /// Fixture preset `A[:B][@PAIR]`, e.g. `dual_numbers`,
    /// `truncated_poly_3:dual_numbers@circle`. A is one of ground_field,
    /// dual_numbers, truncated_poly_<m>, product_kk; B is ground_field or
    /// dual_numbers; PAIR is point, circle, or disk-pair.
    #[arg(long, value_name = "SPEC")]
    fixture: Option<String>,
    /// Coefficient field for --fixture runs: a prime below 2^31 or "Q".
    #[arg(long, value_name = "p|Q")]
    field: Option<String>,
    /// Maximal degree (overrides the config file when given).
    #[arg(long, value_name = "N")]
    qmax: Option<usize>,
    /// Suppress the timing block, making the report byte-reproducible.
    #[arg(long)]
    no_timing: bool,
    /// Include every computed matrix as a triplet list in the report.
    #[arg(long)]
    emit_matrices: bool,
}

#[derive(Args)]
struct VerifyTheoremArgs {
    #[command(flatten)]
    job: JobArgs,
    /// Debug negative control: reverse the B-factor order of the directly
    /// built differential; the comparison must then fail.
    #[arg(long, hide = true)]
    transpose_b_order: bool,
}

pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders its own message; keep its exit convention for
            // usage problems, which matches ours.
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let (name, args, transpose) = match &cli.command {
        Command::Validate(a) => ("validate", a, false),
        Command::Cohomology(a) => ("cohomology", a, false),
        Command::VerifyTheorem(v) => ("verify-theorem", &v.job, v.transpose_b_order),
        Command::Phi(a) => ("phi", a, false),
    };
    match execute(name, args, transpose) {
        Ok(exit) => exit,
        Err(e) => {
            eprintln!("error: {}", e.message);
            e.exit
        }
    }
}

fn load_config(args: &JobArgs) -> Result<JobConfig, CliError> {
    let mut config = match (&args.config, &args.fixture) {
        (Some(path), None) => {
            if args.field.is_some() {
                return Err(CliError::usage(
                    "--field applies to --fixture runs; the config file carries its own field".into(),
                ));
            }
            let text = std::fs::read_to_string(path).map_err(|e| {
                CliError::usage(format!("cannot read config {}: {e}", path.display()))
            })?;
            JobConfig::from_json(&text)?
        }
        (None, Some(spec)) => JobConfig::from_fixture(
            spec,
            args.field.as_deref().unwrap_or("Q"),
            args.qmax.unwrap_or(3),
        )?,
        _ => {
            return Err(CliError::usage(
                "exactly one of --config or --fixture is required".into(),
            ))
        }
    };
    if let Some(qmax) = args.qmax {
        config.q_max = qmax;
    }
    Ok(config)
}

fn execute(name: &str, args: &JobArgs, transpose_b_order: bool) -> Result<i32, CliError> {
    let started = Instant::now();
    let config = load_config(args)?;
    let digest = config_digest(&config);
    let job = config.resolve()?;
    let resolved = started.elapsed();

    let validation = commands::validate_job(&job);
    let validated = started.elapsed();

    let mut report = Report {
        schema_version: SCHEMA_VERSION,
        command: name.into(),
        config_digest: digest,
        field: job.field.to_string(),
        pair: job.pair_name.clone(),
        q_max: job.q_max,
        validation,
        cohomology: None,
        theorem: None,
        phi: None,
        matrices: None,
        error: None,
        timing: None,
    };

    let mut exit = 0;
    if !report.validation.ok {
        exit = 1;
    } else if name != "validate" {
        let result = match name {
            "cohomology" => commands::cmd_cohomology(&job, args.emit_matrices),
            "verify-theorem" => {
                commands::cmd_verify_theorem(&job, args.emit_matrices, transpose_b_order)
            }
            "phi" => commands::cmd_phi(&job, args.emit_matrices),
            _ => unreachable!("subcommands are exhaustive"),
        };
        match result {
            Ok(output) => {
                report.cohomology = output.cohomology;
                report.theorem = output.theorem;
                report.phi = output.phi;
                if !output.matrices.is_empty() {
                    report.matrices = Some(output.matrices);
                }
                exit = output.exit;
            }
            Err(e) if e.exit == 1 => {
                report.error = Some(e.message);
                exit = 1;
            }
            Err(e) => return Err(e),
        }
    }

    if !args.no_timing {
        let total = started.elapsed();
        report.timing = Some(TimingSection {
            resolve_ms: resolved.as_millis(),
            validate_ms: (validated - resolved).as_millis(),
            compute_ms: (total - validated).as_millis(),
            total_ms: total.as_millis(),
        });
    }
    let rendered = serde_json::to_string_pretty(&report)
        .map_err(|e| CliError::domain(format!("report serialization failed: {e}")))?;
    println!("{rendered}");
    Ok(exit)
}
