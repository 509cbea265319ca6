//! Command-line harness: runs claim checkers and demos, manages seeds and
//! configuration, and emits machine-readable reports.
//!
//! Exit codes: 0 when every internal invariant suite passed (claim
//! verdicts, CONFIRMED or REFUTED, are reported data and never affect the
//! exit status), 1 when an invariant failed, 2 on usage errors.

mod run;

use clap::{Args, Parser, Subcommand};
use preftop::econ::{
    compensation_check, compensation_csv, limit_check, limit_csv, Budget, Grid, LimitTarget,
};
use preftop::order::UtilityVector;
use preftop::paths::{
    contour_collapse_sequence, flatten_global, flatten_middle, path_trace_csv,
    sequence_trace_csv, three_step_path, tie_break_sequence, CollapseSide,
};
use preftop::report::catalog;
use run::{execute, RunConfig};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "preftop",
    version,
    about = "Checks structural claims about quotient topologies on finite preference families"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run claim checkers and write reports.
    Run(RunArgs),
    /// List the claim catalog.
    ListClaims(ListArgs),
    /// CES / Cobb-Douglas / Leontief demos.
    Ces(CesArgs),
    /// Utility-sequence and path traces as CSV.
    Trace(TraceArgs),
}

#[derive(Args)]
struct RunArgs {
    /// TOML config file; flags below override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Sizes to run: "3", "2..4", or "2,3,4".
    #[arg(long)]
    n: Option<String>,
    /// Comma-separated claim ids, or "all".
    #[arg(long)]
    claims: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    /// Random subsets / realizer samples for the sampled scans.
    #[arg(long)]
    samples: Option<usize>,
    /// Output directory for manifest.json, per-claim JSON, and CSV traces.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print the manifest to stdout as JSON.
    #[arg(long)]
    json: bool,
    /// Sweep every topology instead of a seeded sample.
    #[arg(long)]
    full_sweep: bool,
    /// Record wall-clock runtimes in reports (off keeps reports
    /// byte-identical across reruns).
    #[arg(long)]
    timings: bool,
    /// Worker threads for independent claim runs.
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Args)]
struct ListArgs {
    /// Machine-readable catalog.
    #[arg(long)]
    json: bool,
    /// Only claims from this module.
    #[arg(long)]
    module: Option<String>,
}

#[derive(Args)]
struct CesArgs {
    #[arg(long, default_value_t = 0.5)]
    alpha: f64,
    /// Which limit to sweep: "leontief", "cobb-douglas", or "both".
    #[arg(long, default_value = "both")]
    target: String,
    /// Output directory for CSV files (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Grid bounds and resolution.
    #[arg(long, default_value_t = 0.1)]
    grid_lo: f64,
    #[arg(long, default_value_t = 10.0)]
    grid_hi: f64,
    #[arg(long, default_value_t = 21)]
    grid_points: usize,
}

#[derive(Args)]
struct TraceArgs {
    /// One of: flatten_global, flatten_middle, tie_break,
    /// contour_collapse, three_step_path.
    #[arg(long)]
    kind: String,
    /// Comma-separated utility vector.
    #[arg(long)]
    u: String,
    /// Second vector (three_step_path only).
    #[arg(long)]
    v: Option<String>,
    #[arg(long)]
    x: Option<usize>,
    #[arg(long)]
    y: Option<usize>,
    /// "lower" or "upper" (contour_collapse only).
    #[arg(long)]
    side: Option<String>,
    /// Trace sequence indices up to 2^depth (sequences) or sample count
    /// (paths).
    #[arg(long, default_value_t = 10)]
    depth: u32,
    /// Output file (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Run(args) => cmd_run(args),
        Command::ListClaims(args) => {
            cmd_list(args)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Ces(args) => {
            cmd_ces(args)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Trace(args) => {
            cmd_trace(args)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn cmd_run(args: RunArgs) -> anyhow::Result<ExitCode> {
    let mut config = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| anyhow::anyhow!("cannot read config {}: {e}", path.display()))?;
            toml::from_str::<RunConfig>(&text)
                .map_err(|e| anyhow::anyhow!("malformed config {}: {e}", path.display()))?
        }
        None => RunConfig::default(),
    };
    if let Some(n) = &args.n {
        config.n_range = run::parse_sizes(n)?;
    }
    if let Some(claims) = &args.claims {
        config.claims = run::parse_claims(claims)?;
    }
    if let Some(seed) = args.seed {
        config.seed = seed;
    }
    if let Some(samples) = args.samples {
        config.samples = samples;
    }
    if args.full_sweep {
        config.full_sweep = true;
    }
    if args.timings {
        config.timings = true;
    }
    if let Some(jobs) = args.jobs {
        config.jobs = jobs.max(1);
    }
    config.validate()?;

    let outcome = execute(&config)?;

    if let Some(dir) = &args.out {
        std::fs::create_dir_all(dir)?;
        std::fs::write(
            dir.join("manifest.json"),
            serde_json::to_string_pretty(&outcome.manifest)? + "\n",
        )?;
        for (name, contents) in &outcome.artifacts {
            std::fs::write(dir.join(name), contents)?;
        }
        eprintln!(
            "wrote manifest.json and {} artifact(s) to {}",
            outcome.artifacts.len(),
            dir.display()
        );
    }
    if args.json || args.out.is_none() {
        println!("{}", serde_json::to_string_pretty(&outcome.manifest)?);
    }
    for line in &outcome.summary_lines {
        eprintln!("{line}");
    }
    if outcome.integrity_failures.is_empty() {
        Ok(ExitCode::SUCCESS)
    } else {
        for f in &outcome.integrity_failures {
            eprintln!("invariant failure: {f}");
        }
        Ok(ExitCode::from(1))
    }
}

fn cmd_list(args: ListArgs) -> anyhow::Result<()> {
    let mut entries = catalog();
    if let Some(module) = &args.module {
        entries.retain(|c| c.module == module);
    }
    if args.json {
        println!("{}", serde_json::to_string_pretty(&entries)?);
        return Ok(());
    }
    for c in entries {
        println!("{:<22} n={}..{}  [{}]  {}", c.id, c.n_min, c.n_max, c.module, c.anchor);
        println!("{:<22} {}", "", c.description);
    }
    Ok(())
}

fn cmd_ces(args: CesArgs) -> anyhow::Result<()> {
    let grid = Grid::new(args.grid_lo, args.grid_hi, args.grid_points)?;
    let targets: Vec<LimitTarget> = match args.target.as_str() {
        "leontief" => vec![LimitTarget::Leontief],
        "cobb-douglas" | "cobb_douglas" => vec![LimitTarget::CobbDouglas],
        "both" => vec![LimitTarget::Leontief, LimitTarget::CobbDouglas],
        other => anyhow::bail!("unknown target {other:?}"),
    };
    let mut outputs: Vec<(String, String)> = Vec::new();
    for target in targets {
        let report = limit_check(target, args.alpha, &grid, &target.default_schedule())?;
        let name = match target {
            LimitTarget::Leontief => "ces_limits_leontief.csv",
            LimitTarget::CobbDouglas => "ces_limits_cobb_douglas.csv",
        };
        eprintln!(
            "{target:?}: deviations {:?} (monotone decrease: {})",
            report.deviations, report.monotone_decreasing
        );
        if target == LimitTarget::Leontief {
            eprintln!(
                "  weighted-min deviations {:?} (the family approaches min(x1, x2), not the weighted form)",
                report.literal_deviations
            );
        }
        outputs.push((name.to_string(), limit_csv(&report)));
    }
    let before = Budget::new(1.0, 1.0, 10.0)?;
    let comp = compensation_check(args.alpha, &before, (2.0, 1.0), &[0.5, 0.1, 0.01])?;
    eprintln!(
        "compensation: leontief exact = {}, ces deviations {:?}",
        comp.leontief_exact, comp.ces_deviations
    );
    outputs.push(("ces_compensation.csv".to_string(), compensation_csv(&comp)));

    match &args.out {
        Some(dir) => {
            std::fs::create_dir_all(dir)?;
            for (name, contents) in outputs {
                std::fs::write(dir.join(name), contents)?;
            }
        }
        None => {
            for (name, contents) in outputs {
                println!("# {name}");
                print!("{contents}");
            }
        }
    }
    Ok(())
}

fn parse_vector(text: &str) -> anyhow::Result<UtilityVector> {
    let values: Vec<f64> = text
        .split(',')
        .map(|tok| tok.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|e| anyhow::anyhow!("bad utility vector {text:?}: {e}"))?;
    if values.is_empty() || values.iter().any(|v| !v.is_finite()) {
        anyhow::bail!("utility vector must be nonempty and finite");
    }
    Ok(UtilityVector::new(values))
}

fn cmd_trace(args: TraceArgs) -> anyhow::Result<()> {
    let u = parse_vector(&args.u)?;
    let indices: Vec<u64> = (0..=args.depth).map(|k| 1u64 << k).collect();
    let need = |opt: Option<usize>, name: &str| {
        opt.ok_or_else(|| anyhow::anyhow!("--{name} is required for this kind"))
    };
    let csv = match args.kind.as_str() {
        "flatten_global" => sequence_trace_csv(&flatten_global(&u), &indices),
        "flatten_middle" => {
            let x = need(args.x, "x")?;
            let y = need(args.y, "y")?;
            sequence_trace_csv(&flatten_middle(&u, x, y)?, &indices)
        }
        "tie_break" => {
            let x = need(args.x, "x")?;
            let y = need(args.y, "y")?;
            sequence_trace_csv(&tie_break_sequence(&u, x, y)?, &indices)
        }
        "contour_collapse" => {
            let x = need(args.x, "x")?;
            let side = match args.side.as_deref() {
                Some("lower") | None => CollapseSide::Lower,
                Some("upper") => CollapseSide::Upper,
                Some(other) => anyhow::bail!("unknown side {other:?}"),
            };
            sequence_trace_csv(&contour_collapse_sequence(&u, x, side)?, &indices)
        }
        "three_step_path" => {
            let v = parse_vector(
                args.v
                    .as_deref()
                    .ok_or_else(|| anyhow::anyhow!("--v is required for three_step_path"))?,
            )?;
            let samples = 10usize.max(args.depth as usize);
            path_trace_csv(&three_step_path(&u, &v)?, samples)
        }
        other => anyhow::bail!("unknown trace kind {other:?}"),
    };
    match &args.out {
        Some(path) => std::fs::write(path, csv)?,
        None => print!("{csv}"),
    }
    Ok(())
}
