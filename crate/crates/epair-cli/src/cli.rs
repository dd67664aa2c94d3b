//! Command-line interface: argument parsing, config resolution and dispatch.
//!
//! Exit codes: 0 success, 1 usage/config error, 2 numerical failure. All
//! angles are radians.

use std::io::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use epair::pairsim::{resource_report, PairConfig};
use epair::relativity::BoostParams;

use crate::config::{FileConfig, PhysicsArgs};
use crate::error::{CliError, CliResult};
use crate::{fig2, report, selftest, sweep};

#[derive(Debug, Parser)]
#[command(
    name = "epair",
    version,
    about = "Entanglement and coherence of a boosted electron-positron pair"
)]
pub struct Cli {
    /// TOML config file; defaults to $EPAIR_CONFIG when set.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Full resource report at one parameter point.
    Report(ReportArgs),
    /// Sweep one or two parameters and emit one row per grid point.
    Sweep(SweepArgs),
    /// cos Omega surface over (beta, beta_v) at fixed alpha.
    Fig2(Fig2Args),
    /// Run the built-in verification suite.
    Selftest,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    #[command(flatten)]
    pub physics: PhysicsArgs,

    /// Output format (text or json).
    #[arg(long, value_enum)]
    pub format: Option<Format>,

    /// Write the report here instead of stdout.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub physics: PhysicsArgs,

    /// Sweep axis NAME:MIN:MAX:N over beta, beta_v, alpha or phi
    /// (repeatable, at most twice).
    #[arg(long = "axis", value_name = "NAME:MIN:MAX:N")]
    pub axes: Vec<String>,

    /// Output format (csv or json).
    #[arg(long, value_enum)]
    pub format: Option<Format>,

    /// Write the rows here instead of stdout.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct Fig2Args {
    /// Boost direction angle alpha in [0, pi] (radians).
    #[arg(long)]
    pub alpha: Option<f64>,

    /// Points per axis (default 200).
    #[arg(long)]
    pub grid: Option<usize>,

    /// Write the CSV surface here instead of stdout.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,

    /// Also write an SVG heatmap here.
    #[arg(long, value_name = "PATH")]
    pub svg: Option<PathBuf>,
}

/// Parses the command line and runs it; returns the process exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cli: Cli) -> CliResult<()> {
    let config = FileConfig::resolve(cli.config.as_deref())?;
    match cli.command {
        Command::Report(args) => cmd_report(args, &config),
        Command::Sweep(args) => cmd_sweep(args, &config),
        Command::Fig2(args) => cmd_fig2(args, &config),
        Command::Selftest => cmd_selftest(),
    }
}

fn emit(text: &str, out: Option<&PathBuf>) -> CliResult<()> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| {
            CliError::Usage(format!("cannot write {}: {e}", path.display()))
        }),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|()| stdout.flush())
                .map_err(CliError::from)
        }
    }
}

fn parse_format(
    flag: Option<Format>,
    config: &FileConfig,
    default: Format,
    allowed: &[Format],
) -> CliResult<Format> {
    let from_config = match config.format.as_deref() {
        None => None,
        Some("text") => Some(Format::Text),
        Some("csv") => Some(Format::Csv),
        Some("json") => Some(Format::Json),
        Some(other) => {
            return Err(CliError::Usage(format!(
                "config format `{other}` (expected text, csv or json)"
            )))
        }
    };
    let format = flag.or(from_config).unwrap_or(default);
    if !allowed.contains(&format) {
        return Err(CliError::Usage(format!(
            "format {format:?} is not available for this command"
        )));
    }
    Ok(format)
}

fn cmd_report(args: ReportArgs, config: &FileConfig) -> CliResult<()> {
    let params = args.physics.merge(config).require_all()?;
    let format = parse_format(
        args.format,
        config,
        Format::Text,
        &[Format::Text, Format::Json],
    )?;
    let cfg = PairConfig::new(params.phi, params.theta, params.beta_v, params.mass)?;
    let bp = BoostParams::new(params.beta, params.beta_v, params.alpha)?;
    let report = resource_report(&cfg, &bp)?;
    let text = match format {
        Format::Json => report::to_json(&report)? + "\n",
        _ => report::to_text(&report),
    };
    emit(&text, args.out.as_ref().or(config.out.as_ref()))
}

fn cmd_sweep(args: SweepArgs, config: &FileConfig) -> CliResult<()> {
    let axis_specs: Vec<String> = if args.axes.is_empty() {
        config.axis.clone().unwrap_or_default()
    } else {
        args.axes.clone()
    };
    let axes = axis_specs
        .iter()
        .map(|s| sweep::Axis::parse(s))
        .collect::<CliResult<Vec<_>>>()?;
    let fixed = args.physics.merge(config);
    let spec = sweep::SweepSpec::new(axes, fixed)?;
    let format = parse_format(
        args.format,
        config,
        Format::Csv,
        &[Format::Csv, Format::Json],
    )?;
    let rows = sweep::run(&spec)?;
    let text = match format {
        Format::Json => sweep::to_json(&rows)? + "\n",
        _ => sweep::to_csv(&rows),
    };
    emit(&text, args.out.as_ref().or(config.out.as_ref()))
}

fn cmd_fig2(args: Fig2Args, config: &FileConfig) -> CliResult<()> {
    let alpha = args
        .alpha
        .or(config.alpha)
        .ok_or_else(|| CliError::Usage("missing --alpha".into()))?;
    let grid = args.grid.or(config.grid).unwrap_or(200);
    let surface = fig2::surface(alpha, grid)?;
    if let Some(svg_path) = args.svg.as_ref().or(config.svg.as_ref()) {
        std::fs::write(svg_path, surface.to_svg()).map_err(|e| {
            CliError::Usage(format!("cannot write {}: {e}", svg_path.display()))
        })?;
    }
    emit(&surface.to_csv(), args.out.as_ref().or(config.out.as_ref()))
}

fn cmd_selftest() -> CliResult<()> {
    let outcomes = selftest::run_all();
    let mut all_passed = true;
    for outcome in &outcomes {
        println!("{}", outcome.summary_line());
        println!("{}", outcome.detail);
        all_passed &= outcome.passed;
    }
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    println!(
        "selftest: {} of {} checks passed",
        outcomes.len() - failed,
        outcomes.len()
    );
    if all_passed {
        Ok(())
    } else {
        Err(CliError::Numerical(format!("{failed} check(s) failed")))
    }
}
