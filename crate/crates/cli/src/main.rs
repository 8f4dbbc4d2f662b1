mod config;
mod error;
mod output;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use magnomech::{evaluate_point, preset, run_sweep, Axis, Preset};

use config::{Format, RunConfig};
use error::CliError;

/// Steady-state entanglement of two microwave cavities coupled through a
/// magnomechanical YIG sphere.
#[derive(Parser)]
#[command(name = "magnomech", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a single operating point.
    Steady(RunArgs),
    /// Evaluate a one- or two-dimensional grid and write CSV or JSON.
    Sweep {
        #[command(flatten)]
        run: RunArgs,
        /// Axis `name:start:stop:count[:scale]`; repeat for a second axis.
        #[arg(long = "axis", value_name = "SPEC")]
        axes: Vec<String>,
    },
    /// Print the normalized configuration (all keys, external units).
    Config(RunArgs),
    /// Run a figure preset, writing `<name>.csv` and `<name>.meta.json`.
    Figure {
        /// fig2a, fig2b, fig3, fig4a or fig4b.
        name: String,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
}

#[derive(Args)]
struct RunArgs {
    /// Configuration file (`key = value` lines or a JSON object).
    #[arg(long, short)]
    config: Option<PathBuf>,
    /// Override a configuration key; may be repeated.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    sets: Vec<String>,
    /// Output format (overrides the `format` key).
    #[arg(long)]
    format: Option<String>,
    /// Output file (overrides the `output` key); stdout when absent.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

impl RunArgs {
    fn load(&self) -> Result<RunConfig, CliError> {
        let mut config = match &self.config {
            Some(path) => {
                let text = fs::read_to_string(path).map_err(|source| CliError::Io {
                    path: path.clone(),
                    source,
                })?;
                RunConfig::parse(&text)
                    .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?
            }
            None => RunConfig::default(),
        };
        for pair in &self.sets {
            config.set_pair(pair)?;
        }
        if let Some(format) = &self.format {
            config.format = Some(format.parse()?);
        }
        if let Some(path) = &self.output {
            config.output = Some(path.clone());
        }
        Ok(config)
    }
}

fn write_output(path: Option<&Path>, contents: &str) -> Result<(), CliError> {
    match path {
        Some(path) => fs::write(path, contents).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        }),
        None => {
            print!("{contents}");
            Ok(())
        }
    }
}

fn steady(config: &RunConfig) -> Result<(), CliError> {
    let (params, drive) = config.resolve()?;
    let eval = evaluate_point(&params)?;
    let report = match config.format.unwrap_or(Format::Text) {
        Format::Text => output::steady_text(&eval, drive.as_ref()),
        Format::Json => output::steady_json(&eval, drive.as_ref()),
        Format::Csv => output::steady_csv(&eval),
    };
    write_output(config.output.as_deref(), &report)?;
    if !eval.stability.stable {
        return Err(CliError::Model(magnomech::Error::Unstable {
            max_real_part: eval.stability.max_real_part,
        }));
    }
    Ok(())
}

fn sweep(config: &RunConfig) -> Result<String, CliError> {
    let specs = config.axis_specs();
    if specs.is_empty() || specs.len() > 2 {
        return Err(CliError::Usage(format!(
            "a sweep needs one or two axes (--axis or axis1/axis2 keys), got {}",
            specs.len()
        )));
    }
    let axes = specs
        .iter()
        .map(|s| s.parse::<Axis>())
        .collect::<Result<Vec<_>, _>>()?;
    let (params, _) = config.resolve()?;
    let result = run_sweep(&params, &axes)?;
    let failed = result.points.iter().filter(|p| p.error.is_some()).count();
    if failed > 0 {
        log::warn!(
            "{failed} of {} grid points failed and are written as NaN",
            result.points.len()
        );
    }
    match config.format.unwrap_or(Format::Csv) {
        Format::Csv => Ok(output::sweep_csv(&result)),
        Format::Json => Ok(output::sweep_json(&result)),
        Format::Text => Err(CliError::Usage(
            "sweep output format must be csv or json".into(),
        )),
    }
}

fn figure(name: &str, out_dir: &Path) -> Result<(), CliError> {
    let which: Preset = name.parse()?;
    let spec = preset::<f64>(which)?;
    let mut config = RunConfig::from_params(&spec.base);
    config.axes = spec.axes.iter().map(|a| a.to_string()).collect();
    config.format = Some(Format::Csv);
    let csv = sweep(&config)?;
    fs::create_dir_all(out_dir).map_err(|source| CliError::Io {
        path: out_dir.to_path_buf(),
        source,
    })?;
    write_output(Some(&out_dir.join(format!("{name}.csv"))), &csv)?;
    write_output(
        Some(&out_dir.join(format!("{name}.meta.json"))),
        &config.to_json(),
    )
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Steady(args) => steady(&args.load()?),
        Command::Sweep { run, axes } => {
            let mut config = run.load()?;
            if !axes.is_empty() {
                config.axes = axes;
            }
            let csv = sweep(&config)?;
            write_output(config.output.as_deref(), &csv)
        }
        Command::Config(args) => {
            let config = args.load()?;
            let text = match config.format {
                Some(Format::Json) => config.to_json(),
                _ => config.to_text(),
            };
            print!("{text}");
            Ok(())
        }
        Command::Figure { name, out_dir } => figure(&name, &out_dir),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
