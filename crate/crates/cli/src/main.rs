use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use fhca_cli::{run_config_text, run_preset, CliError, CliResult, Overrides, RunOptions, PRESETS};

/// Frequency-hopping convolution-attack simulator.
#[derive(Parser)]
#[command(name = "fhca", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a figure preset.
    Preset {
        name: String,
        #[command(flatten)]
        run: RunFlags,
        /// Override a preset parameter, e.g. `attack.alpha=0.25` or `experiment.trials=1000`.
        #[arg(long = "set", value_name = "KEY=VALUE")]
        set: Vec<String>,
    },
    /// Run an experiment described by a configuration file.
    Run {
        config: PathBuf,
        #[command(flatten)]
        run: RunFlags,
    },
    /// List presets.
    List,
    /// Parse and validate a configuration file without running it.
    Check { config: PathBuf },
}

#[derive(Args)]
struct RunFlags {
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads (0 = all cores). Never changes the output.
    #[arg(long, default_value_t = 0)]
    threads: usize,
    #[arg(long, default_value = "results")]
    out_dir: PathBuf,
    /// Multiplier on every trial count.
    #[arg(long, default_value_t = 1.0)]
    trials_scale: f64,
}

impl RunFlags {
    fn options(&self) -> RunOptions {
        RunOptions {
            seed: self.seed.unwrap_or(1),
            threads: self.threads,
            out_dir: self.out_dir.clone(),
            trials_scale: self.trials_scale,
            overrides: Overrides::default(),
        }
    }
}

fn read(path: &PathBuf) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.clone(),
        source: e,
    })
}

fn execute(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::List => {
            for p in PRESETS {
                println!("{:<7} {:>9} trials  {}", p.name, p.trials, p.description);
            }
        }
        Command::Check { config } => {
            let cfg = fhca_cli::parse_config(&read(&config)?)?;
            println!("ok: {:?} {} / {}", cfg.kind, cfg.link().scheme, cfg.attack().kind);
        }
        Command::Preset { name, run, set } => {
            let mut opts = run.options();
            opts.overrides = Overrides::from_assignments(&set)?;
            let m = run_preset(&name, &opts)?;
            eprintln!(
                "{name}: {} files, {} trials, {:.1}s",
                m.outputs.len(),
                m.trials,
                m.wall_seconds
            );
        }
        Command::Run { config, run } => {
            let stem = config
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| "run".into());
            let m = run_config_text(&read(&config)?, &run.options(), run.seed, &stem)?;
            eprintln!(
                "{stem}: {} files, {} trials, {:.1}s",
                m.outputs.len(),
                m.trials,
                m.wall_seconds
            );
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
