use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use log::{error, info, warn};

use morphcx::report::{cmd_analyze, cmd_measure, cmd_plot, RunConfig};
use morphcx::Result;

/// Morphological complexity measures over CoNLL-U treebanks.
#[derive(Parser, Debug)]
#[command(name = "morphcx", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    overrides: Overrides,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
enum Command {
    /// Sample every treebank and compute the measures.
    Measure,
    /// Correlations, PCA and WALS regressions over the measure table.
    Analyze,
    /// Draw SVG figures from the output tables.
    Plot,
    /// measure, analyze and plot in sequence.
    RunAll,
}

#[derive(Args, Debug)]
struct Overrides {
    /// Configuration file (flat TOML).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output directory.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads (0 = all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[arg(long, global = true)]
    target_tokens: Option<usize>,
    #[arg(long, global = true)]
    repetitions: Option<usize>,
    /// Treebank manifest (TSV: id, language_code, path).
    #[arg(long, global = true)]
    manifest: Option<PathBuf>,
    /// WALS CSV export.
    #[arg(long, global = true)]
    wals: Option<PathBuf>,
}

impl Overrides {
    fn apply(&self, cfg: &mut RunConfig) {
        if let Some(v) = self.seed {
            cfg.seed = v;
        }
        if let Some(v) = &self.out {
            cfg.out = v.clone();
        }
        if let Some(v) = self.jobs {
            cfg.jobs = v;
        }
        if let Some(v) = self.target_tokens {
            cfg.target_tokens = v;
        }
        if let Some(v) = self.repetitions {
            cfg.repetitions = v;
        }
        if let Some(v) = &self.manifest {
            cfg.manifest = Some(v.clone());
        }
        if let Some(v) = &self.wals {
            cfg.wals = Some(v.clone());
        }
    }
}

/// Exit status: 0 on full success, 2 if some treebanks failed.
fn run(cli: &Cli) -> Result<u8> {
    let mut cfg = match &cli.overrides.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    cli.overrides.apply(&mut cfg);
    cfg.validate()?;
    if cfg.jobs > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cfg.jobs).build_global() {
            warn!("could not size the thread pool: {e}");
        }
    }

    let mut status = 0;
    if matches!(cli.command, Command::Measure | Command::RunAll) {
        let run = cmd_measure(&cfg)?;
        let failed = run.n_failed();
        info!("measured {} treebanks, {failed} failed", run.results.len());
        if failed > 0 {
            for r in run.results.iter().filter(|r| r.failed()) {
                error!("{}: {}", r.id, r.error.as_deref().unwrap_or_default());
            }
            status = 2;
        }
    }
    if matches!(cli.command, Command::Analyze | Command::RunAll) {
        let a = cmd_analyze(&cfg)?;
        if let Some(p) = &a.pca {
            info!("PC1 explains {:.4}% of the variance", 100.0 * p.result.explained_variance_ratio[0]);
        }
    }
    if matches!(cli.command, Command::Plot | Command::RunAll) {
        for p in cmd_plot(&cfg.out)? {
            info!("wrote {}", p.display());
        }
    }
    Ok(status)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            error!("{e}");
            ExitCode::from(1)
        }
    }
}
