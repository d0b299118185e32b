//! Config-driven front end: `run`, `utility`, `efd` and `summarize`.

pub mod config;
pub mod output;

use std::fs::{self, File};
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};

use crate::efd::{efd_surface, EfdRow};
use crate::error::{Error, Result};
use crate::sim::{run_cells, summarize, with_workers, SummaryTable, TrialRecord};
use crate::utility::surface;

pub use config::{emit_config, parse_config, StudyConfig, Study};
pub use output::RunManifest;

#[derive(Debug, Parser)]
#[command(name = "ado", version, about = "Adaptive design optimization under prior misinformation")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Simulate every condition and write trials.jsonl, summary.csv and manifest.json.
    Run {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Worker threads; defaults to all cores.
        #[arg(long, env = "ADO_WORKERS")]
        workers: Option<usize>,
    },
    /// Utility of every candidate under every specified prior.
    Utility {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Expected focal divergence decomposition for every condition.
    Efd {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-aggregate a trial log into a summary table.
    Summarize {
        #[arg(long)]
        trials: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

pub fn load_config(path: &Path) -> Result<StudyConfig> {
    parse_config(&fs::read_to_string(path)?)
}

fn manifest_for(command: &str, cfg: &StudyConfig) -> Result<RunManifest> {
    let json = serde_json::to_value(cfg).map_err(|e| Error::Config(e.to_string()))?;
    Ok(RunManifest::new(command, cfg.seed, json))
}

fn write_json(path: &Path, manifest: &RunManifest) -> Result<()> {
    let text = serde_json::to_string_pretty(manifest).map_err(|e| Error::Config(e.to_string()))?;
    fs::write(path, text + "\n")?;
    Ok(())
}

/// Output of a full study run.
#[derive(Debug, Clone)]
pub struct RunOutput {
    pub manifest: RunManifest,
    pub records: Vec<TrialRecord>,
    pub summary: SummaryTable,
}

/// Runs every cell of `cfg` without touching the filesystem.
pub fn run_study(cfg: &StudyConfig, workers: Option<usize>) -> Result<RunOutput> {
    let start = Instant::now();
    let study = Study::build(cfg)?;
    let mut manifest = manifest_for("run", cfg)?;
    let batch = with_workers(workers, || run_cells(&study.cells))??;
    let summary = summarize(&batch.records);
    manifest.duration_secs = start.elapsed().as_secs_f64();
    manifest.floor_events = batch.floor_events;
    manifest.floored_records = summary.floored_records;
    manifest.total_records = summary.total_records;
    manifest.summary_flagged = summary.flagged();
    if manifest.summary_flagged {
        log::warn!(
            "{} of {} records have the truth at the probability floor",
            summary.floored_records,
            summary.total_records
        );
    }
    Ok(RunOutput {
        manifest,
        records: batch.records,
        summary,
    })
}

/// Runs `cfg` and writes `manifest.json`, `trials.jsonl` and `summary.csv` into `out`.
pub fn run_to_dir(cfg: &StudyConfig, out: &Path, workers: Option<usize>) -> Result<RunOutput> {
    let result = run_study(cfg, workers)?;
    fs::create_dir_all(out)?;
    let id = &result.manifest.id;
    output::write_trials(BufWriter::new(File::create(out.join("trials.jsonl"))?), id, &result.records)?;
    output::write_summary(BufWriter::new(File::create(out.join("summary.csv"))?), id, &result.summary)?;
    write_json(&out.join("manifest.json"), &result.manifest)?;
    Ok(result)
}

/// `(prior id, stimulus, utility label, value)` for every prior, utility and candidate.
pub fn utility_rows(cfg: &StudyConfig) -> Result<Vec<(String, f64, String, f64)>> {
    let study = Study::build(cfg)?;
    let candidates = cfg.candidates.clone().unwrap_or_default();
    let mut rows = Vec::new();
    for (id, belief) in &study.priors {
        for kind in cfg.utility_kinds() {
            let values = surface(belief, &candidates, kind)?;
            for (&x, v) in candidates.iter().zip(values) {
                rows.push((id.clone(), x, kind.label().to_string(), v));
            }
        }
    }
    Ok(rows)
}

/// EFD decomposition over the candidates for every distinct condition pair.
pub fn efd_rows(cfg: &StudyConfig) -> Result<Vec<(String, String, EfdRow)>> {
    let study = Study::build(cfg)?;
    let candidates = cfg.candidates.clone().unwrap_or_default();
    let mut rows = Vec::new();
    for (prior, pop, spec, popb) in &study.pairs {
        for r in efd_surface(spec, popb, &candidates, cfg.focus)? {
            rows.push((prior.clone(), pop.clone(), r));
        }
    }
    Ok(rows)
}

fn sink(out: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match out {
        Some(p) => {
            if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(dir)?;
            }
            Box::new(BufWriter::new(File::create(p)?))
        }
        None => Box::new(io::stdout().lock()),
    })
}

fn manifest_path(out: &Path) -> PathBuf {
    out.with_extension("manifest.json")
}

impl Cli {
    pub fn execute(self) -> Result<()> {
        match self.command {
            Command::Run {
                config,
                out,
                workers,
            } => {
                let cfg = load_config(&config)?;
                let result = run_to_dir(&cfg, &out, workers)?;
                log::info!(
                    "{} records written to {} (manifest {})",
                    result.records.len(),
                    out.display(),
                    result.manifest.id
                );
            }
            Command::Utility { config, out } => {
                let cfg = load_config(&config)?;
                let manifest = manifest_for("utility", &cfg)?;
                output::write_utility(sink(&out)?, &manifest.id, &utility_rows(&cfg)?)?;
                if let Some(p) = &out {
                    write_json(&manifest_path(p), &manifest)?;
                }
            }
            Command::Efd { config, out } => {
                let cfg = load_config(&config)?;
                let manifest = manifest_for("efd", &cfg)?;
                output::write_efd(sink(&out)?, &manifest.id, &efd_rows(&cfg)?)?;
                if let Some(p) = &out {
                    write_json(&manifest_path(p), &manifest)?;
                }
            }
            Command::Summarize { trials, out } => {
                let (id, records) = output::read_trials(BufReader::new(File::open(&trials)?))?;
                output::write_summary(sink(&out)?, &id, &summarize(&records))?;
            }
        }
        Ok(())
    }
}
