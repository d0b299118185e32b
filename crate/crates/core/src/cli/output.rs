//! Manifests, CSV tables and JSONL trial logs. Every file starts with a
//! `# manifest <id>` line.

use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::efd::EfdRow;
use crate::error::{Error, Result};
use crate::rng::GENERATOR_NAME;
use crate::sim::{SummaryRow, SummaryTable, TrialRecord};

pub const MANIFEST_PREFIX: &str = "# manifest ";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    /// Hash of everything but the wall-clock duration.
    pub id: String,
    pub command: String,
    pub config_hash: String,
    pub generator: String,
    pub seed: u64,
    pub version: String,
    pub duration_secs: f64,
    pub floor_events: u64,
    pub floored_records: usize,
    pub total_records: usize,
    pub summary_flagged: bool,
    /// The resolved config, defaults included.
    pub config: serde_json::Value,
}

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

impl RunManifest {
    pub fn new(command: &str, seed: u64, config: serde_json::Value) -> RunManifest {
        let config_hash = sha256_hex(config.to_string().as_bytes());
        let version = env!("CARGO_PKG_VERSION").to_string();
        let id = sha256_hex(
            format!("{command}\n{config_hash}\n{GENERATOR_NAME}\n{seed}\n{version}").as_bytes(),
        )[..16]
            .to_string();
        RunManifest {
            id,
            command: command.to_string(),
            config_hash,
            generator: GENERATOR_NAME.to_string(),
            seed,
            version,
            duration_secs: 0.0,
            floor_events: 0,
            floored_records: 0,
            total_records: 0,
            summary_flagged: false,
            config,
        }
    }

    pub fn header(&self) -> String {
        format!("{MANIFEST_PREFIX}{}", self.id)
    }
}

fn fmt_f64(v: f64) -> String {
    format!("{v}")
}

fn csv_writer<W: Write>(mut w: W, manifest_id: &str, header: &str) -> Result<csv::Writer<W>> {
    writeln!(w, "{MANIFEST_PREFIX}{manifest_id}")?;
    let mut out = csv::Writer::from_writer(w);
    out.write_record(header.split(','))
        .map_err(|e| Error::Io(e.into()))?;
    Ok(out)
}

fn finish<W: Write>(mut out: csv::Writer<W>) -> Result<()> {
    out.flush()?;
    Ok(())
}

pub fn write_summary<W: Write>(w: W, manifest_id: &str, table: &SummaryTable) -> Result<()> {
    let mut out = csv_writer(w, manifest_id, SummaryRow::HEADER)?;
    for r in &table.rows {
        out.write_record([
            r.condition_id.clone(),
            r.design.clone(),
            r.utility_kind.clone(),
            r.prior_id.clone(),
            r.population_id.clone(),
            r.trial.to_string(),
            fmt_f64(r.mean_log_p_true),
            fmt_f64(r.se_log),
            fmt_f64(r.mean_p_true),
            fmt_f64(r.se_linear),
            r.n_reps.to_string(),
        ])
        .map_err(|e| Error::Io(e.into()))?;
    }
    finish(out)
}

pub const EFD_HEADER: &str =
    "prior_id,population_id,stimulus,response_variability,surprisal,hindsight,total,global_utility";

pub fn write_efd<W: Write>(w: W, manifest_id: &str, rows: &[(String, String, EfdRow)]) -> Result<()> {
    let mut out = csv_writer(w, manifest_id, EFD_HEADER)?;
    for (prior, pop, r) in rows {
        let b = &r.breakdown;
        out.write_record([
            prior.clone(),
            pop.clone(),
            fmt_f64(r.stimulus),
            fmt_f64(b.response_variability),
            fmt_f64(b.surprisal),
            fmt_f64(b.hindsight),
            fmt_f64(b.total),
            fmt_f64(r.global_utility),
        ])
        .map_err(|e| Error::Io(e.into()))?;
    }
    finish(out)
}

pub const UTILITY_HEADER: &str = "prior_id,stimulus,utility_kind,value";

/// Rows of `(prior id, stimulus, utility label, value)`.
pub fn write_utility<W: Write>(w: W, manifest_id: &str, rows: &[(String, f64, String, f64)]) -> Result<()> {
    let mut out = csv_writer(w, manifest_id, UTILITY_HEADER)?;
    for (prior, x, kind, v) in rows {
        out.write_record([prior.clone(), fmt_f64(*x), kind.clone(), fmt_f64(*v)])
            .map_err(|e| Error::Io(e.into()))?;
    }
    finish(out)
}

pub fn write_trials<W: Write>(mut w: W, manifest_id: &str, records: &[TrialRecord]) -> Result<()> {
    writeln!(w, "{MANIFEST_PREFIX}{manifest_id}")?;
    for r in records {
        serde_json::to_writer(&mut w, r).map_err(|e| Error::Io(e.into()))?;
        w.write_all(b"\n")?;
    }
    w.flush()?;
    Ok(())
}

/// Reads a trial log, returning its manifest id and records.
pub fn read_trials<R: BufRead>(r: R) -> Result<(String, Vec<TrialRecord>)> {
    let mut manifest = None;
    let mut records = Vec::new();
    for (i, line) in r.lines().enumerate() {
        let line = line?;
        let line_no = i + 1;
        if let Some(id) = line.strip_prefix(MANIFEST_PREFIX) {
            if manifest.is_some() {
                return Err(Error::TrialLog {
                    line: line_no,
                    message: "second manifest header".into(),
                });
            }
            manifest = Some(id.trim().to_string());
        } else if !line.trim().is_empty() {
            records.push(serde_json::from_str(&line).map_err(|e| Error::TrialLog {
                line: line_no,
                message: e.to_string(),
            })?);
        }
    }
    let manifest = manifest.ok_or(Error::TrialLog {
        line: 1,
        message: "missing manifest header".into(),
    })?;
    Ok((manifest, records))
}
