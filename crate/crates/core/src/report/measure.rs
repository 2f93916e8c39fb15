//! The measuring stage: treebanks in, one row of measures per treebank out.

use std::fmt;
use std::path::{Path, PathBuf};

use log::{info, warn};
use rayon::prelude::*;
use serde::Serialize;

use super::config::RunConfig;
use crate::error::{Error, Result};
use crate::inflection::{inflection_accuracy, IaResult};
use crate::ingest::{apply_exclusions, parse_conllu_with, read_manifest, ExclusionReason, ManifestEntry, Treebank};
use crate::measures::Measure;
use crate::sampling::{run_repetitions, MeasureFn};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Availability {
    Ok,
    /// Computed but undefined, e.g. no lemma annotation.
    Unavailable,
    /// Removed by an exclusion rule that applies to this measure.
    Excluded,
    /// Not requested in the configuration.
    Skipped,
    /// The treebank could not be processed.
    Failed,
}

impl Availability {
    pub fn as_str(self) -> &'static str {
        match self {
            Availability::Ok => "ok",
            Availability::Unavailable => "unavailable",
            Availability::Excluded => "excluded",
            Availability::Skipped => "skipped",
            Availability::Failed => "failed",
        }
    }
}

impl fmt::Display for Availability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeasureCell {
    pub mean: Option<f64>,
    pub stddev: Option<f64>,
    /// Number of values behind the mean.
    pub n: usize,
    pub status: Availability,
}

impl MeasureCell {
    fn missing(status: Availability) -> Self {
        MeasureCell { mean: None, stddev: None, n: 0, status }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TreebankStats {
    pub n_sentences: usize,
    pub n_tokens: usize,
    pub n_feature_keys: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TreebankResult {
    pub id: String,
    pub language_code: String,
    pub path: PathBuf,
    pub stats: Option<TreebankStats>,
    pub exclusion: Vec<ExclusionReason>,
    /// One cell per measure, in [`Measure::ALL`] order.
    pub cells: Vec<MeasureCell>,
    pub ia: Option<IaResult>,
    pub error: Option<String>,
}

impl TreebankResult {
    pub fn cell(&self, m: Measure) -> &MeasureCell {
        &self.cells[m.index()]
    }

    pub fn failed(&self) -> bool {
        self.error.is_some()
    }
}

/// Outcome of [`cmd_measure`].
#[derive(Debug, Clone, PartialEq)]
pub struct MeasureRun {
    pub provenance: String,
    pub results: Vec<TreebankResult>,
}

impl MeasureRun {
    pub fn n_failed(&self) -> usize {
        self.results.iter().filter(|r| r.failed()).count()
    }
}

/// Measures for one parsed treebank.
pub fn measure_treebank(tb: &Treebank, path: &Path, config: &RunConfig) -> Result<TreebankResult> {
    let partition = apply_exclusions(std::iter::once(tb), &config.exclusion_config());
    let exclusion = partition.reasons(&tb.id).to_vec();
    let settings = config.measure_settings();
    let sample_cfg = config.sample_config();

    let mut cells = vec![MeasureCell::missing(Availability::Skipped); Measure::ALL.len()];
    let mut requested = Vec::new();
    for m in Measure::SAMPLE_LEVEL {
        if !config.measures.contains(&m) {
            continue;
        }
        if exclusion.iter().any(|r| r.affects(m) && *r != ExclusionReason::NoMorphFeatures) {
            cells[m.index()] = MeasureCell::missing(Availability::Excluded);
        } else {
            requested.push(m);
        }
    }

    if !requested.is_empty() {
        let fns = settings.measure_fns(&requested);
        let named: Vec<(&str, &MeasureFn<'_>)> = fns.iter().map(|(m, f)| (m.name(), f.as_ref())).collect();
        let summary = run_repetitions(tb, &sample_cfg, &named)?;
        for m in &requested {
            cells[m.index()] = match summary.get(m.name()) {
                Some(s) => MeasureCell { mean: Some(s.mean), stddev: Some(s.stddev), n: s.n, status: Availability::Ok },
                None => MeasureCell::missing(Availability::Unavailable),
            };
        }
    }

    let mut ia = None;
    if config.measures.contains(&Measure::NegIa) {
        ia = inflection_accuracy(tb, config.target_tokens, config.seed, &config.cv_config())?;
        cells[Measure::NegIa.index()] = match &ia {
            Some(r) => MeasureCell { mean: Some(r.measure()), stddev: None, n: 1, status: Availability::Ok },
            None => MeasureCell::missing(Availability::Unavailable),
        };
    }

    Ok(TreebankResult {
        id: tb.id.clone(),
        language_code: tb.language_code.clone(),
        path: path.to_path_buf(),
        stats: Some(TreebankStats {
            n_sentences: tb.sentences.len(),
            n_tokens: tb.n_tokens,
            n_feature_keys: tb.n_feature_keys,
        }),
        exclusion,
        cells,
        ia,
        error: None,
    })
}

fn process_entry(entry: &ManifestEntry, config: &RunConfig) -> TreebankResult {
    let run = || -> Result<TreebankResult> {
        let text = std::fs::read_to_string(&entry.path).map_err(|e| Error::file(&entry.path, e))?;
        let tb = parse_conllu_with(&text, &entry.id, &entry.language_code, config.parse_options())?;
        info!("{}: {} sentences, {} tokens", tb.id, tb.sentences.len(), tb.n_tokens);
        measure_treebank(&tb, &entry.path, config)
    };
    run().unwrap_or_else(|e| {
        warn!("{}: {e}", entry.id);
        TreebankResult {
            id: entry.id.clone(),
            language_code: entry.language_code.clone(),
            path: entry.path.clone(),
            stats: None,
            exclusion: Vec::new(),
            cells: vec![MeasureCell::missing(Availability::Failed); Measure::ALL.len()],
            ia: None,
            error: Some(e.to_string()),
        }
    })
}

/// Measure every treebank of `entries`. A failing treebank yields a result
/// with `error` set; the others are unaffected. Output order follows the
/// input order.
pub fn measure_entries(entries: &[ManifestEntry], config: &RunConfig) -> Result<MeasureRun> {
    config.validate()?;
    let results = entries.par_iter().map(|e| process_entry(e, config)).collect();
    Ok(MeasureRun { provenance: config.provenance(), results })
}

/// Read the manifest, measure all treebanks and write the measure tables to
/// `config.out`.
pub fn cmd_measure(config: &RunConfig) -> Result<MeasureRun> {
    config.validate_for_measure()?;
    let manifest = config.manifest.as_deref().expect("validated");
    let entries = read_manifest(manifest)?;
    if entries.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut ids = std::collections::BTreeSet::new();
    for e in &entries {
        if !ids.insert(&e.id) {
            return Err(Error::Config(format!("duplicate treebank id `{}` in manifest", e.id)));
        }
    }
    let run = measure_entries(&entries, config)?;
    super::tsv::write_measure_outputs(&run, &config.out)?;
    Ok(run)
}
