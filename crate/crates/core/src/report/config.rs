//! Run configuration: a flat TOML file of `key = value` lines.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::analysis::log_grid;
use crate::error::{Error, Result};
use crate::inflection::{CvConfig, SearchSpace};
use crate::ingest::{ExclusionConfig, ParseOptions};
use crate::measures::{Compressor, Measure, MeasureSettings, SynthesisUnit};
use crate::sampling::SampleConfig;
use crate::wals::{default_feature_ids, read_feature_list};

/// How treebanks of one language enter the WALS regression.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WalsRows {
    /// One row per treebank; treebanks of a language share WALS values.
    #[default]
    Treebank,
    /// One row per language holding the mean of its treebanks.
    LanguageMean,
}

/// Every key is optional. Relative paths resolve against the directory of the
/// configuration file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    /// TSV with `id`, `language_code`, `path` per treebank.
    pub manifest: Option<PathBuf>,
    /// WALS CSV export.
    pub wals: Option<PathBuf>,
    /// Feature list (`id<TAB>description<TAB>coverage`); defaults to the
    /// bundled 28 features.
    pub wals_features: Option<PathBuf>,
    /// Column holding the codes that match the manifest's language codes.
    pub wals_language_column: Option<String>,
    pub wals_rows: WalsRows,
    pub out: PathBuf,

    pub target_tokens: usize,
    pub repetitions: usize,
    pub seed: u64,
    /// Worker threads; 0 uses every core.
    pub jobs: usize,

    pub lowercase: bool,
    pub min_feature_keys: usize,
    pub script_deny: BTreeSet<String>,
    pub script_allow: BTreeSet<String>,

    /// Measures to compute; the others are written as NA.
    pub measures: Vec<Measure>,
    pub compression_level: u32,
    pub synthesis_unit: SynthesisUnit,

    pub ia_folds: usize,
    pub ia_draws: usize,
    pub ia_k_min: usize,
    pub ia_k_max: usize,
    pub ia_epochs_min: usize,
    pub ia_epochs_max: usize,
    pub ia_step_min: f64,
    pub ia_step_max: f64,

    pub alpha_min: f64,
    pub alpha_max: f64,
    pub alpha_count: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        let sample = SampleConfig::default();
        let excl = ExclusionConfig::default();
        let space = SearchSpace::default();
        RunConfig {
            manifest: None,
            wals: None,
            wals_features: None,
            wals_language_column: None,
            wals_rows: WalsRows::default(),
            out: PathBuf::from("out"),
            target_tokens: sample.target_tokens,
            repetitions: sample.repetitions,
            seed: sample.seed,
            jobs: 0,
            lowercase: false,
            min_feature_keys: excl.min_feature_keys,
            script_deny: excl.script_deny,
            script_allow: excl.script_allow,
            measures: Measure::ALL.to_vec(),
            compression_level: Compressor::default().level,
            synthesis_unit: SynthesisUnit::default(),
            ia_folds: CvConfig::default().folds,
            ia_draws: CvConfig::default().draws,
            ia_k_min: space.k_min,
            ia_k_max: space.k_max,
            ia_epochs_min: space.epochs_min,
            ia_epochs_max: space.epochs_max,
            ia_step_min: space.step_min,
            ia_step_max: space.step_max,
            alpha_min: 1e-3,
            alpha_max: 1e3,
            alpha_count: 13,
        }
    }
}

impl RunConfig {
    pub fn from_toml(text: &str, base: &Path) -> Result<RunConfig> {
        let mut cfg: RunConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.resolve_paths(base);
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<RunConfig> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::file(path, e))?;
        let base = path.parent().unwrap_or_else(|| Path::new("."));
        RunConfig::from_toml(&text, base)
    }

    fn resolve_paths(&mut self, base: &Path) {
        let fix = |p: &mut PathBuf| {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        };
        self.manifest.as_mut().map(fix);
        self.wals.as_mut().map(fix);
        self.wals_features.as_mut().map(fix);
        fix(&mut self.out);
    }

    pub fn sample_config(&self) -> SampleConfig {
        SampleConfig {
            target_tokens: self.target_tokens,
            repetitions: self.repetitions,
            seed: self.seed,
        }
    }

    pub fn exclusion_config(&self) -> ExclusionConfig {
        ExclusionConfig {
            min_feature_keys: self.min_feature_keys,
            script_deny: self.script_deny.clone(),
            script_allow: self.script_allow.clone(),
        }
    }

    pub fn parse_options(&self) -> ParseOptions {
        ParseOptions { lowercase: self.lowercase }
    }

    pub fn measure_settings(&self) -> MeasureSettings {
        MeasureSettings {
            synthesis_unit: self.synthesis_unit,
            compressor: Compressor { level: self.compression_level },
        }
    }

    pub fn cv_config(&self) -> CvConfig {
        CvConfig {
            folds: self.ia_folds,
            draws: self.ia_draws,
            space: SearchSpace {
                k_min: self.ia_k_min,
                k_max: self.ia_k_max,
                epochs_min: self.ia_epochs_min,
                epochs_max: self.ia_epochs_max,
                step_min: self.ia_step_min,
                step_max: self.ia_step_max,
            },
        }
    }

    pub fn alpha_grid(&self) -> Vec<f64> {
        log_grid(self.alpha_min, self.alpha_max, self.alpha_count)
    }

    pub fn wals_feature_ids(&self) -> Result<Vec<String>> {
        match &self.wals_features {
            Some(p) => Ok(read_feature_list(p)?.into_iter().map(|f| f.id).collect()),
            None => Ok(default_feature_ids()),
        }
    }

    /// Checks values, plus the input files needed by the measuring stage.
    pub fn validate_for_measure(&self) -> Result<()> {
        self.validate()?;
        match &self.manifest {
            None => Err(Error::Config("`manifest` is required".into())),
            Some(p) if !p.is_file() => Err(Error::Config(format!("manifest {} not found", p.display()))),
            Some(_) => Ok(()),
        }
    }

    /// Checks values; the WALS files are optional but must exist if named.
    pub fn validate(&self) -> Result<()> {
        self.sample_config().validate()?;
        for p in [&self.wals, &self.wals_features].into_iter().flatten() {
            if !p.is_file() {
                return Err(Error::Config(format!("{} not found", p.display())));
            }
        }
        if self.measures.is_empty() {
            return Err(Error::Config("`measures` is empty".into()));
        }
        if !(0..=10).contains(&self.compression_level) {
            return Err(Error::Config("`compression_level` must be 0..=10".into()));
        }
        if self.ia_folds < 2 || self.ia_draws == 0 {
            return Err(Error::Config("need `ia_folds` >= 2 and `ia_draws` >= 1".into()));
        }
        if self.ia_k_min == 0
            || self.ia_k_min > self.ia_k_max
            || self.ia_epochs_min == 0
            || self.ia_epochs_min > self.ia_epochs_max
            || !(self.ia_step_min > 0.0 && self.ia_step_min <= self.ia_step_max)
        {
            return Err(Error::Config("invalid inflection search space".into()));
        }
        if !(self.alpha_min > 0.0 && self.alpha_min <= self.alpha_max) || self.alpha_count == 0 {
            return Err(Error::Config("invalid alpha grid".into()));
        }
        Ok(())
    }

    /// The settings that determine the outputs, as one header line.
    pub fn provenance(&self) -> String {
        let s = self.cv_config().space;
        format!(
            "# seed={} target_tokens={} repetitions={} compressor={} synthesis_unit={} lowercase={} \
             min_feature_keys={} ia_folds={} ia_draws={} ia_k={}..{} ia_epochs={}..{} ia_step={}..{} \
             alpha_grid={}..{}x{} wals_rows={}",
            self.seed,
            self.target_tokens,
            self.repetitions,
            self.measure_settings().compressor.describe(),
            match self.synthesis_unit {
                SynthesisUnit::Keys => "keys",
                SynthesisUnit::Pairs => "pairs",
            },
            self.lowercase,
            self.min_feature_keys,
            self.ia_folds,
            self.ia_draws,
            s.k_min,
            s.k_max,
            s.epochs_min,
            s.epochs_max,
            s.step_min,
            s.step_max,
            self.alpha_min,
            self.alpha_max,
            self.alpha_count,
            match self.wals_rows {
                WalsRows::Treebank => "treebank",
                WalsRows::LanguageMean => "language-mean",
            },
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_match_protocol() {
        let c = RunConfig::default();
        assert_eq!(c.target_tokens, 20_000);
        assert_eq!(c.repetitions, 100);
        assert_eq!(c.alpha_grid().len(), 13);
        assert_eq!(c.measures.len(), 8);
        assert!(c.validate().is_ok());
    }

    #[test]
    fn parses_flat_toml_and_resolves_paths() {
        let text = r#"
manifest = "tb.tsv"
out = "/abs/out"
seed = 7
repetitions = 5
measures = ["ttr", "neg_ia"]
script_deny = ["zh_gsd"]
wals_rows = "language-mean"
synthesis_unit = "pairs"
"#;
        let c = RunConfig::from_toml(text, Path::new("/base")).unwrap();
        assert_eq!(c.manifest.as_deref(), Some(Path::new("/base/tb.tsv")));
        assert_eq!(c.out, PathBuf::from("/abs/out"));
        assert_eq!(c.seed, 7);
        assert_eq!(c.measures, vec![Measure::Ttr, Measure::NegIa]);
        assert_eq!(c.wals_rows, WalsRows::LanguageMean);
        assert_eq!(c.synthesis_unit, SynthesisUnit::Pairs);
        assert_eq!(c.target_tokens, 20_000);
    }

    #[test]
    fn rejects_unknown_keys_and_bad_values() {
        assert!(RunConfig::from_toml("sedd = 1", Path::new(".")).is_err());
        let c = RunConfig { repetitions: 0, ..RunConfig::default() };
        assert!(c.validate().is_err());
        let c = RunConfig { alpha_min: 0.0, ..RunConfig::default() };
        assert!(c.validate().is_err());
        assert!(RunConfig::default().validate_for_measure().is_err());
    }

    #[test]
    fn provenance_is_stable() {
        let a = RunConfig::default().provenance();
        assert!(a.starts_with("# seed=1 "));
        assert!(a.contains("compressor=deflate-raw/miniz_oxide/level=9"));
        assert_eq!(a, RunConfig::default().provenance());
    }
}
