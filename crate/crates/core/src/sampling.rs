//! Fixed-size bootstrap samples and aggregation over repetitions.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ingest::{Token, Treebank};
use crate::rng::{derive_labeled, derive_stream, RngStream};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct SampleConfig {
    pub target_tokens: usize,
    pub repetitions: usize,
    pub seed: u64,
}

impl Default for SampleConfig {
    fn default() -> Self {
        SampleConfig {
            target_tokens: 20_000,
            repetitions: 100,
            seed: 1,
        }
    }
}

impl SampleConfig {
    pub fn validate(&self) -> Result<()> {
        if self.target_tokens == 0 {
            return Err(Error::InvalidArgument("target_tokens must be at least 1".into()));
        }
        if self.repetitions == 0 {
            return Err(Error::InvalidArgument("repetitions must be at least 1".into()));
        }
        Ok(())
    }
}

/// Sentences drawn from a treebank. Borrowed slices keep sampling cheap; the
/// last slice may be a truncated sentence.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample<'a> {
    sentences: Vec<&'a [Token]>,
    n_tokens: usize,
}

impl<'a> Sample<'a> {
    pub fn from_sentences(sentences: Vec<&'a [Token]>) -> Self {
        let sentences: Vec<_> = sentences.into_iter().filter(|s| !s.is_empty()).collect();
        let n_tokens = sentences.iter().map(|s| s.len()).sum();
        Sample { sentences, n_tokens }
    }

    pub fn sentences(&self) -> &[&'a [Token]] {
        &self.sentences
    }

    pub fn tokens(&self) -> impl Iterator<Item = &'a Token> + '_ {
        self.sentences.iter().flat_map(|s| s.iter())
    }

    pub fn n_tokens(&self) -> usize {
        self.n_tokens
    }

    pub fn is_empty(&self) -> bool {
        self.n_tokens == 0
    }
}

/// Draw sentences uniformly with replacement until `target_tokens` is
/// reached; the final sentence is cut so the sample has exactly that many.
pub fn bootstrap_sample<'a, R: Rng + ?Sized>(
    treebank: &'a Treebank,
    target_tokens: usize,
    rng: &mut R,
) -> Result<Sample<'a>> {
    if treebank.sentences.is_empty() || treebank.n_tokens == 0 {
        return Err(Error::EmptyTreebank(treebank.id.clone()));
    }
    let mut sentences = Vec::new();
    let mut n = 0;
    while n < target_tokens {
        let s = &treebank.sentences[rng.random_range(0..treebank.sentences.len())];
        let take = s.tokens.len().min(target_tokens - n);
        sentences.push(&s.tokens[..take]);
        n += take;
    }
    Ok(Sample {
        sentences,
        n_tokens: n,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub mean: f64,
    /// Sample standard deviation (n - 1 denominator; 0 for a single value).
    pub stddev: f64,
    pub n: usize,
}

impl Summary {
    pub fn from_values(values: &[f64]) -> Option<Summary> {
        if values.is_empty() {
            return None;
        }
        let n = values.len();
        let mean = values.iter().sum::<f64>() / n as f64;
        let stddev = if n > 1 {
            let ss: f64 = values.iter().map(|v| (v - mean).powi(2)).sum();
            (ss / (n - 1) as f64).sqrt()
        } else {
            0.0
        };
        Some(Summary { mean, stddev, n })
    }
}

/// Per-measure summaries, in the order the measures were given. `None` marks
/// a measure unavailable in at least one repetition.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasureSummary {
    pub entries: Vec<(String, Option<Summary>)>,
}

impl MeasureSummary {
    pub fn get(&self, name: &str) -> Option<Summary> {
        self.entries.iter().find(|(n, _)| n == name).and_then(|(_, s)| *s)
    }
}

/// A sample-level measure. `Ok(None)` means the measure is unavailable for
/// this sample (e.g. no lemma annotation).
pub type MeasureFn<'f> = dyn Fn(&Sample<'_>, &mut RngStream) -> Result<Option<f64>> + Sync + 'f;

/// Run every measure on `config.repetitions` independent samples.
///
/// Repetition `r` samples with the stream derived from
/// `(seed, treebank id, r)`; each measure gets its own stream labelled by
/// its name. Repetitions run in parallel on the current rayon pool.
pub fn run_repetitions(
    treebank: &Treebank,
    config: &SampleConfig,
    measures: &[(&str, &MeasureFn<'_>)],
) -> Result<MeasureSummary> {
    config.validate()?;
    if measures.is_empty() {
        return Err(Error::InvalidArgument("no measures requested".into()));
    }
    let per_rep: Vec<Vec<Option<f64>>> = (0..config.repetitions)
        .into_par_iter()
        .map(|r| {
            run_one(treebank, config, measures, r).map_err(|e| Error::Repetition {
                index: r,
                source: Box::new(e),
            })
        })
        .collect::<Result<_>>()?;

    let entries = measures
        .iter()
        .enumerate()
        .map(|(m, (name, _))| {
            let values: Option<Vec<f64>> = per_rep.iter().map(|rep| rep[m]).collect();
            (name.to_string(), values.and_then(|v| Summary::from_values(&v)))
        })
        .collect();
    Ok(MeasureSummary { entries })
}

fn run_one(
    treebank: &Treebank,
    config: &SampleConfig,
    measures: &[(&str, &MeasureFn<'_>)],
    r: usize,
) -> Result<Vec<Option<f64>>> {
    let mut rng = derive_stream(config.seed, &treebank.id, r as u64);
    let sample = bootstrap_sample(treebank, config.target_tokens, &mut rng)?;
    measures
        .iter()
        .map(|(name, f)| {
            let mut stream = derive_labeled(config.seed, &treebank.id, r as u64, name);
            f(&sample, &mut stream)
        })
        .collect()
}
