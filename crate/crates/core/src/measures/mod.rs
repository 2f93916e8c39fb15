//! Sample-level complexity measures.
//!
//! Every measure is a pure function of a [`Sample`] (and, for WS, a random
//! stream). Measures that need lemma or feature annotation return `None`
//! when the sample carries none, so unannotated treebanks are reported as
//! unavailable instead of scoring zero.

mod entropy;
mod lexical;
mod morph;
mod structure;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use entropy::{plugin_entropy, FrequencyTable};
pub use lexical::{lemma_entropy, msp, ttr, word_entropy};
pub use morph::{feature_entropy, inflectional_synthesis, inflectional_synthesis_with, SynthesisUnit};
pub use structure::{
    compression_ratio, distort, distortion_map, serialize, ws_from_texts, word_structure_information,
    CharUnigramModel, Compressor, DistortionMap,
};

use crate::error::{Error, Result};
use crate::rng::RngStream;
use crate::sampling::{MeasureFn, Sample};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Measure {
    Ttr,
    Ws,
    Wh,
    Lh,
    Msp,
    Is,
    Mfh,
    NegIa,
}

impl Measure {
    pub const ALL: [Measure; 8] = [
        Measure::Ttr,
        Measure::Ws,
        Measure::Wh,
        Measure::Lh,
        Measure::Msp,
        Measure::Is,
        Measure::Mfh,
        Measure::NegIa,
    ];

    /// Measures computed on every bootstrap sample (all but inflection
    /// accuracy, which runs once on a single sample).
    pub const SAMPLE_LEVEL: [Measure; 7] = [
        Measure::Ttr,
        Measure::Ws,
        Measure::Wh,
        Measure::Lh,
        Measure::Msp,
        Measure::Is,
        Measure::Mfh,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Measure::Ttr => "ttr",
            Measure::Ws => "ws",
            Measure::Wh => "wh",
            Measure::Lh => "lh",
            Measure::Msp => "msp",
            Measure::Is => "is",
            Measure::Mfh => "mfh",
            Measure::NegIa => "neg_ia",
        }
    }

    pub fn index(self) -> usize {
        Measure::ALL.iter().position(|&m| m == self).expect("listed")
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Measure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Measure::ALL
            .into_iter()
            .find(|m| m.name() == s || (s == "-ia" && *m == Measure::NegIa))
            .ok_or_else(|| Error::InvalidArgument(format!("unknown measure `{s}`")))
    }
}

/// Knobs shared by the sample-level measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct MeasureSettings {
    pub synthesis_unit: SynthesisUnit,
    pub compressor: Compressor,
}

impl Default for MeasureSettings {
    fn default() -> Self {
        MeasureSettings {
            synthesis_unit: SynthesisUnit::Keys,
            compressor: Compressor::default(),
        }
    }
}

impl MeasureSettings {
    /// Evaluate one sample-level measure.
    pub fn evaluate(&self, measure: Measure, sample: &Sample<'_>, rng: &mut RngStream) -> Result<Option<f64>> {
        Ok(match measure {
            Measure::Ttr => ttr(sample),
            Measure::Ws => word_structure_information(sample, rng, &self.compressor)?,
            Measure::Wh => word_entropy(sample),
            Measure::Lh => lemma_entropy(sample),
            Measure::Msp => msp(sample),
            Measure::Is => inflectional_synthesis_with(sample, self.synthesis_unit).map(|n| n as f64),
            Measure::Mfh => feature_entropy(sample),
            Measure::NegIa => {
                return Err(Error::InvalidArgument(
                    "inflection accuracy is not a sample-level measure".into(),
                ))
            }
        })
    }

    /// Closures for [`crate::sampling::run_repetitions`].
    pub fn measure_fns<'s>(&'s self, measures: &[Measure]) -> Vec<(Measure, Box<MeasureFn<'s>>)> {
        measures
            .iter()
            .filter(|m| **m != Measure::NegIa)
            .map(|&m| {
                let f: Box<MeasureFn<'s>> = Box::new(move |s: &Sample<'_>, rng: &mut RngStream| self.evaluate(m, s, rng));
                (m, f)
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for m in Measure::ALL {
            assert_eq!(m.name().parse::<Measure>().unwrap(), m);
            assert_eq!(Measure::ALL[m.index()], m);
        }
        assert_eq!("-ia".parse::<Measure>().unwrap(), Measure::NegIa);
        assert!("xyz".parse::<Measure>().is_err());
    }
}
