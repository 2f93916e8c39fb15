use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use super::entropy::{plugin_entropy, FrequencyTable};
use crate::sampling::Sample;

/// What inflectional synthesis counts per lemma.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SynthesisUnit {
    /// Distinct feature keys (`Case`, `Number`, ...).
    #[default]
    Keys,
    /// Distinct `Key=Value` pairs.
    Pairs,
}

/// IS: the largest number of distinct feature keys seen on one lemma.
pub fn inflectional_synthesis(sample: &Sample<'_>) -> Option<usize> {
    inflectional_synthesis_with(sample, SynthesisUnit::Keys)
}

pub fn inflectional_synthesis_with(sample: &Sample<'_>, unit: SynthesisUnit) -> Option<usize> {
    let mut per_lemma: HashMap<&str, BTreeSet<(&str, &str)>> = HashMap::new();
    for tok in sample.tokens() {
        let Some(lemma) = tok.lemma.as_deref() else { continue };
        if tok.feats.is_empty() {
            continue;
        }
        let set = per_lemma.entry(lemma).or_default();
        for (k, v) in &tok.feats {
            let v = match unit {
                SynthesisUnit::Keys => "",
                SynthesisUnit::Pairs => v.as_str(),
            };
            set.insert((k.as_str(), v));
        }
    }
    per_lemma.values().map(BTreeSet::len).max()
}

/// MFH: entropy of feature–value pairs, one count per pair per token.
pub fn feature_entropy(sample: &Sample<'_>) -> Option<f64> {
    let table: FrequencyTable<(&str, &str)> = sample
        .tokens()
        .filter(|t| t.lemma.is_some())
        .flat_map(|t| t.feats.iter().map(|(k, v)| (k.as_str(), v.as_str())))
        .collect();
    plugin_entropy(&table).ok()
}
