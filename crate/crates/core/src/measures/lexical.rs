use std::collections::HashSet;

use super::entropy::{plugin_entropy, FrequencyTable};
use crate::sampling::Sample;

/// Type/token ratio over word forms.
pub fn ttr(sample: &Sample<'_>) -> Option<f64> {
    if sample.is_empty() {
        return None;
    }
    let types: HashSet<&str> = sample.tokens().map(|t| t.form.as_str()).collect();
    Some(types.len() as f64 / sample.n_tokens() as f64)
}

/// WH: entropy of the word-form distribution.
pub fn word_entropy(sample: &Sample<'_>) -> Option<f64> {
    let table: FrequencyTable<&str> = sample.tokens().map(|t| t.form.as_str()).collect();
    plugin_entropy(&table).ok()
}

/// LH: entropy of the lemma distribution, skipping unlemmatized tokens.
pub fn lemma_entropy(sample: &Sample<'_>) -> Option<f64> {
    let table: FrequencyTable<&str> = sample.tokens().filter_map(|t| t.lemma.as_deref()).collect();
    plugin_entropy(&table).ok()
}

/// MSP: word-form types per lemma type, over lemmatized tokens.
pub fn msp(sample: &Sample<'_>) -> Option<f64> {
    let mut forms = HashSet::new();
    let mut lemmas = HashSet::new();
    for tok in sample.tokens() {
        if let Some(lemma) = tok.lemma.as_deref() {
            forms.insert(tok.form.as_str());
            lemmas.insert(lemma);
        }
    }
    if lemmas.is_empty() {
        return None;
    }
    Some(forms.len() as f64 / lemmas.len() as f64)
}
