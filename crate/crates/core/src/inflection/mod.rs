//! Inflection accuracy (IA).
//!
//! A linear classifier predicts the edit script that turns a lemma into its
//! inflected form given the morphological feature bundle. The measure is the
//! negated best mean exact-match accuracy under 3-fold cross validation with
//! a random hyperparameter search.

mod cv;
mod edit;
mod features;
mod model;

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

pub use cv::{cross_validate, fold_assignment, CvConfig, IaResult, SearchSpace};
pub use edit::{derive_edit_script, EditScript};
pub use features::{featurize, featurize_parts, Feature};
pub use model::{train, Hyperparams, InflectionModel};

use crate::error::Result;
use crate::ingest::{Features, Treebank};
use crate::rng::derive_labeled;
use crate::sampling::{bootstrap_sample, Sample};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct InflectionInstance {
    pub lemma: String,
    /// Sorted `Key=Value` pairs joined by `|`.
    pub feature_bundle: String,
    pub form: String,
}

impl InflectionInstance {
    /// `None` if any part is empty. Pair order does not matter.
    pub fn new(lemma: &str, pairs: &[(&str, &str)], form: &str) -> Option<Self> {
        let mut sorted: Vec<String> = pairs.iter().map(|(k, v)| format!("{k}={v}")).collect();
        sorted.sort();
        sorted.dedup();
        Self::from_bundle(lemma, &sorted.join("|"), form)
    }

    fn from_bundle(lemma: &str, bundle: &str, form: &str) -> Option<Self> {
        if lemma.is_empty() || form.is_empty() || bundle.is_empty() {
            return None;
        }
        Some(InflectionInstance {
            lemma: lemma.to_owned(),
            feature_bundle: bundle.to_owned(),
            form: form.to_owned(),
        })
    }
}

pub fn canonical_bundle(feats: &Features) -> String {
    feats
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join("|")
}

/// One instance per lemmatized, featured token; identical triples are kept
/// once, in order of first occurrence.
pub fn extract_instances(sample: &Sample<'_>) -> Vec<InflectionInstance> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for tok in sample.tokens() {
        let Some(lemma) = tok.lemma.as_deref() else { continue };
        if tok.feats.is_empty() {
            continue;
        }
        let Some(inst) = InflectionInstance::from_bundle(lemma, &canonical_bundle(&tok.feats), &tok.form) else {
            continue;
        };
        if seen.insert(inst.clone()) {
            out.push(inst);
        }
    }
    out
}

/// IA for a treebank: one bootstrap sample of `target_tokens`, then
/// [`cross_validate`]. `Ok(None)` when the sample has too few instances.
pub fn inflection_accuracy(
    treebank: &Treebank,
    target_tokens: usize,
    seed: u64,
    config: &CvConfig,
) -> Result<Option<IaResult>> {
    let mut rng = derive_labeled(seed, &treebank.id, 0, "ia-sample");
    let sample = bootstrap_sample(treebank, target_tokens, &mut rng)?;
    let instances = extract_instances(&sample);
    let mut cv_rng = derive_labeled(seed, &treebank.id, 0, "ia-cv");
    Ok(cross_validate(&instances, config, &mut cv_rng))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ingest::Token;

    #[test]
    fn bundle_is_order_insensitive() {
        let a = InflectionInstance::new("x", &[("Number", "Sing"), ("Case", "Nom")], "x").unwrap();
        let b = InflectionInstance::new("x", &[("Case", "Nom"), ("Number", "Sing")], "x").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.feature_bundle, "Case=Nom|Number=Sing");
        assert!(InflectionInstance::new("x", &[], "x").is_none());
    }

    #[test]
    fn extraction_rules() {
        let walked = Token::new("walked", Some("walk"), &[("Tense", "Past")]);
        let mut toks = vec![walked.clone(); 40];
        toks.push(Token::new("the", Some("the"), &[]));
        toks.push(Token::new("dogs", None, &[("Number", "Plur")]));
        toks.push(Token::new("wended", Some("walk"), &[("Tense", "Past")]));
        let s = Sample::from_sentences(vec![&toks]);
        let inst = extract_instances(&s);
        assert_eq!(inst.len(), 2);
        assert_eq!(inst[0].feature_bundle, "Tense=Past");
        assert_eq!(inst[0].form, "walked");
        assert_eq!(inst[1].form, "wended");
    }
}
