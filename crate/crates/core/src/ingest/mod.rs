//! CoNLL-U ingestion, treebank manifests and exclusion rules.

mod conllu;
mod exclusion;
mod manifest;

use std::collections::{BTreeMap, BTreeSet};

pub use conllu::{parse_conllu, parse_conllu_with, ParseOptions};
pub use exclusion::{apply_exclusions, ExclusionConfig, ExclusionReason, Excluded, Partition};
pub use manifest::{read_manifest, ManifestEntry};

/// Morphological features of one token, keyed by feature name.
pub type Features = BTreeMap<String, String>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub form: String,
    /// `None` when the treebank leaves the lemma unannotated (`_`).
    pub lemma: Option<String>,
    pub upos: String,
    pub feats: Features,
}

impl Token {
    pub fn new(form: impl Into<String>, lemma: Option<&str>, feats: &[(&str, &str)]) -> Self {
        Token {
            form: form.into(),
            lemma: lemma.map(str::to_owned),
            upos: "X".to_owned(),
            feats: feats
                .iter()
                .map(|(k, v)| ((*k).to_owned(), (*v).to_owned()))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Sentence {
    pub tokens: Vec<Token>,
}

impl Sentence {
    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }
}

impl From<Vec<Token>> for Sentence {
    fn from(tokens: Vec<Token>) -> Self {
        Sentence { tokens }
    }
}

/// A parsed treebank. Immutable once built.
#[derive(Debug, Clone, PartialEq)]
pub struct Treebank {
    pub id: String,
    pub language_code: String,
    pub sentences: Vec<Sentence>,
    pub n_tokens: usize,
    pub n_feature_keys: usize,
}

impl Treebank {
    pub fn new(id: impl Into<String>, language_code: impl Into<String>, sentences: Vec<Sentence>) -> Self {
        let sentences: Vec<Sentence> = sentences.into_iter().filter(|s| !s.is_empty()).collect();
        let n_tokens = sentences.iter().map(Sentence::len).sum();
        let keys: BTreeSet<&str> = sentences
            .iter()
            .flat_map(|s| &s.tokens)
            .flat_map(|t| t.feats.keys())
            .map(String::as_str)
            .collect();
        let n_feature_keys = keys.len();
        Treebank {
            id: id.into(),
            language_code: language_code.into(),
            sentences,
            n_tokens,
            n_feature_keys,
        }
    }

    pub fn tokens(&self) -> impl Iterator<Item = &Token> {
        self.sentences.iter().flat_map(|s| &s.tokens)
    }
}
