//! Corpus-based measures of morphological complexity.
//!
//! The pipeline reads CoNLL-U treebanks, draws fixed-size bootstrap samples,
//! computes eight complexity measures per treebank and relates them to each
//! other (correlation, PCA) and to WALS typological features (ridge regression
//! with leave-one-out cross validation).
//!
//! ```text
//! ingest ──► sampling ──► measures / inflection ──► analysis ──► report
//!                                          wals ──┘
//! ```

pub mod analysis;
pub mod error;
pub mod inflection;
pub mod ingest;
pub mod measures;
pub mod report;
pub mod rng;
pub mod sampling;
pub mod wals;

pub use error::{Error, Result};
pub use ingest::{parse_conllu, Sentence, Token, Treebank};
pub use measures::Measure;
pub use sampling::{Sample, SampleConfig};
