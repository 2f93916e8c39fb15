//! Pipeline orchestration and output files.

mod analyze;
mod config;
mod measure;
mod plot;
pub mod tsv;

pub use analyze::{
    analysis_matrix, analyze, cmd_analyze, pca_outcome, ridge_for_target, write_analysis, Analysis, PcaOutcome,
    RidgeRow, WalsInput, CORRELATIONS_FILE, CORRELATION_TABLE_FILE, ERRORS_FILE, PCA_LOADINGS_FILE, PCA_SCORES_FILE,
    PCA_VARIANCE_FILE, RIDGE_FILE,
};
pub use config::{RunConfig, WalsRows};
pub use measure::{
    cmd_measure, measure_entries, measure_treebank, Availability, MeasureCell, MeasureRun, TreebankResult,
    TreebankStats,
};
pub use plot::{cmd_plot, MEASURES_SVG, PCA_COMPONENTS_SVG, PCA_SVG, RIDGE_SVG};
