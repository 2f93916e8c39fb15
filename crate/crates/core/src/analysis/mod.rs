//! Joint analysis of measure vectors.

mod correlation;
mod pca;
mod ridge;
mod standardize;

pub use correlation::{
    average_ranks, correlate, correlation_matrix, pearson, permutation_p_value, spearman, t_test_p_value,
    Correlation, CorrelationMatrix, Method, SIGNIFICANCE_LEVEL,
};
pub use pca::{pca, PcaResult};
pub use ridge::{default_alpha_grid, log_grid, ridge_fit_predict, ridge_loocv, RidgeReport};
pub use standardize::{standardize, standardize_vector, Standardized};

use nalgebra::DMatrix;

/// Rows are treebanks, columns are measures; `None` marks a missing value.
/// Missing values are never imputed: each analysis selects the rows that
/// are complete for the columns it uses.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasureMatrix {
    pub rows: Vec<String>,
    pub columns: Vec<String>,
    pub values: Vec<Vec<Option<f64>>>,
}

impl MeasureMatrix {
    pub fn new(rows: Vec<String>, columns: Vec<String>, values: Vec<Vec<Option<f64>>>) -> Self {
        assert_eq!(rows.len(), values.len(), "one value row per row id");
        assert!(values.iter().all(|r| r.len() == columns.len()), "ragged measure matrix");
        MeasureMatrix { rows, columns, values }
    }

    pub fn column(&self, j: usize) -> impl Iterator<Item = Option<f64>> + '_ {
        self.values.iter().map(move |r| r[j])
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    /// Values of columns `i` and `j` on rows where both are present.
    pub fn complete_pairs(&self, i: usize, j: usize) -> (Vec<f64>, Vec<f64>) {
        self.values
            .iter()
            .filter_map(|r| Some((r[i]?, r[j]?)))
            .unzip()
    }

    /// Indices of rows with every column present.
    pub fn complete_rows(&self) -> Vec<usize> {
        (0..self.rows.len())
            .filter(|&i| self.values[i].iter().all(Option::is_some))
            .collect()
    }

    /// Dense matrix of the complete rows, with their ids.
    pub fn complete_dense(&self) -> (Vec<String>, DMatrix<f64>) {
        let rows = self.complete_rows();
        let dense = DMatrix::from_fn(rows.len(), self.columns.len(), |i, j| {
            self.values[rows[i]][j].expect("complete row")
        });
        (rows.iter().map(|&i| self.rows[i].clone()).collect(), dense)
    }

    /// Keep only the listed rows, in the given order.
    pub fn select_rows(&self, keep: &[usize]) -> MeasureMatrix {
        MeasureMatrix {
            rows: keep.iter().map(|&i| self.rows[i].clone()).collect(),
            columns: self.columns.clone(),
            values: keep.iter().map(|&i| self.values[i].clone()).collect(),
        }
    }
}
