use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct PcaResult {
    /// Column means removed before the decomposition.
    pub means: Vec<f64>,
    /// One column per component (variables × components), unit length.
    pub loadings: DMatrix<f64>,
    /// Projection of each row on each component (rows × components).
    pub scores: DMatrix<f64>,
    pub singular_values: Vec<f64>,
    pub explained_variance_ratio: Vec<f64>,
}

impl PcaResult {
    pub fn n_components(&self) -> usize {
        self.singular_values.len()
    }

    /// `scores · loadingsᵀ + means`.
    pub fn reconstruct(&self) -> DMatrix<f64> {
        let mut x = &self.scores * self.loadings.transpose();
        for (j, mean) in self.means.iter().enumerate() {
            x.column_mut(j).add_scalar_mut(*mean);
        }
        x
    }
}

/// PCA by singular value decomposition of the column-centered matrix.
///
/// Components are ordered by decreasing singular value. Each component is
/// oriented so that its loading on the first column is non-negative (or,
/// if that loading is zero, the first nonzero one).
pub fn pca(x: &DMatrix<f64>) -> Result<PcaResult> {
    let (n, p) = x.shape();
    if n < 2 || p == 0 {
        return Err(Error::InsufficientData {
            analysis: "PCA".into(),
            needed: 2,
            available: n,
        });
    }
    let means: Vec<f64> = (0..p).map(|j| x.column(j).mean()).collect();
    let mut centered = x.clone();
    for (j, mean) in means.iter().enumerate() {
        centered.column_mut(j).add_scalar_mut(-mean);
    }
    let scale = x.amax().max(1.0);
    if centered.amax() <= 1e-12 * scale {
        return Err(Error::Degenerate("all rows are equal".into()));
    }

    let svd = faer::Mat::<f64>::from_fn(n, p, |i, j| centered[(i, j)])
        .thin_svd()
        .map_err(|e| Error::Degenerate(format!("SVD did not converge: {e:?}")))?;
    let (sv, v) = (svd.S(), svd.V());
    let k = n.min(p);
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| sv[b].total_cmp(&sv[a]));

    let mut loadings = DMatrix::zeros(p, k);
    let mut singular_values = Vec::with_capacity(k);
    for (c, &src) in order.iter().enumerate() {
        let mut col: Vec<f64> = (0..p).map(|j| v[(j, src)]).collect();
        let pivot = col.iter().copied().find(|a| a.abs() > 1e-12).unwrap_or(0.0);
        if pivot < 0.0 {
            col.iter_mut().for_each(|a| *a = -*a);
        }
        loadings.set_column(c, &DVector::from_vec(col));
        singular_values.push(sv[src]);
    }
    let scores = &centered * &loadings;
    let total: f64 = singular_values.iter().map(|s| s * s).sum();
    let explained_variance_ratio = singular_values.iter().map(|s| s * s / total).collect();

    Ok(PcaResult {
        means,
        loadings,
        scores,
        singular_values,
        explained_variance_ratio,
    })
}
