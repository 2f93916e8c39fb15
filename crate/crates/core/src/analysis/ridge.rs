//! Ridge regression evaluated by nested leave-one-out cross validation.
//!
//! The intercept is not penalized. All fits use the dual (kernel) form,
//! which is cheap here because there are far fewer rows (languages) than
//! one-hot columns. Inner LOO errors come from the exact hat-matrix identity
//! `e_i / (1 - H_ii)`, which holds for ridge with a fixed penalty.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RidgeReport {
    pub n: usize,
    /// RMSE of the outer leave-one-out predictions.
    pub rmse: f64,
    /// `1 - rmse`; a constant predictor of a standardized target scores
    /// about zero.
    pub error_reduction: f64,
    /// Alpha chosen by the inner search for each held-out row.
    pub chosen_alphas: Vec<f64>,
    pub predictions: Vec<f64>,
}

/// `count` values spaced evenly in log space over `[lo, hi]`.
pub fn log_grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    if count == 1 {
        return vec![lo];
    }
    let (a, b) = (lo.log10(), hi.log10());
    (0..count)
        .map(|i| 10f64.powf(a + (b - a) * i as f64 / (count - 1) as f64))
        .collect()
}

/// 13 values from 1e-3 to 1e3.
pub fn default_alpha_grid() -> Vec<f64> {
    log_grid(1e-3, 1e3, 13)
}

/// Centered training data with the eigendecomposition of its kernel.
struct DualFit {
    x_mean: DVector<f64>,
    y_mean: f64,
    centered: DMatrix<f64>,
    y_centered: DVector<f64>,
    eigvals: Vec<f64>,
    eigvecs: DMatrix<f64>,
    /// `Qᵀ (y - ȳ)`.
    qty: DVector<f64>,
}

impl DualFit {
    fn new(x: &DMatrix<f64>, y: &DVector<f64>) -> Self {
        let n = x.nrows();
        let x_mean = DVector::from_fn(x.ncols(), |j, _| x.column(j).mean());
        let mut centered = x.clone();
        for j in 0..x.ncols() {
            centered.column_mut(j).add_scalar_mut(-x_mean[j]);
        }
        let y_mean = y.mean();
        let y_centered = y.add_scalar(-y_mean);
        let kernel = &centered * centered.transpose();
        let eig = SymmetricEigen::new(kernel);
        let eigvals = eig.eigenvalues.iter().map(|v| v.max(0.0)).collect();
        let qty = eig.eigenvectors.transpose() * &y_centered;
        debug_assert_eq!(qty.len(), n);
        DualFit {
            x_mean,
            y_mean,
            centered,
            y_centered,
            eigvals,
            eigvecs: eig.eigenvectors,
            qty,
        }
    }

    /// Exact LOO RMSE on the training rows for `alpha`.
    fn loo_rmse(&self, alpha: f64) -> f64 {
        let n = self.eigvals.len();
        let shrink: Vec<f64> = self.eigvals.iter().map(|l| l / (l + alpha)).collect();
        let mut sse = 0.0;
        for i in 0..n {
            let q = self.eigvecs.row(i);
            let mut h_ii = 1.0 / n as f64;
            let mut fitted = 0.0;
            for k in 0..n {
                h_ii += q[k] * q[k] * shrink[k];
                fitted += q[k] * shrink[k] * self.qty[k];
            }
            let denom = 1.0 - h_ii;
            if denom <= 1e-12 {
                return f64::INFINITY;
            }
            let r = (self.y_centered[i] - fitted) / denom;
            sse += r * r;
        }
        (sse / n as f64).sqrt()
    }

    fn predict(&self, row: &DVector<f64>, alpha: f64) -> f64 {
        let k_vec = &self.centered * (row - &self.x_mean);
        let qk = self.eigvecs.transpose() * k_vec;
        let mut out = self.y_mean;
        for k in 0..self.eigvals.len() {
            out += qk[k] * self.qty[k] / (self.eigvals[k] + alpha);
        }
        out
    }
}

/// Fit ridge on `(x, y)` with penalty `alpha` and predict `row`.
pub fn ridge_fit_predict(x: &DMatrix<f64>, y: &[f64], alpha: f64, row: &[f64]) -> f64 {
    let fit = DualFit::new(x, &DVector::from_column_slice(y));
    fit.predict(&DVector::from_column_slice(row), alpha)
}

fn drop_row(x: &DMatrix<f64>, y: &[f64], skip: usize) -> (DMatrix<f64>, DVector<f64>) {
    let keep: Vec<usize> = (0..x.nrows()).filter(|&i| i != skip).collect();
    let xs = DMatrix::from_fn(keep.len(), x.ncols(), |i, j| x[(keep[i], j)]);
    let ys = DVector::from_iterator(keep.len(), keep.iter().map(|&i| y[i]));
    (xs, ys)
}

/// Nested leave-one-out evaluation.
///
/// For each row, alpha is picked by leave-one-out on the remaining rows;
/// the model refit on those rows predicts the held-out one. Ties in the
/// inner search go to the earlier grid value.
pub fn ridge_loocv(x: &DMatrix<f64>, target: &[f64], alphas: &[f64]) -> Result<RidgeReport> {
    let n = x.nrows();
    if n != target.len() {
        return Err(Error::InvalidArgument(format!(
            "design has {n} rows but target has {} values",
            target.len()
        )));
    }
    if n < 3 {
        return Err(Error::InsufficientData {
            analysis: "ridge LOOCV".into(),
            needed: 3,
            available: n,
        });
    }
    if alphas.is_empty() || alphas.iter().any(|a| !(*a > 0.0)) {
        return Err(Error::InvalidArgument("alpha grid must be nonempty and positive".into()));
    }

    let mut predictions = Vec::with_capacity(n);
    let mut chosen_alphas = Vec::with_capacity(n);
    for i in 0..n {
        let (xs, ys) = drop_row(x, target, i);
        let fit = DualFit::new(&xs, &ys);
        let mut best = (f64::INFINITY, alphas[0]);
        for &a in alphas {
            let e = fit.loo_rmse(a);
            if e < best.0 {
                best = (e, a);
            }
        }
        let row = DVector::from_iterator(x.ncols(), x.row(i).iter().copied());
        predictions.push(fit.predict(&row, best.1));
        chosen_alphas.push(best.1);
    }
    let mse = predictions
        .iter()
        .zip(target)
        .map(|(p, t)| (p - t).powi(2))
        .sum::<f64>()
        / n as f64;
    let rmse = mse.sqrt();
    Ok(RidgeReport {
        n,
        rmse,
        error_reduction: 1.0 - rmse,
        chosen_alphas,
        predictions,
    })
}
