use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// Z-scored columns, using the population standard deviation.
#[derive(Debug, Clone, PartialEq)]
pub struct Standardized {
    pub values: DMatrix<f64>,
    pub means: Vec<f64>,
    pub stddevs: Vec<f64>,
}

/// Standardize every column. `names` label columns in errors.
pub fn standardize(m: &DMatrix<f64>, names: &[String]) -> Result<Standardized> {
    let n = m.nrows();
    if n == 0 {
        return Err(Error::InsufficientData {
            analysis: "standardize".into(),
            needed: 1,
            available: 0,
        });
    }
    let mut values = m.clone();
    let mut means = Vec::with_capacity(m.ncols());
    let mut stddevs = Vec::with_capacity(m.ncols());
    for j in 0..m.ncols() {
        let col = m.column(j);
        let mean = col.sum() / n as f64;
        let var = col.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n as f64;
        let sd = var.sqrt();
        if !(sd > f64::EPSILON * mean.abs().max(1.0)) {
            let name = names.get(j).cloned().unwrap_or_else(|| format!("column {j}"));
            return Err(Error::ZeroVariance(name));
        }
        for v in values.column_mut(j).iter_mut() {
            *v = (*v - mean) / sd;
        }
        means.push(mean);
        stddevs.push(sd);
    }
    Ok(Standardized { values, means, stddevs })
}

pub fn standardize_vector(v: &[f64], name: &str) -> Result<Vec<f64>> {
    let m = DMatrix::from_column_slice(v.len(), 1, v);
    let s = standardize(&m, &[name.to_owned()])?;
    Ok(s.values.column(0).iter().copied().collect())
}
