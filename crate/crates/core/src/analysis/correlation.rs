use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, StudentsT};

use super::MeasureMatrix;
use crate::error::{Error, Result};

pub const SIGNIFICANCE_LEVEL: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Pearson,
    Spearman,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Pearson => "pearson",
            Method::Spearman => "spearman",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pearson" => Ok(Method::Pearson),
            "spearman" => Ok(Method::Spearman),
            _ => Err(Error::InvalidArgument(format!("unknown correlation method `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Correlation {
    pub r: f64,
    pub n: usize,
    /// Two-sided p-value from the t approximation with n - 2 degrees of freedom.
    pub p_value: f64,
    pub significant: bool,
}

fn check_inputs(x: &[f64], y: &[f64]) -> Result<()> {
    if x.len() != y.len() {
        return Err(Error::InvalidArgument(format!(
            "vectors differ in length ({} vs {})",
            x.len(),
            y.len()
        )));
    }
    if x.len() < 3 {
        return Err(Error::InsufficientData {
            analysis: "correlation".into(),
            needed: 3,
            available: x.len(),
        });
    }
    Ok(())
}

fn pearson_r(x: &[f64], y: &[f64]) -> Result<f64> {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        let (dx, dy) = (a - mx, b - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(Error::Degenerate("correlation undefined for a constant vector".into()));
    }
    Ok((sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0))
}

/// Two-sided p-value of `r` under the t approximation.
pub fn t_test_p_value(r: f64, n: usize) -> f64 {
    if n < 3 {
        return 1.0;
    }
    let df = (n - 2) as f64;
    if r.abs() >= 1.0 {
        return 0.0;
    }
    let t = r * (df / (1.0 - r * r)).sqrt();
    let dist = StudentsT::new(0.0, 1.0, df).expect("positive degrees of freedom");
    (2.0 * (1.0 - dist.cdf(t.abs()))).clamp(0.0, 1.0)
}

fn with_significance(r: f64, n: usize) -> Correlation {
    let p_value = t_test_p_value(r, n);
    Correlation {
        r,
        n,
        p_value,
        significant: p_value < SIGNIFICANCE_LEVEL,
    }
}

pub fn pearson(x: &[f64], y: &[f64]) -> Result<Correlation> {
    check_inputs(x, y)?;
    Ok(with_significance(pearson_r(x, y)?, x.len()))
}

/// 1-based ranks; tied values share the mean of their positions.
pub fn average_ranks(x: &[f64]) -> Vec<f64> {
    let mut idx: Vec<usize> = (0..x.len()).collect();
    idx.sort_by(|&a, &b| x[a].total_cmp(&x[b]));
    let mut ranks = vec![0.0; x.len()];
    let mut start = 0;
    while start < idx.len() {
        let mut end = start + 1;
        while end < idx.len() && x[idx[end]] == x[idx[start]] {
            end += 1;
        }
        let rank = (start + end + 1) as f64 / 2.0;
        for &i in &idx[start..end] {
            ranks[i] = rank;
        }
        start = end;
    }
    ranks
}

pub fn spearman(x: &[f64], y: &[f64]) -> Result<Correlation> {
    check_inputs(x, y)?;
    let r = pearson_r(&average_ranks(x), &average_ranks(y))?;
    Ok(with_significance(r, x.len()))
}

pub fn correlate(method: Method, x: &[f64], y: &[f64]) -> Result<Correlation> {
    match method {
        Method::Pearson => pearson(x, y),
        Method::Spearman => spearman(x, y),
    }
}

/// Two-sided permutation p-value: the share of `permutations` shuffles of
/// `y` whose |r| reaches the observed |r| (with the +1 correction).
pub fn permutation_p_value<R: Rng + ?Sized>(
    method: Method,
    x: &[f64],
    y: &[f64],
    permutations: usize,
    rng: &mut R,
) -> Result<f64> {
    let observed = correlate(method, x, y)?.r.abs();
    let mut shuffled = y.to_vec();
    let mut hits = 0usize;
    for _ in 0..permutations {
        shuffled.shuffle(rng);
        let r = match method {
            Method::Pearson => pearson_r(x, &shuffled)?,
            Method::Spearman => pearson_r(&average_ranks(x), &average_ranks(&shuffled))?,
        };
        if r.abs() >= observed - 1e-12 {
            hits += 1;
        }
    }
    Ok((hits + 1) as f64 / (permutations + 1) as f64)
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationMatrix {
    pub method: Method,
    pub columns: Vec<String>,
    /// `None` where fewer than three complete pairs exist or a column is
    /// constant over them.
    pub values: Vec<Vec<Option<Correlation>>>,
}

impl CorrelationMatrix {
    pub fn r(&self, i: usize, j: usize) -> Option<f64> {
        self.values[i][j].map(|c| c.r)
    }

    pub fn get(&self, a: &str, b: &str) -> Option<f64> {
        let i = self.columns.iter().position(|c| c == a)?;
        let j = self.columns.iter().position(|c| c == b)?;
        self.r(i, j)
    }

    /// Cells that could not be computed, as column-name pairs (i < j).
    pub fn undefined(&self) -> Vec<(&str, &str)> {
        let mut out = Vec::new();
        for i in 0..self.columns.len() {
            for j in i + 1..self.columns.len() {
                if self.values[i][j].is_none() {
                    out.push((self.columns[i].as_str(), self.columns[j].as_str()));
                }
            }
        }
        out
    }
}

/// Pairwise-complete correlation matrix. The diagonal is 1.
pub fn correlation_matrix(m: &MeasureMatrix, method: Method) -> CorrelationMatrix {
    let k = m.columns.len();
    let mut values = vec![vec![None; k]; k];
    for i in 0..k {
        let n_i = m.column(i).filter(Option::is_some).count();
        values[i][i] = Some(Correlation {
            r: 1.0,
            n: n_i,
            p_value: 0.0,
            significant: true,
        });
        for j in i + 1..k {
            let (x, y) = m.complete_pairs(i, j);
            let cell = correlate(method, &x, &y).ok();
            values[i][j] = cell;
            values[j][i] = cell;
        }
    }
    CorrelationMatrix {
        method,
        columns: m.columns.clone(),
        values,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::derive_stream;
    use proptest::prelude::*;

    #[test]
    fn exact_linear_relations() {
        let x = [1.0, 2.0, 3.0, 4.0, 5.0];
        let y: Vec<f64> = x.iter().map(|v| 2.0 * v + 1.0).collect();
        assert!((pearson(&x, &y).unwrap().r - 1.0).abs() < 1e-12);
        let neg: Vec<f64> = x.iter().map(|v| -v).collect();
        assert!((pearson(&x, &neg).unwrap().r + 1.0).abs() < 1e-12);
        assert_eq!(pearson(&x, &y).unwrap().p_value, 0.0);
    }

    #[test]
    fn hand_computed_pearson() {
        let r = pearson(&[1.0, 2.0, 3.0, 4.0], &[1.0, 3.0, 2.0, 4.0]).unwrap();
        assert!((r.r - 0.8).abs() < 1e-12);
        // t = 0.8 * sqrt(2 / 0.36) = 1.8856, df = 2 -> p ≈ 0.2
        assert!((r.p_value - 0.2).abs() < 1e-3, "{}", r.p_value);
        assert!(!r.significant);
    }

    #[test]
    fn monotone_spearman() {
        let x = [0.1, 0.5, 1.0, 2.0, 3.5];
        let y: Vec<f64> = x.iter().map(|v: &f64| v.exp()).collect();
        assert!((spearman(&x, &y).unwrap().r - 1.0).abs() < 1e-12);
        let rev: Vec<f64> = y.iter().rev().copied().collect();
        assert!((spearman(&x, &rev).unwrap().r + 1.0).abs() < 1e-12);
    }

    #[test]
    fn tied_ranks() {
        assert_eq!(average_ranks(&[1.0, 2.0, 2.0, 4.0]), [1.0, 2.5, 2.5, 4.0]);
        assert_eq!(average_ranks(&[3.0, 1.0, 3.0, 3.0]), [3.0, 1.0, 3.0, 3.0]);
    }

    #[test]
    fn degenerate_inputs() {
        assert!(matches!(pearson(&[1.0, 1.0, 1.0], &[1.0, 2.0, 3.0]), Err(Error::Degenerate(_))));
        assert!(matches!(pearson(&[1.0, 2.0], &[1.0, 2.0]), Err(Error::InsufficientData { .. })));
        assert!(pearson(&[1.0, 2.0, 3.0], &[1.0, 2.0]).is_err());
    }

    #[test]
    fn significance_threshold() {
        // With n = 30 the two-sided 5% critical |r| is about 0.361.
        assert!(t_test_p_value(0.37, 30) < 0.05);
        assert!(t_test_p_value(0.35, 30) > 0.05);
    }

    #[test]
    fn permutation_agrees_with_strong_signal() {
        let x: Vec<f64> = (0..12).map(f64::from).collect();
        let y: Vec<f64> = x.iter().map(|v| v * 0.5 + (v * 7.0).sin() * 0.1).collect();
        let p = permutation_p_value(Method::Spearman, &x, &y, 500, &mut derive_stream(0, "perm", 0)).unwrap();
        assert!(p < 0.01);
    }

    #[test]
    fn matrix_shape_and_duplicates() {
        let m = MeasureMatrix::new(
            vec!["a".into(), "b".into(), "c".into(), "d".into()],
            vec!["x".into(), "y".into(), "x2".into(), "sparse".into()],
            vec![
                vec![Some(1.0), Some(2.0), Some(1.0), Some(1.0)],
                vec![Some(2.0), Some(1.0), Some(2.0), None],
                vec![Some(3.0), Some(5.0), Some(3.0), None],
                vec![Some(4.0), Some(3.0), Some(4.0), Some(0.0)],
            ],
        );
        let c = correlation_matrix(&m, Method::Pearson);
        for i in 0..4 {
            assert_eq!(c.r(i, i), Some(1.0));
        }
        assert!((c.get("x", "x2").unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(c.r(0, 1), c.r(1, 0));
        assert_eq!(c.undefined(), [("x", "sparse"), ("y", "sparse"), ("x2", "sparse")]);
    }

    proptest! {
        #[test]
        fn affine_and_monotone_invariance(
            xs in prop::collection::vec(-100.0f64..100.0, 4..25),
            ys in prop::collection::vec(-100.0f64..100.0, 25),
            scale in 0.1f64..10.0,
            shift in -5.0f64..5.0,
        ) {
            let y = &ys[..xs.len()];
            if let (Ok(p), Ok(s)) = (pearson(&xs, y), spearman(&xs, y)) {
                prop_assert!(p.r.abs() <= 1.0 && s.r.abs() <= 1.0);
                let xa: Vec<f64> = xs.iter().map(|v| v * scale + shift).collect();
                prop_assert!((pearson(&xa, y).unwrap().r - p.r).abs() < 1e-9);
                let xm: Vec<f64> = xs.iter().map(|v| v.powi(3) + v).collect();
                prop_assert!((spearman(&xm, y).unwrap().r - s.r).abs() < 1e-12);
                prop_assert!((pearson(y, &xs).unwrap().r - p.r).abs() < 1e-12);
            }
        }
    }
}
