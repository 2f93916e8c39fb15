use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::model::{train, Hyperparams};
use super::InflectionInstance;
use crate::rng::RngStream;

/// Ranges for the random hyperparameter search.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SearchSpace {
    pub k_min: usize,
    pub k_max: usize,
    pub epochs_min: usize,
    pub epochs_max: usize,
    /// The step is drawn log-uniformly from `[step_min, step_max]`.
    pub step_min: f64,
    pub step_max: f64,
}

impl Default for SearchSpace {
    fn default() -> Self {
        SearchSpace {
            k_min: 1,
            k_max: 4,
            epochs_min: 5,
            epochs_max: 30,
            step_min: 0.01,
            step_max: 1.0,
        }
    }
}

impl SearchSpace {
    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> Hyperparams {
        let (lo, hi) = (self.step_min.ln(), self.step_max.ln());
        Hyperparams {
            k: rng.random_range(self.k_min..=self.k_max),
            epochs: rng.random_range(self.epochs_min..=self.epochs_max),
            step: if hi > lo { rng.random_range(lo..=hi).exp() } else { self.step_min },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct CvConfig {
    pub folds: usize,
    pub draws: usize,
    pub space: SearchSpace,
}

impl Default for CvConfig {
    fn default() -> Self {
        CvConfig {
            folds: 3,
            draws: 20,
            space: SearchSpace::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IaResult {
    /// Fold accuracies of the selected draw.
    pub fold_accuracies: Vec<f64>,
    pub mean_accuracy: f64,
    pub hyperparams: Hyperparams,
    /// Index of the selected draw.
    pub draw: usize,
    pub n_instances: usize,
}

impl IaResult {
    /// The reported measure: higher means harder to predict.
    pub fn measure(&self) -> f64 {
        -self.mean_accuracy
    }
}

/// Fold index of each position in an already shuffled list.
pub fn fold_assignment(n: usize, folds: usize) -> Vec<usize> {
    (0..n).map(|i| i % folds).collect()
}

/// Shuffle, split into folds and return the best draw by mean accuracy
/// (ties go to the earlier draw). `None` with fewer instances than folds.
pub fn cross_validate<R: Rng + ?Sized>(
    instances: &[InflectionInstance],
    config: &CvConfig,
    rng: &mut R,
) -> Option<IaResult> {
    let folds = config.folds.max(2);
    if instances.len() < folds || config.draws == 0 {
        return None;
    }
    let mut shuffled: Vec<&InflectionInstance> = instances.iter().collect();
    shuffled.shuffle(rng);
    let assignment = fold_assignment(shuffled.len(), folds);
    let split: Vec<(Vec<InflectionInstance>, Vec<InflectionInstance>)> = (0..folds)
        .map(|f| {
            let (test, train): (Vec<_>, Vec<_>) = shuffled
                .iter()
                .zip(&assignment)
                .partition(|(_, &a)| a == f);
            let unzip = |v: Vec<(&&InflectionInstance, &usize)>| v.into_iter().map(|(i, _)| (*i).clone()).collect();
            (unzip(train), unzip(test))
        })
        .collect();

    // Draw everything up front so parallel evaluation stays reproducible.
    let draws: Vec<(Hyperparams, u64)> = (0..config.draws)
        .map(|_| (config.space.draw(rng), rng.random()))
        .collect();

    let results: Vec<Vec<f64>> = draws
        .par_iter()
        .map(|(hyper, seed)| {
            split
                .par_iter()
                .enumerate()
                .map(|(f, (train_set, test_set))| {
                    let mut fold_rng = RngStream::seed_from_u64(seed.wrapping_add(f as u64));
                    train(train_set, hyper, &mut fold_rng)
                        .map(|m| m.accuracy(test_set))
                        .unwrap_or(0.0)
                })
                .collect()
        })
        .collect();

    let mut best: Option<(usize, f64)> = None;
    for (d, accs) in results.iter().enumerate() {
        let mean = accs.iter().sum::<f64>() / accs.len() as f64;
        if best.is_none_or(|(_, m)| mean > m) {
            best = Some((d, mean));
        }
    }
    let (draw, mean_accuracy) = best?;
    Some(IaResult {
        fold_accuracies: results[draw].clone(),
        mean_accuracy,
        hyperparams: draws[draw].0,
        draw,
        n_instances: instances.len(),
    })
}
