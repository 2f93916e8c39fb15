//! Multiclass averaged perceptron over edit-script classes.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::edit::{derive_edit_script, EditScript};
use super::features::{featurize_parts, Feature};
use super::InflectionInstance;
use crate::error::{Error, Result};

/// Required score lead of the gold class over the best competitor.
const MARGIN: f64 = 1.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Hyperparams {
    /// Maximum edge n-gram order.
    pub k: usize,
    pub epochs: usize,
    /// Update step, relative to a unit margin.
    pub step: f64,
}

impl Default for Hyperparams {
    fn default() -> Self {
        Hyperparams {
            k: 3,
            epochs: 10,
            step: 0.1,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct InflectionModel {
    k: usize,
    classes: Vec<EditScript>,
    features: HashMap<Feature, u32>,
    /// Averaged weights per feature, as (class, weight) sorted by class.
    weights: Vec<Vec<(u32, f64)>>,
}

struct Prepared {
    features: Vec<u32>,
    class: u32,
    lemma_len: usize,
}

#[derive(Clone, Copy)]
struct Cell {
    class: u32,
    w: f64,
    /// Sum of counter-weighted updates, for averaging.
    wa: f64,
}

/// Train on `instances`. `rng` only shuffles the instance order per epoch.
pub fn train<R: Rng + ?Sized>(
    instances: &[InflectionInstance],
    hyper: &Hyperparams,
    rng: &mut R,
) -> Result<InflectionModel> {
    if instances.is_empty() {
        return Err(Error::InvalidArgument("empty training set".into()));
    }
    let scripts: Vec<EditScript> = instances
        .iter()
        .map(|i| derive_edit_script(&i.lemma, &i.form))
        .collect();
    let mut classes = scripts.clone();
    classes.sort();
    classes.dedup();
    let class_index: HashMap<&EditScript, u32> = classes.iter().zip(0u32..).collect();

    let mut features: HashMap<Feature, u32> = HashMap::new();
    let data: Vec<Prepared> = instances
        .iter()
        .zip(&scripts)
        .map(|(inst, script)| {
            let ids = featurize_parts(&inst.lemma, &inst.feature_bundle, hyper.k)
                .into_iter()
                .map(|f| {
                    let next = features.len() as u32;
                    *features.entry(f).or_insert(next)
                })
                .collect();
            Prepared {
                features: ids,
                class: class_index[script],
                lemma_len: inst.lemma.chars().count(),
            }
        })
        .collect();

    let mut cells: Vec<Vec<Cell>> = vec![Vec::new(); features.len()];
    let mut scorer = Scorer::new(classes.len());
    let mut counter = 1.0f64;
    let mut order: Vec<usize> = (0..data.len()).collect();

    if classes.len() > 1 {
        for _ in 0..hyper.epochs {
            order.shuffle(rng);
            for &i in &order {
                let ex = &data[i];
                scorer.accumulate(&ex.features, |f| cells[f as usize].iter().map(|c| (c.class, c.w)));
                let gold_score = scorer.score(ex.class);
                let rival = scorer.best(&classes, ex.lemma_len, Some(ex.class));
                scorer.reset();
                if let Some((rival, rival_score)) = rival {
                    if gold_score < rival_score + MARGIN {
                        for &f in &ex.features {
                            update(&mut cells[f as usize], ex.class, hyper.step, counter);
                            update(&mut cells[f as usize], rival, -hyper.step, counter);
                        }
                    }
                }
                counter += 1.0;
            }
        }
    }

    let weights = cells
        .into_iter()
        .map(|row| {
            let mut row: Vec<(u32, f64)> = row
                .into_iter()
                .map(|c| (c.class, c.w - c.wa / counter))
                .filter(|&(_, w)| w != 0.0)
                .collect();
            row.sort_by_key(|&(c, _)| c);
            row
        })
        .collect();

    Ok(InflectionModel {
        k: hyper.k,
        classes,
        features,
        weights,
    })
}

fn update(row: &mut Vec<Cell>, class: u32, delta: f64, counter: f64) {
    let cell = match row.iter_mut().find(|c| c.class == class) {
        Some(c) => c,
        None => {
            row.push(Cell { class, w: 0.0, wa: 0.0 });
            row.last_mut().expect("just pushed")
        }
    };
    cell.w += delta;
    cell.wa += counter * delta;
}

/// Dense score buffer that only resets the classes it touched.
struct Scorer {
    scores: Vec<f64>,
    touched: Vec<u32>,
    is_touched: Vec<bool>,
}

impl Scorer {
    fn new(n: usize) -> Self {
        Scorer {
            scores: vec![0.0; n],
            touched: Vec::new(),
            is_touched: vec![false; n],
        }
    }

    fn accumulate<I, F>(&mut self, features: &[u32], mut row: F)
    where
        F: FnMut(u32) -> I,
        I: Iterator<Item = (u32, f64)>,
    {
        for &f in features {
            for (class, w) in row(f) {
                let c = class as usize;
                if !self.is_touched[c] {
                    self.is_touched[c] = true;
                    self.touched.push(class);
                }
                self.scores[c] += w;
            }
        }
    }

    fn score(&self, class: u32) -> f64 {
        self.scores[class as usize]
    }

    /// Highest-scoring applicable class other than `exclude`; ties go to
    /// the lower class index. Untouched classes score zero.
    fn best(&self, classes: &[EditScript], lemma_len: usize, exclude: Option<u32>) -> Option<(u32, f64)> {
        let ok = |c: u32| Some(c) != exclude && classes[c as usize].applies_to(lemma_len);
        let better = |a: (u32, f64), b: Option<(u32, f64)>| match b {
            None => true,
            Some(b) => a.1 > b.1 || (a.1 == b.1 && a.0 < b.0),
        };
        let mut best: Option<(u32, f64)> = None;
        for &c in &self.touched {
            if ok(c) && better((c, self.score(c)), best) {
                best = Some((c, self.score(c)));
            }
        }
        if best.is_none_or(|(c, s)| s < 0.0 || (s == 0.0 && c > 0)) {
            let untouched = (0..classes.len() as u32).find(|&c| !self.is_touched[c as usize] && ok(c));
            if let Some(c) = untouched {
                if better((c, 0.0), best) {
                    best = Some((c, 0.0));
                }
            }
        }
        best
    }

    fn reset(&mut self) {
        for &c in &self.touched {
            self.scores[c as usize] = 0.0;
            self.is_touched[c as usize] = false;
        }
        self.touched.clear();
    }
}

impl InflectionModel {
    pub fn classes(&self) -> &[EditScript] {
        &self.classes
    }

    pub fn ngram_order(&self) -> usize {
        self.k
    }

    /// Averaged weights keyed by feature name and class, sorted.
    pub fn weight_table(&self) -> Vec<(String, usize, f64)> {
        let mut out: Vec<(String, usize, f64)> = self
            .features
            .iter()
            .flat_map(|(f, &id)| {
                let name = f.to_string();
                self.weights[id as usize]
                    .iter()
                    .map(move |&(c, w)| (name.clone(), c as usize, w))
            })
            .collect();
        out.sort_by(|a, b| (&a.0, a.1).cmp(&(&b.0, b.1)));
        out
    }

    /// The best edit script that fits `lemma`, if any.
    pub fn predict_script(&self, lemma: &str, feature_bundle: &str) -> Option<&EditScript> {
        let ids: Vec<u32> = featurize_parts(lemma, feature_bundle, self.k)
            .iter()
            .filter_map(|f| self.features.get(f).copied())
            .collect();
        let mut scorer = Scorer::new(self.classes.len());
        scorer.accumulate(&ids, |f| self.weights[f as usize].iter().copied());
        scorer
            .best(&self.classes, lemma.chars().count(), None)
            .map(|(c, _)| &self.classes[c as usize])
    }

    /// Predict the inflected form. Falls back to the lemma itself when no
    /// known script fits.
    pub fn predict(&self, lemma: &str, feature_bundle: &str) -> String {
        self.predict_script(lemma, feature_bundle)
            .and_then(|s| s.apply(lemma))
            .unwrap_or_else(|| lemma.to_owned())
    }

    /// Exact-match accuracy on `instances`.
    pub fn accuracy(&self, instances: &[InflectionInstance]) -> f64 {
        if instances.is_empty() {
            return 0.0;
        }
        let hits = instances
            .iter()
            .filter(|i| self.predict(&i.lemma, &i.feature_bundle) == i.form)
            .count();
        hits as f64 / instances.len() as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::derive_stream;

    fn inst(lemma: &str, bundle: &[(&str, &str)], form: &str) -> InflectionInstance {
        InflectionInstance::new(lemma, bundle, form).unwrap()
    }

    fn toy(n: usize) -> Vec<InflectionInstance> {
        let stems = ["dog", "cat", "walk", "jump", "tree", "lamp", "rock", "bird", "fish", "hand"];
        let mut out = Vec::new();
        for i in 0..n {
            let stem = format!("{}{}", stems[i % stems.len()], "bcdfg".chars().nth(i / stems.len() % 5).unwrap());
            out.push(inst(&stem, &[("Number", "Sing")], &stem));
            out.push(inst(&stem, &[("Number", "Plur")], &format!("{stem}s")));
        }
        out
    }

    #[test]
    fn regular_plural_is_learned() {
        let data = toy(20);
        let model = train(&data, &Hyperparams { k: 3, epochs: 10, step: 0.5 }, &mut derive_stream(1, "t", 0)).unwrap();
        assert_eq!(model.accuracy(&data), 1.0);
        assert_eq!(model.predict("dog", "Number=Plur"), "dogs");
        assert_eq!(model.predict("zebra", "Number=Sing"), "zebra");
    }

    #[test]
    fn single_class_is_degenerate() {
        let data = vec![inst("a", &[("X", "1")], "a"), inst("bc", &[("X", "2")], "bc")];
        let model = train(&data, &Hyperparams::default(), &mut derive_stream(0, "t", 0)).unwrap();
        assert_eq!(model.classes().len(), 1);
        assert!(model.classes()[0].is_identity());
        assert_eq!(model.predict("whatever", "X=3"), "whatever");
    }

    #[test]
    fn training_is_deterministic() {
        let data = toy(15);
        let h = Hyperparams { k: 2, epochs: 7, step: 0.3 };
        let a = train(&data, &h, &mut derive_stream(9, "t", 0)).unwrap();
        let b = train(&data, &h, &mut derive_stream(9, "t", 0)).unwrap();
        assert_eq!(a.weight_table(), b.weight_table());
        assert_eq!(a, b);
    }

    #[test]
    fn empty_training_set_is_an_error() {
        assert!(train(&[], &Hyperparams::default(), &mut derive_stream(0, "t", 0)).is_err());
    }

    #[test]
    fn inapplicable_scripts_are_skipped() {
        // Only class: drop 4 characters and add "went". A 2-character lemma
        // cannot take it, so prediction falls back to the lemma.
        let data = vec![inst("gooo", &[("Tense", "Past")], "went")];
        let model = train(&data, &Hyperparams::default(), &mut derive_stream(0, "t", 0)).unwrap();
        assert_eq!(model.classes()[0].prefix_drop, 4);
        assert!(model.predict_script("go", "Tense=Past").is_none());
        assert_eq!(model.predict("go", "Tense=Past"), "go");
        assert_eq!(model.predict("abcd", "Tense=Past"), "went");
    }
}
