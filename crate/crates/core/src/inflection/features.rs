use std::fmt;

use super::InflectionInstance;

/// A binary feature of an (lemma, feature bundle) pair.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Feature {
    /// Lemma prefix of length 1..=K, e.g. `^ta`.
    Prefix(String),
    /// Lemma suffix of length 1..=K, e.g. `al$`.
    Suffix(String),
    /// One `Key=Value` pair of the bundle.
    Pair(String),
    /// The whole bundle.
    Bundle(String),
    /// The whole bundle conjoined with a lemma suffix (the length-1 suffix
    /// is the final character).
    BundleSuffix(String, String),
}

impl fmt::Display for Feature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Feature::Prefix(p) => write!(f, "^{p}"),
            Feature::Suffix(s) => write!(f, "{s}$"),
            Feature::Pair(p) => write!(f, "F:{p}"),
            Feature::Bundle(b) => write!(f, "B:{b}"),
            Feature::BundleSuffix(b, s) => write!(f, "B:{b}&{s}$"),
        }
    }
}

/// Features for a lemma and canonical bundle, with edge n-grams up to
/// order `k`.
pub fn featurize_parts(lemma: &str, bundle: &str, k: usize) -> Vec<Feature> {
    let chars: Vec<char> = lemma.chars().collect();
    let n = chars.len();
    let mut out = Vec::with_capacity(3 * k + 4);
    for order in 1..=k.min(n) {
        out.push(Feature::Prefix(chars[..order].iter().collect()));
        out.push(Feature::Suffix(chars[n - order..].iter().collect()));
    }
    for pair in bundle.split('|').filter(|p| !p.is_empty()) {
        out.push(Feature::Pair(pair.to_owned()));
    }
    out.push(Feature::Bundle(bundle.to_owned()));
    for order in 1..=k.min(n) {
        out.push(Feature::BundleSuffix(bundle.to_owned(), chars[n - order..].iter().collect()));
    }
    out
}

pub fn featurize(instance: &InflectionInstance, k: usize) -> Vec<Feature> {
    featurize_parts(&instance.lemma, &instance.feature_bundle, k)
}
