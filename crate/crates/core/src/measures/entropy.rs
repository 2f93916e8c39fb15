use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// Item counts. Ordered storage keeps floating-point sums reproducible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrequencyTable<K: Ord> {
    counts: BTreeMap<K, u64>,
    total: u64,
}

impl<K: Ord> Default for FrequencyTable<K> {
    fn default() -> Self {
        FrequencyTable {
            counts: BTreeMap::new(),
            total: 0,
        }
    }
}

impl<K: Ord> FrequencyTable<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, item: K) {
        self.add_count(item, 1);
    }

    /// Zero counts are ignored so every stored count stays positive.
    pub fn add_count(&mut self, item: K, count: u64) {
        if count == 0 {
            return;
        }
        *self.counts.entry(item).or_insert(0) += count;
        self.total += count;
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn n_types(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    pub fn counts(&self) -> impl Iterator<Item = (&K, u64)> {
        self.counts.iter().map(|(k, &c)| (k, c))
    }
}

impl<K: Ord> FromIterator<K> for FrequencyTable<K> {
    fn from_iter<I: IntoIterator<Item = K>>(iter: I) -> Self {
        let mut table = FrequencyTable::new();
        for item in iter {
            table.add(item);
        }
        table
    }
}

/// Maximum-likelihood (plug-in) entropy in bits, no smoothing.
pub fn plugin_entropy<K: Ord>(table: &FrequencyTable<K>) -> Result<f64> {
    if table.is_empty() {
        return Err(Error::EmptyTable);
    }
    let n = table.total as f64;
    let h = -table
        .counts
        .values()
        .map(|&c| {
            let p = c as f64 / n;
            p * p.log2()
        })
        .sum::<f64>();
    // -0.0 for single-type tables
    Ok(h.max(0.0))
}
