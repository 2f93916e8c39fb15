//! Information in word structure (WS).
//!
//! Each word type is replaced by a random string of the same length whose
//! characters are drawn from a character unigram model of the sample. The
//! measure is the increase in compression ratio caused by this distortion.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::io::Write;

use flate2::write::DeflateEncoder;
use flate2::Compression;
use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sampling::Sample;

/// Random redraws per type before falling back to enumeration.
const MAX_REDRAWS: usize = 64;

/// Raw deflate at a fixed level. Only WS values computed with the same
/// setting are comparable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Compressor {
    pub level: u32,
}

impl Default for Compressor {
    fn default() -> Self {
        Compressor { level: 9 }
    }
}

impl Compressor {
    pub fn describe(&self) -> String {
        format!("deflate-raw/miniz_oxide/level={}", self.level)
    }

    pub fn compressed_len(&self, data: &[u8]) -> Result<usize> {
        if self.level > 9 {
            return Err(Error::Compression(format!("invalid deflate level {}", self.level)));
        }
        let mut enc = DeflateEncoder::new(Vec::with_capacity(data.len() / 2), Compression::new(self.level));
        enc.write_all(data).map_err(|e| Error::Compression(e.to_string()))?;
        let out = enc.finish().map_err(|e| Error::Compression(e.to_string()))?;
        Ok(out.len())
    }
}

/// Character unigram model estimated from the concatenated word forms of a
/// sample. Whitespace never enters the support.
#[derive(Debug, Clone, PartialEq)]
pub struct CharUnigramModel {
    chars: Vec<char>,
    counts: Vec<u64>,
    total: u64,
}

impl CharUnigramModel {
    pub fn estimate<'s, I>(forms: I) -> Option<Self>
    where
        I: IntoIterator<Item = &'s str>,
    {
        let mut counts: BTreeMap<char, u64> = BTreeMap::new();
        for form in forms {
            for c in form.chars().filter(|c| !c.is_whitespace()) {
                *counts.entry(c).or_insert(0) += 1;
            }
        }
        if counts.is_empty() {
            return None;
        }
        let total = counts.values().sum();
        let (chars, counts) = counts.into_iter().unzip();
        Some(CharUnigramModel { chars, counts, total })
    }

    /// Probabilities in ascending character order.
    pub fn probabilities(&self) -> impl Iterator<Item = (char, f64)> + '_ {
        self.chars
            .iter()
            .zip(&self.counts)
            .map(|(&c, &n)| (c, n as f64 / self.total as f64))
    }

    pub fn support(&self) -> &[char] {
        &self.chars
    }

    fn sampler(&self) -> WeightedIndex<u64> {
        WeightedIndex::new(&self.counts).expect("nonempty support with positive counts")
    }
}

/// Injective type → replacement mapping for one sample.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistortionMap<'a> {
    mapping: HashMap<&'a str, String>,
    /// Types whose replacement came from the deterministic fallback.
    pub fallbacks: usize,
}

impl<'a> DistortionMap<'a> {
    pub fn get(&self, form: &str) -> Option<&str> {
        self.mapping.get(form).map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.mapping.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mapping.is_empty()
    }

    /// The distorted token sequence, sentence by sentence.
    pub fn apply(&self, sample: &Sample<'a>) -> Vec<Vec<&str>> {
        sample
            .sentences()
            .iter()
            .map(|s| s.iter().map(|t| self.mapping[t.form.as_str()].as_str()).collect())
            .collect()
    }
}

/// Build the replacement mapping. Types are visited in order of first
/// occurrence so the result depends only on the sample and the stream.
pub fn distortion_map<'a, R: Rng + ?Sized>(sample: &Sample<'a>, rng: &mut R) -> Option<DistortionMap<'a>> {
    let model = CharUnigramModel::estimate(sample.tokens().map(|t| t.form.as_str()))?;
    let sampler = model.sampler();
    let mut mapping = HashMap::new();
    let mut used: HashSet<String> = HashSet::new();
    let mut fallbacks = 0;

    for tok in sample.tokens() {
        let form = tok.form.as_str();
        if mapping.contains_key(form) {
            continue;
        }
        let len = form.chars().count();
        let mut replacement = None;
        for _ in 0..MAX_REDRAWS {
            let candidate: String = (0..len).map(|_| model.chars[sampler.sample(rng)]).collect();
            if !used.contains(&candidate) {
                replacement = Some(candidate);
                break;
            }
        }
        let replacement = replacement.unwrap_or_else(|| {
            fallbacks += 1;
            first_unused(&model.chars, len, &used)
        });
        used.insert(replacement.clone());
        mapping.insert(form, replacement);
    }
    if fallbacks > 0 {
        log::debug!("distortion used deterministic fallback for {fallbacks} types");
    }
    Some(DistortionMap { mapping, fallbacks })
}

/// Lexicographically first string of `len` support characters not in
/// `used`. One always exists: each original type of this length is itself
/// such a string, and there are no more replacements than types.
fn first_unused(chars: &[char], len: usize, used: &HashSet<String>) -> String {
    let mut digits = vec![0usize; len];
    loop {
        let candidate: String = digits.iter().map(|&d| chars[d]).collect();
        if !used.contains(&candidate) {
            return candidate;
        }
        let mut pos = len;
        loop {
            assert!(pos > 0, "replacement space exhausted");
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < chars.len() {
                break;
            }
            digits[pos] = 0;
        }
    }
}

/// The distorted sample as owned strings.
pub fn distort<R: Rng + ?Sized>(sample: &Sample<'_>, rng: &mut R) -> Vec<Vec<String>> {
    match distortion_map(sample, rng) {
        Some(map) => map
            .apply(sample)
            .into_iter()
            .map(|s| s.into_iter().map(str::to_owned).collect())
            .collect(),
        None => Vec::new(),
    }
}

/// Tokens joined by a single space, sentences by a newline.
pub fn serialize<'s, S, T>(sentences: S) -> String
where
    S: IntoIterator<Item = T>,
    T: IntoIterator<Item = &'s str>,
{
    let mut out = String::new();
    for (i, sent) in sentences.into_iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        for (j, tok) in sent.into_iter().enumerate() {
            if j > 0 {
                out.push(' ');
            }
            out.push_str(tok);
        }
    }
    out
}

pub fn compression_ratio(text: &str, compressor: &Compressor) -> Result<f64> {
    if text.is_empty() {
        return Err(Error::Compression("empty text".into()));
    }
    Ok(compressor.compressed_len(text.as_bytes())? as f64 / text.len() as f64)
}

/// `CR(distorted) - CR(original)`.
pub fn ws_from_texts(original: &str, distorted: &str, compressor: &Compressor) -> Result<f64> {
    Ok(compression_ratio(distorted, compressor)? - compression_ratio(original, compressor)?)
}

/// WS for one sample. `None` when the sample has no usable characters.
pub fn word_structure_information<R: Rng + ?Sized>(
    sample: &Sample<'_>,
    rng: &mut R,
    compressor: &Compressor,
) -> Result<Option<f64>> {
    let Some(map) = distortion_map(sample, rng) else {
        return Ok(None);
    };
    let original = serialize(sample.sentences().iter().map(|s| s.iter().map(|t| t.form.as_str())));
    let distorted = serialize(map.apply(sample));
    ws_from_texts(&original, &distorted, compressor).map(Some)
}
