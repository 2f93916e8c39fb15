//! WALS typological features: loading a CSV export and one-hot encoding.

use std::collections::{BTreeMap, BTreeSet};
use std::ops::Range;
use std::path::Path;

use log::warn;
use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const FEATURE_TABLE: &str = include_str!("../data/wals_features.tsv");

/// Header names tried, in order, when looking for the language code column.
pub const LANGUAGE_COLUMNS: &[&str] =
    &["language_code", "iso_code", "iso639_3", "iso639p3code", "iso", "language"];

/// Suffix of the indicator column that marks a missing value.
pub const MISSING: &str = "NA";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WalsFeature {
    pub id: String,
    pub description: String,
    /// Languages of the original sample with the feature defined.
    pub coverage: Option<usize>,
}

/// The 28 morphology-related features shipped with the crate.
pub fn default_features() -> Vec<WalsFeature> {
    parse_feature_list(FEATURE_TABLE).expect("bundled feature table is valid")
}

pub fn default_feature_ids() -> Vec<String> {
    default_features().into_iter().map(|f| f.id).collect()
}

/// Parse a feature list: one feature per line, `id[\tdescription[\tcoverage]]`.
/// Blank lines, `#` comments and a header line starting with `id` are skipped.
pub fn parse_feature_list(text: &str) -> Result<Vec<WalsFeature>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() || line.starts_with('#') || (i == 0 && line.starts_with("id")) {
            continue;
        }
        let mut cols = line.split('\t');
        let id = cols.next().unwrap_or_default().trim().to_string();
        let description = cols.next().unwrap_or_default().trim().to_string();
        let coverage = match cols.next().map(str::trim) {
            None | Some("") => None,
            Some(c) => Some(c.parse().map_err(|_| Error::Parse {
                line: i + 1,
                msg: format!("bad coverage {c:?}"),
            })?),
        };
        out.push(WalsFeature { id, description, coverage });
    }
    if out.is_empty() {
        return Err(Error::EmptyInput);
    }
    Ok(out)
}

pub fn read_feature_list(path: &Path) -> Result<Vec<WalsFeature>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::file(path, e))?;
    parse_feature_list(&text)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WalsRecord {
    pub language_code: String,
    /// Feature id to category label; missing features are absent.
    pub values: BTreeMap<String, String>,
}

fn header_matches(header: &str, id: &str) -> bool {
    let h = header.trim();
    h == id || h.strip_prefix(id).is_some_and(|rest| rest.starts_with(' '))
}

/// Parse a WALS CSV export, keeping only `features`.
///
/// The language column is found by name (see [`LANGUAGE_COLUMNS`]) or falls
/// back to the first column. A feature column matches either its bare id
/// (`22A`) or the id followed by a space and a description.
pub fn load_wals(csv_text: &str, features: &[String]) -> Result<Vec<WalsRecord>> {
    load_wals_with(csv_text, features, None)
}

/// As [`load_wals`], reading language codes from `language_column`.
pub fn load_wals_with(
    csv_text: &str,
    features: &[String],
    language_column: Option<&str>,
) -> Result<Vec<WalsRecord>> {
    let mut reader = csv::ReaderBuilder::new()
        .flexible(false)
        .from_reader(csv_text.as_bytes());
    let headers = reader
        .headers()
        .map_err(|e| Error::Parse { line: 1, msg: e.to_string() })?
        .clone();
    if headers.is_empty() {
        return Err(Error::EmptyInput);
    }
    let find = |name: &str| headers.iter().position(|h| h.trim().eq_ignore_ascii_case(name));
    let lang_idx = match language_column {
        Some(name) => find(name).ok_or_else(|| Error::WalsHeader(vec![name.to_string()]))?,
        None => LANGUAGE_COLUMNS.iter().find_map(|c| find(c)).unwrap_or(0),
    };

    let mut columns = Vec::with_capacity(features.len());
    let mut missing = Vec::new();
    for id in features {
        match headers.iter().position(|h| header_matches(h, id)) {
            Some(i) => columns.push((id.clone(), i)),
            None => missing.push(id.clone()),
        }
    }
    if !missing.is_empty() {
        return Err(Error::WalsHeader(missing));
    }

    let mut records = Vec::new();
    for row in reader.records() {
        let row = row.map_err(|e| Error::Parse {
            line: e.position().map_or(0, |p| p.line() as usize),
            msg: e.to_string(),
        })?;
        let code = row.get(lang_idx).unwrap_or_default().trim().to_string();
        if code.is_empty() {
            continue;
        }
        let values: BTreeMap<String, String> = columns
            .iter()
            .filter_map(|(id, i)| {
                let v = row.get(*i)?.trim();
                (!v.is_empty()).then(|| (id.clone(), v.to_string()))
            })
            .collect();
        if values.is_empty() {
            warn!("WALS row for {code} has no values for the selected features");
        }
        records.push(WalsRecord { language_code: code, values });
    }
    Ok(records)
}

pub fn read_wals(path: &Path, features: &[String], language_column: Option<&str>) -> Result<Vec<WalsRecord>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::file(path, e))?;
    load_wals_with(&text, features, language_column)
}

/// Merge records sharing a language code. When duplicates disagree on a
/// feature, the lexicographically smallest label is kept so the result does
/// not depend on record order.
pub fn merge_by_language(records: &[WalsRecord]) -> BTreeMap<String, BTreeMap<String, String>> {
    let mut out: BTreeMap<String, BTreeMap<String, String>> = BTreeMap::new();
    for r in records {
        let entry = out.entry(r.language_code.clone()).or_default();
        for (k, v) in &r.values {
            match entry.get(k) {
                Some(old) if old <= v => {}
                _ => {
                    entry.insert(k.clone(), v.clone());
                }
            }
        }
    }
    out
}

/// One-hot encoded WALS features.
#[derive(Debug, Clone, PartialEq)]
pub struct DesignMatrix {
    /// Language code per row.
    pub rows: Vec<String>,
    /// Position of each row in the `languages` argument to [`encode`].
    pub source: Vec<usize>,
    /// `"{feature}={category}"`, with `"{feature}=NA"` for the missing indicator.
    pub columns: Vec<String>,
    /// Column range of each feature.
    pub blocks: Vec<(String, Range<usize>)>,
    pub values: DMatrix<f64>,
}

impl DesignMatrix {
    pub fn nrows(&self) -> usize {
        self.values.nrows()
    }

    pub fn ncols(&self) -> usize {
        self.values.ncols()
    }
}

/// Encode `languages` (duplicates allowed, e.g. one entry per treebank).
///
/// Languages without any WALS record are dropped; `source` maps the kept rows
/// back to their input positions. Each feature contributes one column per
/// category observed among the kept rows, sorted, followed by a missing
/// indicator.
pub fn encode(records: &[WalsRecord], features: &[String], languages: &[String]) -> DesignMatrix {
    let merged = merge_by_language(records);
    let (source, rows): (Vec<usize>, Vec<String>) = languages
        .iter()
        .enumerate()
        .filter(|(_, l)| merged.contains_key(*l))
        .map(|(i, l)| (i, l.clone()))
        .unzip();

    let mut columns = Vec::new();
    let mut blocks = Vec::new();
    let mut categories: Vec<Vec<String>> = Vec::new();
    for f in features {
        let cats: BTreeSet<&String> = rows.iter().filter_map(|l| merged[l].get(f)).collect();
        let start = columns.len();
        columns.extend(cats.iter().map(|c| format!("{f}={c}")));
        columns.push(format!("{f}={MISSING}"));
        blocks.push((f.clone(), start..columns.len()));
        categories.push(cats.into_iter().cloned().collect());
    }

    let mut values = DMatrix::zeros(rows.len(), columns.len());
    for (r, lang) in rows.iter().enumerate() {
        let rec = &merged[lang];
        for ((f, range), cats) in blocks.iter().zip(&categories) {
            let offset = match rec.get(f) {
                Some(v) => cats.binary_search(v).expect("category collected above"),
                None => cats.len(),
            };
            values[(r, range.start + offset)] = 1.0;
        }
    }
    DesignMatrix { rows, source, columns, blocks, values }
}
