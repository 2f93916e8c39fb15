//! Tab-separated output tables. Every file starts with a `#` provenance line,
//! then a header row; unavailable cells are written as `NA`.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde_json::json;

use super::measure::MeasureRun;
use crate::error::{Error, Result};
use crate::ingest::ExclusionReason;
use crate::measures::Measure;

pub const NA: &str = "NA";

pub const MEASURES_FILE: &str = "measures.tsv";
pub const MATRIX_FILE: &str = "matrix.tsv";
pub const TREEBANKS_FILE: &str = "treebanks.tsv";
pub const IA_FILE: &str = "ia_hyperparams.json";

pub fn fmt_opt(v: Option<f64>) -> String {
    match v {
        Some(x) if x.is_finite() => format!("{x}"),
        _ => NA.to_string(),
    }
}

pub fn parse_opt(s: &str) -> Option<f64> {
    match s.trim() {
        NA | "" => None,
        t => t.parse().ok(),
    }
}

fn reasons_str(r: &[ExclusionReason]) -> String {
    if r.is_empty() {
        "-".into()
    } else {
        r.iter().map(|x| x.as_str()).collect::<Vec<_>>().join(",")
    }
}

fn parse_reasons(s: &str, line: usize) -> Result<Vec<ExclusionReason>> {
    if s == "-" || s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|r| {
            ExclusionReason::parse(r).ok_or_else(|| Error::Parse { line, msg: format!("unknown exclusion `{r}`") })
        })
        .collect()
}

/// Long format: one line per treebank and measure.
pub fn measures_table(run: &MeasureRun) -> String {
    let mut s = format!("{}\ntreebank\tlanguage\tmeasure\tmean\tstddev\tn\tstatus\n", run.provenance);
    for r in &run.results {
        for m in Measure::ALL {
            let c = r.cell(m);
            let _ = writeln!(
                s,
                "{}\t{}\t{}\t{}\t{}\t{}\t{}",
                r.id,
                r.language_code,
                m,
                fmt_opt(c.mean),
                fmt_opt(c.stddev),
                c.n,
                c.status
            );
        }
    }
    s
}

/// Wide format: one row per treebank, one column per measure mean.
pub fn matrix_table(run: &MeasureRun) -> String {
    let mut s = format!("{}\ntreebank\tlanguage\texclusion", run.provenance);
    for m in Measure::ALL {
        s.push('\t');
        s.push_str(m.name());
    }
    s.push('\n');
    for r in &run.results {
        let _ = write!(s, "{}\t{}\t{}", r.id, r.language_code, reasons_str(&r.exclusion));
        for m in Measure::ALL {
            s.push('\t');
            s.push_str(&fmt_opt(r.cell(m).mean));
        }
        s.push('\n');
    }
    s
}

pub fn treebanks_table(run: &MeasureRun) -> String {
    let mut s = format!(
        "{}\ntreebank\tlanguage\tpath\tsentences\ttokens\tfeature_keys\texclusion\tstatus\terror\n",
        run.provenance
    );
    for r in &run.results {
        let (sent, tok, keys) = match &r.stats {
            Some(st) => (st.n_sentences.to_string(), st.n_tokens.to_string(), st.n_feature_keys.to_string()),
            None => (NA.into(), NA.into(), NA.into()),
        };
        let error = r.error.as_deref().unwrap_or("-").replace(['\t', '\n'], " ");
        let _ = writeln!(
            s,
            "{}\t{}\t{}\t{sent}\t{tok}\t{keys}\t{}\t{}\t{error}",
            r.id,
            r.language_code,
            r.path.display(),
            reasons_str(&r.exclusion),
            if r.failed() { "failed" } else { "ok" },
        );
    }
    s
}

/// Chosen inflection hyperparameters per treebank, with the search space.
pub fn ia_json(run: &MeasureRun) -> String {
    let per: Vec<_> = run
        .results
        .iter()
        .map(|r| {
            json!({
                "treebank": r.id,
                "result": r.ia,
            })
        })
        .collect();
    let doc = json!({ "provenance": run.provenance.trim_start_matches("# "), "treebanks": per });
    serde_json::to_string_pretty(&doc).expect("plain JSON values") + "\n"
}

pub fn write_measure_outputs(run: &MeasureRun, dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::file(dir, e))?;
    write(dir, MEASURES_FILE, &measures_table(run))?;
    write(dir, MATRIX_FILE, &matrix_table(run))?;
    write(dir, TREEBANKS_FILE, &treebanks_table(run))?;
    write(dir, IA_FILE, &ia_json(run))?;
    Ok(())
}

pub fn write(dir: &Path, name: &str, contents: &str) -> Result<()> {
    let p = dir.join(name);
    fs::write(&p, contents).map_err(|e| Error::file(&p, e))
}

pub fn read(dir: &Path, name: &str) -> Result<String> {
    let p = dir.join(name);
    fs::read_to_string(&p).map_err(|e| Error::file(&p, e))
}

/// A parsed table: header names and string cells, `#` lines skipped.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn parse(text: &str) -> Result<Table> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i, l.trim_end_matches('\r')))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (_, h) = lines.next().ok_or(Error::EmptyInput)?;
        let header: Vec<String> = h.split('\t').map(str::to_string).collect();
        let mut rows = Vec::new();
        for (i, l) in lines {
            let cells: Vec<String> = l.split('\t').map(str::to_string).collect();
            if cells.len() != header.len() {
                return Err(Error::Parse {
                    line: i + 1,
                    msg: format!("expected {} columns, found {}", header.len(), cells.len()),
                });
            }
            rows.push(cells);
        }
        Ok(Table { header, rows })
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.header.iter().position(|h| h == name)
    }
}

/// A row of the wide measure table.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixRow {
    pub treebank: String,
    pub language: String,
    pub exclusion: Vec<ExclusionReason>,
    /// One value per measure, in [`Measure::ALL`] order.
    pub values: Vec<Option<f64>>,
}

/// The provenance line (if any) and the rows of a wide measure table.
pub fn parse_matrix(text: &str) -> Result<(Option<String>, Vec<MatrixRow>)> {
    let mut provenance = None;
    let mut header: Option<Vec<&str>> = None;
    let mut rows = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim_end_matches('\r');
        if line.is_empty() {
            continue;
        }
        if line.starts_with('#') {
            provenance.get_or_insert_with(|| line.to_string());
            continue;
        }
        let cols: Vec<&str> = line.split('\t').collect();
        let Some(h) = &header else {
            let expected: Vec<&str> = ["treebank", "language", "exclusion"]
                .into_iter()
                .chain(Measure::ALL.iter().map(|m| m.name()))
                .collect();
            if cols != expected {
                return Err(Error::Parse { line: i + 1, msg: format!("expected header {}", expected.join(" ")) });
            }
            header = Some(cols);
            continue;
        };
        if cols.len() != h.len() {
            return Err(Error::Parse { line: i + 1, msg: format!("expected {} columns, found {}", h.len(), cols.len()) });
        }
        let values = cols[3..]
            .iter()
            .map(|c| match parse_opt(c) {
                None if c.trim() != NA => Err(Error::Parse { line: i + 1, msg: format!("bad number `{c}`") }),
                v => Ok(v),
            })
            .collect::<Result<_>>()?;
        rows.push(MatrixRow {
            treebank: cols[0].to_string(),
            language: cols[1].to_string(),
            exclusion: parse_reasons(cols[2], i + 1)?,
            values,
        });
    }
    if header.is_none() {
        return Err(Error::EmptyInput);
    }
    Ok((provenance, rows))
}
