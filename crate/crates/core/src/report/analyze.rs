//! The analysis stage: correlations, PCA and WALS regressions over the
//! measure table.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use log::{info, warn};

use super::config::{RunConfig, WalsRows};
use super::tsv::{self, fmt_opt, MatrixRow};
use crate::analysis::{
    correlation_matrix, pca, ridge_loocv, standardize, standardize_vector, CorrelationMatrix, MeasureMatrix, Method,
    PcaResult, RidgeReport,
};
use crate::error::{Error, Result};
use crate::ingest::ExclusionReason;
use crate::measures::Measure;
use crate::wals::{encode, read_wals, WalsRecord};

pub const CORRELATIONS_FILE: &str = "correlations.tsv";
pub const CORRELATION_TABLE_FILE: &str = "correlation_table.tsv";
pub const PCA_VARIANCE_FILE: &str = "pca_variance.tsv";
pub const PCA_LOADINGS_FILE: &str = "pca_loadings.tsv";
pub const PCA_SCORES_FILE: &str = "pca_scores.tsv";
pub const RIDGE_FILE: &str = "ridge.tsv";
pub const ERRORS_FILE: &str = "analysis_errors.tsv";

#[derive(Debug, Clone, PartialEq)]
pub struct PcaOutcome {
    pub treebanks: Vec<String>,
    pub languages: Vec<String>,
    pub columns: Vec<String>,
    pub result: PcaResult,
}

impl PcaOutcome {
    pub fn component_name(i: usize) -> String {
        format!("PC{}", i + 1)
    }

    pub fn scores(&self, component: usize) -> Vec<f64> {
        self.result.scores.column(component).iter().copied().collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RidgeRow {
    pub target: String,
    pub outcome: std::result::Result<RidgeReport, String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Analysis {
    /// Treebanks used, after dropping those without morphological annotation.
    pub matrix: MeasureMatrix,
    pub languages: Vec<String>,
    pub dropped: Vec<String>,
    pub pearson: CorrelationMatrix,
    pub spearman: CorrelationMatrix,
    pub pca: Option<PcaOutcome>,
    pub ridge: Vec<RidgeRow>,
    /// `(analysis, message)` for every analysis that could not run.
    pub errors: Vec<(String, String)>,
}

/// WALS inputs for the regressions.
#[derive(Debug, Clone, Copy)]
pub struct WalsInput<'a> {
    pub records: &'a [WalsRecord],
    pub features: &'a [String],
    pub rows: WalsRows,
    pub alphas: &'a [f64],
}

/// Build the measure matrix from table rows, leaving out treebanks excluded
/// for lacking morphological annotation.
pub fn analysis_matrix(rows: &[MatrixRow]) -> (MeasureMatrix, Vec<String>, Vec<String>) {
    let (kept, dropped): (Vec<&MatrixRow>, Vec<&MatrixRow>) =
        rows.iter().partition(|r| !r.exclusion.contains(&ExclusionReason::NoMorphFeatures));
    let matrix = MeasureMatrix::new(
        kept.iter().map(|r| r.treebank.clone()).collect(),
        Measure::ALL.iter().map(|m| m.name().to_string()).collect(),
        kept.iter().map(|r| r.values.clone()).collect(),
    );
    let languages = kept.iter().map(|r| r.language.clone()).collect();
    (matrix, languages, dropped.iter().map(|r| r.treebank.clone()).collect())
}

/// PCA over the standardized measures, on the rows complete for every column
/// that has at least one value.
pub fn pca_outcome(matrix: &MeasureMatrix, languages: &[String]) -> Result<PcaOutcome> {
    let used: Vec<usize> = (0..matrix.columns.len())
        .filter(|&j| matrix.column(j).any(|v| v.is_some()))
        .collect();
    for (j, c) in matrix.columns.iter().enumerate() {
        if !used.contains(&j) {
            info!("PCA: column {c} has no values and is left out");
        }
    }
    let reduced = MeasureMatrix::new(
        matrix.rows.clone(),
        used.iter().map(|&j| matrix.columns[j].clone()).collect(),
        matrix.values.iter().map(|r| used.iter().map(|&j| r[j]).collect()).collect(),
    );
    let complete = reduced.complete_rows();
    if complete.len() < 3 {
        return Err(Error::InsufficientData { analysis: "PCA".into(), needed: 3, available: complete.len() });
    }
    let (treebanks, dense) = reduced.complete_dense();
    let z = standardize(&dense, &reduced.columns)?;
    let result = pca(&z.values)?;
    Ok(PcaOutcome {
        treebanks,
        languages: complete.iter().map(|&i| languages[i].clone()).collect(),
        columns: reduced.columns,
        result,
    })
}

/// Ridge LOOCV of one target against WALS features.
pub fn ridge_for_target(
    name: &str,
    languages: &[String],
    values: &[Option<f64>],
    wals: &WalsInput<'_>,
) -> Result<RidgeReport> {
    let (langs, target): (Vec<String>, Vec<f64>) = match wals.rows {
        WalsRows::Treebank => languages
            .iter()
            .zip(values)
            .filter_map(|(l, v)| Some((l.clone(), (*v)?)))
            .unzip(),
        WalsRows::LanguageMean => {
            let mut groups: BTreeMap<&str, Vec<f64>> = BTreeMap::new();
            for (l, v) in languages.iter().zip(values) {
                if let Some(v) = v {
                    groups.entry(l).or_default().push(*v);
                }
            }
            groups
                .into_iter()
                .map(|(l, vs)| (l.to_string(), vs.iter().sum::<f64>() / vs.len() as f64))
                .unzip()
        }
    };
    let design = encode(wals.records, wals.features, &langs);
    if design.nrows() < 3 {
        return Err(Error::InsufficientData {
            analysis: format!("ridge {name}"),
            needed: 3,
            available: design.nrows(),
        });
    }
    let y: Vec<f64> = design.source.iter().map(|&i| target[i]).collect();
    let z = standardize_vector(&y, name)?;
    ridge_loocv(&design.values, &z, wals.alphas)
}

/// Run every analysis. Failures of individual analyses are collected in
/// [`Analysis::errors`].
pub fn analyze(rows: &[MatrixRow], wals: Option<&WalsInput<'_>>) -> Analysis {
    let (matrix, languages, dropped) = analysis_matrix(rows);
    if !dropped.is_empty() {
        info!("left out without morphological features: {}", dropped.join(", "));
    }
    let pearson = correlation_matrix(&matrix, Method::Pearson);
    let spearman = correlation_matrix(&matrix, Method::Spearman);
    let mut errors = Vec::new();
    for cm in [&pearson, &spearman] {
        for (a, b) in cm.undefined() {
            errors.push((format!("{} {a}-{b}", cm.method), "too few complete pairs or constant column".into()));
        }
    }

    let pca = match pca_outcome(&matrix, &languages) {
        Ok(p) => Some(p),
        Err(e) => {
            errors.push(("pca".into(), e.to_string()));
            None
        }
    };

    let mut ridge = Vec::new();
    if let Some(w) = wals {
        let mut targets: Vec<(String, Vec<String>, Vec<Option<f64>>)> = (0..matrix.columns.len())
            .map(|j| (matrix.columns[j].clone(), languages.clone(), matrix.column(j).collect()))
            .collect();
        if let Some(p) = &pca {
            for c in 0..p.result.n_components() {
                let scores = p.scores(c).into_iter().map(Some).collect();
                targets.push((PcaOutcome::component_name(c), p.languages.clone(), scores));
            }
        }
        for (name, langs, values) in targets {
            let outcome = ridge_for_target(&name, &langs, &values, w).map_err(|e| e.to_string());
            if let Err(e) = &outcome {
                errors.push((format!("ridge {name}"), e.clone()));
            }
            ridge.push(RidgeRow { target: name, outcome });
        }
    }
    for (a, e) in &errors {
        warn!("{a}: {e}");
    }
    Analysis { matrix, languages, dropped, pearson, spearman, pca, ridge, errors }
}

pub fn correlations_table(provenance: &str, mats: &[&CorrelationMatrix]) -> String {
    let mut s = format!("{provenance}\nmethod\tmeasure_i\tmeasure_j\tvalue\tn\tp_value\tsignificant\n");
    for cm in mats {
        for (i, a) in cm.columns.iter().enumerate() {
            for (j, b) in cm.columns.iter().enumerate() {
                let c = cm.values[i][j];
                let _ = writeln!(
                    s,
                    "{}\t{a}\t{b}\t{}\t{}\t{}\t{}",
                    cm.method,
                    fmt_opt(c.map(|c| c.r)),
                    c.map_or(tsv::NA.to_string(), |c| c.n.to_string()),
                    fmt_opt(c.map(|c| c.p_value)),
                    c.map_or(tsv::NA, |c| if c.significant { "yes" } else { "no" }),
                );
            }
        }
    }
    s
}

/// Square table: Pearson below the diagonal, Spearman above, two decimals,
/// `*` marking p < 0.05.
pub fn correlation_square(provenance: &str, pearson: &CorrelationMatrix, spearman: &CorrelationMatrix) -> String {
    let mut s = format!("{provenance}\nmeasure\t{}\n", pearson.columns.join("\t"));
    for i in 0..pearson.columns.len() {
        s.push_str(&pearson.columns[i]);
        for j in 0..pearson.columns.len() {
            s.push('\t');
            let cell = match j.cmp(&i) {
                std::cmp::Ordering::Less => pearson.values[i][j],
                std::cmp::Ordering::Greater => spearman.values[i][j],
                std::cmp::Ordering::Equal => {
                    s.push('-');
                    continue;
                }
            };
            match cell {
                Some(c) => {
                    let _ = write!(s, "{:.2}{}", c.r, if c.significant { "*" } else { "" });
                }
                None => s.push_str(tsv::NA),
            }
        }
        s.push('\n');
    }
    s
}

pub fn pca_tables(provenance: &str, p: &PcaOutcome) -> (String, String, String) {
    let r = &p.result;
    let k = r.n_components();
    let names: Vec<String> = (0..k).map(PcaOutcome::component_name).collect();

    let mut variance = format!("{provenance}\ncomponent\tsingular_value\texplained_variance_ratio\tcumulative\n");
    let mut cum = 0.0;
    for c in 0..k {
        cum += r.explained_variance_ratio[c];
        let _ = writeln!(
            variance,
            "{}\t{}\t{}\t{}",
            names[c], r.singular_values[c], r.explained_variance_ratio[c], cum
        );
    }

    let mut loadings = format!("{provenance}\nmeasure\t{}\n", names.join("\t"));
    for (j, col) in p.columns.iter().enumerate() {
        loadings.push_str(col);
        for c in 0..k {
            let _ = write!(loadings, "\t{}", r.loadings[(j, c)]);
        }
        loadings.push('\n');
    }

    let mut scores = format!("{provenance}\ntreebank\tlanguage\t{}\n", names.join("\t"));
    for (i, tb) in p.treebanks.iter().enumerate() {
        let _ = write!(scores, "{tb}\t{}", p.languages[i]);
        for c in 0..k {
            let _ = write!(scores, "\t{}", r.scores[(i, c)]);
        }
        scores.push('\n');
    }
    (variance, loadings, scores)
}

pub fn ridge_table(provenance: &str, rows: &[RidgeRow]) -> String {
    let mut s = format!("{provenance}\ntarget\tn\trmse\terror_reduction\tchosen_alphas\tstatus\n");
    for r in rows {
        match &r.outcome {
            Ok(rep) => {
                let alphas: Vec<String> = rep.chosen_alphas.iter().map(|a| format!("{a}")).collect();
                let _ = writeln!(
                    s,
                    "{}\t{}\t{}\t{}\t{}\tok",
                    r.target,
                    rep.n,
                    rep.rmse,
                    rep.error_reduction,
                    alphas.join(",")
                );
            }
            Err(e) => {
                let _ = writeln!(s, "{}\tNA\tNA\tNA\tNA\t{}", r.target, e.replace(['\t', '\n'], " "));
            }
        }
    }
    s
}

pub fn errors_table(provenance: &str, errors: &[(String, String)]) -> String {
    let mut s = format!("{provenance}\nanalysis\terror\n");
    for (a, e) in errors {
        let _ = writeln!(s, "{a}\t{}", e.replace(['\t', '\n'], " "));
    }
    s
}

pub fn write_analysis(a: &Analysis, provenance: &str, dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| Error::file(dir, e))?;
    tsv::write(dir, CORRELATIONS_FILE, &correlations_table(provenance, &[&a.pearson, &a.spearman]))?;
    tsv::write(dir, CORRELATION_TABLE_FILE, &correlation_square(provenance, &a.pearson, &a.spearman))?;
    if let Some(p) = &a.pca {
        let (var, load, scores) = pca_tables(provenance, p);
        tsv::write(dir, PCA_VARIANCE_FILE, &var)?;
        tsv::write(dir, PCA_LOADINGS_FILE, &load)?;
        tsv::write(dir, PCA_SCORES_FILE, &scores)?;
    }
    if !a.ridge.is_empty() {
        tsv::write(dir, RIDGE_FILE, &ridge_table(provenance, &a.ridge))?;
    }
    tsv::write(dir, ERRORS_FILE, &errors_table(provenance, &a.errors))?;
    Ok(())
}

/// Read the measure table from `config.out`, run the analyses and write
/// their tables next to it.
pub fn cmd_analyze(config: &RunConfig) -> Result<Analysis> {
    config.validate()?;
    let text = tsv::read(&config.out, tsv::MATRIX_FILE)?;
    let (measure_provenance, rows) = tsv::parse_matrix(&text)?;
    let provenance = measure_provenance.unwrap_or_else(|| config.provenance());

    let features = config.wals_feature_ids()?;
    let alphas = config.alpha_grid();
    let records = match &config.wals {
        Some(p) => Some(read_wals(p, &features, config.wals_language_column.as_deref())?),
        None => {
            info!("no WALS file configured; skipping the regressions");
            None
        }
    };
    let wals = records.as_deref().map(|records| WalsInput {
        records,
        features: &features,
        rows: config.wals_rows,
        alphas: &alphas,
    });
    let analysis = analyze(&rows, wals.as_ref());
    write_analysis(&analysis, &provenance, &config.out)?;
    Ok(analysis)
}
