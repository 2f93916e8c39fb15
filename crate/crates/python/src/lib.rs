//! Python bindings for `morphcx`.

use std::collections::BTreeMap;
use std::path::Path;

use nalgebra::DMatrix;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use morphcx::analysis::{self, default_alpha_grid};
use morphcx::inflection;
use morphcx::measures::{plugin_entropy, FrequencyTable, Measure};
use morphcx::report::RunConfig;

fn py_err(e: morphcx::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn matrix(rows: &[Vec<f64>]) -> PyResult<DMatrix<f64>> {
    let p = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != p) {
        return Err(PyValueError::new_err("rows must all have the same length"));
    }
    Ok(DMatrix::from_fn(rows.len(), p, |i, j| rows[i][j]))
}

fn to_rows(m: &DMatrix<f64>) -> Vec<Vec<f64>> {
    m.row_iter().map(|r| r.iter().copied().collect()).collect()
}

/// A parsed CoNLL-U treebank.
#[pyclass(frozen, module = "morphcx")]
struct Treebank {
    inner: morphcx::Treebank,
}

#[pymethods]
impl Treebank {
    #[getter]
    fn id(&self) -> &str {
        &self.inner.id
    }

    #[getter]
    fn language_code(&self) -> &str {
        &self.inner.language_code
    }

    #[getter]
    fn n_sentences(&self) -> usize {
        self.inner.sentences.len()
    }

    #[getter]
    fn n_tokens(&self) -> usize {
        self.inner.n_tokens
    }

    #[getter]
    fn n_feature_keys(&self) -> usize {
        self.inner.n_feature_keys
    }

    /// `(form, lemma, upos, {feature: value})` for every token.
    fn tokens(&self) -> Vec<(String, Option<String>, String, BTreeMap<String, String>)> {
        self.inner
            .tokens()
            .map(|t| (t.form.clone(), t.lemma.clone(), t.upos.clone(), t.feats.clone()))
            .collect()
    }

    fn __repr__(&self) -> String {
        format!(
            "Treebank(id={:?}, language_code={:?}, sentences={}, tokens={})",
            self.inner.id,
            self.inner.language_code,
            self.inner.sentences.len(),
            self.inner.n_tokens
        )
    }
}

#[pyfunction]
#[pyo3(signature = (text, id, language_code, lowercase = false))]
fn parse_conllu(text: &str, id: &str, language_code: &str, lowercase: bool) -> PyResult<Treebank> {
    let opts = morphcx::ingest::ParseOptions { lowercase };
    let inner = morphcx::ingest::parse_conllu_with(text, id, language_code, opts).map_err(py_err)?;
    Ok(Treebank { inner })
}

/// Bootstrap every measure on a treebank.
///
/// Returns `{measure: {"mean", "stddev", "n", "status"}}`.
#[pyfunction]
#[pyo3(signature = (treebank, target_tokens = 20000, repetitions = 100, seed = 0, measures = None, ia_draws = None))]
fn measure_treebank(
    py: Python<'_>,
    treebank: &Treebank,
    target_tokens: usize,
    repetitions: usize,
    seed: u64,
    measures: Option<Vec<String>>,
    ia_draws: Option<usize>,
) -> PyResult<BTreeMap<String, BTreeMap<String, Py<PyAny>>>> {
    let mut cfg = RunConfig { target_tokens, repetitions, seed, ..RunConfig::default() };
    if let Some(names) = measures {
        cfg.measures = names
            .iter()
            .map(|n| n.parse::<Measure>())
            .collect::<morphcx::Result<_>>()
            .map_err(py_err)?;
    }
    if let Some(d) = ia_draws {
        cfg.ia_draws = d;
    }
    cfg.validate().map_err(py_err)?;
    let tb = &treebank.inner;
    let result = py
        .detach(|| morphcx::report::measure_treebank(tb, Path::new(&tb.id), &cfg))
        .map_err(py_err)?;

    let mut out = BTreeMap::new();
    for m in Measure::ALL {
        let c = result.cell(m);
        let mut cell = BTreeMap::new();
        cell.insert("mean".to_string(), c.mean.into_pyobject(py)?.into_any().unbind());
        cell.insert("stddev".to_string(), c.stddev.into_pyobject(py)?.into_any().unbind());
        cell.insert("n".to_string(), c.n.into_pyobject(py)?.into_any().unbind());
        cell.insert("status".to_string(), c.status.to_string().into_pyobject(py)?.into_any().unbind());
        out.insert(m.name().to_string(), cell);
    }
    Ok(out)
}

#[pyfunction]
fn measure_names() -> Vec<&'static str> {
    Measure::ALL.iter().map(|m| m.name()).collect()
}

/// Plug-in entropy (bits) of a list of counts.
#[pyfunction]
fn entropy(counts: Vec<u64>) -> PyResult<f64> {
    let mut table = FrequencyTable::new();
    for (i, c) in counts.into_iter().enumerate() {
        table.add_count(i, c);
    }
    plugin_entropy(&table).map_err(py_err)
}

/// A prefix/suffix rewrite turning a lemma into a form.
#[pyclass(frozen, module = "morphcx")]
struct EditScript {
    inner: inflection::EditScript,
}

#[pymethods]
impl EditScript {
    #[getter]
    fn prefix_drop(&self) -> usize {
        self.inner.prefix_drop
    }
    #[getter]
    fn prefix_add(&self) -> &str {
        &self.inner.prefix_add
    }
    #[getter]
    fn suffix_drop(&self) -> usize {
        self.inner.suffix_drop
    }
    #[getter]
    fn suffix_add(&self) -> &str {
        &self.inner.suffix_add
    }

    fn apply(&self, lemma: &str) -> Option<String> {
        self.inner.apply(lemma)
    }

    fn __repr__(&self) -> String {
        format!("EditScript({})", self.inner)
    }
}

#[pyfunction]
fn edit_script(lemma: &str, form: &str) -> EditScript {
    EditScript { inner: inflection::derive_edit_script(lemma, form) }
}

/// `(r, p_value)` of the Pearson correlation.
#[pyfunction]
fn pearson(x: Vec<f64>, y: Vec<f64>) -> PyResult<(f64, f64)> {
    let c = analysis::pearson(&x, &y).map_err(py_err)?;
    Ok((c.r, c.p_value))
}

/// `(rho, p_value)` of the Spearman correlation, ties given average ranks.
#[pyfunction]
fn spearman(x: Vec<f64>, y: Vec<f64>) -> PyResult<(f64, f64)> {
    let c = analysis::spearman(&x, &y).map_err(py_err)?;
    Ok((c.r, c.p_value))
}

/// PCA of a row-major matrix. Returns a dict with `loadings`
/// (variables × components), `scores`, `singular_values` and
/// `explained_variance_ratio`.
#[pyfunction]
fn pca(py: Python<'_>, rows: Vec<Vec<f64>>) -> PyResult<BTreeMap<&'static str, Py<PyAny>>> {
    let r = analysis::pca(&matrix(&rows)?).map_err(py_err)?;
    let mut out = BTreeMap::new();
    out.insert("loadings", to_rows(&r.loadings).into_pyobject(py)?.into_any().unbind());
    out.insert("scores", to_rows(&r.scores).into_pyobject(py)?.into_any().unbind());
    out.insert("singular_values", r.singular_values.into_pyobject(py)?.into_any().unbind());
    out.insert(
        "explained_variance_ratio",
        r.explained_variance_ratio.into_pyobject(py)?.into_any().unbind(),
    );
    Ok(out)
}

/// Nested leave-one-out ridge regression. Returns
/// `(rmse, error_reduction, predictions, chosen_alphas)`.
#[pyfunction]
#[pyo3(signature = (x, y, alphas = None))]
fn ridge_loocv(
    x: Vec<Vec<f64>>,
    y: Vec<f64>,
    alphas: Option<Vec<f64>>,
) -> PyResult<(f64, f64, Vec<f64>, Vec<f64>)> {
    let alphas = alphas.unwrap_or_else(default_alpha_grid);
    let r = analysis::ridge_loocv(&matrix(&x)?, &y, &alphas).map_err(py_err)?;
    Ok((r.rmse, r.error_reduction, r.predictions, r.chosen_alphas))
}

#[pymodule]
#[pyo3(name = "morphcx")]
fn morphcx_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Treebank>()?;
    m.add_class::<EditScript>()?;
    m.add_function(wrap_pyfunction!(parse_conllu, m)?)?;
    m.add_function(wrap_pyfunction!(measure_treebank, m)?)?;
    m.add_function(wrap_pyfunction!(measure_names, m)?)?;
    m.add_function(wrap_pyfunction!(entropy, m)?)?;
    m.add_function(wrap_pyfunction!(edit_script, m)?)?;
    m.add_function(wrap_pyfunction!(pearson, m)?)?;
    m.add_function(wrap_pyfunction!(spearman, m)?)?;
    m.add_function(wrap_pyfunction!(pca, m)?)?;
    m.add_function(wrap_pyfunction!(ridge_loocv, m)?)?;
    Ok(())
}
