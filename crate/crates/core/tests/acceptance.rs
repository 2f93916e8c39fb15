//! Acceptance checks, one line of output per criterion.
//!
//! Runs without the libtest harness so the verdict lines always reach the
//! terminal. The process exits non-zero if any criterion fails. The last
//! criterion needs the full treebank collection and a WALS export; point
//! `MORPHCX_UD_MANIFEST` and `MORPHCX_WALS_CSV` at them to enable it.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::Instant;

use nalgebra::DMatrix;
use rand::seq::IndexedRandom;
use rand::Rng;
use rayon::prelude::*;
use rayon::ThreadPoolBuilder;

use morphcx::analysis::{default_alpha_grid, pca, pearson, ridge_loocv, spearman, standardize_vector};
use morphcx::inflection::{cross_validate, derive_edit_script, CvConfig, InflectionInstance};
use morphcx::ingest::{Sentence, Token, Treebank};
use morphcx::measures::{plugin_entropy, word_structure_information, Compressor, FrequencyTable, MeasureSettings};
use morphcx::report::{analyze, cmd_measure, PcaOutcome, RunConfig, WalsInput};
use morphcx::rng::{derive_stream, RngStream};
use morphcx::sampling::{bootstrap_sample, run_repetitions, MeasureFn, Sample, SampleConfig};
use morphcx::wals::{default_feature_ids, read_wals};
use morphcx::Measure;

enum Verdict {
    Pass(String),
    Fail(String),
    Skip(String),
}

fn check(ok: bool, detail: String) -> Verdict {
    if ok {
        Verdict::Pass(detail)
    } else {
        Verdict::Fail(detail)
    }
}

fn random_word(rng: &mut RngStream, alphabet: &[u8], len: usize) -> String {
    (0..len).map(|_| *alphabet.choose(rng).unwrap() as char).collect()
}

const LETTERS: &[u8] = b"abcdefghijklmnopqrstuvwxyz";

// 1 ---------------------------------------------------------------------

fn entropy_oracle() -> Verdict {
    let mut rng = derive_stream(1, "acceptance-entropy", 0);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let types = rng.random_range(1..=50);
        let counts: Vec<u64> = (0..types).map(|_| rng.random_range(1..=1000)).collect();
        let table: FrequencyTable<usize> = counts.iter().enumerate().flat_map(|(i, &c)| std::iter::repeat_n(i, c as usize)).collect();
        let n: u64 = counts.iter().sum();
        let direct: f64 = -counts
            .iter()
            .map(|&c| {
                let p = c as f64 / n as f64;
                p * p.log2()
            })
            .sum::<f64>();
        let got = plugin_entropy(&table).unwrap();
        worst = worst.max((got - direct).abs());
    }
    check(worst <= 1e-9, format!("1000 tables, max |diff| = {worst:.3e}"))
}

// 2 ---------------------------------------------------------------------

fn brute_pearson(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    for i in 0..x.len() {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    sxy / (sxx * syy).sqrt()
}

/// Rank by counting: 1 + #smaller + (#equal - 1) / 2.
fn brute_ranks(x: &[f64]) -> Vec<f64> {
    x.iter()
        .map(|&v| {
            let less = x.iter().filter(|&&u| u < v).count() as f64;
            let equal = x.iter().filter(|&&u| u == v).count() as f64;
            1.0 + less + (equal - 1.0) / 2.0
        })
        .collect()
}

fn has_variance(v: &[f64]) -> bool {
    v.iter().any(|&a| a != v[0])
}

fn correlation_oracles() -> Verdict {
    let mut rng = derive_stream(2, "acceptance-correlation", 0);
    let mut worst = 0.0f64;
    let mut pairs = 0;
    while pairs < 1000 {
        let n = rng.random_range(3..=30);
        let tied = rng.random_bool(0.5);
        let draw = |rng: &mut RngStream| -> Vec<f64> {
            (0..n)
                .map(|_| if tied { rng.random_range(0..5) as f64 } else { rng.random::<f64>() * 10.0 - 5.0 })
                .collect()
        };
        let x = draw(&mut rng);
        let y = draw(&mut rng);
        if !has_variance(&x) || !has_variance(&y) {
            continue;
        }
        pairs += 1;
        let p = pearson(&x, &y).unwrap().r;
        let s = spearman(&x, &y).unwrap().r;
        worst = worst.max((p - brute_pearson(&x, &y)).abs());
        worst = worst.max((s - brute_pearson(&brute_ranks(&x), &brute_ranks(&y))).abs());
    }

    let transforms: [(&str, fn(f64) -> f64); 5] = [
        ("exp", f64::exp),
        ("cube", |v| v * v * v),
        ("atan", f64::atan),
        ("affine", |v| 3.0 * v - 7.0),
        ("log-shift", |v| (v + 10.0).ln()),
    ];
    let mut monotone_ok = 0;
    let mut monotone_total = 0;
    for _ in 0..100 {
        let n = rng.random_range(3..=30);
        let mut x: Vec<f64> = (0..n).map(|_| rng.random::<f64>() * 10.0 - 5.0).collect();
        x.dedup();
        if x.len() < 3 {
            continue;
        }
        for (_, f) in &transforms {
            let y: Vec<f64> = x.iter().map(|&v| f(v)).collect();
            monotone_total += 1;
            if spearman(&x, &y).unwrap().r == 1.0 {
                monotone_ok += 1;
            }
        }
    }
    check(
        worst <= 1e-9 && monotone_ok == monotone_total,
        format!(
            "1000 pairs, max |diff| = {worst:.3e}; spearman = 1 on {monotone_ok}/{monotone_total} monotone pairs"
        ),
    )
}

// 3 ---------------------------------------------------------------------

/// Cyclic Jacobi eigendecomposition of a symmetric matrix. Returns
/// eigenvalues (descending) and eigenvectors as columns.
fn jacobi_eigen(a: &DMatrix<f64>) -> (Vec<f64>, DMatrix<f64>) {
    let p = a.nrows();
    let mut a = a.clone();
    let mut v = DMatrix::<f64>::identity(p, p);
    for _sweep in 0..100 {
        let off: f64 = (0..p).flat_map(|i| (0..p).map(move |j| (i, j))).filter(|(i, j)| i != j).map(|(i, j)| a[(i, j)].powi(2)).sum();
        if off < 1e-30 {
            break;
        }
        for i in 0..p {
            for j in i + 1..p {
                if a[(i, j)].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[(j, j)] - a[(i, i)]) / (2.0 * a[(i, j)]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..p {
                    let (aki, akj) = (a[(k, i)], a[(k, j)]);
                    a[(k, i)] = c * aki - s * akj;
                    a[(k, j)] = s * aki + c * akj;
                }
                for k in 0..p {
                    let (aik, ajk) = (a[(i, k)], a[(j, k)]);
                    a[(i, k)] = c * aik - s * ajk;
                    a[(j, k)] = s * aik + c * ajk;
                }
                for k in 0..p {
                    let (vki, vkj) = (v[(k, i)], v[(k, j)]);
                    v[(k, i)] = c * vki - s * vkj;
                    v[(k, j)] = s * vki + c * vkj;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..p).collect();
    order.sort_by(|&x, &y| a[(y, y)].total_cmp(&a[(x, x)]));
    let values = order.iter().map(|&i| a[(i, i)]).collect();
    let vectors = DMatrix::from_fn(p, p, |r, c| v[(r, order[c])]);
    (values, vectors)
}

fn pca_oracle() -> Verdict {
    let mut rng = derive_stream(3, "acceptance-pca", 0);
    let mut worst_loading = 0.0f64;
    let mut worst_ratio = 0.0f64;
    let mut worst_recon = 0.0f64;
    let mut compared = 0;
    for _ in 0..200 {
        let n = rng.random_range(3..=10);
        let p = rng.random_range(2..=8);
        let x = DMatrix::from_fn(n, p, |_, _| rng.random::<f64>() * 4.0 - 2.0);
        let res = pca(&x).unwrap();

        let mean = DMatrix::from_fn(1, p, |_, j| x.column(j).mean());
        let centered = DMatrix::from_fn(n, p, |i, j| x[(i, j)] - mean[(0, j)]);
        let cov = centered.transpose() * &centered / (n as f64 - 1.0);
        let (eig, vecs) = jacobi_eigen(&cov);
        let scale = eig[0].abs().max(1.0);
        for c in 0..res.n_components() {
            // Compare only components that are identified: nonzero variance
            // and separated from neighbouring eigenvalues.
            let gap_prev = if c == 0 { f64::INFINITY } else { eig[c - 1] - eig[c] };
            let gap_next = if c + 1 < p { eig[c] - eig[c + 1] } else { f64::INFINITY };
            if eig[c] <= 1e-9 * scale || gap_prev.min(gap_next) <= 1e-6 * scale {
                continue;
            }
            let a = res.loadings.column(c);
            let b = vecs.column(c);
            let sign = if a.dot(&b) < 0.0 { -1.0 } else { 1.0 };
            let diff = (a - b * sign).amax();
            worst_loading = worst_loading.max(diff);
            compared += 1;
        }
        let sum: f64 = res.explained_variance_ratio.iter().sum();
        worst_ratio = worst_ratio.max((sum - 1.0).abs());
        worst_recon = worst_recon.max((res.reconstruct() - &x).amax());
    }
    check(
        worst_loading <= 1e-8 && worst_ratio <= 1e-9 && worst_recon < 1e-6,
        format!(
            "200 matrices, {compared} components: loading diff {worst_loading:.2e}, ratio sum err {worst_ratio:.2e}, reconstruction {worst_recon:.2e}"
        ),
    )
}

// 4 ---------------------------------------------------------------------

/// `n` rows of one-hot indicators for `features` categorical variables with
/// `cats` categories each.
fn one_hot_design(rng: &mut RngStream, n: usize, features: usize, cats: usize) -> DMatrix<f64> {
    let mut x = DMatrix::zeros(n, features * cats);
    for i in 0..n {
        for f in 0..features {
            x[(i, f * cats + rng.random_range(0..cats))] = 1.0;
        }
    }
    x
}

fn ridge_sanity() -> Verdict {
    let start = Instant::now();
    let alphas = default_alpha_grid();
    let mut rng = derive_stream(4, "acceptance-ridge", 0);
    let x = one_hot_design(&mut rng, 35, 6, 3);
    let coef: Vec<f64> = (0..x.ncols()).map(|_| rng.random::<f64>() * 4.0 - 2.0).collect();
    let y: Vec<f64> = (0..35).map(|i| (0..x.ncols()).map(|j| x[(i, j)] * coef[j]).sum()).collect();
    let z = standardize_vector(&y, "linear").unwrap();
    let linear = ridge_loocv(&x, &z, &alphas).unwrap().error_reduction;

    let noise: Vec<f64> = (0..100)
        .into_par_iter()
        .map(|s| {
            let mut rng = derive_stream(4, "acceptance-ridge-noise", s);
            let x = one_hot_design(&mut rng, 35, 6, 3);
            let y: Vec<f64> = (0..35).map(|_| rng.sample::<f64, _>(rand_distr::StandardNormal)).collect();
            let z = standardize_vector(&y, "noise").unwrap();
            ridge_loocv(&x, &z, &alphas).unwrap().error_reduction
        })
        .collect();
    let mean_noise = noise.iter().sum::<f64>() / noise.len() as f64;
    let secs = start.elapsed().as_secs_f64();
    check(
        linear > 0.9 && mean_noise <= 0.05 && secs < 60.0,
        format!("linear target {linear:.4}, noise mean {mean_noise:.4} over 100 runs, {secs:.1}s"),
    )
}

// 5 ---------------------------------------------------------------------

fn corpus(words: &[String], rng: &mut RngStream, n_tokens: usize) -> Vec<Vec<Token>> {
    let mut out = Vec::new();
    let mut left = n_tokens;
    while left > 0 {
        let len = rng.random_range(5..=15).min(left);
        out.push((0..len).map(|_| Token::new(words.choose(rng).unwrap().clone(), None, &[])).collect());
        left -= len;
    }
    out
}

fn ws_direction() -> Verdict {
    let start = Instant::now();
    let compressor = Compressor::default();
    let results: Vec<(f64, f64)> = (0..20u64)
        .into_par_iter()
        .map(|seed| {
            let mut rng = derive_stream(seed, "acceptance-ws", 0);
            let stems: Vec<String> = (0..20).map(|_| {
                let len = rng.random_range(4..=6);
                random_word(&mut rng, LETTERS, len)
            }).collect();
            let suffixes: Vec<String> = (0..20).map(|_| {
                let len = rng.random_range(2..=3);
                random_word(&mut rng, LETTERS, len)
            }).collect();
            let mut agglutinative: Vec<String> =
                stems.iter().flat_map(|s| suffixes.iter().map(move |x| format!("{s}{x}"))).collect();
            agglutinative.sort();
            agglutinative.dedup();
            // Same vocabulary size and word lengths, no internal structure.
            let mut isolating = Vec::new();
            let mut seen = std::collections::HashSet::new();
            for w in &agglutinative {
                loop {
                    let cand = random_word(&mut rng, LETTERS, w.chars().count());
                    if seen.insert(cand.clone()) {
                        isolating.push(cand);
                        break;
                    }
                }
            }
            let a = corpus(&agglutinative, &mut rng, 5000);
            let i = corpus(&isolating, &mut rng, 5000);
            let ws = |c: &Vec<Vec<Token>>, rng: &mut RngStream| {
                let sample = Sample::from_sentences(c.iter().map(|s| s.as_slice()).collect());
                word_structure_information(&sample, rng, &compressor).unwrap().unwrap()
            };
            (ws(&a, &mut rng), ws(&i, &mut rng))
        })
        .collect();
    let wins = results.iter().filter(|(a, i)| a > i).count();
    let secs = start.elapsed().as_secs_f64();
    let (ma, mi) = results.iter().fold((0.0, 0.0), |(sa, si), (a, i)| (sa + a / 20.0, si + i / 20.0));
    check(
        wins == 20 && secs < 60.0,
        format!("agglutinative > isolating in {wins}/20 seeds (mean WS {ma:.4} vs {mi:.4}), {secs:.1}s"),
    )
}

// 6 ---------------------------------------------------------------------

fn inflection_learner() -> Verdict {
    let start = Instant::now();
    let mut rng = derive_stream(6, "acceptance-inflection", 0);
    let mut lemmas = std::collections::BTreeSet::new();
    while lemmas.len() < 200 {
        let len = rng.random_range(3..=8);
        lemmas.insert(random_word(&mut rng, LETTERS, len));
    }
    let mut instances = Vec::new();
    for (i, l) in lemmas.iter().enumerate() {
        if i % 2 == 0 {
            instances.push(InflectionInstance::new(l, &[("Number", "Sing")], l).unwrap());
            instances.push(InflectionInstance::new(l, &[("Number", "Plur")], &format!("{l}s")).unwrap());
        } else {
            instances.push(InflectionInstance::new(l, &[("Tense", "Pres")], l).unwrap());
            instances.push(InflectionInstance::new(l, &[("Tense", "Past")], &format!("{l}ed")).unwrap());
        }
    }
    let mut cv_rng = derive_stream(6, "acceptance-inflection", 1);
    let res = cross_validate(&instances, &CvConfig::default(), &mut cv_rng).unwrap();

    let mut failures = 0;
    for _ in 0..10_000 {
        let a_len = rng.random_range(0..=10);
        let b_len = rng.random_range(0..=10);
        let lemma = random_word(&mut rng, b"abcde", a_len);
        let form = random_word(&mut rng, b"abcde", b_len);
        if derive_edit_script(&lemma, &form).apply(&lemma).as_deref() != Some(form.as_str()) {
            failures += 1;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    check(
        res.mean_accuracy >= 0.95 && failures == 0 && secs < 60.0,
        format!(
            "3-fold accuracy {:.4} on {} instances; round trip failures {failures}/10000; {secs:.1}s",
            res.mean_accuracy, res.n_instances
        ),
    )
}

// 7 ---------------------------------------------------------------------

fn random_treebank(rng: &mut RngStream, id: &str) -> Treebank {
    let n_sent = rng.random_range(1..=40);
    let sentences = (0..n_sent)
        .map(|_| {
            let len = rng.random_range(1..=30);
            let toks: Vec<Token> = (0..len)
                .map(|_| {
                    let len = rng.random_range(1..=7);
                    let w = random_word(rng, b"abcdef", len);
                    Token::new(w.clone(), Some(&w[..1]), &[("Case", "Nom")])
                })
                .collect();
            Sentence::from(toks)
        })
        .collect();
    Treebank::new(id, "xx", sentences)
}

fn sampling_contract() -> Verdict {
    let mut rng = derive_stream(7, "acceptance-sampling", 0);
    let mut exact = 0;
    for i in 0..1000 {
        let tb = random_treebank(&mut rng, &format!("tb{i}"));
        let target = rng.random_range(1..=5000);
        let mut s_rng = derive_stream(7, &tb.id, i);
        let s = bootstrap_sample(&tb, target, &mut s_rng).unwrap();
        if s.n_tokens() == target && s.tokens().count() == target {
            exact += 1;
        }
    }

    let tb = random_treebank(&mut rng, "threads");
    let config = SampleConfig { target_tokens: 2000, repetitions: 32, seed: 11 };
    let settings = MeasureSettings::default();
    let fingerprint = |s: &Sample<'_>, _: &mut RngStream| -> morphcx::Result<Option<f64>> {
        // Position-weighted checksum of the sampled forms.
        let mut h = 0u64;
        for (i, t) in s.tokens().enumerate() {
            for b in t.form.bytes() {
                h = h.wrapping_mul(1_000_003).wrapping_add(b as u64 ^ i as u64);
            }
        }
        Ok(Some((h >> 11) as f64))
    };
    let fns = settings.measure_fns(&[Measure::Ttr, Measure::Ws, Measure::Mfh]);
    let mut named: Vec<(&str, &MeasureFn<'_>)> = fns.iter().map(|(m, f)| (m.name(), f.as_ref())).collect();
    named.push(("fingerprint", &fingerprint));

    let per_pool: Vec<_> = [1, 4, 8]
        .iter()
        .map(|&threads| {
            let pool = ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
            let summary = pool.install(|| run_repetitions(&tb, &config, &named)).unwrap();
            let samples: Vec<Vec<String>> = pool.install(|| {
                (0..64u64)
                    .into_par_iter()
                    .map(|r| {
                        let mut rng = derive_stream(config.seed, &tb.id, r);
                        let s = bootstrap_sample(&tb, 777, &mut rng).unwrap();
                        s.tokens().map(|t| t.form.clone()).collect()
                    })
                    .collect()
            });
            (summary, samples)
        })
        .collect();
    let identical = per_pool.windows(2).all(|w| w[0] == w[1]);
    check(
        exact == 1000 && identical,
        format!("{exact}/1000 samples exact; thread counts 1/4/8 identical: {identical}"),
    )
}

// 8 ---------------------------------------------------------------------

fn env_path(name: &str) -> Option<PathBuf> {
    std::env::var_os(name).map(PathBuf::from).filter(|p| p.is_file())
}

fn language_means(langs: &[String], scores: &[f64]) -> Vec<(String, f64)> {
    let mut groups: BTreeMap<&str, Vec<f64>> = BTreeMap::new();
    for (l, s) in langs.iter().zip(scores) {
        groups.entry(l).or_default().push(*s);
    }
    let mut out: Vec<(String, f64)> =
        groups.into_iter().map(|(l, v)| (l.to_string(), v.iter().sum::<f64>() / v.len() as f64)).collect();
    out.sort_by(|a, b| a.1.total_cmp(&b.1));
    out
}

fn dataset_reproduction() -> Verdict {
    let (Some(manifest), Some(wals)) = (env_path("MORPHCX_UD_MANIFEST"), env_path("MORPHCX_WALS_CSV")) else {
        return Verdict::Skip(
            "treebank collection or WALS export not available (set MORPHCX_UD_MANIFEST and MORPHCX_WALS_CSV)".into(),
        );
    };
    let out = tempfile::tempdir().unwrap();
    let mut config = RunConfig { manifest: Some(manifest), wals: Some(wals), out: out.path().to_path_buf(), ..RunConfig::default() };
    if let Ok(col) = std::env::var("MORPHCX_WALS_LANGUAGE_COLUMN") {
        config.wals_language_column = Some(col);
    }
    let run = match cmd_measure(&config) {
        Ok(r) => r,
        Err(e) => return Verdict::Fail(format!("measuring failed: {e}")),
    };
    let rows = match morphcx::report::tsv::parse_matrix(&morphcx::report::tsv::matrix_table(&run)) {
        Ok((_, rows)) => rows,
        Err(e) => return Verdict::Fail(e.to_string()),
    };
    let features = default_feature_ids();
    let records = match read_wals(config.wals.as_deref().unwrap(), &features, config.wals_language_column.as_deref()) {
        Ok(r) => r,
        Err(e) => return Verdict::Fail(format!("WALS: {e}")),
    };
    let alphas = config.alpha_grid();
    let w = WalsInput { records: &records, features: &features, rows: config.wals_rows, alphas: &alphas };
    let a = analyze(&rows, Some(&w));

    let Some(p) = &a.pca else { return Verdict::Fail("PCA could not run".into()) };
    let pc1 = p.result.explained_variance_ratio[0];
    let wh_ttr = a.pearson.get("wh", "ttr");
    let ia_msp = a.pearson.get("neg_ia", "msp");
    let pc1_er = a
        .ridge
        .iter()
        .find(|r| r.target == PcaOutcome::component_name(0))
        .and_then(|r| r.outcome.as_ref().ok())
        .map(|r| r.error_reduction);

    let ranking = language_means(&p.languages, &p.scores(0));
    let pos = |code: &str| ranking.iter().position(|(l, _)| l == code);
    let bottom_ok = pos("vi") == Some(0) && pos("nl") == Some(1) && pos("af") == Some(2);
    let top_third = ranking.len() - ranking.len() / 3;
    let top_ok = ["fi", "tr", "eu"].iter().all(|c| pos(c).is_some_and(|i| i >= top_third));

    let near = |v: Option<f64>, target: f64| v.is_some_and(|v| (v - target).abs() <= 0.05);
    let ok = pc1 >= 0.90 && near(wh_ttr, 0.92) && near(ia_msp, 0.78) && near(pc1_er, 0.284) && bottom_ok && top_ok;
    let fmt = |v: Option<f64>| v.map_or("NA".to_string(), |v| format!("{v:.3}"));
    check(
        ok,
        format!(
            "PC1 {:.4}; r(wh,ttr) {}; r(-ia,msp) {}; PC1 error reduction {}; low end vi/nl/af {bottom_ok}; fi/tr/eu high {top_ok}",
            pc1,
            fmt(wh_ttr),
            fmt(ia_msp),
            fmt(pc1_er)
        ),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Verdict); 8] = [
        ("entropy oracle", entropy_oracle),
        ("correlation oracles", correlation_oracles),
        ("PCA oracle", pca_oracle),
        ("ridge sanity", ridge_sanity),
        ("WS direction", ws_direction),
        ("inflection learner", inflection_learner),
        ("sampling contract", sampling_contract),
        ("dataset reproduction", dataset_reproduction),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        if !filter.is_empty() && !filter.iter().any(|p| name.contains(p.as_str())) {
            continue;
        }
        let start = Instant::now();
        let verdict = f();
        let secs = start.elapsed().as_secs_f64();
        let (tag, detail) = match verdict {
            Verdict::Pass(d) => ("PASS", d),
            Verdict::Fail(d) => {
                failed += 1;
                ("FAIL", d)
            }
            Verdict::Skip(d) => ("SKIP", d),
        };
        println!("criterion {}: {tag} {name} ({detail}) [{secs:.2}s]", i + 1);
    }
    if failed > 0 {
        println!("{failed} criterion(s) failed");
        std::process::exit(1);
    }
}
