//! Self-contained SVG figures drawn from the output tables.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use log::{info, warn};

use super::analyze::{PCA_LOADINGS_FILE, PCA_SCORES_FILE, PCA_VARIANCE_FILE, RIDGE_FILE};
use super::tsv::{self, parse_opt, Table, MatrixRow};
use crate::error::{Error, Result};
use crate::measures::Measure;

pub const MEASURES_SVG: &str = "measures.svg";
pub const PCA_SVG: &str = "pca.svg";
pub const PCA_COMPONENTS_SVG: &str = "pca_components.svg";
pub const RIDGE_SVG: &str = "wals_error_reduction.svg";

const FONT: &str = "font-family=\"sans-serif\"";

fn esc(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

fn open_svg(w: f64, h: f64) -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w:.0}\" height=\"{h:.0}\" viewBox=\"0 0 {w:.0} {h:.0}\">\n\
         <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
    )
}

/// Pads a range so that points never sit on the frame.
fn padded(lo: f64, hi: f64) -> (f64, f64) {
    if hi > lo {
        let pad = (hi - lo) * 0.05;
        (lo - pad, hi + pad)
    } else {
        (lo - 0.5, hi + 0.5)
    }
}

fn scale(v: f64, (lo, hi): (f64, f64), a: f64, b: f64) -> f64 {
    a + (v - lo) / (hi - lo) * (b - a)
}

/// One panel per measure: treebanks sorted by value, a dot each, and a gray
/// line at the mean. Measures without values are skipped.
pub fn measures_svg(rows: &[MatrixRow]) -> String {
    const ROW_H: f64 = 11.0;
    const PANEL_W: f64 = 230.0;
    const LABEL_W: f64 = 80.0;
    const COLS: usize = 4;

    let panels: Vec<(Measure, Vec<(&str, f64)>)> = Measure::ALL
        .iter()
        .filter_map(|&m| {
            let mut pts: Vec<(&str, f64)> =
                rows.iter().filter_map(|r| Some((r.treebank.as_str(), r.values[m.index()]?))).collect();
            if pts.is_empty() {
                info!("measure {m} has no values; panel omitted");
                return None;
            }
            pts.sort_by(|a, b| a.1.total_cmp(&b.1).then_with(|| a.0.cmp(b.0)));
            Some((m, pts))
        })
        .collect();

    let max_n = panels.iter().map(|(_, p)| p.len()).max().unwrap_or(0);
    let panel_h = 40.0 + ROW_H * max_n as f64;
    let n_rows = panels.len().div_ceil(COLS).max(1);
    let width = PANEL_W * COLS as f64;
    let mut s = open_svg(width, panel_h * n_rows as f64);

    for (k, (m, pts)) in panels.iter().enumerate() {
        let x0 = PANEL_W * (k % COLS) as f64;
        let y0 = panel_h * (k / COLS) as f64;
        let (px0, px1) = (x0 + LABEL_W, x0 + PANEL_W - 10.0);
        let range = padded(pts[0].1, pts[pts.len() - 1].1);
        let mean = pts.iter().map(|p| p.1).sum::<f64>() / pts.len() as f64;
        let plot_bottom = y0 + 25.0 + ROW_H * pts.len() as f64;

        let _ = writeln!(s, "<g class=\"panel\" data-measure=\"{m}\">");
        let _ = writeln!(
            s,
            "<text x=\"{:.1}\" y=\"{:.1}\" {FONT} font-size=\"12\" text-anchor=\"middle\">{m}</text>",
            (px0 + px1) / 2.0,
            y0 + 14.0
        );
        let _ = writeln!(
            s,
            "<rect x=\"{px0:.1}\" y=\"{:.1}\" width=\"{:.1}\" height=\"{:.1}\" fill=\"none\" stroke=\"black\" stroke-width=\"0.5\"/>",
            y0 + 20.0,
            px1 - px0,
            plot_bottom - y0 - 15.0
        );
        let mx = scale(mean, range, px0, px1);
        let _ = writeln!(
            s,
            "<line class=\"mean\" x1=\"{mx:.1}\" y1=\"{:.1}\" x2=\"{mx:.1}\" y2=\"{plot_bottom:.1}\" stroke=\"gray\"/>",
            y0 + 20.0
        );
        // Highest value at the top.
        for (i, (label, v)) in pts.iter().rev().enumerate() {
            let y = y0 + 30.0 + ROW_H * i as f64;
            let x = scale(*v, range, px0, px1);
            let _ = writeln!(
                s,
                "<text x=\"{:.1}\" y=\"{:.1}\" {FONT} font-size=\"8\" text-anchor=\"end\">{}</text>\
                 <circle cx=\"{x:.1}\" cy=\"{y:.1}\" r=\"2.5\" fill=\"steelblue\"><title>{} {v}</title></circle>",
                px0 - 3.0,
                y + 3.0,
                esc(label),
                esc(label),
            );
        }
        let _ = writeln!(
            s,
            "<text x=\"{px0:.1}\" y=\"{:.1}\" {FONT} font-size=\"8\">{:.3}</text>\
             <text x=\"{px1:.1}\" y=\"{:.1}\" {FONT} font-size=\"8\" text-anchor=\"end\">{:.3}</text>",
            plot_bottom + 10.0,
            range.0,
            plot_bottom + 10.0,
            range.1
        );
        s.push_str("</g>\n");
    }
    s.push_str("</svg>\n");
    s
}

/// Scatter of the first two component scores, labelled by treebank, with
/// explained variance on the axes.
pub fn pca_svg(labels: &[String], pc1: &[f64], pc2: &[f64], ratios: (f64, f64)) -> String {
    let (w, h, m) = (640.0, 560.0, 60.0);
    let xr = padded(pc1.iter().copied().fold(f64::INFINITY, f64::min), pc1.iter().copied().fold(f64::NEG_INFINITY, f64::max));
    let yr = padded(pc2.iter().copied().fold(f64::INFINITY, f64::min), pc2.iter().copied().fold(f64::NEG_INFINITY, f64::max));
    let mut s = open_svg(w, h);
    let _ = writeln!(
        s,
        "<rect x=\"{m}\" y=\"{m}\" width=\"{:.0}\" height=\"{:.0}\" fill=\"none\" stroke=\"black\"/>",
        w - 2.0 * m,
        h - 2.0 * m
    );
    if xr.0 < 0.0 && xr.1 > 0.0 {
        let x = scale(0.0, xr, m, w - m);
        let _ = writeln!(s, "<line x1=\"{x:.1}\" y1=\"{m}\" x2=\"{x:.1}\" y2=\"{:.0}\" stroke=\"lightgray\"/>", h - m);
    }
    if yr.0 < 0.0 && yr.1 > 0.0 {
        let y = scale(0.0, yr, h - m, m);
        let _ = writeln!(s, "<line x1=\"{m}\" y1=\"{y:.1}\" x2=\"{:.0}\" y2=\"{y:.1}\" stroke=\"lightgray\"/>", w - m);
    }
    for ((label, x), y) in labels.iter().zip(pc1).zip(pc2) {
        let px = scale(*x, xr, m, w - m);
        let py = scale(*y, yr, h - m, m);
        let _ = writeln!(
            s,
            "<circle cx=\"{px:.1}\" cy=\"{py:.1}\" r=\"3\" fill=\"steelblue\"/>\
             <text x=\"{:.1}\" y=\"{:.1}\" {FONT} font-size=\"9\">{}</text>",
            px + 4.0,
            py - 3.0,
            esc(label)
        );
    }
    let _ = writeln!(
        s,
        "<text x=\"{:.0}\" y=\"{:.0}\" {FONT} font-size=\"13\" text-anchor=\"middle\">PC1 ({:.1}%)</text>",
        w / 2.0,
        h - 20.0,
        ratios.0 * 100.0
    );
    let _ = writeln!(
        s,
        "<text x=\"20\" y=\"{:.0}\" {FONT} font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 20 {:.0})\">PC2 ({:.1}%)</text>",
        h / 2.0,
        h / 2.0,
        ratios.1 * 100.0
    );
    s.push_str("</svg>\n");
    s
}

/// Horizontal bars from a zero line; negative values extend left.
fn bar_panel(s: &mut String, x0: f64, y0: f64, w: f64, title: &str, bars: &[(String, f64)], range: (f64, f64)) {
    const BAR_H: f64 = 14.0;
    const LABEL_W: f64 = 70.0;
    let (px0, px1) = (x0 + LABEL_W, x0 + w - 10.0);
    let zero = scale(0.0, range, px0, px1);
    let _ = writeln!(
        s,
        "<g class=\"panel\"><text x=\"{:.1}\" y=\"{:.1}\" {FONT} font-size=\"12\" text-anchor=\"middle\">{}</text>",
        (px0 + px1) / 2.0,
        y0 + 14.0,
        esc(title)
    );
    for (i, (label, v)) in bars.iter().enumerate() {
        let y = y0 + 24.0 + BAR_H * i as f64;
        let x = scale(*v, range, px0, px1);
        let (left, width) = if x >= zero { (zero, x - zero) } else { (x, zero - x) };
        let _ = writeln!(
            s,
            "<text x=\"{:.1}\" y=\"{:.1}\" {FONT} font-size=\"9\" text-anchor=\"end\">{}</text>\
             <rect x=\"{left:.1}\" y=\"{:.1}\" width=\"{width:.1}\" height=\"{:.1}\" fill=\"{}\"><title>{v}</title></rect>\
             <text x=\"{:.1}\" y=\"{:.1}\" {FONT} font-size=\"8\">{v:.3}</text>",
            px0 - 3.0,
            y + 10.0,
            esc(label),
            y + 2.0,
            BAR_H - 4.0,
            if *v >= 0.0 { "steelblue" } else { "indianred" },
            left + width + 2.0,
            y + 10.0,
        );
    }
    let bottom = y0 + 24.0 + BAR_H * bars.len() as f64;
    let _ = writeln!(
        s,
        "<line x1=\"{zero:.1}\" y1=\"{:.1}\" x2=\"{zero:.1}\" y2=\"{bottom:.1}\" stroke=\"black\"/></g>",
        y0 + 20.0
    );
}

fn bar_range(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values.fold((0.0f64, 0.0f64), |(lo, hi), v| (lo.min(v), hi.max(v)));
    let pad = ((hi - lo) * 0.15).max(1e-9);
    (lo - if lo < 0.0 { pad } else { 0.0 }, hi + pad)
}

/// Error reduction per regression target.
pub fn ridge_svg(bars: &[(String, f64)]) -> String {
    let h = 40.0 + 14.0 * bars.len() as f64;
    let mut s = open_svg(480.0, h);
    bar_panel(&mut s, 0.0, 0.0, 480.0, "error reduction vs. WALS", bars, bar_range(bars.iter().map(|b| b.1)));
    s.push_str("</svg>\n");
    s
}

/// Loadings of every component, one panel each.
pub fn components_svg(measures: &[String], components: &[(String, f64, Vec<f64>)]) -> String {
    const COLS: usize = 4;
    let (pw, ph) = (240.0, 40.0 + 14.0 * measures.len() as f64);
    let n_rows = components.len().div_ceil(COLS).max(1);
    let mut s = open_svg(pw * COLS as f64, ph * n_rows as f64);
    for (k, (name, ratio, loadings)) in components.iter().enumerate() {
        let bars: Vec<(String, f64)> = measures.iter().cloned().zip(loadings.iter().copied()).collect();
        let title = format!("{name} ({:.1}%)", ratio * 100.0);
        bar_panel(&mut s, pw * (k % COLS) as f64, ph * (k / COLS) as f64, pw, &title, &bars, (-1.1, 1.1));
    }
    s.push_str("</svg>\n");
    s
}

fn numeric(row: &[String], col: usize, file: &str) -> Result<f64> {
    parse_opt(&row[col]).ok_or_else(|| Error::Config(format!("{file}: bad number `{}`", row[col])))
}

fn read_optional(dir: &Path, name: &str) -> Result<Option<Table>> {
    let p = dir.join(name);
    if !p.is_file() {
        warn!("{} not found; figure skipped", p.display());
        return Ok(None);
    }
    Ok(Some(Table::parse(&tsv::read(dir, name)?)?))
}

/// Draw every figure whose input table exists in `dir`. The measure table is
/// required.
pub fn cmd_plot(dir: &Path) -> Result<Vec<PathBuf>> {
    let matrix = dir.join(tsv::MATRIX_FILE);
    if !matrix.is_file() {
        return Err(Error::Config(format!("missing input {}; run `measure` first", matrix.display())));
    }
    let (_, rows) = tsv::parse_matrix(&tsv::read(dir, tsv::MATRIX_FILE)?)?;
    let mut written = Vec::new();
    let mut emit = |name: &str, svg: String| -> Result<()> {
        tsv::write(dir, name, &svg)?;
        written.push(dir.join(name));
        Ok(())
    };
    emit(MEASURES_SVG, measures_svg(&rows))?;

    if let (Some(var), Some(scores), Some(load)) = (
        read_optional(dir, PCA_VARIANCE_FILE)?,
        read_optional(dir, PCA_SCORES_FILE)?,
        read_optional(dir, PCA_LOADINGS_FILE)?,
    ) {
        let ratio_col = var.column("explained_variance_ratio").ok_or(Error::EmptyTable)?;
        let ratios: Vec<f64> =
            var.rows.iter().map(|r| numeric(r, ratio_col, PCA_VARIANCE_FILE)).collect::<Result<_>>()?;
        if scores.header.len() >= 4 && ratios.len() >= 2 {
            let labels: Vec<String> = scores.rows.iter().map(|r| r[0].clone()).collect();
            let pc1 = scores.rows.iter().map(|r| numeric(r, 2, PCA_SCORES_FILE)).collect::<Result<Vec<_>>>()?;
            let pc2 = scores.rows.iter().map(|r| numeric(r, 3, PCA_SCORES_FILE)).collect::<Result<Vec<_>>>()?;
            emit(PCA_SVG, pca_svg(&labels, &pc1, &pc2, (ratios[0], ratios[1])))?;
        }
        let measures: Vec<String> = load.rows.iter().map(|r| r[0].clone()).collect();
        let components = (1..load.header.len())
            .map(|c| {
                let l = load.rows.iter().map(|r| numeric(r, c, PCA_LOADINGS_FILE)).collect::<Result<Vec<_>>>()?;
                Ok((load.header[c].clone(), ratios.get(c - 1).copied().unwrap_or(f64::NAN), l))
            })
            .collect::<Result<Vec<_>>>()?;
        emit(PCA_COMPONENTS_SVG, components_svg(&measures, &components))?;
    }

    if let Some(ridge) = read_optional(dir, RIDGE_FILE)? {
        let col = ridge.column("error_reduction").ok_or(Error::EmptyTable)?;
        let bars: Vec<(String, f64)> =
            ridge.rows.iter().filter_map(|r| Some((r[0].clone(), parse_opt(&r[col])?))).collect();
        emit(RIDGE_SVG, ridge_svg(&bars))?;
    }
    Ok(written)
}
