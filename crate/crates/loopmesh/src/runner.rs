//! Seeded Monte-Carlo sweep drivers, the catalog comparison table, and
//! CSV/SVG emission.

use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::architectures::{build_diagram, ArchitectureConfig};
use crate::channel::{loss_metrics, process_matrix, LossMetrics};
use crate::heuristics::{self, CatalogId};
use crate::mesh::{decompose_reck, ArchKind};
use crate::numerics::{haar_unitary, RandomSource};
use crate::{io, Error, Result};

/// Default cap on N; diagram size grows as O(N²) and the SVD as O(N³).
pub const DEFAULT_MAX_N: usize = 64;

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub architecture: ArchitectureConfig,
    pub n_values: Vec<usize>,
    pub trials: usize,
    pub base_seed: u64,
    pub output_path: PathBuf,
}

/// Trial-averaged metrics for one N.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub n: usize,
    pub eta_heuristic: f64,
    pub avg_eta_bar: f64,
    pub avg_eta_max: f64,
    pub avg_eta_min: f64,
    pub avg_delta_eta: f64,
    pub trials: usize,
    pub base_seed: u64,
}

fn heuristic_for(config: &ArchitectureConfig, n: usize) -> Result<f64> {
    match *config {
        ArchitectureConfig::Spatial { eta_gate } => heuristics::eta_spatial(eta_gate, n),
        ArchitectureConfig::ChainLoop { eta_gate, eta_inner } => {
            heuristics::eta_chain_loop(eta_gate, eta_inner, n)
        }
        ArchitectureConfig::DualLoop {
            eta_gate,
            eta_switch,
            eta_inner,
            outer_base,
        } => heuristics::eta_dual_loop(eta_gate, eta_switch, eta_inner, outer_base, n),
    }
}

/// One Haar trial: draw, decompose, attach losses, extract metrics.
pub fn run_trial(config: &ArchitectureConfig, n: usize, source: &RandomSource) -> Result<LossMetrics> {
    let u = haar_unitary(n, source)?;
    let mesh = decompose_reck(&u)?;
    let diagram = build_diagram(&mesh, config)?;
    loss_metrics(&process_matrix(&diagram))
}

/// Run the Fig.-5-style Monte-Carlo sweep. Trials run in parallel; trial t
/// always uses stream index t, so the result is independent of worker count.
pub fn run_haar_sweep(config: &SweepConfig) -> Result<Vec<SweepRow>> {
    if config.trials < 1 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    if matches!(config.architecture, ArchitectureConfig::Spatial { .. }) {
        return Err(Error::UnsupportedDiagram);
    }
    let mut rows = Vec::with_capacity(config.n_values.len());
    for &n in &config.n_values {
        if n < 2 {
            return Err(Error::InvalidDimension { min: 2, got: n });
        }
        if n > DEFAULT_MAX_N {
            return Err(Error::InvalidArgument(format!(
                "N = {n} exceeds the configured cap of {DEFAULT_MAX_N}"
            )));
        }
        let metrics: Vec<LossMetrics> = (0..config.trials)
            .into_par_iter()
            .map(|t| {
                run_trial(
                    &config.architecture,
                    n,
                    &RandomSource::new(config.base_seed, t as u64),
                )
                .map_err(|source| Error::TrialFailed {
                    trial: t,
                    source: Box::new(source),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let count = config.trials as f64;
        let avg = |f: fn(&LossMetrics) -> f64| metrics.iter().map(f).sum::<f64>() / count;
        rows.push(SweepRow {
            n,
            eta_heuristic: heuristic_for(&config.architecture, n)?,
            avg_eta_bar: avg(|m| m.eta_bar),
            avg_eta_max: avg(|m| m.eta_max),
            avg_eta_min: avg(|m| m.eta_min),
            avg_delta_eta: avg(|m| m.delta_eta),
            trials: config.trials,
            base_seed: config.base_seed,
        });
    }
    Ok(rows)
}

/// One line of the Fig.-8-style comparison table.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonRow {
    pub n: usize,
    pub name: CatalogId,
    pub eta_heuristic: f64,
    pub avg_eta_bar: Option<f64>,
}

/// Evaluate catalog entries over a range of N. With `with_haar`, loop
/// architectures also get the Monte-Carlo ⟨η̄⟩ column; spatial entries are
/// heuristic-only.
pub fn run_comparison(
    n_values: &[usize],
    include: &[CatalogId],
    with_haar: bool,
    trials: usize,
    base_seed: u64,
) -> Result<Vec<ComparisonRow>> {
    let mut rows = Vec::new();
    for &id in include {
        let entry = heuristics::catalog_entry(id);
        let config = match entry.kind {
            ArchKind::Spatial => None,
            ArchKind::ChainLoop => Some(ArchitectureConfig::chain_loop(
                entry.eta_gate,
                entry.eta_inner.unwrap(),
            )?),
            ArchKind::DualLoop => Some(ArchitectureConfig::dual_loop(
                entry.eta_gate,
                entry.eta_switch.unwrap(),
                entry.eta_inner.unwrap(),
                entry.outer_base.unwrap(),
            )?),
        };
        let haar_rows = match (&config, with_haar) {
            (Some(config), true) => Some(run_haar_sweep(&SweepConfig {
                architecture: *config,
                n_values: n_values.to_vec(),
                trials,
                base_seed,
                output_path: PathBuf::new(),
            })?),
            _ => None,
        };
        for (idx, &n) in n_values.iter().enumerate() {
            rows.push(ComparisonRow {
                n,
                name: id,
                eta_heuristic: entry.heuristic(n)?,
                avg_eta_bar: haar_rows.as_ref().map(|r| r[idx].avg_eta_bar),
            });
        }
    }
    Ok(rows)
}

pub fn comparison_to_csv(rows: &[ComparisonRow]) -> Result<String> {
    if rows.is_empty() {
        return Err(Error::EmptyRows);
    }
    let mut out = String::from("N,name,eta_heuristic,avg_eta_bar\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{}\n",
            r.n,
            r.name.as_str(),
            r.eta_heuristic,
            r.avg_eta_bar.map(|v| v.to_string()).unwrap_or_default()
        ));
    }
    Ok(out)
}

/// Write sweep rows as CSV; errors before creating the file when empty.
pub fn emit_csv(rows: &[SweepRow], path: &Path) -> Result<()> {
    let text = io::sweep_rows_to_csv(rows)?;
    io::write_text(path, &text)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub label: String,
    pub points: Vec<(f64, f64)>,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct SvgOptions {
    pub log_y: bool,
}

const SVG_WIDTH: f64 = 640.0;
const SVG_HEIGHT: f64 = 440.0;
const MARGIN_LEFT: f64 = 70.0;
const MARGIN_RIGHT: f64 = 130.0;
const MARGIN_TOP: f64 = 20.0;
const MARGIN_BOTTOM: f64 = 50.0;

const PALETTE: [&str; 6] = ["#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b"];

/// Render one polyline per series with labeled axes. Non-positive values are
/// skipped on a log axis.
pub fn render_svg(series: &[Series], options: SvgOptions) -> Result<String> {
    if series.is_empty() || series.iter().all(|s| s.points.is_empty()) {
        return Err(Error::EmptyRows);
    }
    let map_y = |y: f64| if options.log_y { y.log10() } else { y };
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for s in series {
        for &(x, y) in &s.points {
            if options.log_y && y <= 0.0 {
                continue;
            }
            xs.push(x);
            ys.push(map_y(y));
        }
    }
    if xs.is_empty() {
        return Err(Error::EmptyRows);
    }
    let (x_min, x_max) = bounds(&xs);
    let (y_min, y_max) = bounds(&ys);
    let plot_w = SVG_WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = SVG_HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
    let px = |x: f64| MARGIN_LEFT + (x - x_min) / (x_max - x_min).max(f64::MIN_POSITIVE) * plot_w;
    let py = |y: f64| MARGIN_TOP + (y_max - y) / (y_max - y_min).max(f64::MIN_POSITIVE) * plot_h;

    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SVG_WIDTH}\" height=\"{SVG_HEIGHT}\" viewBox=\"0 0 {SVG_WIDTH} {SVG_HEIGHT}\">\n"
    ));
    out.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    // axes
    out.push_str(&format!(
        "<line x1=\"{l}\" y1=\"{b}\" x2=\"{r}\" y2=\"{b}\" stroke=\"black\"/>\n<line x1=\"{l}\" y1=\"{t}\" x2=\"{l}\" y2=\"{b}\" stroke=\"black\"/>\n",
        l = MARGIN_LEFT,
        r = SVG_WIDTH - MARGIN_RIGHT,
        t = MARGIN_TOP,
        b = SVG_HEIGHT - MARGIN_BOTTOM,
    ));
    // ticks
    for k in 0..=4 {
        let fx = x_min + (x_max - x_min) * k as f64 / 4.0;
        let fy = y_min + (y_max - y_min) * k as f64 / 4.0;
        out.push_str(&format!(
            "<text x=\"{:.1}\" y=\"{:.1}\" font-size=\"11\" text-anchor=\"middle\">{:.3}</text>\n",
            px(fx),
            SVG_HEIGHT - MARGIN_BOTTOM + 16.0,
            fx
        ));
        let label = if options.log_y {
            format!("1e{fy:.2}")
        } else {
            format!("{fy:.3}")
        };
        out.push_str(&format!(
            "<text x=\"{:.1}\" y=\"{:.1}\" font-size=\"11\" text-anchor=\"end\">{label}</text>\n",
            MARGIN_LEFT - 6.0,
            py(fy) + 4.0,
        ));
    }
    // axis labels
    out.push_str(&format!(
        "<text x=\"{:.1}\" y=\"{:.1}\" font-size=\"13\" text-anchor=\"middle\">N</text>\n",
        MARGIN_LEFT + plot_w / 2.0,
        SVG_HEIGHT - 10.0
    ));
    out.push_str(&format!(
        "<text x=\"16\" y=\"{:.1}\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 16 {y})\">{label}</text>\n",
        MARGIN_TOP + plot_h / 2.0,
        y = MARGIN_TOP + plot_h / 2.0,
        label = if options.log_y { "transmission (log)" } else { "transmission" },
    ));
    for (idx, s) in series.iter().enumerate() {
        let color = PALETTE[idx % PALETTE.len()];
        let points: Vec<String> = s
            .points
            .iter()
            .filter(|&&(_, y)| !options.log_y || y > 0.0)
            .map(|&(x, y)| format!("{:.2},{:.2}", px(x), py(map_y(y))))
            .collect();
        out.push_str(&format!(
            "<polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\" points=\"{}\"/>\n",
            points.join(" ")
        ));
        out.push_str(&format!(
            "<text x=\"{:.1}\" y=\"{:.1}\" font-size=\"12\" fill=\"{color}\">{}</text>\n",
            SVG_WIDTH - MARGIN_RIGHT + 8.0,
            MARGIN_TOP + 14.0 * (idx + 1) as f64,
            s.label
        ));
    }
    out.push_str("</svg>\n");
    Ok(out)
}

fn bounds(values: &[f64]) -> (f64, f64) {
    let mut min = f64::INFINITY;
    let mut max = f64::NEG_INFINITY;
    for &v in values {
        min = min.min(v);
        max = max.max(v);
    }
    if min == max {
        (min - 0.5, max + 0.5)
    } else {
        (min, max)
    }
}

pub fn emit_svg(series: &[Series], path: &Path, options: SvgOptions) -> Result<()> {
    let text = render_svg(series, options)?;
    io::write_text(path, &text)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig5b_config(n_values: Vec<usize>, trials: usize) -> SweepConfig {
        SweepConfig {
            architecture: ArchitectureConfig::chain_loop(0.7, 0.8).unwrap(),
            n_values,
            trials,
            base_seed: 7,
            output_path: PathBuf::from("unused.csv"),
        }
    }

    #[test]
    fn lossless_sweep_is_all_ones() {
        let config = SweepConfig {
            architecture: ArchitectureConfig::chain_loop(1.0, 1.0).unwrap(),
            n_values: vec![3, 5],
            trials: 5,
            base_seed: 1,
            output_path: PathBuf::new(),
        };
        for row in run_haar_sweep(&config).unwrap() {
            assert!((row.eta_heuristic - 1.0).abs() < 1e-12);
            assert!((row.avg_eta_bar - 1.0).abs() < 1e-10);
            assert!((row.avg_eta_max - 1.0).abs() < 1e-10);
            assert!((row.avg_eta_min - 1.0).abs() < 1e-10);
            assert!(row.avg_delta_eta < 1e-10);
        }
    }

    #[test]
    fn chain_n4_brackets_heuristic() {
        let rows = run_haar_sweep(&fig5b_config(vec![4], 50)).unwrap();
        let heuristic = 0.392f64.powi(3);
        assert!((rows[0].eta_heuristic - heuristic).abs() < 1e-12);
        assert!(rows[0].avg_eta_min <= heuristic);
        assert!(heuristic <= rows[0].avg_eta_max);
        assert!(rows[0].avg_eta_bar >= heuristic);
    }

    #[test]
    fn dual_n4_overestimates_loss() {
        let config = SweepConfig {
            architecture: ArchitectureConfig::dual_loop(0.6, 0.75, 0.9, 0.8).unwrap(),
            n_values: vec![4],
            trials: 50,
            base_seed: 7,
            output_path: PathBuf::new(),
        };
        let rows = run_haar_sweep(&config).unwrap();
        assert!(rows[0].avg_eta_bar >= 1.0156e-3);
    }

    #[test]
    fn sweep_is_deterministic() {
        let a = run_haar_sweep(&fig5b_config(vec![4, 5], 8)).unwrap();
        let b = run_haar_sweep(&fig5b_config(vec![4, 5], 8)).unwrap();
        assert_eq!(
            io::sweep_rows_to_csv(&a).unwrap(),
            io::sweep_rows_to_csv(&b).unwrap()
        );
    }

    #[test]
    fn sweep_rejects_bad_config() {
        let mut config = fig5b_config(vec![4], 0);
        assert!(run_haar_sweep(&config).is_err());
        config.trials = 1;
        config.n_values = vec![1];
        assert!(run_haar_sweep(&config).is_err());
        config.n_values = vec![DEFAULT_MAX_N + 1];
        assert!(run_haar_sweep(&config).is_err());
    }

    #[test]
    fn comparison_table_shape() {
        let ids = [CatalogId::ClFs, CatalogId::SeIntCurrent];
        let rows = run_comparison(&[2, 4], &ids, true, 3, 9).unwrap();
        assert_eq!(rows.len(), 4);
        for row in &rows {
            match row.name {
                CatalogId::SeIntCurrent => assert!(row.avg_eta_bar.is_none()),
                _ => assert!(row.avg_eta_bar.is_some()),
            }
        }
        let csv = comparison_to_csv(&rows).unwrap();
        assert_eq!(csv.lines().count(), 5);
    }

    #[test]
    fn comparison_n2_is_single_layer_product() {
        let rows = run_comparison(&[2], &CatalogId::ALL, false, 1, 0).unwrap();
        for row in &rows {
            let entry = heuristics::catalog_entry(row.name);
            let expect = match entry.kind {
                ArchKind::Spatial => entry.eta_gate * entry.eta_gate,
                ArchKind::ChainLoop => entry.eta_gate * entry.eta_gate * entry.eta_inner.unwrap(),
                ArchKind::DualLoop => {
                    entry.eta_gate
                        * entry.eta_gate
                        * entry.eta_switch.unwrap().powi(2)
                        * entry.eta_inner.unwrap()
                }
            };
            assert!((row.eta_heuristic - expect).abs() < 1e-12, "{:?}", row.name);
        }
    }

    #[test]
    fn svg_has_one_polyline_per_series() {
        let series: Vec<Series> = (0..5)
            .map(|k| Series {
                label: format!("s{k}"),
                points: (1..=10).map(|n| (n as f64, (0.5f64 + 0.04 * k as f64).powi(n))).collect(),
            })
            .collect();
        let svg = render_svg(&series, SvgOptions { log_y: true }).unwrap();
        assert_eq!(svg.matches("<polyline").count(), 5);
        assert!(svg.starts_with("<svg"));
        assert!(svg.contains("transmission (log)"));
    }

    #[test]
    fn svg_rejects_empty() {
        assert!(render_svg(&[], SvgOptions::default()).is_err());
    }

    #[test]
    fn emit_csv_refuses_empty_without_creating_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("empty.csv");
        assert!(emit_csv(&[], &path).is_err());
        assert!(!path.exists());
    }

    #[test]
    fn emit_csv_roundtrip_on_disk() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("rows.csv");
        let rows = run_haar_sweep(&fig5b_config(vec![4], 4)).unwrap();
        emit_csv(&rows, &path).unwrap();
        let back = io::parse_sweep_rows(&std::fs::read_to_string(&path).unwrap()).unwrap();
        assert_eq!(back, rows);
    }
}
