//! Wall-clock scaling sweep for the two-pair decision procedure.

use std::fmt::Write as _;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::dsp2::{decide_2dsp, DEFAULT_TRIALS};
use crate::error::{Error, Result};
use crate::gen::bench_graph;
use crate::graph::Mode;

pub const DEFAULT_SIZES: [usize; 5] = [10_000, 30_000, 100_000, 300_000, 1_000_000];

#[derive(Clone, Debug, PartialEq)]
pub struct BenchConfig {
    pub modes: Vec<Mode>,
    pub sizes: Vec<usize>,
    /// Timed runs per size; the fastest is kept.
    pub repeats: usize,
    pub trials: usize,
    pub seed: u64,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            modes: vec![Mode::Dag, Mode::Undirected],
            sizes: DEFAULT_SIZES.to_vec(),
            repeats: 5,
            trials: DEFAULT_TRIALS,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub mode: Mode,
    pub n: usize,
    pub m: usize,
    pub seconds: f64,
}

/// Time ratio between consecutive sizes of one mode.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GrowthStep {
    pub mode: Mode,
    pub from_m: usize,
    pub to_m: usize,
    pub size_ratio: f64,
    pub time_ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SlopeEstimate {
    pub mode: Mode,
    pub slope: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub seed: u64,
    pub rows: Vec<BenchRow>,
    pub steps: Vec<GrowthStep>,
    pub slopes: Vec<SlopeEstimate>,
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn loglog_slope(points: &[(f64, f64)]) -> f64 {
    let pts: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let len = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / len;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / len;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

/// Generation is excluded from the timings; each timed run covers the whole
/// decision, shortest-path DAGs included.
pub fn run_bench(config: &BenchConfig) -> Result<BenchReport> {
    if config.sizes.len() < 2 || config.repeats == 0 {
        return Err(Error::InvalidParameter("need at least two sizes and one repeat".into()));
    }
    let mut rows = Vec::new();
    for (mi, &mode) in config.modes.iter().enumerate() {
        for (si, &m) in config.sizes.iter().enumerate() {
            let stream = config.seed ^ ((mi as u64) << 32 | si as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
            let g = bench_graph(mode, m, &mut ChaCha8Rng::seed_from_u64(stream))?;
            let mut best = f64::INFINITY;
            for _ in 0..config.repeats {
                let start = Instant::now();
                decide_2dsp(&g, config.trials, stream)?;
                best = best.min(start.elapsed().as_secs_f64());
            }
            rows.push(BenchRow { mode, n: g.n(), m: g.m(), seconds: best });
        }
    }
    Ok(summarize(config.seed, rows))
}

fn summarize(seed: u64, rows: Vec<BenchRow>) -> BenchReport {
    let mut modes: Vec<Mode> = rows.iter().map(|r| r.mode).collect();
    modes.dedup();
    let mut steps = Vec::new();
    let mut slopes = Vec::new();
    for mode in modes {
        let own: Vec<&BenchRow> = rows.iter().filter(|r| r.mode == mode).collect();
        for pair in own.windows(2) {
            steps.push(GrowthStep {
                mode,
                from_m: pair[0].m,
                to_m: pair[1].m,
                size_ratio: pair[1].m as f64 / pair[0].m as f64,
                time_ratio: pair[1].seconds / pair[0].seconds,
            });
        }
        let points: Vec<(f64, f64)> = own.iter().map(|r| (r.m as f64, r.seconds)).collect();
        slopes.push(SlopeEstimate { mode, slope: loglog_slope(&points) });
    }
    BenchReport { seed, rows, steps, slopes }
}

impl BenchReport {
    pub fn slope(&self, mode: Mode) -> Option<f64> {
        self.slopes.iter().find(|s| s.mode == mode).map(|s| s.slope)
    }

    /// `mode,n,m,seconds` rows, with the seed and slopes as `#` lines.
    pub fn to_csv(&self) -> String {
        let mut out = format!("# seed {}\nmode,n,m,seconds\n", self.seed);
        for r in &self.rows {
            writeln!(out, "{},{},{},{:e}", r.mode, r.n, r.m, r.seconds).unwrap();
        }
        for s in &self.slopes {
            writeln!(out, "# slope {} {}", s.mode, s.slope).unwrap();
        }
        out
    }

    /// Rebuilds the report from [`BenchReport::to_csv`] output; growth steps
    /// and slopes are recomputed from the rows.
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut seed = None;
        let mut rows = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            let line_no = idx + 1;
            if let Some(rest) = line.strip_prefix("# seed ") {
                seed = Some(rest.trim().parse().map_err(|_| Error::parse(line_no, "bad seed"))?);
                continue;
            }
            if line.starts_with('#') || line.trim().is_empty() || line == "mode,n,m,seconds" {
                continue;
            }
            let fields: Vec<&str> = line.split(',').collect();
            let &[mode, n, m, seconds] = fields.as_slice() else {
                return Err(Error::parse(line_no, "expected four fields"));
            };
            let mode = match mode {
                "dag" => Mode::Dag,
                "undirected" => Mode::Undirected,
                other => return Err(Error::parse(line_no, format!("unknown mode {other}"))),
            };
            let num = |s: &str| s.parse::<usize>().map_err(|_| Error::parse(line_no, "bad integer"));
            rows.push(BenchRow {
                mode,
                n: num(n)?,
                m: num(m)?,
                seconds: seconds.parse().map_err(|_| Error::parse(line_no, "bad time"))?,
            });
        }
        let seed = seed.ok_or_else(|| Error::parse(1, "missing seed line"))?;
        Ok(summarize(seed, rows))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slope_of_power_law() {
        let pts: Vec<(f64, f64)> = [1e3, 1e4, 1e5].iter().map(|&x: &f64| (x, 3.0 * x.powf(1.5))).collect();
        assert!((loglog_slope(&pts) - 1.5).abs() < 1e-9);
    }

    #[test]
    fn small_sweep_round_trips() {
        let config = BenchConfig { sizes: vec![2_000, 4_000], repeats: 1, ..BenchConfig::default() };
        let report = run_bench(&config).unwrap();
        assert_eq!(report.rows.len(), 4);
        assert_eq!(report.steps.len(), 2);
        assert!(report.steps.iter().all(|s| s.size_ratio == 2.0));
        assert_eq!(BenchReport::from_csv(&report.to_csv()).unwrap(), report);
        let json = serde_json::to_string(&report).unwrap();
        assert_eq!(serde_json::from_str::<BenchReport>(&json).unwrap(), report);
    }
}
