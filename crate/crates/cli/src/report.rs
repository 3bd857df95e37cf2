use std::io::{self, Write};
use std::time::Instant;

use dsp_core::dsp2::Answer;
use dsp_core::graph::{Graph, Mode};
use dsp_core::Gf64;
use serde::Serialize;

/// JSON report of a single run. Everything except `timings` depends only on
/// the arguments and the seed.
#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Answer>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub paths: Option<Vec<Vec<usize>>>,
    /// Last `F_disj` evaluation, as the bits of the field element.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<Gf64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub details: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stats: Option<InstanceStats>,
    pub timings: Timings,
}

impl RunReport {
    pub fn new(seed: Option<u64>) -> Self {
        RunReport {
            command: std::env::args().skip(1).collect(),
            seed,
            verdict: None,
            paths: None,
            value: None,
            trials: None,
            details: None,
            stats: None,
            timings: Timings::default(),
        }
    }

    pub fn print(&self) -> io::Result<()> {
        emit(&(serde_json::to_string_pretty(self).expect("reports always serialize") + "\n"))
    }
}

#[derive(Debug, Serialize)]
pub struct InstanceStats {
    pub n: usize,
    pub m: usize,
    pub mode: Mode,
    pub k: usize,
}

impl InstanceStats {
    pub fn of(g: &Graph) -> Self {
        InstanceStats { n: g.n(), m: g.m(), mode: g.mode(), k: g.k() }
    }
}

/// Wall-clock seconds per phase. A phase that the command cannot time on
/// its own is absent and counted in `evaluate`.
#[derive(Debug, Default, Serialize)]
pub struct Timings {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub load: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sp_dag: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub evaluate: Option<f64>,
    pub total: f64,
}

pub fn timed<T>(f: impl FnOnce() -> T) -> (T, f64) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed().as_secs_f64())
}

/// Write to stdout; a reader that stopped listening is not an error.
pub fn emit(text: &str) -> io::Result<()> {
    match io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => Ok(()),
        other => other,
    }
}
