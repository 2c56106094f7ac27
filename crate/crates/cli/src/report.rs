//! Line-oriented `key: value` reports.
//!
//! Everything above the timings marker depends only on the inputs; the
//! timings section below it is the only part that varies between runs.

use std::fmt::Write as _;
use std::time::Instant;

pub const TIMINGS_MARKER: &str = "-- timings";

#[derive(Default)]
pub struct Report {
    lines: Vec<(String, String)>,
    timings: Vec<(String, u128)>,
}

impl Report {
    pub fn new(command: &str) -> Report {
        let mut r = Report::default();
        r.put("command", command);
        r
    }

    pub fn put(&mut self, key: &str, value: impl ToString) {
        self.lines.push((key.to_string(), value.to_string()));
    }

    /// Runs `f`, recording its wall time under `phase`.
    pub fn timed<T>(&mut self, phase: &str, f: impl FnOnce() -> T) -> T {
        let t = Instant::now();
        let x = f();
        self.timings.push((phase.to_string(), t.elapsed().as_micros()));
        x
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.lines {
            // multi-line values are indented under their key
            if v.contains('\n') {
                let _ = writeln!(out, "{k}:");
                for l in v.lines() {
                    let _ = writeln!(out, "  {l}");
                }
            } else {
                let _ = writeln!(out, "{k}: {v}");
            }
        }
        let _ = writeln!(out, "{TIMINGS_MARKER}");
        for (k, us) in &self.timings {
            let _ = writeln!(out, "{k}_us: {us}");
        }
        out
    }
}

/// The part of a rendered report that must be identical across runs.
pub fn stable_part(report: &str) -> &str {
    match report.find(TIMINGS_MARKER) {
        Some(i) => &report[..i],
        None => report,
    }
}
