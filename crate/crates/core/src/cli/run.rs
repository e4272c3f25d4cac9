//! Scenario execution and output files.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use super::format::format_csv;
use super::Scenario;
use crate::error::{Error, Result};
use crate::netmodel::DipolarParams;
use crate::scan::{
    count_peaks, detect_sudden_changes, detect_zero_intervals, evaluate_point, sweep, warn_if_tangle_vanishes,
    EventKind, EventRecord, MeasureSeries, Quantifier,
};

/// A series together with everything detected on it, in τ order.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesEvents {
    pub series: MeasureSeries,
    pub events: Vec<EventRecord>,
}

impl SeriesEvents {
    pub fn count(&self, kind: EventKind) -> usize {
        self.events.iter().filter(|e| e.kind == kind).count()
    }
}

#[derive(Clone, Debug)]
pub struct RunSummary {
    pub csv: PathBuf,
    pub events: PathBuf,
    pub plot_script: Option<PathBuf>,
    pub results: Vec<SeriesEvents>,
}

impl RunSummary {
    /// Human-readable lines for the terminal.
    pub fn lines(&self) -> Vec<String> {
        let mut out = Vec::new();
        for r in &self.results {
            let s = &r.series;
            out.push(format!(
                "channel={} quantifier={} eps_tilde={}: min={:.6} max={:.6} deaths={} births={} peaks={} sudden_changes={}",
                s.channel,
                s.quantifier,
                format_csv(s.eps_tilde),
                s.min(),
                s.max(),
                r.count(EventKind::Death),
                r.count(EventKind::Birth),
                r.count(EventKind::Peak),
                r.count(EventKind::SuddenChange),
            ));
        }
        out.push(format!("wrote {}", self.csv.display()));
        out.push(format!("wrote {}", self.events.display()));
        if let Some(p) = &self.plot_script {
            out.push(format!("wrote {}", p.display()));
        }
        out
    }
}

/// Death/birth intervals (refined by re-evaluating the quantifier), peaks and
/// sudden changes of every series of a sweep.
pub fn series_events(s: &Scenario, series: Vec<MeasureSeries>) -> Result<Vec<SeriesEvents>> {
    series
        .into_par_iter()
        .map(|series| {
            let probe = |tau: f64| {
                evaluate_point(
                    &s.network,
                    DipolarParams::new(tau, series.eps_tilde),
                    s.grid.bridge,
                    series.channel,
                    series.quantifier,
                    s.mode,
                )
            };
            let mut events = detect_zero_intervals(&series, s.zero_tol, Some(&probe))?;
            let prominence = s.prominence_fraction * series.max().max(0.0);
            events.extend(count_peaks(&series, prominence));
            events.extend(detect_sudden_changes(&series, s.slope_jump_tol)?);
            events.sort_by(|a, b| a.tau.total_cmp(&b.tau));
            if series.quantifier == Quantifier::Tangle {
                warn_if_tangle_vanishes(&series, s.network.kind);
            }
            Ok(SeriesEvents { series, events })
        })
        .collect()
}

pub fn csv_report(name: &str, series: &[MeasureSeries]) -> String {
    let mut out = String::from("scenario,channel,quantifier,eps_tilde,tau,value\n");
    for s in series {
        let eps = format_csv(s.eps_tilde);
        for &(tau, value) in &s.points {
            let _ = writeln!(
                out,
                "{name},{},{},{eps},{},{}",
                s.channel,
                s.quantifier,
                format_csv(tau),
                format_csv(value)
            );
        }
    }
    out
}

pub fn events_report(s: &Scenario, results: &[SeriesEvents]) -> String {
    let mut out = format!(
        "# scenario={} network={} mode={} zero_tol={} prominence_fraction={} slope_jump_tol={}\n",
        s.name,
        s.network.kind,
        s.mode,
        format_csv(s.zero_tol),
        format_csv(s.prominence_fraction),
        format_csv(s.slope_jump_tol)
    );
    for r in results {
        let _ = writeln!(
            out,
            "# channel={} quantifier={} eps_tilde={}",
            r.series.channel,
            r.series.quantifier,
            format_csv(r.series.eps_tilde)
        );
        for e in &r.events {
            let _ = write!(out, "{} tau={:.4} value={:.6}", e.kind, e.tau, e.value);
            if let Some(end) = e.interval_end {
                let _ = write!(out, " interval_end={end:.4}");
            }
            out.push('\n');
        }
    }
    out
}

/// A matplotlib script that reads the CSV next to it and saves one figure
/// per (channel, quantifier), one curve per ε̃.
pub fn plot_script(s: &Scenario) -> String {
    let keys: Vec<String> = s
        .grid
        .series_keys()
        .iter()
        .map(|(c, q)| format!("(\"{c}\", \"{q}\")"))
        .collect();
    format!(
        r#"# Plots {name}.csv; run from the directory holding it.
import csv
from collections import defaultdict

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

KEYS = [{keys}]

series = defaultdict(lambda: ([], []))
with open("{name}.csv", newline="") as fh:
    for row in csv.DictReader(fh):
        taus, values = series[(row["channel"], row["quantifier"], row["eps_tilde"])]
        taus.append(float(row["tau"]))
        values.append(float(row["value"]))

for channel, quantifier in KEYS:
    fig, ax = plt.subplots(figsize=(6, 4))
    for (c, q, eps), (taus, values) in series.items():
        if (c, q) == (channel, quantifier):
            ax.plot(taus, values, label=f"eps_tilde={{eps}}")
    ax.set_xlabel("tau")
    ax.set_ylabel(f"{{quantifier}}(rho{{channel}})")
    ax.set_title("{name} ({network})")
    ax.legend()
    fig.tight_layout()
    fig.savefig(f"{name}_{{channel}}_{{quantifier}}.png", dpi=150)
    plt.close(fig)
"#,
        name = s.name,
        network = s.network.kind,
        keys = keys.join(", "),
    )
}

fn write(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Runs the sweep, detects events and writes `<name>.csv`,
/// `<name>.events.txt` and optionally `<name>_plot.py` into the output
/// directory. Nothing is written unless every computation succeeds.
pub fn run(s: &Scenario) -> Result<RunSummary> {
    let series = sweep(&s.network, &s.grid, s.mode)?;
    let csv_text = csv_report(&s.name, &series);
    let results = series_events(s, series)?;
    let events_text = events_report(s, &results);
    let plot_text = s.emit_plot_script.then(|| plot_script(s));

    let dir = &s.output_dir;
    fs::create_dir_all(dir).map_err(|source| Error::Io {
        path: dir.clone(),
        source,
    })?;
    let csv = dir.join(format!("{}.csv", s.name));
    let events = dir.join(format!("{}.events.txt", s.name));
    write(&csv, &csv_text)?;
    write(&events, &events_text)?;
    let plot_script = match plot_text {
        Some(text) => {
            let p = dir.join(format!("{}_plot.py", s.name));
            write(&p, &text)?;
            Some(p)
        }
        None => None,
    };
    Ok(RunSummary {
        csv,
        events,
        plot_script,
        results,
    })
}
