//! Death/birth intervals, peaks and slope discontinuities of a series.

use std::fmt;

use super::{MeasureSeries, Quantifier};
use crate::error::{Error, Result};
use crate::netmodel::NetworkKind;

/// Values at or below this count as vanished.
pub const ZERO_TOL: f64 = 1e-6;
/// Bisection stops once the bracket is this narrow in τ.
pub const BISECTION_RESOLUTION: f64 = 1e-4;
pub const BISECTION_MAX_ITER: usize = 40;
/// Default peak prominence as a fraction of the series maximum.
pub const DEFAULT_PROMINENCE_FRACTION: f64 = 0.05;
/// Default second-difference threshold as a fraction of the series range.
pub const DEFAULT_SLOPE_JUMP_TOL: f64 = 0.01;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EventKind {
    Death,
    Birth,
    Peak,
    SuddenChange,
}

impl EventKind {
    pub fn label(self) -> &'static str {
        match self {
            EventKind::Death => "death",
            EventKind::Birth => "birth",
            EventKind::Peak => "peak",
            EventKind::SuddenChange => "sudden_change",
        }
    }
}

impl fmt::Display for EventKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EventRecord {
    pub kind: EventKind,
    pub tau: f64,
    pub value: f64,
    /// End of the interval, for deaths.
    pub interval_end: Option<f64>,
}

impl EventRecord {
    fn at(kind: EventKind, tau: f64, value: f64) -> Self {
        Self {
            kind,
            tau,
            value,
            interval_end: None,
        }
    }
}

/// Narrows a bracket whose `dead` end is at or below `zero_tol` and whose
/// other end is above it. Returns the final (dead, alive) pair.
fn bisect(
    probe: &dyn Fn(f64) -> Result<f64>,
    zero_tol: f64,
    mut dead: f64,
    mut alive: f64,
) -> Result<(f64, f64)> {
    for _ in 0..BISECTION_MAX_ITER {
        if (alive - dead).abs() <= BISECTION_RESOLUTION {
            break;
        }
        let mid = 0.5 * (dead + alive);
        if probe(mid)? <= zero_tol {
            dead = mid;
        } else {
            alive = mid;
        }
    }
    Ok((dead, alive))
}

/// Maximal runs of points at or below `zero_tol` become death events; the
/// point that ends a run becomes a birth event. With a `probe` (the
/// underlying quantifier as a function of τ) both edges are refined by
/// bisection.
pub fn detect_zero_intervals(
    series: &MeasureSeries,
    zero_tol: f64,
    probe: Option<&dyn Fn(f64) -> Result<f64>>,
) -> Result<Vec<EventRecord>> {
    let pts = &series.points;
    let mut out = Vec::new();
    let mut i = 0;
    while i < pts.len() {
        if pts[i].1 > zero_tol {
            i += 1;
            continue;
        }
        let mut j = i;
        while j + 1 < pts.len() && pts[j + 1].1 <= zero_tol {
            j += 1;
        }
        let (mut start, mut start_value) = pts[i];
        if let (Some(probe), true) = (probe, i > 0) {
            let (dead, _) = bisect(probe, zero_tol, pts[i].0, pts[i - 1].0)?;
            start = dead;
            start_value = probe(dead)?;
        }
        let mut end = pts[j].0;
        let birth = if j + 1 < pts.len() {
            let (mut tau, mut value) = pts[j + 1];
            if let Some(probe) = probe {
                let (dead, alive) = bisect(probe, zero_tol, pts[j].0, pts[j + 1].0)?;
                end = dead;
                tau = alive;
                value = probe(alive)?;
            }
            Some(EventRecord::at(EventKind::Birth, tau, value))
        } else {
            None
        };
        out.push(EventRecord {
            kind: EventKind::Death,
            tau: start,
            value: start_value,
            interval_end: Some(end),
        });
        out.extend(birth);
        i = j + 1;
    }
    Ok(out)
}

/// `DEFAULT_PROMINENCE_FRACTION` of the series maximum.
pub fn default_prominence(series: &MeasureSeries) -> f64 {
    DEFAULT_PROMINENCE_FRACTION * series.max().max(0.0)
}

/// Interior local maxima whose prominence is at least `prominence`.
///
/// A flat top counts once, at its middle sample. Prominence is the height
/// above the higher of the two minima found by walking outwards until a
/// strictly higher sample or the end of the series.
pub fn count_peaks(series: &MeasureSeries, prominence: f64) -> Vec<EventRecord> {
    let v: Vec<f64> = series.values().collect();
    let n = v.len();
    let mut out = Vec::new();
    if n < 3 {
        return out;
    }
    let mut i = 1;
    while i < n - 1 {
        if v[i] <= v[i - 1] {
            i += 1;
            continue;
        }
        let mut j = i;
        while j + 1 < n && v[j + 1] == v[i] {
            j += 1;
        }
        if j + 1 < n && v[j + 1] < v[i] {
            let peak = (i + j) / 2;
            let h = v[peak];
            let left_min = v[..i]
                .iter()
                .rev()
                .take_while(|&&x| x <= h)
                .fold(h, |m, &x| m.min(x));
            let right_min = v[j + 1..].iter().take_while(|&&x| x <= h).fold(h, |m, &x| m.min(x));
            if h - left_min.max(right_min) >= prominence {
                out.push(EventRecord::at(EventKind::Peak, series.points[peak].0, h));
            }
        }
        i = j + 1;
    }
    out
}

/// Points where the discrete second difference exceeds
/// `slope_jump_tol · (max − min)`. Adjacent flagged points are merged into
/// one event at the largest jump.
pub fn detect_sudden_changes(series: &MeasureSeries, slope_jump_tol: f64) -> Result<Vec<EventRecord>> {
    let pts = &series.points;
    let mut out = Vec::new();
    if pts.len() < 3 {
        return Ok(out);
    }
    let h = pts[1].0 - pts[0].0;
    if pts.windows(2).any(|w| ((w[1].0 - w[0].0) - h).abs() > 1e-9 * h.abs().max(1.0)) {
        return Err(Error::InvalidGrid("sudden-change detection needs uniform τ spacing".into()));
    }
    let range = series.max() - series.min();
    if range <= 0.0 {
        return Ok(out);
    }
    let threshold = slope_jump_tol * range;
    let jump = |k: usize| (pts[k + 1].1 - 2.0 * pts[k].1 + pts[k - 1].1).abs();
    let mut k = 1;
    while k < pts.len() - 1 {
        if jump(k) <= threshold {
            k += 1;
            continue;
        }
        let mut best = k;
        while k + 1 < pts.len() - 1 && jump(k + 1) > threshold {
            k += 1;
            if jump(k) > jump(best) {
                best = k;
            }
        }
        out.push(EventRecord::at(EventKind::SuddenChange, pts[best].0, pts[best].1));
        k += 1;
    }
    Ok(out)
}

/// Logs a warning when an MM tangle series touches zero. Returns whether the
/// series stayed strictly positive.
pub fn warn_if_tangle_vanishes(series: &MeasureSeries, kind: NetworkKind) -> bool {
    if series.quantifier != Quantifier::Tangle || kind != NetworkKind::MM {
        return true;
    }
    let min = series.min();
    if min <= 0.0 {
        log::warn!(
            "tangle of channel {} at eps_tilde={} reaches {min:.3e}; expected it to stay positive",
            series.channel,
            series.eps_tilde
        );
        return false;
    }
    true
}
