//! Parameter sweeps over (τ, ε̃) and post-processing of the resulting series.

mod events;

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::closedform;
use crate::error::{Error, Result};
use crate::measures;
use crate::netmodel::{self, Channel, DipolarParams, NetworkConfig};
use crate::qmat::{self, DensityMatrix};

pub use events::{
    count_peaks, default_prominence, detect_sudden_changes, detect_zero_intervals, warn_if_tangle_vanishes,
    EventKind, EventRecord, BISECTION_MAX_ITER, BISECTION_RESOLUTION, DEFAULT_PROMINENCE_FRACTION,
    DEFAULT_SLOPE_JUMP_TOL, ZERO_TOL,
};

/// The four asymmetry values used throughout the reference figures.
pub const DEFAULT_EPS_VALUES: [f64; 4] = [-0.2, 0.0, 0.1, 0.3];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Quantifier {
    Negativity,
    Naqc,
    Tangle,
}

impl Quantifier {
    pub fn label(self) -> &'static str {
        match self {
            Quantifier::Negativity => "negativity",
            Quantifier::Naqc => "naqc",
            Quantifier::Tangle => "tangle",
        }
    }

    /// Number of qubits a channel must have for this quantifier.
    pub fn channel_qubits(self) -> usize {
        match self {
            Quantifier::Negativity | Quantifier::Naqc => 2,
            Quantifier::Tangle => 3,
        }
    }

    pub fn accepts(self, channel: Channel) -> bool {
        channel.nqubits() == self.channel_qubits()
    }

    pub fn evaluate(self, rho: &DensityMatrix) -> Result<f64> {
        match self {
            Quantifier::Negativity => measures::negativity(rho),
            Quantifier::Naqc => measures::naqc_degree(rho),
            Quantifier::Tangle => Ok(measures::pi_tangle(rho)?.pi),
        }
    }
}

impl fmt::Display for Quantifier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Quantifier {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "negativity" => Ok(Quantifier::Negativity),
            "naqc" => Ok(Quantifier::Naqc),
            "tangle" => Ok(Quantifier::Tangle),
            other => Err(format!("unknown quantifier `{other}` (expected negativity, naqc or tangle)")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Mode {
    /// Closed forms where they exist, dense evolution elsewhere.
    #[default]
    ClosedForm,
    Dense,
    /// Dense evolution, with every closed form checked against it.
    Validate,
}

impl Mode {
    pub fn label(self) -> &'static str {
        match self {
            Mode::ClosedForm => "closed_form",
            Mode::Dense => "dense",
            Mode::Validate => "validate",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "closed_form" => Ok(Mode::ClosedForm),
            "dense" => Ok(Mode::Dense),
            "validate" => Ok(Mode::Validate),
            other => Err(format!("unknown mode `{other}` (expected closed_form, dense or validate)")),
        }
    }
}

/// Interaction joining two hops in the eight-node network.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Bridge {
    /// Same (τ, ε̃) as the grid point.
    Matched,
    Fixed(DipolarParams),
}

impl Bridge {
    pub fn resolve(self, inner: DipolarParams) -> DipolarParams {
        match self {
            Bridge::Matched => inner,
            Bridge::Fixed(p) => p,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanGrid {
    pub tau_min: f64,
    pub tau_max: f64,
    pub tau_steps: usize,
    pub eps_values: Vec<f64>,
    pub channels: Vec<Channel>,
    pub quantifiers: Vec<Quantifier>,
    /// Required when `channels` contains the eight-node channel.
    pub bridge: Option<Bridge>,
}

impl Default for ScanGrid {
    fn default() -> Self {
        Self {
            tau_min: 0.0,
            tau_max: 10.0,
            tau_steps: 1001,
            eps_values: DEFAULT_EPS_VALUES.to_vec(),
            channels: vec![Channel::C12],
            quantifiers: vec![Quantifier::Negativity],
            bridge: None,
        }
    }
}

impl ScanGrid {
    pub fn new(channels: Vec<Channel>, quantifiers: Vec<Quantifier>) -> Self {
        Self {
            channels,
            quantifiers,
            ..Self::default()
        }
    }

    pub fn with_taus(mut self, tau_min: f64, tau_max: f64, tau_steps: usize) -> Self {
        self.tau_min = tau_min;
        self.tau_max = tau_max;
        self.tau_steps = tau_steps;
        self
    }

    pub fn with_eps(mut self, eps_values: Vec<f64>) -> Self {
        self.eps_values = eps_values;
        self
    }

    pub fn with_bridge(mut self, bridge: Bridge) -> Self {
        self.bridge = Some(bridge);
        self
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidGrid(m));
        if !(self.tau_min.is_finite() && self.tau_max.is_finite()) || self.tau_min >= self.tau_max {
            return bad(format!("need tau_min < tau_max, got [{}, {}]", self.tau_min, self.tau_max));
        }
        if self.tau_steps < 2 {
            return bad(format!("need at least 2 tau steps, got {}", self.tau_steps));
        }
        if self.eps_values.is_empty() || self.eps_values.iter().any(|e| !e.is_finite()) {
            return bad("eps_values must be a nonempty list of finite numbers".into());
        }
        if self.channels.is_empty() || self.quantifiers.is_empty() {
            return bad("channels and quantifiers must be nonempty".into());
        }
        for &ch in &self.channels {
            if !self.quantifiers.iter().any(|q| q.accepts(ch)) {
                return bad(format!("no listed quantifier applies to channel {ch}"));
            }
            if ch.needs_extension() && self.bridge.is_none() {
                return bad("channel 18 needs a bridge".into());
            }
        }
        for &q in &self.quantifiers {
            if !self.channels.iter().any(|&ch| q.accepts(ch)) {
                return bad(format!("no listed channel supports quantifier {q}"));
            }
        }
        Ok(())
    }

    /// Evenly spaced τ values, endpoints included.
    pub fn taus(&self) -> Vec<f64> {
        let n = self.tau_steps;
        let h = (self.tau_max - self.tau_min) / (n - 1) as f64;
        (0..n)
            .map(|k| if k == n - 1 { self.tau_max } else { self.tau_min + k as f64 * h })
            .collect()
    }

    /// (channel, quantifier) pairs in output order.
    pub fn series_keys(&self) -> Vec<(Channel, Quantifier)> {
        self.channels
            .iter()
            .flat_map(|&ch| {
                self.quantifiers
                    .iter()
                    .filter(move |q| q.accepts(ch))
                    .map(move |&q| (ch, q))
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MeasureSeries {
    pub channel: Channel,
    pub quantifier: Quantifier,
    pub eps_tilde: f64,
    /// (τ, value), τ strictly increasing.
    pub points: Vec<(f64, f64)>,
}

impl MeasureSeries {
    pub fn taus(&self) -> impl Iterator<Item = f64> + '_ {
        self.points.iter().map(|p| p.0)
    }

    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        self.points.iter().map(|p| p.1)
    }

    pub fn min(&self) -> f64 {
        self.values().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.values().fold(f64::NEG_INFINITY, f64::max)
    }
}

/// States of several channels at one parameter point. The four-node register
/// is evolved at most once.
pub fn channel_states(
    cfg: &NetworkConfig,
    p: DipolarParams,
    bridge: Option<Bridge>,
    channels: &[Channel],
    mode: Mode,
) -> Result<Vec<DensityMatrix>> {
    let bridge = bridge.map(|b| b.resolve(p));
    let mut network: Option<DensityMatrix> = None;
    let mut dense = |ch: Channel| -> Result<DensityMatrix> {
        if ch.needs_extension() {
            return netmodel::dense_channel(cfg, p, bridge, ch);
        }
        if network.is_none() {
            network = Some(netmodel::evolved_network(cfg, p)?);
        }
        qmat::partial_trace(network.as_ref().expect("just set"), ch.qubits())
    };
    channels
        .iter()
        .map(|&ch| match mode {
            Mode::Dense => dense(ch),
            Mode::ClosedForm => match closedform::closed_channel(cfg, p, bridge, ch)? {
                Some(state) => Ok(state),
                None => dense(ch),
            },
            Mode::Validate => {
                let d = dense(ch)?;
                if let Some(closed) = closedform::closed_channel(cfg, p, bridge, ch)? {
                    closedform::compare(ch, p, closed.matrix(), d.matrix())?;
                }
                Ok(d)
            }
        })
        .collect()
}

/// One quantifier on one channel at one parameter point.
pub fn evaluate_point(
    cfg: &NetworkConfig,
    p: DipolarParams,
    bridge: Option<Bridge>,
    channel: Channel,
    quantifier: Quantifier,
    mode: Mode,
) -> Result<f64> {
    if !quantifier.accepts(channel) {
        return Err(Error::InvalidGrid(format!(
            "quantifier {quantifier} does not apply to channel {channel}"
        )));
    }
    let states = channel_states(cfg, p, bridge, &[channel], mode)?;
    quantifier.evaluate(&states[0])
}

/// One series per (channel, quantifier, ε̃), ordered by channel, then
/// quantifier, then ε̃ as listed in the grid. Grid points are evaluated in
/// parallel; the result does not depend on scheduling.
pub fn sweep(cfg: &NetworkConfig, grid: &ScanGrid, mode: Mode) -> Result<Vec<MeasureSeries>> {
    grid.validate()?;
    let taus = grid.taus();
    let keys = grid.series_keys();
    let work: Vec<(usize, usize)> = (0..grid.eps_values.len())
        .flat_map(|e| (0..taus.len()).map(move |t| (e, t)))
        .collect();

    let rows: Vec<Vec<f64>> = work
        .par_iter()
        .map(|&(e, t)| {
            let p = DipolarParams::new(taus[t], grid.eps_values[e]);
            let states = channel_states(cfg, p, grid.bridge, &grid.channels, mode)?;
            keys.iter()
                .map(|&(ch, q)| {
                    let idx = grid.channels.iter().position(|&c| c == ch).expect("key from grid");
                    q.evaluate(&states[idx])
                })
                .collect::<Result<Vec<f64>>>()
        })
        .collect::<Result<_>>()?;

    let nt = taus.len();
    let mut out = Vec::with_capacity(keys.len() * grid.eps_values.len());
    for (k, &(channel, quantifier)) in keys.iter().enumerate() {
        for (e, &eps_tilde) in grid.eps_values.iter().enumerate() {
            let points = (0..nt).map(|t| (taus[t], rows[e * nt + t][k])).collect();
            out.push(MeasureSeries {
                channel,
                quantifier,
                eps_tilde,
                points,
            });
        }
    }
    Ok(out)
}
