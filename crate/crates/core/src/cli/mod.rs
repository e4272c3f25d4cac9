//! Scenario files and the runner behind the `dipnet` binary.
//!
//! A scenario is a flat list of `key = value` lines. `#` starts a comment,
//! lists are comma-separated and every key may appear at most once.

mod format;
mod run;

use std::collections::HashMap;
use std::path::PathBuf;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::netmodel::{Channel, DipolarParams, NetworkConfig, NetworkKind, DEFAULT_WERNER_X};
use crate::scan::{
    Bridge, Mode, Quantifier, ScanGrid, DEFAULT_PROMINENCE_FRACTION, DEFAULT_SLOPE_JUMP_TOL, ZERO_TOL,
};

pub use format::{format_csv, format_g};
pub use run::{csv_report, events_report, plot_script, run, series_events, RunSummary, SeriesEvents};

/// Every key a scenario file may set.
pub const KEYS: [&str; 19] = [
    "name",
    "network",
    "werner_x1",
    "werner_x2",
    "tau_min",
    "tau_max",
    "tau_steps",
    "eps_values",
    "channels",
    "quantifiers",
    "mode",
    "output_dir",
    "emit_plot_script",
    "extension.bridge",
    "extension.bridge_tau",
    "extension.bridge_eps",
    "zero_tol",
    "prominence_fraction",
    "slope_jump_tol",
];

#[derive(Clone, Debug, PartialEq)]
pub struct Scenario {
    pub name: String,
    pub network: NetworkConfig,
    /// Carries the eight-node bridge, when there is one.
    pub grid: ScanGrid,
    pub mode: Mode,
    pub output_dir: PathBuf,
    pub emit_plot_script: bool,
    pub zero_tol: f64,
    pub prominence_fraction: f64,
    pub slope_jump_tol: f64,
}

impl Default for Scenario {
    fn default() -> Self {
        Self {
            name: "scenario".into(),
            network: NetworkConfig::mm(),
            grid: ScanGrid::default(),
            mode: Mode::default(),
            output_dir: PathBuf::from("out"),
            emit_plot_script: true,
            zero_tol: ZERO_TOL,
            prominence_fraction: DEFAULT_PROMINENCE_FRACTION,
            slope_jump_tol: DEFAULT_SLOPE_JUMP_TOL,
        }
    }
}

/// Raw `key = value` pairs with the line each came from.
struct Entries(HashMap<String, (usize, String)>);

impl Entries {
    fn parse(text: &str) -> Result<Self> {
        let mut map = HashMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let Some((key, value)) = content.split_once('=') else {
                return Err(Error::Parse {
                    line,
                    message: format!("expected `key = value`, got `{content}`"),
                });
            };
            let (key, value) = (key.trim(), value.trim());
            if key.is_empty() {
                return Err(Error::Parse {
                    line,
                    message: "missing key before `=`".into(),
                });
            }
            if !KEYS.contains(&key) {
                return Err(Error::UnknownKey {
                    line,
                    key: key.into(),
                });
            }
            if let Some((first, _)) = map.insert(key.to_string(), (line, value.to_string())) {
                return Err(Error::Parse {
                    line,
                    message: format!("`{key}` already set on line {first}"),
                });
            }
        }
        Ok(Self(map))
    }

    fn line(&self, key: &str) -> Option<usize> {
        self.0.get(key).map(|(l, _)| *l)
    }

    fn invalid(&self, key: &str, message: impl Into<String>) -> Error {
        Error::Validation {
            key: key.into(),
            line: self.line(key),
            message: message.into(),
        }
    }

    fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>>
    where
        T::Err: std::fmt::Display,
    {
        match self.0.get(key) {
            None => Ok(None),
            Some((_, v)) => v
                .parse()
                .map(Some)
                .map_err(|e| self.invalid(key, format!("cannot parse `{v}`: {e}"))),
        }
    }

    fn list<T: FromStr>(&self, key: &str) -> Result<Option<Vec<T>>>
    where
        T::Err: std::fmt::Display,
    {
        let Some((_, v)) = self.0.get(key) else {
            return Ok(None);
        };
        let items: Vec<T> = v
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| s.parse().map_err(|e| self.invalid(key, format!("cannot parse `{s}`: {e}"))))
            .collect::<Result<_>>()?;
        if items.is_empty() {
            return Err(self.invalid(key, "list is empty"));
        }
        Ok(Some(items))
    }

    fn finite(&self, key: &str, default: f64) -> Result<f64> {
        let x = self.get::<f64>(key)?.unwrap_or(default);
        if !x.is_finite() {
            return Err(self.invalid(key, "must be finite"));
        }
        Ok(x)
    }
}

/// Parses and validates a scenario. Diagnostics name the offending key and,
/// where one exists, its line.
pub fn parse_scenario(text: &str) -> Result<Scenario> {
    let e = Entries::parse(text)?;
    let mut s = Scenario::default();

    if let Some(name) = e.get::<String>("name")? {
        let ok = !name.is_empty()
            && name.chars().all(|c| c.is_ascii_alphanumeric() || "_-.".contains(c))
            && !name.starts_with('.');
        if !ok {
            return Err(e.invalid("name", "must be nonempty and use only letters, digits, `_`, `-` or `.`"));
        }
        s.name = name;
    }

    let kind = e.get::<NetworkKind>("network")?.unwrap_or(NetworkKind::MM);
    let x1 = e.finite("werner_x1", DEFAULT_WERNER_X)?;
    let x2 = e.finite("werner_x2", DEFAULT_WERNER_X)?;
    s.network = NetworkConfig::new(kind, x1, x2).map_err(|err| match err {
        Error::Validation { key, message, .. } => e.invalid(&key, message),
        other => other,
    })?;

    let g = &mut s.grid;
    g.tau_min = e.finite("tau_min", g.tau_min)?;
    g.tau_max = e.finite("tau_max", g.tau_max)?;
    g.tau_steps = e.get("tau_steps")?.unwrap_or(g.tau_steps);
    if g.tau_min < 0.0 {
        return Err(e.invalid("tau_min", "must be nonnegative"));
    }
    if g.tau_max <= g.tau_min {
        let key = if e.line("tau_max").is_some() { "tau_max" } else { "tau_min" };
        return Err(e.invalid(key, format!("need tau_min < tau_max, got [{}, {}]", g.tau_min, g.tau_max)));
    }
    if g.tau_steps < 2 {
        return Err(e.invalid("tau_steps", "need at least 2 points"));
    }
    if let Some(eps) = e.list::<f64>("eps_values")? {
        if eps.iter().any(|x| !x.is_finite()) {
            return Err(e.invalid("eps_values", "values must be finite"));
        }
        g.eps_values = eps;
    }
    if let Some(ch) = e.list::<Channel>("channels")? {
        g.channels = ch;
    }
    if let Some(q) = e.list::<Quantifier>("quantifiers")? {
        g.quantifiers = q;
    }
    // Blame whichever of the two keys the file actually set.
    let set_or = |a: &'static str, b: &'static str| if e.line(a).is_some() { a } else { b };
    for &ch in &g.channels {
        if !g.quantifiers.iter().any(|q| q.accepts(ch)) {
            return Err(e.invalid(set_or("channels", "quantifiers"), format!("no listed quantifier applies to channel {ch}")));
        }
    }
    for &q in &g.quantifiers {
        if !g.channels.iter().any(|&ch| q.accepts(ch)) {
            return Err(e.invalid(set_or("quantifiers", "channels"), format!("no listed channel supports {q}")));
        }
    }

    g.bridge = match e.get::<String>("extension.bridge")?.as_deref() {
        None => {
            for key in ["extension.bridge_tau", "extension.bridge_eps"] {
                if e.line(key).is_some() {
                    return Err(e.invalid(key, "needs `extension.bridge = fixed`"));
                }
            }
            None
        }
        Some("matched") => {
            for key in ["extension.bridge_tau", "extension.bridge_eps"] {
                if e.line(key).is_some() {
                    return Err(e.invalid(key, "only used with `extension.bridge = fixed`"));
                }
            }
            Some(Bridge::Matched)
        }
        Some("fixed") => {
            let need = |key: &str| -> Result<f64> {
                match e.get::<f64>(key)? {
                    Some(x) if x.is_finite() => Ok(x),
                    Some(_) => Err(e.invalid(key, "must be finite")),
                    None => Err(e.invalid(key, "required by `extension.bridge = fixed`")),
                }
            };
            Some(Bridge::Fixed(DipolarParams::new(
                need("extension.bridge_tau")?,
                need("extension.bridge_eps")?,
            )))
        }
        Some(other) => {
            return Err(e.invalid("extension.bridge", format!("expected matched or fixed, got `{other}`")))
        }
    };
    if g.bridge.is_none() && g.channels.iter().any(|c| c.needs_extension()) {
        return Err(e.invalid("channels", "channel 18 needs an `extension.bridge` setting"));
    }
    g.validate().map_err(|err| e.invalid("channels", err.to_string()))?;

    s.mode = e.get("mode")?.unwrap_or(s.mode);
    if let Some(dir) = e.get::<String>("output_dir")? {
        if dir.is_empty() {
            return Err(e.invalid("output_dir", "must be nonempty"));
        }
        s.output_dir = dir.into();
    }
    s.emit_plot_script = e.get("emit_plot_script")?.unwrap_or(s.emit_plot_script);

    s.zero_tol = e.finite("zero_tol", s.zero_tol)?;
    if s.zero_tol < 0.0 {
        return Err(e.invalid("zero_tol", "must be nonnegative"));
    }
    s.prominence_fraction = e.finite("prominence_fraction", s.prominence_fraction)?;
    if !(0.0..=1.0).contains(&s.prominence_fraction) {
        return Err(e.invalid("prominence_fraction", "must lie in [0, 1]"));
    }
    s.slope_jump_tol = e.finite("slope_jump_tol", s.slope_jump_tol)?;
    if s.slope_jump_tol <= 0.0 {
        return Err(e.invalid("slope_jump_tol", "must be positive"));
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn err_key(text: &str) -> (String, Option<usize>) {
        match parse_scenario(text) {
            Err(Error::Validation { key, line, .. }) => (key, line),
            other => panic!("expected a validation error, got {other:?}"),
        }
    }

    #[test]
    fn minimal_file_gets_defaults() {
        let s = parse_scenario("network = MM\n").unwrap();
        assert_eq!(s.grid, ScanGrid::default());
        assert_eq!(s.network, NetworkConfig::mm());
        assert_eq!(s.name, "scenario");
        assert_eq!(s.mode, Mode::ClosedForm);
        assert!(s.emit_plot_script);
        assert_eq!(parse_scenario("").unwrap(), Scenario::default());
    }

    #[test]
    fn full_file() {
        let text = "\
# comment line
name = fig10_test
network = mw        # trailing comment
werner_x2 = 0.4
tau_min = 0.5
tau_max = 2
tau_steps = 7
eps_values = 0.3, -0.2
channels = 12, rho123, 18
quantifiers = negativity, tangle
mode = dense
output_dir = results
emit_plot_script = false
extension.bridge = fixed
extension.bridge_tau = 0.25
extension.bridge_eps = 0.1
zero_tol = 1e-8
prominence_fraction = 0.1
slope_jump_tol = 0.02
";
        let s = parse_scenario(text).unwrap();
        assert_eq!(s.name, "fig10_test");
        assert_eq!(s.network, NetworkConfig::new(NetworkKind::MW, 0.7, 0.4).unwrap());
        assert_eq!((s.grid.tau_min, s.grid.tau_max, s.grid.tau_steps), (0.5, 2.0, 7));
        assert_eq!(s.grid.eps_values, vec![0.3, -0.2]);
        assert_eq!(s.grid.channels, vec![Channel::C12, Channel::C123, Channel::C18]);
        assert_eq!(s.grid.bridge, Some(Bridge::Fixed(DipolarParams::new(0.25, 0.1))));
        assert_eq!(s.mode, Mode::Dense);
        assert_eq!(s.output_dir, PathBuf::from("results"));
        assert!(!s.emit_plot_script);
        assert_eq!((s.zero_tol, s.prominence_fraction, s.slope_jump_tol), (1e-8, 0.1, 0.02));
    }

    #[test]
    fn werner_out_of_range_names_key() {
        assert_eq!(err_key("network = WW\nwerner_x1 = 1.5\n"), ("werner_x1".into(), Some(2)));
    }

    #[test]
    fn eight_node_channel_needs_extension() {
        assert_eq!(err_key("channels = 18\n").0, "channels");
        let s = parse_scenario("channels = 18\nextension.bridge = matched\n").unwrap();
        assert_eq!(s.grid.bridge, Some(Bridge::Matched));
        assert_eq!(
            err_key("channels = 18\nextension.bridge = fixed\nextension.bridge_tau = 1\n").0,
            "extension.bridge_eps"
        );
        assert_eq!(err_key("extension.bridge_tau = 1\n").0, "extension.bridge_tau");
    }

    #[test]
    fn malformed_and_unknown_lines() {
        assert!(matches!(parse_scenario("network MM\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_scenario("= MM\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(
            parse_scenario("network = MM\n\nnetwork = WW\n"),
            Err(Error::Parse { line: 3, .. })
        ));
        match parse_scenario("# x\ncolour = red\n") {
            Err(Error::UnknownKey { line: 2, key }) => assert_eq!(key, "colour"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn value_errors_name_key_and_line() {
        let cases = [
            ("network = XY\n", "network"),
            ("tau_steps = many\n", "tau_steps"),
            ("tau_steps = 1\n", "tau_steps"),
            ("tau_min = -1\n", "tau_min"),
            ("tau_min = 3\ntau_max = 2\n", "tau_max"),
            ("eps_values = 0.1, x\n", "eps_values"),
            ("eps_values = ,\n", "eps_values"),
            ("channels = 12, 57\n", "channels"),
            ("quantifiers = tangle\n", "quantifiers"),
            ("channels = 123\n", "channels"),
            ("channels = 12\nquantifiers = negativity, tangle\n", "quantifiers"),
            ("mode = fast\n", "mode"),
            ("emit_plot_script = maybe\n", "emit_plot_script"),
            ("name = ../up\n", "name"),
            ("zero_tol = -1\n", "zero_tol"),
            ("prominence_fraction = 2\n", "prominence_fraction"),
            ("slope_jump_tol = 0\n", "slope_jump_tol"),
            ("extension.bridge = sometimes\n", "extension.bridge"),
            ("werner_x2 = nan\n", "werner_x2"),
        ];
        for (text, key) in cases {
            let (k, line) = err_key(text);
            assert_eq!(k, key, "{text}");
            assert!(line.is_some(), "{text}");
        }
    }

    #[test]
    fn parse_errors_map_to_exit_code_two() {
        for text in ["bogus\n", "what = 1\n", "tau_steps = 0\n"] {
            assert_eq!(parse_scenario(text).unwrap_err().exit_code(), 2);
        }
    }
}
