//! X-state node pairs, the dipolar coupling and its propagator, and the
//! 4- and 8-node networks built from them.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qmat::{self, c, re, ComplexMatrix, DensityMatrix, ONE, ZERO};

/// Bell-weight slack accepted by [`XStateParams::new`].
pub const BELL_WEIGHT_TOL: f64 = 1e-12;
/// Unitarity slack accepted by [`evolve_pair`].
pub const UNITARY_TOL: f64 = 1e-12;
/// Werner mixing used when a configuration does not name one.
pub const DEFAULT_WERNER_X: f64 = 0.7;

/// Single-qubit Pauli operators.
pub struct PauliBasis;

impl PauliBasis {
    pub fn identity() -> ComplexMatrix {
        ComplexMatrix::identity(2)
    }

    pub fn x() -> ComplexMatrix {
        ComplexMatrix::from_row_major(vec![ZERO, ONE, ONE, ZERO]).unwrap()
    }

    pub fn y() -> ComplexMatrix {
        ComplexMatrix::from_row_major(vec![ZERO, c(0.0, -1.0), c(0.0, 1.0), ZERO]).unwrap()
    }

    pub fn z() -> ComplexMatrix {
        ComplexMatrix::from_real_diagonal(&[1.0, -1.0])
    }
}

/// Correlation triple (a, b, c) of the two-qubit state
/// ¼(1 + a σx⊗σx + b σy⊗σy + c σz⊗σz).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct XStateParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl XStateParams {
    /// Accepts the triple only if all four Bell-basis weights are non-negative.
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        let p = Self { a, b, c };
        let w = p.bell_weights();
        if let Some(min) = w.iter().copied().reduce(f64::min).filter(|&m| m < -BELL_WEIGHT_TOL) {
            return Err(Error::NotPositive(format!(
                "X-state (a, b, c) = ({a}, {b}, {c}) has Bell weight {min:.3e}"
            )));
        }
        Ok(p)
    }

    /// Weights on |Φ+⟩, |Φ−⟩, |Ψ+⟩, |Ψ−⟩.
    pub fn bell_weights(&self) -> [f64; 4] {
        let Self { a, b, c } = *self;
        [
            (1.0 + a - b + c) / 4.0,
            (1.0 - a + b + c) / 4.0,
            (1.0 + a + b - c) / 4.0,
            (1.0 - a - b - c) / 4.0,
        ]
    }

    pub fn singlet() -> Self {
        Self {
            a: -1.0,
            b: -1.0,
            c: -1.0,
        }
    }

    /// x·|ψ−⟩⟨ψ−| + (1 − x)·I/4.
    pub fn werner(x: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&x) {
            return Err(Error::Validation {
                key: "werner_x".into(),
                line: None,
                message: format!("{x} is outside [0, 1]"),
            });
        }
        Ok(Self { a: -x, b: -x, c: -x })
    }
}

/// Dimensionless coupling asymmetry ε̃ = ε/Δ and interaction time τ.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DipolarParams {
    pub eps_tilde: f64,
    pub tau: f64,
}

impl DipolarParams {
    pub fn new(tau: f64, eps_tilde: f64) -> Self {
        Self { eps_tilde, tau }
    }

    /// The (τ, ε̃) whose propagator equals exp(−i H t) for the coupling
    /// Hamiltonian with constants Δ, ε. The mapping is τ = −Δ t / 12; every
    /// correlation quantifier is even in τ.
    pub fn from_hamiltonian(delta: f64, eps: f64, t: f64) -> Self {
        Self {
            eps_tilde: eps / delta,
            tau: tau_for_time(delta, t),
        }
    }

    pub fn kappa_x(&self) -> f64 {
        1.0 - 3.0 * self.eps_tilde
    }

    pub fn kappa_y(&self) -> f64 {
        1.0 + 3.0 * self.eps_tilde
    }

    pub fn kappa_z(&self) -> f64 {
        -2.0
    }
}

/// Dimensionless time τ matching physical time `t` at axial coupling `delta`.
pub fn tau_for_time(delta: f64, t: f64) -> f64 {
    -delta * t / 12.0
}

/// Propagator coefficients r1..r4 and the trigonometric factors they are built from.
///
/// The propagator is r1·I + r2·σx⊗σx − r3·σy⊗σy + r4·σz⊗σz, which puts r2 + r3
/// on the |00⟩⟨11| corners and r2 − r3 on the |01⟩⟨10| block.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PropagatorCoeffs {
    pub r1: Complex64,
    pub r2: Complex64,
    pub r3: Complex64,
    pub r4: Complex64,
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub s1: f64,
    pub s2: f64,
    pub s3: f64,
}

impl PropagatorCoeffs {
    pub fn norm_sqr_sum(&self) -> f64 {
        [self.r1, self.r2, self.r3, self.r4]
            .iter()
            .map(|r| r.norm_sqr())
            .sum()
    }

    pub fn r(&self) -> [Complex64; 4] {
        [self.r1, self.r2, self.r3, self.r4]
    }
}

pub fn propagator_coeffs(p: DipolarParams) -> PropagatorCoeffs {
    let (s1, c1) = (p.kappa_x() * p.tau).sin_cos();
    let (s2, c2) = (p.kappa_y() * p.tau).sin_cos();
    let (s3, c3) = (p.kappa_z() * p.tau).sin_cos();
    PropagatorCoeffs {
        r1: c(c1 * c2 * c3, -s1 * s2 * s3),
        r2: c(c1 * s2 * s3, -c2 * c3 * s1),
        // Sign chosen so that the corner/inner layout below is unitary.
        r3: c(-c2 * s1 * s3, c1 * c3 * s2),
        r4: c(c3 * s1 * s2, -c1 * c2 * s3),
        c1,
        c2,
        c3,
        s1,
        s2,
        s3,
    }
}

/// Assembles the 4×4 propagator from its coefficients.
pub fn propagator_from_coeffs(pc: &PropagatorCoeffs) -> ComplexMatrix {
    let mut u = ComplexMatrix::zeros(4);
    let outer = pc.r1 + pc.r4;
    let inner = pc.r1 - pc.r4;
    u[(0, 0)] = outer;
    u[(3, 3)] = outer;
    u[(1, 1)] = inner;
    u[(2, 2)] = inner;
    u[(0, 3)] = pc.r2 + pc.r3;
    u[(3, 0)] = pc.r2 + pc.r3;
    u[(1, 2)] = pc.r2 - pc.r3;
    u[(2, 1)] = pc.r2 - pc.r3;
    u
}

pub fn propagator_matrix(p: DipolarParams) -> ComplexMatrix {
    propagator_from_coeffs(&propagator_coeffs(p))
}

/// Dipolar coupling Hamiltonian in the basis {00, 01, 10, 11}.
pub fn dipolar_hamiltonian(delta: f64, eps: f64) -> ComplexMatrix {
    let d = delta / 6.0;
    let e = eps / 2.0;
    let mut h = ComplexMatrix::from_real_diagonal(&[d, -d, -d, d]);
    h[(0, 3)] = re(e);
    h[(3, 0)] = re(e);
    h[(1, 2)] = re(-d);
    h[(2, 1)] = re(-d);
    h
}

/// 4×4 X-shaped state for the given correlation triple.
pub fn x_state(params: XStateParams) -> Result<DensityMatrix> {
    let XStateParams { a, b, c } = XStateParams::new(params.a, params.b, params.c)?;
    let mut m = ComplexMatrix::from_real_diagonal(&[
        (1.0 + c) / 4.0,
        (1.0 - c) / 4.0,
        (1.0 - c) / 4.0,
        (1.0 + c) / 4.0,
    ]);
    m[(0, 3)] = re((a - b) / 4.0);
    m[(3, 0)] = re((a - b) / 4.0);
    m[(1, 2)] = re((a + b) / 4.0);
    m[(2, 1)] = re((a + b) / 4.0);
    Ok(DensityMatrix::from_trusted(m))
}

/// |ψ−⟩ = (|01⟩ − |10⟩)/√2 as a density matrix.
pub fn singlet_state() -> DensityMatrix {
    DensityMatrix::pure(&[ZERO, re(FRAC_1_SQRT_2), re(-FRAC_1_SQRT_2), ZERO]).unwrap()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NetworkKind {
    /// Two singlet pairs.
    MM,
    /// Two Werner pairs.
    WW,
    /// Singlet first pair, Werner second pair.
    MW,
}

impl fmt::Display for NetworkKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NetworkKind::MM => "MM",
            NetworkKind::WW => "WW",
            NetworkKind::MW => "MW",
        })
    }
}

impl FromStr for NetworkKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim().to_ascii_uppercase().as_str() {
            "MM" => Ok(NetworkKind::MM),
            "WW" => Ok(NetworkKind::WW),
            "MW" => Ok(NetworkKind::MW),
            other => Err(format!("unknown network kind `{other}` (expected MM, WW or MW)")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NetworkConfig {
    pub kind: NetworkKind,
    pub werner_x1: f64,
    pub werner_x2: f64,
}

impl NetworkConfig {
    pub fn new(kind: NetworkKind, werner_x1: f64, werner_x2: f64) -> Result<Self> {
        for (key, x) in [("werner_x1", werner_x1), ("werner_x2", werner_x2)] {
            if !(0.0..=1.0).contains(&x) {
                return Err(Error::Validation {
                    key: key.into(),
                    line: None,
                    message: format!("{x} is outside [0, 1]"),
                });
            }
        }
        Ok(Self {
            kind,
            werner_x1,
            werner_x2,
        })
    }

    pub fn mm() -> Self {
        Self::with_kind(NetworkKind::MM)
    }

    /// Given kind with the default Werner mixing on both pairs.
    pub fn with_kind(kind: NetworkKind) -> Self {
        Self {
            kind,
            werner_x1: DEFAULT_WERNER_X,
            werner_x2: DEFAULT_WERNER_X,
        }
    }

    /// Correlation triples of the (1,2) and (3,4) pairs.
    pub fn pair_params(&self) -> Result<(XStateParams, XStateParams)> {
        Ok(match self.kind {
            NetworkKind::MM => (XStateParams::singlet(), XStateParams::singlet()),
            NetworkKind::WW => (
                XStateParams::werner(self.werner_x1)?,
                XStateParams::werner(self.werner_x2)?,
            ),
            NetworkKind::MW => (XStateParams::singlet(), XStateParams::werner(self.werner_x2)?),
        })
    }

    /// True when both pairs start in the same state.
    pub fn is_symmetric(&self) -> bool {
        match self.kind {
            NetworkKind::MM => true,
            NetworkKind::WW => self.werner_x1 == self.werner_x2,
            NetworkKind::MW => self.werner_x2 == 1.0,
        }
    }
}

/// ρ12 ⊗ ρ34 for the configured pairs.
pub fn initial_network(cfg: &NetworkConfig) -> Result<DensityMatrix> {
    let (p1, p2) = cfg.pair_params()?;
    Ok(x_state(p1)?.kron(&x_state(p2)?))
}

/// Embeds a two-qubit gate on qubits (i, j), i < j, into an n-qubit register.
pub fn embed_two_qubit(u: &ComplexMatrix, nqubits: usize, i: usize, j: usize) -> Result<ComplexMatrix> {
    check_pair(nqubits, i, j)?;
    if u.dim() != 4 {
        return Err(Error::DimensionMismatch(format!(
            "two-qubit gate must be 4x4, got {0}x{0}",
            u.dim()
        )));
    }
    let bi = nqubits - 1 - i;
    let bj = nqubits - 1 - j;
    let mask = (1 << bi) | (1 << bj);
    let local = |idx: usize| ((idx >> bi) & 1) << 1 | ((idx >> bj) & 1);
    Ok(ComplexMatrix::from_fn(1 << nqubits, |r, col| {
        if r & !mask == col & !mask {
            u[(local(r), local(col))]
        } else {
            ZERO
        }
    }))
}

fn check_pair(nqubits: usize, i: usize, j: usize) -> Result<()> {
    if i >= j || j >= nqubits {
        return Err(Error::BadSubsystem(format!(
            "qubit pair ({i}, {j}) must satisfy i < j < {nqubits}"
        )));
    }
    Ok(())
}

/// U_full ρ U_full^† with `u` acting on qubits (i, j) and identity elsewhere.
///
/// The gate is applied block-wise on index quadruples rather than by forming
/// the full 2^n × 2^n unitary.
pub fn evolve_pair(rho: &DensityMatrix, u: &ComplexMatrix, qubits: (usize, usize)) -> Result<DensityMatrix> {
    let n = rho.nqubits();
    let (i, j) = qubits;
    check_pair(n, i, j)?;
    if u.dim() != 4 {
        return Err(Error::DimensionMismatch(format!(
            "two-qubit gate must be 4x4, got {0}x{0}",
            u.dim()
        )));
    }
    let dev = u.unitarity_deviation();
    if dev > UNITARY_TOL {
        return Err(Error::NotUnitary { deviation: dev });
    }
    let d = rho.dim();
    let bi = n - 1 - i;
    let bj = n - 1 - j;
    let mask = (1usize << bi) | (1usize << bj);
    let offsets = [0, 1 << bj, 1 << bi, (1 << bi) | (1 << bj)];
    let bases: Vec<usize> = (0..d).filter(|x| x & mask == 0).collect();

    let src = rho.matrix();
    // Left multiplication: rows mixed within each quadruple.
    let mut left = ComplexMatrix::zeros(d);
    for &base in &bases {
        let rows = offsets.map(|o| base | o);
        for col in 0..d {
            let v = rows.map(|r| src[(r, col)]);
            for (a, &r) in rows.iter().enumerate() {
                let mut acc = ZERO;
                for b in 0..4 {
                    acc += u[(a, b)] * v[b];
                }
                left[(r, col)] = acc;
            }
        }
    }
    // Right multiplication by U^†: columns mixed within each quadruple.
    let mut out = ComplexMatrix::zeros(d);
    for r in 0..d {
        for &base in &bases {
            let cols = offsets.map(|o| base | o);
            let v = cols.map(|col| left[(r, col)]);
            for (a, &col) in cols.iter().enumerate() {
                let mut acc = ZERO;
                for b in 0..4 {
                    acc += v[b] * u[(a, b)].conj();
                }
                out[(r, col)] = acc;
            }
        }
    }
    Ok(DensityMatrix::from_trusted(out.hermitian_part()))
}

/// Four-node network after the middle pair (qubits 1, 2) has interacted.
pub fn evolved_network(cfg: &NetworkConfig, p: DipolarParams) -> Result<DensityMatrix> {
    evolve_pair(&initial_network(cfg)?, &propagator_matrix(p), (1, 2))
}

/// Terminal channel ρ18 of two identical hops joined at their terminals.
///
/// Each hop is evolved on its middle pair with `p_inner`, the 256×256
/// product is formed, the bridge propagator acts on qubits (3, 4), and all
/// but the first and last qubits are traced out.
pub fn extend_to_eight(
    cfg: &NetworkConfig,
    p_inner: DipolarParams,
    p_bridge: DipolarParams,
) -> Result<DensityMatrix> {
    let hop = evolved_network(cfg, p_inner)?;
    let joined = hop.kron(&hop);
    let bridged = evolve_pair(&joined, &propagator_matrix(p_bridge), (3, 4))?;
    qmat::partial_trace(&bridged, &[0, 7])
}

/// Reduced channels of the network, named by their 1-based node labels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Channel {
    C12,
    C14,
    C23,
    C34,
    C13,
    C24,
    C123,
    C234,
    C124,
    /// Terminals of the eight-node network.
    C18,
}

impl Channel {
    pub const ALL: [Channel; 10] = [
        Channel::C12,
        Channel::C14,
        Channel::C23,
        Channel::C34,
        Channel::C13,
        Channel::C24,
        Channel::C123,
        Channel::C234,
        Channel::C124,
        Channel::C18,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Channel::C12 => "12",
            Channel::C14 => "14",
            Channel::C23 => "23",
            Channel::C34 => "34",
            Channel::C13 => "13",
            Channel::C24 => "24",
            Channel::C123 => "123",
            Channel::C234 => "234",
            Channel::C124 => "124",
            Channel::C18 => "18",
        }
    }

    /// Zero-based qubits kept from the four-node register. The eight-node
    /// channel keeps {0, 7} of its own register instead.
    pub fn qubits(self) -> &'static [usize] {
        match self {
            Channel::C12 => &[0, 1],
            Channel::C14 => &[0, 3],
            Channel::C23 => &[1, 2],
            Channel::C34 => &[2, 3],
            Channel::C13 => &[0, 2],
            Channel::C24 => &[1, 3],
            Channel::C123 => &[0, 1, 2],
            Channel::C234 => &[1, 2, 3],
            Channel::C124 => &[0, 1, 3],
            Channel::C18 => &[0, 7],
        }
    }

    pub fn nqubits(self) -> usize {
        self.qubits().len()
    }

    pub fn needs_extension(self) -> bool {
        self == Channel::C18
    }
}

impl fmt::Display for Channel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Channel {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let s = s.trim();
        let s = s.strip_prefix("rho").unwrap_or(s);
        Channel::ALL
            .into_iter()
            .find(|c| c.label() == s)
            .ok_or_else(|| format!("unknown channel `{s}`"))
    }
}

/// Reduced state of `channel` by dense evolution. The eight-node channel
/// requires bridge parameters.
pub fn dense_channel(
    cfg: &NetworkConfig,
    p: DipolarParams,
    bridge: Option<DipolarParams>,
    channel: Channel,
) -> Result<DensityMatrix> {
    if channel == Channel::C18 {
        let bridge = bridge.ok_or_else(|| Error::Validation {
            key: "channels".into(),
            line: None,
            message: "channel 18 needs bridge parameters".into(),
        })?;
        return extend_to_eight(cfg, p, bridge);
    }
    qmat::partial_trace(&evolved_network(cfg, p)?, channel.qubits())
}
