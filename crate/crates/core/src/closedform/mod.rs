//! Explicit reduced density matrices of the evolved four-node network and of
//! the eight-node terminal channel.
//!
//! Every builder here is an independent fast path; [`validate`] compares it
//! entry by entry with dense evolution. Several printed coefficient layouts
//! needed repair, and each builder can still reproduce the printed layout for
//! the typo ledger (see [`ledger`]).

pub mod ledger;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::netmodel::{
    self, propagator_coeffs, Channel, DipolarParams, NetworkConfig, PropagatorCoeffs, XStateParams,
};
use crate::qmat::{re, ComplexMatrix, DensityMatrix, HERM_TOL, ORACLE_TOL};

pub use ledger::{typo_ledger, typo_ledger_report, TypoCause, TypoEntry};

/// Coefficients shared by the four-node closed forms.
///
/// `a` and `b` hold A1..A4 and B1..B4 (from the first and second pair),
/// `gamma` holds γ1..γ4 and `r` the propagator coefficients they came from.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClosedFormCoefficients {
    pub a: [f64; 4],
    pub b: [f64; 4],
    pub beta1: f64,
    pub beta2: f64,
    pub gamma: [Complex64; 4],
    pub r: [Complex64; 4],
}

impl ClosedFormCoefficients {
    /// γi γj^*, 1-based.
    #[inline]
    fn g(&self, i: usize, j: usize) -> Complex64 {
        self.gamma[i - 1] * self.gamma[j - 1].conj()
    }

    #[inline]
    fn big_a(&self, i: usize) -> f64 {
        self.a[i - 1]
    }

    #[inline]
    fn big_b(&self, i: usize) -> f64 {
        self.b[i - 1]
    }
}

/// Switches that restore individual printed layouts in place of the repaired
/// ones. All off means fully repaired.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub(crate) struct Printed {
    /// Second assignment to A3 (B3) overwrites the first; A4 = B4 = 0.
    pub duplicate_a3: bool,
    /// ρ12 scaled by 2·B1 instead of 2·β1.
    pub rho12_prefactor: bool,
    /// Last ρ234 term repeats the coefficient before it.
    pub rho234_last_term: bool,
    /// Stray |111⟩⟨111| on the second ρ124 term, none on the first.
    pub rho124_stray_term: bool,
}

fn pair_coeffs(p: XStateParams, duplicate_a3: bool) -> [f64; 4] {
    let XStateParams { a, b, c } = p;
    let (third, fourth) = if duplicate_a3 {
        ((a + b) / 4.0, 0.0)
    } else {
        ((a - b) / 4.0, (a + b) / 4.0)
    };
    [(c + 1.0) / 4.0, (1.0 - c) / 4.0, third, fourth]
}

pub(crate) fn coeffs_with(
    pair1: XStateParams,
    pair2: XStateParams,
    pc: &PropagatorCoeffs,
    printed: Printed,
) -> ClosedFormCoefficients {
    let a = pair_coeffs(pair1, printed.duplicate_a3);
    let b = pair_coeffs(pair2, printed.duplicate_a3);
    let PropagatorCoeffs { r1, r2, r3, r4, .. } = *pc;
    ClosedFormCoefficients {
        a,
        b,
        beta1: b[0] + b[1],
        beta2: a[0] + a[1],
        gamma: [r2 - r3, r2 + r3, r1 - r4, r1 + r4],
        r: [r1, r2, r3, r4],
    }
}

pub fn coeffs(pair1: XStateParams, pair2: XStateParams, pc: &PropagatorCoeffs) -> ClosedFormCoefficients {
    coeffs_with(pair1, pair2, pc, Printed::default())
}

/// Coefficients for a network configuration at one parameter point.
pub fn coeffs_for(cfg: &NetworkConfig, p: DipolarParams) -> Result<ClosedFormCoefficients> {
    let (p1, p2) = cfg.pair_params()?;
    Ok(coeffs(p1, p2, &propagator_coeffs(p)))
}

/// X-shaped 4×4 with the usual symmetry fills.
fn x_matrix(d11: Complex64, d14: Complex64, d22: Complex64, d23: Complex64) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(4);
    m[(0, 0)] = d11;
    m[(3, 3)] = d11;
    m[(1, 1)] = d22;
    m[(2, 2)] = d22;
    m[(0, 3)] = d14;
    m[(3, 0)] = d14;
    m[(1, 2)] = d23;
    m[(2, 1)] = d23;
    m
}

/// (ket, bra) basis indices of the |ket⟩⟨bra| entries one coefficient fills.
type Coords = &'static [(usize, usize)];

/// Sums coefficient × (sum of |ket⟩⟨bra|) terms into an 8×8 matrix.
fn assemble(terms: &[(Complex64, Coords)]) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(8);
    for (coef, kets) in terms {
        for &(ket, bra) in kets.iter() {
            m[(ket, bra)] += *coef;
        }
    }
    m
}

pub(crate) fn rho12_matrix(cf: &ClosedFormCoefficients, printed: Printed) -> ComplexMatrix {
    let a = |i| cf.big_a(i);
    let rr: Vec<f64> = cf.r.iter().map(|z| z.norm_sqr()).collect();
    let pref = if printed.rho12_prefactor {
        2.0 * cf.big_b(1)
    } else {
        2.0 * cf.beta1
    };
    let d11 = a(1) * rr[0] + a(2) * rr[1] + a(2) * rr[2] + a(1) * rr[3];
    let d14 = a(3) * rr[0] + a(4) * rr[1] - a(4) * rr[2] - a(3) * rr[3];
    let d22 = a(2) * rr[0] + a(1) * rr[1] + a(1) * rr[2] + a(2) * rr[3];
    let d23 = a(4) * rr[0] + a(3) * rr[1] - a(3) * rr[2] - a(4) * rr[3];
    x_matrix(re(pref * d11), re(pref * d14), re(pref * d22), re(pref * d23))
}

pub(crate) fn rho14_matrix(cf: &ClosedFormCoefficients) -> ComplexMatrix {
    let (a, b, g) = (|i| cf.big_a(i), |i| cf.big_b(i), |i, j| cf.g(i, j));
    let diag = |p: f64, q: f64| p * g(1, 1) + q * g(2, 2) + p * g(3, 3) + q * g(4, 4);
    let off = |p: f64, q: f64| p * g(3, 1) + q * g(4, 2) + p * g(1, 3) + q * g(2, 4);
    let d11 = a(1) * diag(b(2), b(1)) + a(2) * diag(b(1), b(2));
    let d14 = a(3) * off(b(4), b(3)) + a(4) * off(b(3), b(4));
    let d22 = a(2) * diag(b(2), b(1)) + a(1) * diag(b(1), b(2));
    let d23 = a(4) * off(b(4), b(3)) + a(3) * off(b(3), b(4));
    x_matrix(d11, d14, d22, d23)
}

pub(crate) fn rho23_matrix(cf: &ClosedFormCoefficients) -> ComplexMatrix {
    let g = |i, j| cf.g(i, j);
    let k = cf.beta1 * cf.beta2;
    x_matrix(
        k * (g(2, 2) + g(4, 4)),
        k * (g(4, 2) + g(2, 4)),
        k * (g(1, 1) + g(3, 3)),
        k * (g(3, 1) + g(1, 3)),
    )
}

pub(crate) fn rho123_matrix(cf: &ClosedFormCoefficients) -> ComplexMatrix {
    let (a, g) = (|i| cf.big_a(i), |i, j| cf.g(i, j));
    let terms: [(Complex64, Coords); 16] = [
        (a(2) * g(2, 2) + a(1) * g(4, 4), &[(0b000, 0b000), (0b111, 0b111)]),
        (a(2) * g(4, 2) + a(1) * g(2, 4), &[(0b011, 0b000), (0b100, 0b111)]),
        (a(4) * g(3, 2) + a(3) * g(1, 4), &[(0b101, 0b000), (0b010, 0b111)]),
        (a(4) * g(1, 2) + a(3) * g(3, 4), &[(0b110, 0b000), (0b001, 0b111)]),
        (a(2) * g(1, 1) + a(1) * g(3, 3), &[(0b001, 0b001), (0b110, 0b110)]),
        (a(2) * g(3, 1) + a(1) * g(1, 3), &[(0b010, 0b001), (0b101, 0b110)]),
        (a(4) * g(4, 1) + a(3) * g(2, 3), &[(0b100, 0b001), (0b011, 0b110)]),
        (a(4) * g(2, 1) + a(3) * g(4, 3), &[(0b111, 0b001), (0b000, 0b110)]),
        (a(1) * g(3, 1) + a(2) * g(1, 3), &[(0b001, 0b010), (0b110, 0b101)]),
        (a(1) * g(1, 1) + a(2) * g(3, 3), &[(0b010, 0b010), (0b101, 0b101)]),
        (a(3) * g(2, 1) + a(4) * g(4, 3), &[(0b100, 0b010), (0b011, 0b101)]),
        (a(3) * g(4, 1) + a(4) * g(2, 3), &[(0b111, 0b010), (0b000, 0b101)]),
        (a(1) * g(4, 2) + a(2) * g(2, 4), &[(0b000, 0b011), (0b111, 0b100)]),
        (a(1) * g(2, 2) + a(2) * g(4, 4), &[(0b011, 0b011), (0b100, 0b100)]),
        (a(3) * g(1, 2) + a(4) * g(3, 4), &[(0b101, 0b011), (0b010, 0b100)]),
        (a(3) * g(3, 2) + a(4) * g(1, 4), &[(0b110, 0b011), (0b001, 0b100)]),
    ];
    assemble(&terms).scale(re(cf.beta1))
}

pub(crate) fn rho234_matrix(cf: &ClosedFormCoefficients, printed: Printed) -> ComplexMatrix {
    let (b, g) = (|i| cf.big_b(i), |i, j| cf.g(i, j));
    let last = if printed.rho234_last_term {
        b(2) * g(3, 1) + b(1) * g(1, 3)
    } else {
        // Hermitian partner of the |100⟩⟨001| + |011⟩⟨110| coefficient.
        b(3) * g(2, 3) + b(4) * g(4, 1)
    };
    let terms: [(Complex64, Coords); 16] = [
        (b(2) * g(2, 2) + b(1) * g(4, 4), &[(0b000, 0b000), (0b111, 0b111)]),
        (b(4) * g(1, 2) + b(3) * g(3, 4), &[(0b011, 0b000), (0b100, 0b111)]),
        (b(4) * g(3, 2) + b(3) * g(1, 4), &[(0b101, 0b000), (0b010, 0b111)]),
        (b(2) * g(4, 2) + b(1) * g(2, 4), &[(0b110, 0b000), (0b001, 0b111)]),
        (b(1) * g(2, 2) + b(2) * g(4, 4), &[(0b001, 0b001), (0b110, 0b110)]),
        (b(3) * g(1, 2) + b(4) * g(3, 4), &[(0b010, 0b001), (0b101, 0b110)]),
        (b(3) * g(3, 2) + b(4) * g(1, 4), &[(0b100, 0b001), (0b011, 0b110)]),
        (b(1) * g(4, 2) + b(2) * g(2, 4), &[(0b111, 0b001), (0b000, 0b110)]),
        (b(3) * g(2, 1) + b(4) * g(4, 3), &[(0b001, 0b010), (0b110, 0b101)]),
        (b(1) * g(1, 1) + b(2) * g(3, 3), &[(0b010, 0b010), (0b101, 0b101)]),
        (b(1) * g(3, 1) + b(2) * g(1, 3), &[(0b100, 0b010), (0b011, 0b101)]),
        (b(3) * g(4, 1) + b(4) * g(2, 3), &[(0b111, 0b010), (0b000, 0b101)]),
        (b(4) * g(2, 1) + b(3) * g(4, 3), &[(0b000, 0b011), (0b111, 0b100)]),
        (b(2) * g(1, 1) + b(1) * g(3, 3), &[(0b011, 0b011), (0b100, 0b100)]),
        (b(2) * g(3, 1) + b(1) * g(1, 3), &[(0b101, 0b011), (0b010, 0b100)]),
        (last, &[(0b110, 0b011), (0b001, 0b100)]),
    ];
    assemble(&terms).scale(re(cf.beta2))
}

pub(crate) fn rho124_matrix(cf: &ClosedFormCoefficients, printed: Printed) -> ComplexMatrix {
    let (a, b, g) = (|i| cf.big_a(i), |i| cf.big_b(i), |i, j| cf.g(i, j));
    let (first, second): (Coords, Coords) = if printed.rho124_stray_term {
        (&[(0b000, 0b000)], &[(0b011, 0b000), (0b100, 0b111), (0b111, 0b111)])
    } else {
        (&[(0b000, 0b000), (0b111, 0b111)], &[(0b011, 0b000), (0b100, 0b111)])
    };
    let terms: [(Complex64, Coords); 16] = [
        (
            a(2) * b(1) * g(1, 1) + a(2) * b(2) * g(2, 2) + a(1) * b(2) * g(3, 3) + a(1) * b(1) * g(4, 4),
            first,
        ),
        (
            a(2) * b(3) * g(4, 1) + a(2) * b(4) * g(3, 2) + a(1) * b(4) * g(2, 3) + a(1) * b(3) * g(1, 4),
            second,
        ),
        (
            a(4) * b(3) * g(3, 1) + a(4) * b(4) * g(4, 2) + a(3) * b(4) * g(1, 3) + a(3) * b(3) * g(2, 4),
            &[(0b101, 0b000), (0b010, 0b111)],
        ),
        (
            a(4) * b(1) * g(2, 1) + a(4) * b(2) * g(1, 2) + a(3) * b(2) * g(4, 3) + a(3) * b(1) * g(3, 4),
            &[(0b110, 0b000), (0b001, 0b111)],
        ),
        (
            a(2) * b(2) * g(1, 1) + a(2) * b(1) * g(2, 2) + a(1) * b(1) * g(3, 3) + a(1) * b(2) * g(4, 4),
            &[(0b001, 0b001), (0b110, 0b110)],
        ),
        (
            a(2) * b(4) * g(4, 1) + a(2) * b(3) * g(3, 2) + a(1) * b(3) * g(2, 3) + a(1) * b(4) * g(1, 4),
            &[(0b010, 0b001), (0b101, 0b110)],
        ),
        (
            a(4) * b(4) * g(3, 1) + a(4) * b(3) * g(4, 2) + a(3) * b(3) * g(1, 3) + a(3) * b(4) * g(2, 4),
            &[(0b100, 0b001), (0b011, 0b110)],
        ),
        (
            a(4) * b(2) * g(2, 1) + a(4) * b(1) * g(1, 2) + a(3) * b(1) * g(4, 3) + a(3) * b(2) * g(3, 4),
            &[(0b111, 0b001), (0b000, 0b110)],
        ),
        (
            a(1) * b(4) * g(4, 1) + a(1) * b(3) * g(3, 2) + a(2) * b(3) * g(2, 3) + a(2) * b(4) * g(1, 4),
            &[(0b001, 0b010), (0b110, 0b101)],
        ),
        (
            a(1) * b(2) * g(1, 1) + a(1) * b(1) * g(2, 2) + a(2) * b(1) * g(3, 3) + a(2) * b(2) * g(4, 4),
            &[(0b010, 0b010), (0b101, 0b101)],
        ),
        (
            a(3) * b(2) * g(2, 1) + a(3) * b(1) * g(1, 2) + a(4) * b(1) * g(4, 3) + a(4) * b(2) * g(3, 4),
            &[(0b100, 0b010), (0b011, 0b101)],
        ),
        (
            a(3) * b(4) * g(3, 1) + a(3) * b(3) * g(4, 2) + a(4) * b(3) * g(1, 3) + a(4) * b(4) * g(2, 4),
            &[(0b111, 0b010), (0b000, 0b101)],
        ),
        (
            a(1) * b(3) * g(4, 1) + a(1) * b(4) * g(3, 2) + a(2) * b(4) * g(2, 3) + a(2) * b(3) * g(1, 4),
            &[(0b000, 0b011), (0b111, 0b100)],
        ),
        (
            a(1) * b(1) * g(1, 1) + a(1) * b(2) * g(2, 2) + a(2) * b(2) * g(3, 3) + a(2) * b(1) * g(4, 4),
            &[(0b011, 0b011), (0b100, 0b100)],
        ),
        (
            a(3) * b(1) * g(2, 1) + a(3) * b(2) * g(1, 2) + a(4) * b(2) * g(4, 3) + a(4) * b(1) * g(3, 4),
            &[(0b101, 0b011), (0b010, 0b100)],
        ),
        (
            a(3) * b(3) * g(3, 1) + a(3) * b(4) * g(4, 2) + a(4) * b(4) * g(1, 3) + a(4) * b(3) * g(2, 4),
            &[(0b110, 0b011), (0b001, 0b100)],
        ),
    ];
    assemble(&terms)
}

pub fn rho12_closed(cf: &ClosedFormCoefficients) -> DensityMatrix {
    DensityMatrix::from_trusted(rho12_matrix(cf, Printed::default()))
}

pub fn rho14_closed(cf: &ClosedFormCoefficients) -> DensityMatrix {
    DensityMatrix::from_trusted(rho14_matrix(cf))
}

pub fn rho23_closed(cf: &ClosedFormCoefficients) -> DensityMatrix {
    DensityMatrix::from_trusted(rho23_matrix(cf))
}

pub fn rho123_closed(cf: &ClosedFormCoefficients) -> DensityMatrix {
    DensityMatrix::from_trusted(rho123_matrix(cf))
}

pub fn rho234_closed(cf: &ClosedFormCoefficients) -> DensityMatrix {
    DensityMatrix::from_trusted(rho234_matrix(cf, Printed::default()))
}

pub fn rho124_closed(cf: &ClosedFormCoefficients) -> DensityMatrix {
    DensityMatrix::from_trusted(rho124_matrix(cf, Printed::default()))
}

/// Inputs to the terminal-channel closed form: the hop's ρ14-type entries
/// (M), its ρ23-type entries (N) and the derived δ's.
///
/// δ1, δ2, δ4 and δ5 are carried for completeness; the terminal channel uses
/// only δ3.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExtensionCoefficients {
    pub m11: f64,
    pub m14: f64,
    pub m22: f64,
    pub m23: f64,
    pub n11: f64,
    pub n14: f64,
    pub n22: f64,
    pub n23: f64,
    pub delta1: f64,
    pub delta2: f64,
    pub delta3: f64,
    pub delta4: f64,
    pub delta5: f64,
}

impl ExtensionCoefficients {
    pub fn new(hop: &ClosedFormCoefficients) -> Self {
        let m = rho14_matrix(hop);
        let n = rho23_matrix(hop);
        let (m11, m14, m22, m23) = (m[(0, 0)].re, m[(0, 3)].re, m[(1, 1)].re, m[(1, 2)].re);
        let (n11, n14, n22, n23) = (n[(0, 0)].re, n[(0, 3)].re, n[(1, 1)].re, n[(1, 2)].re);
        let (m33, m44) = (m22, m11);
        let gg = |i: usize| hop.gamma[i - 1].norm_sqr();
        let r_sum: f64 = hop.r.iter().map(|z| z.norm_sqr()).sum();
        let delta4 = (gg(2) + gg(4)) * m11 * m11
            + m22 * ((gg(1) + gg(3)) * m22 + (gg(2) + gg(4)) * (m33 + m44))
            + m11 * ((gg(1) + gg(3)) * (m33 + m44) + 2.0 * m22 * r_sum);
        let delta5 = m11 * (gg(1) * m44 + gg(2) * m33 + gg(3) * m44 + gg(4) * m33)
            + m22 * (gg(1) * m44 + gg(2) * m33 + gg(3) * m44 + gg(4) * m33)
            + (m33 + m44) * (gg(1) * m33 + gg(2) * m44 + gg(3) * m33 + gg(4) * m44);
        Self {
            m11,
            m14,
            m22,
            m23,
            n11,
            n14,
            n22,
            n23,
            delta1: n11 + n22,
            delta2: n22 + n11,
            delta3: 2.0 * (n11 + n22),
            delta4,
            delta5,
        }
    }

    pub fn m32(&self) -> f64 {
        self.m23
    }

    pub fn m33(&self) -> f64 {
        self.m22
    }

    pub fn m41(&self) -> f64 {
        self.m14
    }

    pub fn m44(&self) -> f64 {
        self.m11
    }

    pub fn n32(&self) -> f64 {
        self.n23
    }

    pub fn n33(&self) -> f64 {
        self.n22
    }

    pub fn n41(&self) -> f64 {
        self.n14
    }

    pub fn n44(&self) -> f64 {
        self.n11
    }
}

/// Terminal channel of the eight-node network together with the trace of
/// the unnormalised closed form.
#[derive(Clone, Debug)]
pub struct Rho18 {
    pub state: DensityMatrix,
    pub trace: f64,
}

pub(crate) fn rho18_matrix(ext: &ExtensionCoefficients, bridge: &ClosedFormCoefficients) -> ComplexMatrix {
    let g = |i, j| bridge.g(i, j);
    let (m11, m14, m22, m23) = (re(ext.m11), re(ext.m14), re(ext.m22), re(ext.m23));
    let (m32, m33, m41, m44) = (re(ext.m32()), re(ext.m33()), re(ext.m41()), re(ext.m44()));
    let d = ext.delta3 * ext.delta3;
    let (g11, g22, g33, g44) = (g(1, 1), g(2, 2), g(3, 3), g(4, 4));
    let (g31, g13, g42, g24) = (g(3, 1), g(1, 3), g(4, 2), g(2, 4));

    let mut m = ComplexMatrix::zeros(4);
    m[(0, 0)] = d * ((g22 + g44) * m11 * m11 + (g11 + g33) * (m22 + m33) * m11 + (g22 + g44) * m22 * m33);
    m[(0, 3)] = d * ((g42 + g24) * m14 * m14 + (g31 + g13) * (m23 + m32) * m14 + (g42 + g24) * m23 * m32);
    m[(1, 1)] = d
        * (m11 * (g11 * m44 + g22 * m22 + g33 * m44 + g44 * m22)
            + m22 * (g11 * m22 + g22 * m44 + g33 * m22 + g44 * m44));
    m[(1, 2)] = d
        * (m14 * (g31 * m41 + g42 * m23 + g13 * m41 + g24 * m23)
            + m23 * (g31 * m23 + g42 * m41 + g13 * m23 + g24 * m41));
    m[(2, 1)] = d
        * (m14 * (g31 * m41 + g42 * m32 + g13 * m41 + g24 * m32)
            + m32 * (g31 * m32 + g42 * m41 + g13 * m32 + g24 * m41));
    m[(2, 2)] = d
        * (m11 * (g11 * m44 + g22 * m33 + g33 * m44 + g44 * m33)
            + m33 * (g11 * m33 + g22 * m44 + g33 * m33 + g44 * m44));
    m[(3, 0)] = d
        * (m23 * (g31 * m41 + g42 * m32 + g13 * m41 + g24 * m32)
            + m41 * (g31 * m32 + g42 * m41 + g13 * m32 + g24 * m41));
    m[(3, 3)] = d
        * (m22 * (g11 * m44 + g22 * m33 + g33 * m44 + g44 * m33)
            + m44 * (g11 * m33 + g22 * m44 + g33 * m33 + g44 * m44));
    m
}

/// Terminal channel from the hop coefficients and the bridge coefficients,
/// normalised to unit trace.
pub fn rho18_closed(ext: &ExtensionCoefficients, bridge: &ClosedFormCoefficients) -> Result<Rho18> {
    let m = rho18_matrix(ext, bridge);
    let tr = m.trace();
    if tr.re.abs() < f64::MIN_POSITIVE || tr.im.abs() > HERM_TOL * tr.re.abs().max(1.0) {
        return Err(Error::NotDensity(format!(
            "terminal-channel closed form has trace {:.3e}{:+.3e}i",
            tr.re, tr.im
        )));
    }
    let m = m.scale(re(1.0 / tr.re));
    let dev = m.hermiticity_deviation();
    if dev > HERM_TOL {
        return Err(Error::NotHermitian { deviation: dev });
    }
    Ok(Rho18 {
        state: DensityMatrix::from_trusted(m),
        trace: tr.re,
    })
}

/// Closed-form state of `channel`, or `None` when the channel has no closed
/// form (34, 13, 24). The terminal channel needs bridge parameters.
pub fn closed_channel(
    cfg: &NetworkConfig,
    p: DipolarParams,
    bridge: Option<DipolarParams>,
    channel: Channel,
) -> Result<Option<DensityMatrix>> {
    let cf = coeffs_for(cfg, p)?;
    Ok(Some(match channel {
        Channel::C12 => rho12_closed(&cf),
        Channel::C14 => rho14_closed(&cf),
        Channel::C23 => rho23_closed(&cf),
        Channel::C123 => rho123_closed(&cf),
        Channel::C234 => rho234_closed(&cf),
        Channel::C124 => rho124_closed(&cf),
        Channel::C18 => {
            let bridge = bridge.ok_or_else(|| Error::Validation {
                key: "channels".into(),
                line: None,
                message: "channel 18 needs bridge parameters".into(),
            })?;
            let bcf = coeffs_for(cfg, bridge)?;
            rho18_closed(&ExtensionCoefficients::new(&cf), &bcf)?.state
        }
        Channel::C34 | Channel::C13 | Channel::C24 => return Ok(None),
    }))
}

pub fn has_closed_form(channel: Channel) -> bool {
    !matches!(channel, Channel::C34 | Channel::C13 | Channel::C24)
}

/// Fails with the worst entry if `closed` and `dense` differ by more than
/// [`ORACLE_TOL`] anywhere.
pub fn compare(
    channel: Channel,
    p: DipolarParams,
    closed: &ComplexMatrix,
    dense: &ComplexMatrix,
) -> Result<()> {
    let n = closed.dim();
    if dense.dim() != n {
        return Err(Error::DimensionMismatch(format!(
            "channel {channel}: closed form is {n}x{n}, dense state is {0}x{0}",
            dense.dim()
        )));
    }
    let mut worst = (0.0, 0, 0);
    for r in 0..n {
        for col in 0..n {
            let d = (closed[(r, col)] - dense[(r, col)]).norm();
            if d > worst.0 {
                worst = (d, r, col);
            }
        }
    }
    if worst.0 > ORACLE_TOL {
        return Err(Error::OracleMismatch {
            channel: channel.label().into(),
            tau: p.tau,
            eps_tilde: p.eps_tilde,
            row: worst.1,
            col: worst.2,
            deviation: worst.0,
        });
    }
    Ok(())
}

/// Closed form and dense state of `channel`, checked against each other.
/// Returns the dense state.
pub fn validate(
    cfg: &NetworkConfig,
    p: DipolarParams,
    bridge: Option<DipolarParams>,
    channel: Channel,
) -> Result<DensityMatrix> {
    let dense = netmodel::dense_channel(cfg, p, bridge, channel)?;
    if let Some(closed) = closed_channel(cfg, p, bridge, channel)? {
        compare(channel, p, closed.matrix(), dense.matrix())?;
    }
    Ok(dense)
}
