//! Machine-readable record of every coordinate where a printed coefficient
//! layout disagrees with dense evolution.
//!
//! Each cause is switched on alone against an otherwise repaired model, so
//! every entry is attributable to exactly one cause.

use std::fmt;

use num_complex::Complex64;

use super::{
    coeffs_with, rho124_matrix, rho12_matrix, rho14_matrix, rho234_matrix, rho23_matrix, rho123_matrix,
    rho18_matrix, ExtensionCoefficients, Printed,
};
use crate::error::Result;
use crate::netmodel::{
    dense_channel, propagator_coeffs, propagator_from_coeffs, Channel, DipolarParams, NetworkConfig,
    NetworkKind, PropagatorCoeffs,
};
use crate::qmat::{ComplexMatrix, ORACLE_TOL};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TypoCause {
    /// r3 enters the propagator with the wrong sign, leaving it non-unitary.
    PropagatorSign,
    /// A3 (and B3) assigned twice, A4 (and B4) never.
    DuplicatedA3B3,
    /// ρ12 prefactor 2·B1 in place of 2·β1.
    Rho12Prefactor,
    /// Last ρ234 coefficient copied from the one before.
    Rho234RepeatedTerm,
    /// |111⟩⟨111| attached to an off-diagonal ρ124 coefficient.
    Rho124MalformedTerm,
}

impl TypoCause {
    pub const ALL: [TypoCause; 5] = [
        TypoCause::PropagatorSign,
        TypoCause::DuplicatedA3B3,
        TypoCause::Rho12Prefactor,
        TypoCause::Rho234RepeatedTerm,
        TypoCause::Rho124MalformedTerm,
    ];

    pub fn label(self) -> &'static str {
        match self {
            TypoCause::PropagatorSign => "propagator_r3_sign",
            TypoCause::DuplicatedA3B3 => "duplicated_A3_B3",
            TypoCause::Rho12Prefactor => "rho12_prefactor",
            TypoCause::Rho234RepeatedTerm => "rho234_repeated_term",
            TypoCause::Rho124MalformedTerm => "rho124_malformed_term",
        }
    }

    fn printed(self) -> Printed {
        let mut p = Printed::default();
        match self {
            TypoCause::PropagatorSign => {}
            TypoCause::DuplicatedA3B3 => p.duplicate_a3 = true,
            TypoCause::Rho12Prefactor => p.rho12_prefactor = true,
            TypoCause::Rho234RepeatedTerm => p.rho234_last_term = true,
            TypoCause::Rho124MalformedTerm => p.rho124_stray_term = true,
        }
        p
    }
}

impl fmt::Display for TypoCause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// One repaired coordinate. `channel` is a channel label, or `U23` for the
/// propagator itself.
#[derive(Clone, Debug, PartialEq)]
pub struct TypoEntry {
    pub channel: String,
    pub row: usize,
    pub col: usize,
    pub literal: Complex64,
    pub oracle: Complex64,
    pub cause: TypoCause,
}

/// Network and parameter point at which the ledger is evaluated. Asymmetric
/// pairs and a generic (τ, ε̃) keep accidental cancellations out.
pub fn reference_point() -> (NetworkConfig, DipolarParams) {
    (
        NetworkConfig::with_kind(NetworkKind::MW),
        DipolarParams::new(0.5, 0.1),
    )
}

fn diff_entries(
    out: &mut Vec<TypoEntry>,
    channel: &str,
    literal: &ComplexMatrix,
    oracle: &ComplexMatrix,
    cause: TypoCause,
) {
    for r in 0..oracle.dim() {
        for col in 0..oracle.dim() {
            let (l, o) = (literal[(r, col)], oracle[(r, col)]);
            if (l - o).norm() > ORACLE_TOL {
                out.push(TypoEntry {
                    channel: channel.to_string(),
                    row: r,
                    col,
                    literal: l,
                    oracle: o,
                    cause,
                });
            }
        }
    }
}

/// Propagator assembled with the printed sign of r3.
fn printed_propagator(pc: &PropagatorCoeffs) -> ComplexMatrix {
    let mut lit = *pc;
    lit.r3 = -pc.r3;
    propagator_from_coeffs(&lit)
}

pub fn typo_ledger() -> Result<Vec<TypoEntry>> {
    let (cfg, p) = reference_point();
    let (pair1, pair2) = cfg.pair_params()?;
    let pc = propagator_coeffs(p);
    let dense = |ch| dense_channel(&cfg, p, Some(p), ch);
    let oracles = [
        (Channel::C12, dense(Channel::C12)?),
        (Channel::C14, dense(Channel::C14)?),
        (Channel::C23, dense(Channel::C23)?),
        (Channel::C123, dense(Channel::C123)?),
        (Channel::C234, dense(Channel::C234)?),
        (Channel::C124, dense(Channel::C124)?),
        (Channel::C18, dense(Channel::C18)?),
    ];

    let mut out = Vec::new();
    diff_entries(
        &mut out,
        "U23",
        &printed_propagator(&pc),
        &propagator_from_coeffs(&pc),
        TypoCause::PropagatorSign,
    );
    for cause in TypoCause::ALL {
        if cause == TypoCause::PropagatorSign {
            continue;
        }
        let printed = cause.printed();
        let cf = coeffs_with(pair1, pair2, &pc, printed);
        for (ch, oracle) in &oracles {
            let literal = match ch {
                Channel::C12 => rho12_matrix(&cf, printed),
                Channel::C14 => rho14_matrix(&cf),
                Channel::C23 => rho23_matrix(&cf),
                Channel::C123 => rho123_matrix(&cf),
                Channel::C234 => rho234_matrix(&cf, printed),
                Channel::C124 => rho124_matrix(&cf, printed),
                Channel::C18 => {
                    let m = rho18_matrix(&ExtensionCoefficients::new(&cf), &cf);
                    let tr = m.trace();
                    if tr.norm() > 0.0 {
                        m.scale(tr.inv())
                    } else {
                        m
                    }
                }
                _ => unreachable!("only closed-form channels are listed"),
            };
            diff_entries(&mut out, ch.label(), &literal, oracle.matrix(), cause);
        }
    }
    Ok(out)
}

fn fmt_complex(z: Complex64) -> String {
    format!("{:.12e}{:+.12e}i", z.re, z.im)
}

/// Plain-text ledger: a header, then one comma-separated line per entry.
pub fn typo_ledger_report(entries: &[TypoEntry]) -> String {
    let mut s = String::from("channel,row,col,literal,oracle,cause\n");
    for e in entries {
        s.push_str(&format!(
            "{},{},{},{},{},{}\n",
            e.channel,
            e.row,
            e.col,
            fmt_complex(e.literal),
            fmt_complex(e.oracle),
            e.cause
        ));
    }
    s
}
