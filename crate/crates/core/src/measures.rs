//! Correlation quantifiers: negativity, the three-qubit π-tangle, l1
//! coherence and the nonlocal advantage of quantum coherence (NAQC).

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;

use crate::error::{Error, Result};
use crate::qmat::{
    c, hermitian_eigenvalues, kron, partial_trace, partial_trace_matrix, partial_transpose, re, trace_norm,
    ComplexMatrix, DensityMatrix, ONE, ZERO,
};

/// Below this a measurement branch is treated as impossible.
pub const MIN_PROBABILITY: f64 = 1e-14;
/// Single-qubit bound on the steered l1 coherence average.
pub const NAQC_THRESHOLD: f64 = 2.449_489_742_783_178; // √6
/// Two-qubit maximum of the steered l1 coherence average.
pub const NAQC_MAX: f64 = 3.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PauliAxis {
    X,
    Y,
    Z,
}

impl PauliAxis {
    pub const ALL: [PauliAxis; 3] = [PauliAxis::X, PauliAxis::Y, PauliAxis::Z];

    /// Columns are the +1 and −1 eigenvectors.
    fn eigenbasis(self) -> ComplexMatrix {
        let s = FRAC_1_SQRT_2;
        let entries = match self {
            PauliAxis::X => [re(s), re(s), re(s), re(-s)],
            PauliAxis::Y => [re(s), re(s), c(0.0, s), c(0.0, -s)],
            PauliAxis::Z => [ONE, ZERO, ZERO, ONE],
        };
        ComplexMatrix::from_row_major(entries.to_vec()).expect("2x2")
    }

    /// Projector onto the eigenstate with the given sign.
    fn projector(self, outcome: Outcome) -> ComplexMatrix {
        let v = self.eigenbasis();
        let k = match outcome {
            Outcome::Plus => 0,
            Outcome::Minus => 1,
        };
        ComplexMatrix::from_fn(2, |r, col| v[(r, k)] * v[(col, k)].conj())
    }
}

impl fmt::Display for PauliAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PauliAxis::X => "x",
            PauliAxis::Y => "y",
            PauliAxis::Z => "z",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Outcome {
    Plus,
    Minus,
}

impl Outcome {
    pub const ALL: [Outcome; 2] = [Outcome::Plus, Outcome::Minus];

    pub fn sign(self) -> f64 {
        match self {
            Outcome::Plus => 1.0,
            Outcome::Minus => -1.0,
        }
    }
}

/// Result of a projective Pauli measurement on the first qubit of a pair.
#[derive(Clone, Debug)]
pub struct MeasurementOutcome {
    pub axis: PauliAxis,
    pub outcome: Outcome,
    pub probability: f64,
    /// State of the second qubit given the outcome.
    pub conditional: DensityMatrix,
}

/// One-vs-rest and pairwise negativities of a three-qubit state, with the
/// residual tangles built from them.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TangleBreakdown {
    pub n_a_bc: f64,
    pub n_b_ac: f64,
    pub n_c_ab: f64,
    pub n_ab: f64,
    pub n_ac: f64,
    pub n_bc: f64,
    pub pi_a: f64,
    pub pi_b: f64,
    pub pi_c: f64,
    pub pi: f64,
}

impl TangleBreakdown {
    /// Mean of the squared one-vs-rest negativities, without the pairwise
    /// subtraction.
    pub fn mean_global_squared(&self) -> f64 {
        (self.n_a_bc.powi(2) + self.n_b_ac.powi(2) + self.n_c_ab.powi(2)) / 3.0
    }
}

fn require_qubits(rho: &DensityMatrix, n: usize, what: &str) -> Result<()> {
    if rho.nqubits() != n {
        return Err(Error::DimensionMismatch(format!(
            "{what} needs a {n}-qubit state, got {} qubits",
            rho.nqubits()
        )));
    }
    Ok(())
}

/// 2·Σ|λ| over the negative eigenvalues of the partial transpose on the
/// second qubit.
pub fn negativity(rho: &DensityMatrix) -> Result<f64> {
    require_qubits(rho, 2, "negativity")?;
    let ev = hermitian_eigenvalues(&partial_transpose(rho, &[1])?)?;
    // fold from +0.0: an empty f64 `sum` is −0.0, which would print as "-0".
    Ok(2.0 * ev.iter().filter(|&&l| l < 0.0).fold(0.0, |acc, l| acc - l))
}

fn trace_norm_minus_one(pt: &ComplexMatrix) -> Result<f64> {
    Ok((trace_norm(pt)? - 1.0).max(0.0))
}

/// ||ρ^{T_focus}||₁ − 1 for a three-qubit state.
pub fn global_negativity(rho: &DensityMatrix, focus: usize) -> Result<f64> {
    require_qubits(rho, 3, "global negativity")?;
    trace_norm_minus_one(&partial_transpose(rho, &[focus])?)
}

/// ||ρ_ij^{T_j}||₁ − 1 after tracing out the remaining qubit.
pub fn pairwise_negativity(rho: &DensityMatrix, pair: (usize, usize)) -> Result<f64> {
    require_qubits(rho, 3, "pairwise negativity")?;
    let (i, j) = pair;
    if i >= j {
        return Err(Error::BadSubsystem(format!("pair ({i}, {j}) must satisfy i < j")));
    }
    let m = partial_trace(rho, &[i, j])?;
    trace_norm_minus_one(&partial_transpose(&m, &[1])?)
}

pub fn pi_tangle(rho: &DensityMatrix) -> Result<TangleBreakdown> {
    let n_a_bc = global_negativity(rho, 0)?;
    let n_b_ac = global_negativity(rho, 1)?;
    let n_c_ab = global_negativity(rho, 2)?;
    let n_ab = pairwise_negativity(rho, (0, 1))?;
    let n_ac = pairwise_negativity(rho, (0, 2))?;
    let n_bc = pairwise_negativity(rho, (1, 2))?;
    let sq = |x: f64| x * x;
    let pi_a = sq(n_a_bc) - sq(n_ab) - sq(n_ac);
    let pi_b = sq(n_b_ac) - sq(n_ab) - sq(n_bc);
    let pi_c = sq(n_c_ab) - sq(n_ac) - sq(n_bc);
    Ok(TangleBreakdown {
        n_a_bc,
        n_b_ac,
        n_c_ab,
        n_ab,
        n_ac,
        n_bc,
        pi_a,
        pi_b,
        pi_c,
        pi: (pi_a + pi_b + pi_c) / 3.0,
    })
}

/// Sum of off-diagonal moduli of a one-qubit state in the eigenbasis of the
/// given Pauli operator.
pub fn l1_coherence(rho: &DensityMatrix, axis: PauliAxis) -> Result<f64> {
    require_qubits(rho, 1, "l1 coherence")?;
    let v = axis.eigenbasis();
    let rotated = v.adjoint().matmul(rho.matrix()).matmul(&v);
    Ok(rotated[(0, 1)].norm() + rotated[(1, 0)].norm())
}

pub fn conditional_states(rho: &DensityMatrix, axis: PauliAxis, outcome: Outcome) -> Result<MeasurementOutcome> {
    require_qubits(rho, 2, "conditional states")?;
    let proj = kron(&axis.projector(outcome), &ComplexMatrix::identity(2));
    let projected = proj.matmul(rho.matrix()).matmul(&proj);
    let probability = projected.trace().re;
    if probability < MIN_PROBABILITY {
        return Err(Error::ZeroProbability { probability });
    }
    let reduced = partial_trace_matrix(&projected, 2, &[1])?.scale(re(1.0 / probability));
    Ok(MeasurementOutcome {
        axis,
        outcome,
        probability,
        conditional: DensityMatrix::from_trusted(reduced.hermitian_part()),
    })
}

/// Probability-weighted l1 coherence of the second qubit, steered by Pauli
/// measurements on the first and read in the two complementary bases, halved.
pub fn naqc_average(rho: &DensityMatrix) -> Result<f64> {
    let mut total = 0.0;
    for measured in PauliAxis::ALL {
        for outcome in Outcome::ALL {
            let m = match conditional_states(rho, measured, outcome) {
                Ok(m) => m,
                Err(Error::ZeroProbability { .. }) => continue,
                Err(e) => return Err(e),
            };
            for read in PauliAxis::ALL.into_iter().filter(|&j| j != measured) {
                total += m.probability * l1_coherence(&m.conditional, read)?;
            }
        }
    }
    Ok(total / 2.0)
}

/// Normalised excess of [`naqc_average`] over the single-qubit bound, in [0, 1].
pub fn naqc_degree(rho: &DensityMatrix) -> Result<f64> {
    let avg = naqc_average(rho)?;
    Ok(((avg - NAQC_THRESHOLD) / (NAQC_MAX - NAQC_THRESHOLD)).clamp(0.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::netmodel::{
        evolved_network, singlet_state, x_state, DipolarParams, NetworkConfig, NetworkKind, XStateParams,
    };
    use crate::qmat::{partial_trace, partial_transpose_matrix, I};
    use num_complex::Complex64;
    use proptest::prelude::*;

    fn ket(bits: &[usize], n: usize) -> Vec<Complex64> {
        let amp = re(1.0 / (bits.len() as f64).sqrt());
        let mut v = vec![ZERO; 1 << n];
        for &b in bits {
            v[b] = amp;
        }
        v
    }

    fn pure(bits: &[usize], n: usize) -> DensityMatrix {
        DensityMatrix::pure(&ket(bits, n)).unwrap()
    }

    fn werner(x: f64) -> DensityMatrix {
        x_state(XStateParams::werner(x).unwrap()).unwrap()
    }

    fn ghz() -> DensityMatrix {
        pure(&[0b000, 0b111], 3)
    }

    fn w_state() -> DensityMatrix {
        pure(&[0b001, 0b010, 0b100], 3)
    }

    fn bloch(rho: &DensityMatrix) -> [f64; 3] {
        let m = rho.matrix();
        [2.0 * m[(0, 1)].re, -2.0 * m[(0, 1)].im, (m[(0, 0)] - m[(1, 1)]).re]
    }

    #[test]
    fn negativity_point_values() {
        assert!((negativity(&singlet_state()).unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(negativity(&pure(&[0], 2)).unwrap(), 0.0);
        assert!(negativity(&DensityMatrix::maximally_mixed(2)).unwrap().is_sign_positive());
        // ρ^{T_B} spectrum: (1+x)/4 three times, (1-3x)/4 once.
        let x = 0.5;
        let oracle = 2.0 * (3.0 * x - 1.0) / 4.0;
        assert!((negativity(&werner(x)).unwrap() - oracle).abs() < 1e-12);
        assert!((oracle - 0.25).abs() < 1e-15);
        assert!(negativity(&ghz()).is_err());
    }

    #[test]
    fn global_negativity_point_values() {
        for f in 0..3 {
            assert_eq!(global_negativity(&pure(&[0], 3), f).unwrap(), 0.0);
        }
        assert!((global_negativity(&ghz(), 0).unwrap() - 1.0).abs() < 1e-12);
        // Pure state: ||ρ^{T_A}||₁ = (Σ_k √λ_k)² over the Schmidt weights
        // of A, here λ = (2/3, 1/3).
        let oracle = ((2.0f64 / 3.0).sqrt() + (1.0f64 / 3.0).sqrt()).powi(2) - 1.0;
        let got = global_negativity(&w_state(), 0).unwrap();
        assert!(got > 0.0);
        assert!((got - oracle).abs() < 1e-12, "{got} vs {oracle}");
    }

    #[test]
    fn pairwise_negativity_point_values() {
        for pair in [(0, 1), (0, 2), (1, 2)] {
            assert!(pairwise_negativity(&ghz(), pair).unwrap() < 1e-12);
            assert_eq!(pairwise_negativity(&pure(&[0], 3), pair).unwrap(), 0.0);
        }
        let s0 = singlet_state().kron(&pure(&[0], 1));
        assert!((pairwise_negativity(&s0, (0, 1)).unwrap() - 1.0).abs() < 1e-12);
        assert!(matches!(pairwise_negativity(&s0, (1, 0)), Err(Error::BadSubsystem(_))));
    }

    #[test]
    fn tangle_point_values() {
        let t = pi_tangle(&ghz()).unwrap();
        assert!((t.pi - 1.0).abs() < 1e-12);
        assert_eq!(pi_tangle(&pure(&[0], 3)).unwrap().pi, 0.0);
        // W state: the ρ_AB^{T_B} block on {00, 11} is [[1/3, 1/3], [1/3, 0]],
        // negative eigenvalue (1 - √5)/6.
        let n_pair = (5f64.sqrt() - 1.0) / 3.0;
        let n_glob = 2.0 * 2f64.sqrt() / 3.0;
        let oracle = n_glob * n_glob - 2.0 * n_pair * n_pair;
        let t = pi_tangle(&w_state()).unwrap();
        assert!((t.pi - oracle).abs() < 1e-12);
        assert!((t.pi - (t.pi_a + t.pi_b + t.pi_c) / 3.0).abs() == 0.0);
    }

    #[test]
    fn l1_coherence_examples() {
        let mixed = DensityMatrix::maximally_mixed(1);
        let zero = pure(&[0], 1);
        for axis in PauliAxis::ALL {
            assert!(l1_coherence(&mixed, axis).unwrap() < 1e-15);
        }
        assert!(l1_coherence(&zero, PauliAxis::Z).unwrap() < 1e-15);
        assert!((l1_coherence(&zero, PauliAxis::X).unwrap() - 1.0).abs() < 1e-15);
        let mut m = ComplexMatrix::identity(2).scale(re(0.5));
        m[(0, 1)] = re(0.3);
        m[(1, 0)] = re(0.3);
        let rho = DensityMatrix::new(m).unwrap();
        assert!((l1_coherence(&rho, PauliAxis::Y).unwrap() - 0.6).abs() < 1e-15);
    }

    #[test]
    fn conditional_state_examples() {
        let m = conditional_states(&singlet_state(), PauliAxis::Z, Outcome::Plus).unwrap();
        assert!((m.probability - 0.5).abs() < 1e-15);
        assert!(m.conditional.matrix().max_abs_diff(pure(&[1], 1).matrix()) < 1e-15);

        let s = FRAC_1_SQRT_2;
        let a = DensityMatrix::pure(&[re(s), c(0.0, s)]).unwrap();
        let b = DensityMatrix::pure(&[re(0.6), re(0.8)]).unwrap();
        for axis in PauliAxis::ALL {
            for outcome in Outcome::ALL {
                let m = conditional_states(&a.kron(&b), axis, outcome);
                match m {
                    Ok(m) => assert!(m.conditional.matrix().max_abs_diff(b.matrix()) < 1e-14),
                    Err(Error::ZeroProbability { .. }) => {
                        assert!(axis == PauliAxis::Y && outcome == Outcome::Minus)
                    }
                    Err(e) => panic!("{e}"),
                }
                let m = conditional_states(&DensityMatrix::maximally_mixed(2), axis, outcome).unwrap();
                assert!((m.probability - 0.5).abs() < 1e-15);
                assert!(m.conditional.matrix().max_abs_diff(DensityMatrix::maximally_mixed(1).matrix()) < 1e-15);
            }
        }
    }

    #[test]
    fn naqc_examples() {
        let s = FRAC_1_SQRT_2;
        let bells = [
            singlet_state(),
            DensityMatrix::pure(&[re(s), ZERO, ZERO, re(s)]).unwrap(),
            DensityMatrix::pure(&[ZERO, re(s), re(s), ZERO]).unwrap(),
            DensityMatrix::pure(&[re(s), ZERO, ZERO, re(-s)]).unwrap(),
        ];
        for b in &bells {
            assert!((naqc_average(b).unwrap() - 3.0).abs() < 1e-12);
            assert!((naqc_degree(b).unwrap() - 1.0).abs() < 1e-12);
        }
        let mixed = DensityMatrix::maximally_mixed(2);
        assert_eq!(naqc_average(&mixed).unwrap(), 0.0);
        assert_eq!(naqc_degree(&mixed).unwrap(), 0.0);
        // Each conditional has Bloch length x along the measured axis, seen in
        // full by both complementary bases: ½ · (6 branches · ½ · 2x) = 3x.
        let w = naqc_average(&werner(0.5)).unwrap();
        assert!((w - 1.5).abs() < 1e-12);
        assert!(w < NAQC_THRESHOLD);
        assert_eq!(naqc_degree(&werner(0.5)).unwrap(), 0.0);
    }

    #[test]
    fn naqc_sum_matches_bloch_oracle_on_network_states() {
        // In the σ_j eigenbasis the l1 coherence is the Bloch-vector length
        // transverse to j.
        let cfg = NetworkConfig::with_kind(NetworkKind::MW);
        let rho = partial_trace(&evolved_network(&cfg, DipolarParams::new(1.3, 0.1)).unwrap(), &[0, 1]).unwrap();
        let mut oracle = 0.0;
        for (i, measured) in PauliAxis::ALL.into_iter().enumerate() {
            for outcome in Outcome::ALL {
                let m = conditional_states(&rho, measured, outcome).unwrap();
                let r = bloch(&m.conditional);
                for j in (0..3).filter(|&j| j != i) {
                    let t: f64 = (0..3).filter(|&k| k != j).map(|k| r[k] * r[k]).sum();
                    oracle += m.probability * t.sqrt();
                }
            }
        }
        assert!((naqc_average(&rho).unwrap() - oracle / 2.0).abs() < 1e-12);
    }

    #[test]
    fn negativity_side_does_not_matter_for_network_pairs() {
        let cfg = NetworkConfig::with_kind(NetworkKind::WW);
        let rho = evolved_network(&cfg, DipolarParams::new(2.2, 0.3)).unwrap();
        for keep in [[0, 1], [1, 2], [0, 2]] {
            let r = partial_trace(&rho, &keep).unwrap();
            let a = hermitian_eigenvalues(&partial_transpose(&r, &[0]).unwrap()).unwrap();
            let b = hermitian_eigenvalues(&partial_transpose(&r, &[1]).unwrap()).unwrap();
            for (x, y) in a.iter().zip(&b) {
                assert!((x - y).abs() < 1e-12);
            }
        }
    }

    fn random_state(entries: &[f64], n: usize) -> DensityMatrix {
        let d = 1 << n;
        let g = ComplexMatrix::from_fn(d, |r, col| c(entries[2 * (r * d + col)], entries[2 * (r * d + col) + 1]));
        let m = g.matmul(&g.adjoint());
        let tr = m.trace().re;
        DensityMatrix::new(m.scale(re(1.0 / tr)).hermitian_part()).unwrap()
    }

    fn random_pure(entries: &[f64]) -> DensityMatrix {
        let v: Vec<Complex64> = entries.chunks(2).map(|p| c(p[0], p[1])).collect();
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let v: Vec<Complex64> = v.iter().map(|z| z / norm).collect();
        DensityMatrix::pure(&v).unwrap()
    }

    /// Cyclic Clifford mapping σx → σy → σz → σx under conjugation.
    fn axis_cycle() -> ComplexMatrix {
        let h = 0.5;
        ComplexMatrix::from_row_major(vec![c(h, -h), c(-h, -h), c(h, -h), c(h, h)]).unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn negativity_two_paths_agree(e in proptest::collection::vec(-1.0f64..1.0, 32)) {
            let rho = random_state(&e, 2);
            let pt = partial_transpose_matrix(rho.matrix(), 2, &[1]).unwrap();
            let alt = (trace_norm(&pt).unwrap() - 1.0).max(0.0);
            prop_assert!((negativity(&rho).unwrap() - alt).abs() < 1e-10);
        }

        #[test]
        fn monogamy_on_pure_three_qubit_states(e in proptest::collection::vec(-1.0f64..1.0, 16)) {
            prop_assume!(e.iter().map(|x| x * x).sum::<f64>() > 1e-3);
            let rho = random_pure(&e);
            let t = pi_tangle(&rho).unwrap();
            let sq = |x: f64| x * x;
            prop_assert!(sq(t.n_ab) + sq(t.n_ac) <= sq(t.n_a_bc) + 1e-9);
            prop_assert!(sq(t.n_ab) + sq(t.n_bc) <= sq(t.n_b_ac) + 1e-9);
            prop_assert!(sq(t.n_ac) + sq(t.n_bc) <= sq(t.n_c_ab) + 1e-9);
        }

        #[test]
        fn pure_products_have_no_tangle(e in proptest::collection::vec(-1.0f64..1.0, 12)) {
            prop_assume!(e.chunks(4).all(|q| q.iter().map(|x| x * x).sum::<f64>() > 1e-3));
            let qubits: Vec<DensityMatrix> = e.chunks(4).map(random_pure).collect();
            let rho = qubits[0].kron(&qubits[1]).kron(&qubits[2]);
            prop_assert!(pi_tangle(&rho).unwrap().pi.abs() < 1e-10);
        }

        #[test]
        fn naqc_invariant_under_axis_permutation(e in proptest::collection::vec(-1.0f64..1.0, 32)) {
            let rho = random_state(&e, 2);
            let u = kron(&axis_cycle(), &axis_cycle());
            let rotated = DensityMatrix::new(u.matmul(rho.matrix()).matmul(&u.adjoint()).hermitian_part()).unwrap();
            let (a, b) = (naqc_degree(&rho).unwrap(), naqc_degree(&rotated).unwrap());
            prop_assert!((a - b).abs() < 1e-10);
            prop_assert!((naqc_average(&rho).unwrap() - naqc_average(&rotated).unwrap()).abs() < 1e-10);
            prop_assert!((0.0..=1.0).contains(&a));
            prop_assert_eq!(a == 0.0, naqc_average(&rho).unwrap() <= NAQC_THRESHOLD + 1e-12);
        }
    }

    #[test]
    fn axis_cycle_permutes_paulis() {
        let u = axis_cycle();
        assert!(u.unitarity_deviation() < 1e-15);
        let x = ComplexMatrix::from_row_major(vec![ZERO, ONE, ONE, ZERO]).unwrap();
        let y = ComplexMatrix::from_row_major(vec![ZERO, -I, I, ZERO]).unwrap();
        let z = ComplexMatrix::from_real_diagonal(&[1.0, -1.0]);
        let conj = |m: &ComplexMatrix| u.matmul(m).matmul(&u.adjoint());
        assert!(conj(&x).max_abs_diff(&y) < 1e-15);
        assert!(conj(&y).max_abs_diff(&z) < 1e-15);
        assert!(conj(&z).max_abs_diff(&x) < 1e-15);
    }
}
