//! Concurrence, i-concurrence, global entanglement and the 3-tangle.
//!
//! Two independent routes to the 3-tangle are kept side by side: the residual
//! form `τ = IC₁² − C₁₂² − C₁₃²` and a direct hyperdeterminant evaluation on the
//! eight amplitudes. They must agree on every pure 3-qubit state.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::state::{C64, CMatrix, DensityMatrix, Observable, PureState};
use crate::tolerances as tol;

/// All measures of one state in a single report.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasureReport {
    /// Wootters concurrence per unordered qubit pair `(i, j)`, `i < j`.
    pub pair_concurrences: BTreeMap<(usize, usize), f64>,
    /// Single-qubit i-concurrence per qubit.
    pub i_concurrences: BTreeMap<usize, f64>,
    /// Global entanglement `Q`.
    pub global_q: f64,
    /// Residual 3-tangle; `None` unless the state has exactly 3 qubits.
    pub tangle3: Option<f64>,
    /// Sum of the squared pair concurrences.
    pub sum_sq_concurrence: f64,
}

/// Wootters concurrence of the reduced two-qubit state on `(i, j)`.
///
/// Reduces to `ρ_ij` and takes `C = max{0, λ₁−λ₂−λ₃−λ₄}` with `λ` the
/// decreasing square roots of the eigenvalues of `ρρ̃`,
/// `ρ̃ = (σʸ⊗σʸ) ρ* (σʸ⊗σʸ)`.
pub fn concurrence_pair(state: &PureState, i: usize, j: usize) -> Result<f64> {
    if i == j {
        return Err(Error::Argument(format!("concurrence needs i != j, got ({i}, {j})")));
    }
    check_qubit(state, i)?;
    check_qubit(state, j)?;
    let rho = state.density().partial_trace(&[i, j])?;
    concurrence_of_two_qubit_density(&rho)
}

/// Concurrence of an explicit two-qubit density matrix.
///
/// The `λ` values are computed as the singular values of the spin-flip
/// overlap matrix `τ_kl = v_kᵀ (σʸ⊗σʸ) v_l` built from the subnormalized
/// eigenvectors `v_k = √p_k e_k` of `ρ`. These coincide with the square roots
/// of the eigenvalues of `ρρ̃` (with `τ = UΣUᵀ`, `τ̄τ` is similar to `Σ²`) but
/// stay accurate to machine precision where the non-normal eigensolve of
/// `ρρ̃` loses half its digits on the defective zero block.
pub fn concurrence_of_two_qubit_density(rho: &DensityMatrix) -> Result<f64> {
    if rho.dim() != 4 {
        return Err(Error::Size(format!(
            "concurrence needs a 4x4 density matrix, got {}x{}",
            rho.dim(),
            rho.dim()
        )));
    }
    let yy = Observable::pauli_y().kron(&Observable::pauli_y());
    let se = rho.entries().clone().symmetric_eigen();
    let scales: Vec<f64> = se
        .eigenvalues
        .iter()
        .map(|p| {
            if *p < -tol::DENSITY_EIG_TOL {
                return Err(Error::NumericConsistency(format!(
                    "density eigenvalue {p:.3e} < 0 in concurrence"
                )));
            }
            Ok(p.max(0.0).sqrt())
        })
        .collect::<Result<_>>()?;
    let subnormalized: Vec<_> = (0..4)
        .map(|k| se.eigenvectors.column(k) * C64::new(scales[k], 0.0))
        .collect();
    let mut tau = CMatrix::zeros(4, 4);
    for k in 0..4 {
        let flipped_k = yy.matrix() * &subnormalized[k];
        for l in 0..=k {
            // Transpose inner product, no conjugation; tau is symmetric.
            let entry = subnormalized[l].dot(&flipped_k);
            tau[(k, l)] = entry;
            tau[(l, k)] = entry;
        }
    }
    let mut lambdas: Vec<f64> = tau.svd(false, false).singular_values.iter().cloned().collect();
    lambdas.sort_by(|a, b| b.partial_cmp(a).unwrap());
    Ok((lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]).max(0.0))
}

/// i-concurrence `IC_A = √(2[1 − Tr(ρ_A²)])` for a proper nonempty subset `A`.
pub fn i_concurrence(state: &PureState, subset_a: &[usize]) -> Result<f64> {
    if subset_a.is_empty() || subset_a.len() >= state.n_qubits() {
        return Err(Error::Argument(format!(
            "i-concurrence needs a proper nonempty subset, got {} of {} qubits",
            subset_a.len(),
            state.n_qubits()
        )));
    }
    for q in subset_a {
        check_qubit(state, *q)?;
    }
    let purity = state.density().partial_trace(subset_a)?.purity();
    Ok((2.0 * (1.0 - purity).max(0.0)).sqrt())
}

/// Global entanglement `Q = 2[1 − (1/n) Σ_k Tr(ρ_k²)]` from single-qubit purities.
pub fn global_entanglement(state: &PureState) -> Result<f64> {
    let n = state.n_qubits();
    if n < 2 {
        return Err(Error::Argument("global entanglement needs n >= 2".into()));
    }
    let rho = state.density();
    let mean_purity: f64 = (1..=n)
        .map(|q| rho.partial_trace(&[q]).map(|r| r.purity()))
        .sum::<Result<f64>>()?
        / n as f64;
    Ok((2.0 * (1.0 - mean_purity)).clamp(0.0, 1.0))
}

/// Residual 3-tangle `τ = IC₁² − C₁₂² − C₁₃²`, clamped to 0 when within 1e-8
/// below 0. A residual below −1e-8 fails as a numeric inconsistency.
pub fn tangle3_residual(state: &PureState) -> Result<f64> {
    require_three_qubits(state)?;
    let ic1 = i_concurrence(state, &[1])?;
    let c12 = concurrence_pair(state, 1, 2)?;
    let c13 = concurrence_pair(state, 1, 3)?;
    let tau = ic1 * ic1 - c12 * c12 - c13 * c13;
    if tau < -tol::TANGLE_CLAMP {
        return Err(Error::NumericConsistency(format!(
            "3-tangle residual {tau:.3e} is below the -1e-8 clamp window"
        )));
    }
    Ok(tau.clamp(0.0, 1.0))
}

/// Hyperdeterminant 3-tangle, evaluated directly on the eight amplitudes.
/// Independent of the reduced-density route; agrees with [`tangle3_residual`]
/// on pure states.
pub fn tangle3_oracle(state: &PureState) -> Result<f64> {
    require_three_qubits(state)?;
    let a = |idx: usize| state.amplitude(idx);
    // Basis labels: a(b1 b2 b3) at index 4*b1 + 2*b2 + b3.
    let d1 = a(0).powu(2) * a(7).powu(2)
        + a(1).powu(2) * a(6).powu(2)
        + a(2).powu(2) * a(5).powu(2)
        + a(4).powu(2) * a(3).powu(2);
    let d2 = a(0) * a(7) * a(3) * a(4)
        + a(0) * a(7) * a(5) * a(2)
        + a(0) * a(7) * a(6) * a(1)
        + a(3) * a(4) * a(5) * a(2)
        + a(3) * a(4) * a(6) * a(1)
        + a(5) * a(2) * a(6) * a(1);
    let d3 = a(0) * a(6) * a(5) * a(3) + a(7) * a(1) * a(2) * a(4);
    let hyperdet = d1 - d2 * 2.0 + d3 * 4.0;
    Ok((4.0 * hyperdet.norm()).clamp(0.0, 1.0))
}

/// Sum of squared concurrences over all unordered pairs (3- or 4-qubit states).
pub fn sum_sq_concurrences(state: &PureState) -> Result<f64> {
    let n = state.n_qubits();
    if n != 3 && n != 4 {
        return Err(Error::Argument(format!(
            "sum of squared concurrences is defined for 3 or 4 qubits, got {n}"
        )));
    }
    let mut sum = 0.0;
    for i in 1..=n {
        for j in (i + 1)..=n {
            let c = concurrence_pair(state, i, j)?;
            sum += c * c;
        }
    }
    Ok(sum)
}

/// Compute every measure of a 2-, 3- or 4-qubit pure state.
pub fn measure_report(state: &PureState) -> Result<MeasureReport> {
    let n = state.n_qubits();
    if !(2..=4).contains(&n) {
        return Err(Error::Argument(format!(
            "measure report covers 2..=4 qubits, got {n}"
        )));
    }
    let mut pair_concurrences = BTreeMap::new();
    let mut sum_sq = 0.0;
    for i in 1..=n {
        for j in (i + 1)..=n {
            let c = concurrence_pair(state, i, j)?;
            sum_sq += c * c;
            pair_concurrences.insert((i, j), c);
        }
    }
    let mut i_concurrences = BTreeMap::new();
    for q in 1..=n {
        i_concurrences.insert(q, i_concurrence(state, &[q])?);
    }
    let global_q = global_entanglement(state)?;
    let tangle3 = if n == 3 {
        Some(tangle3_residual(state)?)
    } else {
        None
    };
    Ok(MeasureReport {
        pair_concurrences,
        i_concurrences,
        global_q,
        tangle3,
        sum_sq_concurrence: sum_sq,
    })
}

fn require_three_qubits(state: &PureState) -> Result<()> {
    if state.n_qubits() != 3 {
        return Err(Error::Argument(format!(
            "3-tangle is defined for exactly 3 qubits, got {}",
            state.n_qubits()
        )));
    }
    Ok(())
}

fn check_qubit(state: &PureState, q: usize) -> Result<()> {
    if q == 0 || q > state.n_qubits() {
        return Err(Error::Argument(format!(
            "qubit label {q} out of range 1..={}",
            state.n_qubits()
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::PureState;
    use nalgebra::Complex;

    fn c(re: f64, im: f64) -> C64 {
        Complex::new(re, im)
    }

    fn generalized_ghz(g: f64) -> PureState {
        let s000 = PureState::ket_basis(&[0, 0, 0]).unwrap();
        let s111 = PureState::ket_basis(&[1, 1, 1]).unwrap();
        PureState::superpose(&[
            (c(g, 0.0), &s000),
            (c((1.0 - g * g).sqrt(), 0.0), &s111),
        ])
        .unwrap()
    }

    #[test]
    fn concurrence_of_bell_pair_is_one() {
        let s01 = PureState::ket_basis(&[0, 1]).unwrap();
        let s10 = PureState::ket_basis(&[1, 0]).unwrap();
        let psi_plus =
            PureState::superpose(&[(c(1.0, 0.0), &s01), (c(1.0, 0.0), &s10)]).unwrap();
        let conc = concurrence_pair(&psi_plus, 1, 2).unwrap();
        assert!((conc - 1.0).abs() < 1e-10, "C = {conc}");
    }

    #[test]
    fn generalized_ghz_has_no_pair_concurrence() {
        for g in [0.0, 0.3, 0.6, 1.0 / 2f64.sqrt(), 0.9, 1.0] {
            let s = generalized_ghz(g);
            for (i, j) in [(1, 2), (1, 3), (2, 3)] {
                let conc = concurrence_pair(&s, i, j).unwrap();
                assert!(conc.abs() < 1e-10, "C_{i}{j}(g={g}) = {conc}");
            }
        }
    }

    #[test]
    fn w_state_pair_concurrence_is_two_thirds() {
        let w = PureState::w_state(3).unwrap();
        for (i, j) in [(1, 2), (1, 3), (2, 3)] {
            let conc = concurrence_pair(&w, i, j).unwrap();
            assert!((conc - 2.0 / 3.0).abs() < 1e-10, "C_{i}{j} = {conc}");
        }
    }

    #[test]
    fn concurrence_is_symmetric_and_rejects_equal_indices() {
        let s = PureState::random(3, 5).unwrap();
        let a = concurrence_pair(&s, 1, 3).unwrap();
        let b = concurrence_pair(&s, 3, 1).unwrap();
        assert!((a - b).abs() < 1e-12);
        assert!(matches!(
            concurrence_pair(&s, 2, 2),
            Err(Error::Argument(_))
        ));
    }

    #[test]
    fn i_concurrence_examples() {
        let product = PureState::random_product(3, 9).unwrap();
        for q in 1..=3 {
            let ic = i_concurrence(&product, &[q]).unwrap();
            assert!(ic.abs() < 1e-7, "IC_{q} = {ic} on a product state");
        }

        // 2g√(1-g²) for the generalized GHZ state.
        let s = generalized_ghz(0.6);
        for q in 1..=3 {
            let ic = i_concurrence(&s, &[q]).unwrap();
            assert!((ic - 0.96).abs() < 1e-12, "IC_{q} = {ic}");
        }

        let w = PureState::w_state(3).unwrap();
        assert!(matches!(i_concurrence(&w, &[]), Err(Error::Argument(_))));
        assert!(matches!(
            i_concurrence(&w, &[1, 2, 3]),
            Err(Error::Argument(_))
        ));
    }

    #[test]
    fn global_entanglement_examples() {
        let product = PureState::random_product(4, 3).unwrap();
        let q = global_entanglement(&product).unwrap();
        assert!(q.abs() < 1e-7, "Q = {q} on a product state");

        let s = generalized_ghz(1.0 / 2f64.sqrt());
        let q = global_entanglement(&s).unwrap();
        assert!((q - 1.0).abs() < 1e-12, "Q = {q}");
    }

    #[test]
    fn tangle_of_generalized_ghz() {
        let s = generalized_ghz(0.6);
        let tau = tangle3_residual(&s).unwrap();
        assert!((tau - 0.9216).abs() < 1e-10, "tau = {tau}");
        let tau_oracle = tangle3_oracle(&s).unwrap();
        assert!((tau_oracle - 0.9216).abs() < 1e-12, "oracle tau = {tau_oracle}");
    }

    #[test]
    fn tangle_oracle_reference_points() {
        let ghz = PureState::ghz(3).unwrap();
        assert!((tangle3_oracle(&ghz).unwrap() - 1.0).abs() < 1e-12);
        let w = PureState::w_state(3).unwrap();
        assert!(tangle3_oracle(&w).unwrap() < 1e-12);
        assert!(tangle3_residual(&w).unwrap() < 1e-7);
    }

    #[test]
    fn tangle_routes_agree_on_random_states() {
        for seed in 0..300 {
            let s = PureState::random(3, seed).unwrap();
            let residual = tangle3_residual(&s).unwrap();
            let oracle = tangle3_oracle(&s).unwrap();
            assert!(
                (residual - oracle).abs() < tol::MEASURE_IDENTITY_TOL,
                "seed {seed}: residual {residual} vs oracle {oracle}"
            );
        }
    }

    #[test]
    fn tangle_requires_three_qubits() {
        let s = PureState::random(4, 0).unwrap();
        assert!(matches!(tangle3_residual(&s), Err(Error::Argument(_))));
        assert!(matches!(tangle3_oracle(&s), Err(Error::Argument(_))));
    }

    #[test]
    fn sum_sq_concurrence_examples() {
        let product = PureState::random_product(4, 17).unwrap();
        let s = sum_sq_concurrences(&product).unwrap();
        assert!(s.abs() < 1e-7, "sum C^2 = {s} on a product state");

        let w = PureState::w_state(3).unwrap();
        let s = sum_sq_concurrences(&w).unwrap();
        assert!((s - 4.0 / 3.0).abs() < 1e-9, "sum C^2 = {s} for W");

        let two = PureState::random(2, 1).unwrap();
        assert!(matches!(sum_sq_concurrences(&two), Err(Error::Argument(_))));
    }

    #[test]
    fn q_equals_mean_squared_i_concurrence() {
        for n in 2..=4 {
            for seed in 0..100 {
                let s = PureState::random(n, seed).unwrap();
                let q = global_entanglement(&s).unwrap();
                let mean_ic2: f64 = (1..=n)
                    .map(|k| {
                        let ic = i_concurrence(&s, &[k]).unwrap();
                        ic * ic
                    })
                    .sum::<f64>()
                    / n as f64;
                assert!(
                    (q - mean_ic2).abs() < tol::MEASURE_IDENTITY_TOL,
                    "n={n} seed={seed}: Q={q} vs mean IC^2={mean_ic2}"
                );
            }
        }
    }

    #[test]
    fn q_decomposes_into_concurrences_plus_tangle() {
        for seed in 0..100 {
            let s = PureState::random(3, seed).unwrap();
            let q = global_entanglement(&s).unwrap();
            let sum_sq = sum_sq_concurrences(&s).unwrap();
            let tau = tangle3_residual(&s).unwrap();
            assert!(
                (q - (2.0 / 3.0 * sum_sq + tau)).abs() < tol::MEASURE_IDENTITY_TOL,
                "seed {seed}: Q={q} vs 2/3*{sum_sq}+{tau}"
            );
        }
    }

    #[test]
    fn residual_is_pivot_independent() {
        for seed in 0..100 {
            let s = PureState::random(3, seed).unwrap();
            let ic: Vec<f64> = (1..=3)
                .map(|q| i_concurrence(&s, &[q]).unwrap())
                .collect();
            let c12 = concurrence_pair(&s, 1, 2).unwrap();
            let c13 = concurrence_pair(&s, 1, 3).unwrap();
            let c23 = concurrence_pair(&s, 2, 3).unwrap();
            let r1 = ic[0] * ic[0] - c12 * c12 - c13 * c13;
            let r2 = ic[1] * ic[1] - c12 * c12 - c23 * c23;
            let r3 = ic[2] * ic[2] - c13 * c13 - c23 * c23;
            assert!((r1 - r2).abs() < 1e-7, "seed {seed}: {r1} vs {r2}");
            assert!((r1 - r3).abs() < 1e-7, "seed {seed}: {r1} vs {r3}");
        }
    }

    #[test]
    fn single_excitation_q_is_half_sum_sq() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(77);
        for _ in 0..100 {
            let mut amps = vec![c(0.0, 0.0); 16];
            for idx in [8, 4, 2, 1] {
                amps[idx] = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            }
            let s = match PureState::from_amplitudes(amps) {
                Ok(s) => s,
                Err(_) => continue,
            };
            let q = global_entanglement(&s).unwrap();
            let sum_sq = sum_sq_concurrences(&s).unwrap();
            assert!(
                (q - 0.5 * sum_sq).abs() < tol::MEASURE_IDENTITY_TOL,
                "Q={q} vs sum/2={}",
                0.5 * sum_sq
            );
        }
    }

    #[test]
    fn measures_ignore_global_phase() {
        let s = PureState::random(3, 23).unwrap();
        let phase = C64::from_polar(1.0, 1.234);
        let rotated = PureState::superpose(&[(phase, &s)]).unwrap();
        let a = measure_report(&s).unwrap();
        let b = measure_report(&rotated).unwrap();
        assert!((a.global_q - b.global_q).abs() < 1e-10);
        assert!((a.sum_sq_concurrence - b.sum_sq_concurrence).abs() < 1e-10);
        assert!((a.tangle3.unwrap() - b.tangle3.unwrap()).abs() < 1e-10);
        for (k, v) in &a.pair_concurrences {
            assert!((v - b.pair_concurrences[k]).abs() < 1e-10);
        }
    }

    #[test]
    fn report_is_internally_consistent() {
        let s = PureState::random(3, 99).unwrap();
        let r = measure_report(&s).unwrap();
        let mean_ic2: f64 =
            r.i_concurrences.values().map(|ic| ic * ic).sum::<f64>() / 3.0;
        assert!((r.global_q - mean_ic2).abs() < 1e-8);
        assert!(
            (r.global_q - (2.0 / 3.0 * r.sum_sq_concurrence + r.tangle3.unwrap())).abs() < 1e-8
        );
    }
}
