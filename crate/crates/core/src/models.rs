//! The two Heisenberg spin clusters and the generalized GHZ family.
//!
//! 3-qubit cluster: an anisotropic ring where bonds (1,2) and (2,3) carry
//! coupling `J/4` and the (1,3) bond is doubled,
//!
//! ```text
//! H = J/4 (σ₁ˣσ₂ˣ + σ₁ʸσ₂ʸ + Δσ₁ᶻσ₂ᶻ + σ₂ˣσ₃ˣ + σ₂ʸσ₃ʸ + Δσ₂ᶻσ₃ᶻ)
//!   + J/2 (σ₁ˣσ₃ˣ + σ₁ʸσ₃ʸ + Δσ₁ᶻσ₃ᶻ)   [+ M/2 Σᵢ σᵢᶻ]
//! ```
//!
//! with the full analytic eigensystem (ψ₁…ψ₈) expressed through
//! `η = √(12 + Δ(Δ−4))` and `χ = η + Δ − 2`.
//!
//! 4-qubit cluster: an isotropic chain 1–2–3 with a star bond attaching
//! qubit 4 to qubit 2,
//!
//! ```text
//! H = J/4 (σ⃗₁·σ⃗₂ + σ⃗₂·σ⃗₃) + J_s/4 (σ⃗₂·σ⃗₄)
//! ```
//!
//! whose degenerate triplet pair Φ₁ (generalized W form) and Φ₂ (six-term
//! form, GHZ in two limits) carries the interesting entanglement structure.
//!
//! Closed-form concurrences, i-concurrences and global entanglement for
//! ψ₅/ψ₇, the (ψ₇+ψ₈)/√2 superposition, Φ₁ and Φ₂ are provided as
//! cross-checks against the numeric measure pipeline.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::state::{C64, Observable, PureState};

/// Parameters of the 3-qubit anisotropic cluster.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Model3Params {
    /// Coupling strength (energy units); scales all eigenvalues.
    pub j: f64,
    /// Anisotropy Δ of the σᶻσᶻ terms.
    pub delta: f64,
    /// Field strength M of the degeneracy-lifting term `M/2 Σ σᶻ` (default 0).
    pub field: f64,
}

impl Model3Params {
    /// `J = 1`, no field; the eigenstates depend only on Δ.
    pub fn anisotropic(delta: f64) -> Self {
        Self {
            j: 1.0,
            delta,
            field: 0.0,
        }
    }

    /// `η = √(12 + Δ(Δ−4))`; strictly positive for every real Δ.
    pub fn eta(&self) -> f64 {
        (12.0 + self.delta * (self.delta - 4.0)).sqrt()
    }

    /// `χ = η + Δ − 2`; strictly positive for every real Δ since `η > |Δ−2|`.
    pub fn chi(&self) -> f64 {
        self.eta() + self.delta - 2.0
    }

    fn require_regular(&self) -> Result<()> {
        if !self.delta.is_finite() || !self.j.is_finite() {
            return Err(Error::Argument("model parameters must be finite".into()));
        }
        // Unreachable for finite Δ (χ = η + Δ − 2 > 0 always); kept as a guard
        // so callers get a clear signal instead of NaNs.
        if self.chi().abs() < 1e-12 || self.eta().abs() < 1e-12 {
            return Err(Error::ClosedFormSingularity(format!(
                "chi = {:.3e} at delta = {}; use the numeric eigensolve",
                self.chi(),
                self.delta
            )));
        }
        Ok(())
    }
}

/// Parameters of the 4-qubit chain-plus-star cluster.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Model4Params {
    /// Chain coupling between qubits 1–2 and 2–3.
    pub j: f64,
    /// Star coupling between qubits 2 and 4.
    pub js: f64,
}

impl Model4Params {
    pub fn new(j: f64, js: f64) -> Self {
        Self { j, js }
    }

    /// `δ = √(9J² − 4JJ_s + 4J_s²)`; positive unless `J = J_s = 0`.
    pub fn delta(&self) -> f64 {
        (9.0 * self.j * self.j - 4.0 * self.j * self.js + 4.0 * self.js * self.js).sqrt()
    }

    /// `μ₂ = 1/√(3 + (9J − 2J_s)/δ)`.
    pub fn mu2(&self) -> Result<f64> {
        let arg = 3.0 + (9.0 * self.j - 2.0 * self.js) / self.require_delta()?;
        if arg <= 0.0 {
            return Err(Error::ClosedFormSingularity(format!(
                "mu2 argument {arg:.3e} <= 0 at (J={}, Js={})",
                self.j, self.js
            )));
        }
        Ok(1.0 / arg.sqrt())
    }

    /// `a₁ = 1/(2√2 μ₂)`.
    pub fn a1(&self) -> Result<f64> {
        Ok(1.0 / (2.0 * 2f64.sqrt() * self.mu2()?))
    }

    /// `b₁ = (J_s − J)/(√2 μ₂ (3J + δ))`.
    pub fn b1(&self) -> Result<f64> {
        let denom = 2f64.sqrt() * self.mu2()? * (3.0 * self.j + self.require_delta()?);
        if denom.abs() < 1e-12 {
            return Err(Error::ClosedFormSingularity(format!(
                "b1 denominator vanishes at (J={}, Js={})",
                self.j, self.js
            )));
        }
        Ok((self.js - self.j) / denom)
    }

    /// `c₁ = μ₂(3J + 2J_s + δ) / (2√(18J² − 8JJ_s + 8J_s²))`.
    pub fn c1(&self) -> Result<f64> {
        let arg = 18.0 * self.j * self.j - 8.0 * self.j * self.js + 8.0 * self.js * self.js;
        if arg <= 0.0 {
            return Err(Error::ClosedFormSingularity(format!(
                "c1 radicand {arg:.3e} <= 0 at (J={}, Js={})",
                self.j, self.js
            )));
        }
        Ok(self.mu2()? * (3.0 * self.j + 2.0 * self.js + self.require_delta()?)
            / (2.0 * arg.sqrt()))
    }

    /// `a₂ = √(4 + (−J + 2J_s + δ)²/(2J²))`; diverges for `J → 0` while the
    /// state Φ₂ itself stays finite (see [`phi2`]).
    pub fn a2(&self) -> Result<f64> {
        if self.j.abs() < 1e-12 {
            return Err(Error::ClosedFormSingularity(
                "a2 diverges at J = 0; phi2 takes the limit state instead".into(),
            ));
        }
        let num = -self.j + 2.0 * self.js + self.require_delta()?;
        Ok((4.0 + num * num / (2.0 * self.j * self.j)).sqrt())
    }

    fn require_delta(&self) -> Result<f64> {
        let d = self.delta();
        if d < 1e-12 {
            return Err(Error::ClosedFormSingularity(
                "delta = 0 at J = Js = 0".into(),
            ));
        }
        Ok(d)
    }
}

/// Generalized GHZ state `g|000⟩ + √(1−g²)|111⟩`, `g ∈ [0, 1]`.
pub fn generalized_ghz(g: f64) -> Result<PureState> {
    if !(0.0..=1.0).contains(&g) {
        return Err(Error::Argument(format!("g = {g} outside [0, 1]")));
    }
    let mut amps = vec![C64::new(0.0, 0.0); 8];
    amps[0] = C64::new(g, 0.0);
    amps[7] = C64::new((1.0 - g * g).sqrt(), 0.0);
    PureState::from_amplitudes(amps)
}

/// Pauli product acting on the listed (qubit, pauli) positions of an n-qubit
/// register, identity elsewhere.
fn pauli_product(n: usize, factors: &[(usize, &Observable)]) -> Observable {
    let mut op: Option<Observable> = None;
    for q in 1..=n {
        let single = factors
            .iter()
            .find(|(qubit, _)| *qubit == q)
            .map(|(_, p)| (*p).clone())
            .unwrap_or_else(|| Observable::identity(2));
        op = Some(match op {
            None => single,
            Some(acc) => acc.kron(&single),
        });
    }
    op.expect("n >= 1")
}

/// Heisenberg bond `σᵢˣσⱼˣ + σᵢʸσⱼʸ + anisotropy·σᵢᶻσⱼᶻ` scaled by `coupling`.
fn bond(n: usize, i: usize, j: usize, coupling: f64, anisotropy: f64) -> Observable {
    let [x, y, z] = Observable::paulis();
    let xx = pauli_product(n, &[(i, &x), (j, &x)]);
    let yy = pauli_product(n, &[(i, &y), (j, &y)]);
    let zz = pauli_product(n, &[(i, &z), (j, &z)]);
    (&(&xx + &yy) + &zz.scale(anisotropy)).scale(coupling)
}

/// The 3-qubit anisotropic Hamiltonian (8×8), including the optional field.
pub fn hamiltonian3(p: &Model3Params) -> Observable {
    let mut h = bond(3, 1, 2, p.j / 4.0, p.delta);
    h = &h + &bond(3, 2, 3, p.j / 4.0, p.delta);
    h = &h + &bond(3, 1, 3, p.j / 2.0, p.delta);
    if p.field != 0.0 {
        let z = Observable::pauli_z();
        for q in 1..=3 {
            h = &h + &pauli_product(3, &[(q, &z)]).scale(p.field / 2.0);
        }
    }
    h
}

/// The 4-qubit chain-plus-star Hamiltonian (16×16).
pub fn hamiltonian4(p: &Model4Params) -> Observable {
    let mut h = bond(4, 1, 2, p.j / 4.0, 1.0);
    h = &h + &bond(4, 2, 3, p.j / 4.0, 1.0);
    &h + &bond(4, 2, 4, p.js / 4.0, 1.0)
}

fn state_from_terms(terms: &[(usize, f64)], n: usize) -> PureState {
    let mut amps = vec![C64::new(0.0, 0.0); 1 << n];
    for (idx, coeff) in terms {
        amps[*idx] = C64::new(*coeff, 0.0);
    }
    PureState::from_amplitudes(amps).expect("analytic states are normalized")
}

/// Analytic eigenstate `ψ_k` (k = 1..8) of the field-free 3-qubit Hamiltonian.
pub fn psi(p: &Model3Params, k: usize) -> Result<PureState> {
    p.require_regular()?;
    let eta = p.eta();
    let chi = p.chi();
    // Basis indices: |011⟩=3, |101⟩=5, |110⟩=6, |001⟩=1, |010⟩=2, |100⟩=4.
    let state = match k {
        1 => state_from_terms(&[(7, 1.0)], 3),
        2 => state_from_terms(&[(0, 1.0)], 3),
        3 => state_from_terms(&[(3, -1.0), (6, 1.0)], 3),
        4 => state_from_terms(&[(1, -1.0), (4, 1.0)], 3),
        5 => {
            let k5 = chi.sqrt() / (2.0 * eta.sqrt());
            state_from_terms(&[(3, k5), (5, -4.0 * k5 / chi), (6, k5)], 3)
        }
        6 => {
            let k6 = chi.sqrt() / (2.0 * eta.sqrt());
            state_from_terms(&[(4, k6), (2, -4.0 * k6 / chi), (1, k6)], 3)
        }
        7 => {
            let k7 = 2f64.sqrt() / (eta * chi).sqrt();
            state_from_terms(&[(3, k7), (5, k7 * chi / 2.0), (6, k7)], 3)
        }
        8 => {
            let k8 = 2f64.sqrt() / (eta * chi).sqrt();
            state_from_terms(&[(4, k8), (2, k8 * chi / 2.0), (1, k8)], 3)
        }
        _ => {
            return Err(Error::Argument(format!(
                "eigenstate index {k} outside 1..=8"
            )))
        }
    };
    Ok(state)
}

/// Analytic eigenvalue `E_k` (k = 1..8) of the field-free 3-qubit Hamiltonian.
///
/// The antisymmetric pair ψ₃/ψ₄ sits at `E = −J(Δ+2)/2`: applying H to
/// `|011⟩ − |110⟩` gives `−(ΔJ/2 + J)(|011⟩ − |110⟩)`, so the energy tracks
/// the anisotropy (it is not constant in Δ).
pub fn energy(p: &Model3Params, k: usize) -> Result<f64> {
    let eta = p.eta();
    match k {
        1 | 2 => Ok(p.delta * p.j),
        3 | 4 => Ok(-p.j * (p.delta + 2.0) / 2.0),
        5 | 6 => Ok(-p.j / 4.0 * (eta + p.delta - 2.0)),
        7 | 8 => Ok(p.j / 4.0 * (eta - p.delta + 2.0)),
        _ => Err(Error::Argument(format!(
            "eigenvalue index {k} outside 1..=8"
        ))),
    }
}

/// All eight analytic `(E_k, ψ_k)` pairs in table order.
pub fn eigensystem3_analytic(p: &Model3Params) -> Result<Vec<(f64, PureState)>> {
    (1..=8).map(|k| Ok((energy(p, k)?, psi(p, k)?))).collect()
}

/// Numeric eigensystem of [`hamiltonian3`] (fallback for singular closed
/// forms), energies ascending, phases fixed so the largest-magnitude
/// amplitude is real positive. Degenerate subspaces come out in an arbitrary
/// orthonormal basis.
pub fn eigensystem3_numeric(p: &Model3Params) -> Vec<(f64, PureState)> {
    let (energies, vectors) = hamiltonian3(p).eigensystem();
    let mut pairs: Vec<(f64, PureState)> = energies
        .iter()
        .enumerate()
        .map(|(col, &e)| {
            let amps: Vec<C64> = vectors.column(col).iter().cloned().collect();
            (e, fix_phase(PureState::from_amplitudes(amps).expect("unit column")))
        })
        .collect();
    pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    pairs
}

/// Rotate a global phase so the largest-magnitude amplitude is real positive.
pub fn fix_phase(state: PureState) -> PureState {
    let amps = state.amplitudes();
    let mut max_idx = 0;
    let mut max_norm = 0.0;
    for (i, a) in amps.iter().enumerate() {
        if a.norm() > max_norm {
            max_norm = a.norm();
            max_idx = i;
        }
    }
    let phase = amps[max_idx] / C64::new(max_norm, 0.0);
    PureState::superpose(&[(phase.conj(), &state)]).expect("unit phase rotation")
}

/// The equal superposition `(ψ₇ + ψ₈)/√2`.
pub fn superposition78(p: &Model3Params) -> Result<PureState> {
    let psi7 = psi(p, 7)?;
    let psi8 = psi(p, 8)?;
    PureState::superpose(&[
        (C64::new(1.0, 0.0), &psi7),
        (C64::new(1.0, 0.0), &psi8),
    ])
}

/// `Φ₁ = a₁|1110⟩ + b₁|1011⟩ − c₁|0111⟩ − c₁|1101⟩`.
///
/// The sign of the |0111⟩ amplitude is negative: only then is the vector an
/// eigenvector of [`hamiltonian4`] (residual ~1e-16 across the parameter
/// plane), and at `J = J_s` it reduces to the separable form
/// `−(1/√6)(|011⟩ + |101⟩ − 2|110⟩)₁₃₄ ⊗ |1⟩₂`.
pub fn phi1(p: &Model4Params) -> Result<PureState> {
    let (a1, b1, c1) = (p.a1()?, p.b1()?, p.c1()?);
    Ok(state_from_terms(
        &[(14, a1), (11, b1), (7, -c1), (13, -c1)],
        4,
    ))
}

/// `Φ₂ = (1/a₂)(−|0011⟩ + |0110⟩ − |1001⟩ + |1100⟩) + (J a₂/2δ)(−|0101⟩ + |1010⟩)`.
///
/// At `J = 0` the closed-form coefficient `a₂` diverges while the state tends
/// to the GHZ-type limit `(−|0101⟩ + |1010⟩)/√2`; that limit state is returned
/// directly (it is an exact eigenvector of the `J = 0` Hamiltonian).
pub fn phi2(p: &Model4Params) -> Result<PureState> {
    if p.j.abs() < 1e-12 {
        return Ok(state_from_terms(&[(5, -1.0), (10, 1.0)], 4));
    }
    let a2 = p.a2()?;
    let w = p.j * a2 / (2.0 * p.require_delta()?);
    Ok(state_from_terms(
        &[(3, -1.0 / a2), (6, 1.0 / a2), (9, -1.0 / a2), (12, 1.0 / a2), (5, -w), (10, w)],
        4,
    ))
}

/// Measure values taken from closed forms only. Entries the paper does not
/// provide (or whose validity window excludes the requested parameters) are
/// absent rather than extrapolated.
#[derive(Debug, Clone, PartialEq)]
pub struct ClosedFormMeasures {
    pub pair_concurrences: BTreeMap<(usize, usize), f64>,
    pub i_concurrences: BTreeMap<usize, f64>,
    pub global_q: Option<f64>,
    pub tangle3: Option<f64>,
    pub sum_sq_concurrence: Option<f64>,
}

/// Which family and parameters a closed-form request targets.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ClosedFormTarget {
    Psi5(Model3Params),
    Psi7(Model3Params),
    Sup78(Model3Params),
    Phi1(Model4Params),
    Phi2(Model4Params),
}

/// Closed-form measure values for the supported model states.
pub fn closed_form_measures(target: &ClosedFormTarget) -> Result<ClosedFormMeasures> {
    match target {
        ClosedFormTarget::Psi5(p) => closed_form_psi(p, false),
        ClosedFormTarget::Psi7(p) => closed_form_psi(p, true),
        ClosedFormTarget::Sup78(p) => {
            p.require_regular()?;
            let eta = p.eta();
            // Exact: insert the ψ₇/ψ₈ amplitudes into the purity form of Q and
            // reduce with χ(η − Δ + 2) = 8. The constant term is −12 (a +12
            // would push Q above 1 for large Δ).
            let q = (5.0 * eta * eta + (p.delta - 2.0) * eta - 12.0) / (6.0 * eta * eta);
            Ok(ClosedFormMeasures {
                pair_concurrences: BTreeMap::new(),
                i_concurrences: BTreeMap::new(),
                global_q: Some(q),
                tangle3: None,
                sum_sq_concurrence: None,
            })
        }
        ClosedFormTarget::Phi1(p) => closed_form_phi1(p),
        ClosedFormTarget::Phi2(p) => closed_form_phi2(p),
    }
}

/// ψ₅/ψ₆ (`plus_sign = false`) and ψ₇/ψ₈ (`plus_sign = true`) share all
/// formulas up to the sign of `(Δ−2)η` in the C₁₃ denominator.
fn closed_form_psi(p: &Model3Params, plus_sign: bool) -> Result<ClosedFormMeasures> {
    p.require_regular()?;
    let eta = p.eta();
    let delta = p.delta;
    let sign = if plus_sign { 1.0 } else { -1.0 };
    let c12 = 2.0 / eta;
    let c13_denom = eta * eta + sign * (delta - 2.0) * eta;
    let c13 = 4.0 / c13_denom;
    let sum_sq = 8.0 * (1.0 / (eta * eta) + 2.0 / (c13_denom * c13_denom));
    // IC₁ = IC₃ carries (Δ−2)/η for ψ₅ and (2−Δ)/η for ψ₇.
    let ic1 = (0.5 * (1.0 + 4.0 / (eta * eta) - sign * (delta - 2.0) / eta)).sqrt();
    let ic2 = 2.0 * 2f64.sqrt() / eta;
    let mut pair_concurrences = BTreeMap::new();
    pair_concurrences.insert((1, 2), c12);
    pair_concurrences.insert((2, 3), c12);
    pair_concurrences.insert((1, 3), c13);
    let mut i_concurrences = BTreeMap::new();
    i_concurrences.insert(1, ic1);
    i_concurrences.insert(2, ic2);
    i_concurrences.insert(3, ic1);
    Ok(ClosedFormMeasures {
        pair_concurrences,
        i_concurrences,
        global_q: Some(2.0 / 3.0 * sum_sq),
        tangle3: Some(0.0),
        sum_sq_concurrence: Some(sum_sq),
    })
}

fn closed_form_phi1(p: &Model4Params) -> Result<ClosedFormMeasures> {
    let delta = p.require_delta()?;
    let (j, js) = (p.j, p.js);
    let c12_sq_arg =
        1.0 + 8.0 * j * (j - js) / (delta * delta) + (-5.0 * j + 2.0 * js) / delta;
    if c12_sq_arg < -1e-10 {
        return Err(Error::ValidityRange(format!(
            "C12 radicand {c12_sq_arg:.3e} < 0 at (J={j}, Js={js})"
        )));
    }
    let c12 = c12_sq_arg.max(0.0).sqrt() / (2.0 * 2f64.sqrt());
    let c13_sq_arg = 1.0 - 4.0 * j * j / (delta * delta) + (-j + 2.0 * js) / delta;
    if c13_sq_arg < -1e-10 {
        return Err(Error::ValidityRange(format!(
            "C13 radicand {c13_sq_arg:.3e} < 0 at (J={j}, Js={js})"
        )));
    }
    let c13 = c13_sq_arg.max(0.0).sqrt() / (2.0 * 2f64.sqrt());
    let c14 = (3.0 * j + 2.0 * js + delta) / (4.0 * delta);
    // The C24 expression is signed (negative for J_s > J); its magnitude is
    // the concurrence.
    let c24 = ((j - js) * (3.0 + (9.0 * j - 2.0 * js) / delta) / (6.0 * j + 2.0 * delta))
        .abs();
    let sum_sq = 0.25 * (5.0 - 12.0 * j * j / (delta * delta) + (-j + 2.0 * js) / delta);
    let q = 0.5 * sum_sq;

    let mut pair_concurrences = BTreeMap::new();
    pair_concurrences.insert((1, 2), c12);
    pair_concurrences.insert((2, 3), c12);
    pair_concurrences.insert((1, 3), c13);
    pair_concurrences.insert((1, 4), c14);
    pair_concurrences.insert((3, 4), c14);
    pair_concurrences.insert((2, 4), c24);
    // Single-excitation structure: IC_i² = Σ_j C_ij².
    let mut i_concurrences = BTreeMap::new();
    for i in 1..=4usize {
        let ic_sq: f64 = pair_concurrences
            .iter()
            .filter(|((a, b), _)| *a == i || *b == i)
            .map(|(_, c)| c * c)
            .sum();
        i_concurrences.insert(i, ic_sq.sqrt());
    }
    Ok(ClosedFormMeasures {
        pair_concurrences,
        i_concurrences,
        global_q: Some(q),
        tangle3: None,
        sum_sq_concurrence: Some(sum_sq),
    })
}

fn closed_form_phi2(p: &Model4Params) -> Result<ClosedFormMeasures> {
    let delta = p.require_delta()?;
    let (j, js) = (p.j, p.js);
    let mut pair_concurrences = BTreeMap::new();

    // C12 = C14 = C23 = C34 = max{0, 2J/δ − 4J²/(8J² + (2J_s − J + δ)²)},
    // valid along both sweep axes for positive couplings. With the Φ₂
    // amplitudes α = 1/a₂ and β = Ja₂/(2δ) this is the X-state concurrence
    // 2·max{0, 2αβ − α²}; the second term is 2α² = 4J²/(8J² + (2J_s−J+δ)²).
    let c12 = (2.0 * j / delta
        - 4.0 * j * j / (8.0 * j * j + (2.0 * js - j + delta).powi(2)))
    .max(0.0);
    for key in [(1, 2), (1, 4), (2, 3), (3, 4)] {
        pair_concurrences.insert(key, c12);
    }

    // C13 = C24: analytic only for (J=2, Js<2) and (Js=2, J>2); explicitly 0
    // for (J=2, Js≥1) and (Js=2, J≤4); unavailable elsewhere.
    let on_j2_axis = (j - 2.0).abs() < 1e-9;
    let on_js2_axis = (js - 2.0).abs() < 1e-9;
    let formula_window = (on_j2_axis && js < 2.0) || (on_js2_axis && j > 2.0);
    let zero_window = (on_j2_axis && js >= 1.0) || (on_js2_axis && j <= 4.0);
    let c13 = if formula_window {
        let arg_plus = delta * delta + delta * (j - 2.0 * js) - 4.0 * j * j;
        let arg_minus = delta * delta - delta * (j - 2.0 * js) - 4.0 * j * j;
        if arg_plus >= 0.0 && arg_minus >= 0.0 {
            Some(((arg_plus.sqrt() - arg_minus.sqrt()) / (2f64.sqrt() * delta)).max(0.0))
        } else if zero_window {
            Some(0.0)
        } else {
            None
        }
    } else if zero_window {
        Some(0.0)
    } else {
        None
    };
    if let Some(c) = c13 {
        pair_concurrences.insert((1, 3), c);
        pair_concurrences.insert((2, 4), c);
    }

    let sum_sq = if pair_concurrences.len() == 6 {
        Some(pair_concurrences.values().map(|c| c * c).sum())
    } else {
        None
    };
    // Q(Φ₂) = 1 identically, so every single-qubit marginal is maximally mixed.
    let mut i_concurrences = BTreeMap::new();
    for i in 1..=4 {
        i_concurrences.insert(i, 1.0);
    }
    Ok(ClosedFormMeasures {
        pair_concurrences,
        i_concurrences,
        global_q: Some(1.0),
        tangle3: None,
        sum_sq_concurrence: sum_sq,
    })
}
