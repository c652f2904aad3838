//! Mermin-Klyshko Bell polynomials for 3 and 4 qubits.
//!
//! With per-qubit spin observables `A = a⃗·σ⃗`, `A' = a⃗'·σ⃗` (and likewise for
//! B, C, D) the polynomials are
//!
//! ```text
//! F₃  = (AB' + A'B)C  + (AB − A'B')C'
//! F'₃ = (AB' + A'B)C' − (AB − A'B')C
//! F₄  = ½(D + D')⊗F₃  + ½(D − D')⊗F'₃
//! F'₄ = ½(D + D')⊗F'₃ + ½(D' − D)⊗F₃
//! ```
//!
//! Qubits A, B, C, D are qubits 1..4; the D factor acts on qubit 4, i.e. the
//! materialized operator is `F₃-part ⊗ D-part` in the crate's leading-bit
//! ordering. Operators are built as dense matrices (dim ≤ 16), which keeps
//! Hermiticity checkable; [`Correlations`] provides an equivalent fast
//! evaluation path for optimizer inner loops.
//!
//! The squared expectation sum `⟨F_n⟩² + ⟨F'_n⟩²` classifies entanglement:
//! values ≤ 8 are reachable with at most 2-qubit entanglement, ≤ 16 with
//! 3-qubit, ≤ 32 with 4-qubit. The bounds are sufficient conditions only,
//! hence the `*Compatible` naming.

use crate::error::{Error, Result};
use crate::state::{Observable, PureState};
use crate::tolerances as tol;

/// Real unit 3-vector defining the spin observable `v·σ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Direction {
    x: f64,
    y: f64,
    z: f64,
}

impl Direction {
    /// Validate a vector (unit norm within 1e-8) and renormalize it exactly.
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let norm = (x * x + y * y + z * z).sqrt();
        if (norm - 1.0).abs() > tol::DIRECTION_NORM_TOL {
            return Err(Error::Normalization { norm });
        }
        Ok(Self {
            x: x / norm,
            y: y / norm,
            z: z / norm,
        })
    }

    /// Unit vector from spherical angles: `(sinθ cosφ, sinθ sinφ, cosθ)`.
    pub fn from_angles(theta: f64, phi: f64) -> Self {
        let (st, ct) = (theta.sin(), theta.cos());
        let (sp, cp) = (phi.sin(), phi.cos());
        Self {
            x: st * cp,
            y: st * sp,
            z: ct,
        }
    }

    /// Spherical angles `(θ, φ)` with `θ = acos(z)`, `φ = atan2(y, x)`.
    pub fn to_angles(self) -> (f64, f64) {
        (self.z.clamp(-1.0, 1.0).acos(), self.y.atan2(self.x))
    }

    pub fn x_axis() -> Self {
        Self { x: 1.0, y: 0.0, z: 0.0 }
    }

    pub fn y_axis() -> Self {
        Self { x: 0.0, y: 1.0, z: 0.0 }
    }

    pub fn z_axis() -> Self {
        Self { x: 0.0, y: 0.0, z: 1.0 }
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    pub fn z(&self) -> f64 {
        self.z
    }

    /// Components as `[x, y, z]`.
    pub fn as_array(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }
}

impl std::ops::Neg for Direction {
    type Output = Direction;
    fn neg(self) -> Direction {
        Direction {
            x: -self.x,
            y: -self.y,
            z: -self.z,
        }
    }
}

/// One `(v, v')` direction pair per qubit; 3 or 4 pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct BellSettings {
    pairs: Vec<(Direction, Direction)>,
}

impl BellSettings {
    pub fn new(pairs: Vec<(Direction, Direction)>) -> Result<Self> {
        let n = pairs.len();
        if n != 3 && n != 4 {
            return Err(Error::Argument(format!(
                "Bell settings need 3 or 4 qubit pairs, got {n}"
            )));
        }
        Ok(Self { pairs })
    }

    pub fn n_qubits(&self) -> usize {
        self.pairs.len()
    }

    pub fn pairs(&self) -> &[(Direction, Direction)] {
        &self.pairs
    }

    /// Flatten to `[θ, φ]` per direction, unprimed before primed, qubit order.
    pub fn to_angles(&self) -> Vec<f64> {
        let mut angles = Vec::with_capacity(4 * self.pairs.len());
        for (v, vp) in &self.pairs {
            let (t, p) = v.to_angles();
            angles.push(t);
            angles.push(p);
            let (t, p) = vp.to_angles();
            angles.push(t);
            angles.push(p);
        }
        angles
    }

    /// Inverse of [`BellSettings::to_angles`]; length must be 12 or 16.
    pub fn from_angles(angles: &[f64]) -> Result<Self> {
        if angles.len() != 12 && angles.len() != 16 {
            return Err(Error::Size(format!(
                "angle vector length {} (need 12 or 16)",
                angles.len()
            )));
        }
        let pairs = angles
            .chunks_exact(4)
            .map(|c| {
                (
                    Direction::from_angles(c[0], c[1]),
                    Direction::from_angles(c[2], c[3]),
                )
            })
            .collect();
        Self::new(pairs)
    }

    /// Same settings with the last qubit's pair negated; flips the sign of
    /// both `⟨F_n⟩` and `⟨F'_n⟩`.
    pub fn negate_last_pair(&self) -> Self {
        let mut pairs = self.pairs.clone();
        let last = pairs.len() - 1;
        pairs[last] = (-pairs[last].0, -pairs[last].1);
        Self { pairs }
    }
}

/// Entanglement class compatible with an observed squared expectation sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EntanglementClass {
    /// `max{|⟨F⟩|, |⟨F'⟩|} ≤ 2`: reachable by product states.
    ProductCompatible,
    /// Sum ≤ 8: reachable with at most 2-qubit entanglement.
    TwoQubitCompatible,
    /// Sum ≤ 16: reachable with at most 3-qubit entanglement.
    ThreeQubitCompatible,
    /// Sum ≤ 32: reachable with 4-qubit entanglement.
    FourQubitCompatible,
    /// Sum above the n-qubit bound (numerically impossible for valid states).
    BeyondBound,
}

impl std::fmt::Display for EntanglementClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            EntanglementClass::ProductCompatible => "product-compatible",
            EntanglementClass::TwoQubitCompatible => "2-qubit-compatible",
            EntanglementClass::ThreeQubitCompatible => "3-qubit-compatible",
            EntanglementClass::FourQubitCompatible => "4-qubit-compatible",
            EntanglementClass::BeyondBound => "beyond-bound",
        };
        write!(f, "{name}")
    }
}

/// Result of evaluating (or optimizing) the Bell pair `(F_n, F'_n)` on a state.
#[derive(Debug, Clone)]
pub struct BellOutcome {
    /// `⟨F_n⟩` at `settings`.
    pub value_f: f64,
    /// `⟨F'_n⟩` at `settings`.
    pub value_fprime: f64,
    /// `value_f² + value_fprime²`.
    pub sum_sq: f64,
    /// Ladder classification of `sum_sq`.
    pub classification: EntanglementClass,
    /// The measurement directions that produce the values above.
    pub settings: BellSettings,
    /// Number of distinct restart optima (objective values clustered within
    /// 1e-6); 1 when the outcome was not produced by the optimizer.
    pub distinct_optima: usize,
    /// Set when no optimizer restart improved beyond its starting value.
    pub stagnant: bool,
}

/// `v·σ` as a 2×2 observable; Hermitian, traceless, eigenvalues ±1.
pub fn spin_observable(v: &Direction) -> Observable {
    let x = Observable::pauli_x().scale(v.x());
    let y = Observable::pauli_y().scale(v.y());
    let z = Observable::pauli_z().scale(v.z());
    &(&x + &y) + &z
}

fn kron3(a: &Observable, b: &Observable, c: &Observable) -> Observable {
    a.kron(b).kron(c)
}

fn require_arity(settings: &BellSettings, n: usize) -> Result<()> {
    if settings.n_qubits() != n {
        return Err(Error::Argument(format!(
            "expected {n} qubit pairs, got {}",
            settings.n_qubits()
        )));
    }
    Ok(())
}

fn f3_parts(settings: &BellSettings) -> [Observable; 6] {
    let p = settings.pairs();
    [
        spin_observable(&p[0].0),
        spin_observable(&p[0].1),
        spin_observable(&p[1].0),
        spin_observable(&p[1].1),
        spin_observable(&p[2].0),
        spin_observable(&p[2].1),
    ]
}

/// `F₃ = (AB' + A'B)C + (AB − A'B')C'` as an 8×8 observable.
pub fn build_f3(settings: &BellSettings) -> Result<Observable> {
    require_arity(settings, 3)?;
    let [a, ap, b, bp, c, cp] = f3_parts(settings);
    let sum = &(&kron3(&a, &bp, &c) + &kron3(&ap, &b, &c)) + &kron3(&a, &b, &cp);
    Ok(&sum - &kron3(&ap, &bp, &cp))
}

/// `F'₃ = (AB' + A'B)C' − (AB − A'B')C` as an 8×8 observable.
pub fn build_f3_prime(settings: &BellSettings) -> Result<Observable> {
    require_arity(settings, 3)?;
    let [a, ap, b, bp, c, cp] = f3_parts(settings);
    let sum = &(&kron3(&a, &bp, &cp) + &kron3(&ap, &b, &cp)) - &kron3(&a, &b, &c);
    Ok(&sum + &kron3(&ap, &bp, &c))
}

fn leading_settings(settings: &BellSettings) -> BellSettings {
    BellSettings {
        pairs: settings.pairs()[..3].to_vec(),
    }
}

fn d_half_parts(settings: &BellSettings) -> (Observable, Observable) {
    let (d, dp) = &settings.pairs()[3];
    let d = spin_observable(d);
    let dp = spin_observable(dp);
    ((&d + &dp).scale(0.5), (&d - &dp).scale(0.5))
}

/// `F₄ = ½(D + D')⊗F₃ + ½(D − D')⊗F'₃` as a 16×16 observable
/// (D acting on qubit 4).
pub fn build_f4(settings: &BellSettings) -> Result<Observable> {
    require_arity(settings, 4)?;
    let leading = leading_settings(settings);
    let f3 = build_f3(&leading)?;
    let f3p = build_f3_prime(&leading)?;
    let (d_plus, d_minus) = d_half_parts(settings);
    Ok(&f3.kron(&d_plus) + &f3p.kron(&d_minus))
}

/// `F'₄ = ½(D + D')⊗F'₃ + ½(D' − D)⊗F₃` as a 16×16 observable.
pub fn build_f4_prime(settings: &BellSettings) -> Result<Observable> {
    require_arity(settings, 4)?;
    let leading = leading_settings(settings);
    let f3 = build_f3(&leading)?;
    let f3p = build_f3_prime(&leading)?;
    let (d_plus, d_minus) = d_half_parts(settings);
    Ok(&f3p.kron(&d_plus) - &f3.kron(&d_minus))
}

/// `(⟨F_n⟩, ⟨F'_n⟩)` via the dense operators.
pub fn evaluate(state: &PureState, settings: &BellSettings) -> Result<(f64, f64)> {
    let n = state.n_qubits();
    if settings.n_qubits() != n {
        return Err(Error::Size(format!(
            "settings for {} qubits applied to a {n}-qubit state",
            settings.n_qubits()
        )));
    }
    match n {
        3 => Ok((
            state.expectation(&build_f3(settings)?)?,
            state.expectation(&build_f3_prime(settings)?)?,
        )),
        4 => Ok((
            state.expectation(&build_f4(settings)?)?,
            state.expectation(&build_f4_prime(settings)?)?,
        )),
        _ => Err(Error::Argument(format!(
            "Bell evaluation is defined for 3 or 4 qubits, got {n}"
        ))),
    }
}

/// Wrap evaluated values into a [`BellOutcome`].
pub fn outcome(state: &PureState, settings: &BellSettings) -> Result<BellOutcome> {
    let (value_f, value_fprime) = evaluate(state, settings)?;
    let sum_sq = value_f * value_f + value_fprime * value_fprime;
    Ok(BellOutcome {
        value_f,
        value_fprime,
        sum_sq,
        classification: classify(sum_sq, state.n_qubits())?,
        settings: settings.clone(),
        distinct_optima: 1,
        stagnant: false,
    })
}

/// Classify a squared expectation sum against the n-qubit bound ladder.
/// Boundaries are inclusive on the lower class.
pub fn classify(sum_sq: f64, n: usize) -> Result<EntanglementClass> {
    if sum_sq < 0.0 {
        return Err(Error::Argument(format!(
            "squared sum must be non-negative, got {sum_sq}"
        )));
    }
    match n {
        3 => Ok(if sum_sq <= 8.0 {
            EntanglementClass::TwoQubitCompatible
        } else if sum_sq <= 16.0 {
            EntanglementClass::ThreeQubitCompatible
        } else {
            EntanglementClass::BeyondBound
        }),
        4 => Ok(if sum_sq <= 8.0 {
            EntanglementClass::TwoQubitCompatible
        } else if sum_sq <= 16.0 {
            EntanglementClass::ThreeQubitCompatible
        } else if sum_sq <= 32.0 {
            EntanglementClass::FourQubitCompatible
        } else {
            EntanglementClass::BeyondBound
        }),
        _ => Err(Error::Argument(format!(
            "classification ladder is defined for n = 3 or 4, got {n}"
        ))),
    }
}

/// `max{|⟨F⟩|, |⟨F'⟩|} ≤ 2`: satisfied by every pure product state.
pub fn product_bound_satisfied(value_f: f64, value_fprime: f64) -> bool {
    value_f.abs().max(value_fprime.abs()) <= 2.0
}

/// Precomputed Pauli correlation tensor of one state; evaluates `(⟨F⟩, ⟨F'⟩)`
/// in a few hundred flops. Agrees with the dense-operator route to machine
/// precision.
#[derive(Debug, Clone)]
pub enum Correlations {
    /// `T[α][β][γ] = ⟨σ_α ⊗ σ_β ⊗ σ_γ⟩`.
    Three(Box<[[[f64; 3]; 3]; 3]>),
    /// `T[α][β][γ][δ] = ⟨σ_α ⊗ σ_β ⊗ σ_γ ⊗ σ_δ⟩`.
    Four(Box<[[[[f64; 3]; 3]; 3]; 3]>),
}

impl Correlations {
    pub fn new(state: &PureState) -> Result<Self> {
        let paulis = Observable::paulis();
        match state.n_qubits() {
            3 => {
                let mut t = Box::new([[[0.0; 3]; 3]; 3]);
                for (ai, a) in paulis.iter().enumerate() {
                    for (bi, b) in paulis.iter().enumerate() {
                        let ab = a.kron(b);
                        for (ci, c) in paulis.iter().enumerate() {
                            t[ai][bi][ci] = state.expectation(&ab.kron(c))?;
                        }
                    }
                }
                Ok(Correlations::Three(t))
            }
            4 => {
                let mut t = Box::new([[[[0.0; 3]; 3]; 3]; 3]);
                for (ai, a) in paulis.iter().enumerate() {
                    for (bi, b) in paulis.iter().enumerate() {
                        let ab = a.kron(b);
                        for (ci, c) in paulis.iter().enumerate() {
                            let abc = ab.kron(c);
                            for (di, d) in paulis.iter().enumerate() {
                                t[ai][bi][ci][di] = state.expectation(&abc.kron(d))?;
                            }
                        }
                    }
                }
                Ok(Correlations::Four(t))
            }
            n => Err(Error::Argument(format!(
                "correlation tensor is defined for 3 or 4 qubits, got {n}"
            ))),
        }
    }

    /// Number of qubits the tensor was built for.
    pub fn n_qubits(&self) -> usize {
        match self {
            Correlations::Three(_) => 3,
            Correlations::Four(_) => 4,
        }
    }

    /// `(⟨F_n⟩, ⟨F'_n⟩)` at the given settings.
    pub fn f_pair(&self, settings: &BellSettings) -> Result<(f64, f64)> {
        require_arity(settings, self.n_qubits())?;
        let p = settings.pairs();
        let a = p[0].0.as_array();
        let ap = p[0].1.as_array();
        let b = p[1].0.as_array();
        let bp = p[1].1.as_array();
        let c = p[2].0.as_array();
        let cp = p[2].1.as_array();

        // m1 = coefficients of AB' + A'B, m2 = coefficients of AB − A'B'.
        let mut m1 = [[0.0; 3]; 3];
        let mut m2 = [[0.0; 3]; 3];
        for al in 0..3 {
            for be in 0..3 {
                m1[al][be] = a[al] * bp[be] + ap[al] * b[be];
                m2[al][be] = a[al] * b[be] - ap[al] * bp[be];
            }
        }

        match self {
            Correlations::Three(t) => {
                let mut f = 0.0;
                let mut fp = 0.0;
                for al in 0..3 {
                    for be in 0..3 {
                        let mut u1 = 0.0;
                        let mut u2 = 0.0;
                        for ga in 0..3 {
                            u1 += t[al][be][ga] * c[ga];
                            u2 += t[al][be][ga] * cp[ga];
                        }
                        f += m1[al][be] * u1 + m2[al][be] * u2;
                        fp += m1[al][be] * u2 - m2[al][be] * u1;
                    }
                }
                Ok((f, fp))
            }
            Correlations::Four(t) => {
                let d = p[3].0.as_array();
                let dp = p[3].1.as_array();
                let mut f = 0.0;
                let mut fp = 0.0;
                for al in 0..3 {
                    for be in 0..3 {
                        for ga in 0..3 {
                            let f3c = m1[al][be] * c[ga] + m2[al][be] * cp[ga];
                            let f3pc = m1[al][be] * cp[ga] - m2[al][be] * c[ga];
                            let mut v1 = 0.0;
                            let mut v2 = 0.0;
                            for de in 0..3 {
                                v1 += t[al][be][ga][de] * (d[de] + dp[de]) * 0.5;
                                v2 += t[al][be][ga][de] * (d[de] - dp[de]) * 0.5;
                            }
                            f += f3c * v1 + f3pc * v2;
                            fp += f3pc * v1 - f3c * v2;
                        }
                    }
                }
                Ok((f, fp))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_direction(rng: &mut ChaCha8Rng) -> Direction {
        let cos_theta: f64 = rng.gen_range(-1.0..=1.0);
        let phi: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
        Direction::from_angles(cos_theta.acos(), phi)
    }

    fn random_settings(n: usize, rng: &mut ChaCha8Rng) -> BellSettings {
        BellSettings::new(
            (0..n)
                .map(|_| (random_direction(rng), random_direction(rng)))
                .collect(),
        )
        .unwrap()
    }

    /// Settings that are known to maximize ⟨F₃⟩ on the GHZ state.
    fn ghz_optimal_settings() -> BellSettings {
        BellSettings::new(vec![
            (Direction::x_axis(), Direction::y_axis()),
            (Direction::x_axis(), Direction::y_axis()),
            (-Direction::y_axis(), Direction::x_axis()),
        ])
        .unwrap()
    }

    #[test]
    fn spin_observable_examples() {
        let z = spin_observable(&Direction::z_axis());
        assert_eq!(z.matrix()[(0, 0)].re, 1.0);
        assert_eq!(z.matrix()[(1, 1)].re, -1.0);

        let x = spin_observable(&Direction::x_axis());
        assert_eq!(x.matrix()[(0, 1)].re, 1.0);
        assert_eq!(x.matrix()[(1, 0)].re, 1.0);

        let diag = Direction::new(1.0 / 2f64.sqrt(), 0.0, 1.0 / 2f64.sqrt()).unwrap();
        let mut eig = spin_observable(&diag).eigenvalues();
        eig.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((eig[0] + 1.0).abs() < 1e-12);
        assert!((eig[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn direction_rejects_non_unit_vectors() {
        assert!(matches!(
            Direction::new(1.0, 1.0, 0.0),
            Err(Error::Normalization { .. })
        ));
        // Within 1e-8 of unit norm is accepted and renormalized.
        let v = Direction::new(1.0 + 5e-9, 0.0, 0.0).unwrap();
        assert!((v.as_array()[0] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn f3_reaches_four_on_ghz() {
        let ghz = PureState::ghz(3).unwrap();
        let (f, fp) = evaluate(&ghz, &ghz_optimal_settings()).unwrap();
        assert!((f - 4.0).abs() < 1e-12, "F3 = {f}");
        assert!(fp.abs() < 1e-12, "F3' = {fp}");
    }

    #[test]
    fn f3_product_state_bound() {
        let zero = PureState::ket_basis(&[0, 0, 0]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let s = random_settings(3, &mut rng);
            let (f, fp) = evaluate(&zero, &s).unwrap();
            assert!(f.abs() <= 2.0 + 1e-9, "F3 = {f} on |000>");
            assert!(fp.abs() <= 2.0 + 1e-9);
        }
    }

    #[test]
    fn f3_collapses_when_primes_equal_unprimed() {
        // With v' = v the polynomial is 2·(A B C), bounded by 2 on every state.
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for seed in 0..50 {
            let state = PureState::random(3, seed).unwrap();
            let dirs: Vec<Direction> = (0..3).map(|_| random_direction(&mut rng)).collect();
            let settings =
                BellSettings::new(dirs.iter().map(|d| (*d, *d)).collect()).unwrap();
            let (f, _) = evaluate(&state, &settings).unwrap();
            assert!(f.abs() <= 2.0 + 1e-9, "collapsed F3 = {f}");
        }
    }

    #[test]
    fn f4_collapses_when_d_equals_d_prime() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let mut settings = random_settings(4, &mut rng);
        let d = settings.pairs()[3].0;
        settings.pairs[3] = (d, d);
        let f4 = build_f4(&settings).unwrap();
        let leading = leading_settings(&settings);
        let expected = build_f3(&leading).unwrap().kron(&spin_observable(&d));
        let dev = (f4.matrix() - expected.matrix()).camax();
        assert!(dev < 1e-12, "F4 != F3 ⊗ D, deviation {dev}");
    }

    #[test]
    fn f4_product_state_bound() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for seed in 0..40 {
            let state = PureState::random_product(4, seed).unwrap();
            for _ in 0..20 {
                let settings = random_settings(4, &mut rng);
                let (f, fp) = evaluate(&state, &settings).unwrap();
                assert!(f.abs() <= 2.0 + 1e-9, "F4 = {f} on product state");
                assert!(fp.abs() <= 2.0 + 1e-9);
                assert!(f * f + fp * fp <= 8.0 + 1e-9);
            }
        }
    }

    #[test]
    fn built_operators_are_hermitian() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let s3 = random_settings(3, &mut rng);
            for op in [build_f3(&s3).unwrap(), build_f3_prime(&s3).unwrap()] {
                let dev = (op.matrix() - op.matrix().adjoint()).camax();
                assert!(dev < 1e-12);
            }
            let s4 = random_settings(4, &mut rng);
            for op in [build_f4(&s4).unwrap(), build_f4_prime(&s4).unwrap()] {
                let dev = (op.matrix() - op.matrix().adjoint()).camax();
                assert!(dev < 1e-12);
            }
        }
    }

    #[test]
    fn mk_recursion_consistency() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for seed in 0..20 {
            let state = PureState::random(4, seed).unwrap();
            let settings = random_settings(4, &mut rng);
            let f4 = state.expectation(&build_f4(&settings).unwrap()).unwrap();

            let leading = leading_settings(&settings);
            let f3 = build_f3(&leading).unwrap();
            let f3p = build_f3_prime(&leading).unwrap();
            let (d, dp) = &settings.pairs()[3];
            let d = spin_observable(d);
            let dp = spin_observable(dp);
            let term = |f: &Observable, dd: &Observable| -> f64 {
                state.expectation(&f.kron(dd)).unwrap()
            };
            let reassembled = 0.5
                * (term(&f3, &d) + term(&f3, &dp) + term(&f3p, &d) - term(&f3p, &dp));
            assert!(
                (f4 - reassembled).abs() < 1e-10,
                "seed {seed}: {f4} vs term-by-term {reassembled}"
            );
        }
    }

    #[test]
    fn prime_swap_rotates_the_pair() {
        // Substituting (c, c') -> (c', -c) in the definitions sends
        // (F3, F3') to (F3', -F3).
        let mut rng = ChaCha8Rng::seed_from_u64(53);
        for seed in 0..20 {
            let state = PureState::random(3, seed).unwrap();
            let settings = random_settings(3, &mut rng);
            let (f, fp) = evaluate(&state, &settings).unwrap();
            let mut swapped = settings.clone();
            let (c, cpr) = swapped.pairs[2];
            swapped.pairs[2] = (cpr, -c);
            let (fs, fps) = evaluate(&state, &swapped).unwrap();
            assert!((fs - fp).abs() < 1e-10, "seed {seed}: {fs} vs {fp}");
            assert!((fps + f).abs() < 1e-10, "seed {seed}: {fps} vs {}", -f);
        }
    }

    #[test]
    fn negate_last_pair_flips_both_values() {
        let mut rng = ChaCha8Rng::seed_from_u64(59);
        for (n, seed) in [(3usize, 7u64), (4, 8)] {
            let state = PureState::random(n, seed).unwrap();
            let settings = random_settings(n, &mut rng);
            let (f, fp) = evaluate(&state, &settings).unwrap();
            let (nf, nfp) = evaluate(&state, &settings.negate_last_pair()).unwrap();
            assert!((f + nf).abs() < 1e-10);
            assert!((fp + nfp).abs() < 1e-10);
        }
    }

    #[test]
    fn classify_ladder() {
        assert_eq!(
            classify(16.0, 3).unwrap(),
            EntanglementClass::ThreeQubitCompatible
        );
        assert_eq!(
            classify(9.305, 3).unwrap(),
            EntanglementClass::ThreeQubitCompatible
        );
        assert_eq!(
            classify(7.9, 4).unwrap(),
            EntanglementClass::TwoQubitCompatible
        );
        assert_eq!(
            classify(8.0, 3).unwrap(),
            EntanglementClass::TwoQubitCompatible
        );
        assert_eq!(
            classify(31.9, 4).unwrap(),
            EntanglementClass::FourQubitCompatible
        );
        assert_eq!(classify(16.5, 3).unwrap(), EntanglementClass::BeyondBound);
        assert!(classify(-0.1, 3).is_err());
        assert!(classify(1.0, 5).is_err());
    }

    #[test]
    fn correlation_tensor_matches_dense_route() {
        let mut rng = ChaCha8Rng::seed_from_u64(61);
        for n in [3usize, 4] {
            for seed in 0..25 {
                let state = PureState::random(n, seed).unwrap();
                let corr = Correlations::new(&state).unwrap();
                for _ in 0..8 {
                    let settings = random_settings(n, &mut rng);
                    let (f_dense, fp_dense) = evaluate(&state, &settings).unwrap();
                    let (f_fast, fp_fast) = corr.f_pair(&settings).unwrap();
                    assert!(
                        (f_dense - f_fast).abs() < 1e-10,
                        "n={n} seed={seed}: {f_dense} vs {f_fast}"
                    );
                    assert!((fp_dense - fp_fast).abs() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn settings_angle_roundtrip() {
        let mut rng = ChaCha8Rng::seed_from_u64(67);
        for n in [3usize, 4] {
            let settings = random_settings(n, &mut rng);
            let angles = settings.to_angles();
            assert_eq!(angles.len(), 4 * n);
            let back = BellSettings::from_angles(&angles).unwrap();
            for (orig, rt) in settings.pairs().iter().zip(back.pairs()) {
                for (a, b) in [(orig.0, rt.0), (orig.1, rt.1)] {
                    let d = a.as_array();
                    let e = b.as_array();
                    for k in 0..3 {
                        assert!((d[k] - e[k]).abs() < 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn arity_errors() {
        let mut rng = ChaCha8Rng::seed_from_u64(71);
        let s3 = random_settings(3, &mut rng);
        assert!(build_f4(&s3).is_err());
        let s4 = random_settings(4, &mut rng);
        assert!(build_f3(&s4).is_err());
        assert!(BellSettings::new(vec![]).is_err());
    }
}
