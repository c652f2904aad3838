//! Pure states, density matrices and observables for up to 6 qubits.
//!
//! Basis convention: qubit 1 is the most significant bit of the basis label,
//! so `|011⟩` (qubit1=0, qubit2=1, qubit3=1) sits at amplitude index 3.
//! Qubit labels are 1-based throughout the crate.

use nalgebra::{Complex, DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::tolerances as tol;

/// Complex double-precision scalar.
pub type C64 = Complex<f64>;
/// Dense complex matrix.
pub type CMatrix = DMatrix<C64>;
/// Dense complex vector.
pub type CVector = DVector<C64>;

/// Largest supported qubit count.
pub const MAX_QUBITS: usize = 6;

/// Normalized pure state of `n` qubits, amplitudes in the computational basis.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    n_qubits: usize,
    amplitudes: CVector,
}

impl PureState {
    /// Build a state from raw amplitudes, normalizing them.
    ///
    /// Fails if the count is not `2^n` for `n` in `[1, 6]` or the vector is
    /// numerically zero.
    pub fn from_amplitudes(amplitudes: Vec<C64>) -> Result<Self> {
        let len = amplitudes.len();
        let n_qubits = (len as f64).log2().round() as usize;
        if len < 2 || n_qubits > MAX_QUBITS || (1usize << n_qubits) != len {
            return Err(Error::Size(format!(
                "amplitude vector length {len} is not 2^n for n in [1, {MAX_QUBITS}]"
            )));
        }
        let mut v = CVector::from_vec(amplitudes);
        let norm = v.norm();
        if norm < tol::NORM_TOL {
            return Err(Error::DegenerateSuperposition { norm });
        }
        v /= C64::new(norm, 0.0);
        Ok(Self {
            n_qubits,
            amplitudes: v,
        })
    }

    /// Computational basis state `|b₁b₂…bₙ⟩` with qubit 1 as the leading bit.
    pub fn ket_basis(bits: &[u8]) -> Result<Self> {
        if bits.is_empty() || bits.len() > MAX_QUBITS {
            return Err(Error::Size(format!(
                "bit list of length {} (need 1..={MAX_QUBITS})",
                bits.len()
            )));
        }
        let mut index = 0usize;
        for &b in bits {
            if b > 1 {
                return Err(Error::Argument(format!("bit value {b} is not 0 or 1")));
            }
            index = (index << 1) | b as usize;
        }
        let n_qubits = bits.len();
        let mut amplitudes = CVector::zeros(1 << n_qubits);
        amplitudes[index] = C64::new(1.0, 0.0);
        Ok(Self {
            n_qubits,
            amplitudes,
        })
    }

    /// Normalized linear combination `Σ cᵢ |ψᵢ⟩`.
    pub fn superpose(terms: &[(C64, &PureState)]) -> Result<Self> {
        let (_, first) = terms
            .first()
            .ok_or_else(|| Error::Size("superposition of zero terms".into()))?;
        let n_qubits = first.n_qubits;
        let mut v = CVector::zeros(first.dim());
        for (coeff, state) in terms {
            if state.n_qubits != n_qubits {
                return Err(Error::Size(format!(
                    "superposition mixes {n_qubits}-qubit and {}-qubit states",
                    state.n_qubits
                )));
            }
            v += &state.amplitudes * *coeff;
        }
        let norm = v.norm();
        if norm < tol::NORM_TOL {
            return Err(Error::DegenerateSuperposition { norm });
        }
        v /= C64::new(norm, 0.0);
        Ok(Self {
            n_qubits,
            amplitudes: v,
        })
    }

    /// `(|0…0⟩ + |1…1⟩)/√2` on `n` qubits.
    pub fn ghz(n: usize) -> Result<Self> {
        let zeros = Self::ket_basis(&vec![0; n])?;
        let ones = Self::ket_basis(&vec![1; n])?;
        Self::superpose(&[(C64::new(1.0, 0.0), &zeros), (C64::new(1.0, 0.0), &ones)])
    }

    /// Uniform single-excitation state `(|10…0⟩ + |01…0⟩ + … + |0…01⟩)/√n`.
    pub fn w_state(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Argument("W state needs at least 2 qubits".into()));
        }
        let mut terms = Vec::with_capacity(n);
        for q in 0..n {
            let mut bits = vec![0u8; n];
            bits[q] = 1;
            terms.push(Self::ket_basis(&bits)?);
        }
        let refs: Vec<(C64, &PureState)> = terms
            .iter()
            .map(|s| (C64::new(1.0, 0.0), s))
            .collect();
        Self::superpose(&refs)
    }

    /// Tensor product `|self⟩ ⊗ |other⟩` (other's qubits become the trailing bits).
    pub fn tensor(&self, other: &PureState) -> Result<Self> {
        let n_qubits = self.n_qubits + other.n_qubits;
        if n_qubits > MAX_QUBITS {
            return Err(Error::Size(format!(
                "tensor product would have {n_qubits} qubits (max {MAX_QUBITS})"
            )));
        }
        let amplitudes = self.amplitudes.kronecker(&other.amplitudes);
        Ok(Self {
            n_qubits,
            amplitudes,
        })
    }

    /// Haar-like random state: i.i.d. complex normal amplitudes, normalized.
    /// Deterministic per seed.
    pub fn random(n: usize, seed: u64) -> Result<Self> {
        if n == 0 || n > MAX_QUBITS {
            return Err(Error::Size(format!("{n} qubits (need 1..={MAX_QUBITS})")));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let amplitudes = random_amplitudes(1 << n, &mut rng);
        Self::from_amplitudes(amplitudes)
    }

    /// Random product state: `n` independent single-qubit states tensored.
    /// Deterministic per seed.
    pub fn random_product(n: usize, seed: u64) -> Result<Self> {
        if n == 0 || n > MAX_QUBITS {
            return Err(Error::Size(format!("{n} qubits (need 1..={MAX_QUBITS})")));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut state: Option<PureState> = None;
        for _ in 0..n {
            let single = Self::from_amplitudes(random_amplitudes(2, &mut rng))?;
            state = Some(match state {
                None => single,
                Some(s) => s.tensor(&single)?,
            });
        }
        Ok(state.expect("n >= 1"))
    }

    /// Number of qubits.
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    /// Hilbert-space dimension, `2^n`.
    pub fn dim(&self) -> usize {
        1 << self.n_qubits
    }

    /// Amplitude vector, qubit 1 as most significant bit.
    pub fn amplitudes(&self) -> &CVector {
        &self.amplitudes
    }

    /// Single amplitude by basis index.
    pub fn amplitude(&self, index: usize) -> C64 {
        self.amplitudes[index]
    }

    /// `|⟨self|other⟩|`.
    pub fn overlap(&self, other: &PureState) -> Result<f64> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::Size(format!(
                "overlap between {}-qubit and {}-qubit states",
                self.n_qubits, other.n_qubits
            )));
        }
        Ok(self.amplitudes.dotc(&other.amplitudes).norm())
    }

    /// Density matrix `|ψ⟩⟨ψ|` over all qubits.
    pub fn density(&self) -> DensityMatrix {
        let entries = &self.amplitudes * self.amplitudes.adjoint();
        DensityMatrix {
            entries,
            subsystem_labels: (1..=self.n_qubits).collect(),
        }
    }

    /// Real expectation value `⟨ψ|O|ψ⟩` of a Hermitian observable.
    ///
    /// Fails on dimension mismatch or when the imaginary residue exceeds 1e-10.
    pub fn expectation(&self, op: &Observable) -> Result<f64> {
        if op.dim() != self.dim() {
            return Err(Error::Size(format!(
                "observable dim {} vs state dim {}",
                op.dim(),
                self.dim()
            )));
        }
        let applied = &op.entries * &self.amplitudes;
        let value = self.amplitudes.dotc(&applied);
        if value.im.abs() > tol::IMAG_RESIDUE_TOL {
            return Err(Error::NumericConsistency(format!(
                "expectation has imaginary residue {:.3e}",
                value.im
            )));
        }
        Ok(value.re)
    }
}

fn random_amplitudes(dim: usize, rng: &mut ChaCha8Rng) -> Vec<C64> {
    (0..dim)
        .map(|_| {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            C64::new(re, im)
        })
        .collect()
}

/// Hermitian, positive-semidefinite, trace-1 matrix over a subset of qubits.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    entries: CMatrix,
    /// Ordered qubit labels the matrix describes; first label = leading bit.
    subsystem_labels: Vec<usize>,
}

impl DensityMatrix {
    /// Validate and wrap an explicit matrix.
    ///
    /// Checks Hermiticity (1e-10), unit trace (1e-10), eigenvalues ≥ -1e-10
    /// and that `dim = 2^(number of labels)`.
    pub fn new(entries: CMatrix, subsystem_labels: Vec<usize>) -> Result<Self> {
        let dim = entries.nrows();
        if entries.ncols() != dim || dim != 1usize << subsystem_labels.len() {
            return Err(Error::Size(format!(
                "density matrix {}x{} does not match {} qubit labels",
                entries.nrows(),
                entries.ncols(),
                subsystem_labels.len()
            )));
        }
        let herm_dev = (&entries - entries.adjoint()).camax();
        if herm_dev > tol::DENSITY_HERM_TOL {
            return Err(Error::NumericConsistency(format!(
                "density matrix deviates from Hermitian by {herm_dev:.3e}"
            )));
        }
        let trace = entries.trace();
        if (trace.re - 1.0).abs() > tol::DENSITY_TRACE_TOL
            || trace.im.abs() > tol::DENSITY_TRACE_TOL
        {
            return Err(Error::NumericConsistency(format!(
                "density matrix trace {trace} is not 1"
            )));
        }
        let min_eig = entries
            .clone()
            .symmetric_eigen()
            .eigenvalues
            .iter()
            .cloned()
            .fold(f64::INFINITY, f64::min);
        if min_eig < -tol::DENSITY_EIG_TOL {
            return Err(Error::NumericConsistency(format!(
                "density matrix has eigenvalue {min_eig:.3e} < 0"
            )));
        }
        Ok(Self {
            entries,
            subsystem_labels,
        })
    }

    /// Matrix dimension.
    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    /// Qubit labels in bit order (first = leading bit).
    pub fn subsystem_labels(&self) -> &[usize] {
        &self.subsystem_labels
    }

    /// Raw entries.
    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }

    /// `Tr(ρ²)`, real in `[1/dim, 1]` up to tolerance.
    pub fn purity(&self) -> f64 {
        // Tr(ρ²) = Σ_ij ρ_ij ρ_ji = Σ_ij |ρ_ij|² for Hermitian ρ.
        self.entries.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Reduce to the qubits in `keep` (any order; the kept qubits retain their
    /// original relative order), tracing out the rest.
    pub fn partial_trace(&self, keep: &[usize]) -> Result<DensityMatrix> {
        if keep.is_empty() {
            return Err(Error::Argument("partial trace with empty keep set".into()));
        }
        for q in keep {
            if !self.subsystem_labels.contains(q) {
                return Err(Error::Argument(format!(
                    "qubit {q} is not part of this density matrix (labels {:?})",
                    self.subsystem_labels
                )));
            }
        }
        let n = self.subsystem_labels.len();
        // Positions (0 = leading bit) of kept and traced qubits.
        let keep_pos: Vec<usize> = (0..n)
            .filter(|p| keep.contains(&self.subsystem_labels[*p]))
            .collect();
        let trace_pos: Vec<usize> = (0..n).filter(|p| !keep_pos.contains(p)).collect();
        let keep_n = keep_pos.len();
        let trace_n = trace_pos.len();
        let out_dim = 1usize << keep_n;

        // Full index from a kept sub-index and a traced sub-index.
        let compose = |kept: usize, traced: usize| -> usize {
            let mut idx = 0usize;
            for (bit, pos) in keep_pos.iter().enumerate() {
                let b = (kept >> (keep_n - 1 - bit)) & 1;
                idx |= b << (n - 1 - pos);
            }
            for (bit, pos) in trace_pos.iter().enumerate() {
                let b = (traced >> (trace_n - 1 - bit)) & 1;
                idx |= b << (n - 1 - pos);
            }
            idx
        };

        let mut reduced = CMatrix::zeros(out_dim, out_dim);
        for i in 0..out_dim {
            for j in 0..out_dim {
                let mut acc = C64::new(0.0, 0.0);
                for t in 0..(1usize << trace_n) {
                    acc += self.entries[(compose(i, t), compose(j, t))];
                }
                reduced[(i, j)] = acc;
            }
        }
        let labels: Vec<usize> = keep_pos
            .iter()
            .map(|&p| self.subsystem_labels[p])
            .collect();
        Ok(DensityMatrix {
            entries: reduced,
            subsystem_labels: labels,
        })
    }

    /// Eigenvalues (real, ascending is not guaranteed).
    pub fn eigenvalues(&self) -> Vec<f64> {
        self.entries
            .clone()
            .symmetric_eigen()
            .eigenvalues
            .iter()
            .cloned()
            .collect()
    }
}

/// Hermitian operator on a power-of-two dimensional space.
#[derive(Debug, Clone, PartialEq)]
pub struct Observable {
    entries: CMatrix,
}

impl Observable {
    /// Validate and wrap a Hermitian matrix (entrywise tolerance 1e-12).
    pub fn new(entries: CMatrix) -> Result<Self> {
        let dim = entries.nrows();
        if entries.ncols() != dim || dim == 0 || !dim.is_power_of_two() {
            return Err(Error::Size(format!(
                "observable must be square with power-of-two dim, got {}x{}",
                entries.nrows(),
                entries.ncols()
            )));
        }
        let herm_dev = (&entries - entries.adjoint()).camax();
        if herm_dev > tol::OBSERVABLE_HERM_TOL {
            return Err(Error::NumericConsistency(format!(
                "observable deviates from Hermitian by {herm_dev:.3e}"
            )));
        }
        Ok(Self { entries })
    }

    /// Identity on a `dim`-dimensional space.
    pub fn identity(dim: usize) -> Self {
        Self {
            entries: CMatrix::identity(dim, dim),
        }
    }

    /// Pauli σˣ.
    pub fn pauli_x() -> Self {
        Self {
            entries: CMatrix::from_row_slice(
                2,
                2,
                &[
                    C64::new(0.0, 0.0),
                    C64::new(1.0, 0.0),
                    C64::new(1.0, 0.0),
                    C64::new(0.0, 0.0),
                ],
            ),
        }
    }

    /// Pauli σʸ = [[0, −i], [i, 0]].
    pub fn pauli_y() -> Self {
        Self {
            entries: CMatrix::from_row_slice(
                2,
                2,
                &[
                    C64::new(0.0, 0.0),
                    C64::new(0.0, -1.0),
                    C64::new(0.0, 1.0),
                    C64::new(0.0, 0.0),
                ],
            ),
        }
    }

    /// Pauli σᶻ = diag(1, −1); `|0⟩` is the +1 eigenvector.
    pub fn pauli_z() -> Self {
        Self {
            entries: CMatrix::from_row_slice(
                2,
                2,
                &[
                    C64::new(1.0, 0.0),
                    C64::new(0.0, 0.0),
                    C64::new(0.0, 0.0),
                    C64::new(-1.0, 0.0),
                ],
            ),
        }
    }

    /// The three Paulis in x, y, z order.
    pub fn paulis() -> [Self; 3] {
        [Self::pauli_x(), Self::pauli_y(), Self::pauli_z()]
    }

    /// Tensor product `self ⊗ other` (other acts on the trailing bits).
    pub fn kron(&self, other: &Observable) -> Observable {
        Observable {
            entries: self.entries.kronecker(&other.entries),
        }
    }

    /// Scale by a real factor (preserves Hermiticity).
    pub fn scale(&self, factor: f64) -> Observable {
        Observable {
            entries: &self.entries * C64::new(factor, 0.0),
        }
    }

    /// Matrix dimension.
    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    /// Raw entries.
    pub fn matrix(&self) -> &CMatrix {
        &self.entries
    }

    /// Eigenvalues of the (Hermitian) operator.
    pub fn eigenvalues(&self) -> Vec<f64> {
        self.entries
            .clone()
            .symmetric_eigen()
            .eigenvalues
            .iter()
            .cloned()
            .collect()
    }

    /// Hermitian eigendecomposition: (eigenvalues, eigenvectors as columns).
    pub fn eigensystem(&self) -> (Vec<f64>, CMatrix) {
        let se = self.entries.clone().symmetric_eigen();
        (se.eigenvalues.iter().cloned().collect(), se.eigenvectors)
    }
}

impl std::ops::Add for &Observable {
    type Output = Observable;
    fn add(self, rhs: &Observable) -> Observable {
        Observable {
            entries: &self.entries + &rhs.entries,
        }
    }
}

impl std::ops::Sub for &Observable {
    type Output = Observable;
    fn sub(self, rhs: &Observable) -> Observable {
        Observable {
            entries: &self.entries - &rhs.entries,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn ket_basis_index_convention() {
        let s = PureState::ket_basis(&[0, 0, 0]).unwrap();
        assert_eq!(s.dim(), 8);
        assert_eq!(s.amplitude(0), c(1.0, 0.0));

        let s = PureState::ket_basis(&[1, 1, 1]).unwrap();
        assert_eq!(s.amplitude(7), c(1.0, 0.0));

        // Qubit 1 is the most significant bit: |011⟩ -> index 3.
        let s = PureState::ket_basis(&[0, 1, 1]).unwrap();
        assert_eq!(s.amplitude(3), c(1.0, 0.0));
        assert_eq!(s.amplitude(6), c(0.0, 0.0));
    }

    #[test]
    fn ket_basis_rejects_bad_input() {
        assert!(matches!(
            PureState::ket_basis(&[]),
            Err(Error::Size(_))
        ));
        assert!(matches!(
            PureState::ket_basis(&[0; 7]),
            Err(Error::Size(_))
        ));
        assert!(matches!(
            PureState::ket_basis(&[0, 2]),
            Err(Error::Argument(_))
        ));
    }

    #[test]
    fn superpose_normalizes() {
        let s000 = PureState::ket_basis(&[0, 0, 0]).unwrap();
        let s111 = PureState::ket_basis(&[1, 1, 1]).unwrap();
        let ghz = PureState::superpose(&[(c(1.0, 0.0), &s000), (c(1.0, 0.0), &s111)]).unwrap();
        let inv_sqrt2 = 1.0 / 2f64.sqrt();
        assert!((ghz.amplitude(0).re - inv_sqrt2).abs() < 1e-15);
        assert!((ghz.amplitude(7).re - inv_sqrt2).abs() < 1e-15);

        // Already-normalized coefficients survive untouched.
        let g = 0.6f64;
        let s = PureState::superpose(&[
            (c(g, 0.0), &s000),
            (c((1.0 - g * g).sqrt(), 0.0), &s111),
        ])
        .unwrap();
        assert!((s.amplitude(0).re - 0.6).abs() < 1e-15);
        assert!((s.amplitude(7).re - 0.8).abs() < 1e-15);
    }

    #[test]
    fn superpose_w_state() {
        let w = PureState::w_state(3).unwrap();
        let third = 1.0 / 3f64.sqrt();
        for idx in [1, 2, 4] {
            assert!((w.amplitude(idx).re - third).abs() < 1e-15);
        }
        assert!((w.amplitudes().norm() - 1.0).abs() < tol::NORM_TOL);
    }

    #[test]
    fn superpose_errors() {
        let s2 = PureState::ket_basis(&[0, 0]).unwrap();
        let s3 = PureState::ket_basis(&[0, 0, 0]).unwrap();
        assert!(matches!(
            PureState::superpose(&[(c(1.0, 0.0), &s2), (c(1.0, 0.0), &s3)]),
            Err(Error::Size(_))
        ));
        assert!(matches!(
            PureState::superpose(&[(c(1.0, 0.0), &s2), (c(-1.0, 0.0), &s2)]),
            Err(Error::DegenerateSuperposition { .. })
        ));
    }

    #[test]
    fn density_examples() {
        let zero = PureState::ket_basis(&[0]).unwrap();
        let rho = zero.density();
        assert_eq!(rho.entries()[(0, 0)], c(1.0, 0.0));
        assert_eq!(rho.entries()[(1, 1)], c(0.0, 0.0));
        assert!((rho.purity() - 1.0).abs() < tol::NORM_TOL);

        let bell = PureState::ghz(2).unwrap();
        let rho = bell.density();
        for (i, j) in [(0, 0), (0, 3), (3, 0), (3, 3)] {
            assert!((rho.entries()[(i, j)].re - 0.5).abs() < 1e-15);
        }

        let w = PureState::w_state(3).unwrap();
        let rho = w.density();
        assert!((rho.entries().trace().re - 1.0).abs() < 1e-14);
        assert!((rho.purity() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn partial_trace_bell_is_maximally_mixed() {
        let bell = PureState::ghz(2).unwrap();
        let reduced = bell.density().partial_trace(&[1]).unwrap();
        assert_eq!(reduced.dim(), 2);
        assert!((reduced.entries()[(0, 0)].re - 0.5).abs() < 1e-14);
        assert!((reduced.entries()[(1, 1)].re - 0.5).abs() < 1e-14);
        assert!(reduced.entries()[(0, 1)].norm() < 1e-14);
        assert!((reduced.purity() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn partial_trace_product_state() {
        let s = PureState::ket_basis(&[0, 1]).unwrap();
        let reduced = s.density().partial_trace(&[2]).unwrap();
        assert!((reduced.entries()[(1, 1)].re - 1.0).abs() < 1e-14);
        assert!(reduced.entries()[(0, 0)].norm() < 1e-14);
    }

    #[test]
    fn partial_trace_ghz3_single_qubit() {
        let ghz = PureState::ghz(3).unwrap();
        let reduced = ghz.density().partial_trace(&[1]).unwrap();
        assert!((reduced.entries()[(0, 0)].re - 0.5).abs() < 1e-14);
        assert!((reduced.entries()[(1, 1)].re - 0.5).abs() < 1e-14);
        assert!(reduced.entries()[(0, 1)].norm() < 1e-14);
    }

    #[test]
    fn partial_trace_errors() {
        let rho = PureState::ghz(2).unwrap().density();
        assert!(matches!(
            rho.partial_trace(&[]),
            Err(Error::Argument(_))
        ));
        assert!(matches!(
            rho.partial_trace(&[5]),
            Err(Error::Argument(_))
        ));
    }

    #[test]
    fn partial_trace_full_set_is_identity_map() {
        let s = PureState::random(3, 11).unwrap();
        let rho = s.density();
        let same = rho.partial_trace(&[1, 2, 3]).unwrap();
        let dev = (rho.entries() - same.entries()).camax();
        assert!(dev < 1e-12, "full-set partial trace changed entries by {dev}");
    }

    #[test]
    fn partial_trace_composes() {
        for seed in 0..20 {
            let s = PureState::random(3, seed).unwrap();
            let rho = s.density();
            let via_pair = rho
                .partial_trace(&[1, 2])
                .unwrap()
                .partial_trace(&[1])
                .unwrap();
            let direct = rho.partial_trace(&[1]).unwrap();
            let dev = (via_pair.entries() - direct.entries()).camax();
            assert!(dev < 1e-12);
        }
    }

    #[test]
    fn schmidt_purity_symmetry() {
        for seed in 0..50 {
            let s = PureState::random(4, seed).unwrap();
            let rho = s.density();
            let pa = rho.partial_trace(&[1, 3]).unwrap().purity();
            let pb = rho.partial_trace(&[2, 4]).unwrap().purity();
            assert!(
                (pa - pb).abs() < 1e-10,
                "purity(A)={pa} vs purity(B)={pb} at seed {seed}"
            );
        }
    }

    #[test]
    fn purity_examples() {
        let mixed = DensityMatrix::new(
            CMatrix::from_diagonal(&CVector::from_vec(vec![c(0.75, 0.0), c(0.25, 0.0)])),
            vec![1],
        )
        .unwrap();
        assert!((mixed.purity() - 0.625).abs() < 1e-15);
    }

    #[test]
    fn density_matrix_validation() {
        // Not Hermitian.
        let bad = CMatrix::from_row_slice(2, 2, &[c(0.5, 0.0), c(0.3, 0.0), c(0.0, 0.0), c(0.5, 0.0)]);
        assert!(DensityMatrix::new(bad, vec![1]).is_err());
        // Trace != 1.
        let bad = CMatrix::from_diagonal(&CVector::from_vec(vec![c(0.9, 0.0), c(0.3, 0.0)]));
        assert!(DensityMatrix::new(bad, vec![1]).is_err());
        // Negative eigenvalue.
        let bad = CMatrix::from_diagonal(&CVector::from_vec(vec![c(1.2, 0.0), c(-0.2, 0.0)]));
        assert!(DensityMatrix::new(bad, vec![1]).is_err());
    }

    #[test]
    fn expectation_paulis() {
        let zero = PureState::ket_basis(&[0]).unwrap();
        let one = PureState::ket_basis(&[1]).unwrap();
        let z = Observable::pauli_z();
        assert!((zero.expectation(&z).unwrap() - 1.0).abs() < 1e-15);
        assert!((one.expectation(&z).unwrap() + 1.0).abs() < 1e-15);

        let ghz = PureState::ghz(3).unwrap();
        let x = Observable::pauli_x();
        let xxx = x.kron(&x).kron(&x);
        assert!((ghz.expectation(&xxx).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn expectation_dimension_mismatch() {
        let s = PureState::ket_basis(&[0, 0]).unwrap();
        assert!(matches!(
            s.expectation(&Observable::pauli_z()),
            Err(Error::Size(_))
        ));
    }

    #[test]
    fn random_states_are_normalized_and_deterministic() {
        for seed in [0u64, 1, 42, 2u64.pow(40)] {
            let a = PureState::random(3, seed).unwrap();
            let b = PureState::random(3, seed).unwrap();
            assert!((a.amplitudes().norm() - 1.0).abs() < tol::NORM_TOL);
            assert_eq!(a.amplitudes(), b.amplitudes(), "seed {seed} not reproducible");
        }
    }

    #[test]
    fn random_product_state_has_pure_marginals() {
        for seed in 0..20 {
            let s = PureState::random_product(3, seed).unwrap();
            let rho = s.density();
            for q in 1..=3 {
                let purity = rho.partial_trace(&[q]).unwrap().purity();
                assert!(
                    (purity - 1.0).abs() < 1e-10,
                    "marginal {q} purity {purity} at seed {seed}"
                );
            }
        }
    }

    #[test]
    fn observable_rejects_non_hermitian() {
        let m = CMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(0.5, 0.0), c(0.0, 0.0)]);
        assert!(Observable::new(m).is_err());
    }
}
