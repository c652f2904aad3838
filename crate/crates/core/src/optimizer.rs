//! Multistart maximization of Bell-operator expectations.
//!
//! Directions are parameterized by spherical angles (θ, φ) per vector — 12
//! free angles for 3 qubits, 16 for 4 — so the unit-norm constraints vanish
//! and each restart is an unconstrained derivative-free simplex descent.
//! Restarts draw their starting directions uniformly from the sphere, are
//! independent (and run in parallel), and merge by objective value with the
//! lowest restart index winning ties, so parallel and serial runs agree.
//!
//! Two objectives are supported:
//!
//! - mode A: maximize `|⟨F_n⟩|`, then report `⟨F'_n⟩` at the optimum;
//! - mode B: maximize `⟨F_n⟩² + ⟨F'_n⟩²` directly.
//!
//! Returned settings are sign-normalized (last qubit pair flipped if needed)
//! so that `⟨F_n⟩` at `outcome.settings` is non-negative and reproduces
//! `outcome.value_f` exactly.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bell::{classify, evaluate, BellOutcome, BellSettings, Correlations, Direction};
use crate::error::{Error, Result};
use crate::state::PureState;
use crate::tolerances as tol;

/// Objective selection for [`optimize`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OptMode {
    /// Maximize `|⟨F_n⟩|`; `F'_n` is evaluated at the found optimum.
    MaximizeF,
    /// Maximize `⟨F_n⟩² + ⟨F'_n⟩²`.
    MaximizeSumSq,
}

/// Multistart optimizer configuration.
#[derive(Debug, Clone)]
pub struct OptimizerConfig {
    pub mode: OptMode,
    /// Independent random restarts (default 64).
    pub restarts: usize,
    /// Convergence tolerance on the objective change (default 1e-9).
    pub local_tol: f64,
    /// Iteration cap per local search (default 2000).
    pub max_iters: usize,
    /// Seed for the restart streams; identical seeds give identical outcomes.
    pub seed: u64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            mode: OptMode::MaximizeF,
            restarts: 64,
            local_tol: 1e-9,
            max_iters: 2000,
            seed: 42,
        }
    }
}

impl OptimizerConfig {
    pub fn validate(&self) -> Result<()> {
        if self.restarts == 0 {
            return Err(Error::Argument("optimizer needs at least 1 restart".into()));
        }
        if self.local_tol <= 0.0 {
            return Err(Error::Argument("local_tol must be positive".into()));
        }
        Ok(())
    }

    pub fn with_mode(mut self, mode: OptMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_restarts(mut self, restarts: usize) -> Self {
        self.restarts = restarts;
        self
    }
}

/// Draw a direction uniformly from the unit sphere (uniform cosθ and φ).
pub fn sample_direction(rng: &mut impl Rng) -> Direction {
    let cos_theta: f64 = rng.gen_range(-1.0..=1.0);
    let phi: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    Direction::from_angles(cos_theta.acos(), phi)
}

/// Which optimized quantity a transition search monitors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransitionQuantity {
    /// `⟨F⟩² + ⟨F'⟩²` from the configured optimization mode.
    SumSq,
    /// `max|⟨F_n⟩|` (mode-A objective value).
    MaxAbsF,
}

/// Threshold crossing search along a one-parameter family of states.
pub struct TransitionQuery<'a> {
    /// The model state at a given parameter value.
    pub state_at: Box<dyn Fn(f64) -> Result<PureState> + Sync + 'a>,
    /// Bracket `[lo, hi]`, `lo < hi`.
    pub lo: f64,
    pub hi: f64,
    /// Crossing threshold (8.0 marks the 2-qubit / 3-qubit boundary).
    pub threshold: f64,
    /// Width of the final bracket on the parameter (default 0.01).
    pub refine_tol: f64,
    /// Monitored quantity (default the squared sum).
    pub quantity: TransitionQuantity,
}

impl<'a> TransitionQuery<'a> {
    pub fn new(state_at: impl Fn(f64) -> Result<PureState> + Sync + 'a, lo: f64, hi: f64) -> Self {
        Self {
            state_at: Box::new(state_at),
            lo,
            hi,
            threshold: 8.0,
            refine_tol: 0.01,
            quantity: TransitionQuantity::SumSq,
        }
    }

    pub fn with_threshold(mut self, threshold: f64) -> Self {
        self.threshold = threshold;
        self
    }

    pub fn with_refine_tol(mut self, refine_tol: f64) -> Self {
        self.refine_tol = refine_tol;
        self
    }

    pub fn with_quantity(mut self, quantity: TransitionQuantity) -> Self {
        self.quantity = quantity;
        self
    }
}

/// Maximize the configured Bell objective over all measurement directions.
pub fn optimize(state: &PureState, cfg: &OptimizerConfig) -> Result<BellOutcome> {
    optimize_inner(state, cfg, &[], AngleLayout::Free)
}

/// [`optimize`] with extra deterministic starting points (e.g. the optimum of
/// a neighboring sweep point). Warm starts are searched first and compete with
/// the fresh restarts on equal terms.
pub fn optimize_warm(
    state: &PureState,
    cfg: &OptimizerConfig,
    warm_starts: &[BellSettings],
) -> Result<BellOutcome> {
    optimize_inner(state, cfg, warm_starts, AngleLayout::Free)
}

/// [`optimize`] with every direction clamped to the x-y plane (z = 0); used
/// to probe whether an optimum with vanishing σᶻ components exists.
pub fn optimize_equatorial(state: &PureState, cfg: &OptimizerConfig) -> Result<BellOutcome> {
    optimize_inner(state, cfg, &[], AngleLayout::Equatorial)
}

/// Free layout: `(θ, φ)` per direction. Equatorial layout: `φ` per direction
/// with `θ = π/2` pinned.
#[derive(Clone, Copy, PartialEq, Eq)]
enum AngleLayout {
    Free,
    Equatorial,
}

impl AngleLayout {
    fn settings(&self, angles: &[f64]) -> Result<BellSettings> {
        match self {
            AngleLayout::Free => BellSettings::from_angles(angles),
            AngleLayout::Equatorial => {
                let pairs = angles
                    .chunks_exact(2)
                    .map(|c| {
                        (
                            Direction::from_angles(std::f64::consts::FRAC_PI_2, c[0]),
                            Direction::from_angles(std::f64::consts::FRAC_PI_2, c[1]),
                        )
                    })
                    .collect();
                BellSettings::new(pairs)
            }
        }
    }

    fn start_from_settings(&self, settings: &BellSettings) -> Vec<f64> {
        match self {
            AngleLayout::Free => settings.to_angles(),
            AngleLayout::Equatorial => settings
                .pairs()
                .iter()
                .flat_map(|(v, vp)| [v.to_angles().1, vp.to_angles().1])
                .collect(),
        }
    }

    fn random_start(&self, n_qubits: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
        match self {
            AngleLayout::Free => (0..2 * n_qubits)
                .flat_map(|_| {
                    let (t, p) = sample_direction(rng).to_angles();
                    [t, p]
                })
                .collect(),
            AngleLayout::Equatorial => (0..2 * n_qubits)
                .map(|_| rng.gen_range(0.0..std::f64::consts::TAU))
                .collect(),
        }
    }
}

fn optimize_inner(
    state: &PureState,
    cfg: &OptimizerConfig,
    warm_starts: &[BellSettings],
    layout: AngleLayout,
) -> Result<BellOutcome> {
    cfg.validate()?;
    let n = state.n_qubits();
    if n != 3 && n != 4 {
        return Err(Error::Argument(format!(
            "Bell optimization is defined for 3 or 4 qubits, got {n}"
        )));
    }
    for w in warm_starts {
        if w.n_qubits() != n {
            return Err(Error::Size(format!(
                "warm start for {} qubits on a {n}-qubit state",
                w.n_qubits()
            )));
        }
    }
    let corr = Correlations::new(state)?;

    // Candidate list: warm starts first, then seeded fresh restarts. Each
    // candidate is (index, initial angle vector); the fresh streams depend
    // only on the restart index, so prefixes agree across restart counts.
    let candidates: Vec<(usize, Vec<f64>)> = warm_starts
        .iter()
        .enumerate()
        .map(|(i, w)| (i, layout.start_from_settings(w)))
        .chain((0..cfg.restarts).map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(cfg.seed, i as u64));
            (warm_starts.len() + i, layout.random_start(n, &mut rng))
        }))
        .collect();

    let objective = |angles: &[f64]| -> f64 {
        let settings = layout.settings(angles).expect("angle count fixed");
        let (f, fp) = corr.f_pair(&settings).expect("arity fixed");
        match cfg.mode {
            OptMode::MaximizeF => f.abs(),
            OptMode::MaximizeSumSq => f * f + fp * fp,
        }
    };

    struct RestartResult {
        index: usize,
        initial: f64,
        best: f64,
        angles: Vec<f64>,
    }

    let results: Vec<RestartResult> = candidates
        .into_par_iter()
        .map(|(index, start)| {
            let initial = objective(&start);
            let (angles, best) = local_ascent(&objective, start, cfg);
            RestartResult {
                index,
                initial,
                best,
                angles,
            }
        })
        .collect();

    let winner = results
        .iter()
        .max_by(|a, b| {
            a.best
                .partial_cmp(&b.best)
                .unwrap()
                .then(b.index.cmp(&a.index))
        })
        .expect("at least one restart");

    // Polish the winner once more from its own optimum.
    let (angles, _) = local_ascent(&objective, winner.angles.clone(), cfg);
    let mut settings = layout.settings(&angles)?;

    // Sign normalization: flipping the last pair negates both expectations.
    let (f, _) = corr.f_pair(&settings)?;
    if f < 0.0 {
        settings = settings.negate_last_pair();
    }
    // Final values via the dense operator route, so that re-evaluating the
    // reported settings reproduces the reported values exactly.
    let (value_f, value_fprime) = evaluate(state, &settings)?;
    let sum_sq = value_f * value_f + value_fprime * value_fprime;

    let mut bests: Vec<f64> = results.iter().map(|r| r.best).collect();
    bests.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let distinct_optima = 1 + bests
        .windows(2)
        .filter(|w| (w[1] - w[0]).abs() > tol::OPTIMUM_CLUSTER_TOL)
        .count();
    let stagnant = results
        .iter()
        .all(|r| r.best <= r.initial + cfg.local_tol.max(1e-12));

    Ok(BellOutcome {
        value_f,
        value_fprime,
        sum_sq,
        classification: classify(sum_sq, n)?,
        settings,
        distinct_optima,
        stagnant,
    })
}

/// Scan-then-bisect search for the parameter where the optimized Bell
/// quantity crosses `query.threshold`.
///
/// The scan walks the bracket with warm-started re-optimization; the first
/// grid interval whose endpoints straddle the threshold is then bisected
/// (crossings nearest `lo` win when there are several).
pub fn find_transition(query: &TransitionQuery, cfg: &OptimizerConfig) -> Result<f64> {
    if !(query.lo < query.hi) {
        return Err(Error::Argument(format!(
            "bracket needs lo < hi, got [{}, {}]",
            query.lo, query.hi
        )));
    }
    if query.threshold <= 0.0 {
        return Err(Error::Argument("threshold must be positive".into()));
    }
    let eval = |param: f64, warm: &[BellSettings]| -> Result<(f64, BellSettings)> {
        let state = (query.state_at)(param)?;
        let outcome = optimize_warm(&state, cfg, warm)?;
        let value = match query.quantity {
            TransitionQuantity::SumSq => outcome.sum_sq,
            TransitionQuantity::MaxAbsF => outcome.value_f.abs(),
        };
        Ok((value, outcome.settings))
    };
    // "Above" means strictly beyond the threshold; curves that sit exactly on
    // the threshold over a range (optimizer noise aside) count as below.
    let above = |value: f64| value > query.threshold + tol::CROSSING_EPS;

    const SCAN_POINTS: usize = 13;
    let step = (query.hi - query.lo) / (SCAN_POINTS - 1) as f64;
    let mut scan: Vec<(f64, f64, BellSettings)> = Vec::with_capacity(SCAN_POINTS);
    let mut warm: Vec<BellSettings> = Vec::new();
    for k in 0..SCAN_POINTS {
        let param = query.lo + step * k as f64;
        let (value, settings) = eval(param, &warm)?;
        warm = vec![settings.clone()];
        scan.push((param, value, settings));
    }

    let lo_above = above(scan[0].1);
    let hi_above = above(scan[SCAN_POINTS - 1].1);
    if lo_above == hi_above {
        return Err(Error::Bracket(format!(
            "quantity at lo ({:.6}) and hi ({:.6}) do not straddle threshold {}",
            scan[0].1,
            scan[SCAN_POINTS - 1].1,
            query.threshold
        )));
    }

    // First scan interval with a flip; nearest to lo by construction.
    let mut bracket = None;
    for w in scan.windows(2) {
        if above(w[0].1) != above(w[1].1) {
            bracket = Some((
                (w[0].0, above(w[0].1), w[0].2.clone()),
                (w[1].0, above(w[1].1), w[1].2.clone()),
            ));
            break;
        }
    }
    let ((mut a, a_above, mut a_settings), (mut b, _, mut b_settings)) =
        bracket.expect("straddle checked above");

    while b - a > query.refine_tol {
        let mid = 0.5 * (a + b);
        let (value, settings) = eval(mid, &[a_settings.clone(), b_settings.clone()])?;
        if above(value) == a_above {
            a = mid;
            a_settings = settings;
        } else {
            b = mid;
            b_settings = settings;
        }
    }
    Ok(0.5 * (a + b))
}

/// Nelder-Mead ascent (internally descent on the negated objective) followed
/// by a tightened re-run from the found vertex.
fn local_ascent<F: Fn(&[f64]) -> f64>(
    objective: &F,
    start: Vec<f64>,
    cfg: &OptimizerConfig,
) -> (Vec<f64>, f64) {
    let neg = |x: &[f64]| -objective(x);
    let (x1, _) = nelder_mead(&neg, start, 0.35, cfg.local_tol, cfg.max_iters);
    let (x2, f2) = nelder_mead(&neg, x1, 0.03, cfg.local_tol, cfg.max_iters);
    (x2, -f2)
}

/// Minimal Nelder-Mead simplex minimizer (standard α=1, γ=2, ρ=½, σ=½).
fn nelder_mead<F: Fn(&[f64]) -> f64>(
    f: &F,
    x0: Vec<f64>,
    initial_step: f64,
    tol: f64,
    max_iters: usize,
) -> (Vec<f64>, f64) {
    let dim = x0.len();
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(dim + 1);
    let f0 = f(&x0);
    simplex.push((x0.clone(), f0));
    for i in 0..dim {
        let mut x = x0.clone();
        x[i] += initial_step;
        let fx = f(&x);
        simplex.push((x, fx));
    }

    for _ in 0..max_iters {
        simplex.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap());
        let best = simplex[0].1;
        let worst = simplex[dim].1;
        if (worst - best).abs() < tol {
            break;
        }

        // Centroid of all but the worst vertex.
        let mut centroid = vec![0.0; dim];
        for (x, _) in &simplex[..dim] {
            for (c, xi) in centroid.iter_mut().zip(x) {
                *c += xi;
            }
        }
        for c in &mut centroid {
            *c /= dim as f64;
        }

        let lerp = |t: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&simplex[dim].0)
                .map(|(c, w)| c + t * (c - w))
                .collect()
        };

        let reflected = lerp(1.0);
        let fr = f(&reflected);
        if fr < simplex[0].1 {
            let expanded = lerp(2.0);
            let fe = f(&expanded);
            simplex[dim] = if fe < fr { (expanded, fe) } else { (reflected, fr) };
        } else if fr < simplex[dim - 1].1 {
            simplex[dim] = (reflected, fr);
        } else {
            let contracted = if fr < simplex[dim].1 {
                lerp(0.5)
            } else {
                lerp(-0.5)
            };
            let fc = f(&contracted);
            if fc < simplex[dim].1.min(fr) {
                simplex[dim] = (contracted, fc);
            } else {
                // Shrink toward the best vertex.
                let best_x = simplex[0].0.clone();
                for entry in simplex.iter_mut().skip(1) {
                    let x: Vec<f64> = entry
                        .0
                        .iter()
                        .zip(&best_x)
                        .map(|(xi, bi)| bi + 0.5 * (xi - bi))
                        .collect();
                    let fx = f(&x);
                    *entry = (x, fx);
                }
            }
        }
    }
    simplex.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap());
    simplex.swap_remove(0)
}

fn mix_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
