//! Centralized numeric tolerances.
//!
//! Every threshold used for validation or clamping lives here; modules must not
//! introduce ad-hoc magic tolerances.

/// State vectors are normalized to unit norm within this bound.
pub const NORM_TOL: f64 = 1e-12;

/// Observables must be Hermitian entrywise within this bound.
pub const OBSERVABLE_HERM_TOL: f64 = 1e-12;

/// Density matrices must be Hermitian entrywise within this bound.
pub const DENSITY_HERM_TOL: f64 = 1e-10;

/// Density-matrix traces must equal 1 within this bound.
pub const DENSITY_TRACE_TOL: f64 = 1e-10;

/// Density-matrix eigenvalues may undershoot 0 by at most this much.
pub const DENSITY_EIG_TOL: f64 = 1e-10;

/// Imaginary residue allowed on the expectation value of a Hermitian observable.
pub const IMAG_RESIDUE_TOL: f64 = 1e-10;

/// Measurement directions may deviate from unit norm by at most this much
/// before being rejected; accepted vectors are renormalized exactly.
pub const DIRECTION_NORM_TOL: f64 = 1e-8;

/// The 3-tangle residual is clamped to 0 when within this much below 0;
/// larger negative residuals are treated as a numeric-consistency failure.
pub const TANGLE_CLAMP: f64 = 1e-8;

/// Agreement required between independent routes to the same measure
/// (residual vs. hyperdeterminant tangle, closed form vs. numeric pipeline).
pub const MEASURE_IDENTITY_TOL: f64 = 1e-8;

/// Residual allowed on analytic eigenpairs, `‖Hψ − Eψ‖`.
pub const EIGENPAIR_RESIDUAL_TOL: f64 = 1e-8;

/// Slack added to the analytic Bell-operator bounds when checking that
/// numeric optima never exceed them.
pub const BELL_BOUND_SLACK: f64 = 1e-6;

/// Offset above a crossing threshold that counts as a strict violation when
/// bisecting for a transition point (guards against curves that sit exactly
/// on the threshold over a whole parameter range).
pub const CROSSING_EPS: f64 = 1e-4;

/// Two restart optima within this distance count as the same optimum.
pub const OPTIMUM_CLUSTER_TOL: f64 = 1e-6;
