//! Parameter sweeps, scale fits, figure tables and the state-spec
//! mini-language behind the command-line tool.
//!
//! Sweeps walk a one-parameter family of model states, computing any mix of
//! measures and Bell optimizations per grid point. Bell quantities are
//! warm-started along the grid (each point seeds the optimizer with the
//! neighbor's optimal settings next to the fresh restarts), which keeps the
//! curves free of restart noise. Output is a [`Table`] that serializes to CSV
//! (9 significant digits, LF line ends, byte-stable per seed) or JSON.

use std::collections::BTreeMap;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use crate::bell::{BellOutcome, BellSettings};
use crate::error::{Error, Result};
use crate::measures;
use crate::models::{self, ClosedFormTarget, Model3Params, Model4Params};
use crate::optimizer::{self, OptMode, OptimizerConfig, TransitionQuantity, TransitionQuery};
use crate::state::{C64, PureState};

/// One-parameter state families a sweep can walk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SweepTarget {
    /// `g|000⟩ + √(1−g²)|111⟩` over `g`.
    GenGhz,
    /// ψ₅ of the 3-qubit cluster over Δ.
    Psi5,
    /// ψ₇ of the 3-qubit cluster over Δ.
    Psi7,
    /// `(ψ₇+ψ₈)/√2` over Δ.
    Sup78,
    /// Φ₁ over J at fixed J_s.
    Phi1J { js: f64 },
    /// Φ₁ over J_s at fixed J.
    Phi1Js { j: f64 },
    /// Φ₂ over J at fixed J_s.
    Phi2J { js: f64 },
    /// Φ₂ over J_s at fixed J.
    Phi2Js { j: f64 },
}

impl SweepTarget {
    /// Sweep-parameter column name.
    pub fn param_name(&self) -> &'static str {
        match self {
            SweepTarget::GenGhz => "g",
            SweepTarget::Psi5 | SweepTarget::Psi7 | SweepTarget::Sup78 => "delta",
            SweepTarget::Phi1J { .. } | SweepTarget::Phi2J { .. } => "J",
            SweepTarget::Phi1Js { .. } | SweepTarget::Phi2Js { .. } => "Js",
        }
    }

    pub fn n_qubits(&self) -> usize {
        match self {
            SweepTarget::GenGhz
            | SweepTarget::Psi5
            | SweepTarget::Psi7
            | SweepTarget::Sup78 => 3,
            _ => 4,
        }
    }

    /// The state at one parameter value, plus a flag marking grid points
    /// where a closed form was singular and a limit value was substituted.
    pub fn state_at(&self, param: f64) -> Result<(PureState, bool)> {
        match self {
            SweepTarget::GenGhz => Ok((models::generalized_ghz(param)?, false)),
            SweepTarget::Psi5 => {
                Ok((models::psi(&Model3Params::anisotropic(param), 5)?, false))
            }
            SweepTarget::Psi7 => {
                Ok((models::psi(&Model3Params::anisotropic(param), 7)?, false))
            }
            SweepTarget::Sup78 => Ok((
                models::superposition78(&Model3Params::anisotropic(param))?,
                false,
            )),
            SweepTarget::Phi1J { js } => {
                Ok((models::phi1(&Model4Params::new(param, *js))?, false))
            }
            SweepTarget::Phi1Js { j } => {
                Ok((models::phi1(&Model4Params::new(*j, param))?, false))
            }
            SweepTarget::Phi2J { js } => {
                let singular = param.abs() < 1e-12;
                Ok((models::phi2(&Model4Params::new(param, *js))?, singular))
            }
            SweepTarget::Phi2Js { j } => {
                Ok((models::phi2(&Model4Params::new(*j, param))?, false))
            }
        }
    }
}

/// Quantities a sweep can compute per grid point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    /// Global entanglement `Q`.
    GlobalQ,
    /// Sum of squared pair concurrences.
    SumSqC,
    /// Residual 3-tangle (3-qubit targets only).
    Tangle,
    /// Mode-A Bell optimization: `max|⟨F⟩|`, `⟨F'⟩` at the optimum, their squared sum.
    BellModeA,
    /// Mode-B Bell optimization: maximized `⟨F⟩² + ⟨F'⟩²`.
    BellModeB,
    /// All pair concurrences.
    PairConcurrences,
}

impl Quantity {
    fn columns(&self, n_qubits: usize) -> Vec<String> {
        match self {
            Quantity::GlobalQ => vec!["Q".into()],
            Quantity::SumSqC => vec!["sum_sq_C".into()],
            Quantity::Tangle => vec!["tangle".into()],
            Quantity::BellModeA => vec![
                format!("max_abs_F{n_qubits}"),
                format!("F{n_qubits}prime_at_opt"),
                "sum_sq_mode_a".into(),
            ],
            Quantity::BellModeB => vec!["sum_sq_mode_b".into()],
            Quantity::PairConcurrences => {
                let mut names = Vec::new();
                for i in 1..=n_qubits {
                    for j in (i + 1)..=n_qubits {
                        names.push(format!("C_{i}{j}"));
                    }
                }
                names
            }
        }
    }
}

/// Full sweep description.
#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub target: SweepTarget,
    pub lo: f64,
    pub hi: f64,
    pub points: usize,
    pub quantities: Vec<Quantity>,
    pub optimizer: OptimizerConfig,
}

impl SweepSpec {
    fn validate(&self) -> Result<()> {
        if self.points < 2 {
            return Err(Error::Argument(format!(
                "sweep needs at least 2 grid points, got {}",
                self.points
            )));
        }
        if !(self.lo < self.hi) {
            return Err(Error::Argument(format!(
                "sweep needs lo < hi, got [{}, {}]",
                self.lo, self.hi
            )));
        }
        if self.quantities.is_empty() {
            return Err(Error::Argument("sweep with no quantities".into()));
        }
        if self.quantities.contains(&Quantity::Tangle) && self.target.n_qubits() != 3 {
            return Err(Error::Argument(
                "tangle is only defined for 3-qubit sweep targets".into(),
            ));
        }
        Ok(())
    }
}

/// A single table cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
}

impl Cell {
    fn to_csv_field(&self) -> String {
        match self {
            // 9 significant digits.
            Cell::Num(x) => format!("{x:.8e}"),
            Cell::Int(i) => format!("{i}"),
            Cell::Text(s) => s.clone(),
        }
    }

    fn to_json(&self) -> serde_json::Value {
        match self {
            Cell::Num(x) => serde_json::json!(x),
            Cell::Int(i) => serde_json::json!(i),
            Cell::Text(s) => serde_json::json!(s),
        }
    }
}

/// Column-major table of sweep results.
#[derive(Debug, Clone, Default)]
pub struct Table {
    columns: Vec<(String, Vec<Cell>)>,
}

/// Serialization format for tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl OutputFormat {
    pub fn extension(&self) -> &'static str {
        match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        }
    }
}

impl Table {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push_column(&mut self, name: impl Into<String>, cells: Vec<Cell>) {
        self.columns.push((name.into(), cells));
    }

    pub fn push_numeric_column(&mut self, name: impl Into<String>, values: Vec<f64>) {
        self.push_column(name, values.into_iter().map(Cell::Num).collect());
    }

    pub fn column_names(&self) -> Vec<&str> {
        self.columns.iter().map(|(n, _)| n.as_str()).collect()
    }

    pub fn n_rows(&self) -> usize {
        self.columns.first().map_or(0, |(_, c)| c.len())
    }

    /// Numeric values of a column; `None` if missing or non-numeric.
    pub fn numeric_column(&self, name: &str) -> Option<Vec<f64>> {
        let (_, cells) = self.columns.iter().find(|(n, _)| n == name)?;
        cells
            .iter()
            .map(|c| match c {
                Cell::Num(x) => Some(*x),
                Cell::Int(i) => Some(*i as f64),
                Cell::Text(_) => None,
            })
            .collect()
    }

    /// New table with the named columns, in the given order.
    pub fn select(&self, names: &[&str]) -> Result<Table> {
        let mut out = Table::new();
        for name in names {
            let col = self
                .columns
                .iter()
                .find(|(n, _)| n == name)
                .ok_or_else(|| Error::Argument(format!("no column named {name}")))?;
            out.columns.push(col.clone());
        }
        Ok(out)
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        s.push_str(&self.column_names().join(","));
        s.push('\n');
        for row in 0..self.n_rows() {
            let fields: Vec<String> = self
                .columns
                .iter()
                .map(|(_, cells)| cells[row].to_csv_field())
                .collect();
            s.push_str(&fields.join(","));
            s.push('\n');
        }
        s
    }

    pub fn to_json(&self) -> String {
        let columns: Vec<&str> = self.column_names();
        let rows: Vec<serde_json::Value> = (0..self.n_rows())
            .map(|row| {
                serde_json::Value::Array(
                    self.columns
                        .iter()
                        .map(|(_, cells)| cells[row].to_json())
                        .collect(),
                )
            })
            .collect();
        let value = serde_json::json!({ "columns": columns, "rows": rows });
        // Trailing newline keeps repeated CLI runs byte-comparable with text tools.
        format!("{value:#}\n")
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Csv => self.to_csv(),
            OutputFormat::Json => self.to_json(),
        }
    }

    pub fn write(&self, path: &Path, format: OutputFormat) -> Result<()> {
        let mut file = std::fs::File::create(path).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })?;
        file.write_all(self.render(format).as_bytes())
            .map_err(|source| Error::Io {
                path: path.display().to_string(),
                source,
            })
    }

    /// Parse a CSV produced by [`Table::to_csv`] (numbers where possible).
    pub fn from_csv_str(content: &str) -> Result<Table> {
        let mut lines = content.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::Argument("empty CSV input".into()))?;
        let names: Vec<String> = header.split(',').map(|s| s.trim().to_string()).collect();
        let mut columns: Vec<(String, Vec<Cell>)> =
            names.into_iter().map(|n| (n, Vec::new())).collect();
        for line in lines {
            if line.trim().is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != columns.len() {
                return Err(Error::Argument(format!(
                    "CSV row has {} fields, header has {}",
                    fields.len(),
                    columns.len()
                )));
            }
            for (col, field) in columns.iter_mut().zip(fields) {
                let cell = match field.trim().parse::<f64>() {
                    Ok(x) => Cell::Num(x),
                    Err(_) => Cell::Text(field.trim().to_string()),
                };
                col.1.push(cell);
            }
        }
        Ok(Table { columns })
    }
}

/// Run a sweep; one row per grid point, Bell quantities warm-started in
/// grid order. Deterministic for a fixed (spec, seed).
pub fn run_sweep(spec: &SweepSpec) -> Result<Table> {
    spec.validate()?;
    let n = spec.target.n_qubits();
    let mut column_names: Vec<String> = vec![spec.target.param_name().to_string()];
    if matches!(spec.target, SweepTarget::GenGhz) {
        column_names.push("g_squared".into());
    }
    for q in &spec.quantities {
        column_names.extend(q.columns(n));
    }
    column_names.push("flag".into());

    let mut columns: Vec<(String, Vec<Cell>)> = column_names
        .into_iter()
        .map(|n| (n, Vec::with_capacity(spec.points)))
        .collect();

    let mut warm_a: Option<BellSettings> = None;
    let mut warm_b: Option<BellSettings> = None;
    let step = (spec.hi - spec.lo) / (spec.points - 1) as f64;
    for idx in 0..spec.points {
        let param = spec.lo + step * idx as f64;
        let (state, singular_flag) = spec.target.state_at(param)?;
        let mut cells: Vec<Cell> = vec![Cell::Num(param)];
        if matches!(spec.target, SweepTarget::GenGhz) {
            cells.push(Cell::Num(param * param));
        }
        for q in &spec.quantities {
            match q {
                Quantity::GlobalQ => {
                    cells.push(Cell::Num(measures::global_entanglement(&state)?));
                }
                Quantity::SumSqC => {
                    cells.push(Cell::Num(measures::sum_sq_concurrences(&state)?));
                }
                Quantity::Tangle => {
                    cells.push(Cell::Num(measures::tangle3_residual(&state)?));
                }
                Quantity::BellModeA => {
                    let cfg = spec.optimizer.clone().with_mode(OptMode::MaximizeF);
                    let warm: Vec<BellSettings> = warm_a.iter().cloned().collect();
                    let outcome = optimizer::optimize_warm(&state, &cfg, &warm)?;
                    cells.push(Cell::Num(outcome.value_f));
                    cells.push(Cell::Num(outcome.value_fprime));
                    cells.push(Cell::Num(outcome.sum_sq));
                    warm_a = Some(outcome.settings);
                }
                Quantity::BellModeB => {
                    let cfg = spec.optimizer.clone().with_mode(OptMode::MaximizeSumSq);
                    let warm: Vec<BellSettings> = warm_b.iter().cloned().collect();
                    let outcome = optimizer::optimize_warm(&state, &cfg, &warm)?;
                    cells.push(Cell::Num(outcome.sum_sq));
                    warm_b = Some(outcome.settings);
                }
                Quantity::PairConcurrences => {
                    for i in 1..=n {
                        for j in (i + 1)..=n {
                            cells.push(Cell::Num(measures::concurrence_pair(&state, i, j)?));
                        }
                    }
                }
            }
        }
        cells.push(Cell::Int(i64::from(singular_flag)));
        for (col, cell) in columns.iter_mut().zip(cells) {
            col.1.push(cell);
        }
    }
    Ok(Table { columns })
}

/// Fit models for [`fit_scale`]: a single scale on a fixed shape in `g`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FitModel {
    /// `y = c · g√(1−g²)`.
    GSqrt,
    /// `y = c · g²(1−g²)`.
    GSquared,
}

impl FitModel {
    pub fn basis(&self, g: f64) -> f64 {
        match self {
            FitModel::GSqrt => g * (1.0 - g * g).max(0.0).sqrt(),
            FitModel::GSquared => g * g * (1.0 - g * g),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            FitModel::GSqrt => "c*g*sqrt(1-g^2)",
            FitModel::GSquared => "c*g^2*(1-g^2)",
        }
    }
}

/// Result of a one-parameter least-squares scale fit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitResult {
    pub scale: f64,
    pub residual_rms: f64,
    pub model: FitModel,
}

/// Closed-form least squares for the single scale: `c = Σ y·f / Σ f²`.
pub fn fit_scale(x: &[f64], y: &[f64], model: FitModel) -> Result<FitResult> {
    if x.len() != y.len() {
        return Err(Error::Size(format!(
            "fit needs equally long columns, got {} and {}",
            x.len(),
            y.len()
        )));
    }
    if x.len() < 3 {
        return Err(Error::Argument(format!(
            "fit needs at least 3 points, got {}",
            x.len()
        )));
    }
    let basis: Vec<f64> = x.iter().map(|&g| model.basis(g)).collect();
    let denom: f64 = basis.iter().map(|f| f * f).sum();
    if denom < 1e-12 {
        return Err(Error::Fit(
            "fit basis is (numerically) identically zero on the grid".into(),
        ));
    }
    let numer: f64 = basis.iter().zip(y).map(|(f, yi)| f * yi).sum();
    let scale = numer / denom;
    let ss: f64 = basis
        .iter()
        .zip(y)
        .map(|(f, yi)| {
            let r = yi - scale * f;
            r * r
        })
        .sum();
    Ok(FitResult {
        scale,
        residual_rms: (ss / x.len() as f64).sqrt(),
        model,
    })
}

/// Pearson correlation coefficient of two equally long samples.
pub fn pearson(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() || x.len() < 2 {
        return Err(Error::Size(format!(
            "correlation needs two equally long samples of >= 2 points, got {} and {}",
            x.len(),
            y.len()
        )));
    }
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    for (xi, yi) in x.iter().zip(y) {
        sxy += (xi - mx) * (yi - my);
        sxx += (xi - mx) * (xi - mx);
        syy += (yi - my) * (yi - my);
    }
    if sxx < 1e-300 || syy < 1e-300 {
        return Err(Error::NumericConsistency(
            "correlation of a constant sample".into(),
        ));
    }
    Ok(sxy / (sxx * syy).sqrt())
}

/// The figure/table data sets the CLI can regenerate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FigureName {
    Fig1,
    Fig2,
    Fig3,
    Fig4,
    Fig5,
    Table3,
}

impl FigureName {
    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "fig1" => Ok(FigureName::Fig1),
            "fig2" => Ok(FigureName::Fig2),
            "fig3" => Ok(FigureName::Fig3),
            "fig4" => Ok(FigureName::Fig4),
            "fig5" => Ok(FigureName::Fig5),
            "table3" => Ok(FigureName::Table3),
            other => Err(Error::Argument(format!(
                "unknown figure '{other}' (expected fig1..fig5 or table3)"
            ))),
        }
    }

    /// Default grid density (points per axis).
    pub fn default_points(&self) -> usize {
        match self {
            FigureName::Fig1 => 101,
            FigureName::Fig2 | FigureName::Fig3 => 61,
            FigureName::Fig4 | FigureName::Fig5 => 41,
            FigureName::Table3 => 2,
        }
    }
}

/// Compute the tables behind one figure. Returns `(file stem, table)` pairs.
pub fn figure_tables(
    name: FigureName,
    cfg: &OptimizerConfig,
    points: usize,
) -> Result<Vec<(String, Table)>> {
    match name {
        FigureName::Fig1 => {
            let spec = SweepSpec {
                target: SweepTarget::GenGhz,
                lo: 0.0,
                hi: 1.0,
                points,
                quantities: vec![Quantity::BellModeA, Quantity::BellModeB],
                optimizer: cfg.clone(),
            };
            let table = run_sweep(&spec)?.select(&[
                "g",
                "g_squared",
                "max_abs_F3",
                "F3prime_at_opt",
                "sum_sq_mode_a",
                "sum_sq_mode_b",
            ])?;
            Ok(vec![("fig1".into(), table)])
        }
        FigureName::Fig2 => {
            let base = |target| SweepSpec {
                target,
                lo: 0.0,
                hi: 6.0,
                points,
                quantities: vec![Quantity::GlobalQ, Quantity::BellModeA],
                optimizer: cfg.clone(),
            };
            let t5 = run_sweep(&base(SweepTarget::Psi5))?;
            let mut spec7 = base(SweepTarget::Psi7);
            spec7.quantities.push(Quantity::BellModeB);
            let t7 = run_sweep(&spec7)?;
            let mut table = Table::new();
            table.push_numeric_column("delta", t5.numeric_column("delta").unwrap());
            for (suffix, t) in [("psi5", &t5), ("psi7", &t7)] {
                for col in ["Q", "max_abs_F3", "sum_sq_mode_a"] {
                    table.push_numeric_column(
                        format!("{col}_{suffix}"),
                        t.numeric_column(col).unwrap(),
                    );
                }
            }
            table.push_numeric_column(
                "sum_sq_mode_b_psi7",
                t7.numeric_column("sum_sq_mode_b").unwrap(),
            );
            Ok(vec![("fig2".into(), table)])
        }
        FigureName::Fig3 => {
            let spec = SweepSpec {
                target: SweepTarget::Sup78,
                lo: 0.0,
                hi: 6.0,
                points,
                quantities: vec![
                    Quantity::GlobalQ,
                    Quantity::SumSqC,
                    Quantity::Tangle,
                    Quantity::BellModeA,
                ],
                optimizer: cfg.clone(),
            };
            let table =
                run_sweep(&spec)?.select(&["delta", "Q", "sum_sq_C", "tangle", "max_abs_F3"])?;
            Ok(vec![("fig3".into(), table)])
        }
        FigureName::Fig4 => {
            let mut out = Vec::new();
            for (stem, target) in [
                ("fig4_vs_J", SweepTarget::Phi1J { js: 2.0 }),
                ("fig4_vs_Js", SweepTarget::Phi1Js { j: 2.0 }),
            ] {
                let spec = SweepSpec {
                    target,
                    lo: 0.0,
                    hi: 6.0,
                    points,
                    quantities: vec![
                        Quantity::PairConcurrences,
                        Quantity::GlobalQ,
                        Quantity::BellModeA,
                    ],
                    optimizer: cfg.clone(),
                };
                out.push((stem.to_string(), run_sweep(&spec)?));
            }
            Ok(out)
        }
        FigureName::Fig5 => {
            let mut out = Vec::new();
            for (stem, target) in [
                ("fig5_vs_J", SweepTarget::Phi2J { js: 2.0 }),
                ("fig5_vs_Js", SweepTarget::Phi2Js { j: 2.0 }),
            ] {
                let spec = SweepSpec {
                    target,
                    lo: 0.0,
                    hi: 6.0,
                    points,
                    quantities: vec![Quantity::SumSqC, Quantity::GlobalQ, Quantity::BellModeA],
                    optimizer: cfg.clone(),
                };
                let sweep = run_sweep(&spec)?;
                let sum_sq_c = sweep.numeric_column("sum_sq_C").unwrap();
                let mut table = sweep.select(&[
                    spec.target.param_name(),
                    "sum_sq_C",
                    "Q",
                    "max_abs_F4",
                    "F4prime_at_opt",
                    "sum_sq_mode_a",
                    "flag",
                ])?;
                let one_minus: Vec<f64> = sum_sq_c.iter().map(|s| 1.0 - s).collect();
                table.push_numeric_column("one_minus_sum_sq_C", one_minus);
                out.push((stem.to_string(), table));
            }
            Ok(out)
        }
        FigureName::Table3 => Ok(vec![("table3".into(), table3(cfg)?)]),
    }
}

/// The two parameter sets tabulated for the Φ₂ optimization, with both the
/// free optimum and the re-optimization under directions clamped to the x-y
/// plane (z = 0). `J → 0` is approximated at `J = 0.01` because Φ₂'s
/// closed-form coefficients are singular at `J = 0`.
fn table3(cfg: &OptimizerConfig) -> Result<Table> {
    let limits: [(&str, Model4Params); 2] = [
        ("Js=2;J=0.01 (J->0 proxy)", Model4Params::new(0.01, 2.0)),
        ("J=2;Js=0", Model4Params::new(2.0, 0.0)),
    ];
    let vector_names = ["A", "Aprime", "B", "Bprime", "C", "Cprime", "D", "Dprime"];
    let mut limit_col = Vec::new();
    let mut clamped_col = Vec::new();
    let mut vector_col = Vec::new();
    let mut xyz: [Vec<Cell>; 3] = [Vec::new(), Vec::new(), Vec::new()];
    let mut value_cols: [Vec<Cell>; 3] = [Vec::new(), Vec::new(), Vec::new()];

    let mode_a = cfg.clone().with_mode(OptMode::MaximizeF);
    for (label, params) in limits {
        let state = models::phi2(&params)?;
        let free = optimizer::optimize(&state, &mode_a)?;
        let clamped = optimizer::optimize_equatorial(&state, &mode_a)?;
        for (is_clamped, outcome) in [(0i64, &free), (1, &clamped)] {
            for (pair_idx, (v, vp)) in outcome.settings.pairs().iter().enumerate() {
                for (name_offset, dir) in [(0, v), (1, vp)] {
                    let comps = dir.as_array();
                    limit_col.push(Cell::Text(label.to_string()));
                    clamped_col.push(Cell::Int(is_clamped));
                    vector_col.push(Cell::Text(
                        vector_names[2 * pair_idx + name_offset].to_string(),
                    ));
                    for (k, c) in comps.iter().enumerate() {
                        xyz[k].push(Cell::Num(*c));
                    }
                    value_cols[0].push(Cell::Num(outcome.value_f));
                    value_cols[1].push(Cell::Num(outcome.value_fprime));
                    value_cols[2].push(Cell::Num(outcome.sum_sq));
                }
            }
        }
    }
    let mut table = Table::new();
    table.push_column("limit", limit_col);
    table.push_column("clamped", clamped_col);
    table.push_column("vector", vector_col);
    for (k, name) in ["x", "y", "z"].iter().enumerate() {
        table.push_column(*name, xyz[k].clone());
    }
    for (k, name) in ["max_abs_F4", "F4prime_at_opt", "sum_sq"].iter().enumerate() {
        table.push_column(*name, value_cols[k].clone());
    }
    Ok(table)
}

/// Write every table of a figure into `dir`, returning the created paths.
pub fn write_figure(
    name: FigureName,
    dir: &Path,
    cfg: &OptimizerConfig,
    points: usize,
    format: OutputFormat,
) -> Result<Vec<PathBuf>> {
    let tables = figure_tables(name, cfg, points)?;
    let mut paths = Vec::new();
    for (stem, table) in tables {
        let path = dir.join(format!("{stem}.{}", format.extension()));
        table.write(&path, format)?;
        paths.push(path);
    }
    Ok(paths)
}

/// Transition-point searches the CLI exposes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TransitionTarget {
    /// ψ₅ mode-A squared sum crossing over Δ.
    Psi5,
    /// ψ₇ mode-A squared sum crossing over Δ.
    Psi7,
    /// Φ₁ crossing over J at fixed J_s.
    Phi1J { js: f64 },
    /// Φ₁ crossing over J_s at fixed J.
    Phi1Js { j: f64 },
    /// Generalized-GHZ `max|⟨F₃⟩|` crossing over g (threshold defaults to 2).
    GenGhzMaxF,
}

impl TransitionTarget {
    fn default_threshold(&self) -> f64 {
        match self {
            TransitionTarget::GenGhzMaxF => 2.0,
            _ => 8.0,
        }
    }

    fn quantity(&self) -> TransitionQuantity {
        match self {
            TransitionTarget::GenGhzMaxF => TransitionQuantity::MaxAbsF,
            _ => TransitionQuantity::SumSq,
        }
    }
}

/// Locate the parameter where the optimized Bell quantity crosses the
/// threshold (scan plus warm-started bisection; see
/// [`optimizer::find_transition`]).
pub fn run_transition(
    target: TransitionTarget,
    lo: f64,
    hi: f64,
    threshold: Option<f64>,
    refine_tol: f64,
    cfg: &OptimizerConfig,
) -> Result<f64> {
    let threshold = threshold.unwrap_or_else(|| target.default_threshold());
    let state_at = move |param: f64| -> Result<PureState> {
        match target {
            TransitionTarget::Psi5 => models::psi(&Model3Params::anisotropic(param), 5),
            TransitionTarget::Psi7 => models::psi(&Model3Params::anisotropic(param), 7),
            TransitionTarget::Phi1J { js } => models::phi1(&Model4Params::new(param, js)),
            TransitionTarget::Phi1Js { j } => models::phi1(&Model4Params::new(j, param)),
            TransitionTarget::GenGhzMaxF => models::generalized_ghz(param),
        }
    };
    let query = TransitionQuery::new(state_at, lo, hi)
        .with_threshold(threshold)
        .with_refine_tol(refine_tol)
        .with_quantity(target.quantity());
    let mode_a = cfg.clone().with_mode(OptMode::MaximizeF);
    optimizer::find_transition(&query, &mode_a)
}

/// Parse the state-spec mini-language:
/// `ghz3`, `ghz4`, `w3`, `genghz:g=0.6`, `psi5:J=1,delta=2` (likewise
/// psi6/psi7/psi8), `sup78:delta=3`, `phi1:J=2,Js=2`, `phi2:J=2,Js=2`, or
/// `file:<path>` with a JSON array of `[re, im]` amplitude pairs
/// (qubit 1 = most significant bit).
pub fn parse_state_spec(spec: &str) -> Result<PureState> {
    let (head, rest) = match spec.split_once(':') {
        Some((h, r)) => (h, Some(r)),
        None => (spec, None),
    };
    match head {
        "ghz3" => PureState::ghz(3),
        "ghz4" => PureState::ghz(4),
        "w3" => PureState::w_state(3),
        "genghz" => {
            let params = parse_params(rest.unwrap_or(""))?;
            let g = require_param(&params, "g", spec)?;
            models::generalized_ghz(g)
        }
        "psi5" | "psi6" | "psi7" | "psi8" => {
            let params = parse_params(rest.unwrap_or(""))?;
            let delta = require_param(&params, "delta", spec)?;
            let j = params.get("J").copied().unwrap_or(1.0);
            let k: usize = head[3..].parse().expect("psi index digit");
            models::psi(
                &Model3Params {
                    j,
                    delta,
                    field: 0.0,
                },
                k,
            )
        }
        "sup78" => {
            let params = parse_params(rest.unwrap_or(""))?;
            let delta = require_param(&params, "delta", spec)?;
            let j = params.get("J").copied().unwrap_or(1.0);
            models::superposition78(&Model3Params {
                j,
                delta,
                field: 0.0,
            })
        }
        "phi1" | "phi2" => {
            let params = parse_params(rest.unwrap_or(""))?;
            let j = require_param(&params, "J", spec)?;
            let js = require_param(&params, "Js", spec)?;
            let p = Model4Params::new(j, js);
            if head == "phi1" {
                models::phi1(&p)
            } else {
                models::phi2(&p)
            }
        }
        "file" => {
            let path = rest
                .ok_or_else(|| Error::Argument("file spec needs a path: file:<path>".into()))?;
            state_from_json_file(Path::new(path))
        }
        other => Err(Error::Argument(format!(
            "unknown state spec '{other}' (expected ghz3, ghz4, w3, genghz, psi5..psi8, sup78, phi1, phi2 or file:<path>)"
        ))),
    }
}

/// Closed-form measure values for the model behind a state spec, when the
/// spec names one of the supported families.
pub fn closed_form_for_spec(spec: &str) -> Result<Option<models::ClosedFormMeasures>> {
    let (head, rest) = match spec.split_once(':') {
        Some((h, r)) => (h, r),
        None => return Ok(None),
    };
    let params = parse_params(rest)?;
    let target = match head {
        "psi5" | "psi6" => ClosedFormTarget::Psi5(Model3Params::anisotropic(require_param(
            &params, "delta", spec,
        )?)),
        "psi7" | "psi8" => ClosedFormTarget::Psi7(Model3Params::anisotropic(require_param(
            &params, "delta", spec,
        )?)),
        "sup78" => ClosedFormTarget::Sup78(Model3Params::anisotropic(require_param(
            &params, "delta", spec,
        )?)),
        "phi1" => ClosedFormTarget::Phi1(Model4Params::new(
            require_param(&params, "J", spec)?,
            require_param(&params, "Js", spec)?,
        )),
        "phi2" => ClosedFormTarget::Phi2(Model4Params::new(
            require_param(&params, "J", spec)?,
            require_param(&params, "Js", spec)?,
        )),
        _ => return Ok(None),
    };
    models::closed_form_measures(&target).map(Some)
}

fn parse_params(s: &str) -> Result<BTreeMap<String, f64>> {
    let mut map = BTreeMap::new();
    if s.trim().is_empty() {
        return Ok(map);
    }
    for part in s.split(',') {
        let (key, value) = part.split_once('=').ok_or_else(|| {
            Error::Argument(format!("malformed parameter '{part}' (expected key=value)"))
        })?;
        let parsed: f64 = value
            .trim()
            .parse()
            .map_err(|_| Error::Argument(format!("parameter {key}='{value}' is not a number")))?;
        map.insert(key.trim().to_string(), parsed);
    }
    Ok(map)
}

fn require_param(params: &BTreeMap<String, f64>, key: &str, spec: &str) -> Result<f64> {
    params
        .get(key)
        .copied()
        .ok_or_else(|| Error::Argument(format!("state spec '{spec}' is missing {key}=<value>")))
}

fn state_from_json_file(path: &Path) -> Result<PureState> {
    let content = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    let pairs: Vec<[f64; 2]> = serde_json::from_str(&content).map_err(|e| {
        Error::Argument(format!(
            "{} does not hold a JSON array of [re, im] pairs: {e}",
            path.display()
        ))
    })?;
    let amps: Vec<C64> = pairs.iter().map(|[re, im]| C64::new(*re, *im)).collect();
    PureState::from_amplitudes(amps)
}

/// Single-row table describing a measure report (for the `measures` command).
pub fn measure_report_table(
    report: &measures::MeasureReport,
    closed: Option<&models::ClosedFormMeasures>,
) -> Table {
    let mut table = Table::new();
    for ((i, j), c) in &report.pair_concurrences {
        table.push_numeric_column(format!("C_{i}{j}"), vec![*c]);
    }
    for (i, ic) in &report.i_concurrences {
        table.push_numeric_column(format!("IC_{i}"), vec![*ic]);
    }
    table.push_numeric_column("Q", vec![report.global_q]);
    if let Some(tau) = report.tangle3 {
        table.push_numeric_column("tangle", vec![tau]);
    }
    table.push_numeric_column("sum_sq_C", vec![report.sum_sq_concurrence]);
    if let Some(cf) = closed {
        for ((i, j), c) in &cf.pair_concurrences {
            table.push_numeric_column(format!("closed_C_{i}{j}"), vec![*c]);
        }
        if let Some(q) = cf.global_q {
            table.push_numeric_column("closed_Q", vec![q]);
        }
        if let Some(s) = cf.sum_sq_concurrence {
            table.push_numeric_column("closed_sum_sq_C", vec![s]);
        }
    }
    table
}

/// Single-row table describing a Bell optimization outcome.
pub fn outcome_table(outcome: &BellOutcome) -> Table {
    let mut table = Table::new();
    table.push_numeric_column("value_F", vec![outcome.value_f]);
    table.push_numeric_column("value_Fprime", vec![outcome.value_fprime]);
    table.push_numeric_column("sum_sq", vec![outcome.sum_sq]);
    table.push_column(
        "classification",
        vec![Cell::Text(outcome.classification.to_string())],
    );
    table.push_column(
        "distinct_optima",
        vec![Cell::Int(outcome.distinct_optima as i64)],
    );
    table.push_column("stagnant", vec![Cell::Int(i64::from(outcome.stagnant))]);
    let vector_names = ["A", "Aprime", "B", "Bprime", "C", "Cprime", "D", "Dprime"];
    for (pair_idx, (v, vp)) in outcome.settings.pairs().iter().enumerate() {
        for (offset, dir) in [(0, v), (1, vp)] {
            let name = vector_names[2 * pair_idx + offset];
            let comps = dir.as_array();
            for (axis, value) in ["x", "y", "z"].iter().zip(comps) {
                table.push_numeric_column(format!("{name}_{axis}"), vec![value]);
            }
        }
    }
    table
}
