//! Command-line front end: entanglement measures, Bell-operator
//! optimization, parameter sweeps, scale fits, figure-data regeneration and
//! transition searches for 3- and 4-qubit model states.
//!
//! Exit codes: 0 success, 2 argument error, 3 numeric-consistency error,
//! 4 I/O error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use entbell::error::Error;
use entbell::measures;
use entbell::optimizer::{OptMode, OptimizerConfig};
use entbell::sweep::{
    self, FigureName, FitModel, OutputFormat, Quantity, SweepSpec, SweepTarget, Table,
    TransitionTarget,
};

#[derive(Parser)]
#[command(
    name = "entbell",
    version,
    about = "Entanglement measures and optimized Mermin-Klyshko Bell operators \
             for 3- and 4-qubit pure states"
)]
struct Cli {
    /// Seed for the optimizer restart streams.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,

    /// Number of random optimizer restarts.
    #[arg(long, global = true, default_value_t = 64)]
    restarts: usize,

    /// Output file (for `figure`: output directory). Defaults to stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Table serialization format.
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

impl From<FormatArg> for OutputFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Csv => OutputFormat::Csv,
            FormatArg::Json => OutputFormat::Json,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    /// Maximize |<F>|, then evaluate <F'> at the optimum.
    A,
    /// Maximize <F>^2 + <F'>^2 directly.
    B,
}

#[derive(Clone, Copy, ValueEnum)]
enum SweepTargetArg {
    Genghz,
    Psi5,
    Psi7,
    Sup78,
    Phi1J,
    Phi1Js,
    Phi2J,
    Phi2Js,
}

#[derive(Clone, Copy, ValueEnum)]
enum TransitionArg {
    Psi5,
    Psi7,
    Phi1J,
    Phi1Js,
    GenghzF3,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelArg {
    /// y = c * g * sqrt(1 - g^2)
    GSqrt,
    /// y = c * g^2 * (1 - g^2)
    G2,
}

#[derive(Subcommand)]
enum Command {
    /// Concurrences, i-concurrences, global entanglement and tangle of a state.
    ///
    /// State specs: ghz3, ghz4, w3, genghz:g=0.6, psi5:J=1,delta=2 (also
    /// psi6/psi7/psi8), sup78:delta=3, phi1:J=2,Js=2, phi2:J=2,Js=2, or
    /// file:<path> with a JSON array of [re, im] amplitude pairs.
    Measures { state_spec: String },

    /// Optimize the Mermin-Klyshko pair (F_n, F'_n) over all directions.
    BellOpt {
        state_spec: String,
        #[arg(long, value_enum, default_value_t = ModeArg::A)]
        mode: ModeArg,
    },

    /// Sweep a model parameter and tabulate measures / Bell optima per point.
    Sweep {
        #[arg(long, value_enum)]
        target: SweepTargetArg,
        #[arg(long)]
        lo: f64,
        #[arg(long)]
        hi: f64,
        #[arg(long, default_value_t = 101)]
        points: usize,
        /// Comma-separated: q, sum_sq_c, tangle, bell_a, bell_b, concurrences.
        #[arg(long, value_delimiter = ',', default_value = "q")]
        quantities: Vec<String>,
        /// The coupling held fixed for phi1/phi2 targets.
        #[arg(long, default_value_t = 2.0)]
        fixed: f64,
    },

    /// Least-squares scale fit of a sweep column against a fixed shape in g.
    Fit {
        /// CSV produced by `sweep` or `figure`.
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value = "g")]
        x_col: String,
        #[arg(long)]
        y_col: String,
        #[arg(long, value_enum)]
        model: ModelArg,
    },

    /// Regenerate the data tables behind one figure (fig1..fig5, table3).
    Figure {
        name: String,
        /// Grid points per axis (figure-specific default).
        #[arg(long)]
        points: Option<usize>,
    },

    /// Find where the optimized Bell quantity crosses a threshold.
    Transition {
        #[arg(long, value_enum)]
        target: TransitionArg,
        #[arg(long)]
        lo: f64,
        #[arg(long)]
        hi: f64,
        /// Crossing threshold (default 8.0; 2.0 for genghz-f3).
        #[arg(long)]
        threshold: Option<f64>,
        /// Bracket width on the parameter at which bisection stops.
        #[arg(long, default_value_t = 0.01)]
        refine_tol: f64,
        /// The coupling held fixed for phi1 targets.
        #[arg(long, default_value_t = 2.0)]
        fixed: f64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}

fn run(cli: Cli) -> Result<(), Error> {
    let cfg = OptimizerConfig {
        restarts: cli.restarts,
        seed: cli.seed,
        ..OptimizerConfig::default()
    };
    let format: OutputFormat = cli.format.into();

    match cli.command {
        Command::Measures { state_spec } => {
            let state = sweep::parse_state_spec(&state_spec)?;
            let report = measures::measure_report(&state)?;
            let closed = sweep::closed_form_for_spec(&state_spec)?;
            emit(
                &sweep::measure_report_table(&report, closed.as_ref()),
                &cli.out,
                format,
            )
        }
        Command::BellOpt { state_spec, mode } => {
            let state = sweep::parse_state_spec(&state_spec)?;
            let cfg = cfg.with_mode(match mode {
                ModeArg::A => OptMode::MaximizeF,
                ModeArg::B => OptMode::MaximizeSumSq,
            });
            let outcome = entbell::optimizer::optimize(&state, &cfg)?;
            emit(&sweep::outcome_table(&outcome), &cli.out, format)
        }
        Command::Sweep {
            target,
            lo,
            hi,
            points,
            quantities,
            fixed,
        } => {
            let target = match target {
                SweepTargetArg::Genghz => SweepTarget::GenGhz,
                SweepTargetArg::Psi5 => SweepTarget::Psi5,
                SweepTargetArg::Psi7 => SweepTarget::Psi7,
                SweepTargetArg::Sup78 => SweepTarget::Sup78,
                SweepTargetArg::Phi1J => SweepTarget::Phi1J { js: fixed },
                SweepTargetArg::Phi1Js => SweepTarget::Phi1Js { j: fixed },
                SweepTargetArg::Phi2J => SweepTarget::Phi2J { js: fixed },
                SweepTargetArg::Phi2Js => SweepTarget::Phi2Js { j: fixed },
            };
            let quantities = quantities
                .iter()
                .map(|q| parse_quantity(q))
                .collect::<Result<Vec<_>, _>>()?;
            let spec = SweepSpec {
                target,
                lo,
                hi,
                points,
                quantities,
                optimizer: cfg,
            };
            emit(&sweep::run_sweep(&spec)?, &cli.out, format)
        }
        Command::Fit {
            input,
            x_col,
            y_col,
            model,
        } => {
            let content = std::fs::read_to_string(&input).map_err(|source| Error::Io {
                path: input.display().to_string(),
                source,
            })?;
            let table = Table::from_csv_str(&content)?;
            let x = table
                .numeric_column(&x_col)
                .ok_or_else(|| Error::Argument(format!("no numeric column '{x_col}'")))?;
            let y = table
                .numeric_column(&y_col)
                .ok_or_else(|| Error::Argument(format!("no numeric column '{y_col}'")))?;
            let model = match model {
                ModelArg::GSqrt => FitModel::GSqrt,
                ModelArg::G2 => FitModel::GSquared,
            };
            let fit = sweep::fit_scale(&x, &y, model)?;
            let mut out = Table::new();
            out.push_column(
                "model",
                vec![sweep::Cell::Text(fit.model.name().to_string())],
            );
            out.push_numeric_column("scale", vec![fit.scale]);
            out.push_numeric_column("residual_rms", vec![fit.residual_rms]);
            emit(&out, &cli.out, format)
        }
        Command::Figure { name, points } => {
            let name = FigureName::parse(&name)?;
            let points = points.unwrap_or_else(|| name.default_points());
            let dir = cli.out.clone().unwrap_or_else(|| PathBuf::from("."));
            std::fs::create_dir_all(&dir).map_err(|source| Error::Io {
                path: dir.display().to_string(),
                source,
            })?;
            let paths = sweep::write_figure(name, &dir, &cfg, points, format)?;
            for p in paths {
                println!("{}", p.display());
            }
            Ok(())
        }
        Command::Transition {
            target,
            lo,
            hi,
            threshold,
            refine_tol,
            fixed,
        } => {
            let (target, label) = match target {
                TransitionArg::Psi5 => (TransitionTarget::Psi5, "psi5".to_string()),
                TransitionArg::Psi7 => (TransitionTarget::Psi7, "psi7".to_string()),
                TransitionArg::Phi1J => (
                    TransitionTarget::Phi1J { js: fixed },
                    format!("phi1 over J at Js={fixed}"),
                ),
                TransitionArg::Phi1Js => (
                    TransitionTarget::Phi1Js { j: fixed },
                    format!("phi1 over Js at J={fixed}"),
                ),
                TransitionArg::GenghzF3 => {
                    (TransitionTarget::GenGhzMaxF, "genghz max|F3|".to_string())
                }
            };
            let crossing = sweep::run_transition(target, lo, hi, threshold, refine_tol, &cfg)?;
            let mut out = Table::new();
            out.push_column("target", vec![sweep::Cell::Text(label)]);
            out.push_numeric_column("crossing", vec![crossing]);
            emit(&out, &cli.out, format)
        }
    }
}

fn parse_quantity(name: &str) -> Result<Quantity, Error> {
    match name {
        "q" => Ok(Quantity::GlobalQ),
        "sum_sq_c" => Ok(Quantity::SumSqC),
        "tangle" => Ok(Quantity::Tangle),
        "bell_a" => Ok(Quantity::BellModeA),
        "bell_b" => Ok(Quantity::BellModeB),
        "concurrences" => Ok(Quantity::PairConcurrences),
        other => Err(Error::Argument(format!(
            "unknown quantity '{other}' (expected q, sum_sq_c, tangle, bell_a, bell_b, concurrences)"
        ))),
    }
}

fn emit(table: &Table, out: &Option<PathBuf>, format: OutputFormat) -> Result<(), Error> {
    match out {
        Some(path) => table.write(path, format),
        None => {
            print!("{}", table.render(format));
            Ok(())
        }
    }
}
