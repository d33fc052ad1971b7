//! Subcommands. Each builds a [`Table`]; [`run`] adds the metadata block.

use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand};
use rayon::prelude::*;

use crate::args::{parse_complex, parse_range, range_points};
use crate::output::{render, Cell, Format, Table};
use crate::plot::{self, Series};
use toroidal_core::ddseries::{
    residue_at_w1_rho, residue_shape, z_principal, z_rho, DDPoint, RayClassSetup, DEFAULT_DELTAS, EXTRAPOLATION_TOL,
    TWIST_THRESHOLD,
};
use toroidal_core::lfun::{
    completed, control_scale, dirichlet_l, load_lfunction, stable_derivative, zeta, CompletedL, CAUCHY_RADIUS,
    CONTROL_RADIUS, ORDER_NONZERO, ORDER_ZERO,
};
use toroidal_core::periods::{calibrate, l_product, period_derivative, toroidal_period, GRID_GUARD, QUADRATURE_TOL};
use toroidal_core::toroidal::{
    classify_cusp, classify_eisenstein, classify_residue, Subject, ToroidalVerdict, RESIDUE_TOL, VANISHING_TOL,
};
use toroidal_core::{
    c64, Complex, Error, Result, MAX_ABS_DISCRIMINANT, MAX_DERIVATIVE_ORDER, MAX_IM_S, MAX_IM_S_EISENSTEIN,
};

/// Most points accepted on one `--line` grid.
const MAX_GRID_POINTS: usize = 10_000;

/// Grid used by `calibrate` when none is given.
const DEFAULT_CALIBRATION_GRID: &str = "2,3,4,0.75+5i,0.25-5i";

#[derive(Debug, Parser)]
#[command(name = "toroidal-lab", version, about = "Toroidal periods, L-values and double Dirichlet series")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Values of ζ, L(·, χ_D) or an ingested L-function.
    Lvalue(LvalueArgs),
    /// Toroidal periods of E*(·, s) against Λ_ζ Λ(·, χ_D).
    Period(PeriodArgs),
    /// Ratio of the period to Λ_ζ Λ(·, χ_D) on a grid.
    Calibrate(CalibrateArgs),
    /// Truncated double Dirichlet series, or its residue at w = 1.
    Dd(DdArgs),
    /// Toroidality verdicts.
    Classify(ClassifyArgs),
}

/// A single point (`--s`) or a vertical segment (`--line RE --t A..B`).
#[derive(Debug, Args)]
pub struct PointArgs {
    /// Evaluation point, e.g. `2`, `0.5+14.1i`.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, conflicts_with_all = ["line", "t"])]
    pub s: Option<Complex>,
    /// Real part of a vertical segment.
    #[arg(long, allow_hyphen_values = true, requires = "t")]
    pub line: Option<f64>,
    /// Imaginary range `A..B` of the segment.
    #[arg(long, value_parser = parse_range, allow_hyphen_values = true, requires = "line")]
    pub t: Option<(f64, f64)>,
    /// Spacing of the segment.
    #[arg(long, default_value_t = 0.25)]
    pub step: f64,
}

impl PointArgs {
    fn points(&self) -> Result<Vec<Complex>> {
        match (self.s, self.line, self.t) {
            (Some(s), _, _) => Ok(vec![s]),
            (None, Some(re), Some((a, b))) => {
                if !(self.step > 0.0) || (b - a) / self.step >= MAX_GRID_POINTS as f64 {
                    return Err(Error::InvalidArgument(format!(
                        "--step must be positive with at most {MAX_GRID_POINTS} points"
                    )));
                }
                Ok(range_points(a, b, self.step).into_iter().map(|t| c64(re, t)).collect())
            }
            _ => Err(Error::InvalidArgument("give --s, or --line with --t".into())),
        }
    }
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("target").required(true).args(["zeta", "chi", "file"])))]
pub struct LvalueArgs {
    /// Riemann ζ.
    #[arg(long)]
    pub zeta: bool,
    /// L(·, χ_D) for a fundamental discriminant D.
    #[arg(long, allow_hyphen_values = true)]
    pub chi: Option<i64>,
    /// An L-function coefficient file.
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// Report the completed Λ instead of L.
    #[arg(long)]
    pub completed: bool,
    #[command(flatten)]
    pub at: PointArgs,
}

#[derive(Debug, Args)]
pub struct PeriodArgs {
    /// Fundamental discriminant of the torus.
    #[arg(long = "D", allow_hyphen_values = true)]
    pub d: i64,
    #[command(flatten)]
    pub at: PointArgs,
    /// s-derivative order, at most 3.
    #[arg(long, default_value_t = 0)]
    pub derivative: usize,
    /// Write an SVG of |period| and |Λ_ζ Λ_χ| against t.
    #[arg(long)]
    pub plot: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CalibrateArgs {
    /// Fundamental discriminant of the torus.
    #[arg(long = "D", allow_hyphen_values = true)]
    pub d: i64,
    /// Comma-separated points.
    #[arg(long, value_parser = parse_complex, value_delimiter = ',', allow_hyphen_values = true, default_value = DEFAULT_CALIBRATION_GRID)]
    pub grid: Vec<Complex>,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("mode").required(true).args(["w", "residue"])))]
pub struct DdArgs {
    /// First variable: Re s ≥ 1.1 for values, 1.05 < Re s < 1.6 with --residue.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub s: Complex,
    /// Second variable, Re w ≥ 1.1.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub w: Option<Complex>,
    /// Extrapolate (w−1) Z(s, w) to w = 1.
    #[arg(long)]
    pub residue: bool,
    /// Truncation: odd d ≤ N.
    #[arg(long = "N")]
    pub n: u64,
    /// Character ρ of (Z/8)^× (0 trivial); omitted means Z⁰ (d ≡ 1 mod 8).
    #[arg(long)]
    pub rho: Option<usize>,
    /// Offsets δ = w − 1 for the residue, decreasing, each ≥ 0.1.
    #[arg(long, value_delimiter = ',')]
    pub deltas: Option<Vec<f64>>,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("subject").required(true).args(["eisenstein", "residue", "cusp"])))]
pub struct ClassifyArgs {
    /// E*(·, s) at this s0.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub eisenstein: Option<Complex>,
    /// Derivative order for --eisenstein.
    #[arg(long, default_value_t = 0)]
    pub n: usize,
    /// The residue of E* at s = 1.
    #[arg(long)]
    pub residue: bool,
    /// A cusp form's L-function file.
    #[arg(long)]
    pub cusp: Option<PathBuf>,
    /// Twist bound |D| for --cusp.
    #[arg(long, default_value_t = 20)]
    pub twists: i64,
}

fn metadata(command: &str) -> Vec<(&'static str, Cell)> {
    let m_e: Vec<String> = RayClassSetup::REPRESENTATIVES.iter().map(u64::to_string).collect();
    vec![
        ("tool", "toroidal-lab".into()),
        ("version", env!("CARGO_PKG_VERSION").into()),
        ("command", command.into()),
        ("max_im_s", MAX_IM_S.into()),
        ("max_im_s_eisenstein", MAX_IM_S_EISENSTEIN.into()),
        ("max_abs_discriminant", MAX_ABS_DISCRIMINANT.into()),
        ("max_derivative_order", MAX_DERIVATIVE_ORDER.into()),
        ("m_e_for_d_mod_8_1_3_5_7", m_e.join(" ").into()),
        ("vanishing_tol", VANISHING_TOL.into()),
        ("order_zero", ORDER_ZERO.into()),
        ("order_nonzero", ORDER_NONZERO.into()),
        ("quadrature_tol", QUADRATURE_TOL.into()),
        ("grid_guard", GRID_GUARD.into()),
        ("residue_tol", RESIDUE_TOL.into()),
        ("twist_threshold", TWIST_THRESHOLD.into()),
        ("extrapolation_tol", EXTRAPOLATION_TOL.into()),
    ]
}

/// Runs the command and renders its output.
pub fn run(cli: &Cli, command: &str) -> Result<String> {
    let table = match &cli.command {
        Command::Lvalue(a) => lvalue(a)?,
        Command::Period(a) => period(a)?,
        Command::Calibrate(a) => calibration(a)?,
        Command::Dd(a) => dd(a)?,
        Command::Classify(a) => classify(a)?,
    };
    Ok(render(cli.format, &metadata(command), &table))
}

/// Evaluates `f` at every point in parallel; the first error in input order wins.
fn map_points<T: Send, F: Fn(Complex) -> Result<T> + Sync>(points: &[Complex], f: F) -> Result<Vec<T>> {
    let results: Vec<Result<T>> = points.par_iter().map(|&s| f(s)).collect();
    results.into_iter().collect()
}

fn lvalue(a: &LvalueArgs) -> Result<Table> {
    let (label, l) = match (&a.file, a.chi) {
        (Some(path), _) => {
            let l = load_lfunction(path)?;
            (path.file_name().map_or_else(|| l.label(), |n| n.to_string_lossy().into_owned()), l)
        }
        (None, Some(d)) => {
            let l = CompletedL::dirichlet(d)?;
            (l.label(), l)
        }
        (None, None) => ("zeta".to_string(), CompletedL::zeta()),
    };
    let value_of = |s: Complex| -> Result<Complex> {
        if a.completed {
            return completed(&l, s);
        }
        match (&a.file, a.chi) {
            (Some(_), _) => l.l_value(s),
            (None, Some(d)) => dirichlet_l(d, s),
            (None, None) => zeta(s),
        }
    };
    let points = a.at.points()?;
    let rows = map_points(&points, |s| {
        let v = value_of(s)?;
        let lambda = completed(&l, s)?;
        let scale = control_scale(&|z| completed(&l, z), s, CONTROL_RADIUS)?;
        Ok((s, v, lambda.norm() <= VANISHING_TOL * scale))
    })?;
    let mut t = Table::new(vec!["function", "completed", "s_re", "s_im", "value_re", "value_im", "abs", "vanishing"]);
    for (s, v, vanishing) in rows {
        t.push(vec![
            label.clone().into(),
            a.completed.into(),
            s.re.into(),
            s.im.into(),
            v.re.into(),
            v.im.into(),
            v.norm().into(),
            vanishing.into(),
        ]);
    }
    Ok(t)
}

fn period(a: &PeriodArgs) -> Result<Table> {
    let points = a.at.points()?;
    let n = a.derivative;
    let rows = map_points(&points, |s| {
        if n == 0 {
            let p = toroidal_period(a.d, s)?;
            Ok((s, p.value, l_product(a.d, s)?, Some(p.quadrature_order), Some(p.error_estimate)))
        } else {
            let p = period_derivative(a.d, s, n)?;
            let l = stable_derivative(&|z| l_product(a.d, z), s, n, CAUCHY_RADIUS)?;
            Ok((s, p, l, None, None))
        }
    })?;
    let mut t = Table::new(vec![
        "D",
        "s_re",
        "s_im",
        "derivative",
        "period_re",
        "period_im",
        "period_abs",
        "lproduct_re",
        "lproduct_im",
        "lproduct_abs",
        "quadrature_order",
        "error_estimate",
    ]);
    for (s, p, l, order, err) in &rows {
        t.push(vec![
            a.d.into(),
            s.re.into(),
            s.im.into(),
            n.into(),
            p.re.into(),
            p.im.into(),
            p.norm().into(),
            l.re.into(),
            l.im.into(),
            l.norm().into(),
            (*order).into(),
            (*err).into(),
        ]);
    }
    if let Some(path) = &a.plot {
        let series = [
            Series { name: "|period|", color: "#1f77b4", points: rows.iter().map(|r| (r.0.im, r.1.norm())).collect() },
            Series {
                name: "|Λ_ζ Λ_χ|",
                color: "#d62728",
                points: rows.iter().map(|r| (r.0.im, r.2.norm())).collect(),
            },
        ];
        let title = format!("D = {}, derivative {n}", a.d);
        std::fs::write(path, plot::render(&title, &series))
            .map_err(|e| Error::InvalidArgument(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(t)
}

fn calibration(a: &CalibrateArgs) -> Result<Table> {
    let c = calibrate(a.d, &a.grid)?;
    let mut t = Table::new(vec!["D", "s_re", "s_im", "ratio_re", "ratio_im", "deviation"]);
    for (s, r) in &c.samples {
        let dev = (r - c.constant_fit).norm() / c.constant_fit.norm();
        t.push(vec![a.d.into(), s.re.into(), s.im.into(), r.re.into(), r.im.into(), dev.into()]);
    }
    t.summarize("constant_re", c.constant_fit.re);
    t.summarize("constant_im", c.constant_fit.im);
    t.summarize("max_deviation", c.max_deviation);
    Ok(t)
}

fn rho_label(k: Option<usize>) -> Cell {
    k.map_or_else(|| "principal".into(), |k| k.to_string().into())
}

fn dd(a: &DdArgs) -> Result<Table> {
    if let Some(w) = a.w {
        let v = match a.rho {
            Some(k) => z_rho(&DDPoint { s: a.s, w, n: a.n, rho: k })?,
            None => z_principal(a.s, w, a.n)?,
        };
        let mut t =
            Table::new(vec!["s_re", "s_im", "w_re", "w_im", "N", "rho", "value_re", "value_im", "tail_estimate"]);
        t.push(vec![
            a.s.re.into(),
            a.s.im.into(),
            w.re.into(),
            w.im.into(),
            a.n.into(),
            rho_label(a.rho),
            v.value.re.into(),
            v.value.im.into(),
            v.tail.into(),
        ]);
        return Ok(t);
    }
    let deltas = a.deltas.clone().unwrap_or_else(|| DEFAULT_DELTAS.to_vec());
    let r = residue_at_w1_rho(a.s, &deltas, a.n, a.rho)?;
    let shape = residue_shape(a.s)?;
    let ratio = r / shape;
    let mut t = Table::new(vec![
        "s_re", "s_im", "N", "rho", "residue_re", "residue_im", "shape_re", "shape_im", "ratio_re", "ratio_im",
    ]);
    t.push(vec![
        a.s.re.into(),
        a.s.im.into(),
        a.n.into(),
        rho_label(a.rho),
        r.re.into(),
        r.im.into(),
        shape.re.into(),
        shape.im.into(),
        ratio.re.into(),
        ratio.im.into(),
    ]);
    let text: Vec<String> = deltas.iter().map(|d| d.to_string()).collect();
    t.summarize("deltas", text.join(" "));
    Ok(t)
}

fn verdict_table(v: &ToroidalVerdict) -> Table {
    let mut t = Table::new(vec!["D", "value", "threshold", "vanishes", "twist_value", "twist_threshold"]);
    for r in &v.certificate {
        t.push(vec![
            r.d.into(),
            r.value.into(),
            r.threshold.into(),
            r.vanishes.into(),
            r.twist_factor.map(|f| f.0).into(),
            r.twist_factor.map(|f| f.1).into(),
        ]);
    }
    match &v.subject {
        Subject::Eisenstein { s0, n } => {
            t.summarize("subject", "eisenstein");
            t.summarize("s0_re", s0.re);
            t.summarize("s0_im", s0.im);
            t.summarize("n", *n);
        }
        Subject::Residue => t.summarize("subject", "residue"),
        Subject::Cusp { label, root_number } => {
            t.summarize("subject", "cusp");
            t.summarize("label", label.clone());
            t.summarize("root_number", *root_number);
        }
    }
    t.summarize("verdict", v.verdict.as_str());
    t.summarize("order_bound", v.order_bound);
    t
}

fn classify(a: &ClassifyArgs) -> Result<Table> {
    let v = match (&a.eisenstein, a.residue, &a.cusp) {
        (Some(s0), _, _) => classify_eisenstein(*s0, a.n)?,
        (None, true, _) => classify_residue()?,
        (None, false, Some(path)) => classify_cusp(&load_lfunction(path)?, a.twists)?,
        (None, false, None) => return Err(Error::InvalidArgument("nothing to classify".into())),
    };
    Ok(verdict_table(&v))
}
