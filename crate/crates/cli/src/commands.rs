use std::f64::consts::PI;
use std::fmt;
use std::fs::File;
use std::io::{BufWriter, Write};

use rayon::prelude::*;
use serde_json::{Map, Value};

use mpt_core::measure::{moment_check, MAX_AUDIT_LEVELS, RATIO_FLAG_TOL};
use mpt_core::spectrum::{f_squared, potential, BoundSpectrum, TrapParams};
use mpt_core::states::coherent_state;
use mpt_core::statistics::{
    linear_grid, log_grid, quadrature_variance, sweep_point, Metric, FIG2_ALPHAS, FIG2_GRID, FIG3_ALPHAS, FIG3_GRID,
};
use mpt_core::Complex64;

use crate::output::{write_csv, write_json, Format, OutputRecord, Table};
use crate::verify::verify_suite;
use crate::{AlphaArg, Command, OutputArgs, SweepArgs, TrapArgs, EXIT_FAILED, EXIT_OK};

/// Wells plotted in figure 1; the last stands in for `D → ∞`.
const FIG1_DEPTHS: [f64; 3] = [1.0, 2.0, 1e6];
const FIG1_X: (f64, f64, usize) = (-5.0, 5.0, 401);

#[derive(Debug)]
pub enum CliError {
    Core(mpt_core::Error),
    Usage(String),
    Io(std::io::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Usage(msg) => f.write_str(msg),
            CliError::Io(e) => write!(f, "i/o: {e}"),
        }
    }
}

impl From<mpt_core::Error> for CliError {
    fn from(e: mpt_core::Error) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

type CliResult<T> = Result<T, CliError>;

/// Inputs echoed into JSON output, keyed by flag name.
#[derive(Default)]
struct Echo(Map<String, Value>);

impl Echo {
    fn num(mut self, key: &str, v: f64) -> Self {
        self.0.insert(key.to_owned(), serde_json::Number::from_f64(v).map_or(Value::Null, Value::Number));
        self
    }

    fn opt_num(self, key: &str, v: Option<f64>) -> Self {
        match v {
            Some(v) => self.num(key, v),
            None => self,
        }
    }

    fn int(mut self, key: &str, v: usize) -> Self {
        self.0.insert(key.to_owned(), Value::from(v));
        self
    }

    fn flag(mut self, key: &str, v: bool) -> Self {
        if v {
            self.0.insert(key.to_owned(), Value::Bool(true));
        }
        self
    }

    fn text(mut self, key: &str, v: impl Into<String>) -> Self {
        self.0.insert(key.to_owned(), Value::String(v.into()));
        self
    }

    fn trap(self, trap: &TrapArgs) -> Self {
        self.opt_num("n-param", trap.n_param).opt_num("depth", trap.depth)
    }

    fn alpha(self, alpha: Complex64) -> Self {
        self.text("alpha", format_alpha(alpha))
    }
}

/// Shortest round-tripping `a+bi` form.
fn format_alpha(z: Complex64) -> String {
    format!("{}{:+}i", z.re, z.im)
}

fn params_from(trap: &TrapArgs) -> CliResult<TrapParams> {
    match (trap.n_param, trap.depth) {
        (Some(n), None) => Ok(TrapParams::new(n)?),
        (None, Some(d)) => Ok(TrapParams::from_depth(d)?),
        _ => Err(CliError::Usage("exactly one of --n-param or --depth is required".into())),
    }
}

fn emit(command: &str, echo: Echo, table: &Table, output: &OutputArgs, out: &mut dyn Write) -> CliResult<()> {
    let echo = echo.text("format", if output.format == Format::Csv { "csv" } else { "json" });
    let write = |sink: &mut dyn Write| -> std::io::Result<()> {
        match output.format {
            Format::Csv => write_csv(table, sink),
            Format::Json => write_json(&OutputRecord::new(command, echo.0.clone(), table), sink),
        }
    };
    match &output.out {
        Some(path) => {
            let mut file = BufWriter::new(File::create(path)?);
            write(&mut file)?;
            file.flush()?;
        }
        None => write(out)?,
    }
    Ok(())
}

pub fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<i32> {
    match command {
        Command::Spectrum { trap, levels, output } => spectrum(&trap, levels, &output, out),
        Command::Potential { trap, x_min, x_max, steps, output } => {
            potential_cmd(&trap, x_min, x_max, steps, &output, out)
        }
        Command::Mandel(args) => sweep(Metric::MandelQ, &args, out),
        Command::Squeeze(args) => sweep(Metric::SqueezingS, &args, out),
        Command::Quadrature { trap, alpha, phi, steps, output } => quadrature(&trap, &alpha, phi, steps, &output, out),
        Command::State { trap, alpha, output } => state(&trap, &alpha, &output, out),
        Command::Measure { trap, tol, levels, output } => measure(&trap, tol, levels, &output, out),
        Command::Figure { figure, output } => figure_cmd(figure, &output, out),
        Command::Verify { trap, alpha, tol, output } => verify(&trap, &alpha, tol, &output, out, err),
    }
    .map(|code| code.unwrap_or(EXIT_OK))
}

fn spectrum(
    trap: &TrapArgs,
    levels: Option<usize>,
    output: &OutputArgs,
    out: &mut dyn Write,
) -> CliResult<Option<i32>> {
    let params = params_from(trap)?;
    let spec = match levels {
        Some(count) => BoundSpectrum::lowest(params, count)?,
        None => BoundSpectrum::new(params)?,
    };
    let mut table = Table::new(&["n", "E_n", "delta_n", "f2_n"]);
    for (n, &e) in spec.levels.iter().enumerate() {
        table.push(vec![n.into(), e.into(), spec.deltas.get(n).copied().into(), f_squared(&params, n)?.into()]);
    }
    let mut echo = Echo::default().trap(trap);
    if let Some(l) = levels {
        echo = echo.int("levels", l);
    }
    emit("spectrum", echo, &table, output, out)?;
    Ok(None)
}

fn potential_cmd(
    trap: &TrapArgs,
    x_min: f64,
    x_max: f64,
    steps: usize,
    output: &OutputArgs,
    out: &mut dyn Write,
) -> CliResult<Option<i32>> {
    let params = params_from(trap)?;
    let mut table = Table::new(&["x", "V"]);
    for x in linear_grid(x_min, x_max, steps)? {
        table.push(vec![x.into(), potential(&params, x).into()]);
    }
    let echo = Echo::default().trap(trap).num("x-min", x_min).num("x-max", x_max).int("steps", steps);
    emit("potential", echo, &table, output, out)?;
    Ok(None)
}

/// `(N, value)` for every grid point, evaluated in parallel, in grid order.
fn parallel_sweep(grid: &[f64], alpha_abs: f64, metric: Metric) -> CliResult<Vec<(f64, f64)>> {
    let values = grid.par_iter().map(|&n| sweep_point(n, alpha_abs, metric)).collect::<Result<Vec<_>, _>>()?;
    Ok(grid.iter().copied().zip(values).collect())
}

fn sweep_grid(metric: Metric, args: &SweepArgs) -> CliResult<Vec<f64>> {
    if args.trap.n_param.is_some() || args.trap.depth.is_some() {
        return Ok(vec![params_from(&args.trap)?.n_param()]);
    }
    let preset = if args.fig2_grid {
        Some(FIG2_GRID)
    } else if args.fig3_grid {
        Some(FIG3_GRID)
    } else {
        None
    };
    if let Some((lo, hi, steps)) = preset {
        return Ok(log_grid(lo, hi, steps)?);
    }
    let (lo, hi, default_steps) = match metric {
        Metric::MandelQ => FIG2_GRID,
        Metric::SqueezingS => FIG3_GRID,
    };
    let (lo, hi) = (args.n_min.unwrap_or(lo), args.n_max.unwrap_or(hi));
    let steps = args.steps.unwrap_or(default_steps);
    let log_scale = args.log_scale || (args.n_min.is_none() && args.n_max.is_none());
    Ok(if log_scale { log_grid(lo, hi, steps)? } else { linear_grid(lo, hi, steps)? })
}

fn sweep(metric: Metric, args: &SweepArgs, out: &mut dyn Write) -> CliResult<Option<i32>> {
    let grid = sweep_grid(metric, args)?;
    let mut table = Table::new(&["N", metric.name()]);
    for (n, v) in parallel_sweep(&grid, args.alpha_abs, metric)? {
        table.push(vec![n.into(), v.into()]);
    }
    let echo = Echo::default()
        .num("alpha-abs", args.alpha_abs)
        .trap(&args.trap)
        .opt_num("n-min", args.n_min)
        .opt_num("n-max", args.n_max)
        .flag("log-scale", args.log_scale)
        .flag("fig2-grid", args.fig2_grid)
        .flag("fig3-grid", args.fig3_grid);
    let echo = match args.steps {
        Some(s) => echo.int("steps", s),
        None => echo,
    };
    let command = match metric {
        Metric::MandelQ => "mandel",
        Metric::SqueezingS => "squeeze",
    };
    emit(command, echo, &table, &args.output, out)?;
    Ok(None)
}

fn quadrature(
    trap: &TrapArgs,
    alpha: &AlphaArg,
    phi: Option<f64>,
    steps: usize,
    output: &OutputArgs,
    out: &mut dyn Write,
) -> CliResult<Option<i32>> {
    let params = params_from(trap)?;
    let state = coherent_state(&params, alpha.alpha)?;
    let angles: Vec<f64> = match phi {
        Some(phi) if phi.is_finite() => vec![phi],
        Some(phi) => return Err(CliError::Usage(format!("--phi must be finite, got {phi}"))),
        None => (0..steps).map(|k| PI * k as f64 / steps as f64).collect(),
    };
    let mut table = Table::new(&["phi", "var_q", "var_p", "product"]);
    for phi in angles {
        let r = quadrature_variance(&state, phi);
        table.push(vec![phi.into(), r.var_q.into(), r.var_p.into(), r.uncertainty_product().into()]);
    }
    let echo = Echo::default().trap(trap).alpha(alpha.alpha).opt_num("phi", phi);
    let echo = if phi.is_none() { echo.int("steps", steps) } else { echo };
    emit("quadrature", echo, &table, output, out)?;
    Ok(None)
}

fn state(trap: &TrapArgs, alpha: &AlphaArg, output: &OutputArgs, out: &mut dyn Write) -> CliResult<Option<i32>> {
    let params = params_from(trap)?;
    let state = coherent_state(&params, alpha.alpha)?;
    let mut table = Table::new(&["n", "re", "im", "probability"]);
    for (n, c) in state.coeffs().iter().enumerate() {
        table.push(vec![n.into(), c.re.into(), c.im.into(), c.norm_sqr().into()]);
    }
    emit("state", Echo::default().trap(trap).alpha(alpha.alpha), &table, output, out)?;
    Ok(None)
}

fn measure(
    trap: &TrapArgs,
    tol: f64,
    levels: Option<usize>,
    output: &OutputArgs,
    out: &mut dyn Write,
) -> CliResult<Option<i32>> {
    let params = params_from(trap)?;
    let count = match levels {
        Some(l) => l.min(params.num_bound()),
        None => params.num_bound(),
    };
    if count > MAX_AUDIT_LEVELS {
        return Err(CliError::Usage(format!(
            "{count} levels exceed the audit limit of {MAX_AUDIT_LEVELS}; pass --levels"
        )));
    }
    let reports = (0..count).into_par_iter().map(|n| moment_check(&params, n, tol)).collect::<Result<Vec<_>, _>>()?;
    let mut table = Table::new(&[
        "n",
        "nu_n",
        "l_n",
        "computed_moment",
        "closed_form",
        "target",
        "ratio",
        "quadrature_error",
        "flagged",
    ]);
    for r in reports {
        table.push(vec![
            r.n.into(),
            r.nu_n.into(),
            r.l_n.into(),
            r.computed_moment.into(),
            r.closed_form.into(),
            r.target.into(),
            r.ratio.into(),
            r.quadrature_error.into(),
            ((r.ratio - 1.0).abs() > RATIO_FLAG_TOL).into(),
        ]);
    }
    let mut echo = Echo::default().trap(trap).num("tol", tol);
    if let Some(l) = levels {
        echo = echo.int("levels", l);
    }
    emit("measure", echo, &table, output, out)?;
    Ok(None)
}

fn label_num(v: f64) -> String {
    format!("{v}")
}

/// Long-format data for figure 1, 2 or 3.
pub fn figure_table(figure: u8) -> CliResult<Table> {
    match figure {
        1 => {
            let mut table = Table::new(&["series", "D", "x", "V"]);
            let xs = linear_grid(FIG1_X.0, FIG1_X.1, FIG1_X.2)?;
            for depth in FIG1_DEPTHS {
                let params = TrapParams::from_depth(depth)?;
                let series = if depth == FIG1_DEPTHS[2] {
                    format!("D={} (harmonic proxy)", label_num(depth))
                } else {
                    format!("D={}", label_num(depth))
                };
                for &x in &xs {
                    table.push(vec![series.clone().into(), depth.into(), x.into(), potential(&params, x).into()]);
                }
            }
            Ok(table)
        }
        2 | 3 => {
            let (metric, (lo, hi, steps), alphas): (_, _, &[f64]) = if figure == 2 {
                (Metric::MandelQ, FIG2_GRID, &FIG2_ALPHAS)
            } else {
                (Metric::SqueezingS, FIG3_GRID, &FIG3_ALPHAS)
            };
            let grid = log_grid(lo, hi, steps)?;
            let mut table = Table::new(&["series", "alpha_abs", "N", metric.name()]);
            for &a in alphas {
                let series = format!("alpha_abs={}", label_num(a));
                for (n, v) in parallel_sweep(&grid, a, metric)? {
                    table.push(vec![series.clone().into(), a.into(), n.into(), v.into()]);
                }
            }
            Ok(table)
        }
        other => Err(CliError::Usage(format!("unknown figure {other}"))),
    }
}

fn figure_cmd(figure: u8, output: &OutputArgs, out: &mut dyn Write) -> CliResult<Option<i32>> {
    let table = figure_table(figure)?;
    emit("figure", Echo::default().int("figure", figure as usize), &table, output, out)?;
    Ok(None)
}

fn verify(
    trap: &TrapArgs,
    alpha: &AlphaArg,
    tol: f64,
    output: &OutputArgs,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CliResult<Option<i32>> {
    let params = params_from(trap)?;
    let checks = verify_suite(&params, alpha.alpha, tol)?;
    let mut table = Table::new(&["check", "passed", "value", "limit", "note"]);
    for c in &checks {
        table.push(vec![c.name.into(), c.passed.into(), c.value.into(), c.limit.into(), c.note.clone().into()]);
    }
    emit("verify", Echo::default().trap(trap).alpha(alpha.alpha).num("tol", tol), &table, output, out)?;
    let failed: Vec<_> = checks.iter().filter(|c| !c.passed).collect();
    for c in &failed {
        writeln!(err, "FAILED {} value={:e} limit={:e} {}", c.name, c.value, c.limit, c.note)?;
    }
    Ok(Some(if failed.is_empty() { EXIT_OK } else { EXIT_FAILED }))
}
