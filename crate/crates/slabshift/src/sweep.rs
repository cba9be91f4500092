//! Parameter sweeps over one reduced parameter, evaluated in a worker pool.

use std::f64::consts::PI;
use std::str::FromStr;

use rayon::prelude::*;
use slabshift_core::asymptotics::{classify_regime, halfspace_w};
use slabshift_core::shift::WPair;
use slabshift_core::shift::{w_pair, QuadratureSpec};
use slabshift_core::ReducedParams;

use crate::error::{CliError, CliResult};
use crate::table::{Cell, Table};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Axis {
    Zeta,
    Lambda,
    N,
}

impl FromStr for Axis {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        match s {
            "zeta" => Ok(Axis::Zeta),
            "lambda" => Ok(Axis::Lambda),
            "n" => Ok(Axis::N),
            _ => Err(CliError::input(format!("sweep.axis must be zeta, lambda or n, got {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Scale {
    #[default]
    Lin,
    Log,
}

impl FromStr for Scale {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        match s {
            "lin" | "linear" => Ok(Scale::Lin),
            "log" => Ok(Scale::Log),
            _ => Err(CliError::input(format!("sweep.scale must be lin or log, got {s:?}"))),
        }
    }
}

/// One swept axis plus lists of values for the two fixed parameters; every
/// combination of fixed values gets its own curve.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepSpec {
    pub axis: Axis,
    pub lo: f64,
    pub hi: f64,
    pub points: usize,
    pub scale: Scale,
    pub zeta: Vec<f64>,
    pub lambda: Vec<f64>,
    pub n: Vec<f64>,
}

impl SweepSpec {
    pub fn validate(&self) -> CliResult<()> {
        if !(self.lo < self.hi) || !self.lo.is_finite() || !self.hi.is_finite() {
            return Err(CliError::input(format!("sweep range needs lo < hi (finite), got [{}, {}]", self.lo, self.hi)));
        }
        if self.points < 2 {
            return Err(CliError::input(format!("sweep.points must be at least 2, got {}", self.points)));
        }
        if self.scale == Scale::Log && self.lo <= 0.0 {
            return Err(CliError::input("a log sweep needs lo > 0"));
        }
        for (name, list, axis) in
            [("zeta", &self.zeta, Axis::Zeta), ("lambda", &self.lambda, Axis::Lambda), ("n", &self.n, Axis::N)]
        {
            if axis != self.axis && list.is_empty() {
                return Err(CliError::input(format!("missing required field `sweep.{name}`")));
            }
        }
        for p in self.grid() {
            ReducedParams::new(p.0, p.1, p.2).map_err(|e| CliError::input(format!("sweep point: {e}")))?;
        }
        Ok(())
    }

    pub fn axis_values(&self) -> Vec<f64> {
        let last = (self.points - 1) as f64;
        (0..self.points)
            .map(|i| {
                let f = i as f64 / last;
                if i == 0 {
                    return self.lo;
                }
                if i + 1 == self.points {
                    return self.hi;
                }
                match self.scale {
                    Scale::Lin => self.lo + f * (self.hi - self.lo),
                    Scale::Log => (self.lo.ln() + f * (self.hi.ln() - self.lo.ln())).exp(),
                }
            })
            .map(|x| x.clamp(self.lo, self.hi))
            .collect()
    }

    /// All `(ζ, λ, n)` points in output order: fixed values in the order
    /// given (ζ outermost, then λ, then n), the swept axis innermost.
    pub fn grid(&self) -> Vec<(f64, f64, f64)> {
        let axis = self.axis_values();
        let pick = |which: Axis, list: &[f64]| if self.axis == which { vec![f64::NAN] } else { list.to_vec() };
        let (zs, ls, ns) = (pick(Axis::Zeta, &self.zeta), pick(Axis::Lambda, &self.lambda), pick(Axis::N, &self.n));
        let mut out = Vec::with_capacity(zs.len() * ls.len() * ns.len() * axis.len());
        for &z in &zs {
            for &l in &ls {
                for &n in &ns {
                    for &a in &axis {
                        out.push(match self.axis {
                            Axis::Zeta => (a, l, n),
                            Axis::Lambda => (z, a, n),
                            Axis::N => (z, l, a),
                        });
                    }
                }
            }
        }
        out
    }
}

/// Result for one grid point; `outcome` holds the failure message if the
/// point could not be evaluated.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub params: (f64, f64, f64),
    pub outcome: Result<(WPair, WPair), String>,
}

pub fn evaluate_point(params: (f64, f64, f64), q: &QuadratureSpec) -> SweepRow {
    let (zeta, lambda, n) = params;
    let outcome = ReducedParams::new(zeta, lambda, n)
        .and_then(|p| Ok((w_pair(&p, q)?, halfspace_w(zeta, n, q)?)))
        .map_err(|e| e.to_string());
    SweepRow { params, outcome }
}

/// Evaluates every grid point on `jobs` worker threads. Each point is
/// independent, so the rows do not depend on the worker count.
pub fn run(spec: &SweepSpec, q: &QuadratureSpec, jobs: Option<usize>) -> CliResult<Vec<SweepRow>> {
    spec.validate()?;
    let grid = spec.grid();
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        builder = builder.num_threads(j.max(1));
    }
    let pool = builder.build().map_err(|e| CliError::input(format!("cannot start worker pool: {e}")))?;
    Ok(pool.install(|| grid.par_iter().map(|&p| evaluate_point(p, q)).collect()))
}

pub const COLUMNS: [&str; 11] =
    ["zeta", "lambda", "n", "w_par", "w_z", "hs_w_par", "hs_w_z", "shift", "err_est", "regime", "status"];

/// `shift` is the level shift of a transition with `E_ji = 1` and unit
/// dipole squares at distance `ζ`.
pub fn to_table(rows: &[SweepRow]) -> Table {
    let mut t = Table::new(&COLUMNS);
    for row in rows {
        let (zeta, lambda, n) = row.params;
        let regime = ReducedParams::new(zeta, lambda, n).map(|p| classify_regime(&p).regime.as_str()).unwrap_or("-");
        let mut cells = vec![Cell::Float(zeta), Cell::Float(lambda), Cell::Float(n)];
        match &row.outcome {
            Ok((w, hs)) => {
                let shift = -(w.w_par + w.w_z) / (16.0 * PI * PI * zeta.powi(4));
                cells.extend([w.w_par, w.w_z, hs.w_par, hs.w_z, shift, w.err_est].map(Cell::Float));
                cells.extend([Cell::text(regime), Cell::text("ok")]);
            }
            Err(msg) => {
                cells.extend([f64::NAN; 6].map(Cell::Float));
                cells.extend([Cell::text(regime), Cell::text(format!("failed: {msg}"))]);
            }
        }
        t.push(cells);
    }
    t
}

pub fn failures(rows: &[SweepRow]) -> usize {
    rows.iter().filter(|r| r.outcome.is_err()).count()
}
