use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use slabshift_core::shift::QuadratureSpec;
use slabshift_core::system::reduce;
use slabshift_core::ReducedParams;

use crate::commands;
use crate::config::{self, ConfigFile, Length, Overrides, Setup, SweepSection, Units};
use crate::error::{CliError, CliResult};
use crate::sweep::{self, Axis, Scale, SweepSpec};
use crate::table::{Format, Manifest, Table};

/// Casimir-Polder energy shift of a ground-state atom near a dielectric slab.
#[derive(Debug, Parser)]
#[command(name = "slabshift", version)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// TOML configuration file; flags override its entries
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Write the table here instead of standard output
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Worker threads for sweeps (default: one per core)
    #[arg(long, global = true, env = "SLABSHIFT_JOBS")]
    pub jobs: Option<usize>,
    /// Relative tolerance of the nested quadrature
    #[arg(long, global = true)]
    pub rel_tol: Option<f64>,
    #[arg(long, global = true, value_enum)]
    pub units: Option<Units>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Full energy shift with a per-transition breakdown
    Shift(PointArgs),
    /// W functions at reduced parameters (or for each configured transition)
    Wfun(WfunArgs),
    /// W functions over a one-dimensional grid of reduced parameters
    Sweep(SweepArgs),
    /// Trapped slab modes at one transverse wave number
    Modes(ModesArgs),
    /// Full shift next to the closed-form limits and their deviations
    Asympt(PointArgs),
}

#[derive(Debug, Args, Default)]
pub struct PointArgs {
    /// Refractive index of the slab
    #[arg(long)]
    pub n: Option<f64>,
    /// Slab thickness, or "inf" for a half-space
    #[arg(long, visible_alias = "L")]
    pub thickness: Option<Length>,
    /// Atom-surface distance
    #[arg(long, visible_alias = "Z")]
    pub distance: Option<f64>,
    /// Transition energy (replaces the configured transitions by one)
    #[arg(long)]
    pub energy: Option<f64>,
    #[arg(long)]
    pub mu_par_sq: Option<f64>,
    #[arg(long)]
    pub mu_perp_sq: Option<f64>,
}

#[derive(Debug, Args)]
pub struct WfunArgs {
    #[arg(long, requires_all = ["lambda", "n"])]
    pub zeta: Option<f64>,
    #[arg(long)]
    pub lambda: Option<Length>,
    #[command(flatten)]
    pub point: PointArgs,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, value_enum)]
    pub axis: Option<Axis>,
    #[arg(long)]
    pub lo: Option<f64>,
    #[arg(long)]
    pub hi: Option<f64>,
    #[arg(long)]
    pub points: Option<usize>,
    #[arg(long, value_enum)]
    pub scale: Option<Scale>,
    /// Fixed ζ values, comma separated
    #[arg(long, value_delimiter = ',')]
    pub zeta: Vec<f64>,
    /// Fixed λ values, comma separated ("inf" allowed)
    #[arg(long, value_delimiter = ',')]
    pub lambda: Vec<Length>,
    /// Fixed n values, comma separated
    #[arg(long, value_delimiter = ',')]
    pub n: Vec<f64>,
}

#[derive(Debug, Args)]
pub struct ModesArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub k_par: Option<f64>,
    #[arg(long)]
    pub n: Option<f64>,
    #[arg(long, visible_alias = "L")]
    pub thickness: Option<Length>,
}

impl PointArgs {
    fn overrides(&self, g: &GlobalArgs) -> Overrides {
        Overrides {
            units: g.units,
            n: self.n,
            thickness: self.thickness,
            distance: self.distance,
            energy: self.energy,
            mu_par_sq: self.mu_par_sq,
            mu_perp_sq: self.mu_perp_sq,
            rel_tol: g.rel_tol,
        }
    }
}

fn load(g: &GlobalArgs) -> CliResult<ConfigFile> {
    match &g.config {
        Some(path) => ConfigFile::load(path),
        None => Ok(ConfigFile::default()),
    }
}

fn quad_manifest(m: Manifest, q: &QuadratureSpec) -> Manifest {
    m.entry("quad.rel_tol", format!("{:e}", q.rel_tol))
        .entry("quad.abs_tol", format!("{:e}", q.abs_tol))
        .entry("quad.s_cutoff_decades", q.s_cutoff_decades)
        .entry("quad.max_subdivisions", q.max_subdivisions)
}

fn emit(g: &GlobalArgs, table: &Table, manifest: &Manifest) -> CliResult<()> {
    match &g.output {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            table.write(manifest, g.format, &mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            table.write(manifest, g.format, &mut w)?;
            w.flush()?;
        }
    }
    Ok(())
}

fn point_command(name: &str, args: &PointArgs, g: &GlobalArgs) -> CliResult<()> {
    let file = load(g)?.with_overrides(&args.overrides(g));
    let setup = Setup::from_file(&file)?;
    let table = match name {
        "shift" => commands::shift_table(&setup)?,
        _ => commands::asympt_table(&setup)?,
    };
    let manifest = quad_manifest(Manifest::new(name).entry("units", setup.units.as_str()), &setup.quad)
        .with_config(file.to_toml());
    emit(g, &table, &manifest)
}

fn wfun_command(args: &WfunArgs, g: &GlobalArgs) -> CliResult<()> {
    let file = load(g)?.with_overrides(&args.point.overrides(g));
    let quad = config::quadrature(&file)?;
    let points = match (args.zeta, args.lambda, args.point.n) {
        (Some(zeta), Some(lambda), Some(n)) => {
            vec![ReducedParams::new(zeta, lambda.0, n).map_err(|e| CliError::input(e.to_string()))?]
        }
        _ => {
            let setup = Setup::from_file(&file)?;
            setup.atom.transitions().iter().map(|t| reduce(&setup.slab, t, setup.distance)).collect::<Result<_, _>>()?
        }
    };
    let table = commands::wfun_table(&points, &quad)?;
    let manifest = quad_manifest(Manifest::new("wfun"), &quad).with_config(file.to_toml());
    emit(g, &table, &manifest)
}

fn sweep_spec(args: &SweepArgs, section: Option<SweepSection>) -> CliResult<SweepSpec> {
    let s = section.unwrap_or_default();
    let need =
        |v: Option<f64>, name: &str| v.ok_or_else(|| CliError::input(format!("missing required field `sweep.{name}`")));
    let axis = match (args.axis, &s.axis) {
        (Some(a), _) => a,
        (None, Some(text)) => text.parse()?,
        (None, None) => return Err(CliError::input("missing required field `sweep.axis`")),
    };
    let scale = match (args.scale, &s.scale) {
        (Some(sc), _) => sc,
        (None, Some(text)) => text.parse()?,
        (None, None) => Scale::Lin,
    };
    let pick =
        |flag: &[f64], file: Option<Vec<f64>>| if flag.is_empty() { file.unwrap_or_default() } else { flag.to_vec() };
    let lambda_flag: Vec<f64> = args.lambda.iter().map(|l| l.0).collect();
    Ok(SweepSpec {
        axis,
        lo: need(args.lo.or(s.lo), "lo")?,
        hi: need(args.hi.or(s.hi), "hi")?,
        points: args.points.or(s.points).ok_or_else(|| CliError::input("missing required field `sweep.points`"))?,
        scale,
        zeta: pick(&args.zeta, s.zeta),
        lambda: pick(&lambda_flag, s.lambda.map(|v| v.into_iter().map(|l| l.0).collect())),
        n: pick(&args.n, s.n),
    })
}

fn sweep_command(args: &SweepArgs, g: &GlobalArgs) -> CliResult<()> {
    let mut file = load(g)?;
    if g.rel_tol.is_some() {
        file.quad.rel_tol = g.rel_tol;
    }
    let quad = config::quadrature(&file)?;
    let spec = sweep_spec(args, file.sweep.clone())?;
    let rows = sweep::run(&spec, &quad, g.jobs)?;
    let lists = |v: &[f64]| v.iter().map(|x| Length(*x).to_string()).collect::<Vec<_>>().join(";");
    let manifest = quad_manifest(Manifest::new("sweep"), &quad)
        .entry("sweep.axis", format!("{:?}", spec.axis).to_lowercase())
        .entry("sweep.lo", spec.lo)
        .entry("sweep.hi", spec.hi)
        .entry("sweep.points", spec.points)
        .entry("sweep.scale", format!("{:?}", spec.scale).to_lowercase())
        .entry("sweep.zeta", lists(&spec.zeta))
        .entry("sweep.lambda", lists(&spec.lambda))
        .entry("sweep.n", lists(&spec.n))
        .entry("shift", "level shift for E_ji = 1 and unit dipole squares");
    emit(g, &sweep::to_table(&rows), &manifest)?;
    match sweep::failures(&rows) {
        0 => Ok(()),
        failed => Err(CliError::PartialSweep { failed, total: rows.len() }),
    }
}

fn modes_command(args: &ModesArgs, g: &GlobalArgs) -> CliResult<()> {
    let overrides = Overrides { units: g.units, n: args.n, thickness: args.thickness, ..Default::default() };
    let file = load(g)?.with_overrides(&overrides);
    let k_par = args
        .k_par
        .or(file.modes.as_ref().and_then(|m| m.k_par))
        .ok_or_else(|| CliError::input("missing required field `modes.k_par`"))?;
    let slab = config::slab(&file)?;
    let units = config::units_of(&file);
    let table = commands::modes_table(k_par, &slab, units)?;
    let manifest = Manifest::new("modes").entry("units", units.as_str()).with_config(file.to_toml());
    emit(g, &table, &manifest)
}

pub fn run(cli: &Cli) -> CliResult<()> {
    let g = &cli.global;
    match &cli.command {
        Command::Shift(a) => point_command("shift", a, g),
        Command::Asympt(a) => point_command("asympt", a, g),
        Command::Wfun(a) => wfun_command(a, g),
        Command::Sweep(a) => sweep_command(a, g),
        Command::Modes(a) => modes_command(a, g),
    }
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("slabshift: {e}");
            e.exit_code()
        }
    }
}
