//! The computations behind each subcommand, returning tables so that the
//! same numbers can be checked against direct library calls.

use slabshift_core::asymptotics::{
    classify_regime, halfspace_w, nonretarded_shift, nonretarded_thin_shift, retarded_thin_shift, Regime, RegimeReport,
};
use slabshift_core::electrostatics::ImageSeriesSpec;
use slabshift_core::modes::all_trapped_modes;
use slabshift_core::shift::{energy_shift, transition_w_pairs, w_pair, QuadratureSpec};
use slabshift_core::system::reduce;
use slabshift_core::{ReducedParams, Slab};

use crate::config::{Setup, Units};
use crate::error::{CliError, CliResult};
use crate::table::{Cell, Table};

/// Above this `L/𝒵` a thin-slab formula makes no claim.
pub const THIN_RATIO_MAX: f64 = 0.1;

fn regime_cells(r: &RegimeReport) -> [Cell; 3] {
    [Cell::text(r.regime.as_str()), Cell::Float(r.two_zeta), Cell::Float(r.lambda_over_zeta)]
}

pub const SHIFT_COLUMNS: [&str; 13] = [
    "transition",
    "E_ji",
    "zeta",
    "lambda",
    "n",
    "w_par",
    "w_z",
    "err_est",
    "regime",
    "two_zeta",
    "lambda_over_zeta",
    "shift",
    "total_shift",
];

/// Per-transition breakdown of the full shift; the total is repeated on
/// every row.
pub fn shift_table(s: &Setup) -> CliResult<Table> {
    let w = transition_w_pairs(&s.atom, &s.slab, s.distance, &s.quad)?;
    let shift = slabshift_core::system::assemble_shift(&s.atom, s.distance, &w)?;
    let mut t = Table::new(&SHIFT_COLUMNS);
    for (i, (tr, wp)) in s.atom.transitions().iter().zip(&w).enumerate() {
        let p = reduce(&s.slab, tr, s.distance)?;
        let mut row = vec![Cell::Int(i as i64), Cell::Float(tr.energy())];
        row.extend([p.zeta, p.lambda, p.n, wp.w_par, wp.w_z, wp.err_est].map(Cell::Float));
        row.extend(regime_cells(&classify_regime(&p)));
        row.extend([Cell::Float(shift.per_transition[i]), Cell::Float(shift.value)]);
        t.push(row);
    }
    Ok(t)
}

pub const WFUN_COLUMNS: [&str; 11] =
    ["zeta", "lambda", "n", "w_par", "w_z", "hs_w_par", "hs_w_z", "err_est", "regime", "two_zeta", "lambda_over_zeta"];

pub fn wfun_row(p: &ReducedParams, q: &QuadratureSpec) -> CliResult<Vec<Cell>> {
    let w = w_pair(p, q)?;
    let hs = halfspace_w(p.zeta, p.n, q)?;
    let mut row: Vec<Cell> =
        [p.zeta, p.lambda, p.n, w.w_par, w.w_z, hs.w_par, hs.w_z, w.err_est].map(Cell::Float).into();
    row.extend(regime_cells(&classify_regime(p)));
    Ok(row)
}

pub fn wfun_table(points: &[ReducedParams], q: &QuadratureSpec) -> CliResult<Table> {
    let mut t = Table::new(&WFUN_COLUMNS);
    for p in points {
        t.push(wfun_row(p, q)?);
    }
    Ok(t)
}

pub const MODES_COLUMNS: [&str; 6] = ["pol", "parity", "k_par", "k_zd", "kappa", "residual"];

/// Trapped modes at transverse wave number `k_par`, in the units of the
/// input (natural, or nm⁻¹).
pub fn modes_table(k_par: f64, slab: &Slab, units: Units) -> CliResult<Table> {
    if !(k_par > 0.0 && k_par.is_finite()) {
        return Err(CliError::input(format!("k_par must be positive, got {k_par}")));
    }
    if !slab.thickness().is_finite() {
        return Err(CliError::input("trapped modes need a finite slab thickness"));
    }
    let u = units.system();
    // wave numbers transform as inverse lengths
    let to_natural = |k: f64| 1.0 / u.length(1.0 / k);
    let from_natural = |k: f64| k * u.length(1.0);
    let mut t = Table::new(&MODES_COLUMNS);
    for m in all_trapped_modes(to_natural(k_par), slab)? {
        t.push(vec![
            Cell::text(m.pol.as_str()),
            Cell::text(m.parity.as_str()),
            Cell::Float(k_par),
            Cell::Float(from_natural(m.k_zd)),
            Cell::Float(from_natural(m.kappa)),
            Cell::Float(m.residual),
        ]);
    }
    Ok(t)
}

pub const ASYMPT_COLUMNS: [&str; 11] =
    ["transition", "zeta", "lambda", "n", "regime", "formula", "value", "full", "rel_dev", "claim", "note"];

struct Candidate {
    name: &'static str,
    values: Vec<f64>,
    regime: Regime,
    thin: bool,
}

/// The full shift next to every closed form that can be evaluated for this
/// geometry. `claim` is `yes` only when the transition sits in the regime
/// the formula was derived for (and, for thin-slab formulas, `L/𝒵` is at
/// most [`THIN_RATIO_MAX`]).
pub fn asympt_table(s: &Setup) -> CliResult<Table> {
    let full = energy_shift(&s.atom, &s.slab, s.distance, &s.quad)?;
    let mut candidates = vec![Candidate {
        name: "nonretarded",
        values: nonretarded_shift(&s.atom, &s.slab, s.distance, &ImageSeriesSpec::default())?.shift.per_transition,
        regime: Regime::NonRetarded,
        thin: false,
    }];
    if s.slab.thickness().is_finite() {
        candidates.push(Candidate {
            name: "nonretarded_thin",
            values: nonretarded_thin_shift(&s.atom, &s.slab, s.distance)?.shift.per_transition,
            regime: Regime::NonRetarded,
            thin: true,
        });
        candidates.push(Candidate {
            name: "retarded_thin",
            values: retarded_thin_shift(&s.atom, &s.slab, s.distance)?.shift.per_transition,
            regime: Regime::Retarded,
            thin: true,
        });
    }
    let mut t = Table::new(&ASYMPT_COLUMNS);
    for (i, tr) in s.atom.transitions().iter().enumerate() {
        let p = reduce(&s.slab, tr, s.distance)?;
        let report = classify_regime(&p);
        let exact = full.per_transition[i];
        for c in &candidates {
            let value = c.values[i];
            let in_regime = report.regime == c.regime;
            let thin_ok = !c.thin || report.lambda_over_zeta <= THIN_RATIO_MAX;
            let note = match (report.regime, in_regime, thin_ok) {
                (Regime::Intermediate, ..) => "intermediate distance; no asymptotic form applies",
                (_, false, _) => "outside the formula's regime",
                (_, true, false) => "slab not thin compared with the distance",
                _ => "",
            };
            t.push(vec![
                Cell::Int(i as i64),
                Cell::Float(p.zeta),
                Cell::Float(p.lambda),
                Cell::Float(p.n),
                Cell::text(report.regime.as_str()),
                Cell::text(c.name),
                Cell::Float(value),
                Cell::Float(exact),
                Cell::Float((value - exact).abs() / exact.abs()),
                Cell::text(if in_regime && thin_ok { "yes" } else { "no" }),
                Cell::text(note),
            ]);
        }
    }
    Ok(t)
}
