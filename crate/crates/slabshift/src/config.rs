//! Run configuration: a TOML file with the keys below, overridable from the
//! command line.
//!
//! ```toml
//! units = "natural"          # or "eV-nm"
//! slab.n = 2.0
//! slab.L = 1.0               # or "inf" for a half-space
//! geometry.Z = 8.0
//! quad.rel_tol = 1e-8
//!
//! [[atom.transitions]]
//! E_ji = 1.0
//! mu_par_sq = 1.0
//! mu_perp_sq = 0.5
//! ```

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use slabshift_core::shift::QuadratureSpec;
use slabshift_core::units::UnitSystem;
use slabshift_core::{AtomSpec, Slab, Transition};

use crate::error::{CliError, CliResult};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
pub enum Units {
    #[default]
    #[serde(rename = "natural")]
    #[value(name = "natural")]
    Natural,
    #[serde(rename = "eV-nm")]
    #[value(name = "eV-nm")]
    ElectronVoltNanometre,
}

impl Units {
    pub fn system(self) -> UnitSystem {
        match self {
            Units::Natural => UnitSystem::Natural,
            Units::ElectronVoltNanometre => UnitSystem::ElectronVoltNanometre,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Units::Natural => "natural",
            Units::ElectronVoltNanometre => "eV-nm",
        }
    }
}

/// A length that may be spelled `"inf"`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "LengthRepr", into = "LengthRepr")]
pub struct Length(pub f64);

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum LengthRepr {
    Number(f64),
    Text(String),
}

impl TryFrom<LengthRepr> for Length {
    type Error = String;

    fn try_from(r: LengthRepr) -> Result<Self, String> {
        match r {
            LengthRepr::Number(x) => Ok(Length(x)),
            LengthRepr::Text(s) => s.parse(),
        }
    }
}

impl From<Length> for LengthRepr {
    fn from(l: Length) -> Self {
        if l.0.is_infinite() {
            LengthRepr::Text("inf".into())
        } else {
            LengthRepr::Number(l.0)
        }
    }
}

impl FromStr for Length {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim() {
            "inf" | "infinity" | "Inf" => Ok(Length(f64::INFINITY)),
            t => t.parse::<f64>().map(Length).map_err(|_| format!("not a length: {s:?}")),
        }
    }
}

impl fmt::Display for Length {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_infinite() {
            f.write_str("inf")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SlabSection {
    pub n: Option<f64>,
    #[serde(rename = "L")]
    pub thickness: Option<Length>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeometrySection {
    #[serde(rename = "Z")]
    pub distance: Option<f64>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransitionEntry {
    #[serde(rename = "E_ji")]
    pub energy: Option<f64>,
    pub mu_par_sq: Option<f64>,
    pub mu_perp_sq: Option<f64>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AtomSection {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub transitions: Vec<TransitionEntry>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadSection {
    pub rel_tol: Option<f64>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSection {
    pub axis: Option<String>,
    pub lo: Option<f64>,
    pub hi: Option<f64>,
    pub points: Option<usize>,
    pub scale: Option<String>,
    pub zeta: Option<Vec<f64>>,
    pub lambda: Option<Vec<Length>>,
    pub n: Option<Vec<f64>>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModesSection {
    pub k_par: Option<f64>,
}

fn is_default<T: Default + PartialEq>(value: &T) -> bool {
    *value == T::default()
}

/// The file as written, before validation.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub units: Option<Units>,
    #[serde(default, skip_serializing_if = "is_default")]
    pub slab: SlabSection,
    #[serde(default, skip_serializing_if = "is_default")]
    pub geometry: GeometrySection,
    #[serde(default, skip_serializing_if = "is_default")]
    pub atom: AtomSection,
    #[serde(default, skip_serializing_if = "is_default")]
    pub quad: QuadSection,
    pub sweep: Option<SweepSection>,
    pub modes: Option<ModesSection>,
}

impl ConfigFile {
    pub fn parse(text: &str) -> CliResult<Self> {
        toml::from_str(text).map_err(|e| CliError::input(format!("invalid configuration: {}", e.message())))
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// The file contents with command-line overrides folded in.
    pub fn with_overrides(mut self, o: &Overrides) -> Self {
        if o.units.is_some() {
            self.units = o.units;
        }
        if o.n.is_some() {
            self.slab.n = o.n;
        }
        if o.thickness.is_some() {
            self.slab.thickness = o.thickness;
        }
        if o.distance.is_some() {
            self.geometry.distance = o.distance;
        }
        if o.rel_tol.is_some() {
            self.quad.rel_tol = o.rel_tol;
        }
        if o.energy.is_some() || o.mu_par_sq.is_some() || o.mu_perp_sq.is_some() {
            let base = self.atom.transitions.first().cloned().unwrap_or_default();
            self.atom.transitions = vec![TransitionEntry {
                energy: o.energy.or(base.energy),
                mu_par_sq: o.mu_par_sq.or(base.mu_par_sq),
                mu_perp_sq: o.mu_perp_sq.or(base.mu_perp_sq),
            }];
        }
        self
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).unwrap_or_default()
    }
}

/// Command-line values that replace the corresponding file entries. Any of
/// the transition values replaces the file's transition list with a single
/// transition.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Overrides {
    pub units: Option<Units>,
    pub n: Option<f64>,
    pub thickness: Option<Length>,
    pub distance: Option<f64>,
    pub energy: Option<f64>,
    pub mu_par_sq: Option<f64>,
    pub mu_perp_sq: Option<f64>,
    pub rel_tol: Option<f64>,
}

fn required<T: Copy>(value: Option<T>, name: &str) -> CliResult<T> {
    value.ok_or_else(|| CliError::input(format!("missing required field `{name}`")))
}

fn context(name: &str) -> impl Fn(slabshift_core::Error) -> CliError + '_ {
    move |e| CliError::input(format!("{name}: {e}"))
}

pub fn units_of(file: &ConfigFile) -> Units {
    file.units.unwrap_or_default()
}

pub fn quadrature(file: &ConfigFile) -> CliResult<QuadratureSpec> {
    let mut q = QuadratureSpec::default();
    if let Some(tol) = file.quad.rel_tol {
        q = q.with_rel_tol(tol);
    }
    q.validate().map_err(context("quad.rel_tol"))?;
    Ok(q)
}

/// The slab, converted to natural units.
pub fn slab(file: &ConfigFile) -> CliResult<Slab> {
    let u = units_of(file).system();
    let n = required(file.slab.n, "slab.n")?;
    let l = required(file.slab.thickness, "slab.L")?.0;
    Slab::new(n, u.length(l)).map_err(context("slab"))
}

/// The atom, converted to natural units.
pub fn atom(file: &ConfigFile) -> CliResult<AtomSpec> {
    let u = units_of(file).system();
    if file.atom.transitions.is_empty() {
        return Err(CliError::input("missing required field `atom.transitions`"));
    }
    let ts = file
        .atom
        .transitions
        .iter()
        .enumerate()
        .map(|(i, t)| {
            let name = |f: &str| format!("atom.transitions[{i}].{f}");
            let e = required(t.energy, &name("E_ji"))?;
            let par = required(t.mu_par_sq, &name("mu_par_sq"))?;
            let perp = required(t.mu_perp_sq, &name("mu_perp_sq"))?;
            Transition::new(u.energy(e), u.dipole_sq(par), u.dipole_sq(perp))
                .map_err(|err| CliError::input(format!("atom.transitions[{i}]: {err}")))
        })
        .collect::<CliResult<Vec<_>>>()?;
    AtomSpec::new(ts).map_err(context("atom"))
}

/// The atom-surface distance, converted to natural units.
pub fn distance(file: &ConfigFile) -> CliResult<f64> {
    let z = required(file.geometry.distance, "geometry.Z")?;
    if !(z > 0.0 && z.is_finite()) {
        return Err(CliError::input(format!("geometry.Z must be positive and finite, got {z}")));
    }
    Ok(units_of(file).system().length(z))
}

/// A fully validated single-point problem.
#[derive(Clone, Debug, PartialEq)]
pub struct Setup {
    pub units: Units,
    pub slab: Slab,
    pub atom: AtomSpec,
    pub distance: f64,
    pub quad: QuadratureSpec,
}

impl Setup {
    pub fn from_file(file: &ConfigFile) -> CliResult<Self> {
        Ok(Setup {
            units: units_of(file),
            slab: slab(file)?,
            atom: atom(file)?,
            distance: distance(file)?,
            quad: quadrature(file)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const FULL: &str = r#"
units = "natural"
slab.n = 2.0
slab.L = 1.0
geometry.Z = 8.0
quad.rel_tol = 1e-9

[[atom.transitions]]
E_ji = 1.0
mu_par_sq = 1.0
mu_perp_sq = 0.5
"#;

    #[test]
    fn parses_dotted_keys() {
        let s = Setup::from_file(&ConfigFile::parse(FULL).unwrap()).unwrap();
        assert_eq!(s.slab, Slab::new(2.0, 1.0).unwrap());
        assert_eq!(s.distance, 8.0);
        assert_eq!(s.quad.rel_tol, 1e-9);
        assert_eq!(s.atom.transitions().len(), 1);
    }

    #[test]
    fn infinite_thickness_spelled_inf() {
        let text = FULL.replace("slab.L = 1.0", "slab.L = \"inf\"");
        let s = Setup::from_file(&ConfigFile::parse(&text).unwrap()).unwrap();
        assert!(s.slab.thickness().is_infinite());
    }

    #[test]
    fn missing_field_is_named() {
        let text = FULL.replace("E_ji = 1.0\n", "");
        let err = Setup::from_file(&ConfigFile::parse(&text).unwrap()).unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(err.to_string().contains("atom.transitions[0].E_ji"), "{err}");
        let err = Setup::from_file(&ConfigFile::parse("slab.n = 2.0").unwrap()).unwrap_err();
        assert!(err.to_string().contains("slab.L"));
    }

    #[test]
    fn unknown_keys_rejected() {
        assert!(ConfigFile::parse("slab.m = 2.0").is_err());
    }

    #[test]
    fn overrides_replace_file_values() {
        let o = Overrides { n: Some(3.0), energy: Some(2.0), ..Default::default() };
        let file = ConfigFile::parse(FULL).unwrap().with_overrides(&o);
        let s = Setup::from_file(&file).unwrap();
        assert_eq!(s.slab.n(), 3.0);
        let t = s.atom.transitions()[0];
        assert_eq!((t.energy(), t.mu_par_sq()), (2.0, 1.0));
    }

    #[test]
    fn electron_volt_nanometre_inputs_are_converted() {
        let text = FULL.replace("\"natural\"", "\"eV-nm\"");
        let s = Setup::from_file(&ConfigFile::parse(&text).unwrap()).unwrap();
        assert!((s.distance - 8.0 / slabshift_core::units::HBAR_C_EV_NM).abs() < 1e-16);
    }

    #[test]
    fn round_trips_through_toml() {
        let file = ConfigFile::parse(&FULL.replace("slab.L = 1.0", "slab.L = \"inf\"")).unwrap();
        assert_eq!(ConfigFile::parse(&file.to_toml()).unwrap(), file);
    }
}
