//! Dimensioned quantities and physical constants.
//!
//! Gaussian-CGS is the canonical system. SI quantities are converted at the
//! boundary with [`Quantity::to_gaussian`] / [`Quantity::to_si`]. The natural
//! system sets ħ = c = m_e = 1 and keeps the Gaussian charge convention
//! (e² = α), so symbolic dimensions are tracked in the same L, M, T basis.

use std::fmt;
use std::ops::{Div, Mul};
use std::str::FromStr;
use std::sync::OnceLock;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact rational exponent.
pub type Exponent = Ratio<i32>;

const fn ex(n: i32, d: i32) -> Exponent {
    Ratio::new_raw(n, d)
}

const ZERO: Exponent = ex(0, 1);

/// Exponents of length, mass, time and (SI only) charge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Dimension {
    pub length: Exponent,
    pub mass: Exponent,
    pub time: Exponent,
    pub charge: Exponent,
}

impl Dimension {
    pub const DIMENSIONLESS: Dimension = Dimension::ints(0, 0, 0);
    pub const LENGTH: Dimension = Dimension::ints(1, 0, 0);
    pub const MASS: Dimension = Dimension::ints(0, 1, 0);
    pub const TIME: Dimension = Dimension::ints(0, 0, 1);
    pub const AREA: Dimension = Dimension::ints(2, 0, 0);
    pub const VELOCITY: Dimension = Dimension::ints(1, 0, -1);
    pub const FREQUENCY: Dimension = Dimension::ints(0, 0, -1);
    pub const FORCE: Dimension = Dimension::ints(1, 1, -2);
    pub const ENERGY: Dimension = Dimension::ints(2, 1, -2);
    pub const ACTION: Dimension = Dimension::ints(2, 1, -1);

    /// SI coulomb.
    pub const SI_CHARGE: Dimension = Dimension {
        length: ZERO,
        mass: ZERO,
        time: ZERO,
        charge: ex(1, 1),
    };

    /// Gaussian statcoulomb, g^1/2 cm^3/2 s^-1.
    pub const GAUSSIAN_CHARGE: Dimension = Dimension {
        length: ex(3, 2),
        mass: ex(1, 2),
        time: ex(-1, 1),
        charge: ZERO,
    };

    /// Gaussian magnetic field (gauss), g^1/2 cm^-1/2 s^-1.
    pub const GAUSSIAN_FIELD: Dimension = Dimension {
        length: ex(-1, 2),
        mass: ex(1, 2),
        time: ex(-1, 1),
        charge: ZERO,
    };

    /// SI magnetic field (tesla), kg s^-1 C^-1.
    pub const SI_FIELD: Dimension = Dimension {
        length: ZERO,
        mass: ex(1, 1),
        time: ex(-1, 1),
        charge: ex(-1, 1),
    };

    pub const fn ints(length: i32, mass: i32, time: i32) -> Dimension {
        Dimension {
            length: ex(length, 1),
            mass: ex(mass, 1),
            time: ex(time, 1),
            charge: ZERO,
        }
    }

    pub fn is_dimensionless(&self) -> bool {
        *self == Dimension::DIMENSIONLESS
    }

    pub fn pow(self, p: Exponent) -> Dimension {
        Dimension {
            length: self.length * p,
            mass: self.mass * p,
            time: self.time * p,
            charge: self.charge * p,
        }
    }

    pub fn powi(self, p: i32) -> Dimension {
        self.pow(ex(p, 1))
    }

    pub fn sqrt(self) -> Dimension {
        self.pow(ex(1, 2))
    }

    pub fn charge(system: UnitSystem) -> Dimension {
        match system {
            UnitSystem::Si => Dimension::SI_CHARGE,
            UnitSystem::Gaussian | UnitSystem::Natural => Dimension::GAUSSIAN_CHARGE,
        }
    }

    pub fn current(system: UnitSystem) -> Dimension {
        Dimension::charge(system) / Dimension::TIME
    }

    pub fn magnetic_field(system: UnitSystem) -> Dimension {
        match system {
            UnitSystem::Si => Dimension::SI_FIELD,
            UnitSystem::Gaussian | UnitSystem::Natural => Dimension::GAUSSIAN_FIELD,
        }
    }

    pub fn magnetic_flux(system: UnitSystem) -> Dimension {
        Dimension::magnetic_field(system) * Dimension::AREA
    }

    /// Electric resistance: energy·time / charge².
    pub fn resistance(system: UnitSystem) -> Dimension {
        Dimension::ENERGY * Dimension::TIME / Dimension::charge(system).powi(2)
    }
}

impl Mul for Dimension {
    type Output = Dimension;
    fn mul(self, rhs: Dimension) -> Dimension {
        Dimension {
            length: self.length + rhs.length,
            mass: self.mass + rhs.mass,
            time: self.time + rhs.time,
            charge: self.charge + rhs.charge,
        }
    }
}

impl Div for Dimension {
    type Output = Dimension;
    fn div(self, rhs: Dimension) -> Dimension {
        Dimension {
            length: self.length - rhs.length,
            mass: self.mass - rhs.mass,
            time: self.time - rhs.time,
            charge: self.charge - rhs.charge,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum UnitSystem {
    Gaussian,
    Si,
    Natural,
}

impl UnitSystem {
    pub fn as_str(&self) -> &'static str {
        match self {
            UnitSystem::Gaussian => "gaussian",
            UnitSystem::Si => "si",
            UnitSystem::Natural => "natural",
        }
    }

    /// Base unit symbols for (length, mass, time, charge).
    fn base_symbols(&self) -> [&'static str; 4] {
        match self {
            UnitSystem::Gaussian => ["cm", "g", "s", "statC"],
            UnitSystem::Si => ["m", "kg", "s", "C"],
            UnitSystem::Natural => ["l", "m", "t", "q"],
        }
    }
}

impl fmt::Display for UnitSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for UnitSystem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "gaussian" | "cgs" => Ok(UnitSystem::Gaussian),
            "si" => Ok(UnitSystem::Si),
            "natural" => Ok(UnitSystem::Natural),
            other => Err(Error::Config(format!(
                "unknown unit system '{other}' (expected gaussian, si or natural)"
            ))),
        }
    }
}

/// A real value with its dimension and unit system.
///
/// `*` and `/` compose dimensions and panic if the two operands belong to
/// different unit systems; `+` and `-` are only available through the
/// checked [`Quantity::try_add`] / [`Quantity::try_sub`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Quantity {
    pub value: f64,
    pub dim: Dimension,
    pub system: UnitSystem,
}

impl Quantity {
    pub fn new(value: f64, dim: Dimension, system: UnitSystem) -> Self {
        Quantity { value, dim, system }
    }

    pub fn dimensionless(value: f64, system: UnitSystem) -> Self {
        Quantity::new(value, Dimension::DIMENSIONLESS, system)
    }

    pub fn try_add(&self, rhs: &Quantity) -> Result<Quantity> {
        self.same_kind(rhs)?;
        Ok(Quantity::new(self.value + rhs.value, self.dim, self.system))
    }

    pub fn try_sub(&self, rhs: &Quantity) -> Result<Quantity> {
        self.same_kind(rhs)?;
        Ok(Quantity::new(self.value - rhs.value, self.dim, self.system))
    }

    fn same_kind(&self, rhs: &Quantity) -> Result<()> {
        if self.system != rhs.system {
            return Err(Error::domain(
                "unit system",
                format!("cannot combine {} with {}", self.system, rhs.system),
            ));
        }
        if self.dim != rhs.dim {
            return Err(Error::domain(
                "dimension",
                format!("cannot add {} to {}", self.unit_label(), rhs.unit_label()),
            ));
        }
        Ok(())
    }

    pub fn powi(&self, p: i32) -> Quantity {
        Quantity::new(self.value.powi(p), self.dim.powi(p), self.system)
    }

    pub fn pow(&self, p: Exponent) -> Quantity {
        let exponent = f64::from(*p.numer()) / f64::from(*p.denom());
        Quantity::new(self.value.powf(exponent), self.dim.pow(p), self.system)
    }

    pub fn sqrt(&self) -> Quantity {
        Quantity::new(self.value.sqrt(), self.dim.sqrt(), self.system)
    }

    pub fn scale(&self, factor: f64) -> Quantity {
        Quantity::new(self.value * factor, self.dim, self.system)
    }

    /// Errors unless `self` has dimension `expected` and a finite value > 0.
    pub fn require_positive(&self, param: &str, expected: Dimension) -> Result<f64> {
        if self.dim != expected {
            return Err(Error::domain(
                param,
                format!(
                    "wrong dimension {}, expected {}",
                    self.unit_label(),
                    Quantity::new(1.0, expected, self.system).unit_label()
                ),
            ));
        }
        crate::error::require_positive(param, self.value)
    }

    /// Unit string built from the system's base units, e.g. `g^1/2 cm^3/2 s^-1`.
    pub fn unit_label(&self) -> String {
        if self.dim.is_dimensionless() {
            return "1".to_string();
        }
        let symbols = self.system.base_symbols();
        // Mass first, matching the usual way CGS units are written.
        let parts = [
            (symbols[1], self.dim.mass),
            (symbols[0], self.dim.length),
            (symbols[2], self.dim.time),
            (symbols[3], self.dim.charge),
        ];
        let mut out = Vec::new();
        for (symbol, exp) in parts {
            if exp == ZERO {
                continue;
            }
            if exp == ex(1, 1) {
                out.push(symbol.to_string());
            } else {
                out.push(format!("{symbol}^{exp}"));
            }
        }
        let label = out.join(" ");
        if self.system == UnitSystem::Natural {
            format!("natural[{label}]")
        } else {
            label
        }
    }

    /// Converts an SI quantity to Gaussian-CGS. Gaussian input is returned
    /// unchanged; natural-unit input is rejected.
    ///
    /// Magnetic field and flux get their own factors (1 T = 1e4 G,
    /// 1 Wb = 1e8 Mx) because the Lorentz force carries an extra 1/c in
    /// Gaussian units; every other dimension maps through m→cm, kg→g and
    /// C→statC.
    pub fn to_gaussian(&self) -> Result<Quantity> {
        match self.system {
            UnitSystem::Gaussian => Ok(*self),
            UnitSystem::Natural => Err(Error::Config(
                "natural-unit quantities cannot be converted without a mass scale".into(),
            )),
            UnitSystem::Si => {
                let (factor, dim) = si_to_gaussian_map(self.dim)?;
                Ok(Quantity::new(
                    self.value * factor,
                    dim,
                    UnitSystem::Gaussian,
                ))
            }
        }
    }

    /// Converts a Gaussian quantity to the SI dimension `target`.
    pub fn to_si(&self, target: Dimension) -> Result<Quantity> {
        match self.system {
            UnitSystem::Si if self.dim == target => Ok(*self),
            UnitSystem::Gaussian => {
                let (factor, dim) = si_to_gaussian_map(target)?;
                if dim != self.dim {
                    return Err(Error::domain(
                        "dimension",
                        format!(
                            "{} does not correspond to SI {}",
                            self.unit_label(),
                            Quantity::new(1.0, target, UnitSystem::Si).unit_label()
                        ),
                    ));
                }
                Ok(Quantity::new(self.value / factor, target, UnitSystem::Si))
            }
            _ => Err(Error::Config(format!(
                "cannot convert {} quantity to SI {}",
                self.system,
                Quantity::new(1.0, target, UnitSystem::Si).unit_label()
            ))),
        }
    }
}

fn ratio_to_f64(r: Exponent) -> f64 {
    f64::from(*r.numer()) / f64::from(*r.denom())
}

/// Multiplicative factor and Gaussian dimension for an SI dimension.
fn si_to_gaussian_map(dim: Dimension) -> Result<(f64, Dimension)> {
    let flux = Dimension::SI_FIELD * Dimension::AREA;
    if dim == Dimension::SI_FIELD {
        return Ok((1.0e4, Dimension::GAUSSIAN_FIELD));
    }
    if dim == flux {
        return Ok((1.0e8, Dimension::GAUSSIAN_FIELD * Dimension::AREA));
    }
    let si = si_values();
    let statc_per_coulomb = 10.0 * si.c;
    let factor = 100f64.powf(ratio_to_f64(dim.length))
        * 1000f64.powf(ratio_to_f64(dim.mass))
        * statc_per_coulomb.powf(ratio_to_f64(dim.charge));
    let mechanical = Dimension {
        charge: ZERO,
        ..dim
    };
    Ok((
        factor,
        mechanical * Dimension::GAUSSIAN_CHARGE.pow(dim.charge),
    ))
}

/// True iff `q` has exactly the dimension `expected`.
pub fn check_dimension(q: &Quantity, expected: Dimension) -> bool {
    q.dim == expected
}

impl Mul for Quantity {
    type Output = Quantity;
    fn mul(self, rhs: Quantity) -> Quantity {
        assert_eq!(self.system, rhs.system, "mixed unit systems in product");
        Quantity::new(self.value * rhs.value, self.dim * rhs.dim, self.system)
    }
}

impl Div for Quantity {
    type Output = Quantity;
    fn div(self, rhs: Quantity) -> Quantity {
        assert_eq!(self.system, rhs.system, "mixed unit systems in quotient");
        Quantity::new(self.value / rhs.value, self.dim / rhs.dim, self.system)
    }
}

impl Mul<f64> for Quantity {
    type Output = Quantity;
    fn mul(self, rhs: f64) -> Quantity {
        self.scale(rhs)
    }
}

impl Div<f64> for Quantity {
    type Output = Quantity;
    fn div(self, rhs: f64) -> Quantity {
        self.scale(1.0 / rhs)
    }
}

/// Raw SI values read from a constants data file.
#[derive(Clone, Debug, PartialEq)]
pub struct SiValues {
    pub snapshot: String,
    pub hbar: f64,
    pub c: f64,
    pub e: f64,
    pub m_e: f64,
    pub m_p: f64,
    pub alpha: f64,
    pub a0: f64,
    pub eps0: f64,
}

/// The constants file shipped with the crate.
pub const CODATA_2018: &str = include_str!("../data/codata2018.txt");

impl SiValues {
    /// Parses `name = value # unit` lines. Blank lines and lines starting
    /// with `#` are skipped.
    pub fn parse(text: &str) -> Result<SiValues> {
        let mut snapshot = None;
        let mut values = std::collections::HashMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let body = line.split('#').next().unwrap_or("").trim();
            let (name, value) = body.split_once('=').ok_or_else(|| {
                Error::Config(format!(
                    "constants line {}: expected 'name = value'",
                    lineno + 1
                ))
            })?;
            let (name, value) = (name.trim(), value.trim());
            if name == "snapshot" {
                snapshot = Some(value.to_string());
                continue;
            }
            let parsed: f64 = value.parse().map_err(|_| {
                Error::Config(format!(
                    "constants line {}: bad number '{value}'",
                    lineno + 1
                ))
            })?;
            values.insert(name.to_string(), parsed);
        }
        let mut take = |key: &str| {
            values
                .remove(key)
                .ok_or_else(|| Error::Config(format!("constants file is missing '{key}'")))
        };
        Ok(SiValues {
            hbar: take("hbar")?,
            c: take("c")?,
            e: take("e")?,
            m_e: take("m_e")?,
            m_p: take("m_p")?,
            alpha: take("alpha")?,
            a0: take("a0")?,
            eps0: take("eps0")?,
            snapshot: snapshot.unwrap_or_else(|| "unnamed".to_string()),
        })
    }
}

/// Parsed shipped snapshot.
pub fn si_values() -> &'static SiValues {
    static VALUES: OnceLock<SiValues> = OnceLock::new();
    VALUES.get_or_init(|| SiValues::parse(CODATA_2018).expect("shipped constants file parses"))
}

/// Physical constants expressed in one unit system.
#[derive(Clone, Debug, PartialEq)]
pub struct ConstantsTable {
    pub system: UnitSystem,
    pub snapshot: String,
    pub hbar: Quantity,
    pub c: Quantity,
    pub e: Quantity,
    pub m_e: Quantity,
    pub m_p: Quantity,
    pub alpha: Quantity,
    pub a0: Quantity,
    /// Reduced Compton wavelength ħ/(m_e c).
    pub lambda_c: Quantity,
    /// Compton time ħ/(m_e c²).
    pub tau_c: Quantity,
    /// Vacuum permittivity, SI only.
    pub eps0: Option<Quantity>,
}

/// Constants for `system` from the shipped snapshot.
pub fn constants_for(system: UnitSystem) -> ConstantsTable {
    static TABLES: OnceLock<[ConstantsTable; 3]> = OnceLock::new();
    let tables = TABLES.get_or_init(|| {
        let si = si_values();
        [
            ConstantsTable::from_si(si, UnitSystem::Gaussian).expect("gaussian table"),
            ConstantsTable::from_si(si, UnitSystem::Si).expect("si table"),
            ConstantsTable::from_si(si, UnitSystem::Natural).expect("natural table"),
        ]
    });
    match system {
        UnitSystem::Gaussian => tables[0].clone(),
        UnitSystem::Si => tables[1].clone(),
        UnitSystem::Natural => tables[2].clone(),
    }
}

/// Like [`constants_for`] but from a textual tag.
pub fn constants_for_tag(tag: &str) -> Result<ConstantsTable> {
    Ok(constants_for(tag.parse()?))
}

impl ConstantsTable {
    pub fn from_si(si: &SiValues, system: UnitSystem) -> Result<ConstantsTable> {
        use Dimension as D;
        let q = |value, dim| Quantity::new(value, dim, system);
        let table = match system {
            UnitSystem::Si => {
                let hbar = q(si.hbar, D::ACTION);
                let c = q(si.c, D::VELOCITY);
                let m_e = q(si.m_e, D::MASS);
                let tau_c = hbar / (m_e * c.powi(2));
                ConstantsTable {
                    system,
                    snapshot: si.snapshot.clone(),
                    hbar,
                    c,
                    e: q(si.e, D::SI_CHARGE),
                    m_e,
                    m_p: q(si.m_p, D::MASS),
                    alpha: q(si.alpha, D::DIMENSIONLESS),
                    a0: q(si.a0, D::LENGTH),
                    lambda_c: c * tau_c,
                    tau_c,
                    eps0: Some(q(
                        si.eps0,
                        D::SI_CHARGE.powi(2) * D::TIME.powi(2) / (D::MASS * D::LENGTH.powi(3)),
                    )),
                }
            }
            UnitSystem::Gaussian => {
                let from_si = |value: f64, dim: Dimension| {
                    Quantity::new(value, dim, UnitSystem::Si).to_gaussian()
                };
                let hbar = from_si(si.hbar, D::ACTION)?;
                let c = from_si(si.c, D::VELOCITY)?;
                let m_e = from_si(si.m_e, D::MASS)?;
                let tau_c = hbar / (m_e * c.powi(2));
                ConstantsTable {
                    system,
                    snapshot: si.snapshot.clone(),
                    hbar,
                    c,
                    e: from_si(si.e, D::SI_CHARGE)?,
                    m_e,
                    m_p: from_si(si.m_p, D::MASS)?,
                    alpha: q(si.alpha, D::DIMENSIONLESS),
                    a0: from_si(si.a0, D::LENGTH)?,
                    lambda_c: c * tau_c,
                    tau_c,
                    eps0: None,
                }
            }
            UnitSystem::Natural => {
                let hbar = q(1.0, D::ACTION);
                let c = q(1.0, D::VELOCITY);
                let m_e = q(1.0, D::MASS);
                let tau_c = hbar / (m_e * c.powi(2));
                ConstantsTable {
                    system,
                    snapshot: si.snapshot.clone(),
                    hbar,
                    c,
                    e: q(si.alpha.sqrt(), D::GAUSSIAN_CHARGE),
                    m_e,
                    m_p: q(si.m_p / si.m_e, D::MASS),
                    alpha: q(si.alpha, D::DIMENSIONLESS),
                    a0: hbar / (m_e * c) / si.alpha,
                    lambda_c: c * tau_c,
                    tau_c,
                    eps0: None,
                }
            }
        };
        table.verify()?;
        Ok(table)
    }

    /// Fine-structure constant recomputed from e, ħ, c (and ε₀ in SI).
    pub fn alpha_from_charge(&self) -> f64 {
        let e2 = self.e.value * self.e.value;
        let hc = self.hbar.value * self.c.value;
        match &self.eps0 {
            Some(eps0) => e2 / (4.0 * std::f64::consts::PI * eps0.value * hc),
            None => e2 / hc,
        }
    }

    /// Planck constant h = 2πħ.
    pub fn h(&self) -> Quantity {
        self.hbar.scale(2.0 * std::f64::consts::PI)
    }

    /// √(ħc), which carries charge dimension in the Gaussian basis.
    pub fn sqrt_hbar_c(&self) -> Quantity {
        (self.hbar * self.c).sqrt()
    }

    fn verify(&self) -> Result<()> {
        let rel = |a: f64, b: f64| ((a - b) / b).abs();
        let alpha = rel(self.alpha_from_charge(), self.alpha.value);
        if alpha > 1e-6 {
            return Err(Error::Invariant(format!(
                "{}: e, hbar, c give alpha off by {alpha:e} relative",
                self.system
            )));
        }
        let tau = self.hbar.value / (self.m_e.value * self.c.value * self.c.value);
        if rel(self.tau_c.value, tau) > 1e-12 {
            return Err(Error::Invariant("tau_C != hbar/(m_e c^2)".into()));
        }
        if rel(self.lambda_c.value, self.c.value * self.tau_c.value) > 1e-12 {
            return Err(Error::Invariant("lambda_C != c tau_C".into()));
        }
        Ok(())
    }

    /// Named entries in table order.
    pub fn entries(&self) -> Vec<(&'static str, Quantity)> {
        let mut out = vec![
            ("hbar", self.hbar),
            ("c", self.c),
            ("e", self.e),
            ("m_e", self.m_e),
            ("m_p", self.m_p),
            ("alpha", self.alpha),
            ("a0", self.a0),
            ("lambda_C", self.lambda_c),
            ("tau_C", self.tau_c),
        ];
        if let Some(eps0) = self.eps0 {
            out.push(("eps0", eps0));
        }
        out
    }

    /// Particle mass by name (`electron` or `proton`).
    pub fn particle_mass(&self, particle: &str) -> Result<Quantity> {
        match particle {
            "electron" | "e" => Ok(self.m_e),
            "proton" | "p" => Ok(self.m_p),
            other => Err(Error::domain(
                "particle",
                format!("unknown particle '{other}' (expected electron or proton)"),
            )),
        }
    }
}

/// Compton time ħ/(m c²) for `mass`, in the mass's unit system.
pub fn compton_time(mass: &Quantity) -> Result<Quantity> {
    mass.require_positive("mass", Dimension::MASS)?;
    let table = constants_for(mass.system);
    Ok(table.hbar / (*mass * table.c.powi(2)))
}
