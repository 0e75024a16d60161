//! Parallel-plate Casimir force: closed form and a regularized mode sum.
//!
//! Between ideal plates a distance l apart the standing modes have
//! k_z = nπ/l. Integrating the transverse momenta leaves
//!
//! ```text
//! E/A = −(π² ħc / 6 l³) · Σ n³        (two polarizations, zero-point ħω/2)
//! ```
//!
//! The divergent sum is regulated with e^{−εn}, its ε → 0 continuum part
//! ∫x³e^{−εx}dx = 6/ε⁴ (the plate-independent bulk energy) is removed, and
//! the remainder is extrapolated to ε = 0 where it tends to ζ(−3) = 1/120.
//! The remainder is even in ε, so the extrapolation runs in ε².

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::{extrapolate_to_zero, DoubleDouble, Extrapolation};
use crate::units::{ConstantsTable, Dimension, Quantity};

/// Default regulator ladder.
pub const DEFAULT_EPSILONS: [f64; 4] = [0.4, 0.2, 0.1, 0.05];

/// Relative step for the numerical derivative of E(l).
pub const FORCE_STEP: f64 = 1e-4;

/// Largest accepted relative change between the last two extrapolation levels.
pub const CONVERGENCE_TOLERANCE: f64 = 1e-3;

#[derive(Clone, Debug, PartialEq)]
pub struct CasimirConfig {
    plate_area: Quantity,
    separation: Quantity,
    regulator_epsilons: Vec<f64>,
    extrapolation_order: usize,
}

impl CasimirConfig {
    /// Plates with the default regulator ladder and full extrapolation.
    pub fn new(plate_area: Quantity, separation: Quantity) -> Result<Self> {
        CasimirConfig::with_regulators(
            plate_area,
            separation,
            DEFAULT_EPSILONS.to_vec(),
            DEFAULT_EPSILONS.len() - 1,
        )
    }

    pub fn with_regulators(
        plate_area: Quantity,
        separation: Quantity,
        regulator_epsilons: Vec<f64>,
        extrapolation_order: usize,
    ) -> Result<Self> {
        plate_area.require_positive("area", Dimension::AREA)?;
        separation.require_positive("separation", Dimension::LENGTH)?;
        if plate_area.system != separation.system {
            return Err(Error::domain(
                "area",
                "area and separation use different unit systems",
            ));
        }
        if regulator_epsilons.is_empty() {
            return Err(Error::Config("regulator ladder is empty".into()));
        }
        if regulator_epsilons
            .iter()
            .any(|e| !(e.is_finite() && *e > 0.0))
        {
            return Err(Error::Config("regulator epsilons must be > 0".into()));
        }
        if regulator_epsilons.windows(2).any(|w| w[1] >= w[0]) {
            return Err(Error::Config(
                "regulator epsilons must be strictly decreasing".into(),
            ));
        }
        if extrapolation_order < 1 || extrapolation_order >= regulator_epsilons.len() {
            return Err(Error::Config(format!(
                "extrapolation order must be in 1..{} for {} regulators",
                regulator_epsilons.len() - 1,
                regulator_epsilons.len()
            )));
        }
        Ok(CasimirConfig {
            plate_area,
            separation,
            regulator_epsilons,
            extrapolation_order,
        })
    }

    pub fn plate_area(&self) -> Quantity {
        self.plate_area
    }

    pub fn separation(&self) -> Quantity {
        self.separation
    }

    pub fn regulator_epsilons(&self) -> &[f64] {
        &self.regulator_epsilons
    }

    pub fn extrapolation_order(&self) -> usize {
        self.extrapolation_order
    }
}

/// F = −(π²/240) ħcA/l⁴.
pub fn casimir_force_closed(
    area: &Quantity,
    separation: &Quantity,
    constants: &ConstantsTable,
) -> Result<Quantity> {
    area.require_positive("area", Dimension::AREA)?;
    separation.require_positive("separation", Dimension::LENGTH)?;
    for q in [area, separation] {
        if q.system != constants.system {
            return Err(Error::domain(
                "units",
                format!(
                    "input in {} but constants are {}",
                    q.system, constants.system
                ),
            ));
        }
    }
    let coefficient = -std::f64::consts::PI.powi(2) / 240.0;
    Ok(constants.hbar * constants.c * *area / separation.powi(4) * coefficient)
}

/// Σ_{n≥1} n³e^{−εn} − 6/ε⁴, summed in double-double.
///
/// Terms grow until n ≈ 3/ε and then fall geometrically; summation stops
/// once the geometric bound on the remaining tail is below 1e−30 of the
/// running total. The running total is ~6/ε⁴ while the result is ~1/120,
/// so a looser cut shows up directly in the result at small ε.
pub fn regulated_cubic_sum(epsilon: f64) -> Result<f64> {
    Ok(regulated_cubic_sum_dd(epsilon)?.to_f64())
}

fn regulated_cubic_sum_dd(epsilon: f64) -> Result<DoubleDouble> {
    if !(epsilon.is_finite() && epsilon > 0.0) {
        return Err(Error::domain(
            "epsilon",
            format!("must be > 0, got {epsilon}"),
        ));
    }
    let x = DoubleDouble::new(-epsilon).exp();
    let peak = 3.0 / epsilon;
    let mut power = DoubleDouble::ONE;
    let mut sum = DoubleDouble::ZERO;
    let mut n: u64 = 0;
    loop {
        n += 1;
        power = power * x;
        let nf = n as f64;
        let term = power * DoubleDouble::new(nf * nf * nf);
        sum = sum + term;
        if nf > peak {
            let ratio = ((nf + 1.0) / nf).powi(3) * x.hi;
            let tail = term.hi * ratio / (1.0 - ratio);
            if tail < 1e-30 * sum.hi {
                break;
            }
        }
        if n > 50_000_000 {
            return Err(Error::Convergence(format!(
                "cubic sum did not settle for epsilon {epsilon}"
            )));
        }
    }
    let e2 = DoubleDouble::new(epsilon) * DoubleDouble::new(epsilon);
    let continuum = DoubleDouble::new(6.0) / (e2 * e2);
    Ok(sum - continuum)
}

/// Values computed at one regulator strength.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RegulatorPoint {
    pub epsilon: f64,
    pub regulated_sum: f64,
    /// (π²/6) · regulated_sum
    pub energy_coefficient: f64,
    pub energy_per_area: f64,
    /// −A dE/dl by central difference at fixed physical cutoff.
    pub force: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CasimirDiagnostics {
    pub points: Vec<RegulatorPoint>,
    pub sum_extrapolation: Extrapolation,
    pub force_extrapolation: Extrapolation,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CasimirResult {
    pub force_closed: Quantity,
    /// c_E in E/A = −c_E ħc/l³, expected π²/720.
    pub energy_coefficient: f64,
    pub energy_per_area: Quantity,
    /// −dE/dl from the mode sum, extrapolated.
    pub force_modesum: Quantity,
    /// −F l⁴/(ħcA) from the mode sum, expected π²/240.
    pub force_coefficient: f64,
    /// Extrapolated regulated Σn³, expected ζ(−3) = 1/120.
    pub zeta_check: f64,
    pub diagnostics: CasimirDiagnostics,
}

/// E/A at separation `l` for a cutoff fixed at ε₀ when l = l₀.
fn regulated_energy_per_area(hbar_c: f64, l: f64, epsilon_at_l0: f64, l0: f64) -> Result<f64> {
    let epsilon = epsilon_at_l0 * l0 / l;
    let s = regulated_cubic_sum(epsilon)?;
    Ok(-std::f64::consts::PI.powi(2) * hbar_c / (6.0 * l.powi(3)) * s)
}

pub fn casimir_energy_modesum(
    config: &CasimirConfig,
    constants: &ConstantsTable,
) -> Result<CasimirResult> {
    let area = config.plate_area;
    let sep = config.separation;
    let force_closed = casimir_force_closed(&area, &sep, constants)?;
    let hbar_c = (constants.hbar * constants.c).value;
    let l = sep.value;
    let a = area.value;
    let h = FORCE_STEP * l;
    let pi2_6 = std::f64::consts::PI.powi(2) / 6.0;

    let points: Vec<RegulatorPoint> = config
        .regulator_epsilons
        .iter()
        .map(|&eps| {
            let s = regulated_cubic_sum(eps)?;
            let e_plus = regulated_energy_per_area(hbar_c, l + h, eps, l)?;
            let e_minus = regulated_energy_per_area(hbar_c, l - h, eps, l)?;
            Ok(RegulatorPoint {
                epsilon: eps,
                regulated_sum: s,
                energy_coefficient: pi2_6 * s,
                energy_per_area: -pi2_6 * s * hbar_c / l.powi(3),
                force: -a * (e_plus - e_minus) / (2.0 * h),
            })
        })
        .collect::<Result<_>>()?;

    let order = config.extrapolation_order;
    let xs: Vec<f64> = points.iter().map(|p| p.epsilon * p.epsilon).collect();
    let sums: Vec<f64> = points.iter().map(|p| p.regulated_sum).collect();
    let forces: Vec<f64> = points.iter().map(|p| p.force).collect();
    let sum_extrapolation = extrapolate_to_zero(&xs, &sums)?;
    let force_extrapolation = extrapolate_to_zero(&xs, &forces)?;
    let last = xs.len() - 1;
    let zeta = sum_extrapolation.table[last][order];
    let force = force_extrapolation.table[last][order];

    for (name, ex, value) in [
        ("mode sum", &sum_extrapolation, zeta),
        ("force", &force_extrapolation, force),
    ] {
        let residual = ex.residuals[order - 1] / value.abs();
        if residual.is_nan() || residual > CONVERGENCE_TOLERANCE {
            return Err(Error::Convergence(format!(
                "{name} extrapolation residual {residual:e} above {CONVERGENCE_TOLERANCE:e}"
            )));
        }
    }

    let energy_coefficient = pi2_6 * zeta;
    let energy_dim = Dimension::ENERGY / Dimension::AREA;
    Ok(CasimirResult {
        force_closed,
        energy_coefficient,
        energy_per_area: Quantity::new(
            -energy_coefficient * hbar_c / l.powi(3),
            energy_dim,
            constants.system,
        ),
        force_modesum: Quantity::new(force, Dimension::FORCE, constants.system),
        force_coefficient: -force * l.powi(4) / (hbar_c * a),
        zeta_check: zeta,
        diagnostics: CasimirDiagnostics {
            points,
            sum_extrapolation,
            force_extrapolation,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::units::{constants_for, UnitSystem};

    fn natural(area: f64, sep: f64) -> (Quantity, Quantity) {
        (
            Quantity::new(area, Dimension::AREA, UnitSystem::Natural),
            Quantity::new(sep, Dimension::LENGTH, UnitSystem::Natural),
        )
    }

    #[test]
    fn closed_form_natural_units() {
        let n = constants_for(UnitSystem::Natural);
        let (a, l) = natural(1.0, 1.0);
        let f = casimir_force_closed(&a, &l, &n).unwrap();
        assert!((f.value + std::f64::consts::PI.powi(2) / 240.0).abs() < 1e-16);
        assert!((f.value + 0.0411234).abs() < 1e-7);
        assert_eq!(f.dim, Dimension::FORCE);
        let (_, l2) = natural(1.0, 2.0);
        let f2 = casimir_force_closed(&a, &l2, &n).unwrap();
        assert!((f2.value * 16.0 - f.value).abs() < 1e-16);
    }

    #[test]
    fn closed_form_si_plates() {
        let si = constants_for(UnitSystem::Si);
        let a = Quantity::new(1e-4, Dimension::AREA, UnitSystem::Si);
        let l = Quantity::new(1e-6, Dimension::LENGTH, UnitSystem::Si);
        let f = casimir_force_closed(&a, &l, &si).unwrap();
        let expected =
            -std::f64::consts::PI.powi(2) / 240.0 * 1.054571817e-34 * 299792458.0 * 1e-4 / 1e-24;
        assert!((f.value - expected).abs() / expected.abs() < 1e-14);
        assert!((f.value + 1.3e-7).abs() < 0.01e-7);
    }

    #[test]
    fn closed_form_rejects_bad_geometry() {
        let n = constants_for(UnitSystem::Natural);
        let (a, l) = natural(0.0, 1.0);
        assert!(matches!(
            casimir_force_closed(&a, &l, &n),
            Err(Error::Domain { .. })
        ));
        let (a, l) = natural(1.0, -1.0);
        assert!(casimir_force_closed(&a, &l, &n).is_err());
        let (a, _) = natural(1.0, 1.0);
        assert!(casimir_force_closed(&a, &a, &n).is_err());
    }

    #[test]
    fn regulated_sum_domain() {
        assert!(regulated_cubic_sum(0.0).is_err());
        assert!(regulated_cubic_sum(-1.0).is_err());
        assert!(regulated_cubic_sum(f64::NAN).is_err());
    }

    #[test]
    fn config_validation() {
        let (a, l) = natural(1.0, 1.0);
        assert!(CasimirConfig::with_regulators(a, l, vec![0.1, 0.2], 1).is_err());
        assert!(CasimirConfig::with_regulators(a, l, vec![0.2, 0.1], 2).is_err());
        assert!(CasimirConfig::with_regulators(a, l, vec![0.2, 0.1], 0).is_err());
        assert!(CasimirConfig::with_regulators(a, l, vec![], 1).is_err());
        assert!(CasimirConfig::with_regulators(a, l, vec![0.2, -0.1], 1).is_err());
        assert!(CasimirConfig::new(a, l).is_ok());
    }

    #[test]
    fn force_to_energy_ratio_is_three() {
        let n = constants_for(UnitSystem::Natural);
        let (a, l) = natural(1.0, 1.0);
        let r = casimir_energy_modesum(&CasimirConfig::new(a, l).unwrap(), &n).unwrap();
        assert!((r.force_coefficient / r.energy_coefficient - 3.0).abs() < 1e-6);
    }

    #[test]
    fn coarse_ladder_fails_to_converge() {
        let n = constants_for(UnitSystem::Natural);
        let (a, l) = natural(1.0, 1.0);
        let cfg = CasimirConfig::with_regulators(a, l, vec![8.0, 6.0], 1).unwrap();
        assert!(matches!(
            casimir_energy_modesum(&cfg, &n),
            Err(Error::Convergence(_))
        ));
    }
}
