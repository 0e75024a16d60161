use serde::Serialize;

use super::CoarseGrainReport;
use crate::error::{Error, Result};
use crate::numeric::linear_fit;
use crate::units::{constants_for, ConstantsTable, Dimension, Quantity, UnitSystem};

/// Power law rms = amplitude · l^exponent fitted in log-log space.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ScalingFit {
    pub exponent: f64,
    pub amplitude: f64,
    pub r_squared: f64,
    pub stderr_exponent: f64,
}

pub fn fit_scaling(report: &CoarseGrainReport) -> Result<ScalingFit> {
    if report.scales.len() < 3 {
        return Err(Error::domain(
            "scales",
            format!("need at least 3 scales to fit, got {}", report.scales.len()),
        ));
    }
    let lo = report.scales.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = report.scales.iter().cloned().fold(0.0, f64::max);
    if hi / lo < 8.0 * (1.0 - 1e-12) {
        return Err(Error::domain(
            "scales",
            format!("must span at least a factor of 8, got {:.3}", hi / lo),
        ));
    }
    if let Some(bad) = report.rms.iter().find(|r| !(r.is_finite() && **r > 0.0)) {
        return Err(Error::domain("rms", format!("cannot take log of {bad}")));
    }
    let xs: Vec<f64> = report.scales.iter().map(|l| l.ln()).collect();
    let ys: Vec<f64> = report.rms.iter().map(|r| r.ln()).collect();
    let fit = linear_fit(&xs, &ys);
    Ok(ScalingFit {
        exponent: fit.slope,
        amplitude: fit.intercept.exp(),
        r_squared: fit.r_squared,
        stderr_exponent: fit.stderr_slope,
    })
}

/// √(ħc)/l², the fluctuating field magnitude over extent `l`.
///
/// Gaussian and natural inputs are evaluated directly. SI lengths are
/// converted to cm, evaluated in gauss and returned in tesla.
pub fn predicted_rms(l: &Quantity, constants: &ConstantsTable) -> Result<Quantity> {
    l.require_positive("l", Dimension::LENGTH)?;
    if l.system != constants.system {
        return Err(Error::domain(
            "l",
            format!(
                "given in {} but constants are {}",
                l.system, constants.system
            ),
        ));
    }
    match l.system {
        UnitSystem::Si => {
            let gaussian = constants_for(UnitSystem::Gaussian);
            let b = predicted_rms(&l.to_gaussian()?, &gaussian)?;
            b.to_si(Dimension::SI_FIELD)
        }
        _ => Ok(constants.sqrt_hbar_c() / l.powi(2)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Window;

    fn report(scales: &[f64], rms: Vec<f64>) -> CoarseGrainReport {
        CoarseGrainReport {
            window: Window::Cube,
            scales: scales.to_vec(),
            stderr: vec![0.0; rms.len()],
            per_draw_variance: vec![0.0; rms.len()],
            rms,
            draws: 1,
        }
    }

    #[test]
    fn exact_inverse_square() {
        let scales = [0.5, 1.0, 2.0, 4.0];
        let r = report(&scales, scales.iter().map(|l| 3.0 / (l * l)).collect());
        let fit = fit_scaling(&r).unwrap();
        assert!((fit.exponent + 2.0).abs() < 1e-12);
        assert!((fit.amplitude - 3.0).abs() < 1e-12);
        assert!((fit.r_squared - 1.0).abs() < 1e-12);
    }

    #[test]
    fn flat_response() {
        let scales = [1.0, 2.0, 8.0];
        let fit = fit_scaling(&report(&scales, vec![5.0; 3])).unwrap();
        assert!(fit.exponent.abs() < 1e-12);
        assert_eq!(fit.r_squared, 1.0);
    }

    #[test]
    fn fit_preconditions() {
        assert!(fit_scaling(&report(&[1.0, 8.0], vec![1.0, 1.0])).is_err());
        assert!(fit_scaling(&report(&[1.0, 2.0, 4.0], vec![1.0; 3])).is_err());
        assert!(matches!(
            fit_scaling(&report(&[1.0, 2.0, 8.0], vec![1.0, 0.0, 1.0])),
            Err(Error::Domain { .. })
        ));
    }

    #[test]
    fn predicted_rms_natural() {
        let n = constants_for(UnitSystem::Natural);
        let l = |v| Quantity::new(v, Dimension::LENGTH, UnitSystem::Natural);
        assert_eq!(predicted_rms(&l(1.0), &n).unwrap().value, 1.0);
        assert_eq!(predicted_rms(&l(2.0), &n).unwrap().value, 0.25);
        assert!(predicted_rms(&l(0.0), &n).is_err());
        assert!(predicted_rms(&l(-1.0), &n).is_err());
    }

    #[test]
    fn predicted_rms_at_compton_wavelength() {
        let g = constants_for(UnitSystem::Gaussian);
        let b = predicted_rms(&g.lambda_c, &g).unwrap();
        // √(ħc)/λ_C² from the CGS constants, by hand
        let hbar: f64 = 1.054571817e-27;
        let c = 2.99792458e10;
        let lc = hbar / (9.1093837015e-28 * c);
        let expected = (hbar * c).sqrt() / (lc * lc);
        assert!((b.value - expected).abs() / expected < 1e-12);
        assert!((b.value - 3.7706e12).abs() / 3.7706e12 < 1e-4);
        assert_eq!(b.dim, Dimension::GAUSSIAN_FIELD);
    }

    #[test]
    fn predicted_rms_si_is_tesla() {
        let si = constants_for(UnitSystem::Si);
        let g = constants_for(UnitSystem::Gaussian);
        let l_si = Quantity::new(0.01, Dimension::LENGTH, UnitSystem::Si);
        let l_cgs = Quantity::new(1.0, Dimension::LENGTH, UnitSystem::Gaussian);
        let b_si = predicted_rms(&l_si, &si).unwrap();
        let b_cgs = predicted_rms(&l_cgs, &g).unwrap();
        assert_eq!(b_si.dim, Dimension::SI_FIELD);
        assert!((b_si.value * 1e4 - b_cgs.value).abs() / b_cgs.value < 1e-14);
        assert!(predicted_rms(&l_si, &g).is_err());
    }
}
