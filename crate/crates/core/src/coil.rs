//! Induced current in a coil threaded by the fluctuating field.
//!
//! Faraday's law gives i = NΦ/(RΔt) with Φ = BA in SI; in Gaussian units
//! the EMF carries an extra 1/c, applied here so that both estimates have
//! current dimension. Substituting B = √(ħc)/l² and Δt = τ gives the exact
//! tap current; replacing √(ħc) by the elementary charge e gives the
//! charge-based estimate (NA/R)·e/(l²τ). The two differ by √(ħc)/e = 1/√α.

use crate::error::{Error, Result};
use crate::field::predicted_rms;
use crate::units::{constants_for, ConstantsTable, Dimension, Quantity, UnitSystem};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoilSpec {
    turns: u32,
    area: Quantity,
    resistance: Quantity,
}

impl CoilSpec {
    pub fn new(turns: u32, area: Quantity, resistance: Quantity) -> Result<Self> {
        if turns < 1 {
            return Err(Error::domain("turns", "coil needs at least one turn"));
        }
        area.require_positive("area", Dimension::AREA)?;
        if resistance.system != area.system {
            return Err(Error::domain("resistance", "unit system differs from area"));
        }
        resistance.require_positive("resistance", Dimension::resistance(area.system))?;
        Ok(CoilSpec {
            turns,
            area,
            resistance,
        })
    }

    pub fn turns(&self) -> u32 {
        self.turns
    }

    pub fn area(&self) -> Quantity {
        self.area
    }

    pub fn resistance(&self) -> Quantity {
        self.resistance
    }

    pub fn system(&self) -> UnitSystem {
        self.area.system
    }

    pub fn to_gaussian(&self) -> Result<CoilSpec> {
        CoilSpec::new(
            self.turns,
            self.area.to_gaussian()?,
            self.resistance.to_gaussian()?,
        )
    }
}

/// 1/c for Gaussian-dimensioned systems, 1 in SI.
fn faraday_factor(system: UnitSystem) -> Quantity {
    match system {
        UnitSystem::Si => Quantity::dimensionless(1.0, system),
        _ => Quantity::dimensionless(1.0, system) / constants_for(system).c,
    }
}

/// i = N·B·A/(R·Δt), with the Gaussian 1/c where applicable.
pub fn coil_current(field: &Quantity, spec: &CoilSpec, dt: &Quantity) -> Result<Quantity> {
    let system = spec.system();
    if field.system != system || dt.system != system {
        return Err(Error::domain(
            "units",
            "field, coil and dt must share a unit system",
        ));
    }
    if field.dim != Dimension::magnetic_field(system) {
        return Err(Error::domain("field", "must have magnetic-field dimension"));
    }
    if !(field.value.is_finite() && field.value >= 0.0) {
        return Err(Error::domain(
            "field",
            format!("must be >= 0, got {}", field.value),
        ));
    }
    dt.require_positive("dt", Dimension::TIME)?;
    let current = faraday_factor(system) * *field * spec.area / (spec.resistance * *dt)
        * f64::from(spec.turns);
    debug_assert_eq!(current.dim, Dimension::current(system));
    Ok(current)
}

/// The charge-based estimate (NA/R)·e/(l²τ), same Faraday convention.
fn charge_current(
    spec: &CoilSpec,
    l: &Quantity,
    tau: &Quantity,
    constants: &ConstantsTable,
) -> Quantity {
    faraday_factor(spec.system()) * spec.area * constants.e / (spec.resistance * l.powi(2) * *tau)
        * f64::from(spec.turns)
}

#[derive(Clone, Debug, PartialEq)]
pub struct TapEstimate {
    /// (NA/R)·e/(l²τ).
    pub current_paper: Quantity,
    /// N·B·A/(R·τ) with B = √(ħc)/l².
    pub current_exact: Quantity,
    /// current_exact / current_paper.
    pub ratio: f64,
    /// 1/√α from the constants table, for comparison with `ratio`.
    pub inverse_sqrt_alpha: f64,
    pub field: Quantity,
    pub l: Quantity,
    pub tau: Quantity,
    pub spec: CoilSpec,
}

pub fn zpf_tap_estimate(
    spec: &CoilSpec,
    l: &Quantity,
    tau: &Quantity,
    constants: &ConstantsTable,
) -> Result<TapEstimate> {
    l.require_positive("l", Dimension::LENGTH)?;
    tau.require_positive("tau", Dimension::TIME)?;
    let system = constants.system;
    if spec.system() != system || l.system != system || tau.system != system {
        return Err(Error::domain(
            "units",
            "coil, l and tau must use the constants' unit system",
        ));
    }
    let field = predicted_rms(l, constants)?;
    let current_exact = coil_current(&field, spec, tau)?;
    let current_paper = match system {
        // The charge-based form only has current dimension in the
        // Gaussian basis: evaluate there and convert.
        UnitSystem::Si => {
            let g = constants_for(UnitSystem::Gaussian);
            charge_current(
                &spec.to_gaussian()?,
                &l.to_gaussian()?,
                &tau.to_gaussian()?,
                &g,
            )
            .to_si(Dimension::current(UnitSystem::Si))?
        }
        _ => charge_current(spec, l, tau, constants),
    };
    Ok(TapEstimate {
        ratio: current_exact.value / current_paper.value,
        inverse_sqrt_alpha: 1.0 / constants.alpha.value.sqrt(),
        current_paper,
        current_exact,
        field,
        l: *l,
        tau: *tau,
        spec: *spec,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::units::compton_time;
    use proptest::prelude::*;

    fn nat(v: f64, dim: Dimension) -> Quantity {
        Quantity::new(v, dim, UnitSystem::Natural)
    }

    fn nat_coil(turns: u32, area: f64, r: f64) -> CoilSpec {
        CoilSpec::new(
            turns,
            nat(area, Dimension::AREA),
            nat(r, Dimension::resistance(UnitSystem::Natural)),
        )
        .unwrap()
    }

    #[test]
    fn unit_plug_in() {
        let spec = nat_coil(1, 1.0, 1.0);
        let b = nat(1.0, Dimension::GAUSSIAN_FIELD);
        let i = coil_current(&b, &spec, &nat(1.0, Dimension::TIME)).unwrap();
        assert_eq!(i.value, 1.0);
        assert_eq!(i.dim, Dimension::current(UnitSystem::Natural));
    }

    #[test]
    fn linear_in_turns_and_resistance() {
        let b = nat(2.0, Dimension::GAUSSIAN_FIELD);
        let dt = nat(0.5, Dimension::TIME);
        let base = coil_current(&b, &nat_coil(3, 2.0, 1.5), &dt).unwrap().value;
        let double_r = coil_current(&b, &nat_coil(3, 2.0, 3.0), &dt).unwrap().value;
        let double_n = coil_current(&b, &nat_coil(6, 2.0, 1.5), &dt).unwrap().value;
        assert_eq!(double_r * 2.0, base);
        assert_eq!(double_n, base * 2.0);
    }

    #[test]
    fn invalid_inputs() {
        let b = nat(1.0, Dimension::GAUSSIAN_FIELD);
        let spec = nat_coil(1, 1.0, 1.0);
        assert!(matches!(
            coil_current(&b, &spec, &nat(0.0, Dimension::TIME)),
            Err(Error::Domain { .. })
        ));
        assert!(coil_current(&b.scale(-1.0), &spec, &nat(1.0, Dimension::TIME)).is_err());
        let r = nat(0.0, Dimension::resistance(UnitSystem::Natural));
        assert!(CoilSpec::new(1, nat(1.0, Dimension::AREA), r).is_err());
        let r = nat(1.0, Dimension::resistance(UnitSystem::Natural));
        assert!(CoilSpec::new(0, nat(1.0, Dimension::AREA), r).is_err());
        let n = constants_for(UnitSystem::Natural);
        assert!(zpf_tap_estimate(
            &spec,
            &nat(-1.0, Dimension::LENGTH),
            &nat(1.0, Dimension::TIME),
            &n
        )
        .is_err());
        assert!(zpf_tap_estimate(
            &spec,
            &nat(1.0, Dimension::LENGTH),
            &nat(0.0, Dimension::TIME),
            &n
        )
        .is_err());
    }

    #[test]
    fn gaussian_hand_computation() {
        let g = constants_for(UnitSystem::Gaussian);
        let l = Quantity::new(1.0, Dimension::LENGTH, UnitSystem::Gaussian);
        let b = predicted_rms(&l, &g).unwrap();
        let tau = compton_time(&g.m_e).unwrap();
        let r_ohm = 1.0;
        let r_gauss = r_ohm / (299792458.0f64.powi(2) * 1e-5);
        let spec = CoilSpec::new(
            100,
            Quantity::new(10.0, Dimension::AREA, UnitSystem::Gaussian),
            Quantity::new(
                r_gauss,
                Dimension::resistance(UnitSystem::Gaussian),
                UnitSystem::Gaussian,
            ),
        )
        .unwrap();
        let i = coil_current(&b, &spec, &tau).unwrap();

        let hbar: f64 = 1.054571817e-27;
        let c = 2.99792458e10;
        let me = 9.1093837015e-28;
        let b_hand = (hbar * c).sqrt() / 1.0;
        let tau_hand = hbar / (me * c * c);
        let i_hand = 100.0 * b_hand * 10.0 / (c * r_gauss * tau_hand);
        assert!((i.value - i_hand).abs() / i_hand < 1e-10);
        assert_eq!(i.dim, Dimension::current(UnitSystem::Gaussian));
    }

    #[test]
    fn ratio_is_inverse_sqrt_alpha() {
        let n = constants_for(UnitSystem::Natural);
        let t = zpf_tap_estimate(
            &nat_coil(5, 2.0, 3.0),
            &nat(0.7, Dimension::LENGTH),
            &nat(1.3, Dimension::TIME),
            &n,
        )
        .unwrap();
        assert!((t.ratio - 11.706).abs() < 1e-3);
        assert!((t.ratio - t.inverse_sqrt_alpha).abs() / t.inverse_sqrt_alpha < 1e-12);
    }

    #[test]
    fn collapses_to_elementary_charge() {
        let n = constants_for(UnitSystem::Natural);
        let t = zpf_tap_estimate(
            &nat_coil(1, 1.0, 1.0),
            &nat(1.0, Dimension::LENGTH),
            &nat(1.0, Dimension::TIME),
            &n,
        )
        .unwrap();
        assert!((t.current_paper.value - n.e.value).abs() < 1e-16);
    }

    #[test]
    fn si_agrees_with_gaussian() {
        let si = constants_for(UnitSystem::Si);
        let g = constants_for(UnitSystem::Gaussian);
        let spec_si = CoilSpec::new(
            50,
            Quantity::new(1e-3, Dimension::AREA, UnitSystem::Si),
            Quantity::new(2.0, Dimension::resistance(UnitSystem::Si), UnitSystem::Si),
        )
        .unwrap();
        let l_si = Quantity::new(1e-6, Dimension::LENGTH, UnitSystem::Si);
        let tau_si = si.tau_c;
        let a = zpf_tap_estimate(&spec_si, &l_si, &tau_si, &si).unwrap();
        let mixed = zpf_tap_estimate(
            &spec_si.to_gaussian().unwrap(),
            &l_si.to_gaussian().unwrap(),
            &tau_si,
            &g,
        );
        assert!(matches!(mixed, Err(Error::Domain { .. })));
        let b = zpf_tap_estimate(
            &spec_si.to_gaussian().unwrap(),
            &l_si.to_gaussian().unwrap(),
            &g.tau_c,
            &g,
        )
        .unwrap();
        let exact_amp = b
            .current_exact
            .to_si(Dimension::current(UnitSystem::Si))
            .unwrap();
        assert!((a.current_exact.value - exact_amp.value).abs() / exact_amp.value < 1e-12);
        assert!((a.ratio - b.ratio).abs() / b.ratio < 1e-12);
        assert_eq!(a.current_exact.dim, Dimension::current(UnitSystem::Si));
    }

    proptest! {
        #[test]
        fn composition_identity_is_exact(
            turns in 1u32..1000, area in 1e-3f64..1e3, r in 1e-3f64..1e3,
            l in 1e-3f64..1e3, tau in 1e-3f64..1e3,
        ) {
            let n = constants_for(UnitSystem::Natural);
            let spec = nat_coil(turns, area, r);
            let lq = nat(l, Dimension::LENGTH);
            let tq = nat(tau, Dimension::TIME);
            let est = zpf_tap_estimate(&spec, &lq, &tq, &n).unwrap();
            let direct = coil_current(&predicted_rms(&lq, &n).unwrap(), &spec, &tq).unwrap();
            prop_assert_eq!(est.current_exact, direct);
            prop_assert!((est.ratio - est.inverse_sqrt_alpha).abs() / est.inverse_sqrt_alpha < 1e-10);
        }
    }
}
