//! Level shift from zero-point positional jitter of a bound electron.
//!
//! A jitter Δr with per-axis variance ⟨(Δr)²⟩ smears the potential by
//! ΔV = ½⟨(Δr)²⟩∇²V. For hydrogen ∇²(−e²/r) = 4πe²δ³(r), so only s states,
//! whose density at the nucleus is 1/(πn³a₀³), move:
//! ΔE = ½⟨(Δr)²⟩·4πe²|ψ_n(0)|² = 2e²⟨(Δr)²⟩/(n³a₀³).

use serde::Serialize;

use crate::error::{Error, Result};
use crate::units::{ConstantsTable, Dimension, Quantity, UnitSystem};

/// Where a jitter value came from.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "source", rename_all = "kebab-case")]
pub enum JitterProvenance {
    UserSupplied,
    /// Welton's logarithmic estimate with the two angular-frequency cutoffs.
    WeltonEstimate {
        omega_min: f64,
        omega_max: f64,
    },
}

impl std::fmt::Display for JitterProvenance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            JitterProvenance::UserSupplied => write!(f, "user-supplied"),
            JitterProvenance::WeltonEstimate {
                omega_min,
                omega_max,
            } => write!(
                f,
                "welton-estimate omega_min={omega_min:.16e} omega_max={omega_max:.16e}"
            ),
        }
    }
}

/// Per-axis mean-square displacement ⟨(Δr)²⟩.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct JitterVariance {
    value: Quantity,
    provenance: JitterProvenance,
}

impl JitterVariance {
    pub fn new(value: Quantity) -> Result<Self> {
        if value.dim != Dimension::AREA {
            return Err(Error::domain("jitter", "must have dimension length²"));
        }
        if !(value.value.is_finite() && value.value >= 0.0) {
            return Err(Error::domain(
                "jitter",
                format!("must be finite and >= 0, got {}", value.value),
            ));
        }
        Ok(JitterVariance {
            value,
            provenance: JitterProvenance::UserSupplied,
        })
    }

    pub fn value(&self) -> Quantity {
        self.value
    }

    pub fn provenance(&self) -> JitterProvenance {
        self.provenance
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HydrogenState {
    n: u32,
    ell: u32,
}

impl HydrogenState {
    pub fn new(n: u32, ell: u32) -> Result<Self> {
        if n < 1 {
            return Err(Error::domain("n", "principal quantum number must be >= 1"));
        }
        if ell >= n {
            return Err(Error::domain(
                "ell",
                format!("must be < n = {n}, got {ell}"),
            ));
        }
        Ok(HydrogenState { n, ell })
    }

    pub fn s(n: u32) -> Result<Self> {
        HydrogenState::new(n, 0)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    /// |ψ(0)|² = 1/(πn³a₀³) for s states, 0 otherwise.
    pub fn density_at_origin(&self, a0: &Quantity) -> Quantity {
        let weight = if self.ell == 0 {
            1.0 / (std::f64::consts::PI * f64::from(self.n).powi(3))
        } else {
            0.0
        };
        a0.powi(-3) * weight
    }
}

/// ½·jitter·∇²V at `r` with the 7-point central-difference Laplacian.
pub fn delta_v_numeric<V>(
    potential: V,
    r: [f64; 3],
    jitter: &JitterVariance,
    step: f64,
) -> Result<f64>
where
    V: Fn([f64; 3]) -> f64,
{
    crate::error::require_positive("step", step)?;
    let center = potential(r);
    let mut stencil = -6.0 * center;
    if !center.is_finite() {
        return Err(Error::domain(
            "r",
            "potential is not finite at the stencil centre",
        ));
    }
    for axis in 0..3 {
        for sign in [-1.0, 1.0] {
            let mut p = r;
            p[axis] += sign * step;
            let v = potential(p);
            if !v.is_finite() {
                return Err(Error::domain(
                    "r",
                    format!("potential is not finite at stencil point {p:?}"),
                ));
            }
            stencil += v;
        }
    }
    Ok(0.5 * jitter.value.value * stencil / (step * step))
}

/// Coulomb coupling e² (Gaussian, natural) or e²/4πε₀ (SI), energy·length.
pub fn coulomb_coupling(constants: &ConstantsTable) -> Quantity {
    let e2 = constants.e.powi(2);
    match constants.eps0 {
        Some(eps0) => e2 / eps0 / (4.0 * std::f64::consts::PI),
        None => e2,
    }
}

/// ΔE = ½·jitter·4πe²|ψ_n(0)|²; zero for ell > 0.
pub fn hydrogen_s_shift(
    state: &HydrogenState,
    jitter: &JitterVariance,
    constants: &ConstantsTable,
) -> Result<Quantity> {
    if jitter.value.system != constants.system {
        return Err(Error::domain(
            "jitter",
            format!(
                "given in {} but constants are {}",
                jitter.value.system, constants.system
            ),
        ));
    }
    let density = state.density_at_origin(&constants.a0);
    let shift = jitter.value * coulomb_coupling(constants) * density * (2.0 * std::f64::consts::PI);
    debug_assert_eq!(shift.dim, Dimension::ENERGY);
    Ok(shift)
}

/// Isotropic jitter splits ⟨|Δr|²⟩ evenly over the axes:
/// ⟨Δr_iΔr_j⟩ = δ_ij⟨|Δr|²⟩/3, and the ½⟨(Δr)²⟩∇²V expansion uses the
/// per-axis value.
pub const AXES: f64 = 3.0;

/// Welton's estimate ⟨|Δr|²⟩ = (2α/π)(ħ/m_e c)² ln(ω_max/ω_min), returned
/// per axis (divided by 3).
pub fn welton_jitter(
    omega_min: &Quantity,
    omega_max: &Quantity,
    constants: &ConstantsTable,
) -> Result<JitterVariance> {
    let lo = omega_min.require_positive("omega-min", Dimension::FREQUENCY)?;
    let hi = omega_max.require_positive("omega-max", Dimension::FREQUENCY)?;
    if omega_min.system != constants.system || omega_max.system != constants.system {
        return Err(Error::domain(
            "omega",
            "cutoffs must use the constants' unit system",
        ));
    }
    if hi <= lo {
        return Err(Error::domain(
            "omega-max",
            format!("must exceed omega-min ({hi} <= {lo})"),
        ));
    }
    let alpha = constants.alpha.value;
    let mean_square =
        constants.lambda_c.powi(2) * (2.0 * alpha / std::f64::consts::PI * (hi / lo).ln());
    Ok(JitterVariance {
        value: mean_square / AXES,
        provenance: JitterProvenance::WeltonEstimate {
            omega_min: lo,
            omega_max: hi,
        },
    })
}

/// (ω_min, ω_max) = (α²m_ec²/ħ, m_ec²/ħ).
pub fn default_welton_cutoffs(constants: &ConstantsTable) -> (Quantity, Quantity) {
    let rest = constants.m_e * constants.c.powi(2) / constants.hbar;
    let alpha = constants.alpha.value;
    (rest * (alpha * alpha), rest)
}

/// ΔE/h.
pub fn shift_to_frequency(energy: &Quantity, constants: &ConstantsTable) -> Result<Quantity> {
    if energy.dim != Dimension::ENERGY {
        return Err(Error::domain("energy", "must have energy dimension"));
    }
    if energy.system != constants.system {
        return Err(Error::domain(
            "energy",
            "unit system differs from constants",
        ));
    }
    Ok(*energy / constants.h())
}

/// Energy in electronvolts. Natural-unit energies are in m_ec².
pub fn energy_in_ev(energy: &Quantity) -> Result<f64> {
    if energy.dim != Dimension::ENERGY {
        return Err(Error::domain("energy", "must have energy dimension"));
    }
    let si = crate::units::si_values();
    Ok(match energy.system {
        UnitSystem::Si => energy.value / si.e,
        UnitSystem::Gaussian => energy.value * 1e-7 / si.e,
        UnitSystem::Natural => energy.value * si.m_e * si.c * si.c / si.e,
    })
}
