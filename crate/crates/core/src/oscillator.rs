//! Ground state of a single quantum harmonic oscillator.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::Serialize;

use crate::error::{require_positive, Error, Result};
use crate::numeric::simpson;

/// Mass, angular frequency and ħ, all in one consistent unit system.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct OscillatorParams {
    m: f64,
    omega: f64,
    hbar: f64,
}

impl OscillatorParams {
    pub fn new(m: f64, omega: f64, hbar: f64) -> Result<Self> {
        Ok(OscillatorParams {
            m: require_positive("m", m)?,
            omega: require_positive("omega", omega)?,
            hbar: require_positive("hbar", hbar)?,
        })
    }

    pub fn m(&self) -> f64 {
        self.m
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    /// mω/ħ, the inverse squared width.
    fn stiffness(&self) -> f64 {
        self.m * self.omega / self.hbar
    }
}

/// ψ(x) = (mω/πħ)^{1/4} exp(−mωx²/2ħ).
pub fn ground_state_psi(x: f64, p: &OscillatorParams) -> f64 {
    let s = p.stiffness();
    (s / std::f64::consts::PI).powf(0.25) * (-0.5 * s * x * x).exp()
}

/// √(ħ/mω): the scale over which the ground state fluctuates.
pub fn fluctuation_width(p: &OscillatorParams) -> f64 {
    (p.hbar / (p.m * p.omega)).sqrt()
}

/// ⟨x²⟩ = ħ/(2mω) under |ψ|².
pub fn position_variance(p: &OscillatorParams) -> f64 {
    p.hbar / (2.0 * p.m * p.omega)
}

/// Nodes used by the quadrature checks: 2¹⁴ panels.
pub const QUADRATURE_PANELS: usize = 1 << 14;

/// ∫|ψ|² over ±12 widths by composite Simpson.
pub fn normalization_quadrature(p: &OscillatorParams) -> f64 {
    let half = 12.0 * fluctuation_width(p);
    simpson(
        |x| ground_state_psi(x, p).powi(2),
        -half,
        half,
        QUADRATURE_PANELS,
    )
}

/// ∫x²|ψ|² over ±12 widths by composite Simpson.
pub fn variance_quadrature(p: &OscillatorParams) -> f64 {
    let half = 12.0 * fluctuation_width(p);
    simpson(
        |x| x * x * ground_state_psi(x, p).powi(2),
        -half,
        half,
        QUADRATURE_PANELS,
    )
}

/// `n` draws from |ψ|², deterministic in `seed`.
pub fn sample_positions(p: &OscillatorParams, seed: u64, n: usize) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(Error::domain("samples", "must draw at least one position"));
    }
    let normal = Normal::new(0.0, position_variance(p).sqrt())
        .map_err(|e| Error::domain("oscillator", e.to_string()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..n).map(|_| normal.sample(&mut rng)).collect())
}

/// Mean, variance and excess kurtosis of a sample.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SampleMoments {
    pub n: usize,
    pub mean: f64,
    pub variance: f64,
    pub excess_kurtosis: f64,
}

impl SampleMoments {
    pub fn of(xs: &[f64]) -> Self {
        let n = xs.len() as f64;
        let mean = xs.iter().sum::<f64>() / n;
        let (m2, m4) = xs.iter().fold((0.0, 0.0), |(m2, m4), &x| {
            let d2 = (x - mean) * (x - mean);
            (m2 + d2, m4 + d2 * d2)
        });
        let (m2, m4) = (m2 / n, m4 / n);
        SampleMoments {
            n: xs.len(),
            mean,
            variance: m2,
            excess_kurtosis: m4 / (m2 * m2) - 3.0,
        }
    }
}
