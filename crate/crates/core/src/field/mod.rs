//! Truncated oscillator ensemble for the fluctuating field.
//!
//! Each lattice wavevector k carries an independent complex Gaussian
//! coefficient ξ(k) with variance σ_k² = κ·ħc·|k|/L³ (half a quantum
//! ħc|k|/2 of zero-point energy per mode). ξ(−k) = ξ*(k) so that the
//! synthesized field is real, ξ(0) = 0, and every mode above `k_max` or on
//! a Nyquist plane is zero.

mod coarse;
mod fit;
mod run;
mod synth;

pub use coarse::{coarse_grain_rms, coarse_grain_rms_with, CoarseGrainReport, Window};
pub use fit::{fit_scaling, predicted_rms, ScalingFit};
pub use run::{scaling_run, RunChecks, ScalingRun, ScalingRunConfig};
pub use synth::{fft3_in_place, synthesize_field, FieldGrid};

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;

use crate::error::{Error, Result};

/// Periodic cubic lattice and spectrum parameters.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LatticeSpec {
    box_size: f64,
    points_per_axis: usize,
    k_max: f64,
    kappa: f64,
    hbar_c: f64,
}

impl LatticeSpec {
    /// ħc defaults to 1 (natural units).
    pub fn new(box_size: f64, points_per_axis: usize, k_max: f64, kappa: f64) -> Result<Self> {
        let spec = LatticeSpec {
            box_size,
            points_per_axis,
            k_max,
            kappa,
            hbar_c: 1.0,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Cutoff at the Nyquist wavenumber πN/L.
    pub fn with_nyquist_cutoff(box_size: f64, points_per_axis: usize, kappa: f64) -> Result<Self> {
        let k_max = std::f64::consts::PI * points_per_axis as f64 / box_size;
        LatticeSpec::new(box_size, points_per_axis, k_max, kappa)
    }

    pub fn with_hbar_c(mut self, hbar_c: f64) -> Result<Self> {
        self.hbar_c = hbar_c;
        self.validate()?;
        Ok(self)
    }

    fn validate(&self) -> Result<()> {
        let cfg = |msg: String| Err(Error::Config(msg));
        if !(self.box_size.is_finite() && self.box_size > 0.0) {
            return cfg(format!("box size must be > 0, got {}", self.box_size));
        }
        let n = self.points_per_axis;
        if n < 8 || !n.is_multiple_of(2) {
            return cfg(format!("points per axis must be even and >= 8, got {n}"));
        }
        if !(self.k_max.is_finite() && self.k_max > 0.0) {
            return cfg(format!("k_max must be > 0, got {}", self.k_max));
        }
        if self.k_max > self.nyquist() * (1.0 + 1e-12) {
            return cfg(format!(
                "k_max {} exceeds the Nyquist wavenumber {}",
                self.k_max,
                self.nyquist()
            ));
        }
        if !(self.kappa.is_finite() && self.kappa > 0.0) {
            return cfg(format!("kappa must be > 0, got {}", self.kappa));
        }
        if !(self.hbar_c.is_finite() && self.hbar_c > 0.0) {
            return cfg(format!("hbar*c must be > 0, got {}", self.hbar_c));
        }
        Ok(())
    }

    pub fn box_size(&self) -> f64 {
        self.box_size
    }

    pub fn points_per_axis(&self) -> usize {
        self.points_per_axis
    }

    pub fn k_max(&self) -> f64 {
        self.k_max
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn hbar_c(&self) -> f64 {
        self.hbar_c
    }

    pub fn nyquist(&self) -> f64 {
        std::f64::consts::PI * self.points_per_axis as f64 / self.box_size
    }

    pub fn cell_size(&self) -> f64 {
        self.box_size / self.points_per_axis as f64
    }

    /// Total number of lattice sites, N³.
    pub fn sites(&self) -> usize {
        self.points_per_axis.pow(3)
    }

    pub(crate) fn linear(&self, i: usize, j: usize, l: usize) -> usize {
        (i * self.points_per_axis + j) * self.points_per_axis + l
    }

    pub(crate) fn split(&self, idx: usize) -> [usize; 3] {
        let n = self.points_per_axis;
        [idx / (n * n), (idx / n) % n, idx % n]
    }

    /// Signed integer frequency of an axis index.
    pub(crate) fn signed(&self, i: usize) -> i64 {
        let n = self.points_per_axis;
        if i <= n / 2 {
            i as i64
        } else {
            i as i64 - n as i64
        }
    }

    /// Index of −k.
    pub fn conjugate_index(&self, idx: usize) -> usize {
        let n = self.points_per_axis;
        let [i, j, l] = self.split(idx);
        self.linear((n - i) % n, (n - j) % n, (n - l) % n)
    }

    /// Wavevector of a linear mode index.
    pub fn wavevector(&self, idx: usize) -> [f64; 3] {
        let dk = 2.0 * std::f64::consts::PI / self.box_size;
        let [i, j, l] = self.split(idx);
        [
            dk * self.signed(i) as f64,
            dk * self.signed(j) as f64,
            dk * self.signed(l) as f64,
        ]
    }

    pub fn wavenumber(&self, idx: usize) -> f64 {
        let [kx, ky, kz] = self.wavevector(idx);
        (kx * kx + ky * ky + kz * kz).sqrt()
    }

    /// Whether mode `idx` may carry a nonzero coefficient.
    pub fn is_active(&self, idx: usize) -> bool {
        if idx == 0 {
            return false;
        }
        let half = self.points_per_axis / 2;
        if self.split(idx).contains(&half) {
            return false;
        }
        self.wavenumber(idx) <= self.k_max
    }

    /// σ_k² = κ·ħc·|k|/L³.
    pub fn mode_variance(&self, idx: usize) -> f64 {
        if !self.is_active(idx) {
            return 0.0;
        }
        self.kappa * self.hbar_c * self.wavenumber(idx) / self.box_size.powi(3)
    }
}

/// One realization of the Fourier coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct ModeDraw {
    spec: LatticeSpec,
    seed: u64,
    stream: u64,
    coefficients: Vec<Complex64>,
}

impl ModeDraw {
    /// Wraps hand-built coefficients. Length and the DC mode are checked
    /// here; the full Hermitian check happens at synthesis.
    pub fn from_coefficients(spec: LatticeSpec, coefficients: Vec<Complex64>) -> Result<Self> {
        if coefficients.len() != spec.sites() {
            return Err(Error::Config(format!(
                "expected {} coefficients, got {}",
                spec.sites(),
                coefficients.len()
            )));
        }
        if coefficients[0] != Complex64::new(0.0, 0.0) {
            return Err(Error::Config(
                "the k = 0 (DC) coefficient must be zero".into(),
            ));
        }
        Ok(ModeDraw {
            spec,
            seed: 0,
            stream: 0,
            coefficients,
        })
    }

    pub fn spec(&self) -> &LatticeSpec {
        &self.spec
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream(&self) -> u64 {
        self.stream
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    /// Verifies ξ(−k) = ξ*(k) exactly, ξ(0) = 0 and zeros outside the
    /// active set.
    pub fn check_invariants(&self) -> Result<()> {
        let spec = &self.spec;
        for (idx, xi) in self.coefficients.iter().enumerate() {
            if !spec.is_active(idx) {
                if *xi != Complex64::new(0.0, 0.0) {
                    return Err(Error::Invariant(format!(
                        "inactive mode {:?} has coefficient {xi}",
                        spec.split(idx)
                    )));
                }
                continue;
            }
            let partner = self.coefficients[spec.conjugate_index(idx)];
            if partner != xi.conj() {
                return Err(Error::Invariant(format!(
                    "Hermitian symmetry broken at mode {:?}",
                    spec.split(idx)
                )));
            }
        }
        Ok(())
    }

    /// Σ|ξ(k)|².
    pub fn power(&self) -> f64 {
        self.coefficients.iter().map(|c| c.norm_sqr()).sum()
    }
}

/// Draws coefficients from stream 0 of `seed`.
pub fn draw_modes(spec: &LatticeSpec, seed: u64) -> Result<ModeDraw> {
    draw_modes_stream(spec, seed, 0)
}

/// Draws coefficients from an independent ChaCha stream of the master
/// seed. Parallel draws use `stream = draw index`, so the result does not
/// depend on which thread runs which draw.
pub fn draw_modes_stream(spec: &LatticeSpec, seed: u64, stream: u64) -> Result<ModeDraw> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let mut coefficients = vec![Complex64::new(0.0, 0.0); spec.sites()];
    for idx in 0..spec.sites() {
        let partner = spec.conjugate_index(idx);
        if partner <= idx || !spec.is_active(idx) {
            continue;
        }
        let sd = (0.5 * spec.mode_variance(idx)).sqrt();
        let re: f64 = StandardNormal.sample(&mut rng);
        let im: f64 = StandardNormal.sample(&mut rng);
        let xi = Complex64::new(sd * re, sd * im);
        coefficients[idx] = xi;
        coefficients[partner] = xi.conj();
    }
    Ok(ModeDraw {
        spec: *spec,
        seed,
        stream,
        coefficients,
    })
}
