use num_complex::Complex64;
use rustfft::{FftDirection, FftPlanner};

use super::{LatticeSpec, ModeDraw};
use crate::error::{Error, Result};

/// Real field values on the N³ lattice, index `(i·N + j)·N + l`.
#[derive(Clone, Debug, PartialEq)]
pub struct FieldGrid {
    spec: LatticeSpec,
    values: Vec<f64>,
}

impl FieldGrid {
    pub fn from_values(spec: LatticeSpec, values: Vec<f64>) -> Result<Self> {
        if values.len() != spec.sites() {
            return Err(Error::Config(format!(
                "expected {} field values, got {}",
                spec.sites(),
                values.len()
            )));
        }
        if let Some(bad) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::domain("field", format!("non-finite value {bad}")));
        }
        Ok(FieldGrid { spec, values })
    }

    pub fn spec(&self) -> &LatticeSpec {
        &self.spec
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn at(&self, i: usize, j: usize, l: usize) -> f64 {
        self.values[self.spec.linear(i, j, l)]
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.values.len() as f64
    }

    pub fn mean_square(&self) -> f64 {
        self.values.iter().map(|v| v * v).sum::<f64>() / self.values.len() as f64
    }

    pub fn rms(&self) -> f64 {
        self.mean_square().sqrt()
    }

    /// Fourier coefficients ξ(k) = N⁻³ Σ_x B(x) e^{−ik·x}.
    pub fn spectrum(&self) -> Vec<Complex64> {
        let mut data: Vec<Complex64> = self
            .values
            .iter()
            .map(|&v| Complex64::new(v, 0.0))
            .collect();
        fft3_in_place(
            &mut data,
            self.spec.points_per_axis(),
            FftDirection::Forward,
        );
        let norm = 1.0 / self.spec.sites() as f64;
        data.iter_mut().for_each(|c| *c *= norm);
        data
    }
}

/// Unnormalized 3-D DFT over a cube of side `n` in row-major order.
///
/// Each pass transforms the contiguous axis and then rotates the axes
/// (i, j, l) → (l, i, j); three passes restore the original layout.
pub fn fft3_in_place(data: &mut [Complex64], n: usize, direction: FftDirection) {
    assert_eq!(data.len(), n * n * n);
    let fft = FftPlanner::new().plan_fft(n, direction);
    let mut scratch = vec![Complex64::new(0.0, 0.0); fft.get_inplace_scratch_len()];
    let mut rotated = vec![Complex64::new(0.0, 0.0); data.len()];
    for _ in 0..3 {
        fft.process_with_scratch(data, &mut scratch);
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    rotated[(l * n + i) * n + j] = data[(i * n + j) * n + l];
                }
            }
        }
        data.copy_from_slice(&rotated);
    }
}

/// B(x) = Σ_k ξ(k) e^{ik·x} on the lattice sites x = L/N · (i, j, l).
pub fn synthesize_field(draw: &ModeDraw) -> Result<FieldGrid> {
    draw.check_invariants()?;
    let spec = *draw.spec();
    let mut data = draw.coefficients().to_vec();
    fft3_in_place(&mut data, spec.points_per_axis(), FftDirection::Inverse);
    let values: Vec<f64> = data.iter().map(|c| c.re).collect();
    let rms = (values.iter().map(|v| v * v).sum::<f64>() / values.len() as f64).sqrt();
    let residue = data.iter().map(|c| c.im.abs()).fold(0.0, f64::max);
    if residue > 1e-10 * rms {
        return Err(Error::Invariant(format!(
            "imaginary residue {residue:e} exceeds 1e-10 of field rms {rms:e}"
        )));
    }
    FieldGrid::from_values(spec, values)
}
