use serde::Serialize;

use super::{FieldGrid, LatticeSpec};
use crate::error::{Error, Result};

/// How the field is averaged over the extent l.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Window {
    /// Partition the box into (L/l)³ cubes and average within each.
    /// l must be a whole number of cells dividing N.
    Cube,
    /// Gaussian smoothing with σ = l/√12, the same second moment as a cube
    /// of side l. Evaluated through Parseval: ⟨B_l²⟩ = Σ|ξ(k)|² e^{−k²l²/12}.
    ///
    /// The cube's transfer function only decays as (k l)⁻² along lattice
    /// axes, which lets the |k| spectrum leak a ln(k_max l) factor into the
    /// cube RMS; the Gaussian tail removes it.
    Gaussian,
}

impl std::str::FromStr for Window {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cube" => Ok(Window::Cube),
            "gaussian" => Ok(Window::Gaussian),
            other => Err(Error::domain(
                "window",
                format!("unknown window '{other}' (expected cube or gaussian)"),
            )),
        }
    }
}

impl std::fmt::Display for Window {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Window::Cube => "cube",
            Window::Gaussian => "gaussian",
        })
    }
}

/// Pooled RMS of the coarse-grained field at each scale.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CoarseGrainReport {
    pub window: Window,
    pub scales: Vec<f64>,
    pub rms: Vec<f64>,
    /// Standard error of each pooled RMS from the spread between draws
    /// (NaN with a single draw).
    pub stderr: Vec<f64>,
    /// Sample variance across draws of the per-draw mean square.
    pub per_draw_variance: Vec<f64>,
    pub draws: usize,
}

impl CoarseGrainReport {
    /// Pools per-draw mean squares `per_draw[d][s]`.
    pub fn from_mean_squares(
        window: Window,
        scales: Vec<f64>,
        per_draw: &[Vec<f64>],
    ) -> Result<Self> {
        let draws = per_draw.len();
        if draws == 0 {
            return Err(Error::domain("grids", "need at least one field grid"));
        }
        let mut rms = Vec::with_capacity(scales.len());
        let mut stderr = Vec::with_capacity(scales.len());
        let mut per_draw_variance = Vec::with_capacity(scales.len());
        for s in 0..scales.len() {
            let mean = per_draw.iter().map(|d| d[s]).sum::<f64>() / draws as f64;
            let var = if draws > 1 {
                per_draw.iter().map(|d| (d[s] - mean).powi(2)).sum::<f64>() / (draws - 1) as f64
            } else {
                f64::NAN
            };
            let r = mean.sqrt();
            rms.push(r);
            // delta method: se(√m) = se(m) / (2√m)
            stderr.push((var / draws as f64).sqrt() / (2.0 * r));
            per_draw_variance.push(var);
        }
        Ok(CoarseGrainReport {
            window,
            scales,
            rms,
            stderr,
            per_draw_variance,
            draws,
        })
    }
}

/// Top-hat cube coarse-graining pooled over `grids`.
pub fn coarse_grain_rms(grids: &[FieldGrid], scales: &[f64]) -> Result<CoarseGrainReport> {
    coarse_grain_rms_with(grids, scales, Window::Cube)
}

pub fn coarse_grain_rms_with(
    grids: &[FieldGrid],
    scales: &[f64],
    window: Window,
) -> Result<CoarseGrainReport> {
    let first = grids
        .first()
        .ok_or_else(|| Error::domain("grids", "need at least one field grid"))?;
    let spec = *first.spec();
    if grids.iter().any(|g| *g.spec() != spec) {
        return Err(Error::domain("grids", "all grids must share one lattice"));
    }
    validate_scales(&spec, scales, window)?;
    let per_draw: Vec<Vec<f64>> = grids
        .iter()
        .map(|g| grid_mean_squares(g, scales, window))
        .collect::<Result<_>>()?;
    CoarseGrainReport::from_mean_squares(window, scales.to_vec(), &per_draw)
}

/// Cells per cube for a cube scale, or an error naming the bad scale.
fn cube_cells(spec: &LatticeSpec, l: f64) -> Result<usize> {
    let cells = l / spec.cell_size();
    let rounded = cells.round();
    let n = spec.points_per_axis();
    if rounded < 1.0
        || (cells - rounded).abs() > 1e-9 * cells
        || !n.is_multiple_of(rounded as usize)
    {
        return Err(Error::domain(
            "scale",
            format!(
                "{l} is not a whole number of cells dividing the box (cell size {})",
                spec.cell_size()
            ),
        ));
    }
    Ok(rounded as usize)
}

pub(crate) fn validate_scales(spec: &LatticeSpec, scales: &[f64], window: Window) -> Result<()> {
    if scales.is_empty() {
        return Err(Error::domain("scales", "need at least one scale"));
    }
    for pair in scales.windows(2) {
        if pair[1] <= pair[0] {
            return Err(Error::domain("scales", "must be strictly increasing"));
        }
    }
    for &l in scales {
        if !(l.is_finite() && l > 0.0 && l <= spec.box_size() * (1.0 + 1e-12)) {
            return Err(Error::domain(
                "scale",
                format!("{l} must lie in (0, box size {}]", spec.box_size()),
            ));
        }
        if window == Window::Cube {
            cube_cells(spec, l)?;
        }
    }
    Ok(())
}

/// Mean square of the coarse-grained field of one grid at each scale.
pub(crate) fn grid_mean_squares(
    grid: &FieldGrid,
    scales: &[f64],
    window: Window,
) -> Result<Vec<f64>> {
    let spec = grid.spec();
    match window {
        Window::Cube => scales
            .iter()
            .map(|&l| Ok(cube_mean_square(grid, cube_cells(spec, l)?)))
            .collect(),
        Window::Gaussian => {
            let spectrum = grid.spectrum();
            let k2: Vec<f64> = (0..spec.sites())
                .map(|idx| spec.wavenumber(idx).powi(2))
                .collect();
            Ok(scales
                .iter()
                .map(|&l| {
                    let s2 = l * l / 12.0;
                    spectrum
                        .iter()
                        .zip(&k2)
                        .map(|(xi, k2)| xi.norm_sqr() * (-k2 * s2).exp())
                        .sum()
                })
                .collect())
        }
    }
}

fn cube_mean_square(grid: &FieldGrid, cells: usize) -> f64 {
    let n = grid.spec().points_per_axis();
    let per_axis = n / cells;
    let mut sums = vec![0.0; per_axis.pow(3)];
    for i in 0..n {
        for j in 0..n {
            let row = ((i / cells) * per_axis + j / cells) * per_axis;
            for l in 0..n {
                sums[row + l / cells] += grid.at(i, j, l);
            }
        }
    }
    let volume = cells.pow(3) as f64;
    sums.iter().map(|s| (s / volume).powi(2)).sum::<f64>() / sums.len() as f64
}
