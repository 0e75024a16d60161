use rayon::prelude::*;
use serde::Serialize;

use super::coarse::{grid_mean_squares, validate_scales};
use super::{
    draw_modes_stream, fit_scaling, synthesize_field, CoarseGrainReport, LatticeSpec, ScalingFit,
    Window,
};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScalingRunConfig {
    pub spec: LatticeSpec,
    pub draws: usize,
    pub master_seed: u64,
    pub scales: Vec<f64>,
    pub window: Window,
    /// Worker threads; `None` uses rayon's default.
    #[serde(skip)]
    pub threads: Option<usize>,
}

/// Post-run consistency checks.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunChecks {
    /// Largest |Σ|ξ|² − N⁻³ΣB²| / Σ|ξ|² over draws.
    pub max_parseval_error: f64,
    /// Largest |mean(B)| / rms(B) over draws.
    pub max_mean_to_rms: f64,
    /// Pooled RMS never rises with l by more than 5 standard errors.
    pub rms_non_increasing: bool,
}

impl RunChecks {
    pub fn passed(&self) -> bool {
        self.max_parseval_error <= 1e-8 && self.max_mean_to_rms <= 1e-10 && self.rms_non_increasing
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScalingRun {
    pub report: CoarseGrainReport,
    pub fit: Option<ScalingFit>,
    pub checks: RunChecks,
}

struct DrawSummary {
    mean_squares: Vec<f64>,
    parseval_error: f64,
    mean_to_rms: f64,
}

fn one_draw(cfg: &ScalingRunConfig, index: usize) -> Result<DrawSummary> {
    let draw = draw_modes_stream(&cfg.spec, cfg.master_seed, index as u64)?;
    let grid = synthesize_field(&draw)?;
    let power = draw.power();
    let parseval_error = if power > 0.0 {
        (power - grid.mean_square()).abs() / power
    } else {
        0.0
    };
    let rms = grid.rms();
    let mean_to_rms = if rms > 0.0 {
        grid.mean().abs() / rms
    } else {
        0.0
    };
    Ok(DrawSummary {
        mean_squares: grid_mean_squares(&grid, &cfg.scales, cfg.window)?,
        parseval_error,
        mean_to_rms,
    })
}

/// Draws `cfg.draws` independent fields, pools their coarse-grained RMS and
/// fits the scaling exponent (when at least three scales spanning a factor
/// of 8 are given). Grids are reduced as soon as they are made.
///
/// Draw `i` always uses ChaCha stream `i` of the master seed and results
/// are reduced in draw order, so the output is identical for any thread
/// count.
pub fn scaling_run(cfg: &ScalingRunConfig) -> Result<ScalingRun> {
    if cfg.draws == 0 {
        return Err(Error::domain("draws", "must be at least 1"));
    }
    validate_scales(&cfg.spec, &cfg.scales, cfg.window)?;
    let work = || -> Result<Vec<DrawSummary>> {
        (0..cfg.draws)
            .into_par_iter()
            .map(|i| one_draw(cfg, i))
            .collect()
    };
    let summaries = match cfg.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| Error::Config(format!("thread pool: {e}")))?
            .install(work)?,
        None => work()?,
    };
    let per_draw: Vec<Vec<f64>> = summaries.iter().map(|s| s.mean_squares.clone()).collect();
    let report = CoarseGrainReport::from_mean_squares(cfg.window, cfg.scales.clone(), &per_draw)?;

    let rms_non_increasing = report
        .rms
        .windows(2)
        .zip(report.stderr.windows(2))
        .all(|(r, se)| {
            let tol = if se[0].is_finite() && se[1].is_finite() {
                5.0 * (se[0].powi(2) + se[1].powi(2)).sqrt()
            } else {
                0.0
            };
            r[1] <= r[0] + tol
        });
    let checks = RunChecks {
        max_parseval_error: summaries
            .iter()
            .map(|s| s.parseval_error)
            .fold(0.0, f64::max),
        max_mean_to_rms: summaries.iter().map(|s| s.mean_to_rms).fold(0.0, f64::max),
        rms_non_increasing,
    };
    let fit = match fit_scaling(&report) {
        Ok(fit) => Some(fit),
        Err(Error::Domain { param, .. }) if param == "scales" => None,
        Err(e) => return Err(e),
    };
    Ok(ScalingRun {
        report,
        fit,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(threads: Option<usize>) -> ScalingRunConfig {
        ScalingRunConfig {
            spec: LatticeSpec::with_nyquist_cutoff(1.0, 16, 1.0).unwrap(),
            draws: 6,
            master_seed: 7,
            scales: vec![0.0625, 0.125, 0.25, 0.5],
            window: Window::Cube,
            threads,
        }
    }

    #[test]
    fn thread_count_does_not_change_results() {
        let a = scaling_run(&cfg(Some(1))).unwrap();
        let b = scaling_run(&cfg(Some(4))).unwrap();
        assert_eq!(a, b);
        assert!(a.checks.passed());
        assert!(a.fit.is_some());
    }

    #[test]
    fn zero_draws_rejected() {
        let mut c = cfg(None);
        c.draws = 0;
        assert!(matches!(scaling_run(&c), Err(Error::Domain { .. })));
    }

    #[test]
    fn too_few_scales_skip_fit() {
        let mut c = cfg(None);
        c.scales = vec![0.25, 0.5];
        let run = scaling_run(&c).unwrap();
        assert!(run.fit.is_none());
    }
}
