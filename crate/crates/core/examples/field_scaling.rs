//! Spectral field ensemble: synthesize draws, coarse-grain and fit the
//! power law of the RMS against the averaging scale.

use zpflab::field::{
    draw_modes, scaling_run, synthesize_field, LatticeSpec, ScalingRunConfig, Window,
};

fn main() -> zpflab::Result<()> {
    let spec = LatticeSpec::with_nyquist_cutoff(1.0, 32, 1.0)?;
    let draw = draw_modes(&spec, 1)?;
    let grid = synthesize_field(&draw)?;
    println!(
        "one draw on 32^3: rms {:.4}, mean/rms {:.1e}, mode power {:.4}",
        grid.rms(),
        grid.mean() / grid.rms(),
        draw.power()
    );

    for window in [Window::Gaussian, Window::Cube] {
        let cfg = ScalingRunConfig {
            spec,
            draws: 24,
            master_seed: 7,
            scales: vec![1.0 / 16.0, 1.0 / 8.0, 1.0 / 4.0, 1.0 / 2.0],
            window,
            threads: None,
        };
        let run = scaling_run(&cfg)?;
        println!("{window} window");
        for ((l, rms), se) in run
            .report
            .scales
            .iter()
            .zip(&run.report.rms)
            .zip(&run.report.stderr)
        {
            println!("  l = {l:<7} rms = {rms:10.4} ± {se:.4}");
        }
        if let Some(fit) = run.fit {
            println!(
                "  exponent {:.3} ± {:.3}, r^2 {:.5}",
                fit.exponent, fit.stderr_exponent, fit.r_squared
            );
        }
    }
    Ok(())
}
