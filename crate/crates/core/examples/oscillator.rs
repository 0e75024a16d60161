//! Ground state of a harmonic oscillator: width, quadrature checks and
//! Monte Carlo position samples.

use zpflab::oscillator::{
    fluctuation_width, ground_state_psi, normalization_quadrature, position_variance,
    sample_positions, variance_quadrature, OscillatorParams, SampleMoments,
};
use zpflab::units::{constants_for, UnitSystem};

fn main() -> zpflab::Result<()> {
    let g = constants_for(UnitSystem::Gaussian);
    // an electron bound at an optical frequency
    let p = OscillatorParams::new(g.m_e.value, 3.0e15, g.hbar.value)?;
    println!(
        "width sqrt(hbar/m omega) = {:.6e} cm",
        fluctuation_width(&p)
    );
    println!("<x^2> = {:.6e} cm^2", position_variance(&p));
    println!(
        "quadrature: norm {:.15}, <x^2> {:.6e}",
        normalization_quadrature(&p),
        variance_quadrature(&p)
    );
    println!("psi(0) = {:.6e}", ground_state_psi(0.0, &p));

    let unit = OscillatorParams::new(1.0, 1.0, 1.0)?;
    let n = 200_000;
    let m = SampleMoments::of(&sample_positions(&unit, 42, n)?);
    let se = 0.5 * (2.0 / n as f64).sqrt();
    println!(
        "natural units, {n} samples: mean {:+.4}, variance {:.4} (expected 0.5 ± {se:.4}), excess kurtosis {:+.4}",
        m.mean, m.variance, m.excess_kurtosis
    );
    Ok(())
}
