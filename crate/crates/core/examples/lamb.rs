//! Hydrogen s-level shift from zero-point jitter of the electron.

use zpflab::lamb::{
    default_welton_cutoffs, energy_in_ev, hydrogen_s_shift, shift_to_frequency, welton_jitter,
    HydrogenState,
};
use zpflab::units::{constants_for, UnitSystem};

fn main() -> zpflab::Result<()> {
    let g = constants_for(UnitSystem::Gaussian);
    let (lo, hi) = default_welton_cutoffs(&g);
    let jitter = welton_jitter(&lo, &hi, &g)?;
    println!(
        "per-axis jitter {:.4e} cm^2 ({})",
        jitter.value().value,
        jitter.provenance()
    );

    for (n, ell) in [(1, 0), (2, 0), (2, 1), (3, 0)] {
        let shift = hydrogen_s_shift(&HydrogenState::new(n, ell)?, &jitter, &g)?;
        let mhz = shift_to_frequency(&shift, &g)?.value / 1e6;
        println!(
            "n={n} l={ell}: {:.4e} erg = {:.4e} eV = {mhz:8.1} MHz",
            shift.value,
            energy_in_ev(&shift)?
        );
    }
    Ok(())
}
