//! Parallel-plate Casimir force: closed form, and the same coefficient
//! recovered from the exponentially regulated mode sum.

use zpflab::casimir::{
    casimir_energy_modesum, casimir_force_closed, regulated_cubic_sum, CasimirConfig,
};
use zpflab::units::{constants_for, Dimension, Quantity, UnitSystem};

fn main() -> zpflab::Result<()> {
    let si = constants_for(UnitSystem::Si);
    let area = Quantity::new(1e-4, Dimension::AREA, UnitSystem::Si);
    let sep = Quantity::new(1e-6, Dimension::LENGTH, UnitSystem::Si);
    let f = casimir_force_closed(&area, &sep, &si)?;
    println!("1 cm^2 plates 1 um apart: F = {:.5e} N", f.value);

    for eps in [1.0, 0.4, 0.1, 0.05] {
        println!("S({eps}) = {:.15}", regulated_cubic_sum(eps)?);
    }

    let nat = constants_for(UnitSystem::Natural);
    let cfg = CasimirConfig::new(
        Quantity::new(1.0, Dimension::AREA, UnitSystem::Natural),
        Quantity::new(1.0, Dimension::LENGTH, UnitSystem::Natural),
    )?;
    let r = casimir_energy_modesum(&cfg, &nat)?;
    let pi2 = std::f64::consts::PI.powi(2);
    println!(
        "extrapolated sum {:.12} (1/120 = {:.12})",
        r.zeta_check,
        1.0 / 120.0
    );
    println!(
        "c_E {:.12} (pi^2/720 = {:.12})",
        r.energy_coefficient,
        pi2 / 720.0
    );
    println!(
        "force coefficient {:.10} (pi^2/240 = {:.10})",
        r.force_coefficient,
        pi2 / 240.0
    );
    for p in &r.diagnostics.points {
        println!(
            "  eps {:<5} S {:.12} F {:.10}",
            p.epsilon, p.regulated_sum, p.force
        );
    }
    Ok(())
}
