//! Current induced in a coil by the field fluctuation over an extent l
//! during one Compton time.

use zpflab::coil::{zpf_tap_estimate, CoilSpec};
use zpflab::units::{compton_time, constants_for, Dimension, Quantity, UnitSystem};

fn main() -> zpflab::Result<()> {
    for system in [UnitSystem::Gaussian, UnitSystem::Si] {
        let table = constants_for(system);
        let q = |v, d| Quantity::new(v, d, system);
        let (area, resistance, l) = match system {
            UnitSystem::Si => (1e-4, 1.0, 1e-12),
            _ => (1.0, 1.0 / 8.987551787e11, 1e-10),
        };
        let spec = CoilSpec::new(
            1000,
            q(area, Dimension::AREA),
            q(resistance, Dimension::resistance(system)),
        )?;
        for particle in ["electron", "proton"] {
            let tau = compton_time(&table.particle_mass(particle)?)?;
            let est = zpf_tap_estimate(&spec, &q(l, Dimension::LENGTH), &tau, &table)?;
            println!(
                "{system} {particle}: B {:.4e} {}, current {:.4e} {} (charge form {:.4e}, ratio {:.6})",
                est.field.value,
                est.field.unit_label(),
                est.current_exact.value,
                est.current_exact.unit_label(),
                est.current_paper.value,
                est.ratio
            );
        }
    }
    println!(
        "1/sqrt(alpha) = {:.6}",
        1.0 / constants_for(UnitSystem::Gaussian).alpha.value.sqrt()
    );
    Ok(())
}
