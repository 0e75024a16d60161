//! Constants in each unit system, plus a dimension-checked calculation.

use zpflab::units::{compton_time, constants_for, Dimension, Quantity, UnitSystem};

fn main() -> zpflab::Result<()> {
    for system in [UnitSystem::Si, UnitSystem::Gaussian, UnitSystem::Natural] {
        let table = constants_for(system);
        println!("{system} ({})", table.snapshot);
        for (name, q) in table.entries() {
            println!("  {name:<9} {:>24.16e}  {}", q.value, q.unit_label());
        }
    }

    let g = constants_for(UnitSystem::Gaussian);
    let tau_p = compton_time(&g.m_p)?;
    println!(
        "proton Compton time: {:.6e} {}",
        tau_p.value,
        tau_p.unit_label()
    );

    // √(ħc) carries charge dimension in Gaussian units; e²/ħc is α.
    println!("sqrt(hbar c)/e = {:.12}", (g.sqrt_hbar_c() / g.e).value);
    println!("alpha from e, hbar, c = {:.12e}", g.alpha_from_charge());

    let one_tesla = Quantity::new(1.0, Dimension::SI_FIELD, UnitSystem::Si).to_gaussian()?;
    println!("1 T = {} {}", one_tesla.value, one_tesla.unit_label());

    let area = Quantity::new(2.0, Dimension::AREA, UnitSystem::Si);
    let length = Quantity::new(1.0, Dimension::LENGTH, UnitSystem::Si);
    match area.try_add(&length) {
        Ok(_) => unreachable!(),
        Err(e) => println!("adding m^2 to m: {e}"),
    }
    Ok(())
}
