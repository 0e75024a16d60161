#![allow(clippy::excessive_precision)]

use proptest::prelude::*;
use zpflab::casimir::{casimir_energy_modesum, regulated_cubic_sum, CasimirConfig};
use zpflab::units::{constants_for, Dimension, Quantity, UnitSystem};
use zpflab::Error;

// 50-digit closed-form values; regenerate with tests/oracles/regulated_sum.py.
const ORACLE: [(f64, f64); 8] = [
    (0.05, 0.008328374100778076288342048673),
    (0.1, 0.008313509414086518131809173755),
    (0.2, 0.008254245359682235712086750927),
    (0.4, 0.008020274703123437272828652074),
    (0.7, 0.0074015867711473208595831864),
    (1.0, 0.0065127966367601482732973029),
    (3.0, -0.0006898856453452003257411448656),
    (10.0, -0.0005545835784817055196313343097),
];

#[test]
fn matches_closed_form_oracle() {
    for (eps, expected) in ORACLE {
        let got = regulated_cubic_sum(eps).unwrap();
        let rel = ((got - expected) / expected).abs();
        assert!(rel < 1e-12, "eps={eps}: {got} vs {expected} (rel {rel:e})");
    }
}

#[test]
fn extrapolates_to_zeta_minus_three() {
    let n = constants_for(UnitSystem::Natural);
    let cfg = CasimirConfig::new(
        Quantity::new(1.0, Dimension::AREA, UnitSystem::Natural),
        Quantity::new(1.0, Dimension::LENGTH, UnitSystem::Natural),
    )
    .unwrap();
    let result = casimir_energy_modesum(&cfg, &n).unwrap();
    assert!((result.zeta_check - 1.0 / 120.0).abs() < 1e-6);
    let residuals = &result.diagnostics.sum_extrapolation.residuals;
    assert!(residuals.last().unwrap().abs() < residuals[0].abs());
}

#[test]
fn rejects_non_positive_regulators() {
    for eps in [0.0, -0.1, f64::NAN, f64::INFINITY] {
        assert!(
            matches!(regulated_cubic_sum(eps), Err(Error::Domain { .. })),
            "eps={eps}"
        );
    }
}

/// f64 closed form, accurate enough away from small ε.
fn closed_form_f64(eps: f64) -> f64 {
    let x = (-eps).exp();
    let d = -(-eps).exp_m1();
    x * (1.0 + 4.0 * x + x * x) / d.powi(4) - 6.0 / eps.powi(4)
}

proptest! {
    #[test]
    fn agrees_with_f64_closed_form(eps in 1.0f64..30.0) {
        let got = regulated_cubic_sum(eps).unwrap();
        let scale = 6.0 / eps.powi(4);
        prop_assert!((got - closed_form_f64(eps)).abs() < 1e-13 * scale.max(1e-3));
    }

    #[test]
    fn approaches_limit_quadratically(eps in 0.01f64..0.3) {
        // S(ε) = ζ(−3) + ζ(−5)ε²/2 + ζ(−7)ε⁴/24 + … = 1/120 − ε²/504 + ε⁴/5760 − …
        let got = regulated_cubic_sum(eps).unwrap();
        let series = 1.0 / 120.0 - eps * eps / 504.0;
        prop_assert!((got - series).abs() < eps.powi(4) / 5000.0);
    }
}
