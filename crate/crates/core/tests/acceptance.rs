//! Acceptance suite. Runs every criterion at its stated tolerance and prints
//! one PASS/FAIL line per criterion; exits non-zero if any fails.

#![allow(clippy::excessive_precision)]

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use zpflab::casimir::{casimir_energy_modesum, regulated_cubic_sum, CasimirConfig};
use zpflab::coil::{coil_current, zpf_tap_estimate, CoilSpec};
use zpflab::field::{predicted_rms, scaling_run, LatticeSpec, ScalingRunConfig, Window};
use zpflab::lamb::{
    default_welton_cutoffs, hydrogen_s_shift, shift_to_frequency, welton_jitter, HydrogenState,
};
use zpflab::oscillator::{
    fluctuation_width, normalization_quadrature, position_variance, sample_positions,
    OscillatorParams, SampleMoments,
};
use zpflab::units::{compton_time, constants_for, Dimension, Quantity, UnitSystem};

struct Outcome {
    passed: bool,
    detail: String,
}

impl Outcome {
    fn new(passed: bool, detail: impl Into<String>) -> Self {
        Outcome {
            passed,
            detail: detail.into(),
        }
    }
}

type Criterion<'a> = (&'a str, Duration, Box<dyn Fn() -> Outcome>);

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn nat(value: f64, dim: Dimension) -> Quantity {
    Quantity::new(value, dim, UnitSystem::Natural)
}

fn casimir_coefficient() -> Outcome {
    let constants = constants_for(UnitSystem::Natural);
    let cfg = CasimirConfig::new(nat(1.0, Dimension::AREA), nat(1.0, Dimension::LENGTH)).unwrap();
    let r = match casimir_energy_modesum(&cfg, &constants) {
        Ok(r) => r,
        Err(e) => return Outcome::new(false, format!("mode sum failed: {e}")),
    };
    let c_e = rel(r.energy_coefficient, std::f64::consts::PI.powi(2) / 720.0);
    let force = rel(r.force_modesum.value, r.force_closed.value);
    Outcome::new(
        c_e < 1e-3 && force < 1e-3,
        format!(
            "c_E = {:.10} (rel err {c_e:.1e}), F = {:.10} vs closed {:.10} (rel err {force:.1e})",
            r.energy_coefficient, r.force_modesum.value, r.force_closed.value
        ),
    )
}

fn regulated_sum_oracle() -> Outcome {
    // 50-digit closed-form values from tests/oracles/regulated_sum.py
    let oracle = [
        (0.05, 0.008328374100778076288342048673),
        (0.1, 0.008313509414086518131809173755),
        (0.2, 0.008254245359682235712086750927),
        (0.4, 0.008020274703123437272828652074),
        (1.0, 0.0065127966367601482732973029),
        (10.0, -0.0005545835784817055196313343097),
    ];
    let mut worst: f64 = 0.0;
    for (eps, expected) in oracle {
        match regulated_cubic_sum(eps) {
            Ok(got) => worst = worst.max(rel(got, expected)),
            Err(e) => return Outcome::new(false, format!("eps={eps}: {e}")),
        }
    }
    let constants = constants_for(UnitSystem::Natural);
    let cfg = CasimirConfig::new(nat(1.0, Dimension::AREA), nat(1.0, Dimension::LENGTH)).unwrap();
    let zeta = casimir_energy_modesum(&cfg, &constants)
        .map(|r| r.zeta_check)
        .unwrap_or(f64::NAN);
    let zeta_err = (zeta - 1.0 / 120.0).abs();
    Outcome::new(
        worst < 1e-10 && zeta_err < 1e-6,
        format!("worst rel err {worst:.1e}; limit {zeta:.12} (|Δ| = {zeta_err:.1e} from 1/120)"),
    )
}

fn field_scaling() -> Outcome {
    let spec = LatticeSpec::with_nyquist_cutoff(1.0, 64, 1.0).unwrap();
    let cfg = ScalingRunConfig {
        spec,
        draws: 50,
        master_seed: 20240601,
        scales: vec![1.0 / 32.0, 1.0 / 16.0, 1.0 / 8.0, 1.0 / 4.0],
        window: Window::Gaussian,
        threads: None,
    };
    let run = match scaling_run(&cfg) {
        Ok(r) => r,
        Err(e) => return Outcome::new(false, format!("run failed: {e}")),
    };
    let Some(fit) = run.fit else {
        return Outcome::new(false, "no fit");
    };
    Outcome::new(
        (fit.exponent + 2.0).abs() <= 0.1 && fit.r_squared >= 0.99 && run.checks.passed(),
        format!(
            "N=64, 50 draws, L/32..L/4, gaussian window: exponent {:.4} ± {:.4}, r² {:.5}",
            fit.exponent, fit.stderr_exponent, fit.r_squared
        ),
    )
}

fn oscillator_ground_state() -> Outcome {
    let mut worst_norm: f64 = 0.0;
    let mut worst_width: f64 = 0.0;
    for (m, omega, hbar) in [
        (1.0, 1.0, 1.0),
        (9.109e-28, 1e15, 1.0546e-27),
        (3.0, 0.2, 1.0),
    ] {
        let p = OscillatorParams::new(m, omega, hbar).unwrap();
        worst_norm = worst_norm.max((normalization_quadrature(&p) - 1.0).abs());
        worst_width = worst_width.max(rel(
            fluctuation_width(&p).powi(2),
            2.0 * position_variance(&p),
        ));
    }
    let p = OscillatorParams::new(1.0, 1.0, 1.0).unwrap();
    let n = 1_000_000;
    let xs = sample_positions(&p, 17, n).unwrap();
    let moments = SampleMoments::of(&xs);
    let var = position_variance(&p);
    let se = var * (2.0 / (n as f64 - 1.0)).sqrt();
    let z = (moments.variance - var) / se;
    Outcome::new(
        worst_norm < 1e-10 && z.abs() < 5.0 && worst_width < 1e-14,
        format!(
            "normalization err {worst_norm:.1e}; MC variance {:.6} vs {var} (z = {z:.2}); width² vs 2·var rel err {worst_width:.1e}",
            moments.variance
        ),
    )
}

fn lamb_shift() -> Outcome {
    let g = constants_for(UnitSystem::Gaussian);
    let (lo, hi) = default_welton_cutoffs(&g);
    let jitter = welton_jitter(&lo, &hi, &g).unwrap();
    let shift =
        |n, ell| hydrogen_s_shift(&HydrogenState::new(n, ell).unwrap(), &jitter, &g).unwrap();
    let mhz = shift_to_frequency(&shift(2, 0), &g).unwrap().value / 1e6;
    let p_shift = shift(2, 1).value;
    let base = shift(1, 0).value;
    let worst = (1..=8u32)
        .map(|n| rel(shift(n, 0).value * f64::from(n).powi(3), base))
        .fold(0.0, f64::max);
    Outcome::new(
        (350.0..=3000.0).contains(&mhz) && p_shift == 0.0 && worst < 1e-12,
        format!("2s: {mhz:.1} MHz; 2p: {p_shift}; n³·ΔE_n spread {worst:.1e}"),
    )
}

fn coil_tap() -> Outcome {
    let g = constants_for(UnitSystem::Gaussian);
    let sys = UnitSystem::Gaussian;
    let q = |v, d| Quantity::new(v, d, sys);
    let coil = |n, a, r| {
        CoilSpec::new(n, q(a, Dimension::AREA), q(r, Dimension::resistance(sys))).unwrap()
    };
    let tau = compton_time(&g.m_e).unwrap();

    let spec = coil(1000, 1.0, 1e-12);
    let l = q(1e-10, Dimension::LENGTH);
    let est = zpf_tap_estimate(&spec, &l, &tau, &g).unwrap();
    let composed = coil_current(&predicted_rms(&l, &g).unwrap(), &spec, &tau).unwrap();
    let identity = composed == est.current_exact;
    let ratio_err = (est.ratio - 1.0 / g.alpha.value.sqrt()).abs();

    let current = |n: u32, a: f64, r: f64, l: f64, t: f64| {
        coil_current(
            &predicted_rms(&q(l, Dimension::LENGTH), &g).unwrap(),
            &coil(n, a, r),
            &q(t, Dimension::TIME),
        )
        .unwrap()
        .value
    };
    let mut runner = TestRunner::new(Config {
        cases: 256,
        failure_persistence: None,
        ..Config::default()
    });
    let laws = runner.run(
        &(
            1u32..500,
            1e-4f64..1e2,
            1e-14f64..1e-6,
            1e-12f64..1e-6,
            1e-24f64..1e-18,
            2u32..9,
            1.5f64..10.0,
        ),
        |(n, a, r, l, t, k, s)| {
            let i = current(n, a, r, l, t);
            let close = |x: f64, y: f64| rel(x, y) < 1e-12;
            prop_assert!(close(current(n * k, a, r, l, t), i * f64::from(k)), "N");
            prop_assert!(close(current(n, a * s, r, l, t), i * s), "A");
            prop_assert!(close(current(n, a, r * s, l, t), i / s), "1/R");
            prop_assert!(close(current(n, a, r, l * s, t), i / (s * s)), "l^-2");
            prop_assert!(close(current(n, a, r, l, t * s), i / s), "1/tau");
            Ok(())
        },
    );
    Outcome::new(
        identity && ratio_err < 1e-6 && laws.is_ok(),
        format!(
            "identity exact: {identity}; ratio {:.9} (|Δ| from 1/√α = {ratio_err:.1e}); scaling laws: {}",
            est.ratio,
            match &laws {
                Ok(()) => "256 cases ok".to_string(),
                Err(e) => e.to_string(),
            }
        ),
    )
}

fn run_cli(args: &[&str], threads: &str) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_zpflab"))
        .args(args)
        .env("ZPFLAB_THREADS", threads)
        .output()
        .expect("run zpflab")
}

fn determinism(dir: &Path) -> Outcome {
    let runs: [&[&str]; 2] = [
        &[
            "field",
            "scaling-run",
            "--grid",
            "32",
            "--box",
            "1",
            "--draws",
            "16",
            "--seed",
            "7",
            "--scales",
            "0.03125,0.0625,0.125,0.25",
        ],
        &[
            "oscillator",
            "--m",
            "1",
            "--omega",
            "1",
            "--units",
            "natural",
            "--samples",
            "200000",
            "--seed",
            "7",
        ],
    ];
    let mut failures = Vec::new();
    for (i, args) in runs.iter().enumerate() {
        let manifest = dir.join(format!("run{i}.json"));
        let manifest = manifest.to_str().unwrap();
        let mut first_args = args.to_vec();
        first_args.extend(["--manifest", manifest]);
        let first = run_cli(&first_args, "1");
        if !first.status.success() {
            failures.push(format!("{} failed", args[0]));
            continue;
        }
        for threads in ["2", "4", "8"] {
            if run_cli(args, threads).stdout != first.stdout {
                failures.push(format!("{} differs at {threads} threads", args[0]));
            }
            if run_cli(&["replay", manifest], threads).stdout != first.stdout {
                failures.push(format!("{} replay differs at {threads} threads", args[0]));
            }
        }
    }
    Outcome::new(
        failures.is_empty(),
        if failures.is_empty() {
            "field and oscillator output byte-identical across ZPFLAB_THREADS 1/2/4/8 and manifest replay".to_string()
        } else {
            failures.join("; ")
        },
    )
}

fn main() {
    let dir = tempfile::tempdir().expect("temp dir");
    let dir_path = dir.path().to_path_buf();
    let criteria: Vec<Criterion> = vec![
        (
            "1 casimir coefficient",
            Duration::from_secs(5),
            Box::new(casimir_coefficient),
        ),
        (
            "2 regulated sum oracle",
            Duration::from_secs(1),
            Box::new(regulated_sum_oracle),
        ),
        (
            "3 field scaling law",
            Duration::from_secs(300),
            Box::new(field_scaling),
        ),
        (
            "4 oscillator ground state",
            Duration::from_secs(10),
            Box::new(oscillator_ground_state),
        ),
        ("5 lamb shift", Duration::from_secs(1), Box::new(lamb_shift)),
        ("6 coil tap", Duration::from_secs(1), Box::new(coil_tap)),
        (
            "7 determinism",
            Duration::from_secs(60),
            Box::new(move || determinism(&dir_path)),
        ),
    ];

    let mut failed = 0;
    for (name, budget, check) in &criteria {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let in_time = elapsed <= *budget;
        let passed = outcome.passed && in_time;
        if !passed {
            failed += 1;
        }
        println!(
            "[{}] {name}: {} ({:.2} s, budget {} s{})",
            if passed { "PASS" } else { "FAIL" },
            outcome.detail,
            elapsed.as_secs_f64(),
            budget.as_secs(),
            if in_time { "" } else { ", over budget" },
        );
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
