use std::io::Write;

use serde_json::{json, Value};

use super::output::{io_err, json_num, num, Format, Report};
use super::{
    CasimirArgs, Cli, CoilArgs, Command, FieldCommand, LambArgs, OscillatorArgs, ScalingRunArgs,
};
use crate::casimir::{casimir_energy_modesum, casimir_force_closed, CasimirConfig};
use crate::coil::{zpf_tap_estimate, CoilSpec};
use crate::error::{Error, Result};
use crate::field::{scaling_run, LatticeSpec, ScalingRunConfig, Window};
use crate::lamb::{
    default_welton_cutoffs, energy_in_ev, hydrogen_s_shift, welton_jitter, HydrogenState,
    JitterVariance,
};
use crate::oscillator::{
    fluctuation_width, normalization_quadrature, position_variance, sample_positions,
    OscillatorParams, SampleMoments,
};
use crate::units::{compton_time, constants_for, si_values, Dimension, Quantity, UnitSystem};

/// What a finished subcommand reports back for its manifest.
pub struct Outcome {
    pub subcommand: String,
    pub args: Vec<String>,
    pub units: UnitSystem,
    pub seed: Option<u64>,
    pub parameters: Value,
    /// Headline results recorded alongside the parameters.
    pub results: Option<Value>,
    /// Set when results were written but a post-run check failed.
    pub check_failure: Option<String>,
}

/// Builds the canonical argument list recorded in the manifest.
struct Args(Vec<String>);

impl Args {
    fn new(path: &[&str]) -> Self {
        Args(path.iter().map(|s| s.to_string()).collect())
    }

    fn opt(&mut self, flag: &str, value: impl ToString) -> &mut Self {
        self.0.push(format!("--{flag}"));
        self.0.push(value.to_string());
        self
    }

    fn flag(&mut self, flag: &str, on: bool) -> &mut Self {
        if on {
            self.0.push(format!("--{flag}"));
        }
        self
    }

    fn globals(&mut self, units: UnitSystem, format: Format, seed: Option<u64>) -> Vec<String> {
        self.opt("units", units).opt("format", format);
        if let Some(seed) = seed {
            self.opt("seed", seed);
        }
        self.0.clone()
    }
}

pub fn execute(cli: &Cli, threads: Option<usize>, out: &mut Vec<u8>) -> Result<Outcome> {
    let g = &cli.global;
    match &cli.command {
        Command::Constants { system } => {
            let units = match (system, g.units) {
                (Some(a), Some(b)) if *a != b => {
                    return Err(Error::Config(format!(
                        "--system {a} conflicts with --units {b}"
                    )))
                }
                (Some(a), _) => *a,
                (None, b) => b.unwrap_or(UnitSystem::Gaussian),
            };
            let format = g.format.unwrap_or(Format::Csv);
            constants(units, format, out)
        }
        Command::Oscillator(a) => oscillator(
            a,
            g.units.unwrap_or(UnitSystem::Gaussian),
            g.format.unwrap_or(Format::Csv),
            g.seed.unwrap_or(0),
            out,
        ),
        Command::Field(FieldCommand::ScalingRun(a)) => field_scaling_run(
            a,
            g.units.unwrap_or(UnitSystem::Natural),
            g.format.unwrap_or(Format::Csv),
            g.seed.unwrap_or(0),
            threads,
            out,
        ),
        Command::Casimir(a) => casimir(
            a,
            g.units.unwrap_or(UnitSystem::Gaussian),
            g.format.unwrap_or(Format::Json),
            out,
        ),
        Command::Lamb(a) => lamb(
            a,
            g.units.unwrap_or(UnitSystem::Gaussian),
            g.format.unwrap_or(Format::Csv),
            out,
        ),
        Command::Coil(a) => coil(
            a,
            g.units.unwrap_or(UnitSystem::Gaussian),
            g.format.unwrap_or(Format::Json),
            out,
        ),
        Command::Replay { .. } => unreachable!("replay is resolved before execution"),
    }
}

fn outcome(
    subcommand: &str,
    args: Vec<String>,
    units: UnitSystem,
    seed: Option<u64>,
    parameters: Value,
) -> Outcome {
    Outcome {
        subcommand: subcommand.into(),
        args,
        units,
        seed,
        parameters,
        results: None,
        check_failure: None,
    }
}

fn constants(units: UnitSystem, format: Format, out: &mut Vec<u8>) -> Result<Outcome> {
    let table = constants_for(units);
    let mut report = Report::new();
    for (name, q) in table.entries() {
        report.quantity(name, &q);
    }
    report.text("snapshot", &table.snapshot);
    report.write(format, out)?;
    let args = Args::new(&["constants"])
        .opt("system", units)
        .opt("format", format)
        .0
        .clone();
    Ok(outcome(
        "constants",
        args,
        units,
        None,
        json!({ "system": units }),
    ))
}

fn oscillator(
    a: &OscillatorArgs,
    units: UnitSystem,
    format: Format,
    seed: u64,
    out: &mut Vec<u8>,
) -> Result<Outcome> {
    let table = constants_for(units);
    let p = OscillatorParams::new(a.m, a.omega, table.hbar.value)?;
    let length = |v: f64, power: i32| Quantity::new(v, Dimension::LENGTH.powi(power), units);
    let mut report = Report::new();
    report
        .number(
            "m",
            a.m,
            &Quantity::new(1.0, Dimension::MASS, units).unit_label(),
        )
        .number(
            "omega",
            a.omega,
            &Quantity::new(1.0, Dimension::FREQUENCY, units).unit_label(),
        )
        .quantity("width", &length(fluctuation_width(&p), 1))
        .quantity("variance", &length(position_variance(&p), 2))
        .number("normalization", normalization_quadrature(&p), "");
    if let Some(n) = a.samples {
        let xs = sample_positions(&p, seed, n)?;
        let m = SampleMoments::of(&xs);
        report
            .integer("samples", m.n as i64)
            .quantity("sample_mean", &length(m.mean, 1))
            .quantity("sample_variance", &length(m.variance, 2))
            .number("sample_excess_kurtosis", m.excess_kurtosis, "");
    }
    report.write(format, out)?;

    let mut args = Args::new(&["oscillator"]);
    args.opt("m", a.m).opt("omega", a.omega);
    let sampled = a.samples.is_some();
    if let Some(n) = a.samples {
        args.opt("samples", n);
    }
    let seed = sampled.then_some(seed);
    let args = args.globals(units, format, seed);
    let params =
        json!({ "m": a.m, "omega": a.omega, "hbar": table.hbar.value, "samples": a.samples });
    Ok(outcome("oscillator", args, units, seed, params))
}

fn field_scaling_run(
    a: &ScalingRunArgs,
    units: UnitSystem,
    format: Format,
    seed: u64,
    threads: Option<usize>,
    out: &mut Vec<u8>,
) -> Result<Outcome> {
    let table = constants_for(units);
    let window: Window = a.window.parse()?;
    let hbar_c = (table.hbar * table.c).value;
    let spec = match a.kmax {
        Some(k) => LatticeSpec::new(a.box_size, a.grid, k, a.kappa)?,
        None => LatticeSpec::with_nyquist_cutoff(a.box_size, a.grid, a.kappa)?,
    }
    .with_hbar_c(hbar_c)?;
    let cfg = ScalingRunConfig {
        spec,
        draws: a.draws,
        master_seed: seed,
        scales: a.scales.clone(),
        window,
        threads,
    };
    let run = scaling_run(&cfg)?;
    let report = &run.report;

    let fit = run.fit.as_ref();
    let summary = json!({
        "exponent": fit.map_or(Value::Null, |f| json_num(f.exponent)),
        "stderr_exponent": fit.map_or(Value::Null, |f| json_num(f.stderr_exponent)),
        "amplitude": fit.map_or(Value::Null, |f| json_num(f.amplitude)),
        "r_squared": fit.map_or(Value::Null, |f| json_num(f.r_squared)),
        "kappa": a.kappa,
        "seed": seed,
        "draws": a.draws,
        "grid": a.grid,
        "box": a.box_size,
        "k_max": spec.k_max(),
        "window": window.to_string(),
        "units": units,
        "checks": {
            "max_parseval_error": json_num(run.checks.max_parseval_error),
            "max_mean_to_rms": json_num(run.checks.max_mean_to_rms),
            "rms_non_increasing": run.checks.rms_non_increasing,
            "passed": run.checks.passed(),
        },
    });

    match format {
        Format::Csv => {
            writeln!(out, "scale,rms,stderr").map_err(io_err)?;
            for i in 0..report.scales.len() {
                writeln!(
                    out,
                    "{},{},{}",
                    num(report.scales[i]),
                    num(report.rms[i]),
                    num(report.stderr[i])
                )
                .map_err(io_err)?;
            }
        }
        Format::Json => {
            let rows: Vec<Value> = (0..report.scales.len())
                .map(|i| {
                    json!({
                        "scale": json_num(report.scales[i]),
                        "rms": json_num(report.rms[i]),
                        "stderr": json_num(report.stderr[i]),
                    })
                })
                .collect();
            writeln!(out, "{}", json!({ "rows": rows, "summary": summary })).map_err(io_err)?;
        }
    }
    if let Some(path) = &a.summary {
        let text = serde_json::to_string_pretty(&summary).expect("summary serializes");
        std::fs::write(path, text + "\n")
            .map_err(|e| Error::Config(format!("summary {}: {e}", path.display())))?;
    }

    let scales: Vec<String> = a.scales.iter().map(f64::to_string).collect();
    let mut args = Args::new(&["field", "scaling-run"]);
    args.opt("grid", a.grid)
        .opt("box", a.box_size)
        .opt("draws", a.draws)
        .opt("scales", scales.join(","))
        .opt("kappa", a.kappa)
        .opt("kmax", spec.k_max())
        .opt("window", window);
    if let Some(path) = &a.summary {
        args.opt("summary", path.display());
    }
    let args = args.globals(units, format, Some(seed));
    let params = json!({
        "grid": a.grid,
        "box": a.box_size,
        "draws": a.draws,
        "scales": a.scales,
        "kappa": a.kappa,
        "k_max": spec.k_max(),
        "window": window.to_string(),
    });
    let mut result = outcome("field scaling-run", args, units, Some(seed), params);
    result.results = Some(summary);
    if !run.checks.passed() {
        result.check_failure = Some(format!(
            "field run checks failed: parseval {:e}, mean/rms {:e}, rms non-increasing {}",
            run.checks.max_parseval_error,
            run.checks.max_mean_to_rms,
            run.checks.rms_non_increasing
        ));
    }
    Ok(result)
}

fn casimir(
    a: &CasimirArgs,
    units: UnitSystem,
    format: Format,
    out: &mut Vec<u8>,
) -> Result<Outcome> {
    let table = constants_for(units);
    let area = Quantity::new(a.area, Dimension::AREA, units);
    let sep = Quantity::new(a.sep, Dimension::LENGTH, units);
    let mut report = Report::new();
    report.quantity("area", &area).quantity("separation", &sep);
    if a.modesum {
        let result = casimir_energy_modesum(&CasimirConfig::new(area, sep)?, &table)?;
        let pi2 = std::f64::consts::PI.powi(2);
        report
            .quantity("force", &result.force_closed)
            .quantity("force_modesum", &result.force_modesum)
            .quantity("energy_per_area", &result.energy_per_area)
            .number("energy_coefficient", result.energy_coefficient, "")
            .number("energy_coefficient_expected", pi2 / 720.0, "")
            .number("force_coefficient", result.force_coefficient, "")
            .number("force_coefficient_expected", pi2 / 240.0, "")
            .number("zeta_minus_3", result.zeta_check, "")
            .json_extra(
                "diagnostics",
                serde_json::to_value(&result.diagnostics).expect("diagnostics serialize"),
            );
    } else {
        report.quantity("force", &casimir_force_closed(&area, &sep, &table)?);
    }
    report.write(format, out)?;
    let args = Args::new(&["casimir"])
        .opt("area", a.area)
        .opt("sep", a.sep)
        .flag("modesum", a.modesum)
        .globals(units, format, None);
    let params = json!({ "area": a.area, "sep": a.sep, "modesum": a.modesum });
    Ok(outcome("casimir", args, units, None, params))
}

fn lamb(a: &LambArgs, units: UnitSystem, format: Format, out: &mut Vec<u8>) -> Result<Outcome> {
    let table = constants_for(units);
    let state = HydrogenState::new(a.n, a.ell)?;
    let (jitter, omegas) = match a.jitter {
        Some(j) => (
            JitterVariance::new(Quantity::new(j, Dimension::AREA, units))?,
            None,
        ),
        None => {
            let (lo, hi) = default_welton_cutoffs(&table);
            let lo = a
                .omega_min
                .map_or(lo, |v| Quantity::new(v, Dimension::FREQUENCY, units));
            let hi = a
                .omega_max
                .map_or(hi, |v| Quantity::new(v, Dimension::FREQUENCY, units));
            (welton_jitter(&lo, &hi, &table)?, Some((lo.value, hi.value)))
        }
    };
    let shift = hydrogen_s_shift(&state, &jitter, &table)?;
    let si = si_values();
    let ev = energy_in_ev(&shift)?;
    let erg = match units {
        UnitSystem::Gaussian => shift.value,
        _ => ev * si.e * 1e7,
    };
    let hz = ev * si.e / (2.0 * std::f64::consts::PI * si.hbar);

    let mut report = Report::new();
    report
        .integer("n", i64::from(a.n))
        .integer("ell", i64::from(a.ell))
        .quantity("jitter", &jitter.value())
        .text("jitter_provenance", &jitter.provenance().to_string())
        .number("delta_e_erg", erg, "erg")
        .number("delta_e_ev", ev, "eV")
        .number("frequency_mhz", hz / 1e6, "MHz");
    report.write(format, out)?;

    let mut args = Args::new(&["lamb"]);
    args.opt("n", a.n).opt("ell", a.ell);
    match omegas {
        None => {
            args.opt("jitter", jitter.value().value);
        }
        Some((lo, hi)) => {
            args.opt("omega-min", lo).opt("omega-max", hi);
        }
    }
    let args = args.globals(units, format, None);
    let params = json!({
        "n": a.n,
        "ell": a.ell,
        "jitter": jitter.value().value,
        "jitter_provenance": jitter.provenance(),
    });
    Ok(outcome("lamb", args, units, None, params))
}

fn coil(a: &CoilArgs, units: UnitSystem, format: Format, out: &mut Vec<u8>) -> Result<Outcome> {
    let table = constants_for(units);
    let spec = CoilSpec::new(
        a.turns,
        Quantity::new(a.area, Dimension::AREA, units),
        Quantity::new(a.resistance, Dimension::resistance(units), units),
    )?;
    let l = Quantity::new(a.scale, Dimension::LENGTH, units);
    let tau = compton_time(&table.particle_mass(&a.particle)?)?;
    let est = zpf_tap_estimate(&spec, &l, &tau, &table)?;

    let mut report = Report::new();
    report
        .integer("turns", i64::from(a.turns))
        .quantity("area", &spec.area())
        .quantity("resistance", &spec.resistance())
        .quantity("scale", &est.l)
        .text("particle", &a.particle)
        .quantity("tau", &est.tau)
        .quantity("field", &est.field)
        .quantity("current_paper", &est.current_paper)
        .quantity("current_exact", &est.current_exact)
        .number("ratio", est.ratio, "")
        .number("inverse_sqrt_alpha", est.inverse_sqrt_alpha, "");
    report.write(format, out)?;
    let args = Args::new(&["coil"])
        .opt("turns", a.turns)
        .opt("area", a.area)
        .opt("resistance", a.resistance)
        .opt("scale", a.scale)
        .opt("particle", &a.particle)
        .globals(units, format, None);
    let params = json!({
        "turns": a.turns,
        "area": a.area,
        "resistance": a.resistance,
        "scale": a.scale,
        "particle": a.particle,
    });
    Ok(outcome("coil", args, units, None, params))
}
