//! Mode execution and output formatting.

use std::fmt::Write as _;
use std::fs;

use otto_core::stats::{
    eta_grid, ldf, sample_trajectories, stochastic_efficiency_histogram, TpmChain,
};
use otto_core::thermo::thermo_report;
use otto_core::{solve_limit_cycle, EngineConfig, Regime, ThermoReport};
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{Mode, RunSpec, ValidationLevel};
use crate::error::CliError;

/// Columns of the sweep CSV after `axis,axis_value,regime`.
pub const REPORT_COLUMNS: [&str; 35] = [
    "n_t0",
    "n_t1",
    "n_t2",
    "n_t3",
    "xi",
    "zeta_ch",
    "zeta_hc",
    "w_tot_avg",
    "q_h_avg",
    "q_c_avg",
    "w_trls",
    "w_fri",
    "w_coh",
    "w_deph",
    "w_var",
    "power",
    "rel_power_fluct",
    "eta_th",
    "eta_otto",
    "eta_c_gen",
    "coherence_t2",
    "kl_t2",
    "beta_h_eff",
    "tau_cyc",
    "w_tot_avg_hwc",
    "q_h_avg_hwc",
    "q_c_avg_hwc",
    "w_trls_hwc",
    "w_fri_hwc",
    "w_coh_hwc",
    "w_deph_hwc",
    "w_var_hwc2",
    "power_hwc2",
    "beta_h_eff_hwc",
    "tau_cyc_wc",
];

fn report_values(rep: &ThermoReport) -> [Option<f64>; 35] {
    [
        Some(rep.n_t0),
        Some(rep.n_t1),
        Some(rep.n_t2),
        Some(rep.n_t3),
        Some(rep.xi),
        Some(rep.zeta_ch),
        Some(rep.zeta_hc),
        Some(rep.w_tot_avg),
        Some(rep.q_h_avg),
        Some(rep.q_c_avg),
        Some(rep.w_trls),
        Some(rep.w_fri),
        Some(rep.w_coh),
        Some(rep.w_deph),
        Some(rep.w_var),
        rep.power,
        rep.rel_power_fluct,
        rep.eta_th,
        Some(rep.eta_otto),
        Some(rep.eta_c_gen),
        Some(rep.coherence_t2),
        Some(rep.kl_t2),
        Some(rep.beta_h_eff),
        Some(rep.tau_cyc),
        Some(rep.w_tot_avg_hwc),
        Some(rep.q_h_avg_hwc),
        Some(rep.q_c_avg_hwc),
        Some(rep.w_trls_hwc),
        Some(rep.w_fri_hwc),
        Some(rep.w_coh_hwc),
        Some(rep.w_deph_hwc),
        Some(rep.w_var_hwc2),
        rep.power_hwc2,
        Some(rep.beta_h_eff_hwc),
        Some(rep.tau_cyc_wc),
    ]
}

/// 17 significant digits, so values survive a text round trip bit for bit.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt_float).unwrap_or_default()
}

pub fn sweep_header() -> String {
    let mut h = String::from("axis,axis_value,regime");
    for c in REPORT_COLUMNS {
        h.push(',');
        h.push_str(c);
    }
    h
}

fn report(cfg: &EngineConfig) -> Result<ThermoReport, CliError> {
    Ok(thermo_report(&solve_limit_cycle(cfg)?)?)
}

fn require_engine(spec: &RunSpec, rep: &ThermoReport) -> Result<(), CliError> {
    if spec.require_engine && rep.regime != Regime::Engine {
        return Err(CliError::Regime(format!(
            "regime is {} (q_h = {}, w_tot = {})",
            rep.regime.as_str(),
            rep.q_h_avg,
            rep.w_tot_avg
        )));
    }
    Ok(())
}

/// Invariants checked in strict mode on the base configuration.
pub fn strict_check(cfg: &EngineConfig) -> Result<String, CliError> {
    let cycle = solve_limit_cycle(cfg)?;
    let numerical = |what: &str, value: f64, tol: f64| -> Result<(), CliError> {
        if value.is_finite() && value <= tol {
            Ok(())
        } else {
            Err(CliError::Numerical(otto_core::OttoError::InvalidState(
                format!("{what} = {value:e} exceeds {tol:e}"),
            )))
        }
    };
    numerical(
        "limit-cycle residual",
        cycle.residual(),
        otto_core::dynamics::LIMIT_CYCLE_TOL,
    )?;
    numerical("cycle trace defect", cycle.map.trace_defect(), 1e-12)?;
    let s = &cycle.states;
    for rho in [s.rho_t0, s.rho_t1, s.rho_t2, s.rho_t3, s.rho_end] {
        numerical("negative eigenvalue", -rho.eigenvalues()[0], 1e-12)?;
    }
    let rep = thermo_report(&cycle)?;
    let unit = cfg.hbar * cfg.omega_h;
    numerical(
        "energy balance",
        (rep.q_h_avg + rep.q_c_avg + rep.w_tot_avg).abs() / unit,
        1e-9,
    )?;
    let chain = TpmChain::from_cycle(&cycle);
    numerical("chain stochasticity", chain.stochasticity_defect(), 1e-12)?;
    let hist = stochastic_efficiency_histogram(&chain);
    numerical(
        "path probability",
        (hist.total_probability() - 1.0).abs(),
        1e-12,
    )?;
    Ok(format!(
        "strict checks passed: residual {:.1e}, regime {}",
        cycle.residual(),
        rep.regime.as_str()
    ))
}

#[derive(Serialize)]
struct SimulateOutput<'a> {
    config: &'a EngineConfig,
    report: &'a ThermoReport,
}

fn simulate(spec: &RunSpec) -> Result<String, CliError> {
    let rep = report(&spec.base)?;
    require_engine(spec, &rep)?;
    let out = SimulateOutput {
        config: &spec.base,
        report: &rep,
    };
    let mut s = serde_json::to_string_pretty(&out).expect("reports serialize");
    s.push('\n');
    Ok(s)
}

fn sweep(spec: &RunSpec) -> Result<String, CliError> {
    let sw = spec
        .sweep
        .ok_or_else(|| CliError::schema("sweep_axis", "required in sweep mode"))?;
    let values = sw.values();
    // collect keeps the axis order regardless of which worker finishes first
    let rows: Vec<(f64, ThermoReport)> = values
        .par_iter()
        .map(|&v| {
            let cfg = sw.axis.apply(spec.base, v);
            report(&cfg).map(|rep| (v, rep))
        })
        .collect::<Result<_, _>>()?;
    let mut out = sweep_header();
    out.push('\n');
    for (v, rep) in &rows {
        require_engine(spec, rep)?;
        write!(
            out,
            "{},{},{}",
            sw.axis.as_str(),
            fmt_float(*v),
            rep.regime.as_str()
        )
        .unwrap();
        for x in report_values(rep) {
            out.push(',');
            out.push_str(&fmt_opt(x));
        }
        out.push('\n');
    }
    Ok(out)
}

fn chain_for(spec: &RunSpec) -> Result<(TpmChain, ThermoReport), CliError> {
    let cycle = solve_limit_cycle(&spec.base)?;
    let rep = thermo_report(&cycle)?;
    require_engine(spec, &rep)?;
    Ok((TpmChain::from_cycle(&cycle), rep))
}

fn rate_function(spec: &RunSpec) -> Result<String, CliError> {
    let (chain, rep) = chain_for(spec)?;
    let grid = eta_grid(rep.eta_c_gen, spec.ldf.lo, spec.ldf.hi, spec.ldf.points);
    let curve = ldf(&chain, &grid)?;
    let mut out = String::from("eta,j_value,phi2_star\n");
    for ((eta, j), phi) in curve
        .eta_grid
        .iter()
        .zip(&curve.j_values)
        .zip(&curve.phi2_star)
    {
        writeln!(
            out,
            "{},{},{}",
            fmt_float(*eta),
            fmt_float(*j),
            fmt_float(*phi)
        )
        .unwrap();
    }
    Ok(out)
}

fn histogram(spec: &RunSpec) -> Result<String, CliError> {
    let (chain, _) = chain_for(spec)?;
    let hist = stochastic_efficiency_histogram(&chain);
    let sampled = sample_trajectories(&chain, spec.samples, spec.seed).frequencies();
    let mut out = String::from("hot,cold,q_h,w_tot,eta,probability,sampled_probability\n");
    for (atom, freq) in hist.atoms.iter().zip(sampled) {
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            atom.hot,
            atom.cold,
            fmt_float(atom.q_h),
            fmt_float(atom.w_tot),
            fmt_opt(atom.eta),
            fmt_float(atom.probability),
            fmt_float(freq)
        )
        .unwrap();
    }
    Ok(out)
}

/// Output document of the run, as written to disk or stdout.
pub fn render(spec: &RunSpec) -> Result<String, CliError> {
    match spec.mode {
        Mode::Simulate => simulate(spec),
        Mode::Sweep => sweep(spec),
        Mode::Ldf => rate_function(spec),
        Mode::Histogram => histogram(spec),
    }
}

/// Runs the spec and writes the artifact; returns the strict-check summary
/// when one was requested.
pub fn run(spec: &RunSpec) -> Result<Option<String>, CliError> {
    let check = match spec.validation {
        ValidationLevel::Strict => Some(strict_check(&spec.base)?),
        ValidationLevel::Fast => None,
    };
    let body = render(spec)?;
    match &spec.output_path {
        Some(path) => fs::write(path, body)?,
        None => print!("{body}"),
    }
    Ok(check)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_and_rows_have_the_same_width() {
        let cfg = EngineConfig::fig1();
        let rep = report(&cfg).unwrap();
        assert_eq!(
            report_values(&rep).len() + 3,
            sweep_header().split(',').count()
        );
    }

    #[test]
    fn floats_round_trip_through_text() {
        for x in [0.1, 1.0 / 3.0, -2.5e-17, 6283.185307179586] {
            assert_eq!(fmt_float(x).parse::<f64>().unwrap(), x);
        }
    }
}
