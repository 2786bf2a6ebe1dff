use otto_core::qops::trace_distance;
use otto_core::thermo::{simulate, thermo_report};
use otto_core::{solve_limit_cycle, DensityMatrix, EngineConfig, HotBath, OttoError, Regime};

// Independent reference: midpoint propagators with Richardson extrapolation
// and 300 plain iterations of the cycle map, fig1 parameters, r = 0.
const N0_REF: f64 = -0.380_796_249_329_276_97;
const N2_REF: f64 = -0.267_102_413_895_742_6;
const XI_REF: f64 = 0.023_180_884_547_623_393;

#[test]
fn fig1_regression() {
    let cycle = solve_limit_cycle(&EngineConfig::fig1()).unwrap();
    let rep = thermo_report(&cycle).unwrap();
    assert!((rep.n_t0 - N0_REF).abs() < 1e-8, "n_t0 = {}", rep.n_t0);
    assert!((rep.n_t2 - N2_REF).abs() < 1e-8, "n_t2 = {}", rep.n_t2);
    assert!((rep.xi - XI_REF).abs() < 1e-8, "xi = {}", rep.xi);
    let brute = cycle.iterate(&DensityMatrix::maximally_mixed(), 200);
    assert!(trace_distance(&brute, &cycle.states.rho_t0) < 1e-12);
}

#[test]
fn fig1_is_an_engine_below_its_bounds() {
    let rep = simulate(&EngineConfig::fig1().with_r(0.5)).unwrap();
    assert_eq!(rep.regime, Regime::Engine);
    let eta = rep.eta_th.unwrap();
    assert!(0.0 < eta && eta < rep.eta_c_gen);
    assert!(rep.power.unwrap() > 0.0);
    let unit = rep.q_h_avg.abs().max(1.0);
    assert!((rep.q_h_avg + rep.q_c_avg + rep.w_tot_avg).abs() < 1e-9 * unit);
    let parts = rep.w_trls + rep.w_fri + rep.w_coh;
    assert!((parts + rep.w_tot_avg).abs() < 1e-9 * unit);
    assert!((rep.w_deph - rep.w_trls - rep.w_fri).abs() < 1e-12 * unit);
}

#[test]
fn dephasing_is_harmless_after_full_thermalization() {
    let base = EngineConfig::fig1().with_tau_h(200.0).with_r(0.4);
    let a = simulate(&base).unwrap();
    let b = simulate(&base.with_dephasing(true)).unwrap();
    let unit = base.hbar * base.omega_h;
    assert!((a.w_tot_avg - b.w_tot_avg).abs() < 1e-8 * unit);
    assert!((a.q_h_avg - b.q_h_avg).abs() < 1e-8 * unit);
    assert!((a.w_var - b.w_var).abs() < 1e-8 * unit * unit);
}

#[test]
fn squeezing_helps_with_either_bath_model_at_long_contact() {
    for bath in [HotBath::SqueezedReservoir, HotBath::SqueezedFrame] {
        let base = EngineConfig::fig1().with_tau_h(5.0).with_hot_bath(bath);
        let q0 = simulate(&base).unwrap().q_h_avg;
        let q1 = simulate(&base.with_r(0.6)).unwrap().q_h_avg;
        assert!(q1 > q0, "{bath:?}: {q1} <= {q0}");
    }
}

#[test]
fn rejects_unphysical_input() {
    let mut cfg = EngineConfig::fig1();
    cfg.beta_h = -1.0;
    assert!(matches!(
        solve_limit_cycle(&cfg),
        Err(OttoError::InvalidConfig(_))
    ));
    cfg = EngineConfig::fig1().with_tau_dri(f64::NAN);
    assert!(matches!(
        solve_limit_cycle(&cfg),
        Err(OttoError::InvalidConfig(_))
    ));
}
