use approx::assert_abs_diff_eq;
use padewkb_core::corrections::{
    delta1_closed, delta1_closed_as_printed, delta1_direct, delta_from_delta1, gamma_diagnostic, CorrectionSource,
};
use padewkb_core::extraction::{adiabaticity_check, default_grid, extract_at_energy, extract_at_top};
use padewkb_core::oracle::{converge, OracleConfig};
use padewkb_core::potentials::CustomWell;
use padewkb_core::spectrum::{compare_spectra, count_levels, tanh2_exact_levels, Mode, SpectrumSolver};
use padewkb_core::{PadeParams, PotentialModel};

fn generated(k: f64, b: f64, g: f64) -> PotentialModel {
    PotentialModel::from_pade(PadeParams::new(k, 0.04, b, g).unwrap(), 1.0).unwrap()
}

fn perturbed_tanh2() -> PotentialModel {
    let well = CustomWell::new(
        |x: f64| {
            let t = x.tanh().powi(2);
            25.0 * t * (1.0 + 0.1 * t)
        },
        5.0,
        Some(27.5),
    )
    .with_slope(|x: f64| {
        let t = x.tanh();
        let dt2 = 2.0 * t * (1.0 - t * t);
        25.0 * dt2 * (1.0 + 0.2 * t * t)
    })
    .symmetric();
    PotentialModel::custom(well, 1.0).unwrap()
}

#[test]
fn generated_wells_round_trip() {
    for (k, b, g) in [(2.0, 0.05, 0.01), (5.0, 0.0, 0.02), (3.0, -0.04, 0.0), (2.0, 0.03, -0.008)] {
        let report = extract_at_top(&generated(k, b, g)).unwrap();
        assert_abs_diff_eq!(report.params.b, b, epsilon = 1e-4);
        assert_abs_diff_eq!(report.params.g, g, epsilon = 1e-4);
        assert!(report.valid);
        let mid = extract_at_energy(&generated(k, b, g), 12.5).unwrap();
        assert_abs_diff_eq!(mid.params.b, b, epsilon = 1e-4);
        assert_abs_diff_eq!(mid.params.g, g, epsilon = 1e-4);
    }
}

#[test]
fn closed_forms_agree_with_direct() {
    for (b, g) in [(0.0, 0.01), (0.0, -0.01), (0.05, 0.0), (-0.05, 0.0)] {
        let params = PadeParams::new(2.0, 0.04, b, g).unwrap();
        let model = PotentialModel::from_pade(params, 1.0).unwrap();
        for f in [0.2, 0.5, 0.8] {
            let eps = f * 25.0;
            let closed = delta1_closed(&params, 1.0, eps).unwrap();
            let direct = delta1_direct(&model, eps).unwrap().value;
            assert!(((closed - direct) / direct).abs() < 1e-5, "b={b} g={g} eps={eps}: {closed} vs {direct}");
            if f == 0.8 {
                let printed = delta1_closed_as_printed(&params, 1.0, eps).unwrap();
                assert!(((printed - direct) / direct).abs() > 1e-4, "printed form agrees at b={b} g={g}");
            }
        }
    }
}

#[test]
fn perturbed_well_leaves_the_class() {
    let model = perturbed_tanh2();
    let basic = PotentialModel::tanh2(25.0, 1.0, 1.0).unwrap();
    let gamma = gamma_diagnostic(&model, 12.5).unwrap();
    assert!(gamma < -1e-4 && gamma > -1.2e-4, "{gamma}");
    assert!(gamma.abs() > 100.0 * gamma_diagnostic(&basic, 12.5).unwrap().abs());
    let grid = default_grid(&basic).unwrap();
    let base = adiabaticity_check(&basic, &grid).unwrap();
    let bumped = adiabaticity_check(&model, &grid).unwrap();
    let base_max = base.iter().flatten().fold(0.0f64, |m, &r| m.max(r));
    let bumped_max = bumped.iter().flatten().fold(0.0f64, |m, &r| m.max(r));
    assert!(bumped_max > 10.0 * base_max, "{bumped_max} vs {base_max}");
}

#[test]
fn improved_spectrum_tracks_oracle() {
    for depth in [4.0, 25.0, 100.0] {
        let model = PotentialModel::tanh2(depth, 1.0, 1.0).unwrap();
        let oracle = converge(&model, &OracleConfig::for_model(&model, None).unwrap()).unwrap();
        let summary = compare_spectra(&model, &oracle.levels, CorrectionSource::ClosedForm).unwrap();
        assert!(!summary.count_mismatch(), "U = {depth}");
        let first = summary.levels[0];
        assert!(first.abs_err_improved().unwrap() * 10.0 < first.abs_err_wkb().unwrap());
        for (level, exact) in summary.levels.iter().zip(tanh2_exact_levels(depth, 1.0, 1.0)) {
            assert!((level.eps_improved.unwrap() - exact).abs() < 1e-5 * exact);
        }
    }
}

#[test]
fn interlacing_on_tanh2() {
    let model = PotentialModel::tanh2(25.0, 1.0, 1.0).unwrap();
    let exact = tanh2_exact_levels(25.0, 1.0, 1.0);
    let summary = compare_spectra(&model, &exact, CorrectionSource::BasicWell).unwrap();
    for level in &summary.levels {
        let (w, i, o) = (level.eps_wkb.unwrap(), level.eps_improved.unwrap(), level.eps_oracle.unwrap());
        let wkb_error = w - o;
        if wkb_error * level.delta_used.unwrap() > 0.0 {
            assert!((i - w) * (i - o) <= 1e-9, "n = {}", level.n);
        }
    }
}

#[test]
fn counts_match_oracle() {
    for depth in [1.0, 25.0, 100.0] {
        let model = PotentialModel::tanh2(depth, 1.0, 1.0).unwrap();
        let oracle = converge(&model, &OracleConfig::for_model(&model, None).unwrap()).unwrap();
        let count = count_levels(&model, CorrectionSource::BasicWell).unwrap().n_levels;
        assert_eq!(count, oracle.levels.len(), "U = {depth}");
    }
}

#[test]
fn direct_source_on_generated_well() {
    let model = generated(2.0, 0.05, 0.01);
    let solver = SpectrumSolver::new(&model, CorrectionSource::ClosedForm).unwrap();
    assert_eq!(solver.corrector().effective(), CorrectionSource::DirectNumeric);
    let oracle = converge(&model, &OracleConfig::for_model(&model, None).unwrap()).unwrap();
    let s = solver.solve(0, Mode::Improved).unwrap();
    let w = solver.solve(0, Mode::Wkb).unwrap();
    assert!((s.eps - oracle.levels[0]).abs() < (w.eps - oracle.levels[0]).abs());
    assert!(s.residual.abs() < 1e-9);
}

#[test]
fn shallow_wells_keep_one_level() {
    for depth in [1.0, 0.1, 0.01] {
        let model = PotentialModel::tanh2(depth, 1.0, 1.0).unwrap();
        let summary = compare_spectra(&model, &tanh2_exact_levels(depth, 1.0, 1.0), CorrectionSource::BasicWell).unwrap();
        assert_eq!(summary.n_levels, 1);
        let exact_defect = depth.sqrt() - (1.0 + 4.0 * depth).sqrt() / 2.0;
        assert_abs_diff_eq!(summary.levels[0].delta_used.unwrap(), exact_defect, epsilon = 1e-9);
        assert_abs_diff_eq!(delta_from_delta1(-1.0 / (8.0 * depth.sqrt())), exact_defect, epsilon = 1e-12);
        assert!(summary.improved_errors.unwrap().max_rel < 1e-6);
    }
}
