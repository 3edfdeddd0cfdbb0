//! Property suites for the scaling, drivetrain and analysis contracts.

use hydromodal_core::*;
use proptest::prelude::*;

fn law(k: f64, a: f64) -> ScalingLaw {
    ScalingLaw::new(k, a, QuantityKind::TorqueNm, QuantityKind::MassKg).unwrap()
}

proptest! {
    /// Laws with a > 0 are strictly increasing; a < 0 strictly decreasing.
    #[test]
    fn law_monotonicity(
        k in 1e-3_f64..1e3,
        a in 0.05_f64..2.0,
        x1 in 1e-3_f64..1e4,
        factor in 1.001_f64..100.0,
    ) {
        let x2 = x1 * factor;
        let up = law(k, a);
        prop_assert!(up.eval(x1).unwrap() < up.eval(x2).unwrap());
        let down = law(k, -a);
        prop_assert!(down.eval(x1).unwrap() > down.eval(x2).unwrap());
    }

    /// Inverse-density mass is strictly increasing in the requirement
    /// whenever the density exponent is below one.
    #[test]
    fn inverse_density_monotonicity(
        k in 1e2_f64..1e5,
        a in -0.5_f64..0.99,
        x1 in 1.0_f64..1e4,
        factor in 1.001_f64..50.0,
    ) {
        let density = ScalingLaw::new(k, a, QuantityKind::ForceN, QuantityKind::ForceDensityNPerKg).unwrap();
        let m1 = component_mass_from_inverse_density(&Quantity::force_n(x1), &density).unwrap();
        let m2 = component_mass_from_inverse_density(&Quantity::force_n(x1 * factor), &density).unwrap();
        prop_assert!(m1.value < m2.value);
    }

    /// Fitting noiseless samples of a law recovers it to 1e-9.
    #[test]
    fn fit_round_trip(
        k in 1e-2_f64..1e2,
        a in -1.5_f64..1.5,
        x0 in 1e-2_f64..1.0,
        spread in 3.0_f64..300.0,
        n in 2_usize..12,
    ) {
        let source = law(k, a);
        let points: Vec<CatalogPoint> = (0..n)
            .map(|i| {
                let x = x0 * spread.powf(i as f64 / (n - 1).max(1) as f64);
                CatalogPoint::new(x, source.eval(x).unwrap(), "synthetic").unwrap()
            })
            .collect();
        let fit = fit_scaling_law(&points, QuantityKind::TorqueNm, QuantityKind::MassKg).unwrap();
        prop_assert!((fit.law.coefficient - k).abs() / k < 1e-9);
        prop_assert!((fit.law.exponent - a).abs() < 1e-9);
        prop_assert!((fit.r_squared - 1.0).abs() < 1e-9);
    }

    /// Motor loss is non-negative and strictly increasing in |torque|.
    #[test]
    fn motor_loss_positive_and_increasing(
        rating in 0.5_f64..100.0,
        f1 in 0.0_f64..1.0,
        step in 0.01_f64..1.0,
    ) {
        let motor = MotorModel::default();
        let f2 = (f1 + step).min(2.0);
        let l1 = motor_loss(&motor, rating, f1 * rating, 1.0).unwrap();
        let l2 = motor_loss(&motor, rating, f2 * rating, 1.0).unwrap();
        prop_assert!(l1 >= 0.0);
        prop_assert!(l2 > l1);
    }

    /// With the inertia bound removed, the solved motor torque follows the
    /// speed-branch closed form, so scaling the requirement scales the
    /// solution by a factor fixed by the speed-law exponent.
    #[test]
    fn speed_branch_scale_coherence(
        tau in 20.0_f64..120.0,
        omega in 2.0_f64..12.0,
        scale in 1.1_f64..2.0,
    ) {
        let motor = MotorModel::default();
        let base = solve_ratio(&TaskRequirement::new(tau, omega, None, 1.0).unwrap(), &motor, 0.9).unwrap();
        let doubled =
            solve_ratio(&TaskRequirement::new(scale * tau, omega, None, 1.0).unwrap(), &motor, 0.9).unwrap();
        let exponent = 1.0 / (1.0 - motor.speed_law.exponent.abs());
        let expected = scale.powf(exponent);
        let actual = doubled.motor_torque_nm / base.motor_torque_nm;
        prop_assert!((actual - expected).abs() / expected < 1e-6);
    }

    /// The non-binding branch of the ratio cap never undercuts the binding
    /// one, and the reflected inertia respects the bound.
    #[test]
    fn binding_consistency(
        tau in 10.0_f64..150.0,
        omega in 2.0_f64..15.0,
        j in 0.005_f64..0.08,
    ) {
        let motor = MotorModel::default();
        let req = TaskRequirement::new(tau, omega, Some(j), 1.0).unwrap();
        let sol = solve_ratio(&req, &motor, 0.9).unwrap();
        let binding_value = match sol.binding {
            Binding::Inertia => sol.inertia_branch_ratio,
            Binding::Speed => sol.speed_branch_ratio,
        };
        prop_assert!(sol.inertia_branch_ratio >= binding_value - 1e-12);
        prop_assert!(sol.speed_branch_ratio >= binding_value - 1e-12);
        prop_assert!(sol.reflected_inertia_kg_m2 <= j * (1.0 + 1e-6));
    }

    /// Bisection always returns a value inside a sign-changing bracket.
    #[test]
    fn bisection_bracket_invariant(root in -5.0_f64..5.0, width in 0.5_f64..20.0) {
        let f = move |x: f64| (x - root) * ((x - root).abs() + 0.1);
        let lo = root - width * 0.3;
        let hi = root + width * 0.7;
        let c = find_crossover(f, lo, hi).unwrap();
        prop_assert!(c.bracket.0 <= c.value && c.value <= c.bracket.1);
        prop_assert!(f(c.bracket.0) * f(c.bracket.1) <= 0.0);
        prop_assert!((c.value - root).abs() < 1e-5 * width.max(1.0));
    }
}

/// BOM additivity across every topology over the default sweep grids.
#[test]
fn bom_additivity_over_sweeps() {
    let registry = ComponentRegistry::default();
    let params = StudyParameters {
        n_dof: 2,
        cycle_duration_h: Some(1.0),
        ..StudyParameters::default()
    };
    for topo in Topology::ALL_MULTIMODAL {
        for i in 0..=20 {
            let p = StudyParameters {
                lambda: 1.0 + 3.0 * i as f64 / 20.0,
                holding_duty: i as f64 / 20.0,
                ..params.clone()
            };
            for r in [
                evaluate(topo, &p, &registry).unwrap(),
                comparison_baseline(topo, &p, &registry).unwrap(),
            ] {
                let sum: f64 = r.bom.items.iter().map(|it| it.mass_kg).sum();
                assert!(
                    (r.total_mass_kg - sum).abs() < 1e-12,
                    "BOM total drifted for {topo} at index {i}"
                );
            }
        }
    }
}

/// The baseline-minus-multimodal mass difference changes sign at most once
/// over λ ∈ [1, 5] for the monotone-requirement topologies.
#[test]
fn crossover_uniqueness_on_lambda_grid() {
    let registry = ComponentRegistry::default();
    let params = StudyParameters::default();
    for topo in [Topology::TwoSpeed, Topology::AccumulatorOffset] {
        let spec = SweepSpec {
            hi: 5.0,
            points: 81,
            ..SweepSpec::lambda_mass(topo)
        };
        let result = sweep(&spec, &params, &registry).unwrap();
        let mut changes = 0;
        for w in result.rows.windows(2) {
            let da = w[0].baseline - w[0].multimodal;
            let db = w[1].baseline - w[1].multimodal;
            if da.signum() != db.signum() {
                changes += 1;
            }
        }
        assert!(changes <= 1, "{topo}: {changes} sign changes");
    }
}

/// Multimodal mass is non-increasing in λ while the two-speed baseline is
/// constant, over the default grid.
#[test]
fn lambda_monotonicity_of_masses() {
    let registry = ComponentRegistry::default();
    let params = StudyParameters::default();
    for topo in [Topology::TwoSpeed, Topology::AccumulatorOffset] {
        let result = sweep(&SweepSpec::lambda_mass(topo), &params, &registry).unwrap();
        for w in result.rows.windows(2) {
            assert!(
                w[1].multimodal <= w[0].multimodal + 1e-9,
                "{topo} multimodal mass increased at λ = {}",
                w[1].parameter
            );
        }
        if topo == Topology::TwoSpeed {
            for w in result.rows.windows(2) {
                assert!((w[1].baseline - w[0].baseline).abs() < 1e-9);
            }
        }
    }
}

/// Unit discipline: checked evaluation paths reject mislabeled quantities.
#[test]
fn unit_mismatch_never_silent() {
    let registry = ComponentRegistry::default();
    let err = registry
        .motor
        .mass_law
        .eval_quantity(&Quantity::volume_l(0.1))
        .unwrap_err();
    assert!(matches!(err, Error::UnitMismatch { .. }));
    let err = registry
        .accumulator
        .mass_law
        .eval_quantity(&Quantity::torque_nm(32.0))
        .unwrap_err();
    assert!(matches!(err, Error::UnitMismatch { .. }));
}
