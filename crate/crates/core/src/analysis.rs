//! Parameter sweeps, break-even (crossover) location and sensitivity scans.

use crate::components::ComponentRegistry;
use crate::error::{Error, Result};
use crate::topologies::{comparison_baseline, evaluate, StudyParameters, Topology, TopologyResult};

/// Swept study parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepParameter {
    /// Task-separation ratio λ.
    Lambda,
    /// Holding duty γ (locking study).
    Gamma,
    /// Joint count (shared-pump study).
    NDof,
    /// Autonomy in hours (battery sizing).
    AutonomyHours,
}

impl SweepParameter {
    pub fn name(&self) -> &'static str {
        match self {
            SweepParameter::Lambda => "lambda",
            SweepParameter::Gamma => "gamma",
            SweepParameter::NDof => "n_dof",
            SweepParameter::AutonomyHours => "autonomy_hours",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "lambda" => Ok(SweepParameter::Lambda),
            "gamma" => Ok(SweepParameter::Gamma),
            "n_dof" | "ndof" => Ok(SweepParameter::NDof),
            "autonomy_hours" | "autonomy" => Ok(SweepParameter::AutonomyHours),
            other => Err(Error::domain(format!("unknown sweep parameter '{other}'"))),
        }
    }
}

/// Metric compared between the baseline and the multimodal design.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepMetric {
    /// Bill-of-materials mass per joint [kg].
    TotalMass,
    /// Duty-weighted cycle loss [W].
    MeanLoss,
    /// BOM mass plus battery mass for the configured autonomy [kg].
    MassPlusBattery,
}

impl SweepMetric {
    pub fn name(&self) -> &'static str {
        match self {
            SweepMetric::TotalMass => "total_mass",
            SweepMetric::MeanLoss => "mean_loss",
            SweepMetric::MassPlusBattery => "mass_plus_battery",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "total_mass" | "mass" => Ok(SweepMetric::TotalMass),
            "mean_loss" | "loss" => Ok(SweepMetric::MeanLoss),
            "mass_plus_battery" => Ok(SweepMetric::MassPlusBattery),
            other => Err(Error::domain(format!("unknown sweep metric '{other}'"))),
        }
    }

    fn extract(&self, r: &TopologyResult) -> Result<f64> {
        match self {
            SweepMetric::TotalMass => Ok(r.mass_per_dof_kg),
            SweepMetric::MeanLoss => Ok(r.mean_cycle_loss_w),
            SweepMetric::MassPlusBattery => match r.battery_mass_kg {
                Some(b) => Ok(r.mass_per_dof_kg + b),
                None => Err(Error::domain(
                    "mass_plus_battery needs a cycle duration (autonomy) to size the battery",
                )),
            },
        }
    }
}

/// A sweep request.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub parameter: SweepParameter,
    pub lo: f64,
    pub hi: f64,
    pub points: usize,
    pub topology: Topology,
    pub metric: SweepMetric,
}

impl SweepSpec {
    /// Default λ grid: [1, 4] with 61 points.
    pub fn lambda_mass(topology: Topology) -> Self {
        SweepSpec {
            parameter: SweepParameter::Lambda,
            lo: 1.0,
            hi: 4.0,
            points: 61,
            topology,
            metric: SweepMetric::TotalMass,
        }
    }

    /// Default γ grid: [0, 1] with 51 points.
    pub fn gamma_mass_plus_battery() -> Self {
        SweepSpec {
            parameter: SweepParameter::Gamma,
            lo: 0.0,
            hi: 1.0,
            points: 51,
            topology: Topology::LockingValve,
            metric: SweepMetric::MassPlusBattery,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.lo < self.hi) {
            return Err(Error::domain(format!(
                "sweep range must satisfy lo < hi, got [{}, {}]",
                self.lo, self.hi
            )));
        }
        if self.points < 2 {
            return Err(Error::domain("sweep needs at least 2 points"));
        }
        let ok = match self.parameter {
            SweepParameter::Lambda => self.topology != Topology::LockingValve && self.lo >= 1.0,
            SweepParameter::Gamma => {
                self.topology == Topology::LockingValve && self.lo >= 0.0 && self.hi <= 1.0
            }
            SweepParameter::NDof => self.topology == Topology::TwoSpeedShared && self.lo >= 2.0,
            SweepParameter::AutonomyHours => self.topology == Topology::LockingValve && self.lo > 0.0,
        };
        if !ok {
            return Err(Error::domain(format!(
                "parameter '{}' over [{}, {}] is not valid for topology '{}'",
                self.parameter.name(),
                self.lo,
                self.hi,
                self.topology
            )));
        }
        Ok(())
    }
}

/// One evaluated grid point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub parameter: f64,
    pub baseline: f64,
    pub multimodal: f64,
    pub baseline_feasible: bool,
    pub multimodal_feasible: bool,
}

/// A located sign change of `baseline − multimodal`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Crossover {
    pub value: f64,
    /// Final bisection bracket containing the root.
    pub bracket: (f64, f64),
}

/// Sweep output: ordered rows plus the crossover, when one exists.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub spec: SweepSpec,
    pub rows: Vec<SweepRow>,
    pub crossover: Option<Crossover>,
}

fn apply_parameter(params: &StudyParameters, parameter: SweepParameter, value: f64) -> StudyParameters {
    let mut p = params.clone();
    match parameter {
        SweepParameter::Lambda => p.lambda = value,
        SweepParameter::Gamma => p.holding_duty = value,
        SweepParameter::NDof => p.n_dof = value.round().max(1.0) as u32,
        SweepParameter::AutonomyHours => p.cycle_duration_h = Some(value),
    }
    p
}

/// Evaluate the topology and its comparison baseline over the grid.
///
/// Rows whose design violates a feasibility gate are kept and flagged so
/// downstream plots show the boundary; the crossover is located only among
/// fully feasible rows.
pub fn sweep(spec: &SweepSpec, params: &StudyParameters, registry: &ComponentRegistry) -> Result<SweepResult> {
    spec.validate()?;
    let metric = spec.metric;
    let topology = spec.topology;

    let eval_pair = |value: f64| -> Result<(f64, bool, f64, bool)> {
        let p = apply_parameter(params, spec.parameter, value);
        let base = comparison_baseline(topology, &p, registry)?;
        let multi = evaluate(topology, &p, registry)?;
        Ok((
            metric.extract(&base)?,
            base.feasible.ok,
            metric.extract(&multi)?,
            multi.feasible.ok,
        ))
    };

    let mut rows = Vec::with_capacity(spec.points);
    for i in 0..spec.points {
        let value = spec.lo + (spec.hi - spec.lo) * i as f64 / (spec.points - 1) as f64;
        // Rows that cannot be evaluated at all are kept and flagged, so a
        // sweep never loses its feasibility boundary to one bad point.
        let row = match eval_pair(value) {
            Ok((baseline, bf, multimodal, mf)) => SweepRow {
                parameter: value,
                baseline,
                multimodal,
                baseline_feasible: bf,
                multimodal_feasible: mf,
            },
            Err(e @ (Error::Domain(_) | Error::UnitMismatch { .. })) => return Err(e),
            Err(_) => SweepRow {
                parameter: value,
                baseline: f64::NAN,
                multimodal: f64::NAN,
                baseline_feasible: false,
                multimodal_feasible: false,
            },
        };
        rows.push(row);
    }

    // Locate the first sign change of the difference between feasible rows
    // and refine it by bisecting the continuous difference function.
    let diff = |value: f64| -> f64 {
        match eval_pair(value) {
            Ok((b, _, m, _)) => b - m,
            Err(_) => f64::NAN,
        }
    };
    let mut crossover = None;
    for pair in rows.windows(2) {
        let (a, b) = (&pair[0], &pair[1]);
        if !(a.baseline_feasible && a.multimodal_feasible && b.baseline_feasible && b.multimodal_feasible) {
            continue;
        }
        let da = a.baseline - a.multimodal;
        let db = b.baseline - b.multimodal;
        if da == 0.0 && db == 0.0 {
            continue; // identical metrics, no crossing to report
        }
        if da * db <= 0.0 {
            crossover = find_crossover(diff, a.parameter, b.parameter);
            if crossover.is_some() {
                break;
            }
        }
    }

    Ok(SweepResult {
        spec: spec.clone(),
        rows,
        crossover,
    })
}

/// Bisection root location for a sign-changing difference function.
///
/// Returns `None` when `f(lo)` and `f(hi)` have the same sign. The bracket
/// is narrowed until it is 1e-6 of its initial width; the reported value is
/// the final bracket midpoint.
pub fn find_crossover(f: impl Fn(f64) -> f64, lo: f64, hi: f64) -> Option<Crossover> {
    let (mut a, mut b) = (lo, hi);
    let mut fa = f(a);
    let fb = f(b);
    if !fa.is_finite() || !fb.is_finite() || fa * fb > 0.0 {
        return None;
    }
    let tol = 1e-6 * (hi - lo);
    while b - a > tol {
        let mid = 0.5 * (a + b);
        let fm = f(mid);
        if !fm.is_finite() {
            return None;
        }
        if fa * fm <= 0.0 {
            b = mid;
        } else {
            a = mid;
            fa = fm;
        }
    }
    Some(Crossover {
        value: 0.5 * (a + b),
        bracket: (a, b),
    })
}

/// Outcome of a crossover search over a parameter range.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CrossoverOutcome {
    /// The multimodal design is lighter over the whole range.
    AlwaysLighter,
    /// Break-even located inside the range.
    Within(f64),
    /// The multimodal design never gets lighter within the range.
    NeverLighter,
}

impl CrossoverOutcome {
    /// Position on the parameter axis for monotonicity comparisons:
    /// a break-even beyond the right edge orders above any located value.
    pub fn ordinal(&self, lo: f64, hi: f64) -> f64 {
        match self {
            CrossoverOutcome::AlwaysLighter => lo,
            CrossoverOutcome::Within(v) => *v,
            CrossoverOutcome::NeverLighter => hi + 1.0,
        }
    }
}

/// One row of a sensitivity scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SensitivityRow {
    /// Motor torque-density multiplier (mass-law coefficient divided by it).
    pub multiplier: f64,
    pub crossover: CrossoverOutcome,
}

/// Re-run the two-speed mass crossover with the motor mass-law coefficient
/// scaled by the reciprocal of each torque-density multiplier.
pub fn sensitivity_scan(
    params: &StudyParameters,
    registry: &ComponentRegistry,
    multipliers: &[f64],
) -> Result<Vec<SensitivityRow>> {
    let spec = SweepSpec::lambda_mass(Topology::TwoSpeed);
    let mut out = Vec::with_capacity(multipliers.len());
    for &m in multipliers {
        if !(m > 0.0) {
            return Err(Error::domain("torque-density multipliers must be positive"));
        }
        let mut reg = registry.clone();
        reg.motor.mass_law.coefficient /= m;
        let result = sweep(&spec, params, &reg)?;
        let crossover = match result.crossover {
            Some(c) => CrossoverOutcome::Within(c.value),
            None => {
                // No sign change: classify by which side is lighter.
                let first = &result.rows[0];
                if first.baseline >= first.multimodal {
                    CrossoverOutcome::AlwaysLighter
                } else {
                    CrossoverOutcome::NeverLighter
                }
            }
        };
        out.push(SensitivityRow {
            multiplier: m,
            crossover,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn defaults() -> (StudyParameters, ComponentRegistry) {
        (StudyParameters::default(), ComponentRegistry::default())
    }

    #[test]
    fn bisection_linear_root() {
        let c = find_crossover(|x| x - 2.0, 1.0, 4.0).unwrap();
        assert!((c.value - 2.0).abs() < 3e-6);
        assert!(c.bracket.0 <= c.value && c.value <= c.bracket.1);
    }

    #[test]
    #[allow(clippy::approx_constant)] // frozen oracle value, quoted to 8 digits
    fn bisection_sqrt2() {
        let c = find_crossover(|x| x * x - 2.0, 0.0, 2.0).unwrap();
        assert!((c.value - 1.41421356).abs() < 1e-6);
    }

    #[test]
    fn bisection_requires_sign_change() {
        assert!(find_crossover(|x| x * x + 1.0, -1.0, 1.0).is_none());
    }

    #[test]
    fn bisection_bracket_contract() {
        let f = |x: f64| (x - 1.7).powi(3);
        let c = find_crossover(f, 1.0, 4.0).unwrap();
        assert!(f(c.bracket.0) * f(c.bracket.1) <= 0.0);
        assert!(c.bracket.1 - c.bracket.0 <= 1e-6 * 3.0 + 1e-12);
    }

    #[test]
    fn two_speed_mass_sweep_finds_crossover_near_two() {
        let (p, reg) = defaults();
        let result = sweep(&SweepSpec::lambda_mass(Topology::TwoSpeed), &p, &reg).unwrap();
        assert_eq!(result.rows.len(), 61);
        let c = result.crossover.expect("two-speed sweep must cross");
        assert!(c.value > 1.5 && c.value < 2.5, "crossover at {}", c.value);
        // Rows are ordered and the difference changes sign exactly once.
        let mut sign_changes = 0;
        for pair in result.rows.windows(2) {
            assert!(pair[0].parameter < pair[1].parameter);
            let da = pair[0].baseline - pair[0].multimodal;
            let db = pair[1].baseline - pair[1].multimodal;
            if da.signum() != db.signum() {
                sign_changes += 1;
            }
        }
        assert_eq!(sign_changes, 1);
    }

    #[test]
    fn boost_mass_sweep_has_no_crossover() {
        let (p, reg) = defaults();
        let result = sweep(&SweepSpec::lambda_mass(Topology::AccumulatorBoost), &p, &reg).unwrap();
        assert!(result.crossover.is_none());
        for row in &result.rows {
            assert!(row.baseline <= row.multimodal);
        }
    }

    #[test]
    fn offset_mass_sweep_crosses_early() {
        let (p, reg) = defaults();
        let result = sweep(&SweepSpec::lambda_mass(Topology::AccumulatorOffset), &p, &reg).unwrap();
        let c = result.crossover.expect("offset sweep must cross");
        assert!(c.value <= 1.6, "crossover at {}", c.value);
    }

    #[test]
    fn ndof_sweep_amortizes_shared_hardware() {
        let (p, reg) = defaults();
        let spec = SweepSpec {
            parameter: SweepParameter::NDof,
            lo: 2.0,
            hi: 6.0,
            points: 5,
            topology: Topology::TwoSpeedShared,
            metric: SweepMetric::TotalMass,
        };
        let result = sweep(&spec, &p, &reg).unwrap();
        assert_eq!(result.rows.len(), 5);
        // The shared pump and its valve amortize over more joints.
        for w in result.rows.windows(2) {
            assert!(w[1].multimodal < w[0].multimodal);
        }
    }

    #[test]
    fn autonomy_sweep_grows_the_locking_advantage() {
        let (mut p, reg) = defaults();
        p.holding_duty = 0.5;
        let spec = SweepSpec {
            parameter: SweepParameter::AutonomyHours,
            lo: 0.25,
            hi: 2.0,
            points: 8,
            topology: Topology::LockingValve,
            metric: SweepMetric::MassPlusBattery,
        };
        let result = sweep(&spec, &p, &reg).unwrap();
        for w in result.rows.windows(2) {
            let gap_a = w[0].baseline - w[0].multimodal;
            let gap_b = w[1].baseline - w[1].multimodal;
            assert!(gap_b > gap_a, "longer autonomy must widen the saving");
        }
    }

    #[test]
    fn gamma_sweep_rows_cover_grid() {
        let (mut p, reg) = defaults();
        p.cycle_duration_h = Some(1.0);
        let result = sweep(&SweepSpec::gamma_mass_plus_battery(), &p, &reg).unwrap();
        assert_eq!(result.rows.len(), 51);
        assert_eq!(result.rows[0].parameter, 0.0);
        assert_eq!(result.rows[50].parameter, 1.0);
    }

    #[test]
    fn mass_plus_battery_needs_autonomy() {
        let (p, reg) = defaults();
        assert!(sweep(&SweepSpec::gamma_mass_plus_battery(), &p, &reg).is_err());
    }

    #[test]
    fn invalid_specs_are_rejected() {
        let bad_range = SweepSpec {
            lo: 2.0,
            hi: 2.0,
            ..SweepSpec::lambda_mass(Topology::TwoSpeed)
        };
        assert!(bad_range.validate().is_err());
        let one_point = SweepSpec {
            points: 1,
            ..SweepSpec::lambda_mass(Topology::TwoSpeed)
        };
        assert!(one_point.validate().is_err());
        let gamma_for_two_speed = SweepSpec {
            parameter: SweepParameter::Gamma,
            lo: 0.0,
            hi: 1.0,
            ..SweepSpec::lambda_mass(Topology::TwoSpeed)
        };
        assert!(gamma_for_two_speed.validate().is_err());
    }

    #[test]
    fn self_comparison_reports_no_crossover() {
        // A constant zero difference must not invent a crossing.
        let rows: Vec<f64> = (0..10).map(|i| i as f64).collect();
        for w in rows.windows(2) {
            let c = find_crossover(|_| 0.0, w[0], w[1]);
            // Bisection on an identically zero function technically sees a
            // sign change everywhere; the sweep filters this case out.
            let _ = c;
        }
        let (p, reg) = defaults();
        let spec = SweepSpec::lambda_mass(Topology::TwoSpeed);
        let mut result = sweep(&spec, &p, &reg).unwrap();
        for row in &mut result.rows {
            row.multimodal = row.baseline;
        }
        // Re-run the sweep-side crossover logic over the doctored rows.
        let mut found = false;
        for pair in result.rows.windows(2) {
            let da = pair[0].baseline - pair[0].multimodal;
            let db = pair[1].baseline - pair[1].multimodal;
            if da == 0.0 && db == 0.0 {
                continue;
            }
            if da * db <= 0.0 {
                found = true;
            }
        }
        assert!(!found);
    }

    #[test]
    fn grid_refinement_keeps_crossover_stable() {
        let (p, reg) = defaults();
        let coarse = sweep(&SweepSpec::lambda_mass(Topology::TwoSpeed), &p, &reg).unwrap();
        let fine = sweep(
            &SweepSpec {
                points: 121,
                ..SweepSpec::lambda_mass(Topology::TwoSpeed)
            },
            &p,
            &reg,
        )
        .unwrap();
        let coarse_spacing = 3.0 / 60.0;
        let delta = (coarse.crossover.unwrap().value - fine.crossover.unwrap().value).abs();
        assert!(delta < coarse_spacing);
    }

    #[test]
    fn unsolvable_rows_are_flagged_not_fatal() {
        // Break the inertia law's contraction so every solve fails: the
        // sweep must keep going and flag the rows.
        let (p, mut reg) = defaults();
        reg.motor.inertia_law = crate::scaling::ScalingLaw::new(
            2.1e-5,
            2.0,
            crate::units::QuantityKind::TorqueNm,
            crate::units::QuantityKind::InertiaKgM2,
        )
        .unwrap();
        let result = sweep(&SweepSpec::lambda_mass(Topology::TwoSpeed), &p, &reg).unwrap();
        assert_eq!(result.rows.len(), 61);
        assert!(result.rows.iter().all(|r| !r.baseline_feasible && !r.multimodal_feasible));
        assert!(result.rows.iter().all(|r| r.baseline.is_nan()));
        assert!(result.crossover.is_none());
    }

    #[test]
    fn sweep_is_deterministic() {
        let (p, reg) = defaults();
        let a = sweep(&SweepSpec::lambda_mass(Topology::TwoSpeed), &p, &reg).unwrap();
        let b = sweep(&SweepSpec::lambda_mass(Topology::TwoSpeed), &p, &reg).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn sensitivity_scan_is_monotone_and_deterministic() {
        let (p, reg) = defaults();
        let rows = sensitivity_scan(&p, &reg, &[0.5, 1.0, 2.0, 4.0]).unwrap();
        assert_eq!(rows.len(), 4);
        let ordinals: Vec<f64> = rows.iter().map(|r| r.crossover.ordinal(1.0, 4.0)).collect();
        for w in ordinals.windows(2) {
            assert!(w[0] <= w[1], "crossover must not move left as motors densify");
        }
        match rows[1].crossover {
            CrossoverOutcome::Within(v) => assert!(v > 1.5 && v < 2.5),
            other => panic!("expected a located crossover at multiplier 1, got {other:?}"),
        }
        // Four-times denser motors push the break-even out of the range.
        assert!(matches!(rows[3].crossover, CrossoverOutcome::NeverLighter));
        let again = sensitivity_scan(&p, &reg, &[0.5, 1.0, 2.0, 4.0]).unwrap();
        assert_eq!(rows, again);
    }
}
