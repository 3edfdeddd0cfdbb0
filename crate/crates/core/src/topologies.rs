//! Actuation-topology evaluators: itemized bills of materials, per-task
//! power losses and battery mass for the baseline hydrostatic actuator and
//! five multimodal variants built around selection valves.
//!
//! All evaluators are pure functions of the study parameters and the
//! component registry. Infeasible designs are returned fully sized with
//! `feasible = false` and a reason, never silently clamped.

use crate::components::ComponentRegistry;
use crate::drivetrain::{
    motor_loss, operating_point, solve_ratio, solve_ratio_with_peak, DrivetrainSolution,
    OperatingPointLoss, TaskRequirement,
};
use crate::error::{Error, Result};
use crate::units::Quantity;

/// Pump shaft speed assumed when sizing pump drive motors [rad/s] (3000 rpm).
pub const PUMP_SHAFT_SPEED_RAD_S: f64 = 100.0 * std::f64::consts::PI;

/// Default fill-power rating for the static-offset charge pump [W].
pub const DEFAULT_OFFSET_PUMP_POWER_W: f64 = 230.0;

/// Inputs shared by every comparison study.
#[derive(Debug, Clone, PartialEq)]
pub struct StudyParameters {
    /// Task-separation ratio λ = τ₁/τ₂ = ω₂/ω₁. λ = 1 collapses the high
    /// force and high speed points onto each other.
    pub lambda: f64,
    /// Number of joints sharing one high-pressure pump (shared-pump layout).
    pub n_dof: u32,
    /// Full joint torque requirement [N·m].
    pub base_torque_nm: f64,
    /// Full joint speed requirement [rad/s].
    pub base_speed_rad_s: f64,
    /// Reflected-inertia bound for backdrivable tasks [kg·m²].
    pub inertia_bound_kg_m2: f64,
    /// Fraction of the work cycle spent holding at zero speed (locking study).
    pub holding_duty: f64,
    /// Autonomy target for battery sizing [h]; `None` skips batteries.
    pub cycle_duration_h: Option<f64>,
    /// Overrides the offset-study charge pump rating [W].
    pub pump_power_override_w: Option<f64>,
    /// Accumulator displaced volume [L].
    pub accumulator_volume_l: f64,
    /// Working pressure used for feasibility checks [Pa].
    pub design_pressure_pa: f64,
    /// Count a drive motor for every pump. Disabled by the paper-strict
    /// accounting mode, which tallies pump and valve hardware only.
    pub pump_drive_motor: bool,
}

impl Default for StudyParameters {
    fn default() -> Self {
        StudyParameters {
            lambda: 3.0,
            n_dof: 1,
            base_torque_nm: 100.0,
            base_speed_rad_s: 9.4,
            inertia_bound_kg_m2: 0.035,
            holding_duty: 0.5,
            cycle_duration_h: None,
            pump_power_override_w: None,
            accumulator_volume_l: 0.1,
            design_pressure_pa: 21.0e6,
            pump_drive_motor: true,
        }
    }
}

impl StudyParameters {
    pub fn validate(&self) -> Result<()> {
        if !(self.lambda >= 1.0) {
            return Err(Error::domain("lambda must be >= 1"));
        }
        if self.n_dof < 1 {
            return Err(Error::domain("n_dof must be >= 1"));
        }
        if !(0.0..=1.0).contains(&self.holding_duty) {
            return Err(Error::domain("holding duty must lie in [0, 1]"));
        }
        if !(self.base_torque_nm > 0.0 && self.base_speed_rad_s > 0.0) {
            return Err(Error::domain("base torque and speed must be positive"));
        }
        if !(self.inertia_bound_kg_m2 > 0.0) {
            return Err(Error::domain("inertia bound must be positive"));
        }
        if !(self.accumulator_volume_l > 0.0 && self.design_pressure_pa > 0.0) {
            return Err(Error::domain("accumulator volume and design pressure must be positive"));
        }
        if let Some(h) = self.cycle_duration_h {
            if !(h > 0.0) {
                return Err(Error::domain("cycle duration must be positive when set"));
            }
        }
        if let Some(p) = self.pump_power_override_w {
            if !(p > 0.0) {
                return Err(Error::domain("pump power override must be positive when set"));
            }
        }
        Ok(())
    }

    /// High torque at reduced speed, no backdrivability constraint.
    pub fn task_lifting(&self) -> TaskRequirement {
        TaskRequirement {
            torque_nm: self.base_torque_nm,
            speed_rad_s: self.base_speed_rad_s / self.lambda,
            inertia_bound_kg_m2: None,
            duty: 1.0,
        }
    }

    /// Reduced torque at full speed, inertia-bounded for transparency.
    pub fn task_walking(&self) -> TaskRequirement {
        TaskRequirement {
            torque_nm: self.base_torque_nm / self.lambda,
            speed_rad_s: self.base_speed_rad_s,
            inertia_bound_kg_m2: Some(self.inertia_bound_kg_m2),
            duty: 1.0,
        }
    }

    /// Full torque at full speed (transient high power), inertia-bounded.
    pub fn task_jumping(&self) -> TaskRequirement {
        TaskRequirement {
            torque_nm: self.base_torque_nm,
            speed_rad_s: self.base_speed_rad_s,
            inertia_bound_kg_m2: Some(self.inertia_bound_kg_m2),
            duty: 1.0,
        }
    }

    /// Full torque at zero speed.
    pub fn task_holding(&self) -> TaskRequirement {
        TaskRequirement {
            torque_nm: self.base_torque_nm,
            speed_rad_s: 0.0,
            inertia_bound_kg_m2: None,
            duty: 1.0,
        }
    }
}

/// The evaluated actuation layouts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Topology {
    /// Single motor, ball screw and hydrostatic line.
    Baseline,
    /// Two motors with selectable hydraulic lines (one joint).
    TwoSpeed,
    /// Per-joint high-speed motors plus one shared high-pressure pump.
    TwoSpeedShared,
    /// Accumulator released in parallel for transient power boosts.
    AccumulatorBoost,
    /// Accumulator providing a passive static force offset.
    AccumulatorOffset,
    /// Locking valve for holding loads at zero power.
    LockingValve,
}

impl Topology {
    pub const ALL_MULTIMODAL: [Topology; 5] = [
        Topology::TwoSpeed,
        Topology::TwoSpeedShared,
        Topology::AccumulatorBoost,
        Topology::AccumulatorOffset,
        Topology::LockingValve,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Topology::Baseline => "baseline",
            Topology::TwoSpeed => "two-speed",
            Topology::TwoSpeedShared => "two-speed-shared",
            Topology::AccumulatorBoost => "boost",
            Topology::AccumulatorOffset => "offset",
            Topology::LockingValve => "locking",
        }
    }

    pub fn parse(s: &str) -> Result<Topology> {
        match s {
            "baseline" => Ok(Topology::Baseline),
            "two-speed" => Ok(Topology::TwoSpeed),
            "two-speed-shared" | "two-speed-ndof" => Ok(Topology::TwoSpeedShared),
            "boost" | "accumulator-boost" => Ok(Topology::AccumulatorBoost),
            "offset" | "accumulator-offset" => Ok(Topology::AccumulatorOffset),
            "locking" | "locking-valve" => Ok(Topology::LockingValve),
            other => Err(Error::domain(format!("unknown topology '{other}'"))),
        }
    }
}

impl std::fmt::Display for Topology {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Operating points reported in per-task loss maps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum TaskLabel {
    Lifting,
    Walking,
    Jumping,
    Holding,
}

impl std::fmt::Display for TaskLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TaskLabel::Lifting => write!(f, "lifting"),
            TaskLabel::Walking => write!(f, "walking"),
            TaskLabel::Jumping => write!(f, "jumping"),
            TaskLabel::Holding => write!(f, "holding"),
        }
    }
}

/// Component classes appearing in bills of materials.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ComponentKind {
    Motor,
    BallScrew,
    MasterCylinder,
    Accumulator,
    Pump,
    PumpDriveMotor,
    Valve,
}

impl std::fmt::Display for ComponentKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ComponentKind::Motor => write!(f, "motor"),
            ComponentKind::BallScrew => write!(f, "ball screw"),
            ComponentKind::MasterCylinder => write!(f, "master cylinder"),
            ComponentKind::Accumulator => write!(f, "accumulator"),
            ComponentKind::Pump => write!(f, "pump"),
            ComponentKind::PumpDriveMotor => write!(f, "pump drive motor"),
            ComponentKind::Valve => write!(f, "valve"),
        }
    }
}

/// How a BOM item's mass was obtained, for report traces.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MassBasis {
    /// `mass = k·x^a` of the requirement.
    PowerLaw { k: f64, a: f64 },
    /// `mass = x / (k·x^a)` of the requirement.
    InverseDensity { k: f64, a: f64 },
    /// Fixed catalog mass.
    Catalog,
}

/// One sized component.
#[derive(Debug, Clone, PartialEq)]
pub struct BomItem {
    pub kind: ComponentKind,
    pub label: String,
    /// Sizing requirement, when the item is requirement-driven.
    pub requirement: Option<Quantity>,
    pub mass_kg: f64,
    pub basis: MassBasis,
    /// True when the sizing law was evaluated outside its catalog range.
    pub extrapolated: bool,
}

/// Itemized component list with a mass total.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct BillOfMaterials {
    pub items: Vec<BomItem>,
}

impl BillOfMaterials {
    pub fn total_mass_kg(&self) -> f64 {
        self.items.iter().map(|i| i.mass_kg).sum()
    }

    fn push(&mut self, item: BomItem) {
        self.items.push(item);
    }
}

/// Feasibility verdict for a sized design.
#[derive(Debug, Clone, PartialEq)]
pub struct Feasibility {
    pub ok: bool,
    pub reason: Option<String>,
}

impl Feasibility {
    fn ok() -> Self {
        Feasibility {
            ok: true,
            reason: None,
        }
    }

    fn violated(reason: String) -> Self {
        Feasibility {
            ok: false,
            reason: Some(reason),
        }
    }
}

/// Complete evaluation of one topology at one parameter point.
#[derive(Debug, Clone, PartialEq)]
pub struct TopologyResult {
    pub topology: Topology,
    pub bom: BillOfMaterials,
    pub total_mass_kg: f64,
    /// Total mass divided by the joint count it serves.
    pub mass_per_dof_kg: f64,
    /// Losses at each evaluated operating point, with its cycle duty.
    pub per_task_losses: Vec<(TaskLabel, f64, OperatingPointLoss)>,
    /// Duty-weighted total loss over the work cycle [W].
    pub mean_cycle_loss_w: f64,
    /// Battery mass for the configured autonomy [kg], per DOF.
    pub battery_mass_kg: Option<f64>,
    pub feasible: Feasibility,
    /// Worst-case isothermal accumulator pressure droop over one full
    /// stroke, as a fraction, for accumulator-bearing layouts.
    pub accumulator_droop: Option<f64>,
    /// Solved drivetrains, labeled, for report traces.
    pub solutions: Vec<(String, DrivetrainSolution)>,
}

struct ResultBuilder<'a> {
    topology: Topology,
    params: &'a StudyParameters,
    registry: &'a ComponentRegistry,
    bom: BillOfMaterials,
    losses: Vec<(TaskLabel, f64, OperatingPointLoss)>,
    violations: Vec<String>,
    droop: Option<f64>,
    solutions: Vec<(String, DrivetrainSolution)>,
    n_dof: u32,
}

impl<'a> ResultBuilder<'a> {
    fn new(topology: Topology, params: &'a StudyParameters, registry: &'a ComponentRegistry) -> Self {
        ResultBuilder {
            topology,
            params,
            registry,
            bom: BillOfMaterials::default(),
            losses: Vec::new(),
            violations: Vec::new(),
            droop: None,
            solutions: Vec::new(),
            n_dof: 1,
        }
    }

    fn motor_item(&mut self, label: &str, sol: &DrivetrainSolution) {
        let law = &self.registry.motor.mass_law;
        self.bom.push(BomItem {
            kind: ComponentKind::Motor,
            label: label.to_string(),
            requirement: Some(Quantity::torque_nm(sol.motor_torque_nm)),
            mass_kg: sol.motor_mass_kg,
            basis: MassBasis::PowerLaw {
                k: law.coefficient,
                a: law.exponent,
            },
            extrapolated: law.is_extrapolated(sol.motor_torque_nm),
        });
        self.solutions.push((label.to_string(), sol.clone()));
    }

    fn ball_screw_item(&mut self, label: &str, force_n: f64) -> Result<()> {
        let traced = self.registry.ball_screw.mass(force_n)?;
        let law = &self.registry.ball_screw.force_density_law;
        self.bom.push(BomItem {
            kind: ComponentKind::BallScrew,
            label: label.to_string(),
            requirement: Some(Quantity::force_n(force_n)),
            mass_kg: traced.value,
            basis: MassBasis::InverseDensity {
                k: law.coefficient,
                a: law.exponent,
            },
            extrapolated: traced.extrapolated,
        });
        Ok(())
    }

    fn cylinder_item(&mut self, label: &str) {
        self.bom.push(BomItem {
            kind: ComponentKind::MasterCylinder,
            label: label.to_string(),
            requirement: None,
            mass_kg: self.registry.cylinder.mass_kg,
            basis: MassBasis::Catalog,
            extrapolated: false,
        });
    }

    fn accumulator_item(&mut self) -> Result<()> {
        let volume = self.params.accumulator_volume_l;
        let traced = self.registry.accumulator.mass(volume)?;
        let law = &self.registry.accumulator.mass_law;
        self.bom.push(BomItem {
            kind: ComponentKind::Accumulator,
            label: "accumulator".to_string(),
            requirement: Some(Quantity::volume_l(volume)),
            mass_kg: traced.value,
            basis: MassBasis::PowerLaw {
                k: law.coefficient,
                a: law.exponent,
            },
            extrapolated: traced.extrapolated,
        });
        // Isothermal worst case: discharging one full stroke out of the gas
        // volume drops pressure by V_swept/(V_acc + V_swept).
        let swept = self.registry.cylinder.swept_volume_l();
        self.droop = Some(swept / (volume + swept));
        Ok(())
    }

    /// Pump plus, unless the paper-strict accounting is active, a drive
    /// motor sized from the pump power at a 3000 rpm shaft.
    fn pump_items(&mut self, label: &str, power_w: f64) -> Result<()> {
        let traced = self.registry.pump.mass(power_w)?;
        let law = &self.registry.pump.power_density_law;
        self.bom.push(BomItem {
            kind: ComponentKind::Pump,
            label: label.to_string(),
            requirement: Some(Quantity::power_w(power_w)),
            mass_kg: traced.value,
            basis: MassBasis::InverseDensity {
                k: law.coefficient,
                a: law.exponent,
            },
            extrapolated: traced.extrapolated,
        });
        if self.params.pump_drive_motor {
            let shaft_torque = power_w / PUMP_SHAFT_SPEED_RAD_S;
            let traced = self.registry.motor.mass(shaft_torque)?;
            let law = &self.registry.motor.mass_law;
            self.bom.push(BomItem {
                kind: ComponentKind::PumpDriveMotor,
                label: format!("{label} drive motor"),
                requirement: Some(Quantity::torque_nm(shaft_torque)),
                mass_kg: traced.value,
                basis: MassBasis::PowerLaw {
                    k: law.coefficient,
                    a: law.exponent,
                },
                extrapolated: traced.extrapolated,
            });
        }
        Ok(())
    }

    fn valve_items(&mut self, label: &str, count: u32) {
        for i in 0..count {
            let item_label = if count == 1 {
                label.to_string()
            } else {
                format!("{label} {}", i + 1)
            };
            self.bom.push(BomItem {
                kind: ComponentKind::Valve,
                label: item_label,
                requirement: None,
                mass_kg: self.registry.valve.total_mass_kg(),
                basis: MassBasis::Catalog,
                extrapolated: false,
            });
        }
    }

    fn loss(&mut self, label: TaskLabel, duty: f64, loss: OperatingPointLoss) {
        self.losses.push((label, duty, loss));
    }

    /// Gate the design on the hydraulic line: the peak piston force must be
    /// within the cylinder rating and the implied pressure within the design
    /// and component pressure ratings.
    fn check_line(&mut self, peak_force_n: f64, pressure_limits: &[(f64, &str)]) {
        let cyl = &self.registry.cylinder;
        const SLACK: f64 = 1.0 + 1e-9;
        if peak_force_n > cyl.max_force_n * SLACK {
            self.violations.push(format!(
                "piston force {:.0} N exceeds cylinder rating {:.0} N",
                peak_force_n, cyl.max_force_n
            ));
        }
        let pressure = cyl.pressure_for_force(peak_force_n);
        for (limit, what) in pressure_limits {
            if pressure > limit * SLACK {
                self.violations.push(format!(
                    "line pressure {:.2} MPa exceeds {} rating {:.2} MPa",
                    pressure / 1e6,
                    what,
                    limit / 1e6
                ));
            }
        }
    }

    fn finish(self) -> Result<TopologyResult> {
        let total = self.bom.total_mass_kg();
        let mean_loss: f64 = self.losses.iter().map(|(_, duty, l)| duty * l.total_loss_w()).sum();
        let battery = match self.params.cycle_duration_h {
            Some(hours) => Some(crate::components::battery_mass(
                mean_loss * hours,
                &self.registry.battery,
            )?),
            None => None,
        };
        let feasible = if self.violations.is_empty() {
            Feasibility::ok()
        } else {
            Feasibility::violated(self.violations.join("; "))
        };
        Ok(TopologyResult {
            topology: self.topology,
            bom: self.bom,
            total_mass_kg: total,
            mass_per_dof_kg: total / self.n_dof as f64,
            per_task_losses: self.losses,
            mean_cycle_loss_w: mean_loss,
            battery_mass_kg: battery,
            feasible,
            accumulator_droop: self.droop,
            solutions: self.solutions,
        })
    }
}

/// Losses through a pump-driven line: drive-motor copper loss (quadratic in
/// load, anchored at the motor's rated efficiency at full power) plus the
/// pump's hydraulic conversion loss. With the paper-strict accounting, the
/// drive motor is absent and only the pump loss is counted.
fn pump_path_loss(
    params: &StudyParameters,
    registry: &ComponentRegistry,
    mech_output_w: f64,
    pump_rating_w: f64,
) -> OperatingPointLoss {
    let pump_loss = (1.0 / registry.pump.efficiency - 1.0) * mech_output_w;
    let joule = if params.pump_drive_motor {
        let load_fraction = (mech_output_w + pump_loss) / pump_rating_w;
        (1.0 / registry.motor.rated_efficiency - 1.0) * pump_rating_w * load_fraction * load_fraction
    } else {
        0.0
    };
    OperatingPointLoss::from_parts(mech_output_w, joule, 0.0, pump_loss)
}

/// Baseline sizing envelopes. The comparison baseline differs per study:
/// studies against continuous requirements size the motor for full torque
/// and full speed, while the power-boost study lets the baseline reach the
/// transient point within the motor's peak-torque factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaselineSizing {
    /// Full torque and full speed as continuous requirements.
    Envelope,
    /// Walking as the continuous requirement, full power as a transient.
    PeakTransient,
}

/// Size and evaluate the baseline configuration.
pub fn eval_baseline(params: &StudyParameters, registry: &ComponentRegistry) -> Result<TopologyResult> {
    eval_baseline_sized(params, registry, BaselineSizing::Envelope)
}

/// Baseline with an explicit sizing envelope choice.
pub fn eval_baseline_sized(
    params: &StudyParameters,
    registry: &ComponentRegistry,
    sizing: BaselineSizing,
) -> Result<TopologyResult> {
    params.validate()?;
    registry.validate()?;
    let eta = registry.ball_screw.efficiency;
    let mut b = ResultBuilder::new(Topology::Baseline, params, registry);

    let sol = match sizing {
        BaselineSizing::Envelope => solve_ratio(&params.task_jumping(), &registry.motor, eta)?,
        BaselineSizing::PeakTransient => solve_ratio_with_peak(
            &params.task_walking(),
            Some(params.base_torque_nm),
            &registry.motor,
            eta,
        )?,
    };

    let full_force = registry.cylinder.force_for_torque(params.base_torque_nm);
    b.motor_item("motor", &sol);
    b.ball_screw_item("ball screw", full_force)?;
    b.cylinder_item("master cylinder");
    b.check_line(
        full_force,
        &[
            (params.design_pressure_pa, "design"),
            (registry.cylinder.rated_pressure_pa, "cylinder"),
        ],
    );

    match sizing {
        BaselineSizing::Envelope => {
            // The whole duty goes to the slow high-torque point, where the
            // motor runs well below its nominal speed.
            b.loss(
                TaskLabel::Lifting,
                1.0,
                operating_point(&params.task_lifting(), &sol, &registry.motor, eta)?,
            );
            b.loss(
                TaskLabel::Walking,
                0.0,
                operating_point(&params.task_walking(), &sol, &registry.motor, eta)?,
            );
        }
        BaselineSizing::PeakTransient => {
            b.loss(
                TaskLabel::Walking,
                1.0,
                operating_point(&params.task_walking(), &sol, &registry.motor, eta)?,
            );
        }
    }
    b.finish()
}

/// Two motors on selectable hydraulic lines, one joint.
///
/// The high-speed motor M2 is sized for walking (inertia-bounded); the high
/// force motor M1 for lifting. In high-speed mode both master pistons work
/// in parallel and reflected inertia is dominated by M2's branch, so M1
/// carries no inertia bound. Lifting losses assume M2's valve is closed.
pub fn eval_two_speed_1dof(params: &StudyParameters, registry: &ComponentRegistry) -> Result<TopologyResult> {
    params.validate()?;
    registry.validate()?;
    let eta = registry.ball_screw.efficiency;
    let mut b = ResultBuilder::new(Topology::TwoSpeed, params, registry);

    let m1 = solve_ratio(&params.task_lifting(), &registry.motor, eta)?;
    let m2 = solve_ratio(&params.task_walking(), &registry.motor, eta)?;

    let full_force = registry.cylinder.force_for_torque(params.base_torque_nm);
    b.motor_item("motor M1 (high force)", &m1);
    b.motor_item("motor M2 (high speed)", &m2);
    b.ball_screw_item("ball screw (high-force line)", full_force)?;
    b.ball_screw_item("ball screw (high-speed line)", full_force / params.lambda)?;
    b.cylinder_item("master cylinder (high-force line)");
    b.cylinder_item("master cylinder (high-speed line)");
    b.valve_items("selection valve", 2);
    b.check_line(
        full_force,
        &[
            (params.design_pressure_pa, "design"),
            (registry.cylinder.rated_pressure_pa, "cylinder"),
        ],
    );

    b.loss(
        TaskLabel::Lifting,
        1.0,
        operating_point(&params.task_lifting(), &m1, &registry.motor, eta)?,
    );
    b.loss(
        TaskLabel::Walking,
        0.0,
        operating_point(&params.task_walking(), &m2, &registry.motor, eta)?,
    );
    b.finish()
}

/// Per-joint high-speed drivetrains plus one shared high-pressure pump
/// replacing every high-force line. Needs at least two joints.
///
/// The pump is rated to lift all joints simultaneously and drives them at
/// the pump efficiency instead of the ball-screw efficiency. Each joint
/// needs two selection valves, plus one on the pump line. Reported losses
/// and battery mass are per joint.
pub fn eval_two_speed_ndof(params: &StudyParameters, registry: &ComponentRegistry) -> Result<TopologyResult> {
    params.validate()?;
    registry.validate()?;
    if params.n_dof < 2 {
        return Err(Error::domain("the shared-pump layout needs n_dof >= 2"));
    }
    let eta = registry.ball_screw.efficiency;
    let n = params.n_dof;
    let mut b = ResultBuilder::new(Topology::TwoSpeedShared, params, registry);
    b.n_dof = n;

    let m2 = solve_ratio(&params.task_walking(), &registry.motor, eta)?;
    let full_force = registry.cylinder.force_for_torque(params.base_torque_nm);
    let lifting_power_w = params.base_torque_nm * params.base_speed_rad_s / params.lambda;
    let pump_rating_w = n as f64 * lifting_power_w / registry.pump.efficiency;

    for dof in 1..=n {
        b.motor_item(&format!("motor M2 (joint {dof})"), &m2);
        b.ball_screw_item(&format!("ball screw (joint {dof})"), full_force / params.lambda)?;
        b.cylinder_item(&format!("master cylinder (joint {dof})"));
    }
    b.pump_items("shared pump", pump_rating_w)?;
    b.valve_items("selection valve", 2 * n);
    b.valve_items("pump line valve", 1);
    b.check_line(
        full_force,
        &[
            (params.design_pressure_pa, "design"),
            (registry.cylinder.rated_pressure_pa, "cylinder"),
            (registry.pump.max_pressure_pa, "pump"),
        ],
    );

    // Lifting: all joints driven by the pump at once; per-joint share.
    let all_joints = pump_path_loss(params, registry, n as f64 * lifting_power_w, pump_rating_w);
    let per_joint = OperatingPointLoss::from_parts(
        lifting_power_w,
        all_joints.joule_loss_w / n as f64,
        0.0,
        all_joints.pump_loss_w / n as f64,
    );
    b.loss(TaskLabel::Lifting, 1.0, per_joint);
    b.loss(
        TaskLabel::Walking,
        0.0,
        operating_point(&params.task_walking(), &m2, &registry.motor, eta)?,
    );
    b.finish()
}

/// Walking actuator plus an accumulator released for transient full-power
/// events, charged by an auxiliary pump rated for the walking power.
pub fn eval_accumulator_boost(params: &StudyParameters, registry: &ComponentRegistry) -> Result<TopologyResult> {
    params.validate()?;
    registry.validate()?;
    let eta = registry.ball_screw.efficiency;
    let mut b = ResultBuilder::new(Topology::AccumulatorBoost, params, registry);

    let m2 = solve_ratio(&params.task_walking(), &registry.motor, eta)?;

    // The motor covers the transient up to its peak factor; the accumulator
    // supplies the remaining torque directly on the slave cylinder.
    let peak_factor = registry.motor.peak_torque_factor;
    let walking_torque = params.base_torque_nm / params.lambda;
    let motor_transient_torque = params.base_torque_nm.min(peak_factor * walking_torque);
    let shortfall_torque = params.base_torque_nm - motor_transient_torque;

    let cyl = &registry.cylinder;
    let motor_line_force = cyl.force_for_torque(motor_transient_torque);
    let accumulator_force = cyl.force_for_torque(shortfall_torque);
    let pump_rating_w = walking_torque * params.base_speed_rad_s / registry.pump.efficiency;

    b.motor_item("motor M2 (high speed)", &m2);
    b.ball_screw_item("ball screw (high-speed line)", motor_line_force)?;
    b.cylinder_item("master cylinder");
    b.accumulator_item()?;
    b.pump_items("charge pump", pump_rating_w)?;
    b.valve_items("selection valve", 2);

    b.check_line(
        cyl.force_for_torque(params.base_torque_nm),
        &[
            (params.design_pressure_pa, "design"),
            (cyl.rated_pressure_pa, "cylinder"),
            (registry.pump.max_pressure_pa, "pump"),
        ],
    );
    // The accumulator must push its share at the design pressure.
    let capability_n = cyl.piston_area_m2() * params.design_pressure_pa;
    if accumulator_force > capability_n * (1.0 + 1e-9) {
        b.violations.push(format!(
            "accumulator force {:.0} N exceeds design-pressure capability {:.0} N",
            accumulator_force, capability_n
        ));
    }

    b.loss(
        TaskLabel::Walking,
        1.0,
        operating_point(&params.task_walking(), &m2, &registry.motor, eta)?,
    );
    // Transient: the motor works at its peak share, the accumulator adds a
    // lossless parallel force, the charge pump idles.
    let motor_tau = motor_transient_torque / (eta * m2.ratio);
    let joule = motor_loss(&registry.motor, m2.motor_torque_nm, motor_tau, 0.0)?;
    let motor_mech = motor_transient_torque * params.base_speed_rad_s;
    let total_mech = params.base_torque_nm * params.base_speed_rad_s;
    let transmission = (1.0 / eta - 1.0) * motor_mech;
    b.loss(
        TaskLabel::Jumping,
        0.0,
        OperatingPointLoss::from_parts(total_mech, joule, transmission, 0.0),
    );
    b.finish()
}

/// Walking actuator plus an accumulator holding a constant parallel force
/// that cancels the mean load; the motor covers only the dynamic range.
pub fn eval_accumulator_offset(params: &StudyParameters, registry: &ComponentRegistry) -> Result<TopologyResult> {
    params.validate()?;
    registry.validate()?;
    let eta = registry.ball_screw.efficiency;
    let mut b = ResultBuilder::new(Topology::AccumulatorOffset, params, registry);

    let m2 = solve_ratio(&params.task_walking(), &registry.motor, eta)?;

    let dynamic_torque = params.base_torque_nm / params.lambda;
    let offset_torque = params.base_torque_nm * (1.0 - 1.0 / params.lambda);
    let cyl = &registry.cylinder;
    let pump_rating_w = params
        .pump_power_override_w
        .unwrap_or(DEFAULT_OFFSET_PUMP_POWER_W);

    b.motor_item("motor M2 (dynamic range)", &m2);
    b.ball_screw_item("ball screw (high-speed line)", cyl.force_for_torque(dynamic_torque))?;
    b.cylinder_item("master cylinder");
    b.accumulator_item()?;
    b.pump_items("charge pump", pump_rating_w)?;
    b.valve_items("selection valve", 2);

    b.check_line(
        cyl.force_for_torque(params.base_torque_nm),
        &[
            (params.design_pressure_pa, "design"),
            (cyl.rated_pressure_pa, "cylinder"),
            (registry.pump.max_pressure_pa, "pump"),
        ],
    );
    let capability_n = cyl.piston_area_m2() * params.design_pressure_pa;
    let offset_force = cyl.force_for_torque(offset_torque);
    if offset_force > capability_n * (1.0 + 1e-9) {
        b.violations.push(format!(
            "accumulator offset force {:.0} N exceeds design-pressure capability {:.0} N",
            offset_force, capability_n
        ));
    }

    b.loss(
        TaskLabel::Walking,
        0.0,
        operating_point(&params.task_walking(), &m2, &registry.motor, eta)?,
    );
    // Sustained full-torque point: the accumulator carries the offset for
    // free while the motor tops up the dynamic share at full speed.
    let motor_mech = dynamic_torque * params.base_speed_rad_s;
    let total_mech = params.base_torque_nm * params.base_speed_rad_s;
    let joule = motor_loss(
        &registry.motor,
        m2.motor_torque_nm,
        dynamic_torque / (eta * m2.ratio),
        0.0,
    )?;
    let transmission = (1.0 / eta - 1.0) * motor_mech;
    b.loss(
        TaskLabel::Jumping,
        1.0,
        OperatingPointLoss::from_parts(total_mech, joule, transmission, 0.0),
    );
    b.finish()
}

/// Baseline drivetrain plus one locking valve that blocks the line while
/// holding, cutting the holding losses to zero.
///
/// Both configurations share the same drivetrain, sized for the full-power
/// envelope; the comparison is about losses and battery mass over a cycle
/// that spends `holding_duty` of its time holding the load at zero speed.
pub fn eval_locking_valve(params: &StudyParameters, registry: &ComponentRegistry) -> Result<TopologyResult> {
    params.validate()?;
    registry.validate()?;
    let eta = registry.ball_screw.efficiency;
    let gamma = params.holding_duty;
    let mut b = ResultBuilder::new(Topology::LockingValve, params, registry);

    let sol = solve_ratio(&params.task_jumping(), &registry.motor, eta)?;
    let full_force = registry.cylinder.force_for_torque(params.base_torque_nm);

    b.motor_item("motor", &sol);
    b.ball_screw_item("ball screw", full_force)?;
    b.cylinder_item("master cylinder");
    b.valve_items("locking valve", 1);
    b.check_line(
        full_force,
        &[
            (params.design_pressure_pa, "design"),
            (registry.cylinder.rated_pressure_pa, "cylinder"),
        ],
    );

    let moving = operating_point(&params.task_jumping(), &sol, &registry.motor, eta)?;
    b.loss(TaskLabel::Jumping, 1.0 - gamma, moving);
    // With the valve shut the load is held hydraulically: no input power.
    b.loss(
        TaskLabel::Holding,
        gamma,
        OperatingPointLoss::from_parts(0.0, 0.0, 0.0, 0.0),
    );
    b.finish()
}

/// Baseline counterpart of the locking study: same drivetrain, no valve,
/// holding duty spent stalled at full torque.
pub fn eval_locking_baseline(params: &StudyParameters, registry: &ComponentRegistry) -> Result<TopologyResult> {
    params.validate()?;
    registry.validate()?;
    let eta = registry.ball_screw.efficiency;
    let gamma = params.holding_duty;
    let mut b = ResultBuilder::new(Topology::Baseline, params, registry);

    let sol = solve_ratio(&params.task_jumping(), &registry.motor, eta)?;
    let full_force = registry.cylinder.force_for_torque(params.base_torque_nm);

    b.motor_item("motor", &sol);
    b.ball_screw_item("ball screw", full_force)?;
    b.cylinder_item("master cylinder");
    b.check_line(
        full_force,
        &[
            (params.design_pressure_pa, "design"),
            (registry.cylinder.rated_pressure_pa, "cylinder"),
        ],
    );

    let moving = operating_point(&params.task_jumping(), &sol, &registry.motor, eta)?;
    let holding = operating_point(&params.task_holding(), &sol, &registry.motor, eta)?;
    b.loss(TaskLabel::Jumping, 1.0 - gamma, moving);
    b.loss(TaskLabel::Holding, gamma, holding);
    b.finish()
}

/// Evaluate a topology by name.
pub fn evaluate(topology: Topology, params: &StudyParameters, registry: &ComponentRegistry) -> Result<TopologyResult> {
    match topology {
        Topology::Baseline => eval_baseline(params, registry),
        Topology::TwoSpeed => eval_two_speed_1dof(params, registry),
        Topology::TwoSpeedShared => eval_two_speed_ndof(params, registry),
        Topology::AccumulatorBoost => eval_accumulator_boost(params, registry),
        Topology::AccumulatorOffset => eval_accumulator_offset(params, registry),
        Topology::LockingValve => eval_locking_valve(params, registry),
    }
}

/// The baseline a multimodal topology is compared against in its study.
pub fn comparison_baseline(
    topology: Topology,
    params: &StudyParameters,
    registry: &ComponentRegistry,
) -> Result<TopologyResult> {
    match topology {
        Topology::AccumulatorBoost => eval_baseline_sized(params, registry, BaselineSizing::PeakTransient),
        Topology::LockingValve => eval_locking_baseline(params, registry),
        _ => eval_baseline(params, registry),
    }
}
