//! Trade-study engine for multimodal hydrostatic actuators.
//!
//! Sizes and compares actuation topologies for wearable robots: component
//! masses come from power-law catalog models, reduction ratios from a
//! coupled torque/speed/reflected-inertia solve, and whole configurations
//! are itemized into bills of materials with per-task power losses and
//! battery mass over a duty cycle. Parameter sweeps locate the break-even
//! points at which a multimodal layout beats the single-ratio baseline.
//!
//! All types are immutable values after construction and all operations are
//! pure functions, so evaluations can run concurrently without coordination.

// Validation uses `!(x > 0.0)` so that NaN inputs fail the checks too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod components;
pub mod config;
pub mod drivetrain;
pub mod error;
pub mod scaling;
pub mod topologies;
pub mod units;

pub use analysis::{
    find_crossover, sensitivity_scan, sweep, Crossover, CrossoverOutcome, SensitivityRow, SweepMetric,
    SweepParameter, SweepResult, SweepRow, SweepSpec,
};
pub use components::{
    battery_mass, size_valve, AccumulatorModel, BallScrewModel, BatteryModel, ComponentRegistry,
    CylinderModel, MotorModel, PumpModel, SizedValve, ValveModel, ValveSizingSpec,
};
pub use config::StudyConfig;
pub use drivetrain::{
    motor_loss, operating_point, solve_ratio, solve_ratio_with_peak, Binding, DrivetrainSolution,
    OperatingPointLoss, TaskRequirement,
};
pub use error::{Error, Result};
pub use scaling::{
    component_mass_from_inverse_density, eval_law, fit_scaling_law, CatalogPoint, LawFit, ScalingLaw,
    Traced,
};
pub use topologies::{
    comparison_baseline, eval_accumulator_boost, eval_accumulator_offset, eval_baseline,
    eval_locking_valve, eval_two_speed_1dof, eval_two_speed_ndof, evaluate, BillOfMaterials, BomItem,
    ComponentKind, Feasibility, MassBasis, StudyParameters, TaskLabel, Topology, TopologyResult,
};
pub use units::{Quantity, QuantityKind};
