//! Reduction-ratio selection and drivetrain power losses.
//!
//! Deliverable torque, output speed and reflected inertia couple through the
//! reduction ratio N: the ratio is capped either by the motor's rotor
//! inertia (reflected as J_M·N²) or by its nominal speed, while the motor
//! torque needed is τ_M = τ_i/(η·N). Since the inertia and speed caps are
//! themselves scaling functions of τ_M, the pair (N, τ_M) is found as the
//! fixed point of the coupled system.
//!
//! The iteration map on the speed branch is τ ← c·τ^0.64 and on the inertia
//! branch τ ← c·τ^0.71 (with the default laws), both contractive in log
//! space; a 0.5 damping factor keeps the iteration stable for any exponent
//! set with |a| < 1 near the solution.

use crate::components::MotorModel;
use crate::error::{Error, Result};

/// Relative convergence tolerance for the fixed-point iteration.
pub const SOLVER_TOLERANCE: f64 = 1e-9;
/// Iteration cap before reporting non-convergence.
pub const SOLVER_MAX_ITERATIONS: u32 = 10_000;
const DAMPING: f64 = 0.5;

/// One operating point of the joint: torque, speed, optional reflected
/// inertia bound, and the fraction of the work cycle spent there.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TaskRequirement {
    pub torque_nm: f64,
    pub speed_rad_s: f64,
    /// Maximum reflected inertia [kg·m²]; `None` means unconstrained.
    pub inertia_bound_kg_m2: Option<f64>,
    /// Fraction of the work cycle spent at this point, in [0, 1].
    pub duty: f64,
}

impl TaskRequirement {
    pub fn new(torque_nm: f64, speed_rad_s: f64, inertia_bound_kg_m2: Option<f64>, duty: f64) -> Result<Self> {
        if torque_nm < 0.0 || speed_rad_s < 0.0 {
            return Err(Error::domain("task torque and speed must be non-negative"));
        }
        if let Some(j) = inertia_bound_kg_m2 {
            if !(j > 0.0) {
                return Err(Error::domain("inertia bound must be positive when present"));
            }
        }
        if !(0.0..=1.0).contains(&duty) {
            return Err(Error::domain("task duty must lie in [0, 1]"));
        }
        Ok(TaskRequirement {
            torque_nm,
            speed_rad_s,
            inertia_bound_kg_m2,
            duty,
        })
    }
}

/// Which branch of the ratio cap was active at the solution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Binding {
    Inertia,
    Speed,
}

impl std::fmt::Display for Binding {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Binding::Inertia => write!(f, "inertia"),
            Binding::Speed => write!(f, "speed"),
        }
    }
}

/// Solved drivetrain: ratio, motor rating and bookkeeping.
#[derive(Debug, Clone, PartialEq)]
pub struct DrivetrainSolution {
    /// Reduction ratio between motor and joint.
    pub ratio: f64,
    /// Rated continuous motor torque [N·m].
    pub motor_torque_nm: f64,
    pub binding: Binding,
    /// True when a separate peak-torque requirement, divided by the peak
    /// factor, exceeded the continuous requirement and set the rating.
    pub peak_sized: bool,
    pub motor_mass_kg: f64,
    pub motor_nominal_speed_rad_s: f64,
    pub motor_inertia_kg_m2: f64,
    /// J_M·N² at the solution [kg·m²].
    pub reflected_inertia_kg_m2: f64,
    /// Inertia-branch ratio cap evaluated at the solved motor torque.
    pub inertia_branch_ratio: f64,
    /// Speed-branch ratio cap evaluated at the solved motor torque.
    pub speed_branch_ratio: f64,
    /// Relative fixed-point residual at exit.
    pub residual: f64,
    pub iterations: u32,
}

fn ratio_caps(motor: &MotorModel, req: &TaskRequirement, tau_m: f64) -> Result<(f64, f64)> {
    let inertia = match req.inertia_bound_kg_m2 {
        Some(j_i) => (j_i / motor.rotor_inertia(tau_m)?).sqrt(),
        None => f64::INFINITY,
    };
    let speed = if req.speed_rad_s > 0.0 {
        motor.nominal_speed(tau_m)? / req.speed_rad_s
    } else {
        f64::INFINITY
    };
    Ok((inertia, speed))
}

/// Solve the coupled ratio/torque system for a continuous requirement.
pub fn solve_ratio(req: &TaskRequirement, motor: &MotorModel, eta_bs: f64) -> Result<DrivetrainSolution> {
    solve_ratio_with_peak(req, None, motor, eta_bs)
}

/// Solve with an additional transient joint-torque requirement that the
/// motor may meet at `peak_torque_factor` times its continuous rating.
pub fn solve_ratio_with_peak(
    req: &TaskRequirement,
    peak_torque_nm: Option<f64>,
    motor: &MotorModel,
    eta_bs: f64,
) -> Result<DrivetrainSolution> {
    motor.validate()?;
    if !(eta_bs > 0.0 && eta_bs <= 1.0) {
        return Err(Error::domain("transmission efficiency must lie in (0, 1]"));
    }
    if !(req.torque_nm > 0.0) {
        return Err(Error::domain("continuous torque requirement must be positive"));
    }
    if req.speed_rad_s <= 0.0 && req.inertia_bound_kg_m2.is_none() {
        return Err(Error::Infeasible(
            "ratio is unbounded: requirement has neither a speed nor an inertia bound".into(),
        ));
    }
    if let Some(peak) = peak_torque_nm {
        if !(peak > 0.0) {
            return Err(Error::domain("peak torque requirement must be positive"));
        }
    }

    // Joint torque that sizes the motor: the continuous requirement, or the
    // peak requirement deflated by the peak factor, whichever is larger.
    let sizing_torque = match peak_torque_nm {
        Some(peak) => req.torque_nm.max(peak / motor.peak_torque_factor),
        None => req.torque_nm,
    };

    let mut tau = sizing_torque / eta_bs; // start at N = 1
    let mut residual = f64::INFINITY;
    let mut iterations = 0;
    while iterations < SOLVER_MAX_ITERATIONS {
        iterations += 1;
        let (inertia_cap, speed_cap) = ratio_caps(motor, req, tau)?;
        let n = inertia_cap.min(speed_cap);
        if !n.is_finite() || !(n > 0.0) {
            return Err(Error::Infeasible(format!(
                "no positive ratio exists at motor torque {tau:.3} N·m"
            )));
        }
        let target = sizing_torque / (eta_bs * n);
        let next = DAMPING * tau + (1.0 - DAMPING) * target;
        // A diverging or collapsing iterate means the law exponents admit
        // no fixed point; report it as a solver failure, not a domain one.
        if !next.is_finite() || !(next > 0.0) {
            return Err(Error::Solver {
                residual: f64::INFINITY,
                iterations,
            });
        }
        residual = (next - tau).abs() / next;
        tau = next;
        if residual < SOLVER_TOLERANCE {
            break;
        }
    }
    if residual >= SOLVER_TOLERANCE {
        return Err(Error::Solver {
            residual,
            iterations,
        });
    }

    let (inertia_cap, speed_cap) = ratio_caps(motor, req, tau)?;
    let binding = if inertia_cap <= speed_cap {
        Binding::Inertia
    } else {
        Binding::Speed
    };
    let ratio = inertia_cap.min(speed_cap);
    let motor_inertia = motor.rotor_inertia(tau)?;
    Ok(DrivetrainSolution {
        ratio,
        motor_torque_nm: tau,
        binding,
        peak_sized: sizing_torque > req.torque_nm,
        motor_mass_kg: motor.mass(tau)?.value,
        motor_nominal_speed_rad_s: motor.nominal_speed(tau)?,
        motor_inertia_kg_m2: motor_inertia,
        reflected_inertia_kg_m2: motor_inertia * ratio * ratio,
        inertia_branch_ratio: inertia_cap,
        speed_branch_ratio: speed_cap,
        residual,
        iterations,
    })
}

/// Copper (Joule) loss of a motor rated for `tau_continuous`, producing
/// torque `tau` [W]. Quadratic in torque and independent of speed; the
/// rated-point loss is anchored so that efficiency at (continuous torque,
/// nominal speed) equals the motor's rated efficiency.
pub fn motor_loss(motor: &MotorModel, tau_continuous: f64, tau: f64, _speed_rad_s: f64) -> Result<f64> {
    if !(tau_continuous > 0.0) {
        return Err(Error::domain("continuous torque rating must be positive"));
    }
    let peak = motor.peak_torque_factor * tau_continuous;
    if tau.abs() > peak * (1.0 + 1e-12) {
        return Err(Error::Capability(format!(
            "torque {:.3} N·m exceeds peak capability {:.3} N·m",
            tau, peak
        )));
    }
    let rated = motor.rated_loss(tau_continuous)?;
    let frac = tau / tau_continuous;
    Ok(rated * frac * frac)
}

/// Power bookkeeping at one operating point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatingPointLoss {
    pub mechanical_power_w: f64,
    pub joule_loss_w: f64,
    pub transmission_loss_w: f64,
    /// Zero when no pump is in the power path.
    pub pump_loss_w: f64,
    pub total_input_power_w: f64,
    /// mech / (mech + losses); zero at zero mechanical power.
    pub efficiency: f64,
}

impl OperatingPointLoss {
    pub(crate) fn from_parts(mechanical_power_w: f64, joule_loss_w: f64, transmission_loss_w: f64, pump_loss_w: f64) -> Self {
        let total = mechanical_power_w + joule_loss_w + transmission_loss_w + pump_loss_w;
        OperatingPointLoss {
            mechanical_power_w,
            joule_loss_w,
            transmission_loss_w,
            pump_loss_w,
            total_input_power_w: total,
            efficiency: if total > 0.0 && mechanical_power_w > 0.0 {
                mechanical_power_w / total
            } else {
                0.0
            },
        }
    }

    pub fn total_loss_w(&self) -> f64 {
        self.joule_loss_w + self.transmission_loss_w + self.pump_loss_w
    }
}

/// Losses of a motor+ball-screw drivetrain delivering one task point.
///
/// Transmission loss is `(1/η − 1)` of the joint mechanical power for
/// positive power flow; the motor adds its copper loss. Points beyond the
/// drivetrain's torque or speed capability are capability errors.
pub fn operating_point(
    req: &TaskRequirement,
    sol: &DrivetrainSolution,
    motor: &MotorModel,
    eta_bs: f64,
) -> Result<OperatingPointLoss> {
    let tau_motor = req.torque_nm / (eta_bs * sol.ratio);
    let peak = motor.peak_torque_factor * sol.motor_torque_nm;
    if tau_motor > peak * (1.0 + 1e-9) {
        return Err(Error::Capability(format!(
            "point needs {:.3} N·m at the motor, peak capability is {:.3} N·m",
            tau_motor, peak
        )));
    }
    let motor_speed = sol.ratio * req.speed_rad_s;
    if motor_speed > sol.motor_nominal_speed_rad_s * (1.0 + 1e-9) {
        return Err(Error::Capability(format!(
            "point needs {:.2} rad/s at the motor, nominal speed is {:.2} rad/s",
            motor_speed, sol.motor_nominal_speed_rad_s
        )));
    }

    let mech = req.torque_nm * req.speed_rad_s;
    let transmission = (1.0 / eta_bs - 1.0) * mech;
    let joule = motor_loss(motor, sol.motor_torque_nm, tau_motor, motor_speed)?;
    Ok(OperatingPointLoss::from_parts(mech, joule, transmission, 0.0))
}
