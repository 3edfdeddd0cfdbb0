//! Per-component sizing models and their catalog defaults.
//!
//! Defaults reproduce the reference catalog laws: a frameless BLDC torque
//! motor series, NSK-class ball screws (≈15 kN of thrust per kg), composite
//! diaphragm accumulators, miniature axial piston pumps, a 21 MPa 50 mm
//! hydraulic cylinder and a custom motorized ball valve.

use crate::error::{Error, Result};
use crate::scaling::{component_mass_from_inverse_density, ScalingLaw, Traced};
use crate::units::{Quantity, QuantityKind};

/// Electric motor scaled from its rated continuous torque.
#[derive(Debug, Clone, PartialEq)]
pub struct MotorModel {
    /// Rated torque [N·m] → mass [kg].
    pub mass_law: ScalingLaw,
    /// Rated torque [N·m] → nominal speed [rad/s].
    pub speed_law: ScalingLaw,
    /// Rated torque [N·m] → rotor inertia [kg·m²].
    pub inertia_law: ScalingLaw,
    /// Peak-to-continuous torque ratio. The reference series specifies an
    /// ultimate torque of twice the rated continuous torque.
    pub peak_torque_factor: f64,
    /// Efficiency at the rated point (continuous torque, nominal speed).
    pub rated_efficiency: f64,
}

impl Default for MotorModel {
    fn default() -> Self {
        MotorModel {
            mass_law: ScalingLaw::new(0.30, 0.71, QuantityKind::TorqueNm, QuantityKind::MassKg).unwrap(),
            speed_law: ScalingLaw::new(309.0, -0.64, QuantityKind::TorqueNm, QuantityKind::SpeedRadS).unwrap(),
            inertia_law: ScalingLaw::new(2.1e-5, 1.42, QuantityKind::TorqueNm, QuantityKind::InertiaKgM2)
                .unwrap(),
            peak_torque_factor: 2.0,
            rated_efficiency: 0.85,
        }
    }
}

impl MotorModel {
    pub fn validate(&self) -> Result<()> {
        if !(self.peak_torque_factor >= 1.0) {
            return Err(Error::domain("motor peak torque factor must be >= 1"));
        }
        if !(self.rated_efficiency > 0.0 && self.rated_efficiency < 1.0) {
            return Err(Error::domain("motor rated efficiency must lie in (0, 1)"));
        }
        Ok(())
    }

    pub fn mass(&self, torque_nm: f64) -> Result<Traced> {
        self.mass_law.eval_quantity(&Quantity::torque_nm(torque_nm))
    }

    /// Nominal speed [rad/s] of a motor rated for `torque_nm`.
    pub fn nominal_speed(&self, torque_nm: f64) -> Result<f64> {
        self.speed_law.eval(torque_nm)
    }

    /// Rotor inertia [kg·m²] of a motor rated for `torque_nm`.
    pub fn rotor_inertia(&self, torque_nm: f64) -> Result<f64> {
        self.inertia_law.eval(torque_nm)
    }

    /// Copper loss at the rated point [W], chosen so that efficiency there
    /// equals `rated_efficiency`.
    pub fn rated_loss(&self, torque_nm: f64) -> Result<f64> {
        let w_nom = self.nominal_speed(torque_nm)?;
        Ok((1.0 / self.rated_efficiency - 1.0) * torque_nm * w_nom)
    }
}

/// Ball screw characterized by a (flat) force-density law and an efficiency.
#[derive(Debug, Clone, PartialEq)]
pub struct BallScrewModel {
    /// Thrust [N] → force density [N/kg]. The reference catalog is flat at
    /// 15 kN/kg over 0.5–15 kN.
    pub force_density_law: ScalingLaw,
    pub efficiency: f64,
}

impl Default for BallScrewModel {
    fn default() -> Self {
        BallScrewModel {
            force_density_law: ScalingLaw::new(
                15000.0,
                0.0,
                QuantityKind::ForceN,
                QuantityKind::ForceDensityNPerKg,
            )
            .unwrap()
            .with_range(500.0, 15000.0),
            efficiency: 0.9,
        }
    }
}

impl BallScrewModel {
    pub fn validate(&self) -> Result<()> {
        if !(self.efficiency > 0.0 && self.efficiency <= 1.0) {
            return Err(Error::domain("ball screw efficiency must lie in (0, 1]"));
        }
        Ok(())
    }

    pub fn mass(&self, force_n: f64) -> Result<Traced> {
        component_mass_from_inverse_density(&Quantity::force_n(force_n), &self.force_density_law)
    }
}

/// Gas accumulator treated as an ideal (lossless) spring.
#[derive(Debug, Clone, PartialEq)]
pub struct AccumulatorModel {
    /// Displaced volume [L] → mass [kg].
    pub mass_law: ScalingLaw,
    /// Max/min gas pressure ratio of the bladder.
    pub max_compression_ratio: f64,
    pub max_pressure_pa: f64,
}

impl Default for AccumulatorModel {
    fn default() -> Self {
        AccumulatorModel {
            mass_law: ScalingLaw::new(0.95, 0.56, QuantityKind::VolumeL, QuantityKind::MassKg).unwrap(),
            max_compression_ratio: 6.0,
            max_pressure_pa: 24.0e6,
        }
    }
}

impl AccumulatorModel {
    pub fn validate(&self) -> Result<()> {
        if !(self.max_compression_ratio > 1.0) {
            return Err(Error::domain("accumulator compression ratio must exceed 1"));
        }
        if !(self.max_pressure_pa > 0.0) {
            return Err(Error::domain("accumulator max pressure must be positive"));
        }
        Ok(())
    }

    pub fn mass(&self, volume_l: f64) -> Result<Traced> {
        self.mass_law.eval_quantity(&Quantity::volume_l(volume_l))
    }
}

/// Miniature axial piston pump scaled from nominal power.
#[derive(Debug, Clone, PartialEq)]
pub struct PumpModel {
    /// Nominal power [W] → power density [W/kg].
    pub power_density_law: ScalingLaw,
    pub efficiency: f64,
    pub max_pressure_pa: f64,
}

impl Default for PumpModel {
    fn default() -> Self {
        PumpModel {
            power_density_law: ScalingLaw::new(
                133.0,
                0.30,
                QuantityKind::PowerW,
                QuantityKind::PowerDensityWPerKg,
            )
            .unwrap()
            .with_range(200.0, 6500.0),
            efficiency: 0.80,
            max_pressure_pa: 21.0e6,
        }
    }
}

impl PumpModel {
    pub fn validate(&self) -> Result<()> {
        if !(self.efficiency > 0.0 && self.efficiency <= 1.0) {
            return Err(Error::domain("pump efficiency must lie in (0, 1]"));
        }
        Ok(())
    }

    pub fn mass(&self, power_w: f64) -> Result<Traced> {
        component_mass_from_inverse_density(&Quantity::power_w(power_w), &self.power_density_law)
    }
}

/// Fixed-geometry hydraulic cylinder (master and slave are identical).
#[derive(Debug, Clone, PartialEq)]
pub struct CylinderModel {
    pub mass_kg: f64,
    pub stroke_m: f64,
    pub max_force_n: f64,
    /// Effective radius of action converting joint torque to piston force.
    /// The catalog unit delivers 100 N·m at its 5500 N maximum retracting
    /// force, i.e. r = 100/5500 ≈ 18 mm.
    pub effective_radius_m: f64,
    pub rated_pressure_pa: f64,
}

impl Default for CylinderModel {
    fn default() -> Self {
        CylinderModel {
            mass_kg: 0.56,
            stroke_m: 0.05,
            max_force_n: 5500.0,
            effective_radius_m: 100.0 / 5500.0,
            rated_pressure_pa: 21.0e6,
        }
    }
}

impl CylinderModel {
    pub fn validate(&self) -> Result<()> {
        if !(self.mass_kg > 0.0
            && self.stroke_m > 0.0
            && self.max_force_n > 0.0
            && self.effective_radius_m > 0.0
            && self.rated_pressure_pa > 0.0)
        {
            return Err(Error::domain("cylinder parameters must all be positive"));
        }
        Ok(())
    }

    /// Piston force [N] needed to produce `torque_nm` at the joint.
    pub fn force_for_torque(&self, torque_nm: f64) -> f64 {
        torque_nm / self.effective_radius_m
    }

    /// Piston area [m²] implied by the rated force and pressure.
    pub fn piston_area_m2(&self) -> f64 {
        self.max_force_n / self.rated_pressure_pa
    }

    /// Fluid volume [L] swept over the full stroke.
    pub fn swept_volume_l(&self) -> f64 {
        self.piston_area_m2() * self.stroke_m * 1000.0
    }

    /// Line pressure [Pa] at a given piston force.
    pub fn pressure_for_force(&self, force_n: f64) -> f64 {
        force_n / self.piston_area_m2()
    }
}

/// Motorized ball valve: body plus motor/gearbox actuation package.
#[derive(Debug, Clone, PartialEq)]
pub struct ValveModel {
    pub body_mass_kg: f64,
    pub actuation_mass_kg: f64,
    pub inner_diameter_m: f64,
    pub rated_pressure_pa: f64,
    pub breakaway_torque_nm: f64,
    pub opening_time_s: f64,
}

impl Default for ValveModel {
    fn default() -> Self {
        ValveModel {
            body_mass_kg: 0.047,
            actuation_mass_kg: 0.138,
            inner_diameter_m: 6.3e-3,
            rated_pressure_pa: 21.0e6,
            breakaway_torque_nm: 1.0,
            opening_time_s: 0.050,
        }
    }
}

impl ValveModel {
    pub fn validate(&self) -> Result<()> {
        if !(self.body_mass_kg > 0.0 && self.actuation_mass_kg > 0.0) {
            return Err(Error::domain("valve masses must be positive"));
        }
        if !(self.opening_time_s > 0.0 && self.breakaway_torque_nm > 0.0) {
            return Err(Error::domain("valve actuation parameters must be positive"));
        }
        Ok(())
    }

    pub fn total_mass_kg(&self) -> f64 {
        self.body_mass_kg + self.actuation_mass_kg
    }
}

/// Inputs for sizing a motorized ball valve's actuation stage.
#[derive(Debug, Clone, PartialEq)]
pub struct ValveSizingSpec {
    pub pressure_pa: f64,
    pub inner_diameter_m: f64,
    /// Rotation needed to open, radians. Quarter-turn ball valves use π/2.
    pub opening_angle_rad: f64,
    pub opening_time_s: f64,
    pub breakaway_torque_nm: f64,
}

impl Default for ValveSizingSpec {
    fn default() -> Self {
        ValveSizingSpec {
            pressure_pa: 21.0e6,
            inner_diameter_m: 6.3e-3,
            opening_angle_rad: std::f64::consts::FRAC_PI_2,
            opening_time_s: 0.050,
            breakaway_torque_nm: 1.0,
        }
    }
}

/// A valve selection with its computed actuation power requirement.
#[derive(Debug, Clone, PartialEq)]
pub struct SizedValve {
    pub valve: ValveModel,
    /// Breakaway torque times mean opening rate [W].
    pub required_power_w: f64,
}

/// Size a motorized ball valve against a sizing spec.
///
/// The actuation power requirement is `breakaway torque · angle / time`;
/// masses come from the catalog estimate for the reference valve.
pub fn size_valve(spec: &ValveSizingSpec) -> Result<SizedValve> {
    if !(spec.pressure_pa > 0.0
        && spec.inner_diameter_m > 0.0
        && spec.opening_angle_rad > 0.0
        && spec.opening_time_s > 0.0
        && spec.breakaway_torque_nm > 0.0)
    {
        return Err(Error::domain("valve sizing inputs must all be positive"));
    }
    let required_power_w = spec.breakaway_torque_nm * spec.opening_angle_rad / spec.opening_time_s;
    let valve = ValveModel {
        inner_diameter_m: spec.inner_diameter_m,
        rated_pressure_pa: spec.pressure_pa,
        breakaway_torque_nm: spec.breakaway_torque_nm,
        opening_time_s: spec.opening_time_s,
        ..ValveModel::default()
    };
    Ok(SizedValve {
        valve,
        required_power_w,
    })
}

/// On-board battery characterized by specific energy.
#[derive(Debug, Clone, PartialEq)]
pub struct BatteryModel {
    pub specific_energy_wh_per_kg: f64,
}

impl Default for BatteryModel {
    fn default() -> Self {
        BatteryModel {
            specific_energy_wh_per_kg: 150.0,
        }
    }
}

impl BatteryModel {
    pub fn validate(&self) -> Result<()> {
        if !(self.specific_energy_wh_per_kg > 0.0) {
            return Err(Error::domain("battery specific energy must be positive"));
        }
        Ok(())
    }
}

/// Battery mass [kg] for a given energy draw [Wh].
pub fn battery_mass(energy_wh: f64, model: &BatteryModel) -> Result<f64> {
    if energy_wh < 0.0 {
        return Err(Error::domain(format!(
            "battery energy must be non-negative, got {energy_wh} Wh"
        )));
    }
    Ok(energy_wh / model.specific_energy_wh_per_kg)
}

/// The full set of component models used by a study.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ComponentRegistry {
    pub motor: MotorModel,
    pub ball_screw: BallScrewModel,
    pub accumulator: AccumulatorModel,
    pub pump: PumpModel,
    pub cylinder: CylinderModel,
    pub valve: ValveModel,
    pub battery: BatteryModel,
}

impl ComponentRegistry {
    pub fn validate(&self) -> Result<()> {
        self.motor.validate()?;
        self.ball_screw.validate()?;
        self.accumulator.validate()?;
        self.pump.validate()?;
        self.cylinder.validate()?;
        self.valve.validate()?;
        self.battery.validate()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_registry_is_valid() {
        ComponentRegistry::default().validate().unwrap();
    }

    #[test]
    fn size_valve_reproduces_power_quote() {
        // 1 N·m through 90° in 50 ms; quoted as "30 W" after rounding.
        let sized = size_valve(&ValveSizingSpec::default()).unwrap();
        assert!((sized.required_power_w - 31.41592653589793).abs() < 1e-12);
        assert!((sized.valve.total_mass_kg() - 0.185).abs() < 1e-12);
    }

    #[test]
    fn size_valve_rejects_degenerate_torque() {
        let spec = ValveSizingSpec {
            breakaway_torque_nm: 0.0,
            ..ValveSizingSpec::default()
        };
        assert!(size_valve(&spec).is_err());
    }

    #[test]
    fn battery_mass_arithmetic() {
        let b = BatteryModel::default();
        assert_eq!(battery_mass(300.0, &b).unwrap(), 2.0);
        assert_eq!(battery_mass(0.0, &b).unwrap(), 0.0);
        // 112.5 W of extra loss over 2 h.
        assert!((battery_mass(225.0, &b).unwrap() - 1.5).abs() < 1e-12);
        assert!(battery_mass(-1.0, &b).is_err());
    }

    #[test]
    fn cylinder_force_torque_identity() {
        let c = CylinderModel::default();
        assert!((c.force_for_torque(100.0) - 5500.0).abs() < 1e-9);
        assert!((c.pressure_for_force(5500.0) - c.rated_pressure_pa).abs() < 1e-3);
        // ~13 mL swept per stroke at 21 MPa.
        assert!((c.swept_volume_l() - 0.0130952380952).abs() < 1e-9);
    }

    #[test]
    fn motor_rated_loss_anchors_efficiency() {
        let m = MotorModel::default();
        let tau = 32.0;
        let w = m.nominal_speed(tau).unwrap();
        let loss = m.rated_loss(tau).unwrap();
        let eff = tau * w / (tau * w + loss);
        assert!((eff - 0.85).abs() < 1e-12);
    }

    #[test]
    fn ball_screw_outside_catalog_range_is_flagged() {
        let bs = BallScrewModel::default();
        assert!(!bs.mass(5500.0).unwrap().extrapolated);
        assert!(bs.mass(20000.0).unwrap().extrapolated);
        assert!(bs.mass(100.0).unwrap().extrapolated);
    }
}
