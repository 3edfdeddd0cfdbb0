//! Physical quantity labels used to keep scaling-law inputs honest.
//!
//! Every scaling law declares the kind of quantity it maps from and to.
//! Evaluations through the checked paths compare kinds and refuse to
//! proceed on a mismatch instead of silently producing garbage.

use std::fmt;

/// Semantic label for a scalar quantity, with its display unit.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum QuantityKind {
    /// Torque in newton-metres.
    TorqueNm,
    /// Angular speed in radians per second.
    SpeedRadS,
    /// Force in newtons.
    ForceN,
    /// Volume in litres.
    VolumeL,
    /// Power in watts.
    PowerW,
    /// Energy in watt-hours.
    EnergyWh,
    /// Mass in kilograms.
    MassKg,
    /// Rotational inertia in kg·m².
    InertiaKgM2,
    /// Force density in newtons per kilogram.
    ForceDensityNPerKg,
    /// Power density in watts per kilogram.
    PowerDensityWPerKg,
    /// User-supplied label for fitted catalog data.
    Custom(String),
}

impl QuantityKind {
    /// Display unit suffix for reports.
    pub fn unit(&self) -> &str {
        match self {
            QuantityKind::TorqueNm => "N·m",
            QuantityKind::SpeedRadS => "rad/s",
            QuantityKind::ForceN => "N",
            QuantityKind::VolumeL => "L",
            QuantityKind::PowerW => "W",
            QuantityKind::EnergyWh => "Wh",
            QuantityKind::MassKg => "kg",
            QuantityKind::InertiaKgM2 => "kg·m²",
            QuantityKind::ForceDensityNPerKg => "N/kg",
            QuantityKind::PowerDensityWPerKg => "W/kg",
            QuantityKind::Custom(_) => "",
        }
    }
}

impl fmt::Display for QuantityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuantityKind::TorqueNm => write!(f, "torque [N·m]"),
            QuantityKind::SpeedRadS => write!(f, "speed [rad/s]"),
            QuantityKind::ForceN => write!(f, "force [N]"),
            QuantityKind::VolumeL => write!(f, "volume [L]"),
            QuantityKind::PowerW => write!(f, "power [W]"),
            QuantityKind::EnergyWh => write!(f, "energy [Wh]"),
            QuantityKind::MassKg => write!(f, "mass [kg]"),
            QuantityKind::InertiaKgM2 => write!(f, "inertia [kg·m²]"),
            QuantityKind::ForceDensityNPerKg => write!(f, "force density [N/kg]"),
            QuantityKind::PowerDensityWPerKg => write!(f, "power density [W/kg]"),
            QuantityKind::Custom(label) => write!(f, "{label}"),
        }
    }
}

/// A value tagged with its quantity kind.
#[derive(Debug, Clone, PartialEq)]
pub struct Quantity {
    pub kind: QuantityKind,
    pub value: f64,
}

impl Quantity {
    pub fn new(kind: QuantityKind, value: f64) -> Self {
        Quantity { kind, value }
    }

    pub fn torque_nm(value: f64) -> Self {
        Quantity::new(QuantityKind::TorqueNm, value)
    }

    pub fn force_n(value: f64) -> Self {
        Quantity::new(QuantityKind::ForceN, value)
    }

    pub fn volume_l(value: f64) -> Self {
        Quantity::new(QuantityKind::VolumeL, value)
    }

    pub fn power_w(value: f64) -> Self {
        Quantity::new(QuantityKind::PowerW, value)
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let unit = self.kind.unit();
        if unit.is_empty() {
            write!(f, "{}", self.value)
        } else {
            write!(f, "{} {}", self.value, unit)
        }
    }
}
