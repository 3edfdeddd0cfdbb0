//! Power-law scaling models for commercial components.
//!
//! Component properties (mass, nominal speed, rotor inertia, power density)
//! follow `y = k·xᵃ` trends fitted to catalog data. This module provides the
//! law type, evaluation with unit checking and extrapolation tracking, the
//! inverse-density mass pattern, and a log-log least-squares fitting routine
//! for deriving new laws from catalog points.

use crate::error::{Error, Result};
use crate::units::{Quantity, QuantityKind};

/// A power law `y = k·xᵃ` with quantity metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalingLaw {
    /// Coefficient `k`: the output value at `x = 1`. Strictly positive.
    pub coefficient: f64,
    /// Exponent `a`, dimensionless.
    pub exponent: f64,
    /// Kind of the input quantity `x`.
    pub input: QuantityKind,
    /// Kind of the output quantity `y`.
    pub output: QuantityKind,
    /// Input range covered by the underlying catalog data, when known.
    /// Evaluations outside it are flagged as extrapolated, not rejected.
    pub fitted_range: Option<(f64, f64)>,
}

/// Result of a range-aware law evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Traced {
    pub value: f64,
    /// True when the input fell outside the law's fitted data range.
    pub extrapolated: bool,
}

impl ScalingLaw {
    pub fn new(coefficient: f64, exponent: f64, input: QuantityKind, output: QuantityKind) -> Result<Self> {
        if !(coefficient > 0.0) || !coefficient.is_finite() {
            return Err(Error::domain(format!(
                "scaling-law coefficient must be positive and finite, got {coefficient}"
            )));
        }
        if !exponent.is_finite() {
            return Err(Error::domain("scaling-law exponent must be finite"));
        }
        Ok(ScalingLaw {
            coefficient,
            exponent,
            input,
            output,
            fitted_range: None,
        })
    }

    pub fn with_range(mut self, lo: f64, hi: f64) -> Self {
        self.fitted_range = Some((lo, hi));
        self
    }

    /// Evaluate `k·xᵃ` exactly, with no clamping. `x` must be positive.
    pub fn eval(&self, x: f64) -> Result<f64> {
        if !(x > 0.0) {
            return Err(Error::domain(format!(
                "scaling law defined for x > 0 only, got {x} ({})",
                self.input
            )));
        }
        Ok(self.coefficient * x.powf(self.exponent))
    }

    /// Evaluate with the input's quantity kind checked against the law's.
    pub fn eval_quantity(&self, q: &Quantity) -> Result<Traced> {
        if q.kind != self.input {
            return Err(Error::UnitMismatch {
                expected: self.input.clone(),
                got: q.kind.clone(),
            });
        }
        let value = self.eval(q.value)?;
        Ok(Traced {
            value,
            extrapolated: self.is_extrapolated(q.value),
        })
    }

    /// True when `x` lies outside the fitted data range (if one is known).
    pub fn is_extrapolated(&self, x: f64) -> bool {
        match self.fitted_range {
            Some((lo, hi)) => x < lo || x > hi,
            None => false,
        }
    }
}

/// Free-function form of [`ScalingLaw::eval`].
pub fn eval_law(law: &ScalingLaw, x: f64) -> Result<f64> {
    law.eval(x)
}

/// Mass of a component sized by a density law: `requirement / density(requirement)`.
///
/// Used for ball screws (force / force-density) and pumps (power / power-density).
pub fn component_mass_from_inverse_density(requirement: &Quantity, density_law: &ScalingLaw) -> Result<Traced> {
    if !(requirement.value > 0.0) {
        return Err(Error::domain(format!(
            "component requirement must be positive, got {requirement}"
        )));
    }
    let density = density_law.eval_quantity(requirement)?;
    Ok(Traced {
        value: requirement.value / density.value,
        extrapolated: density.extrapolated,
    })
}

/// One catalog data point used for fitting.
#[derive(Debug, Clone, PartialEq)]
pub struct CatalogPoint {
    pub x: f64,
    pub y: f64,
    /// Part identifier, free text.
    pub label: String,
}

impl CatalogPoint {
    pub fn new(x: f64, y: f64, label: impl Into<String>) -> Result<Self> {
        if !(x > 0.0 && y > 0.0) {
            return Err(Error::domain(format!(
                "catalog points must have positive x and y, got ({x}, {y})"
            )));
        }
        Ok(CatalogPoint {
            x,
            y,
            label: label.into(),
        })
    }
}

/// Per-point fit diagnostic.
#[derive(Debug, Clone)]
pub struct FitResidual {
    pub point: CatalogPoint,
    /// Law prediction at the point's x.
    pub predicted: f64,
    /// Residual in log space, `ln y − ln ŷ`.
    pub log_residual: f64,
}

/// A fitted law plus its quality diagnostics.
#[derive(Debug, Clone)]
pub struct LawFit {
    pub law: ScalingLaw,
    /// Coefficient of determination in (ln x, ln y) space.
    pub r_squared: f64,
    pub residuals: Vec<FitResidual>,
}

/// Least-squares fit of `y = k·xᵃ` in (ln x, ln y) space.
///
/// Needs at least two points with distinct x values; the fitted law records
/// the data range so later evaluations can flag extrapolation.
pub fn fit_scaling_law(points: &[CatalogPoint], input: QuantityKind, output: QuantityKind) -> Result<LawFit> {
    if points.len() < 2 {
        return Err(Error::Fit(format!(
            "need at least 2 catalog points, got {}",
            points.len()
        )));
    }
    for p in points {
        if !(p.x > 0.0 && p.y > 0.0) {
            return Err(Error::Fit(format!(
                "catalog point '{}' has non-positive coordinates ({}, {})",
                p.label, p.x, p.y
            )));
        }
    }

    let n = points.len() as f64;
    let lx: Vec<f64> = points.iter().map(|p| p.x.ln()).collect();
    let ly: Vec<f64> = points.iter().map(|p| p.y.ln()).collect();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;

    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    if sxx == 0.0 {
        return Err(Error::Fit(
            "all catalog points share the same x; exponent is undetermined".into(),
        ));
    }
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();

    let exponent = sxy / sxx;
    let coefficient = (my - exponent * mx).exp();

    let syy: f64 = ly.iter().map(|y| (y - my) * (y - my)).sum();
    let ss_res: f64 = lx
        .iter()
        .zip(&ly)
        .map(|(x, y)| {
            let fit = (my - exponent * mx) + exponent * x;
            (y - fit) * (y - fit)
        })
        .sum();
    // All y equal and perfectly fit is R² = 1 by convention.
    let r_squared = if syy == 0.0 { 1.0 } else { 1.0 - ss_res / syy };

    let lo = points.iter().map(|p| p.x).fold(f64::INFINITY, f64::min);
    let hi = points.iter().map(|p| p.x).fold(f64::NEG_INFINITY, f64::max);
    let law = ScalingLaw::new(coefficient, exponent, input, output)?.with_range(lo, hi);

    let residuals = points
        .iter()
        .map(|p| {
            let predicted = coefficient * p.x.powf(exponent);
            FitResidual {
                point: p.clone(),
                predicted,
                log_residual: p.y.ln() - predicted.ln(),
            }
        })
        .collect();

    Ok(LawFit {
        law,
        r_squared,
        residuals,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn motor_mass_law() -> ScalingLaw {
        ScalingLaw::new(0.30, 0.71, QuantityKind::TorqueNm, QuantityKind::MassKg).unwrap()
    }

    #[test]
    fn eval_matches_worked_example() {
        // 0.30·32^0.71 — quoted as 3.5 kg after rounding.
        let m = motor_mass_law().eval(32.0).unwrap();
        assert!((m - 3.5138056702695004).abs() < 1e-12);
        assert!((m - 3.5).abs() < 0.02);
    }

    #[test]
    fn eval_identity_at_one() {
        assert_eq!(motor_mass_law().eval(1.0).unwrap(), 0.30);
    }

    #[test]
    fn eval_accumulator_point() {
        let law = ScalingLaw::new(0.95, 0.56, QuantityKind::VolumeL, QuantityKind::MassKg).unwrap();
        let m = law.eval(0.1).unwrap();
        assert!((m - 0.2616517268171258).abs() < 1e-12);
    }

    #[test]
    fn eval_rejects_non_positive_input() {
        assert!(matches!(motor_mass_law().eval(0.0), Err(Error::Domain(_))));
        assert!(matches!(motor_mass_law().eval(-3.0), Err(Error::Domain(_))));
    }

    #[test]
    fn unit_mismatch_is_an_error() {
        let law = motor_mass_law();
        let err = law.eval_quantity(&Quantity::volume_l(0.1)).unwrap_err();
        assert!(matches!(err, Error::UnitMismatch { .. }));
    }

    #[test]
    fn extrapolation_is_flagged_not_rejected() {
        let law = ScalingLaw::new(15000.0, 0.0, QuantityKind::ForceN, QuantityKind::ForceDensityNPerKg)
            .unwrap()
            .with_range(500.0, 15000.0);
        let inside = law.eval_quantity(&Quantity::force_n(5500.0)).unwrap();
        assert!(!inside.extrapolated);
        let outside = law.eval_quantity(&Quantity::force_n(20000.0)).unwrap();
        assert!(outside.extrapolated);
        assert_eq!(outside.value, 15000.0);
    }

    #[test]
    fn inverse_density_ball_screw() {
        let law = ScalingLaw::new(15000.0, 0.0, QuantityKind::ForceN, QuantityKind::ForceDensityNPerKg).unwrap();
        let m = component_mass_from_inverse_density(&Quantity::force_n(5500.0), &law).unwrap();
        assert!((m.value - 5500.0 / 15000.0).abs() < 1e-15);
        // Flat density: 15 kN of thrust always weighs 1 kg.
        let m2 = component_mass_from_inverse_density(&Quantity::force_n(15000.0), &law).unwrap();
        assert!((m2.value - 1.0).abs() < 1e-15);
    }

    #[test]
    fn inverse_density_pump() {
        let law = ScalingLaw::new(133.0, 0.30, QuantityKind::PowerW, QuantityKind::PowerDensityWPerKg).unwrap();
        let m = component_mass_from_inverse_density(&Quantity::power_w(230.0), &law).unwrap();
        assert!((m.value - 0.3383435052068454).abs() < 1e-12);
    }

    #[test]
    fn inverse_density_rejects_non_positive_requirement() {
        let law = ScalingLaw::new(15000.0, 0.0, QuantityKind::ForceN, QuantityKind::ForceDensityNPerKg).unwrap();
        assert!(component_mass_from_inverse_density(&Quantity::force_n(0.0), &law).is_err());
    }

    #[test]
    fn fit_recovers_exact_law() {
        let pts: Vec<CatalogPoint> = [0.05_f64, 0.2, 0.5, 1.3, 4.0]
            .iter()
            .map(|&x| CatalogPoint::new(x, 0.95 * x.powf(0.56), "synthetic").unwrap())
            .collect();
        let fit = fit_scaling_law(&pts, QuantityKind::VolumeL, QuantityKind::MassKg).unwrap();
        assert!((fit.law.coefficient - 0.95).abs() < 1e-9);
        assert!((fit.law.exponent - 0.56).abs() < 1e-9);
        assert!((fit.r_squared - 1.0).abs() < 1e-9);
        assert_eq!(fit.law.fitted_range, Some((0.05, 4.0)));
    }

    #[test]
    fn fit_two_points_flat_law() {
        let pts = vec![
            CatalogPoint::new(1.0, 2.0, "a").unwrap(),
            CatalogPoint::new(4.0, 2.0, "b").unwrap(),
        ];
        let fit = fit_scaling_law(&pts, QuantityKind::ForceN, QuantityKind::MassKg).unwrap();
        assert!((fit.law.coefficient - 2.0).abs() < 1e-12);
        assert!(fit.law.exponent.abs() < 1e-12);
    }

    #[test]
    fn fit_accumulator_catalog_band() {
        // One real catalog point plus two points taken from the published
        // law; the catalog point pulls k and a slightly off the table values.
        let law = ScalingLaw::new(0.95, 0.56, QuantityKind::VolumeL, QuantityKind::MassKg).unwrap();
        let pts = vec![
            CatalogPoint::new(0.1, law.eval(0.1).unwrap(), "small tank").unwrap(),
            CatalogPoint::new(0.5, 0.45, "diaphragm 0.5 L").unwrap(),
            CatalogPoint::new(2.0, law.eval(2.0).unwrap(), "large tank").unwrap(),
        ];
        let fit = fit_scaling_law(&pts, QuantityKind::VolumeL, QuantityKind::MassKg).unwrap();
        assert!((fit.law.exponent - 0.56).abs() < 0.06, "a = {}", fit.law.exponent);
        assert!(
            fit.law.coefficient > 0.75 && fit.law.coefficient < 1.1,
            "k = {}",
            fit.law.coefficient
        );
        assert_eq!(fit.residuals.len(), 3);
    }

    #[test]
    fn fit_rejects_degenerate_inputs() {
        let one = vec![CatalogPoint::new(1.0, 1.0, "").unwrap()];
        assert!(matches!(
            fit_scaling_law(&one, QuantityKind::ForceN, QuantityKind::MassKg),
            Err(Error::Fit(_))
        ));
        let same_x = vec![
            CatalogPoint::new(2.0, 1.0, "").unwrap(),
            CatalogPoint::new(2.0, 3.0, "").unwrap(),
        ];
        assert!(matches!(
            fit_scaling_law(&same_x, QuantityKind::ForceN, QuantityKind::MassKg),
            Err(Error::Fit(_))
        ));
    }
}
