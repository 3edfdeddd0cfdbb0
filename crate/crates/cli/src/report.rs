//! Report renderers: sizing reports in text/CSV/JSON, sweep CSV files,
//! sensitivity tables and fit summaries.

use hydromodal_core::{
    CrossoverOutcome, LawFit, MassBasis, SensitivityRow, StudyParameters, SweepResult, TopologyResult,
};

/// Columns of every sweep CSV, in order. Golden-tested; do not reorder.
pub const SWEEP_CSV_HEADER: &str = "parameter,baseline,multimodal,feasible_baseline,feasible_multimodal";

fn fmt_mass(kg: f64) -> String {
    format!("{kg:.3} kg")
}

fn basis_trace(item: &hydromodal_core::BomItem) -> String {
    match (&item.basis, &item.requirement) {
        (MassBasis::PowerLaw { k, a }, Some(q)) => {
            format!("{k}·({:.3} {})^{a}", q.value, q.kind.unit())
        }
        (MassBasis::InverseDensity { k, a }, Some(q)) => {
            format!("({:.3} {}) / ({k}·x^{a})", q.value, q.kind.unit())
        }
        _ => "catalog".to_string(),
    }
}

/// Human-readable sizing report with per-item formula traces.
pub fn size_text(result: &TopologyResult, params: &StudyParameters) -> String {
    let mut s = String::new();
    s.push_str(&format!(
        "topology: {} (lambda = {}, n_dof = {})\n",
        result.topology, params.lambda, params.n_dof
    ));
    if !result.feasible.ok {
        s.push_str(&format!(
            "INFEASIBLE: {}\n",
            result.feasible.reason.as_deref().unwrap_or("unspecified")
        ));
    }
    s.push_str("\nbill of materials:\n");
    for item in &result.bom.items {
        let req = match &item.requirement {
            Some(q) => format!("{:.3} {}", q.value, q.kind.unit()),
            None => "-".to_string(),
        };
        let flag = if item.extrapolated { "  (extrapolated)" } else { "" };
        s.push_str(&format!(
            "  {:<34} {:>16}  {:>10}   [{}]{}\n",
            item.label,
            req,
            fmt_mass(item.mass_kg),
            basis_trace(item),
            flag
        ));
    }
    s.push_str(&format!(
        "  {:<34} {:>16}  {:>10}\n",
        "total", "", fmt_mass(result.total_mass_kg)
    ));
    if result.mass_per_dof_kg != result.total_mass_kg {
        s.push_str(&format!("  per joint: {}\n", fmt_mass(result.mass_per_dof_kg)));
    }

    if !result.solutions.is_empty() {
        s.push_str("\ndrivetrains:\n");
        for (label, sol) in &result.solutions {
            s.push_str(&format!(
                "  {:<34} N = {:.3} ({}-binding), motor {:.3} N·m @ {:.2} rad/s nominal\n",
                label, sol.ratio, sol.binding, sol.motor_torque_nm, sol.motor_nominal_speed_rad_s
            ));
            s.push_str(&format!(
                "  {:<34}   inertia branch {:.3}, speed branch {:.3}, reflected {:.4} kg·m²\n",
                "", sol.inertia_branch_ratio, sol.speed_branch_ratio, sol.reflected_inertia_kg_m2
            ));
        }
    }

    if !result.per_task_losses.is_empty() {
        s.push_str("\noperating points:\n");
        for (label, duty, loss) in &result.per_task_losses {
            s.push_str(&format!(
                "  {:<10} duty {:.2}: mech {:.1} W, joule {:.1} W, transmission {:.1} W, pump {:.1} W, efficiency {:.3}\n",
                label.to_string(),
                duty,
                loss.mechanical_power_w,
                loss.joule_loss_w,
                loss.transmission_loss_w,
                loss.pump_loss_w,
                loss.efficiency
            ));
        }
        s.push_str(&format!("  mean cycle loss: {:.1} W\n", result.mean_cycle_loss_w));
    }
    if let Some(b) = result.battery_mass_kg {
        s.push_str(&format!(
            "  battery for {:.2} h autonomy: {}\n",
            params.cycle_duration_h.unwrap_or(0.0),
            fmt_mass(b)
        ));
    }
    if let Some(d) = result.accumulator_droop {
        s.push_str(&format!(
            "  accumulator pressure droop over one stroke: {:.1} % (isothermal)\n",
            d * 100.0
        ));
    }
    s
}

/// Machine-readable sizing report: one CSV row per BOM item.
pub fn size_csv(result: &TopologyResult) -> String {
    let mut s = String::from("kind,label,requirement,unit,mass_kg,extrapolated\n");
    for item in &result.bom.items {
        let (req, unit) = match &item.requirement {
            Some(q) => (format!("{:.6}", q.value), q.kind.unit().to_string()),
            None => (String::new(), String::new()),
        };
        s.push_str(&format!(
            "{},{},{},{},{:.6},{}\n",
            item.kind, item.label, req, unit, item.mass_kg, item.extrapolated
        ));
    }
    s.push_str(&format!("total,,,,{:.6},\n", result.total_mass_kg));
    s
}

fn json_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// JSON sizing report.
pub fn size_json(result: &TopologyResult, params: &StudyParameters) -> String {
    let mut items = Vec::new();
    for item in &result.bom.items {
        let req = match &item.requirement {
            Some(q) => format!(
                "\"requirement\":{},\"unit\":\"{}\"",
                q.value,
                json_escape(q.kind.unit())
            ),
            None => "\"requirement\":null,\"unit\":null".to_string(),
        };
        items.push(format!(
            "{{\"kind\":\"{}\",\"label\":\"{}\",{},\"mass_kg\":{},\"extrapolated\":{}}}",
            item.kind,
            json_escape(&item.label),
            req,
            item.mass_kg,
            item.extrapolated
        ));
    }
    let battery = match result.battery_mass_kg {
        Some(b) => b.to_string(),
        None => "null".to_string(),
    };
    let reason = match &result.feasible.reason {
        Some(r) => format!("\"{}\"", json_escape(r)),
        None => "null".to_string(),
    };
    format!(
        "{{\"topology\":\"{}\",\"lambda\":{},\"n_dof\":{},\"items\":[{}],\"total_mass_kg\":{},\"mass_per_dof_kg\":{},\"mean_cycle_loss_w\":{},\"battery_mass_kg\":{},\"feasible\":{},\"reason\":{}}}",
        result.topology,
        params.lambda,
        params.n_dof,
        items.join(","),
        result.total_mass_kg,
        result.mass_per_dof_kg,
        result.mean_cycle_loss_w,
        battery,
        result.feasible.ok,
        reason
    )
}

/// Sweep rows as CSV with the fixed schema, crossover appended as a comment.
pub fn sweep_csv(result: &SweepResult) -> String {
    let mut s = String::from(SWEEP_CSV_HEADER);
    s.push('\n');
    for row in &result.rows {
        s.push_str(&format!(
            "{:.6},{:.6},{:.6},{},{}\n",
            row.parameter, row.baseline, row.multimodal, row.baseline_feasible, row.multimodal_feasible
        ));
    }
    if let Some(c) = result.crossover {
        s.push_str(&format!("# crossover {} = {:.6}\n", result.spec.parameter.name(), c.value));
    }
    s
}

fn metric_unit(metric: hydromodal_core::SweepMetric) -> &'static str {
    match metric {
        hydromodal_core::SweepMetric::TotalMass => "kg/DOF",
        hydromodal_core::SweepMetric::MeanLoss => "W",
        hydromodal_core::SweepMetric::MassPlusBattery => "kg/DOF",
    }
}

/// Sweep summary for the terminal.
pub fn sweep_text(result: &SweepResult) -> String {
    let first = result.rows.first();
    let last = result.rows.last();
    let unit = metric_unit(result.spec.metric);
    let mut s = format!(
        "swept {} over [{}, {}] ({} points), topology {}, metric {} [{}]\n",
        result.spec.parameter.name(),
        result.spec.lo,
        result.spec.hi,
        result.spec.points,
        result.spec.topology,
        result.spec.metric.name(),
        unit
    );
    if let (Some(f), Some(l)) = (first, last) {
        s.push_str(&format!(
            "  baseline: {:.4} -> {:.4} {unit}; multimodal: {:.4} -> {:.4} {unit}\n",
            f.baseline, l.baseline, f.multimodal, l.multimodal
        ));
    }
    match result.crossover {
        Some(c) => s.push_str(&format!(
            "  crossover at {} = {:.4} (bracket [{:.4}, {:.4}])\n",
            result.spec.parameter.name(),
            c.value,
            c.bracket.0,
            c.bracket.1
        )),
        None => s.push_str("  no crossover inside the range\n"),
    }
    s
}

/// Sensitivity scan as a text table.
pub fn sensitivity_text(rows: &[SensitivityRow]) -> String {
    let mut s = String::from("motor torque-density sensitivity of the two-speed break-even:\n");
    s.push_str("  multiplier   crossover lambda\n");
    for row in rows {
        let c = match row.crossover {
            CrossoverOutcome::Within(v) => format!("{v:.4}"),
            CrossoverOutcome::NeverLighter => "none (multimodal never lighter)".to_string(),
            CrossoverOutcome::AlwaysLighter => "none (multimodal always lighter)".to_string(),
        };
        s.push_str(&format!("  {:<12} {}\n", row.multiplier, c));
    }
    s
}

/// Sensitivity scan as CSV.
pub fn sensitivity_csv(rows: &[SensitivityRow]) -> String {
    let mut s = String::from("multiplier,crossover,outcome\n");
    for row in rows {
        let (value, outcome) = match row.crossover {
            CrossoverOutcome::Within(v) => (format!("{v:.6}"), "within"),
            CrossoverOutcome::NeverLighter => (String::new(), "never_lighter"),
            CrossoverOutcome::AlwaysLighter => (String::new(), "always_lighter"),
        };
        s.push_str(&format!("{},{},{}\n", row.multiplier, value, outcome));
    }
    s
}

/// Fit report with residual table.
pub fn fit_text(fit: &LawFit) -> String {
    let mut s = format!(
        "fitted law: y = {:.6}·x^{:.6}   (R² = {:.6}, {} points)\n",
        fit.law.coefficient,
        fit.law.exponent,
        fit.r_squared,
        fit.residuals.len()
    );
    s.push_str(&format!("quantities: x = {}, y = {}\n", fit.law.input, fit.law.output));
    if let Some((lo, hi)) = fit.law.fitted_range {
        s.push_str(&format!("data range: x in [{lo}, {hi}]\n"));
    }
    s.push_str("residuals:\n");
    s.push_str("  x              y              predicted      log residual\n");
    for r in &fit.residuals {
        s.push_str(&format!(
            "  {:<14.6} {:<14.6} {:<14.6} {:+.3e}  {}\n",
            r.point.x, r.point.y, r.predicted, r.log_residual, r.point.label
        ));
    }
    s
}
