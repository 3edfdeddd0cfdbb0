//! Study configuration: a sectioned key/value text format plus a catalog
//! CSV loader.
//!
//! The format is intentionally flat and diffable. Unknown sections or keys
//! are rejected with their line number. `#` starts a comment.

use crate::analysis::{SweepMetric, SweepParameter, SweepSpec};
use crate::components::ComponentRegistry;
use crate::error::{Error, Result};
use crate::scaling::CatalogPoint;
use crate::topologies::{StudyParameters, Topology};

/// A parsed study: parameters, component models, optional sweep request and
/// output directory.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct StudyConfig {
    pub params: StudyParameters,
    pub registry: ComponentRegistry,
    pub sweep: Option<SweepSpec>,
    pub out_dir: Option<String>,
}

fn parse_f64(line: usize, key: &str, value: &str) -> Result<f64> {
    value
        .parse::<f64>()
        .map_err(|_| Error::config(line, format!("key '{key}' needs a number, got '{value}'")))
}

fn parse_bool(line: usize, key: &str, value: &str) -> Result<bool> {
    match value {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        _ => Err(Error::config(
            line,
            format!("key '{key}' needs true/false, got '{value}'"),
        )),
    }
}

fn parse_usize(line: usize, key: &str, value: &str) -> Result<usize> {
    value
        .parse::<usize>()
        .map_err(|_| Error::config(line, format!("key '{key}' needs an integer, got '{value}'")))
}

/// Sweep keys arrive one at a time; collect then assemble.
#[derive(Default)]
struct SweepDraft {
    parameter: Option<SweepParameter>,
    lo: Option<f64>,
    hi: Option<f64>,
    points: Option<usize>,
    topology: Option<Topology>,
    metric: Option<SweepMetric>,
    touched: bool,
    first_line: usize,
}

impl SweepDraft {
    fn build(self) -> Result<Option<SweepSpec>> {
        if !self.touched {
            return Ok(None);
        }
        let line = self.first_line;
        let missing = |what: &str| Error::config(line, format!("[sweep] section is missing '{what}'"));
        let spec = SweepSpec {
            parameter: self.parameter.ok_or_else(|| missing("parameter"))?,
            lo: self.lo.ok_or_else(|| missing("lo"))?,
            hi: self.hi.ok_or_else(|| missing("hi"))?,
            points: self.points.ok_or_else(|| missing("points"))?,
            topology: self.topology.ok_or_else(|| missing("topology"))?,
            metric: self.metric.ok_or_else(|| missing("metric"))?,
        };
        Ok(Some(spec))
    }
}

/// Parse a configuration document. Values not mentioned keep their defaults.
pub fn parse(text: &str) -> Result<StudyConfig> {
    let mut config = StudyConfig::default();
    let mut sweep = SweepDraft::default();
    let mut section = String::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        if let Some(name) = line.strip_prefix('[') {
            let name = name
                .strip_suffix(']')
                .ok_or_else(|| Error::config(line_no, format!("malformed section header '{line}'")))?
                .trim();
            section = name.to_string();
            if !matches!(
                section.as_str(),
                "study" | "motor" | "ball_screw" | "accumulator" | "pump" | "cylinder" | "valve"
                    | "battery" | "sweep" | "output"
            ) {
                return Err(Error::config(line_no, format!("unknown section '[{section}]'")));
            }
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| Error::config(line_no, format!("expected 'key = value', got '{line}'")))?;
        let key = key.trim();
        let value = value.trim();
        if section.is_empty() {
            return Err(Error::config(line_no, format!("key '{key}' appears before any section")));
        }
        if section == "sweep" && !sweep.touched {
            sweep.touched = true;
            sweep.first_line = line_no;
        }
        apply_key(&mut config, &mut sweep, &section, key, value, line_no)?;
    }

    config.sweep = sweep.build()?;
    config.params.validate()?;
    config.registry.validate()?;
    if let Some(spec) = &config.sweep {
        spec.validate()?;
    }
    Ok(config)
}

fn apply_key(
    config: &mut StudyConfig,
    sweep: &mut SweepDraft,
    section: &str,
    key: &str,
    value: &str,
    line: usize,
) -> Result<()> {
    let unknown = || Error::config(line, format!("unknown key '{key}' in section '[{section}]'"));
    let p = &mut config.params;
    let r = &mut config.registry;
    match section {
        "study" => match key {
            "lambda" => p.lambda = parse_f64(line, key, value)?,
            "n_dof" => p.n_dof = parse_usize(line, key, value)? as u32,
            "gamma" => p.holding_duty = parse_f64(line, key, value)?,
            "cycle_hours" => p.cycle_duration_h = Some(parse_f64(line, key, value)?),
            "base_torque_nm" => p.base_torque_nm = parse_f64(line, key, value)?,
            "base_speed_rad_s" => p.base_speed_rad_s = parse_f64(line, key, value)?,
            "inertia_bound" => p.inertia_bound_kg_m2 = parse_f64(line, key, value)?,
            "accumulator_volume_l" => p.accumulator_volume_l = parse_f64(line, key, value)?,
            "design_pressure_pa" => p.design_pressure_pa = parse_f64(line, key, value)?,
            "pump_power_w" => p.pump_power_override_w = Some(parse_f64(line, key, value)?),
            "paper_strict" => p.pump_drive_motor = !parse_bool(line, key, value)?,
            _ => return Err(unknown()),
        },
        "motor" => match key {
            "k_mass" => r.motor.mass_law.coefficient = parse_f64(line, key, value)?,
            "a_mass" => r.motor.mass_law.exponent = parse_f64(line, key, value)?,
            "k_speed" => r.motor.speed_law.coefficient = parse_f64(line, key, value)?,
            "a_speed" => r.motor.speed_law.exponent = parse_f64(line, key, value)?,
            "k_inertia" => r.motor.inertia_law.coefficient = parse_f64(line, key, value)?,
            "a_inertia" => r.motor.inertia_law.exponent = parse_f64(line, key, value)?,
            "peak_torque_factor" => r.motor.peak_torque_factor = parse_f64(line, key, value)?,
            "rated_efficiency" => r.motor.rated_efficiency = parse_f64(line, key, value)?,
            _ => return Err(unknown()),
        },
        "ball_screw" => match key {
            "k_density" => r.ball_screw.force_density_law.coefficient = parse_f64(line, key, value)?,
            "a_density" => r.ball_screw.force_density_law.exponent = parse_f64(line, key, value)?,
            "efficiency" => r.ball_screw.efficiency = parse_f64(line, key, value)?,
            _ => return Err(unknown()),
        },
        "accumulator" => match key {
            "k_mass" => r.accumulator.mass_law.coefficient = parse_f64(line, key, value)?,
            "a_mass" => r.accumulator.mass_law.exponent = parse_f64(line, key, value)?,
            "max_compression_ratio" => r.accumulator.max_compression_ratio = parse_f64(line, key, value)?,
            "max_pressure_pa" => r.accumulator.max_pressure_pa = parse_f64(line, key, value)?,
            _ => return Err(unknown()),
        },
        "pump" => match key {
            "k_power_density" => r.pump.power_density_law.coefficient = parse_f64(line, key, value)?,
            "a_power_density" => r.pump.power_density_law.exponent = parse_f64(line, key, value)?,
            "efficiency" => r.pump.efficiency = parse_f64(line, key, value)?,
            "max_pressure_pa" => r.pump.max_pressure_pa = parse_f64(line, key, value)?,
            _ => return Err(unknown()),
        },
        "cylinder" => match key {
            "mass_kg" => r.cylinder.mass_kg = parse_f64(line, key, value)?,
            "stroke_m" => r.cylinder.stroke_m = parse_f64(line, key, value)?,
            "max_force_n" => r.cylinder.max_force_n = parse_f64(line, key, value)?,
            "effective_radius_m" => r.cylinder.effective_radius_m = parse_f64(line, key, value)?,
            "rated_pressure_pa" => r.cylinder.rated_pressure_pa = parse_f64(line, key, value)?,
            _ => return Err(unknown()),
        },
        "valve" => match key {
            "body_mass_kg" => r.valve.body_mass_kg = parse_f64(line, key, value)?,
            "actuation_mass_kg" => r.valve.actuation_mass_kg = parse_f64(line, key, value)?,
            "inner_diameter_m" => r.valve.inner_diameter_m = parse_f64(line, key, value)?,
            "rated_pressure_pa" => r.valve.rated_pressure_pa = parse_f64(line, key, value)?,
            "breakaway_torque_nm" => r.valve.breakaway_torque_nm = parse_f64(line, key, value)?,
            "opening_time_s" => r.valve.opening_time_s = parse_f64(line, key, value)?,
            _ => return Err(unknown()),
        },
        "battery" => match key {
            "specific_energy" => r.battery.specific_energy_wh_per_kg = parse_f64(line, key, value)?,
            _ => return Err(unknown()),
        },
        "sweep" => match key {
            "parameter" => sweep.parameter = Some(SweepParameter::parse(value).map_err(at(line))?),
            "lo" => sweep.lo = Some(parse_f64(line, key, value)?),
            "hi" => sweep.hi = Some(parse_f64(line, key, value)?),
            "points" => sweep.points = Some(parse_usize(line, key, value)?),
            "topology" => sweep.topology = Some(Topology::parse(value).map_err(at(line))?),
            "metric" => sweep.metric = Some(SweepMetric::parse(value).map_err(at(line))?),
            _ => return Err(unknown()),
        },
        "output" => match key {
            "dir" => config.out_dir = Some(value.to_string()),
            _ => return Err(unknown()),
        },
        _ => return Err(unknown()),
    }
    Ok(())
}

fn at(line: usize) -> impl Fn(Error) -> Error {
    move |e| match e {
        Error::Domain(msg) => Error::config(line, msg),
        other => other,
    }
}

/// Apply a single `section.key=value` override, as used by `--set`.
pub fn apply_set(config: &mut StudyConfig, path: &str, value: &str) -> Result<()> {
    let (section, key) = path.split_once('.').ok_or_else(|| {
        Error::config(0, format!("override path '{path}' must look like section.key"))
    })?;
    if section == "sweep" {
        return Err(Error::config(
            0,
            "sweep keys cannot be overridden with --set; use the sweep command flags".to_string(),
        ));
    }
    let mut sweep = SweepDraft::default();
    apply_key(config, &mut sweep, section, key, value, 0)
}

/// Emit the canonical text form. `parse(dump(c))` reproduces `c` exactly.
pub fn dump(config: &StudyConfig) -> String {
    let p = &config.params;
    let r = &config.registry;
    let mut s = String::new();
    s.push_str("[study]\n");
    s.push_str(&format!("lambda = {}\n", p.lambda));
    s.push_str(&format!("n_dof = {}\n", p.n_dof));
    s.push_str(&format!("gamma = {}\n", p.holding_duty));
    if let Some(h) = p.cycle_duration_h {
        s.push_str(&format!("cycle_hours = {h}\n"));
    }
    s.push_str(&format!("base_torque_nm = {}\n", p.base_torque_nm));
    s.push_str(&format!("base_speed_rad_s = {}\n", p.base_speed_rad_s));
    s.push_str(&format!("inertia_bound = {}\n", p.inertia_bound_kg_m2));
    s.push_str(&format!("accumulator_volume_l = {}\n", p.accumulator_volume_l));
    s.push_str(&format!("design_pressure_pa = {}\n", p.design_pressure_pa));
    if let Some(w) = p.pump_power_override_w {
        s.push_str(&format!("pump_power_w = {w}\n"));
    }
    s.push_str(&format!("paper_strict = {}\n", !p.pump_drive_motor));

    s.push_str("\n[motor]\n");
    s.push_str(&format!("k_mass = {}\n", r.motor.mass_law.coefficient));
    s.push_str(&format!("a_mass = {}\n", r.motor.mass_law.exponent));
    s.push_str(&format!("k_speed = {}\n", r.motor.speed_law.coefficient));
    s.push_str(&format!("a_speed = {}\n", r.motor.speed_law.exponent));
    s.push_str(&format!("k_inertia = {}\n", r.motor.inertia_law.coefficient));
    s.push_str(&format!("a_inertia = {}\n", r.motor.inertia_law.exponent));
    s.push_str(&format!("peak_torque_factor = {}\n", r.motor.peak_torque_factor));
    s.push_str(&format!("rated_efficiency = {}\n", r.motor.rated_efficiency));

    s.push_str("\n[ball_screw]\n");
    s.push_str(&format!("k_density = {}\n", r.ball_screw.force_density_law.coefficient));
    s.push_str(&format!("a_density = {}\n", r.ball_screw.force_density_law.exponent));
    s.push_str(&format!("efficiency = {}\n", r.ball_screw.efficiency));

    s.push_str("\n[accumulator]\n");
    s.push_str(&format!("k_mass = {}\n", r.accumulator.mass_law.coefficient));
    s.push_str(&format!("a_mass = {}\n", r.accumulator.mass_law.exponent));
    s.push_str(&format!("max_compression_ratio = {}\n", r.accumulator.max_compression_ratio));
    s.push_str(&format!("max_pressure_pa = {}\n", r.accumulator.max_pressure_pa));

    s.push_str("\n[pump]\n");
    s.push_str(&format!("k_power_density = {}\n", r.pump.power_density_law.coefficient));
    s.push_str(&format!("a_power_density = {}\n", r.pump.power_density_law.exponent));
    s.push_str(&format!("efficiency = {}\n", r.pump.efficiency));
    s.push_str(&format!("max_pressure_pa = {}\n", r.pump.max_pressure_pa));

    s.push_str("\n[cylinder]\n");
    s.push_str(&format!("mass_kg = {}\n", r.cylinder.mass_kg));
    s.push_str(&format!("stroke_m = {}\n", r.cylinder.stroke_m));
    s.push_str(&format!("max_force_n = {}\n", r.cylinder.max_force_n));
    s.push_str(&format!("effective_radius_m = {}\n", r.cylinder.effective_radius_m));
    s.push_str(&format!("rated_pressure_pa = {}\n", r.cylinder.rated_pressure_pa));

    s.push_str("\n[valve]\n");
    s.push_str(&format!("body_mass_kg = {}\n", r.valve.body_mass_kg));
    s.push_str(&format!("actuation_mass_kg = {}\n", r.valve.actuation_mass_kg));
    s.push_str(&format!("inner_diameter_m = {}\n", r.valve.inner_diameter_m));
    s.push_str(&format!("rated_pressure_pa = {}\n", r.valve.rated_pressure_pa));
    s.push_str(&format!("breakaway_torque_nm = {}\n", r.valve.breakaway_torque_nm));
    s.push_str(&format!("opening_time_s = {}\n", r.valve.opening_time_s));

    s.push_str("\n[battery]\n");
    s.push_str(&format!("specific_energy = {}\n", r.battery.specific_energy_wh_per_kg));

    if let Some(sweep) = &config.sweep {
        s.push_str("\n[sweep]\n");
        s.push_str(&format!("parameter = {}\n", sweep.parameter.name()));
        s.push_str(&format!("lo = {}\n", sweep.lo));
        s.push_str(&format!("hi = {}\n", sweep.hi));
        s.push_str(&format!("points = {}\n", sweep.points));
        s.push_str(&format!("topology = {}\n", sweep.topology));
        s.push_str(&format!("metric = {}\n", sweep.metric.name()));
    }
    if let Some(dir) = &config.out_dir {
        s.push_str("\n[output]\n");
        s.push_str(&format!("dir = {dir}\n"));
    }
    s
}

/// Parse catalog points from CSV text with columns `x,y,label`.
///
/// A header row is allowed and skipped when its first cell is not numeric.
/// Malformed rows are reported with their line numbers.
pub fn parse_catalog_csv(text: &str) -> Result<Vec<CatalogPoint>> {
    let mut points = Vec::new();
    let mut errors: Vec<String> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let mut cells = line.splitn(3, ',');
        let x_cell = cells.next().unwrap_or("").trim();
        let y_cell = cells.next().map(str::trim);
        let label = cells.next().map(str::trim).unwrap_or("");
        let x: f64 = match x_cell.parse() {
            Ok(v) => v,
            Err(_) => {
                if line_no == 1 {
                    continue; // header row
                }
                errors.push(format!("line {line_no}: '{x_cell}' is not a number"));
                continue;
            }
        };
        let y: f64 = match y_cell.and_then(|c| c.parse().ok()) {
            Some(v) => v,
            None => {
                errors.push(format!("line {line_no}: missing or malformed y value"));
                continue;
            }
        };
        match CatalogPoint::new(x, y, label) {
            Ok(p) => points.push(p),
            Err(e) => errors.push(format!("line {line_no}: {e}")),
        }
    }
    if !errors.is_empty() {
        return Err(Error::Fit(errors.join("; ")));
    }
    Ok(points)
}
