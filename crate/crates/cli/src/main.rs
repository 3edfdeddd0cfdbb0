//! Command-line front end: sizing reports, parameter sweeps with CSV/SVG
//! output, sensitivity scans and catalog fitting.

mod report;
mod svg;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use hydromodal_core as core;
use hydromodal_core::{
    config, fit_scaling_law, sensitivity_scan, sweep, Error as CoreError, QuantityKind, StudyConfig,
    SweepMetric, SweepParameter, SweepSpec, Topology,
};

#[derive(Parser)]
#[command(
    name = "hydromodal",
    version,
    about = "Trade studies for multimodal hydrostatic actuators"
)]
struct Cli {
    /// Study configuration file (sectioned key = value text).
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Override one configuration value, e.g. --set motor.k_mass=1.2.
    #[arg(long = "set", global = true, value_name = "SECTION.KEY=VALUE")]
    set: Vec<String>,

    /// Count only pump and valve hardware for pump units (no drive motors).
    #[arg(long, global = true)]
    paper_strict: bool,

    /// Output format for reports.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Directory for generated files.
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,

    /// Print the effective configuration and exit.
    #[arg(long, global = true)]
    dump_config: bool,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Args, Clone, Copy, Default)]
struct StudyFlags {
    /// Task-separation ratio.
    #[arg(long)]
    lambda: Option<f64>,

    /// Holding duty fraction (locking study).
    #[arg(long)]
    gamma: Option<f64>,

    /// Joint count for the shared-pump layout.
    #[arg(long)]
    ndof: Option<u32>,

    /// Autonomy used to size batteries, in hours.
    #[arg(long)]
    autonomy_hours: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Size one topology and print its bill of materials.
    Size {
        /// baseline | two-speed | two-speed-shared | boost | offset | locking
        topology: String,
        #[command(flatten)]
        study: StudyFlags,
    },
    /// Sweep a parameter for one study and write CSV + SVG trend files.
    Sweep {
        /// two-speed | two-speed-shared | boost | offset | locking
        study: String,
        /// Swept parameter (default: lambda, or gamma for locking).
        #[arg(long)]
        parameter: Option<String>,
        /// total_mass | mean_loss | mass_plus_battery
        #[arg(long)]
        metric: Option<String>,
        #[arg(long)]
        lo: Option<f64>,
        #[arg(long)]
        hi: Option<f64>,
        #[arg(long)]
        points: Option<usize>,
        #[command(flatten)]
        flags: StudyFlags,
    },
    /// Scan motor torque-density multipliers against the two-speed break-even.
    Sensitivity {
        /// Comma-separated multipliers.
        #[arg(long, default_value = "0.5,1,2,4")]
        multipliers: String,
        #[command(flatten)]
        flags: StudyFlags,
    },
    /// Fit a scaling law to catalog CSV data (columns x,y,label).
    Fit {
        csv: PathBuf,
        /// Input quantity name (torque_nm, force_n, volume_l, power_w, ...).
        #[arg(long, default_value = "x")]
        input_quantity: String,
        /// Output quantity name (mass_kg, ...).
        #[arg(long, default_value = "y")]
        output_quantity: String,
    },
    /// Regenerate every study dataset (CSV + SVG) into the output directory.
    ReportAll {
        #[command(flatten)]
        flags: StudyFlags,
    },
}

enum CliError {
    Usage(String),
    Infeasible(String),
    Io(String),
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::Infeasible(_) | CoreError::Solver { .. } => CliError::Infeasible(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl CliError {
    fn io(path: &Path, e: std::io::Error) -> Self {
        CliError::Io(format!("{}: {e}", path.display()))
    }

    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Infeasible(_) => 2,
            CliError::Io(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Infeasible(m) | CliError::Io(m) => m,
        }
    }
}

/// Print to stdout, exiting quietly when the downstream reader is gone
/// (e.g. piping into `head`).
fn emit(text: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    if out.write_all(text.as_bytes()).is_err() || out.flush().is_err() {
        std::process::exit(0);
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}

fn load_config(cli: &Cli) -> Result<StudyConfig, CliError> {
    let mut cfg = match &cli.config {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
            config::parse(&text)?
        }
        None => StudyConfig::default(),
    };
    for item in &cli.set {
        let (path, value) = item
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("--set needs SECTION.KEY=VALUE, got '{item}'")))?;
        config::apply_set(&mut cfg, path.trim(), value.trim())?;
    }
    if cli.paper_strict {
        cfg.params.pump_drive_motor = false;
    }
    cfg.params.validate()?;
    cfg.registry.validate()?;
    Ok(cfg)
}

fn apply_flags(cfg: &mut StudyConfig, flags: &StudyFlags) -> Result<(), CliError> {
    if let Some(v) = flags.lambda {
        cfg.params.lambda = v;
    }
    if let Some(v) = flags.gamma {
        cfg.params.holding_duty = v;
    }
    if let Some(v) = flags.ndof {
        cfg.params.n_dof = v;
    }
    if let Some(v) = flags.autonomy_hours {
        cfg.params.cycle_duration_h = Some(v);
    }
    cfg.params.validate()?;
    Ok(())
}

fn out_dir(cli: &Cli, cfg: &StudyConfig) -> PathBuf {
    cli.out
        .clone()
        .or_else(|| cfg.out_dir.as_ref().map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("."))
}

fn write_file(dir: &Path, name: &str, contents: &str) -> Result<PathBuf, CliError> {
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let path = dir.join(name);
    fs::write(&path, contents).map_err(|e| CliError::io(&path, e))?;
    Ok(path)
}

fn run(mut cli: Cli) -> Result<(), CliError> {
    let mut cfg = load_config(&cli)?;

    if cli.dump_config {
        emit(&config::dump(&cfg));
        return Ok(());
    }

    let command = match cli.command.take() {
        Some(c) => c,
        None => {
            return Err(CliError::Usage(
                "no command given; try 'hydromodal --help'".to_string(),
            ))
        }
    };

    match command {
        Command::Size { ref topology, study } => {
            apply_flags(&mut cfg, &study)?;
            let topo = Topology::parse(topology)?;
            let result = core::evaluate(topo, &cfg.params, &cfg.registry)?;
            match cli.format {
                Format::Text => emit(&report::size_text(&result, &cfg.params)),
                Format::Csv => emit(&report::size_csv(&result)),
                Format::Json => emit(&format!("{}\n", report::size_json(&result, &cfg.params))),
            }
            if !result.feasible.ok {
                return Err(CliError::Infeasible(
                    result.feasible.reason.unwrap_or_else(|| "requirements not met".to_string()),
                ));
            }
            Ok(())
        }

        Command::Sweep {
            ref study,
            ref parameter,
            ref metric,
            lo,
            hi,
            points,
            flags,
        } => {
            apply_flags(&mut cfg, &flags)?;
            let topo = Topology::parse(study)?;
            let spec = build_sweep_spec(topo, parameter.as_deref(), metric.as_deref(), lo, hi, points, &cfg)?;
            let result = sweep(&spec, &cfg.params, &cfg.registry)?;
            let dir = out_dir(&cli, &cfg);
            let stem = format!("{}_{}", topo.name().replace('-', "_"), spec.metric.name());
            let csv_path = write_file(&dir, &format!("{stem}.csv"), &report::sweep_csv(&result))?;
            let title = format!("{} vs {}", spec.metric.name(), spec.parameter.name());
            let y_label = metric_label(spec.metric);
            let svg_text = svg::plot_sweep(&result, &title, spec.parameter.name(), y_label);
            let svg_path = write_file(&dir, &format!("{stem}.svg"), &svg_text)?;
            emit(&report::sweep_text(&result));
            emit(&format!("wrote {}\n", csv_path.display()));
            emit(&format!("wrote {}\n", svg_path.display()));
            Ok(())
        }

        Command::Sensitivity { ref multipliers, flags } => {
            apply_flags(&mut cfg, &flags)?;
            let mults = parse_multipliers(multipliers)?;
            let rows = sensitivity_scan(&cfg.params, &cfg.registry, &mults)?;
            match cli.format {
                Format::Csv => emit(&report::sensitivity_csv(&rows)),
                _ => emit(&report::sensitivity_text(&rows)),
            }
            Ok(())
        }

        Command::Fit {
            ref csv,
            ref input_quantity,
            ref output_quantity,
        } => {
            let text = fs::read_to_string(csv).map_err(|e| CliError::io(csv, e))?;
            let points = config::parse_catalog_csv(&text)?;
            let fit = fit_scaling_law(&points, parse_quantity(input_quantity), parse_quantity(output_quantity))?;
            emit(&report::fit_text(&fit));
            Ok(())
        }

        Command::ReportAll { flags } => {
            apply_flags(&mut cfg, &flags)?;
            report_all(&cli, &cfg)
        }
    }
}

fn metric_label(metric: SweepMetric) -> &'static str {
    match metric {
        SweepMetric::TotalMass => "mass [kg/DOF]",
        SweepMetric::MeanLoss => "mean power loss [W]",
        SweepMetric::MassPlusBattery => "mass incl. battery [kg/DOF]",
    }
}

fn build_sweep_spec(
    topology: Topology,
    parameter: Option<&str>,
    metric: Option<&str>,
    lo: Option<f64>,
    hi: Option<f64>,
    points: Option<usize>,
    cfg: &StudyConfig,
) -> Result<SweepSpec, CliError> {
    // A [sweep] section in the config provides the baseline; CLI flags win.
    let base = match &cfg.sweep {
        Some(spec) if spec.topology == topology => spec.clone(),
        _ => match topology {
            Topology::LockingValve => SweepSpec::gamma_mass_plus_battery(),
            _ => SweepSpec::lambda_mass(topology),
        },
    };
    let spec = SweepSpec {
        parameter: match parameter {
            Some(p) => SweepParameter::parse(p)?,
            None => base.parameter,
        },
        metric: match metric {
            Some(m) => SweepMetric::parse(m)?,
            None => base.metric,
        },
        lo: lo.unwrap_or(base.lo),
        hi: hi.unwrap_or(base.hi),
        points: points.unwrap_or(base.points),
        topology,
    };
    spec.validate()?;
    Ok(spec)
}

fn parse_multipliers(s: &str) -> Result<Vec<f64>, CliError> {
    s.split(',')
        .map(|part| {
            part.trim()
                .parse::<f64>()
                .map_err(|_| CliError::Usage(format!("'{part}' is not a number")))
        })
        .collect()
}

fn parse_quantity(name: &str) -> QuantityKind {
    match name {
        "torque_nm" | "torque" => QuantityKind::TorqueNm,
        "speed_rad_s" | "speed" => QuantityKind::SpeedRadS,
        "force_n" | "force" => QuantityKind::ForceN,
        "volume_l" | "volume" => QuantityKind::VolumeL,
        "power_w" | "power" => QuantityKind::PowerW,
        "energy_wh" | "energy" => QuantityKind::EnergyWh,
        "mass_kg" | "mass" => QuantityKind::MassKg,
        "inertia_kg_m2" | "inertia" => QuantityKind::InertiaKgM2,
        other => QuantityKind::Custom(other.to_string()),
    }
}

/// Regenerate every study dataset.
fn report_all(cli: &Cli, cfg: &StudyConfig) -> Result<(), CliError> {
    let dir = out_dir(cli, cfg);
    let emit_sweep = |name: &str, result: &core::SweepResult, title: &str, y: &str| -> Result<(), CliError> {
        write_file(&dir, &format!("{name}.csv"), &report::sweep_csv(result))?;
        let svg_text = svg::plot_sweep(result, title, result.spec.parameter.name(), y);
        write_file(&dir, &format!("{name}.svg"), &svg_text)?;
        emit(&format!("wrote {name}.csv / {name}.svg\n"));
        Ok(())
    };

    // Two-speed: mass and high-torque-point losses against lambda.
    let two_speed_mass = sweep(&SweepSpec::lambda_mass(Topology::TwoSpeed), &cfg.params, &cfg.registry)?;
    emit_sweep("two_speed_mass", &two_speed_mass, "two-speed mass vs lambda", "mass [kg/DOF]")?;
    let two_speed_loss = sweep(
        &SweepSpec {
            metric: SweepMetric::MeanLoss,
            ..SweepSpec::lambda_mass(Topology::TwoSpeed)
        },
        &cfg.params,
        &cfg.registry,
    )?;
    emit_sweep(
        "two_speed_loss",
        &two_speed_loss,
        "two-speed lifting-point losses vs lambda",
        "power loss [W]",
    )?;

    // Shared-pump variant at two joints.
    let mut shared_params = cfg.params.clone();
    if shared_params.n_dof < 2 {
        shared_params.n_dof = 2;
    }
    let shared = sweep(
        &SweepSpec::lambda_mass(Topology::TwoSpeedShared),
        &shared_params,
        &cfg.registry,
    )?;
    emit_sweep(
        "two_speed_shared_mass",
        &shared,
        "shared-pump two-speed mass vs lambda",
        "mass [kg/DOF]",
    )?;

    // Accumulator studies.
    let boost = sweep(&SweepSpec::lambda_mass(Topology::AccumulatorBoost), &cfg.params, &cfg.registry)?;
    emit_sweep("boost_mass", &boost, "power-boost mass vs lambda", "mass [kg/DOF]")?;
    let offset = sweep(&SweepSpec::lambda_mass(Topology::AccumulatorOffset), &cfg.params, &cfg.registry)?;
    emit_sweep("offset_mass", &offset, "static-offset mass vs lambda", "mass [kg/DOF]")?;

    // Locking valve: mean losses, and total mass at two autonomy targets.
    let locking_loss = sweep(
        &SweepSpec {
            metric: SweepMetric::MeanLoss,
            ..SweepSpec::gamma_mass_plus_battery()
        },
        &cfg.params,
        &cfg.registry,
    )?;
    emit_sweep(
        "locking_loss",
        &locking_loss,
        "locking-valve mean losses vs holding duty",
        "mean power loss [W]",
    )?;
    for (name, hours, title) in [
        ("locking_mass_1h", 1.0, "locking-valve mass vs holding duty (1 h autonomy)"),
        (
            "locking_mass_10min",
            1.0 / 6.0,
            "locking-valve mass vs holding duty (10 min autonomy)",
        ),
    ] {
        let mut p = cfg.params.clone();
        p.cycle_duration_h = Some(hours);
        let result = sweep(&SweepSpec::gamma_mass_plus_battery(), &p, &cfg.registry)?;
        emit_sweep(name, &result, title, "mass incl. battery [kg/DOF]")?;
    }

    // Motor torque-density sensitivity.
    let rows = sensitivity_scan(&cfg.params, &cfg.registry, &[0.5, 1.0, 2.0, 4.0])?;
    write_file(&dir, "sensitivity.csv", &report::sensitivity_csv(&rows))?;
    emit("wrote sensitivity.csv\n");
    Ok(())
}
