#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::fs::File;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use kerr_wigner::geodesics::{regime_check, RegimeReport, Scenario};
use kerr_wigner::report::{compatibility_report, ReportSpec};
use kerr_wigner::sweep::{
    chi_grid, figure1, figure2, format_sig9, x_grid, Execution, Figure1Row, Figure1Spec, Figure2Row, Figure2Spec,
    DEFAULT_CHI_VALUES, DEFAULT_X_POINTS,
};
use kerr_wigner::wigner::DEFAULT_TOL;
use kerr_wigner::{
    bell_chsh, n_orbit_rotation, orthogonal_error, Censorship, Error, GravitationalSource, Lowering, OrbitSense,
    Pipeline, QubitState,
};

#[derive(Parser)]
#[command(name = "kerr-wigner", version, about = "Frame-dragging Wigner rotation of spin-1/2 qubits in Kerr spacetime")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Spin rotation accumulated in a zero-angular-momentum fall from rest at infinity
    RadialFall(ScenarioArgs),
    /// Spin rotation per circular equatorial orbit
    Circular(ScenarioArgs),
    /// Total radial-fall rotation over a (chi, x) grid as CSV
    Figure1(SweepArgs),
    /// Per-orbit gravitational rotation for the bounding spin curves as CSV
    Figure2(SweepArgs),
    /// Closed forms vs finite-difference oracle vs generator pipeline
    Check(CheckArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum SenseArg {
    Co,
    Counter,
}

impl From<SenseArg> for OrbitSense {
    fn from(s: SenseArg) -> Self {
        match s {
            SenseArg::Co => OrbitSense::CoRotating,
            SenseArg::Counter => OrbitSense::CounterRotating,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum LoweringArg {
    ConservedCharges,
    Metric,
}

impl From<LoweringArg> for Lowering {
    fn from(l: LoweringArg) -> Self {
        match l {
            LoweringArg::ConservedCharges => Lowering::ConservedCharges,
            LoweringArg::Metric => Lowering::Metric,
        }
    }
}

#[derive(Args)]
struct ScenarioArgs {
    /// Spin a/rs, within [-0.5, 0.5]
    #[arg(long, allow_negative_numbers = true)]
    chi: Option<f64>,
    /// Target rs/r (end of the fall, or the orbit radius)
    #[arg(long, visible_alias = "x-end")]
    x: Option<f64>,
    /// Start of the fall in rs/r; 0 is spatial infinity
    #[arg(long)]
    x_start: Option<f64>,
    #[arg(long, value_enum)]
    sense: Option<SenseArg>,
    #[arg(long)]
    orbits: Option<u64>,
    /// Absolute quadrature tolerance in radians
    #[arg(long)]
    tol: Option<f64>,
    /// Also write the result as a one-row CSV
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    lowering: Option<LoweringArg>,
    /// Scenario file; command-line flags take precedence
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    /// Number of x grid points
    #[arg(long)]
    samples: Option<usize>,
    /// Number of evenly spaced spin curves (figure 1)
    #[arg(long)]
    chi_count: Option<usize>,
    /// Orbit family (figure 2)
    #[arg(long, value_enum)]
    sense: Option<SenseArg>,
    #[arg(long)]
    tol: Option<f64>,
    /// CSV destination; stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    lowering: Option<LoweringArg>,
    /// Run rows one at a time
    #[arg(long)]
    sequential: bool,
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct CheckArgs {
    /// Random points for the finite-difference oracle
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    tol: Option<f64>,
}

/// Scenario or sweep file; keys mirror the flag names.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpecFile {
    scenario: Option<String>,
    figure: Option<u8>,
    chi: Option<f64>,
    x: Option<f64>,
    x_start: Option<f64>,
    sense: Option<String>,
    orbits: Option<u64>,
    tol: Option<f64>,
    out: Option<PathBuf>,
    samples: Option<usize>,
    chi_count: Option<usize>,
    lowering: Option<String>,
}

fn invalid(msg: impl Into<String>) -> anyhow::Error {
    Error::InvalidParameter(msg.into()).into()
}

fn load_spec(path: Option<&Path>) -> Result<SpecFile> {
    let Some(path) = path else {
        return Ok(SpecFile::default());
    };
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| invalid(format!("{}: {e}", path.display())))
}

/// A file written for one command must not silently drive another.
fn check_kind(file: &SpecFile, scenario: Option<&str>, figure: Option<u8>) -> Result<()> {
    if let (Some(found), Some(expected)) = (file.scenario.as_deref(), scenario) {
        if found.replace('-', "_") != expected {
            return Err(invalid(format!("scenario file is for {found:?}, not {expected:?}")));
        }
    }
    if let (Some(found), Some(expected)) = (file.figure, figure) {
        if found != expected {
            return Err(invalid(format!("sweep file is for figure {found}, not figure {expected}")));
        }
    }
    if file.scenario.is_some() && figure.is_some() || file.figure.is_some() && scenario.is_some() {
        return Err(invalid("scenario and sweep files are not interchangeable"));
    }
    Ok(())
}

fn parse_sense(flag: Option<SenseArg>, file: Option<&str>) -> Result<OrbitSense> {
    if let Some(s) = flag {
        return Ok(s.into());
    }
    match file {
        None | Some("counter") => Ok(OrbitSense::CounterRotating),
        Some("co") => Ok(OrbitSense::CoRotating),
        Some(other) => Err(invalid(format!("sense must be co or counter, got {other:?}"))),
    }
}

fn parse_lowering(flag: Option<LoweringArg>, file: Option<&str>) -> Result<Lowering> {
    if let Some(l) = flag {
        return Ok(l.into());
    }
    match file {
        None => Ok(Lowering::default()),
        Some(name) => Lowering::ALL
            .into_iter()
            .find(|l| l.label() == name)
            .ok_or_else(|| invalid(format!("unknown lowering {name:?}"))),
    }
}

fn parse_tol(tol: Option<f64>) -> Result<f64> {
    let tol = tol.unwrap_or(DEFAULT_TOL);
    if tol.is_finite() && tol > 0.0 {
        Ok(tol)
    } else {
        Err(invalid(format!("tolerance must be positive, got {tol}")))
    }
}

fn source_for(chi: f64) -> Result<GravitationalSource> {
    Ok(GravitationalSource::unit(chi)?)
}

fn csv_writer(out: Option<&Path>) -> Result<csv::Writer<Box<dyn Write>>> {
    let sink: Box<dyn Write> = match out {
        Some(path) => Box::new(File::create(path).with_context(|| format!("creating {}", path.display()))?),
        None => Box::new(io::stdout().lock()),
    };
    Ok(csv::Writer::from_writer(sink))
}

fn write_table<I, R>(out: Option<&Path>, header: &[&str], rows: I) -> Result<()>
where
    I: IntoIterator<Item = R>,
    R: IntoIterator<Item = String>,
{
    let mut w = csv_writer(out)?;
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    w.flush()?;
    Ok(())
}

fn spin_label(source: &GravitationalSource) -> String {
    match source.censorship() {
        Censorship::Extremal => format!("{} (extremal)", source.chi()),
        _ => source.chi().to_string(),
    }
}

fn print_regime(label: &str, report: &RegimeReport) {
    println!(
        "regime {label}: |dr/dt| = {:.6}, |r dphi/dt| = {:.6}, within bounds: {}",
        report.dr_dt,
        report.r_dphi_dt,
        if report.within_bounds { "yes" } else { "NO" }
    );
}

/// Worst coordinate speeds over the path; points on a coordinate horizon are skipped.
fn radial_regime(source: &GravitationalSource, x_start: f64, x_end: f64) -> Option<RegimeReport> {
    x_grid(DEFAULT_X_POINTS, 1.0)
        .into_iter()
        .map(|t| x_start + (x_end - x_start) * t)
        .filter_map(|x| regime_check(source, source.radius(x), Scenario::RadialFall).ok())
        .reduce(|a, b| RegimeReport {
            dr_dt: a.dr_dt.max(b.dr_dt),
            r_dphi_dt: a.r_dphi_dt.max(b.r_dphi_dt),
            within_bounds: a.within_bounds && b.within_bounds,
        })
}

fn run_radial(args: ScenarioArgs) -> Result<()> {
    let file = load_spec(args.json.as_deref())?;
    check_kind(&file, Some("radial_fall"), None)?;
    let source = source_for(args.chi.or(file.chi).unwrap_or(0.5))?;
    let x_start = args.x_start.or(file.x_start).unwrap_or(0.0);
    let x_end = args.x.or(file.x).unwrap_or(1.0);
    let tol = parse_tol(args.tol.or(file.tol))?;
    let lowering = parse_lowering(args.lowering, file.lowering.as_deref())?;
    let out = args.out.or(file.out);

    let rot = Pipeline::new(lowering).radial_fall_rotation(&source, x_start, x_end, tol)?;
    let eps = orthogonal_error(&QubitState::zero(), rot.omega);
    let chsh = bell_chsh(rot.omega);

    println!("scenario: radial-fall ({lowering} lowering)");
    println!("chi: {}", spin_label(&source));
    println!("x: {x_start} -> {x_end}");
    println!("omega_rad: {}", format_sig9(rot.omega));
    println!("err_estimate: {:.3e} (tol {tol:e})", rot.err_estimate);
    println!("epsilon |0>: {}", format_sig9(eps));
    println!("bell_chsh: {}", format_sig9(chsh));
    if let Some(report) = radial_regime(&source, x_start, x_end) {
        print_regime("max over path", &report);
    }

    if let Some(path) = out {
        write_table(
            Some(&path),
            &["scenario", "chi", "x_start", "x_end", "omega_rad", "err_estimate", "epsilon", "bell_chsh"],
            [[
                "radial_fall".to_string(),
                format_sig9(source.chi()),
                format_sig9(x_start),
                format_sig9(x_end),
                format_sig9(rot.omega),
                format_sig9(rot.err_estimate),
                format_sig9(eps),
                format_sig9(chsh),
            ]],
        )?;
    }
    Ok(())
}

fn run_circular(args: ScenarioArgs) -> Result<()> {
    let file = load_spec(args.json.as_deref())?;
    check_kind(&file, Some("circular"), None)?;
    let source = source_for(args.chi.or(file.chi).unwrap_or(0.0))?;
    let x = args.x.or(file.x).ok_or_else(|| invalid("circular needs --x"))?;
    if !(x > 0.0) {
        return Err(invalid(format!("x = rs/r must be positive, got {x}")));
    }
    let sense = parse_sense(args.sense, file.sense.as_deref())?;
    let orbits = args.orbits.or(file.orbits).unwrap_or(1);
    let lowering = parse_lowering(args.lowering, file.lowering.as_deref())?;
    let out = args.out.or(file.out);

    let r = source.radius(x);
    let per_orbit = Pipeline::new(lowering).per_orbit_rotation(&source, r, sense)?;
    let total = n_orbit_rotation(&per_orbit, orbits)?;
    let delta = per_orbit.delta_omega().expect("circular rotation");
    let delta_n = total.delta_omega().expect("circular rotation");
    // two readings of the angle entering the qubit observables
    let gravitational = std::f64::consts::TAU * delta_n;
    let zero = QubitState::zero();
    let (eps_grav, eps_total) = (orthogonal_error(&zero, gravitational), orthogonal_error(&zero, total.omega));
    let (chsh_grav, chsh_total) = (bell_chsh(gravitational), bell_chsh(total.omega));

    println!("scenario: circular, {sense} ({lowering} lowering)");
    println!("chi: {}", spin_label(&source));
    println!("x: {x} (r = {r} rs)");
    println!("omega_orbit_rad: {}", format_sig9(per_orbit.omega));
    println!("delta_omega: {}", format_sig9(delta));
    println!("delta_omega_n (n = {orbits}): {}", format_sig9(delta_n));
    println!("err_estimate: {:.3e} (closed form, no quadrature)", total.err_estimate);
    println!("epsilon |0> [omega = 2 pi delta_omega_n]: {}", format_sig9(eps_grav));
    println!("epsilon |0> [omega = n omega_orbit]: {}", format_sig9(eps_total));
    println!("bell_chsh [omega = 2 pi delta_omega_n]: {}", format_sig9(chsh_grav));
    println!("bell_chsh [omega = n omega_orbit]: {}", format_sig9(chsh_total));
    print_regime("on orbit", &regime_check(&source, r, Scenario::Circular(sense))?);

    if let Some(path) = out {
        write_table(
            Some(&path),
            &[
                "scenario",
                "chi",
                "x",
                "sense",
                "orbits",
                "omega_orbit_rad",
                "delta_omega",
                "delta_omega_n",
                "epsilon_gravitational",
                "epsilon_total",
                "bell_chsh_gravitational",
                "bell_chsh_total",
            ],
            [[
                "circular".to_string(),
                format_sig9(source.chi()),
                format_sig9(x),
                sense.to_string(),
                orbits.to_string(),
                format_sig9(per_orbit.omega),
                format_sig9(delta),
                format_sig9(delta_n),
                format_sig9(eps_grav),
                format_sig9(eps_total),
                format_sig9(chsh_grav),
                format_sig9(chsh_total),
            ]],
        )?;
    }
    Ok(())
}

fn execution(sequential: bool) -> Execution {
    if sequential {
        Execution::Sequential
    } else {
        Execution::default()
    }
}

fn run_figure1(args: SweepArgs) -> Result<()> {
    let file = load_spec(args.json.as_deref())?;
    check_kind(&file, None, Some(1))?;
    let chi_values = match args.chi_count.or(file.chi_count) {
        Some(n) if n < 2 => return Err(invalid(format!("--chi-count must be at least 2, got {n}"))),
        Some(n) => chi_grid(n),
        None => DEFAULT_CHI_VALUES.to_vec(),
    };
    let spec = Figure1Spec {
        chi_values,
        x_points: args.samples.or(file.samples).unwrap_or(DEFAULT_X_POINTS),
        tol: parse_tol(args.tol.or(file.tol))?,
        lowering: parse_lowering(args.lowering, file.lowering.as_deref())?,
    };
    let rows = figure1(&spec, execution(args.sequential))?;
    let failed = rows.iter().filter(|r| r.error.is_some()).count();
    write_table(args.out.or(file.out).as_deref(), &Figure1Row::HEADER, rows.iter().map(Figure1Row::record))?;
    if failed > 0 {
        eprintln!("{failed} of {} rows failed; see the error column", rows.len());
    }
    Ok(())
}

fn run_figure2(args: SweepArgs) -> Result<()> {
    let file = load_spec(args.json.as_deref())?;
    check_kind(&file, None, Some(2))?;
    let x_points = args.samples.or(file.samples).unwrap_or(DEFAULT_X_POINTS);
    if x_points < 2 {
        return Err(invalid(format!("--samples must be at least 2, got {x_points}")));
    }
    let spec = Figure2Spec {
        x_points,
        sense: parse_sense(args.sense, file.sense.as_deref())?,
        lowering: parse_lowering(args.lowering, file.lowering.as_deref())?,
    };
    let rows = figure2(&spec, execution(args.sequential))?;
    write_table(args.out.or(file.out).as_deref(), &Figure2Row::HEADER, rows.iter().map(Figure2Row::record))
}

fn run_check(args: CheckArgs) -> Result<()> {
    let defaults = ReportSpec::default();
    let spec = ReportSpec {
        oracle_points: args.samples.unwrap_or(defaults.oracle_points),
        seed: args.seed.unwrap_or(defaults.seed),
        tol: parse_tol(args.tol)?,
        ..defaults
    };
    print!("{}", compatibility_report(spec)?);
    Ok(())
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::NoCircularOrbit { .. }) => 3,
        Some(Error::ToleranceNotMet { .. }) => 4,
        Some(_) => 2,
        None => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::RadialFall(args) => run_radial(args),
        Command::Circular(args) => run_circular(args),
        Command::Figure1(args) => run_figure1(args),
        Command::Figure2(args) => run_figure2(args),
        Command::Check(args) => run_check(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
