//! Command-line front end.
//!
//! Every long flag can also come from `--config <file>` under the same key
//! (`omega-xy` or `omega_xy`); flags win. Species definitions in the config
//! (`species.<name>.mass_u = ...`) extend the registry.

pub mod output;
pub mod units;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::config::ConfigMap;
use crate::coupling::{
    design_point_alpha1, design_point_alpha1_at_length, interaction_time_estimate,
    restriction_product, CouplingResult, Method, QuadratureSettings,
};
use crate::error::{Error, Result};
use crate::gate::{
    collision_count, decompose_sqrt_swap, synthesize_gate, unitarity_residual, BASIS_LABELS,
};
use crate::potential::{alpha, regime};
use crate::schedule::{route_remote_gate, validate_schedule, MergeSchedule, TrapArray};
use crate::species::{IonSpecies, SpeciesRegistry};
use crate::sweep::{evaluate, gnuplot_script, run_sweep, write_csv, SweepRange, SweepRow};
use crate::trap::TrapConfig;
use crate::units::CODATA_2018;

use output::{write_record, write_rows, Cell, Format, Record};
use units::{parse_frequency, parse_length, parse_plain, parse_time};

/// Relative `--output` paths resolve against this directory when it is set.
pub const OUTPUT_DIR_ENV: &str = "IONCOLLIDE_OUTPUT_DIR";

#[derive(Debug, Parser)]
#[command(
    name = "ioncollide",
    version,
    about = "Exchange coupling and gate design for colliding trapped ions"
)]
struct Cli {
    /// key = value or JSON file supplying defaults for any flag.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Default, Args)]
struct TrapArgs {
    /// Species name, e.g. Yb-171, Be-9, electron.
    #[arg(long)]
    species: Option<String>,
    /// Transverse trap frequency: `2pi*10MHz`, `10MHz` (rad/s) or a bare rad/s value.
    #[arg(long = "omega-xy")]
    omega_xy: Option<String>,
    /// Longitudinal trap frequency, same grammar as --omega-xy.
    #[arg(long = "omega-z", conflicts_with = "omega_perp")]
    omega_z: Option<String>,
    /// Confinement ratio omega_xy / omega_z.
    #[arg(long = "omega-perp")]
    omega_perp: Option<String>,
    /// Trapping distance, e.g. `103um`. For `sweep`, a range `min:max:points[:log]`.
    #[arg(long = "L")]
    length: Option<String>,
}

#[derive(Debug, Default, Args)]
struct NumericArgs {
    /// quadrature, asymptotic or classical.
    #[arg(long)]
    method: Option<String>,
    #[arg(long = "rel-tol")]
    rel_tol: Option<String>,
    /// Initial panels per half period of the time average.
    #[arg(long = "time-nodes")]
    time_nodes: Option<String>,
    /// Spatial cut-off of the exchange integral, in coherent-state lengths.
    #[arg(long)]
    truncation: Option<String>,
}

#[derive(Debug, Default, Args)]
struct ArrayArgs {
    /// Number of traps, holding qubits q0, q1, ...
    #[arg(long = "n-traps", conflicts_with = "labels")]
    n_traps: Option<String>,
    /// Comma-separated qubit labels in trap order.
    #[arg(long)]
    labels: Option<String>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List registered species, or show one.
    Species {
        #[arg(long)]
        name: Option<String>,
    },
    /// Exchange coupling and direct shift for one trap.
    Coupling {
        #[command(flatten)]
        trap: TrapArgs,
        #[command(flatten)]
        numerics: NumericArgs,
    },
    /// Coupling over a range of trapping distances, as CSV plus a gnuplot script.
    Sweep {
        #[command(flatten)]
        trap: TrapArgs,
        #[command(flatten)]
        numerics: NumericArgs,
        /// CSV destination; stdout when absent.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Gnuplot script destination; defaults to the output path with a .gp extension.
        #[arg(long = "plot-script")]
        plot_script: Option<PathBuf>,
    },
    /// Trap at the alpha = 1 design point, from --omega-perp or --L.
    Design {
        #[command(flatten)]
        trap: TrapArgs,
    },
    /// Collision gate report: gate time, phase angles, collision count and matrix.
    Gate {
        #[command(flatten)]
        trap: TrapArgs,
        #[command(flatten)]
        numerics: NumericArgs,
        /// Exchange J/hbar, overriding the trap calculation.
        #[arg(long)]
        j: Option<String>,
        /// Direct shift U/hbar, used with --j.
        #[arg(long)]
        u: Option<String>,
        /// Qubit splitting E0/hbar; defaults to the species value.
        #[arg(long)]
        e0: Option<String>,
        /// Parametric drive frequency; counts collisions for a driven trap.
        #[arg(long = "omega-f")]
        omega_f: Option<String>,
    },
    /// Merge/split schedule for a remote sqrt(SWAP) between two qubits.
    Schedule {
        #[command(flatten)]
        trap: TrapArgs,
        #[command(flatten)]
        numerics: NumericArgs,
        #[command(flatten)]
        array: ArrayArgs,
        #[arg(long)]
        a: Option<String>,
        #[arg(long)]
        b: Option<String>,
        /// Gate time; derived from the trap when absent.
        #[arg(long = "t-g")]
        t_g: Option<String>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Check a schedule file against an array; exits 1 on any violation.
    Validate {
        #[command(flatten)]
        array: ArrayArgs,
        #[arg(long)]
        schedule: Option<PathBuf>,
    },
}

/// Flag values with the config file as fallback.
struct Inputs {
    config: ConfigMap,
    registry: SpeciesRegistry,
}

impl Inputs {
    fn new(config: ConfigMap) -> Result<Self> {
        let mut registry = SpeciesRegistry::default();
        registry.apply_overrides(&config)?;
        Ok(Self { config, registry })
    }

    fn get(&self, flag: &Option<String>, key: &str) -> Option<String> {
        flag.clone().or_else(|| {
            self.config
                .get(key)
                .or_else(|| self.config.get(&key.replace('-', "_")))
                .map(str::to_string)
        })
    }

    fn require(&self, flag: &Option<String>, key: &'static str) -> Result<String> {
        self.get(flag, key)
            .ok_or_else(|| Error::invalid(key, format!("missing --{key}")))
    }

    fn species(&self, trap: &TrapArgs) -> Result<IonSpecies> {
        self.registry
            .lookup(&self.require(&trap.species, "species")?)
    }

    fn omega_xy(&self, trap: &TrapArgs) -> Result<f64> {
        parse_frequency(&self.require(&trap.omega_xy, "omega-xy")?)
    }

    /// Longitudinal frequency from --omega-z, or from --omega-xy / --omega-perp.
    /// A flag beats a config entry even when the config names the other form.
    fn omega_z(&self, trap: &TrapArgs) -> Result<f64> {
        let from_perp = |p: &str| -> Result<f64> {
            let wp = parse_plain("omega-perp", p)?;
            if !(wp >= 1.0) {
                return Err(Error::invalid("omega-perp", "must be >= 1"));
            }
            Ok(self.omega_xy(trap)? / wp)
        };
        match (&trap.omega_z, &trap.omega_perp) {
            (Some(z), _) => parse_frequency(z),
            (None, Some(p)) => from_perp(p),
            (None, None) => match (self.get(&None, "omega-z"), self.get(&None, "omega-perp")) {
                (Some(z), _) => parse_frequency(&z),
                (None, Some(p)) => from_perp(&p),
                (None, None) => Err(Error::invalid(
                    "omega-z",
                    "missing --omega-z or --omega-perp",
                )),
            },
        }
    }

    fn length(&self, trap: &TrapArgs) -> Result<f64> {
        parse_length(&self.require(&trap.length, "L")?)
    }

    fn trap(&self, trap: &TrapArgs) -> Result<TrapConfig> {
        TrapConfig::new(
            self.species(trap)?,
            self.omega_z(trap)?,
            self.omega_xy(trap)?,
            self.length(trap)?,
        )
    }

    fn method(&self, n: &NumericArgs) -> Result<Method> {
        self.get(&n.method, "method")
            .map_or(Ok(Method::Asymptotic), |m| m.parse())
    }

    fn settings(&self, n: &NumericArgs) -> Result<QuadratureSettings> {
        let mut s = QuadratureSettings::default();
        if let Some(v) = self.get(&n.rel_tol, "rel-tol") {
            s.rel_tol = parse_plain("rel-tol", &v)?;
        }
        if let Some(v) = self.get(&n.time_nodes, "time-nodes") {
            s.time_nodes = v
                .trim()
                .parse()
                .map_err(|_| Error::invalid("time-nodes", format!("`{v}` is not a count")))?;
        }
        if let Some(v) = self.get(&n.truncation, "truncation") {
            s.spatial_truncation = parse_plain("truncation", &v)?;
        }
        s.validate()?;
        Ok(s)
    }

    fn array(&self, a: &ArrayArgs, trap_length: f64) -> Result<TrapArray> {
        if let Some(labels) = self.get(&a.labels, "labels") {
            let labels = labels.split(',').map(|s| s.trim().to_string()).collect();
            return TrapArray::new(labels, trap_length);
        }
        let n = self.require(&a.n_traps, "n-traps")?;
        let n = n
            .trim()
            .parse()
            .map_err(|_| Error::invalid("n-traps", format!("`{n}` is not a count")))?;
        TrapArray::with_count(n, trap_length)
    }
}

/// Exit status for an engine error: 2 for bad input, 1 for physics that
/// refuses the request.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidParameter { .. }
        | Error::UnknownSpecies { .. }
        | Error::Config(_)
        | Error::UnknownQubit(_)
        | Error::SameTrap(..) => 2,
        _ => 1,
    }
}

/// Parses `args` (program name first), runs the command and returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let to_stdout = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let text = e.render().to_string();
            let _ = if to_stdout {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return if to_stdout { 0 } else { 2 };
        }
    };
    match dispatch(cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn warn(err: &mut dyn Write, warnings: &[String]) {
    for w in warnings {
        let _ = writeln!(err, "warning: {w}");
    }
}

fn io_err(path: &Path, e: std::io::Error) -> Error {
    Error::Config(format!("cannot write {}: {e}", path.display()))
}

fn resolve_output(path: &Path) -> PathBuf {
    match std::env::var_os(OUTPUT_DIR_ENV) {
        Some(dir) if path.is_relative() && !dir.is_empty() => Path::new(&dir).join(path),
        _ => path.to_path_buf(),
    }
}

fn dispatch(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let config = match &cli.config {
        Some(p) => ConfigMap::load(p)?,
        None => ConfigMap::default(),
    };
    let inputs = Inputs::new(config)?;
    let format = match cli.format {
        Some(f) => f,
        None => inputs
            .get(&None, "format")
            .map_or(Ok(Format::Table), |f| f.parse())?,
    };
    match &cli.command {
        Command::Species { name } => cmd_species(&inputs, name, format, out),
        Command::Coupling { trap, numerics } => {
            cmd_coupling(&inputs, trap, numerics, format, out, err)
        }
        Command::Sweep {
            trap,
            numerics,
            output,
            plot_script,
        } => cmd_sweep(
            &inputs,
            trap,
            numerics,
            output,
            plot_script,
            format,
            out,
            err,
        ),
        Command::Design { trap } => cmd_design(&inputs, trap, format, out, err),
        Command::Gate {
            trap,
            numerics,
            j,
            u,
            e0,
            omega_f,
        } => cmd_gate(
            &inputs,
            trap,
            numerics,
            [j, u, e0, omega_f],
            format,
            out,
            err,
        ),
        Command::Schedule {
            trap,
            numerics,
            array,
            a,
            b,
            t_g,
            output,
        } => cmd_schedule(
            &inputs,
            trap,
            numerics,
            array,
            [a, b, t_g],
            output,
            format,
            out,
            err,
        ),
        Command::Validate { array, schedule } => {
            cmd_validate(&inputs, array, schedule, format, out)
        }
    }
}

fn species_record(s: &IonSpecies) -> Record {
    let c = CODATA_2018;
    let mut r = Record::default();
    r.push("name", s.name.as_str())
        .push("mass_kg", s.mass)
        .push("mass_u", s.mass / c.atomic_mass_unit)
        .push("charge_e", s.charge / c.elementary_charge)
        .push(
            "E0_over_hbar",
            s.hyperfine_splitting
                .map_or(Cell::Text("none".into()), |e| Cell::Num(e / c.hbar)),
        );
    r
}

fn cmd_species(
    inputs: &Inputs,
    name: &Option<String>,
    format: Format,
    out: &mut dyn Write,
) -> Result<i32> {
    match inputs.get(name, "name") {
        Some(n) => write_record(out, format, &species_record(&inputs.registry.lookup(&n)?))?,
        None => {
            let rows: Vec<Record> = inputs.registry.iter().map(species_record).collect();
            write_rows(out, format, &rows)?
        }
    }
    Ok(0)
}

fn trap_fields(r: &mut Record, cfg: &TrapConfig) {
    r.push("species", cfg.species.name.as_str())
        .push("omega_xy", cfg.omega_xy)
        .push("omega_z", cfg.omega_z)
        .push("omega_perp", cfg.omega_perp())
        .push("L", cfg.length)
        .push("z0", cfg.z0())
        .push("L_over_z0", cfg.reduced_length())
        .push("alpha", alpha(cfg))
        .push(
            "regime",
            serde_json::to_value(regime(cfg))
                .ok()
                .and_then(|v| v.as_str().map(str::to_string))
                .unwrap_or_default(),
        );
}

fn coupling_fields(r: &mut Record, cfg: &TrapConfig, c: &CouplingResult) {
    let hbar = CODATA_2018.hbar;
    let time = interaction_time_estimate(cfg);
    r.push("method", c.method.as_str())
        .push("J_over_hbar", c.exchange_j / hbar)
        .push("U_over_hbar", c.direct_u / hbar)
        .push("V_plus_over_hbar", c.v_plus / hbar)
        .push("V_minus_over_hbar", c.v_minus / hbar)
        .push("A", c.interference_a)
        .push("validity_ratio", time.validity_ratio)
        .push("short_collision", Cell::Bool(time.valid));
}

fn cmd_coupling(
    inputs: &Inputs,
    trap: &TrapArgs,
    numerics: &NumericArgs,
    format: Format,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32> {
    let cfg = inputs.trap(trap)?;
    let c = evaluate(&cfg, inputs.method(numerics)?, &inputs.settings(numerics)?)?;
    warn(err, &c.warnings);
    let mut r = Record::default();
    trap_fields(&mut r, &cfg);
    coupling_fields(&mut r, &cfg, &c);
    write_record(out, format, &r)?;
    Ok(0)
}

fn sweep_record(row: &SweepRow) -> Record {
    let mut r = Record::default();
    r.push("species", row.species.as_str())
        .push("omega_xy", row.omega_xy)
        .push("omega_z", row.omega_z)
        .push("omega_perp", row.omega_perp)
        .push("L", row.length)
        .push("alpha", row.alpha)
        .push("J_over_hbar", row.j_over_hbar)
        .push("U_over_hbar", row.u_over_hbar)
        .push("A", row.a)
        .push("method", row.method.as_str());
    r
}

#[allow(clippy::too_many_arguments)]
fn cmd_sweep(
    inputs: &Inputs,
    trap: &TrapArgs,
    numerics: &NumericArgs,
    output: &Option<PathBuf>,
    plot_script: &Option<PathBuf>,
    format: Format,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32> {
    let range = SweepRange::parse(&inputs.require(&trap.length, "L")?, parse_length)?;
    let lengths = range.values();
    let base = TrapConfig::new(
        inputs.species(trap)?,
        inputs.omega_z(trap)?,
        inputs.omega_xy(trap)?,
        lengths[0],
    )?;
    let method = inputs.method(numerics)?;
    let settings = inputs.settings(numerics)?;
    let rows = run_sweep(&base, &lengths, method, &settings)?;
    warn(err, &base.warnings());
    for row in &rows {
        if row.method != method.as_str() {
            let _ = writeln!(
                err,
                "warning: L = {:e} m: alpha = {:.4}, used {} instead of {}",
                row.length,
                row.alpha,
                row.method,
                method.as_str()
            );
        }
    }

    let output = inputs
        .get(&output.as_ref().map(|p| p.display().to_string()), "output")
        .map(|p| resolve_output(Path::new(&p)));
    match output {
        Some(path) => {
            let file = std::fs::File::create(&path).map_err(|e| io_err(&path, e))?;
            write_csv(&rows, std::io::BufWriter::new(file))?;
            let script_path = match inputs.get(
                &plot_script.as_ref().map(|p| p.display().to_string()),
                "plot-script",
            ) {
                Some(p) => resolve_output(Path::new(&p)),
                None => path.with_extension("gp"),
            };
            let image = script_path.with_extension("png");
            std::fs::write(&script_path, gnuplot_script(&path, &image))
                .map_err(|e| io_err(&script_path, e))?;
            let _ = writeln!(
                err,
                "wrote {} rows to {} and plot script {}",
                rows.len(),
                path.display(),
                script_path.display()
            );
            let records: Vec<Record> = rows.iter().map(sweep_record).collect();
            write_rows(out, format, &records)?;
        }
        None => match format {
            Format::Csv => write_csv(&rows, out)?,
            _ => {
                let records: Vec<Record> = rows.iter().map(sweep_record).collect();
                write_rows(out, format, &records)?;
            }
        },
    }
    Ok(0)
}

fn cmd_design(
    inputs: &Inputs,
    trap: &TrapArgs,
    format: Format,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32> {
    let species = inputs.species(trap)?;
    let omega_xy = inputs.omega_xy(trap)?;
    let cfg = match (inputs.omega_z(trap), inputs.get(&trap.length, "L")) {
        (Ok(wz), _) => design_point_alpha1(&species, omega_xy, omega_xy / wz)?,
        (Err(_), Some(l)) => design_point_alpha1_at_length(&species, omega_xy, parse_length(&l)?)?,
        (Err(e), None) => return Err(e),
    };
    let c = evaluate(&cfg, Method::Asymptotic, &QuadratureSettings::default())?;
    warn(err, &c.warnings);
    let hbar = CODATA_2018.hbar;
    let mut r = Record::default();
    trap_fields(&mut r, &cfg);
    coupling_fields(&mut r, &cfg, &c);
    r.push(
        "omega_perp_J_over_hbar",
        cfg.omega_perp() * c.exchange_j / hbar,
    )
    .push(
        "restriction_product_over_hbar",
        restriction_product(&species, omega_xy)? / hbar,
    );
    write_record(out, format, &r)?;
    Ok(0)
}

fn cmd_gate(
    inputs: &Inputs,
    trap: &TrapArgs,
    numerics: &NumericArgs,
    [j, u, e0, omega_f]: [&Option<String>; 4],
    format: Format,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32> {
    let hbar = CODATA_2018.hbar;
    let energy = |v: &str| parse_frequency(v).map(|w| w * hbar);
    let explicit_j = inputs.get(j, "j");
    let omega_z = inputs.omega_z(trap)?;
    let (j, u, species) = match explicit_j {
        Some(jv) => {
            let u = inputs.get(u, "u").map_or(Ok(0.0), |v| energy(&v))?;
            let species = inputs
                .get(&trap.species, "species")
                .map(|n| inputs.registry.lookup(&n))
                .transpose()?;
            (energy(&jv)?, u, species)
        }
        None => {
            let cfg = inputs.trap(trap)?;
            let c = evaluate(&cfg, inputs.method(numerics)?, &inputs.settings(numerics)?)?;
            warn(err, &c.warnings);
            (c.exchange_j, c.direct_u, Some(cfg.species))
        }
    };
    let e0 = match inputs.get(e0, "e0") {
        Some(v) => energy(&v)?,
        None => species
            .as_ref()
            .and_then(|s| s.hyperfine_splitting)
            .ok_or_else(|| Error::invalid("e0", "species has no qubit splitting; pass --e0"))?,
    };
    let spec = synthesize_gate(e0, u, j, omega_z)?;
    let dec = decompose_sqrt_swap(&spec.matrix)?;
    let count = match inputs.get(omega_f, "omega-f") {
        Some(w) => collision_count(j, parse_frequency(&w)?, true)?,
        None => collision_count(j, omega_z, false)?,
    };

    let mut r = Record::default();
    r.push("J_over_hbar", j / hbar)
        .push("U_over_hbar", u / hbar)
        .push("E0_over_hbar", e0 / hbar)
        .push("omega_z", omega_z)
        .push("t_g", spec.t_g)
        .push("theta", spec.theta)
        .push("theta_half_sum", spec.theta_half_sum)
        .push("N_g", count.value)
        .push("N_g_nearest", Cell::Int(count.nearest as i64))
        .push("N_g_mistuning", count.mistuning)
        .push("global_phase", dec.global_phase)
        .push("decomposition_residual", dec.residual)
        .push("unitarity_residual", unitarity_residual(&spec.matrix));
    match format {
        Format::Table => {
            write_record(out, format, &r)?;
            let io = |e: std::io::Error| Error::Config(format!("write failed: {e}"));
            writeln!(out, "matrix (basis {}):", BASIS_LABELS.join(", ")).map_err(io)?;
            for row in &spec.matrix {
                let cells: Vec<String> = row
                    .iter()
                    .map(|z| format!("{:+.11e}{:+.11e}i", z.re, z.im))
                    .collect();
                writeln!(out, "  {}", cells.join("  ")).map_err(io)?;
            }
        }
        Format::Csv => {
            for (a, row) in spec.matrix.iter().enumerate() {
                for (b, z) in row.iter().enumerate() {
                    let key = format!("M_{}_{}", BASIS_LABELS[a], BASIS_LABELS[b]);
                    r.push(format!("{key}_re"), z.re)
                        .push(format!("{key}_im"), z.im);
                }
            }
            write_record(out, format, &r)?;
        }
        Format::Json => {
            let mut v = r.to_json();
            v["matrix"] = serde_json::json!(spec
                .matrix
                .iter()
                .map(|row| row.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>())
                .collect::<Vec<_>>());
            v["basis"] = serde_json::json!(BASIS_LABELS);
            writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&v).unwrap_or_default()
            )
            .map_err(|e| Error::Config(format!("write failed: {e}")))?;
        }
    }
    Ok(0)
}

#[allow(clippy::too_many_arguments)]
fn cmd_schedule(
    inputs: &Inputs,
    trap: &TrapArgs,
    numerics: &NumericArgs,
    array: &ArrayArgs,
    [a, b, t_g]: [&Option<String>; 3],
    output: &Option<PathBuf>,
    format: Format,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32> {
    let omega_z = inputs.omega_z(trap)?;
    let (t_g, spacing) = match inputs.get(t_g, "t-g") {
        Some(t) => (
            parse_time(&t)?,
            // Spacing is array metadata only; the schedule does not use it.
            inputs
                .get(&trap.length, "L")
                .map_or(Ok(1.0), |l| parse_length(&l))?,
        ),
        None => {
            let cfg = inputs.trap(trap)?;
            let c = evaluate(&cfg, inputs.method(numerics)?, &inputs.settings(numerics)?)?;
            warn(err, &c.warnings);
            (
                synthesize_gate(0.0, c.direct_u, c.exchange_j, omega_z)?.t_g,
                cfg.length,
            )
        }
    };
    let arr = inputs.array(array, spacing)?;
    let qa = inputs.require(a, "a")?;
    let qb = inputs.require(b, "b")?;
    let schedule = route_remote_gate(&arr, &qa, &qb, t_g, omega_z)?;
    let text = match format {
        Format::Json => {
            serde_json::to_string_pretty(&schedule)
                .map_err(|e| Error::Config(format!("json: {e}")))?
                + "\n"
        }
        _ => schedule.to_text(),
    };
    let output = inputs
        .get(&output.as_ref().map(|p| p.display().to_string()), "output")
        .map(|p| resolve_output(Path::new(&p)));
    match output {
        Some(path) => {
            std::fs::write(&path, &text).map_err(|e| io_err(&path, e))?;
            let _ = writeln!(
                err,
                "wrote {} events to {}",
                schedule.events.len(),
                path.display()
            );
        }
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| Error::Config(format!("write failed: {e}")))?,
    }
    Ok(0)
}

fn cmd_validate(
    inputs: &Inputs,
    array: &ArrayArgs,
    schedule: &Option<PathBuf>,
    format: Format,
    out: &mut dyn Write,
) -> Result<i32> {
    let path = inputs
        .get(
            &schedule.as_ref().map(|p| p.display().to_string()),
            "schedule",
        )
        .ok_or_else(|| Error::invalid("schedule", "missing --schedule"))?;
    let text = std::fs::read_to_string(&path)
        .map_err(|e| Error::Config(format!("cannot read {path}: {e}")))?;
    let sched = MergeSchedule::from_text(&text)?;
    let arr = inputs.array(array, 1.0)?;
    let report = validate_schedule(&arr, &sched);
    if format == Format::Json {
        writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&report).unwrap_or_default()
        )
        .map_err(|e| Error::Config(format!("write failed: {e}")))?;
    } else {
        let mut r = Record::default();
        r.push("valid", Cell::Bool(report.is_valid()))
            .push("violations", Cell::Int(report.violations.len() as i64))
            .push(
                "sqrt_swap_pairs",
                report
                    .sqrt_swap_pairs
                    .iter()
                    .map(|(a, b)| format!("{a}-{b}"))
                    .collect::<Vec<_>>()
                    .join(" "),
            )
            .push("final_occupancy", report.final_occupancy.join(" "))
            .push(
                "theta_multiples",
                report
                    .theta_multiples
                    .iter()
                    .map(|(k, v)| format!("{k}={v}"))
                    .collect::<Vec<_>>()
                    .join(" "),
            );
        write_record(out, format, &r)?;
        if format == Format::Table {
            for v in &report.violations {
                let _ = writeln!(out, "  {v}");
            }
        }
    }
    Ok(if report.is_valid() { 0 } else { 1 })
}
