//! Command-line driver behind the `gelfem` binary.

use std::ffi::OsString;
use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::analytic::{self, DEFAULT_CURVE_POINTS};
use crate::benchmarks::{self, AxialControl};
use crate::error::{exit_code, GelError, Result};
use crate::io::{self, ModelFile};
use crate::material;
use crate::solver::{self, Model, SolutionState};
use crate::verify;

#[derive(Debug, Parser)]
#[command(name = "gelfem", version, about = "Finite-element equilibrium of swollen Flory-Rehner gels")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FieldFormat {
    Vtk,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Control {
    Displacement,
    Force,
}

impl From<Control> for AxialControl {
    fn from(c: Control) -> Self {
        match c {
            Control::Displacement => AxialControl::Displacement,
            Control::Force => AxialControl::Force,
        }
    }
}

#[derive(Debug, clap::Args)]
pub struct MaterialArgs {
    /// Crosslink density times solvent molecular volume.
    #[arg(long = "Nv", default_value_t = 1e-3)]
    pub nv: f64,
    /// Flory-Huggins mixing parameter.
    #[arg(long, default_value_t = 0.1, allow_hyphen_values = true)]
    pub chi: f64,
}

#[derive(Debug, clap::Args)]
pub struct OutputArgs {
    #[arg(long, default_value = "gelfem-out")]
    pub out_dir: PathBuf,
    /// Format of the nodal and element fields; tables are always CSV.
    #[arg(long, value_enum, default_value_t = FieldFormat::Vtk)]
    pub format: FieldFormat,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Free-swelling cube swept through a range of chemical potentials.
    FreeSwell {
        #[command(flatten)]
        material: MaterialArgs,
        /// Chemical potentials μ/kT: `a:b` (with --steps points), `a:b:n`, `a,b,c` or a single value.
        #[arg(long, default_value = "-0.05:0", allow_hyphen_values = true)]
        mu: String,
        /// Points in a range sweep.
        #[arg(long, default_value_t = 10)]
        steps: usize,
        /// Elements per cube edge.
        #[arg(long, default_value_t = 1)]
        divisions: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Gel bar under axial load at fixed chemical potential.
    Uniaxial {
        #[command(flatten)]
        material: MaterialArgs,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        mu: f64,
        /// Axial stretches from the dry state, in the same forms as --mu.
        /// Defaults to 0.9λ₀..1.25λ₀.
        #[arg(long)]
        lambda1: Option<String>,
        /// Points in a range sweep.
        #[arg(long, default_value_t = 8)]
        steps: usize,
        #[arg(long, value_enum, default_value_t = Control::Displacement)]
        control: Control,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Solves a TOML model file.
    Run {
        model: PathBuf,
        /// Overrides the number of schedule states in the file.
        #[arg(long)]
        steps: Option<usize>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Writes a free-swelling cube model file with the mesh inlined.
    Mesh {
        #[arg(long, default_value_t = 1)]
        nx: usize,
        #[arg(long, default_value_t = 1)]
        ny: usize,
        #[arg(long, default_value_t = 1)]
        nz: usize,
        /// Edge length in the free-swelling state.
        #[arg(long = "L", default_value_t = benchmarks::DEFAULT_EDGE)]
        edge: f64,
        #[command(flatten)]
        material: MaterialArgs,
        /// Reference and target chemical potential: `a:b` or a single value.
        #[arg(long, default_value = "-0.05:0", allow_hyphen_values = true)]
        mu: String,
        #[arg(long, default_value_t = 10)]
        steps: usize,
        /// Directory for `model.toml`; printed to stdout when absent.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Closed-form residuals and finite-difference checks at random states
    /// seeded by GELFEM_SEED.
    Verify {
        #[arg(long, default_value_t = verify::DEFAULT_SAMPLES)]
        samples: usize,
    },
}

/// Parses `a:b`, `a:b:n`, `a,b,c` or `a`.
pub fn parse_sweep(spec: &str, default_points: usize) -> Result<Vec<f64>> {
    let num = |s: &str| {
        s.trim()
            .parse::<f64>()
            .map_err(|_| GelError::Parse(format!("'{}' is not a number in sweep '{spec}'", s.trim())))
    };
    let parts: Vec<&str> = spec.split(':').collect();
    match parts.as_slice() {
        [single] => single.split(',').map(num).collect(),
        [a, b] => Ok(analytic::linspace(num(a)?, num(b)?, default_points)),
        [a, b, n] => {
            let n = n
                .trim()
                .parse()
                .map_err(|_| GelError::Parse(format!("bad point count in sweep '{spec}'")))?;
            Ok(analytic::linspace(num(a)?, num(b)?, n))
        }
        _ => Err(GelError::Parse(format!("cannot parse sweep '{spec}'"))),
    }
    .and_then(|v: Vec<f64>| {
        if v.is_empty() {
            Err(GelError::Parse(format!("sweep '{spec}' is empty")))
        } else {
            Ok(v)
        }
    })
}

fn create(dir: &Path, name: &str) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(dir.join(name))?))
}

fn write_fields(out: &OutputArgs, stem: &str, model: &Model, state: &SolutionState) -> Result<()> {
    match out.format {
        FieldFormat::Vtk => {
            let mut w = create(&out.out_dir, &format!("{stem}.vtk"))?;
            io::vtk::write_vtk(&mut w, model, state)?;
            w.flush()?;
        }
        FieldFormat::Csv => {
            io::csv::write_nodal_fields(create(&out.out_dir, &format!("{stem}_nodes.csv"))?, model, state)?;
            io::csv::write_element_fields(create(&out.out_dir, &format!("{stem}_elements.csv"))?, state)?;
        }
    }
    Ok(())
}

fn free_swell(material: &MaterialArgs, mu: &str, steps: usize, divisions: usize, out: &OutputArgs) -> Result<()> {
    let grid = parse_sweep(mu, steps)?;
    let report = benchmarks::run_free_swell(material.nv, material.chi, &grid, divisions, benchmarks::DEFAULT_EDGE)?;
    fs::create_dir_all(&out.out_dir)?;
    io::csv::write_free_swell_table(create(&out.out_dir, "free_swell_table.csv")?, &report.rows)?;
    io::csv::write_convergence_log(create(&out.out_dir, "convergence.csv")?, &report.states)?;
    let (lo, hi) = grid.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), &m| (l.min(m), h.max(m)));
    let curve = analytic::free_swelling_curve(
        material.nv,
        material.chi,
        &analytic::linspace(lo, hi, if lo < hi { DEFAULT_CURVE_POINTS } else { 1 }),
    )?;
    io::csv::write_free_swelling_curve(create(&out.out_dir, "free_swelling_curve.csv")?, &curve)?;
    write_fields(out, "free_swell", &report.model, report.states.last().expect("non-empty sweep"))?;

    println!("{:>12} {:>14} {:>20} {:>20} {:>10}", "mu/kT", "delta", "lambda_fe", "lambda_exact", "rel_err");
    for r in &report.rows {
        println!(
            "{:>12.6} {:>14.6e} {:>20.15} {:>20.15} {:>10.2e}",
            r.mu_bar, r.delta, r.lambda_fe, r.lambda_analytic, r.rel_error
        );
    }
    println!("max relative error {:.3e}", report.max_rel_error());
    Ok(())
}

fn uniaxial(
    material: &MaterialArgs,
    mu: f64,
    lambda1: Option<&str>,
    steps: usize,
    control: Control,
    out: &OutputArgs,
) -> Result<()> {
    let grid = match lambda1 {
        Some(spec) => parse_sweep(spec, steps)?,
        None => {
            let l0 = material::solve_free_swelling_stretch(material.nv, material.chi, mu)?;
            analytic::linspace(0.9 * l0, 1.25 * l0, steps)
        }
    };
    let report = benchmarks::run_uniaxial(material.nv, material.chi, mu, &grid, control.into())?;
    fs::create_dir_all(&out.out_dir)?;
    io::csv::write_uniaxial_table(create(&out.out_dir, "uniaxial_table.csv")?, &report.rows)?;
    io::csv::write_convergence_log(create(&out.out_dir, "convergence.csv")?, &report.states)?;
    let (lo, hi) = grid.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), &m| (l.min(m), h.max(m)));
    let curve = analytic::uniaxial_curve(
        material.nv,
        material.chi,
        mu,
        &analytic::linspace(lo, hi, if lo < hi { DEFAULT_CURVE_POINTS } else { 1 }),
    )?;
    io::csv::write_uniaxial_curve(create(&out.out_dir, "uniaxial_curve.csv")?, &curve)?;
    if let (Some(m), Some(s)) = (report.models.last(), report.states.last()) {
        write_fields(out, "uniaxial", m, s)?;
    }

    println!(
        "{:>18} {:>18} {:>18} {:>10} {:>12} {:>12}",
        "lambda1", "lambda2_fe", "lambda2_exact", "rel_err", "|P_trans|", "P_axial"
    );
    for r in &report.rows {
        println!(
            "{:>18.12} {:>18.12} {:>18.12} {:>10.2e} {:>12.3e} {:>12.5e}",
            r.lambda1_fe, r.lambda2_fe, r.lambda2_analytic, r.rel_error, r.transverse_stress, r.axial_stress
        );
    }
    println!("max relative error {:.3e}", report.max_rel_error());
    Ok(())
}

fn run_model(path: &Path, steps: Option<usize>, out: &OutputArgs) -> Result<()> {
    let mut file = ModelFile::load(path)?;
    if let Some(n) = steps {
        file.schedule.n_steps = n;
    }
    let model = file.to_model()?;
    let states = solver::run_continuation(&model)?;
    fs::create_dir_all(&out.out_dir)?;
    io::csv::write_convergence_log(create(&out.out_dir, "convergence.csv")?, &states)?;
    let last = states.last().expect("schedule has at least one state");
    write_fields(out, "result", &model, last)?;
    println!(
        "{} states, final mu/kT = {}, load factor = {}, final residual {:.3e}",
        states.len(),
        last.mu_bar,
        last.load_factor,
        last.final_residual()
    );
    Ok(())
}

fn mesh(divisions: [usize; 3], edge: f64, material: &MaterialArgs, mu: &str, steps: usize, out_dir: Option<&Path>) -> Result<()> {
    let mus = parse_sweep(mu, 2)?;
    let (mu0, target) = (mus[0], *mus.last().expect("non-empty"));
    let file = io::model_file::free_swell_cube(material.nv, material.chi, mu0, target, divisions, edge, steps)
        .with_inline_mesh()?;
    // Validate before emitting.
    file.to_model()?;
    let text = file.to_toml_string()?;
    match out_dir {
        Some(dir) => {
            fs::create_dir_all(dir)?;
            fs::write(dir.join("model.toml"), text)?;
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn run_verify(samples: usize) -> Result<bool> {
    let seed = verify::seed_from_env()?;
    let report = verify::run_verification(seed, samples)?;
    println!("seed {seed}");
    for c in &report.checks {
        println!(
            "{} {:<50} max error {:.3e} (tol {:.0e}, {} samples)",
            if c.passed() { "PASS" } else { "FAIL" },
            c.name,
            c.max_error,
            c.tolerance,
            c.samples
        );
    }
    Ok(report.passed())
}

/// Executes a parsed command line and returns the process exit code.
pub fn execute(cli: Cli) -> i32 {
    let result = match &cli.command {
        Command::FreeSwell {
            material,
            mu,
            steps,
            divisions,
            output,
        } => free_swell(material, mu, *steps, *divisions, output).map(|_| true),
        Command::Uniaxial {
            material,
            mu,
            lambda1,
            steps,
            control,
            output,
        } => uniaxial(material, *mu, lambda1.as_deref(), *steps, *control, output).map(|_| true),
        Command::Run { model, steps, output } => run_model(model, *steps, output).map(|_| true),
        Command::Mesh {
            nx,
            ny,
            nz,
            edge,
            material,
            mu,
            steps,
            out_dir,
        } => mesh([*nx, *ny, *nz], *edge, material, mu, *steps, out_dir.as_deref()).map(|_| true),
        Command::Verify { samples } => run_verify(*samples),
    };
    match result {
        Ok(true) => exit_code::SUCCESS,
        Ok(false) => exit_code::CHECK_FAILED,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

/// Parses arguments and runs; usage errors exit with code 2.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(cli),
        Err(e) => {
            let _ = e.print();
            if e.use_stderr() {
                exit_code::PARSE
            } else {
                exit_code::SUCCESS
            }
        }
    }
}
