//! Command implementations behind the `pdmdual` binary.
//!
//! Exit codes: 0 on success (and all checks passing for `verify`), 1 when a
//! verification check fails, 2 on configuration errors. Output is
//! byte-identical for identical configuration: floats are printed with 9
//! significant digits in CSV and 17 in JSON, independent of locale.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use pdmdual::analytic::{
    energy_level, energy_threshold, negative_gamma_energy, negative_gamma_state, Continuation,
    EigenState,
};
use pdmdual::hamiltonian::{CaseId, DualHamiltonian};
use pdmdual::model::{Grid, ModelParameters};
use pdmdual::solver::extrapolated_eigenvalues;
use pdmdual::verify::{run_all, run_suite, CheckReport, Suite, SuiteConfig};

#[derive(Parser)]
#[command(
    name = "pdmdual",
    version,
    about = "Deformed-oscillator spectra, eigenfunctions, figure data, and identity checks \
             for position-dependent-mass Hamiltonians and their self-adjoint duals"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form energy levels with a finite-difference cross-check column
    Spectrum {
        #[arg(long, value_enum, default_value_t = CaseSelection::All)]
        case: CaseSelection,
        #[command(flatten)]
        deformation: DeformationArgs,
        /// highest level index to tabulate
        #[arg(long, default_value_t = 4)]
        n_max: usize,
        /// skip the finite-difference eigenvalue columns
        #[arg(long)]
        no_oracle: bool,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Sampled eigenfunction: original, dual, and probability density columns
    Eigenfunction {
        #[arg(long, value_enum)]
        case: SingleCase,
        /// level index
        #[arg(long, default_value_t = 0)]
        n: usize,
        #[command(flatten)]
        deformation: DeformationArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Effective-potential curves and the 15 lowest levels (figure data)
    Figure1 {
        #[command(flatten)]
        deformation: DeformationArgs,
        #[command(flatten)]
        grid: GridArgs,
        /// directory receiving potentials.csv and levels.csv
        #[arg(long, default_value = "figure1")]
        out_dir: PathBuf,
    },
    /// Run identity suites; exit 0 only if every check passes
    Verify {
        /// suite name or "all"
        #[arg(long, default_value = "all")]
        suite: String,
        #[command(flatten)]
        deformation: DeformationArgs,
        #[command(flatten)]
        grid: GridArgs,
        /// grid points for defining-equation residual checks
        #[arg(long, default_value_t = 48001)]
        residual_points: usize,
        /// number of levels examined per case
        #[arg(long, default_value_t = 5)]
        n_levels: usize,
        /// seed for the deterministic test functions
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// substitute a constant gauge in case b so its checks must fail
        #[arg(long)]
        inject_wrong_gauge: bool,
        /// write the JSON report here instead of standard output
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CaseSelection {
    A,
    B,
    C,
    All,
}

impl CaseSelection {
    fn cases(self) -> Vec<CaseId> {
        match self {
            CaseSelection::A => vec![CaseId::A],
            CaseSelection::B => vec![CaseId::B],
            CaseSelection::C => vec![CaseId::C],
            CaseSelection::All => CaseId::ALL.to_vec(),
        }
    }

    fn is_explicit(self, case: CaseId) -> bool {
        match self {
            CaseSelection::All => false,
            CaseSelection::A => case == CaseId::A,
            CaseSelection::B => case == CaseId::B,
            CaseSelection::C => case == CaseId::C,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SingleCase {
    A,
    B,
    C,
}

impl From<SingleCase> for CaseId {
    fn from(value: SingleCase) -> Self {
        match value {
            SingleCase::A => CaseId::A,
            SingleCase::B => CaseId::B,
            SingleCase::C => CaseId::C,
        }
    }
}

/// Deformation strength: dimensionless directly, or dimensional `gamma`
/// converted with the unit parameters (defaults hbar = m0 = k = 1).
#[derive(Args)]
struct DeformationArgs {
    /// dimensionless deformation of the mass profile m = 1 + gamma_tilde y²
    #[arg(long, allow_negative_numbers = true, conflicts_with = "gamma")]
    gamma_tilde: Option<f64>,
    /// dimensional deformation (1/length²), scaled by hbar/sqrt(m0 k)
    #[arg(long, allow_negative_numbers = true)]
    gamma: Option<f64>,
    /// reduced Planck constant used to scale --gamma
    #[arg(long, default_value_t = 1.0)]
    hbar: f64,
    /// constant reference mass used to scale --gamma
    #[arg(long, default_value_t = 1.0)]
    m0: f64,
    /// spring constant used to scale --gamma
    #[arg(long, default_value_t = 1.0)]
    k: f64,
}

impl DeformationArgs {
    fn resolve(&self, default: Option<f64>) -> Result<f64> {
        match (self.gamma_tilde, self.gamma) {
            (Some(gt), _) => Ok(gt),
            (None, Some(gamma)) => {
                let params = ModelParameters::new(self.hbar, self.m0, self.k, gamma)?;
                Ok(params.gamma_tilde())
            }
            (None, None) => {
                default.ok_or_else(|| anyhow!("provide exactly one of --gamma-tilde or --gamma"))
            }
        }
    }
}

#[derive(Args)]
struct GridArgs {
    #[arg(long, default_value_t = -12.0, allow_negative_numbers = true)]
    y_min: f64,
    #[arg(long, default_value_t = 12.0, allow_negative_numbers = true)]
    y_max: f64,
    #[arg(long, default_value_t = 4001)]
    points: usize,
}

impl GridArgs {
    fn grid(&self) -> Result<Grid> {
        Ok(Grid::new(self.y_min, self.y_max, self.points)?)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// write here instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Parse arguments and dispatch; returns the process exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            2
        }
    }
}

fn execute(command: Command) -> Result<i32> {
    match command {
        Command::Spectrum {
            case,
            deformation,
            n_max,
            no_oracle,
            grid,
            output,
        } => cmd_spectrum(case, &deformation, n_max, no_oracle, &grid, &output),
        Command::Eigenfunction {
            case,
            n,
            deformation,
            grid,
            output,
        } => cmd_eigenfunction(case.into(), n, &deformation, &grid, &output),
        Command::Figure1 {
            deformation,
            grid,
            out_dir,
        } => cmd_figure1(&deformation, &grid, &out_dir),
        Command::Verify {
            suite,
            deformation,
            grid,
            residual_points,
            n_levels,
            seed,
            inject_wrong_gauge,
            out,
        } => cmd_verify(
            &suite,
            &deformation,
            &grid,
            residual_points,
            n_levels,
            seed,
            inject_wrong_gauge,
            out.as_ref(),
        ),
    }
}

// ---------------------------------------------------------------------------
// spectrum

struct SpectrumRow {
    case: CaseId,
    n: usize,
    e_closed_form: f64,
    e_numeric: Option<f64>,
    threshold: Option<f64>,
}

fn cmd_spectrum(
    selection: CaseSelection,
    deformation: &DeformationArgs,
    n_max: usize,
    no_oracle: bool,
    grid_args: &GridArgs,
    output: &OutputArgs,
) -> Result<i32> {
    let gt = deformation.resolve(None)?;
    let grid = grid_args.grid()?;
    let mut rows = Vec::new();
    for case in selection.cases() {
        if gt < 0.0 {
            if case == CaseId::C {
                if selection.is_explicit(case) {
                    bail!("case c has no real continuation to negative gamma_tilde");
                }
                eprintln!("note: skipping case c (no real continuation for gamma_tilde < 0)");
                continue;
            }
            for n in 0..=n_max {
                rows.push(SpectrumRow {
                    case,
                    n,
                    e_closed_form: negative_gamma_energy(case, n, gt)?,
                    e_numeric: None,
                    threshold: None,
                });
            }
            continue;
        }

        let numeric = if no_oracle {
            None
        } else {
            let dual = DualHamiltonian::preset(case, gt)?;
            Some(extrapolated_eigenvalues(&dual, &grid, n_max + 1)?)
        };
        let threshold = energy_threshold(case, gt).ok();
        for n in 0..=n_max {
            rows.push(SpectrumRow {
                case,
                n,
                e_closed_form: energy_level(case, n, gt)?,
                e_numeric: numeric.as_ref().map(|v| v[n]),
                threshold,
            });
        }
    }

    let body = match output.format {
        Format::Csv => spectrum_csv(&rows, no_oracle),
        Format::Json => spectrum_json(&rows, gt, n_max, no_oracle, &grid),
    };
    write_output(output.out.as_ref(), &body)?;
    Ok(0)
}

fn spectrum_csv(rows: &[SpectrumRow], no_oracle: bool) -> String {
    let mut s = String::new();
    if no_oracle {
        s.push_str("case,n,e_closed_form,threshold\n");
    } else {
        s.push_str("case,n,e_closed_form,e_numeric,abs_diff,threshold\n");
    }
    for row in rows {
        let _ = write!(s, "{},{},{}", row.case, row.n, csv_f(row.e_closed_form));
        if !no_oracle {
            match row.e_numeric {
                Some(v) => {
                    let _ = write!(s, ",{},{}", csv_f(v), csv_f((v - row.e_closed_form).abs()));
                }
                None => s.push_str(",n/a,n/a"),
            }
        }
        match row.threshold {
            Some(t) => {
                let _ = writeln!(s, ",{}", csv_f(t));
            }
            None => s.push_str(",n/a\n"),
        }
    }
    s
}

fn spectrum_json(
    rows: &[SpectrumRow],
    gt: f64,
    n_max: usize,
    no_oracle: bool,
    grid: &Grid,
) -> String {
    let mut s = String::new();
    s.push_str("{\n  \"config\": {");
    let _ = write!(
        s,
        "\"command\": \"spectrum\", \"gamma_tilde\": {}, \"n_max\": {}, \"oracle\": {}, {}",
        json_f(gt),
        n_max,
        !no_oracle,
        json_grid(grid)
    );
    s.push_str("},\n  \"rows\": [\n");
    for (i, row) in rows.iter().enumerate() {
        let _ = write!(
            s,
            "    {{\"case\": \"{}\", \"n\": {}, \"e_closed_form\": {}",
            row.case,
            row.n,
            json_f(row.e_closed_form)
        );
        if !no_oracle {
            let _ = write!(
                s,
                ", \"e_numeric\": {}, \"abs_diff\": {}",
                json_opt_f(row.e_numeric),
                json_opt_f(row.e_numeric.map(|v| (v - row.e_closed_form).abs()))
            );
        }
        let _ = write!(s, ", \"threshold\": {}}}", json_opt_f(row.threshold));
        s.push_str(if i + 1 < rows.len() { ",\n" } else { "\n" });
    }
    s.push_str("  ]\n}\n");
    s
}

// ---------------------------------------------------------------------------
// eigenfunction

fn cmd_eigenfunction(
    case: CaseId,
    n: usize,
    deformation: &DeformationArgs,
    grid_args: &GridArgs,
    output: &OutputArgs,
) -> Result<i32> {
    let gt = deformation.resolve(None)?;
    let grid = grid_args.grid()?;
    let state = if gt < 0.0 {
        match negative_gamma_state(case, n, gt)? {
            Continuation::Verified { state, .. } => state,
            Continuation::Unverified { reason } => {
                bail!("no verified state for gamma_tilde {gt}: {reason}")
            }
        }
    } else {
        EigenState::normalized(case, n, gt, &grid)?
    };
    let psi = state.sample_psi(&grid)?;
    let omega = state.sample_omega(&grid)?;
    let rho = state.sample_rho(&grid)?;

    let body = match output.format {
        Format::Csv => {
            let mut s = String::from("y,re_psi,im_psi,re_omega,rho\n");
            for i in 0..grid.n_points() {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{}",
                    csv_f(grid.node(i)),
                    csv_f(psi[i]),
                    csv_f(0.0),
                    csv_f(omega[i]),
                    csv_f(rho[i])
                );
            }
            s
        }
        Format::Json => {
            let mut s = String::new();
            s.push_str("{\n  \"config\": {");
            let _ = write!(
                s,
                "\"command\": \"eigenfunction\", \"case\": \"{}\", \"n\": {}, \
                 \"gamma_tilde\": {}, \"energy\": {}, {}",
                case,
                n,
                json_f(gt),
                json_f(state.energy()),
                json_grid(&grid)
            );
            s.push_str("},\n  \"rows\": [\n");
            for i in 0..grid.n_points() {
                let _ = write!(
                    s,
                    "    {{\"y\": {}, \"re_psi\": {}, \"im_psi\": {}, \"re_omega\": {}, \"rho\": {}}}",
                    json_f(grid.node(i)),
                    json_f(psi[i]),
                    json_f(0.0),
                    json_f(omega[i]),
                    json_f(rho[i])
                );
                s.push_str(if i + 1 < grid.n_points() { ",\n" } else { "\n" });
            }
            s.push_str("  ]\n}\n");
            s
        }
    };
    write_output(output.out.as_ref(), &body)?;
    Ok(0)
}

// ---------------------------------------------------------------------------
// figure1

fn cmd_figure1(
    deformation: &DeformationArgs,
    grid_args: &GridArgs,
    out_dir: &PathBuf,
) -> Result<i32> {
    let gt = deformation.resolve(Some(0.1))?;
    let grid = grid_args.grid()?;
    let duals: Vec<DualHamiltonian> = CaseId::ALL
        .iter()
        .map(|&case| DualHamiltonian::preset(case, gt))
        .collect::<pdmdual::Result<_>>()?;

    let mut potentials = String::from("y,v_a,w_b_effective,w_c_effective\n");
    for i in 0..grid.n_points() {
        let y = grid.node(i);
        let _ = writeln!(
            potentials,
            "{},{},{},{}",
            csv_f(y),
            csv_f(duals[0].w(y)),
            csv_f(duals[1].w(y)),
            csv_f(duals[2].w(y))
        );
    }

    let mut levels = String::from("case,n,energy\n");
    for case in CaseId::ALL {
        for n in 0..5 {
            let _ = writeln!(
                levels,
                "{},{},{}",
                case,
                n,
                csv_f(energy_level(case, n, gt)?)
            );
        }
    }

    fs::create_dir_all(out_dir)
        .with_context(|| format!("creating output directory {}", out_dir.display()))?;
    let potentials_path = out_dir.join("potentials.csv");
    let levels_path = out_dir.join("levels.csv");
    fs::write(&potentials_path, potentials)
        .with_context(|| format!("writing {}", potentials_path.display()))?;
    fs::write(&levels_path, levels)
        .with_context(|| format!("writing {}", levels_path.display()))?;
    eprintln!(
        "wrote {} and {}",
        potentials_path.display(),
        levels_path.display()
    );
    Ok(0)
}

// ---------------------------------------------------------------------------
// verify

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    suite: &str,
    deformation: &DeformationArgs,
    grid_args: &GridArgs,
    residual_points: usize,
    n_levels: usize,
    seed: u64,
    inject_wrong_gauge: bool,
    out: Option<&PathBuf>,
) -> Result<i32> {
    let config = SuiteConfig {
        gamma_tilde: deformation.resolve(Some(0.1))?,
        y_min: grid_args.y_min,
        y_max: grid_args.y_max,
        n_points: grid_args.points,
        residual_points,
        n_levels,
        seed,
        inject_wrong_gauge,
        ..SuiteConfig::default()
    };
    let reports = if suite == "all" {
        run_all(&config)?
    } else {
        run_suite(Suite::from_str(suite)?, &config)?
    };

    let body = verify_json(suite, &config, &reports);
    write_output(out, &body)?;

    let failed = reports.iter().filter(|r| !r.passed).count();
    for report in &reports {
        eprintln!(
            "{} {}{}{}{} measured={:.3e} tolerance={:.3e}",
            if report.passed { "PASS" } else { "FAIL" },
            report.check,
            match report.case {
                Some(case) => format!(" case={case}"),
                None => String::new(),
            },
            match report.n {
                Some(n) => format!(" n={n}"),
                None => String::new(),
            },
            match &report.grid {
                Some(grid) => format!(" grid={grid}"),
                None => String::new(),
            },
            report.measured,
            report.tolerance
        );
    }
    eprintln!(
        "verify: {} checks, {} passed, {} failed",
        reports.len(),
        reports.len() - failed,
        failed
    );
    Ok(if failed == 0 { 0 } else { 1 })
}

fn verify_json(suite: &str, config: &SuiteConfig, reports: &[CheckReport]) -> String {
    let mut s = String::new();
    s.push_str("{\n  \"config\": {");
    let _ = write!(
        s,
        "\"command\": \"verify\", \"suite\": {}, \"gamma_tilde\": {}, \
         \"y_min\": {}, \"y_max\": {}, \"n_points\": {}, \"residual_points\": {}, \
         \"n_levels\": {}, \"seed\": {}, \"inject_wrong_gauge\": {}",
        json_str(suite),
        json_f(config.gamma_tilde),
        json_f(config.y_min),
        json_f(config.y_max),
        config.n_points,
        config.residual_points,
        config.n_levels,
        config.seed,
        config.inject_wrong_gauge
    );
    s.push_str("},\n  \"rows\": [\n");
    for (i, r) in reports.iter().enumerate() {
        let _ = write!(
            s,
            "    {{\"check\": {}, \"case\": {}, \"gamma_tilde\": {}, \"n\": {}, \
             \"grid\": {}, \"measured\": {}, \"tolerance\": {}, \"passed\": {}}}",
            json_str(&r.check),
            match r.case {
                Some(case) => format!("\"{case}\""),
                None => "null".to_string(),
            },
            json_f(r.gamma_tilde),
            match r.n {
                Some(n) => n.to_string(),
                None => "null".to_string(),
            },
            match &r.grid {
                Some(grid) => json_str(grid),
                None => "null".to_string(),
            },
            json_f(r.measured),
            json_f(r.tolerance),
            r.passed
        );
        s.push_str(if i + 1 < reports.len() { ",\n" } else { "\n" });
    }
    s.push_str("  ]\n}\n");
    s
}

// ---------------------------------------------------------------------------
// shared formatting

/// 9 significant digits, locale-independent.
fn csv_f(v: f64) -> String {
    format!("{v:.8e}")
}

/// 17 significant digits, valid JSON number syntax.
fn json_f(v: f64) -> String {
    format!("{v:.16e}")
}

fn json_opt_f(v: Option<f64>) -> String {
    match v {
        Some(v) => json_f(v),
        None => "null".to_string(),
    }
}

fn json_str(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            '\r' => out.push_str("\\r"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn json_grid(grid: &Grid) -> String {
    format!(
        "\"y_min\": {}, \"y_max\": {}, \"n_points\": {}",
        json_f(grid.y_min()),
        json_f(grid.y_max()),
        grid.n_points()
    )
}

fn write_output(path: Option<&PathBuf>, body: &str) -> Result<()> {
    match path {
        Some(path) => {
            fs::write(path, body).with_context(|| format!("writing {}", path.display()))?
        }
        None => std::io::stdout()
            .write_all(body.as_bytes())
            .context("writing to standard output")?,
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_formats_have_contracted_precision() {
        assert_eq!(csv_f(0.475_624_609_862_519_64), "4.75624610e-1");
        assert_eq!(csv_f(5.0), "5.00000000e0");
        assert_eq!(json_f(0.475_624_609_862_519_64), "4.7562460986251964e-1");
        let round_trip: f64 = json_f(0.1).parse().unwrap();
        assert_eq!(round_trip, 0.1);
    }

    #[test]
    fn json_strings_are_escaped() {
        assert_eq!(json_str("plain"), "\"plain\"");
        assert_eq!(json_str("a\"b\\c"), "\"a\\\"b\\\\c\"");
        assert_eq!(json_str("x\ny"), "\"x\\ny\"");
    }

    #[test]
    fn spectrum_csv_shapes() {
        let rows = vec![SpectrumRow {
            case: CaseId::A,
            n: 0,
            e_closed_form: 0.5,
            e_numeric: None,
            threshold: None,
        }];
        assert_eq!(
            spectrum_csv(&rows, false),
            "case,n,e_closed_form,e_numeric,abs_diff,threshold\na,0,5.00000000e-1,n/a,n/a,n/a\n"
        );
        assert_eq!(
            spectrum_csv(&rows, true),
            "case,n,e_closed_form,threshold\na,0,5.00000000e-1,n/a\n"
        );
    }
}
