use clap::{Args, Parser, Subcommand};
use exciton::error::Error;
use exciton::oracle::{self, GridSpec};
use exciton::report::{self, MaterialConfig};
use exciton::series::{self, TailVerdict};
use exciton::{model, qes};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "exciton",
    about = "Verify closed-form claims for a 2D exciton in a parabolic quantum dot"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct GridArgs {
    /// Number of radial grid points for the finite-difference oracle
    #[arg(long, default_value_t = 4000)]
    grid_points: usize,
    /// Truncation radius of the radial grid (scaled units)
    #[arg(long, default_value_t = 12.0)]
    r_max: f64,
}

impl GridArgs {
    fn spec(&self) -> exciton::Result<GridSpec> {
        GridSpec::new(self.r_max, self.grid_points)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Compute the lowest few oracle eigenvalues for given m and g
    Spectrum {
        /// Angular quantum number m (|m| is used)
        #[arg(long, default_value_t = 0)]
        m: u32,
        /// Dimensionless Coulomb coupling g
        #[arg(long)]
        g: f64,
        /// How many eigenvalues to report
        #[arg(long, default_value_t = 5)]
        count: usize,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        /// Write output here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Enumerate all couplings at which the series terminates at a degree
    Qes {
        #[arg(long, default_value_t = 0)]
        m: u32,
        /// Polynomial degree of the terminating series
        #[arg(long)]
        degree: usize,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the claimed closed-form state at one (m, g): series tail,
    /// ODE residual, constraint residual, and oracle comparison
    Check {
        #[arg(long, default_value_t = 0)]
        m: u32,
        #[arg(long)]
        g: f64,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the full refutation pipeline from a material config file
    Refute {
        /// Path to a JSON material-parameter file
        config: PathBuf,
        /// Angular numbers to include (repeatable)
        #[arg(long, default_values_t = [0u32, 1, 2])]
        m: Vec<u32>,
        /// QES degrees to tabulate (repeatable)
        #[arg(long, default_values_t = [1usize, 2, 3])]
        degree: Vec<usize>,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write two-column plot data files next to --out
        #[arg(long)]
        plot_data: bool,
    },
}

fn emit(text: &str, out: &Option<PathBuf>) -> exciton::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn run(cli: Cli) -> exciton::Result<()> {
    match cli.command {
        Command::Spectrum {
            m,
            g,
            count,
            grid,
            format,
            out,
        } => {
            if !g.is_finite() || g < 0.0 {
                return Err(Error::Domain(format!(
                    "coupling g must be finite and non-negative, got {g}"
                )));
            }
            let sp = oracle::spectrum(m, g, grid.spec()?, count)?;
            let text = match format {
                Format::Json => {
                    serde_json::to_string_pretty(&serde_json::json!({
                        "m": m, "g": g,
                        "eigenvalues": sp.eigenvalues,
                        "richardson_error_estimates": sp.errors,
                        "node_counts": sp.node_counts,
                    }))
                    .expect("spectrum serialization")
                        + "\n"
                }
                Format::Csv => {
                    let mut s = String::from("index,alpha_bar,error_estimate,node_count\n");
                    for (i, &e) in sp.eigenvalues.iter().enumerate() {
                        s.push_str(&format!(
                            "{i},{},{},{}\n",
                            report::fmt12(e),
                            report::fmt12(sp.errors[i]),
                            sp.node_counts[i]
                        ));
                    }
                    s
                }
            };
            emit(&text, &out)
        }
        Command::Qes {
            m,
            degree,
            format,
            out,
        } => {
            let solve = qes::qes_points(m, degree)?;
            let text = match format {
                Format::Json => {
                    serde_json::to_string_pretty(&serde_json::json!({
                        "m": m, "degree": degree,
                        "discarded_nonpositive_g2": solve.discarded_nonpositive_g2,
                        "points": solve.points.iter().map(|p| serde_json::json!({
                            "alpha_bar": p.alpha_bar,
                            "g_squared": p.g_squared,
                            "g": p.g(),
                            "exact": p.exact_mode,
                            "alpha_error_bound": p.alpha_error,
                        })).collect::<Vec<_>>(),
                    }))
                    .expect("qes serialization")
                        + "\n"
                }
                Format::Csv => {
                    let mut s =
                        String::from("m,degree,alpha_bar,g_squared,g,exact,alpha_error_bound\n");
                    for p in &solve.points {
                        s.push_str(&format!(
                            "{m},{degree},{},{},{},{},{}\n",
                            report::fmt12(p.alpha_bar),
                            report::fmt12(p.g_squared),
                            report::fmt12(p.g()),
                            p.exact_mode,
                            report::fmt12(p.alpha_error)
                        ));
                    }
                    s
                }
            };
            emit(&text, &out)
        }
        Command::Check {
            m,
            g,
            grid,
            format,
            out,
        } => {
            if !g.is_finite() || g <= 0.0 {
                return Err(Error::Domain(format!(
                    "coupling g must be finite and positive, got {g}"
                )));
            }
            let alpha = model::scaled_quantization_condition(m, 0, g)?;
            let state = series::coefficients(m, g, alpha, 60)?;
            let tail = series::tail_diagnostic(&state)?;
            let candidate = series::published_candidate(m, g);
            let res_grid = series::default_residual_grid();
            let residual = series::candidate_residual(&candidate, alpha, g, &res_grid)?;
            let eq9 = qes::verify_eq9(m, g);
            let spec = grid.spec()?;
            let sp = oracle::spectrum(m, g, spec, 5)?;
            let numerov = oracle::numerov_crosscheck(m, g, (alpha - 1.0, alpha + 1.0)).ok();
            let tail_str = match tail {
                TailVerdict::Terminates { degree } => format!("terminates at degree {degree}"),
                TailVerdict::Grows => "grows".into(),
                TailVerdict::Inconclusive => "inconclusive".into(),
            };
            let closest = sp
                .eigenvalues
                .iter()
                .cloned()
                .min_by(|a, b| (a - alpha).abs().partial_cmp(&(b - alpha).abs()).unwrap())
                .unwrap_or(f64::NAN);
            let text = match format {
                Format::Json => {
                    serde_json::to_string_pretty(&serde_json::json!({
                        "m": m, "g": g,
                        "claimed_alpha_bar": alpha,
                        "series_tail": tail_str,
                        "ode_max_residual": residual.max_abs,
                        "ode_l2_residual": residual.l2_weighted,
                        "constraint_residual_eq9": eq9,
                        "oracle_eigenvalues": sp.eigenvalues,
                        "closest_oracle_eigenvalue": closest,
                        "numerov_eigenvalue_near_claim": numerov,
                    }))
                    .expect("check serialization")
                        + "\n"
                }
                Format::Csv => {
                    let mut s = String::from(
                        "m,g,claimed_alpha_bar,series_tail,ode_max_residual,\
constraint_residual_eq9,closest_oracle_eigenvalue\n",
                    );
                    s.push_str(&format!(
                        "{m},{},{},{tail_str},{},{},{}\n",
                        report::fmt12(g),
                        report::fmt12(alpha),
                        report::fmt12(residual.max_abs),
                        report::fmt12(eq9),
                        report::fmt12(closest)
                    ));
                    s
                }
            };
            emit(&text, &out)
        }
        Command::Refute {
            config,
            m,
            degree,
            grid,
            format,
            out,
            plot_data,
        } => {
            let cfg: MaterialConfig = report::parse_config(&config)?;
            let spec = grid.spec()?;
            let rep = report::run_refutation(&cfg, &m, &degree, spec)?;
            let text = match format {
                Format::Csv => report::report_to_csv(&rep),
                Format::Json => report::report_to_json(&rep) + "\n",
            };
            emit(&text, &out)?;
            if plot_data {
                let dir = out
                    .as_ref()
                    .and_then(|p| p.parent().map(|d| d.to_path_buf()))
                    .unwrap_or_else(|| PathBuf::from("."));
                // A coarse grid keeps the plot files small.
                let plot_spec = GridSpec::new(spec.r_max, 800.min(spec.n_points))?;
                for (name, body) in report::plot_data_files(&rep, plot_spec)? {
                    std::fs::write(dir.join(name), body)?;
                }
            }
            // Exit non-zero only on operational failure; a refutation is a
            // successful run. Per-row oracle errors are surfaced in-band.
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
