use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use texradon_cli::verify::{report, run_suites, VerifyOptions};
use texradon_cli::{tasks, thread_count, TaskError};

#[derive(Parser)]
#[command(
    name = "texradon",
    about = "Crystallographic Radon transform toolkit for rotation-space densities",
    version
)]
struct Cli {
    /// Worker threads for grid evaluation (overrides TEXRADON_THREADS).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Synthesize a random density spectrum and write it as JSON.
    Generate {
        #[arg(long)]
        bandwidth: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Square the draw so the density is nonnegative with mean one.
        #[arg(long)]
        nonneg: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Forward transform a density spectrum to pair-space coefficients.
    Radon {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Also write the transform sampled on a quadrature grid as CSV.
        #[arg(long)]
        grid_out: Option<PathBuf>,
    },
    /// Recover a density spectrum from pair-space coefficients.
    Invert {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Forward transform through the antipodally symmetrized kernel.
    Xray {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Build a certified product lattice on the pair of spheres.
    Lattice {
        #[arg(long)]
        rho: f64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Attach positive cubature weights to a lattice file.
    Cubature {
        #[arg(long)]
        lattice: PathBuf,
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Invert transform samples taken on a weighted lattice.
    DiscreteInvert {
        #[arg(long)]
        cubature: PathBuf,
        #[arg(long)]
        samples: PathBuf,
        #[arg(long)]
        bandwidth: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Compare pointwise inversion formulas against the true density.
    Matthies {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 4)]
        count: usize,
        #[arg(long, default_value_t = 5)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the analytic self-check suites.
    Verify {
        /// One of: harmonics, rotations, radon, sphere3, sampling.
        #[arg(long)]
        suite: Option<String>,
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = 20)]
        seed: u64,
        /// Negative-control scale on the 4π normalization; keep at 1.0.
        #[arg(long, default_value_t = 1.0)]
        four_pi_scale: f64,
    },
    /// Chain generate, forward, invert, and discrete stages end to end.
    Pipeline {
        #[arg(long, default_value_t = 3)]
        bandwidth: usize,
        #[arg(long, default_value_t = 9)]
        seed: u64,
        /// Comma-separated subset of: forward-invert, xray, discrete.
        #[arg(long)]
        stages: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> Result<(), TaskError> {
    let threads = thread_count(cli.threads);
    match cli.command {
        Command::Generate {
            bandwidth,
            seed,
            nonneg,
            out,
        } => {
            let outcome = tasks::generate(bandwidth, seed, nonneg, &out)?;
            match outcome.grid_min {
                Some(min) => println!(
                    "wrote bandwidth-{} nonnegative density (grid min {:.3e}) to {}",
                    outcome.bandwidth,
                    min,
                    out.display()
                ),
                None => println!(
                    "wrote bandwidth-{} density to {}",
                    outcome.bandwidth,
                    out.display()
                ),
            }
        }
        Command::Radon {
            input,
            out,
            grid_out,
        } => {
            tasks::forward(&input, &out, grid_out.as_deref(), threads)?;
            println!("wrote pair-space coefficients to {}", out.display());
            if let Some(grid) = grid_out {
                println!("wrote grid samples to {}", grid.display());
            }
        }
        Command::Invert { input, out } => {
            tasks::invert(&input, &out)?;
            println!("wrote recovered density to {}", out.display());
        }
        Command::Xray { input, out } => {
            tasks::xray(&input, &out)?;
            println!("wrote symmetrized coefficients to {}", out.display());
        }
        Command::Lattice { rho, out } => {
            let outcome = tasks::lattice(rho, &out)?;
            println!(
                "wrote {}-point lattice (separation {:.4}, covering {:.4}) to {}",
                outcome.points,
                outcome.separation,
                outcome.covering,
                out.display()
            );
        }
        Command::Cubature {
            lattice,
            degree,
            out,
        } => {
            let outcome = tasks::cubature(&lattice, degree, &out)?;
            println!(
                "wrote degree-{} weights (residual {:.3e}, weight range [{:.3e}, {:.3e}]) to {}",
                degree,
                outcome.residual,
                outcome.min_weight,
                outcome.max_weight,
                out.display()
            );
        }
        Command::DiscreteInvert {
            cubature,
            samples,
            bandwidth,
            out,
        } => {
            let outcome = tasks::discrete_invert_files(&cubature, &samples, bandwidth, &out)?;
            println!(
                "recovered bandwidth-{} density from {} samples (moment dim {}, rotation dim {}); wrote {}",
                bandwidth,
                outcome.sample_count,
                outcome.moment_space_dim,
                outcome.rotation_space_dim,
                out.display()
            );
        }
        Command::Matthies {
            input,
            count,
            seed,
            out,
        } => {
            let outcome = tasks::matthies(&input, count, seed, &out, threads)?;
            println!(
                "wrote {} comparison rows (max relative error {:.3e}) to {}",
                outcome.rows,
                outcome.max_rel_err,
                out.display()
            );
        }
        Command::Verify {
            suite,
            json,
            seed,
            four_pi_scale,
        } => {
            let opt = VerifyOptions {
                seed,
                four_pi_scale,
            };
            let checks = run_suites(suite.as_deref(), &opt)?;
            if !report(&checks, json) {
                return Err(TaskError::Tolerance("verification checks failed".into()));
            }
        }
        Command::Pipeline {
            bandwidth,
            seed,
            stages,
            out,
        } => {
            let report = tasks::pipeline(bandwidth, seed, stages.as_deref(), out.as_deref())?;
            println!(
                "pipeline: {} ({} stages)",
                if report.pass { "PASS" } else { "FAIL" },
                report.stages.len()
            );
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
