//! Command-line front end: argument parsing, dispatch, and JSON reports.
//!
//! Exit codes: 0 when every verdict comes out as expected, 1 on a
//! mathematical mismatch, 2 on usage or input errors.

mod commands;
mod report;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

pub use commands::{
    cmd_additive_addmult, cmd_additive_decompose, cmd_additive_hilbert, cmd_additive_tau,
    cmd_coxeter, cmd_flatness, cmd_hecke, cmd_sweep, cmd_theta, cmd_twisted, draw_rng,
    load_matrix, load_point, resolve_vertex, PointFile, SweepTarget,
};
pub use report::{RunReport, Stopwatch, Verdict};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
}

#[derive(Debug, Parser)]
#[command(name = "coxdeform", version, about = "Flat deformations of even Coxeter group algebras")]
pub struct Cli {
    /// Worker threads for parallel checks; 1 gives single-threaded runs.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Record wall-clock timings in the report.
    #[arg(long, global = true)]
    pub timings: bool,
    /// Write the JSON report to this file (`-` for standard output).
    #[arg(long, global = true, value_name = "FILE")]
    pub json: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Orders, finiteness, growth counts and triangle types of a matrix.
    Coxeter {
        #[arg(long)]
        matrix: PathBuf,
        /// Length bound for infinite groups.
        #[arg(long, default_value_t = 8)]
        max_length: usize,
    },
    /// Per-triangle membership of a point, optionally confirmed by dimension.
    Flatness {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        point: PathBuf,
        /// Also compute the dimension of the even-part algebra.
        #[arg(long)]
        dimension: bool,
    },
    /// Membership of a group-like point and sampled confluence checks.
    Theta {
        #[arg(long)]
        matrix: PathBuf,
        /// Defaults to the unit point.
        #[arg(long)]
        point: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        draws: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Twisted group algebra at a group-like point: cocycle, powers, recovery.
    Twisted {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        point: Option<PathBuf>,
        /// Base vertex for recovering the point, by name or 1-based index.
        #[arg(long)]
        base: Option<String>,
        /// Compare structure constants against a Gröbner basis.
        #[arg(long)]
        check_presentation: bool,
    },
    /// Freeness of the Hecke-type algebra for given or sampled parameters.
    Hecke {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        params: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        draws: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Sample with every braid parameter zero.
        #[arg(long)]
        ordinary: bool,
    },
    /// Additive and graded algebras.
    Additive {
        #[command(subcommand)]
        action: AdditiveAction,
    },
    /// Sample points on a component (or off the locus) of a finite triangle
    /// and decide flatness of each by dimension.
    Sweep {
        /// Orders as `p,q,r`.
        #[arg(long, value_parser = parse_triangle)]
        triangle: (u32, u32, u32),
        #[arg(long, value_enum, default_value_t = Target::Group)]
        component: Target,
        #[arg(long, default_value_t = 10)]
        draws: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Subcommand)]
pub enum AdditiveAction {
    /// Hilbert function of the additive algebra against h(z)/(1+z).
    Hilbert {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long = "N", alias = "degree", default_value_t = 6)]
        degree: usize,
        #[arg(long)]
        base: Option<String>,
    },
    /// Image of the differences inside the graded algebra and its complement.
    Decompose {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        base: Option<String>,
    },
    /// Dimensions of the two presentations of the group algebra.
    Addmult {
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Exploratory standard-word counts at a deformation point.
    Tau {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        tau: PathBuf,
        #[arg(long = "N", alias = "degree", default_value_t = 6)]
        degree: usize,
        #[arg(long)]
        base: Option<String>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Group,
    Spin,
    Off,
}

fn parse_triangle(s: &str) -> Result<(u32, u32, u32), String> {
    let parts: Vec<u32> = s
        .split(',')
        .map(|x| x.trim().parse::<u32>().map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    match parts[..] {
        [p, q, r] if p >= 2 && q >= 2 && r >= 2 => Ok((p, q, r)),
        _ => Err("expected three orders >= 2 separated by commas".into()),
    }
}

/// Runs one parsed command.
pub fn execute(cli: &Cli) -> Result<RunReport, CliError> {
    let mut sw = Stopwatch::new(cli.timings);
    let mut report = match &cli.command {
        Command::Coxeter { matrix, max_length } => cmd_coxeter(matrix, *max_length, &mut sw)?,
        Command::Flatness {
            matrix,
            point,
            dimension,
        } => cmd_flatness(matrix, point, *dimension, &mut sw)?,
        Command::Theta {
            matrix,
            point,
            draws,
            seed,
        } => cmd_theta(matrix, point.as_deref(), *draws, *seed, &mut sw)?,
        Command::Twisted {
            matrix,
            point,
            base,
            check_presentation,
        } => cmd_twisted(
            matrix,
            point.as_deref(),
            base.as_deref(),
            *check_presentation,
            &mut sw,
        )?,
        Command::Hecke {
            matrix,
            params,
            draws,
            seed,
            ordinary,
        } => cmd_hecke(matrix, params.as_deref(), *draws, *seed, *ordinary, &mut sw)?,
        Command::Additive { action } => match action {
            AdditiveAction::Hilbert {
                matrix,
                degree,
                base,
            } => cmd_additive_hilbert(matrix, *degree, base.as_deref(), &mut sw)?,
            AdditiveAction::Decompose { matrix, base } => {
                cmd_additive_decompose(matrix, base.as_deref(), &mut sw)?
            }
            AdditiveAction::Addmult { matrix } => cmd_additive_addmult(matrix, &mut sw)?,
            AdditiveAction::Tau {
                matrix,
                tau,
                degree,
                base,
            } => cmd_additive_tau(matrix, tau, *degree, base.as_deref(), &mut sw)?,
        },
        Command::Sweep {
            triangle,
            component,
            draws,
            seed,
        } => {
            let target = match component {
                Target::Group => SweepTarget::Group,
                Target::Spin => SweepTarget::Spin,
                Target::Off => SweepTarget::OffLocus,
            };
            cmd_sweep(*triangle, target, *draws, *seed, &mut sw)?
        }
    };
    sw.finish(&mut report);
    Ok(report)
}

/// Parses the process arguments, runs, prints, and returns the exit code.
pub fn main() -> i32 {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return 2;
        }
    }
    let report = match execute(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let to_stdout = cli.json.as_ref().is_some_and(|p| p.as_os_str() == "-");
    if !to_stdout {
        print!("{}", report.summary());
    }
    match &cli.json {
        Some(p) if p.as_os_str() == "-" => println!("{}", report.to_json()),
        Some(p) => {
            if let Err(e) = std::fs::write(p, report.to_json()) {
                eprintln!("error: {}: {e}", p.display());
                return 2;
            }
        }
        None => {}
    }
    if report.all_ok() {
        0
    } else {
        1
    }
}
