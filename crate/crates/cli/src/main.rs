//! Command-line front end: reads forms and kernels from JSON files, runs one
//! operation, and writes a JSON result document.
//!
//! Exit codes: 0 on success, 1 on malformed input or invalid arguments,
//! 2 when a mathematical precondition fails.

mod commands;
mod io;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use sesqui::Tolerances;

use crate::io::{render, Envelope};

#[derive(Debug)]
pub enum CliError {
    Validation(String),
    Precondition(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Validation(m) | CliError::Precondition(m) => f.write_str(m),
        }
    }
}

impl From<sesqui::Error> for CliError {
    fn from(e: sesqui::Error) -> Self {
        if e.is_precondition() {
            CliError::Precondition(e.to_string())
        } else {
            CliError::Validation(e.to_string())
        }
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Precondition(_) => 2,
        }
    }
}

#[derive(Parser)]
#[command(name = "sesqui", version, about = "Decompositions of nonnegative forms and operator kernels")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// PSD clamp threshold, relative to 1 + λmax
    #[arg(long, global = true, allow_hyphen_values = true)]
    tol_psd: Option<f64>,

    /// Reconstruction and equality tolerance
    #[arg(long, global = true, allow_hyphen_values = true)]
    tol_recon: Option<f64>,

    /// Relative rank threshold
    #[arg(long, global = true, allow_hyphen_values = true)]
    rank_tol: Option<f64>,

    /// Write the result document here instead of stdout
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct FormPair {
    t: PathBuf,
    w: PathBuf,
}

#[derive(Args)]
struct KernelPair {
    k: PathBuf,
    l: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Parallel sum t:w
    ParallelSum(FormPair),
    /// Short of t to the kernel of w
    Short(FormPair),
    /// t = D_w t + singular part
    DecomposeLebesgue(FormPair),
    /// t = t_ac + t_s via the short to ker w
    DecomposeShort(FormPair),
    /// Infimum of t and w, or a certificate that none exists
    Infimum(FormPair),
    /// Whether u is an extreme point of [0, t]
    ExtremeCheck {
        u: PathBuf,
        t: PathBuf,
    },
    /// Representing vectors ξ_y with t(x, y) = (x | ξ_y)_w
    Rn {
        t: PathBuf,
        w: PathBuf,
        /// JSON array of [re, im]; defaults to every standard basis vector
        #[arg(long)]
        vector: Option<PathBuf>,
    },
    /// Lebesgue-type decomposition of kernel K with respect to L
    KernelLebesgue(KernelPair),
    /// Short-type decomposition of kernel K with respect to L
    KernelShort(KernelPair),
    /// Infimum of two kernels
    KernelInfimum(KernelPair),
    /// Dilation of K through X / ker w_L
    Dilate(KernelPair),
    /// Mutual almost domination and segment extreme-point ensembles
    CheckTheorems {
        t: Option<PathBuf>,
        w: Option<PathBuf>,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        dim: usize,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::ParallelSum(_) => "parallel-sum",
            Command::Short(_) => "short",
            Command::DecomposeLebesgue(_) => "decompose-lebesgue",
            Command::DecomposeShort(_) => "decompose-short",
            Command::Infimum(_) => "infimum",
            Command::ExtremeCheck { .. } => "extreme-check",
            Command::Rn { .. } => "rn",
            Command::KernelLebesgue(_) => "kernel-lebesgue",
            Command::KernelShort(_) => "kernel-short",
            Command::KernelInfimum(_) => "kernel-infimum",
            Command::Dilate(_) => "dilate",
            Command::CheckTheorems { .. } => "check-theorems",
        }
    }
}

fn tolerances(cli: &Cli) -> Result<Tolerances, CliError> {
    let mut tol = Tolerances::default();
    if let Some(v) = cli.tol_psd {
        tol.psd = v;
    }
    if let Some(v) = cli.tol_recon {
        tol.recon = v;
    }
    if let Some(v) = cli.rank_tol {
        tol.rank = v;
    }
    tol.validate()?;
    Ok(tol)
}

fn wrap<R: Serialize>(command: &str, tol: Tolerances, result: R) -> String {
    render(&Envelope {
        command: command.to_string(),
        tolerances: tol.into(),
        result,
    })
}

fn run(cli: &Cli) -> Result<String, CliError> {
    let tol = tolerances(cli)?;
    let name = cli.command.name();
    use commands::*;
    let out = match &cli.command {
        Command::ParallelSum(p) => wrap(name, tol, parallel_sum_cmd(&p.t, &p.w, tol)?),
        Command::Short(p) => wrap(name, tol, short_cmd(&p.t, &p.w, tol)?),
        Command::DecomposeLebesgue(p) => wrap(name, tol, decompose_lebesgue_cmd(&p.t, &p.w, tol)?),
        Command::DecomposeShort(p) => wrap(name, tol, decompose_short_cmd(&p.t, &p.w, tol)?),
        Command::Infimum(p) => wrap(name, tol, infimum_cmd(&p.t, &p.w, tol)?),
        Command::ExtremeCheck { u, t } => wrap(name, tol, extreme_check_cmd(u, t, tol)?),
        Command::Rn { t, w, vector } => wrap(name, tol, rn_cmd(t, w, vector.as_deref(), tol)?),
        Command::KernelLebesgue(p) => wrap(name, tol, kernel_lebesgue_cmd(&p.k, &p.l, tol)?),
        Command::KernelShort(p) => wrap(name, tol, kernel_short_cmd(&p.k, &p.l, tol)?),
        Command::KernelInfimum(p) => wrap(name, tol, kernel_infimum_cmd(&p.k, &p.l, tol)?),
        Command::Dilate(p) => wrap(name, tol, dilate_cmd(&p.k, &p.l, tol)?),
        Command::CheckTheorems { t, w, samples, seed, dim } => {
            let files = match (t, w) {
                (Some(t), Some(w)) => Some((t.as_path(), w.as_path())),
                (None, None) => None,
                _ => return Err(CliError::Validation("check-theorems takes zero or two form files".into())),
            };
            wrap(name, tol, check_theorems_cmd(files, *samples, *seed, *dim, tol)?)
        }
    };
    Ok(out)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = run(&cli).and_then(|doc| match &cli.output {
        Some(path) => fs::write(path, doc)
            .map_err(|e| CliError::Validation(format!("{}: {e}", path.display()))),
        None => {
            print!("{doc}");
            Ok(())
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
