//! `muntz`: command-line driver for the Jacobi-Müntz experiments.
//!
//! Every subcommand writes one CSV table (to `--output` or stdout). Exit
//! status is 2 when an argument violates a constraint and 1 when the
//! computation itself fails.

mod commands;
mod table;

use std::fs::File;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use muntz_core::ek::NumericOptions;

use commands::CliError;

#[derive(Parser, Debug)]
#[command(name = "muntz", version, about = "Jacobi-Müntz spectral experiments with CSV output")]
#[command(after_help = "\
Every table starts with one '#' comment line recording the command, all \
parameters and the program version, followed by a header row. Reals are \
written with 17 significant digits. MUNTZ_QUAD_NODES sets the node count \
of numerically evaluated fractional integrals (default 64).

Exit status: 0 success, 1 numerical failure, 2 invalid arguments.")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Jacobi-Müntz family parameters. Unset values take the subcommand's defaults.
#[derive(Args, Debug, Clone, Default)]
pub struct FamilyArgs {
    /// Jacobi exponent alpha (> -1).
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: Option<f64>,
    /// Jacobi exponent beta (> -1).
    #[arg(long, allow_negative_numbers = true)]
    pub beta: Option<f64>,
    /// Fractional order mu (> 0).
    #[arg(long, allow_negative_numbers = true)]
    pub mu: Option<f64>,
    /// Map exponent sigma (> 0).
    #[arg(long, allow_negative_numbers = true)]
    pub sigma: Option<f64>,
    /// Erdélyi-Kober shift eta.
    #[arg(long, allow_negative_numbers = true)]
    pub eta: Option<f64>,
    /// Right endpoint b (> 0).
    #[arg(long, allow_negative_numbers = true)]
    pub b: Option<f64>,
    /// Family kind, 1 or 2.
    #[arg(long)]
    pub kind: Option<u8>,
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    /// Write the CSV here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct TimeArgs {
    /// Final time T.
    #[arg(long, allow_negative_numbers = true)]
    pub t_final: Option<f64>,
    /// Relative tolerance of the time integrator.
    #[arg(long, default_value_t = 1e-10)]
    pub rtol: f64,
    /// Absolute tolerance of the time integrator.
    #[arg(long, default_value_t = 1e-12)]
    pub atol: f64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Nodes and weights of the base and reweighted Gauss-Jacobi-Müntz rules.
    #[command(after_help = "CSV columns: j,node,w_base,w_gjmqr1,w_gjmqr2 (n + 1 rows).\n\
Defaults: alpha=0.5 beta=1.5 mu=0.5 sigma=0.5 eta=2 b=10 n=50.")]
    QuadNodes {
        #[command(flatten)]
        family: FamilyArgs,
        /// Rules have n + 1 nodes.
        #[arg(long, default_value_t = 50)]
        n: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Gram matrix of the family under its reweighted rule versus the exact norms.
    #[command(after_help = "CSV columns: n,m,gram,expected,rel_dev, one row per pair n, m <= N;\n\
rel_dev is |gram - expected| / sqrt(gamma_n gamma_m).\n\
Defaults: kind=1 alpha=0.5 beta=1.5 mu=0.5 sigma=0.5 eta=-3 b=1 n=12.")]
    OrthoCheck {
        #[command(flatten)]
        family: FamilyArgs,
        /// Largest degree N.
        #[arg(long, default_value_t = 12)]
        n: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Sturm-Liouville eigenvalues, their n^(2 mu) scaling, and a numeric
    /// integral-after-derivative check of the first-kind functions.
    #[command(after_help = "CSV columns: n,lambda1,lambda2,scaled1,scaled2,inverse_residual.\n\
Rows n = 1..=N, then 10, 20, 50, 100, ... up to and including --n-max.\n\
scaled_k = lambda_k / n^(2 mu). inverse_residual is the relative max deviation of\n\
I^mu D^mu J_n from J_n at five interior points, evaluated numerically with\n\
MUNTZ_QUAD_NODES nodes; it is left empty for n > N.\n\
Defaults: alpha=1 beta=2 mu=0.75 sigma=0.5 eta=0.5 b=1 n=8 n-max=10000.")]
    EigenCheck {
        #[command(flatten)]
        family: FamilyArgs,
        /// Largest degree N with the numeric check.
        #[arg(long, default_value_t = 8)]
        n: usize,
        /// Largest degree listed.
        #[arg(long, default_value_t = 10_000)]
        n_max: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Weighted projection errors for degrees 1..=n-max.
    #[command(after_help = "CSV columns: n,l2_error,rel_l2_error,linf_error,abs_last_coeff.\n\
--case 1: u = x^(sigma(beta-eta-mu)) sin(x^sigma), defaults b=784.\n\
--case 2: u = x^(sigma(beta-eta-mu)) |x^sigma - b^sigma/2|^2.5, defaults b=1.\n\
Other defaults: kind=1 alpha=0.5 beta=1.5 mu=0.5 sigma=0.5 eta=-3 n-max=40.")]
    Project {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = 40)]
        n_max: usize,
        /// Target function, 1 (smooth) or 2 (kink).
        #[arg(long, default_value_t = 1)]
        case: u8,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Steady problem K2 D^mu y + K1 y = f with exact y = x^(sigma nu) + 7 x^(2 sigma nu).
    #[command(after_help = "CSV columns: j,node,numeric,exact,abs_err (collocation nodes).\n\
Defaults: kind=1 alpha=0.5 beta=1.5 mu=1.5 sigma=0.5 eta=-3 b=1 nu=3 k1=k2=1 n=20.")]
    Ode {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        steady: SteadyArgs,
        #[arg(long, default_value_t = 20)]
        n: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Steady problem for n = 1..=n-max in the Jacobi-Müntz and raw monomial bases.
    #[command(after_help = "CSV columns: n,err_inf,cond_jmf,cond_muntz.\n\
err_inf is the max nodal error of the Jacobi-Müntz solution; cond_* are 2-norm\n\
condition numbers of the two collocation matrices. Defaults as for `ode`, n-max=100.")]
    OdeSweep {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        steady: SteadyArgs,
        #[arg(long, default_value_t = 100)]
        n_max: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Fractional diffusion u_t = d D^mu u + s with d = -1/(1 + x t) and exact u = x^(sigma nu) sin(t^2).
    #[command(after_help = "CSV columns: j,node,numeric,exact,abs_err at t = T.\n\
Defaults: kind=1 alpha=0.5 beta=3.5 mu=1.5 sigma=0.5 eta=-1 b=1 nu=7 n=10 t-final=5.")]
    Pde {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = 10)]
        n: usize,
        #[arg(long, default_value_t = 7.0)]
        nu: f64,
        #[command(flatten)]
        time: TimeArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Burgers' equation u_t = eps u_xx - u u_x + s with a second-kind basis.
    #[command(after_help = "CSV columns: j,node,numeric,exact,abs_err at t = T.\n\
--case 0: zero source and zero initial data (exact u = 0).\n\
--case 1: u = sqrt(1 - sqrt x) sqrt x sin(sqrt x) cos(t^2), defaults alpha=0.5 beta=2 eta=2.\n\
--case 2: u = sqrt(1 - sqrt x) sqrt x cos(sqrt x) cos(t^2), defaults alpha=0.5 beta=1 eta=1.\n\
Other defaults: kind=2 mu=1 sigma=0.5 b=1 n=10 epsilon=0.1 t-final=10.")]
    Burgers {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        burgers: BurgersArgs,
        #[arg(long, default_value_t = 10)]
        n: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Burgers' equation for n = 4, 6, ..., n-max.
    #[command(after_help = "CSV columns: n,e2,einf, errors at t = T on the grid\n\
x_i = (i + 1/2) b / 1000. Defaults as for `burgers`, n-max=12.")]
    BurgersSweep {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        burgers: BurgersArgs,
        #[arg(long, default_value_t = 12)]
        n_max: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Args, Debug, Clone)]
pub struct SteadyArgs {
    /// Exponent nu of the exact solution.
    #[arg(long, default_value_t = 3.0)]
    pub nu: f64,
    /// Coefficient of y.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub k1: f64,
    /// Coefficient of D^mu y.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub k2: f64,
}

#[derive(Args, Debug, Clone)]
pub struct BurgersArgs {
    /// Manufactured solution: 0 (zero data), 1 or 2.
    #[arg(long, default_value_t = 1)]
    pub case: u8,
    /// Viscosity.
    #[arg(long, default_value_t = 0.1, allow_negative_numbers = true)]
    pub epsilon: f64,
    #[command(flatten)]
    pub time: TimeArgs,
}

impl Command {
    fn output(&self) -> Option<&Path> {
        let out = match self {
            Command::QuadNodes { out, .. }
            | Command::OrthoCheck { out, .. }
            | Command::EigenCheck { out, .. }
            | Command::Project { out, .. }
            | Command::Ode { out, .. }
            | Command::OdeSweep { out, .. }
            | Command::Pde { out, .. }
            | Command::Burgers { out, .. }
            | Command::BurgersSweep { out, .. } => out,
        };
        out.output.as_deref()
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    // reject a malformed node count up front, whichever command runs
    NumericOptions::from_env().map_err(CliError::from)?;
    // open the destination before any long computation
    let sink = match cli.command.output() {
        Some(p) => Some((File::create(p).map_err(|e| CliError::Output(format!("{}: {e}", p.display())))?, p.to_path_buf())),
        None => None,
    };
    let text = match cli.command {
        Command::QuadNodes { family, n, .. } => commands::quad_nodes(&family, n)?,
        Command::OrthoCheck { family, n, .. } => commands::ortho_check(&family, n)?,
        Command::EigenCheck { family, n, n_max, .. } => commands::eigen_check(&family, n, n_max)?,
        Command::Project { family, n_max, case, .. } => commands::project(&family, n_max, case)?,
        Command::Ode { family, steady, n, .. } => commands::ode(&family, &steady, n)?,
        Command::OdeSweep { family, steady, n_max, .. } => commands::ode_sweep(&family, &steady, n_max)?,
        Command::Pde { family, n, nu, time, .. } => commands::pde(&family, n, nu, &time)?,
        Command::Burgers { family, burgers, n, .. } => commands::burgers(&family, &burgers, n)?,
        Command::BurgersSweep { family, burgers, n_max, .. } => commands::burgers_sweep(&family, &burgers, n_max)?,
    };
    emit(&text, sink)
}

fn emit(text: &str, sink: Option<(File, PathBuf)>) -> Result<(), CliError> {
    match sink {
        Some((mut file, p)) => file
            .write_all(text.as_bytes())
            .and_then(|_| file.flush())
            .map_err(|e| CliError::Output(format!("{}: {e}", p.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::Output(format!("stdout: {e}")))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("muntz: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
