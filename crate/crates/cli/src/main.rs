//! `circ`: transforms, convolutions, eigenvalues, verification suites and
//! benchmarks over array files.
//!
//! Exit codes: 0 success, 1 a verification report failed, 2 usage or
//! format error, 3 an internal cross-check disagreed.

mod commands;
mod document;
mod error;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(name = "circ", version, about = "Circulant matrices, circular convolution and the DFT")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ConvMethodArg {
    Naive,
    Spectral,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OrderingArg {
    Standard,
    Alternate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    Lemma1,
    Lemma2,
    Theorem1,
    Theorem2,
    Exercises,
    All,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// DFT of a vector (eigenvalues of its circulant, standard order).
    Dft {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Inverse DFT of a spectrum document.
    Idft {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Norm-preserving DFT, scaled by 1/sqrt(n).
    DftUnitary {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        inverse: bool,
    },
    /// Circular convolution of two vectors.
    Conv {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long, value_enum, default_value = "spectral")]
        method: ConvMethodArg,
    },
    /// Eigenvalues of the circulant matrix generated by a vector.
    Eig {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "standard")]
        ordering: OrderingArg,
    },
    /// Dense circulant matrix generated by a vector.
    Circmat {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Tests whether a square matrix commutes with the circular shift.
    IsCirculant {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// z-transform at one point per axis, given as `re,im`.
    ZtEval {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long = "z", required = true, allow_hyphen_values = true)]
        z: Vec<String>,
    },
    /// Multidimensional DFT.
    NdDft {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Inverse multidimensional DFT.
    NdIdft {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Circular convolution of two arrays on the same torus.
    NdConv {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
    /// Eigenvalues of the circulant operator with the given impulse response.
    NdEig {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Runs property suites; exits 1 if any property fails.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteArg,
        #[arg(long, default_value_t = 32)]
        n_max: usize,
        /// Overridden by the CIRC_SEED environment variable.
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
    /// Times direct and spectral convolution.
    Bench {
        #[arg(long, value_delimiter = ',', default_values_t = vec![256usize, 1024, 4096])]
        sizes: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_values = ["naive", "spectral"])]
        methods: Vec<String>,
        #[arg(long, default_value_t = 5)]
        runs: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
}

fn env_seed(flag: u64) -> Result<u64, CliError> {
    match std::env::var("CIRC_SEED") {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("CIRC_SEED={s:?} is not an unsigned integer"))),
        Err(_) => Ok(flag),
    }
}

fn dispatch(command: Command) -> Result<commands::Output, CliError> {
    use circulant::bench::ConvolutionMethod;
    use circulant::oracle::Suite;
    use circulant::SpectrumOrdering;

    match command {
        Command::Dft { input } => commands::dft(&input),
        Command::Idft { input } => commands::idft(&input),
        Command::DftUnitary { input, inverse } => commands::dft_unitary(&input, inverse),
        Command::Conv { a, b, method } => commands::conv(
            &a,
            &b,
            match method {
                ConvMethodArg::Naive => ConvolutionMethod::Naive,
                ConvMethodArg::Spectral => ConvolutionMethod::Spectral,
            },
        ),
        Command::Eig { input, ordering } => commands::eig(
            &input,
            match ordering {
                OrderingArg::Standard => SpectrumOrdering::Standard,
                OrderingArg::Alternate => SpectrumOrdering::Alternate,
            },
        ),
        Command::Circmat { input } => commands::circmat(&input),
        Command::IsCirculant { input, tol } => commands::is_circulant(&input, tol),
        Command::ZtEval { input, z } => commands::zt_eval(&input, &z),
        Command::NdDft { input } => commands::nd_dft(&input),
        Command::NdIdft { input } => commands::nd_idft(&input),
        Command::NdConv { a, b } => commands::nd_conv(&a, &b),
        Command::NdEig { input } => commands::nd_eig(&input),
        Command::Verify { suite, n_max, seed } => commands::verify(
            match suite {
                SuiteArg::Lemma1 => Suite::Lemma1,
                SuiteArg::Lemma2 => Suite::Lemma2,
                SuiteArg::Theorem1 => Suite::Theorem1,
                SuiteArg::Theorem2 => Suite::Theorem2,
                SuiteArg::Exercises => Suite::Exercises,
                SuiteArg::All => Suite::All,
            },
            n_max,
            env_seed(seed)?,
        ),
        Command::Bench {
            sizes,
            methods,
            runs,
            seed,
        } => {
            let methods = methods
                .iter()
                .map(|m| m.parse::<ConvolutionMethod>())
                .collect::<Result<Vec<_>, _>>()?;
            commands::bench(&sizes, &methods, runs, env_seed(seed)?)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = dispatch(cli.command).and_then(|output| {
        commands::emit(&output.body, cli.out.as_deref())?;
        Ok(output)
    });
    match result {
        Ok(output) => match output.failure {
            Some(err) => {
                eprintln!("circ: {err}");
                ExitCode::from(err.exit_code())
            }
            None => ExitCode::SUCCESS,
        },
        Err(err) => {
            eprintln!("circ: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
