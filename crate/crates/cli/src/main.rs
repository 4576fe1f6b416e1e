use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mannheim_cli::commands::{
    cmd_frames, cmd_mesh, cmd_offset, cmd_reconstruct, cmd_study, emit_json, MeshOptions, NumericsFlags,
};
use mannheim_cli::spec_file::{read_json, ProfileFile, StudyInput, SurfaceSpecFile};
use mannheim_cli::{CliError, CliResult};
use mannheim_core::mannheim::MannheimParams;
use mannheim_core::numerics::{DerivativeMode, Quadrature};

#[derive(Parser)]
#[command(name = "mannheim", version, about = "Dual Darboux frames and Mannheim offsets of ruled surfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum QuadratureArg {
    Simpson,
    Trapezoid,
}

#[derive(Clone, Copy, ValueEnum)]
enum DerivArg {
    DualAd,
    CentralFd,
}

#[derive(Args)]
struct Numerics {
    #[arg(long, value_enum)]
    quadrature: Option<QuadratureArg>,
    #[arg(long, value_enum)]
    deriv: Option<DerivArg>,
    #[arg(long)]
    fd_step: Option<f64>,
    /// Residual tolerance (default 1e-8, or 1e-6 with central differences).
    #[arg(long)]
    tolerance: Option<f64>,
}

impl Numerics {
    fn flags(&self) -> NumericsFlags {
        NumericsFlags {
            quadrature: self.quadrature.map(|q| match q {
                QuadratureArg::Simpson => Quadrature::Simpson,
                QuadratureArg::Trapezoid => Quadrature::Trapezoid,
            }),
            derivative_mode: self.deriv.map(|d| match d {
                DerivArg::DualAd => DerivativeMode::DualAd,
                DerivArg::CentralFd => DerivativeMode::CentralFd,
            }),
            fd_step: self.fd_step,
            tolerance: self.tolerance,
        }
    }
}

#[derive(Args)]
struct SurfaceInput {
    /// Surface spec JSON.
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// Overrides the sample count of the spec.
    #[arg(long)]
    samples: Option<usize>,
}

impl SurfaceInput {
    fn spec(&self) -> CliResult<SurfaceSpecFile> {
        Ok(SurfaceSpecFile::read(&self.input)?.with_samples(self.samples))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Frame and invariants at every sample, as CSV.
    Frames {
        #[command(flatten)]
        io: SurfaceInput,
        #[command(flatten)]
        numerics: Numerics,
    },
    /// Builds the Mannheim offset and writes a JSON report and a CSV table.
    Offset {
        #[command(flatten)]
        io: SurfaceInput,
        #[command(flatten)]
        numerics: Numerics,
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        mannheim_c: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        mannheim_cstar: f64,
    },
    /// OBJ mesh of the surface, and of its offset when --mannheim-c is given.
    Mesh {
        #[command(flatten)]
        io: SurfaceInput,
        #[command(flatten)]
        numerics: Numerics,
        /// `v_min,v_max`.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_values_t = [-1.0, 1.0])]
        v_range: Vec<f64>,
        #[arg(long, default_value_t = 11)]
        v_samples: usize,
        #[arg(long, allow_hyphen_values = true)]
        mannheim_c: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        mannheim_cstar: Option<f64>,
    },
    /// Integrates an invariant profile and re-measures the result.
    Reconstruct {
        /// Profile JSON.
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        samples: Option<usize>,
        #[command(flatten)]
        numerics: Numerics,
    },
    /// Converts between an oriented line and its dual unit vector.
    Study {
        /// JSON with `point` and `dir`, or `a` and `a_star`.
        #[arg(long)]
        input: PathBuf,
        /// Defaults to standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Frames { io, numerics } => {
            cmd_frames(&io.spec()?, &numerics.flags().config()?, &io.out)?;
        }
        Command::Offset { io, numerics, mannheim_c, mannheim_cstar } => {
            let params = MannheimParams::new(mannheim_c, mannheim_cstar)?;
            cmd_offset(&io.spec()?, params, &numerics.flags().config()?, &io.out)?.verdict()?;
        }
        Command::Mesh { io, numerics, v_range, v_samples, mannheim_c, mannheim_cstar } => {
            let offset = match (mannheim_c, mannheim_cstar) {
                (None, None) => None,
                (c, cs) => Some(MannheimParams::new(c.unwrap_or(1.0), cs.unwrap_or(0.0))?),
            };
            let [v_min, v_max] = v_range[..] else {
                return Err(CliError::spec("--v-range takes two values: v_min,v_max"));
            };
            let opts = MeshOptions { v_range: (v_min, v_max), v_samples, offset };
            cmd_mesh(&io.spec()?, opts, &numerics.flags().config()?, &io.out)?;
        }
        Command::Reconstruct { input, out, samples, numerics } => {
            let mut profile: ProfileFile = read_json(&input)?;
            if let Some(n) = samples {
                profile.domain.samples = n;
            }
            let r = cmd_reconstruct(&profile, &numerics.flags().config()?, &out)?;
            if !r.residuals.within_tolerance {
                return Err(CliError::tolerance("re-measured profile differs from the input profile"));
            }
        }
        Command::Study { input, out } => {
            let value: StudyInput = read_json(&input)?;
            emit_json(&cmd_study(&value)?, out.as_deref())?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let err = CliError::spec(e.to_string().trim_end().to_string());
            eprintln!("{}", err.to_json());
            return ExitCode::from(err.exit_code() as u8);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
