use clap::{Parser, Subcommand};
use drazinlab_cli::campaign::{run_campaign, CampaignConfig};
use drazinlab_cli::commands::{
    run_check, run_cline, run_counterexample, run_drazin, run_generate, run_jacobson, CmdOutput,
};
use drazinlab_cli::report::render;
use drazinlab_cli::{parse_dims, resolve_eps, CliError, EXIT_FAIL, EXIT_OK};
use drazinlab_core::{FieldSpec, Strategy};
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "drazinlab",
    version,
    about = "Drazin-family inverses over exact and floating fields, \
             with oracle-checked product-swap identities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the Drazin inverse, index, and spectral idempotent of a matrix
    Drazin {
        /// Matrix JSON file, or - for stdin
        #[arg(long)]
        input: String,
        /// Relative tolerance for the complex field
        #[arg(long)]
        eps: Option<f64>,
    },
    /// Evaluate one entwining condition (c1..c6) on a quadruple or triple
    Check {
        /// Elements JSON file ({"a","b","c"} with optional "d"), or - for stdin
        #[arg(long)]
        input: String,
        /// One of c1, c2, c3, c4, c5, c6
        #[arg(long)]
        condition: String,
        #[arg(long)]
        eps: Option<f64>,
    },
    /// Evaluate a product-swap inverse formula against its oracle
    Cline {
        #[arg(long)]
        input: String,
        /// full | two-condition | triple | triple-c6
        #[arg(long, default_value = "full")]
        variant: String,
        /// Evaluate even when the gating condition fails
        #[arg(long)]
        force: bool,
        #[arg(long)]
        eps: Option<f64>,
    },
    /// Evaluate the 1-minus-product inverse formula against its oracle
    Jacobson {
        #[arg(long)]
        input: String,
        /// full | group | triple
        #[arg(long, default_value = "full")]
        variant: String,
        /// Evaluate even when the gating condition fails
        #[arg(long)]
        force: bool,
        #[arg(long)]
        eps: Option<f64>,
    },
    /// Generate instances in bulk, verify every formula, write a report
    Campaign {
        /// classic | mosic | aba_aca | nilpotent_ac | rejection
        #[arg(long)]
        strategy: String,
        /// rational | gfp | complex
        #[arg(long)]
        field: String,
        /// Prime modulus (gfp only)
        #[arg(long)]
        p: Option<u64>,
        /// Single size, comma list, or inclusive span: 3 or 2,4 or 2..4
        #[arg(long, default_value = "2..4")]
        dims: String,
        #[arg(long)]
        trials: usize,
        /// Seed of the first trial; trial i uses seed0 + i
        #[arg(long, default_value_t = 0)]
        seed0: u64,
        /// Magnitude bound for sampled entries over exact fields
        #[arg(long, default_value_t = 3)]
        entry_bound: i64,
        /// Also write the report to this file
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        eps: Option<f64>,
    },
    /// Produce one seeded quadruple or triple as an elements JSON file
    Generate {
        /// classic | mosic | aba_aca | nilpotent_ac | rejection
        #[arg(long)]
        strategy: String,
        /// rational | gfp | complex
        #[arg(long)]
        field: String,
        /// Prime modulus (gfp only)
        #[arg(long)]
        p: Option<u64>,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        entry_bound: i64,
        #[arg(long)]
        eps: Option<f64>,
    },
    /// Recompute the built-in 2x2 counterexample triple and compare
    /// every commonly quoted value against the machine result
    Counterexample,
}

fn read_input(path: &str) -> Result<String, CliError> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| CliError::Input(format!("cannot read stdin: {e}")))?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("cannot read {path}: {e}")))
    }
}

fn parse_field(name: &str, p: Option<u64>, eps: f64) -> Result<FieldSpec, CliError> {
    match name {
        "rational" => Ok(FieldSpec::rational()),
        "gfp" => {
            let p = p.ok_or_else(|| CliError::Input("field gfp needs --p".into()))?;
            FieldSpec::prime(p).map_err(|e| CliError::Input(e.to_string()))
        }
        "complex" => FieldSpec::complex(eps).map_err(|e| CliError::Input(e.to_string())),
        other => Err(CliError::Input(format!(
            "unknown field \"{other}\"; expected rational, gfp, or complex"
        ))),
    }
}

fn campaign_output(
    strategy: String,
    field: String,
    p: Option<u64>,
    dims: String,
    trials: usize,
    seed0: u64,
    entry_bound: i64,
    out: Option<PathBuf>,
    eps: Option<f64>,
) -> CmdOutput {
    let go = || -> Result<CmdOutput, CliError> {
        let eps = resolve_eps(eps)?;
        let strategy = Strategy::parse(&strategy)
            .ok_or_else(|| CliError::Input(format!("unknown strategy \"{strategy}\"")))?;
        let field = parse_field(&field, p, eps)?;
        let cfg = CampaignConfig {
            strategy,
            field,
            dims: parse_dims(&dims)?,
            trials,
            seed0,
            entry_bound,
        };
        let run = run_campaign(&cfg)?;
        let text = render(&run.report);
        if let Some(path) = &out {
            std::fs::write(path, &text).map_err(|e| CliError::Io {
                path: path.display().to_string(),
                message: e.to_string(),
            })?;
        }
        let code = if run.failures == 0 { EXIT_OK } else { EXIT_FAIL };
        Ok(CmdOutput::with_code(code, text))
    };
    go().unwrap_or_else(CmdOutput::from_error)
}

fn dispatch(cli: Cli) -> CmdOutput {
    match cli.command {
        Command::Drazin { input, eps } => match resolve_eps(eps).and_then(|e| {
            read_input(&input).map(|text| (text, e))
        }) {
            Ok((text, eps)) => run_drazin(&text, eps),
            Err(e) => CmdOutput::from_error(e),
        },
        Command::Check { input, condition, eps } => match resolve_eps(eps)
            .and_then(|e| read_input(&input).map(|text| (text, e)))
        {
            Ok((text, eps)) => run_check(&text, &condition, eps),
            Err(e) => CmdOutput::from_error(e),
        },
        Command::Cline { input, variant, force, eps } => match resolve_eps(eps)
            .and_then(|e| read_input(&input).map(|text| (text, e)))
        {
            Ok((text, eps)) => run_cline(&text, &variant, force, eps),
            Err(e) => CmdOutput::from_error(e),
        },
        Command::Jacobson { input, variant, force, eps } => match resolve_eps(eps)
            .and_then(|e| read_input(&input).map(|text| (text, e)))
        {
            Ok((text, eps)) => run_jacobson(&text, &variant, force, eps),
            Err(e) => CmdOutput::from_error(e),
        },
        Command::Campaign {
            strategy,
            field,
            p,
            dims,
            trials,
            seed0,
            entry_bound,
            out,
            eps,
        } => campaign_output(strategy, field, p, dims, trials, seed0, entry_bound, out, eps),
        Command::Generate { strategy, field, p, dim, seed, entry_bound, eps } => {
            match resolve_eps(eps).and_then(|e| parse_field(&field, p, e)) {
                Ok(field) => run_generate(&strategy, field, dim, seed, entry_bound),
                Err(e) => CmdOutput::from_error(e),
            }
        }
        Command::Counterexample => run_counterexample(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = dispatch(cli);
    if !out.stdout.is_empty() {
        print!("{}", out.stdout);
    }
    if !out.stderr.is_empty() {
        eprint!("{}", out.stderr);
    }
    ExitCode::from(out.exit_code.clamp(0, 255) as u8)
}
