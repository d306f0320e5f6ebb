use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use mazurtate_cli::cache::{EigenCache, CACHE_ENV};
use mazurtate_cli::commands::{
    cmd_congruence, cmd_lambda_table, cmd_tau, cmd_theta, cmd_verify, default_forms, load_curves_file, Check, Context,
    Output, TableFormat, VerifyArgs, DEFAULT_BUDGET,
};
use mazurtate_core::mazurtate::Form;

/// Mazur–Tate elements and their Iwasawa invariants for Δ and rational
/// elliptic curves.
#[derive(Parser)]
#[command(name = "mazurtate", version)]
struct Cli {
    /// Directory for cached eigen-symbols.
    #[arg(long, global = true, env = CACHE_ENV)]
    cache_dir: Option<PathBuf>,

    /// Maximum number of symbol evaluations for a single θ.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct FormArgs {
    /// `delta`, or a curve label.
    #[arg(long)]
    form: Option<String>,

    /// Curve label, bundled or from `--curves-file`.
    #[arg(long, conflicts_with = "form")]
    curve: Option<String>,
}

impl FormArgs {
    fn resolve(&self, ctx: &Context) -> Result<Option<Form>> {
        match (&self.form, &self.curve) {
            (Some(f), _) => Ok(Some(ctx.form(f)?)),
            (None, Some(c)) => Ok(Some(Form::Curve(ctx.curve(c)?))),
            (None, None) => Ok(None),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckArg {
    NormRelation,
    LowerBound,
    ThetaCongruence,
    QCongruence,
    TauLemma,
}

#[derive(Subcommand)]
enum Command {
    /// Print τ(1..B) as JSON.
    Tau {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        bound: u64,
    },
    /// Check a_ℓ(E) = τ(ℓ) mod p for curves with a rational p-torsion point.
    Congruence {
        #[arg(long)]
        p: u64,
        #[arg(long, required_unless_present = "curves_file")]
        curve: Option<String>,
        #[arg(long)]
        curves_file: Option<PathBuf>,
        #[arg(long, default_value_t = 1000)]
        bound: u64,
    },
    /// Compute θ_n and its (μ, λ).
    Theta {
        #[command(flatten)]
        form: FormArgs,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: u32,
        /// Starting p-adic precision; doubled until (μ, λ) are certified.
        #[arg(long)]
        precision: Option<u32>,
    },
    /// Tabulate λ for several forms at one prime.
    LambdaTable {
        #[arg(long)]
        p: u64,
        /// Comma-separated `delta` and curve labels. Defaults to every
        /// tabulated class at `p` (or every curve in `--curves-file`).
        #[arg(long, value_delimiter = ',')]
        forms: Option<Vec<String>>,
        #[arg(long)]
        curves_file: Option<PathBuf>,
        #[arg(long, default_value_t = 3)]
        n_max: u32,
        #[arg(long, value_enum, default_value_t = OutFormat::Csv)]
        out: OutFormat,
    },
    /// Run one of the consistency checks and report JSON.
    Verify {
        #[arg(long, value_enum)]
        check: CheckArg,
        #[arg(long)]
        p: u64,
        #[command(flatten)]
        form: FormArgs,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        n_max: Option<u32>,
        #[arg(long)]
        bound: Option<u64>,
        #[arg(long)]
        precision: Option<u32>,
    },
}

fn run(cli: Cli) -> Result<Output> {
    let mut ctx = Context {
        cache: EigenCache::new(cli.cache_dir),
        budget: cli.budget,
        curves: Vec::new(),
    };
    match cli.command {
        Command::Tau { bound } => cmd_tau(bound as usize),
        Command::Congruence { p, curve, curves_file, bound } => {
            if let Some(path) = &curves_file {
                ctx.curves = load_curves_file(path)?;
            }
            let curves = match curve {
                Some(label) => vec![ctx.curve(&label)?],
                None => ctx.curves.clone(),
            };
            cmd_congruence(p, &curves, bound)
        }
        Command::Theta { form, p, n, precision } => {
            let Some(form) = form.resolve(&ctx)? else {
                bail!("theta needs --form or --curve");
            };
            cmd_theta(&ctx, &form, p, n, precision)
        }
        Command::LambdaTable { p, forms, curves_file, n_max, out } => {
            if let Some(path) = &curves_file {
                ctx.curves = load_curves_file(path)?;
            }
            let forms = match forms {
                Some(names) => names
                    .iter()
                    .map(|s| s.trim())
                    .filter(|s| !s.is_empty())
                    .map(|s| ctx.form(s))
                    .collect::<Result<Vec<_>>>()?,
                None if curves_file.is_some() => ctx.curves.iter().cloned().map(Form::Curve).collect(),
                None => default_forms(&ctx, p),
            };
            let format = match out {
                OutFormat::Csv => TableFormat::Csv,
                OutFormat::Json => TableFormat::Json,
            };
            cmd_lambda_table(&ctx, &forms, p, n_max, format)
        }
        Command::Verify { check, p, form, n, n_max, bound, precision } => {
            let check = match check {
                CheckArg::NormRelation => Check::NormRelation,
                CheckArg::LowerBound => Check::LowerBound,
                CheckArg::ThetaCongruence => Check::ThetaCongruence,
                CheckArg::QCongruence => Check::QCongruence,
                CheckArg::TauLemma => Check::TauLemma,
            };
            let args = VerifyArgs {
                p,
                form: form.resolve(&ctx)?,
                n,
                n_max,
                bound,
                precision,
            };
            cmd_verify(&ctx, check, &args)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            print!("{}", out.text);
            if out.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
