//! The `henselkit` command line. Every subcommand prints one payload; the
//! exit status is 0 when the payload verifies, 1 when it does not or the
//! input is rejected, and 2 on usage or unsupported-instance errors.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::Value;

use crate::arith::factor_fp::DEFAULT_SEED;
use crate::config::{Format, RunConfig};
use crate::engine::{construct_generator, henselian_triple, is_henselian, localize_cover};
use crate::error::{Error, Result};
use crate::number_field::DEFAULT_PRECISION;
use crate::spectrum::{spectrum_of, BaseChain};
use crate::suite::{run_all, Mode, Sizes};
use crate::uniformize::{entry, run_pipeline, CATALOGUE};
use crate::wire::{self, FieldInput};

const AFTER_HELP: &str = "Coefficient lists are constant-term first: x^2 - 2 is -2,0,1. \
Elements of the field are coordinates on 1, θ, θ^2, ... in the same order. \
Rationals are written a or a/b. Over the x-adic and composite bases each \
coefficient is an element of Q(t): numerator coefficients joined by ':' \
(constant first), optionally followed by '//' and a denominator, e.g. -2:-1 \
for -2 - t.\n\nExit status: 0 verified, 1 rejected or not verified, 2 usage \
or unsupported instance.";

#[derive(Debug, Parser)]
#[command(name = "henselkit", version, about = "Henselian elements, generators and finite spectra", after_help = AFTER_HELP)]
pub struct Cli {
    /// Seed for every randomized choice.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Starting Hensel-lift precision (at least 4).
    #[arg(long, global = true, default_value_t = DEFAULT_PRECISION)]
    pub precision_start: u32,
    /// Write the payload to this file instead of stdout.
    #[arg(long, short = 'o', global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct FieldArgs {
    /// Monic irreducible integer polynomial, constant term first.
    #[arg(short = 'f', long = "poly", allow_hyphen_values = true)]
    pub f: String,
    /// Prime with squarefree reduction of f.
    #[arg(short = 'p', long)]
    pub p: u64,
    /// Index of the chosen prime in the canonical factor order.
    #[arg(long, default_value_t = 0)]
    pub node: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SpectrumBaseArg {
    /// Number field at a prime, through the generator construction.
    Padic,
    /// A[X]/(h) over Q[x]_(x).
    Xadic,
    /// A[X]/(h) over the rank-2 ring of Q(t) at (t, p).
    Composite,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Factor f modulo p and list the primes above p.
    Split {
        #[arg(short = 'f', long = "poly", allow_hyphen_values = true)]
        f: String,
        #[arg(short = 'p', long)]
        p: u64,
    },
    /// Construct a henselian generator for the chosen prime.
    HenselGen {
        #[command(flatten)]
        field: FieldArgs,
    },
    /// Test an element against a witness polynomial.
    Check {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, allow_hyphen_values = true)]
        element: String,
        #[arg(long, allow_hyphen_values = true)]
        witness: String,
    },
    /// Find u with each element in A[η, 1/u].
    Cover {
        #[command(flatten)]
        field: FieldArgs,
        /// Elements separated by ';'.
        #[arg(long, allow_hyphen_values = true)]
        elements: String,
    },
    /// Write an integral element as f(η) - η + r²s.
    Triple {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, allow_hyphen_values = true)]
        element: String,
    },
    /// Finite spectrum, chain decomposition and localization conditions.
    Spectrum {
        #[arg(long, value_enum, default_value_t = SpectrumBaseArg::Padic)]
        base: SpectrumBaseArg,
        /// f for the padic base, h itself otherwise.
        #[arg(short = 'f', long = "poly", allow_hyphen_values = true)]
        f: String,
        /// Prime; required except for the x-adic base.
        #[arg(short = 'p', long)]
        p: Option<u64>,
        #[arg(long, default_value_t = 0)]
        node: usize,
    },
    /// Run a catalogue entry through the uniformization pipeline.
    Uniformize {
        #[arg(long)]
        entry: String,
    },
    /// Run the property suites.
    VerifyAll {
        /// Reduced instance counts.
        #[arg(long)]
        quick: bool,
        /// Run without worker threads.
        #[arg(long)]
        sequential: bool,
        /// Include wall-clock times (output is then not reproducible).
        #[arg(long)]
        timings: bool,
    },
}

/// Exit status, stdout and stderr of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Rendered {
    Payload(Value),
    /// Payload plus an alternative text form.
    WithText(Value, String),
    WithDot(Value, String),
}

fn field_input(args: &FieldArgs, cfg: &RunConfig) -> Result<FieldInput> {
    Ok(FieldInput {
        f: wire::parse_list::<BigInt>(&args.f, "polynomial").map_err(|e| e.at_stage("input"))?,
        p: args.p,
        node: args.node,
        precision_start: cfg.precision_start,
    })
}

fn element_of(setting: &crate::engine::LocalSetting<crate::valuation::PadicBase>, s: &str) -> Result<crate::arith::poly::Poly<BigRational>> {
    let cs = wire::parse_list::<BigRational>(s, "element").map_err(|e| e.at_stage("input"))?;
    setting.ext().from_coords(cs).map_err(|e| e.at_stage("input"))
}

fn execute(command: &Command, cfg: &RunConfig) -> Result<Rendered> {
    let seed = cfg.seed;
    match command {
        Command::Split { f, p } => {
            let input = FieldInput {
                f: wire::parse_list(f, "polynomial").map_err(|e| e.at_stage("input"))?,
                p: *p,
                node: 0,
                precision_start: cfg.precision_start,
            };
            Ok(Rendered::Payload(wire::split_payload(&input)?))
        }
        Command::HenselGen { field } => {
            let input = field_input(field, cfg)?;
            let setting = input.setting()?;
            let pkg = construct_generator(&setting, seed).map_err(|e| e.at_stage("construct_generator"))?;
            Ok(Rendered::Payload(wire::hensel_gen_payload(&input, seed, &setting, &pkg)))
        }
        Command::Check { field, element, witness } => {
            let input = field_input(field, cfg)?;
            let setting = input.setting()?;
            let b = element_of(&setting, element)?;
            let h = setting
                .polys()
                .from_coeffs(wire::parse_list(witness, "witness").map_err(|e| e.at_stage("input"))?);
            let verdict = is_henselian(&setting, &b, &h).map_err(|e| e.at_stage("check"))?;
            Ok(Rendered::Payload(wire::check_payload(&input, &setting, &b, &h, &verdict)))
        }
        Command::Cover { field, elements } => {
            let input = field_input(field, cfg)?;
            let setting = input.setting()?;
            let zs = wire::parse_elements(elements)
                .and_then(|es| es.into_iter().map(|c| setting.ext().from_coords(c)).collect::<Result<Vec<_>>>())
                .map_err(|e| e.at_stage("input"))?;
            let pkg = construct_generator(&setting, seed).map_err(|e| e.at_stage("construct_generator"))?;
            let cover = localize_cover(&setting, &pkg, &zs).map_err(|e| e.at_stage("localize_cover"))?;
            Ok(Rendered::Payload(wire::cover_payload(&input, seed, &setting, &pkg, &cover)))
        }
        Command::Triple { field, element } => {
            let input = field_input(field, cfg)?;
            let setting = input.setting()?;
            let b = element_of(&setting, element)?;
            let pkg = construct_generator(&setting, seed).map_err(|e| e.at_stage("construct_generator"))?;
            let triple = henselian_triple(&setting, &pkg, &b).map_err(|e| e.at_stage("henselian_triple"))?;
            Ok(Rendered::Payload(wire::triple_payload(&input, seed, &setting, &pkg, &triple)))
        }
        Command::Spectrum { base, f, p, node } => {
            let need_p = || p.ok_or_else(|| Error::InvalidInput("this base needs -p".into()).at_stage("input"));
            let (payload, dot) = match base {
                SpectrumBaseArg::Padic => {
                    let args = FieldArgs {
                        f: f.clone(),
                        p: need_p()?,
                        node: *node,
                    };
                    let input = field_input(&args, cfg)?;
                    let setting = input.setting()?;
                    let pkg = construct_generator(&setting, seed).map_err(|e| e.at_stage("construct_generator"))?;
                    let dot = spectrum_of(&setting, &pkg).map_err(|e| e.at_stage("spectrum"))?.to_dot();
                    (wire::spectrum_engine_payload(&input, seed, &setting, &pkg)?, dot)
                }
                SpectrumBaseArg::Xadic | SpectrumBaseArg::Composite => {
                    let chain = match base {
                        SpectrumBaseArg::Xadic => BaseChain::Xadic,
                        _ => BaseChain::Composite { p: need_p()? },
                    };
                    let h = wire::parse_ratfuns(f, "polynomial").map_err(|e| e.at_stage("input"))?;
                    let spec = wire::direct_spectrum(chain, &h, *node)?;
                    (wire::spectrum_direct_payload(&spec, *node), spec.to_dot())
                }
            };
            Ok(Rendered::WithDot(payload, dot))
        }
        Command::Uniformize { entry: name } => {
            let Some(e) = entry(name) else {
                let names: Vec<&str> = CATALOGUE.iter().map(|e| e.name).collect();
                return Err(Error::InvalidInput(format!("unknown entry `{name}`; known: {}", names.join(", "))).at_stage("input"));
            };
            let report = run_pipeline(e, seed);
            let text = match &report {
                Ok(r) => r.to_text(),
                Err(err) => format!("entry {name} (seed {seed})\nrejected: {err}\n"),
            };
            Ok(Rendered::WithText(wire::uniformize_payload(name, seed, &report), text))
        }
        Command::VerifyAll {
            quick,
            sequential,
            timings,
        } => {
            let sizes = if *quick { Sizes::small() } else { Sizes::default() };
            let mode = if *sequential { Mode::Sequential } else { Mode::Parallel };
            let outcomes = run_all(seed, &sizes, mode);
            Ok(Rendered::Payload(wire::verify_all_payload(seed, *quick, *sequential, *timings, &outcomes)))
        }
    }
}

fn exit_code_for(e: &Error) -> i32 {
    let inner = match e {
        Error::Stage { source, .. } => source.as_ref(),
        other => other,
    };
    match inner {
        Error::NotHenselian { .. } => 1,
        _ => 2,
    }
}

fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("payloads serialize");
    s.push('\n');
    s
}

fn render(rendered: Rendered, format: Format) -> Result<(String, bool)> {
    let (payload, text, dot) = match rendered {
        Rendered::Payload(v) => (v, None, None),
        Rendered::WithText(v, t) => (v, Some(t), None),
        Rendered::WithDot(v, d) => (v, None, Some(d)),
    };
    let verified = payload["verified"] == Value::Bool(true);
    let body = match format {
        Format::Json => json_text(&payload),
        Format::Text => text.unwrap_or_else(|| wire::to_text(&payload)),
        Format::Dot => dot.ok_or_else(|| {
            Error::InvalidInput("DOT output is available for `spectrum` only".into()).at_stage("output")
        })?,
    };
    Ok((body, verified))
}

/// Runs one invocation; `args` includes the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: rendered,
                    stderr: String::new(),
                }
            } else {
                let payload = wire::error_payload(&Error::InvalidInput(e.kind().to_string()).at_stage("usage"));
                Outcome {
                    code,
                    stdout: json_text(&payload),
                    stderr: rendered,
                }
            };
        }
    };
    let format = cli.format;
    let result = RunConfig::new(cli.seed, cli.precision_start, cli.output.clone(), cli.format)
        .map_err(|e| e.at_stage("input"))
        .and_then(|cfg| Ok((execute(&cli.command, &cfg)?, cfg)))
        .and_then(|(r, cfg)| Ok((render(r, format)?, cfg)));
    let (body, code, stderr) = match result {
        Ok(((body, verified), cfg)) => {
            if let Some(path) = &cfg.output {
                if let Err(e) = std::fs::write(path, &body) {
                    let err = Error::InvalidInput(format!("cannot write {}: {e}", path.display())).at_stage("output");
                    return Outcome {
                        code: 2,
                        stdout: json_text(&wire::error_payload(&err)),
                        stderr: format!("{err}\n"),
                    };
                }
                (String::new(), if verified { 0 } else { 1 }, String::new())
            } else {
                (body, if verified { 0 } else { 1 }, String::new())
            }
        }
        Err(e) => (json_text(&wire::error_payload(&e)), exit_code_for(&e), format!("{e}\n")),
    };
    Outcome {
        code,
        stdout: body,
        stderr,
    }
}
