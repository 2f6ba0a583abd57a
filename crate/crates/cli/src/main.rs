use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use cytoric::exactnum::parse_rational;
use cytoric::polytope::Polyhedron;
use cytoric::toric::CutSpec;
use cytoric::twistorfiber::SignFlip;
use cytoric_cli::betti_cmd::{run_betti, BettiRequest};
use cytoric_cli::coxeter_cmd::{run_chain, run_selftest};
use cytoric_cli::fiber::run_fiber;
use cytoric_cli::resolve::{run_resolve, ResolveOptions};
use cytoric_cli::verify::{run_verify, Overrides, Topic};
use cytoric_cli::{load_json, CliError, CliResult, Report};

/// Exact toric resolutions, twistor-fiber actions and 120-cell chains.
#[derive(Parser)]
#[command(name = "cytoric", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,

    /// Write the report here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Audit a moment polytope, cut out its singular strata and certify the result.
    Resolve {
        /// Polytope JSON, inline or a file path.
        input: String,
        /// Distance of the blow-up cut from each singular stratum.
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        epsilon: String,
        /// Explicit cut (JSON with a `halfspaces` list) instead of the blow-up.
        #[arg(long)]
        cut: Option<String>,
    },
    /// Sign-flip action on the twistor fiber.
    FiberAction {
        /// Also report this element, e.g. `+--+`.
        #[arg(long, allow_hyphen_values = true)]
        element: Option<String>,
    },
    /// Betti numbers before and after resolving a singular locus.
    Betti {
        /// Singular-locus JSON, inline or a file path.
        #[arg(required_unless_present = "doubled", conflicts_with = "doubled")]
        input: Option<String>,
        /// Doubled right-angled polytope with V vertices and F two-faces.
        #[arg(long, num_args = 2, value_names = ["V", "F"])]
        doubled: Option<Vec<u64>>,
    },
    /// 120-cell chains and polytope regression checks.
    Coxeter {
        /// Number of 120-cells in the chain.
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        chain: u64,
        /// Run the 600-cell, 120-cell and cube regressions instead.
        #[arg(long)]
        selftest: bool,
    },
    /// Run the built-in reference checks.
    Verify {
        /// Restrict to these topics.
        #[arg(long, value_enum)]
        topic: Vec<Topic>,
        /// Fixture JSON replacing model inputs or reference values.
        #[arg(long)]
        overrides: Option<String>,
    },
}

fn run(command: Command) -> CliResult<Report> {
    match command {
        Command::Resolve { input, epsilon, cut } => {
            let p: Polyhedron = load_json(&input)?;
            let epsilon = parse_rational(&epsilon)?;
            let cut: Option<CutSpec> = cut.as_deref().map(load_json).transpose()?;
            run_resolve(&p, &ResolveOptions { epsilon, cut })
        }
        Command::FiberAction { element } => {
            let g: Option<SignFlip> = element.as_deref().map(str::parse).transpose()?;
            run_fiber(g.as_ref())
        }
        Command::Betti { input, doubled } => {
            let req = match (input, doubled) {
                (_, Some(vf)) => BettiRequest::Doubled { v: vf[0], f: vf[1] },
                (Some(path), None) => BettiRequest::Description(load_json(&path)?),
                (None, None) => return Err(CliError::Usage("betti needs an input or --doubled".into())),
            };
            run_betti(&req)
        }
        Command::Coxeter { chain, selftest } => {
            if selftest {
                run_selftest()
            } else {
                let k = usize::try_from(chain).map_err(|_| CliError::Usage(format!("chain length {chain} is too large")))?;
                run_chain(k)
            }
        }
        Command::Verify { topic, overrides } => {
            let ov: Overrides = match overrides {
                Some(src) => load_json(&src)?,
                None => Overrides::default(),
            };
            run_verify(&topic, &ov)
        }
    }
}

fn configure_workers() -> CliResult<()> {
    if let Ok(v) = std::env::var("CYTORIC_WORKERS") {
        let n: usize = v
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| CliError::Usage(format!("CYTORIC_WORKERS must be a positive integer, got {v:?}")))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    Ok(())
}

fn emit(text: &str, output: Option<&PathBuf>) -> CliResult<()> {
    match output {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::Io { path: path.clone(), source: e }),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Io { path: PathBuf::from("<stdout>"), source: e }),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_workers().and_then(|()| run(cli.command)).and_then(|report| {
        let text = match cli.format {
            Format::Json => report.to_json(),
            Format::Table => report.render_table(),
        };
        emit(&text, cli.output.as_ref())?;
        Ok(report.exit_code())
    });
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
