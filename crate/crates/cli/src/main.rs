use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use kpower::linalg::Ring;
use kpower_cli::commands;
use kpower_cli::report::{Format, Report};
use kpower_cli::suites::{Config, SUITES};

#[derive(Parser)]
#[command(name = "kpower", version, about = "Exterior power operations on complexes over exact rings")]
struct Cli {
    /// Coefficient ring: Z, Q or F<p>
    #[arg(long, global = true)]
    ring: Option<String>,
    #[arg(long, global = true)]
    k: Option<usize>,
    #[arg(long, global = true)]
    l: Option<usize>,
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Extra simplicial levels above the top degree in the roundtrip suite
    #[arg(long, global = true, default_value_t = 2)]
    slack: usize,
    #[arg(long, global = true, default_value = "text")]
    format: Format,
    /// Run only the named suite (repeatable)
    #[arg(long, global = true)]
    suite: Vec<String>,
    /// Worker threads for the suites (default: rayon's choice)
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Homology of a complex file
    Homology { file: String },
    /// Dold-Puppe exterior power of a complex file
    Lambda { file: String },
    /// Euler characteristic, and of the power when --k is given
    Euler { file: String },
    /// K1 class of a binary complex file
    K1class { file: String },
    /// E1-E5 instance suite
    Axioms,
    /// Composition polynomial P_{k,l} and its checks
    Compose,
    /// Equivariant composition law; a representation file or the full suite
    Equivariant {
        file: Option<String>,
        #[arg(long)]
        group: Option<String>,
    },
    /// Every suite, or those selected with --suite
    VerifyAll,
}

fn error_report(e: &kpower::Error, format: Format) -> String {
    let debug = format!("{e:?}");
    let variant = debug.split(|c: char| !c.is_alphanumeric()).next().unwrap_or("Error");
    match format {
        Format::Text => format!("error {variant}: {e}\n"),
        Format::JsonLines => format!("{}\n", json!({"kind": "error", "error": variant, "message": e.to_string()})),
    }
}

fn execute(cli: &Cli) -> kpower::Result<Report> {
    let ring = cli.ring.as_deref().map(Ring::parse_tag).transpose()?;
    let cfg = Config {
        seed: cli.seed,
        slack: cli.slack,
        ring,
    };
    let suites = |default: &[&'static str]| -> kpower::Result<Vec<&'static str>> {
        if cli.suite.is_empty() {
            return Ok(default.to_vec());
        }
        cli.suite
            .iter()
            .map(|s| {
                SUITES
                    .iter()
                    .copied()
                    .find(|n| n == s)
                    .ok_or_else(|| kpower::Error::Dimension(format!("unknown suite `{s}` (known: {})", SUITES.join(", "))))
            })
            .collect()
    };
    match &cli.command {
        Command::Homology { file } => commands::homology(file, ring),
        Command::Lambda { file } => commands::lambda(file, ring, cli.k.unwrap_or(2)),
        Command::Euler { file } => commands::euler(file, ring, cli.k),
        Command::K1class { file } => commands::k1class(file, ring, cli.k),
        Command::Axioms => Ok(commands::suite(&["axioms"], &cfg)),
        Command::Compose => commands::compose(cli.k.unwrap_or(2), cli.l.unwrap_or(2)),
        Command::Equivariant { file: Some(file), .. } => {
            commands::equivariant(Some(file), None, cli.k.unwrap_or(2), cli.l.unwrap_or(2))
        }
        Command::Equivariant { file: None, group } => {
            let mut r = commands::equivariant(None, group.as_deref(), 0, 0)?;
            r.summarize();
            Ok(r)
        }
        Command::VerifyAll => Ok(commands::suite(&suites(&SUITES)?, &cfg)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .expect("thread pool is configured once");
    }
    match execute(&cli) {
        Ok(report) => {
            print!("{}", report.render(cli.format));
            if report.failed() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            print!("{}", error_report(&e, cli.format));
            ExitCode::from(2)
        }
    }
}
