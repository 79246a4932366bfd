//! `apolar`: apolarity computations, rank certificates for sums of forms in
//! disjoint variables, and verification suites.

mod commands;
mod input;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use apolarity::apolarity::{monomial_cap, set_monomial_cap};
use apolarity::rank::DEFAULT_SAMPLES;
use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use report::Report;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] apolarity::Error),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Usage(String),
}

#[derive(Parser)]
#[command(name = "apolar", version, about = "Apolarity, Waring and cactus rank computations over Q")]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for sampled linear forms and generated corpora.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Cap on the number of monomials of the top degree.
    #[arg(long, global = true, value_name = "N")]
    max_monomials: Option<usize>,
    /// Random linear forms drawn for cactus rank bounds.
    #[arg(long, global = true, default_value_t = DEFAULT_SAMPLES)]
    samples: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct PolyInput {
    /// Homogeneous polynomial, e.g. "x^3 + 3/2*x*y^2".
    #[arg(allow_hyphen_values = true)]
    polynomial: Option<String>,
    /// Read polynomials from a file, one per line; `#` starts a comment.
    #[arg(long, value_name = "PATH")]
    file: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Hilbert function of T/F^perp and perp dimensions by degree.
    Perp(PolyInput),
    /// Rank, computing linear form and lower bound of a single form.
    Rank {
        #[command(flatten)]
        input: PolyInput,
        /// Linear form to evaluate the bound at, e.g. `t_y` or `x + 2*y`.
        #[arg(long)]
        witness: Option<String>,
    },
    /// Cactus rank from sampled general linear forms.
    Crank(PolyInput),
    /// dim T/((F^perp : t) + (t)) at a linear form t.
    Bound {
        #[command(flatten)]
        input: PolyInput,
        /// Linear form t; defaults to the searched witness.
        #[arg(long)]
        witness: Option<String>,
    },
    /// Rank certificate for a sum of forms in disjoint sets of variables.
    Additive {
        /// Blocks as `x,y: x*y ; z,w: z*w`.
        #[arg(long)]
        blocks: Option<String>,
        /// Read block declarations from a file, one per line.
        #[arg(long, value_name = "PATH")]
        file: Option<PathBuf>,
        /// Cactus rank instead of Waring rank.
        #[arg(long)]
        cactus: bool,
    },
    /// Run a verification suite on a generated corpus.
    Verify {
        /// One of claim1, colon-inclusion, nonannihilation, cactus-lemma,
        /// additive-rank, additive-crank, oracle, gorenstein, negative, all.
        #[arg(long, default_value = "all")]
        suite: String,
        /// Number of generated instances.
        #[arg(long, default_value_t = 20)]
        count: usize,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Perp(_) => "perp",
            Command::Rank { .. } => "rank",
            Command::Crank(_) => "crank",
            Command::Bound { .. } => "bound",
            Command::Additive { .. } => "additive",
            Command::Verify { .. } => "verify",
        }
    }
}

fn run(cli: &Cli) -> Vec<(Report, Result<(), CliError>)> {
    let name = cli.command.name();
    let fresh = || {
        let mut r = Report::new(name, cli.seed);
        r.input("max_monomials", report::int(monomial_cap()));
        r
    };
    let single = |f: &dyn Fn(&mut Report) -> Result<(), CliError>| {
        let mut r = fresh();
        let start = Instant::now();
        let res = f(&mut r);
        r.elapsed = start.elapsed();
        vec![(r, res)]
    };
    let per_poly = |input: &PolyInput, f: &dyn Fn(&mut Report, &str) -> Result<(), CliError>| {
        match input::polynomials(input.polynomial.as_deref(), input.file.as_deref()) {
            Ok(polys) => polys
                .iter()
                .map(|p| {
                    let mut r = fresh();
                    let start = Instant::now();
                    let res = f(&mut r, p);
                    r.elapsed = start.elapsed();
                    (r, res)
                })
                .collect(),
            Err(e) => vec![(fresh(), Err(e))],
        }
    };
    match &cli.command {
        Command::Perp(input) => per_poly(input, &commands::perp),
        Command::Rank { input, witness } => per_poly(input, &|r, p| commands::rank(r, p, witness.as_deref())),
        Command::Crank(input) => per_poly(input, &|r, p| commands::crank(r, p, cli.samples)),
        Command::Bound { input, witness } => per_poly(input, &|r, p| commands::bound(r, p, witness.as_deref())),
        Command::Additive { blocks, file, cactus } => single(&|r| {
            let bd = input::blocks(blocks.as_deref(), file.as_deref())?;
            commands::additive(r, &bd, *cactus, cli.samples)
        }),
        Command::Verify { suite, count } => single(&|r| commands::verify(r, suite, *count, cli.samples)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(cap) = cli.max_monomials {
        set_monomial_cap(cap);
    }
    let mut code = ExitCode::SUCCESS;
    for (mut report, result) in run(&cli) {
        if let Err(e) = &result {
            report.ok = false;
            report.output("error", e.to_string());
            code = ExitCode::from(match e {
                CliError::Usage(_) => 2,
                _ => 1,
            });
        } else if !report.ok && code == ExitCode::SUCCESS {
            code = ExitCode::FAILURE;
        }
        if cli.json {
            println!("{}", serde_json::to_string(&report.to_json()).expect("json"));
        } else if let Err(e) = &result {
            eprintln!("error: {e}");
        } else {
            println!("{}", report.to_text());
        }
    }
    code
}
