//! Command-line front end: fixture generation, computation reports, and
//! verification suites. Output is a single JSON document on stdout;
//! diagnostics go to stderr.
//!
//! Exit codes: 0 all checks pass, 1 assertion failure, 2 usage / parity /
//! input error.

mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use linkform_core::cohomology::Space;
use linkform_core::complex::SimplicialComplex;
use linkform_core::error::Error;
use linkform_core::verify::{run_suite, Suite};

#[derive(Parser)]
#[command(name = "linkform", version, about = "Exact cochain operations on triangulated manifolds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated complex to a JSON file.
    Generate {
        #[command(subcommand)]
        kind: GenerateKind,
    },
    /// Compute the requested sections and print one JSON report.
    Report {
        /// Complex file (JSON: {"name": .., "facets": [[..], ..]})
        #[arg(long)]
        complex: PathBuf,
        /// Comma-separated sections: cohomology, steenrod, bss, pairing, wu,
        /// verdict
        #[arg(long, default_value = "cohomology", value_delimiter = ',')]
        sections: Vec<String>,
        /// Largest coefficient level 2^n to use
        #[arg(long = "n-max", default_value_t = 3)]
        n_max: u32,
        /// Randomness seed (reserved for randomized sections)
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Pretty-print the JSON payload
        #[arg(long)]
        pretty: bool,
    },
    /// Run a named verification suite; exit 0 exactly when all checks pass.
    Verify {
        #[arg(long)]
        complex: PathBuf,
        /// axioms | cochain-identities | pairing | bss | theorem73 | all
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        pretty: bool,
    },
}

#[derive(Subcommand)]
enum GenerateKind {
    /// Boundary of the (n+1)-simplex.
    Sphere {
        n: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Suspension of a complex loaded from a file.
    Suspension {
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Staircase triangulation of the product of two complexes.
    Product {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Real projective n-space.
    Rp {
        n: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Lens space L(p, q).
    Lens {
        p: u64,
        q: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::Io(_)
        | Error::Parse(_)
        | Error::Validation(_)
        | Error::InvalidParams(_)
        | Error::Parity { .. } => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn run() -> Result<ExitCode, Error> {
    let cli = Cli::parse();
    match cli.command {
        Command::Generate { kind } => {
            let (complex, out) = match kind {
                GenerateKind::Sphere { n, out } => (SimplicialComplex::sphere(n), out),
                GenerateKind::Suspension { input, out } => {
                    (SimplicialComplex::load(input)?.suspension(), out)
                }
                GenerateKind::Product { a, b, out } => {
                    let a = SimplicialComplex::load(a)?;
                    let b = SimplicialComplex::load(b)?;
                    (SimplicialComplex::product(&a, &b), out)
                }
                GenerateKind::Rp { n, out } => (SimplicialComplex::rp_space(n)?, out),
                GenerateKind::Lens { p, q, out } => (SimplicialComplex::lens_space(p, q)?, out),
            };
            complex.save(&out)?;
            eprintln!(
                "wrote {} ({} facets, dimension {})",
                out.display(),
                complex.facets().len(),
                complex.dimension()
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Report {
            complex,
            sections,
            n_max,
            seed,
            pretty,
        } => {
            let _ = seed;
            let space = Space::new(SimplicialComplex::load(complex)?);
            let opts = report::ReportOptions { sections, n_max };
            let rep = report::build_report(&space, &opts)?;
            let payload = if pretty {
                serde_json::to_string_pretty(&rep)
            } else {
                serde_json::to_string(&rep)
            }
            .expect("report serialization");
            println!("{payload}");
            let ok = rep.status.iter().all(|s| s.pass);
            Ok(if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Verify {
            complex,
            suite,
            seed,
            pretty,
        } => {
            let suite: Suite = suite.parse()?;
            let space = Space::new(SimplicialComplex::load(complex)?);
            let rep = run_suite(&space, suite, seed)?;
            let payload = if pretty {
                serde_json::to_string_pretty(&rep)
            } else {
                serde_json::to_string(&rep)
            }
            .expect("suite serialization");
            println!("{payload}");
            eprintln!("{}: {} passed, {} failed", rep.suite, rep.passed, rep.failed);
            Ok(if rep.all_passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}
