use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand};
use ijord::jordan::JordanError;
use ijord::report::{
    general_report, param_catalog, poly_listing, render_catalog, render_ijord, render_polys, render_verify,
    simple_report, IjordReport,
};
use ijord::schema::{parse_document, to_json, Document};
use ijord::verify::{run as run_verify, VerifySpec};

/// Inertial Jordan sets, self-dual polynomials and Langlands parameter
/// shapes from finite descriptors. The enumeration bound is read from
/// `IJORD_BOUND`.
#[derive(Parser)]
#[command(name = "ijord", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a descriptor, registry or enumeration request file.
    Compute {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// List self-dual monic irreducible polynomials.
    EnumeratePolys {
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = 1)]
        index: u8,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        json: bool,
    },
    /// Catalog cuspidal discrete parameter shapes of dimension 2N+1.
    EnumerateParams {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        registry: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Run the invariant suite over the generated corpus.
    Verify {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest N in the simple corpus.
        #[arg(long, default_value_t = 6)]
        bound: u32,
        /// Inject a descriptor that violates the counting identity.
        #[arg(long)]
        mutant: bool,
        #[arg(long)]
        json: bool,
    },
}

enum Failure {
    /// Exit 1.
    Invalid(anyhow::Error),
    /// Exit 2.
    Violation,
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Invalid(e.into())
    }
}

fn jordan(e: JordanError) -> Failure {
    match e {
        JordanError::IdentityViolation(_)
        | JordanError::ContributionMismatch { .. }
        | JordanError::ParityIncoherent { .. } => {
            eprintln!("error: {e}");
            Failure::Violation
        }
        e => Failure::Invalid(e.into()),
    }
}

fn emit(doc: Document, json: bool, table: impl FnOnce(&Document) -> String) {
    if json {
        print!("{}", to_json(&doc));
    } else {
        print!("{}", table(&doc));
    }
}

fn emit_ijord(rep: IjordReport, json: bool) -> Result<(), Failure> {
    let ok = rep.all_hold();
    emit(Document::IjordReport(rep), json, |d| match d {
        Document::IjordReport(r) => render_ijord(r),
        _ => unreachable!(),
    });
    if ok {
        Ok(())
    } else {
        Err(Failure::Violation)
    }
}

fn compute(file: &PathBuf, json: bool) -> Result<(), Failure> {
    let text = std::fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
    let doc = parse_document(&text).map_err(|e| anyhow!("{}: {e}", file.display()))?;
    match doc {
        Document::SimpleCuspidal(spec) => {
            let d = spec.build().map_err(jordan)?;
            emit_ijord(simple_report(&d).map_err(jordan)?, json)
        }
        Document::GeneralCuspidal(spec) => {
            let parts = spec.build().map_err(jordan)?;
            emit_ijord(general_report(spec.n, &parts).map_err(jordan)?, json)
        }
        Document::LparamRegistry(reg) => {
            reg.validate()?;
            if json {
                print!("{}", to_json(&Document::LparamRegistry(reg)));
            } else {
                println!("registry valid: {} orbits, {} irreps", reg.orbits.len(), reg.irreps.len());
            }
            Ok(())
        }
        Document::EnumerationRequest(req) => {
            let cat = param_catalog(req.n, &req.registry)?;
            emit(Document::ParamCatalog(cat), json, |d| match d {
                Document::ParamCatalog(c) => render_catalog(c),
                _ => unreachable!(),
            });
            Ok(())
        }
        Document::IjordReport(rep) => emit_ijord(rep, json),
        Document::PolyListing(l) => {
            emit(Document::PolyListing(l), json, |d| match d {
                Document::PolyListing(l) => render_polys(l),
                _ => unreachable!(),
            });
            Ok(())
        }
        Document::ParamCatalog(c) => {
            emit(Document::ParamCatalog(c), json, |d| match d {
                Document::ParamCatalog(c) => render_catalog(c),
                _ => unreachable!(),
            });
            Ok(())
        }
        Document::VerifyReport(v) => {
            let passed = v.passed;
            emit(Document::VerifyReport(v), json, |d| match d {
                Document::VerifyReport(v) => render_verify(v),
                _ => unreachable!(),
            });
            if passed {
                Ok(())
            } else {
                Err(Failure::Violation)
            }
        }
    }
}

fn dispatch(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Compute { file, json } => compute(&file, json),
        Command::EnumeratePolys { q, index, m, json } => {
            let l = poly_listing(q, index, m)?;
            emit(Document::PolyListing(l), json, |d| match d {
                Document::PolyListing(l) => render_polys(l),
                _ => unreachable!(),
            });
            Ok(())
        }
        Command::EnumerateParams { n, registry, json } => {
            let text = std::fs::read_to_string(&registry)
                .with_context(|| format!("reading {}", registry.display()))?;
            let reg = match parse_document(&text).map_err(|e| anyhow!("{}: {e}", registry.display()))? {
                Document::LparamRegistry(r) => r,
                Document::EnumerationRequest(r) => r.registry,
                other => return Err(anyhow!("expected an lparam_registry document, got {:?}", other.kind()).into()),
            };
            let cat = param_catalog(n, &reg)?;
            emit(Document::ParamCatalog(cat), json, |d| match d {
                Document::ParamCatalog(c) => render_catalog(c),
                _ => unreachable!(),
            });
            Ok(())
        }
        Command::Verify { seed, bound, mutant, json } => {
            let rep = run_verify(&VerifySpec { seed, max_n: bound, mutant });
            let passed = rep.passed;
            emit(Document::VerifyReport(rep), json, |d| match d {
                Document::VerifyReport(v) => render_verify(v),
                _ => unreachable!(),
            });
            if passed {
                Ok(())
            } else {
                Err(Failure::Violation)
            }
        }
    }
}

fn main() -> ExitCode {
    match dispatch(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Invalid(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Violation) => ExitCode::from(2),
    }
}
