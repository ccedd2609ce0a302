//! Command-line surface over the engine: parsing, worm comparison and
//! ordinal conversion, fundamental-sequence formulas, proof generation and
//! checking, rule elimination, and descent certificates.
//!
//! Exit codes: 0 success; 1 a domain "no" (failed check, not-found
//! certificate, rejected derivation); 2 malformed input (syntax errors,
//! arguments outside a decision procedure's domain, unknown subcommands).
//! Results are canonical text on stdout; input errors go to stderr.

use clap::{Parser, Subcommand};
use glp_core::analysis::{
    build_certificate, pi1_ordinal, verify_certificate, Certificate, SymbolicGlpProvider,
    TheorySpec,
};
use glp_core::calculus::{certify_less, check_proof, derive_inclusion, parse_proof, print_proof};
use glp_core::reduction::{eliminate_rule, parse_derivation, q_formula};
use glp_core::syntax::{as_worm, parse_formula, print_formula, ModalIndex, Worm};
use glp_core::worms::{worm_cmp, worm_of_ordinal, worm_ordinal};
use glp_core::{parse_ordinal, OrdinalBound};
use std::cmp::Ordering;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "glp",
    version,
    about = "Worms, their ordinals, and checkable descent certificates"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a formula and print its canonical text
    Parse { formula: String },
    /// Compare two worms in the consistency order; prints LT, EQ, or GT
    Cmp { left: String, right: String },
    /// The ordinal assigned to a worm
    Ord { worm: String },
    /// The canonical worm denoting an ordinal
    #[command(name = "worm-of")]
    WormOf { ordinal: String },
    /// The fundamental-sequence formula Q^k_n(phi)
    Q {
        level: String,
        k: usize,
        formula: String,
    },
    /// Generate a checked proof of <a+1>phi -> Q^k_a(phi)
    #[command(name = "prove-inclusion")]
    ProveInclusion {
        alpha: String,
        k: usize,
        formula: String,
    },
    /// Check a proof file
    Check { file: PathBuf },
    /// Generate a checked proof of right -> <0>left, certifying left < right
    #[command(name = "certify-less")]
    CertifyLess {
        left: String,
        right: String,
        /// Recursion budget for the generator
        #[arg(long, default_value_t = 64)]
        depth: usize,
    },
    /// Eliminate the reflection rule from a derivation file
    Eliminate { file: PathBuf },
    /// Build a descent certificate for a worm
    Certify {
        worm: String,
        /// Children per reduction node are Q^0..Q^k
        #[arg(long, default_value_t = 3)]
        k: usize,
        /// Write the certificate here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify a certificate file
    Verify { file: PathBuf },
    /// The ordinal bound of a theory file
    #[command(name = "theory-ord")]
    TheoryOrd { file: PathBuf },
}

fn main() -> ExitCode {
    match run(Cli::parse().command) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

const PASS: ExitCode = ExitCode::SUCCESS;
const DOMAIN_NO: u8 = 1;

/// `Err` is an input error (exit 2); `Ok` carries the domain exit code.
fn run(command: Command) -> Result<ExitCode, String> {
    match command {
        Command::Parse { formula } => {
            let f = parse_formula(&formula).map_err(|e| e.to_string())?;
            println!("{}", print_formula(&f));
            Ok(PASS)
        }
        Command::Cmp { left, right } => {
            let (a, b) = (worm_arg(&left)?, worm_arg(&right)?);
            let order = worm_cmp(&a, &b).map_err(|e| e.to_string())?;
            println!(
                "{}",
                match order {
                    Ordering::Less => "LT",
                    Ordering::Equal => "EQ",
                    Ordering::Greater => "GT",
                }
            );
            Ok(PASS)
        }
        Command::Ord { worm } => {
            let w = worm_arg(&worm)?;
            let o = worm_ordinal(&w).map_err(|e| e.to_string())?;
            println!("{o}");
            Ok(PASS)
        }
        Command::WormOf { ordinal } => {
            let a = parse_ordinal(&ordinal).map_err(|e| e.to_string())?;
            println!("{}", worm_of_ordinal(&a));
            Ok(PASS)
        }
        Command::Q { level, k, formula } => {
            let n = ModalIndex(parse_ordinal(&level).map_err(|e| e.to_string())?);
            let phi = parse_formula(&formula).map_err(|e| e.to_string())?;
            println!("{}", print_formula(&q_formula(&n, k, &phi)));
            Ok(PASS)
        }
        Command::ProveInclusion { alpha, k, formula } => {
            let a = parse_ordinal(&alpha).map_err(|e| e.to_string())?;
            let phi = parse_formula(&formula).map_err(|e| e.to_string())?;
            print!("{}", print_proof(&derive_inclusion(&a, k, &phi)));
            Ok(PASS)
        }
        Command::Check { file } => {
            let text = read(&file)?;
            let proof = parse_proof(&text).map_err(|e| e.to_string())?;
            match check_proof(&proof) {
                Ok(()) => {
                    println!("OK");
                    Ok(PASS)
                }
                Err(e) => {
                    println!("ERROR {e}");
                    Ok(ExitCode::from(DOMAIN_NO))
                }
            }
        }
        Command::CertifyLess { left, right, depth } => {
            let (a, b) = (worm_arg(&left)?, worm_arg(&right)?);
            match certify_less(&a, &b, depth) {
                Some(proof) => {
                    print!("{}", print_proof(&proof));
                    Ok(PASS)
                }
                None => {
                    println!("NOTFOUND");
                    Ok(ExitCode::from(DOMAIN_NO))
                }
            }
        }
        Command::Eliminate { file } => {
            let text = read(&file)?;
            let derivation = parse_derivation(&text).map_err(|e| e.to_string())?;
            match eliminate_rule(&derivation) {
                Ok((k, proof)) => {
                    println!("k {k}");
                    print!("{}", print_proof(&proof));
                    Ok(PASS)
                }
                Err(e) => {
                    println!("ERROR {e}");
                    Ok(ExitCode::from(DOMAIN_NO))
                }
            }
        }
        Command::Certify { worm, k, out } => {
            let w = worm_arg(&worm)?;
            let cert = build_certificate(&w, k, &SymbolicGlpProvider).map_err(|e| e.to_string())?;
            let json = cert.to_json();
            match out {
                Some(path) => std::fs::write(&path, json)
                    .map_err(|e| format!("cannot write {}: {e}", path.display()))?,
                None => print!("{json}"),
            }
            Ok(PASS)
        }
        Command::Verify { file } => {
            let text = read(&file)?;
            let cert = Certificate::from_json(&text).map_err(|e| e.to_string())?;
            match verify_certificate(&cert) {
                Ok(()) => {
                    println!("OK");
                    Ok(PASS)
                }
                Err(e) => {
                    println!("ERROR {e}");
                    Ok(ExitCode::from(DOMAIN_NO))
                }
            }
        }
        Command::TheoryOrd { file } => {
            let text = read(&file)?;
            let theory = TheorySpec::parse(&text).map_err(|e| e.to_string())?;
            match pi1_ordinal(&theory) {
                OrdinalBound::Below(a) => println!("{a}"),
                OrdinalBound::EpsilonZero => println!("e0"),
            }
            Ok(PASS)
        }
    }
}

fn worm_arg(text: &str) -> Result<Worm, String> {
    let f = parse_formula(text).map_err(|e| e.to_string())?;
    as_worm(&f).ok_or_else(|| format!("'{text}' is not a worm"))
}

fn read(path: &PathBuf) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
}
