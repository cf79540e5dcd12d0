//! Command-line front end: each subcommand runs a slice of the check
//! catalog and prints a JSON report to stdout.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use gu11_cli::report::{
    classgroup_checks, cm_checks, hondatate_checks, invariants_checks, lattice_checks,
    qseries_checks, theorem_report, verify_all, Report,
};
use gu11_core::arith::{is_prime, is_squarefree};

#[derive(Parser)]
#[command(
    name = "gu11",
    version,
    about = "Exact-arithmetic verification of unitary-similitude invariants for Q(sqrt(-N))"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run every check for all squarefree N up to a bound.
    VerifyAll {
        /// Largest N to scan (squarefree values only).
        #[arg(long, default_value_t = 10)]
        max_n: u64,
        /// Also write the JSON report to this path.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Form class group, ambiguous forms, and the similitude class number.
    Classgroup {
        #[arg(long)]
        n: u64,
    },
    /// Different, trace duality, representative search, and lattice duals.
    Lattice {
        #[arg(long)]
        n: u64,
    },
    /// CM matrices, polarization positivity, and automorphism counts.
    Cm {
        #[arg(long)]
        n: u64,
    },
    /// Classify abelian surfaces with an action of the ring of integers.
    HondaTate {
        #[arg(long)]
        n: u64,
        /// Working prime; must be split in Q(sqrt(-N)) and every auxiliary field.
        #[arg(long)]
        p: u64,
        /// Auxiliary imaginary quadratic radicands, comma-separated.
        #[arg(long, value_delimiter = ',')]
        aux: Vec<u64>,
    },
    /// Involution invariants of the graded ring at one level.
    Invariants {
        /// 1, 2, or 3.
        #[arg(long)]
        level: u8,
        /// Prime for the integrality scan (defaults to the level's prime).
        #[arg(long)]
        p: Option<u64>,
        /// Largest weight scanned in the generation checks.
        #[arg(long, default_value_t = 24)]
        max_weight: u32,
        /// Largest denominator exponent scanned in the generation checks.
        #[arg(long, default_value_t = 2)]
        max_denom: u32,
    },
    /// q-expansion oracle for the discriminant and Eisenstein series.
    Qseries {
        /// Number of coefficients to compare.
        #[arg(long, default_value_t = 64)]
        prec: usize,
    },
    /// Structural case-split summary for one field.
    Report {
        #[arg(long)]
        n: u64,
        /// Working prime; must be > 3 and split.
        #[arg(long)]
        p: Option<u64>,
    },
}

fn require_squarefree(n: u64) -> Result<(), String> {
    if n == 0 || !is_squarefree(n) {
        return Err(format!("N = {n} is not a squarefree positive integer"));
    }
    Ok(())
}

fn emit(report: Report) -> u8 {
    print!("{}", report.to_json());
    if report.has_fail() {
        1
    } else {
        0
    }
}

fn run(cli: Cli) -> Result<u8, String> {
    match cli.cmd {
        Cmd::VerifyAll { max_n, report } => {
            if max_n == 0 {
                return Err("--max-n must be at least 1".to_string());
            }
            let rep = verify_all(max_n);
            let json = rep.to_json();
            if let Some(path) = report {
                std::fs::write(&path, &json)
                    .map_err(|e| format!("cannot write report to {}: {e}", path.display()))?;
            }
            print!("{json}");
            Ok(if rep.has_fail() { 1 } else { 0 })
        }
        Cmd::Classgroup { n } => {
            require_squarefree(n)?;
            Ok(emit(Report::new(classgroup_checks(n))))
        }
        Cmd::Lattice { n } => {
            require_squarefree(n)?;
            Ok(emit(Report::new(lattice_checks(n))))
        }
        Cmd::Cm { n } => {
            require_squarefree(n)?;
            Ok(emit(Report::new(cm_checks(n))))
        }
        Cmd::HondaTate { n, p, aux } => {
            require_squarefree(n)?;
            let checks = hondatate_checks(n, p, &aux).map_err(|e| e.to_string())?;
            Ok(emit(Report::new(checks)))
        }
        Cmd::Invariants {
            level,
            p,
            max_weight,
            max_denom,
        } => {
            if !(1..=3).contains(&level) {
                return Err(format!("--level must be 1, 2, or 3 (got {level})"));
            }
            if let Some(p) = p {
                if !is_prime(p) {
                    return Err(format!("p = {p} is not prime"));
                }
            }
            Ok(emit(Report::new(invariants_checks(
                level, p, max_weight, max_denom,
            ))))
        }
        Cmd::Qseries { prec } => {
            if prec < 2 {
                return Err(format!("--prec must be at least 2 (got {prec})"));
            }
            let checks = qseries_checks(prec).map_err(|e| e.to_string())?;
            Ok(emit(Report::new(checks)))
        }
        Cmd::Report { n, p } => {
            let rep = theorem_report(n, p)?;
            print!("{}", rep.to_json());
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
