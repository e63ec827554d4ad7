use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use iwasawa_core::gr::{exponent_sequence, gr_rhs, verify_iota_invariance, RankSequence};
use iwasawa_core::greenberg::{criterion1_check, criterion2_check};
use iwasawa_core::hypothesis::{check_hcyc, scan, NewformRecord, TwistQuery, TwistRange, Verdict};
use iwasawa_core::lambda::{cyclotomic_phi, weierstrass_prepare, DistinguishedPoly, LambdaSeries};
use iwasawa_core::module::{char_ideal, lambda_invariant, mu_invariant, ElementaryModule, ModuleSpecFile};
use iwasawa_core::Error;
use num_bigint::BigInt;

const EXIT_FAIL: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_VIOLATION: u8 = 3;

#[derive(Parser)]
#[command(name = "iwasawa", version, about = "Exact computations in the Iwasawa algebra Z_p[[X]]")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print Φ_n(X) (the p^n-th cyclotomic polynomial at 1+X), ascending coefficients.
    Phi {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: u32,
    },
    /// Factor a power series as p^μ · P · u.
    Weierstrass {
        #[arg(long)]
        p: u64,
        /// p-adic precision: coefficients are known mod p^a.
        #[arg(long)]
        a: u32,
        /// X-adic precision: the series is known mod X^b.
        #[arg(long)]
        b: usize,
        /// Ascending coefficients.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        coeffs: Vec<i128>,
    },
    /// Invariants of a module spec file.
    ModuleInv {
        #[arg(long)]
        spec: PathBuf,
    },
    /// Pseudo-isomorphism criteria.
    Greenberg {
        #[command(subcommand)]
        command: GreenbergCommand,
    },
    /// Factored right side Π Φ_n^(e_n - 1) from a rank sequence.
    GrRhs {
        #[arg(long)]
        p: u64,
        #[arg(long, value_delimiter = ',', required = true)]
        ranks: Vec<u64>,
    },
    /// Local hypothesis check for newforms.
    Hcyc {
        #[command(subcommand)]
        command: HcycCommand,
    },
}

#[derive(Subcommand)]
enum GreenbergCommand {
    /// Compare U and V under both criteria.
    Compare {
        #[arg(long)]
        u: PathBuf,
        #[arg(long)]
        v: PathBuf,
        /// Irreducible distinguished F, ascending coefficients.
        #[arg(long = "f", value_delimiter = ',', allow_hyphen_values = true, required = true)]
        poly: Vec<i128>,
        #[arg(long, default_value_t = 4)]
        m_max: u32,
        #[arg(long, default_value_t = 3)]
        e_max: u32,
        #[arg(long, default_value_t = 3)]
        n_max: u32,
    },
}

#[derive(Subcommand)]
enum HcycCommand {
    /// Check one (p, i); exit 1 when the conditions fail.
    Check {
        #[arg(long)]
        newform: PathBuf,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        i: u64,
    },
    /// One line per (p, i) for odd p <= p-max.
    Scan(ScanArgs),
}

#[derive(Args)]
struct ScanArgs {
    #[arg(long)]
    newform: PathBuf,
    #[arg(long)]
    p_max: u64,
    #[arg(long, conflicts_with = "i_all")]
    i: Option<u64>,
    /// Every twist 0..=k (the default).
    #[arg(long)]
    i_all: bool,
}

enum Failure {
    Invalid(String),
    Exit(u8),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Invalid(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))
}

fn load_module(path: &Path) -> Result<ElementaryModule, Failure> {
    Ok(ModuleSpecFile::from_json(&read(path)?)?.to_module()?)
}

fn load_records(path: &Path) -> Result<Vec<NewformRecord>, Failure> {
    Ok(NewformRecord::parse_json(&read(path)?)?)
}

fn csv<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Phi { p, n } => {
            println!("{}", cyclotomic_phi(n, iwasawa_core::arith::check_odd_prime(p)?)?.to_csv());
        }
        Command::Weierstrass { p, a, b, coeffs } => {
            let f = LambdaSeries::new(p, a, b, &coeffs)?;
            let w = weierstrass_prepare(&f)?;
            println!("mu = {}", w.mu);
            println!("lambda = {}", w.lambda());
            println!("P = {}  (mod p^{})", w.distinguished_part.to_csv(), w.distinguished_p_precision);
            println!(
                "u = {}  (mod p^{}, X^{})",
                csv(&w.unit_part.balanced_coeffs()),
                w.unit_part.p_precision(),
                w.unit_part.x_precision()
            );
            println!("valid mod p^{}, X^{}", w.result_p_precision, w.result_x_precision);
        }
        Command::ModuleInv { spec } => {
            let m = load_module(&spec)?;
            println!("module = {m}");
            println!("mu = {}", mu_invariant(&m));
            println!("lambda = {}", lambda_invariant(&m));
            match char_ideal(&m) {
                Ok(c) => println!("char = {c}"),
                Err(Error::NotTorsion(r)) => println!("char = 0 (free rank {r})"),
                Err(e) => return Err(e.into()),
            }
            println!("canonical = {}", ModuleSpecFile::from_module(&m)?.to_json());
        }
        Command::Greenberg { command: GreenbergCommand::Compare { u, v, poly, m_max, e_max, n_max } } => {
            let (u, v) = (load_module(&u)?, load_module(&v)?);
            let poly = DistinguishedPoly::new(u.prime(), poly.into_iter().map(BigInt::from).collect())?;
            let c1 = criterion1_check(&u, &v, &poly, m_max)?;
            let c2 = criterion2_check(&u, &v, e_max, n_max)?;
            println!("{c1}");
            println!("{c2}");
            if !(c1.consistent() && c2.consistent()) {
                println!("equivalence violated");
                return Err(Failure::Exit(EXIT_VIOLATION));
            }
        }
        Command::GrRhs { p, ranks } => {
            let seq = RankSequence::new(p, ranks)?;
            let rhs = gr_rhs(&seq)?;
            println!("e = {}", csv(&exponent_sequence(&seq)?));
            println!("rhs = {rhs}");
            println!("degree = {}", rhs.degree()?);
            println!("iota_invariant = {}", verify_iota_invariance(&rhs)?);
        }
        Command::Hcyc { command: HcycCommand::Check { newform, p, i } } => {
            let mut failed = false;
            for record in load_records(&newform)? {
                let report = check_hcyc(&record, &TwistQuery { p, i })?;
                println!("{}", report.line());
                failed |= report.verdict == Verdict::Fail;
            }
            if failed {
                return Err(Failure::Exit(EXIT_FAIL));
            }
        }
        Command::Hcyc { command: HcycCommand::Scan(args) } => {
            let twists = match args.i {
                Some(i) if !args.i_all => TwistRange::Single(i),
                _ => TwistRange::All,
            };
            for record in load_records(&args.newform)? {
                for entry in scan(&record, args.p_max, twists)? {
                    println!("{}", entry.line());
                }
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help / --version
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let text = e.to_string();
            let first = text.lines().next().unwrap_or("invalid arguments");
            eprintln!("error: {}", first.trim_start_matches("error: "));
            return ExitCode::from(EXIT_INVALID);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Exit(code)) => ExitCode::from(code),
        Err(Failure::Invalid(msg)) => {
            eprintln!("error: {}", msg.replace('\n', " "));
            ExitCode::from(EXIT_INVALID)
        }
    }
}
