//! The `elemgen` command line.
//!
//! Exit codes: 0 success, 1 parse or validation error, 2 verification
//! failure, 3 search or size budget exhausted.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;

use crate::certificate::{nu, Certificate};
use crate::corpus::{self, CorpusSpec};
use crate::decompose::{decompose_with, DecomposeOptions};
use crate::error::{Error, Result};
use crate::gf::FieldSpec;
use crate::main_step::FramedOptions;
use crate::poly::find_prime_in_progression;
use crate::selftest;
use crate::text::{format_matrix, format_poly, parse_matrix, parse_poly};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_VERIFY: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "elemgen", version, about = "Bounded elementary factorization of SL_n over F_q[X]")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decompose a matrix file into a certificate.
    Decompose {
        #[arg(short, long)]
        input: PathBuf,
        /// Certificate path; stdout when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        limits: Limits,
    },
    /// Check a certificate from scratch.
    Verify {
        #[arg(short, long)]
        cert: PathBuf,
    },
    /// Write a random SL_n matrix, the product of `len` random elementary matrices.
    Random {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(short, long)]
        n: usize,
        #[arg(long)]
        len: usize,
        /// Largest degree of the elementary parameters.
        #[arg(long)]
        deg: usize,
        #[arg(long, env = "ELEMGEN_SEED", default_value_t = 0)]
        seed: u64,
        /// Matrix path; stdout when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Decompose a seeded random corpus and report lengths and phase counts.
    Stats {
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[command(flatten)]
        field: FieldArgs,
        #[arg(short, long, default_value_t = 3)]
        n: usize,
        /// Each item is a word of length drawn uniformly from 0..=len.
        #[arg(long, default_value_t = 15)]
        len: usize,
        #[arg(long, default_value_t = 2)]
        deg: usize,
        #[arg(long, env = "ELEMGEN_SEED", default_value_t = 0)]
        seed: u64,
        /// Also write the report as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
        #[command(flatten)]
        limits: Limits,
    },
    /// Find a prime congruent to b modulo a.
    Prime {
        #[command(flatten)]
        field: FieldArgs,
        /// Modulus polynomial, e.g. "[0 1]" for X.
        #[arg(long = "mod-a")]
        mod_a: String,
        /// Residue polynomial, e.g. "[1]".
        #[arg(long = "res-b")]
        res_b: String,
        /// Only accept degrees coprime to this number.
        #[arg(long = "deg-coprime-to")]
        deg_coprime_to: Option<usize>,
        #[arg(long = "max-prime-degree", default_value_t = 24)]
        max_prime_degree: usize,
    },
    /// Run the built-in invariant checks.
    Selftest,
}

#[derive(Args, Debug, Clone)]
pub struct FieldArgs {
    /// Characteristic.
    #[arg(short, long, default_value_t = 2)]
    pub p: u32,
    /// Extension degree.
    #[arg(short, long, default_value_t = 1)]
    pub m: u32,
    /// Field modulus over GF(p), ascending, e.g. "[1 1 1]"; the least
    /// irreducible one when omitted.
    #[arg(long)]
    pub modulus: Option<String>,
}

impl FieldArgs {
    fn field(&self) -> Result<FieldSpec> {
        let modulus = match &self.modulus {
            None => None,
            Some(text) => {
                let prime = FieldSpec::prime(self.p)?;
                Some(parse_poly(&prime, text)?.codes())
            }
        };
        FieldSpec::with_modulus(self.p, self.m, modulus)
    }
}

#[derive(Args, Debug, Clone)]
pub struct Limits {
    /// Highest degree the prime search may reach.
    #[arg(long = "max-prime-degree", default_value_t = 24)]
    pub max_prime_degree: usize,
    /// Abort when the predicted entry degree of the output exceeds this.
    #[arg(long = "degree-ceiling", default_value_t = 100_000)]
    pub degree_ceiling: u64,
    /// Abort when the Cayley-Hamilton exponent exceeds this.
    #[arg(long = "max-exponent", default_value_t = 1_000_000)]
    pub max_exponent: u64,
}

impl Limits {
    fn options(&self) -> DecomposeOptions {
        DecomposeOptions {
            framed: FramedOptions {
                max_prime_degree: self.max_prime_degree,
                degree_ceiling: self.degree_ceiling,
                max_exponent: self.max_exponent,
                ..FramedOptions::default()
            },
            ..DecomposeOptions::default()
        }
    }
}

/// Exit code for an error.
pub fn exit_code(e: &Error) -> i32 {
    if e.is_budget() {
        EXIT_BUDGET
    } else {
        EXIT_INPUT
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
}

fn write_out(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn execute(cmd: Command) -> Result<i32> {
    match cmd {
        Command::Decompose { input, output, limits } => {
            let m = parse_matrix(&read(&input)?)?;
            let d = decompose_with(&m, &limits.options())?;
            let cert = d.certificate;
            if !cert.verified {
                eprintln!("error: certificate failed verification");
                return Ok(EXIT_VERIFY);
            }
            write_out(output.as_deref(), &(cert.to_json() + "\n"))?;
            if output.is_some() {
                println!(
                    "length {} (bound {}), breakdown {}",
                    cert.length,
                    cert.bound,
                    serde_json::to_string(&cert.breakdown)?
                );
            }
            Ok(EXIT_OK)
        }
        Command::Verify { cert } => {
            let c = match Certificate::from_json(&read(&cert)?) {
                Ok(c) => c,
                Err(e @ Error::Json(_)) => return Err(e),
                Err(e) => {
                    eprintln!("verification failed: {e}");
                    return Ok(EXIT_VERIFY);
                }
            };
            if c.verify() {
                println!("ok: {} factors, bound {}", c.length, c.bound);
                Ok(EXIT_OK)
            } else {
                eprintln!("verification failed: the factors do not reproduce the input within the bound");
                Ok(EXIT_VERIFY)
            }
        }
        Command::Random {
            field,
            n,
            len,
            deg,
            seed,
            output,
        } => {
            let f = field.field()?;
            let mut rng = corpus::rng(seed, corpus::stream::RANDOM);
            let m = corpus::random_word(&f, n, len, deg, &mut rng)?.product();
            write_out(output.as_deref(), &format_matrix(&m))?;
            Ok(EXIT_OK)
        }
        Command::Stats {
            count,
            field,
            n,
            len,
            deg,
            seed,
            json,
            limits,
        } => {
            let f = field.field()?;
            let spec = CorpusSpec {
                p: f.p(),
                m: f.m(),
                n,
                max_len: len,
                max_deg: deg,
                count,
                seed,
            };
            let report = stats(&spec, &f, &limits.options())?;
            print!("{}", report.table());
            if let Some(path) = json {
                fs::write(path, serde_json::to_string_pretty(&report)? + "\n")?;
            }
            Ok(if report.unverified > 0 {
                EXIT_VERIFY
            } else if report.failures.is_empty() {
                EXIT_OK
            } else if report.failures.iter().all(|f| f.budget) {
                EXIT_BUDGET
            } else {
                EXIT_INPUT
            })
        }
        Command::Prime {
            field,
            mod_a,
            res_b,
            deg_coprime_to,
            max_prime_degree,
        } => {
            let f = field.field()?;
            let a = parse_poly(&f, &mod_a)?;
            let b = parse_poly(&f, &res_b)?;
            let prime = find_prime_in_progression(&a, &b, deg_coprime_to, max_prime_degree)?;
            println!(
                "{} = {}, degree {}",
                format_poly(&prime),
                prime.pretty(),
                prime.degree().expect("nonzero")
            );
            Ok(EXIT_OK)
        }
        Command::Selftest => {
            let mut failed = false;
            for c in selftest::run() {
                match c.outcome {
                    Ok(()) => println!("PASS {}", c.name),
                    Err(msg) => {
                        failed = true;
                        println!("FAIL {}: {msg}", c.name);
                    }
                }
            }
            Ok(if failed { EXIT_VERIFY } else { EXIT_OK })
        }
    }
}

/// One corpus item that did not produce a certificate.
#[derive(Clone, Debug, Serialize)]
pub struct Failure {
    pub index: usize,
    pub budget: bool,
    pub message: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct StatsReport {
    pub p: u32,
    pub m: u32,
    pub n: usize,
    pub count: usize,
    pub max_len: usize,
    pub max_deg: usize,
    pub seed: u64,
    pub bound: usize,
    pub decomposed: usize,
    pub unverified: usize,
    pub min_length: usize,
    pub mean_length: f64,
    pub max_length: usize,
    pub max_entry_degree: isize,
    /// Phase name to a histogram of move counts.
    pub phases: BTreeMap<&'static str, BTreeMap<usize, usize>>,
    pub failures: Vec<Failure>,
}

impl StatsReport {
    pub fn table(&self) -> String {
        let mut s = format!(
            "SL_{} over GF({}^{}), {} items (word length <= {}, degree <= {}, seed {})\n",
            self.n, self.p, self.m, self.count, self.max_len, self.max_deg, self.seed
        );
        s += &format!("decomposed    {}\n", self.decomposed);
        s += &format!("unverified    {}\n", self.unverified);
        s += &format!("failures      {}\n", self.failures.len());
        s += &format!(
            "length        min {}  mean {:.2}  max {}  bound {}\n",
            self.min_length, self.mean_length, self.max_length, self.bound
        );
        s += &format!("max degree    {}\n", self.max_entry_degree);
        s += "phase histograms (moves: items)\n";
        for (name, hist) in &self.phases {
            let cells: Vec<String> = hist.iter().map(|(k, v)| format!("{k}:{v}")).collect();
            s += &format!("  {name:<13} {}\n", cells.join(" "));
        }
        for f in &self.failures {
            s += &format!("item {}: {}\n", f.index, f.message);
        }
        s
    }
}

/// Decomposes every corpus item, in parallel, and aggregates in item order.
pub fn stats(spec: &CorpusSpec, field: &FieldSpec, opts: &DecomposeOptions) -> Result<StatsReport> {
    let results: Vec<Result<std::result::Result<Certificate, Error>>> = (0..spec.count)
        .into_par_iter()
        .map(|i| {
            let m = spec.item(field, i)?;
            Ok(decompose_with(&m, opts).map(|d| d.certificate))
        })
        .collect();

    let mut certs = Vec::new();
    let mut failures = Vec::new();
    for (index, r) in results.into_iter().enumerate() {
        match r? {
            Ok(c) => certs.push(c),
            Err(e) => failures.push(Failure {
                index,
                budget: e.is_budget(),
                message: e.to_string(),
            }),
        }
    }
    let lengths: Vec<usize> = certs.iter().map(|c| c.length).collect();
    let mut phases: BTreeMap<&'static str, BTreeMap<usize, usize>> = BTreeMap::new();
    for c in &certs {
        let b = c.breakdown;
        for (name, v) in [
            ("stable_range", b.stable_range),
            ("primalize", b.primalize),
            ("x_side", b.x_side),
            ("patch", b.patch),
            ("y_side", b.y_side),
            ("finish", b.finish),
        ] {
            *phases.entry(name).or_default().entry(v).or_default() += 1;
        }
    }
    Ok(StatsReport {
        p: spec.p,
        m: spec.m,
        n: spec.n,
        count: spec.count,
        max_len: spec.max_len,
        max_deg: spec.max_deg,
        seed: spec.seed,
        bound: nu(spec.n),
        decomposed: certs.len(),
        unverified: certs.iter().filter(|c| !c.verify()).count(),
        min_length: lengths.iter().copied().min().unwrap_or(0),
        mean_length: if lengths.is_empty() {
            0.0
        } else {
            lengths.iter().sum::<usize>() as f64 / lengths.len() as f64
        },
        max_length: lengths.iter().copied().max().unwrap_or(0),
        max_entry_degree: certs.iter().map(|c| c.word.max_degree()).max().unwrap_or(-1),
        phases,
        failures,
    })
}
