use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde::Serialize;

use dmodpoly::dimension::{bernstein_polynomial, count_uvw, dimension_polynomial, Presentation};
use dmodpoly::groebner::{complete_with_derivations, Limits};
use dmodpoly::io::{
    parse_presentation, to_json, BasisDocument, BernsteinDocument, DimensionDocument, InvariantsDocument,
};
use dmodpoly::oracle::{check_derivations, rank_dimension, RankQuery};
use dmodpoly::Error;

/// Dimension polynomials of modules over Weyl algebras with partitioned variables.
#[derive(Parser)]
#[command(name = "dmodpoly", version)]
struct Cli {
    /// Print timings to stderr.
    #[arg(short, long, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Groebner basis with leaders, rho-images and certified stages.
    Gb { file: PathBuf },
    /// The dimension polynomial and its parts.
    Dimpoly { file: PathBuf },
    /// The univariate polynomial with its dimension and multiplicity.
    Bernstein { file: PathBuf },
    /// Generator-independent data of the dimension polynomial.
    Invariants { file: PathBuf },
    /// Compares direct counting, the rank oracle and the polynomial on [0, rmax]^p.
    Check {
        file: PathBuf,
        #[arg(long, default_value_t = 4)]
        rmax: i64,
    },
    /// dim_K M_r by direct counting.
    Eval {
        file: PathBuf,
        /// Comma-separated radii, one per block.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        at: Vec<i64>,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Verification(_) => 2,
            Error::NotConverged(_) | Error::ThresholdNotFound(_) | Error::BudgetExceeded(_) => 3,
            _ => 1,
        };
        Self { code, message: e.to_string() }
    }
}

fn load(file: &PathBuf) -> Result<Presentation, Failure> {
    let text = std::fs::read_to_string(file)
        .map_err(|e| Failure { code: 1, message: format!("{}: {}", file.display(), e) })?;
    parse_presentation(&text).map_err(|e| Failure { code: 1, message: format!("{}: {}", file.display(), e) })
}

#[derive(Serialize)]
struct CheckPoint {
    r: Vec<i64>,
    count: u64,
    rank: u64,
    phi: String,
    agree: bool,
}

#[derive(Serialize)]
struct CheckDocument {
    points: Vec<CheckPoint>,
    /// Points where the polynomial was verified against counting.
    verified: Vec<CheckPoint>,
    mismatches: usize,
}

fn check(pres: &Presentation, rmax: i64) -> Result<(String, bool), Failure> {
    if rmax < 0 {
        return Err(Failure { code: 1, message: "--rmax must be nonnegative".into() });
    }
    let report = dimension_polynomial(pres)?;
    // Every element produced by completion joins the oracle's rows once its
    // derivation from the relations has been replayed.
    let mut known = Vec::new();
    if !pres.relations().is_empty() {
        let (_, trace) = complete_with_derivations(pres.relations(), pres.partition(), Limits::default())?;
        if !check_derivations(pres, &trace)? {
            return Err(Failure { code: 2, message: "completion trace does not replay".into() });
        }
        known = trace.elements;
    }
    let oracle = |r: &[i64]| rank_dimension(&RankQuery::new(pres.clone(), r.to_vec()).with_known(known.clone()));
    let mut points = Vec::new();
    let mut radii = vec![Vec::new()];
    for _ in 0..pres.p() {
        radii = radii
            .into_iter()
            .flat_map(|v: Vec<i64>| {
                (0..=rmax).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    let mut mismatches = 0;
    for r in radii {
        let count = count_uvw(&report.basis, &r)?.u();
        let rank = oracle(&r)?.dim;
        let agree = count == rank;
        mismatches += usize::from(!agree);
        points.push(CheckPoint { phi: report.phi.eval(&r).to_string(), r, count, rank, agree });
    }
    let mut verified = Vec::new();
    for (r, c) in &report.verified {
        let phi = report.phi.eval(r);
        let rank = oracle(r)?.dim;
        let count = count_uvw(&report.basis, r)?.u();
        let agree = phi == *c && count == rank;
        mismatches += usize::from(!agree);
        verified.push(CheckPoint { r: r.clone(), count, rank, phi: phi.to_string(), agree });
    }
    let doc = CheckDocument { points, verified, mismatches };
    Ok((to_json(&doc), mismatches == 0))
}

fn run(cli: &Cli) -> Result<String, Failure> {
    match &cli.command {
        Command::Gb { file } => Ok(to_json(&BasisDocument::new(&load(file)?.basis()?))),
        Command::Dimpoly { file } => Ok(to_json(&DimensionDocument::new(&dimension_polynomial(&load(file)?)?))),
        Command::Bernstein { file } => Ok(to_json(&BernsteinDocument::new(&bernstein_polynomial(&load(file)?)?))),
        Command::Invariants { file } => {
            let report = dimension_polynomial(&load(file)?)?;
            Ok(to_json(&InvariantsDocument::new(&report.invariants)))
        }
        Command::Check { file, rmax } => {
            let (text, ok) = check(&load(file)?, *rmax)?;
            if ok {
                Ok(text)
            } else {
                print!("{}", text);
                Err(Failure { code: 2, message: "counting and the rank oracle disagree".into() })
            }
        }
        Command::Eval { file, at } => {
            let pres = load(file)?;
            if at.len() != pres.p() {
                return Err(Failure { code: 1, message: format!("--at needs {} values, got {}", pres.p(), at.len()) });
            }
            let basis = pres.basis()?;
            Ok(format!("{}\n", count_uvw(&basis, at)?.u()))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let result = run(&cli);
    if cli.verbose {
        eprintln!("finished in {:?}", start.elapsed());
    }
    match result {
        Ok(text) => {
            print!("{}", text);
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
