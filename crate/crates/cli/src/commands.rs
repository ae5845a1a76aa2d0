use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use anyhow::{anyhow, Context};
use rayon::prelude::*;
use supertriv_core::endo::{self, EndoError, VerificationReport};
use supertriv_core::structure::{self, StructureError};
use supertriv_core::superalg::Family;
use supertriv_core::supermod::{self, ModuleError};
use supertriv_core::{OddVector, Parity, Rational, Supermodule};

use crate::format::ModuleFile;

/// Process exit codes.
pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_FAILURE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub error: anyhow::Error,
}

impl Failure {
    pub fn usage(error: impl Into<anyhow::Error>) -> Self {
        Failure { code: EXIT_USAGE, error: error.into() }
    }

    pub fn invalid(error: impl Into<anyhow::Error>) -> Self {
        Failure { code: EXIT_FAILURE, error: error.into() }
    }

    pub fn internal(error: impl Into<anyhow::Error>) -> Self {
        Failure { code: EXIT_INTERNAL, error: error.into() }
    }
}

// Every error the core reports (invalid modules, non-endotrivial input,
// unmet preconditions) is a validation failure; exit 3 is kept for panics.
impl From<EndoError> for Failure {
    fn from(e: EndoError) -> Self {
        Failure::invalid(e)
    }
}

impl From<StructureError> for Failure {
    fn from(e: StructureError) -> Self {
        Failure::invalid(e)
    }
}

impl From<ModuleError> for Failure {
    fn from(e: ModuleError) -> Self {
        Failure::invalid(e)
    }
}

/// What a command produced: text for stdout, an optional module to write,
/// and the exit code.
#[derive(Debug, Default)]
pub struct Outcome {
    pub stdout: String,
    pub module: Option<Supermodule>,
    pub code: i32,
}

impl Outcome {
    fn text(stdout: String) -> Self {
        Outcome { stdout, ..Default::default() }
    }

    fn module(m: Supermodule, stdout: String) -> Self {
        Outcome { stdout, module: Some(m), code: EXIT_OK }
    }
}

pub type CmdResult = Result<Outcome, Failure>;

pub fn read_module(path: &Path) -> Result<Supermodule, Failure> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))
        .map_err(Failure::usage)?;
    let file = ModuleFile::from_json(&text).map_err(|e| Failure::invalid(e.context(path.display().to_string())))?;
    file.to_module().map_err(|e| Failure::invalid(e.context(path.display().to_string())))
}

fn dims(m: &Supermodule) -> String {
    format!("{}|{}", m.space().dim_even, m.space().dim_odd)
}

pub fn validate(path: &Path) -> CmdResult {
    let m = read_module(path)?;
    Ok(Outcome::text(format!("ok: {} module of dimension {}\n", m.algebra().family(), dims(&m))))
}

pub fn info(path: &Path) -> CmdResult {
    let m = read_module(path)?;
    let mut out = String::new();
    writeln!(out, "algebra: {}", m.algebra().family()).unwrap();
    writeln!(out, "dimension: {} (even|odd)", dims(&m)).unwrap();
    match m.algebra().family() {
        Family::Exterior(_) => {
            writeln!(out, "rk: {}", structure::rk(&m)?).unwrap();
            writeln!(out, "socle dim: {}", structure::socle(&m)?.dim()).unwrap();
            writeln!(out, "projective: {}", structure::is_projective(&m)?).unwrap();
        }
        Family::E(_) | Family::F(_) => {
            let p = structure::principal_block(&m)?;
            writeln!(out, "principal block: {}", dims(&p)).unwrap();
            writeln!(out, "rk (principal block): {}", structure::rk(&p)?).unwrap();
            writeln!(out, "socle dim (principal block): {}", structure::socle(&p)?.dim()).unwrap();
            writeln!(out, "projective (principal block): {}", structure::is_projective(&p)?).unwrap();
        }
        Family::Gl11 => writeln!(out, "rk, socle, projectivity: only defined over exterior algebras").unwrap(),
    }
    match structure::weight_decompose(&m) {
        Ok(pieces) => {
            writeln!(out, "weights:").unwrap();
            for p in pieces {
                let w: Vec<String> = p.weight.iter().map(Rational::to_string).collect();
                writeln!(out, "  ({}): {}", w.join(", "), dims(&p.module)).unwrap();
            }
        }
        Err(_) => writeln!(out, "weights: none (no torus weights for {})", m.algebra().family()).unwrap(),
    }
    Ok(Outcome::text(out))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Op {
    Tensor,
    Dual,
    Hom,
    Sum,
    Outer,
    Pi,
    Restrict,
}

impl Op {
    pub fn arity(self) -> usize {
        match self {
            Op::Dual | Op::Pi | Op::Restrict => 1,
            _ => 2,
        }
    }
}

/// Parses `"c1,c2,…"` into an odd vector.
pub fn parse_odd_vector(s: &str) -> Result<OddVector, Failure> {
    let coefficients = s
        .split(',')
        .map(|c| c.trim().parse::<Rational>().map_err(|e| Failure::usage(anyhow!("odd vector {s:?}: {e}"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(OddVector::new(coefficients))
}

pub fn op(op: Op, paths: &[&Path], vectors: &[String]) -> CmdResult {
    if paths.len() != op.arity() {
        return Err(Failure::usage(anyhow!("{op:?} takes {} module file(s), got {}", op.arity(), paths.len())));
    }
    if op == Op::Restrict && vectors.is_empty() {
        return Err(Failure::usage(anyhow!("restrict needs at least one --v")));
    }
    let ms = paths.iter().map(|p| read_module(p)).collect::<Result<Vec<_>, _>>()?;
    let out = match op {
        Op::Tensor => supermod::tensor(&ms[0], &ms[1])?,
        Op::Dual => supermod::dual(&ms[0]),
        Op::Hom => supermod::hom_module(&ms[0], &ms[1])?,
        Op::Sum => supermod::direct_sum(&ms[0], &ms[1])?,
        Op::Outer => supermod::outer_tensor(&ms[0], &ms[1])?,
        Op::Pi => supermod::parity_shift(&ms[0]),
        Op::Restrict => {
            let vs = vectors.iter().map(|v| parse_odd_vector(v)).collect::<Result<Vec<_>, _>>()?;
            supermod::restrict(&ms[0], &vs)?
        }
    };
    Ok(Outcome::module(out, String::new()))
}

pub fn syzygy(path: &Path, n: i64) -> CmdResult {
    let m = read_module(path)?;
    let m = structure::principal_block(&m)?;
    Ok(Outcome::module(structure::syzygy(&m, n)?, String::new()))
}

pub fn strip(path: &Path) -> CmdResult {
    let m = read_module(path)?;
    let s = structure::strip_projectives(&m)?;
    let text = format!(
        "core: {}\nprojective summands: {} (even generator {}, odd generator {})\n",
        dims(&s.core),
        s.projective_count(),
        s.proj_mult_even,
        s.proj_mult_odd
    );
    Ok(Outcome::module(s.core, text))
}

pub fn classify(path: &Path) -> CmdResult {
    let m = read_module(path)?;
    match endo::classify(&m) {
        Ok(c) => Ok(Outcome::text(format!("{c}\n"))),
        Err(EndoError::NotEndotrivial) => Ok(Outcome {
            stdout: "NOT_ENDOTRIVIAL\n".into(),
            module: None,
            code: EXIT_FAILURE,
        }),
        Err(e) => Err(e.into()),
    }
}

pub const SUITES: [&str; 7] = ["ext1", "even_dim", "rank1", "rank_r", "rank_variety", "restriction", "syzygy_calculus"];

#[derive(Clone, Debug)]
pub struct VerifyArgs {
    pub rank: usize,
    pub range: i64,
    pub samples: usize,
    pub seed: u64,
    pub suite: String,
    pub json: bool,
}

fn run_suite(name: &str, a: &VerifyArgs) -> Result<Vec<VerificationReport>, Failure> {
    let r = a.rank;
    let k = |n: i64, s: Parity| endo::omega_k(r, n, s);
    let reports = match name {
        "rank1" => vec![endo::verify_rank1(a.range)],
        "rank_r" if r == 1 => vec![endo::verify_rank1(a.range)],
        "rank_r" => vec![endo::verify_rank_r(r, a.range)?],
        "restriction" => {
            let r3 = r.max(3);
            let cases = [(2, Parity::Even), (1, Parity::Odd), (0, Parity::Odd)];
            cases
                .iter()
                .enumerate()
                .map(|(i, &(n, s))| endo::restriction_constancy(&endo::omega_k(r3, n, s)?, a.samples, a.seed.wrapping_add(i as u64)))
                .collect::<Result<_, _>>()?
        }
        "rank_variety" => {
            let ms = [supermod::exterior_regular(r)?, k(1, Parity::Even)?, k(0, Parity::Even)?];
            ms.iter()
                .enumerate()
                .map(|(i, m)| endo::rank_variety_sample(m, a.samples, a.seed.wrapping_add(i as u64)))
                .collect::<Result<_, _>>()?
        }
        "even_dim" => vec![
            endo::verify_even_dim_nonprincipal(Family::F(r), a.samples, a.seed)?,
            endo::verify_even_dim_nonprincipal(Family::E(r), a.samples, a.seed)?,
        ],
        "ext1" => {
            let b = a.range.min(3);
            let mut out = Vec::new();
            for n in -b..=b {
                for s in [Parity::Even, Parity::Odd] {
                    let mut rep = endo::verify_ext1(&k(n, s)?)?;
                    rep.suite = format!("ext1(Ω^{n}(k_{}))", s.label());
                    out.push(rep);
                }
            }
            out
        }
        "syzygy_calculus" => vec![endo::syzygy_calculus(a.samples, 12, a.seed)],
        other => return Err(Failure::usage(anyhow!("unknown suite {other:?}; expected one of {} or all", SUITES.join(", ")))),
    };
    Ok(reports)
}

pub fn verify(a: &VerifyArgs) -> CmdResult {
    if a.rank == 0 {
        return Err(Failure::usage(anyhow!("--rank must be positive")));
    }
    let names: Vec<&str> = if a.suite == "all" { SUITES.to_vec() } else { vec![a.suite.as_str()] };
    // SUITES is sorted, so the output order is fixed whatever the scheduling.
    let results: Vec<Result<Vec<VerificationReport>, Failure>> = names.par_iter().map(|n| run_suite(n, a)).collect();
    let mut reports = Vec::new();
    for r in results {
        reports.extend(r?);
    }
    let passed = reports.iter().all(VerificationReport::passed);
    let stdout = if a.json {
        let mut s = serde_json::to_string_pretty(&reports).map_err(Failure::internal)?;
        s.push('\n');
        s
    } else {
        let mut s: String = reports.iter().map(|r| format!("{r}\n")).collect();
        let total: usize = reports.iter().map(|r| r.checks.len()).sum();
        let failed: usize = reports.iter().map(|r| r.failures().count()).sum();
        writeln!(s, "{}: {} of {total} checks passed", if passed { "ALL PASS" } else { "FAILURES" }, total - failed).unwrap();
        s
    };
    Ok(Outcome {
        stdout,
        module: None,
        code: if passed { EXIT_OK } else { EXIT_FAILURE },
    })
}
