//! Command-line interface.
//!
//! Exit codes: 0 success, 1 internal error, 2 unreadable or malformed input,
//! 3 data too short or degenerate for the request, 4 every requested point
//! is a pole, 5 the period does not divide the number of terms.

use std::ffi::OsString;
use std::io::Write;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::json;

use crate::error::Error;
use crate::gjmatrix::assemble;
use crate::io::{read_input, render_moments, render_pfraction, Input};
use crate::moments::{normalize, MomentSequence};
use crate::pade::{catalan_weyl, convergence_run, diagonal};
use crate::periodic::{monodromy, scan, Label, PeriodicGJM, Region};
use crate::pfraction::{expand, to_moments, PFraction, DEFAULT_DEGREE_CAP};
use crate::polyrec::generate;
use crate::scalar::{Rational, Scalar};
use crate::spectral::resolvent_certificate;

#[derive(Debug, Parser)]
#[command(
    name = "gjacobi",
    version,
    about = "P-fractions, generalized Jacobi matrices, Padé approximants and periodic spectra"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Exact rational arithmetic (default).
    #[arg(long, global = true, conflicts_with = "float")]
    pub exact: bool,
    /// Double precision arithmetic.
    #[arg(long, global = true)]
    pub float: bool,
    /// Classification tolerance.
    #[arg(long, global = true, value_parser = positive_f64)]
    pub tol: Option<f64>,
    /// Seed for randomized initialization.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Output file (standard output if absent).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Reference {
    /// `m(λ) = (−λ + λ√(1 − 4/λ²))/2`.
    SqrtCatalan,
    /// The m-function of the deepest available truncation.
    Deep,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Expand a moment file into a P-fraction.
    Expand {
        input: PathBuf,
        #[command(flatten)]
        limits: Limits,
    },
    /// Reconstruct moments from a P-fraction file.
    Moments {
        input: PathBuf,
        /// Number of moments (default: all certified ones).
        #[arg(long)]
        count: Option<usize>,
    },
    /// Diagonal Padé approximants at a point.
    Pade {
        input: PathBuf,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        lambda: Complex64,
        /// Inclusive range `a..b` of diagonal indices, or a single index.
        #[arg(long, value_parser = parse_orders)]
        orders: Option<RangeInclusive<usize>>,
        #[arg(long, value_enum)]
        reference: Option<Reference>,
        #[command(flatten)]
        limits: Limits,
    },
    /// Spectrum of a periodic matrix on a grid.
    Spectrum {
        input: PathBuf,
        #[arg(long)]
        period: usize,
        #[arg(long, default_value = "-2,2,-2,2", allow_hyphen_values = true)]
        region: String,
        /// Cells per axis, `N` or `NX,NY`.
        #[arg(long, default_value = "200", value_parser = parse_grid)]
        grid: (usize, usize),
        #[command(flatten)]
        limits: Limits,
    },
    /// Numerical resolvent-point certificate.
    Certify {
        input: PathBuf,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        lambda: Complex64,
        #[arg(long, default_value_t = 40, value_parser = clap::value_parser!(u64).range(1..))]
        depth: u64,
        /// Weyl function value (default: deepest truncation).
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        m: Option<Complex64>,
        #[command(flatten)]
        limits: Limits,
    },
    /// Run built-in consistency checks.
    Selftest,
}

/// Limits for expanding moment input.
#[derive(Debug, Args, Clone, Copy)]
pub struct Limits {
    #[arg(long, default_value_t = 64)]
    pub max_terms: usize,
    #[arg(long, default_value_t = DEFAULT_DEGREE_CAP)]
    pub degree_cap: usize,
}

fn positive_f64(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        _ => Err(format!("expected a positive number, got {s:?}")),
    }
}

/// `"re,im"` or `"re"`.
pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let bad = || format!("expected re,im, got {s:?}");
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |p: &str| p.parse::<f64>().ok().filter(|v| v.is_finite()).ok_or_else(bad);
    match parts[..] {
        [re] => Ok(Complex64::new(num(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(num(re)?, num(im)?)),
        _ => Err(bad()),
    }
}

fn parse_orders(s: &str) -> Result<RangeInclusive<usize>, String> {
    let bad = || format!("expected a..b or a single index, got {s:?}");
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (a.parse().map_err(|_| bad())?, b.trim_start_matches('=').parse().map_err(|_| bad())?),
        None => {
            let a = s.parse().map_err(|_| bad())?;
            (a, a)
        }
    };
    if a == 0 || a > b {
        return Err(bad());
    }
    Ok(a..=b)
}

fn parse_grid(s: &str) -> Result<(usize, usize), String> {
    let bad = || format!("expected N or NX,NY (at least 2), got {s:?}");
    let v: Vec<usize> = s.split(',').map(|p| p.trim().parse().map_err(|_| bad())).collect::<Result<_, _>>()?;
    match v[..] {
        [n] if n >= 2 => Ok((n, n)),
        [nx, ny] if nx >= 2 && ny >= 2 => Ok((nx, ny)),
        _ => Err(bad()),
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Lib(#[from] Error),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Lib(e) => match e {
                Error::Parse(_) => 2,
                Error::InsufficientMoments { .. }
                | Error::AllZero
                | Error::DegreeCapExceeded { .. }
                | Error::EmptyPFraction
                | Error::NotEnoughTerms { .. }
                | Error::TruncationTooShallow { .. }
                | Error::MissingCoupling(_) => 3,
                Error::PoleAtLambda => 4,
                Error::PeriodMismatch { .. } => 5,
                _ => 1,
            },
            CliError::Io(_) => 2,
            CliError::Failed(_) => 1,
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let result = if cli.global.float { execute::<f64>(&cli) } else { execute::<Rational>(&cli) };
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn execute<T: Scalar>(cli: &Cli) -> CliResult<()> {
    let g = &cli.global;
    match &cli.command {
        Command::Expand { input, limits } => cmd_expand::<T>(g, input, *limits),
        Command::Moments { input, count } => cmd_moments::<T>(g, input, *count),
        Command::Pade {
            input,
            lambda,
            orders,
            reference,
            limits,
        } => cmd_pade::<T>(g, input, *lambda, orders.clone(), *reference, *limits),
        Command::Spectrum {
            input,
            period,
            region,
            grid,
            limits,
        } => cmd_spectrum::<T>(g, input, *period, region, *grid, *limits),
        Command::Certify {
            input,
            lambda,
            depth,
            m,
            limits,
        } => cmd_certify::<T>(g, input, *lambda, *depth as usize, *m, *limits),
        Command::Selftest => cmd_selftest(),
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> CliResult<()> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

/// A P-fraction from either input format, with the normalized moments and
/// the scale divided out of them when the input held moments.
fn load_pfraction<T: Scalar>(path: &Path, limits: Limits) -> CliResult<(PFraction<T>, Option<MomentSequence<T>>, f64)> {
    match read_input::<T>(path)? {
        Input::Moments(s) => {
            let pf = expand(&s, limits.max_terms, limits.degree_cap)?;
            let normalized = normalize(&s)?;
            let scale = normalized.scale().approx();
            Ok((pf, Some(normalized), scale))
        }
        Input::PFraction(pf) => Ok((pf, None, 1.0)),
    }
}

fn cmd_expand<T: Scalar>(g: &Global, input: &Path, limits: Limits) -> CliResult<()> {
    let s = match read_input::<T>(input)? {
        Input::Moments(s) => s,
        Input::PFraction(_) => return Err(Error::Parse("expand needs a moments file".into()).into()),
    };
    let pf = expand(&s, limits.max_terms, limits.degree_cap)?;
    let text = match g.format {
        Some(Format::Csv) => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["j", "epsilon", "b_squared", "p"]).map_err(csv_err)?;
            for (j, t) in pf.terms.iter().enumerate() {
                let p: Vec<String> = t.p.coeffs().iter().map(Scalar::render).collect();
                let b2 = t.b_squared.as_ref().map(Scalar::render).unwrap_or_default();
                w.write_record([j.to_string(), t.epsilon.as_i8().to_string(), b2, p.join(" ")])
                    .map_err(csv_err)?;
            }
            csv_text(w)?
        }
        _ => render_pfraction(&pf),
    };
    emit(&g.out, &text)?;
    let list = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
    eprintln!("status: {:?}", pf.status);
    eprintln!("n_j: {}", list(&pf.normal_indices()));
    eprintln!("k_j: {}", list(&pf.block_degrees()));
    Ok(())
}

fn cmd_moments<T: Scalar>(g: &Global, input: &Path, count: Option<usize>) -> CliResult<()> {
    let pf = match read_input::<T>(input)? {
        Input::PFraction(pf) => pf,
        Input::Moments(_) => return Err(Error::Parse("moments needs a P-fraction file".into()).into()),
    };
    let certified = 2 * pf.offsets().last().copied().unwrap_or(0);
    let count = count.unwrap_or(certified);
    let s = to_moments(&pf, count)?;
    let text = match g.format {
        Some(Format::Csv) => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["i", "s"]).map_err(csv_err)?;
            for (i, c) in s.coeffs().iter().enumerate() {
                w.write_record([i.to_string(), c.render()]).map_err(csv_err)?;
            }
            csv_text(w)?
        }
        _ => render_moments(&s),
    };
    emit(&g.out, &text)?;
    if let Some(limit) = pf.certified_moments().filter(|&c| c < count) {
        eprintln!("warning: only the first {limit} moments are determined by the P-fraction");
    }
    Ok(())
}

fn csv_err(e: csv::Error) -> CliError {
    CliError::Failed(e.to_string())
}

fn csv_text(w: csv::Writer<Vec<u8>>) -> CliResult<String> {
    let bytes = w.into_inner().map_err(|e| CliError::Failed(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Failed(e.to_string()))
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(|x| format!("{x:e}")).unwrap_or_default()
}

fn cmd_pade<T: Scalar>(
    g: &Global,
    input: &Path,
    lambda: Complex64,
    orders: Option<RangeInclusive<usize>>,
    reference: Option<Reference>,
    limits: Limits,
) -> CliResult<()> {
    let (pf, moments, scale) = load_pfraction::<T>(input, limits)?;
    let moments = match moments {
        Some(s) => s,
        None => to_moments(&pf, 2 * pf.offsets().last().copied().unwrap_or(0))?,
    };
    let orders = orders.unwrap_or(1..=pf.len().min(8));
    let seqs = generate(&pf, *orders.end())?;
    let target = match reference {
        Some(Reference::SqrtCatalan) => Some(catalan_weyl(lambda)),
        Some(Reference::Deep) => Some(scale * assemble(&pf)?.m_truncation(pf.len() - 1, lambda)?),
        None => None,
    };
    let j_list: Vec<usize> = orders.collect();
    let run = convergence_run(&seqs, lambda, &j_list, |_| target.unwrap_or_default() / scale)?;
    if run.rows.iter().all(|r| r.value.is_none()) {
        return Err(Error::PoleAtLambda.into());
    }
    let mut rows = Vec::with_capacity(run.rows.len());
    for row in &run.rows {
        let order = diagonal(&seqs, row.j)?.match_order(&moments).ok().flatten();
        let value = row.value.map(|v| v * scale);
        let error = target.and(row.abs_error.map(|e| e * scale));
        rows.push((row.j, row.n, value, error, order));
    }
    let ratio = target.and(run.ratio);
    let text = match g.format {
        Some(Format::Json) => {
            let rows: Vec<_> = rows
                .iter()
                .map(|(j, n, v, e, o)| json!({"j": j, "n_j": n, "value": v.map(|v| [v.re, v.im]), "abs_error": e, "match_order": o}))
                .collect();
            serde_json::to_string_pretty(&json!({"lambda": [lambda.re, lambda.im], "ratio": ratio, "rows": rows}))
                .map_err(|e| CliError::Failed(e.to_string()))?
                + "\n"
        }
        _ => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["j", "n_j", "value_re", "value_im", "abs_error", "match_order"])
                .map_err(csv_err)?;
            for (j, n, v, e, o) in &rows {
                w.write_record([
                    j.to_string(),
                    n.to_string(),
                    fmt_opt(v.map(|v| v.re)),
                    fmt_opt(v.map(|v| v.im)),
                    fmt_opt(*e),
                    o.map(|o| o.to_string()).unwrap_or_default(),
                ])
                .map_err(csv_err)?;
            }
            csv_text(w)?
        }
    };
    emit(&g.out, &text)?;
    if let Some(r) = ratio {
        eprintln!("ratio: {r:.6}");
    }
    Ok(())
}

fn cmd_spectrum<T: Scalar>(g: &Global, input: &Path, period: usize, region: &str, grid: (usize, usize), limits: Limits) -> CliResult<()> {
    let region: Region = region.parse()?;
    let (pf, _, _) = load_pfraction::<T>(input, limits)?;
    let pg = PeriodicGJM::from_pfraction(&pf, period)?;
    let mono = monodromy(&pg)?;
    let tol = g.tol.unwrap_or(1e-3);
    let result = scan(&mono, region, grid.0, grid.1, tol, g.seed);
    let summary = json!({
        "period": period,
        "region": [region.re_min, region.re_max, region.im_min, region.im_max],
        "grid": [grid.0, grid.1],
        "tol": tol,
        "counts": {
            "E": result.count(Label::E),
            "E_p": result.count(Label::Ep),
            "resolvent": result.count(Label::Resolvent),
        },
        "ep_roots": result.ep_roots.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>(),
        "roots_converged": result.roots_converged,
        "det_defect": mono.det_defect,
    });
    let summary = serde_json::to_string_pretty(&summary).map_err(|e| CliError::Failed(e.to_string()))? + "\n";
    let body = match g.format {
        Some(Format::Json) => serde_json::to_string(&result.points).map_err(|e| CliError::Failed(e.to_string()))? + "\n",
        _ => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["re", "im", "label", "trace_re", "trace_im", "w1_abs", "w2_abs"])
                .map_err(csv_err)?;
            for p in &result.points {
                w.write_record([
                    p.re.to_string(),
                    p.im.to_string(),
                    p.label.as_str().to_string(),
                    format!("{:e}", p.trace_re),
                    format!("{:e}", p.trace_im),
                    format!("{:e}", p.w1_abs),
                    format!("{:e}", p.w2_abs),
                ])
                .map_err(csv_err)?;
            }
            csv_text(w)?
        }
    };
    match &g.out {
        Some(_) => {
            emit(&g.out, &body)?;
            print!("{summary}");
        }
        None => {
            print!("{body}");
            eprint!("{summary}");
        }
    }
    Ok(())
}

fn cmd_certify<T: Scalar>(g: &Global, input: &Path, lambda: Complex64, depth: usize, m: Option<Complex64>, limits: Limits) -> CliResult<()> {
    let (pf, _, _) = load_pfraction::<T>(input, limits)?;
    let seqs = generate(&pf, depth)?;
    let m_value = match m {
        Some(m) => m,
        None => assemble(&pf)?.m_truncation(pf.len() - 1, lambda)?,
    };
    let cert = resolvent_certificate(&seqs, lambda, m_value, depth)?;
    let text = serde_json::to_string_pretty(&cert).map_err(|e| CliError::Failed(e.to_string()))? + "\n";
    emit(&g.out, &text)
}

fn cmd_selftest() -> CliResult<()> {
    let checks = crate::selftest::run();
    let mut failed = 0;
    for (name, ok) in &checks {
        println!("{} {name}", if *ok { "PASS" } else { "FAIL" });
        failed += usize::from(!ok);
    }
    if failed > 0 {
        return Err(CliError::Failed(format!("{failed} of {} checks failed", checks.len())));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn argument_parsers() {
        assert_eq!(parse_complex("3,0").unwrap(), Complex64::new(3.0, 0.0));
        assert_eq!(parse_complex(" -1.5 , 2 ").unwrap(), Complex64::new(-1.5, 2.0));
        assert_eq!(parse_complex("2").unwrap(), Complex64::new(2.0, 0.0));
        assert!(parse_complex("1,2,3").is_err());
        assert!(parse_complex("nan,0").is_err());
        assert_eq!(parse_orders("1..8").unwrap(), 1..=8);
        assert_eq!(parse_orders("3").unwrap(), 3..=3);
        assert!(parse_orders("0..2").is_err());
        assert!(parse_orders("5..2").is_err());
        assert_eq!(parse_grid("200").unwrap(), (200, 200));
        assert_eq!(parse_grid("10,20").unwrap(), (10, 20));
        assert!(parse_grid("1").is_err());
        assert!(positive_f64("0").is_err());
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run(["gjacobi", "pade", "x.json"]), 2);
        assert_eq!(run(["gjacobi", "expand", "x.json", "--tol", "-1"]), 2);
        assert_eq!(run(["gjacobi", "--exact", "--float", "selftest"]), 2);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::Lib(Error::AllZero).exit_code(), 3);
        assert_eq!(CliError::Lib(Error::PoleAtLambda).exit_code(), 4);
        assert_eq!(CliError::Lib(Error::PeriodMismatch { period: 3, terms: 4 }).exit_code(), 5);
        assert_eq!(CliError::Lib(Error::Parse("x".into())).exit_code(), 2);
        assert_eq!(CliError::Lib(Error::NotMonic).exit_code(), 1);
    }
}
