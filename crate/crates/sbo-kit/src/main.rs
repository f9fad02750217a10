//! Command-line surface: print operators, run verification suites, classify
//! vanishing parameters and run numeric checks.

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use sbo_kit::algebra::{IndexSet, MultiPolynomial, OperatorSignature, Q, Rat};
use sbo_kit::kernels::{kernel_entry, kernel_matrix};
use sbo_kit::numeric::{
    evaluate_kernel, gamma_product_eval, integrate_pairing, moment_pairing,
    apply_to_gaussian_profile, TestForm,
};
use sbo_kit::operators::{branson_operator, juhl_symbol, sbo_components, sbo_differential};
use sbo_kit::render::{
    json_const_op, json_form_operator, latex_const_op, latex_document, latex_form_operator,
    plain_const_op, plain_form_operator, plain_kernel, Format,
};
use sbo_kit::residue::{matrix_residue_constant, vanish_classify, VanishVerdict};
use sbo_kit::suites::{run_suite, Mode, SuiteConfig};
use std::process::ExitCode;
use std::str::FromStr;

#[derive(Parser)]
#[command(
    name = "sbo-kit",
    version,
    about = "Construct and machine-verify conformally covariant symmetry breaking operators"
)]
struct Cli {
    /// Worker threads for verification suites (falls back to SBO_KIT_JOBS).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print an operator or kernel in plain text, LaTeX or JSON.
    Print(PrintArgs),
    /// Run a verification suite; exit 0 iff every case passes.
    Verify(VerifyArgs),
    /// Classify whether the normalized operator vanishes at (λ, ν).
    Vanish(VanishArgs),
    /// Numeric kernel evaluation, pairings and the residue extrapolation.
    EvalNum(EvalArgs),
}

#[derive(Args)]
struct PrintArgs {
    /// One of: juhl, sbo, branson, kernel.
    target: String,
    #[arg(long)]
    n: u32,
    #[arg(long, default_value_t = 0)]
    i: u32,
    #[arg(long)]
    j: Option<u32>,
    #[arg(long, default_value_t = 0)]
    l: i64,
    #[arg(long, default_value_t = 0)]
    kappa: u8,
    #[arg(long, default_value = "plain")]
    format: String,
}

#[derive(Args)]
struct VerifyArgs {
    /// One of: weyl, gegenbauer, juhl-form, knapp-stein, components, prop-gc,
    /// main-theorem, vanish, numeric, all.
    suite: String,
    /// Dimension or dimension range, e.g. 3 or 2..4.
    #[arg(long)]
    n: Option<String>,
    /// Maximum order l, e.g. 4 or 0..4.
    #[arg(long)]
    l: Option<String>,
    /// Maximum residue index m, e.g. 2 or 0..2.
    #[arg(long)]
    m: Option<String>,
    /// Maximum Laplacian power in the Weyl suite.
    #[arg(long)]
    k: Option<String>,
    /// Parameter grid bound for the vanish suite, e.g. 5 or -5..5.
    #[arg(long, allow_hyphen_values = true)]
    grid: Option<String>,
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    /// symbolic, numeric or both.
    #[arg(long, default_value = "both")]
    mode: String,
    #[arg(long, default_value = "plain")]
    format: String,
}

#[derive(Args)]
struct VanishArgs {
    /// λ as an integer or p/q literal.
    #[arg(long, allow_hyphen_values = true)]
    lambda: String,
    /// ν as an integer or p/q literal.
    #[arg(long, allow_hyphen_values = true)]
    nu: String,
    #[arg(long)]
    n: u32,
    #[arg(long)]
    i: u32,
    #[arg(long)]
    j: u32,
    /// Parity κ; inferred from ν − λ when omitted.
    #[arg(long)]
    kappa: Option<u8>,
    #[arg(long, default_value = "plain")]
    format: String,
}

#[derive(Args)]
struct EvalArgs {
    /// One of: kernel, pairing, residue.
    which: String,
    #[arg(long)]
    n: u32,
    #[arg(long, default_value_t = 0)]
    i: u32,
    #[arg(long)]
    j: Option<u32>,
    #[arg(long, default_value_t = 0)]
    kappa: u8,
    /// Source index set, e.g. 1,2 (empty for degree 0).
    #[arg(long, default_value = "")]
    iset: String,
    /// Target index set.
    #[arg(long, default_value = "")]
    jset: String,
    /// Evaluation point, comma separated.
    #[arg(long, default_value = "")]
    x: String,
    #[arg(long, default_value_t = 12.3)]
    lambda: f64,
    #[arg(long, default_value_t = 0.7)]
    nu: f64,
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    /// Residue index m for the residue check.
    #[arg(long, default_value_t = 0)]
    m: u32,
    /// Base λ for the residue path (rational literal).
    #[arg(long, default_value = "16")]
    lambda0: String,
    /// Enable the numeric residue extrapolation (loose tolerance 1e-3).
    #[arg(long)]
    extrapolate: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let jobs = cli
        .jobs
        .or_else(|| {
            std::env::var("SBO_KIT_JOBS")
                .ok()
                .and_then(|v| v.parse().ok())
        })
        .unwrap_or(0);
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: cannot build worker pool: {}", e);
            return ExitCode::from(2);
        }
    };
    let result = pool.install(|| match cli.cmd {
        Cmd::Print(args) => cmd_print(args),
        Cmd::Verify(args) => cmd_verify(args),
        Cmd::Vanish(args) => cmd_vanish(args),
        Cmd::EvalNum(args) => cmd_eval(args),
    });
    match result {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {}", msg);
            ExitCode::from(2)
        }
    }
}

fn parse_format(s: &str) -> Result<Format, String> {
    Format::from_str(s)
}

fn parse_range(s: &str) -> Result<(i64, i64), String> {
    if let Some((a, b)) = s.split_once("..") {
        let lo: i64 = a.trim().parse().map_err(|_| format!("bad range '{}'", s))?;
        let hi: i64 = b.trim().parse().map_err(|_| format!("bad range '{}'", s))?;
        if lo > hi {
            return Err(format!("empty range '{}'", s));
        }
        Ok((lo, hi))
    } else {
        let v: i64 = s.trim().parse().map_err(|_| format!("bad value '{}'", s))?;
        Ok((v, v))
    }
}

fn parse_rational(s: &str) -> Result<Q, String> {
    use num_bigint::BigInt;
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| format!("bad rational '{}'", s))?;
        let q: BigInt = q.trim().parse().map_err(|_| format!("bad rational '{}'", s))?;
        if q == BigInt::from(0) {
            return Err("zero denominator".into());
        }
        Ok(Q::new(p, q))
    } else {
        let p: BigInt = s.parse().map_err(|_| format!("bad rational '{}'", s))?;
        Ok(Q::from_integer(p))
    }
}

fn parse_index_set(s: &str) -> Result<IndexSet, String> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(IndexSet::empty());
    }
    let vals: Result<Vec<u32>, _> = s.split(',').map(|v| v.trim().parse::<u32>()).collect();
    Ok(IndexSet::new(vals.map_err(|e| format!("bad index set: {}", e))?))
}

fn signature(n: u32, i: u32, j: Option<u32>, kappa: u8) -> Result<OperatorSignature, String> {
    let j = j.unwrap_or(i);
    let sig = OperatorSignature { n, i, j, kappa };
    if !sig.is_valid() {
        return Err(format!(
            "invalid signature n={} i={} j={} κ={}",
            n, i, j, kappa
        ));
    }
    Ok(sig)
}

fn cmd_print(args: PrintArgs) -> Result<ExitCode, String> {
    let format = parse_format(&args.format)?;
    match args.target.as_str() {
        "juhl" => {
            if args.l < 0 {
                return Err("order l must be nonnegative".into());
            }
            let op = juhl_symbol(args.n as usize, args.l);
            let text = match format {
                Format::Plain => plain_const_op(&op),
                Format::Latex => latex_document(&latex_const_op(&op)),
                Format::Json => serde_json::to_string_pretty(&json_const_op(&op)).unwrap(),
            };
            println!("{}", text);
        }
        "branson" => {
            if args.l < 0 {
                return Err("order l must be nonnegative".into());
            }
            let op = branson_operator(args.n as usize, args.i, args.l as u32);
            let text = match format {
                Format::Plain => plain_form_operator(&op),
                Format::Latex => latex_document(&latex_form_operator(&op)),
                Format::Json => serde_json::to_string_pretty(&json_form_operator(&op)).unwrap(),
            };
            println!("{}", text);
        }
        "sbo" => {
            let sig = signature(args.n, args.i, args.j, args.kappa)?;
            if args.l < 0 {
                return Err("order l must be nonnegative".into());
            }
            let op = sbo_differential(&sig, args.l);
            let text = match format {
                Format::Plain => plain_form_operator(&op),
                Format::Latex => latex_document(&latex_form_operator(&op)),
                Format::Json => serde_json::to_string_pretty(&json_form_operator(&op)).unwrap(),
            };
            println!("{}", text);
        }
        "kernel" => {
            let sig = signature(args.n, args.i, args.j, args.kappa)?;
            let matrix = kernel_matrix(&sig);
            match format {
                Format::Plain => {
                    for ((i, j), entry) in &matrix {
                        println!("{} -> {}: {}", i, j, plain_kernel(entry));
                    }
                }
                Format::Latex => {
                    let body: Vec<String> = matrix
                        .iter()
                        .map(|((i, j), entry)| {
                            format!(
                                "({}, {})&: \\text{{{}}}",
                                latex_index_sets(i),
                                latex_index_sets(j),
                                plain_kernel(entry)
                            )
                        })
                        .collect();
                    println!(
                        "{}",
                        latex_document(&format!(
                            "\\begin{{aligned}}\n{}\n\\end{{aligned}}",
                            body.join(" \\\\\n")
                        ))
                    );
                }
                Format::Json => {
                    let entries: Vec<serde_json::Value> = matrix
                        .iter()
                        .map(|((i, j), entry)| {
                            serde_json::json!({
                                "from": i.iter().collect::<Vec<u32>>(),
                                "to": j.iter().collect::<Vec<u32>>(),
                                "kernel": plain_kernel(entry),
                            })
                        })
                        .collect();
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&serde_json::json!({ "entries": entries }))
                            .unwrap()
                    );
                }
            }
        }
        other => return Err(format!("unknown print target '{}'", other)),
    }
    Ok(ExitCode::SUCCESS)
}

fn latex_index_sets(i: &IndexSet) -> String {
    let parts: Vec<String> = i.iter().map(|k| k.to_string()).collect();
    format!("\\{{{}\\}}", parts.join(","))
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode, String> {
    let format = parse_format(&args.format)?;
    let mut cfg = SuiteConfig::default();
    if let Some(n) = &args.n {
        let (lo, hi) = parse_range(n)?;
        if lo < 1 {
            return Err("dimension must be positive".into());
        }
        cfg.n_min = lo as u32;
        cfg.n_max = hi as u32;
    }
    if let Some(l) = &args.l {
        cfg.l_max = parse_range(l)?.1;
    }
    if let Some(m) = &args.m {
        cfg.m_max = parse_range(m)?.1.max(0) as u32;
    }
    if let Some(k) = &args.k {
        cfg.k_max = parse_range(k)?.1.max(0) as u32;
    }
    if let Some(g) = &args.grid {
        let (lo, hi) = parse_range(g)?;
        cfg.grid = lo.abs().max(hi.abs());
    }
    cfg.tol = args.tol;
    cfg.mode = match args.mode.as_str() {
        "symbolic" => Mode::Symbolic,
        "numeric" => Mode::Numeric,
        "both" => Mode::Both,
        other => return Err(format!("unknown mode '{}'", other)),
    };
    let report = run_suite(&args.suite, &cfg)?;
    match format {
        Format::Json => println!("{}", report.to_json()),
        _ => {
            for case in &report.cases {
                println!(
                    "[{}] {} ({} ms){}",
                    case.status.to_uppercase(),
                    case.case,
                    case.millis,
                    match (&case.lhs, &case.rhs) {
                        (Some(l), Some(r)) => format!("\n  lhs: {}\n  rhs: {}", l, r),
                        (Some(l), None) => format!("\n  {}", l),
                        _ => String::new(),
                    }
                );
            }
            println!("{}", report.summary_line());
        }
    }
    Ok(if report.all_pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_vanish(args: VanishArgs) -> Result<ExitCode, String> {
    let format = parse_format(&args.format)?;
    let lam = parse_rational(&args.lambda)?;
    let nu = parse_rational(&args.nu)?;
    let sig = signature(args.n, args.i, args.j.into(), 0).map(|s| OperatorSignature {
        kappa: 0,
        ..s
    })?;
    // κ selects the family (+ for 0, − for 1); default is the + family.
    let kappa = match args.kappa {
        Some(k) if k <= 1 => k,
        Some(k) => return Err(format!("κ must be 0 or 1, got {}", k)),
        None => 0,
    };
    let sig = OperatorSignature { kappa, ..sig };
    let (vanishes, verdict) = vanish_classify(&lam, &nu, kappa, &sig);
    let branch = match verdict {
        VanishVerdict::OffParity => "off-parity".to_string(),
        VanishVerdict::Lattice => {
            if kappa == 0 {
                "L_even".to_string()
            } else {
                "L_odd".to_string()
            }
        }
        VanishVerdict::LatticePunctured => {
            if kappa == 0 {
                "L_even minus {ν=0}".to_string()
            } else {
                "L_odd minus {ν=0}".to_string()
            }
        }
        VanishVerdict::IsolatedPoint => {
            if sig.j == sig.i {
                "point (i,i)".to_string()
            } else {
                "point (n−i,n−i)".to_string()
            }
        }
        VanishVerdict::Nonzero => "none".to_string(),
    };
    match format {
        Format::Json => println!(
            "{}",
            serde_json::json!({
                "version": "v1",
                "lambda": args.lambda,
                "nu": args.nu,
                "kappa": kappa,
                "vanishes": vanishes,
                "branch": branch,
            })
        ),
        _ => {
            if vanishes {
                println!("vanishes: {}", branch);
            } else if verdict == VanishVerdict::OffParity {
                println!("nonzero (off-parity)");
            } else {
                println!("nonzero");
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn parse_point(s: &str, n: usize) -> Result<Vec<f64>, String> {
    let vals: Result<Vec<f64>, _> = s.split(',').map(|v| v.trim().parse::<f64>()).collect();
    let vals = vals.map_err(|e| format!("bad point: {}", e))?;
    if vals.len() != n {
        return Err(format!("point must have {} coordinates", n));
    }
    Ok(vals)
}

fn cmd_eval(args: EvalArgs) -> Result<ExitCode, String> {
    let sig = signature(args.n, args.i, args.j, args.kappa)?;
    let lam = Complex64::new(args.lambda, 0.0);
    let nu = Complex64::new(args.nu, 0.0);
    match args.which.as_str() {
        "kernel" => {
            let i_set = parse_index_set(&args.iset)?;
            let j_set = parse_index_set(&args.jset)?;
            let entry = kernel_entry(&sig, &i_set, &j_set);
            let x = parse_point(&args.x, args.n as usize)?;
            let v = evaluate_kernel(&entry, &x, lam, nu).map_err(|e| e.to_string())?;
            println!("{:.15e} + {:.15e}i", v.re, v.im);
        }
        "pairing" => {
            let i_set = parse_index_set(&args.iset)?;
            let j_set = parse_index_set(&args.jset)?;
            let entry = kernel_entry(&sig, &i_set, &j_set);
            let n = args.n as usize;
            let x0 = if args.x.is_empty() {
                vec![0.0; n]
            } else {
                parse_point(&args.x, n)?
            };
            let f = TestForm::constant_one(n);
            let v = integrate_pairing(&entry, &f, &x0, lam, nu, args.tol)
                .map_err(|e| e.to_string())?;
            println!("quadrature: {:.12e} + {:.12e}i", v.re, v.im);
            if x0.iter().all(|c| *c == 0.0) {
                let m = moment_pairing(&entry, &MultiPolynomial::one(n), lam, nu)
                    .map_err(|e| e.to_string())?;
                println!("continuation: {:.12e} + {:.12e}i", m.re, m.im);
            }
        }
        "residue" => {
            if !args.extrapolate {
                return Err(
                    "the numeric residue check is gated behind --extrapolate; \
                     symbolic verification (verify main-theorem) is authoritative"
                        .into(),
                );
            }
            let code = residue_extrapolation(&sig, args.m, &args.lambda0)?;
            return Ok(code);
        }
        other => return Err(format!("unknown eval-num target '{}'", other)),
    }
    Ok(ExitCode::SUCCESS)
}

/// Numeric residue check: approach ν − λ = 2m + κ along ν_t = ν₀ − t through
/// the Gaussian-moment continuation, Richardson-extrapolate to t = 0, and
/// compare against the residue constant times the differential operator side.
fn residue_extrapolation(
    sig: &OperatorSignature,
    m: u32,
    lambda0: &str,
) -> Result<ExitCode, String> {
    let lam_q = parse_rational(lambda0)?;
    let lam = Complex64::new(
        sbo_kit::algebra::rational_to_f64(&lam_q),
        0.0,
    );
    let l = 2 * m as i64 + sig.kappa as i64;
    let n = sig.n as usize;
    let i_set = IndexSet::all(sig.n, sig.i as usize)
        .into_iter()
        .next()
        .ok_or("empty source basis")?;
    let j_set = IndexSet::all(sig.n - 1, sig.j as usize)
        .into_iter()
        .next()
        .ok_or("empty target basis")?;
    let entry = kernel_entry(sig, &i_set, &j_set);
    let profile = MultiPolynomial::one(n);
    let nu0 = lam + l as f64;
    let sample = |t: f64| -> Result<Complex64, String> {
        moment_pairing(&entry, &profile, lam, nu0 - t).map_err(|e| e.to_string())
    };
    let (t1, t2) = (2e-2, 1e-2);
    let l1 = sample(t1)?;
    let l2 = sample(t2)?;
    let lhs = 2.0 * l2 - l1; // linear Richardson step toward t = 0
    // Right side: constant × (component operator applied to e^{−|y|²})(0).
    let cst = gamma_product_eval(&matrix_residue_constant(sig, m, false), lam, nu0)
        .map_err(|e| e.to_string())?;
    let op = sbo_components(sig, l, &i_set, &j_set, &Rat::from_q(lam_q));
    let applied = apply_to_gaussian_profile(&op, &profile);
    let at_zero = sbo_kit::algebra::eval_rational_poly(&applied, &vec![0.0; n]);
    let rhs = cst * at_zero;
    let rel = (lhs - rhs).norm() / rhs.norm().max(1e-30);
    println!("path value:  {:.10e} + {:.10e}i", lhs.re, lhs.im);
    println!("residue rhs: {:.10e} + {:.10e}i", rhs.re, rhs.im);
    println!("relative difference: {:.3e} (tolerance 1e-3)", rel);
    Ok(if rel <= 1e-3 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
