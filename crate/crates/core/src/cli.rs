//! Command-line frontend.
//!
//! Exit codes: 0 ok, 1 usage or parse error, 2 resource refusal (dimension
//! budget or size guard), 3 invariant failure.

use std::io::Write;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::characters::{appro_cone, gs_cone, zip3_cone, Character};
use crate::error::Error;
use crate::fp_linalg::{check_prime, MatrixFp};
use crate::hilbert::{hzip_cone_check, HilbertWeight};
use crate::selftest::{run_suite, SUITES};
use crate::strata::build_poset;
use crate::symtrans::{annihilation_check, norm, sym_transform, trace, FiniteAction, SymElement};
use crate::weylmod::{build_module_with_budget, DEFAULT_MONOMIAL_BUDGET};
use crate::zipcone::{
    generating_set, h0_gzip_with_budget, BPolicy, InvarianceMode, ScanResult, CSV_HEADER,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_RESOURCE: i32 = 2;
pub const EXIT_INVARIANT: i32 = 3;

pub const BUDGET_ENV: &str = "ZIPCONE_DIM_BUDGET";

#[derive(Parser, Debug)]
#[command(name = "zipcone", version, about = "Exact zip cone computations for GSp(2n) over F_p")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Dimension of the global sections for one weight.
    H0(H0Args),
    /// Membership scan over a box of weights, one CSV or JSON row per weight.
    Scan(ScanArgs),
    /// Strata poset as a DOT Hasse diagram or JSON.
    Strata(StrataArgs),
    /// Cone inequalities and memberships of one weight.
    Cones(ConesArgs),
    /// Zip cone of the split Hilbert group for one torus weight.
    Hilbert(HilbertArgs),
    /// Symmetric transforms of GL_n(F_p) acting on a module.
    #[command(name = "symtrans-demo")]
    SymtransDemo(SymtransArgs),
    /// Run the property suites.
    Selftest(SelftestArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    #[value(name = "GLn_only", alias = "gln")]
    GlnOnly,
    #[value(name = "full_L", alias = "full")]
    FullL,
}

impl From<Mode> for InvarianceMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::GlnOnly => InvarianceMode::GlnOnly,
            Mode::FullL => InvarianceMode::FullL,
        }
    }
}

#[derive(Args, Debug)]
struct BudgetArg {
    /// Monomial budget for module construction (default: $ZIPCONE_DIM_BUDGET or 2000000).
    #[arg(long)]
    budget: Option<u64>,
}

impl BudgetArg {
    fn resolve(&self) -> Result<u64, Failure> {
        if let Some(b) = self.budget {
            return Ok(b);
        }
        match std::env::var(BUDGET_ENV) {
            Ok(v) => v
                .trim()
                .parse()
                .map_err(|_| Failure::usage(format!("{BUDGET_ENV}={v:?} is not an integer"))),
            Err(_) => Ok(DEFAULT_MONOMIAL_BUDGET),
        }
    }
}

#[derive(Args, Debug)]
struct H0Args {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    p: u32,
    /// Weight a_1,…,a_n,b.
    #[arg(long, allow_hyphen_values = true)]
    lambda: String,
    #[arg(long, value_enum, default_value = "GLn_only")]
    mode: Mode,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[command(flatten)]
    budget: BudgetArg,
}

#[derive(Args, Debug)]
struct ScanArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    p: u32,
    /// Range lo:hi applied to every a-coordinate.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "box_ranges")]
    range: Option<String>,
    /// Per-coordinate ranges lo:hi,lo:hi,…
    #[arg(long = "box", allow_hyphen_values = true)]
    box_ranges: Option<String>,
    /// b policy: "parity" (b = Σa mod 2) or a fixed integer.
    #[arg(long, default_value = "parity", allow_hyphen_values = true)]
    b: String,
    #[arg(long, default_value_t = 1)]
    dmax: u32,
    #[arg(long, value_enum, default_value = "GLn_only")]
    mode: Mode,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Worker threads (0 = all cores); results do not depend on it.
    #[arg(long, default_value_t = 0)]
    workers: usize,
    /// Accepted for reproducible configs; scans are deterministic.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    budget: BudgetArg,
}

#[derive(Args, Debug)]
struct StrataArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value = "dot")]
    format: StrataFormat,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum StrataFormat {
    Dot,
    Json,
}

#[derive(Args, Debug)]
struct ConesArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    p: u32,
    /// Weight a_1,…,a_n,b; without it only the inequalities are printed.
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
}

#[derive(Args, Debug)]
struct HilbertArgs {
    #[arg(long)]
    p: u32,
    /// k_1,…,k_n.
    #[arg(long, allow_hyphen_values = true)]
    k: String,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
    l: i64,
    #[arg(long, default_value_t = 1)]
    dmax: u32,
}

#[derive(Args, Debug)]
struct SymtransArgs {
    #[arg(long, default_value_t = 2)]
    n: usize,
    #[arg(long, default_value_t = 2)]
    p: u32,
    /// Module weight; defaults to (0,…,0,−1,1).
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
    #[arg(long, default_value_t = 5)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args, Debug)]
struct SelftestArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Run a single suite.
    #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(SUITES))]
    only: Option<String>,
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self { code: EXIT_USAGE, message: message.into() }
    }

    fn invariant(message: impl Into<String>) -> Self {
        Self { code: EXIT_INVARIANT, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Budget { .. } | Error::Guard(_) => EXIT_RESOURCE,
            _ => EXIT_USAGE,
        };
        Self { code, message: e.to_string() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Self::usage(format!("i/o error: {e}"))
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Self::usage(format!("csv error: {e}"))
    }
}

type CmdResult = Result<(), Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return code;
        }
    };
    let res = match cli.command {
        Command::H0(a) => cmd_h0(a, out),
        Command::Scan(a) => cmd_scan(a, out, err),
        Command::Strata(a) => cmd_strata(a, out),
        Command::Cones(a) => cmd_cones(a, out),
        Command::Hilbert(a) => cmd_hilbert(a, out),
        Command::SymtransDemo(a) => cmd_symtrans(a, out),
        Command::Selftest(a) => cmd_selftest(a, out, err),
    };
    match res {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn parse_lambda(s: &str, n: usize) -> Result<Character, Failure> {
    let lam: Character = s.parse()?;
    if lam.rank() != n {
        return Err(Failure::usage(format!(
            "--lambda has {} a-coordinates but --n is {n}",
            lam.rank()
        )));
    }
    Ok(lam)
}

fn print_json<T: Serialize>(out: &mut dyn Write, v: &T) -> CmdResult {
    let s = serde_json::to_string_pretty(v).map_err(|e| Failure::usage(e.to_string()))?;
    writeln!(out, "{s}")?;
    Ok(())
}

fn cmd_h0(a: H0Args, out: &mut dyn Write) -> CmdResult {
    let p = check_prime(a.p as u64)?;
    let lam = parse_lambda(&a.lambda, a.n)?;
    let report = h0_gzip_with_budget(&lam, p, a.mode.into(), a.budget.resolve()?)?;
    match a.format {
        Format::Json => print_json(out, &report),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(CSV_HEADER)?;
            w.write_record(report.csv_record())?;
            w.flush()?;
            Ok(())
        }
    }
}

fn parse_range(s: &str) -> Result<(i64, i64), Failure> {
    let (lo, hi) = s
        .split_once(':')
        .ok_or_else(|| Failure::usage(format!("range {s:?} must look like lo:hi")))?;
    let parse = |t: &str| {
        t.trim().parse::<i64>().map_err(|_| Failure::usage(format!("bad range bound {t:?}")))
    };
    Ok((parse(lo)?, parse(hi)?))
}

/// I-dominant points of a per-coordinate box in row-major order.
fn box_points(ranges: &[(i64, i64)], policy: BPolicy) -> Vec<Character> {
    let n = ranges.len();
    if ranges.iter().any(|(lo, hi)| lo > hi) {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut a: Vec<i64> = ranges.iter().map(|r| r.0).collect();
    loop {
        if a.windows(2).all(|w| w[0] >= w[1]) {
            let ch = match policy {
                BPolicy::MinimalParity => Some(Character::with_minimal_parity(a.clone())),
                BPolicy::Fixed(b) => Character::new(a.clone(), b).ok(),
            };
            out.extend(ch);
        }
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if a[i] < ranges[i].1 {
                a[i] += 1;
                for j in i + 1..n {
                    a[j] = ranges[j].0;
                }
                break;
            }
        }
    }
}

#[derive(Serialize)]
struct ScanRow {
    #[serde(flatten)]
    report: crate::zipcone::H0Report,
    gs: bool,
    appro: bool,
    zip3: Option<bool>,
    verdict: String,
}

fn cmd_scan(a: ScanArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let p = check_prime(a.p as u64)?;
    if a.n == 0 {
        return Err(Failure::usage("--n must be at least 1"));
    }
    if a.dmax == 0 {
        return Err(Failure::usage("--dmax must be at least 1"));
    }
    let policy: BPolicy = a.b.parse()?;
    let ranges: Vec<(i64, i64)> = match (&a.range, &a.box_ranges) {
        (_, Some(b)) => b.split(',').map(parse_range).collect::<Result<_, _>>()?,
        (Some(r), None) => vec![parse_range(r)?; a.n],
        (None, None) => return Err(Failure::usage("one of --range or --box is required")),
    };
    if ranges.len() != a.n {
        return Err(Failure::usage(format!("--box has {} ranges but --n is {}", ranges.len(), a.n)));
    }
    let budget = a.budget.resolve()?;
    let mode: InvarianceMode = a.mode.into();
    let points = box_points(&ranges, policy);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(a.workers)
        .build()
        .map_err(|e| Failure::usage(e.to_string()))?;
    let results: Vec<ScanResult> = pool
        .install(|| crate::zipcone::scan_many(&points, p, mode, a.dmax, budget))?;

    let gs = gs_cone(a.n);
    let appro = appro_cone(a.n, p);
    let zip3 = if a.n == 3 { Some(zip3_cone(3, p)?) } else { None };
    let mut rows = Vec::with_capacity(results.len());
    let mut violations = Vec::new();
    for r in &results {
        let in_appro = appro.contains(&r.lambda);
        let in_zip3 = zip3.as_ref().map(|c| c.contains(&r.lambda));
        if !r.kernel_identity {
            violations.push(format!("kernel identity fails at {}", r.lambda));
        }
        if r.witness().is_some() && !in_appro {
            violations.push(format!("section outside the approximation cone at {}", r.lambda));
        }
        if r.witness().is_some() && in_zip3 == Some(false) {
            violations.push(format!("section outside the explicit n=3 cone at {}", r.lambda));
        }
        rows.push(ScanRow {
            report: r.summary_report(),
            gs: gs.contains(&r.lambda),
            appro: in_appro,
            zip3: in_zip3,
            verdict: r.verdict.to_string(),
        });
    }
    match a.format {
        Format::Json => print_json(out, &rows)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            let mut header: Vec<&str> = CSV_HEADER.to_vec();
            header.extend(["gs", "appro", "zip3", "verdict"]);
            w.write_record(&header)?;
            for row in &rows {
                let mut rec = row.report.csv_record();
                rec.push(row.gs.to_string());
                rec.push(row.appro.to_string());
                rec.push(row.zip3.map(|b| b.to_string()).unwrap_or_default());
                rec.push(row.verdict.clone());
                w.write_record(&rec)?;
            }
            w.flush()?;
        }
    }
    if !violations.is_empty() {
        for v in &violations {
            writeln!(err, "{v}")?;
        }
        return Err(Failure::invariant(format!("{} invariant violations", violations.len())));
    }
    Ok(())
}

fn cmd_strata(a: StrataArgs, out: &mut dyn Write) -> CmdResult {
    let poset = build_poset(a.n)?;
    match a.format {
        StrataFormat::Dot => write!(out, "{}", poset.export_dot())?,
        StrataFormat::Json => writeln!(out, "{}", poset.to_json())?,
    }
    Ok(())
}

#[derive(Serialize)]
struct ConeView {
    name: String,
    inequalities: Vec<String>,
    contains: Option<bool>,
}

#[derive(Serialize)]
struct ConesReport {
    n: usize,
    p: u32,
    lambda: Option<String>,
    i_dominant: Option<bool>,
    cones: Vec<ConeView>,
}

fn cmd_cones(a: ConesArgs, out: &mut dyn Write) -> CmdResult {
    let p = check_prime(a.p as u64)?;
    if a.n == 0 {
        return Err(Failure::usage("--n must be at least 1"));
    }
    let lam = a.lambda.as_deref().map(|s| parse_lambda(s, a.n)).transpose()?;
    let mut cones = vec![gs_cone(a.n), appro_cone(a.n, p)];
    if a.n == 3 {
        cones.push(zip3_cone(3, p)?);
    }
    let views = cones
        .iter()
        .map(|c| ConeView {
            name: c.name.clone(),
            inequalities: c.inequalities.iter().map(|i| i.to_string()).collect(),
            contains: lam.as_ref().map(|l| c.contains(l)),
        })
        .collect();
    print_json(
        out,
        &ConesReport {
            n: a.n,
            p,
            lambda: lam.as_ref().map(Character::to_string),
            i_dominant: lam.as_ref().map(Character::is_i_dominant),
            cones: views,
        },
    )
}

fn cmd_hilbert(a: HilbertArgs, out: &mut dyn Write) -> CmdResult {
    let k = a
        .k
        .split(',')
        .map(|t| t.trim().parse::<i64>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| Failure::usage(format!("--k {:?}: {e}", a.k)))?;
    let verdict = hzip_cone_check(&HilbertWeight { k, l: a.l }, a.p, a.dmax)?;
    print_json(out, &verdict)
}

#[derive(Serialize)]
struct SymtransSample {
    x: Vec<u32>,
    annihilation: bool,
    invariant_values: bool,
    invariant_elements: bool,
    trace: Vec<u32>,
    norm_terms: usize,
}

#[derive(Serialize)]
struct SymtransReport {
    lambda: String,
    p: u32,
    dim: usize,
    group_order: usize,
    samples: Vec<SymtransSample>,
}

fn cmd_symtrans(a: SymtransArgs, out: &mut dyn Write) -> CmdResult {
    let p = check_prime(a.p as u64)?;
    let lam = match &a.lambda {
        Some(s) => parse_lambda(s, a.n)?,
        None if a.n >= 1 => Character::lambda_hodge(a.n),
        None => return Err(Failure::usage("--n must be at least 1")),
    };
    let m = build_module_with_budget(&lam, p, DEFAULT_MONOMIAL_BUDGET)?;
    let gens: Vec<MatrixFp> =
        generating_set(a.n, p).iter().map(|g| m.act(g, 1)).collect::<Result<_, _>>()?;
    let group = FiniteAction::generated_by(p, m.dim(), &gens)?;
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let mut samples = Vec::new();
    for _ in 0..a.samples {
        let x: Vec<u32> = (0..m.dim()).map(|_| rng.gen_range(0..p)).collect();
        let h = &group.elements()[rng.gen_range(0..group.order())];
        let d = rng.gen_range(1..=group.order());
        let s = sym_transform(&group, &x, d)?;
        let n = norm(&group, &x)?;
        samples.push(SymtransSample {
            annihilation: annihilation_check(&group, &x)?,
            invariant_values: sym_transform(&group, &h.mul_vec(&x), d)? == s,
            invariant_elements: s.act(h) == s && n.act(h) == n,
            trace: trace(&group, &x)?,
            norm_terms: SymElement::poly(&n).len(),
            x,
        });
    }
    let ok = samples.iter().all(|s| s.annihilation && s.invariant_values && s.invariant_elements);
    print_json(
        out,
        &SymtransReport {
            lambda: lam.to_string(),
            p,
            dim: m.dim(),
            group_order: group.order(),
            samples,
        },
    )?;
    if ok {
        Ok(())
    } else {
        Err(Failure::invariant("symmetric transform identities failed"))
    }
}

fn cmd_selftest(a: SelftestArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let names: Vec<&str> = match &a.only {
        Some(s) => vec![s.as_str()],
        None => SUITES.to_vec(),
    };
    let mut failed = 0;
    writeln!(out, "selftest seed={}", a.seed)?;
    for name in names {
        let start = Instant::now();
        let outcome = run_suite(name, a.seed)?
            .ok_or_else(|| Failure::usage(format!("unknown suite {name:?}")))?;
        for c in &outcome.checks {
            writeln!(out, "  [{}] {name}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name)?;
        }
        let status = if outcome.passed() { "PASS" } else { "FAIL" };
        writeln!(out, "{status} {name} ({} checks)", outcome.checks.len())?;
        writeln!(err, "{name}: {:.3}s", start.elapsed().as_secs_f64())?;
        if !outcome.passed() {
            failed += 1;
        }
    }
    if failed > 0 {
        return Err(Failure::invariant(format!("{failed} suite(s) failed")));
    }
    Ok(())
}
