use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use hzeta::congruence::{group_data, group_data_partial, Family, GroupData};
use hzeta::dirichlet::{self, enumerate_characters, DirichletCharacter};
use hzeta::divisor::{DivisorEntry, Q};
use hzeta::higher::{self, HigherFactorKind, XiPart};
use hzeta::higher_l::{self, HigherLContext};
use hzeta::multigamma::{log_multigamma, MultiGammaOrder};
use hzeta::numcore;
use hzeta::verify::{self, Status, Suite, VerifyOptions};
use hzeta::{selberg, Cx, Error, PrecisionContext};
use rug::Float;
use serde_json::json;

#[derive(Parser, Debug)]
#[command(name = "hzeta", version, about = "Multiple gamma, L-functions and (higher) Selberg gamma factors")]
#[command(args_override_self = true)]
struct Cli {
    /// Working precision in bits.
    #[arg(long, global = true, default_value_t = 192)]
    prec: u32,
    /// Emit JSON instead of text/CSV.
    #[arg(long, global = true)]
    json: bool,
    /// Flat key=value file; command-line flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Evaluate one function at one point.
    Eval(EvalArgs),
    /// Run a verification suite.
    Verify {
        #[arg(value_name = "SUITE")]
        suite: Option<String>,
        #[arg(long = "suite")]
        suite_flag: Option<String>,
        #[arg(long, default_value_t = verify::DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        l: Option<i64>,
        /// Directory with zeta_zeros_100.txt, dirichlet_4_1_zeros_100.txt, maass_g0_1.txt.
        #[arg(long)]
        data: Option<PathBuf>,
    },
    /// Real zeros and poles of Ξ_hyp or Ξ_{l∞,hyp} as CSV.
    Catalog {
        #[arg(long, default_value = "selberg")]
        which: String,
        #[arg(long, default_value = "g0:1")]
        group: String,
        #[arg(long, default_value_t = 1)]
        l: i64,
        #[arg(long, default_value = "-12..1", allow_hyphen_values = true)]
        range: String,
        #[arg(long, allow_hyphen_values = true)]
        kappa0: Option<i64>,
        /// Also print the symbolic families of nontrivial zeros.
        #[arg(long)]
        families: bool,
    },
    /// Scattering pairs and constants of a congruence subgroup as CSV.
    Scattering {
        #[arg(long, default_value = "g0")]
        family: String,
        #[arg(long = "N")]
        n: u64,
        #[arg(long, allow_hyphen_values = true)]
        kappa0: Option<i64>,
    },
}

#[derive(clap::Args, Debug)]
struct EvalArgs {
    /// gamma, gamma2, gamma3, log-gamma, digamma, trigamma, zeta, hurwitz, dirichlet-l, xi,
    /// xi-i, xi-ell, xi-par, gamma-factor, phi, F, G, H, I, J, phi-s, test-g,
    /// xi-linf-i, xi-linf-ell, xi-linf-par, l-linf, xi-linf-l, theta-linf-l, Theta
    function: String,
    #[arg(long, allow_hyphen_values = true)]
    s: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    r: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    u: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    #[arg(long)]
    l: Option<i64>,
    #[arg(long)]
    group: Option<String>,
    #[arg(long)]
    chi: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    kappa0: Option<i64>,
    /// Zero list (theta-linf-l) or spectral list (Theta); bundled lists otherwise.
    #[arg(long)]
    list: Option<PathBuf>,
}

enum Fail {
    Usage(String),
    Math(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Fail {
        Fail::Math(e)
    }
}

type Out<T> = std::result::Result<T, Fail>;

fn usage(msg: impl Into<String>) -> Fail {
    Fail::Usage(msg.into())
}

/// Inserts `--key=value` pairs from the config file right after the
/// subcommand. Keys already given on the command line are skipped.
fn expand_config(args: Vec<String>) -> Out<Vec<String>> {
    let Some(pos) = args.iter().position(|a| a == "--config") else {
        if let Some(a) = args.iter().find(|a| a.starts_with("--config=")) {
            let path = a.trim_start_matches("--config=").to_string();
            return splice_config(args.clone(), &path);
        }
        return Ok(args);
    };
    let path = args.get(pos + 1).ok_or_else(|| usage("--config needs a path"))?.clone();
    splice_config(args, &path)
}

fn splice_config(args: Vec<String>, path: &str) -> Out<Vec<String>> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read config {path}: {e}")))?;
    let mut extra = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| usage(format!("config line {}: expected key=value", i + 1)))?;
        let (k, v) = (k.trim(), v.trim());
        if k == "config" {
            return Err(usage("config files cannot include other configs"));
        }
        let flag = format!("--{k}");
        if args.iter().any(|a| *a == flag || a.starts_with(&format!("{flag}="))) {
            continue;
        }
        match v {
            "true" => extra.push(format!("--{k}")),
            "false" => {}
            _ => extra.push(format!("--{k}={v}")),
        }
    }
    let sub = args
        .iter()
        .skip(1)
        .position(|a| matches!(a.as_str(), "eval" | "verify" | "catalog" | "scattering"))
        .map(|p| p + 2)
        .ok_or_else(|| usage("missing subcommand"))?;
    // eval takes its function name first.
    let at = if args[sub - 1] == "eval" && args.len() > sub && !args[sub].starts_with('-') { sub + 1 } else { sub };
    let mut out = args[..at].to_vec();
    out.extend(extra);
    out.extend_from_slice(&args[at..]);
    Ok(out)
}

fn parse_point(s: &str, prec: u32) -> Out<Cx> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |t: &str| -> Out<Float> {
        Float::parse(t).map(|v| Float::with_val(prec, v)).map_err(|_| usage(format!("not a number: {t:?}")))
    };
    match parts.as_slice() {
        [re] => Ok(Cx::new(num(re)?, Float::new(prec))),
        [re, im] => Ok(Cx::new(num(re)?, num(im)?)),
        _ => Err(usage(format!("expected re,im, got {s:?}"))),
    }
}

fn parse_group(g: &str, kappa0: Option<i64>) -> Out<GroupData> {
    let (fam, n) = g.split_once(':').ok_or_else(|| usage(format!("expected family:N, got {g:?}")))?;
    let family: Family = fam.parse().map_err(|e: Error| usage(e.to_string()))?;
    let n: u64 = n.parse().map_err(|_| usage(format!("bad level {n:?}")))?;
    Ok(group_data(family, n, kappa0)?)
}

fn parse_chi(c: &str) -> Out<DirichletCharacter> {
    let (q, i) = c.split_once(':').ok_or_else(|| usage(format!("expected q:index, got {c:?}")))?;
    let q: u64 = q.parse().map_err(|_| usage(format!("bad modulus {q:?}")))?;
    let i: u64 = i.parse().map_err(|_| usage(format!("bad index {i:?}")))?;
    if q == 0 {
        return Err(usage("modulus must be positive"));
    }
    enumerate_characters(q)
        .into_iter()
        .find(|x| x.label() == i)
        .ok_or_else(|| usage(format!("no character with index {i} mod {q}")))
}

fn parse_q(t: &str) -> Out<Q> {
    let bad = || usage(format!("bad rational {t:?}"));
    match t.split_once('/') {
        Some((a, b)) => {
            let d: i64 = b.parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            Ok(Q::new(a.parse().map_err(|_| bad())?, d))
        }
        None => Ok(Q::from_integer(t.parse().map_err(|_| bad())?)),
    }
}

/// Decimal string of x rounded to an absolute step 10^{e_ref - digits + 1}.
fn decimal(x: &Float, e_ref: i32, digits: usize) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let ex = x.clone().abs().log10().to_f64().floor() as i32;
    let keep = digits as i32 - (e_ref - ex);
    if keep <= 0 {
        return "0".into();
    }
    let (neg, mant, exp) = x.to_sign_string_exp(10, Some(keep as usize));
    let exp = exp.unwrap_or(0);
    let mant = mant.trim_end_matches('0');
    let mant = if mant.is_empty() { "0" } else { mant };
    let sign = if neg { "-" } else { "" };
    // value = 0.MANT × 10^exp
    let body = if (-6..=30).contains(&exp) {
        if exp <= 0 {
            format!("0.{}{}", "0".repeat((-exp) as usize), mant)
        } else if mant.len() as i32 <= exp {
            format!("{mant}{}", "0".repeat((exp - mant.len() as i32) as usize))
        } else {
            let (a, b) = mant.split_at(exp as usize);
            format!("{a}.{b}")
        }
    } else {
        let (a, b) = mant.split_at(1);
        let frac = if b.is_empty() { String::new() } else { format!(".{b}") };
        format!("{a}{frac}e{}", exp - 1)
    };
    format!("{sign}{body}")
}

fn format_cx(z: &Cx, digits: usize) -> (String, String, String) {
    let a = z.abs();
    let e_ref = if a.is_zero() { 0 } else { a.log10().to_f64().floor() as i32 };
    let re = decimal(&z.re, e_ref, digits);
    let im = decimal(&z.im, e_ref, digits);
    let shown = if im == "0" {
        re.clone()
    } else if re == "0" {
        format!("{im}i")
    } else if im.starts_with('-') {
        format!("{re}{im}i")
    } else {
        format!("{re}+{im}i")
    };
    (re, im, shown)
}

fn need<'a>(v: &'a Option<String>, flag: &str) -> Out<&'a str> {
    v.as_deref().ok_or_else(|| usage(format!("--{flag} is required")))
}

fn need_l(v: Option<i64>) -> Out<i64> {
    let l = v.ok_or_else(|| usage("--l is required"))?;
    if l < 1 {
        return Err(usage("--l must be positive"));
    }
    Ok(l)
}

fn eval(args: &EvalArgs, ctx: &PrecisionContext) -> Out<(Cx, Vec<f64>)> {
    let p = ctx.work();
    let s = || -> Out<Cx> { parse_point(need(&args.s, "s")?, p) };
    let group = || -> Out<GroupData> { parse_group(args.group.as_deref().unwrap_or("g0:1"), args.kappa0) };
    let chi = || -> Out<DirichletCharacter> {
        match &args.chi {
            Some(c) => parse_chi(c),
            None => Ok(DirichletCharacter::principal(1)),
        }
    };
    let mg = |level| -> Out<(Cx, Vec<f64>)> { Ok((log_multigamma(level, &s()?, ctx)?.exp(), vec![])) };
    let hf = |kind| -> Out<(Cx, Vec<f64>)> { Ok((higher::higher_factor(kind, &s()?, need_l(args.l)?, ctx)?, vec![])) };
    let lin = |part| -> Out<(Cx, Vec<f64>)> {
        Ok((higher::xi_linf_factor(part, &s()?, need_l(args.l)?, &group()?, ctx)?, vec![]))
    };
    let zero_ctx = || -> Out<HigherLContext> {
        let c = chi()?;
        let zeros = match &args.list {
            Some(path) => dirichlet::load_zero_list(path, &c)?,
            None if c.modulus() == 1 => dirichlet::bundled_zeta_zeros(),
            None if c.primitive() == dirichlet::bundled_mod4_zeros().character.primitive() => {
                dirichlet::bundled_mod4_zeros()
            }
            None => dirichlet::ZeroList::empty(c.clone()),
        };
        Ok(HigherLContext::new(need_l(args.l)?, c, zeros)?)
    };
    let v = match args.function.as_str() {
        "gamma" => mg(MultiGammaOrder::Gamma)?,
        "gamma2" => mg(MultiGammaOrder::Gamma2)?,
        "gamma3" => mg(MultiGammaOrder::Gamma3)?,
        "log-gamma" => (numcore::log_gamma(&s()?, ctx)?, vec![]),
        "digamma" => (numcore::digamma(&s()?, ctx)?, vec![]),
        "trigamma" => (numcore::trigamma(&s()?, ctx)?, vec![]),
        "zeta" => (numcore::riemann_zeta(&s()?, ctx)?, vec![]),
        "hurwitz" => {
            let a = parse_point(need(&args.a, "a")?, p)?;
            (numcore::hurwitz_zeta(&s()?, &a.re, ctx)?, vec![])
        }
        "dirichlet-l" => (dirichlet::dirichlet_l(&s()?, &chi()?, ctx)?, vec![]),
        "xi" => (dirichlet::xi_complete(&s()?, &chi()?, ctx)?, vec![]),
        "xi-i" => (selberg::xi_i(&s()?, &group()?, ctx)?, vec![]),
        "xi-ell" => (selberg::xi_ell(&s()?, &group()?, ctx)?, vec![]),
        "xi-par" => (selberg::xi_par(&s()?, &group()?, ctx)?, vec![]),
        "gamma-factor" => (selberg::gamma_factor(&s()?, &group()?, ctx)?, vec![]),
        "phi" => (hzeta::congruence::scattering_det(&s()?, &group()?, ctx)?, vec![]),
        "F" => hf(HigherFactorKind::F)?,
        "G" => hf(HigherFactorKind::G)?,
        "H" => hf(HigherFactorKind::H)?,
        "I" => hf(HigherFactorKind::I)?,
        "J" => (higher_l::j_l(&s()?, need_l(args.l)?, ctx)?, vec![]),
        "phi-s" => {
            let r = parse_point(need(&args.r, "r")?, p)?;
            (higher::phi_s(&s()?, &r, need_l(args.l)?, ctx)?, vec![])
        }
        "test-g" => {
            let u = parse_point(need(&args.u, "u")?, p)?;
            (higher::test_g(&u.re, &s()?, need_l(args.l)?, ctx)?, vec![])
        }
        "xi-linf-i" => lin(XiPart::I)?,
        "xi-linf-ell" => lin(XiPart::Ell)?,
        "xi-linf-par" => lin(XiPart::Par)?,
        "l-linf" => (higher_l::log_l_linf(&s()?, need_l(args.l)?, &chi()?, ctx)?.exp(), vec![]),
        "xi-linf-l" => (higher_l::log_xi_linf_l(&s()?, need_l(args.l)?, &chi()?, ctx)?.exp(), vec![]),
        "theta-linf-l" => {
            let h = zero_ctx()?;
            let t = higher_l::theta_linf_l_product(&s()?, &h, ctx);
            (t.value, vec![t.tail_bound])
        }
        "Theta" => {
            let spectrum = match &args.list {
                Some(path) => higher::load_spectral_list(path)?,
                None => higher::bundled_maass_g0_1(),
            };
            let t = higher::theta_linf(&s()?, need_l(args.l)?, &spectrum, ctx)?;
            (t.value, vec![t.tail_bound])
        }
        other => return Err(usage(format!("unknown function {other:?}"))),
    };
    Ok(v)
}

fn catalog_rows(entries: &[DivisorEntry], json: bool) -> String {
    if json {
        let rows: Vec<_> = entries
            .iter()
            .map(|e| json!({"location": e.location.to_string(), "order": e.order, "breakdown": e.breakdown_string()}))
            .collect();
        return serde_json::to_string_pretty(&rows).expect("serializable") + "\n";
    }
    let mut out = String::from("location,order,breakdown\n");
    for e in entries {
        let loc = e.location.to_string();
        let loc = if loc.contains(',') { format!("\"{loc}\"") } else { loc };
        out += &format!("{loc},{},{}\n", e.order, e.breakdown_string());
    }
    out
}

/// Writes to stdout, ignoring a closed pipe.
macro_rules! out {
    ($($t:tt)*) => {{
        use std::io::Write;
        let _ = write!(std::io::stdout().lock(), $($t)*);
    }};
}

macro_rules! outln {
    ($($t:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout().lock(), $($t)*);
    }};
}

fn run(cli: Cli) -> Out<i32> {
    let ctx = PrecisionContext::new(cli.prec).map_err(|e| usage(e.to_string()))?;
    match cli.cmd {
        Cmd::Eval(args) => {
            let (v, tails) = eval(&args, &ctx)?;
            let (re, im, shown) = format_cx(&v, ctx.digits());
            if cli.json {
                let j = json!({"re": re, "im": im, "prec_bits": ctx.prec_bits, "tail_bounds": tails});
                outln!("{}", serde_json::to_string(&j).expect("serializable"));
            } else {
                outln!("{shown}");
            }
            Ok(0)
        }
        Cmd::Verify { suite, suite_flag, seed, l, data } => {
            let name = suite_flag.or(suite).unwrap_or_else(|| "all".into());
            let suite: Suite = name.parse().map_err(|e: Error| usage(e.to_string()))?;
            if l.is_some_and(|l| l < 1) {
                return Err(usage("--l must be positive"));
            }
            let report = verify::run_suite(suite, &VerifyOptions { seed, l, data_dir: data }, &ctx);
            if cli.json {
                let cases: Vec<_> = report
                    .cases
                    .iter()
                    .map(|c| {
                        json!({"name": c.name, "status": c.status.to_string(), "residual": c.residual,
                               "tolerance": c.tolerance, "note": c.note})
                    })
                    .collect();
                let j = json!({"suite": report.suite, "prec_bits": report.prec_bits, "seed": report.seed,
                               "cases": cases, "exit_code": report.exit_code()});
                outln!("{}", serde_json::to_string_pretty(&j).expect("serializable"));
            } else {
                out!("{}", report.to_text());
            }
            debug_assert!(report.cases.iter().all(|c| c.status != Status::Fail || !c.tolerance.is_empty()));
            Ok(report.exit_code())
        }
        Cmd::Catalog { which, group, l, range, kappa0, families } => {
            let data = parse_group(&group, kappa0)?;
            let (a, b) = range.split_once("..").ok_or_else(|| usage(format!("expected lo..hi, got {range:?}")))?;
            let (lo, hi) = (parse_q(a)?, parse_q(b)?);
            if lo > hi {
                return Err(usage("empty range"));
            }
            let mut entries = match which.as_str() {
                "selberg" => selberg::catalog_selberg(&data, lo, hi)?,
                "higher" => {
                    if l < 1 {
                        return Err(usage("--l must be positive"));
                    }
                    higher::catalog_higher(&data, l, lo, hi)?
                }
                other => return Err(usage(format!("--which must be selberg or higher, got {other:?}"))),
            };
            if !families {
                entries.retain(|e| e.point().is_some());
            }
            out!("{}", catalog_rows(&entries, cli.json));
            Ok(0)
        }
        Cmd::Scattering { family, n, kappa0 } => {
            let family: Family = family.parse().map_err(|e: Error| usage(e.to_string()))?;
            if n == 0 {
                return Err(usage("--N must be positive"));
            }
            let d = group_data_partial(family, n, kappa0)?;
            let k0 = d.kappa0.map(|k| k.to_string()).unwrap_or_else(|| "unknown".into());
            let a = d.a_const.to_string();
            if cli.json {
                let pairs: Vec<_> = d
                    .pairs
                    .iter()
                    .map(|p| json!({"q1": p.q1, "q2": p.q2, "m1": p.m1, "m2": p.m2, "conductor": p.combined.conductor()}))
                    .collect();
                let j = json!({"group": d.name(), "kappa": d.kappa, "kappa0": k0, "A": a, "pairs": pairs});
                outln!("{}", serde_json::to_string_pretty(&j).expect("serializable"));
            } else {
                outln!("q1,q2,m1,m2,kappa,A,conductor,kappa0");
                for p in &d.pairs {
                    outln!("{},{},{},{},{},{},{},{}", p.q1, p.q2, p.m1, p.m2, d.kappa, a, p.combined.conductor(), k0);
                }
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let args = match expand_config(std::env::args().collect()) {
        Ok(a) => a,
        Err(Fail::Usage(m)) => {
            eprintln!("error: {m}");
            return ExitCode::from(2);
        }
        Err(Fail::Math(e)) => {
            eprintln!("{e}");
            return ExitCode::from(3);
        }
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(Fail::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Fail::Math(e)) => {
            eprintln!("{e}");
            ExitCode::from(3)
        }
    }
}
