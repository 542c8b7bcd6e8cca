//! Verification suites: seeded identity checks over every module, collected
//! into a deterministic report.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use rug::Float;

use crate::congruence::{cusp_count, enumerate_pairs, genus, group_data, group_data_partial, scattering_det, Family};
use crate::ctx::PrecisionContext;
use crate::cx::{pi, rel_diff, Cx};
use crate::dirichlet::{
    bundled_mod4_zeros, bundled_zeta_zeros, dirichlet_l, enumerate_characters, load_zero_list,
    primitive_characters, root_number, xi_complete, DirichletCharacter, ZeroList,
};
use crate::divisor::{q, DivisorEntry, Q};
use crate::error::{Error, Result};
use crate::higher::{self, HigherFactorKind, SpectralList, XiPart};
use crate::higher_l::{self, HigherLContext};
use crate::multigamma::{log_multigamma, mult_residual, pole_order, product_identity_residual, recurrence_residual, MultiGammaOrder};
use crate::numcore::arith::primes_up_to;
use crate::selberg;

pub const DEFAULT_SEED: u64 = 20240611;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIPPED",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Case {
    pub name: String,
    pub status: Status,
    pub residual: String,
    pub tolerance: String,
    pub note: String,
}

fn sci(x: f64) -> String {
    format!("{x:.3e}")
}

impl Case {
    /// PASS iff residual ≤ tol (NaN fails).
    pub fn check(name: impl Into<String>, residual: f64, tol: f64) -> Case {
        let ok = residual <= tol;
        Case {
            name: name.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            residual: sci(residual),
            tolerance: sci(tol),
            note: String::new(),
        }
    }

    pub fn from_result(name: impl Into<String>, r: Result<f64>, tol: f64) -> Case {
        match r {
            Ok(v) => Case::check(name, v, tol),
            Err(e) => Case::error(name, &e, tol),
        }
    }

    pub fn error(name: impl Into<String>, e: &Error, tol: f64) -> Case {
        Case {
            name: name.into(),
            status: Status::Fail,
            residual: "nan".into(),
            tolerance: sci(tol),
            note: e.to_string(),
        }
    }

    /// Exact comparison; residual is the number of mismatches.
    pub fn exact(name: impl Into<String>, mismatches: usize, note: String) -> Case {
        Case {
            name: name.into(),
            status: if mismatches == 0 { Status::Pass } else { Status::Fail },
            residual: mismatches.to_string(),
            tolerance: "0".into(),
            note,
        }
    }

    pub fn skipped(name: impl Into<String>, why: impl Into<String>) -> Case {
        Case {
            name: name.into(),
            status: Status::Skipped,
            residual: "-".into(),
            tolerance: "-".into(),
            note: why.into(),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Case {
        self.note = note.into();
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub suite: String,
    pub prec_bits: u32,
    pub seed: u64,
    pub cases: Vec<Case>,
}

impl Report {
    pub fn failures(&self) -> usize {
        self.cases.iter().filter(|c| c.status == Status::Fail).count()
    }

    pub fn exit_code(&self) -> i32 {
        (self.failures() > 0) as i32
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("suite {} prec {} seed {}\n", self.suite, self.prec_bits, self.seed);
        for c in &self.cases {
            out += &format!("{:<7} {}  residual={} tol={}", c.status.to_string(), c.name, c.residual, c.tolerance);
            if !c.note.is_empty() {
                out += &format!("  [{}]", c.note);
            }
            out.push('\n');
        }
        let count = |s: Status| self.cases.iter().filter(|c| c.status == s).count();
        out += &format!(
            "{} passed, {} failed, {} skipped\n",
            count(Status::Pass),
            count(Status::Fail),
            count(Status::Skipped)
        );
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Multigamma,
    Dirichlet,
    Scattering,
    SelbergFactors,
    HigherLadders,
    Reflection,
    Fourier,
    Catalogs,
    Weil,
    HigherL,
    All,
}

impl Suite {
    pub const EACH: [Suite; 10] = [
        Suite::Multigamma,
        Suite::Dirichlet,
        Suite::Scattering,
        Suite::SelbergFactors,
        Suite::HigherLadders,
        Suite::Reflection,
        Suite::Fourier,
        Suite::Catalogs,
        Suite::Weil,
        Suite::HigherL,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Multigamma => "multigamma",
            Suite::Dirichlet => "dirichlet",
            Suite::Scattering => "scattering",
            Suite::SelbergFactors => "selberg-factors",
            Suite::HigherLadders => "higher-ladders",
            Suite::Reflection => "reflection",
            Suite::Fourier => "fourier",
            Suite::Catalogs => "catalogs",
            Suite::Weil => "weil",
            Suite::HigherL => "higher-l",
            Suite::All => "all",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        Suite::EACH
            .iter()
            .chain(std::iter::once(&Suite::All))
            .find(|x| x.name() == s)
            .copied()
            .ok_or_else(|| Error::Domain(format!("unknown suite {s:?}")))
    }
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub seed: u64,
    /// Restricts the l-dependent suites to one l.
    pub l: Option<i64>,
    /// Directory holding the zero and spectral lists; bundled copies otherwise.
    pub data_dir: Option<PathBuf>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { seed: DEFAULT_SEED, l: None, data_dir: None }
    }
}

type Job = Box<dyn Fn() -> Vec<Case> + Send + Sync>;

fn rng(seed: u64, tag: &str) -> ChaCha8Rng {
    // FNV-1a of the tag keeps each case's points independent of the others.
    let h = tag.bytes().fold(0xcbf29ce484222325u64, |h, b| (h ^ b as u64).wrapping_mul(0x100000001b3));
    ChaCha8Rng::seed_from_u64(seed ^ h)
}

fn point(r: &mut ChaCha8Rng, re: (f64, f64), im: (f64, f64)) -> (f64, f64) {
    (r.gen_range(re.0..re.1), r.gen_range(im.0..im.1))
}

fn cx(ctx: &PrecisionContext, z: (f64, f64)) -> Cx {
    Cx::from_f64(ctx.work(), z.0, z.1)
}

fn fmt_pt(z: (f64, f64)) -> String {
    format!("{:.4}{:+.4}i", z.0, z.1)
}

/// Worst residual over the points; errors fail the case.
fn worst<F>(name: String, pts: &[(f64, f64)], tol: f64, f: F) -> Case
where
    F: Fn((f64, f64)) -> Result<f64>,
{
    let mut w = 0.0f64;
    let mut at = String::new();
    for &z in pts {
        match f(z) {
            Ok(r) => {
                if at.is_empty() || r > w || r.is_nan() {
                    w = r;
                    at = fmt_pt(z);
                }
            }
            Err(e) => return Case::error(name, &e, tol).with_note(format!("{} at {}", e, fmt_pt(z))),
        }
    }
    Case::check(name, w, tol).with_note(format!("{} points, worst at {at}", pts.len()))
}

fn away_from_poles(r: &mut ChaCha8Rng, n: usize, radius: f64) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    while out.len() < n {
        let z = point(r, (-radius, radius), (-radius, radius));
        if z.0.hypot(z.1) > radius {
            continue;
        }
        if z.0 < 0.5 && (z.0 - z.0.round()).hypot(z.1) < 0.1 {
            continue;
        }
        out.push(z);
    }
    out
}

fn ls(opts: &VerifyOptions, default: &[i64]) -> Vec<i64> {
    match opts.l {
        Some(l) => vec![l],
        None => default.to_vec(),
    }
}

fn multigamma_jobs(ctx: PrecisionContext, opts: &VerifyOptions) -> Vec<Job> {
    let seed = opts.seed;
    let mut jobs: Vec<Job> = Vec::new();
    for level in [MultiGammaOrder::Gamma, MultiGammaOrder::Gamma2, MultiGammaOrder::Gamma3] {
        jobs.push(Box::new(move || {
            let name = format!("recurrence level {}", level.level());
            let pts = away_from_poles(&mut rng(seed, &name), 50, 10.0);
            vec![worst(name, &pts, ctx.tol_closed, |z| recurrence_residual(level, &cx(&ctx, z), &ctx))]
        }));
    }
    for level in [MultiGammaOrder::Gamma, MultiGammaOrder::Gamma2] {
        for m in [2u64, 3, 5] {
            jobs.push(Box::new(move || {
                let name = format!("multiplication level {} m={m}", level.level());
                let pts = away_from_poles(&mut rng(seed, &name), 20, 10.0);
                vec![worst(name, &pts, ctx.tol_closed, |z| mult_residual(level, &cx(&ctx, z), m, &ctx))]
            }));
        }
    }
    jobs.push(Box::new(move || {
        let p = ctx.work();
        let tol = 1e-40;
        let g2 = log_multigamma(MultiGammaOrder::Gamma2, &Cx::from_i64(p, 4), &ctx).map(|v| v.exp());
        let g3 = log_multigamma(MultiGammaOrder::Gamma3, &Cx::from_i64(p, 5), &ctx).map(|v| v.exp());
        vec![
            Case::from_result("Gamma2(4) = 1/2", g2.map(|v| (v - Cx::ratio(p, 1, 2)).abs_f64()), tol),
            Case::from_result("Gamma3(5) = 2", g3.map(|v| (v - Cx::from_i64(p, 2)).abs_f64()), tol),
        ]
    }));
    for l in [1u64, 2, 3, 5] {
        jobs.push(Box::new(move || {
            let name = format!("product identity l={l}");
            let pts = away_from_poles(&mut rng(seed, &name), 10, 6.0);
            vec![worst(name, &pts, ctx.tol_closed, |z| product_identity_residual(&cx(&ctx, z), l, &ctx))]
        }));
    }
    jobs.push(Box::new(move || vec![pole_probe(&ctx)]));
    jobs
}

/// |Γ_level(z0+ε)| ε^order stays bounded away from 0 and ∞ for two ε.
fn pole_probe(ctx: &PrecisionContext) -> Case {
    let p = ctx.work();
    let mut w = 0.0f64;
    for level in [MultiGammaOrder::Gamma, MultiGammaOrder::Gamma2, MultiGammaOrder::Gamma3] {
        for z0 in [0i64, -1, -2, -3] {
            let ord = pole_order(level, q(z0, 1)) as i32;
            let mag = |eps: f64| -> Result<f64> {
                let v = log_multigamma(level, &Cx::from_f64(p, z0 as f64 + eps, 0.0), ctx)?;
                Ok(v.re.to_f64() + ord as f64 * eps.ln())
            };
            match (mag(1e-6), mag(1e-7)) {
                (Ok(a), Ok(b)) => w = w.max((a - b).abs()),
                (Err(e), _) | (_, Err(e)) => return Case::error("pole order probe", &e, 1e-3),
            }
        }
    }
    // log|Γ ε^d| changes by O(ε log ε) between the two probes.
    Case::check("pole order probe", w, 1e-3)
}

fn chi_of_conductor(c: u64) -> DirichletCharacter {
    if c == 1 {
        DirichletCharacter::principal(1)
    } else {
        primitive_characters(c).into_iter().next().expect("conductor has a primitive character")
    }
}

fn dirichlet_jobs(ctx: PrecisionContext, opts: &VerifyOptions) -> Vec<Job> {
    let seed = opts.seed;
    let mut jobs: Vec<Job> = Vec::new();
    jobs.push(Box::new(move || {
        let p = ctx.work();
        let z = DirichletCharacter::principal(1);
        let chi4 = enumerate_characters(4).pop().expect("mod 4");
        let two = Cx::from_i64(p, 2);
        let want = Float::with_val(p, pi(p).square_ref()) / 6u32;
        let catalan = Float::with_val(p, rug::float::Constant::Catalan);
        vec![
            Case::from_result("L(2, chi0) = pi^2/6", dirichlet_l(&two, &z, &ctx).map(|v| (v - Cx::real(want)).abs_f64()), 1e-30),
            Case::from_result("L(2, chi4) = Catalan", dirichlet_l(&two, &chi4, &ctx).map(|v| (v - Cx::real(catalan)).abs_f64()), 1e-30),
        ]
    }));
    for c in [1u64, 3, 4, 5] {
        jobs.push(Box::new(move || {
            let name = format!("xi functional equation conductor {c}");
            let chi = chi_of_conductor(c);
            let mut r = rng(seed, &name);
            let pts: Vec<_> = (0..10).map(|_| point(&mut r, (-2.0, 3.0), (-8.0, 8.0))).collect();
            vec![worst(name, &pts, ctx.tol_closed, |z| {
                let s = cx(&ctx, z);
                let a = xi_complete(&s, &chi, &ctx)?;
                let one = Cx::one(ctx.work());
                let b = &root_number(&chi, &ctx)? * &xi_complete(&(one - &s), &chi.conj(), &ctx)?;
                Ok(rel_diff(&a, &b))
            })]
        }));
    }
    jobs.push(Box::new(move || {
        let mut bad = 0;
        for m in 1..=40u64 {
            for chi in enumerate_characters(m) {
                if !chi.is_principal() && !chi.sum_over_residues_is_zero() {
                    bad += 1;
                }
            }
        }
        vec![Case::exact("orthogonality q <= 40", bad, String::new())]
    }));
    jobs.push(Box::new(move || {
        let name = "Euler product Re s = 3".to_string();
        let mut r = rng(seed, &name);
        let primes = primes_up_to(10_000);
        let mut cases_pts = Vec::new();
        for c in [1u64, 3, 4, 5] {
            cases_pts.push((chi_of_conductor(c), point(&mut r, (3.0, 3.0 + 1e-12), (-10.0, 10.0))));
        }
        let mut w = 0.0f64;
        for (chi, z) in &cases_pts {
            let s = Complex64::new(z.0, z.1);
            let mut prod = Complex64::new(1.0, 0.0);
            for &pr in &primes {
                let v = match chi.turns(pr) {
                    None => continue,
                    Some((a, d)) => Complex64::from_polar(1.0, std::f64::consts::TAU * a as f64 / d as f64),
                };
                prod /= 1.0 - v * (-s * (pr as f64).ln()).exp();
            }
            match dirichlet_l(&cx(&ctx, *z), chi, &ctx) {
                Ok(l) => {
                    let (a, b) = l.to_f64();
                    w = w.max((Complex64::new(a, b) - prod).norm());
                }
                Err(e) => return vec![Case::error(name, &e, 1e-9)],
            }
        }
        vec![Case::check(name, w, 1e-9)]
    }));
    let data = opts.data_dir.clone();
    jobs.push(Box::new(move || {
        let name = "zeta at first 10 listed zeros";
        let zeros = match zeta_zero_list(&data) {
            Ok(z) => z,
            Err(why) => return vec![Case::skipped(name, why)],
        };
        let p = ctx.work();
        let z = DirichletCharacter::principal(1);
        let mut w = 0.0f64;
        for n in 0..zeros.len().min(10) {
            let s = Cx::new(Float::with_val(p, 0.5f64), zeros.ordinate(n, p));
            match dirichlet_l(&s, &z, &ctx) {
                Ok(v) => w = w.max(v.abs_f64()),
                Err(e) => return vec![Case::error(name, &e, 1e-6)],
            }
        }
        vec![Case::check(name, w, 1e-6)]
    }));
    jobs
}

fn scattering_jobs(ctx: PrecisionContext, opts: &VerifyOptions) -> Vec<Job> {
    let seed = opts.seed;
    let mut jobs: Vec<Job> = Vec::new();
    for family in [Family::Gamma0, Family::Gamma1, Family::GammaFull] {
        jobs.push(Box::new(move || {
            let mut bad = Vec::new();
            for n in 1..=60 {
                let got = enumerate_pairs(family, n).len() as u64;
                if got != cusp_count(family, n) {
                    bad.push(format!("N={n}: {got} vs {}", cusp_count(family, n)));
                }
            }
            let name = format!("cusp census {} N <= 60", family.tag());
            vec![Case::exact(name, bad.len(), bad.join(", "))]
        }));
    }
    jobs.push(Box::new(move || {
        let d = group_data(Family::Gamma0, 1, None);
        let ok = d.as_ref().map(|d| d.kappa == 1 && d.a_const == 1).unwrap_or(false);
        vec![Case::exact("Gamma0(1): kappa = 1, A = 1", (!ok) as usize, String::new())]
    }));
    for n in [1u64, 2, 3, 4, 6] {
        jobs.push(Box::new(move || {
            let name = format!("phi(s)phi(1-s) = 1 Gamma0({n})");
            // κ₀ is tabulated only for level 1; elsewhere κ₀ = κ, for which
            // the identity holds as well.
            let d = match group_data_partial(Family::Gamma0, n, None) {
                Ok(d) if d.kappa0.is_some() => Ok(d),
                Ok(d) => group_data(Family::Gamma0, n, Some(d.kappa as i64)),
                Err(e) => Err(e),
            };
            let d = match d {
                Ok(d) => d,
                Err(e) => return vec![Case::error(name, &e, ctx.tol_closed)],
            };
            let mut r = rng(seed, &name);
            let pts: Vec<_> = (0..10).map(|_| point(&mut r, (-1.0, 2.0), (-6.0, 6.0))).collect();
            vec![worst(name, &pts, ctx.tol_closed, |z| {
                let s = cx(&ctx, z);
                let a = scattering_det(&s, &d, &ctx)?;
                let b = scattering_det(&(Cx::one(ctx.work()) - &s), &d, &ctx)?;
                Ok(((&a * &b) - Cx::one(ctx.work())).abs_f64())
            })]
        }));
    }
    jobs.push(Box::new(move || {
        let mut w = 0.0f64;
        for family in [Family::Gamma0, Family::Gamma1, Family::GammaFull] {
            for n in 1..=60 {
                let d = match group_data_partial(family, n, None) {
                    Ok(d) => d,
                    Err(e) => return vec![Case::error("Gauss-Bonnet N <= 60", &e, 1e-12)],
                };
                let rhs = 2.0 * std::f64::consts::PI
                    * (2.0 * genus(family, n) as f64 - 2.0
                        + d.kappa as f64
                        + d.nu2 as f64 / 2.0
                        + 2.0 * d.nu3 as f64 / 3.0);
                let vol = d.volume(64).to_f64();
                w = w.max((vol - rhs).abs() / vol);
            }
        }
        vec![Case::check("Gauss-Bonnet N <= 60", w, 1e-12)]
    }));
    jobs
}

fn selberg_jobs(ctx: PrecisionContext, _opts: &VerifyOptions) -> Vec<Job> {
    let mut jobs: Vec<Job> = Vec::new();
    jobs.push(Box::new(move || {
        let p = ctx.work();
        let d = group_data(Family::Gamma0, 1, None).expect("level 1 is tabulated");
        let want = Float::with_val(p, 6) / Float::with_val(p, pi(p).sqrt() * pi(p));
        let r = selberg::xi_par(&Cx::one(p), &d, &ctx).map(|v| (v - Cx::real(want)).abs_f64());
        vec![Case::from_result("Xi_par(1) = 6 pi^(-3/2) on Gamma0(1)", r, ctx.tol_closed)]
    }));
    jobs.push(Box::new(move || {
        let p = ctx.work();
        let mut bad = Vec::new();
        for (fam, n) in [(Family::Gamma0, 1), (Family::Gamma0, 4), (Family::Gamma1, 5), (Family::GammaFull, 3)] {
            let d = match group_data_partial(fam, n, None) {
                Ok(d) => d,
                Err(e) => return vec![Case::error("factors regular on 1 < Re s < 2", &e, 0.0)],
            };
            let d = if d.kappa0.is_none() {
                group_data(fam, n, Some(d.kappa as i64)).expect("kappa0 = kappa is admissible")
            } else {
                d
            };
            for re in [1.1, 1.3, 1.5, 1.7, 1.9] {
                for im in [-5.0, 0.0, 5.0] {
                    let s = Cx::from_f64(p, re, im);
                    let vals = [selberg::xi_i(&s, &d, &ctx), selberg::xi_ell(&s, &d, &ctx), selberg::xi_par(&s, &d, &ctx)];
                    for v in vals {
                        match v {
                            Ok(v) if v.is_finite() && !v.is_zero() => {}
                            _ => bad.push(format!("{} at {re}{im:+}i", d.name())),
                        }
                    }
                }
            }
        }
        vec![Case::exact("factors regular on 1 < Re s < 2", bad.len(), bad.join(", "))]
    }));
    jobs.push(Box::new(move || vec![numeric_symbolic(&ctx)]));
    jobs
}

/// At each catalog point of Ξ_hyp on [-6, 1], |Ξ_I Ξ_ell Ξ_par(s0+ε)| ~ ε^{d'}
/// with d' the gamma factor's order read off the catalog breakdown.
fn numeric_symbolic(ctx: &PrecisionContext) -> Case {
    let name = "gamma factor orders vs log-log slope";
    let d = group_data(Family::Gamma0, 1, None).expect("level 1 is tabulated");
    let cat = match selberg::catalog_selberg(&d, q(-6, 1), q(1, 1)) {
        Ok(c) => c,
        Err(e) => return Case::error(name, &e, 0.05),
    };
    let p = ctx.work();
    let mut w = 0.0f64;
    for e in cat.iter().filter(|e| e.point().is_some()) {
        let s0 = e.point().expect("filtered");
        let order: Q = -e.breakdown.iter().filter(|(l, _)| *l != "xi").map(|(_, c)| *c).sum::<Q>();
        let x = *s0.numer() as f64 / *s0.denom() as f64;
        let mag = |eps: f64| selberg::gamma_factor(&Cx::from_f64(p, x + eps, 0.0), &d, ctx).map(|v| v.abs_f64().ln());
        match (mag(1e-5), mag(1e-6)) {
            (Ok(a), Ok(b)) => {
                let slope = (a - b) / 10f64.ln();
                w = w.max((slope - order.to_integer() as f64).abs());
            }
            (Err(err), _) | (_, Err(err)) => return Case::error(name, &err, 0.05),
        }
    }
    Case::check(name, w, 0.05)
}

fn higher_ladder_jobs(ctx: PrecisionContext, opts: &VerifyOptions) -> Vec<Job> {
    let seed = opts.seed;
    let mut jobs: Vec<Job> = Vec::new();
    let kinds = [
        (HigherFactorKind::F, "F"),
        (HigherFactorKind::G, "G"),
        (HigherFactorKind::H, "H"),
        (HigherFactorKind::I, "I"),
    ];
    for (kind, label) in kinds {
        let set: &[i64] = if kind == HigherFactorKind::H { &[1, 2, 3, 4, 5, 6] } else { &[1, 2, 3] };
        for l in ls(opts, set) {
            jobs.push(Box::new(move || {
                let name = format!("{label}_l ladder l={l}");
                let mut r = rng(seed, &name);
                let pts: Vec<_> = (0..10).map(|_| point(&mut r, (0.2, 3.0), (-4.0, 4.0))).collect();
                vec![worst(name, &pts, ctx.tol_closed, |z| higher::higher_ladder_residual(kind, &cx(&ctx, z), l, &ctx))]
            }));
        }
    }
    for l in ls(opts, &[1, 2, 3, 5]) {
        jobs.push(Box::new(move || {
            let name = format!("J_l ladder l={l}");
            let mut r = rng(seed, &name);
            let pts: Vec<_> = (0..5).map(|_| point(&mut r, (0.2, 3.0), (-4.0, 4.0))).collect();
            vec![worst(name, &pts, ctx.tol_closed, |z| higher_l::j_l_ladder_residual(&cx(&ctx, z), l, &ctx))]
        }));
    }
    for (part, label) in [(XiPart::I, "I"), (XiPart::Ell, "ell"), (XiPart::Par, "par")] {
        for l in ls(opts, &[1, 2, 3]) {
            jobs.push(Box::new(move || {
                let name = format!("assembly ladder Xi_(l inf,{label}) Gamma0(1) l={l}");
                let d = group_data(Family::Gamma0, 1, None).expect("level 1 is tabulated");
                let mut r = rng(seed, &name);
                let lo = 1.0 - l as f64 + 0.3;
                let pts: Vec<_> = (0..5).map(|_| point(&mut r, (lo, lo + 2.5), (-3.0, 3.0))).collect();
                vec![worst(name, &pts, ctx.tol_closed, |z| higher::assembly_ladder_residual(part, &cx(&ctx, z), l, &d, &ctx))]
            }));
        }
    }
    let data = opts.data_dir.clone();
    jobs.push(Box::new(move || theta_cases(&ctx, seed, &data)));
    jobs
}

fn theta_cases(ctx: &PrecisionContext, seed: u64, data: &Option<PathBuf>) -> Vec<Case> {
    let mut lists = vec![("synthetic", SpectralList::from_reals(&[3.1, 5.75, 8.2, 11.0]))];
    match data {
        None => lists.push(("maass_g0_1", higher::bundled_maass_g0_1())),
        Some(dir) => match higher::load_spectral_list(&dir.join("maass_g0_1.txt")) {
            Ok(s) => lists.push(("maass_g0_1", s)),
            Err(_) => {}
        },
    }
    let mut out = Vec::new();
    if lists.len() == 1 {
        out.push(Case::skipped("Theta periodicity maass_g0_1", "spectral list not found"));
    }
    for (tag, spectrum) in &lists {
        for l in [1i64, 2] {
            let name = format!("Theta periodicity {tag} l={l}");
            let mut r = rng(seed, &name);
            let pts: Vec<_> = (0..5).map(|_| point(&mut r, (-2.0, 2.0), (-1.0, 1.0))).collect();
            out.push(worst(name, &pts, ctx.tol_closed, |z| {
                let s = cx(ctx, z);
                let a = higher::theta_linf(&s, l, spectrum, ctx)?.value;
                let b = higher::theta_linf(&s.add_i64(l), l, spectrum, ctx)?.value;
                Ok(rel_diff(&a, &b))
            }));
            let name = format!("Theta second log-derivative {tag} l={l}");
            let mut r = rng(seed, &name);
            let pts: Vec<_> = (0..5).map(|_| point(&mut r, (-2.0, 2.0), (-1.0, 1.0))).collect();
            out.push(worst(name, &pts, ctx.tol_quad, |z| higher::theta_second_logderiv_residual(&cx(ctx, z), l, spectrum, ctx)));
        }
    }
    out
}

fn reflection_jobs(ctx: PrecisionContext, opts: &VerifyOptions) -> Vec<Job> {
    let seed = opts.seed;
    let mut jobs: Vec<Job> = Vec::new();
    for l in ls(opts, &[1, 2, 3, 5]) {
        jobs.push(Box::new(move || {
            let name = format!("reflection identity l={l}");
            let mut r = rng(seed, &name);
            let pts: Vec<_> = (0..20).map(|_| point(&mut r, (-2.0, 2.0), (-1.0, 1.0))).collect();
            let rs: Vec<f64> = (0..20).map(|_| r.gen_range(-6.0..6.0)).collect();
            let pairs: Vec<_> = pts.iter().zip(&rs).map(|(a, b)| (*a, *b)).collect();
            let mut w = 0.0f64;
            for (z, rr) in &pairs {
                match higher::reflection_identity_residual(&cx(&ctx, *z), &Cx::from_f64(ctx.work(), *rr, 0.0), l, &ctx) {
                    Ok(v) => w = w.max(v),
                    Err(e) => return vec![Case::error(name, &e, ctx.tol_closed)],
                }
            }
            vec![
                Case::check(name, w, ctx.tol_closed),
                Case::from_result(format!("lattice sum at l/2, l={l}"), higher::lattice_sum_residual(l, &ctx), ctx.tol_closed),
            ]
        }));
    }
    jobs
}

fn fourier_jobs(ctx: PrecisionContext, opts: &VerifyOptions) -> Vec<Job> {
    let seed = opts.seed;
    let mut jobs: Vec<Job> = Vec::new();
    for l in ls(opts, &[1, 2]) {
        jobs.push(Box::new(move || {
            let name = format!("Fourier pair l={l}");
            let mut r = rng(seed, &name);
            let lo = 1.0 - l as f64 + 0.5;
            let mut w = 0.0f64;
            let mut tol = ctx.tol_quad;
            for _ in 0..5 {
                let z = point(&mut r, (lo, lo + 2.0), (-2.0, 2.0));
                let rr = r.gen_range(-5.0..5.0);
                match higher::fourier_residual(&cx(&ctx, z), rr, l, &ctx) {
                    Ok((v, t)) => {
                        w = w.max(v);
                        tol = t;
                    }
                    Err(e) => return vec![Case::error(name, &e, ctx.tol_quad)],
                }
            }
            vec![Case::check(name, w, tol)]
        }));
    }
    jobs
}

/// Expected orders from the displayed lists for Ξ_hyp of SL(2, Z).
pub fn expected_selberg_orders(lo: i64) -> Vec<(Q, i64)> {
    let mut out = vec![(q(0, 1), -1), (q(1, 1), 1)];
    for k in 0.. {
        let s = q(1, 2) - k;
        if s < Q::from_integer(lo) {
            break;
        }
        out.push((s, -1));
    }
    for k in 0.. {
        if -6 * k - 1 < lo {
            break;
        }
        for j in [1, 2, 3, 4, 6] {
            out.push((q(-6 * k - j, 1), 2 * k + 1));
        }
        out.push((q(-6 * k - 5, 1), 2 * k + 3));
    }
    finish(out, lo)
}

/// Expected orders from the displayed lists for Ξ_{1∞,hyp} of SL(2, Z).
pub fn expected_higher_orders(lo: i64) -> Vec<(Q, i64)> {
    let mut out = vec![(q(0, 1), -1)];
    for k in 0.. {
        let s = q(-1, 2) - k;
        if s < Q::from_integer(lo) {
            break;
        }
        out.push((s, k + 1));
    }
    for k in 0.. {
        if -6 * k - 2 < lo {
            break;
        }
        for j in 2..=7 {
            let ord = 6 * k * k + 2 * j * k + j + if j <= 5 { -1 } else { 1 };
            out.push((q(-6 * k - j, 1), -ord));
        }
    }
    finish(out, lo)
}

fn finish(mut v: Vec<(Q, i64)>, lo: i64) -> Vec<(Q, i64)> {
    v.retain(|(s, _)| *s >= Q::from_integer(lo));
    v.sort();
    v
}

/// Mismatches between a catalog's point entries and an expected list.
pub fn compare_catalog(cat: &[DivisorEntry], want: &[(Q, i64)]) -> Vec<String> {
    let got: Vec<(Q, i64)> = cat.iter().filter_map(|e| e.point().map(|s| (s, e.order))).collect();
    let mut bad = Vec::new();
    for w in want {
        if !got.contains(w) {
            let g = got.iter().find(|g| g.0 == w.0).map(|g| g.1.to_string()).unwrap_or_else(|| "none".into());
            bad.push(format!("s={}: want {} got {g}", w.0, w.1));
        }
    }
    for g in &got {
        if !want.iter().any(|w| w.0 == g.0) {
            bad.push(format!("s={}: unexpected order {}", g.0, g.1));
        }
    }
    bad
}

fn catalog_jobs(_ctx: PrecisionContext, _opts: &VerifyOptions) -> Vec<Job> {
    let mut jobs: Vec<Job> = Vec::new();
    jobs.push(Box::new(|| {
        let d = group_data(Family::Gamma0, 1, None).expect("level 1 is tabulated");
        let name = "Xi_hyp catalog Gamma0(1) on [-40, 1]";
        match selberg::catalog_selberg(&d, q(-40, 1), q(1, 1)) {
            Ok(cat) => {
                let bad = compare_catalog(&cat, &expected_selberg_orders(-40));
                vec![Case::exact(name, bad.len(), bad.join("; "))]
            }
            Err(e) => vec![Case::error(name, &e, 0.0)],
        }
    }));
    jobs.push(Box::new(|| {
        let d = group_data(Family::Gamma0, 1, None).expect("level 1 is tabulated");
        let name = "Xi_(1 inf,hyp) catalog Gamma0(1) on [-40, 1]";
        match higher::catalog_higher(&d, 1, q(-40, 1), q(1, 1)) {
            Ok(cat) => {
                let bad = compare_catalog(&cat, &expected_higher_orders(-40));
                vec![Case::exact(name, bad.len(), bad.join("; "))]
            }
            Err(e) => vec![Case::error(name, &e, 0.0)],
        }
    }));
    jobs.push(Box::new(|| {
        let d = group_data(Family::Gamma0, 1, None).expect("level 1 is tabulated");
        let a = selberg::catalog_selberg(&d, q(2, 1), q(3, 1)).map(|c| c.iter().filter(|e| e.point().is_some()).count());
        let b = higher::catalog_higher(&d, 1, q(2, 1), q(3, 1)).map(|c| c.iter().filter(|e| e.point().is_some()).count());
        let n = a.unwrap_or(1) + b.unwrap_or(1);
        vec![Case::exact("no real divisor on [2, 3]", n, String::new())]
    }));
    jobs
}

fn zeta_zero_list(data: &Option<PathBuf>) -> std::result::Result<ZeroList, String> {
    match data {
        None => Ok(bundled_zeta_zeros()),
        Some(dir) => load_zero_list(&dir.join("zeta_zeros_100.txt"), &DirichletCharacter::principal(1))
            .map_err(|e| e.to_string()),
    }
}

fn mod4_zero_list(data: &Option<PathBuf>) -> std::result::Result<ZeroList, String> {
    match data {
        None => Ok(bundled_mod4_zeros()),
        Some(dir) => {
            let chi4 = enumerate_characters(4).pop().expect("mod 4");
            load_zero_list(&dir.join("dirichlet_4_1_zeros_100.txt"), &chi4).map_err(|e| e.to_string())
        }
    }
}

fn weil_jobs(ctx: PrecisionContext, opts: &VerifyOptions) -> Vec<Job> {
    let mut jobs: Vec<Job> = Vec::new();
    for (tag, mod4) in [("chi0", false), ("chi4", true)] {
        for s in [1.2f64, 1.5, 2.0] {
            let data = opts.data_dir.clone();
            jobs.push(Box::new(move || {
                let name = format!("Weil explicit formula {tag} l=1 s={s}");
                let zeros = if mod4 { mod4_zero_list(&data) } else { zeta_zero_list(&data) };
                let zeros = match zeros {
                    Ok(z) => z,
                    Err(why) => return vec![Case::skipped(name, why)],
                };
                let h = match HigherLContext::new(1, zeros.character.clone(), zeros) {
                    Ok(h) => h,
                    Err(e) => return vec![Case::error(name, &e, ctx.tol_trunc)],
                };
                match higher_l::weil_report(&Cx::from_f64(ctx.work(), s, 0.0), &h, &ctx) {
                    Ok(rep) => {
                        let note = format!("zero side {:.6}, zero tail ~{:.1e}", rep.zero_side.re, rep.zero_tail);
                        let mut out = vec![Case::check(name, rep.residual, ctx.tol_trunc).with_note(note)];
                        out.push(Case::check(
                            format!("prime side vs Dirichlet series {tag} s={s}"),
                            (rep.prime_side - rep.prime_series).norm(),
                            1e-9,
                        ));
                        out
                    }
                    Err(e) => vec![Case::error(name, &e, ctx.tol_trunc)],
                }
            }));
        }
    }
    jobs.push(Box::new(move || {
        let p = ctx.work();
        [1i64, 2, 3]
            .iter()
            .map(|&l| {
                let r = higher_l::delta_term_residual(&Cx::from_f64(p, 0.7, 0.3), l, &ctx);
                Case::from_result(format!("delta term vs gamma/linear derivatives l={l}"), r, ctx.tol_quad)
            })
            .collect()
    }));
    jobs
}

fn higher_l_jobs(ctx: PrecisionContext, opts: &VerifyOptions) -> Vec<Job> {
    let seed = opts.seed;
    let mut jobs: Vec<Job> = Vec::new();
    for l in ls(opts, &[1, 2, 3]) {
        for c in [1u64, 3, 4] {
            jobs.push(Box::new(move || {
                let chi = chi_of_conductor(c);
                let name = format!("L_(l inf) ladder l={l} conductor {c}");
                let mut r = rng(seed, &name);
                let pts: Vec<_> = (0..5).map(|_| point(&mut r, (-0.5, 2.0), (-3.0, 3.0))).collect();
                let a = worst(name, &pts, ctx.tol_closed, |z| higher_l::l_linf_ladder_residual(&cx(&ctx, z), l, &chi, &ctx));
                let name = format!("xi_(l inf) ladder l={l} conductor {c}");
                let mut r = rng(seed, &name);
                let pts: Vec<_> = (0..5).map(|_| point(&mut r, (-0.5, 2.0), (-3.0, 3.0))).collect();
                let b = worst(name, &pts, ctx.tol_closed, |z| higher_l::xi_linf_ladder_residual(&cx(&ctx, z), l, &chi, &ctx));
                vec![a, b]
            }));
        }
    }
    let data = opts.data_dir.clone();
    jobs.push(Box::new(move || {
        let name = "xi_(1 inf)(rho_1 - 1, chi0) vanishes";
        let zeros = match zeta_zero_list(&data) {
            Ok(z) if !z.is_empty() => z,
            Ok(_) => return vec![Case::skipped(name, "empty zero list")],
            Err(why) => return vec![Case::skipped(name, why)],
        };
        let p = ctx.work();
        let rho = Cx::new(Float::with_val(p, 0.5f64), zeros.ordinate(0, p));
        let r = higher_l::log_xi_linf_l(&rho.add_i64(-1), 1, &DirichletCharacter::principal(1), &ctx)
            .map(|v| v.re.to_f64().exp());
        vec![Case::from_result(name, r, 1e-6)]
    }));
    let data = opts.data_dir.clone();
    jobs.push(Box::new(move || {
        let zeros = match zeta_zero_list(&data) {
            Ok(z) => z,
            Err(why) => return vec![Case::skipped("theta_(l inf) with zeta zeros", why)],
        };
        let mut out = Vec::new();
        for l in [1i64, 2] {
            let name = format!("theta_(l inf) periodicity zeta zeros l={l}");
            let h = match HigherLContext::new(l, DirichletCharacter::principal(1), zeros.clone()) {
                Ok(h) => h,
                Err(e) => {
                    out.push(Case::error(name, &e, ctx.tol_closed));
                    continue;
                }
            };
            let mut r = rng(seed, &name);
            let pts: Vec<_> = (0..5).map(|_| point(&mut r, (-2.0, 2.0), (-1.0, 1.0))).collect();
            out.push(worst(name, &pts, ctx.tol_closed, |z| Ok(higher_l::theta_periodicity_residual(&cx(&ctx, z), &h, &ctx))));
        }
        if let Ok(h) = HigherLContext::new(4, DirichletCharacter::principal(1), zeros) {
            let t = higher_l::theta_linf_l_product(&Cx::from_f64(ctx.work(), 0.3, 0.0), &h, &ctx);
            out.push(Case::check("theta_(4 inf) tail bound", t.tail_bound, 1e-160).with_note(format!("{} zeros", t.used)));
        }
        out
    }));
    for l in ls(opts, &[1, 2]) {
        let data = opts.data_dir.clone();
        jobs.push(Box::new(move || fe_cases(&ctx, l, &data)));
    }
    jobs
}

/// Sample points for the functional-equation check.
pub fn fe_points(l: i64) -> Vec<(f64, f64)> {
    let c = (1 - l) as f64 / 2.0;
    vec![(c + 0.8, 0.2), (c - 0.7, 0.0), (c + 0.25, 0.6), (c - 0.4, -0.5), (c + 1.1, -0.3)]
}

fn fe_cases(ctx: &PrecisionContext, l: i64, data: &Option<PathBuf>) -> Vec<Case> {
    let zeros = match zeta_zero_list(data) {
        Ok(z) => z,
        Err(why) => return vec![Case::skipped(format!("hat-xi functional equation l={l}"), why)],
    };
    let h = match HigherLContext::new(l, DirichletCharacter::principal(1), zeros) {
        Ok(h) => h,
        Err(e) => return vec![Case::error(format!("hat-xi functional equation l={l}"), &e, ctx.tol_trunc)],
    };
    let mut out = Vec::new();
    let mut w = 0.0f64;
    let mut tol = ctx.tol_trunc;
    for z in fe_points(l) {
        match higher_l::functional_eq_l_residual(&cx(ctx, z), &h, ctx) {
            Ok((r, t)) => {
                w = w.max(r);
                tol = tol.max(t);
            }
            Err(e) => return vec![Case::error(format!("hat-xi functional equation l={l}"), &e, tol)],
        }
    }
    out.push(Case::check(format!("hat-xi functional equation l={l}"), w, tol).with_note("5 points, second differences"));
    let c = (1 - l) as f64 / 2.0;
    match higher_l::affine_fit(&cx(ctx, (c - 0.6, -0.2)), &cx(ctx, (c + 0.9, 0.4)), &h, ctx) {
        Ok(fit) => {
            let note = format!(
                "a ~ {:.8}{:+.8}i, b ~ {:.8}{:+.8}i (estimates)",
                fit.a.re, fit.a.im, fit.b.re, fit.b.im
            );
            let t = ctx.tol_trunc.max(10.0 * fit.tail_bound);
            out.push(Case::check(format!("hat-xi affine fit l={l}"), fit.max_deviation, t).with_note(note));
        }
        Err(e) => out.push(Case::error(format!("hat-xi affine fit l={l}"), &e, ctx.tol_trunc)),
    }
    out
}

fn jobs_for(suite: Suite, ctx: PrecisionContext, opts: &VerifyOptions) -> Vec<Job> {
    match suite {
        Suite::Multigamma => multigamma_jobs(ctx, opts),
        Suite::Dirichlet => dirichlet_jobs(ctx, opts),
        Suite::Scattering => scattering_jobs(ctx, opts),
        Suite::SelbergFactors => selberg_jobs(ctx, opts),
        Suite::HigherLadders => higher_ladder_jobs(ctx, opts),
        Suite::Reflection => reflection_jobs(ctx, opts),
        Suite::Fourier => fourier_jobs(ctx, opts),
        Suite::Catalogs => catalog_jobs(ctx, opts),
        Suite::Weil => weil_jobs(ctx, opts),
        Suite::HigherL => higher_l_jobs(ctx, opts),
        Suite::All => Suite::EACH.iter().flat_map(|s| jobs_for(*s, ctx, opts)).collect(),
    }
}

/// Runs a suite; cases execute in parallel and are reported in declared order.
pub fn run_suite(suite: Suite, opts: &VerifyOptions, ctx: &PrecisionContext) -> Report {
    let jobs = jobs_for(suite, *ctx, opts);
    let cases: Vec<Case> = jobs.par_iter().map(|j| j()).collect::<Vec<_>>().into_iter().flatten().collect();
    Report { suite: suite.name().into(), prec_bits: ctx.prec_bits, seed: opts.seed, cases }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::EACH {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert_eq!("all".parse::<Suite>().unwrap(), Suite::All);
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn expected_lists_spot_values() {
        let h = expected_higher_orders(-12);
        assert!(h.contains(&(q(-8, 1), -11)));
        assert!(h.contains(&(q(-7, 1), -8)));
        assert!(!h.iter().any(|(s, _)| *s == q(-1, 1)));
        let s = expected_selberg_orders(-12);
        assert!(s.contains(&(q(-11, 1), 5)));
        assert!(s.contains(&(q(-12, 1), 3)));
    }

    #[test]
    fn catalog_suite_passes_and_is_deterministic() {
        let ctx = PrecisionContext::default();
        let a = run_suite(Suite::Catalogs, &VerifyOptions::default(), &ctx);
        assert_eq!(a.exit_code(), 0, "{}", a.to_text());
        let b = run_suite(Suite::Catalogs, &VerifyOptions::default(), &ctx);
        assert_eq!(a.to_text(), b.to_text());
    }
}
