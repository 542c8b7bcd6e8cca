//! Higher Selberg zeta data: the test function g and its transform φ_s, the
//! factors F_l, G_l, H_l, I_l, the assembled Ξ_{l∞,•}, the periodic product
//! Θ_{l∞} and the divisor of Ξ_{l∞,hyp}.

use std::path::Path;

use num_complex::Complex64;
use rug::Float;

use crate::congruence::GroupData;
use crate::ctx::PrecisionContext;
use crate::cx::{pi, rel_diff, rel_from_logs, Cx};
use crate::dirichlet::zeros::{data_lines, parse_decimal};
use crate::divisor::{q, Atom, Divisor, DivisorEntry, FamilyTag, Q};
use crate::error::{Error, Result};
use crate::higher_l::log_l_linf;
use crate::multigamma::{log_gamma2, log_mult_constants, log_multigamma, MultiGammaOrder};
use crate::numcore::{constants, log_gamma, nonpos_int, trigamma};
use crate::quad;
use crate::selberg;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HigherFactorKind {
    F,
    G,
    H,
    I,
}

/// Factor families sharing the Γ-product machinery; J_l belongs to the
/// higher L-functions but is built the same way.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Kind {
    F,
    G,
    H,
    I,
    J,
}

impl From<HigherFactorKind> for Kind {
    fn from(k: HigherFactorKind) -> Kind {
        match k {
            HigherFactorKind::F => Kind::F,
            HigherFactorKind::G => Kind::G,
            HigherFactorKind::H => Kind::H,
            HigherFactorKind::I => Kind::I,
        }
    }
}

/// exponent · log Γ_level(a s + b).
#[derive(Debug, Clone, Copy)]
pub(crate) struct GammaTerm {
    pub level: MultiGammaOrder,
    pub exp: i64,
    pub a: Q,
    pub b: Q,
}

fn term(level: MultiGammaOrder, exp: i64, a: Q, b: Q) -> GammaTerm {
    GammaTerm { level, exp, a, b }
}

pub(crate) fn gamma_terms(kind: Kind, l: i64) -> Vec<GammaTerm> {
    use MultiGammaOrder::*;
    let mut out = Vec::new();
    match kind {
        Kind::F => {
            for r in 0..l {
                out.push(term(Gamma3, -2 * l, q(1, l), q(l + r, l)));
                out.push(term(Gamma2, -2 * r + 2 * l - 1, q(1, l), q(l + r, l)));
            }
        }
        Kind::G => {
            for r in 0..l {
                let e = if r % 2 == 0 { 1 } else { -1 };
                if l % 2 == 1 {
                    out.push(term(Gamma, e, q(1, 2 * l), q(l + r, 2 * l)));
                } else {
                    out.push(term(Gamma2, e, q(1, l), q(l + r, l)));
                }
            }
        }
        Kind::H => {
            let t = |num: i64| q(num, 3 * l);
            let a = q(1, 3 * l);
            match l % 3 {
                1 => {
                    for r in 0..=(l - 1) / 3 {
                        out.push(term(Gamma, 1, a, t(l + 3 * r)));
                        out.push(term(Gamma, 1, a, t(2 * l + 3 * r)));
                    }
                    for r in 0..(l - 1) / 3 {
                        out.push(term(Gamma, -1, a, t(l + 3 * r + 2)));
                        out.push(term(Gamma, -1, a, t(2 * l + 3 * r + 1)));
                    }
                }
                2 => {
                    for r in 0..=(l - 2) / 3 {
                        out.push(term(Gamma, 1, a, t(l + 3 * r)));
                        out.push(term(Gamma, 1, a, t(2 * l + 3 * r + 1)));
                    }
                    for r in 0..(l - 2) / 3 {
                        out.push(term(Gamma, -1, a, t(l + 3 * r + 2)));
                        out.push(term(Gamma, -1, a, t(2 * l + 3 * r + 2)));
                    }
                }
                _ => {
                    // l ≡ 0 (mod 3)
                    for r in 0..=(l - 3) / 3 {
                        out.push(term(Gamma2, 1, q(1, l), q(l + 3 * r, l)));
                        out.push(term(Gamma2, -1, q(1, l), q(l + 3 * r + 2, l)));
                    }
                }
            }
        }
        Kind::I => {
            for r in 0..l {
                out.push(term(Gamma2, 1, q(1, l), q(l + r, l)));
            }
        }
        Kind::J => {
            for r in 0..l {
                out.push(term(Gamma2, 1, q(1, 2 * l), q(2 * r + l, 2 * l)));
                out.push(term(Gamma2, 1, q(1, 2 * l), q(2 * r + 2 * l, 2 * l)));
            }
        }
    }
    out
}

pub(crate) fn affine(s: &Cx, a: Q, b: Q) -> Cx {
    let p = s.prec();
    s.scale_i64(*a.numer()).div_i64(*a.denom()) + Cx::ratio(p, *b.numer(), *b.denom())
}

fn ln_int(p: u32, n: i64) -> Float {
    Float::with_val(p, n).ln()
}

/// The exp(...) prefactor of each factor, as a log.
fn elementary(kind: Kind, s: &Cx, l: i64, ctx: &PrecisionContext) -> Cx {
    let p = ctx.work();
    let ln_l = ln_int(p, l);
    let quad = (s * &s.add_i64(l)).div_i64(l);
    match kind {
        Kind::F => {
            let (lk1, lk2) = log_mult_constants(l as u64, ctx);
            let c = constants(ctx);
            let lk = lk1 - lk2 * 2u32;
            let cubic = (&quad * &(s.scale_i64(-2).add_i64(3 - l))).div_i64(6);
            s.scale(&lk).div_i64(-l) + (s * &s.add_i64(l)).scale(&c.ln_2pi).div_i64(2) + cubic.scale(&ln_l)
        }
        Kind::G => {
            let base = if l % 2 == 1 { ln_l } else { ln_l - Float::with_val(p, rug::float::Constant::Log2) };
            s.scale(&base).div_i64(2 * l)
        }
        Kind::H => {
            let base = if l % 3 == 0 { ln_l - ln_int(p, 3) } else { ln_l };
            s.scale(&base).scale_i64(2).div_i64(3 * l)
        }
        Kind::I | Kind::J => {
            let (lk1, _) = log_mult_constants(l as u64, ctx);
            let d = if kind == Kind::I { 2 } else { 4 };
            s.scale(&lk1).div_i64(-l) - quad.scale(&ln_l).div_i64(d)
        }
    }
}

pub(crate) fn log_factor(kind: Kind, s: &Cx, l: i64, ctx: &PrecisionContext) -> Result<Cx> {
    check_l(l)?;
    let s = s.with_prec(ctx.work());
    let mut acc = elementary(kind, &s, l, ctx);
    for t in gamma_terms(kind, l) {
        acc += log_multigamma(t.level, &affine(&s, t.a, t.b), ctx)?.scale_i64(t.exp);
    }
    Ok(acc)
}

/// log of X_l(s)/X_l(s-l) in closed form.
pub(crate) fn log_ladder_rhs(kind: Kind, s: &Cx, ctx: &PrecisionContext) -> Result<Cx> {
    let s = s.with_prec(ctx.work());
    Ok(match kind {
        Kind::F => {
            let c = constants(ctx);
            s.scale(&c.ln_2pi) + log_gamma2(&s, ctx)?.scale_i64(2) - log_gamma(&s, ctx)?
        }
        Kind::G => log_gamma(&s.add_i64(1).div_i64(2), ctx)? - log_gamma(&s.div_i64(2), ctx)?,
        Kind::H => log_gamma(&s.add_i64(2).div_i64(3), ctx)? - log_gamma(&s.div_i64(3), ctx)?,
        Kind::I => log_gamma(&s, ctx)?.neg_ref(),
        Kind::J => log_gamma(&s.div_i64(2), ctx)?.neg_ref(),
    })
}

pub(crate) fn ladder_residual_kind(kind: Kind, s: &Cx, l: i64, ctx: &PrecisionContext) -> Result<f64> {
    let lhs = log_factor(kind, s, l, ctx)? - log_factor(kind, &s.add_i64(-l), l, ctx)?;
    Ok(rel_from_logs(&lhs, &log_ladder_rhs(kind, s, ctx)?))
}

fn check_l(l: i64) -> Result<()> {
    if l < 1 {
        return Err(Error::Domain(format!("l must be positive, got {l}")));
    }
    Ok(())
}

pub fn log_higher_factor(kind: HigherFactorKind, s: &Cx, l: i64, ctx: &PrecisionContext) -> Result<Cx> {
    log_factor(kind.into(), s, l, ctx)
}

pub fn higher_factor(kind: HigherFactorKind, s: &Cx, l: i64, ctx: &PrecisionContext) -> Result<Cx> {
    Ok(log_higher_factor(kind, s, l, ctx)?.exp())
}

/// |X_l(s)/X_l(s-l) / R(s) - 1| for the factor's quotient identity.
pub fn higher_ladder_residual(kind: HigherFactorKind, s: &Cx, l: i64, ctx: &PrecisionContext) -> Result<f64> {
    ladder_residual_kind(kind.into(), s, l, ctx)
}

fn check_strip(s: &Cx, l: i64) -> Result<()> {
    check_l(l)?;
    if s.re.to_f64() <= (1 - l) as f64 {
        return Err(Error::Domain(format!("test function needs Re s > {}", 1 - l)));
    }
    Ok(())
}

/// g(u) = u e^{-c|u|}/(2 sinh(lu/2)) - e^{-c|u|}/l with c = s + l/2 - 1/2, g(0) = 0.
pub fn test_g(u: &Float, s: &Cx, l: i64, ctx: &PrecisionContext) -> Result<Cx> {
    check_strip(s, l)?;
    let p = ctx.work();
    if u.is_zero() {
        return Ok(Cx::zero(p));
    }
    let u = Float::with_val(p, u);
    let c = s.with_prec(p).add_f64(l as f64 / 2.0 - 0.5);
    let decay = c.scale(&Float::with_val(p, u.abs_ref())).neg_ref().exp();
    let half = Float::with_val(p, &u * l) / 2u32;
    let ratio = Float::with_val(p, &u / (half.sinh() * 2u32));
    let inv_l = Float::with_val(p, 1) / l;
    Ok(decay.scale(&(ratio - inv_l)))
}

/// Double-precision g for quadrature.
fn test_g_f64(u: f64, c: Complex64, l: f64) -> Complex64 {
    let y = l * u / 2.0;
    let bracket = if y.abs() < 1e-3 {
        let y2 = y * y;
        -y2 / 6.0 + 7.0 * y2 * y2 / 360.0
    } else {
        y / y.sinh() - 1.0
    };
    (-c * u.abs()).exp() * (bracket / l)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhiForm {
    /// ψ'((w+l)/l)/l² - 1/(l(w+l/2)), w = s - 1/2 + ir.
    Closed,
    /// The three-term sum over m.
    Series,
    /// The -l²/4 Σ 1/(x²(x-l/2)(x+l/2)) sum.
    Product,
}

const DIRECT_TERMS: i64 = 8;

fn phi_pole(w: &Cx, l: i64) -> Result<()> {
    if nonpos_int(&w.add_i64(l).div_i64(l)).is_some() {
        return Err(Error::Pole { order: 2 });
    }
    if w.scale_i64(2).add_i64(l).is_zero() {
        return Err(Error::Pole { order: 1 });
    }
    Ok(())
}

pub fn phi_s_form(form: PhiForm, s: &Cx, r: &Cx, l: i64, ctx: &PrecisionContext) -> Result<Cx> {
    check_l(l)?;
    let p = ctx.work();
    let w = s.with_prec(p).add_f64(-0.5) + r.with_prec(p).mul_i();
    phi_pole(&w, l)?;
    let l2 = l * l;
    let half = |x: &Cx, sign: i64| x.scale_i64(2).add_i64(sign * l).div_i64(2);
    let m0 = if form == PhiForm::Closed { 0 } else { DIRECT_TERMS };
    let mut acc = Cx::zero(p);
    for m in 0..m0 {
        let x = w.add_i64(l + l * m);
        let (lo, hi) = (half(&x, -1), half(&x, 1));
        acc += match form {
            PhiForm::Series => x.sqr().recip() - lo.recip().div_i64(l) + hi.recip().div_i64(l),
            _ => (&(&x.sqr() * &lo) * &hi).recip().scale_i64(l2).div_i64(-4),
        };
    }
    let x = w.add_i64(l + l * m0);
    let tail = trigamma(&x.div_i64(l), ctx)?.div_i64(l2) - half(&x, -1).recip().div_i64(l);
    Ok(acc + tail)
}

/// φ_s(r), evaluated in the product form with the tail resummed.
pub fn phi_s(s: &Cx, r: &Cx, l: i64, ctx: &PrecisionContext) -> Result<Cx> {
    phi_s_form(PhiForm::Product, s, r, l, ctx)
}

/// h(r) = φ_s(r) + φ_s(-r).
pub fn h_transform(s: &Cx, r: &Cx, l: i64, ctx: &PrecisionContext) -> Result<Cx> {
    Ok(phi_s(s, r, l, ctx)? + phi_s(s, &r.neg_ref(), l, ctx)?)
}

/// Quadrature of g(u) e^{iru} against φ_s(r) + φ_s(-r): (residual, tolerance).
pub fn fourier_residual(s: &Cx, r: f64, l: i64, ctx: &PrecisionContext) -> Result<(f64, f64)> {
    check_strip(s, l)?;
    let tol = ctx.tol_quad;
    let (sr, si) = s.to_f64();
    let c = Complex64::new(sr + l as f64 / 2.0 - 0.5, si);
    // e^{-Re(c) U} U < tol/10
    let mut big_u = 1.0f64;
    while (-c.re * big_u).exp() * big_u >= tol / 10.0 {
        big_u *= 1.25;
    }
    let lf = l as f64;
    let f = |u: f64| test_g_f64(u, c, lf) * Complex64::new(0.0, r * u).exp();
    let (a, _) = quad::integrate(&f, -big_u, 0.0, tol / 100.0);
    let (b, _) = quad::integrate(&f, 0.0, big_u, tol / 100.0);
    let v = a + b;
    let h = h_transform(s, &Cx::from_f64(ctx.work(), r, 0.0), l, ctx)?;
    let (hr, hi) = h.to_f64();
    Ok(((v - Complex64::new(hr, hi)).norm(), tol))
}

/// (π/l)² sin^{-2}(π z/l).
fn csc2(z: &Cx, l: i64) -> Cx {
    let p = z.prec();
    let pl = Float::with_val(p, pi(p) / l);
    let sn = z.scale(&pl).sin();
    sn.sqr().recip().scale(&Float::with_val(p, pl.square_ref()))
}

/// |φ_s(r)+φ_s(-r)+φ_{1-l-s}(r)+φ_{1-l-s}(-r) - (π/l)²[sin^{-2}(π(s-1/2-ir)/l) + sin^{-2}(π(s-1/2+ir)/l)]|.
pub fn reflection_identity_residual(s: &Cx, r: &Cx, l: i64, ctx: &PrecisionContext) -> Result<f64> {
    check_l(l)?;
    let p = ctx.work();
    let s = s.with_prec(p);
    let r = r.with_prec(p);
    let t = Cx::one(p).add_i64(-l) - &s;
    let lhs = h_transform(&s, &r, l, ctx)? + h_transform(&t, &r, l, ctx)?;
    let ir = r.mul_i();
    let base = s.add_f64(-0.5);
    let rhs = csc2(&(&base - &ir), l) + csc2(&(&base + &ir), l);
    Ok((lhs - rhs).abs_f64())
}

/// |Σ_{m∈Z} (l/2 + lm)^{-2} - π²/l²| with the sum folded into 2ψ'(1/2)/l².
pub fn lattice_sum_residual(l: i64, ctx: &PrecisionContext) -> Result<f64> {
    check_l(l)?;
    let p = ctx.work();
    let sum = trigamma(&Cx::ratio(p, 1, 2), ctx)?.scale_i64(2).div_i64(l * l);
    let want = Float::with_val(p, pi(p).square_ref()) / (l * l);
    let via_sin = csc2(&Cx::ratio(p, l, 2), l);
    Ok((sum.clone() - Cx::real(want)).abs_f64().max((sum - via_sin).abs_f64()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum XiPart {
    I,
    Ell,
    Par,
}

/// log Ξ_{l∞,I}(s) = (vol/2π) log F_l(s).
pub fn log_xi_linf_i(s: &Cx, l: i64, data: &GroupData, ctx: &PrecisionContext) -> Result<Cx> {
    let p = ctx.work();
    let f = log_factor(Kind::F, s, l, ctx)?;
    Ok(f.scale(&Float::with_val(p, &data.vol_over_2pi())))
}

/// log Ξ_{l∞,ell}(s) = (ν₂/2) log G_l(s) + (2ν₃/3) log H_l(s).
pub fn log_xi_linf_ell(s: &Cx, l: i64, data: &GroupData, ctx: &PrecisionContext) -> Result<Cx> {
    let p = ctx.work();
    let mut out = Cx::zero(p);
    if data.nu2 > 0 {
        out += log_factor(Kind::G, s, l, ctx)?.scale_i64(data.nu2 as i64).div_i64(2);
    }
    if data.nu3 > 0 {
        out += log_factor(Kind::H, s, l, ctx)?.scale_i64(2 * data.nu3 as i64).div_i64(3);
    }
    Ok(out)
}

/// log Ξ_{l∞,par}(s); all exponents are integers, so any branch of the
/// log gives the same value.
pub fn log_xi_linf_par(s: &Cx, l: i64, data: &GroupData, ctx: &PrecisionContext) -> Result<Cx> {
    let k0 = data.kappa0()?;
    let p = ctx.work();
    let s = s.with_prec(p);
    let kappa = data.kappa as i64;
    let quad = (&s * &s.add_i64(l)).div_i64(2 * l);
    let mut acc = quad.scale(&selberg::log_par_base(data, p)).neg_ref();
    let e = (kappa - k0) / 2;
    if e != 0 {
        let g = log_gamma(&s.add_f64(l as f64 - 0.5).div_i64(l), ctx)?;
        acc += (s.scale(&ln_int(p, l)).div_i64(l) + g).scale_i64(e);
    }
    let i_half = log_factor(Kind::I, &s.add_f64(0.5), l, ctx)?;
    let i_s = log_factor(Kind::I, &s, l, ctx)?;
    acc += (i_half + i_s).scale_i64(kappa);
    let two_s = s.scale_i64(2);
    for chi in data.characters() {
        acc += log_l_linf(&two_s, 2 * l, chi, ctx)?;
    }
    Ok(acc)
}

pub fn log_xi_linf_factor(part: XiPart, s: &Cx, l: i64, data: &GroupData, ctx: &PrecisionContext) -> Result<Cx> {
    match part {
        XiPart::I => log_xi_linf_i(s, l, data, ctx),
        XiPart::Ell => log_xi_linf_ell(s, l, data, ctx),
        XiPart::Par => log_xi_linf_par(s, l, data, ctx),
    }
}

pub fn xi_linf_factor(part: XiPart, s: &Cx, l: i64, data: &GroupData, ctx: &PrecisionContext) -> Result<Cx> {
    Ok(log_xi_linf_factor(part, s, l, data, ctx)?.exp())
}

/// |Ξ_{l∞,•}(s) Ξ_•(s+l) / Ξ_{l∞,•}(s+l) - 1|.
pub fn assembly_ladder_residual(
    part: XiPart,
    s: &Cx,
    l: i64,
    data: &GroupData,
    ctx: &PrecisionContext,
) -> Result<f64> {
    let p = ctx.work();
    let s = s.with_prec(p);
    let sl = s.add_i64(l);
    let a = log_xi_linf_factor(part, &s, l, data, ctx)?;
    let b = log_xi_linf_factor(part, &sl, l, data, ctx)?;
    match part {
        XiPart::I => Ok(rel_from_logs(&(a + selberg::log_xi_i(&sl, data, ctx)?), &b)),
        XiPart::Ell => Ok(rel_from_logs(&(a + selberg::log_xi_ell(&sl, data, ctx)?), &b)),
        XiPart::Par => {
            let lhs = &a.exp() * &selberg::xi_par(&sl, data, ctx)?;
            Ok(rel_diff(&b.exp(), &lhs))
        }
    }
}

/// One spectral parameter: real r_n, or i·y for a small eigenvalue.
#[derive(Debug, Clone, PartialEq)]
pub enum SpectralParam {
    Real(String),
    Imag(String),
}

impl SpectralParam {
    pub fn value(&self, prec: u32) -> Cx {
        match self {
            SpectralParam::Real(t) => Cx::real(parse_decimal(t, prec).expect("validated on load")),
            SpectralParam::Imag(t) => Cx::new(Float::new(prec), parse_decimal(t, prec).expect("validated on load")),
        }
    }
}

/// Spectral parameters r_n, λ_n = 1/4 + r_n².
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralList {
    pub entries: Vec<SpectralParam>,
    pub source: String,
}

impl SpectralList {
    pub fn empty() -> SpectralList {
        SpectralList { entries: Vec::new(), source: "empty".into() }
    }

    pub fn from_reals(values: &[f64]) -> SpectralList {
        let entries = values.iter().map(|v| SpectralParam::Real(format!("{v:?}"))).collect();
        SpectralList { entries, source: "synthetic".into() }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

fn parse_imag(body: &str) -> Option<String> {
    let b = body.replace(' ', "");
    if b == "i/2" {
        return Some("0.5".into());
    }
    let y = b.strip_prefix("i*").or_else(|| b.strip_suffix('i'))?;
    parse_decimal(y, 64)?;
    Some(y.to_string())
}

/// Parses a spectral list: one r_n per line, `i/2` (or `i*y`, `yi`) for
/// imaginary parameters, which must come first.
pub fn parse_spectral_list(text: &str, source: &str) -> Result<SpectralList> {
    let mut entries = Vec::new();
    let mut last_real: Option<f64> = None;
    for (line, body) in data_lines(text) {
        if body.contains('i') {
            let y = parse_imag(body).ok_or_else(|| Error::Parse { line, msg: format!("bad entry {body:?}") })?;
            let yf = parse_decimal(&y, 64).expect("checked").to_f64();
            if !(yf > 0.0 && yf <= 0.5) {
                return Err(Error::Parse { line, msg: "imaginary r must be i*y with 0 < y <= 1/2".into() });
            }
            if last_real.is_some() {
                return Err(Error::Parse { line, msg: "imaginary entries must precede real ones".into() });
            }
            entries.push(SpectralParam::Imag(y));
            continue;
        }
        let v = parse_decimal(body, 64)
            .filter(|v| v.is_finite())
            .ok_or_else(|| Error::Parse { line, msg: format!("not a number: {body:?}") })?
            .to_f64();
        if v <= 0.0 {
            return Err(Error::Parse { line, msg: "real r must be positive".into() });
        }
        if last_real.is_some_and(|prev| v <= prev) {
            return Err(Error::Monotonicity { line });
        }
        last_real = Some(v);
        entries.push(SpectralParam::Real(body.to_string()));
    }
    Ok(SpectralList { entries, source: source.to_string() })
}

pub const MAASS_G0_1: &str = include_str!("../data/maass_g0_1.txt");

/// r₀ = i/2 and the first four cusp-form parameters of PSL(2, Z).
pub fn bundled_maass_g0_1() -> SpectralList {
    parse_spectral_list(MAASS_G0_1, "maass_g0_1.txt").expect("bundled list is valid")
}

pub fn load_spectral_list(path: &Path) -> Result<SpectralList> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_spectral_list(&text, &path.display().to_string())
}

/// A truncated periodic product and a bound on the omitted factors' |1 - factor|.
#[derive(Debug, Clone)]
pub struct PeriodicProduct {
    pub value: Cx,
    pub used: usize,
    pub tail_bound: f64,
}

/// ∏ (1 - e^{(2πi/l)(1/2 + i r - s)}) over the given r. The first omitted
/// factor differs from 1 by at most e^{(2π/l)(Im s - r_last)}.
pub(crate) fn periodic_product(s: &Cx, l: i64, rs: &[Cx], ctx: &PrecisionContext) -> PeriodicProduct {
    let p = ctx.work();
    let s = s.with_prec(p);
    let two_pi_l = Float::with_val(p, pi(p) * 2u32) / l;
    let mut acc = Cx::one(p);
    for r in rs {
        let z = (r.mul_i() - &s).add_f64(0.5);
        let e = z.mul_i().scale(&two_pi_l).exp();
        acc = &acc * &(Cx::one(p) - e);
    }
    let tail_bound = match rs.last() {
        None => 0.0,
        Some(r) => (2.0 * std::f64::consts::PI * (s.im.to_f64() - r.re.to_f64()) / l as f64).exp(),
    };
    PeriodicProduct { value: acc, used: rs.len(), tail_bound }
}

/// Θ_{l∞}(s) = ∏_{n≥0} (1 - e^{(2πi/l)(1/2 + i r_n - s)}).
pub fn theta_linf(s: &Cx, l: i64, spectrum: &SpectralList, ctx: &PrecisionContext) -> Result<PeriodicProduct> {
    check_l(l)?;
    let rs: Vec<Cx> = spectrum.entries.iter().map(|e| e.value(ctx.work())).collect();
    Ok(periodic_product(s, l, &rs, ctx))
}

/// |(log Θ)'' by central differences + (π/l)² Σ sin^{-2}(π(s-1/2-ir_n)/l)|.
pub fn theta_second_logderiv_residual(s: &Cx, l: i64, spectrum: &SpectralList, ctx: &PrecisionContext) -> Result<f64> {
    check_l(l)?;
    let p = ctx.work();
    let s = s.with_prec(p);
    let rs: Vec<Cx> = spectrum.entries.iter().map(|e| e.value(p)).collect();
    let base = periodic_product(&s, l, &rs, ctx);
    if base.value.is_zero() {
        return Err(Error::Pole { order: 2 });
    }
    let used = &rs[..base.used];
    let h = Float::with_val(p, Float::i_exp(1, -(ctx.prec_bits as i32) / 3));
    let hc = Cx::real(h.clone());
    let plus = periodic_product(&(&s + &hc), l, used, ctx).value;
    let minus = periodic_product(&(&s - &hc), l, used, ctx).value;
    let fd = ((&plus / &base.value).ln() + (&minus / &base.value).ln())
        .scale(&Float::with_val(p, h.square_ref()).recip());
    let mut rhs = Cx::zero(p);
    for r in used {
        rhs -= csc2(&(s.add_f64(-0.5) - r.mul_i()), l);
    }
    Ok((fd - rhs).abs_f64())
}

fn push_terms(d: &mut Divisor, label: &'static str, scale: Q, terms: &[GammaTerm], shift: Q) {
    for t in terms {
        let atom = Atom::Gamma { level: t.level, a: t.a, b: t.b + t.a * shift };
        d.push(label, scale * t.exp, atom);
    }
}

/// Divisor of Ξ_{l∞,hyp} = Ξ_{l∞} Ξ_{l∞,I}^{-1} Ξ_{l∞,ell}^{-1} Ξ_{l∞,par}^{-1}
/// at real points, with Ξ_{l∞} = ∏_{m≥1} Ξ(s+lm)^{-1} through λ₀ = 0 only.
pub fn higher_hyp_divisor(data: &GroupData, l: i64) -> Result<Divisor> {
    check_l(l)?;
    let k0 = data.kappa0()?;
    let mut d = Divisor::default();
    d.push("xi_linf", q(1, 1), Atom::XiInf { l });
    let zero = q(0, 1);
    push_terms(&mut d, "xi_linf_I", -q(data.index as i64, 6), &gamma_terms(Kind::F, l), zero);
    push_terms(&mut d, "xi_linf_ell", q(-(data.nu2 as i64), 2), &gamma_terms(Kind::G, l), zero);
    push_terms(&mut d, "xi_linf_ell", q(-2 * data.nu3 as i64, 3), &gamma_terms(Kind::H, l), zero);
    let kappa = data.kappa as i64;
    let e = (kappa - k0) / 2;
    let par_gamma = Atom::Gamma { level: MultiGammaOrder::Gamma, a: q(1, l), b: q(2 * l - 1, 2 * l) };
    d.push("xi_linf_par", q(-e, 1), par_gamma);
    let iterms = gamma_terms(Kind::I, l);
    push_terms(&mut d, "xi_linf_par", q(-kappa, 1), &iterms, q(1, 2));
    push_terms(&mut d, "xi_linf_par", q(-kappa, 1), &iterms, zero);
    for chi in data.characters() {
        let atom = Atom::LInf { chi: chi.clone(), a: q(2, 1), b: zero, step: 2 * l };
        d.push("xi_linf_par", q(-1, 1), atom);
    }
    Ok(d)
}

pub fn catalog_higher(data: &GroupData, l: i64, s_min: Q, s_max: Q) -> Result<Vec<DivisorEntry>> {
    let mut out = higher_hyp_divisor(data, l)?.catalog(s_min, s_max)?;
    let mut seen = Vec::new();
    for chi in data.characters() {
        let tag = selberg::char_tag(chi);
        if !seen.contains(&tag) {
            seen.push(tag.clone());
            out.push(DivisorEntry::family(FamilyTag::NontrivialLHalf { chi: tag, step: l, m_min: 1 }, -1));
        }
    }
    out.push(DivisorEntry::family(FamilyTag::Spectral { step: l, m_min: 1, n_min: 1 }, -1));
    Ok(out)
}
