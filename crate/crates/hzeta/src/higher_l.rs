//! Higher Dirichlet L-functions L_{l∞}(s, χ) = ∏_{m≥1} L(s+lm, χ), the
//! factor J_l, the completed ξ_{l∞}, the periodic θ_{l∞}, the Weil explicit
//! formula for the test function g and the functional-equation residual.

use num_complex::Complex64;
use rug::Float;

use crate::ctx::PrecisionContext;
use crate::cx::{pi, rel_from_logs, Cx};
use crate::dirichlet::{dirichlet_l, xi_complete, DirichletCharacter, ZeroList};
use crate::error::{Error, Result};
use crate::higher::{self, affine, gamma_terms, Kind, PeriodicProduct};
use crate::multigamma::log_gamma2_d2;
use crate::numcore::arith::{primes_up_to, von_mangoldt};
use crate::numcore::{digamma, log_gamma};

#[derive(Debug, Clone)]
pub struct HigherLContext {
    pub l: i64,
    pub chi: DirichletCharacter,
    pub zeros: ZeroList,
    pub prime_cut: u64,
    pub zero_height_cut: f64,
}

impl HigherLContext {
    /// Prime powers up to 10⁶ and every zero in the list.
    pub fn new(l: i64, chi: DirichletCharacter, zeros: ZeroList) -> Result<HigherLContext> {
        let cut = zeros.approx().last().copied().unwrap_or(0.0);
        HigherLContext::with_cuts(l, chi, zeros, 1_000_000, cut)
    }

    pub fn with_cuts(
        l: i64,
        chi: DirichletCharacter,
        zeros: ZeroList,
        prime_cut: u64,
        zero_height_cut: f64,
    ) -> Result<HigherLContext> {
        if l < 1 {
            return Err(Error::Domain(format!("l must be positive, got {l}")));
        }
        if prime_cut < 2 {
            return Err(Error::Domain("prime_cut must be at least 2".into()));
        }
        let top = zeros.approx().last().copied().unwrap_or(0.0);
        if zero_height_cut > top && !zeros.is_empty() {
            return Err(Error::Domain(format!("zero_height_cut {zero_height_cut} exceeds the last ordinate {top}")));
        }
        if zeros.character.conductor() != chi.conductor() || zeros.character.primitive() != chi.primitive() {
            return Err(Error::Domain("zero list belongs to a different character".into()));
        }
        Ok(HigherLContext { l, chi, zeros, prime_cut, zero_height_cut })
    }

    fn used_zeros(&self) -> ZeroList {
        self.zeros.truncated(self.zero_height_cut)
    }
}

fn need_primitive(chi: &DirichletCharacter) -> Result<()> {
    if chi.is_primitive() || chi.modulus() == 1 {
        Ok(())
    } else {
        Err(Error::NotPrimitive)
    }
}

/// Σ_{m≥1} log L(s+lm, χ), stopping once the remaining terms are below 2^{-prec}.
pub fn log_l_linf(s: &Cx, l: i64, chi: &DirichletCharacter, ctx: &PrecisionContext) -> Result<Cx> {
    if l < 1 {
        return Err(Error::Domain(format!("l must be positive, got {l}")));
    }
    let p = ctx.work();
    let s = s.with_prec(p);
    let mut acc = Cx::zero(p);
    for m in 1.. {
        let u = s.add_i64(l * m);
        if chi.is_principal() && u.add_i64(-1).is_zero() {
            return Err(Error::PoleAtOne);
        }
        if u.re.to_f64() >= TAIL_SIGMA {
            return Ok(acc + log_l_tail(&u, l, chi, p));
        }
        acc += dirichlet_l(&u, chi, ctx)?.ln();
    }
    unreachable!()
}

const TAIL_SIGMA: f64 = 32.0;

/// Σ_{m≥0} log L(u+lm, χ) for Re u ≥ 32, as Σ_{p^k} χ(p^k)/k · p^{-ku}/(1-p^{-kl}).
fn log_l_tail(u: &Cx, l: i64, chi: &DirichletCharacter, p: u32) -> Cx {
    let sigma = u.re.to_f64();
    // Σ_{n>X} n^{-σ}/(1-2^{-l}) ≤ 2X^{1-σ}/(σ-1)
    let x = (2u64..)
        .find(|&n| (1.0 - sigma) * (n as f64).log2() + 1.0 - (sigma - 1.0).log2() < -(p as f64) - 2.0)
        .unwrap();
    let mut acc = Cx::zero(p);
    for q in primes_up_to(x) {
        if chi.angle(q).is_none() {
            continue;
        }
        let mut n = q;
        let mut k = 1i64;
        while n <= x {
            let ln = Float::with_val(p, n).ln();
            let geo = Float::with_val(p, 1u32 - Float::with_val(p, &ln * -l).exp());
            let t = u.scale(&ln).neg_ref().exp().scale(&geo.recip());
            acc += (&chi.value(n, p) * &t).div_i64(k);
            n = match n.checked_mul(q) {
                Some(v) => v,
                None => break,
            };
            k += 1;
        }
    }
    acc
}

pub fn l_linf(s: &Cx, hctx: &HigherLContext, ctx: &PrecisionContext) -> Result<Cx> {
    Ok(log_l_linf(s, hctx.l, &hctx.chi, ctx)?.exp())
}

/// |L_{l∞}(s) / (L(s+l) L_{l∞}(s+l)) - 1|.
pub fn l_linf_ladder_residual(s: &Cx, l: i64, chi: &DirichletCharacter, ctx: &PrecisionContext) -> Result<f64> {
    let a = log_l_linf(s, l, chi, ctx)?;
    let sl = s.with_prec(ctx.work()).add_i64(l);
    let b = dirichlet_l(&sl, chi, ctx)?.ln() + log_l_linf(&sl, l, chi, ctx)?;
    Ok(rel_from_logs(&a, &b))
}

/// log J_l(s) = -(s/l) log k₁(l) - s(s+l)/(4l) log l + Σ_r [log Γ₂((s+2r+l)/(2l)) + log Γ₂((s+2r+2l)/(2l))].
pub fn log_j_l(s: &Cx, l: i64, ctx: &PrecisionContext) -> Result<Cx> {
    higher::log_factor(Kind::J, s, l, ctx)
}

pub fn j_l(s: &Cx, l: i64, ctx: &PrecisionContext) -> Result<Cx> {
    Ok(log_j_l(s, l, ctx)?.exp())
}

/// |J_l(s)/J_l(s-l) · Γ(s/2) - 1|.
pub fn j_l_ladder_residual(s: &Cx, l: i64, ctx: &PrecisionContext) -> Result<f64> {
    higher::ladder_residual_kind(Kind::J, s, l, ctx)
}

/// d²/dx² log J_l(x).
fn log_j_l_d2(x: &Cx, l: i64, ctx: &PrecisionContext) -> Result<Cx> {
    let p = ctx.work();
    let ln_l = Float::with_val(p, l).ln();
    let mut acc = Cx::zero(p);
    for t in gamma_terms(Kind::J, l) {
        acc += log_gamma2_d2(&affine(x, t.a, t.b), ctx)?;
    }
    Ok(acc.div_i64(4 * l * l) - Cx::real(ln_l).div_i64(2 * l))
}

pub fn log_xi_linf_l(s: &Cx, l: i64, chi: &DirichletCharacter, ctx: &PrecisionContext) -> Result<Cx> {
    need_primitive(chi)?;
    let p = ctx.work();
    let s = s.with_prec(p);
    let q = chi.modulus();
    let v = chi.parity() as i64;
    let mut acc = Cx::zero(p);
    if chi.is_principal() {
        let ln_l = Float::with_val(p, l).ln();
        acc -= s.scale(&ln_l).scale_i64(2).div_i64(l);
        acc -= log_gamma(&s.add_i64(l).div_i64(l), ctx)?;
        acc -= log_gamma(&s.add_i64(l - 1).div_i64(l), ctx)?;
    }
    let lpq = Float::with_val(p, pi(p) / Float::with_val(p, q)).ln();
    acc += (&s * &s.add_i64(l)).scale(&lpq).div_i64(4 * l);
    acc += log_j_l(&s.add_i64(v), l, ctx)?;
    acc += log_l_linf(&s, l, chi, ctx)?;
    Ok(acc)
}

pub fn xi_linf_l(s: &Cx, hctx: &HigherLContext, ctx: &PrecisionContext) -> Result<Cx> {
    Ok(log_xi_linf_l(s, hctx.l, &hctx.chi, ctx)?.exp())
}

/// |ξ_{l∞}(s) - ξ(s+l) ξ_{l∞}(s+l)| relative to ξ_{l∞}(s).
pub fn xi_linf_ladder_residual(s: &Cx, l: i64, chi: &DirichletCharacter, ctx: &PrecisionContext) -> Result<f64> {
    let a = log_xi_linf_l(s, l, chi, ctx)?;
    let sl = s.with_prec(ctx.work()).add_i64(l);
    let b = xi_complete(&sl, chi, ctx)?.ln() + log_xi_linf_l(&sl, l, chi, ctx)?;
    Ok(rel_from_logs(&a, &b))
}

fn zero_ordinates(zeros: &ZeroList, prec: u32) -> Vec<Cx> {
    (0..zeros.len()).map(|n| Cx::real(zeros.ordinate(n, prec))).collect()
}

/// θ_{l∞}(s, χ) = ∏_{n≥1} (1 - e^{(2πi/l)(ρ_n - s)}) over the listed zeros ρ_n = 1/2 + i t_n.
pub fn theta_linf_l_product(s: &Cx, hctx: &HigherLContext, ctx: &PrecisionContext) -> PeriodicProduct {
    let ts = zero_ordinates(&hctx.used_zeros(), ctx.work());
    higher::periodic_product(s, hctx.l, &ts, ctx)
}

pub fn theta_linf_l(s: &Cx, hctx: &HigherLContext, ctx: &PrecisionContext) -> Cx {
    theta_linf_l_product(s, hctx, ctx).value
}

/// |θ(s) - θ(s+l)| relative to θ(s).
pub fn theta_periodicity_residual(s: &Cx, hctx: &HigherLContext, ctx: &PrecisionContext) -> f64 {
    let a = theta_linf_l(s, hctx, ctx);
    let b = theta_linf_l(&s.add_i64(hctx.l), hctx, ctx);
    crate::cx::rel_diff(&a, &b)
}

/// Terms of the explicit formula for g at a given s.
#[derive(Debug, Clone)]
pub struct WeilReport {
    /// Σ_{t_n ≤ cut} [φ_s(t_n) + φ_s(-t_n)].
    pub zero_side: Complex64,
    /// δ_χ [φ_s(i/2) + φ_s(-i/2)].
    pub delta: Complex64,
    /// -(log J_l)''(s+v) - (1/2l) ψ((s+v+l/2)/2).
    pub archimedean: Complex64,
    /// -Σ_{p^n ≤ cut} (log p / p^{n/2}) χ(p)^n F(-n log p).
    pub prime_side: Complex64,
    /// Same truncation, written as -Σ χΛ log n n^{-s}/(n^l - 1) + (1/l) Σ χΛ n^{-s-l/2}.
    pub prime_series: Complex64,
    pub residual: f64,
    /// Rough size of the omitted zeros, Σ_{t > cut} |h(t)| ~ (log T/2π) T^{-2}.
    pub zero_tail: f64,
}

fn to_c64(z: &Cx) -> Complex64 {
    let (a, b) = z.to_f64();
    Complex64::new(a, b)
}

fn chi_f64(chi: &DirichletCharacter, n: u64) -> Complex64 {
    match chi.turns(n) {
        None => Complex64::new(0.0, 0.0),
        Some((a, d)) => Complex64::from_polar(1.0, std::f64::consts::TAU * a as f64 / d as f64),
    }
}

/// -Σ (log p / N^{1/2}) χ(N) F(-log N) over prime powers N ≤ cut, with
/// F(-x) = x e^{-cx}/(2 sinh(lx/2)) - e^{-cx}/l.
fn prime_side(s: Complex64, l: i64, chi: &DirichletCharacter, cut: u64) -> Complex64 {
    let lf = l as f64;
    let c = s + (lf / 2.0 - 0.5);
    let mut acc = Complex64::new(0.0, 0.0);
    for p in primes_up_to(cut) {
        let lp = (p as f64).ln();
        let mut n = p;
        let mut k = 1.0;
        loop {
            let x = k * lp;
            let f = (-c * x).exp() * (x / (2.0 * (lf * x / 2.0).sinh()) - 1.0 / lf);
            acc -= chi_f64(chi, n) * f * (lp / (x / 2.0).exp());
            match n.checked_mul(p) {
                Some(m) if m <= cut => n = m,
                _ => break,
            }
            k += 1.0;
        }
    }
    acc
}

fn prime_series(s: Complex64, l: i64, chi: &DirichletCharacter, cut: u64) -> Complex64 {
    let lf = l as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for n in 2..=cut {
        let lam = von_mangoldt(n);
        if lam == 0.0 {
            continue;
        }
        let ln = (n as f64).ln();
        let w = chi_f64(chi, n) * lam;
        acc -= w * ln * (-s * ln).exp() / ((lf * ln).exp() - 1.0);
        acc += w * (-(s + lf / 2.0) * ln).exp() / lf;
    }
    acc
}

pub fn weil_report(s: &Cx, hctx: &HigherLContext, ctx: &PrecisionContext) -> Result<WeilReport> {
    let l = hctx.l;
    let chi = &hctx.chi;
    need_primitive(chi)?;
    if s.re.to_f64() <= (1 - l) as f64 {
        return Err(Error::Domain(format!("explicit formula needs Re s > {}", 1 - l)));
    }
    let p = ctx.work();
    let s = s.with_prec(p);
    let zeros = hctx.used_zeros();
    let mut zero_side = Cx::zero(p);
    for n in 0..zeros.len() {
        zero_side += higher::h_transform(&s, &Cx::real(zeros.ordinate(n, p)), l, ctx)?;
    }
    let delta = if chi.is_principal() {
        higher::h_transform(&s, &Cx::ratio(p, 1, 2).mul_i(), l, ctx)?
    } else {
        Cx::zero(p)
    };
    let x = s.add_i64(chi.parity() as i64);
    let psi = digamma(&x.add_f64(l as f64 / 2.0).div_i64(2), ctx)?;
    let arch = log_j_l_d2(&x, l, ctx)?.neg_ref() - psi.div_i64(2 * l);
    let sf = to_c64(&s);
    let ps = prime_side(sf, l, chi, hctx.prime_cut);
    let series = prime_series(sf, l, chi, hctx.prime_cut);
    let zs = to_c64(&zero_side);
    let rhs = to_c64(&delta) + to_c64(&arch) + ps;
    let t = zeros.approx().last().copied().unwrap_or(1.0).max(2.0 * std::f64::consts::PI);
    Ok(WeilReport {
        zero_side: zs,
        delta: to_c64(&delta),
        archimedean: to_c64(&arch),
        prime_side: ps,
        prime_series: series,
        residual: (zs - rhs).norm(),
        zero_tail: (t / (2.0 * std::f64::consts::PI)).ln() / (t * t),
    })
}

pub fn weil_residual(s: &Cx, hctx: &HigherLContext, ctx: &PrecisionContext) -> Result<f64> {
    Ok(weil_report(s, hctx, ctx)?.residual)
}

/// -(log L_{l∞})''(s) - (1/l)(log L)'(s + l/2) by central differences of the
/// analytic functions; the untruncated value of the prime side.
pub fn prime_side_analytic(s: &Cx, l: i64, chi: &DirichletCharacter, ctx: &PrecisionContext) -> Result<Complex64> {
    let p = ctx.work();
    let s = s.with_prec(p);
    let h = Cx::real(Float::with_val(p, Float::i_exp(1, -(ctx.prec_bits as i32) / 3)));
    let f0 = log_l_linf(&s, l, chi, ctx)?;
    let fp = log_l_linf(&(&s + &h), l, chi, ctx)?;
    let fm = log_l_linf(&(&s - &h), l, chi, ctx)?;
    let h2 = h.sqr();
    let d2 = (&(fp + fm) - &f0.scale_i64(2)) / &h2;
    let sh = s.add_f64(l as f64 / 2.0);
    let gp = dirichlet_l(&(&sh + &h), chi, ctx)?.ln();
    let gm = dirichlet_l(&(&sh - &h), chi, ctx)?.ln();
    let d1 = (gp - gm) / &h.scale_i64(2);
    Ok(to_c64(&(d2.neg_ref() - d1.div_i64(l))))
}

/// |φ_s(i/2) + φ_s(-i/2) - [-(d²/ds²) log{l^{-2s/l} Γ((s+l)/l)^{-1} Γ((s+l-1)/l)^{-1}}
/// - (1/l)(d/ds) log((s+l/2)(s+l/2-1))]| with both derivatives by central differences.
pub fn delta_term_residual(s: &Cx, l: i64, ctx: &PrecisionContext) -> Result<f64> {
    let p = ctx.work();
    let s = s.with_prec(p);
    let lhs = higher::h_transform(&s, &Cx::ratio(p, 1, 2).mul_i(), l, ctx)?;
    let ln_l = Float::with_val(p, l).ln();
    let big = |z: &Cx| -> Result<Cx> {
        let g = log_gamma(&z.add_i64(l).div_i64(l), ctx)? + log_gamma(&z.add_i64(l - 1).div_i64(l), ctx)?;
        Ok(z.scale(&ln_l).scale_i64(-2).div_i64(l) - g)
    };
    let small = |z: &Cx| -> Cx {
        let a = z.add_f64(l as f64 / 2.0);
        (&a * &a.add_i64(-1)).ln()
    };
    let h = Cx::real(Float::with_val(p, Float::i_exp(1, -(ctx.prec_bits as i32) / 3)));
    let (sp, sm) = (&s + &h, &s - &h);
    let h2 = h.sqr();
    let d2 = (&(big(&sp)? + big(&sm)?) - &big(&s)?.scale_i64(2)) / &h2;
    let d1 = (small(&sp) - small(&sm)) / &h.scale_i64(2);
    let rhs = d2.neg_ref() - d1.div_i64(l);
    Ok((lhs - rhs).abs_f64())
}

/// log hat ξ_{l∞}(s, χ) + log hat ξ_{l∞}(1-l-s, conj χ) with hat ξ = θ^{-1} ξ_{l∞},
/// and the larger of the two θ tail bounds.
fn log_fe_product(s: &Cx, hctx: &HigherLContext, conj: &HigherLContext, ctx: &PrecisionContext) -> Result<(Cx, f64)> {
    let l = hctx.l;
    let p = ctx.work();
    let t = Cx::one(p).add_i64(-l) - s;
    let th1 = theta_linf_l_product(s, hctx, ctx);
    let th2 = theta_linf_l_product(&t, conj, ctx);
    let v = log_xi_linf_l(s, l, &hctx.chi, ctx)? + log_xi_linf_l(&t, l, &conj.chi, ctx)?
        - th1.value.ln()
        - th2.value.ln();
    Ok((v, th1.tail_bound.max(th2.tail_bound)))
}

/// d with its imaginary part reduced to (-π, π].
fn wrap(d: Cx) -> Cx {
    let p = d.prec();
    let k = (d.im.to_f64() / std::f64::consts::TAU).round();
    if k == 0.0 {
        return d;
    }
    let mut out = d;
    out.im -= pi(p) * (2.0 * k);
    out
}

fn conj_context(hctx: &HigherLContext) -> HigherLContext {
    let mut c = hctx.clone();
    c.chi = hctx.chi.conj();
    c.zeros.character = c.chi.clone();
    c
}

/// Largest second central difference (step 10⁻³, directions 1, i, (1±i)/√2)
/// of log[hat ξ(s,χ) hat ξ(1-l-s, conj χ)], and the tolerance
/// max(tol_trunc, 10 × θ tail bound).
pub fn functional_eq_l_residual(s: &Cx, hctx: &HigherLContext, ctx: &PrecisionContext) -> Result<(f64, f64)> {
    need_primitive(&hctx.chi)?;
    if !hctx.chi.is_real() {
        return Err(Error::Unsupported("complex characters need the zero list of conj χ".into()));
    }
    let conj = conj_context(hctx);
    let p = ctx.work();
    let s = s.with_prec(p);
    let (f0, tail) = log_fe_product(&s, hctx, &conj, ctx)?;
    let r = Float::with_val(p, 0.5f64).sqrt();
    let dirs = [
        Cx::one(p),
        Cx::i(p),
        Cx::new(r.clone(), r.clone()),
        Cx::new(r.clone(), -r),
    ];
    let h = Float::with_val(p, 1e-3f64);
    let h2 = Float::with_val(p, h.square_ref());
    let mut worst = 0.0f64;
    for d in &dirs {
        let step = d.scale(&h);
        let (fp, _) = log_fe_product(&(&s + &step), hctx, &conj, ctx)?;
        let (fm, _) = log_fe_product(&(&s - &step), hctx, &conj, ctx)?;
        let dd = (wrap(fp - &f0) + wrap(fm - &f0)).scale(&Float::with_val(p, h2.recip_ref()));
        worst = worst.max(dd.abs_f64());
    }
    Ok((worst, ctx.tol_trunc.max(10.0 * tail)))
}

/// Least-squares line through log[hat ξ(s) hat ξ(1-l-s)] at 5 points of [s0, s1].
#[derive(Debug, Clone)]
pub struct AffineFit {
    /// Slope estimate of a_{l∞}(χ).
    pub a: Complex64,
    /// Intercept estimate of b_{l∞}(χ), defined modulo 2πi.
    pub b: Complex64,
    pub max_deviation: f64,
    pub tail_bound: f64,
}

pub fn affine_fit(s0: &Cx, s1: &Cx, hctx: &HigherLContext, ctx: &PrecisionContext) -> Result<AffineFit> {
    need_primitive(&hctx.chi)?;
    if !hctx.chi.is_real() {
        return Err(Error::Unsupported("complex characters need the zero list of conj χ".into()));
    }
    let conj = conj_context(hctx);
    let p = ctx.work();
    let (s0, s1) = (s0.with_prec(p), s1.with_prec(p));
    let span = &s1 - &s0;
    let mut ts = Vec::new();
    let mut ys: Vec<Complex64> = Vec::new();
    let mut prev: Option<Cx> = None;
    let mut tail = 0.0f64;
    for k in 0..5 {
        let s = &s0 + &span.scale_i64(k).div_i64(4);
        let (v, tb) = log_fe_product(&s, hctx, &conj, ctx)?;
        tail = tail.max(tb);
        let v = match &prev {
            None => v,
            Some(pv) => pv + &wrap(v - pv),
        };
        ys.push(to_c64(&v));
        ts.push(k as f64 / 4.0);
        prev = Some(v);
    }
    let n = ts.len() as f64;
    let tm = ts.iter().sum::<f64>() / n;
    let ym = ys.iter().sum::<Complex64>() / n;
    let sxx: f64 = ts.iter().map(|t| (t - tm) * (t - tm)).sum();
    let sxy: Complex64 = ts.iter().zip(&ys).map(|(t, y)| (y - ym) * (t - tm)).sum();
    let alpha = sxy / sxx;
    let beta = ym - alpha * tm;
    let max_deviation = ts.iter().zip(&ys).map(|(t, y)| (y - (alpha * t + beta)).norm()).fold(0.0, f64::max);
    let span64 = to_c64(&span);
    let a = alpha / span64;
    let b = beta - a * to_c64(&s0);
    Ok(AffineFit { a, b, max_deviation, tail_bound: tail })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dirichlet::{bundled_mod4_zeros, bundled_zeta_zeros, enumerate_characters};

    fn ctx() -> PrecisionContext {
        PrecisionContext::default()
    }

    #[test]
    fn l_linf_ladder_and_limit() {
        let ctx = ctx();
        let p = ctx.work();
        let z = DirichletCharacter::principal(1);
        let r = l_linf_ladder_residual(&Cx::from_f64(p, 0.3, 0.0), 1, &z, &ctx).unwrap();
        assert!(r < ctx.tol_closed, "{r}");
        let big = log_l_linf(&Cx::from_i64(p, 300), 1, &z, &ctx).unwrap();
        assert!(big.abs_f64() < 1e-60);
        assert_eq!(log_l_linf(&Cx::from_i64(p, -1), 2, &z, &ctx).unwrap_err(), Error::PoleAtOne);
    }

    #[test]
    fn l_linf_vs_euler_double_product() {
        // ∏_{m≥1} L(1+2m, χ₄) = ∏_p ∏_m (1 - χ(p) p^{-1-2m})^{-1}
        let ctx = ctx();
        let p = ctx.work();
        let chi = enumerate_characters(4)[1].clone();
        let v = log_l_linf(&Cx::one(p), 2, &chi, &ctx).unwrap().re.to_f64();
        let mut brute = 0.0f64;
        for pr in primes_up_to(10_000) {
            let c = chi_f64(&chi, pr).re;
            for m in 1..=40 {
                brute -= (-c * (pr as f64).powi(-1 - 2 * m)).ln_1p();
            }
        }
        assert!((v - brute).abs() < 1e-9, "{v} {brute}");
    }

    #[test]
    fn j_l_values() {
        let ctx = ctx();
        let p = ctx.work();
        let d = log_j_l(&Cx::from_i64(p, 3), 1, &ctx).unwrap() - log_j_l(&Cx::from_i64(p, 2), 1, &ctx).unwrap();
        let want = Float::with_val(p, 2) / pi(p).sqrt();
        assert!((d.exp() - Cx::real(want)).abs_f64() < 1e-50);
        let r = j_l_ladder_residual(&Cx::from_f64(p, 1.0, 1.0), 2, &ctx).unwrap();
        assert!(r < ctx.tol_closed);
    }

    #[test]
    fn xi_linf_ladder_and_zero() {
        let ctx = ctx();
        let p = ctx.work();
        let z = DirichletCharacter::principal(1);
        let r = xi_linf_ladder_residual(&Cx::from_f64(p, 0.4, 0.0), 1, &z, &ctx).unwrap();
        assert!(r < ctx.tol_closed, "{r}");
        let chi4 = enumerate_characters(4)[1].clone();
        let r = xi_linf_ladder_residual(&Cx::from_f64(p, 0.2, 1.0), 2, &chi4, &ctx).unwrap();
        assert!(r < ctx.tol_closed, "{r}");
        let zeros = bundled_zeta_zeros();
        let rho = Cx::new(Float::with_val(p, 0.5f64), zeros.ordinate(0, p));
        let v = log_xi_linf_l(&rho.add_i64(-1), 1, &z, &ctx).unwrap();
        assert!(v.re.to_f64() < (1e-6f64).ln());
    }

    #[test]
    fn theta_tail_and_period() {
        let ctx = ctx();
        let p = ctx.work();
        let h = HigherLContext::new(4, DirichletCharacter::principal(1), bundled_zeta_zeros()).unwrap();
        let t = theta_linf_l_product(&Cx::from_f64(p, 0.3, 0.0), &h, &ctx);
        assert_eq!(t.used, 100);
        assert!(t.tail_bound < 1e-160);
        let h1 = HigherLContext::new(1, DirichletCharacter::principal(1), bundled_zeta_zeros()).unwrap();
        assert!(theta_periodicity_residual(&Cx::from_f64(p, 0.2, 0.7), &h1, &ctx) < ctx.tol_closed);
        let t1 = Cx::new(Float::with_val(p, 0.5f64), h1.zeros.ordinate(0, p));
        assert!(theta_linf_l(&t1, &h1, &ctx).abs_f64() < ctx.tol_closed);
    }

    #[test]
    fn weil_principal() {
        let ctx = ctx();
        let p = ctx.work();
        let h = HigherLContext::new(1, DirichletCharacter::principal(1), bundled_zeta_zeros()).unwrap();
        let rep = weil_report(&Cx::from_f64(p, 1.5, 0.0), &h, &ctx).unwrap();
        assert!(rep.residual < 1e-3, "{rep:?}");
        assert!((rep.prime_side - rep.prime_series).norm() < 1e-9);
        let an = prime_side_analytic(&Cx::from_f64(p, 1.5, 0.0), 1, &h.chi, &ctx).unwrap();
        assert!((an - rep.prime_side).norm() < 1e-5, "{an} {}", rep.prime_side);
    }

    #[test]
    fn weil_mod4() {
        let ctx = ctx();
        let p = ctx.work();
        let z = bundled_mod4_zeros();
        let h = HigherLContext::new(1, z.character.clone(), z).unwrap();
        let rep = weil_report(&Cx::from_f64(p, 1.5, 0.0), &h, &ctx).unwrap();
        assert_eq!(rep.delta, Complex64::new(0.0, 0.0));
        assert!(rep.residual < 1e-3, "{rep:?}");
    }

    #[test]
    fn delta_term() {
        let ctx = ctx();
        let p = ctx.work();
        for l in [1, 2, 3] {
            let r = delta_term_residual(&Cx::from_f64(p, 0.7, 0.3), l, &ctx).unwrap();
            assert!(r < ctx.tol_quad, "{r}");
        }
    }

    #[test]
    fn functional_equation() {
        let ctx = ctx();
        let p = ctx.work();
        let h = HigherLContext::new(1, DirichletCharacter::principal(1), bundled_zeta_zeros()).unwrap();
        let (r, tol) = functional_eq_l_residual(&Cx::from_f64(p, 0.3, 0.2), &h, &ctx).unwrap();
        assert!(r <= tol, "{r}");
        let h2 = HigherLContext::new(2, DirichletCharacter::principal(1), bundled_zeta_zeros()).unwrap();
        let (r, tol) = functional_eq_l_residual(&Cx::from_f64(p, -0.2, 0.0), &h2, &ctx).unwrap();
        assert!(r <= tol, "{r}");
        let fit = affine_fit(&Cx::from_f64(p, -0.3, 0.1), &Cx::from_f64(p, 0.4, 0.3), &h, &ctx).unwrap();
        assert!(fit.max_deviation < 1e-3, "{fit:?}");
    }
}
