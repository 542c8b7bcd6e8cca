//! Hurwitz zeta by Euler-Maclaurin summation.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rug::Float;

use super::bernoulli::em_coeffs;
use crate::ctx::PrecisionContext;
use crate::cx::Cx;
use crate::error::{Error, Result};

/// ζ(s, a) for complex s and real a > 0.
pub fn hurwitz_zeta(s: &Cx, a: &Float, ctx: &PrecisionContext) -> Result<Cx> {
    if s.add_i64(-1).abs_f64() <= ctx.tol_closed {
        return Err(Error::PoleAtOne);
    }
    hurwitz_impl(s, a, false, ctx)
}

/// ζ(s, a) - 1/(s-1), entire in s; equals -ψ(a) at s = 1.
pub fn hurwitz_zeta_reg(s: &Cx, a: &Float, ctx: &PrecisionContext) -> Result<Cx> {
    hurwitz_impl(s, a, true, ctx)
}

fn hurwitz_impl(s: &Cx, a: &Float, regularized: bool, ctx: &PrecisionContext) -> Result<Cx> {
    let p = ctx.work();
    if *a <= 0 {
        return Err(Error::Domain("hurwitz_zeta needs a > 0".into()));
    }
    let s = s.with_prec(p);
    let sm1 = s.add_i64(-1);
    let a = Float::with_val(p, a);
    let target = ctx.em_shift() + s.abs_f64();
    let n_shift = (target - a.to_f64()).ceil().max(0.0) as u64;

    let real_s = s.is_real();
    let mut acc = Cx::zero(p);
    for n in 0..n_shift {
        let x = Float::with_val(p, &a + n);
        acc += pow_neg(&x, &s, real_s);
    }

    let b = Float::with_val(p, &a + n_shift);
    let bs = pow_neg(&b, &s, real_s);
    // b^{1-s}/(s-1) + b^{-s}/2
    if regularized {
        acc += pole_term_reg(&b, &sm1);
    } else {
        acc += bs.scale(&b) / &sm1;
    }
    acc += bs.div_i64(2);

    let c = em_coeffs(p);
    let binv = Float::with_val(p, 1 / &b);
    let binv2 = Float::with_val(p, binv.square_ref());
    let mut bpow = binv;
    let mut poch = s.clone();
    let eps = Float::with_val(p, Float::i_exp(1, -(p as i32) - 4));
    for (k, ck) in c.iter().enumerate() {
        let term = (&poch * &bs).scale(&Float::with_val(p, ck * &bpow));
        let small = term.abs() < Float::with_val(p, &eps * &acc.abs());
        acc += term;
        if small {
            break;
        }
        let k2 = 2 * (k as i64 + 1);
        poch = &(&poch * &s.add_i64(k2 - 1)) * &s.add_i64(k2);
        bpow *= &binv2;
    }
    Ok(acc)
}

/// (b^{1-s} - 1)/(s-1) = -ln b · (e^u - 1)/u with u = (1-s) ln b.
fn pole_term_reg(b: &Float, sm1: &Cx) -> Cx {
    let p = sm1.prec();
    let lb = Float::with_val(p, b.ln_ref());
    let u = sm1.scale(&lb).neg_ref();
    let ratio = if u.abs_f64() > 0.5 {
        (u.exp() - Cx::one(p)) / &u
    } else {
        // Σ u^k/(k+1)!
        let mut acc = Cx::one(p);
        let mut term = Cx::one(p);
        let eps = Float::with_val(p, Float::i_exp(1, -(p as i32) - 4));
        for k in 1..2000 {
            term = (&term * &u).div_i64(k + 1);
            acc += &term;
            if term.abs() < eps {
                break;
            }
        }
        acc
    };
    ratio.scale(&lb).neg_ref()
}

/// x^{-s} for real x > 0.
fn pow_neg(x: &Float, s: &Cx, real_s: bool) -> Cx {
    let p = s.prec();
    let lx = Float::with_val(p, x.ln_ref());
    if real_s {
        let e = Float::with_val(p, -(Float::with_val(p, &s.re * &lx)));
        return Cx::real(e.exp());
    }
    Cx::new(
        Float::with_val(p, -(Float::with_val(p, &s.re * &lx))),
        Float::with_val(p, -(Float::with_val(p, &s.im * &lx))),
    )
    .exp()
}

pub fn riemann_zeta(s: &Cx, ctx: &PrecisionContext) -> Result<Cx> {
    hurwitz_zeta(s, &Float::with_val(ctx.work(), 1), ctx)
}

type TableCache = Mutex<HashMap<(u64, usize, u32), Arc<Vec<Float>>>>;

/// `t[j] = ζ(j, a)` for integer a >= 1 and 2 <= j <= jmax (t[0], t[1] unused).
///
/// Shared by the Weierstrass-product tails of Γ₂ and Γ₃, which always ask for
/// the same handful of cutoffs.
pub fn hurwitz_int_table(a: u64, jmax: usize, ctx: &PrecisionContext) -> Arc<Vec<Float>> {
    static C: OnceLock<TableCache> = OnceLock::new();
    let p = ctx.work();
    let key = (a, jmax, p);
    let cache = C.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = cache.lock().expect("cache poisoned").get(&key) {
        return t.clone();
    }
    let t = Arc::new(build_int_table(a, jmax, ctx));
    cache.lock().expect("cache poisoned").entry(key).or_insert(t).clone()
}

fn build_int_table(a: u64, jmax: usize, ctx: &PrecisionContext) -> Vec<Float> {
    let p = ctx.work();
    let n_shift = (ctx.em_shift() + jmax as f64 - a as f64).ceil().max(0.0) as u64;
    let mut acc: Vec<Float> = (0..=jmax).map(|_| Float::new(p)).collect();
    for i in 0..n_shift {
        let x = Float::with_val(p, 1) / Float::with_val(p, a + i);
        let mut pw = Float::with_val(p, x.square_ref());
        for slot in acc.iter_mut().skip(2) {
            *slot += &pw;
            pw *= &x;
        }
    }
    let b = Float::with_val(p, a + n_shift);
    let binv = Float::with_val(p, 1 / &b);
    let binv2 = Float::with_val(p, binv.square_ref());
    let c = em_coeffs(p);
    let eps = Float::with_val(p, Float::i_exp(1, -(p as i32) - 4));
    let mut bj = Float::with_val(p, &binv); // b^{-j}, starting at j = 1
    for j in 2..=jmax {
        bj *= &binv;
        let mut tail = Float::with_val(p, &bj * &b) / (j as u32 - 1);
        tail += Float::with_val(p, &bj / 2u32);
        let mut poch = Float::with_val(p, j as u32);
        let mut bpow = Float::with_val(p, &bj * &binv);
        for (k, ck) in c.iter().enumerate() {
            let term = Float::with_val(p, ck * &poch) * &bpow;
            let small = Float::with_val(p, term.abs_ref()) < Float::with_val(p, &eps * &tail);
            tail += term;
            if small {
                break;
            }
            let k2 = 2 * (k as u32 + 1);
            poch *= j as u32 + k2 - 1;
            poch *= j as u32 + k2;
            bpow *= &binv2;
        }
        acc[j] += tail;
    }
    acc
}

/// ζ'(s) at an integer s != 1 from the term-wise differentiated
/// Euler-Maclaurin formula with a = 1.
pub fn zeta_deriv_int(s: i64, ctx: &PrecisionContext) -> Float {
    assert!(s != 1, "zeta has a pole at 1");
    let p = ctx.work();
    let n = (ctx.em_shift() + s.unsigned_abs() as f64).ceil() as u64;
    let mut d = Float::new(p);
    for k in 2..n {
        let kf = Float::with_val(p, k);
        let lk = Float::with_val(p, kf.ln_ref());
        let pw = pow_int(&kf, -s);
        d -= lk * pw;
    }
    let nf = Float::with_val(p, n);
    let ln_n = Float::with_val(p, nf.ln_ref());
    let sm1 = Float::with_val(p, s - 1);
    let n1s = pow_int(&nf, 1 - s);
    // d/ds [N^{1-s}/(s-1)]
    d -= Float::with_val(p, &ln_n * &n1s) / &sm1;
    d -= Float::with_val(p, &n1s / Float::with_val(p, sm1.square_ref()));
    // d/ds [N^{-s}/2]
    let ns = pow_int(&nf, -s);
    d -= Float::with_val(p, &ln_n * &ns) / 2u32;

    let c = em_coeffs(p);
    let sf = Float::with_val(p, s);
    // (s)_m and its derivative, m = 2k - 1
    let mut poch = Float::with_val(p, &sf);
    let mut dpoch = Float::with_val(p, 1);
    let ninv2 = Float::with_val(p, 1 / Float::with_val(p, nf.square_ref()));
    let mut npow = Float::with_val(p, &ns / &nf); // N^{-s-2k+1} at k = 1
    let eps = Float::with_val(p, Float::i_exp(1, -(p as i32) - 4));
    for (k, ck) in c.iter().enumerate() {
        let inner = Float::with_val(p, &dpoch - Float::with_val(p, &ln_n * &poch));
        let term = Float::with_val(p, ck * &inner) * &npow;
        let small = Float::with_val(p, term.abs_ref()) < Float::with_val(p, &eps * Float::with_val(p, d.abs_ref()));
        d += term;
        if small && k > 0 {
            break;
        }
        for i in [2 * k as i64 + 1, 2 * k as i64 + 2] {
            let f = Float::with_val(p, &sf + i);
            dpoch = Float::with_val(p, &dpoch * &f) + &poch;
            poch *= f;
        }
        npow *= &ninv2;
    }
    d
}

fn pow_int(x: &Float, e: i64) -> Float {
    let p = x.prec();
    use rug::ops::Pow;
    Float::with_val(p, x.pow(e as i32))
}
