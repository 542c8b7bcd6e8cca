//! log Γ, ψ and ψ′ for complex arguments via upward shift plus Stirling.

use rug::Float;

use super::bernoulli::{b2k, stirling_coeffs};
use crate::ctx::PrecisionContext;
use crate::cx::{pi, sum_ln, Cx};
use crate::error::{Error, Result};

/// `Some(n)` when z = -n for an integer n >= 0.
pub fn nonpos_int(z: &Cx) -> Option<u64> {
    if !z.im.is_zero() || z.re > 0 || !z.re.is_integer() {
        return None;
    }
    Some(Float::with_val(z.prec(), -&z.re).to_f64() as u64)
}

fn shift_count(z: &Cx, ctx: &PrecisionContext) -> u64 {
    (ctx.em_shift() - z.re.to_f64()).ceil().max(0.0) as u64
}

fn eps(p: u32) -> Float {
    Float::with_val(p, Float::i_exp(1, -(p as i32) - 4))
}

/// log Γ(z). The branch is the one continuous on the plane slit along the
/// negative real axis and real on the positive axis (not the principal log
/// of Γ); on the cut itself the value from the upper side is returned.
pub fn log_gamma(z: &Cx, ctx: &PrecisionContext) -> Result<Cx> {
    if nonpos_int(z).is_some() {
        return Err(Error::Pole { order: 1 });
    }
    let p = ctx.work();
    let z = z.with_prec(p);
    let n = shift_count(&z, ctx);
    let w = z.add_i64(n as i64);
    let mut out = stirling(&w, p);
    if n > 0 {
        let factors: Vec<Cx> = (0..n).map(|j| z.add_i64(j as i64)).collect();
        out -= sum_ln(p, factors.iter());
    }
    Ok(out)
}

fn stirling(w: &Cx, p: u32) -> Cx {
    let half_ln_2pi = {
        let mut t = pi(p) * 2u32;
        t.ln_mut();
        t / 2u32
    };
    let mut acc = &w.add_f64(-0.5) * &w.ln() - w;
    acc = acc.add_real(&half_ln_2pi);
    let winv = w.recip();
    let winv2 = winv.sqr();
    let mut pw = winv;
    let e = eps(p);
    for c in stirling_coeffs(p).iter() {
        let term = pw.scale(c);
        let small = term.abs() < Float::with_val(p, &e * &acc.abs());
        acc += term;
        if small {
            break;
        }
        pw = &pw * &winv2;
    }
    acc
}

/// ψ(z) = Γ′/Γ.
pub fn digamma(z: &Cx, ctx: &PrecisionContext) -> Result<Cx> {
    if nonpos_int(z).is_some() {
        return Err(Error::Pole { order: 1 });
    }
    let p = ctx.work();
    let z = z.with_prec(p);
    let n = shift_count(&z, ctx);
    let w = z.add_i64(n as i64);
    let winv = w.recip();
    let mut acc = w.ln() - winv.div_i64(2);
    let winv2 = winv.sqr();
    let mut pw = winv2.clone();
    let e = eps(p);
    for (k, b) in b2k(p).iter().enumerate() {
        let term = pw.scale(b).div_i64(2 * (k as i64 + 1));
        let small = term.abs() < Float::with_val(p, &e * &acc.abs());
        acc -= term;
        if small {
            break;
        }
        pw = &pw * &winv2;
    }
    for j in 0..n {
        acc -= z.add_i64(j as i64).recip();
    }
    Ok(acc)
}

/// ψ′(z) = Σ_{m≥0} (z+m)^{-2}.
pub fn trigamma(z: &Cx, ctx: &PrecisionContext) -> Result<Cx> {
    if let Some(_) = nonpos_int(z) {
        return Err(Error::Pole { order: 2 });
    }
    let p = ctx.work();
    let z = z.with_prec(p);
    let n = shift_count(&z, ctx);
    let w = z.add_i64(n as i64);
    let winv = w.recip();
    let winv2 = winv.sqr();
    let mut acc = &winv + &winv2.div_i64(2);
    let mut pw = &winv2 * &winv;
    let e = eps(p);
    for b in b2k(p).iter() {
        let term = pw.scale(b);
        let small = term.abs() < Float::with_val(p, &e * &acc.abs());
        acc += term;
        if small {
            break;
        }
        pw = &pw * &winv2;
    }
    for j in 0..n {
        acc += z.add_i64(j as i64).recip().sqr();
    }
    Ok(acc)
}
