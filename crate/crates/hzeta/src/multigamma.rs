//! Barnes double and triple gamma functions in the Vignéras normalization:
//! Γ_{k+1}(z+1) = Γ_{k+1}(z)/Γ_k(z), Γ_k(1) = 1.

use num_rational::Ratio;
use rug::Float;

use crate::ctx::PrecisionContext;
use crate::cx::{rel_from_logs, Cx};
use crate::error::{Error, Result};
use crate::numcore::hurwitz::hurwitz_int_table;
use crate::numcore::{constants, digamma, log_gamma, nonpos_int, trigamma};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MultiGammaOrder {
    Gamma,
    Gamma2,
    Gamma3,
}

impl MultiGammaOrder {
    pub fn from_level(level: u8) -> Result<Self> {
        match level {
            1 => Ok(Self::Gamma),
            2 => Ok(Self::Gamma2),
            3 => Ok(Self::Gamma3),
            _ => Err(Error::Domain(format!("multigamma level must be 1, 2 or 3, got {level}"))),
        }
    }

    pub fn level(self) -> u8 {
        match self {
            Self::Gamma => 1,
            Self::Gamma2 => 2,
            Self::Gamma3 => 3,
        }
    }
}

/// Pole order of Γ_level at an exact rational point.
pub fn pole_order(level: MultiGammaOrder, z0: Ratio<i64>) -> u64 {
    if !z0.is_integer() || *z0.numer() > 0 {
        return 0;
    }
    let n = z0.numer().unsigned_abs();
    match level {
        MultiGammaOrder::Gamma => 1,
        MultiGammaOrder::Gamma2 => n + 1,
        MultiGammaOrder::Gamma3 => (n + 1) * (n + 2) / 2,
    }
}

fn pole_check(level: MultiGammaOrder, z: &Cx) -> Result<()> {
    match nonpos_int(z) {
        Some(n) => Err(Error::Pole { order: pole_order(level, Ratio::from_integer(-(n as i64))) }),
        None => Ok(()),
    }
}

pub fn log_gamma2(z: &Cx, ctx: &PrecisionContext) -> Result<Cx> {
    pole_check(MultiGammaOrder::Gamma2, z)?;
    let (_, b2, _) = ladder(z, false, ctx)?;
    Ok(b2)
}

pub fn log_gamma3(z: &Cx, ctx: &PrecisionContext) -> Result<Cx> {
    pole_check(MultiGammaOrder::Gamma3, z)?;
    let (_, _, b3) = ladder(z, true, ctx)?;
    Ok(b3.expect("requested"))
}

pub fn log_multigamma(level: MultiGammaOrder, z: &Cx, ctx: &PrecisionContext) -> Result<Cx> {
    match level {
        MultiGammaOrder::Gamma => log_gamma(z, ctx),
        MultiGammaOrder::Gamma2 => log_gamma2(z, ctx),
        MultiGammaOrder::Gamma3 => log_gamma3(z, ctx),
    }
}

/// (log Γ, log Γ₂, log Γ₃) at z: evaluate at the translate w0 of z with
/// 0 < Re w0 <= 1, then walk the recurrences back to z.
fn ladder(z: &Cx, want3: bool, ctx: &PrecisionContext) -> Result<(Cx, Cx, Option<Cx>)> {
    let p = ctx.work();
    let z = z.with_prec(p);
    let re = z.re.to_f64();
    if !re.is_finite() || re.abs() > 1e5 {
        return Err(Error::Domain("multigamma argument too far from the origin".into()));
    }
    let n = Float::with_val(p, z.re.ceil_ref()).to_f64() as i64 - 1;
    let w0 = z.add_i64(-n);
    let zz = w0.add_i64(-1);
    let mut b1 = log_gamma(&w0, ctx)?;
    let mut b2 = series2(&zz, ctx);
    let mut b3 = if want3 { Some(series3(&zz, ctx)) } else { None };
    if n > 0 {
        for j in 0..n {
            let x = w0.add_i64(j);
            if let Some(b3) = b3.as_mut() {
                *b3 -= &b2;
            }
            b2 -= &b1;
            b1 += x.ln();
        }
    } else {
        for j in 0..(-n) {
            let x = w0.add_i64(-j - 1);
            b1 -= x.ln();
            b2 += &b1;
            if let Some(b3) = b3.as_mut() {
                *b3 += &b2;
            }
        }
    }
    Ok((b1, b2, b3))
}

fn cutoff(z: &Cx) -> u64 {
    let k = (4.0 * z.abs_f64()).ceil().max(32.0) as u64;
    k.div_ceil(32) * 32
}

fn tail_terms(k: u64, p: u32) -> usize {
    ((p as f64 + 3.0 * (k as f64).log2()) / 2.0).ceil() as usize + 6
}

/// log Γ₂(z+1) from the Weierstrass product of 1/Γ₂(z+1).
fn series2(z: &Cx, ctx: &PrecisionContext) -> Cx {
    let p = ctx.work();
    let c = constants(ctx);
    let k_max = cutoff(z);
    let z2 = z.sqr();
    let mut s = Cx::zero(p);
    for k in 1..=k_max {
        let kf = k as i64;
        let l = z.div_i64(kf).add_i64(1).ln().scale_i64(kf);
        s += l - z + z2.div_i64(2 * kf);
    }
    let jmax = tail_terms(k_max, p);
    let t = hurwitz_int_table(k_max + 1, jmax, ctx);
    let mut zj = &z2 * z;
    for j in 3..=jmax {
        let term = zj.scale(&t[j - 1]).div_i64(j as i64);
        if j % 2 == 1 {
            s += term;
        } else {
            s -= term;
        }
        zj = &zj * z;
    }
    // log Γ₂(z+1) = (1/2 + γ/2) z² + (1/2 + ζ'(0)) z - S
    let a2 = Float::with_val(p, &c.euler_gamma + 1u32) / 2u32;
    let a1 = Float::with_val(p, &c.zeta_prime_0 + 0.5f64);
    z2.scale(&a2) + z.scale(&a1) - s
}

/// log Γ₃(z+1) from its Weierstrass product.
fn series3(z: &Cx, ctx: &PrecisionContext) -> Cx {
    let p = ctx.work();
    let c = constants(ctx);
    let k_max = cutoff(z);
    let z2 = z.sqr();
    let z3 = &z2 * z;
    let mut s = Cx::zero(p);
    for k in 1..=k_max {
        let kf = k as i64;
        let l = z.div_i64(kf).add_i64(1).ln().scale_i64(-kf * (kf + 1) / 2);
        let quad = z2.scale_f64(-0.25) - z2.div_i64(4 * kf);
        let lin = z.div_i64(2).scale_i64(1 + kf);
        s += l + z3.div_i64(6 * kf) + quad + lin;
    }
    let jmax = tail_terms(k_max, p) + 2;
    let t = hurwitz_int_table(k_max + 1, jmax, ctx);
    s -= z3.scale(&t[2]).div_i64(6);
    let mut zj = &z3 * z;
    for j in 4..=jmax {
        let coef = Float::with_val(p, &t[j - 1] + &t[j - 2]);
        let term = zj.scale(&coef).div_i64(2 * j as i64);
        if j % 2 == 0 {
            s += term;
        } else {
            s -= term;
        }
        zj = &zj * z;
    }
    let g = &c.euler_gamma;
    let z0 = &c.zeta_prime_0;
    let a3 = -(Float::with_val(p, 0.25f64) + Float::with_val(p, g / 6u32));
    let a2 = Float::with_val(p, 0.125f64) - Float::with_val(p, z0 / 2u32) + Float::with_val(p, g / 4u32);
    let a1 = Float::with_val(p, 7u32) / 24u32 + &c.zeta_prime_m1 + Float::with_val(p, z0 / 2u32);
    z3.scale(&a3) + z2.scale(&a2) + z.scale(&a1) + s
}

/// d/dw log Γ₂(w) = w - 1/2 + ζ'(0) - (w-1) ψ(w).
pub fn log_gamma2_d1(w: &Cx, ctx: &PrecisionContext) -> Result<Cx> {
    pole_check(MultiGammaOrder::Gamma2, w)?;
    let p = ctx.work();
    let w = w.with_prec(p);
    let c = constants(ctx);
    let psi = digamma(&w, ctx)?;
    Ok(w.add_f64(-0.5).add_real(&c.zeta_prime_0) - &w.add_i64(-1) * &psi)
}

/// d²/dw² log Γ₂(w) = 1 - ψ(w) - (w-1) ψ'(w).
pub fn log_gamma2_d2(w: &Cx, ctx: &PrecisionContext) -> Result<Cx> {
    pole_check(MultiGammaOrder::Gamma2, w)?;
    let p = ctx.work();
    let w = w.with_prec(p);
    let psi = digamma(&w, ctx)?;
    let tri = trigamma(&w, ctx)?;
    Ok(Cx::one(p) - psi - &w.add_i64(-1) * &tri)
}

/// (log k₁(m), log k₂(m)).
pub fn log_mult_constants(m: u64, ctx: &PrecisionContext) -> (Float, Float) {
    assert!(m >= 1);
    let p = ctx.work();
    let c = constants(ctx);
    let mf = Float::with_val(p, m);
    let ln_m = Float::with_val(p, mf.ln_ref());
    let half_m1 = Float::with_val(p, m - 1) / 2u32;
    let common = -Float::with_val(p, &half_m1 * &c.ln_2pi);
    let lk1 = Float::with_val(p, &common - Float::with_val(p, &ln_m / 2u32));
    let m2 = (m * m) as i64;
    let lk2 = Float::with_val(p, &c.log_glaisher * (1 - m2)) + Float::with_val(p, m2 - 1) / 12u32
        + &common
        - Float::with_val(p, &ln_m * 5u32) / 12u32;
    (lk1, lk2)
}

/// (k₁(m), k₂(m)).
pub fn mult_constants(m: u64, ctx: &PrecisionContext) -> (Float, Float) {
    let (a, b) = log_mult_constants(m, ctx);
    (a.exp(), b.exp())
}

/// Relative residual of the Gauss multiplication formula (level 1) or its
/// double-gamma analogue (level 2), compared in log space.
pub fn mult_residual(level: MultiGammaOrder, z: &Cx, m: u64, ctx: &PrecisionContext) -> Result<f64> {
    if m == 0 {
        return Err(Error::Domain("m must be positive".into()));
    }
    let p = ctx.work();
    let z = z.with_prec(p);
    let (lk1, lk2) = log_mult_constants(m, ctx);
    let ln_m = Float::with_val(p, m).ln();
    let mi = m as i64;
    let (lhs, rhs) = match level {
        MultiGammaOrder::Gamma => {
            let lhs = log_gamma(&z, ctx)?;
            let mut rhs = z.scale(&ln_m).add_real(&lk1);
            for j in 0..mi {
                rhs += log_gamma(&z.add_i64(j).div_i64(mi), ctx)?;
            }
            (lhs, rhs)
        }
        MultiGammaOrder::Gamma2 => {
            let lhs = log_gamma2(&z, ctx)?;
            let c = constants(ctx);
            let e2pi = z.scale(&c.ln_2pi).scale_i64(mi - 1).div_i64(2);
            let em = (&z - &z.sqr().div_i64(2)).scale(&ln_m);
            let mut rhs = e2pi + em;
            rhs = rhs.add_real(&lk2);
            // Γ₂((z+j)/m) appears once for each split j = j1 + j2.
            for j in 0..(2 * mi - 1) {
                let mult = if j < mi { j + 1 } else { 2 * mi - 1 - j };
                rhs += log_gamma2(&z.add_i64(j).div_i64(mi), ctx)?.scale_i64(mult);
            }
            (lhs, rhs)
        }
        MultiGammaOrder::Gamma3 => {
            return Err(Error::Unsupported("no multiplication formula for level 3".into()))
        }
    };
    Ok(rel_from_logs(&lhs, &rhs))
}

/// |Γ_level(z+1) Γ_{level-1}(z) / Γ_level(z) - 1| (Γ₀ = 1).
pub fn recurrence_residual(level: MultiGammaOrder, z: &Cx, ctx: &PrecisionContext) -> Result<f64> {
    let p = ctx.work();
    let z = z.with_prec(p);
    let lower = match level {
        MultiGammaOrder::Gamma => Cx::zero(p),
        MultiGammaOrder::Gamma2 => log_gamma(&z, ctx)?,
        MultiGammaOrder::Gamma3 => log_gamma2(&z, ctx)?,
    };
    let lhs = log_multigamma(level, &z.add_i64(1), ctx)? + lower;
    let rhs = match level {
        MultiGammaOrder::Gamma => z.ln() + log_gamma(&z, ctx)?,
        _ => log_multigamma(level, &z, ctx)?,
    };
    Ok(rel_from_logs(&lhs, &rhs))
}

/// Residual of
/// ∏_{r<l} Γ₂((z+r)/l)^{2l} Γ((z+r)/l)^{2r-2l+1}
///   = k₂(l)^{-2} k₁(l) (2π)^{(1-l)z} l^{z²-z} Γ₂(z)² / Γ(z).
pub fn product_identity_residual(z: &Cx, l: u64, ctx: &PrecisionContext) -> Result<f64> {
    if l == 0 {
        return Err(Error::Domain("l must be positive".into()));
    }
    let p = ctx.work();
    let z = z.with_prec(p);
    let li = l as i64;
    let mut lhs = Cx::zero(p);
    for r in 0..li {
        let w = z.add_i64(r).div_i64(li);
        lhs += log_gamma2(&w, ctx)?.scale_i64(2 * li) + log_gamma(&w, ctx)?.scale_i64(2 * r - 2 * li + 1);
    }
    let (lk1, lk2) = log_mult_constants(l, ctx);
    let c = constants(ctx);
    let ln_l = Float::with_val(p, l).ln();
    let rhs = z.scale(&c.ln_2pi).scale_i64(1 - li) + (&z.sqr() - &z).scale(&ln_l) + log_gamma2(&z, ctx)?.scale_i64(2)
        - log_gamma(&z, ctx)?;
    Ok(rel_from_logs(&lhs, &rhs.add_real(&(lk1 - lk2 * 2u32))))
}
