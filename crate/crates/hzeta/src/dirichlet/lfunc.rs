use rug::Float;

use super::character::DirichletCharacter;
use crate::ctx::PrecisionContext;
use crate::cx::{pi, Cx};
use crate::error::{Error, Result};
use crate::numcore::arith::{factorize, gcd};
use crate::numcore::hurwitz::hurwitz_zeta_reg;
use crate::numcore::{log_gamma, nonpos_int, riemann_zeta};

/// L(s, χ). Imprimitive characters are reduced to their primitive inducing
/// character times the missing Euler factors.
pub fn dirichlet_l(s: &Cx, chi: &DirichletCharacter, ctx: &PrecisionContext) -> Result<Cx> {
    let p = ctx.work();
    let s = s.with_prec(p);
    let prim = chi.primitive();
    let mut out = primitive_l(&s, &prim, ctx)?;
    for (q, _) in factorize(chi.modulus()) {
        if prim.modulus() % q != 0 {
            out = &out * &euler_factor(&s, &prim, q, p);
        }
    }
    Ok(out)
}

/// 1 - χ(p) p^{-s}.
fn euler_factor(s: &Cx, chi: &DirichletCharacter, prime: u64, p: u32) -> Cx {
    let ps = pow_neg_int(prime, s, p);
    Cx::one(p) - &chi.value(prime, p) * &ps
}

/// n^{-s} for a positive integer n.
pub fn pow_neg_int(n: u64, s: &Cx, p: u32) -> Cx {
    let ln = Float::with_val(p, n).ln();
    s.scale(&ln).neg_ref().exp()
}

fn primitive_l(s: &Cx, chi: &DirichletCharacter, ctx: &PrecisionContext) -> Result<Cx> {
    let p = ctx.work();
    let q = chi.modulus();
    if q == 1 {
        return riemann_zeta(s, ctx);
    }
    if let Some(n) = direct_terms(s, p) {
        let mut acc = Cx::zero(p);
        for k in 1..=n {
            if gcd(k, q) == 1 {
                acc += &chi.value(k, p) * &pow_neg_int(k, s, p);
            }
        }
        return Ok(acc);
    }
    // Σ χ(a) = 0, so the a-independent pole part of ζ(s, a/q) drops out.
    let qf = Float::with_val(p, q);
    let mut acc = Cx::zero(p);
    for a in 1..q {
        if chi.angle(a).is_none() {
            continue;
        }
        let h = hurwitz_zeta_reg(s, &Float::with_val(p, Float::with_val(p, a) / &qf), ctx)?;
        acc += &chi.value(a, p) * &h;
    }
    Ok(&acc * &pow_neg_int(q, s, p))
}

/// Number of terms after which the Dirichlet series tail is below 2^{-p},
/// when that number is small enough for direct summation.
fn direct_terms(s: &Cx, p: u32) -> Option<u64> {
    let sigma = s.re.to_f64();
    if sigma < 24.0 {
        return None;
    }
    // tail ≤ N^{-σ}(1 + N/(σ-1))
    (2..=64u64).find(|&n| {
        let nf = n as f64;
        sigma * nf.log2() - (1.0 + nf / (sigma - 1.0)).log2() > p as f64 + 2.0
    })
}

/// τ(χ) = Σ_a χ(a) e^{2πi a/q}.
pub fn gauss_sum(chi: &DirichletCharacter, ctx: &PrecisionContext) -> Cx {
    let p = ctx.work();
    let q = chi.modulus();
    let mut acc = Cx::zero(p);
    for a in 0..q {
        if let Some(ang) = chi.angle(a) {
            // χ(a) e(a/q) = e(ang/e + a/q), reduced exactly.
            let e = chi.exponent();
            let den = e * q;
            let num = (ang * q + a * e) % den;
            acc += super::character::root_of_unity(num, den, p);
        }
    }
    acc
}

/// ε(χ) = τ(χ)/(i^v √q) for primitive χ.
pub fn root_number(chi: &DirichletCharacter, ctx: &PrecisionContext) -> Result<Cx> {
    if !chi.is_primitive() {
        return Err(Error::NotPrimitive);
    }
    let p = ctx.work();
    let tau = gauss_sum(chi, ctx);
    let sq = Float::with_val(p, chi.modulus()).sqrt();
    let mut den = Cx::real(sq);
    if chi.parity() == 1 {
        den = den.mul_i();
    }
    Ok(&tau / &den)
}

/// log of the archimedean part (π/q)^{-s/2} Γ((s+v)/2).
fn log_gamma_factor(s: &Cx, q: u64, v: u32, ctx: &PrecisionContext) -> Result<Cx> {
    let p = ctx.work();
    let lpq = Float::with_val(p, pi(p) / Float::with_val(p, q)).ln();
    let g = log_gamma(&s.add_i64(v as i64).div_i64(2), ctx)?;
    Ok(g - s.scale(&lpq).div_i64(2))
}

/// ξ(s, χ) = {s(s-1)}^{δ_χ} (π/q)^{-s/2} Γ((s+v)/2) L(s, χ).
///
/// At the poles of the gamma factor (and at s = 1 for the principal
/// character) the value comes from the functional equation.
pub fn xi_complete(s: &Cx, chi: &DirichletCharacter, ctx: &PrecisionContext) -> Result<Cx> {
    let p = ctx.work();
    let s = s.with_prec(p);
    let q = chi.modulus();
    let v = chi.parity();
    let principal = chi.is_principal();
    let at_gamma_pole = nonpos_int(&s.add_i64(v as i64).div_i64(2)).is_some();
    let at_one = principal && s.add_i64(-1).is_zero();
    if at_gamma_pole || at_one {
        if principal && q == 1 {
            // ξ(1) = lim (s-1)ζ(s) · s π^{-1/2} Γ(1/2) = 1, and ξ(0) = ξ(1).
            if at_one || s.is_zero() {
                return Ok(Cx::one(p));
            }
        }
        if !chi.is_primitive() {
            return Err(Error::Domain("xi at a gamma pole needs a primitive character".into()));
        }
        let eps = root_number(chi, ctx)?;
        let other = xi_complete(&(Cx::one(p) - &s), &chi.conj(), ctx)?;
        return Ok(&eps * &other);
    }
    let l = dirichlet_l(&s, chi, ctx)?;
    let mut out = &log_gamma_factor(&s, q, v, ctx)?.exp() * &l;
    if principal {
        out = &out * &(&s * &s.add_i64(-1));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dirichlet::character::enumerate_characters;
    use crate::numcore::hurwitz_zeta;

    fn ctx() -> PrecisionContext {
        PrecisionContext::default()
    }

    #[test]
    fn catalan_by_accelerated_series() {
        // G = Σ (-1)^n/(2n+1)^2; averaging consecutive partial sums of an
        // alternating series repeatedly (Euler transform) converges fast.
        let ctx = ctx();
        let p = ctx.work();
        let chi4 = enumerate_characters(4)[1].clone();
        let l = dirichlet_l(&Cx::from_i64(p, 2), &chi4, &ctx).unwrap();
        let mut partial: Vec<Float> = Vec::new();
        let mut s = Float::new(p);
        for n in 0..400u64 {
            let t = Float::with_val(p, 1) / Float::with_val(p, (2 * n + 1) * (2 * n + 1));
            if n % 2 == 0 {
                s += t;
            } else {
                s -= t;
            }
            partial.push(s.clone());
        }
        let mut row = partial[200..].to_vec();
        for _ in 0..150 {
            row = row.windows(2).map(|w| Float::with_val(p, &w[0] + &w[1]) / 2u32).collect();
        }
        let d = Float::with_val(p, &l.re - &row[0]).abs().to_f64();
        assert!(d < 1e-30, "{d}");
        assert!((l.re.to_f64() - 0.915965594177219).abs() < 1e-14);
    }

    #[test]
    fn leibniz_at_one() {
        let ctx = ctx();
        let p = ctx.work();
        let chi4 = enumerate_characters(4)[1].clone();
        let l = dirichlet_l(&Cx::from_i64(p, 1), &chi4, &ctx).unwrap();
        let want = pi(p) / 4u32;
        assert!(Float::with_val(p, &l.re - want).abs().to_f64() < 1e-50);
    }

    #[test]
    fn principal_pole_and_imprimitive_reduction() {
        let ctx = ctx();
        let p = ctx.work();
        let chi0 = DirichletCharacter::principal(6);
        assert_eq!(dirichlet_l(&Cx::from_i64(p, 1), &chi0, &ctx), Err(Error::PoleAtOne));
        // L(2, χ₀ mod 6) = ζ(2)(1 - 1/4)(1 - 1/9)
        let l = dirichlet_l(&Cx::from_i64(p, 2), &chi0, &ctx).unwrap();
        let z = Float::with_val(p, pi(p).square_ref()) / 6u32 * 3u32 / 4u32 * 8u32 / 9u32;
        assert!(Float::with_val(p, &l.re - z).abs().to_f64() < 1e-50);
    }

    #[test]
    fn direct_series_branch_matches_hurwitz() {
        let ctx = ctx();
        let p = ctx.work();
        let chi = enumerate_characters(5)[1].clone();
        let s = Cx::from_f64(p, 30.0, 3.0);
        let a = dirichlet_l(&s, &chi, &ctx).unwrap();
        let q = Float::with_val(p, 5);
        let mut b = Cx::zero(p);
        for k in 1..5u64 {
            let h = hurwitz_zeta(&s, &Float::with_val(p, Float::with_val(p, k) / &q), &ctx).unwrap();
            b += &chi.value(k, p) * &h;
        }
        b = &b * &pow_neg_int(5, &s, p);
        assert!((a - b).abs_f64() < 1e-60);
    }

    #[test]
    fn root_numbers() {
        let ctx = ctx();
        for q in [1u64, 3, 4] {
            let chi = enumerate_characters(q).into_iter().find(|c| c.is_primitive()).unwrap();
            let e = root_number(&chi, &ctx).unwrap();
            assert!((e.re.to_f64() - 1.0).abs() < 1e-50 && e.im.to_f64().abs() < 1e-50);
        }
        for q in [5u64, 7, 8, 12, 13] {
            for chi in enumerate_characters(q).into_iter().filter(|c| c.is_primitive()) {
                let e = root_number(&chi, &ctx).unwrap();
                assert!((e.abs_f64() - 1.0).abs() < 1e-50);
                if chi.is_real() {
                    assert!((e.re.to_f64() - 1.0).abs() < 1e-50);
                }
            }
        }
        let imprim = DirichletCharacter::principal(2);
        assert_eq!(root_number(&imprim, &ctx), Err(Error::NotPrimitive));
    }

    #[test]
    fn xi_special_points() {
        let ctx = ctx();
        let p = ctx.work();
        let chi0 = DirichletCharacter::principal(1);
        assert!((xi_complete(&Cx::zero(p), &chi0, &ctx).unwrap().re.to_f64() - 1.0).abs() < 1e-50);
        // ξ(-2) = ξ(3) for ζ.
        let a = xi_complete(&Cx::from_i64(p, -2), &chi0, &ctx).unwrap();
        let b = xi_complete(&Cx::from_i64(p, 3), &chi0, &ctx).unwrap();
        assert!((a - b).abs_f64() < 1e-50);
        let h = xi_complete(&Cx::from_f64(p, 0.5, 0.0), &chi0, &ctx).unwrap();
        assert!(h.im.is_zero() || h.im.to_f64().abs() < 1e-60);
        // Near s = 1, ξ(s) → 1 continuously.
        let near = xi_complete(&Cx::from_f64(p, 1.0 + 1e-20, 0.0), &chi0, &ctx).unwrap();
        assert!((near.re.to_f64() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn functional_equation_mod_four() {
        let ctx = ctx();
        let p = ctx.work();
        let chi = enumerate_characters(4)[1].clone();
        let s = Cx::from_f64(p, 0.3, 2.0);
        let a = xi_complete(&s, &chi, &ctx).unwrap();
        let b = xi_complete(&(Cx::one(p) - &s), &chi.conj(), &ctx).unwrap();
        let e = root_number(&chi, &ctx).unwrap();
        assert!((a - &e * &b).abs_f64() < 1e-50);
    }
}
