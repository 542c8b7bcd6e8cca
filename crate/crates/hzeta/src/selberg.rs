//! Gamma factors Ξ_I, Ξ_ell, Ξ_par of the complete Selberg zeta function of a
//! congruence subgroup, and the real-point divisor of Ξ_hyp.

use rug::Float;

use crate::congruence::GroupData;
use crate::ctx::PrecisionContext;
use crate::cx::{pi, Cx};
use crate::dirichlet::dirichlet_l;
use crate::divisor::{q, Atom, Divisor, DivisorEntry, FamilyTag, Q};
use crate::error::Result;
use crate::multigamma::{log_gamma2, MultiGammaOrder};
use crate::numcore::{constants, log_gamma};

fn rat_f(prec: u32, x: &rug::Rational) -> Float {
    Float::with_val(prec, x)
}

/// log Ξ_I(s) = (vol/2π)(s log 2π + 2 log Γ₂(s) - log Γ(s)).
pub fn log_xi_i(s: &Cx, data: &GroupData, ctx: &PrecisionContext) -> Result<Cx> {
    let p = ctx.work();
    let s = s.with_prec(p);
    let c = constants(ctx);
    let inner = s.scale(&c.ln_2pi) + log_gamma2(&s, ctx)?.scale_i64(2) - log_gamma(&s, ctx)?;
    Ok(inner.scale(&rat_f(p, &data.vol_over_2pi())))
}

pub fn xi_i(s: &Cx, data: &GroupData, ctx: &PrecisionContext) -> Result<Cx> {
    Ok(log_xi_i(s, data, ctx)?.exp())
}

/// log Ξ_ell(s), fractional powers taken through the analytic log Γ.
pub fn log_xi_ell(s: &Cx, data: &GroupData, ctx: &PrecisionContext) -> Result<Cx> {
    let p = ctx.work();
    let s = s.with_prec(p);
    let mut out = Cx::zero(p);
    if data.nu2 > 0 {
        let g = log_gamma(&s.add_i64(1).div_i64(2), ctx)? - log_gamma(&s.div_i64(2), ctx)?;
        out += g.scale_i64(data.nu2 as i64).div_i64(2);
    }
    if data.nu3 > 0 {
        let h = log_gamma(&s.add_i64(2).div_i64(3), ctx)? - log_gamma(&s.div_i64(3), ctx)?;
        out += h.scale_i64(2 * data.nu3 as i64).div_i64(3);
    }
    Ok(out)
}

pub fn xi_ell(s: &Cx, data: &GroupData, ctx: &PrecisionContext) -> Result<Cx> {
    Ok(log_xi_ell(s, data, ctx)?.exp())
}

/// log(𝒜 2^κ / π^κ).
pub(crate) fn log_par_base(data: &GroupData, p: u32) -> Float {
    let ln2 = Float::with_val(p, rug::float::Constant::Log2);
    let lnpi = Float::with_val(p, pi(p).ln_ref());
    data.log_a(p) + Float::with_val(p, &ln2 - &lnpi) * data.kappa
}

/// Ξ_par(s) = (𝒜2^κ/π^κ)^{-s} (s-1/2)^{(κ-κ₀)/2} Γ(s+1/2)^{-κ} Γ(s)^{-κ} ∏_χ L(2s,χ)^{-1}.
pub fn xi_par(s: &Cx, data: &GroupData, ctx: &PrecisionContext) -> Result<Cx> {
    let k0 = data.kappa0()?;
    let p = ctx.work();
    let s = s.with_prec(p);
    let kappa = data.kappa as i64;
    let gam = (log_gamma(&s.add_f64(0.5), ctx)? + log_gamma(&s, ctx)?).scale_i64(-kappa);
    let mut out = (gam - s.scale(&log_par_base(data, p))).exp();
    let e = (kappa - k0) / 2;
    if e != 0 {
        out = &out * &s.add_f64(-0.5).powi(e);
    }
    let two_s = s.scale_i64(2);
    for chi in data.characters() {
        out = &out / &dirichlet_l(&two_s, chi, ctx)?;
    }
    Ok(out)
}

/// Ξ_I Ξ_ell Ξ_par, the full gamma factor.
pub fn gamma_factor(s: &Cx, data: &GroupData, ctx: &PrecisionContext) -> Result<Cx> {
    let l = log_xi_i(s, data, ctx)? + log_xi_ell(s, data, ctx)?;
    Ok(&l.exp() * &xi_par(s, data, ctx)?)
}

fn gamma_atom(level: MultiGammaOrder, a: Q, b: Q) -> Atom {
    Atom::Gamma { level, a, b }
}

/// Divisor of Ξ_hyp = Ξ Ξ_I^{-1} Ξ_ell^{-1} Ξ_par^{-1} at real points. Ξ is
/// represented by its λ₀ = 0 zeros only.
pub fn hyp_divisor(data: &GroupData) -> Result<Divisor> {
    use MultiGammaOrder::*;
    let k0 = data.kappa0()?;
    let mu = data.index as i64;
    let mut d = Divisor::default();
    d.push("xi", q(1, 1), Atom::Xi);
    d.push("xi_I", q(-2 * mu, 6), gamma_atom(Gamma2, q(1, 1), q(0, 1)));
    d.push("xi_I", q(mu, 6), gamma_atom(Gamma, q(1, 1), q(0, 1)));
    let n2 = data.nu2 as i64;
    let n3 = data.nu3 as i64;
    d.push("xi_ell", q(n2, 2), gamma_atom(Gamma, q(1, 2), q(0, 1)));
    d.push("xi_ell", q(-n2, 2), gamma_atom(Gamma, q(1, 2), q(1, 2)));
    d.push("xi_ell", q(2 * n3, 3), gamma_atom(Gamma, q(1, 3), q(0, 1)));
    d.push("xi_ell", q(-2 * n3, 3), gamma_atom(Gamma, q(1, 3), q(2, 3)));
    let kappa = data.kappa as i64;
    d.push("xi_par", q(-(kappa - k0), 2), Atom::Linear { c: q(1, 2) });
    d.push("xi_par", q(kappa, 1), gamma_atom(Gamma, q(1, 1), q(1, 2)));
    d.push("xi_par", q(kappa, 1), gamma_atom(Gamma, q(1, 1), q(0, 1)));
    for chi in data.characters() {
        d.push("xi_par", q(1, 1), Atom::L { chi: chi.clone(), a: q(2, 1), b: q(0, 1) });
    }
    Ok(d)
}

pub(crate) fn char_tag(chi: &crate::dirichlet::DirichletCharacter) -> String {
    format!("chi{}.{}", chi.modulus(), chi.label())
}

/// Zeros and poles of Ξ_hyp on [s_min, s_max], then the symbolic families.
///
/// Only λ₀ = 0 enters at real points; groups with small eigenvalues
/// 0 < λ < 1/4 would have further real zeros.
pub fn catalog_selberg(data: &GroupData, s_min: Q, s_max: Q) -> Result<Vec<DivisorEntry>> {
    let mut out = hyp_divisor(data)?.catalog(s_min, s_max)?;
    let mut seen = Vec::new();
    for chi in data.characters() {
        let tag = char_tag(chi);
        if !seen.contains(&tag) {
            seen.push(tag.clone());
            out.push(DivisorEntry::family(FamilyTag::NontrivialLHalf { chi: tag, step: 0, m_min: 0 }, 1));
        }
    }
    out.push(DivisorEntry::family(FamilyTag::Spectral { step: 0, m_min: 0, n_min: 1 }, 1));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::ops::Pow;
    use crate::congruence::{group_data, Family};

    fn sl2z() -> GroupData {
        group_data(Family::Gamma0, 1, None).unwrap()
    }

    #[test]
    fn xi_i_small_values() {
        let ctx = PrecisionContext::default();
        let p = ctx.work();
        let d = sl2z();
        let two_pi = pi(p) * 2u32;
        let want1 = Float::with_val(p, two_pi.ln_ref()) / 6u32;
        let v1 = log_xi_i(&Cx::one(p), &d, &ctx).unwrap();
        assert!(Float::with_val(p, &v1.re - &want1).abs().to_f64() < 1e-50);
        let v2 = log_xi_i(&Cx::from_i64(p, 2), &d, &ctx).unwrap();
        assert!(Float::with_val(p, &v2.re - want1 * 2u32).abs().to_f64() < 1e-50);
    }

    #[test]
    fn xi_ell_at_one() {
        let ctx = PrecisionContext::default();
        let p = ctx.work();
        let v = xi_ell(&Cx::one(p), &sl2z(), &ctx).unwrap();
        // π^{-1/4} Γ(1/3)^{-2/3}
        let g13 = log_gamma(&Cx::ratio(p, 1, 3), &ctx).unwrap().re;
        let want = (-(Float::with_val(p, pi(p).ln_ref()) / 4u32) - g13 * 2u32 / 3u32).exp();
        assert!(Float::with_val(p, &v.re - want).abs().to_f64() < 1e-50);
        let empty = group_data(Family::GammaFull, 5, Some(0)).unwrap();
        assert_eq!((empty.nu2, empty.nu3), (0, 0));
        assert_eq!(xi_ell(&Cx::from_f64(p, 0.3, 2.0), &empty, &ctx).unwrap(), Cx::one(p));
    }

    #[test]
    fn xi_par_values() {
        let ctx = PrecisionContext::default();
        let p = ctx.work();
        let d = sl2z();
        let v = xi_par(&Cx::one(p), &d, &ctx).unwrap();
        let want = Float::with_val(p, 6) / pi(p).pow(1.5f64);
        assert!(Float::with_val(p, &v.re - want).abs().to_f64() < 1e-50);
        // Ξ_par(3/4) ζ(3/2) Γ(5/4) Γ(3/4) (2/π)^{3/4} = 1
        let s = Cx::ratio(p, 3, 4);
        let x = xi_par(&s, &d, &ctx).unwrap();
        let z = crate::numcore::riemann_zeta(&Cx::ratio(p, 3, 2), &ctx).unwrap();
        let g = (log_gamma(&Cx::ratio(p, 5, 4), &ctx).unwrap() + log_gamma(&s, &ctx).unwrap()).exp();
        let b = Cx::real(Float::with_val(p, 2) / pi(p)).pow(&s);
        let prod = &(&(&x * &z) * &g) * &b;
        assert!((prod - Cx::one(p)).abs_f64() < 1e-50);
    }

    #[test]
    fn catalog_spot_checks() {
        let d = sl2z();
        let cat = catalog_selberg(&d, q(-6, 1), q(1, 1)).unwrap();
        let at = |s: Q| cat.iter().find(|e| e.point() == Some(s)).map(|e| e.order);
        assert_eq!(at(q(0, 1)), Some(-1));
        assert_eq!(at(q(1, 1)), Some(1));
        assert_eq!(at(q(-5, 1)), Some(3));
        assert_eq!(at(q(-1, 2)), Some(-1));
        assert_eq!(at(q(1, 2)), Some(-1));
        assert_eq!(at(q(-1, 3)), None);
    }
}
