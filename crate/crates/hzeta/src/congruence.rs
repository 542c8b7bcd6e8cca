//! Scattering data of Γ₀(N), Γ₁(N) and Γ(N): the character sextuples of the
//! determinant formula, the constant 𝒜, cusp and elliptic counts, and φ(s).

use std::fmt;
use std::str::FromStr;

use rug::{Float, Integer, Rational};

use crate::ctx::PrecisionContext;
use crate::cx::{pi, Cx};
use crate::dirichlet::{combine, dirichlet_l, primitive_characters, DirichletCharacter};
use crate::error::{Error, Result};
use crate::numcore::arith::{divisors, euler_phi, factorize, gcd};
use crate::numcore::log_gamma;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Gamma0,
    Gamma1,
    GammaFull,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::Gamma0, Family::Gamma1, Family::GammaFull];

    pub fn tag(self) -> &'static str {
        match self {
            Family::Gamma0 => "g0",
            Family::Gamma1 => "g1",
            Family::GammaFull => "g",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Gamma0 => "Gamma0",
            Family::Gamma1 => "Gamma1",
            Family::GammaFull => "Gamma",
        })
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Family> {
        match s.to_ascii_lowercase().as_str() {
            "g0" | "gamma0" => Ok(Family::Gamma0),
            "g1" | "gamma1" => Ok(Family::Gamma1),
            "g" | "gamma" | "full" | "gammafull" => Ok(Family::GammaFull),
            _ => Err(Error::Domain(format!("unknown group family {s:?} (use g0, g1 or g)"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ScatteringPair {
    pub chi1: DirichletCharacter,
    pub chi2: DirichletCharacter,
    pub q1: u64,
    pub q2: u64,
    pub m1: u64,
    pub m2: u64,
    pub combined: DirichletCharacter,
}

fn pair(chi1: &DirichletCharacter, chi2: &DirichletCharacter, m1: u64, m2: u64, n: u64) -> ScatteringPair {
    let combined = combine(chi1, chi2, m1, m2);
    assert_eq!((n * n) % combined.modulus(), 0, "combined modulus must divide N^2");
    ScatteringPair {
        chi1: chi1.clone(),
        chi2: chi2.clone(),
        q1: chi1.modulus(),
        q2: chi2.modulus(),
        m1,
        m2,
        combined,
    }
}

/// All sextuples (χ₁, χ₂, q₁, q₂, m₁, m₂) of the family at level N, in
/// canonical order (q₂, m₂, q₁, m₁, then character labels).
///
/// For Γ₁(N) and Γ(N) only pairs with χ₁(-1)χ₂(-1) = 1 occur; without this
/// the count exceeds the number of cusps.
pub fn enumerate_pairs(family: Family, n: u64) -> Vec<ScatteringPair> {
    assert!(n >= 1, "level must be positive");
    let mut out = Vec::new();
    let even = |a: &DirichletCharacter, b: &DirichletCharacter| a.parity() == b.parity();
    match family {
        Family::Gamma0 => {
            for q in divisors(n) {
                for m2 in divisors(n / q) {
                    if m2 % q != 0 {
                        continue;
                    }
                    for chi in primitive_characters(q) {
                        out.push(pair(&chi, &chi, 1, m2, n));
                    }
                }
            }
        }
        Family::Gamma1 => {
            for q2 in divisors(n) {
                for m2 in divisors(n / q2) {
                    let c2s = primitive_characters(q2);
                    for q1 in divisors(m2) {
                        let c1s = primitive_characters(q1);
                        for chi2 in &c2s {
                            for chi1 in c1s.iter().filter(|c| even(c, chi2)) {
                                out.push(pair(chi1, chi2, 1, m2, n));
                            }
                        }
                    }
                }
            }
        }
        Family::GammaFull => {
            for q2 in divisors(n) {
                for m2 in divisors(n / q2) {
                    let c2s = primitive_characters(q2);
                    for q1 in divisors(n) {
                        for m1 in divisors(n / q1) {
                            if gcd(m1, m2) != 1 {
                                continue;
                            }
                            let c1s = primitive_characters(q1);
                            for chi2 in &c2s {
                                for chi1 in c1s.iter().filter(|c| even(c, chi2)) {
                                    out.push(pair(chi1, chi2, m1, m2, n));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// 𝒜 as an exact rational.
pub fn compute_a(family: Family, n: u64, pairs: &[ScatteringPair]) -> Rational {
    let mut a = Rational::from(1);
    for pr in pairs {
        let f = match family {
            Family::Gamma0 => Rational::from((Integer::from(pr.q1 * n), Integer::from(gcd(pr.m1, n / pr.m1)))),
            Family::Gamma1 => Rational::from(pr.q1 * n),
            Family::GammaFull => Rational::from(Integer::from(pr.m1 * pr.m2) * pr.q1 * n),
        };
        a *= f;
    }
    a
}

/// Classical cusp numbers.
pub fn cusp_count(family: Family, n: u64) -> u64 {
    match family {
        Family::Gamma0 => divisors(n).into_iter().map(|d| euler_phi(gcd(d, n / d))).sum(),
        Family::Gamma1 => match n {
            1 => 1,
            2 => 2,
            3 => 2,
            4 => 3,
            _ => divisors(n).into_iter().map(|d| euler_phi(d) * euler_phi(n / d)).sum::<u64>() / 2,
        },
        Family::GammaFull => match n {
            1 => 1,
            2 => 3,
            _ => prime_product(n * n, n, |p| (p * p - 1, p * p)) / 2,
        },
    }
}

/// base · ∏_{p | n} num(p)/den(p), which must be an integer.
fn prime_product(base: u64, n: u64, f: impl Fn(u64) -> (u64, u64)) -> u64 {
    let (mut num, mut den) = (base, 1u64);
    for (p, _) in factorize(n) {
        let (a, b) = f(p);
        num *= a;
        den *= b;
    }
    assert_eq!(num % den, 0, "product is not integral here");
    num / den
}

/// Index of the image of the group in PSL(2, Z).
pub fn psl_index(family: Family, n: u64) -> u64 {
    let r = |p: u64| (p * p - 1, p * p);
    match family {
        Family::Gamma0 => {
            let mut num = n;
            for (p, _) in factorize(n) {
                num = num / p * (p + 1);
            }
            num
        }
        Family::Gamma1 => match n {
            1 => 1,
            2 => 3,
            _ => prime_product(n * n, n, r) / 2,
        },
        Family::GammaFull => match n {
            1 => 1,
            2 => 6,
            _ => prime_product(n * n * n, n, r) / 2,
        },
    }
}

fn kronecker_minus(d: i64, p: u64) -> i64 {
    // (d|p) for d ∈ {-1, -3} and a prime p.
    if (d == -3 && p == 3) || p == 2 && d == -1 {
        return 0;
    }
    if p == 2 {
        // (-3|2) = -1
        return -1;
    }
    let r = crate::numcore::arith::pow_mod((d.rem_euclid(p as i64)) as u64, (p - 1) / 2, p);
    if r == 1 {
        1
    } else {
        -1
    }
}

/// (ν₂, ν₃).
pub fn elliptic_counts(family: Family, n: u64) -> (u64, u64) {
    match family {
        Family::Gamma0 => {
            let fs = factorize(n);
            let nu2 = if n % 4 == 0 { 0 } else { fs.iter().map(|&(p, _)| (1 + kronecker_minus(-1, p)) as u64).product() };
            let nu3 = if n % 9 == 0 { 0 } else { fs.iter().map(|&(p, _)| (1 + kronecker_minus(-3, p)) as u64).product() };
            (nu2, nu3)
        }
        Family::Gamma1 => match n {
            1 => (1, 1),
            2 => (1, 0),
            3 => (0, 1),
            _ => (0, 0),
        },
        Family::GammaFull => if n == 1 { (1, 1) } else { (0, 0) },
    }
}

/// Genus from the Riemann-Hurwitz formula g = 1 + μ/12 - ν₂/4 - ν₃/3 - κ/2.
pub fn genus(family: Family, n: u64) -> i64 {
    let mu = psl_index(family, n) as i64;
    let (nu2, nu3) = elliptic_counts(family, n);
    let k = cusp_count(family, n) as i64;
    let twelve_g = 12 + mu - 3 * nu2 as i64 - 4 * nu3 as i64 - 6 * k;
    assert_eq!(twelve_g % 12, 0, "genus must be an integer");
    twelve_g / 12
}

/// κ₀ values known without spectral computation.
fn kappa0_table(family: Family, n: u64) -> Option<i64> {
    match (family, n) {
        (Family::Gamma0, 1) => Some(1),
        _ => None,
    }
}

#[derive(Debug, Clone)]
pub struct GroupData {
    pub family: Family,
    pub level: u64,
    /// Index μ in PSL(2, Z); vol(Γ\H) = πμ/3.
    pub index: u64,
    pub nu2: u64,
    pub nu3: u64,
    pub kappa: u64,
    pub kappa0: Option<i64>,
    pub a_const: Rational,
    pub pairs: Vec<ScatteringPair>,
}

impl GroupData {
    pub fn name(&self) -> String {
        format!("{}({})", self.family, self.level)
    }

    pub fn volume(&self, prec: u32) -> Float {
        pi(prec) * self.index / 3u32
    }

    /// vol/(2π) = μ/6 exactly.
    pub fn vol_over_2pi(&self) -> Rational {
        Rational::from((self.index, 6u64))
    }

    pub fn log_a(&self, prec: u32) -> Float {
        Float::with_val(prec, &self.a_const).ln()
    }

    pub fn kappa0(&self) -> Result<i64> {
        self.kappa0.ok_or_else(|| Error::MissingKappa0(self.name()))
    }

    pub fn characters(&self) -> impl Iterator<Item = &DirichletCharacter> {
        self.pairs.iter().map(|p| &p.combined)
    }
}

fn check_kappa0(kappa: u64, k0: i64) -> Result<()> {
    if k0.unsigned_abs() > kappa {
        return Err(Error::InvalidKappa0(format!("|kappa0| = {} exceeds kappa = {kappa}", k0.abs())));
    }
    if (kappa as i64 - k0) % 2 != 0 {
        return Err(Error::InvalidKappa0(format!("kappa - kappa0 = {} is odd", kappa as i64 - k0)));
    }
    Ok(())
}

/// Group data with κ₀ left unknown when neither the table nor the override gives it.
pub fn group_data_partial(family: Family, n: u64, kappa0_override: Option<i64>) -> Result<GroupData> {
    if n == 0 {
        return Err(Error::Domain("level must be positive".into()));
    }
    let pairs = enumerate_pairs(family, n);
    let kappa = pairs.len() as u64;
    let kappa0 = kappa0_override.or_else(|| kappa0_table(family, n));
    if let Some(k0) = kappa0 {
        check_kappa0(kappa, k0)?;
    }
    let (nu2, nu3) = elliptic_counts(family, n);
    Ok(GroupData {
        family,
        level: n,
        index: psl_index(family, n),
        nu2,
        nu3,
        kappa,
        kappa0,
        a_const: compute_a(family, n, &pairs),
        pairs,
    })
}

pub fn group_data(family: Family, n: u64, kappa0_override: Option<i64>) -> Result<GroupData> {
    let d = group_data_partial(family, n, kappa0_override)?;
    d.kappa0()?;
    Ok(d)
}

/// φ(s) = (-1)^{(κ-κ₀)/2} (Γ(1-s)/Γ(s))^κ (𝒜/π^κ)^{1-2s} ∏ L(2-2s, χ̄)/L(2s, χ).
pub fn scattering_det(s: &Cx, data: &GroupData, ctx: &PrecisionContext) -> Result<Cx> {
    let p = ctx.work();
    let s = s.with_prec(p);
    let k0 = data.kappa0()?;
    let kappa = data.kappa as i64;
    let one_minus = Cx::one(p) - &s;
    let lg = (log_gamma(&one_minus, ctx)? - log_gamma(&s, ctx)?).scale_i64(kappa);
    let la = data.log_a(p) - Float::with_val(p, pi(p).ln_ref()) * kappa;
    let lexp = one_minus.add_i64(0) - &s;
    let mut out = (lg + lexp.scale(&la)).exp();
    if ((kappa - k0) / 2) % 2 != 0 {
        out = out.neg_ref();
    }
    let two_s = s.scale_i64(2);
    let two_m = one_minus.scale_i64(2);
    for chi in data.characters() {
        let num = dirichlet_l(&two_m, &chi.conj(), ctx)?;
        let den = dirichlet_l(&two_s, chi, ctx)?;
        out = &out * &(&num / &den);
    }
    Ok(out)
}
