use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::Float;

use hzeta::congruence::{enumerate_pairs, group_data, group_data_partial, scattering_det, Family};
use hzeta::cx::{pi, rel_diff};
use hzeta::dirichlet::{bundled_zeta_zeros, dirichlet_l, enumerate_characters, root_number, xi_complete, DirichletCharacter};
use hzeta::divisor::Q;
use hzeta::higher::{self, HigherFactorKind, SpectralList, XiPart};
use hzeta::higher_l::{self, HigherLContext};
use hzeta::multigamma::{log_multigamma, mult_residual, product_identity_residual, recurrence_residual, MultiGammaOrder};
use hzeta::verify::DEFAULT_SEED;
use hzeta::{Cx, PrecisionContext};

type Outcome = Result<String, String>;

struct Worst {
    value: f64,
    tol: f64,
    at: String,
}

impl Worst {
    fn new(tol: f64) -> Worst {
        Worst { value: 0.0, tol, at: String::new() }
    }

    fn add(&mut self, r: f64, at: impl FnOnce() -> String) {
        if self.at.is_empty() || r > self.value || r.is_nan() {
            self.value = r;
            self.at = at();
        }
    }

    fn add_result(&mut self, label: &str, r: hzeta::Result<f64>) -> Result<(), String> {
        match r {
            Ok(v) => {
                self.add(v, || label.to_string());
                Ok(())
            }
            Err(e) => Err(format!("{label}: {e}")),
        }
    }

    fn outcome(&self) -> Outcome {
        let msg = format!("worst {:.3e} <= {:.1e} at {}", self.value, self.tol, self.at);
        if self.value <= self.tol {
            Ok(msg)
        } else {
            Err(msg)
        }
    }
}

fn rng(tag: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(DEFAULT_SEED ^ tag)
}

fn sample(r: &mut ChaCha8Rng, re: (f64, f64), im: (f64, f64)) -> (f64, f64) {
    (r.gen_range(re.0..re.1), r.gen_range(im.0..im.1))
}

/// |z| ≤ radius, at least 0.1 from the real axis left of 1/2.
fn off_poles(r: &mut ChaCha8Rng, n: usize, radius: f64) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    while out.len() < n {
        let z = sample(r, (-radius, radius), (-radius, radius));
        if z.0.hypot(z.1) <= radius && (z.0 > 0.5 || z.1.abs() > 0.1) {
            out.push(z);
        }
    }
    out
}

fn c(ctx: &PrecisionContext, z: (f64, f64)) -> Cx {
    Cx::from_f64(ctx.work(), z.0, z.1)
}

fn chi_of_conductor(q: u64) -> DirichletCharacter {
    if q == 1 {
        return DirichletCharacter::principal(1);
    }
    enumerate_characters(q).into_iter().find(|x| x.conductor() == q).expect("primitive character exists")
}

fn multigamma_suite(ctx: &PrecisionContext) -> Outcome {
    let start = Instant::now();
    let tol = 2f64.powi(-152);
    let mut w = Worst::new(tol);
    let levels = [MultiGammaOrder::Gamma, MultiGammaOrder::Gamma2, MultiGammaOrder::Gamma3];
    for (i, z) in off_poles(&mut rng(1), 50, 10.0).into_iter().enumerate() {
        let s = c(ctx, z);
        for level in levels {
            w.add_result(&format!("recurrence {level:?} z{i}"), recurrence_residual(level, &s, ctx))?;
        }
        for level in &levels[..2] {
            for m in [2u64, 3, 5] {
                w.add_result(&format!("multiplication {level:?} m={m} z{i}"), mult_residual(*level, &s, m, ctx))?;
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    let out = w.outcome().map(|m| format!("{m}; {secs:.1}s"));
    if secs > 30.0 {
        return Err(format!("runtime {secs:.1}s > 30s"));
    }
    out
}

fn special_values(ctx: &PrecisionContext) -> Outcome {
    let p = ctx.work();
    let g2 = log_multigamma(MultiGammaOrder::Gamma2, &Cx::from_i64(p, 4), ctx).map_err(|e| e.to_string())?.exp();
    let g3 = log_multigamma(MultiGammaOrder::Gamma3, &Cx::from_i64(p, 5), ctx).map_err(|e| e.to_string())?.exp();
    let e2 = rel_diff(&g2, &Cx::ratio(p, 1, 2));
    let e3 = rel_diff(&g3, &Cx::from_i64(p, 2));
    let msg = format!("Gamma2(4) rel err {e2:.2e}, Gamma3(5) rel err {e3:.2e}");
    if e2 < 1e-40 && e3 < 1e-40 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn product_identity(ctx: &PrecisionContext) -> Outcome {
    let mut w = Worst::new(1e-25);
    for l in [1u64, 2, 3, 5] {
        for (i, z) in off_poles(&mut rng(30 + l), 10, 6.0).into_iter().enumerate() {
            w.add_result(&format!("l={l} z{i}"), product_identity_residual(&c(ctx, z), l, ctx))?;
        }
    }
    w.outcome()
}

fn ladders(ctx: &PrecisionContext) -> Outcome {
    let mut w = Worst::new(1e-25);
    let mut r = rng(4);
    let kinds = [(HigherFactorKind::F, "F"), (HigherFactorKind::G, "G"), (HigherFactorKind::H, "H"), (HigherFactorKind::I, "I")];
    for (kind, label) in kinds {
        let ls: &[i64] = if kind == HigherFactorKind::H { &[1, 2, 3, 4, 5, 6] } else { &[1, 2, 3] };
        for &l in ls {
            for _ in 0..5 {
                let z = sample(&mut r, (0.2, 3.0), (-4.0, 4.0));
                w.add_result(&format!("{label}_{l} at {z:?}"), higher::higher_ladder_residual(kind, &c(ctx, z), l, ctx))?;
            }
        }
    }
    for l in [1i64, 2, 3] {
        for _ in 0..5 {
            let z = sample(&mut r, (0.2, 3.0), (-4.0, 4.0));
            w.add_result(&format!("J_{l} at {z:?}"), higher_l::j_l_ladder_residual(&c(ctx, z), l, ctx))?;
        }
    }
    let d = group_data(Family::Gamma0, 1, None).map_err(|e| e.to_string())?;
    for (part, label) in [(XiPart::I, "I"), (XiPart::Ell, "ell"), (XiPart::Par, "par")] {
        for l in [1i64, 2, 3] {
            let lo = 1.3 - l as f64;
            for _ in 0..5 {
                let z = sample(&mut r, (lo, lo + 2.5), (-3.0, 3.0));
                let res = higher::assembly_ladder_residual(part, &c(ctx, z), l, &d, ctx);
                w.add_result(&format!("Xi_({l}inf,{label}) at {z:?}"), res)?;
            }
        }
    }
    w.outcome()
}

fn reflection(ctx: &PrecisionContext) -> Outcome {
    let mut w = Worst::new(1e-25);
    for l in [1i64, 2, 3, 5] {
        let mut r = rng(50 + l as u64);
        for _ in 0..20 {
            let s = sample(&mut r, (-2.0, 3.0), (-3.0, 3.0));
            let rr = sample(&mut r, (-4.0, 4.0), (-0.4, 0.4));
            let res = higher::reflection_identity_residual(&c(ctx, s), &c(ctx, rr), l, ctx);
            w.add_result(&format!("l={l} s={s:?} r={rr:?}"), res)?;
        }
        w.add_result(&format!("lattice sum l={l}"), higher::lattice_sum_residual(l, ctx))?;
    }
    w.outcome()
}

fn fourier(ctx: &PrecisionContext) -> Outcome {
    let mut w = Worst::new(1e-10);
    for l in [1i64, 2] {
        let mut r = rng(60 + l as u64);
        for _ in 0..5 {
            let s = sample(&mut r, (0.6, 2.0), (-2.0, 2.0));
            let rr: f64 = r.gen_range(-5.0..5.0);
            let res = higher::fourier_residual(&c(ctx, s), rr, l, ctx).map(|(v, _)| v);
            w.add_result(&format!("l={l} s={s:?} r={rr:.3}"), res)?;
        }
    }
    w.outcome()
}

fn phi(n: u64) -> u64 {
    (1..=n).filter(|&k| gcd(k, n) == 1).count() as u64
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Textbook cusp numbers of Γ₀(N), Γ₁(N), Γ(N).
fn classical_cusps(family: Family, n: u64) -> u64 {
    let divs: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
    match family {
        Family::Gamma0 => divs.iter().map(|&d| phi(gcd(d, n / d))).sum(),
        Family::Gamma1 => match n {
            1 => 1,
            2 => 2,
            4 => 3,
            _ => divs.iter().map(|&d| phi(d) * phi(n / d)).sum::<u64>() / 2,
        },
        Family::GammaFull => match n {
            1 => 1,
            2 => 3,
            _ => {
                let (mut num, mut den) = (n * n, 2u64);
                for p in (2..=n).filter(|&p| n % p == 0 && (2..p).all(|k| p % k != 0)) {
                    num *= p * p - 1;
                    den *= p * p;
                }
                num / den
            }
        },
    }
}

fn scattering(ctx: &PrecisionContext) -> Outcome {
    for family in Family::ALL {
        for n in 1..=60 {
            let got = enumerate_pairs(family, n).len() as u64;
            let want = classical_cusps(family, n);
            if got != want {
                return Err(format!("{family}({n}): {got} pairs, {want} cusps"));
            }
        }
    }
    let d1 = group_data(Family::Gamma0, 1, None).map_err(|e| e.to_string())?;
    if d1.kappa != 1 || d1.a_const != 1 {
        return Err(format!("Gamma0(1): kappa={}, A={}", d1.kappa, d1.a_const));
    }
    let mut w = Worst::new(1e-25);
    let p = ctx.work();
    for n in [1u64, 2, 3, 4, 6] {
        let partial = group_data_partial(Family::Gamma0, n, None).map_err(|e| e.to_string())?;
        let k0 = partial.kappa0.unwrap_or(partial.kappa as i64);
        let d = group_data(Family::Gamma0, n, Some(k0)).map_err(|e| e.to_string())?;
        let mut r = rng(70 + n);
        for _ in 0..10 {
            let z = sample(&mut r, (-1.0, 2.0), (-6.0, 6.0));
            let s = c(ctx, z);
            let res = scattering_det(&s, &d, ctx)
                .and_then(|a| Ok(&a * &scattering_det(&(Cx::one(p) - &s), &d, ctx)?))
                .map(|v| (v - Cx::one(p)).abs_f64());
            w.add_result(&format!("Gamma0({n}) s={z:?}"), res)?;
        }
    }
    w.outcome().map(|m| format!("census N<=60 exact, Gamma0(1) kappa=1 A=1, phi(s)phi(1-s): {m}"))
}

fn q(n: i64, d: i64) -> Q {
    Q::new(n, d)
}

/// Orders listed for Ξ_hyp of SL(2, Z).
fn expected_selberg(lo: i64) -> Vec<(Q, i64)> {
    let mut v = vec![(q(0, 1), -1), (q(1, 1), 1)];
    let mut k = 0;
    while q(1, 2) - k >= q(lo, 1) {
        v.push((q(1, 2) - k, -1));
        k += 1;
    }
    for k in 0..=(-lo / 6 + 1) {
        for j in [1, 2, 3, 4, 6] {
            v.push((q(-6 * k - j, 1), 2 * k + 1));
        }
        v.push((q(-6 * k - 5, 1), 2 * k + 3));
    }
    v.retain(|e| e.0 >= q(lo, 1));
    v.sort();
    v
}

/// Orders listed for Ξ_{1∞,hyp} of SL(2, Z).
fn expected_higher(lo: i64) -> Vec<(Q, i64)> {
    let mut v = vec![(q(0, 1), -1)];
    let mut k = 0;
    while q(-1, 2) - k >= q(lo, 1) {
        v.push((q(-1, 2) - k, k + 1));
        k += 1;
    }
    for k in 0..=(-lo / 6 + 1) {
        for j in 2..=7 {
            let ord = 6 * k * k + 2 * j * k + j + if j <= 5 { -1 } else { 1 };
            v.push((q(-6 * k - j, 1), -ord));
        }
    }
    v.retain(|e| e.0 >= q(lo, 1));
    v.sort();
    v
}

fn catalogs() -> Outcome {
    let d = group_data(Family::Gamma0, 1, None).map_err(|e| e.to_string())?;
    let (lo, hi) = (q(-40, 1), q(1, 1));
    let sel = hzeta::selberg::catalog_selberg(&d, lo, hi).map_err(|e| e.to_string())?;
    let hig = higher::catalog_higher(&d, 1, lo, hi).map_err(|e| e.to_string())?;
    let mut n = 0;
    for (name, cat, want) in [("Xi_hyp", sel, expected_selberg(-40)), ("Xi_1inf,hyp", hig, expected_higher(-40))] {
        let got: Vec<(Q, i64)> = cat.iter().filter_map(|e| e.point().map(|s| (s, e.order))).collect();
        if got != want {
            let diff = want.iter().find(|w| !got.contains(w)).or_else(|| got.iter().find(|g| !want.contains(g)));
            return Err(format!("{name}: first mismatch {diff:?}"));
        }
        n += got.len();
    }
    Ok(format!("{n} points on [-40, 1] match exactly"))
}

fn dirichlet_block(ctx: &PrecisionContext) -> Outcome {
    let p = ctx.work();
    let two = Cx::from_i64(p, 2);
    let zeta2 = dirichlet_l(&two, &DirichletCharacter::principal(1), ctx).map_err(|e| e.to_string())?;
    let pi2_6 = Cx::real(Float::with_val(p, pi(p).square_ref()) / 6u32);
    let l4 = dirichlet_l(&two, &chi_of_conductor(4), ctx).map_err(|e| e.to_string())?;
    let catalan = Cx::real(Float::with_val(p, rug::float::Constant::Catalan));
    let e1 = (zeta2 - pi2_6).abs_f64();
    let e2 = (l4 - catalan).abs_f64();
    if e1 > 1e-30 || e2 > 1e-30 {
        return Err(format!("L(2,chi0) err {e1:.2e}, L(2,chi4) err {e2:.2e}"));
    }
    let mut w = Worst::new(1e-25);
    for cond in [1u64, 3, 4, 5] {
        let mut r = rng(90 + cond);
        let chars: Vec<_> = enumerate_characters(cond.max(1)).into_iter().filter(|x| x.conductor() == cond).collect();
        let chars = if cond == 1 { vec![DirichletCharacter::principal(1)] } else { chars };
        for _ in 0..10 {
            let z = sample(&mut r, (-2.0, 3.0), (-8.0, 8.0));
            let s = c(ctx, z);
            for chi in &chars {
                let res = xi_complete(&s, chi, ctx).and_then(|a| {
                    let b = &root_number(chi, ctx)? * &xi_complete(&(Cx::one(p) - &s), &chi.conj(), ctx)?;
                    Ok(rel_diff(&a, &b))
                });
                w.add_result(&format!("q={cond} label {} s={z:?}", chi.label()), res)?;
            }
        }
    }
    w.outcome().map(|m| format!("L(2) errors {e1:.1e}, {e2:.1e}; xi FE {m}"))
}

fn higher_l_ladders(ctx: &PrecisionContext) -> Outcome {
    let mut w = Worst::new(1e-25);
    let mut r = rng(10);
    for l in [1i64, 2, 3] {
        for cond in [1u64, 3, 4] {
            let chi = chi_of_conductor(cond);
            for _ in 0..3 {
                let z = sample(&mut r, (-0.5, 2.0), (-3.0, 3.0));
                let s = c(ctx, z);
                w.add_result(&format!("L l={l} q={cond} {z:?}"), higher_l::l_linf_ladder_residual(&s, l, &chi, ctx))?;
                w.add_result(&format!("xi l={l} q={cond} {z:?}"), higher_l::xi_linf_ladder_residual(&s, l, &chi, ctx))?;
            }
        }
    }
    let ladder = w.outcome()?;
    let p = ctx.work();
    let rho = Cx::new(Float::with_val(p, 0.5f64), bundled_zeta_zeros().ordinate(0, p));
    let v = higher_l::log_xi_linf_l(&rho.add_i64(-1), 1, &DirichletCharacter::principal(1), ctx).map_err(|e| e.to_string())?;
    let m = v.re.to_f64().exp();
    if m <= 1e-6 {
        Ok(format!("{ladder}; |xi_1inf(rho_1 - 1)| = {m:.2e}"))
    } else {
        Err(format!("|xi_1inf(rho_1 - 1)| = {m:.2e} > 1e-6"))
    }
}

fn weil(ctx: &PrecisionContext) -> Outcome {
    let start = Instant::now();
    let zeros = bundled_zeta_zeros();
    if zeros.len() < 100 {
        return Err(format!("only {} bundled zeros", zeros.len()));
    }
    let h = HigherLContext::new(1, DirichletCharacter::principal(1), zeros).map_err(|e| e.to_string())?;
    if h.prime_cut != 1_000_000 {
        return Err(format!("prime cut {}", h.prime_cut));
    }
    let mut w = Worst::new(1e-3);
    let mut ps = Worst::new(1e-9);
    for s in [1.2f64, 1.5, 2.0] {
        let rep = higher_l::weil_report(&Cx::from_f64(ctx.work(), s, 0.0), &h, ctx).map_err(|e| e.to_string())?;
        w.add(rep.residual, || format!("s={s}"));
        ps.add((rep.prime_side - rep.prime_series).norm(), || format!("s={s}"));
    }
    let secs = start.elapsed().as_secs_f64();
    let a = w.outcome()?;
    let b = ps.outcome()?;
    if secs > 300.0 {
        return Err(format!("runtime {secs:.1}s > 300s"));
    }
    Ok(format!("residual {a}; prime side vs series {b}; {secs:.1}s"))
}

fn hat_xi_fe(ctx: &PrecisionContext) -> Outcome {
    let mut w = Worst::new(1e-3);
    let mut fit_w = Worst::new(1e-3);
    for l in [1i64, 2] {
        let h = HigherLContext::new(l, DirichletCharacter::principal(1), bundled_zeta_zeros()).map_err(|e| e.to_string())?;
        let c0 = (1 - l) as f64 / 2.0;
        for z in [(c0 + 0.8, 0.2), (c0 - 0.7, 0.0), (c0 + 0.25, 0.6), (c0 - 0.4, -0.5), (c0 + 1.1, -0.3)] {
            let res = higher_l::functional_eq_l_residual(&c(ctx, z), &h, ctx).map(|(v, _)| v);
            w.add_result(&format!("l={l} {z:?}"), res)?;
        }
        let fit = higher_l::affine_fit(&c(ctx, (c0 - 0.6, -0.2)), &c(ctx, (c0 + 0.9, 0.4)), &h, ctx).map_err(|e| e.to_string())?;
        fit_w.add(fit.max_deviation, || format!("l={l}"));
    }
    let a = w.outcome()?;
    let b = fit_w.outcome()?;
    Ok(format!("second differences {a}; affine fit {b}"))
}

fn theta(ctx: &PrecisionContext) -> Outcome {
    let mut per = Worst::new(1e-25);
    let mut d2 = Worst::new(1e-10);
    let mut r = rng(13);
    let lists = [("synthetic", SpectralList::from_reals(&[2.4, 4.9, 7.3, 10.6])), ("bundled", higher::bundled_maass_g0_1())];
    for (tag, spectrum) in &lists {
        for l in [1i64, 2, 3] {
            for _ in 0..4 {
                let z = sample(&mut r, (-2.0, 2.0), (-1.0, 1.0));
                let s = c(ctx, z);
                let res = higher::theta_linf(&s, l, spectrum, ctx)
                    .and_then(|a| Ok(rel_diff(&a.value, &higher::theta_linf(&s.add_i64(l), l, spectrum, ctx)?.value)));
                per.add_result(&format!("Theta {tag} l={l} {z:?}"), res)?;
                let res = higher::theta_second_logderiv_residual(&s, l, spectrum, ctx);
                d2.add_result(&format!("Theta'' {tag} l={l} {z:?}"), res)?;
            }
        }
    }
    for l in [1i64, 2] {
        let h = HigherLContext::new(l, DirichletCharacter::principal(1), bundled_zeta_zeros()).map_err(|e| e.to_string())?;
        for _ in 0..4 {
            let z = sample(&mut r, (-2.0, 2.0), (-1.0, 1.0));
            per.add(higher_l::theta_periodicity_residual(&c(ctx, z), &h, ctx), || format!("theta zeta zeros l={l} {z:?}"));
        }
    }
    let a = per.outcome()?;
    let b = d2.outcome()?;
    Ok(format!("periodicity {a}; second log-derivative {b}"))
}

fn main() -> ExitCode {
    let ctx = PrecisionContext::new(192).expect("192 bits is valid");
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome>)> = vec![
        ("multigamma recurrences and multiplication", Box::new(|| multigamma_suite(&ctx))),
        ("Gamma2(4) = 1/2, Gamma3(5) = 2", Box::new(|| special_values(&ctx))),
        ("Gamma2/Gamma product identity", Box::new(|| product_identity(&ctx))),
        ("F, G, H, I, J and assembly ladders", Box::new(|| ladders(&ctx))),
        ("reflection identity and lattice sum", Box::new(|| reflection(&ctx))),
        ("Fourier pair g <-> phi_s", Box::new(|| fourier(&ctx))),
        ("scattering census and phi(s)phi(1-s)", Box::new(|| scattering(&ctx))),
        ("divisor catalogs", Box::new(catalogs)),
        ("Dirichlet L values and xi functional equation", Box::new(|| dirichlet_block(&ctx))),
        ("higher L ladders and xi_1inf zero", Box::new(|| higher_l_ladders(&ctx))),
        ("Weil explicit formula", Box::new(|| weil(&ctx))),
        ("hat-xi functional equation and affine fit", Box::new(|| hat_xi_fe(&ctx))),
        ("Theta/theta periodicity and Theta''", Box::new(|| theta(&ctx))),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = f();
        let secs = start.elapsed().as_secs_f64();
        match out {
            Ok(msg) => println!("PASS {:>2}. {name} ({secs:.1}s): {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL {:>2}. {name} ({secs:.1}s): {msg}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
