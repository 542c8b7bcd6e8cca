use hzeta::congruence::{group_data, Family};
use hzeta::cx::rel_diff;
use hzeta::dirichlet::{enumerate_characters, root_number, xi_complete};
use hzeta::divisor::Location;
use hzeta::higher::{self, HigherFactorKind, XiPart};
use hzeta::higher_l;
use hzeta::multigamma::{mult_residual, recurrence_residual, MultiGammaOrder};
use hzeta::{Cx, Error, PrecisionContext};
use num_rational::Ratio;
use proptest::prelude::*;

fn ctx() -> PrecisionContext {
    PrecisionContext::default()
}

fn cx(c: &PrecisionContext, (re, im): (f64, f64)) -> Cx {
    Cx::from_f64(c.work(), re, im)
}

/// Points with |Im| ≥ 0.2, away from every real pole.
fn off_axis(re: std::ops::Range<f64>) -> impl Strategy<Value = (f64, f64)> {
    (re, 0.2f64..3.0, any::<bool>()).prop_map(|(x, y, neg)| (x, if neg { -y } else { y }))
}

const LEVELS: [MultiGammaOrder; 3] = [MultiGammaOrder::Gamma, MultiGammaOrder::Gamma2, MultiGammaOrder::Gamma3];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn multigamma_recurrence(z in off_axis(-4.0..6.0), k in 0usize..3) {
        let c = ctx();
        prop_assert!(recurrence_residual(LEVELS[k], &cx(&c, z), &c).unwrap() <= c.tol_closed);
    }

    #[test]
    fn multigamma_multiplication(z in off_axis(-3.0..4.0), k in 0usize..2, m in prop::sample::select(vec![2u64, 3, 5])) {
        let c = ctx();
        prop_assert!(mult_residual(LEVELS[k], &cx(&c, z), m, &c).unwrap() <= c.tol_closed);
        let level3 = mult_residual(MultiGammaOrder::Gamma3, &cx(&c, z), m, &c);
        prop_assert!(matches!(level3, Err(Error::Unsupported(_))));
    }

    #[test]
    fn xi_functional_equation(z in off_axis(-2.0..3.0), q in 1u64..8) {
        let c = ctx();
        let s = cx(&c, z);
        for chi in enumerate_characters(q).into_iter().filter(|x| x.is_primitive()) {
            let a = xi_complete(&s, &chi, &c).unwrap();
            let b = &root_number(&chi, &c).unwrap() * &xi_complete(&(Cx::one(c.work()) - &s), &chi.conj(), &c).unwrap();
            prop_assert!(rel_diff(&a, &b) <= c.tol_closed, "q={q}");
        }
    }

    #[test]
    fn higher_factor_ladders(z in off_axis(-3.0..3.0), l in 1i64..7, k in 0usize..4) {
        let c = ctx();
        let kind = [HigherFactorKind::F, HigherFactorKind::G, HigherFactorKind::H, HigherFactorKind::I][k];
        prop_assert!(higher::higher_ladder_residual(kind, &cx(&c, z), l, &c).unwrap() <= c.tol_closed);
        prop_assert!(higher_l::j_l_ladder_residual(&cx(&c, z), l, &c).unwrap() <= c.tol_closed);
    }

    #[test]
    fn assembly_ladders(z in off_axis(-2.0..2.0), l in 1i64..4, k in 0usize..3) {
        let c = ctx();
        let data = group_data(Family::Gamma0, 1, None).unwrap();
        let part = [XiPart::I, XiPart::Ell, XiPart::Par][k];
        prop_assert!(higher::assembly_ladder_residual(part, &cx(&c, z), l, &data, &c).unwrap() <= c.tol_closed);
    }

    #[test]
    fn reflection(z in off_axis(-2.0..3.0), r in (-3.0f64..3.0, -0.4f64..0.4), l in prop::sample::select(vec![1i64, 2, 3, 5])) {
        let c = ctx();
        prop_assert!(higher::reflection_identity_residual(&cx(&c, z), &cx(&c, r), l, &c).unwrap() <= c.tol_closed);
    }

    #[test]
    fn higher_l_ladder(z in off_axis(-1.0..2.0), l in 1i64..4, q in prop::sample::select(vec![1u64, 3, 4])) {
        let c = ctx();
        let chi = enumerate_characters(q).into_iter().find(|x| x.conductor() == q).unwrap();
        prop_assert!(higher_l::l_linf_ladder_residual(&cx(&c, z), l, &chi, &c).unwrap() <= c.tol_closed);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn catalog_orders_are_integral_sums(l in 1i64..5, lo in -30i64..-2) {
        let data = group_data(Family::Gamma0, 1, None).unwrap();
        let lo = Ratio::from_integer(lo);
        let hi = Ratio::from_integer(1);
        let sel = hzeta::selberg::catalog_selberg(&data, lo, hi).unwrap();
        let hig = higher::catalog_higher(&data, l, lo, hi).unwrap();
        for cat in [sel, hig] {
            let mut last = None;
            for e in &cat {
                if let Location::Point(s) = e.location {
                    let sum: Ratio<i64> = e.breakdown.iter().map(|(_, q)| *q).sum();
                    prop_assert!(sum.is_integer());
                    prop_assert_eq!(sum.to_integer(), e.order);
                    prop_assert!(e.order != 0);
                    prop_assert!(s >= lo && s <= hi);
                    prop_assert!(last.map_or(true, |t| t < s));
                    last = Some(s);
                } else {
                    prop_assert!(e.order == 1 || e.order == -1);
                }
            }
        }
    }

    #[test]
    fn spectral_list_parsing(steps in prop::collection::vec(1u32..5000, 1..12), imag in prop::option::of(1u32..=500)) {
        let mut text = String::from("# r_n\n");
        if let Some(y) = imag {
            text.push_str(&format!("i*{}\n", y as f64 / 1000.0));
        }
        let mut acc = 0u32;
        for s in &steps {
            acc += s;
            text.push_str(&format!("{}\n", acc as f64 / 1000.0));
        }
        let list = higher::parse_spectral_list(&text, "gen").unwrap();
        prop_assert_eq!(list.len(), steps.len() + imag.is_some() as usize);
        if steps.len() > 1 {
            let mut lines: Vec<&str> = text.lines().collect();
            let n = lines.len();
            lines.swap(n - 1, n - 2);
            let bad = lines.join("\n");
            let is_monotonicity = matches!(higher::parse_spectral_list(&bad, "gen"), Err(Error::Monotonicity { .. }));
            prop_assert!(is_monotonicity);
        }
    }
}

#[test]
fn spectral_list_rejects_junk() {
    assert!(matches!(higher::parse_spectral_list("1.0\nabc\n", "x"), Err(Error::Parse { line: 2, .. })));
    assert!(higher::parse_spectral_list("-1.0\n", "x").is_err());
    assert!(higher::parse_spectral_list("2.0\ni/2\n", "x").is_err());
}
