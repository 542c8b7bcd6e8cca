use hzeta::congruence::{cusp_count, elliptic_counts, enumerate_pairs, genus, group_data_partial, psl_index, Family};
use hzeta::numcore::arith::gcd;

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn primitive(n: u64) -> Vec<(u64, u64)> {
    let mut v = Vec::new();
    for a in 0..n {
        for c in 0..n {
            if gcd(gcd(a, c), n) == 1 {
                v.push((a, c));
            }
        }
    }
    v
}

/// Orbits of ±(image of the group mod N) on primitive vectors (a, c) mod N.
fn cusps_by_orbits(family: Family, n: u64) -> u64 {
    if n == 1 {
        return 1;
    }
    let idx = |a: u64, c: u64| (a * n + c) as usize;
    let mut parent: Vec<usize> = (0..(n * n) as usize).collect();
    let units: Vec<u64> = match family {
        Family::Gamma0 => (1..n).filter(|&u| gcd(u, n) == 1).collect(),
        _ => vec![1, n - 1],
    };
    let shifts: Vec<u64> = match family {
        Family::GammaFull => vec![0],
        _ => (0..n).collect(),
    };
    for (a, c) in primitive(n) {
        for &u in &units {
            let ui = (1..n).find(|&v| u * v % n == 1).unwrap();
            for &b in &shifts {
                let (a2, c2) = ((u * a + b * c) % n, ui * c % n);
                let (x, y) = (find(&mut parent, idx(a, c)), find(&mut parent, idx(a2, c2)));
                parent[x] = y;
            }
        }
        let (x, y) = (find(&mut parent, idx(a, c)), find(&mut parent, idx((n - a) % n, (n - c) % n)));
        parent[x] = y;
    }
    let mut roots: Vec<usize> = primitive(n).into_iter().map(|(a, c)| find(&mut parent, idx(a, c))).collect();
    roots.sort_unstable();
    roots.dedup();
    roots.len() as u64
}

fn index_by_count(family: Family, n: u64) -> u64 {
    let prim = primitive(n).len() as u64;
    let phi = (1..=n).filter(|&u| gcd(u, n) == 1).count() as u64;
    let minus_i_in = n <= 2;
    match family {
        Family::Gamma0 => prim / phi,
        Family::Gamma1 => if minus_i_in { prim } else { prim / 2 },
        Family::GammaFull => if minus_i_in { prim * n } else { prim * n / 2 },
    }
}

fn roots_mod(n: u64, f: impl Fn(u64) -> u64) -> u64 {
    (0..n).filter(|&x| f(x) % n == 0).count() as u64
}

#[test]
fn cusp_counts_and_pairs_up_to_60() {
    for family in Family::ALL {
        for n in 1..=60 {
            let want = cusps_by_orbits(family, n);
            assert_eq!(cusp_count(family, n), want, "{family}({n})");
            assert_eq!(enumerate_pairs(family, n).len() as u64, want, "pairs {family}({n})");
            assert_eq!(psl_index(family, n), index_by_count(family, n), "index {family}({n})");
        }
    }
}

#[test]
fn elliptic_points_gamma0() {
    for n in 1..=60 {
        let nu2 = if n == 1 { 1 } else { roots_mod(n, |x| x * x + 1) };
        let nu3 = if n == 1 { 1 } else { roots_mod(n, |x| x * x + x + 1) };
        assert_eq!(elliptic_counts(Family::Gamma0, n), (nu2, nu3), "Gamma0({n})");
    }
}

#[test]
fn gauss_bonnet() {
    // μ/6 = 2g - 2 + κ + ν₂/2 + 2ν₃/3
    for family in Family::ALL {
        for n in 1..=60 {
            let g = genus(family, n);
            assert!(g >= 0);
            let (nu2, nu3) = elliptic_counts(family, n);
            let rhs6 = 6 * (2 * g - 2 + cusp_count(family, n) as i64) + 3 * nu2 as i64 + 4 * nu3 as i64;
            assert_eq!(psl_index(family, n) as i64, rhs6, "{family}({n})");
        }
    }
    let known = [(Family::Gamma0, 11, 1), (Family::Gamma0, 23, 2), (Family::Gamma0, 37, 2), (Family::Gamma1, 13, 2), (Family::GammaFull, 7, 3)];
    for (f, n, g) in known {
        assert_eq!(genus(f, n), g, "{f}({n})");
    }
}

#[test]
fn sl2z_constants() {
    let d = group_data_partial(Family::Gamma0, 1, None).unwrap();
    assert_eq!(d.kappa, 1);
    assert_eq!(d.a_const, 1);
    assert_eq!(d.kappa0().unwrap(), 1);
}
