//! Bernoulli numbers and the derived Euler-Maclaurin / Stirling coefficients.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock, RwLock};

use rug::{Float, Integer, Rational};

/// Number of correction terms cached for a given working precision.
pub fn max_terms(work_bits: u32) -> usize {
    work_bits as usize / 4 + 24
}

fn table() -> &'static RwLock<Vec<Rational>> {
    static T: OnceLock<RwLock<Vec<Rational>>> = OnceLock::new();
    T.get_or_init(|| RwLock::new(vec![Rational::from(1), Rational::from((-1, 2))]))
}

/// B_n for n up to `n_max`, extending the shared table if needed.
pub fn bernoulli_upto(n_max: usize) -> Vec<Rational> {
    {
        let t = table().read().expect("bernoulli table poisoned");
        if t.len() > n_max {
            return t[..=n_max].to_vec();
        }
    }
    let mut t = table().write().expect("bernoulli table poisoned");
    while t.len() <= n_max {
        let n = t.len();
        if n % 2 == 1 {
            t.push(Rational::new());
            continue;
        }
        // sum_{k<n} C(n+1, k) B_k = -(n+1) B_n
        let mut acc = Rational::new();
        let mut binom = Integer::from(1);
        for (k, b) in t.iter().enumerate() {
            if *b != 0 {
                acc += Rational::from(&binom * b.numer()) / b.denom();
            }
            binom *= (n + 1 - k) as u32;
            binom /= (k + 1) as u32;
        }
        t.push(-acc / (n as u32 + 1));
    }
    t[..=n_max].to_vec()
}

pub fn bernoulli(n: usize) -> Rational {
    bernoulli_upto(n).pop().expect("non-empty")
}

type FloatCache = Mutex<HashMap<u32, Arc<Vec<Float>>>>;

fn cached(cache: &'static OnceLock<FloatCache>, prec: u32, make: fn(u32) -> Vec<Float>) -> Arc<Vec<Float>> {
    let m = cache.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = m.lock().expect("cache poisoned").get(&prec) {
        return v.clone();
    }
    let v = Arc::new(make(prec));
    m.lock().expect("cache poisoned").entry(prec).or_insert(v).clone()
}

/// `c[k-1] = B_{2k} / (2k)!` for k = 1..=max_terms(prec).
pub fn em_coeffs(prec: u32) -> Arc<Vec<Float>> {
    static C: OnceLock<FloatCache> = OnceLock::new();
    cached(&C, prec, |prec| {
        let kmax = max_terms(prec);
        let bs = bernoulli_upto(2 * kmax);
        let mut fact = Integer::from(1);
        let mut out = Vec::with_capacity(kmax);
        for k in 1..=kmax {
            fact *= (2 * k - 1) as u32;
            fact *= (2 * k) as u32;
            let q = Rational::from(&bs[2 * k] / Rational::from(&fact));
            out.push(Float::with_val(prec, &q));
        }
        out
    })
}

/// `s[k-1] = B_{2k} / (2k (2k-1))`, the Stirling series coefficients.
pub fn stirling_coeffs(prec: u32) -> Arc<Vec<Float>> {
    static C: OnceLock<FloatCache> = OnceLock::new();
    cached(&C, prec, |prec| {
        let kmax = max_terms(prec);
        let bs = bernoulli_upto(2 * kmax);
        (1..=kmax)
            .map(|k| {
                let d = (2 * k * (2 * k - 1)) as u32;
                Float::with_val(prec, &Rational::from(&bs[2 * k] / d))
            })
            .collect()
    })
}

/// `B_{2k}` as floats, k = 1..=max_terms(prec).
pub fn b2k(prec: u32) -> Arc<Vec<Float>> {
    static C: OnceLock<FloatCache> = OnceLock::new();
    cached(&C, prec, |prec| {
        let kmax = max_terms(prec);
        let bs = bernoulli_upto(2 * kmax);
        (1..=kmax).map(|k| Float::with_val(prec, &bs[2 * k])).collect()
    })
}
