use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rug::float::Constant;
use rug::Float;

use super::hurwitz::zeta_deriv_int;
use crate::ctx::PrecisionContext;
use crate::cx::pi;

#[derive(Debug, Clone)]
pub struct Constants {
    pub euler_gamma: Float,
    pub log_glaisher: Float,
    pub zeta_prime_0: Float,
    pub zeta_prime_m1: Float,
    pub pi: Float,
    pub ln_2pi: Float,
}

/// Constants at the context's working precision, computed once per precision.
pub fn constants(ctx: &PrecisionContext) -> Arc<Constants> {
    static C: OnceLock<Mutex<HashMap<u32, Arc<Constants>>>> = OnceLock::new();
    let p = ctx.work();
    let m = C.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(c) = m.lock().expect("constants poisoned").get(&p) {
        return c.clone();
    }
    let zeta_prime_m1 = zeta_deriv_int(-1, ctx);
    let log_glaisher = Float::with_val(p, 1) / 12u32 - &zeta_prime_m1;
    let mut ln_2pi = pi(p) * 2u32;
    ln_2pi.ln_mut();
    let c = Arc::new(Constants {
        euler_gamma: Float::with_val(p, Constant::Euler),
        zeta_prime_0: zeta_deriv_int(0, ctx),
        zeta_prime_m1,
        log_glaisher,
        pi: pi(p),
        ln_2pi,
    });
    m.lock().expect("constants poisoned").entry(p).or_insert(c).clone()
}
