use crate::error::{Error, Result};

/// Extra bits carried internally on top of the requested precision.
pub const GUARD_BITS: u32 = 32;

/// Working precision and the tolerance policy derived from it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrecisionContext {
    pub prec_bits: u32,
    pub tol_closed: f64,
    pub tol_quad: f64,
    pub tol_trunc: f64,
}

impl PrecisionContext {
    pub const MIN_BITS: u32 = 64;
    pub const MAX_BITS: u32 = 1000;

    pub fn new(prec_bits: u32) -> Result<Self> {
        if !(Self::MIN_BITS..=Self::MAX_BITS).contains(&prec_bits) {
            return Err(Error::Domain(format!(
                "prec_bits must lie in [{}, {}], got {prec_bits}",
                Self::MIN_BITS,
                Self::MAX_BITS
            )));
        }
        let ctx = PrecisionContext {
            prec_bits,
            tol_closed: 2f64.powi(40 - prec_bits as i32),
            tol_quad: 1e-10f64.max(2f64.powi(44 - prec_bits as i32)),
            tol_trunc: 1e-3,
        };
        debug_assert!(ctx.tol_closed < ctx.tol_quad && ctx.tol_quad < ctx.tol_trunc);
        Ok(ctx)
    }

    /// Precision used for intermediate arithmetic.
    pub fn work(&self) -> u32 {
        self.prec_bits + GUARD_BITS
    }

    /// Shift target for Euler-Maclaurin and Stirling: arguments are moved
    /// to real part at least this large before the asymptotic tail is used.
    pub fn em_shift(&self) -> f64 {
        (0.7 * self.work() as f64).ceil()
    }

    /// Significant decimal digits covered by `tol_closed`.
    pub fn digits(&self) -> usize {
        (((self.prec_bits - 40) as f64) * std::f64::consts::LOG10_2).floor() as usize
    }
}

impl Default for PrecisionContext {
    fn default() -> Self {
        PrecisionContext::new(192).expect("default precision is valid")
    }
}
