//! Complex numbers over MPFR floats.
//!
//! The system MPC library is not a dependency, so the handful of complex
//! elementary functions the crate needs are written out here.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use rug::float::Constant;
use rug::Float;

#[derive(Clone, PartialEq)]
pub struct Cx {
    pub re: Float,
    pub im: Float,
}

pub fn pi(prec: u32) -> Float {
    Float::with_val(prec, Constant::Pi)
}

pub fn fl(prec: u32, x: f64) -> Float {
    Float::with_val(prec, x)
}

impl Cx {
    pub fn new(re: Float, im: Float) -> Cx {
        Cx { re, im }
    }

    pub fn zero(prec: u32) -> Cx {
        Cx::new(Float::new(prec), Float::new(prec))
    }

    pub fn one(prec: u32) -> Cx {
        Cx::from_f64(prec, 1.0, 0.0)
    }

    pub fn i(prec: u32) -> Cx {
        Cx::from_f64(prec, 0.0, 1.0)
    }

    pub fn from_f64(prec: u32, re: f64, im: f64) -> Cx {
        Cx::new(Float::with_val(prec, re), Float::with_val(prec, im))
    }

    pub fn from_i64(prec: u32, n: i64) -> Cx {
        Cx::new(Float::with_val(prec, n), Float::new(prec))
    }

    pub fn real(x: Float) -> Cx {
        let prec = x.prec();
        Cx::new(x, Float::new(prec))
    }

    pub fn ratio(prec: u32, num: i64, den: i64) -> Cx {
        let mut x = Float::with_val(prec, num);
        x /= den;
        Cx::real(x)
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    pub fn with_prec(&self, prec: u32) -> Cx {
        Cx::new(Float::with_val(prec, &self.re), Float::with_val(prec, &self.im))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    pub fn abs(&self) -> Float {
        Float::with_val(self.prec(), self.re.hypot_ref(&self.im))
    }

    pub fn abs_f64(&self) -> f64 {
        self.abs().to_f64()
    }

    /// Argument in (-pi, pi]; a signed zero imaginary part is read as +0 so
    /// that the negative real axis always maps to +pi.
    pub fn arg(&self) -> Float {
        let p = self.prec();
        if self.im.is_zero() {
            if self.re.is_sign_negative() && !self.re.is_zero() {
                return pi(p);
            }
            return Float::new(p);
        }
        Float::with_val(p, self.im.atan2_ref(&self.re))
    }

    pub fn conj(&self) -> Cx {
        Cx::new(self.re.clone(), Float::with_val(self.im.prec(), -&self.im))
    }

    pub fn mul_i(&self) -> Cx {
        Cx::new(Float::with_val(self.im.prec(), -&self.im), self.re.clone())
    }

    pub fn sqr(&self) -> Cx {
        self * self
    }

    pub fn norm(&self) -> Float {
        let p = self.prec();
        let a = Float::with_val(p, self.re.square_ref());
        a + Float::with_val(p, self.im.square_ref())
    }

    pub fn recip(&self) -> Cx {
        let p = self.prec();
        let n = self.norm();
        Cx::new(
            Float::with_val(p, &self.re / &n),
            Float::with_val(p, -(Float::with_val(p, &self.im / &n))),
        )
    }

    pub fn scale(&self, x: &Float) -> Cx {
        let p = self.prec();
        Cx::new(Float::with_val(p, &self.re * x), Float::with_val(p, &self.im * x))
    }

    pub fn scale_f64(&self, x: f64) -> Cx {
        let p = self.prec();
        Cx::new(Float::with_val(p, &self.re * x), Float::with_val(p, &self.im * x))
    }

    pub fn scale_i64(&self, x: i64) -> Cx {
        let p = self.prec();
        Cx::new(Float::with_val(p, &self.re * x), Float::with_val(p, &self.im * x))
    }

    pub fn div_i64(&self, x: i64) -> Cx {
        let p = self.prec();
        Cx::new(Float::with_val(p, &self.re / x), Float::with_val(p, &self.im / x))
    }

    pub fn add_real(&self, x: &Float) -> Cx {
        let p = self.prec();
        Cx::new(Float::with_val(p, &self.re + x), self.im.clone())
    }

    pub fn add_f64(&self, x: f64) -> Cx {
        let p = self.prec();
        Cx::new(Float::with_val(p, &self.re + x), self.im.clone())
    }

    pub fn add_i64(&self, x: i64) -> Cx {
        let p = self.prec();
        Cx::new(Float::with_val(p, &self.re + x), self.im.clone())
    }

    /// Principal logarithm, imaginary part in (-pi, pi].
    pub fn ln(&self) -> Cx {
        let p = self.prec();
        let r = self.abs();
        Cx::new(Float::with_val(p, r.ln_ref()), self.arg())
    }

    pub fn exp(&self) -> Cx {
        let p = self.prec();
        let m = Float::with_val(p, self.re.exp_ref());
        if self.im.is_zero() {
            return Cx::new(m, Float::new(p));
        }
        let mut s = Float::with_val(p, &self.im);
        let mut c = Float::new(p);
        s.sin_cos_mut(&mut c);
        Cx::new(Float::with_val(p, &m * &c), Float::with_val(p, &m * &s))
    }

    /// `exp(2 pi i x)` for real x.
    pub fn expi2pi(x: &Float) -> Cx {
        let p = x.prec();
        let mut t = pi(p) * x;
        t *= 2;
        let mut c = Float::new(p);
        t.sin_cos_mut(&mut c);
        Cx::new(c, t)
    }

    pub fn sin(&self) -> Cx {
        let p = self.prec();
        let (mut s, mut c) = (Float::with_val(p, &self.re), Float::new(p));
        s.sin_cos_mut(&mut c);
        let (mut sh, mut ch) = (Float::with_val(p, &self.im), Float::new(p));
        sh.sinh_cosh_mut(&mut ch);
        Cx::new(s * ch, c * sh)
    }

    pub fn cos(&self) -> Cx {
        let p = self.prec();
        let (mut s, mut c) = (Float::with_val(p, &self.re), Float::new(p));
        s.sin_cos_mut(&mut c);
        let (mut sh, mut ch) = (Float::with_val(p, &self.im), Float::new(p));
        sh.sinh_cosh_mut(&mut ch);
        Cx::new(c * ch, -(s * sh))
    }

    pub fn sinh(&self) -> Cx {
        self.mul_i().sin().mul_i().neg_ref()
    }

    pub fn neg_ref(&self) -> Cx {
        Cx::new(
            Float::with_val(self.re.prec(), -&self.re),
            Float::with_val(self.im.prec(), -&self.im),
        )
    }

    pub fn pow(&self, w: &Cx) -> Cx {
        (w * &self.ln()).exp()
    }

    pub fn powi(&self, n: i64) -> Cx {
        let p = self.prec();
        let mut base = if n < 0 { self.recip() } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = Cx::one(p);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = base.sqr();
            }
        }
        acc
    }

    pub fn sqrt(&self) -> Cx {
        self.ln().div_i64(2).exp()
    }
}

impl fmt::Debug for Cx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}i)", self.re.to_f64(), self.im.to_f64())
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&Cx> for &Cx {
            type Output = Cx;
            fn $m(self, o: &Cx) -> Cx {
                let f: fn(&Cx, &Cx) -> Cx = $body;
                f(self, o)
            }
        }
        impl $tr<Cx> for Cx {
            type Output = Cx;
            fn $m(self, o: Cx) -> Cx {
                (&self).$m(&o)
            }
        }
        impl $tr<&Cx> for Cx {
            type Output = Cx;
            fn $m(self, o: &Cx) -> Cx {
                (&self).$m(o)
            }
        }
        impl $tr<Cx> for &Cx {
            type Output = Cx;
            fn $m(self, o: Cx) -> Cx {
                self.$m(&o)
            }
        }
    };
}

binop!(Add, add, |a, b| {
    let p = a.prec().max(b.prec());
    Cx::new(Float::with_val(p, &a.re + &b.re), Float::with_val(p, &a.im + &b.im))
});
binop!(Sub, sub, |a, b| {
    let p = a.prec().max(b.prec());
    Cx::new(Float::with_val(p, &a.re - &b.re), Float::with_val(p, &a.im - &b.im))
});
binop!(Mul, mul, |a, b| {
    let p = a.prec().max(b.prec());
    let ac = Float::with_val(p, &a.re * &b.re);
    let bd = Float::with_val(p, &a.im * &b.im);
    let ad = Float::with_val(p, &a.re * &b.im);
    let bc = Float::with_val(p, &a.im * &b.re);
    Cx::new(ac - bd, ad + bc)
});
binop!(Div, div, |a, b| {
    let p = a.prec().max(b.prec());
    let n = b.norm();
    let ac = Float::with_val(p, &a.re * &b.re);
    let bd = Float::with_val(p, &a.im * &b.im);
    let ad = Float::with_val(p, &a.re * &b.im);
    let bc = Float::with_val(p, &a.im * &b.re);
    Cx::new((ac + bd) / &n, (bc - ad) / &n)
});

impl Neg for Cx {
    type Output = Cx;
    fn neg(self) -> Cx {
        Cx::new(-self.re, -self.im)
    }
}

impl Neg for &Cx {
    type Output = Cx;
    fn neg(self) -> Cx {
        self.neg_ref()
    }
}

impl AddAssign<&Cx> for Cx {
    fn add_assign(&mut self, o: &Cx) {
        self.re += &o.re;
        self.im += &o.im;
    }
}

impl AddAssign<Cx> for Cx {
    fn add_assign(&mut self, o: Cx) {
        self.re += o.re;
        self.im += o.im;
    }
}

impl SubAssign<&Cx> for Cx {
    fn sub_assign(&mut self, o: &Cx) {
        self.re -= &o.re;
        self.im -= &o.im;
    }
}

impl SubAssign<Cx> for Cx {
    fn sub_assign(&mut self, o: Cx) {
        self.re -= o.re;
        self.im -= o.im;
    }
}

impl MulAssign<&Cx> for Cx {
    fn mul_assign(&mut self, o: &Cx) {
        *self = &*self * o;
    }
}

/// Sum of principal logs of the factors, computed as one log of the running
/// product with the winding restored from a double-precision argument sum.
pub fn sum_ln<'a, I: IntoIterator<Item = &'a Cx>>(prec: u32, factors: I) -> Cx {
    let mut prod = Cx::one(prec);
    let mut turns = 0.0f64;
    for f in factors {
        let (re, im) = f.to_f64();
        let a = if im == 0.0 && re < 0.0 { std::f64::consts::PI } else { im.atan2(re) };
        turns += a;
        prod = &prod * f;
    }
    let mut l = prod.ln();
    let k = ((turns - l.im.to_f64()) / std::f64::consts::TAU).round();
    if k != 0.0 {
        let mut t = pi(prec);
        t *= 2.0 * k;
        l.im += t;
    }
    l
}

/// Relative distance |a/b - 1| between two values given by their logs.
pub fn rel_from_logs(log_a: &Cx, log_b: &Cx) -> f64 {
    let p = log_a.prec().max(log_b.prec());
    let d = (log_a - log_b).exp();
    (d - Cx::one(p)).abs_f64()
}

/// |a - b| / |a|.
pub fn rel_diff(a: &Cx, b: &Cx) -> f64 {
    let d = (a - b).abs();
    let n = a.abs();
    if n.is_zero() {
        return d.to_f64();
    }
    Float::with_val(a.prec(), &d / &n).to_f64()
}
