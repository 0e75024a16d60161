//! Double-double arithmetic (an unevaluated sum `hi + lo` of two f64).
//!
//! Gives roughly 32 significant digits, enough to subtract the 6/ε⁴
//! continuum term from the regulated cubic sum without losing the result.

use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct DoubleDouble {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl DoubleDouble {
    pub const ZERO: DoubleDouble = DoubleDouble { hi: 0.0, lo: 0.0 };
    pub const ONE: DoubleDouble = DoubleDouble { hi: 1.0, lo: 0.0 };

    pub fn new(x: f64) -> Self {
        DoubleDouble { hi: x, lo: 0.0 }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn abs(self) -> Self {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    /// Multiplication by an exact power of two.
    fn ldexp(self, k: i32) -> Self {
        let s = 2f64.powi(k);
        DoubleDouble {
            hi: self.hi * s,
            lo: self.lo * s,
        }
    }

    /// e^x. Writes x = m·ln2 + r, shrinks r by 2¹⁰, sums the Taylor series
    /// for e^r − 1, squares back up in that form and scales by 2^m.
    pub fn exp(self) -> Self {
        const LN2: DoubleDouble = DoubleDouble {
            hi: std::f64::consts::LN_2,
            lo: 2.3190468138462996e-17,
        };
        const HALVINGS: i32 = 10;
        if self.hi == 0.0 {
            return DoubleDouble::ONE;
        }
        let m = (self.hi / LN2.hi).round();
        let r = (self - LN2 * DoubleDouble::new(m)).ldexp(-HALVINGS);
        let mut term = r;
        let mut s = r;
        for n in 2..=20 {
            term = term * r / DoubleDouble::new(n as f64);
            s = s + term;
            if term.hi.abs() < 1e-36 * s.hi.abs() {
                break;
            }
        }
        // (1 + s)² − 1 = s(s + 2)
        for _ in 0..HALVINGS {
            s = s * (s + DoubleDouble::new(2.0));
        }
        (s + DoubleDouble::ONE).ldexp(m as i32)
    }

    pub fn powi(self, n: u32) -> Self {
        let mut result = DoubleDouble::ONE;
        let mut base = self;
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = result * base;
            }
            base = base * base;
            n >>= 1;
        }
        result
    }
}

impl From<f64> for DoubleDouble {
    fn from(x: f64) -> Self {
        DoubleDouble::new(x)
    }
}

impl Neg for DoubleDouble {
    type Output = Self;
    fn neg(self) -> Self {
        DoubleDouble {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Add for DoubleDouble {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let (s, e) = two_sum(self.hi, rhs.hi);
        let (t, f) = two_sum(self.lo, rhs.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        DoubleDouble { hi, lo }
    }
}

impl Sub for DoubleDouble {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Mul for DoubleDouble {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let (p, e) = two_prod(self.hi, rhs.hi);
        let e = e + (self.hi * rhs.lo + self.lo * rhs.hi);
        let (hi, lo) = quick_two_sum(p, e);
        DoubleDouble { hi, lo }
    }
}

impl Div for DoubleDouble {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        let q1 = self.hi / rhs.hi;
        let r = self - rhs * DoubleDouble::new(q1);
        let q2 = r.hi / rhs.hi;
        let r = r - rhs * DoubleDouble::new(q2);
        let q3 = r.hi / rhs.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        DoubleDouble { hi, lo } + DoubleDouble::new(q3)
    }
}
