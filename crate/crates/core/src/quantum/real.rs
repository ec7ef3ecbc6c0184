//! Scalar abstraction for the numeric kernels.

use std::fmt::Debug;
use std::ops::Neg;

use num_traits::Num;

/// Real scalar usable by the quantum kernels: machine floats or [`MultiFloat`](super::multifloat::MultiFloat).
pub trait Real: Copy + Send + Sync + Debug + PartialOrd + Num + Neg<Output = Self> + 'static {
    /// Significand bits.
    const SIGNIFICAND_BITS: u32;

    fn from_f64(x: f64) -> Self;
    fn from_i64(x: i64) -> Self;
    fn to_f64(self) -> f64;
    fn abs(self) -> Self;
    fn sqrt(self) -> Self;
    /// Natural log of `|self|`, valid beyond the `f64` exponent range.
    fn ln_f64(self) -> f64;
    /// `(cos(π num/den), sin(π num/den))`.
    fn cos_sin_pi(num: i64, den: i64) -> (Self, Self);
    fn is_finite(self) -> bool;

    fn recip(self) -> Self {
        Self::one() / self
    }

    /// Unit roundoff `2^{1-SIGNIFICAND_BITS}`.
    fn epsilon_f64() -> f64 {
        2f64.powi(1 - Self::SIGNIFICAND_BITS as i32)
    }
}

fn reduce(num: i64, den: i64) -> (i64, i64) {
    let m = 2 * den;
    (num.rem_euclid(m), den)
}

impl Real for f64 {
    const SIGNIFICAND_BITS: u32 = 53;

    fn from_f64(x: f64) -> Self {
        x
    }
    fn from_i64(x: i64) -> Self {
        x as f64
    }
    fn to_f64(self) -> f64 {
        self
    }
    fn abs(self) -> Self {
        f64::abs(self)
    }
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    fn ln_f64(self) -> f64 {
        f64::abs(self).ln()
    }
    fn cos_sin_pi(num: i64, den: i64) -> (Self, Self) {
        let (n, d) = reduce(num, den);
        let x = std::f64::consts::PI * n as f64 / d as f64;
        (x.cos(), x.sin())
    }
    fn is_finite(self) -> bool {
        f64::is_finite(self)
    }
}

impl Real for f32 {
    const SIGNIFICAND_BITS: u32 = 24;

    fn from_f64(x: f64) -> Self {
        x as f32
    }
    fn from_i64(x: i64) -> Self {
        x as f32
    }
    fn to_f64(self) -> f64 {
        self as f64
    }
    fn abs(self) -> Self {
        f32::abs(self)
    }
    fn sqrt(self) -> Self {
        f32::sqrt(self)
    }
    fn ln_f64(self) -> f64 {
        (f32::abs(self) as f64).ln()
    }
    fn cos_sin_pi(num: i64, den: i64) -> (Self, Self) {
        let (c, s) = <f64 as Real>::cos_sin_pi(num, den);
        (c as f32, s as f32)
    }
    fn is_finite(self) -> bool {
        f32::is_finite(self)
    }
}
