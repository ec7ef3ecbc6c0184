//! Fixed-precision binary floating point with `64·L` significand bits and an
//! `i64` exponent, for sums whose cancellation exceeds double precision.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Rem, Sub, SubAssign};
use std::sync::OnceLock;

use num_traits::{Num, One, Zero};

use super::real::Real;

/// Value `(-1)^neg · 0.m · 2^exp`, with `m[0]` holding the most significant
/// limb and its top bit set unless the value is zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct MultiFloat<const L: usize> {
    neg: bool,
    exp: i64,
    m: [u64; L],
}

/// Builds a normalized value from big-endian limbs `buf` read as
/// `Σ buf[i]·2^{-64(i+1)} · 2^exp`, rounding to nearest on the first dropped bit.
fn normalize<const L: usize>(neg: bool, exp: i64, buf: &[u64]) -> MultiFloat<L> {
    let Some(z) = buf.iter().position(|&x| x != 0) else {
        return MultiFloat::ZERO;
    };
    let lz = buf[z].leading_zeros();
    let at = |i: usize| -> u64 { buf.get(i).copied().unwrap_or(0) };
    let limb = |i: usize| -> u64 {
        if lz == 0 {
            at(z + i)
        } else {
            (at(z + i) << lz) | (at(z + i + 1) >> (64 - lz))
        }
    };
    let mut m = [0u64; L];
    for (i, x) in m.iter_mut().enumerate() {
        *x = limb(i);
    }
    let mut e = exp - (64 * z as i64 + lz as i64);
    if limb(L) >> 63 == 1 {
        let mut carry = true;
        for x in m.iter_mut().rev() {
            let (v, c) = x.overflowing_add(1);
            *x = v;
            if !c {
                carry = false;
                break;
            }
        }
        if carry {
            m[0] = 1 << 63;
            e += 1;
        }
    }
    MultiFloat { neg, exp: e, m }
}

fn cmp_mag<const L: usize>(a: &MultiFloat<L>, b: &MultiFloat<L>) -> Ordering {
    match (a.is_zero(), b.is_zero()) {
        (true, true) => return Ordering::Equal,
        (true, false) => return Ordering::Less,
        (false, true) => return Ordering::Greater,
        _ => {}
    }
    a.exp.cmp(&b.exp).then_with(|| a.m.cmp(&b.m))
}

/// Writes `b` shifted right by `d` bits into `buf[1..]`, aligned below `buf[0]`.
fn shifted_into(buf: &mut [u64], src: &[u64], d: u64) {
    let ls = (d / 64) as usize;
    let bs = (d % 64) as u32;
    for (i, &x) in src.iter().enumerate() {
        let p = 1 + i + ls;
        if p < buf.len() {
            buf[p] |= if bs == 0 { x } else { x >> bs };
        }
        if bs != 0 && p + 1 < buf.len() {
            buf[p + 1] |= x << (64 - bs);
        }
    }
}

fn add_mag<const L: usize>(neg: bool, a: &MultiFloat<L>, b: &MultiFloat<L>) -> MultiFloat<L> {
    // |a| ≥ |b|, both nonzero.
    let d = (a.exp - b.exp) as u64;
    if d > 64 * (L as u64 + 1) {
        return MultiFloat { neg, ..*a };
    }
    let mut bufs = [[0u64; L]; 3];
    let buf = &mut bufs.as_flattened_mut()[..L + 2];
    buf[1..L + 1].copy_from_slice(&a.m);
    let mut sbs = [[0u64; L]; 3];
    let sb = &mut sbs.as_flattened_mut()[..L + 2];
    shifted_into(sb, &b.m, d);
    let mut carry = 0u64;
    for i in (0..L + 2).rev() {
        let (s1, c1) = buf[i].overflowing_add(sb[i]);
        let (s2, c2) = s1.overflowing_add(carry);
        buf[i] = s2;
        carry = (c1 as u64) + (c2 as u64);
    }
    normalize(neg, a.exp + 64, buf)
}

fn sub_mag<const L: usize>(neg: bool, a: &MultiFloat<L>, b: &MultiFloat<L>) -> MultiFloat<L> {
    // |a| > |b|, both nonzero.
    let d = (a.exp - b.exp) as u64;
    if d > 64 * (L as u64 + 1) {
        return MultiFloat { neg, ..*a };
    }
    let mut bufs = [[0u64; L]; 3];
    let buf = &mut bufs.as_flattened_mut()[..L + 2];
    buf[1..L + 1].copy_from_slice(&a.m);
    let mut sbs = [[0u64; L]; 3];
    let sb = &mut sbs.as_flattened_mut()[..L + 2];
    shifted_into(sb, &b.m, d);
    let mut borrow = 0u64;
    for i in (0..L + 2).rev() {
        let (s1, c1) = buf[i].overflowing_sub(sb[i]);
        let (s2, c2) = s1.overflowing_sub(borrow);
        buf[i] = s2;
        borrow = (c1 as u64) + (c2 as u64);
    }
    normalize(neg, a.exp + 64, buf)
}

impl<const L: usize> MultiFloat<L> {
    pub const ZERO: Self = Self { neg: false, exp: 0, m: [0; L] };

    pub fn is_negative(&self) -> bool {
        self.neg
    }

    /// Binary exponent `e` with `2^{e-1} ≤ |x| < 2^e`.
    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn mantissa(&self) -> &[u64; L] {
        &self.m
    }

    /// `x · 2^k`.
    pub fn ldexp(self, k: i64) -> Self {
        if self.is_zero() {
            self
        } else {
            Self { exp: self.exp + k, ..self }
        }
    }

    /// Rounds or pads to `M` limbs.
    pub fn convert<const M: usize>(&self) -> MultiFloat<M> {
        normalize(self.neg, self.exp, &self.m)
    }

    /// Division by a small positive integer.
    pub fn div_small(self, u: u64) -> Self {
        assert!(u != 0, "division by zero");
        if self.is_zero() {
            return self;
        }
        let mut outs = [[0u64; L]; 3];
        let out = &mut outs.as_flattened_mut()[..L + 2];
        let mut rem: u128 = 0;
        for (i, o) in out.iter_mut().enumerate() {
            let cur = (rem << 64) | self.m.get(i).copied().unwrap_or(0) as u128;
            *o = (cur / u as u128) as u64;
            rem = cur % u as u128;
        }
        normalize(self.neg, self.exp, out)
    }

    /// Multiplication by a small integer.
    pub fn mul_small(self, u: i64) -> Self {
        if self.is_zero() || u == 0 {
            return Self::ZERO;
        }
        let ua = u.unsigned_abs();
        let mut outs = [[0u64; L]; 2];
        let out = &mut outs.as_flattened_mut()[..L + 1];
        let mut carry: u128 = 0;
        for i in (0..L).rev() {
            let p = self.m[i] as u128 * ua as u128 + carry;
            out[i + 1] = p as u64;
            carry = p >> 64;
        }
        out[0] = carry as u64;
        normalize(self.neg ^ (u < 0), self.exp + 64, out)
    }

    fn mul_impl(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::ZERO;
        }
        let mut ps = [[0u64; L]; 2];
        let p = ps.as_flattened_mut();
        for i in (0..L).rev() {
            let mut carry: u128 = 0;
            let a = self.m[i] as u128;
            for j in (0..L).rev() {
                let cur = p[i + j + 1] as u128 + a * o.m[j] as u128 + carry;
                p[i + j + 1] = cur as u64;
                carry = cur >> 64;
            }
            p[i] = carry as u64;
        }
        normalize(self.neg ^ o.neg, self.exp + o.exp, p)
    }

    fn add_impl(&self, o: &Self) -> Self {
        if self.is_zero() {
            return *o;
        }
        if o.is_zero() {
            return *self;
        }
        let (big, small) = if cmp_mag(self, o) == Ordering::Less { (o, self) } else { (self, o) };
        if self.neg == o.neg {
            add_mag(big.neg, big, small)
        } else if cmp_mag(big, small) == Ordering::Equal {
            Self::ZERO
        } else {
            sub_mag(big.neg, big, small)
        }
    }

    /// `1/|x|` mantissa reciprocal by Newton iteration from a double seed.
    fn recip_impl(&self) -> Self {
        assert!(!self.is_zero(), "division by zero");
        // y ≈ 1/m for m = 0.mantissa ∈ [1/2, 1).
        let m = Self { neg: false, exp: 0, m: self.m };
        let mut y = Self::from_f64_impl(1.0 / m.top_f64());
        let one = Self::one();
        let mut bits = 50u32;
        while bits < 64 * L as u32 + 8 {
            let e = one.add_impl(&-(m.mul_impl(&y)));
            y = y.add_impl(&y.mul_impl(&e));
            bits *= 2;
        }
        Self { neg: self.neg, exp: y.exp - self.exp, m: y.m }
    }

    /// Mantissa `0.m ∈ [1/2, 1)` as a double.
    fn top_f64(&self) -> f64 {
        let hi = self.m[0] as f64;
        let lo = if L > 1 { self.m[1] as f64 } else { 0.0 };
        (hi + lo / 18446744073709551616.0) / 18446744073709551616.0
    }

    fn from_f64_impl(x: f64) -> Self {
        debug_assert!(x.is_finite(), "non-finite input {x}");
        if x == 0.0 || !x.is_finite() {
            return Self::ZERO;
        }
        let bits = x.to_bits();
        let neg = bits >> 63 == 1;
        let be = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (mant, e) = if be == 0 { (frac, -1074) } else { (frac | (1u64 << 52), be - 1075) };
        normalize(neg, 64 + e, &[mant])
    }

    fn to_f64_impl(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let v = self.top_f64();
        let s = if self.neg { -v } else { v };
        if self.exp > 1100 {
            return s * f64::INFINITY;
        }
        if self.exp < -1200 {
            return 0.0 * s;
        }
        let half = self.exp / 2;
        s * 2f64.powi(half as i32) * 2f64.powi((self.exp - half) as i32)
    }

    fn trunc(&self) -> Self {
        if self.exp <= 0 {
            return Self::ZERO;
        }
        if self.exp >= 64 * L as i64 {
            return *self;
        }
        let mut m = self.m;
        let keep = self.exp as usize;
        for (i, x) in m.iter_mut().enumerate() {
            let lo = 64 * i;
            if lo >= keep {
                *x = 0;
            } else if keep < lo + 64 {
                *x &= !(u64::MAX >> (keep - lo));
            }
        }
        Self { m, ..*self }
    }

    /// π to the working precision.
    pub fn pi() -> Self {
        pi_limbs().convert()
    }
}

const PI_LIMBS: usize = 40;

fn atan_inv(n: u64) -> MultiFloat<PI_LIMBS> {
    let mut p = MultiFloat::<PI_LIMBS>::one().div_small(n);
    let n2 = n * n;
    let mut sum = p;
    let mut k = 1u64;
    loop {
        p = p.div_small(n2);
        if p.is_zero() || p.exp < sum.exp - 64 * PI_LIMBS as i64 - 8 {
            break;
        }
        let t = p.div_small(2 * k + 1);
        sum = if k % 2 == 1 { sum - t } else { sum + t };
        k += 1;
    }
    sum
}

fn pi_limbs() -> &'static MultiFloat<PI_LIMBS> {
    static PI: OnceLock<MultiFloat<PI_LIMBS>> = OnceLock::new();
    PI.get_or_init(|| atan_inv(5).mul_small(16) - atan_inv(239).mul_small(4))
}

/// `(cos y, sin y)` for `|y| ≤ π/4` by Taylor series.
fn cos_sin_small<const L: usize>(y: MultiFloat<L>) -> (MultiFloat<L>, MultiFloat<L>) {
    let one = MultiFloat::<L>::one();
    if y.is_zero() {
        return (one, MultiFloat::ZERO);
    }
    let y2 = y * y;
    let floor = -(64 * L as i64) - 8;
    let mut s = y;
    let mut t = y;
    let mut k = 1u64;
    loop {
        t = (t * y2).div_small((2 * k) * (2 * k + 1));
        if t.is_zero() || t.exp < s.exp + floor {
            break;
        }
        s = if k % 2 == 1 { s - t } else { s + t };
        k += 1;
    }
    let mut c = one;
    let mut t = one;
    let mut k = 1u64;
    loop {
        t = (t * y2).div_small((2 * k - 1) * (2 * k));
        if t.is_zero() || t.exp < floor {
            break;
        }
        c = if k % 2 == 1 { c - t } else { c + t };
        k += 1;
    }
    (c, s)
}

impl<const L: usize> Default for MultiFloat<L> {
    fn default() -> Self {
        Self::ZERO
    }
}

impl<const L: usize> fmt::Debug for MultiFloat<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiFloat<{}>({})", L, self)
    }
}

impl<const L: usize> fmt::Display for MultiFloat<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = self.to_f64_impl();
        if v.is_finite() && (v != 0.0 || self.is_zero()) {
            write!(f, "{v:e}")
        } else {
            let l10 = self.ln_f64() / std::f64::consts::LN_10;
            let e = l10.floor();
            let sign = if self.neg { "-" } else { "" };
            write!(f, "{sign}{:.15}e{}", 10f64.powf(l10 - e), e as i64)
        }
    }
}

impl<const L: usize> PartialOrd for MultiFloat<L> {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        let ord = match (self.neg, o.neg) {
            (false, true) => {
                if self.is_zero() && o.is_zero() {
                    Ordering::Equal
                } else {
                    Ordering::Greater
                }
            }
            (true, false) => Ordering::Less,
            (false, false) => cmp_mag(self, o),
            (true, true) => cmp_mag(o, self),
        };
        Some(ord)
    }
}

impl<const L: usize> Neg for MultiFloat<L> {
    type Output = Self;
    fn neg(self) -> Self {
        if self.is_zero() {
            self
        } else {
            Self { neg: !self.neg, ..self }
        }
    }
}

impl<const L: usize> Add for MultiFloat<L> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        self.add_impl(&o)
    }
}

impl<const L: usize> Sub for MultiFloat<L> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self.add_impl(&-o)
    }
}

impl<const L: usize> Mul for MultiFloat<L> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        self.mul_impl(&o)
    }
}

impl<const L: usize> Div for MultiFloat<L> {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        self.mul_impl(&o.recip_impl())
    }
}

impl<const L: usize> Rem for MultiFloat<L> {
    type Output = Self;
    fn rem(self, o: Self) -> Self {
        self - o * (self / o).trunc()
    }
}

impl<const L: usize> AddAssign for MultiFloat<L> {
    fn add_assign(&mut self, o: Self) {
        *self = self.add_impl(&o);
    }
}

impl<const L: usize> SubAssign for MultiFloat<L> {
    fn sub_assign(&mut self, o: Self) {
        *self = self.add_impl(&-o);
    }
}

impl<const L: usize> MulAssign for MultiFloat<L> {
    fn mul_assign(&mut self, o: Self) {
        *self = self.mul_impl(&o);
    }
}

impl<const L: usize> DivAssign for MultiFloat<L> {
    fn div_assign(&mut self, o: Self) {
        *self = *self / o;
    }
}

impl<const L: usize> Zero for MultiFloat<L> {
    fn zero() -> Self {
        Self::ZERO
    }
    fn is_zero(&self) -> bool {
        self.m[0] == 0
    }
}

impl<const L: usize> One for MultiFloat<L> {
    fn one() -> Self {
        let mut m = [0u64; L];
        m[0] = 1 << 63;
        Self { neg: false, exp: 1, m }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseMultiFloatError(String);

impl fmt::Display for ParseMultiFloatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cannot parse {:?} as a float", self.0)
    }
}

impl std::error::Error for ParseMultiFloatError {}

impl<const L: usize> Num for MultiFloat<L> {
    type FromStrRadixErr = ParseMultiFloatError;

    /// Decimal only: `[-]digits[.digits][e[-]digits]`.
    fn from_str_radix(s: &str, radix: u32) -> Result<Self, Self::FromStrRadixErr> {
        let err = || ParseMultiFloatError(s.to_string());
        if radix != 10 {
            return Err(err());
        }
        let t = s.trim();
        let (neg, t) = match t.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, t.strip_prefix('+').unwrap_or(t)),
        };
        let (mant, exp10) = match t.find(['e', 'E']) {
            Some(p) => (&t[..p], t[p + 1..].parse::<i64>().map_err(|_| err())?),
            None => (t, 0),
        };
        let (int, frac) = match mant.find('.') {
            Some(p) => (&mant[..p], &mant[p + 1..]),
            None => (mant, ""),
        };
        if int.is_empty() && frac.is_empty() {
            return Err(err());
        }
        let mut v = Self::ZERO;
        for ch in int.chars().chain(frac.chars()) {
            let d = ch.to_digit(10).ok_or_else(err)?;
            v = v.mul_small(10) + Self::from_i64(d as i64);
        }
        let e = exp10 - frac.len() as i64;
        let ten = Self::from_i64(10);
        let mut p = Self::one();
        for _ in 0..e.unsigned_abs() {
            p *= ten;
        }
        v = if e >= 0 { v * p } else { v / p };
        Ok(if neg { -v } else { v })
    }
}

impl<const L: usize> Real for MultiFloat<L> {
    const SIGNIFICAND_BITS: u32 = 64 * L as u32;

    fn from_f64(x: f64) -> Self {
        Self::from_f64_impl(x)
    }

    fn from_i64(x: i64) -> Self {
        if x == 0 {
            return Self::ZERO;
        }
        normalize(x < 0, 64, &[x.unsigned_abs()])
    }

    fn to_f64(self) -> f64 {
        self.to_f64_impl()
    }

    fn abs(self) -> Self {
        Self { neg: false, ..self }
    }

    fn sqrt(self) -> Self {
        assert!(!self.neg, "square root of a negative number");
        if self.is_zero() {
            return self;
        }
        // Scale to an even exponent, seed from the double square root, refine.
        let k = self.exp.div_euclid(2);
        let x = self.ldexp(-2 * k);
        let mut y = Self::from_f64(x.to_f64().sqrt());
        let mut bits = 50u32;
        while bits < 64 * L as u32 + 8 {
            y = (y + x / y).ldexp(-1);
            bits *= 2;
        }
        y.ldexp(k)
    }

    fn ln_f64(self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        self.top_f64().ln() + self.exp as f64 * std::f64::consts::LN_2
    }

    fn cos_sin_pi(num: i64, den: i64) -> (Self, Self) {
        assert!(den > 0, "denominator must be positive");
        let n = num.rem_euclid(2 * den) as i128;
        let d = den as i128;
        // angle = k·π/4 + π·rem/(4d)
        let k = (4 * n) / d;
        let rem = 4 * n - k * d;
        let (quarter, t) = if k % 2 == 0 { (k / 2, rem) } else { ((k + 1) / 2, rem - d) };
        let y = Self::pi().mul_small(t as i64).div_small(4 * d as u64);
        let (c, s) = cos_sin_small(y);
        match quarter.rem_euclid(4) {
            0 => (c, s),
            1 => (-s, c),
            2 => (-c, -s),
            _ => (s, -c),
        }
    }

    fn is_finite(self) -> bool {
        true
    }

    fn recip(self) -> Self {
        self.recip_impl()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type M4 = MultiFloat<4>;

    #[test]
    fn roundtrip_f64() {
        for &x in &[1.0, -2.5, 1e-300, 3.14159, 1e300, 0.1, -7e-310] {
            assert_eq!(M4::from_f64(x).to_f64(), x);
        }
        assert_eq!(M4::from_i64(-12345).to_f64(), -12345.0);
    }

    #[test]
    fn arithmetic() {
        let a = M4::from_f64(1.5);
        let b = M4::from_f64(-0.25);
        assert_eq!((a + b).to_f64(), 1.25);
        assert_eq!((a - b).to_f64(), 1.75);
        assert_eq!((a * b).to_f64(), -0.375);
        assert_eq!((a / b).to_f64(), -6.0);
        assert!((a + (-a)).is_zero());
        let third = M4::one() / M4::from_i64(3);
        let back = third * M4::from_i64(3) - M4::one();
        assert!(back.is_zero() || back.exponent() < -250);
    }

    #[test]
    fn cancellation_keeps_low_bits() {
        let big = M4::from_f64(1e40);
        let x = (big + M4::one()) - big;
        assert_eq!(x.to_f64(), 1.0);
    }

    #[test]
    fn pi_and_trig() {
        let pi = M4::pi();
        assert_eq!(pi.to_f64(), std::f64::consts::PI);
        let (c, s) = M4::cos_sin_pi(1, 3);
        assert!((c.to_f64() - 0.5).abs() < 1e-16);
        let three = M4::from_i64(3);
        let err = s * s * M4::from_i64(4) - three;
        assert!(err.is_zero() || err.exponent() < -250);
        for (n, d) in [(7, 11), (-3, 5), (123, 7), (1, 1), (0, 9)] {
            let (c, s) = M4::cos_sin_pi(n, d);
            let x = std::f64::consts::PI * n.rem_euclid(2 * d) as f64 / d as f64;
            assert!((c.to_f64() - x.cos()).abs() < 1e-14);
            assert!((s.to_f64() - x.sin()).abs() < 1e-14);
            let one = c * c + s * s - M4::one();
            assert!(one.is_zero() || one.exponent() < -250);
        }
    }

    #[test]
    fn sqrt_and_parse() {
        let two = M4::from_i64(2);
        let r = two.sqrt();
        let e = r * r - two;
        assert!(e.is_zero() || e.exponent() < -250);
        let x = M4::from_str_radix("-1.25e2", 10).unwrap();
        assert_eq!(x.to_f64(), -125.0);
        assert!(M4::from_str_radix("1x", 10).is_err());
    }

    #[test]
    fn ordering_and_rem() {
        let a = M4::from_f64(7.5);
        let b = M4::from_f64(2.0);
        assert!(a > b && -a < b && M4::zero() < b);
        assert_eq!((a % b).to_f64(), 1.5);
        assert_eq!(M4::from_f64(1e-5).ln_f64(), 1e-5f64.ln());
    }

    #[test]
    fn huge_exponents() {
        let mut x = M4::from_i64(10);
        for _ in 0..12 {
            x = x * x;
        }
        assert!(x.to_f64().is_infinite());
        assert!((x.ln_f64() - 4096.0 * 10f64.ln()).abs() < 1e-9);
        let c: MultiFloat<2> = x.convert();
        assert!((c.ln_f64() - x.ln_f64()).abs() < 1e-12);
    }
}
