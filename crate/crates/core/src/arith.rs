//! Exact rationals with a point at infinity, surgery slopes, and finite
//! continued fractions `[a1, ..., ak] = 1/(a1 + 1/(a2 + ... + 1/ak))`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result};

/// Reduced fraction `num/den` with `den >= 0`; `1/0` is the unique infinite value.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ExactRational {
    num: BigInt,
    den: BigInt,
}

/// A surgery slope. `p` and `p/1` are the same value.
pub type Slope = ExactRational;

impl ExactRational {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        let (mut num, mut den) = (num.into(), den.into());
        if den.is_zero() {
            if num.is_zero() {
                return Err(Error::InvalidArgument("0/0 is not a rational".into()));
            }
            return Ok(Self::infinity());
        }
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        let g = num.gcd(&den);
        if !g.is_one() {
            num /= &g;
            den /= &g;
        }
        Ok(Self { num, den })
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Self { num: n.into(), den: BigInt::one() }
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn infinity() -> Self {
        Self { num: BigInt::one(), den: BigInt::zero() }
    }

    pub fn is_infinite(&self) -> bool {
        self.den.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.den.is_one()
    }

    pub fn numer(&self) -> &BigInt {
        &self.num
    }

    pub fn denom(&self) -> &BigInt {
        &self.den
    }

    fn finite(&self, op: &str) -> Result<()> {
        if self.is_infinite() {
            Err(Error::Infinity(op.to_string()))
        } else {
            Ok(())
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.finite("addition")?;
        other.finite("addition")?;
        Self::new(&self.num * &other.den + &other.num * &self.den, &self.den * &other.den)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.finite("multiplication")?;
        other.finite("multiplication")?;
        Self::new(&self.num * &other.num, &self.den * &other.den)
    }

    /// Reciprocal of a finite nonzero value.
    pub fn checked_recip(&self) -> Result<Self> {
        self.finite("reciprocal")?;
        if self.num.is_zero() {
            return Err(Error::InvalidArgument("reciprocal of zero".into()));
        }
        Self::new(self.den.clone(), self.num.clone())
    }

    /// Negation; fixes 0 and infinity.
    pub fn neg(&self) -> Self {
        if self.is_infinite() {
            return self.clone();
        }
        Self { num: -&self.num, den: self.den.clone() }
    }

    /// Smallest integer `>= self`.
    pub fn ceil(&self) -> Result<BigInt> {
        self.finite("ceiling")?;
        Ok(-((-&self.num).div_floor(&self.den)))
    }

    pub fn floor(&self) -> Result<BigInt> {
        self.finite("floor")?;
        Ok(self.num.div_floor(&self.den))
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_infinite() {
            return f64::INFINITY;
        }
        match (self.num.to_f64(), self.den.to_f64()) {
            (Some(p), Some(q)) if p.is_finite() && q.is_finite() => p / q,
            _ => {
                let shift = self.den.bits().saturating_sub(60) as usize;
                let p = (&self.num >> shift).to_f64().unwrap_or(f64::NAN);
                let q = (&self.den >> shift).to_f64().unwrap_or(f64::NAN);
                p / q
            }
        }
    }

    pub fn abs(&self) -> Self {
        Self { num: self.num.abs(), den: self.den.clone() }
    }
}

impl PartialOrd for ExactRational {
    /// Finite values compare numerically; infinity is incomparable except with itself.
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self.is_infinite(), other.is_infinite()) {
            (false, false) => Some((&self.num * &other.den).cmp(&(&other.num * &self.den))),
            (true, true) => Some(Ordering::Equal),
            _ => None,
        }
    }
}

impl From<i64> for ExactRational {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl fmt::Display for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl FromStr for ExactRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("not a slope: {s:?}"));
        if s == "inf" || s == "∞" {
            return Ok(Self::infinity());
        }
        match s.split_once('/') {
            Some((p, q)) => {
                let p: BigInt = p.trim().parse().map_err(|_| bad())?;
                let q: BigInt = q.trim().parse().map_err(|_| bad())?;
                if q.is_negative() {
                    return Err(bad());
                }
                Self::new(p, q).map_err(|_| bad())
            }
            None => Ok(Self::from_int(s.parse::<BigInt>().map_err(|_| bad())?)),
        }
    }
}

impl Serialize for ExactRational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ExactRational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// `p/q ↦ -p/q`, fixing infinity.
pub fn negate_slope(s: &Slope) -> Slope {
    s.neg()
}

/// Nonempty sequence of nonzero integers whose evaluation never divides by zero.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct ContinuedFraction {
    entries: Vec<i64>,
    #[serde(skip)]
    value: ExactRational,
}

impl ContinuedFraction {
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::RejectedSequence("empty sequence".into()));
        }
        if let Some(i) = entries.iter().position(|&a| a == 0) {
            return Err(Error::RejectedSequence(format!("entry {} is zero", i + 1)));
        }
        // Evaluate from the tail: x_k = a_k, x_i = a_i + 1/x_{i+1}, value = 1/x_1.
        let mut x = ExactRational::from_int(*entries.last().unwrap());
        for (i, &a) in entries.iter().enumerate().rev().skip(1) {
            let tail = x
                .checked_recip()
                .map_err(|_| Error::RejectedSequence(format!("tail after entry {} evaluates to zero", i + 1)))?;
            x = ExactRational::from_int(a).checked_add(&tail)?;
        }
        let value = x.checked_recip().map_err(|_| Error::RejectedSequence("whole sequence evaluates to 1/0".into()))?;
        Ok(Self { entries, value })
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn value(&self) -> &ExactRational {
        &self.value
    }

    /// Entrywise negation (the continued fraction of the mirror knot).
    pub fn negated(&self) -> Self {
        Self { entries: self.entries.iter().map(|a| -a).collect(), value: self.value.neg() }
    }
}

impl fmt::Display for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|a| a.to_string()).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

pub fn cfe_eval(cfe: &ContinuedFraction) -> ExactRational {
    cfe.value.clone()
}

/// `[2, 2, -2, 2, ..., -2, 2]` of length `2g`, with value `2g/(6g-1)`.
pub fn alternating_cfe(g: i64) -> Result<ContinuedFraction> {
    if g <= 0 {
        return Err(Error::InvalidArgument(format!("genus must be positive, got {g}")));
    }
    let entries = (0..2 * g).map(|i| if i == 0 || i % 2 == 1 { 2 } else { -2 }).collect();
    ContinuedFraction::new(entries)
}

/// Integer chain `[c1, ..., ck]` with `s = c1 - 1/(c2 - 1/(... - 1/ck))`, taking
/// `c = ceil(x)` at every step. This is the linear chain of framed unknots
/// used to realise rational surgery on a knot by integer surgery.
pub fn negative_chain(s: &Slope) -> Result<Vec<i64>> {
    if s.is_infinite() {
        return Err(Error::InvalidSlope("1/0 has no surgery chain".into()));
    }
    let mut x = s.clone();
    let mut out = Vec::new();
    loop {
        let c = x.ceil()?;
        let c_i64 = c.to_i64().ok_or_else(|| Error::InvalidSlope(format!("entry {c} too large")))?;
        out.push(c_i64);
        let rem = ExactRational::from_int(c).checked_sub(&x)?;
        if rem.is_zero() {
            return Ok(out);
        }
        x = rem.checked_recip()?;
    }
}

/// Value of an integer chain `c1 - 1/(c2 - 1/(...))`; `None` if a level divides by zero.
pub fn chain_value(chain: &[i64]) -> Option<ExactRational> {
    let mut x = ExactRational::from_int(*chain.last()?);
    for &c in chain.iter().rev().skip(1) {
        let inv = x.checked_recip().ok()?;
        x = ExactRational::from_int(c).checked_sub(&inv).ok()?;
    }
    Some(x)
}
