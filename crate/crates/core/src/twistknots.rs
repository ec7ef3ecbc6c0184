//! Double twist knots `D(m, n)`, their two-bridge fractions, fibered continued
//! fractions, and Alexander polynomials by Fox calculus.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::arith::{ContinuedFraction, ExactRational};
use crate::{Error, Result};

/// Knot with `m` vertical and `n` horizontal half-twists. `D(m, n)` and
/// `D(n, m)` are the same knot, so equality and hashing use the ordered pair.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct DoubleTwistKnot {
    pub m: i64,
    pub n: i64,
}

impl DoubleTwistKnot {
    pub fn new(m: i64, n: i64) -> Self {
        Self { m, n }
    }

    /// `(min, max)` of the twist counts.
    pub fn canonical(&self) -> (i64, i64) {
        (self.m.min(self.n), self.m.max(self.n))
    }

    pub fn mirror(&self) -> Self {
        Self { m: -self.m, n: -self.n }
    }

    /// `D(0, n)`, `D(m, 0)` and `mn ∈ {1, 2}` all give the unknot.
    pub fn is_unknot(&self) -> bool {
        let mn = self.m * self.n;
        self.m == 0 || self.n == 0 || mn == 1 || mn == 2
    }

    /// Both twist counts odd gives a two-component link.
    pub fn is_link(&self) -> bool {
        self.m % 2 != 0 && self.n % 2 != 0
    }

    pub fn crossings(&self) -> u64 {
        self.m.unsigned_abs() + self.n.unsigned_abs()
    }
}

impl PartialEq for DoubleTwistKnot {
    fn eq(&self, other: &Self) -> bool {
        self.canonical() == other.canonical()
    }
}

impl Eq for DoubleTwistKnot {}

impl std::hash::Hash for DoubleTwistKnot {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.canonical().hash(state);
    }
}

impl fmt::Display for DoubleTwistKnot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D({}, {})", self.m, self.n)
    }
}

/// The two families sharing fillings with the figure-eight knot.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    /// `D_n = D(2n, -3)`
    D,
    /// `D'_n = D(2n, -2)`
    #[serde(rename = "D'")]
    DPrime,
}

impl Family {
    pub fn knot(self, n: i64) -> DoubleTwistKnot {
        match self {
            Family::D => DoubleTwistKnot::new(2 * n, -3),
            Family::DPrime => DoubleTwistKnot::new(2 * n, -2),
        }
    }

    /// `(family, n)` with `knot(n) == k` (either twist order), if any.
    pub fn identify(k: &DoubleTwistKnot) -> Vec<(Family, i64)> {
        let mut out = Vec::new();
        for (fam, other) in [(Family::D, -3), (Family::DPrime, -2)] {
            for (a, b) in [(k.m, k.n), (k.n, k.m)] {
                if b == other && a % 2 == 0 && !out.contains(&(fam, a / 2)) {
                    out.push((fam, a / 2));
                }
            }
        }
        out
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::D => "D",
            Family::DPrime => "D'",
        })
    }
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "D" => Ok(Family::D),
            "D'" | "Dp" | "Dprime" | "D-prime" => Ok(Family::DPrime),
            other => Err(Error::Parse(format!("unknown family {other:?}; expected D or D'"))),
        }
    }
}

pub fn mirror(k: &DoubleTwistKnot) -> DoubleTwistKnot {
    k.mirror()
}

/// Two-bridge knot `b(p, q)` stored as the fraction `q/p` with `p` odd and positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TwoBridgeFraction {
    p: BigInt,
    q: BigInt,
}

impl TwoBridgeFraction {
    /// Fraction `q/p`; rejects even `p` (links) and `p = 1` (the unknot).
    pub fn new(value: &ExactRational) -> Result<Self> {
        if value.is_infinite() || value.is_zero() {
            return Err(Error::NotAKnot(format!("{value} is not a two-bridge knot fraction")));
        }
        let p = value.denom().clone();
        if p.is_even() {
            return Err(Error::NotAKnot(format!("{value} has even denominator (a link)")));
        }
        if p.is_one() {
            return Err(Error::NotAKnot(format!("{value} gives the unknot")));
        }
        Ok(Self { p, q: value.numer().clone() })
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    pub fn value(&self) -> ExactRational {
        ExactRational::new(self.q.clone(), self.p.clone()).expect("nonzero denominator")
    }

    /// `q mod p` in `(0, p)`.
    pub fn reduced_q(&self) -> BigInt {
        self.q.mod_floor(&self.p)
    }

    /// The four canonical representatives `q, q - p, q', q' - p` over `p`,
    /// where `q q' ≡ 1 (mod p)` and `q, q' ∈ (0, p)`.
    pub fn representatives(&self) -> Vec<ExactRational> {
        let q0 = self.reduced_q();
        let qi = mod_inverse(&q0, &self.p).expect("gcd(p, q) = 1");
        let mut out: Vec<ExactRational> = Vec::new();
        for num in [q0.clone(), &q0 - &self.p, qi.clone(), &qi - &self.p] {
            let r = ExactRational::new(num, self.p.clone()).expect("p > 0");
            if !out.contains(&r) {
                out.push(r);
            }
        }
        out
    }

    pub fn mirror(&self) -> Self {
        Self { p: self.p.clone(), q: -&self.q }
    }

    /// Same oriented-up-to-reversal knot type: equal `p` and `q' ≡ q^{±1} (mod p)`.
    pub fn same_knot(&self, other: &Self) -> bool {
        if self.p != other.p {
            return false;
        }
        let q0 = self.reduced_q();
        let oq = other.reduced_q();
        oq == q0 || mod_inverse(&q0, &self.p).map(|x| x == oq).unwrap_or(false)
    }

    pub fn same_knot_up_to_mirror(&self, other: &Self) -> bool {
        self.same_knot(other) || self.same_knot(&other.mirror())
    }
}

impl fmt::Display for TwoBridgeFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.q, self.p)
    }
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if !e.gcd.is_one() {
        return None;
    }
    Some(e.x.mod_floor(m))
}

/// `n/(mn - 1)`, which equals the continued fraction `[m, -n]`.
pub fn fraction_of(k: &DoubleTwistKnot) -> Result<TwoBridgeFraction> {
    let reject = |reason: &str| Error::NotTwoBridgeKnot { m: k.m, n: k.n, reason: reason.into() };
    if k.is_link() {
        return Err(reject("both twist counts odd gives a link"));
    }
    if k.is_unknot() {
        return Err(reject("the unknot"));
    }
    let value = ExactRational::new(k.n, k.m * k.n - 1)?;
    TwoBridgeFraction::new(&value).map_err(|e| reject(&e.to_string()))
}

/// All-`±2` expansion of `v`, peeling `v = 1/(a + v')` with `a = ±2` and
/// `|v'| < 1` until `v' = 0`. `None` when some step admits no such `a`.
pub fn pm2_expansion(v: &ExactRational) -> Option<Vec<i64>> {
    let two = ExactRational::from_int(2);
    let mut v = v.clone();
    let mut out = Vec::new();
    while !v.is_zero() {
        let inv = v.checked_recip().ok()?;
        let a = if inv > ExactRational::from_int(1) && inv < ExactRational::from_int(3) {
            2
        } else if inv < ExactRational::from_int(-1) && inv > ExactRational::from_int(-3) {
            -2
        } else {
            return None;
        };
        out.push(a);
        v = if a == 2 { inv.checked_sub(&two).ok()? } else { inv.checked_add(&two).ok()? };
    }
    Some(out)
}

/// An all-`±2` continued fraction of even length among the representatives
/// of `f` (the given value first), or `None` when the knot is not fibered.
pub fn fibered_cfe(f: &TwoBridgeFraction) -> Option<ContinuedFraction> {
    let mut candidates = vec![f.value()];
    for r in f.representatives() {
        if !candidates.contains(&r) {
            candidates.push(r);
        }
    }
    candidates
        .iter()
        .filter_map(pm2_expansion)
        .find(|e| !e.is_empty() && e.len() % 2 == 0)
        .map(|e| ContinuedFraction::new(e).expect("±2 entries never hit a pole"))
}

/// Genus `k/2` of the fiber of an all-`±2` even-length continued fraction.
pub fn fiber_genus(cfe: &ContinuedFraction) -> Result<u64> {
    if !cfe.len().is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!("{cfe} has odd length")));
    }
    if cfe.entries().iter().any(|a| a.abs() != 2) {
        return Err(Error::InvalidArgument(format!("{cfe} has an entry other than ±2")));
    }
    Ok(cfe.len() as u64 / 2)
}

/// Integer Laurent polynomial with no stored zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct LaurentPolynomial {
    coeffs: BTreeMap<i64, BigInt>,
}

impl LaurentPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    pub fn add_term(&mut self, exp: i64, c: BigInt) {
        let slot = self.coeffs.entry(exp).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.coeffs.get(&exp).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.values().next_back()
    }

    /// Half the exponent span.
    pub fn degree(&self) -> i64 {
        match (self.min_exp(), self.max_exp()) {
            (Some(lo), Some(hi)) => (hi - lo) / 2,
            _ => 0,
        }
    }

    pub fn shift(&self, k: i64) -> Self {
        Self { coeffs: self.coeffs.iter().map(|(e, c)| (e + k, c.clone())).collect() }
    }

    pub fn negate(&self) -> Self {
        Self { coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c)).collect() }
    }

    /// Representative of the class modulo `±t^k`: exponents centred on 0 and
    /// the top coefficient positive.
    pub fn normalized(&self) -> Self {
        let (Some(lo), Some(hi)) = (self.min_exp(), self.max_exp()) else {
            return Self::zero();
        };
        let shifted = self.shift(-Integer::div_floor(&(lo + hi), &2));
        if shifted.leading_coeff().map(|c| c.is_negative()).unwrap_or(false) {
            shifted.negate()
        } else {
            shifted
        }
    }

    /// Equality up to multiplication by `±t^k`.
    pub fn doteq(&self, other: &Self) -> bool {
        self.normalized() == other.normalized()
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.normalized();
        n.coeffs.iter().all(|(e, c)| n.coeff(-e) == *c)
    }

    pub fn eval(&self, t: &BigInt) -> Result<ExactRational> {
        let mut acc = ExactRational::zero();
        for (e, c) in &self.coeffs {
            let pow = if *e >= 0 {
                ExactRational::from_int(num_traits::pow(t.clone(), *e as usize))
            } else {
                ExactRational::from_int(num_traits::pow(t.clone(), (-e) as usize)).checked_recip()?
            };
            acc = acc.checked_add(&pow.checked_mul(&ExactRational::from_int(c.clone()))?)?;
        }
        Ok(acc)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &other.coeffs {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.coeffs {
            out.add_term(*e, -c);
        }
        out
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().rev() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let unit = mag.is_one() && *e != 0;
            if !unit {
                write!(f, "{mag}")?;
            }
            match *e {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{e}")?,
            }
        }
        Ok(())
    }
}

/// Serialized as `[[exponent, coefficient], ...]` sorted by exponent; a
/// coefficient outside `i64` is written as a decimal string.
impl Serialize for LaurentPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        #[serde(untagged)]
        enum Coeff {
            Small(i64),
            Big(String),
        }
        let mut seq = serializer.serialize_seq(Some(self.coeffs.len()))?;
        for (e, c) in &self.coeffs {
            let c = c.to_i64().map(Coeff::Small).unwrap_or_else(|| Coeff::Big(c.to_string()));
            seq.serialize_element(&(e, c))?;
        }
        seq.end()
    }
}

/// Letters of the relator `a w b^-1 w^-1` with `w = b^{e1} a^{e2} ... a^{e_{p-1}}`
/// and `e_i = (-1)^{floor(i β / p)}` for odd `β ≡ ±q (mod p)`. Generator 0 is `a`.
fn two_bridge_relator(p: &BigInt, beta: &BigInt) -> Vec<(u8, i8)> {
    let steps = (p - 1u32).to_usize().expect("p fits in memory");
    let mut w = Vec::with_capacity(steps);
    for i in 1..=steps {
        let k = (BigInt::from(i) * beta).div_floor(p);
        let e = if k.is_even() { 1 } else { -1 };
        let gen = if i % 2 == 1 { 1 } else { 0 };
        w.push((gen, e));
    }
    let mut rel = Vec::with_capacity(2 * steps + 2);
    rel.push((0, 1));
    rel.extend_from_slice(&w);
    rel.push((1, -1));
    rel.extend(w.iter().rev().map(|&(g, e)| (g, -e)));
    rel
}

/// Abelianised Fox derivative with respect to `a`, both generators sent to `t`.
fn fox_derivative_a(rel: &[(u8, i8)]) -> LaurentPolynomial {
    let mut poly = LaurentPolynomial::zero();
    let mut e: i64 = 0;
    for &(g, s) in rel {
        if g == 0 {
            if s > 0 {
                poly.add_term(e, BigInt::one());
                e += 1;
            } else {
                e -= 1;
                poly.add_term(e, -BigInt::one());
            }
        } else {
            e += s as i64;
        }
    }
    poly
}

/// Alexander polynomial of the two-bridge knot, normalized modulo `±t^k`.
pub fn alexander(f: &TwoBridgeFraction) -> LaurentPolynomial {
    let q0 = f.reduced_q();
    let beta = if q0.is_odd() { q0 } else { f.p() - q0 };
    fox_derivative_a(&two_bridge_relator(f.p(), &beta)).normalized()
}

/// Whether the leading coefficient is `±1`.
pub fn is_monic(p: &LaurentPolynomial) -> Result<bool> {
    let lead =
        p.leading_coeff().ok_or_else(|| Error::InvalidArgument("zero polynomial has no leading coefficient".into()))?;
    Ok(lead.abs().is_one())
}
