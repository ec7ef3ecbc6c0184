//! Dehn twist words on the once-bounded genus-`g` surface and their action
//! on first homology, checked against Alexander polynomials of fibered
//! two-bridge knots.
//!
//! The twist curves `c, a_1, b_1, ..., b_{g-1}, a_g` form a linear chain of
//! `2g` curves whose classes are taken as the homology basis; consecutive
//! curves have algebraic intersection `+1`. Each curve carries a handedness
//! `h_i = (-1)^(i+1)` (index 0 is `c`), so the letter `(γ, ε)` acts by the
//! transvection `x ↦ x + h_γ ε ⟨x, γ⟩ γ`. These signs make `φ_1` act with
//! characteristic polynomial `t² - 3t + 1`, the figure-eight monodromy.

use std::fmt;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::ContinuedFraction;
use crate::twistknots::{alexander, fraction_of, DoubleTwistKnot, LaurentPolynomial};
use crate::{Error, Result};

/// Word in the chain twists; letters are `(curve index, exponent ±1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwistWord {
    pub genus: usize,
    pub letters: Vec<(usize, i8)>,
}

/// Name of chain curve `i`: `c`, then `a_1, b_1, a_2, ...`.
pub fn curve_name(i: usize) -> String {
    match i {
        0 => "c".into(),
        i if i % 2 == 1 => format!("a_{}", i.div_ceil(2)),
        i => format!("b_{}", i / 2),
    }
}

impl TwistWord {
    pub fn new(genus: usize, letters: Vec<(usize, i8)>) -> Result<Self> {
        if genus == 0 {
            return Err(Error::InvalidArgument("genus must be positive".into()));
        }
        for &(c, e) in &letters {
            if c >= 2 * genus {
                return Err(Error::InvalidArgument(format!("curve index {c} invalid at genus {genus}")));
            }
            if e != 1 && e != -1 {
                return Err(Error::InvalidArgument(format!("exponent {e} is not ±1")));
            }
        }
        Ok(Self { genus, letters })
    }

    pub fn identity(genus: usize) -> Result<Self> {
        Self::new(genus, Vec::new())
    }

    /// Every exponent negated.
    pub fn exponent_flipped(&self) -> Self {
        Self { genus: self.genus, letters: self.letters.iter().map(|&(c, e)| (c, -e)).collect() }
    }
}

impl fmt::Display for TwistWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "id");
        }
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|&(c, e)| if e == 1 { format!("τ_{}", curve_name(c)) } else { format!("τ_{}^-1", curve_name(c)) })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

fn check_genus(g: usize) -> Result<()> {
    if g == 0 {
        Err(Error::InvalidArgument("genus must be at least 1".into()))
    } else {
        Ok(())
    }
}

/// `φ_g = τ_c τ_{a_1} τ_{b_1}^{-1} τ_{a_2} ⋯ τ_{b_{g-1}}^{-1} τ_{a_g}`.
pub fn phi_word(g: usize) -> Result<TwistWord> {
    check_genus(g)?;
    let letters = (0..2 * g).map(|i| (i, if i >= 2 && i % 2 == 0 { -1 } else { 1 })).collect();
    TwistWord::new(g, letters)
}

/// `φ'_g`, the exponent-flipped `φ_g`.
pub fn phi_prime_word(g: usize) -> Result<TwistWord> {
    Ok(phi_word(g)?.exponent_flipped())
}

/// One twist per continued-fraction entry along the chain, exponent `sign(a_i)`.
pub fn monodromy_from_cfe(cfe: &ContinuedFraction) -> Result<TwistWord> {
    let g = crate::twistknots::fiber_genus(cfe)? as usize;
    let letters = cfe.entries().iter().enumerate().map(|(i, &a)| (i, a.signum() as i8)).collect();
    TwistWord::new(g, letters)
}

/// Chain of `2g` curves with intersection pairing `J[i][i+1] = 1 = -J[i+1][i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainSurfaceModel {
    pub genus: usize,
    pub pairing: Vec<Vec<i64>>,
}

impl ChainSurfaceModel {
    pub fn new(genus: usize) -> Result<Self> {
        check_genus(genus)?;
        let n = 2 * genus;
        let mut j = vec![vec![0i64; n]; n];
        for i in 0..n - 1 {
            j[i][i + 1] = 1;
            j[i + 1][i] = -1;
        }
        Ok(Self { genus, pairing: j })
    }

    pub fn dim(&self) -> usize {
        2 * self.genus
    }

    pub fn handedness(&self, curve: usize) -> i64 {
        if curve.is_multiple_of(2) {
            -1
        } else {
            1
        }
    }

    pub fn pairing_matrix(&self) -> IntegerMatrix {
        IntegerMatrix::from_fn(self.dim(), |i, j| BigInt::from(self.pairing[i][j]))
    }
}

/// Square integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerMatrix {
    n: usize,
    a: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> BigInt) -> Self {
        let mut a = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                a.push(f(i, j));
            }
        }
        Self { n, a }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| if i == j { BigInt::one() } else { BigInt::zero() })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.a[i * self.n + j]
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.n;
        Self::from_fn(n, |i, j| (0..n).map(|k| self.get(i, k) * other.get(k, j)).sum())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i).clone())
    }

    pub fn trace(&self) -> BigInt {
        (0..self.n).map(|i| self.get(i, i).clone()).sum()
    }

    pub fn rows(&self) -> Vec<Vec<String>> {
        (0..self.n).map(|i| (0..self.n).map(|j| self.get(i, j).to_string()).collect()).collect()
    }

    /// `Mᵀ J M = J` for the model pairing.
    pub fn is_symplectic(&self, model: &ChainSurfaceModel) -> bool {
        let j = model.pairing_matrix();
        self.transpose().mul(&j).mul(self) == j
    }

    /// Coefficients `c_0..c_n` of `det(tI - M)` (`c_n = 1`), by Faddeev–LeVerrier
    /// with exact integer division.
    pub fn char_poly(&self) -> Vec<BigInt> {
        let n = self.n;
        let mut c = vec![BigInt::zero(); n + 1];
        c[n] = BigInt::one();
        let mut m = Self::from_fn(n, |_, _| BigInt::zero());
        for k in 1..=n {
            let mut next = self.mul(&m);
            for i in 0..n {
                next.a[i * n + i] += &c[n - k + 1];
            }
            m = next;
            let am = self.mul(&m);
            c[n - k] = -(am.trace() / BigInt::from(k));
        }
        c
    }

    pub fn to_f64(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.n, self.n, |i, j| self.get(i, j).to_f64().unwrap_or(f64::NAN))
    }
}

impl fmt::Display for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.rows() {
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Matrix of `x ↦ x + s ⟨x, γ⟩ γ` in the chain basis.
fn transvection(model: &ChainSurfaceModel, curve: usize, s: i64) -> IntegerMatrix {
    let n = model.dim();
    IntegerMatrix::from_fn(n, |i, j| {
        let id = if i == j { 1 } else { 0 };
        // ⟨e_j, γ⟩ = J[j][γ]; the image of e_j gains s·J[j][γ] along γ.
        let extra = if i == curve { s * model.pairing[j][curve] } else { 0 };
        BigInt::from(id + extra)
    })
}

/// Product of the letter transvections in word order.
pub fn symplectic_action(w: &TwistWord, model: &ChainSurfaceModel) -> Result<IntegerMatrix> {
    if w.genus != model.genus {
        return Err(Error::InvalidArgument(format!("word genus {} differs from model genus {}", w.genus, model.genus)));
    }
    let mut m = IntegerMatrix::identity(model.dim());
    for &(c, e) in &w.letters {
        m = m.mul(&transvection(model, c, model.handedness(c) * e as i64));
    }
    Ok(m)
}

/// Characteristic polynomial as a Laurent polynomial in `t` (exponents `0..=2g`).
pub fn char_poly_laurent(m: &IntegerMatrix) -> LaurentPolynomial {
    LaurentPolynomial::from_terms(m.char_poly().into_iter().enumerate().map(|(i, c)| (i as i64, c)))
}

/// Largest eigenvalue modulus of the homology action.
pub fn stretch_certificate(w: &TwistWord) -> Result<f64> {
    let model = ChainSurfaceModel::new(w.genus)?;
    let m = symplectic_action(w, &model)?.to_f64();
    let ev = m.complex_eigenvalues();
    Ok(ev.iter().map(|z| z.norm()).fold(0.0, f64::max))
}

#[derive(Clone, Debug, Serialize)]
pub struct CrossCheckReport {
    pub genus: usize,
    pub knot: DoubleTwistKnot,
    pub word: String,
    pub matrix: Vec<Vec<String>>,
    pub char_poly: LaurentPolynomial,
    pub alexander: LaurentPolynomial,
    pub symplectic: bool,
    pub agrees: bool,
}

/// Compares `det(tI - h_*)` for `φ_g` with the Alexander polynomial of `D(3, 2g)`.
pub fn fibered_crosscheck(g: usize) -> Result<CrossCheckReport> {
    let w = phi_word(g)?;
    let model = ChainSurfaceModel::new(g)?;
    let m = symplectic_action(&w, &model)?;
    let knot = DoubleTwistKnot::new(3, 2 * g as i64);
    let delta = alexander(&fraction_of(&knot)?);
    let cp = char_poly_laurent(&m);
    let agrees = cp.doteq(&delta);
    Ok(CrossCheckReport {
        genus: g,
        knot,
        word: w.to_string(),
        matrix: m.rows(),
        char_poly: cp.normalized(),
        alexander: delta,
        symplectic: m.is_symplectic(&model),
        agrees,
    })
}

/// Whether the coefficient list reads the same backwards.
pub fn is_palindromic(c: &[BigInt]) -> bool {
    c.iter().eq(c.iter().rev())
}

/// Whether every entry of the characteristic polynomial is within `i64`.
pub fn fits_i64(c: &[BigInt]) -> bool {
    c.iter().all(|x| x.abs() < BigInt::from(i64::MAX))
}
