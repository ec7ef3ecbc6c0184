//! Independent colored Jones evaluation: the `U_q(sl_2)` R-matrix state sum on
//! the Morse diagram, swept top to bottom as a transfer matrix over the
//! labels of the (at most four) open strands. Caps and cups carry
//! rotation-number weights `q^{-H·rot/360}`.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::diagram::{Diagram, Dir, Node};
use crate::twistknots::DoubleTwistKnot;
use crate::{Error, Result};

/// Largest `|m| + |n|` accepted.
pub const MAX_CROSSINGS: u64 = 12;
/// Largest color accepted.
pub const MAX_COLOR: u64 = 8;

fn qpow(r: u64, x: f64) -> Complex64 {
    // q = e^{-2πi/r}
    Complex64::from_polar(1.0, -2.0 * std::f64::consts::PI * x / r as f64)
}

fn qint(k: i64, r: u64) -> f64 {
    let x = 2.0 * std::f64::consts::PI / r as f64;
    (x * k as f64).sin() / x.sin()
}

/// Braiding `Ř = P·q^{H⊗H/2}·Σ_k c_k E^k ⊗ F^k` on `V_N ⊗ V_N`, with its inverse.
fn braiding(n_col: usize, r: u64) -> Result<(DMatrix<Complex64>, DMatrix<Complex64>, Vec<i64>)> {
    let n = n_col as i64 - 1;
    let dim = n_col;
    let zero = Complex64::new(0.0, 0.0);
    let mut e = DMatrix::from_element(dim, dim, zero);
    let mut f = DMatrix::from_element(dim, dim, zero);
    for i in 0..dim {
        if i > 0 {
            e[(i - 1, i)] = Complex64::new(qint(i as i64, r), 0.0);
        }
        if (i as i64) < n {
            f[(i + 1, i)] = Complex64::new(qint(n - i as i64, r), 0.0);
        }
    }
    let h: Vec<i64> = (0..dim as i64).map(|i| n - 2 * i).collect();
    let q = qpow(r, 1.0);
    let mut rm = DMatrix::from_element(dim * dim, dim * dim, zero);
    let mut ek = DMatrix::identity(dim, dim);
    let mut fk = DMatrix::identity(dim, dim);
    let mut qfact = 1.0;
    for k in 0..dim {
        if k > 0 {
            qfact *= qint(k as i64, r);
        }
        let c = qpow(r, (k * k.saturating_sub(1)) as f64 / 2.0) * (q - q.inv()).powi(k as i32) / qfact;
        rm += ek.kronecker(&fk) * c;
        ek = &e * &ek;
        fk = &f * &fk;
    }
    for i in 0..dim {
        for j in 0..dim {
            let d = qpow(r, (h[i] * h[j]) as f64 / 2.0);
            for col in 0..dim * dim {
                rm[(i * dim + j, col)] *= d;
            }
        }
    }
    let mut rc = DMatrix::from_element(dim * dim, dim * dim, zero);
    for i in 0..dim {
        for j in 0..dim {
            for col in 0..dim * dim {
                rc[(j * dim + i, col)] = rm[(i * dim + j, col)];
            }
        }
    }
    let ri = rc.clone().try_inverse().ok_or_else(|| Error::Numerical("braiding matrix is singular".into()))?;
    Ok((rc, ri, h))
}

/// Per-edge rotation (degrees) and, per crossing, the edges at the
/// bottom-left, bottom-right, top-left and top-right of the upright picture.
fn rotations(d: &Diagram) -> (Vec<f64>, Vec<[usize; 4]>) {
    let mut rot = vec![0.0f64; d.edges.len()];
    let mut crosses = Vec::new();
    let dirs = |strand: u8, dir: Dir| -> i64 {
        match (strand, dir) {
            (1, Dir::Down) => -45,
            (1, Dir::Up) => 135,
            (_, Dir::Down) => -135,
            (_, Dir::Up) => 45,
        }
    };
    for node in &d.nodes {
        match *node {
            Node::Cap { a, .. } => rot[a] += if d.dir[a] == Dir::Up { -180.0 } else { 180.0 },
            Node::Cup { a, .. } => rot[a] += if d.dir[a] == Dir::Down { 180.0 } else { -180.0 },
            Node::Cross { tl, tr, bl, br, .. } => {
                let d1 = dirs(1, d.dir[tl]);
                let d2 = dirs(2, d.dir[tr]);
                let phi = [0i64, 90, 180, 270]
                    .into_iter()
                    .find(|p| {
                        let (x, y) = ((d1 + p).rem_euclid(360), (d2 + p).rem_euclid(360));
                        (x == 45 && y == 135) || (x == 135 && y == 45)
                    })
                    .expect("strands cross transversally");
                let mut bot = [0usize; 2];
                let mut top = [0usize; 2];
                for (ea, eb, ds) in [(tl, br, d1), (tr, bl, d2)] {
                    let down = d.dir[ea] == Dir::Down;
                    let (inc, out) = if down { (ea, eb) } else { (eb, ea) };
                    let vleg = if down { -90 } else { 90 };
                    let bend = (ds - vleg + 180).rem_euclid(360) - 180;
                    let rd = (ds + phi).rem_euclid(360);
                    rot[inc] += (bend - (rd - 90) + phi) as f64;
                    rot[out] += (-bend - (90 - rd) - phi) as f64;
                    if rd == 45 {
                        bot[0] = inc;
                        top[1] = out;
                    } else {
                        bot[1] = inc;
                        top[0] = out;
                    }
                }
                crosses.push([bot[0], bot[1], top[0], top[1]]);
            }
        }
    }
    (rot, crosses)
}

/// Framed state sum of the closed diagram.
fn state_sum(d: &Diagram, n_col: usize, r: u64) -> Result<Complex64> {
    let (rc, ri, h) = braiding(n_col, r)?;
    let (rot, crosses) = rotations(d);
    let weight = |e: usize, label: usize| qpow(r, -(h[label] as f64) * rot[e] / 360.0);
    let signs: Vec<i8> = d.crossings().map(|c| d.crossing_sign(c)).collect();
    let nc = n_col;
    // Dense amplitudes over labels of the current open strands, base-N digits
    // with position 0 most significant.
    let mut width = 0usize;
    let mut amp = vec![Complex64::new(1.0, 0.0)];
    let labels_of = |idx: usize, w: usize| -> Vec<usize> {
        let mut v = vec![0; w];
        let mut x = idx;
        for p in (0..w).rev() {
            v[p] = x % nc;
            x /= nc;
        }
        v
    };
    let index_of = |v: &[usize]| v.iter().fold(0usize, |acc, &l| acc * nc + l);
    let mut cross_idx = 0usize;
    for (step, node) in d.nodes.iter().enumerate() {
        let prev_level: Vec<usize> = if step == 0 { Vec::new() } else { d.levels[step - 1].clone() };
        match *node {
            Node::Cap { a, b } => {
                let i = d.levels[step].iter().position(|&e| e == a).expect("cap edge on level");
                let nw = width + 2;
                let mut next = vec![Complex64::new(0.0, 0.0); nc.pow(nw as u32)];
                for (idx, &v) in amp.iter().enumerate() {
                    if v == Complex64::new(0.0, 0.0) {
                        continue;
                    }
                    let labs = labels_of(idx, width);
                    for l in 0..nc {
                        let mut nl = labs.clone();
                        nl.splice(i..i, [l, l]);
                        next[index_of(&nl)] += v * weight(a, l) * weight(b, l);
                    }
                }
                amp = next;
                width = nw;
            }
            Node::Cup { a, b } => {
                let i = prev_level.iter().position(|&e| e == a).expect("cup edge on level");
                debug_assert_eq!(prev_level[i + 1], b);
                let nw = width - 2;
                let mut next = vec![Complex64::new(0.0, 0.0); nc.pow(nw as u32)];
                for (idx, &v) in amp.iter().enumerate() {
                    let labs = labels_of(idx, width);
                    if labs[i] != labs[i + 1] {
                        continue;
                    }
                    let mut nl = labs.clone();
                    nl.drain(i..i + 2);
                    next[index_of(&nl)] += v;
                }
                amp = next;
                width = nw;
            }
            Node::Cross { tl, bl, br, .. } => {
                let i = prev_level.iter().position(|&e| e == tl).expect("crossing edge on level");
                let [cbl, cbr, ctl, ctr] = crosses[cross_idx];
                let m = if signs[cross_idx] > 0 { &rc } else { &ri };
                cross_idx += 1;
                let mut next = vec![Complex64::new(0.0, 0.0); amp.len()];
                for (idx, &v) in amp.iter().enumerate() {
                    if v == Complex64::new(0.0, 0.0) {
                        continue;
                    }
                    let labs = labels_of(idx, width);
                    for x in 0..nc {
                        for y in 0..nc {
                            let lab = |e: usize| -> usize {
                                if e == bl {
                                    x
                                } else if e == br {
                                    y
                                } else if e == prev_level[i] {
                                    labs[i]
                                } else {
                                    labs[i + 1]
                                }
                            };
                            let entry = m[(lab(ctl) * nc + lab(ctr), lab(cbl) * nc + lab(cbr))];
                            if entry == Complex64::new(0.0, 0.0) {
                                continue;
                            }
                            let mut nl = labs.clone();
                            nl[i] = x;
                            nl[i + 1] = y;
                            next[index_of(&nl)] += v * entry * weight(bl, x) * weight(br, y);
                        }
                    }
                }
                amp = next;
            }
        }
    }
    debug_assert_eq!(width, 0);
    Ok(amp[0])
}

/// `J'_N(D(m, n))` at `t = e^{4πi/r}` from the R-matrix state sum, framing
/// corrected and divided by the quantum dimension.
pub fn colored_jones_rmatrix(k: &DoubleTwistKnot, n_col: u64, r: u64) -> Result<Complex64> {
    if n_col == 0 {
        return Err(Error::InvalidArgument("color must be positive".into()));
    }
    if r < 3 || r.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!("level r = {r} must be odd and at least 3")));
    }
    if k.m.unsigned_abs() + k.n.unsigned_abs() > MAX_CROSSINGS || n_col > MAX_COLOR {
        return Err(Error::OracleTooExpensive(format!(
            "state sum limited to |m|+|n| ≤ {MAX_CROSSINGS} and N ≤ {MAX_COLOR}; got {k}, N = {n_col}"
        )));
    }
    if n_col >= r {
        return Err(Error::InvalidArgument(format!("color {n_col} must be below r = {r}")));
    }
    let d = Diagram::standard(k)?;
    let z = state_sum(&d, n_col as usize, r)?;
    let nn = n_col as f64;
    let framing = qpow(r, -(d.writhe() as f64) * (nn * nn - 1.0) / 2.0);
    Ok(z * framing / qint(n_col as i64, r))
}
