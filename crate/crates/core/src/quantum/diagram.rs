//! Morse (plat) diagram of a double twist knot: two caps, the two twist
//! regions, two cups. Supplies orientation, writhe and the brute-force
//! Kauffman bracket used as the `N = 2` oracle.

use num_complex::Complex64;

use crate::twistknots::DoubleTwistKnot;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Event {
    /// New pair of strands at positions `(i, i+1)`.
    Cap(usize),
    /// Closes the strands at positions `(i, i+1)`.
    Cup(usize),
    /// Crossing of positions `(i, i+1)`; `+1` puts the top-left to bottom-right strand over.
    Cross(usize, i8),
}

/// Events for `D(m, n)`: `m` crossings between the middle strands, then `n`
/// between the left pair. `sm`, `sn` choose the crossing handedness per region.
pub fn morse_events(m: i64, n: i64, sm: i8, sn: i8) -> Vec<Event> {
    let mut ev = vec![Event::Cap(0), Event::Cap(2)];
    let sgn = |x: i64| if x > 0 { 1 } else { -1 };
    ev.extend(std::iter::repeat_n(Event::Cross(1, sm * sgn(m)), m.unsigned_abs() as usize));
    ev.extend(std::iter::repeat_n(Event::Cross(0, sn * sgn(n)), n.unsigned_abs() as usize));
    ev.push(Event::Cup(1));
    ev.push(Event::Cup(0));
    ev
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Node {
    Cap {
        a: usize,
        b: usize,
    },
    Cup {
        a: usize,
        b: usize,
    },
    /// Edges above (`tl`, `tr`) and below (`bl`, `br`) the crossing.
    Cross {
        tl: usize,
        tr: usize,
        bl: usize,
        br: usize,
        over: i8,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dir {
    Down,
    Up,
}

/// Diagram with edges running between nodes, listed top to bottom.
#[derive(Clone, Debug)]
pub struct Diagram {
    /// `[top node, bottom node]` per edge.
    pub edges: Vec<[usize; 2]>,
    pub nodes: Vec<Node>,
    /// Positions (edge ids) crossed by the horizontal level just below each node.
    pub levels: Vec<Vec<usize>>,
    pub dir: Vec<Dir>,
}

impl Diagram {
    pub fn new(events: &[Event]) -> Result<Self> {
        let mut edges: Vec<[usize; 2]> = Vec::new();
        let mut nodes = Vec::new();
        let mut levels = Vec::new();
        let mut pos: Vec<usize> = Vec::new();
        let bad = |s: &str| Error::InvalidArgument(format!("malformed diagram: {s}"));
        for &e in events {
            let nid = nodes.len();
            match e {
                Event::Cap(i) => {
                    if i > pos.len() {
                        return Err(bad("cap position"));
                    }
                    let a = edges.len();
                    edges.push([nid, usize::MAX]);
                    edges.push([nid, usize::MAX]);
                    nodes.push(Node::Cap { a, b: a + 1 });
                    pos.splice(i..i, [a, a + 1]);
                }
                Event::Cup(i) => {
                    if i + 1 >= pos.len() {
                        return Err(bad("cup position"));
                    }
                    let (a, b) = (pos[i], pos[i + 1]);
                    edges[a][1] = nid;
                    edges[b][1] = nid;
                    nodes.push(Node::Cup { a, b });
                    pos.drain(i..i + 2);
                }
                Event::Cross(i, over) => {
                    if i + 1 >= pos.len() {
                        return Err(bad("crossing position"));
                    }
                    let (tl, tr) = (pos[i], pos[i + 1]);
                    edges[tl][1] = nid;
                    edges[tr][1] = nid;
                    let bl = edges.len();
                    edges.push([nid, usize::MAX]);
                    edges.push([nid, usize::MAX]);
                    nodes.push(Node::Cross { tl, tr, bl, br: bl + 1, over });
                    pos[i] = bl;
                    pos[i + 1] = bl + 1;
                }
            }
            levels.push(pos.clone());
        }
        if !pos.is_empty() {
            return Err(bad("open strands"));
        }
        let dir = orient(&edges, &nodes)?;
        Ok(Self { edges, nodes, levels, dir })
    }

    pub fn of_knot(k: &DoubleTwistKnot, sm: i8, sn: i8) -> Result<Self> {
        if k.is_link() {
            return Err(Error::NotAKnot(format!("{k} has two components")));
        }
        Self::new(&morse_events(k.m, k.n, sm, sn))
    }

    /// Diagram orientation used by every evaluator in this crate.
    pub fn standard(k: &DoubleTwistKnot) -> Result<Self> {
        Self::of_knot(k, -1, -1)
    }

    pub fn crossings(&self) -> impl Iterator<Item = (usize, usize, usize, usize, i8)> + '_ {
        self.nodes.iter().filter_map(|n| match *n {
            Node::Cross { tl, tr, bl, br, over } => Some((tl, tr, bl, br, over)),
            _ => None,
        })
    }

    pub fn crossing_sign(&self, c: (usize, usize, usize, usize, i8)) -> i8 {
        let (tl, tr, _, _, over) = c;
        let s1: (i32, i32) = if self.dir[tl] == Dir::Down { (1, -1) } else { (-1, 1) };
        let s2: (i32, i32) = if self.dir[tr] == Dir::Down { (-1, -1) } else { (1, 1) };
        let (u, v) = if over == 1 { (s1, s2) } else { (s2, s1) };
        if u.0 * v.1 - u.1 * v.0 > 0 {
            1
        } else {
            -1
        }
    }

    pub fn writhe(&self) -> i64 {
        self.crossings().map(|c| self.crossing_sign(c) as i64).sum()
    }
}

fn orient(edges: &[[usize; 2]], nodes: &[Node]) -> Result<Vec<Dir>> {
    let mut dir: Vec<Option<Dir>> = vec![None; edges.len()];
    let mut e = 0usize;
    let mut d = Dir::Down;
    while dir[e].is_none() {
        dir[e] = Some(d);
        let node = if d == Dir::Down { edges[e][1] } else { edges[e][0] };
        match nodes[node] {
            Node::Cap { a, b } => {
                e = if e == a { b } else { a };
                d = Dir::Down;
            }
            Node::Cup { a, b } => {
                e = if e == a { b } else { a };
                d = Dir::Up;
            }
            Node::Cross { tl, tr, bl, br, .. } => {
                e = if e == tl {
                    br
                } else if e == br {
                    tl
                } else if e == tr {
                    bl
                } else {
                    tr
                };
                d = if e == bl || e == br { Dir::Down } else { Dir::Up };
            }
        }
    }
    dir.into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::NotAKnot("diagram has more than one component".into()))
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        Self((0..n).collect())
    }
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        self.0[ra] = rb;
    }
    fn components(&mut self) -> usize {
        (0..self.0.len()).filter(|&x| self.find(x) == x).count()
    }
}

/// Kauffman bracket `⟨D⟩` by summing all `2^c` smoothings.
pub fn kauffman_bracket(d: &Diagram, a: Complex64) -> Complex64 {
    let cs: Vec<_> = d.crossings().collect();
    let delta = -(a * a) - (a * a).inv();
    let mut total = Complex64::new(0.0, 0.0);
    for state in 0u64..(1u64 << cs.len()) {
        let mut uf = UnionFind::new(d.edges.len());
        for n in &d.nodes {
            if let Node::Cap { a, b } | Node::Cup { a, b } = *n {
                uf.union(a, b);
            }
        }
        let mut na = 0i32;
        for (idx, &(tl, tr, bl, br, over)) in cs.iter().enumerate() {
            let s = (state >> idx) & 1;
            let horizontal = if over == 1 { s == 0 } else { s == 1 };
            if horizontal {
                uf.union(tl, tr);
                uf.union(bl, br);
            } else {
                uf.union(tl, bl);
                uf.union(tr, br);
            }
            na += if s == 0 { 1 } else { -1 };
        }
        let loops = uf.components() as i32;
        total += a.powi(na) * delta.powi(loops);
    }
    total
}

/// Writhe-corrected bracket normalized to 1 on the unknot, at `A = e^{-πi/r}`.
pub fn bracket_jones(d: &Diagram, r: u64) -> Complex64 {
    let a = Complex64::from_polar(1.0, -std::f64::consts::PI / r as f64);
    let delta = -(a * a) - (a * a).inv();
    let framing = (-(a * a * a)).powi(-(d.writhe() as i32));
    framing * kauffman_bracket(d, a) / delta
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn writhes() {
        let w = |m, n| Diagram::standard(&DoubleTwistKnot::new(m, n)).unwrap().writhe();
        assert_eq!(w(2, -3), 5);
        assert_eq!(w(4, 3), 1);
        assert_eq!(w(2, 2), -4);
        assert_eq!(w(2, -2), 0);
    }

    #[test]
    fn links_rejected() {
        assert!(Diagram::standard(&DoubleTwistKnot::new(3, 5)).is_err());
    }

    #[test]
    fn figure_eight_jones() {
        // V(4_1) = t^2 - t + 1 - t^-1 + t^-2, t = A^-4.
        let r = 7;
        let v = bracket_jones(&Diagram::standard(&DoubleTwistKnot::new(2, -2)).unwrap(), r);
        let t = Complex64::from_polar(1.0, 4.0 * std::f64::consts::PI / r as f64);
        let expect = t * t - t + 1.0 - t.inv() + t.inv() * t.inv();
        assert!((v - expect).norm() < 1e-12);
    }
}
