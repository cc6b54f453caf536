//! Small admissible colorings of the lollipop tree `G_g`.
//!
//! `G_g` is a caterpillar: lollipop `i` (a loop edge plus its stick) hangs off
//! a trunk that ends in a univalent vertex. Reading left to right, trivalent
//! attachment vertex `j` (`1 ≤ j ≤ g−1`) meets the incoming trunk edge
//! `u_{j−1}`, stick `j+1` and the outgoing trunk edge `u_j`, where
//! `u_0 = stick_1` (the corner vertex is ignored) and `u_{g−1}` is the
//! boundary edge colored `2c`. For `g = 1` the single stick is itself the
//! boundary edge.
//!
//! A coloring is stored as `(a, b, t)`: stick `i` has color `2a_i`, loop `i`
//! has color `a_i + b_i`, and `t_j` is the color of the trunk edge `u_j`
//! (`1 ≤ j ≤ g−2`), kept as the even color itself.

use num_bigint::BigUint;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::params::{self, half};
use crate::weights::Weight;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LollipopColoring {
    pub p: u32,
    pub g: usize,
    pub c: u32,
    pub a: Vec<u32>,
    pub b: Vec<u32>,
    pub t: Vec<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeKind {
    Loop(usize),
    Stick(usize),
    Trunk(usize),
    /// The edge at the univalent vertex. For `g = 1` this is also stick 0.
    Boundary,
}

/// Incidence structure of `G_g`. Indices are 0-based throughout.
#[derive(Debug, Clone)]
pub struct TrunkLayout {
    g: usize,
    edges: Vec<EdgeKind>,
    vertices: Vec<[usize; 3]>,
}

impl TrunkLayout {
    pub fn new(g: usize) -> Self {
        assert!(g >= 1);
        let mut edges: Vec<EdgeKind> = (0..g).map(EdgeKind::Loop).collect();
        edges.extend((0..g).map(EdgeKind::Stick));
        edges.extend((1..g.saturating_sub(1)).map(EdgeKind::Trunk));
        if g >= 2 {
            edges.push(EdgeKind::Boundary);
        }
        let stick = |i: usize| g + i;
        let trunk = |j: usize| 2 * g + j - 1;
        let boundary = edges.len() - 1;

        let mut vertices: Vec<[usize; 3]> = (0..g).map(|i| [i, i, stick(i)]).collect();
        for j in 1..g {
            let prev = if j == 1 { stick(0) } else { trunk(j - 1) };
            let next = if j == g - 1 { boundary } else { trunk(j) };
            vertices.push([prev, stick(j), next]);
        }
        TrunkLayout { g, edges, vertices }
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn edges(&self) -> &[EdgeKind] {
        &self.edges
    }

    /// Trivalent vertices: the `g` loop vertices, then the `g−1` attachment
    /// vertices left to right.
    pub fn vertices(&self) -> &[[usize; 3]] {
        &self.vertices
    }

    pub fn boundary_edge(&self) -> usize {
        self.edges.len() - 1
    }

    pub fn loop_edges(&self) -> usize {
        self.edges.iter().filter(|e| matches!(e, EdgeKind::Loop(_))).count()
    }

    /// Edge colors of `sigma` indexed like [`TrunkLayout::edges`].
    pub fn edge_colors(&self, sigma: &LollipopColoring) -> Vec<u32> {
        let g = self.g;
        let mut colors: Vec<u32> = (0..g).map(|i| sigma.a[i] + sigma.b[i]).collect();
        colors.extend((0..g).map(|i| 2 * sigma.a[i]));
        colors.extend_from_slice(&sigma.t);
        if g >= 2 {
            colors.push(2 * sigma.c);
        }
        colors
    }
}

pub fn vertex_triples(g: usize) -> Vec<[usize; 3]> {
    TrunkLayout::new(g).vertices
}

/// The three admissibility conditions at a trivalent vertex.
pub fn admissible_triple(i: u32, j: u32, k: u32, p: u32) -> bool {
    let parity = (i + j + k) % 2 == 0;
    let triangle = i.abs_diff(j) <= k && k <= i + j;
    parity && triangle && i + j + k <= 2 * p - 4
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Length { field: &'static str, expected: usize, got: usize },
    BoundaryColor { c: u32 },
    ColorRange { edge: usize, color: u32 },
    Parity { vertex: usize },
    Triangle { vertex: usize },
    SumBound { vertex: usize },
    Smallness { lollipop: usize },
    /// Only for `g = 1`, where the stick is the boundary edge.
    StickIsBoundary { a: u32, c: u32 },
}

pub fn validate(sigma: &LollipopColoring) -> Vec<Violation> {
    let g = sigma.g;
    let mut out = Vec::new();
    for (field, expected, got) in [
        ("a", g, sigma.a.len()),
        ("b", g, sigma.b.len()),
        ("t", g.saturating_sub(2), sigma.t.len()),
    ] {
        if expected != got {
            out.push(Violation::Length { field, expected, got });
        }
    }
    if g == 0 || !out.is_empty() {
        return out;
    }
    let p = sigma.p;
    let d = half(p);
    if sigma.c >= d {
        out.push(Violation::BoundaryColor { c: sigma.c });
    }
    if g == 1 && sigma.a[0] != sigma.c {
        out.push(Violation::StickIsBoundary { a: sigma.a[0], c: sigma.c });
    }

    let layout = TrunkLayout::new(g);
    let colors = layout.edge_colors(sigma);
    for (edge, &color) in colors.iter().enumerate() {
        if color > p - 2 {
            out.push(Violation::ColorRange { edge, color });
        }
    }
    for (vertex, tri) in layout.vertices().iter().enumerate() {
        let [i, j, k] = tri.map(|e| colors[e]);
        if (i + j + k) % 2 != 0 {
            out.push(Violation::Parity { vertex });
        }
        if !(i.abs_diff(j) <= k && k <= i + j) {
            out.push(Violation::Triangle { vertex });
        }
        if i + j + k > 2 * p - 4 {
            out.push(Violation::SumBound { vertex });
        }
    }
    for lollipop in 0..g {
        if sigma.a[lollipop] + sigma.b[lollipop] > d.saturating_sub(1) {
            out.push(Violation::Smallness { lollipop });
        }
    }
    out
}

/// `(c, eps)` with `eps = (c + Σ a_i) mod 2`.
pub fn type_of(sigma: &LollipopColoring) -> (u32, u8) {
    let s: u64 = sigma.c as u64 + sigma.a.iter().map(|&x| x as u64).sum::<u64>();
    (sigma.c, (s % 2) as u8)
}

/// Coordinates `n_i = d − 1 − a_i − 2b_i` in the ε-basis.
pub fn weight_of(sigma: &LollipopColoring) -> Weight {
    let d = half(sigma.p) as i64;
    Weight::new(
        sigma
            .a
            .iter()
            .zip(&sigma.b)
            .map(|(&a, &b)| d - 1 - a as i64 - 2 * b as i64)
            .collect(),
    )
}

/// Checks the structural properties shared by all small colorings: no
/// weight coordinate is `≡ d (mod 2d)`, a coordinate `≡ d − 1` forces
/// `a_i = b_i = 0`, and odd type needs at least two nonzero sticks (three
/// when `c = 0`). Returns a description of the first failure.
pub fn structural_violation(sigma: &LollipopColoring) -> Option<String> {
    let d = half(sigma.p) as i64;
    for (i, (&a, &b)) in sigma.a.iter().zip(&sigma.b).enumerate() {
        let n = d - 1 - a as i64 - 2 * b as i64;
        let r = n.rem_euclid(2 * d);
        if r == d {
            return Some(format!("coordinate {} is {n} ≡ d (mod 2d)", i + 1));
        }
        if r == d - 1 && (a, b) != (0, 0) {
            return Some(format!("coordinate {} ≡ d-1 but (a, b) = ({a}, {b})", i + 1));
        }
    }
    if type_of(sigma).1 == 1 {
        let nonzero = sigma.a.iter().filter(|&&x| x > 0).count();
        let need = if sigma.c == 0 { 3 } else { 2 };
        if nonzero < need {
            return Some(format!("odd type with {nonzero} nonzero sticks"));
        }
    }
    None
}

/// Column names of the coloring CSV export.
pub fn csv_header(g: usize) -> Vec<String> {
    let mut h: Vec<String> = (1..=g).map(|i| format!("a_{i}")).collect();
    h.extend((1..=g).map(|i| format!("b_{i}")));
    h.extend((1..=g.saturating_sub(2)).map(|j| format!("t_{j}")));
    h.push("eps".into());
    h.extend((1..=g).map(|i| format!("n_{i}")));
    h
}

pub fn csv_record(sigma: &LollipopColoring) -> Vec<String> {
    let mut r: Vec<String> = sigma.a.iter().chain(&sigma.b).chain(&sigma.t).map(u32::to_string).collect();
    r.push(type_of(sigma).1.to_string());
    r.extend(weight_of(sigma).coords().iter().map(i64::to_string));
    r
}

#[derive(Clone, Default)]
struct BitSet(Vec<u64>);

impl BitSet {
    fn new(n: usize) -> Self {
        BitSet(vec![0; n.div_ceil(64).max(1)])
    }
    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn contains(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }
    fn intersect_with(&mut self, other: &BitSet) {
        self.0.iter_mut().zip(&other.0).for_each(|(x, y)| *x &= y);
    }
    fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }
    fn clear(&mut self) {
        self.0.iter_mut().for_each(|w| *w = 0);
    }
    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(k, &w)| {
            (0..64).filter(move |b| w >> b & 1 == 1).map(move |b| 64 * k + b)
        })
    }
}

/// Depth-first enumerator of `C_p(g, c, eps)` in lexicographic order of
/// `(a_1, b_1, …, a_g, b_g, t_1, …)`. Trunk colors are tracked in half units.
pub struct Enumerator {
    p: u32,
    g: usize,
    c: u32,
    eps: u8,
    d: u32,
    /// `next[u][a]`: trunk values `u'` with `(2u, 2a, 2u')` admissible, ascending.
    next: Vec<Vec<Vec<u32>>>,
    /// `live[j]`: values of `u_j` from which `u_{g−1} = c` is still reachable.
    live: Vec<BitSet>,
}

struct Scratch {
    sigma: LollipopColoring,
    reach: Vec<BitSet>,
    trunks: Vec<Vec<u32>>,
}

impl Enumerator {
    pub fn new(p: u32, g: usize, c: u32, eps: u8) -> Result<Self> {
        params::check(p, g, c, eps)?;
        let d = half(p);
        let n = d as usize;
        let next: Vec<Vec<Vec<u32>>> = (0..d)
            .map(|u| {
                (0..d)
                    .map(|a| (0..d).filter(|&v| admissible_triple(2 * u, 2 * a, 2 * v, p)).collect())
                    .collect()
            })
            .collect();
        let mut live = vec![BitSet::new(n); g];
        live[g - 1].insert(c as usize);
        for j in (1..g).rev() {
            let mut prev = BitSet::new(n);
            for u in 0..n {
                if next[u].iter().any(|vs| vs.iter().any(|&v| live[j].contains(v as usize))) {
                    prev.insert(u);
                }
            }
            live[j - 1] = prev;
        }
        Ok(Enumerator { p, g, c, eps, d, next, live })
    }

    fn scratch(&self) -> Scratch {
        let g = self.g;
        Scratch {
            sigma: LollipopColoring {
                p: self.p,
                g,
                c: self.c,
                a: vec![0; g],
                b: vec![0; g],
                t: vec![0; g.saturating_sub(2)],
            },
            reach: vec![BitSet::new(self.d as usize); g],
            trunks: Vec::new(),
        }
    }

    /// Feasible `(a_1, b_1)` prefixes, in order.
    pub fn prefixes(&self) -> Vec<(u32, u32)> {
        (0..self.d)
            .filter(|&a| self.live[0].contains(a as usize))
            .flat_map(|a| (0..self.d - a).map(move |b| (a, b)))
            .collect()
    }

    pub fn for_each(&self, mut f: impl FnMut(&LollipopColoring)) {
        let mut s = self.scratch();
        for (a, b) in self.prefixes() {
            self.run_prefix(a, b, &mut s, &mut f);
        }
    }

    /// Visits every coloring whose first lollipop is `(a1, b1)`.
    pub fn for_each_with_prefix(&self, a1: u32, b1: u32, mut f: impl FnMut(&LollipopColoring)) {
        let mut s = self.scratch();
        self.run_prefix(a1, b1, &mut s, &mut f);
    }

    fn run_prefix(&self, a1: u32, b1: u32, s: &mut Scratch, f: &mut impl FnMut(&LollipopColoring)) {
        if a1 >= self.d || b1 >= self.d - a1 || !self.live[0].contains(a1 as usize) {
            return;
        }
        s.sigma.a[0] = a1;
        s.reach[0].clear();
        s.reach[0].insert(a1 as usize);
        if self.g == 1 {
            if (a1 + self.c) % 2 == self.eps as u32 {
                self.leaf(b1..b1 + 1, s, f);
            }
        } else {
            s.sigma.b[0] = b1;
            self.descend(1, a1 % 2, s, f);
        }
    }

    /// Chooses `a_i` (0-based `i ≥ 1`) and below.
    fn descend(&self, i: usize, parity: u32, s: &mut Scratch, f: &mut impl FnMut(&LollipopColoring)) {
        for a in 0..self.d {
            let mut cur = std::mem::take(&mut s.reach[i]);
            cur.clear();
            for u in s.reach[i - 1].iter() {
                for &v in &self.next[u][a as usize] {
                    cur.insert(v as usize);
                }
            }
            cur.intersect_with(&self.live[i]);
            let dead = cur.is_empty();
            s.reach[i] = cur;
            if dead {
                continue;
            }
            s.sigma.a[i] = a;
            let parity = parity ^ (a % 2);
            if i + 1 == self.g {
                if (parity + self.c) % 2 == self.eps as u32 {
                    self.leaf(0..self.d - a, s, f);
                }
            } else {
                for b in 0..self.d - a {
                    s.sigma.b[i] = b;
                    self.descend(i + 1, parity, s, f);
                }
            }
        }
    }

    /// All sticks are fixed: loop over the last `b` and the trunk sequences.
    fn leaf(&self, last_b: std::ops::Range<u32>, s: &mut Scratch, f: &mut impl FnMut(&LollipopColoring)) {
        let g = self.g;
        s.trunks.clear();
        if g >= 3 {
            let mut path = Vec::with_capacity(g - 2);
            self.trunk_paths(1, s.sigma.a[0], &s.sigma.a, &mut path, &mut s.trunks);
        } else {
            s.trunks.push(Vec::new());
        }
        let trunks = std::mem::take(&mut s.trunks);
        for b in last_b {
            s.sigma.b[g - 1] = b;
            for t in &trunks {
                s.sigma.t.copy_from_slice(t);
                f(&s.sigma);
            }
        }
        s.trunks = trunks;
    }

    fn trunk_paths(&self, j: usize, u: u32, a: &[u32], path: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        let g = self.g;
        if j == g - 1 {
            if self.next[u as usize][a[j] as usize].contains(&self.c) {
                out.push(path.iter().map(|&x| 2 * x).collect());
            }
            return;
        }
        for &v in &self.next[u as usize][a[j] as usize] {
            if self.live[j].contains(v as usize) {
                path.push(v);
                self.trunk_paths(j + 1, v, a, path, out);
                path.pop();
            }
        }
    }
}

/// `C_p(g, c, eps)` in lexicographic order. Prefixes are expanded in
/// parallel and concatenated in order.
pub fn enumerate(p: u32, g: usize, c: u32, eps: u8) -> Result<Vec<LollipopColoring>> {
    let en = Enumerator::new(p, g, c, eps)?;
    let chunks: Vec<Vec<LollipopColoring>> = en
        .prefixes()
        .into_par_iter()
        .map(|(a, b)| {
            let mut out = Vec::new();
            en.for_each_with_prefix(a, b, |s| out.push(s.clone()));
            out
        })
        .collect();
    Ok(chunks.into_iter().flatten().collect())
}

/// Parallel fold over `C_p(g, c, eps)` without materializing it.
pub fn fold<T, I, F, R>(p: u32, g: usize, c: u32, eps: u8, init: I, step: F, merge: R) -> Result<T>
where
    T: Send,
    I: Fn() -> T + Sync + Send,
    F: Fn(&mut T, &LollipopColoring) + Sync + Send,
    R: Fn(T, T) -> T + Sync + Send,
{
    let en = Enumerator::new(p, g, c, eps)?;
    Ok(en
        .prefixes()
        .into_par_iter()
        .map(|(a, b)| {
            let mut acc = init();
            en.for_each_with_prefix(a, b, |s| step(&mut acc, s));
            acc
        })
        .reduce(&init, &merge))
}

/// `|C_p(g, c, eps)|` by a transfer-matrix sweep along the trunk.
///
/// The state after attaching `k` lollipops is the current trunk color (half
/// units) and the parity of `Σ a_i`; attaching a stick with half-color `a`
/// carries weight `d − a`, the number of loop colors allowed by smallness.
pub fn count(p: u32, g: usize, c: u32, eps: u8) -> Result<BigUint> {
    params::check(p, g, c, eps)?;
    let d = half(p) as usize;
    let mut state = vec![[BigUint::zero(), BigUint::zero()]; d];
    for (a, slot) in state.iter_mut().enumerate() {
        slot[a % 2] = BigUint::from(d - a);
    }
    for _ in 1..g {
        let mut nextstate = vec![[BigUint::zero(), BigUint::zero()]; d];
        for (u, cur) in state.iter().enumerate() {
            if cur[0].is_zero() && cur[1].is_zero() {
                continue;
            }
            for a in 0..d {
                let mult = BigUint::from(d - a);
                for (v, slot) in nextstate.iter_mut().enumerate() {
                    if !admissible_triple(2 * u as u32, 2 * a as u32, 2 * v as u32, p) {
                        continue;
                    }
                    for par in 0..2 {
                        if !cur[par].is_zero() {
                            slot[par ^ (a % 2)] += &cur[par] * &mult;
                        }
                    }
                }
            }
        }
        state = nextstate;
    }
    let want = ((eps as u32 + c) % 2) as usize;
    Ok(std::mem::take(&mut state[c as usize][want]))
}

/// Number of trunk colorings `t` compatible with fixed sticks `2a_i` and
/// boundary `2c`. Loop colors do not constrain the trunk.
pub fn trunk_completions(p: u32, c: u32, a: &[u32]) -> u64 {
    let d = half(p) as usize;
    if a.len() == 1 {
        return u64::from(a[0] == c);
    }
    let mut state = vec![0u64; d];
    state[a[0] as usize] = 1;
    for (j, &stick) in a.iter().enumerate().skip(1) {
        let mut nextstate = vec![0u64; d];
        for (u, &n) in state.iter().enumerate().filter(|(_, &n)| n > 0) {
            for (v, slot) in nextstate.iter_mut().enumerate() {
                let last = j + 1 == a.len();
                if (!last || v == c as usize) && admissible_triple(2 * u as u32, 2 * stick, 2 * v as u32, p) {
                    *slot += n;
                }
            }
        }
        state = nextstate;
    }
    state[c as usize]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    fn col(p: u32, c: u32, a: &[u32], b: &[u32], t: &[u32]) -> LollipopColoring {
        LollipopColoring { p, g: a.len(), c, a: a.to_vec(), b: b.to_vec(), t: t.to_vec() }
    }

    #[test]
    fn layout_counts() {
        for g in 1..10 {
            let l = TrunkLayout::new(g);
            assert_eq!(l.edges().len(), 3 * g - 1);
            assert_eq!(l.vertices().len(), 2 * g - 1);
            assert_eq!(l.loop_edges(), g);
            // Every edge except the boundary is incident to two vertex slots.
            let mut deg = vec![0; l.edges().len()];
            for tri in l.vertices() {
                for &e in tri {
                    deg[e] += 1;
                }
            }
            for (e, &k) in deg.iter().enumerate() {
                assert_eq!(k, if e == l.boundary_edge() { 1 } else { 2 }, "g={g} e={e}");
            }
        }
    }

    #[test]
    fn vertex_triples_small() {
        assert_eq!(vertex_triples(1), vec![[0, 0, 1]]);
        assert_eq!(TrunkLayout::new(1).edges()[TrunkLayout::new(1).boundary_edge()], EdgeKind::Stick(0));
        // loops 0,1; sticks 2,3; boundary 4
        assert_eq!(vertex_triples(2), vec![[0, 0, 2], [1, 1, 3], [2, 3, 4]]);
        let l3 = TrunkLayout::new(3);
        assert_eq!(l3.edges().len(), 8);
        // loops 0..3, sticks 3..6, trunk 6, boundary 7
        assert_eq!(&l3.vertices()[3..], &[[3, 4, 6], [6, 5, 7]]);
        let colors = TrunkLayout::new(2).edge_colors(&col(5, 1, &[1, 1], &[0, 0], &[]));
        let tri = vertex_triples(2)[2].map(|e| colors[e]);
        assert_eq!(tri, [2, 2, 2]);
    }

    #[test]
    fn validate_examples() {
        assert!(validate(&col(5, 0, &[0], &[1], &[])).is_empty());
        assert_eq!(validate(&col(5, 0, &[0], &[2], &[])), vec![Violation::Smallness { lollipop: 0 }]);
        assert!(validate(&col(5, 1, &[1, 1], &[0, 0], &[])).is_empty());
        assert!(validate(&col(5, 0, &[1, 1, 1], &[0, 0, 0], &[2])).is_empty());
    }

    #[test]
    fn validate_reports_each_kind() {
        // odd trunk color
        let v = validate(&col(7, 0, &[1, 1, 1], &[0, 0, 0], &[1]));
        assert!(v.contains(&Violation::Parity { vertex: 3 }));
        // triangle failure at the attachment vertex
        let v = validate(&col(7, 0, &[2, 0], &[0, 0], &[]));
        assert_eq!(v, vec![Violation::Triangle { vertex: 2 }]);
        // sum bound: p = 5, (4, 2, 2) has sum 8 > 6 and also breaks smallness
        let v = validate(&col(5, 1, &[2, 1], &[0, 0], &[]));
        assert!(v.contains(&Violation::SumBound { vertex: 2 }));
        assert!(v.contains(&Violation::ColorRange { edge: 2, color: 4 }));
        assert!(v.contains(&Violation::Smallness { lollipop: 0 }));
        // g = 1: stick is the boundary edge
        let v = validate(&col(7, 1, &[0], &[0], &[]));
        assert_eq!(v, vec![Violation::StickIsBoundary { a: 0, c: 1 }]);
        // wrong shapes
        let v = validate(&col(7, 0, &[0, 0, 0], &[0, 0, 0], &[]));
        assert_eq!(v, vec![Violation::Length { field: "t", expected: 1, got: 0 }]);
        let v = validate(&col(7, 3, &[0], &[0], &[]));
        assert!(v.contains(&Violation::BoundaryColor { c: 3 }));
    }

    #[test]
    fn type_examples() {
        assert_eq!(type_of(&col(7, 0, &[0; 4], &[0; 4], &[0, 0])), (0, 0));
        assert_eq!(type_of(&col(5, 0, &[1, 1, 1], &[0; 3], &[2])), (0, 1));
        assert_eq!(type_of(&col(5, 1, &[0, 1], &[0, 0], &[])), (1, 0));
    }

    #[test]
    fn weight_examples() {
        for p in [5, 7, 11] {
            let d = ((p - 1) / 2) as i64;
            for g in 1..5 {
                let s = col(p, 0, &vec![0; g], &vec![0; g], &vec![0; g.saturating_sub(2)]);
                assert_eq!(weight_of(&s).coords(), vec![d - 1; g].as_slice());
            }
        }
        assert_eq!(weight_of(&col(5, 0, &[0], &[1], &[])).coords(), &[-1]);
        assert_eq!(weight_of(&col(5, 0, &[1, 1, 1], &[0; 3], &[2])).coords(), &[0, 0, 0]);
    }

    #[test]
    fn enumerate_examples() {
        let e = enumerate(5, 1, 0, 0).unwrap();
        assert_eq!(e, vec![col(5, 0, &[0], &[0], &[]), col(5, 0, &[0], &[1], &[])]);
        for c in 0..2 {
            assert!(enumerate(5, 1, c, 1).unwrap().is_empty());
        }
        assert_eq!(enumerate(5, 3, 0, 1).unwrap(), vec![col(5, 0, &[1, 1, 1], &[0; 3], &[2])]);
        let e = enumerate(7, 2, 0, 0).unwrap();
        assert_eq!(e.len(), 14);
        assert!(e.iter().all(|s| s.a[0] == s.a[1]));
    }

    #[test]
    fn enumerate_rejects_bad_parameters() {
        assert!(matches!(enumerate(4, 2, 0, 0), Err(Error::BadParameters(_))));
        assert!(matches!(enumerate(7, 2, 3, 0), Err(Error::BadParameters(_))));
        assert!(matches!(count(9, 2, 0, 0), Err(Error::BadParameters(_))));
    }

    #[test]
    fn enumerate_sound_and_sorted() {
        for p in [5, 7, 11] {
            for g in 1..=4 {
                for c in 0..half(p) {
                    for eps in 0..2 {
                        let e = enumerate(p, g, c, eps).unwrap();
                        for s in &e {
                            assert!(validate(s).is_empty(), "{s:?}");
                            assert_eq!(type_of(s), (c, eps));
                        }
                        let key = |s: &LollipopColoring| {
                            let mut k: Vec<u32> = s.a.iter().zip(&s.b).flat_map(|(&a, &b)| [a, b]).collect();
                            k.extend(&s.t);
                            k
                        };
                        assert!(e.windows(2).all(|w| key(&w[0]) < key(&w[1])), "order p={p} g={g}");
                    }
                }
            }
        }
    }

    /// Brute force over every `(a, b, t)` in range, filtered by `validate`.
    fn brute(p: u32, g: usize, c: u32, eps: u8) -> Vec<LollipopColoring> {
        let d = half(p);
        let mut dims: Vec<u32> = vec![d; 2 * g];
        dims.extend(std::iter::repeat(d).take(g.saturating_sub(2)));
        let total: u64 = dims.iter().map(|&x| x as u64).product();
        let mut out = Vec::new();
        for mut k in 0..total {
            let digits: Vec<u32> = dims
                .iter()
                .map(|&r| {
                    let x = (k % r as u64) as u32;
                    k /= r as u64;
                    x
                })
                .collect();
            let s = LollipopColoring {
                p,
                g,
                c,
                a: digits[..g].to_vec(),
                b: digits[g..2 * g].to_vec(),
                t: digits[2 * g..].iter().map(|&x| 2 * x).collect(),
            };
            if validate(&s).is_empty() && type_of(&s) == (c, eps) {
                out.push(s);
            }
        }
        out.sort_by_key(|s| {
            let mut k: Vec<u32> = s.a.iter().zip(&s.b).flat_map(|(&a, &b)| [a, b]).collect();
            k.extend(&s.t);
            k
        });
        out
    }

    #[test]
    fn enumerate_matches_brute_force() {
        for (p, gmax) in [(5, 4), (7, 3), (11, 2)] {
            for g in 1..=gmax {
                for c in 0..half(p) {
                    for eps in 0..2 {
                        assert_eq!(enumerate(p, g, c, eps).unwrap(), brute(p, g, c, eps), "p={p} g={g} c={c} eps={eps}");
                    }
                }
            }
        }
    }

    #[test]
    fn count_examples() {
        assert_eq!(count(5, 1, 0, 0).unwrap(), BigUint::from(2u32));
        assert_eq!(count(7, 2, 0, 1).unwrap(), BigUint::zero());
        assert_eq!(count(5, 4, 0, 0).unwrap(), BigUint::from(42u32));
        assert_eq!(count(7, 2, 0, 0).unwrap(), BigUint::from(14u32));
    }

    #[test]
    fn count_matches_enumeration() {
        for p in [5, 7, 11] {
            for g in 1..=4 {
                for c in 0..half(p) {
                    for eps in 0..2 {
                        let n = enumerate(p, g, c, eps).unwrap().len();
                        assert_eq!(count(p, g, c, eps).unwrap(), BigUint::from(n), "p={p} g={g} c={c} eps={eps}");
                    }
                }
            }
        }
    }

    #[test]
    fn fold_counts() {
        let n = fold(11, 4, 2, 1, || 0u64, |acc, _| *acc += 1, |x, y| x + y).unwrap();
        assert_eq!(BigUint::from(n), count(11, 4, 2, 1).unwrap());
    }

    #[test]
    fn trunk_completions_match_enumeration() {
        use std::collections::HashMap;
        for p in [5, 7, 11] {
            for g in 1..=4 {
                for c in 0..half(p) {
                    for eps in 0..2 {
                        let mut by_sticks: HashMap<(Vec<u32>, Vec<u32>), u64> = HashMap::new();
                        for s in enumerate(p, g, c, eps).unwrap() {
                            *by_sticks.entry((s.a.clone(), s.b.clone())).or_default() += 1;
                        }
                        for ((a, _), n) in by_sticks {
                            assert_eq!(trunk_completions(p, c, &a), n, "p={p} c={c} a={a:?}");
                        }
                    }
                }
            }
        }
        assert_eq!(trunk_completions(5, 0, &[1, 1, 1]), 1);
        let odd = col(7, 0, &[1, 0, 0], &[0, 0, 0], &[2]);
        assert!(structural_violation(&odd).is_some());
        assert_eq!(trunk_completions(5, 1, &[0]), 0);
    }

    #[test]
    fn lemma_properties() {
        for p in [5, 7, 11] {
            let d = half(p) as i64;
            for g in 1..=4 {
                for c in 0..half(p) {
                    for eps in 0..2u8 {
                        for s in enumerate(p, g, c, eps).unwrap() {
                            assert_eq!(structural_violation(&s), None);
                            let w = weight_of(&s);
                            let nonzero = s.a.iter().filter(|&&x| x > 0).count();
                            if eps == 1 {
                                assert!(nonzero >= 2);
                                if c == 0 {
                                    assert!(nonzero >= 3);
                                }
                            }
                            for (i, &n) in w.coords().iter().enumerate() {
                                assert_ne!(n.rem_euclid(2 * d), d);
                                if n.rem_euclid(2 * d) == d - 1 {
                                    assert_eq!((s.a[i], s.b[i]), (0, 0));
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn partition_by_type() {
        // Total small admissible colorings with boundary 2c, by brute force
        // without the type filter.
        for (p, g) in [(5, 3), (7, 3), (5, 4)] {
            for c in 0..half(p) {
                let total = brute(p, g, c, 0).len() + brute(p, g, c, 1).len();
                let split = count(p, g, c, 0).unwrap() + count(p, g, c, 1).unwrap();
                assert_eq!(split, BigUint::from(total));
            }
        }
    }
}
