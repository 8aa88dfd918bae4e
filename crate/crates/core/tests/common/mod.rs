//! Test-only oracles. They recompute everything from the raw order of a
//! structure by direct search and share no code with the library's
//! algorithms.

#![allow(dead_code)]

use std::sync::Arc;

use locale_lab::corpus;
use locale_lab::fixtures;
use locale_lab::lattice::Frame;
use locale_lab::omega::OmegaFrame;
use locale_lab::Limits;

/// Lattice operations recomputed from `≤` alone.
pub struct Ora {
    pub n: usize,
    le: Vec<bool>,
    meet: Vec<usize>,
    join: Vec<usize>,
    imp: Vec<usize>,
    pub top: usize,
    pub bot: usize,
}

impl Ora {
    pub fn new(n: usize, leq: impl Fn(usize, usize) -> bool) -> Ora {
        let le: Vec<bool> = (0..n * n).map(|k| leq(k / n, k % n)).collect();
        let l = |a: usize, b: usize| le[a * n + b];
        let greatest = |set: &[usize]| set.iter().copied().find(|&g| set.iter().all(|&s| l(s, g)));
        let least = |set: &[usize]| set.iter().copied().find(|&g| set.iter().all(|&s| l(g, s)));
        let all: Vec<usize> = (0..n).collect();
        let top = greatest(&all).expect("top");
        let bot = least(&all).expect("bottom");
        let mut meet = vec![0; n * n];
        let mut join = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                let lower: Vec<usize> = (0..n).filter(|&z| l(z, a) && l(z, b)).collect();
                let upper: Vec<usize> = (0..n).filter(|&z| l(a, z) && l(b, z)).collect();
                meet[a * n + b] = greatest(&lower).expect("meet");
                join[a * n + b] = least(&upper).expect("join");
            }
        }
        let mut imp = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                let ok: Vec<usize> = (0..n).filter(|&z| l(meet[z * n + a], b)).collect();
                // absent in non-distributive lattices
                imp[a * n + b] = greatest(&ok).unwrap_or(usize::MAX);
            }
        }
        Ora {
            n,
            le,
            meet,
            join,
            imp,
            top,
            bot,
        }
    }

    pub fn of(f: &Frame) -> Ora {
        Ora::new(f.len(), |a, b| f.leq(a, b))
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.le[a * self.n + b]
    }
    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.n + b]
    }
    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.n + b]
    }
    pub fn imp(&self, a: usize, b: usize) -> usize {
        let i = self.imp[a * self.n + b];
        assert!(i != usize::MAX, "no implication for ({a}, {b})");
        i
    }
    pub fn neg(&self, a: usize) -> usize {
        self.imp(a, self.bot)
    }
    pub fn meet_all(&self, xs: impl IntoIterator<Item = usize>) -> usize {
        xs.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }
    pub fn join_all(&self, xs: impl IntoIterator<Item = usize>) -> usize {
        xs.into_iter().fold(self.bot, |acc, x| self.join(acc, x))
    }
    pub fn is_boolean(&self) -> bool {
        (0..self.n).all(|x| self.join(x, self.neg(x)) == self.top)
    }
    /// First `(x, y, z)` with `x ∧ (y ∨ z) ≠ (x ∧ y) ∨ (x ∧ z)`.
    pub fn distributivity_failure(&self) -> Option<(usize, usize, usize)> {
        let n = self.n;
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if self.meet(x, self.join(y, z)) != self.join(self.meet(x, y), self.meet(x, z))
                    {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }
}

/// Table of the meet-closure map onto `s`: `x ↦ ⋀{a ∈ s | x ≤ a}`.
pub fn closure_onto(o: &Ora, s: &[usize]) -> Vec<usize> {
    (0..o.n)
        .map(|x| o.meet_all(s.iter().copied().filter(|&a| o.leq(x, a))))
        .collect()
}

/// Nucleus laws checked one by one on a raw table.
pub fn is_nucleus_table(o: &Ora, j: &[usize]) -> bool {
    let n = o.n;
    (0..n).all(|x| o.leq(x, j[x]) && j[j[x]] == j[x])
        && (0..n).all(|x| (0..n).all(|y| j[o.meet(x, y)] == o.meet(j[x], j[y])))
}

/// Fix-sets of all nuclei, by trying every subset containing top.
pub fn nuclei_by_brute_force(o: &Ora) -> Vec<Vec<usize>> {
    let others: Vec<usize> = (0..o.n).filter(|&x| x != o.top).collect();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << others.len()) {
        let mut s: Vec<usize> = others
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &x)| x)
            .collect();
        s.push(o.top);
        s.sort_unstable();
        let j = closure_onto(o, &s);
        let mut fix: Vec<usize> = (0..o.n).filter(|&x| j[x] == x).collect();
        fix.sort_unstable();
        if fix == s && is_nucleus_table(o, &j) {
            out.push(s);
        }
    }
    out.sort();
    out
}

pub fn subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.contains(x))
}

/// `pos` by scanning for the least `p` with `x ≤ e(p)`.
pub fn pos_oracle(x: &OmegaFrame) -> Option<Vec<usize>> {
    let f = Ora::of(x.carrier());
    let om = Ora::of(x.omega());
    (0..f.n)
        .map(|a| {
            let ps: Vec<usize> = (0..om.n).filter(|&p| f.leq(a, x.e(p))).collect();
            ps.iter()
                .copied()
                .find(|&p| ps.iter().all(|&q| om.leq(p, q)))
        })
        .collect()
}

/// Carrier and base operations with `pos`, for the domination order.
pub struct Overt {
    pub f: Ora,
    pub om: Ora,
    pub pos: Vec<usize>,
}

impl Overt {
    pub fn of(x: &OmegaFrame) -> Option<Overt> {
        Some(Overt {
            f: Ora::of(x.carrier()),
            om: Ora::of(x.omega()),
            pos: pos_oracle(x)?,
        })
    }

    /// `pos(z ∧ a) ≤ pos(z ∧ b)` for every `z`.
    pub fn dominated(&self, a: usize, b: usize) -> bool {
        let (f, om, pos) = (&self.f, &self.om, &self.pos);
        (0..f.n).all(|z| om.leq(pos[f.meet(z, a)], pos[f.meet(z, b)]))
    }
}

/// `x ≤ y` whenever `x` is dominated by `y`.
pub fn oalgebra_oracle(x: &OmegaFrame) -> bool {
    let Some(o) = Overt::of(x) else {
        return false;
    };
    let n = o.f.n;
    (0..n).all(|a| (0..n).all(|b| o.f.leq(a, b) || !o.dominated(a, b)))
}

/// `y ↦ ⋁{x | x dominated by y}`.
pub fn rx_oracle(x: &OmegaFrame) -> Vec<usize> {
    let o = Overt::of(x).expect("overt");
    let n = o.f.n;
    (0..n)
        .map(|y| o.f.join_all((0..n).filter(|&a| o.dominated(a, y))))
        .collect()
}

/// Corpus frames: downset frames of posets with at most five elements,
/// powersets of at most three, chains up to six.
pub fn corpus_frames() -> Vec<Arc<Frame>> {
    corpus::standard_frames(&Limits::default()).expect("corpus")
}

/// Corpus Ω-frames on carriers of at most `max` elements: every structure
/// map from TWO and C3, the discrete Ω-frames on at most two points, and the
/// collapsed C3-over-TWO example.
pub fn corpus_omega_frames(max: usize) -> Vec<OmegaFrame> {
    let mut out = Vec::new();
    for f in corpus_frames().iter().filter(|f| f.len() <= max) {
        out.extend(corpus::omega_frames(f));
    }
    for base in [fixtures::two(), fixtures::c3()] {
        for pts in [&[][..], &["s"][..], &["s", "t"][..]] {
            let x = fixtures::disc(base.clone(), pts);
            if x.carrier().len() <= max {
                out.push(x);
            }
        }
    }
    out.push(fixtures::c3_over_two_collapsed());
    out
}

/// A bijection `phi` with `a ≤ b ⟺ phi(a) ≤ phi(b)`, by trying permutations.
pub fn order_isomorphism(
    n: usize,
    le_a: impl Fn(usize, usize) -> bool,
    m: usize,
    le_b: impl Fn(usize, usize) -> bool,
) -> Option<Vec<usize>> {
    if n != m {
        return None;
    }
    fn extend(
        phi: &mut Vec<usize>,
        used: &mut Vec<bool>,
        n: usize,
        le_a: &dyn Fn(usize, usize) -> bool,
        le_b: &dyn Fn(usize, usize) -> bool,
    ) -> bool {
        let k = phi.len();
        if k == n {
            return true;
        }
        for c in 0..n {
            if used[c] {
                continue;
            }
            if (0..k).all(|i| le_a(i, k) == le_b(phi[i], c) && le_a(k, i) == le_b(c, phi[i])) {
                phi.push(c);
                used[c] = true;
                if extend(phi, used, n, le_a, le_b) {
                    return true;
                }
                phi.pop();
                used[c] = false;
            }
        }
        false
    }
    let mut phi = Vec::new();
    let mut used = vec![false; n];
    extend(&mut phi, &mut used, n, &le_a, &le_b).then_some(phi)
}

/// Number of preorders on `n` points, which equals the number of topologies.
pub fn preorder_count(n: usize) -> usize {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    let mut count = 0;
    for mask in 0u64..(1u64 << pairs.len()) {
        let r = |a: usize, b: usize| {
            a == b
                || pairs
                    .iter()
                    .position(|&p| p == (a, b))
                    .is_some_and(|k| mask >> k & 1 == 1)
        };
        let transitive =
            (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| !(r(a, b) && r(b, c)) || r(a, c))));
        if transitive {
            count += 1;
        }
    }
    count
}

/// Interior and closure of a point set from the list of opens.
pub fn interior(opens: &[u64], d: u64) -> u64 {
    opens
        .iter()
        .filter(|&&o| o & !d == 0)
        .fold(0, |a, &o| a | o)
}

pub fn closure(opens: &[u64], n: usize, d: u64) -> u64 {
    (0..n)
        .filter(|&x| opens.iter().all(|&o| o >> x & 1 == 0 || o & d != 0))
        .fold(0, |a, x| a | 1 << x)
}

/// Operations of a finite Heyting algebra given directly by arithmetic.
pub trait Heyting {
    fn size(&self) -> usize;
    fn top(&self) -> usize;
    fn bot(&self) -> usize;
    fn meet(&self, a: usize, b: usize) -> usize;
    fn join(&self, a: usize, b: usize) -> usize;
    fn imp(&self, a: usize, b: usize) -> usize;
    fn leq(&self, a: usize, b: usize) -> bool {
        self.meet(a, b) == a
    }
    fn iff(&self, a: usize, b: usize) -> usize {
        self.meet(self.imp(a, b), self.imp(b, a))
    }
}

/// `{0 < 1 < ... < n-1}` with min, max and `a → b = top if a ≤ b else b`.
pub struct ChainHa(pub usize);

impl Heyting for ChainHa {
    fn size(&self) -> usize {
        self.0
    }
    fn top(&self) -> usize {
        self.0 - 1
    }
    fn bot(&self) -> usize {
        0
    }
    fn meet(&self, a: usize, b: usize) -> usize {
        a.min(b)
    }
    fn join(&self, a: usize, b: usize) -> usize {
        a.max(b)
    }
    fn imp(&self, a: usize, b: usize) -> usize {
        if a <= b {
            self.top()
        } else {
            b
        }
    }
}

/// Subsets of a `k`-element set as bitmasks.
pub struct BoolHa(pub usize);

impl Heyting for BoolHa {
    fn size(&self) -> usize {
        1 << self.0
    }
    fn top(&self) -> usize {
        (1 << self.0) - 1
    }
    fn bot(&self) -> usize {
        0
    }
    fn meet(&self, a: usize, b: usize) -> usize {
        a & b
    }
    fn join(&self, a: usize, b: usize) -> usize {
        a | b
    }
    fn imp(&self, a: usize, b: usize) -> usize {
        (!a | b) & self.top()
    }
}

/// The two-point topology family evaluated over `h`, statement by
/// statement, returning `(axioms, cl = id, int = id)`.
pub fn brouwer_oracle(h: &dyn Heyting, p: usize) -> (usize, usize, usize) {
    let n = h.size();
    let subsets: Vec<[usize; 2]> = (0..n).flat_map(|a| (0..n).map(move |b| [a, b])).collect();
    let all = |xs: &mut dyn Iterator<Item = usize>| xs.fold(h.top(), |acc, v| h.meet(acc, v));
    let any = |xs: &mut dyn Iterator<Item = usize>| xs.fold(h.bot(), |acc, v| h.join(acc, v));
    let open = |d: [usize; 2]| {
        // Q_D: every point of P lies in D
        let q = h.meet(h.imp(p, d[0]), h.imp(p, d[1]));
        let bound = h.join(p, q);
        h.meet(h.imp(d[0], bound), h.imp(d[1], bound))
    };
    let mut axioms = h.meet(open([h.bot(), h.bot()]), open([h.top(), h.top()]));
    for &d in &subsets {
        for &e in &subsets {
            let both = h.meet(open(d), open(e));
            let i = [h.meet(d[0], e[0]), h.meet(d[1], e[1])];
            let u = [h.join(d[0], e[0]), h.join(d[1], e[1])];
            axioms = h.meet(axioms, h.meet(h.imp(both, open(i)), h.imp(both, open(u))));
        }
    }
    let meets = |d: [usize; 2], e: [usize; 2]| h.join(h.meet(d[0], e[0]), h.meet(d[1], e[1]));
    let incl = |d: [usize; 2], e: [usize; 2]| h.meet(h.imp(d[0], e[0]), h.imp(d[1], e[1]));
    let cl = |d: [usize; 2], x: usize| {
        all(&mut subsets
            .iter()
            .map(|&e| h.imp(h.meet(open(e), e[x]), meets(e, d))))
    };
    let int = |d: [usize; 2], x: usize| {
        any(&mut subsets
            .iter()
            .map(|&e| h.meet(h.meet(open(e), e[x]), incl(e, d))))
    };
    let cl_id = all(&mut subsets
        .iter()
        .flat_map(|&d| (0..2).map(move |x| (d, x)))
        .map(|(d, x)| h.iff(cl(d, x), d[x])));
    let int_id = all(&mut subsets
        .iter()
        .flat_map(|&d| (0..2).map(move |x| (d, x)))
        .map(|(d, x)| h.iff(int(d, x), d[x])));
    (axioms, cl_id, int_id)
}
