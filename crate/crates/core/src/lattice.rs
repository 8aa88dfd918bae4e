//! Finite posets, lattices and frames (complete Heyting algebras).
//!
//! Elements are addressed by dense indices `0..n`; the string names given at
//! construction are kept only for lookup and for reports. Every structure is
//! immutable once validated, so frames are shared freely behind `Arc`.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::ops::Deref;

use crate::bits::{BitMatrix, BitSet};
use crate::error::{Error, Result};
use crate::Limits;

/// Index of an element inside a finite structure.
pub type Elem = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinitePoset {
    names: Vec<String>,
    index: HashMap<String, Elem>,
    /// `up.get(x, y)` iff `x <= y`.
    up: BitMatrix,
    /// `down.get(y, x)` iff `x <= y`.
    down: BitMatrix,
}

impl FinitePoset {
    /// Builds the reflexive-transitive closure of `pairs` over `elements`.
    pub fn from_relation<S: AsRef<str>>(elements: &[S], pairs: &[(S, S)]) -> Result<Self> {
        let names: Vec<String> = elements.iter().map(|s| s.as_ref().to_owned()).collect();
        let index = index_names(&names)?;
        let n = names.len();
        let mut up = BitMatrix::new(n);
        for i in 0..n {
            up.set(i, i);
        }
        for (a, b) in pairs {
            let (a, b) = (a.as_ref(), b.as_ref());
            let i = *index
                .get(a)
                .ok_or_else(|| Error::UnknownElement(a.to_owned()))?;
            let j = *index
                .get(b)
                .ok_or_else(|| Error::UnknownElement(b.to_owned()))?;
            up.set(i, j);
        }
        up.close_transitively();
        for i in 0..n {
            for j in i + 1..n {
                if up.get(i, j) && up.get(j, i) {
                    return Err(Error::Cycle(names[i].clone(), names[j].clone()));
                }
            }
        }
        Ok(Self::from_matrix(names, index, up))
    }

    /// Builds a poset from an order matrix already known to be a partial order.
    pub(crate) fn from_order(names: Vec<String>, leq: impl Fn(Elem, Elem) -> bool) -> Self {
        let index = index_names(&names).expect("internal constructor given duplicate names");
        let n = names.len();
        let mut up = BitMatrix::new(n);
        for i in 0..n {
            for j in 0..n {
                if leq(i, j) {
                    up.set(i, j);
                }
            }
        }
        Self::from_matrix(names, index, up)
    }

    fn from_matrix(names: Vec<String>, index: HashMap<String, Elem>, up: BitMatrix) -> Self {
        let down = up.transpose();
        FinitePoset {
            names,
            index,
            up,
            down,
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, x: Elem) -> &str {
        &self.names[x]
    }

    pub fn index_of(&self, name: &str) -> Result<Elem> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownElement(name.to_owned()))
    }

    #[inline]
    pub fn leq(&self, x: Elem, y: Elem) -> bool {
        self.up.get(x, y)
    }

    /// `{y | x <= y}`
    pub fn up_set(&self, x: Elem) -> &BitSet {
        self.up.row(x)
    }

    /// `{y | y <= x}`
    pub fn down_set(&self, x: Elem) -> &BitSet {
        self.down.row(x)
    }

    /// Covering pairs `(x, y)`: `x < y` with nothing strictly between.
    pub fn covers(&self) -> Vec<(Elem, Elem)> {
        let mut out = Vec::new();
        for x in self.elements() {
            for y in self.up_set(x).iter() {
                if x == y {
                    continue;
                }
                let between = self
                    .up_set(x)
                    .iter()
                    .any(|z| z != x && z != y && self.leq(z, y));
                if !between {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// Hasse diagram in DOT syntax, edges pointing upwards.
    pub fn to_dot(&self, graph_name: &str) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "digraph {} {{", dot_id(graph_name));
        let _ = writeln!(s, "  rankdir=BT;");
        for x in self.elements() {
            let _ = writeln!(s, "  n{} [label={}];", x, dot_id(self.name(x)));
        }
        for (x, y) in self.covers() {
            let _ = writeln!(s, "  n{x} -> n{y};");
        }
        s.push_str("}\n");
        s
    }
}

fn dot_id(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn index_names(names: &[String]) -> Result<HashMap<String, Elem>> {
    let mut index = HashMap::with_capacity(names.len());
    for (i, n) in names.iter().enumerate() {
        if index.insert(n.clone(), i).is_some() {
            return Err(Error::DuplicateElement(n.clone()));
        }
    }
    Ok(index)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteLattice {
    poset: FinitePoset,
    meet: Vec<u32>,
    join: Vec<u32>,
    top: Elem,
    bottom: Elem,
}

impl Deref for FiniteLattice {
    type Target = FinitePoset;
    fn deref(&self) -> &FinitePoset {
        &self.poset
    }
}

impl FiniteLattice {
    /// Computes meet and join tables, failing on the first pair (in index
    /// order) without a greatest lower or least upper bound.
    pub fn from_poset(poset: FinitePoset) -> Result<Self> {
        let n = poset.len();
        if n == 0 {
            return Err(Error::NotALattice {
                x: String::new(),
                y: String::new(),
                missing: "top or bottom (empty poset)",
            });
        }
        let down_count: Vec<usize> = (0..n).map(|x| poset.down_set(x).count()).collect();
        let up_count: Vec<usize> = (0..n).map(|x| poset.up_set(x).count()).collect();
        let mut meet = vec![0u32; n * n];
        let mut join = vec![0u32; n * n];
        for x in 0..n {
            for y in x..n {
                let mut lower = poset.down_set(x).clone();
                lower.intersect_with(poset.down_set(y));
                let c = lower.count();
                let glb = lower.iter().find(|&g| down_count[g] == c).ok_or_else(|| {
                    Error::NotALattice {
                        x: poset.name(x).to_owned(),
                        y: poset.name(y).to_owned(),
                        missing: "greatest lower bound",
                    }
                })?;
                let mut upper = poset.up_set(x).clone();
                upper.intersect_with(poset.up_set(y));
                let c = upper.count();
                let lub =
                    upper
                        .iter()
                        .find(|&g| up_count[g] == c)
                        .ok_or_else(|| Error::NotALattice {
                            x: poset.name(x).to_owned(),
                            y: poset.name(y).to_owned(),
                            missing: "least upper bound",
                        })?;
                meet[x * n + y] = glb as u32;
                meet[y * n + x] = glb as u32;
                join[x * n + y] = lub as u32;
                join[y * n + x] = lub as u32;
            }
        }
        let top = (0..n).find(|&t| up_count[t] == 1 && down_count[t] == n);
        let bottom = (0..n).find(|&b| down_count[b] == 1 && up_count[b] == n);
        // Pairwise bounds in a finite nonempty poset force both extremes.
        let (top, bottom) = (top.expect("top exists"), bottom.expect("bottom exists"));
        Ok(FiniteLattice {
            poset,
            meet,
            join,
            top,
            bottom,
        })
    }

    pub(crate) fn from_tables(
        poset: FinitePoset,
        meet: impl Fn(Elem, Elem) -> Elem,
        join: impl Fn(Elem, Elem) -> Elem,
    ) -> Self {
        let n = poset.len();
        let mut mt = vec![0u32; n * n];
        let mut jt = vec![0u32; n * n];
        for x in 0..n {
            for y in 0..n {
                mt[x * n + y] = meet(x, y) as u32;
                jt[x * n + y] = join(x, y) as u32;
            }
        }
        let top = (0..n)
            .find(|&t| poset.down_set(t).count() == n)
            .expect("top");
        let bottom = (0..n)
            .find(|&b| poset.up_set(b).count() == n)
            .expect("bottom");
        FiniteLattice {
            poset,
            meet: mt,
            join: jt,
            top,
            bottom,
        }
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    #[inline]
    pub fn meet(&self, x: Elem, y: Elem) -> Elem {
        self.meet[x * self.len() + y] as Elem
    }

    #[inline]
    pub fn join(&self, x: Elem, y: Elem) -> Elem {
        self.join[x * self.len() + y] as Elem
    }

    pub fn top(&self) -> Elem {
        self.top
    }

    pub fn bottom(&self) -> Elem {
        self.bottom
    }

    /// Meet of a finite family; the empty meet is top.
    pub fn meet_all(&self, xs: impl IntoIterator<Item = Elem>) -> Elem {
        xs.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    /// Join of a finite family; the empty join is bottom.
    pub fn join_all(&self, xs: impl IntoIterator<Item = Elem>) -> Elem {
        xs.into_iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    /// First triple (lexicographic) where `x ∧ (y ∨ z) ≠ (x ∧ y) ∨ (x ∧ z)`.
    pub fn distributivity_failure(&self) -> Option<(Elem, Elem, Elem)> {
        let n = self.len();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let lhs = self.meet(x, self.join(y, z));
                    let rhs = self.join(self.meet(x, y), self.meet(x, z));
                    if lhs != rhs {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }
}

/// A failure found while classifying a lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Witness {
    /// `x ∧ (y ∨ z) ≠ (x ∧ y) ∨ (x ∧ z)`
    Distributivity(Elem, Elem, Elem),
    /// `x ∨ ¬x ≠ 1`
    Complement(Elem),
}

impl Witness {
    pub fn elements(&self) -> Vec<Elem> {
        match *self {
            Witness::Distributivity(x, y, z) => vec![x, y, z],
            Witness::Complement(x) => vec![x],
        }
    }

    /// Re-checks the witness against the lattice tables.
    pub fn verify(&self, l: &FiniteLattice) -> bool {
        match *self {
            Witness::Distributivity(x, y, z) => {
                l.meet(x, l.join(y, z)) != l.join(l.meet(x, y), l.meet(x, z))
            }
            Witness::Complement(x) => {
                // The pseudo-complement is the largest z with z ∧ x = 0.
                let neg = l
                    .elements()
                    .filter(|&z| l.meet(z, x) == l.bottom())
                    .fold(l.bottom(), |acc, z| l.join(acc, z));
                l.join(x, neg) != l.top()
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrameReport {
    pub is_lattice: bool,
    pub is_distributive: bool,
    pub is_boolean: bool,
    pub counterexample: Option<Witness>,
}

/// Outcome of [`is_frame`]: the report, plus the frame when distributive.
#[derive(Clone, Debug)]
pub struct FrameCheck {
    pub report: FrameReport,
    pub frame: Option<Frame>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frame {
    lattice: FiniteLattice,
    imp: Vec<u32>,
}

impl Deref for Frame {
    type Target = FiniteLattice;
    fn deref(&self) -> &FiniteLattice {
        &self.lattice
    }
}

impl Frame {
    /// Wraps a lattice known to be distributive, filling the implication
    /// table as `x → y = ⋁{z | z ∧ x ≤ y}`.
    fn from_distributive(lattice: FiniteLattice) -> Self {
        let n = lattice.len();
        let mut imp = vec![0u32; n * n];
        for x in 0..n {
            for y in 0..n {
                let v = lattice
                    .elements()
                    .filter(|&z| lattice.leq(lattice.meet(z, x), y))
                    .fold(lattice.bottom(), |acc, z| lattice.join(acc, z));
                imp[x * n + y] = v as u32;
            }
        }
        Frame { lattice, imp }
    }

    pub(crate) fn from_tables(lattice: FiniteLattice, imp: impl Fn(Elem, Elem) -> Elem) -> Self {
        let n = lattice.len();
        let mut t = vec![0u32; n * n];
        for x in 0..n {
            for y in 0..n {
                t[x * n + y] = imp(x, y) as u32;
            }
        }
        Frame { lattice, imp: t }
    }

    pub fn lattice(&self) -> &FiniteLattice {
        &self.lattice
    }

    #[inline]
    pub fn imp(&self, x: Elem, y: Elem) -> Elem {
        self.imp[x * self.len() + y] as Elem
    }

    /// Pseudo-complement `¬x = x → 0`.
    #[inline]
    pub fn neg(&self, x: Elem) -> Elem {
        self.imp(x, self.bottom())
    }

    /// `(x → y) ∧ (y → x)`
    pub fn iff(&self, x: Elem, y: Elem) -> Elem {
        self.meet(self.imp(x, y), self.imp(y, x))
    }

    /// Implication by element names.
    pub fn implication(&self, x: &str, y: &str) -> Result<Elem> {
        Ok(self.imp(self.index_of(x)?, self.index_of(y)?))
    }

    /// First `(x, y, z)` where `z ≤ x → y` and `z ∧ x ≤ y` disagree.
    pub fn residuation_failure(&self) -> Option<(Elem, Elem, Elem)> {
        for x in self.elements() {
            for y in self.elements() {
                let xy = self.imp(x, y);
                for z in self.elements() {
                    if self.leq(z, xy) != self.leq(self.meet(z, x), y) {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }
}

/// Runs `lattice_from_poset` and [`is_frame`], folding a missing bound into
/// the report instead of an error.
pub fn check_poset(poset: FinitePoset, limits: &Limits) -> Result<(FrameReport, Option<Frame>)> {
    match FiniteLattice::from_poset(poset) {
        Ok(l) => {
            let c = is_frame(&l, limits)?;
            Ok((c.report, c.frame))
        }
        Err(Error::NotALattice { .. }) => Ok((
            FrameReport {
                is_lattice: false,
                is_distributive: false,
                is_boolean: false,
                counterexample: None,
            },
            None,
        )),
        Err(e) => Err(e),
    }
}

/// Binary distributivity over all triples; on success the implication table
/// is filled and Booleanness is evaluated as well.
pub fn is_frame(lattice: &FiniteLattice, limits: &Limits) -> Result<FrameCheck> {
    if lattice.len() > limits.max_triple_check {
        return Err(Error::SizeLimit {
            what: "carrier for triple-exhaustive checks",
            size: lattice.len(),
            limit: limits.max_triple_check,
        });
    }
    if let Some((x, y, z)) = lattice.distributivity_failure() {
        return Ok(FrameCheck {
            report: FrameReport {
                is_lattice: true,
                is_distributive: false,
                is_boolean: false,
                counterexample: Some(Witness::Distributivity(x, y, z)),
            },
            frame: None,
        });
    }
    let frame = Frame::from_distributive(lattice.clone());
    let report = is_boolean(&frame);
    Ok(FrameCheck {
        report,
        frame: Some(frame),
    })
}

/// `x ∨ ¬x = 1` for every element; the witness is the first failing `x`.
pub fn is_boolean(frame: &Frame) -> FrameReport {
    let failing = frame
        .elements()
        .find(|&x| frame.join(x, frame.neg(x)) != frame.top());
    FrameReport {
        is_lattice: true,
        is_distributive: true,
        is_boolean: failing.is_none(),
        counterexample: failing.map(Witness::Complement),
    }
}

/// Name of a subset given by element names, e.g. `{s,t}`.
pub fn subset_name<'a>(members: impl IntoIterator<Item = &'a str>) -> String {
    let parts: Vec<&str> = members.into_iter().collect();
    format!("{{{}}}", parts.join(","))
}

/// Frame of all subsets of `set`, indexed so that element `m` is the subset
/// whose bitmask is `m`.
pub fn powerset_frame<S: AsRef<str>>(set: &[S], limits: &Limits) -> Result<Frame> {
    let k = set.len();
    let size = 1usize.checked_shl(k as u32).unwrap_or(usize::MAX);
    if k >= usize::BITS as usize || size > limits.max_carrier {
        return Err(Error::SizeLimit {
            what: "powerset carrier",
            size,
            limit: limits.max_carrier,
        });
    }
    let labels: Vec<&str> = set.iter().map(|s| s.as_ref()).collect();
    index_names(&labels.iter().map(|s| s.to_string()).collect::<Vec<_>>())?;
    let names = (0..size)
        .map(|m| subset_name((0..k).filter(|i| m >> i & 1 == 1).map(|i| labels[i])))
        .collect();
    let full = size - 1;
    let poset = FinitePoset::from_order(names, |x, y| x & !y == 0);
    let lattice = FiniteLattice::from_tables(poset, |x, y| x & y, |x, y| x | y);
    Ok(Frame::from_tables(lattice, |x, y| (!x | y) & full))
}

/// Frame of down-closed subsets of `poset` ordered by inclusion. Downsets are
/// listed by size, then lexicographically by member indices.
pub fn downset_frame(poset: &FinitePoset, limits: &Limits) -> Result<Frame> {
    let mut sets = Vec::new();
    collect_downsets(
        poset,
        BitSet::full(poset.len()),
        BitSet::new(poset.len()),
        &mut sets,
        limits.max_carrier,
    )?;
    sets.sort_by(|a, b| {
        a.count()
            .cmp(&b.count())
            .then_with(|| a.iter().cmp(b.iter()))
    });
    let index: HashMap<&BitSet, Elem> = sets.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let names = sets
        .iter()
        .map(|s| subset_name(s.iter().map(|i| poset.name(i))))
        .collect();
    let fposet = FinitePoset::from_order(names, |x, y| sets[x].is_subset(&sets[y]));
    let lattice = FiniteLattice::from_tables(
        fposet,
        |x, y| {
            let mut s = sets[x].clone();
            s.intersect_with(&sets[y]);
            index[&s]
        },
        |x, y| {
            let mut s = sets[x].clone();
            s.union_with(&sets[y]);
            index[&s]
        },
    );
    // x → y = {p | ↓p ∩ x ⊆ y}
    Ok(Frame::from_tables(lattice, |x, y| {
        let mut s = BitSet::new(poset.len());
        for p in poset.elements() {
            let mut d = poset.down_set(p).clone();
            d.intersect_with(&sets[x]);
            if d.is_subset(&sets[y]) {
                s.insert(p);
            }
        }
        index[&s]
    }))
}

/// Downsets of the subposet `rest`, each united with `base`.
fn collect_downsets(
    poset: &FinitePoset,
    rest: BitSet,
    base: BitSet,
    out: &mut Vec<BitSet>,
    cap: usize,
) -> Result<()> {
    let Some(m) = rest.iter().next() else {
        out.push(base);
        if out.len() > cap {
            return Err(Error::SizeLimit {
                what: "downset carrier",
                size: out.len(),
                limit: cap,
            });
        }
        return Ok(());
    };
    // Downsets avoiding m avoid everything above it.
    let mut without = rest.clone();
    without.difference_with(poset.up_set(m));
    collect_downsets(poset, without, base.clone(), out, cap)?;
    // Downsets containing m contain everything below it.
    let mut below = poset.down_set(m).clone();
    below.intersect_with(&rest);
    let mut with_rest = rest;
    with_rest.difference_with(&below);
    let mut with_base = base;
    with_base.union_with(&below);
    collect_downsets(poset, with_rest, with_base, out, cap)
}
