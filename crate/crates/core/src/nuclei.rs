//! Closure operators, nuclei and sublocales of a finite frame.
//!
//! A nucleus is identified with its set of fixed points; two nuclei are
//! equal exactly when their fix-sets are. Sublocale inclusion reverses the
//! pointwise order of nuclei.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::lattice::{subset_name, Elem, FiniteLattice, FinitePoset, Frame};
use crate::omega::OmegaFrame;
use crate::Limits;

pub(crate) fn same_frame(a: &Arc<Frame>, b: &Arc<Frame>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// First violated law, scanning inflation, idempotence, monotonicity and
/// (for nuclei) binary-meet preservation in that order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LawViolation {
    NotInflationary(Elem),
    NotIdempotent(Elem),
    NotMonotone(Elem, Elem),
    NotMeetPreserving(Elem, Elem),
}

impl LawViolation {
    pub fn describe(&self, f: &Frame) -> String {
        match *self {
            LawViolation::NotInflationary(x) => format!("not inflationary at {}", f.name(x)),
            LawViolation::NotIdempotent(x) => format!("not idempotent at {}", f.name(x)),
            LawViolation::NotMonotone(x, y) => {
                format!("not monotone at ({}, {})", f.name(x), f.name(y))
            }
            LawViolation::NotMeetPreserving(x, y) => {
                format!(
                    "does not preserve the meet of ({}, {})",
                    f.name(x),
                    f.name(y)
                )
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LawReport {
    pub holds: bool,
    pub witness: Option<LawViolation>,
}

impl LawReport {
    fn from_witness(witness: Option<LawViolation>) -> Self {
        LawReport {
            holds: witness.is_none(),
            witness,
        }
    }
}

fn check_table(f: &Frame, table: &[Elem]) -> Result<()> {
    if table.len() != f.len() {
        return Err(Error::Document(format!(
            "table has {} entries, frame has {} elements",
            table.len(),
            f.len()
        )));
    }
    match table.iter().find(|&&v| v >= f.len()) {
        Some(v) => Err(Error::UnknownElement(format!("#{v}"))),
        None => Ok(()),
    }
}

fn closure_violation(f: &Frame, c: &[Elem]) -> Option<LawViolation> {
    if let Some(x) = f.elements().find(|&x| !f.leq(x, c[x])) {
        return Some(LawViolation::NotInflationary(x));
    }
    if let Some(x) = f.elements().find(|&x| c[c[x]] != c[x]) {
        return Some(LawViolation::NotIdempotent(x));
    }
    for x in f.elements() {
        for y in f.elements() {
            if f.leq(x, y) && !f.leq(c[x], c[y]) {
                return Some(LawViolation::NotMonotone(x, y));
            }
        }
    }
    None
}

fn meet_violation(f: &Frame, c: &[Elem]) -> Option<LawViolation> {
    for x in f.elements() {
        for y in f.elements() {
            if c[f.meet(x, y)] != f.meet(c[x], c[y]) {
                return Some(LawViolation::NotMeetPreserving(x, y));
            }
        }
    }
    None
}

pub fn is_closure_operator(f: &Frame, table: &[Elem]) -> Result<LawReport> {
    check_table(f, table)?;
    Ok(LawReport::from_witness(closure_violation(f, table)))
}

pub fn is_nucleus(f: &Frame, table: &[Elem]) -> Result<LawReport> {
    check_table(f, table)?;
    Ok(LawReport::from_witness(
        closure_violation(f, table).or_else(|| meet_violation(f, table)),
    ))
}

fn fixed_points(table: &[Elem]) -> Vec<Elem> {
    (0..table.len()).filter(|&x| table[x] == x).collect()
}

/// `x ↦ ⋀{s ∈ fix | x ≤ s}`
fn closure_from_fix(f: &Frame, fix: &[Elem]) -> Vec<Elem> {
    f.elements()
        .map(|x| f.meet_all(fix.iter().copied().filter(|&s| f.leq(x, s))))
        .collect()
}

#[derive(Clone, Debug)]
pub struct ClosureOperator {
    frame: Arc<Frame>,
    table: Vec<Elem>,
}

impl ClosureOperator {
    pub fn new(frame: Arc<Frame>, table: Vec<Elem>) -> Result<Self> {
        check_table(&frame, &table)?;
        if let Some(v) = closure_violation(&frame, &table) {
            return Err(Error::NotAClosure(v.describe(&frame)));
        }
        Ok(ClosureOperator { frame, table })
    }

    /// The closure whose fixed points are the meet-closure of `seeds`
    /// (always containing top).
    pub fn from_seeds(frame: Arc<Frame>, seeds: impl IntoIterator<Item = Elem>) -> Self {
        let mut member = vec![false; frame.len()];
        member[frame.top()] = true;
        for s in seeds {
            member[s] = true;
        }
        loop {
            let current: Vec<Elem> = frame.elements().filter(|&x| member[x]).collect();
            let mut grew = false;
            for &a in &current {
                for &b in &current {
                    let m = frame.meet(a, b);
                    if !member[m] {
                        member[m] = true;
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        let fix: Vec<Elem> = frame.elements().filter(|&x| member[x]).collect();
        let table = closure_from_fix(&frame, &fix);
        ClosureOperator { frame, table }
    }

    pub fn frame(&self) -> &Arc<Frame> {
        &self.frame
    }

    pub fn table(&self) -> &[Elem] {
        &self.table
    }

    #[inline]
    pub fn apply(&self, x: Elem) -> Elem {
        self.table[x]
    }

    pub fn fix(&self) -> Vec<Elem> {
        fixed_points(&self.table)
    }
}

#[derive(Clone, Debug)]
pub struct Nucleus {
    frame: Arc<Frame>,
    table: Vec<Elem>,
    fix: Vec<Elem>,
}

impl PartialEq for Nucleus {
    fn eq(&self, other: &Self) -> bool {
        self.fix == other.fix && same_frame(&self.frame, &other.frame)
    }
}

impl Eq for Nucleus {}

impl Nucleus {
    pub fn new(frame: Arc<Frame>, table: Vec<Elem>) -> Result<Self> {
        let report = is_nucleus(&frame, &table)?;
        if let Some(v) = report.witness {
            return Err(Error::NotAClosure(v.describe(&frame)));
        }
        Ok(Self::trusted(frame, table))
    }

    fn trusted(frame: Arc<Frame>, table: Vec<Elem>) -> Self {
        let fix = fixed_points(&table);
        Nucleus { frame, table, fix }
    }

    pub fn identity(frame: Arc<Frame>) -> Self {
        let table = frame.elements().collect();
        Self::trusted(frame, table)
    }

    pub fn constant_top(frame: Arc<Frame>) -> Self {
        let table = vec![frame.top(); frame.len()];
        Self::trusted(frame, table)
    }

    pub fn frame(&self) -> &Arc<Frame> {
        &self.frame
    }

    pub fn table(&self) -> &[Elem] {
        &self.table
    }

    #[inline]
    pub fn apply(&self, x: Elem) -> Elem {
        self.table[x]
    }

    /// Fixed points in increasing index order.
    pub fn fix(&self) -> &[Elem] {
        &self.fix
    }

    pub fn is_fixed(&self, x: Elem) -> bool {
        self.table[x] == x
    }

    pub fn is_identity(&self) -> bool {
        self.fix.len() == self.frame.len()
    }

    /// One-element sublocale (only top is fixed).
    pub fn is_degenerate(&self) -> bool {
        self.fix.len() == 1
    }

    pub fn fix_names(&self) -> Vec<&str> {
        self.fix.iter().map(|&x| self.frame.name(x)).collect()
    }

    /// `self(x) ≤ other(x)` for every `x`.
    pub fn leq_pointwise(&self, other: &Nucleus) -> bool {
        self.frame
            .elements()
            .all(|x| self.frame.leq(self.table[x], other.table[x]))
    }

    /// Pointwise meet, the nucleus of the join of the two sublocales.
    pub fn meet(&self, other: &Nucleus) -> Result<Nucleus> {
        if !same_frame(&self.frame, &other.frame) {
            return Err(Error::FrameMismatch);
        }
        let table = self
            .frame
            .elements()
            .map(|x| self.frame.meet(self.table[x], other.table[x]))
            .collect();
        Ok(Self::trusted(self.frame.clone(), table))
    }

    pub fn as_closure(&self) -> ClosureOperator {
        ClosureOperator {
            frame: self.frame.clone(),
            table: self.table.clone(),
        }
    }
}

/// Builds the nucleus with fixed points `set`, which must contain top, be
/// closed under binary meets, and contain `x → s` for every member `s`.
pub fn nucleus_from_fixset(frame: &Arc<Frame>, set: &[Elem]) -> Result<Nucleus> {
    let mut member = vec![false; frame.len()];
    for &s in set {
        if s >= frame.len() {
            return Err(Error::UnknownElement(format!("#{s}")));
        }
        member[s] = true;
    }
    if !member[frame.top()] {
        return Err(Error::NotASublocaleSet {
            condition: "contains top",
            witness: frame.name(frame.top()).to_owned(),
        });
    }
    let members: Vec<Elem> = frame.elements().filter(|&x| member[x]).collect();
    for &a in &members {
        for &b in &members {
            if !member[frame.meet(a, b)] {
                return Err(Error::NotASublocaleSet {
                    condition: "closed under meets",
                    witness: format!("({}, {})", frame.name(a), frame.name(b)),
                });
            }
        }
    }
    for &s in &members {
        for x in frame.elements() {
            if !member[frame.imp(x, s)] {
                return Err(Error::NotASublocaleSet {
                    condition: "closed under implication",
                    witness: format!("({}, {})", frame.name(x), frame.name(s)),
                });
            }
        }
    }
    let table = closure_from_fix(frame, &members);
    Ok(Nucleus::trusted(frame.clone(), table))
}

/// `x ↦ ¬¬x`
pub fn double_negation(frame: &Arc<Frame>) -> Nucleus {
    let table = frame.elements().map(|x| frame.neg(frame.neg(x))).collect();
    Nucleus::trusted(frame.clone(), table)
}

/// Nucleus of the smallest sublocale containing `set`:
/// `y ↦ ⋀_{a ∈ set} (y → a) → a`.
pub fn generated_by_set(frame: &Arc<Frame>, set: &[Elem]) -> Nucleus {
    let table = frame
        .elements()
        .map(|y| frame.meet_all(set.iter().map(|&a| frame.imp(frame.imp(y, a), a))))
        .collect();
    Nucleus::trusted(frame.clone(), table)
}

/// Best nucleus below a closure operator: `y ↦ ⋀_a a → c(a ∧ y)`.
///
/// Cross-checked on every call against the nucleus generated by `Fix(c)`.
pub fn generated_by_closure(c: &ClosureOperator) -> Nucleus {
    let f = c.frame();
    let table: Vec<Elem> = f
        .elements()
        .map(|y| f.meet_all(f.elements().map(|a| f.imp(a, c.apply(f.meet(a, y))))))
        .collect();
    let j = Nucleus::trusted(f.clone(), table);
    let via_fix = generated_by_set(f, &c.fix());
    assert_eq!(
        j.table, via_fix.table,
        "closure-generated nucleus disagrees with the one generated by its fixed points"
    );
    j
}

/// A nucleus together with the frame induced on its fixed points: meets as
/// in the carrier, joins closed up by the nucleus.
#[derive(Clone, Debug)]
pub struct Sublocale {
    nucleus: Nucleus,
    induced: Arc<Frame>,
    position: HashMap<Elem, Elem>,
}

impl Sublocale {
    pub fn new(nucleus: Nucleus) -> Self {
        let f = nucleus.frame().clone();
        let fix = nucleus.fix().to_vec();
        let position: HashMap<Elem, Elem> = fix.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let names = fix.iter().map(|&x| f.name(x).to_owned()).collect();
        let poset = FinitePoset::from_order(names, |a, b| f.leq(fix[a], fix[b]));
        let lattice = FiniteLattice::from_tables(
            poset,
            |a, b| position[&f.meet(fix[a], fix[b])],
            |a, b| position[&nucleus.apply(f.join(fix[a], fix[b]))],
        );
        let induced = Frame::from_tables(lattice, |a, b| position[&f.imp(fix[a], fix[b])]);
        Sublocale {
            nucleus,
            induced: Arc::new(induced),
            position,
        }
    }

    pub fn nucleus(&self) -> &Nucleus {
        &self.nucleus
    }

    pub fn induced(&self) -> &Arc<Frame> {
        &self.induced
    }

    /// Carrier element of an induced element.
    pub fn to_carrier(&self, i: Elem) -> Elem {
        self.nucleus.fix()[i]
    }

    /// Induced element of `j(x)`.
    pub fn project(&self, x: Elem) -> Elem {
        self.position[&self.nucleus.apply(x)]
    }
}

/// Sublocale generated by one element, `x ↦ (x → a) → a`; always Boolean.
pub fn boolean_sublocale(frame: &Arc<Frame>, a: Elem) -> Result<Sublocale> {
    if a >= frame.len() {
        return Err(Error::UnknownElement(format!("#{a}")));
    }
    let s = Sublocale::new(generated_by_set(frame, &[a]));
    assert!(
        crate::lattice::is_boolean(s.induced()).is_boolean,
        "sublocale generated by a single element is not Boolean"
    );
    Ok(s)
}

/// All nuclei of a frame, ordered lexicographically by fix-set.
#[derive(Clone, Debug)]
pub struct NucleusLattice {
    frame: Arc<Frame>,
    nuclei: Vec<Nucleus>,
    /// `leq[i * n + k]` iff nucleus `i` ≤ nucleus `k` pointwise.
    leq: Vec<bool>,
}

impl NucleusLattice {
    pub fn frame(&self) -> &Arc<Frame> {
        &self.frame
    }

    pub fn nuclei(&self) -> &[Nucleus] {
        &self.nuclei
    }

    pub fn len(&self) -> usize {
        self.nuclei.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nuclei.is_empty()
    }

    pub fn leq(&self, i: usize, k: usize) -> bool {
        self.leq[i * self.nuclei.len() + k]
    }

    pub fn position(&self, j: &Nucleus) -> Option<usize> {
        self.nuclei.binary_search_by(|n| n.fix.cmp(&j.fix)).ok()
    }

    /// First pair whose pointwise meet is missing from the list.
    pub fn meet_closure_failure(&self) -> Option<(usize, usize)> {
        for i in 0..self.len() {
            for k in i..self.len() {
                let m = self.nuclei[i].meet(&self.nuclei[k]).expect("same frame");
                if self.position(&m).is_none() {
                    return Some((i, k));
                }
            }
        }
        None
    }

    /// First pair whose fix-set intersection is not itself a fix-set.
    pub fn intersection_closure_failure(&self) -> Option<(usize, usize)> {
        for i in 0..self.len() {
            for k in i..self.len() {
                let inter: Vec<Elem> = self.nuclei[i]
                    .fix
                    .iter()
                    .copied()
                    .filter(|x| self.nuclei[k].fix.binary_search(x).is_ok())
                    .collect();
                if self
                    .nuclei
                    .binary_search_by(|n| n.fix.as_slice().cmp(&inter))
                    .is_err()
                {
                    return Some((i, k));
                }
            }
        }
        None
    }

    /// The pointwise order as a lattice; element names are the fix-sets.
    pub fn as_lattice(&self) -> Result<FiniteLattice> {
        let names = self
            .nuclei
            .iter()
            .map(|j| subset_name(j.fix_names()))
            .collect();
        let poset = FinitePoset::from_order(names, |i, k| self.leq(i, k));
        FiniteLattice::from_poset(poset)
    }
}

/// Enumerates nuclei by filtering candidate fix-sets: subsets containing
/// top, closed under meets, and closed under `x → -`.
pub fn enumerate_nuclei(frame: &Arc<Frame>, limits: &Limits) -> Result<NucleusLattice> {
    let n = frame.len();
    let cap = limits.max_nucleus_carrier.min(40);
    if n > cap {
        return Err(Error::SizeLimit {
            what: "carrier for nucleus enumeration",
            size: n,
            limit: cap,
        });
    }
    let top = frame.top();
    let bit = |x: Elem| 1u64 << x;
    let meet_mask: Vec<u64> = (0..n * n).map(|k| bit(frame.meet(k / n, k % n))).collect();
    // {x → y | x} for each y
    let imp_mask: Vec<u64> = frame
        .elements()
        .map(|y| frame.elements().fold(0, |m, x| m | bit(frame.imp(x, y))))
        .collect();
    let others: Vec<Elem> = frame.elements().filter(|&x| x != top).collect();
    let mut fixes: Vec<Vec<Elem>> = Vec::new();
    for choice in 0u64..(1u64 << others.len()) {
        let mut set = bit(top);
        for (i, &x) in others.iter().enumerate() {
            if choice >> i & 1 == 1 {
                set |= bit(x);
            }
        }
        let members: Vec<Elem> = (0..n).filter(|&x| set & bit(x) != 0).collect();
        let imp_closed = members.iter().all(|&y| imp_mask[y] & !set == 0);
        if !imp_closed {
            continue;
        }
        let meet_closed = members
            .iter()
            .all(|&a| members.iter().all(|&b| meet_mask[a * n + b] & set != 0));
        if meet_closed {
            fixes.push(members);
        }
    }
    fixes.sort();
    let nuclei: Vec<Nucleus> = fixes
        .iter()
        .map(|fix| Nucleus::trusted(frame.clone(), closure_from_fix(frame, fix)))
        .collect();
    let m = nuclei.len();
    let mut leq = vec![false; m * m];
    for i in 0..m {
        for k in 0..m {
            leq[i * m + k] = nuclei[i].leq_pointwise(&nuclei[k]);
        }
    }
    Ok(NucleusLattice {
        frame: frame.clone(),
        nuclei,
        leq,
    })
}

/// `X_{j1} ⊆ X_{j2}`, computed both as fix-set inclusion and as
/// `j2 ≤ j1` pointwise.
pub fn sublocale_leq(j1: &Nucleus, j2: &Nucleus) -> Result<bool> {
    if !same_frame(j1.frame(), j2.frame()) {
        return Err(Error::FrameMismatch);
    }
    let by_fix = j1.fix().iter().all(|&x| j2.is_fixed(x));
    let by_order = j2.leq_pointwise(j1);
    assert_eq!(
        by_fix, by_order,
        "fix-set inclusion and pointwise order disagree"
    );
    Ok(by_fix)
}

/// `j(0) = 0`
pub fn is_dense(j: &Nucleus) -> bool {
    let f = j.frame();
    j.apply(f.bottom()) == f.bottom()
}

/// The three equivalent formulations of strong density.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StrongDensity {
    /// `j(x) ≤ j(e(p)) ⇒ x ≤ e(p)` for all `x`, `p`
    pub reflects: bool,
    /// `j(e(p)) ≤ e(p)` for all `p`
    pub bounded: bool,
    /// `j ∘ e = e`
    pub fixes_image: bool,
}

impl StrongDensity {
    pub fn holds(&self) -> bool {
        self.fixes_image
    }
}

pub fn is_strongly_dense(x: &OmegaFrame, j: &Nucleus) -> Result<StrongDensity> {
    if !same_frame(x.carrier(), j.frame()) {
        return Err(Error::FrameMismatch);
    }
    let (f, om) = (x.carrier(), x.omega());
    let reflects = om.elements().all(|p| {
        let ep = x.e(p);
        f.elements()
            .all(|y| !f.leq(j.apply(y), j.apply(ep)) || f.leq(y, ep))
    });
    let bounded = om.elements().all(|p| f.leq(j.apply(x.e(p)), x.e(p)));
    let fixes_image = om.elements().all(|p| j.apply(x.e(p)) == x.e(p));
    let sd = StrongDensity {
        reflects,
        bounded,
        fixes_image,
    };
    assert!(
        reflects == bounded && bounded == fixes_image,
        "strong density formulations disagree: {sd:?}"
    );
    Ok(sd)
}

/// Nucleus of the smallest strongly dense sublocale, generated by the image
/// of the structure map.
pub fn min_strongly_dense(x: &OmegaFrame) -> Nucleus {
    let mut image: Vec<Elem> = x.structure_map().to_vec();
    image.sort_unstable();
    image.dedup();
    let j = generated_by_set(x.carrier(), &image);
    debug_assert!(is_strongly_dense(x, &j).map(|s| s.holds()).unwrap_or(false));
    j
}

/// `⋁{x | pos(z ∧ x) ≤ pos(z ∧ y) for all z}`
pub fn dominated_join(x: &OmegaFrame, y: Elem) -> Result<Elem> {
    let pos = x.pos_table().ok_or(Error::NotOvert)?;
    let (f, om) = (x.carrier(), x.omega());
    Ok(f.join_all(f.elements().filter(|&c| {
        f.elements()
            .all(|z| om.leq(pos[f.meet(z, c)], pos[f.meet(z, y)]))
    })))
}

/// Nucleus of the smallest overt, strongly dense sublocale of an overt
/// locale. Computed in join form and in meet form `⋀_z z → e(pos(z ∧ y))`;
/// both must agree with each other and with [`min_strongly_dense`].
pub fn rx_nucleus(x: &OmegaFrame) -> Result<Nucleus> {
    let f = x.carrier();
    let mut join_form = Vec::with_capacity(f.len());
    for y in f.elements() {
        join_form.push(dominated_join(x, y)?);
    }
    let meet_form: Vec<Elem> = f
        .elements()
        .map(|y| {
            f.meet_all(
                f.elements()
                    .map(|z| f.imp(z, x.e_pos(f.meet(z, y)).expect("overt"))),
            )
        })
        .collect();
    assert_eq!(join_form, meet_form, "join and meet forms of R_X disagree");
    let r = Nucleus::trusted(f.clone(), meet_form);
    assert_eq!(
        r.table,
        min_strongly_dense(x).table,
        "R_X differs from the smallest strongly dense nucleus"
    );
    assert!(
        r.leq_pointwise(&double_negation(f)),
        "R_X is not below double negation"
    );
    Ok(r)
}

/// The sublocale `X_j` as an Ω-frame with structure map `p ↦ j(e(p))`.
pub fn sub_omega_frame(x: &OmegaFrame, j: &Nucleus) -> Result<OmegaFrame> {
    if !same_frame(x.carrier(), j.frame()) {
        return Err(Error::FrameMismatch);
    }
    let sub = Sublocale::new(j.clone());
    let e = x.omega().elements().map(|p| sub.project(x.e(p))).collect();
    let xj = OmegaFrame::new(x.omega().clone(), sub.induced().clone(), e)?;
    if is_strongly_dense(x, j)?.holds() {
        if let Some(pos) = x.pos_table() {
            let sub_pos = xj
                .pos_table()
                .expect("strongly dense sublocale of an overt locale is overt");
            for i in sub.induced().elements() {
                assert_eq!(
                    sub_pos[i],
                    pos[sub.to_carrier(i)],
                    "sublocale pos is not a restriction"
                );
            }
        }
        if let Some(sub_pos) = xj.pos_table() {
            let pos = x
                .pos_table()
                .expect("overt strongly dense sublocale forces overtness");
            for y in x.carrier().elements() {
                assert_eq!(
                    pos[y],
                    sub_pos[sub.project(y)],
                    "pos does not factor through j"
                );
            }
        }
    }
    Ok(xj)
}
