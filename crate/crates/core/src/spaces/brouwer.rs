//! Ω-valued evaluation of a family of topologies on the two-point set.
//!
//! For a truth value `p`, a subset `D` of `{0, 1}` is open when
//! `D ⊆ P ∪ Q_D`, where `P = {x | p}` and `Q_D = {x | P ⊆ D}`. Every
//! statement about this topology is evaluated in the Heyting algebra `Ω`:
//! connectives are the frame operations and quantifiers over the finite
//! ranges become meets and joins. Subsets range over all `|Ω|²` membership
//! maps. In every such topology each subset is weakly closed, while every
//! subset being open holds only to the extent that `p ∨ ¬p` does.

use crate::error::{Error, Result};
use crate::lattice::{Elem, Frame};
use crate::omega::TruthValue;

/// Ω-valued membership for the two points `0` and `1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct OmegaSubset(pub [Elem; 2]);

impl OmegaSubset {
    pub fn all(omega: &Frame) -> Vec<OmegaSubset> {
        omega
            .elements()
            .flat_map(|a| omega.elements().map(move |b| OmegaSubset([a, b])))
            .collect()
    }

    #[inline]
    pub fn member(&self, x: usize) -> Elem {
        self.0[x]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BrouwerReport {
    pub p: TruthValue,
    pub topology_axioms_value: TruthValue,
    pub cl_eq_id_value: TruthValue,
    pub int_eq_id_value: TruthValue,
    pub excluded_middle_value: TruthValue,
}

impl BrouwerReport {
    /// Axioms hold, closure is the identity, and `int = id` is bounded by
    /// excluded middle for `p`.
    pub fn contracts_hold(&self, omega: &Frame) -> bool {
        self.topology_axioms_value.0 == omega.top()
            && self.cl_eq_id_value.0 == omega.top()
            && omega.leq(self.int_eq_id_value.0, self.excluded_middle_value.0)
    }
}

struct Engine<'a> {
    omega: &'a Frame,
    p: Elem,
    subsets: Vec<OmegaSubset>,
    open: Vec<Elem>,
}

impl<'a> Engine<'a> {
    fn new(omega: &'a Frame, p: Elem) -> Self {
        let subsets = OmegaSubset::all(omega);
        let mut e = Engine {
            omega,
            p,
            subsets,
            open: Vec::new(),
        };
        e.open = e.subsets.iter().map(|&d| e.open_value(d)).collect();
        e
    }

    /// `Q_D`: `P ⊆ D`, the same for both points.
    fn q(&self, d: OmegaSubset) -> Elem {
        let o = self.omega;
        o.meet_all((0..2).map(|y| o.imp(self.p, d.member(y))))
    }

    /// `D ⊆ P ∪ Q_D`
    fn open_value(&self, d: OmegaSubset) -> Elem {
        let o = self.omega;
        let bound = o.join(self.p, self.q(d));
        o.meet_all((0..2).map(|x| o.imp(d.member(x), bound)))
    }

    fn incl(&self, d: OmegaSubset, e: OmegaSubset) -> Elem {
        let o = self.omega;
        o.meet_all((0..2).map(|x| o.imp(d.member(x), e.member(x))))
    }

    /// `D ≬ E`
    fn meets(&self, d: OmegaSubset, e: OmegaSubset) -> Elem {
        let o = self.omega;
        o.join_all((0..2).map(|x| o.meet(d.member(x), e.member(x))))
    }

    /// `x ∈ cl D`: every open `E` containing `x` meets `D`.
    fn closure(&self, d: OmegaSubset, x: usize) -> Elem {
        let o = self.omega;
        o.meet_all(
            self.subsets
                .iter()
                .zip(&self.open)
                .map(|(&e, &oe)| o.imp(o.meet(oe, e.member(x)), self.meets(e, d))),
        )
    }

    /// `x ∈ int D`: some open `E ⊆ D` contains `x`.
    fn interior(&self, d: OmegaSubset, x: usize) -> Elem {
        let o = self.omega;
        o.join_all(
            self.subsets
                .iter()
                .zip(&self.open)
                .map(|(&e, &oe)| o.meet(o.meet(oe, e.member(x)), self.incl(e, d))),
        )
    }

    fn combine(
        &self,
        d: OmegaSubset,
        e: OmegaSubset,
        f: impl Fn(Elem, Elem) -> Elem,
    ) -> OmegaSubset {
        OmegaSubset([f(d.0[0], e.0[0]), f(d.0[1], e.0[1])])
    }

    fn open_of(&self, d: OmegaSubset) -> Elem {
        let n = self.omega.len();
        self.open[d.0[0] * n + d.0[1]]
    }

    fn topology_axioms(&self) -> Elem {
        let o = self.omega;
        let empty = OmegaSubset([o.bottom(), o.bottom()]);
        let whole = OmegaSubset([o.top(), o.top()]);
        let mut v = o.meet(self.open_of(empty), self.open_of(whole));
        for (&d, &od) in self.subsets.iter().zip(&self.open) {
            for (&e, &oe) in self.subsets.iter().zip(&self.open) {
                let both = o.meet(od, oe);
                let inter = self.combine(d, e, |a, b| o.meet(a, b));
                let union = self.combine(d, e, |a, b| o.join(a, b));
                v = o.meet(v, o.imp(both, self.open_of(inter)));
                v = o.meet(v, o.imp(both, self.open_of(union)));
            }
        }
        v
    }

    fn operator_is_identity(&self, op: impl Fn(OmegaSubset, usize) -> Elem) -> Elem {
        let o = self.omega;
        o.meet_all(
            self.subsets
                .iter()
                .flat_map(|&d| (0..2).map(move |x| (d, x)))
                .map(|(d, x)| o.iff(op(d, x), d.member(x))),
        )
    }
}

pub fn brouwer_counterexample(omega: &Frame, p: Elem) -> Result<BrouwerReport> {
    if p >= omega.len() {
        return Err(Error::UnknownElement(format!("#{p}")));
    }
    let engine = Engine::new(omega, p);
    let report = BrouwerReport {
        p: TruthValue(p),
        topology_axioms_value: TruthValue(engine.topology_axioms()),
        cl_eq_id_value: TruthValue(engine.operator_is_identity(|d, x| engine.closure(d, x))),
        int_eq_id_value: TruthValue(engine.operator_is_identity(|d, x| engine.interior(d, x))),
        excluded_middle_value: TruthValue(omega.join(p, omega.neg(p))),
    };
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{c3, chain, two};

    #[test]
    fn classical_base() {
        let o = two();
        for p in 0..2 {
            let r = brouwer_counterexample(&o, p).unwrap();
            assert_eq!(r.topology_axioms_value, TruthValue(1));
            assert_eq!(r.cl_eq_id_value, TruthValue(1));
            assert_eq!(r.int_eq_id_value, TruthValue(1));
            assert_eq!(r.excluded_middle_value, TruthValue(1));
        }
    }

    #[test]
    fn c3_at_a() {
        let o = c3();
        let engine = Engine::new(&o, 1);
        let d = OmegaSubset([2, 0]);
        assert_eq!(engine.q(d), 0);
        assert_eq!(engine.open_value(d), 1);
        let r = brouwer_counterexample(&o, 1).unwrap();
        assert_eq!(r.cl_eq_id_value, TruthValue(2));
        assert_eq!(r.excluded_middle_value, TruthValue(1));
        assert!(o.leq(r.int_eq_id_value.0, 1));
        assert!(r.contracts_hold(&o));
    }

    #[test]
    fn unknown_truth_value() {
        assert!(matches!(
            brouwer_counterexample(&chain(4), 9),
            Err(Error::UnknownElement(_))
        ));
    }
}
