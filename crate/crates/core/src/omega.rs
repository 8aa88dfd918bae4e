//! Frames relative to a finite base of truth values.
//!
//! An [`OmegaFrame`] pairs a carrier frame with a base frame `Ω` and a frame
//! homomorphism `e: Ω → carrier` standing for the unique locale map into the
//! terminal locale. When `e` has a left adjoint `pos` the locale is overt and
//! `pos(x) = 1` is the positive reading of "x is not bottom". Taking `Ω` to be
//! the two-element frame recovers the classical setting.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::lattice::{Elem, FiniteLattice, FinitePoset, Frame};
use crate::Limits;

/// An element of the base frame `Ω`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TruthValue(pub Elem);

#[derive(Clone, Debug)]
pub struct OmegaFrame {
    omega: Arc<Frame>,
    carrier: Arc<Frame>,
    e: Vec<Elem>,
    pos: Option<Vec<Elem>>,
}

impl OmegaFrame {
    /// Validates `e` as a frame homomorphism and computes `pos` when it exists.
    pub fn new(omega: Arc<Frame>, carrier: Arc<Frame>, e: Vec<Elem>) -> Result<Self> {
        if e.len() != omega.len() {
            return Err(Error::Document(format!(
                "structure map has {} entries, base has {} elements",
                e.len(),
                omega.len()
            )));
        }
        if let Some(&bad) = e.iter().find(|&&v| v >= carrier.len()) {
            return Err(Error::UnknownElement(format!("#{bad}")));
        }
        check_homomorphism(&omega, &carrier, &e)?;
        let pc = compute_pos(&omega, &carrier, &e);
        Ok(OmegaFrame {
            omega,
            carrier,
            e,
            pos: pc.overt.then_some(pc.candidate),
        })
    }

    /// Same as [`OmegaFrame::new`] with the structure map given by names.
    pub fn from_names(
        omega: Arc<Frame>,
        carrier: Arc<Frame>,
        e: &BTreeMap<String, String>,
    ) -> Result<Self> {
        for k in e.keys() {
            omega.index_of(k)?;
        }
        let mut map = Vec::with_capacity(omega.len());
        for p in omega.elements() {
            let target = e.get(omega.name(p)).ok_or_else(|| {
                Error::Document(format!("\"e\" has no entry for `{}`", omega.name(p)))
            })?;
            map.push(carrier.index_of(target)?);
        }
        Self::new(omega, carrier, map)
    }

    /// Classical base: `Ω` is the two-element frame and `e` is forced.
    pub fn classical(carrier: Arc<Frame>) -> Self {
        let omega = crate::fixtures::two();
        let e = vec![carrier.bottom(), carrier.top()];
        Self::new(omega, carrier, e).expect("the forced map is a homomorphism")
    }

    #[cfg(test)]
    pub(crate) fn without_pos(omega: Arc<Frame>, carrier: Arc<Frame>, e: Vec<Elem>) -> Self {
        OmegaFrame {
            omega,
            carrier,
            e,
            pos: None,
        }
    }

    pub fn omega(&self) -> &Arc<Frame> {
        &self.omega
    }

    pub fn carrier(&self) -> &Arc<Frame> {
        &self.carrier
    }

    /// True when the base is the two-element frame.
    pub fn is_classical(&self) -> bool {
        self.omega.len() == 2
    }

    #[inline]
    pub fn e(&self, p: Elem) -> Elem {
        self.e[p]
    }

    pub fn structure_map(&self) -> &[Elem] {
        &self.e
    }

    pub fn is_overt(&self) -> bool {
        self.pos.is_some()
    }

    pub fn pos_table(&self) -> Option<&[Elem]> {
        self.pos.as_deref()
    }

    pub fn pos(&self, x: Elem) -> Result<Elem> {
        self.pos.as_ref().map(|t| t[x]).ok_or(Error::NotOvert)
    }

    /// `e ∘ pos`, the closure whose fixed points are the image of `e`.
    pub fn e_pos(&self, x: Elem) -> Result<Elem> {
        Ok(self.e(self.pos(x)?))
    }
}

fn check_homomorphism(omega: &Frame, carrier: &Frame, e: &[Elem]) -> Result<()> {
    let fail = |op, args: &[Elem]| Error::NotAHomomorphism {
        op,
        args: args
            .iter()
            .map(|&p| omega.name(p))
            .collect::<Vec<_>>()
            .join(", "),
    };
    if e[omega.top()] != carrier.top() {
        return Err(fail("top", &[omega.top()]));
    }
    if e[omega.bottom()] != carrier.bottom() {
        return Err(fail("bottom", &[omega.bottom()]));
    }
    for p in omega.elements() {
        for q in omega.elements() {
            if e[omega.meet(p, q)] != carrier.meet(e[p], e[q]) {
                return Err(fail("meet", &[p, q]));
            }
        }
    }
    for p in omega.elements() {
        for q in omega.elements() {
            if e[omega.join(p, q)] != carrier.join(e[p], e[q]) {
                return Err(fail("join", &[p, q]));
            }
        }
    }
    Ok(())
}

/// Candidate left adjoint and whether it is one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PosComputation {
    pub candidate: Vec<Elem>,
    pub overt: bool,
}

/// `pos(x) = ⋀{p | x ≤ e(p)}`; overt iff `x ≤ e(pos(x))` for every `x`.
pub fn compute_pos(omega: &Frame, carrier: &Frame, e: &[Elem]) -> PosComputation {
    let candidate: Vec<Elem> = carrier
        .elements()
        .map(|x| omega.meet_all(omega.elements().filter(|&p| carrier.leq(x, e[p]))))
        .collect();
    let overt = carrier.elements().all(|x| carrier.leq(x, e[candidate[x]]));
    PosComputation { candidate, overt }
}

/// `pos(x) = 1`
pub fn is_positive(x_frame: &OmegaFrame, x: Elem) -> Result<bool> {
    Ok(x_frame.pos(x)? == x_frame.omega().top())
}

/// `x >< y` iff `pos(x ∧ y) = 1`.
pub fn overlap(x_frame: &OmegaFrame, x: Elem, y: Elem) -> Result<bool> {
    is_positive(x_frame, x_frame.carrier().meet(x, y))
}

pub fn classical_omega_frame(frame: Arc<Frame>) -> OmegaFrame {
    OmegaFrame::classical(frame)
}

/// Every frame homomorphism `omega → carrier`, in lexicographic order of the
/// image tuple.
pub fn homomorphisms(omega: &Frame, carrier: &Frame) -> Vec<Vec<Elem>> {
    let mut out = Vec::new();
    let mut partial = Vec::with_capacity(omega.len());
    extend_homomorphism(omega, carrier, &mut partial, &mut out);
    out
}

fn extend_homomorphism(
    omega: &Frame,
    carrier: &Frame,
    partial: &mut Vec<Elem>,
    out: &mut Vec<Vec<Elem>>,
) {
    let p = partial.len();
    if p == omega.len() {
        // pruning below only sees operations whose result is already assigned
        if check_homomorphism(omega, carrier, partial).is_ok() {
            out.push(partial.clone());
        }
        return;
    }
    for v in carrier.elements() {
        if p == omega.top() && v != carrier.top() {
            continue;
        }
        if p == omega.bottom() && v != carrier.bottom() {
            continue;
        }
        partial.push(v);
        let consistent = (0..=p).all(|q| {
            let (m, j) = (omega.meet(p, q), omega.join(p, q));
            let q = partial[q];
            (m > p || partial[m] == carrier.meet(partial[p], q))
                && (j > p || partial[j] == carrier.join(partial[p], q))
        });
        if consistent {
            extend_homomorphism(omega, carrier, partial, out);
        }
        partial.pop();
    }
}

/// Discrete locale over `omega`: carrier = all maps `points → omega` with
/// pointwise operations, `e(p)` = the constant map at `p`.
pub fn discrete_omega_frame<S: AsRef<str>>(
    omega: Arc<Frame>,
    points: &[S],
    limits: &Limits,
) -> Result<OmegaFrame> {
    let base = omega.len();
    let k = points.len();
    let size = (0..k).try_fold(1usize, |acc, _| acc.checked_mul(base));
    let size = match size {
        Some(s) if s <= limits.max_carrier => s,
        _ => {
            return Err(Error::SizeLimit {
                what: "discrete carrier",
                size: size.unwrap_or(usize::MAX),
                limit: limits.max_carrier,
            })
        }
    };
    // element index = Σ value(i) · base^(k-1-i), so the first point is most significant
    let decode = |mut m: usize| {
        let mut v = vec![0; k];
        for i in (0..k).rev() {
            v[i] = m % base;
            m /= base;
        }
        v
    };
    let encode = |v: &[Elem]| v.iter().fold(0, |acc, &x| acc * base + x);
    let tuples: Vec<Vec<Elem>> = (0..size).map(decode).collect();
    let names = tuples
        .iter()
        .map(|t| {
            let parts: Vec<String> = t
                .iter()
                .zip(points)
                .map(|(&v, s)| format!("{}={}", s.as_ref(), omega.name(v)))
                .collect();
            format!("[{}]", parts.join(","))
        })
        .collect();
    let pointwise = |f: &dyn Fn(Elem, Elem) -> Elem, x: Elem, y: Elem| {
        let t: Vec<Elem> = tuples[x]
            .iter()
            .zip(&tuples[y])
            .map(|(&a, &b)| f(a, b))
            .collect();
        encode(&t)
    };
    let poset = FinitePoset::from_order(names, |x, y| {
        tuples[x]
            .iter()
            .zip(&tuples[y])
            .all(|(&a, &b)| omega.leq(a, b))
    });
    let lattice = FiniteLattice::from_tables(
        poset,
        |x, y| pointwise(&|a, b| omega.meet(a, b), x, y),
        |x, y| pointwise(&|a, b| omega.join(a, b), x, y),
    );
    let carrier = Frame::from_tables(lattice, |x, y| pointwise(&|a, b| omega.imp(a, b), x, y));
    let e = omega.elements().map(|p| encode(&vec![p; k])).collect();
    OmegaFrame::new(omega, Arc::new(carrier), e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{b4, c3, clc3, disc, oc3, two};

    #[test]
    fn constructing_the_named_examples() {
        let x = clc3();
        assert_eq!(x.structure_map(), &[0, 2]);
        let x = oc3();
        assert_eq!(x.structure_map(), &[0, 1, 2]);
        // C3 → TWO collapsing a to 0 is a homomorphism
        let x = OmegaFrame::new(c3(), two(), vec![0, 0, 1]).unwrap();
        assert!(x.is_overt());
    }

    #[test]
    fn rejects_non_homomorphisms() {
        let err = OmegaFrame::new(c3(), c3(), vec![0, 2, 1]).unwrap_err();
        assert!(matches!(err, Error::NotAHomomorphism { op: "top", .. }));
        let err = OmegaFrame::new(two(), b4(), vec![0, 1]).unwrap_err();
        assert!(matches!(err, Error::NotAHomomorphism { op: "top", .. }));
        // B4 → B4 swapping a complement pair with a non-complement breaks joins
        let err = OmegaFrame::new(b4(), b4(), vec![0, 1, 1, 3]).unwrap_err();
        assert!(matches!(err, Error::NotAHomomorphism { op: "meet", .. }));
        let mut e = BTreeMap::new();
        e.insert("0".to_owned(), "0".to_owned());
        e.insert("1".to_owned(), "zz".to_owned());
        assert_eq!(
            OmegaFrame::from_names(two(), c3(), &e).unwrap_err(),
            Error::UnknownElement("zz".into())
        );
    }

    #[test]
    fn pos_of_named_examples() {
        assert_eq!(clc3().pos_table().unwrap(), &[0, 1, 1]);
        assert_eq!(oc3().pos_table().unwrap(), &[0, 1, 2]);
        let d = disc(c3(), &["s", "t"]);
        assert_eq!(d.carrier().len(), 9);
        let pos = d.pos_table().unwrap();
        for f in d.carrier().elements() {
            // f = (f(s), f(t)) in base-3 digits
            let (fs, ft) = (f / 3, f % 3);
            assert_eq!(pos[f], fs.max(ft), "{}", d.carrier().name(f));
        }
    }

    #[test]
    fn positivity_and_overlap() {
        let x = clc3();
        assert!(is_positive(&x, 1).unwrap());
        assert!(!is_positive(&x, 0).unwrap());
        assert!(overlap(&x, 1, 2).unwrap());
        assert!(!overlap(&x, 2, 0).unwrap());
        let x = oc3();
        assert!(!is_positive(&x, 1).unwrap());
        assert!(overlap(&x, 2, 2).unwrap());
        let x = OmegaFrame::without_pos(c3(), c3(), vec![0, 1, 2]);
        assert_eq!(is_positive(&x, 1), Err(Error::NotOvert));
        assert_eq!(overlap(&x, 1, 1), Err(Error::NotOvert));
    }

    #[test]
    fn classical_bases() {
        let x = classical_omega_frame(two());
        assert_eq!(x.structure_map(), &[0, 1]);
        let x = classical_omega_frame(b4());
        assert!(x.is_classical());
        for v in x.carrier().elements() {
            assert_eq!(is_positive(&x, v).unwrap(), v != x.carrier().bottom());
        }
    }

    #[test]
    fn homomorphisms_from_c3_hit_every_element() {
        let homs = homomorphisms(&c3(), &b4());
        assert_eq!(homs.len(), 4);
        assert!(homs.iter().all(|h| h[0] == 0 && h[2] == 3));
        assert_eq!(homomorphisms(&two(), &c3()), vec![vec![0, 2]]);
        // B4 → C3: the only homomorphisms send complements to {0,1}
        assert_eq!(homomorphisms(&b4(), &c3()).len(), 2);
    }

    #[test]
    fn discrete_cap() {
        let small = Limits {
            max_carrier: 8,
            ..Limits::default()
        };
        assert!(matches!(
            discrete_omega_frame(c3(), &["s", "t"], &small),
            Err(Error::SizeLimit { .. })
        ));
        let one = discrete_omega_frame::<&str>(c3(), &[], &Limits::default()).unwrap();
        assert_eq!(one.carrier().len(), 1);
    }
}
