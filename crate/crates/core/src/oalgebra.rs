//! Weak regularity, overlap algebras and the overlap-relation axioms.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::lattice::{is_boolean, is_frame, Elem, FiniteLattice, Frame};
use crate::nuclei::{dominated_join, rx_nucleus};
use crate::omega::{discrete_omega_frame, overlap, OmegaFrame};
use crate::Limits;

/// `a = ⋁{x | pos(z ∧ x) ≤ pos(z ∧ a) for all z}`
pub fn is_weakly_regular(x: &OmegaFrame, a: Elem) -> Result<bool> {
    let regular = dominated_join(x, a)? == a;
    debug_assert_eq!(regular, rx_nucleus(x)?.is_fixed(a));
    Ok(regular)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OAlgebraReport {
    pub overt: bool,
    pub weakly_regular_all: bool,
    pub is_oalgebra: bool,
    pub is_boolean: bool,
    /// Least element that is not weakly regular.
    pub failing_element: Option<Elem>,
    /// Least `(x, y)` with `pos(z ∧ x) ≤ pos(z ∧ y)` for all `z` but `x ≰ y`.
    pub failing_pair: Option<(Elem, Elem)>,
}

/// `pos(z ∧ x) ≤ pos(z ∧ y)` for every `z`.
fn dominated(x: &OmegaFrame, pos: &[Elem], a: Elem, b: Elem) -> bool {
    let (f, om) = (x.carrier(), x.omega());
    f.elements()
        .all(|z| om.leq(pos[f.meet(z, a)], pos[f.meet(z, b)]))
}

/// Overt, and `x ≤ y` whenever `pos(z ∧ x) ≤ pos(z ∧ y)` for all `z`.
/// Cross-checked against `R_X` being the identity.
pub fn is_oalgebra(x: &OmegaFrame) -> OAlgebraReport {
    let f = x.carrier();
    let is_boolean = is_boolean(f).is_boolean;
    let Some(pos) = x.pos_table() else {
        return OAlgebraReport {
            overt: false,
            weakly_regular_all: false,
            is_oalgebra: false,
            is_boolean,
            failing_element: None,
            failing_pair: None,
        };
    };
    let mut failing_pair = None;
    'scan: for a in f.elements() {
        for b in f.elements() {
            if !f.leq(a, b) && dominated(x, pos, a, b) {
                failing_pair = Some((a, b));
                break 'scan;
            }
        }
    }
    let failing_element = f
        .elements()
        .find(|&a| dominated_join(x, a).expect("overt") != a);
    let report = OAlgebraReport {
        overt: true,
        weakly_regular_all: failing_element.is_none(),
        is_oalgebra: failing_pair.is_none(),
        is_boolean,
        failing_element,
        failing_pair,
    };
    assert_eq!(report.is_oalgebra, report.weakly_regular_all);
    assert_eq!(
        report.is_oalgebra,
        rx_nucleus(x).expect("overt").is_identity(),
        "o-algebra test disagrees with R_X = id"
    );
    report
}

/// A lattice with a symmetric relation `><`.
#[derive(Clone, Debug)]
pub struct OverlapStructure {
    lattice: FiniteLattice,
    rel: Vec<bool>,
}

impl OverlapStructure {
    /// `rel[x * n + y]`; must be symmetric.
    pub fn new(lattice: FiniteLattice, rel: Vec<bool>) -> Result<Self> {
        let n = lattice.len();
        if rel.len() != n * n {
            return Err(Error::Document(format!(
                "relation has {} entries, expected {}",
                rel.len(),
                n * n
            )));
        }
        for x in 0..n {
            for y in 0..n {
                if rel[x * n + y] != rel[y * n + x] {
                    return Err(Error::Document(format!(
                        "relation is not symmetric at ({}, {})",
                        lattice.name(x),
                        lattice.name(y)
                    )));
                }
            }
        }
        Ok(OverlapStructure { lattice, rel })
    }

    /// Symmetric closure of the given pairs.
    pub fn from_pairs(lattice: FiniteLattice, pairs: &[(Elem, Elem)]) -> Self {
        let n = lattice.len();
        let mut rel = vec![false; n * n];
        for &(x, y) in pairs {
            rel[x * n + y] = true;
            rel[y * n + x] = true;
        }
        OverlapStructure { lattice, rel }
    }

    /// `x >< y` iff `x ∧ y ≠ 0`.
    pub fn meet_inhabited(lattice: FiniteLattice) -> Self {
        let n = lattice.len();
        let rel = (0..n * n)
            .map(|k| lattice.meet(k / n, k % n) != lattice.bottom())
            .collect();
        OverlapStructure { lattice, rel }
    }

    pub fn lattice(&self) -> &FiniteLattice {
        &self.lattice
    }

    #[inline]
    pub fn related(&self, x: Elem, y: Elem) -> bool {
        self.rel[x * self.lattice.len() + y]
    }

    pub fn pairs(&self) -> Vec<(Elem, Elem)> {
        let n = self.lattice.len();
        (0..n * n)
            .filter(|&k| self.rel[k])
            .map(|k| (k / n, k % n))
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SplittingFailure {
    /// `x >< (y1 ∨ y2)` disagrees with `x >< y1 or x >< y2`
    Binary(Elem, Elem, Elem),
    /// `x >< 0`
    Empty(Elem),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OverlapAxiomsReport {
    pub transfer: bool,
    pub splitting: bool,
    pub density: bool,
    /// `(x, z, y)` with `(x ∧ z) >< y` but not `x >< (z ∧ y)`, or vice versa.
    pub transfer_witness: Option<(Elem, Elem, Elem)>,
    pub splitting_witness: Option<SplittingFailure>,
    /// `(x, y)` where `x ≤ y` and `∀z (z >< x ⇒ z >< y)` disagree.
    pub density_witness: Option<(Elem, Elem)>,
}

impl OverlapAxiomsReport {
    pub fn all_hold(&self) -> bool {
        self.transfer && self.splitting && self.density
    }
}

pub fn overlap_axioms_check(o: &OverlapStructure) -> OverlapAxiomsReport {
    let l = &o.lattice;
    let mut transfer_witness = None;
    'transfer: for x in l.elements() {
        for z in l.elements() {
            for y in l.elements() {
                if o.related(l.meet(x, z), y) != o.related(x, l.meet(z, y)) {
                    transfer_witness = Some((x, z, y));
                    break 'transfer;
                }
            }
        }
    }
    let mut splitting_witness = l
        .elements()
        .find(|&x| o.related(x, l.bottom()))
        .map(SplittingFailure::Empty);
    if splitting_witness.is_none() {
        'split: for x in l.elements() {
            for y1 in l.elements() {
                for y2 in l.elements() {
                    let lhs = o.related(x, l.join(y1, y2));
                    if lhs != (o.related(x, y1) || o.related(x, y2)) {
                        splitting_witness = Some(SplittingFailure::Binary(x, y1, y2));
                        break 'split;
                    }
                }
            }
        }
    }
    let mut density_witness = None;
    'density: for x in l.elements() {
        for y in l.elements() {
            let traced = l.elements().all(|z| !o.related(z, x) || o.related(z, y));
            if traced != l.leq(x, y) {
                density_witness = Some((x, y));
                break 'density;
            }
        }
    }
    OverlapAxiomsReport {
        transfer: transfer_witness.is_none(),
        splitting: splitting_witness.is_none(),
        density: density_witness.is_none(),
        transfer_witness,
        splitting_witness,
        density_witness,
    }
}

/// Frame and classical overt structure carried by a lattice with an overlap
/// relation satisfying transfer, splitting and density. The result has
/// `pos(x) = 1` iff `x >< x` and reproduces the relation as `pos(x ∧ y) = 1`.
pub fn oalgebra_from_overlap(o: &OverlapStructure, limits: &Limits) -> Result<OmegaFrame> {
    let report = overlap_axioms_check(o);
    let l = &o.lattice;
    let names = |xs: &[Elem]| xs.iter().map(|&x| l.name(x)).collect::<Vec<_>>().join(", ");
    if let Some((x, z, y)) = report.transfer_witness {
        return Err(Error::AxiomsFailed {
            axiom: "transfer",
            witness: names(&[x, z, y]),
        });
    }
    match report.splitting_witness {
        Some(SplittingFailure::Binary(x, y1, y2)) => {
            return Err(Error::AxiomsFailed {
                axiom: "splitting",
                witness: names(&[x, y1, y2]),
            })
        }
        Some(SplittingFailure::Empty(x)) => {
            return Err(Error::AxiomsFailed {
                axiom: "splitting (empty join)",
                witness: names(&[x]),
            })
        }
        None => {}
    }
    if let Some((x, y)) = report.density_witness {
        return Err(Error::AxiomsFailed {
            axiom: "density",
            witness: names(&[x, y]),
        });
    }
    let check = is_frame(l, limits)?;
    let frame: Frame = check
        .frame
        .expect("lattice with an overlap relation satisfying the axioms is distributive");
    let x = OmegaFrame::classical(Arc::new(frame));
    for v in l.elements() {
        assert_eq!(
            x.pos(v)? == x.omega().top(),
            o.related(v, v),
            "positivity differs from self-overlap"
        );
    }
    for a in l.elements() {
        for b in l.elements() {
            assert_eq!(
                overlap(&x, a, b)?,
                o.related(a, b),
                "relation does not round-trip"
            );
        }
    }
    assert!(is_oalgebra(&x).is_oalgebra);
    Ok(x)
}

/// Builds the discrete locale `omega^points` and tests it for being an
/// o-algebra.
pub fn check_discrete_is_oalgebra<S: AsRef<str>>(
    omega: Arc<Frame>,
    points: &[S],
    limits: &Limits,
) -> Result<bool> {
    let x = discrete_omega_frame(omega, points, limits)?;
    Ok(is_oalgebra(&x).is_oalgebra)
}

/// Overt with Boolean carrier implies o-algebra. Besides the direct test,
/// the argument's key step is evaluated: instantiating `z := ¬y` in the
/// premise already forces `x ≤ y`.
pub fn check_overt_boolean_is_oalgebra(x: &OmegaFrame) -> Result<bool> {
    let f = x.carrier();
    let pos = x
        .pos_table()
        .ok_or_else(|| Error::PreconditionFailed("locale is not overt".into()))?;
    if !is_boolean(f).is_boolean {
        return Err(Error::PreconditionFailed("carrier is not Boolean".into()));
    }
    let om = x.omega();
    let step = f.elements().all(|a| {
        f.elements().all(|b| {
            let nb = f.neg(b);
            !om.leq(pos[f.meet(nb, a)], pos[f.meet(nb, b)]) || f.leq(a, b)
        })
    });
    let verdict = is_oalgebra(x).is_oalgebra;
    assert!(!step || verdict);
    Ok(step && verdict)
}

/// Over the classical base, o-algebra iff Boolean. Returns the common value.
pub fn classical_coincidence(frame: Arc<Frame>) -> bool {
    let boolean = is_boolean(&frame).is_boolean;
    let oalg = is_oalgebra(&OmegaFrame::classical(frame)).is_oalgebra;
    assert_eq!(
        boolean, oalg,
        "classical o-algebra and Booleanness disagree"
    );
    boolean
}

/// One instance of the case split `F(e(p)) ∨ F(¬e(p)) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProbeStep {
    pub p: Elem,
    pub f_of_e: Elem,
    pub f_of_not_e: Elem,
    /// `F(e(p)) = 1 ⇒ p = 1` evaluated externally
    pub positive_case_sound: bool,
    /// `p ∨ ¬p = 1`
    pub excluded_middle: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemProbe {
    pub omega_is_boolean: bool,
    /// Least `p` with `p ∨ ¬p ≠ 1`.
    pub lem_failure: Option<Elem>,
    /// The conclusion fails for this externally given structure: the
    /// argument lives in the internal logic and does not transfer.
    pub gap: bool,
    pub steps: Vec<ProbeStep>,
}

/// Given a Boolean carrier and a join-preserving `F: carrier → Ω` with
/// `F(1) = 1`, reports whether `Ω` satisfies excluded middle.
pub fn lem_transfer_probe(x: &OmegaFrame, f_map: &[Elem]) -> Result<LemProbe> {
    let (f, om) = (x.carrier(), x.omega());
    if !is_boolean(f).is_boolean {
        return Err(Error::PreconditionFailed("carrier is not Boolean".into()));
    }
    if f_map.len() != f.len() || f_map.iter().any(|&v| v >= om.len()) {
        return Err(Error::PreconditionFailed(
            "map is not total on the carrier with values in the base".into(),
        ));
    }
    if f_map[f.bottom()] != om.bottom() {
        return Err(Error::PreconditionFailed(
            "map does not preserve bottom".into(),
        ));
    }
    for a in f.elements() {
        for b in f.elements() {
            if f_map[f.join(a, b)] != om.join(f_map[a], f_map[b]) {
                return Err(Error::PreconditionFailed(format!(
                    "map does not preserve the join of ({}, {})",
                    f.name(a),
                    f.name(b)
                )));
            }
        }
    }
    if f_map[f.top()] != om.top() {
        return Err(Error::PreconditionFailed(
            "map does not send top to top".into(),
        ));
    }
    let steps: Vec<ProbeStep> = om
        .elements()
        .map(|p| {
            let ep = x.e(p);
            let f_of_e = f_map[ep];
            ProbeStep {
                p,
                f_of_e,
                f_of_not_e: f_map[f.neg(ep)],
                positive_case_sound: f_of_e != om.top() || p == om.top(),
                excluded_middle: om.join(p, om.neg(p)) == om.top(),
            }
        })
        .collect();
    let lem_failure = steps.iter().find(|s| !s.excluded_middle).map(|s| s.p);
    Ok(LemProbe {
        omega_is_boolean: lem_failure.is_none(),
        lem_failure,
        gap: lem_failure.is_some(),
        steps,
    })
}
