//! Finite topological spaces, their interior and closure operators, and the
//! bridges between spaces and frames.
//!
//! Point sets are bitmasks, so a space has at most 64 points.

mod brouwer;

pub use brouwer::{brouwer_counterexample, BrouwerReport, OmegaSubset};

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::lattice::{subset_name, Elem, FiniteLattice, FinitePoset, Frame};
use crate::oalgebra::is_oalgebra;
use crate::omega::OmegaFrame;
use crate::Limits;

/// A set of points as a bitmask.
pub type PointSet = u64;

const MAX_POINTS: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSpace {
    names: Vec<String>,
    /// Sorted by cardinality, then by mask.
    opens: Vec<PointSet>,
}

fn full_mask(n: usize) -> PointSet {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl FiniteSpace {
    pub fn new<S: AsRef<str>>(points: &[S], opens: &[Vec<S>]) -> Result<Self> {
        let names: Vec<String> = points.iter().map(|s| s.as_ref().to_owned()).collect();
        if names.len() > MAX_POINTS {
            return Err(Error::SizeLimit {
                what: "space points",
                size: names.len(),
                limit: MAX_POINTS,
            });
        }
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(Error::DuplicateElement(n.clone()));
            }
        }
        let mut masks = Vec::with_capacity(opens.len());
        for open in opens {
            let mut m = 0;
            for p in open {
                let i = names
                    .iter()
                    .position(|n| n == p.as_ref())
                    .ok_or_else(|| Error::UnknownElement(p.as_ref().to_owned()))?;
                m |= 1 << i;
            }
            masks.push(m);
        }
        Self::from_masks(names, masks)
    }

    pub fn from_masks(names: Vec<String>, mut opens: Vec<PointSet>) -> Result<Self> {
        let full = full_mask(names.len());
        opens.sort_by_key(|&m| (m.count_ones(), m));
        opens.dedup();
        let space = FiniteSpace { names, opens };
        let fail = |axiom, sets: &[PointSet]| Error::NotATopology {
            axiom,
            witness: sets
                .iter()
                .map(|&m| space.set_name(m))
                .collect::<Vec<_>>()
                .join(", "),
        };
        if let Some(&m) = space.opens.iter().find(|&&m| m & !full != 0) {
            return Err(Error::Document(format!(
                "open set mask {m:#x} exceeds the points"
            )));
        }
        if !space.is_open(0) {
            return Err(fail("contains the empty set", &[0]));
        }
        if !space.is_open(full) {
            return Err(fail("contains the whole space", &[full]));
        }
        for &a in &space.opens {
            for &b in &space.opens {
                if !space.is_open(a & b) {
                    return Err(fail("closed under binary intersection", &[a, b]));
                }
                if !space.is_open(a | b) {
                    return Err(fail("closed under union", &[a, b]));
                }
            }
        }
        Ok(space)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn opens(&self) -> &[PointSet] {
        &self.opens
    }

    pub fn full(&self) -> PointSet {
        full_mask(self.len())
    }

    pub fn is_open(&self, d: PointSet) -> bool {
        self.opens
            .binary_search_by_key(&(d.count_ones(), d), |&m| (m.count_ones(), m))
            .is_ok()
    }

    pub fn point(&self, name: &str) -> Result<PointSet> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| 1 << i)
            .ok_or_else(|| Error::UnknownElement(name.to_owned()))
    }

    pub fn set_name(&self, d: PointSet) -> String {
        subset_name(
            (0..self.len())
                .filter(|i| d >> i & 1 == 1)
                .map(|i| self.names[i].as_str()),
        )
    }

    /// Union of the opens contained in `d`.
    pub fn interior(&self, d: PointSet) -> PointSet {
        self.opens
            .iter()
            .filter(|&&a| a & !d == 0)
            .fold(0, |acc, &a| acc | a)
    }

    /// Adherent points: every open neighbourhood meets `d`.
    pub fn weak_closure(&self, d: PointSet) -> PointSet {
        (0..self.len())
            .filter(|&x| self.opens.iter().all(|&a| a >> x & 1 == 0 || a & d != 0))
            .fold(0, |acc, x| acc | 1 << x)
    }

    /// Complement of the interior of the complement. Contains the weak
    /// closure; with a classical metatheory on finite sets they agree.
    pub fn strong_closure(&self, d: PointSet) -> PointSet {
        let full = self.full();
        let strong = full & !self.interior(full & !d);
        let weak = self.weak_closure(d);
        assert!(weak & !strong == 0, "weak closure escapes strong closure");
        assert_eq!(weak, strong, "closures differ on a finite space");
        strong
    }

    fn all_subsets(&self, limits: &Limits) -> Result<impl Iterator<Item = PointSet>> {
        if self.len() > limits.max_space_points {
            return Err(Error::SizeLimit {
                what: "points for subset-exhaustive checks",
                size: self.len(),
                limit: limits.max_space_points,
            });
        }
        Ok(0..=self.full())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Separation {
    pub is_t0: bool,
    pub is_t1: bool,
    pub is_discrete: bool,
}

pub fn separation(space: &FiniteSpace) -> Separation {
    let cls: Vec<PointSet> = (0..space.len())
        .map(|x| space.weak_closure(1 << x))
        .collect();
    let is_t0 = (0..cls.len()).all(|x| (x + 1..cls.len()).all(|y| cls[x] != cls[y]));
    let is_t1 = cls.iter().enumerate().all(|(x, &c)| c == 1 << x);
    let is_discrete = (0..space.len()).all(|x| space.is_open(1 << x));
    Separation {
        is_t0,
        is_t1,
        is_discrete,
    }
}

/// The three candidate identities, each with the least failing subset.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AlmostDiscrete {
    /// `int ∘ cl ∘ int = int`
    pub ici_eq_i: bool,
    /// `cl ∘ int = int`
    pub ci_eq_i: bool,
    /// `int ∘ cl = cl`
    pub ic_eq_c: bool,
    pub ici_witness: Option<PointSet>,
    pub ci_witness: Option<PointSet>,
    pub ic_witness: Option<PointSet>,
}

pub fn almost_discrete_report(space: &FiniteSpace, limits: &Limits) -> Result<AlmostDiscrete> {
    let (int, cl) = (|d| space.interior(d), |d| space.weak_closure(d));
    let mut ici_witness = None;
    let mut ci_witness = None;
    let mut ic_witness = None;
    for d in space.all_subsets(limits)? {
        if ici_witness.is_none() && int(cl(int(d))) != int(d) {
            ici_witness = Some(d);
        }
        if ci_witness.is_none() && cl(int(d)) != int(d) {
            ci_witness = Some(d);
        }
        if ic_witness.is_none() && int(cl(d)) != cl(d) {
            ic_witness = Some(d);
        }
    }
    let r = AlmostDiscrete {
        ici_eq_i: ici_witness.is_none(),
        ci_eq_i: ci_witness.is_none(),
        ic_eq_c: ic_witness.is_none(),
        ici_witness,
        ci_witness,
        ic_witness,
    };
    assert!(!r.ic_eq_c || r.ci_eq_i, "int∘cl = cl without cl∘int = int");
    assert!(
        !r.ci_eq_i || r.ici_eq_i,
        "cl∘int = int without int∘cl∘int = int"
    );
    Ok(r)
}

/// Each field states that an implication holds on the given space.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Section2Report {
    /// `int∘cl = cl ⇒ cl∘int = int`
    pub ic_implies_ci: bool,
    /// `cl∘int = int ∧ T0 ⇒ T1`
    pub ci_and_t0_implies_t1: bool,
    /// `int∘cl = cl ∧ T1 ⇒ discrete`
    pub ic_and_t1_implies_discrete: bool,
    /// `discrete ⟺ T0 ∧ int∘cl = cl`
    pub discrete_iff_t0_and_ic: bool,
}

impl Section2Report {
    pub fn all_hold(&self) -> bool {
        self.ic_implies_ci
            && self.ci_and_t0_implies_t1
            && self.ic_and_t1_implies_discrete
            && self.discrete_iff_t0_and_ic
    }
}

pub fn verify_section2(space: &FiniteSpace, limits: &Limits) -> Result<Section2Report> {
    let ad = almost_discrete_report(space, limits)?;
    let sep = separation(space);
    Ok(Section2Report {
        ic_implies_ci: !ad.ic_eq_c || ad.ci_eq_i,
        ci_and_t0_implies_t1: !(ad.ci_eq_i && sep.is_t0) || sep.is_t1,
        ic_and_t1_implies_discrete: !(ad.ic_eq_c && sep.is_t1) || sep.is_discrete,
        discrete_iff_t0_and_ic: sep.is_discrete == (sep.is_t0 && ad.ic_eq_c),
    })
}

/// Classical Ω-frame of open sets ordered by inclusion; element `i` is
/// `space.opens()[i]`.
pub fn frame_of_opens(space: &FiniteSpace) -> OmegaFrame {
    let opens = space.opens().to_vec();
    let index = |m: PointSet| {
        opens
            .iter()
            .position(|&o| o == m)
            .expect("opens are closed under the frame operations")
    };
    let names = opens.iter().map(|&m| space.set_name(m)).collect();
    let poset = FinitePoset::from_order(names, |a, b| opens[a] & !opens[b] == 0);
    let lattice = FiniteLattice::from_tables(
        poset,
        |a, b| index(opens[a] & opens[b]),
        |a, b| index(opens[a] | opens[b]),
    );
    let full = space.full();
    let frame = Frame::from_tables(lattice, |a, b| {
        index(space.interior((full & !opens[a]) | opens[b]))
    });
    OmegaFrame::classical(Arc::new(frame))
}

/// Space of points (homomorphisms into the two-element frame) of a frame.
#[derive(Clone, Debug)]
pub struct PointsOfFrame {
    pub space: FiniteSpace,
    /// `x̂`, the set of points at which `x` holds, for every frame element.
    pub open_of: Vec<PointSet>,
    /// The frame element whose principal filter each point is.
    pub generators: Vec<Elem>,
    /// `x ↦ x̂` is injective.
    pub spatial: bool,
}

/// Homomorphisms `h: frame → 2` correspond to prime filters, which in a
/// finite frame are the up-sets of join-prime elements; point `p` is
/// `h_p(x) = [p ≤ x]`.
pub fn points_of_frame(frame: &Arc<Frame>) -> Result<PointsOfFrame> {
    let generators: Vec<Elem> = frame
        .elements()
        .filter(|&p| p != frame.bottom())
        .filter(|&p| {
            frame.elements().all(|a| {
                frame
                    .elements()
                    .all(|b| !frame.leq(p, frame.join(a, b)) || frame.leq(p, a) || frame.leq(p, b))
            })
        })
        .collect();
    if generators.len() > MAX_POINTS {
        return Err(Error::SizeLimit {
            what: "points of frame",
            size: generators.len(),
            limit: MAX_POINTS,
        });
    }
    let open_of: Vec<PointSet> = frame
        .elements()
        .map(|x| {
            generators
                .iter()
                .enumerate()
                .filter(|(_, &p)| frame.leq(p, x))
                .fold(0, |acc, (i, _)| acc | 1 << i)
        })
        .collect();
    let mut distinct = open_of.clone();
    distinct.sort_unstable();
    distinct.dedup();
    let spatial = distinct.len() == open_of.len();
    let names = generators
        .iter()
        .map(|&p| frame.name(p).to_owned())
        .collect();
    let space = FiniteSpace::from_masks(names, open_of.clone())?;
    let out = PointsOfFrame {
        space,
        open_of,
        generators,
        spatial,
    };
    if out.spatial && is_oalgebra(&OmegaFrame::classical(frame.clone())).is_oalgebra {
        assert!(
            separation(&out.space).is_discrete,
            "spatial classical o-algebra with a non-discrete space of points"
        );
    }
    Ok(out)
}

/// All topologies on `{x0, ..., x(n-1)}`, in order of the family bitmask.
pub fn enumerate_topologies(n: usize, limits: &Limits) -> Result<Vec<FiniteSpace>> {
    if n > limits.max_topology_points {
        return Err(Error::SizeLimit {
            what: "points for topology enumeration",
            size: n,
            limit: limits.max_topology_points,
        });
    }
    let full = full_mask(n);
    let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    let proper: Vec<PointSet> = (1..full).collect();
    let mut out = Vec::new();
    for family in 0u64..(1u64 << proper.len()) {
        let mut opens = vec![0, full];
        opens.extend(
            proper
                .iter()
                .enumerate()
                .filter(|(i, _)| family >> i & 1 == 1)
                .map(|(_, &m)| m),
        );
        let closed = opens.iter().all(|&a| {
            opens
                .iter()
                .all(|&b| opens.contains(&(a & b)) && opens.contains(&(a | b)))
        });
        if closed {
            out.push(FiniteSpace::from_masks(names.clone(), opens)?);
        }
    }
    Ok(out)
}
