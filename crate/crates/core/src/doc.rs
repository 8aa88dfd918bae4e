//! JSON documents for lattices, Ω-frames, nuclei, overlap structures and
//! spaces.
//!
//! Loading goes through [`Document::parse`], which picks the document kind
//! from its top-level keys and reports syntax and shape errors with a line
//! and column. Errors found after parsing name the offending field.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::lattice::{is_frame, FiniteLattice, FinitePoset, Frame, Witness};
use crate::nuclei::Nucleus;
use crate::oalgebra::OverlapStructure;
use crate::omega::OmegaFrame;
use crate::spaces::FiniteSpace;
use crate::Limits;

/// A finite poset given by generating pairs of its order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeDoc {
    #[serde(default)]
    pub name: String,
    pub elements: Vec<String>,
    #[serde(default)]
    pub le: Vec<(String, String)>,
}

fn in_field<T>(field: &str, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Document(_) => e,
        other => Error::Document(format!("field `{field}`: {other}")),
    })
}

impl LatticeDoc {
    pub fn poset(&self) -> Result<FinitePoset> {
        FinitePoset::from_relation(&self.elements, &self.le).map_err(|e| match e {
            Error::DuplicateElement(_) => Error::Document(format!("field `elements`: {e}")),
            Error::UnknownElement(_) | Error::Cycle(..) => {
                Error::Document(format!("field `le`: {e}"))
            }
            other => other,
        })
    }

    pub fn lattice(&self) -> Result<FiniteLattice> {
        FiniteLattice::from_poset(self.poset()?)
    }

    /// The frame, or [`Error::NotAFrame`] naming a distributivity witness.
    pub fn frame(&self, limits: &Limits) -> Result<Frame> {
        let lattice = self.lattice()?;
        let check = is_frame(&lattice, limits)?;
        match check.frame {
            Some(f) => Ok(f),
            None => Err(Error::NotAFrame(match check.report.counterexample {
                Some(w) => format!(
                    "distributivity fails at ({})",
                    witness_names(&lattice, &w).join(", ")
                ),
                None => "not distributive".into(),
            })),
        }
    }

    /// Document listing the covering pairs of `poset`.
    pub fn from_poset(name: &str, poset: &FinitePoset) -> Self {
        LatticeDoc {
            name: name.to_owned(),
            elements: poset.names().to_vec(),
            le: poset
                .covers()
                .into_iter()
                .map(|(a, b)| (poset.name(a).to_owned(), poset.name(b).to_owned()))
                .collect(),
        }
    }
}

pub fn witness_names(l: &FiniteLattice, w: &Witness) -> Vec<String> {
    w.elements()
        .into_iter()
        .map(|x| l.name(x).to_owned())
        .collect()
}

/// `{"omega", "carrier", "e"}` with `e` keyed by elements of `omega`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExplicitOmegaDoc {
    pub omega: LatticeDoc,
    pub carrier: LatticeDoc,
    pub e: BTreeMap<String, String>,
}

/// `{"carrier", "classical": true}`, over the two-element base.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassicalOmegaDoc {
    pub carrier: LatticeDoc,
    pub classical: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OmegaFrameDoc {
    Explicit(ExplicitOmegaDoc),
    Classical(ClassicalOmegaDoc),
}

impl OmegaFrameDoc {
    pub fn carrier_doc(&self) -> &LatticeDoc {
        match self {
            OmegaFrameDoc::Explicit(d) => &d.carrier,
            OmegaFrameDoc::Classical(d) => &d.carrier,
        }
    }

    pub fn build(&self, limits: &Limits) -> Result<OmegaFrame> {
        match self {
            OmegaFrameDoc::Classical(d) => {
                if !d.classical {
                    return Err(Error::Document(
                        "field `classical`: must be true, or give `omega` and `e`".into(),
                    ));
                }
                let carrier = in_field("carrier", d.carrier.frame(limits))?;
                Ok(OmegaFrame::classical(Arc::new(carrier)))
            }
            OmegaFrameDoc::Explicit(d) => {
                let omega = in_field("omega", d.omega.frame(limits))?;
                let carrier = in_field("carrier", d.carrier.frame(limits))?;
                in_field(
                    "e",
                    OmegaFrame::from_names(Arc::new(omega), Arc::new(carrier), &d.e),
                )
            }
        }
    }

    /// Classical form when the base is two-element, explicit otherwise.
    pub fn from_omega_frame(name: &str, x: &OmegaFrame) -> Self {
        let carrier = LatticeDoc::from_poset(name, x.carrier().poset());
        if x.is_classical() {
            return OmegaFrameDoc::Classical(ClassicalOmegaDoc {
                carrier,
                classical: true,
            });
        }
        let (om, f) = (x.omega(), x.carrier());
        OmegaFrameDoc::Explicit(ExplicitOmegaDoc {
            omega: LatticeDoc::from_poset("", om.poset()),
            carrier,
            e: om
                .elements()
                .map(|p| (om.name(p).to_owned(), f.name(x.e(p)).to_owned()))
                .collect(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum NucleusDoc {
    Fix { fix: Vec<String> },
    Table { table: BTreeMap<String, String> },
}

impl NucleusDoc {
    pub fn build(&self, frame: &Arc<Frame>) -> Result<Nucleus> {
        match self {
            NucleusDoc::Fix { fix } => {
                let set = in_field(
                    "fix",
                    fix.iter()
                        .map(|n| frame.index_of(n))
                        .collect::<Result<Vec<_>>>(),
                )?;
                in_field("fix", crate::nuclei::nucleus_from_fixset(frame, &set))
            }
            NucleusDoc::Table { table } => in_field("table", Self::table_of(frame, table))
                .and_then(|t| in_field("table", Nucleus::new(frame.clone(), t))),
        }
    }

    /// Raw table from a name map; every element must be given exactly once.
    pub fn table_of(frame: &Frame, table: &BTreeMap<String, String>) -> Result<Vec<usize>> {
        let mut out = vec![None; frame.len()];
        for (k, v) in table {
            out[frame.index_of(k)?] = Some(frame.index_of(v)?);
        }
        out.iter()
            .enumerate()
            .map(|(x, v)| {
                v.ok_or_else(|| {
                    Error::Document(format!("field `table`: no value for `{}`", frame.name(x)))
                })
            })
            .collect()
    }

    pub fn from_nucleus(j: &Nucleus) -> Self {
        NucleusDoc::Fix {
            fix: j.fix_names().into_iter().map(str::to_owned).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OverlapDoc {
    pub lattice: LatticeDoc,
    pub rel: Vec<(String, String)>,
}

impl OverlapDoc {
    /// The structure, with `rel` symmetrized.
    pub fn build(&self) -> Result<OverlapStructure> {
        let lattice = in_field("lattice", self.lattice.lattice())?;
        let pairs = in_field(
            "rel",
            self.rel
                .iter()
                .map(|(a, b)| Ok((lattice.index_of(a)?, lattice.index_of(b)?)))
                .collect::<Result<Vec<_>>>(),
        )?;
        Ok(OverlapStructure::from_pairs(lattice, &pairs))
    }

    pub fn from_structure(name: &str, o: &OverlapStructure) -> Self {
        let l = o.lattice();
        OverlapDoc {
            lattice: LatticeDoc::from_poset(name, l.poset()),
            rel: o
                .pairs()
                .into_iter()
                .map(|(a, b)| (l.name(a).to_owned(), l.name(b).to_owned()))
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceDoc {
    pub points: Vec<String>,
    pub opens: Vec<Vec<String>>,
}

impl SpaceDoc {
    pub fn build(&self) -> Result<FiniteSpace> {
        in_field("opens", FiniteSpace::new(&self.points, &self.opens))
    }

    pub fn from_space(s: &FiniteSpace) -> Self {
        SpaceDoc {
            points: s.names().to_vec(),
            opens: s
                .opens()
                .iter()
                .map(|&m| {
                    (0..s.len())
                        .filter(|i| m >> i & 1 == 1)
                        .map(|i| s.names()[i].clone())
                        .collect()
                })
                .collect(),
        }
    }
}

/// Any input document, classified by its top-level keys.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Document {
    Lattice(LatticeDoc),
    OmegaFrame(OmegaFrameDoc),
    Overlap(OverlapDoc),
    Space(SpaceDoc),
    Nucleus(NucleusDoc),
}

fn typed<T: DeserializeOwned>(text: &str) -> Result<T> {
    // serde_json messages end with "at line L column C"
    serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))
}

impl Document {
    pub fn parse(text: &str) -> Result<Document> {
        let value: Value = typed(text)?;
        let Value::Object(map) = &value else {
            return Err(Error::Document("line 1: expected a JSON object".into()));
        };
        let has = |k: &str| map.contains_key(k);
        if has("carrier") {
            if has("classical") && !has("omega") {
                Ok(Document::OmegaFrame(OmegaFrameDoc::Classical(typed(text)?)))
            } else {
                Ok(Document::OmegaFrame(OmegaFrameDoc::Explicit(typed(text)?)))
            }
        } else if has("elements") {
            Ok(Document::Lattice(typed(text)?))
        } else if has("lattice") {
            Ok(Document::Overlap(typed(text)?))
        } else if has("points") {
            Ok(Document::Space(typed(text)?))
        } else if has("fix") || has("table") {
            Ok(Document::Nucleus(typed(text)?))
        } else {
            Err(Error::Document(
                "expected a field naming the document kind: `elements`, `carrier`, `lattice`, `points`, `fix` or `table`".into(),
            ))
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Document::Lattice(_) => "lattice",
            Document::OmegaFrame(_) => "omega frame",
            Document::Overlap(_) => "overlap structure",
            Document::Space(_) => "space",
            Document::Nucleus(_) => "nucleus",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    const C3: &str =
        r#"{"name": "C3", "elements": ["0", "a", "1"], "le": [["0", "a"], ["a", "1"]]}"#;

    #[test]
    fn lattice_round_trip() {
        let Document::Lattice(d) = Document::parse(C3).unwrap() else {
            panic!("wrong kind")
        };
        let f = d.frame(&Limits::default()).unwrap();
        assert_eq!(f, *fixtures::c3());
        let back = LatticeDoc::from_poset("C3", f.poset());
        assert_eq!(back.frame(&Limits::default()).unwrap(), f);
    }

    #[test]
    fn m3_is_not_a_frame() {
        let d = LatticeDoc::from_poset("M3", fixtures::m3().poset());
        let err = d.frame(&Limits::default()).unwrap_err();
        assert_eq!(
            err,
            Error::NotAFrame("distributivity fails at (a1, a2, a3)".into())
        );
    }

    #[test]
    fn omega_docs() {
        let text =
            format!(r#"{{"omega": {C3}, "carrier": {C3}, "e": {{"0": "0", "a": "a", "1": "1"}}}}"#);
        let Document::OmegaFrame(d) = Document::parse(&text).unwrap() else {
            panic!("wrong kind")
        };
        let x = d.build(&Limits::default()).unwrap();
        assert_eq!(x.structure_map(), fixtures::oc3().structure_map());
        let again = OmegaFrameDoc::from_omega_frame("C3", &x);
        assert_eq!(
            again.build(&Limits::default()).unwrap().structure_map(),
            &[0, 1, 2]
        );

        let text = format!(r#"{{"carrier": {C3}, "classical": true}}"#);
        let Document::OmegaFrame(d) = Document::parse(&text).unwrap() else {
            panic!("wrong kind")
        };
        assert!(d.build(&Limits::default()).unwrap().is_classical());
    }

    #[test]
    fn errors_name_their_place() {
        let err = Document::parse("{\n  \"elements\": [\"a\",\n  }").unwrap_err();
        assert!(
            matches!(&err, Error::Document(m) if m.ends_with("line 3 column 3")),
            "{err}"
        );

        let err = Document::parse(r#"{"elements": ["a"], "le": [], "extra": 1}"#).unwrap_err();
        assert!(
            matches!(&err, Error::Document(m) if m.contains("extra")),
            "{err}"
        );

        let text = format!(r#"{{"omega": {C3}, "carrier": {C3}, "e": {{"0": "0", "zz": "a"}}}}"#);
        let Document::OmegaFrame(d) = Document::parse(&text).unwrap() else {
            panic!("wrong kind")
        };
        let err = d.build(&Limits::default()).unwrap_err();
        assert!(
            matches!(&err, Error::Document(m) if m.starts_with("field `e`")),
            "{err}"
        );

        assert!(Document::parse("[1, 2]").is_err());
        assert!(Document::parse(r#"{"foo": 1}"#).is_err());
    }

    #[test]
    fn nucleus_docs() {
        let c3 = fixtures::c3();
        let j = NucleusDoc::Fix {
            fix: vec!["0".into(), "1".into()],
        }
        .build(&c3)
        .unwrap();
        assert_eq!(j.fix(), &[0, 2]);
        let t: BTreeMap<String, String> = [("0", "0"), ("a", "1"), ("1", "1")]
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        assert_eq!(NucleusDoc::Table { table: t }.build(&c3).unwrap(), j);
        assert_eq!(
            NucleusDoc::from_nucleus(&j),
            NucleusDoc::Fix {
                fix: vec!["0".into(), "1".into()]
            }
        );
        let Document::Nucleus(_) = Document::parse(r#"{"fix": ["1"]}"#).unwrap() else {
            panic!("wrong kind")
        };
    }

    #[test]
    fn overlap_and_space_docs() {
        let text = format!(r#"{{"lattice": {C3}, "rel": [["a", "1"], ["a", "a"], ["1", "1"]]}}"#);
        let Document::Overlap(d) = Document::parse(&text).unwrap() else {
            panic!("wrong kind")
        };
        let o = d.build().unwrap();
        assert!(o.related(2, 1) && o.related(1, 2));
        assert_eq!(
            OverlapDoc::from_structure("C3", &o)
                .build()
                .unwrap()
                .pairs(),
            o.pairs()
        );

        let s = fixtures::sierp();
        let d = SpaceDoc::from_space(&s);
        assert_eq!(d.build().unwrap(), s);
    }
}
