//! `search`: stream members of a generated family that satisfy a predicate
//! expression.

use std::io::Write;
use std::sync::Arc;

use clap::ValueEnum;
use serde::Serialize;

use super::{SearchArgs, EXIT_PASS};
use crate::corpus::{self, bases};
use crate::doc::{OmegaFrameDoc, SpaceDoc};
use crate::error::{Error, Result};
use crate::lattice::{is_boolean, Frame};
use crate::nuclei::{double_negation, enumerate_nuclei, is_dense, is_strongly_dense, rx_nucleus};
use crate::oalgebra::is_oalgebra;
use crate::omega::OmegaFrame;
use crate::spaces::{almost_discrete_report, frame_of_opens, separation, FiniteSpace};
use crate::Limits;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Downsets,
    Powersets,
    Chains,
    Topologies,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BaseChoice {
    #[value(name = "TWO", alias = "two")]
    Two,
    #[value(name = "C3", alias = "c3")]
    C3,
    All,
}

/// Predicates on any candidate.
const FRAME_PREDICATES: &[&str] = &[
    "frame",
    "boolean",
    "overt",
    "oalgebra",
    "classical",
    "dense_eq_strongly_dense",
    "rx_eq_double_negation",
];

/// Predicates on candidates from `--family topologies`.
const SPACE_PREDICATES: &[&str] = &[
    "t0",
    "t1",
    "discrete",
    "ici_eq_i",
    "ci_eq_i",
    "ic_eq_c",
    "almost_discrete",
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Pred(String),
    Not(Box<Expr>),
    And(Box<Expr>, Box<Expr>),
    Or(Box<Expr>, Box<Expr>),
}

impl Expr {
    /// Short-circuit evaluation; `&` binds tighter than `|`.
    pub fn eval<F>(&self, pred: &mut F) -> Result<bool>
    where
        F: FnMut(&str) -> Result<bool>,
    {
        Ok(match self {
            Expr::Pred(p) => pred(p)?,
            Expr::Not(e) => !e.eval(pred)?,
            Expr::And(a, b) => a.eval(pred)? && b.eval(pred)?,
            Expr::Or(a, b) => a.eval(pred)? || b.eval(pred)?,
        })
    }

    fn predicates<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            Expr::Pred(p) => out.push(p),
            Expr::Not(e) => e.predicates(out),
            Expr::And(a, b) | Expr::Or(a, b) => {
                a.predicates(out);
                b.predicates(out);
            }
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Expression {
            offset: self.pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(char::is_whitespace) {
            self.pos += self.src[self.pos..]
                .chars()
                .next()
                .map_or(1, char::len_utf8);
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn or(&mut self) -> Result<Expr> {
        let mut e = self.and()?;
        while self.eat('|') {
            e = Expr::Or(Box::new(e), Box::new(self.and()?));
        }
        Ok(e)
    }

    fn and(&mut self) -> Result<Expr> {
        let mut e = self.unary()?;
        while self.eat('&') {
            e = Expr::And(Box::new(e), Box::new(self.unary()?));
        }
        Ok(e)
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('!') {
            return Ok(Expr::Not(Box::new(self.unary()?)));
        }
        if self.eat('(') {
            let e = self.or()?;
            if !self.eat(')') {
                return self.err("expected `)`");
            }
            return Ok(e);
        }
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let len = rest
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
            .unwrap_or(rest.len());
        if len == 0 {
            return self.err("expected a predicate name, `!` or `(`");
        }
        let name = &rest[..len];
        if !FRAME_PREDICATES.contains(&name) && !SPACE_PREDICATES.contains(&name) {
            return self.err(format!(
                "unknown predicate `{name}`; known: {}, {}",
                FRAME_PREDICATES.join(", "),
                SPACE_PREDICATES.join(", ")
            ));
        }
        self.pos += len;
        Ok(Expr::Pred(name.to_owned()))
    }
}

pub fn parse_expr(src: &str) -> Result<Expr> {
    let mut p = Parser { src, pos: 0 };
    let e = p.or()?;
    p.skip_ws();
    if p.pos != src.len() {
        return p.err("unexpected trailing input");
    }
    Ok(e)
}

/// One generated structure with lazily computed facts.
struct Candidate {
    x: OmegaFrame,
    base: &'static str,
    space: Option<FiniteSpace>,
}

impl Candidate {
    fn eval(&self, pred: &str, limits: &Limits) -> Result<bool> {
        let x = &self.x;
        let f: &Arc<Frame> = x.carrier();
        Ok(match pred {
            // candidates are frames by construction
            "frame" => true,
            "boolean" => is_boolean(f).is_boolean,
            "overt" => x.is_overt(),
            "oalgebra" => is_oalgebra(x).is_oalgebra,
            "classical" => x.is_classical(),
            "dense_eq_strongly_dense" => {
                let nuclei = enumerate_nuclei(f, limits)?;
                for j in nuclei.nuclei() {
                    if is_dense(j) != is_strongly_dense(x, j)?.holds() {
                        return Ok(false);
                    }
                }
                true
            }
            "rx_eq_double_negation" => rx_nucleus(x)? == double_negation(f),
            _ => {
                let space = self.space.as_ref().expect("checked before the scan");
                let sep = separation(space);
                match pred {
                    "t0" => sep.is_t0,
                    "t1" => sep.is_t1,
                    "discrete" => sep.is_discrete,
                    _ => {
                        let ad = almost_discrete_report(space, limits)?;
                        match pred {
                            "ici_eq_i" => ad.ici_eq_i,
                            "ci_eq_i" => ad.ci_eq_i,
                            _ => ad.ic_eq_c,
                        }
                    }
                }
            }
        })
    }
}

#[derive(Serialize)]
#[serde(untagged)]
enum MatchDoc {
    Frame(OmegaFrameDoc),
    Space(SpaceDoc),
}

#[derive(Serialize)]
struct Match<'a> {
    index: usize,
    family: &'a str,
    base: &'a str,
    document: MatchDoc,
}

fn carriers(family: Family, max: usize, limits: &Limits) -> Result<Vec<(String, Arc<Frame>)>> {
    Ok(match family {
        Family::Chains => corpus::chains(max)
            .into_iter()
            .map(|f| (format!("C{}", f.len()), f))
            .collect(),
        Family::Powersets => corpus::powersets(max, limits)?
            .into_iter()
            .enumerate()
            .map(|(k, f)| (format!("P{k}"), f))
            .collect(),
        Family::Downsets => {
            let mut out = Vec::new();
            for n in 0..=max {
                for (j, p) in corpus::posets_up_to_iso(n).iter().enumerate() {
                    let f = crate::lattice::downset_frame(p, limits)?;
                    out.push((format!("D{n}.{j}"), Arc::new(f)));
                }
            }
            out
        }
        Family::Topologies => unreachable!("topologies are not frame carriers"),
    })
}

pub(super) fn cmd_search(a: &SearchArgs, limits: &Limits, out: &mut dyn Write) -> Result<i32> {
    let expr = parse_expr(&a.expr)?;
    let mut used = Vec::new();
    expr.predicates(&mut used);
    if a.family != Family::Topologies {
        if let Some(p) = used.iter().find(|p| SPACE_PREDICATES.contains(p)) {
            return Err(Error::Expression {
                offset: a.expr.find(p).unwrap_or(0),
                message: format!("predicate `{p}` applies only to --family topologies"),
            });
        }
    }
    let family = match a.family {
        Family::Downsets => "downsets",
        Family::Powersets => "powersets",
        Family::Chains => "chains",
        Family::Topologies => "topologies",
    };

    let mut candidates: Vec<(String, Candidate)> = Vec::new();
    if a.family == Family::Topologies {
        for (i, s) in corpus::topologies(a.max, limits)?.into_iter().enumerate() {
            candidates.push((
                format!("T{i}"),
                Candidate {
                    x: frame_of_opens(&s),
                    base: "TWO",
                    space: Some(s),
                },
            ));
        }
    } else {
        let chosen: Vec<(&'static str, Arc<Frame>)> = bases()
            .into_iter()
            .filter(|(n, _)| match a.base {
                BaseChoice::All => true,
                BaseChoice::Two => *n == "TWO",
                BaseChoice::C3 => *n == "C3",
            })
            .collect();
        for (name, f) in carriers(a.family, a.max, limits)? {
            for (bname, b) in &chosen {
                for x in corpus::omega_frames_over(b, &f) {
                    candidates.push((
                        name.clone(),
                        Candidate {
                            x,
                            base: bname,
                            space: None,
                        },
                    ));
                }
            }
        }
    }

    let mut skipped = 0usize;
    for (index, (name, c)) in candidates.iter().enumerate() {
        let hit = expr.eval(&mut |p| c.eval(p, limits));
        let hit = match hit {
            Ok(h) => h,
            Err(Error::SizeLimit { .. }) => {
                skipped += 1;
                continue;
            }
            Err(e) => return Err(e),
        };
        if !hit {
            continue;
        }
        let document = match &c.space {
            Some(s) => MatchDoc::Space(SpaceDoc::from_space(s)),
            None => {
                let mut d = OmegaFrameDoc::from_omega_frame(name, &c.x);
                if let OmegaFrameDoc::Explicit(d) = &mut d {
                    d.omega.name = c.base.to_owned();
                }
                MatchDoc::Frame(d)
            }
        };
        let m = Match {
            index,
            family,
            base: c.base,
            document,
        };
        let line = serde_json::to_string(&m).expect("matches serialize");
        match writeln!(out, "{line}") {
            Ok(()) => {}
            // the reader stopped early, e.g. `| head`
            Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => return Ok(EXIT_PASS),
            Err(e) => return Err(Error::Document(format!("writing output: {e}"))),
        }
    }
    if skipped > 0 {
        eprintln!(
            "note: skipped {skipped} candidates above the nucleus enumeration cap ({})",
            limits.max_nucleus_carrier
        );
    }
    Ok(EXIT_PASS)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Box<Expr> {
        Box::new(Expr::Pred(s.into()))
    }

    #[test]
    fn precedence_and_grouping() {
        assert_eq!(
            parse_expr("oalgebra & !boolean | frame").unwrap(),
            Expr::Or(
                Box::new(Expr::And(p("oalgebra"), Box::new(Expr::Not(p("boolean"))))),
                p("frame")
            )
        );
        assert_eq!(
            parse_expr(" !(frame|boolean) ").unwrap(),
            Expr::Not(Box::new(Expr::Or(p("frame"), p("boolean"))))
        );
    }

    #[test]
    fn parse_errors_carry_offsets() {
        assert!(matches!(
            parse_expr("frame &"),
            Err(Error::Expression { offset: 7, .. })
        ));
        assert!(matches!(
            parse_expr("(frame"),
            Err(Error::Expression { offset: 6, .. })
        ));
        assert!(matches!(
            parse_expr("frame & nope"),
            Err(Error::Expression { offset: 8, .. })
        ));
        assert!(matches!(
            parse_expr("frame frame"),
            Err(Error::Expression { offset: 6, .. })
        ));
    }

    #[test]
    fn evaluation_short_circuits() {
        let e = parse_expr("boolean & frame").unwrap();
        let mut calls = Vec::new();
        let v = e
            .eval(&mut |q| {
                calls.push(q.to_owned());
                Ok(false)
            })
            .unwrap();
        assert!(!v);
        assert_eq!(calls, vec!["boolean"]);
    }
}
