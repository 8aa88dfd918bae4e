//! Command-line front end.
//!
//! Exit codes are the same for every command: 0 when every selected
//! property holds, 1 when one fails, 2 on unreadable or invalid input.

mod search;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::doc::{witness_names, Document, LatticeDoc, NucleusDoc, OmegaFrameDoc};
use crate::error::{Error, Result};
use crate::lattice::{check_poset, is_boolean, Frame, Witness};
use crate::nuclei::{
    double_negation, enumerate_nuclei, is_dense, is_nucleus, is_strongly_dense, rx_nucleus, Nucleus,
};
use crate::oalgebra::{is_oalgebra, oalgebra_from_overlap, overlap_axioms_check, SplittingFailure};
use crate::omega::OmegaFrame;
use crate::spaces::{
    almost_discrete_report, brouwer_counterexample, frame_of_opens, points_of_frame, separation,
    verify_section2, FiniteSpace, PointSet,
};
use crate::Limits;

pub use search::{parse_expr, Expr, Family};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "locale-lab",
    version,
    about = "Check and search finite frames, nuclei, Ω-frames and spaces"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check frame, Boolean, overtness and o-algebra properties.
    Check(CheckArgs),
    /// Enumerate nuclei, or check one given nucleus.
    Nuclei(NucleiArgs),
    /// Compute the smallest overt strongly dense nucleus.
    Rx(RxArgs),
    /// Separation and interior/closure identities of a finite space.
    Space(SpaceArgs),
    /// Evaluate the two-point topology family over a base of truth values.
    Brouwer(BrouwerArgs),
    /// Stream structures of a family that satisfy a predicate expression.
    Search(SearchArgs),
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    /// Lattice, Ω-frame or overlap document.
    pub file: PathBuf,
    #[arg(long)]
    pub frame: bool,
    #[arg(long)]
    pub boolean: bool,
    #[arg(long)]
    pub overt: bool,
    #[arg(long)]
    pub oalgebra: bool,
    /// All of the above; the default when none is given.
    #[arg(long)]
    pub all: bool,
    #[arg(long)]
    pub json: bool,
    /// Print the Hasse diagram of the carrier instead of the report.
    #[arg(long)]
    pub dot: bool,
}

#[derive(Args, Debug)]
pub struct NucleiArgs {
    /// Lattice or Ω-frame document; a lattice is taken over the two-element base.
    pub file: PathBuf,
    /// List every nucleus; the default when no filter is given.
    #[arg(long)]
    pub enumerate: bool,
    /// Keep only dense nuclei.
    #[arg(long)]
    pub dense: bool,
    /// Keep only strongly dense nuclei.
    #[arg(long = "strongly-dense")]
    pub strongly_dense: bool,
    /// Add the pointwise order between the listed nuclei.
    #[arg(long)]
    pub lattice: bool,
    /// Largest carrier to enumerate on.
    #[arg(long = "max-size", value_parser = clap::value_parser!(u64).range(1..))]
    pub max_size: Option<u64>,
    /// Check this nucleus document instead of enumerating.
    #[arg(long)]
    pub nucleus: Option<PathBuf>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct RxArgs {
    /// Ω-frame or lattice document.
    pub file: PathBuf,
    #[arg(long = "show-fix")]
    pub show_fix: bool,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct SpaceArgs {
    /// Space document.
    pub file: PathBuf,
    /// Separation and almost-discreteness; the default when nothing is selected.
    #[arg(long)]
    pub report: bool,
    /// Check the implications between the identities and separation axioms.
    #[arg(long)]
    pub lemmas: bool,
    /// Rebuild the space from the points of its frame of opens.
    #[arg(long)]
    pub points: bool,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct BrouwerArgs {
    /// Lattice document for the base of truth values.
    #[arg(long)]
    pub omega: PathBuf,
    /// Name of the truth value `p`.
    #[arg(long)]
    pub p: String,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct SearchArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    /// Largest size parameter of the family.
    #[arg(long)]
    pub max: usize,
    /// Predicate expression over names joined with `&`, `|`, `!` and parentheses.
    #[arg(long = "where", default_value = "frame")]
    pub expr: String,
    /// Base of truth values for frame families.
    #[arg(long, value_enum, default_value = "all")]
    pub base: search::BaseChoice,
}

/// Entry point used by the binary.
pub fn main() -> i32 {
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    run(std::env::args_os(), &mut out)
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INPUT
            } else {
                EXIT_PASS
            };
            let _ = e.print();
            return code;
        }
    };
    let limits = Limits::from_env();
    let result = match &cli.command {
        Command::Check(a) => cmd_check(a, &limits, out),
        Command::Nuclei(a) => cmd_nuclei(a, &limits, out),
        Command::Rx(a) => cmd_rx(a, &limits, out),
        Command::Space(a) => cmd_space(a, &limits, out),
        Command::Brouwer(a) => cmd_brouwer(a, &limits, out),
        Command::Search(a) => search::cmd_search(a, &limits, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            error_code(&e)
        }
    }
}

/// A missing positivity map is a property failure; everything else is bad input.
fn error_code(e: &Error) -> i32 {
    match e {
        Error::NotOvert => EXIT_FAIL,
        _ => EXIT_INPUT,
    }
}

fn load(path: &Path) -> Result<Document> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Document(format!("{}: {e}", path.display())))?;
    Document::parse(&text).map_err(|e| match e {
        Error::Document(m) => Error::Document(format!("{}: {m}", path.display())),
        other => other,
    })
}

fn display_name(doc_name: &str, path: &Path) -> String {
    if doc_name.is_empty() {
        path.file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default()
    } else {
        doc_name.to_owned()
    }
}

fn emit<T: Serialize>(
    out: &mut dyn Write,
    json: bool,
    report: &T,
    human: impl FnOnce() -> String,
) -> Result<()> {
    let text = if json {
        let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
        s.push('\n');
        s
    } else {
        human()
    };
    out.write_all(text.as_bytes())
        .map_err(|e| Error::Document(format!("writing output: {e}")))
}

fn exit_for(pass: bool) -> i32 {
    if pass {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

/// Ω-frame from a lattice document (two-element base) or Ω-frame document.
fn load_omega_frame(path: &Path, limits: &Limits) -> Result<(String, OmegaFrame)> {
    match load(path)? {
        Document::Lattice(d) => {
            let name = display_name(&d.name, path);
            let frame = d.frame(limits)?;
            Ok((name, OmegaFrame::classical(Arc::new(frame))))
        }
        Document::OmegaFrame(d) => {
            let name = display_name(&d.carrier_doc().name, path);
            Ok((name, d.build(limits)?))
        }
        other => Err(Error::Document(format!(
            "{}: expected a lattice or Ω-frame document, found a {} document",
            path.display(),
            other.kind()
        ))),
    }
}

#[derive(Serialize, Debug, Clone, PartialEq, Eq)]
pub struct WitnessJson {
    pub law: &'static str,
    pub elements: Vec<String>,
}

fn witness_json(l: &crate::lattice::FiniteLattice, w: &Witness) -> WitnessJson {
    WitnessJson {
        law: match w {
            Witness::Distributivity(..) => "distributivity",
            Witness::Complement(_) => "complement",
        },
        elements: witness_names(l, w),
    }
}

#[derive(Serialize, Debug, Default)]
pub struct CheckReport {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub is_lattice: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub is_frame: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub frame_witness: Option<WitnessJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub is_boolean: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub boolean_witness: Option<WitnessJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub is_overt: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub is_oalgebra: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failing_element: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failing_pair: Option<(String, String)>,
    pub pass: bool,
}

fn show<T: std::fmt::Debug>(s: &mut String, key: &str, v: &Option<T>) {
    if let Some(v) = v {
        let _ = writeln!(s, "  {key}: {v:?}");
    }
}

impl CheckReport {
    fn human(&self) -> String {
        let mut s = format!("{}\n", self.name);
        show(&mut s, "lattice", &self.is_lattice);
        show(&mut s, "frame", &self.is_frame);
        if let Some(w) = &self.frame_witness {
            let _ = writeln!(s, "    {} fails at ({})", w.law, w.elements.join(", "));
        }
        show(&mut s, "boolean", &self.is_boolean);
        if let Some(w) = &self.boolean_witness {
            let _ = writeln!(s, "    {} fails at {}", w.law, w.elements.join(", "));
        }
        show(&mut s, "overt", &self.is_overt);
        show(&mut s, "o-algebra", &self.is_oalgebra);
        show(&mut s, "failing element", &self.failing_element);
        if let Some((x, y)) = &self.failing_pair {
            let _ = writeln!(s, "    pos(z∧{x}) ≤ pos(z∧{y}) for all z, yet {x} ≰ {y}");
        }
        let _ = writeln!(s, "  pass: {}", self.pass);
        s
    }
}

#[derive(Serialize, Debug)]
pub struct OverlapReport {
    pub name: String,
    pub transfer: bool,
    pub splitting: bool,
    pub density: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub transfer_witness: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub splitting_witness: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub density_witness: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub is_oalgebra: Option<bool>,
    pub pass: bool,
}

fn cmd_check(a: &CheckArgs, limits: &Limits, out: &mut dyn Write) -> Result<i32> {
    let doc = load(&a.file)?;
    let (carrier_doc, omega_doc) = match &doc {
        Document::Lattice(d) => (d, None),
        Document::OmegaFrame(d) => (d.carrier_doc(), Some(d)),
        Document::Overlap(d) => return check_overlap(a, d, limits, out),
        other => {
            return Err(Error::Document(format!(
                "{}: check expects a lattice, Ω-frame or overlap document, found a {} document",
                a.file.display(),
                other.kind()
            )))
        }
    };
    let name = display_name(&carrier_doc.name, &a.file);
    let poset = carrier_doc.poset()?;
    if a.dot {
        out.write_all(poset.to_dot(&name).as_bytes())
            .map_err(|e| Error::Document(format!("writing output: {e}")))?;
    }
    let all = a.all || !(a.frame || a.boolean || a.overt || a.oalgebra);
    let (frame_report, frame) = check_poset(poset.clone(), limits)?;
    let lattice = crate::lattice::FiniteLattice::from_poset(poset).ok();
    let mut r = CheckReport {
        name,
        ..CheckReport::default()
    };
    let mut pass = true;
    let mut record = |slot: &mut Option<bool>, v: bool| {
        *slot = Some(v);
        pass &= v;
    };
    if all || a.frame {
        r.is_lattice = Some(frame_report.is_lattice);
        record(&mut r.is_frame, frame.is_some());
        if let (Some(l), Some(w @ Witness::Distributivity(..))) =
            (&lattice, &frame_report.counterexample)
        {
            r.frame_witness = Some(witness_json(l, w));
        }
    }
    let frame = frame.map(Arc::new);
    if all || a.boolean {
        let b = frame.as_ref().map(|f| is_boolean(f));
        record(&mut r.is_boolean, b.as_ref().is_some_and(|b| b.is_boolean));
        if let (Some(f), Some(Some(w))) = (&frame, b.map(|b| b.counterexample)) {
            r.boolean_witness = Some(witness_json(f.lattice(), &w));
        }
    }
    if all || a.overt || a.oalgebra {
        let x = match (&frame, omega_doc) {
            (None, _) => None,
            (Some(f), None) => Some(OmegaFrame::classical(f.clone())),
            (Some(_), Some(d)) => Some(d.build(limits)?),
        };
        if all || a.overt {
            record(&mut r.is_overt, x.as_ref().is_some_and(|x| x.is_overt()));
        }
        if all || a.oalgebra {
            let report = x.as_ref().map(is_oalgebra);
            record(
                &mut r.is_oalgebra,
                report.as_ref().is_some_and(|o| o.is_oalgebra),
            );
            if let (Some(x), Some(o)) = (&x, &report) {
                let f = x.carrier();
                if r.is_boolean.is_none() {
                    r.is_boolean = Some(o.is_boolean);
                }
                r.failing_element = o.failing_element.map(|e| f.name(e).to_owned());
                r.failing_pair = o
                    .failing_pair
                    .map(|(p, q)| (f.name(p).to_owned(), f.name(q).to_owned()));
            }
        }
    }
    r.pass = pass;
    if !a.dot {
        emit(out, a.json, &r, || r.human())?;
    }
    Ok(exit_for(pass))
}

fn check_overlap(
    a: &CheckArgs,
    d: &crate::doc::OverlapDoc,
    limits: &Limits,
    out: &mut dyn Write,
) -> Result<i32> {
    let o = d.build()?;
    let l = o.lattice();
    let names = |xs: &[usize]| xs.iter().map(|&x| l.name(x).to_owned()).collect::<Vec<_>>();
    let ax = overlap_axioms_check(&o);
    let is_oalgebra = if ax.all_hold() {
        Some(is_oalgebra(&oalgebra_from_overlap(&o, limits)?).is_oalgebra)
    } else {
        None
    };
    let r = OverlapReport {
        name: display_name(&d.lattice.name, &a.file),
        transfer: ax.transfer,
        splitting: ax.splitting,
        density: ax.density,
        transfer_witness: ax.transfer_witness.map(|(x, z, y)| names(&[x, z, y])),
        splitting_witness: ax.splitting_witness.map(|w| match w {
            SplittingFailure::Binary(x, y1, y2) => names(&[x, y1, y2]),
            SplittingFailure::Empty(x) => names(&[x]),
        }),
        density_witness: ax.density_witness.map(|(x, y)| names(&[x, y])),
        is_oalgebra,
        pass: ax.all_hold(),
    };
    emit(out, a.json, &r, || {
        let mut s = format!("{}\n", r.name);
        let _ = writeln!(s, "  transfer: {}", r.transfer);
        show(&mut s, "  witness", &r.transfer_witness);
        let _ = writeln!(s, "  splitting: {}", r.splitting);
        show(&mut s, "  witness", &r.splitting_witness);
        let _ = writeln!(s, "  density: {}", r.density);
        show(&mut s, "  witness", &r.density_witness);
        show(&mut s, "o-algebra", &r.is_oalgebra);
        s
    })?;
    Ok(exit_for(r.pass))
}

#[derive(Serialize, Debug)]
pub struct NucleusEntry {
    pub index: usize,
    pub fix: Vec<String>,
    pub identity: bool,
    pub double_negation: bool,
    pub degenerate: bool,
    pub dense: bool,
    pub strongly_dense: bool,
}

#[derive(Serialize, Debug)]
pub struct NucleiReport {
    pub name: String,
    pub total: usize,
    pub nuclei: Vec<NucleusEntry>,
    /// `[i, k]` when nucleus `i` ≤ nucleus `k` pointwise, that is, the
    /// sublocale of `k` is contained in that of `i`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<Vec<(usize, usize)>>,
}

#[derive(Serialize, Debug)]
pub struct NucleusCheck {
    pub name: String,
    pub is_nucleus: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violation: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fix: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dense: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub strongly_dense: Option<bool>,
}

fn nucleus_entry(x: &OmegaFrame, index: usize, j: &Nucleus, nn: &Nucleus) -> Result<NucleusEntry> {
    Ok(NucleusEntry {
        index,
        fix: j.fix_names().into_iter().map(str::to_owned).collect(),
        identity: j.is_identity(),
        double_negation: j == nn,
        degenerate: j.is_degenerate(),
        dense: is_dense(j),
        strongly_dense: is_strongly_dense(x, j)?.holds(),
    })
}

fn cmd_nuclei(a: &NucleiArgs, limits: &Limits, out: &mut dyn Write) -> Result<i32> {
    let mut limits = limits.clone();
    if let Some(n) = a.max_size {
        limits.max_nucleus_carrier = usize::try_from(n).unwrap_or(usize::MAX);
    }
    let (name, x) = load_omega_frame(&a.file, &limits)?;
    let f = x.carrier().clone();
    if let Some(path) = &a.nucleus {
        return check_one_nucleus(a, path, &name, &x, out);
    }
    let nn = double_negation(&f);
    let lattice = enumerate_nuclei(&f, &limits)?;
    let mut shown = Vec::new();
    for (i, j) in lattice.nuclei().iter().enumerate() {
        let entry = nucleus_entry(&x, i, j, &nn)?;
        if (!a.dense || entry.dense) && (!a.strongly_dense || entry.strongly_dense) {
            shown.push(entry);
        }
    }
    let order = a.lattice.then(|| {
        let mut pairs = Vec::new();
        for p in &shown {
            for q in &shown {
                if lattice.leq(p.index, q.index) {
                    pairs.push((p.index, q.index));
                }
            }
        }
        pairs
    });
    let r = NucleiReport {
        name,
        total: lattice.len(),
        nuclei: shown,
        order,
    };
    emit(out, a.json, &r, || {
        let mut s = format!(
            "{}: {} nuclei, {} listed\n",
            r.name,
            r.total,
            r.nuclei.len()
        );
        for e in &r.nuclei {
            let mut tags = Vec::new();
            for (on, tag) in [
                (e.identity, "identity"),
                (e.double_negation, "double-negation"),
                (e.degenerate, "degenerate"),
                (e.dense, "dense"),
                (e.strongly_dense, "strongly-dense"),
            ] {
                if on {
                    tags.push(tag);
                }
            }
            let _ = writeln!(
                s,
                "  #{} {{{}}} {}",
                e.index,
                e.fix.join(", "),
                tags.join(" ")
            );
        }
        if let Some(order) = &r.order {
            let _ = writeln!(s, "  order (pointwise ≤):");
            for (i, k) in order.iter().filter(|(i, k)| i != k) {
                let _ = writeln!(s, "    #{i} ≤ #{k}");
            }
        }
        s
    })?;
    Ok(EXIT_PASS)
}

fn check_one_nucleus(
    a: &NucleiArgs,
    path: &Path,
    name: &str,
    x: &OmegaFrame,
    out: &mut dyn Write,
) -> Result<i32> {
    let f = x.carrier();
    let Document::Nucleus(d) = load(path)? else {
        return Err(Error::Document(format!(
            "{}: expected a nucleus document",
            path.display()
        )));
    };
    // A table document is checked law by law; a fix-set document either
    // names a sublocale set or is rejected with the failing condition.
    let built = match &d {
        NucleusDoc::Table { table } => {
            let t = NucleusDoc::table_of(f, table)
                .map_err(|e| Error::Document(format!("{}: {e}", path.display())))?;
            let laws = is_nucleus(f, &t)?;
            match laws.witness {
                Some(v) => Err(v.describe(f)),
                None => Ok(Nucleus::new(f.clone(), t)?),
            }
        }
        NucleusDoc::Fix { .. } => match d.build(f) {
            Ok(j) => Ok(j),
            Err(Error::Document(m)) if m.starts_with("field `fix`: not a sublocale") => Err(m),
            Err(e) => return Err(e),
        },
    };
    let r = match built {
        Ok(j) => NucleusCheck {
            name: name.to_owned(),
            is_nucleus: true,
            violation: None,
            fix: Some(j.fix_names().into_iter().map(str::to_owned).collect()),
            dense: Some(is_dense(&j)),
            strongly_dense: Some(is_strongly_dense(x, &j)?.holds()),
        },
        Err(v) => NucleusCheck {
            name: name.to_owned(),
            is_nucleus: false,
            violation: Some(v),
            fix: None,
            dense: None,
            strongly_dense: None,
        },
    };
    emit(out, a.json, &r, || {
        let mut s = format!("{}\n  nucleus: {}\n", r.name, r.is_nucleus);
        show(&mut s, "violation", &r.violation);
        show(&mut s, "fix", &r.fix);
        show(&mut s, "dense", &r.dense);
        show(&mut s, "strongly dense", &r.strongly_dense);
        s
    })?;
    Ok(exit_for(r.is_nucleus))
}

#[derive(Serialize, Debug)]
pub struct RxReport {
    pub name: String,
    pub table: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fix: Option<Vec<String>>,
    pub is_identity: bool,
    pub equals_double_negation: bool,
}

fn cmd_rx(a: &RxArgs, limits: &Limits, out: &mut dyn Write) -> Result<i32> {
    let (name, x) = load_omega_frame(&a.file, limits)?;
    let f = x.carrier();
    let rx = rx_nucleus(&x)?;
    let r = RxReport {
        name,
        table: f
            .elements()
            .map(|y| (f.name(y).to_owned(), f.name(rx.apply(y)).to_owned()))
            .collect(),
        fix: (a.show_fix || a.json)
            .then(|| rx.fix_names().into_iter().map(str::to_owned).collect()),
        is_identity: rx.is_identity(),
        equals_double_negation: rx == double_negation(f),
    };
    emit(out, a.json, &r, || {
        let mut s = format!("{}\n", r.name);
        for y in f.elements() {
            let _ = writeln!(s, "  R({}) = {}", f.name(y), f.name(rx.apply(y)));
        }
        if let Some(fix) = &r.fix {
            let _ = writeln!(s, "  fix: {{{}}}", fix.join(", "));
        }
        let _ = writeln!(s, "  is_identity: {}", r.is_identity);
        let _ = writeln!(s, "  equals_double_negation: {}", r.equals_double_negation);
        s
    })?;
    Ok(EXIT_PASS)
}

#[derive(Serialize, Debug)]
pub struct SpaceReport {
    pub t0: bool,
    pub t1: bool,
    pub discrete: bool,
    pub ici_eq_i: bool,
    pub ci_eq_i: bool,
    pub ic_eq_c: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ici_witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ci_witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ic_witness: Option<String>,
}

#[derive(Serialize, Debug)]
pub struct LemmasReport {
    pub ic_implies_ci: bool,
    pub ci_and_t0_implies_t1: bool,
    pub ic_and_t1_implies_discrete: bool,
    pub discrete_iff_t0_and_ic: bool,
}

#[derive(Serialize, Debug)]
pub struct PointsReport {
    /// Points of the frame of opens, named by their smallest open.
    pub points: Vec<String>,
    pub spatial: bool,
    /// The rebuilt space is homeomorphic to the input.
    pub homeomorphic: bool,
}

#[derive(Serialize, Debug)]
pub struct SpaceCommandReport {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<SpaceReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lemmas: Option<LemmasReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub points: Option<PointsReport>,
}

/// `x ↦` the point of the frame of opens given by the smallest open
/// containing `x`; the round trip is a homeomorphism iff this is a
/// bijection carrying opens to opens.
fn round_trip_is_homeomorphism(
    space: &FiniteSpace,
    opens: &[PointSet],
    pts: &crate::spaces::PointsOfFrame,
) -> bool {
    let phi: Vec<Option<usize>> = (0..space.len())
        .map(|x| {
            let smallest = opens
                .iter()
                .filter(|&&o| o >> x & 1 == 1)
                .fold(space.full(), |acc, &o| acc & o);
            let elem = opens.iter().position(|&o| o == smallest)?;
            pts.generators.iter().position(|&g| g == elem)
        })
        .collect();
    let Some(phi) = phi.into_iter().collect::<Option<Vec<_>>>() else {
        return false;
    };
    let mut seen = phi.clone();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != phi.len() || phi.len() != pts.space.len() {
        return false;
    }
    opens.iter().enumerate().all(|(i, &o)| {
        let image = (0..space.len())
            .filter(|&x| o >> x & 1 == 1)
            .fold(0, |acc: PointSet, x| acc | 1 << phi[x]);
        image == pts.open_of[i]
    })
}

fn cmd_space(a: &SpaceArgs, limits: &Limits, out: &mut dyn Write) -> Result<i32> {
    let doc = load(&a.file)?;
    let Document::Space(d) = doc else {
        return Err(Error::Document(format!(
            "{}: expected a space document, found a {} document",
            a.file.display(),
            doc.kind()
        )));
    };
    let space = d.build()?;
    let name = display_name("", &a.file);
    let mut pass = true;
    let report = if a.report || !(a.lemmas || a.points) {
        let sep = separation(&space);
        let ad = almost_discrete_report(&space, limits)?;
        Some(SpaceReport {
            t0: sep.is_t0,
            t1: sep.is_t1,
            discrete: sep.is_discrete,
            ici_eq_i: ad.ici_eq_i,
            ci_eq_i: ad.ci_eq_i,
            ic_eq_c: ad.ic_eq_c,
            ici_witness: ad.ici_witness.map(|w| space.set_name(w)),
            ci_witness: ad.ci_witness.map(|w| space.set_name(w)),
            ic_witness: ad.ic_witness.map(|w| space.set_name(w)),
        })
    } else {
        None
    };
    let lemmas = if a.lemmas {
        let l = verify_section2(&space, limits)?;
        pass &= l.all_hold();
        Some(LemmasReport {
            ic_implies_ci: l.ic_implies_ci,
            ci_and_t0_implies_t1: l.ci_and_t0_implies_t1,
            ic_and_t1_implies_discrete: l.ic_and_t1_implies_discrete,
            discrete_iff_t0_and_ic: l.discrete_iff_t0_and_ic,
        })
    } else {
        None
    };
    let points = if a.points {
        let x = frame_of_opens(&space);
        let pts = points_of_frame(x.carrier())?;
        let homeomorphic = round_trip_is_homeomorphism(&space, space.opens(), &pts);
        // Finite spaces are sober exactly when T0.
        pass &= pts.spatial && homeomorphic == separation(&space).is_t0;
        Some(PointsReport {
            points: pts.space.names().to_vec(),
            spatial: pts.spatial,
            homeomorphic,
        })
    } else {
        None
    };
    let r = SpaceCommandReport {
        name,
        report,
        lemmas,
        points,
    };
    emit(out, a.json, &r, || {
        let mut s = format!("{}\n", r.name);
        if let Some(p) = &r.report {
            let _ = writeln!(s, "  T0: {}  T1: {}  discrete: {}", p.t0, p.t1, p.discrete);
            for (label, v, w) in [
                ("int cl int = int", p.ici_eq_i, &p.ici_witness),
                ("cl int = int", p.ci_eq_i, &p.ci_witness),
                ("int cl = cl", p.ic_eq_c, &p.ic_witness),
            ] {
                match w {
                    Some(w) => {
                        let _ = writeln!(s, "  {label}: {v} (fails at {w})");
                    }
                    None => {
                        let _ = writeln!(s, "  {label}: {v}");
                    }
                }
            }
        }
        if let Some(l) = &r.lemmas {
            let _ = writeln!(s, "  int cl = cl ⇒ cl int = int: {}", l.ic_implies_ci);
            let _ = writeln!(s, "  cl int = int ∧ T0 ⇒ T1: {}", l.ci_and_t0_implies_t1);
            let _ = writeln!(
                s,
                "  int cl = cl ∧ T1 ⇒ discrete: {}",
                l.ic_and_t1_implies_discrete
            );
            let _ = writeln!(
                s,
                "  discrete ⟺ T0 ∧ int cl = cl: {}",
                l.discrete_iff_t0_and_ic
            );
        }
        if let Some(p) = &r.points {
            let _ = writeln!(s, "  points: {}", p.points.join(" "));
            let _ = writeln!(
                s,
                "  spatial: {}  homeomorphic: {}",
                p.spatial, p.homeomorphic
            );
        }
        s
    })?;
    Ok(exit_for(pass))
}

#[derive(Serialize, Debug)]
pub struct BrouwerJson {
    pub omega: String,
    pub p: String,
    pub topology_axioms_value: String,
    pub cl_eq_id_value: String,
    pub int_eq_id_value: String,
    pub excluded_middle_value: String,
    pub contracts_hold: bool,
}

fn cmd_brouwer(a: &BrouwerArgs, limits: &Limits, out: &mut dyn Write) -> Result<i32> {
    let doc = load(&a.omega)?;
    let Document::Lattice(d) = doc else {
        return Err(Error::Document(format!(
            "{}: expected a lattice document, found a {} document",
            a.omega.display(),
            doc.kind()
        )));
    };
    let omega: Frame = d.frame(limits)?;
    let p = omega.index_of(&a.p)?;
    let b = brouwer_counterexample(&omega, p)?;
    let n = |v: crate::omega::TruthValue| omega.name(v.0).to_owned();
    let r = BrouwerJson {
        omega: display_name(&d.name, &a.omega),
        p: a.p.clone(),
        topology_axioms_value: n(b.topology_axioms_value),
        cl_eq_id_value: n(b.cl_eq_id_value),
        int_eq_id_value: n(b.int_eq_id_value),
        excluded_middle_value: n(b.excluded_middle_value),
        contracts_hold: b.contracts_hold(&omega),
    };
    emit(out, a.json, &r, || {
        format!(
            "omega {}, p = {}\n  topology axioms: {}\n  cl = id: {}\n  int = id: {}\n  p ∨ ¬p: {}\n  contracts hold: {}\n",
            r.omega,
            r.p,
            r.topology_axioms_value,
            r.cl_eq_id_value,
            r.int_eq_id_value,
            r.excluded_middle_value,
            r.contracts_hold
        )
    })?;
    Ok(exit_for(r.contracts_hold))
}

/// Lattice document for `frame`, for writing fixtures to disk.
pub fn lattice_doc(name: &str, frame: &Frame) -> LatticeDoc {
    LatticeDoc::from_poset(name, frame.poset())
}

/// Ω-frame document for `x`.
pub fn omega_doc(name: &str, x: &OmegaFrame) -> OmegaFrameDoc {
    OmegaFrameDoc::from_omega_frame(name, x)
}
