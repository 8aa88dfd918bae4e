//! Small named structures used throughout the tests, the CLI search and
//! the documentation examples.

use std::sync::Arc;

use crate::lattice::{powerset_frame, FiniteLattice, FinitePoset, Frame};
use crate::omega::{discrete_omega_frame, OmegaFrame};
use crate::spaces::FiniteSpace;
use crate::Limits;

fn chain_names(n: usize) -> Vec<String> {
    match n {
        0 => vec![],
        1 => vec!["0".into()],
        _ => {
            let mut v = vec!["0".to_owned()];
            for i in 0..n - 2 {
                v.push(label(i));
            }
            v.push("1".into());
            v
        }
    }
}

/// `a`, `b`, ..., `z`, `a1`, `b1`, ...
fn label(i: usize) -> String {
    let c = (b'a' + (i % 26) as u8) as char;
    if i < 26 {
        c.to_string()
    } else {
        format!("{c}{}", i / 26)
    }
}

/// The `n`-element chain `0 < a < b < ... < 1`.
pub fn chain(n: usize) -> Arc<Frame> {
    assert!(n >= 1, "a frame has at least one element");
    let names = chain_names(n);
    let poset = FinitePoset::from_order(names, |x, y| x <= y);
    let lattice = FiniteLattice::from_tables(poset, |x, y| x.min(y), |x, y| x.max(y));
    Arc::new(Frame::from_tables(
        lattice,
        |x, y| if x <= y { n - 1 } else { y },
    ))
}

/// Two-element Boolean frame `{0, 1}`.
pub fn two() -> Arc<Frame> {
    chain(2)
}

/// Three-element chain `{0 < a < 1}`.
pub fn c3() -> Arc<Frame> {
    chain(3)
}

/// Powerset of `{s, t}`.
pub fn b4() -> Arc<Frame> {
    Arc::new(powerset_frame(&["s", "t"], &Limits::default()).expect("four elements"))
}

/// The modular, non-distributive diamond with atoms `a1`, `a2`, `a3`.
pub fn m3() -> FiniteLattice {
    let poset = FinitePoset::from_relation(
        &["0", "a1", "a2", "a3", "1"],
        &[
            ("0", "a1"),
            ("0", "a2"),
            ("0", "a3"),
            ("a1", "1"),
            ("a2", "1"),
            ("a3", "1"),
        ],
    )
    .expect("valid order");
    FiniteLattice::from_poset(poset).expect("M3 is a lattice")
}

/// The pentagon `0 < a < c < 1`, `0 < b < 1`.
pub fn n5() -> FiniteLattice {
    let poset = FinitePoset::from_relation(
        &["0", "a", "b", "c", "1"],
        &[("0", "a"), ("a", "c"), ("c", "1"), ("0", "b"), ("b", "1")],
    )
    .expect("valid order");
    FiniteLattice::from_poset(poset).expect("N5 is a lattice")
}

/// Base C3 over itself with the identity structure map.
pub fn oc3() -> OmegaFrame {
    let c = c3();
    OmegaFrame::new(c.clone(), c, vec![0, 1, 2]).expect("identity is a homomorphism")
}

/// C3 over the classical base.
pub fn clc3() -> OmegaFrame {
    OmegaFrame::classical(c3())
}

/// Discrete locale: maps `points → omega` with pointwise order.
pub fn disc(omega: Arc<Frame>, points: &[&str]) -> OmegaFrame {
    discrete_omega_frame(omega, points, &Limits::default()).expect("small discrete locale")
}

/// Base C3, carrier TWO, structure map `0 ↦ 0, a ↦ 1, 1 ↦ 1`.
pub fn c3_over_two_collapsed() -> OmegaFrame {
    OmegaFrame::new(c3(), two(), vec![0, 1, 1]).expect("valid homomorphism")
}

/// Sierpiński space on `{x, y}` with `{x}` open.
pub fn sierp() -> FiniteSpace {
    FiniteSpace::new(&["x", "y"], &[vec![], vec!["x"], vec!["x", "y"]]).expect("topology")
}

pub fn disc2() -> FiniteSpace {
    FiniteSpace::new(&["x", "y"], &[vec![], vec!["x"], vec!["y"], vec!["x", "y"]])
        .expect("topology")
}

pub fn ind2() -> FiniteSpace {
    FiniteSpace::new(&["x", "y"], &[vec![], vec!["x", "y"]]).expect("topology")
}
