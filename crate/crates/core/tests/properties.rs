//! Randomized invariants over generated posets, frames, nuclei and spaces.

mod common;

use std::sync::Arc;

use proptest::prelude::*;

use common::*;
use locale_lab::cli::{parse_expr, Expr};
use locale_lab::corpus;
use locale_lab::doc::{Document, LatticeDoc, SpaceDoc};
use locale_lab::fixtures::{c3, two};
use locale_lab::lattice::{downset_frame, FinitePoset, Frame};
use locale_lab::nuclei::{generated_by_closure, generated_by_set, ClosureOperator};
use locale_lab::spaces::{almost_discrete_report, FiniteSpace};
use locale_lab::Limits;

/// Naturally labeled poset on `n` points: `i < j` is kept for `i < j` when
/// the bit is set, then closed transitively by the constructor.
fn poset(n: usize, bits: u64) -> FinitePoset {
    let names: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
    let mut pairs = Vec::new();
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            if bits >> k & 1 == 1 {
                pairs.push((names[i].clone(), names[j].clone()));
            }
            k += 1;
        }
    }
    FinitePoset::from_relation(&names, &pairs).expect("acyclic")
}

fn arb_poset(max: usize) -> impl Strategy<Value = FinitePoset> {
    (1..=max, any::<u64>()).prop_map(|(n, bits)| poset(n, bits))
}

fn arb_frame(max_points: usize) -> impl Strategy<Value = Arc<Frame>> {
    arb_poset(max_points)
        .prop_map(|p| Arc::new(downset_frame(&p, &Limits::default()).expect("small")))
}

/// Frame with at most twelve elements, for nucleus work.
fn arb_small_frame() -> impl Strategy<Value = Arc<Frame>> {
    arb_frame(4).prop_filter("at most twelve elements", |f| f.len() <= 12)
}

fn pick(f: &Frame, bits: u64) -> Vec<usize> {
    f.elements()
        .filter(|&x| bits >> (x % 64) & 1 == 1)
        .collect()
}

/// Topology of the up-sets of a preorder given by its generating pairs.
fn space(n: usize, bits: u64) -> FiniteSpace {
    let mut le = vec![false; n * n];
    let mut k = 0;
    for i in 0..n {
        le[i * n + i] = true;
        for j in 0..n {
            if i != j {
                le[i * n + j] = bits >> k & 1 == 1;
                k += 1;
            }
        }
    }
    for m in 0..n {
        for i in 0..n {
            for j in 0..n {
                if le[i * n + m] && le[m * n + j] {
                    le[i * n + j] = true;
                }
            }
        }
    }
    let opens: Vec<u64> = (0..1u64 << n)
        .filter(|&d| {
            (0..n).all(|i| d >> i & 1 == 0 || (0..n).all(|j| !le[i * n + j] || d >> j & 1 == 1))
        })
        .collect();
    let names = (0..n).map(|i| format!("x{i}")).collect();
    FiniteSpace::from_masks(names, opens).expect("up-sets form a topology")
}

fn show(e: &Expr) -> String {
    match e {
        Expr::Pred(p) => p.clone(),
        Expr::Not(a) => format!("!{}", show(a)),
        Expr::And(a, b) => format!("({} & {})", show(a), show(b)),
        Expr::Or(a, b) => format!("({} | {})", show(a), show(b)),
    }
}

fn arb_expr() -> impl Strategy<Value = Expr> {
    let leaf = prop::sample::select(vec!["frame", "boolean", "overt", "oalgebra", "classical"])
        .prop_map(|s| Expr::Pred(s.to_owned()));
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|e| Expr::Not(Box::new(e))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::And(Box::new(a), Box::new(b))),
            (inner.clone(), inner).prop_map(|(a, b)| Expr::Or(Box::new(a), Box::new(b))),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn downset_frames_are_residuated(f in arb_frame(5)) {
        let o = Ora::of(&f);
        for x in f.elements() {
            for y in f.elements() {
                prop_assert_eq!(f.meet(x, y), o.meet(x, y));
                prop_assert_eq!(f.join(x, y), o.join(x, y));
                prop_assert_eq!(f.imp(x, y), o.imp(x, y));
            }
        }
        prop_assert!(o.distributivity_failure().is_none());
    }

    #[test]
    fn closure_and_fixset_generate_the_same_nucleus(f in arb_small_frame(), bits in any::<u64>()) {
        let c = ClosureOperator::from_seeds(f.clone(), pick(&f, bits));
        let j = generated_by_closure(&c);
        prop_assert_eq!(&j, &generated_by_set(&f, &c.fix()));
        prop_assert!(is_nucleus_table(&Ora::of(&f), j.table()));
    }

    #[test]
    fn generated_nucleus_is_least(f in arb_frame(3), bits in any::<u64>()) {
        let seeds = pick(&f, bits);
        let j = generated_by_set(&f, &seeds);
        prop_assert!(seeds.iter().all(|&a| j.is_fixed(a)));
        for k in nuclei_by_brute_force(&Ora::of(&f)) {
            if subset(&seeds, &k) {
                prop_assert!(subset(j.fix(), &k));
            }
        }
    }

    #[test]
    fn meet_of_nuclei_is_a_nucleus(f in arb_small_frame(), a in any::<u64>(), b in any::<u64>()) {
        let j = generated_by_set(&f, &pick(&f, a));
        let k = generated_by_set(&f, &pick(&f, b));
        let m = j.meet(&k).unwrap();
        prop_assert!(is_nucleus_table(&Ora::of(&f), m.table()));
        prop_assert!(m.leq_pointwise(&j) && m.leq_pointwise(&k));
    }

    #[test]
    fn pos_is_left_adjoint_to_e(f in arb_frame(4)) {
        for base in [two(), c3()] {
            for x in corpus::omega_frames_over(&base, &f) {
                let pos = x.pos_table().unwrap();
                prop_assert_eq!(Some(pos.to_vec()), pos_oracle(&x));
                for a in f.elements() {
                    for p in base.elements() {
                        prop_assert_eq!(base.leq(pos[a], p), f.leq(a, x.e(p)));
                    }
                }
            }
        }
    }

    #[test]
    fn lattice_documents_round_trip(p in arb_poset(6)) {
        let d = LatticeDoc::from_poset("P", &p);
        let text = serde_json::to_string(&d).unwrap();
        let Document::Lattice(back) = Document::parse(&text).unwrap() else {
            panic!("not a lattice document");
        };
        let q = back.poset().unwrap();
        prop_assert_eq!(q.names(), p.names());
        for x in p.elements() {
            for y in p.elements() {
                prop_assert_eq!(q.leq(x, y), p.leq(x, y));
            }
        }
    }

    #[test]
    fn space_identities(n in 1usize..=5, bits in any::<u64>()) {
        let s = space(n, bits);
        let opens = s.opens();
        for d in 0..1u64 << n {
            prop_assert_eq!(s.interior(d), interior(opens, d));
            prop_assert_eq!(s.weak_closure(d), closure(opens, n, d));
        }
        let ad = almost_discrete_report(&s, &Limits::default()).unwrap();
        prop_assert!(!ad.ic_eq_c || ad.ci_eq_i);
        prop_assert!(!ad.ci_eq_i || ad.ici_eq_i);
        let d = SpaceDoc::from_space(&s);
        prop_assert_eq!(d.build().unwrap(), s);
    }

    #[test]
    fn expressions_reparse(e in arb_expr()) {
        prop_assert_eq!(parse_expr(&show(&e)).unwrap(), e);
    }
}
