//! Generators for families of small frames, Ω-frames and spaces.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::error::Result;
use crate::fixtures;
use crate::lattice::{downset_frame, powerset_frame, FinitePoset, Frame};
use crate::omega::{homomorphisms, OmegaFrame};
use crate::spaces::{enumerate_topologies, FiniteSpace};
use crate::Limits;

/// Chains with `1..=max` elements.
pub fn chains(max: usize) -> Vec<Arc<Frame>> {
    (1..=max).map(fixtures::chain).collect()
}

/// Powersets of `{s0, ..., s(k-1)}` for `k` in `0..=max`.
pub fn powersets(max: usize, limits: &Limits) -> Result<Vec<Arc<Frame>>> {
    (0..=max)
        .map(|k| {
            let set: Vec<String> = (0..k).map(|i| format!("s{i}")).collect();
            powerset_frame(&set, limits).map(Arc::new)
        })
        .collect()
}

/// Strict order on `0..n` as a bitmask over pairs `i * n + j` (`i < j` in
/// the order). Only relations contained in the natural order are produced.
fn natural_orders(n: usize) -> Vec<Vec<(usize, usize)>> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << pairs.len()) {
        let rel: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, &p)| p)
            .collect();
        let has = |a, b| rel.contains(&(a, b));
        let transitive = rel
            .iter()
            .all(|&(a, b)| (0..n).all(|c| !has(b, c) || has(a, c)));
        if transitive {
            out.push(rel);
        }
    }
    out
}

fn canonical_form(n: usize, rel: &[(usize, usize)]) -> Vec<bool> {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<Vec<bool>> = None;
    loop {
        let mut m = vec![false; n * n];
        for &(a, b) in rel {
            m[perm[a] * n + perm[b]] = true;
        }
        if best.as_ref().is_none_or(|b| m < *b) {
            best = Some(m);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    best.unwrap_or_default()
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let Some(i) = (0..v.len() - 1).rev().find(|&i| v[i] < v[i + 1]) else {
        return false;
    };
    let j = (i + 1..v.len())
        .rev()
        .find(|&j| v[j] > v[i])
        .expect("exists");
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

/// One representative of each isomorphism class of `n`-element posets,
/// with elements `p0, ..., p(n-1)`.
pub fn posets_up_to_iso(n: usize) -> Vec<FinitePoset> {
    let names: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for rel in natural_orders(n) {
        if seen.insert(canonical_form(n, &rel)) {
            let pairs: Vec<(String, String)> = rel
                .iter()
                .map(|&(a, b)| (names[a].clone(), names[b].clone()))
                .collect();
            out.push(FinitePoset::from_relation(&names, &pairs).expect("acyclic by construction"));
        }
    }
    out
}

/// Downset frames of all posets with `0..=max` elements, up to isomorphism
/// of the poset.
pub fn downset_frames(max: usize, limits: &Limits) -> Result<Vec<Arc<Frame>>> {
    let mut out = Vec::new();
    for n in 0..=max {
        for p in posets_up_to_iso(n) {
            out.push(Arc::new(downset_frame(&p, limits)?));
        }
    }
    Ok(out)
}

/// Standard frame corpus: downset frames of posets with at most five
/// elements, powersets of sets with at most three, chains up to six.
pub fn standard_frames(limits: &Limits) -> Result<Vec<Arc<Frame>>> {
    let mut out = downset_frames(5, limits)?;
    out.extend(powersets(3, limits)?);
    out.extend(chains(6));
    Ok(out)
}

/// Bases of truth values used by corpus generation and search.
pub fn bases() -> Vec<(&'static str, Arc<Frame>)> {
    vec![("TWO", fixtures::two()), ("C3", fixtures::c3())]
}

/// Every Ω-frame on `carrier` over `base`, one per homomorphism.
pub fn omega_frames_over(base: &Arc<Frame>, carrier: &Arc<Frame>) -> Vec<OmegaFrame> {
    homomorphisms(base, carrier)
        .into_iter()
        .map(|e| {
            OmegaFrame::new(base.clone(), carrier.clone(), e).expect("enumerated homomorphism")
        })
        .collect()
}

/// Ω-frames on `carrier` over every base in [`bases`].
pub fn omega_frames(carrier: &Arc<Frame>) -> Vec<OmegaFrame> {
    bases()
        .iter()
        .flat_map(|(_, b)| omega_frames_over(b, carrier))
        .collect()
}

/// All topologies on at most `max` points.
pub fn topologies(max: usize, limits: &Limits) -> Result<Vec<FiniteSpace>> {
    let mut out = Vec::new();
    for n in 0..=max {
        out.extend(enumerate_topologies(n, limits)?);
    }
    Ok(out)
}
