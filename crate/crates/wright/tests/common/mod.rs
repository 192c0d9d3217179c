//! Shared helpers for the oracle suites: random LTSs and a direct,
//! trace-by-trace reading of failures and divergences.
#![allow(dead_code)]

pub mod gen;
pub mod laws;
pub mod oracle;

use std::collections::{BTreeSet, HashSet};

use rand::rngs::StdRng;
use rand::Rng;
use wright::{Label, Lts};

pub const EVENTS: [&str; 3] = ["a", "b", "c"];

/// Random LTS with `n` ordinary states plus a dead state that every √
/// edge leads to.
pub fn random_lts(rng: &mut StdRng, sigma: &[&str]) -> Lts {
    let n = rng.gen_range(1..=4);
    let dead = n;
    let mut edges = Vec::new();
    for s in 0..n {
        for _ in 0..rng.gen_range(0..=3) {
            let roll = rng.gen_range(0..10);
            let label = match roll {
                0..=1 => Label::Tau,
                2 => Label::Tick,
                _ => Label::ev(sigma[rng.gen_range(0..sigma.len())]),
            };
            let target = if label == Label::Tick { dead } else { rng.gen_range(0..n) };
            if !edges.contains(&(s, label.clone(), target)) {
                edges.push((s, label, target));
            }
        }
    }
    Lts::from_transitions(n + 1, 0, &edges, sigma.iter().map(|e| e.to_string()).collect())
}

/// Random sigma of one to three events.
pub fn random_sigma(rng: &mut StdRng) -> Vec<&'static str> {
    EVENTS[..rng.gen_range(1..=3)].to_vec()
}

pub fn closure(p: &Lts, seeds: impl IntoIterator<Item = usize>) -> BTreeSet<usize> {
    let mut out = BTreeSet::new();
    let mut todo: Vec<usize> = seeds.into_iter().collect();
    while let Some(s) = todo.pop() {
        if out.insert(s) {
            todo.extend(p.succ[s].iter().filter(|(l, _)| *l == Label::Tau).map(|(_, t)| *t));
        }
    }
    out
}

/// A state diverges when some τ-path from it revisits a state.
pub fn diverges(p: &Lts, s: usize) -> bool {
    closure(p, [s]).into_iter().any(|x| {
        let next: Vec<usize> = p.succ[x].iter().filter(|(l, _)| *l == Label::Tau).map(|(_, t)| *t).collect();
        closure(p, next).contains(&x)
    })
}

pub fn after(p: &Lts, states: &BTreeSet<usize>, l: &Label) -> BTreeSet<usize> {
    closure(p, states.iter().flat_map(|&s| p.succ[s].iter().filter(|(m, _)| m == l).map(|(_, t)| *t)))
}

pub fn offers(p: &Lts, s: usize) -> BTreeSet<Label> {
    p.succ[s].iter().filter(|(l, _)| *l != Label::Tau).map(|(l, _)| l.clone()).collect()
}

pub fn stable(p: &Lts, s: usize) -> bool {
    p.succ[s].iter().all(|(l, _)| *l != Label::Tau)
}

pub fn labels(sigma: &BTreeSet<String>) -> Vec<Label> {
    sigma.iter().map(|e| Label::Ev(e.clone())).chain([Label::Tick]).collect()
}

/// All traces of length at most `depth`, by plain enumeration.
pub fn traces(p: &Lts, depth: usize) -> HashSet<Vec<Label>> {
    let alphabet = labels(&p.universe);
    let mut out = HashSet::new();
    let mut frontier = vec![(vec![], closure(p, [p.initial]))];
    for _ in 0..=depth {
        let mut next = Vec::new();
        for (t, states) in frontier {
            if states.is_empty() || !out.insert(t.clone()) {
                continue;
            }
            for l in &alphabet {
                let mut u = t.clone();
                u.push(l.clone());
                next.push((u, after(p, &states, l)));
            }
        }
        frontier = next;
    }
    out.retain(|t| t.len() <= depth);
    out
}
