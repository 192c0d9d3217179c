use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::{Label, Lts, SemError, StateId};

/// Synchronisation set for parallel composition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Sync {
    /// Intersection of the two event universes.
    Auto,
    Set(BTreeSet<String>),
}

fn relabel(p: &Lts, f: impl Fn(&Label) -> Label) -> Vec<Vec<(Label, StateId)>> {
    p.succ
        .iter()
        .map(|out| {
            let mut v: Vec<(Label, StateId)> = Vec::new();
            for (l, t) in out {
                let nl = f(l);
                if !v.contains(&(nl.clone(), *t)) {
                    v.push((nl, *t));
                }
            }
            v
        })
        .collect()
}

/// P↾E: events outside `events` become τ.
pub fn project(p: &Lts, events: &BTreeSet<String>) -> Lts {
    let succ = relabel(p, |l| match l {
        Label::Ev(e) if !events.contains(e) => Label::Tau,
        other => other.clone(),
    });
    Lts { initial: p.initial, succ, universe: p.universe.intersection(events).cloned().collect() }
}

/// P \ H.
pub fn hide(p: &Lts, hidden: &BTreeSet<String>) -> Lts {
    let succ = relabel(p, |l| match l {
        Label::Ev(e) if hidden.contains(e) => Label::Tau,
        other => other.clone(),
    });
    Lts { initial: p.initial, succ, universe: p.universe.difference(hidden).cloned().collect() }
}

/// Renames every event (and the universe) through `f`.
pub fn rename(p: &Lts, f: impl Fn(&str) -> String) -> Lts {
    let succ = relabel(p, |l| match l {
        Label::Ev(e) => Label::Ev(f(e)),
        other => other.clone(),
    });
    Lts { initial: p.initial, succ, universe: p.universe.iter().map(|e| f(e)).collect() }
}

/// P_{+A}: widens the universe without adding behaviour.
pub fn augment(p: &Lts, extra: &BTreeSet<String>) -> Lts {
    let mut q = p.clone();
    q.universe.extend(extra.iter().cloned());
    q
}

/// Subset construction over τ-closures; √ is treated as visible.
pub fn determinize(p: &Lts, max_states: usize) -> Result<Lts, SemError> {
    let start = p.tau_closure([p.initial]);
    let mut index: HashMap<BTreeSet<StateId>, StateId> = HashMap::new();
    let mut sets = vec![start.clone()];
    index.insert(start, 0);
    let mut succ: Vec<Vec<(Label, StateId)>> = Vec::new();
    let mut i = 0;
    while i < sets.len() {
        let mut by_label: BTreeMap<Label, BTreeSet<StateId>> = BTreeMap::new();
        for &s in &sets[i] {
            for (l, t) in &p.succ[s] {
                if l.is_visible() {
                    by_label.entry(l.clone()).or_default().insert(*t);
                }
            }
        }
        let mut out = Vec::new();
        for (l, targets) in by_label {
            let closed = p.tau_closure(targets);
            let id = match index.get(&closed) {
                Some(&id) => id,
                None => {
                    let id = sets.len();
                    if id >= max_states {
                        return Err(SemError::StateBudgetExceeded(max_states));
                    }
                    index.insert(closed.clone(), id);
                    sets.push(closed);
                    id
                }
            };
            out.push((l, id));
        }
        succ.push(out);
        i += 1;
    }
    Ok(Lts { initial: 0, succ, universe: p.universe.clone() })
}

/// Result of a product construction, remembering the component states.
#[derive(Clone, Debug)]
pub struct Product {
    pub lts: Lts,
    pub pairs: Vec<(StateId, StateId)>,
}

/// P ‖_S Q. Events of S and √ need both sides; τ and other events interleave.
pub fn parallel_product(p: &Lts, q: &Lts, sync: &Sync, max_states: usize) -> Result<Product, SemError> {
    let sync_set: BTreeSet<String> = match sync {
        Sync::Auto => p.universe.intersection(&q.universe).cloned().collect(),
        Sync::Set(s) => s.clone(),
    };
    let synced = |l: &Label| match l {
        Label::Tick => true,
        Label::Ev(e) => sync_set.contains(e),
        Label::Tau => false,
    };
    let start = (p.initial, q.initial);
    let mut index: HashMap<(StateId, StateId), StateId> = HashMap::new();
    let mut pairs = vec![start];
    index.insert(start, 0);
    let mut succ: Vec<Vec<(Label, StateId)>> = Vec::new();
    let mut i = 0;
    while i < pairs.len() {
        let (a, b) = pairs[i];
        let mut moves: Vec<(Label, (StateId, StateId))> = Vec::new();
        for (l, t) in &p.succ[a] {
            if !synced(l) {
                moves.push((l.clone(), (*t, b)));
            }
        }
        for (l, t) in &q.succ[b] {
            if !synced(l) {
                moves.push((l.clone(), (a, *t)));
            }
        }
        for (l, t) in &p.succ[a] {
            if synced(l) {
                for (l2, t2) in &q.succ[b] {
                    if l == l2 {
                        moves.push((l.clone(), (*t, *t2)));
                    }
                }
            }
        }
        let mut out = Vec::new();
        for (l, target) in moves {
            let id = match index.get(&target) {
                Some(&id) => id,
                None => {
                    let id = pairs.len();
                    if id >= max_states {
                        return Err(SemError::StateBudgetExceeded(max_states));
                    }
                    index.insert(target, id);
                    pairs.push(target);
                    id
                }
            };
            if !out.contains(&(l.clone(), id)) {
                out.push((l, id));
            }
        }
        succ.push(out);
        i += 1;
    }
    let universe = p.universe.union(&q.universe).cloned().collect();
    Ok(Product { lts: Lts { initial: 0, succ, universe }, pairs })
}

pub fn parallel(p: &Lts, q: &Lts, sync: &Sync, max_states: usize) -> Result<Lts, SemError> {
    parallel_product(p, q, sync, max_states).map(|r| r.lts)
}

/// P ||| Q (only √ synchronises).
pub fn interleave(p: &Lts, q: &Lts, max_states: usize) -> Result<Lts, SemError> {
    parallel(p, q, &Sync::Set(BTreeSet::new()), max_states)
}
