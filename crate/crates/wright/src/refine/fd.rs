//! Failures-divergences models and refinement checking.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use serde::Serialize;

use crate::semantics::{Label, Lts, SemError, StateId};

/// One macro-state of the normalised automaton.
#[derive(Clone, Debug)]
pub struct FdNode {
    pub members: BTreeSet<StateId>,
    pub divergent: bool,
    pub divergence_witness: Option<StateId>,
    /// Stable members with the visible labels they offer.
    pub stable: Vec<(StateId, BTreeSet<Label>)>,
    /// ⊆-minimal acceptances (complements of the maximal refusals).
    pub acceptances: Vec<BTreeSet<Label>>,
    pub succ: BTreeMap<Label, usize>,
    /// First member offering each visible label.
    pub offered_by: BTreeMap<Label, StateId>,
}

#[derive(Clone, Debug)]
pub struct FdModel {
    pub sigma: BTreeSet<String>,
    pub initial: usize,
    pub nodes: Vec<FdNode>,
}

impl FdModel {
    /// Σ ∪ {√}.
    pub fn full_set(&self) -> BTreeSet<Label> {
        let mut s: BTreeSet<Label> = self.sigma.iter().map(|e| Label::Ev(e.clone())).collect();
        s.insert(Label::Tick);
        s
    }

    /// Maximal refusal sets of a non-divergent node.
    pub fn max_refusals(&self, node: usize) -> Vec<BTreeSet<Label>> {
        let full = self.full_set();
        self.nodes[node].acceptances.iter().map(|a| full.difference(a).cloned().collect()).collect()
    }

    /// Node reached by a visible trace, if any (stops at divergence).
    pub fn after(&self, trace: &[Label]) -> Option<usize> {
        let mut n = self.initial;
        for l in trace {
            n = *self.nodes[n].succ.get(l)?;
        }
        Some(n)
    }
}

fn minimal_sets(sets: impl IntoIterator<Item = BTreeSet<Label>>) -> Vec<BTreeSet<Label>> {
    let mut all: Vec<BTreeSet<Label>> = sets.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
    all.sort_by_key(|s| s.len());
    let mut out: Vec<BTreeSet<Label>> = Vec::new();
    for s in all {
        if !out.iter().any(|m| m.is_subset(&s)) {
            out.push(s);
        }
    }
    out
}

/// Normalises `p` into its failures-divergences automaton.
pub fn fd_model(p: &Lts, max_states: usize) -> Result<FdModel, SemError> {
    let div = p.divergent_states();
    let start = p.tau_closure([p.initial]);
    let mut index: HashMap<BTreeSet<StateId>, usize> = HashMap::new();
    let mut nodes: Vec<FdNode> = Vec::new();
    let mut queue = vec![start.clone()];
    index.insert(start, 0);
    let mut i = 0;
    while i < queue.len() {
        let members = queue[i].clone();
        let divergence_witness = members.iter().copied().find(|&s| div[s]);
        let divergent = divergence_witness.is_some();
        let mut stable = Vec::new();
        let mut succ = BTreeMap::new();
        let mut offered_by = BTreeMap::new();
        if !divergent {
            for &s in &members {
                if p.is_stable(s) {
                    stable.push((s, p.initials(s)));
                }
            }
            let mut by_label: BTreeMap<Label, BTreeSet<StateId>> = BTreeMap::new();
            for &s in &members {
                for (l, t) in &p.succ[s] {
                    if l.is_visible() {
                        by_label.entry(l.clone()).or_default().insert(*t);
                        offered_by.entry(l.clone()).or_insert(s);
                    }
                }
            }
            for (l, targets) in by_label {
                let closed = p.tau_closure(targets);
                let id = match index.get(&closed) {
                    Some(&id) => id,
                    None => {
                        let id = queue.len();
                        if id >= max_states {
                            return Err(SemError::StateBudgetExceeded(max_states));
                        }
                        index.insert(closed.clone(), id);
                        queue.push(closed);
                        id
                    }
                };
                succ.insert(l, id);
            }
        }
        let acceptances = minimal_sets(stable.iter().map(|(_, a)| a.clone()));
        nodes.push(FdNode { members, divergent, divergence_witness, stable, acceptances, succ, offered_by });
        i += 1;
    }
    Ok(FdModel { sigma: p.universe.clone(), initial: 0, nodes })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "type", content = "refused")]
pub enum ViolationKind {
    TraceViolation,
    RefusalViolation(Vec<String>),
    DivergenceViolation,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub trace: Vec<String>,
    pub kind: ViolationKind,
    /// Implementation LTS state exhibiting the violation.
    #[serde(skip)]
    pub witness: Option<StateId>,
    /// Every implementation state showing the same violation after `trace`.
    #[serde(skip)]
    pub witnesses: Vec<StateId>,
    /// Events some participant was ready for but the composition refused
    /// (filled in by property checks on compositions).
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub blocked: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RefinementVerdict {
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

impl RefinementVerdict {
    pub fn holds() -> Self {
        RefinementVerdict { holds: true, counterexample: None }
    }

    pub fn fails(cx: Counterexample) -> Self {
        RefinementVerdict { holds: false, counterexample: Some(cx) }
    }
}

fn names(trace: &[Label]) -> Vec<String> {
    trace.iter().map(Label::trace_name).collect()
}

/// Decides `spec ⊑_FD impl`. The reported counterexample has the shortest
/// trace, ties broken lexicographically on event names.
pub fn refines_fd(spec: &FdModel, imp: &FdModel) -> RefinementVerdict {
    let mut full: BTreeSet<Label> = spec.full_set();
    full.extend(imp.full_set());
    let mut visited: HashSet<(usize, usize)> = HashSet::new();
    visited.insert((spec.initial, imp.initial));
    let mut level: Vec<((usize, usize), Vec<Label>)> = vec![((spec.initial, imp.initial), vec![])];
    let mut carried: Vec<Counterexample> = Vec::new();
    loop {
        let mut found: Vec<Counterexample> = Vec::new();
        for ((s, i), trace) in &level {
            let (sn, inode) = (&spec.nodes[*s], &imp.nodes[*i]);
            if sn.divergent {
                continue;
            }
            if inode.divergent {
                found.push(Counterexample {
                    trace: names(trace),
                    kind: ViolationKind::DivergenceViolation,
                    witness: inode.divergence_witness,
                    witnesses: inode.divergence_witness.into_iter().collect(),
                    blocked: vec![],
                });
                continue;
            }
            let failing: Vec<&(StateId, BTreeSet<Label>)> =
                inode.stable.iter().filter(|(_, acc)| !sn.acceptances.iter().any(|a| a.is_subset(acc))).collect();
            if let Some((state, acc)) = failing.first() {
                let refused: Vec<String> = full.difference(acc).map(Label::trace_name).collect();
                found.push(Counterexample {
                    trace: names(trace),
                    kind: ViolationKind::RefusalViolation(refused),
                    witness: Some(*state),
                    witnesses: failing.iter().map(|(s, _)| *s).collect(),
                    blocked: vec![],
                });
            }
        }
        found.append(&mut carried);
        if let Some(best) = found.into_iter().min_by(|a, b| a.trace.cmp(&b.trace)) {
            return RefinementVerdict::fails(best);
        }
        let mut candidates = Vec::new();
        for ((s, i), trace) in &level {
            let (sn, inode) = (&spec.nodes[*s], &imp.nodes[*i]);
            if sn.divergent {
                continue;
            }
            for (l, ti) in &inode.succ {
                let mut t = trace.clone();
                t.push(l.clone());
                match sn.succ.get(l) {
                    None => {
                        let witness = inode.offered_by.get(l).copied();
                        carried.push(Counterexample {
                            trace: names(&t),
                            kind: ViolationKind::TraceViolation,
                            witness,
                            witnesses: witness.into_iter().collect(),
                            blocked: vec![],
                        });
                    }
                    Some(ts) => candidates.push(((*ts, *ti), t)),
                }
            }
        }
        candidates.sort_by_cached_key(|(_, t)| names(t));
        let mut next = Vec::new();
        for (pair, t) in candidates {
            if visited.insert(pair) {
                next.push((pair, t));
            }
        }
        if next.is_empty() && carried.is_empty() {
            return RefinementVerdict::holds();
        }
        level = next;
    }
}

/// DF_A ⊑ P over A = the universe of `p`.
pub fn check_deadlock_free(p: &Lts, max_states: usize) -> Result<RefinementVerdict, SemError> {
    let df = Lts::deadlock_free(&p.universe);
    Ok(refines_fd(&fd_model(&df, max_states)?, &fd_model(p, max_states)?))
}

/// Convenience: `spec ⊑_FD impl` on LTSs.
pub fn refines_lts(spec: &Lts, imp: &Lts, max_states: usize) -> Result<RefinementVerdict, SemError> {
    Ok(refines_fd(&fd_model(spec, max_states)?, &fd_model(imp, max_states)?))
}
