use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::Serialize;

use super::{alphabet, Env, SemError};
use crate::model::{EventExpr, ProcessExpr};

pub type StateId = usize;

pub const DEFAULT_MAX_STATES: usize = 100_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Label {
    Tau,
    Tick,
    Ev(String),
}

impl Label {
    pub fn ev(name: &str) -> Label {
        Label::Ev(name.to_string())
    }

    pub fn is_visible(&self) -> bool {
        !matches!(self, Label::Tau)
    }

    /// Spelling used in traces: event name, or `√`.
    pub fn trace_name(&self) -> String {
        match self {
            Label::Tau => "τ".into(),
            Label::Tick => "√".into(),
            Label::Ev(n) => n.clone(),
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.trace_name())
    }
}

/// Finite labelled transition system over an event universe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lts {
    pub initial: StateId,
    pub succ: Vec<Vec<(Label, StateId)>>,
    pub universe: BTreeSet<String>,
}

impl Lts {
    pub fn num_states(&self) -> usize {
        self.succ.len()
    }

    pub fn transitions(&self) -> impl Iterator<Item = (StateId, &Label, StateId)> {
        self.succ.iter().enumerate().flat_map(|(s, out)| out.iter().map(move |(l, t)| (s, l, *t)))
    }

    pub fn from_transitions(
        states: usize,
        initial: StateId,
        transitions: &[(StateId, Label, StateId)],
        universe: BTreeSet<String>,
    ) -> Lts {
        let mut succ = vec![Vec::new(); states];
        for (s, l, t) in transitions {
            succ[*s].push((l.clone(), *t));
        }
        Lts { initial, succ, universe }
    }

    /// The process that only terminates.
    pub fn success() -> Lts {
        Lts { initial: 0, succ: vec![vec![(Label::Tick, 1)], vec![]], universe: BTreeSet::new() }
    }

    /// STOP over the given universe.
    pub fn stop(universe: BTreeSet<String>) -> Lts {
        Lts { initial: 0, succ: vec![vec![]], universe }
    }

    /// DF_A = (⊓ e:A • e → DF_A) ⊓ SKIP; plain success when A is empty.
    pub fn deadlock_free(alphabet: &BTreeSet<String>) -> Lts {
        if alphabet.is_empty() {
            return Lts::success();
        }
        // 0: choice point, 1: skip branch, 2: sink, 3.. one state per event
        let mut succ = vec![vec![(Label::Tau, 1)], vec![(Label::Tick, 2)], vec![]];
        for e in alphabet {
            let s = succ.len();
            succ[0].push((Label::Tau, s));
            succ.push(vec![(Label::Ev(e.clone()), 0)]);
        }
        Lts { initial: 0, succ, universe: alphabet.clone() }
    }

    /// Visible labels offered directly from `s`.
    pub fn initials(&self, s: StateId) -> BTreeSet<Label> {
        self.succ[s].iter().filter(|(l, _)| l.is_visible()).map(|(l, _)| l.clone()).collect()
    }

    pub fn is_stable(&self, s: StateId) -> bool {
        self.succ[s].iter().all(|(l, _)| l.is_visible())
    }

    pub fn tau_closure(&self, seeds: impl IntoIterator<Item = StateId>) -> BTreeSet<StateId> {
        let mut seen: BTreeSet<StateId> = BTreeSet::new();
        let mut stack: Vec<StateId> = seeds.into_iter().collect();
        while let Some(s) = stack.pop() {
            if seen.insert(s) {
                for (l, t) in &self.succ[s] {
                    if *l == Label::Tau && !seen.contains(t) {
                        stack.push(*t);
                    }
                }
            }
        }
        seen
    }

    /// States that can reach a τ-cycle through τ moves alone.
    pub fn divergent_states(&self) -> Vec<bool> {
        let n = self.num_states();
        // Iteratively strip states with no τ successor left; what remains in
        // the τ-graph either lies on a cycle or leads into one.
        let mut tau_out: Vec<usize> =
            self.succ.iter().map(|o| o.iter().filter(|(l, _)| *l == Label::Tau).count()).collect();
        let mut preds: Vec<Vec<StateId>> = vec![Vec::new(); n];
        for (s, l, t) in self.transitions() {
            if *l == Label::Tau {
                preds[t].push(s);
            }
        }
        let mut removed = vec![false; n];
        let mut queue: VecDeque<StateId> = (0..n).filter(|&s| tau_out[s] == 0).collect();
        while let Some(s) = queue.pop_front() {
            if removed[s] {
                continue;
            }
            removed[s] = true;
            for &p in &preds[s] {
                tau_out[p] -= 1;
                if tau_out[p] == 0 {
                    queue.push_back(p);
                }
            }
        }
        removed.into_iter().map(|r| !r).collect()
    }

    /// Keeps only states reachable from the initial state.
    pub fn reachable(&self) -> Lts {
        let mut index: HashMap<StateId, StateId> = HashMap::new();
        let mut order = vec![self.initial];
        index.insert(self.initial, 0);
        let mut i = 0;
        while i < order.len() {
            let s = order[i];
            for (_, t) in &self.succ[s] {
                if !index.contains_key(t) {
                    index.insert(*t, order.len());
                    order.push(*t);
                }
            }
            i += 1;
        }
        let succ = order.iter().map(|&s| self.succ[s].iter().map(|(l, t)| (l.clone(), index[t])).collect()).collect();
        Lts { initial: 0, succ, universe: self.universe.clone() }
    }
}

struct Builder<'a> {
    env: &'a Env,
}

impl Builder<'_> {
    /// Unfolds references at the top of `p`.
    fn canon(&self, p: &ProcessExpr) -> Result<ProcessExpr, SemError> {
        let mut cur = p.clone();
        let mut seen: Vec<String> = Vec::new();
        while let ProcessExpr::Ref(name) = &cur {
            if seen.contains(name) {
                return Err(SemError::UnguardedRecursion(name.clone()));
            }
            seen.push(name.clone());
            cur = self.env.lookup(name).cloned().ok_or_else(|| SemError::UnresolvedRef(name.clone()))?;
        }
        Ok(cur)
    }

    fn moves(&self, p: &ProcessExpr, stack: &mut Vec<ProcessExpr>) -> Result<Vec<(Label, ProcessExpr)>, SemError> {
        Ok(match p {
            ProcessExpr::Prefix(EventExpr::Tick, _) | ProcessExpr::Success => vec![(Label::Tick, ProcessExpr::Stop)],
            ProcessExpr::Prefix(e, t) => {
                let name = e.name().expect("non-tick event has a name").to_string();
                vec![(Label::Ev(name), self.canon(t)?)]
            }
            ProcessExpr::Stop => vec![],
            ProcessExpr::Internal(bs) => {
                let mut out = Vec::new();
                for b in bs {
                    out.push((Label::Tau, self.canon(b)?));
                }
                out
            }
            ProcessExpr::External(bs) => {
                if stack.contains(p) {
                    return Err(SemError::UnguardedRecursion(crate::frontend::pretty::process_to_string(p)));
                }
                stack.push(p.clone());
                let mut out = Vec::new();
                for (i, b) in bs.iter().enumerate() {
                    let cb = self.canon(b)?;
                    for (l, t) in self.moves(&cb, stack)? {
                        if l == Label::Tau {
                            let mut nb = bs.clone();
                            nb[i] = t;
                            out.push((Label::Tau, ProcessExpr::External(nb)));
                        } else {
                            out.push((l, t));
                        }
                    }
                }
                stack.pop();
                out
            }
            ProcessExpr::Ref(_) => {
                let c = self.canon(p)?;
                self.moves(&c, stack)?
            }
        })
    }
}

/// Builds the LTS of `expr`. States are keyed by the residual expression,
/// so name-guarded recursion yields a finite system.
pub fn build_lts(expr: &ProcessExpr, env: &Env, max_states: usize) -> Result<Lts, SemError> {
    let universe = alphabet(expr, env)?.all;
    let env = env.map_bodies(ProcessExpr::strip_data);
    let b = Builder { env: &env };
    let start = b.canon(&expr.strip_data())?;
    let mut index: HashMap<ProcessExpr, StateId> = HashMap::new();
    let mut exprs: Vec<ProcessExpr> = vec![start.clone()];
    index.insert(start, 0);
    let mut succ: Vec<Vec<(Label, StateId)>> = Vec::new();
    let mut i = 0;
    while i < exprs.len() {
        let p = exprs[i].clone();
        let mut out = Vec::new();
        for (l, t) in b.moves(&p, &mut Vec::new())? {
            let t = b.canon(&t)?;
            let id = match index.get(&t) {
                Some(&id) => id,
                None => {
                    let id = exprs.len();
                    if id >= max_states {
                        return Err(SemError::StateBudgetExceeded(max_states));
                    }
                    index.insert(t.clone(), id);
                    exprs.push(t);
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
    Ok(Lts { initial: 0, succ, universe })
}
