//! Small builders and checks shared by the algebraic law suites.

use std::collections::{BTreeSet, HashMap, HashSet};

use wright::semantics::parallel_product;
use wright::{build_lts, determinize, Env, Label, Lts, ProcessExpr, Sync};

use super::traces;

pub fn lts_of(expr: &ProcessExpr) -> Lts {
    build_lts(&ProcessExpr::name("P"), &Env::new().define("P", expr.clone()), 10_000).unwrap()
}

pub fn set(xs: &[&str]) -> BTreeSet<String> {
    xs.iter().map(|x| x.to_string()).collect()
}

/// One path spelling `trace`, one event per character.
pub fn linear(trace: &str) -> Lts {
    let edges: Vec<_> = trace.chars().enumerate().map(|(i, c)| (i, Label::Ev(c.to_string()), i + 1)).collect();
    let universe = trace.chars().map(|c| c.to_string()).collect();
    Lts::from_transitions(trace.len() + 1, 0, &edges, universe)
}

pub fn word(t: &[Label]) -> String {
    t.iter().map(Label::trace_name).collect()
}

/// Whether swapping operands maps one product onto the other through the
/// state pairs each product records.
pub fn isomorphic_by_swap(p: &Lts, q: &Lts, sync: &Sync) -> bool {
    let pq = parallel_product(p, q, sync, 10_000).unwrap();
    let qp = parallel_product(q, p, sync, 10_000).unwrap();
    if pq.lts.num_states() != qp.lts.num_states() || pq.lts.universe != qp.lts.universe {
        return false;
    }
    let back: HashMap<(usize, usize), usize> = qp.pairs.iter().enumerate().map(|(i, &(b, a))| ((a, b), i)).collect();
    let Some(map) = pq.pairs.iter().map(|pair| back.get(pair).copied()).collect::<Option<Vec<usize>>>() else {
        return false;
    };
    map[pq.lts.initial] == qp.lts.initial
        && (0..pq.lts.num_states()).all(|s| {
            let mine: HashSet<(Label, usize)> = pq.lts.succ[s].iter().map(|(l, t)| (l.clone(), map[*t])).collect();
            let theirs: HashSet<(Label, usize)> = qp.lts.succ[map[s]].iter().cloned().collect();
            mine == theirs
        })
}

/// Determinization keeps traces (to `depth`) and leaves no tau and no
/// repeated label out of any state.
pub fn determinize_ok(expr: &ProcessExpr, depth: usize) -> Result<(), String> {
    let p = lts_of(expr);
    let d = determinize(&p, 10_000).map_err(|e| e.to_string())?;
    if traces(&p, depth) != traces(&d, depth) {
        return Err(format!("traces differ for {expr:?}"));
    }
    for out in &d.succ {
        let labels: BTreeSet<&Label> = out.iter().map(|(l, _)| l).collect();
        if labels.len() != out.len() || labels.contains(&Label::Tau) {
            return Err(format!("not deterministic for {expr:?}"));
        }
    }
    Ok(())
}
