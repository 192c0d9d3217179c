//! Brute-force failures/divergences oracle over explicit traces.

use std::collections::BTreeSet;

use rand::rngs::StdRng;
use rand::Rng;
use wright::{fd_model, refines_fd, Label, Lts, RefinementVerdict};

use super::*;

pub const DEPTH: usize = 6;

#[derive(Debug, PartialEq)]
pub enum Found {
    Trace,
    Refusal,
    Divergence,
}

pub type Violation = (Vec<Label>, Found);

/// Length of the shortest FD violation of `spec ⊑ imp` found by walking
/// every trace up to `DEPTH`, straight from the definitions.
pub fn oracle(spec: &Lts, imp: &Lts) -> Option<(usize, Vec<Violation>)> {
    let alphabet: BTreeSet<Label> = labels(&spec.universe).into_iter().chain(labels(&imp.universe)).collect();
    let mut frontier = vec![(vec![], closure(spec, [spec.initial]), closure(imp, [imp.initial]))];
    let mut found = Vec::new();
    for len in 0..=DEPTH {
        let mut next = Vec::new();
        for (t, s, i) in &frontier {
            if s.iter().any(|&x| diverges(spec, x)) {
                continue;
            }
            if i.iter().any(|&x| diverges(imp, x)) {
                found.push((t.clone(), Found::Divergence));
                continue;
            }
            let refusal_ok = |x: usize| {
                let acc = offers(imp, x);
                s.iter().any(|&y| stable(spec, y) && offers(spec, y).is_subset(&acc))
            };
            if i.iter().any(|&x| stable(imp, x) && !refusal_ok(x)) {
                found.push((t.clone(), Found::Refusal));
            }
            for l in &alphabet {
                let ni = after(imp, i, l);
                if ni.is_empty() {
                    continue;
                }
                let mut u = t.clone();
                u.push(l.clone());
                let ns = after(spec, s, l);
                if ns.is_empty() {
                    if len < DEPTH {
                        next.push((u, ns, BTreeSet::new()));
                    }
                    continue;
                }
                next.push((u, ns, ni));
            }
        }
        // Trace violations surface one level later, as empty spec sets.
        for (t, s, i) in &next {
            if s.is_empty() && i.is_empty() {
                found.push((t.clone(), Found::Trace));
            }
        }
        frontier = next.into_iter().filter(|(_, s, _)| !s.is_empty()).collect();
    }
    let m = found.iter().map(|(t, _)| t.len()).min()?;
    Some((m, found.into_iter().filter(|(t, _)| t.len() == m).collect()))
}

pub fn name(t: &[Label]) -> Vec<String> {
    t.iter().map(Label::trace_name).collect()
}

pub fn engine(spec: &Lts, imp: &Lts) -> RefinementVerdict {
    refines_fd(&fd_model(spec, 10_000).unwrap(), &fd_model(imp, 10_000).unwrap())
}

/// Random pairs, a third of them built so the refinement is likely to
/// hold: the implementation is the spec with some nondeterminism resolved.
pub fn pair(rng: &mut StdRng) -> (Lts, Lts) {
    let sigma = random_sigma(rng);
    let spec = random_lts(rng, &sigma);
    let imp = if rng.gen_bool(0.35) {
        let mut imp = spec.clone();
        for out in imp.succ.iter_mut() {
            if out.len() > 1 && rng.gen_bool(0.5) {
                out.remove(rng.gen_range(0..out.len()));
            }
        }
        imp
    } else {
        random_lts(rng, &sigma)
    };
    (spec, imp)
}

/// Compares engine and oracle on one pair; `Err` describes a disagreement.
pub fn agree(spec: &Lts, imp: &Lts) -> Result<bool, String> {
    let verdict = engine(spec, imp);
    if verdict.holds != verdict.counterexample.is_none() {
        return Err(format!("verdict and counterexample disagree: {verdict:?}"));
    }
    match (&verdict.counterexample, oracle(spec, imp)) {
        (None, None) => Ok(true),
        (None, Some(e)) => Err(format!("engine holds, oracle found {e:?}")),
        (Some(cx), None) if cx.trace.len() > DEPTH => Ok(false),
        (Some(cx), None) => Err(format!("engine reports {cx:?}, oracle sees nothing")),
        (Some(cx), Some((len, violations))) => {
            let kind = match cx.kind {
                wright::ViolationKind::TraceViolation => Found::Trace,
                wright::ViolationKind::RefusalViolation(_) => Found::Refusal,
                wright::ViolationKind::DivergenceViolation => Found::Divergence,
            };
            if cx.trace.len() != len || !violations.iter().any(|(t, k)| name(t) == cx.trace && *k == kind) {
                return Err(format!("{cx:?} is not among the shortest violations {violations:?}"));
            }
            Ok(false)
        }
    }
}
