//! Operational semantics of CSP-Wright processes and the semantic operators
//! used by the consistency properties.

pub mod lts;
pub mod ops;
pub mod qualify;

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::model::*;

pub use lts::{build_lts, Label, Lts, StateId, DEFAULT_MAX_STATES};
pub use ops::{augment, determinize, hide, interleave, parallel, parallel_product, project, rename, Product, Sync};
pub use qualify::qualify_configuration;

#[derive(Clone, Debug, PartialEq, Eq, Error, Serialize)]
pub enum SemError {
    #[error("unresolved process name `{0}`")]
    UnresolvedRef(String),
    #[error("unguarded recursion through `{0}`")]
    UnguardedRecursion(String),
    #[error("state budget of {0} states exceeded")]
    StateBudgetExceeded(usize),
    #[error("no attachment for `{0}`")]
    MissingAttachment(String),
}

/// Name environment for resolving process references inside one behaviour.
#[derive(Clone, Debug, Default)]
pub struct Env {
    entries: Vec<(String, ProcessExpr, bool)>,
}

impl Env {
    pub fn new() -> Self {
        Env::default()
    }

    /// Adds a definition looked up by exact name.
    pub fn define(mut self, name: &str, body: ProcessExpr) -> Self {
        self.entries.push((name.to_string(), body, false));
        self
    }

    /// Adds a definition whose name also matches case-insensitively.
    pub fn define_keyword(mut self, name: &str, body: ProcessExpr) -> Self {
        self.entries.push((name.to_string(), body, true));
        self
    }

    pub fn with_locals(mut self, defs: &[LocalDef]) -> Self {
        for d in defs {
            self.entries.push((d.name.clone(), d.body.clone(), false));
        }
        self
    }

    pub fn for_behavior(b: &NamedBehavior) -> Self {
        Env::new().define(&b.name, b.behavior.clone()).with_locals(&b.local_defs)
    }

    pub fn for_computation(c: &ComponentType) -> Self {
        Env::new().with_locals(&c.local_defs).define_keyword("Computation", c.computation.clone())
    }

    pub fn for_glue(c: &ConnectorType) -> Self {
        Env::new().with_locals(&c.local_defs).define_keyword("Glue", c.glue.clone())
    }

    pub fn lookup(&self, name: &str) -> Option<&ProcessExpr> {
        self.entries
            .iter()
            .find(|(n, _, _)| n == name)
            .or_else(|| self.entries.iter().find(|(n, _, ci)| *ci && n.eq_ignore_ascii_case(name)))
            .map(|(_, b, _)| b)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|(n, _, _)| n.as_str())
    }

    /// Applies `f` to every body (used to rename events consistently).
    pub fn map_bodies(&self, f: impl Fn(&ProcessExpr) -> ProcessExpr) -> Env {
        Env { entries: self.entries.iter().map(|(n, b, ci)| (n.clone(), f(b), *ci)).collect() }
    }
}

/// αP split by who controls each event.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AlphabetInfo {
    pub all: BTreeSet<String>,
    pub initialized: BTreeSet<String>,
    pub observed: BTreeSet<String>,
}

/// Syntactic alphabet of `expr`, following references through `env`.
/// The success event is never included.
pub fn alphabet(expr: &ProcessExpr, env: &Env) -> Result<AlphabetInfo, SemError> {
    let mut info = AlphabetInfo::default();
    let mut seen: BTreeSet<String> = BTreeSet::new();
    let mut work = vec![expr.clone()];
    while let Some(p) = work.pop() {
        p.for_each_event(&mut |e| match e {
            EventExpr::Observed { name, .. } => {
                info.all.insert(name.clone());
                info.observed.insert(name.clone());
            }
            EventExpr::Signalled { name, .. } | EventExpr::Internal(name) => {
                info.all.insert(name.clone());
                info.initialized.insert(name.clone());
            }
            EventExpr::Tick => {}
        });
        let mut refs = Vec::new();
        p.for_each_ref(&mut |r| refs.push(r.to_string()));
        for r in refs {
            if seen.insert(r.clone()) {
                let body = env.lookup(&r).ok_or_else(|| SemError::UnresolvedRef(r.clone()))?;
                work.push(body.clone());
            }
        }
    }
    Ok(info)
}
