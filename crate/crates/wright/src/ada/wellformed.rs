//! Static well-formedness rules for the Ada subset, checked on generated
//! units as a post-condition.

use std::collections::{BTreeMap, BTreeSet};

use super::ast::*;
use crate::diag::Diagnostic;

fn duplicates<'a>(names: impl IntoIterator<Item = &'a str>) -> BTreeSet<&'a str> {
    let mut seen = BTreeSet::new();
    names.into_iter().filter(|n| !seen.insert(*n)).collect()
}

fn contains(stmts: &[AdaStmt], pred: impl Fn(&AdaStmt) -> bool) -> bool {
    let mut found = false;
    walk_all(stmts, &mut |s| found |= pred(s));
    found
}

/// Checks name uniqueness, subprogram/task statement restrictions, accept
/// ownership, and that entry calls target an entry of a task of the other
/// kind (`Component_` vs `Connector_`).
pub fn check_ada_wellformed(unit: &AdaUnit) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let path = |n: &str| format!("{}.{n}", unit.procedure_name);
    let subprograms: Vec<&str> = unit
        .declarations
        .iter()
        .filter(|d| matches!(d, AdaDecl::Function { .. } | AdaDecl::Procedure { .. }))
        .map(AdaDecl::name)
        .collect();
    let specs: Vec<&str> = unit.task_specs().map(|(n, _)| n).collect();
    let bodies: Vec<&str> = unit.task_bodies().map(|(n, _)| n).collect();

    for n in &subprograms {
        if specs.contains(n) || bodies.contains(n) {
            out.push(Diagnostic::on("ADA-P1", path(n), format!("`{n}` names both a subprogram and a task")));
        }
    }
    let spec_set: BTreeSet<&str> = specs.iter().copied().collect();
    let body_set: BTreeSet<&str> = bodies.iter().copied().collect();
    for n in spec_set.symmetric_difference(&body_set) {
        out.push(Diagnostic::on("ADA-P1", path(n), format!("task `{n}` needs exactly one specification and one body")));
    }
    for n in duplicates(subprograms.iter().copied()) {
        out.push(Diagnostic::on("ADA-P2", path(n), format!("subprogram `{n}` declared twice")));
    }
    for n in duplicates(specs.iter().copied()).into_iter().chain(duplicates(bodies.iter().copied())) {
        out.push(Diagnostic::on("ADA-P3", path(n), format!("task `{n}` declared twice")));
    }

    for d in &unit.declarations {
        let (name, body, is_function) = match d {
            AdaDecl::Function { name, body, .. } => (name, body, true),
            AdaDecl::Procedure { name, body } => (name, body, false),
            _ => continue,
        };
        if is_function && !contains(body, |s| matches!(s, AdaStmt::Return(_))) {
            out.push(Diagnostic::on("ADA-P7", path(name), format!("function `{name}` has no return statement")));
        }
        if contains(body, |s| matches!(s, AdaStmt::Accept(_))) {
            out.push(Diagnostic::on("ADA-P8", path(name), format!("subprogram `{name}` contains an accept")));
        }
        if contains(body, |s| matches!(s, AdaStmt::Select { .. })) {
            out.push(Diagnostic::on("ADA-P9", path(name), format!("subprogram `{name}` contains a select")));
        }
    }

    let entries: BTreeMap<&str, BTreeSet<&str>> =
        unit.task_specs().map(|(n, es)| (n, es.iter().map(String::as_str).collect())).collect();
    for (task, body) in unit.task_bodies() {
        if contains(body, |s| matches!(s, AdaStmt::Return(_))) {
            out.push(Diagnostic::on("ADA-P10", path(task), format!("task `{task}` contains a return")));
        }
        let own = entries.get(task);
        let mut accepted = Vec::new();
        walk_all(body, &mut |s| match s {
            AdaStmt::Accept(e) => accepted.push(e.as_str()),
            AdaStmt::Select { alternatives, .. } => accepted.extend(alternatives.iter().map(|(e, _)| e.as_str())),
            _ => {}
        });
        for e in accepted {
            if !own.is_some_and(|es| es.contains(e)) {
                out.push(Diagnostic::on(
                    "ADA-P11",
                    path(task),
                    format!("task `{task}` accepts `{e}`, not one of its entries"),
                ));
            }
        }
        let mut calls = Vec::new();
        walk_all(body, &mut |s| {
            if let AdaStmt::EntryCall(c) = s {
                calls.push(c.as_str())
            }
        });
        for c in calls {
            let Some((target, entry)) = c.split_once('.') else { continue };
            let kind = |n: &str| n.split('_').next().unwrap_or("").to_string();
            if target == task || kind(target) == kind(task) {
                out.push(Diagnostic::on("ADA-CALL", path(task), format!("`{c}` calls a task of the same kind")));
            } else if !entries.get(target).is_some_and(|es| es.contains(entry)) {
                out.push(Diagnostic::on("ADA-CALL", path(task), format!("`{c}` is not a declared entry")));
            }
        }
    }
    out
}
