//! FDR2 script generation.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write;

use crate::model::*;
use crate::refine::obligations;
use crate::semantics::{alphabet, build_lts, determinize, project, Env, Label, Lts, SemError, DEFAULT_MAX_STATES};

fn set<I: IntoIterator<Item = S>, S: AsRef<str>>(items: I) -> String {
    let v: BTreeSet<String> = items.into_iter().map(|s| s.as_ref().to_string()).collect();
    format!("{{{}}}", v.into_iter().collect::<Vec<_>>().join(", "))
}

/// How process names are spelled in the script.
struct Names<'a> {
    map: Vec<(&'a str, String, bool)>,
}

impl Names<'_> {
    fn get(&self, n: &str) -> String {
        self.map
            .iter()
            .find(|(k, _, _)| *k == n)
            .or_else(|| self.map.iter().find(|(k, _, ci)| *ci && k.eq_ignore_ascii_case(n)))
            .map(|(_, v, _)| v.clone())
            .unwrap_or_else(|| n.to_string())
    }
}

fn csp_event(e: &EventExpr) -> String {
    e.name().unwrap_or("").to_string()
}

/// CSPm text of a process: prefixes and choices fully parenthesised,
/// choices nested to the right.
fn csp(p: &ProcessExpr, names: &Names) -> String {
    match p {
        ProcessExpr::Prefix(EventExpr::Tick, _) | ProcessExpr::Success => "SKIP".into(),
        ProcessExpr::Stop => "STOP".into(),
        ProcessExpr::Prefix(e, t) => format!("({} -> {})", csp_event(e), csp(t, names)),
        ProcessExpr::Ref(n) => names.get(n),
        ProcessExpr::External(bs) => chain(bs, "[]", names),
        ProcessExpr::Internal(bs) => chain(bs, "|~|", names),
    }
}

fn chain(bs: &[ProcessExpr], op: &str, names: &Names) -> String {
    match bs {
        [] => "STOP".into(),
        [one] => csp(one, names),
        [first, rest @ ..] => format!("({} {op} {})", csp(first, names), chain(rest, op, names)),
    }
}

/// Writes a deterministic LTS as a family of equations rooted at `name`.
fn det_equations(out: &mut String, name: &str, lts: &Lts) {
    let only_tick = |s: usize| lts.succ[s].len() == 1 && lts.succ[s][0].0 == Label::Tick;
    let mut names: BTreeMap<usize, String> = BTreeMap::new();
    names.insert(lts.initial, name.to_string());
    let mut order = vec![lts.initial];
    let mut i = 0;
    while i < order.len() {
        let s = order[i];
        for (l, t) in &lts.succ[s] {
            if *l != Label::Tick && !only_tick(*t) && !lts.succ[*t].is_empty() && !names.contains_key(t) {
                names.insert(*t, format!("{name}_{}", names.len()));
                order.push(*t);
            }
        }
        i += 1;
    }
    for s in order {
        let mut branches: Vec<String> = Vec::new();
        for (l, t) in &lts.succ[s] {
            match l {
                Label::Tick => branches.push("SKIP".into()),
                Label::Ev(e) => {
                    let target = if only_tick(*t) {
                        "SKIP".to_string()
                    } else if lts.succ[*t].is_empty() {
                        "STOP".to_string()
                    } else {
                        names[t].clone()
                    };
                    branches.push(format!("({e} -> {target})"));
                }
                Label::Tau => {}
            }
        }
        let body = match branches.len() {
            0 => "STOP".to_string(),
            _ => {
                let mut acc = branches.pop().expect("non-empty");
                while let Some(b) = branches.pop() {
                    acc = format!("({b} [] {acc})");
                }
                acc
            }
        };
        let _ = writeln!(out, "{} = {body}", names[&s]);
    }
}

fn behaviour_alphabet(b: &NamedBehavior) -> Result<crate::semantics::AlphabetInfo, SemError> {
    alphabet(&b.behavior, &Env::for_behavior(b))
}

fn local_equations(out: &mut String, defs: &[LocalDef], names: &Names) {
    for d in defs {
        let _ = writeln!(out, "{} = {}", d.name, csp(&d.body, names));
    }
}

fn behaviour_names<'a>(b: &'a NamedBehavior, own: String) -> Names<'a> {
    let mut map = vec![(b.name.as_str(), own, false)];
    map.extend(b.local_defs.iter().map(|d| (d.name.as_str(), d.name.clone(), false)));
    Names { map }
}

/// Every unqualified event name of the unit (interface events and
/// unqualified computation/glue events).
fn plain_events(unit: &Configuration) -> Result<BTreeSet<String>, SemError> {
    let mut out = BTreeSet::new();
    let mut add = |all: &BTreeSet<String>| {
        for e in all {
            match e.split_once('.') {
                Some((_, ev)) => out.insert(ev.to_string()),
                None => out.insert(e.clone()),
            };
        }
    };
    for t in &unit.component_types {
        add(&alphabet(&t.computation, &Env::for_computation(t))?.all);
        for p in &t.ports {
            add(&behaviour_alphabet(p)?.all);
        }
    }
    for t in &unit.connector_types {
        add(&alphabet(&t.glue, &Env::for_glue(t))?.all);
        for r in &t.roles {
            add(&behaviour_alphabet(r)?.all);
        }
    }
    Ok(out)
}

/// Qualified channels `X: {e, …}` covering every `X.e` the script uses.
fn channels(unit: &Configuration) -> Result<BTreeMap<String, BTreeSet<String>>, SemError> {
    let mut out: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
    let mut add_qualified = |all: &BTreeSet<String>| {
        for e in all {
            if let Some((x, ev)) = e.split_once('.') {
                out.entry(x.to_string()).or_default().insert(ev.to_string());
            }
        }
    };
    for t in &unit.component_types {
        add_qualified(&alphabet(&t.computation, &Env::for_computation(t))?.all);
    }
    for t in &unit.connector_types {
        add_qualified(&alphabet(&t.glue, &Env::for_glue(t))?.all);
    }
    for t in &unit.component_types {
        for p in &t.ports {
            out.entry(p.name.clone()).or_default().extend(behaviour_alphabet(p)?.all);
        }
    }
    for t in &unit.connector_types {
        for r in &t.roles {
            out.entry(r.name.clone()).or_default().extend(behaviour_alphabet(r)?.all);
        }
    }
    Ok(out)
}

fn qualify(prefix: &str, events: &BTreeSet<String>) -> BTreeSet<String> {
    events.iter().map(|e| format!("{prefix}.{e}")).collect()
}

fn component_section(out: &mut String, t: &ComponentType) -> Result<(), SemError> {
    let comp_alpha = alphabet(&t.computation, &Env::for_computation(t))?;
    let comp_name = format!("Computation{}", t.name);
    let mut map = vec![("Computation", comp_name.clone(), true)];
    map.extend(t.local_defs.iter().map(|d| (d.name.as_str(), d.name.clone(), false)));
    let names = Names { map };
    let _ = writeln!(out, "-- Component {}", t.name);
    let _ = writeln!(out, "ALPHA_{} = {}", t.name, set(&comp_alpha.all));
    let _ = writeln!(out, "{comp_name} = {}", csp(&t.computation, &names));
    local_equations(out, &t.local_defs, &names);
    let mut observed: BTreeMap<&str, BTreeSet<String>> = BTreeMap::new();
    for p in &t.ports {
        observed.insert(&p.name, behaviour_alphabet(p)?.observed);
    }
    for p in &t.ports {
        let a = behaviour_alphabet(p)?;
        let pn = &p.name;
        let _ = writeln!(out, "-- Port {pn}");
        let _ = writeln!(out, "ALPHA_{pn} = {}", set(&a.all));
        if a.observed.is_empty() {
            let _ = writeln!(out, "-- no events observed!");
        } else {
            let _ = writeln!(out, "ALPHA_{pn}I = {}", set(&a.initialized));
        }
        let pnames = behaviour_names(p, format!("PORT{pn}"));
        let _ = writeln!(out, "PORT{pn} = {}", csp(&p.behavior, &pnames));
        local_equations(out, &p.local_defs, &pnames);
        let _ = writeln!(out, "{pn}G = PORT{pn}[[ x <- {pn}.x | x <- ALPHA_{pn} ]]");
        let _ = writeln!(out, "-- Deterministic process restricted to the observed events");
        if a.observed.is_empty() {
            let _ = writeln!(out, "PORT{pn}DETR = SKIP");
        } else {
            let lts = build_lts(&p.behavior, &Env::for_behavior(p), DEFAULT_MAX_STATES)?;
            let det = determinize(&project(&lts, &a.observed), DEFAULT_MAX_STATES)?;
            det_equations(out, &format!("PORT{pn}DETR"), &det);
        }
        let others: Vec<&NamedBehavior> = t.ports.iter().filter(|q| q.name != p.name).collect();
        let hidden = format!("diff(ALPHA_{}, {})", t.name, set(qualify(pn, &a.all)));
        if others.is_empty() {
            let _ = writeln!(out, "COMP{pn} = ({comp_name}) \\ {hidden}");
        } else {
            let sync: BTreeSet<String> =
                others.iter().flat_map(|q| qualify(&q.name, &observed[q.name.as_str()])).collect();
            let env = others
                .iter()
                .map(|q| format!("PORT{0}DETR[[ x <- {0}.x | x <- ALPHA_{0} ]]", q.name))
                .collect::<Vec<_>>()
                .join(" ||| ");
            let _ = writeln!(out, "COMP{pn} = ({comp_name} [| {} |] ({env})) \\ {hidden}", set(&sync));
        }
        let _ = writeln!(out, "assert {pn}G [FD= COMP{pn}");
    }
    Ok(())
}

fn connector_section(out: &mut String, t: &ConnectorType) -> Result<(), SemError> {
    let glue_alpha = alphabet(&t.glue, &Env::for_glue(t))?;
    let glue_name = format!("Glue{}", t.name);
    let mut map = vec![("Glue", glue_name.clone(), true)];
    map.extend(t.local_defs.iter().map(|d| (d.name.as_str(), d.name.clone(), false)));
    let names = Names { map };
    let _ = writeln!(out, "-- Connector {}", t.name);
    let _ = writeln!(out, "ALPHA_{} = {}", t.name, set(&glue_alpha.all));
    let _ = writeln!(out, "{glue_name} = {}", csp(&t.glue, &names));
    local_equations(out, &t.local_defs, &names);
    let mut role_events = BTreeSet::new();
    for r in &t.roles {
        let a = behaviour_alphabet(r)?;
        let rn = &r.name;
        role_events.extend(qualify(rn, &a.all));
        let _ = writeln!(out, "-- Role {rn}");
        let _ = writeln!(out, "ALPHA_{rn} = {}", set(&a.all));
        let rnames = behaviour_names(r, format!("ROLE{rn}"));
        let _ = writeln!(out, "ROLE{rn} = {}", csp(&r.behavior, &rnames));
        local_equations(out, &r.local_defs, &rnames);
        let _ = writeln!(out, "{rn}A = ROLE{rn} [[ x <- abstractEvent | x <- ALPHA_{rn} ]]");
        let _ = writeln!(out, "assert DFA [FD= {rn}A");
    }
    for r in &t.roles {
        let lts = build_lts(&r.behavior, &Env::for_behavior(r), DEFAULT_MAX_STATES)?;
        det_equations(out, &format!("ROLE{}DET", r.name), &determinize(&lts, DEFAULT_MAX_STATES)?);
    }
    let roles = t
        .roles
        .iter()
        .map(|r| format!("ROLE{0}[[ x <- {0}.x | x <- ALPHA_{0} ]]", r.name))
        .collect::<Vec<_>>()
        .join(" ||| ");
    let sync: BTreeSet<String> = role_events.intersection(&glue_alpha.all).cloned().collect();
    if roles.is_empty() {
        let _ = writeln!(out, "{} = {glue_name}", t.name);
    } else {
        let _ = writeln!(out, "{} = (({roles}) [| {} |] {glue_name})", t.name, set(&sync));
    }
    let _ = writeln!(out, "{0}A = {0} [[ x <- abstractEvent | x <- ALPHA_{0} ]]", t.name);
    let _ = writeln!(out, "assert DFA [FD= {}A", t.name);
    Ok(())
}

fn interface_proc(unit: &Configuration, instance: &str, name: &str) -> Option<String> {
    if unit.component_instance(instance).is_some() {
        Some(format!("PORT{name}"))
    } else {
        unit.connector_instance(instance).map(|_| format!("ROLE{name}"))
    }
}

/// Emits an FDR2 script for `unit`. Every `assert` line corresponds, in
/// order, to one report of [`crate::verify_configuration`].
pub fn emit_fdr_script(unit: &Configuration) -> Result<String, SemError> {
    let mut out = String::new();
    let kind = if unit.is_style { "Style" } else { "Configuration" };
    out.push_str("-- FDR compression functions\n");
    out.push_str("transparent diamond\n");
    out.push_str("transparent normalise\n");
    out.push_str("-- Wright defined processes\n");
    out.push_str("channel abstractEvent\n");
    out.push_str("DFA = abstractEvent -> DFA |~| SKIP\n");
    let _ = writeln!(out, "-- {kind} {}", unit.name);
    out.push_str("-- Type declarations\n");
    out.push_str("-- events for abstract specification\n");
    let plain = plain_events(unit)?;
    if !plain.is_empty() {
        let _ = writeln!(out, "channel {}", plain.into_iter().collect::<Vec<_>>().join(", "));
    }
    for (x, evs) in channels(unit)? {
        let _ = writeln!(out, "channel {x}: {}", set(&evs));
    }
    for t in &unit.component_types {
        component_section(&mut out, t)?;
    }
    for t in &unit.connector_types {
        connector_section(&mut out, t)?;
    }
    let mut header_done = (false, false);
    for ob in obligations(unit) {
        match ob {
            crate::refine::Obligation::Attachment { attachment } => {
                if !header_done.0 {
                    out.push_str("-- Attachment Test\n");
                    header_done.0 = true;
                }
                let a = &unit.attachments[attachment];
                let (p, r) = (&a.port, &a.role);
                let plus_p = format!("{}_{}PLUS", a.component_instance, p);
                let plus_r = format!("{}_{}PLUS", a.connector_instance, r);
                let _ = writeln!(out, "{plus_p} = PORT{p} [| diff(ALPHA_{r}, ALPHA_{p}) |] STOP");
                let _ = writeln!(out, "{plus_r} = ROLE{r} [| diff(ALPHA_{p}, ALPHA_{r}) |] STOP");
                let _ = writeln!(out, "{plus_p}DET = {plus_p} [| union(ALPHA_{p}, ALPHA_{r}) |] ROLE{r}DET");
                let _ = writeln!(out, "assert {plus_r} [FD= {plus_p}DET");
            }
            crate::refine::Obligation::Unattached { instance, interface } => {
                if !header_done.1 {
                    out.push_str("-- Completeness Test\n");
                    header_done.1 = true;
                }
                let proc = interface_proc(unit, &instance, &interface).unwrap_or_else(|| interface.clone());
                let base = format!("{instance}_{interface}");
                let _ = writeln!(out, "{base}SKIPPLUS = SKIP [| ALPHA_{interface} |] STOP");
                let _ = writeln!(out, "{base}ALONE = {proc} [| {{}} |] SKIP");
                let _ = writeln!(out, "assert {base}SKIPPLUS [FD= {base}ALONE");
            }
            _ => {}
        }
    }
    if unit.is_style {
        out.push_str("-- No constraints\n");
    }
    let _ = writeln!(out, "-- End {kind}");
    Ok(out)
}

/// `(spec, impl)` pairs of every `assert S [FD= I` line in a script.
pub fn script_assertions(script: &str) -> Vec<(String, String)> {
    script
        .lines()
        .filter_map(|l| l.strip_prefix("assert "))
        .filter_map(|l| l.split_once(" [FD= "))
        .map(|(s, i)| (s.trim().to_string(), i.trim().to_string()))
        .collect()
}
