//! Static semantics: naming, typing and attachment rules plus the
//! metamodel constraints on behaviours.

use std::collections::{BTreeMap, BTreeSet};

use crate::diag::Diagnostic;
use crate::model::*;
use crate::semantics::{alphabet, Env};

fn valid_identifier(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if c.is_alphabetic()) && cs.all(|c| c.is_alphanumeric() || c == '_')
}

fn valid_event_name(s: &str) -> bool {
    let parts: Vec<&str> = s.split('.').collect();
    parts.len() <= 2 && parts.iter().all(|p| valid_identifier(p))
}

struct Checker<'a> {
    unit: &'a Configuration,
    out: Vec<Diagnostic>,
}

/// Checks a parsed unit. Returns an empty list iff the unit is well formed;
/// warnings (unattached interfaces) do not count as errors.
pub fn check_static(unit: &Configuration) -> Vec<Diagnostic> {
    let mut c = Checker { unit, out: Vec::new() };
    c.rule1_unique();
    c.rule2_types();
    c.rules3_to_5_attachments();
    if !unit.is_style {
        c.rule6_attached_once();
    }
    c.identifiers();
    c.member_names();
    c.without();
    c.behaviours();
    c.unique_initializer();
    c.constraints();
    c.out
}

impl Checker<'_> {
    fn err(&mut self, rule: &str, loc: Loc, msg: String) {
        self.out.push(Diagnostic::at(rule, loc.0, msg));
    }

    fn rule1_unique(&mut self) {
        let u = self.unit;
        let mut seen: BTreeMap<&str, &str> = BTreeMap::new();
        let named = u
            .component_types
            .iter()
            .map(|t| (t.name.as_str(), "component type", t.loc))
            .chain(u.connector_types.iter().map(|t| (t.name.as_str(), "connector type", t.loc)))
            .chain(u.instances().map(|i| (i.name.as_str(), "instance", i.loc)));
        for (name, what, loc) in named {
            if name == u.name {
                self.err("W-R1", loc, format!("{what} `{name}` reuses the name of the unit"));
            } else if let Some(prev) = seen.get(name) {
                self.err("MM-P4", loc, format!("{what} `{name}` clashes with {prev} `{name}`"));
            } else {
                seen.insert(name, what);
            }
        }
        let behaviours: Vec<(&str, &[LocalDef])> = u
            .component_types
            .iter()
            .flat_map(|t| {
                std::iter::once((t.name.as_str(), t.local_defs.as_slice()))
                    .chain(t.ports.iter().map(|p| (p.name.as_str(), p.local_defs.as_slice())))
            })
            .chain(u.connector_types.iter().flat_map(|t| {
                std::iter::once((t.name.as_str(), t.local_defs.as_slice()))
                    .chain(t.roles.iter().map(|r| (r.name.as_str(), r.local_defs.as_slice())))
            }))
            .collect();
        for (owner, defs) in behaviours {
            let mut names = BTreeSet::new();
            for d in defs {
                if d.name == owner || !names.insert(d.name.as_str()) {
                    self.err("W-R1", d.loc, format!("definition `{}` in `{owner}` is not unique", d.name));
                }
            }
        }
    }

    fn rule2_types(&mut self) {
        let u = self.unit;
        let skip_components = u.component_types.is_empty();
        let skip_connectors = u.connector_types.is_empty();
        for i in u.instances() {
            let comp = u.component_type(&i.type_name).is_some();
            let conn = u.connector_type(&i.type_name).is_some();
            if !comp && !conn {
                let skipped = match i.declared_kind {
                    Some(InstanceKind::Component) => skip_components,
                    Some(InstanceKind::Connector) => skip_connectors,
                    None => skip_components && skip_connectors,
                };
                if !skipped {
                    self.err("W-R2", i.loc, format!("type `{}` of instance `{}` is not declared", i.type_name, i.name));
                }
                continue;
            }
            match (i.declared_kind, comp) {
                (Some(InstanceKind::Component), false) => self.err(
                    "MM-P9",
                    i.loc,
                    format!("component instance `{}` uses connector type `{}`", i.name, i.type_name),
                ),
                (Some(InstanceKind::Connector), true) => self.err(
                    "MM-P10",
                    i.loc,
                    format!("connector instance `{}` uses component type `{}`", i.name, i.type_name),
                ),
                _ => {}
            }
        }
    }

    fn rules3_to_5_attachments(&mut self) {
        let u = self.unit;
        let declared = |n: &str| u.instances().any(|i| i.name == n);
        for a in &u.attachments {
            for n in [&a.component_instance, &a.connector_instance] {
                if !declared(n) {
                    self.err("W-R3", a.loc, format!("instance `{n}` is used in an attachment but not declared"));
                }
            }
            let ci = u.component_instance(&a.component_instance);
            let ni = u.connector_instance(&a.connector_instance);
            if (declared(&a.component_instance) && ci.is_none()) || (declared(&a.connector_instance) && ni.is_none()) {
                self.err(
                    "W-R5",
                    a.loc,
                    format!(
                        "attachment must read component.port As connector.role, got `{}.{} As {}.{}`",
                        a.component_instance, a.port, a.connector_instance, a.role
                    ),
                );
                continue;
            }
            if let Some(t) = ci.and_then(|i| u.component_type(&i.type_name)) {
                if t.port(&a.port).is_none() {
                    self.err("W-R4", a.loc, format!("component type `{}` has no port `{}`", t.name, a.port));
                }
            }
            if let Some(t) = ni.and_then(|i| u.connector_type(&i.type_name)) {
                if t.role(&a.role).is_none() {
                    self.err("W-R4", a.loc, format!("connector type `{}` has no role `{}`", t.name, a.role));
                }
            }
        }
    }

    fn rule6_attached_once(&mut self) {
        let u = self.unit;
        for i in &u.component_instances {
            let Some(t) = u.component_type(&i.type_name) else { continue };
            for p in &t.ports {
                let n = u.attachments.iter().filter(|a| a.component_instance == i.name && a.port == p.name).count();
                self.attached_count(n, i, &p.name, "port");
            }
        }
        for i in &u.connector_instances {
            let Some(t) = u.connector_type(&i.type_name) else { continue };
            for r in &t.roles {
                let n = u.attachments.iter().filter(|a| a.connector_instance == i.name && a.role == r.name).count();
                self.attached_count(n, i, &r.name, "role");
            }
        }
    }

    fn attached_count(&mut self, n: usize, i: &Instance, item: &str, what: &str) {
        match n {
            1 => {}
            0 => self.out.push(Diagnostic::warning(
                "W-R6",
                crate::diag::Location::Span(i.loc.0),
                format!("{what} `{}.{item}` is not attached", i.name),
            )),
            _ => self.out.push(Diagnostic::warning(
                "W-R6",
                crate::diag::Location::Span(i.loc.0),
                format!("{what} `{}.{item}` is attached {n} times", i.name),
            )),
        }
    }

    fn identifiers(&mut self) {
        let u = self.unit;
        let mut names: Vec<(&str, Loc)> = vec![(u.name.as_str(), u.loc)];
        for t in &u.component_types {
            names.push((&t.name, t.loc));
            names.extend(t.ports.iter().map(|p| (p.name.as_str(), p.loc)));
        }
        for t in &u.connector_types {
            names.push((&t.name, t.loc));
            names.extend(t.roles.iter().map(|r| (r.name.as_str(), r.loc)));
        }
        names.extend(u.instances().map(|i| (i.name.as_str(), i.loc)));
        for (n, loc) in names {
            if !valid_identifier(n) {
                self.err("MM-P1", loc, format!("`{n}` is not a valid identifier"));
            }
        }
        for (body, loc) in all_bodies(u) {
            let mut bad_refs = Vec::new();
            body.for_each_ref(&mut |r| {
                if !valid_identifier(r) {
                    bad_refs.push(r.to_string());
                }
            });
            let mut bad_events = Vec::new();
            body.for_each_event(&mut |e| {
                if let Some(n) = e.name() {
                    let ok = match e {
                        EventExpr::Internal(_) => valid_identifier(n),
                        _ => valid_event_name(n),
                    };
                    if !ok {
                        bad_events.push(n.to_string());
                    }
                }
            });
            for r in bad_refs {
                self.err("MM-P11", loc, format!("process name `{r}` is not a valid identifier"));
            }
            for e in bad_events {
                self.err("MM-P12", loc, format!("event name `{e}` is not a valid event identifier"));
            }
        }
    }

    fn member_names(&mut self) {
        let u = self.unit;
        for t in &u.component_types {
            let mut seen = BTreeSet::new();
            for p in &t.ports {
                if !seen.insert(p.name.as_str()) {
                    self.err("MM-P2", p.loc, format!("component `{}` declares port `{}` twice", t.name, p.name));
                }
            }
        }
        for t in &u.connector_types {
            let mut seen = BTreeSet::new();
            for r in &t.roles {
                if !seen.insert(r.name.as_str()) {
                    self.err("MM-P3", r.loc, format!("connector `{}` declares role `{}` twice", t.name, r.name));
                }
            }
        }
    }

    fn without(&mut self) {
        let u = self.unit;
        if u.component_types.is_empty() && (!u.component_instances.is_empty() || !u.attachments.is_empty()) {
            self.err(
                "MM-P5",
                u.loc,
                "a unit without component types admits no component instances nor attachments".into(),
            );
        }
        if u.connector_types.is_empty() && (!u.connector_instances.is_empty() || !u.attachments.is_empty()) {
            self.err(
                "MM-P5",
                u.loc,
                "a unit without connector types admits no connector instances nor attachments".into(),
            );
        }
    }

    fn behaviours(&mut self) {
        let u = self.unit;
        for t in &u.component_types {
            let env = Env::for_computation(t);
            self.resolve(&t.computation, &t.local_defs, &env, t.loc, &t.name);
            self.external_observed(&t.computation, &env, t.loc);
            for p in &t.ports {
                let penv = Env::for_behavior(p);
                self.resolve(&p.behavior, &p.local_defs, &penv, p.loc, &p.name);
                self.external_observed(&p.behavior, &penv, p.loc);
                self.no_internal(p, "MM-P14", "port");
            }
            self.interfaces_included(&t.ports, &t.computation, &env, t.loc, "MM-P16", "computation");
        }
        for t in &u.connector_types {
            let env = Env::for_glue(t);
            self.resolve(&t.glue, &t.local_defs, &env, t.loc, &t.name);
            self.external_observed(&t.glue, &env, t.loc);
            for r in &t.roles {
                let renv = Env::for_behavior(r);
                self.resolve(&r.behavior, &r.local_defs, &renv, r.loc, &r.name);
                self.external_observed(&r.behavior, &renv, r.loc);
                self.no_internal(r, "MM-P15", "role");
            }
            self.interfaces_included(&t.roles, &t.glue, &env, t.loc, "MM-P17", "glue");
        }
    }

    fn resolve(&mut self, body: &ProcessExpr, defs: &[LocalDef], env: &Env, loc: Loc, owner: &str) {
        let mut missing = Vec::new();
        for b in std::iter::once(body).chain(defs.iter().map(|d| &d.body)) {
            b.for_each_ref(&mut |r| {
                if env.lookup(r).is_none() && !missing.contains(&r.to_string()) {
                    missing.push(r.to_string());
                }
            });
        }
        for r in missing {
            self.err("W-UNRESOLVED", loc, format!("process name `{r}` in `{owner}` does not resolve"));
        }
    }

    fn external_observed(&mut self, body: &ProcessExpr, env: &Env, loc: Loc) {
        let mut bad = Vec::new();
        let mut work: Vec<&ProcessExpr> = vec![body];
        let bodies: Vec<ProcessExpr> = env.names().filter_map(|n| env.lookup(n).cloned()).collect();
        work.extend(bodies.iter());
        let mut visited = BTreeSet::new();
        while let Some(p) = work.pop() {
            if !visited.insert(p as *const ProcessExpr) {
                continue;
            }
            match p {
                ProcessExpr::Prefix(_, t) => work.push(t),
                ProcessExpr::Internal(bs) => work.extend(bs.iter()),
                ProcessExpr::External(bs) => {
                    for b in bs {
                        for e in initial_events(b, env) {
                            if matches!(e, EventExpr::Signalled { .. } | EventExpr::Internal(_)) {
                                let text = crate::frontend::pretty::event_to_string(&e);
                                if !bad.contains(&text) {
                                    bad.push(text);
                                }
                            }
                        }
                        work.push(b);
                    }
                }
                _ => {}
            }
        }
        for e in bad {
            self.err("MM-P13", loc, format!("external choice branch starts with non-observed event `{e}`"));
        }
    }

    fn no_internal(&mut self, b: &NamedBehavior, rule: &str, what: &str) {
        let mut found = Vec::new();
        for body in std::iter::once(&b.behavior).chain(b.local_defs.iter().map(|d| &d.body)) {
            body.for_each_event(&mut |e| {
                if let EventExpr::Internal(n) = e {
                    found.push(n.clone());
                }
            });
        }
        for n in found {
            self.err(rule, b.loc, format!("{what} `{}` performs internal event `{n}`", b.name));
        }
    }

    fn interfaces_included(
        &mut self,
        items: &[NamedBehavior],
        body: &ProcessExpr,
        env: &Env,
        loc: Loc,
        rule: &str,
        what: &str,
    ) {
        let Ok(own) = alphabet(body, env) else { return };
        let visible: BTreeSet<&String> = own.observed.union(&own.initialized).collect();
        for b in items {
            let Ok(a) = alphabet(&b.behavior, &Env::for_behavior(b)) else { continue };
            for e in &a.all {
                let q = format!("{}.{e}", b.name);
                if !visible.contains(&q) {
                    self.err(rule, loc, format!("event `{q}` of `{}` does not occur in the {what}", b.name));
                }
            }
        }
    }

    fn unique_initializer(&mut self) {
        for t in &self.unit.connector_types {
            let mut owners: BTreeMap<String, Vec<String>> = BTreeMap::new();
            for r in &t.roles {
                if let Ok(a) = alphabet(&r.behavior, &Env::for_behavior(r)) {
                    for e in a.initialized {
                        owners.entry(format!("{}.{e}", r.name)).or_default().push(format!("role {}", r.name));
                    }
                }
            }
            if let Ok(a) = alphabet(&t.glue, &Env::for_glue(t)) {
                let mut signalled = BTreeSet::new();
                let collect = |p: &ProcessExpr, s: &mut BTreeSet<String>| {
                    p.for_each_event(&mut |e| {
                        if let EventExpr::Signalled { name, .. } = e {
                            s.insert(name.clone());
                        }
                    })
                };
                collect(&t.glue, &mut signalled);
                for d in &t.local_defs {
                    collect(&d.body, &mut signalled);
                }
                for e in a.initialized.intersection(&signalled) {
                    owners.entry(e.clone()).or_default().push("glue".into());
                }
            }
            for (e, who) in owners {
                if who.len() > 1 {
                    self.err(
                        "W-P4",
                        t.loc,
                        format!("event `{e}` of `{}` is initialised by {}", t.name, who.join(" and ")),
                    );
                }
            }
        }
    }

    fn constraints(&mut self) {
        for (text, loc) in &self.unit.constraints {
            self.err("W-UNSUPPORTED", *loc, format!("constraint `{text}` is not supported"));
        }
    }
}

/// Events a process may perform first, following refs through `env`.
fn initial_events(p: &ProcessExpr, env: &Env) -> Vec<EventExpr> {
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    let mut work = vec![p.clone()];
    while let Some(p) = work.pop() {
        match p {
            ProcessExpr::Prefix(e, _) => out.push(e),
            ProcessExpr::Success => out.push(EventExpr::Tick),
            ProcessExpr::External(bs) | ProcessExpr::Internal(bs) => work.extend(bs),
            ProcessExpr::Ref(n) => {
                if seen.insert(n.clone()) {
                    if let Some(b) = env.lookup(&n) {
                        work.push(b.clone());
                    }
                }
            }
            ProcessExpr::Stop => {}
        }
    }
    out
}

/// Every behaviour body with its location, including `where` bodies.
fn all_bodies(u: &Configuration) -> Vec<(&ProcessExpr, Loc)> {
    let mut out = Vec::new();
    for t in &u.component_types {
        out.push((&t.computation, t.loc));
        out.extend(t.local_defs.iter().map(|d| (&d.body, d.loc)));
        for p in &t.ports {
            out.push((&p.behavior, p.loc));
            out.extend(p.local_defs.iter().map(|d| (&d.body, d.loc)));
        }
    }
    for t in &u.connector_types {
        out.push((&t.glue, t.loc));
        out.extend(t.local_defs.iter().map(|d| (&d.body, d.loc)));
        for r in &t.roles {
            out.push((&r.behavior, r.loc));
            out.extend(r.local_defs.iter().map(|d| (&d.body, d.loc)));
        }
    }
    out
}
