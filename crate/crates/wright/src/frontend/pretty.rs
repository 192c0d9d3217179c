//! Pretty printer producing Wright text that parses back to the same unit.

use std::fmt::Write;

use crate::model::*;

pub fn event_to_string(e: &EventExpr) -> String {
    let tags = |data: &[DataTag]| {
        data.iter().map(|t| format!("{}{}", if t.dir == DataDir::In { '?' } else { '!' }, t.name)).collect::<String>()
    };
    match e {
        EventExpr::Observed { name, data } => format!("{name}{}", tags(data)),
        EventExpr::Signalled { name, data } => format!("_{name}{}", tags(data)),
        EventExpr::Internal(name) => format!("-{name}"),
        EventExpr::Tick => "V".into(),
    }
}

pub fn process_to_string(p: &ProcessExpr) -> String {
    match p {
        ProcessExpr::Prefix(EventExpr::Tick, _) => "V -> STOP".into(),
        ProcessExpr::Prefix(e, t) => format!("{} -> {}", event_to_string(e), operand(t)),
        ProcessExpr::External(bs) => bs.iter().map(operand).collect::<Vec<_>>().join(" [] "),
        ProcessExpr::Internal(bs) => bs.iter().map(operand).collect::<Vec<_>>().join(" |~| "),
        ProcessExpr::Ref(n) => n.clone(),
        ProcessExpr::Success => "§".into(),
        ProcessExpr::Stop => "STOP".into(),
    }
}

fn operand(p: &ProcessExpr) -> String {
    match p {
        ProcessExpr::External(_) | ProcessExpr::Internal(_) => format!("({})", process_to_string(p)),
        _ => process_to_string(p),
    }
}

fn behavior(out: &mut String, indent: &str, head: &str, body: &ProcessExpr, defs: &[LocalDef]) {
    let _ = writeln!(out, "{indent}{head} = {}", process_to_string(body));
    if !defs.is_empty() {
        let _ = writeln!(out, "{indent}where {{");
        for d in defs {
            let _ = writeln!(out, "{indent}  {} = {}", d.name, process_to_string(&d.body));
        }
        let _ = writeln!(out, "{indent}}}");
    }
}

pub fn unit_to_string(unit: &Configuration) -> String {
    let mut out = String::new();
    let kw = if unit.is_style { "Style" } else { "Configuration" };
    let _ = writeln!(out, "{kw} {}", unit.name);
    for c in &unit.component_types {
        let _ = writeln!(out, "Component {}", c.name);
        for p in &c.ports {
            behavior(&mut out, "  ", &format!("Port {}", p.name), &p.behavior, &p.local_defs);
        }
        behavior(&mut out, "  ", "Computation", &c.computation, &c.local_defs);
    }
    for c in &unit.connector_types {
        let _ = writeln!(out, "Connector {}", c.name);
        for r in &c.roles {
            behavior(&mut out, "  ", &format!("Role {}", r.name), &r.behavior, &r.local_defs);
        }
        behavior(&mut out, "  ", "Glue", &c.glue, &c.local_defs);
    }
    if !unit.is_style {
        let _ = writeln!(out, "Instances");
        for i in unit.instances() {
            let kind = match i.declared_kind {
                Some(InstanceKind::Component) => "Component ",
                Some(InstanceKind::Connector) => "Connector ",
                None => "",
            };
            let _ = writeln!(out, "  {} : {kind}{}", i.name, i.type_name);
        }
        let _ = writeln!(out, "Attachments");
        for a in &unit.attachments {
            let _ = writeln!(out, "  {}.{} As {}.{}", a.component_instance, a.port, a.connector_instance, a.role);
        }
    }
    if !unit.constraints.is_empty() {
        let _ = writeln!(out, "Constraints");
        let text: Vec<&str> = unit.constraints.iter().map(|(t, _)| t.as_str()).collect();
        let _ = writeln!(out, "  {}", text.join(" "));
    }
    let _ = writeln!(out, "End {kw}");
    out
}
