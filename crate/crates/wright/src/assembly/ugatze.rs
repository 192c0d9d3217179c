use std::collections::BTreeSet;

use super::model::*;
use super::{require_dialect, WrongDialect};
use crate::diag::Diagnostic;

const DATA: [&str; 2] = ["IIP", "OIP"];
const OPERATION: [&str; 2] = ["UIOP", "PIOP"];

/// Style rules of Ugatze assemblies plus the attachment contracts on
/// protocols and operation signatures.
pub fn check_ugatze(a: &Assembly) -> Result<Vec<Diagnostic>, WrongDialect> {
    require_dialect(a, Dialect::Ugatze)?;
    let mut out = Vec::new();
    let d = |rule: &str, path: String, msg: String| Diagnostic::on(&format!("UG-{rule}"), path, msg);

    for c in &a.components {
        let path = format!("{}.{}", a.name, c.name);
        if c.ports.is_empty() {
            out.push(d("haveAtLeastone", path.clone(), format!("`{}` has no interaction point", c.name)));
        }
        let any = |kinds: &[&str]| c.ports.iter().any(|p| kinds.contains(&p.kind.as_str()));
        match c.kind.as_deref() {
            Some("Filter") => {
                if !c.ports.iter().all(|p| DATA.contains(&p.kind.as_str())) {
                    out.push(d("PortType1", path, format!("filter `{}` may only have IIP/OIP points", c.name)));
                }
            }
            Some("ClientServer") => {
                if !any(&OPERATION) {
                    out.push(d("PortType2", path, format!("`{}` needs a UIOP or PIOP point", c.name)));
                }
            }
            Some("FilterClientServer") => {
                if !any(&DATA) {
                    out.push(d("PortType1", path.clone(), format!("`{}` needs an IIP or OIP point", c.name)));
                }
                if !any(&OPERATION) {
                    out.push(d("PortType2", path, format!("`{}` needs a UIOP or PIOP point", c.name)));
                }
            }
            other => out.push(d(
                "componentType",
                path,
                format!("`{}` has kind {:?}, not an Ugatze component type", c.name, other.unwrap_or("none")),
            )),
        }
    }
    if a.components.len() < 2 {
        out.push(d(
            "numberComponent",
            a.name.clone(),
            format!("{} component(s); at least 2 needed", a.components.len()),
        ));
    }

    for con in &a.connectors {
        let path = format!("{}.{}", a.name, con.name);
        let attached = |r: &Role| a.attached_ports(&con.name, &r.name);
        let by_end = |end: &'static str| con.roles.iter().filter(move |r| r.end == end);
        match con.kind.as_str() {
            "Pipe" => {
                if con.roles.len() != 2 {
                    out.push(d("exactlyTwoRoles", path.clone(), format!("pipe has {} roles", con.roles.len())));
                }
                if con.buffer_size.is_some_and(|b| b < 0) {
                    out.push(d("bufferpositive", path.clone(), "buffer size is negative".into()));
                }
                let wrong = by_end("sink").any(|r| attached(r).iter().any(|(_, p)| p.kind != "IIP"))
                    || by_end("source").any(|r| attached(r).iter().any(|(_, p)| p.kind != "OIP"));
                if wrong {
                    out.push(d("precondition1", path.clone(), "pipe sinks take IIP points, sources OIP points".into()));
                }
                for r in by_end("sink").chain(by_end("source")) {
                    if attached(r).len() > 1 {
                        out.push(d(
                            "oneAttachment",
                            format!("{path}.{}", r.name),
                            "role attached more than once".into(),
                        ));
                    }
                }
            }
            "OperationInteraction" => {
                if con.roles.len() != 2 {
                    out.push(d("exactlyTwoRoles", path.clone(), format!("interaction has {} roles", con.roles.len())));
                }
                for (end, kind, rule) in
                    [("server", "PIOP", "attachedPortsArePIOP"), ("client", "UIOP", "attachedPortsAreUIOP")]
                {
                    for r in by_end(end) {
                        let ps = attached(r);
                        if ps.len() > 1 {
                            out.push(d(
                                "oneAttachment",
                                format!("{path}.{}", r.name),
                                "role attached more than once".into(),
                            ));
                        }
                        if ps.iter().any(|(_, p)| p.kind != kind) {
                            out.push(d(rule, format!("{path}.{}", r.name), format!("{end} role needs a {kind} point")));
                        }
                    }
                }
            }
            "DataAccess" => {
                if con.roles.len() < 2 {
                    out.push(d("numberRoles", path.clone(), format!("shared data has {} roles", con.roles.len())));
                }
                let ends: BTreeSet<&str> = con.roles.iter().map(|r| r.end.as_str()).collect();
                if !ends.contains("source") || !ends.contains("sink") {
                    out.push(d("typerole", path.clone(), "shared data needs a source and a sink role".into()));
                }
                for (end, kind, rule) in
                    [("source", "OIP", "attachedPortsAreOIP"), ("sink", "IIP", "attachedPortsAreIIP")]
                {
                    for r in by_end(end) {
                        if attached(r).iter().any(|(_, p)| p.kind != kind) {
                            out.push(d(rule, format!("{path}.{}", r.name), format!("{end} role needs {kind} points")));
                        }
                    }
                }
            }
            other => out.push(d("connectorType", path.clone(), format!("unknown interaction kind `{other}`"))),
        }
        for r in &con.roles {
            if attached(r).is_empty() {
                let rule = if con.kind == "DataAccess" { "atLeastOneAttachment" } else { "noDanglingRoles" };
                out.push(d(rule, format!("{path}.{}", r.name), format!("role `{}` is not attached", r.name)));
            }
        }
        let comps: Vec<&str> =
            a.attachments.iter().filter(|t| t.connector == con.name).map(|t| t.component.as_str()).collect();
        if comps.iter().collect::<BTreeSet<_>>().len() < comps.len() {
            out.push(d("failedAttachement", path.clone(), format!("`{}` attaches a component to itself", con.name)));
        }

        let ports: Vec<&Port> = con.roles.iter().flat_map(attached).map(|(_, p)| p).collect();
        if con.kind == "OperationInteraction" {
            let sigs: BTreeSet<BTreeSet<&Signature>> = ports.iter().map(|p| p.operations.iter().collect()).collect();
            if sigs.len() > 1 {
                out.push(d("signature", path, "attached operation points have different signatures".into()));
            }
        } else {
            let protocols: BTreeSet<Option<&str>> = ports.iter().map(|p| p.protocol.as_deref()).collect();
            if protocols.len() > 1 {
                out.push(d("protocol", path, "attached data points use different protocols".into()));
            }
        }
    }

    for c in &a.components {
        for p in &c.ports {
            if a.attached_roles(&c.name, &p.name).len() > 1 {
                out.push(d(
                    "connectorIndependence",
                    format!("{}.{}.{}", a.name, c.name, p.name),
                    format!("`{}.{}` takes part in several interactions", c.name, p.name),
                ));
            }
        }
    }
    Ok(out)
}
