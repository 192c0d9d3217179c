use std::collections::BTreeSet;

use super::model::*;
use super::{require_dialect, WrongDialect};
use crate::diag::Diagnostic;

const PROVIDED: &str = "Provided";
const REQUIRED: &str = "Required";

fn sig_names(s: &BTreeSet<&Signature>) -> String {
    s.iter().map(|s| s.name.as_str()).collect::<Vec<_>>().join(", ")
}

/// Structural and signature contracts for UML component assemblies.
pub fn check_uml(a: &Assembly) -> Result<Vec<Diagnostic>, WrongDialect> {
    require_dialect(a, Dialect::Uml)?;
    let mut out = Vec::new();
    let d = |rule: &str, path: String, msg: String| Diagnostic::on(&format!("UML-{rule}"), path, msg);

    for c in &a.components {
        let path = format!("{}.{}", a.name, c.name);
        if c.ports.is_empty() {
            out.push(d("aumoinsInterface", path.clone(), format!("component `{}` has no interface", c.name)));
        }
        if c.ports.len() == 1 && c.ports[0].kind != PROVIDED {
            out.push(d(
                "uneseuleInterfaceOfferte",
                path.clone(),
                format!("the only interface of `{}` is not provided", c.name),
            ));
        }
        for p in &c.ports {
            if p.kind != PROVIDED && p.kind != REQUIRED {
                out.push(d(
                    "interfaceRequiseOfferte",
                    format!("{path}.{}", p.name),
                    format!("interface kind `{}` is neither {PROVIDED} nor {REQUIRED}", p.kind),
                ));
            }
        }
        if c.kind.as_deref().is_some_and(|k| k != "ComposantUML") {
            out.push(d("composants_admis", path, format!("component `{}` is not a ComposantUML", c.name)));
        }
    }

    for con in &a.connectors {
        let path = format!("{}.{}", a.name, con.name);
        if con.kind != "AssemblageUML" {
            out.push(d("connecteurs_admis", path.clone(), format!("connector `{}` is not an AssemblageUML", con.name)));
        }
        if con.roles.len() != 2 {
            out.push(d("binaire", path.clone(), format!("connector `{}` has {} roles", con.name, con.roles.len())));
        }
        for r in &con.roles {
            let attached = a.attached_ports(&con.name, &r.name);
            let rpath = format!("{path}.{}", r.name);
            let (count_rule, kind_rule, kind) = match r.end.as_str() {
                "server" => ("un_port_offert", "interface_offerte", PROVIDED),
                "client" => ("un_port_requis", "interface_requise", REQUIRED),
                _ => continue,
            };
            if attached.len() != 1 {
                out.push(d(count_rule, rpath.clone(), format!("role is attached to {} ports", attached.len())));
            }
            if attached.iter().any(|(_, p)| p.kind != kind) {
                out.push(d(kind_rule, rpath, format!("role must be attached to a {kind} interface")));
            }
        }
        let comps: Vec<&str> =
            a.attachments.iter().filter(|t| t.connector == con.name).map(|t| t.component.as_str()).collect();
        let distinct: BTreeSet<&str> = comps.iter().copied().collect();
        if distinct.len() < comps.len() {
            out.push(d("appellant_appele", path.clone(), format!("`{}` links a component to itself", con.name)));
        }

        let ends = |end: &str, kind: &str| -> BTreeSet<&Signature> {
            con.roles
                .iter()
                .filter(|r| r.end == end)
                .flat_map(|r| a.attached_ports(&con.name, &r.name))
                .filter(|(_, p)| p.kind == kind)
                .flat_map(|(_, p)| &p.operations)
                .collect()
        };
        let required = ends("client", REQUIRED);
        let provided = ends("server", PROVIDED);
        let missing: BTreeSet<&Signature> = required.difference(&provided).copied().collect();
        if !missing.is_empty() {
            out.push(d(
                "service_offert_requis",
                path,
                format!("required services not offered: {}", sig_names(&missing)),
            ));
        }
    }

    for c in &a.components {
        for p in c.ports.iter().filter(|p| p.kind == REQUIRED) {
            if a.attached_roles(&c.name, &p.name).is_empty() {
                out.push(d(
                    "interface_requise_satisfaite",
                    format!("{}.{}.{}", a.name, c.name, p.name),
                    format!("required interface `{}.{}` is not attached", c.name, p.name),
                ));
            }
        }
    }

    for t in &a.attachments {
        let (Some(port), Some(role)) = (
            a.port(&t.component, &t.port),
            a.connector(&t.connector).and_then(|c| c.roles.iter().find(|r| r.name == t.role)),
        ) else {
            continue;
        };
        let Some(role_ops) = &role.operations else { continue };
        let path = format!("{}.{}.{}-{}.{}", a.name, t.component, t.port, t.connector, t.role);
        if role_ops.len() != port.operations.len() {
            out.push(d(
                "Rc1",
                path.clone(),
                format!("role has {} operations, port has {}", role_ops.len(), port.operations.len()),
            ));
        }
        let r: BTreeSet<&Signature> = role_ops.iter().collect();
        let p: BTreeSet<&Signature> = port.operations.iter().collect();
        if r != p {
            let diff: BTreeSet<&Signature> = r.symmetric_difference(&p).copied().collect();
            out.push(d("Rc2", path, format!("signatures differ on: {}", sig_names(&diff))));
        }
    }
    Ok(out)
}
