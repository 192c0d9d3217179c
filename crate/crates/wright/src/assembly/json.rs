use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use super::model::*;

#[derive(Clone, Debug, PartialEq, Eq, Error, Serialize)]
#[error("{path}: {reason}")]
pub struct FormatError {
    pub path: String,
    pub reason: String,
}

fn fail<T>(path: impl Into<String>, reason: impl Into<String>) -> Result<T, FormatError> {
    Err(FormatError { path: path.into(), reason: reason.into() })
}

fn unique<'a>(names: impl Iterator<Item = &'a str>, path: &dyn Fn(usize) -> String) -> Result<(), FormatError> {
    let mut seen = BTreeSet::new();
    for (i, n) in names.enumerate() {
        if !seen.insert(n) {
            return fail(path(i), format!("duplicate name `{n}`"));
        }
    }
    Ok(())
}

/// Parses an assembly document and checks that names are unique and that
/// every attachment refers to declared elements.
pub fn parse_assembly(text: &str) -> Result<Assembly, FormatError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let a: Assembly = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        FormatError { path: if path == "." { "$".into() } else { path }, reason: e.into_inner().to_string() }
    })?;
    unique(a.components.iter().map(|c| c.name.as_str()), &|i| format!("components[{i}].name"))?;
    unique(a.connectors.iter().map(|c| c.name.as_str()), &|i| format!("connectors[{i}].name"))?;
    for (i, c) in a.components.iter().enumerate() {
        unique(c.ports.iter().map(|p| p.name.as_str()), &|j| format!("components[{i}].ports[{j}].name"))?;
    }
    for (i, c) in a.connectors.iter().enumerate() {
        unique(c.roles.iter().map(|r| r.name.as_str()), &|j| format!("connectors[{i}].roles[{j}].name"))?;
    }
    if !a.types.is_empty() {
        let known = |t: &str| a.types.iter().any(|k| k == t);
        for (i, c) in a.components.iter().enumerate() {
            for (j, p) in c.ports.iter().enumerate() {
                let at = format!("components[{i}].ports[{j}]");
                if let Some(t) = p.protocol.as_deref().filter(|t| !known(t)) {
                    return fail(format!("{at}.protocol"), format!("undeclared type `{t}`"));
                }
                for (k, s) in p.operations.iter().enumerate() {
                    if !known(&s.result) {
                        return fail(format!("{at}.operations[{k}].result"), format!("undeclared type `{}`", s.result));
                    }
                    if let Some((m, x)) = s.params.iter().enumerate().find(|(_, x)| !known(&x.ty)) {
                        return fail(
                            format!("{at}.operations[{k}].params[{m}].type"),
                            format!("undeclared type `{}`", x.ty),
                        );
                    }
                }
            }
        }
    }
    for (i, at) in a.attachments.iter().enumerate() {
        let p = |f: &str| format!("attachments[{i}].{f}");
        let Some(comp) = a.component(&at.component) else {
            return fail(p("component"), format!("unknown component `{}`", at.component));
        };
        if !comp.ports.iter().any(|x| x.name == at.port) {
            return fail(p("port"), format!("component `{}` has no port `{}`", at.component, at.port));
        }
        let Some(conn) = a.connector(&at.connector) else {
            return fail(p("connector"), format!("unknown connector `{}`", at.connector));
        };
        if !conn.roles.iter().any(|r| r.name == at.role) {
            return fail(p("role"), format!("connector `{}` has no role `{}`", at.connector, at.role));
        }
    }
    Ok(a)
}
