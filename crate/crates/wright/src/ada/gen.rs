use serde::Serialize;
use thiserror::Error;

use super::ast::*;
use crate::model::*;

#[derive(Clone, Debug, PartialEq, Eq, Error, Serialize)]
pub enum AdaError {
    #[error("`{0}` is a style; only configurations can be translated")]
    StyleNotTranslatable(String),
    #[error("`{instance}` signals on `{interface}`, which is not attached")]
    UnattachedInterface { instance: String, interface: String },
    #[error("`{instance}`: recursion through `{name}` cannot be expressed as the task loop")]
    UnsupportedRecursion { instance: String, name: String },
    #[error("`{instance}`: every external choice branch must start with an observed event or be success")]
    UnsupportedChoice { instance: String },
    #[error("`{instance}` has no type `{type_name}`")]
    UnknownType { instance: String, type_name: String },
    #[error("task `{task}`: events `{first}` and `{second}` both map to entry `{entry}`")]
    EntryCollision { task: String, first: String, second: String, entry: String },
}

pub fn ada_name(s: &str) -> String {
    s.replace('.', "_")
}

/// The behaviour an instance runs, with its local definitions and the
/// keyword naming its own recursion.
struct Body<'a> {
    process: &'a ProcessExpr,
    locals: &'a [LocalDef],
    keyword: &'static str,
}

fn body_of<'a>(inst: &Instance, config: &'a Configuration) -> Result<Body<'a>, AdaError> {
    let unknown = || AdaError::UnknownType { instance: inst.name.clone(), type_name: inst.type_name.clone() };
    match inst.kind {
        InstanceKind::Component => {
            let t = config.component_type(&inst.type_name).ok_or_else(unknown)?;
            Ok(Body { process: &t.computation, locals: &t.local_defs, keyword: "computation" })
        }
        InstanceKind::Connector => {
            let t = config.connector_type(&inst.type_name).ok_or_else(unknown)?;
            Ok(Body { process: &t.glue, locals: &t.local_defs, keyword: "glue" })
        }
    }
}

fn observed_names(b: &Body) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    let mut visit = |p: &ProcessExpr| {
        p.for_each_event(&mut |e| {
            if let (true, Some(n)) = (e.is_observed(), e.name()) {
                if !out.iter().any(|o| o == n) {
                    out.push(n.to_string());
                }
            }
        })
    };
    visit(b.process);
    for d in b.locals {
        visit(&d.body);
    }
    out
}

/// Entry names of an instance's task: its observed events with dots
/// flattened, in order of first occurrence.
pub fn derive_entries(inst: &Instance, config: &Configuration) -> Vec<String> {
    let Ok(b) = body_of(inst, config) else { return Vec::new() };
    let mut out: Vec<String> = Vec::new();
    for n in observed_names(&b) {
        let e = ada_name(&n);
        if !out.contains(&e) {
            out.push(e);
        }
    }
    out
}

fn entry_collision(inst: &Instance, config: &Configuration) -> Result<(), AdaError> {
    let Ok(b) = body_of(inst, config) else { return Ok(()) };
    let names = observed_names(&b);
    for (i, a) in names.iter().enumerate() {
        if let Some(c) = names[..i].iter().find(|c| ada_name(c) == ada_name(a)) {
            return Err(AdaError::EntryCollision {
                task: task_name(inst),
                first: c.clone(),
                second: a.clone(),
                entry: ada_name(a),
            });
        }
    }
    Ok(())
}

pub fn task_name(inst: &Instance) -> String {
    match inst.kind {
        InstanceKind::Component => format!("Component_{}", inst.name),
        InstanceKind::Connector => format!("Connector_{}", inst.name),
    }
}

/// One event as an Ada statement: observed events are accepts, signalled
/// events call the entry of the task on the other side of the attachment,
/// internal events call their stub procedure.
pub fn translate_event(e: &EventExpr, inst: &Instance, config: &Configuration) -> Result<AdaStmt, AdaError> {
    match e {
        EventExpr::Tick => Ok(AdaStmt::Exit),
        EventExpr::Internal(t) => Ok(AdaStmt::ProcedureCall(ada_name(t))),
        EventExpr::Observed { name, .. } => Ok(AdaStmt::Accept(ada_name(name))),
        EventExpr::Signalled { name, .. } => {
            let unattached =
                |x: &str| AdaError::UnattachedInterface { instance: inst.name.clone(), interface: x.to_string() };
            let (x, ev) = name.split_once('.').ok_or_else(|| unattached(name))?;
            let ev = ada_name(ev);
            let a = config.attachments.iter();
            match inst.kind {
                InstanceKind::Component => a
                    .clone()
                    .find(|a| a.component_instance == inst.name && a.port == x)
                    .map(|a| AdaStmt::EntryCall(format!("Connector_{}.{}_{ev}", a.connector_instance, a.role))),
                InstanceKind::Connector => a
                    .clone()
                    .find(|a| a.connector_instance == inst.name && a.role == x)
                    .map(|a| AdaStmt::EntryCall(format!("Component_{}.{}_{ev}", a.component_instance, a.port))),
            }
            .ok_or_else(|| unattached(x))
        }
    }
}

struct Translator<'a> {
    inst: &'a Instance,
    config: &'a Configuration,
    body: Body<'a>,
    expanding: Vec<String>,
}

fn is_success(p: &ProcessExpr) -> bool {
    matches!(p, ProcessExpr::Success | ProcessExpr::Prefix(EventExpr::Tick, _))
}

fn or_null(v: Vec<AdaStmt>) -> Vec<AdaStmt> {
    if v.is_empty() {
        vec![AdaStmt::Null]
    } else {
        v
    }
}

impl Translator<'_> {
    fn recursion(&self, name: &str) -> AdaError {
        AdaError::UnsupportedRecursion { instance: self.inst.name.clone(), name: name.to_string() }
    }

    fn stmts(&mut self, p: &ProcessExpr) -> Result<Vec<AdaStmt>, AdaError> {
        match p {
            _ if is_success(p) => Ok(vec![AdaStmt::Exit]),
            ProcessExpr::Stop => Ok(vec![]),
            ProcessExpr::Prefix(e, rest) => {
                let mut out = vec![translate_event(e, self.inst, self.config)?];
                out.extend(self.stmts(rest)?);
                Ok(out)
            }
            ProcessExpr::Ref(n) if n.eq_ignore_ascii_case(self.body.keyword) => Ok(vec![]),
            ProcessExpr::Ref(n) => {
                let def = self.body.locals.iter().find(|d| &d.name == n).ok_or_else(|| self.recursion(n))?;
                if self.expanding.contains(n) {
                    return Err(self.recursion(n));
                }
                self.expanding.push(n.clone());
                let out = self.stmts(&def.body);
                self.expanding.pop();
                out
            }
            ProcessExpr::Internal(bs) => match bs.len() {
                0 => Ok(vec![]),
                1 => self.stmts(&bs[0]),
                2 => Ok(vec![AdaStmt::IfElse {
                    condition: "condition_interne".into(),
                    then_branch: or_null(self.stmts(&bs[0])?),
                    else_branch: or_null(self.stmts(&bs[1])?),
                }]),
                _ => {
                    let mut alternatives = Vec::new();
                    for (i, b) in bs.iter().enumerate() {
                        alternatives.push(((i + 1).to_string(), or_null(self.stmts(b)?)));
                    }
                    alternatives.push(("others".into(), vec![AdaStmt::Null]));
                    Ok(vec![AdaStmt::Case { expr: "condition_interne1".into(), alternatives }])
                }
            },
            ProcessExpr::External(bs) => {
                let mut alternatives = Vec::new();
                let mut terminate = false;
                for b in bs {
                    if is_success(b) {
                        terminate = true;
                        continue;
                    }
                    let mut s = self.stmts(b)?.into_iter();
                    match s.next() {
                        Some(AdaStmt::Accept(e)) => alternatives.push((e, s.collect())),
                        _ => return Err(AdaError::UnsupportedChoice { instance: self.inst.name.clone() }),
                    }
                }
                Ok(vec![AdaStmt::Select { alternatives, terminate }])
            }
            ProcessExpr::Success => unreachable!("handled by is_success"),
        }
    }
}

/// Translates a configuration into an Ada program with one task per
/// component and connector instance.
pub fn generate_ada(config: &Configuration) -> Result<AdaUnit, AdaError> {
    if config.is_style {
        return Err(AdaError::StyleNotTranslatable(config.name.clone()));
    }
    let instances: Vec<&Instance> = config.component_instances.iter().chain(&config.connector_instances).collect();
    let mut specs = Vec::new();
    let mut bodies = Vec::new();
    for inst in &instances {
        entry_collision(inst, config)?;
        let mut t = Translator { inst, config, body: body_of(inst, config)?, expanding: Vec::new() };
        let stmts = or_null(t.stmts(t.body.process)?);
        specs.push(AdaDecl::TaskSpec { name: task_name(inst), entries: derive_entries(inst, config) });
        bodies.push(AdaDecl::TaskBody { name: task_name(inst), body: vec![AdaStmt::Loop(stmts)] });
    }

    let (mut binary, mut nary) = (false, false);
    let mut procedures: Vec<String> = Vec::new();
    for b in &bodies {
        if let AdaDecl::TaskBody { body, .. } = b {
            walk_all(body, &mut |s| match s {
                AdaStmt::IfElse { .. } => binary = true,
                AdaStmt::Case { .. } => nary = true,
                AdaStmt::ProcedureCall(p) if !procedures.contains(p) => procedures.push(p.clone()),
                _ => {}
            });
        }
    }
    let mut declarations = Vec::new();
    if binary {
        declarations.push(AdaDecl::Function {
            name: "condition_interne".into(),
            return_type: "Boolean".into(),
            body: vec![AdaStmt::Return("true".into())],
        });
    }
    if nary {
        declarations.push(AdaDecl::Function {
            name: "condition_interne1".into(),
            return_type: "Integer".into(),
            body: vec![AdaStmt::Return("1".into())],
        });
    }
    declarations.extend(procedures.into_iter().map(|name| AdaDecl::Procedure { name, body: vec![AdaStmt::Null] }));
    declarations.extend(specs);
    declarations.extend(bodies);
    Ok(AdaUnit { procedure_name: config.name.clone(), declarations, body: vec![AdaStmt::Null] })
}
