//! Shared domain types for Wright units and CSP-Wright behaviour.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

/// Position of a construct in the source text (1-based).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct SourceSpan {
    pub line: u32,
    pub column: u32,
    pub length: u32,
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

/// A span that never takes part in equality, so two units parsed from
/// differently laid out text still compare equal.
#[derive(Clone, Copy, Debug, Default)]
pub struct Loc(pub SourceSpan);

impl PartialEq for Loc {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}
impl Eq for Loc {}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum DataDir {
    In,
    Out,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct DataTag {
    pub dir: DataDir,
    pub name: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EventExpr {
    Observed { name: String, data: Vec<DataTag> },
    Signalled { name: String, data: Vec<DataTag> },
    Internal(String),
    Tick,
}

impl EventExpr {
    pub fn observed(name: &str) -> Self {
        EventExpr::Observed { name: name.to_string(), data: Vec::new() }
    }

    pub fn signalled(name: &str) -> Self {
        EventExpr::Signalled { name: name.to_string(), data: Vec::new() }
    }

    pub fn internal(name: &str) -> Self {
        EventExpr::Internal(name.to_string())
    }

    /// Semantic name (data tags stripped); `None` for the success event.
    pub fn name(&self) -> Option<&str> {
        match self {
            EventExpr::Observed { name, .. } | EventExpr::Signalled { name, .. } => Some(name),
            EventExpr::Internal(name) => Some(name),
            EventExpr::Tick => None,
        }
    }

    pub fn without_data(&self) -> EventExpr {
        match self {
            EventExpr::Observed { name, .. } => EventExpr::observed(name),
            EventExpr::Signalled { name, .. } => EventExpr::signalled(name),
            other => other.clone(),
        }
    }

    pub fn is_observed(&self) -> bool {
        matches!(self, EventExpr::Observed { .. })
    }

    pub fn with_name(&self, new_name: String) -> EventExpr {
        match self {
            EventExpr::Observed { data, .. } => EventExpr::Observed { name: new_name, data: data.clone() },
            EventExpr::Signalled { data, .. } => EventExpr::Signalled { name: new_name, data: data.clone() },
            EventExpr::Internal(_) => EventExpr::Internal(new_name),
            EventExpr::Tick => EventExpr::Tick,
        }
    }
}

/// Normalised CSP-Wright process.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ProcessExpr {
    Prefix(EventExpr, Box<ProcessExpr>),
    External(Vec<ProcessExpr>),
    Internal(Vec<ProcessExpr>),
    Ref(String),
    Success,
    Stop,
}

impl ProcessExpr {
    pub fn prefix(event: EventExpr, target: ProcessExpr) -> Self {
        ProcessExpr::Prefix(event, Box::new(target))
    }

    pub fn name(name: &str) -> Self {
        ProcessExpr::Ref(name.to_string())
    }

    /// Visits every event occurrence in syntactic order (refs not followed).
    pub fn for_each_event<'a>(&'a self, f: &mut impl FnMut(&'a EventExpr)) {
        match self {
            ProcessExpr::Prefix(e, p) => {
                f(e);
                p.for_each_event(f);
            }
            ProcessExpr::External(bs) | ProcessExpr::Internal(bs) => {
                for b in bs {
                    b.for_each_event(f);
                }
            }
            _ => {}
        }
    }

    /// Refs mentioned syntactically, in order of occurrence.
    pub fn for_each_ref<'a>(&'a self, f: &mut impl FnMut(&'a str)) {
        match self {
            ProcessExpr::Prefix(_, p) => p.for_each_ref(f),
            ProcessExpr::External(bs) | ProcessExpr::Internal(bs) => {
                for b in bs {
                    b.for_each_ref(f);
                }
            }
            ProcessExpr::Ref(n) => f(n),
            _ => {}
        }
    }

    /// Applies `f` to every event, keeping the tree shape.
    pub fn map_events(&self, f: &impl Fn(&EventExpr) -> EventExpr) -> ProcessExpr {
        match self {
            ProcessExpr::Prefix(e, p) => ProcessExpr::prefix(f(e), p.map_events(f)),
            ProcessExpr::External(bs) => ProcessExpr::External(bs.iter().map(|b| b.map_events(f)).collect()),
            ProcessExpr::Internal(bs) => ProcessExpr::Internal(bs.iter().map(|b| b.map_events(f)).collect()),
            other => other.clone(),
        }
    }

    pub fn map_refs(&self, f: &impl Fn(&str) -> String) -> ProcessExpr {
        match self {
            ProcessExpr::Prefix(e, p) => ProcessExpr::prefix(e.clone(), p.map_refs(f)),
            ProcessExpr::External(bs) => ProcessExpr::External(bs.iter().map(|b| b.map_refs(f)).collect()),
            ProcessExpr::Internal(bs) => ProcessExpr::Internal(bs.iter().map(|b| b.map_refs(f)).collect()),
            ProcessExpr::Ref(n) => ProcessExpr::Ref(f(n)),
            other => other.clone(),
        }
    }

    pub fn strip_data(&self) -> ProcessExpr {
        self.map_events(&|e| e.without_data())
    }
}

/// A `Name = Process` definition from a `where` block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalDef {
    pub name: String,
    pub body: ProcessExpr,
    pub loc: Loc,
}

/// A port or role: a named behaviour with its own local definitions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedBehavior {
    pub name: String,
    pub behavior: ProcessExpr,
    pub local_defs: Vec<LocalDef>,
    pub loc: Loc,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentType {
    pub name: String,
    pub ports: Vec<NamedBehavior>,
    pub computation: ProcessExpr,
    pub local_defs: Vec<LocalDef>,
    pub loc: Loc,
}

impl ComponentType {
    pub fn port(&self, name: &str) -> Option<&NamedBehavior> {
        self.ports.iter().find(|p| p.name == name)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectorType {
    pub name: String,
    pub roles: Vec<NamedBehavior>,
    pub glue: ProcessExpr,
    pub local_defs: Vec<LocalDef>,
    pub loc: Loc,
}

impl ConnectorType {
    pub fn role(&self, name: &str) -> Option<&NamedBehavior> {
        self.roles.iter().find(|r| r.name == name)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum InstanceKind {
    Component,
    Connector,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub name: String,
    pub type_name: String,
    pub kind: InstanceKind,
    /// Kind keyword as written, if any.
    pub declared_kind: Option<InstanceKind>,
    pub loc: Loc,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Attachment {
    pub component_instance: String,
    pub port: String,
    pub connector_instance: String,
    pub role: String,
    pub loc: Loc,
}

/// A parsed Wright unit: either a `Configuration` or a `Style`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Configuration {
    pub name: String,
    pub is_style: bool,
    pub component_types: Vec<ComponentType>,
    pub connector_types: Vec<ConnectorType>,
    pub component_instances: Vec<Instance>,
    pub connector_instances: Vec<Instance>,
    pub attachments: Vec<Attachment>,
    /// Raw text of non-comment `Constraints` content (unsupported).
    pub constraints: Vec<(String, Loc)>,
    pub loc: Loc,
}

impl Configuration {
    pub fn component_type(&self, name: &str) -> Option<&ComponentType> {
        self.component_types.iter().find(|t| t.name == name)
    }

    pub fn connector_type(&self, name: &str) -> Option<&ConnectorType> {
        self.connector_types.iter().find(|t| t.name == name)
    }

    pub fn component_instance(&self, name: &str) -> Option<&Instance> {
        self.component_instances.iter().find(|i| i.name == name)
    }

    pub fn connector_instance(&self, name: &str) -> Option<&Instance> {
        self.connector_instances.iter().find(|i| i.name == name)
    }

    pub fn instances(&self) -> impl Iterator<Item = &Instance> {
        self.component_instances.iter().chain(self.connector_instances.iter())
    }
}

/// Choice operator in a raw chain.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChoiceOp {
    External,
    Internal,
}

/// Process parse tree before normalisation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RawProcess {
    Prefix(EventExpr, Box<RawProcess>),
    Chain(Box<RawProcess>, Vec<(ChoiceOp, RawProcess)>),
    Paren(Box<RawProcess>),
    Name(String),
    /// `§`, `SKIP` or `TICK`.
    Skip,
    Stop,
}

impl From<&ProcessExpr> for RawProcess {
    fn from(p: &ProcessExpr) -> Self {
        let chain = |op: ChoiceOp, bs: &[ProcessExpr]| {
            let mut it = bs.iter().map(|b| RawProcess::Paren(Box::new(RawProcess::from(b))));
            match it.next() {
                None => RawProcess::Stop,
                Some(first) => RawProcess::Chain(Box::new(first), it.map(|b| (op, b)).collect()),
            }
        };
        match p {
            ProcessExpr::Prefix(e, t) => RawProcess::Prefix(e.clone(), Box::new(RawProcess::from(&**t))),
            ProcessExpr::External(bs) => chain(ChoiceOp::External, bs),
            ProcessExpr::Internal(bs) => chain(ChoiceOp::Internal, bs),
            ProcessExpr::Ref(n) => RawProcess::Name(n.clone()),
            ProcessExpr::Success => RawProcess::Skip,
            ProcessExpr::Stop => RawProcess::Stop,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("`[]` and `|~|` mixed in one choice chain without parentheses")]
    MixedChoice,
    #[error("the success event can only be followed by STOP")]
    TickNotFollowedByStop,
}

/// Normalises a raw process tree: parentheses removed, success spellings
/// unified, same-kind choices flattened.
pub fn normalize_process(raw: &RawProcess) -> Result<ProcessExpr, ModelError> {
    match raw {
        RawProcess::Prefix(EventExpr::Tick, target) => match strip_parens(target) {
            RawProcess::Stop => Ok(ProcessExpr::Success),
            _ => Err(ModelError::TickNotFollowedByStop),
        },
        RawProcess::Prefix(e, target) => Ok(ProcessExpr::prefix(e.clone(), normalize_process(target)?)),
        RawProcess::Paren(inner) => normalize_process(inner),
        RawProcess::Name(n) => Ok(ProcessExpr::Ref(n.clone())),
        RawProcess::Skip => Ok(ProcessExpr::Success),
        RawProcess::Stop => Ok(ProcessExpr::Stop),
        RawProcess::Chain(first, rest) => {
            if rest.is_empty() {
                return normalize_process(first);
            }
            let op = rest[0].0;
            if rest.iter().any(|(o, _)| *o != op) {
                return Err(ModelError::MixedChoice);
            }
            let mut branches = Vec::new();
            for operand in std::iter::once(&**first).chain(rest.iter().map(|(_, p)| p)) {
                match (op, normalize_process(operand)?) {
                    (ChoiceOp::External, ProcessExpr::External(bs)) => branches.extend(bs),
                    (ChoiceOp::Internal, ProcessExpr::Internal(bs)) => branches.extend(bs),
                    (_, p) => branches.push(p),
                }
            }
            Ok(match op {
                ChoiceOp::External => ProcessExpr::External(branches),
                ChoiceOp::Internal => ProcessExpr::Internal(branches),
            })
        }
    }
}

fn strip_parens(raw: &RawProcess) -> &RawProcess {
    match raw {
        RawProcess::Paren(inner) => strip_parens(inner),
        RawProcess::Chain(first, rest) if rest.is_empty() => strip_parens(first),
        other => other,
    }
}

/// Re-normalises an already normal process (flattens nested same-kind
/// choices that may arise from substitution).
pub fn renormalize(p: &ProcessExpr) -> ProcessExpr {
    normalize_process(&RawProcess::from(p)).expect("normal forms never mix choice kinds in one chain")
}
