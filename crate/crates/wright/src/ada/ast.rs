use serde::Serialize;

/// A generated Ada program: one parameterless procedure whose declarative
/// part holds the tasks and stubs, and whose body is `null;`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdaUnit {
    pub procedure_name: String,
    pub declarations: Vec<AdaDecl>,
    pub body: Vec<AdaStmt>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum AdaDecl {
    Function { name: String, return_type: String, body: Vec<AdaStmt> },
    Procedure { name: String, body: Vec<AdaStmt> },
    TaskSpec { name: String, entries: Vec<String> },
    TaskBody { name: String, body: Vec<AdaStmt> },
}

impl AdaDecl {
    pub fn name(&self) -> &str {
        match self {
            AdaDecl::Function { name, .. }
            | AdaDecl::Procedure { name, .. }
            | AdaDecl::TaskSpec { name, .. }
            | AdaDecl::TaskBody { name, .. } => name,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum AdaStmt {
    Null,
    Exit,
    Return(String),
    Loop(Vec<AdaStmt>),
    IfElse {
        condition: String,
        then_branch: Vec<AdaStmt>,
        else_branch: Vec<AdaStmt>,
    },
    /// Alternatives as `(choice, statements)`; `others` is listed explicitly.
    Case {
        expr: String,
        alternatives: Vec<(String, Vec<AdaStmt>)>,
    },
    /// Accept alternatives as `(entry, statements after the accept)`.
    Select {
        alternatives: Vec<(String, Vec<AdaStmt>)>,
        terminate: bool,
    },
    Accept(String),
    EntryCall(String),
    ProcedureCall(String),
}

impl AdaStmt {
    /// Pre-order walk over this statement and every nested one.
    pub fn walk<'a>(&'a self, f: &mut impl FnMut(&'a AdaStmt)) {
        f(self);
        match self {
            AdaStmt::Loop(b) => b.iter().for_each(|s| s.walk(f)),
            AdaStmt::IfElse { then_branch, else_branch, .. } => {
                then_branch.iter().chain(else_branch).for_each(|s| s.walk(f))
            }
            AdaStmt::Case { alternatives, .. } | AdaStmt::Select { alternatives, .. } => {
                alternatives.iter().flat_map(|(_, b)| b).for_each(|s| s.walk(f))
            }
            _ => {}
        }
    }
}

pub fn walk_all<'a>(stmts: &'a [AdaStmt], f: &mut impl FnMut(&'a AdaStmt)) {
    for s in stmts {
        s.walk(f);
    }
}

impl AdaUnit {
    pub fn task_specs(&self) -> impl Iterator<Item = (&str, &[String])> {
        self.declarations.iter().filter_map(|d| match d {
            AdaDecl::TaskSpec { name, entries } => Some((name.as_str(), entries.as_slice())),
            _ => None,
        })
    }

    pub fn task_bodies(&self) -> impl Iterator<Item = (&str, &[AdaStmt])> {
        self.declarations.iter().filter_map(|d| match d {
            AdaDecl::TaskBody { name, body } => Some((name.as_str(), body.as_slice())),
            _ => None,
        })
    }
}
