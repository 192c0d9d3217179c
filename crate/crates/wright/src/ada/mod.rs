//! Translation of configurations into concurrent Ada programs.
//!
//! Each component and connector instance becomes a task. Observed events
//! become entries and accepts, signalled events become entry calls on the
//! task across the attachment, internal events become stub procedures and
//! internal choices are resolved by stub condition functions.

mod ast;
mod gen;
mod parse;
mod render;
mod wellformed;

pub use ast::{walk_all, AdaDecl, AdaStmt, AdaUnit};
pub use gen::{ada_name, derive_entries, generate_ada, task_name, translate_event, AdaError};
pub use parse::{ada_tokens, parse_ada, AdaSyntaxError};
pub use render::render_ada;
pub use wellformed::check_ada_wellformed;

/// Generates and renders in one step.
pub fn generate_ada_text(config: &crate::model::Configuration) -> Result<String, AdaError> {
    Ok(render_ada(&generate_ada(config)?))
}

fn canonical_stmts(stmts: &[AdaStmt]) -> Vec<AdaStmt> {
    stmts.iter().map(canonical_stmt).collect()
}

fn canonical_stmt(s: &AdaStmt) -> AdaStmt {
    match s {
        AdaStmt::Loop(b) => AdaStmt::Loop(canonical_stmts(b)),
        AdaStmt::IfElse { condition, then_branch, else_branch } => {
            let mut pair = [canonical_stmts(then_branch), canonical_stmts(else_branch)];
            pair.sort();
            let [then_branch, else_branch] = pair;
            AdaStmt::IfElse { condition: condition.clone(), then_branch, else_branch }
        }
        AdaStmt::Case { expr, alternatives } => {
            let mut numbered: Vec<Vec<AdaStmt>> =
                alternatives.iter().filter(|(c, _)| c != "others").map(|(_, b)| canonical_stmts(b)).collect();
            numbered.sort();
            let mut alts: Vec<(String, Vec<AdaStmt>)> =
                numbered.into_iter().enumerate().map(|(i, b)| ((i + 1).to_string(), b)).collect();
            alts.extend(
                alternatives.iter().filter(|(c, _)| c == "others").map(|(c, b)| (c.clone(), canonical_stmts(b))),
            );
            AdaStmt::Case { expr: expr.clone(), alternatives: alts }
        }
        AdaStmt::Select { alternatives, terminate } => {
            let mut alts: Vec<(String, Vec<AdaStmt>)> =
                alternatives.iter().map(|(e, b)| (e.clone(), canonical_stmts(b))).collect();
            alts.sort();
            AdaStmt::Select { alternatives: alts, terminate: *terminate }
        }
        other => other.clone(),
    }
}

/// Canonical form used to compare programs up to the orderings the
/// generator does not fix semantically: entry lists, internal-choice
/// branches (if/else arms, case alternatives) and select alternatives.
pub fn canonical_form(unit: &AdaUnit) -> AdaUnit {
    let declarations = unit
        .declarations
        .iter()
        .map(|d| match d {
            AdaDecl::TaskSpec { name, entries } => {
                let mut entries = entries.clone();
                entries.sort();
                AdaDecl::TaskSpec { name: name.clone(), entries }
            }
            AdaDecl::TaskBody { name, body } => AdaDecl::TaskBody { name: name.clone(), body: canonical_stmts(body) },
            AdaDecl::Function { name, return_type, body } => {
                AdaDecl::Function { name: name.clone(), return_type: return_type.clone(), body: canonical_stmts(body) }
            }
            AdaDecl::Procedure { name, body } => AdaDecl::Procedure { name: name.clone(), body: canonical_stmts(body) },
        })
        .collect();
    AdaUnit { procedure_name: unit.procedure_name.clone(), declarations, body: canonical_stmts(&unit.body) }
}
