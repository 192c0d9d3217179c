//! Component assemblies and their contract suites.
//!
//! Assemblies are read from JSON (see `docs/assembly-format.md`). Three
//! suites run over them: structural and signature rules for UML-style
//! assemblies, the Ugatze style rules, and QoS profile matching. Every
//! finding is a [`Diagnostic`](crate::diag::Diagnostic) with a stable rule id.

mod json;
mod model;
mod qos;
mod ugatze;
mod uml;

use thiserror::Error;

pub use json::{parse_assembly, FormatError};
pub use model::*;
pub use qos::check_qos;
pub use ugatze::check_ugatze;
pub use uml::check_uml;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("suite expects a {expected} assembly, got {found}")]
pub struct WrongDialect {
    pub expected: Dialect,
    pub found: Dialect,
}

fn require_dialect(a: &Assembly, expected: Dialect) -> Result<(), WrongDialect> {
    if a.dialect == expected {
        Ok(())
    } else {
        Err(WrongDialect { expected, found: a.dialect })
    }
}
