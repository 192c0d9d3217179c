//! Toolchain for the Wright architecture description language.
//!
//! Wright units are parsed with [`parse_wright`], checked with
//! [`check_static`] and verified against the Wright consistency properties
//! with [`verify_configuration`], which runs a built-in failures-divergences
//! refinement checker. Units can also be exported as FDR2 scripts
//! ([`emit_fdr_script`]) or translated into concurrent Ada
//! ([`generate_ada`]). The [`assembly`] module checks component assemblies
//! described in JSON against structural, signature, QoS and Ugatze contracts.

pub mod ada;
pub mod assembly;
pub mod diag;
pub mod export;
pub mod frontend;
pub mod model;
pub mod refine;
pub mod semantics;

pub use ada::{check_ada_wellformed, generate_ada, generate_ada_text, parse_ada, render_ada, AdaError, AdaUnit};
pub use assembly::{check_qos, check_ugatze, check_uml, parse_assembly, Assembly, FormatError, WrongDialect};
pub use diag::{has_errors, Diagnostic, Location, Severity};
pub use export::{emit_fdr_script, script_assertions};
pub use frontend::{check_static, parse_process, parse_wright, SyntaxError};
pub use model::*;
pub use refine::*;
pub use semantics::{
    alphabet, augment, build_lts, determinize, hide, interleave, parallel, project, qualify_configuration,
    AlphabetInfo, Env, Label, Lts, SemError, Sync, DEFAULT_MAX_STATES,
};
