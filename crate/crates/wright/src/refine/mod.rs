//! Failures-divergences refinement and the Wright consistency properties.

pub mod fd;
pub mod props;

pub use fd::{
    check_deadlock_free, fd_model, refines_fd, refines_lts, Counterexample, FdModel, FdNode, RefinementVerdict,
    ViolationKind,
};
pub use props::{
    check_property1, check_property11, check_property2, check_property3, check_property8, compatible,
    connector_composition, discharge, obligations, verify_configuration, verify_configuration_jobs, Obligation,
    PropertyReport,
};
