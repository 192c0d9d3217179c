//! Wright consistency properties expressed as FD refinements.

use std::collections::BTreeSet;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::fd::{check_deadlock_free, refines_lts, RefinementVerdict, ViolationKind};
use crate::model::{ComponentType, Configuration, ConnectorType, NamedBehavior};
use crate::semantics::{
    alphabet, augment, build_lts, determinize, hide, interleave, parallel, parallel_product, project, rename, Env,
    Label, Lts, SemError, Sync,
};

/// Outcome of one property obligation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyReport {
    pub property_id: u8,
    /// Element path, e.g. `Double.Output` or `A.Output as C.Origin`.
    pub subject: String,
    /// Names of the refinement sides as they appear in an exported script.
    pub assertion: (String, String),
    pub verdict: Result<RefinementVerdict, SemError>,
}

impl PropertyReport {
    pub fn holds(&self) -> bool {
        matches!(&self.verdict, Ok(v) if v.holds)
    }

    pub fn is_resource_error(&self) -> bool {
        matches!(self.verdict, Err(SemError::StateBudgetExceeded(_)))
    }
}

impl Serialize for PropertyReport {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("PropertyReport", 6)?;
        st.serialize_field("property", &self.property_id)?;
        st.serialize_field("subject", &self.subject)?;
        st.serialize_field("assertion", &[&self.assertion.0, &self.assertion.1])?;
        match &self.verdict {
            Ok(v) => {
                st.serialize_field("holds", &v.holds)?;
                st.serialize_field("counterexample", &v.counterexample)?;
                st.skip_field("error")?;
            }
            Err(e) => {
                st.serialize_field("holds", &Option::<bool>::None)?;
                st.skip_field("counterexample")?;
                st.serialize_field("error", &e.to_string())?;
            }
        }
        st.end()
    }
}

fn behavior_lts(b: &NamedBehavior, max: usize) -> Result<Lts, SemError> {
    build_lts(&b.behavior, &Env::for_behavior(b), max)
}

fn behavior_alphabet(b: &NamedBehavior) -> Result<crate::semantics::AlphabetInfo, SemError> {
    alphabet(&b.behavior, &Env::for_behavior(b))
}

fn qualified(b: &NamedBehavior, max: usize) -> Result<Lts, SemError> {
    let n = b.name.clone();
    Ok(rename(&behavior_lts(b, max)?, |e| format!("{n}.{e}")))
}

/// Property 1 for one port.
fn port_consistency(c: &ComponentType, port: &NamedBehavior, max: usize) -> Result<RefinementVerdict, SemError> {
    let spec = qualified(port, max)?;
    let mut imp = build_lts(&c.computation, &Env::for_computation(c), max)?;
    for other in c.ports.iter().filter(|p| p.name != port.name) {
        let observed = behavior_alphabet(other)?.observed;
        let factor = if observed.is_empty() {
            Lts::success()
        } else {
            let n = other.name.clone();
            rename(&determinize(&project(&behavior_lts(other, max)?, &observed), max)?, |e| format!("{n}.{e}"))
        };
        imp = parallel(&imp, &factor, &Sync::Auto, max)?;
    }
    let hidden: BTreeSet<String> = imp.universe.difference(&spec.universe).cloned().collect();
    refines_lts(&spec, &hide(&imp, &hidden), max)
}

/// Property 1 (port/computation consistency), one report per port.
pub fn check_property1(c: &ComponentType, max_states: usize) -> Vec<PropertyReport> {
    c.ports.iter().map(|p| property1_report(c, p, max_states)).collect()
}

fn property1_report(c: &ComponentType, p: &NamedBehavior, max: usize) -> PropertyReport {
    PropertyReport {
        property_id: 1,
        subject: format!("{}.{}", c.name, p.name),
        assertion: (format!("{}G", p.name), format!("COMP{}", p.name)),
        verdict: port_consistency(c, p, max),
    }
}

/// Glue composed with its roles renamed to `Role.e`.
pub fn connector_composition(c: &ConnectorType, max: usize) -> Result<(Lts, crate::semantics::Product), SemError> {
    let glue = build_lts(&c.glue, &Env::for_glue(c), max)?;
    let mut roles: Option<Lts> = None;
    for r in &c.roles {
        let q = qualified(r, max)?;
        roles = Some(match roles {
            None => q,
            Some(acc) => interleave(&acc, &q, max)?,
        });
    }
    let roles = roles.unwrap_or_else(Lts::success);
    let product = parallel_product(&glue, &roles, &Sync::Auto, max)?;
    Ok((roles, product))
}

fn connector_deadlock(c: &ConnectorType, max: usize) -> Result<RefinementVerdict, SemError> {
    let (roles, product) = connector_composition(c, max)?;
    let mut verdict = check_deadlock_free(&product.lts, max)?;
    if let Some(cx) = verdict.counterexample.as_mut() {
        if matches!(cx.kind, ViolationKind::RefusalViolation(_)) {
            let mut blocked = BTreeSet::new();
            for &w in &cx.witnesses {
                let (_, r) = product.pairs[w];
                let offered = product.lts.initials(w);
                for l in roles.initials(r) {
                    if let Label::Ev(e) = &l {
                        if !offered.contains(&l) {
                            blocked.insert(e.clone());
                        }
                    }
                }
            }
            cx.blocked = blocked.into_iter().collect();
        }
    }
    Ok(verdict)
}

/// Property 2 (deadlock-free connector).
pub fn check_property2(c: &ConnectorType, max_states: usize) -> PropertyReport {
    PropertyReport {
        property_id: 2,
        subject: c.name.clone(),
        assertion: ("DFA".into(), format!("{}A", c.name)),
        verdict: connector_deadlock(c, max_states),
    }
}

fn role_report(c: &ConnectorType, r: &NamedBehavior, max: usize) -> PropertyReport {
    PropertyReport {
        property_id: 3,
        subject: format!("{}.{}", c.name, r.name),
        assertion: ("DFA".into(), format!("{}A", r.name)),
        verdict: behavior_lts(r, max).and_then(|l| check_deadlock_free(&l, max)),
    }
}

/// Property 3 (deadlock-free roles), one report per role.
pub fn check_property3(c: &ConnectorType, max_states: usize) -> Vec<PropertyReport> {
    c.roles.iter().map(|r| role_report(c, r, max_states)).collect()
}

/// R+(αP−αR) ⊑ P+(αR−αP) ‖ det(R).
pub fn compatible(port: &NamedBehavior, role: &NamedBehavior, max: usize) -> Result<RefinementVerdict, SemError> {
    let (p, r) = (behavior_lts(port, max)?, behavior_lts(role, max)?);
    let ap = behavior_alphabet(port)?.all;
    let ar = behavior_alphabet(role)?.all;
    let spec = augment(&r, &ap.difference(&ar).cloned().collect());
    let p_plus = augment(&p, &ar.difference(&ap).cloned().collect());
    let imp = parallel(&p_plus, &determinize(&r, max)?, &Sync::Auto, max)?;
    refines_lts(&spec, &imp, max)
}

/// Property 8 (port/role compatibility).
pub fn check_property8(port: &NamedBehavior, role: &NamedBehavior, max_states: usize) -> PropertyReport {
    PropertyReport {
        property_id: 8,
        subject: format!("{} compat {}", port.name, role.name),
        assertion: (format!("{}PLUS", role.name), format!("{}PLUSDET", port.name)),
        verdict: compatible(port, role, max_states),
    }
}

/// Property 11: an unattached port or role must be compatible with §.
pub fn check_property11(b: &NamedBehavior, max_states: usize) -> PropertyReport {
    PropertyReport {
        property_id: 11,
        subject: b.name.clone(),
        assertion: (format!("{}SKIPPLUS", b.name), format!("{}ALONE", b.name)),
        verdict: alone(b, max_states),
    }
}

fn alone(b: &NamedBehavior, max: usize) -> Result<RefinementVerdict, SemError> {
    let x = behavior_lts(b, max)?;
    let spec = augment(&Lts::success(), &x.universe);
    let imp = parallel(&x, &Lts::success(), &Sync::Auto, max)?;
    refines_lts(&spec, &imp, max)
}

/// One proof obligation of a unit, in report order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Obligation {
    PortConsistency { component: usize, port: usize },
    RoleDeadlock { connector: usize, role: usize },
    ConnectorDeadlock { connector: usize },
    Attachment { attachment: usize },
    Unattached { instance: String, interface: String },
}

/// Lists the obligations of `unit`: Property 1 per component type and port,
/// Properties 3 then 2 per connector type, Property 8 per attachment and
/// Property 11 per unattached port or role (configurations only).
pub fn obligations(unit: &Configuration) -> Vec<Obligation> {
    let mut out = Vec::new();
    for (ci, c) in unit.component_types.iter().enumerate() {
        for pi in 0..c.ports.len() {
            out.push(Obligation::PortConsistency { component: ci, port: pi });
        }
    }
    for (ci, c) in unit.connector_types.iter().enumerate() {
        for ri in 0..c.roles.len() {
            out.push(Obligation::RoleDeadlock { connector: ci, role: ri });
        }
        out.push(Obligation::ConnectorDeadlock { connector: ci });
    }
    if unit.is_style {
        return out;
    }
    for ai in 0..unit.attachments.len() {
        out.push(Obligation::Attachment { attachment: ai });
    }
    for inst in &unit.component_instances {
        if let Some(t) = unit.component_type(&inst.type_name) {
            for p in &t.ports {
                if !unit.attachments.iter().any(|a| a.component_instance == inst.name && a.port == p.name) {
                    out.push(Obligation::Unattached { instance: inst.name.clone(), interface: p.name.clone() });
                }
            }
        }
    }
    for inst in &unit.connector_instances {
        if let Some(t) = unit.connector_type(&inst.type_name) {
            for r in &t.roles {
                if !unit.attachments.iter().any(|a| a.connector_instance == inst.name && a.role == r.name) {
                    out.push(Obligation::Unattached { instance: inst.name.clone(), interface: r.name.clone() });
                }
            }
        }
    }
    out
}

fn interface_of<'a>(unit: &'a Configuration, instance: &str, name: &str) -> Option<&'a NamedBehavior> {
    if let Some(i) = unit.component_instance(instance) {
        return unit.component_type(&i.type_name)?.port(name);
    }
    let i = unit.connector_instance(instance)?;
    unit.connector_type(&i.type_name)?.role(name)
}

/// Evaluates one obligation.
pub fn discharge(unit: &Configuration, ob: &Obligation, max_states: usize) -> PropertyReport {
    match ob {
        Obligation::PortConsistency { component, port } => {
            let c = &unit.component_types[*component];
            property1_report(c, &c.ports[*port], max_states)
        }
        Obligation::RoleDeadlock { connector, role } => {
            let c = &unit.connector_types[*connector];
            role_report(c, &c.roles[*role], max_states)
        }
        Obligation::ConnectorDeadlock { connector } => check_property2(&unit.connector_types[*connector], max_states),
        Obligation::Attachment { attachment } => {
            let a = &unit.attachments[*attachment];
            let subject = format!("{}.{} as {}.{}", a.component_instance, a.port, a.connector_instance, a.role);
            let assertion = (
                format!("{}_{}PLUS", a.connector_instance, a.role),
                format!("{}_{}PLUSDET", a.component_instance, a.port),
            );
            let verdict = match (
                interface_of(unit, &a.component_instance, &a.port),
                interface_of(unit, &a.connector_instance, &a.role),
            ) {
                (Some(p), Some(r)) => compatible(p, r, max_states),
                _ => Err(SemError::MissingAttachment(subject.clone())),
            };
            PropertyReport { property_id: 8, subject, assertion, verdict }
        }
        Obligation::Unattached { instance, interface } => {
            let subject = format!("{instance}.{interface}");
            let assertion = (format!("{instance}_{interface}SKIPPLUS"), format!("{instance}_{interface}ALONE"));
            let verdict = match interface_of(unit, instance, interface) {
                Some(b) => alone(b, max_states),
                None => Err(SemError::MissingAttachment(subject.clone())),
            };
            PropertyReport { property_id: 11, subject, assertion, verdict }
        }
    }
}

/// All property reports of a unit, in deterministic declaration order.
pub fn verify_configuration(unit: &Configuration, max_states: usize) -> Vec<PropertyReport> {
    verify_configuration_jobs(unit, max_states, 1)
}

/// Same as [`verify_configuration`], spreading obligations over `jobs`
/// threads. The result does not depend on `jobs`.
pub fn verify_configuration_jobs(unit: &Configuration, max_states: usize, jobs: usize) -> Vec<PropertyReport> {
    let obs = obligations(unit);
    let jobs = jobs.max(1).min(obs.len().max(1));
    if jobs == 1 {
        return obs.iter().map(|o| discharge(unit, o, max_states)).collect();
    }
    let mut slots: Vec<Option<PropertyReport>> = vec![None; obs.len()];
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..jobs)
            .map(|k| {
                let obs = &obs;
                scope.spawn(move || {
                    (k..obs.len()).step_by(jobs).map(|i| (i, discharge(unit, &obs[i], max_states))).collect::<Vec<_>>()
                })
            })
            .collect();
        for h in handles {
            for (i, r) in h.join().expect("verification worker panicked") {
                slots[i] = Some(r);
            }
        }
    });
    slots.into_iter().map(|r| r.expect("every obligation discharged")).collect()
}
