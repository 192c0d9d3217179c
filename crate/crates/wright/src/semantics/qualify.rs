use std::collections::BTreeMap;

use super::{build_lts, rename, Env, Lts, SemError};
use crate::model::Configuration;

/// Builds the computation/glue LTS of every instance with globally
/// qualified event names: `N.P.e` for component events, the attached
/// `Comp.Port.e` for glue events on attached roles.
pub fn qualify_configuration(config: &Configuration, max_states: usize) -> Result<BTreeMap<String, Lts>, SemError> {
    let mut out = BTreeMap::new();
    for inst in &config.component_instances {
        let ty =
            config.component_type(&inst.type_name).ok_or_else(|| SemError::UnresolvedRef(inst.type_name.clone()))?;
        let lts = build_lts(&ty.computation, &Env::for_computation(ty), max_states)?;
        let n = inst.name.clone();
        out.insert(inst.name.clone(), rename(&lts, |e| format!("{n}.{e}")));
    }
    for inst in &config.connector_instances {
        let ty =
            config.connector_type(&inst.type_name).ok_or_else(|| SemError::UnresolvedRef(inst.type_name.clone()))?;
        let lts = build_lts(&ty.glue, &Env::for_glue(ty), max_states)?;
        let renamed = rename(&lts, |e| match e.split_once('.') {
            Some((role, ev)) if ty.role(role).is_some() => {
                match config.attachments.iter().find(|a| a.connector_instance == inst.name && a.role == role) {
                    Some(a) => format!("{}.{}.{ev}", a.component_instance, a.port),
                    None => format!("{}.{e}", inst.name),
                }
            }
            _ => format!("{}.{e}", inst.name),
        });
        out.insert(inst.name.clone(), renamed);
    }
    Ok(out)
}
