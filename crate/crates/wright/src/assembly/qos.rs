use super::model::*;
use crate::diag::Diagnostic;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Match {
    None,
    IgnoringUnits,
    OrdinalValues,
    Full,
}

fn same_kind(a: &Characteristic, b: &Characteristic) -> bool {
    a.name == b.name && a.direction == b.direction && a.domain == b.domain
}

fn numeric_ok(req: &NumericConstraint, prov: &Quality, strict_units: bool) -> bool {
    prov.numeric.iter().any(|p| {
        same_kind(&p.characteristic, &req.characteristic)
            && (!strict_units || p.characteristic.unit == req.characteristic.unit)
            && p.op == req.op
            && req.op.satisfied(p.value, req.value)
    })
}

/// How well `prov` honours `req`.
fn grade(req: &Quality, prov: &Quality) -> Match {
    let ordinal = |strict_units: bool, strict_values: bool| {
        req.ordinal.iter().all(|r| {
            prov.ordinal.iter().any(|p| {
                same_kind(&p.characteristic, &r.characteristic)
                    && (!strict_units || p.characteristic.unit == r.characteristic.unit)
                    && p.op == r.op
                    && (!strict_values || p.value == r.value)
            })
        })
    };
    let numeric = |strict_units: bool| req.numeric.iter().all(|r| numeric_ok(r, prov, strict_units));
    if numeric(true) && ordinal(true, true) {
        Match::Full
    } else if numeric(true) && ordinal(true, false) {
        Match::OrdinalValues
    } else if numeric(false) && ordinal(false, true) {
        Match::IgnoringUnits
    } else {
        Match::None
    }
}

/// Every quality a component requires must be offered by some component it
/// shares a connector with. Dialect-independent.
pub fn check_qos(a: &Assembly) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    for c1 in &a.components {
        let Some(profile) = &c1.profile else { continue };
        for q in &profile.required {
            let best = a
                .components
                .iter()
                .filter(|c2| a.connected(&c1.name, &c2.name))
                .filter_map(|c2| c2.profile.as_ref())
                .flat_map(|p| &p.provided)
                .map(|p| grade(q, p))
                .max()
                .unwrap_or(Match::None);
            let path = format!("{}.{}.{}", a.name, c1.name, q.name);
            match best {
                Match::Full => {}
                Match::OrdinalValues => out.push(Diagnostic::warning(
                    "QOS-ordinal",
                    crate::diag::Location::Path(path),
                    format!("`{}` is only met with different ordinal values", q.name),
                )),
                Match::IgnoringUnits => out.push(Diagnostic::on(
                    "QOS-unit",
                    path,
                    format!("`{}` is offered only in different units", q.name),
                )),
                Match::None => out.push(Diagnostic::on(
                    "QOS-CQualite",
                    path,
                    format!("no connected component provides quality `{}` of `{}`", q.name, c1.name),
                )),
            }
        }
    }
    out
}
