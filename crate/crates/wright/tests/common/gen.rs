//! proptest strategies for process expressions.

use proptest::prelude::*;
use wright::{EventExpr, ProcessExpr};

pub fn event() -> impl Strategy<Value = EventExpr> {
    (prop_oneof!["a", "b", "c"], 0..3u8).prop_map(|(n, k)| match k {
        0 => EventExpr::observed(&n),
        1 => EventExpr::signalled(&n),
        _ => EventExpr::Internal(n),
    })
}

/// Processes whose only reference, `P`, sits behind a prefix, so every
/// expression is guarded when bound to `P`.
pub fn guarded() -> impl Strategy<Value = ProcessExpr> {
    let leaf = prop_oneof![
        Just(ProcessExpr::Success),
        Just(ProcessExpr::Stop),
        event().prop_map(|e| ProcessExpr::prefix(e, ProcessExpr::name("P"))),
        event().prop_map(|e| ProcessExpr::prefix(e, ProcessExpr::Success)),
    ];
    leaf.prop_recursive(4, 24, 3, |inner| {
        prop_oneof![
            (event(), inner.clone()).prop_map(|(e, t)| ProcessExpr::prefix(e, t)),
            prop::collection::vec(inner.clone(), 2..=3).prop_map(ProcessExpr::External),
            prop::collection::vec(inner, 2..=3).prop_map(ProcessExpr::Internal),
        ]
    })
}
