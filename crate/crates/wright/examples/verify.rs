//! Discharge every consistency property of a unit with the built-in
//! failures-divergences checker.
//!
//! cargo run --example verify -- [file.wright]

use wright::{parse_wright, verify_configuration, DEFAULT_MAX_STATES};

fn main() {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/data/wright/abc.wright").into());
    let unit = parse_wright(&std::fs::read_to_string(&path).expect("readable unit")).expect("valid unit");
    for r in verify_configuration(&unit, DEFAULT_MAX_STATES) {
        let verdict = match &r.verdict {
            Ok(v) if v.holds => "holds".to_string(),
            Ok(v) => {
                let cx = v.counterexample.as_ref().expect("failing verdicts carry a counterexample");
                format!("fails after <{}> ({:?})", cx.trace.join(", "), cx.kind)
            }
            Err(e) => format!("undecided: {e}"),
        };
        println!("P{:<2} {:<36} {} [FD= {}: {verdict}", r.property_id, r.subject, r.assertion.0, r.assertion.1);
    }
}
