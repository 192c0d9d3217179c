//! Parse a Wright unit and print its static diagnostics.
//!
//! cargo run --example check_unit -- [file.wright]

use wright::{check_static, parse_wright};

fn main() {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/data/wright/diner.wright").into());
    let text = std::fs::read_to_string(&path).expect("readable unit");
    let unit = match parse_wright(&text) {
        Ok(u) => u,
        Err(e) => {
            eprintln!("{path}: {e}");
            std::process::exit(2);
        }
    };
    println!(
        "{} ({} component types, {} connector types, {} instances, {} attachments)",
        unit.name,
        unit.component_types.len(),
        unit.connector_types.len(),
        unit.instances().count(),
        unit.attachments.len()
    );
    let diags = check_static(&unit);
    for d in &diags {
        println!("  {d}");
    }
    if diags.is_empty() {
        println!("  no findings");
    }
}
