//! Write the FDR2 script of a unit to stdout and list its assertions.
//!
//! cargo run --example export_csp -- [file.wright]

use wright::{emit_fdr_script, parse_wright, script_assertions};

fn main() {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/data/wright/client_server_style.wright").into());
    let unit = parse_wright(&std::fs::read_to_string(&path).expect("readable unit")).expect("valid unit");
    let script = emit_fdr_script(&unit).expect("exportable unit");
    print!("{script}");
    eprintln!("{} assertions:", script_assertions(&script).len());
    for (spec, imp) in script_assertions(&script) {
        eprintln!("  {spec} [FD= {imp}");
    }
}
