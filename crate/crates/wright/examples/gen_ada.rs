//! Translate a configuration into a concurrent Ada program, then check the
//! result re-parses and is well formed.
//!
//! cargo run --example gen_ada -- [file.wright]

use wright::{check_ada_wellformed, generate_ada, parse_ada, parse_wright, render_ada};

fn main() {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/data/wright/client_serveur.wright").into());
    let unit = parse_wright(&std::fs::read_to_string(&path).expect("readable unit")).expect("valid unit");
    let program = match generate_ada(&unit) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("{path}: {e}");
            std::process::exit(2);
        }
    };
    let text = render_ada(&program);
    print!("{text}");
    assert_eq!(parse_ada(&text).expect("generated text parses"), program);
    let diags = check_ada_wellformed(&program);
    eprintln!("{} tasks, {} well-formedness findings", program.task_bodies().count(), diags.len());
}
