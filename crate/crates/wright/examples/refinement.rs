//! The refinement engine on its own: build LTSs from CSP text and compare
//! them in the failures-divergences model.

use wright::{build_lts, parse_process, refines_lts, Env, ProcessExpr};

fn lts(text: &str) -> wright::Lts {
    let env = Env::new().define("P", parse_process(text).expect("valid process"));
    build_lts(&ProcessExpr::name("P"), &env, 1_000).expect("small process")
}

fn main() {
    let pairs = [
        // Internal choice is refined by either branch, and by external choice.
        ("a -> P |~| b -> P", "a -> P"),
        ("a -> P |~| b -> P", "a -> P [] b -> P"),
        // External choice may not be resolved internally.
        ("a -> P [] b -> P", "a -> P |~| b -> P"),
        ("a -> P [] TICK", "a -> P"),
    ];
    for (spec, imp) in pairs {
        let v = refines_lts(&lts(spec), &lts(imp), 1_000).expect("within budget");
        match v.counterexample {
            None => println!("{spec:<22} [FD= {imp:<22} holds"),
            Some(cx) => println!("{spec:<22} [FD= {imp:<22} fails after <{}>: {:?}", cx.trace.join(", "), cx.kind),
        }
    }
}
