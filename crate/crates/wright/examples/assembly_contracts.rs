//! Run the contract suites over every bundled assembly, then over a
//! VideoCamera variant whose player demands a higher transfer rate.

use wright::assembly::Dialect;
use wright::{check_qos, check_ugatze, check_uml, parse_assembly, Assembly};

fn load(name: &str) -> Assembly {
    let path = format!("{}/data/assemblies/{name}.json", env!("CARGO_MANIFEST_DIR"));
    parse_assembly(&std::fs::read_to_string(path).expect("bundled file")).expect("valid assembly")
}

fn report(label: &str, a: &Assembly) {
    let mut findings = match a.dialect {
        Dialect::Uml => check_uml(a),
        Dialect::Ugatze => check_ugatze(a),
    }
    .expect("suite matches dialect");
    findings.extend(check_qos(a));
    println!("{label}: {} finding(s)", findings.len());
    for d in findings {
        println!("  {d}");
    }
}

fn main() {
    for name in ["gab1", "gab2", "hotel", "videocamera", "healthcare"] {
        report(name, &load(name));
    }
    let mut tight = load("videocamera");
    let player = tight.components.iter_mut().find(|c| c.name == "VideoPlayer").expect("player");
    let rate = player.profile.as_mut().and_then(|p| p.required.first_mut()).expect("required quality");
    rate.numeric.iter_mut().filter(|n| n.characteristic.name == "TauxDeTransfert").for_each(|n| n.value = 35.0);
    report("videocamera at 35", &tight);
}
