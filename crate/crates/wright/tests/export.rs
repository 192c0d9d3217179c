use std::collections::BTreeSet;

use wright::{emit_fdr_script, parse_wright, script_assertions, verify_configuration};

const UNITS: [&str; 12] = [
    "abc",
    "bogus",
    "calcul_formule",
    "client_server_style",
    "client_serveur",
    "client_serveur_consistent",
    "compat",
    "diner",
    "double",
    "double_fail",
    "gestion_parking",
    "pipe_conn",
];

fn script(name: &str) -> String {
    let text = std::fs::read_to_string(format!("{}/data/wright/{name}.wright", env!("CARGO_MANIFEST_DIR"))).unwrap();
    emit_fdr_script(&parse_wright(&text).unwrap()).unwrap()
}

fn defined(script: &str) -> BTreeSet<String> {
    script
        .lines()
        .filter(|l| !l.starts_with("--") && !l.starts_with("assert"))
        .filter_map(|l| l.split_once(" = "))
        .map(|(n, _)| n.trim().to_string())
        .collect()
}

#[test]
fn asserts_mirror_reports_in_order() {
    for name in UNITS {
        let text =
            std::fs::read_to_string(format!("{}/data/wright/{name}.wright", env!("CARGO_MANIFEST_DIR"))).unwrap();
        let unit = parse_wright(&text).unwrap();
        let want: Vec<_> = verify_configuration(&unit, 100_000).into_iter().map(|r| r.assertion).collect();
        assert_eq!(script_assertions(&emit_fdr_script(&unit).unwrap()), want, "{name}");
    }
}

#[test]
fn abc_has_seven_asserts() {
    assert_eq!(script_assertions(&script("abc")).len(), 7);
}

#[test]
fn every_asserted_process_is_defined() {
    for name in UNITS {
        let s = script(name);
        let defs = defined(&s);
        for (spec, imp) in script_assertions(&s) {
            assert!(defs.contains(&spec), "{name}: {spec}");
            assert!(defs.contains(&imp), "{name}: {imp}");
        }
    }
}

#[test]
fn every_alphabet_reference_is_defined() {
    for name in UNITS {
        let s = script(name);
        let defs = defined(&s);
        for word in s.split(|c: char| !(c.is_alphanumeric() || c == '_')) {
            if word.starts_with("ALPHA_") {
                assert!(defs.contains(word), "{name}: {word}");
            }
        }
    }
}

#[test]
fn brackets_balance_on_every_line() {
    for name in UNITS {
        for line in script(name).lines() {
            let mut depth = 0i32;
            for c in line.chars() {
                depth += match c {
                    '(' | '{' => 1,
                    ')' | '}' => -1,
                    _ => 0,
                };
                assert!(depth >= 0, "{name}: {line}");
            }
            assert_eq!(depth, 0, "{name}: {line}");
        }
    }
}

#[test]
fn client_server_style_text() {
    let s = script("client_server_style");
    assert!(s.contains("-- Style ClientServer\n"));
    assert!(s.contains("ROLEClient = ((request -> (result -> ROLEClient)) |~| SKIP)\n"));
    assert!(s.contains("ALPHA_CSconnector = {Client.request, Client.result, Server.invoke, Server.return}\n"));
    assert!(s.contains("CSconnectorA = CSconnector [[ x <- abstractEvent | x <- ALPHA_CSconnector ]]\n"));
    assert!(s.contains("assert DFA [FD= CSconnectorA\n"));
    assert!(s.ends_with("-- No constraints\n-- End Style\n"));
}

#[test]
fn attachment_section_shape() {
    let s = script("abc");
    assert!(s.contains("-- Attachment Test\n"));
    assert!(s.contains("A_OutputPLUS = PORTOutput [| diff(ALPHA_Origin, ALPHA_Output) |] STOP\n"));
    assert!(s.contains("assert C_OriginPLUS [FD= A_OutputPLUSDET\n"));
    assert!(s.ends_with("-- End Configuration\n"));
}
