use std::collections::BTreeSet;

use proptest::prelude::*;
use wright::ada::{canonical_form, walk_all, AdaDecl, AdaStmt};
use wright::{check_ada_wellformed, generate_ada, parse_ada, parse_wright, render_ada, AdaError, AdaUnit};

fn generated(name: &str) -> Result<AdaUnit, AdaError> {
    let text = std::fs::read_to_string(format!("{}/data/wright/{name}.wright", env!("CARGO_MANIFEST_DIR"))).unwrap();
    generate_ada(&parse_wright(&text).unwrap())
}

fn golden(name: &str) -> AdaUnit {
    let text = std::fs::read_to_string(format!("{}/data/ada/{name}.adb", env!("CARGO_MANIFEST_DIR"))).unwrap();
    parse_ada(&text).unwrap()
}

#[derive(Debug, PartialEq, Default)]
struct Names {
    tasks: BTreeSet<String>,
    entries: BTreeSet<String>,
    accepts: BTreeSet<String>,
    calls: BTreeSet<String>,
    subprograms: BTreeSet<String>,
}

fn names(u: &AdaUnit) -> Names {
    let mut n = Names::default();
    for d in &u.declarations {
        let body = match d {
            AdaDecl::TaskSpec { name, entries } => {
                n.tasks.insert(name.clone());
                n.entries.extend(entries.iter().map(|e| format!("{name}.{e}")));
                continue;
            }
            AdaDecl::TaskBody { body, .. } => body,
            AdaDecl::Function { name, body, .. } | AdaDecl::Procedure { name, body } => {
                n.subprograms.insert(name.clone());
                body
            }
        };
        walk_all(body, &mut |s| match s {
            AdaStmt::Accept(e) => {
                n.accepts.insert(e.clone());
            }
            AdaStmt::Select { alternatives, .. } => n.accepts.extend(alternatives.iter().map(|(e, _)| e.clone())),
            AdaStmt::EntryCall(c) => {
                n.calls.insert(c.clone());
            }
            _ => {}
        });
    }
    n
}

#[test]
fn matches_reference_programs() {
    for name in ["client_serveur", "diner", "gestion_parking"] {
        let ours = generated(name).unwrap();
        let want = golden(name);
        assert_eq!(names(&ours), names(&want), "{name}");
        assert_eq!(canonical_form(&ours), canonical_form(&want), "{name}");
    }
}

#[test]
fn generated_programs_reparse_and_are_wellformed() {
    for name in ["client_serveur", "client_serveur_consistent", "compat", "diner", "gestion_parking"] {
        let unit = generated(name).unwrap();
        let back = parse_ada(&render_ada(&unit)).unwrap();
        assert_eq!(back, unit, "{name}");
        assert_eq!(check_ada_wellformed(&unit), vec![], "{name}");
        assert_eq!(check_ada_wellformed(&golden_or(&unit, name)), vec![], "{name}");
    }
}

fn golden_or(unit: &AdaUnit, name: &str) -> AdaUnit {
    let path = format!("{}/data/ada/{name}.adb", env!("CARGO_MANIFEST_DIR"));
    if std::path::Path::new(&path).exists() {
        golden(name)
    } else {
        unit.clone()
    }
}

#[test]
fn one_task_per_instance() {
    let unit = generated("client_serveur").unwrap();
    let tasks: Vec<&str> = unit.task_specs().map(|(n, _)| n).collect();
    assert_eq!(tasks, ["Component_client1", "Component_serveur1", "Connector_appel_cs"]);
    assert_eq!(unit.task_bodies().count(), 3);
    assert_eq!(unit.procedure_name, "Client_Serveur");
}

#[test]
fn untranslatable_units_are_rejected() {
    for style in ["bogus", "calcul_formule", "client_server_style", "double", "double_fail", "pipe_conn"] {
        assert!(generated(style).is_err(), "{style}");
    }
    // `_b` in ABC is signalled on no port, so there is no task to call.
    assert!(generated("abc").unwrap_err().to_string().contains("`b`"));
}

#[test]
fn wellformedness_catches_broken_programs() {
    let mut unit = generated("client_serveur").unwrap();
    if let Some(AdaDecl::TaskSpec { entries, .. }) = unit
        .declarations
        .iter_mut()
        .find(|d| matches!(d, AdaDecl::TaskSpec { name, .. } if name == "Connector_appel_cs"))
    {
        entries.clear();
    }
    let rules: BTreeSet<String> = check_ada_wellformed(&unit).into_iter().map(|d| d.rule_id).collect();
    assert!(rules.contains("ADA-P11"));
    assert!(rules.contains("ADA-CALL"));
}

#[test]
fn parse_errors_are_located() {
    assert!(parse_ada("procedure P is\nbegin\n  null\nend P;\n").is_err());
    assert!(parse_ada("procedure P is\nbegin\n  null;\nend Q;\n").is_err());
}

fn ident() -> impl Strategy<Value = String> {
    "[A-Z][a-z]{0,4}(_[a-z0-9]{1,3})?".prop_filter("reserved", |s| {
        ![
            "Or", "If", "Is", "End", "Loop", "Null", "Exit", "Case", "When", "Body", "Task", "Then", "Else", "Entry",
            "Begin", "Accept", "Select", "Return", "Others",
        ]
        .iter()
        .any(|r| r.eq_ignore_ascii_case(s))
    })
}

fn stmt() -> BoxedStrategy<AdaStmt> {
    let leaf = prop_oneof![
        Just(AdaStmt::Null),
        Just(AdaStmt::Exit),
        ident().prop_map(AdaStmt::Accept),
        ident().prop_map(AdaStmt::ProcedureCall),
        (ident(), ident()).prop_map(|(t, e)| AdaStmt::EntryCall(format!("{t}.{e}"))),
    ];
    leaf.prop_recursive(3, 24, 3, |inner| {
        let block = prop::collection::vec(inner.clone(), 1..3);
        prop_oneof![
            block.clone().prop_map(AdaStmt::Loop),
            (ident(), block.clone(), block.clone()).prop_map(|(condition, then_branch, else_branch)| AdaStmt::IfElse {
                condition,
                then_branch,
                else_branch
            }),
            (ident(), prop::collection::vec(block.clone(), 1..4)).prop_map(|(expr, bs)| {
                let n = bs.len();
                let alternatives = bs
                    .into_iter()
                    .enumerate()
                    .map(|(i, b)| (if i + 1 == n && n > 1 { "others".into() } else { (i + 1).to_string() }, b))
                    .collect();
                AdaStmt::Case { expr, alternatives }
            }),
            (prop::collection::vec((ident(), prop::collection::vec(inner, 0..2)), 1..3), any::<bool>())
                .prop_map(|(alternatives, terminate)| AdaStmt::Select { alternatives, terminate }),
        ]
    })
    .boxed()
}

fn decl() -> impl Strategy<Value = AdaDecl> {
    let body = prop::collection::vec(stmt(), 1..4);
    prop_oneof![
        (ident(), ident()).prop_map(|(name, r)| AdaDecl::Function {
            name,
            return_type: "Boolean".into(),
            body: vec![AdaStmt::Return(r)],
        }),
        (ident(), body.clone()).prop_map(|(name, body)| AdaDecl::Procedure { name, body }),
        (ident(), prop::collection::vec(ident(), 0..3)).prop_map(|(name, entries)| AdaDecl::TaskSpec { name, entries }),
        (ident(), body).prop_map(|(name, body)| AdaDecl::TaskBody { name, body }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]
    #[test]
    fn render_parse_round_trip(name in ident(), declarations in prop::collection::vec(decl(), 0..5)) {
        let unit = AdaUnit { procedure_name: name, declarations, body: vec![AdaStmt::Null] };
        prop_assert_eq!(parse_ada(&render_ada(&unit)).unwrap(), unit);
    }
}
