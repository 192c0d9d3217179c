use wright::{
    check_property1, check_property2, check_property3, check_property8, parse_wright, verify_configuration,
    verify_configuration_jobs, PropertyReport, SemError, ViolationKind,
};

fn unit(name: &str) -> wright::Configuration {
    let text = std::fs::read_to_string(format!("{}/data/wright/{name}.wright", env!("CARGO_MANIFEST_DIR"))).unwrap();
    parse_wright(&text).unwrap()
}

fn table(reports: &[PropertyReport]) -> Vec<(u8, String, bool)> {
    reports.iter().map(|r| (r.property_id, r.subject.clone(), r.holds())).collect()
}

fn failing(reports: &[PropertyReport]) -> Vec<String> {
    reports.iter().filter(|r| !r.holds()).map(|r| r.subject.clone()).collect()
}

#[test]
fn consistent_units_hold_throughout() {
    for name in [
        "abc",
        "double",
        "pipe_conn",
        "client_server_style",
        "calcul_formule",
        "gestion_parking",
        "client_serveur_consistent",
    ] {
        let reports = verify_configuration(&unit(name), 100_000);
        assert!(!reports.is_empty());
        assert_eq!(failing(&reports), Vec::<String>::new(), "{name}");
    }
}

#[test]
fn double_ports_and_failing_variant() {
    let ok = unit("double");
    let reports = check_property1(&ok.component_types[0], 10_000);
    assert_eq!(reports.len(), 2);
    assert!(reports.iter().all(PropertyReport::holds));

    let bad = unit("double_fail");
    let reports = check_property1(&bad.component_types[0], 10_000);
    let output = reports.iter().find(|r| r.subject.ends_with(".Output")).unwrap();
    assert!(!output.holds());
    let cx = output.verdict.as_ref().unwrap().counterexample.as_ref().unwrap();
    assert!(cx.trace.is_empty());
    assert!(matches!(cx.kind, ViolationKind::RefusalViolation(_)));
}

#[test]
fn bogus_glue_deadlocks_on_two_gets() {
    let u = unit("bogus");
    let conn = &u.connector_types[0];
    assert!(check_property3(conn, 10_000).iter().all(PropertyReport::holds));
    let p2 = check_property2(conn, 10_000);
    assert_eq!(p2.assertion, ("DFA".to_string(), "BogusA".to_string()));
    let cx = p2.verdict.unwrap().counterexample.unwrap();
    assert_eq!(cx.blocked, ["User1.get", "User2.get"]);
}

#[test]
fn compatibility_triple() {
    let reports = verify_configuration(&unit("compat"), 10_000);
    let p8: Vec<_> = reports.iter().filter(|r| r.property_id == 8).collect();
    assert_eq!(p8.len(), 3);
    let verdict = |port: &str| p8.iter().find(|r| r.subject.contains(port)).unwrap().holds();
    assert!(verdict(".Output3 as"));
    assert!(!verdict(".BadOutput as"));
    assert!(verdict("writer.Source as"));
}

#[test]
fn compatibility_directly_on_behaviours() {
    let u = unit("compat");
    let port = |n: &str| u.component_types.iter().flat_map(|c| &c.ports).find(|p| p.name == n).unwrap();
    let role = u.connector_types[0].role("Source").unwrap();
    assert!(check_property8(port("Output3"), role, 10_000).holds());
    assert!(!check_property8(port("BadOutput"), role, 10_000).holds());
    assert!(check_property8(role, role, 10_000).holds());
}

#[test]
fn abc_report_order() {
    let reports = verify_configuration(&unit("abc"), 10_000);
    let names: Vec<(String, String)> = reports.iter().map(|r| r.assertion.clone()).collect();
    let want = [
        ("OutputG", "COMPOutput"),
        ("InputG", "COMPInput"),
        ("DFA", "OriginA"),
        ("DFA", "TargetA"),
        ("DFA", "CtypeA"),
        ("C_OriginPLUS", "A_OutputPLUSDET"),
        ("C_TargetPLUS", "B_InputPLUSDET"),
    ];
    assert_eq!(names, want.map(|(a, b)| (a.to_string(), b.to_string())));
}

#[test]
fn literal_client_serveur_and_diner_failures() {
    assert_eq!(
        failing(&verify_configuration(&unit("client_serveur"), 100_000)),
        ["serveur1.port_Serveur as appel_cs.Appele"]
    );
    assert_eq!(failing(&verify_configuration(&unit("diner"), 100_000)), ["Main"]);
}

#[test]
fn unattached_interfaces_get_property_11() {
    let text = std::fs::read_to_string(format!("{}/data/wright/abc.wright", env!("CARGO_MANIFEST_DIR"))).unwrap();
    let u = parse_wright(&text.replace("  B.Input As C.Target\n", "")).unwrap();
    let reports = verify_configuration(&u, 10_000);
    let p11: Vec<_> = reports.iter().filter(|r| r.property_id == 11).collect();
    assert_eq!(p11.len(), 2);
    assert!(reports[reports.len() - 2..].iter().all(|r| r.property_id == 11));
    assert_eq!(p11[0].assertion, ("B_InputSKIPPLUS".to_string(), "B_InputALONE".to_string()));
    assert_eq!(p11[1].assertion, ("C_TargetSKIPPLUS".to_string(), "C_TargetALONE".to_string()));
}

#[test]
fn styles_only_get_type_level_properties() {
    let reports = verify_configuration(&unit("client_server_style"), 10_000);
    assert!(reports.iter().all(|r| matches!(r.property_id, 1..=3)));
}

#[test]
fn jobs_do_not_change_reports() {
    for name in ["diner", "abc", "compat"] {
        let u = unit(name);
        assert_eq!(table(&verify_configuration(&u, 100_000)), table(&verify_configuration_jobs(&u, 100_000, 4)));
    }
}

#[test]
fn tiny_budget_is_reported_not_guessed() {
    let reports = verify_configuration(&unit("diner"), 3);
    assert!(reports.iter().any(|r| r.verdict == Err(SemError::StateBudgetExceeded(3))));
    assert!(reports.iter().filter(|r| r.verdict.is_err()).all(PropertyReport::is_resource_error));
}
