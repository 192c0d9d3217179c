use wright::assembly::*;
use wright::Diagnostic;

fn load(name: &str) -> Assembly {
    let path = format!("{}/data/assemblies/{name}.json", env!("CARGO_MANIFEST_DIR"));
    parse_assembly(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn rules(d: &[Diagnostic]) -> Vec<String> {
    d.iter().map(|d| d.rule_id.clone()).collect()
}

#[test]
fn gab1_is_valid() {
    let a = load("gab1");
    assert_eq!(a.components.len(), 2);
    assert_eq!(a.connectors.len(), 1);
    assert_eq!(check_uml(&a).unwrap(), vec![]);
}

#[test]
fn gab2_misses_transferer() {
    let d = check_uml(&load("gab2")).unwrap();
    assert_eq!(rules(&d), ["UML-service_offert_requis"]);
    assert!(d[0].message.contains("transferer"), "{}", d[0]);
    assert!(!d[0].message.contains("debiter"));
}

#[test]
fn hotel_reservation_is_valid() {
    let a = load("hotel");
    assert!(a.connectors.iter().all(|c| c.roles.iter().all(|r| r.operations.is_some())));
    assert_eq!(check_uml(&a).unwrap(), vec![]);
    assert_eq!(check_qos(&a), vec![]);
}

#[test]
fn hotel_role_typo_trips_rc2_only() {
    let mut a = load("hotel");
    let role = a.connectors[1].roles.iter_mut().find(|r| r.name == "client_IClaimReservation").unwrap();
    role.operations.as_mut().unwrap()[2].name = "getCustomer".into();
    assert_eq!(rules(&check_uml(&a).unwrap()), ["UML-Rc2"]);
}

#[test]
fn hotel_role_missing_operation_trips_rc1_and_rc2() {
    let mut a = load("hotel");
    a.connectors[2].roles[0].operations.as_mut().unwrap().clear();
    assert_eq!(rules(&check_uml(&a).unwrap()), ["UML-Rc1", "UML-Rc2"]);
}

#[test]
fn uml_structural_rules() {
    let mut a = load("gab1");
    a.components.push(Component { name: "Empty".into(), kind: None, ports: vec![], profile: None });
    assert_eq!(rules(&check_uml(&a).unwrap()), ["UML-aumoinsInterface"]);

    let mut a = load("gab1");
    a.components[1].ports[0].kind = "Required".into();
    let r = rules(&check_uml(&a).unwrap());
    assert!(r.iter().any(|x| x == "UML-uneseuleInterfaceOfferte"), "{r:?}");
    assert!(r.iter().any(|x| x == "UML-interface_offerte"), "{r:?}");

    let mut a = load("gab1");
    a.attachments.pop();
    let r = rules(&check_uml(&a).unwrap());
    assert!(r.iter().any(|x| x == "UML-un_port_offert"), "{r:?}");

    let mut a = load("gab1");
    a.attachments.remove(0);
    let r = rules(&check_uml(&a).unwrap());
    assert!(r.iter().any(|x| x == "UML-interface_requise_satisfaite"), "{r:?}");
    assert!(r.iter().any(|x| x == "UML-un_port_requis"), "{r:?}");

    let mut a = load("gab1");
    a.connectors[0].kind = "Pipe".into();
    a.components[0].kind = Some("Filter".into());
    assert_eq!(rules(&check_uml(&a).unwrap()), ["UML-composants_admis", "UML-connecteurs_admis"]);

    let mut a = load("gab1");
    a.attachments[1] = Attachment { component: "Client".into(), port: "Ifictif".into(), ..a.attachments[1].clone() };
    let r = rules(&check_uml(&a).unwrap());
    assert!(r.iter().any(|x| x == "UML-appellant_appele"), "{r:?}");
}

#[test]
fn suites_reject_the_other_dialect() {
    assert!(check_uml(&load("healthcare")).is_err());
    assert!(check_ugatze(&load("gab1")).is_err());
}

#[test]
fn videocamera_qos() {
    let a = load("videocamera");
    assert_eq!(a.components.iter().filter(|c| c.profile.is_some()).count(), 3);
    assert_eq!(check_qos(&a), vec![]);
    assert_eq!(check_uml(&a).unwrap(), vec![]);

    let mut tight = a.clone();
    tight.components[2].profile.as_mut().unwrap().required[0].numeric[1].value = 35.0;
    let d = check_qos(&tight);
    assert_eq!(rules(&d), ["QOS-CQualite"]);
    assert!(d[0].location.to_string().contains("VideoPlayer"));
}

#[test]
fn qos_units_and_unconnected() {
    let mut a = load("videocamera");
    a.components[1].profile.as_mut().unwrap().provided[0].numeric[0].characteristic.unit = "sec".into();
    assert_eq!(rules(&check_qos(&a)), ["QOS-unit"]);

    let mut a = load("videocamera");
    a.attachments.truncate(2);
    assert_eq!(rules(&check_qos(&a)), ["QOS-CQualite"]);
}

#[test]
fn qos_ordinal_mismatch_is_a_warning() {
    let level = Characteristic {
        name: "Securite".into(),
        direction: Direction::Increasing,
        domain: "ordinal".into(),
        unit: String::new(),
    };
    let quality = |v: &str| Quality {
        name: format!("Sec{v}"),
        numeric: vec![],
        ordinal: vec![OrdinalConstraint { characteristic: level.clone(), op: Op::Ge, value: v.into() }],
    };
    let mut a = load("videocamera");
    a.components[0].profile.as_mut().unwrap().provided.push(quality("haute"));
    a.components[1].profile.as_mut().unwrap().required.push(quality("moyenne"));
    let d = check_qos(&a);
    assert_eq!(rules(&d), ["QOS-ordinal"]);
    assert!(!d[0].is_error());
    a.components[1].profile.as_mut().unwrap().required.last_mut().unwrap().ordinal[0].value = "haute".into();
    assert_eq!(check_qos(&a), vec![]);
}

#[test]
fn healthcare_is_valid() {
    assert_eq!(check_ugatze(&load("healthcare")).unwrap(), vec![]);
}

fn attachment(a: &mut Assembly, connector: &str, role: &str) -> usize {
    a.attachments.iter().position(|t| t.connector == connector && t.role == role).unwrap()
}

#[test]
fn healthcare_single_rule_mutants() {
    let mut sink_on_oip = load("healthcare");
    let (i, j) = (attachment(&mut sink_on_oip, "pipe", "sink"), attachment(&mut sink_on_oip, "pipe", "source"));
    sink_on_oip.attachments[i].role = "source".into();
    sink_on_oip.attachments[j].role = "sink".into();
    assert_eq!(rules(&check_ugatze(&sink_on_oip).unwrap()), ["UG-precondition1"]);

    let mut one = load("healthcare");
    one.components.retain(|c| c.name == "GP");
    one.connectors.clear();
    one.attachments.clear();
    assert_eq!(rules(&check_ugatze(&one).unwrap()), ["UG-numberComponent"]);

    let mut protocol = load("healthcare");
    protocol.components[2].ports[0].protocol = Some("int".into());
    assert_eq!(rules(&check_ugatze(&protocol).unwrap()), ["UG-protocol"]);

    let mut signature = load("healthcare");
    signature.components[0].ports[1].operations[0].result = "integer".into();
    assert_eq!(rules(&check_ugatze(&signature).unwrap()), ["UG-signature"]);
}

#[test]
fn ugatze_style_rules() {
    let mut a = load("healthcare");
    a.components[1].ports.push(Port { name: "op".into(), kind: "PIOP".into(), operations: vec![], protocol: None });
    let r = rules(&check_ugatze(&a).unwrap());
    assert_eq!(r, ["UG-PortType1"]);

    let mut a = load("healthcare");
    a.components[0].kind = Some("Widget".into());
    assert_eq!(rules(&check_ugatze(&a).unwrap()), ["UG-componentType"]);

    let mut a = load("healthcare");
    a.connectors[0].buffer_size = Some(-1);
    assert_eq!(rules(&check_ugatze(&a).unwrap()), ["UG-bufferpositive"]);

    let mut a = load("healthcare");
    let k = attachment(&mut a, "pipe", "sink");
    a.attachments.remove(k);
    assert_eq!(rules(&check_ugatze(&a).unwrap()), ["UG-noDanglingRoles"]);

    let mut a = load("healthcare");
    let k = attachment(&mut a, "sharedData", "sink");
    a.attachments.remove(k);
    assert_eq!(rules(&check_ugatze(&a).unwrap()), ["UG-atLeastOneAttachment"]);

    let mut a = load("healthcare");
    let k = attachment(&mut a, "interactionOperation", "source");
    a.attachments[k] = Attachment { component: "GP".into(), port: "authenticate".into(), ..a.attachments[k].clone() };
    let r = rules(&check_ugatze(&a).unwrap());
    for rule in ["UG-attachedPortsArePIOP", "UG-failedAttachement", "UG-connectorIndependence"] {
        assert!(r.iter().any(|x| x == rule), "{rule} missing from {r:?}");
    }
}

#[test]
fn format_errors_carry_a_path() {
    let text = std::fs::read_to_string(format!("{}/data/assemblies/gab1.json", env!("CARGO_MANIFEST_DIR"))).unwrap();
    let bad = text.replace("\"port\": \"I2\"", "\"port\": \"I9\"");
    let e = parse_assembly(&bad).unwrap_err();
    assert_eq!(e.path, "attachments[0].port");

    let e = parse_assembly(&text.replace("\"dialect\": \"UML\"", "\"dialect\": \"Acme\"")).unwrap_err();
    assert_eq!(e.path, "dialect");

    let e = parse_assembly(&text.replace("\"result\": \"Void\"", "\"result\": \"Money\"")).unwrap_err();
    assert!(e.path.ends_with(".result"), "{e}");

    assert_eq!(parse_assembly("[]").unwrap_err().path, "$");
}
