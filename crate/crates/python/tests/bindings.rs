use oddbracket_py::{check_constraints, normalize_c4, verify_cocycles, verify_deformation};

fn parse(s: String) -> serde_json::Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn cocycles_report() {
    let r = parse(verify_cocycles(0, 10, 1e-8, 1e-6).unwrap());
    assert_eq!(r["passed"], true);
    assert_eq!(r["checks"].as_array().unwrap().len(), 7);
}

#[test]
fn constraints_and_orderwise() {
    let r = parse(check_constraints(r#"{"c4": [[1, [], 1.0]], "c5": [[1, [], 1.0]]}"#).unwrap());
    assert_eq!(r["satisfied"], false);
    let r = parse(verify_deformation(r#"{"c4": [[1, [], 1.0]]}"#, 3, 0, 1e-8, 1e-6).unwrap());
    assert_eq!(r["passed"], true);
}

#[test]
fn normal_form() {
    let r = parse(normalize_c4(r#"{"c4": [[2, [2, 3], 1.0], [2, [1, 2], 0.5]]}"#).unwrap());
    assert_eq!(r["c4"][0][1], serde_json::json!([1, 2]));
}
