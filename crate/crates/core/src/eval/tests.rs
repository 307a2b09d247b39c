use serde_json::json;

use super::*;

fn run(req: Value) -> Value {
    eval_json(&PrecisionCtx::default(), &req).0
}

fn value(req: Value) -> Value {
    let r = run(req);
    assert_eq!(r["ok"], true, "{r}");
    r["value"].clone()
}

fn code(req: Value) -> String {
    let r = run(req);
    assert_eq!(r["ok"], false, "{r}");
    r["error"]["code"].as_str().unwrap().to_string()
}

#[test]
fn ghost_of_one_one() {
    let v = value(
        json!({"op": "ghost", "params": {"witt": {"witt": {"len": 2, "coords": [1, 1]}}, "p": 3}}),
    );
    assert_eq!(v, json!([1, 4]));
}

#[test]
fn valuation_of_eps_minus_one() {
    let eps_minus_one = json!({"sub": [{"epsilon": 0, "window": 4}, {"const": 1, "window": 4}]});
    assert_eq!(
        value(json!({"op": "tilt_valuation", "params": eps_minus_one})),
        json!("3/2")
    );
}

#[test]
fn unknown_and_malformed() {
    assert_eq!(code(json!({"op": "nonsense"})), "unknown_op");
    assert_eq!(code(json!({"params": {}})), "invalid_request");
    assert_eq!(code(json!({"op": "ghost", "bogus": 1})), "invalid_request");
    assert_eq!(
        code(json!({"op": "ghost", "params": {}})),
        "invalid_parameter"
    );
    assert_eq!(
        code(json!({"op": "ghost", "params": {"witt": [1], "p": 4}})),
        "invalid_parameter"
    );
}

#[test]
fn ghost_round_trip_and_non_ghost() {
    let w = value(json!({"op": "from_ghost", "params": {"ghost": [1, 4, 4]}}));
    assert_eq!(w, json!({"witt": {"len": 3, "coords": [1, 1, 0]}}));
    assert_eq!(
        code(json!({"op": "from_ghost", "params": {"ghost": [1, 2]}})),
        "not_ghost_vector"
    );
    let s = value(json!({"op": "from_ghost", "params": {"ghost": [1, 2], "scaled": true}}));
    assert_eq!(s["scale_exponent"], 1);
}

#[test]
fn backends_agree() {
    let a = json!([2, 5, 7]);
    let b = json!([4, 1, 8]);
    let g = value(json!({"op": "mul", "params": {"a": a, "b": b}}));
    let u = value(json!({"op": "mul", "params": {"a": a, "b": b, "backend": "universal"}}));
    assert_eq!(g, u);
}

#[test]
fn v_one_is_divisible_by_p() {
    let v1 = value(json!({"op": "V", "params": {"witt": [1, 0]}}));
    assert_eq!(v1, json!({"witt": {"len": 3, "coords": [0, 1, 0]}}));
    let d = value(json!({"op": "sub", "params": {"a": v1, "b": [-3, 0, 0]}}));
    let q = value(json!({"op": "divide", "params": {"a": d, "by_p": true}}));
    let three = value(json!({"op": "from_ghost", "params": {"ghost": [3, 3, 3]}}));
    let back = value(json!({"op": "mul", "params": {"a": q, "b": three}}));
    assert_eq!(back, d);
    assert_eq!(
        code(json!({"op": "divide", "params": {"a": v1, "by_p": true}})),
        "not_divisible"
    );
}

#[test]
fn tr_operators_fix_beta() {
    let beta =
        value(json!({"op": "tr_beta", "params": {"n": 2}, "precision": {"prec": 3, "depth": 4}}));
    let r = value(
        json!({"op": "tr_F", "params": {"class": beta}, "precision": {"prec": 3, "depth": 4}}),
    );
    assert_eq!(r["tr"]["level"], 1);
    let g = run(
        json!({"op": "tr_galois", "params": {"class": beta, "u": 2}, "precision": {"prec": 3, "depth": 4}}),
    );
    assert_eq!(g["ok"], true, "{g}");
}

#[test]
fn tc_check_on_prime_field() {
    let ok = value(json!({"op": "tc_check", "params": {"q": 1, "c": [1, 2]}}));
    assert_eq!(ok, json!(true));
}

#[test]
fn deterministic_apart_from_timing() {
    let req = json!({"op": "xi", "params": {"n": 1, "len": 2, "window": 3}});
    let mut a = run(req.clone());
    let mut b = run(req);
    a["elapsed_ms"] = json!(0);
    b["elapsed_ms"] = json!(0);
    assert_eq!(a, b);
}
