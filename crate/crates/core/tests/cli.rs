use macfock::cli::run;
use serde_json::Value;

fn call(args: &[&str]) -> (i32, Value) {
    let mut argv = vec!["macfock"];
    argv.extend_from_slice(args);
    let out = run(argv);
    let v = if out.stdout.is_empty() { Value::Null } else { serde_json::from_str(&out.stdout).unwrap() };
    (out.code, v)
}

fn coeff_of(v: &Value, part: &[u32]) -> String {
    v["coefficients"]
        .as_array()
        .unwrap()
        .iter()
        .find(|t| t["partition"] == serde_json::json!(part))
        .map(|t| t["coeff"].as_str().unwrap().to_string())
        .unwrap()
}

#[test]
fn compute_p2_in_monomials() {
    let (code, v) = call(&["compute", "P", "--lambda", "2"]);
    assert_eq!(code, 0);
    assert_eq!(coeff_of(&v, &[2]), "1/1");
    let want: macfock::coefficients::RatFunc = "(1+q)*(1-t)/(1-q*t)".parse().unwrap();
    assert_eq!(coeff_of(&v, &[1, 1]), want.to_string());
}

#[test]
fn verify_cauchy_passes() {
    let (code, v) = call(&["verify", "cauchy", "--degree", "5", "--xvars", "2", "--yvars", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["pass"], Value::Bool(true));
}

#[test]
fn expect_both_methods_agree() {
    let (code, v) =
        call(&["expect", "--obs", "hatE1", "--method", "both", "--xvars", "1", "--yvars", "1", "--degree", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["equal"], Value::Bool(true));
    assert_eq!(v["direct"]["method"], "direct");
    assert_eq!(v["operator"]["series"], v["direct"]["series"]);
}

#[test]
fn usage_errors_exit_two() {
    let out = run(["macfock", "compute", "P", "--lambda", "x"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("--lambda"));
    assert_eq!(run(["macfock", "nonsense"]).code, 2);
    assert_eq!(run(["macfock", "expect", "--obs", "E1,E1", "--levels", "3"]).code, 2);
    assert_eq!(run(["macfock", "dim", "p"]).code, 2);
}

#[test]
fn degenerate_dim_function_fails_with_one() {
    let out = run(["macfock", "dim", "p", "--tuple", "1|0"]);
    assert_eq!(out.code, 1);
    let (code, v) = call(&["dim", "p", "--tuple", "1|0", "--u", "1,2"]);
    assert_eq!(code, 0);
    assert_eq!(v["tuple"], serde_json::json!([[1], []]));
}

#[test]
fn output_is_repeatable() {
    let a = run(["macfock", "fredholm", "--kernel", "KE", "--degree", "2"]);
    let b = run(["macfock", "fredholm", "--kernel", "KE", "--degree", "2"]);
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn text_format() {
    let out = run(["macfock", "--format", "text", "verify", "cauchy", "--degree", "3"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("pass: true"));
}
