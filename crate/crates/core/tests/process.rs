use macfock::coefficients::{RatFunc, TruncPoly};
use macfock::process::{
    correlation_direct, correlation_operator, fredholm_expectation_sides, multilevel_formula, normalization,
    operator_normalization, q_independence_check, q_whittaker_limit_check, w_inversion_check, KernelVariant, LevelVars,
    Observable, ProcessSpec, WKind,
};

fn obs(s: &str) -> Observable {
    s.parse().unwrap()
}

#[test]
fn one_level_all_families() {
    let spec = ProcessSpec::new(vec![LevelVars { x: 2, y: 1 }], 3);
    for o in ["hatE1", "E1", "E2", "Ep1", "Ep2", "G1", "G2", "Gp1", "Gp2"] {
        let o = [obs(o)];
        assert_eq!(correlation_operator(&o, &spec).unwrap(), correlation_direct(&o, &spec).unwrap(), "{}", o[0]);
    }
}

#[test]
fn two_levels_mixed_ranks() {
    let spec = ProcessSpec::uniform(2, 1, 1, 3);
    for (a, b) in [("E2", "G1"), ("Ep2", "Gp1"), ("unit", "E1"), ("G1", "unit"), ("hatE1", "Gp2")] {
        let o = [obs(a), obs(b)];
        assert_eq!(correlation_operator(&o, &spec).unwrap(), correlation_direct(&o, &spec).unwrap(), "({a}, {b})");
    }
}

#[test]
fn normalization_is_the_operator_denominator() {
    for spec in [ProcessSpec::uniform(2, 1, 1, 3), ProcessSpec::uniform(3, 1, 1, 2), ProcessSpec::uniform(2, 2, 1, 2)] {
        assert_eq!(operator_normalization(&spec).unwrap(), normalization(&spec));
    }
}

#[test]
fn empty_expectations() {
    let spec = ProcessSpec::uniform(1, 0, 0, 0);
    let v = correlation_direct(&[obs("E1")], &spec).unwrap();
    assert_eq!(v, TruncPoly::constant("t/(t-1)".parse().unwrap(), 0));
    let v = correlation_direct(&[obs("hatE1")], &spec).unwrap();
    assert_eq!(v.constant_term(), RatFunc::one());
}

#[test]
fn multilevel_formulas_match_direct() {
    let spec = ProcessSpec::uniform(2, 1, 1, 3);
    for f in ["E1", "Ep1", "G1", "Gp1"] {
        let o = [obs(f), obs(f)];
        assert_eq!(multilevel_formula(&o, &spec).unwrap(), correlation_direct(&o, &spec).unwrap(), "{f}");
    }
}

#[test]
fn fredholm_generating_functions() {
    let spec = ProcessSpec::uniform(1, 1, 1, 3);
    for v in [KernelVariant::KE, KernelVariant::KEprime, KernelVariant::KG, KernelVariant::KGprime] {
        let (det, exp) = fredholm_expectation_sides(v, &spec, 2).unwrap();
        assert_eq!(det, exp, "{v:?}");
    }
    assert!(q_whittaker_limit_check(2, &spec).unwrap().ok());
}

#[test]
fn fredholm_e_kernel_is_q_free() {
    for spec in [ProcessSpec::uniform(1, 1, 1, 3), ProcessSpec::uniform(1, 2, 1, 2)] {
        assert_eq!(q_independence_check(&spec, 2).unwrap(), Ok(()));
    }
}

#[test]
fn w_inversion_symmetry() {
    for kind in [WKind::W, WKind::WTilde] {
        for (m, n) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
            assert!(w_inversion_check(kind, m, n, 3), "{kind:?} m={m} n={n}");
        }
    }
}
