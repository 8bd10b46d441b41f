use macfock::coefficients::{RatFunc, Target};
use macfock::macdonald::{check_block, macdonald_p, macdonald_q, partial_fraction_sum, skew, SkewKind};
use macfock::partitions::{partitions_up_to, Partition};
use macfock::symfunc::{schur, to_monomial_coefficients, MPoly, SymFunc};
use std::collections::BTreeMap;

fn p(s: &str) -> Partition {
    s.parse().unwrap()
}

fn map_coeffs(f: &SymFunc<RatFunc>, g: impl Fn(&RatFunc) -> RatFunc) -> SymFunc<RatFunc> {
    SymFunc::from_terms(f.terms().iter().map(|(k, c)| (k.clone(), g(c))))
}

#[test]
fn two_row_coefficient() {
    let c = to_monomial_coefficients(&macdonald_p(&p("2")).unwrap());
    assert!(c[&p("2")].is_one());
    assert_eq!(c[&p("1,1")], "(1+q)*(1-t)/(1-q*t)".parse().unwrap());
}

#[test]
fn blocks_triangular_and_orthogonal() {
    for d in 0..=5 {
        check_block(d).unwrap();
    }
}

#[test]
fn schur_at_q_equals_t() {
    for l in partitions_up_to(5) {
        let at = map_coeffs(&macdonald_p(&l).unwrap(), |c| c.q_to_t().unwrap());
        assert_eq!(at, schur(&l), "P_{l} at q=t");
    }
}

#[test]
fn monomial_at_t_equals_one() {
    for l in partitions_up_to(5) {
        let f = map_coeffs(&macdonald_p(&l).unwrap(), |c| c.substitute(Target::Q, Target::Mono(0, 0)).unwrap());
        let m = to_monomial_coefficients(&f);
        assert_eq!(m.len(), 1, "P_{l} at t=1");
        assert!(m[&l].is_one());
    }
}

#[test]
fn self_dual_under_inversion() {
    for l in partitions_up_to(5) {
        let f = macdonald_p(&l).unwrap();
        assert_eq!(f.invert_params(), f, "P_{l}");
    }
}

#[test]
fn branching_drops_a_variable() {
    for l in partitions_up_to(4) {
        let n = l.len().max(1);
        let f = macdonald_p(&l).unwrap();
        assert_eq!(f.reduce_to_variables(n + 1).drop_last_variable(), f.reduce_to_variables(n), "P_{l}");
    }
}

#[test]
fn skew_functions_reassemble_coproduct() {
    for l in partitions_up_to(4) {
        let whole = macdonald_p(&l).unwrap().coproduct();
        let mut sum: BTreeMap<(Partition, Partition), RatFunc> = BTreeMap::new();
        for mu in partitions_up_to(l.weight()) {
            let s = skew(SkewKind::P, &l, &mu).unwrap();
            let pm = macdonald_p(&mu).unwrap();
            for (a, ca) in s.terms() {
                for (b, cb) in pm.terms() {
                    let slot = sum.entry((a.clone(), b.clone())).or_insert_with(RatFunc::zero);
                    *slot = slot.add(&ca.mul(cb));
                }
            }
        }
        sum.retain(|_, c| !c.is_zero());
        assert_eq!(sum, whole, "Δ P_{l}");
    }
}

#[test]
fn q_is_p_over_norm() {
    for l in partitions_up_to(4) {
        let pf = macdonald_p(&l).unwrap();
        let qf = macdonald_q(&l).unwrap();
        assert!(pf.inner(&qf).is_one(), "<P_{l}, Q_{l}>");
    }
}

#[test]
fn partial_fractions_small() {
    for nu in [vec![0], vec![2], vec![1, 1], vec![2, 0, 1], vec![1, 2, 2]] {
        let n = nu.len();
        let total: i32 = nu.iter().map(|&x| x as i32).sum();
        let want = MPoly::constant(n, RatFunc::mono(-total, 0).sub(&RatFunc::one()));
        assert_eq!(partial_fraction_sum(&nu).unwrap(), want, "ν={nu:?}");
    }
}
