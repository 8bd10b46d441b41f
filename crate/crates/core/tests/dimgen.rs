use macfock::coefficients::RatFunc;
use macfock::dimgen::{
    current_block, generalized_block, generalized_cauchy_sides, generalized_eigenvalue_with, generalized_macdonald_p,
    generalized_macdonald_p_with, generalized_macdonald_q, phi_gamma_exchange_sides, tensor_monomial,
    tensor_monomial_coefficients, thm_1_3_both_sides, thm_1_3_both_sides_with, unit_spectral, zero_mode_apply,
    MReading, TensorFockVector,
};
use macfock::error::Error;
use macfock::macdonald::{macdonald_p, macdonald_q};
use macfock::partitions::{partitions_up_to, tuples_of, Dominance, PartitionTuple};
use macfock::process::ProcessSpec;

fn u2() -> Vec<RatFunc> {
    vec![RatFunc::one(), RatFunc::int(2)]
}

fn u3() -> Vec<RatFunc> {
    vec![RatFunc::one(), RatFunc::int(2), RatFunc::int(3)]
}

fn explicit_eigenvalue(u: &[RatFunc], l: &PartitionTuple) -> RatFunc {
    let mut acc = RatFunc::zero();
    for (ui, li) in u.iter().zip(&l.0) {
        let mut e = RatFunc::one();
        for (k, &part) in li.parts().iter().enumerate() {
            let term = RatFunc::mono(part as i32, 0).sub(&RatFunc::one()).mul(&RatFunc::mono(0, -(k as i32 + 1)));
            e = e.add(&term.mul(&RatFunc::t().sub(&RatFunc::one())));
        }
        acc = acc.add(&ui.mul(&e));
    }
    acc
}

#[test]
fn vacuum_eigenvalue_is_level() {
    for m in 1..=3 {
        let v = TensorFockVector::vacuum(m);
        assert_eq!(zero_mode_apply(m, &v).unwrap(), v.mul_rat(&RatFunc::int(m as i64)));
    }
}

#[test]
fn level_one_reduces_to_macdonald() {
    for l in partitions_up_to(3) {
        let t = PartitionTuple(vec![l.clone()]);
        assert_eq!(generalized_macdonald_p(&t).unwrap(), TensorFockVector::from_sym(&macdonald_p(&l).unwrap()));
        assert_eq!(generalized_macdonald_q(&t).unwrap(), TensorFockVector::from_sym(&macdonald_q(&l).unwrap()));
    }
}

#[test]
fn additive_eigenvalue_formula() {
    for u in [unit_spectral(2), u2(), u3()] {
        for d in 0..=3 {
            for l in tuples_of(u.len(), d) {
                assert_eq!(generalized_eigenvalue_with(&u, &l), explicit_eigenvalue(&u, &l), "{l}");
            }
        }
    }
}

fn assert_triangular_eigenvector(u: &[RatFunc], l: &PartitionTuple) {
    let f = generalized_macdonald_p_with(u, l).unwrap();
    let b = current_block(u, l.weight()).unwrap();
    assert_eq!(b.right_action(&f), f.mul_rat(&explicit_eigenvalue(u, l)), "eigen {l}");
    for (k, c) in tensor_monomial_coefficients(&f, l.weight()) {
        if &k == l {
            assert!(c.is_one());
        } else {
            assert!(matches!(k.dominance(l), Ok(Dominance::LessEq)), "{k} in P_{l}");
        }
    }
}

#[test]
fn generic_spectral_triangular_eigenvectors() {
    for d in 0..=2 {
        for l in tuples_of(2, d) {
            assert_triangular_eigenvector(&u2(), &l);
        }
    }
    for d in 0..=1 {
        for l in tuples_of(3, d) {
            assert_triangular_eigenvector(&u3(), &l);
        }
    }
}

#[test]
fn unit_spectral_parameters_degenerate() {
    let r = generalized_macdonald_p(&"1|0".parse().unwrap());
    assert!(matches!(r, Err(Error::SingularSystem(_))));
    // the weight-one block is a Jordan block whose only eigen-bra is ⟨m_{0|1}|
    let u = unit_spectral(2);
    let low: PartitionTuple = "0|1".parse().unwrap();
    let m = tensor_monomial(&low);
    let b = current_block(&u, 1).unwrap();
    assert_eq!(b.right_action(&m), m.mul_rat(&explicit_eigenvalue(&u, &low)));
    let high = tensor_monomial(&"1|0".parse().unwrap());
    assert_ne!(b.right_action(&high), high.mul_rat(&explicit_eigenvalue(&u, &low)));
}

#[test]
fn dual_bases() {
    for d in 0..=2 {
        let b = generalized_block(&u2(), d).unwrap();
        for (i, p) in b.p.iter().enumerate() {
            for (j, q) in b.q.iter().enumerate() {
                assert_eq!(p.pairing(q), if i == j { RatFunc::one() } else { RatFunc::zero() });
            }
        }
    }
}

#[test]
fn generalized_cauchy_generic() {
    let spec = ProcessSpec::uniform(2, 1, 1, 2);
    let (a, b) = generalized_cauchy_sides(&u2(), &spec).unwrap();
    assert_eq!(a, b);
}

#[test]
fn expectation_level_one() {
    let r = thm_1_3_both_sides(&ProcessSpec::uniform(1, 1, 1, 2)).unwrap();
    assert!(r.equal());
    assert_eq!(r.matching(), vec![MReading::OuterIndex, MReading::RunningIndex, MReading::Exchange]);
}

#[test]
fn expectation_level_two_reading() {
    let spec = ProcessSpec::uniform(2, 1, 1, 2);
    let r = thm_1_3_both_sides_with(&u2(), &spec).unwrap();
    assert!(r.equal());
    assert_eq!(r.matching(), vec![MReading::Exchange]);
    let r = thm_1_3_both_sides(&spec).unwrap();
    assert!(r.lhs.is_none());
    assert_eq!(r.matching(), vec![MReading::Exchange]);
}

#[test]
fn phi_minus_gamma_exchange() {
    for nx in 1..=2 {
        let (a, b) = phi_gamma_exchange_sides(nx, 3).unwrap();
        assert_eq!(a, b);
    }
}
