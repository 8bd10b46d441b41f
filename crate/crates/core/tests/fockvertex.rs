use macfock::coefficients::{RatFunc, TruncPoly};
use macfock::fockvertex::{
    free_field_operator, gamma_apply, heisenberg_apply, ope_coefficients, pairing, residue_d, symmetrization_identity,
    FreeFieldFamily, GammaSign, KernelForm, TensorFockVector, VertexKind, VertexSeries,
};
use macfock::macdonald::{macdonald_p, macdonald_q, skew, SkewKind};
use macfock::partitions::{partitions_up_to, Partition};
use macfock::process::{cauchy_product, operator_normalization, ProcessSpec};
use macfock::symfunc::{specialize_variables, SymFunc};
use proptest::prelude::*;
use std::collections::BTreeMap;

fn sym() -> impl Strategy<Value = SymFunc<RatFunc>> {
    let ps = partitions_up_to(4);
    prop::collection::vec((0..ps.len(), -3i64..=3, -1i32..=1), 0..5).prop_map(move |terms| {
        SymFunc::from_terms(terms.iter().map(|&(i, c, a)| (ps[i].clone(), RatFunc::mono(a, 0).scale_int(c))))
    })
}

fn series(terms: Vec<(i32, i64)>, gamma_shift: bool) -> VertexSeries {
    let mut map: BTreeMap<Vec<i32>, TensorFockVector<RatFunc>> = BTreeMap::new();
    for (k, c) in terms {
        let v = TensorFockVector::vacuum(1).mul_rat(&RatFunc::int(c));
        let e = if gamma_shift { vec![k, -k + 1] } else { vec![k, -k] };
        let slot = map.entry(e).or_insert_with(|| TensorFockVector::zero(1));
        *slot = slot.add(&v);
    }
    map.retain(|_, v| !v.is_zero());
    VertexSeries { nvars: 2, window: 4, complete: true, terms: map }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn heisenberg_adjointness(v in sym(), w in sym(), n in 1i32..=3) {
        let lhs = pairing(&v, &heisenberg_apply(n, &w));
        let rhs = pairing(&heisenberg_apply(-n, &v), &w);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn residue_scale_invariant(terms in prop::collection::vec((-3i32..=3, -3i64..=3), 0..5), shifted in any::<bool>()) {
        let s = series(terms, shifted);
        let gamma = RatFunc::t();
        let alpha: RatFunc = "q/t+2".parse().unwrap();
        prop_assert_eq!(residue_d(2, &gamma, &s.rescale(&alpha)).unwrap(), residue_d(2, &gamma, &s).unwrap());
    }

    #[test]
    fn residue_inversion_invariant(terms in prop::collection::vec((-3i32..=3, -3i64..=3), 0..5)) {
        let s = series(terms, false);
        let gamma: RatFunc = "q/t".parse().unwrap();
        prop_assert_eq!(residue_d(2, &gamma, &s.invert()).unwrap(), residue_d(2, &gamma, &s).unwrap());
    }
}

#[test]
fn heisenberg_examples() {
    let vac = SymFunc::<RatFunc>::one();
    let p1 = heisenberg_apply(-1, &vac);
    assert_eq!(p1, SymFunc::p("1".parse().unwrap()));
    assert_eq!(heisenberg_apply(1, &p1), vac.mul_rat(&"(1-q)/(1-t)".parse().unwrap()));
    assert!(heisenberg_apply(2, &SymFunc::<RatFunc>::p("1,1".parse().unwrap())).is_zero());
}

#[test]
fn residue_of_constant() {
    let vac = TensorFockVector::<RatFunc>::vacuum(1);
    let s = VertexSeries { nvars: 1, window: 0, complete: true, terms: [(vec![0], vac.clone())].into_iter().collect() };
    let g = RatFunc::q();
    assert_eq!(residue_d(1, &g, &s).unwrap(), vac.mul_rat(&RatFunc::one().div(&RatFunc::one_minus(1, 0)).unwrap()));
}

#[test]
fn eta_ope_against_closed_form() {
    // (1-x)(1-qx/t)/((1-qx)(1-x/t)) expanded in x
    let order = 4;
    let x = TruncPoly::var(0, order);
    let one = TruncPoly::constant(RatFunc::one(), order);
    let lin = |c: RatFunc| one.sub(&x.mul_rat(&c));
    let closed = lin(RatFunc::one())
        .mul(&lin(RatFunc::mono(1, -1)))
        .mul(&lin(RatFunc::q()).inverse().unwrap())
        .mul(&lin(RatFunc::mono(0, -1)).inverse().unwrap());
    let c = ope_coefficients(&VertexKind::Eta, &VertexKind::Eta, order as usize);
    for (k, ck) in c.iter().enumerate() {
        assert_eq!(ck, &closed.coeff(&[k as u8]), "order {k}");
    }
}

#[test]
fn cauchy_matrix_element() {
    let spec = ProcessSpec::uniform(1, 2, 2, 5);
    let lhs = operator_normalization(&spec).unwrap();
    assert_eq!(lhs, cauchy_product(&spec.x_vars(0), &spec.y_vars(0), 5));
    assert_eq!(lhs.coeff(&[1, 0, 1]), "(1-t)/(1-q)".parse().unwrap());
}

#[test]
fn skew_matrix_elements() {
    let x = [0usize, 1];
    let prec = 3;
    for l in partitions_up_to(3) {
        let pl: SymFunc<TruncPoly> = macdonald_p(&l).unwrap().map_coeffs(|c| TruncPoly::constant(c.clone(), prec));
        let moved = gamma_apply(GammaSign::Plus, &x, &pl, prec);
        for mu in partitions_up_to(l.weight()) {
            let got = pairing(&moved, &macdonald_q(&mu).unwrap());
            let want = specialize_variables(&skew(SkewKind::P, &l, &mu).unwrap(), &x, prec);
            assert_eq!(got, want, "λ={l} μ={mu}");
        }
    }
}

#[test]
fn symmetrization_up_to_four() {
    for n in 1..=4 {
        assert!(symmetrization_identity(n), "n={n}");
    }
}

#[test]
fn e1_examples() {
    let vac = SymFunc::<RatFunc>::one();
    let out = free_field_operator(FreeFieldFamily::E, 1, KernelForm::Determinant, &vac).unwrap();
    assert_eq!(out, vac.mul_rat(&"1/(t-1)".parse().unwrap()));
    let p1 = macdonald_p(&Partition::new(vec![1])).unwrap();
    let out = free_field_operator(FreeFieldFamily::E, 1, KernelForm::Determinant, &p1).unwrap();
    assert_eq!(out, p1.mul_rat(&"(q*t-q+1)/(t*(t-1))".parse().unwrap()));
}
