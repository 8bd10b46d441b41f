use macfock::coefficients::{RatFunc, Target, TruncPoly};
use proptest::prelude::*;

/// A small Laurent polynomial `Σ c q^a t^b`.
fn laurent() -> impl Strategy<Value = RatFunc> {
    prop::collection::vec((-3i64..=3, -2i32..=2, -2i32..=2), 1..4).prop_map(|terms| {
        terms.iter().fold(RatFunc::zero(), |acc, &(c, a, b)| acc.add(&RatFunc::mono(a, b).scale_int(c)))
    })
}

fn ratfunc() -> impl Strategy<Value = RatFunc> {
    (laurent(), laurent()).prop_filter_map("zero denominator", |(n, d)| n.div(&d).ok())
}

fn nonzero() -> impl Strategy<Value = RatFunc> {
    ratfunc().prop_filter("zero", |x| !x.is_zero())
}

fn inverted(x: &RatFunc) -> RatFunc {
    x.substitute(Target::Mono(-4, 0), Target::Mono(0, -4)).unwrap()
}

/// A truncated polynomial in two variables with small integer coefficients.
fn truncpoly(prec: u32) -> impl Strategy<Value = TruncPoly> {
    prop::collection::vec((-3i64..=3, 0u8..3, 0u8..3), 0..5).prop_map(move |terms| {
        terms.iter().fold(TruncPoly::zero_with(prec), |acc, &(c, i, j)| {
            acc.add(&TruncPoly::monomial(vec![i, j], RatFunc::int(c), prec))
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn field_axioms(a in ratfunc(), b in ratfunc(), c in ratfunc()) {
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
    }

    #[test]
    fn division_cancels(a in ratfunc(), b in nonzero()) {
        prop_assert_eq!(a.div(&b).unwrap().mul(&b), a);
    }

    #[test]
    fn rendering_roundtrips(a in ratfunc()) {
        let back: RatFunc = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn parameter_inversion_is_involution(a in ratfunc()) {
        prop_assert_eq!(inverted(&inverted(&a)), a.clone());
        prop_assert_eq!(a.invert_params(), inverted(&a));
    }

    #[test]
    fn truncated_product_associative(f in truncpoly(4), g in truncpoly(4), h in truncpoly(4)) {
        prop_assert_eq!(f.mul(&g).mul(&h), f.mul(&g.mul(&h)));
    }

    #[test]
    fn truncation_commutes_with_product(f in truncpoly(6), g in truncpoly(6)) {
        prop_assert_eq!(f.truncate(3).mul(&g.truncate(3)).truncate(3), f.mul(&g).truncate(3));
    }

    #[test]
    fn inverse_of_unit(f in truncpoly(4)) {
        let u = TruncPoly::constant(RatFunc::one(), 4).add(&f.sub(&TruncPoly::constant(f.constant_term(), 4)));
        let one = TruncPoly::constant(RatFunc::one(), 4);
        prop_assert_eq!(u.mul(&u.inverse().unwrap()), one);
    }
}

#[test]
fn canonical_text_form() {
    let x: RatFunc = "(1+q)*(1-t)/(1-q*t)".parse().unwrap();
    assert_eq!(x.to_string(), "(q*t-q+t-1)/(q*t-1)");
}

#[test]
fn quarter_powers_round_trip() {
    let x = RatFunc::mono_quarter(1, -3);
    assert!(!x.is_integral());
    assert_eq!(x.to_string().parse::<RatFunc>().unwrap(), x);
    assert!(x.expect_integral().is_err());
}
