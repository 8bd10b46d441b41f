use macfock::coefficients::RatFunc;
use macfock::partitions::{partitions_of, partitions_up_to, Partition};
use macfock::symfunc::specialize::{elementary_from_power_sums, power_sums};
use macfock::symfunc::{g_function, monomial, specialize, to_monomial_coefficients, Specialization, SymFunc};
use proptest::prelude::*;
use std::collections::BTreeSet;

fn permutations_of(l: &Partition, n: usize) -> BTreeSet<Vec<u32>> {
    let mut base: Vec<u32> = (0..n).map(|i| l.part(i)).collect();
    base.sort_unstable();
    let mut out = BTreeSet::new();
    loop {
        out.insert(base.clone());
        // next lexicographic permutation
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| base[i] < base[i + 1]) else { break };
        let j = (i + 1..n).rev().find(|&j| base[j] > base[i]).unwrap();
        base.swap(i, j);
        base[i + 1..].reverse();
    }
    out
}

#[test]
fn monomial_roundtrip_in_variables() {
    for d in 1..=6 {
        for l in partitions_of(d) {
            let n = d as usize;
            let red = monomial(&l).reduce_to_variables(n);
            let support: BTreeSet<Vec<u32>> = red.terms().keys().cloned().collect();
            assert_eq!(support, permutations_of(&l, n), "m_{l}");
            assert!(red.terms().values().all(|c| c.is_one()), "m_{l}");
            let back = to_monomial_coefficients(&monomial(&l));
            assert_eq!(back.len(), 1);
            assert!(back[&l].is_one());
        }
    }
}

#[test]
fn pairing_is_symmetric_and_hall_at_q_equals_t() {
    let ps = partitions_up_to(5);
    for a in &ps {
        for b in &ps {
            let (pa, pb) = (SymFunc::<RatFunc>::p(a.clone()), SymFunc::<RatFunc>::p(b.clone()));
            assert_eq!(pa.inner(&pb), pb.inner(&pa));
            let hall = pa.inner(&pb).q_to_t().unwrap();
            let want = if a == b { RatFunc::from_bigint(a.z()) } else { RatFunc::zero() };
            assert_eq!(hall, want, "<p_{a}, p_{b}>");
        }
    }
}

#[test]
fn shifted_principal_elementary() {
    for l in partitions_up_to(4) {
        for r in 1..=3 {
            let shifted = power_sums(&Specialization::Principal { lambda: l.clone(), n: 1, inverted: false }, r);
            let plain = power_sums(&Specialization::Principal { lambda: l.clone(), n: 0, inverted: false }, r);
            let lhs = elementary_from_power_sums(&shifted, r);
            let rhs = elementary_from_power_sums(&plain, r).mul(&RatFunc::mono(0, r as i32));
            assert_eq!(lhs, rhs, "λ={l} r={r}");
        }
    }
}

#[test]
fn g_under_parameter_inversion() {
    for r in 1..=3 {
        let lhs = g_function(r).invert_params();
        let rhs = g_function(r).mul_rat(&RatFunc::mono(r as i32, -(r as i32)));
        assert_eq!(lhs, rhs, "r={r}");
    }
}

fn small_sym() -> impl Strategy<Value = SymFunc<RatFunc>> {
    let ps = partitions_up_to(3);
    prop::collection::vec((0..ps.len(), -3i64..=3), 0..4)
        .prop_map(move |terms| SymFunc::from_terms(terms.iter().map(|&(i, c)| (ps[i].clone(), RatFunc::int(c)))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn specialization_is_multiplicative(f in small_sym(), g in small_sym(), a in -3i64..=3, b in -2i32..=2) {
        let spec = Specialization::Values(vec![RatFunc::int(a), RatFunc::mono(b, 1)]);
        prop_assert_eq!(specialize(&f.mul(&g), &spec), specialize(&f, &spec).mul(&specialize(&g, &spec)));
        prop_assert_eq!(specialize(&f.add(&g), &spec), specialize(&f, &spec).add(&specialize(&g, &spec)));
    }
}
