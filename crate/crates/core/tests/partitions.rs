use macfock::partitions::{
    maya_from_partition, partition_from_maya, partitions_of, partitions_up_to, tuples_of, Dominance, Partition,
    PartitionTuple,
};
use proptest::prelude::*;

fn leq(a: &Partition, b: &Partition) -> bool {
    matches!(a.dominance(b), Dominance::LessEq | Dominance::Equal)
}

#[test]
fn partition_counts() {
    // p(n) for n = 0..=10
    let want = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42];
    for (n, &w) in want.iter().enumerate() {
        assert_eq!(partitions_of(n as u32).len(), w, "p({n})");
    }
}

#[test]
fn dominance_is_a_partial_order() {
    for n in 0..=6 {
        let ps = partitions_of(n);
        for a in &ps {
            assert!(leq(a, a));
            for b in &ps {
                if leq(a, b) && leq(b, a) {
                    assert_eq!(a, b);
                }
                for c in &ps {
                    if leq(a, b) && leq(b, c) {
                        assert!(leq(a, c), "{a} ≤ {b} ≤ {c}");
                    }
                }
            }
        }
    }
}

#[test]
fn transpose_reverses_dominance() {
    for n in 0..=6 {
        let ps = partitions_of(n);
        for a in &ps {
            assert_eq!(&a.transpose().transpose(), a);
            for b in &ps {
                assert_eq!(leq(a, b), leq(&b.transpose(), &a.transpose()), "{a} vs {b}");
            }
        }
    }
}

#[test]
fn maya_charge_zero_and_displacement() {
    for l in partitions_up_to(8) {
        let m = maya_from_partition(&l);
        assert_eq!(m.plus.len(), m.minus.len(), "{l}");
        // Σ_{s∈S+} (s + 1/2) + Σ_{s∈S-} (-s - 1/2) for doubled s
        let disp: i64 = m.plus.iter().map(|&s| (s as i64 + 1) / 2).sum::<i64>()
            + m.minus.iter().map(|&s| (-s as i64 - 1) / 2).sum::<i64>();
        assert_eq!(disp, l.weight() as i64, "{l}");
    }
}

#[test]
fn tuple_counts() {
    // number of bipartitions of n
    let want = [1, 2, 5, 10, 20];
    for (n, &w) in want.iter().enumerate() {
        assert_eq!(tuples_of(2, n as u32).len(), w);
    }
}

fn partition() -> impl Strategy<Value = Partition> {
    prop::collection::vec(1u32..6, 0..6).prop_map(Partition::new)
}

proptest! {
    #[test]
    fn maya_roundtrip(l in partition()) {
        prop_assert_eq!(partition_from_maya(&maya_from_partition(&l)).unwrap(), l);
    }

    #[test]
    fn text_roundtrip(l in partition()) {
        prop_assert_eq!(l.to_string().parse::<Partition>().unwrap(), l);
    }

    #[test]
    fn tuple_text_roundtrip(a in partition(), b in partition(), c in partition()) {
        let t = PartitionTuple(vec![a, b, c]);
        prop_assert_eq!(t.to_string().parse::<PartitionTuple>().unwrap(), t);
    }
}
