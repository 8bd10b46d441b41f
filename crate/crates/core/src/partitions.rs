//! Partitions, dominance, Maya diagrams and partition tuples.

use crate::coefficients::RatFunc;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

/// Weakly decreasing list of positive parts.
///
/// The `Ord` instance is the canonical linear extension of dominance used
/// throughout: by weight, then reverse lexicographic on parts, so within one
/// weight `(4)` comes first and `(1,1,1,1)` last.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Partition(Vec<u32>);

impl Ord for Partition {
    fn cmp(&self, o: &Self) -> Ordering {
        self.weight().cmp(&o.weight()).then_with(|| o.0.cmp(&self.0))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Result of comparing two partitions (or tuples) in a dominance order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dominance {
    LessEq,
    GreaterEq,
    Equal,
    Incomparable,
    DifferentWeight,
}

impl Partition {
    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// Sorts and drops zeros.
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Part `i` (0-based), zero past the length.
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    /// Multiplicity of `i` among the parts.
    pub fn multiplicity(&self, i: u32) -> usize {
        self.0.iter().filter(|&&p| p == i).count()
    }

    pub fn transpose(&self) -> Self {
        let n = self.part(0) as usize;
        Partition((1..=n as u32).map(|j| self.0.iter().filter(|&&p| p >= j).count() as u32).collect())
    }

    /// `μ ⊆ λ` as Young diagrams.
    pub fn contains(&self, mu: &Partition) -> bool {
        mu.len() <= self.len() && mu.0.iter().zip(&self.0).all(|(a, b)| a <= b)
    }

    /// Union of parts, e.g. the partition of a product `p_λ p_μ`.
    pub fn union(&self, o: &Partition) -> Partition {
        let mut v = self.0.clone();
        v.extend_from_slice(&o.0);
        Partition::new(v)
    }

    /// `z_λ = ∏ m_i! i^{m_i}`.
    pub fn z(&self) -> BigInt {
        let mut acc = BigInt::from(1);
        let mut i = 0;
        while i < self.0.len() {
            let p = self.0[i];
            let mut m = 0u32;
            while i < self.0.len() && self.0[i] == p {
                m += 1;
                i += 1;
                acc *= BigInt::from(m) * BigInt::from(p);
            }
        }
        acc
    }

    /// `z_λ(q,t) = z_λ ∏ (1-q^{λ_i})/(1-t^{λ_i})`.
    pub fn z_qt(&self) -> RatFunc {
        let mut acc = RatFunc::from_bigint(self.z());
        for &p in &self.0 {
            let f = RatFunc::one_minus(p as i32, 0).div(&RatFunc::one_minus(0, p as i32)).expect("nonzero");
            acc = acc.mul(&f);
        }
        acc
    }

    /// Dominance comparison of `self` against `o`.
    pub fn dominance(&self, o: &Partition) -> Dominance {
        if self.weight() != o.weight() {
            return Dominance::DifferentWeight;
        }
        if self == o {
            return Dominance::Equal;
        }
        let n = self.len().max(o.len());
        let (mut le, mut ge) = (true, true);
        let (mut a, mut b) = (0u32, 0u32);
        for i in 0..n {
            a += self.part(i);
            b += o.part(i);
            if a > b {
                le = false;
            }
            if a < b {
                ge = false;
            }
        }
        match (le, ge) {
            (true, _) => Dominance::LessEq,
            (_, true) => Dominance::GreaterEq,
            _ => Dominance::Incomparable,
        }
    }

    /// `self ≤ o` in dominance (including equality).
    pub fn dominated_by(&self, o: &Partition) -> bool {
        matches!(self.dominance(o), Dominance::LessEq | Dominance::Equal)
    }

    /// Partitions obtained by removing one box.
    pub fn remove_box(&self) -> Vec<Partition> {
        let mut out = Vec::new();
        for i in 0..self.len() {
            if self.part(i) > self.part(i + 1) {
                let mut v = self.0.clone();
                v[i] -= 1;
                out.push(Partition::new(v));
            }
        }
        out
    }
}

/// All partitions of `d` in canonical order.
pub fn partitions_of(d: u32) -> Vec<Partition> {
    fn rec(rem: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=rem.min(max)).rev() {
            cur.push(p);
            rec(rem - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(d, d, &mut Vec::new(), &mut out);
    out
}

/// All partitions of weight at most `d`, in canonical order.
pub fn partitions_up_to(d: u32) -> Vec<Partition> {
    (0..=d).flat_map(partitions_of).collect()
}

/// Partitions of `d` with at most `n` parts.
pub fn partitions_of_len(d: u32, n: usize) -> Vec<Partition> {
    partitions_of(d).into_iter().filter(|p| p.len() <= n).collect()
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for Partition {
    type Err = Error;
    /// Parses `"2,1"`; the empty string and `"0"` are the empty partition.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        let mut parts = Vec::new();
        for piece in s.split(',') {
            let v: u32 = piece.trim().parse().map_err(|_| Error::Parse(format!("bad partition part `{piece}`")))?;
            parts.push(v);
        }
        if parts.windows(2).any(|w| w[0] < w[1] && w[1] > 0) {
            return Err(Error::Parse(format!("parts must be weakly decreasing: `{s}`")));
        }
        Ok(Partition::new(parts))
    }
}

impl From<&[u32]> for Partition {
    fn from(v: &[u32]) -> Self {
        Partition::new(v.to_vec())
    }
}

/// Maya diagram stored as doubled half-integers (odd integers).
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct MayaDiagram {
    /// Positive members `2s > 0`, increasing.
    pub plus: Vec<i32>,
    /// Negative half-integers `2s < 0` that are missing, increasing.
    pub minus: Vec<i32>,
}

impl MayaDiagram {
    pub fn charge(&self) -> i64 {
        self.plus.len() as i64 - self.minus.len() as i64
    }

    /// Whether the doubled half-integer `s2` is occupied.
    pub fn contains(&self, s2: i32) -> bool {
        if s2 > 0 {
            self.plus.binary_search(&s2).is_ok()
        } else {
            self.minus.binary_search(&s2).is_err()
        }
    }

    /// Toggles occupancy of position `s2`.
    pub fn toggle(&mut self, s2: i32) {
        let set = if s2 > 0 { &mut self.plus } else { &mut self.minus };
        match set.binary_search(&s2) {
            Ok(i) => {
                set.remove(i);
            }
            Err(i) => set.insert(i, s2),
        }
    }

    /// Number of occupied positions strictly greater than `s2`.
    pub fn occupied_above(&self, s2: i32) -> i64 {
        if s2 >= 0 {
            self.plus.iter().filter(|&&x| x > s2).count() as i64
        } else {
            // positives plus negatives in (s2, 0) that are present
            let neg_slots = ((-s2 - 1) / 2) as i64;
            let missing = self.minus.iter().filter(|&&x| x > s2).count() as i64;
            self.plus.len() as i64 + neg_slots - missing
        }
    }
}

/// `M(λ) = {λ_i - i + 1/2}`.
pub fn maya_from_partition(l: &Partition) -> MayaDiagram {
    let n = l.len();
    let mut plus = Vec::new();
    let mut present_neg = Vec::new();
    for i in 1..=(n + 1) {
        let s2 = 2 * (l.part(i - 1) as i32 - i as i32) + 1;
        if s2 > 0 {
            plus.push(s2);
        } else {
            present_neg.push(s2);
        }
    }
    // beyond index n+1 every member is λ_i - i + 1/2 with λ_i = 0, all negative
    let lowest = 2 * (-(n as i32) - 1) + 1;
    let mut minus = Vec::new();
    let mut s2 = -1;
    while s2 > lowest {
        if !present_neg.contains(&s2) {
            minus.push(s2);
        }
        s2 -= 2;
    }
    plus.sort_unstable();
    minus.sort_unstable();
    MayaDiagram { plus, minus }
}

/// Inverse of [`maya_from_partition`].
pub fn partition_from_maya(m: &MayaDiagram) -> Result<Partition> {
    if m.charge() != 0 {
        return Err(Error::NonzeroCharge(m.charge()));
    }
    // members in decreasing order s_1 > s_2 > ...; λ_i = s_i + i - 1/2
    let lowest_missing = m.minus.first().copied().unwrap_or(1).min(1);
    let mut members: Vec<i32> = m.plus.iter().rev().copied().collect();
    let mut s2 = -1;
    while s2 >= lowest_missing {
        if m.minus.binary_search(&s2).is_err() {
            members.push(s2);
        }
        s2 -= 2;
    }
    let mut parts = Vec::new();
    for (i, &s2) in members.iter().enumerate() {
        // 2λ_i = s2 + 2(i+1) - 1
        let twice = s2 + 2 * (i as i32 + 1) - 1;
        parts.push((twice / 2) as u32);
    }
    Ok(Partition::new(parts))
}

/// Ordered tuple of partitions.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct PartitionTuple(pub Vec<Partition>);

impl PartitionTuple {
    pub fn vacuum(m: usize) -> Self {
        PartitionTuple(vec![Partition::empty(); m])
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().map(|p| p.weight()).sum()
    }

    /// Generalized dominance: cumulative sums across components.
    pub fn dominance(&self, o: &PartitionTuple) -> Result<Dominance> {
        if self.arity() != o.arity() {
            return Err(Error::ArityMismatch(self.arity(), o.arity()));
        }
        if self.weight() != o.weight() {
            return Ok(Dominance::DifferentWeight);
        }
        if self == o {
            return Ok(Dominance::Equal);
        }
        let (mut le, mut ge) = (true, true);
        let (mut base_a, mut base_b) = (0u32, 0u32);
        for (la, lb) in self.0.iter().zip(&o.0) {
            let n = la.len().max(lb.len()).max(1);
            let (mut a, mut b) = (base_a, base_b);
            for i in 0..n {
                a += la.part(i);
                b += lb.part(i);
                if a > b {
                    le = false;
                }
                if a < b {
                    ge = false;
                }
            }
            base_a += la.weight();
            base_b += lb.weight();
        }
        Ok(match (le, ge) {
            (true, _) => Dominance::LessEq,
            (_, true) => Dominance::GreaterEq,
            _ => Dominance::Incomparable,
        })
    }
}

/// Canonical order on tuples: by weight, then componentwise canonical order
/// reversed lexicographically so that the generalized dominance maximum of a
/// block comes first.
impl Ord for PartitionTuple {
    fn cmp(&self, o: &Self) -> Ordering {
        self.weight().cmp(&o.weight()).then_with(|| {
            for (a, b) in self.0.iter().zip(&o.0) {
                let c = b.weight().cmp(&a.weight()).then_with(|| a.cmp(b));
                if c != Ordering::Equal {
                    return c;
                }
            }
            self.0.len().cmp(&o.0.len())
        })
    }
}

impl PartialOrd for PartitionTuple {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// All `m`-tuples of total weight `d` in canonical order.
pub fn tuples_of(m: usize, d: u32) -> Vec<PartitionTuple> {
    fn rec(m: usize, d: u32, cur: &mut Vec<Partition>, out: &mut Vec<PartitionTuple>) {
        if m == 1 {
            for p in partitions_of(d) {
                cur.push(p);
                out.push(PartitionTuple(cur.clone()));
                cur.pop();
            }
            return;
        }
        for k in (0..=d).rev() {
            for p in partitions_of(k) {
                cur.push(p);
                rec(m - 1, d - k, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    if m > 0 {
        rec(m, d, &mut Vec::new(), &mut out);
    }
    out.sort();
    out
}

impl fmt::Display for PartitionTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> =
            self.0.iter().map(|p| if p.is_empty() { "0".to_string() } else { p.to_string() }).collect();
        write!(f, "{}", s.join("|"))
    }
}

impl fmt::Debug for PartitionTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

impl FromStr for PartitionTuple {
    type Err = Error;
    /// Parses `"2,1|0|1"`; a component `0` or empty is the empty partition.
    fn from_str(s: &str) -> Result<Self> {
        let comps: Result<Vec<Partition>> = s.split('|').map(|c| c.parse()).collect();
        Ok(PartitionTuple(comps?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn counts_and_order() {
        assert_eq!(partitions_of(0), vec![Partition::empty()]);
        let four: Vec<String> = partitions_of(4).iter().map(|x| x.to_string()).collect();
        assert_eq!(four, ["4", "3,1", "2,2", "2,1,1", "1,1,1,1"]);
        assert_eq!(partitions_of(6).len(), 11);
    }

    #[test]
    fn dominance_examples() {
        assert_eq!(p("2,1,1").dominance(&p("3,1")), Dominance::LessEq);
        assert_eq!(p("3,1,1,1").dominance(&p("2,2,2")), Dominance::Incomparable);
        assert_eq!(p("2,1").dominance(&p("2,1")), Dominance::Equal);
        assert_eq!(p("2").dominance(&p("2,1")), Dominance::DifferentWeight);
    }

    #[test]
    fn z_values() {
        assert_eq!(p("2,1").z(), BigInt::from(2));
        assert_eq!(p("1,1,1").z(), BigInt::from(6));
        assert_eq!(Partition::empty().z_qt(), RatFunc::one());
        assert_eq!(p("1").z_qt(), "(1-q)/(1-t)".parse().unwrap());
    }

    #[test]
    fn transpose_and_containment() {
        assert_eq!(p("3,1").transpose(), p("2,1,1"));
        assert_eq!(p("2,1").transpose(), p("2,1"));
        assert!(p("3,1").contains(&p("2")));
        assert!(!p("2").contains(&p("1,1")));
    }

    #[test]
    fn maya_examples() {
        let m = maya_from_partition(&p("2,1"));
        assert_eq!(m.plus, vec![3]);
        assert_eq!(m.minus, vec![-3]);
        let e = maya_from_partition(&Partition::empty());
        assert!(e.plus.is_empty() && e.minus.is_empty());
        for l in partitions_up_to(6) {
            assert_eq!(partition_from_maya(&maya_from_partition(&l)).unwrap(), l);
        }
        let bad = MayaDiagram { plus: vec![1], minus: vec![] };
        assert_eq!(partition_from_maya(&bad), Err(Error::NonzeroCharge(1)));
    }

    #[test]
    fn tuple_examples() {
        let a: PartitionTuple = "1|0".parse().unwrap();
        let b: PartitionTuple = "0|1".parse().unwrap();
        assert_eq!(a.dominance(&b).unwrap(), Dominance::GreaterEq);
        let c: PartitionTuple = "2|0".parse().unwrap();
        let d: PartitionTuple = "1,1|0".parse().unwrap();
        assert_eq!(c.dominance(&d).unwrap(), Dominance::GreaterEq);
        let e: PartitionTuple = "1".parse().unwrap();
        assert_eq!(a.dominance(&e), Err(Error::ArityMismatch(2, 1)));
        assert_eq!(tuples_of(2, 2).len(), 5);
    }
}
