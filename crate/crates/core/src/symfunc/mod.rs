//! The ring of symmetric functions in the power-sum basis.
//!
//! Keys are partitions `λ` standing for `p_λ`. Under the boson-symmetric
//! function correspondence the same type is a Fock vector.

pub mod mpoly;
pub mod specialize;

pub use mpoly::MPoly;
pub use specialize::{
    complete_from_power_sums, eigenvalue_e_g, elementary_from_power_sums, g_from_power_sums, power_sums,
    principal_power_sum, specialize, specialize_variables, EigenKind, Specialization,
};

use crate::coefficients::{binom, Coeff, RatFunc};
use crate::partitions::{partitions_of, Partition};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

#[derive(Clone, PartialEq, Debug)]
pub struct SymFunc<C: Coeff> {
    terms: BTreeMap<Partition, C>,
}

impl<C: Coeff> Default for SymFunc<C> {
    fn default() -> Self {
        SymFunc::zero()
    }
}

impl<C: Coeff> SymFunc<C> {
    pub fn zero() -> Self {
        SymFunc { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        SymFunc::p(Partition::empty())
    }

    /// The basis element `p_λ`.
    pub fn p(l: Partition) -> Self {
        SymFunc::term(l, C::one())
    }

    pub fn term(l: Partition, c: C) -> Self {
        let mut s = SymFunc::zero();
        s.add_term(l, c);
        s
    }

    pub fn from_terms<I: IntoIterator<Item = (Partition, C)>>(it: I) -> Self {
        let mut s = SymFunc::zero();
        for (l, c) in it {
            s.add_term(l, c);
        }
        s
    }

    pub fn terms(&self) -> &BTreeMap<Partition, C> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Partition, C> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, l: &Partition) -> C {
        self.terms.get(l).cloned().unwrap_or_else(C::zero)
    }

    pub fn add_term(&mut self, l: Partition, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&l) {
            Some(v) => {
                *v = v.add(&c);
                if v.is_zero() {
                    self.terms.remove(&l);
                }
            }
            None => {
                self.terms.insert(l, c);
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (l, c) in &o.terms {
            out.add_term(l.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (l, c) in &o.terms {
            out.add_term(l.clone(), c.neg());
        }
        out
    }

    pub fn neg(&self) -> Self {
        SymFunc { terms: self.terms.iter().map(|(l, c)| (l.clone(), c.neg())).collect() }
    }

    pub fn scale(&self, c: &C) -> Self {
        SymFunc::from_terms(self.terms.iter().map(|(l, v)| (l.clone(), v.mul(c))))
    }

    pub fn mul_rat(&self, r: &RatFunc) -> Self {
        if r.is_zero() {
            return SymFunc::zero();
        }
        SymFunc::from_terms(self.terms.iter().map(|(l, v)| (l.clone(), v.mul_rat(r))))
    }

    /// Product in the free algebra on `p_1, p_2, ...`.
    pub fn mul(&self, o: &Self) -> Self {
        let mut out = SymFunc::zero();
        for (la, ca) in &self.terms {
            for (lb, cb) in &o.terms {
                out.add_term(la.union(lb), ca.mul(cb));
            }
        }
        out
    }

    /// Homogeneous component of degree `d`.
    pub fn degree_part(&self, d: u32) -> Self {
        SymFunc {
            terms: self.terms.iter().filter(|(l, _)| l.weight() == d).map(|(l, c)| (l.clone(), c.clone())).collect(),
        }
    }

    /// Drops all components above degree `d`.
    pub fn truncate_degree(&self, d: u32) -> Self {
        SymFunc {
            terms: self.terms.iter().filter(|(l, _)| l.weight() <= d).map(|(l, c)| (l.clone(), c.clone())).collect(),
        }
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(|l| l.weight()).max()
    }

    pub fn map_coeffs<D: Coeff, F: Fn(&C) -> D>(&self, f: F) -> SymFunc<D> {
        SymFunc::from_terms(self.terms.iter().map(|(l, c)| (l.clone(), f(c))))
    }

    /// Image in `n` variables, `p_r ↦ Σ x_i^r`.
    pub fn reduce_to_variables(&self, n: usize) -> MPoly<C> {
        let mut cache: HashMap<u32, MPoly<C>> = HashMap::new();
        let mut out = MPoly::zero(n);
        for (l, c) in &self.terms {
            let mut term = MPoly::constant(n, c.clone());
            for &r in l.parts() {
                let pr = cache.entry(r).or_insert_with(|| MPoly::power_sum(n, r)).clone();
                term = term.mul(&pr);
            }
            out = out.add(&term);
        }
        out
    }

    /// `Δ f` as a map `(λ, μ) ↦ c` meaning `c·p_λ ⊗ p_μ`.
    pub fn coproduct(&self) -> BTreeMap<(Partition, Partition), C> {
        let mut out: BTreeMap<(Partition, Partition), C> = BTreeMap::new();
        for (l, c) in &self.terms {
            for (left, right, k) in split_partition(l) {
                let v = c.mul_rat(&RatFunc::from_bigint(k));
                let key = (left, right);
                let nv = match out.get(&key) {
                    Some(old) => old.add(&v),
                    None => v,
                };
                if nv.is_zero() {
                    out.remove(&key);
                } else {
                    out.insert(key, nv);
                }
            }
        }
        out
    }
}

impl SymFunc<RatFunc> {
    /// The `(q,t)` scalar product `⟨p_λ, p_μ⟩ = δ z_λ(q,t)`.
    pub fn inner(&self, o: &Self) -> RatFunc {
        let mut acc = RatFunc::zero();
        for (l, c) in &self.terms {
            if let Some(d) = o.terms.get(l) {
                acc = acc.add(&c.mul(d).mul(&z_qt(l)));
            }
        }
        acc
    }

    /// Hall scalar product `⟨p_λ, p_μ⟩ = δ z_λ`.
    pub fn hall_inner(&self, o: &Self) -> RatFunc {
        let mut acc = RatFunc::zero();
        for (l, c) in &self.terms {
            if let Some(d) = o.terms.get(l) {
                acc = acc.add(&c.mul(d).mul(&RatFunc::from_bigint(l.z())));
            }
        }
        acc
    }

    /// Converts rational coefficients into another coefficient ring.
    pub fn lift<D: Coeff>(&self) -> SymFunc<D> {
        self.map_coeffs(|c| D::from_rat(c))
    }

    pub fn invert_params(&self) -> Self {
        self.map_coeffs(|c| c.invert_params())
    }
}

/// Pairing of a general-coefficient function against a rational one.
pub fn inner_mixed<C: Coeff>(f: &SymFunc<C>, g: &SymFunc<RatFunc>) -> C {
    let mut acc = C::zero();
    for (l, c) in f.terms() {
        if let Some(d) = g.terms.get(l) {
            acc = acc.add(&c.mul_rat(&d.mul(&z_qt(l))));
        }
    }
    acc
}

/// Memoized `z_λ(q,t)`.
pub fn z_qt(l: &Partition) -> RatFunc {
    static CACHE: OnceLock<Mutex<HashMap<Partition, RatFunc>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().expect("cache lock").get(l) {
        return v.clone();
    }
    let v = l.z_qt();
    cache.lock().expect("cache lock").insert(l.clone(), v.clone());
    v
}

/// All ways to split the multiset of parts into an ordered pair, with the
/// multinomial count.
fn split_partition(l: &Partition) -> Vec<(Partition, Partition, BigInt)> {
    let mut groups: Vec<(u32, usize)> = Vec::new();
    for &p in l.parts() {
        match groups.last_mut() {
            Some((v, m)) if *v == p => *m += 1,
            _ => groups.push((p, 1)),
        }
    }
    let mut out = vec![(Vec::new(), Vec::new(), BigInt::one())];
    for (v, m) in groups {
        let mut next = Vec::new();
        for (a, b, k) in &out {
            for j in 0..=m {
                let mut a2: Vec<u32> = a.clone();
                let mut b2: Vec<u32> = b.clone();
                a2.extend(std::iter::repeat_n(v, m - j));
                b2.extend(std::iter::repeat_n(v, j));
                next.push((a2, b2, k * BigInt::from(binom(m as i64, j as i64))));
            }
        }
        out = next;
    }
    out.into_iter().map(|(a, b, k)| (Partition::new(a), Partition::new(b), k)).collect()
}

/// Coefficient of `x^ν` in `p_μ(x_1, ..., x_n)` with `n = ℓ(ν)`: the number of
/// ways to distribute the parts of `μ` among the variables so that variable
/// `i` receives total `ν_i`.
fn power_sum_monomial_coefficient(mu: &Partition, nu: &Partition) -> i64 {
    fn rec(parts: &[u32], slots: &mut Vec<u32>) -> i64 {
        match parts.split_first() {
            None => slots.iter().all(|&s| s == 0) as i64,
            Some((&p, rest)) => {
                let mut total = 0;
                for i in 0..slots.len() {
                    if slots[i] >= p {
                        slots[i] -= p;
                        total += rec(rest, slots);
                        slots[i] += p;
                    }
                }
                total
            }
        }
    }
    let mut slots: Vec<u32> = nu.parts().to_vec();
    rec(mu.parts(), &mut slots)
}

/// `m_λ` in the p-basis for every `λ ⊢ d`.
///
/// The p→m transition matrix comes from reduction to `d` variables; it is
/// triangular (`p_μ` involves only `m_ν` with `ν ≥ μ`), so the inverse is
/// obtained by back substitution along the canonical order.
pub fn monomial_basis(d: u32) -> Arc<BTreeMap<Partition, SymFunc<RatFunc>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<BTreeMap<Partition, SymFunc<RatFunc>>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().expect("cache lock").get(&d) {
        return v.clone();
    }
    let parts = partitions_of(d);
    // L[μ][ν]: p_μ = Σ_ν L[μ][ν] m_ν
    let l: Vec<Vec<BigRational>> = parts
        .iter()
        .map(|mu| {
            parts.iter().map(|nu| BigRational::from_integer(power_sum_monomial_coefficient(mu, nu).into())).collect()
        })
        .collect();
    // m_ν = (p_ν - Σ_{ρ > ν} L[ν][ρ] m_ρ) / L[ν][ν], with ρ earlier in order
    let mut m: Vec<BTreeMap<usize, BigRational>> = vec![BTreeMap::new(); parts.len()];
    for i in 0..parts.len() {
        let mut acc: BTreeMap<usize, BigRational> = BTreeMap::new();
        acc.insert(i, BigRational::one());
        for j in 0..i {
            let c = &l[i][j];
            if c.is_zero() {
                continue;
            }
            for (k, v) in &m[j] {
                let e = acc.entry(*k).or_insert_with(BigRational::zero);
                *e -= c * v;
            }
        }
        let piv = l[i][i].clone();
        for v in acc.values_mut() {
            *v /= &piv;
        }
        acc.retain(|_, v| !v.is_zero());
        m[i] = acc;
    }
    let mut out = BTreeMap::new();
    for (i, nu) in parts.iter().enumerate() {
        let f = SymFunc::from_terms(m[i].iter().map(|(k, v)| (parts[*k].clone(), RatFunc::from_rational(v))));
        out.insert(nu.clone(), f);
    }
    let arc = Arc::new(out);
    cache.lock().expect("cache lock").insert(d, arc.clone());
    arc
}

/// `m_λ` in the p-basis.
pub fn monomial(l: &Partition) -> SymFunc<RatFunc> {
    monomial_basis(l.weight())[l].clone()
}

/// Coefficients of `f` (homogeneous of degree `d` or mixed) in the m-basis.
pub fn to_monomial_coefficients(f: &SymFunc<RatFunc>) -> BTreeMap<Partition, RatFunc> {
    let mut out: BTreeMap<Partition, RatFunc> = BTreeMap::new();
    for (mu, c) in f.terms() {
        for nu in partitions_of(mu.weight()) {
            let k = power_sum_monomial_coefficient(mu, &nu);
            if k != 0 {
                let e = out.entry(nu).or_default();
                *e = e.add(&c.mul(&RatFunc::int(k)));
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// Elementary symmetric function `e_r` via Newton's identities.
pub fn elementary(r: u32) -> SymFunc<RatFunc> {
    newton(r, true)
}

/// Complete symmetric function `h_r` via Newton's identities.
pub fn complete(r: u32) -> SymFunc<RatFunc> {
    newton(r, false)
}

fn newton(r: u32, alternating: bool) -> SymFunc<RatFunc> {
    let mut seq: Vec<SymFunc<RatFunc>> = vec![SymFunc::one()];
    for k in 1..=r {
        let mut acc = SymFunc::zero();
        for i in 1..=k {
            let sign = if alternating && i % 2 == 0 { -1 } else { 1 };
            let term = seq[(k - i) as usize].mul(&SymFunc::p(Partition::new(vec![i])));
            acc = acc.add(&term.mul_rat(&RatFunc::int(sign)));
        }
        seq.push(acc.mul_rat(&RatFunc::frac(1, k as i64)));
    }
    seq.pop().expect("nonempty")
}

/// `g_r`, the `u^r` coefficient of `exp(Σ (1-t^n)/(1-q^n) p_n u^n / n)`.
pub fn g_function(r: u32) -> SymFunc<RatFunc> {
    // r g_r = Σ_{i=1}^r c_i p_i g_{r-i}
    let mut seq: Vec<SymFunc<RatFunc>> = vec![SymFunc::one()];
    for k in 1..=r {
        let mut acc = SymFunc::zero();
        for i in 1..=k {
            let c = RatFunc::one_minus(0, i as i32).div(&RatFunc::one_minus(i as i32, 0)).expect("nonzero");
            let term = seq[(k - i) as usize].mul(&SymFunc::p(Partition::new(vec![i])));
            acc = acc.add(&term.mul_rat(&c));
        }
        seq.push(acc.mul_rat(&RatFunc::frac(1, k as i64)));
    }
    seq.pop().expect("nonempty")
}

/// Schur function via the Jacobi-Trudi determinant `det(h_{λ_i - i + j})`.
pub fn schur(l: &Partition) -> SymFunc<RatFunc> {
    let n = l.len();
    if n == 0 {
        return SymFunc::one();
    }
    let h = |k: i64| -> SymFunc<RatFunc> {
        if k < 0 {
            SymFunc::zero()
        } else {
            complete(k as u32)
        }
    };
    let matrix: Vec<Vec<SymFunc<RatFunc>>> =
        (0..n).map(|i| (0..n).map(|j| h(l.part(i) as i64 - i as i64 + j as i64)).collect()).collect();
    determinant(&matrix)
}

/// Cofactor expansion along the first row.
fn determinant(m: &[Vec<SymFunc<RatFunc>>]) -> SymFunc<RatFunc> {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = SymFunc::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<SymFunc<RatFunc>>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, v)| v.clone()).collect())
            .collect();
        let term = m[0][j].mul(&determinant(&minor));
        acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}

/// Named bases accepted by [`to_p_basis`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisName {
    M,
    E,
    H,
    S,
    G,
}

/// Expansion of a named basis element; `e`, `h`, `g` take a one-part
/// partition `(r)` or a general partition (product of the parts).
pub fn to_p_basis(name: BasisName, l: &Partition) -> SymFunc<RatFunc> {
    let prod = |f: fn(u32) -> SymFunc<RatFunc>| l.parts().iter().fold(SymFunc::one(), |acc, &r| acc.mul(&f(r)));
    match name {
        BasisName::M => monomial(l),
        BasisName::S => schur(l),
        BasisName::E => prod(elementary),
        BasisName::H => prod(complete),
        BasisName::G => prod(g_function),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn r(s: &str) -> RatFunc {
        s.parse().unwrap()
    }

    #[test]
    fn monomial_two_variables() {
        let m11 = monomial(&p("1,1"));
        assert_eq!(m11.coeff(&p("1,1")), RatFunc::frac(1, 2));
        assert_eq!(m11.coeff(&p("2")), RatFunc::frac(-1, 2));
        let red = monomial(&p("2,1")).reduce_to_variables(2);
        assert_eq!(red.coeff(&[2, 1]), RatFunc::one());
        assert_eq!(red.coeff(&[1, 2]), RatFunc::one());
        assert_eq!(red.terms().len(), 2);
    }

    #[test]
    fn newton_examples() {
        assert_eq!(elementary(2).coeff(&p("2")), RatFunc::frac(-1, 2));
        assert_eq!(complete(2).coeff(&p("2")), RatFunc::frac(1, 2));
        assert_eq!(g_function(1).coeff(&p("1")), r("(1-t)/(1-q)"));
    }

    #[test]
    fn inner_products() {
        let p2: SymFunc<RatFunc> = SymFunc::p(p("2"));
        assert_eq!(p2.inner(&p2), r("2*(1-q^2)/(1-t^2)"));
        assert!(p2.inner(&SymFunc::p(p("1,1"))).is_zero());
        let m11 = monomial(&p("1,1"));
        let expect = r("((1-q)/(1-t))^2 + (1-q^2)/(1-t^2)").mul(&RatFunc::frac(1, 2));
        assert_eq!(m11.inner(&m11), expect);
    }

    #[test]
    fn coproduct_of_p11() {
        let c = SymFunc::<RatFunc>::p(p("1,1")).coproduct();
        assert_eq!(c[&(p("1,1"), p(""))], RatFunc::one());
        assert_eq!(c[&(p("1"), p("1"))], RatFunc::int(2));
        assert_eq!(c[&(p(""), p("1,1"))], RatFunc::one());
        assert_eq!(c.len(), 3);
    }
}
