//! Vertex operators `exp(Σ α_n a_{-n} z^n) exp(Σ β_n a_n z^{-n})`, their
//! normally ordered products acting on Fock vectors, and OPE prefactors.

use super::commutator_scalar;
use super::tensor::TensorFockVector;
use crate::coefficients::RatFunc;
use crate::error::{Error, Result};
use crate::partitions::{partitions_up_to, Partition, PartitionTuple};
use std::collections::BTreeMap;

/// The vertex operators used by the engine. The `Gamma*` kinds carry the
/// power sums `p_1(X), p_2(X), ...` of a scalar specialization; modes past
/// the end of the list are taken to be zero.
#[derive(Clone, Debug, PartialEq)]
pub enum VertexKind {
    Eta,
    Xi,
    PhiPlus,
    PhiMinus,
    GammaPlus(Vec<RatFunc>),
    GammaMinus(Vec<RatFunc>),
}

fn one_minus_t(n: i32) -> RatFunc {
    RatFunc::one_minus(0, n)
}

/// `(t/q)^{n/2}`.
fn half_power(n: i32) -> RatFunc {
    RatFunc::mono_quarter(-2 * n, 2 * n)
}

/// `(1 - (t/q)^n)(t/q)^{-n/4}`.
fn phi_weight(n: i32) -> RatFunc {
    RatFunc::one_minus(-n, n).mul(&RatFunc::mono_quarter(n, -n))
}

fn gamma_weight(ps: &[RatFunc], n: u32) -> RatFunc {
    match ps.get(n as usize - 1) {
        Some(p) => {
            let n = n as i32;
            one_minus_t(n).div(&RatFunc::one_minus(n, 0)).expect("nonzero").mul(p).mul(&RatFunc::frac(1, n as i64))
        }
        None => RatFunc::zero(),
    }
}

impl VertexKind {
    /// Coefficient `α_n` of `a_{-n} z^n` in the creation exponent.
    pub fn creation(&self, n: u32) -> RatFunc {
        let k = n as i32;
        let inv_n = RatFunc::frac(1, n as i64);
        match self {
            VertexKind::Eta => one_minus_t(-k).mul(&inv_n),
            VertexKind::Xi => one_minus_t(-k).mul(&inv_n).mul(&half_power(k)).neg(),
            VertexKind::PhiMinus => one_minus_t(-k).mul(&inv_n).mul(&phi_weight(k)),
            VertexKind::PhiPlus | VertexKind::GammaPlus(_) => RatFunc::zero(),
            VertexKind::GammaMinus(ps) => gamma_weight(ps, n),
        }
    }

    /// Coefficient `β_n` of `a_n z^{-n}` in the annihilation exponent.
    pub fn annihilation(&self, n: u32) -> RatFunc {
        let k = n as i32;
        let inv_n = RatFunc::frac(1, n as i64);
        match self {
            VertexKind::Eta => one_minus_t(k).mul(&inv_n).neg(),
            VertexKind::Xi => one_minus_t(k).mul(&inv_n).mul(&half_power(k)),
            VertexKind::PhiPlus => one_minus_t(k).mul(&inv_n).mul(&phi_weight(k)).neg(),
            VertexKind::PhiMinus | VertexKind::GammaMinus(_) => RatFunc::zero(),
            VertexKind::GammaPlus(ps) => gamma_weight(ps, n),
        }
    }

    /// Whether the modes come with powers of a formal variable.
    pub fn carries_z(&self) -> bool {
        !matches!(self, VertexKind::GammaPlus(_) | VertexKind::GammaMinus(_))
    }
}

/// `V(scale · z_var)` acting on tensor leg `leg`.
#[derive(Clone, Debug, PartialEq)]
pub struct VertexFactor {
    pub kind: VertexKind,
    pub var: usize,
    pub leg: usize,
    pub scale: RatFunc,
}

impl VertexFactor {
    pub fn new(kind: VertexKind, var: usize) -> Self {
        VertexFactor { kind, var, leg: 0, scale: RatFunc::one() }
    }

    pub fn on_leg(mut self, leg: usize) -> Self {
        self.leg = leg;
        self
    }

    pub fn scaled(mut self, s: RatFunc) -> Self {
        self.scale = s;
        self
    }

    fn alpha(&self, n: u32) -> RatFunc {
        let a = self.kind.creation(n);
        if a.is_zero() || !self.kind.carries_z() {
            return a;
        }
        a.mul(&self.scale.pow(n as i32))
    }

    fn beta(&self, n: u32) -> RatFunc {
        let b = self.kind.annihilation(n);
        if b.is_zero() || !self.kind.carries_z() {
            return b;
        }
        b.mul(&self.scale.pow(-(n as i32)))
    }
}

/// Coefficients of a vertex-operator expression applied to one vector:
/// exponent vector of `z_1..z_n` ↦ Fock vector. When `complete` is set every
/// nonzero coefficient lies in `[-window, window]^n`; otherwise the series was
/// cut to that box and is exact only inside it.
#[derive(Clone, Debug, PartialEq)]
pub struct VertexSeries {
    pub nvars: usize,
    pub window: i64,
    pub complete: bool,
    pub terms: BTreeMap<Vec<i32>, TensorFockVector<RatFunc>>,
}

impl VertexSeries {
    pub fn coefficient(&self, e: &[i32]) -> Option<&TensorFockVector<RatFunc>> {
        self.terms.get(e)
    }

    /// Largest `|e_i|` in the support.
    pub fn extent(&self) -> i64 {
        self.terms.keys().flat_map(|e| e.iter().map(|x| x.unsigned_abs() as i64)).max().unwrap_or(0)
    }

    /// `S(α z)`: multiplies the coefficient of `z^e` by `α^{|e|}`.
    pub fn rescale(&self, alpha: &RatFunc) -> Self {
        let mut out = self.clone();
        for (e, v) in out.terms.iter_mut() {
            let s: i32 = e.iter().sum();
            *v = v.mul_rat(&alpha.pow(s));
        }
        out
    }

    /// `S(z^{-1})`.
    pub fn invert(&self) -> Self {
        let terms = self.terms.iter().map(|(e, v)| (e.iter().map(|x| -x).collect(), v.clone())).collect();
        VertexSeries { terms, ..self.clone() }
    }

    /// Termwise sum; the result is complete only if both inputs are.
    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.nvars, o.nvars, "variable count mismatch");
        let mut out = self.clone();
        out.window = self.window.min(o.window);
        out.complete = self.complete && o.complete;
        for (e, v) in &o.terms {
            out.add_at(e.clone(), v.clone());
        }
        out
    }

    fn add_at(&mut self, e: Vec<i32>, v: TensorFockVector<RatFunc>) {
        if v.is_zero() {
            return;
        }
        let cur = match self.terms.remove(&e) {
            Some(old) => old.add(&v),
            None => v,
        };
        if !cur.is_zero() {
            self.terms.insert(e, cur);
        }
    }
}

type Legs = Vec<Vec<u32>>;

fn tuple_of(legs: &Legs) -> PartitionTuple {
    PartitionTuple(legs.iter().map(|p| Partition::new(p.clone())).collect())
}

fn accumulate<K: Ord>(map: &mut BTreeMap<K, RatFunc>, k: K, c: RatFunc) {
    if c.is_zero() {
        return;
    }
    match map.remove(&k) {
        Some(old) => {
            let s = old.add(&c);
            if !s.is_zero() {
                map.insert(k, s);
            }
        }
        None => {
            map.insert(k, c);
        }
    }
}

/// Annihilation part on one basis vector: each part either survives or is
/// absorbed by one factor on its leg.
fn annihilate(factors: &[VertexFactor], nvars: usize, key: &PartitionTuple) -> BTreeMap<(Vec<i32>, Legs), RatFunc> {
    let arity = key.arity();
    let mut cur: BTreeMap<(Vec<i32>, Legs), RatFunc> = BTreeMap::new();
    cur.insert((vec![0; nvars], vec![Vec::new(); arity]), RatFunc::one());
    for (leg, l) in key.0.iter().enumerate() {
        for &k in l.parts() {
            let kappa = commutator_scalar(k);
            let absorbers: Vec<(usize, bool, RatFunc)> = factors
                .iter()
                .filter(|f| f.leg == leg)
                .filter_map(|f| {
                    let b = f.beta(k);
                    (!b.is_zero()).then(|| (f.var, f.kind.carries_z(), b.mul(&kappa)))
                })
                .collect();
            let mut next = BTreeMap::new();
            for ((e, legs), c) in cur {
                let mut kept = legs.clone();
                kept[leg].push(k);
                accumulate(&mut next, (e.clone(), kept), c.clone());
                for (var, cz, w) in &absorbers {
                    let mut e2 = e.clone();
                    if *cz {
                        e2[*var] -= k as i32;
                    }
                    accumulate(&mut next, (e2, legs.clone()), c.mul(w));
                }
            }
            cur = next;
        }
    }
    cur
}

/// Creation exponential `∏_f exp(Σ_n α^f_n z_f^n a_{-n})` up to total Fock
/// weight `cap`, grouped by created weight.
fn creation_series(
    factors: &[VertexFactor],
    nvars: usize,
    arity: usize,
    cap: u32,
) -> BTreeMap<u32, Vec<(Vec<i32>, Legs, RatFunc)>> {
    let mut acc: BTreeMap<(Vec<i32>, Legs), RatFunc> = BTreeMap::new();
    acc.insert((vec![0; nvars], vec![Vec::new(); arity]), RatFunc::one());
    let shapes = partitions_up_to(cap);
    for f in factors {
        let alphas: Vec<RatFunc> = (1..=cap).map(|n| f.alpha(n)).collect();
        if alphas.iter().all(|a| a.is_zero()) {
            continue;
        }
        let mut single: Vec<(u32, Vec<u32>, RatFunc)> = Vec::new();
        for nu in &shapes {
            let mut c = RatFunc::one();
            for &part in nu.parts() {
                c = c.mul(&alphas[part as usize - 1]);
            }
            if c.is_zero() {
                continue;
            }
            let mut denom = num_bigint::BigInt::from(1);
            for part in 1..=cap {
                denom *= crate::coefficients::factorial(nu.multiplicity(part) as u64);
            }
            c = c.div(&RatFunc::from_bigint(denom)).expect("nonzero");
            single.push((nu.weight(), nu.parts().to_vec(), c));
        }
        let mut next = BTreeMap::new();
        for ((e, legs), c) in &acc {
            let used: u32 = legs.iter().flatten().sum();
            for (w, parts, cf) in &single {
                if used + w > cap {
                    continue;
                }
                let mut e2 = e.clone();
                if f.kind.carries_z() {
                    e2[f.var] += *w as i32;
                }
                let mut legs2 = legs.clone();
                legs2[f.leg].extend_from_slice(parts);
                legs2[f.leg].sort_unstable_by(|a, b| b.cmp(a));
                accumulate(&mut next, (e2, legs2), c.mul(cf));
            }
        }
        acc = next;
    }
    let mut grouped: BTreeMap<u32, Vec<(Vec<i32>, Legs, RatFunc)>> = BTreeMap::new();
    for ((e, legs), c) in acc {
        let w = legs.iter().flatten().sum();
        grouped.entry(w).or_default().push((e, legs, c));
    }
    grouped
}

/// `:V_1(z_1)⋯V_r(z_r): v` with output Fock weight at most `max_degree`.
/// With `zero_total` only exponent vectors summing to zero are kept (the
/// only ones a constant-term functional of a homogeneous kernel can see).
/// Errors with `WindowTooSmall` when the support leaves `[-window, window]`.
pub fn normal_ordered_apply(
    factors: &[VertexFactor],
    nvars: usize,
    v: &TensorFockVector<RatFunc>,
    max_degree: u32,
    zero_total: bool,
    window: i64,
) -> Result<VertexSeries> {
    let arity = v.arity();
    for f in factors {
        assert!(f.leg < arity && f.var < nvars, "factor outside the declared space");
    }
    let creation = creation_series(factors, nvars, arity, max_degree);
    let mut out = VertexSeries { nvars, window, complete: true, terms: BTreeMap::new() };
    let mut staged: BTreeMap<Vec<i32>, BTreeMap<PartitionTuple, RatFunc>> = BTreeMap::new();
    for (key, c0) in v.terms() {
        for ((ea, rem), ca) in annihilate(factors, nvars, key) {
            let kept: u32 = rem.iter().flatten().sum();
            if kept > max_degree {
                continue;
            }
            let ca = ca.mul(c0);
            let shift: i32 = ea.iter().sum();
            for (_, group) in creation.range(..=max_degree - kept) {
                for (ec, legs, cc) in group {
                    let e: Vec<i32> = ea.iter().zip(ec).map(|(a, b)| a + b).collect();
                    if zero_total && shift + ec.iter().sum::<i32>() != 0 {
                        continue;
                    }
                    let mut merged = rem.clone();
                    for (m, add) in merged.iter_mut().zip(legs) {
                        m.extend_from_slice(add);
                        m.sort_unstable_by(|a, b| b.cmp(a));
                    }
                    let slot = staged.entry(e).or_default();
                    accumulate(slot, tuple_of(&merged), ca.mul(cc));
                }
            }
        }
    }
    for (e, coeffs) in staged {
        let mut vec = TensorFockVector::zero(arity);
        for (k, c) in coeffs {
            vec.add_term(k, c);
        }
        out.add_at(e, vec);
    }
    let ext = out.extent();
    if ext > window {
        return Err(Error::WindowTooSmall { needed: ext, have: window });
    }
    Ok(out)
}

/// `exp(Σ_{n≥1} a_n x^n)` to order `order`; `a[0]` is ignored.
pub(crate) fn series_exp(a: &[RatFunc], order: usize) -> Vec<RatFunc> {
    let mut g = vec![RatFunc::one()];
    for k in 1..=order {
        let mut acc = RatFunc::zero();
        for i in 1..=k.min(a.len().saturating_sub(1)) {
            acc = acc.add(&a[i].mul(&g[k - i]).scale_int(i as i64));
        }
        g.push(acc.mul(&RatFunc::frac(1, k as i64)));
    }
    g
}

/// Coefficients `c_0..c_order` with `V_1(z)V_2(w) = Σ_k c_k (w/z)^k :V_1(z)V_2(w):`.
pub fn ope_coefficients(first: &VertexKind, second: &VertexKind, order: usize) -> Vec<RatFunc> {
    let mut a = vec![RatFunc::zero()];
    for n in 1..=order as u32 {
        a.push(first.annihilation(n).mul(&second.creation(n)).mul(&commutator_scalar(n)));
    }
    series_exp(&a, order)
}

/// The plain product `V_1(z_1)⋯V_r(z_r) v` for z-carrying factors on
/// distinct variables, obtained from the normally ordered product and the
/// pairwise OPE prefactors expanded in nonnegative powers of `z_j/z_i`
/// (`i < j`). The result is exact inside the window and marked incomplete.
pub fn vertex_product_apply(
    factors: &[VertexFactor],
    nvars: usize,
    v: &TensorFockVector<RatFunc>,
    max_degree: u32,
    window: i64,
) -> Result<VertexSeries> {
    for (i, f) in factors.iter().enumerate() {
        assert!(f.kind.carries_z(), "plain products need z-carrying factors");
        assert!(factors[..i].iter().all(|g| g.var != f.var), "plain products need distinct variables");
    }
    let base = normal_ordered_apply(factors, nvars, v, max_degree, false, i64::MAX)?;
    let reach = base.extent();
    let mut series = base;
    // A pair (i, j) lowers the exponent of z_i and raises that of z_j. The
    // variable of factor i starts at most at `reach`, gains only from pairs
    // (h, i) handled earlier, and must end at least at `-window`; that total
    // bounds every order k_ij that can reach the window.
    let mut budget = vec![reach + window; nvars];
    for i in 0..factors.len() {
        for j in i + 1..factors.len() {
            let (fi, fj) = (&factors[i], &factors[j]);
            if fi.leg != fj.leg {
                continue;
            }
            let order = budget[fi.var] as usize;
            let mut a = vec![RatFunc::zero()];
            for n in 1..=order as u32 {
                a.push(fi.beta(n).mul(&fj.alpha(n)).mul(&commutator_scalar(n)));
            }
            let ope = series_exp(&a, order);
            budget[fj.var] += order as i64;
            let mut next = VertexSeries { nvars, window, complete: false, terms: BTreeMap::new() };
            for (e, vec) in &series.terms {
                for (k, c) in ope.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let mut e2 = e.clone();
                    e2[fi.var] -= k as i32;
                    e2[fj.var] += k as i32;
                    next.add_at(e2, vec.mul_rat(c));
                }
            }
            series = next;
        }
    }
    series.terms.retain(|e, _| e.iter().all(|x| (x.unsigned_abs() as i64) <= window));
    series.window = window;
    series.complete = false;
    Ok(series)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eta_vacuum_constant_term() {
        let vac = TensorFockVector::<RatFunc>::vacuum(1);
        let s = normal_ordered_apply(&[VertexFactor::new(VertexKind::Eta, 0)], 1, &vac, 3, false, 3).unwrap();
        assert_eq!(s.coefficient(&[0]).unwrap(), &vac);
        let s = normal_ordered_apply(&[VertexFactor::new(VertexKind::PhiMinus, 0)], 1, &vac, 3, false, 3).unwrap();
        assert_eq!(s.coefficient(&[0]).unwrap(), &vac);
    }

    #[test]
    fn eta_eta_ope() {
        let c = ope_coefficients(&VertexKind::Eta, &VertexKind::Eta, 2);
        let want: RatFunc = "q + 1/t - 1 - q/t".parse().unwrap();
        assert_eq!(c[1], want);
    }

    #[test]
    fn window_error() {
        let v = TensorFockVector::from_sym(&crate::symfunc::SymFunc::<RatFunc>::p("2".parse().unwrap()));
        let r = normal_ordered_apply(&[VertexFactor::new(VertexKind::Eta, 0)], 1, &v, 2, false, 1);
        assert!(matches!(r, Err(Error::WindowTooSmall { .. })));
    }
}
