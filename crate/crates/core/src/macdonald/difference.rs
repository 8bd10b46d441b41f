//! Finite-variable difference operators `D`, `E`, `H`, `G` and the
//! parameter-inverted, `μ`-twisted `H`.
//!
//! An operator is a sum of terms `c · N(x) / ∏(x_a - c_k x_b) · ∏ T_{q,x_i}^{s_i}`
//! with polynomial `N` and linear denominator factors. Application brings all
//! terms over a common denominator, adds the numerators, and divides the
//! factors out exactly, so coinciding `x_i` never produce spurious poles.

use super::basis::macdonald_p;
use crate::coefficients::{binom, poch, RatFunc};
use crate::error::{Error, Result};
use crate::partitions::Partition;
use crate::symfunc::{
    eigenvalue_e_g, elementary_from_power_sums, g_from_power_sums, power_sums, EigenKind, MPoly, Specialization,
};
use std::collections::HashMap;

type Poly = MPoly<RatFunc>;

/// Operator families.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    D,
    E,
    H,
    G,
    /// `H^{(n),(μ)}_r(q^{-1}, t^{-1})` with the twist vector `μ`.
    HMu(Vec<i32>),
}

/// A family member `r` acting on `n` variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorSpec {
    pub family: Family,
    pub r: u32,
    pub n: usize,
}

/// Linear factor `x_a - c·x_b` with `a < b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Linear {
    a: usize,
    b: usize,
    c: RatFunc,
}

#[derive(Clone, Debug)]
struct Term {
    coeff: RatFunc,
    num: Poly,
    den: Vec<Linear>,
    /// `T_{q,x_i}^{shift[i]}`.
    shift: Vec<i32>,
}

/// A finite sum of rational-coefficient shift terms.
#[derive(Clone, Debug)]
pub struct DifferenceOperator {
    n: usize,
    terms: Vec<Term>,
}

/// `x_a - c·x_b` as a polynomial.
fn linear_poly(n: usize, a: usize, c: &RatFunc, b: usize) -> Poly {
    Poly::var(n, a).sub(&Poly::var(n, b).mul_rat(c))
}

impl DifferenceOperator {
    pub fn zero(n: usize) -> Self {
        DifferenceOperator { n, terms: Vec::new() }
    }

    pub fn identity(n: usize) -> Self {
        let mut op = DifferenceOperator::zero(n);
        op.push(RatFunc::one(), Poly::constant(n, RatFunc::one()), Vec::new(), vec![0; n]);
        op
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    /// Adds a term whose denominator is `∏ (x_a - c x_b)` over `den`.
    fn push(&mut self, coeff: RatFunc, num: Poly, den: Vec<(usize, usize, RatFunc)>, shift: Vec<i32>) {
        let mut coeff = coeff;
        let mut norm = Vec::with_capacity(den.len());
        for (a, b, c) in den {
            if a < b {
                norm.push(Linear { a, b, c });
            } else {
                // x_a - c x_b = -c (x_b - c^{-1} x_a)
                let ci = c.inv().expect("nonzero factor");
                coeff = coeff.mul(&ci).neg();
                norm.push(Linear { a: b, b: a, c: ci });
            }
        }
        if !coeff.is_zero() {
            self.terms.push(Term { coeff, num, den: norm, shift });
        }
    }

    pub fn scale(&self, c: &RatFunc) -> Self {
        let mut out = self.clone();
        out.terms.retain(|_| !c.is_zero());
        for t in &mut out.terms {
            t.coeff = t.coeff.mul(c);
        }
        out
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.n, o.n, "operators on different variable counts");
        let mut out = self.clone();
        out.terms.extend(o.terms.iter().cloned());
        out
    }

    /// Applies the operator to an arbitrary polynomial.
    pub fn apply(&self, f: &Poly) -> Result<Poly> {
        let n = self.n;
        if f.is_zero() || self.terms.is_empty() {
            return Ok(Poly::zero(n));
        }
        // common denominator: each factor with its largest multiplicity
        let mut common: Vec<(Linear, usize)> = Vec::new();
        for t in &self.terms {
            let mut counts: HashMap<&Linear, usize> = HashMap::new();
            for l in &t.den {
                *counts.entry(l).or_default() += 1;
            }
            for (l, k) in counts {
                match common.iter_mut().find(|(c, _)| c == l) {
                    Some(e) => e.1 = e.1.max(k),
                    None => common.push((l.clone(), k)),
                }
            }
        }
        let mut shifted: HashMap<&[i32], Poly> = HashMap::new();
        let mut total = Poly::zero(n);
        for t in &self.terms {
            let g = shifted
                .entry(&t.shift)
                .or_insert_with(|| {
                    let factors: Vec<RatFunc> = t.shift.iter().map(|&s| RatFunc::mono(s, 0)).collect();
                    f.scale_variables(&factors)
                })
                .clone();
            let mut acc = t.num.mul(&g).mul_rat(&t.coeff);
            for (l, k) in &common {
                let have = t.den.iter().filter(|d| *d == l).count();
                for _ in have..*k {
                    acc = acc.mul(&linear_poly(n, l.a, &l.c, l.b));
                }
            }
            total = total.add(&acc);
        }
        for (l, k) in &common {
            for _ in 0..*k {
                total = total.div_linear(l.a, l.b, &l.c)?;
            }
        }
        Ok(total)
    }
}

fn subsets(n: usize, r: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, r, &mut Vec::new(), &mut out);
    out
}

/// Weak compositions of `r` into `n` parts.
pub(crate) fn compositions(n: usize, r: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return if r == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in (0..=r).rev() {
        for mut rest in compositions(n - 1, r - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn q_pow(a: i32) -> RatFunc {
    RatFunc::mono(a, 0)
}

fn t_pow(b: i32) -> RatFunc {
    RatFunc::mono(0, b)
}

/// `D^{(n)}_r`; `D_0` is the identity and `D_r = 0` for `r > n`.
pub fn operator_d(r: u32, n: usize) -> DifferenceOperator {
    let r = r as usize;
    if r == 0 {
        return DifferenceOperator::identity(n);
    }
    let mut op = DifferenceOperator::zero(n);
    if r > n {
        return op;
    }
    let pref = t_pow((r * (r - 1) / 2) as i32);
    for set in subsets(n, r) {
        let mut num = Poly::constant(n, RatFunc::one());
        let mut den = Vec::new();
        for &i in &set {
            for j in (0..n).filter(|j| !set.contains(j)) {
                // t x_i - x_j = t (x_i - t^{-1} x_j)
                num = num.mul(&linear_poly(n, i, &t_pow(-1), j).mul_rat(&RatFunc::t()));
                den.push((i, j, RatFunc::one()));
            }
        }
        let shift = (0..n).map(|i| set.contains(&i) as i32).collect();
        op.push(pref.clone(), num, den, shift);
    }
    op
}

/// `E^{(n)}_r = Σ_k t^{-nr - binom(r-k+1, 2)} / (t^{-1}; t^{-1})_{r-k} D_k`.
pub fn operator_e(r: u32, n: usize) -> DifferenceOperator {
    let mut op = DifferenceOperator::zero(n);
    let (ri, ni) = (r as i64, n as i64);
    for k in 0..=r {
        let j = (r - k) as usize;
        let c =
            t_pow((-ni * ri - binom(j as i64 + 1, 2)) as i32).div(&poch(&t_pow(-1), &t_pow(-1), j)).expect("nonzero");
        op = op.add(&operator_d(k, n).scale(&c));
    }
    op
}

/// `H^{(n)}_r`.
pub fn operator_h(r: u32, n: usize) -> DifferenceOperator {
    if r == 0 {
        return DifferenceOperator::identity(n);
    }
    let mut op = DifferenceOperator::zero(n);
    for nu in compositions(n, r) {
        let mut coeff = RatFunc::one();
        let mut num = Poly::constant(n, RatFunc::one());
        let mut den = Vec::new();
        for i in 0..n {
            let k = nu[i] as usize;
            // i = j factor (t; q)_ν / (q; q)_ν
            coeff = coeff.mul(
                &poch(&RatFunc::t(), &RatFunc::q(), k).div(&poch(&RatFunc::q(), &RatFunc::q(), k)).expect("nonzero"),
            );
            for j in i + 1..n {
                // q^{ν_i} x_i - q^{ν_j} x_j = q^{ν_i} (x_i - q^{ν_j - ν_i} x_j)
                let d = nu[j] as i32 - nu[i] as i32;
                num = num.mul(&linear_poly(n, i, &q_pow(d), j).mul_rat(&q_pow(nu[i] as i32)));
                den.push((i, j, RatFunc::one()));
            }
            for j in (0..n).filter(|&j| j != i) {
                for m in 0..nu[i] as i32 {
                    // (1 - t q^m x_i/x_j) / (1 - q^{m+1} x_i/x_j)
                    num = num.mul(&linear_poly(n, j, &RatFunc::mono(m, 1), i));
                    den.push((j, i, q_pow(m + 1)));
                }
            }
        }
        let shift = nu.iter().map(|&v| v as i32).collect();
        op.push(coeff, num, den, shift);
    }
    op
}

/// `H^{(n),(μ)}_r(q^{-1}, t^{-1})`.
pub fn operator_h_mu(r: u32, mu: &[i32]) -> DifferenceOperator {
    let n = mu.len();
    if r == 0 {
        return DifferenceOperator::identity(n);
    }
    let qi = RatFunc::mono(-1, 0);
    let mut op = DifferenceOperator::zero(n);
    for nu in compositions(n, r) {
        let mut coeff = RatFunc::one();
        let mut num = Poly::constant(n, RatFunc::one());
        let mut den = Vec::new();
        for i in 0..n {
            let k = nu[i] as usize;
            let top = poch(&RatFunc::mono(-mu[i], -1), &qi, k);
            coeff = coeff.mul(&top.div(&poch(&qi, &qi, k)).expect("nonzero"));
            for j in i + 1..n {
                let d = nu[i] as i32 - nu[j] as i32;
                num = num.mul(&linear_poly(n, i, &q_pow(d), j).mul_rat(&q_pow(-(nu[i] as i32))));
                den.push((i, j, RatFunc::one()));
            }
            for j in (0..n).filter(|&j| j != i) {
                for m in 0..nu[i] as i32 {
                    // (1 - t^{-1} q^{-μ_j - m} x_i/x_j) / (1 - q^{-m-1} x_i/x_j)
                    num = num.mul(&linear_poly(n, j, &RatFunc::mono(-mu[j] - m, -1), i));
                    den.push((j, i, q_pow(-m - 1)));
                }
            }
        }
        let shift = nu.iter().map(|&v| -(v as i32)).collect();
        op.push(coeff, num, den, shift);
    }
    op
}

/// `G^{(n)}_r = (-1)^r t^{-nr} q^{binom(r,2)}/(q;q)_r Σ_l (-1)^l q^{-binom(l,2) - l(r-l)}
/// (q^{r-l+1}; q)_l H_l`.
///
/// The Pochhammer factor `(q^{r-l+1}; q)_l = (q;q)_r/(q;q)_{r-l}` is the one
/// forced by the generating function of `g_r(q^λ t^{-δ})`.
pub fn operator_g(r: u32, n: usize) -> DifferenceOperator {
    let (ri, ni) = (r as i64, n as i64);
    let q = RatFunc::q();
    let sign = |k: i64| RatFunc::int(if k % 2 == 0 { 1 } else { -1 });
    let pref = sign(ri)
        .mul(&t_pow((-ni * ri) as i32))
        .mul(&q_pow(binom(ri, 2) as i32))
        .div(&poch(&q, &q, r as usize))
        .expect("nonzero");
    let mut op = DifferenceOperator::zero(n);
    for l in 0..=ri {
        let c = sign(l).mul(&q_pow((-binom(l, 2) - l * (ri - l)) as i32)).mul(&poch(
            &q_pow((ri - l + 1) as i32),
            &q,
            l as usize,
        ));
        op = op.add(&operator_h(l as u32, n).scale(&c));
    }
    op.scale(&pref)
}

/// The combination `t^{rn} q^{r|μ|} Σ_l (-1)^l q^{binom(l,2) + l(r-l)} (q^{-r+l-1}; q^{-1})_l
/// H^{(n),(μ)}_l(q^{-1}, t^{-1})` matched against the twisted vertex integral.
pub fn operator_theorem_a(r: u32, mu: &[i32]) -> DifferenceOperator {
    let n = mu.len();
    let (ri, ni) = (r as i64, n as i64);
    let wt: i64 = mu.iter().map(|&m| m as i64).sum();
    let qi = RatFunc::mono(-1, 0);
    let mut op = DifferenceOperator::zero(n);
    for l in 0..=ri {
        let sgn = RatFunc::int(if l % 2 == 0 { 1 } else { -1 });
        let c = sgn.mul(&q_pow((binom(l, 2) + l * (ri - l)) as i32)).mul(&poch(
            &q_pow((-ri + l - 1) as i32),
            &qi,
            l as usize,
        ));
        op = op.add(&operator_h_mu(l as u32, mu).scale(&c));
    }
    op.scale(&RatFunc::mono((ri * wt) as i32, (ri * ni) as i32))
}

pub fn build_operator(spec: &OperatorSpec) -> DifferenceOperator {
    match &spec.family {
        Family::D => operator_d(spec.r, spec.n),
        Family::E => operator_e(spec.r, spec.n),
        Family::H => operator_h(spec.r, spec.n),
        Family::G => operator_g(spec.r, spec.n),
        Family::HMu(mu) => {
            assert_eq!(mu.len(), spec.n, "twist length must equal the variable count");
            operator_h_mu(spec.r, mu)
        }
    }
}

/// Applies a family member to a symmetric polynomial.
pub fn apply_difference_operator(spec: &OperatorSpec, f: &Poly) -> Result<Poly> {
    if f.nvars() != spec.n || !f.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    build_operator(spec).apply(f)
}

/// Outcome of an eigenfunction check.
#[derive(Clone, Debug)]
pub struct EigenReport {
    pub ok: bool,
    pub eigenvalue: RatFunc,
    /// `image - eigenvalue·P` when the check fails.
    pub diff: Option<String>,
}

/// The eigenvalue each family assigns to `P_λ` in `n` variables.
pub fn expected_eigenvalue(family: &Family, r: u32, l: &Partition, n: usize) -> Option<RatFunc> {
    let finite = |inv: bool| {
        let s = if inv { -1 } else { 1 };
        Specialization::Values((0..n).map(|i| RatFunc::mono(s * l.part(i) as i32, s * (n - 1 - i) as i32)).collect())
    };
    Some(match family {
        Family::D => elementary_from_power_sums(&power_sums(&finite(false), r), r),
        Family::E => eigenvalue_e_g(EigenKind::E, r, l, false),
        Family::H => g_from_power_sums(&power_sums(&finite(false), r), r, false),
        Family::G => eigenvalue_e_g(EigenKind::G, r, l, false),
        Family::HMu(mu) if mu.iter().all(|&m| m == 0) => g_from_power_sums(&power_sums(&finite(true), r), r, true),
        Family::HMu(_) => return None,
    })
}

/// Checks `O P^{(n)}_λ = eigenvalue · P^{(n)}_λ`.
pub fn eigencheck_difference(l: &Partition, n: usize, family: &Family, r: u32) -> Result<EigenReport> {
    let ev = expected_eigenvalue(family, r, l, n)
        .ok_or_else(|| Error::UnsupportedObservable("twisted operator has no eigenvalue statement".into()))?;
    let pn = macdonald_p(l)?.reduce_to_variables(n);
    let image = apply_difference_operator(&OperatorSpec { family: family.clone(), r, n }, &pn)?;
    let delta = image.sub(&pn.mul_rat(&ev));
    let ok = delta.is_zero();
    let diff = (!ok).then(|| format!("{:?}", delta.terms().iter().next()));
    Ok(EigenReport { ok, eigenvalue: ev, diff })
}

/// Left side of `Σ_k (q^{-ν_k} - 1) ∏_{i≠k} (x_k - q^{-ν_i} x_i)/(x_k - x_i)`,
/// brought to a polynomial.
pub fn partial_fraction_sum(nu: &[u32]) -> Result<Poly> {
    let n = nu.len();
    let mut op = DifferenceOperator::zero(n);
    for k in 0..n {
        let coeff = q_pow(-(nu[k] as i32)).sub(&RatFunc::one());
        let mut num = Poly::constant(n, RatFunc::one());
        let mut den = Vec::new();
        for i in (0..n).filter(|&i| i != k) {
            num = num.mul(&linear_poly(n, k, &q_pow(-(nu[i] as i32)), i));
            den.push((k, i, RatFunc::one()));
        }
        op.push(coeff, num, den, vec![0; n]);
    }
    op.apply(&Poly::constant(n, RatFunc::one()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn d1_on_linear() {
        let f = Poly::var(2, 0).add(&Poly::var(2, 1));
        let out = apply_difference_operator(&OperatorSpec { family: Family::D, r: 1, n: 2 }, &f).unwrap();
        let ev: RatFunc = "q*t+1".parse().unwrap();
        assert_eq!(out, f.mul_rat(&ev));
    }

    #[test]
    fn single_variable_h() {
        let f = Poly::var(1, 0).pow(3);
        let out = operator_h(1, 1).apply(&f).unwrap();
        let c: RatFunc = "(1-t)/(1-q)*q^3".parse().unwrap();
        assert_eq!(out, f.mul_rat(&c));
        let out = operator_h_mu(1, &[0]).apply(&f).unwrap();
        let c: RatFunc = "(1-t^-1)/(1-q^-1)*q^-3".parse().unwrap();
        assert_eq!(out, f.mul_rat(&c));
    }

    #[test]
    fn eigen_small() {
        assert!(eigencheck_difference(&p("1"), 2, &Family::D, 1).unwrap().ok);
        assert!(eigencheck_difference(&p("2"), 2, &Family::E, 1).unwrap().ok);
        assert!(eigencheck_difference(&p("1,1"), 3, &Family::H, 1).unwrap().ok);
        assert!(eigencheck_difference(&p("1"), 2, &Family::G, 1).unwrap().ok);
    }

    #[test]
    fn partial_fractions() {
        let f = partial_fraction_sum(&[2, 0, 1]).unwrap();
        assert_eq!(f, Poly::constant(3, q_pow(-3).sub(&RatFunc::one())));
    }

    #[test]
    fn non_symmetric_rejected() {
        let f = Poly::var(2, 0);
        let spec = OperatorSpec { family: Family::D, r: 1, n: 2 };
        assert_eq!(apply_difference_operator(&spec, &f), Err(Error::NotSymmetric));
    }
}
