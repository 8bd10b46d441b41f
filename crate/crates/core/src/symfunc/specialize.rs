//! Specializations `Λ → F`: principal specializations in closed form, finite
//! variable lists, and the e/g values obtained from power sums.

use super::SymFunc;
use crate::coefficients::{RatFunc, TruncPoly};
use crate::partitions::Partition;

/// Target of a specialization homomorphism.
#[derive(Clone, Debug, PartialEq)]
pub enum Specialization {
    /// `x_i ↦ q^{λ_i} t^{-i+n}` (all `i ≥ 1`), or with `q, t` inverted.
    Principal { lambda: Partition, n: i32, inverted: bool },
    /// Finitely many explicit values.
    Values(Vec<RatFunc>),
}

/// `p_r(q^λ t^{-δ+n})` summed in closed form; the inverted kind replaces
/// `q, t` by their inverses.
pub fn principal_power_sum(l: &Partition, n: i32, inverted: bool, r: u32) -> RatFunc {
    let r = r as i32;
    let s = if inverted { -1 } else { 1 };
    let mut acc = RatFunc::zero();
    for (i, &li) in l.parts().iter().enumerate() {
        let i = i as i32 + 1;
        acc = acc.add(&RatFunc::mono(s * r * li as i32, s * r * (n - i)));
    }
    let len = l.len() as i32;
    // tail Σ_{i>ℓ} t^{-r(i-n)} = t^{-r(ℓ+1-n)} / (1 - t^{-r})
    let tail = RatFunc::mono(0, -s * r * (len + 1 - n)).div(&RatFunc::one_minus(0, -s * r)).expect("nonzero");
    acc.add(&tail)
}

fn power_sum_value(spec: &Specialization, r: u32) -> RatFunc {
    match spec {
        Specialization::Principal { lambda, n, inverted } => principal_power_sum(lambda, *n, *inverted, r),
        Specialization::Values(v) => v.iter().map(|x| x.pow(r as i32)).sum(),
    }
}

/// Power sums `p_1..p_k` of a specialization.
pub fn power_sums(spec: &Specialization, k: u32) -> Vec<RatFunc> {
    (1..=k).map(|r| power_sum_value(spec, r)).collect()
}

/// Homomorphic image of `f`.
pub fn specialize(f: &SymFunc<RatFunc>, spec: &Specialization) -> RatFunc {
    let top = f.terms().keys().flat_map(|l| l.parts().first().copied()).max().unwrap_or(0);
    let ps = power_sums(spec, top);
    let mut acc = RatFunc::zero();
    for (l, c) in f.terms() {
        let v = l.parts().iter().fold(c.clone(), |a, &r| a.mul(&ps[r as usize - 1]));
        acc = acc.add(&v);
    }
    acc
}

/// Image under `p_r ↦ Σ_i x_{vars[i]}^r` in truncated polynomials.
pub fn specialize_variables(f: &SymFunc<RatFunc>, vars: &[usize], prec: u32) -> TruncPoly {
    let top = f.terms().keys().flat_map(|l| l.parts().first().copied()).max().unwrap_or(0);
    let ps: Vec<TruncPoly> = (1..=top)
        .map(|r| {
            vars.iter().fold(TruncPoly::zero_with(prec), |a, &v| {
                let mut e = vec![0u8; v + 1];
                e[v] = r as u8;
                a.add(&TruncPoly::monomial(e, RatFunc::one(), prec))
            })
        })
        .collect();
    let mut acc = TruncPoly::zero_with(prec);
    for (l, c) in f.terms() {
        let mut term = TruncPoly::constant(c.clone(), prec);
        for &r in l.parts() {
            term = term.mul(&ps[r as usize - 1]);
        }
        acc = acc.add(&term);
    }
    acc
}

/// `e_r` from `p_1..p_r` by Newton's identities (`ps[k-1] = p_k`).
pub fn elementary_from_power_sums(ps: &[RatFunc], r: u32) -> RatFunc {
    let mut e = vec![RatFunc::one()];
    for k in 1..=r as usize {
        let mut acc = RatFunc::zero();
        for i in 1..=k {
            let term = e[k - i].mul(&ps[i - 1]);
            acc = if i % 2 == 1 { acc.add(&term) } else { acc.sub(&term) };
        }
        e.push(acc.mul(&RatFunc::frac(1, k as i64)));
    }
    e.pop().expect("nonempty")
}

/// `h_r` from power sums.
pub fn complete_from_power_sums(ps: &[RatFunc], r: u32) -> RatFunc {
    let w: Vec<RatFunc> = (0..r).map(|_| RatFunc::one()).collect();
    weighted_exponential(ps, &w, r)
}

/// `g_r(·; q, t)` from power sums, or `g_r(·; q^{-1}, t^{-1})` when
/// `inverted_params` is set.
pub fn g_from_power_sums(ps: &[RatFunc], r: u32, inverted_params: bool) -> RatFunc {
    let s = if inverted_params { -1 } else { 1 };
    let w: Vec<RatFunc> = (1..=r as i32)
        .map(|n| RatFunc::one_minus(0, s * n).div(&RatFunc::one_minus(s * n, 0)).expect("nonzero"))
        .collect();
    weighted_exponential(ps, &w, r)
}

/// `u^r` coefficient of `exp(Σ_n w_n p_n u^n / n)`.
fn weighted_exponential(ps: &[RatFunc], w: &[RatFunc], r: u32) -> RatFunc {
    let mut g = vec![RatFunc::one()];
    for k in 1..=r as usize {
        let mut acc = RatFunc::zero();
        for i in 1..=k {
            acc = acc.add(&g[k - i].mul(&ps[i - 1]).mul(&w[i - 1]));
        }
        g.push(acc.mul(&RatFunc::frac(1, k as i64)));
    }
    g.pop().expect("nonempty")
}

/// Which eigenvalue family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EigenKind {
    E,
    G,
}

/// `e_r(q^λ t^{-δ})` or `g_r(q^λ t^{-δ}; q, t)`; `inverted` applies
/// `q ↦ q^{-1}, t ↦ t^{-1}` throughout (points and parameters).
pub fn eigenvalue_e_g(kind: EigenKind, r: u32, l: &Partition, inverted: bool) -> RatFunc {
    let spec = Specialization::Principal { lambda: l.clone(), n: 0, inverted };
    let ps = power_sums(&spec, r);
    match kind {
        EigenKind::E => elementary_from_power_sums(&ps, r),
        EigenKind::G => g_from_power_sums(&ps, r, inverted),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> RatFunc {
        s.parse().unwrap()
    }

    #[test]
    fn closed_form_examples() {
        let empty = Partition::empty();
        assert_eq!(principal_power_sum(&empty, 1, false, 2), r("t^2/(t^2-1)"));
        let one = Partition::new(vec![1]);
        assert_eq!(principal_power_sum(&one, 0, false, 1), r("q/t + 1/(t*(t-1))"));
        let inv = principal_power_sum(&one, 1, true, 1).q_to_t().unwrap();
        assert_eq!(inv, r("1/t + t/(1-t)"));
    }

    #[test]
    fn eigenvalue_examples() {
        let one = Partition::new(vec![1]);
        assert_eq!(eigenvalue_e_g(EigenKind::E, 1, &one, false), r("(q*t-q+1)/(t*(t-1))"));
        assert_eq!(eigenvalue_e_g(EigenKind::E, 1, &Partition::empty(), false), r("1/(t-1)"));
        assert_eq!(eigenvalue_e_g(EigenKind::G, 1, &Partition::empty(), false), r("(1-t)/(1-q) * 1/(t-1)"));
    }
}
