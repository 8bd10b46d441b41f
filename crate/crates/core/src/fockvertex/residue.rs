//! Constant-term functionals against the two kernels of the free-field
//! operators.
//!
//! * `Product { γ }` is `∏_{i<j} (1 - z_j/z_i)/(1 - γ z_j/z_i)`, expanded in
//!   nonnegative powers of `z_j/z_i`.
//! * `Determinant { γ }` is `∏_i z_i · det(1/(z_i - γ z_j))`, so that the
//!   residue `∫∏dz_i det(⋯) S` is the constant term of this kernel times `S`.
//!
//! Each entry of the determinant is expanded as `Σ_k γ^k (z_j/z_i)^k`. Along a
//! cycle of a permutation the product of these expansions has coefficients
//! that are geometric series in `γ^m` (`m` the cycle length); they are summed
//! to their rational values, which is the only way the expansion defines an
//! element of the coefficient field.

use super::tensor::TensorFockVector;
use super::vertex::VertexSeries;
use crate::coefficients::RatFunc;
use crate::error::{Error, Result};
use std::collections::HashMap;

#[derive(Clone, Debug, PartialEq)]
pub enum Kernel {
    Product { gamma: RatFunc },
    Determinant { gamma: RatFunc },
}

impl Kernel {
    pub fn gamma(&self) -> &RatFunc {
        match self {
            Kernel::Product { gamma } | Kernel::Determinant { gamma } => gamma,
        }
    }
}

/// Coefficient of `z^e` in the kernel with `e.len()` variables.
pub fn kernel_coefficient(kernel: &Kernel, e: &[i32]) -> RatFunc {
    if e.iter().sum::<i32>() != 0 {
        return RatFunc::zero();
    }
    match kernel {
        Kernel::Product { gamma } => product_coefficient(gamma, e),
        Kernel::Determinant { gamma } => determinant_coefficient(gamma, e),
    }
}

fn product_coefficient(gamma: &RatFunc, e: &[i32]) -> RatFunc {
    let r = e.len();
    // (z_j/z_i)^k moves weight from i to j; Σ_{i<j} k_ij (j - i) = Σ_m m e_m.
    let budget: i64 = e.iter().enumerate().map(|(m, &x)| m as i64 * x as i64).sum();
    if budget < 0 {
        return RatFunc::zero();
    }
    let pairs: Vec<(usize, usize)> = (0..r).flat_map(|i| (i + 1..r).map(move |j| (i, j))).collect();
    // f(x) = (1-x)/(1-γx) = 1 + Σ_{k≥1} (γ^k - γ^{k-1}) x^k
    let f = |k: i64| -> RatFunc {
        if k == 0 {
            RatFunc::one()
        } else {
            gamma.pow(k as i32).sub(&gamma.pow(k as i32 - 1))
        }
    };
    let mut acc = RatFunc::zero();
    let mut cur = vec![0i32; r];
    let mut ks = vec![0i64; pairs.len()];
    fn walk(
        idx: usize,
        left: i64,
        pairs: &[(usize, usize)],
        ks: &mut [i64],
        cur: &mut [i32],
        target: &[i32],
        acc: &mut RatFunc,
        f: &dyn Fn(i64) -> RatFunc,
    ) {
        if idx == pairs.len() {
            if left == 0 && cur == target {
                let mut c = RatFunc::one();
                for &k in ks.iter() {
                    c = c.mul(&f(k));
                }
                *acc = acc.add(&c);
            }
            return;
        }
        let (i, j) = pairs[idx];
        // once every pair touching i as the left end is fixed, e_i is final
        let last_for_i = idx + 1 == pairs.len() || pairs[idx + 1].0 != i;
        let step = (j - i) as i64;
        let mut k = 0;
        while k * step <= left {
            ks[idx] = k;
            cur[i] -= k as i32;
            cur[j] += k as i32;
            if !last_for_i || cur[i] == target[i] {
                walk(idx + 1, left - k * step, pairs, ks, cur, target, acc, f);
            }
            cur[i] += k as i32;
            cur[j] -= k as i32;
            k += 1;
        }
        ks[idx] = 0;
    }
    if pairs.is_empty() {
        return RatFunc::one();
    }
    walk(0, budget, &pairs, &mut ks, &mut cur, e, &mut acc, &f);
    acc
}

/// Permutations of `0..r` with their signs, in lexicographic order.
pub(crate) fn permutations(r: usize) -> Vec<(Vec<usize>, bool)> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..r).collect();
    loop {
        let mut inv = 0;
        for i in 0..r {
            for j in i + 1..r {
                if p[i] > p[j] {
                    inv += 1;
                }
            }
        }
        out.push((p.clone(), inv % 2 == 1));
        // next lexicographic permutation
        let Some(i) = (1..r).rev().find(|&i| p[i - 1] < p[i]) else { break };
        let j = (i..r).rev().find(|&j| p[j] > p[i - 1]).expect("exists");
        p.swap(i - 1, j);
        p[i..].reverse();
    }
    out
}

fn determinant_coefficient(gamma: &RatFunc, e: &[i32]) -> RatFunc {
    let r = e.len();
    let mut acc = RatFunc::zero();
    for (sigma, odd) in permutations(r) {
        let mut seen = vec![false; r];
        let mut c = RatFunc::one();
        for start in 0..r {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(i);
                i = sigma[i];
            }
            let partial: Vec<i64> = cycle
                .iter()
                .scan(0i64, |s, &v| {
                    *s += e[v] as i64;
                    Some(*s)
                })
                .collect();
            if *partial.last().expect("nonempty") != 0 {
                c = RatFunc::zero();
                break;
            }
            let m = cycle.len() as i64;
            let top = partial.iter().copied().max().expect("nonempty").max(0);
            let total: i64 = partial.iter().sum();
            let num = gamma.pow((m * top - total) as i32);
            let den = RatFunc::one().sub(&gamma.pow(m as i32));
            c = c.mul(&num.div(&den).expect("γ^m ≠ 1"));
        }
        if !c.is_zero() {
            acc = if odd { acc.sub(&c) } else { acc.add(&c) };
        }
    }
    acc
}

/// Constant term of `kernel · S`, i.e. `Σ_e K[-e] S[e]`.
pub fn constant_term(kernel: &Kernel, s: &VertexSeries) -> Result<TensorFockVector<RatFunc>> {
    if !s.complete {
        return Err(Error::WindowTooSmall { needed: i64::MAX, have: s.window });
    }
    let ext = s.extent();
    if ext > s.window {
        return Err(Error::WindowTooSmall { needed: ext, have: s.window });
    }
    let arity = s.terms.values().next().map(|v| v.arity()).unwrap_or(1);
    let mut out = TensorFockVector::zero(arity);
    let mut memo: HashMap<Vec<i32>, RatFunc> = HashMap::new();
    for (e, v) in &s.terms {
        let neg: Vec<i32> = e.iter().map(|x| -x).collect();
        let k = memo.entry(neg.clone()).or_insert_with(|| kernel_coefficient(kernel, &neg)).clone();
        if !k.is_zero() {
            out = out.add(&v.mul_rat(&k));
        }
    }
    Ok(out)
}

/// `∫ ∏ dz_i/(2πi) det(1/(z_i - γ z_j)) S(z)` over `r` variables.
pub fn residue_d(r: usize, gamma: &RatFunc, s: &VertexSeries) -> Result<TensorFockVector<RatFunc>> {
    assert_eq!(s.nvars, r, "series has the wrong number of variables");
    constant_term(&Kernel::Determinant { gamma: gamma.clone() }, s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> RatFunc {
        s.parse().unwrap()
    }

    #[test]
    fn single_variable() {
        let g = r("q");
        assert_eq!(kernel_coefficient(&Kernel::Determinant { gamma: g.clone() }, &[0]), r("1/(1-q)"));
        assert_eq!(kernel_coefficient(&Kernel::Product { gamma: g }, &[0]), RatFunc::one());
    }

    #[test]
    fn product_two_variables() {
        // (1-x)/(1-γx), x = z_2/z_1: coefficient of x^2 is γ^2 - γ
        let g = r("t");
        assert_eq!(kernel_coefficient(&Kernel::Product { gamma: g }, &[-2, 2]), r("t^2-t"));
    }

    #[test]
    fn permutation_count() {
        let ps = permutations(3);
        assert_eq!(ps.len(), 6);
        assert_eq!(ps.iter().filter(|p| p.1).count(), 3);
    }
}
