//! The twisted vertex integral
//! `∫ ∏dz_i/(2πi z_i) ∏_{i<j} (1-z_j/z_i)/(1-q^{-1}z_j/z_i)
//!  ∏_{i,j} (1 - t^{1/2}q^{μ_i-1/2} x_i z_j)/(1 - t^{-1/2}q^{-1/2} x_i z_j) ⟨0|:ξ(z_1)⋯ξ(z_r):Γ_n(X)_+`
//! paired with `|p_λ⟩`, and the difference-operator expression it equals.

use super::commutator_scalar;
use super::residue::{kernel_coefficient, Kernel};
use super::vertex::VertexKind;
use crate::coefficients::RatFunc;
use crate::error::Result;
use crate::macdonald::difference::compositions;
use crate::macdonald::operator_theorem_a;
use crate::partitions::Partition;
use crate::symfunc::{MPoly, SymFunc};
use std::collections::BTreeMap;

type Poly = MPoly<RatFunc>;

/// `⟨0|:ξ(z_1)⋯ξ(z_r):Γ_n(X)_+|p_λ⟩`: only the annihilation halves act, so
/// each part `k` becomes `p_k(x) + κ_k β_k Σ_i z_i^{-k}`.
fn vertex_part(r: usize, n: usize, l: &Partition) -> BTreeMap<Vec<i32>, Poly> {
    let mut cur: BTreeMap<Vec<i32>, Poly> = BTreeMap::new();
    cur.insert(vec![0; r], Poly::constant(n, RatFunc::one()));
    for &k in l.parts() {
        let pk = Poly::power_sum(n, k);
        let w = VertexKind::Xi.annihilation(k).mul(&commutator_scalar(k));
        let mut next: BTreeMap<Vec<i32>, Poly> = BTreeMap::new();
        for (e, c) in &cur {
            let kept = c.mul(&pk);
            let slot = next.entry(e.clone()).or_insert_with(|| Poly::zero(n));
            *slot = slot.add(&kept);
            for i in 0..r {
                let mut e2 = e.clone();
                e2[i] -= k as i32;
                let slot = next.entry(e2).or_insert_with(|| Poly::zero(n));
                *slot = slot.add(&c.mul_rat(&w));
            }
        }
        cur = next;
    }
    cur
}

/// Coefficients of `z^f`, `f = 0..=top`, in `∏_i (1 - a_i x_i z)/(1 - b x_i z)`.
fn twist_series(mu: &[i32], top: u32) -> Vec<Poly> {
    let n = mu.len();
    let b = RatFunc::mono_quarter(-2, -2);
    let mut acc: Vec<Poly> =
        (0..=top).map(|f| if f == 0 { Poly::constant(n, RatFunc::one()) } else { Poly::zero(n) }).collect();
    for (i, &m) in mu.iter().enumerate() {
        let a = RatFunc::mono_quarter(4 * m - 2, 2);
        // (1 - a y)/(1 - b y) = 1 + Σ_{k≥1} (b^k - a b^{k-1}) y^k
        let g: Vec<RatFunc> = (0..=top as i32)
            .map(|k| if k == 0 { RatFunc::one() } else { b.pow(k).sub(&a.mul(&b.pow(k - 1))) })
            .collect();
        let mut next: Vec<Poly> = vec![Poly::zero(n); top as usize + 1];
        for (f, c) in acc.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for k in 0..=(top as usize - f) {
                let mut e = vec![0; n];
                e[i] = k as u32;
                let mut mono = Poly::zero(n);
                mono.add_term(e, g[k].clone());
                next[f + k] = next[f + k].add(&c.mul(&mono));
            }
        }
        acc = next;
    }
    acc
}

/// The twisted integral paired with `|p_λ⟩`, a polynomial in `x_1..x_n`
/// homogeneous of degree `|λ|`.
pub fn twisted_vertex_integral(r: usize, mu: &[i32], l: &Partition) -> Result<Poly> {
    let n = mu.len();
    let d = l.weight();
    let kernel = Kernel::Product { gamma: RatFunc::mono(-1, 0) };
    let twist = twist_series(mu, d);
    let mut out = Poly::zero(n);
    for (e, c) in vertex_part(r, n, l) {
        let deficit: i32 = -e.iter().sum::<i32>();
        for f in compositions(r, deficit as u32) {
            let total: Vec<i32> = e.iter().zip(&f).map(|(a, &b)| -(a + b as i32)).collect();
            let k = kernel_coefficient(&kernel, &total);
            if k.is_zero() {
                continue;
            }
            let mut term = c.mul_rat(&k);
            for &fj in &f {
                term = term.mul(&twist[fj as usize]);
            }
            out = out.add(&term);
        }
    }
    for c in out.terms().values() {
        c.expect_integral()?;
    }
    Ok(out)
}

/// Both sides of the identity on `|p_λ⟩`: the twisted integral and the
/// `H^{(n),(μ)}` combination applied to `p_λ(x_1..x_n)`.
pub fn twisted_identity_sides(r: u32, mu: &[i32], l: &Partition) -> Result<(Poly, Poly)> {
    let lhs = twisted_vertex_integral(r as usize, mu, l)?;
    let f = SymFunc::<RatFunc>::p(l.clone()).reduce_to_variables(mu.len());
    let rhs = operator_theorem_a(r, mu).apply(&f)?;
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vacuum_one_variable() {
        for mu in [vec![0], vec![1]] {
            let (a, b) = twisted_identity_sides(1, &mu, &Partition::empty()).unwrap();
            assert_eq!(a, b, "μ={mu:?}");
        }
    }

    #[test]
    fn degree_two() {
        for mu in [vec![0, 0], vec![1, 0]] {
            for l in ["2", "1,1"] {
                let (a, b) = twisted_identity_sides(2, &mu, &l.parse().unwrap()).unwrap();
                assert_eq!(a, b, "μ={mu:?} λ={l}");
            }
        }
    }
}
