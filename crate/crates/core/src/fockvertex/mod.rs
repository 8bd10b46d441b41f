//! The deformed Heisenberg Fock space, realized on symmetric functions
//! (`|λ⟩ ↔ p_λ`), together with vertex operators, constant-term functionals
//! and the free-field realizations built from them.

pub mod fermion;
pub mod operators;
pub mod residue;
pub mod tensor;
pub mod twisted;
pub mod vertex;

pub use fermion::{
    anticommutator_check, fermion_apply, schur_limit_checks, symmetrization_identity, FermionOp, FermionState,
    SchurReport,
};
pub use operators::{
    expected_free_field_eigenvalue, free_field_image, free_field_operator, free_field_operator_trunc,
    free_field_operator_windowed, operator_matrix, FreeFieldFamily, KernelForm,
};
pub use residue::{constant_term, kernel_coefficient, residue_d, Kernel};
pub use tensor::TensorFockVector;
pub use twisted::{twisted_identity_sides, twisted_vertex_integral};
pub use vertex::{
    normal_ordered_apply, ope_coefficients, vertex_product_apply, VertexFactor, VertexKind, VertexSeries,
};

use crate::coefficients::{Coeff, RatFunc, TruncPoly};
use crate::partitions::Partition;
use crate::symfunc::{inner_mixed, SymFunc};

/// `[a_n, a_{-n}] = n(1-q^n)/(1-t^n)`.
pub fn commutator_scalar(n: u32) -> RatFunc {
    let n = n as i32;
    RatFunc::one_minus(n, 0).div(&RatFunc::one_minus(0, n)).expect("nonzero").scale_int(n as i64)
}

/// `a_n` on a Fock vector: `a_{-n}` multiplies by `p_n`, `a_n` (`n > 0`) is
/// `n(1-q^n)/(1-t^n) ∂/∂p_n`.
pub fn heisenberg_apply<C: Coeff>(n: i32, v: &SymFunc<C>) -> SymFunc<C> {
    assert!(n != 0, "a_0 is not part of the algebra");
    let k = n.unsigned_abs();
    let mut out = SymFunc::zero();
    if n < 0 {
        let pk = Partition::new(vec![k]);
        for (l, c) in v.terms() {
            out.add_term(l.union(&pk), c.clone());
        }
        return out;
    }
    let kappa = commutator_scalar(k);
    for (l, c) in v.terms() {
        let m = l.multiplicity(k);
        if m == 0 {
            continue;
        }
        out.add_term(remove_part(l, k), c.mul_rat(&kappa.scale_int(m as i64)));
    }
    out
}

pub(crate) fn remove_part(l: &Partition, k: u32) -> Partition {
    let mut parts = l.parts().to_vec();
    let i = parts.iter().position(|&x| x == k).expect("part present");
    parts.remove(i);
    Partition::new(parts)
}

/// `⟨u|v⟩`, which under the correspondence is the `(q,t)` scalar product.
pub fn pairing<C: Coeff>(u: &SymFunc<C>, v: &SymFunc<RatFunc>) -> C {
    inner_mixed(u, v)
}

/// Which half of `Γ(X)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GammaSign {
    Plus,
    Minus,
}

/// `p_n(X)` for the variables with the given indices.
pub fn variable_power_sum(vars: &[usize], n: u32, prec: u32) -> TruncPoly {
    vars.iter().fold(TruncPoly::zero_with(prec), |acc, &v| {
        let mut e = vec![0u8; v + 1];
        e[v] = n as u8;
        acc.add(&TruncPoly::monomial(e, RatFunc::one(), prec))
    })
}

/// `exp(Σ_n c_n p_n)` as a symmetric function, where `c_n` has x-degree at
/// least `n`, so only `|ν| ≤ prec` survive.
fn exp_linear(c: &[TruncPoly], prec: u32) -> SymFunc<TruncPoly> {
    let mut acc = SymFunc::term(Partition::empty(), TruncPoly::constant(RatFunc::one(), prec));
    for (i, cn) in c.iter().enumerate() {
        let n = i as u32 + 1;
        let mut series = SymFunc::term(Partition::empty(), TruncPoly::constant(RatFunc::one(), prec));
        let mut pw = series.clone();
        let mut k = 1;
        while n * k <= prec {
            let step = SymFunc::term(Partition::new(vec![n]), cn.clone());
            pw = pw.mul(&step).mul_rat(&RatFunc::frac(1, k as i64));
            series = series.add(&pw);
            k += 1;
        }
        acc = acc.mul(&series);
        acc =
            SymFunc::from_terms(acc.terms().iter().filter(|(_, c)| !c.is_zero()).map(|(l, c)| (l.clone(), c.clone())));
    }
    acc
}

/// `Γ(X)_±` on a vector with truncated-polynomial coefficients.
///
/// `Γ(X)_+` is the translation `p_n ↦ p_n + p_n(X)`; `Γ(X)_-` multiplies by
/// `exp(Σ (1-t^n)/(1-q^n) p_n(X) p_n / n)`. Both are exact modulo x-degree
/// above `prec`.
pub fn gamma_apply(sign: GammaSign, vars: &[usize], v: &SymFunc<TruncPoly>, prec: u32) -> SymFunc<TruncPoly> {
    match sign {
        GammaSign::Minus => {
            let c: Vec<TruncPoly> = (1..=prec)
                .map(|n| {
                    let w = RatFunc::one_minus(0, n as i32)
                        .div(&RatFunc::one_minus(n as i32, 0))
                        .expect("nonzero")
                        .mul(&RatFunc::frac(1, n as i64));
                    variable_power_sum(vars, n, prec).mul_rat(&w)
                })
                .collect();
            v.mul(&exp_linear(&c, prec))
        }
        GammaSign::Plus => {
            let mut out = SymFunc::zero();
            for (l, c) in v.terms() {
                let mut term = SymFunc::term(Partition::empty(), c.clone());
                for &k in l.parts() {
                    let mut f = SymFunc::p(Partition::new(vec![k]));
                    f.add_term(Partition::empty(), variable_power_sum(vars, k, prec));
                    term = term.mul(&f);
                }
                out = out.add(&term);
            }
            SymFunc::from_terms(out.terms().iter().filter(|(_, c)| !c.is_zero()).map(|(l, c)| (l.clone(), c.clone())))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn heisenberg_small() {
        let vac: SymFunc<RatFunc> = SymFunc::one();
        let v = heisenberg_apply(-1, &vac);
        assert_eq!(v, SymFunc::p(p("1")));
        let back = heisenberg_apply(1, &v);
        assert_eq!(back, SymFunc::term(Partition::empty(), "(1-q)/(1-t)".parse().unwrap()));
        assert!(heisenberg_apply(2, &SymFunc::<RatFunc>::p(p("1,1"))).is_zero());
    }

    #[test]
    fn gamma_on_vacuum() {
        let vac = SymFunc::term(Partition::empty(), TruncPoly::constant(RatFunc::one(), 3));
        assert_eq!(gamma_apply(GammaSign::Plus, &[0, 1], &vac, 3), vac);
        let g = gamma_apply(GammaSign::Minus, &[0, 1], &vac, 3);
        let w: RatFunc = "(1-t)/(1-q)".parse().unwrap();
        let want = TruncPoly::var(0, 3).add(&TruncPoly::var(1, 3)).mul_rat(&w);
        assert_eq!(g.coeff(&p("1")), want);
    }
}
