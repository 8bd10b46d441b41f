//! Correlation functions as vacuum matrix elements
//! `⟨0| ψ_{f_N} ⋯ ψ_{f_1} |0⟩ / ⟨0| ψ_1 ⋯ ψ_1 |0⟩` with
//! `ψ_f = Γ(Y)_+ 𝒪(f) Γ(X)_-` and `𝒪(f)` a free-field operator.

use super::{Observable, ObservableFamily, ProcessSpec};
use crate::coefficients::{RatFunc, TruncPoly};
use crate::error::{Error, Result};
use crate::fockvertex::{free_field_operator_trunc, gamma_apply, FreeFieldFamily, GammaSign, KernelForm};
use crate::partitions::Partition;
use crate::symfunc::SymFunc;

/// The free-field operator whose eigenvalue on `|P_λ⟩` is the observable,
/// as `(family, r, scalar)`; `None` is the identity.
pub fn observable_operator(obs: &Observable) -> Result<Option<(FreeFieldFamily, u32, RatFunc)>> {
    let r = obs.r;
    let ranked = !matches!(obs.family, ObservableFamily::Unit | ObservableFamily::HatE1);
    if ranked && r == 0 {
        return Err(Error::UnsupportedObservable(format!("{:?} with rank 0", obs.family)));
    }
    let ri = r as i32;
    Ok(match obs.family {
        ObservableFamily::Unit => None,
        ObservableFamily::HatE1 => Some((FreeFieldFamily::E, 1, RatFunc::mono(0, 1).sub(&RatFunc::one()))),
        // e_r(q^λ t^{-δ+1}) = t^r e_r(q^λ t^{-δ})
        ObservableFamily::E => Some((FreeFieldFamily::E, r, RatFunc::mono(0, ri))),
        ObservableFamily::EPrime => Some((FreeFieldFamily::EInv, r, RatFunc::mono(0, -ri))),
        ObservableFamily::G => Some((FreeFieldFamily::G, r, RatFunc::one())),
        // g_r(X; q^{-1}, t^{-1}) = (q/t)^r g_r(X; q, t)
        ObservableFamily::GPrime => Some((FreeFieldFamily::GInv, r, RatFunc::one())),
    })
}

fn matrix_element(obs: &[Observable], spec: &ProcessSpec) -> Result<TruncPoly> {
    assert_eq!(obs.len(), spec.n_levels(), "one observable per level");
    let d = spec.degree;
    let mut state: SymFunc<TruncPoly> = SymFunc::term(Partition::empty(), TruncPoly::constant(RatFunc::one(), d));
    for (a, o) in obs.iter().enumerate() {
        state = gamma_apply(GammaSign::Minus, &spec.x_vars(a), &state, d);
        if let Some((family, r, c)) = observable_operator(o)? {
            state = free_field_operator_trunc(family, r, KernelForm::Determinant, &state)?.mul_rat(&c);
        }
        state = gamma_apply(GammaSign::Plus, &spec.y_vars(a), &state, d);
    }
    Ok(state.coeff(&Partition::empty()).truncate(d))
}

/// `⟨0| ψ_1 ⋯ ψ_1 |0⟩`, which equals `∏_{i≤j} Π(X^{(i)}, Y^{(j)})`.
pub fn operator_normalization(spec: &ProcessSpec) -> Result<TruncPoly> {
    matrix_element(&vec![Observable::unit(); spec.n_levels()], spec)
}

/// The correlation function through the free-field matrix element.
pub fn correlation_operator(obs: &[Observable], spec: &ProcessSpec) -> Result<TruncPoly> {
    let num = matrix_element(obs, spec)?;
    if obs.iter().all(|o| o.family == ObservableFamily::Unit) {
        return Ok(TruncPoly::constant(RatFunc::one(), spec.degree));
    }
    Ok(num.mul(&operator_normalization(spec)?.inverse()?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::process::{correlation_direct, normalization};

    #[test]
    fn vacuum_e1() {
        let spec = ProcessSpec::uniform(1, 0, 0, 0);
        let v = correlation_operator(&[Observable::new(ObservableFamily::E, 1)], &spec).unwrap();
        assert_eq!(v.constant_term(), "t/(t-1)".parse().unwrap());
    }

    #[test]
    fn normalization_is_cauchy() {
        let spec = ProcessSpec::uniform(2, 1, 1, 3);
        assert_eq!(operator_normalization(&spec).unwrap(), normalization(&spec));
    }

    #[test]
    fn one_level_hat_e1() {
        let spec = ProcessSpec::uniform(1, 1, 1, 2);
        let o = [Observable::hat_e1()];
        assert_eq!(correlation_operator(&o, &spec).unwrap(), correlation_direct(&o, &spec).unwrap());
    }
}
