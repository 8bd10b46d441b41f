//! The free-field operators `Ê_r`, `Ĝ_r` and their parameter-inverted
//! versions, in product-kernel and determinant-kernel form.
//!
//! Images of basis vectors `p_μ` are memoized; general vectors are handled by
//! linearity with a parallel map over their basis terms.

use super::residue::{constant_term, Kernel};
use super::tensor::TensorFockVector;
use super::vertex::{normal_ordered_apply, VertexFactor, VertexKind};
use crate::coefficients::{binom, factorial, poch, Coeff, RatFunc};
use crate::error::{Error, Result};
use crate::partitions::{partitions_of, Partition};
use crate::symfunc::{eigenvalue_e_g, EigenKind, SymFunc};
use rayon::prelude::*;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// `E` and `G` realize `E_r`, `G_r`; the `Inv` variants realize the same
/// operators with `q, t` inverted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FreeFieldFamily {
    E,
    EInv,
    G,
    GInv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KernelForm {
    Product,
    Determinant,
}

fn vertex_kind(family: FreeFieldFamily) -> VertexKind {
    match family {
        FreeFieldFamily::E | FreeFieldFamily::G => VertexKind::Eta,
        FreeFieldFamily::EInv | FreeFieldFamily::GInv => VertexKind::Xi,
    }
}

fn gamma(family: FreeFieldFamily) -> RatFunc {
    match family {
        FreeFieldFamily::E => RatFunc::mono(0, -1),
        FreeFieldFamily::EInv => RatFunc::mono(0, 1),
        FreeFieldFamily::G => RatFunc::mono(1, 0),
        FreeFieldFamily::GInv => RatFunc::mono(-1, 0),
    }
}

fn prefactor(family: FreeFieldFamily, r: u32, form: KernelForm) -> RatFunc {
    let ri = r as i32;
    let sign = if r % 2 == 1 { RatFunc::int(-1) } else { RatFunc::one() };
    let b2 = binom(ri as i64, 2) as i32;
    let tri = ri * (ri + 1) / 2;
    match form {
        KernelForm::Product => {
            let (num, base) = match family {
                FreeFieldFamily::E => (RatFunc::mono(0, -tri), RatFunc::mono(0, -1)),
                FreeFieldFamily::EInv => (RatFunc::mono(0, tri), RatFunc::mono(0, 1)),
                FreeFieldFamily::G => (sign.mul(&RatFunc::mono(b2, 0)), RatFunc::mono(1, 0)),
                FreeFieldFamily::GInv => (sign.mul(&RatFunc::mono(-b2, 0)), RatFunc::mono(-1, 0)),
            };
            num.div(&poch(&base, &base, r as usize)).expect("nonzero")
        }
        KernelForm::Determinant => {
            let num = match family {
                FreeFieldFamily::E => RatFunc::mono(0, -ri),
                FreeFieldFamily::EInv => RatFunc::mono(0, ri),
                FreeFieldFamily::G | FreeFieldFamily::GInv => sign,
            };
            num.div(&RatFunc::from_bigint(factorial(r as u64))).expect("nonzero")
        }
    }
}

fn kernel(family: FreeFieldFamily, form: KernelForm) -> Kernel {
    let g = gamma(family);
    match form {
        KernelForm::Product => Kernel::Product { gamma: g },
        KernelForm::Determinant => Kernel::Determinant { gamma: g },
    }
}

type Key = (FreeFieldFamily, u32, KernelForm, Partition);

fn cache() -> &'static Mutex<HashMap<Key, Arc<SymFunc<RatFunc>>>> {
    static CACHE: OnceLock<Mutex<HashMap<Key, Arc<SymFunc<RatFunc>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn compute_image(family: FreeFieldFamily, r: u32, form: KernelForm, mu: &Partition) -> Result<SymFunc<RatFunc>> {
    let d = mu.weight();
    let factors: Vec<VertexFactor> = (0..r as usize).map(|i| VertexFactor::new(vertex_kind(family), i)).collect();
    let v = TensorFockVector::from_sym(&SymFunc::p(mu.clone()));
    // Annihilation lowers each exponent by at most d and creation raises it
    // by at most the annihilated weight, so every exponent lies in [-d, d].
    let series = normal_ordered_apply(&factors, r as usize, &v, d, true, d as i64)?;
    let ct = constant_term(&kernel(family, form), &series)?;
    let out = ct.to_sym().mul_rat(&prefactor(family, r, form));
    for c in out.terms().values() {
        c.expect_integral()?;
    }
    Ok(out)
}

/// The memoized image of `p_μ`.
pub fn free_field_image(
    family: FreeFieldFamily,
    r: u32,
    form: KernelForm,
    mu: &Partition,
) -> Result<Arc<SymFunc<RatFunc>>> {
    assert!(r >= 1, "operators are indexed from r = 1");
    let key = (family, r, form, mu.clone());
    if let Some(v) = cache().lock().expect("cache lock").get(&key) {
        return Ok(v.clone());
    }
    let img = Arc::new(compute_image(family, r, form, mu)?);
    let mut guard = cache().lock().expect("cache lock");
    Ok(guard.entry(key).or_insert(img).clone())
}

fn images(
    family: FreeFieldFamily,
    r: u32,
    form: KernelForm,
    keys: Vec<Partition>,
) -> Result<Vec<Arc<SymFunc<RatFunc>>>> {
    keys.par_iter().map(|mu| free_field_image(family, r, form, mu)).collect()
}

/// Image of an arbitrary vector.
pub fn free_field_operator(
    family: FreeFieldFamily,
    r: u32,
    form: KernelForm,
    v: &SymFunc<RatFunc>,
) -> Result<SymFunc<RatFunc>> {
    let keys: Vec<Partition> = v.terms().keys().cloned().collect();
    let imgs = images(family, r, form, keys)?;
    let mut out = SymFunc::zero();
    for ((_, c), img) in v.terms().iter().zip(imgs) {
        out = out.add(&img.mul_rat(c));
    }
    Ok(out)
}

/// As [`free_field_operator`], but with an explicit exponent window that
/// must cover the degree of `v`.
pub fn free_field_operator_windowed(
    family: FreeFieldFamily,
    r: u32,
    form: KernelForm,
    v: &SymFunc<RatFunc>,
    window: i64,
) -> Result<SymFunc<RatFunc>> {
    let needed = v.max_degree().unwrap_or(0) as i64;
    if window < needed {
        return Err(Error::WindowTooSmall { needed, have: window });
    }
    free_field_operator(family, r, form, v)
}

/// Image of a vector with arbitrary coefficients.
pub fn free_field_operator_trunc<C: Coeff>(
    family: FreeFieldFamily,
    r: u32,
    form: KernelForm,
    v: &SymFunc<C>,
) -> Result<SymFunc<C>> {
    let keys: Vec<Partition> = v.terms().keys().cloned().collect();
    let imgs = images(family, r, form, keys)?;
    let mut out = SymFunc::zero();
    for ((_, c), img) in v.terms().iter().zip(imgs) {
        for (l, k) in img.terms() {
            out.add_term(l.clone(), c.mul_rat(k));
        }
    }
    Ok(out)
}

/// The degree-`d` block as (input partition, image) pairs in canonical order.
pub fn operator_matrix(
    family: FreeFieldFamily,
    r: u32,
    form: KernelForm,
    d: u32,
) -> Result<Vec<(Partition, SymFunc<RatFunc>)>> {
    let keys = partitions_of(d);
    let imgs = images(family, r, form, keys.clone())?;
    Ok(keys.into_iter().zip(imgs).map(|(k, v)| (k, (*v).clone())).collect())
}

/// The eigenvalue on `|P_λ⟩` predicted from Newton identities.
pub fn expected_free_field_eigenvalue(family: FreeFieldFamily, r: u32, l: &Partition) -> RatFunc {
    match family {
        FreeFieldFamily::E => eigenvalue_e_g(EigenKind::E, r, l, false),
        FreeFieldFamily::G => eigenvalue_e_g(EigenKind::G, r, l, false),
        FreeFieldFamily::EInv => eigenvalue_e_g(EigenKind::E, r, l, true),
        FreeFieldFamily::GInv => eigenvalue_e_g(EigenKind::G, r, l, true),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::macdonald::macdonald_p;

    fn r(s: &str) -> RatFunc {
        s.parse().unwrap()
    }

    #[test]
    fn vacuum_and_degree_one() {
        let vac = SymFunc::<RatFunc>::one();
        for form in [KernelForm::Product, KernelForm::Determinant] {
            let out = free_field_operator(FreeFieldFamily::E, 1, form, &vac).unwrap();
            assert_eq!(out, vac.mul_rat(&r("1/(t-1)")));
            let p1 = macdonald_p(&"1".parse().unwrap()).unwrap();
            let out = free_field_operator(FreeFieldFamily::E, 1, form, &p1).unwrap();
            assert_eq!(out, p1.mul_rat(&r("(q*t-q+1)/(t*(t-1))")));
        }
    }

    #[test]
    fn forms_agree_small() {
        for fam in [FreeFieldFamily::E, FreeFieldFamily::EInv, FreeFieldFamily::G, FreeFieldFamily::GInv] {
            for rr in 1..=2 {
                for d in 0..=2 {
                    let a = operator_matrix(fam, rr, KernelForm::Product, d).unwrap();
                    let b = operator_matrix(fam, rr, KernelForm::Determinant, d).unwrap();
                    assert_eq!(a, b, "{fam:?} r={rr} d={d}");
                }
            }
        }
    }

    #[test]
    fn diagonal_small() {
        for fam in [FreeFieldFamily::E, FreeFieldFamily::EInv, FreeFieldFamily::G, FreeFieldFamily::GInv] {
            for l in crate::partitions::partitions_up_to(2) {
                let p = macdonald_p(&l).unwrap();
                let out = free_field_operator(fam, 1, KernelForm::Determinant, &p).unwrap();
                assert_eq!(out, p.mul_rat(&expected_free_field_eigenvalue(fam, 1, &l)), "{fam:?} {l}");
            }
        }
    }
}
