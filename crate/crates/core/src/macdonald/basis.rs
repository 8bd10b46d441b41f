//! Macdonald `P_λ`, `Q_λ` by Gram-Schmidt in each degree, and skew versions
//! extracted from the coproduct.

use crate::coefficients::RatFunc;
use crate::error::{Error, Result};
use crate::partitions::{partitions_of, Partition};
use crate::symfunc::{monomial_basis, to_monomial_coefficients, z_qt, SymFunc};
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

type Sym = SymFunc<RatFunc>;

/// `P_λ` and `⟨P_λ, P_λ⟩` for every `λ` of one degree.
#[derive(Clone, Debug)]
pub struct DegreeBlock {
    pub p: BTreeMap<Partition, Sym>,
    pub norms: BTreeMap<Partition, RatFunc>,
}

fn cache() -> &'static Mutex<HashMap<u32, Arc<DegreeBlock>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<DegreeBlock>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Gram-Schmidt along the canonical order, starting from `(1^d)`.
fn gram_schmidt(d: u32) -> Result<DegreeBlock> {
    let mono = monomial_basis(d);
    let mut p: BTreeMap<Partition, Sym> = BTreeMap::new();
    let mut norms: BTreeMap<Partition, RatFunc> = BTreeMap::new();
    let mut done: Vec<Partition> = Vec::new();
    for lam in partitions_of(d).into_iter().rev() {
        let m = &mono[&lam];
        let mut f = m.clone();
        for mu in &done {
            let c = m.inner(&p[mu]).div(&norms[mu])?;
            if !c.is_zero() {
                f = f.sub(&p[mu].mul_rat(&c));
            }
        }
        let nrm = f.inner(&f);
        if nrm.is_zero() {
            return Err(Error::SingularGram(lam.to_string()));
        }
        p.insert(lam.clone(), f);
        norms.insert(lam.clone(), nrm);
        done.push(lam);
    }
    Ok(DegreeBlock { p, norms })
}

/// The cached degree-`d` block. Concurrent callers may compute it twice; the
/// values agree, so the first insertion wins.
pub fn macdonald_block(d: u32) -> Result<Arc<DegreeBlock>> {
    if let Some(b) = cache().lock().expect("cache lock").get(&d) {
        return Ok(b.clone());
    }
    let block = Arc::new(gram_schmidt(d)?);
    let mut guard = cache().lock().expect("cache lock");
    Ok(guard.entry(d).or_insert(block).clone())
}

pub fn macdonald_p(l: &Partition) -> Result<Sym> {
    Ok(macdonald_block(l.weight())?.p[l].clone())
}

/// `⟨P_λ, P_λ⟩_{q,t}`.
pub fn macdonald_norm(l: &Partition) -> Result<RatFunc> {
    Ok(macdonald_block(l.weight())?.norms[l].clone())
}

pub fn macdonald_q(l: &Partition) -> Result<Sym> {
    let b = macdonald_block(l.weight())?;
    Ok(b.p[l].mul_rat(&b.norms[l].inv()?))
}

/// Verifies dominance triangularity against `m_μ` and orthogonality of
/// every pair in degree `d`; returns a description of the first failure.
pub fn check_block(d: u32) -> std::result::Result<(), String> {
    let b = macdonald_block(d).map_err(|e| e.to_string())?;
    let parts = partitions_of(d);
    for lam in &parts {
        let coeffs = to_monomial_coefficients(&b.p[lam]);
        match coeffs.get(lam) {
            Some(c) if c.is_one() => {}
            other => return Err(format!("P_{lam}: leading m-coefficient is {other:?}")),
        }
        for mu in coeffs.keys() {
            if !mu.dominated_by(lam) {
                return Err(format!("P_{lam} has m_{mu} with {mu} not below {lam}"));
            }
        }
    }
    for (i, a) in parts.iter().enumerate() {
        for c in &parts[i + 1..] {
            let v = b.p[a].inner(&b.p[c]);
            if !v.is_zero() {
                return Err(format!("<P_{a}, P_{c}> = {v}"));
            }
        }
    }
    Ok(())
}

/// Which normalization a skew function uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SkewKind {
    P,
    Q,
}

/// `P_{λ/μ}` (or `Q_{λ/μ}`): pair the second leg of the coproduct of `P_λ`
/// against `Q_μ` (resp. of `Q_λ` against `P_μ`).
pub fn skew(kind: SkewKind, l: &Partition, mu: &Partition) -> Result<Sym> {
    if !l.contains(mu) {
        return Ok(Sym::zero());
    }
    let (whole, dual) = match kind {
        SkewKind::P => (macdonald_p(l)?, macdonald_q(mu)?),
        SkewKind::Q => (macdonald_q(l)?, macdonald_p(mu)?),
    };
    let mut out = Sym::zero();
    for ((a, b), c) in whole.coproduct() {
        if b.weight() != mu.weight() {
            continue;
        }
        let d = dual.coeff(&b);
        if d.is_zero() {
            continue;
        }
        out.add_term(a, c.mul(&d).mul(&z_qt(&b)));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symfunc::monomial;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn degree_two_block() {
        let c: RatFunc = "(1+q)*(1-t)/(1-q*t)".parse().unwrap();
        let want = monomial(&p("2")).add(&monomial(&p("1,1")).mul_rat(&c));
        assert_eq!(macdonald_p(&p("2")).unwrap(), want);
        assert_eq!(macdonald_p(&p("1,1")).unwrap(), monomial(&p("1,1")));
        check_block(3).unwrap();
    }

    #[test]
    fn skew_by_self_and_empty() {
        let l = p("2,1");
        assert_eq!(skew(SkewKind::P, &l, &Partition::empty()).unwrap(), macdonald_p(&l).unwrap());
        assert_eq!(skew(SkewKind::P, &l, &l).unwrap(), Sym::one());
        assert!(skew(SkewKind::Q, &p("2"), &p("1,1")).unwrap().is_zero());
    }
}
