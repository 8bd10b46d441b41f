//! Polynomials in specialization variables over [`RatFunc`], known modulo
//! total degree above a precision cutoff.

use super::ratfunc::RatFunc;
use super::Coeff;
use crate::error::{Error, Result};
use std::collections::BTreeMap;
use std::fmt;

/// Exponent vector; trailing zeros are trimmed so keys are canonical.
pub type Exps = Vec<u8>;

pub const EXACT: u32 = u32::MAX;

fn trim(mut e: Exps) -> Exps {
    while e.last() == Some(&0) {
        e.pop();
    }
    e
}

fn degree(e: &Exps) -> u32 {
    e.iter().map(|&x| x as u32).sum()
}

/// Truncated polynomial. `prec` is the largest total degree that is known;
/// constants built without a cutoff carry [`EXACT`]. Binary operations keep
/// the smaller precision.
#[derive(Clone)]
pub struct TruncPoly {
    terms: BTreeMap<Exps, RatFunc>,
    prec: u32,
}

impl TruncPoly {
    pub fn zero_with(prec: u32) -> Self {
        TruncPoly { terms: BTreeMap::new(), prec }
    }

    pub fn constant(c: RatFunc, prec: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        TruncPoly { terms, prec }
    }

    /// The variable with index `i`.
    pub fn var(i: usize, prec: u32) -> Self {
        let mut e = vec![0u8; i + 1];
        e[i] = 1;
        Self::monomial(e, RatFunc::one(), prec)
    }

    pub fn monomial(e: Exps, c: RatFunc, prec: u32) -> Self {
        let e = trim(e);
        let mut terms = BTreeMap::new();
        if !c.is_zero() && degree(&e) <= prec {
            terms.insert(e, c);
        }
        TruncPoly { terms, prec }
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn terms(&self) -> &BTreeMap<Exps, RatFunc> {
        &self.terms
    }

    pub fn coeff(&self, e: &[u8]) -> RatFunc {
        self.terms.get(&trim(e.to_vec())).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> RatFunc {
        self.coeff(&[])
    }

    /// Lowers the precision to `d` and drops higher terms.
    pub fn truncate(&self, d: u32) -> Self {
        let prec = self.prec.min(d);
        TruncPoly {
            terms: self.terms.iter().filter(|(e, _)| degree(e) <= prec).map(|(e, c)| (e.clone(), c.clone())).collect(),
            prec,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Smallest total degree present.
    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(degree).min()
    }

    pub fn add(&self, o: &Self) -> Self {
        let prec = self.prec.min(o.prec);
        let mut terms: BTreeMap<Exps, RatFunc> = BTreeMap::new();
        for (e, c) in self.terms.iter().chain(o.terms.iter()) {
            if degree(e) > prec {
                continue;
            }
            match terms.get_mut(e) {
                Some(v) => *v = v.add(c),
                None => {
                    terms.insert(e.clone(), c.clone());
                }
            }
        }
        terms.retain(|_, c| !c.is_zero());
        TruncPoly { terms, prec }
    }

    pub fn neg(&self) -> Self {
        TruncPoly { terms: self.terms.iter().map(|(e, c)| (e.clone(), c.neg())).collect(), prec: self.prec }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let prec = self.prec.min(o.prec);
        let mut terms: BTreeMap<Exps, RatFunc> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            let da = degree(ea);
            if da > prec {
                continue;
            }
            for (eb, cb) in &o.terms {
                if da + degree(eb) > prec {
                    continue;
                }
                let n = ea.len().max(eb.len());
                let e: Exps =
                    (0..n).map(|i| ea.get(i).copied().unwrap_or(0) + eb.get(i).copied().unwrap_or(0)).collect();
                let p = ca.mul(cb);
                match terms.get_mut(&e) {
                    Some(v) => *v = v.add(&p),
                    None => {
                        terms.insert(e, p);
                    }
                }
            }
        }
        terms.retain(|_, c| !c.is_zero());
        TruncPoly { terms, prec }
    }

    pub fn mul_rat(&self, r: &RatFunc) -> Self {
        if r.is_zero() {
            return TruncPoly::zero_with(self.prec);
        }
        TruncPoly { terms: self.terms.iter().map(|(e, c)| (e.clone(), c.mul(r))).collect(), prec: self.prec }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = TruncPoly::constant(RatFunc::one(), self.prec);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplicative inverse; the constant term must be nonzero and the
    /// precision finite.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = self.constant_term();
        let c0i = c0.inv()?;
        let one = TruncPoly::constant(RatFunc::one(), self.prec);
        // 1/(c0 (1 + h)) = c0^{-1} Σ (-h)^k with h of positive degree
        let h = self.mul_rat(&c0i).sub(&one);
        if self.prec == EXACT {
            if h.is_zero() {
                return Ok(TruncPoly::constant(c0i, EXACT));
            }
            return Err(Error::DivisionByZero);
        }
        let mut acc = one.clone();
        let mut pw = one;
        for _ in 0..self.prec {
            pw = pw.mul(&h.neg());
            if pw.is_zero() {
                break;
            }
            acc = acc.add(&pw);
        }
        Ok(acc.mul_rat(&c0i))
    }

    /// Exponential of a series without constant term.
    pub fn exp(&self) -> Self {
        assert!(self.constant_term().is_zero(), "exp needs zero constant term");
        let one = TruncPoly::constant(RatFunc::one(), self.prec);
        let mut acc = one.clone();
        let mut pw = one;
        let mut k = 1i64;
        loop {
            pw = pw.mul(self).mul_rat(&RatFunc::frac(1, k));
            if pw.is_zero() || k as u32 > self.prec {
                break;
            }
            acc = acc.add(&pw);
            k += 1;
        }
        acc
    }

    /// Substitutes each variable `i` by `images[i]` (variables beyond the list
    /// are kept as themselves).
    pub fn compose(&self, images: &[TruncPoly]) -> Self {
        let mut acc = TruncPoly::zero_with(self.prec);
        for (e, c) in &self.terms {
            let mut term = TruncPoly::constant(c.clone(), self.prec);
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let base = images.get(i).cloned().unwrap_or_else(|| TruncPoly::var(i, self.prec));
                term = term.mul(&base.pow(k as u32));
            }
            acc = acc.add(&term);
        }
        acc
    }

    pub fn map_coeffs<F: Fn(&RatFunc) -> RatFunc>(&self, f: F) -> Self {
        let mut terms: BTreeMap<Exps, RatFunc> = self.terms.iter().map(|(e, c)| (e.clone(), f(c))).collect();
        terms.retain(|_, c| !c.is_zero());
        TruncPoly { terms, prec: self.prec }
    }

    pub fn try_map_coeffs<F: Fn(&RatFunc) -> Result<RatFunc>>(&self, f: F) -> Result<Self> {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let v = f(c)?;
            if !v.is_zero() {
                terms.insert(e.clone(), v);
            }
        }
        Ok(TruncPoly { terms, prec: self.prec })
    }

    /// Homogeneous component of total degree `d`.
    pub fn homogeneous(&self, d: u32) -> Self {
        TruncPoly {
            terms: self.terms.iter().filter(|(e, _)| degree(e) == d).map(|(e, c)| (e.clone(), c.clone())).collect(),
            prec: self.prec,
        }
    }
}

/// Equality modulo the smaller precision.
impl PartialEq for TruncPoly {
    fn eq(&self, o: &Self) -> bool {
        let prec = self.prec.min(o.prec);
        let a = self.terms.iter().filter(|(e, _)| degree(e) <= prec);
        let b = o.terms.iter().filter(|(e, _)| degree(e) <= prec);
        a.eq(b)
    }
}

impl fmt::Debug for TruncPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncPoly[prec={}]{{", self.prec)?;
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e:?}: {c}")?;
        }
        write!(f, "}}")
    }
}

impl Coeff for TruncPoly {
    fn zero() -> Self {
        TruncPoly::zero_with(EXACT)
    }
    fn one() -> Self {
        TruncPoly::constant(RatFunc::one(), EXACT)
    }
    fn is_zero(&self) -> bool {
        TruncPoly::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        TruncPoly::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        TruncPoly::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        TruncPoly::mul(self, o)
    }
    fn neg(&self) -> Self {
        TruncPoly::neg(self)
    }
    fn from_rat(r: &RatFunc) -> Self {
        TruncPoly::constant(r.clone(), EXACT)
    }
    fn mul_rat(&self, r: &RatFunc) -> Self {
        TruncPoly::mul_rat(self, r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_of_one_minus_x() {
        let x = TruncPoly::var(0, 4);
        let one = TruncPoly::constant(RatFunc::one(), 4);
        let inv = one.sub(&x).inverse().unwrap();
        for k in 0..=4u8 {
            assert!(inv.coeff(&[k]).is_one());
        }
        assert!(inv.coeff(&[5]).is_zero());
    }

    #[test]
    fn exp_of_variable() {
        let x = TruncPoly::var(1, 3);
        let e = x.exp();
        assert_eq!(e.coeff(&[0, 3]), RatFunc::frac(1, 6));
    }
}
