//! Polynomials in finitely many variables `x_1..x_n` over a coefficient ring.

use crate::coefficients::{Coeff, RatFunc};
use crate::error::{Error, Result};
use std::collections::BTreeMap;

#[derive(Clone, PartialEq, Debug)]
pub struct MPoly<C: Coeff> {
    n: usize,
    terms: BTreeMap<Vec<u32>, C>,
}

impl<C: Coeff> MPoly<C> {
    pub fn zero(n: usize) -> Self {
        MPoly { n, terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, c: C) -> Self {
        let mut p = MPoly::zero(n);
        p.add_term(vec![0; n], c);
        p
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        let mut p = MPoly::zero(n);
        p.add_term(e, C::one());
        p
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, C> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &[u32]) -> C {
        self.terms.get(e).cloned().unwrap_or_else(C::zero)
    }

    pub fn add_term(&mut self, e: Vec<u32>, c: C) {
        debug_assert_eq!(e.len(), self.n);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v = v.add(&c);
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        MPoly { n: self.n, terms: self.terms.iter().map(|(e, c)| (e.clone(), c.neg())).collect() }
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = MPoly::zero(self.n);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v.mul(c));
        }
        out
    }

    pub fn mul_rat(&self, r: &RatFunc) -> Self {
        self.scale(&C::from_rat(r))
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = MPoly::zero(self.n);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca.mul(cb));
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = MPoly::constant(self.n, C::one());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Power sum `x_1^r + ... + x_n^r`.
    pub fn power_sum(n: usize, r: u32) -> Self {
        let mut p = MPoly::zero(n);
        for i in 0..n {
            let mut e = vec![0; n];
            e[i] = r;
            p.add_term(e, C::one());
        }
        p
    }

    /// Replaces `x_i` by `factors[i]·x_i` for scalar factors.
    pub fn scale_variables(&self, factors: &[RatFunc]) -> Self {
        let mut out = MPoly::zero(self.n);
        for (e, c) in &self.terms {
            let mut s = RatFunc::one();
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    s = s.mul(&factors[i].pow(k as i32));
                }
            }
            out.add_term(e.clone(), c.mul_rat(&s));
        }
        out
    }

    /// Swaps variables `i` and `j`.
    pub fn swap(&self, i: usize, j: usize) -> Self {
        let mut out = MPoly::zero(self.n);
        for (e, c) in &self.terms {
            let mut e = e.clone();
            e.swap(i, j);
            out.add_term(e, c.clone());
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n.saturating_sub(1)).all(|i| self.swap(i, i + 1) == *self)
    }

    /// Exact quotient by `x_a - c·x_b` (`a ≠ b`); errors if not divisible.
    pub fn div_linear(&self, a: usize, b: usize, c: &RatFunc) -> Result<Self> {
        // Synthetic division in x_a, treating other variables as coefficients:
        // f = (x_a - c x_b) g, so g_k = f_{k+1} + c x_b g_{k+1} by degree in x_a.
        let cc = C::from_rat(c);
        let mut by_deg: BTreeMap<u32, MPoly<C>> = BTreeMap::new();
        for (e, v) in &self.terms {
            let mut rest = e.clone();
            let k = rest[a];
            rest[a] = 0;
            by_deg.entry(k).or_insert_with(|| MPoly::zero(self.n)).add_term(rest, v.clone());
        }
        let top = match by_deg.keys().next_back() {
            Some(&k) => k,
            None => return Ok(MPoly::zero(self.n)),
        };
        if top == 0 {
            return Err(Error::NonPolynomialResult);
        }
        let mut xb = vec![0; self.n];
        xb[b] = 1;
        let mut xb_poly = MPoly::zero(self.n);
        xb_poly.add_term(xb, cc);
        let mut g: BTreeMap<u32, MPoly<C>> = BTreeMap::new();
        let mut carry = MPoly::zero(self.n);
        for k in (0..top).rev() {
            let fk1 = by_deg.get(&(k + 1)).cloned().unwrap_or_else(|| MPoly::zero(self.n));
            let gk = fk1.add(&xb_poly.mul(&carry));
            g.insert(k, gk.clone());
            carry = gk;
        }
        // remainder: f_0 + c x_b g_0 must vanish
        let f0 = by_deg.get(&0).cloned().unwrap_or_else(|| MPoly::zero(self.n));
        if !f0.add(&xb_poly.mul(&carry)).is_zero() {
            return Err(Error::NonPolynomialResult);
        }
        let mut out = MPoly::zero(self.n);
        for (k, gk) in g {
            for (e, v) in gk.terms {
                let mut e = e;
                e[a] = k;
                out.add_term(e, v);
            }
        }
        Ok(out)
    }

    /// Sets the last variable to zero and drops it.
    pub fn drop_last_variable(&self) -> Self {
        let mut out = MPoly::zero(self.n - 1);
        for (e, c) in &self.terms {
            if e[self.n - 1] == 0 {
                out.add_term(e[..self.n - 1].to_vec(), c.clone());
            }
        }
        out
    }

    pub fn map_coeffs<D: Coeff, F: Fn(&C) -> D>(&self, f: F) -> MPoly<D> {
        let mut out = MPoly::zero(self.n);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_division_roundtrip() {
        let x0: MPoly<RatFunc> = MPoly::var(2, 0);
        let x1: MPoly<RatFunc> = MPoly::var(2, 1);
        let c = RatFunc::q();
        let f = x0.sub(&x1.mul_rat(&c)).mul(&x0.add(&x1).pow(2));
        let g = f.div_linear(0, 1, &c).unwrap();
        assert_eq!(g, x0.add(&x1).pow(2));
        assert!(x0.add(&x1).div_linear(0, 1, &c).is_err());
    }
}
