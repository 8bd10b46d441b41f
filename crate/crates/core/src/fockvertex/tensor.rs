//! Vectors in the m-fold tensor power of the Fock space, in the basis
//! `p_{λ^(1)} ⊗ ⋯ ⊗ p_{λ^(m)}`.

use crate::coefficients::{Coeff, RatFunc};
use crate::partitions::{Partition, PartitionTuple};
use crate::symfunc::{z_qt, SymFunc};
use std::collections::BTreeMap;

#[derive(Clone, PartialEq, Debug)]
pub struct TensorFockVector<C: Coeff> {
    arity: usize,
    terms: BTreeMap<PartitionTuple, C>,
}

impl<C: Coeff> TensorFockVector<C> {
    pub fn zero(arity: usize) -> Self {
        TensorFockVector { arity, terms: BTreeMap::new() }
    }

    pub fn vacuum(arity: usize) -> Self {
        Self::basis(PartitionTuple::vacuum(arity))
    }

    pub fn basis(key: PartitionTuple) -> Self {
        let mut v = Self::zero(key.arity());
        v.add_term(key, C::one());
        v
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> &BTreeMap<PartitionTuple, C> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, key: &PartitionTuple) -> C {
        self.terms.get(key).cloned().unwrap_or_else(C::zero)
    }

    pub fn add_term(&mut self, key: PartitionTuple, c: C) {
        debug_assert_eq!(key.arity(), self.arity);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(v) => {
                *v = v.add(&c);
                if v.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.add_term(k.clone(), c.neg());
        }
        out
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero(self.arity);
        for (k, v) in &self.terms {
            out.add_term(k.clone(), v.mul(c));
        }
        out
    }

    pub fn mul_rat(&self, r: &RatFunc) -> Self {
        let mut out = Self::zero(self.arity);
        for (k, v) in &self.terms {
            out.add_term(k.clone(), v.mul_rat(r));
        }
        out
    }

    pub fn max_weight(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.weight()).max()
    }

    /// An arity-one vector from a symmetric function.
    pub fn from_sym(f: &SymFunc<C>) -> Self {
        let mut out = Self::zero(1);
        for (l, c) in f.terms() {
            out.add_term(PartitionTuple(vec![l.clone()]), c.clone());
        }
        out
    }

    /// The symmetric function of an arity-one vector.
    pub fn to_sym(&self) -> SymFunc<C> {
        assert_eq!(self.arity, 1, "to_sym needs a single tensor factor");
        SymFunc::from_terms(self.terms.iter().map(|(k, c)| (k.0[0].clone(), c.clone())))
    }
}

impl TensorFockVector<RatFunc> {
    /// Product of the per-leg `(q,t)` pairings.
    pub fn pairing(&self, o: &Self) -> RatFunc {
        let mut acc = RatFunc::zero();
        for (k, c) in &self.terms {
            if let Some(d) = o.terms.get(k) {
                acc = acc.add(&c.mul(d).mul(&tuple_z(k)));
            }
        }
        acc
    }
}

/// `∏_i z_{λ^(i)}(q,t)`.
pub fn tuple_z(k: &PartitionTuple) -> RatFunc {
    k.0.iter().map(|l: &Partition| z_qt(l)).product()
}
