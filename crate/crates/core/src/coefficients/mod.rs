//! Scalars: rational functions of `(q, t)` with an optional quarter-power
//! extension, and degree-truncated polynomials over them.

pub mod gcd;
pub mod poly;
pub mod ratfunc;
pub mod truncpoly;

pub use poly::{Mono, Poly, QUARTER};
pub use ratfunc::{binom, factorial, poch, RatFunc, Target};
pub use truncpoly::{TruncPoly, EXACT};

use std::fmt::Debug;

/// Coefficient ring used by symmetric functions and Fock vectors.
pub trait Coeff: Clone + PartialEq + Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn from_rat(r: &RatFunc) -> Self;
    fn mul_rat(&self, r: &RatFunc) -> Self;
}

impl Coeff for RatFunc {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn one() -> Self {
        RatFunc::one()
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        RatFunc::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        RatFunc::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        RatFunc::mul(self, o)
    }
    fn neg(&self) -> Self {
        RatFunc::neg(self)
    }
    fn from_rat(r: &RatFunc) -> Self {
        r.clone()
    }
    fn mul_rat(&self, r: &RatFunc) -> Self {
        RatFunc::mul(self, r)
    }
}
