//! Exact elements of Q(q^{1/4}, t^{1/4}) in reduced form.

use super::gcd::{div_exact, gcd_cofactors};
use super::poly::{Mono, Poly, QUARTER};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::str::FromStr;

/// Reduced fraction `num/den` of integer polynomials with positive leading
/// denominator coefficient. Structural equality is field equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

/// Image of a parameter under [`RatFunc::substitute`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    /// `q^{a/4} t^{b/4}` with exponents in quarter units (may be negative).
    Mono(i32, i32),
    Zero,
}

impl Target {
    pub const Q: Target = Target::Mono(4, 0);
    pub const T: Target = Target::Mono(0, 4);
    pub const Q_INV: Target = Target::Mono(-4, 0);
    pub const T_INV: Target = Target::Mono(0, -4);
}

impl Default for RatFunc {
    fn default() -> Self {
        RatFunc::zero()
    }
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        RatFunc { num: Poly::one(), den: Poly::one() }
    }

    pub fn int(n: i64) -> Self {
        RatFunc { num: Poly::constant(BigInt::from(n)), den: Poly::one() }
    }

    pub fn from_bigint(n: BigInt) -> Self {
        RatFunc { num: Poly::constant(n), den: Poly::one() }
    }

    pub fn frac(n: i64, d: i64) -> Self {
        RatFunc::from_parts(Poly::constant(BigInt::from(n)), Poly::constant(BigInt::from(d)))
            .expect("nonzero denominator")
    }

    pub fn from_rational(r: &BigRational) -> Self {
        RatFunc::from_parts(Poly::constant(r.numer().clone()), Poly::constant(r.denom().clone()))
            .expect("nonzero denominator")
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc { num: p, den: Poly::one() }
    }

    /// `q^a t^b` for integer (possibly negative) powers.
    pub fn mono(a: i32, b: i32) -> Self {
        RatFunc::mono_quarter(a * QUARTER as i32, b * QUARTER as i32)
    }

    /// `q^{a/4} t^{b/4}`.
    pub fn mono_quarter(a: i32, b: i32) -> Self {
        let up = Mono::new(a.max(0) as u32, b.max(0) as u32);
        let down = Mono::new((-a).max(0) as u32, (-b).max(0) as u32);
        RatFunc { num: Poly::monomial(BigInt::one(), up), den: Poly::monomial(BigInt::one(), down) }
    }

    pub fn q() -> Self {
        RatFunc::mono(1, 0)
    }

    pub fn t() -> Self {
        RatFunc::mono(0, 1)
    }

    /// `1 - q^a t^b`.
    pub fn one_minus(a: i32, b: i32) -> Self {
        RatFunc::one().sub(&RatFunc::mono(a, b))
    }

    /// Normalizes an arbitrary fraction.
    pub fn from_parts(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return RatFunc::zero();
        }
        if den.is_one() {
            return RatFunc { num, den };
        }
        let (_, n, d) = gcd_cofactors(&num, &den);
        Self::fix_sign(n, d)
    }

    fn fix_sign(n: Poly, d: Poly) -> Self {
        if d.leading_sign_negative() {
            RatFunc { num: n.neg(), den: d.neg() }
        } else {
            RatFunc { num: n, den: d }
        }
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// The rational value if the element is constant.
    pub fn as_rational(&self) -> Option<BigRational> {
        let n = self.num.constant_value()?;
        let d = self.den.constant_value()?;
        Some(BigRational::new(n, d))
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    /// True when every exponent is an integer power of q and t.
    pub fn is_integral(&self) -> bool {
        self.num.is_integral() && self.den.is_integral()
    }

    /// Errors unless every exponent is an integer power.
    pub fn expect_integral(&self) -> Result<&Self> {
        if self.is_integral() {
            Ok(self)
        } else {
            Err(Error::FractionalExponent(self.to_string()))
        }
    }

    /// Whether q occurs (with any exponent).
    pub fn involves_q(&self) -> bool {
        self.num.max_q() > 0 || self.den.max_q() > 0
    }

    pub fn involves_t(&self) -> bool {
        self.num.max_t() > 0 || self.den.max_t() > 0
    }

    pub fn neg(&self) -> Self {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            let n = self.num.add(&o.num);
            return Self::reduce(n, self.den.clone());
        }
        if self.den.is_one() {
            return RatFunc { num: self.num.mul(&o.den).add(&o.num), den: o.den.clone() };
        }
        if o.den.is_one() {
            return RatFunc { num: o.num.mul(&self.den).add(&self.num), den: self.den.clone() };
        }
        let (g, b1, d1) = gcd_cofactors(&self.den, &o.den);
        let n = self.num.mul(&d1).add(&o.num.mul(&b1));
        if n.is_zero() {
            return RatFunc::zero();
        }
        let den = b1.mul(&o.den);
        if g.is_one() {
            return Self::fix_sign(n, den);
        }
        let (_, n2, g2) = gcd_cofactors(&n, &g);
        if g2 == g {
            return Self::fix_sign(n2, den);
        }
        let den = div_exact(&den, &g).expect("gcd divides").mul(&g2);
        Self::fix_sign(n2, den)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return RatFunc::zero();
        }
        if self.is_one() {
            return o.clone();
        }
        if o.is_one() {
            return self.clone();
        }
        let (_, a, d) = gcd_cofactors(&self.num, &o.den);
        let (_, c, b) = gcd_cofactors(&o.num, &self.den);
        Self::fix_sign(a.mul(&c), b.mul(&d))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::fix_sign(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, n: i32) -> Self {
        let base = if n < 0 { self.inv().expect("nonzero base for negative power") } else { self.clone() };
        let mut acc = RatFunc::one();
        for _ in 0..n.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }

    pub fn scale_int(&self, k: i64) -> Self {
        self.mul(&RatFunc::int(k))
    }

    /// Substitutes `q ↦ tq` and `t ↦ tt` (Laurent monomials or zero).
    pub fn substitute(&self, tq: Target, tt: Target) -> Result<Self> {
        let (n, nq, nt) = laurent_image(&self.num, tq, tt)?;
        let (d, dq, dt) = laurent_image(&self.den, tq, tt)?;
        if d.is_zero() {
            return Err(Error::DenominatorVanishes);
        }
        let sq = nq - dq;
        let st = nt - dt;
        let up = Mono::new(sq.max(0) as u32, st.max(0) as u32);
        let down = Mono::new((-sq).max(0) as u32, (-st).max(0) as u32);
        Ok(Self::reduce(n.mul_term(up, &BigInt::one()), d.mul_term(down, &BigInt::one())))
    }

    /// `q ↦ q^{-1}, t ↦ t^{-1}`.
    pub fn invert_params(&self) -> Self {
        self.substitute(Target::Q_INV, Target::T_INV).expect("inversion never vanishes")
    }

    /// The Schur limit `q ↦ t`.
    pub fn q_to_t(&self) -> Result<Self> {
        self.substitute(Target::T, Target::T)
    }

    /// Exact value at rational parameter values.
    pub fn evaluate(&self, q0: &BigRational, t0: &BigRational) -> Result<BigRational> {
        self.expect_integral()?;
        let d = eval_poly(&self.den, q0, t0);
        if d.is_zero() {
            return Err(Error::PoleAtPoint);
        }
        Ok(eval_poly(&self.num, q0, t0) / d)
    }
}

/// Image of a polynomial under monomial substitution, returned as a polynomial
/// times the monomial shift `q^{sq/4} t^{st/4}`.
fn laurent_image(p: &Poly, tq: Target, tt: Target) -> Result<(Poly, i64, i64)> {
    let mut terms: Vec<(i64, i64, BigInt)> = Vec::new();
    for (m, c) in p.terms() {
        let mut eq = 0i64;
        let mut et = 0i64;
        let mut alive = true;
        for (e, tgt) in [(m.q, tq), (m.t, tt)] {
            if e == 0 {
                continue;
            }
            match tgt {
                Target::Zero => alive = false,
                Target::Mono(a, b) => {
                    let (xa, xb) = (e as i64 * a as i64, e as i64 * b as i64);
                    if xa % QUARTER as i64 != 0 || xb % QUARTER as i64 != 0 {
                        return Err(Error::FractionalExponent(format!("substitution of exponent {e}/4")));
                    }
                    eq += xa / QUARTER as i64;
                    et += xb / QUARTER as i64;
                }
            }
        }
        if alive {
            terms.push((eq, et, c.clone()));
        }
    }
    let sq = terms.iter().map(|x| x.0).min().unwrap_or(0);
    let st = terms.iter().map(|x| x.1).min().unwrap_or(0);
    let poly = Poly::from_terms(terms.into_iter().map(|(a, b, c)| (Mono::new((a - sq) as u32, (b - st) as u32), c)));
    Ok((poly, sq, st))
}

fn eval_poly(p: &Poly, q0: &BigRational, t0: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for (m, c) in p.terms() {
        let v = pow_rat(q0, m.q / QUARTER) * pow_rat(t0, m.t / QUARTER);
        acc += v * BigRational::from_integer(c.clone());
    }
    acc
}

fn pow_rat(x: &BigRational, n: u32) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..n {
        acc *= x;
    }
    acc
}

fn fmt_exp(f: &mut fmt::Formatter<'_>, var: char, e: u32) -> fmt::Result {
    if e == QUARTER {
        write!(f, "{var}")
    } else if e % QUARTER == 0 {
        write!(f, "{var}^{}", e / QUARTER)
    } else {
        let g = num_integer::gcd(e, QUARTER);
        write!(f, "{var}^({}/{})", e / g, QUARTER / g)
    }
}

/// Writes a polynomial in canonical term order, e.g. `q^2*t-3*q+1`.
pub fn fmt_poly(p: &Poly, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if p.is_zero() {
        return write!(f, "0");
    }
    for (i, (m, c)) in p.terms().iter().enumerate() {
        let neg = c.is_negative();
        if neg {
            write!(f, "-")?;
        } else if i > 0 {
            write!(f, "+")?;
        }
        let a = c.abs();
        let mut first = true;
        if !a.is_one() || *m == Mono::ONE {
            write!(f, "{a}")?;
            first = false;
        }
        for (var, e) in [('q', m.q), ('t', m.t)] {
            if e > 0 {
                if !first {
                    write!(f, "*")?;
                }
                fmt_exp(f, var, e)?;
                first = false;
            }
        }
    }
    Ok(())
}

struct PolyDisplay<'a>(&'a Poly);

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() > 1 {
            write!(f, "(")?;
            fmt_poly(self.0, f)?;
            write!(f, ")")
        } else {
            fmt_poly(self.0, f)
        }
    }
}

/// Canonical `num/den` rendering.
impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // a product after `/` would bind only its first factor when parsed back
        let den = PolyDisplay(&self.den).to_string();
        if self.den.len() == 1 && (den.contains('*') || den.contains('/')) {
            write!(f, "{}/({den})", PolyDisplay(&self.num))
        } else {
            write!(f, "{}/{den}", PolyDisplay(&self.num))
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at byte {} of `{}`", self.pos, String::from_utf8_lossy(self.s)))
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        let txt = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii digits");
        BigInt::from_str(txt).map_err(|_| self.err("bad integer"))
    }

    fn small_int(&mut self) -> Result<i64> {
        let neg = self.eat(b'-');
        let v = self.integer()?;
        let v: i64 = v.try_into().map_err(|_| self.err("exponent too large"))?;
        Ok(if neg { -v } else { v })
    }

    fn expr(&mut self) -> Result<RatFunc> {
        let mut acc = if self.eat(b'-') { self.term()?.neg() } else { self.term()? };
        loop {
            if self.eat(b'+') {
                acc = acc.add(&self.term()?);
            } else if self.eat(b'-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RatFunc> {
        let mut acc = self.power()?;
        loop {
            if self.eat(b'*') {
                acc = acc.mul(&self.power()?);
            } else if self.eat(b'/') {
                let d = self.power()?;
                acc = acc.div(&d)?;
            } else {
                return Ok(acc);
            }
        }
    }

    /// Exponent as a fraction `n/d` (an integer, or `(n/d)` in parentheses).
    fn exponent(&mut self) -> Result<(i64, i64)> {
        if self.eat(b'(') {
            let n = self.small_int()?;
            let d = if self.eat(b'/') { self.small_int()? } else { 1 };
            if !self.eat(b')') || d == 0 {
                return Err(self.err("bad exponent"));
            }
            Ok((n, d))
        } else {
            Ok((self.small_int()?, 1))
        }
    }

    fn power(&mut self) -> Result<RatFunc> {
        let var = match self.peek() {
            Some(b'q') => Some(0),
            Some(b't') => Some(1),
            _ => None,
        };
        if let Some(v) = var {
            self.pos += 1;
            let (n, d) = if self.eat(b'^') { self.exponent()? } else { (1, 1) };
            let e = n * QUARTER as i64;
            if e % d != 0 {
                return Err(self.err("exponent finer than a quarter"));
            }
            let e = (e / d) as i32;
            return Ok(if v == 0 { RatFunc::mono_quarter(e, 0) } else { RatFunc::mono_quarter(0, e) });
        }
        let base = if self.eat(b'(') {
            let e = self.expr()?;
            if !self.eat(b')') {
                return Err(self.err("expected `)`"));
            }
            e
        } else {
            RatFunc::from_bigint(self.integer()?)
        };
        if self.eat(b'^') {
            let (n, d) = self.exponent()?;
            if d != 1 {
                return Err(self.err("fractional power of a non-variable"));
            }
            if n < 0 && base.is_zero() {
                return Err(Error::DivisionByZero);
            }
            return Ok(base.pow(n as i32));
        }
        Ok(base)
    }
}

/// Parses the canonical `num/den` rendering; general sums, products,
/// quotients and integer powers of `q`, `t` and integers are also accepted.
impl FromStr for RatFunc {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bytes: Vec<u8> = s.bytes().filter(|c| !c.is_ascii_whitespace()).collect();
        let mut p = Parser { s: &bytes, pos: 0 };
        let v = p.expr()?;
        if p.pos != bytes.len() {
            return Err(p.err("trailing input"));
        }
        Ok(v)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl std::ops::$tr<&RatFunc> for &RatFunc {
            type Output = RatFunc;
            fn $m(self, o: &RatFunc) -> RatFunc {
                $body(self, o)
            }
        }
        impl std::ops::$tr<RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, o: RatFunc) -> RatFunc {
                $body(&self, &o)
            }
        }
        impl std::ops::$tr<&RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, o: &RatFunc) -> RatFunc {
                $body(&self, o)
            }
        }
        impl std::ops::$tr<RatFunc> for &RatFunc {
            type Output = RatFunc;
            fn $m(self, o: RatFunc) -> RatFunc {
                $body(self, &o)
            }
        }
    };
}

forward_binop!(Add, add, |a: &RatFunc, b: &RatFunc| RatFunc::add(a, b));
forward_binop!(Sub, sub, |a: &RatFunc, b: &RatFunc| RatFunc::sub(a, b));
forward_binop!(Mul, mul, |a: &RatFunc, b: &RatFunc| RatFunc::mul(a, b));
forward_binop!(Div, div, |a: &RatFunc, b: &RatFunc| RatFunc::div(a, b).expect("division by zero"));

impl std::ops::Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc::neg(&self)
    }
}

impl std::ops::Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc::neg(self)
    }
}

impl std::iter::Sum for RatFunc {
    fn sum<I: Iterator<Item = RatFunc>>(it: I) -> RatFunc {
        it.fold(RatFunc::zero(), |a, b| a.add(&b))
    }
}

impl std::iter::Product for RatFunc {
    fn product<I: Iterator<Item = RatFunc>>(it: I) -> RatFunc {
        it.fold(RatFunc::one(), |a, b| a.mul(&b))
    }
}

/// `(x; b)_n = ∏_{k<n} (1 - x b^k)`.
pub fn poch(x: &RatFunc, b: &RatFunc, n: usize) -> RatFunc {
    let mut acc = RatFunc::one();
    let mut cur = x.clone();
    for _ in 0..n {
        acc = acc.mul(&RatFunc::one().sub(&cur));
        cur = cur.mul(b);
    }
    acc
}

/// Binomial coefficient as a plain integer.
pub fn binom(n: i64, k: i64) -> i64 {
    if k < 0 || k > n {
        return 0;
    }
    let mut acc: i64 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, b| a * BigInt::from(b))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> RatFunc {
        s.parse().unwrap()
    }

    #[test]
    fn reduces_geometric_quotient() {
        let a = r("(1-q^2)/(1-q)");
        assert_eq!(a, r("q+1"));
        assert_eq!(a.to_string(), "(q+1)/1");
    }

    #[test]
    fn inverse_pair_multiplies_to_one() {
        let a = r("(1-q)/(1-t)");
        let b = r("(1-t)/(1-q)");
        assert!(a.mul(&b).is_one());
        let c = r("(1-t)/(1-q*t)");
        assert!(c.sub(&c).is_zero());
    }

    #[test]
    fn substitution_examples() {
        assert!(r("(1-q)/(1-t)").q_to_t().unwrap().is_one());
        assert_eq!(r("q/t").invert_params(), r("t/q"));
        let quarter = RatFunc::mono_quarter(-1, 1).pow(4);
        assert_eq!(quarter, r("t/q"));
        assert!(quarter.is_integral());
    }

    #[test]
    fn evaluation_and_poles() {
        let a = r("(1+q)*(1-t)/(1-q*t)");
        let v = a.evaluate(&BigRational::from_integer(2.into()), &BigRational::from_integer(3.into())).unwrap();
        assert_eq!(v, BigRational::new(6.into(), 5.into()));
        let b = r("(1-q)/(1-t)");
        let one = BigRational::one();
        assert_eq!(b.evaluate(&one, &one), Err(Error::PoleAtPoint));
        assert!(RatFunc::zero().evaluate(&one, &one).unwrap().is_zero());
    }

    #[test]
    fn canonical_sign_of_denominator() {
        let a = r("1/(1-t)");
        assert_eq!(a.to_string(), "-1/(t-1)");
        let b = r("(q*t-q+1)/(t^2-t)");
        assert_eq!(b.to_string(), "(q*t-q+1)/(t^2-t)");
    }

    #[test]
    fn roundtrip_quarter_rendering() {
        let a = RatFunc::mono_quarter(3, -2).add(&RatFunc::one());
        let s = a.to_string();
        assert_eq!(r(&s), a);
    }

    #[test]
    fn substitution_to_zero() {
        let a = r("(1-q*t)/(1-t)");
        assert!(a.substitute(Target::Q, Target::Zero).unwrap().is_one());
        assert_eq!(r("1/t").substitute(Target::Q, Target::Zero), Err(Error::DenominatorVanishes));
    }
}
