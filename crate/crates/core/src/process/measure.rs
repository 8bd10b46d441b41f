//! Measure and process weights as truncated series, and correlation functions
//! by direct summation over partition tuples.
//!
//! `P_λ(X) Q_λ(Y)` has degree at least `|λ|`, and every factor of the `N`-step
//! weight is bounded below in the same way, so tuples with some `|λ^{(α)}|`
//! above the cutoff carry no terms of degree `≤ D` and are never enumerated.

use super::{observable_value, Observable, ProcessSpec};
use crate::coefficients::{poch, RatFunc, TruncPoly};
use crate::error::Result;
use crate::fockvertex::variable_power_sum;
use crate::macdonald::{macdonald_p, macdonald_q, skew, SkewKind};
use crate::partitions::{partitions_up_to, Partition};
use crate::symfunc::specialize_variables;
use rayon::prelude::*;

fn one(prec: u32) -> TruncPoly {
    TruncPoly::constant(RatFunc::one(), prec)
}

/// `Σ_n (1-t^n)/(1-q^n) p_n(X) p_n(Y) / n`, the logarithm of `Π(X, Y)`.
fn log_pi(x: &[usize], y: &[usize], prec: u32) -> TruncPoly {
    let mut acc = TruncPoly::zero_with(prec);
    for n in 1..=prec / 2 {
        let w = RatFunc::one_minus(0, n as i32)
            .div(&RatFunc::one_minus(n as i32, 0))
            .expect("nonzero")
            .mul(&RatFunc::frac(1, n as i64));
        acc = acc.add(&variable_power_sum(x, n, prec).mul(&variable_power_sum(y, n, prec)).mul_rat(&w));
    }
    acc
}

/// `Π(X, Y)^{-1}`.
pub fn pi_inverse(x: &[usize], y: &[usize], prec: u32) -> TruncPoly {
    log_pi(x, y, prec).neg().exp()
}

/// `∏_{1≤i≤j≤N} Π(X^{(i)}, Y^{(j)})`.
pub fn normalization(spec: &ProcessSpec) -> TruncPoly {
    let d = spec.degree;
    let mut log = TruncPoly::zero_with(d);
    for i in 0..spec.n_levels() {
        for j in i..spec.n_levels() {
            log = log.add(&log_pi(&spec.x_vars(i), &spec.y_vars(j), d));
        }
    }
    log.exp()
}

/// `∏_{i,j} (t x_i y_j; q)_∞ / (x_i y_j; q)_∞`, expanded factor by factor with
/// the q-binomial theorem `Σ_n (t;q)_n/(q;q)_n u^n`.
pub fn cauchy_product(x: &[usize], y: &[usize], prec: u32) -> TruncPoly {
    let mut acc = one(prec);
    for &i in x {
        for &j in y {
            let u = TruncPoly::var(i, prec).mul(&TruncPoly::var(j, prec));
            let mut factor = one(prec);
            let mut pw = one(prec);
            for n in 1..=prec / 2 {
                pw = pw.mul(&u);
                let c = poch(&RatFunc::t(), &RatFunc::q(), n as usize)
                    .div(&poch(&RatFunc::q(), &RatFunc::q(), n as usize))
                    .expect("nonzero");
                factor = factor.add(&pw.mul_rat(&c));
            }
            acc = acc.mul(&factor);
        }
    }
    acc
}

fn eval(f: &crate::symfunc::SymFunc<RatFunc>, vars: &[usize], prec: u32) -> TruncPoly {
    if vars.is_empty() {
        return TruncPoly::constant(f.coeff(&Partition::empty()), prec);
    }
    specialize_variables(f, vars, prec)
}

/// `Ψ_{λ,μ}(Y, X) = Σ_ν Q_{λ/ν}(Y) P_{μ/ν}(X)`.
fn transition(l: &Partition, mu: &Partition, y: &[usize], x: &[usize], prec: u32) -> Result<TruncPoly> {
    let mut acc = TruncPoly::zero_with(prec);
    for nu in partitions_up_to(l.weight().min(mu.weight())) {
        if !l.contains(&nu) || !mu.contains(&nu) {
            continue;
        }
        // each skew factor has degree |λ| - |ν| at least
        if l.weight() + mu.weight() - 2 * nu.weight() > prec {
            continue;
        }
        let a = eval(&skew(SkewKind::Q, l, &nu)?, y, prec);
        if a.is_zero() {
            continue;
        }
        let b = eval(&skew(SkewKind::P, mu, &nu)?, x, prec);
        acc = acc.add(&a.mul(&b));
    }
    Ok(acc)
}

/// Unnormalized `N`-step weight `P_{λ^1}(X^1) Ψ(Y^1, X^2) ⋯ Q_{λ^N}(Y^N)`.
fn raw_weight(ls: &[Partition], spec: &ProcessSpec) -> Result<TruncPoly> {
    assert_eq!(ls.len(), spec.n_levels(), "one partition per level");
    let d = spec.degree;
    let n = ls.len();
    let mut acc = eval(&macdonald_p(&ls[0])?, &spec.x_vars(0), d);
    for a in 0..n - 1 {
        if acc.is_zero() {
            return Ok(acc);
        }
        acc = acc.mul(&transition(&ls[a], &ls[a + 1], &spec.y_vars(a), &spec.x_vars(a + 1), d)?);
    }
    if acc.is_zero() {
        return Ok(acc);
    }
    Ok(acc.mul(&eval(&macdonald_q(&ls[n - 1])?, &spec.y_vars(n - 1), d)))
}

/// Weight of a tuple under the `N`-step process.
pub fn process_weight(ls: &[Partition], spec: &ProcessSpec) -> Result<TruncPoly> {
    let raw = raw_weight(ls, spec)?;
    if raw.is_zero() {
        return Ok(raw);
    }
    Ok(raw.mul(&normalization(spec).inverse()?))
}

/// `P_λ(X) Q_λ(Y) / Π(X, Y)` for a one-level spec.
pub fn measure_weight(l: &Partition, spec: &ProcessSpec) -> Result<TruncPoly> {
    assert_eq!(spec.n_levels(), 1, "the measure is the one-level process");
    let raw = raw_weight(std::slice::from_ref(l), spec)?;
    Ok(raw.mul(&pi_inverse(&spec.x_vars(0), &spec.y_vars(0), spec.degree)))
}

/// All `n`-tuples of partitions of weight `≤ d`, in lexicographic order.
pub fn partition_tuples_up_to(n: usize, d: u32) -> Vec<Vec<Partition>> {
    let base = partitions_up_to(d);
    let mut out: Vec<Vec<Partition>> = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|t| {
                base.iter().map(move |l| {
                    let mut t2 = t.clone();
                    t2.push(l.clone());
                    t2
                })
            })
            .collect();
    }
    out
}

/// `𝔼[f_1[1] ⋯ f_N[N]]` as the weighted sum over tuples.
pub fn correlation_direct(obs: &[Observable], spec: &ProcessSpec) -> Result<TruncPoly> {
    assert_eq!(obs.len(), spec.n_levels(), "one observable per level");
    let d = spec.degree;
    let tuples = partition_tuples_up_to(spec.n_levels(), d);
    let terms: Vec<TruncPoly> = tuples
        .par_iter()
        .map(|ls| -> Result<TruncPoly> {
            let w = raw_weight(ls, spec)?;
            if w.is_zero() {
                return Ok(w);
            }
            let v = obs.iter().zip(ls).fold(RatFunc::one(), |a, (o, l)| a.mul(&observable_value(o, l)));
            Ok(w.mul_rat(&v))
        })
        .collect::<Result<_>>()?;
    let sum = terms.iter().fold(TruncPoly::zero_with(d), |a, b| a.add(b));
    Ok(sum.mul(&normalization(spec).inverse()?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::process::{LevelVars, ObservableFamily};

    fn r(s: &str) -> RatFunc {
        s.parse().unwrap()
    }

    #[test]
    fn empty_measure_is_vacuum() {
        let spec = ProcessSpec::uniform(1, 0, 0, 0);
        let e1 = Observable::new(ObservableFamily::E, 1);
        let v = correlation_direct(&[e1], &spec).unwrap();
        assert_eq!(v.constant_term(), r("t/(t-1)"));
    }

    #[test]
    fn degree_one_weight() {
        let spec = ProcessSpec::uniform(1, 1, 1, 2);
        let w = measure_weight(&Partition::new(vec![1]), &spec).unwrap();
        // P_1 Q_1 = (1-t)/(1-q) x y; Π^{-1} only adds degree ≥ 4
        assert_eq!(w.coeff(&[1, 1]), r("(1-t)/(1-q)"));
        assert_eq!(w.terms().len(), 1);
    }

    #[test]
    fn weights_sum_to_one() {
        let spec = ProcessSpec::new(vec![LevelVars { x: 1, y: 1 }, LevelVars { x: 1, y: 1 }], 3);
        let mut total = TruncPoly::zero_with(3);
        for t in partition_tuples_up_to(2, 3) {
            total = total.add(&process_weight(&t, &spec).unwrap());
        }
        assert_eq!(total, TruncPoly::constant(RatFunc::one(), 3));
    }

    #[test]
    fn pi_matches_product() {
        let spec = ProcessSpec::uniform(1, 2, 1, 4);
        let pi = normalization(&spec);
        assert_eq!(pi, cauchy_product(&spec.x_vars(0), &spec.y_vars(0), 4));
        assert_eq!(pi.mul(&pi_inverse(&spec.x_vars(0), &spec.y_vars(0), 4)), TruncPoly::constant(RatFunc::one(), 4));
    }
}
