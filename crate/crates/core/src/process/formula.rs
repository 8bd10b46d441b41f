//! The explicit contour-integral side: multi-level determinantal formulas and
//! formal Fredholm determinants, evaluated as constant terms of Laurent
//! series whose coefficients are truncated polynomials in the specialization
//! variables.
//!
//! Every integrand is `∏_α det(1/(w_i - γ w_j))` times a product of `H`
//! factors, which are polynomial in `w^{±1}` at each fixed x/y-degree, and
//! cross-level factors expanded in `w^{(β)}/w^{(α)}` for `α < β`. The
//! determinants are handled by the closed-form kernel coefficients of the
//! residue module, so the only infinite expansion is the cross-level one; its
//! order is bounded exactly (see [`multilevel_formula`]).

use super::measure::correlation_direct;
use super::{Observable, ObservableFamily, ProcessSpec};
use crate::coefficients::{factorial, poch, RatFunc, Target, TruncPoly};
use crate::error::{Error, Result};
use crate::fockvertex::{kernel_coefficient, variable_power_sum, Kernel};
use std::collections::{BTreeMap, HashMap};

/// Laurent series in `nvars` variables with truncated-polynomial
/// coefficients. Only finitely many exponents are ever stored.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentSeries {
    pub nvars: usize,
    pub prec: u32,
    pub terms: BTreeMap<Vec<i32>, TruncPoly>,
}

impl LaurentSeries {
    pub fn one(nvars: usize, prec: u32) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![0; nvars], TruncPoly::constant(RatFunc::one(), prec));
        LaurentSeries { nvars, prec, terms }
    }

    pub fn zero(nvars: usize, prec: u32) -> Self {
        LaurentSeries { nvars, prec, terms: BTreeMap::new() }
    }

    pub fn add_term(&mut self, e: Vec<i32>, c: TruncPoly) {
        if c.is_zero() {
            return;
        }
        let v = match self.terms.remove(&e) {
            Some(old) => old.add(&c),
            None => c,
        };
        if !v.is_zero() {
            self.terms.insert(e, v);
        }
    }

    /// Product, keeping only exponents accepted by `keep`.
    pub fn mul_filtered(&self, o: &Self, keep: &dyn Fn(&[i32]) -> bool) -> Self {
        assert_eq!(self.nvars, o.nvars, "variable count mismatch");
        let mut out = LaurentSeries::zero(self.nvars, self.prec.min(o.prec));
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                let e: Vec<i32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                if !keep(&e) {
                    continue;
                }
                let c = ca.mul(cb);
                out.add_term(e, c);
            }
        }
        out
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.mul_filtered(o, &|_| true)
    }

    /// Coefficient of the monomial `∏ z^{e}`.
    pub fn coefficient(&self, e: &[i32]) -> TruncPoly {
        self.terms.get(e).cloned().unwrap_or_else(|| TruncPoly::zero_with(self.prec))
    }

    /// `Σ_e K(-e) S[e]` where the kernel factorizes over the given variable
    /// groups, each group with its own kernel.
    pub fn constant_term_grouped(&self, groups: &[(Vec<usize>, Kernel)]) -> TruncPoly {
        let mut memo: Vec<HashMap<Vec<i32>, RatFunc>> = vec![HashMap::new(); groups.len()];
        let mut acc = TruncPoly::zero_with(self.prec);
        'terms: for (e, c) in &self.terms {
            let mut k = RatFunc::one();
            for (g, (vars, kernel)) in groups.iter().enumerate() {
                let neg: Vec<i32> = vars.iter().map(|&v| -e[v]).collect();
                let kv = memo[g].entry(neg.clone()).or_insert_with(|| kernel_coefficient(kernel, &neg)).clone();
                if kv.is_zero() {
                    continue 'terms;
                }
                k = k.mul(&kv);
            }
            acc = acc.add(&c.mul_rat(&k));
        }
        acc
    }
}

/// Coefficients `b_0..b_order` of `exp(Σ_{n≥1} a_n u^n)` from
/// `k b_k = Σ_n n a_n b_{k-n}`.
fn exp_coefficients(a: &[TruncPoly], order: usize, prec: u32) -> Vec<TruncPoly> {
    let mut b = vec![TruncPoly::constant(RatFunc::one(), prec)];
    for k in 1..=order {
        let mut acc = TruncPoly::zero_with(prec);
        for n in 1..=k.min(a.len()) {
            acc = acc.add(&a[n - 1].mul(&b[k - n]).mul_rat(&RatFunc::int(n as i64)));
        }
        b.push(acc.mul_rat(&RatFunc::frac(1, k as i64)));
    }
    b
}

/// How the `H` factor is taken.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct HFactor {
    /// `H^{-1}` instead of `H`.
    inverse: bool,
    /// `t = 0`, where `H(u; X) = ∏ 1/(1 - x_i u)`.
    t_zero: bool,
}

/// `exp(Σ_n a(n) p_n(X) w^{s n})` in the variable `w = var`, as a Laurent
/// series in `nvars` variables.
pub fn power_sum_exponential(
    a: &dyn Fn(u32) -> RatFunc,
    var: usize,
    s: i32,
    x: &[usize],
    nvars: usize,
    prec: u32,
) -> LaurentSeries {
    if x.is_empty() {
        return LaurentSeries::one(nvars, prec);
    }
    let coeffs: Vec<TruncPoly> = (1..=prec).map(|n| variable_power_sum(x, n, prec).mul_rat(&a(n))).collect();
    let b = exp_coefficients(&coeffs, prec as usize, prec);
    let mut out = LaurentSeries::zero(nvars, prec);
    for (k, bk) in b.into_iter().enumerate() {
        let mut e = vec![0; nvars];
        e[var] = s * k as i32;
        out.add_term(e, bk);
    }
    out
}

/// `H(c w^{s}; X)^{±1}` in the variable `w = var` (`s = ±1`).
fn h_series(h: HFactor, c: &RatFunc, var: usize, s: i32, x: &[usize], nvars: usize, prec: u32) -> LaurentSeries {
    // log H(u; X) = Σ_n (1 - t^n) p_n(X) u^n / n
    let sign = if h.inverse { -1 } else { 1 };
    let a = |n: u32| {
        let w = if h.t_zero { RatFunc::one() } else { RatFunc::one_minus(0, n as i32) };
        w.mul(&c.pow(n as i32)).mul(&RatFunc::frac(sign, n as i64))
    };
    power_sum_exponential(&a, var, s, x, nvars, prec)
}

/// `H(c w^{s}; X)^{-1}`, the form used by the level-`m` expectation.
pub fn h_inverse_series(c: &RatFunc, var: usize, s: i32, x: &[usize], nvars: usize, prec: u32) -> LaurentSeries {
    h_series(HFactor { inverse: true, t_zero: false }, c, var, s, x, nvars, prec)
}

/// The two cross-level factors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WKind {
    /// `(1-ρ)(1-qρ/t) / ((1-qρ)(1-ρ/t))`.
    W,
    /// `(1-ρ)(1-tρ/q) / ((1-ρ/q)(1-tρ))`.
    WTilde,
}

/// Series coefficients `c_0..c_order` of the single-pair factor in `ρ`.
pub fn w_factor(kind: WKind, order: usize) -> Vec<RatFunc> {
    // log f = Σ_n (c_2^n + c_3^n - 1 - c_1^n) ρ^n / n
    let (c1, c2, c3) = match kind {
        WKind::W => (RatFunc::mono(1, -1), RatFunc::q(), RatFunc::mono(0, -1)),
        WKind::WTilde => (RatFunc::mono(-1, 1), RatFunc::mono(-1, 0), RatFunc::t()),
    };
    let a: Vec<TruncPoly> = (1..=order as i32)
        .map(|n| {
            let v = c2.pow(n).add(&c3.pow(n)).sub(&RatFunc::one()).sub(&c1.pow(n)).mul(&RatFunc::frac(1, n as i64));
            TruncPoly::constant(v, crate::coefficients::EXACT)
        })
        .collect();
    exp_coefficients(&a, order, crate::coefficients::EXACT).into_iter().map(|b| b.constant_term()).collect()
}

/// `∏_{i,j} f(b_j / a_i)` where `a_i`, `b_j` are Laurent monomials given
/// by exponent vectors, keeping products accepted by `keep`.
fn w_series(
    kind: WKind,
    a: &[Vec<i32>],
    b: &[Vec<i32>],
    order: usize,
    nvars: usize,
    prec: u32,
    keep: &dyn Fn(&[i32]) -> bool,
) -> LaurentSeries {
    let f = w_factor(kind, order);
    let mut acc = LaurentSeries::one(nvars, prec);
    for ai in a {
        for bj in b {
            let mut s = LaurentSeries::zero(nvars, prec);
            for (k, c) in f.iter().enumerate() {
                let e: Vec<i32> = bj.iter().zip(ai).map(|(x, y)| k as i32 * (x - y)).collect();
                s.add_term(e, TruncPoly::constant(c.clone(), prec));
            }
            acc = acc.mul_filtered(&s, keep);
        }
    }
    acc
}

fn unit_vector(nvars: usize, i: usize, s: i32) -> Vec<i32> {
    let mut e = vec![0; nvars];
    e[i] = s;
    e
}

/// Checks `W(z^{-1}; w^{-1}) = W(w; z)` for `m` and `n` variables, comparing
/// all coefficients of total order `≤ order`.
pub fn w_inversion_check(kind: WKind, m: usize, n: usize, order: usize) -> bool {
    let nv = m + n;
    let z_inv: Vec<Vec<i32>> = (0..m).map(|i| unit_vector(nv, i, -1)).collect();
    let w_inv: Vec<Vec<i32>> = (0..n).map(|j| unit_vector(nv, m + j, -1)).collect();
    let z: Vec<Vec<i32>> = (0..m).map(|i| unit_vector(nv, i, 1)).collect();
    let w: Vec<Vec<i32>> = (0..n).map(|j| unit_vector(nv, m + j, 1)).collect();
    // both sides are series in z/w; the order is the total z-degree
    let keep = |e: &[i32]| e[..m].iter().sum::<i32>() <= order as i32;
    let lhs = w_series(kind, &z_inv, &w_inv, order, nv, crate::coefficients::EXACT, &keep);
    let rhs = w_series(kind, &w, &z, order, nv, crate::coefficients::EXACT, &keep);
    lhs == rhs
}

/// Per-family data of the multi-level formulas.
struct FamilyData {
    gamma: RatFunc,
    h_inverse: bool,
    /// `H((c w)^{-1}; Y)`.
    y_scale: RatFunc,
    w: WKind,
    negative: bool,
}

fn family_data(f: ObservableFamily) -> Result<FamilyData> {
    let t = RatFunc::t();
    let q = RatFunc::q();
    Ok(match f {
        ObservableFamily::E => {
            FamilyData { gamma: RatFunc::mono(0, -1), h_inverse: true, y_scale: t, w: WKind::W, negative: false }
        }
        ObservableFamily::G => FamilyData { gamma: q, h_inverse: true, y_scale: t, w: WKind::W, negative: true },
        ObservableFamily::EPrime => {
            FamilyData { gamma: t, h_inverse: false, y_scale: q, w: WKind::WTilde, negative: false }
        }
        ObservableFamily::GPrime => {
            FamilyData { gamma: RatFunc::mono(-1, 0), h_inverse: false, y_scale: q, w: WKind::WTilde, negative: true }
        }
        other => return Err(Error::UnsupportedObservable(format!("{other:?} has no multi-level formula"))),
    })
}

/// The multi-level contour-integral formula for `𝔼[f_{r_1}[1] ⋯ f_{r_N}[N]]`,
/// all observables from one of the families `E, E', G, G'`.
///
/// The integration variables are `w^{(α)}_i`; `H(w; X)^{±1}` is a series in
/// `w`, `H((c w)^{-1}; Y)^{±1}` a series in `w^{-1}`, and the cross-level
/// factor is expanded in `w^{(β)}/w^{(α)}` for `α < β`.
///
/// Order bound: write `L_α` for the exponent sum over level `α`. The kernel
/// vanishes unless every `L_α = 0`. Each `H` monomial shifts some `L_α` by
/// at most its x/y-degree, so the `H` part changes `Σ_α α L_α` by at most
/// `(N-1) D` in absolute value, while each cross-level monomial `(w^β/w^α)^k`
/// raises it by `k (β - α) > 0`. Cross-level products with
/// `Σ_α α L_α > (N-1) D` are therefore dropped without loss.
pub fn multilevel_formula(obs: &[Observable], spec: &ProcessSpec) -> Result<TruncPoly> {
    assert_eq!(obs.len(), spec.n_levels(), "one observable per level");
    let family = obs[0].family;
    if obs.iter().any(|o| o.family != family) {
        return Err(Error::UnsupportedObservable("multi-level formulas need a single family".into()));
    }
    let fd = family_data(family)?;
    let d = spec.degree;
    let n = spec.n_levels();
    let ranks: Vec<usize> = obs.iter().map(|o| o.r as usize).collect();
    if ranks.iter().any(|&r| r == 0) {
        return Err(Error::UnsupportedObservable("rank 0".into()));
    }
    let mut level_vars: Vec<Vec<usize>> = Vec::new();
    let mut next = 0;
    for &r in &ranks {
        level_vars.push((next..next + r).collect());
        next += r;
    }
    let nv = next;
    let level_of: Vec<usize> = (0..n).flat_map(|a| std::iter::repeat(a).take(ranks[a])).collect();

    let h = HFactor { inverse: fd.h_inverse, t_zero: false };
    let mut hpart = LaurentSeries::one(nv, d);
    for a in 0..n {
        for b in a..n {
            for &i in &level_vars[b] {
                hpart = hpart.mul(&h_series(h, &RatFunc::one(), i, 1, &spec.x_vars(a), nv, d));
            }
            let c = fd.y_scale.inv()?;
            for &i in &level_vars[a] {
                hpart = hpart.mul(&h_series(h, &c, i, -1, &spec.y_vars(b), nv, d));
            }
        }
    }

    let bound = ((n - 1) as i64) * d as i64;
    let weighted = |e: &[i32]| -> i64 { e.iter().enumerate().map(|(v, &x)| level_of[v] as i64 * x as i64).sum() };
    let keep = |e: &[i32]| weighted(e) <= bound;
    let mut wpart = LaurentSeries::one(nv, d);
    for a in 0..n {
        for b in a + 1..n {
            let wa: Vec<Vec<i32>> = level_vars[a].iter().map(|&i| unit_vector(nv, i, 1)).collect();
            let wb: Vec<Vec<i32>> = level_vars[b].iter().map(|&j| unit_vector(nv, j, 1)).collect();
            let part = w_series(fd.w, &wa, &wb, bound.max(0) as usize, nv, d, &keep);
            wpart = wpart.mul_filtered(&part, &keep);
        }
    }

    let level_zero = |e: &[i32]| level_vars.iter().all(|vs| vs.iter().map(|&v| e[v]).sum::<i32>() == 0);
    let integrand = hpart.mul_filtered(&wpart, &level_zero);
    let groups: Vec<(Vec<usize>, Kernel)> =
        level_vars.iter().map(|vs| (vs.clone(), Kernel::Determinant { gamma: fd.gamma.clone() })).collect();
    let ct = integrand.constant_term_grouped(&groups);
    let total_r: usize = ranks.iter().sum();
    let mut pre = RatFunc::one();
    for &r in &ranks {
        pre = pre.div(&RatFunc::from_bigint(factorial(r as u64)))?;
    }
    if fd.negative && total_r % 2 == 1 {
        pre = pre.neg();
    }
    Ok(ct.mul_rat(&pre))
}

/// Kernels of the one-level Fredholm identities.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KernelVariant {
    /// `H(z;X)^{-1} H((tw)^{-1};Y)^{-1} / (z - w/t)`.
    KE,
    /// `H(z;X) H((qw)^{-1};Y) / (z - t w)`.
    KEprime,
    /// `H(z;X)^{-1} H((tw)^{-1};Y)^{-1} / (z - q w)`.
    KG,
    /// `H(z;X) H((qw)^{-1};Y) / (z - w/q)`.
    KGprime,
    /// `KGprime` at `t = 0`: `∏ 1/(1 - x_i z) · ∏ 1/(1 - y_i/(q w)) / (z - w/q)`.
    KGprimeT0,
}

impl KernelVariant {
    pub const ALL: [KernelVariant; 5] = [
        KernelVariant::KE,
        KernelVariant::KEprime,
        KernelVariant::KG,
        KernelVariant::KGprime,
        KernelVariant::KGprimeT0,
    ];

    /// Whether the corollary pairs the kernel with `det(I - uK)`.
    pub fn minus_sign(self) -> bool {
        matches!(self, KernelVariant::KG | KernelVariant::KGprime | KernelVariant::KGprimeT0)
    }
}

/// A kernel of the form `A(z) B(w) / (z - γ w)` on given variable sets.
#[derive(Clone, Debug, PartialEq)]
pub struct KernelSpec {
    pub variant: KernelVariant,
    pub x: Vec<usize>,
    pub y: Vec<usize>,
}

impl KernelSpec {
    /// The kernel on the variables of a one-level process.
    pub fn for_process(variant: KernelVariant, spec: &ProcessSpec) -> Self {
        KernelSpec { variant, x: spec.x_vars(0), y: spec.y_vars(0) }
    }

    fn parts(&self) -> (RatFunc, HFactor, RatFunc) {
        let inv = HFactor { inverse: true, t_zero: false };
        let direct = HFactor { inverse: false, t_zero: false };
        match self.variant {
            KernelVariant::KE => (RatFunc::mono(0, -1), inv, RatFunc::t()),
            KernelVariant::KEprime => (RatFunc::t(), direct, RatFunc::q()),
            KernelVariant::KG => (RatFunc::q(), inv, RatFunc::t()),
            KernelVariant::KGprime => (RatFunc::mono(-1, 0), direct, RatFunc::q()),
            KernelVariant::KGprimeT0 => (RatFunc::mono(-1, 0), HFactor { inverse: false, t_zero: true }, RatFunc::q()),
        }
    }
}

/// Coefficients `1, c_1, …, c_{u_order}` of `det(I + uK)`.
///
/// For a kernel `A(z)B(w)/(z - γw)` the minor `det[K(z_i, z_j)]` is
/// `∏_i A(z_i)B(z_i) · det[1/(z_i - γ z_j)]`, so the `r`-th coefficient is
/// `1/r!` times a determinant-kernel constant term.
pub fn fredholm_det(kernel: &KernelSpec, u_order: u32, prec: u32) -> Result<Vec<TruncPoly>> {
    let (gamma, h, yscale) = kernel.parts();
    let c = yscale.inv()?;
    let mut out = vec![TruncPoly::constant(RatFunc::one(), prec)];
    for r in 1..=u_order as usize {
        let mut s = LaurentSeries::one(r, prec);
        for i in 0..r {
            s = s.mul(&h_series(h, &RatFunc::one(), i, 1, &kernel.x, r, prec));
            s = s.mul(&h_series(h, &c, i, -1, &kernel.y, r, prec));
        }
        let ct = s.constant_term_grouped(&[((0..r).collect(), Kernel::Determinant { gamma: gamma.clone() })]);
        out.push(ct.mul_rat(&RatFunc::frac(1, 1).div(&RatFunc::from_bigint(factorial(r as u64)))?));
    }
    Ok(out)
}

/// `(det(I ± uK), 𝔼[Σ_r f_r u^r])` coefficientwise, with the sign and the
/// observable family of the matching corollary. The `t = 0` variant is
/// handled by [`q_whittaker_limit_check`].
pub fn fredholm_expectation_sides(
    variant: KernelVariant,
    spec: &ProcessSpec,
    u_order: u32,
) -> Result<(Vec<TruncPoly>, Vec<TruncPoly>)> {
    assert_eq!(spec.n_levels(), 1, "Fredholm identities are one-level");
    let family = match variant {
        KernelVariant::KE => ObservableFamily::E,
        KernelVariant::KEprime => ObservableFamily::EPrime,
        KernelVariant::KG => ObservableFamily::G,
        KernelVariant::KGprime => ObservableFamily::GPrime,
        KernelVariant::KGprimeT0 => {
            return Err(Error::UnsupportedObservable("the t = 0 kernel has its own check".into()))
        }
    };
    let det =
        signed(fredholm_det(&KernelSpec::for_process(variant, spec), u_order, spec.degree)?, variant.minus_sign());
    let mut exp = vec![TruncPoly::constant(RatFunc::one(), spec.degree)];
    for r in 1..=u_order {
        exp.push(correlation_direct(&[Observable::new(family, r)], spec)?);
    }
    Ok((det, exp))
}

fn signed(mut v: Vec<TruncPoly>, minus: bool) -> Vec<TruncPoly> {
    if minus {
        for (r, c) in v.iter_mut().enumerate() {
            if r % 2 == 1 {
                *c = c.neg();
            }
        }
    }
    v
}

/// `Ok(())` if every coefficient of `u^1..u^{u_order}` of `det(I + uK^ℰ)` is
/// free of `q`, otherwise the first offending coefficient.
pub fn q_independence_check(spec: &ProcessSpec, u_order: u32) -> Result<std::result::Result<(), String>> {
    let det = fredholm_det(&KernelSpec::for_process(KernelVariant::KE, spec), u_order, spec.degree)?;
    for (r, c) in det.iter().enumerate().skip(1) {
        for (e, v) in c.terms() {
            if v.involves_q() {
                return Ok(Err(format!("u^{r}, monomial {e:?}: {v}")));
            }
        }
    }
    Ok(Ok(()))
}

fn at_t_zero(p: &TruncPoly) -> Result<TruncPoly> {
    p.try_map_coeffs(|c| c.substitute(Target::Q, Target::Zero))
}

#[derive(Clone, Debug, PartialEq)]
pub struct QWhittakerReport {
    /// `𝔼_{q,0}[1/(q^{1-λ_1} u; q)_∞]` coefficients, from the measure at `t = 0`.
    pub expectation: Vec<TruncPoly>,
    /// `det(I - u K|_{t=0})` coefficients.
    pub determinant: Vec<TruncPoly>,
    /// `t → 0` of the general-`t` expectation of the `G'` generating function.
    pub expectation_limit: Vec<TruncPoly>,
    /// `t → 0` of the general-`t` determinant.
    pub determinant_limit: Vec<TruncPoly>,
}

impl QWhittakerReport {
    pub fn ok(&self) -> bool {
        self.expectation == self.determinant
            && self.expectation_limit == self.expectation
            && self.determinant_limit == self.determinant
    }
}

/// Both sides of the `q`-Whittaker limit of the `G'` Fredholm identity, each
/// computed directly at `t = 0` and as the limit of the general-`t` side.
pub fn q_whittaker_limit_check(u_order: u32, spec: &ProcessSpec) -> Result<QWhittakerReport> {
    assert_eq!(spec.n_levels(), 1, "Fredholm identities are one-level");
    let d = spec.degree;
    let determinant = signed(fredholm_det(&KernelSpec::for_process(KernelVariant::KGprimeT0, spec), u_order, d)?, true);
    let (det_general, exp_general) = fredholm_expectation_sides(KernelVariant::KGprime, spec, u_order)?;
    let determinant_limit = det_general.iter().map(at_t_zero).collect::<Result<Vec<_>>>()?;
    let expectation_limit = exp_general.iter().map(at_t_zero).collect::<Result<Vec<_>>>()?;

    // 1/(a u; q)_∞ = Σ_r a^r u^r / (q; q)_r with a = q^{1-λ_1}
    let q = RatFunc::q();
    let mut expectation = vec![TruncPoly::zero_with(d); u_order as usize + 1];
    for l in crate::partitions::partitions_up_to(d) {
        let w = at_t_zero(&super::measure_weight(&l, spec)?)?;
        if w.is_zero() {
            continue;
        }
        let a = RatFunc::mono(1 - l.part(0) as i32, 0);
        for (r, slot) in expectation.iter_mut().enumerate() {
            let c = a.pow(r as i32).div(&poch(&q, &q, r))?;
            *slot = slot.add(&w.mul_rat(&c));
        }
    }
    Ok(QWhittakerReport { expectation, determinant, expectation_limit, determinant_limit })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> RatFunc {
        s.parse().unwrap()
    }

    #[test]
    fn w_first_order() {
        let f = w_factor(WKind::W, 2);
        assert!(f[0].is_one());
        assert_eq!(f[1], r("-1-q/t+q+1/t"));
    }

    #[test]
    fn w_inversion() {
        for kind in [WKind::W, WKind::WTilde] {
            assert!(w_inversion_check(kind, 2, 1, 3));
            assert!(w_inversion_check(kind, 1, 2, 3));
        }
    }

    #[test]
    fn empty_fredholm() {
        let spec = ProcessSpec::uniform(1, 0, 0, 0);
        let det = fredholm_det(&KernelSpec::for_process(KernelVariant::KE, &spec), 1, 0).unwrap();
        assert!(det[0].constant_term().is_one());
        assert_eq!(det[1].constant_term(), r("t/(t-1)"));
    }

    #[test]
    fn one_level_formula_matches_direct() {
        let spec = ProcessSpec::uniform(1, 1, 1, 2);
        let o = [Observable::new(ObservableFamily::E, 1)];
        assert_eq!(multilevel_formula(&o, &spec).unwrap(), correlation_direct(&o, &spec).unwrap());
    }
}
