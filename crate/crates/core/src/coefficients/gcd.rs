//! Polynomial gcd over the integers in two variables.
//!
//! The fast path is the heuristic gcd (evaluate at a large integer, take the
//! integer gcd, reconstruct by balanced digit expansion, confirm by exact
//! division). A primitive remainder sequence is the fallback, so the result is
//! always exact.

use super::poly::{Mono, Poly};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

type UP = Vec<BigInt>;
type BP = Vec<UP>;

const HEU_ATTEMPTS: usize = 6;

fn up_trim(p: &mut UP) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn up_eval(p: &UP, x: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

fn up_content(p: &UP) -> BigInt {
    let mut g = BigInt::zero();
    for c in p {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn up_norm(p: &UP) -> BigInt {
    p.iter().map(|c| c.abs()).max().unwrap_or_default()
}

fn up_div_int(p: &UP, c: &BigInt) -> UP {
    p.iter().map(|x| x / c).collect()
}

fn up_mul(a: &UP, b: &UP) -> UP {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    up_trim(&mut out);
    out
}

fn up_sub(a: &UP, b: &UP) -> UP {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_default();
        let y = b.get(i).cloned().unwrap_or_default();
        out.push(x - y);
    }
    up_trim(&mut out);
    out
}

/// Exact quotient `a / b` in Z[x], or `None` when `b` does not divide `a`.
fn up_div_exact(a: &UP, b: &UP) -> Option<UP> {
    if b.is_empty() {
        return None;
    }
    if a.is_empty() {
        return Some(Vec::new());
    }
    if a.len() < b.len() {
        return None;
    }
    let mut r = a.clone();
    let db = b.len() - 1;
    let lb = &b[db];
    let mut quo = vec![BigInt::zero(); a.len() - db];
    for k in (0..quo.len()).rev() {
        let lr = &r[k + db];
        if lr.is_zero() {
            continue;
        }
        let (qc, rem) = lr.div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        for (j, bj) in b.iter().enumerate() {
            r[k + j] -= &qc * bj;
        }
        quo[k] = qc;
    }
    if r.iter().any(|c| !c.is_zero()) {
        return None;
    }
    up_trim(&mut quo);
    Some(quo)
}

/// Balanced base-`x` digits of `h`, read as a polynomial.
fn up_interp(h: &BigInt, x: &BigInt) -> UP {
    let half = x / 2;
    let mut h = h.clone();
    let mut out = Vec::new();
    while !h.is_zero() {
        let mut g = h.mod_floor(x);
        if g > half {
            g -= x;
        }
        h = (&h - &g) / x;
        out.push(g);
    }
    out
}

fn up_primitive_signed(p: UP) -> UP {
    let c = up_content(&p);
    let mut p = if c.is_one() || c.is_zero() { p } else { up_div_int(&p, &c) };
    if p.last().is_some_and(|l| l.is_negative()) {
        for c in p.iter_mut() {
            *c = -&*c;
        }
    }
    p
}

fn up_prem(f: &UP, g: &UP) -> UP {
    let mut r = f.clone();
    let dg = g.len() - 1;
    let lg = g[dg].clone();
    while r.len() > dg && !r.is_empty() {
        let d = r.len() - 1 - dg;
        let lr = r.last().unwrap().clone();
        for c in r.iter_mut() {
            *c *= &lg;
        }
        for (j, gj) in g.iter().enumerate() {
            r[d + j] -= &lr * gj;
        }
        up_trim(&mut r);
    }
    r
}

fn up_prs_gcd(f: &UP, g: &UP) -> UP {
    let (mut a, mut b) = (up_primitive_signed(f.clone()), up_primitive_signed(g.clone()));
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        if b.is_empty() {
            return a;
        }
        if b.len() == 1 {
            return vec![BigInt::one()];
        }
        let r = up_prem(&a, &b);
        a = b;
        b = up_primitive_signed(r);
    }
}

/// First evaluation point. It must be at least `2 min(|f|, |g|) + 2`, otherwise a
/// candidate that divides both inputs need not be their gcd.
fn heu_start(fnorm: &BigInt, gnorm: &BigInt, flc: &BigInt, glc: &BigInt) -> BigInt {
    let b: BigInt = BigInt::from(2) * fnorm.min(gnorm) + 29;
    let c = BigInt::from(2) * (fnorm / flc.abs()).min(gnorm / glc.abs()) + 2;
    b.max(c)
}

fn heu_next(x: &BigInt) -> BigInt {
    BigInt::from(73794) * x * x.sqrt().sqrt() / BigInt::from(27011)
}

/// Gcd of two primitive nonzero univariate polynomials, sign unnormalized.
fn up_gcd_primitive(f: &UP, g: &UP) -> UP {
    if f.len() == 1 || g.len() == 1 {
        return vec![BigInt::one()];
    }
    let fnorm = up_norm(f);
    let gnorm = up_norm(g);
    let mut x = heu_start(&fnorm, &gnorm, f.last().unwrap(), g.last().unwrap());
    for _ in 0..HEU_ATTEMPTS {
        let ff = up_eval(f, &x);
        let gg = up_eval(g, &x);
        if !ff.is_zero() && !gg.is_zero() {
            let h = ff.gcd(&gg);
            let cand = up_primitive_signed(up_interp(&h, &x));
            if !cand.is_empty() && up_div_exact(f, &cand).is_some() && up_div_exact(g, &cand).is_some() {
                return cand;
            }
            let cff = up_interp(&(&ff / &h), &x);
            if !cff.is_empty() {
                if let Some(hq) = up_div_exact(f, &cff) {
                    if up_div_exact(g, &hq).is_some() {
                        return up_primitive_signed(hq);
                    }
                }
            }
            let cfg = up_interp(&(&gg / &h), &x);
            if !cfg.is_empty() {
                if let Some(hq) = up_div_exact(g, &cfg) {
                    if up_div_exact(f, &hq).is_some() {
                        return up_primitive_signed(hq);
                    }
                }
            }
        }
        x = heu_next(&x);
    }
    up_prs_gcd(f, g)
}

/// Full gcd in Z[x] including the integer content.
fn up_gcd(f: &UP, g: &UP) -> UP {
    if f.is_empty() {
        return up_primitive_signed(g.clone()).into_iter().map(|c| c * up_content(g)).collect();
    }
    if g.is_empty() {
        return up_primitive_signed(f.clone()).into_iter().map(|c| c * up_content(f)).collect();
    }
    let cf = up_content(f);
    let cg = up_content(g);
    let c = cf.gcd(&cg);
    let pf = up_div_int(f, &cf);
    let pg = up_div_int(g, &cg);
    up_gcd_primitive(&pf, &pg).into_iter().map(|x| x * &c).collect()
}

fn bp_trim(p: &mut BP) {
    for c in p.iter_mut() {
        up_trim(c);
    }
    while p.last().is_some_and(|c| c.is_empty()) {
        p.pop();
    }
}

fn bp_content_int(p: &BP) -> BigInt {
    let mut g = BigInt::zero();
    for c in p {
        for x in c {
            g = g.gcd(x);
            if g.is_one() {
                return g;
            }
        }
    }
    g
}

fn bp_div_int(p: &BP, c: &BigInt) -> BP {
    p.iter().map(|u| up_div_int(u, c)).collect()
}

fn bp_norm(p: &BP) -> BigInt {
    p.iter().map(up_norm).max().unwrap_or_default()
}

fn bp_eval_outer(p: &BP, x: &BigInt) -> UP {
    let mut acc: UP = Vec::new();
    for c in p.iter().rev() {
        let mut next: UP = acc.iter().map(|a| a * x).collect();
        if next.len() < c.len() {
            next.resize(c.len(), BigInt::zero());
        }
        for (i, ci) in c.iter().enumerate() {
            next[i] += ci;
        }
        up_trim(&mut next);
        acc = next;
    }
    acc
}

/// Reconstructs a bivariate polynomial whose image under `outer = x` is `h`.
fn bp_interp(h: &UP, x: &BigInt) -> BP {
    let mut out: BP = Vec::new();
    for (j, hj) in h.iter().enumerate() {
        let digits = up_interp(hj, x);
        for (i, d) in digits.into_iter().enumerate() {
            if out.len() <= i {
                out.resize(i + 1, Vec::new());
            }
            if out[i].len() <= j {
                out[i].resize(j + 1, BigInt::zero());
            }
            out[i][j] = d;
        }
    }
    bp_trim(&mut out);
    out
}

fn bp_div_exact(a: &BP, b: &BP) -> Option<BP> {
    if b.is_empty() {
        return None;
    }
    if a.is_empty() {
        return Some(Vec::new());
    }
    if a.len() < b.len() {
        return None;
    }
    let mut r = a.clone();
    let db = b.len() - 1;
    let lb = &b[db];
    let mut quo: BP = vec![Vec::new(); a.len() - db];
    for k in (0..quo.len()).rev() {
        if r[k + db].is_empty() {
            continue;
        }
        let qc = up_div_exact(&r[k + db], lb)?;
        for (j, bj) in b.iter().enumerate() {
            let prod = up_mul(&qc, bj);
            r[k + j] = up_sub(&r[k + j], &prod);
        }
        quo[k] = qc;
    }
    if r.iter().any(|c| !c.is_empty()) {
        return None;
    }
    bp_trim(&mut quo);
    Some(quo)
}

fn bp_lc_int(p: &BP) -> BigInt {
    p.last().and_then(|c| c.last()).cloned().unwrap_or_else(BigInt::one)
}

fn bp_prem(f: &BP, g: &BP) -> BP {
    let mut r = f.clone();
    let dg = g.len() - 1;
    let lg = g[dg].clone();
    while r.len() > dg && !r.is_empty() {
        let d = r.len() - 1 - dg;
        let lr = r.last().unwrap().clone();
        for c in r.iter_mut() {
            *c = up_mul(c, &lg);
        }
        for (j, gj) in g.iter().enumerate() {
            let prod = up_mul(&lr, gj);
            r[d + j] = up_sub(&r[d + j], &prod);
        }
        bp_trim(&mut r);
    }
    r
}

fn bp_content_inner(p: &BP) -> UP {
    let mut g: UP = Vec::new();
    for c in p {
        g = up_gcd(&g, c);
        if g.len() == 1 && g[0].is_one() {
            break;
        }
    }
    if g.last().is_some_and(|l| l.is_negative()) {
        g = g.into_iter().map(|c| -c).collect();
    }
    g
}

fn bp_div_inner(p: &BP, c: &UP) -> BP {
    p.iter().map(|u| up_div_exact(u, c).expect("content divides")).collect()
}

fn bp_prs_gcd(f: &BP, g: &BP) -> BP {
    let cf = bp_content_inner(f);
    let cg = bp_content_inner(g);
    let c = up_gcd(&cf, &cg);
    let mut a = bp_div_inner(f, &cf);
    let mut b = bp_div_inner(g, &cg);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    let pp = loop {
        if b.is_empty() {
            break a;
        }
        if b.len() == 1 {
            break vec![vec![BigInt::one()]];
        }
        let r = bp_prem(&a, &b);
        a = b;
        b = if r.is_empty() {
            r
        } else {
            let cr = bp_content_inner(&r);
            bp_div_inner(&r, &cr)
        };
    };
    pp.iter().map(|u| up_mul(u, &c)).collect()
}

/// Gcd of two nonzero bivariate polynomials with unit integer content.
fn bp_gcd_primitive(f: &BP, g: &BP) -> BP {
    if f.len() == 1 && g.len() == 1 {
        return vec![up_gcd(&f[0], &g[0])];
    }
    let fnorm = bp_norm(f);
    let gnorm = bp_norm(g);
    let mut x = heu_start(&fnorm, &gnorm, &bp_lc_int(f), &bp_lc_int(g));
    for _ in 0..HEU_ATTEMPTS {
        let ff = bp_eval_outer(f, &x);
        let gg = bp_eval_outer(g, &x);
        if !ff.is_empty() && !gg.is_empty() {
            let h = up_gcd(&ff, &gg);
            let mut cand = bp_interp(&h, &x);
            if !cand.is_empty() {
                let c = bp_content_int(&cand);
                cand = bp_div_int(&cand, &c);
                if bp_div_exact(f, &cand).is_some() && bp_div_exact(g, &cand).is_some() {
                    return cand;
                }
            }
            if let Some(cff) = up_div_exact(&ff, &h) {
                let cffb = bp_interp(&cff, &x);
                if !cffb.is_empty() {
                    if let Some(hq) = bp_div_exact(f, &cffb) {
                        if bp_div_exact(g, &hq).is_some() {
                            return hq;
                        }
                    }
                }
            }
        }
        x = heu_next(&x);
    }
    bp_prs_gcd(f, g)
}

fn to_bp(p: &Poly, sq: u32, st: u32) -> BP {
    let maxq = (p.max_q() / sq) as usize;
    let maxt = (p.max_t() / st) as usize;
    let mut out: BP = vec![vec![BigInt::zero(); maxt + 1]; maxq + 1];
    for (m, c) in p.terms() {
        out[(m.q / sq) as usize][(m.t / st) as usize] = c.clone();
    }
    bp_trim(&mut out);
    out
}

fn from_bp(p: &BP, sq: u32, st: u32) -> Poly {
    let mut terms = Vec::new();
    for (i, row) in p.iter().enumerate() {
        for (j, c) in row.iter().enumerate() {
            if !c.is_zero() {
                terms.push((Mono::new(i as u32 * sq, j as u32 * st), c.clone()));
            }
        }
    }
    Poly::from_terms(terms)
}

fn exponent_gcd(ps: &[&Poly]) -> (u32, u32) {
    let (mut gq, mut gt) = (0u32, 0u32);
    for p in ps {
        for (m, _) in p.terms() {
            gq = gq.gcd(&m.q);
            gt = gt.gcd(&m.t);
        }
    }
    (gq.max(1), gt.max(1))
}

/// Returns `(g, a/g, b/g)` with `g` the gcd normalized to a positive leading
/// coefficient. `gcd(0, 0)` is `(0, 0, 0)` by convention.
pub fn gcd_cofactors(a: &Poly, b: &Poly) -> (Poly, Poly, Poly) {
    if a.is_zero() && b.is_zero() {
        return (Poly::zero(), Poly::zero(), Poly::zero());
    }
    if a.is_zero() {
        let s = if b.leading_sign_negative() { -BigInt::one() } else { BigInt::one() };
        return (b.scale(&s), Poly::zero(), Poly::constant(s));
    }
    if b.is_zero() {
        let s = if a.leading_sign_negative() { -BigInt::one() } else { BigInt::one() };
        return (a.scale(&s), Poly::constant(s), Poly::zero());
    }
    let ma = a.min_mono();
    let mb = b.min_mono();
    let gm = ma.min(mb);
    let ca = a.content();
    let cb = b.content();
    let gc = ca.gcd(&cb);
    if a.is_monomial() || b.is_monomial() {
        let g = Poly::monomial(gc.clone(), gm);
        return (g, a.div_mono(gm).div_int_exact(&gc), b.div_mono(gm).div_int_exact(&gc));
    }
    let pa = a.div_mono(ma).div_int_exact(&ca);
    let pb = b.div_mono(mb).div_int_exact(&cb);
    let (sq, st) = exponent_gcd(&[&pa, &pb]);
    let fa = to_bp(&pa, sq, st);
    let fb = to_bp(&pb, sq, st);
    let gd = bp_gcd_primitive(&fa, &fb);
    let qa = bp_div_exact(&fa, &gd).expect("gcd divides first argument");
    let qb = bp_div_exact(&fb, &gd).expect("gcd divides second argument");
    let mut g = from_bp(&gd, sq, st);
    let mut ka = from_bp(&qa, sq, st);
    let mut kb = from_bp(&qb, sq, st);
    if g.leading_sign_negative() {
        g = g.neg();
        ka = ka.neg();
        kb = kb.neg();
    }
    let g = g.mul_term(gm, &gc);
    let ka = ka.mul_term(ma.div(gm), &(&ca / &gc));
    let kb = kb.mul_term(mb.div(gm), &(&cb / &gc));
    (g, ka, kb)
}

/// Exact quotient in Z[q,t], or `None` when the division leaves a remainder.
pub fn div_exact(a: &Poly, b: &Poly) -> Option<Poly> {
    if b.is_zero() {
        return None;
    }
    if a.is_zero() {
        return Some(Poly::zero());
    }
    let (sq, st) = exponent_gcd(&[a, b]);
    let q = bp_div_exact(&to_bp(a, sq, st), &to_bp(b, sq, st))?;
    Some(from_bp(&q, sq, st))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(ts: &[(u32, u32, i64)]) -> Poly {
        Poly::from_terms(ts.iter().map(|&(a, b, c)| (Mono::new(a, b), BigInt::from(c))))
    }

    #[test]
    fn gcd_of_shared_linear_factor() {
        // (1 - q)(1 + t) and (1 - q)(1 - t)
        let a = p(&[(0, 0, 1), (4, 0, -1), (0, 4, 1), (4, 4, -1)]);
        let b = p(&[(0, 0, 1), (4, 0, -1), (0, 4, -1), (4, 4, 1)]);
        let (g, ka, kb) = gcd_cofactors(&a, &b);
        assert_eq!(g, p(&[(4, 0, 1), (0, 0, -1)]));
        assert_eq!(g.mul(&ka), a);
        assert_eq!(g.mul(&kb), b);
    }

    #[test]
    fn evaluation_point_below_bound_is_avoided() {
        // (31 t + 1)(t - 31^3) and 31^3 - t share the factor t - 31^3
        let f: UP = [-29791, -923520, 31].into_iter().map(BigInt::from).collect();
        let g: UP = [29791, -1].into_iter().map(BigInt::from).collect();
        let h = up_primitive_signed(up_gcd_primitive(&f, &g));
        assert_eq!(h, up_primitive_signed(g));
    }

    #[test]
    fn cancels_factor_q3_minus_t() {
        let a = p(&[(4, 8, 1), (16, 4, -1), (0, 4, 1), (12, 0, -1)]);
        let b = p(&[(12, 0, 1), (0, 4, -1)]);
        let (g, _, kb) = gcd_cofactors(&a, &b);
        assert_eq!(g, b);
        assert!(kb.is_one());
    }

    #[test]
    fn prs_and_heuristic_agree() {
        let x = p(&[(4, 0, 3), (0, 4, -2), (0, 0, 5)]);
        let y = p(&[(8, 4, 1), (0, 0, -7)]);
        let z = p(&[(4, 8, 2), (4, 0, 1), (0, 0, 1)]);
        let a = x.mul(&y).mul(&y);
        let b = x.mul(&z).mul(&y);
        let fa = to_bp(&a, 4, 4);
        let fb = to_bp(&b, 4, 4);
        let h = bp_gcd_primitive(&fa, &fb);
        let r = bp_prs_gcd(&fa, &fb);
        let mut hp = from_bp(&h, 4, 4);
        let mut rp = from_bp(&r, 4, 4);
        if hp.leading_sign_negative() {
            hp = hp.neg();
        }
        if rp.leading_sign_negative() {
            rp = rp.neg();
        }
        assert_eq!(hp, rp);
        let mut xy = x.mul(&y);
        if xy.leading_sign_negative() {
            xy = xy.neg();
        }
        assert_eq!(hp, xy);
    }
}
