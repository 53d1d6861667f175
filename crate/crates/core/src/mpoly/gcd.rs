//! Multivariate gcd by recursive primitive pseudo-remainder sequences.
//!
//! Slow but total; `reduce_map` uses it only when the hint pool leaves a common factor.

use super::poly::{Mono, MultiPoly};

/// Coefficients of `p` as a polynomial in `x_v`, lowest degree first.
fn coeffs_in(p: &MultiPoly, v: usize) -> Vec<MultiPoly> {
    let mut out = vec![MultiPoly::zero(p.nvars()); p.degree_in(v) as usize + 1];
    for (m, c) in p.terms() {
        let k = m.0[v] as usize;
        let mut rest = *m;
        rest.0[v] = 0;
        out[k] = out[k].add(&MultiPoly::monomial(p.nvars(), rest, c.clone()));
    }
    out
}

fn x_pow(v: usize, k: u16) -> Mono {
    let mut m = Mono::default();
    m.0[v] = k;
    m
}

/// Highest-index variable occurring in either polynomial.
fn main_var(a: &MultiPoly, b: &MultiPoly) -> Option<usize> {
    (0..a.nvars()).rev().find(|&v| a.degree_in(v) > 0 || b.degree_in(v) > 0)
}

/// Gcd of all `x_v`-coefficients of `p`.
fn content_in(p: &MultiPoly, v: usize) -> MultiPoly {
    coeffs_in(p, v).into_iter().filter(|c| !c.is_zero()).fold(MultiPoly::zero(p.nvars()), |g, c| gcd(&g, &c))
}

/// Sparse pseudo-remainder of `a` by `b` in `x_v`.
fn prem(a: &MultiPoly, b: &MultiPoly, v: usize) -> MultiPoly {
    let n = b.degree_in(v);
    let lb = coeffs_in(b, v).pop().expect("nonzero divisor");
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(v) >= n {
        let dr = r.degree_in(v);
        let lr = coeffs_in(&r, v).pop().unwrap();
        let shift = MultiPoly::monomial(r.nvars(), x_pow(v, dr - n), crate::exact::QuadExt::from_int(1));
        r = r.mul(&lb).sub(&lr.mul(&shift).mul(b));
    }
    r
}

/// Monic gcd; `gcd(0, 0) = 0`.
pub fn gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    let Some(v) = main_var(a, b) else {
        return MultiPoly::one(a.nvars());
    };
    if a.degree_in(v) == 0 || b.degree_in(v) == 0 {
        // One side is free of x_v: the gcd divides every x_v-coefficient of the other.
        let (free, other) = if a.degree_in(v) == 0 { (a, b) } else { (b, a) };
        return gcd(free, &content_in(other, v));
    }
    let (ca, cb) = (content_in(a, v), content_in(b, v));
    let c = gcd(&ca, &cb);
    let mut p = a.exact_div(&ca).expect("content divides");
    let mut q = b.exact_div(&cb).expect("content divides");
    if p.degree_in(v) < q.degree_in(v) {
        std::mem::swap(&mut p, &mut q);
    }
    loop {
        if q.degree_in(v) == 0 {
            return c.monic();
        }
        let r = prem(&p, &q, v);
        if r.is_zero() {
            return c.mul(&q).monic();
        }
        let cr = content_in(&r, v);
        p = q;
        q = r.exact_div(&cr).expect("content divides");
        if q.is_zero() {
            return c.mul(&p).monic();
        }
    }
}

/// Gcd of a list.
pub fn gcd_all(ps: &[MultiPoly]) -> MultiPoly {
    ps.iter().fold(MultiPoly::zero(ps.first().map_or(1, MultiPoly::nvars)), |g, p| if g.is_constant() && !g.is_zero() { g } else { gcd(&g, p) })
}
