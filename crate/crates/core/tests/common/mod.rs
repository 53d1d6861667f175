//! Independent oracles shared by the integration tests. None of them call the library's own
//! algorithms for the quantity being checked.
#![allow(dead_code)]

use nalgebra::{DMatrix, Schur};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};
use pseudoauto::exact::rational::{int, to_f64};
use pseudoauto::exact::{IntMatrix, QuadExt, RatPoly, Rational};

/// Characteristic polynomial by the Faddeev–LeVerrier recursion over ℚ, lowest degree first.
pub fn leverrier_charpoly(m: &IntMatrix) -> Vec<Rational> {
    let n = m.rows();
    let a: Vec<Vec<Rational>> = (0..n).map(|i| (0..n).map(|j| Rational::from_integer(m.get(i, j).clone())).collect()).collect();
    let mul = |x: &Vec<Vec<Rational>>, y: &Vec<Vec<Rational>>| -> Vec<Vec<Rational>> {
        (0..n).map(|i| (0..n).map(|j| (0..n).fold(Rational::zero(), |s, k| s + &x[i][k] * &y[k][j])).collect()).collect()
    };
    // c[n] = 1; M_k = A·M_{k-1} + c_{n-k+1} I; c_{n-k} = −tr(A·M_k)/k.
    let mut c = vec![Rational::zero(); n + 1];
    c[n] = Rational::one();
    let mut mk: Vec<Vec<Rational>> = vec![vec![Rational::zero(); n]; n];
    for k in 1..=n {
        let mut next = mul(&a, &mk);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &c[n - k + 1];
        }
        mk = next;
        let am = mul(&a, &mk);
        let tr = (0..n).fold(Rational::zero(), |s, i| s + &am[i][i]);
        c[n - k] = -tr / int(k as i64);
    }
    c
}

/// Complex roots from the eigenvalues of the companion matrix (floating point). The QR sweep
/// is capped; when it stalls the roots come from Aberth–Ehrlich iteration instead.
pub fn numeric_roots(p: &RatPoly) -> Vec<Complex64> {
    let n = p.deg();
    let lead = to_f64(&p.lead());
    let cs: Vec<f64> = p.coeffs().iter().map(|c| to_f64(c) / lead).collect();
    let m = DMatrix::from_fn(n, n, |i, j| {
        if j == n - 1 {
            -cs[i]
        } else if i == j + 1 {
            1.0
        } else {
            0.0
        }
    });
    match Schur::try_new(m, 1e-14, 20_000) {
        Some(s) => s.complex_eigenvalues().iter().copied().collect(),
        None => aberth(&cs),
    }
}

/// Simultaneous root iteration on a monic coefficient list, lowest degree first.
fn aberth(cs: &[f64]) -> Vec<Complex64> {
    let n = cs.len() - 1;
    let eval = |z: Complex64| cs.iter().rev().fold((Complex64::zero(), Complex64::zero()), |(p, dp), &c| (p * z + c, dp * z + p));
    let radius = 1.0 + cs[..n].iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let mut zs: Vec<Complex64> = (0..n).map(|k| Complex64::from_polar(radius, 0.4 + 2.0 * std::f64::consts::PI * k as f64 / n as f64)).collect();
    for _ in 0..2000 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (p, dp) = eval(zs[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..n).filter(|&j| j != i).map(|j| Complex64::one() / (zs[i] - zs[j])).sum();
            let step = ratio / (Complex64::one() - ratio * repulsion);
            zs[i] -= step;
            moved = moved.max(step.norm());
        }
        if moved < 1e-15 {
            break;
        }
    }
    zs
}

/// `(inside, on, outside)` counts of the unit circle from floating-point roots; only for
/// corpora whose roots stay far from the circle unless exactly on it.
pub fn numeric_region_counts(p: &RatPoly, tol: f64) -> (usize, usize, usize) {
    let rs = numeric_roots(p);
    let on = rs.iter().filter(|z| (z.norm() - 1.0).abs() < tol).count();
    let inside = rs.iter().filter(|z| z.norm() < 1.0 - tol).count();
    (inside, on, rs.len() - inside - on)
}

/// `∏ (x − rᵢ)`.
pub fn poly_from_roots(roots: &[Rational]) -> RatPoly {
    roots.iter().fold(RatPoly::one(), |acc, r| acc.mul(&RatPoly::new(vec![-r.clone(), Rational::one()])))
}

pub fn ints(cs: &[i64]) -> RatPoly {
    RatPoly::from_ints(cs)
}

/// `x^k`-coefficient list of a polynomial as `i64`s.
pub fn as_i64(p: &RatPoly) -> Vec<i64> {
    p.to_bigints().expect("integral").iter().map(|b| i64::try_from(b).expect("small")).collect()
}

pub fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// Complex value of a field element with the principal branch of `√d`.
pub fn cx(q: &QuadExt) -> Complex64 {
    q.to_complex()
}

/// `x + y√d` multiplication written out on coordinates.
pub fn quad_mul_coords(x: &QuadExt, y: &QuadExt, d: i64) -> (Rational, Rational) {
    (&x.re * &y.re + int(d) * &x.im * &y.im, &x.re * &y.im + &x.im * &y.re)
}
