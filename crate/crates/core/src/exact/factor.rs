//! Factorization of small integer polynomials over ℚ.
//!
//! Irreducibility is first attempted by a mod-p degree-pattern sieve. When the sieve leaves
//! candidate factor degrees open, factors are searched among conjugation-closed subsets of
//! approximate roots whose scaled, rounded product has coefficients inside the Mignotte bound;
//! a candidate is accepted only after exact division.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::modp::{primes_below, FpPoly};
use super::poly::RatPoly;
use super::roots::approx_roots;
use super::Rational;
use crate::error::{Error, Result};

pub const MAX_FACTOR_DEGREE: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum IrreducibilityProof {
    /// Degree patterns modulo these primes admit no proper factor degree.
    DegreePattern(Vec<u64>),
    /// Exhaustive bounded search found no factor of any degree the sieve allowed.
    FactorSearch(Vec<usize>),
    Linear,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub content: Rational,
    /// Primitive irreducible factors with positive leading coefficient, and multiplicities.
    pub factors: Vec<(RatPoly, usize)>,
}

impl Factorization {
    pub fn expand(&self) -> RatPoly {
        self.factors.iter().fold(RatPoly::constant(self.content.clone()), |acc, (f, m)| acc.mul(&f.pow(*m as u32)))
    }
}

/// Yun's squarefree decomposition of a primitive polynomial: `p = ∏ sᵢ^i`.
pub fn squarefree_decomposition(p: &RatPoly) -> Vec<(RatPoly, usize)> {
    let mut out = Vec::new();
    if p.deg() == 0 {
        return out;
    }
    let dp = p.derivative();
    let a0 = p.gcd(&dp);
    let mut b = p.div_rem(&a0).0;
    let mut c = dp.div_rem(&a0).0;
    let mut d = c.sub(&b.derivative());
    let mut i = 1;
    while b.deg() > 0 {
        let a = b.gcd(&d);
        if a.deg() > 0 {
            out.push((a.primitive(), i));
        }
        b = b.div_rem(&a).0;
        c = d.div_rem(&a).0;
        d = c.sub(&b.derivative());
        i += 1;
    }
    out
}

/// Proper factor degrees compatible with all degree patterns modulo primes below `bound`.
/// Returns the surviving degree set and the primes used.
pub fn sieve_degrees(p: &RatPoly, bound: u64) -> (BTreeSet<usize>, Vec<u64>) {
    let n = p.deg();
    let ints = p.primitive().to_bigints().expect("primitive");
    let mut allowed: BTreeSet<usize> = (1..n).collect();
    let mut used = Vec::new();
    for q in primes_below(bound) {
        if allowed.is_empty() {
            break;
        }
        let f = FpPoly::from_bigints(q, &ints);
        if f.deg() != n || f.gcd(&f.derivative()).deg() > 0 {
            continue;
        }
        let degs = f.factor_degrees();
        let mut sums: BTreeSet<usize> = BTreeSet::from([0]);
        for d in degs {
            let next: Vec<usize> = sums.iter().map(|s| s + d).collect();
            sums.extend(next);
        }
        let before = allowed.len();
        allowed.retain(|d| sums.contains(d));
        if allowed.len() < before || used.is_empty() {
            used.push(q);
        }
    }
    (allowed, used)
}

fn mignotte_bound(p: &RatPoly, k: usize) -> f64 {
    let norm2: f64 = p.to_f64_coeffs().iter().map(|c| c * c).sum::<f64>().sqrt();
    2f64.powi(k as i32) * norm2.max(1.0)
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            out.push(d.clone());
            if &d * &d != n {
                out.push(&n / &d);
            }
        }
        d += 1;
    }
    out.sort();
    out
}

/// Roots grouped into conjugation classes: singletons for real roots, pairs otherwise.
fn conjugate_classes(roots: &[Complex64]) -> Vec<Vec<usize>> {
    let scale = roots.iter().map(|z| z.norm()).fold(1.0, f64::max);
    let tol = 1e-7 * scale;
    let mut used = vec![false; roots.len()];
    let mut classes = Vec::new();
    for i in 0..roots.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        if roots[i].im.abs() <= tol {
            classes.push(vec![i]);
            continue;
        }
        let partner = (0..roots.len()).filter(|&j| !used[j]).min_by(|&a, &b| {
            let da = (roots[a] - roots[i].conj()).norm();
            let db = (roots[b] - roots[i].conj()).norm();
            da.partial_cmp(&db).unwrap()
        });
        match partner {
            Some(j) => {
                used[j] = true;
                classes.push(vec![i, j]);
            }
            None => classes.push(vec![i]),
        }
    }
    classes
}

/// Enumerate class subsets of total size `k`, calling `visit` until it returns `Some`.
fn search_subsets<T>(classes: &[Vec<usize>], k: usize, start: usize, chosen: &mut Vec<usize>, visit: &mut impl FnMut(&[usize]) -> Option<T>) -> Option<T> {
    if chosen.len() == k {
        return visit(chosen);
    }
    for ci in start..classes.len() {
        let c = &classes[ci];
        if chosen.len() + c.len() > k {
            continue;
        }
        chosen.extend(c);
        if let Some(t) = search_subsets(classes, k, ci + 1, chosen, visit) {
            return Some(t);
        }
        chosen.truncate(chosen.len() - c.len());
    }
    None
}

/// Integer candidate `d·∏(x − zᵢ)` if all coefficients round cleanly within the bound.
fn rounded_factor(roots: &[Complex64], subset: &[usize], scale: f64, bound: f64) -> Option<RatPoly> {
    let mut acc = vec![Complex64::new(scale, 0.0)];
    for &i in subset {
        let mut next = vec![Complex64::zero(); acc.len() + 1];
        for (j, a) in acc.iter().enumerate() {
            next[j + 1] += a;
            next[j] -= a * roots[i];
        }
        acc = next;
    }
    let mut ints = Vec::with_capacity(acc.len());
    for c in acc {
        let r = c.re.round();
        if r.abs() > bound || (c.re - r).abs() > 1e-4 * (1.0 + r.abs()) || c.im.abs() > 1e-4 * (1.0 + r.abs()) {
            return None;
        }
        ints.push(BigInt::from(r.to_i64()?));
    }
    Some(RatPoly::from_bigints(&ints))
}

/// A proper factor of smallest degree among `degrees`, or `None` if there is none.
fn smallest_factor(p: &RatPoly, degrees: &BTreeSet<usize>) -> Option<RatPoly> {
    let roots = approx_roots(p);
    let classes = conjugate_classes(&roots);
    let lead = p.lead().to_integer();
    let lead_divs = divisors(&lead);
    // Allowed degrees are closed under k ↦ n − k, so the lower half suffices.
    for &k in degrees.iter().filter(|&&k| 2 * k <= p.deg()) {
        let bound = mignotte_bound(p, k) * lead.abs().to_f64().unwrap_or(f64::MAX);
        let found = search_subsets(&classes, k, 0, &mut Vec::new(), &mut |subset| {
            lead_divs.iter().find_map(|d| {
                let cand = rounded_factor(&roots, subset, d.to_f64()?, bound)?;
                p.exact_div(&cand).map(|_| cand.primitive())
            })
        });
        if found.is_some() {
            return found;
        }
    }
    None
}

/// Proof of irreducibility, or a proper factor.
pub fn irreducibility(p: &RatPoly) -> Result<std::result::Result<IrreducibilityProof, RatPoly>> {
    let n = p.deg();
    if p.is_zero() || n == 0 {
        return Err(Error::Precondition("irreducibility of a constant".into()));
    }
    if n == 1 {
        return Ok(Ok(IrreducibilityProof::Linear));
    }
    if n > MAX_FACTOR_DEGREE {
        return Err(Error::Precondition(format!("factorization limited to degree {MAX_FACTOR_DEGREE}")));
    }
    let p = p.primitive();
    if p.gcd(&p.derivative()).deg() > 0 {
        let sq = squarefree_decomposition(&p);
        return Ok(Err(sq[0].0.clone()));
    }
    let (allowed, primes) = sieve_degrees(&p, 100);
    if allowed.is_empty() {
        return Ok(Ok(IrreducibilityProof::DegreePattern(primes)));
    }
    match smallest_factor(&p, &allowed) {
        Some(f) => Ok(Err(f)),
        None => Ok(Ok(IrreducibilityProof::FactorSearch(allowed.into_iter().collect()))),
    }
}

pub fn is_irreducible(p: &RatPoly) -> Result<bool> {
    Ok(irreducibility(p)?.is_ok())
}

/// Complete factorization into primitive irreducibles over ℚ.
pub fn factor(p: &RatPoly) -> Result<Factorization> {
    if p.is_zero() {
        return Err(Error::Precondition("factorization of zero".into()));
    }
    let prim = p.primitive();
    let content = p.lead() / prim.lead();
    let mut factors = Vec::new();
    for (s, m) in squarefree_decomposition(&prim) {
        let mut stack = vec![s];
        while let Some(f) = stack.pop() {
            match irreducibility(&f)? {
                Ok(_) => factors.push((f, m)),
                Err(g) => {
                    let q = f.exact_div(&g).expect("factor divides").primitive();
                    stack.push(g);
                    stack.push(q);
                }
            }
        }
    }
    factors.sort_by(|a, b| (a.0.deg(), a.0.coeffs()).cmp(&(b.0.deg(), b.0.coeffs())));
    Ok(Factorization { content, factors })
}

fn mobius(mut n: usize) -> i32 {
    let mut mu = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            mu = -mu;
        }
        p += 1;
    }
    if n > 1 {
        mu = -mu;
    }
    mu
}

/// The k-th cyclotomic polynomial, `∏_{d | k} (x^d − 1)^{μ(k/d)}`.
pub fn cyclotomic(k: usize) -> RatPoly {
    assert!(k >= 1, "cyclotomic index starts at 1");
    let divisors: Vec<usize> = (1..=k).filter(|d| k.is_multiple_of(*d)).collect();
    let xd = |d: usize| RatPoly::monomial(Rational::one(), d).sub(&RatPoly::one());
    let num = divisors.iter().filter(|&&d| mobius(k / d) == 1).fold(RatPoly::one(), |acc, &d| acc.mul(&xd(d)));
    divisors.iter().filter(|&&d| mobius(k / d) == -1).fold(num, |acc, &d| acc.exact_div(&xd(d)).expect("cyclotomic divisibility"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> RatPoly {
        RatPoly::from_ints(cs)
    }

    #[test]
    fn chi2_factorization() {
        // x^13 - x^11 - x^10 - x^9 + x^4 + x^3 + x^2 - 1
        let chi = p(&[-1, 0, 1, 1, 1, 0, 0, 0, 0, -1, -1, -1, 0, 1]);
        let f = factor(&chi).unwrap();
        assert_eq!(f.expand(), chi);
        let salem = p(&[1, -1, 0, -1, 1, -1, 0, -1, 1]);
        assert!(f.factors.contains(&(salem, 1)));
        assert!(f.factors.contains(&(p(&[1, 1]), 2)));
        assert!(f.factors.contains(&(p(&[1, 0, 1]), 1)));
    }

    #[test]
    fn irreducibility_examples() {
        assert!(is_irreducible(&p(&[1, 1, 0, -2, 0, 1, 1])).unwrap());
        assert!(!is_irreducible(&p(&[-1, 0, 0, 0, 1])).unwrap());
        // x^4 + 1 is irreducible over Q but reducible mod every prime.
        let r = irreducibility(&p(&[1, 0, 0, 0, 1])).unwrap();
        assert!(matches!(r, Ok(IrreducibilityProof::FactorSearch(_))));
    }

    #[test]
    fn non_monic_factor() {
        // (2x - 1)(3x^2 + 1)
        let f = factor(&p(&[-1, 2, -3, 6])).unwrap();
        assert_eq!(f.factors.len(), 2);
        assert_eq!(f.expand(), p(&[-1, 2, -3, 6]));
    }

    #[test]
    fn cyclotomics() {
        assert_eq!(cyclotomic(1), p(&[-1, 1]));
        assert_eq!(cyclotomic(4), p(&[1, 0, 1]));
        assert_eq!(cyclotomic(6), p(&[1, -1, 1]));
        assert_eq!(cyclotomic(12), p(&[1, 0, -1, 0, 1]));
    }
}
