//! Sturm sequences: exact counts of distinct real roots in open intervals.

use num_traits::{Signed, Zero};

use super::poly::RatPoly;
use super::rational::int;
use super::Rational;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct SturmChain {
    chain: Vec<RatPoly>,
}

fn sign(q: &Rational) -> i32 {
    if q.is_positive() {
        1
    } else if q.is_negative() {
        -1
    } else {
        0
    }
}

fn variations(signs: impl Iterator<Item = i32>) -> usize {
    let mut last = 0;
    let mut count = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

impl SturmChain {
    /// Chain of a nonzero polynomial; it need not be squarefree, distinct roots are counted.
    pub fn new(p: &RatPoly) -> Self {
        let mut chain = vec![p.clone()];
        let mut next = p.derivative();
        while !next.is_zero() {
            let r = chain.last().unwrap().div_rem(&next).1.neg();
            chain.push(next);
            next = r;
        }
        SturmChain { chain }
    }

    pub fn len(&self) -> usize {
        self.chain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chain.is_empty()
    }

    pub fn poly(&self) -> &RatPoly {
        &self.chain[0]
    }

    pub fn variations_at(&self, x: &Rational) -> usize {
        variations(self.chain.iter().map(|q| sign(&q.eval(x))))
    }

    fn variations_at_infinity(&self, positive: bool) -> usize {
        variations(self.chain.iter().map(|q| {
            let s = sign(&q.lead());
            if positive || q.deg() % 2 == 0 {
                s
            } else {
                -s
            }
        }))
    }

    /// Distinct roots in the open interval `(lo, hi)`; endpoints must not be roots.
    pub fn count(&self, lo: &Rational, hi: &Rational) -> Result<usize> {
        if lo >= hi {
            return Err(Error::Precondition(format!("empty interval ({lo}, {hi})")));
        }
        for e in [lo, hi] {
            if self.poly().eval(e).is_zero() {
                return Err(Error::RootAtEndpoint(e.to_string()));
            }
        }
        Ok(self.variations_at(lo) - self.variations_at(hi))
    }

    /// Distinct roots in `(lo, ∞)`.
    pub fn count_above(&self, lo: &Rational) -> Result<usize> {
        if self.poly().eval(lo).is_zero() {
            return Err(Error::RootAtEndpoint(lo.to_string()));
        }
        Ok(self.variations_at(lo) - self.variations_at_infinity(true))
    }

    /// Distinct real roots.
    pub fn count_all(&self) -> usize {
        self.variations_at_infinity(false) - self.variations_at_infinity(true)
    }
}

/// Number of distinct real roots of `p` in `(lo, hi)`.
pub fn sturm_count(p: &RatPoly, lo: &Rational, hi: &Rational) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::Precondition("zero polynomial".into()));
    }
    SturmChain::new(p).count(lo, hi)
}

/// Isolating intervals `(lo, hi)` with rational endpoints, one per distinct real root, in
/// increasing order. Endpoints are never roots; a root may also be returned as a degenerate
/// interval `(r, r)` when it is hit exactly by bisection.
pub fn isolate_real_roots(p: &RatPoly) -> Vec<(Rational, Rational)> {
    let sq = p.squarefree_part();
    if sq.deg() == 0 {
        return Vec::new();
    }
    let chain = SturmChain::new(&sq);
    let b = sq.root_bound();
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b)];
    while let Some((lo, hi)) = stack.pop() {
        let n = chain.variations_at(&lo) - chain.variations_at(&hi);
        match n {
            0 => {}
            1 => out.push((lo, hi)),
            _ => {
                let mid = (&lo + &hi) / int(2);
                if sq.eval(&mid).is_zero() {
                    out.push((mid.clone(), mid.clone()));
                    let (l2, h2) = punctured(&sq, &chain, &mid, &(&hi - &lo));
                    stack.push((lo, l2));
                    stack.push((h2, hi));
                } else {
                    stack.push((lo, mid.clone()));
                    stack.push((mid, hi));
                }
            }
        }
    }
    out.sort();
    out
}

/// Non-root endpoints `mid ∓ e` enclosing `mid` as the only root between them.
fn punctured(p: &RatPoly, chain: &SturmChain, mid: &Rational, width: &Rational) -> (Rational, Rational) {
    let mut e = width / int(4);
    loop {
        let (a, b) = (mid - &e, mid + &e);
        if !p.eval(&a).is_zero() && !p.eval(&b).is_zero() && chain.variations_at(&a) - chain.variations_at(&b) == 1 {
            return (a, b);
        }
        e /= int(2);
    }
}

/// Shrink an isolating interval of a squarefree `p` until its width is below `eps`.
pub fn refine(p: &RatPoly, lo: &Rational, hi: &Rational, eps: &Rational) -> (Rational, Rational) {
    let (mut lo, mut hi) = (lo.clone(), hi.clone());
    let mut slo = p.sign_at(&lo);
    while &hi - &lo >= *eps {
        let mid = (&lo + &hi) / int(2);
        let sm = p.sign_at(&mid);
        if sm == 0 {
            return (mid.clone(), mid);
        }
        if sm == slo {
            lo = mid;
            slo = sm;
        } else {
            hi = mid;
        }
    }
    (lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;

    #[test]
    fn counts() {
        let p = RatPoly::from_ints(&[-2, 0, 1]);
        assert_eq!(sturm_count(&p, &int(0), &int(2)).unwrap(), 1);
        assert_eq!(sturm_count(&p, &int(-2), &int(2)).unwrap(), 2);
        assert!(matches!(sturm_count(&RatPoly::from_ints(&[-4, 0, 1]), &int(0), &int(2)), Err(Error::RootAtEndpoint(_))));
        let t = RatPoly::from_ints(&[-1, 0, -1, 1]);
        assert_eq!(sturm_count(&t, &int(1), &int(2)).unwrap(), 1);
        let theta = RatPoly::from_ints(&[-4, -3, 1, 1]);
        assert_eq!(sturm_count(&theta, &int(-2), &int(2)).unwrap(), 1);
        assert_eq!(SturmChain::new(&theta).count_all(), 1);
    }

    #[test]
    fn isolation_and_refinement() {
        // (x-1)(x-2)(x+3)
        let p = RatPoly::from_ints(&[6, -7, 0, 1]);
        let iv = isolate_real_roots(&p);
        assert_eq!(iv.len(), 3);
        let golden = RatPoly::from_ints(&[-1, -1, 1]);
        let iv = isolate_real_roots(&golden);
        let (lo, hi) = refine(&golden, &iv[1].0, &iv[1].1, &rat(1, 1_000_000));
        assert!(lo <= rat(1618034, 1_000_000) && hi >= rat(1618033, 1_000_000));
    }
}
