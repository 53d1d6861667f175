//! The parameter pair `(a, c)` satisfying `ℓa² + (ℓ+1)ac + ℓc² = 0`.

use super::quad::QuadExt;
use super::rational::rat;
use crate::error::{Error, Result};

/// `δ_ℓ = −3ℓ² + 2ℓ + 1`, the discriminant of `ℓα² + (ℓ+1)α + ℓ`.
pub fn delta(ell: i64) -> i64 {
    -3 * ell * ell + 2 * ell + 1
}

/// Writes `n = s²·d` with `d` squarefree (sign kept in `d`).
pub fn squarefree_split(n: i64) -> (i64, i64) {
    let sign = n.signum();
    let mut m = n.abs();
    let (mut s, mut d) = (1i64, 1i64);
    let mut p = 2;
    while p * p <= m {
        while m % (p * p) == 0 {
            m /= p * p;
            s *= p;
        }
        if m % p == 0 {
            m /= p;
            d *= p;
        }
        p += 1;
    }
    (s, sign * d * m)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EllParams {
    pub ell: i64,
    pub a: QuadExt,
    pub c: QuadExt,
    pub disc: i64,
}

impl EllParams {
    /// `ℓa² + (ℓ+1)ac + ℓc²` evaluated exactly.
    pub fn residual(&self) -> QuadExt {
        ell_relation(self.ell, &self.a, &self.c)
    }
}

pub fn ell_relation(ell: i64, a: &QuadExt, c: &QuadExt) -> QuadExt {
    let l = QuadExt::from_int(ell);
    let l1 = QuadExt::from_int(ell + 1);
    &l * &(a * a) + &l1 * &(a * c) + &l * &(c * c)
}

/// `c = 1` and `a = (−(ℓ+1) + √δ_ℓ)/(2ℓ)` in `ℚ(√d)`, `d` the squarefree part of `δ_ℓ`.
pub fn quad_field_for_ell(ell: i64) -> Result<EllParams> {
    if ell == 1 {
        return Err(Error::InvalidParameter(
            "ell = 1: δ = 0, so the relation collapses to (a + c)² = 0 and a/c = −1 is real; no imaginary quadratic field arises".into(),
        ));
    }
    if ell < 1 {
        return Err(Error::InvalidParameter(format!("ell = {ell}: the orbit length 4ℓ must be positive")));
    }
    let dl = delta(ell);
    let (s, d) = squarefree_split(dl);
    let a = QuadExt::new(rat(-(ell + 1), 2 * ell), rat(s, 2 * ell), d);
    let c = QuadExt::from_int(1);
    Ok(EllParams { ell, a, c, disc: d })
}
