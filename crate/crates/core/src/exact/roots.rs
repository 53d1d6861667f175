//! Complex root approximation (Aberth–Ehrlich) and exact inclusion disks.

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_traits::{One, Zero};

use super::poly::RatPoly;
use super::rational::{from_f64, int, sqrt_bounds, to_f64};
use super::Rational;
use crate::error::{Error, Result};

pub type GaussRat = Complex<Rational>;

fn horner_c(cs: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::zero();
    let mut dp = Complex64::zero();
    for &c in cs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// All complex roots of a squarefree polynomial, as `f64` approximations.
pub fn approx_roots(p: &RatPoly) -> Vec<Complex64> {
    let n = p.deg();
    if n == 0 {
        return Vec::new();
    }
    let lead = to_f64(&p.lead());
    let cs: Vec<f64> = p.to_f64_coeffs().iter().map(|c| c / lead).collect();
    let radius = 1.0 + cs[..n].iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let start = radius.min(2.0 * cs[..n].iter().map(|c| c.abs()).fold(0.0, f64::max).powf(1.0 / n as f64).max(0.5));
    let mut z: Vec<Complex64> = (0..n).map(|k| Complex64::from_polar(start, 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64)).collect();
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (pv, dv) = horner_c(&cs, z[i]);
            if pv.norm() == 0.0 {
                continue;
            }
            let ratio = pv / dv;
            let s: Complex64 = (0..n).filter(|&j| j != i).map(|j| Complex64::one() / (z[i] - z[j])).sum();
            let w = ratio / (Complex64::one() - ratio * s);
            z[i] -= w;
            moved = moved.max(w.norm() / z[i].norm().max(1.0));
        }
        if moved < 1e-15 {
            break;
        }
    }
    // Newton polish on the original coefficients.
    for zi in z.iter_mut() {
        for _ in 0..3 {
            let (pv, dv) = horner_c(&cs, *zi);
            if dv.norm() > 0.0 {
                *zi -= pv / dv;
            }
        }
    }
    z
}

/// A disk guaranteed to contain at least one root: `center` with radius below `radius`.
#[derive(Clone, Debug)]
pub struct RootDisk {
    pub center: GaussRat,
    pub radius: Rational,
}

impl RootDisk {
    pub fn approx(&self) -> Complex64 {
        Complex64::new(to_f64(&self.center.re), to_f64(&self.center.im))
    }

    /// Rational bounds `lo ≤ |z| ≤ hi` for every `z` in the disk.
    pub fn modulus_bounds(&self) -> (Rational, Rational) {
        let m2 = &self.center.re * &self.center.re + &self.center.im * &self.center.im;
        let tol = (&self.radius / int(8)).max(Rational::new(BigInt::one(), BigInt::from(10u64).pow(40)));
        let (lo, hi) = sqrt_bounds(&m2, &tol);
        let lo = (lo - &self.radius).max(Rational::zero());
        (lo, hi + &self.radius)
    }

    /// True when every point of the disk has positive imaginary part.
    pub fn in_upper_half(&self) -> bool {
        self.center.im > self.radius
    }

    pub fn in_lower_half(&self) -> bool {
        -self.center.im.clone() > self.radius
    }
}

fn eval_gauss(p: &RatPoly, z: &GaussRat) -> GaussRat {
    p.coeffs().iter().rev().fold(GaussRat::zero(), |acc, c| acc * z.clone() + GaussRat::new(c.clone(), Rational::zero()))
}

fn to_gauss(z: Complex64) -> GaussRat {
    GaussRat::new(from_f64(z.re), from_f64(z.im))
}

fn norm_sq(z: &GaussRat) -> Rational {
    &z.re * &z.re + &z.im * &z.im
}

/// Pairwise-disjoint inclusion disks, one per root of the squarefree `p`.
///
/// Each disk `|w − z| ≤ n·|p(z)/p'(z)|` contains a root; `n` disjoint such disks therefore
/// contain exactly one root each. Radii are rational upper bounds of the exact value.
pub fn certified_roots(p: &RatPoly) -> Result<Vec<RootDisk>> {
    let n = p.deg();
    if p.gcd(&p.derivative()).deg() > 0 {
        return Err(Error::Precondition("root disks need a squarefree polynomial".into()));
    }
    let dp = p.derivative();
    let approx = approx_roots(p);
    let floor = Rational::new(BigInt::one(), BigInt::from(10u64).pow(60));
    let disks: Vec<RootDisk> = approx
        .into_iter()
        .map(|z| {
            let c = to_gauss(z);
            let pv = eval_gauss(p, &c);
            let dv = eval_gauss(&dp, &c);
            let d2 = norm_sq(&dv);
            if d2.is_zero() {
                return Err(Error::Numerical("vanishing derivative at a root approximation".into()));
            }
            let r2 = int((n * n) as i64) * norm_sq(&pv) / d2;
            // Only an upper bound is needed, so a relative tolerance suffices.
            let tol = from_f64(to_f64(&r2).sqrt() * 1e-6).max(floor.clone());
            let (_, hi) = sqrt_bounds(&r2, &tol);
            Ok(RootDisk { center: c, radius: hi + &floor })
        })
        .collect::<Result<_>>()?;
    for i in 0..n {
        for j in i + 1..n {
            let diff = disks[i].center.clone() - disks[j].center.clone();
            let sum = &disks[i].radius + &disks[j].radius;
            if norm_sq(&diff) <= &sum * &sum {
                return Err(Error::Numerical(format!("root disks {i} and {j} overlap")));
            }
        }
    }
    Ok(disks)
}
