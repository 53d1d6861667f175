//! Small conveniences on top of `num_rational::BigRational`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn to_f64(q: &Rational) -> f64 {
    // Scale down huge operands so the division stays in range.
    let (n, d) = (q.numer(), q.denom());
    match (n.to_f64(), d.to_f64()) {
        (Some(a), Some(b)) if a.is_finite() && b.is_finite() => a / b,
        _ => {
            let shift = n.bits().max(d.bits()).saturating_sub(1000);
            let a = (n >> shift).to_f64().unwrap_or(f64::NAN);
            let b = (d >> shift).to_f64().unwrap_or(f64::NAN);
            a / b
        }
    }
}

/// Exact rational nearest-below approximation of an `f64` (dyadic, exact).
pub fn from_f64(x: f64) -> Rational {
    Rational::from_float(x).expect("finite float")
}

/// Returns `(lo, hi)` rationals with `lo² ≤ q ≤ hi²`, `0 ≤ lo ≤ hi`, and
/// `hi - lo ≤ tol`. `q` must be non-negative.
pub fn sqrt_bounds(q: &Rational, tol: &Rational) -> (Rational, Rational) {
    assert!(!q.is_negative(), "sqrt of negative rational");
    if q.is_zero() {
        return (Rational::zero(), Rational::zero());
    }
    let g = to_f64(q).sqrt();
    // Start from a relative bracket around the float guess and widen geometrically if it misses.
    let mut lo = from_f64(g * (1.0 - 1e-12));
    let mut hi = from_f64(g * (1.0 + 1e-12));
    let mut step = from_f64(g * 1e-12).max(tol.clone() / int(4));
    while &lo * &lo > *q {
        lo -= &step;
        step *= int(2);
        if lo.is_negative() {
            lo = Rational::zero();
        }
    }
    let mut step = from_f64(g * 1e-12).max(tol.clone() / int(4));
    while &hi * &hi < *q {
        hi += &step;
        step *= int(2);
    }
    // Bisect until the bracket is tight enough.
    while &hi - &lo > *tol {
        let mid = (&lo + &hi) / int(2);
        if &mid * &mid <= *q {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo, hi)
}

/// True when the rational is an integer.
pub fn is_integral(q: &Rational) -> bool {
    q.denom().is_one()
}

/// Least common multiple of denominators.
pub fn common_denominator<'a, I: IntoIterator<Item = &'a Rational>>(qs: I) -> BigInt {
    qs.into_iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}
