//! Schur–Cohn (Marden) counts of roots inside the unit disk.

use num_traits::{Signed, Zero};

use super::poly::RatPoly;
use super::Rational;
use crate::error::{Error, Result};

/// Marden's recursion on a nominal-degree coefficient vector. `Err(k)` when the k-th
/// reduction has vanishing constant term.
fn marden(coeffs: &[Rational]) -> std::result::Result<usize, usize> {
    let mut f = coeffs.to_vec();
    let mut inside = 0;
    let mut positive = true;
    for k in 1..coeffs.len() {
        let m = f.len() - 1;
        let (a0, am) = (f[0].clone(), f[m].clone());
        let next: Vec<Rational> = (0..m).map(|i| &a0 * &f[i] - &am * &f[m - i]).collect();
        let delta = &next[0];
        if delta.is_zero() {
            return Err(k);
        }
        if delta.is_negative() {
            positive = !positive;
        }
        if !positive {
            inside += 1;
        }
        f = next;
    }
    Ok(inside)
}

/// Sign of `p` at `+∞` or `−∞`.
fn sign_at_infinity(p: &RatPoly, positive: bool) -> i32 {
    let s = if p.lead().is_positive() { 1 } else { -1 };
    if positive || p.deg().is_multiple_of(2) {
        s
    } else {
        -s
    }
}

/// Cauchy index of `num/den` over the whole real line, from the signed remainder chain.
fn cauchy_index(num: &RatPoly, den: &RatPoly) -> i64 {
    if num.is_zero() {
        return 0;
    }
    let mut chain = vec![den.clone(), num.clone()];
    loop {
        let r = chain[chain.len() - 2].div_rem(&chain[chain.len() - 1]).1;
        if r.is_zero() {
            break;
        }
        chain.push(r.neg());
    }
    let variations = |positive: bool| {
        let s: Vec<i32> = chain.iter().map(|f| sign_at_infinity(f, positive)).collect();
        s.windows(2).filter(|w| w[0] != w[1]).count() as i64
    };
    variations(false) - variations(true)
}

/// Roots inside the disk via `w = (z − 1)/(z + 1)` and the argument of `q(iy)` along the
/// imaginary axis. Remainder chains have no singular cases, so this only needs `q` free of
/// roots `w, −w̄`, i.e. `p` coprime to its reversal.
fn half_plane_inside(p: &RatPoly) -> Result<usize> {
    let n = p.deg();
    let (plus, minus) = (RatPoly::from_ints(&[1, 1]), RatPoly::from_ints(&[1, -1]));
    let mut q = RatPoly::zero();
    for k in 0..=n {
        let term = plus.pow(k as u32).mul(&minus.pow((n - k) as u32)).scale(&p.coeff(k));
        q = q.add(&term);
    }
    // q(iy) = A(y) + i·B(y).
    let (mut a, mut b) = (vec![Rational::zero(); q.deg() + 1], vec![Rational::zero(); q.deg() + 1]);
    for (k, c) in q.coeffs().iter().enumerate() {
        match k % 4 {
            0 => a[k] = c.clone(),
            1 => b[k] = c.clone(),
            2 => a[k] = -c.clone(),
            _ => b[k] = -c.clone(),
        }
    }
    let (a, b) = (RatPoly::new(a), RatPoly::new(b));
    if a.is_zero() || b.is_zero() || a.gcd(&b).deg() > 0 {
        return Err(Error::UnitCircle(0));
    }
    let mut left_minus_right = -cauchy_index(&b, &a);
    if b.deg() > a.deg() {
        // B/A runs off to ±∞ at both ends; the argument picks up the difference.
        let s = sign_at_infinity(&b, true) * sign_at_infinity(&a, true);
        let t = sign_at_infinity(&b, false) * sign_at_infinity(&a, false);
        left_minus_right += i64::from((s - t) / 2);
    }
    Ok(((q.deg() as i64 + left_minus_right) / 2) as usize)
}

/// Roots of `p` strictly inside the unit disk, with multiplicity.
///
/// Marden's recursion runs first. A singular step falls back to a half-plane count along the
/// imaginary axis after a Möbius change of variable. If `p` shares a root with its reversal
/// (a root on the circle or a pair `ν, 1/ν`) neither count applies and `Error::UnitCircle`
/// reports the failing step.
pub fn schur_cohn_inside(p: &RatPoly) -> Result<usize> {
    if p.is_zero() || p.coeff(0).is_zero() {
        return Err(Error::Precondition("Schur–Cohn needs p(0) ≠ 0".into()));
    }
    let first = match marden(p.coeffs()) {
        Ok(n) => return Ok(n),
        Err(k) => k,
    };
    let rev = p.reverse(p.deg());
    if p.gcd(&rev).deg() > 0 {
        return Err(Error::UnitCircle(first));
    }
    half_plane_inside(p).map_err(|_| Error::UnitCircle(first))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(schur_cohn_inside(&RatPoly::from_ints(&[-1, -1, 1])).unwrap(), 1);
        assert_eq!(schur_cohn_inside(&RatPoly::from_ints(&[-1, 0, -1, 1])).unwrap(), 2);
        assert_eq!(schur_cohn_inside(&RatPoly::from_ints(&[-2, 1])).unwrap(), 0);
        assert_eq!(schur_cohn_inside(&RatPoly::from_ints(&[-1, 2])).unwrap(), 1);
    }

    #[test]
    fn singular_steps_fall_back() {
        // x⁴ − x² − 1 has |a₀| = |a₄| and roots ±1.272…, ±0.786…i.
        let p = RatPoly::from_ints(&[-1, 0, -1, 0, 1]);
        assert!(marden(p.coeffs()).is_err());
        assert_eq!(schur_cohn_inside(&p).unwrap(), 2);
        assert_eq!(half_plane_inside(&RatPoly::from_ints(&[-1, 0, -1, 1])).unwrap(), 2);
        assert_eq!(half_plane_inside(&RatPoly::from_ints(&[-4, -4, -4, 1])).unwrap(), 2);
    }

    #[test]
    fn circle_roots_are_reported() {
        assert!(matches!(schur_cohn_inside(&RatPoly::from_ints(&[1, 0, 1])), Err(Error::UnitCircle(_))));
        assert!(schur_cohn_inside(&RatPoly::from_ints(&[0, 1])).is_err());
    }
}
