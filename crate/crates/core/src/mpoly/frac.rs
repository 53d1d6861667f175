//! Rational functions `num / den` in affine coordinates, kept unreduced until compared.

use super::gcd::gcd;
use super::poly::MultiPoly;
use crate::exact::QuadExt;

#[derive(Clone, Debug)]
pub struct Frac {
    pub num: MultiPoly,
    pub den: MultiPoly,
}

impl Frac {
    /// Panics on a zero denominator.
    pub fn new(num: MultiPoly, den: MultiPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        Frac { num, den }
    }

    pub fn poly(p: MultiPoly) -> Self {
        let n = p.nvars();
        Frac { num: p, den: MultiPoly::one(n) }
    }

    pub fn constant(nvars: usize, c: QuadExt) -> Self {
        Frac::poly(MultiPoly::constant(nvars, c))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Frac::poly(MultiPoly::var(nvars, i))
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, rhs: &Frac) -> Frac {
        if self.den == rhs.den {
            return Frac::new(self.num.add(&rhs.num), self.den.clone());
        }
        Frac::new(self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)), self.den.mul(&rhs.den))
    }

    pub fn sub(&self, rhs: &Frac) -> Frac {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Frac {
        Frac::new(self.num.neg(), self.den.clone())
    }

    pub fn mul(&self, rhs: &Frac) -> Frac {
        Frac::new(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }

    /// Panics when `rhs` is zero.
    pub fn div(&self, rhs: &Frac) -> Frac {
        Frac::new(self.num.mul(&rhs.den), self.den.mul(&rhs.num))
    }

    pub fn inv(&self) -> Frac {
        Frac::new(self.den.clone(), self.num.clone())
    }

    pub fn derivative(&self, v: usize) -> Frac {
        let top = self.num.derivative(v).mul(&self.den).sub(&self.num.mul(&self.den.derivative(v)));
        Frac::new(top, self.den.mul(&self.den))
    }

    /// Cancel the common factor of numerator and denominator, leaving a monic denominator.
    pub fn reduced(&self) -> Frac {
        let g = gcd(&self.num, &self.den);
        let (num, den) = if g.is_constant() {
            (self.num.clone(), self.den.clone())
        } else {
            (self.num.exact_div(&g).expect("gcd divides"), self.den.exact_div(&g).expect("gcd divides"))
        };
        let lead = den.leading().map(|(_, c)| c.clone()).expect("nonzero denominator");
        let inv = crate::exact::Field::inv(&lead);
        Frac { num: num.scale(&inv), den: den.scale(&inv) }
    }

    /// Equality as rational functions, by cross-multiplication.
    pub fn same_as(&self, rhs: &Frac) -> bool {
        self.num.mul(&rhs.den) == rhs.num.mul(&self.den)
    }

    /// `None` when the denominator vanishes at `x`.
    pub fn eval(&self, x: &[QuadExt]) -> Option<QuadExt> {
        let d = self.den.eval(x);
        if num_traits::Zero::is_zero(&d) {
            return None;
        }
        Some(self.num.eval(x) / &d)
    }

    /// Substitute rational functions for the variables.
    pub fn substitute(&self, subs: &[Frac]) -> Frac {
        substitute_poly(&self.num, subs).div(&substitute_poly(&self.den, subs))
    }
}

/// `p(subs)` as a single fraction over the product of the denominators' powers.
pub fn substitute_poly(p: &MultiPoly, subs: &[Frac]) -> Frac {
    let n = subs.first().map_or(p.nvars(), Frac::nvars);
    let mut acc = Frac::constant(n, QuadExt::from_int(0));
    for (m, c) in p.terms() {
        let mut t = Frac::constant(n, c.clone());
        for (v, s) in subs.iter().enumerate() {
            for _ in 0..m.0[v] {
                t = t.mul(s);
            }
        }
        acc = acc.add(&t);
    }
    acc
}

/// Determinant of a square matrix of fractions by cofactor expansion along the first row.
pub fn det(m: &[Vec<Frac>]) -> Frac {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let nv = m[0][0].nvars();
    let mut total = Frac::constant(nv, QuadExt::from_int(0));
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Frac>> = m[1..].iter().map(|row| row.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, x)| x.clone()).collect()).collect();
        let term = m[0][j].mul(&det(&minor));
        total = if j % 2 == 0 { total.add(&term) } else { total.sub(&term) };
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quotient_rule() {
        // d/dx (1/x) = -1/x^2
        let x = Frac::var(2, 0);
        let d = x.inv().derivative(0);
        let expect = Frac::new(MultiPoly::constant(2, QuadExt::from_int(-1)), MultiPoly::var(2, 0).pow(2));
        assert!(d.same_as(&expect));
    }

    #[test]
    fn reduced_cancels() {
        let x = MultiPoly::var(2, 0);
        let y = MultiPoly::var(2, 1);
        let f = Frac::new(x.mul(&y).scale(&QuadExt::from_int(2)), y.mul(&y).scale(&QuadExt::from_int(4)));
        let r = f.reduced();
        assert_eq!(r.den, y);
        assert_eq!(r.num, x.scale(&QuadExt::rational(crate::exact::rational::rat(1, 2))));
    }
}
