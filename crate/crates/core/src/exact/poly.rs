//! Dense univariate polynomials over an exact field, lowest degree first.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::{common_denominator, int};
use super::{Field, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UniPoly<F> {
    coeffs: Vec<F>,
}

pub type RatPoly = UniPoly<Rational>;

impl<F: Field> UniPoly<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    pub fn constant(c: F) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::monomial(F::one(), 1)
    }

    pub fn monomial(c: F, k: usize) -> Self {
        let mut v = vec![F::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    /// `x − r`.
    pub fn linear_root(r: &F) -> Self {
        Self::new(vec![-r.clone(), F::one()])
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> F {
        self.coeffs.get(k).cloned().unwrap_or_else(F::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with `deg 0 = 0`, convenient where zero cannot occur.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lead(&self) -> F {
        self.coeffs.last().cloned().unwrap_or_else(F::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn eval(&self, x: &F) -> F {
        self.coeffs.iter().rev().fold(F::zero(), |acc, c| acc * x + c)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) + &rhs.coeff(k)).collect())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) - &rhs.coeff(k)).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![F::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + &(a.clone() * b);
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.deg();
        let inv_lead = d.lead().inv();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![F::zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = rem[k].clone() * &inv_lead;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[k - dd + j] = rem[k - dd + j].clone() - &(c.clone() * dc);
            }
            quot[k - dd] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    /// Exact quotient when `d` divides `self`.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(&self.lead().inv())
    }

    /// Monic gcd (zero only when both inputs are zero).
    pub fn gcd(&self, rhs: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), rhs.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c.clone() * &F::from_i64(k as i64)).collect())
    }

    /// `self / gcd(self, self')`, monic.
    pub fn squarefree_part(&self) -> Self {
        if self.deg() == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    /// `self(inner(x))`.
    pub fn compose(&self, inner: &Self) -> Self {
        self.coeffs.iter().rev().fold(Self::zero(), |acc, c| acc.mul(inner).add(&Self::constant(c.clone())))
    }

    /// `x^n · self(1/x)` for `n ≥ deg`.
    pub fn reverse(&self, n: usize) -> Self {
        assert!(self.coeffs.len() <= n + 1);
        let mut v = vec![F::zero(); n + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            v[n - k] = c.clone();
        }
        Self::new(v)
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> UniPoly<G> {
        UniPoly::new(self.coeffs.iter().map(f).collect())
    }

    /// Resultant via the Euclidean algorithm over the field.
    pub fn resultant(&self, rhs: &Self) -> F {
        if self.is_zero() || rhs.is_zero() {
            return F::zero();
        }
        let (mut a, mut b) = (self.clone(), rhs.clone());
        let mut acc = F::one();
        loop {
            let (da, db) = (a.deg(), b.deg());
            if db == 0 {
                return acc * &b.lead().pow_u(da as u64);
            }
            let r = a.div_rem(&b).1;
            if r.is_zero() {
                return F::zero();
            }
            // res(a, b) = (-1)^{da·db} · lc(b)^{da − dr} · res(b, r)
            let dr = r.deg();
            if da % 2 == 1 && db % 2 == 1 {
                acc = -acc;
            }
            acc = acc * &b.lead().pow_u((da - dr) as u64);
            a = b;
            b = r;
        }
    }
}

impl RatPoly {
    pub fn from_ints(cs: &[i64]) -> Self {
        Self::new(cs.iter().map(|&c| int(c)).collect())
    }

    pub fn from_bigints(cs: &[BigInt]) -> Self {
        Self::new(cs.iter().map(|c| Rational::from_integer(c.clone())).collect())
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Integer coefficients; `None` if some coefficient is fractional.
    pub fn to_bigints(&self) -> Option<Vec<BigInt>> {
        self.coeffs.iter().map(|c| c.is_integer().then(|| c.to_integer())).collect()
    }

    /// Primitive integer polynomial with positive leading coefficient, same roots.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let den = common_denominator(self.coeffs.iter());
        let scaled: Vec<BigInt> = self.coeffs.iter().map(|c| (c * Rational::from_integer(den.clone())).to_integer()).collect();
        let g = scaled.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let mut out: Vec<BigInt> = scaled.into_iter().map(|c| c / &g).collect();
        if out.last().is_some_and(|c| c.is_negative()) {
            out.iter_mut().for_each(|c| *c = -c.clone());
        }
        Self::from_bigints(&out)
    }

    /// Sign of the polynomial at a rational point.
    pub fn sign_at(&self, x: &Rational) -> i32 {
        let v = self.eval(x);
        if v.is_positive() {
            1
        } else if v.is_negative() {
            -1
        } else {
            0
        }
    }

    /// Cauchy bound: every real root lies in `(-b, b)`.
    pub fn root_bound(&self) -> Rational {
        let lead = self.lead().abs();
        let m = self.coeffs[..self.coeffs.len().saturating_sub(1)].iter().map(|c| c.abs() / &lead).max().unwrap_or_else(Rational::zero);
        m + Rational::one() + Rational::one()
    }

    /// Rational roots of an integer-coefficient polynomial (rational-root test).
    pub fn rational_roots(&self) -> Vec<Rational> {
        let p = self.primitive();
        if p.is_zero() {
            return Vec::new();
        }
        let mut roots = Vec::new();
        let mut p = p;
        // Strip the root 0.
        if p.coeff(0).is_zero() {
            roots.push(Rational::zero());
            while p.coeff(0).is_zero() {
                p = p.div_rem(&Self::x()).0;
            }
        }
        let ints = p.to_bigints().expect("primitive polynomial is integral");
        let c0 = ints[0].abs();
        let cn = ints.last().unwrap().abs();
        let divisors = |n: &BigInt| -> Vec<BigInt> {
            let mut out = Vec::new();
            let mut d = BigInt::one();
            while &d * &d <= *n {
                if (n % &d).is_zero() {
                    out.push(d.clone());
                    out.push(n / &d);
                }
                d += 1;
            }
            out
        };
        let (ps, qs) = (divisors(&c0), divisors(&cn));
        let mut cands: Vec<Rational> = Vec::new();
        for a in &ps {
            for b in &qs {
                for s in [1, -1] {
                    let r = Rational::new(a * s, b.clone());
                    if !cands.contains(&r) {
                        cands.push(r);
                    }
                }
            }
        }
        cands.sort();
        for r in cands {
            if p.eval(&r).is_zero() && !roots.contains(&r) {
                roots.push(r);
            }
        }
        roots.sort();
        roots
    }

    pub fn to_f64_coeffs(&self) -> Vec<f64> {
        self.coeffs.iter().map(super::rational::to_f64).collect()
    }

    /// Parse `"1,-1,0,-1"` as coefficients; `lowest_first` picks the order.
    pub fn parse_coeff_list(s: &str, lowest_first: bool) -> Result<Self> {
        let mut cs: Vec<Rational> = s
            .split(',')
            .map(|t| {
                let t = t.trim();
                t.parse::<BigInt>().map(Rational::from_integer).map_err(|_| Error::Parse(format!("bad integer coefficient '{t}'")))
            })
            .collect::<Result<_>>()?;
        if !lowest_first {
            cs.reverse();
        }
        let p = Self::new(cs);
        if p.is_zero() {
            return Err(Error::Parse("zero polynomial".into()));
        }
        Ok(p)
    }
}

impl<F: Field + fmt::Display> fmt::Display for UniPoly<F> {
    /// Highest degree first, variable `x`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let s = c.to_string();
            let needs_paren = s[1..].contains(['+', '-']);
            let (sign, body) = if needs_paren {
                ("+", format!("({s})"))
            } else if let Some(rest) = s.strip_prefix('-') {
                ("-", rest.to_string())
            } else {
                ("+", s)
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{sign}")?;
            }
            first = false;
            let unit = body == "1";
            match (k, unit) {
                (0, _) => write!(f, "{body}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{body}*x")?,
                (_, true) => write!(f, "x^{k}")?,
                (_, false) => write!(f, "{body}*x^{k}")?,
            }
        }
        Ok(())
    }
}
