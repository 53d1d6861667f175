//! Elements `re + im·√d` of a quadratic field over ℚ.
//!
//! `d` is a squarefree integer other than 1. An element whose `im` part is
//! zero is a plain rational and mixes freely with any field; two irrational
//! elements must share `d`.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use super::rational::{int, to_f64};
use super::{Field, Rational};

#[derive(Clone, Debug)]
pub struct QuadExt {
    pub re: Rational,
    pub im: Rational,
    pub disc: i64,
}

fn join_disc(a: &QuadExt, b: &QuadExt) -> i64 {
    if !a.im.is_zero() && !b.im.is_zero() {
        assert_eq!(a.disc, b.disc, "mixing elements of Q(sqrt {}) and Q(sqrt {})", a.disc, b.disc);
        a.disc
    } else if !a.im.is_zero() {
        a.disc
    } else if !b.im.is_zero() {
        b.disc
    } else if a.disc != 0 {
        a.disc
    } else {
        b.disc
    }
}

impl QuadExt {
    pub fn new(re: Rational, im: Rational, disc: i64) -> Self {
        assert!(disc != 1, "sqrt(1) is rational");
        assert!(disc != 0 || im.is_zero(), "irrational part needs a generator");
        QuadExt { re, im, disc }
    }

    pub fn rational(q: Rational) -> Self {
        QuadExt { re: q, im: Rational::zero(), disc: 0 }
    }

    pub fn from_int(n: i64) -> Self {
        Self::rational(int(n))
    }

    /// The generator `√d`.
    pub fn sqrt_of(disc: i64) -> Self {
        Self::new(Rational::zero(), Rational::one(), disc)
    }

    /// Same value, tagged with the field `Q(√d)` for display purposes.
    pub fn in_field(mut self, disc: i64) -> Self {
        if self.im.is_zero() {
            self.disc = disc;
        } else {
            assert_eq!(self.disc, disc);
        }
        self
    }

    pub fn is_rational(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        QuadExt { re: self.re.clone(), im: -&self.im, disc: self.disc }
    }

    /// `re² − d·im²`.
    pub fn norm(&self) -> Rational {
        &self.re * &self.re - int(self.disc) * &self.im * &self.im
    }

    /// `2·re`.
    pub fn trace(&self) -> Rational {
        int(2) * &self.re
    }

    /// Coefficients `[c0, c1, 1]` (lowest first) of the minimal polynomial over ℚ;
    /// degree one for rationals.
    pub fn min_poly(&self) -> Vec<Rational> {
        if self.is_rational() {
            vec![-self.re.clone(), Rational::one()]
        } else {
            vec![self.norm(), -self.trace(), Rational::one()]
        }
    }

    /// Complex value with `√d` on the principal branch (`i√|d|` for `d < 0`).
    pub fn to_complex(&self) -> Complex64 {
        let re = to_f64(&self.re);
        let im = to_f64(&self.im);
        if self.disc < 0 {
            Complex64::new(re, im * (-(self.disc as f64)).sqrt())
        } else {
            Complex64::new(re + im * (self.disc as f64).sqrt(), 0.0)
        }
    }

    /// Exact sign of the real number `re + im·√d` for a real field (`d > 0`).
    pub fn real_sign(&self) -> i32 {
        assert!(self.disc >= 0 || self.im.is_zero(), "sign of a non-real element");
        let s = |q: &Rational| {
            if q.is_positive() {
                1
            } else if q.is_negative() {
                -1
            } else {
                0
            }
        };
        let (a, b) = (s(&self.re), s(&self.im));
        if b == 0 {
            return a;
        }
        if a == 0 || a == b {
            return b;
        }
        // Opposite signs: compare re² with d·im².
        let lhs = &self.re * &self.re;
        let rhs = int(self.disc) * &self.im * &self.im;
        if lhs > rhs {
            a
        } else if lhs < rhs {
            b
        } else {
            0
        }
    }

    pub fn pow_u(&self, e: u64) -> Self {
        Field::pow_u(self, e)
    }

    /// Largest common denominator of both parts.
    pub fn denominator(&self) -> BigInt {
        num_integer::Integer::lcm(self.re.denom(), self.im.denom())
    }
}

impl PartialEq for QuadExt {
    fn eq(&self, other: &Self) -> bool {
        self.re == other.re && self.im == other.im && (self.im.is_zero() || self.disc == other.disc)
    }
}

impl Eq for QuadExt {}

impl Hash for QuadExt {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.re.hash(state);
        self.im.hash(state);
        if !self.im.is_zero() {
            self.disc.hash(state);
        }
    }
}

impl QuadExt {
    fn add_ref(&self, rhs: &Self) -> Self {
        QuadExt { re: &self.re + &rhs.re, im: &self.im + &rhs.im, disc: join_disc(self, rhs) }
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        QuadExt { re: &self.re - &rhs.re, im: &self.im - &rhs.im, disc: join_disc(self, rhs) }
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        let disc = join_disc(self, rhs);
        if self.im.is_zero() {
            return QuadExt { re: &self.re * &rhs.re, im: &self.re * &rhs.im, disc };
        }
        if rhs.im.is_zero() {
            return QuadExt { re: &self.re * &rhs.re, im: &self.im * &rhs.re, disc };
        }
        let re = &self.re * &rhs.re + int(disc) * &self.im * &rhs.im;
        let im = &self.re * &rhs.im + &self.im * &rhs.re;
        QuadExt { re, im, disc }
    }
    fn div_ref(&self, rhs: &Self) -> Self {
        self.mul_ref(&rhs.inv())
    }
    fn neg_ref(&self) -> Self {
        QuadExt { re: -&self.re, im: -&self.im, disc: self.disc }
    }
}

impl Zero for QuadExt {
    fn zero() -> Self {
        QuadExt::rational(Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for QuadExt {
    fn one() -> Self {
        QuadExt::rational(Rational::one())
    }
}

impl Field for QuadExt {
    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        if self.im.is_zero() {
            return QuadExt { re: self.re.recip(), im: Rational::zero(), disc: self.disc };
        }
        let n = self.norm();
        QuadExt { re: &self.re / &n, im: -&self.im / &n, disc: self.disc }
    }
    fn from_rational(q: Rational) -> Self {
        QuadExt::rational(q)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $imp:ident) => {
        impl $tr<&QuadExt> for &QuadExt {
            type Output = QuadExt;
            fn $method(self, rhs: &QuadExt) -> QuadExt {
                self.$imp(rhs)
            }
        }
        impl $tr<QuadExt> for QuadExt {
            type Output = QuadExt;
            fn $method(self, rhs: QuadExt) -> QuadExt {
                self.$imp(&rhs)
            }
        }
        impl $tr<&QuadExt> for QuadExt {
            type Output = QuadExt;
            fn $method(self, rhs: &QuadExt) -> QuadExt {
                self.$imp(rhs)
            }
        }
        impl $tr<QuadExt> for &QuadExt {
            type Output = QuadExt;
            fn $method(self, rhs: QuadExt) -> QuadExt {
                self.$imp(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);
forward_binop!(Div, div, div_ref);

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        self.neg_ref()
    }
}

impl Neg for &QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        self.neg_ref()
    }
}

impl fmt::Display for QuadExt {
    /// Canonical text form, generator written `w`: `-3/4+1/4*w`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        let im = if self.im.is_one() {
            "w".to_string()
        } else if (-&self.im).is_one() {
            "-w".to_string()
        } else {
            format!("{}*w", self.im)
        };
        if self.re.is_zero() {
            write!(f, "{im}")
        } else if im.starts_with('-') {
            write!(f, "{}{}", self.re, im)
        } else {
            write!(f, "{}+{}", self.re, im)
        }
    }
}

impl Serialize for QuadExt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}
