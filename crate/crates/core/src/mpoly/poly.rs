//! Sparse multivariate polynomials over `QuadExt` in at most four variables.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::exact::{Field, QuadExt, Rational};

/// Coordinates `(re, im)` of a field element scaled to integers.
type IntPair = (BigInt, BigInt);

pub const MAX_VARS: usize = 4;

/// Exponent vector; slots past `nvars` stay zero. Ordered graded-lexicographically.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Mono(pub [u16; MAX_VARS]);

impl Mono {
    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn var(i: usize) -> Self {
        let mut e = [0; MAX_VARS];
        e[i] = 1;
        Mono(e)
    }

    pub fn mul(&self, rhs: &Mono) -> Mono {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(rhs.0) {
            *a += b;
        }
        Mono(e)
    }

    pub fn divides(&self, rhs: &Mono) -> bool {
        self.0.iter().zip(rhs.0).all(|(&a, b)| a <= b)
    }

    pub fn div(&self, rhs: &Mono) -> Mono {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(rhs.0) {
            *a -= b;
        }
        Mono(e)
    }

    /// Componentwise minimum, the gcd of two monomials.
    pub fn meet(&self, rhs: &Mono) -> Mono {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(rhs.0) {
            *a = (*a).min(b);
        }
        Mono(e)
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Mono, QuadExt>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS, "at most {MAX_VARS} variables");
        MultiPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: QuadExt) -> Self {
        Self::from_terms(nvars, [(Mono::default(), c)])
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, QuadExt::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars);
        Self::from_terms(nvars, [(Mono::var(i), QuadExt::one())])
    }

    pub fn monomial(nvars: usize, m: Mono, c: QuadExt) -> Self {
        Self::from_terms(nvars, [(m, c)])
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Mono, QuadExt)>) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            debug_assert!(m.0[nvars..].iter().all(|&e| e == 0));
            p.add_term(m, c);
        }
        p
    }

    /// Linear form `Σ cᵢ xᵢ`.
    pub fn linear(coeffs: &[QuadExt]) -> Self {
        Self::from_terms(coeffs.len(), coeffs.iter().enumerate().map(|(i, c)| (Mono::var(i), c.clone())))
    }

    fn add_term(&mut self, m: Mono, c: QuadExt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().clone() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &QuadExt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    /// Total degree; zero for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms.keys().next_back().map_or(0, Mono::degree)
    }

    pub fn degree_in(&self, v: usize) -> u16 {
        self.terms.keys().map(|m| m.0[v]).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let d = self.degree();
        self.terms.keys().all(|m| m.degree() == d)
    }

    pub fn leading(&self) -> Option<(&Mono, &QuadExt)> {
        self.terms.iter().next_back()
    }

    pub fn coeff(&self, m: &Mono) -> QuadExt {
        self.terms.get(m).cloned().unwrap_or_else(QuadExt::zero)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        MultiPoly { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }

    pub fn scale(&self, k: &QuadExt) -> Self {
        if k.is_zero() {
            return Self::zero(self.nvars);
        }
        MultiPoly { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (*m, c * k)).collect() }
    }

    pub fn mul_term(&self, m: &Mono, k: &QuadExt) -> Self {
        if k.is_zero() {
            return Self::zero(self.nvars);
        }
        MultiPoly { nvars: self.nvars, terms: self.terms.iter().map(|(t, c)| (t.mul(m), c * k)).collect() }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        if self.is_zero() || rhs.is_zero() {
            return Self::zero(self.nvars);
        }
        // Products run over integers after clearing denominators; one normalization per term at the end.
        let disc = self.disc().or(rhs.disc()).unwrap_or(0);
        let (da, ia) = self.integral_parts();
        let (db, ib) = rhs.integral_parts();
        let d = BigInt::from(disc);
        let mut acc: HashMap<Mono, (BigInt, BigInt)> = HashMap::with_capacity(ia.len() * ib.len() / 2);
        for (ma, (ar, ai)) in &ia {
            for (mb, (br, bi)) in &ib {
                let slot = acc.entry(ma.mul(mb)).or_insert_with(|| (BigInt::zero(), BigInt::zero()));
                slot.0 += ar * br;
                if !ai.is_zero() && !bi.is_zero() {
                    slot.0 += &d * ai * bi;
                }
                if !bi.is_zero() {
                    slot.1 += ar * bi;
                }
                if !ai.is_zero() {
                    slot.1 += ai * br;
                }
            }
        }
        let den = da * db;
        let terms = acc
            .into_iter()
            .filter(|(_, (r, i))| !r.is_zero() || !i.is_zero())
            .map(|(m, (r, i))| (m, QuadExt::new(Rational::new(r, den.clone()), Rational::new(i, den.clone()), disc)))
            .collect();
        MultiPoly { nvars: self.nvars, terms }
    }

    /// Common denominator and the integer parts of every coefficient scaled by it.
    fn integral_parts(&self) -> (BigInt, Vec<(Mono, IntPair)>) {
        let den = self.terms.values().fold(BigInt::one(), |acc, c| acc.lcm(&c.denominator()));
        let parts = self
            .terms
            .iter()
            .map(|(m, c)| {
                let r = (&c.re * &den).to_integer();
                let i = (&c.im * &den).to_integer();
                (*m, (r, i))
            })
            .collect();
        (den, parts)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn eval(&self, x: &[QuadExt]) -> QuadExt {
        assert_eq!(x.len(), self.nvars);
        let mut total = QuadExt::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in m.0[..self.nvars].iter().enumerate() {
                if e > 0 {
                    t = t * &x[v].pow_u(e as u64);
                }
            }
            total = total + &t;
        }
        total
    }

    /// Replace each variable `xᵢ` by `subs[i]`; the result lives in `subs`' ring.
    pub fn substitute(&self, subs: &[MultiPoly]) -> MultiPoly {
        assert_eq!(subs.len(), self.nvars, "substitution arity");
        let target = subs.first().map_or(self.nvars, |s| s.nvars);
        let mut powers: Vec<Vec<MultiPoly>> = subs.iter().map(|s| vec![MultiPoly::one(s.nvars), s.clone()]).collect();
        let mut out = MultiPoly::zero(target);
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(target, c.clone());
            for v in 0..self.nvars {
                let e = m.0[v] as usize;
                if e == 0 {
                    continue;
                }
                while powers[v].len() <= e {
                    let next = powers[v].last().unwrap().mul(&subs[v]);
                    powers[v].push(next);
                }
                t = t.mul(&powers[v][e]);
            }
            for (tm, tc) in t.terms {
                out.add_term(tm, tc);
            }
        }
        out
    }

    pub fn derivative(&self, v: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[v];
            if e > 0 {
                let mut dm = *m;
                dm.0[v] -= 1;
                out.add_term(dm, c * &QuadExt::from_int(e as i64));
            }
        }
        out
    }

    /// Set `x_v = value`, keeping the variable slot (now absent).
    pub fn set_var(&self, v: usize, value: &QuadExt) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[v];
            let mut nm = *m;
            nm.0[v] = 0;
            out.add_term(nm, c * &value.pow_u(e as u64));
        }
        out
    }

    /// Remove variable slot `v`, which must not occur.
    pub fn drop_var(&self, v: usize) -> Self {
        assert!(self.degree_in(v) == 0, "variable x{v} still occurs");
        let mut out = Self::zero(self.nvars - 1);
        for (m, c) in &self.terms {
            let mut e = [0u16; MAX_VARS];
            let mut k = 0;
            for (i, &x) in m.0[..self.nvars].iter().enumerate() {
                if i != v {
                    e[k] = x;
                    k += 1;
                }
            }
            out.add_term(Mono(e), c.clone());
        }
        out
    }

    /// Largest monomial dividing every term.
    pub fn monomial_content(&self) -> Mono {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else { return Mono::default() };
        it.fold(*first, |acc, m| acc.meet(m))
    }

    pub fn div_monomial(&self, m: &Mono) -> Self {
        MultiPoly { nvars: self.nvars, terms: self.terms.iter().map(|(t, c)| (t.div(m), c.clone())).collect() }
    }

    /// Exact quotient, or `None` if `d` does not divide `self`.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        assert!(!d.is_zero(), "division by zero polynomial");
        let (lm, lc) = d.leading().map(|(m, c)| (*m, c.clone()))?;
        let inv = lc.inv();
        if d.num_terms() == 1 {
            if !self.terms.keys().all(|m| lm.divides(m)) {
                return None;
            }
            return Some(MultiPoly { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (m.div(&lm), c * &inv)).collect() });
        }
        let mut r = self.clone();
        let mut q = Self::zero(self.nvars);
        while let Some((rm, rc)) = r.leading().map(|(m, c)| (*m, c.clone())) {
            if !lm.divides(&rm) {
                return None;
            }
            let qm = rm.div(&lm);
            let qc = rc * &inv;
            for (dm, dc) in &d.terms {
                r.add_term(dm.mul(&qm), -(dc * &qc));
            }
            q.add_term(qm, qc);
        }
        Some(q)
    }

    /// Scale so the leading coefficient is one.
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some((_, c)) => self.scale(&c.inv()),
            None => self.clone(),
        }
    }

    /// Does every coefficient lie in ℚ?
    pub fn is_rational(&self) -> bool {
        self.terms.values().all(QuadExt::is_rational)
    }

    /// Field discriminant of the first irrational coefficient, if any.
    pub fn disc(&self) -> Option<i64> {
        self.terms.values().find(|c| !c.is_rational()).map(|c| c.disc)
    }

    /// Complex conjugate of every coefficient.
    pub fn conj(&self) -> Self {
        MultiPoly { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (*m, c.conj())).collect() }
    }

    pub fn from_rational_terms(nvars: usize, terms: &[(&[u16], Rational)]) -> Self {
        Self::from_terms(
            nvars,
            terms.iter().map(|(e, c)| {
                let mut m = [0u16; MAX_VARS];
                m[..e.len()].copy_from_slice(e);
                (Mono(m), QuadExt::rational(c.clone()))
            }),
        )
    }
}

fn fmt_coeff(c: &QuadExt) -> (bool, String) {
    let s = c.to_string();
    if c.is_rational() {
        match s.strip_prefix('-') {
            Some(rest) => (true, rest.to_string()),
            None => (false, s),
        }
    } else {
        (false, format!("({s})"))
    }
}

impl fmt::Display for MultiPoly {
    /// Terms in decreasing graded-lex order, e.g. `x0*x1^2-(3/4+1/4*w)*x3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let (negative, body) = fmt_coeff(c);
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, "-")?,
                (_, false) => write!(f, "+")?,
            }
            let vars: Vec<String> =
                (0..self.nvars).filter(|&v| m.0[v] > 0).map(|v| if m.0[v] == 1 { format!("x{v}") } else { format!("x{v}^{}", m.0[v]) }).collect();
            if vars.is_empty() {
                write!(f, "{body}")?;
            } else if body == "1" {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{body}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}
