//! Polynomials over small prime fields, used for degree-pattern sieving and modular gcds.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

/// Dense polynomial over `F_p`, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpPoly {
    pub p: u64,
    pub c: Vec<u64>,
}

pub fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = (acc as u128 * b as u128 % p as u128) as u64;
        }
        b = (b as u128 * b as u128 % p as u128) as u64;
        e >>= 1;
    }
    acc
}

pub fn mod_inv(a: u64, p: u64) -> u64 {
    assert!(!a.is_multiple_of(p), "inverse of zero mod {p}");
    mod_pow(a, p - 2, p)
}

pub fn reduce_bigint(n: &BigInt, p: u64) -> u64 {
    n.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits")
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn primes_below(n: u64) -> impl Iterator<Item = u64> {
    (2..n).filter(|&k| is_prime(k))
}

/// Square root mod an odd prime by Tonelli–Shanks; `None` for non-residues.
pub fn sqrt_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if p == 2 {
        return Some(a);
    }
    if mod_pow(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    let (mut q, mut s) = (p - 1, 0u32);
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let z = (2..p).find(|&z| mod_pow(z, (p - 1) / 2, p) == p - 1)?;
    let mulm = |x: u64, y: u64| (x as u128 * y as u128 % p as u128) as u64;
    let (mut m, mut c, mut t, mut r) = (s, mod_pow(z, q, p), mod_pow(a, q, p), mod_pow(a, q.div_ceil(2), p));
    while t != 1 {
        let mut i = 0;
        let mut tt = t;
        while tt != 1 {
            tt = mulm(tt, tt);
            i += 1;
        }
        let b = mod_pow(c, 1 << (m - i - 1), p);
        m = i;
        c = mulm(b, b);
        t = mulm(t, c);
        r = mulm(r, b);
    }
    Some(r)
}

impl FpPoly {
    pub fn new(p: u64, mut c: Vec<u64>) -> Self {
        c.iter_mut().for_each(|x| *x %= p);
        while c.last() == Some(&0) {
            c.pop();
        }
        FpPoly { p, c }
    }

    pub fn from_bigints(p: u64, cs: &[BigInt]) -> Self {
        Self::new(p, cs.iter().map(|c| reduce_bigint(c, p)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn deg(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    fn mulm(&self, a: u64, b: u64) -> u64 {
        (a as u128 * b as u128 % self.p as u128) as u64
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.c.len().max(rhs.c.len());
        let g = |v: &Vec<u64>, i: usize| v.get(i).copied().unwrap_or(0);
        Self::new(self.p, (0..n).map(|i| (g(&self.c, i) + self.p - g(&rhs.c, i)) % self.p).collect())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::new(self.p, vec![]);
        }
        let mut out = vec![0u64; self.c.len() + rhs.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            for (j, &b) in rhs.c.iter().enumerate() {
                out[i + j] = (out[i + j] + self.mulm(a, b)) % self.p;
            }
        }
        Self::new(self.p, out)
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero());
        let p = self.p;
        let inv = mod_inv(*d.c.last().unwrap(), p);
        let mut r = self.c.clone();
        let dd = d.deg();
        if r.len() <= dd {
            return (Self::new(p, vec![]), self.clone());
        }
        let mut q = vec![0u64; r.len() - dd];
        for k in (dd..r.len()).rev() {
            let f = self.mulm(r[k], inv);
            if f == 0 {
                continue;
            }
            for (j, &dc) in d.c.iter().enumerate() {
                r[k - dd + j] = (r[k - dd + j] + p - self.mulm(f, dc)) % p;
            }
            q[k - dd] = f;
        }
        r.truncate(dd);
        (Self::new(p, q), Self::new(p, r))
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = mod_inv(*self.c.last().unwrap(), self.p);
        Self::new(self.p, self.c.iter().map(|&a| self.mulm(a, inv)).collect())
    }

    pub fn gcd(&self, rhs: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), rhs.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.p, self.c.iter().enumerate().skip(1).map(|(k, &a)| self.mulm(a, k as u64 % self.p)).collect())
    }

    pub fn eval(&self, x: u64) -> u64 {
        self.c.iter().rev().fold(0, |acc, &a| (self.mulm(acc, x) + a) % self.p)
    }

    /// `base^e mod self`.
    pub fn pow_mod(&self, base: &Self, mut e: u128) -> Self {
        let mut acc = Self::new(self.p, vec![1]);
        let mut b = base.rem(self);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b).rem(self);
            }
            b = b.mul(&b).rem(self);
            e >>= 1;
        }
        acc
    }

    /// Degrees of the irreducible factors of a squarefree monic polynomial (distinct-degree
    /// factorization), as a multiset.
    pub fn factor_degrees(&self) -> Vec<usize> {
        let mut f = self.monic();
        let x = Self::new(self.p, vec![0, 1]);
        let mut h = x.clone();
        let mut degs = Vec::new();
        let mut d = 0;
        while f.deg() > 0 {
            d += 1;
            if 2 * d > f.deg() {
                degs.push(f.deg());
                break;
            }
            h = f.pow_mod(&h, self.p as u128);
            let g = f.gcd(&h.sub(&x));
            if g.deg() > 0 {
                degs.extend(std::iter::repeat_n(d, g.deg() / d));
                f = f.div_rem(&g).0.monic();
                h = h.rem(&f);
            }
        }
        degs
    }
}
