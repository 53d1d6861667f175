//! Clearing the common factor of a map's coordinates.
//!
//! Three stages: trial division by a pool of likely factors, a coprimality certificate on
//! random lines computed modulo a prime, and an exact multivariate gcd when the certificate
//! does not close.

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::gcd::gcd_all;
use super::map::RationalMap;
use super::poly::MultiPoly;
use crate::exact::modp::{mod_inv, reduce_bigint, sqrt_mod, FpPoly};
use crate::exact::{QuadExt, Rational};

/// Large primes tried in order; the first in which the field generator has a square root wins.
const PRIMES: [u64; 8] =
    [2_305_843_009_213_693_951, 4_611_686_018_427_387_847, 9_223_372_036_854_775_783, 4_294_967_291, 2_147_483_647, 1_000_000_007, 1_000_000_009, 998_244_353];

pub const DEFAULT_SEED: u64 = 0x5eed_2024;
pub const LINE_HEIGHT: i64 = 1000;

/// Reduction of field elements modulo a prime ideal above `p`.
#[derive(Clone, Debug)]
pub struct ModField {
    pub p: u64,
    root: u64,
}

impl ModField {
    /// A prime in which `disc` is a square, or any prime for rational data.
    pub fn for_disc(disc: Option<i64>) -> Option<ModField> {
        PRIMES.iter().find_map(|&p| {
            let root = match disc {
                None => 0,
                Some(d) => sqrt_mod(reduce_bigint(&BigInt::from(d), p), p)?,
            };
            Some(ModField { p, root })
        })
    }

    fn rat(&self, q: &Rational) -> Option<u64> {
        let den = reduce_bigint(q.denom(), self.p);
        if den == 0 {
            return None;
        }
        let num = reduce_bigint(q.numer(), self.p);
        Some((num as u128 * mod_inv(den, self.p) as u128 % self.p as u128) as u64)
    }

    pub fn elem(&self, x: &QuadExt) -> Option<u64> {
        let re = self.rat(&x.re)?;
        if x.im.is_zero() {
            return Some(re);
        }
        let im = self.rat(&x.im)?;
        Some(((re as u128 + im as u128 * self.root as u128) % self.p as u128) as u64)
    }
}

/// A random affine line `t ↦ P + tQ` with integer points of bounded height.
#[derive(Clone, Debug)]
pub struct Line {
    pub base: Vec<i64>,
    pub dir: Vec<i64>,
}

impl Line {
    pub fn random(nvars: usize, rng: &mut impl Rng) -> Self {
        let mut draw = || (0..nvars).map(|_| rng.gen_range(-LINE_HEIGHT..=LINE_HEIGHT)).collect::<Vec<_>>();
        Line { base: draw(), dir: draw() }
    }

    /// `f(P + tQ)` modulo the prime, or `None` if a coefficient is not integral there.
    pub fn restrict(&self, f: &MultiPoly, k: &ModField) -> Option<FpPoly> {
        let p = k.p;
        let d = f.degree() as usize;
        let terms: Vec<(Vec<usize>, u64)> =
            f.terms().map(|(m, c)| Some((m.0[..f.nvars()].iter().map(|&e| e as usize).collect(), k.elem(c)?))).collect::<Option<_>>()?;
        let mulm = |a: u64, b: u64| (a as u128 * b as u128 % p as u128) as u64;
        let modi = |x: i64| x.rem_euclid(p as i64) as u64;
        let values: Vec<u64> = (0..=d as u64)
            .map(|t| {
                let pows: Vec<Vec<u64>> = (0..f.nvars())
                    .map(|v| {
                        let x = (modi(self.base[v]) + mulm(t % p, modi(self.dir[v]))) % p;
                        let mut row = vec![1u64; d + 1];
                        for e in 1..=d {
                            row[e] = mulm(row[e - 1], x);
                        }
                        row
                    })
                    .collect();
                terms.iter().fold(0u64, |acc, (e, c)| {
                    let v = e.iter().enumerate().fold(*c, |a, (v, &ev)| mulm(a, pows[v][ev]));
                    (acc + v) % p
                })
            })
            .collect();
        Some(interpolate(&values, p))
    }
}

/// Coefficients of the polynomial taking `values[j]` at `t = j`.
fn interpolate(values: &[u64], p: u64) -> FpPoly {
    let n = values.len();
    let mulm = |a: u64, b: u64| (a as u128 * b as u128 % p as u128) as u64;
    // Newton divided differences on nodes 0..n.
    let mut dd = values.to_vec();
    for level in 1..n {
        for j in (level..n).rev() {
            let num = (dd[j] + p - dd[j - 1]) % p;
            dd[j] = mulm(num, mod_inv(level as u64 % p, p));
        }
    }
    // Horner on the Newton basis: ((dd[n-1](t - (n-2)) + dd[n-2])(t - (n-3)) + ...).
    let mut acc = FpPoly::new(p, vec![dd[n - 1]]);
    for j in (0..n - 1).rev() {
        acc = acc.mul(&FpPoly::new(p, vec![(p - j as u64 % p) % p, 1]));
        acc = acc.sub(&FpPoly::new(p, vec![(p - dd[j]) % p]));
    }
    acc
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Certificate {
    /// Restricted gcd is constant on every line drawn.
    Coprime { lines: usize, prime: u64 },
    /// Some line left a common factor of this degree.
    Open { degree: usize },
    /// No usable prime or line (non-integral data or degenerate directions).
    Inconclusive,
}

/// Certificate that the coordinates share no common factor.
pub fn certify_coprime(coords: &[MultiPoly], lines: usize, rng: &mut impl Rng) -> Certificate {
    let disc = coords.iter().find_map(MultiPoly::disc);
    let Some(k) = ModField::for_disc(disc) else { return Certificate::Inconclusive };
    let nvars = coords[0].nvars();
    let mut done = 0;
    for _ in 0..lines * 4 {
        if done == lines {
            break;
        }
        let line = Line::random(nvars, rng);
        let Some(restricted) = coords.iter().map(|c| line.restrict(c, &k)).collect::<Option<Vec<_>>>() else {
            return Certificate::Inconclusive;
        };
        // Some coordinate must keep its full degree, i.e. not vanish at the direction point.
        let full = coords.iter().zip(&restricted).any(|(c, r)| !c.is_zero() && !r.is_zero() && r.deg() == c.degree() as usize);
        if !full {
            continue;
        }
        let g = restricted.iter().fold(FpPoly::new(k.p, vec![]), |g, r| g.gcd(r));
        if g.deg() > 0 {
            return Certificate::Open { degree: g.deg() };
        }
        done += 1;
    }
    if done == lines {
        Certificate::Coprime { lines, prime: k.p }
    } else {
        Certificate::Inconclusive
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ReduceLog {
    pub degree_before: u32,
    pub degree_after: u32,
    /// Hint factors divided out, as (text, multiplicity).
    pub hint_divisions: Vec<(String, u32)>,
    /// Factors found by the exact gcd fallback.
    pub fallback_factors: Vec<String>,
    pub certificate: Option<Certificate>,
}

#[derive(Clone, Debug)]
pub struct Reducer {
    pub seed: u64,
    pub lines: usize,
}

impl Default for Reducer {
    fn default() -> Self {
        Reducer { seed: DEFAULT_SEED, lines: 1 }
    }
}

/// Does `h` divide `f`? Decided modulo a prime on a line first; exact division confirms.
fn divides(h: &MultiPoly, f: &MultiPoly, line: &Line, k: &ModField) -> Option<MultiPoly> {
    if f.is_zero() {
        return Some(f.clone());
    }
    if let (Some(hl), Some(fl)) = (line.restrict(h, k), line.restrict(f, k)) {
        if hl.deg() == h.degree() as usize && !hl.is_zero() && !fl.div_rem(&hl).1.is_zero() {
            return None;
        }
    }
    f.exact_div(h)
}

impl Reducer {
    pub fn new(seed: u64) -> Self {
        Reducer { seed, ..Default::default() }
    }

    pub fn reduce(&self, m: &RationalMap, hints: &[MultiPoly]) -> (RationalMap, ReduceLog) {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let mut log = ReduceLog { degree_before: m.degree(), ..Default::default() };
        let mut coords: Vec<MultiPoly> = m.coords().to_vec();
        let nvars = coords[0].nvars();

        let content = coords.iter().filter(|c| !c.is_zero()).map(MultiPoly::monomial_content).reduce(|a, b| a.meet(&b)).unwrap_or_default();
        if content.degree() > 0 {
            coords = coords.iter().map(|c| c.div_monomial(&content)).collect();
            log.hint_divisions.push((MultiPoly::monomial(nvars, content, QuadExt::from_int(1)).to_string(), 1));
        }

        let disc = coords.iter().chain(hints).find_map(MultiPoly::disc);
        let field = ModField::for_disc(disc);
        let probe = Line::random(nvars, &mut rng);
        for h in hints.iter().filter(|h| !h.is_constant() && h.nvars() == nvars) {
            let mut times = 0;
            loop {
                let quotients = match &field {
                    Some(k) => coords.iter().map(|c| divides(h, c, &probe, k)).collect::<Option<Vec<_>>>(),
                    None => coords.iter().map(|c| c.exact_div(h)).collect(),
                };
                match quotients {
                    Some(q) => {
                        coords = q;
                        times += 1;
                    }
                    None => break,
                }
            }
            if times > 0 {
                log.hint_divisions.push((h.to_string(), times));
            }
        }

        loop {
            let cert = certify_coprime(&coords, self.lines, &mut rng);
            let coprime = matches!(cert, Certificate::Coprime { .. });
            log.certificate = Some(cert);
            if coprime {
                break;
            }
            let g = gcd_all(&coords);
            if g.is_constant() {
                break;
            }
            log.fallback_factors.push(g.to_string());
            coords = coords.iter().map(|c| c.exact_div(&g).expect("gcd divides")).collect();
        }
        let out = RationalMap::new(coords).expect("reduction keeps a nonzero homogeneous map");
        log.degree_after = out.degree();
        (out, log)
    }
}

/// Reduce with the default seed and a single certificate line.
pub fn reduce_map(m: &RationalMap, hints: &[MultiPoly]) -> RationalMap {
    Reducer::default().reduce(m, hints).0
}

/// Strict transforms of hint hypersurfaces under repeated pullback by one map.
/// Each pulled-back hypersurface is stripped of every factor already pooled before joining.
#[derive(Clone, Debug)]
pub struct PullbackPool {
    pool: Vec<MultiPoly>,
    frontier: Vec<MultiPoly>,
}

impl PullbackPool {
    pub fn new(base: &[MultiPoly]) -> Self {
        let frontier = base.iter().filter(|h| !h.is_constant()).cloned().collect();
        PullbackPool { pool: base.to_vec(), frontier }
    }

    pub fn hints(&self) -> &[MultiPoly] {
        &self.pool
    }

    /// Pull the newest layer back once more by `map`.
    pub fn step(&mut self, map: &RationalMap) {
        let start = self.pool.len();
        for h in std::mem::take(&mut self.frontier) {
            if h.nvars() != map.target_vars() {
                continue;
            }
            let pulled = h.substitute(map.coords());
            let known = self.pool.clone();
            push_cofactor(&mut self.pool, &pulled, &known);
        }
        self.frontier = self.pool[start..].to_vec();
    }
}

fn push_cofactor(pool: &mut Vec<MultiPoly>, c: &MultiPoly, base: &[MultiPoly]) {
    let mut rest = c.div_monomial(&c.monomial_content());
    for h in base.iter().filter(|h| !h.is_constant() && h.nvars() == c.nvars()) {
        while let Some(q) = rest.exact_div(h) {
            rest = q;
        }
    }
    if !rest.is_constant() {
        let rest = rest.monic();
        if !pool.iter().any(|p| p.monic() == rest) {
            pool.push(rest);
        }
    }
}

/// `base` plus the cofactors left after stripping `base` factors from each coordinate of `map`.
/// Common factors of `outer ∘ inner` are typically among these for `map = inner`.
pub fn factor_hints(map: &RationalMap, base: &[MultiPoly]) -> Vec<MultiPoly> {
    let mut pool: Vec<MultiPoly> = base.to_vec();
    for c in map.coords() {
        push_cofactor(&mut pool, c, base);
    }
    pool
}
