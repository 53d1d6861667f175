//! Exact classification of integer polynomials by the position of their roots relative to the
//! unit circle: cyclotomic products, Pisot, Salem and quadratic units.
//!
//! Unit-circle roots are only ever counted through the trace polynomial, inside roots through
//! Schur–Cohn and real roots through Sturm chains. No verdict depends on floating point.

use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::factor::{cyclotomic, squarefree_decomposition};
use crate::exact::rational::{int, rat, to_f64};
use crate::exact::sturm::{isolate_real_roots, refine, SturmChain};
use crate::exact::{schur_cohn_inside, sturm_count, RatPoly, Rational};
use crate::report::Check;

/// `x^n p(1/x) = ±p(x)`.
pub fn is_reciprocal(p: &RatPoly) -> bool {
    if p.is_zero() {
        return false;
    }
    let r = p.reverse(p.deg());
    r == *p || r == p.neg()
}

fn is_plus_reciprocal(p: &RatPoly) -> bool {
    p.reverse(p.deg()) == *p
}

/// The polynomial `q` of degree `m` with `p(t) = t^m q(t + 1/t)`, for `p` reciprocal of degree `2m`.
pub fn trace_poly(p: &RatPoly) -> Result<RatPoly> {
    if p.is_zero() || p.deg() % 2 == 1 || !is_plus_reciprocal(p) {
        return Err(Error::NotReciprocal);
    }
    let m = p.deg() / 2;
    // t^k + t^-k = D_k(s) with D_0 = 2, D_1 = s, D_k = s D_{k-1} - D_{k-2}
    let s = RatPoly::x();
    let mut dickson = vec![RatPoly::constant(int(2)), s.clone()];
    for k in 2..=m {
        let next = s.mul(&dickson[k - 1]).sub(&dickson[k - 2]);
        dickson.push(next);
    }
    let mut q = RatPoly::constant(p.coeff(m));
    for (k, d) in dickson.iter().enumerate().take(m + 1).skip(1) {
        q = q.add(&d.scale(&p.coeff(m + k)));
    }
    Ok(q)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    CyclotomicProduct,
    Pisot,
    Salem,
    QuadraticUnit,
    Other,
}

/// Root counts with multiplicity. `core` is what remains after removing powers of `x` and
/// cyclotomic factors; the dominant root, if any, is a root of the core.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub zero_roots: usize,
    /// `(k, multiplicity)` for every `Φ_k` divided out.
    pub cyclotomic_factors: Vec<(usize, usize)>,
    pub core: String,
    pub inside: usize,
    pub on_circle: usize,
    pub outside: usize,
    pub core_inside: usize,
    pub core_on_circle: usize,
    pub core_outside: usize,
    /// Distinct real roots of the core above 1.
    pub real_above_one: usize,
    pub sturm_chain_len: usize,
    pub diagnostic: Option<String>,
}

fn ser_interval<S: Serializer>(iv: &Option<(Rational, Rational)>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match iv {
        Some((lo, hi)) => [lo.to_string(), hi.to_string()].serialize(s),
        None => s.serialize_none(),
    }
}

fn ser_poly<S: Serializer>(p: &RatPoly, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&p.to_string())
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassifiedNumber {
    #[serde(serialize_with = "ser_poly")]
    pub poly: RatPoly,
    pub verdict: Verdict,
    /// Isolating interval of the dominant root, for Pisot, Salem and quadratic-unit verdicts.
    #[serde(serialize_with = "ser_interval")]
    pub dominant_root: Option<(Rational, Rational)>,
    pub certificate: Certificate,
    /// Squarefree part of the core, the polynomial the dominant interval isolates a root of.
    #[serde(skip)]
    pub core_squarefree: RatPoly,
}

/// Euler's totient.
fn phi(mut n: usize) -> usize {
    let mut out = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if n > 1 {
        out -= out / n;
    }
    out
}

/// Root counts `(inside, on circle, outside)` of a squarefree `s` with `s(0) ≠ 0` and `s(±1) ≠ 0`.
fn region_counts(s: &RatPoly) -> Result<(usize, usize, usize)> {
    let n = s.deg();
    let g = s.gcd(&s.reverse(n)).monic();
    let (mut inside, mut on) = (0, 0);
    if g.deg() > 0 {
        // Roots of g pair up as {z, 1/z}; circle roots pair with their conjugates.
        let q = trace_poly(&g)?;
        let real_in = sturm_count(&q, &int(-2), &int(2))?;
        on = 2 * real_in;
        inside = (g.deg() - on) / 2;
    }
    let h = s.exact_div(&g).expect("gcd divides");
    if h.deg() > 0 {
        inside += schur_cohn_inside(&h)?;
    }
    Ok((inside, on, n - inside - on))
}

pub fn classify(p: &RatPoly) -> Result<ClassifiedNumber> {
    if p.is_zero() || p.deg() == 0 {
        return Err(Error::Precondition("classification needs a nonconstant polynomial".into()));
    }
    let monic_integral = p.is_integral() && p.lead().abs().is_one();
    let mut core = p.primitive();
    let mut zero_roots = 0;
    while core.coeff(0).is_zero() {
        core = core.exact_div(&RatPoly::x()).expect("x divides");
        zero_roots += 1;
    }
    let n = p.deg();
    let kmax = 2 * n * n;
    let mut cyclotomic_factors = Vec::new();
    for k in 1..=kmax {
        if phi(k) > core.deg() {
            continue;
        }
        let c = cyclotomic(k);
        let mut mult = 0;
        while let Some(q) = core.exact_div(&c) {
            if core.deg() == 0 {
                break;
            }
            core = q;
            mult += 1;
        }
        if mult > 0 {
            cyclotomic_factors.push((k, mult));
        }
    }
    let cyc_degree: usize = cyclotomic_factors.iter().map(|&(k, m)| phi(k) * m).sum();

    let (mut ci, mut co, mut cx) = (0, 0, 0);
    for (f, m) in squarefree_decomposition(&core) {
        if f.deg() == 0 {
            continue;
        }
        let (i, o, x) = region_counts(&f)?;
        ci += i * m;
        co += o * m;
        cx += x * m;
    }
    let sq = core.squarefree_part();
    let chain = SturmChain::new(&sq);
    let real_above_one = if sq.deg() == 0 { 0 } else { chain.count_above(&Rational::one())? };

    let mut diagnostic = None;
    let verdict = if !monic_integral {
        diagnostic = Some("not a monic integer polynomial".to_string());
        Verdict::Other
    } else if core.deg() == 0 {
        Verdict::CyclotomicProduct
    } else if cx == 1 && real_above_one == 1 {
        if core.deg() == 2 && is_reciprocal(&core) {
            Verdict::QuadraticUnit
        } else if co == 0 {
            Verdict::Pisot
        } else if is_reciprocal(&core) && ci == 1 {
            Verdict::Salem
        } else {
            diagnostic = Some(format!("one root outside but {co} on the circle and {ci} inside a non-reciprocal core"));
            Verdict::Other
        }
    } else if cx == 0 {
        diagnostic = Some("no root outside yet the core is not cyclotomic: inconsistent counts".to_string());
        Verdict::Other
    } else {
        diagnostic = Some(format!("{cx} roots outside the closed unit disk, {real_above_one} real above 1"));
        Verdict::Other
    };

    let dominant_root = match verdict {
        Verdict::Pisot | Verdict::Salem | Verdict::QuadraticUnit => {
            let (mut lo, mut hi) = isolate_real_roots(&sq).pop().expect("a real root above 1");
            // Every other root of p has modulus at most 1, so an interval above 1 isolates α in p too.
            let mut eps = &hi - &lo;
            while lo <= Rational::one() && lo != hi {
                eps /= int(2);
                (lo, hi) = refine(&sq, &lo, &hi, &eps);
            }
            Some((lo, hi))
        }
        _ => None,
    };
    Ok(ClassifiedNumber {
        poly: p.clone(),
        verdict,
        dominant_root,
        certificate: Certificate {
            zero_roots,
            cyclotomic_factors,
            core: core.to_string(),
            inside: ci + zero_roots,
            on_circle: co + cyc_degree,
            outside: cx,
            core_inside: ci,
            core_on_circle: co,
            core_outside: cx,
            real_above_one,
            sturm_chain_len: chain.len(),
            diagnostic,
        },
        core_squarefree: sq,
    })
}

/// Isolating interval of width below `eps` for the dominant root of a Pisot, Salem or
/// quadratic-unit polynomial.
pub fn dominant_root(p: &RatPoly, eps: &Rational) -> Result<(Rational, Rational)> {
    let c = classify(p)?;
    let (lo, hi) = c.dominant_root.ok_or_else(|| Error::Precondition(format!("no dominant real root: verdict {:?}", c.verdict)))?;
    Ok(refine(&c.core_squarefree, &lo, &hi, eps))
}

/// `2(α + 1)/(α − 1)` is decreasing in `α > 1`, so an enclosure of `α` maps to one of the threshold.
pub fn threshold_enclosure(alpha: &(Rational, Rational)) -> (Rational, Rational) {
    let f = |x: &Rational| int(2) * (x + int(1)) / (x - int(1));
    (f(&alpha.1), f(&alpha.0))
}

/// The threshold `2(α_T + 1)/(α_T − 1)` for `T = x³ − x² − 1`, which `4ℓ + 1` must exceed for the
/// generic Salem argument.
pub fn salem_threshold_check() -> Vec<Check> {
    let t = RatPoly::from_ints(&[-1, 0, -1, 1]);
    let mut checks = Vec::new();
    let tc = classify(&t).expect("nonconstant");
    checks.push(Check::new("t-cubic-pisot", "α_T is a Pisot number of degree 3", tc.verdict == Verdict::Pisot, format!("{:?}", tc.certificate)));
    let alpha = dominant_root(&t, &rat(1, 1_000_000_000_000)).expect("Pisot");
    let (lo, hi) = threshold_enclosure(&alpha);
    let (want_lo, want_hi) = (rat(106, 10), rat(108, 10));
    let width_ok = &hi - &lo <= rat(1, 10);
    checks.push(Check::new(
        "threshold-enclosure",
        "2(α_T+1)/(α_T−1) lies in (10.6, 10.8)",
        lo > want_lo && hi < want_hi && width_ok,
        format!("α_T ∈ [{:.12}, {:.12}], threshold ∈ [{:.9}, {:.9}]", to_f64(&alpha.0), to_f64(&alpha.1), to_f64(&lo), to_f64(&hi)),
    ));
    checks.push(Check::new("threshold-ell3", "4ℓ+1 exceeds the threshold for ℓ = 3", int(13) > hi, format!("13 > {:.6}", to_f64(&hi))));
    let chi2 = crate::lattice::chi_ell(2);
    let c2 = classify(&chi2).expect("nonconstant");
    checks.push(Check::new(
        "threshold-ell2-direct",
        "for ℓ = 2 the generic bound fails but χ_2 is Salem directly",
        int(9) < lo && c2.verdict == Verdict::Salem,
        format!("9 < {:.6}; core {}", to_f64(&lo), c2.certificate.core),
    ));
    checks
}

/// Salem and Pisot verdicts for the characteristic polynomials attached to `ℓ`, with the threshold
/// comparison. A threshold enclosure outside `(10.6, 10.8)` is flagged rather than failed here;
/// [`salem_threshold_check`] keeps the strict form.
pub fn classification_report(ell: usize) -> Vec<Check> {
    let mut checks = Vec::new();
    let chi = crate::lattice::chi_ell(ell);
    let c = classify(&chi).expect("nonconstant");
    // With one root outside and the rest in the closed disk, Kronecker makes the core irreducible.
    let cyc: Vec<String> = c.certificate.cyclotomic_factors.iter().map(|(k, m)| format!("Φ{k}^{m}")).collect();
    checks.push(Check::new(
        "salem-factor",
        "χ_ℓ is a product of cyclotomic factors and a Salem polynomial",
        c.verdict == Verdict::Salem,
        format!("{} · ({}); λ ∈ {}", cyc.join(" "), c.certificate.core, show_root(&chi)),
    ));
    let p = crate::lattice::pisot_poly(ell);
    let pc = classify(&p).expect("nonconstant");
    checks.push(Check::new("pisot-gw", "x^ℓ − x^(ℓ−1) − … − 1 is a Pisot polynomial", pc.verdict == Verdict::Pisot, format!("{p}; root ∈ {}", show_root(&p))));

    let t = crate::lattice::t_cubic();
    let alpha = dominant_root(&t, &rat(1, 1_000_000_000_000)).expect("Pisot");
    let (lo, hi) = threshold_enclosure(&alpha);
    let bound = int(4 * ell as i64 + 1);
    let detail = format!("threshold ∈ [{:.9}, {:.9}], 4ℓ+1 = {bound}", to_f64(&lo), to_f64(&hi));
    checks.push(if ell >= 3 {
        Check::new("salem-threshold", "4ℓ+1 exceeds 2(α_T+1)/(α_T−1)", bound > hi, detail)
    } else {
        Check::new("salem-threshold", "for ℓ = 2 the generic bound fails and χ_2 is classified directly", bound < lo && c.verdict == Verdict::Salem, detail)
    });
    let (want_lo, want_hi) = (rat(106, 10), rat(108, 10));
    if !(lo > want_lo && hi < want_hi) {
        checks.push(Check::flagged(
            "salem-threshold-value",
            "2(α_T+1)/(α_T−1) ≈ 10.7",
            format!("certified enclosure [{:.9}, {:.9}] lies outside (10.6, 10.8); the conclusion for ℓ ≥ 3 is unaffected", to_f64(&lo), to_f64(&hi)),
        ));
    }
    checks
}

fn show_root(p: &RatPoly) -> String {
    match dominant_root(p, &rat(1, 1_000_000_000_000)) {
        Ok((lo, hi)) => format!("[{:.12}, {:.12}]", to_f64(&lo), to_f64(&hi)),
        Err(_) => "none".into(),
    }
}
