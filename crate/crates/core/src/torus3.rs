//! Linear automorphisms of complex 3-tori given by reciprocal integer sextics.
//!
//! A sextic `χ(t) = t⁶ + at⁵ + bt⁴ + ct³ + bt² + at + 1` is admissible when it is irreducible and
//! its trace cubic has a single real root, lying in `(−2, 2)`. Then `χ` has one conjugate pair on
//! the unit circle and four non-real roots off it, which is the pattern behind a non-fibered
//! automorphism with `λ₁ = λ₂`.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::factor::{factor, irreducibility, IrreducibilityProof};
use crate::exact::rational::{int, to_f64};
use crate::exact::roots::{certified_roots, RootDisk};
use crate::exact::sturm::{isolate_real_roots, refine, SturmChain};
use crate::exact::{sturm_count, IntMatrix, RatPoly, Rational};
use crate::numclass::{classify, trace_poly, Verdict};
use crate::par::{map_slice, Execution};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ReciprocalSextic {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl ReciprocalSextic {
    pub fn new(a: i64, b: i64, c: i64) -> Self {
        ReciprocalSextic { a, b, c }
    }

    pub fn poly(&self) -> RatPoly {
        RatPoly::from_ints(&[1, self.a, self.b, self.c, self.b, self.a, 1])
    }

    /// `θ(s) = s³ + as² + (b − 3)s + (c − 2a)`, with `χ(t) = t³θ(t + 1/t)`.
    pub fn theta(&self) -> RatPoly {
        RatPoly::from_ints(&[self.c - 2 * self.a, self.b - 3, self.a, 1])
    }

    /// `t ↦ −t` conjugate: `(a, b, c) ↦ (−a, b, −c)`.
    pub fn negated(&self) -> Self {
        ReciprocalSextic::new(-self.a, self.b, -self.c)
    }

    pub fn companion(&self) -> IntMatrix {
        IntMatrix::companion(&self.poly()).expect("monic integral")
    }
}

fn ser_opt_interval<S: Serializer>(iv: &Option<(Rational, Rational)>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match iv {
        Some((lo, hi)) => [lo.to_string(), hi.to_string()].serialize(s),
        None => s.serialize_none(),
    }
}

fn ser_interval<S: Serializer>(iv: &(Rational, Rational), s: S) -> std::result::Result<S::Ok, S::Error> {
    [iv.0.to_string(), iv.1.to_string()].serialize(s)
}

#[derive(Clone, Debug, Serialize)]
pub struct Admissibility {
    pub sextic: ReciprocalSextic,
    pub admissible: bool,
    pub irreducible: bool,
    pub irreducibility_proof: Option<IrreducibilityProof>,
    pub theta: String,
    pub theta_real_roots: usize,
    pub theta_roots_in_open: usize,
    pub reason: Option<String>,
}

pub fn admissible(s: &ReciprocalSextic) -> Admissibility {
    let chi = s.poly();
    let theta = s.theta();
    let proof = irreducibility(&chi).ok().and_then(|r| r.ok());
    let irreducible = proof.is_some();
    let chain = SturmChain::new(&theta.squarefree_part());
    let real = chain.count_all();
    // θ(±2) = 0 means χ(±1) = 0, which irreducibility already excludes.
    let inside = sturm_count(&theta.squarefree_part(), &int(-2), &int(2)).unwrap_or(0);
    let reason = if !irreducible {
        Some("χ is reducible over ℚ".to_string())
    } else if real != 1 {
        Some(format!("θ has {real} distinct real roots"))
    } else if inside != 1 {
        Some("the real root of θ lies outside (−2, 2)".to_string())
    } else {
        None
    };
    Admissibility {
        sextic: *s,
        admissible: reason.is_none(),
        irreducible,
        irreducibility_proof: proof,
        theta: theta.to_string(),
        theta_real_roots: real,
        theta_roots_in_open: inside,
        reason,
    }
}

/// All admissible sextics with `|a|, |b|, |c| ≤ bound`, in lexicographic order.
pub fn search(bound: i64, exec: Execution) -> Vec<ReciprocalSextic> {
    let r = -bound..=bound;
    let grid: Vec<ReciprocalSextic> =
        r.clone().flat_map(|a| r.clone().flat_map(move |b| (-bound..=bound).map(move |c| ReciprocalSextic::new(a, b, c)))).collect();
    let keep = map_slice(exec, &grid, |s| admissible(s).admissible);
    grid.into_iter().zip(keep).filter_map(|(s, k)| k.then_some(s)).collect()
}

/// A certified root: the disk contains exactly one root of `χ`.
#[derive(Clone, Debug, Serialize)]
pub struct RootBox {
    pub re: f64,
    pub im: f64,
    /// Upper bound on the distance from `(re, im)` to the root.
    pub radius: f64,
    #[serde(serialize_with = "ser_interval")]
    pub modulus: (Rational, Rational),
}

impl RootBox {
    fn from_disk(d: &RootDisk) -> Self {
        let z = d.approx();
        RootBox { re: z.re, im: z.im, radius: to_f64(&d.radius), modulus: d.modulus_bounds() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TorusSpectrum {
    pub alpha: RootBox,
    pub beta: RootBox,
    pub gamma: RootBox,
    /// Decided by the trace cubic, never by `|β| ≈ 1`.
    pub beta_on_circle: bool,
    pub alpha_nonreal: bool,
    #[serde(serialize_with = "ser_interval")]
    pub lambda1: (Rational, Rational),
    #[serde(serialize_with = "ser_interval")]
    pub lambda2: (Rational, Rational),
    pub lambda1_equals_lambda2: bool,
    /// `λ₂` and `1/|γ|²` have overlapping enclosures.
    pub lambda2_matches_gamma: bool,
    /// `|α|·|γ|` encloses 1.
    pub reciprocity: bool,
}

fn interval_mul(x: &(Rational, Rational), y: &(Rational, Rational)) -> (Rational, Rational) {
    // All operands here are nonnegative.
    (&x.0 * &y.0, &x.1 * &y.1)
}

fn overlaps(x: &(Rational, Rational), y: &(Rational, Rational)) -> bool {
    x.0 <= y.1 && y.0 <= x.1
}

pub fn spectrum(s: &ReciprocalSextic, eps: &Rational) -> Result<TorusSpectrum> {
    let adm = admissible(s);
    if !adm.admissible {
        return Err(Error::Precondition(format!("{s:?} is not admissible: {}", adm.reason.unwrap_or_default())));
    }
    let disks = certified_roots(&s.poly())?;
    // One representative per conjugate pair, ordered by modulus.
    let mut upper: Vec<&RootDisk> = disks.iter().filter(|d| d.in_upper_half()).collect();
    if upper.len() != 3 {
        return Err(Error::Numerical("root disks do not separate from the real axis".into()));
    }
    upper.sort_by(|x, y| y.approx().norm().partial_cmp(&x.approx().norm()).expect("finite"));
    let mods: Vec<(Rational, Rational)> = upper.iter().map(|d| d.modulus_bounds()).collect();
    if !(mods[0].0 > mods[1].1 && mods[1].0 > mods[2].1) {
        return Err(Error::Numerical("root moduli are not separated".into()));
    }
    let (alpha, beta, gamma) = (RootBox::from_disk(upper[0]), RootBox::from_disk(upper[1]), RootBox::from_disk(upper[2]));

    let lambda1 = lambda1_enclosure(&s.poly(), eps)?.0;
    let beta_on_circle = adm.theta_roots_in_open == 1;
    let beta_sq = if beta_on_circle { (Rational::one(), Rational::one()) } else { interval_mul(&beta.modulus, &beta.modulus) };
    let lambda2 = interval_mul(&lambda1, &beta_sq);
    let g2 = interval_mul(&gamma.modulus, &gamma.modulus);
    let inv_g2 = (Rational::one() / &g2.1, Rational::one() / &g2.0);
    let ag = interval_mul(&alpha.modulus, &gamma.modulus);
    Ok(TorusSpectrum {
        beta_on_circle,
        alpha_nonreal: upper[0].in_upper_half(),
        lambda1_equals_lambda2: beta_on_circle,
        lambda2_matches_gamma: overlaps(&lambda2, &inv_g2),
        reciprocity: ag.0 <= Rational::one() && Rational::one() <= ag.1,
        lambda1,
        lambda2,
        alpha,
        beta,
        gamma,
    })
}

/// Second exterior power of a square matrix, on the basis `eᵢ ∧ eⱼ` with `i < j`.
pub fn exterior_square(m: &IntMatrix) -> IntMatrix {
    let n = m.rows();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mut out = IntMatrix::zeros(pairs.len(), pairs.len());
    for (r, &(i, j)) in pairs.iter().enumerate() {
        for (c, &(k, l)) in pairs.iter().enumerate() {
            out.set(r, c, m.get(i, k) * m.get(j, l) - m.get(i, l) * m.get(j, k));
        }
    }
    out
}

/// The monic polynomial whose roots are the squares of the roots of `p`.
pub fn graeffe(p: &RatPoly) -> RatPoly {
    let neg: Vec<Rational> = p.coeffs().iter().enumerate().map(|(k, c)| if k % 2 == 0 { c.clone() } else { -c.clone() }).collect();
    let prod = p.mul(&RatPoly::new(neg));
    let even: Vec<Rational> = prod.coeffs().iter().step_by(2).cloned().collect();
    RatPoly::new(even).monic()
}

/// Enclosure of `λ₁ = |α|²` for the root `α` of maximal modulus, with its minimal polynomial.
///
/// `|α|²` is `αᾱ` or `α²`, so it is a root of `charpoly(∧²M_χ)·graeffe(χ)`, and every root of
/// that product has modulus at most `|α|²`: it is the largest real root. Each irreducible factor
/// is isolated separately; distinct irreducibles share no root, so refining their top intervals
/// until they separate decides which one carries `λ₁`.
pub fn lambda1_enclosure(chi: &RatPoly, eps: &Rational) -> Result<((Rational, Rational), RatPoly)> {
    let m = IntMatrix::companion(chi)?;
    let mut factors: Vec<RatPoly> = Vec::new();
    for piece in [exterior_square(&m).charpoly()?, graeffe(chi)] {
        for (f, _) in factor(&piece)?.factors {
            if !factors.contains(&f) {
                factors.push(f);
            }
        }
    }
    let mut best: Option<(RatPoly, Rational, Rational)> = None;
    for f in factors {
        let Some((mut lo, mut hi)) = isolate_real_roots(&f).pop() else { continue };
        best = match best {
            None => Some((f, lo, hi)),
            Some((g, mut glo, mut ghi)) => {
                while lo <= ghi && glo <= hi {
                    let w = (&hi - &lo).max(&ghi - &glo) / int(2);
                    (lo, hi) = refine(&f, &lo, &hi, &w);
                    (glo, ghi) = refine(&g, &glo, &ghi, &w);
                }
                if lo > ghi {
                    Some((f, lo, hi))
                } else {
                    Some((g, glo, ghi))
                }
            }
        };
    }
    let (f, lo, hi) = best.ok_or_else(|| Error::Precondition("no real products of roots".into()))?;
    let (lo, hi) = refine(&f, &lo, &hi, eps);
    Ok(((lo, hi), f))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Fibration {
    /// `λ₁` is quadratic or Salem.
    Fibered,
    /// Irreducible sextic, `λ₁` neither quadratic nor Salem.
    NonFibered,
    /// All roots are roots of unity: `λ₁ = 1`.
    Kronecker,
    Undetermined,
}

#[derive(Clone, Debug, Serialize)]
pub struct FibrationReport {
    pub verdict: Fibration,
    pub lambda1_min_poly: Option<String>,
    pub lambda1_class: Option<Verdict>,
    #[serde(serialize_with = "ser_opt_interval")]
    pub lambda1: Option<(Rational, Rational)>,
}

pub fn fibration_criterion(s: &ReciprocalSextic) -> Result<FibrationReport> {
    fibration_criterion_poly(&s.poly())
}

/// The same dichotomy for any monic reciprocal integer polynomial.
pub fn fibration_criterion_poly(chi: &RatPoly) -> Result<FibrationReport> {
    if classify(chi)?.verdict == Verdict::CyclotomicProduct {
        return Ok(FibrationReport { verdict: Fibration::Kronecker, lambda1_min_poly: None, lambda1_class: None, lambda1: Some((int(1), int(1))) });
    }
    let (iv, mp) = lambda1_enclosure(chi, &Rational::new(BigInt::one(), BigInt::from(1u64 << 40)))?;
    let class = classify(&mp)?.verdict;
    let verdict = if mp.deg() == 2 || class == Verdict::Salem {
        Fibration::Fibered
    } else if irreducibility(chi)?.is_ok() {
        Fibration::NonFibered
    } else {
        Fibration::Undetermined
    };
    Ok(FibrationReport { verdict, lambda1_min_poly: Some(mp.to_string()), lambda1_class: Some(class), lambda1: Some(iv) })
}

#[derive(Clone, Debug, Serialize)]
pub struct ComplexStructure {
    /// Row-major real 6×6 matrix.
    pub j: Vec<Vec<f64>>,
    /// Frobenius norm of `J² + I`.
    pub square_residual: f64,
    /// Frobenius norm of `JM − MJ`.
    pub commutator_residual: f64,
    pub within_tol: bool,
}

/// `J` acts as `i` on the eigenvectors of `M_χ` with eigenvalue in the upper half plane and as
/// `−i` on their conjugates.
pub fn complex_structure(s: &ReciprocalSextic, tol: f64) -> Result<ComplexStructure> {
    let adm = admissible(s);
    if !adm.admissible {
        return Err(Error::Precondition(format!("{s:?} is not admissible")));
    }
    let chi = s.poly();
    let n = chi.deg();
    let disks = certified_roots(&chi)?;
    if disks.iter().any(|d| !d.in_upper_half() && !d.in_lower_half()) {
        return Err(Error::Numerical("eigenvalue not separated from the real axis".into()));
    }
    let roots: Vec<Complex64> = disks.iter().map(RootDisk::approx).collect();
    let comp = s.companion();
    let m = DMatrix::from_fn(n, n, |i, j| to_f64(&Rational::from_integer(comp.get(i, j).clone())));
    // The companion matrix has eigenvectors (1, λ, …, λ⁵) for its transpose.
    let v = DMatrix::from_fn(n, n, |i, j| roots[j].powu(i as u32));
    let vinv = v.clone().try_inverse().ok_or_else(|| Error::Numerical("eigenvector matrix is singular".into()))?;
    let d = DMatrix::from_fn(n, n, |i, j| {
        if i != j {
            Complex64::zero()
        } else if roots[i].im > 0.0 {
            Complex64::i()
        } else {
            -Complex64::i()
        }
    });
    let jt = &v * d * vinv;
    let j = DMatrix::from_fn(n, n, |r, c| jt[(c, r)].re);
    let square_residual = (&j * &j + DMatrix::<f64>::identity(n, n)).norm();
    let commutator_residual = (&j * &m - &m * &j).norm();
    Ok(ComplexStructure {
        j: (0..n).map(|r| (0..n).map(|c| j[(r, c)]).collect()).collect(),
        square_residual,
        commutator_residual,
        within_tol: square_residual < tol && commutator_residual < tol,
    })
}

/// One search hit with everything the torus pipeline reports about it.
#[derive(Clone, Debug, Serialize)]
pub struct TorusRecord {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub admissible: bool,
    pub verdict: Fibration,
    #[serde(serialize_with = "ser_opt_interval")]
    pub lambda1_enclosure: Option<(Rational, Rational)>,
    pub lambda1_equals_lambda2: bool,
    /// Reciprocity, `λ₂ = 1/|γ|²` and a non-real `α` all hold on the certified boxes.
    pub spectrum_consistent: bool,
    pub residuals: Option<(f64, f64)>,
}

pub fn analyze(s: &ReciprocalSextic, eps: &Rational, tol: Option<f64>) -> Result<TorusRecord> {
    let sp = spectrum(s, eps)?;
    let fib = fibration_criterion(s)?;
    let residuals = match tol {
        Some(t) => {
            let cs = complex_structure(s, t)?;
            Some((cs.square_residual, cs.commutator_residual))
        }
        None => None,
    };
    Ok(TorusRecord {
        a: s.a,
        b: s.b,
        c: s.c,
        admissible: true,
        verdict: fib.verdict,
        lambda1_enclosure: Some(sp.lambda1),
        lambda1_equals_lambda2: sp.lambda1_equals_lambda2,
        spectrum_consistent: sp.reciprocity && sp.lambda2_matches_gamma && sp.alpha_nonreal,
        residuals,
    })
}

/// `trace_poly` of the sextic agrees with the closed-form cubic.
pub fn theta_matches_trace(s: &ReciprocalSextic) -> bool {
    trace_poly(&s.poly()).map(|q| q == s.theta()).unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;

    fn example() -> ReciprocalSextic {
        ReciprocalSextic::new(1, 0, -2)
    }

    #[test]
    fn example_is_admissible() {
        let adm = admissible(&example());
        assert!(adm.admissible, "{adm:?}");
        assert_eq!(example().theta(), RatPoly::from_ints(&[-4, -3, 1, 1]));
        assert!(theta_matches_trace(&example()));
    }

    #[test]
    fn cyclotomic_rejected() {
        assert!(!admissible(&ReciprocalSextic::new(0, 0, 0)).admissible);
    }

    #[test]
    fn graeffe_squares_roots() {
        // (x − 2)(x + 3) ↦ (x − 4)(x − 9)
        assert_eq!(graeffe(&RatPoly::from_ints(&[-6, 1, 1])), RatPoly::from_ints(&[36, -13, 1]));
    }

    #[test]
    fn example_spectrum() {
        let sp = spectrum(&example(), &rat(1, 1_000_000_000)).unwrap();
        assert!(sp.beta_on_circle && sp.alpha_nonreal && sp.reciprocity && sp.lambda2_matches_gamma);
        assert_eq!(fibration_criterion(&example()).unwrap().verdict, Fibration::NonFibered);
        let cs = complex_structure(&example(), 1e-9).unwrap();
        assert!(cs.within_tol, "{cs:?}");
    }

    #[test]
    fn quadratic_times_cyclotomic_is_fibered() {
        // (t² − 3t + 1)(t⁴ + 1)
        let r = fibration_criterion(&ReciprocalSextic::new(-3, 1, 0)).unwrap();
        assert_eq!(r.verdict, Fibration::Fibered, "{r:?}");
    }
}
