//! The invariant curve cycle `β₂ → β₃ → β₀ → β₁ → β₂` and the orbit it carries.
//!
//! Each curve has a fixed affine parameter `t`:
//! - `β₂`: `[1 : t : 0 : ct/a]` in `P³`;
//! - `β₃`: the point `(0, t, c/a)` of the chart `π(s, u₁, u₂) = [s : su₁ : su₂ : 1]` over `e₃`;
//! - `β₀`: `[0 : t : 1 : (a/c)t]` in `P³`;
//! - `β₁`: the point `(0, a/c, t)` of the chart `π(u, v, w) = [u : 1 : uv : uw]` over `e₁`.
//!
//! On each curve the map acts by an affine substitution in `t`.

use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::exact::{QuadExt, UniPoly};
use crate::mpoly::ProjPoint;
use crate::report::Check;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Curve {
    Beta0,
    Beta1,
    Beta2,
    Beta3,
}

impl Curve {
    pub fn next(self) -> Curve {
        match self {
            Curve::Beta2 => Curve::Beta3,
            Curve::Beta3 => Curve::Beta0,
            Curve::Beta0 => Curve::Beta1,
            Curve::Beta1 => Curve::Beta2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Curve::Beta0 => "β₀",
            Curve::Beta1 => "β₁",
            Curve::Beta2 => "β₂",
            Curve::Beta3 => "β₃",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Chart {
    /// `(s, u₁, u₂) ↦ [s : su₁ : su₂ : 1]`, exceptional divisor `{s = 0}`.
    E3,
    /// `(u, v, w) ↦ [u : 1 : uv : uw]`, exceptional divisor `{u = 0}`.
    E1,
    /// `(u, v) ↦ [1 : u : uv]` on the plane `{x₀ = 0}`.
    E1Surface,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChartPoint {
    pub chart: Chart,
    pub coords: Vec<QuadExt>,
}

impl ChartPoint {
    /// The image in projective space; points on the exceptional divisor go to its center.
    pub fn project(&self) -> ProjPoint {
        let one = QuadExt::one;
        let k = &self.coords;
        let coords = match self.chart {
            Chart::E3 => vec![k[0].clone(), &k[0] * &k[1], &k[0] * &k[2], one()],
            Chart::E1 => vec![k[0].clone(), one(), &k[0] * &k[1], &k[0] * &k[2]],
            Chart::E1Surface => vec![one(), k[0].clone(), &k[0] * &k[1]],
        };
        ProjPoint::new(coords).expect("chart images are nonzero")
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CurveParam {
    pub curve: Curve,
    pub t: QuadExt,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum Location {
    Point(ProjPoint),
    Chart(ChartPoint),
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Location::Point(p) => write!(f, "{p}"),
            Location::Chart(c) => {
                let parts: Vec<String> = c.coords.iter().map(ToString::to_string).collect();
                write!(f, "{:?}({})", c.chart, parts.join(", "))
            }
        }
    }
}

/// The pair `(a, c)` with the curve parametrizations and step formulas attached.
#[derive(Clone, Debug)]
pub struct Cycle {
    pub a: QuadExt,
    pub c: QuadExt,
}

#[derive(Clone, Debug, PartialEq)]
pub enum BetaImage {
    Curve(CurveParam),
    Indeterminate,
}

impl Cycle {
    /// Panics when `a` or `c` is zero.
    pub fn new(a: QuadExt, c: QuadExt) -> Self {
        assert!(!a.is_zero() && !c.is_zero(), "parameters must be nonzero");
        Cycle { a, c }
    }

    pub fn locate(&self, p: &CurveParam) -> Location {
        let (a, c, t) = (&self.a, &self.c, &p.t);
        let zero = QuadExt::zero();
        let one = QuadExt::one();
        match p.curve {
            Curve::Beta2 => Location::Point(ProjPoint::new(vec![one, t.clone(), zero, &(c * t) / a]).expect("x0 = 1")),
            Curve::Beta3 => Location::Chart(ChartPoint { chart: Chart::E3, coords: vec![zero, t.clone(), c / a] }),
            Curve::Beta0 => {
                let p = vec![zero, t.clone(), one, &(a * t) / c];
                Location::Point(ProjPoint::new(p).expect("x2 = 1"))
            }
            Curve::Beta1 => Location::Chart(ChartPoint { chart: Chart::E1, coords: vec![zero, a / c, t.clone()] }),
        }
    }

    /// The step on `curve` as a polynomial in its parameter.
    pub fn step_poly(&self, curve: Curve) -> UniPoly<QuadExt> {
        let (a, c) = (&self.a, &self.c);
        match curve {
            // [1:t:0:ct/a] lands on E₃ at (0, (a² + ct)/a, c/a).
            Curve::Beta2 => UniPoly::new(vec![a.clone(), c / a]),
            // (0, u₁, c/a) goes to [0 : 1 : 1/u₁ : a/c] = [0 : u₁ : 1 : (a/c)u₁].
            Curve::Beta3 => UniPoly::x(),
            // [0:t:1:(a/c)t] lands on E₁ at (0, a/c, (a/c)t + c).
            Curve::Beta0 => UniPoly::new(vec![c.clone(), a / c]),
            // (0, a/c, w) goes to [1 : w + a : 0 : c(w + a)/a].
            Curve::Beta1 => UniPoly::new(vec![a.clone(), QuadExt::one()]),
        }
    }

    /// Parameters where the step is undefined: `β₂` at `t = 0` is `e₀`, `β₀` at `t = 0` is `e₂`.
    pub fn is_indeterminate(&self, p: &CurveParam) -> bool {
        matches!(p.curve, Curve::Beta2 | Curve::Beta0) && p.t.is_zero()
    }

    pub fn beta_step(&self, p: &CurveParam) -> BetaImage {
        if self.is_indeterminate(p) {
            return BetaImage::Indeterminate;
        }
        BetaImage::Curve(CurveParam { curve: p.curve.next(), t: self.step_poly(p.curve).eval(&p.t) })
    }

    /// Composite of the four steps starting on `curve`, as a polynomial in `t`.
    pub fn return_map(&self, curve: Curve) -> UniPoly<QuadExt> {
        let mut acc = UniPoly::x();
        let mut cur = curve;
        for _ in 0..4 {
            acc = self.step_poly(cur).compose(&acc);
            cur = cur.next();
        }
        acc
    }

    /// Forward orbit of `start` for at most `steps` steps, stopping at the first indeterminate location.
    pub fn orbit(&self, start: CurveParam, steps: usize) -> OrbitTrace {
        let mut trace = OrbitTrace { steps: Vec::new() };
        let mut cur = start;
        for k in 0..=steps {
            let status = self.status(&cur);
            trace.steps.push(OrbitStep { k, location: self.locate(&cur), param: cur.clone(), status });
            if status != StepStatus::Regular || k == steps {
                break;
            }
            match self.beta_step(&cur) {
                BetaImage::Curve(next) => cur = next,
                BetaImage::Indeterminate => unreachable!("regular locations have images"),
            }
        }
        trace
    }

    fn status(&self, p: &CurveParam) -> StepStatus {
        match (p.curve, p.t.is_zero()) {
            (Curve::Beta2, true) => StepStatus::ReachedE0,
            (Curve::Beta0, true) => StepStatus::HitIndeterminacy,
            _ => StepStatus::Regular,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum StepStatus {
    Regular,
    HitIndeterminacy,
    ReachedE0,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OrbitStep {
    pub k: usize,
    pub param: CurveParam,
    pub location: Location,
    pub status: StepStatus,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OrbitTrace {
    pub steps: Vec<OrbitStep>,
}

impl OrbitTrace {
    pub fn last(&self) -> &OrbitStep {
        self.steps.last().expect("a trace holds its start")
    }

    pub fn reached_e0_at(&self) -> Option<usize> {
        let last = self.last();
        (last.status == StepStatus::ReachedE0).then_some(last.k)
    }

    /// Every step before the last is regular.
    pub fn regular_until_end(&self) -> bool {
        self.steps[..self.steps.len() - 1].iter().all(|s| s.status == StepStatus::Regular)
    }
}

/// Orbit of `p₁ = (β₂, t = a)` for `4ℓ` steps. It ends at `e₀` on step `4ℓ` exactly when
/// `ℓa² + (ℓ+1)ac + ℓc² = 0`.
pub fn verify_ell_condition(ell: usize, a: &QuadExt, c: &QuadExt) -> OrbitTrace {
    let cycle = Cycle::new(a.clone(), c.clone());
    cycle.orbit(CurveParam { curve: Curve::Beta2, t: a.clone() }, 4 * ell)
}

/// Does the orbit of `ℓ` reach `e₀` at step `4ℓ` through regular steps only?
pub fn ell_condition_holds(ell: usize, trace: &OrbitTrace) -> bool {
    trace.reached_e0_at() == Some(4 * ell) && trace.regular_until_end()
}

/// The ℓ-condition orbit and the four-step translations on `β₂` and `β₀`.
pub fn cycle_report(ell: usize, a: &QuadExt, c: &QuadExt) -> Vec<Check> {
    let cycle = Cycle::new(a.clone(), c.clone());
    let trace = verify_ell_condition(ell, a, c);
    let last = trace.last();
    let mut checks = vec![Check::new(
        "ell-condition-orbit",
        "the orbit of p1 reaches e0 after exactly 4ℓ regular steps",
        ell_condition_holds(ell, &trace),
        format!("{} steps, last at {} with status {:?}", trace.steps.len() - 1, last.location, last.status),
    )];
    let s = &(&(a * a) + &(a * c)) + &(c * c);
    for (name, curve, den) in [("beta2-return-translation", Curve::Beta2, c), ("beta0-return-translation", Curve::Beta0, a)] {
        let h = cycle.return_map(curve);
        let want = UniPoly::new(vec![&s / den, QuadExt::one()]);
        checks.push(Check::new(
            name,
            format!("the return map on {} is t ↦ t + (a² + ac + c²)/{}", curve.name(), if curve == Curve::Beta2 { "c" } else { "a" }),
            h == want,
            format!("return map {h}"),
        ));
    }
    checks
}
