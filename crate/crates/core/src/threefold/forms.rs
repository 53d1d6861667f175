//! The invariant volume form, the Jacobian of the cubic lift and the arithmetic behind the
//! absence of an invariant fibration.

use num_traits::{One, Zero};

use super::maps::Maps;
use crate::exact::{QuadExt, RatPoly};
use crate::mpoly::frac::det;
use crate::mpoly::{factor_against, Frac, MultiPoly, RationalMap};
use crate::report::Check;

/// Affine expression of a self-map of `P³` in the chart `x₃ = 1`.
pub fn affine_chart(m: &RationalMap) -> Vec<Frac> {
    let one = QuadExt::one();
    let cs: Vec<MultiPoly> = m.coords().iter().map(|f| f.set_var(3, &one).drop_var(3)).collect();
    (0..3).map(|i| Frac::new(cs[i].clone(), cs[3].clone())).collect()
}

/// Coefficient `1/(x₀²x₂²)` of `Ω = d(1/x₀) ∧ dx₁ ∧ d(1/x₂)` against `dx₀ ∧ dx₁ ∧ dx₂`.
pub fn omega_coefficient(x: &[Frac]) -> Frac {
    x[0].mul(&x[0]).mul(&x[2]).mul(&x[2]).inv()
}

/// Coefficient of `φ*Ω` against `dx₀ ∧ dx₁ ∧ dx₂`.
pub fn pullback(phi: &[Frac]) -> Frac {
    let jac: Vec<Vec<Frac>> = phi.iter().map(|p| (0..3).map(|v| p.derivative(v)).collect()).collect();
    omega_coefficient(phi).mul(&det(&jac))
}

fn x(i: usize) -> Frac {
    Frac::var(3, i)
}

pub fn omega_invariance(m: &Maps) -> Vec<Check> {
    let ident = [x(0), x(1), x(2)];
    let omega = omega_coefficient(&ident);
    let neg_one = Frac::constant(3, QuadExt::from_int(-1));
    let mut checks = Vec::new();

    // dx₂ ∧ dx₀ ∧ d(1/x₁) = −x₁⁻² dx₀ ∧ dx₁ ∧ dx₂
    let l_target = neg_one.mul(&x(1).mul(&x(1)).inv());
    let l_pull = pullback(&affine_chart(&m.l()));
    checks.push(Check::new("omega-L", "L*Ω = dx2 ∧ dx0 ∧ d(1/x1)", l_pull.same_as(&l_target), format!("coefficient {}", show(&l_pull))));

    // J*Ω = dx₀ ∧ d(1/x₁) ∧ dx₂ = −x₁⁻² dx₀ ∧ dx₁ ∧ dx₂, which is not ±Ω.
    let j_pull = pullback(&affine_chart(&m.j()));
    let j_is_pm = j_pull.same_as(&omega) || j_pull.same_as(&omega.neg());
    let j_form = if j_pull.same_as(&l_target) { "dx0 ∧ d(1/x1) ∧ dx2".to_string() } else { show(&j_pull) };
    checks.push(if j_is_pm {
        Check::new("omega-J", "J*Ω = ±Ω", true, format!("coefficient {}", show(&j_pull)))
    } else {
        Check::flagged("omega-J", "J*Ω equals Ω up to sign", format!("J*Ω = {j_form}, not ±Ω; only the composite f = L∘J preserves Ω"))
    });

    let f_pull = pullback(&affine_chart(&m.f()));
    checks.push(Check::new("omega-f", "f*Ω = Ω", f_pull.same_as(&omega), format!("coefficient {}", show(&f_pull))));

    let id_pull = pullback(&ident);
    checks.push(Check::new("omega-identity", "id*Ω = Ω", id_pull.same_as(&omega), String::new()));
    checks
}

fn show(f: &Frac) -> String {
    let r = f.reduced();
    format!("({}) / ({})", r.num, r.den)
}

/// Jacobian determinants of the lifts of `J` and `f = L∘J`, split against the coordinate faces.
pub fn jacobian_report(m: &Maps) -> Vec<Check> {
    let mut checks = Vec::new();
    let hints = m.hints();
    let jj = m.j().jacobian_det().expect("square map");
    let jf = factor_against(&jj, &hints);
    let j_ok = jf.monomial.0 == [2, 2, 2, 2] && jf.factors.is_empty() && jf.residual.is_constant();
    checks.push(Check::new("jacobian-J", "Jac(J) is a scalar times (x0x1x2x3)^2", j_ok, jf.to_string()));

    let fdet = m.f().jacobian_det().expect("square map");
    let ff = factor_against(&fdet, &hints);
    let same_support = ff.monomial == jf.monomial && ff.factors.is_empty() && ff.residual.is_constant();
    checks.push(Check::new(
        "jacobian-F",
        "Jac(F) has the monomial factors of Jac(J) scaled by det L",
        same_support,
        format!("Jac(F) = {ff}, degree {}", fdet.degree()),
    ));
    if fdet.degree() != 4 {
        checks.push(Check::flagged("jacobian-F-degree", "Jac(F) = x0x1x2x3", format!("the determinant of the cubic lift has degree {}: {ff}", fdet.degree())));
    }
    checks
}

/// `a^{2r} + c^{2r} ≠ 0` for `1 ≤ r ≤ r_max`, and `a/c` is not a root of unity.
pub fn fibration_obstruction(a: &QuadExt, c: &QuadExt, r_max: u32) -> Vec<Check> {
    let (a2, c2) = (a * a, c * c);
    let (mut pa, mut pc) = (QuadExt::one(), QuadExt::one());
    let mut failures = Vec::new();
    for r in 1..=r_max {
        pa = &pa * &a2;
        pc = &pc * &c2;
        if (&pa + &pc).is_zero() {
            failures.push(r);
        }
    }
    let mut checks = vec![Check::new(
        "fibration-powers",
        "a^(2r) + c^(2r) ≠ 0",
        failures.is_empty(),
        if failures.is_empty() { format!("1 ≤ r ≤ {r_max}") } else { format!("vanishes for r = {failures:?}") },
    )];
    let ratio = a / c;
    let mp = RatPoly::new(ratio.min_poly());
    // Roots of unity are algebraic integers, so their monic minimal polynomials are integral.
    checks.push(Check::new("fibration-not-root-of-unity", "a/c is not a root of unity", !mp.is_integral(), format!("minimal polynomial of a/c: {mp}")));
    checks
}
