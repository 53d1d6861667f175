//! The surface map `g` on the plane `{x₀ = 0}`: its exceptional curves, indeterminacy points and
//! the dynamics on the exceptional divisor over `e₁`.
//!
//! Plane coordinates are `(x₁, x₂, x₃)`, stored as variables `0, 1, 2`.

use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::maps::{iterates, Maps};
use crate::exact::{Field, QuadExt, Rational, UniPoly};
use crate::mpoly::{Frac, Image, MultiPoly, ProjPoint, RationalMap, Reducer};
use crate::report::Check;

fn k(n: usize, c: &QuadExt) -> MultiPoly {
    MultiPoly::constant(n, c.clone())
}

fn pt(cs: Vec<QuadExt>) -> ProjPoint {
    ProjPoint::new(cs).expect("nonzero point")
}

fn rand_q(rng: &mut ChaCha8Rng) -> QuadExt {
    let n: i64 = rng.gen_range(1..=1000) * if rng.gen_bool(0.5) { 1 } else { -1 };
    let d: i64 = rng.gen_range(1..=1000);
    QuadExt::rational(Rational::new(n.into(), d.into()))
}

/// The distinguished points of the plane for the pair `(a, c)`.
pub struct SurfacePoints {
    pub e1: ProjPoint,
    pub e2: ProjPoint,
    pub e3: ProjPoint,
    /// `[1 : (a+c)⁻¹ : a/c]`, the image of `{c·x₂ + x₃ = 0}`.
    pub p3: ProjPoint,
    /// `[c(a+c) : −a : a(a+c)]`, the fourth indeterminacy point.
    pub p_last: ProjPoint,
}

impl SurfacePoints {
    pub fn new(m: &Maps) -> Self {
        let (a, c) = (&m.a, &m.c);
        let apc = a + c;
        SurfacePoints {
            e1: ProjPoint::basis(3, 0),
            e2: ProjPoint::basis(3, 1),
            e3: ProjPoint::basis(3, 2),
            p3: pt(vec![QuadExt::one(), apc.inv(), a / c]),
            p_last: pt(vec![c * &apc, -a.clone(), a * &apc]),
        }
    }
}

/// A curve of the plane with a parametrization `[s : t] ↦ point`, injective on `P¹`.
struct ParamCurve {
    name: &'static str,
    equation: MultiPoly,
    param: Vec<MultiPoly>,
}

fn exceptional_curves(m: &Maps) -> Vec<ParamCurve> {
    let (s, t) = (MultiPoly::var(2, 0), MultiPoly::var(2, 1));
    let (y1, y2, y3) = (MultiPoly::var(3, 0), MultiPoly::var(3, 1), MultiPoly::var(3, 2));
    let c2 = k(2, &m.c);
    let cs_t = c2.mul(&s).add(&t);
    let st = s.mul(&t);
    let apc = &m.a + &m.c;
    vec![
        ParamCurve { name: "L1", equation: y3.clone(), param: vec![s.clone(), t.clone(), MultiPoly::zero(2)] },
        ParamCurve { name: "L2", equation: k(3, &m.c).mul(&y2).add(&y3), param: vec![s.clone(), t.clone(), c2.mul(&t).neg()] },
        ParamCurve { name: "L3", equation: m.q(), param: vec![c2.mul(&st).neg(), s.mul(&cs_t), t.mul(&cs_t)] },
        ParamCurve { name: "L4", equation: m.q().add(&k(3, &m.a).mul(&y2).mul(&y3)), param: vec![k(2, &apc).mul(&st).neg(), s.mul(&cs_t), t.mul(&cs_t)] },
        ParamCurve { name: "x2=0", equation: y2, param: vec![s.clone(), MultiPoly::zero(2), t.clone()] },
        ParamCurve { name: "x1=0", equation: y1, param: vec![MultiPoly::zero(2), s, t] },
    ]
}

fn curve(curves: &[ParamCurve], name: &str) -> usize {
    curves.iter().position(|c| c.name == name).expect("known curve")
}

/// Binary form `p(s, t)` as a polynomial in `s` with `t = 1`.
fn dehomogenize(p: &MultiPoly) -> UniPoly<QuadExt> {
    let d = p.degree() as usize;
    let mut cs = vec![QuadExt::zero(); d + 1];
    for (m, c) in p.terms() {
        cs[m.0[0] as usize] = c.clone();
    }
    UniPoly::new(cs)
}

/// Distinct common zeros on `P¹` of binary forms.
fn common_zero_count(forms: &[MultiPoly]) -> usize {
    let forms: Vec<&MultiPoly> = forms.iter().filter(|f| !f.is_zero()).collect();
    let g = forms.iter().map(|f| dehomogenize(f)).fold(UniPoly::zero(), |acc, p| acc.gcd(&p));
    let at_infinity = forms.iter().all(|f| dehomogenize(f).deg() < f.degree() as usize);
    g.squarefree_part().deg() + usize::from(at_infinity)
}

/// Random parameter values for a curve, avoiding the few where the parametrization meets
/// the coordinate points.
fn sample_params(rng: &mut ChaCha8Rng, c: &QuadExt, n: usize) -> Vec<[QuadExt; 2]> {
    let mut out = Vec::new();
    while out.len() < n {
        let (s, t) = (rand_q(rng), rand_q(rng));
        if !(&(c * &s) + &t).is_zero() {
            out.push([s, t]);
        }
    }
    out
}

/// Images of the four exceptional curves and the indeterminacy set of `g`.
pub fn g_exceptional_report(m: &Maps, seed: u64, samples: usize) -> Vec<Check> {
    let g = m.g();
    let pts = SurfacePoints::new(m);
    let curves = exceptional_curves(m);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::new();

    let targets = [("L1", &pts.e1, "e1"), ("L2", &pts.p3, "p3"), ("L3", &pts.e3, "e3"), ("L4", &pts.e2, "e2")];
    for (name, target, tname) in targets {
        let cv = &curves[curve(&curves, name)];
        let mut ok = true;
        let mut bad = Vec::new();
        for [s, t] in sample_params(&mut rng, &m.c, samples) {
            let p = pt(cv.param.iter().map(|f| f.eval(&[s.clone(), t.clone()])).collect());
            ok &= cv.equation.eval(&p.coords).is_zero();
            match g.evaluate(&p) {
                Ok(Image::Point(q)) if &q == target => {}
                other => {
                    ok = false;
                    bad.push(format!("{p} -> {other:?}"));
                }
            }
        }
        let details = if ok { format!("{samples} sampled points map to {target}") } else { bad.join("; ") };
        checks.push(Check::new(format!("g-image-{name}"), format!("g contracts {name} to {tname}"), ok, details));
    }

    let listed = [&pts.e1, &pts.e2, &pts.e3, &pts.p_last];
    let vanish = listed.iter().all(|p| g.eval_raw(&p.coords).iter().all(Zero::is_zero));
    checks.push(Check::new(
        "g-indeterminacy-points",
        "every coordinate of g vanishes at e1, e2, e3 and p_{4l-1}",
        vanish,
        format!("p_{{4l-1}} = {}", pts.p_last),
    ));

    // The middle coordinate is x₂·x₃·Q, so every common zero lies on one of these three curves.
    let mut complete = true;
    let mut notes = Vec::new();
    for name in ["x2=0", "L1", "L3"] {
        let cv = &curves[curve(&curves, name)];
        let pulled: Vec<MultiPoly> = g.coords().iter().map(|f| f.substitute(&cv.param)).collect();
        let zeros = common_zero_count(&pulled);
        let on_curve = listed.iter().filter(|p| cv.equation.eval(&p.coords).is_zero()).count();
        complete &= zeros == on_curve;
        notes.push(format!("{name}: {zeros} common zeros, {on_curve} listed"));
    }
    checks.push(Check::new("g-indeterminacy-complete", "g has no indeterminacy points besides e1, e2, e3, p_{4l-1}", complete, notes.join("; ")));

    let special = [&pts.e1, &pts.e2, &pts.e3, &pts.p3];
    let exc: Vec<&MultiPoly> = ["L1", "L2", "L3", "L4"].iter().map(|n| &curves[curve(&curves, n)].equation).collect();
    let mut generic_ok = false;
    let mut detail = String::from("no generic sample found");
    for _ in 0..20 {
        let p = pt((0..3).map(|_| rand_q(&mut rng)).collect());
        if exc.iter().any(|e| e.eval(&p.coords).is_zero()) {
            continue;
        }
        if let Ok(Image::Point(q)) = g.evaluate(&p) {
            generic_ok = !special.contains(&&q);
            detail = format!("{p} -> {q}");
        }
        break;
    }
    checks.push(Check::new("g-generic-point", "g is regular off its exceptional curves", generic_ok, detail));
    checks
}

/// Image of `g⁻¹ ∘ g` and `f⁴` restricted to the invariant plane, compared with `g`.
pub fn surface_regression(m: &Maps, reducer: &Reducer) -> Vec<Check> {
    let mut checks = Vec::new();
    let f4 = iterates(&m.f(), 4, &m.hints(), reducer).pop().expect("four iterates");
    let restricted = f4.restrict_to_plane(0).map(|r| reducer.reduce(&r, &m.surface_hints()).0);
    let (ok, details) = match &restricted {
        Ok(r) => (r.same_as(&m.g()), format!("deg f^4 = {}, restriction has degree {}", f4.degree(), r.degree())),
        Err(e) => (false, e.to_string()),
    };
    checks.push(Check::new("g-from-f4", "f^4 restricted to x0 = 0 is g up to scalar", ok, details));
    checks.push(Check::new("g-degree", "g has degree 4", m.g().degree() == 4, format!("degree {}", m.g().degree())));

    for (name, outer, inner) in [("g-inverse-right", m.g(), m.g_inv()), ("g-inverse-left", m.g_inv(), m.g())] {
        let c = RationalMap::compose(&outer, &inner).expect("plane maps");
        let r = reducer.reduce(&c, &m.surface_hints()).0;
        checks.push(Check::new(name, "g and g^-1 are inverse", r.same_as(&RationalMap::identity(3)), r.to_string()));
    }
    checks
}

fn frac2(num: MultiPoly, den: MultiPoly) -> Frac {
    Frac::new(num, den)
}

/// Dynamics of `g` near the exceptional divisor over `e₁`, in the chart `ε(u, v) = [1 : u : uv]`.
pub fn e1_chart_dynamics(m: &Maps, n_max: u64) -> Vec<Check> {
    let (a, c) = (&m.a, &m.c);
    let (u, v) = (MultiPoly::var(2, 0), MultiPoly::var(2, 1));
    let (ka, kc) = (k(2, a), k(2, c));
    let chart = vec![MultiPoly::one(2), u.clone(), u.mul(&v)];
    let gs: Vec<MultiPoly> = m.g().coords().iter().map(|f| f.substitute(&chart)).collect();
    let u_new = frac2(gs[1].clone(), gs[0].clone()).reduced();
    let v_new = frac2(gs[2].clone(), gs[1].clone()).reduced();
    let mut checks = Vec::new();

    // c + v + cuv + auv and c + v + cuv
    let uv = u.mul(&v);
    let d1 = kc.add(&v).add(&kc.mul(&uv)).add(&ka.mul(&uv));
    let d2 = kc.add(&v).add(&kc.mul(&uv));
    let apc_v = k(2, &(a + c)).add(&v);
    let want_u = frac2(uv.clone(), d1.clone());
    let want_v = frac2(apc_v.mul(&d1), d2.clone());
    let formula_ok = u_new.same_as(&want_u) && v_new.same_as(&want_v);
    checks.push(Check::new(
        "e1-chart-formula",
        "g in the chart is [1 : uv/(c+v+cuv+auv) : u'(a+c+v)(c+v+cuv+auv)/(c+v+cuv)]",
        formula_ok,
        format!("u' = {} / {}; v' = {} / {}", u_new.num, u_new.den, v_new.num, v_new.den),
    ));
    let printed = kc.add(&v).add(&kc.mul(&u)).add(&ka.mul(&uv));
    let printed_v = frac2(apc_v.mul(&printed), d2.clone());
    if !v_new.same_as(&printed_v) {
        checks.push(Check::flagged(
            "e1-chart-formula-variant",
            "the chart formula holds with c+v+cu+auv as its second factor",
            "with c+v+cu+auv the chart formula disagrees with g; c+v+cuv+auv agrees",
        ));
    }

    let zero = QuadExt::zero();
    let on_e1 = |f: &MultiPoly| f.set_var(0, &zero).drop_var(0);
    let u_num0 = on_e1(&u_new.num);
    let u_den0 = on_e1(&u_new.den);
    let (v_num0, v_den0) = (on_e1(&v_new.num), on_e1(&v_new.den));
    let v1 = MultiPoly::var(1, 0);
    let shift = v1.add(&k(1, &(a + c)));
    checks.push(Check::new("e1-invariant", "g maps E1 = {u = 0} into itself", u_num0.is_zero() && !u_den0.is_zero(), format!("u' on E1 = 0 / ({u_den0})")));
    checks.push(Check::new(
        "e1-translation",
        "on E1, v' = v + (a + c)",
        !v_den0.is_zero() && v_num0 == shift.mul(&v_den0),
        format!("v' on E1 = ({v_num0}) / ({v_den0})"),
    ));

    // Denominators on E₁ vanish only at v = −c, where v' is 0/0 with coprime numerator and denominator.
    let vc = v1.add(&k(1, c));
    let only_at = |p: &MultiPoly| {
        let mut r = p.clone();
        while let Some(q) = r.exact_div(&vc) {
            r = q;
        }
        r.is_constant()
    };
    let at = [zero.clone(), -c.clone()];
    let indeterminate = v_new.num.eval(&at).is_zero() && v_new.den.eval(&at).is_zero();
    let unique = only_at(&u_den0) && only_at(&v_den0) && !v_den0.is_constant();
    checks.push(Check::new(
        "e1-indeterminacy",
        "the only indeterminacy point on E1 is v = -c",
        indeterminate && unique,
        format!("v' numerator and denominator vanish at (0, -c): {indeterminate}; denominators on E1 supported at v = -c: {unique}"),
    ));

    // L₁ = {x₃ = 0} in the plane coordinates: u = G1/G0, v = G2/G1.
    let gp = m.g();
    let gc = gp.coords();
    let uu = frac2(gc[1].clone(), gc[0].clone()).reduced();
    let vv = frac2(gc[2].clone(), gc[1].clone()).reduced();
    let l1 = |f: &MultiPoly| f.set_var(2, &zero);
    let lands = l1(&uu.num).is_zero() && !l1(&uu.den).is_zero() && !l1(&vv.den).is_zero() && l1(&vv.num) == l1(&vv.den).scale(&(a + c));
    checks.push(Check::new("l1-lands-on-e1", "the strict transform of L1 goes to (u, v) = (0, a + c)", lands, format!("v = ({}) / ({})", vv.num, vv.den)));

    let ratio = a / c;
    let structural = !ratio.im.is_zero() && ratio.disc < 0;
    let mut first_hit = None;
    for n in 1..=n_max {
        let nn = QuadExt::from_int(n as i64);
        let val = &(&nn * a) + &(&(&nn + &QuadExt::one()) * c);
        if val.is_zero() {
            first_hit = Some(n);
            break;
        }
    }
    checks.push(Check::new(
        "e1-orbit-avoids-indeterminacy",
        "n·a + (n+1)·c ≠ 0 for n ≥ 1 since a/c is not real",
        structural && first_hit.is_none(),
        format!("a/c = {ratio}; exhaustive check to n = {n_max}: {}", first_hit.map_or("clear".into(), |n| format!("hit at {n}"))),
    ));
    checks
}
