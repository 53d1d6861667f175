//! Integer actions on Picard lattices: `f_X*` and `(f_X⁻¹)*` on the threefold `X`, `g_W*` on the
//! surface `W`, their characteristic polynomials, fixed classes and the degree growth they predict.
//!
//! Matrices act on column vectors; column `j` is the image of basis element `j`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::exact::factor::factor;
use crate::exact::{quad_field_for_ell, IntMatrix, QuadExt, RatPoly, Rational};
use crate::mpoly::Reducer;
use crate::report::Check;
use crate::threefold::maps::{iterates, Maps};
use crate::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Space {
    /// Basis `H, Ê₁, E₂, Ê₃, P₁, …, P_{4ℓ+1}`.
    X,
    /// Basis `L, E₁, E₂, E₃, F₁, …, F_ℓ`; intersection form `diag(1, −1, …, −1)`.
    W,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Basis {
    pub space: Space,
    pub ell: usize,
}

impl Basis {
    pub fn x(ell: usize) -> Self {
        Basis { space: Space::X, ell }
    }

    pub fn w(ell: usize) -> Self {
        Basis { space: Space::W, ell }
    }

    pub fn dim(&self) -> usize {
        match self.space {
            Space::X => 4 * self.ell + 5,
            Space::W => self.ell + 4,
        }
    }

    pub fn labels(&self) -> Vec<String> {
        let (head, tail, n) = match self.space {
            Space::X => (["H", "Ê1", "E2", "Ê3"], "P", 4 * self.ell + 1),
            Space::W => (["L", "E1", "E2", "E3"], "F", self.ell),
        };
        head.iter().map(|s| s.to_string()).chain((1..=n).map(|j| format!("{tail}{j}"))).collect()
    }

    /// Index of `P_j` or `F_j`, counting from 1.
    pub fn tail(&self, j: usize) -> usize {
        3 + j
    }
}

/// An integer combination of basis classes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DivisorClass {
    pub basis: Basis,
    pub coeffs: Vec<i64>,
}

impl DivisorClass {
    pub fn new(basis: Basis, coeffs: Vec<i64>) -> Self {
        assert_eq!(coeffs.len(), basis.dim(), "class length must match the basis");
        DivisorClass { basis, coeffs }
    }

    pub fn to_bigints(&self) -> Vec<BigInt> {
        self.coeffs.iter().map(|&c| BigInt::from(c)).collect()
    }

    /// Intersection number on `W`.
    pub fn dot(&self, rhs: &DivisorClass) -> i64 {
        assert_eq!(self.basis.space, Space::W, "the intersection form is only defined on W");
        intersection(&self.coeffs, &rhs.coeffs)
    }
}

fn intersection(u: &[i64], v: &[i64]) -> i64 {
    u[0] * v[0] - u[1..].iter().zip(&v[1..]).map(|(a, b)| a * b).sum::<i64>()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LatticeAction {
    pub basis: Basis,
    pub matrix: IntMatrix,
}

impl LatticeAction {
    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        self.matrix.mul_vec(v).expect("vector length matches the basis")
    }

    pub fn charpoly(&self) -> RatPoly {
        self.matrix.charpoly().expect("square matrix")
    }
}

fn columns_to_action(basis: Basis, cols: Vec<Vec<i64>>) -> LatticeAction {
    let matrix = IntMatrix::from_columns(&cols).expect("square column list");
    LatticeAction { basis, matrix }
}

fn class(dim: usize, entries: &[(usize, i64)]) -> Vec<i64> {
    let mut v = vec![0; dim];
    for &(i, c) in entries {
        v[i] += c;
    }
    v
}

/// `f_X*` on `Pic(X)`.
pub fn build_fx_star(ell: usize) -> LatticeAction {
    let b = Basis::x(ell);
    let n = b.dim();
    let last = b.tail(4 * ell + 1);
    let (h, e1, e2, e3) = (0, 1, 2, 3);
    let mut cols = vec![
        class(n, &[(h, 3), (e1, -2), (e2, -2), (e3, -2), (last, -2)]),
        class(n, &[(h, 1), (e1, -1), (e2, -1), (e3, -1)]),
        class(n, &[(h, 1), (e2, -1), (e3, -1), (last, -1)]),
        class(n, &[(h, 1), (e1, -1), (e3, -1), (last, -1)]),
        class(n, &[(h, 1), (e1, -1), (e2, -1), (last, -1)]),
    ];
    for j in 2..=4 * ell + 1 {
        cols.push(class(n, &[(b.tail(j - 1), 1)]));
    }
    columns_to_action(b, cols)
}

/// `(f_X⁻¹)*` on `Pic(X)`.
pub fn build_fx_inv_star(ell: usize) -> LatticeAction {
    let b = Basis::x(ell);
    let n = b.dim();
    let first = b.tail(1);
    let (h, e1, e2, e3) = (0, 1, 2, 3);
    let mut cols = vec![
        class(n, &[(h, 3), (e1, -2), (e2, -2), (e3, -2), (first, -2)]),
        class(n, &[(h, 1), (e1, -1), (e3, -1), (first, -1)]),
        class(n, &[(h, 1), (e1, -1), (e2, -1), (first, -1)]),
        class(n, &[(h, 1), (e1, -1), (e2, -1), (e3, -1)]),
    ];
    for j in 1..=4 * ell {
        cols.push(class(n, &[(b.tail(j + 1), 1)]));
    }
    cols.push(class(n, &[(h, 1), (e2, -1), (e3, -1), (first, -1)]));
    columns_to_action(b, cols)
}

/// `g_W*` on `Pic(W)`.
pub fn build_gw_star(ell: usize) -> LatticeAction {
    let b = Basis::w(ell);
    let n = b.dim();
    let f_last = b.tail(ell);
    let (l, e1, e2, e3) = (0, 1, 2, 3);
    let mut cols = vec![
        class(n, &[(l, 4), (e1, -2), (e2, -2), (e3, -1), (f_last, -1)]),
        class(n, &[(l, 1), (e2, -1)]),
        class(n, &[(l, 2), (e1, -1), (e2, -1), (e3, -1)]),
        class(n, &[(l, 2), (e1, -1), (e2, -1), (f_last, -1)]),
        class(n, &[(l, 1), (e1, -1)]),
    ];
    for j in 2..=ell {
        cols.push(class(n, &[(b.tail(j - 1), 1)]));
    }
    columns_to_action(b, cols)
}

/// `χ_ℓ(x) = x^{4ℓ+1}(x⁴ − x² − x − 1) + x⁴ + x³ + x² − 1`.
pub fn chi_ell(ell: usize) -> RatPoly {
    let head = RatPoly::from_ints(&[-1, -1, -1, 0, 1]).mul(&RatPoly::monomial(Rational::one(), 4 * ell + 1));
    head.add(&RatPoly::from_ints(&[-1, 0, 1, 1, 1]))
}

/// `x^ℓ − x^{ℓ−1} − … − x − 1`.
pub fn pisot_poly(ell: usize) -> RatPoly {
    let mut cs = vec![-1; ell + 1];
    cs[ell] = 1;
    RatPoly::from_ints(&cs)
}

/// `x²(x − 1)²(x^ℓ − … − 1)`.
pub fn gw_charpoly_closed(ell: usize) -> RatPoly {
    let x2 = RatPoly::monomial(Rational::one(), 2);
    let xm1 = RatPoly::from_ints(&[-1, 1]);
    x2.mul(&xm1.pow(2)).mul(&pisot_poly(ell))
}

/// `T(x) = x³ − x² − 1`.
pub fn t_cubic() -> RatPoly {
    RatPoly::from_ints(&[-1, 0, -1, 1])
}

pub fn verify_fx(ell: usize) -> Vec<Check> {
    let m = build_fx_star(ell);
    let mi = build_fx_inv_star(ell);
    let n = m.basis.dim();
    let mut checks = Vec::new();
    let prod = m.matrix.checked_mul(&mi.matrix).expect("same size");
    let prod2 = mi.matrix.checked_mul(&m.matrix).expect("same size");
    let id = IntMatrix::identity(n);
    checks.push(Check::new("fx-inverse-pair", "f_X* and (f_X^-1)* are inverse", prod == id && prod2 == id, format!("{n}×{n}")));
    let (d, di) = (m.matrix.det().expect("square"), mi.matrix.det().expect("square"));
    checks.push(Check::new("fx-unimodular", "det = ±1", d.abs().is_one() && di.abs().is_one(), format!("det f* = {d}, det (f^-1)* = {di}")));

    let chi = chi_ell(ell);
    let (cp, cpi) = (m.charpoly(), mi.charpoly());
    checks.push(Check::new("fx-charpoly", "charpoly(f_X*) = χ_ℓ", cp == chi, format!("χ_{ell} = {chi}")));
    checks.push(Check::new("fx-inv-charpoly", "charpoly((f_X^-1)*) = χ_ℓ", cpi == chi, format!("{cpi}")));

    let x4m1 = RatPoly::from_ints(&[-1, 0, 0, 0, 1]);
    let divides = chi.div_rem(&x4m1).1.is_zero();
    let one = Rational::one();
    let simple = chi.eval(&one).is_zero() && !chi.derivative().eval(&one).is_zero();
    checks.push(Check::new("chi-cyclotomic-part", "(x^4 - 1) divides χ_ℓ and x = 1 is a simple root", divides && simple, String::new()));

    // χ_ℓ/(x+1) = x^{4ℓ+1}T(x) − x³T(1/x)
    let t = t_cubic();
    let rev = t.reverse(3);
    let rhs = RatPoly::monomial(Rational::one(), 4 * ell + 1).mul(&t).sub(&rev);
    let quotient = chi.exact_div(&RatPoly::from_ints(&[1, 1]));
    checks.push(Check::new("chi-t-identity", "χ_ℓ/(x+1) = x^(4ℓ+1) T(x) − x^3 T(1/x), T = x^3 − x^2 − 1", quotient.as_ref() == Some(&rhs), String::new()));
    checks.extend(gamma_fixed(ell));
    checks
}

/// `[Γ] = 2H − Ê₁ − E₂ − Ê₃ − ΣP_j`.
pub fn gamma_class(ell: usize) -> DivisorClass {
    let b = Basis::x(ell);
    let mut v = vec![-1; b.dim()];
    v[0] = 2;
    DivisorClass::new(b, v)
}

pub fn gamma_fixed(ell: usize) -> Vec<Check> {
    let m = build_fx_star(ell);
    let g = gamma_class(ell);
    let fixed = m.apply(&g.to_bigints()) == g.to_bigints();
    let shifted = m.matrix.sub(&IntMatrix::identity(m.basis.dim())).expect("square");
    let kernel = shifted.kernel();
    let rank = shifted.rank();
    let on_line = kernel.len() == 1 && proportional(&kernel[0], &g.to_bigints());
    vec![
        Check::new("gamma-fixed", "f_X*[Γ] = [Γ]", fixed, String::new()),
        Check::new(
            "gamma-eigenspace",
            "the 1-eigenspace of f_X* is the line through [Γ]",
            on_line && rank + 1 == m.basis.dim(),
            format!("rank(M − I) = {rank}"),
        ),
    ]
}

fn proportional(u: &[BigInt], v: &[BigInt]) -> bool {
    u.len() == v.len() && (0..u.len()).all(|i| (i + 1..u.len()).all(|j| &u[i] * &v[j] == &u[j] * &v[i]))
}

/// `[Σ_{0,2}] = L − E₁ − E₃`.
pub fn sigma02(ell: usize) -> DivisorClass {
    let b = Basis::w(ell);
    DivisorClass::new(b.clone(), class(b.dim(), &[(0, 1), (1, -1), (3, -1)]))
}

/// `[β₀] = L − E₂ − ΣF_j`.
pub fn beta0(ell: usize) -> DivisorClass {
    let b = Basis::w(ell);
    let mut v = vec![-1; b.dim()];
    v[0] = 1;
    v[1] = 0;
    v[3] = 0;
    DivisorClass::new(b, v)
}

pub fn verify_gw(ell: usize) -> Vec<Check> {
    let m = build_gw_star(ell);
    let mut checks = Vec::new();
    let cp = m.charpoly();
    let closed = gw_charpoly_closed(ell);
    checks.push(Check::new("gw-charpoly", "charpoly(g_W*) = x^2 (x−1)^2 (x^ℓ − … − 1)", cp == closed, format!("{cp}")));
    let (s, b) = (sigma02(ell), beta0(ell));
    for (name, c) in [("gw-fixes-sigma02", &s), ("gw-fixes-beta0", &b)] {
        let fixed = m.apply(&c.to_bigints()) == c.to_bigints();
        checks.push(Check::new(name, format!("g_W* fixes {:?}", c.coeffs), fixed, String::new()));
    }
    let ell_i = ell as i64;
    let table_ok = s.dot(&s) == -1 && s.dot(&b) == 1 && b.dot(&b) == -ell_i;
    let mut identities = table_ok;
    for m1 in -3..=3 {
        for m2 in -3..=3 {
            let cvec: Vec<i64> = s.coeffs.iter().zip(&b.coeffs).map(|(x, y)| m1 * x + m2 * y).collect();
            let c = DivisorClass::new(s.basis.clone(), cvec);
            identities &= c.dot(&s) == m2 - m1 && c.dot(&b) == m1 - ell_i * m2;
        }
    }
    checks.push(Check::new(
        "gw-intersections",
        "C·Σ_{0,2} = m2 − m1 and C·β0 = m1 − ℓ m2 for C = m1 Σ_{0,2} + m2 β0",
        identities,
        format!("Σ·Σ = {}, Σ·β0 = {}, β0·β0 = {}", s.dot(&s), s.dot(&b), b.dot(&b)),
    ));
    checks
}

/// The `λ₂`-eigenvector `u` of `g_W*` for `ℓ = 2`, with coefficients in `ℚ(√5)`.
pub fn u_vector() -> Vec<QuadExt> {
    let q = |re: (i64, i64), im: (i64, i64)| QuadExt::new(Rational::new(re.0.into(), re.1.into()), Rational::new(im.0.into(), im.1.into()), 5);
    let half = q((-1, 2), (-1, 2));
    vec![q((2, 1), (1, 1)), q((-3, 2), (-1, 2)), half.clone(), half.clone(), q((-1, 1), (0, 1)), half]
}

/// `u·u` on `W` for `ℓ = 2`, and whether `g_W* u = ((1+√5)/2) u`.
pub fn u_self_intersection() -> (QuadExt, bool) {
    let u = u_vector();
    let uu = u.iter().enumerate().fold(QuadExt::zero(), |acc, (i, x)| {
        let sq = x * x;
        if i == 0 {
            &acc + &sq
        } else {
            &acc - &sq
        }
    });
    let m = build_gw_star(2).matrix;
    let lambda = QuadExt::new(Rational::new(1.into(), 2.into()), Rational::new(1.into(), 2.into()), 5);
    let image: Vec<QuadExt> =
        (0..u.len()).map(|i| (0..u.len()).fold(QuadExt::zero(), |acc, j| &acc + &(&QuadExt::rational(Rational::from(m.get(i, j).clone())) * &u[j]))).collect();
    let eigen = image.iter().zip(&u).all(|(x, y)| *x == &lambda * y);
    (uu, eigen)
}

pub fn verify_u() -> Vec<Check> {
    let (uu, eigen) = u_self_intersection();
    let positive = uu.re.is_zero() && uu.im.is_positive();
    vec![
        Check::new("u-self-intersection", "u·u > 0 (u·u = √5)", positive && uu == QuadExt::sqrt_of(5), format!("u·u = {uu}")),
        Check::new("u-eigenvector", "g_W* u = ((1+√5)/2) u", eigen, String::new()),
    ]
}

/// Leading coefficient of `Mᵏ·e₀` for `k = 1..=n`: the predicted degree of the `k`-th iterate.
pub fn degree_sequence(action: &LatticeAction, n: usize) -> Vec<BigInt> {
    let dim = action.basis.dim();
    let mut v: Vec<BigInt> = (0..dim).map(|i| if i == 0 { BigInt::one() } else { BigInt::zero() }).collect();
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        v = action.apply(&v);
        out.push(v[0].clone());
    }
    out
}

/// Does `1, d₁, d₂, …` satisfy the linear recurrence with characteristic polynomial `p`?
pub fn satisfies_recurrence(seq: &[BigInt], p: &RatPoly) -> bool {
    let full: Vec<Rational> = std::iter::once(Rational::one()).chain(seq.iter().map(|d| Rational::from(d.clone()))).collect();
    let cs = p.coeffs();
    let deg = cs.len() - 1;
    (0..full.len().saturating_sub(deg)).all(|k| cs.iter().enumerate().fold(Rational::zero(), |acc, (i, c)| acc + c * &full[k + i]).is_zero())
}

/// Degrees of the reduced symbolic iterates against the lattice prediction, `ℓ` fixed.
#[derive(Clone, Debug, Serialize)]
pub struct DegreeTable {
    pub ell: usize,
    pub map: &'static str,
    pub predicted: Vec<String>,
    pub symbolic: Vec<u32>,
}

impl DegreeTable {
    pub fn agrees(&self) -> bool {
        self.symbolic.iter().zip(&self.predicted).all(|(s, p)| s.to_string() == *p)
    }
}

pub fn symbolic_degrees(ell: usize, kf: usize, kg: usize, reducer: &Reducer) -> Result<(DegreeTable, DegreeTable)> {
    let p = quad_field_for_ell(ell as i64)?;
    let maps = Maps::from_params(&p);
    let fs = if kf > 0 { iterates(&maps.f(), kf, &maps.hints(), reducer) } else { Vec::new() };
    let gs = if kg > 0 { iterates(&maps.g(), kg, &maps.surface_hints(), reducer) } else { Vec::new() };
    let show = |v: Vec<BigInt>| v.iter().map(ToString::to_string).collect();
    Ok((
        DegreeTable { ell, map: "f", predicted: show(degree_sequence(&build_fx_star(ell), kf)), symbolic: fs.iter().map(|m| m.degree()).collect() },
        DegreeTable { ell, map: "g", predicted: show(degree_sequence(&build_gw_star(ell), kg)), symbolic: gs.iter().map(|m| m.degree()).collect() },
    ))
}

pub fn verify_degrees(ell: usize, kf: usize, kg: usize, reducer: &Reducer) -> Result<Vec<Check>> {
    let (tf, tg) = symbolic_degrees(ell, kf, kg, reducer)?;
    let mut checks = Vec::new();
    for (t, action, cp) in [(&tf, build_fx_star(ell), chi_ell(ell)), (&tg, build_gw_star(ell), gw_charpoly_closed(ell))] {
        checks.push(Check::new(
            format!("degrees-{}", t.map),
            format!("symbolic degrees of {}^k equal the lattice prediction", t.map),
            t.agrees(),
            format!("predicted {:?}, symbolic {:?}", t.predicted, t.symbolic),
        ));
        let long = degree_sequence(&action, 3 * action.basis.dim());
        checks.push(Check::new(
            format!("degrees-{}-recurrence", t.map),
            format!("the degree sequence of {} satisfies its charpoly recurrence", t.map),
            satisfies_recurrence(&long, &cp),
            format!("{} terms", long.len()),
        ));
    }
    Ok(checks)
}

/// Exact factorization of `χ_ℓ`, used to expose the Salem factor.
pub fn chi_factors(ell: usize) -> Result<Vec<(RatPoly, usize)>> {
    Ok(factor(&chi_ell(ell))?.factors)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        assert_eq!(build_fx_star(2).matrix.rows(), 13);
        assert_eq!(build_gw_star(2).matrix.rows(), 6);
    }

    #[test]
    fn chi_two_expanded() {
        assert_eq!(chi_ell(2), RatPoly::from_ints(&[-1, 0, 1, 1, 1, 0, 0, 0, 0, -1, -1, -1, 0, 1]));
    }

    #[test]
    fn predicted_degrees() {
        let f: Vec<i64> = degree_sequence(&build_fx_star(2), 8).iter().map(|d| d.try_into().unwrap()).collect();
        assert_eq!(f, [3, 3, 5, 7, 11, 15, 23, 33]);
        let g: Vec<i64> = degree_sequence(&build_gw_star(2), 5).iter().map(|d| d.try_into().unwrap()).collect();
        assert_eq!(g, [4, 8, 16, 29, 50]);
    }

    #[test]
    fn u_checks() {
        assert!(verify_u().iter().all(Check::ok));
    }
}
