mod common;

use common::{big, ints, leverrier_charpoly};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use pseudoauto::exact::rational::rat;
use pseudoauto::exact::{IntMatrix, QuadExt, RatPoly};
use pseudoauto::lattice::*;
use pseudoauto::mpoly::reduce::Reducer;
use pseudoauto::report::all_ok;

fn x_minus_1() -> RatPoly {
    ints(&[-1, 1])
}

#[test]
fn forward_and_inverse_are_exact_inverses() {
    for ell in 2..=8 {
        let f = build_fx_star(ell).matrix;
        let fi = build_fx_inv_star(ell).matrix;
        let n = 4 * ell + 5;
        assert_eq!(f.rows(), n);
        assert_eq!(f.checked_mul(&fi).unwrap(), IntMatrix::identity(n));
        assert_eq!(fi.checked_mul(&f).unwrap(), IntMatrix::identity(n));
        assert!(f.det().unwrap().abs().is_one());
    }
}

#[test]
fn forward_image_of_h() {
    // [H] ↦ 3H − 2Ê₁ − 2E₂ − 2Ê₃ − 2P_{4ℓ+1}: column 0 written out by hand.
    let ell = 2;
    let f = build_fx_star(ell);
    let mut want = vec![0i64; 4 * ell + 5];
    want[..4].copy_from_slice(&[3, -2, -2, -2]);
    want[4 * ell + 4] = -2;
    assert_eq!(f.matrix.column(0), big(&want));
}

#[test]
fn chi_is_the_charpoly_of_both_actions() {
    for ell in 2..=8 {
        let chi = chi_ell(ell);
        // Closed form x^{4ℓ+1}(x⁴ − x² − x − 1) + x⁴ + x³ + x² − 1 built independently.
        let closed = RatPoly::monomial(rat(1, 1), 4 * ell + 1).mul(&ints(&[-1, -1, -1, 0, 1])).add(&ints(&[-1, 0, 1, 1, 1]));
        assert_eq!(chi, closed);
        for m in [build_fx_star(ell).matrix, build_fx_inv_star(ell).matrix] {
            assert_eq!(m.charpoly().unwrap(), chi);
            if ell <= 4 {
                assert_eq!(chi.coeffs(), leverrier_charpoly(&m).as_slice());
            }
        }
        assert!(chi.div_rem(&ints(&[-1, 0, 0, 0, 1])).1.is_zero());
        let q = chi.exact_div(&x_minus_1()).unwrap();
        assert!(!q.eval(&rat(1, 1)).is_zero(), "x = 1 is a simple root");
        assert!(all_ok(&verify_fx(ell)));
    }
}

#[test]
fn chi_two_factorization() {
    let f = chi_factors(2).unwrap();
    let want = vec![(ints(&[-1, 1]), 1), (ints(&[1, 1]), 2), (ints(&[1, 0, 1]), 1), (ints(&[1, -1, 0, -1, 1, -1, 0, -1, 1]), 1)];
    assert_eq!(f, want);
    // (x⁴ − 1)(x + 1) times the octic.
    let prod = ints(&[-1, 0, 0, 0, 1]).mul(&ints(&[1, 1])).mul(&want[3].0);
    assert_eq!(prod, chi_ell(2));
}

#[test]
fn gamma_spans_the_fixed_line() {
    for ell in 2..=8 {
        let f = build_fx_star(ell);
        let g = gamma_class(ell);
        assert_eq!(f.apply(&g.to_bigints()), g.to_bigints());
        let n = 4 * ell + 5;
        let m_minus_i = f.matrix.sub(&IntMatrix::identity(n)).unwrap();
        assert_eq!(m_minus_i.rank(), n - 1);
        assert!(all_ok(&gamma_fixed(ell)));
    }
    // A class off the line moves.
    let f = build_fx_star(2);
    let mut v = vec![BigInt::zero(); 13];
    v[0] = BigInt::one();
    assert_ne!(f.apply(&v), v);
}

#[test]
fn gw_action() {
    for ell in 2..=8 {
        let g = build_gw_star(ell);
        assert_eq!(g.matrix.rows(), ell + 4);
        // x²(x − 1)²(x^ℓ − x^{ℓ−1} − … − 1), with the last factor written out.
        let mut tail = vec![-1i64; ell + 1];
        tail[ell] = 1;
        let closed = ints(&[0, 0, 1]).mul(&x_minus_1().pow(2)).mul(&ints(&tail));
        assert_eq!(g.matrix.charpoly().unwrap(), closed);
        assert_eq!(pisot_poly(ell), ints(&tail));
        let (s, b) = (sigma02(ell), beta0(ell));
        assert_eq!(g.apply(&s.to_bigints()), s.to_bigints());
        assert_eq!(g.apply(&b.to_bigints()), b.to_bigints());
        assert_eq!(s.dot(&s), -1);
        assert_eq!(s.dot(&b), 1);
        assert_eq!(b.dot(&b), -(ell as i64));
        // C = m₁Σ + m₂β: C·Σ = m₂ − m₁ and C·β = m₁ − ℓm₂.
        for (m1, m2) in [(1i64, 0i64), (0, 1), (3, -2), (-5, 7)] {
            let cv: Vec<i64> = s.coeffs.iter().zip(&b.coeffs).map(|(x, y)| m1 * x + m2 * y).collect();
            let c = DivisorClass::new(s.basis.clone(), cv);
            assert_eq!(c.dot(&s), m2 - m1);
            assert_eq!(c.dot(&b), m1 - ell as i64 * m2);
        }
        assert!(all_ok(&verify_gw(ell)));
    }
}

#[test]
fn golden_mean_eigenvector() {
    let (uu, positive) = u_self_intersection();
    assert_eq!(uu, QuadExt::sqrt_of(5));
    assert!(positive);
    let u = u_vector();
    let g = build_gw_star(2);
    let lambda = QuadExt::new(rat(1, 2), rat(1, 2), 5);
    for i in 0..u.len() {
        let gu = (0..u.len()).fold(QuadExt::zero(), |s, j| &s + &(&QuadExt::rational(g.matrix.get(i, j).clone().into()) * &u[j]));
        assert_eq!(gu, &lambda * &u[i]);
    }
    assert!(all_ok(&verify_u()));
}

#[test]
fn degree_sequences_and_recurrences() {
    for ell in 2..=8 {
        let f = degree_sequence(&build_fx_star(ell), 40);
        assert_eq!(f[0], BigInt::from(3));
        assert!(satisfies_recurrence(&f, &chi_ell(ell)));
        let g = degree_sequence(&build_gw_star(ell), 30);
        assert_eq!(&g[..2], &big(&[4, 8])[..]);
        assert!(satisfies_recurrence(&g, &gw_charpoly_closed(ell)));
    }
    assert_eq!(degree_sequence(&build_fx_star(2), 2)[1], BigInt::from(3));
    // A perturbed sequence breaks the recurrence.
    let mut f = degree_sequence(&build_fx_star(2), 30);
    f[20] += 1;
    assert!(!satisfies_recurrence(&f, &chi_ell(2)));
}

#[test]
fn symbolic_degrees_match_prediction() {
    let (tf, tg) = symbolic_degrees(2, 6, 4, &Reducer::default()).unwrap();
    assert_eq!(tf.symbolic, vec![3, 3, 5, 7, 11, 15]);
    assert_eq!(tg.symbolic, vec![4, 8, 16, 29]);
    assert!(tf.agrees() && tg.agrees());
}

#[test]
#[ignore = "g⁵ has degree 50 and takes minutes"]
fn fifth_iterate_of_g() {
    let (_, tg) = symbolic_degrees(2, 0, 5, &Reducer::default()).unwrap();
    assert_eq!(tg.symbolic, vec![4, 8, 16, 29, 50]);
}
