//! Acceptance suite: one line per criterion, run without the libtest harness so every line is
//! printed. Exits nonzero when a criterion fails unexpectedly, or when one listed in
//! [`KNOWN_UNATTAINABLE`] starts passing and the list needs updating.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use pseudoauto::exact::params::ell_relation;
use pseudoauto::exact::rational::{int, rat, to_f64};
use pseudoauto::exact::{quad_field_for_ell, IntMatrix, QuadExt, RatPoly, Rational, UniPoly};
use pseudoauto::lattice::{self, DivisorClass};
use pseudoauto::mpoly::Reducer;
use pseudoauto::numclass::{classify, dominant_root, threshold_enclosure, ClassifiedNumber, Verdict};
use pseudoauto::par::Execution;
use pseudoauto::report::{Check, Status};
use pseudoauto::threefold::forms::fibration_obstruction;
use pseudoauto::threefold::surface::{e1_chart_dynamics, g_exceptional_report, surface_regression};
use pseudoauto::threefold::{verify_ell_condition, Curve, Cycle, Maps};
use pseudoauto::torus3::{self, Fibration, ReciprocalSextic};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// The threshold 2(α+1)/(α−1) for the real root α of x³ − x² − 1 is 10.5916…, below the
/// required enclosure (10.6, 10.8).
const KNOWN_UNATTAINABLE: &[usize] = &[4];

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn ints(cs: &[i64]) -> RatPoly {
    RatPoly::from_ints(cs)
}

fn params(ell: usize) -> (QuadExt, QuadExt) {
    let p = quad_field_for_ell(ell as i64).expect("ell ≥ 2");
    (p.a, p.c)
}

fn named<'a>(checks: &'a [Check], name: &str) -> Result<&'a Check, String> {
    checks.iter().find(|c| c.name == name).ok_or_else(|| format!("report has no check {name}"))
}

fn require_pass(checks: &[Check], names: &[&str]) -> Result<(), String> {
    for n in names {
        let c = named(checks, n)?;
        ensure(c.status == Status::Pass, format!("{n}: {}", c.details))?;
    }
    Ok(())
}

fn counts(c: &ClassifiedNumber) -> (usize, usize, usize) {
    (c.certificate.inside, c.certificate.on_circle, c.certificate.outside)
}

fn criterion_1() -> Outcome {
    for ell in 2..=8 {
        let (a, c) = params(ell);
        // ℓa² + (ℓ+1)ac + ℓc² expanded here rather than through the library helper.
        let l = QuadExt::from_int(ell as i64);
        let r = &(&(&l * &(&a * &a)) + &(&QuadExt::from_int(ell as i64 + 1) * &(&a * &c))) + &(&l * &(&c * &c));
        ensure(r.is_zero(), format!("ell = {ell}: residual {r}"))?;
        ensure(!a.im.is_zero(), format!("ell = {ell}: a = {a} is real"))?;
    }
    ensure(quad_field_for_ell(1).is_err(), "ell = 1 accepted")?;
    Ok("exact zero residual for ℓ = 2..8".into())
}

fn criterion_2() -> Outcome {
    for ell in 2..=6 {
        let (a, c) = params(ell);
        let tr = verify_ell_condition(ell, &a, &c);
        ensure(tr.reached_e0_at() == Some(4 * ell), format!("ell = {ell}: reached e0 at {:?}", tr.reached_e0_at()))?;
        ensure(tr.regular_until_end(), format!("ell = {ell}: irregular intermediate step"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut tried = 0;
    while tried < 20 {
        let a = QuadExt::new(rat(rng.gen_range(-20..=20), rng.gen_range(1..=9)), rat(rng.gen_range(-20..=20), rng.gen_range(1..=9)), -7);
        let c = QuadExt::from_int(rng.gen_range(1..=5));
        let ell = rng.gen_range(2..=6usize);
        if a.is_zero() || ell_relation(ell as i64, &a, &c).is_zero() {
            continue;
        }
        tried += 1;
        let tr = verify_ell_condition(ell, &a, &c);
        ensure(tr.reached_e0_at() != Some(4 * ell), format!("non-solution a = {a}, c = {c}, ell = {ell} reached e0"))?;
    }
    Ok("e₀ at step 4ℓ for ℓ = 2..6; 20 seeded non-solutions fail".into())
}

fn criterion_3() -> Outcome {
    for ell in 2..=8 {
        let f = lattice::build_fx_star(ell).matrix;
        let fi = lattice::build_fx_inv_star(ell).matrix;
        let n = 4 * ell + 5;
        ensure(f.checked_mul(&fi).map_err(|e| e.to_string())? == IntMatrix::identity(n), format!("ell = {ell}: M·M⁻¹ ≠ I"))?;
        let chi = RatPoly::monomial(Rational::one(), 4 * ell + 1).mul(&ints(&[-1, -1, -1, 0, 1])).add(&ints(&[-1, 0, 1, 1, 1]));
        for m in [&f, &fi] {
            ensure(m.charpoly().map_err(|e| e.to_string())? == chi, format!("ell = {ell}: charpoly differs from the closed form"))?;
        }
        ensure(chi.div_rem(&ints(&[-1, 0, 0, 0, 1])).1.is_zero(), format!("ell = {ell}: x⁴ − 1 does not divide χ"))?;
        let q = chi.exact_div(&ints(&[-1, 1])).ok_or("x − 1 does not divide χ")?;
        ensure(!q.eval(&int(1)).is_zero(), format!("ell = {ell}: x = 1 is not simple"))?;
        let g = lattice::gamma_class(ell).to_bigints();
        ensure(lattice::build_fx_star(ell).apply(&g) == g, format!("ell = {ell}: Γ moves"))?;
        let rank = f.sub(&IntMatrix::identity(n)).map_err(|e| e.to_string())?.rank();
        ensure(rank == n - 1, format!("ell = {ell}: 1-eigenspace has dimension {}", n - rank))?;
    }
    Ok("ℓ = 2..8: inverse pair, χ_ℓ, (x⁴−1) | χ_ℓ, simple x = 1, Γ spans the fixed line".into())
}

fn criterion_4() -> Outcome {
    let octic = ints(&[1, -1, 0, -1, 1, -1, 0, -1, 1]);
    let want = ints(&[-1, 0, 0, 0, 1]).mul(&ints(&[1, 1])).mul(&octic);
    ensure(lattice::chi_ell(2) == want, "χ₂ ≠ (x⁴−1)(x+1)·octic")?;
    let factors = lattice::chi_factors(2).map_err(|e| e.to_string())?;
    ensure(factors.iter().any(|(f, m)| *f == octic && *m == 1), "the octic is not an irreducible factor of χ₂")?;
    ensure(classify(&octic).map_err(|e| e.to_string())?.verdict == Verdict::Salem, "octic not certified Salem")?;
    for ell in 2..=8 {
        let p = lattice::pisot_poly(ell);
        ensure(classify(&p).map_err(|e| e.to_string())?.verdict == Verdict::Pisot, format!("ell = {ell}: not Pisot"))?;
    }
    // ℓ = 2: the dominant root is the golden mean, with (2x − 1)² = 5 bracketing it.
    let (lo, hi) = dominant_root(&lattice::pisot_poly(2), &rat(1, 1_000_000)).map_err(|e| e.to_string())?;
    let sq = |x: &Rational| (x * int(2) - int(1)) * (x * int(2) - int(1));
    ensure(sq(&lo) <= int(5) && int(5) <= sq(&hi), "golden mean not enclosed")?;

    let alpha = dominant_root(&lattice::t_cubic(), &rat(1, 1_000_000_000_000)).map_err(|e| e.to_string())?;
    let (tlo, thi) = threshold_enclosure(&alpha);
    let width = &thi - &tlo;
    let detail = format!("threshold in [{:.6}, {:.6}]", to_f64(&tlo), to_f64(&thi));
    ensure(width <= rat(1, 10), format!("{detail}: width above 0.1"))?;
    ensure(tlo > rat(106, 10) && thi < rat(108, 10), format!("{detail}, not inside (10.6, 10.8)"))?;
    Ok(format!("χ₂ factorization, Salem octic, Pisot ℓ = 2..8, {detail}"))
}

fn criterion_5() -> Outcome {
    for ell in [2, 3] {
        let m = Maps::from_params(&quad_field_for_ell(ell).map_err(|e| e.to_string())?);
        let r = surface_regression(&m, &Reducer::default());
        require_pass(&r, &["g-from-f4", "g-degree", "g-inverse-right", "g-inverse-left"])?;
        let g = g_exceptional_report(&m, 11, 5);
        require_pass(&g, &["g-image-L1", "g-image-L2", "g-image-L3", "g-image-L4", "g-indeterminacy-points", "g-indeterminacy-complete"])?;
    }
    Ok("ℓ = 2, 3: f⁴ restricts to g, g∘g⁻¹ = id, exceptional images and Ind(g)".into())
}

fn criterion_6() -> Outcome {
    for ell in 2..=8 {
        let g = lattice::build_gw_star(ell);
        let mut tail = vec![-1i64; ell + 1];
        tail[ell] = 1;
        let closed = ints(&[0, 0, 1]).mul(&ints(&[-1, 1]).pow(2)).mul(&ints(&tail));
        ensure(g.matrix.charpoly().map_err(|e| e.to_string())? == closed, format!("ell = {ell}: charpoly(g_W*) differs"))?;
        let (s, b) = (lattice::sigma02(ell), lattice::beta0(ell));
        ensure(g.apply(&s.to_bigints()) == s.to_bigints() && g.apply(&b.to_bigints()) == b.to_bigints(), format!("ell = {ell}: invariant classes move"))?;
        for (m1, m2) in [(1i64, 0i64), (0, 1), (2, 3), (-4, 5)] {
            let cv: Vec<i64> = s.coeffs.iter().zip(&b.coeffs).map(|(x, y)| m1 * x + m2 * y).collect();
            let c = DivisorClass::new(s.basis.clone(), cv);
            ensure(c.dot(&s) == m2 - m1 && c.dot(&b) == m1 - ell as i64 * m2, format!("ell = {ell}: intersection identity fails for ({m1}, {m2})"))?;
        }
    }
    let (uu, positive) = lattice::u_self_intersection();
    ensure(uu == QuadExt::sqrt_of(5) && positive, format!("u·u = {uu}"))?;
    let u = lattice::u_vector();
    let g = lattice::build_gw_star(2);
    let lambda = QuadExt::new(rat(1, 2), rat(1, 2), 5);
    for i in 0..u.len() {
        let gu = (0..u.len()).fold(QuadExt::zero(), |acc, j| &acc + &(&QuadExt::rational(g.matrix.get(i, j).clone().into()) * &u[j]));
        ensure(gu == &lambda * &u[i], "u is not a (1+√5)/2 eigenvector")?;
    }
    Ok("ℓ = 2..8 charpoly and invariants; u·u = √5 > 0".into())
}

fn criterion_7() -> Outcome {
    let (tf, tg) = lattice::symbolic_degrees(2, 6, 4, &Reducer::default()).map_err(|e| e.to_string())?;
    ensure(tf.agrees() && tg.agrees(), format!("f {:?} vs {:?}; g {:?} vs {:?}", tf.symbolic, tf.predicted, tg.symbolic, tg.predicted))?;
    ensure(tf.symbolic[..2] == [3, 3] && tg.symbolic[..2] == [4, 8], "sequences start wrong")?;
    let f = lattice::degree_sequence(&lattice::build_fx_star(2), 40);
    let g = lattice::degree_sequence(&lattice::build_gw_star(2), 30);
    ensure(lattice::satisfies_recurrence(&f, &lattice::chi_ell(2)), "f sequence breaks its recurrence")?;
    ensure(lattice::satisfies_recurrence(&g, &lattice::gw_charpoly_closed(2)), "g sequence breaks its recurrence")?;
    Ok(format!("f: {:?}, g: {:?}", tf.symbolic, tg.symbolic))
}

fn criterion_8() -> Outcome {
    for ell in 2..=8 {
        let (a, c) = params(ell);
        let m = Maps::from_params(&quad_field_for_ell(ell as i64).map_err(|e| e.to_string())?);
        require_pass(&e1_chart_dynamics(&m, 1000), &["e1-translation", "e1-indeterminacy"])?;
        let cy = Cycle::new(a.clone(), c.clone());
        let s = &(&(&a * &a) + &(&a * &c)) + &(&c * &c);
        ensure(cy.return_map(Curve::Beta2) == UniPoly::new(vec![&s / &c, QuadExt::one()]), format!("ell = {ell}: β₂ return map"))?;
        ensure(cy.return_map(Curve::Beta0) == UniPoly::new(vec![&s / &a, QuadExt::one()]), format!("ell = {ell}: β₀ return map"))?;
        ensure(!(&a / &c).im.is_zero(), format!("ell = {ell}: a/c is real"))?;
        for n in 1..=1000 {
            let v = &(&a * &QuadExt::from_int(n)) + &(&c * &QuadExt::from_int(n + 1));
            ensure(!v.is_zero(), format!("ell = {ell}: na + (n+1)c = 0 at n = {n}"))?;
        }
    }
    Ok("ℓ = 2..8: chart translation, return maps, orbit avoidance to n = 1000".into())
}

fn criterion_9() -> Outcome {
    for ell in 2..=8 {
        let (a, c) = params(ell);
        let r = fibration_obstruction(&a, &c, 100);
        require_pass(&r, &["fibration-powers", "fibration-not-root-of-unity"])?;
        let mp = RatPoly::new((&a / &c).min_poly());
        ensure(!mp.is_integral(), format!("ell = {ell}: a/c has integral minimal polynomial {mp}"))?;
    }
    Ok("ℓ = 2..8: a^(2r) + c^(2r) ≠ 0 for r ≤ 100, a/c not a root of unity".into())
}

fn criterion_10() -> Outcome {
    let start = Instant::now();
    let hits = torus3::search(3, Execution::default());
    let ex = ReciprocalSextic::new(1, 0, -2);
    ensure(hits.contains(&ex), "(1, 0, −2) missing from the search")?;
    ensure(ex.theta() == ints(&[-4, -3, 1, 1]), format!("θ = {}", ex.theta()))?;
    let adm = torus3::admissible(&ex);
    ensure(adm.irreducible && adm.theta_real_roots == 1 && adm.theta_roots_in_open == 1, format!("{adm:?}"))?;
    ensure(torus3::fibration_criterion(&ex).map_err(|e| e.to_string())?.verdict == Fibration::NonFibered, "not non-fibered")?;
    let cs = torus3::complex_structure(&ex, 1e-9).map_err(|e| e.to_string())?;
    ensure(cs.square_residual < 1e-9 && cs.commutator_residual < 1e-9, format!("residuals {} {}", cs.square_residual, cs.commutator_residual))?;
    let sp = torus3::spectrum(&ex, &rat(1, 1_000_000_000)).map_err(|e| e.to_string())?;
    ensure(sp.lambda1_equals_lambda2, "λ₁ = λ₂ flag not set")?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(30), format!("took {elapsed:?}"))?;
    Ok(format!("{} hits, residuals {:.1e}/{:.1e}, {:.1} s", hits.len(), cs.square_residual, cs.commutator_residual, elapsed.as_secs_f64()))
}

fn criterion_11() -> Outcome {
    let out = Command::new(env!("CARGO_BIN_EXE_pseudoauto"))
        .args(["certify", "--ell", "2", "--n", "3", "--perturb", "--format", "json"])
        .output()
        .map_err(|e| e.to_string())?;
    ensure(!out.status.success(), "perturbed certify exited 0")?;
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    let status = report["checks"].as_array().and_then(|cs| cs.iter().find(|c| c["name"] == "ell-relation")).map(|c| c["status"].clone());
    ensure(status == Some("fail".into()), "ell-relation did not fail")?;

    let p = ints(&[-1, 0, -1, 1]);
    let (i, o, x) = counts(&classify(&p).map_err(|e| e.to_string())?);
    let r = counts(&classify(&p.reverse(3)).map_err(|e| e.to_string())?);
    ensure(r == (x, o, i), format!("({i}, {o}, {x}) vs reversed {r:?}"))?;
    Ok(format!("perturbed certify exits {}; x³−x²−1 has ({i}, {o}, {x}), reversed {r:?}", out.status.code().unwrap_or(-1)))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("parameter exactness", criterion_1),
        ("ℓ-condition orbit", criterion_2),
        ("Picard certification", criterion_3),
        ("Salem/Pisot", criterion_4),
        ("surface regression", criterion_5),
        ("g_W lattice", criterion_6),
        ("degree cross-check", criterion_7),
        ("chart dynamics", criterion_8),
        ("fibration obstruction", criterion_9),
        ("torus search", criterion_10),
        ("failure-path self-test", criterion_11),
    ];
    // Quiet the default hook; panics are reported on the criterion line.
    std::panic::set_hook(Box::new(|_| {}));
    let mut unexpected = Vec::new();
    for (k, (title, run)) in criteria.iter().enumerate() {
        let n = k + 1;
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let known = KNOWN_UNATTAINABLE.contains(&n);
        let (word, detail) = match &outcome {
            Ok(d) => ("PASS", d.clone()),
            Err(d) => ("FAIL", if known { format!("{d} (known unattainable)") } else { d.clone() }),
        };
        println!("criterion {n:>2} {word} {title}: {detail} [{:.1} s]", start.elapsed().as_secs_f64());
        if outcome.is_ok() == known {
            unexpected.push(n);
        }
    }
    let _ = std::panic::take_hook();
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("unexpected outcome for criteria {unexpected:?}");
        ExitCode::FAILURE
    }
}
