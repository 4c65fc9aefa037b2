//! Acceptance gate: one test per criterion, each printing a PASS line on
//! success (run with `--nocapture` to see them). Every tolerance is pinned
//! in code.

use std::time::Instant;

use num::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use polyknot::diagram::{
    bracket_from_pd, determinant, invariant_constancy_check, jones, jones_from_bracket,
    pd_from_text, KnotDiagram, LaurentPoly,
};
use polyknot::isotopy::{
    canonical_path_pd, densify_to_q, linear_interp, retraction_path, shrink_isotopy,
    target_affine_path, validate_path, PathEndpoint, Space,
};
use polyknot::knotspace::{
    check_embedding, classify, embedding_oracle_numeric, metric_rho_squared, sign_class,
    tail_angle, PolyMap3, SignClass, WitnessKind,
};
use polyknot::polycore::bipoly::divided_difference;
use polyknot::polycore::{rat, rat_i, Rat, UniPoly};

fn knots(name: &str) -> String {
    format!("{}/../../knots/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn data(name: &str) -> String {
    std::fs::read_to_string(format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

fn run_cli(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let full: Vec<String> =
        std::iter::once("polyknot".to_string()).chain(args.iter().map(|s| s.to_string())).collect();
    let code = polyknot_cli::run(full, 42, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap())
}

fn reference_jones(pd_file: &str) -> LaurentPoly {
    let text = data(pd_file);
    if text.trim().is_empty() {
        return LaurentPoly::one('q');
    }
    let (pd, w) = pd_from_text(text.trim());
    jones_from_bracket(&bracket_from_pd(&pd).unwrap(), w).unwrap()
}

fn figure_eight_jones() -> LaurentPoly {
    LaurentPoly::from_terms('q', &[(-2, 1), (-1, -1), (0, 1), (1, -1), (2, 1)])
}

#[test]
fn criterion_1_embedding_gate() {
    let budget = std::time::Duration::from_secs(10);

    let t0 = Instant::now();
    let (code, out) = run_cli(&["check", &knots("fig8.json")]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["embedding"], Value::Bool(true));
    assert!(t0.elapsed() < budget);

    let t0 = Instant::now();
    let (code, _) = run_cli(&["check", &knots("phi_eps.json")]);
    assert_eq!(code, 1);
    let crit = PolyMap3::new(
        UniPoly::one(),
        UniPoly::one(),
        UniPoly::from_coeffs(vec![rat_i(0), rat_i(1), rat(-1, 2)]),
    );
    let check = check_embedding(&crit);
    let w = check.witness().expect("critical point expected");
    assert_eq!(w.kind, WitnessKind::CriticalPoint);
    assert!(w.t0.contains(&rat_i(1)));
    assert!(w.t0.width() <= rat(1, 1_000_000));
    assert!(t0.elapsed() < budget);

    let t0 = Instant::now();
    let (code, _) = run_cli(&["check", &knots("sigma_eps.json")]);
    assert_eq!(code, 1);
    let glue = PolyMap3::new(
        UniPoly::one(),
        UniPoly::from_ints(&[0, 1, 0, -1]),
        UniPoly::from_ints(&[0, 0, 1, 0, -1]),
    );
    let check = check_embedding(&glue);
    assert!(check
        .witnesses()
        .iter()
        .any(|w| w.kind == WitnessKind::SelfIntersection
            && w.s0.contains(&rat_i(0))
            && w.t0.contains(&rat_i(1))));
    assert!(t0.elapsed() < budget);

    println!("PASS criterion 1: embedding gate (figure-eight accepted, both degenerate examples witnessed)");
}

#[test]
fn criterion_2_oracle_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x02ACLE_u64 & 0xFFFF_FFFF);
    let box_half = rat_i(20);
    let mut oracle_false = 0usize;
    let mut contradictions = 0usize;
    for _ in 0..200 {
        let mut poly = |rng: &mut ChaCha8Rng| {
            let d = rng.gen_range(0..=5usize);
            UniPoly::from_coeffs((0..=d).map(|_| rat_i(rng.gen_range(-3..=3))).collect())
        };
        let map = PolyMap3::new(poly(&mut rng), poly(&mut rng), poly(&mut rng));
        let numeric = embedding_oracle_numeric(&map, 400, &box_half);
        if !numeric {
            oracle_false += 1;
            if check_embedding(&map).is_embedding() {
                contradictions += 1;
                eprintln!("contradiction: {map:?}");
            }
        }
    }
    assert!(oracle_false > 20, "oracle should reject a healthy share, saw {oracle_false}");
    assert_eq!(contradictions, 0);
    println!(
        "PASS criterion 2: oracle equivalence (200 maps, {oracle_false} oracle rejections, 0 contradictions)"
    );
}

#[test]
fn criterion_3_density_procedure() {
    let phi = PolyMap3::new(
        UniPoly::from_ints(&[0, 0, 1]),
        UniPoly::from_ints(&[0, 0, 0, 1]),
        UniPoly::from_ints(&[0, 0, 0, 0, 1]),
    );
    let eps = rat(1, 10);
    let psi = densify_to_q(&phi, 4, &eps).unwrap();
    assert!(classify(&psi, 4).in_q);
    let rho2 = metric_rho_squared(&phi, &psi, 4).unwrap();
    assert!(rho2 <= rat(1, 400), "rho² = {rho2} exceeds (1/20)²");
    println!("PASS criterion 3: density perturbation lands in the exact-degree knot space within ε/2");
}

#[test]
fn criterion_4_shrink_isotopy() {
    let fig8 = PolyMap3::figure_eight();
    let path = shrink_isotopy(&fig8).unwrap();
    let report = validate_path(&path, 101, 6, Some(Space::O));
    assert!(report.all_passed(), "failures: {:?}", report.failures);
    assert!(report.space_preserved);

    // endpoint invariants against the bundled reference codes
    let knot_end = path.end();
    let d1 = KnotDiagram::from_map(knot_end.as_map().unwrap(), 1).unwrap();
    let v1 = jones(&d1).unwrap();
    assert_eq!(v1, reference_jones("pd_figure_eight.txt"));
    assert_eq!(v1, figure_eight_jones());
    assert_eq!(determinant(&d1).unwrap(), 5);

    let lin_end = path.eval(&Rat::zero());
    let d0 = KnotDiagram::from_map(&lin_end, 1).unwrap();
    let v0 = jones(&d0).unwrap();
    assert_eq!(v0, reference_jones("pd_unknot.txt"));
    assert_eq!(v0, LaurentPoly::one('q'));
    assert_eq!(determinant(&d0).unwrap(), 1);

    println!("PASS criterion 4: shrink isotopy validates in O_6; endpoints carry figure-eight and unknot invariants");
}

#[test]
fn criterion_5_sign_class_obstruction() {
    let fig8 = PolyMap3::figure_eight();
    assert_eq!(sign_class(&fig8, 6).unwrap(), SignClass { e1: 1, e2: 1, e3: 1 });
    assert_eq!(sign_class(&fig8.mirror(), 6).unwrap(), SignClass { e1: 1, e2: -1, e3: -1 });

    let mut rng = ChaCha8Rng::seed_from_u64(0x5C1A55);
    for round in 0..20 {
        let alphas = [
            rat_i(rng.gen_range(1..6)),
            rat_i(rng.gen_range(1..6)),
            rat_i(rng.gen_range(1..6)),
        ];
        let betas = [
            rat_i(rng.gen_range(-3..4)),
            rat_i(rng.gen_range(-3..4)),
            rat_i(rng.gen_range(-3..4)),
        ];
        let gammas = [
            rat_i(rng.gen_range(-3..4)),
            rat_i(rng.gen_range(-3..4)),
            rat_i(rng.gen_range(-3..4)),
        ];
        let path = target_affine_path(&fig8, &alphas, &betas, &gammas).unwrap();
        let report = validate_path(&path, 11, 6, Some(Space::Q));
        assert!(report.all_passed() && report.space_preserved, "round {round}");
        let expect = sign_class(&path.eval(&Rat::zero()), 6).unwrap();
        for k in 0..11 {
            let s = rat_i(k) / rat_i(10);
            assert_eq!(sign_class(&path.eval(&s), 6).unwrap(), expect, "round {round}, s = {s}");
        }
    }

    let interp = linear_interp(&fig8, &fig8.mirror());
    let report = validate_path(&interp, 101, 6, None);
    assert!(
        report.failures.iter().any(|(s, _)| s == &rat(1, 2)),
        "expected a failure at the midpoint, got {:?}",
        report.failures.iter().map(|(s, _)| s.clone()).collect::<Vec<_>>()
    );
    println!("PASS criterion 5: sign classes obstruct paths (constant along 20 scaled families, midpoint collapse found)");
}

#[test]
fn criterion_6_invariance_along_paths() {
    let fig8 = PolyMap3::figure_eight();
    let mut rng = ChaCha8Rng::seed_from_u64(0x10PE5_u64 & 0xFFFF);
    for round in 0..10 {
        let alphas = [
            rat_i(rng.gen_range(1..4)),
            rat_i(rng.gen_range(1..4)),
            rat_i(rng.gen_range(1..4)),
        ];
        let betas = [
            rat_i(rng.gen_range(-2..3)),
            rat_i(rng.gen_range(-2..3)),
            rat_i(rng.gen_range(-2..3)),
        ];
        let gammas = [
            rat_i(rng.gen_range(-2..3)),
            rat_i(rng.gen_range(-2..3)),
            rat_i(rng.gen_range(-2..3)),
        ];
        let path = target_affine_path(&fig8, &alphas, &betas, &gammas).unwrap();
        let report = validate_path(&path, 11, 6, Some(Space::Q));
        assert!(report.all_passed() && report.space_preserved, "round {round} precondition");
        assert!(
            invariant_constancy_check(&path, 11, 0xBEE + round as u64).unwrap(),
            "round {round}: Jones drifted along a validated path"
        );
    }
    println!("PASS criterion 6: Jones polynomial constant along 10 validated exact-degree paths");
}

#[test]
fn criterion_7_canonical_path() {
    let fig8 = PolyMap3::figure_eight();
    let path = canonical_path_pd(&fig8, 6).unwrap();
    // in_q holds for the figure-eight so no nudge stage appears
    let stage_spaces: Vec<(&str, Space)> = path
        .children()
        .iter()
        .map(|c| {
            let space = if c.kind_name() == "lambda-translate" { Space::Q } else { Space::P };
            (c.kind_name(), space)
        })
        .collect();
    assert!(!stage_spaces.is_empty());
    assert_eq!(stage_spaces[0].0, "lambda-translate");
    for (stage, space) in path.children().iter().zip(stage_spaces.iter()) {
        let report = validate_path(stage, 101, 6, Some(space.1));
        assert!(
            report.all_passed() && report.space_preserved,
            "stage {} failed validation",
            space.0
        );
    }
    let expected = PolyMap3::new(UniPoly::zero(), UniPoly::var(), UniPoly::from_ints(&[0, 0, 1]));
    assert_eq!(path.end(), PathEndpoint::Map(expected));
    println!(
        "PASS criterion 7: canonical chain validates per stage ({:?}) and ends at (0, t, t²) exactly",
        stage_spaces.iter().map(|s| s.0).collect::<Vec<_>>()
    );
}

#[test]
fn criterion_8_tail_transversality() {
    let fig8 = PolyMap3::figure_eight();
    assert!(tail_angle(&fig8, &rat_i(1000)).unwrap() < 0.1);
    assert!(tail_angle(&fig8, &rat_i(-1000)).unwrap() > std::f64::consts::PI - 0.1);
    // 50 log-spaced magnitudes between 1e2 and 1e6, alternating sign
    for k in 0..50 {
        let exp = 2.0 + 4.0 * (k as f64) / 49.0;
        let mag = 10f64.powf(exp).round() as i64;
        let t = if k % 2 == 0 { rat_i(mag) } else { rat_i(-mag) };
        let theta = tail_angle(&fig8, &t).unwrap();
        assert!(theta.cos().abs() >= 0.9, "|cos θ| = {} at t = {t}", theta.cos().abs());
    }
    println!("PASS criterion 8: tail angles collapse to the axis directions beyond |t| = 100");
}

#[test]
fn criterion_9_algebraic_property_suites() {
    // divided-difference identity and diagonal derivative, 100 random polys
    let mut rng = ChaCha8Rng::seed_from_u64(0x9A);
    for _ in 0..100 {
        let d = rng.gen_range(0..=8usize);
        let p = UniPoly::from_coeffs((0..=d).map(|_| rat_i(rng.gen_range(-5..=5))).collect());
        let dd = divided_difference(&p);
        let s_minus_t = polyknot::polycore::BiPoly::from_terms([
            ((1, 0), rat_i(1)),
            ((0, 1), rat_i(-1)),
        ]);
        let p_s = polyknot::polycore::BiPoly::from_terms(
            p.coeffs().iter().enumerate().map(|(i, c)| ((i as u32, 0), c.clone())),
        );
        let p_t = polyknot::polycore::BiPoly::from_terms(
            p.coeffs().iter().enumerate().map(|(i, c)| ((0, i as u32), c.clone())),
        );
        assert!(dd.mul(&s_minus_t).sub(&p_s.sub(&p_t)).is_zero());
        let dp = p.derivative();
        for k in 0..10 {
            let t = rat(2 * k - 9, 7);
            assert_eq!(dd.eval(&t, &t), dp.eval(&t));
        }
    }

    // power-sum inequalities, 500 exact triples
    let mut checked = 0usize;
    let power_sum = |a: &Rat, b: &Rat, k: usize| -> Rat {
        (0..=k)
            .map(|i| {
                let mut term = Rat::one();
                for _ in 0..i {
                    term *= a;
                }
                for _ in 0..(k - i) {
                    term *= b;
                }
                term
            })
            .sum()
    };
    let pow = |x: &Rat, k: usize| -> Rat {
        let mut acc = Rat::one();
        for _ in 0..k {
            acc *= x;
        }
        acc
    };
    while checked < 500 {
        let a = rat(rng.gen_range(-30i64..=30), rng.gen_range(1i64..=5));
        let b = rat(rng.gen_range(-30i64..=30), rng.gen_range(1i64..=5));
        if a.is_zero() || b.is_zero() {
            continue;
        }
        let n = 2 * rng.gen_range(1usize..=4);
        let denom = power_sum(&a, &b, n);
        assert!(denom.is_positive());
        let inv = Rat::one() / &denom;
        assert!(inv <= (Rat::one() / pow(&a, n)).max(Rat::one() / pow(&b, n)));
        for k in 1..=n {
            let ratio = power_sum(&a, &b, k) / &denom;
            if k % 2 == 0 {
                assert!(
                    ratio.is_positive()
                        && ratio <= (Rat::one() / pow(&a, n - k)).max(Rat::one() / pow(&b, n - k))
                );
            } else {
                assert!(
                    ratio.abs()
                        < (Rat::one() / pow(&a, n - k).abs()).min(Rat::one() / pow(&b, n - k).abs())
                );
            }
        }
        checked += 1;
    }

    // retraction of unit linear knots is the identity on 20 rational
    // sphere points (squared-norm check is exact)
    let mut done = 0usize;
    while done < 20 {
        let x = rat(rng.gen_range(-9i64..=9), 7);
        let y = rat(rng.gen_range(-9i64..=9), 8);
        let denom = Rat::one() + &x * &x + &y * &y;
        let p = [
            rat_i(2) * &x / &denom,
            rat_i(2) * &y / &denom,
            (Rat::one() - &x * &x - &y * &y) / &denom,
        ];
        let norm2: Rat = p.iter().map(|c| c * c).sum();
        assert_eq!(norm2, Rat::one());
        let lin = PolyMap3::new(
            UniPoly::from_coeffs(vec![Rat::zero(), p[0].clone()]),
            UniPoly::from_coeffs(vec![Rat::zero(), p[1].clone()]),
            UniPoly::from_coeffs(vec![Rat::zero(), p[2].clone()]),
        );
        match retraction_path(&lin).unwrap().start() {
            PathEndpoint::UnitLinear { v, norm2 } => {
                assert_eq!(norm2, Rat::one());
                assert_eq!(v, p);
            }
            other => panic!("expected a symbolic unit endpoint, got {other:?}"),
        }
        done += 1;
    }
    println!("PASS criterion 9: divided-difference, power-sum and retraction identities verified exactly");
}
