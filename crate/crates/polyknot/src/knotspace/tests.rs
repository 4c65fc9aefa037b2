use num::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::polycore::{bipoly, rat, rat_i, UniPoly};

fn phi0() -> PolyMap3 {
    // (0, t, t²)
    PolyMap3::new(UniPoly::zero(), UniPoly::var(), UniPoly::from_ints(&[0, 0, 1]))
}

fn critical_example() -> PolyMap3 {
    PolyMap3::new(
        UniPoly::one(),
        UniPoly::one(),
        UniPoly::from_coeffs(vec![rat_i(0), rat_i(1), rat(-1, 2)]),
    )
}

#[test]
fn classify_figure_eight_fills_every_space() {
    let m = classify(&PolyMap3::figure_eight(), 6);
    assert!(m.in_a && m.in_b && m.in_c && m.is_embedding && m.in_o && m.in_p && m.in_q);
}

#[test]
fn classify_phi0_in_p3_not_q3() {
    let m = classify(&phi0(), 3);
    assert!(m.in_a);
    assert!(m.in_b, "bottom < 1 < 2 ≤ 3");
    assert!(!m.in_c);
    assert!(m.is_embedding);
    assert!(m.in_p);
    assert!(!m.in_q);
}

#[test]
fn classify_critical_example_in_a2_not_o2() {
    let m = classify(&critical_example(), 2);
    assert!(m.in_a);
    assert!(!m.is_embedding);
    assert!(!m.in_o);
}

#[test]
fn membership_flag_equations_hold_on_fixtures() {
    let fixtures = [
        (PolyMap3::figure_eight(), 6),
        (PolyMap3::trefoil_quintic(), 5),
        (PolyMap3::line(), 2),
        (phi0(), 3),
        (critical_example(), 2),
    ];
    for (map, d) in fixtures {
        let m = classify(&map, d);
        assert_eq!(m.in_o, m.in_a && m.is_embedding);
        assert_eq!(m.in_p, m.in_b && m.is_embedding);
        assert_eq!(m.in_q, m.in_c && m.is_embedding);
        assert!(!m.in_c || m.in_a);
        assert!(!m.in_b || m.in_a);
    }
}

#[test]
fn sign_class_of_figure_eight_and_mirror() {
    let fig8 = PolyMap3::figure_eight();
    assert_eq!(sign_class(&fig8, 6).unwrap(), SignClass { e1: 1, e2: 1, e3: 1 });
    assert_eq!(sign_class(&fig8.mirror(), 6).unwrap(), SignClass { e1: 1, e2: -1, e3: -1 });
    let moment = PolyMap3::new(
        UniPoly::var(),
        UniPoly::from_ints(&[0, 0, 1]),
        UniPoly::from_ints(&[0, 0, 0, 1]),
    );
    assert_eq!(sign_class(&moment, 3).unwrap(), SignClass { e1: 1, e2: 1, e3: 1 });
    assert_eq!(sign_class(&phi0(), 3), Err(KnotError::NotInCd(3)));
}

#[test]
fn mirror_is_an_involution_preserving_embeddings() {
    assert_eq!(PolyMap3::line().mirror().h, UniPoly::from_ints(&[0, -1]));
    let fig8 = PolyMap3::figure_eight();
    assert_eq!(fig8.mirror().mirror(), fig8);
    assert!(check_embedding(&fig8.mirror()).is_embedding());
}

#[test]
fn sign_class_flips_under_mirror_on_fixtures() {
    for (map, d) in [(PolyMap3::figure_eight(), 6), (PolyMap3::trefoil_quintic(), 5)] {
        let e = sign_class(&map, d).unwrap();
        let em = sign_class(&map.mirror(), d).unwrap();
        assert_eq!((em.e1, em.e2, em.e3), (e.e1, -e.e2, -e.e3));
    }
}

#[test]
fn source_affine_examples() {
    let line = PolyMap3::line();
    let moved = line.compose_source_affine(&rat_i(2), &rat_i(1)).unwrap();
    assert_eq!(moved.h, UniPoly::from_ints(&[1, 2]));
    assert_eq!(line.compose_source_affine(&rat_i(1), &rat_i(0)).unwrap(), line);
    assert_eq!(line.compose_source_affine(&rat_i(0), &rat_i(1)), Err(KnotError::ZeroScale));
    let fig8 = PolyMap3::figure_eight();
    let re = fig8.compose_source_affine(&rat(1, 2), &rat_i(0)).unwrap();
    assert!(check_embedding(&re).is_embedding());
}

#[test]
fn target_affine_examples() {
    let line = PolyMap3::line();
    let moved = line
        .compose_target_affine(&identity_matrix(), &[rat_i(1), rat_i(2), rat_i(3)])
        .unwrap();
    assert_eq!(moved.f, UniPoly::one());
    assert_eq!(moved.g, UniPoly::from_ints(&[2]));
    assert_eq!(moved.h, UniPoly::from_ints(&[3, 1]));

    let mut flip = identity_matrix();
    flip[1][1] = rat_i(-1);
    flip[2][2] = rat_i(-1);
    let fig8 = PolyMap3::figure_eight();
    assert_eq!(fig8.compose_target_affine(&flip, &zero_vector3()).unwrap(), fig8.mirror());

    // Lower-triangular with positive diagonal keeps the exact degrees.
    let mut tri = identity_matrix();
    tri[0][0] = rat_i(2);
    tri[1][0] = rat_i(3);
    tri[2][1] = rat(-1, 2);
    let moved = fig8.compose_target_affine(&tri, &zero_vector3()).unwrap();
    assert!(classify(&moved, 6).in_q);

    let mut sing = identity_matrix();
    sing[2][2] = rat_i(0);
    assert_eq!(fig8.compose_target_affine(&sing, &zero_vector3()), Err(KnotError::SingularMatrix));
}

#[test]
fn coeff_vector_layout() {
    assert_eq!(
        coeff_vector(&PolyMap3::line(), 2).unwrap(),
        [0, 0, 0, 0, 1, 0].map(rat_i).to_vec()
    );
    let m = PolyMap3::new(UniPoly::one(), UniPoly::var(), UniPoly::from_ints(&[0, 0, 1]));
    assert_eq!(
        coeff_vector(&m, 3).unwrap(),
        [1, 0, 0, 1, 0, 0, 0, 1, 0].map(rat_i).to_vec()
    );
    let v = coeff_vector(&PolyMap3::figure_eight(), 6).unwrap();
    assert_eq!(v.len(), 18);
    assert_eq!(v[0], rat(5184, 100));
    assert_eq!(v[17], rat(1, 2));
    // degree cap violation
    let wide = PolyMap3::new(UniPoly::from_ints(&[1, 2]), UniPoly::var(), UniPoly::from_ints(&[0, 0, 1]));
    assert_eq!(coeff_vector(&wide, 2), Err(KnotError::NotInAd(2)));
}

#[test]
fn metric_axioms_on_examples() {
    let a = PolyMap3::line();
    let b = PolyMap3::new(UniPoly::zero(), UniPoly::zero(), UniPoly::from_ints(&[0, 2]));
    assert_eq!(metric_rho_squared(&a, &a, 2).unwrap(), rat_i(0));
    assert_eq!(metric_rho_squared(&a, &b, 2).unwrap(), rat_i(1));
    let fig8 = PolyMap3::figure_eight();
    assert_eq!(
        metric_rho_squared(&fig8, &fig8.mirror(), 6).unwrap(),
        metric_rho_squared(&fig8.mirror(), &fig8, 6).unwrap()
    );
}

#[test]
fn tail_angle_limits() {
    assert!(tail_angle(&PolyMap3::line(), &rat_i(5)).unwrap().abs() < 1e-12);
    let fig8 = PolyMap3::figure_eight();
    assert!(tail_angle(&fig8, &rat_i(1000)).unwrap() < 0.1);
    assert!(tail_angle(&fig8, &rat_i(-1000)).unwrap() > std::f64::consts::PI - 0.1);
    assert_eq!(tail_angle(&PolyMap3::line(), &rat_i(0)), Err(KnotError::ZeroVector));
}

#[test]
fn tail_angle_trend_on_fixtures() {
    // |cos θ| ≥ 0.9 for |t| from 100 to 1e6 (log-spaced samples).
    for map in [PolyMap3::figure_eight(), PolyMap3::trefoil_quintic()] {
        for k in 0..25 {
            let mag = 100i64 * 1_500i64.pow(0) * (1 << (k / 2)) as i64; // 100..~409600
            for t in [rat_i(mag), rat_i(-mag), rat_i(1_000_000), rat_i(-1_000_000)] {
                let theta = tail_angle(&map, &t).unwrap();
                assert!(theta.cos().abs() >= 0.9, "t={t}, θ={theta}");
            }
        }
    }
}

#[test]
fn cayley_rotations_are_orthogonal() {
    let m = cayley_rotation(&rat(1, 3), &rat(-2, 7), &rat(1, 8));
    for i in 0..3 {
        for j in 0..3 {
            let dot: Rat = (0..3).map(|k| &m[i][k] * &m[j][k]).sum();
            assert_eq!(dot, if i == j { Rat::one() } else { Rat::zero() });
        }
    }
    let det = super::det3(&m);
    assert_eq!(det, Rat::one());
}

fn random_map(rng: &mut ChaCha8Rng, max_deg: usize, coeff_bound: i64) -> PolyMap3 {
    let poly = |rng: &mut ChaCha8Rng| {
        let d = rng.gen_range(0..=max_deg);
        UniPoly::from_coeffs(
            (0..=d).map(|_| rat_i(rng.gen_range(-coeff_bound..=coeff_bound))).collect(),
        )
    };
    PolyMap3::new(poly(rng), poly(rng), poly(rng))
}

#[test]
fn witnesses_pin_divided_difference_zeros() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xBEEF);
    let mut seen_false = 0;
    let tol = 1e-3;
    for _ in 0..120 {
        let map = random_map(&mut rng, 4, 3);
        if let EmbeddingCheck::NotEmbedding(ws) = check_embedding(&map) {
            seen_false += 1;
            for w in &ws {
                let s = w.s0.mid();
                let t = w.t0.mid();
                for p in map.components() {
                    if p.deg_usize().map_or(true, |d| d == 0) {
                        continue;
                    }
                    let dd = bipoly::divided_difference(p);
                    let v = dd.eval(&s, &t).to_f64().unwrap().abs();
                    assert!(v < tol, "witness residual {v} for {map:?}");
                }
            }
        }
    }
    assert!(seen_false > 10, "expected plenty of non-embeddings, saw {seen_false}");
}

#[test]
fn affine_actions_preserve_the_embedding_verdict() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xA11E);
    let fixtures =
        [PolyMap3::figure_eight(), PolyMap3::trefoil_quintic(), PolyMap3::line(), phi0()];
    for i in 0..50 {
        let base = &fixtures[i % fixtures.len()];
        let before = check_embedding(base).is_embedding();
        let alpha = rat_i(rng.gen_range(1..6));
        let beta = rat_i(rng.gen_range(-5..6));
        let re = base.compose_source_affine(&alpha, &beta).unwrap();
        assert_eq!(check_embedding(&re).is_embedding(), before);
        let rot = cayley_rotation(
            &rat(rng.gen_range(-3..4), 7),
            &rat(rng.gen_range(-3..4), 5),
            &rat(rng.gen_range(-3..4), 9),
        );
        let v = [rat_i(rng.gen_range(-3..4)), rat_i(rng.gen_range(-3..4)), rat_i(rng.gen_range(-3..4))];
        let moved = base.compose_target_affine(&rot, &v).unwrap();
        assert_eq!(check_embedding(&moved).is_embedding(), before);
    }
}

#[test]
fn quick_oracle_cross_check() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED);
    for _ in 0..25 {
        let map = random_map(&mut rng, 4, 2);
        let oracle = embedding_oracle_numeric(&map, 120, &rat_i(8));
        let exact = check_embedding(&map).is_embedding();
        if !oracle {
            assert!(!exact, "oracle flagged a certified embedding: {map:?}");
        }
    }
}
