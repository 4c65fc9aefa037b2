use super::bracket::{bracket_from_pd, jones_from_bracket};
use super::*;
use crate::polycore::{rat, rat_i};

#[test]
fn plane_graphs_have_empty_diagrams() {
    // (0, t, t²) projects to the graph of a function: injective, no crossings
    let m = PolyMap3::new(UniPoly::zero(), UniPoly::var(), UniPoly::from_ints(&[0, 0, 1]));
    let d = KnotDiagram::from_map(&m, 1).unwrap();
    assert_eq!(d.crossing_count(), 0);
    assert_eq!(gauss_code(&d), "");
    assert_eq!(writhe(&d), 0);
    assert_eq!(jones(&d).unwrap(), LaurentPoly::one('q'));
    assert_eq!(determinant(&d).unwrap(), 1);

    let line = KnotDiagram::from_map(&PolyMap3::line(), 1).unwrap();
    assert_eq!(line.crossing_count(), 0);
}

#[test]
fn trefoil_projection_has_three_transverse_crossings() {
    let tre = PolyMap3::trefoil_quintic();
    let crossings = find_crossings(&tre, 1).unwrap();
    assert_eq!(crossings.len(), 3);
    for c in &crossings {
        assert!(c.s_param.width() <= rat(1, 1_000_000_000));
        assert!(c.t_param.width() <= rat(1, 1_000_000_000));
        assert!(c.s_param.hi < c.t_param.lo);
        assert!(c.sign == 1 || c.sign == -1);
    }
}

#[test]
fn trefoil_invariants_match_the_reference_code() {
    let tre = PolyMap3::trefoil_quintic();
    let d = KnotDiagram::from_map(&tre, 1).unwrap();
    assert_eq!(d.crossing_count(), 3);
    assert_eq!(writhe(&d).abs(), 3);

    let v = jones(&d).unwrap();
    let (ref_pd, ref_w) = pd_from_text("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]");
    let ref_v = jones_from_bracket(&bracket_from_pd(&ref_pd).unwrap(), ref_w).unwrap();
    assert!(v == ref_v || v == ref_v.invert_variable(), "{v} vs {ref_v}");
    assert_eq!(determinant(&d).unwrap(), 3);

    // six-symbol alternating code, each label twice
    let code = gauss_code(&d);
    assert_eq!(code.matches(['1', '2', '3']).count(), 6);
    let overs = code.matches('O').count();
    let unders = code.matches('U').count();
    assert_eq!((overs, unders), (3, 3));
}

#[test]
fn figure_eight_invariants() {
    let fig8 = PolyMap3::figure_eight();
    let d = KnotDiagram::from_map(&fig8, 1).unwrap();
    // the parameter-pair solutions stay within the Bézout budget of the two
    // retained divided differences
    assert!(d.crossing_count() <= 10, "crossings = {}", d.crossing_count());
    let v = jones(&d).unwrap();
    let expect =
        LaurentPoly::from_terms('q', &[(-2, 1), (-1, -1), (0, 1), (1, -1), (2, 1)]);
    assert_eq!(v, expect);
    assert_eq!(determinant(&d).unwrap(), 5);
}

#[test]
fn reflection_flips_jones_and_keeps_determinant() {
    // (f, g, −h) is an honest reflection (determinant −1): Jones inverts.
    for map in [PolyMap3::trefoil_quintic(), PolyMap3::figure_eight()] {
        let d = KnotDiagram::from_map(&map, 1).unwrap();
        let reflected = PolyMap3::new(map.f.clone(), map.g.clone(), map.h.neg());
        let dm = KnotDiagram::from_map(&reflected, 1).unwrap();
        let v = jones(&d).unwrap();
        let vm = jones(&dm).unwrap();
        assert_eq!(vm, v.invert_variable());
        assert_eq!(determinant(&d).unwrap(), determinant(&dm).unwrap());
    }
}

#[test]
fn sign_class_involution_preserves_jones() {
    // (f, −g, −h) is a π-rotation about the first axis: the knot type (and
    // Jones) is unchanged even though the sign class flips — the two maps
    // sit in different path components of the exact-degree knot space.
    for map in [PolyMap3::trefoil_quintic(), PolyMap3::figure_eight()] {
        let d = KnotDiagram::from_map(&map, 1).unwrap();
        let dm = KnotDiagram::from_map(&map.mirror(), 1).unwrap();
        assert_eq!(jones(&d).unwrap(), jones(&dm).unwrap());
        assert_eq!(determinant(&d).unwrap(), determinant(&dm).unwrap());
    }
}

#[test]
fn jones_is_projection_independent() {
    let fig8 = PolyMap3::figure_eight();
    let base = jones(&KnotDiagram::from_map(&fig8, 1).unwrap()).unwrap();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    for _ in 0..5 {
        let small = |rng: &mut rand_chacha::ChaCha8Rng| {
            Rat::new(BigInt::from(rng.gen_range(-5i64..=5)), BigInt::from(16))
        };
        let rot = cayley_rotation(&small(&mut rng), &small(&mut rng), &small(&mut rng));
        let turned = fig8.compose_target_affine(&rot, &zero_vector3()).unwrap();
        let d = diagram_with_retries(&turned, 1, 99, 8).unwrap();
        assert_eq!(jones(&d).unwrap(), base);
    }
}

#[test]
fn crossing_count_respects_the_bezout_budget() {
    for (map, axis) in [
        (PolyMap3::trefoil_quintic(), 1u8),
        (PolyMap3::figure_eight(), 1),
        (PolyMap3::figure_eight(), 2),
    ] {
        let (p1, p2, _) = split_axes(&map, axis);
        let b1 = p1.deg_usize().unwrap() - 1;
        let b2 = p2.deg_usize().unwrap() - 1;
        let crossings = find_crossings(&map, axis).unwrap();
        assert!(
            2 * crossings.len() <= b1 * b2,
            "{} crossings exceeds half the budget {}",
            crossings.len(),
            b1 * b2
        );
    }
}

#[test]
fn each_crossing_appears_once_over_once_under() {
    let d = KnotDiagram::from_map(&PolyMap3::figure_eight(), 1).unwrap();
    let n = d.crossing_count();
    assert_eq!(d.traversal.len(), 2 * n);
    for c in 0..n {
        let visits: Vec<&Visit> = d.traversal.iter().filter(|v| v.crossing == c).collect();
        assert_eq!(visits.len(), 2);
        assert_ne!(visits[0].over, visits[1].over);
    }
}

#[test]
fn depths_separate_and_transversality_holds() {
    let tre = PolyMap3::trefoil_quintic();
    let crossings = find_crossings(&tre, 1).unwrap();
    let depth = &tre.f;
    for c in &crossings {
        let ds = depth.eval_interval(&QInterval::new(c.s_param.lo.clone(), c.s_param.hi.clone()));
        let dt = depth.eval_interval(&QInterval::new(c.t_param.lo.clone(), c.t_param.hi.clone()));
        match c.over_strand {
            OverStrand::SSide => assert!(ds.lo > dt.hi),
            OverStrand::TSide => assert!(dt.lo > ds.hi),
        }
    }
}

#[test]
fn constancy_check_accepts_constant_and_scaled_paths() {
    let tre = PolyMap3::trefoil_quintic();
    let path = crate::isotopy::constant_path(&tre);
    assert!(invariant_constancy_check(&path, 5, 1234).unwrap());

    let fig8 = PolyMap3::figure_eight();
    let ones = [rat_i(2), rat_i(2), rat_i(2)];
    let zeros = crate::knotspace::zero_vector3();
    let path = crate::isotopy::target_affine_path(&fig8, &ones, &zeros, &zeros).unwrap();
    assert!(invariant_constancy_check(&path, 5, 1234).unwrap());
}

#[test]
fn constancy_check_rejects_the_shrink_endpoints() {
    // the shrink family leaves the exact-degree space: its far endpoint is a
    // trivial knot, so the Jones polynomial jumps
    let fig8 = PolyMap3::figure_eight();
    let path = crate::isotopy::shrink_isotopy(&fig8).unwrap();
    assert!(!invariant_constancy_check(&path, 2, 7).unwrap());
}
