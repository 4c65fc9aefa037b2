//! Perturbation of a map with exact degree sequence `(d−2, d−1, d)` into a
//! knot with the same degrees, moving the coefficient vector by at most
//! `ε/2`.
//!
//! Two linear nudges do the work. First `h ← h + (r/2)t` with
//! `r = min(m₁, ε/2)/2`, where `m₁` bounds `|h'|` from below over the real
//! roots of `g'` at which `h'` survives; this makes the plane curve
//! `(g, h)` an immersion. Its finitely many self-intersections then bound
//! `m₂`, the least nonzero slope `|f(sᵢ)−f(tᵢ)|/|sᵢ−tᵢ|`, and
//! `f ← f + (σ/2)t` with `σ = min(m₂, ε/2)/2` separates every remaining
//! double point.

use num::{One, Signed};

use crate::knotspace::{check_embedding, classify_given, KnotError, PolyMap3};
use crate::polycore::system::{certified_sign, off_diagonal_common_zeros, SystemZeros};
use crate::polycore::{bipoly, Algebraic, Rat, UniPoly};

use super::{in_c_degrees, IsotopyError};

/// Returns a knot with exact degree sequence `(d−2, d−1, d)` within
/// coefficient distance `ε/2` of the input (exactly: the squared distance is
/// at most `(ε/2)²`). The input must already have that degree sequence.
pub fn densify_to_q(phi: &PolyMap3, d: usize, eps: &Rat) -> Result<PolyMap3, IsotopyError> {
    assert!(eps.is_positive());
    if !in_c_degrees(phi, d) {
        return Err(IsotopyError::Knot(KnotError::NotInCd(d)));
    }
    // Below degree 4 every map with the exact degree sequence is already a
    // knot (the second component alone is injective with nonzero slope).
    if d <= 3 {
        return Ok(phi.clone());
    }
    let half_eps = eps / Rat::from_integer(2.into());

    let mut shrink = Rat::one();
    for _ in 0..8 {
        let bound1 = min_slope_bound_m1(phi);
        let r = tighten(&bound1, &half_eps) * &shrink;
        let mut h_hat = phi.h.clone();
        h_hat = h_hat.add(&UniPoly::monomial(1, &r / Rat::from_integer(2.into())));

        let bound2 = min_separation_m2(&phi.f, &phi.g, &h_hat);
        let sigma = tighten(&bound2, &half_eps) * &shrink;
        let mut f_hat = phi.f.clone();
        f_hat = f_hat.add(&UniPoly::monomial(1, &sigma / Rat::from_integer(2.into())));

        let psi = PolyMap3::new(f_hat, phi.g.clone(), h_hat);
        let emb = check_embedding(&psi).is_embedding();
        if classify_given(&psi, d, emb).in_q {
            return Ok(psi);
        }
        shrink /= Rat::from_integer(4.into());
    }
    Err(IsotopyError::PerturbationFailed)
}

/// Half of `min(bound, cap)`, with an empty minimum treated as +∞.
fn tighten(bound: &Option<Rat>, cap: &Rat) -> Rat {
    let m = match bound {
        Some(b) if b < cap => b.clone(),
        _ => cap.clone(),
    };
    m / Rat::from_integer(2.into())
}

/// Positive lower bound on `|h'|` over the real roots of `g'` where `h'`
/// does not vanish; `None` when no such root exists.
fn min_slope_bound_m1(phi: &PolyMap3) -> Option<Rat> {
    let gp = phi.g.derivative();
    let hp = phi.h.derivative();
    let sf = gp.squarefree_part();
    if sf.deg_usize().map_or(true, |d| d == 0) {
        return None;
    }
    let shared = sf.gcd(&hp);
    let survivors = if shared.deg_usize().map_or(false, |d| d > 0) {
        sf.div_exact(&shared)
    } else {
        sf
    };
    if survivors.deg_usize().map_or(true, |d| d == 0) {
        return None;
    }
    let mut best: Option<Rat> = None;
    for mut root in Algebraic::roots_of(&survivors) {
        loop {
            let enc = hp.eval_interval(&root.interval());
            if let Some(sign) = enc.sign() {
                debug_assert!(sign != 0, "h' was divided out at shared roots");
                let low = enc.lo.abs().min(enc.hi.abs());
                best = Some(match best {
                    None => low,
                    Some(b) => b.min(low),
                });
                break;
            }
            root.refine_once();
        }
    }
    best
}

/// Positive lower bound on the nonzero divided differences of `f` over the
/// self-intersections of the plane curve `(g, h_hat)`; `None` when every
/// self-intersection has a vanishing `f`-slope or none exist.
fn min_separation_m2(f: &UniPoly, g: &UniPoly, h_hat: &UniPoly) -> Option<Rat> {
    let system = [bipoly::divided_difference(g), bipoly::divided_difference(h_hat)];
    let zeros = match off_diagonal_common_zeros(&system) {
        SystemZeros::Finite(z) => z,
        SystemZeros::Curve(..) => {
            unreachable!("full-degree plane projections have coprime divided differences")
        }
    };
    let fd = bipoly::divided_difference(f);
    let mut best: Option<Rat> = None;
    for zb in zeros {
        let mut s = zb.s;
        let mut t = zb.t;
        if certified_sign(&fd, &mut s, &mut t) == 0 {
            continue;
        }
        let enc = fd.eval_box(&s.interval(), &t.interval());
        let low = enc.lo.abs().min(enc.hi.abs());
        debug_assert!(low.is_positive());
        best = Some(match best {
            None => low,
            Some(b) => b.min(low),
        });
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knotspace::classify;
    use crate::polycore::{rat, rat_i};

    fn moment_like() -> PolyMap3 {
        PolyMap3::new(
            UniPoly::from_ints(&[0, 0, 1]),
            UniPoly::from_ints(&[0, 0, 0, 1]),
            UniPoly::from_ints(&[0, 0, 0, 0, 1]),
        )
    }

    #[test]
    fn moment_curve_with_cusp_becomes_a_knot() {
        let phi = moment_like();
        assert!(!check_embedding(&phi).is_embedding(), "t=0 is a cusp");
        let eps = rat(1, 10);
        let psi = densify_to_q(&phi, 4, &eps).unwrap();
        assert!(classify(&psi, 4).in_q);
        let rho2 = crate::knotspace::metric_rho_squared(&phi, &psi, 4).unwrap();
        assert!(rho2 <= rat(1, 400), "rho^2 = {rho2}");
    }

    #[test]
    fn knot_input_stays_close_and_in_space() {
        let phi = PolyMap3::figure_eight();
        let psi = densify_to_q(&phi, 6, &rat(1, 10)).unwrap();
        assert!(classify(&psi, 6).in_q);
        let rho2 = crate::knotspace::metric_rho_squared(&phi, &psi, 6).unwrap();
        assert!(rho2 <= rat(1, 400));
    }

    #[test]
    fn monotone_second_component_takes_the_cap_branch() {
        // g' = 3t² + 3 has no real roots, so the first nudge is ε/8 exactly.
        let phi = PolyMap3::new(
            UniPoly::from_ints(&[0, 0, 1]),
            UniPoly::from_ints(&[0, 3, 0, 1]),
            UniPoly::from_ints(&[0, 0, 0, 0, 1]),
        );
        let eps = rat(1, 10);
        let psi = densify_to_q(&phi, 4, &eps).unwrap();
        let nudge = psi.h.coeff(1) - phi.h.coeff(1);
        assert_eq!(nudge, rat(1, 80), "r/2 with r = eps/4");
        assert!(classify(&psi, 4).in_q);
    }

    #[test]
    fn rejects_wrong_degree_sequences() {
        let bad = PolyMap3::line();
        assert_eq!(
            densify_to_q(&bad, 4, &rat_i(1)),
            Err(IsotopyError::Knot(KnotError::NotInCd(4)))
        );
    }
}
