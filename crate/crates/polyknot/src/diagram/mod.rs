//! Knot diagrams from polynomial knots: project out one coordinate, locate
//! the finitely many transverse double points of the plane curve (common
//! zeros of the two retained divided differences), read over/under from the
//! dropped coordinate with the viewer at +∞, and certify transversality and
//! depth separation by exact interval refinement. The diagram carries a
//! parameter-ordered traversal and a planar-diagram code for the bracket
//! state sum.

mod bracket;

use num::{BigInt, One};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::isotopy::CoefficientPath;
use crate::knotspace::{cayley_rotation, zero_vector3, PolyMap3};
use crate::polycore::system::{certified_sign, off_diagonal_common_zeros, SystemZeros};
use crate::polycore::unipoly::RootInterval;
use crate::polycore::{bipoly, Algebraic, BiPoly, QInterval, Rat, UniPoly};

pub use bracket::{
    bracket_from_pd, determinant, jones, jones_from_bracket, kauffman_bracket, pd_from_text,
    LaurentPoly,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    /// A candidate double point is non-transverse, two crossings coincide in
    /// projection, or depth values cannot be certified distinct. Retry after
    /// a small rotation.
    #[error("projection is not regular")]
    IrregularProjection,
    #[error("state sum over 2^n smoothings refused for n > 24")]
    TooManyCrossings,
    /// Internal consistency failure of the bracket normalization.
    #[error("residual exponents not divisible by four")]
    NonIntegerExponent,
}

/// Which strand passes over at a crossing: the earlier (`s`) or later (`t`)
/// parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OverStrand {
    SSide,
    TSide,
}

/// A certified transverse double point of the projection, `s < t`.
#[derive(Clone, Debug)]
pub struct Crossing {
    pub s_param: RootInterval,
    pub t_param: RootInterval,
    pub over_strand: OverStrand,
    /// Determinant sign of (over-tangent, under-tangent) in the plane.
    pub sign: i8,
}

/// One pass of the curve through a crossing, in parameter order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Visit {
    pub crossing: usize,
    pub over: bool,
    pub sign: i8,
}

/// A long-knot diagram closed up at infinity. Edges are numbered along the
/// traversal; edge `k` enters visit `k` and visit `k` exits into edge
/// `k + 1 (mod 2n)`.
#[derive(Clone, Debug)]
pub struct KnotDiagram {
    pub crossings: Vec<Crossing>,
    pub traversal: Vec<Visit>,
    pd: Vec<[usize; 4]>,
}

impl KnotDiagram {
    /// Extracts the diagram of an embedding by dropping the given axis
    /// (1-based; the default projection drops the first coordinate).
    pub fn from_map(map: &PolyMap3, drop_axis: u8) -> Result<KnotDiagram, DiagramError> {
        build_diagram(map, drop_axis)
    }

    pub fn pd_code(&self) -> &[[usize; 4]] {
        &self.pd
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }
}

fn cutoff() -> Rat {
    Rat::new(BigInt::one(), BigInt::one() << 64)
}

fn param_width() -> Rat {
    Rat::new(BigInt::one(), BigInt::from(1_000_000_000u64))
}

/// Retained plane components and the depth component for a dropped axis,
/// ordered so the plane frame is right-handed seen from +∞ on that axis.
fn split_axes(map: &PolyMap3, drop_axis: u8) -> (&UniPoly, &UniPoly, &UniPoly) {
    match drop_axis {
        1 => (&map.g, &map.h, &map.f),
        2 => (&map.h, &map.f, &map.g),
        3 => (&map.f, &map.g, &map.h),
        _ => panic!("axes are numbered 1..=3"),
    }
}

struct Candidate {
    s: Algebraic,
    t: Algebraic,
    over: OverStrand,
    sign: i8,
}

/// All transverse double points of the projection, fully certified. The
/// input must be an embedding.
pub fn find_crossings(map: &PolyMap3, drop_axis: u8) -> Result<Vec<Crossing>, DiagramError> {
    Ok(certified_candidates(map, drop_axis)?
        .into_iter()
        .map(|c| Crossing {
            s_param: RootInterval { lo: c.s.lo().clone(), hi: c.s.hi().clone(), multiplicity: 1 },
            t_param: RootInterval { lo: c.t.lo().clone(), hi: c.t.hi().clone(), multiplicity: 1 },
            over_strand: c.over,
            sign: c.sign,
        })
        .collect())
}

fn certified_candidates(map: &PolyMap3, drop_axis: u8) -> Result<Vec<Candidate>, DiagramError> {
    let (p1, p2, depth) = split_axes(map, drop_axis);
    let dds: Vec<BiPoly> = [p1, p2]
        .iter()
        .map(|p| bipoly::divided_difference(p))
        .filter(|d| !d.is_zero())
        .collect();
    if dds.is_empty() {
        return Err(DiagramError::IrregularProjection);
    }
    let boxes = match off_diagonal_common_zeros(&dds) {
        SystemZeros::Finite(b) => b,
        SystemZeros::Curve(..) => return Err(DiagramError::IrregularProjection),
    };

    // Tangent determinant of the projection at a parameter pair.
    let d1 = p1.derivative();
    let d2 = p2.derivative();
    let tangent_det = bi_s(&d1).mul(&bi_t(&d2)).sub(&bi_s(&d2).mul(&bi_t(&d1)));

    let mut out = Vec::new();
    for zb in boxes {
        let mut s = zb.s;
        let mut t = zb.t;
        s.refine_below(&param_width());
        t.refine_below(&param_width());

        // transversality of the two branches
        let cross_under_over_base = certified_sign(&tangent_det, &mut s, &mut t);
        if cross_under_over_base == 0 {
            return Err(DiagramError::IrregularProjection);
        }

        // depth separation decides over/under (viewer at +∞ on the axis)
        let over = loop {
            let es = depth.eval_interval(&s.interval());
            let et = depth.eval_interval(&t.interval());
            if es.lo > et.hi {
                break OverStrand::SSide;
            }
            if et.lo > es.hi {
                break OverStrand::TSide;
            }
            if s.width() <= cutoff() && t.width() <= cutoff() {
                return Err(DiagramError::IrregularProjection);
            }
            s.refine_once();
            t.refine_once();
        };

        // tangent_det is det(tangent at s, tangent at t); the crossing sign
        // is det(over-tangent, under-tangent).
        let sign = match over {
            OverStrand::SSide => cross_under_over_base,
            OverStrand::TSide => -cross_under_over_base,
        };
        out.push(Candidate { s, t, over, sign });
    }

    // Distinct crossings must land on distinct plane points (a shared point
    // is a multiple point: not a regular projection).
    separate_positions(&mut out, p1, p2)?;
    Ok(out)
}

fn bi_s(p: &UniPoly) -> BiPoly {
    BiPoly::from_terms(p.coeffs().iter().enumerate().map(|(i, c)| ((i as u32, 0), c.clone())))
}

fn bi_t(p: &UniPoly) -> BiPoly {
    BiPoly::from_terms(p.coeffs().iter().enumerate().map(|(i, c)| ((0, i as u32), c.clone())))
}

fn plane_pos(p1: &UniPoly, p2: &UniPoly, a: &Algebraic) -> (QInterval, QInterval) {
    (p1.eval_interval(&a.interval()), p2.eval_interval(&a.interval()))
}

fn separate_positions(
    cands: &mut [Candidate],
    p1: &UniPoly,
    p2: &UniPoly,
) -> Result<(), DiagramError> {
    let lim = cutoff();
    for i in 0..cands.len() {
        for j in (i + 1)..cands.len() {
            loop {
                let (xi, yi) = plane_pos(p1, p2, &cands[i].s);
                let (xj, yj) = plane_pos(p1, p2, &cands[j].s);
                if !xi.intersects(&xj) || !yi.intersects(&yj) {
                    break;
                }
                if cands[i].s.width() <= lim && cands[j].s.width() <= lim {
                    return Err(DiagramError::IrregularProjection);
                }
                cands[i].s.refine_once();
                cands[j].s.refine_once();
            }
        }
    }
    Ok(())
}

fn build_diagram(map: &PolyMap3, drop_axis: u8) -> Result<KnotDiagram, DiagramError> {
    let mut cands = certified_candidates(map, drop_axis)?;

    // Traversal needs totally ordered parameters. All 2n values are distinct
    // (shared parameters would be multiple points, excluded above), so
    // refinement separates them.
    loop {
        let mut intervals: Vec<(usize, bool, QInterval)> = Vec::new();
        for (idx, c) in cands.iter().enumerate() {
            intervals.push((idx, true, c.s.interval()));
            intervals.push((idx, false, c.t.interval()));
        }
        let mut overlap = None;
        'outer: for a in 0..intervals.len() {
            for b in (a + 1)..intervals.len() {
                if intervals[a].2.intersects(&intervals[b].2) {
                    overlap = Some((intervals[a].0, intervals[b].0));
                    break 'outer;
                }
            }
        }
        match overlap {
            None => break,
            Some((ci, cj)) => {
                let lim = cutoff();
                if cands[ci].s.width() <= lim && cands[cj].s.width() <= lim {
                    return Err(DiagramError::IrregularProjection);
                }
                cands[ci].s.refine_once();
                cands[ci].t.refine_once();
                cands[cj].s.refine_once();
                cands[cj].t.refine_once();
            }
        }
    }

    let mut events: Vec<(Rat, usize, bool)> = Vec::new();
    for (idx, c) in cands.iter().enumerate() {
        events.push((c.s.lo().clone(), idx, true));
        events.push((c.t.lo().clone(), idx, false));
    }
    events.sort_by(|a, b| a.0.cmp(&b.0));

    let traversal: Vec<Visit> = events
        .iter()
        .map(|&(_, idx, is_s)| Visit {
            crossing: idx,
            over: (cands[idx].over == OverStrand::SSide) == is_s,
            sign: cands[idx].sign,
        })
        .collect();

    // Planar-diagram slots, counterclockwise from the incoming under-edge.
    let n2 = traversal.len();
    let mut visit_pos: Vec<[usize; 2]> = vec![[0, 0]; cands.len()];
    for (pos, &(_, idx, is_s)) in events.iter().enumerate() {
        visit_pos[idx][if is_s { 0 } else { 1 }] = pos;
    }
    let mut pd = Vec::with_capacity(cands.len());
    for (idx, c) in cands.iter().enumerate() {
        let [s_pos, t_pos] = visit_pos[idx];
        let (over_pos, under_pos) = match c.over {
            OverStrand::SSide => (s_pos, t_pos),
            OverStrand::TSide => (t_pos, s_pos),
        };
        let a = under_pos;
        let c_out = (under_pos + 1) % n2;
        let over_in = over_pos;
        let over_out = (over_pos + 1) % n2;
        // sign < 0 means the over-tangent sits counterclockwise right after
        // the incoming under-edge (slot b = incoming over).
        let (b, d) =
            if c.sign < 0 { (over_in, over_out) } else { (over_out, over_in) };
        pd.push([a, b, c_out, d]);
    }

    let crossings = cands
        .into_iter()
        .map(|c| Crossing {
            s_param: RootInterval { lo: c.s.lo().clone(), hi: c.s.hi().clone(), multiplicity: 1 },
            t_param: RootInterval { lo: c.t.lo().clone(), hi: c.t.hi().clone(), multiplicity: 1 },
            over_strand: c.over,
            sign: c.sign,
        })
        .collect();

    Ok(KnotDiagram { crossings, traversal, pd })
}

/// Signed Gauss code along the traversal, labels assigned by first visit.
pub fn gauss_code(diagram: &KnotDiagram) -> String {
    let mut labels: Vec<Option<usize>> = vec![None; diagram.crossings.len()];
    let mut next = 1usize;
    let mut out = String::new();
    for v in &diagram.traversal {
        let label = match labels[v.crossing] {
            Some(l) => l,
            None => {
                labels[v.crossing] = Some(next);
                next += 1;
                next - 1
            }
        };
        out.push(if v.over { 'O' } else { 'U' });
        out.push_str(&label.to_string());
        out.push(if v.sign > 0 { '+' } else { '-' });
    }
    out
}

/// Sum of crossing signs.
pub fn writhe(diagram: &KnotDiagram) -> i64 {
    diagram.crossings.iter().map(|c| c.sign as i64).sum()
}

/// Builds a diagram, retrying after small exact rotations when the
/// projection is irregular. The rotation sequence is seeded.
pub fn diagram_with_retries(
    map: &PolyMap3,
    drop_axis: u8,
    seed: u64,
    attempts: usize,
) -> Result<KnotDiagram, DiagramError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut current = map.clone();
    let mut last = DiagramError::IrregularProjection;
    for _ in 0..attempts.max(1) {
        match KnotDiagram::from_map(&current, drop_axis) {
            Ok(d) => return Ok(d),
            Err(DiagramError::IrregularProjection) => {
                last = DiagramError::IrregularProjection;
                let small = |rng: &mut ChaCha8Rng| {
                    Rat::new(BigInt::from(rng.gen_range(-8i64..=8)), BigInt::from(64))
                };
                let rot = cayley_rotation(&small(&mut rng), &small(&mut rng), &small(&mut rng));
                current = map
                    .compose_target_affine(&rot, &zero_vector3())
                    .expect("rotations are nonsingular");
            }
            Err(e) => return Err(e),
        }
    }
    Err(last)
}

/// Empirical topological-invariance witness along a coefficient path: the
/// Jones polynomial of every sample's diagram must be identical. Samples
/// whose projection is irregular are retried under seeded rotations (proper
/// rotations preserve the knot type and its invariants).
pub fn invariant_constancy_check(
    path: &CoefficientPath,
    n: usize,
    seed: u64,
) -> Result<bool, DiagramError> {
    assert!(n >= 2);
    let denom = Rat::from_integer((n - 1).into());
    let mut reference: Option<LaurentPoly> = None;
    for k in 0..n {
        let s = Rat::from_integer(k.into()) / &denom;
        let map = path.eval(&s);
        let diagram = diagram_with_retries(&map, 1, seed ^ (k as u64), 8)?;
        let v = jones(&diagram)?;
        match &reference {
            None => reference = Some(v),
            Some(r) => {
                if r != &v {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests;
