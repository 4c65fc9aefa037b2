//! The exact embedding decision. A polynomial map is an embedding exactly
//! when the divided differences of its components have no common real zero:
//! diagonal zeros are common roots of the component derivatives (critical
//! points), off-diagonal zeros are self-intersection parameter pairs.

use num::{BigInt, One, ToPrimitive, Zero};

use crate::polycore::system::{off_diagonal_common_zeros, SystemZeros};
use crate::polycore::unipoly::RootInterval;
use crate::polycore::{bipoly, unipoly, Algebraic, QInterval, Rat, UniPoly};

use super::PolyMap3;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessKind {
    SelfIntersection,
    CriticalPoint,
}

/// A certified failure of the embedding property: parameter boxes with the
/// divided differences vanishing inside. For critical points `s0 == t0`.
/// Boxes are refined below 10⁻⁶ at construction.
#[derive(Clone, Debug)]
pub struct EmbeddingWitness {
    pub kind: WitnessKind,
    pub s0: RootInterval,
    pub t0: RootInterval,
}

/// Verdict of the embedding check. A failing map may violate injectivity at
/// several parameter pairs at once; every isolated violation found is
/// reported.
#[derive(Clone, Debug)]
pub enum EmbeddingCheck {
    Embedding,
    NotEmbedding(Vec<EmbeddingWitness>),
}

impl EmbeddingCheck {
    pub fn is_embedding(&self) -> bool {
        matches!(self, EmbeddingCheck::Embedding)
    }

    pub fn witness(&self) -> Option<&EmbeddingWitness> {
        self.witnesses().first()
    }

    pub fn witnesses(&self) -> &[EmbeddingWitness] {
        match self {
            EmbeddingCheck::Embedding => &[],
            EmbeddingCheck::NotEmbedding(w) => w,
        }
    }
}

fn witness_width() -> Rat {
    Rat::new(BigInt::one(), BigInt::from(1_000_000i64))
}

fn interval_to_root(i: &QInterval) -> RootInterval {
    RootInterval { lo: i.lo.clone(), hi: i.hi.clone(), multiplicity: 1 }
}

/// Total decision procedure; no tolerance enters the verdict on the
/// embedding side (a `true` answer is exact).
pub fn check_embedding(map: &PolyMap3) -> EmbeddingCheck {
    let nonconstant: Vec<&UniPoly> = map
        .components()
        .into_iter()
        .filter(|p| p.deg_usize().map_or(false, |d| d > 0))
        .collect();

    if nonconstant.is_empty() {
        // Constant map: every point is critical.
        let zero = RootInterval { lo: Rat::zero(), hi: Rat::zero(), multiplicity: 1 };
        return EmbeddingCheck::NotEmbedding(vec![EmbeddingWitness {
            kind: WitnessKind::CriticalPoint,
            s0: zero.clone(),
            t0: zero,
        }]);
    }

    // Diagonal zeros: common real roots of the nonconstant derivatives.
    let mut deriv_gcd = UniPoly::zero();
    for p in &nonconstant {
        deriv_gcd = if deriv_gcd.is_zero() { p.derivative() } else { deriv_gcd.gcd(&p.derivative()) };
    }
    if !deriv_gcd.is_zero() && deriv_gcd.deg_usize().map_or(false, |d| d > 0) {
        let roots = unipoly::sturm_isolate(&deriv_gcd);
        if !roots.is_empty() {
            let witnesses = roots
                .into_iter()
                .map(|r| {
                    let fine = unipoly::refine(&deriv_gcd, &r, &witness_width());
                    EmbeddingWitness {
                        kind: WitnessKind::CriticalPoint,
                        s0: fine.clone(),
                        t0: fine,
                    }
                })
                .collect();
            return EmbeddingCheck::NotEmbedding(witnesses);
        }
    }

    // A single nonconstant component with a root-free derivative is strictly
    // monotone, so its divided difference never vanishes and the map embeds.
    if nonconstant.len() == 1 {
        return EmbeddingCheck::Embedding;
    }

    // Off-diagonal zeros of the divided-difference system.
    let system: Vec<_> = nonconstant.iter().map(|p| bipoly::divided_difference(p)).collect();
    match off_diagonal_common_zeros(&system) {
        SystemZeros::Finite(boxes) => {
            if boxes.is_empty() {
                return EmbeddingCheck::Embedding;
            }
            let witnesses = boxes
                .into_iter()
                .map(|mut zb| {
                    zb.refine_below(&witness_width());
                    EmbeddingWitness {
                        kind: WitnessKind::SelfIntersection,
                        s0: algebraic_to_root(&zb.s),
                        t0: algebraic_to_root(&zb.t),
                    }
                })
                .collect();
            EmbeddingCheck::NotEmbedding(witnesses)
        }
        SystemZeros::Curve(s, t) => EmbeddingCheck::NotEmbedding(vec![EmbeddingWitness {
            kind: WitnessKind::SelfIntersection,
            s0: interval_to_root(&s),
            t0: interval_to_root(&t),
        }]),
    }
}

fn algebraic_to_root(a: &Algebraic) -> RootInterval {
    RootInterval { lo: a.lo().clone(), hi: a.hi().clone(), multiplicity: 1 }
}

/// Brute-force statistical oracle: samples the injectivity quotient
/// `‖φ(s)−φ(t)‖ / |s−t|` on a grid over `[−box, box]²` together with the
/// derivative norm, locally refines the smallest basin, and reports `false`
/// when the refined minimum sinks below a scale-aware threshold.
/// Conservative: near-violations finer than the grid may pass.
pub fn embedding_oracle_numeric(map: &PolyMap3, grid_n: usize, box_half: &Rat) -> bool {
    assert!(grid_n >= 100, "oracle needs at least a 100-point grid");
    let b = box_half.to_f64().unwrap_or(10.0);
    let fs = [&map.f, &map.g, &map.h];
    let deriv = map.derivative();

    // Pairs closer than this are left to the derivative scan; the float
    // quotient loses all precision to cancellation as s → t.
    let sep = 1e-7 * (1.0 + b);
    let quotient = |s: f64, t: f64| -> f64 {
        let mut acc = 0.0;
        for p in &fs {
            let d = p.eval_f64(s) - p.eval_f64(t);
            acc += d * d;
        }
        acc.sqrt() / (s - t).abs()
    };
    let deriv_norm = |t: f64| -> f64 {
        let v = deriv.eval_f64(t);
        (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
    };

    let n = grid_n;
    let step = 2.0 * b / (n as f64 - 1.0);
    let mut best = f64::INFINITY;
    let mut best_at = (0.0f64, 0.0f64);
    for i in 0..n {
        let s = -b + step * i as f64;
        for j in (i + 1)..n {
            let t = -b + step * j as f64;
            let q = quotient(s, t);
            if q < best {
                best = q;
                best_at = (s, t);
            }
        }
    }
    let mut dbest = f64::INFINITY;
    let mut dbest_at = 0.0f64;
    for i in 0..n {
        let t = -b + step * i as f64;
        let d = deriv_norm(t);
        if d < dbest {
            dbest = d;
            dbest_at = t;
        }
    }

    // Local subdivision around the two minima.
    let mut span = step;
    let (mut s0, mut t0) = best_at;
    for _ in 0..10 {
        let m = 24;
        let h = 2.0 * span / m as f64;
        let (mut ns, mut nt, mut nv) = (s0, t0, best);
        for i in 0..=m {
            let s = s0 - span + h * i as f64;
            for j in 0..=m {
                let t = t0 - span + h * j as f64;
                if (s - t).abs() < sep {
                    continue;
                }
                let q = quotient(s, t);
                if q < nv {
                    nv = q;
                    ns = s;
                    nt = t;
                }
            }
        }
        s0 = ns;
        t0 = nt;
        best = nv;
        span = 2.0 * h;
    }
    let mut dspan = step;
    for _ in 0..10 {
        let m = 48;
        let h = 2.0 * dspan / m as f64;
        let (mut nt, mut nv) = (dbest_at, dbest);
        for i in 0..=m {
            let t = dbest_at - dspan + h * i as f64;
            let d = deriv_norm(t);
            if d < nv {
                nv = d;
                nt = t;
            }
        }
        dbest_at = nt;
        dbest = nv;
        dspan = 2.0 * h;
    }

    let scale = fs
        .iter()
        .flat_map(|p| p.coeffs().iter())
        .map(|c| c.to_f64().unwrap_or(0.0).abs())
        .fold(1.0f64, f64::max);
    let tau = 1e-5 * scale;
    best.min(dbest) >= tau
}
