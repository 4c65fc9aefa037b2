//! The polynomial-knot data model: candidate maps `t ↦ (f(t), g(t), h(t))`,
//! the exact embedding decision with witnesses, classification into the
//! degree-capped spaces and their knot subspaces, sign classes, affine
//! actions, the coefficient chart and its Euclidean metric, and the tail
//! transversality angle.

mod embedding;

use num::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::polycore::{Degree, Rat, UniPoly};

pub use embedding::{
    check_embedding, embedding_oracle_numeric, EmbeddingCheck, EmbeddingWitness, WitnessKind,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KnotError {
    #[error("map does not satisfy the A_d degree caps for d = {0}")]
    NotInAd(usize),
    #[error("map does not have the exact C_d degree sequence for d = {0}")]
    NotInCd(usize),
    #[error("source reparametrization requires a nonzero scale")]
    ZeroScale,
    #[error("target transformation matrix is singular")]
    SingularMatrix,
    #[error("angle undefined: a zero vector at the requested parameter")]
    ZeroVector,
}

/// A polynomial map `t ↦ (f(t), g(t), h(t))`, the candidate knot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMap3 {
    pub f: UniPoly,
    pub g: UniPoly,
    pub h: UniPoly,
}

impl PolyMap3 {
    pub fn new(f: UniPoly, g: UniPoly, h: UniPoly) -> Self {
        PolyMap3 { f, g, h }
    }

    pub fn components(&self) -> [&UniPoly; 3] {
        [&self.f, &self.g, &self.h]
    }

    pub fn degree_sequence(&self) -> DegreeSequence {
        DegreeSequence { d1: self.f.degree(), d2: self.g.degree(), d3: self.h.degree() }
    }

    /// Maximum of the component degrees.
    pub fn degree(&self) -> Degree {
        self.f.degree().max(self.g.degree()).max(self.h.degree())
    }

    /// Smallest `d ≥ 2` for which the map satisfies the `A_d` caps.
    pub fn min_cap_degree(&self) -> usize {
        let mut d = 2usize;
        if let Some(k) = self.f.deg_usize() {
            d = d.max(k + 2);
        }
        if let Some(k) = self.g.deg_usize() {
            d = d.max(k + 1);
        }
        if let Some(k) = self.h.deg_usize() {
            d = d.max(k);
        }
        d
    }

    pub fn is_constant_map(&self) -> bool {
        self.components().iter().all(|p| p.deg_usize().map_or(true, |d| d == 0))
    }

    pub fn eval(&self, t: &Rat) -> [Rat; 3] {
        [self.f.eval(t), self.g.eval(t), self.h.eval(t)]
    }

    pub fn eval_f64(&self, t: f64) -> [f64; 3] {
        [self.f.eval_f64(t), self.g.eval_f64(t), self.h.eval_f64(t)]
    }

    pub fn derivative(&self) -> PolyMap3 {
        PolyMap3::new(self.f.derivative(), self.g.derivative(), self.h.derivative())
    }

    /// The sign-class involution `(f, −g, −h)`. As a target map this is a
    /// π-rotation about the first axis, so the knot type is unchanged, yet
    /// the two maps land in different path components of the exact-degree
    /// knot space (their leading-sign classes differ).
    pub fn mirror(&self) -> PolyMap3 {
        PolyMap3::new(self.f.clone(), self.g.neg(), self.h.neg())
    }

    /// Source reparametrization `t ↦ φ(αt + β)`, expanded exactly.
    /// Preserves embeddings for any `α ≠ 0`.
    pub fn compose_source_affine(&self, alpha: &Rat, beta: &Rat) -> Result<PolyMap3, KnotError> {
        if alpha.is_zero() {
            return Err(KnotError::ZeroScale);
        }
        Ok(PolyMap3::new(
            self.f.compose_linear(alpha, beta),
            self.g.compose_linear(alpha, beta),
            self.h.compose_linear(alpha, beta),
        ))
    }

    /// Target affine action `φ ↦ M·φ + v` for nonsingular `M`.
    pub fn compose_target_affine(
        &self,
        m: &[[Rat; 3]; 3],
        v: &[Rat; 3],
    ) -> Result<PolyMap3, KnotError> {
        if det3(m).is_zero() {
            return Err(KnotError::SingularMatrix);
        }
        let comps = self.components();
        let mut out: Vec<UniPoly> = Vec::with_capacity(3);
        for i in 0..3 {
            let mut row = UniPoly::constant(v[i].clone());
            for (j, c) in comps.iter().enumerate() {
                row = row.add(&c.scale(&m[i][j]));
            }
            out.push(row);
        }
        let h = out.pop().unwrap();
        let g = out.pop().unwrap();
        let f = out.pop().unwrap();
        Ok(PolyMap3::new(f, g, h))
    }

    /// The bundled degree-6 figure-eight knot (exact decimal coefficients).
    pub fn figure_eight() -> PolyMap3 {
        let q = |s: &str| crate::polycore::parse_rat(s).unwrap();
        PolyMap3::new(
            UniPoly::from_coeffs(vec![q("51.84"), q("-164.016"), q("-31.92"), q("8.5"), q("1")]),
            UniPoly::from_coeffs(vec![
                q("-50.2762"),
                q("160.508"),
                q("32.439"),
                q("-29.11"),
                q("-1.5"),
                q("1"),
            ]),
            UniPoly::from_coeffs(vec![
                q("0"),
                q("-35.8427"),
                q("187.195"),
                q("11.2832"),
                q("-19.1167"),
                q("-0.48"),
                q("0.5"),
            ]),
        )
    }

    /// A degree-5 trefoil with degree sequence (3, 4, 5):
    /// `(t³ − 3t, t⁴ − 4t², t⁵ − 10t)`.
    pub fn trefoil_quintic() -> PolyMap3 {
        PolyMap3::new(
            UniPoly::from_ints(&[0, -3, 0, 1]),
            UniPoly::from_ints(&[0, 0, -4, 0, 1]),
            UniPoly::from_ints(&[0, -10, 0, 0, 0, 1]),
        )
    }

    /// The minimal trivial knot `t ↦ (0, 0, t)`.
    pub fn line() -> PolyMap3 {
        PolyMap3::new(UniPoly::zero(), UniPoly::zero(), UniPoly::var())
    }
}

fn det3(m: &[[Rat; 3]; 3]) -> Rat {
    let a = &m[0];
    let b = &m[1];
    let c = &m[2];
    &a[0] * (&b[1] * &c[2] - &b[2] * &c[1]) - &a[1] * (&b[0] * &c[2] - &b[2] * &c[0])
        + &a[2] * (&b[0] * &c[1] - &b[1] * &c[0])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DegreeSequence {
    pub d1: Degree,
    pub d2: Degree,
    pub d3: Degree,
}

/// Membership flags for the degree-capped spaces at level `d` and their
/// knot subspaces (`in_o = in_a ∧ embedding`, and so on).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpaceMembership {
    pub d: usize,
    pub in_a: bool,
    pub in_b: bool,
    pub in_c: bool,
    pub is_embedding: bool,
    pub in_o: bool,
    pub in_p: bool,
    pub in_q: bool,
}

/// Signs of the three leading coefficients `(a_{d−2}, b_{d−1}, c_d)`;
/// constant on path components of `Q_d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SignClass {
    pub e1: i8,
    pub e2: i8,
    pub e3: i8,
}

/// Classifies a map at level `d ≥ 2`. Total: constant maps simply classify
/// as non-embeddings.
pub fn classify(map: &PolyMap3, d: usize) -> SpaceMembership {
    let is_embedding = check_embedding(map).is_embedding();
    classify_given(map, d, is_embedding)
}

/// Classification with a precomputed embedding verdict (the degree caps are
/// pure coefficient reads).
pub fn classify_given(map: &PolyMap3, d: usize, is_embedding: bool) -> SpaceMembership {
    assert!(d >= 2, "classification levels start at d = 2");
    let seq = map.degree_sequence();
    let in_a = seq.d1 <= Degree::Finite(d - 2)
        && seq.d2 <= Degree::Finite(d - 1)
        && seq.d3 <= Degree::Finite(d);
    let in_b = seq.d1 < seq.d2 && seq.d2 < seq.d3 && seq.d3 <= Degree::Finite(d);
    // At d = 2 the first slot only holds a constant term, and the space of
    // exact degree sequences is cut out by b_1 c_2 ≠ 0 alone, so a vanishing
    // first component is admitted.
    let in_c = if d == 2 {
        seq.d1 <= Degree::Finite(0) && seq.d2 == Degree::Finite(1) && seq.d3 == Degree::Finite(2)
    } else {
        seq.d1 == Degree::Finite(d - 2)
            && seq.d2 == Degree::Finite(d - 1)
            && seq.d3 == Degree::Finite(d)
    };
    SpaceMembership {
        d,
        in_a,
        in_b,
        in_c,
        is_embedding,
        in_o: in_a && is_embedding,
        in_p: in_b && is_embedding,
        in_q: in_c && is_embedding,
    }
}

/// Signs of the leading coefficients at the exact degrees `(d−2, d−1, d)`.
pub fn sign_class(map: &PolyMap3, d: usize) -> Result<SignClass, KnotError> {
    assert!(d >= 2);
    let a = map.f.coeff(d - 2);
    let b = map.g.coeff(d - 1);
    let c = map.h.coeff(d);
    if a.is_zero() || b.is_zero() || c.is_zero() {
        return Err(KnotError::NotInCd(d));
    }
    let sign = |x: &Rat| if x.is_positive() { 1 } else { -1 };
    Ok(SignClass { e1: sign(&a), e2: sign(&b), e3: sign(&c) })
}

/// The coefficient chart: `(a_0..a_{d−2}, b_0..b_{d−1}, c_0..c_d)`, length 3d.
pub fn coeff_vector(map: &PolyMap3, d: usize) -> Result<Vec<Rat>, KnotError> {
    assert!(d >= 2);
    if !satisfies_caps(map, d) {
        return Err(KnotError::NotInAd(d));
    }
    let mut v = Vec::with_capacity(3 * d);
    for i in 0..=(d - 2) {
        v.push(map.f.coeff(i));
    }
    for i in 0..=(d - 1) {
        v.push(map.g.coeff(i));
    }
    for i in 0..=d {
        v.push(map.h.coeff(i));
    }
    Ok(v)
}

fn satisfies_caps(map: &PolyMap3, d: usize) -> bool {
    let seq = map.degree_sequence();
    seq.d1 <= Degree::Finite(d - 2) && seq.d2 <= Degree::Finite(d - 1) && seq.d3 <= Degree::Finite(d)
}

/// Squared Euclidean distance between the coefficient charts; exact.
pub fn metric_rho_squared(a: &PolyMap3, b: &PolyMap3, d: usize) -> Result<Rat, KnotError> {
    let va = coeff_vector(a, d)?;
    let vb = coeff_vector(b, d)?;
    let mut acc = Rat::zero();
    for (x, y) in va.iter().zip(vb.iter()) {
        let diff = x - y;
        acc += &diff * &diff;
    }
    Ok(acc)
}

/// The coefficient-space distance as a float (`ρ²` is the exact quantity;
/// compare against rational bounds on the square).
pub fn metric_rho(a: &PolyMap3, b: &PolyMap3, d: usize) -> Result<f64, KnotError> {
    Ok(metric_rho_squared(a, b, d)?.to_f64().unwrap_or(f64::NAN).sqrt())
}

/// Angle between `φ(t)` and `φ'(t)` in radians (floating evaluation of
/// exact rational dot products). Tends to 0 as `t → +∞` and to π as
/// `t → −∞` for maps of constant degree.
pub fn tail_angle(map: &PolyMap3, t: &Rat) -> Result<f64, KnotError> {
    let p = map.eval(t);
    let dp = map.derivative().eval(t);
    let norm2 = |v: &[Rat; 3]| -> Rat { v.iter().map(|x| x * x).sum() };
    let n1 = norm2(&p);
    let n2 = norm2(&dp);
    if n1.is_zero() || n2.is_zero() {
        return Err(KnotError::ZeroVector);
    }
    let dot: Rat = p.iter().zip(dp.iter()).map(|(x, y)| x * y).sum();
    let cos = dot.to_f64().unwrap_or(f64::NAN)
        / (n1.to_f64().unwrap_or(f64::NAN).sqrt() * n2.to_f64().unwrap_or(f64::NAN).sqrt());
    Ok(cos.clamp(-1.0, 1.0).acos())
}

/// An exactly orthogonal rational rotation (determinant +1) from the Cayley
/// transform of the skew-symmetric matrix with parameters `(x, y, z)`.
pub fn cayley_rotation(x: &Rat, y: &Rat, z: &Rat) -> [[Rat; 3]; 3] {
    let one = Rat::one();
    let denom = &one + x * x + y * y + z * z;
    let two = Rat::from_integer(2.into());
    let xx = x * x;
    let yy = y * y;
    let zz = z * z;
    let r = |num: Rat| num / denom.clone();
    [
        [r(&one + &xx - &yy - &zz), r(&two * (x * y + z)), r(&two * (x * z - y))],
        [r(&two * (x * y - z)), r(&one - &xx + &yy - &zz), r(&two * (y * z + x))],
        [r(&two * (x * z + y)), r(&two * (y * z - x)), r(&one - &xx - &yy + &zz)],
    ]
}

pub fn identity_matrix() -> [[Rat; 3]; 3] {
    let o = Rat::one;
    let z = Rat::zero;
    [[o(), z(), z()], [z(), o(), z()], [z(), z(), o()]]
}

pub fn zero_vector3() -> [Rat; 3] {
    [Rat::zero(), Rat::zero(), Rat::zero()]
}

#[cfg(test)]
mod tests;
