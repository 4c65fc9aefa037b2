//! Closed-form one-parameter families of polynomial maps: the coefficient
//! paths realizing shrink isotopies, the linear-part retraction, source
//! reparametrizations, triangular target actions, the explicit
//! path-connectedness chain, sampling-based path validation, and the
//! perturbation of degenerate maps into knots with exact degree sequences.

use num::{BigInt, One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::knotspace::{
    check_embedding, classify_given, EmbeddingWitness, KnotError, PolyMap3, SpaceMembership,
};
use crate::polycore::{Rat, UniPoly};

mod densify;

pub use densify::densify_to_q;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IsotopyError {
    #[error("the linear part (a1, b1, c1) vanishes")]
    DegenerateLinearPart,
    #[error("scale parameters must be positive")]
    NonpositiveScale,
    #[error("consecutive paths do not share an endpoint")]
    EndpointMismatch,
    #[error("the coefficient of t in the second component vanishes")]
    PreconditionB1Zero,
    #[error("{0}")]
    Knot(#[from] KnotError),
    #[error("validated perturbation did not stabilize")]
    PerturbationFailed,
}

/// Exact endpoint of a coefficient path. The retraction's far endpoint has
/// an irrational normalization, kept symbolically as a direction vector
/// over the exact squared norm.
#[derive(Clone, Debug, PartialEq)]
pub enum PathEndpoint {
    Map(PolyMap3),
    /// The linear knot `t ↦ v·t / sqrt(norm2)`.
    UnitLinear { v: [Rat; 3], norm2: Rat },
}

impl PathEndpoint {
    pub fn as_map(&self) -> Option<&PolyMap3> {
        match self {
            PathEndpoint::Map(m) => Some(m),
            PathEndpoint::UnitLinear { .. } => None,
        }
    }
}

#[derive(Clone, Debug)]
enum PathKind {
    Shrink { phi: PolyMap3 },
    Retract { phi: PolyMap3, norm2: Rat, inv_norm: Rat },
    Reparam { phi: PolyMap3, alpha: Rat, beta: Rat },
    TargetAffine { phi: PolyMap3, alphas: [Rat; 3], betas: [Rat; 3], gammas: [Rat; 3] },
    LambdaTranslate { phi: PolyMap3, shift_h: UniPoly },
    GammaShrink { omega: PolyMap3 },
    OmegaBridge { b1: Rat, c2: Rat },
    LinearInterp { from: PolyMap3, to: PolyMap3 },
    Concat { children: Vec<CoefficientPath> },
}

/// A one-parameter family `s ↦ PolyMap3` over `s ∈ [0, 1]`, exact at every
/// rational parameter (the retraction kind evaluates to an
/// embedding-equivalent rational representative; its exact endpoints are
/// exposed symbolically).
#[derive(Clone, Debug)]
pub struct CoefficientPath {
    kind: PathKind,
}

impl CoefficientPath {
    pub fn kind_name(&self) -> &'static str {
        match &self.kind {
            PathKind::Shrink { .. } => "shrink",
            PathKind::Retract { .. } => "retract",
            PathKind::Reparam { .. } => "reparam",
            PathKind::TargetAffine { .. } => "target-affine",
            PathKind::LambdaTranslate { .. } => "lambda-translate",
            PathKind::GammaShrink { .. } => "gamma-shrink",
            PathKind::OmegaBridge { .. } => "omega-bridge",
            PathKind::LinearInterp { .. } => "linear-interp",
            PathKind::Concat { .. } => "concat",
        }
    }

    /// Evaluates the family at `s ∈ [0, 1]`.
    pub fn eval(&self, s: &Rat) -> PolyMap3 {
        assert!(!s.is_negative() && s <= &Rat::one(), "path parameter outside [0, 1]");
        match &self.kind {
            PathKind::Shrink { phi } => shrink_eval(phi, s),
            PathKind::Retract { phi, inv_norm, .. } => {
                // mu(s) = s + (1-s)/sqrt(norm2), with a rational stand-in for
                // the inverse norm; mu(1) = 1 exactly, and any positive scale
                // preserves the embedding property.
                let mu = s + (Rat::one() - s) * inv_norm;
                let tail = shrink_tail(phi, s);
                PolyMap3::new(
                    UniPoly::constant(phi.f.coeff(0) * s).add(&tail.f.scale(&mu)),
                    UniPoly::constant(phi.g.coeff(0) * s).add(&tail.g.scale(&mu)),
                    UniPoly::constant(phi.h.coeff(0) * s).add(&tail.h.scale(&mu)),
                )
            }
            PathKind::Reparam { phi, alpha, beta } => {
                let a = Rat::one() - s + alpha * s;
                let b = beta * s;
                phi.compose_source_affine(&a, &b).expect("scale stays positive on [0,1]")
            }
            PathKind::TargetAffine { phi, alphas, betas, gammas } => {
                let diag = |a: &Rat| Rat::one() - s + a * s;
                let m = [
                    [diag(&alphas[0]), Rat::zero(), Rat::zero()],
                    [&betas[0] * s, diag(&alphas[1]), Rat::zero()],
                    [&betas[1] * s, &betas[2] * s, diag(&alphas[2])],
                ];
                let v = [&gammas[0] * s, &gammas[1] * s, &gammas[2] * s];
                phi.compose_target_affine(&m, &v).expect("triangular with positive diagonal")
            }
            PathKind::LambdaTranslate { phi, shift_h } => PolyMap3::new(
                phi.f.sub(&UniPoly::constant(phi.f.coeff(0) * s)),
                phi.g.sub(&UniPoly::constant(phi.g.coeff(0) * s)),
                phi.h.sub(&shift_h.scale(s)),
            ),
            PathKind::GammaShrink { omega } => gamma_eval(omega, &(Rat::one() - s)),
            PathKind::OmegaBridge { b1, c2 } => omega_eval(b1, c2, &(Rat::one() - s)),
            PathKind::LinearInterp { from, to } => {
                let u = Rat::one() - s;
                PolyMap3::new(
                    from.f.scale(&u).add(&to.f.scale(s)),
                    from.g.scale(&u).add(&to.g.scale(s)),
                    from.h.scale(&u).add(&to.h.scale(s)),
                )
            }
            PathKind::Concat { children } => {
                let k = children.len();
                let pos = s * Rat::from_integer(k.into());
                let mut idx = pos.to_integer().to_usize().unwrap_or(0);
                if idx >= k {
                    idx = k - 1;
                }
                let local = pos - Rat::from_integer(idx.into());
                children[idx].eval(&local)
            }
        }
    }

    /// Exact endpoint at `s = 0`.
    pub fn start(&self) -> PathEndpoint {
        match &self.kind {
            PathKind::Retract { phi, norm2, .. } => PathEndpoint::UnitLinear {
                v: [phi.f.coeff(1), phi.g.coeff(1), phi.h.coeff(1)],
                norm2: norm2.clone(),
            },
            PathKind::Concat { children } => children[0].start(),
            _ => PathEndpoint::Map(self.eval(&Rat::zero())),
        }
    }

    /// Exact endpoint at `s = 1`.
    pub fn end(&self) -> PathEndpoint {
        match &self.kind {
            PathKind::Concat { children } => children.last().unwrap().end(),
            _ => PathEndpoint::Map(self.eval(&Rat::one())),
        }
    }

    pub fn stages(&self) -> usize {
        match &self.kind {
            PathKind::Concat { children } => children.len(),
            _ => 1,
        }
    }

    /// Child stages of a concatenation (empty for primitive paths).
    pub fn children(&self) -> &[CoefficientPath] {
        match &self.kind {
            PathKind::Concat { children } => children,
            _ => &[],
        }
    }
}

fn shrink_tail(phi: &PolyMap3, s: &Rat) -> PolyMap3 {
    // degree-i coefficients scaled by s^(i-1) for i >= 1
    let comp = |p: &UniPoly| {
        let n = p.coeffs().len();
        let mut v = vec![Rat::zero(); n.max(1)];
        let mut s_pow = Rat::one();
        for i in 1..n {
            v[i] = p.coeff(i) * &s_pow;
            s_pow *= s;
        }
        UniPoly::from_coeffs(v)
    };
    PolyMap3::new(comp(&phi.f), comp(&phi.g), comp(&phi.h))
}

fn shrink_eval(phi: &PolyMap3, s: &Rat) -> PolyMap3 {
    let tail = shrink_tail(phi, s);
    PolyMap3::new(
        UniPoly::constant(phi.f.coeff(0) * s).add(&tail.f),
        UniPoly::constant(phi.g.coeff(0) * s).add(&tail.g),
        UniPoly::constant(phi.h.coeff(0) * s).add(&tail.h),
    )
}

fn gamma_eval(omega: &PolyMap3, sigma: &Rat) -> PolyMap3 {
    // t^i picks up sigma^i in the first slot, sigma^(i-1) from i = 2 in the
    // second, sigma^(i-2) from i = 3 in the third.
    let weighted = |p: &UniPoly, start: usize| {
        let n = p.coeffs().len();
        let mut v = vec![Rat::zero(); n.max(1)];
        for i in 0..n {
            if i < start {
                v[i] = p.coeff(i);
                continue;
            }
            let mut w = p.coeff(i);
            for _ in 0..(i - start + 1) {
                w *= sigma;
            }
            v[i] = w;
        }
        UniPoly::from_coeffs(v)
    };
    PolyMap3::new(weighted(&omega.f, 1), weighted(&omega.g, 2), weighted(&omega.h, 3))
}

fn omega_eval(b1: &Rat, c2: &Rat, sigma: &Rat) -> PolyMap3 {
    let u = Rat::one() - sigma;
    let bump = sigma * &u;
    PolyMap3::new(
        UniPoly::from_coeffs(vec![Rat::zero(), bump.clone()]),
        UniPoly::from_coeffs(vec![Rat::zero(), b1 * sigma + &u, bump.clone()]),
        UniPoly::from_coeffs(vec![Rat::zero(), Rat::zero(), c2 * sigma + &u, bump]),
    )
}

fn linear_part(phi: &PolyMap3) -> [Rat; 3] {
    [phi.f.coeff(1), phi.g.coeff(1), phi.h.coeff(1)]
}

/// The isotopy scaling the degree-i coefficients by `s^(i-1)`: the endpoint
/// at `s = 1` is the input and at `s = 0` the linear knot `(a1 t, b1 t, c1 t)`.
/// Every interior sample of an embedding input is again an embedding.
pub fn shrink_isotopy(phi: &PolyMap3) -> Result<CoefficientPath, IsotopyError> {
    if linear_part(phi).iter().all(|c| c.is_zero()) {
        return Err(IsotopyError::DegenerateLinearPart);
    }
    Ok(CoefficientPath { kind: PathKind::Shrink { phi: phi.clone() } })
}

/// The deformation retraction onto unit-direction linear knots: `s = 1` is
/// the input, `s = 0` the linear knot with direction
/// `(a1, b1, c1)/‖(a1, b1, c1)‖` (kept symbolic; see [`PathEndpoint`]).
pub fn retraction_path(phi: &PolyMap3) -> Result<CoefficientPath, IsotopyError> {
    let [a1, b1, c1] = linear_part(phi);
    let norm2 = &a1 * &a1 + &b1 * &b1 + &c1 * &c1;
    if norm2.is_zero() {
        return Err(IsotopyError::DegenerateLinearPart);
    }
    let inv_norm = inverse_sqrt_approx(&norm2);
    Ok(CoefficientPath { kind: PathKind::Retract { phi: phi.clone(), norm2, inv_norm } })
}

/// Rational approximation of `1/sqrt(x)`, exact when `x` is a square.
fn inverse_sqrt_approx(x: &Rat) -> Rat {
    let ns = x.numer().sqrt();
    let ds = x.denom().sqrt();
    if &(&ns * &ns) == x.numer() && &(&ds * &ds) == x.denom() {
        return Rat::new(ds, ns);
    }
    let mut y = Rat::from_float(1.0 / x.to_f64().unwrap().sqrt()).unwrap_or_else(Rat::one);
    let three = Rat::from_integer(3.into());
    let half = Rat::new(BigInt::one(), BigInt::from(2));
    for _ in 0..3 {
        y = &half * &y * (&three - x * &y * &y);
    }
    y
}

/// Path from `φ` to `φ(αt + β)` along `t ↦ φ((1−s+αs)t + βs)`.
pub fn reparam_path(phi: &PolyMap3, alpha: &Rat, beta: &Rat) -> Result<CoefficientPath, IsotopyError> {
    if !alpha.is_positive() {
        return Err(IsotopyError::NonpositiveScale);
    }
    Ok(CoefficientPath {
        kind: PathKind::Reparam { phi: phi.clone(), alpha: alpha.clone(), beta: beta.clone() },
    })
}

/// Path along the lower-triangular target family with endpoint components
/// `(α1 f + γ1, α2 g + β1 f + γ2, α3 h + β2 f + β3 g + γ3)`. Preserves each
/// of the degree-capped knot spaces at every sample.
pub fn target_affine_path(
    phi: &PolyMap3,
    alphas: &[Rat; 3],
    betas: &[Rat; 3],
    gammas: &[Rat; 3],
) -> Result<CoefficientPath, IsotopyError> {
    if alphas.iter().any(|a| !a.is_positive()) {
        return Err(IsotopyError::NonpositiveScale);
    }
    Ok(CoefficientPath {
        kind: PathKind::TargetAffine {
            phi: phi.clone(),
            alphas: alphas.clone(),
            betas: betas.clone(),
            gammas: gammas.clone(),
        },
    })
}

/// Straight-line interpolation in coefficient space.
pub fn linear_interp(from: &PolyMap3, to: &PolyMap3) -> CoefficientPath {
    CoefficientPath { kind: PathKind::LinearInterp { from: from.clone(), to: to.clone() } }
}

pub fn constant_path(phi: &PolyMap3) -> CoefficientPath {
    linear_interp(phi, phi)
}

/// Concatenation with uniform-speed reparametrization; consecutive
/// endpoints must agree exactly.
pub fn concat(paths: Vec<CoefficientPath>) -> Result<CoefficientPath, IsotopyError> {
    if paths.is_empty() {
        return Err(IsotopyError::EndpointMismatch);
    }
    for pair in paths.windows(2) {
        if pair[0].end() != pair[1].start() {
            return Err(IsotopyError::EndpointMismatch);
        }
    }
    if paths.len() == 1 {
        return Ok(paths.into_iter().next().unwrap());
    }
    Ok(CoefficientPath { kind: PathKind::Concat { children: paths } })
}

/// The explicit chain landing on `(0, t, t²)`: translate away the constant
/// terms and the `t` coefficient of the third component, nudge the `t²`
/// coefficient of the third component nonzero if needed (validated
/// step-halving), shrink to `(0, b1 t, c2 t²)`, and bridge to `(0, t, t²)`.
///
/// The input must be a knot with exact degree sequence `(d−2, d−1, d)` and
/// `b1 ≠ 0`; use [`nudge_b1`] first when `b1 = 0`.
pub fn canonical_path_pd(phi: &PolyMap3, d: usize) -> Result<CoefficientPath, IsotopyError> {
    assert!(d >= 3);
    let b1 = phi.g.coeff(1);
    if b1.is_zero() {
        return Err(IsotopyError::PreconditionB1Zero);
    }
    let c1 = phi.h.coeff(1);
    let b0 = phi.g.coeff(0);
    let c0 = phi.h.coeff(0);
    let shift_h = phi
        .g
        .scale(&(&c1 / &b1))
        .add(&UniPoly::constant((&b1 * &c0 - &b0 * &c1) / &b1));
    let lambda = CoefficientPath { kind: PathKind::LambdaTranslate { phi: phi.clone(), shift_h } };
    let tau = lambda.eval(&Rat::one());
    debug_assert!(tau.f.coeff(0).is_zero() && tau.g.coeff(0).is_zero());
    debug_assert!(tau.h.coeff(0).is_zero() && tau.h.coeff(1).is_zero());

    let mut stages = vec![lambda];
    let omega = if tau.h.coeff(2).is_zero() {
        let (nudge, omega) = validated_nudge(&tau, d)?;
        stages.push(nudge);
        omega
    } else {
        tau
    };
    let b1 = omega.g.coeff(1);
    let c2 = omega.h.coeff(2);
    stages.push(CoefficientPath { kind: PathKind::GammaShrink { omega } });
    stages.push(CoefficientPath { kind: PathKind::OmegaBridge { b1, c2 } });
    concat(stages)
}

/// Step-halving perturbation of the `t²` coefficient of the third
/// component, accepted once a fixed validation grid passes everywhere.
fn validated_nudge(tau: &PolyMap3, d: usize) -> Result<(CoefficientPath, PolyMap3), IsotopyError> {
    let mut delta = Rat::one();
    for _ in 0..80 {
        let mut target = tau.clone();
        target.h = target.h.add(&UniPoly::monomial(2, delta.clone()));
        let cand = linear_interp(tau, &target);
        let report = validate_path(&cand, 33, d, Some(Space::Q));
        if report.failures.is_empty() && report.space_preserved {
            return Ok((cand, target));
        }
        delta /= Rat::from_integer(2.into());
    }
    Err(IsotopyError::PerturbationFailed)
}

/// Validated straight-line move making `b1` nonzero, for inputs rejected by
/// [`canonical_path_pd`]. Returns the path and its endpoint.
pub fn nudge_b1(phi: &PolyMap3, d: usize) -> Result<(CoefficientPath, PolyMap3), IsotopyError> {
    let mut delta = Rat::one();
    for _ in 0..80 {
        let mut target = phi.clone();
        target.g = target.g.add(&UniPoly::monomial(1, delta.clone()));
        let cand = linear_interp(phi, &target);
        let report = validate_path(&cand, 33, d, Some(Space::Q));
        if report.failures.is_empty() && report.space_preserved {
            return Ok((cand, target));
        }
        delta /= Rat::from_integer(2.into());
    }
    Err(IsotopyError::PerturbationFailed)
}

/// Space requirement for path validation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Space {
    O,
    P,
    Q,
}

impl Space {
    fn holds(&self, m: &SpaceMembership) -> bool {
        match self {
            Space::O => m.in_o,
            Space::P => m.in_p,
            Space::Q => m.in_q,
        }
    }
}

/// Per-sample certificate for a coefficient path.
#[derive(Clone, Debug)]
pub struct PathReport {
    pub n_samples: usize,
    /// Samples that failed the embedding check, with one witness each.
    pub failures: Vec<(Rat, EmbeddingWitness)>,
    /// Whether the required space membership held at every sample (`true`
    /// when no space was required).
    pub space_preserved: bool,
}

impl PathReport {
    pub fn all_passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Samples the path at `s = k/(n−1)` and runs the exact embedding check and
/// classifier at each sample. Failures are data, not errors.
pub fn validate_path(
    path: &CoefficientPath,
    n: usize,
    d: usize,
    required: Option<Space>,
) -> PathReport {
    assert!(n >= 2);
    let denom = Rat::from_integer((n - 1).into());
    let mut failures = Vec::new();
    let mut space_preserved = true;
    for k in 0..n {
        let s = Rat::from_integer(k.into()) / &denom;
        let map = path.eval(&s);
        let check = check_embedding(&map);
        let membership = classify_given(&map, d, check.is_embedding());
        if let Some(space) = required {
            if !space.holds(&membership) {
                space_preserved = false;
            }
        }
        if let Some(w) = check.witness() {
            failures.push((s, w.clone()));
        }
    }
    PathReport { n_samples: n, failures, space_preserved }
}

pub(crate) fn in_c_degrees(phi: &PolyMap3, d: usize) -> bool {
    classify_given(phi, d, false).in_c
}
