//! Common real zeros of systems of symmetric bivariate polynomials, away
//! from the diagonal `s = t`.
//!
//! Inputs are nonzero, symmetric in `(s, t)` and not divisible by `s − t`
//! (divided differences and their gcd cofactors have this shape). Candidate
//! coordinates come from resultant elimination; shared factors are peeled
//! off by gcd decomposition; a nonconstant common factor is a curve, whose
//! real off-diagonal points are decided in the symmetric coordinates
//! `u = s + t`, `w = s − t` (only `w > 0` matters).
//!
//! Candidate boxes are verified by interval refinement. A value is declared
//! zero on an exact rational hit, by the exact gcd test when one coordinate
//! is rational, or when the box has contracted below width 2⁻⁶⁴ with the
//! enclosure still straddling zero.

use num::{BigInt, One, Zero};

use super::algebraic::Algebraic;
use super::bipoly::{divided_difference, resultant_eliminate, BiPoly, Var};
use super::interval::QInterval;
use super::unipoly::{Degree, UniPoly};
use super::{PolyError, Rat};

/// An isolated common zero with certified `s < t`.
#[derive(Clone, Debug)]
pub struct ZeroBox {
    pub s: Algebraic,
    pub t: Algebraic,
}

impl ZeroBox {
    /// Refines both coordinates below `width`.
    pub fn refine_below(&mut self, width: &Rat) {
        self.s.refine_below(width);
        self.t.refine_below(width);
    }
}

/// Result of the off-diagonal common-zero search.
#[derive(Clone, Debug)]
pub enum SystemZeros {
    /// The complete, deduplicated list of isolated off-diagonal common
    /// zeros with `s < t`.
    Finite(Vec<ZeroBox>),
    /// The system vanishes along a curve with real off-diagonal points;
    /// one witness box `(s, t)` is reported and enumeration is skipped.
    Curve(QInterval, QInterval),
}

impl SystemZeros {
    pub fn is_empty(&self) -> bool {
        match self {
            SystemZeros::Finite(v) => v.is_empty(),
            SystemZeros::Curve(..) => false,
        }
    }
}

fn cutoff() -> Rat {
    Rat::new(BigInt::one(), BigInt::one() << 64)
}

/// All common real zeros of the system off the diagonal.
pub fn off_diagonal_common_zeros(polys: &[BiPoly]) -> SystemZeros {
    let system: Vec<BiPoly> = polys.to_vec();
    debug_assert!(system.iter().all(|p| !p.is_zero()));
    debug_assert!(system.iter().all(|p| p.is_symmetric()));
    solve(system)
}

fn solve(system: Vec<BiPoly>) -> SystemZeros {
    // A nonzero constant in the system forbids common zeros.
    if system
        .iter()
        .any(|p| p.degree(Var::S) == Degree::Finite(0) && p.degree(Var::T) == Degree::Finite(0))
    {
        return SystemZeros::Finite(Vec::new());
    }
    if system.len() == 1 {
        return match symmetric_off_diagonal_witness(&system[0]) {
            Some((s, t)) => SystemZeros::Curve(s, t),
            None => SystemZeros::Finite(Vec::new()),
        };
    }

    // Pairwise resultants; a vanishing one exposes a shared factor.
    let mut resultants: Vec<UniPoly> = Vec::new();
    for i in 0..system.len() {
        for j in (i + 1)..system.len() {
            match resultant_eliminate(&system[i], &system[j], Var::T) {
                Ok(r) => resultants.push(r),
                Err(PolyError::IdenticallyZeroResultant) => {
                    return split_on_shared_factor(system, i, j);
                }
                Err(PolyError::DegenerateInput) => unreachable!("nonzero inputs"),
            }
        }
    }

    // Candidate coordinates: every common zero has both coordinates among
    // the real roots of the gcd of the pairwise resultants (the two
    // eliminations agree for symmetric inputs).
    let mut w = resultants[0].clone();
    for r in &resultants[1..] {
        w = w.gcd(r);
        if w.degree() == Degree::Finite(0) {
            break;
        }
    }
    if w.degree().finite().map_or(true, |d| d == 0) {
        return SystemZeros::Finite(Vec::new());
    }
    let cands = Algebraic::roots_of(&w);
    let mut found = Vec::new();
    for i in 0..cands.len() {
        for j in (i + 1)..cands.len() {
            let mut s = cands[i].clone();
            let mut t = cands[j].clone();
            if system.iter().all(|p| certified_sign(p, &mut s, &mut t) == 0) {
                found.push(ZeroBox { s, t });
            }
        }
    }
    SystemZeros::Finite(found)
}

fn split_on_shared_factor(system: Vec<BiPoly>, i: usize, j: usize) -> SystemZeros {
    let d = system[i].gcd(&system[j]);
    debug_assert!(d.total_degree().map_or(false, |k| k > 0));
    let mut rest: Vec<BiPoly> = Vec::new();
    for (k, p) in system.iter().enumerate() {
        if k != i && k != j {
            rest.push(p.clone());
        }
    }
    let mut with_factor = vec![d.clone()];
    with_factor.extend(rest.iter().cloned());
    let a = match solve(with_factor) {
        SystemZeros::Curve(s, t) => return SystemZeros::Curve(s, t),
        SystemZeros::Finite(a) => a,
    };
    let mut cofactors = vec![system[i].div_exact_t(&d), system[j].div_exact_t(&d)];
    cofactors.extend(rest);
    let b = match solve(cofactors) {
        SystemZeros::Curve(s, t) => return SystemZeros::Curve(s, t),
        SystemZeros::Finite(b) => b,
    };
    let mut merged = a;
    for zb in b {
        let dup = merged
            .iter()
            .any(|m| m.s.eq_exact(&zb.s) && m.t.eq_exact(&zb.t));
        if !dup {
            merged.push(zb);
        }
    }
    SystemZeros::Finite(merged)
}

/// Certified sign of `p` at an algebraic point, with the width-2⁻⁶⁴ zero
/// rule for doubly irrational coordinates.
pub fn certified_sign(p: &BiPoly, s: &mut Algebraic, t: &mut Algebraic) -> i8 {
    if let (Some(a), Some(b)) = (s.as_exact().cloned(), t.as_exact().cloned()) {
        let v = p.eval(&a, &b);
        return rat_sign(&v);
    }
    if let Some(a) = s.as_exact().cloned() {
        return univariate_sign_at(&p.subst_s(&a), t);
    }
    if let Some(b) = t.as_exact().cloned() {
        return univariate_sign_at(&p.subst_t(&b), s);
    }
    let lim = cutoff();
    let prepared = p.prepared();
    let two = Rat::from_integer(2.into());
    // Lipschitz data over the starting box: once |∂p| bounds are fixed, a
    // midpoint evaluation with error M_s·r_s + M_t·r_t encloses p over any
    // sub-box far more cheaply than deep interval arithmetic.
    let mut lipschitz: Option<(Rat, Rat)> = None;
    let mut gap = 1usize;
    loop {
        let enc = if let Some((ms, mt)) = &lipschitz {
            let mid = prepared_point(&prepared, &s.mid(), &t.mid());
            let err = ms * (s.width() / &two) + mt * (t.width() / &two);
            QInterval::new(&mid - &err, mid + err)
        } else {
            prepared.eval_box(&s.interval(), &t.interval())
        };
        if let Some(sign) = enc.sign() {
            return sign;
        }
        if s.width() <= lim && t.width() <= lim {
            return 0;
        }
        if lipschitz.is_none() && gap >= 8 {
            let ms = p.derivative_s().eval_box(&s.interval(), &t.interval()).mag();
            let mt = p.derivative_t().eval_box(&s.interval(), &t.interval()).mag();
            lipschitz = Some((ms, mt));
        }
        for _ in 0..gap {
            s.refine_once();
            t.refine_once();
            if s.width() <= lim && t.width() <= lim {
                break;
            }
        }
        gap = (gap * 2).min(32);
        // Collapses to exact rationals divert to the exact univariate test.
        if let Some(a) = s.as_exact().cloned() {
            return univariate_sign_at(&p.subst_s(&a), t);
        }
        if let Some(b) = t.as_exact().cloned() {
            return univariate_sign_at(&p.subst_t(&b), s);
        }
    }
}

fn prepared_point(p: &crate::polycore::bipoly::PreparedBiPoly, s: &Rat, t: &Rat) -> Rat {
    p.eval_point(s, t)
}

/// Exact sign of a univariate rational polynomial at an algebraic number.
pub fn univariate_sign_at(u: &UniPoly, x: &mut Algebraic) -> i8 {
    if u.is_zero() {
        return 0;
    }
    if let Some(v) = x.as_exact() {
        return rat_sign(&u.eval(v));
    }
    if Algebraic::roots_of(u).iter().any(|r| r.eq_exact(x)) {
        return 0;
    }
    loop {
        let enc = u.eval_interval(&x.interval());
        if let Some(sign) = enc.sign() {
            return sign;
        }
        x.refine_once();
        if let Some(v) = x.as_exact() {
            return rat_sign(&u.eval(v));
        }
    }
}

fn rat_sign(v: &Rat) -> i8 {
    use num::Signed;
    if v.is_zero() {
        0
    } else if v.is_positive() {
        1
    } else {
        -1
    }
}

/// Decides whether a single symmetric polynomial (no `s − t` factor) has a
/// real zero off the diagonal, producing a tight witness box if so.
///
/// Works in the coordinates `u = s + t`, `w = s − t`; the polynomial is even
/// in `w` and a zero with `w > 0` is sought. Fibers over rational `u`
/// samples are decided by Sturm counts; the sample set is complete because
/// the positive-root count only changes across the critical set (leading
/// coefficient, `w`-discriminant, `w = 0` section).
fn symmetric_off_diagonal_witness(w_poly: &BiPoly) -> Option<(QInterval, QInterval)> {
    debug_assert!(w_poly.is_symmetric());
    let mut p = to_uw(w_poly);
    debug_assert!(p.terms().all(|(&(_, j), _)| j % 2 == 0), "even in w");

    // Vertical-line components: a real root of the w-content gives a whole
    // fiber of zeros; pick w = 1.
    loop {
        let content = p.content_t();
        match content.degree() {
            Degree::Finite(d) if d > 0 => {
                if let Some(mut u0) = Algebraic::roots_of(&content).into_iter().next() {
                    let tol = Rat::new(BigInt::one(), BigInt::from(10_000_000u64));
                    u0.refine_below(&tol);
                    let ui = u0.interval();
                    return Some(point_from_uw(&ui, &QInterval::point(Rat::one())));
                }
                p = p.divide_coeffs(&content);
            }
            _ => break,
        }
    }
    let deg_w = p.degree(Var::T).finite()?;
    if deg_w == 0 {
        return None; // content-free and constant in w: a nonzero constant
    }

    // Squarefree in w.
    let dp = p.derivative_t();
    let g = p.gcd(&dp);
    let mut psf = if g.total_degree().map_or(false, |d| d > 0) { p.div_exact_t(&g) } else { p };
    loop {
        let content = psf.content_t();
        match content.degree() {
            Degree::Finite(d) if d > 0 => {
                if let Some(mut u0) = Algebraic::roots_of(&content).into_iter().next() {
                    let tol = Rat::new(BigInt::one(), BigInt::from(10_000_000u64));
                    u0.refine_below(&tol);
                    let ui = u0.interval();
                    return Some(point_from_uw(&ui, &QInterval::point(Rat::one())));
                }
                psf = psf.divide_coeffs(&content);
            }
            _ => break,
        }
    }

    // Critical set in u.
    let lc = psf.lc_t();
    let dia = psf.subst_t(&Rat::zero());
    let deg_w_sf = psf.degree(Var::T).finite().unwrap_or(0);
    let disc = if deg_w_sf >= 1 {
        resultant_eliminate(&psf, &psf.derivative_t(), Var::T)
            .expect("squarefree in w has nonzero discriminant-resultant")
    } else {
        UniPoly::one()
    };
    let phi = lc.mul(&dia).mul(&disc);
    let crit = if phi.degree().finite().map_or(false, |d| d > 0) {
        Algebraic::roots_of(&phi)
    } else {
        Vec::new()
    };

    // One rational sample inside every component of the complement of the
    // critical set.
    let mut samples: Vec<Rat> = Vec::new();
    if crit.is_empty() {
        samples.push(Rat::zero());
    } else {
        samples.push(crit.first().unwrap().lo() - Rat::one());
        for pair in crit.windows(2) {
            samples.push((pair[0].hi() + pair[1].lo()) / Rat::from_integer(2.into()));
        }
        samples.push(crit.last().unwrap().hi() + Rat::one());
    }
    for q in &samples {
        let fiber = psf.subst_s(q);
        for mut root in Algebraic::roots_of(&fiber) {
            if algebraic_sign(&mut root) > 0 {
                let tol = Rat::new(BigInt::one(), BigInt::from(10_000_000u64));
                root.refine_below(&tol);
                return Some(point_from_uw(&QInterval::point(q.clone()), &root.interval()));
            }
        }
    }

    // Isolated solutions over critical u-values.
    if psf.degree(Var::S).finite().map_or(true, |d| d == 0) || crit.is_empty() {
        return None;
    }
    let phi_bi = bipoly_in_s(&phi);
    let n = match resultant_eliminate(&psf, &phi_bi, Var::S) {
        Ok(n) => n,
        // A shared factor would be a u-only factor of the content-free psf.
        Err(_) => return None,
    };
    if n.degree().finite().map_or(true, |d| d == 0) {
        return None;
    }
    for rho in &crit {
        for omega in Algebraic::roots_of(&n) {
            let mut omega = omega;
            if algebraic_sign(&mut omega) <= 0 {
                continue;
            }
            let mut u = rho.clone();
            if certified_sign(&psf, &mut u, &mut omega) == 0 {
                let tol = Rat::new(BigInt::one(), BigInt::from(10_000_000u64));
                u.refine_below(&tol);
                omega.refine_below(&tol);
                // keep (u±w)/2 separated: need w strictly above u's width
                while *omega.lo() <= u.width() {
                    u.refine_once();
                    omega.refine_once();
                }
                return Some(point_from_uw(&u.interval(), &omega.interval()));
            }
        }
    }
    None
}

/// Sign of an algebraic number against zero (refines until decided).
fn algebraic_sign(x: &mut Algebraic) -> i8 {
    use num::Signed;
    loop {
        if let Some(v) = x.as_exact() {
            return rat_sign(v);
        }
        if x.lo().is_positive() {
            return 1;
        }
        if x.hi().is_negative() {
            return -1;
        }
        x.refine_once();
    }
}

/// `(s, t)` intervals from `(u, w)` intervals: `s = (u−w)/2`, `t = (u+w)/2`.
fn point_from_uw(u: &QInterval, w: &QInterval) -> (QInterval, QInterval) {
    let half = QInterval::point(Rat::new(BigInt::one(), BigInt::from(2)));
    let s = u.sub(w).mul(&half);
    let t = u.add(w).mul(&half);
    (s, t)
}

/// Rewrites a symmetric polynomial in the coordinates `u = s + t`,
/// `w = s − t` (slots: S holds u, T holds w).
fn to_uw(p: &BiPoly) -> BiPoly {
    let half = Rat::new(BigInt::one(), BigInt::from(2));
    let s_form = BiPoly::from_terms([((1, 0), half.clone()), ((0, 1), half.clone())]);
    let t_form = BiPoly::from_terms([((1, 0), half.clone()), ((0, 1), -half)]);
    let max_i = p.terms().map(|(&(i, _), _)| i).max().unwrap_or(0) as usize;
    let max_j = p.terms().map(|(&(_, j), _)| j).max().unwrap_or(0) as usize;
    let mut s_pows = Vec::with_capacity(max_i + 1);
    let mut t_pows = Vec::with_capacity(max_j + 1);
    s_pows.push(BiPoly::constant(Rat::one()));
    t_pows.push(BiPoly::constant(Rat::one()));
    for i in 1..=max_i {
        let next = s_pows[i - 1].mul(&s_form);
        s_pows.push(next);
    }
    for j in 1..=max_j {
        let next = t_pows[j - 1].mul(&t_form);
        t_pows.push(next);
    }
    let mut out = BiPoly::zero();
    for (&(i, j), c) in p.terms() {
        let term = s_pows[i as usize].mul(&t_pows[j as usize]).scale(c);
        out = out.add(&term);
    }
    out
}

fn bipoly_in_s(u: &UniPoly) -> BiPoly {
    BiPoly::from_terms(
        u.coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| ((i as u32, 0), c.clone())),
    )
}

/// Convenience: off-diagonal common zeros of the divided differences of the
/// given univariate polynomials (constant components contribute nothing and
/// must be filtered by the caller).
pub fn divided_difference_system(components: &[&UniPoly]) -> Vec<BiPoly> {
    components
        .iter()
        .map(|p| divided_difference(p))
        .filter(|d| !d.is_zero())
        .collect()
}
