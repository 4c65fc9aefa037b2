//! Exact univariate polynomials over the rationals.

use std::fmt;

use num::{BigInt, Integer, One, ToPrimitive, Zero};

use super::interval::QInterval;
use super::zpoly::{SturmChain, ZPoly};
use super::Rat;

/// Degree with a distinguished bottom element for the zero polynomial.
/// `MinusInfinity` compares below every finite degree, so strict degree
/// inequalities apply verbatim to zero components.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    MinusInfinity,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::MinusInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::MinusInfinity => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// Univariate polynomial with exact rational coefficients, index i holding
/// the coefficient of t^i. The highest stored coefficient is nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<Rat>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The monomial t.
    pub fn var() -> Self {
        Self::from_coeffs(vec![Rat::zero(), Rat::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| Rat::from_integer(c.into())).collect())
    }

    pub fn monomial(deg: usize, coeff: Rat) -> Self {
        if coeff.is_zero() {
            return Self::zero();
        }
        let mut v = vec![Rat::zero(); deg + 1];
        v[deg] = coeff;
        UniPoly { coeffs: v }
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Coefficient of t^i, zero beyond the stored length.
    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::MinusInfinity,
            n => Degree::Finite(n - 1),
        }
    }

    pub fn deg_usize(&self) -> Option<usize> {
        self.degree().finite()
    }

    /// Leading coefficient; zero for the zero polynomial.
    pub fn lc(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn neg(&self) -> Self {
        UniPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut v = vec![Rat::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            v[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            v[i] += c;
        }
        Self::from_coeffs(v)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut v = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Self::from_coeffs(v)
    }

    pub fn scale(&self, k: &Rat) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        UniPoly { coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * Rat::from_integer(i.into()))
            .collect();
        Self::from_coeffs(v)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c.to_f64().unwrap_or(f64::NAN);
        }
        acc
    }

    /// Conservative enclosure of the image of an interval.
    pub fn eval_interval(&self, x: &QInterval) -> QInterval {
        let mut acc = QInterval::point(Rat::zero());
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(&QInterval::point(c.clone()));
        }
        acc
    }

    /// Exact expansion of `p(α t + β)`.
    pub fn compose_linear(&self, alpha: &Rat, beta: &Rat) -> Self {
        let mut acc = UniPoly::zero();
        let inner = UniPoly::from_coeffs(vec![beta.clone(), alpha.clone()]);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&inner).add(&UniPoly::constant(c.clone()));
        }
        acc
    }

    /// Quotient and remainder over the rationals.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let mut r = self.coeffs.clone();
        let dn = d.coeffs.len();
        if r.len() < dn {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![Rat::zero(); r.len() - dn + 1];
        let lc = d.lc();
        for k in (0..q.len()).rev() {
            let head = r[k + dn - 1].clone();
            if head.is_zero() {
                continue;
            }
            let quot = head / &lc;
            for (j, c) in d.coeffs.iter().enumerate() {
                let upd = &r[k + j] - &quot * c;
                r[k + j] = upd;
            }
            q[k] = quot;
        }
        r.truncate(dn - 1);
        (Self::from_coeffs(q), Self::from_coeffs(r))
    }

    /// Exact division; panics if the division leaves a remainder.
    pub fn div_exact(&self, d: &Self) -> Self {
        let (q, r) = self.div_rem(d);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() && other.is_zero() {
            return Self::zero();
        }
        let (za, _) = self.to_zpoly();
        let (zb, _) = other.to_zpoly();
        let g = za.gcd(&zb);
        Self::from_zpoly(&g).into_monic()
    }

    /// Squarefree part (distinct roots, monic).
    pub fn squarefree_part(&self) -> Self {
        let (z, _) = self.to_zpoly();
        Self::from_zpoly(&z.squarefree()).into_monic()
    }

    fn into_monic(self) -> Self {
        if self.is_zero() {
            return self;
        }
        let lc = self.lc();
        self.scale(&(Rat::one() / lc))
    }

    /// Primitive integer model: returns `(z, scale)` with `self = scale · z`,
    /// `z` primitive with the same sign pattern and `scale > 0`.
    pub fn to_zpoly(&self) -> (ZPoly, Rat) {
        if self.is_zero() {
            return (ZPoly::zero(), Rat::one());
        }
        let mut l = BigInt::one();
        for c in &self.coeffs {
            l = l.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| (c * Rat::from_integer(l.clone())).to_integer()).collect();
        let z = ZPoly::from_coeffs(ints);
        let content = z.content();
        let z = z.primitive();
        (z, Rat::new(content, l))
    }

    pub fn from_zpoly(z: &ZPoly) -> Self {
        Self::from_coeffs(z.coeffs().iter().map(|c| Rat::from_integer(c.clone())).collect())
    }
}

/// Isolating interval for one distinct real root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: Rat,
    pub hi: Rat,
    /// Multiplicity of the root in the original (non-squarefree) polynomial.
    pub multiplicity: u32,
}

impl RootInterval {
    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> Rat {
        (&self.lo + &self.hi) / Rat::from_integer(2.into())
    }

    pub fn contains(&self, x: &Rat) -> bool {
        &self.lo <= x && x <= &self.hi
    }
}

/// One isolating interval per distinct real root of `p`, in increasing
/// order, pairwise disjoint, tagged with multiplicities from the squarefree
/// decomposition.
pub fn sturm_isolate(p: &UniPoly) -> Vec<RootInterval> {
    assert!(!p.is_zero(), "cannot isolate roots of the zero polynomial");
    let (z, _) = p.to_zpoly();
    let mut found: Vec<(super::algebraic::Algebraic, u32)> = Vec::new();
    for (mult, factor) in z.squarefree_decomposition() {
        let chain = SturmChain::new(&factor);
        for (lo, hi) in chain.isolate() {
            found.push((super::algebraic::Algebraic::new(chain.polynomial().clone(), lo, hi), mult));
        }
    }
    // Roots of distinct squarefree factors are distinct; refine until the
    // isolating intervals are pairwise disjoint, then order them.
    loop {
        let mut overlapped = false;
        for i in 0..found.len() {
            for j in (i + 1)..found.len() {
                let (a, b) = (&found[i].0, &found[j].0);
                if a.overlaps(b) {
                    overlapped = true;
                }
            }
        }
        if !overlapped {
            break;
        }
        for (a, _) in found.iter_mut() {
            a.refine_once();
        }
    }
    found.sort_by(|x, y| x.0.lo().partial_cmp(y.0.lo()).unwrap());
    found
        .into_iter()
        .map(|(a, multiplicity)| RootInterval { lo: a.lo().clone(), hi: a.hi().clone(), multiplicity })
        .collect()
}

/// Shrinks an isolating interval below `width` by sign bisection on the
/// squarefree part; idempotent when the interval is already narrow enough.
pub fn refine(p: &UniPoly, r: &RootInterval, width: &Rat) -> RootInterval {
    assert!(width > &Rat::zero());
    if r.width() <= *width {
        return r.clone();
    }
    let sf = p.squarefree_part();
    let (z, _) = sf.to_zpoly();
    let slo = z.sign_at_rat(&r.lo);
    if slo == 0 {
        return RootInterval { lo: r.lo.clone(), hi: r.lo.clone(), multiplicity: r.multiplicity };
    }
    let shi = z.sign_at_rat(&r.hi);
    if shi == 0 {
        return RootInterval { lo: r.hi.clone(), hi: r.hi.clone(), multiplicity: r.multiplicity };
    }
    debug_assert!(slo != shi, "interval does not bracket a root of the squarefree part");
    let mut a = super::algebraic::Algebraic::new(z, r.lo.clone(), r.hi.clone());
    a.refine_below(width);
    RootInterval { lo: a.lo().clone(), hi: a.hi().clone(), multiplicity: r.multiplicity }
}
