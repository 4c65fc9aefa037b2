//! Isolated real algebraic numbers: a squarefree integer polynomial plus an
//! isolating interval, refined by sign bisection.

use std::cmp::Ordering;

use num::ToPrimitive;

use super::interval::QInterval;
use super::unipoly::UniPoly;
use super::zpoly::{SturmChain, ZPoly};
use super::Rat;

/// A real algebraic number. Either `lo == hi` (an exact rational) or
/// `lo < hi` with the defining squarefree polynomial changing sign strictly
/// across the interval and having exactly one root inside.
#[derive(Clone, Debug)]
pub struct Algebraic {
    poly: ZPoly,
    lo: Rat,
    hi: Rat,
}

impl Algebraic {
    pub fn new(poly: ZPoly, lo: Rat, hi: Rat) -> Self {
        if lo == hi {
            return Algebraic { poly, lo, hi };
        }
        debug_assert!(lo < hi);
        debug_assert!(poly.sign_at_rat(&lo) != 0 && poly.sign_at_rat(&hi) != 0);
        debug_assert_ne!(poly.sign_at_rat(&lo), poly.sign_at_rat(&hi));
        Algebraic { poly, lo, hi }
    }

    pub fn from_rat(x: Rat) -> Self {
        // defining polynomial t - x, cleared to integers
        let p = UniPoly::from_coeffs(vec![-x.clone(), Rat::from_integer(1.into())]);
        let (z, _) = p.to_zpoly();
        Algebraic { poly: z, lo: x.clone(), hi: x }
    }

    /// All real roots of `p`, in increasing order.
    pub fn roots_of(p: &UniPoly) -> Vec<Algebraic> {
        if p.is_zero() {
            panic!("roots_of(0) is undefined");
        }
        let (z, _) = p.to_zpoly();
        let chain = SturmChain::new(&z);
        chain
            .isolate()
            .into_iter()
            .map(|(lo, hi)| Algebraic::new(chain.polynomial().clone(), lo, hi))
            .collect()
    }

    pub fn lo(&self) -> &Rat {
        &self.lo
    }

    pub fn hi(&self) -> &Rat {
        &self.hi
    }

    pub fn interval(&self) -> QInterval {
        QInterval::new(self.lo.clone(), self.hi.clone())
    }

    pub fn mid(&self) -> Rat {
        (&self.lo + &self.hi) / Rat::from_integer(2.into())
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    /// The exact rational value, when the interval has collapsed.
    pub fn as_exact(&self) -> Option<&Rat> {
        (self.lo == self.hi).then_some(&self.lo)
    }

    pub fn to_f64(&self) -> f64 {
        self.mid().to_f64().unwrap_or(f64::NAN)
    }

    /// One sign-bisection step; collapses to an exact value on a rational hit.
    pub fn refine_once(&mut self) {
        if self.lo == self.hi {
            return;
        }
        let mid = self.mid();
        let sm = self.poly.sign_at_rat(&mid);
        if sm == 0 {
            self.lo = mid.clone();
            self.hi = mid;
            return;
        }
        if sm == self.poly.sign_at_rat(&self.lo) {
            self.lo = mid;
        } else {
            self.hi = mid;
        }
    }

    pub fn refine_below(&mut self, width: &Rat) {
        while self.width() > *width {
            self.refine_once();
        }
    }

    pub fn overlaps(&self, other: &Algebraic) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// Exact equality. A shared value must be a root of the gcd of the
    /// defining polynomials, so gcd roots are matched against both
    /// isolating intervals.
    pub fn eq_exact(&self, other: &Algebraic) -> bool {
        if let Some(x) = self.as_exact() {
            return other.is_value(x);
        }
        if let Some(x) = other.as_exact() {
            return self.is_value(x);
        }
        if !self.overlaps(other) {
            return false;
        }
        let g = self.poly.gcd(&other.poly);
        if g.deg().map_or(true, |d| d == 0) {
            return false;
        }
        let chain = SturmChain::new(&g);
        for (lo, hi) in chain.isolate() {
            let mut rho = Algebraic::new(chain.polynomial().clone(), lo, hi);
            if rho.lies_in(self) && rho.lies_in(other) {
                return true;
            }
        }
        false
    }

    /// Whether this number equals the rational `x`.
    pub fn is_value(&self, x: &Rat) -> bool {
        if let Some(v) = self.as_exact() {
            return v == x;
        }
        self.contains(x) && self.poly.sign_at_rat(x) == 0
    }

    /// Decides whether this number (a root of a divisor of `host.poly`, or
    /// any number distinct from host's endpoints) lies in host's isolating
    /// interval, by refinement. With `self` a root of `gcd(p, q)` and `host`
    /// isolating the single root of `p` there, membership means equality
    /// with that root.
    fn lies_in(&mut self, host: &Algebraic) -> bool {
        if let Some(v) = self.as_exact() {
            return host.contains(v);
        }
        // host endpoints are non-roots of host.poly, hence non-roots of any
        // divisor, so this root never sits exactly on an endpoint and
        // refinement decides membership in finitely many steps.
        loop {
            if self.hi < host.lo || self.lo > host.hi {
                return false;
            }
            if self.lo > host.lo && self.hi < host.hi {
                return true;
            }
            if let Some(v) = self.as_exact() {
                return host.contains(v);
            }
            self.refine_once();
        }
    }

    fn contains(&self, x: &Rat) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    /// Total order by refinement; equal numbers compare `Equal` exactly.
    pub fn cmp_exact(&self, other: &Algebraic) -> Ordering {
        if self.eq_exact(other) {
            return Ordering::Equal;
        }
        let mut a = self.clone();
        let mut b = other.clone();
        loop {
            if a.hi < b.lo {
                return Ordering::Less;
            }
            if b.hi < a.lo {
                return Ordering::Greater;
            }
            a.refine_once();
            b.refine_once();
        }
    }
}
