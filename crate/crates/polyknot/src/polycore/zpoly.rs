//! Integer-coefficient polynomial kernels: pseudo-division, primitive-PRS
//! gcd, Yun squarefree decomposition, Sturm chains and sign-change root
//! isolation. The rational front ends in [`super::unipoly`] normalize to
//! these to keep coefficient growth under control.

use num::{BigInt, Integer, One, Signed, Zero};

use super::Rat;

/// Dense integer polynomial; the highest stored coefficient is nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZPoly(Vec<BigInt>);

fn trim(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().map_or(false, |c| c.is_zero()) {
        v.pop();
    }
    v
}

impl ZPoly {
    pub fn zero() -> Self {
        ZPoly(Vec::new())
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        ZPoly(trim(coeffs))
    }

    pub fn constant(c: BigInt) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn deg(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lc(&self) -> BigInt {
        self.0.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn neg(&self) -> Self {
        ZPoly(self.0.iter().map(|c| -c).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        let mut v = vec![BigInt::zero(); n];
        for (i, c) in self.0.iter().enumerate() {
            v[i] += c;
        }
        for (i, c) in other.0.iter().enumerate() {
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
        let mut v = vec![BigInt::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Self::from_coeffs(v)
    }

    pub fn mul_scalar(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        ZPoly(self.0.iter().map(|c| c * k).collect())
    }

    pub fn derivative(&self) -> Self {
        if self.0.len() <= 1 {
            return Self::zero();
        }
        let v = self
            .0
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigInt::from(i))
            .collect();
        Self::from_coeffs(v)
    }

    /// gcd of the coefficients, always nonnegative.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.0 {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divide out the content; the sign of the leading coefficient is kept.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let g = self.content();
        if g.is_one() {
            return self.clone();
        }
        ZPoly(self.0.iter().map(|c| c / &g).collect())
    }

    /// Primitive with positive leading coefficient.
    pub fn primitive_positive(&self) -> Self {
        let p = self.primitive();
        if p.lc().is_negative() {
            p.neg()
        } else {
            p
        }
    }

    /// Exact division; the caller guarantees divisibility over the integers.
    pub fn div_exact(&self, d: &Self) -> Self {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Self::zero();
        }
        let mut rem = self.0.clone();
        let dn = d.0.len();
        let n = rem.len();
        assert!(n >= dn, "exact division with too-small dividend");
        let mut q = vec![BigInt::zero(); n - dn + 1];
        let lc = d.lc();
        for k in (0..q.len()).rev() {
            let head = rem[k + dn - 1].clone();
            if head.is_zero() {
                continue;
            }
            let (quot, r) = head.div_rem(&lc);
            assert!(r.is_zero(), "inexact coefficient division");
            for (j, c) in d.0.iter().enumerate() {
                rem[k + j] -= &quot * c;
            }
            q[k] = quot;
        }
        assert!(rem.iter().all(|c| c.is_zero()), "nonzero remainder in exact division");
        Self::from_coeffs(q)
    }

    /// Pseudo-remainder scaled so the result equals `|lc(d)|^(δ+1) · self mod d`
    /// up to that positive factor; δ = deg(self) − deg(d). Positive scaling
    /// keeps sign sequences (Sturm) valid.
    pub fn pseudo_rem_pos(&self, d: &Self) -> Self {
        assert!(!d.is_zero());
        let dd = d.deg().unwrap();
        let mut r = self.clone();
        if r.deg().map_or(true, |rd| rd < dd) {
            return r;
        }
        let delta = r.deg().unwrap() - dd;
        let lc = d.lc();
        let mut steps = 0usize;
        while let Some(rd) = r.deg() {
            if rd < dd {
                break;
            }
            let shift = rd - dd;
            let head = r.lc();
            let mut next = r.mul_scalar(&lc);
            for (j, c) in d.0.iter().enumerate() {
                let idx = j + shift;
                next.0[idx] -= &head * c;
            }
            r = Self::from_coeffs(next.0);
            steps += 1;
        }
        // Pad the multiplier to exactly lc^(δ+1), then flip to the
        // positive-scaling convention.
        let remaining = (delta + 1).saturating_sub(steps);
        for _ in 0..remaining {
            r = r.mul_scalar(&lc);
        }
        if lc.is_negative() && (delta + 1) % 2 == 1 {
            r = r.neg();
        }
        r
    }

    /// Primitive gcd with positive leading coefficient.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.primitive_positive();
        }
        if other.is_zero() {
            return self.primitive_positive();
        }
        let mut a = self.primitive_positive();
        let mut b = other.primitive_positive();
        if a.deg() < b.deg() {
            std::mem::swap(&mut a, &mut b);
        }
        loop {
            let r = a.pseudo_rem_pos(&b);
            if r.is_zero() {
                return b.primitive_positive();
            }
            a = b;
            b = r.primitive_positive();
        }
    }

    /// Squarefree part (product of distinct irreducible factors).
    pub fn squarefree(&self) -> Self {
        if self.deg().map_or(true, |d| d == 0) {
            return self.primitive_positive();
        }
        let g = self.gcd(&self.derivative());
        if g.deg() == Some(0) {
            return self.primitive_positive();
        }
        self.primitive_positive().div_exact(&g).primitive_positive()
    }

    /// Yun decomposition: returns `(multiplicity, squarefree factor)` pairs
    /// with nonconstant factors only, so `self ∝ Π factor^multiplicity`.
    pub fn squarefree_decomposition(&self) -> Vec<(u32, ZPoly)> {
        let p = self.primitive_positive();
        let Some(d) = p.deg() else { return Vec::new() };
        if d == 0 {
            return Vec::new();
        }
        let dp = p.derivative();
        let g = p.gcd(&dp);
        if g.deg() == Some(0) {
            return vec![(1, p)];
        }
        let mut out = Vec::new();
        let mut c = p.div_exact(&g);
        let mut w = dp.div_exact(&g);
        let mut mult = 1u32;
        loop {
            let d = w.sub(&c.derivative());
            if d.is_zero() {
                if c.deg().map_or(false, |k| k > 0) {
                    out.push((mult, c.primitive_positive()));
                }
                break;
            }
            let f = c.gcd(&d);
            if f.deg().map_or(false, |k| k > 0) {
                out.push((mult, f.clone()));
            }
            c = c.div_exact(&f);
            w = d.div_exact(&f);
            mult += 1;
            if c.deg().map_or(true, |k| k == 0) {
                break;
            }
        }
        out
    }

    /// Sign of `p(num/den)` with `den > 0`, computed without rationals as
    /// the sign of the homogenized value Σ c_i num^i den^(d-i). Powers of a
    /// power-of-two denominator become shifts.
    pub fn sign_at(&self, num: &BigInt, den: &BigInt) -> i8 {
        if self.is_zero() {
            return 0;
        }
        let d = self.0.len() - 1;
        let shift = if den.is_one() {
            Some(0u64)
        } else {
            let tz = den.trailing_zeros().unwrap_or(0);
            if den.bits() == tz + 1 { Some(tz) } else { None }
        };
        let mut acc = BigInt::zero();
        if let Some(k) = shift {
            // Horner from the leading coefficient: acc ← acc·num + (c << k·j).
            for (j, c) in self.0.iter().rev().enumerate() {
                acc = acc * num + (c << (k * j as u64));
            }
        } else {
            let mut den_pow = BigInt::one();
            for (j, c) in self.0.iter().rev().enumerate() {
                acc = acc * num + c * &den_pow;
                if j < d {
                    den_pow *= den;
                }
            }
        }
        match acc.sign() {
            num::bigint::Sign::Minus => -1,
            num::bigint::Sign::NoSign => 0,
            num::bigint::Sign::Plus => 1,
        }
    }

    /// Sign of `p(x)` for rational x.
    pub fn sign_at_rat(&self, x: &Rat) -> i8 {
        self.sign_at(x.numer(), x.denom())
    }

    /// Sign at +∞ (`+1`) direction: sign of the leading coefficient.
    pub fn sign_at_inf(&self, positive: bool) -> i8 {
        if self.is_zero() {
            return 0;
        }
        let s = if self.lc().is_negative() { -1 } else { 1 };
        if positive || (self.0.len() - 1) % 2 == 0 {
            s
        } else {
            -s
        }
    }

    pub fn eval_rat(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + Rat::from_integer(c.clone());
        }
        acc
    }

    /// Cauchy root bound, rounded up to a power of two: every real root
    /// lies strictly inside `(-B, B)`. Keeping the bound a power of two
    /// makes every bisection endpoint a dyadic rational, which keeps all
    /// downstream arithmetic cheap.
    pub fn cauchy_bound(&self) -> Rat {
        let Some(d) = self.deg() else { return Rat::one() };
        if d == 0 {
            return Rat::one();
        }
        let lc = self.lc().abs();
        let mut m = BigInt::zero();
        for c in &self.0[..d] {
            let a = c.abs();
            if a > m {
                m = a;
            }
        }
        let over = (m / lc) + BigInt::from(2); // ≥ 1 + max|c_i|/|lc|
        Rat::from_integer(BigInt::one() << over.bits())
    }
}

/// Sturm chain of a squarefree polynomial, each element primitive.
pub struct SturmChain {
    chain: Vec<ZPoly>,
}

impl SturmChain {
    /// Builds the chain for the squarefree part of `p`.
    pub fn new(p: &ZPoly) -> Self {
        let p = p.squarefree();
        let mut chain = vec![p.clone(), p.derivative().primitive()];
        if chain[1].is_zero() {
            chain.pop();
        }
        loop {
            let n = chain.len();
            if n < 2 || chain[n - 1].deg().is_none() {
                break;
            }
            if chain[n - 1].deg() == Some(0) {
                break;
            }
            let r = chain[n - 2].pseudo_rem_pos(&chain[n - 1]);
            if r.is_zero() {
                break;
            }
            chain.push(r.neg().primitive());
        }
        SturmChain { chain }
    }

    pub fn polynomial(&self) -> &ZPoly {
        &self.chain[0]
    }

    fn variations(signs: impl Iterator<Item = i8>) -> usize {
        let mut count = 0;
        let mut last = 0i8;
        for s in signs {
            if s == 0 {
                continue;
            }
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    pub fn sign_changes_at(&self, x: &Rat) -> usize {
        Self::variations(self.chain.iter().map(|p| p.sign_at_rat(x)))
    }

    pub fn sign_changes_at_inf(&self, positive: bool) -> usize {
        Self::variations(self.chain.iter().map(|p| p.sign_at_inf(positive)))
    }

    /// Number of distinct real roots in the half-open interval `(a, b]`.
    pub fn roots_in(&self, a: &Rat, b: &Rat) -> usize {
        debug_assert!(a <= b);
        self.sign_changes_at(a) - self.sign_changes_at(b)
    }

    /// Number of distinct real roots on the whole line.
    pub fn total_roots(&self) -> usize {
        self.sign_changes_at_inf(false) - self.sign_changes_at_inf(true)
    }

    /// Isolating intervals for every distinct real root of the squarefree
    /// polynomial, in increasing order. Each interval is either a single
    /// exact rational root (`lo == hi`) or an open interval with a strict
    /// sign change and no root at either endpoint.
    pub fn isolate(&self) -> Vec<(Rat, Rat)> {
        let p = &self.chain[0];
        let Some(d) = p.deg() else { return Vec::new() };
        if d == 0 {
            return Vec::new();
        }
        let bound = p.cauchy_bound();
        let lo = -bound.clone();
        let hi = bound;
        let mut out = Vec::new();
        self.isolate_rec(p, &lo, &hi, &mut out);
        out
    }

    fn isolate_rec(&self, p: &ZPoly, a: &Rat, b: &Rat, out: &mut Vec<(Rat, Rat)>) {
        // Invariant: p(a) ≠ 0 and p(b) ≠ 0, so (a, b] counts open-interval roots.
        let n = self.roots_in(a, b);
        if n == 0 {
            return;
        }
        if n == 1 {
            out.push((a.clone(), b.clone()));
            return;
        }
        let split = self.split_point(p, a, b);
        match split {
            SplitPoint::Regular(m) => {
                self.isolate_rec(p, a, &m, out);
                self.isolate_rec(p, &m, b, out);
            }
            SplitPoint::Root(m) => {
                // Exact rational root at the split: emit it and recurse on
                // both sides of a root-free punctured neighborhood.
                let (la, lb) = self.shrink_around(p, a, b, &m);
                self.isolate_rec(p, a, &la, out);
                out.push((m.clone(), m));
                self.isolate_rec(p, &lb, b, out);
            }
        }
    }

    fn split_point(&self, p: &ZPoly, a: &Rat, b: &Rat) -> SplitPoint {
        let mid = (a + b) / Rat::from_integer(2.into());
        if p.sign_at_rat(&mid) != 0 {
            return SplitPoint::Regular(mid);
        }
        SplitPoint::Root(mid)
    }

    /// Given an exact root m in (a, b), find la < m < lb with no other root
    /// in [la, lb] and p nonzero at la, lb.
    fn shrink_around(&self, p: &ZPoly, a: &Rat, b: &Rat, m: &Rat) -> (Rat, Rat) {
        let two = Rat::from_integer(2.into());
        let mut la = (a + m) / &two;
        while p.sign_at_rat(&la) == 0 || self.roots_in(&la, m) != 1 {
            la = (&la + m) / &two;
        }
        let mut lb = (m + b) / &two;
        while p.sign_at_rat(&lb) == 0 || self.roots_in(m, &lb) != 0 {
            lb = (m + &lb) / &two;
        }
        (la, lb)
    }
}

enum SplitPoint {
    Regular(Rat),
    Root(Rat),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::{rat, rat_i};

    fn zp(coeffs: &[i64]) -> ZPoly {
        ZPoly::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    #[test]
    fn gcd_of_shifted_squares() {
        // (x-1)^2 (x+2) and (x-1)(x+3) share x-1.
        let a = zp(&[-1, 1]).mul(&zp(&[-1, 1])).mul(&zp(&[2, 1]));
        let b = zp(&[-1, 1]).mul(&zp(&[3, 1]));
        assert_eq!(a.gcd(&b), zp(&[-1, 1]));
    }

    #[test]
    fn squarefree_decomposition_multiplicities() {
        // (x-1)^2 (x+4)^3
        let p = zp(&[-1, 1]).mul(&zp(&[-1, 1])).mul(&zp(&[4, 1])).mul(&zp(&[4, 1])).mul(&zp(&[4, 1]));
        let dec = p.squarefree_decomposition();
        assert_eq!(dec, vec![(2, zp(&[-1, 1])), (3, zp(&[4, 1]))]);
    }

    #[test]
    fn sturm_counts_roots_of_quadratic() {
        let p = zp(&[-2, 0, 1]); // x^2 - 2
        let chain = SturmChain::new(&p);
        assert_eq!(chain.total_roots(), 2);
        assert_eq!(chain.roots_in(&rat_i(0), &rat_i(2)), 1);
        assert_eq!(chain.roots_in(&rat_i(-2), &rat_i(0)), 1);
        let iso = chain.isolate();
        assert_eq!(iso.len(), 2);
        assert!(iso[0].1 <= iso[1].0);
    }

    #[test]
    fn isolate_handles_rational_roots() {
        // roots at -1, 0, 1/2, 3: midpoint hits are exercised
        let p = zp(&[1, 1]).mul(&zp(&[0, 1])).mul(&zp(&[-1, 2])).mul(&zp(&[-3, 1]));
        let chain = SturmChain::new(&p);
        let iso = chain.isolate();
        assert_eq!(iso.len(), 4);
        for w in iso.windows(2) {
            assert!(w[0].1 <= w[1].0, "intervals must be ordered and disjoint");
        }
        // 0 sits at the center of the Cauchy interval, so it is found exactly.
        assert!(iso.iter().any(|(l, h)| l == h && *l == rat_i(0)));
        assert!(iso.iter().any(|(l, h)| l <= &rat(1, 2) && &rat(1, 2) <= h));
    }

    #[test]
    fn no_real_roots() {
        let p = zp(&[1, 0, 1]); // x^2 + 1
        let chain = SturmChain::new(&p);
        assert_eq!(chain.total_roots(), 0);
        assert!(chain.isolate().is_empty());
    }

    fn rational_rem(a: &ZPoly, b: &ZPoly) -> Vec<Rat> {
        let mut r: Vec<Rat> = a.coeffs().iter().map(|c| Rat::from_integer(c.clone())).collect();
        let bc: Vec<Rat> = b.coeffs().iter().map(|c| Rat::from_integer(c.clone())).collect();
        let dn = bc.len();
        while r.len() >= dn && !r.is_empty() {
            if r.last().unwrap().is_zero() {
                r.pop();
                continue;
            }
            let q = r.last().unwrap() / bc.last().unwrap();
            let shift = r.len() - dn;
            for (j, c) in bc.iter().enumerate() {
                let upd = &r[shift + j] - &q * c;
                r[shift + j] = upd;
            }
            r.pop();
        }
        while r.last().map_or(false, |c| c.is_zero()) {
            r.pop();
        }
        r
    }

    #[test]
    fn pseudo_rem_is_positive_multiple_of_remainder() {
        let a = zp(&[1, -4, 0, 2, 3]);
        let b = zp(&[-5, 0, -2]); // negative leading coefficient, even/odd δ both hit
        for b in [b, zp(&[1, -3]), zp(&[2, 0, 0, -1])] {
            let prem = a.pseudo_rem_pos(&b);
            let rem = rational_rem(&a, &b);
            let prem_rat: Vec<Rat> =
                prem.coeffs().iter().map(|c| Rat::from_integer(c.clone())).collect();
            assert_eq!(prem_rat.len(), rem.len());
            if rem.is_empty() {
                continue;
            }
            let scale = &prem_rat[rem.len() - 1] / &rem[rem.len() - 1];
            assert!(scale > Rat::zero(), "scaling must be positive, got {scale}");
            for (x, y) in prem_rat.iter().zip(rem.iter()) {
                assert_eq!(x, &(&scale * y));
            }
        }
    }
}
