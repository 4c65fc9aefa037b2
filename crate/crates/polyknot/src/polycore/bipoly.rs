//! Exact bivariate polynomials in `s` and `t`, sparse over the rationals,
//! with divided differences, Sylvester resultant elimination (fraction-free
//! Bareiss on integer-polynomial entries) and gcd over ℚ[s][t].

use std::collections::BTreeMap;

use num::{One, Signed, Zero};

use super::interval::QInterval;
use super::unipoly::{Degree, UniPoly};
use super::zpoly::ZPoly;
use super::{PolyError, Rat};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    S,
    T,
}

/// Sparse bivariate polynomial; key `(i, j)` holds the coefficient of
/// `s^i t^j`. No zero coefficients are stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), Rat>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly { terms: BTreeMap::new() }
    }

    pub fn constant(c: Rat) -> Self {
        let mut p = Self::zero();
        if !c.is_zero() {
            p.terms.insert((0, 0), c);
        }
        p
    }

    pub fn from_terms<I: IntoIterator<Item = ((u32, u32), Rat)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (k, c) in terms {
            p.add_term(k, c);
        }
        p
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rat)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, key: (u32, u32), c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(key) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self, var: Var) -> Degree {
        let d = self
            .terms
            .keys()
            .map(|&(i, j)| match var {
                Var::S => i,
                Var::T => j,
            })
            .max();
        match d {
            None => Degree::MinusInfinity,
            Some(d) => Degree::Finite(d as usize),
        }
    }

    /// Total degree, or `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| i + j).max()
    }

    pub fn neg(&self) -> Self {
        BiPoly { terms: self.terms.iter().map(|(&k, c)| (k, -c)).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&k, c) in &other.terms {
            out.add_term(k, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &other.terms {
                out.add_term((i1 + i2, j1 + j2), c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, k: &Rat) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        BiPoly { terms: self.terms.iter().map(|(&key, c)| (key, c * k)).collect() }
    }

    /// Exact evaluation at a rational point.
    pub fn eval(&self, s: &Rat, t: &Rat) -> Rat {
        // Horner in t over coefficients that are polynomials in s.
        let cols = self.t_major();
        let mut acc = Rat::zero();
        for c in cols.iter().rev() {
            acc = acc * t + c.eval(s);
        }
        acc
    }

    pub fn eval_f64(&self, s: f64, t: f64) -> f64 {
        let cols = self.t_major();
        let mut acc = 0.0;
        for c in cols.iter().rev() {
            acc = acc * t + c.eval_f64(s);
        }
        acc
    }

    /// Conservative enclosure of the image of a box.
    pub fn eval_box(&self, s: &QInterval, t: &QInterval) -> QInterval {
        self.prepared().eval_box(s, t)
    }

    /// Preprocessed evaluator for repeated box evaluations.
    pub fn prepared(&self) -> PreparedBiPoly {
        PreparedBiPoly { cols: self.t_major() }
    }

    /// Coefficients of powers of `t`, each a polynomial in `s`.
    pub fn t_major(&self) -> Vec<UniPoly> {
        let deg_t = match self.degree(Var::T) {
            Degree::MinusInfinity => return Vec::new(),
            Degree::Finite(d) => d,
        };
        let mut cols: Vec<Vec<Rat>> = vec![Vec::new(); deg_t + 1];
        for (&(i, j), c) in &self.terms {
            let col = &mut cols[j as usize];
            if col.len() <= i as usize {
                col.resize(i as usize + 1, Rat::zero());
            }
            col[i as usize] = c.clone();
        }
        cols.into_iter().map(UniPoly::from_coeffs).collect()
    }

    pub fn from_t_major(cols: &[UniPoly]) -> Self {
        let mut out = Self::zero();
        for (j, col) in cols.iter().enumerate() {
            for (i, c) in col.coeffs().iter().enumerate() {
                out.add_term((i as u32, j as u32), c.clone());
            }
        }
        out
    }

    pub fn swap_vars(&self) -> Self {
        BiPoly { terms: self.terms.iter().map(|(&(i, j), c)| ((j, i), c.clone())).collect() }
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.swap_vars()
    }

    /// Substitute a rational for `s`, leaving a polynomial in `t`.
    pub fn subst_s(&self, s: &Rat) -> UniPoly {
        let deg_t = match self.degree(Var::T) {
            Degree::MinusInfinity => return UniPoly::zero(),
            Degree::Finite(d) => d,
        };
        let mut v = vec![Rat::zero(); deg_t + 1];
        let cols = self.t_major();
        for (j, col) in cols.iter().enumerate() {
            v[j] = col.eval(s);
        }
        UniPoly::from_coeffs(v)
    }

    pub fn subst_t(&self, t: &Rat) -> UniPoly {
        self.swap_vars().subst_s(t)
    }

    /// Partial derivative with respect to `t`.
    pub fn derivative_t(&self) -> Self {
        let mut out = Self::zero();
        for (&(i, j), c) in &self.terms {
            if j > 0 {
                out.add_term((i, j - 1), c * Rat::from_integer(j.into()));
            }
        }
        out
    }

    /// Partial derivative with respect to `s`.
    pub fn derivative_s(&self) -> Self {
        let mut out = Self::zero();
        for (&(i, j), c) in &self.terms {
            if i > 0 {
                out.add_term((i - 1, j), c * Rat::from_integer(i.into()));
            }
        }
        out
    }

    /// Leading coefficient in `t` as a polynomial in `s`.
    pub fn lc_t(&self) -> UniPoly {
        self.t_major().pop().unwrap_or_else(UniPoly::zero)
    }

    /// Exact division in ℚ[s][t]; panics unless the division is exact.
    pub fn div_exact_t(&self, d: &Self) -> Self {
        assert!(!d.is_zero());
        if self.is_zero() {
            return Self::zero();
        }
        let mut rem = self.t_major();
        let div = d.t_major();
        let dn = div.len();
        assert!(rem.len() >= dn);
        let mut q: Vec<UniPoly> = vec![UniPoly::zero(); rem.len() - dn + 1];
        let lc = &div[dn - 1];
        for k in (0..q.len()).rev() {
            let head = rem[k + dn - 1].clone();
            if head.is_zero() {
                continue;
            }
            let quot = head.div_exact(lc);
            for (j, c) in div.iter().enumerate() {
                rem[k + j] = rem[k + j].sub(&quot.mul(c));
            }
            q[k] = quot;
        }
        assert!(rem.iter().all(|c| c.is_zero()), "inexact bivariate division");
        Self::from_t_major(&q)
    }

    /// Content with respect to `t`: monic gcd of the `t`-coefficients.
    pub fn content_t(&self) -> UniPoly {
        let mut g = UniPoly::zero();
        for c in self.t_major() {
            if c.is_zero() {
                continue;
            }
            g = if g.is_zero() { c } else { g.gcd(&c) };
            if g.degree() == Degree::Finite(0) {
                return UniPoly::one();
            }
        }
        g
    }

    pub(crate) fn divide_coeffs(&self, g: &UniPoly) -> Self {
        let cols: Vec<UniPoly> = self
            .t_major()
            .into_iter()
            .map(|c| if c.is_zero() { c } else { c.div_exact(g) })
            .collect();
        Self::from_t_major(&cols)
    }

    /// Pseudo-remainder in `t` (sign not normalized; only used inside gcd).
    fn pseudo_rem_t(&self, d: &Self) -> Self {
        let dd = match d.degree(Var::T) {
            Degree::Finite(k) => k,
            Degree::MinusInfinity => panic!("pseudo-remainder by zero"),
        };
        let lc = d.lc_t();
        let mut r = self.clone();
        loop {
            let rd = match r.degree(Var::T) {
                Degree::Finite(k) => k,
                Degree::MinusInfinity => break,
            };
            if rd < dd {
                break;
            }
            let head = r.lc_t();
            let shift = (rd - dd) as u32;
            // r ← lc·r − head·t^shift·d
            let mut shifted = BiPoly::zero();
            for (&(i, j), c) in &d.terms {
                shifted.add_term((i, j + shift), c.clone());
            }
            let head_bi = BiPoly::from_t_major(&[head]);
            let lc_bi = BiPoly::from_t_major(&[lc.clone()]);
            r = lc_bi.mul(&r).sub(&head_bi.mul(&shifted));
        }
        r
    }

    /// gcd in ℚ[s,t] via primitive polynomial remainder sequences in `t`.
    /// The result is primitive in `t` with monic content convention.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let ca = self.content_t();
        let cb = other.content_t();
        let mut a = self.divide_coeffs(&ca);
        let mut b = other.divide_coeffs(&cb);
        if a.degree(Var::T) < b.degree(Var::T) {
            std::mem::swap(&mut a, &mut b);
        }
        loop {
            if b.degree(Var::T) == Degree::MinusInfinity {
                break;
            }
            let r = a.pseudo_rem_t(&b);
            if r.is_zero() {
                a = b;
                break;
            }
            if r.degree(Var::T) == Degree::Finite(0) {
                // coprime as polynomials in t
                a = BiPoly::constant(Rat::one());
                break;
            }
            a = b;
            b = r.divide_coeffs(&r.content_t());
        }
        let prim = if a.degree(Var::T) == Degree::Finite(0) {
            BiPoly::constant(Rat::one())
        } else {
            a.divide_coeffs(&a.content_t())
        };
        let content_gcd = ca.gcd(&cb);
        let content_bi = BiPoly::from_t_major(&[content_gcd]);
        let g = content_bi.mul(&prim);
        // normalize: positive leading rational in the dominant term
        if let Some((_, c)) = g.terms.iter().next_back() {
            if c.is_negative() {
                return g.neg();
            }
        }
        g
    }
}

/// A `t`-major coefficient cache for fast repeated interval evaluation.
pub struct PreparedBiPoly {
    cols: Vec<UniPoly>,
}

impl PreparedBiPoly {
    pub fn eval_box(&self, s: &QInterval, t: &QInterval) -> QInterval {
        let mut acc = QInterval::point(Rat::zero());
        for c in self.cols.iter().rev() {
            acc = acc.mul(t).add(&c.eval_interval(s));
        }
        acc
    }

    pub fn eval_point(&self, s: &Rat, t: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.cols.iter().rev() {
            acc = acc * t + c.eval(s);
        }
        acc
    }
}

/// The bivariate divided difference Γ of a univariate polynomial γ:
/// `Γ(s,t)·(s−t) = γ(s)−γ(t)` identically, and `Γ(t,t) = γ'(t)`.
/// Explicitly `Γ = Σ_{k≥1} γ_k (s^{k-1} + s^{k-2} t + ⋯ + t^{k-1})`.
pub fn divided_difference(p: &UniPoly) -> BiPoly {
    let mut out = BiPoly::zero();
    for (k, c) in p.coeffs().iter().enumerate().skip(1) {
        if c.is_zero() {
            continue;
        }
        for i in 0..k {
            out.add_term(((k - 1 - i) as u32, i as u32), c.clone());
        }
    }
    out
}

/// Sylvester resultant of `p` and `q` with respect to `eliminate`, as a
/// polynomial in the surviving variable (returned in the `t = variable`
/// convention of [`UniPoly`]).
///
/// The determinant is evaluated by fraction-free Gaussian elimination on
/// integer-polynomial entries; the exact rational scale is restored at the
/// end.
pub fn resultant_eliminate(p: &BiPoly, q: &BiPoly, eliminate: Var) -> Result<UniPoly, PolyError> {
    if p.is_zero() || q.is_zero() {
        return Err(PolyError::DegenerateInput);
    }
    let (a, b) = match eliminate {
        Var::T => (p.clone(), q.clone()),
        Var::S => (p.swap_vars(), q.swap_vars()),
    };
    let am = a.t_major();
    let bm = b.t_major();
    let m = am.len() - 1;
    let n = bm.len() - 1;
    if m == 0 && n == 0 {
        return Ok(UniPoly::one());
    }
    // Res(c, q) = c^deg(q) when one argument is free of the eliminated variable.
    if m == 0 {
        return finish_resultant(power(&am[0], n));
    }
    if n == 0 {
        return finish_resultant(power(&bm[0], m));
    }

    // Clear the inputs to primitive integer polynomials; Res(λP, Q) = λ^deg(Q) Res(P, Q).
    let (za, sa) = clear_rows(&am);
    let (zb, sb) = clear_rows(&bm);
    let size = m + n;
    let mut mat: Vec<Vec<ZPoly>> = vec![vec![ZPoly::zero(); size]; size];
    for row in 0..n {
        for (k, entry) in za.iter().rev().enumerate() {
            mat[row][row + k] = entry.clone();
        }
    }
    for row in 0..m {
        for (k, entry) in zb.iter().rev().enumerate() {
            mat[n + row][row + k] = entry.clone();
        }
    }
    let det = bareiss_det(mat);
    if det.is_zero() {
        return Err(PolyError::IdenticallyZeroResultant);
    }
    let scale = pow_rat(&sa, n) * pow_rat(&sb, m);
    Ok(UniPoly::from_zpoly(&det).scale(&scale))
}

fn finish_resultant(r: UniPoly) -> Result<UniPoly, PolyError> {
    if r.is_zero() {
        Err(PolyError::IdenticallyZeroResultant)
    } else {
        Ok(r)
    }
}

fn power(base: &UniPoly, e: usize) -> UniPoly {
    let mut acc = UniPoly::one();
    for _ in 0..e {
        acc = acc.mul(base);
    }
    acc
}

fn pow_rat(base: &Rat, e: usize) -> Rat {
    let mut acc = Rat::one();
    for _ in 0..e {
        acc *= base;
    }
    acc
}

/// Clears a `t`-major coefficient list to primitive integer polynomials with
/// one common positive rational scale.
fn clear_rows(rows: &[UniPoly]) -> (Vec<ZPoly>, Rat) {
    use num::BigInt;
    use num::Integer;
    let mut l = BigInt::one();
    for r in rows {
        for c in r.coeffs() {
            l = l.lcm(c.denom());
        }
    }
    let scaled: Vec<ZPoly> = rows
        .iter()
        .map(|r| {
            ZPoly::from_coeffs(
                r.coeffs()
                    .iter()
                    .map(|c| (c * Rat::from_integer(l.clone())).to_integer())
                    .collect(),
            )
        })
        .collect();
    let mut content = BigInt::zero();
    for z in &scaled {
        content = content.gcd(&z.content());
        if content.is_one() {
            break;
        }
    }
    if content.is_zero() {
        content = BigInt::one();
    }
    let out: Vec<ZPoly> = scaled
        .iter()
        .map(|z| {
            ZPoly::from_coeffs(z.coeffs().iter().map(|c| c / &content).collect())
        })
        .collect();
    (out, Rat::new(content, l))
}

/// Fraction-free determinant (Bareiss). Entries form an integral domain with
/// exact division.
fn bareiss_det(mut m: Vec<Vec<ZPoly>>) -> ZPoly {
    let n = m.len();
    if n == 0 {
        return ZPoly::constant(1.into());
    }
    let mut sign = 1i32;
    let mut prev = ZPoly::constant(1.into());
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return ZPoly::zero();
            };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[k][k].mul(&m[i][j]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num.div_exact(&prev);
            }
            m[i][k] = ZPoly::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign < 0 {
        det.neg()
    } else {
        det
    }
}
