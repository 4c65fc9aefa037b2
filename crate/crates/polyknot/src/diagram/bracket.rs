//! Integer Laurent polynomials and the Kauffman bracket state sum over
//! planar-diagram codes, with the writhe-normalized Jones polynomial and
//! the determinant.
//!
//! Planar-diagram convention: a crossing is `[a, b, c, d]` with `a` the
//! incoming under-edge and `b, c, d` following counterclockwise. The
//! A-smoothing joins the ends `(a, b)` and `(c, d)`; the B-smoothing joins
//! `(a, d)` and `(b, c)`.

use std::collections::BTreeMap;
use std::fmt;

use super::{DiagramError, KnotDiagram};

/// Laurent polynomial with integer coefficients in one named variable.
/// No zero coefficients are stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPoly {
    pub var: char,
    terms: BTreeMap<i64, i64>,
}

impl LaurentPoly {
    pub fn zero(var: char) -> Self {
        LaurentPoly { var, terms: BTreeMap::new() }
    }

    pub fn one(var: char) -> Self {
        Self::monomial(var, 0, 1)
    }

    pub fn monomial(var: char, exp: i64, coeff: i64) -> Self {
        let mut terms = BTreeMap::new();
        if coeff != 0 {
            terms.insert(exp, coeff);
        }
        LaurentPoly { var, terms }
    }

    pub fn from_terms(var: char, items: &[(i64, i64)]) -> Self {
        let mut p = Self::zero(var);
        for &(e, c) in items {
            p.add_term(e, c);
        }
        p
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &i64)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, exp: i64, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let entry = self.terms.entry(exp).or_insert(0);
        *entry += coeff;
        if *entry == 0 {
            self.terms.remove(&exp);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.var, other.var);
        let mut out = self.clone();
        for (&e, &c) in &other.terms {
            out.add_term(e, c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.var, other.var);
        let mut out = Self::zero(self.var);
        for (&e1, &c1) in &self.terms {
            for (&e2, &c2) in &other.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }

    /// Exponent reversal `x ↦ x⁻¹` (mirror images act this way on the
    /// Jones polynomial).
    pub fn invert_variable(&self) -> Self {
        LaurentPoly { var: self.var, terms: self.terms.iter().map(|(&e, &c)| (-e, c)).collect() }
    }

    /// Exact value at `x = −1`.
    pub fn eval_neg_one(&self) -> i64 {
        self.terms.iter().map(|(&e, &c)| if e.rem_euclid(2) == 0 { c } else { -c }).sum()
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&e, &c) in &self.terms {
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sign} ")?;
            }
            let mag = c.unsigned_abs();
            match e {
                0 => write!(f, "{mag}")?,
                1 => {
                    if mag != 1 {
                        write!(f, "{mag}")?;
                    }
                    write!(f, "{}", self.var)?;
                }
                _ => {
                    if mag != 1 {
                        write!(f, "{mag}")?;
                    }
                    write!(f, "{}^{}", self.var, e)?;
                }
            }
        }
        Ok(())
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

/// Kauffman bracket of a planar-diagram code over edges `0..2n`:
/// `Σ_states A^(a−b) δ^(loops−1)` with `δ = −A² − A⁻²`.
pub fn bracket_from_pd(pd: &[[usize; 4]]) -> Result<LaurentPoly, DiagramError> {
    let n = pd.len();
    if n > 24 {
        return Err(DiagramError::TooManyCrossings);
    }
    if n == 0 {
        return Ok(LaurentPoly::one('A'));
    }
    let n_edges = 2 * n;
    let delta = LaurentPoly::from_terms('A', &[(2, -1), (-2, -1)]);
    let mut total = LaurentPoly::zero('A');
    for state in 0u32..(1 << n) {
        let mut uf = UnionFind::new(n_edges);
        let mut a_count: i64 = 0;
        for (i, x) in pd.iter().enumerate() {
            if state >> i & 1 == 0 {
                a_count += 1;
                uf.union(x[0], x[1]);
                uf.union(x[2], x[3]);
            } else {
                uf.union(x[0], x[3]);
                uf.union(x[1], x[2]);
            }
        }
        let mut loops = 0usize;
        for e in 0..n_edges {
            if uf.find(e) == e {
                loops += 1;
            }
        }
        let b_count = n as i64 - a_count;
        let mut term = LaurentPoly::monomial('A', a_count - b_count, 1);
        for _ in 1..loops {
            term = term.mul(&delta);
        }
        total = total.add(&term);
    }
    Ok(total)
}

/// Kauffman bracket of a diagram, in the variable `A`.
pub fn kauffman_bracket(diagram: &KnotDiagram) -> Result<LaurentPoly, DiagramError> {
    bracket_from_pd(diagram.pd_code())
}

/// Jones polynomial `V = (−A)^(−3w) ⟨D⟩` with `q = A⁻⁴`; exponents must
/// come out divisible by four.
pub fn jones(diagram: &KnotDiagram) -> Result<LaurentPoly, DiagramError> {
    let bracket = kauffman_bracket(diagram)?;
    let w = super::writhe(diagram);
    jones_from_bracket(&bracket, w)
}

/// Writhe normalization and substitution, shared with the reference-code
/// oracle path.
pub fn jones_from_bracket(bracket: &LaurentPoly, writhe: i64) -> Result<LaurentPoly, DiagramError> {
    let sign = if writhe.rem_euclid(2) == 0 { 1 } else { -1 };
    let normalized = bracket.mul(&LaurentPoly::monomial('A', -3 * writhe, sign));
    let mut out = LaurentPoly::zero('q');
    for (&e, &c) in normalized.terms.iter() {
        if e.rem_euclid(4) != 0 {
            return Err(DiagramError::NonIntegerExponent);
        }
        out.add_term(-e / 4, c);
    }
    Ok(out)
}

/// Knot determinant `|V(−1)|`.
pub fn determinant(diagram: &KnotDiagram) -> Result<u64, DiagramError> {
    Ok(jones(diagram)?.eval_neg_one().unsigned_abs())
}

/// Parses reference planar-diagram codes like
/// `X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]` (1-based sequential edge labels).
/// Returns the 0-based code plus the writhe read off the edge ordering.
pub fn pd_from_text(text: &str) -> (Vec<[usize; 4]>, i64) {
    let mut pd = Vec::new();
    for chunk in text.split_whitespace() {
        let inner = chunk
            .trim_start_matches('X')
            .trim_start_matches('[')
            .trim_end_matches(']');
        let nums: Vec<usize> = inner.split(',').map(|x| x.trim().parse().unwrap()).collect();
        assert_eq!(nums.len(), 4, "malformed planar-diagram chunk {chunk:?}");
        pd.push([nums[0], nums[1], nums[2], nums[3]]);
    }
    let n_edges = 2 * pd.len();
    let succ = |x: usize| x % n_edges + 1;
    let mut w = 0i64;
    for x in &pd {
        // slot 1 is the incoming over-edge exactly when its successor is
        // slot 3; that arrangement is the negative crossing.
        if succ(x[1]) == x[3] {
            w -= 1;
        } else {
            w += 1;
        }
    }
    let pd0 = pd.iter().map(|x| [x[0] - 1, x[1] - 1, x[2] - 1, x[3] - 1]).collect();
    (pd0, w)
}
