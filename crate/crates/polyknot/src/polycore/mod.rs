//! Exact univariate/bivariate polynomial arithmetic, divided differences,
//! resultant elimination and certified real-root isolation.
//!
//! Everything here is pure and exact: coefficients are arbitrary-precision
//! rationals and no operation rounds. The submodules layer as follows:
//! [`zpoly`] holds the integer-polynomial kernels (gcd, Sturm chains,
//! pseudo-division), [`unipoly`] and [`bipoly`] are the public rational
//! types, [`interval`] is rational interval arithmetic, [`algebraic`] wraps
//! isolated real algebraic numbers, and [`system`] decides common real
//! zeros of symmetric bivariate systems.

pub mod algebraic;
pub mod bipoly;
pub mod interval;
pub mod system;
pub mod unipoly;
pub mod zpoly;

use num::BigRational;
use thiserror::Error;

/// Exact scalar used throughout the crate.
pub type Rat = BigRational;

pub use algebraic::Algebraic;
pub use bipoly::{BiPoly, Var};
pub use interval::QInterval;
pub use unipoly::{Degree, UniPoly};

/// Errors raised by resultant elimination.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    /// The Sylvester resultant vanished identically: the inputs share a
    /// factor of positive degree in the eliminated variable. Callers must
    /// fall back to a gcd-based decomposition.
    #[error("resultant is identically zero (inputs share a factor)")]
    IdenticallyZeroResultant,
    /// An input was identically zero in the eliminated variable.
    #[error("degenerate input to resultant elimination")]
    DegenerateInput,
}

/// Parse an exact scalar from a decimal string (`-19.1167`) or a rational
/// string (`p/q`). Decimal digits become an exact decimal fraction, never a
/// binary float.
pub fn parse_rat(text: &str) -> Option<Rat> {
    use num::BigInt;
    let s = text.trim();
    if s.is_empty() {
        return None;
    }
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num.trim().parse().ok()?;
        let d: BigInt = den.trim().parse().ok()?;
        if d == BigInt::from(0) {
            return None;
        }
        return Some(Rat::new(n, d));
    }
    let (sign, digits) = match s.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int_part, frac_part) = match digits.split_once('.') {
        Some((i, f)) => (i, f),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().all(|c| c.is_ascii_digit()) || !frac_part.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    let joined = format!("{}{}", int_part, frac_part);
    let n: BigInt = if joined.is_empty() { BigInt::from(0) } else { joined.parse().ok()? };
    let d = BigInt::from(10u32).pow(frac_part.len() as u32);
    Some(Rat::new(BigInt::from(sign) * n, d))
}

/// Shorthand for an integer-valued rational.
pub fn rat_i(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

/// Shorthand for `n/d`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_decimals_exactly() {
        assert_eq!(parse_rat("-19.1167").unwrap(), rat(-191167, 10000));
        assert_eq!(parse_rat("0.5").unwrap(), rat(1, 2));
        assert_eq!(parse_rat("51.84").unwrap(), rat(5184, 100));
        assert_eq!(parse_rat("3").unwrap(), rat_i(3));
        assert_eq!(parse_rat("-7/4").unwrap(), rat(-7, 4));
        assert_eq!(parse_rat(".25").unwrap(), rat(1, 4));
    }

    #[test]
    fn rejects_malformed_scalars() {
        for bad in ["", "1/0", "1.2.3", "a", "1e3", "--2"] {
            assert!(parse_rat(bad).is_none(), "{bad:?} should not parse");
        }
    }
}
