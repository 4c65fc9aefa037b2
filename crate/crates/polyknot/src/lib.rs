//! Polynomial knots over exact rational arithmetic.
//!
//! A polynomial knot is a map `t ↦ (f(t), g(t), h(t))` with real polynomial
//! components that is a smooth embedding of the line in 3-space. This crate
//! decides embeddedness exactly, classifies maps into the degree-capped
//! spaces `A_d`/`B_d`/`C_d` and their knot subspaces `O_d`/`P_d`/`Q_d`,
//! builds closed-form isotopy paths in coefficient space, perturbs
//! degenerate maps into honest knots, and extracts planar diagrams with
//! Kauffman bracket and Jones-type invariants.

pub mod diagram;
pub mod isotopy;
pub mod knotspace;
pub mod polycore;

pub use polycore::Rat;
