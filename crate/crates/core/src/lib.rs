//! Exact Gröbner-basis machinery over `Q(t)` for ideals attached to
//! singular braid diagrams, plus checks of the recursive quotient relation
//! between their nonlocal ideals.

pub mod braid;
pub mod coeff;
pub mod corpus;
pub mod error;
pub mod groebner;
pub mod parse;
pub mod poly;
pub mod verify;

pub use braid::{BraidGraph, BraidGraphSpec, EdgeRing, FramingPreset};
pub use coeff::{IntLaurentPoly, RationalFunction};
pub use error::{Error, Result};
pub use groebner::{GroebnerBasis, Ideal};
pub use parse::{parse_coefficient, parse_polynomial};
pub use poly::{Monomial, Polynomial, Term, VariableOrder};
pub use verify::VerificationReport;
