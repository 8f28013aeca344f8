//! Exact tropical geometry over higher-dimensional local fields.
//!
//! The coefficient field is an iterated Laurent tower `K0((t1))...((tn))`
//! valued in `Q^n` with the lexicographic order in which the *last*
//! coordinate (the outermost uniformizer `tn`) is the most significant.
//! Every module in this crate follows that convention.
//!
//! The pipeline is:
//!
//! * [`hlf`] - field elements and their rank-n valuation,
//! * [`kpolynomial`] - Laurent polynomials over the tower, weights and
//!   initial forms,
//! * [`newton`] - extended Newton polygons and valuations of roots,
//! * [`polyhedra`] - exact rational polyhedra,
//! * [`tropical`] - tropical evaluation, membership and the fibered
//!   (stage-by-stage) tropicalization of a hypersurface.

pub mod error;
pub mod field;
pub mod hlf;
pub mod json;
pub mod kpolynomial;
pub mod linalg;
pub mod newton;
pub mod parse;
pub mod plot;
pub mod polyhedra;
pub mod rational;
pub mod tropical;
pub mod valuegroup;

pub use error::{Error, Result};
pub use field::BaseField;
pub use hlf::{FieldElement, FieldTower};
pub use kpolynomial::{KPolynomial, WeightMatrix};
pub use polyhedra::{PolyhedralComplex, RationalPolyhedron};
pub use rational::Q;
pub use valuegroup::LexValue;
