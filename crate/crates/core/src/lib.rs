//! Exact computations on the Cox ring of the blow-up of the projective plane
//! at `n >= 2` points on a line.
//!
//! The Cox ring is generated by `l` (the strict transform of the line), the
//! exceptional sections `e_1..e_n`, and sections `s_1..s_n` cut out by lines
//! through an auxiliary point `q`. Its ideal of relations is generated by the
//! `n - 2` quadratic trinomials of [`relations`]. Every dimension claim can be
//! cross-checked against plane interpolation in [`oracle`].

pub mod cli;
pub mod coxmono;
pub mod error;
pub mod oracle;
pub mod picard;
pub mod relations;

pub use coxmono::{CoxMonomial, StandardMonomialSet};
pub use error::{CoxError, Result};
pub use oracle::{HomogeneousForm, PointConfig};
pub use picard::DivisorClass;
pub use relations::{GradedPolynomial, Relation};
