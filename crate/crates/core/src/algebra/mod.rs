//! Exact arithmetic over F_{p^m}, R^t = F_{p^m}[u]/<u^t> and their
//! polynomial rings.

pub mod field;
pub mod poly;
pub mod rt;

pub use field::{is_prime, FieldCtx, FieldElement, MAX_FIELD_ORDER};
pub use poly::{Degree, Factorization, FieldPoly, FACTOR_DEGREE_LIMIT};
pub use rt::{RtElement, RtPoly};
