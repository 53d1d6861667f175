//! Exact arithmetic: rationals, quadratic fields, polynomials, integer matrices and root counts.

pub mod factor;
mod field;
pub mod matrix;
pub mod modp;
pub mod params;
pub mod poly;
pub mod quad;
pub mod rational;
pub mod roots;
pub mod schur_cohn;
pub mod sturm;

pub use field::Field;
pub use matrix::IntMatrix;
pub use params::{quad_field_for_ell, EllParams};
pub use poly::{RatPoly, UniPoly};
pub use quad::QuadExt;
pub use rational::Rational;
pub use schur_cohn::schur_cohn_inside;
pub use sturm::sturm_count;
