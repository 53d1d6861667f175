//! Multivariate polynomials and rational maps of projective space.

pub mod factored;
pub mod frac;
pub mod gcd;
pub mod map;
pub mod poly;
pub mod reduce;

pub use factored::{factor_against, Factored};
pub use frac::Frac;
pub use map::{Image, ProjPoint, RationalMap};
pub use poly::{Mono, MultiPoly};
pub use reduce::{reduce_map, Reducer};
