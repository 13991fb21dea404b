pub mod charpoly;
pub mod gcd;
pub mod intmatrix;
pub mod linalg;
pub mod modp;
pub mod poly;
pub mod scalar;
pub mod upoly;

pub use gcd::poly_gcd;
pub use intmatrix::IntMatrix;
pub use poly::{Grading, Mono, MultiPoly};
pub use scalar::Scalar;
pub use upoly::{RatFunc, UPoly};
