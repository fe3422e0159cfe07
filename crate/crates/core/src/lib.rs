pub mod algebraic;
pub mod decide;
pub mod error;
pub mod lattice;
pub mod lrs;
pub mod matrix;
pub mod relations;
pub mod serde_util;
pub mod spectral;
pub mod torusmin;

pub use algebraic::dyadic::{Dyadic, Round};
pub use algebraic::interval::{CInterval, DyadicInterval, F64Interval, Interval};
pub use algebraic::poly::Poly;
pub use error::{Error, Result};

pub type IntPoly = Poly<num_bigint::BigInt>;
pub type RatPoly = Poly<num_rational::BigRational>;
