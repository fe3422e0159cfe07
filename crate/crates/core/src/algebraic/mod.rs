//! Polynomials, certified root isolation and exact algebraic numbers.

pub mod ball;
pub mod cbox;
pub mod cyclotomic;
pub mod dyadic;
pub mod factor;
pub mod interval;
pub mod isolate;
pub mod number;
pub mod poly;
pub mod resultant;
pub mod transcend;
