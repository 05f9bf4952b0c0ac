//! Exact computation of the Bezout denominator, reduced resultant and
//! resultant of a pair of coprime integer polynomials `f`, `g` of positive
//! degree:
//!
//! * `B(f, g)`: the least common multiple of the denominators of the unique
//!   rational Bezout pair `p*f + q*g = 1` with `deg p < deg g`, `deg q < deg f`;
//! * `r(f, g)`: the reduced resultant, the least positive integer in
//!   `f*Z[x] + g*Z[x]`;
//! * `R(f, g) = |Res(f, g)|`.
//!
//! Each value comes with a certificate, and [`relations`] checks the
//! divisibility relations that tie them together. [`experiments`] counts how
//! often `B = r` and `B = R` over boxes of bounded-height pairs.

pub mod bezout;
pub mod error;
pub mod experiments;
pub mod golden;
pub mod matrix;
pub mod parse;
pub mod poly;
pub mod reduced;
pub mod relations;
pub mod resultant;

pub use error::{Error, Result};
pub use poly::{IntPoly, RatPoly};
