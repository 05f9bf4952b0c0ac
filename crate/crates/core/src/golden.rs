//! Reference pairs with known `(B, r, R)`.

use num_bigint::BigInt;

use crate::error::Result;
use crate::parse::parse_poly;
use crate::relations::triple_report;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GoldenExample {
    pub f: &'static str,
    pub g: &'static str,
    pub b: u64,
    pub r: u64,
    pub big_r: u64,
}

pub const GOLDEN_EXAMPLES: [GoldenExample; 6] = [
    GoldenExample { f: "6x^3-6x^2-6x-6", g: "6x^3-6x^2-6x+5", b: 11, r: 11, big_r: 287496 },
    GoldenExample { f: "6x^2+5", g: "6x^2-4x+1", b: 22, r: 11, big_r: 1056 },
    GoldenExample { f: "2x^3+3x^2-2", g: "3x-3", b: 9, r: 9, big_r: 81 },
    GoldenExample { f: "2x^3+x^2-3x+2", g: "4x-2", b: 2, r: 2, big_r: 64 },
    GoldenExample { f: "2x^3-x^2-x", g: "x^3-x^2+x+1", b: 2, r: 2, big_r: 2 },
    GoldenExample { f: "2x^3+x^2-x-1", g: "x^3-x^2+x+1", b: 3, r: 3, big_r: 27 },
];

impl GoldenExample {
    pub fn expected(&self) -> (BigInt, BigInt, BigInt) {
        (self.b.into(), self.r.into(), self.big_r.into())
    }

    /// The computed `(B, r, R)`.
    pub fn compute(&self) -> Result<(BigInt, BigInt, BigInt)> {
        let rep = triple_report(&parse_poly(self.f)?, &parse_poly(self.g)?)?;
        Ok((rep.b, rep.r, rep.big_r))
    }
}
