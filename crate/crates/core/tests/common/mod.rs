#![allow(dead_code)]

use bezres::experiments::{enumerate_cell_with, random_pair, Coprimality};
use bezres::parse::{format_poly, Style};
use bezres::{IntPoly, RatPoly};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use sha2::{Digest, Sha256};

pub const SUITE_SEED: u64 = 7;
pub const SUITE_RANDOM: u64 = 10_000;
pub const SUITE_MAX_DEG: u32 = 6;
pub const SUITE_HEIGHT: u32 = 20;

pub fn p(c: &[i64]) -> IntPoly {
    IntPoly::from_i64s(c)
}

/// Every pair with `1 <= m, n <= max_deg`, positive leading coefficients and
/// height at most `h` that has no common root.
pub fn exhaustive_pairs(max_deg: u32, h: u32) -> Vec<(IntPoly, IntPoly)> {
    let mut out = Vec::new();
    for m in 1..=max_deg {
        for n in 1..=max_deg {
            out.extend(enumerate_cell_with(m, n, h, Coprimality::NoCommonRoot));
        }
    }
    out
}

/// Seeded pairs with degrees cycling through `1..=max_deg`; every third pair
/// has `f` negated so both leading-coefficient signs occur.
pub fn random_pairs(count: u64, max_deg: u32, h: u32, seed: u64) -> Vec<(IntPoly, IntPoly)> {
    let deg = max_deg as u64;
    (0..count)
        .map(|i| {
            let m = 1 + (i % deg) as u32;
            let n = 1 + ((i / deg) % deg) as u32;
            let (f, g) = random_pair(m, n, h, seed, i);
            if i % 3 == 2 {
                (-f, g)
            } else {
                (f, g)
            }
        })
        .collect()
}

/// Exhaustive degree <= 2 / height <= 2 pairs followed by the seeded random pairs.
pub fn theorem_suite(random: u64) -> Vec<(IntPoly, IntPoly)> {
    let mut pairs = exhaustive_pairs(2, 2);
    pairs.extend(random_pairs(random, SUITE_MAX_DEG, SUITE_HEIGHT, SUITE_SEED));
    pairs
}

/// Solves `a x = b` over `Q` by Gauss-Jordan elimination; `None` if singular.
pub fn solve_rational(mut a: Vec<Vec<BigRational>>, mut b: Vec<BigRational>) -> Option<Vec<BigRational>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let inv = a[col][col].recip();
        for v in a[col][col..].iter_mut() {
            *v = &*v * &inv;
        }
        b[col] = &b[col] * &inv;
        let pivot_row = a[col].clone();
        for r in (0..n).filter(|&r| r != col) {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for (v, pv) in a[r][col..].iter_mut().zip(&pivot_row[col..]) {
                *v = &*v - &factor * pv;
            }
            let delta = &factor * &b[col];
            b[r] = &b[r] - delta;
        }
    }
    Some(b)
}

/// The Bezout pair from the linear system `p*f + q*g = 1` in the unknown
/// coefficients, `deg p < n`, `deg q < m`.
pub fn bezout_by_linear_algebra(f: &IntPoly, g: &IntPoly) -> Option<(RatPoly, RatPoly)> {
    let (m, n) = (f.degree()?, g.degree()?);
    let size = m + n;
    let rat = |c: BigInt| BigRational::from_integer(c);
    // Row t: coefficient of x^t. Unknowns: p_0..p_{n-1}, q_0..q_{m-1} (ascending).
    let mut a = vec![vec![BigRational::zero(); size]; size];
    for i in 0..n {
        for k in 0..=m {
            a[i + k][i] = rat(f.coeff(k));
        }
    }
    for i in 0..m {
        for k in 0..=n {
            a[i + k][n + i] = rat(g.coeff(k));
        }
    }
    let mut b = vec![BigRational::zero(); size];
    b[0] = BigRational::one();
    let x = solve_rational(a, b)?;
    let p = RatPoly::from_coeffs_ascending(x[..n].to_vec());
    let q = RatPoly::from_coeffs_ascending(x[n..].to_vec());
    Some((p, q))
}

/// Prime divisors of `a != 0` by trial division.
pub fn prime_support(a: i64) -> Vec<i64> {
    let mut a = a.unsigned_abs();
    let mut primes = Vec::new();
    let mut d = 2u64;
    while d * d <= a {
        if a.is_multiple_of(d) {
            primes.push(d as i64);
            while a.is_multiple_of(d) {
                a /= d;
            }
        }
        d += 1;
    }
    if a > 1 {
        primes.push(a as i64);
    }
    primes
}

pub fn big_prime_support(a: &BigInt) -> Vec<BigInt> {
    let mut a = a.abs();
    let mut primes = Vec::new();
    let mut d = BigInt::from(2);
    while &d * &d <= a {
        if (&a % &d).is_zero() {
            primes.push(d.clone());
            while (&a % &d).is_zero() {
                a /= &d;
            }
        }
        d += 1;
    }
    if a > BigInt::one() {
        primes.push(a);
    }
    primes
}

/// SHA-256 over the coefficient-list rendering of `random_pair` for
/// `index in 0..count`, one `f;g` line per pair.
pub fn random_pair_digest(m: u32, n: u32, h: u32, seed: u64, count: u64) -> String {
    let mut hasher = Sha256::new();
    for index in 0..count {
        let (f, g) = random_pair(m, n, h, seed, index);
        let line = format!(
            "{};{}\n",
            format_poly(&f, Style::CoeffList),
            format_poly(&g, Style::CoeffList)
        );
        hasher.update(line.as_bytes());
    }
    hasher
        .finalize()
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// `(m, n, H, seed, count, sha256)` for [`random_pair_digest`].
pub const GOLDEN_RANDOM_DIGESTS: [(u32, u32, u32, u64, u64, &str); 4] = [
    (1, 1, 2, 0, 100, "343aa3c3762d26ccc2e0a729f3f681c2942ea5d17aabde82af38cf7ab4433398"),
    (3, 2, 20, 7, 100, "ecb659e4708a69b4cf04563cc84e93f1b45fd1fce391818980988ce7b37c1417"),
    (6, 6, 20, 7, 50, "585d5b2bd6849b849f9e263886c5c43e0ecda18b94b08a2081d29aec7e0f4d0a"),
    (2, 5, 1000, 123_456_789, 50, "7d8a3ce914b9f8cd255ae39ffe23ad585b1bb5e147a39d283b658df379c29744"),
];
