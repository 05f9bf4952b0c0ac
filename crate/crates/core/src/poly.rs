//! Dense univariate polynomials over the integers and the rationals.
//!
//! Coefficients are stored highest degree first. The zero polynomial is the
//! empty coefficient vector; every other polynomial has a nonzero first entry.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, Zero};

use crate::error::{Error, Result};

/// Coefficient domains usable in [`Poly`].
pub trait Coeff: Clone + Num + Neg<Output = Self> + fmt::Debug {}
impl<T: Clone + Num + Neg<Output = T> + fmt::Debug> Coeff for T {}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

pub type IntPoly = Poly<BigInt>;
pub type RatPoly = Poly<BigRational>;

impl<T: Coeff> Poly<T> {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * x^k`.
    pub fn monomial(c: T, k: usize) -> Self {
        let mut coeffs = vec![T::zero(); k + 1];
        coeffs[0] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn x() -> Self {
        Self::monomial(T::one(), 1)
    }

    /// Builds a polynomial from coefficients listed highest degree first,
    /// dropping leading zeros.
    pub fn from_coeffs(mut coeffs: Vec<T>) -> Self {
        let lead = coeffs.iter().take_while(|c| c.is_zero()).count();
        coeffs.drain(..lead);
        Poly { coeffs }
    }

    /// Builds a polynomial from coefficients listed constant term first.
    pub fn from_coeffs_ascending(mut coeffs: Vec<T>) -> Self {
        coeffs.reverse();
        Self::from_coeffs(coeffs)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` stands for the degree of the zero polynomial (minus infinity).
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Leading coefficient; zero for the zero polynomial.
    pub fn leading(&self) -> T {
        self.coeffs.first().cloned().unwrap_or_else(T::zero)
    }

    pub fn degree_leading(&self) -> (Option<usize>, T) {
        (self.degree(), self.leading())
    }

    /// Coefficient of `x^k`.
    pub fn coeff(&self, k: usize) -> T {
        match self.degree() {
            Some(deg) if k <= deg => self.coeffs[deg - k].clone(),
            _ => T::zero(),
        }
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.first().is_some_and(|c| c.is_one())
    }

    pub fn scale(&self, c: &T) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| a.clone() * c.clone()).collect(),
        }
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.extend(std::iter::repeat_n(T::zero(), k));
        Poly { coeffs }
    }

    fn add_impl(&self, other: &Self, negate_other: bool) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![T::zero(); n];
        let off_a = n - self.coeffs.len();
        for (i, a) in self.coeffs.iter().enumerate() {
            out[off_a + i] = a.clone();
        }
        let off_b = n - other.coeffs.len();
        for (i, b) in other.coeffs.iter().enumerate() {
            let slot = &mut out[off_b + i];
            *slot = if negate_other {
                slot.clone() - b.clone()
            } else {
                slot.clone() + b.clone()
            };
        }
        Self::from_coeffs(out)
    }

    fn mul_impl(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::from_coeffs(out)
    }

    /// Maps every coefficient through `f`; the result is renormalized.
    pub fn map<U: Coeff>(&self, f: impl Fn(&T) -> U) -> Poly<U> {
        Poly::from_coeffs(self.coeffs.iter().map(f).collect())
    }
}

impl<T: Coeff + Into<BigRational>> Poly<T> {
    /// Exact Horner evaluation at a rational point.
    pub fn evaluate(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .fold(BigRational::zero(), |acc, c| acc * x + c.clone().into())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl<T: Coeff> $tr<&Poly<T>> for &Poly<T> {
            type Output = Poly<T>;
            fn $method(self, rhs: &Poly<T>) -> Poly<T> {
                $body(self, rhs)
            }
        }
        impl<T: Coeff> $tr<Poly<T>> for Poly<T> {
            type Output = Poly<T>;
            fn $method(self, rhs: Poly<T>) -> Poly<T> {
                $body(&self, &rhs)
            }
        }
        impl<T: Coeff> $tr<&Poly<T>> for Poly<T> {
            type Output = Poly<T>;
            fn $method(self, rhs: &Poly<T>) -> Poly<T> {
                $body(&self, rhs)
            }
        }
        impl<T: Coeff> $tr<Poly<T>> for &Poly<T> {
            type Output = Poly<T>;
            fn $method(self, rhs: Poly<T>) -> Poly<T> {
                $body(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a: &Poly<T>, b: &Poly<T>| a.add_impl(b, false));
forward_binop!(Sub, sub, |a: &Poly<T>, b: &Poly<T>| a.add_impl(b, true));
forward_binop!(Mul, mul, |a: &Poly<T>, b: &Poly<T>| a.mul_impl(b));

impl<T: Coeff> Neg for &Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

impl<T: Coeff> Neg for Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        -&self
    }
}

impl<T: Coeff> fmt::Debug for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.coeffs.iter()).finish()
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::parse::format_poly(self, crate::parse::Style::Human))
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::parse::format_rat_poly(self))
    }
}

/// Nonnegative gcd; `gcd(0, 0) = 0`.
pub fn int_gcd(a: &BigInt, b: &BigInt) -> BigInt {
    a.gcd(b)
}

impl IntPoly {
    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// gcd of the coefficients, zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Largest coefficient magnitude, zero for the zero polynomial.
    pub fn height(&self) -> BigInt {
        self.coeffs
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }

    pub fn content_height(&self) -> (BigInt, BigInt) {
        (self.content(), self.height())
    }

    /// Divides every coefficient by `c`, which must divide each of them.
    pub fn exact_div_scalar(&self, c: &BigInt) -> IntPoly {
        Poly {
            coeffs: self
                .coeffs
                .iter()
                .map(|a| {
                    debug_assert!((a % c).is_zero());
                    a / c
                })
                .collect(),
        }
    }

    /// The polynomial divided by its content, with positive leading coefficient.
    pub fn primitive_part(&self) -> IntPoly {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.content();
        if self.leading().is_negative() {
            c = -c;
        }
        self.exact_div_scalar(&c)
    }

    pub fn to_rat(&self) -> RatPoly {
        self.map(|c| BigRational::from_integer(c.clone()))
    }
}

impl RatPoly {
    /// Euclidean division: `self = quot * divisor + rem` with `deg rem < deg divisor`.
    pub fn div_rem(&self, divisor: &RatPoly) -> Result<(RatPoly, RatPoly)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lead = divisor.leading();
        let mut rem = self.coeffs.clone();
        let Some(da) = self.degree() else {
            return Ok((Self::zero(), Self::zero()));
        };
        if da < dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![BigRational::zero(); da - dd + 1];
        for i in 0..=(da - dd) {
            if rem[i].is_zero() {
                continue;
            }
            let factor = &rem[i] / &lead;
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = &rem[i + j] - &factor * d;
            }
            quot[i] = factor;
        }
        let rem = rem.split_off(da - dd + 1);
        Ok((Self::from_coeffs(quot), Self::from_coeffs(rem)))
    }

    /// Scales to leading coefficient 1; the zero polynomial is returned unchanged.
    pub fn monic(&self) -> RatPoly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.leading().recip();
        self.scale(&inv)
    }

    /// lcm of the coefficient denominators (coefficients are always in lowest terms).
    pub fn denominator_lcm(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// Returns the integer polynomial when all coefficients are integral.
    pub fn to_int(&self) -> Option<IntPoly> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect::<Option<Vec<_>>>()
            .map(IntPoly::from_coeffs)
    }
}

/// Monic gcd of `f` and `g` in `Q[x]`; equals 1 exactly when they share no root.
pub fn rat_gcd(f: &IntPoly, g: &IntPoly) -> Result<RatPoly> {
    if f.is_zero() && g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut a = f.to_rat();
    let mut b = g.to_rat();
    while !b.is_zero() {
        let (_, r) = a.div_rem(&b)?;
        a = b;
        b = r.monic();
    }
    Ok(a.monic())
}

/// gcd in `Z[x]`, computed by primitive pseudo-remainder sequences, normalized
/// to a positive leading coefficient.
pub fn int_poly_gcd(f: &IntPoly, g: &IntPoly) -> IntPoly {
    let content = f.content().gcd(&g.content());
    let mut a = f.primitive_part();
    let mut b = g.primitive_part();
    if a.degree() < b.degree() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_zero() {
        let r = pseudo_rem(&a, &b);
        a = b;
        b = r.primitive_part();
    }
    if a.is_zero() {
        return IntPoly::constant(content);
    }
    a.primitive_part().scale(&content)
}

/// Pseudo-remainder `prem(a, b)`: remainder of `L(b)^(deg a - deg b + 1) * a` by `b`.
pub fn pseudo_rem(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let db = b.degree().expect("pseudo_rem by zero polynomial");
    let Some(da) = a.degree() else {
        return IntPoly::zero();
    };
    if da < db {
        return a.clone();
    }
    let lead = b.leading();
    let mut rem = a.coeffs.clone();
    for i in 0..=(da - db) {
        let top = rem[i].clone();
        for c in rem.iter_mut() {
            *c *= &lead;
        }
        if !top.is_zero() {
            for (j, d) in b.coeffs.iter().enumerate() {
                rem[i + j] -= &top * d;
            }
        }
    }
    IntPoly::from_coeffs(rem.split_off(da - db + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn rp(c: &[(i64, i64)]) -> RatPoly {
        RatPoly::from_coeffs(c.iter().map(|&(n, d)| q(n, d)).collect())
    }

    #[test]
    fn degree_and_leading() {
        assert_eq!(p(&[6, 0, 5]).degree_leading(), (Some(2), 6.into()));
        assert_eq!(p(&[7]).degree_leading(), (Some(0), 7.into()));
        assert_eq!(IntPoly::zero().degree_leading(), (None, 0.into()));
        assert_eq!(p(&[0, 0, 3]).degree(), Some(0));
        assert_eq!(rp(&[(1, 2), (0, 1)]).degree_leading(), (Some(1), q(1, 2)));
    }

    #[test]
    fn content_and_height() {
        assert_eq!(p(&[6, -6, -6, -6]).content_height(), (6.into(), 6.into()));
        assert_eq!(p(&[2, 1, -3, 2]).content_height(), (1.into(), 3.into()));
        assert_eq!(IntPoly::zero().content_height(), (0.into(), 0.into()));
        assert_eq!(p(&[-4, 0, 6]).content(), 2.into());
    }

    #[test]
    fn ring_ops() {
        assert_eq!(p(&[1, 1]) * p(&[1, -1]), p(&[1, 0, -1]));
        let diff = p(&[1, 1, 0]) - p(&[1, 0, 0]);
        assert_eq!(diff, p(&[1, 0]));
        assert_eq!(diff.coeffs()[0], 1.into());
        assert_eq!(p(&[2, 1]).scale(&3.into()), p(&[6, 3]));
        assert!((p(&[1, 2]) - p(&[1, 2])).is_zero());
        assert_eq!(p(&[1, 2]).shift(2), p(&[1, 2, 0, 0]));
        assert_eq!(-p(&[1, -2]), p(&[-1, 2]));
    }

    #[test]
    fn rational_division() {
        let (qt, r) = rp(&[(1, 1), (0, 1), (-1, 1)])
            .div_rem(&rp(&[(1, 1), (-1, 1)]))
            .unwrap();
        assert_eq!((qt, r.is_zero()), (rp(&[(1, 1), (1, 1)]), true));

        let (qt, r) = rp(&[(1, 1), (0, 1), (0, 1)])
            .div_rem(&rp(&[(2, 1), (0, 1)]))
            .unwrap();
        assert_eq!(qt, rp(&[(1, 2), (0, 1)]));
        assert!(r.is_zero());

        let (qt, r) = rp(&[(1, 1), (0, 1)]).div_rem(&rp(&[(1, 1), (1, 1)])).unwrap();
        assert_eq!((qt, r), (rp(&[(1, 1)]), rp(&[(-1, 1)])));

        assert!(matches!(
            rp(&[(1, 1)]).div_rem(&RatPoly::zero()),
            Err(Error::DivisionByZero)
        ));
    }

    #[test]
    fn gcd_over_rationals() {
        assert_eq!(
            rat_gcd(&p(&[2, -1, -1, 0]), &p(&[1, -1, 1, 1])).unwrap(),
            RatPoly::one()
        );
        assert_eq!(
            rat_gcd(&p(&[1, 0, -1]), &p(&[1, -1])).unwrap(),
            rp(&[(1, 1), (-1, 1)])
        );
        assert_eq!(
            rat_gcd(&p(&[6, 0, 5]), &p(&[6, -4, 1])).unwrap(),
            RatPoly::one()
        );
        assert!(rat_gcd(&IntPoly::zero(), &IntPoly::zero()).is_err());
        assert_eq!(rat_gcd(&IntPoly::zero(), &p(&[2, 4])).unwrap(), rp(&[(1, 1), (2, 1)]));
    }

    #[test]
    fn evaluation() {
        assert_eq!(p(&[1, 0, 1]).evaluate(&q(2, 1)), q(5, 1));
        assert_eq!(p(&[3, -7, 11]).evaluate(&q(0, 1)), q(11, 1));
        assert_eq!(p(&[6, -4, 1]).evaluate(&q(1, 2)), q(1, 2));
        assert_eq!(IntPoly::zero().evaluate(&q(3, 1)), q(0, 1));
    }

    #[test]
    fn integer_gcd_in_zx() {
        assert_eq!(int_poly_gcd(&p(&[2, 4]), &p(&[4, 2])), p(&[2]));
        assert_eq!(int_poly_gcd(&p(&[2, 0, -2]), &p(&[4, -4])), p(&[2, -2]));
        assert_eq!(int_poly_gcd(&p(&[6, 0, 5]), &p(&[6, -4, 1])), p(&[1]));
    }

    fn arb_poly(max_deg: usize, h: i64) -> impl Strategy<Value = IntPoly> {
        prop::collection::vec(-h..=h, 0..=max_deg + 1).prop_map(|c| IntPoly::from_i64s(&c))
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(5, 30), b in arb_poly(5, 30), c in arb_poly(5, 30)) {
            prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
            prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
            let prod = &a * &b;
            prop_assert!(prod.is_zero() || !prod.leading().is_zero());
            if !a.is_zero() && !b.is_zero() {
                prop_assert_eq!(prod.degree().unwrap(), a.degree().unwrap() + b.degree().unwrap());
            }
        }

        #[test]
        fn gauss_content(a in arb_poly(5, 30), b in arb_poly(5, 30)) {
            prop_assert_eq!((&a * &b).content(), a.content() * b.content());
        }

        #[test]
        fn div_rem_round_trip(a in arb_poly(7, 20), b in arb_poly(4, 20)) {
            prop_assume!(!b.is_zero());
            let (ar, br) = (a.to_rat(), b.to_rat());
            let (qt, r) = ar.div_rem(&br).unwrap();
            prop_assert_eq!(&qt * &br + &r, ar);
            prop_assert!(r.degree() < br.degree());
        }

        #[test]
        fn gcd_divides_both(a in arb_poly(5, 10), b in arb_poly(5, 10), c in arb_poly(2, 5)) {
            let (f, g) = (&a * &c, &b * &c);
            prop_assume!(!f.is_zero() || !g.is_zero());
            let d = rat_gcd(&f, &g).unwrap();
            prop_assert!(d.is_monic());
            for h in [&f, &g] {
                let (_, r) = h.to_rat().div_rem(&d).unwrap();
                prop_assert!(r.is_zero());
            }
            if !c.is_zero() {
                let (_, r) = d.div_rem(&c.to_rat().monic()).unwrap();
                prop_assert!(r.is_zero());
            }
        }
    }
}
