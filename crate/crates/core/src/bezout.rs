//! The rational Bezout pair `p*f + q*g = 1` and its denominator `B(f, g)`.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{IntPoly, RatPoly};
use crate::resultant::ResultantCertificate;

/// Unique `(p, q)` over `Q` with `p*f + q*g = 1`, `deg p < deg g`, `deg q < deg f`.
pub fn bezout_pair(f: &IntPoly, g: &IntPoly) -> Result<(RatPoly, RatPoly)> {
    let m = positive(f)?;
    let n = positive(g)?;

    // Extended Euclid over Q, tracking (u, v) with u*f + v*g = r.
    let (mut r0, mut r1) = (f.to_rat(), g.to_rat());
    let (mut u0, mut u1) = (RatPoly::one(), RatPoly::zero());
    let (mut v0, mut v1) = (RatPoly::zero(), RatPoly::one());
    while !r1.is_zero() {
        let (quot, rem) = r0.div_rem(&r1)?;
        let u2 = &u0 - &quot * &u1;
        let v2 = &v0 - &quot * &v1;
        r0 = std::mem::replace(&mut r1, rem);
        u0 = std::mem::replace(&mut u1, u2);
        v0 = std::mem::replace(&mut v1, v2);
    }
    if r0.degree() != Some(0) {
        return Err(Error::NotCoprime);
    }
    let inv = r0.leading().recip();
    let mut p = u0.scale(&inv);
    let mut q = v0.scale(&inv);

    // Enforce deg p < deg g; deg q < deg f then follows from p*f + q*g = 1.
    let (quot, rem) = p.div_rem(&g.to_rat())?;
    if !quot.is_zero() {
        p = rem;
        q = &q + &quot * &f.to_rat();
    }
    debug_assert!(p.degree().is_none_or(|d| d < n));
    debug_assert!(q.degree().is_none_or(|d| d < m));
    Ok((p, q))
}

fn positive(p: &IntPoly) -> Result<usize> {
    match p.degree() {
        None => Err(Error::ZeroPolynomial),
        Some(0) => Err(Error::ConstantInput),
        Some(d) => Ok(d),
    }
}

/// `(p, q, B, Bp, Bq)` with `Bp*f + Bq*g = B` over `Z` and `B` minimal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BezoutCertificate {
    pub p: RatPoly,
    pub q: RatPoly,
    pub b: BigInt,
    pub bp: IntPoly,
    pub bq: IntPoly,
}

impl BezoutCertificate {
    pub fn verify(&self, f: &IntPoly, g: &IntPoly) -> std::result::Result<(), String> {
        if &self.p * &f.to_rat() + &self.q * &g.to_rat() != RatPoly::one() {
            return Err("p*f + q*g != 1".into());
        }
        if self.p.degree() >= g.degree() || self.q.degree() >= f.degree() {
            return Err("Bezout pair degree bound violated".into());
        }
        let scale = BigRational::from_integer(self.b.clone());
        if self.bp.to_rat() != self.p.scale(&scale) || self.bq.to_rat() != self.q.scale(&scale) {
            return Err("Bp, Bq are not B*p, B*q".into());
        }
        if &self.bp * f + &self.bq * g != IntPoly::constant(self.b.clone()) {
            return Err("Bp*f + Bq*g != B".into());
        }
        if !self.bp.content().gcd(&self.bq.content()).is_one() {
            return Err("gcd(cont(Bp), cont(Bq)) != 1".into());
        }
        Ok(())
    }
}

pub fn bezout_certificate(f: &IntPoly, g: &IntPoly) -> Result<BezoutCertificate> {
    let (p, q) = bezout_pair(f, g)?;
    let b = p.denominator_lcm().lcm(&q.denominator_lcm());
    let scale = BigRational::from_integer(b.clone());
    let bp = p.scale(&scale).to_int().expect("lcm clears denominators");
    let bq = q.scale(&scale).to_int().expect("lcm clears denominators");
    Ok(BezoutCertificate { p, q, b, bp, bq })
}

/// `B = R / gcd(cont(pbar), cont(qbar))`: the Bezout pair is `(pbar/R, qbar/R)`.
pub fn bezout_from_resultant(cert: &ResultantCertificate) -> BigInt {
    let g = cert.pbar.content().gcd(&cert.qbar.content());
    &cert.resultant / g
}

/// A relation `p_k*f + q_k*g = value` with `deg p_k < deg g`, obtained from an
/// input relation with constant `c` after `k` leading-term cancellation steps,
/// so that `value = d^k * c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedRelation {
    pub p: IntPoly,
    pub q: IntPoly,
    pub k: u32,
    pub value: BigInt,
}

/// Lowers the degree of `p` below `deg g` in `p*f + q*g = c`.
///
/// Each step multiplies the relation by `d = gcd(L(f), L(g))` and cancels the
/// leading terms with `h = d*L(p)/L(g) x^(deg p - deg g)` and
/// `t = d*L(q)/L(f) x^(deg q - deg f)`, where `h + t = 0`.
pub fn reduce_relation(
    p: &IntPoly,
    q: &IntPoly,
    f: &IntPoly,
    g: &IntPoly,
    c: &BigInt,
) -> Result<ReducedRelation> {
    let m = positive(f)?;
    let n = positive(g)?;
    if c.is_zero() {
        return Err(Error::InvalidRelation("constant must be nonzero".into()));
    }
    if p * f + q * g != IntPoly::constant(c.clone()) {
        return Err(Error::InvalidRelation(format!("p*f + q*g != {c}")));
    }
    let d = f.leading().gcd(&g.leading());
    let (lf, lg) = (f.leading(), g.leading());
    let (mut p, mut q, mut value, mut k) = (p.clone(), q.clone(), c.clone(), 0u32);
    while let Some(dp) = p.degree().filter(|&dp| dp >= n) {
        let dq = q.degree().expect("q nonzero while deg p >= deg g");
        debug_assert_eq!(dp + m, dq + n);
        let h = IntPoly::monomial(&d * p.leading() / &lg, dp - n);
        let t = IntPoly::monomial(&d * q.leading() / &lf, dq - m);
        debug_assert!((&h + &t).is_zero());
        p = p.scale(&d) - g * &h;
        q = q.scale(&d) - f * &t;
        value *= &d;
        k += 1;
    }
    Ok(ReducedRelation { p, q, k, value })
}
