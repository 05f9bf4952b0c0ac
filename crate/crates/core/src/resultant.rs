//! Resultants of integer polynomials.
//!
//! `Res(f, g)` is computed two independent ways: the determinant of the
//! Sylvester matrix by Bareiss elimination, and the subresultant polynomial
//! remainder sequence. The cofactor certificate `pbar*f + qbar*g = |Res(f, g)|`
//! is read off the last-column cofactors of the Sylvester matrix after its first
//! column has been divided by `d = gcd(L(f), L(g))`.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Pow, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::poly::{pseudo_rem, IntPoly};

/// `(m+n) x (m+n)` Sylvester matrix: `n` shifted copies of `f` above `m`
/// shifted copies of `g`.
pub fn sylvester_matrix(f: &IntPoly, g: &IntPoly) -> Result<IntMatrix> {
    let m = positive_degree(f)?;
    let n = positive_degree(g)?;
    let size = m + n;
    let mut mat = IntMatrix::zeros(size, size);
    for i in 0..n {
        for (j, c) in f.coeffs().iter().enumerate() {
            mat.set(i, i + j, c.clone());
        }
    }
    for i in 0..m {
        for (j, c) in g.coeffs().iter().enumerate() {
            mat.set(n + i, i + j, c.clone());
        }
    }
    Ok(mat)
}

fn positive_degree(p: &IntPoly) -> Result<usize> {
    match p.degree() {
        None => Err(Error::ZeroPolynomial),
        Some(0) => Err(Error::ConstantInput),
        Some(d) => Ok(d),
    }
}

/// Handles the cases where one argument is a nonzero constant:
/// `Res(c, h) = Res(h, c) = c^deg(h)`.
fn constant_case(f: &IntPoly, g: &IntPoly) -> Result<Option<BigInt>> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (df, dg) = (f.degree().unwrap(), g.degree().unwrap());
    Ok(match (df, dg) {
        (0, 0) => return Err(Error::BothConstant),
        (0, _) => Some(Pow::pow(&f.leading(), dg)),
        (_, 0) => Some(Pow::pow(&g.leading(), df)),
        _ => None,
    })
}

/// Signed `Res(f, g)` as the Sylvester determinant.
pub fn resultant_bareiss(f: &IntPoly, g: &IntPoly) -> Result<BigInt> {
    if let Some(r) = constant_case(f, g)? {
        return Ok(r);
    }
    Ok(sylvester_matrix(f, g)?.determinant())
}

/// Signed `Res(f, g)` by the subresultant PRS.
pub fn resultant_prs(f: &IntPoly, g: &IntPoly) -> Result<BigInt> {
    if let Some(r) = constant_case(f, g)? {
        return Ok(r);
    }
    let (ca, cb) = (f.content(), g.content());
    let mut a = f.exact_div_scalar(&ca);
    let mut b = g.exact_div_scalar(&cb);
    let (mut da, mut db) = (a.degree().unwrap(), b.degree().unwrap());
    let t: BigInt = Pow::pow(&ca, db) * Pow::pow(&cb, da);
    let mut negate = false;
    if da < db {
        std::mem::swap(&mut a, &mut b);
        std::mem::swap(&mut da, &mut db);
        negate = da % 2 == 1 && db % 2 == 1;
    }
    let mut lead = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            negate = !negate;
        }
        let r = pseudo_rem(&a, &b);
        let divisor = &lead * Pow::pow(&h, delta);
        a = b;
        b = r.exact_div_scalar(&divisor);
        lead = a.leading();
        h = if delta == 0 {
            h
        } else {
            Pow::pow(&lead, delta) / Pow::pow(&h, delta - 1)
        };
        da = a.degree().unwrap();
        match b.degree() {
            None => return Ok(BigInt::zero()),
            Some(0) => {
                let last: BigInt = Pow::pow(&b.leading(), da) / Pow::pow(&h, da - 1);
                let res = t * last;
                return Ok(if negate { -res } else { res });
            }
            Some(d) => db = d,
        }
    }
}

/// Integer cofactors with `pbar*f + qbar*g = R = |Res(f, g)|`,
/// `deg pbar < deg g`, `deg qbar < deg f`, and `d` dividing both contents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResultantCertificate {
    pub pbar: IntPoly,
    pub qbar: IntPoly,
    pub resultant: BigInt,
    pub res_sign: i8,
    pub d: BigInt,
}

impl ResultantCertificate {
    /// The signed resultant.
    pub fn signed(&self) -> BigInt {
        &self.resultant * BigInt::from(self.res_sign)
    }

    /// Checks every certificate invariant against `(f, g)`.
    pub fn verify(&self, f: &IntPoly, g: &IntPoly) -> std::result::Result<(), String> {
        let lhs = &self.pbar * f + &self.qbar * g;
        if lhs != IntPoly::constant(self.resultant.clone()) {
            return Err(format!("pbar*f + qbar*g = {lhs}, expected {}", self.resultant));
        }
        if self.pbar.degree() >= g.degree() || self.qbar.degree() >= f.degree() {
            return Err("cofactor degree bound violated".into());
        }
        let d = f.leading().gcd(&g.leading());
        if d != self.d {
            return Err(format!("d = {} but gcd of leading coefficients is {d}", self.d));
        }
        for (name, c) in [("pbar", &self.pbar), ("qbar", &self.qbar), ("R", &IntPoly::constant(self.resultant.clone()))] {
            if !c.content().is_multiple_of(&self.d) {
                return Err(format!("d = {} does not divide cont({name})", self.d));
            }
        }
        if !self.resultant.is_positive() || (self.res_sign != 1 && self.res_sign != -1) {
            return Err("resultant must be positive with sign +-1".into());
        }
        Ok(())
    }
}

/// Builds the cofactor certificate for a coprime pair of positive degree.
pub fn resultant_certificate(f: &IntPoly, g: &IntPoly) -> Result<ResultantCertificate> {
    let mut syl = sylvester_matrix(f, g)?;
    let (m, n) = (f.degree().unwrap(), g.degree().unwrap());
    let size = m + n;
    let res = syl.determinant();
    if res.is_zero() {
        return Err(Error::NotCoprime);
    }
    let d = f.leading().gcd(&g.leading());
    // The first column holds only L(f) (row 0) and L(g) (row n).
    syl.set(0, 0, f.leading() / &d);
    syl.set(n, 0, g.leading() / &d);

    let last = size - 1;
    let cofactor = |i: usize| -> BigInt {
        let minor = syl.minor(i, last).determinant();
        if (i + last) % 2 == 1 {
            -minor
        } else {
            minor
        }
    };
    let sign = if res.is_negative() { -BigInt::one() } else { BigInt::one() };
    let scale = &d * &sign;
    let pbar = IntPoly::from_coeffs((0..n).map(|i| cofactor(i) * &scale).collect());
    let qbar = IntPoly::from_coeffs((n..size).map(|i| cofactor(i) * &scale).collect());
    Ok(ResultantCertificate {
        pbar,
        qbar,
        res_sign: if res.is_negative() { -1 } else { 1 },
        resultant: res.abs(),
        d,
    })
}

/// Outcome of one resultant identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "status", content = "reason")]
pub enum IdentityStatus {
    Holds,
    Fails,
    NotApplicable(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    /// `Res(f, g) = (-1)^(deg f * deg g) Res(g, f)`
    pub swap: IdentityStatus,
    /// `Res(h, f*g) = Res(h, f) Res(h, g)`
    pub multiplicative: IdentityStatus,
    /// `Res(c, h) = Res(h, c) = c^deg(h)`
    pub constant: IdentityStatus,
    /// `Res(f, s*f + g) = L(f)^(deg(s*f + g) - deg g) Res(f, g)`
    pub reduction: IdentityStatus,
}

impl IdentityReport {
    pub fn all_hold_or_skipped(&self) -> bool {
        [&self.swap, &self.multiplicative, &self.constant, &self.reduction]
            .iter()
            .all(|s| !matches!(s, IdentityStatus::Fails))
    }
}

fn status(holds: bool) -> IdentityStatus {
    if holds {
        IdentityStatus::Holds
    } else {
        IdentityStatus::Fails
    }
}

fn not_applicable(why: &str) -> IdentityStatus {
    IdentityStatus::NotApplicable(why.to_string())
}

/// Evaluates the classical resultant identities with [`resultant_bareiss`].
///
/// `h` is the fixed first argument of the multiplicative identity, `c` the
/// constant of the power identity, and `s` the multiplier in the reduction
/// identity where `f` plays `h1` and `g` plays `t`.
pub fn check_resultant_identities(
    f: &IntPoly,
    g: &IntPoly,
    h: &IntPoly,
    c: &BigInt,
    s: &IntPoly,
) -> IdentityReport {
    let positive = |p: &IntPoly| p.degree().is_some_and(|d| d > 0);

    let swap = if positive(f) && positive(g) {
        match (resultant_bareiss(f, g), resultant_bareiss(g, f)) {
            (Ok(a), Ok(b)) => {
                let odd = f.degree().unwrap() * g.degree().unwrap() % 2 == 1;
                status(a == if odd { -b } else { b })
            }
            _ => IdentityStatus::Fails,
        }
    } else {
        not_applicable("needs deg f, deg g > 0")
    };

    let multiplicative = if positive(h) && positive(f) && positive(g) {
        match (
            resultant_bareiss(h, &(f * g)),
            resultant_bareiss(h, f),
            resultant_bareiss(h, g),
        ) {
            (Ok(whole), Ok(a), Ok(b)) => status(whole == a * b),
            _ => IdentityStatus::Fails,
        }
    } else {
        not_applicable("needs deg h, deg f, deg g > 0")
    };

    let constant = if !c.is_zero() && positive(h) {
        let cp = IntPoly::constant(c.clone());
        let expected: BigInt = Pow::pow(c, h.degree().unwrap());
        match (resultant_bareiss(&cp, h), resultant_bareiss(h, &cp)) {
            (Ok(a), Ok(b)) => status(a == expected && b == expected),
            _ => IdentityStatus::Fails,
        }
    } else {
        not_applicable("needs c != 0 and deg h > 0")
    };

    let h2 = s * f + g;
    let reduction = if !positive(f) || g.is_zero() || h2.is_zero() {
        not_applicable("needs deg f > 0, t != 0 and s*f + t != 0")
    } else {
        match (resultant_bareiss(f, &h2), resultant_bareiss(f, g)) {
            (Ok(lhs), Ok(rhs)) => {
                let (d2, dt) = (h2.degree().unwrap(), g.degree().unwrap());
                let lf = f.leading();
                // Keep both sides integral when deg(s*f + t) < deg t.
                status(if d2 >= dt {
                    lhs == Pow::pow(&lf, d2 - dt) * rhs
                } else {
                    Pow::pow(&lf, dt - d2) * lhs == rhs
                })
            }
            (Err(Error::BothConstant), _) | (_, Err(Error::BothConstant)) => {
                not_applicable("both arguments constant")
            }
            _ => IdentityStatus::Fails,
        }
    };

    IdentityReport {
        swap,
        multiplicative,
        constant,
        reduction,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn sylvester_layout() {
        assert_eq!(
            sylvester_matrix(&p(&[1, 0]), &p(&[1, 1])).unwrap(),
            IntMatrix::from_i64_rows(&[&[1, 0], &[1, 1]])
        );
        let s = sylvester_matrix(&p(&[6, 0, 5]), &p(&[6, -4, 1])).unwrap();
        assert_eq!(
            s,
            IntMatrix::from_i64_rows(&[&[6, 0, 5, 0], &[0, 6, 0, 5], &[6, -4, 1, 0], &[0, 6, -4, 1]])
        );
        assert_eq!(s.determinant(), 1056.into());
        assert!(matches!(sylvester_matrix(&p(&[3]), &p(&[1, 1])), Err(Error::ConstantInput)));
        assert!(matches!(sylvester_matrix(&IntPoly::zero(), &p(&[1, 1])), Err(Error::ZeroPolynomial)));
    }

    #[test]
    fn bareiss_values() {
        let r = resultant_bareiss(&p(&[6, -6, -6, -6]), &p(&[6, -6, -6, 5])).unwrap();
        assert_eq!(r.abs(), 287496.into());
        assert_eq!(resultant_bareiss(&p(&[3]), &p(&[1, 0, 1])).unwrap(), 9.into());
        assert_eq!(resultant_bareiss(&p(&[1, 0, 1]), &p(&[3])).unwrap(), 9.into());
        let r = resultant_bareiss(&p(&[2, 1, -1, -1]), &p(&[1, -1, 1, 1])).unwrap();
        assert_eq!(r.abs(), 27.into());
        assert!(matches!(resultant_bareiss(&p(&[2]), &p(&[3])), Err(Error::BothConstant)));
        assert!(matches!(resultant_bareiss(&IntPoly::zero(), &p(&[1, 0])), Err(Error::ZeroPolynomial)));
    }

    #[test]
    fn prs_values() {
        assert_eq!(resultant_prs(&p(&[1, 0]), &p(&[1, 1])).unwrap(), 1.into());
        let r = resultant_prs(&p(&[2, 3, 0, -2]), &p(&[3, -3])).unwrap();
        assert_eq!(r.abs(), 81.into());
        assert_eq!(r, resultant_bareiss(&p(&[2, 3, 0, -2]), &p(&[3, -3])).unwrap());
        assert_eq!(resultant_prs(&p(&[1, 0, -1]), &p(&[1, -1])).unwrap(), 0.into());
        assert_eq!(resultant_prs(&p(&[-2]), &p(&[1, 0, 0, 1])).unwrap(), (-8).into());
    }

    #[test]
    fn certificates() {
        let (f, g) = (p(&[6, 0, 5]), p(&[6, -4, 1]));
        let cert = resultant_certificate(&f, &g).unwrap();
        assert_eq!(cert.resultant, 1056.into());
        assert_eq!(cert.d, 6.into());
        cert.verify(&f, &g).unwrap();

        let cert = resultant_certificate(&p(&[1, 0]), &p(&[1, 1])).unwrap();
        assert_eq!((cert.pbar, cert.qbar, cert.resultant), (p(&[-1]), p(&[1]), 1.into()));

        let cert = resultant_certificate(&p(&[2, 0]), &p(&[2, 1])).unwrap();
        assert_eq!(
            (cert.pbar, cert.qbar, cert.resultant, cert.d),
            (p(&[-2]), p(&[2]), 2.into(), 2.into())
        );

        assert!(matches!(
            resultant_certificate(&p(&[1, 0, -1]), &p(&[1, -1])),
            Err(Error::NotCoprime)
        ));
    }

    #[test]
    fn negative_resultant_sign_is_recorded() {
        // Res(x + 1, x) = -1
        let cert = resultant_certificate(&p(&[1, 1]), &p(&[1, 0])).unwrap();
        assert_eq!(cert.res_sign, -1);
        assert_eq!(cert.signed(), resultant_bareiss(&p(&[1, 1]), &p(&[1, 0])).unwrap());
        cert.verify(&p(&[1, 1]), &p(&[1, 0])).unwrap();
    }

    #[test]
    fn identities() {
        let rep = check_resultant_identities(&p(&[1, 0]), &p(&[1, 1]), &p(&[1, 0, 0, 2]), &2.into(), &p(&[1]));
        assert_eq!(rep.swap, IdentityStatus::Holds);
        assert_eq!(rep.multiplicative, IdentityStatus::Holds);
        assert_eq!(rep.constant, IdentityStatus::Holds);
        assert_eq!(rep.reduction, IdentityStatus::Holds);
        assert_eq!(resultant_bareiss(&p(&[1, 0]), &p(&[1, 1])).unwrap(), 1.into());
        assert_eq!(resultant_bareiss(&p(&[1, 1]), &p(&[1, 0])).unwrap(), (-1).into());
        assert_eq!(resultant_bareiss(&p(&[2]), &p(&[1, 5, 0, 3])).unwrap(), 8.into());

        // h1 = x^2 + 1, s = x, t = 1
        let rep = check_resultant_identities(&p(&[1, 0, 1]), &p(&[1]), &p(&[1, 1]), &2.into(), &p(&[1, 0]));
        assert_eq!(rep.reduction, IdentityStatus::Holds);
        assert!(matches!(rep.swap, IdentityStatus::NotApplicable(_)));
        assert_eq!(resultant_bareiss(&p(&[1, 0, 1]), &p(&[1, 0, 1, 1])).unwrap(), 1.into());

        let rep = check_resultant_identities(&p(&[1, 1]), &p(&[1, 0]), &p(&[1, 2]), &0.into(), &IntPoly::zero());
        assert!(matches!(rep.constant, IdentityStatus::NotApplicable(_)));
        assert!(rep.all_hold_or_skipped());
    }
}
