//! The triple `(B, r, R)` of a coprime pair and executable checks of the
//! divisibility relations among them.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Pow, Signed, Zero};
use serde::Serialize;

use crate::bezout::{bezout_certificate, reduce_relation, BezoutCertificate};
use crate::error::{Error, Result};
use crate::poly::{int_poly_gcd, rat_gcd, IntPoly, RatPoly};
use crate::reduced::{reduced_resultant, ReducedResultantCertificate};
use crate::resultant::{resultant_bareiss, resultant_certificate, ResultantCertificate};

#[derive(Clone, Debug)]
pub struct TripleReport {
    pub f: IntPoly,
    pub g: IntPoly,
    pub m: usize,
    pub n: usize,
    pub d: BigInt,
    pub b: BigInt,
    pub r: BigInt,
    pub big_r: BigInt,
    pub bezout: BezoutCertificate,
    pub res_cert: ResultantCertificate,
    pub red_cert: ReducedResultantCertificate,
    /// Least `k` with `B | d^k r`; `None` only if no `k` up to the proof's
    /// bound works, which the `B_divides_dk_r` check reports.
    pub k_min: Option<u32>,
    /// `deg(p*f)` for the relation `p*f + q*g = r` held in `red_cert`.
    pub j: usize,
}

impl TripleReport {
    /// `max(deg p - deg g + 1, 0)` for the `p` of `red_cert`.
    pub fn k_bound(&self) -> u32 {
        let dp = self.red_cert.p.degree().unwrap_or(0);
        (dp + 1).saturating_sub(self.n) as u32
    }
}

pub fn triple_report(f: &IntPoly, g: &IntPoly) -> Result<TripleReport> {
    let (m, n) = match (f.degree(), g.degree()) {
        (None, _) | (_, None) => return Err(Error::ZeroPolynomial),
        (Some(0), _) | (_, Some(0)) => return Err(Error::ConstantInput),
        (Some(m), Some(n)) => (m, n),
    };
    if rat_gcd(f, g)? != RatPoly::one() {
        return Err(Error::NotCoprime);
    }
    let res_cert = resultant_certificate(f, g)?;
    let bezout = bezout_certificate(f, g)?;
    let red_cert = reduced_resultant(f, g)?;
    let d = f.leading().gcd(&g.leading());
    let mut rep = TripleReport {
        f: f.clone(),
        g: g.clone(),
        m,
        n,
        b: bezout.b.clone(),
        r: red_cert.r.clone(),
        big_r: res_cert.resultant.clone(),
        j: red_cert.j,
        d,
        bezout,
        res_cert,
        red_cert,
        k_min: None,
    };
    rep.k_min = min_exponent(&rep.b, &rep.d, &rep.r, rep.k_bound());
    Ok(rep)
}

/// Least `k <= limit` with `b | d^k * r`.
pub fn min_exponent(b: &BigInt, d: &BigInt, r: &BigInt, limit: u32) -> Option<u32> {
    let mut value = r.clone();
    for k in 0..=limit {
        if value.is_multiple_of(b) {
            return Some(k);
        }
        value *= d;
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub holds: bool,
    pub detail: String,
}

impl CheckOutcome {
    fn new(name: &str, holds: bool, detail: impl Into<String>) -> Self {
        CheckOutcome {
            name: name.to_string(),
            holds,
            detail: detail.into(),
        }
    }
}

fn divides(a: &BigInt, b: &BigInt) -> bool {
    if a.is_zero() {
        b.is_zero()
    } else {
        b.is_multiple_of(a)
    }
}

fn div_check(name: &str, a: &BigInt, b: &BigInt, what: &str) -> CheckOutcome {
    let holds = divides(a, b);
    CheckOutcome::new(name, holds, format!("{what}: {a} {} {b}", if holds { "|" } else { "does not divide" }))
}

fn pow(base: &BigInt, e: usize) -> BigInt {
    Pow::pow(base, e)
}

/// Every divisibility relation among `B`, `r`, `R`, `d` plus the certificate
/// invariants and the identity `L(f)^j r^m = Res(f, g) Res(f, q)`.
pub fn verify_divisibility(rep: &TripleReport) -> Vec<CheckOutcome> {
    let (f, g) = (&rep.f, &rep.g);
    let (b, r, big_r, d) = (&rep.b, &rep.r, &rep.big_r, &rep.d);
    let (m, n) = (rep.m, rep.n);
    let mut out = Vec::new();

    out.push(div_check("r_divides_B", r, b, "r | B"));
    out.push(div_check("r_divides_R", r, big_r, "r | R"));
    out.push(div_check("d_divides_R", d, big_r, "d | R"));

    let certs = [
        ("resultant_certificate", rep.res_cert.verify(f, g)),
        ("bezout_certificate", rep.bezout.verify(f, g)),
        ("reduced_certificate", rep.red_cert.verify(f, g)),
    ];
    for (name, result) in certs {
        let detail = match &result {
            Ok(()) => "all invariants hold".to_string(),
            Err(e) => e.clone(),
        };
        out.push(CheckOutcome::new(name, result.is_ok(), detail));
    }

    let bound = rep.k_bound();
    out.push(match rep.k_min {
        Some(k) => CheckOutcome::new(
            "B_divides_dk_r",
            k <= bound && divides(b, &(pow(d, k as usize) * r)),
            format!("B = {b} | d^{k} r = {}^{k} * {r}, k_min = {k} <= {bound}", d),
        ),
        None => CheckOutcome::new(
            "B_divides_dk_r",
            false,
            format!("no k <= {bound} with {b} | {d}^k * {r}"),
        ),
    });
    out.push(match rep.k_min {
        Some(k) => {
            let minimal = k == 0 || !divides(b, &(pow(d, k as usize - 1) * r));
            CheckOutcome::new("k_min_minimal", minimal, format!("k_min = {k}"))
        }
        None => CheckOutcome::new("k_min_minimal", false, "k_min undefined"),
    });
    // The reduction procedure itself, run on the Gröbner relation.
    out.push(
        match reduce_relation(&rep.red_cert.p, &rep.red_cert.q, f, g, r) {
            Ok(rel) => {
                let expected = pow(d, rel.k as usize) * r;
                let ok = rel.k <= bound
                    && rel.value == expected
                    && rel.p.degree() < g.degree()
                    && rel.q.degree() < f.degree()
                    && &rel.p * f + &rel.q * g == IntPoly::constant(rel.value.clone())
                    && divides(b, &rel.value);
                CheckOutcome::new(
                    "reduce_relation",
                    ok,
                    format!("k = {} steps, value = {}, B | value", rel.k, rel.value),
                )
            }
            Err(e) => CheckOutcome::new("reduce_relation", false, e.to_string()),
        },
    );

    let j = rep.j;
    let mx = m.max(n);
    let mn = m.min(n);
    out.push(div_check(
        "R_divides_dj_r_max",
        big_r,
        &(pow(d, j) * pow(r, mx)),
        &format!("R | d^j r^max(m,n) with j = {j}"),
    ));

    let q = &rep.red_cert.q;
    let p = &rep.red_cert.p;
    out.push(relation_identity("lead_power_identity_f", f, g, q, r, j, m));
    out.push(relation_identity("lead_power_identity_g", g, f, p, r, j, n));

    let monic = f.is_monic() && g.is_monic();
    if monic {
        out.push(div_check("monic_R_divides_r_min", big_r, &pow(r, mn), "R | r^min(m,n)"));
        out.push(div_check("monic_R_divides_B_min", big_r, &pow(b, mn), "R | B^min(m,n)"));
    }
    if f.is_monic() {
        out.push(div_check("monic_f_R_divides_r_m", big_r, &pow(r, m), "f monic: R | r^m"));
    }

    out.push(div_check("dB_divides_R", &(d * b), big_r, "dB | R"));
    out.push(div_check(
        "R_divides_d_B_max",
        big_r,
        &(pow(d, m + n - 1) * pow(b, mx)),
        "R | d^(m+n-1) B^max(m,n)",
    ));

    let chain = BigInt::one() <= *r && r <= b && b <= big_r;
    out.push(CheckOutcome::new(
        "ordering_chain",
        chain,
        format!("1 <= r = {r} <= B = {b} <= R = {big_r}"),
    ));
    out
}

/// `L(a)^j r^deg(a) = Res(a, b) Res(a, c)` where `c` is the cofactor of `b`.
fn relation_identity(
    name: &str,
    a: &IntPoly,
    b: &IntPoly,
    c: &IntPoly,
    r: &BigInt,
    j: usize,
    deg_a: usize,
) -> CheckOutcome {
    if (c * b).degree() != Some(j) {
        return CheckOutcome::new(name, true, "skipped: deg(pf) != deg(qg)");
    }
    let lhs = pow(&a.leading(), j) * pow(r, deg_a);
    match (resultant_bareiss(a, b), resultant_bareiss(a, c)) {
        (Ok(x), Ok(y)) => {
            let rhs = &x * &y;
            CheckOutcome::new(name, lhs == rhs, format!("{lhs} = {x} * {y}"))
        }
        (Err(e), _) | (_, Err(e)) => CheckOutcome::new(name, false, e.to_string()),
    }
}

/// Conditional corollaries, prime-support equalities, and the `Z[x]` gcd remark.
pub fn verify_corollaries(rep: &TripleReport) -> Vec<CheckOutcome> {
    let (b, r, big_r, d) = (&rep.b, &rep.r, &rep.big_r, &rep.d);
    let d_is_one = d.is_one();
    let mut out = Vec::new();

    if d_is_one {
        out.push(CheckOutcome::new("d1_B_eq_r", b == r, format!("d = 1: B = {b}, r = {r}")));
    }
    if !d_is_one {
        out.push(CheckOutcome::new(
            "d_gt_1_B_r_ne_R",
            b != big_r && r != big_r,
            format!("d = {d}: B = {b} != R = {big_r}, r = {r} != R"),
        ));
    }
    out.push(CheckOutcome::new(
        "B_eq_R_iff_r_eq_R",
        (b == big_r) == (r == big_r),
        format!("B == R is {}, r == R is {}", b == big_r, r == big_r),
    ));
    let same = |name: &str, x: &BigInt, y: &BigInt, what: &str| {
        let holds = radical_equal(x, y).unwrap_or(false);
        CheckOutcome::new(name, holds, format!("{what}: rad({x}) {} rad({y})", if holds { "=" } else { "!=" }))
    };
    out.push(same("R_dr_same_primes", big_r, &(d * r), "R ~ dr"));
    out.push(same("R_dB_same_primes", big_r, &(d * b), "R ~ dB"));
    if d_is_one {
        let holds = radical_equal(b, r).unwrap_or(false) && radical_equal(r, big_r).unwrap_or(false);
        out.push(CheckOutcome::new(
            "d1_B_r_R_same_primes",
            holds,
            format!("d = 1: B = {b}, r = {r}, R = {big_r} share prime factors"),
        ));
    }

    let zx_gcd = int_poly_gcd(&rep.f, &rep.g);
    let contents = rep.f.content().gcd(&rep.g.content());
    let holds = zx_gcd == IntPoly::constant(contents.clone()) && divides(&contents, r);
    out.push(CheckOutcome::new(
        "gcd_is_content_gcd",
        holds,
        format!("gcd(f, g) in Z[x] = {zx_gcd}, gcd(cont f, cont g) = {contents}, divides r"),
    ));
    out
}

/// Whether `a` and `b` have the same prime divisors, without factoring.
pub fn radical_equal(a: &BigInt, b: &BigInt) -> Result<bool> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroArgument);
    }
    let (a, b) = (a.abs(), b.abs());
    Ok(support_subset(&a, &b) && support_subset(&b, &a))
}

/// Every prime dividing `a` divides `b`: strip from `a` all factors it shares
/// with `b`; the support is contained iff nothing is left.
fn support_subset(a: &BigInt, b: &BigInt) -> bool {
    let mut a = a.clone();
    loop {
        let g = a.gcd(b);
        if g.is_one() {
            return a.is_one();
        }
        while a.is_multiple_of(&g) {
            a /= &g;
        }
    }
}

/// For `f = a x + b`, `g = c x + e`: `R = |a e - b c|` and `B = R / gcd(a, c)`.
pub fn degree_one_closed_form(f: &IntPoly, g: &IntPoly) -> Result<(BigInt, BigInt)> {
    if f.degree() != Some(1) || g.degree() != Some(1) {
        return Err(Error::Degree("both polynomials must be linear".into()));
    }
    let (a, b) = (f.coeff(1), f.coeff(0));
    let (c, e) = (g.coeff(1), g.coeff(0));
    let big_r = (&a * &e - &b * &c).abs();
    if big_r.is_zero() {
        return Err(Error::NotCoprime);
    }
    Ok((&big_r / a.gcd(&c), big_r))
}
