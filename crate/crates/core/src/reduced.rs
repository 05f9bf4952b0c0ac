//! The reduced resultant `r(f, g)`: the positive generator of `(f, g) ∩ Z`.
//!
//! The primary route is a strong Gröbner basis of the ideal `(f, g)` in `Z[x]`
//! built with S- and G-polynomials, where every basis element carries the
//! cofactors that express it in terms of `f` and `g`. An independent oracle
//! reads `r` off the Hermite normal form of the lattice spanned by shifted
//! copies of `f` and `g`.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::poly::IntPoly;

/// An ideal element together with cofactors: `u*f + v*g = value`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrackedPoly {
    pub value: IntPoly,
    pub u: IntPoly,
    pub v: IntPoly,
}

impl TrackedPoly {
    fn scale(&self, c: &BigInt) -> Self {
        TrackedPoly {
            value: self.value.scale(c),
            u: self.u.scale(c),
            v: self.v.scale(c),
        }
    }

    /// `c * x^k * self`
    fn term_mul(&self, c: &BigInt, k: usize) -> Self {
        let s = self.scale(c);
        TrackedPoly {
            value: s.value.shift(k),
            u: s.u.shift(k),
            v: s.v.shift(k),
        }
    }

    fn sub(&self, other: &Self) -> Self {
        TrackedPoly {
            value: &self.value - &other.value,
            u: &self.u - &other.u,
            v: &self.v - &other.v,
        }
    }

    fn add(&self, other: &Self) -> Self {
        TrackedPoly {
            value: &self.value + &other.value,
            u: &self.u + &other.u,
            v: &self.v + &other.v,
        }
    }

    fn normalize_sign(self) -> Self {
        if self.value.leading().is_negative() {
            self.scale(&-BigInt::one())
        } else {
            self
        }
    }

    pub fn holds(&self, f: &IntPoly, g: &IntPoly) -> bool {
        &self.u * f + &self.v * g == self.value
    }

    fn degree(&self) -> usize {
        self.value.degree().expect("basis elements are nonzero")
    }
}

/// Leading term `c x^k` of `a` is divisible by that of `b`.
fn term_divides(b: &IntPoly, a: &IntPoly) -> bool {
    match (b.degree(), a.degree()) {
        (Some(db), Some(da)) => db <= da && a.leading().is_multiple_of(&b.leading()),
        _ => false,
    }
}

/// A strong Gröbner basis of `(f, g)` in `Z[x]`, sorted by degree and then by
/// leading-coefficient magnitude, every leading coefficient positive.
#[derive(Clone, Debug)]
pub struct GroebnerBasisZ {
    pub elements: Vec<TrackedPoly>,
}

impl GroebnerBasisZ {
    /// The positive constant element, if the ideal meets `Z` nontrivially.
    pub fn constant(&self) -> Option<&TrackedPoly> {
        self.elements.first().filter(|e| e.value.degree() == Some(0))
    }

    /// Reduces `p` against the basis using only exact leading-term divisions.
    /// Every ideal member reduces to zero.
    pub fn reduce(&self, p: &IntPoly) -> IntPoly {
        let values: Vec<&IntPoly> = self.elements.iter().map(|e| &e.value).collect();
        reduce_values(p, &values)
    }

    pub fn contains(&self, p: &IntPoly) -> bool {
        self.reduce(p).is_zero()
    }
}

/// Full reduction of a plain polynomial: every term that some basis leading
/// term divides is cancelled, top-down.
fn reduce_values(p: &IntPoly, basis: &[&IntPoly]) -> IntPoly {
    let mut p = p.clone();
    let mut rest = IntPoly::zero();
    while let Some(dp) = p.degree() {
        let lc = p.leading();
        let divisor = basis.iter().find(|b| {
            b.degree().is_some_and(|db| db <= dp) && lc.is_multiple_of(&b.leading())
        });
        match divisor {
            Some(b) => {
                let q = &lc / b.leading();
                p = &p - &b.shift(dp - b.degree().unwrap()).scale(&q);
            }
            None => {
                let lead = IntPoly::monomial(lc, dp);
                rest = &rest + &lead;
                p = &p - &lead;
            }
        }
    }
    rest
}

/// Fully reduces a tracked element: every term divisible by some basis
/// leading term is cancelled, top-down.
fn reduce_tracked(p: &TrackedPoly, basis: &[TrackedPoly]) -> TrackedPoly {
    let mut p = p.clone();
    let mut rest = IntPoly::zero();
    while let Some(dp) = p.value.degree() {
        let lc = p.value.leading();
        let divisor = basis
            .iter()
            .find(|b| b.degree() <= dp && lc.is_multiple_of(&b.value.leading()));
        match divisor {
            Some(b) => {
                let q = &lc / b.value.leading();
                p = p.sub(&b.term_mul(&q, dp - b.degree()));
            }
            None => {
                let lead = IntPoly::monomial(lc, dp);
                rest = &rest + &lead;
                p.value = &p.value - &lead;
            }
        }
    }
    // p.value is zero here; the cofactor bookkeeping stayed in p.u, p.v.
    TrackedPoly {
        value: rest,
        u: p.u,
        v: p.v,
    }
}

/// `a / b` rounded to the nearest integer.
fn round_div(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_mod_floor(b);
    if (&r + &r).abs() > b.abs() || ((&r + &r).abs() == b.abs() && b.is_negative()) {
        q + 1
    } else {
        q
    }
}

/// Degree-indexed working basis: at most one element per degree.
struct Slots<'a> {
    f: &'a IntPoly,
    g: &'a IntPoly,
    slots: Vec<Option<(TrackedPoly, u64)>>,
    pending: Vec<TrackedPoly>,
    /// `(top degree, low slot, high slot, low version, high version)`
    pairs: BTreeSet<(usize, usize, usize, u64, u64)>,
    version: u64,
}

impl Slots<'_> {
    fn filled(&self) -> impl Iterator<Item = (usize, &TrackedPoly, u64)> {
        self.slots
            .iter()
            .enumerate()
            .filter_map(|(k, s)| s.as_ref().map(|(t, v)| (k, t, *v)))
    }

    /// Cancels the leading term while some element's leading term divides it.
    fn top_reduce(&self, mut h: TrackedPoly) -> TrackedPoly {
        while let Some(dh) = h.value.degree() {
            let lc = h.value.leading();
            let divisor = self
                .filled()
                .find(|&(k, t, _)| k <= dh && lc.is_multiple_of(&t.value.leading()));
            match divisor {
                Some((k, t, _)) => {
                    let q = &lc / t.value.leading();
                    h = h.sub(&t.term_mul(&q, dh - k));
                }
                None => break,
            }
        }
        h
    }

    /// Shrinks the tail coefficients of `h` by symmetric remainders against
    /// the element of smallest leading coefficient at or below each degree,
    /// and the cofactor `u` modulo `L(g)` in degrees `>= deg g`.
    fn shrink(&self, mut h: TrackedPoly) -> TrackedPoly {
        let Some(dh) = h.value.degree() else { return h };
        for t in (0..dh).rev() {
            let c = h.value.coeff(t);
            if c.is_zero() {
                continue;
            }
            let best = self
                .filled()
                .filter(|&(k, _, _)| k <= t)
                .min_by_key(|&(_, e, _)| e.value.leading().abs());
            if let Some((k, e, _)) = best {
                let q = round_div(&c, &e.value.leading());
                if !q.is_zero() {
                    h = h.sub(&e.term_mul(&q, t - k));
                }
            }
        }
        if let (Some(n), Some(du)) = (self.g.degree(), h.u.degree()) {
            let lg = self.g.leading();
            for t in (n..=du).rev() {
                let q = round_div(&h.u.coeff(t), &lg);
                if !q.is_zero() {
                    let w = IntPoly::monomial(q, t - n);
                    h.u = &h.u - &(&w * self.g);
                    h.v = &h.v + &(&w * self.f);
                }
            }
        }
        h
    }

    fn place(&mut self, k: usize, t: TrackedPoly) {
        if self.slots.len() <= k {
            self.slots.resize(k + 1, None);
        }
        let lc = t.value.leading();
        for j in k + 1..self.slots.len() {
            let superseded = matches!(&self.slots[j], Some((e, _)) if e.value.leading().is_multiple_of(&lc));
            if superseded {
                let (e, _) = self.slots[j].take().expect("checked");
                self.pending.push(e);
            }
        }
        self.version += 1;
        let v = self.version;
        let others: Vec<(usize, u64)> = self.filled().filter(|&(j, _, _)| j != k).map(|(j, _, w)| (j, w)).collect();
        for (j, w) in others {
            let pair = if j < k { (k, j, k, w, v) } else { (j, k, j, v, w) };
            self.pairs.insert(pair);
        }
        self.slots[k] = Some((t, v));
    }

    fn insert(&mut self, h: TrackedPoly) {
        let mut h = h;
        loop {
            h = self.top_reduce(h);
            let Some(k) = h.value.degree() else { return };
            h = self.shrink(h.normalize_sign());
            let Some((e, _)) = self.slots.get_mut(k).and_then(Option::take) else {
                self.place(k, h);
                return;
            };
            // Same degree: replace {e, h} by the G- and S-polynomial, a
            // unimodular change of generators.
            let (ce, ch) = (e.value.leading(), h.value.leading());
            let ext = ce.extended_gcd(&ch);
            let gpoly = e.scale(&ext.x).add(&h.scale(&ext.y));
            let spoly = e.scale(&(&ch / &ext.gcd)).sub(&h.scale(&(&ce / &ext.gcd)));
            self.pending.push(gpoly);
            h = spoly;
        }
    }

    fn is_current(&self, k: usize, v: u64) -> bool {
        matches!(self.slots.get(k), Some(Some((_, w))) if *w == v)
    }

    fn process_pair(&mut self, i: usize, j: usize) {
        let a = self.slots[i].as_ref().expect("current").0.clone();
        let b = self.slots[j].as_ref().expect("current").0.clone();
        let (ca, cb) = (a.value.leading(), b.value.leading());
        let ext = ca.extended_gcd(&cb);
        let spoly = a
            .term_mul(&(&cb / &ext.gcd), j - i)
            .sub(&b.scale(&(&ca / &ext.gcd)));
        if ext.gcd != cb.abs() {
            // The G-polynomial's leading term strictly divides L(b); it takes
            // b's place, and {G, S} generate what {x^(j-i) a, b} did.
            let gpoly = a.term_mul(&ext.x, j - i).add(&b.scale(&ext.y));
            self.slots[j] = None;
            self.pending.push(gpoly);
        }
        self.pending.push(spoly);
    }
}

/// Buchberger completion over `Z` with S- and G-polynomials, followed by
/// interreduction and sign normalization.
///
/// In one variable two elements of equal degree are always replaced by their
/// G- and S-polynomial, so the working basis holds one element per degree.
pub fn strong_groebner(f: &IntPoly, g: &IntPoly) -> Result<GroebnerBasisZ> {
    if f.is_zero() && g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut work = Slots {
        f,
        g,
        slots: Vec::new(),
        pending: Vec::new(),
        pairs: BTreeSet::new(),
        version: 0,
    };
    for (value, u, v) in [
        (g.clone(), IntPoly::zero(), IntPoly::one()),
        (f.clone(), IntPoly::one(), IntPoly::zero()),
    ] {
        work.pending.push(TrackedPoly { value, u, v });
    }
    loop {
        if let Some(h) = work.pending.pop() {
            work.insert(h);
            continue;
        }
        let Some((_, i, j, vi, vj)) = work.pairs.pop_first() else {
            break;
        };
        if work.is_current(i, vi) && work.is_current(j, vj) {
            work.process_pair(i, j);
        }
    }
    let basis: Vec<TrackedPoly> = work.slots.into_iter().flatten().map(|(t, _)| t).collect();
    Ok(GroebnerBasisZ {
        elements: interreduce(basis),
    })
}

fn basis_order(a: &TrackedPoly, b: &TrackedPoly) -> Ordering {
    a.degree()
        .cmp(&b.degree())
        .then_with(|| a.value.leading().abs().cmp(&b.value.leading().abs()))
}

/// Drops elements whose leading term is divisible by another's, then fully
/// reduces each survivor's tail against the others.
fn interreduce(mut basis: Vec<TrackedPoly>) -> Vec<TrackedPoly> {
    basis.sort_by(basis_order);
    let mut kept: Vec<TrackedPoly> = Vec::new();
    for (idx, e) in basis.iter().enumerate() {
        let redundant = basis.iter().enumerate().any(|(j, o)| {
            j != idx
                && term_divides(&o.value, &e.value)
                // identical leading terms: keep the earliest
                && (!term_divides(&e.value, &o.value) || j < idx)
        });
        if !redundant {
            kept.push(e.clone());
        }
    }
    let mut out = Vec::with_capacity(kept.len());
    for idx in 0..kept.len() {
        let others: Vec<TrackedPoly> = kept
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != idx)
            .map(|(_, e)| e.clone())
            .collect();
        let e = &kept[idx];
        let lead = TrackedPoly {
            value: IntPoly::monomial(e.value.leading(), e.degree()),
            u: IntPoly::zero(),
            v: IntPoly::zero(),
        };
        let tail = reduce_tracked(&e.sub(&lead), &others);
        out.push(lead.add(&tail).normalize_sign());
    }
    out.sort_by(basis_order);
    out
}

/// `p*f + q*g = r` with `r = r(f, g)`; `j = deg(p*f) = deg(q*g)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedResultantCertificate {
    pub r: BigInt,
    pub p: IntPoly,
    pub q: IntPoly,
    pub j: usize,
}

impl ReducedResultantCertificate {
    pub fn verify(&self, f: &IntPoly, g: &IntPoly) -> std::result::Result<(), String> {
        if !self.r.is_positive() {
            return Err("r must be positive".into());
        }
        if &self.p * f + &self.q * g != IntPoly::constant(self.r.clone()) {
            return Err("p*f + q*g != r".into());
        }
        let (jf, jg) = ((&self.p * f).degree(), (&self.q * g).degree());
        if jf != Some(self.j) || jg != Some(self.j) {
            return Err(format!("j = {} but deg(pf) = {jf:?}, deg(qg) = {jg:?}", self.j));
        }
        Ok(())
    }
}

pub fn reduced_resultant(f: &IntPoly, g: &IntPoly) -> Result<ReducedResultantCertificate> {
    for h in [f, g] {
        match h.degree() {
            None => return Err(Error::ZeroPolynomial),
            Some(0) => return Err(Error::ConstantInput),
            _ => {}
        }
    }
    let basis = strong_groebner(f, g)?;
    let c = basis.constant().ok_or(Error::NotCoprime)?;
    let j = (&c.u * f).degree().expect("u nonzero for positive-degree g");
    Ok(ReducedResultantCertificate {
        r: c.value.leading(),
        p: c.u.clone(),
        q: c.v.clone(),
        j,
    })
}

/// Coefficient lattice of `x^i f` (`i <= D - m`) and `x^j g` (`j <= D - n`),
/// columns from degree `D` down to 0.
pub fn shifted_lattice(f: &IntPoly, g: &IntPoly, degree_bound: usize) -> IntMatrix {
    let mut rows = Vec::new();
    for h in [f, g] {
        let dh = h.degree().expect("nonzero");
        for shift in 0..=degree_bound.saturating_sub(dh) {
            if dh + shift > degree_bound {
                break;
            }
            let mut row = vec![BigInt::zero(); degree_bound + 1];
            for (k, c) in h.coeffs().iter().enumerate() {
                row[degree_bound - dh - shift + k] = c.clone();
            }
            rows.push(row);
        }
    }
    IntMatrix::from_rows(rows)
}

/// Smallest positive constant in the degree-`D` lattice, if it contains one.
pub fn lattice_constant(f: &IntPoly, g: &IntPoly, degree_bound: usize) -> Option<BigInt> {
    let (hnf, pivots) = shifted_lattice(f, g, degree_bound).hermite_normal_form();
    let last = pivots.len().checked_sub(1)?;
    (pivots[last] == degree_bound).then(|| hnf.get(last, degree_bound).clone())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HnfOutcome {
    Stabilized { r: BigInt, degree_bound: usize },
    NotStabilized { last: Option<BigInt>, cap: usize },
}

/// Iterative deepening of [`lattice_constant`] from `start` until the value is
/// unchanged over `max(m, n)` consecutive increments and, when `agree_with`
/// is given, equals it. Gives up at `D = m + n + 32`.
pub fn reduced_resultant_hnf(
    f: &IntPoly,
    g: &IntPoly,
    start: usize,
    agree_with: Option<&BigInt>,
) -> Result<HnfOutcome> {
    let m = f.degree().ok_or(Error::ZeroPolynomial)?;
    let n = g.degree().ok_or(Error::ZeroPolynomial)?;
    if m == 0 || n == 0 {
        return Err(Error::ConstantInput);
    }
    if start < m.max(n) {
        return Err(Error::Degree(format!("degree bound {start} below max(m, n)")));
    }
    let window = m.max(n);
    let cap = m + n + 32;
    let mut last: Option<BigInt> = None;
    let mut unchanged = 0;
    for bound in start..=cap {
        let value = lattice_constant(f, g, bound);
        if value.is_some() && value == last {
            unchanged += 1;
        } else {
            unchanged = 0;
        }
        last = value;
        if let Some(r) = &last {
            if unchanged >= window && agree_with.is_none_or(|a| a == r) {
                return Ok(HnfOutcome::Stabilized {
                    r: r.clone(),
                    degree_bound: bound,
                });
            }
        }
    }
    Ok(HnfOutcome::NotStabilized { last, cap })
}

/// Whether `c` lies in `(f, g) ∩ Z`, i.e. `r(f, g) | c`.
pub fn ideal_membership_constant(f: &IntPoly, g: &IntPoly, c: &BigInt) -> Result<bool> {
    if c.is_zero() {
        return Err(Error::ZeroArgument);
    }
    let basis = strong_groebner(f, g)?;
    Ok(basis.contains(&IntPoly::constant(c.clone())))
}
