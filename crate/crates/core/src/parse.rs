//! Text formats for integer polynomials.
//!
//! Human syntax: `poly := [sign] term (sign term)*`, `term := INT | INT? 'x' ('^' UINT)?`,
//! whitespace anywhere between tokens. Terms of equal degree are summed.
//! Coefficient-list syntax: comma-separated integers, highest degree first.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::{IntPoly, RatPoly};

pub const MAX_EXPONENT: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Style {
    Human,
    CoeffList,
}

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn digits(&mut self) -> Option<(usize, String)> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| {
            let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
            (start, text.to_string())
        })
    }

    fn error(&self, offset: usize, message: impl Into<String>) -> Error {
        Error::Syntax {
            offset,
            message: message.into(),
        }
    }
}

/// Parses the human polynomial syntax, e.g. `"6x^3 - 6x^2 - 6x - 6"`.
pub fn parse_poly(text: &str) -> Result<IntPoly> {
    let mut cur = Cursor {
        src: text.as_bytes(),
        pos: 0,
    };
    let mut terms: BTreeMap<usize, BigInt> = BTreeMap::new();
    let mut first = true;
    loop {
        let sign_pos = cur.pos;
        let negative = match cur.peek() {
            Some(b'+') => {
                cur.pos += 1;
                false
            }
            Some(b'-') => {
                cur.pos += 1;
                true
            }
            None if first => return Err(cur.error(cur.pos, "empty input")),
            None => break,
            Some(_) if first => false,
            Some(c) => {
                return Err(cur.error(cur.pos, format!("expected '+' or '-', found '{}'", c as char)))
            }
        };
        first = false;

        let coeff = cur.digits().map(|(_, d)| d.parse::<BigInt>().expect("digits"));
        let exponent = if cur.peek() == Some(b'x') {
            cur.pos += 1;
            if cur.peek() == Some(b'^') {
                cur.pos += 1;
                let Some((at, d)) = cur.digits() else {
                    return Err(cur.error(cur.pos, "expected exponent after '^'"));
                };
                match d.parse::<u64>() {
                    Ok(e) if e <= MAX_EXPONENT => e as usize,
                    _ => {
                        return Err(Error::ExponentTooLarge {
                            offset: at,
                            max: MAX_EXPONENT,
                        })
                    }
                }
            } else {
                1
            }
        } else if coeff.is_some() {
            0
        } else {
            let found = cur.peek();
            return Err(cur.error(
                cur.pos.max(sign_pos),
                match found {
                    Some(c) => format!("expected a term, found '{}'", c as char),
                    None => "expected a term, found end of input".to_string(),
                },
            ));
        };
        let mut c = coeff.unwrap_or_else(BigInt::one);
        if negative {
            c = -c;
        }
        *terms.entry(exponent).or_insert_with(BigInt::zero) += c;
    }
    let degree = terms.keys().next_back().copied().unwrap_or(0);
    let mut coeffs = vec![BigInt::zero(); degree + 1];
    for (e, c) in terms {
        coeffs[degree - e] = c;
    }
    Ok(IntPoly::from_coeffs(coeffs))
}

/// Parses a comma-separated coefficient list, highest degree first. The flag is
/// set when leading zeros had to be stripped.
pub fn parse_coeff_list(text: &str) -> Result<(IntPoly, bool)> {
    if text.trim().is_empty() {
        return Err(Error::Syntax {
            offset: 0,
            message: "empty coefficient list".into(),
        });
    }
    let mut coeffs = Vec::new();
    let mut offset = 0;
    for token in text.split(',') {
        let trimmed = token.trim();
        let lead_ws = token.len() - token.trim_start().len();
        let value = trimmed
            .strip_prefix('+')
            .unwrap_or(trimmed)
            .parse::<BigInt>()
            .ok()
            .filter(|_| !trimmed.is_empty() && !trimmed.starts_with("+-"))
            .ok_or_else(|| Error::Syntax {
                offset: offset + lead_ws,
                message: format!("not an integer: '{trimmed}'"),
            })?;
        coeffs.push(value);
        offset += token.len() + 1;
    }
    let warned = coeffs.len() > 1 && coeffs[0].is_zero();
    Ok((IntPoly::from_coeffs(coeffs), warned))
}

/// Renders a polynomial in the requested style.
pub fn format_poly(p: &IntPoly, style: Style) -> String {
    match style {
        Style::CoeffList => {
            if p.is_zero() {
                return "0".into();
            }
            p.coeffs()
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(",")
        }
        Style::Human => join_terms(p.coeffs().iter().map(|c| {
            (
                c.is_negative(),
                c.is_zero(),
                c.abs().is_one(),
                c.abs().to_string(),
            )
        }))
        .unwrap_or_else(|| "0".into()),
    }
}

/// Renders a rational polynomial; non-integral coefficients are parenthesized
/// when they multiply a power of `x`, e.g. `(1/2)x^2 - 3/4`.
pub fn format_rat_poly(p: &RatPoly) -> String {
    let deg = p.degree().unwrap_or(0);
    join_terms(p.coeffs().iter().enumerate().map(|(i, c)| {
        let mag: BigRational = c.abs();
        let text = if mag.is_integer() || i == deg {
            mag.to_string()
        } else {
            format!("({mag})")
        };
        (c.is_negative(), c.is_zero(), mag.is_one(), text)
    }))
    .unwrap_or_else(|| "0".into())
}

/// Each item: (negative, zero, unit magnitude, magnitude text), highest degree first.
fn join_terms(terms: impl ExactSizeIterator<Item = (bool, bool, bool, String)>) -> Option<String> {
    let deg = terms.len().checked_sub(1)?;
    let mut out = String::new();
    for (i, (negative, zero, unit, mag)) in terms.enumerate() {
        if zero {
            continue;
        }
        let exp = deg - i;
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        if !(unit && exp > 0) {
            out.push_str(&mag);
        }
        match exp {
            0 => {}
            1 => out.push('x'),
            e => {
                out.push_str("x^");
                out.push_str(&e.to_string());
            }
        }
    }
    Some(out)
}

/// Accepts either syntax: text containing `x` is read as a polynomial, anything
/// else as a coefficient list.
pub fn parse_auto(text: &str) -> Result<(IntPoly, bool)> {
    if text.contains('x') {
        parse_poly(text).map(|p| (p, false))
    } else if text.contains(',') {
        parse_coeff_list(text)
    } else {
        parse_poly(text).map(|p| (p, false))
    }
}
