//! Text and JSON forms of metapolynomials.
//!
//! Text grammar (whitespace is ignored between tokens):
//!
//! ```text
//! poly     := sign? term (('+' | '-') term)*
//! term     := factor ('*' factor)*
//! factor   := rational | 'c' '[' uint (',' uint)* ']' ('^' uint)?
//! rational := uint ('/' uint)?
//! ```
//!
//! A term with no `c[..]` factor is a constant. The single token `0` is the
//! zero metapolynomial. Output uses the same grammar with the canonical term
//! order, unit coefficients omitted.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::index::MultiIndex;
use crate::meta::{Format, MetaMonomial, MetaPolynomial};
use crate::scalar::{self, Scalar};

/// One parsed term: coefficient and factor list (unsorted, possibly of mixed
/// inner degree).
pub type RawTerm = (Scalar, Vec<MultiIndex>);

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{}'", c as char)))
        }
    }

    fn error(&self, message: String) -> Error {
        Error::parse(self.pos, message)
    }

    fn digits(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits".into()));
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits"))
    }

    fn uint(&mut self) -> Result<u32> {
        let at = self.pos;
        self.digits()?
            .parse()
            .map_err(|_| Error::parse(at, "integer too large"))
    }

    fn rational(&mut self) -> Result<Scalar> {
        let num = self.digits()?;
        let mut text = num.to_string();
        if self.eat(b'/') {
            text.push('/');
            text.push_str(self.digits()?);
        }
        let at = self.pos;
        scalar::parse(&text).map_err(|_| Error::parse(at, format!("bad rational {text}")))
    }

    fn factor(&mut self, coef: &mut Scalar, factors: &mut Vec<MultiIndex>) -> Result<()> {
        match self.peek() {
            Some(b'c') => {
                self.pos += 1;
                self.expect(b'[')?;
                let mut mu = vec![self.uint()?];
                while self.eat(b',') {
                    mu.push(self.uint()?);
                }
                self.expect(b']')?;
                let e = if self.eat(b'^') { self.uint()? } else { 1 };
                let mu = MultiIndex::new(mu);
                for _ in 0..e {
                    factors.push(mu.clone());
                }
                Ok(())
            }
            Some(c) if c.is_ascii_digit() => {
                *coef *= self.rational()?;
                Ok(())
            }
            _ => Err(self.error("expected a rational or c[..]".into())),
        }
    }

    fn term(&mut self) -> Result<RawTerm> {
        let mut coef = Scalar::one();
        let mut factors = Vec::new();
        self.factor(&mut coef, &mut factors)?;
        while self.eat(b'*') {
            self.factor(&mut coef, &mut factors)?;
        }
        Ok((coef, factors))
    }
}

/// Parses text into raw terms without any format validation.
pub fn parse_raw(text: &str) -> Result<Vec<RawTerm>> {
    let mut lx = Lexer {
        src: text.as_bytes(),
        pos: 0,
    };
    let mut out = Vec::new();
    let mut negative = if lx.eat(b'-') {
        true
    } else {
        lx.eat(b'+');
        false
    };
    loop {
        let (c, f) = lx.term()?;
        out.push((if negative { -c } else { c }, f));
        if lx.eat(b'+') {
            negative = false;
        } else if lx.eat(b'-') {
            negative = true;
        } else {
            break;
        }
    }
    if lx.peek().is_some() {
        return Err(lx.error("trailing input".into()));
    }
    out.retain(|(c, _)| !c.is_zero());
    Ok(out)
}

/// Parses a homogeneous metapolynomial. Without an explicit format it is
/// inferred from the first term; the zero polynomial then needs a format.
pub fn parse_meta(text: &str, format: Option<Format>) -> Result<MetaPolynomial> {
    let terms = parse_raw(text)?;
    let format = match format {
        Some(f) => f,
        None => {
            let (_, factors) = terms
                .first()
                .ok_or_else(|| Error::parse(0, "cannot infer the format of 0"))?;
            let first = factors
                .first()
                .ok_or_else(|| Error::parse(0, "cannot infer the format of a constant"))?;
            Format::new(factors.len() as u32, first.degree(), first.len())
        }
    };
    MetaPolynomial::from_terms(format, terms)
}

fn write_coef(f: &mut fmt::Formatter<'_>, first: bool, c: &Scalar, bare: bool) -> fmt::Result {
    let abs = c.abs();
    if first {
        if c.is_negative() {
            f.write_str("-")?;
        }
    } else if c.is_negative() {
        f.write_str(" - ")?;
    } else {
        f.write_str(" + ")?;
    }
    if bare {
        write!(f, "{abs}")
    } else if !abs.is_one() {
        write!(f, "{abs}*")
    } else {
        Ok(())
    }
}

pub(crate) fn write_terms<'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (&'a MetaMonomial, &'a Scalar)>,
) -> fmt::Result {
    let mut first = true;
    for (m, c) in terms {
        let bare = m.degree() == 0;
        write_coef(f, first, c, bare)?;
        if !bare {
            write!(f, "{m}")?;
        }
        first = false;
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    #[serde(with = "scalar::serde_text")]
    coef: Scalar,
    monomial: Vec<MultiIndex>,
}

#[derive(Serialize, Deserialize)]
struct MetaJson {
    format: Format,
    terms: Vec<TermJson>,
}

impl Serialize for MetaPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MetaJson {
            format: self.format(),
            terms: self
                .terms()
                .map(|(m, c)| TermJson {
                    coef: c.clone(),
                    monomial: m.factors().to_vec(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MetaPolynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = MetaJson::deserialize(d)?;
        MetaPolynomial::from_terms(raw.format, raw.terms.into_iter().map(|t| (t.coef, t.monomial)))
            .map_err(serde::de::Error::custom)
    }
}

pub fn to_json(m: &MetaPolynomial) -> String {
    serde_json::to_string(m).expect("metapolynomial serializes")
}

pub fn from_json(text: &str) -> Result<MetaPolynomial> {
    Ok(serde_json::from_str(text)?)
}

/// Accepts either JSON (leading `{`) or the text grammar.
pub fn parse_any(text: &str, format: Option<Format>) -> Result<MetaPolynomial> {
    if text.trim_start().starts_with('{') {
        let m = from_json(text)?;
        if let Some(f) = format {
            if f != m.format() {
                return Err(Error::FormatMismatch {
                    expected: f,
                    found: m.format(),
                });
            }
        }
        Ok(m)
    } else {
        parse_meta(text, format)
    }
}
