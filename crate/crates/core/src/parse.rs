//! Text grammar for rational polynomials.
//!
//! Terms are `coeff * X1^i X2^j X3^k a^l b^m c^n` with decimal-free
//! rational coefficients (`p/q`), `*` optional, exponents possibly
//! negative on the parameters. The parser accepts the canonical `Display`
//! output of [`Poly`] and reasonable whitespace variations of it.

use std::str::FromStr;

use num_bigint::BigInt;
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;
use crate::monomial::Monomial;
use crate::poly::Poly;
use crate::scalar::Rat;
use crate::vars::Var;

impl FromStr for Poly<Rat> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Parser::new(s).parse()
    }
}

impl Serialize for Poly<Rat> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Poly<Rat> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(de::Error::custom)
    }
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    src: &'a str,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Parser<'a> {
        Parser {
            chars: src.chars().collect(),
            pos: 0,
            src,
        }
    }

    fn error(&self, msg: &str) -> Error {
        Error::Parse(format!("{} at offset {} in {:?}", msg, self.pos, self.src))
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn parse(&mut self) -> Result<Poly<Rat>, Error> {
        self.skip_ws();
        if self.peek().is_none() {
            return Err(self.error("empty polynomial"));
        }
        let mut out = Poly::zero();
        let mut sign = 1i64;
        if matches!(self.peek(), Some('+') | Some('-')) && self.bump() == Some('-') {
            sign = -1;
        }
        loop {
            let term = self.parse_term()?;
            let signed = if sign < 0 { term.neg_ref() } else { term };
            out = out.add_ref(&signed);
            self.skip_ws();
            match self.peek() {
                None => break,
                Some('+') => {
                    self.bump();
                    sign = 1;
                }
                Some('-') => {
                    self.bump();
                    sign = -1;
                }
                Some(_) => return Err(self.error("expected '+' or '-'")),
            }
        }
        Ok(out)
    }

    fn parse_term(&mut self) -> Result<Poly<Rat>, Error> {
        self.skip_ws();
        let mut coeff = Rat::from_integer(BigInt::from(1));
        let mut mono = Monomial::one();
        let mut saw_factor = false;

        if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            coeff = self.parse_rational()?;
            saw_factor = true;
            self.skip_ws();
            if self.peek() == Some('*') {
                self.bump();
                self.skip_ws();
            }
        }
        while let Some(c) = self.peek() {
            if !(c.is_ascii_alphabetic()) {
                break;
            }
            let (v, e) = self.parse_factor()?;
            mono = mono.mul(&Monomial::var(v, e));
            saw_factor = true;
            self.skip_ws();
            if self.peek() == Some('*') {
                self.bump();
                self.skip_ws();
            }
        }
        if !saw_factor {
            return Err(self.error("expected a coefficient or a variable"));
        }
        Ok(Poly::term(mono, coeff))
    }

    fn parse_factor(&mut self) -> Result<(Var, i32), Error> {
        // longest match against the fixed variable names
        let rest: String = self.chars[self.pos..].iter().collect();
        let mut v = None;
        for name in ["lam", "X1", "X2", "X3", "a", "b", "c", "w"] {
            if rest.starts_with(name) {
                v = Var::parse(name);
                self.pos += name.len();
                break;
            }
        }
        let v = v.ok_or_else(|| self.error("unknown variable"))?;
        let mut e = 1i32;
        if self.peek() == Some('^') {
            self.bump();
            let mut sign = 1i32;
            if self.peek() == Some('-') {
                self.bump();
                sign = -1;
            }
            e = sign * self.parse_integer()? as i32;
        }
        Ok((v, e))
    }

    fn parse_rational(&mut self) -> Result<Rat, Error> {
        let n = self.parse_integer()?;
        self.skip_ws();
        if self.peek() == Some('/') {
            self.bump();
            self.skip_ws();
            let d = self.parse_integer()?;
            if d == 0 {
                return Err(self.error("zero denominator"));
            }
            Ok(Rat::new(BigInt::from(n), BigInt::from(d)))
        } else {
            Ok(Rat::from_integer(BigInt::from(n)))
        }
    }

    fn parse_integer(&mut self) -> Result<i64, Error> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected an integer"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| self.error("integer out of range"))
    }
}

/// Convenience wrapper used pervasively in tests: parse, panicking on error.
pub fn qp(s: &str) -> Poly<Rat> {
    s.parse().unwrap_or_else(|e| panic!("bad polynomial: {e}"))
}

/// Parse a rational scalar in the `p/q` grammar (leading `-` allowed).
pub fn parse_rat(s: &str) -> Result<Rat, Error> {
    let t = s.trim();
    let (neg, rest) = match t.strip_prefix('-') {
        Some(r) => (true, r.trim()),
        None => (false, t),
    };
    let mut p = Parser::new(rest);
    let r = p.parse_rational()?;
    p.skip_ws();
    if p.peek().is_some() {
        return Err(Error::Parse(format!("trailing input in rational {:?}", s)));
    }
    Ok(if neg { -r } else { r })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap as Map;

    #[test]
    fn round_trips_canonical_form() {
        let cases = [
            "X1^3 + X2^3 + X3^3",
            "b*X1^2 - a^2*X2",
            "1/2*X1 - 3",
            "a^-2*b + 1/3",
            "-X1 - X2",
            "0",
            "5",
            "w^2 - 1",
        ];
        for s in cases {
            let p = qp(s);
            let printed = p.to_string();
            let back = qp(&printed);
            assert_eq!(p, back, "case {s} printed as {printed}");
        }
    }

    #[test]
    fn accepts_spaced_monomials() {
        assert_eq!(qp("2*X1^2 X2 a^-1"), qp("2 * X1^2 * X2 * a^-1"));
        assert_eq!(qp("bX1^2"), qp("b*X1^2"), "implicit product without space");
    }

    #[test]
    fn rejects_garbage() {
        assert!("X4 + 1".parse::<Poly<Rat>>().is_err());
        assert!("1//2".parse::<Poly<Rat>>().is_err());
        assert!("".parse::<Poly<Rat>>().is_err());
        assert!("X1 $ X2".parse::<Poly<Rat>>().is_err());
    }

    #[test]
    fn substitution_uses_parsed_polys() {
        let p = qp("X1^2");
        let mut m: Map<Var, Poly<Rat>> = Map::new();
        m.insert(Var::X1, qp("X2 + 1"));
        assert_eq!(p.substitute(&m).unwrap(), qp("X2^2 + 2*X2 + 1"));
    }
}
