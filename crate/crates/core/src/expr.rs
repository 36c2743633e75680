//! Text form of derivations.
//!
//! ```text
//! expr   := ["+"|"-"] term (("+"|"-") term)*
//! term   := factor ("*"? factor)*
//! factor := integer ["/" integer] | "x" index ["^" exponent] | "d" index | "E" | "(" expr ")"
//! ```
//!
//! Whitespace is ignored. `E` stands for `x1 d1 + ... + xn dn`. A term may
//! contain at most one vector-field factor; the output of
//! [`Derivation`]'s `Display` impl always parses back to the same value.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::derlie::{euler, Derivation};
use crate::error::{Error, Result};
use crate::polyring::{Monomial, Polynomial, Rational};

/// Parses `text` as a derivation of `K[x1..xn]`.
pub fn parse_derivation(text: &str, n: usize) -> Result<Derivation> {
    if n < 2 {
        return Err(Error::TooFewVariables(n));
    }
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        n,
    };
    let value = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error(format!("unexpected '{}'", p.src[p.pos] as char)));
    }
    match value {
        Value::Field(d) => Ok(d),
        Value::Poly(f) if f.is_zero() => Ok(Derivation::zero(n)),
        Value::Poly(_) => Err(Error::Parse {
            position: 0,
            message: "expression is a polynomial, not a vector field".into(),
        }),
    }
}

enum Value {
    Poly(Polynomial),
    Field(Derivation),
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    n: usize,
}

impl Parser<'_> {
    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            position: self.pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn digits(&mut self) -> Option<String> {
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        (self.pos > start).then(|| String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn expr(&mut self) -> Result<Value> {
        let mut sign = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -1
            }
            Some(b'+') => {
                self.pos += 1;
                1
            }
            _ => 1,
        };
        let mut acc = Value::Poly(Polynomial::zero(self.n));
        loop {
            self.peek();
            let at = self.pos;
            let t = self.term()?;
            let t = if sign < 0 { negate(t) } else { t };
            acc = add(acc, t).map_err(|m| Error::Parse {
                position: at,
                message: m,
            })?;
            sign = match self.peek() {
                Some(b'+') => 1,
                Some(b'-') => -1,
                _ => return Ok(acc),
            };
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<Value> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    self.peek();
                }
                Some(b'0'..=b'9' | b'x' | b'd' | b'E' | b'(') => {}
                _ => return Ok(acc),
            }
            let at = self.pos;
            let f = self.factor()?;
            acc = mul(acc, f).map_err(|m| Error::Parse {
                position: at,
                message: m,
            })?;
        }
    }

    fn index(&mut self) -> Result<usize> {
        let at = self.pos;
        let s = self
            .digits()
            .ok_or_else(|| self.error("expected variable index"))?;
        let i: usize = s.parse().map_err(|_| Error::Parse {
            position: at,
            message: format!("variable index {s} is too large"),
        })?;
        if i == 0 || i > self.n {
            return Err(Error::VariableIndexOutOfRange {
                index: i,
                n: self.n,
            });
        }
        Ok(i - 1)
    }

    fn factor(&mut self) -> Result<Value> {
        let n = self.n;
        match self.peek() {
            Some(b'0'..=b'9') => {
                let num: BigInt = self.digits().unwrap().parse().unwrap();
                let mut c = Rational::from_integer(num);
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.skip_ws();
                    let den: BigInt = self
                        .digits()
                        .ok_or_else(|| self.error("expected denominator"))?
                        .parse()
                        .unwrap();
                    if den.is_zero() {
                        return Err(self.error("zero denominator"));
                    }
                    c /= Rational::from_integer(den);
                }
                Ok(Value::Poly(Polynomial::constant(n, c)))
            }
            Some(b'x') => {
                self.pos += 1;
                let i = self.index()?;
                let mut e = 1u32;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    self.skip_ws();
                    let at = self.pos;
                    let s = self
                        .digits()
                        .ok_or_else(|| self.error("malformed exponent"))?;
                    e = s.parse().map_err(|_| Error::Parse {
                        position: at,
                        message: format!("malformed exponent {s}"),
                    })?;
                }
                let mut exps = vec![0; n];
                exps[i] = e;
                Ok(Value::Poly(Polynomial::term(
                    n,
                    Rational::one(),
                    Monomial::new(exps),
                )))
            }
            Some(b'd') => {
                self.pos += 1;
                let i = self.index()?;
                Ok(Value::Field(Derivation::partial(n, i)))
            }
            Some(b'E') => {
                self.pos += 1;
                Ok(Value::Field(euler(n)?))
            }
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) => Err(self.error(format!("unexpected '{}'", c as char))),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

fn negate(v: Value) -> Value {
    match v {
        Value::Poly(f) => Value::Poly(-&f),
        Value::Field(d) => Value::Field(-&d),
    }
}

fn add(a: Value, b: Value) -> std::result::Result<Value, String> {
    match (a, b) {
        (Value::Poly(f), Value::Poly(g)) => Ok(Value::Poly(&f + &g)),
        (Value::Field(d), Value::Field(e)) => Ok(Value::Field(&d + &e)),
        (Value::Poly(f), Value::Field(d)) | (Value::Field(d), Value::Poly(f)) if f.is_zero() => {
            Ok(Value::Field(d))
        }
        _ => Err("cannot add a polynomial and a vector field".into()),
    }
}

fn mul(a: Value, b: Value) -> std::result::Result<Value, String> {
    match (a, b) {
        (Value::Poly(f), Value::Poly(g)) => Ok(Value::Poly(&f * &g)),
        (Value::Poly(f), Value::Field(d)) | (Value::Field(d), Value::Poly(f)) => {
            Ok(Value::Field(d.mul_poly(&f).expect("same variable count")))
        }
        (Value::Field(_), Value::Field(_)) => Err("product of two vector fields".into()),
    }
}
