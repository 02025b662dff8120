//! Text forms for rings and scalars.
//!
//! Ring strings: `Q`, `Fp:13`, `Q[i]`, `Q[sqrt(2)]`, `Fp:7[sqrt(3)]`, and a
//! trailing `[eps]` for dual numbers over any of these (`Fp:101[eps]`).
//!
//! Scalar literals are small arithmetic expressions evaluated in the ring:
//! integers, `+ - * /`, parentheses, `i` (a square root of -1),
//! `sqrt(<expr>)` and `eps`. Examples: `-3`, `1/2`, `i*sqrt(2)/2`, `2+eps`.

use alloc::string::{String, ToString};
use core::str::FromStr;

use num_bigint::BigInt;

use crate::ring::{RingDescriptor, RingError, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LiteralError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("{0} has no square root of -1")]
    NoSqrtMinusOne(String),
    #[error("no square root of {what} in {ring}")]
    NoSqrt { what: String, ring: String },
    #[error("eps is only available in dual-number rings")]
    NoEps,
    #[error(transparent)]
    Ring(#[from] RingError),
}

fn syntax(pos: usize, msg: &str) -> LiteralError {
    LiteralError::Syntax { pos, msg: msg.to_string() }
}

impl FromStr for RingDescriptor {
    type Err = LiteralError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (mut ring, mut rest, mut pos) = if let Some(r) = s.strip_prefix("Fp:") {
            let end = r.find('[').unwrap_or(r.len());
            let p: u64 = r[..end].trim().parse().map_err(|_| syntax(3, "expected a prime modulus"))?;
            (RingDescriptor::prime_field(p)?, &r[end..], 3 + end)
        } else if let Some(r) = s.strip_prefix('Q') {
            (RingDescriptor::rationals(), r, 1)
        } else {
            return Err(syntax(0, "expected `Q` or `Fp:<p>`"));
        };
        while !rest.is_empty() {
            if !rest.starts_with('[') {
                return Err(syntax(pos, "expected `[`"));
            }
            let close = matching_bracket(rest).ok_or_else(|| syntax(pos, "unclosed `[`"))?;
            let inner = rest[1..close].trim();
            ring = if inner == "eps" {
                RingDescriptor::dual_numbers(ring)
            } else if inner == "i" {
                let d = ring.from_int(-1);
                RingDescriptor::quadratic_ext(ring, d)?
            } else if let Some(arg) = inner.strip_prefix("sqrt(").and_then(|a| a.strip_suffix(')')) {
                let d = parse_scalar(&ring, arg)?;
                RingDescriptor::quadratic_ext(ring, d)?
            } else {
                return Err(syntax(pos + 1, "expected `i`, `sqrt(d)` or `eps`"));
            };
            pos += close + 1;
            rest = &rest[close + 1..];
        }
        Ok(ring)
    }
}

fn matching_bracket(s: &str) -> Option<usize> {
    let mut depth = 0usize;
    for (i, c) in s.char_indices() {
        match c {
            '[' => depth += 1,
            ']' => {
                depth -= 1;
                if depth == 0 {
                    return Some(i);
                }
            }
            _ => {}
        }
    }
    None
}

/// Parses a scalar literal in `ring`.
pub fn parse_scalar(ring: &RingDescriptor, text: &str) -> Result<Scalar, LiteralError> {
    let mut p = ExprParser { src: text.as_bytes(), pos: 0, ring };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(syntax(p.pos, "unexpected trailing input"));
    }
    Ok(v)
}

struct ExprParser<'a> {
    src: &'a [u8],
    pos: usize,
    ring: &'a RingDescriptor,
}

impl ExprParser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Scalar, LiteralError> {
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == b'+' { self.ring.add(&acc, &rhs) } else { self.ring.sub(&acc, &rhs) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Scalar, LiteralError> {
        let mut acc = self.unary()?;
        while let Some(c @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let rhs = self.unary()?;
            acc = if c == b'*' { self.ring.mul(&acc, &rhs) } else { self.ring.div(&acc, &rhs)? };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Scalar, LiteralError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                let v = self.unary()?;
                Ok(self.ring.neg(&v))
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Scalar, LiteralError> {
        let start = self.pos;
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(syntax(self.pos, "expected `)`"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let begin = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let digits = core::str::from_utf8(&self.src[begin..self.pos]).expect("ascii");
                let n: BigInt = digits.parse().map_err(|_| syntax(begin, "bad integer"))?;
                Ok(self.ring.from_bigint(&n))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let begin = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let ident = core::str::from_utf8(&self.src[begin..self.pos]).expect("ascii");
                match ident {
                    "i" => self
                        .ring
                        .sqrt_minus_one()
                        .ok_or_else(|| LiteralError::NoSqrtMinusOne(self.ring.to_string())),
                    "eps" => match self.ring {
                        RingDescriptor::DualNumbers { .. } => Ok(self.ring.eps()),
                        _ => Err(LiteralError::NoEps),
                    },
                    "sqrt" => {
                        if self.peek() != Some(b'(') {
                            return Err(syntax(self.pos, "expected `(` after sqrt"));
                        }
                        let arg = self.atom()?;
                        self.ring.sqrt(&arg).ok_or_else(|| LiteralError::NoSqrt {
                            what: self.ring.render(&arg),
                            ring: self.ring.to_string(),
                        })
                    }
                    _ => Err(syntax(begin, "unknown identifier")),
                }
            }
            _ => Err(syntax(start, "expected a number, `i`, `sqrt(..)`, `eps` or `(`")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::format;
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::Rational(BigRational::new(n.into(), d.into()))
    }

    #[test]
    fn ring_strings() {
        for s in ["Q", "Fp:13", "Q[i]", "Q[sqrt(2)]", "Fp:7[sqrt(3)]", "Q[eps]", "Q[i][eps]", "Fp:101[eps]"] {
            let r: RingDescriptor = s.parse().unwrap();
            assert_eq!(format!("{r}"), s);
        }
        assert!("Fp:12".parse::<RingDescriptor>().is_err());
        assert!("Fp:13[i]".parse::<RingDescriptor>().is_err());
        assert!("Z".parse::<RingDescriptor>().is_err());
    }

    #[test]
    fn scalar_literals() {
        let ring = RingDescriptor::rationals();
        assert_eq!(parse_scalar(&ring, "-3").unwrap(), q(-3, 1));
        assert_eq!(parse_scalar(&ring, "6/4").unwrap(), q(3, 2));
        assert!(matches!(parse_scalar(&ring, "i"), Err(LiteralError::NoSqrtMinusOne(_))));
        assert_eq!(parse_scalar(&ring, "sqrt(9/4)").unwrap(), q(3, 2));
        let f13: RingDescriptor = "Fp:13".parse().unwrap();
        assert_eq!(parse_scalar(&f13, "i").unwrap(), Scalar::Residue(5));
        assert_eq!(parse_scalar(&f13, "1/2").unwrap(), Scalar::Residue(7));
        let f17: RingDescriptor = "Fp:17".parse().unwrap();
        assert_eq!(parse_scalar(&f17, "sqrt(2)").unwrap(), Scalar::Residue(6));
        assert_eq!(parse_scalar(&f17, "i").unwrap(), Scalar::Residue(4));
        let q2: RingDescriptor = "Q[sqrt(2)]".parse().unwrap();
        assert_eq!(parse_scalar(&q2, "sqrt(2)").unwrap(), Scalar::pair(q(0, 1), q(1, 1)));
        let dual: RingDescriptor = "Q[eps]".parse().unwrap();
        assert_eq!(parse_scalar(&dual, "2+3*eps").unwrap(), Scalar::pair(q(2, 1), q(3, 1)));
        assert!(matches!(parse_scalar(&ring, "1 +"), Err(LiteralError::Syntax { .. })));
        assert!(matches!(parse_scalar(&ring, "1/0"), Err(LiteralError::Ring(RingError::NotInvertible))));
    }

    proptest! {
        #[test]
        fn render_parse_round_trip(a in -50i64..50, b in 1i64..20, c in -50i64..50, d in 1i64..20, e in -9i64..9) {
            let qi = RingDescriptor::gaussian_rationals();
            let x = Scalar::pair(q(a, b), q(c, d));
            prop_assert_eq!(parse_scalar(&qi, &qi.render(&x)).unwrap(), x.clone());
            let dual = RingDescriptor::dual_numbers(qi.clone());
            let y = Scalar::pair(x.clone(), Scalar::pair(q(e, 1), q(c, b)));
            prop_assert_eq!(parse_scalar(&dual, &dual.render(&y)).unwrap(), y);
        }
    }
}
