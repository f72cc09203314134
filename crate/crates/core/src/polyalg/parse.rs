//! Polynomial text parser.
//!
//! Grammar, loosest binding first:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' integer)?
//! atom   := integer ('/' integer)? | name | '(' expr ')'
//! ```
//!
//! `/` only forms rational literals. Juxtaposition is rejected.

use num::{BigInt, Zero};

use super::field::{Field, Rational};
use super::poly::{Monomial, Poly, Var};
use super::PolyError;

/// Parses a polynomial with rational coefficients.
pub fn parse_poly(text: &str) -> Result<Poly<Rational>, PolyError> {
    parse_poly_in::<Rational>(text)
}

/// Parses over any coefficient field; the field decides which extra symbols
/// (such as `u`) are constants.
pub fn parse_poly_in<K: Field>(text: &str) -> Result<Poly<K>, PolyError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let out = p.expr::<K>()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.syntax("unexpected trailing input"));
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn syntax(&self, message: &str) -> PolyError {
        PolyError::Syntax { offset: self.pos, message: message.to_string() }
    }

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

    fn expr<K: Field>(&mut self) -> Result<Poly<K>, PolyError> {
        let mut acc = self.term::<K>()?;
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term::<K>()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term::<K>()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term<K: Field>(&mut self) -> Result<Poly<K>, PolyError> {
        let mut acc = self.unary::<K>()?;
        while self.eat(b'*') {
            acc = &acc * &self.unary::<K>()?;
        }
        match self.peek() {
            Some(c) if c.is_ascii_alphanumeric() || c == b'(' => Err(self.syntax("expected operator")),
            _ => Ok(acc),
        }
    }

    fn unary<K: Field>(&mut self) -> Result<Poly<K>, PolyError> {
        if self.eat(b'-') {
            Ok(-self.unary::<K>()?)
        } else {
            self.power::<K>()
        }
    }

    fn power<K: Field>(&mut self) -> Result<Poly<K>, PolyError> {
        let base = self.atom::<K>()?;
        if self.eat(b'^') {
            self.skip_ws();
            let at = self.pos;
            let e = self.integer().ok_or_else(|| self.syntax("expected exponent"))?;
            let e = u32::try_from(e).map_err(|_| PolyError::Syntax {
                offset: at,
                message: "exponent too large".into(),
            })?;
            Ok(base.pow(e))
        } else {
            Ok(base)
        }
    }

    fn integer(&mut self) -> Option<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        std::str::from_utf8(&self.src[start..self.pos]).ok()?.parse().ok()
    }

    fn atom<K: Field>(&mut self) -> Result<Poly<K>, PolyError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr::<K>()?;
                if !self.eat(b')') {
                    return Err(self.syntax("expected ')'"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer().expect("digit present");
                let value = if self.eat(b'/') {
                    self.skip_ws();
                    let at = self.pos;
                    let den = self.integer().ok_or_else(|| self.syntax("expected denominator"))?;
                    if den.is_zero() {
                        return Err(PolyError::Syntax { offset: at, message: "zero denominator".into() });
                    }
                    Rational::new(num, den)
                } else {
                    Rational::from_integer(num)
                };
                Ok(Poly::constant(K::from_rational(value)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                if let Some(v) = Var::from_name(name) {
                    Ok(Poly::monomial(Monomial::var(v), K::one()))
                } else if let Some(c) = K::named_constant(name) {
                    Ok(Poly::constant(c))
                } else {
                    Err(PolyError::UnknownVariable { name: name.to_string(), offset: start })
                }
            }
            Some(_) => Err(self.syntax("unexpected character")),
            None => Err(self.syntax("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::{rat, QSqrt3};

    #[test]
    fn conic_terms() {
        let f = parse_poly("y*z - x^2").unwrap();
        assert_eq!(f.term_count(), 2);
        assert_eq!(f.coeff(&Monomial([0, 1, 1])), rat(1, 1));
        assert_eq!(f.coeff(&Monomial([2, 0, 0])), rat(-1, 1));
    }

    #[test]
    fn zero_and_square() {
        assert!(parse_poly("0").unwrap().is_zero());
        assert_eq!(parse_poly("(x+y)^2").unwrap(), parse_poly("x^2+2*x*y+y^2").unwrap());
    }

    #[test]
    fn rational_literals_and_unary_minus() {
        let f = parse_poly("-32/27*x^3 + -(y)").unwrap();
        assert_eq!(f.coeff(&Monomial([3, 0, 0])), rat(-32, 27));
        assert_eq!(f.coeff(&Monomial([0, 1, 0])), rat(-1, 1));
    }

    #[test]
    fn errors_carry_offsets() {
        match parse_poly("x + w") {
            Err(PolyError::UnknownVariable { name, offset }) => assert_eq!((name.as_str(), offset), ("w", 4)),
            other => panic!("{other:?}"),
        }
        match parse_poly("2x") {
            Err(PolyError::Syntax { offset, .. }) => assert_eq!(offset, 1),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_poly("x^"), Err(PolyError::Syntax { offset: 2, .. })));
        assert!(matches!(parse_poly("(x"), Err(PolyError::Syntax { .. })));
        assert!(matches!(parse_poly("1/0"), Err(PolyError::Syntax { offset: 2, .. })));
        assert!(matches!(parse_poly("x/y"), Err(PolyError::Syntax { .. })));
    }

    #[test]
    fn u_is_a_constant_only_over_the_extension() {
        assert!(matches!(parse_poly("u*x"), Err(PolyError::UnknownVariable { .. })));
        let f = parse_poly_in::<QSqrt3>("(1 + u)*x - u^2").unwrap();
        assert_eq!(f.to_string(), "(1 + u)*x - 3");
        assert_eq!(parse_poly_in::<QSqrt3>(&f.to_string()).unwrap(), f);
    }
}
