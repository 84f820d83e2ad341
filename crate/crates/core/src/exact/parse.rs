//! Recursive-descent reader for the polynomial text form.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! expr    := ['+'|'-'] term (('+'|'-') term)*
//! term    := factor (('*'|'/') factor)*
//! factor  := primary ['^' ['-'] digits]
//! primary := digits | 'x' digits | '(' expr ')'
//! ```
//!
//! Division must be exact in the Laurent ring; negative powers are only
//! allowed on unit monomials.

use num_bigint::BigInt;

use super::laurent::{LaurentError, LaurentPoly};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    nvars: usize,
}

pub(super) fn parse(text: &str, nvars: usize) -> Result<LaurentPoly, LaurentError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, nvars };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(out)
}

impl Parser<'_> {
    fn error(&self, message: &str) -> LaurentError {
        LaurentError::Parse { position: self.pos, message: message.to_string() }
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

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Result<&str, LaurentError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits"))
    }

    fn expr(&mut self) -> Result<LaurentPoly, LaurentError> {
        let mut acc = if self.eat(b'-') {
            -&self.term()?
        } else {
            self.eat(b'+');
            self.term()?
        };
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<LaurentPoly, LaurentError> {
        let mut acc = self.factor()?;
        loop {
            if self.eat(b'*') {
                acc = &acc * &self.factor()?;
            } else if self.eat(b'/') {
                let at = self.pos;
                let d = self.factor()?;
                acc = acc.div_exact(&d).map_err(|e| match e {
                    LaurentError::Parse { .. } => e,
                    other => LaurentError::Parse { position: at, message: other.to_string() },
                })?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<LaurentPoly, LaurentError> {
        let base = self.primary()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let negative = self.eat(b'-');
        let e: u32 = self
            .digits()?
            .parse()
            .map_err(|_| self.error("exponent too large"))?;
        if !negative {
            return Ok(base.pow(e));
        }
        match base.as_unit_monomial() {
            Some(_) => LaurentPoly::one(self.nvars)
                .div_exact(&base.pow(e))
                .map_err(|err| self.error(&err.to_string())),
            None => Err(self.error("negative power of a non-monomial is not a Laurent polynomial")),
        }
    }

    fn primary(&mut self) -> Result<LaurentPoly, LaurentError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(inner)
            }
            Some(b'x') => {
                self.pos += 1;
                let idx: usize = self.digits()?.parse().map_err(|_| self.error("bad variable index"))?;
                if idx == 0 || idx > self.nvars {
                    return Err(self.error(&format!("variable x{} outside x1..x{}", idx, self.nvars)));
                }
                Ok(LaurentPoly::var(self.nvars, idx - 1))
            }
            Some(b) if b.is_ascii_digit() => {
                let c: BigInt = self.digits()?.parse().expect("digits parse as integer");
                Ok(LaurentPoly::constant(self.nvars, c))
            }
            _ => Err(self.error("expected number, variable or '('")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_input() {
        assert!(parse("x5", 4).is_err());
        assert!(parse("x0", 4).is_err());
        assert!(parse("(x1+1)^-1", 2).is_err());
        assert!(parse("x1+", 2).is_err());
        assert!(parse("(x1", 2).is_err());
        assert!(parse("x1 x2", 2).is_err());
        assert!(parse("(x1+1)/(x1+2)", 2).is_err());
    }

    #[test]
    fn accepts_whitespace_and_signs() {
        let a = parse(" - x1 + 3 * x2 ^ 2 ", 2).unwrap();
        assert_eq!(a.to_string(), "3*x2^2-x1");
        assert_eq!(parse("+x1", 1).unwrap(), LaurentPoly::var(1, 0));
    }
}
