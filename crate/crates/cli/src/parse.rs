//! Recursive-descent parser for exact rational-function expressions.
//!
//! Grammar (whitespace-insensitive):
//!   expr   := term (('+' | '-') term)*
//!   term   := unary (('*' | '/') unary)*
//!   unary  := '-' unary | power
//!   power  := atom ('^' int)?          -- '^' binds tighter than '*'
//!   atom   := integer | 'x' | 'zeta' '(' uint ')' | 'root' '(' rational ',' uint ')'
//!           | '(' expr ')'
//!
//! `root(r, k)` denotes the positive real k-th root of the positive rational
//! r; k must be a power of the session radix.

use mahler_core::constants::algconst::AlgConst;
use mahler_core::constants::rat::{is_p_power, Rat};
use mahler_core::error::{Error, Result};
use mahler_core::ratfun::RatFun;
#[cfg(test)]
use mahler_core::ratfun::Poly;
use num::BigInt;

pub fn parse_expr(input: &str, p: u32) -> Result<RatFun> {
    let mut parser = Parser { chars: input.char_indices().collect(), pos: 0, input, p };
    let expr = parser.expr()?;
    parser.skip_ws();
    if parser.pos < parser.chars.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    Ok(expr)
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    input: &'a str,
    p: u32,
}

impl<'a> Parser<'a> {
    fn error(&self, msg: &str) -> Error {
        let pos = self.chars.get(self.pos).map(|(i, _)| *i).unwrap_or(self.input.len());
        Error::ParseError { pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while matches!(self.chars.get(self.pos), Some((_, c)) if c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).map(|(_, c)| *c)
    }

    fn bump(&mut self) -> Option<char> {
        self.skip_ws();
        let c = self.chars.get(self.pos).map(|(_, c)| *c);
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn eat(&mut self, expected: char) -> Result<()> {
        match self.bump() {
            Some(c) if c == expected => Ok(()),
            _ => Err(self.error(&format!("expected '{}'", expected))),
        }
    }

    fn expr(&mut self) -> Result<RatFun> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some('+') => {
                    self.bump();
                    acc = acc.add(&self.term()?)?;
                }
                Some('-') => {
                    self.bump();
                    acc = acc.sub(&self.term()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RatFun> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.bump();
                    acc = acc.mul(&self.unary()?)?;
                }
                Some('/') => {
                    self.bump();
                    let rhs = self.unary()?;
                    if rhs.is_zero() {
                        return Err(Error::ZeroDivision);
                    }
                    acc = acc.div(&rhs)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<RatFun> {
        if self.peek() == Some('-') {
            self.bump();
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<RatFun> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.bump();
            let e = self.signed_int()?;
            let e32: i32 =
                e.try_into().map_err(|_| self.error("exponent out of range"))?;
            if e32 < 0 && base.is_zero() {
                return Err(Error::ZeroDivision);
            }
            return base.pow_i(e32);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RatFun> {
        match self.peek() {
            Some('(') => {
                self.bump();
                let inner = self.expr()?;
                self.eat(')')?;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.unsigned_int()?;
                Ok(RatFun::constant(AlgConst::from_rat(Rat::from_integer(n))))
            }
            Some('x') => {
                self.bump();
                Ok(RatFun::x())
            }
            Some('z') => {
                self.keyword("zeta")?;
                self.eat('(')?;
                let n = self.unsigned_int()?;
                self.eat(')')?;
                let n: u32 = (&n).try_into().map_err(|_| self.error("conductor too large"))?;
                if n == 0 {
                    return Err(self.error("zeta conductor must be positive"));
                }
                Ok(RatFun::constant(AlgConst::zeta(n, 1)))
            }
            Some('r') => {
                self.keyword("root")?;
                self.eat('(')?;
                let num = self.unsigned_int()?;
                let radicand = if self.peek() == Some('/') {
                    self.bump();
                    let den = self.unsigned_int()?;
                    Rat::new(num, den)
                } else {
                    Rat::from_integer(num)
                };
                self.eat(',')?;
                let k = self.unsigned_int()?;
                self.eat(')')?;
                let k: u64 = (&k).try_into().map_err(|_| self.error("radical index too large"))?;
                if radicand <= Rat::from_integer(BigInt::from(0)) {
                    return Err(Error::UnsupportedAlgebraicPoint(
                        "negative radicand: use zeta factors for signs".into(),
                    ));
                }
                let Some(h) = is_p_power(k, self.p) else {
                    return Err(Error::UnsupportedRadicalIndex(format!(
                        "{} is not a power of the radix {}",
                        k, self.p
                    )));
                };
                Ok(RatFun::constant(AlgConst::radical_gen(self.p, radicand, h)))
            }
            _ => Err(self.error("expected a number, x, zeta(N), root(r,k) or '('")),
        }
    }

    fn keyword(&mut self, word: &str) -> Result<()> {
        self.skip_ws();
        for expected in word.chars() {
            match self.chars.get(self.pos) {
                Some((_, c)) if *c == expected => self.pos += 1,
                _ => return Err(self.error(&format!("expected '{}'", word))),
            }
        }
        Ok(())
    }

    fn unsigned_int(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.chars.get(self.pos), Some((_, c)) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        let digits: String = self.chars[start..self.pos].iter().map(|(_, c)| *c).collect();
        digits.parse::<BigInt>().map_err(|_| self.error("invalid integer"))
    }

    fn signed_int(&mut self) -> Result<i64> {
        let negative = if self.peek() == Some('-') {
            self.bump();
            true
        } else {
            false
        };
        let n = self.unsigned_int()?;
        let v: i64 = (&n).try_into().map_err(|_| self.error("exponent out of range"))?;
        Ok(if negative { -v } else { v })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use mahler_core::constants::algconst::AlgConst;
    use mahler_core::constants::rat::rat_i;

    fn c(n: i64) -> AlgConst {
        AlgConst::from_i64(n)
    }

    #[test]
    fn basic_forms() {
        let f = parse_expr("1/(x-2)^2", 3).unwrap();
        let lin = Poly::from_coeffs([(1, c(1)), (0, c(-2))]).unwrap();
        let expect = RatFun::new(Poly::one(), vec![(lin, 2)]).unwrap();
        assert!(f.equals(&expect).unwrap());

        let f = parse_expr("zeta(3)/(x-zeta(3))", 2).unwrap();
        assert!(!f.is_zero());

        // precedence: ^ over *, left-assoc * and /
        let f = parse_expr("2*x^2", 2).unwrap();
        let expect = RatFun::from_poly(Poly::monomial(2, c(2)));
        assert!(f.equals(&expect).unwrap());

        let f = parse_expr("1/2*x", 2).unwrap();
        let expect = RatFun::from_poly(Poly::monomial(1, AlgConst::from_rat(
            mahler_core::constants::rat::rat(1, 2),
        )));
        assert!(f.equals(&expect).unwrap());
    }

    #[test]
    fn radical_atoms() {
        let f = parse_expr("root(2,3)", 3).unwrap();
        let rho = AlgConst::radical_gen(3, rat_i(2), 1);
        assert!(f.equals(&RatFun::constant(rho)).unwrap());
        assert!(matches!(
            parse_expr("root(2,3)", 2),
            Err(Error::UnsupportedRadicalIndex(_))
        ));
        // rational radicand
        assert!(parse_expr("root(3/2,2)", 2).is_ok());
    }

    #[test]
    fn error_positions() {
        match parse_expr("1/(x-2", 2) {
            Err(Error::ParseError { pos, .. }) => assert_eq!(pos, 6),
            other => panic!("expected parse error, got {:?}", other),
        }
        assert!(matches!(parse_expr("", 2), Err(Error::ParseError { .. })));
        assert!(matches!(parse_expr("x + y", 2), Err(Error::ParseError { .. })));
    }

    #[test]
    fn nonsummable1_input() {
        let f = parse_expr("(-2*x^4+2*x^2+1)/((x^2+1)*(x^4-x^2+1))", 3).unwrap();
        let pfd = mahler_core::ratfun::pf_decompose(&f, 3).unwrap();
        assert_eq!(pfd.poles.len(), 6);
    }
}
