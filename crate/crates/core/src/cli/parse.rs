//! Text format for rational-function matrices.
//!
//! ```text
//! matrix := row (';' row)*
//! row    := expr (',' expr)*
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('-' | '+') unary | power
//! power  := atom ('^' exponent)?
//! exponent := '-'? INT | '(' '-'? INT ')'
//! atom   := INT | 'z' | '(' expr ')'
//! ```
//!
//! `#` starts a comment running to the end of the line.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exact::{RatFun, Rational};
use crate::system::RatMat;

pub const MAX_DEPTH: usize = 64;
pub const MAX_EXPONENT: i64 = 4096;
pub const MAX_DEGREE: usize = 4096;
pub const MAX_DIGITS: usize = 256;
pub const MAX_DIM: usize = 64;
/// Bound on `|e| * bits` for a power with exponent `e`.
const MAX_POWER_BITS: u64 = 1 << 16;

fn coeff_bits(f: &RatFun) -> u64 {
    f.num()
        .coeffs()
        .iter()
        .chain(f.den().coeffs())
        .map(|c| c.numer().bits().max(c.denom().bits()))
        .max()
        .unwrap_or(0)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    depth: usize,
}

impl Parser {
    fn new(src: &str) -> Self {
        Parser {
            chars: src.chars().collect(),
            pos: 0,
            depth: 0,
        }
    }

    fn location(&self, at: usize) -> (usize, usize) {
        let (mut line, mut column) = (1, 1);
        for &c in &self.chars[..at.min(self.chars.len())] {
            if c == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
        }
        (line, column)
    }

    fn error_at(&self, at: usize, message: impl Into<String>) -> Error {
        let (line, column) = self.location(at);
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while let Some(&c) = self.chars.get(self.pos) {
            if c == '#' {
                while self.chars.get(self.pos).is_some_and(|&c| c != '\n') {
                    self.pos += 1;
                }
            } else if c.is_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.unexpected(&format!("'{c}'")))
        }
    }

    fn unexpected(&mut self, wanted: &str) -> Error {
        let at = {
            self.skip_ws();
            self.pos
        };
        match self.chars.get(at) {
            Some(c) => self.error_at(at, format!("expected {wanted}, found '{c}'")),
            None => self.error_at(at, format!("expected {wanted}, found end of input")),
        }
    }

    fn matrix(&mut self) -> Result<Vec<Vec<RatFun>>> {
        let mut rows = vec![self.row()?];
        while self.eat(';') {
            if self.peek().is_none() {
                break;
            }
            rows.push(self.row()?);
        }
        if self.peek().is_some() {
            return Err(self.unexpected("',', ';' or end of input"));
        }
        Ok(rows)
    }

    fn row(&mut self) -> Result<Vec<RatFun>> {
        let mut row = vec![self.expr()?];
        while self.eat(',') {
            if row.len() >= MAX_DIM {
                return Err(self.error_at(self.pos, format!("more than {MAX_DIM} columns")));
            }
            row.push(self.expr()?);
        }
        Ok(row)
    }

    fn enter(&mut self) -> Result<()> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(self.error_at(self.pos, format!("nesting deeper than {MAX_DEPTH}")));
        }
        Ok(())
    }

    fn expr(&mut self) -> Result<RatFun> {
        self.enter()?;
        let mut acc = self.term()?;
        loop {
            let start = self.pos;
            if self.eat('+') {
                let rhs = self.term()?;
                acc = self.checked(start, &acc + &rhs)?;
            } else if self.eat('-') {
                let rhs = self.term()?;
                acc = self.checked(start, &acc - &rhs)?;
            } else {
                break;
            }
        }
        self.depth -= 1;
        Ok(acc)
    }

    fn term(&mut self) -> Result<RatFun> {
        let mut acc = self.unary()?;
        loop {
            self.skip_ws();
            let start = self.pos;
            if self.eat('*') {
                let rhs = self.unary()?;
                self.check_sum(start, &acc, &rhs)?;
                acc = &acc * &rhs;
            } else if self.eat('/') {
                let rhs = self.unary()?;
                self.check_sum(start, &acc, &rhs)?;
                acc = acc
                    .checked_div(&rhs)
                    .map_err(|_| self.error_at(start, "division by zero"))?;
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<RatFun> {
        self.enter()?;
        let v = if self.eat('-') {
            -self.unary()?
        } else if self.eat('+') {
            self.unary()?
        } else {
            self.power()?
        };
        self.depth -= 1;
        Ok(v)
    }

    fn power(&mut self) -> Result<RatFun> {
        let base = self.atom()?;
        self.skip_ws();
        let start = self.pos;
        if !self.eat('^') {
            return Ok(base);
        }
        let e = if self.eat('(') {
            let e = self.signed_int()?;
            self.expect(')')?;
            e
        } else {
            self.signed_int()?
        };
        let size = base.num().degree().unwrap_or(0).max(base.den().degree().unwrap_or(0));
        if e.unsigned_abs() as usize * size > MAX_DEGREE {
            return Err(self.error_at(start, format!("power exceeds degree {MAX_DEGREE}")));
        }
        if e.unsigned_abs() * coeff_bits(&base) > MAX_POWER_BITS {
            return Err(self.error_at(start, "power has oversized coefficients"));
        }
        base.pow(e).map_err(|_| self.error_at(start, "negative power of zero"))
    }

    fn signed_int(&mut self) -> Result<i64> {
        let neg = self.eat('-');
        self.skip_ws();
        let start = self.pos;
        let digits = self.digits()?;
        let value: i64 = digits
            .parse()
            .ok()
            .filter(|v| *v <= MAX_EXPONENT)
            .ok_or_else(|| self.error_at(start, format!("exponent larger than {MAX_EXPONENT}")))?;
        Ok(if neg { -value } else { value })
    }

    fn digits(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(char::is_ascii_digit) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.unexpected("an integer"));
        }
        if self.pos - start > MAX_DIGITS {
            return Err(self.error_at(start, format!("integer longer than {MAX_DIGITS} digits")));
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }

    fn atom(&mut self) -> Result<RatFun> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let digits = self.digits()?;
                let n: BigInt = digits.parse().expect("ascii digits");
                Ok(RatFun::constant(Rational::from_integer(n)))
            }
            Some('z') => {
                self.pos += 1;
                Ok(RatFun::z())
            }
            Some('(') => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect(')')?;
                Ok(v)
            }
            _ => Err(self.unexpected("a number, 'z' or '('")),
        }
    }

    fn check_sum(&self, at: usize, a: &RatFun, b: &RatFun) -> Result<()> {
        let size = |f: &RatFun| f.num().degree().unwrap_or(0) + f.den().degree().unwrap_or(0);
        if size(a) + size(b) > MAX_DEGREE {
            return Err(self.error_at(at, format!("degree exceeds {MAX_DEGREE}")));
        }
        Ok(())
    }

    fn checked(&self, at: usize, f: RatFun) -> Result<RatFun> {
        if f.num().degree().unwrap_or(0) > MAX_DEGREE || f.den().degree().unwrap_or(0) > MAX_DEGREE {
            return Err(self.error_at(at, format!("degree exceeds {MAX_DEGREE}")));
        }
        Ok(f)
    }
}

/// Parses a square matrix of rational functions in `z`.
pub fn parse_matrix(text: &str) -> Result<RatMat> {
    let mut parser = Parser::new(text);
    let rows = parser.matrix()?;
    if rows.len() > MAX_DIM {
        return Err(Error::DimensionMismatch(format!("more than {MAX_DIM} rows")));
    }
    let width = rows[0].len();
    if let Some(i) = rows.iter().position(|r| r.len() != width) {
        return Err(Error::DimensionMismatch(format!(
            "ragged rows: row 1 has {width} entries, row {} has {}",
            i + 1,
            rows[i].len()
        )));
    }
    if rows.len() != width {
        return Err(Error::DimensionMismatch(format!(
            "matrix must be square, got {}x{width}",
            rows.len()
        )));
    }
    RatMat::from_rows(rows)
}
