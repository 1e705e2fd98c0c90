//! Exact-scalar expression parser.
//!
//! Grammar (whitespace allowed between tokens):
//!
//! ```text
//! expr  := [sign] term { ("+" | "-") term }
//! term  := coeff [ "*" root ] | root
//! root  := "E(" uint ")" [ "^" int ]
//! coeff := int [ "/" uint ]
//! ```
//!
//! `E(n)` denotes the first primitive n-th root of unity, matching common
//! computer-algebra notation, so tables can be pasted from such systems
//! verbatim.  The printer in [`fourier_core`] emits exactly this grammar,
//! giving a parse∘print identity on every value.

use fourier_core::Cyclotomic;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

/// A syntax error with 1-based line and column of the offending byte.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at line {line}, column {col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

/// Parses one scalar expression; positions are reported on line 1.
pub fn parse_scalar(text: &str) -> Result<Cyclotomic, ParseError> {
    parse_scalar_at(text, 1, 0)
}

/// Parses one scalar expression embedded in a larger document: `line` is
/// the 1-based line number and `col_offset` the number of columns
/// preceding `text` on that line.
pub fn parse_scalar_at(
    text: &str,
    line: usize,
    col_offset: usize,
) -> Result<Cyclotomic, ParseError> {
    let mut scanner = Scanner { bytes: text.as_bytes(), pos: 0, line, col_offset };
    let value = scanner.parse_expr()?;
    scanner.skip_ws();
    if scanner.pos < scanner.bytes.len() {
        return Err(scanner.error("unexpected trailing input"));
    }
    Ok(value)
}

struct Scanner<'a> {
    bytes: &'a [u8],
    pos: usize,
    line: usize,
    col_offset: usize,
}

impl Scanner<'_> {
    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            line: self.line,
            col: self.col_offset + self.pos + 1,
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn bump(&mut self) {
        self.pos += 1;
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ') | Some(b'\t')) {
            self.bump();
        }
    }

    fn expect(&mut self, byte: u8, what: &str) -> Result<(), ParseError> {
        if self.peek() == Some(byte) {
            self.bump();
            Ok(())
        } else {
            Err(self.error(format!("expected {what}")))
        }
    }

    /// Optional leading sign; returns −1 for a consumed minus.
    fn sign(&mut self) -> i32 {
        match self.peek() {
            Some(b'+') => {
                self.bump();
                1
            }
            Some(b'-') => {
                self.bump();
                -1
            }
            _ => 1,
        }
    }

    fn digits(&mut self) -> Result<BigInt, ParseError> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.bump();
        }
        if self.pos == start {
            return Err(self.error("expected a digit"));
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits");
        Ok(text.parse::<BigInt>().expect("digit strings are valid integers"))
    }

    fn parse_u64(&mut self, what: &str) -> Result<u64, ParseError> {
        let start = self.pos;
        let value = self.digits()?;
        u64::try_from(value).map_err(|_| ParseError {
            line: self.line,
            col: self.col_offset + start + 1,
            message: format!("{what} is too large"),
        })
    }

    /// coeff := int [ "/" uint ]
    fn parse_rational(&mut self) -> Result<BigRational, ParseError> {
        let sign = self.sign();
        self.skip_ws();
        let mut numerator = self.digits()?;
        if sign < 0 {
            numerator = -numerator;
        }
        if self.peek() == Some(b'/') {
            self.bump();
            self.skip_ws();
            let denom_pos = self.pos;
            let denominator = self.digits()?;
            if denominator.is_zero() {
                return Err(ParseError {
                    line: self.line,
                    col: self.col_offset + denom_pos + 1,
                    message: "zero denominator".to_string(),
                });
            }
            Ok(BigRational::new(numerator, denominator))
        } else {
            Ok(BigRational::from(numerator))
        }
    }

    /// root := "E(" uint ")" [ "^" int ]
    fn parse_root(&mut self) -> Result<Cyclotomic, ParseError> {
        self.expect(b'E', "a root of unity `E(n)`")?;
        self.expect(b'(', "`(` after `E`")?;
        self.skip_ws();
        let order_pos = self.pos;
        let order = self.parse_u64("root order")?;
        if order == 0 {
            return Err(ParseError {
                line: self.line,
                col: self.col_offset + order_pos + 1,
                message: "root order must be at least 1".to_string(),
            });
        }
        self.skip_ws();
        self.expect(b')', "`)` closing the root order")?;
        let mut exponent: i64 = 1;
        if self.peek() == Some(b'^') {
            self.bump();
            self.skip_ws();
            let sign = self.sign();
            self.skip_ws();
            let exp_pos = self.pos;
            let magnitude = self.digits()?;
            exponent = i64::try_from(magnitude).map_err(|_| ParseError {
                line: self.line,
                col: self.col_offset + exp_pos + 1,
                message: "exponent is too large".to_string(),
            })?;
            if sign < 0 {
                exponent = -exponent;
            }
        }
        Ok(Cyclotomic::root_of_unity(order, exponent))
    }

    /// term := coeff [ "*" root ] | root
    fn parse_term(&mut self) -> Result<Cyclotomic, ParseError> {
        self.skip_ws();
        if self.peek() == Some(b'E') {
            return self.parse_root();
        }
        if !matches!(self.peek(), Some(b'0'..=b'9') | Some(b'+') | Some(b'-')) {
            return Err(self.error("expected a number or a root of unity `E(n)`"));
        }
        let coeff = self.parse_rational()?;
        self.skip_ws();
        if self.peek() == Some(b'*') {
            self.bump();
            self.skip_ws();
            let root = self.parse_root()?;
            Ok(&Cyclotomic::from_rational(coeff) * &root)
        } else {
            Ok(Cyclotomic::from_rational(coeff))
        }
    }

    fn parse_expr(&mut self) -> Result<Cyclotomic, ParseError> {
        self.skip_ws();
        if self.peek().is_none() {
            return Err(self.error("empty expression"));
        }
        let leading = self.sign();
        let first = self.parse_term()?;
        let mut sum = if leading < 0 { -&first } else { first };
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'+') => {
                    self.bump();
                    let term = self.parse_term()?;
                    sum = &sum + &term;
                }
                Some(b'-') => {
                    self.bump();
                    let term = self.parse_term()?;
                    sum = &sum - &term;
                }
                _ => return Ok(sum),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> Cyclotomic {
        Cyclotomic::from_rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    #[test]
    fn parses_rationals_and_roots() {
        assert_eq!(parse_scalar("0").unwrap(), Cyclotomic::zero());
        assert_eq!(parse_scalar("-3/2").unwrap(), rat(-3, 2));
        assert_eq!(parse_scalar("E(3)").unwrap(), Cyclotomic::root_of_unity(3, 1));
        assert_eq!(parse_scalar("E(8)^3").unwrap(), Cyclotomic::root_of_unity(8, 3));
        assert_eq!(parse_scalar("E(8)^-3").unwrap(), Cyclotomic::root_of_unity(8, -3));
        assert_eq!(parse_scalar(" 1 ").unwrap(), Cyclotomic::one());
    }

    #[test]
    fn parses_sums_with_coefficients() {
        let expected = &rat(1, 2)
            + &(&rat(3, 2) * &Cyclotomic::root_of_unity(8, 3));
        assert_eq!(parse_scalar("1/2 + 3/2*E(8)^3").unwrap(), expected);
        let sqrt2 = Cyclotomic::sqrt_nonneg_rational(&BigRational::from(BigInt::from(2))).unwrap();
        assert_eq!(parse_scalar("E(8) - E(8)^3").unwrap(), sqrt2);
        assert_eq!(parse_scalar("-E(4)").unwrap(), -&Cyclotomic::root_of_unity(4, 1));
        assert_eq!(parse_scalar("2 - 2").unwrap(), Cyclotomic::zero());
    }

    #[test]
    fn printer_output_reparses_to_the_same_value() {
        let samples = vec![
            rat(-7, 3),
            Cyclotomic::root_of_unity(12, 7),
            &Cyclotomic::root_of_unity(5, 2) + &rat(2, 9),
            Cyclotomic::sqrt_nonneg_rational(&BigRational::new(5.into(), 8.into())).unwrap(),
            Cyclotomic::zero(),
        ];
        for value in samples {
            let printed = value.to_string();
            assert_eq!(parse_scalar(&printed).unwrap(), value, "{printed}");
        }
    }

    #[test]
    fn errors_carry_positions() {
        let err = parse_scalar("1 + @").unwrap_err();
        assert_eq!((err.line, err.col), (1, 5));
        let err = parse_scalar("E(0)").unwrap_err();
        assert_eq!(err.col, 3);
        assert!(err.message.contains("at least 1"));
        let err = parse_scalar("1/0").unwrap_err();
        assert_eq!(err.col, 3);
        let err = parse_scalar("").unwrap_err();
        assert_eq!(err.col, 1);
        let err = parse_scalar("E(4").unwrap_err();
        assert!(err.message.contains("closing"));
        let err = parse_scalar_at("E(", 7, 10).unwrap_err();
        assert_eq!(err.line, 7);
        assert_eq!(err.col, 13);
    }
}
