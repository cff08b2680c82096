//! A small expression parser for writing polynomials in tests and docs.
//!
//! Grammar: sums of products of powers of atoms; atoms are integer literals,
//! variables, or parenthesized expressions. Variables are `x0, x1, …` for
//! block 0, `y…` for block 1, then `z`, `w`, `u`, `v`.
//!
//! ```
//! use cremona::polyring::{parse_poly, BlockShape};
//! let shape = BlockShape::new(vec![3]).unwrap();
//! let p = parse_poly(&shape, "(x0 + x1)^2 - x2^2").unwrap();
//! assert_eq!(p.num_terms(), 4);
//! ```

use super::{BlockShape, PolyError, Polynomial};
use crate::limits::Limits;
use num_bigint::BigInt;

const BLOCK_LETTERS: [char; 6] = ['x', 'y', 'z', 'w', 'u', 'v'];

struct Parser<'a> {
    shape: &'a BlockShape,
    chars: Vec<char>,
    pos: usize,
}

pub fn parse_poly(shape: &BlockShape, input: &str) -> Result<Polynomial, PolyError> {
    let mut p = Parser {
        shape,
        chars: input.chars().collect(),
        pos: 0,
    };
    let poly = p.sum()?;
    p.skip_ws();
    if p.pos != p.chars.len() {
        return Err(PolyError::Parse(format!(
            "unexpected input at offset {}",
            p.pos
        )));
    }
    Ok(poly)
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn sum(&mut self) -> Result<Polynomial, PolyError> {
        let mut neg = false;
        if let Some(c) = self.peek() {
            if c == '+' || c == '-' {
                self.pos += 1;
                neg = c == '-';
            }
        }
        let mut acc = self.product()?;
        if neg {
            acc = acc.neg();
        }
        while let Some(c) = self.peek() {
            if c != '+' && c != '-' {
                break;
            }
            self.pos += 1;
            let term = self.product()?;
            acc = if c == '+' {
                acc.add(&term)?
            } else {
                acc.sub(&term)?
            };
        }
        Ok(acc)
    }

    fn product(&mut self) -> Result<Polynomial, PolyError> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    let f = self.power()?;
                    acc = acc.mul(&f, &Limits::DESK)?;
                }
                // Juxtaposition with a variable or parenthesis also multiplies.
                Some(c) if c == '(' || BLOCK_LETTERS.contains(&c) => {
                    let f = self.power()?;
                    acc = acc.mul(&f, &Limits::DESK)?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Polynomial, PolyError> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let e = self.integer()?;
            let e: u32 = e
                .try_into()
                .map_err(|_| PolyError::Parse("exponent out of range".into()))?;
            return base.pow(e, &Limits::DESK);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial, PolyError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.sum()?;
                if self.peek() != Some(')') {
                    return Err(PolyError::Parse("expected ')'".into()));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(Polynomial::constant(self.shape.clone(), BigInt::from(n)))
            }
            Some(c) if BLOCK_LETTERS.contains(&c) => {
                let block = BLOCK_LETTERS.iter().position(|&l| l == c).unwrap();
                if block >= self.shape.num_blocks() {
                    return Err(PolyError::Parse(format!("no block for variable '{c}'")));
                }
                self.pos += 1;
                let idx = self.integer()? as usize;
                let range = self.shape.block_range(block);
                if idx >= range.len() {
                    return Err(PolyError::Parse(format!("coordinate {c}{idx} out of range")));
                }
                Ok(Polynomial::variable(
                    self.shape.clone(),
                    range.start + idx,
                ))
            }
            other => Err(PolyError::Parse(format!("unexpected token {other:?}"))),
        }
    }

    fn integer(&mut self) -> Result<i64, PolyError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(PolyError::Parse("expected integer".into()));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse()
            .map_err(|_| PolyError::Parse("integer out of range".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_multiblock() {
        let shape = BlockShape::new(vec![4, 2]).unwrap();
        let p = parse_poly(&shape, "x0*y0 - x3*y1").unwrap();
        assert_eq!(p.num_terms(), 2);
        assert_eq!(p.multidegree().unwrap(), &[1, 1]);
    }

    #[test]
    fn parses_parentheses_and_powers() {
        let shape = BlockShape::new(vec![2]).unwrap();
        let a = parse_poly(&shape, "(x0 + x1)^2").unwrap();
        let b = parse_poly(&shape, "x0^2 + 2*x0*x1 + x1^2").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_out_of_range() {
        let shape = BlockShape::new(vec![2]).unwrap();
        assert!(parse_poly(&shape, "x2").is_err());
        assert!(parse_poly(&shape, "y0").is_err());
    }
}
