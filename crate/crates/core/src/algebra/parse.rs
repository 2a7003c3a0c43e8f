//! Recursive-descent parser for polynomials such as `x^4 - 3/2*y^2 + 2xy`.
//!
//! Multiplication may be implicit, and an identifier that is not a variable
//! is split into a product of variable names when possible (`xy` = `x*y`).

use num_bigint::BigInt;
use num_traits::One;

use crate::algebra::poly::Poly;
use crate::error::{Error, Result};
use crate::linalg::Field;

/// Parses `text` with the given variable names.
pub fn parse_poly<F: Field>(field: &F, vars: &[String], text: &str) -> Result<Poly<F>> {
    parse_poly_at(field, vars, text, 1, 1, false)
}

/// Like [`parse_poly`], reporting positions relative to (`line`, `column`);
/// with `fold_case` an upper-case identifier matches the lower-case variable.
pub fn parse_poly_at<F: Field>(
    field: &F,
    vars: &[String],
    text: &str,
    line: usize,
    column: usize,
    fold_case: bool,
) -> Result<Poly<F>> {
    let mut p = Parser {
        field,
        vars,
        chars: text.chars().collect(),
        pos: 0,
        line,
        column,
        fold_case,
    };
    p.skip_ws();
    if p.peek().is_none() {
        return Err(p.err("empty polynomial"));
    }
    let out = p.expr()?;
    p.skip_ws();
    if let Some(c) = p.peek() {
        return Err(p.err(&format!("unexpected character '{c}'")));
    }
    Ok(out)
}

struct Parser<'a, F: Field> {
    field: &'a F,
    vars: &'a [String],
    chars: Vec<char>,
    pos: usize,
    line: usize,
    column: usize,
    fold_case: bool,
}

impl<F: Field> Parser<'_, F> {
    fn err(&self, message: &str) -> Error {
        Error::Parse {
            line: self.line,
            column: self.column + self.pos,
            message: message.to_string(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn nvars(&self) -> usize {
        self.vars.len()
    }

    fn expr(&mut self) -> Result<Poly<F>> {
        self.skip_ws();
        let mut neg = false;
        if let Some(c @ ('+' | '-')) = self.peek() {
            neg = c == '-';
            self.pos += 1;
        }
        let mut acc = self.term()?;
        if neg {
            acc = acc.neg(self.field);
        }
        loop {
            self.skip_ws();
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.add(self.field, &t);
                }
                Some('-') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.sub(self.field, &t);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly<F>> {
        let mut acc = self.factor()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = acc.mul(self.field, &f);
                }
                Some(c) if c.is_ascii_alphanumeric() || c == '(' || c == '_' => {
                    let f = self.factor()?;
                    acc = acc.mul(self.field, &f);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Poly<F>> {
        let base = self.primary()?;
        self.skip_ws();
        if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            let digits = self.digits();
            if digits.is_empty() {
                return Err(self.err("expected an exponent"));
            }
            let e: u32 = digits.parse().map_err(|_| Error::Parse {
                line: self.line,
                column: self.column + start,
                message: "exponent too large".into(),
            })?;
            return Ok(base.pow(self.field, e));
        }
        Ok(base)
    }

    fn digits(&mut self) -> String {
        let mut s = String::new();
        while let Some(c) = self.peek().filter(|c| c.is_ascii_digit()) {
            s.push(c);
            self.pos += 1;
        }
        s
    }

    fn primary(&mut self) -> Result<Poly<F>> {
        self.skip_ws();
        let n = self.nvars();
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.skip_ws();
                if self.peek() != Some(')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                let num: BigInt = self.digits().parse().expect("digits");
                let mut den = BigInt::one();
                let save = self.pos;
                self.skip_ws();
                if self.peek() == Some('/') {
                    self.pos += 1;
                    self.skip_ws();
                    let d = self.digits();
                    if d.is_empty() {
                        return Err(self.err("expected a denominator"));
                    }
                    den = d.parse().expect("digits");
                } else {
                    self.pos = save;
                }
                let c = self.field.from_ratio(&num, &den).map_err(|e| Error::Parse {
                    line: self.line,
                    column: self.column + start,
                    message: e.to_string(),
                })?;
                Ok(Poly::constant(self.field, n, c))
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                let start = self.pos;
                let mut ident = String::new();
                while let Some(c) = self.peek().filter(|c| c.is_ascii_alphanumeric() || *c == '_') {
                    ident.push(c);
                    self.pos += 1;
                }
                let exps = self.split_ident(&ident).ok_or_else(|| Error::Parse {
                    line: self.line,
                    column: self.column + start,
                    message: format!("unknown variable '{ident}'"),
                })?;
                let mut m = vec![0u32; n];
                for i in exps {
                    m[i] += 1;
                }
                Ok(Poly::monomial(self.field, m, self.field.one()))
            }
            Some(c) => Err(self.err(&format!("unexpected character '{c}'"))),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn var_index(&self, name: &str) -> Option<usize> {
        self.vars
            .iter()
            .position(|v| v == name)
            .or_else(|| {
                if self.fold_case {
                    self.vars.iter().position(|v| v.eq_ignore_ascii_case(name))
                } else {
                    None
                }
            })
    }

    /// Splits an identifier into variable names, preferring longer names.
    fn split_ident(&self, ident: &str) -> Option<Vec<usize>> {
        if let Some(i) = self.var_index(ident) {
            return Some(vec![i]);
        }
        let bytes = ident.len();
        for cut in (1..bytes).rev() {
            if !ident.is_char_boundary(cut) {
                continue;
            }
            if let Some(i) = self.var_index(&ident[..cut]) {
                if let Some(mut rest) = self.split_ident(&ident[cut..]) {
                    rest.insert(0, i);
                    return Some(rest);
                }
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{PrimeField, Rationals};

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn parses_and_prints() {
        let f = PrimeField::default();
        let v = names(&["x", "y"]);
        let p = parse_poly(&f, &v, "x^4 - y^2").unwrap();
        assert_eq!(p.format(&f, &v), "x^4 - y^2");
        let q = parse_poly(&f, &v, "2xy + (x - y)^2").unwrap();
        assert_eq!(q.format(&f, &v), "x^2 + y^2");
        let r = parse_poly(&f, &v, "-3 x*x y").unwrap();
        assert_eq!(r.format(&f, &v), "-3*x^2*y");
    }

    #[test]
    fn rational_coefficients() {
        let q = Rationals;
        let v = names(&["x"]);
        let p = parse_poly(&q, &v, "3/4*x^2 - 1/2").unwrap();
        assert_eq!(p.format(&q, &v), "3/4*x^2 - 1/2");
    }

    #[test]
    fn case_folding_and_errors() {
        let f = PrimeField::default();
        let v = names(&["x", "y"]);
        let p = parse_poly_at(&f, &v, "X*Y", 1, 1, true).unwrap();
        assert_eq!(p.format(&f, &v), "x*y");
        match parse_poly(&f, &v, "x + z") {
            Err(Error::Parse { line: 1, column: 5, message }) => assert!(message.contains("'z'")),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_poly(&f, &v, "x^").is_err());
        assert!(parse_poly(&f, &v, "(x").is_err());
        assert!(parse_poly(&f, &v, "").is_err());
    }
}
