//! Integer polynomial expressions in named variables.
//!
//! Grammar: sums and differences of products of powers, with parentheses and
//! integer constants, e.g. `t*(p1^2 - 2*p2)` or `w11*w6*w3 + w11*w2^4`.
//! Callers decide which identifiers are meaningful and reduce coefficients
//! to their field.

use std::collections::BTreeMap;

use thiserror::Error;

/// A monomial as a map from variable name to positive exponent.
pub type Monomial = BTreeMap<String, u32>;

/// Integer-coefficient polynomial; zero coefficients are never stored.
pub type IntPoly = BTreeMap<Monomial, i64>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message} at column {column} in `{input}`")]
pub struct ExprError {
    pub input: String,
    /// 1-based character column.
    pub column: usize,
    pub message: String,
}

struct Parser<'a> {
    input: &'a str,
    chars: Vec<char>,
    pos: usize,
}

fn add_into(acc: &mut IntPoly, mono: Monomial, coeff: i64) -> Option<()> {
    let entry = acc.entry(mono.clone()).or_insert(0);
    *entry = entry.checked_add(coeff)?;
    if *entry == 0 {
        acc.remove(&mono);
    }
    Some(())
}

fn mul(a: &IntPoly, b: &IntPoly) -> Option<IntPoly> {
    let mut out = IntPoly::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            let mut m = ma.clone();
            for (v, e) in mb {
                *m.entry(v.clone()).or_insert(0) += e;
            }
            add_into(&mut out, m, ca.checked_mul(*cb)?)?;
        }
    }
    Some(out)
}

fn constant(c: i64) -> IntPoly {
    let mut p = IntPoly::new();
    if c != 0 {
        p.insert(Monomial::new(), c);
    }
    p
}

impl<'a> Parser<'a> {
    fn error(&self, message: impl Into<String>) -> ExprError {
        ExprError {
            input: self.input.to_string(),
            column: self.pos + 1,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn overflow(&self) -> ExprError {
        self.error("coefficient overflow")
    }

    fn expr(&mut self) -> Result<IntPoly, ExprError> {
        let mut acc = IntPoly::new();
        let mut sign = 1i64;
        if self.peek() == Some('-') {
            self.pos += 1;
            sign = -1;
        }
        loop {
            let t = self.term()?;
            for (m, c) in t {
                add_into(&mut acc, m, c * sign).ok_or_else(|| self.overflow())?;
            }
            match self.peek() {
                Some('+') => sign = 1,
                Some('-') => sign = -1,
                _ => break,
            }
            self.pos += 1;
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<IntPoly, ExprError> {
        let mut acc = self.factor()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            let f = self.factor()?;
            acc = mul(&acc, &f).ok_or_else(|| self.overflow())?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<IntPoly, ExprError> {
        let base = self.atom()?;
        if self.peek() != Some('^') {
            return Ok(base);
        }
        self.pos += 1;
        self.skip_ws();
        let n = self.integer()?;
        let n = u32::try_from(n).map_err(|_| self.error("exponent too large"))?;
        let mut acc = constant(1);
        for _ in 0..n {
            acc = mul(&acc, &base).ok_or_else(|| self.overflow())?;
        }
        Ok(acc)
    }

    fn integer(&mut self) -> Result<i64, ExprError> {
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| self.error("integer too large"))
    }

    fn atom(&mut self) -> Result<IntPoly, ExprError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => Ok(constant(self.integer()?)),
            Some(c) if c.is_alphabetic() || c == '_' => {
                let start = self.pos;
                while self.pos < self.chars.len()
                    && (self.chars[self.pos].is_alphanumeric()
                        || self.chars[self.pos] == '_'
                        || self.chars[self.pos] == '\'')
                {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                let mut m = Monomial::new();
                m.insert(name, 1);
                let mut p = IntPoly::new();
                p.insert(m, 1);
                Ok(p)
            }
            Some(c) => Err(self.error(format!("unexpected `{c}`"))),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

/// Parses and fully expands an expression.
pub fn parse(input: &str) -> Result<IntPoly, ExprError> {
    let mut p = Parser {
        input,
        chars: input.chars().collect(),
        pos: 0,
    };
    let e = p.expr()?;
    if p.peek().is_some() {
        return Err(p.error("trailing input"));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(vars: &[(&str, u32)]) -> Monomial {
        vars.iter().map(|(v, e)| (v.to_string(), *e)).collect()
    }

    #[test]
    fn expands_products() {
        let p = parse("t*(p1^2 - 2*p2)").unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p[&mono(&[("t", 1), ("p1", 2)])], 1);
        assert_eq!(p[&mono(&[("t", 1), ("p2", 1)])], -2);
    }

    #[test]
    fn cancels_and_constants() {
        assert!(parse("x - x").unwrap().is_empty());
        assert_eq!(parse("0").unwrap(), IntPoly::new());
        assert_eq!(parse("3")
            .unwrap()[&Monomial::new()], 3);
        assert_eq!(parse("-x + 2*x").unwrap()[&mono(&[("x", 1)])], 1);
    }

    #[test]
    fn reports_column() {
        let e = parse("w2 + * w3").unwrap_err();
        assert_eq!(e.column, 6);
        assert!(parse("(w2").is_err());
        assert!(parse("w2 w3").is_err());
    }
}
