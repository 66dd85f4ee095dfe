use num_complex::Complex64;

use super::PimenovElement;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Complex64),
    Tag(usize),
    Plus,
    Minus,
    Star,
    Open,
    Close,
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>> {
    let b = s.as_bytes();
    let mut i = 0;
    let mut out = Vec::new();
    while i < b.len() {
        let ch = b[i];
        let col = i + 1;
        match ch {
            b' ' | b'\t' => i += 1,
            b'+' => {
                out.push((col, Tok::Plus));
                i += 1
            }
            b'-' => {
                out.push((col, Tok::Minus));
                i += 1
            }
            b'*' => {
                out.push((col, Tok::Star));
                i += 1
            }
            b'(' => {
                out.push((col, Tok::Open));
                i += 1
            }
            b')' => {
                out.push((col, Tok::Close));
                i += 1
            }
            b'i' => {
                let start = i + 1;
                let mut j = start;
                while j < b.len() && b[j].is_ascii_digit() {
                    j += 1;
                }
                let k: usize = s[start..j]
                    .parse()
                    .map_err(|_| Error::Parse { col, msg: "expected a tag number after `i`".into() })?;
                out.push((col, Tok::Tag(k)));
                i = j;
            }
            b'j' => {
                out.push((col, Tok::Num(Complex64::new(0.0, 1.0))));
                i += 1
            }
            c if c.is_ascii_digit() || c == b'.' => {
                let mut j = i;
                while j < b.len() && (b[j].is_ascii_digit() || b[j] == b'.') {
                    j += 1;
                }
                if j < b.len() && (b[j] == b'e' || b[j] == b'E') {
                    let mut k = j + 1;
                    if k < b.len() && (b[k] == b'+' || b[k] == b'-') {
                        k += 1;
                    }
                    if k < b.len() && b[k].is_ascii_digit() {
                        while k < b.len() && b[k].is_ascii_digit() {
                            k += 1;
                        }
                        j = k;
                    }
                }
                let x: f64 = s[i..j]
                    .parse()
                    .map_err(|_| Error::Parse { col, msg: format!("bad number `{}`", &s[i..j]) })?;
                if j < b.len() && b[j] == b'j' {
                    out.push((col, Tok::Num(Complex64::new(0.0, x))));
                    j += 1;
                } else {
                    out.push((col, Tok::Num(Complex64::new(x, 0.0))));
                }
                i = j;
            }
            _ => return Err(Error::Parse { col, msg: format!("unexpected character `{}`", ch as char) }),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [(usize, Tok)],
    pos: usize,
    n: usize,
    len: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map(|(c, _)| *c).unwrap_or(self.len + 1)
    }

    fn expr(&mut self) -> Result<PimenovElement> {
        let mut neg = false;
        match self.peek() {
            Some(Tok::Minus) => {
                neg = true;
                self.pos += 1
            }
            Some(Tok::Plus) => self.pos += 1,
            _ => {}
        }
        let mut acc = self.term()?;
        if neg {
            acc = -acc;
        }
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc += &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc -= &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<PimenovElement> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<PimenovElement> {
        let col = self.col();
        match self.toks.get(self.pos).map(|(_, t)| t.clone()) {
            Some(Tok::Num(z)) => {
                self.pos += 1;
                Ok(PimenovElement::scalar(self.n, z))
            }
            Some(Tok::Tag(k)) => {
                self.pos += 1;
                if k == 0 || k > self.n {
                    return Err(Error::Parse { col, msg: format!("tag i{k} outside i1..i{}", self.n) });
                }
                Ok(PimenovElement::tag(self.n, k))
            }
            Some(Tok::Open) => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(&Tok::Close) {
                    return Err(Error::Parse { col: self.col(), msg: "expected `)`".into() });
                }
                self.pos += 1;
                Ok(e)
            }
            Some(Tok::Minus) => {
                self.pos += 1;
                Ok(-self.factor()?)
            }
            _ => Err(Error::Parse { col, msg: "expected a number, a tag or `(`".into() }),
        }
    }
}

/// Parses `1 + 2*i1 - 0.5*i1*i2`; complex scalars are written `a+bj`
/// (parenthesised inside products, e.g. `(1+2j)*i1`).
pub fn parse_element(s: &str, n: usize) -> Result<PimenovElement> {
    if n > super::MAX_TAGS {
        return Err(Error::TooManyTags(n));
    }
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(Error::Parse { col: 1, msg: "empty expression".into() });
    }
    let mut p = Parser { toks: &toks, pos: 0, n, len: s.len() };
    let e = p.expr()?;
    if p.pos != toks.len() {
        return Err(Error::Parse { col: p.col(), msg: "trailing input".into() });
    }
    Ok(e)
}

/// Parses a complex scalar such as `0.61+0.29i`, `0.61+0.29j`, `-2j` or `1e-3`.
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let t = s.trim().replace('i', "j");
    let e = parse_element(&t, 0)?;
    Ok(e.scalar_part())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_terms() {
        let e = parse_element("1 + 2*i1 - 0.5*i1*i2", 2).unwrap();
        assert_eq!(e.coeff(0), Complex64::new(1.0, 0.0));
        assert_eq!(e.coeff(1), Complex64::new(2.0, 0.0));
        assert_eq!(e.coeff(3), Complex64::new(-0.5, 0.0));
    }

    #[test]
    fn complex_scalars() {
        let e = parse_element("(1+2j)*i1 + 3j", 1).unwrap();
        assert_eq!(e.coeff(1), Complex64::new(1.0, 2.0));
        assert_eq!(e.coeff(0), Complex64::new(0.0, 3.0));
        assert_eq!(parse_complex("0.61+0.29i").unwrap(), Complex64::new(0.61, 0.29));
        assert_eq!(parse_complex("1e-3").unwrap(), Complex64::new(1e-3, 0.0));
        assert_eq!(parse_complex("-2.5").unwrap(), Complex64::new(-2.5, 0.0));
    }

    #[test]
    fn errors_carry_columns() {
        assert!(matches!(parse_element("1 + i3", 2), Err(Error::Parse { col: 5, .. })));
        assert!(matches!(parse_element("1 + ", 2), Err(Error::Parse { .. })));
        assert!(matches!(parse_element("1 $ 2", 2), Err(Error::Parse { col: 3, .. })));
    }
}
