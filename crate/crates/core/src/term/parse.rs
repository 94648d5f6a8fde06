//! Surface syntax for terms.
//!
//! ```text
//! expr    := product (('+' | '-') product)*
//! product := unary ('*' unary)*
//! unary   := '-' unary | postfix
//! postfix := atom ('\'' | '^' INT)*
//! atom    := INT | IDENT | IDENT '(' expr,* ')' | IDENT '[' INT ']' '(' expr,* ')' | '(' expr ')'
//! ```
//!
//! Macros: `plus(t)`, `gamma(t)`, `join(s,t)`, `meet(s,t)`, `ominus(s,t)`,
//! `t[n](s,t)`, `s[n](t)`. Any other identifier is a variable.

use super::ast::{gamma, join, meet, ominus, plus, s_n, t_n, Term};
use crate::error::{Error, Result};

/// Largest `n` accepted in `t[n]` and `s[n]`.
pub const MAX_INDEX: usize = 64;

pub fn parse_term(src: &str) -> Result<Term> {
    let mut p = Parser {
        src: src.as_bytes(),
        pos: 0,
    };
    let t = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(t)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
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

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected `{}`", c as char)))
        }
    }

    fn expr(&mut self) -> Result<Term> {
        let mut t = self.product()?;
        loop {
            if self.eat(b'+') {
                t = t.add(&self.product()?);
            } else if self.eat(b'-') {
                t = t.sub(&self.product()?);
            } else {
                return Ok(t);
            }
        }
    }

    fn product(&mut self) -> Result<Term> {
        let mut t = self.unary()?;
        while self.eat(b'*') {
            t = t.mul(&self.unary()?);
        }
        Ok(t)
    }

    fn unary(&mut self) -> Result<Term> {
        if self.eat(b'-') {
            return Ok(self.unary()?.neg());
        }
        self.postfix()
    }

    fn postfix(&mut self) -> Result<Term> {
        let mut t = self.atom()?;
        loop {
            if self.eat(b'\'') {
                t = t.quasi();
            } else if self.eat(b'^') {
                let k = self.integer()?;
                t = t.pow(k);
            } else {
                return Ok(t);
            }
        }
    }

    fn integer(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii")
            .parse()
            .map_err(|_| Error::Parse {
                pos: start,
                msg: "integer too large".into(),
            })
    }

    fn ident(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        String::from_utf8(self.src[start..self.pos].to_vec()).expect("ascii")
    }

    fn args(&mut self, count: usize, name: &str) -> Result<Vec<Term>> {
        self.expect(b'(')?;
        let mut out = vec![self.expr()?];
        while self.eat(b',') {
            out.push(self.expr()?);
        }
        self.expect(b')')?;
        if out.len() != count {
            return Err(self.err(&format!(
                "`{name}` takes {count} argument(s), got {}",
                out.len()
            )));
        }
        Ok(out)
    }

    fn atom(&mut self) -> Result<Term> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let t = self.expr()?;
                self.expect(b')')?;
                Ok(t)
            }
            Some(c) if c.is_ascii_digit() => Ok(Term::integer(self.integer()?)),
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                let name = self.ident();
                let index = if (name == "t" || name == "s") && self.peek() == Some(b'[') {
                    self.pos += 1;
                    let at = self.pos;
                    let n = self.integer()? as usize;
                    if n > MAX_INDEX {
                        return Err(Error::Parse {
                            pos: at,
                            msg: format!("index above {MAX_INDEX}"),
                        });
                    }
                    self.expect(b']')?;
                    Some(n)
                } else {
                    None
                };
                match (name.as_str(), index) {
                    ("t", Some(n)) => {
                        let a = self.args(2, "t[n]")?;
                        Ok(t_n(n, &a[0], &a[1]))
                    }
                    ("s", Some(n)) => Ok(s_n(n, &self.args(1, "s[n]")?[0])),
                    ("plus", None) => Ok(plus(&self.args(1, "plus")?[0])),
                    ("gamma", None) => Ok(gamma(&self.args(1, "gamma")?[0])),
                    ("join", None) => {
                        let a = self.args(2, "join")?;
                        Ok(join(&a[0], &a[1]))
                    }
                    ("meet", None) => {
                        let a = self.args(2, "meet")?;
                        Ok(meet(&a[0], &a[1]))
                    }
                    ("ominus", None) => {
                        let a = self.args(2, "ominus")?;
                        Ok(ominus(&a[0], &a[1]))
                    }
                    _ if self.peek() == Some(b'(') => Err(Error::Parse {
                        pos: start,
                        msg: format!("unknown function `{name}`"),
                    }),
                    _ => Ok(Term::var(&name)),
                }
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}
