//! Module expressions: `S(v)`, `P(v)`, `U(v1,v2,...)`, `Omega(X)` and
//! `Omega^k(X)` with `k` possibly negative.

use std::sync::Arc;

use thiserror::Error;
use wsa_core::algebra::BoundedAlgebra;
use wsa_core::modules::{omega_power, uniserial, Representation};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExprError {
    #[error("malformed module expression `{0}`: {1}")]
    Syntax(String, String),
    #[error("unknown vertex `{0}`")]
    Vertex(String),
    #[error("no uniserial module with composition series {0}")]
    NotUniserial(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Simple(String),
    Projective(String),
    Uniserial(Vec<String>),
    Omega(i32, Box<Expr>),
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> ExprError {
        ExprError::Syntax(self.src.to_string(), msg.to_string())
    }

    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(char::is_whitespace) {
            self.pos += self.src[self.pos..].chars().next().unwrap().len_utf8();
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ExprError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected `{c}`")))
        }
    }

    fn ident(&mut self) -> Result<String, ExprError> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let len = rest
            .find(|c: char| c.is_whitespace() || "(),^".contains(c))
            .unwrap_or(rest.len());
        if len == 0 {
            return Err(self.err("expected a name"));
        }
        self.pos += len;
        Ok(rest[..len].to_string())
    }

    fn int(&mut self) -> Result<i32, ExprError> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let len = rest
            .char_indices()
            .take_while(|&(i, c)| c.is_ascii_digit() || (i == 0 && c == '-'))
            .count();
        let k = rest[..len].parse().map_err(|_| self.err("expected an integer exponent"))?;
        self.pos += len;
        Ok(k)
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        let head = self.ident()?;
        match head.as_str() {
            "S" | "P" => {
                self.expect('(')?;
                let v = self.ident()?;
                self.expect(')')?;
                Ok(if head == "S" { Expr::Simple(v) } else { Expr::Projective(v) })
            }
            "U" => {
                self.expect('(')?;
                let mut word = vec![self.ident()?];
                while self.eat(',') {
                    word.push(self.ident()?);
                }
                self.expect(')')?;
                if word.len() < 2 {
                    return Err(self.err("U needs at least two vertices; write S(v) for a simple"));
                }
                Ok(Expr::Uniserial(word))
            }
            "Omega" => {
                let k = if self.eat('^') { self.int()? } else { 1 };
                self.expect('(')?;
                let inner = self.expr()?;
                self.expect(')')?;
                Ok(Expr::Omega(k, Box::new(inner)))
            }
            _ => Err(self.err(&format!("unknown constructor `{head}`"))),
        }
    }
}

pub fn parse(src: &str) -> Result<Expr, ExprError> {
    let mut p = Parser { src, pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != src.len() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

impl Expr {
    pub fn build(&self, alg: &Arc<BoundedAlgebra>) -> Result<Representation, ExprError> {
        let q = alg.quiver();
        let vertex = |v: &str| q.vertex(v).ok_or_else(|| ExprError::Vertex(v.to_string()));
        Ok(match self {
            Expr::Simple(v) => Representation::simple(alg, vertex(v)?),
            Expr::Projective(v) => Representation::projective(alg, vertex(v)?),
            Expr::Uniserial(word) => {
                let ids = word.iter().map(|v| vertex(v)).collect::<Result<Vec<_>, _>>()?;
                uniserial(alg, &ids).map_err(|_| ExprError::NotUniserial(word.join(",")))?
            }
            Expr::Omega(k, inner) => omega_power(&inner.build(alg)?, *k),
        }
        .with_label(self.to_string()))
    }
}

impl std::fmt::Display for Expr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Expr::Simple(v) => write!(f, "S({v})"),
            Expr::Projective(v) => write!(f, "P({v})"),
            Expr::Uniserial(w) => write!(f, "U({})", w.join(",")),
            Expr::Omega(1, e) => write!(f, "Omega({e})"),
            Expr::Omega(k, e) => write!(f, "Omega^{k}({e})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_nested() {
        let e = parse("Omega^-2( Omega(S(a1)) )").unwrap();
        assert_eq!(
            e,
            Expr::Omega(-2, Box::new(Expr::Omega(1, Box::new(Expr::Simple("a1".into())))))
        );
        assert_eq!(e.to_string(), "Omega^-2(Omega(S(a1)))");
        assert_eq!(parse("U(2, 3,2)").unwrap(), Expr::Uniserial(vec!["2".into(), "3".into(), "2".into()]));
    }

    #[test]
    fn rejects_malformed() {
        for bad in ["U(1)", "S(1", "S()", "Q(1)", "S(1) x", "Omega^(S(1))", ""] {
            assert!(parse(bad).is_err(), "{bad}");
        }
    }
}
