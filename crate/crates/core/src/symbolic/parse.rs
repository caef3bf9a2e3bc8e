//! Parser for the text form produced by [`super::render::render_text`].

use crate::combinatorics::MultiIndex;
use crate::error::{Error, Result};

use super::expr::Expr;

/// How bare names are classified while parsing.
#[derive(Debug, Clone)]
pub struct ParseContext {
    /// Name of the cuboid whose subscripted symbols are components.
    pub cuboid: String,
    /// Number of digits of the cuboid's multi-indices.
    pub cuboid_dim: usize,
    /// Names that denote points; every other bare name is a vector.
    pub points: Vec<String>,
}

impl ParseContext {
    pub fn new(cuboid_dim: usize) -> Self {
        ParseContext {
            cuboid: "u".into(),
            cuboid_dim,
            points: vec!["x".into()],
        }
    }
}

pub fn parse_text(src: &str, ctx: &ParseContext) -> Result<Expr> {
    let mut p = Parser { src, pos: 0, ctx };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != src.len() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    ctx: &'a ParseContext,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(format!("expected `{c}`")))
        }
    }

    fn int(&mut self) -> Result<usize> {
        self.skip_ws();
        let len = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if len == 0 {
            return Err(self.err("expected integer"));
        }
        let v = self.rest()[..len]
            .parse()
            .map_err(|_| self.err("integer out of range"))?;
        self.pos += len;
        Ok(v)
    }

    fn expr(&mut self) -> Result<Expr> {
        self.skip_ws();
        if self.rest().starts_with('0') {
            let after = &self.rest()[1..];
            if !after.starts_with(|c: char| c.is_ascii_alphanumeric() || c == '_') {
                self.pos += 1;
                return Ok(Expr::zero());
            }
        }
        let mut terms = vec![self.term()?];
        while self.eat('+') {
            terms.push(self.term()?);
        }
        Ok(if terms.len() == 1 {
            terms.pop().unwrap()
        } else {
            Expr::sum(terms)
        })
    }

    fn term(&mut self) -> Result<Expr> {
        self.skip_ws();
        if self.eat('Δ') {
            return self.delta_rest();
        }
        if self.rest().starts_with("Delta")
            && matches!(self.rest()[5..].chars().next(), Some('^' | '_'))
        {
            self.pos += 5;
            return self.delta_rest();
        }
        let (head, sub) = self.name()?;
        if self.eat('(') {
            let arg = self.expr()?;
            self.expect(')')?;
            return Ok(Expr::app(join_name(head, sub), arg));
        }
        if head == self.ctx.cuboid.as_str() {
            if let Some(sub) = sub {
                return self.component(sub);
            }
        }
        let full = join_name(head, sub);
        if self.ctx.points.contains(&full) {
            Ok(Expr::point(full))
        } else {
            Ok(Expr::vector(full))
        }
    }

    /// Reads `NAME` and an optional `_sub` suffix (digits or a braced group).
    fn name(&mut self) -> Result<(&'a str, Option<&'a str>)> {
        self.skip_ws();
        let src: &'a str = self.src;
        let rest = &src[self.pos..];
        if !rest.starts_with(|c: char| c.is_ascii_alphabetic()) {
            return Err(self.err("expected a name"));
        }
        let len = rest
            .bytes()
            .take_while(|b| b.is_ascii_alphanumeric())
            .count();
        let head = &src[self.pos..self.pos + len];
        self.pos += len;
        let rest = &src[self.pos..];
        if let Some(after) = rest.strip_prefix('_') {
            if after.starts_with('{') {
                let close = after
                    .find('}')
                    .ok_or_else(|| self.err("unclosed subscript"))?;
                let sub = &src[self.pos + 1..self.pos + 2 + close];
                self.pos += 2 + close;
                return Ok((head, Some(sub)));
            }
            let digits = after.bytes().take_while(u8::is_ascii_digit).count();
            if digits > 0 {
                let sub = &src[self.pos + 1..self.pos + 1 + digits];
                self.pos += 1 + digits;
                return Ok((head, Some(sub)));
            }
        }
        Ok((head, None))
    }

    fn component(&mut self, sub: &str) -> Result<Expr> {
        let inner = sub
            .strip_prefix('{')
            .and_then(|s| s.strip_suffix('}'))
            .unwrap_or(sub);
        let mut positions = Vec::new();
        for part in inner.split(',') {
            let p: usize = part
                .trim()
                .parse()
                .map_err(|_| self.err(format!("bad component subscript `{sub}`")))?;
            positions.push(p);
        }
        let dim = self.ctx.cuboid_dim;
        let index = if positions == [0] {
            MultiIndex::zero(dim)
        } else {
            if positions.iter().any(|&p| p == 0 || p > dim) {
                return Err(self.err(format!("component position out of range 1..={dim}")));
            }
            let mut zero_based: Vec<usize> = positions.iter().map(|p| p - 1).collect();
            zero_based.sort_unstable();
            if zero_based.windows(2).any(|w| w[0] == w[1]) {
                return Err(self.err("repeated component position"));
            }
            MultiIndex::from_support(dim, &zero_based)
        };
        Ok(Expr::component(self.ctx.cuboid.clone(), index))
    }

    fn delta_rest(&mut self) -> Result<Expr> {
        let mut exponent = None;
        if self.eat('^') {
            let braced = self.eat('{');
            exponent = Some(self.int()?);
            if braced {
                self.expect('}')?;
            }
        }
        self.expect('_')?;
        self.expect('{')?;
        let mut directions = vec![self.expr()?];
        while self.eat(',') {
            directions.push(self.expr()?);
        }
        self.expect('}')?;
        let expected = exponent.unwrap_or(1);
        if directions.len() != expected {
            return Err(self.err(format!(
                "Δ^{expected} lists {} directions",
                directions.len()
            )));
        }
        let (head, sub) = self.name()?;
        let func = join_name(head, sub);
        self.expect('(')?;
        let base = self.expr()?;
        self.expect(')')?;
        Ok(Expr::delta(directions, func, base))
    }
}

fn join_name(head: &str, sub: Option<&str>) -> String {
    match sub {
        Some(s) => format!("{head}_{s}"),
        None => head.to_string(),
    }
}
