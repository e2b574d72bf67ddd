//! Parenthesized text form of a strong interval tree.
//!
//! Leaves print as signed integers; linear vertices as `L+(...)` / `L-(...)`;
//! prime vertices carry their quotient in brackets, e.g.
//! `P[2 4 1 3](2,4,1,3)`. Children are comma-separated in left-to-right
//! order, so the leaf sequence spells out the permutation.

use std::fmt;

use crate::error::{Error, Result};
use crate::perm::Interval;

use super::{SitTree, SitVertex, VertexKind};

impl fmt::Display for SitVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            VertexKind::Leaf => {
                let v = self.vmin as i64;
                match self.leaf_sign.unwrap() {
                    super::Sign::Plus => write!(f, "{v}"),
                    super::Sign::Minus => write!(f, "-{v}"),
                }
            }
            VertexKind::LinearIncreasing => write_children(f, "L+", self),
            VertexKind::LinearDecreasing => write_children(f, "L-", self),
            VertexKind::Prime => {
                write!(f, "P[")?;
                for (i, q) in self.quotient.iter().enumerate() {
                    if i > 0 {
                        write!(f, " ")?;
                    }
                    write!(f, "{q}")?;
                }
                write!(f, "]")?;
                write_children(f, "", self)
            }
        }
    }
}

fn write_children(f: &mut fmt::Formatter<'_>, prefix: &str, v: &SitVertex) -> fmt::Result {
    write!(f, "{prefix}(")?;
    for (i, c) in v.children.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{c}")?;
    }
    write!(f, ")")
}

impl fmt::Display for SitTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.root)
    }
}

struct Parser<'a> {
    input: &'a str,
    pos: usize,
    next_leaf_pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<char> {
        self.input[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.bump();
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        self.skip_ws();
        match self.bump() {
            Some(got) if got == c => Ok(()),
            got => Err(Error::Parse(format!(
                "expected {c:?} at byte {}, found {got:?}",
                self.pos
            ))),
        }
    }

    fn number(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if self.peek() == Some('-') {
            self.bump();
        }
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.bump();
        }
        self.input[start..self.pos]
            .parse::<i64>()
            .map_err(|e| Error::Parse(format!("bad number at byte {start}: {e}")))
    }

    fn vertex(&mut self) -> Result<SitVertex> {
        self.skip_ws();
        match self.peek() {
            Some('L') => {
                self.bump();
                let kind = match self.bump() {
                    Some('+') => VertexKind::LinearIncreasing,
                    Some('-') => VertexKind::LinearDecreasing,
                    c => return Err(Error::Parse(format!("expected + or - after L, got {c:?}"))),
                };
                let children = self.children()?;
                self.finish_internal(kind, None, children)
            }
            Some('P') => {
                self.bump();
                self.expect('[')?;
                let mut quotient = Vec::new();
                loop {
                    self.skip_ws();
                    if self.peek() == Some(']') {
                        self.bump();
                        break;
                    }
                    let q = self.number()?;
                    if q < 1 {
                        return Err(Error::Parse("quotient entries must be positive".into()));
                    }
                    quotient.push(q as u32);
                }
                let children = self.children()?;
                self.finish_internal(VertexKind::Prime, Some(quotient), children)
            }
            Some(c) if c == '-' || c.is_ascii_digit() => {
                let v = self.number()?;
                if v == 0 {
                    return Err(Error::Parse("leaf value 0 is not allowed".into()));
                }
                let pos = self.next_leaf_pos;
                self.next_leaf_pos += 1;
                Ok(SitVertex::leaf(pos, v as i32))
            }
            c => Err(Error::Parse(format!("unexpected {c:?} at byte {}", self.pos))),
        }
    }

    fn children(&mut self) -> Result<Vec<SitVertex>> {
        self.expect('(')?;
        let mut out = Vec::new();
        loop {
            out.push(self.vertex()?);
            self.skip_ws();
            match self.bump() {
                Some(',') => continue,
                Some(')') => break,
                c => return Err(Error::Parse(format!("expected , or ) but found {c:?}"))),
            }
        }
        Ok(out)
    }

    fn finish_internal(
        &self,
        kind: VertexKind,
        declared_quotient: Option<Vec<u32>>,
        children: Vec<SitVertex>,
    ) -> Result<SitVertex> {
        if children.len() < 2 {
            return Err(Error::Parse(
                "internal vertex needs at least two children".into(),
            ));
        }
        let quotient = super::quotient_of(&children);
        if super::kind_of_quotient(&quotient) != kind {
            return Err(Error::Parse(format!(
                "declared kind {kind:?} does not match children order"
            )));
        }
        if let Some(declared) = declared_quotient {
            if declared != quotient {
                return Err(Error::Parse(format!(
                    "declared quotient {declared:?} does not match children (computed {quotient:?})"
                )));
            }
        }
        Ok(SitVertex {
            span: Interval::new(
                children.first().unwrap().span.lo,
                children.last().unwrap().span.hi,
            ),
            kind,
            vmin: children.iter().map(|c| c.vmin).min().unwrap(),
            vmax: children.iter().map(|c| c.vmax).max().unwrap(),
            quotient,
            children,
            leaf_sign: None,
        })
    }
}

/// Parses the parenthesized text form back into a tree.
pub fn parse_tree(input: &str) -> Result<SitTree> {
    let mut parser = Parser {
        input,
        pos: 0,
        next_leaf_pos: 1,
    };
    let root = parser.vertex()?;
    parser.skip_ws();
    if parser.pos != input.len() {
        return Err(Error::Parse(format!(
            "trailing input at byte {}",
            parser.pos
        )));
    }
    let n = parser.next_leaf_pos - 1;
    Ok(SitTree { root, n })
}
