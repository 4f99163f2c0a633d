//! Text front-end: group literals, cobordism expressions and algebra files.
//!
//! All three grammars share one hand-written cursor that tracks line and
//! column, so every error points at the offending text. Whitespace is
//! insignificant and `#` starts a comment that runs to the end of the line.
//! The grammars are described in `GRAMMAR.md`.

mod algebra;
mod cursor;
mod expr;

use std::fmt;

use thiserror::Error;

use crate::frobenius::ValidationError;
use crate::group::{AbelianGroup, GroupElement};

pub use algebra::{format_algebra, parse_algebra, parse_algebra_unchecked};
pub use expr::parse_cobordism;

use cursor::Cursor;

/// 1-based position of a stretch of input, measured in characters.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SourceSpan {
    pub line: usize,
    pub column: usize,
    pub length: usize,
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{span}: expected {expected}, found {found}")]
pub struct ParseError {
    pub span: SourceSpan,
    pub expected: String,
    pub found: String,
}

/// Syntax errors and axiom violations are kept apart: the first means the
/// text is malformed, the second that it describes an invalid structure.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DslError {
    #[error("parse error at {0}")]
    Parse(#[from] ParseError),
    #[error("invalid algebra: {0}")]
    Validation(#[from] ValidationError),
}

/// `Z^r x Z/m1 x ... x Z/mk`; `Z` alone means `Z^1` and `Z^0` is the trivial group.
pub fn parse_group(text: &str) -> Result<AbelianGroup, ParseError> {
    let mut c = Cursor::new(text);
    let g = group_literal(&mut c)?;
    c.expect_end()?;
    Ok(g)
}

/// An element literal such as `(1,0 ; 2)` in the given group.
pub fn parse_element(text: &str, group: &AbelianGroup) -> Result<GroupElement, ParseError> {
    let mut c = Cursor::new(text);
    let g = element_literal(&mut c, group)?;
    c.expect_end()?;
    Ok(g)
}

fn group_literal(c: &mut Cursor<'_>) -> Result<AbelianGroup, ParseError> {
    let start = c.mark();
    let mut rank = 0usize;
    let mut torsion = Vec::new();
    loop {
        if !c.eat("Z") {
            return Err(c.error("a group factor `Z^r` or `Z/m`"));
        }
        if c.eat("^") {
            let (r, _) = c.uint()?;
            rank += r as usize;
        } else if c.eat("/") {
            let (m, span) = c.uint()?;
            if m < 2 {
                return Err(ParseError {
                    span,
                    expected: "a cyclic order of at least 2 (omit trivial factors)".into(),
                    found: m.to_string(),
                });
            }
            torsion.push((m, span));
        } else {
            rank += 1;
        }
        if !c.eat("x") {
            break;
        }
    }
    if let Some(w) = torsion.windows(2).find(|w| w[0].0 > w[1].0) {
        return Err(ParseError {
            span: w[1].1,
            expected: format!("cyclic orders in ascending order (at least {})", w[0].0),
            found: w[1].0.to_string(),
        });
    }
    AbelianGroup::new(rank, torsion.into_iter().map(|(m, _)| m).collect()).map_err(|e| {
        ParseError {
            span: c.span_from(start),
            expected: "a valid group".into(),
            found: e.to_string(),
        }
    })
}

fn int_list(c: &mut Cursor<'_>) -> Result<Vec<i64>, ParseError> {
    let mut out = Vec::new();
    if c.peek_is(")") || c.peek_is(";") {
        return Ok(out);
    }
    loop {
        out.push(c.int()?.0);
        if !c.eat(",") {
            return Ok(out);
        }
    }
}

fn element_literal(c: &mut Cursor<'_>, group: &AbelianGroup) -> Result<GroupElement, ParseError> {
    let start = c.mark();
    c.expect("(", "`(` opening a group element")?;
    let first = int_list(c)?;
    let coords = if c.eat(";") {
        let second = int_list(c)?;
        if first.len() != group.free_rank() || second.len() != group.torsion_orders().len() {
            c.expect(")", "`)`")?;
            return Err(ParseError {
                span: c.span_from(start),
                expected: format!(
                    "{} free and {} torsion coordinates for {group}",
                    group.free_rank(),
                    group.torsion_orders().len()
                ),
                found: format!("{} and {}", first.len(), second.len()),
            });
        }
        first.into_iter().chain(second).collect()
    } else {
        first
    };
    c.expect(")", "`,`, `;` or `)` in a group element")?;
    group.element(&coords).map_err(|_| ParseError {
        span: c.span_from(start),
        expected: format!("{} coordinates for {group}", group.generator_count()),
        found: coords.len().to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_examples() {
        assert_eq!(parse_group("Z/2").unwrap(), AbelianGroup::cyclic(2).unwrap());
        assert_eq!(
            parse_group("Z^1 x Z/3").unwrap(),
            AbelianGroup::new(1, vec![3]).unwrap()
        );
        assert_eq!(parse_group(" Z^1xZ / 3 ").unwrap(), AbelianGroup::new(1, vec![3]).unwrap());
        assert_eq!(parse_group("Z").unwrap(), AbelianGroup::new(1, vec![]).unwrap());
        assert_eq!(parse_group("Z^0").unwrap(), AbelianGroup::trivial());
        let err = parse_group("Z/1").unwrap_err();
        assert_eq!(err.span, SourceSpan { line: 1, column: 3, length: 1 });
        assert!(err.to_string().contains("omit trivial"));
    }

    #[test]
    fn group_errors() {
        let e = parse_group("Z/4 x Z/2").unwrap_err();
        assert_eq!(e.span.column, 9);
        let e = parse_group("Q/2").unwrap_err();
        assert_eq!((e.found.as_str(), e.span.length), ("`Q`", 1));
        let e = parse_group("Z/2 x").unwrap_err();
        assert_eq!(e.found, "end of input");
        assert_eq!(e.span, SourceSpan { line: 1, column: 5, length: 1 });
        assert!(parse_group("Z/2 Z/3").is_err());
    }

    #[test]
    fn element_literals() {
        let g = AbelianGroup::new(1, vec![3]).unwrap();
        assert_eq!(parse_element("(-2 ; 1)", &g).unwrap(), g.element(&[-2, 1]).unwrap());
        assert_eq!(parse_element("(-2,1)", &g).unwrap(), g.element(&[-2, 1]).unwrap());
        assert_eq!(parse_element("(0 ; 4)", &g).unwrap(), g.element(&[0, 1]).unwrap());
        assert!(parse_element("(1)", &g).is_err());
        assert!(parse_element("(1 ; 1, 1)", &g).is_err());
        assert_eq!(
            parse_element("()", &AbelianGroup::trivial()).unwrap(),
            AbelianGroup::trivial().identity()
        );
        let z4 = AbelianGroup::cyclic(4).unwrap();
        for x in z4.elements().unwrap() {
            assert_eq!(parse_element(&x.to_string(), &z4).unwrap(), x);
        }
    }
}
