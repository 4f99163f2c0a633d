use std::collections::HashMap;
use std::fmt::Write as _;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::cursor::Cursor;
use super::{group_literal, DslError, ParseError, SourceSpan};
use crate::frobenius::{AFrobeniusAlgebra, FrobeniusAlgebra};
use crate::group::AbelianGroup;
use crate::linalg::{LinearMap, Scalar};

const KEYWORDS: [&str; 7] = ["dim", "basis", "unit", "counit", "mul", "group", "action"];

/// Parse an algebra file and validate every axiom.
pub fn parse_algebra(text: &str) -> Result<AFrobeniusAlgebra, DslError> {
    let w = parse_algebra_unchecked(text)?;
    w.validate()?;
    Ok(w)
}

/// Parse an algebra file, checking shapes and names but not the axioms.
pub fn parse_algebra_unchecked(text: &str) -> Result<AFrobeniusAlgebra, ParseError> {
    let mut c = Cursor::new(text);
    let decls = declarations(&mut c)?;
    assemble(&mut c, decls)
}

fn scalar_text_error(span: SourceSpan, found: &str) -> ParseError {
    ParseError {
        span,
        expected: "a scalar such as `3`, `-1/2` or `1/2+3i`".into(),
        found: format!("`{found}`"),
    }
}

fn scalar(c: &mut Cursor<'_>, stops: &[char]) -> Result<Scalar, ParseError> {
    let (text, span) = c.until(stops);
    if text.is_empty() {
        return Err(c.error("a scalar such as `3`, `-1/2` or `1/2+3i`"));
    }
    text.parse().map_err(|_| scalar_text_error(span, &text))
}

/// `[a, b, ...]`
fn vector(c: &mut Cursor<'_>) -> Result<(Vec<Scalar>, SourceSpan), ParseError> {
    let start = c.mark();
    c.expect("[", "`[` opening a vector")?;
    let mut out = vec![scalar(c, &[',', ']'])?];
    while c.eat(",") {
        out.push(scalar(c, &[',', ']'])?);
    }
    c.expect("]", "`,` or `]`")?;
    Ok((out, c.span_from(start)))
}

/// `[a, b; c, d]`, rows separated by `;`.
fn matrix(c: &mut Cursor<'_>) -> Result<(Vec<Vec<Scalar>>, SourceSpan), ParseError> {
    let start = c.mark();
    c.expect("[", "`[` opening a matrix")?;
    let mut rows = Vec::new();
    loop {
        let mut row = vec![scalar(c, &[',', ';', ']'])?];
        while c.eat(",") {
            row.push(scalar(c, &[',', ';', ']'])?);
        }
        rows.push(row);
        if !c.eat(";") {
            break;
        }
    }
    c.expect("]", "`,`, `;` or `]`")?;
    Ok((rows, c.span_from(start)))
}

type Name = (String, SourceSpan);

fn basis_name(c: &mut Cursor<'_>) -> Result<Name, ParseError> {
    match c.ident() {
        Some((name, span)) if name == "i" || KEYWORDS.contains(&name.as_str()) => Err(ParseError {
            span,
            expected: "a basis element name".into(),
            found: format!("reserved word `{name}`"),
        }),
        Some(n) => Ok(n),
        None => Err(c.error("a basis element name")),
    }
}

/// `0`, or `[-] term (+|- term)*` with `term = [coeff] name` and `coeff`
/// either an unsigned rational or a parenthesized scalar.
fn linear_combination(c: &mut Cursor<'_>) -> Result<Vec<(Scalar, Name)>, ParseError> {
    let mut terms = Vec::new();
    let mut sign = if c.eat("-") { -Scalar::one() } else { Scalar::one() };
    loop {
        let coeff = if c.eat("(") {
            let s = scalar(c, &[')'])?;
            c.expect(")", "`)`")?;
            Some(s)
        } else if c.peek_digit() {
            let (num, _) = c.uint()?;
            let mut s = Scalar::from(BigRational::from_integer(num.into()));
            if c.eat("/") {
                let (den, span) = c.uint()?;
                if den == 0 {
                    return Err(ParseError {
                        span,
                        expected: "a nonzero denominator".into(),
                        found: "0".into(),
                    });
                }
                s = Scalar::from(BigRational::new(num.into(), den.into()));
            }
            Some(s)
        } else {
            None
        };
        let bare_zero = terms.is_empty() && sign.is_one() && coeff.as_ref().is_some_and(Zero::is_zero);
        if bare_zero && (!c.peek_ident() || c.peek_keyword(&KEYWORDS)) {
            return Ok(terms);
        }
        let name = basis_name(c)?;
        terms.push((&sign * &coeff.unwrap_or_else(Scalar::one), name));
        if c.eat("+") {
            sign = Scalar::one();
        } else if c.eat("-") {
            sign = -Scalar::one();
        } else {
            return Ok(terms);
        }
    }
}

#[derive(Default)]
struct Declarations {
    dim: Option<(u64, SourceSpan)>,
    basis: Option<(Vec<Name>, SourceSpan)>,
    unit: Option<(Vec<Scalar>, SourceSpan)>,
    counit: Option<(Vec<Scalar>, SourceSpan)>,
    group: Option<AbelianGroup>,
    products: Vec<(Name, Name, Vec<(Scalar, Name)>)>,
    actions: Vec<(Name, Vec<Vec<Scalar>>, SourceSpan)>,
}

fn duplicate(span: SourceSpan, what: &str) -> ParseError {
    ParseError {
        span,
        expected: format!("a single `{what}` declaration"),
        found: "a second one".into(),
    }
}

fn declarations(c: &mut Cursor<'_>) -> Result<Declarations, ParseError> {
    let mut d = Declarations::default();
    while !c.at_end() {
        if !c.peek_keyword(&KEYWORDS) {
            return Err(c.error("a declaration: dim, basis, unit, counit, mul, group or action"));
        }
        let (word, span) = c.ident().expect("a keyword was seen");
        match word.as_str() {
            "dim" => {
                let v = c.uint()?;
                if d.dim.replace(v).is_some() {
                    return Err(duplicate(span, "dim"));
                }
            }
            "basis" => {
                let start = c.mark();
                let mut names = vec![basis_name(c)?];
                while c.peek_ident() && !c.peek_keyword(&KEYWORDS) {
                    names.push(basis_name(c)?);
                }
                if d.basis.replace((names, c.span_from(start))).is_some() {
                    return Err(duplicate(span, "basis"));
                }
            }
            "unit" => {
                if d.unit.replace(vector(c)?).is_some() {
                    return Err(duplicate(span, "unit"));
                }
            }
            "counit" => {
                if d.counit.replace(vector(c)?).is_some() {
                    return Err(duplicate(span, "counit"));
                }
            }
            "group" => {
                if d.group.replace(group_literal(c)?).is_some() {
                    return Err(duplicate(span, "group"));
                }
            }
            "mul" => {
                let x = basis_name(c)?;
                let y = basis_name(c)?;
                c.expect("=", "`=` after the two factors")?;
                d.products.push((x, y, linear_combination(c)?));
            }
            _ => {
                let Some(name) = c.ident() else {
                    return Err(c.error("a generator name g1, g2, ..."));
                };
                c.expect("=", "`=` after the generator")?;
                let (m, span) = matrix(c)?;
                d.actions.push((name, m, span));
            }
        }
    }
    Ok(d)
}

fn missing(c: &mut Cursor<'_>, what: &str) -> ParseError {
    c.error(&format!("a `{what}` declaration"))
}

fn assemble(c: &mut Cursor<'_>, decls: Declarations) -> Result<AFrobeniusAlgebra, ParseError> {
    let (dim, dim_span) = decls.dim.ok_or_else(|| missing(c, "dim"))?;
    if dim == 0 {
        return Err(ParseError {
            span: dim_span,
            expected: "a positive dimension".into(),
            found: "0".into(),
        });
    }
    let d = dim as usize;
    let names: Vec<String> = match decls.basis {
        Some((names, span)) => {
            if names.len() != d {
                return Err(ParseError {
                    span,
                    expected: format!("{d} basis names"),
                    found: names.len().to_string(),
                });
            }
            let mut seen = HashMap::new();
            for (n, s) in &names {
                if seen.insert(n.clone(), ()).is_some() {
                    return Err(ParseError {
                        span: *s,
                        expected: "distinct basis names".into(),
                        found: format!("`{n}` again"),
                    });
                }
            }
            names.into_iter().map(|(n, _)| n).collect()
        }
        None => (0..d).map(|i| format!("e{i}")).collect(),
    };
    let index: HashMap<&str, usize> = names.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
    let lookup = |(n, span): &Name| {
        index.get(n.as_str()).copied().ok_or_else(|| ParseError {
            span: *span,
            expected: "a declared basis name".into(),
            found: format!("`{n}`"),
        })
    };
    let sized = |v: Option<(Vec<Scalar>, SourceSpan)>, what: &str, c: &mut Cursor<'_>| {
        let (v, span) = v.ok_or_else(|| missing(c, what))?;
        if v.len() != d {
            return Err(ParseError {
                span,
                expected: format!("{d} entries"),
                found: v.len().to_string(),
            });
        }
        Ok(v)
    };
    let unit = sized(decls.unit, "unit", c)?;
    let counit = sized(decls.counit, "counit", c)?;

    let mut structure = vec![Scalar::zero(); d * d * d];
    let mut given = vec![false; d * d];
    for (x, y, terms) in &decls.products {
        let (i, j) = (lookup(x)?, lookup(y)?);
        if std::mem::replace(&mut given[i * d + j], true) {
            return Err(ParseError {
                span: x.1,
                expected: "one `mul` line per ordered pair".into(),
                found: format!("a second product {} {}", x.0, y.0),
            });
        }
        for (coeff, name) in terms {
            structure[(i * d + j) * d + lookup(name)?] += coeff;
        }
    }
    let algebra = FrobeniusAlgebra::new(names, structure, unit, counit)
        .expect("shapes were checked");

    let group = decls.group.unwrap_or_else(AbelianGroup::trivial);
    let n = group.generator_count();
    let mut actions: Vec<Option<LinearMap>> = vec![None; n];
    for ((name, name_span), rows, span) in decls.actions {
        let slot = name
            .strip_prefix('g')
            .and_then(|k| k.parse::<usize>().ok())
            .filter(|k| (1..=n).contains(k) && !name.starts_with("g0"))
            .ok_or_else(|| ParseError {
                span: name_span,
                expected: format!("a generator of {group}: g1 to g{n}"),
                found: format!("`{name}`"),
            })?;
        if rows.len() != d || rows.iter().any(|r| r.len() != d) {
            return Err(ParseError {
                span,
                expected: format!("a {d}x{d} matrix"),
                found: format!(
                    "rows of lengths {}",
                    rows.iter().map(|r| r.len().to_string()).collect::<Vec<_>>().join(",")
                ),
            });
        }
        let m = LinearMap::from_rows(d, 1, 1, rows).expect("shape was checked");
        if actions[slot - 1].replace(m).is_some() {
            return Err(duplicate(name_span, &format!("action {name}")));
        }
    }
    let actions = actions
        .into_iter()
        .enumerate()
        .map(|(k, m)| m.ok_or_else(|| missing(c, &format!("action g{}", k + 1))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(AFrobeniusAlgebra::new(algebra, group, actions).expect("shapes were checked"))
}

fn format_term(out: &mut String, coeff: &Scalar, name: &str, first: bool) {
    if !coeff.is_real() {
        let _ = write!(out, "{}({coeff}) {name}", if first { "" } else { " + " });
        return;
    }
    let negative = coeff.re().is_negative();
    let sep = match (first, negative) {
        (true, false) => "",
        (true, true) => "-",
        (false, false) => " + ",
        (false, true) => " - ",
    };
    let magnitude = coeff.re().abs();
    if magnitude.is_one() {
        let _ = write!(out, "{sep}{name}");
    } else {
        let _ = write!(out, "{sep}{magnitude} {name}");
    }
}

/// Serialize in the file format read by [`parse_algebra`]; zero products are omitted.
pub fn format_algebra(w: &AFrobeniusAlgebra) -> String {
    let a = w.algebra();
    let d = a.dim();
    let names = a.basis_names();
    let vector = |v: &[Scalar]| {
        v.iter().map(Scalar::to_string).collect::<Vec<_>>().join(", ")
    };
    let mut out = String::new();
    let _ = writeln!(out, "dim {d}");
    let _ = writeln!(out, "basis {}", names.join(" "));
    let _ = writeln!(out, "group {}", w.group());
    let _ = writeln!(out, "unit [{}]", vector(a.unit()));
    let _ = writeln!(out, "counit [{}]", vector(a.counit()));
    for i in 0..d {
        for j in 0..d {
            let product = a.product_of_basis(i, j);
            if product.iter().all(Zero::is_zero) {
                continue;
            }
            let mut line = String::new();
            for (k, coeff) in product.iter().enumerate().filter(|(_, s)| !s.is_zero()) {
                let first = line.is_empty();
                format_term(&mut line, coeff, &names[k], first);
            }
            let _ = writeln!(out, "mul {} {} = {line}", names[i], names[j]);
        }
    }
    for (k, m) in w.generator_actions().iter().enumerate() {
        let rows: Vec<String> = (0..d).map(|r| vector(m.row(r))).collect();
        let _ = writeln!(out, "action g{} = [{}]", k + 1, rows.join("; "));
    }
    out
}
