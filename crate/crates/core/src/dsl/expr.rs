use super::cursor::Cursor;
use super::{element_literal, group_literal, ParseError};
use crate::cobordism::{Cobordism, Component};
use crate::group::AbelianGroup;

/// Upper bound on the circles an `id[n]` or `cob m->n` literal may name.
const MAX_CIRCLES: u64 = 1024;

fn circles(c: &mut Cursor<'_>) -> Result<usize, ParseError> {
    let (n, span) = c.uint()?;
    if n > MAX_CIRCLES {
        return Err(ParseError {
            span,
            expected: format!("at most {MAX_CIRCLES} circles"),
            found: n.to_string(),
        });
    }
    Ok(n as usize)
}

/// Parse a cobordism expression over `group`.
///
/// `a | b` places `a` beside `b` and binds tighter than `a ; b`, which runs
/// `a` first and then `b` (the composite `b ∘ a`).
pub fn parse_cobordism(text: &str, group: &AbelianGroup) -> Result<Cobordism, ParseError> {
    let mut c = Cursor::new(text);
    let cob = sequence(&mut c, group)?;
    c.expect_end()?;
    Ok(cob)
}

fn sequence(c: &mut Cursor<'_>, group: &AbelianGroup) -> Result<Cobordism, ParseError> {
    let mut acc = juxtaposition(c, group)?;
    loop {
        let start = c.mark();
        if !c.eat(";") {
            return Ok(acc);
        }
        let semicolon = c.span_from(start);
        let next = juxtaposition(c, group)?;
        if acc.target() != next.source() {
            return Err(ParseError {
                span: semicolon,
                expected: format!(
                    "a right-hand side with {} incoming circles",
                    acc.target()
                ),
                found: format!("{} incoming circles", next.source()),
            });
        }
        acc = acc.then(&next).expect("shapes were checked");
    }
}

fn juxtaposition(c: &mut Cursor<'_>, group: &AbelianGroup) -> Result<Cobordism, ParseError> {
    let mut acc = atom(c, group)?;
    while c.eat("|") {
        acc = acc.tensor(&atom(c, group)?).expect("same group");
    }
    Ok(acc)
}

fn atom(c: &mut Cursor<'_>, group: &AbelianGroup) -> Result<Cobordism, ParseError> {
    if c.eat("(") {
        let inner = sequence(c, group)?;
        c.expect(")", "`;`, `|` or `)`")?;
        return Ok(inner);
    }
    let start = c.mark();
    if c.keyword("id") {
        if c.eat("[") {
            let n = circles(c)?;
            c.expect("]", "`]`")?;
            return Ok(Cobordism::identity(n, group));
        }
        return Ok(Cobordism::identity(1, group));
    }
    if c.keyword("cup") {
        return Ok(Cobordism::cup(group));
    }
    if c.keyword("cap") {
        return Ok(Cobordism::cap(group));
    }
    if c.keyword("pants") {
        return Ok(Cobordism::pants(group));
    }
    if c.keyword("copants") {
        return Ok(Cobordism::copants(group));
    }
    if c.keyword("swap") {
        return Ok(Cobordism::swap(group));
    }
    if c.keyword("cyl") {
        c.expect("[", "`[` after `cyl`")?;
        let label = element_literal(c, group)?;
        c.expect("]", "`]`")?;
        return Ok(Cobordism::cylinder(&label, group).expect("label was parsed in this group"));
    }
    if c.keyword("closed") {
        c.expect("[", "`[` after `closed`")?;
        let genus = genus(c)?;
        c.expect(";", "`;` between genus and label")?;
        let label = element_literal(c, group)?;
        c.expect("]", "`]`")?;
        return Ok(Cobordism::closed(genus, &label, group).expect("label was parsed in this group"));
    }
    if c.keyword("cob") {
        return block(c, group, start);
    }
    Err(c.error("a cobordism: id, cup, cap, pants, copants, swap, cyl[..], closed[..], cob {..} or `(`"))
}

fn genus(c: &mut Cursor<'_>) -> Result<u32, ParseError> {
    let (g, span) = c.uint()?;
    u32::try_from(g).map_err(|_| ParseError {
        span,
        expected: "a genus below 2^32".into(),
        found: g.to_string(),
    })
}

fn port_set(c: &mut Cursor<'_>) -> Result<Vec<usize>, ParseError> {
    c.expect("{", "`{` opening a port set")?;
    let mut ports = Vec::new();
    if c.eat("}") {
        return Ok(ports);
    }
    loop {
        ports.push(circles(c)?);
        if c.eat("}") {
            return Ok(ports);
        }
        c.expect(",", "`,` or `}` in a port set")?;
    }
}

/// `cob m->n group=G { comp genus=.. in={..} out={..} label=(..) ... }`;
/// the `group=` clause is optional but must match the ambient group.
fn block(
    c: &mut Cursor<'_>,
    group: &AbelianGroup,
    start: super::cursor::Mark,
) -> Result<Cobordism, ParseError> {
    let m = circles(c)?;
    c.expect("->", "`->`")?;
    let n = circles(c)?;
    if c.keyword("group") {
        c.expect("=", "`=` after `group`")?;
        let at = c.mark();
        let declared = group_literal(c)?;
        if &declared != group {
            return Err(ParseError {
                span: c.span_from(at),
                expected: format!("the ambient group {group}"),
                found: declared.to_string(),
            });
        }
    }
    c.expect("{", "`{` opening the component list")?;
    let mut components = Vec::new();
    while !c.eat("}") {
        if !c.keyword("comp") {
            return Err(c.error("`comp` or `}`"));
        }
        let field = |c: &mut Cursor<'_>, name: &str| -> Result<(), ParseError> {
            if !c.keyword(name) {
                return Err(c.error(&format!("`{name}=`")));
            }
            c.expect("=", &format!("`=` after `{name}`"))?;
            Ok(())
        };
        field(c, "genus")?;
        let genus = genus(c)?;
        field(c, "in")?;
        let inputs = port_set(c)?;
        field(c, "out")?;
        let outputs = port_set(c)?;
        field(c, "label")?;
        let label = element_literal(c, group)?;
        components.push(Component::new(genus, inputs, outputs, label));
    }
    Cobordism::new(m, n, components, group.clone()).map_err(|e| ParseError {
        span: c.span_from(start),
        expected: "components partitioning the boundary circles".into(),
        found: e.to_string(),
    })
}
