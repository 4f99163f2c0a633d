//! Command implementations behind the `surfcat` binary. Each returns the text
//! to print and an exit code: 0 success, 1 a failed check, 2 a usage or parse
//! error. Every failure line starts with `FAIL:`.

use std::fmt::Write as _;
use std::path::Path;

use crate::cobordism::Cobordism;
use crate::dsl::{parse_algebra, parse_algebra_unchecked, parse_cobordism, parse_group, DslError, ParseError};
use crate::frobenius::{AFrobeniusAlgebra, ValidationError};
use crate::group::AbelianGroup;
use crate::tqft::{roundtrip_report, Evaluator};

pub const DEFAULT_SEED: u64 = 7;
pub const DEFAULT_ITERS: usize = 100;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub code: i32,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Outcome { output, code: 0 }
    }

    fn failed(output: String) -> Self {
        Outcome { output, code: 1 }
    }

    fn usage(output: String) -> Self {
        Outcome { output, code: 2 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Matrix,
    Components,
}

/// Shipped algebra fixtures, embedded for `selftest`.
pub const FIXTURES: [(&str, &str); 6] = [
    ("c2.alg", include_str!("../fixtures/c2.alg")),
    ("c3z.alg", include_str!("../fixtures/c3z.alg")),
    ("c4a2.alg", include_str!("../fixtures/c4a2.alg")),
    ("v4.alg", include_str!("../fixtures/v4.alg")),
    ("broken.alg", include_str!("../fixtures/broken.alg")),
    ("c4a2_corrupt.alg", include_str!("../fixtures/c4a2_corrupt.alg")),
];

/// The offending line with a caret under the span.
fn render(source_name: &str, text: &str, e: &ParseError) -> String {
    let line = text.lines().nth(e.span.line - 1).unwrap_or("");
    let pad = " ".repeat(e.span.column.saturating_sub(1));
    let marks = "^".repeat(e.span.length);
    format!("FAIL: parse: {source_name}:{e}\n  {line}\n  {pad}{marks}")
}

fn read(path: &Path) -> Result<String, Outcome> {
    std::fs::read_to_string(path).map_err(|e| {
        Outcome::usage(format!("FAIL: cannot read {}: {e}", path.display()))
    })
}

fn load_checked(path: &Path) -> Result<AFrobeniusAlgebra, Outcome> {
    let text = read(path)?;
    let name = path.display().to_string();
    parse_algebra(&text).map_err(|e| match e {
        DslError::Parse(p) => Outcome::usage(render(&name, &text, &p)),
        DslError::Validation(v) => Outcome::failed(validation_lines(&v)),
    })
}

fn validation_lines(v: &ValidationError) -> String {
    match v {
        ValidationError::Frobenius(f) => format!("FAIL: frobenius: {f}"),
        ValidationError::Action(a) => format!("frobenius: ok\nFAIL: action: {a}"),
    }
}

fn group_arg(text: &str) -> Result<AbelianGroup, Outcome> {
    parse_group(text).map_err(|e| Outcome::usage(render("group", text, &e)))
}

fn expr_arg(text: &str, group: &AbelianGroup) -> Result<Cobordism, Outcome> {
    parse_cobordism(text, group).map_err(|e| Outcome::usage(render("expr", text, &e)))
}

fn flatten(r: Result<Outcome, Outcome>) -> Outcome {
    r.unwrap_or_else(|e| e)
}

/// Validate an algebra file.
pub fn check(path: &Path) -> Outcome {
    flatten(load_checked(path).map(|_| Outcome::ok("frobenius: ok, action: ok".into())))
}

/// Evaluate an expression over the algebra in `path`.
pub fn eval(path: &Path, expr: &str, format: Format) -> Outcome {
    flatten((|| {
        let w = load_checked(path)?;
        let cob = expr_arg(expr, w.group())?;
        if format == Format::Components {
            return Ok(Outcome::ok(cob.to_string()));
        }
        let ev = Evaluator::new(w).map_err(|e| Outcome::failed(format!("FAIL: evaluator: {e}")))?;
        let m = ev
            .evaluate(&cob)
            .map_err(|e| Outcome::failed(format!("FAIL: evaluate: {e}")))?;
        Ok(Outcome::ok(format!(
            "V^{} -> V^{} (d={})\n{m}",
            m.source_arity(),
            m.target_arity(),
            m.dim()
        )))
    })())
}

/// Canonical form of an expression over the group given by a literal.
pub fn canon(group: &str, expr: &str) -> Outcome {
    flatten((|| {
        let g = group_arg(group)?;
        Ok(Outcome::ok(expr_arg(expr, &g)?.to_string()))
    })())
}

/// `first` followed by `second`, in canonical form.
pub fn compose(group: &str, first: &str, second: &str) -> Outcome {
    flatten((|| {
        let g = group_arg(group)?;
        let a = expr_arg(first, &g)?;
        let b = expr_arg(second, &g)?;
        let c = a.then(&b).map_err(|e| Outcome::usage(format!("FAIL: compose: {e}")))?;
        Ok(Outcome::ok(c.to_string()))
    })())
}

fn roundtrip_text(name: &str, text: &str, seed: u64, iters: usize) -> Outcome {
    match parse_algebra_unchecked(text) {
        Err(e) => Outcome::usage(render(name, text, &e)),
        Ok(w) => {
            let report = roundtrip_report(&w, seed, iters);
            let out = report.to_string();
            if report.all_passed() {
                Outcome::ok(out)
            } else {
                Outcome::failed(out)
            }
        }
    }
}

/// Extraction, functoriality, slicing and monoidality checks for one algebra.
/// Axiom violations are reported but do not stop the suites.
pub fn roundtrip(path: &Path, seed: u64, iters: usize) -> Outcome {
    flatten(read(path).map(|text| roundtrip_text(&path.display().to_string(), &text, seed, iters)))
}

/// Runs every shipped fixture and compares against its expected verdict.
pub fn selftest(seed: u64, iters: usize) -> Outcome {
    let mut out = String::new();
    let mut all = true;
    for (name, text) in FIXTURES {
        let expect_valid = !matches!(name, "broken.alg" | "c4a2_corrupt.alg");
        let check = match parse_algebra(text) {
            Ok(_) => 0,
            Err(DslError::Validation(_)) => 1,
            Err(DslError::Parse(_)) => 2,
        };
        let rt = roundtrip_text(name, text, seed, iters);
        let as_expected = if expect_valid {
            check == 0 && rt.code == 0
        } else {
            check == 1 && rt.code == 1
        };
        all &= as_expected;
        let verdict = match (expect_valid, as_expected) {
            (true, true) => "ok",
            (false, true) => "rejected as expected",
            (_, false) => "UNEXPECTED",
        };
        if as_expected {
            let _ = writeln!(out, "{name}: {verdict}");
        } else {
            let _ = writeln!(out, "FAIL: {name}: check exit {check}, roundtrip exit {}", rt.code);
            let _ = writeln!(out, "{}", rt.output);
        }
    }
    out.push_str(if all { "selftest: ok" } else { "selftest: failed" });
    if all {
        Outcome::ok(out)
    } else {
        Outcome::failed(out)
    }
}
