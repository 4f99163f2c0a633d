use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{try_extract, Evaluator, Generator, Slice, Word};
use crate::frobenius::AFrobeniusAlgebra;
use crate::linalg::LinearMap;
use crate::sample::{random_cobordism, random_word, WordShape};

/// Pass/fail counts for one family of checks, with the first failure kept.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub passed: usize,
    pub failed: usize,
    pub first_failure: Option<String>,
}

impl SuiteResult {
    fn new(name: &'static str) -> Self {
        SuiteResult {
            name,
            passed: 0,
            failed: 0,
            first_failure: None,
        }
    }

    fn record(&mut self, outcome: Result<(), String>) {
        match outcome {
            Ok(()) => self.passed += 1,
            Err(msg) => {
                self.failed += 1;
                self.first_failure.get_or_insert(msg);
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoundtripReport {
    /// The axiom violation, if the input failed validation.
    pub validation: Option<String>,
    pub suites: Vec<SuiteResult>,
}

impl RoundtripReport {
    pub fn all_passed(&self) -> bool {
        self.validation.is_none() && self.suites.iter().all(|s| s.failed == 0)
    }

    pub fn suite(&self, name: &str) -> Option<&SuiteResult> {
        self.suites.iter().find(|s| s.name == name)
    }
}

impl fmt::Display for RoundtripReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.validation {
            None => writeln!(f, "validation: ok")?,
            Some(e) => writeln!(f, "FAIL: validation: {e}")?,
        }
        for s in &self.suites {
            writeln!(f, "{}: {} passed, {} failed", s.name, s.passed, s.failed)?;
            if let Some(msg) = &s.first_failure {
                writeln!(f, "FAIL: {}: {msg}", s.name)?;
            }
        }
        write!(
            f,
            "{}",
            if self.all_passed() { "result: ok" } else { "result: failed" }
        )
    }
}

/// Builds the evaluator for `w`, extracts the algebra back and compares it
/// field by field, then runs `iters` seeded checks each of slicing
/// independence, functoriality and monoidality.
///
/// Invalid input is reported rather than refused, so that the suites can
/// exhibit where a broken structure stops being a functor.
pub fn roundtrip_report(w: &AFrobeniusAlgebra, seed: u64, iters: usize) -> RoundtripReport {
    let mut report = RoundtripReport {
        validation: w.validate().err().map(|e| e.to_string()),
        suites: Vec::new(),
    };
    let ev = match Evaluator::new_unchecked(w.clone()) {
        Ok(ev) => ev,
        Err(e) => {
            let mut s = SuiteResult::new("extraction");
            s.record(Err(format!("cannot build evaluator: {e}")));
            report.suites.push(s);
            return report;
        }
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut extraction = SuiteResult::new("extraction");
    extraction.record(match try_extract(&ev) {
        Ok(x) => first_difference(w, &x).map_or(Ok(()), Err),
        Err(e) => Err(format!("extracted structure is invalid: {e}")),
    });

    let mut functoriality = SuiteResult::new("functoriality");
    for word in label_commutation_words(w) {
        functoriality.record(check_split(&ev, &word, 1));
    }
    for _ in 0..iters {
        let word = random_word(&mut rng, w.group(), WordShape::default());
        let k = rng.gen_range(0..=word.0.len());
        functoriality.record(check_split(&ev, &word, k));
    }

    let mut slicing = SuiteResult::new("slicing");
    for _ in 0..iters {
        let word = random_word(&mut rng, w.group(), WordShape::default());
        slicing.record(check_slicing(&ev, &word));
    }

    let mut monoidality = SuiteResult::new("monoidality");
    for _ in 0..iters {
        let widths: Vec<usize> = (0..4).map(|_| rng.gen_range(0..=2)).collect();
        let a = random_cobordism(&mut rng, w.group(), widths[0], widths[1]);
        let b = random_cobordism(&mut rng, w.group(), widths[2], widths[3]);
        monoidality.record(
            (|| {
                let whole = ev.evaluate(&a.tensor(&b).map_err(|e| e.to_string())?);
                let parts = ev
                    .evaluate(&a)
                    .and_then(|x| Ok(x.kron(&ev.evaluate(&b)?)?));
                match (whole, parts) {
                    (Ok(x), Ok(y)) if x == y => Ok(()),
                    (Ok(_), Ok(_)) => Err(format!("E(a|b) != E(a) (x) E(b) for\n{a}\n{b}")),
                    (Err(e), _) | (_, Err(e)) => Err(e.to_string()),
                }
            })(),
        );
    }

    report.suites = vec![extraction, functoriality, slicing, monoidality];
    report
}

/// Words sliding a labeled cylinder through pants and copants, one per
/// generator and placement. They pass exactly when the module condition holds.
fn label_commutation_words(w: &AFrobeniusAlgebra) -> Vec<Word> {
    let mut words = Vec::new();
    for g in w.group().generators() {
        let cyl = || Generator::Cyl(g.clone());
        let one = |gens: Vec<Generator>| Slice(gens);
        words.push(Word(vec![
            one(vec![cyl(), Generator::Id]),
            one(vec![Generator::Pants]),
        ]));
        words.push(Word(vec![
            one(vec![Generator::Id, cyl()]),
            one(vec![Generator::Pants]),
        ]));
        words.push(Word(vec![
            one(vec![Generator::Copants]),
            one(vec![cyl(), Generator::Id]),
        ]));
        words.push(Word(vec![
            one(vec![Generator::Copants]),
            one(vec![Generator::Id, cyl()]),
        ]));
    }
    words
}

fn check_slicing(ev: &Evaluator, word: &Word) -> Result<(), String> {
    let composite = word
        .compose(ev.algebra().group())
        .map_err(|e| format!("{word}: {e}"))?;
    let by_slices = ev.evaluate_word(word).map_err(|e| format!("{word}: {e}"))?;
    let whole = ev.evaluate(&composite).map_err(|e| format!("{word}: {e}"))?;
    if by_slices == whole {
        Ok(())
    } else {
        Err(format!("slice-by-slice evaluation differs from E(composite) on word `{word}`"))
    }
}

/// `E(second ∘ first) = E(second) · E(first)` for the word cut before slice `k`.
fn check_split(ev: &Evaluator, word: &Word, k: usize) -> Result<(), String> {
    let group = ev.algebra().group();
    let (first, second) = word.split_at(k);
    let source = word.source();
    let compose = |w: &Word, from: usize| -> Result<_, String> {
        if w.0.is_empty() {
            Ok(crate::cobordism::Cobordism::identity(from, group))
        } else {
            w.compose(group).map_err(|e| format!("{word}: {e}"))
        }
    };
    let a = compose(&first, source)?;
    let b = compose(&second, a.target())?;
    let whole = b.compose(&a).map_err(|e| format!("{word}: {e}"))?;
    let eval = |c| ev.evaluate(c).map_err(|e| format!("{word}: {e}"));
    let product: LinearMap = eval(&b)?
        .matmul(&eval(&a)?)
        .map_err(|e| format!("{word}: {e}"))?;
    if eval(&whole)? == product {
        Ok(())
    } else {
        Err(format!(
            "E(second) * E(first) differs from E(second o first) on word `{word}` cut before slice {k}"
        ))
    }
}

/// Names the first field where `extracted` differs from `original`.
fn first_difference(original: &AFrobeniusAlgebra, extracted: &AFrobeniusAlgebra) -> Option<String> {
    let (a, b) = (original.algebra(), extracted.algebra());
    if a.dim() != b.dim() || original.group() != extracted.group() {
        return Some("dimension or group differs".into());
    }
    let d = a.dim();
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                if a.structure_constant(i, j, k) != b.structure_constant(i, j, k) {
                    return Some(format!(
                        "structure constant c[{i}][{j}][{k}]: {} became {}",
                        a.structure_constant(i, j, k),
                        b.structure_constant(i, j, k)
                    ));
                }
            }
        }
    }
    if a.unit() != b.unit() {
        return Some("unit differs".into());
    }
    if a.counit() != b.counit() {
        return Some("counit differs".into());
    }
    for (n, (x, y)) in original
        .generator_actions()
        .iter()
        .zip(extracted.generator_actions())
        .enumerate()
    {
        if x != y {
            return Some(format!("action of g{} differs: {x} became {y}", n + 1));
        }
    }
    if a.basis_names() != b.basis_names() {
        return Some("basis names differ".into());
    }
    None
}
