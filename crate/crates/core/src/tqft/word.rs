use std::fmt;

use crate::cobordism::{Cobordism, CobordismError};
use crate::group::{AbelianGroup, GroupElement};

/// A generating cobordism, as it appears inside a slice of a [`Word`].
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Generator {
    Id,
    Cup,
    Cap,
    Pants,
    Copants,
    Swap,
    Cyl(GroupElement),
    Closed { genus: u32, label: GroupElement },
}

impl Generator {
    pub fn source(&self) -> usize {
        match self {
            Generator::Cup | Generator::Closed { .. } => 0,
            Generator::Id | Generator::Cap | Generator::Copants | Generator::Cyl(_) => 1,
            Generator::Pants | Generator::Swap => 2,
        }
    }

    pub fn target(&self) -> usize {
        match self {
            Generator::Cap | Generator::Closed { .. } => 0,
            Generator::Id | Generator::Cup | Generator::Pants | Generator::Cyl(_) => 1,
            Generator::Copants | Generator::Swap => 2,
        }
    }

    pub fn to_cobordism(&self, group: &AbelianGroup) -> Result<Cobordism, CobordismError> {
        Ok(match self {
            Generator::Id => Cobordism::identity(1, group),
            Generator::Cup => Cobordism::cup(group),
            Generator::Cap => Cobordism::cap(group),
            Generator::Pants => Cobordism::pants(group),
            Generator::Copants => Cobordism::copants(group),
            Generator::Swap => Cobordism::swap(group),
            Generator::Cyl(g) => Cobordism::cylinder(g, group)?,
            Generator::Closed { genus, label } => Cobordism::closed(*genus, label, group)?,
        })
    }

    fn erase_label(&self) -> Generator {
        match self {
            Generator::Cyl(_) => Generator::Cyl(AbelianGroup::trivial().identity()),
            Generator::Closed { genus, .. } => Generator::Closed {
                genus: *genus,
                label: AbelianGroup::trivial().identity(),
            },
            other => other.clone(),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Id => write!(f, "id"),
            Generator::Cup => write!(f, "cup"),
            Generator::Cap => write!(f, "cap"),
            Generator::Pants => write!(f, "pants"),
            Generator::Copants => write!(f, "copants"),
            Generator::Swap => write!(f, "swap"),
            Generator::Cyl(g) => write!(f, "cyl[{g}]"),
            Generator::Closed { genus, label } => write!(f, "closed[{genus};{label}]"),
        }
    }
}

/// Generators placed side by side; an empty slice is the identity on no circles.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Slice(pub Vec<Generator>);

impl Slice {
    pub fn source(&self) -> usize {
        self.0.iter().map(Generator::source).sum()
    }

    pub fn target(&self) -> usize {
        self.0.iter().map(Generator::target).sum()
    }

    pub fn to_cobordism(&self, group: &AbelianGroup) -> Result<Cobordism, CobordismError> {
        self.0.iter().try_fold(Cobordism::identity(0, group), |acc, g| {
            acc.tensor(&g.to_cobordism(group)?)
        })
    }
}

impl fmt::Display for Slice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "id[0]");
        }
        let parts: Vec<String> = self.0.iter().map(Generator::to_string).collect();
        write!(f, "{}", parts.join(" | "))
    }
}

/// Slices applied left to right: a decomposition of a cobordism into generators.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Word(pub Vec<Slice>);

impl Word {
    pub fn source(&self) -> usize {
        self.0.first().map_or(0, Slice::source)
    }

    pub fn target(&self) -> usize {
        self.0.last().map_or(0, Slice::target)
    }

    /// The composite cobordism. Fails if adjacent slices do not fit.
    pub fn compose(&self, group: &AbelianGroup) -> Result<Cobordism, CobordismError> {
        self.0
            .iter()
            .try_fold(Cobordism::identity(self.source(), group), |acc, s| {
                acc.then(&s.to_cobordism(group)?)
            })
    }

    pub fn erase_labels(&self) -> Word {
        Word(
            self.0
                .iter()
                .map(|s| Slice(s.0.iter().map(Generator::erase_label).collect()))
                .collect(),
        )
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &Word) -> Word {
        Word(self.0.iter().chain(&next.0).cloned().collect())
    }

    pub fn split_at(&self, k: usize) -> (Word, Word) {
        (Word(self.0[..k].to_vec()), Word(self.0[k..].to_vec()))
    }
}

/// DSL syntax: slices joined by ` ; `, generators within a slice by ` | `.
impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "id[0]");
        }
        let parts: Vec<String> = self.0.iter().map(Slice::to_string).collect();
        write!(f, "{}", parts.join(" ; "))
    }
}
