//! Labeled 2-cobordisms: the morphisms of the skeletal surface category.
//!
//! Objects are circle counts. A morphism `m → n` is a list of connected
//! components; each records its genus, which source circles (`inputs`) and
//! target circles (`outputs`) bound it, and one group label. Boundary
//! parametrizations and the homotopy classes of maps to the background space
//! are quotiented away, so this data is complete: two cobordisms are equal
//! exactly when their canonical component lists agree.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::group::{AbelianGroup, GroupElement, GroupError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CobordismError {
    #[error("cannot compose: first has {first_target} outgoing circles, second expects {second_source}")]
    ObjectMismatch {
        first_target: usize,
        second_source: usize,
    },
    #[error("label groups differ: {left} vs {right}")]
    GroupMismatch { left: String, right: String },
    #[error("{side} circle {port} is {problem}")]
    BadPort {
        side: &'static str,
        port: usize,
        problem: &'static str,
    },
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// One connected piece of a cobordism.
///
/// Field order is the canonical sort key: inputs, outputs, genus, label.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Component {
    inputs: BTreeSet<usize>,
    outputs: BTreeSet<usize>,
    genus: u32,
    label: GroupElement,
}

impl Component {
    pub fn new(
        genus: u32,
        inputs: impl IntoIterator<Item = usize>,
        outputs: impl IntoIterator<Item = usize>,
        label: GroupElement,
    ) -> Self {
        Component {
            inputs: inputs.into_iter().collect(),
            outputs: outputs.into_iter().collect(),
            genus,
            label,
        }
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn inputs(&self) -> &BTreeSet<usize> {
        &self.inputs
    }

    pub fn outputs(&self) -> &BTreeSet<usize> {
        &self.outputs
    }

    pub fn label(&self) -> &GroupElement {
        &self.label
    }

    pub fn is_closed(&self) -> bool {
        self.inputs.is_empty() && self.outputs.is_empty()
    }

    pub fn boundary_count(&self) -> usize {
        self.inputs.len() + self.outputs.len()
    }

    /// `χ = 2 − 2g − b`.
    pub fn euler_characteristic(&self) -> i64 {
        2 - 2 * self.genus as i64 - self.boundary_count() as i64
    }
}

fn fmt_set(set: &BTreeSet<usize>) -> String {
    let items: Vec<String> = set.iter().map(usize::to_string).collect();
    format!("{{{}}}", items.join(","))
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "comp genus={} in={} out={} label={}",
            self.genus,
            fmt_set(&self.inputs),
            fmt_set(&self.outputs),
            self.label
        )
    }
}

/// A morphism `source → target` held in canonical form.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Cobordism {
    source: usize,
    target: usize,
    components: Vec<Component>,
    group: AbelianGroup,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[rb] = ra;
        }
    }
}

/// For each port in `0..count`, the index of the component that owns it.
fn port_owners<'a>(
    count: usize,
    side: &'static str,
    ports: impl Iterator<Item = (usize, &'a BTreeSet<usize>)>,
) -> Result<Vec<usize>, CobordismError> {
    let mut owner = vec![None; count];
    for (k, set) in ports {
        for &p in set {
            let slot = owner.get_mut(p).ok_or(CobordismError::BadPort {
                side,
                port: p,
                problem: "out of range",
            })?;
            if slot.replace(k).is_some() {
                return Err(CobordismError::BadPort {
                    side,
                    port: p,
                    problem: "claimed by two components",
                });
            }
        }
    }
    owner
        .into_iter()
        .enumerate()
        .map(|(p, o)| {
            o.ok_or(CobordismError::BadPort {
                side,
                port: p,
                problem: "not attached to any component",
            })
        })
        .collect()
}

impl Cobordism {
    /// Validate the port partition and labels, then canonicalize.
    pub fn new(
        source: usize,
        target: usize,
        components: Vec<Component>,
        group: AbelianGroup,
    ) -> Result<Self, CobordismError> {
        port_owners(source, "source", components.iter().map(|c| &c.inputs).enumerate())?;
        port_owners(target, "target", components.iter().map(|c| &c.outputs).enumerate())?;
        if let Some(c) = components.iter().find(|c| !group.contains(&c.label)) {
            return Err(GroupError::NotAMember {
                element: c.label.to_string(),
                group: group.to_string(),
            }
            .into());
        }
        Ok(Cobordism {
            source,
            target,
            components,
            group,
        }
        .canonical_form())
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn closed_components(&self) -> impl Iterator<Item = &Component> {
        self.components.iter().filter(|c| c.is_closed())
    }

    /// Components sorted by (inputs, outputs, genus, label).
    pub fn canonical_form(&self) -> Cobordism {
        let mut components = self.components.clone();
        components.sort();
        Cobordism {
            components,
            ..self.clone()
        }
    }

    /// Equality of classifying data. Constructors keep values canonical, so
    /// this agrees with `==`; it re-sorts anyway so it never depends on that.
    pub fn equals(&self, other: &Cobordism) -> bool {
        self.source == other.source
            && self.target == other.target
            && self.group == other.group
            && self.canonical_form().components == other.canonical_form().components
    }

    fn same_group(&self, other: &Cobordism) -> Result<(), CobordismError> {
        if self.group != other.group {
            return Err(CobordismError::GroupMismatch {
                left: self.group.to_string(),
                right: other.group.to_string(),
            });
        }
        Ok(())
    }

    /// `self ∘ first`: glue `first`'s outgoing circle `j` to `self`'s incoming circle `j`.
    ///
    /// Genus of each merged piece comes from additivity of `χ` under gluing along circles.
    pub fn compose(&self, first: &Cobordism) -> Result<Cobordism, CobordismError> {
        self.same_group(first)?;
        if first.target != self.source {
            return Err(CobordismError::ObjectMismatch {
                first_target: first.target,
                second_source: self.source,
            });
        }
        let offset = first.components.len();
        let pieces: Vec<&Component> = first.components.iter().chain(&self.components).collect();
        let out_owner = port_owners(
            first.target,
            "target",
            first.components.iter().map(|c| &c.outputs).enumerate(),
        )?;
        let in_owner = port_owners(
            self.source,
            "source",
            self.components.iter().map(|c| &c.inputs).enumerate(),
        )?;
        let mut uf = UnionFind::new(pieces.len());
        for (a, b) in out_owner.iter().zip(&in_owner) {
            uf.union(*a, offset + b);
        }

        struct Merged {
            chi: i64,
            label: GroupElement,
            inputs: BTreeSet<usize>,
            outputs: BTreeSet<usize>,
        }
        let mut merged: Vec<Option<Merged>> = (0..pieces.len()).map(|_| None).collect();
        for (k, piece) in pieces.iter().enumerate() {
            let root = uf.find(k);
            let entry = merged[root].get_or_insert_with(|| Merged {
                chi: 0,
                label: self.group.identity(),
                inputs: BTreeSet::new(),
                outputs: BTreeSet::new(),
            });
            entry.chi += piece.euler_characteristic();
            entry.label = self.group.multiply(&entry.label, &piece.label)?;
            if k < offset {
                entry.inputs.extend(&piece.inputs);
            } else {
                entry.outputs.extend(&piece.outputs);
            }
        }

        let components = merged
            .into_iter()
            .flatten()
            .map(|m| {
                let b = (m.inputs.len() + m.outputs.len()) as i64;
                let twice_genus = 2 - m.chi - b;
                assert!(
                    twice_genus >= 0 && twice_genus % 2 == 0,
                    "gluing produced impossible genus: chi={}, b={}",
                    m.chi,
                    b
                );
                Component {
                    inputs: m.inputs,
                    outputs: m.outputs,
                    genus: (twice_genus / 2) as u32,
                    label: m.label,
                }
            })
            .collect();
        Ok(Cobordism {
            source: first.source,
            target: self.target,
            components,
            group: self.group.clone(),
        }
        .canonical_form())
    }

    /// Diagrammatic order: `self` first, then `next`.
    pub fn then(&self, next: &Cobordism) -> Result<Cobordism, CobordismError> {
        next.compose(self)
    }

    /// Disjoint union; `right`'s circles are numbered after `left`'s.
    pub fn tensor(&self, right: &Cobordism) -> Result<Cobordism, CobordismError> {
        self.same_group(right)?;
        let shifted = right.components.iter().map(|c| Component {
            inputs: c.inputs.iter().map(|p| p + self.source).collect(),
            outputs: c.outputs.iter().map(|p| p + self.target).collect(),
            ..c.clone()
        });
        Ok(Cobordism {
            source: self.source + right.source,
            target: self.target + right.target,
            components: self.components.iter().cloned().chain(shifted).collect(),
            group: self.group.clone(),
        }
        .canonical_form())
    }

    /// The same surface with every label replaced by the identity of the trivial group.
    pub fn erase_labels(&self) -> Cobordism {
        let trivial = AbelianGroup::trivial();
        Cobordism {
            source: self.source,
            target: self.target,
            components: self
                .components
                .iter()
                .map(|c| Component {
                    label: trivial.identity(),
                    ..c.clone()
                })
                .collect(),
            group: trivial,
        }
        .canonical_form()
    }

    // Generators.

    pub fn identity(n: usize, group: &AbelianGroup) -> Cobordism {
        let components = (0..n)
            .map(|i| Component::new(0, [i], [i], group.identity()))
            .collect();
        Cobordism {
            source: n,
            target: n,
            components,
            group: group.clone(),
        }
    }

    fn connected(
        source: usize,
        target: usize,
        genus: u32,
        label: GroupElement,
        group: &AbelianGroup,
    ) -> Cobordism {
        Cobordism {
            source,
            target,
            components: vec![Component::new(genus, 0..source, 0..target, label)],
            group: group.clone(),
        }
    }

    /// Disc `0 → 1`.
    pub fn cup(group: &AbelianGroup) -> Cobordism {
        Cobordism::connected(0, 1, 0, group.identity(), group)
    }

    /// Disc `1 → 0`.
    pub fn cap(group: &AbelianGroup) -> Cobordism {
        Cobordism::connected(1, 0, 0, group.identity(), group)
    }

    pub fn pants(group: &AbelianGroup) -> Cobordism {
        Cobordism::connected(2, 1, 0, group.identity(), group)
    }

    pub fn copants(group: &AbelianGroup) -> Cobordism {
        Cobordism::connected(1, 2, 0, group.identity(), group)
    }

    /// Cylinder `1 → 1` labeled `g`.
    pub fn cylinder(g: &GroupElement, group: &AbelianGroup) -> Result<Cobordism, CobordismError> {
        Cobordism::new(1, 1, vec![Component::new(0, [0], [0], g.clone())], group.clone())
    }

    pub fn swap(group: &AbelianGroup) -> Cobordism {
        Cobordism {
            source: 2,
            target: 2,
            components: vec![
                Component::new(0, [0], [1], group.identity()),
                Component::new(0, [1], [0], group.identity()),
            ],
            group: group.clone(),
        }
    }

    /// A single closed surface `0 → 0`.
    pub fn closed(
        genus: u32,
        g: &GroupElement,
        group: &AbelianGroup,
    ) -> Result<Cobordism, CobordismError> {
        Cobordism::new(0, 0, vec![Component::new(genus, [], [], g.clone())], group.clone())
    }
}

/// `cob m->n group=<literal> { comp ... }`, one component per line.
impl fmt::Display for Cobordism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "cob {}->{} group={} {{", self.source, self.target, self.group)?;
        for c in &self.components {
            writeln!(f, "  {c}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample::{random_cobordism, random_composable_triple};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn z2() -> AbelianGroup {
        AbelianGroup::cyclic(2).unwrap()
    }

    fn z4() -> AbelianGroup {
        AbelianGroup::cyclic(4).unwrap()
    }

    #[test]
    fn identity_examples() {
        let g = z2();
        assert!(Cobordism::identity(0, &g).components().is_empty());
        let id2 = Cobordism::identity(2, &g);
        assert_eq!(id2.components().len(), 2);
        assert!(id2.components().iter().all(|c| c.genus() == 0 && c.label().is_identity()));
    }

    #[test]
    fn labeled_cylinders_multiply() {
        let g = z4();
        let a = g.element(&[1]).unwrap();
        let b = g.element(&[2]).unwrap();
        let composite = Cobordism::cylinder(&a, &g)
            .unwrap()
            .compose(&Cobordism::cylinder(&b, &g).unwrap())
            .unwrap();
        let expected = Cobordism::cylinder(&g.element(&[3]).unwrap(), &g).unwrap();
        assert_eq!(composite, expected);
    }

    #[test]
    fn pants_after_copants_is_the_handle() {
        let g = z2();
        let handle = Cobordism::pants(&g).compose(&Cobordism::copants(&g)).unwrap();
        assert_eq!(handle.components(), &[Component::new(1, [0], [0], g.identity())]);
    }

    #[test]
    fn cap_after_cup_is_the_sphere() {
        let g = z2();
        let sphere = Cobordism::cap(&g).compose(&Cobordism::cup(&g)).unwrap();
        assert_eq!(sphere, Cobordism::closed(0, &g.identity(), &g).unwrap());
    }

    #[test]
    fn crossed_cylinders_carry_labels_along_strands() {
        let g = z4();
        let one = g.element(&[1]).unwrap();
        let two = g.element(&[2]).unwrap();
        let three = g.element(&[3]).unwrap();
        let cyl = |e: &GroupElement| Cobordism::cylinder(e, &g).unwrap();
        let first = cyl(&one).tensor(&cyl(&two)).unwrap();
        let second = cyl(&three).tensor(&cyl(&one)).unwrap();
        let composite = second
            .compose(&Cobordism::swap(&g))
            .unwrap()
            .compose(&first)
            .unwrap();
        // Strand from source 0 carries 1, crosses to position 1, picks up 1: total 2.
        // Strand from source 1 carries 2, crosses to position 0, picks up 3: total 1.
        let expected = Cobordism::new(
            2,
            2,
            vec![
                Component::new(0, [0], [1], two.clone()),
                Component::new(0, [1], [0], one.clone()),
            ],
            g.clone(),
        )
        .unwrap();
        assert_eq!(composite, expected);
    }

    #[test]
    fn composition_errors() {
        let g = z2();
        assert_eq!(
            Cobordism::cup(&g).compose(&Cobordism::pants(&g)),
            Err(CobordismError::ObjectMismatch {
                first_target: 1,
                second_source: 0
            })
        );
        assert!(matches!(
            Cobordism::identity(1, &z4()).compose(&Cobordism::identity(1, &g)),
            Err(CobordismError::GroupMismatch { .. })
        ));
        assert!(matches!(
            Cobordism::identity(1, &z4()).tensor(&Cobordism::identity(1, &g)),
            Err(CobordismError::GroupMismatch { .. })
        ));
    }

    #[test]
    fn invalid_port_partitions_are_rejected() {
        let g = z2();
        let id = g.identity();
        let dup = Cobordism::new(
            2,
            1,
            vec![
                Component::new(0, [0], [0], id.clone()),
                Component::new(0, [0, 1], [], id.clone()),
            ],
            g.clone(),
        );
        assert!(matches!(dup, Err(CobordismError::BadPort { side: "source", port: 0, .. })));
        let missing = Cobordism::new(1, 2, vec![Component::new(0, [0], [1], id.clone())], g.clone());
        assert!(matches!(missing, Err(CobordismError::BadPort { side: "target", port: 0, .. })));
        let range = Cobordism::new(1, 1, vec![Component::new(0, [0], [3], id)], g.clone());
        assert!(matches!(range, Err(CobordismError::BadPort { port: 3, .. })));
        let foreign = Cobordism::closed(0, &z4().element(&[3]).unwrap(), &g);
        assert!(matches!(foreign, Err(CobordismError::Group(_))));
    }

    #[test]
    fn tensor_examples() {
        let g = z2();
        let id1 = Cobordism::identity(1, &g);
        assert_eq!(id1.tensor(&id1).unwrap(), Cobordism::identity(2, &g));
        let p = Cobordism::pants(&g);
        let id0 = Cobordism::identity(0, &g);
        assert_eq!(p.tensor(&id0).unwrap(), p);
        assert_eq!(id0.tensor(&p).unwrap(), p);
    }

    #[test]
    fn canonical_form_ignores_listing_order() {
        let g = z2();
        let a = Component::new(2, [], [], g.identity());
        let b = Component::new(1, [], [], g.identity());
        let x = Cobordism::new(0, 0, vec![a.clone(), b.clone()], g.clone()).unwrap();
        let y = Cobordism::new(0, 0, vec![b, a], g.clone()).unwrap();
        assert_eq!(x, y);
        assert!(x.equals(&y));
        assert_eq!(x.canonical_form(), x);
    }

    #[test]
    fn equality_separates_labels_and_genus() {
        let g = z2();
        let t = g.generator(0);
        assert!(!Cobordism::cylinder(&t, &g)
            .unwrap()
            .equals(&Cobordism::identity(1, &g)));
        let handle = Cobordism::new(1, 1, vec![Component::new(1, [0], [0], g.identity())], g.clone())
            .unwrap();
        assert!(!handle.equals(&Cobordism::identity(1, &g)));
    }

    #[test]
    fn generator_identities() {
        let g = z2();
        assert_eq!(
            Cobordism::cylinder(&g.identity(), &g).unwrap(),
            Cobordism::identity(1, &g)
        );
        let swap = Cobordism::swap(&g);
        assert_eq!(swap.compose(&swap).unwrap(), Cobordism::identity(2, &g));
        let pants = Cobordism::pants(&g);
        assert_eq!(pants.compose(&swap).unwrap(), pants);
        let copants = Cobordism::copants(&g);
        assert_eq!(swap.compose(&copants).unwrap(), copants);
    }

    #[test]
    fn display_format() {
        let g = z2();
        let handle = Cobordism::pants(&g).compose(&Cobordism::copants(&g)).unwrap();
        assert_eq!(
            handle.to_string(),
            "cob 1->1 group=Z/2 {\n  comp genus=1 in={0} out={0} label=(0)\n}"
        );
    }

    #[test]
    fn category_laws_on_random_cobordisms() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let g = z4();
        for _ in 0..200 {
            let (a, b, c) = random_composable_triple(&mut rng, &g, 3);
            let left = c.compose(&b).unwrap().compose(&a).unwrap();
            let right = c.compose(&b.compose(&a).unwrap()).unwrap();
            assert_eq!(left, right);
            assert_eq!(Cobordism::identity(a.target(), &g).compose(&a).unwrap(), a);
            assert_eq!(a.compose(&Cobordism::identity(a.source(), &g)).unwrap(), a);
            assert_eq!(left.canonical_form(), left);
        }
    }

    #[test]
    fn interchange_law() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let g = z4();
        for _ in 0..100 {
            let (s3, s1, _) = random_composable_triple(&mut rng, &g, 2);
            let (s4, s2, _) = random_composable_triple(&mut rng, &g, 2);
            let left = s1.tensor(&s2).unwrap().compose(&s3.tensor(&s4).unwrap()).unwrap();
            let right = s1.compose(&s3).unwrap().tensor(&s2.compose(&s4).unwrap()).unwrap();
            assert_eq!(left, right);
        }
    }

    #[test]
    fn erasing_labels_commutes_with_operations() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let g = z4();
        for _ in 0..100 {
            let (a, b, _) = random_composable_triple(&mut rng, &g, 3);
            let c = random_cobordism(&mut rng, &g, 1, 2);
            assert_eq!(
                b.compose(&a).unwrap().erase_labels(),
                b.erase_labels().compose(&a.erase_labels()).unwrap()
            );
            assert_eq!(
                a.tensor(&c).unwrap().erase_labels(),
                a.erase_labels().tensor(&c.erase_labels()).unwrap()
            );
        }
    }
}
