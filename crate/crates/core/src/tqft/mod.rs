//! The two halves of the correspondence between monoidal representations of
//! the labeled surface category and A-Frobenius algebras.
//!
//! [`Evaluator`] turns an A-Frobenius algebra into a representation: every
//! labeled cobordism becomes a linear map. [`extract`] goes back, reading the
//! algebra off the images of pants, cup, cap and labeled cylinders.
//!
//! A connected component with `a` inputs, `b` outputs, genus `g` and label `x`
//! evaluates to `μ_b ∘ i(x) ∘ H^g ∘ μ_a`, where `μ_a` is `a`-fold multiplication
//! (the unit when `a = 0`), `H` is the handle operator and `μ_b` is `b`-fold
//! comultiplication (the counit when `b = 0`). Within a component, port order
//! is irrelevant by (co)commutativity, so ports are gathered in sorted order.

mod roundtrip;
mod word;

use num_traits::One;
use thiserror::Error;

use crate::cobordism::{Cobordism, CobordismError, Component};
use crate::frobenius::{AFrobeniusAlgebra, FrobeniusAlgebra, FrobeniusError, ValidationError};
use crate::group::{AbelianGroup, GroupElement};
use crate::linalg::{LinalgError, LinearMap, Permutation, Scalar};

pub use roundtrip::{roundtrip_report, RoundtripReport, SuiteResult};
pub use word::{Generator, Slice, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TqftError {
    #[error("cobordism is labeled by {found}, but the algebra is acted on by {expected}")]
    GroupMismatch { expected: String, found: String },
    #[error("slice {index} expects {expected} incoming circles but receives {found}")]
    SliceMismatch {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error(transparent)]
    Invalid(#[from] ValidationError),
    #[error(transparent)]
    Frobenius(#[from] FrobeniusError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Cobordism(#[from] CobordismError),
}

/// Anything that assigns linear maps to labeled cobordisms, with `V = E(1)`.
pub trait MonoidalRepresentation {
    fn group(&self) -> &AbelianGroup;
    fn dim(&self) -> usize;
    /// Names for a basis of `V`; metadata only.
    fn basis_names(&self) -> Vec<String>;
    fn evaluate(&self, cobordism: &Cobordism) -> Result<LinearMap, TqftError>;
}

/// Evaluation functor built from an A-Frobenius algebra. Derived operators
/// are computed once at construction.
#[derive(Clone, Debug)]
pub struct Evaluator {
    algebra: AFrobeniusAlgebra,
    multiplication: LinearMap,
    comultiplication: LinearMap,
    unit: LinearMap,
    counit: LinearMap,
    handle: LinearMap,
    generators: Vec<LinearMap>,
    inverse_generators: Vec<LinearMap>,
}

impl Evaluator {
    /// Validates every axiom first.
    pub fn new(algebra: AFrobeniusAlgebra) -> Result<Self, TqftError> {
        algebra.validate()?;
        Evaluator::new_unchecked(algebra)
    }

    /// Builds the operators without checking the axioms; only a nondegenerate
    /// pairing and invertible action matrices are required. Used to exhibit
    /// how broken structures break functoriality.
    pub fn new_unchecked(algebra: AFrobeniusAlgebra) -> Result<Self, TqftError> {
        let alg = algebra.algebra();
        let multiplication = alg.multiplication_map();
        let comultiplication = alg.comultiplication()?;
        let handle = multiplication.matmul(&comultiplication)?;
        let generators = algebra.generator_actions().to_vec();
        let inverse_generators = generators
            .iter()
            .map(LinearMap::invert)
            .collect::<Result<_, _>>()?;
        Ok(Evaluator {
            unit: alg.unit_map(),
            counit: alg.counit_map(),
            multiplication,
            comultiplication,
            handle,
            generators,
            inverse_generators,
            algebra,
        })
    }

    pub fn algebra(&self) -> &AFrobeniusAlgebra {
        &self.algebra
    }

    pub fn frobenius(&self) -> &FrobeniusAlgebra {
        self.algebra.algebra()
    }

    fn d(&self) -> usize {
        self.algebra.dim()
    }

    fn check_group(&self, group: &AbelianGroup) -> Result<(), TqftError> {
        if group != self.algebra.group() {
            return Err(TqftError::GroupMismatch {
                expected: self.algebra.group().to_string(),
                found: group.to_string(),
            });
        }
        Ok(())
    }

    /// `i(g)` from the cached generator matrices.
    pub fn action(&self, g: &GroupElement) -> Result<LinearMap, TqftError> {
        if !self.algebra.group().contains(g) {
            return Err(TqftError::GroupMismatch {
                expected: self.algebra.group().to_string(),
                found: g.to_string(),
            });
        }
        let mut acc = LinearMap::identity(self.d(), 1);
        for (j, e) in g.coords().into_iter().enumerate() {
            let base = if e < 0 {
                &self.inverse_generators[j]
            } else {
                &self.generators[j]
            };
            for _ in 0..e.unsigned_abs() {
                acc = base.matmul(&acc)?;
            }
        }
        Ok(acc)
    }

    /// `V^⊗a → V`; the unit for `a = 0`.
    fn fold_multiply(&self, a: usize) -> Result<LinearMap, TqftError> {
        let d = self.d();
        if a == 0 {
            return Ok(self.unit.clone());
        }
        let id = LinearMap::identity(d, 1);
        let mut acc = id.clone();
        for _ in 1..a {
            acc = self.multiplication.matmul(&acc.kron(&id)?)?;
        }
        Ok(acc)
    }

    /// `V → V^⊗b`; the counit for `b = 0`.
    fn fold_comultiply(&self, b: usize) -> Result<LinearMap, TqftError> {
        let d = self.d();
        if b == 0 {
            return Ok(self.counit.clone());
        }
        let id = LinearMap::identity(d, 1);
        let mut acc = id.clone();
        for _ in 1..b {
            acc = acc.kron(&id)?.matmul(&self.comultiplication)?;
        }
        Ok(acc)
    }

    /// `μ_b ∘ i(label) ∘ H^genus ∘ μ_a`, a map `V^⊗a → V^⊗b`.
    pub fn evaluate_component(&self, c: &Component) -> Result<LinearMap, TqftError> {
        let middle = self.action(c.label())?.matmul(&self.handle.pow(c.genus())?)?;
        let gathered = middle.matmul(&self.fold_multiply(c.inputs().len())?)?;
        Ok(self
            .fold_comultiply(c.outputs().len())?
            .matmul(&gathered)?)
    }

    /// `E(Σ): V^⊗m → V^⊗n`.
    pub fn evaluate(&self, cobordism: &Cobordism) -> Result<LinearMap, TqftError> {
        self.check_group(cobordism.group())?;
        let d = self.d();
        let mut closed_factor = Scalar::one();
        let mut blocks = Vec::new();
        let mut gather = Vec::with_capacity(cobordism.source());
        let mut scatter = Vec::with_capacity(cobordism.target());
        for c in cobordism.components() {
            let map = self.evaluate_component(c)?;
            if c.is_closed() {
                closed_factor *= map.get(0, 0);
            } else {
                gather.extend(c.inputs().iter().copied());
                scatter.extend(c.outputs().iter().copied());
                blocks.push(map);
            }
        }
        let body = LinearMap::kron_all(d, &blocks)?;
        // Source circle gather[t] feeds tensor slot t; slot t feeds target circle scatter[t].
        let gather = Permutation::new(gather)?.inverse();
        let scatter = Permutation::new(scatter)?;
        Ok(body
            .permute_source(&gather)?
            .permute_target(&scatter)?
            .scale(&closed_factor))
    }

    /// The matrix of a single generator, read directly off the algebra.
    pub fn generator_map(&self, g: &Generator) -> Result<LinearMap, TqftError> {
        let d = self.d();
        Ok(match g {
            Generator::Id => LinearMap::identity(d, 1),
            Generator::Cup => self.unit.clone(),
            Generator::Cap => self.counit.clone(),
            Generator::Pants => self.multiplication.clone(),
            Generator::Copants => self.comultiplication.clone(),
            Generator::Swap => LinearMap::permute_factors(&Permutation::transposition(2, 0, 1), d),
            Generator::Cyl(label) => self.action(label)?,
            Generator::Closed { genus, label } => {
                let v = self
                    .action(label)?
                    .matmul(&self.handle.pow(*genus)?)?
                    .matmul(&self.unit)?;
                self.counit.matmul(&v)?
            }
        })
    }

    /// Product of the slices' Kronecker-assembled generator matrices.
    pub fn evaluate_word(&self, word: &Word) -> Result<LinearMap, TqftError> {
        let mut state = LinearMap::identity(self.d(), word.source());
        for (index, slice) in word.0.iter().enumerate() {
            if slice.source() != state.target_arity() {
                return Err(TqftError::SliceMismatch {
                    index,
                    expected: slice.source(),
                    found: state.target_arity(),
                });
            }
            let maps = slice
                .0
                .iter()
                .map(|g| self.generator_map(g))
                .collect::<Result<Vec<_>, _>>()?;
            state = LinearMap::kron_apply(&maps, &state)?;
        }
        Ok(state)
    }
}

impl MonoidalRepresentation for Evaluator {
    fn group(&self) -> &AbelianGroup {
        self.algebra.group()
    }

    fn dim(&self) -> usize {
        self.d()
    }

    fn basis_names(&self) -> Vec<String> {
        self.frobenius().basis_names().to_vec()
    }

    fn evaluate(&self, cobordism: &Cobordism) -> Result<LinearMap, TqftError> {
        Evaluator::evaluate(self, cobordism)
    }
}

/// Read the A-Frobenius algebra back off a representation: multiplication from
/// pants, unit from cup, counit from cap, and the action from labeled cylinders.
/// The result is re-validated.
pub fn try_extract<R: MonoidalRepresentation>(rep: &R) -> Result<AFrobeniusAlgebra, TqftError> {
    let group = rep.group().clone();
    let d = rep.dim();
    let pants = rep.evaluate(&Cobordism::pants(&group))?;
    let mut structure = Vec::with_capacity(d * d * d);
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                structure.push(pants.get(k, i * d + j).clone());
            }
        }
    }
    let unit = rep.evaluate(&Cobordism::cup(&group))?.entries().to_vec();
    let counit = rep.evaluate(&Cobordism::cap(&group))?.entries().to_vec();
    let algebra = FrobeniusAlgebra::new(rep.basis_names(), structure, unit, counit)?;
    let actions = group
        .generators()
        .iter()
        .map(|g| rep.evaluate(&Cobordism::cylinder(g, &group)?))
        .collect::<Result<Vec<_>, _>>()?;
    let extracted = AFrobeniusAlgebra::new(algebra, group, actions)?;
    extracted.validate()?;
    Ok(extracted)
}

/// [`try_extract`] for representations known to be sound; an invalid
/// extraction means the evaluator itself is broken, so this panics.
pub fn extract<R: MonoidalRepresentation>(rep: &R) -> AFrobeniusAlgebra {
    match try_extract(rep) {
        Ok(a) => a,
        Err(e) => panic!("extracted structure fails validation: {e}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frobenius::{group_algebra, plain_group_algebra};

    fn z(m: u64) -> AbelianGroup {
        AbelianGroup::cyclic(m).unwrap()
    }

    fn c4a2() -> Evaluator {
        let h = z(4);
        Evaluator::new(group_algebra(&h, &z(2), &[h.element(&[2]).unwrap()]).unwrap()).unwrap()
    }

    fn c2() -> Evaluator {
        let h = z(2);
        Evaluator::new(group_algebra(&h, &h, &[h.generator(0)]).unwrap()).unwrap()
    }

    fn int(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn cylinder_component_is_the_action() {
        let e = c4a2();
        let g = e.group().generator(0);
        let comp = Component::new(0, [0], [0], g.clone());
        assert_eq!(e.evaluate_component(&comp).unwrap(), e.algebra().action_of(&g).unwrap());
    }

    #[test]
    fn pants_component_is_multiplication() {
        let e = c4a2();
        let comp = Component::new(0, [0, 1], [0], e.group().identity());
        assert_eq!(e.evaluate_component(&comp).unwrap(), e.frobenius().multiplication_map());
    }

    #[test]
    fn torus_computes_dimension() {
        let e = c2();
        let comp = Component::new(1, [], [], e.group().identity());
        assert_eq!(e.evaluate_component(&comp).unwrap(), LinearMap::scalar(2, int(2)));
        // oracle: trace of the identity, Σ_i θ(e_i · e^i) with e^i the dual basis
        let alg = e.frobenius();
        let binv = alg.gram().invert().unwrap();
        let trace: Scalar = (0..2)
            .flat_map(|i| (0..2).map(move |j| (i, j)))
            .map(|(i, j)| binv.get(i, j) * &alg.trace(&alg.product_of_basis(i, j)))
            .sum();
        assert_eq!(trace, int(2));
    }

    #[test]
    fn labeled_sphere_vanishes() {
        let e = c4a2();
        let a = e.group().generator(0);
        let sphere = Cobordism::closed(0, &a, e.group()).unwrap();
        assert_eq!(e.evaluate(&sphere).unwrap(), LinearMap::scalar(4, int(0)));
        let plain = Cobordism::closed(0, &e.group().identity(), e.group()).unwrap();
        assert_eq!(e.evaluate(&plain).unwrap(), LinearMap::scalar(4, int(1)));
    }

    #[test]
    fn identity_and_swap() {
        let e = c4a2();
        for n in 0..4 {
            assert!(e.evaluate(&Cobordism::identity(n, e.group())).unwrap().is_identity());
        }
        assert_eq!(
            e.evaluate(&Cobordism::swap(e.group())).unwrap(),
            LinearMap::permute_factors(&Permutation::transposition(2, 0, 1), 4)
        );
    }

    #[test]
    fn handle_cobordism_matches_handle_operator() {
        let e = c4a2();
        let g = e.group();
        let handle = Cobordism::pants(g).compose(&Cobordism::copants(g)).unwrap();
        assert_eq!(e.evaluate(&handle).unwrap(), e.frobenius().handle().unwrap());
        assert_eq!(
            e.evaluate(&handle).unwrap(),
            LinearMap::identity(4, 1).scale(&int(4))
        );
    }

    #[test]
    fn cap_pants_reproduces_gram() {
        // E(cap ∘ pants) is the bilinear form x⊗y ↦ θ(xy); its entries are the Gram matrix.
        let e = c4a2();
        let g = e.group();
        let form = e.evaluate(&Cobordism::cap(g).compose(&Cobordism::pants(g)).unwrap()).unwrap();
        let gram = e.frobenius().gram();
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(form.get(0, i * 4 + j), gram.get(i, j));
            }
        }
        // and feeding it the copairing leaves the scalar dim V
        let copairing = e.frobenius().copairing().unwrap();
        assert_eq!(form.matmul(&copairing).unwrap(), LinearMap::scalar(4, int(4)));
    }

    #[test]
    fn word_examples() {
        let e = c4a2();
        let cup = Word(vec![Slice(vec![Generator::Cup])]);
        assert_eq!(e.evaluate_word(&cup).unwrap(), e.frobenius().unit_map());
        let a = e.group().generator(0);
        let labeled_pants = Word(vec![
            Slice(vec![Generator::Cyl(a.clone()), Generator::Id]),
            Slice(vec![Generator::Pants]),
        ]);
        let doubled = Word(vec![
            Slice(vec![Generator::Cyl(a.clone()), Generator::Cyl(a.clone())]),
            Slice(vec![Generator::Pants]),
        ]);
        assert_ne!(
            e.evaluate_word(&labeled_pants).unwrap(),
            e.evaluate_word(&doubled).unwrap()
        );
        for w in [cup, labeled_pants, doubled] {
            let composite = w.compose(e.group()).unwrap();
            assert_eq!(e.evaluate_word(&w).unwrap(), e.evaluate(&composite).unwrap());
        }
    }

    #[test]
    fn word_shape_error_names_the_slice() {
        let e = c4a2();
        let w = Word(vec![
            Slice(vec![Generator::Pants]),
            Slice(vec![Generator::Swap]),
        ]);
        assert_eq!(
            e.evaluate_word(&w),
            Err(TqftError::SliceMismatch {
                index: 1,
                expected: 2,
                found: 1
            })
        );
    }

    #[test]
    fn group_mismatch_is_rejected() {
        let e = c4a2();
        assert!(matches!(
            e.evaluate(&Cobordism::identity(1, &z(4))),
            Err(TqftError::GroupMismatch { .. })
        ));
    }

    #[test]
    fn extraction_round_trips() {
        for e in [c2(), c4a2()] {
            assert_eq!(&extract(&e), e.algebra());
        }
        let plain = Evaluator::new(plain_group_algebra(&z(3)).unwrap()).unwrap();
        assert_eq!(&extract(&plain), plain.algebra());
    }

    #[test]
    fn invalid_algebras_are_refused() {
        let e = c4a2();
        let inversion = LinearMap::from_int_rows(
            4,
            1,
            1,
            &[&[1, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, 1, 0], &[0, 1, 0, 0]],
        );
        let broken =
            AFrobeniusAlgebra::new(e.frobenius().clone(), z(2), vec![inversion]).unwrap();
        assert!(matches!(Evaluator::new(broken.clone()), Err(TqftError::Invalid(_))));
        let unchecked = Evaluator::new_unchecked(broken).unwrap();
        assert!(matches!(try_extract(&unchecked), Err(TqftError::Invalid(_))));
    }
}
