//! Commutative Frobenius algebras over ℚ(i) and their A-actions.
//!
//! An algebra is given by structure constants `e_i·e_j = Σ_k c[i][j][k] e_k`,
//! a unit vector and a counit row `θ`. Everything else (pairing, copairing,
//! comultiplication, handle operator) is derived from those and `θ`.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::group::{AbelianGroup, ElementOrder, GroupElement, GroupError};
use crate::linalg::{LinalgError, LinearMap, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FrobeniusError {
    #[error("malformed algebra data: {0}")]
    Malformed(String),
    #[error("pairing is degenerate: {0}")]
    Degenerate(LinalgError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("{0} is not a finite group")]
    InfiniteGroup(String),
    #[error("generator {generator} has order {order}, but its image {image} has order {image_order}")]
    NotAHomomorphism {
        generator: usize,
        order: u64,
        image: String,
        image_order: String,
    },
    #[error(transparent)]
    Invalid(#[from] ValidationError),
}

fn fmt_vec(v: &[Scalar]) -> String {
    let items: Vec<String> = v.iter().map(Scalar::to_string).collect();
    format!("[{}]", items.join(","))
}

/// First failed Frobenius axiom, with a witness.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FrobeniusViolation {
    #[error("not commutative: e{i}*e{j} = {left} but e{j}*e{i} = {right}", left = fmt_vec(.left), right = fmt_vec(.right))]
    Commutativity {
        i: usize,
        j: usize,
        left: Vec<Scalar>,
        right: Vec<Scalar>,
    },
    #[error("not associative: (e{i}*e{j})*e{k} = {left} but e{i}*(e{j}*e{k}) = {right}", left = fmt_vec(.left), right = fmt_vec(.right))]
    Associativity {
        i: usize,
        j: usize,
        k: usize,
        left: Vec<Scalar>,
        right: Vec<Scalar>,
    },
    #[error("unit law fails: unit*e{j} = {found}", found = fmt_vec(.found))]
    Unit { j: usize, found: Vec<Scalar> },
    #[error("nondegeneracy fails: Gram matrix {gram} is singular (no pivot at stage {stage})")]
    Nondegeneracy { gram: String, stage: usize },
}

/// First failed action axiom, with a witness.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ActionViolation {
    #[error("action not invertible: generator g{generator} acts by singular {matrix}")]
    NotInvertible { generator: usize, matrix: String },
    #[error("generators g{a} and g{b} act by non-commuting matrices")]
    NotCommuting { a: usize, b: usize },
    #[error("generator g{generator} should satisfy M^{order} = id, but it does not")]
    WrongOrder { generator: usize, order: u64 },
    #[error("module condition fails for g{generator} on (e{x}, e{y}): i(x*y) = {lhs} but {rhs_form} = {rhs}", lhs = fmt_vec(.lhs), rhs = fmt_vec(.rhs))]
    ModuleCondition {
        generator: usize,
        x: usize,
        y: usize,
        lhs: Vec<Scalar>,
        rhs_form: &'static str,
        rhs: Vec<Scalar>,
    },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ValidationError {
    #[error("frobenius: {0}")]
    Frobenius(#[from] FrobeniusViolation),
    #[error("action: {0}")]
    Action(#[from] ActionViolation),
}

/// Failure of a candidate isomorphism of A-Frobenius algebras.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IsomorphismViolation {
    #[error("algebras have different dimension or label group")]
    Incompatible,
    #[error("map is not invertible")]
    NotInvertible,
    #[error("map does not preserve multiplication")]
    Multiplication,
    #[error("map does not preserve the unit")]
    Unit,
    #[error("map does not preserve the counit")]
    Counit,
    #[error("map does not intertwine the action of g{0}")]
    Action(usize),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FrobeniusAlgebra {
    basis_names: Vec<String>,
    /// `c[i][j][k]` at `(i*d + j)*d + k`.
    structure: Vec<Scalar>,
    unit: Vec<Scalar>,
    counit: Vec<Scalar>,
}

impl FrobeniusAlgebra {
    /// Shape-checks the data; the axioms are checked by [`FrobeniusAlgebra::check`].
    pub fn new(
        basis_names: Vec<String>,
        structure: Vec<Scalar>,
        unit: Vec<Scalar>,
        counit: Vec<Scalar>,
    ) -> Result<Self, FrobeniusError> {
        let d = basis_names.len();
        if d == 0 {
            return Err(FrobeniusError::Malformed("dimension must be positive".into()));
        }
        if structure.len() != d * d * d || unit.len() != d || counit.len() != d {
            return Err(FrobeniusError::Malformed(format!(
                "dimension {d} needs {} structure constants and unit/counit of length {d}",
                d * d * d
            )));
        }
        Ok(FrobeniusAlgebra {
            basis_names,
            structure,
            unit,
            counit,
        })
    }

    pub fn dim(&self) -> usize {
        self.basis_names.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &Scalar {
        let d = self.dim();
        &self.structure[(i * d + j) * d + k]
    }

    pub fn structure_constants(&self) -> &[Scalar] {
        &self.structure
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn counit(&self) -> &[Scalar] {
        &self.counit
    }

    /// Coordinates of `e_i · e_j`.
    pub fn product_of_basis(&self, i: usize, j: usize) -> Vec<Scalar> {
        let d = self.dim();
        self.structure[(i * d + j) * d..(i * d + j + 1) * d].to_vec()
    }

    pub fn multiply(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let d = self.dim();
        let mut out = vec![Scalar::zero(); d];
        for (i, a) in x.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in y.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                let ab = a * b;
                for (k, slot) in out.iter_mut().enumerate() {
                    let c = self.structure_constant(i, j, k);
                    if !c.is_zero() {
                        *slot += &(&ab * c);
                    }
                }
            }
        }
        out
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.dim()];
        v[i] = Scalar::one();
        v
    }

    /// `θ(x)`.
    pub fn trace(&self, x: &[Scalar]) -> Scalar {
        x.iter().zip(&self.counit).map(|(a, b)| a * b).sum()
    }

    /// Multiplication `V ⊗ V → V`.
    pub fn multiplication_map(&self) -> LinearMap {
        let d = self.dim();
        let mut m = LinearMap::zero(d, 2, 1);
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    m.set(k, i * d + j, self.structure_constant(i, j, k).clone());
                }
            }
        }
        m
    }

    /// Unit `ℂ → V`.
    pub fn unit_map(&self) -> LinearMap {
        LinearMap::from_entries(self.dim(), 0, 1, self.unit.clone()).expect("unit shape")
    }

    /// Counit `θ: V → ℂ`.
    pub fn counit_map(&self) -> LinearMap {
        LinearMap::from_entries(self.dim(), 1, 0, self.counit.clone()).expect("counit shape")
    }

    /// Checks, in order: commutativity, associativity, unit law, nondegeneracy.
    pub fn check(&self) -> Result<(), FrobeniusViolation> {
        let d = self.dim();
        for i in 0..d {
            for j in i + 1..d {
                let (left, right) = (self.product_of_basis(i, j), self.product_of_basis(j, i));
                if left != right {
                    return Err(FrobeniusViolation::Commutativity { i, j, left, right });
                }
            }
        }
        for i in 0..d {
            for j in 0..d {
                let ij = self.product_of_basis(i, j);
                for k in 0..d {
                    let left = self.multiply(&ij, &self.basis_vector(k));
                    let right = self.multiply(&self.basis_vector(i), &self.product_of_basis(j, k));
                    if left != right {
                        return Err(FrobeniusViolation::Associativity { i, j, k, left, right });
                    }
                }
            }
        }
        for j in 0..d {
            let found = self.multiply(&self.unit, &self.basis_vector(j));
            if found != self.basis_vector(j) {
                return Err(FrobeniusViolation::Unit { j, found });
            }
        }
        let gram = self.gram();
        match gram.invert() {
            Ok(_) => Ok(()),
            Err(LinalgError::Singular { stage }) => Err(FrobeniusViolation::Nondegeneracy {
                gram: gram.to_string(),
                stage,
            }),
            Err(e) => unreachable!("gram matrix is square: {e}"),
        }
    }

    /// `B[i][j] = θ(e_i e_j)`, as a `d × d` matrix.
    pub fn gram(&self) -> LinearMap {
        let d = self.dim();
        let mut b = LinearMap::zero(d, 1, 1);
        for i in 0..d {
            for j in 0..d {
                b.set(i, j, self.trace(&self.product_of_basis(i, j)));
            }
        }
        b
    }

    fn gram_inverse(&self) -> Result<LinearMap, FrobeniusError> {
        self.gram().invert().map_err(FrobeniusError::Degenerate)
    }

    /// `γ = Σ (B⁻¹)[i][j] e_i ⊗ e_j` as a map `ℂ → V ⊗ V`.
    pub fn copairing(&self) -> Result<LinearMap, FrobeniusError> {
        let inv = self.gram_inverse()?;
        Ok(LinearMap::from_entries(self.dim(), 0, 2, inv.entries().to_vec())?)
    }

    /// `Δ(x) = (x ⊗ 1)·γ`, the map dual to multiplication under the pairing.
    pub fn comultiplication(&self) -> Result<LinearMap, FrobeniusError> {
        let d = self.dim();
        let inv = self.gram_inverse()?;
        let mut delta = LinearMap::zero(d, 1, 2);
        for x in 0..d {
            for i in 0..d {
                let xi = self.product_of_basis(x, i);
                for (k, c) in xi.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                    for j in 0..d {
                        let w = inv.get(i, j);
                        if !w.is_zero() {
                            let row = k * d + j;
                            let acc = delta.get(row, x) + &(c * w);
                            delta.set(row, x, acc);
                        }
                    }
                }
            }
        }
        Ok(delta)
    }

    /// Handle operator `m ∘ Δ`, the genus-one cylinder.
    pub fn handle(&self) -> Result<LinearMap, FrobeniusError> {
        Ok(self.multiplication_map().matmul(&self.comultiplication()?)?)
    }

    /// The same algebra in the basis `f_j = Σ_i P[i][j] e_i`.
    pub fn transport(&self, p: &LinearMap) -> Result<FrobeniusAlgebra, FrobeniusError> {
        let d = self.dim();
        let p_inv = p.invert()?;
        let mut structure = vec![Scalar::zero(); d * d * d];
        for a in 0..d {
            for b in 0..d {
                let fa = p.column(a);
                let fb = p.column(b);
                let prod = self.multiply(&fa, &fb);
                for l in 0..d {
                    structure[(a * d + b) * d + l] =
                        (0..d).map(|k| p_inv.get(l, k) * &prod[k]).sum();
                }
            }
        }
        let unit = (0..d)
            .map(|l| (0..d).map(|k| p_inv.get(l, k) * &self.unit[k]).sum())
            .collect();
        let counit = (0..d).map(|a| self.trace(&p.column(a))).collect();
        FrobeniusAlgebra::new(self.basis_names.clone(), structure, unit, counit)
    }
}

/// A commutative Frobenius algebra with an action of a finitely generated
/// abelian group, given by one matrix per invariant-factor generator.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AFrobeniusAlgebra {
    algebra: FrobeniusAlgebra,
    group: AbelianGroup,
    actions: Vec<LinearMap>,
}

impl AFrobeniusAlgebra {
    /// Shape-checks only; see [`AFrobeniusAlgebra::validate`].
    pub fn new(
        algebra: FrobeniusAlgebra,
        group: AbelianGroup,
        actions: Vec<LinearMap>,
    ) -> Result<Self, FrobeniusError> {
        if actions.len() != group.generator_count() {
            return Err(FrobeniusError::Malformed(format!(
                "{} has {} generators but {} action matrices were given",
                group,
                group.generator_count(),
                actions.len()
            )));
        }
        let d = algebra.dim();
        if let Some(m) = actions
            .iter()
            .find(|m| m.dim() != d || m.source_arity() != 1 || m.target_arity() != 1)
        {
            return Err(FrobeniusError::Malformed(format!(
                "action matrix has shape {}, expected {d}x{d}",
                m.shape()
            )));
        }
        Ok(AFrobeniusAlgebra {
            algebra,
            group,
            actions,
        })
    }

    /// An algebra with the trivial group acting.
    pub fn untwisted(algebra: FrobeniusAlgebra) -> Self {
        AFrobeniusAlgebra {
            algebra,
            group: AbelianGroup::trivial(),
            actions: Vec::new(),
        }
    }

    pub fn algebra(&self) -> &FrobeniusAlgebra {
        &self.algebra
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn generator_actions(&self) -> &[LinearMap] {
        &self.actions
    }

    /// Invertibility, commuting generators, torsion orders, then the module
    /// condition `i(x·y) = i(x)·y = x·i(y)` on all basis pairs.
    pub fn check_action(&self) -> Result<(), ActionViolation> {
        let d = self.dim();
        for (g, m) in self.actions.iter().enumerate() {
            if m.invert().is_err() {
                return Err(ActionViolation::NotInvertible {
                    generator: g + 1,
                    matrix: m.to_string(),
                });
            }
        }
        for (a, ma) in self.actions.iter().enumerate() {
            for (b, mb) in self.actions.iter().enumerate().skip(a + 1) {
                if ma.matmul(mb).expect("square") != mb.matmul(ma).expect("square") {
                    return Err(ActionViolation::NotCommuting { a: a + 1, b: b + 1 });
                }
            }
        }
        for (g, m) in self.actions.iter().enumerate() {
            if let Some(order) = self.group.generator_order(g) {
                if !m.pow(order as u32).expect("square").is_identity() {
                    return Err(ActionViolation::WrongOrder {
                        generator: g + 1,
                        order,
                    });
                }
            }
        }
        let apply = |m: &LinearMap, v: &[Scalar]| -> Vec<Scalar> {
            (0..d)
                .map(|r| m.row(r).iter().zip(v).map(|(a, b)| a * b).sum())
                .collect()
        };
        let alg = &self.algebra;
        for (g, m) in self.actions.iter().enumerate() {
            for x in 0..d {
                for y in 0..d {
                    let (ex, ey) = (alg.basis_vector(x), alg.basis_vector(y));
                    let lhs = apply(m, &alg.product_of_basis(x, y));
                    let left_acted = alg.multiply(&apply(m, &ex), &ey);
                    if lhs != left_acted {
                        return Err(ActionViolation::ModuleCondition {
                            generator: g + 1,
                            x,
                            y,
                            lhs,
                            rhs_form: "i(x)*y",
                            rhs: left_acted,
                        });
                    }
                    let right_acted = alg.multiply(&ex, &apply(m, &ey));
                    if lhs != right_acted {
                        return Err(ActionViolation::ModuleCondition {
                            generator: g + 1,
                            x,
                            y,
                            lhs,
                            rhs_form: "x*i(y)",
                            rhs: right_acted,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Both the Frobenius axioms and the action axioms.
    pub fn validate(&self) -> Result<(), ValidationError> {
        self.algebra.check()?;
        self.check_action()?;
        Ok(())
    }

    /// `i(g) = Π_j M_j^{g_j}`, with negative exponents through the inverse.
    pub fn action_of(&self, g: &GroupElement) -> Result<LinearMap, FrobeniusError> {
        if !self.group.contains(g) {
            return Err(GroupError::NotAMember {
                element: g.to_string(),
                group: self.group.to_string(),
            }
            .into());
        }
        let mut acc = LinearMap::identity(self.dim(), 1);
        for (m, e) in self.actions.iter().zip(g.coords()) {
            let base = if e < 0 { m.invert()? } else { m.clone() };
            acc = acc.matmul(&base.pow(e.unsigned_abs() as u32)?)?;
        }
        Ok(acc)
    }

    /// The same structure in the basis `f_j = Σ_i P[i][j] e_i`; actions become `P⁻¹ M P`.
    pub fn transport(&self, p: &LinearMap) -> Result<AFrobeniusAlgebra, FrobeniusError> {
        let p_inv = p.invert()?;
        let actions = self
            .actions
            .iter()
            .map(|m| p_inv.matmul(&m.matmul(p)?))
            .collect::<Result<_, _>>()?;
        AFrobeniusAlgebra::new(self.algebra.transport(p)?, self.group.clone(), actions)
    }

    /// Whether `phi: V → W` is a morphism of A-Frobenius algebras: an invertible
    /// algebra map preserving unit, counit and the group action.
    pub fn check_isomorphism(
        &self,
        other: &AFrobeniusAlgebra,
        phi: &LinearMap,
    ) -> Result<(), IsomorphismViolation> {
        let d = self.dim();
        if other.dim() != d
            || other.group != self.group
            || phi.shape() != LinearMap::identity(d, 1).shape()
        {
            return Err(IsomorphismViolation::Incompatible);
        }
        if phi.invert().is_err() {
            return Err(IsomorphismViolation::NotInvertible);
        }
        let src = &self.algebra;
        let dst = &other.algebra;
        let lhs = phi.matmul(&src.multiplication_map()).expect("shapes");
        let rhs = dst
            .multiplication_map()
            .matmul(&phi.kron(phi).expect("dims"))
            .expect("shapes");
        if lhs != rhs {
            return Err(IsomorphismViolation::Multiplication);
        }
        if phi.matmul(&src.unit_map()).expect("shapes") != dst.unit_map() {
            return Err(IsomorphismViolation::Unit);
        }
        if dst.counit_map().matmul(phi).expect("shapes") != src.counit_map() {
            return Err(IsomorphismViolation::Counit);
        }
        for (g, (ms, md)) in self.actions.iter().zip(&other.actions).enumerate() {
            if phi.matmul(ms).expect("shapes") != md.matmul(phi).expect("shapes") {
                return Err(IsomorphismViolation::Action(g + 1));
            }
        }
        Ok(())
    }
}

/// The group algebra `ℂ[H]` with `θ = [1]^*`, acted on by `A` through
/// translation by `embed(generator)`.
///
/// The basis is indexed by [`AbelianGroup::elements`] and named `e0, e1, …`.
pub fn group_algebra(
    h: &AbelianGroup,
    a: &AbelianGroup,
    embed: &[GroupElement],
) -> Result<AFrobeniusAlgebra, FrobeniusError> {
    let elements = h
        .elements()
        .ok_or_else(|| FrobeniusError::InfiniteGroup(h.to_string()))?;
    if embed.len() != a.generator_count() {
        return Err(FrobeniusError::Malformed(format!(
            "{a} has {} generators but {} images were given",
            a.generator_count(),
            embed.len()
        )));
    }
    for (j, image) in embed.iter().enumerate() {
        let image_order = h.order_of(image)?;
        if let Some(order) = a.generator_order(j) {
            let ElementOrder::Finite(n) = image_order else {
                unreachable!("elements of a finite group have finite order")
            };
            if order % n != 0 {
                return Err(FrobeniusError::NotAHomomorphism {
                    generator: j + 1,
                    order,
                    image: image.to_string(),
                    image_order: n.to_string(),
                });
            }
        }
    }

    let d = elements.len();
    let index = |g: &GroupElement| h.index_of(g).expect("member of H");
    let mut structure = vec![Scalar::zero(); d * d * d];
    for (i, x) in elements.iter().enumerate() {
        for (j, y) in elements.iter().enumerate() {
            let k = index(&h.multiply(x, y)?);
            structure[(i * d + j) * d + k] = Scalar::one();
        }
    }
    let identity = index(&h.identity());
    let mut unit = vec![Scalar::zero(); d];
    unit[identity] = Scalar::one();
    let counit = unit.clone();
    let names = (0..d).map(|k| format!("e{k}")).collect();
    let algebra = FrobeniusAlgebra::new(names, structure, unit, counit)?;

    let actions = embed
        .iter()
        .map(|image| {
            let mut m = LinearMap::zero(d, 1, 1);
            for (j, y) in elements.iter().enumerate() {
                m.set(index(&h.multiply(image, y)?), j, Scalar::one());
            }
            Ok(m)
        })
        .collect::<Result<_, FrobeniusError>>()?;
    AFrobeniusAlgebra::new(algebra, a.clone(), actions)
}

/// `ℂ[H]` with the trivial group acting.
pub fn plain_group_algebra(h: &AbelianGroup) -> Result<AFrobeniusAlgebra, FrobeniusError> {
    group_algebra(h, &AbelianGroup::trivial(), &[])
}
