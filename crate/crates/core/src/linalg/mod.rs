//! Exact linear algebra over ℚ(i).
//!
//! A [`LinearMap`] is a dense matrix for a map `V^⊗m → V^⊗n` with `dim V = d`.
//! Basis vectors of `V^⊗k` are indexed mixed-radix in base `d` with the
//! leftmost tensor factor as the most significant digit, so
//! `e_{i_1} ⊗ … ⊗ e_{i_k}` has index `((i_1·d + i_2)·d + …)·d + i_k`.
//! Every module that builds or reads tensor indices relies on this convention.

mod invert;
mod permutation;
mod scalar;

use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

pub use permutation::{from_digits, to_digits, Permutation};
pub use scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("malformed scalar {0:?}")]
    BadScalar(String),
    #[error("cannot compose {left} after {right}")]
    ShapeMismatch { left: Shape, right: Shape },
    #[error("underlying dimensions differ: {left} vs {right}")]
    DimMismatch { left: usize, right: usize },
    #[error("matrix is not square: {0}")]
    NotSquare(Shape),
    #[error("matrix is singular: no pivot at elimination stage {stage}")]
    Singular { stage: usize },
    #[error("{0:?} is not a permutation")]
    BadPermutation(Vec<usize>),
    #[error("permutations act on different lengths ({0} vs {1})")]
    PermutationLength(usize, usize),
    #[error("expected {expected} entries for {shape}, got {found}")]
    EntryCount {
        shape: Shape,
        expected: usize,
        found: usize,
    },
}

/// Dimension and tensor arities of a [`LinearMap`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Shape {
    pub dim: usize,
    pub source: usize,
    pub target: usize,
}

impl Shape {
    pub fn rows(&self) -> usize {
        self.dim.pow(self.target as u32)
    }

    pub fn cols(&self) -> usize {
        self.dim.pow(self.source as u32)
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}x{} (V^{} -> V^{}, d={})",
            self.rows(),
            self.cols(),
            self.source,
            self.target,
            self.dim
        )
    }
}

/// Dense exact matrix of a map `V^⊗source → V^⊗target`, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LinearMap {
    shape: Shape,
    entries: Vec<Scalar>,
}

impl LinearMap {
    pub fn zero(dim: usize, source: usize, target: usize) -> Self {
        assert!(dim > 0, "dimension must be positive");
        let shape = Shape {
            dim,
            source,
            target,
        };
        LinearMap {
            entries: vec![Scalar::zero(); shape.rows() * shape.cols()],
            shape,
        }
    }

    pub fn identity(dim: usize, arity: usize) -> Self {
        let mut m = LinearMap::zero(dim, arity, arity);
        for k in 0..m.rows() {
            m.set(k, k, Scalar::one());
        }
        m
    }

    /// The 1×1 map `V^⊗0 → V^⊗0` multiplying by `s`.
    pub fn scalar(dim: usize, s: Scalar) -> Self {
        LinearMap::from_entries(dim, 0, 0, vec![s]).expect("1x1")
    }

    pub fn from_entries(
        dim: usize,
        source: usize,
        target: usize,
        entries: Vec<Scalar>,
    ) -> Result<Self, LinalgError> {
        let shape = Shape {
            dim,
            source,
            target,
        };
        let expected = shape.rows() * shape.cols();
        if dim == 0 || entries.len() != expected {
            return Err(LinalgError::EntryCount {
                shape,
                expected,
                found: entries.len(),
            });
        }
        Ok(LinearMap { shape, entries })
    }

    pub fn from_rows(
        dim: usize,
        source: usize,
        target: usize,
        rows: Vec<Vec<Scalar>>,
    ) -> Result<Self, LinalgError> {
        let shape = Shape {
            dim,
            source,
            target,
        };
        if rows.len() != shape.rows() || rows.iter().any(|r| r.len() != shape.cols()) {
            return Err(LinalgError::EntryCount {
                shape,
                expected: shape.rows() * shape.cols(),
                found: rows.iter().map(Vec::len).sum(),
            });
        }
        LinearMap::from_entries(dim, source, target, rows.into_iter().flatten().collect())
    }

    /// Integer-entry convenience constructor, mostly for tests and fixtures.
    pub fn from_int_rows(dim: usize, source: usize, target: usize, rows: &[&[i64]]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect())
            .collect();
        LinearMap::from_rows(dim, source, target, rows).expect("integer matrix shape")
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn dim(&self) -> usize {
        self.shape.dim
    }

    pub fn source_arity(&self) -> usize {
        self.shape.source
    }

    pub fn target_arity(&self) -> usize {
        self.shape.target
    }

    pub fn rows(&self) -> usize {
        self.shape.rows()
    }

    pub fn cols(&self) -> usize {
        self.shape.cols()
    }

    pub fn get(&self, row: usize, col: usize) -> &Scalar {
        &self.entries[row * self.cols() + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Scalar) {
        let cols = self.cols();
        self.entries[row * cols + col] = value;
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn row(&self, row: usize) -> &[Scalar] {
        let cols = self.cols();
        &self.entries[row * cols..(row + 1) * cols]
    }

    pub fn column(&self, col: usize) -> Vec<Scalar> {
        (0..self.rows()).map(|r| self.get(r, col).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.shape.source == self.shape.target && *self == LinearMap::identity(self.dim(), self.shape.source)
    }

    pub fn scale(&self, s: &Scalar) -> LinearMap {
        LinearMap {
            shape: self.shape,
            entries: self.entries.iter().map(|x| x * s).collect(),
        }
    }

    pub fn add(&self, other: &LinearMap) -> Result<LinearMap, LinalgError> {
        if self.shape != other.shape {
            return Err(LinalgError::ShapeMismatch {
                left: self.shape,
                right: other.shape,
            });
        }
        Ok(LinearMap {
            shape: self.shape,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    /// Nonzero entries of each row.
    fn sparse_rows(&self) -> Vec<Vec<(usize, &Scalar)>> {
        (0..self.rows())
            .map(|r| {
                self.row(r)
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .collect()
            })
            .collect()
    }

    /// Nonzero entries of each column.
    fn sparse_cols(&self) -> Vec<Vec<(usize, &Scalar)>> {
        let mut cols = vec![Vec::new(); self.cols()];
        for r in 0..self.rows() {
            for (c, x) in self.row(r).iter().enumerate() {
                if !x.is_zero() {
                    cols[c].push((r, x));
                }
            }
        }
        cols
    }

    /// `self ∘ other`: apply `other` first.
    pub fn matmul(&self, other: &LinearMap) -> Result<LinearMap, LinalgError> {
        if self.dim() != other.dim() || self.shape.source != other.shape.target {
            return Err(LinalgError::ShapeMismatch {
                left: self.shape,
                right: other.shape,
            });
        }
        let mut out = LinearMap::zero(self.dim(), other.shape.source, self.shape.target);
        let rhs = other.sparse_rows();
        let cols = out.cols();
        for i in 0..self.rows() {
            let acc = &mut out.entries[i * cols..(i + 1) * cols];
            for (k, a) in self.row(i).iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for &(j, b) in &rhs[k] {
                    acc[j] += &(a * b);
                }
            }
        }
        Ok(out)
    }

    /// `self ⊗ other`; `self` occupies the more significant digits.
    pub fn kron(&self, other: &LinearMap) -> Result<LinearMap, LinalgError> {
        if self.dim() != other.dim() {
            return Err(LinalgError::DimMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        let mut out = LinearMap::zero(
            self.dim(),
            self.shape.source + other.shape.source,
            self.shape.target + other.shape.target,
        );
        let (r2, c2) = (other.rows(), other.cols());
        for r1 in 0..self.rows() {
            for (c1, a) in self.row(r1).iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for r in 0..r2 {
                    for (c, b) in other.row(r).iter().enumerate() {
                        if !b.is_zero() {
                            out.set(r1 * r2 + r, c1 * c2 + c, a * b);
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Kronecker product of a list; the empty list gives the 1×1 identity.
    pub fn kron_all<'a>(
        dim: usize,
        maps: impl IntoIterator<Item = &'a LinearMap>,
    ) -> Result<LinearMap, LinalgError> {
        maps.into_iter()
            .try_fold(LinearMap::identity(dim, 0), |acc, m| acc.kron(m))
    }

    /// `(maps[0] ⊗ … ⊗ maps[r-1]) ∘ state`, contracted factor by factor
    /// without materializing the Kronecker product.
    pub fn kron_apply(maps: &[LinearMap], state: &LinearMap) -> Result<LinearMap, LinalgError> {
        let dim = state.dim();
        let source_total: usize = maps.iter().map(LinearMap::source_arity).sum();
        let target_total: usize = maps.iter().map(LinearMap::target_arity).sum();
        if let Some(m) = maps.iter().find(|m| m.dim() != dim) {
            return Err(LinalgError::DimMismatch {
                left: m.dim(),
                right: dim,
            });
        }
        if source_total != state.target_arity() {
            return Err(LinalgError::ShapeMismatch {
                left: Shape {
                    dim,
                    source: source_total,
                    target: target_total,
                },
                right: state.shape,
            });
        }
        let columns: Vec<_> = maps.iter().map(LinearMap::sparse_cols).collect();
        let mut out = LinearMap::zero(dim, state.source_arity(), target_total);
        let out_cols = out.cols();
        for c in 0..state.cols() {
            for r in 0..state.rows() {
                let v = state.get(r, c);
                if v.is_zero() {
                    continue;
                }
                let digits = to_digits(r, dim, source_total);
                let mut partial: Vec<(usize, Scalar)> = vec![(0, v.clone())];
                let mut offset = 0;
                for (m, cols) in maps.iter().zip(&columns) {
                    let block = from_digits(&digits[offset..offset + m.source_arity()], dim);
                    offset += m.source_arity();
                    let radix = m.rows();
                    partial = partial
                        .iter()
                        .flat_map(|(idx, acc)| {
                            cols[block].iter().map(move |&(row, w)| (idx * radix + row, acc * w))
                        })
                        .collect();
                    if partial.is_empty() {
                        break;
                    }
                }
                for (idx, x) in partial {
                    out.entries[idx * out_cols + c] += &x;
                }
            }
        }
        Ok(out)
    }

    /// The 0/1 matrix on `V^⊗k` moving tensor factor `q` to position `p(q)`.
    pub fn permute_factors(p: &Permutation, dim: usize) -> LinearMap {
        let mut m = LinearMap::zero(dim, p.len(), p.len());
        for c in 0..m.cols() {
            m.set(p.route_index(c, dim), c, Scalar::one());
        }
        m
    }

    /// `self ∘ permute_factors(p)`, by reindexing columns.
    pub fn permute_source(&self, p: &Permutation) -> Result<LinearMap, LinalgError> {
        if p.len() != self.source_arity() {
            return Err(LinalgError::PermutationLength(p.len(), self.source_arity()));
        }
        let mut out = LinearMap::zero(self.dim(), self.source_arity(), self.target_arity());
        let routes: Vec<usize> = (0..self.cols()).map(|c| p.route_index(c, self.dim())).collect();
        for r in 0..self.rows() {
            for (c, &from) in routes.iter().enumerate() {
                out.set(r, c, self.get(r, from).clone());
            }
        }
        Ok(out)
    }

    /// `permute_factors(p) ∘ self`, by reindexing rows.
    pub fn permute_target(&self, p: &Permutation) -> Result<LinearMap, LinalgError> {
        if p.len() != self.target_arity() {
            return Err(LinalgError::PermutationLength(p.len(), self.target_arity()));
        }
        let mut out = LinearMap::zero(self.dim(), self.source_arity(), self.target_arity());
        let cols = self.cols();
        for r in 0..self.rows() {
            let to = p.route_index(r, self.dim());
            out.entries[to * cols..(to + 1) * cols].clone_from_slice(self.row(r));
        }
        Ok(out)
    }

    /// Exact inverse by fraction-free elimination.
    pub fn invert(&self) -> Result<LinearMap, LinalgError> {
        if self.shape.source != self.shape.target {
            return Err(LinalgError::NotSquare(self.shape));
        }
        let n = self.rows();
        let rows: Vec<Vec<Scalar>> = (0..n).map(|r| self.row(r).to_vec()).collect();
        let inv = invert::invert(&rows)?;
        LinearMap::from_rows(self.dim(), self.shape.source, self.shape.target, inv)
    }

    pub fn transpose(&self) -> LinearMap {
        let mut out = LinearMap::zero(self.dim(), self.target_arity(), self.source_arity());
        for r in 0..self.rows() {
            for c in 0..self.cols() {
                out.set(c, r, self.get(r, c).clone());
            }
        }
        out
    }

    pub fn pow(&self, exp: u32) -> Result<LinearMap, LinalgError> {
        let mut acc = LinearMap::identity(self.dim(), self.source_arity());
        for _ in 0..exp {
            acc = self.matmul(&acc)?;
        }
        Ok(acc)
    }
}

/// Rows separated by `;`, entries by `,`.
impl fmt::Display for LinearMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows() {
            if r > 0 {
                write!(f, ";")?;
            }
            for (c, x) in self.row(r).iter().enumerate() {
                if c > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
        }
        Ok(())
    }
}
