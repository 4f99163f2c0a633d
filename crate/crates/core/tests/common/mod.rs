//! Independent oracles. Nothing here goes through the evaluator: cobordism
//! matrices are built entry by entry from basis contractions, and composition
//! is recomputed with a breadth-first search instead of union-find.

#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use num_traits::{One, Zero};
use surfcat::cobordism::{Cobordism, Component};
use surfcat::frobenius::AFrobeniusAlgebra;
use surfcat::group::GroupElement;
use surfcat::linalg::{to_digits, LinearMap, Scalar};

/// Plain Gauss-Jordan over the scalar field.
pub fn invert(m: &[Vec<Scalar>]) -> Option<Vec<Vec<Scalar>>> {
    let n = m.len();
    let mut a: Vec<Vec<Scalar>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, p);
        let inv = a[col][col].inv().ok()?;
        for x in a[col].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for k in 0..2 * n {
                    let t = &f * &a[col][k];
                    a[r][k] -= &t;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Basis-contraction evaluation of a commutative Frobenius algebra with action.
///
/// A component with inputs `j1..ja`, outputs `k1..kb`, genus `g` and label `x`
/// has matrix entry `θ(e_j1 ⋯ e_ja · h^g · i_x(1) · e^k1 ⋯ e^kb)`, where `e^k`
/// is the dual basis under `θ(xy)` and `h = Σ_k e_k e^k`.
pub struct Oracle {
    d: usize,
    structure: Vec<Scalar>,
    theta: Vec<Scalar>,
    unit: Vec<Scalar>,
    dual: Vec<Vec<Scalar>>,
    h: Vec<Scalar>,
    w: AFrobeniusAlgebra,
}

impl Oracle {
    pub fn new(w: &AFrobeniusAlgebra) -> Self {
        let a = w.algebra();
        let d = a.dim();
        let mut o = Oracle {
            d,
            structure: a.structure_constants().to_vec(),
            theta: a.counit().to_vec(),
            unit: a.unit().to_vec(),
            dual: Vec::new(),
            h: Vec::new(),
            w: w.clone(),
        };
        let basis = |i: usize| -> Vec<Scalar> {
            (0..d).map(|k| if k == i { Scalar::one() } else { Scalar::zero() }).collect()
        };
        let gram: Vec<Vec<Scalar>> = (0..d)
            .map(|i| (0..d).map(|j| o.theta(&o.mul(&basis(i), &basis(j)))).collect())
            .collect();
        let ginv = invert(&gram).expect("nondegenerate pairing");
        // e^k = Σ_l ginv[l][k] e_l satisfies θ(e_i e^k) = δ_ik
        o.dual = (0..d).map(|k| (0..d).map(|l| ginv[l][k].clone()).collect()).collect();
        let mut h = vec![Scalar::zero(); d];
        for k in 0..d {
            let t = o.mul(&basis(k), &o.dual[k]);
            for (x, y) in h.iter_mut().zip(t) {
                *x += &y;
            }
        }
        o.h = h;
        o
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let d = self.d;
        let mut out = vec![Scalar::zero(); d];
        for i in 0..d {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..d {
                if y[j].is_zero() {
                    continue;
                }
                let xy = &x[i] * &y[j];
                for k in 0..d {
                    let c = &self.structure[(i * d + j) * d + k];
                    if !c.is_zero() {
                        out[k] += &(&xy * c);
                    }
                }
            }
        }
        out
    }

    pub fn theta(&self, x: &[Scalar]) -> Scalar {
        x.iter().zip(&self.theta).map(|(a, b)| a * b).sum()
    }

    fn apply(m: &[Vec<Scalar>], v: &[Scalar]) -> Vec<Scalar> {
        m.iter()
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `i_x` applied to `v`, from the generator matrices.
    pub fn act(&self, x: &GroupElement, v: &[Scalar]) -> Vec<Scalar> {
        let mut v = v.to_vec();
        for (m, e) in self.w.generator_actions().iter().zip(x.coords()) {
            let rows: Vec<Vec<Scalar>> = (0..self.d).map(|r| m.row(r).to_vec()).collect();
            let step = if e < 0 { invert(&rows).expect("invertible action") } else { rows };
            for _ in 0..e.unsigned_abs() {
                v = Self::apply(&step, &v);
            }
        }
        v
    }

    fn basis(&self, i: usize) -> Vec<Scalar> {
        (0..self.d).map(|k| if k == i { Scalar::one() } else { Scalar::zero() }).collect()
    }

    pub fn component_entry(&self, c: &Component, ins: &[usize], outs: &[usize]) -> Scalar {
        let mut v = self.act(c.label(), &self.unit);
        for _ in 0..c.genus() {
            v = self.mul(&v, &self.h);
        }
        for &j in ins {
            v = self.mul(&v, &self.basis(j));
        }
        for &k in outs {
            v = self.mul(&v, &self.dual[k]);
        }
        self.theta(&v)
    }

    /// The full matrix of `cob`, one entry at a time: each entry is the product
    /// over components of their contraction at the digits on their ports.
    pub fn evaluate(&self, cob: &Cobordism) -> LinearMap {
        let d = self.d;
        let mut m = LinearMap::zero(d, cob.source(), cob.target());
        for r in 0..m.rows() {
            let out_digits = to_digits(r, d, cob.target());
            for col in 0..m.cols() {
                let in_digits = to_digits(col, d, cob.source());
                let mut entry = Scalar::one();
                for c in cob.components() {
                    let ins: Vec<usize> = c.inputs().iter().map(|&p| in_digits[p]).collect();
                    let outs: Vec<usize> = c.outputs().iter().map(|&q| out_digits[q]).collect();
                    entry = &entry * &self.component_entry(c, &ins, &outs);
                    if entry.is_zero() {
                        break;
                    }
                }
                m.set(r, col, entry);
            }
        }
        m
    }
}

/// `second ∘ first` recomputed by breadth-first search over the gluing graph.
pub fn compose_by_search(second: &Cobordism, first: &Cobordism) -> Cobordism {
    let group = first.group();
    let a = first.components();
    let b = second.components();
    let nodes = a.len() + b.len();
    let mut adjacency = vec![Vec::new(); nodes];
    for p in 0..first.target() {
        let x = a.iter().position(|c| c.outputs().contains(&p)).expect("port owned");
        let y = b.iter().position(|c| c.inputs().contains(&p)).expect("port owned");
        adjacency[x].push(a.len() + y);
        adjacency[a.len() + y].push(x);
    }
    let mut seen = vec![false; nodes];
    let mut components = Vec::new();
    for root in 0..nodes {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        let mut members = Vec::new();
        while let Some(n) = queue.pop_front() {
            members.push(n);
            for &m in &adjacency[n] {
                if !seen[m] {
                    seen[m] = true;
                    queue.push_back(m);
                }
            }
        }
        let edges: usize = members.iter().map(|&n| adjacency[n].len()).sum::<usize>() / 2;
        let mut genus_sum: i64 = 0;
        let mut inputs = BTreeSet::new();
        let mut outputs = BTreeSet::new();
        let mut label = group.identity();
        for &n in &members {
            let c = if n < a.len() { &a[n] } else { &b[n - a.len()] };
            genus_sum += c.genus() as i64;
            label = group.multiply(&label, c.label()).expect("same group");
            if n < a.len() {
                inputs.extend(c.inputs().iter().copied());
            } else {
                outputs.extend(c.outputs().iter().copied());
            }
        }
        let genus = genus_sum + edges as i64 - members.len() as i64 + 1;
        assert!(genus >= 0, "negative genus {genus}");
        components.push(Component::new(genus as u32, inputs, outputs, label));
    }
    Cobordism::new(first.source(), second.target(), components, group.clone())
        .expect("valid partition")
}
