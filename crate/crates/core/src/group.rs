//! Finitely generated abelian groups `ℤ^r × ℤ/m₁ × … × ℤ/m_k`.
//!
//! These stand in for the label group of the surface category. Groups are
//! written additively in storage (componentwise sums) but the operation is
//! called `multiply` to match how labels combine under gluing.

use std::fmt;

use num_integer::Integer;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("torsion order {0} is invalid; every factor Z/m needs m >= 2")]
    TrivialFactor(u64),
    #[error("torsion orders {0:?} are not in nondecreasing order")]
    Unsorted(Vec<u64>),
    #[error("element {element} does not belong to {group}")]
    NotAMember { element: String, group: String },
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct AbelianGroup {
    free_rank: usize,
    torsion: Vec<u64>,
}

/// Coordinates of a group element: integers for `ℤ` factors, residues for `ℤ/m` factors.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct GroupElement {
    free: Vec<i64>,
    torsion: Vec<u64>,
}

/// Order of an element: finite, or infinite when it has a nonzero free part.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ElementOrder {
    Finite(u64),
    Infinite,
}

impl AbelianGroup {
    pub fn new(free_rank: usize, torsion: Vec<u64>) -> Result<Self, GroupError> {
        if let Some(&m) = torsion.iter().find(|&&m| m < 2) {
            return Err(GroupError::TrivialFactor(m));
        }
        if torsion.windows(2).any(|w| w[0] > w[1]) {
            return Err(GroupError::Unsorted(torsion));
        }
        Ok(AbelianGroup { free_rank, torsion })
    }

    pub fn trivial() -> Self {
        AbelianGroup {
            free_rank: 0,
            torsion: Vec::new(),
        }
    }

    /// `ℤ/m₁ × … × ℤ/m_k` with the orders sorted into canonical order.
    pub fn finite(mut orders: Vec<u64>) -> Result<Self, GroupError> {
        orders.sort_unstable();
        AbelianGroup::new(0, orders)
    }

    pub fn cyclic(m: u64) -> Result<Self, GroupError> {
        AbelianGroup::new(0, vec![m])
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion_orders(&self) -> &[u64] {
        &self.torsion
    }

    /// Number of invariant-factor generators: free ones first, then torsion.
    pub fn generator_count(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// `|A|` for finite groups.
    pub fn order(&self) -> Option<u64> {
        self.is_finite().then(|| self.torsion.iter().product())
    }

    /// Order of torsion generator `j` (indexed among all generators), `None` for free generators.
    pub fn generator_order(&self, j: usize) -> Option<u64> {
        j.checked_sub(self.free_rank).map(|t| self.torsion[t])
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement {
            free: vec![0; self.free_rank],
            torsion: vec![0; self.torsion.len()],
        }
    }

    /// The `j`-th invariant-factor generator.
    pub fn generator(&self, j: usize) -> GroupElement {
        let mut coords = vec![0i64; self.generator_count()];
        coords[j] = 1;
        self.element(&coords).expect("generator coordinates fit")
    }

    pub fn generators(&self) -> Vec<GroupElement> {
        (0..self.generator_count()).map(|j| self.generator(j)).collect()
    }

    /// Build an element from one integer per generator; torsion coordinates are reduced.
    pub fn element(&self, coords: &[i64]) -> Result<GroupElement, GroupError> {
        if coords.len() != self.generator_count() {
            return Err(GroupError::NotAMember {
                element: format!("{coords:?}"),
                group: self.to_string(),
            });
        }
        let (free, tors) = coords.split_at(self.free_rank);
        Ok(GroupElement {
            free: free.to_vec(),
            torsion: tors
                .iter()
                .zip(&self.torsion)
                .map(|(&x, &m)| x.rem_euclid(m as i64) as u64)
                .collect(),
        })
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        g.free.len() == self.free_rank
            && g.torsion.len() == self.torsion.len()
            && g.torsion.iter().zip(&self.torsion).all(|(x, m)| x < m)
    }

    fn check(&self, g: &GroupElement) -> Result<(), GroupError> {
        if self.contains(g) {
            Ok(())
        } else {
            Err(GroupError::NotAMember {
                element: g.to_string(),
                group: self.to_string(),
            })
        }
    }

    pub fn multiply(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement, GroupError> {
        self.check(a)?;
        self.check(b)?;
        Ok(GroupElement {
            free: a.free.iter().zip(&b.free).map(|(x, y)| x + y).collect(),
            torsion: a
                .torsion
                .iter()
                .zip(&b.torsion)
                .zip(&self.torsion)
                .map(|((x, y), m)| (x + y) % m)
                .collect(),
        })
    }

    pub fn inverse(&self, a: &GroupElement) -> Result<GroupElement, GroupError> {
        self.check(a)?;
        Ok(GroupElement {
            free: a.free.iter().map(|x| -x).collect(),
            torsion: a
                .torsion
                .iter()
                .zip(&self.torsion)
                .map(|(x, m)| (m - x) % m)
                .collect(),
        })
    }

    /// Least `n ≥ 1` with `aⁿ = 1`.
    pub fn order_of(&self, a: &GroupElement) -> Result<ElementOrder, GroupError> {
        self.check(a)?;
        if a.free.iter().any(|&x| x != 0) {
            return Ok(ElementOrder::Infinite);
        }
        let n = a
            .torsion
            .iter()
            .zip(&self.torsion)
            .map(|(&x, &m)| m / x.gcd(&m))
            .fold(1u64, |acc, k| acc.lcm(&k));
        Ok(ElementOrder::Finite(n))
    }

    /// All elements of a finite group in mixed-radix order (first factor most significant).
    pub fn elements(&self) -> Option<Vec<GroupElement>> {
        let total = self.order()?;
        let elems = (0..total)
            .map(|mut k| {
                let mut torsion = vec![0; self.torsion.len()];
                for (slot, &m) in torsion.iter_mut().zip(&self.torsion).rev() {
                    *slot = k % m;
                    k /= m;
                }
                GroupElement {
                    free: Vec::new(),
                    torsion,
                }
            })
            .collect();
        Some(elems)
    }

    /// Position of `g` in [`AbelianGroup::elements`].
    pub fn index_of(&self, g: &GroupElement) -> Option<usize> {
        if !self.is_finite() || !self.contains(g) {
            return None;
        }
        Some(
            g.torsion
                .iter()
                .zip(&self.torsion)
                .fold(0u64, |acc, (&x, &m)| acc * m + x) as usize,
        )
    }
}

impl GroupElement {
    pub fn free_part(&self) -> &[i64] {
        &self.free
    }

    pub fn torsion_part(&self) -> &[u64] {
        &self.torsion
    }

    /// One integer per generator, free coordinates first.
    pub fn coords(&self) -> Vec<i64> {
        self.free
            .iter()
            .copied()
            .chain(self.torsion.iter().map(|&x| x as i64))
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        self.free.iter().all(|&x| x == 0) && self.torsion.iter().all(|&x| x == 0)
    }
}

/// `Z^r x Z/m1 x Z/m2`, with `Z^0` standing for the trivial group.
impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut factors = Vec::new();
        if self.free_rank > 0 {
            factors.push(format!("Z^{}", self.free_rank));
        }
        factors.extend(self.torsion.iter().map(|m| format!("Z/{m}")));
        if factors.is_empty() {
            write!(f, "Z^0")
        } else {
            write!(f, "{}", factors.join(" x "))
        }
    }
}

/// `(a1,...,ar ; b1,...,bk)`, dropping the `;` when either side is empty.
impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: Vec<String>| v.join(",");
        let free = join(self.free.iter().map(i64::to_string).collect());
        let tors = join(self.torsion.iter().map(u64::to_string).collect());
        match (self.free.is_empty(), self.torsion.is_empty()) {
            (false, false) => write!(f, "({free} ; {tors})"),
            (true, _) => write!(f, "({tors})"),
            (false, true) => write!(f, "({free})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn z_times_z3() -> AbelianGroup {
        AbelianGroup::new(1, vec![3]).unwrap()
    }

    #[test]
    fn identity_examples() {
        let z2 = AbelianGroup::cyclic(2).unwrap();
        assert_eq!(z2.identity().to_string(), "(0)");
        assert_eq!(z_times_z3().identity().to_string(), "(0 ; 0)");
    }

    #[test]
    fn multiply_examples() {
        let z4 = AbelianGroup::cyclic(4).unwrap();
        let a = z4.element(&[3]).unwrap();
        let b = z4.element(&[2]).unwrap();
        assert_eq!(z4.multiply(&a, &b).unwrap(), z4.element(&[1]).unwrap());
        let z = AbelianGroup::new(1, vec![]).unwrap();
        let p = z.element(&[5]).unwrap();
        let n = z.element(&[-5]).unwrap();
        assert!(z.multiply(&p, &n).unwrap().is_identity());
    }

    #[test]
    fn group_mismatch_is_an_error() {
        let z4 = AbelianGroup::cyclic(4).unwrap();
        let z2 = AbelianGroup::cyclic(2).unwrap();
        let a = z4.element(&[3]).unwrap();
        assert!(z2.multiply(&a, &z2.identity()).is_err());
        assert!(z4.multiply(&z_times_z3().identity(), &a).is_err());
    }

    #[test]
    fn inverse_examples() {
        let z4 = AbelianGroup::cyclic(4).unwrap();
        assert_eq!(
            z4.inverse(&z4.element(&[3]).unwrap()).unwrap(),
            z4.element(&[1]).unwrap()
        );
        let z2 = AbelianGroup::cyclic(2).unwrap();
        let t = z2.generator(0);
        assert_eq!(z2.inverse(&t).unwrap(), t);
        let g = z_times_z3();
        let inv = g.inverse(&g.element(&[2, 1]).unwrap()).unwrap();
        assert_eq!(inv.free_part(), &[-2]);
        assert_eq!(inv.torsion_part(), &[2]);
    }

    #[test]
    fn order_examples() {
        let z4 = AbelianGroup::cyclic(4).unwrap();
        assert_eq!(
            z4.order_of(&z4.element(&[2]).unwrap()).unwrap(),
            ElementOrder::Finite(2)
        );
        let z = AbelianGroup::new(1, vec![]).unwrap();
        assert_eq!(z.order_of(&z.generator(0)).unwrap(), ElementOrder::Infinite);
    }

    #[test]
    fn order_matches_enumeration_of_powers() {
        for group in [
            AbelianGroup::cyclic(6).unwrap(),
            AbelianGroup::finite(vec![2, 4]).unwrap(),
            AbelianGroup::finite(vec![3, 6]).unwrap(),
        ] {
            for g in group.elements().unwrap() {
                let mut power = g.clone();
                let mut n = 1;
                while !power.is_identity() {
                    power = group.multiply(&power, &g).unwrap();
                    n += 1;
                }
                assert_eq!(group.order_of(&g).unwrap(), ElementOrder::Finite(n));
            }
        }
        let z6 = AbelianGroup::cyclic(6).unwrap();
        assert_eq!(
            z6.order_of(&z6.element(&[4]).unwrap()).unwrap(),
            ElementOrder::Finite(3)
        );
    }

    #[test]
    fn rejects_bad_factors() {
        assert_eq!(AbelianGroup::cyclic(1), Err(GroupError::TrivialFactor(1)));
        assert!(AbelianGroup::new(0, vec![3, 2]).is_err());
        assert_eq!(
            AbelianGroup::finite(vec![3, 2]).unwrap().torsion_orders(),
            &[2, 3]
        );
    }

    #[test]
    fn elements_are_indexed_in_order() {
        let g = AbelianGroup::finite(vec![2, 4]).unwrap();
        let elems = g.elements().unwrap();
        assert_eq!(elems.len(), 8);
        for (k, e) in elems.iter().enumerate() {
            assert_eq!(g.index_of(e), Some(k));
        }
        assert_eq!(elems[5].torsion_part(), &[1, 1]);
    }

    #[test]
    fn display() {
        assert_eq!(z_times_z3().to_string(), "Z^1 x Z/3");
        assert_eq!(AbelianGroup::trivial().to_string(), "Z^0");
        assert_eq!(AbelianGroup::trivial().identity().to_string(), "()");
        assert_eq!(
            AbelianGroup::new(2, vec![]).unwrap().element(&[1, -1]).unwrap().to_string(),
            "(1,-1)"
        );
    }

    fn group() -> impl Strategy<Value = AbelianGroup> {
        (0usize..3, proptest::collection::vec(2u64..7, 0..3))
            .prop_map(|(r, t)| AbelianGroup::finite(t).map(|g| AbelianGroup::new(r, g.torsion).unwrap()).unwrap())
    }

    fn group_with_elements(n: usize) -> impl Strategy<Value = (AbelianGroup, Vec<GroupElement>)> {
        group().prop_flat_map(move |g| {
            let k = g.generator_count();
            let g2 = g.clone();
            proptest::collection::vec(proptest::collection::vec(-20i64..20, k), n)
                .prop_map(move |cs| (g2.clone(), cs.iter().map(|c| g2.element(c).unwrap()).collect()))
        })
    }

    proptest! {
        #[test]
        fn group_axioms((g, xs) in group_with_elements(3)) {
            let (a, b, c) = (&xs[0], &xs[1], &xs[2]);
            let ab = g.multiply(a, b).unwrap();
            prop_assert_eq!(&ab, &g.multiply(b, a).unwrap());
            prop_assert_eq!(
                g.multiply(&ab, c).unwrap(),
                g.multiply(a, &g.multiply(b, c).unwrap()).unwrap()
            );
            prop_assert_eq!(g.multiply(&g.identity(), a).unwrap(), a.clone());
            prop_assert!(g.multiply(a, &g.inverse(a).unwrap()).unwrap().is_identity());
        }

        #[test]
        fn finite_order_divides_exponent((g, xs) in group_with_elements(1)) {
            if let ElementOrder::Finite(n) = g.order_of(&xs[0]).unwrap() {
                let exponent = g.torsion_orders().iter().fold(1u64, |acc, m| acc.lcm(m));
                prop_assert_eq!(exponent % n, 0);
            }
        }
    }
}
