use super::LinalgError;

/// A bijection of `0..k`. Used to route tensor factors: position `q` moves to `images[q]`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self, LinalgError> {
        let mut seen = vec![false; images.len()];
        for &p in &images {
            if p >= images.len() || std::mem::replace(&mut seen[p], true) {
                return Err(LinalgError::BadPermutation(images));
            }
        }
        Ok(Permutation { images })
    }

    pub fn identity(k: usize) -> Self {
        Permutation {
            images: (0..k).collect(),
        }
    }

    /// The transposition of two adjacent-or-not positions in `0..k`.
    pub fn transposition(k: usize, a: usize, b: usize) -> Self {
        let mut images: Vec<usize> = (0..k).collect();
        images.swap(a, b);
        Permutation { images }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, q: usize) -> usize {
        self.images[q]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, LinalgError> {
        if self.len() != other.len() {
            return Err(LinalgError::PermutationLength(self.len(), other.len()));
        }
        Ok(Permutation {
            images: other.images.iter().map(|&q| self.images[q]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.len()];
        for (q, &p) in self.images.iter().enumerate() {
            images[p] = q;
        }
        Permutation { images }
    }

    /// Where basis index `index` of `V^⊗k` goes when factors are moved by `self`.
    pub(crate) fn route_index(&self, index: usize, dim: usize) -> usize {
        let k = self.len();
        let digits = to_digits(index, dim, k);
        let mut out = vec![0; k];
        for (q, &digit) in digits.iter().enumerate() {
            out[self.images[q]] = digit;
        }
        from_digits(&out, dim)
    }
}

/// Base-`dim` digits of `index`, most significant (leftmost factor) first.
pub fn to_digits(mut index: usize, dim: usize, len: usize) -> Vec<usize> {
    let mut digits = vec![0; len];
    for slot in digits.iter_mut().rev() {
        *slot = index % dim;
        index /= dim;
    }
    digits
}

pub fn from_digits(digits: &[usize], dim: usize) -> usize {
    digits.iter().fold(0, |acc, &x| acc * dim + x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::new(vec![0, 0]).is_err());
        assert!(Permutation::new(vec![2, 0]).is_err());
        assert!(Permutation::new(vec![1, 2, 0]).is_ok());
    }

    #[test]
    fn compose_and_inverse() {
        let p = Permutation::new(vec![1, 2, 0]).unwrap();
        let q = Permutation::new(vec![0, 2, 1]).unwrap();
        let pq = p.compose(&q).unwrap();
        assert_eq!(pq.images(), &[1, 0, 2]);
        assert_eq!(p.compose(&p.inverse()).unwrap(), Permutation::identity(3));
    }

    #[test]
    fn digits_round_trip() {
        assert_eq!(to_digits(6, 2, 3), vec![1, 1, 0]);
        assert_eq!(from_digits(&[1, 1, 0], 2), 6);
        assert_eq!(to_digits(0, 4, 0), Vec::<usize>::new());
    }
}
