//! Fraction-free (Bareiss) Gauss–Jordan inversion over the Gaussian integers.
//!
//! The input is scaled by the lcm of all denominators so every entry lies in
//! ℤ\[i\]; each elimination step divides exactly by the previous pivot.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{LinalgError, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
struct GaussInt {
    re: BigInt,
    im: BigInt,
}

impl GaussInt {
    fn zero() -> Self {
        GaussInt {
            re: BigInt::zero(),
            im: BigInt::zero(),
        }
    }

    fn one() -> Self {
        GaussInt {
            re: BigInt::one(),
            im: BigInt::zero(),
        }
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn mul(&self, o: &GaussInt) -> GaussInt {
        GaussInt {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    fn sub(&self, o: &GaussInt) -> GaussInt {
        GaussInt {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }

    /// Division known to be exact in ℤ\[i\].
    fn div_exact(&self, o: &GaussInt) -> GaussInt {
        let norm = &o.re * &o.re + &o.im * &o.im;
        let re = &self.re * &o.re + &self.im * &o.im;
        let im = &self.im * &o.re - &self.re * &o.im;
        let (qr, rr) = re.div_rem(&norm);
        let (qi, ri) = im.div_rem(&norm);
        debug_assert!(rr.is_zero() && ri.is_zero(), "inexact Bareiss division");
        GaussInt { re: qr, im: qi }
    }

    fn to_scalar(&self) -> Scalar {
        Scalar::new(
            BigRational::from_integer(self.re.clone()),
            BigRational::from_integer(self.im.clone()),
        )
    }
}

pub(super) fn invert(rows: &[Vec<Scalar>]) -> Result<Vec<Vec<Scalar>>, LinalgError> {
    let n = rows.len();
    let scale = rows
        .iter()
        .flatten()
        .fold(BigInt::one(), |acc, x| acc.lcm(&x.denom_lcm()));
    let scale_q = BigRational::from_integer(scale.clone());

    // Augmented [scale·A | I].
    let mut m: Vec<Vec<GaussInt>> = rows
        .iter()
        .enumerate()
        .map(|(r, row)| {
            let mut out: Vec<GaussInt> = row
                .iter()
                .map(|x| GaussInt {
                    re: (x.re() * &scale_q).to_integer(),
                    im: (x.im() * &scale_q).to_integer(),
                })
                .collect();
            out.extend((0..n).map(|c| if c == r { GaussInt::one() } else { GaussInt::zero() }));
            out
        })
        .collect();

    let mut prev = GaussInt::one();
    for k in 0..n {
        let pivot_row = (k..n)
            .find(|&r| !m[r][k].is_zero())
            .ok_or(LinalgError::Singular { stage: k })?;
        m.swap(k, pivot_row);
        let pivot = m[k][k].clone();
        let pivot_vals = m[k].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == k {
                continue;
            }
            let factor = row[k].clone();
            for (x, p) in row.iter_mut().zip(&pivot_vals) {
                *x = pivot.mul(x).sub(&factor.mul(p)).div_exact(&prev);
            }
        }
        prev = pivot;
    }

    // Left block is now det·I, so A⁻¹ = scale · right / det.
    if n == 0 {
        return Ok(Vec::new());
    }
    let det = prev.to_scalar();
    let factor = Scalar::from(scale_q).checked_div(&det)?;
    Ok(m.iter()
        .map(|row| row[n..].iter().map(|x| &x.to_scalar() * &factor).collect())
        .collect())
}
