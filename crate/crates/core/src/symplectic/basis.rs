use crate::error::{Error, Result};
use crate::scalar::Coeff;

/// The standard symplectic basis `(a₁, b₁, …, a_g, b_g)` of a genus-`g` surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SymplecticBasis {
    genus: usize,
}

impl SymplecticBasis {
    pub fn new(genus: usize) -> Result<Self> {
        if genus == 0 {
            return Err(Error::InvalidInput("genus must be positive".into()));
        }
        Ok(Self { genus })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn dim(&self) -> usize {
        2 * self.genus
    }

    /// Gram matrix `J` of the pairing, row-major, `J[2i][2i+1] = 1`.
    pub fn gram<T: Coeff>(&self) -> Vec<Vec<T>> {
        let n = self.dim();
        let mut j = vec![vec![T::zero(); n]; n];
        for i in 0..self.genus {
            j[2 * i][2 * i + 1] = T::one();
            j[2 * i + 1][2 * i] = -T::one();
        }
        j
    }

    /// Coordinates of `aᵢ` (0-based handle index).
    pub fn a(&self, i: usize) -> Vec<i64> {
        let mut v = vec![0; self.dim()];
        v[2 * i] = 1;
        v
    }

    pub fn b(&self, i: usize) -> Vec<i64> {
        let mut v = vec![0; self.dim()];
        v[2 * i + 1] = 1;
        v
    }
}

/// `⟨x, y⟩ = Σᵢ x_{aᵢ} y_{bᵢ} − x_{bᵢ} y_{aᵢ}` (unchecked arithmetic).
pub fn pairing<T: Coeff>(x: &[T], y: &[T]) -> T {
    debug_assert_eq!(x.len(), y.len());
    let mut acc = T::zero();
    for (xp, yp) in x.chunks_exact(2).zip(y.chunks_exact(2)) {
        acc = acc + xp[0].clone() * yp[1].clone() - xp[1].clone() * yp[0].clone();
    }
    acc
}

pub(crate) fn checked_pairing<T: Coeff>(x: &[T], y: &[T]) -> Result<T> {
    let mut acc = T::zero();
    for (xp, yp) in x.chunks_exact(2).zip(y.chunks_exact(2)) {
        let p = xp[0]
            .checked_mul(&yp[1])
            .and_then(|u| xp[1].checked_mul(&yp[0]).and_then(|w| u.checked_sub(&w)))
            .ok_or(Error::Overflow("symplectic pairing"))?;
        acc = acc.checked_add(&p).ok_or(Error::Overflow("symplectic pairing"))?;
    }
    Ok(acc)
}
