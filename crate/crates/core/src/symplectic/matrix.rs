use std::fmt;

use num_traits::Zero;

use super::basis::checked_pairing;
use super::f2::{F2Matrix, MAX_F2_GENUS};
use crate::error::{Error, Result};
use crate::scalar::Coeff;

/// A `2g × 2g` matrix preserving the standard symplectic form, over ℤ
/// (`modulus == None`) or over ℤ/k (`modulus == Some(k)`).
///
/// Entries of a modular matrix are kept reduced into `[0, k)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SymplecticMatrix<T> {
    genus: usize,
    modulus: Option<T>,
    entries: Vec<T>,
}

impl<T: Coeff> SymplecticMatrix<T> {
    pub fn identity(genus: usize, modulus: Option<T>) -> Self {
        let n = 2 * genus;
        let mut entries = vec![T::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = T::one();
        }
        Self { genus, modulus, entries }
    }

    /// Builds a matrix from rows, reducing modulo `modulus` and rejecting
    /// anything that is not symplectic.
    pub fn from_rows(rows: Vec<Vec<T>>, modulus: Option<T>) -> Result<Self> {
        let n = rows.len();
        if n == 0 || n % 2 != 0 {
            return Err(Error::InvalidInput(format!(
                "symplectic matrix needs an even positive size, got {n}"
            )));
        }
        if let Some(k) = &modulus {
            check_modulus(k)?;
        }
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch(format!(
                    "row of length {} in a {n}×{n} matrix",
                    row.len()
                )));
            }
            entries.extend(row);
        }
        let mut m = Self { genus: n / 2, modulus, entries };
        m.normalize();
        if !m.is_symplectic()? {
            return Err(Error::InvalidInput("matrix does not preserve the symplectic form".into()));
        }
        Ok(m)
    }

    /// The integral transvection `x ↦ x + sign·⟨x, v⟩ v`.
    pub fn transvection(v: &[T], sign: i8) -> Result<Self> {
        if sign != 1 && sign != -1 {
            return Err(Error::InvalidInput(format!("transvection sign must be ±1, got {sign}")));
        }
        Self::transvection_power(v, if sign > 0 { T::one() } else { -T::one() }, None)
    }

    /// `x ↦ x + c·⟨x, v⟩ v`, optionally reduced modulo `modulus`.
    pub fn transvection_power(v: &[T], c: T, modulus: Option<T>) -> Result<Self> {
        if v.is_empty() || v.len() % 2 != 0 {
            return Err(Error::InvalidInput(format!(
                "vector length must be even and positive, got {}",
                v.len()
            )));
        }
        if v.iter().all(Zero::is_zero) {
            return Err(Error::InvalidInput("transvection about the zero vector".into()));
        }
        if let Some(k) = &modulus {
            check_modulus(k)?;
        }
        let n = v.len();
        // column c is T(e_c) = e_c + c·⟨e_c, v⟩ v, and ⟨e_{2i}, v⟩ = v_{2i+1}, ⟨e_{2i+1}, v⟩ = -v_{2i}
        let mut m = Self::identity(n / 2, None);
        for col in 0..n {
            let pair = if col % 2 == 0 { v[col + 1].clone() } else { -v[col - 1].clone() };
            let scale = c.checked_mul(&pair).ok_or(Error::Overflow("transvection"))?;
            for row in 0..n {
                let delta = scale.checked_mul(&v[row]).ok_or(Error::Overflow("transvection"))?;
                let e = &mut m.entries[row * n + col];
                *e = e.checked_add(&delta).ok_or(Error::Overflow("transvection"))?;
            }
        }
        m.modulus = modulus;
        m.normalize();
        Ok(m)
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn dim(&self) -> usize {
        2 * self.genus
    }

    pub fn modulus(&self) -> Option<&T> {
        self.modulus.as_ref()
    }

    pub fn get(&self, row: usize, col: usize) -> &T {
        &self.entries[row * self.dim() + col]
    }

    pub fn rows(&self) -> Vec<Vec<T>> {
        self.entries.chunks(self.dim()).map(<[T]>::to_vec).collect()
    }

    pub fn column(&self, col: usize) -> Vec<T> {
        (0..self.dim()).map(|r| self.get(r, col).clone()).collect()
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.genus, self.modulus.clone())
    }

    fn normalize(&mut self) {
        if let Some(k) = &self.modulus {
            for e in &mut self.entries {
                *e = e.mod_floor(k);
            }
        }
    }

    fn reduce(&self, x: T) -> T {
        match &self.modulus {
            Some(k) => x.mod_floor(k),
            None => x,
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.genus != other.genus {
            return Err(Error::DimensionMismatch(format!(
                "genus {} times genus {}",
                self.genus, other.genus
            )));
        }
        if self.modulus != other.modulus {
            return Err(Error::InvalidInput("product of matrices over different rings".into()));
        }
        let n = self.dim();
        let mut entries = Vec::with_capacity(n * n);
        for r in 0..n {
            for c in 0..n {
                let mut acc = T::zero();
                for k in 0..n {
                    let p = self.entries[r * n + k]
                        .checked_mul(&other.entries[k * n + c])
                        .ok_or(Error::Overflow("matrix product"))?;
                    acc = self.reduce(acc.checked_add(&p).ok_or(Error::Overflow("matrix product"))?);
                }
                entries.push(acc);
            }
        }
        Ok(Self { genus: self.genus, modulus: self.modulus.clone(), entries })
    }

    pub fn apply(&self, x: &[T]) -> Result<Vec<T>> {
        let n = self.dim();
        if x.len() != n {
            return Err(Error::DimensionMismatch(format!("vector of length {} for a {n}×{n} matrix", x.len())));
        }
        (0..n)
            .map(|r| {
                let mut acc = T::zero();
                for (k, xk) in x.iter().enumerate() {
                    let p = self.entries[r * n + k].checked_mul(xk).ok_or(Error::Overflow("matrix action"))?;
                    acc = acc.checked_add(&p).ok_or(Error::Overflow("matrix action"))?;
                }
                Ok(self.reduce(acc))
            })
            .collect()
    }

    /// `M⁻¹ = −J Mᵀ J`, exact for symplectic `M`.
    pub fn inverse(&self) -> Self {
        let n = self.dim();
        // (J Mᵀ J)[r][c] = Σ J[r][p] M[q][p] J[q][c]; J has one nonzero per row.
        let partner = |i: usize| if i % 2 == 0 { (i + 1, T::one()) } else { (i - 1, -T::one()) };
        let mut entries = vec![T::zero(); n * n];
        for r in 0..n {
            let (p, jr) = partner(r);
            for c in 0..n {
                // J[q][c] nonzero at q = partner(c) with value -sign(c→partner)
                let (q, jc) = partner(c);
                let jqc = -jc;
                let v = -(jr.clone() * self.entries[q * n + p].clone() * jqc);
                entries[r * n + c] = self.reduce(v);
            }
        }
        Self { genus: self.genus, modulus: self.modulus.clone(), entries }
    }

    /// Checks `MᵀJM = J` over the coefficient ring.
    pub fn is_symplectic(&self) -> Result<bool> {
        let n = self.dim();
        let cols: Vec<Vec<T>> = (0..n).map(|c| self.column(c)).collect();
        for r in 0..n {
            for c in 0..n {
                let expected = if r % 2 == 0 && c == r + 1 {
                    T::one()
                } else if r % 2 == 1 && c + 1 == r {
                    -T::one()
                } else {
                    T::zero()
                };
                let got = checked_pairing(&cols[r], &cols[c])?;
                if self.reduce(got) != self.reduce(expected) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Determinant by fraction-free elimination over ℤ, reduced into the ring.
    pub fn determinant(&self) -> Result<T> {
        let n = self.dim();
        let mut a: Vec<Vec<T>> = self.rows();
        let mut sign = T::one();
        let mut prev = T::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                let Some(p) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                    return Ok(T::zero());
                };
                a.swap(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let lhs = a[i][j].checked_mul(&a[k][k]).ok_or(Error::Overflow("determinant"))?;
                    let rhs = a[i][k].checked_mul(&a[k][j]).ok_or(Error::Overflow("determinant"))?;
                    a[i][j] = lhs.checked_sub(&rhs).ok_or(Error::Overflow("determinant"))? / prev.clone();
                }
            }
            prev = a[k][k].clone();
        }
        Ok(self.reduce(sign * a[n - 1][n - 1].clone()))
    }

    /// Entrywise reduction modulo `k ≥ 2`.
    pub fn reduce_mod(&self, k: T) -> Result<Self> {
        check_modulus(&k)?;
        if let Some(m) = &self.modulus {
            if !m.is_multiple_of(&k) {
                return Err(Error::InvalidInput(format!("cannot reduce a matrix mod {m} to mod {k}")));
            }
        }
        let mut out = Self { genus: self.genus, modulus: Some(k), entries: self.entries.clone() };
        out.normalize();
        Ok(out)
    }

    /// Block sum acting on the first `2·self.genus` coordinates by `self`
    /// and on the rest by `other`.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.modulus != other.modulus {
            return Err(Error::InvalidInput("direct sum of matrices over different rings".into()));
        }
        let (n1, n2) = (self.dim(), other.dim());
        let n = n1 + n2;
        let mut entries = vec![T::zero(); n * n];
        for r in 0..n1 {
            for c in 0..n1 {
                entries[r * n + c] = self.entries[r * n1 + c].clone();
            }
        }
        for r in 0..n2 {
            for c in 0..n2 {
                entries[(n1 + r) * n + n1 + c] = other.entries[r * n2 + c].clone();
            }
        }
        Ok(Self { genus: self.genus + other.genus, modulus: self.modulus.clone(), entries })
    }

    /// Reduction to a bit-packed matrix over 𝔽₂.
    pub fn to_f2(&self) -> Result<F2Matrix> {
        if self.genus > MAX_F2_GENUS {
            return Err(Error::GuardExceeded {
                what: "genus for 𝔽₂ packing",
                size: self.genus as u128,
                limit: MAX_F2_GENUS as u128,
            });
        }
        if let Some(m) = &self.modulus {
            if !m.is_even() {
                return Err(Error::InvalidInput(format!("cannot reduce a matrix mod {m} to 𝔽₂")));
            }
        }
        let n = self.dim();
        let two = T::one() + T::one();
        let cols = (0..n)
            .map(|c| {
                (0..n).fold(0u64, |acc, r| {
                    if self.get(r, c).mod_floor(&two).is_one() {
                        acc | (1 << r)
                    } else {
                        acc
                    }
                })
            })
            .collect();
        F2Matrix::from_columns(self.genus, cols)
    }

    pub fn map_entries<U: Coeff>(&self, f: impl Fn(&T) -> U) -> SymplecticMatrix<U> {
        SymplecticMatrix {
            genus: self.genus,
            modulus: self.modulus.as_ref().map(&f),
            entries: self.entries.iter().map(f).collect(),
        }
    }
}

fn check_modulus<T: Coeff>(k: &T) -> Result<()> {
    if *k < T::one() + T::one() {
        return Err(Error::InvalidInput(format!("modulus must be at least 2, got {k}")));
    }
    Ok(())
}

impl<T: Coeff> fmt::Display for SymplecticMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.entries.chunks(self.dim()) {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}
