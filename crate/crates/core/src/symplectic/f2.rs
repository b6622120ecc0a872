use std::fmt;

use crate::error::{Error, Result};

/// Vector over 𝔽₂ in the interleaved basis; bit `i` is the coefficient of the
/// `i`-th basis vector.
pub type F2Vector = u64;

/// Largest genus whose mod-2 homology fits in an [`F2Vector`].
pub const MAX_F2_GENUS: usize = 32;

const A_BITS: u64 = 0x5555_5555_5555_5555;

fn mask(dim: usize) -> u64 {
    if dim >= 64 {
        u64::MAX
    } else {
        (1u64 << dim) - 1
    }
}

fn parity(x: u64) -> u8 {
    (x.count_ones() & 1) as u8
}

/// Mod-2 intersection pairing.
pub fn pairing_f2(x: F2Vector, y: F2Vector) -> u8 {
    parity((x & (y >> 1) & A_BITS) ^ ((x >> 1) & y & A_BITS))
}

/// Matrix over 𝔽₂ stored by columns.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct F2Matrix {
    genus: usize,
    cols: Vec<u64>,
}

impl F2Matrix {
    pub fn identity(genus: usize) -> Self {
        Self { genus, cols: (0..2 * genus).map(|i| 1u64 << i).collect() }
    }

    pub fn from_columns(genus: usize, cols: Vec<u64>) -> Result<Self> {
        if genus == 0 || genus > MAX_F2_GENUS {
            return Err(Error::InvalidInput(format!("genus {genus} outside 1..={MAX_F2_GENUS}")));
        }
        if cols.len() != 2 * genus || cols.iter().any(|&c| c & !mask(2 * genus) != 0) {
            return Err(Error::DimensionMismatch(format!("columns do not describe a {0}×{0} matrix", 2 * genus)));
        }
        Ok(Self { genus, cols })
    }

    /// Transvection `x ↦ x + ⟨x, v⟩ v` over 𝔽₂ (the sign is irrelevant).
    pub fn transvection(genus: usize, v: F2Vector) -> Result<Self> {
        if v == 0 || v & !mask(2 * genus) != 0 {
            return Err(Error::InvalidInput(format!("bad transvection vector {v:#b} in genus {genus}")));
        }
        let cols = (0..2 * genus)
            .map(|i| {
                let e = 1u64 << i;
                if pairing_f2(e, v) == 1 {
                    e ^ v
                } else {
                    e
                }
            })
            .collect();
        Self::from_columns(genus, cols)
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn columns(&self) -> &[u64] {
        &self.cols
    }

    pub fn apply(&self, x: F2Vector) -> F2Vector {
        let mut out = 0;
        let mut bits = x;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            out ^= self.cols[i];
            bits &= bits - 1;
        }
        out
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.genus, other.genus);
        Self { genus: self.genus, cols: other.cols.iter().map(|&c| self.apply(c)).collect() }
    }

    pub fn is_symplectic(&self) -> bool {
        let n = 2 * self.genus;
        (0..n).all(|i| {
            (0..n).all(|j| pairing_f2(self.cols[i], self.cols[j]) == pairing_f2(1 << i, 1 << j))
        })
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.genus)
    }

    /// Packs the matrix into one word; requires `(2g)² ≤ 64`, i.e. `g ≤ 4`.
    pub fn pack(&self) -> Option<u64> {
        let n = 2 * self.genus;
        if n * n > 64 {
            return None;
        }
        Some(self.cols.iter().enumerate().fold(0, |acc, (i, &c)| acc | (c << (i * n))))
    }

    pub fn unpack(genus: usize, packed: u64) -> Self {
        let n = 2 * genus;
        Self { genus, cols: (0..n).map(|i| (packed >> (i * n)) & mask(n)).collect() }
    }
}

impl fmt::Display for F2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = 2 * self.genus;
        for r in 0..n {
            let row: String = (0..n).map(|c| if self.cols[c] >> r & 1 == 1 { '1' } else { '0' }).collect();
            writeln!(f, "{row}")?;
        }
        Ok(())
    }
}

/// Quadratic refinement of the mod-2 intersection form:
/// `q(x + y) = q(x) + q(y) + ⟨x, y⟩`. Determined by its values on the basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadraticFormF2 {
    genus: usize,
    values: u64,
}

impl QuadraticFormF2 {
    pub fn new(genus: usize, basis_values: u64) -> Result<Self> {
        if genus == 0 || genus > MAX_F2_GENUS {
            return Err(Error::InvalidInput(format!("genus {genus} outside 1..={MAX_F2_GENUS}")));
        }
        if basis_values & !mask(2 * genus) != 0 {
            return Err(Error::DimensionMismatch("basis values wider than 2g bits".into()));
        }
        Ok(Self { genus, values: basis_values })
    }

    pub fn from_bits(genus: usize, bits: &[u8]) -> Result<Self> {
        if bits.len() != 2 * genus {
            return Err(Error::DimensionMismatch(format!("{} values for genus {genus}", bits.len())));
        }
        let values = bits.iter().enumerate().fold(0, |acc, (i, &b)| acc | (u64::from(b & 1) << i));
        Self::new(genus, values)
    }

    /// Every quadratic refinement in genus `g`, in increasing order of basis values.
    pub fn all(genus: usize) -> impl Iterator<Item = Self> {
        (0..1u64 << (2 * genus)).map(move |values| Self { genus, values })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn basis_values(&self) -> u64 {
        self.values
    }

    pub fn basis_bits(&self) -> Vec<u8> {
        (0..2 * self.genus).map(|i| (self.values >> i & 1) as u8).collect()
    }

    /// `q(Σ cᵢ eᵢ) = Σ cᵢ q(eᵢ) + Σ_{i<j} cᵢ cⱼ ⟨eᵢ, eⱼ⟩`; only the pairs
    /// `(aᵢ, bᵢ)` pair nontrivially.
    pub fn evaluate(&self, v: F2Vector) -> u8 {
        parity(v & self.values) ^ parity(v & (v >> 1) & A_BITS)
    }

    /// `Σᵢ q(aᵢ) q(bᵢ) mod 2`.
    pub fn arf(&self) -> u8 {
        parity(self.values & (self.values >> 1) & A_BITS)
    }

    /// The pulled-back form `x ↦ q(Mx)`.
    pub fn compose(&self, m: &F2Matrix) -> Self {
        let values = m
            .columns()
            .iter()
            .enumerate()
            .fold(0, |acc, (i, &c)| acc | (u64::from(self.evaluate(c)) << i));
        Self { genus: self.genus, values }
    }

    /// `q(Mx) = q(x)` for all `x`; for symplectic `M` it suffices to check the basis.
    pub fn is_preserved_by(&self, m: &F2Matrix) -> bool {
        self.compose(m) == *self
    }
}

impl fmt::Display for QuadraticFormF2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bits: String = self.basis_bits().iter().map(|b| if *b == 1 { '1' } else { '0' }).collect();
        write!(f, "q[{bits}] (Arf {})", self.arf())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Evaluates `q` on `v` by literally expanding the defining double sum.
    fn evaluate_by_expansion(q: &QuadraticFormF2, v: u64) -> u8 {
        let n = 2 * q.genus();
        let mut s = 0u8;
        for i in 0..n {
            if v >> i & 1 == 1 {
                s ^= (q.basis_values() >> i & 1) as u8;
                for j in i + 1..n {
                    if v >> j & 1 == 1 {
                        s ^= pairing_f2(1 << i, 1 << j);
                    }
                }
            }
        }
        s
    }

    #[test]
    fn arf_examples() {
        assert_eq!(QuadraticFormF2::new(2, 0).unwrap().arf(), 0);
        let odd = QuadraticFormF2::from_bits(2, &[1, 1, 0, 0]).unwrap();
        assert_eq!(odd.arf(), 1);
    }

    #[test]
    fn arf_census_genus_two() {
        let odd = QuadraticFormF2::all(2).filter(|q| q.arf() == 1).count();
        assert_eq!((16 - odd, odd), (10, 6));
    }

    #[test]
    fn evaluate_examples() {
        let q = QuadraticFormF2::new(1, 0).unwrap();
        assert_eq!(q.evaluate(0), 0);
        assert_eq!(q.evaluate(0b11), 1);
        let r = QuadraticFormF2::from_bits(2, &[0, 1, 1, 0]).unwrap();
        for i in 0..4 {
            assert_eq!(r.evaluate(1 << i), r.basis_bits()[i]);
        }
    }

    #[test]
    fn polarization_holds_exhaustively() {
        for g in 1..=3 {
            for q in QuadraticFormF2::all(g) {
                for x in 0..1u64 << (2 * g) {
                    assert_eq!(q.evaluate(x), evaluate_by_expansion(&q, x));
                    for y in 0..1u64 << (2 * g) {
                        assert_eq!(q.evaluate(x ^ y) ^ q.evaluate(x) ^ q.evaluate(y), pairing_f2(x, y));
                    }
                }
            }
        }
    }

    #[test]
    fn transvection_preserves_q_iff_q_of_v_is_one() {
        for g in 1..=2 {
            for v in 1..1u64 << (2 * g) {
                let t = F2Matrix::transvection(g, v).unwrap();
                assert!(t.is_symplectic());
                for q in QuadraticFormF2::all(g) {
                    let preserved = (0..1u64 << (2 * g)).all(|x| q.evaluate(t.apply(x)) == q.evaluate(x));
                    assert_eq!(preserved, q.evaluate(v) == 1, "g={g} v={v:b} q={q}");
                    assert_eq!(preserved, q.is_preserved_by(&t));
                }
            }
        }
    }

    #[test]
    fn packing_round_trips() {
        let t = F2Matrix::transvection(3, 0b101101).unwrap();
        assert_eq!(F2Matrix::unpack(3, t.pack().unwrap()), t);
        assert!(F2Matrix::identity(5).pack().is_none());
    }

    proptest! {
        #[test]
        fn composing_with_symplectic_keeps_a_refinement(g in 1usize..=3, vals in any::<u64>(), word in proptest::collection::vec(1u64..64, 0..8)) {
            let q = QuadraticFormF2::new(g, vals & mask(2 * g)).unwrap();
            let mut m = F2Matrix::identity(g);
            for v in word {
                let v = v & mask(2 * g);
                if v != 0 {
                    m = m.mul(&F2Matrix::transvection(g, v).unwrap());
                }
            }
            let p = q.compose(&m);
            for x in 0..1u64 << (2 * g) {
                prop_assert_eq!(p.evaluate(x), q.evaluate(m.apply(x)));
            }
            prop_assert_eq!(p.arf(), q.arf());
        }
    }
}
