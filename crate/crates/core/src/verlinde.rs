//! Ranks of SU(2) conformal blocks.
//!
//! Three routes to `v_k(g)`: the closed sine-power formula, the S-matrix sum
//! `Σ_j S_{0j}^{2−2g}`, and exact sewing with the fusion rules. The first two
//! are floating point and certified by a rounding-residual check; sewing is
//! exact integer arithmetic.

use nalgebra::DMatrix;
use num_bigint::BigUint;
use num_traits::{FromPrimitive, One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Largest distance from the nearest integer accepted when rounding.
pub const ROUNDING_TOLERANCE: f64 = 1e-6;

/// Fusion rules and modular S-matrix of SU(2) at level `k`; labels `0..=k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FusionRingSU2k {
    level: u32,
}

impl FusionRingSU2k {
    pub fn new(level: u32) -> Result<Self> {
        if level == 0 {
            return Err(Error::InvalidInput("level must be at least 1".into()));
        }
        Ok(Self { level })
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn labels(&self) -> usize {
        self.level as usize + 1
    }

    /// `S_{ij} = √(2/(k+2)) sin((i+1)(j+1)π/(k+2))`.
    pub fn s_matrix<T: Real>(&self) -> DMatrix<T> {
        let kp2 = T::lit(f64::from(self.level + 2));
        let norm = (T::lit(2.0) / kp2).sqrt();
        let n = self.labels();
        DMatrix::from_fn(n, n, |i, j| norm * (T::lit(((i + 1) * (j + 1)) as f64) * T::pi() / kp2).sin())
    }

    /// `N_{ij}^l ∈ {0, 1}`: 1 iff `|i−j| ≤ l ≤ min(i+j, 2k−i−j)` and `i+j+l` is even.
    pub fn fusion(&self, i: usize, j: usize, l: usize) -> u32 {
        let k = self.level as usize;
        let upper = (i + j).min((2 * k).saturating_sub(i + j));
        let admissible = i <= k && j <= k && l <= k && i.abs_diff(j) <= l && l <= upper && (i + j + l) % 2 == 0;
        u32::from(admissible)
    }

    /// `(N_i)_{jl} = N_{ij}^l`.
    pub fn fusion_matrix(&self, i: usize) -> Vec<Vec<BigUint>> {
        let n = self.labels();
        (0..n).map(|j| (0..n).map(|l| BigUint::from(self.fusion(i, j, l))).collect()).collect()
    }

    /// Gluing a handle: `H = Σ_a N_a N_a`, so `H_{bc} = Σ_{a,m} N_{ab}^m N_{am}^c`.
    pub fn handle_operator(&self) -> Vec<Vec<BigUint>> {
        let n = self.labels();
        let mut h = vec![vec![0u64; n]; n];
        for a in 0..n {
            for b in 0..n {
                for m in (0..n).filter(|&m| self.fusion(a, b, m) == 1) {
                    for (c, entry) in h[b].iter_mut().enumerate() {
                        *entry += u64::from(self.fusion(a, m, c));
                    }
                }
            }
        }
        h.into_iter().map(|row| row.into_iter().map(BigUint::from).collect()).collect()
    }
}

fn row_times(v: &[BigUint], m: &[Vec<BigUint>]) -> Vec<BigUint> {
    (0..v.len()).map(|c| v.iter().zip(m).fold(BigUint::zero(), |acc, (x, row)| acc + x * &row[c])).collect()
}

/// Dimension of the genus-`g` block space with boundary labels `labels`, by
/// sewing: `⟨0| H^g N_{λ₁} ⋯ N_{λₙ} |0⟩`.
pub fn block_dimension(genus: u32, level: u32, labels: &[usize]) -> Result<BigUint> {
    let ring = FusionRingSU2k::new(level)?;
    if let Some(&bad) = labels.iter().find(|&&l| l > level as usize) {
        return Err(Error::InvalidInput(format!("label {bad} exceeds the level {level}")));
    }
    let mut v: Vec<BigUint> = (0..ring.labels()).map(|i| if i == 0 { BigUint::one() } else { BigUint::zero() }).collect();
    let h = ring.handle_operator();
    for _ in 0..genus {
        v = row_times(&v, &h);
    }
    for &l in labels {
        v = row_times(&v, &ring.fusion_matrix(l));
    }
    Ok(v.swap_remove(0))
}

/// `v_k(g)` by exact sewing.
pub fn verlinde_rank_fusion(genus: u32, level: u32) -> Result<BigUint> {
    block_dimension(genus, level, &[])
}

/// Rounds a positive sum of `terms` floating-point terms, each carrying
/// `ops` roundings, to an integer, refusing when the result is not certain.
fn certify_round<T: Real>(value: T, terms: usize, ops: u32, what: &str) -> Result<BigUint> {
    if !value.is_finite() || value < T::zero() {
        return Err(Error::Precision(format!("{what}: non-finite or negative value {value}")));
    }
    let slack = T::lit(4.0) * T::from_usize_lossy(terms + ops as usize + 8);
    let error_bound = value * T::default_epsilon() * slack;
    let tol = T::lit(ROUNDING_TOLERANCE);
    if error_bound * T::lit(2.0) >= tol {
        return Err(Error::Precision(format!(
            "{what}: value {value} has rounding error up to {error_bound}; raise the working precision"
        )));
    }
    let nearest = value.round();
    let residual = (value - nearest).abs();
    if residual >= tol {
        return Err(Error::Precision(format!("{what}: value {value} is {residual} from the nearest integer")));
    }
    let as_f64 = nearest.to_f64().ok_or_else(|| Error::Precision(format!("{what}: cannot convert {nearest}")))?;
    BigUint::from_u128(as_f64 as u128).ok_or_else(|| Error::Precision(format!("{what}: {as_f64} out of range")))
}


/// `v_k(g) = ((k+2)/2)^{g−1} Σ_{j=1}^{k+1} sin(jπ/(k+2))^{−(2g−2)}`, evaluated
/// in `T` and rounded with a certified residual.
pub fn verlinde_rank_direct<T: Real>(genus: u32, level: u32) -> Result<BigUint> {
    if level == 0 {
        return Err(Error::InvalidInput("level must be at least 1".into()));
    }
    let exponent = i32::try_from(2 * u64::from(genus)).map_err(|_| Error::Overflow("Verlinde exponent"))? - 2;
    let kp2 = T::lit(f64::from(level + 2));
    let half = kp2 / T::lit(2.0);
    let mut sum = T::zero();
    for j in 1..=level + 1 {
        let s = (T::lit(f64::from(j)) * T::pi() / kp2).sin();
        sum += s.powi(-exponent);
    }
    let value = half.powi(genus as i32 - 1) * sum;
    certify_round(value, level as usize + 1, 2 * genus + 4, "Verlinde formula")
}

/// `Σ_j S_{0j}^{2−2g}` from the S-matrix, rounded with a certified residual.
pub fn verlinde_rank_smatrix<T: Real>(genus: u32, level: u32) -> Result<BigUint> {
    let ring = FusionRingSU2k::new(level)?;
    let s = ring.s_matrix::<T>();
    let exponent = i32::try_from(2 * u64::from(genus)).map_err(|_| Error::Overflow("Verlinde exponent"))? - 2;
    let value = (0..ring.labels()).fold(T::zero(), |acc, j| acc + s[(0, j)].powi(-exponent));
    certify_round(value, ring.labels(), 2 * genus + 4, "S-matrix sum")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerlindeData {
    pub genus: u32,
    pub level: u32,
    pub rank: BigUint,
}

/// Exact rank by sewing, cross-checked against the S-matrix sum whenever the
/// floating-point value can be certified.
pub fn verlinde_data(genus: u32, level: u32) -> Result<VerlindeData> {
    let rank = verlinde_rank_fusion(genus, level)?;
    match verlinde_rank_smatrix::<f64>(genus, level) {
        Ok(r) if r != rank => Err(Error::InvariantViolation(format!(
            "sewing gives {rank} but the S-matrix sum gives {r} at (g, k) = ({genus}, {level})"
        ))),
        _ => Ok(VerlindeData { genus, level, rank }),
    }
}

/// Level-1 SU(2) rank equals the level-2 abelian theta-space dimension `2^g`.
pub fn rank_level_duality_check(genus: u32) -> Result<bool> {
    Ok(verlinde_rank_fusion(genus, 1)? == BigUint::one() << genus as usize)
}
