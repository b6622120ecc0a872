//! Degree, splitting and section counts for the Verlinde bundle pulled back
//! to a pencil `ℙ¹`, in exact rational arithmetic.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::verlinde::verlinde_rank_fusion;

fn check_lambda(lambda: i64) -> Result<()> {
    if lambda <= 0 {
        return Err(Error::InvalidInput(format!(
            "the Hodge pairing λ must be positive, got {lambda}: a pencil has at least one singular fibre"
        )));
    }
    Ok(())
}

fn check_level(level: u32) -> Result<()> {
    if level == 0 {
        return Err(Error::InvalidInput("level must be at least 1".into()));
    }
    Ok(())
}

/// `3kλ/(k+2)`, the slope of the level-`k` bundle.
pub fn slope(level: u32, lambda: i64) -> BigRational {
    BigRational::new(BigInt::from(3) * level * lambda, BigInt::from(level + 2))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerlindeBundleOnLine {
    pub genus: u32,
    pub level: u32,
    pub lambda: i64,
    /// `n = v_k(g)`.
    pub rank: BigUint,
    /// `d = 3kλn/(k+2)`.
    pub degree: BigRational,
    pub dual_degree: BigRational,
    pub slope: BigRational,
    pub integral: bool,
}

impl VerlindeBundleOnLine {
    /// The degree as an integer, or the non-integrality error.
    pub fn integral_degree(&self) -> Result<BigInt> {
        if self.integral {
            Ok(self.degree.to_integer())
        } else {
            Err(Error::NonIntegralDegree(format!(
                "3kλ·v_k(g)/(k+2) = {} at (g, k, λ) = ({}, {}, {})",
                self.degree, self.genus, self.level, self.lambda
            )))
        }
    }
}

pub fn chern_degree(genus: u32, level: u32, lambda: i64) -> Result<VerlindeBundleOnLine> {
    check_level(level)?;
    check_lambda(lambda)?;
    let rank = verlinde_rank_fusion(genus, level)?;
    let slope = slope(level, lambda);
    let degree = &slope * BigRational::from_integer(BigInt::from(rank.clone()));
    Ok(VerlindeBundleOnLine {
        genus,
        level,
        lambda,
        rank,
        dual_degree: -degree.clone(),
        integral: degree.is_integer(),
        degree,
        slope,
    })
}

/// Degrees of the line-bundle summands `O(dᵢ)` of a bundle on `ℙ¹`, with multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplittingType {
    /// `(degree, multiplicity)`, degrees strictly decreasing, multiplicities positive.
    pub parts: Vec<(BigInt, BigUint)>,
}

impl SplittingType {
    pub fn from_degrees(degrees: &[i64]) -> Self {
        let mut sorted = degrees.to_vec();
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        let mut parts: Vec<(BigInt, BigUint)> = Vec::new();
        for d in sorted {
            match parts.last_mut() {
                Some((deg, m)) if *deg == BigInt::from(d) => *m += 1u32,
                _ => parts.push((BigInt::from(d), BigUint::one())),
            }
        }
        Self { parts }
    }

    pub fn rank(&self) -> BigUint {
        self.parts.iter().map(|(_, m)| m).sum()
    }

    pub fn degree(&self) -> BigInt {
        self.parts.iter().map(|(d, m)| d * BigInt::from(m.clone())).sum()
    }

    /// `max dᵢ − min dᵢ`.
    pub fn spread(&self) -> BigInt {
        match (self.parts.first(), self.parts.last()) {
            (Some((hi, _)), Some((lo, _))) => hi - lo,
            _ => BigInt::zero(),
        }
    }

    /// `h⁰ = Σ max(0, dᵢ + 1)`.
    pub fn h0(&self) -> BigInt {
        self.parts
            .iter()
            .map(|(d, m)| {
                let per: BigInt = d + 1;
                if per.is_positive() {
                    per * BigInt::from(m.clone())
                } else {
                    BigInt::zero()
                }
            })
            .sum()
    }

    /// `Σ (dᵢ + 1)`.
    pub fn euler_characteristic(&self) -> BigInt {
        self.parts.iter().map(|(d, m)| (d + 1) * BigInt::from(m.clone())).sum()
    }
}

impl fmt::Display for SplittingType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .parts
            .iter()
            .map(|(d, m)| if m.is_one() { format!("O({d})") } else { format!("O({d})^{m}") })
            .collect();
        write!(f, "{}", terms.join(" ⊕ "))
    }
}

/// The balanced type: `d mod n` summands of degree `⌈d/n⌉`, the rest `⌊d/n⌋`.
pub fn most_stable_splitting(rank: &BigUint, degree: &BigInt) -> Result<SplittingType> {
    if rank.is_zero() {
        return Err(Error::InvalidInput("rank must be positive".into()));
    }
    let n = BigInt::from(rank.clone());
    let (q, r) = degree.div_mod_floor(&n);
    let mut parts = Vec::new();
    if r.is_positive() {
        parts.push((&q + 1, r.to_biguint().expect("nonnegative remainder")));
    }
    let rest = (&n - &r).to_biguint().expect("remainder below rank");
    if !rest.is_zero() {
        parts.push((q, rest));
    }
    Ok(SplittingType { parts })
}

/// [`most_stable_splitting`] for a possibly non-integral degree.
pub fn most_stable_splitting_rational(rank: &BigUint, degree: &BigRational) -> Result<SplittingType> {
    if !degree.is_integer() {
        return Err(Error::NonIntegralDegree(format!("degree {degree} is not an integer")));
    }
    most_stable_splitting(rank, &degree.to_integer())
}

/// `χ = n + d` for a bundle of rank `n` and degree `d` on `ℙ¹`.
pub fn riemann_roch_line(rank: &BigUint, degree: &BigInt) -> BigInt {
    BigInt::from(rank.clone()) + degree
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BrillNoether {
    /// The balanced dual has no sections.
    GeneralPossible,
    /// Every dual bundle of this rank and degree has sections.
    SectionsForced,
}

impl BrillNoether {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::GeneralPossible => "BN-general possible",
            Self::SectionsForced => "sections forced",
        }
    }
}

pub const KAHLER_PENCIL_NOTE: &str =
    "the dual bundle of a Kähler pencil is Brill-Noether special at large level even where the generic splitting has no sections";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BrillNoetherVerdict {
    pub bundle: VerlindeBundleOnLine,
    /// `χ(V*) = n − d`.
    pub dual_euler_characteristic: BigInt,
    pub dual_splitting: SplittingType,
    pub generic_sections: BigInt,
    pub verdict: BrillNoether,
    /// `{1 − 3λ, −3λ}`, the degrees of the balanced dual as `k → ∞`.
    pub large_level_degrees: [BigInt; 2],
    /// Whether the dual splitting at this level already uses only those degrees.
    pub matches_large_level_pattern: bool,
    pub note: &'static str,
}

pub fn brill_noether_verdict(genus: u32, level: u32, lambda: i64) -> Result<BrillNoetherVerdict> {
    let bundle = chern_degree(genus, level, lambda)?;
    let dual_degree = -bundle.integral_degree()?;
    let dual_splitting = most_stable_splitting(&bundle.rank, &dual_degree)?;
    let generic_sections = dual_splitting.h0();
    let verdict = if generic_sections.is_zero() { BrillNoether::GeneralPossible } else { BrillNoether::SectionsForced };
    let three_lambda = BigInt::from(3 * lambda);
    let large_level_degrees = [BigInt::one() - &three_lambda, -three_lambda];
    let matches_large_level_pattern = dual_splitting.parts.iter().all(|(d, _)| large_level_degrees.contains(d));
    Ok(BrillNoetherVerdict {
        dual_euler_characteristic: riemann_roch_line(&bundle.rank, &dual_degree),
        bundle,
        dual_splitting,
        generic_sections,
        verdict,
        large_level_degrees,
        matches_large_level_pattern,
        note: KAHLER_PENCIL_NOTE,
    })
}

/// `(k+2)·slope(V_k) − 3kλ`: the tensor product of `V_k` with the `3k/(k+2)`-th
/// power of the determinant-line inverse is flat exactly when this vanishes.
pub fn flat_combination_check(genus: u32, level: u32, lambda: i64) -> Result<BigRational> {
    let bundle = chern_degree(genus, level, lambda)?;
    let n = BigRational::from_integer(BigInt::from(bundle.rank.clone()));
    let slope = bundle.degree / n;
    let k = BigRational::from_integer(BigInt::from(level));
    Ok(slope * (&k + BigRational::from_integer(BigInt::from(2))) - k * BigRational::from_integer(BigInt::from(3 * lambda)))
}

/// `c_i = C(n, i)·(c₁/n)^i` for a bundle with equal Chern roots.
pub fn higher_chern(genus: u32, level: u32, lambda: i64, i: u64) -> Result<BigRational> {
    let bundle = chern_degree(genus, level, lambda)?;
    if BigUint::from(i) > bundle.rank {
        return Err(Error::InvalidInput(format!("Chern class index {i} exceeds the rank {}", bundle.rank)));
    }
    let mut binom = BigInt::one();
    let n = BigInt::from(bundle.rank.clone());
    for j in 0..i {
        binom = binom * (&n - j) / (j + 1);
    }
    let exponent = i32::try_from(i).map_err(|_| Error::Overflow("Chern class index"))?;
    Ok(BigRational::from_integer(binom) * bundle.slope.pow(exponent))
}
