//! Combinatorial Lefschetz fibrations: an ordered list of vanishing cycles in
//! the first homology of the fibre, plus the topological reports derived from
//! them (homological monodromy, spin structures, the mod-2 monodromy image,
//! and the signature/Hodge-class arithmetic).

use std::collections::BTreeSet;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::scalar::Coeff;
use crate::symplectic::{
    generated_subgroup_mod2, orbit_mod2, pairing, F2Matrix, QuadraticFormF2, SymplecticMatrix,
    MAX_ENUMERATION_GENUS, MAX_F2_GENUS,
};

/// Largest number of quadratic forms a spin report will list.
pub const MAX_LISTED_FORMS: u64 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FibrationDescription {
    genus: usize,
    cycles: Vec<Vec<i64>>,
    base_points: Option<u64>,
    signature: Option<i64>,
}

impl FibrationDescription {
    /// Validates the cycles: each has length `2g`, is nonzero and is primitive.
    pub fn new(genus: usize, cycles: Vec<Vec<i64>>) -> Result<Self> {
        if genus == 0 {
            return Err(Error::InvalidInput("fibre genus must be at least 1".into()));
        }
        for (i, v) in cycles.iter().enumerate() {
            if v.len() != 2 * genus {
                return Err(Error::DimensionMismatch(format!(
                    "vanishing cycle {i} has {} coordinates, expected {}",
                    v.len(),
                    2 * genus
                )));
            }
            let content = v.iter().fold(0i64, |acc, &x| acc.gcd(&x));
            if content == 0 {
                return Err(Error::InvalidInput(format!("vanishing cycle {i} is null-homologous")));
            }
            if content != 1 {
                return Err(Error::InvalidInput(format!(
                    "vanishing cycle {i} is not primitive (entries share the factor {content})"
                )));
            }
        }
        Ok(Self { genus, cycles, base_points: None, signature: None })
    }

    pub fn with_signature(mut self, signature: i64) -> Self {
        self.signature = Some(signature);
        self
    }

    pub fn with_base_points(mut self, n: u64) -> Self {
        self.base_points = Some(n);
        self
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn cycles(&self) -> &[Vec<i64>] {
        &self.cycles
    }

    /// Number of singular fibres.
    pub fn delta(&self) -> usize {
        self.cycles.len()
    }

    pub fn signature(&self) -> Option<i64> {
        self.signature
    }

    pub fn base_points(&self) -> Option<u64> {
        self.base_points
    }

    /// Vanishing cycles reduced mod 2 and bit-packed.
    pub fn cycles_mod2(&self) -> Result<Vec<u64>> {
        if self.genus > MAX_F2_GENUS {
            return Err(Error::GuardExceeded {
                what: "genus for mod-2 computations",
                size: self.genus as u128,
                limit: MAX_F2_GENUS as u128,
            });
        }
        Ok(self
            .cycles
            .iter()
            .map(|v| v.iter().enumerate().fold(0u64, |acc, (i, x)| acc | ((x.rem_euclid(2) as u64) << i)))
            .collect())
    }

    /// Mod-2 transvections about the vanishing cycles.
    pub fn twists_mod2(&self) -> Result<Vec<F2Matrix>> {
        self.cycles_mod2()?.into_iter().map(|v| F2Matrix::transvection(self.genus, v)).collect()
    }
}

/// Twist matrices for each vanishing cycle and their ordered product
/// `T₁ · T₂ ⋯ T_δ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Monodromy<T> {
    pub twists: Vec<SymplecticMatrix<T>>,
    pub product: SymplecticMatrix<T>,
}

pub fn homological_monodromy<T: Coeff>(fib: &FibrationDescription) -> Result<Monodromy<T>> {
    let mut twists = Vec::with_capacity(fib.delta());
    let mut product = SymplecticMatrix::identity(fib.genus(), None);
    for v in fib.cycles() {
        let v: Vec<T> = v
            .iter()
            .map(|&x| T::from_i64(x).ok_or(Error::Overflow("coefficient conversion")))
            .collect::<Result<_>>()?;
        let t = SymplecticMatrix::transvection(&v, 1)?;
        product = product.mul(&t)?;
        twists.push(t);
    }
    Ok(Monodromy { twists, product })
}

/// Pair of cycles with homological intersection ±1, if any.
pub fn unit_intersection_pair(fib: &FibrationDescription) -> Option<(usize, usize)> {
    let cycles = fib.cycles();
    (0..cycles.len())
        .flat_map(|i| (i + 1..cycles.len()).map(move |j| (i, j)))
        .find(|&(i, j)| {
            let p: i128 = pairing(
                &cycles[i].iter().map(|&x| i128::from(x)).collect::<Vec<_>>(),
                &cycles[j].iter().map(|&x| i128::from(x)).collect::<Vec<_>>(),
            );
            p.abs() == 1
        })
}

/// Whether all vanishing cycles are conjugate mod 2 under the mod-2 monodromy group.
pub fn cycles_conjugate_mod2(fib: &FibrationDescription) -> Result<bool> {
    let cycles = fib.cycles_mod2()?;
    let Some(&first) = cycles.first() else {
        return Ok(true);
    };
    let orbit = orbit_mod2(first, &fib.twists_mod2()?)?;
    Ok(cycles.iter().all(|v| orbit.contains(v)))
}

/// Solution set of an affine system over 𝔽₂ in at most 64 unknowns.
#[derive(Debug, Clone, PartialEq, Eq)]
struct AffineSolutions {
    particular: u64,
    kernel: Vec<u64>,
}

/// Solves `rowᵢ · u = rhsᵢ` over 𝔽₂, or returns `None` when inconsistent.
fn solve_affine_f2(unknowns: usize, equations: &[(u64, u8)]) -> Option<AffineSolutions> {
    let mut rows: Vec<(u64, u8)> = equations.to_vec();
    let mut pivots: Vec<usize> = Vec::new();
    let mut rank = 0;
    for col in 0..unknowns {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r].0 >> col & 1 == 1) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank];
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row.0 >> col & 1 == 1 {
                row.0 ^= pivot.0;
                row.1 ^= pivot.1;
            }
        }
        pivots.push(col);
        rank += 1;
    }
    if rows[rank..].iter().any(|&(_, rhs)| rhs == 1) {
        return None;
    }
    let particular = pivots.iter().zip(&rows).fold(0u64, |acc, (&c, &(_, rhs))| acc | (u64::from(rhs) << c));
    let kernel = (0..unknowns)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = 1u64 << free;
            for (&c, &(row, _)) in pivots.iter().zip(&rows) {
                if row >> free & 1 == 1 {
                    v |= 1 << c;
                }
            }
            v
        })
        .collect();
    Some(AffineSolutions { particular, kernel })
}

/// All quadratic refinements `q` with `q(v) = 1` on every given mod-2 vector,
/// sorted by basis values.
pub fn forms_odd_on(genus: usize, vectors: &[u64]) -> Result<Vec<QuadraticFormF2>> {
    // q(v) = v·u + Σᵢ v_{aᵢ} v_{bᵢ}, linear in the basis values u
    let equations: Vec<(u64, u8)> = vectors
        .iter()
        .map(|&v| {
            let cross = (v & (v >> 1) & 0x5555_5555_5555_5555).count_ones() as u8 & 1;
            (v, 1 ^ cross)
        })
        .collect();
    let Some(sol) = solve_affine_f2(2 * genus, &equations) else {
        return Ok(Vec::new());
    };
    let count = 1u128 << sol.kernel.len();
    if count > u128::from(MAX_LISTED_FORMS) {
        return Err(Error::GuardExceeded { what: "number of quadratic forms", size: count, limit: MAX_LISTED_FORMS.into() });
    }
    let mut forms: Vec<QuadraticFormF2> = (0..count as u64)
        .map(|mask| {
            let values = sol
                .kernel
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .fold(sol.particular, |acc, (_, k)| acc ^ k);
            QuadraticFormF2::new(genus, values)
        })
        .collect::<Result<_>>()?;
    forms.sort();
    Ok(forms)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpinReport {
    pub spin_compatible: bool,
    pub solution_forms: Vec<QuadraticFormF2>,
    pub arf_values: Vec<u8>,
}

/// Spin structures on the fibre that extend over every handle, i.e. the
/// quadratic forms taking the value 1 on every vanishing cycle.
pub fn spin_detect(fib: &FibrationDescription) -> Result<SpinReport> {
    let forms = forms_odd_on(fib.genus(), &fib.cycles_mod2()?)?;
    Ok(SpinReport {
        spin_compatible: !forms.is_empty(),
        arf_values: forms.iter().map(QuadraticFormF2::arf).collect(),
        solution_forms: forms,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ImageClass {
    /// All of `Sp_{2g}(𝔽₂)`.
    Full,
    PreservesEvenForm,
    PreservesOddForm,
    /// Neither full nor preserving a form of a single parity, or not decided.
    Other,
}

impl ImageClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            ImageClass::Full => "full",
            ImageClass::PreservesEvenForm => "preserves-even-form",
            ImageClass::PreservesOddForm => "preserves-odd-form",
            ImageClass::Other => "other",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mod2ImageReport {
    /// Order of the image, when enumerated (`g ≤ 3`).
    pub order: Option<u64>,
    pub classification: ImageClass,
    pub preserved_forms: Vec<QuadraticFormF2>,
}

/// Classifies the mod-2 monodromy image: first by the quadratic forms it
/// preserves (a transvection `t_v` preserves `q` iff `q(v) = 1`), then, if
/// none, by comparing the enumerated order with `|Sp_{2g}(𝔽₂)|`.
pub fn classify_mod2_image(fib: &FibrationDescription) -> Result<Mod2ImageReport> {
    let preserved_forms = forms_odd_on(fib.genus(), &fib.cycles_mod2()?)?;
    let group = if fib.genus() <= MAX_ENUMERATION_GENUS {
        Some(generated_subgroup_mod2(fib.genus(), &fib.twists_mod2()?)?)
    } else {
        None
    };
    let order = group.as_ref().map(|g| g.order() as u64);
    let classification = if !preserved_forms.is_empty() {
        let parities: BTreeSet<u8> = preserved_forms.iter().map(QuadraticFormF2::arf).collect();
        match parities.into_iter().collect::<Vec<_>>().as_slice() {
            [0] => ImageClass::PreservesEvenForm,
            [1] => ImageClass::PreservesOddForm,
            _ => ImageClass::Other,
        }
    } else if group.as_ref().is_some_and(|g| g.is_full()) {
        ImageClass::Full
    } else {
        ImageClass::Other
    };
    Ok(Mod2ImageReport { order, classification, preserved_forms })
}

/// Signature data of a fibration: `σ = 4λ − δ` with `λ > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HodgePairing {
    pub sigma: i64,
    pub delta: u64,
    pub lambda: i64,
}

pub fn hodge_pairing(sigma: i64, delta: u64) -> Result<HodgePairing> {
    let d = i64::try_from(delta).map_err(|_| Error::Overflow("hodge pairing"))?;
    let total = sigma.checked_add(d).ok_or(Error::Overflow("hodge pairing"))?;
    if total.rem_euclid(4) != 0 {
        return Err(Error::Inconsistent(format!(
            "σ + δ = {total} is not divisible by 4, so (σ, δ) = ({sigma}, {delta}) cannot come from a Lefschetz fibration"
        )));
    }
    let lambda = total / 4;
    if lambda <= 0 {
        return Err(Error::InvariantViolation(format!(
            "λ = (σ + δ)/4 = {lambda}, but the Hodge class pairs positively with the base of every Lefschetz fibration"
        )));
    }
    Ok(HodgePairing { sigma, delta, lambda })
}

#[cfg(test)]
mod tests {
    use super::*;

    const A1: [i64; 2] = [1, 0];
    const B1: [i64; 2] = [0, 1];

    fn fib(genus: usize, cycles: &[&[i64]]) -> FibrationDescription {
        FibrationDescription::new(genus, cycles.iter().map(|c| c.to_vec()).collect()).unwrap()
    }

    fn brute_force_forms(f: &FibrationDescription) -> Vec<QuadraticFormF2> {
        let vs = f.cycles_mod2().unwrap();
        QuadraticFormF2::all(f.genus()).filter(|q| vs.iter().all(|&v| q.evaluate(v) == 1)).collect()
    }

    #[test]
    fn validation() {
        assert!(FibrationDescription::new(1, vec![vec![0, 0]]).is_err());
        assert!(FibrationDescription::new(1, vec![vec![2, 4]]).is_err());
        assert!(FibrationDescription::new(1, vec![vec![1, 0, 0]]).is_err());
        assert!(FibrationDescription::new(0, vec![]).is_err());
        assert_eq!(fib(1, &[&A1, &B1]).delta(), 2);
    }

    #[test]
    fn monodromy_of_empty_and_single() {
        let m = homological_monodromy::<i64>(&fib(2, &[])).unwrap();
        assert!(m.twists.is_empty());
        assert!(m.product.is_identity());
        let v = [1i64, -1, 2, 1];
        let m = homological_monodromy::<i64>(&fib(2, &[&v])).unwrap();
        assert_eq!(m.product, SymplecticMatrix::transvection(&v, 1).unwrap());
    }

    #[test]
    fn torus_word_of_length_twelve() {
        let cycles: Vec<&[i64]> = (0..12).map(|i| if i % 2 == 0 { &A1[..] } else { &B1[..] }).collect();
        let m = homological_monodromy::<i64>(&fib(1, &cycles)).unwrap();
        assert!(m.twists.iter().all(|t| t.is_symplectic().unwrap()));
        // independent product: plain 2×2 integer multiplication
        let mut p = [[1i64, 0], [0, 1]];
        for t in &m.twists {
            let q = [[*t.get(0, 0), *t.get(0, 1)], [*t.get(1, 0), *t.get(1, 1)]];
            p = [
                [p[0][0] * q[0][0] + p[0][1] * q[1][0], p[0][0] * q[0][1] + p[0][1] * q[1][1]],
                [p[1][0] * q[0][0] + p[1][1] * q[1][0], p[1][0] * q[0][1] + p[1][1] * q[1][1]],
            ];
        }
        assert_eq!(m.product.rows(), vec![p[0].to_vec(), p[1].to_vec()]);
        assert!(m.product.is_identity());
    }

    #[test]
    fn spin_examples() {
        let r = spin_detect(&fib(2, &[])).unwrap();
        assert_eq!(r.solution_forms.len(), 16);
        let r = spin_detect(&fib(1, &[&A1])).unwrap();
        assert_eq!(r.solution_forms, brute_force_forms(&fib(1, &[&A1])));
        assert_eq!(r.solution_forms.len(), 2);
        assert!(r.solution_forms.iter().all(|q| q.basis_bits()[0] == 1));
        let r = spin_detect(&fib(1, &[&A1, &B1, &[1, 1]])).unwrap();
        assert_eq!(r.solution_forms.len(), 1);
        assert_eq!(r.arf_values, vec![1]);
        // a₁, a₂, a₁ + a₂ is contradictory: q(a₁ + a₂) = q(a₁) + q(a₂) = 0
        let r = spin_detect(&fib(2, &[&[1, 0, 0, 0], &[0, 0, 1, 0], &[1, 0, 1, 0]])).unwrap();
        assert!(!r.spin_compatible);
    }

    #[test]
    fn classification_examples() {
        let r = classify_mod2_image(&fib(1, &[&A1, &B1])).unwrap();
        assert_eq!(r.classification, ImageClass::PreservesOddForm);
        assert_eq!(r.order, Some(6));
        assert_eq!(r.preserved_forms.len(), 1);
        assert_eq!(r.preserved_forms[0].arf(), 1);

        let r = classify_mod2_image(&fib(1, &[&A1, &B1, &[1, 1]])).unwrap();
        assert_eq!(r.classification, ImageClass::PreservesOddForm);

        let full = fib(2, &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1], &[1, 0, 1, 0]]);
        let r = classify_mod2_image(&full).unwrap();
        assert_eq!(r.classification, ImageClass::Full);
        assert_eq!(r.order, Some(720));
        assert!(r.preserved_forms.is_empty());
        assert!(!spin_detect(&full).unwrap().spin_compatible);
    }

    #[test]
    fn classification_without_enumeration() {
        let g = 4;
        let cycles: Vec<Vec<i64>> = (0..2 * g)
            .map(|i| (0..2 * g).map(|j| i64::from(i == j)).collect())
            .chain([(0..2 * g).map(|j| i64::from(j % 2 == 0 && j < 4)).collect()])
            .collect();
        let r = classify_mod2_image(&FibrationDescription::new(g, cycles).unwrap()).unwrap();
        assert_eq!(r.order, None);
        assert_eq!(r.classification, ImageClass::Other);
    }

    #[test]
    fn preserved_forms_are_preserved_by_every_twist() {
        let f = fib(2, &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[1, 1, 0, 1]]);
        let r = classify_mod2_image(&f).unwrap();
        for q in &r.preserved_forms {
            for t in f.twists_mod2().unwrap() {
                assert!((0..16u64).all(|x| q.evaluate(t.apply(x)) == q.evaluate(x)));
            }
        }
    }

    #[test]
    fn hodge_examples() {
        assert_eq!(hodge_pairing(0, 4).unwrap().lambda, 1);
        assert_eq!(hodge_pairing(-8, 12).unwrap().lambda, 1);
        assert!(matches!(hodge_pairing(1, 4), Err(Error::Inconsistent(_))));
        assert!(matches!(hodge_pairing(-4, 4), Err(Error::InvariantViolation(_))));
        assert!(matches!(hodge_pairing(-12, 4), Err(Error::InvariantViolation(_))));
    }

    #[test]
    fn intersection_and_conjugacy_predicates() {
        let f = fib(2, &[&[1, 0, 0, 0], &[0, 0, 1, 0], &[0, 1, 0, 0]]);
        assert_eq!(unit_intersection_pair(&f), Some((0, 2)));
        assert_eq!(unit_intersection_pair(&fib(2, &[&[1, 0, 0, 0], &[0, 0, 1, 0]])), None);
        assert!(cycles_conjugate_mod2(&fib(1, &[&A1, &B1])).unwrap());
        assert!(!cycles_conjugate_mod2(&fib(2, &[&[1, 0, 0, 0], &[0, 0, 1, 0]])).unwrap());
    }

    #[test]
    fn affine_solver_kernel_is_consistent() {
        let eqs = [(0b0011u64, 1u8), (0b0110, 0)];
        let s = solve_affine_f2(4, &eqs).unwrap();
        for mask in 0..1u64 << s.kernel.len() {
            let u = s.kernel.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).fold(s.particular, |a, (_, k)| a ^ k);
            for &(row, rhs) in &eqs {
                assert_eq!((row & u).count_ones() as u8 & 1, rhs);
            }
        }
        assert_eq!(s.kernel.len(), 2);
        assert!(solve_affine_f2(2, &[(0b01, 1), (0b01, 0)]).is_none());
    }
}
