//! Monodromy composed with the abelian Weil representation: commutants,
//! reducibility and representation-space dimensions.

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::fibration::FibrationDescription;
use crate::linalg::{frobenius, intertwiner_space, unitarity_defect, CMatrix, DEFAULT_RANK_CUTOFF};
use crate::scalar::{Complex, Real};
use crate::symplectic::SymplecticMatrix;
use crate::theta_weil::{weil_intertwiner_at_level, WeilOperator, WeilOptions};
use crate::verlinde::verlinde_rank_fusion;

/// Largest representation dimension accepted by [`commutant`] by default.
/// The solve is dense in `n²` unknowns.
pub const DEFAULT_COMMUTANT_GUARD: usize = 81;
/// Hard ceiling on the commutant dimension guard.
pub const MAX_COMMUTANT_GUARD: usize = 256;
/// Tolerance for commutation and projector checks.
pub const COMMUTATION_TOLERANCE: f64 = 1e-7;

/// Weil operators of the vanishing-cycle twists at level `k`.
#[derive(Debug, Clone)]
pub struct ProjectiveRep<T: Real> {
    pub level: u64,
    pub genus: usize,
    pub dim: usize,
    pub operators: Vec<WeilOperator<T>>,
    pub defined_up_to_scalar: bool,
}

impl<T: Real> ProjectiveRep<T> {
    pub fn matrices(&self) -> Vec<CMatrix<T>> {
        self.operators.iter().map(|w| w.matrix.clone()).collect()
    }
}

/// Weil operator of each integral Dehn-twist transvection at level `k`.
pub fn compose_monodromy_weil<T: Real>(fib: &FibrationDescription, level: u64, opts: WeilOptions) -> Result<ProjectiveRep<T>> {
    if level < 2 {
        return Err(Error::InvalidInput(format!("level must be at least 2, got {level}")));
    }
    let g = fib.genus();
    let dim = crate::theta_weil::state_space_size(g, level, opts.guard)?;
    let operators = fib
        .cycles()
        .iter()
        .map(|v| weil_intertwiner_at_level::<T, i64>(&SymplecticMatrix::transvection(v, 1)?, level, opts))
        .collect::<Result<Vec<_>>>()?;
    Ok(ProjectiveRep { level, genus: g, dim, operators, defined_up_to_scalar: true })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CommutantOptions<T> {
    /// Relative singular-value cutoff.
    pub cutoff: T,
    /// Largest accepted representation dimension.
    pub guard: usize,
}

impl<T: Real> Default for CommutantOptions<T> {
    fn default() -> Self {
        Self { cutoff: T::lit(DEFAULT_RANK_CUTOFF), guard: DEFAULT_COMMUTANT_GUARD }
    }
}

#[derive(Debug, Clone)]
pub struct CommutantReport<T: Real> {
    pub dimension: usize,
    pub basis: Vec<CMatrix<T>>,
    /// Hermitian idempotent commuting with every operator, when the commutant is nontrivial.
    pub invariant_projector: Option<CMatrix<T>>,
    pub projector_rank: Option<usize>,
    /// The rank decision was within a factor 10 of the cutoff.
    pub ambiguous: bool,
    /// Largest `‖X M − M X‖` over basis elements and operators.
    pub max_commutator: T,
}

fn commutator_norm<T: Real>(x: &CMatrix<T>, m: &CMatrix<T>) -> T {
    frobenius(&(x * m - m * x))
}

fn deviation_from_scalar<T: Real>(x: &CMatrix<T>) -> T {
    let n = x.nrows();
    let mean = x.trace() / Complex::new(T::from_usize_lossy(n), T::zero());
    frobenius(&(x - CMatrix::<T>::identity(n, n) * mean))
}

/// Spectral projector onto the eigenvalues of a Hermitian `h` above its widest gap.
fn top_spectral_projector<T: Real>(h: &CMatrix<T>) -> Option<(CMatrix<T>, usize)> {
    let n = h.nrows();
    let eig = h.clone().symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[j].partial_cmp(&eig.eigenvalues[i]).expect("finite eigenvalues"));
    let (mut best_gap, mut split) = (T::zero(), 0);
    for w in 0..n.saturating_sub(1) {
        let gap = eig.eigenvalues[order[w]] - eig.eigenvalues[order[w + 1]];
        if gap > best_gap {
            best_gap = gap;
            split = w + 1;
        }
    }
    if split == 0 {
        return None;
    }
    let mut p = CMatrix::<T>::zeros(n, n);
    for &i in &order[..split] {
        let v = eig.eigenvectors.column(i);
        p += &v * v.adjoint();
    }
    Some((p, split))
}

/// Solves `X Mᵢ = Mᵢ X` for all operators; extracts a witness projector when
/// the solution space is larger than the scalars.
pub fn commutant<T: Real>(operators: &[CMatrix<T>], n: usize, opts: CommutantOptions<T>) -> Result<CommutantReport<T>> {
    let guard = opts.guard.min(MAX_COMMUTANT_GUARD);
    if n > guard {
        return Err(Error::GuardExceeded { what: "commutant dimension", size: n as u128, limit: guard as u128 });
    }
    if let Some(m) = operators.iter().find(|m| m.nrows() != n || m.ncols() != n) {
        return Err(Error::DimensionMismatch(format!("operator is {}×{}, expected {n}×{n}", m.nrows(), m.ncols())));
    }
    let pairs: Vec<_> = operators.iter().map(|m| (m, m)).collect();
    let (basis, ns) = intertwiner_space(&pairs, n, opts.cutoff);
    let max_commutator = basis
        .iter()
        .flat_map(|x| operators.iter().map(move |m| commutator_norm(x, m)))
        .fold(T::zero(), |a, b| a.max(b));
    let mut report = CommutantReport {
        dimension: basis.len(),
        basis,
        invariant_projector: None,
        projector_rank: None,
        ambiguous: ns.ambiguous,
        max_commutator,
    };
    if report.dimension > 1 {
        let tol = T::lit(COMMUTATION_TOLERANCE);
        let mut candidates: Vec<&CMatrix<T>> = report.basis.iter().collect();
        candidates.sort_by(|a, b| deviation_from_scalar(*b).partial_cmp(&deviation_from_scalar(*a)).expect("finite norms"));
        let half = Complex::new(T::lit(0.5), T::zero());
        let i = Complex::new(T::zero(), T::one());
        'search: for x in candidates {
            // the commutant of a unitary set is closed under adjoints
            for h in [(x + x.adjoint()) * half, (x - x.adjoint()) * (half * i)] {
                if deviation_from_scalar(&h) <= tol {
                    continue;
                }
                if let Some((p, rank)) = top_spectral_projector(&h) {
                    let commutes = operators.iter().all(|m| commutator_norm(&p, m) < tol);
                    let idempotent = frobenius(&(&p * &p - &p)) < tol;
                    if commutes && idempotent && rank > 0 && rank < n {
                        report.invariant_projector = Some(p);
                        report.projector_rank = Some(rank);
                        break 'search;
                    }
                }
            }
        }
    }
    Ok(report)
}

#[derive(Debug, Clone)]
pub enum Reducibility<T: Real> {
    /// The commutant is the scalars.
    Irreducible,
    /// A proper invariant subspace, with its orthogonal projector.
    Reducible { commutant_dimension: usize, projector: Option<CMatrix<T>>, projector_rank: Option<usize> },
    /// The numerical rank was too close to the cutoff to decide.
    Inconclusive { commutant_dimension: usize },
}

impl<T: Real> Reducibility<T> {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Irreducible => "irreducible",
            Self::Reducible { .. } => "reducible",
            Self::Inconclusive { .. } => "inconclusive",
        }
    }
}

#[derive(Debug, Clone)]
pub struct ReducibilityReport<T: Real> {
    pub level: u64,
    pub genus: usize,
    pub dim: usize,
    pub verdict: Reducibility<T>,
    pub commutant_dimension: usize,
    pub max_commutator: T,
    pub max_unitarity_defect: T,
}

pub fn classify_commutant<T: Real>(report: &CommutantReport<T>) -> Reducibility<T> {
    if report.ambiguous {
        Reducibility::Inconclusive { commutant_dimension: report.dimension }
    } else if report.dimension <= 1 {
        Reducibility::Irreducible
    } else {
        Reducibility::Reducible {
            commutant_dimension: report.dimension,
            projector: report.invariant_projector.clone(),
            projector_rank: report.projector_rank,
        }
    }
}

pub fn reducibility_report<T: Real>(
    fib: &FibrationDescription,
    level: u64,
    weil: WeilOptions,
    opts: CommutantOptions<T>,
) -> Result<ReducibilityReport<T>> {
    let rep = compose_monodromy_weil::<T>(fib, level, weil)?;
    let mats = rep.matrices();
    let com = commutant(&mats, rep.dim, opts)?;
    let max_unitarity_defect = mats.iter().map(unitarity_defect).fold(T::zero(), |a, b| a.max(b));
    Ok(ReducibilityReport {
        level,
        genus: rep.genus,
        dim: rep.dim,
        verdict: classify_commutant(&com),
        commutant_dimension: com.dimension,
        max_commutator: com.max_commutator,
        max_unitarity_defect,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HomPlusStatus {
    Nonnegative,
    EmptyOrObstructed,
}

impl HomPlusStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Nonnegative => "nonnegative",
            Self::EmptyOrObstructed => "empty or obstructed",
        }
    }
}

/// Expected dimension of the space of `r`-tuples in a conjugacy class with
/// product one, modulo conjugation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepSpaceDims {
    pub genus: Option<u32>,
    pub level: Option<u32>,
    pub r: u64,
    pub n: u64,
    pub multiplicities: Vec<u64>,
    /// `n² − Σ mᵢ²`.
    pub dim_conjugacy_class: i128,
    /// `r·dim C_τ − 2(n² − 1)`.
    pub dim_hom_plus: i128,
    pub status: HomPlusStatus,
}

pub fn homplus_dimension(n: u64, r: u64, multiplicities: &[u64]) -> Result<RepSpaceDims> {
    if n == 0 {
        return Err(Error::InvalidInput("representation dimension must be positive".into()));
    }
    let sum = multiplicities.iter().try_fold(0u64, |a, &m| a.checked_add(m)).ok_or(Error::Overflow("multiplicity sum"))?;
    if sum != n {
        return Err(Error::InvalidInput(format!("multiplicities sum to {sum}, expected {n}")));
    }
    if multiplicities.contains(&0) {
        return Err(Error::InvalidInput("multiplicities must be positive".into()));
    }
    let sq = |x: u64| i128::from(x).checked_mul(i128::from(x)).ok_or(Error::Overflow("square"));
    let n2 = sq(n)?;
    let sum_sq = multiplicities.iter().try_fold(0i128, |a, &m| a.checked_add(sq(m)?).ok_or(Error::Overflow("sum of squares")))?;
    let dim_c = n2 - sum_sq;
    let dim_hom = i128::from(r)
        .checked_mul(dim_c)
        .and_then(|x| x.checked_sub(2 * (n2 - 1)))
        .ok_or(Error::Overflow("Hom+ dimension"))?;
    let status = if dim_hom < 0 { HomPlusStatus::EmptyOrObstructed } else { HomPlusStatus::Nonnegative };
    Ok(RepSpaceDims {
        genus: None,
        level: None,
        r,
        n,
        multiplicities: multiplicities.to_vec(),
        dim_conjugacy_class: dim_c,
        dim_hom_plus: dim_hom,
        status,
    })
}

/// [`homplus_dimension`] with `n = v_k(g)`.
pub fn homplus_dimension_su2(genus: u32, level: u32, r: u64, multiplicities: &[u64]) -> Result<RepSpaceDims> {
    let n = verlinde_rank_fusion(genus, level)?.to_u64().ok_or(Error::Overflow("Verlinde rank"))?;
    let mut dims = homplus_dimension(n, r, multiplicities)?;
    dims.genus = Some(genus);
    dims.level = Some(level);
    Ok(dims)
}

/// Eigenvalue multiplicities of the Weil operator of the twist about `v` at
/// level `k`, largest first.
pub fn transvection_multiplicities<T: Real>(v: &[i64], level: u64, opts: WeilOptions) -> Result<Vec<u64>> {
    let w = weil_intertwiner_at_level::<T, i64>(&SymplecticMatrix::transvection(v, 1)?, level, opts)?;
    let n = w.dim();
    let eigenvalues = w
        .matrix
        .clone()
        .schur()
        .eigenvalues()
        .ok_or_else(|| Error::Precision("Schur form did not triangularize".into()))?;
    let tol = T::lit(1e-6);
    let mut clusters: Vec<(Complex<T>, u64)> = Vec::new();
    for z in eigenvalues.iter() {
        match clusters.iter_mut().find(|(c, _)| (*c - *z).norm_sqr().sqrt() < tol) {
            Some((_, m)) => *m += 1,
            None => clusters.push((*z, 1)),
        }
    }
    let mut mults: Vec<u64> = clusters.into_iter().map(|(_, m)| m).collect();
    mults.sort_unstable_by(|a, b| b.cmp(a));
    debug_assert_eq!(mults.iter().sum::<u64>(), n as u64);
    Ok(mults)
}

/// `n = k^g` variant of [`homplus_dimension`] with multiplicities read off the
/// Weil operator of the twist about `v`.
pub fn homplus_dimension_abelian<T: Real>(v: &[i64], level: u64, r: u64, opts: WeilOptions) -> Result<RepSpaceDims> {
    let mults = transvection_multiplicities::<T>(v, level, opts)?;
    let n = mults.iter().sum();
    let mut dims = homplus_dimension(n, r, &mults)?;
    dims.genus = u32::try_from(v.len() / 2).ok();
    dims.level = u32::try_from(level).ok();
    Ok(dims)
}
