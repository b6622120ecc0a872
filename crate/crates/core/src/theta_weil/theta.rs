use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::scalar::{cis, modulus, Complex, Real};

/// A point of the Siegel upper half-space: complex symmetric `g × g` with
/// positive definite imaginary part. `g = 0` is allowed (the empty factor).
#[derive(Debug, Clone, PartialEq)]
pub struct SiegelPoint<T: Real> {
    tau: DMatrix<Complex<T>>,
    min_imag_eigenvalue: Option<T>,
}

impl<T: Real> SiegelPoint<T> {
    pub fn new(tau: DMatrix<Complex<T>>) -> Result<Self> {
        if !tau.is_square() {
            return Err(Error::DimensionMismatch(format!("τ is {}×{}", tau.nrows(), tau.ncols())));
        }
        let g = tau.nrows();
        let scale = tau.iter().fold(T::one(), |m, z| m.max(modulus(*z)));
        let tol = T::default_epsilon() * T::lit(16.0) * scale;
        for i in 0..g {
            for j in 0..i {
                if modulus(tau[(i, j)] - tau[(j, i)]) > tol {
                    return Err(Error::Domain(format!("τ is not symmetric at ({i}, {j})")));
                }
            }
        }
        let min_imag_eigenvalue = if g == 0 {
            None
        } else {
            let imag = DMatrix::from_fn(g, g, |i, j| (tau[(i, j)].im + tau[(j, i)].im) * T::lit(0.5));
            let eig = imag.symmetric_eigen();
            let min = eig.eigenvalues.iter().copied().fold(eig.eigenvalues[0], |a, b| a.min(b));
            if min <= T::zero() {
                return Err(Error::Domain(format!("Im τ is not positive definite (smallest eigenvalue {min})")));
            }
            Some(min)
        };
        Ok(Self { tau, min_imag_eigenvalue })
    }

    pub fn diagonal(entries: &[Complex<T>]) -> Result<Self> {
        let g = entries.len();
        Self::new(DMatrix::from_fn(g, g, |i, j| if i == j { entries[i] } else { Complex::new(T::zero(), T::zero()) }))
    }

    pub fn dim(&self) -> usize {
        self.tau.nrows()
    }

    pub fn tau(&self) -> &DMatrix<Complex<T>> {
        &self.tau
    }

    pub fn min_imag_eigenvalue(&self) -> Option<T> {
        self.min_imag_eigenvalue
    }

    /// Block-diagonal `τ₁ ⊕ τ₂`.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        let (g1, g2) = (self.dim(), other.dim());
        let zero = Complex::new(T::zero(), T::zero());
        Self::new(DMatrix::from_fn(g1 + g2, g1 + g2, |i, j| match (i < g1, j < g1) {
            (true, true) => self.tau[(i, j)],
            (false, false) => other.tau[(i - g1, j - g1)],
            _ => zero,
        }))
    }
}

/// Characteristic `l ∈ (1/k)ℤ^g` stored as numerators reduced mod `k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ThetaLabel {
    level: u64,
    numerators: Vec<u64>,
}

impl ThetaLabel {
    pub fn new(level: u64, numerators: &[i64]) -> Result<Self> {
        if level == 0 {
            return Err(Error::InvalidInput("level must be positive".into()));
        }
        let k = level as i64;
        Ok(Self { level, numerators: numerators.iter().map(|&x| x.rem_euclid(k) as u64).collect() })
    }

    /// The label with numerator `i` in position `j` and zeros elsewhere.
    pub fn unit(level: u64, genus: usize, j: usize, i: i64) -> Result<Self> {
        let mut n = vec![0; genus];
        n[j] = i;
        Self::new(level, &n)
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn numerators(&self) -> &[u64] {
        &self.numerators
    }

    pub fn dim(&self) -> usize {
        self.numerators.len()
    }

    /// `l₁ ⊕ l₂`.
    pub fn concat(&self, other: &Self) -> Result<Self> {
        if self.level != other.level {
            return Err(Error::DimensionMismatch(format!("levels {} and {}", self.level, other.level)));
        }
        let mut numerators = self.numerators.clone();
        numerators.extend_from_slice(&other.numerators);
        Ok(Self { level: self.level, numerators })
    }
}

/// Truncated theta-null value
/// `Σ_{m ∈ ℤ^g, ‖m‖_∞ ≤ R} exp((iπ/k) nᵀ τ n)`, `n = m + l`,
/// summed in lexicographic order of `m`.
pub fn theta_null<T: Real>(label: &ThetaLabel, tau: &SiegelPoint<T>, truncation: u32) -> Result<Complex<T>> {
    if truncation == 0 {
        return Err(Error::InvalidInput("truncation radius must be at least 1".into()));
    }
    let g = tau.dim();
    if label.dim() != g {
        return Err(Error::DimensionMismatch(format!("label of length {} for a genus-{g} point", label.dim())));
    }
    let r = i64::from(truncation);
    let k = T::lit(label.level() as f64);
    let shift: Vec<T> = label.numerators().iter().map(|&x| T::lit(x as f64) / k).collect();
    let pi_over_k = T::pi() / k;
    let mut m = vec![-r; g];
    let mut n = vec![T::zero(); g];
    let mut sum = Complex::new(T::zero(), T::zero());
    loop {
        for i in 0..g {
            n[i] = T::lit(m[i] as f64) + shift[i];
        }
        let mut q = Complex::new(T::zero(), T::zero());
        for i in 0..g {
            for j in 0..g {
                q += tau.tau[(i, j)] * (n[i] * n[j]);
            }
        }
        // exp((iπ/k)(X + iY)) = e^{-πY/k} e^{iπX/k}
        sum += cis(pi_over_k * q.re) * (-(pi_over_k * q.im)).exp();

        // odometer, last coordinate fastest
        let mut pos = g;
        loop {
            if pos == 0 {
                return Ok(sum);
            }
            pos -= 1;
            if m[pos] < r {
                m[pos] += 1;
                break;
            }
            m[pos] = -r;
        }
    }
}

/// Bound `e^{−π·λ_min(Im τ)·R²/k}·(2R + 3)^g` on the terms outside the box.
pub fn theta_tail_bound<T: Real>(tau: &SiegelPoint<T>, level: u64, truncation: u32) -> T {
    let Some(lambda) = tau.min_imag_eigenvalue() else {
        return T::zero();
    };
    let r = T::lit(f64::from(truncation));
    let k = T::lit(level as f64);
    let box_growth = (T::lit(2.0) * r + T::lit(3.0)).powi(tau.dim() as i32);
    (-(T::pi() * lambda * r * r / k)).exp() * box_growth
}

/// `|θ(l₁ ⊕ l₂, A ⊕ B) − θ(l₁, A)·θ(l₂, B)|` at a common truncation.
pub fn theta_factorization_check<T: Real>(
    a: &SiegelPoint<T>,
    b: &SiegelPoint<T>,
    l1: &ThetaLabel,
    l2: &ThetaLabel,
    truncation: u32,
) -> Result<T> {
    if l1.dim() != a.dim() || l2.dim() != b.dim() {
        return Err(Error::DimensionMismatch(format!(
            "labels of lengths ({}, {}) for blocks of sizes ({}, {})",
            l1.dim(),
            l2.dim(),
            a.dim(),
            b.dim()
        )));
    }
    let label = l1.concat(l2)?;
    if b.dim() == 0 || a.dim() == 0 {
        return Ok(T::zero());
    }
    let whole = theta_null(&label, &a.direct_sum(b)?, truncation)?;
    let split = theta_null(l1, a, truncation)? * theta_null(l2, b, truncation)?;
    Ok(modulus(whole - split))
}
