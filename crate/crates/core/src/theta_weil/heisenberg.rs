use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::scalar::{cis, Complex, Real};

/// Largest state space `k^g` for which dense operators are built.
pub const MAX_STATE_SPACE: usize = 4096;

/// `(a, b; t)` in the finite Heisenberg group of level `k`, with
/// `a, b ∈ (ℤ/k)^g` and central exponent `t ∈ ℤ/k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HeisenbergElement {
    level: u64,
    a: Vec<u64>,
    b: Vec<u64>,
    t: u64,
}

impl HeisenbergElement {
    pub fn new(level: u64, a: &[i64], b: &[i64], t: i64) -> Result<Self> {
        if level == 0 {
            return Err(Error::InvalidInput("level must be positive".into()));
        }
        if a.len() != b.len() {
            return Err(Error::DimensionMismatch(format!("a has length {}, b has length {}", a.len(), b.len())));
        }
        let k = level as i64;
        let red = |v: &[i64]| v.iter().map(|&x| x.rem_euclid(k) as u64).collect();
        Ok(Self { level, a: red(a), b: red(b), t: t.rem_euclid(k) as u64 })
    }

    /// From an interleaved vector `(a₁, b₁, …, a_g, b_g)`.
    pub fn from_interleaved(level: u64, v: &[i64], t: i64) -> Result<Self> {
        if v.len() % 2 != 0 {
            return Err(Error::DimensionMismatch(format!("odd vector length {}", v.len())));
        }
        let a: Vec<i64> = v.iter().step_by(2).copied().collect();
        let b: Vec<i64> = v.iter().skip(1).step_by(2).copied().collect();
        Self::new(level, &a, &b, t)
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn genus(&self) -> usize {
        self.a.len()
    }

    pub fn a(&self) -> &[u64] {
        &self.a
    }

    pub fn b(&self) -> &[u64] {
        &self.b
    }

    pub fn t(&self) -> u64 {
        self.t
    }

    /// Group law `(a, b; t)(a', b'; t') = (a + a', b + b'; t + t' + b'·a)`,
    /// matching the operator product.
    pub fn mul(&self, other: &Self) -> Self {
        let k = self.level;
        let add = |x: &[u64], y: &[u64]| x.iter().zip(y).map(|(p, q)| (p + q) % k).collect();
        Self {
            level: k,
            a: add(&self.a, &other.a),
            b: add(&self.b, &other.b),
            t: (self.t + other.t + heisenberg_cocycle(self, other)) % k,
        }
    }
}

/// Exponent `c` with `U_h U_{h'} = ζ^c U_{h+h'}` (central parts ignored): `c = b'·a`.
pub fn heisenberg_cocycle(h: &HeisenbergElement, h2: &HeisenbergElement) -> u64 {
    dot_mod(&h2.b, &h.a, h.level)
}

pub(crate) fn dot_mod(x: &[u64], y: &[u64], k: u64) -> u64 {
    x.iter().zip(y).fold(0, |acc, (p, q)| (acc + p * q) % k)
}

/// Index of `x ∈ (ℤ/k)^g`, first coordinate most significant.
pub fn state_index(x: &[u64], level: u64) -> usize {
    x.iter().fold(0usize, |acc, &c| acc * level as usize + c as usize)
}

pub(crate) fn state_from_index(mut idx: usize, genus: usize, level: u64) -> Vec<u64> {
    let k = level as usize;
    let mut x = vec![0; genus];
    for c in x.iter_mut().rev() {
        *c = (idx % k) as u64;
        idx /= k;
    }
    x
}

pub(crate) fn state_space_size(genus: usize, level: u64, limit: usize) -> Result<usize> {
    let size = (level as u128).checked_pow(genus as u32).unwrap_or(u128::MAX);
    if size > limit as u128 {
        return Err(Error::GuardExceeded { what: "state space k^g", size, limit: limit as u128 });
    }
    Ok(size as usize)
}

/// Schrödinger-model operator `(U f)(x) = ζ^{t + b·x} f(x + a)`, `ζ = e^{2πi/k}`,
/// on functions `(ℤ/k)^g → ℂ`. Monomial and unitary.
pub fn heisenberg_operator<T: Real>(h: &HeisenbergElement) -> Result<DMatrix<Complex<T>>> {
    let (g, k) = (h.genus(), h.level);
    let n = state_space_size(g, k, MAX_STATE_SPACE)?;
    let zeta_angle = T::two_pi() / T::lit(k as f64);
    let mut m = DMatrix::zeros(n, n);
    for row in 0..n {
        let x = state_from_index(row, g, k);
        let shifted: Vec<u64> = x.iter().zip(&h.a).map(|(p, q)| (p + q) % k).collect();
        let e = (h.t + dot_mod(&h.b, &x, k)) % k;
        m[(row, state_index(&shifted, k))] = cis(zeta_angle * T::lit(e as f64));
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{frobenius, unitarity_defect};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn identity_element() {
        let h = HeisenbergElement::new(3, &[0, 0], &[0, 0], 0).unwrap();
        let u = heisenberg_operator::<f64>(&h).unwrap();
        assert!(frobenius(&(u - DMatrix::identity(9, 9))) < 1e-15);
    }

    #[test]
    fn translation_by_one_at_level_two_is_the_swap() {
        let h = HeisenbergElement::new(2, &[1], &[0], 0).unwrap();
        let u = heisenberg_operator::<f64>(&h).unwrap();
        let swap = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0]).map(|x| Complex::new(x, 0.0));
        assert!(frobenius(&(u - swap)) < 1e-15);
    }

    #[test]
    fn operators_are_unitary_and_monomial() {
        let h = HeisenbergElement::from_interleaved(5, &[1, 2, 3, 4], 2).unwrap();
        let u = heisenberg_operator::<f64>(&h).unwrap();
        assert!(unitarity_defect(&u) < 1e-12);
        for r in 0..u.nrows() {
            assert_eq!(u.row(r).iter().filter(|z| z.norm() > 0.5).count(), 1);
        }
    }

    #[test]
    fn cocycle_on_random_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let k: u64 = rng.gen_range(2..=5);
            let g = rng.gen_range(1..=2);
            let mut rand_elem = || {
                let v: Vec<i64> = (0..2 * g).map(|_| rng.gen_range(0..k as i64)).collect();
                HeisenbergElement::from_interleaved(k, &v, 0).unwrap()
            };
            let (h1, h2) = (rand_elem(), rand_elem());
            let lhs = heisenberg_operator::<f64>(&h1).unwrap() * heisenberg_operator::<f64>(&h2).unwrap();
            let prod = h1.mul(&h2);
            let rhs = heisenberg_operator::<f64>(&prod).unwrap();
            assert!(frobenius(&(lhs.clone() - rhs)) < 1e-12);
            // the exponent is an integer: some power of ζ relates the two sides
            let sum = HeisenbergElement::new(k, &prod.a().iter().map(|&x| x as i64).collect::<Vec<_>>(), &prod.b().iter().map(|&x| x as i64).collect::<Vec<_>>(), 0).unwrap();
            let plain = heisenberg_operator::<f64>(&sum).unwrap();
            let found = (0..k).any(|c| {
                let z = cis(std::f64::consts::TAU * c as f64 / k as f64);
                frobenius(&(&lhs - &plain * z)) < 1e-12
            });
            assert!(found);
        }
    }

    #[test]
    fn commutator_is_the_symplectic_pairing() {
        let k = 5;
        let h1 = HeisenbergElement::from_interleaved(k, &[1, 0], 0).unwrap();
        let h2 = HeisenbergElement::from_interleaved(k, &[0, 1], 0).unwrap();
        let u1 = heisenberg_operator::<f64>(&h1).unwrap();
        let u2 = heisenberg_operator::<f64>(&h2).unwrap();
        // U_a U_b = ζ^{⟨a, b⟩} U_b U_a with ⟨a, b⟩ = 1
        let z = cis(std::f64::consts::TAU / k as f64);
        assert!(frobenius(&(&u1 * &u2 - (&u2 * &u1) * z)) < 1e-12);
    }
}
