use std::collections::VecDeque;

use nalgebra::DMatrix;

use super::heisenberg::{dot_mod, state_from_index, state_index, state_space_size};
use crate::error::{Error, Result};
use crate::linalg::{projective_residual, unitarity_defect};
use crate::scalar::{cis, Coeff, Complex, Real};
use crate::symplectic::SymplecticMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WeilOptions {
    /// Largest allowed state space `k^g`.
    pub guard: usize,
}

impl Default for WeilOptions {
    fn default() -> Self {
        Self { guard: 256 }
    }
}

/// Intertwiner `W` with `W U_h W⁻¹ ∝ U_{Ah}` for all Heisenberg elements `h`.
///
/// Only the line through `W` is meaningful; the stored matrix is scaled to be
/// unitary with its first nonzero entry (row-major) real and positive.
#[derive(Debug, Clone, PartialEq)]
pub struct WeilOperator<T: Real> {
    pub level: u64,
    pub genus: usize,
    pub matrix: DMatrix<Complex<T>>,
    /// Always true: the operator is a representative of a projective class.
    pub defined_up_to_scalar: bool,
    /// Number of nonzero entries.
    pub support: usize,
}

impl<T: Real> WeilOperator<T> {
    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }
}

fn unitarity_tolerance<T: Real>(n: usize) -> T {
    T::lit(1e-8).max(T::default_epsilon() * T::lit(1000.0) * T::from_usize_lossy(n))
}

/// Columns of `a` reduced mod `k`, and the pairings `a'·b'` of the column
/// images taken mod `k` (odd `k`) or mod `2k` (even `k`).
fn residues<C: Coeff>(a: &SymplecticMatrix<C>, k: u64) -> Result<(Vec<Vec<u64>>, Vec<u64>)> {
    let phase_modulus = if k % 2 == 1 { k } else { 2 * k };
    let pm = i128::from(phase_modulus);
    let mut cols = Vec::with_capacity(a.dim());
    let mut pairings = Vec::with_capacity(a.dim());
    for c in 0..a.dim() {
        let lifted: Vec<i128> = a
            .column(c)
            .iter()
            .map(|x| x.to_i128().map(|v| v.rem_euclid(pm)).ok_or(Error::Overflow("matrix entry")))
            .collect::<Result<_>>()?;
        let ab = lifted.chunks(2).fold(0i128, |acc, p| (acc + p[0] * p[1]) % pm);
        cols.push(lifted.iter().map(|&x| (x % i128::from(k)) as u64).collect());
        pairings.push(ab as u64);
    }
    Ok((cols, pairings))
}

/// [`weil_intertwiner_at_level`] at the modulus of `a`.
pub fn weil_intertwiner<T: Real, C: Coeff>(a: &SymplecticMatrix<C>, opts: WeilOptions) -> Result<WeilOperator<T>> {
    let k = a
        .modulus()
        .ok_or_else(|| Error::InvalidInput("Weil operators need a matrix over ℤ/k".into()))?
        .to_u64()
        .ok_or(Error::Overflow("level conversion"))?;
    weil_intertwiner_at_level(a, k, opts)
}

/// Intertwiner for the level-`k` Heisenberg group, normalized on generators by
/// `W T_e W⁻¹ = T_{Ae}` with the symmetric Weyl operators
/// `T_{(a,b)} = ζ^{a·b/2} U_{(a,b)}`.
///
/// For odd `k` the half is `2⁻¹ mod k` and `A ↦ W_A` is a projective
/// representation of `Sp_{2g}(ℤ/k)`. For even `k` the half-phase
/// `e^{iπ a·b/k}` depends on `a·b mod 2k`, so the entries of `a` are read as
/// a lift: an integral matrix or one over `ℤ/m` with `2k | m` gives a
/// projective representation of `Sp_{2g}(ℤ/2k)`; a matrix over `ℤ/k` is
/// lifted by its least residues.
///
/// Both operators are monomial, so each scalar equation links two entries of
/// `W` by a root of unity: `W[x + a', z + a] = ζ^{b·z − b'·x} μ⁻¹ W[x, z]`
/// where `e_j = (a, b)`, `A e_j = (a', b')` and `μ = ζ^{a'·b'/2}`. The phases
/// live in the group of `2k`-th roots of unity and are tracked exactly; the
/// solution space is spanned by the consistent connected components, and
/// uniqueness of the Heisenberg representation forces exactly one.
pub fn weil_intertwiner_at_level<T: Real, C: Coeff>(a: &SymplecticMatrix<C>, k: u64, opts: WeilOptions) -> Result<WeilOperator<T>> {
    if k < 2 {
        return Err(Error::InvalidInput(format!("level must be at least 2, got {k}")));
    }
    if let Some(m) = a.modulus() {
        let m = m.to_u64().ok_or(Error::Overflow("modulus conversion"))?;
        if m % k != 0 {
            return Err(Error::InvalidInput(format!("a matrix over ℤ/{m} does not act at level {k}")));
        }
    }
    let (cols, pairings) = residues(a, k)?;
    let g = a.genus();
    let n = state_space_size(g, k, opts.guard)?;
    let two_k = 2 * k;

    struct Generator {
        shift_row: Vec<u64>, // a'
        shift_col: Vec<u64>, // a
        b: Vec<u64>,
        b_image: Vec<u64>,
        mu: u64,
    }
    let gens: Vec<Generator> = (0..2 * g)
        .map(|j| {
            let image = &cols[j];
            let a_img: Vec<u64> = image.iter().step_by(2).copied().collect();
            let b_img: Vec<u64> = image.iter().skip(1).step_by(2).copied().collect();
            let mut a_src = vec![0; g];
            let mut b_src = vec![0; g];
            if j % 2 == 0 {
                a_src[j / 2] = 1;
            } else {
                b_src[j / 2] = 1;
            }
            // exponent of μ in units of e^{iπ/k}: (k+1)·a'b' for odd k, a'b' for even k
            let mu = if k % 2 == 1 { (k + 1) * pairings[j] } else { pairings[j] } % two_k;
            Generator { shift_row: a_img, shift_col: a_src, b: b_src, b_image: b_img, mu }
        })
        .collect();

    let states: Vec<Vec<u64>> = (0..n).map(|i| state_from_index(i, g, k)).collect();
    let translate = |x: &[u64], d: &[u64]| -> usize {
        let y: Vec<u64> = x.iter().zip(d).map(|(p, q)| (p + q) % k).collect();
        state_index(&y, k)
    };
    // edge j out of node (x, z): target and phase exponent in units of e^{iπ/k}
    let edge = |gen: &Generator, x: usize, z: usize| -> (usize, u64) {
        let target = translate(&states[x], &gen.shift_row) * n + translate(&states[z], &gen.shift_col);
        let phase = (2 * dot_mod(&gen.b, &states[z], k) + two_k * k - 2 * dot_mod(&gen.b_image, &states[x], k) + two_k - gen.mu) % two_k;
        (target, phase)
    };

    const UNSEEN: u64 = u64::MAX;
    let mut phase = vec![UNSEEN; n * n];
    let mut consistent_components: Vec<Vec<usize>> = Vec::new();
    let mut components = 0usize;
    for start in 0..n * n {
        if phase[start] != UNSEEN {
            continue;
        }
        components += 1;
        phase[start] = 0;
        let mut members = vec![start];
        let mut queue = VecDeque::from([start]);
        let mut ok = true;
        while let Some(node) = queue.pop_front() {
            let (x, z) = (node / n, node % n);
            for gen in &gens {
                let (target, e) = edge(gen, x, z);
                let want = (phase[node] + e) % two_k;
                if phase[target] == UNSEEN {
                    phase[target] = want;
                    members.push(target);
                    queue.push_back(target);
                } else if phase[target] != want {
                    ok = false;
                }
            }
        }
        if ok {
            consistent_components.push(members);
        }
    }
    if consistent_components.len() != 1 {
        return Err(Error::InvariantViolation(format!(
            "intertwiner space has dimension {} (of {components} components); expected 1",
            consistent_components.len()
        )));
    }
    let mut support = consistent_components.pop().expect("one component");
    support.sort_unstable();
    let first = support[0];
    let scale = (T::from_usize_lossy(n) / T::from_usize_lossy(support.len())).sqrt();
    let unit = T::pi() / T::lit(k as f64);
    let mut matrix = DMatrix::zeros(n, n);
    for &node in &support {
        let e = (phase[node] + two_k - phase[first]) % two_k;
        matrix[(node / n, node % n)] = cis(unit * T::lit(e as f64)) * scale;
    }
    let defect = unitarity_defect(&matrix);
    if defect > unitarity_tolerance::<T>(n) {
        return Err(Error::InvariantViolation(format!("Weil operator is not unitary (defect {defect})")));
    }
    Ok(WeilOperator { level: k, genus: g, matrix, defined_up_to_scalar: true, support: support.len() })
}

/// `min_c ‖W_{A⊕B} − c·(W_A ⊗ W_B)‖`.
pub fn weil_tensor_factorization<T: Real, C: Coeff>(a: &SymplecticMatrix<C>, b: &SymplecticMatrix<C>, opts: WeilOptions) -> Result<T> {
    if a.modulus() != b.modulus() {
        return Err(Error::DimensionMismatch("blocks over different rings".into()));
    }
    let whole = weil_intertwiner::<T, C>(&a.direct_sum(b)?, opts)?;
    let wa = weil_intertwiner::<T, C>(a, opts)?;
    let wb = weil_intertwiner::<T, C>(b, opts)?;
    Ok(projective_residual(&wa.matrix.kronecker(&wb.matrix), &whole.matrix))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{frobenius, intertwiner_space};
    use crate::random::random_symplectic_mod;
    use rand::SeedableRng;
    use crate::theta_weil::{heisenberg_operator, HeisenbergElement};

    fn sp(rows: Vec<Vec<i64>>, k: i64) -> SymplecticMatrix<i64> {
        SymplecticMatrix::from_rows(rows, Some(k)).unwrap()
    }

    fn fourier(k: u64, sign: f64) -> DMatrix<Complex<f64>> {
        DMatrix::from_fn(k as usize, k as usize, |x, y| {
            cis(sign * std::f64::consts::TAU * (x * y) as f64 / k as f64) / (k as f64).sqrt()
        })
    }

    #[test]
    fn identity_gives_identity() {
        for (g, k) in [(1, 2), (1, 5), (2, 3)] {
            let w = weil_intertwiner::<f64, i64>(&SymplecticMatrix::identity(g, Some(k)), WeilOptions::default()).unwrap();
            assert!(frobenius(&(&w.matrix - DMatrix::identity(w.dim(), w.dim()))) < 1e-12);
        }
    }

    #[test]
    fn quarter_turn_is_a_fourier_matrix() {
        // a ↦ b, b ↦ −a: the discrete Fourier transform e^{−2πixy/3}/√3;
        // the inverse rotation gives ζ^{xy}/√3
        let s = sp(vec![vec![0, -1], vec![1, 0]], 3);
        let w = weil_intertwiner::<f64, i64>(&s, WeilOptions::default()).unwrap();
        assert!(projective_residual(&fourier(3, -1.0), &w.matrix) < 1e-12);
        let w_inv = weil_intertwiner::<f64, i64>(&s.inverse(), WeilOptions::default()).unwrap();
        assert!(projective_residual(&fourier(3, 1.0), &w_inv.matrix) < 1e-12);
    }

    #[test]
    fn agrees_with_a_dense_solve() {
        // oracle: the full linear system over all generators, solved by SVD
        for (rows, k) in [
            (vec![vec![1, 1], vec![0, 1]], 2),
            (vec![vec![2, 1], vec![1, 1]], 4),
            (vec![vec![0, -1], vec![1, 0]], 6),
            (vec![vec![1, 1], vec![0, 1]], 3),
            (vec![vec![2, 3], vec![1, 2]], 5),
        ] {
            let a = sp(rows, k);
            let w = weil_intertwiner::<f64, i64>(&a, WeilOptions::default()).unwrap();
            let n = k as usize;
            let mut us = Vec::new();
            for j in 0..2 {
                let e: Vec<i64> = (0..2).map(|i| i64::from(i == j)).collect();
                let img: Vec<i64> = a.column(j);
                let u = heisenberg_operator::<f64>(&HeisenbergElement::from_interleaved(k as u64, &e, 0).unwrap()).unwrap();
                let ua = heisenberg_operator::<f64>(&HeisenbergElement::from_interleaved(k as u64, &img, 0).unwrap()).unwrap();
                // symmetric Weyl normalization ζ^{a'b'/2}, with 2⁻¹ mod k when k is odd
                let ab = img[0] * img[1];
                let half = if k % 2 == 1 { ((k + 1) / 2 * ab) % k } else { ab };
                let mu = cis(std::f64::consts::TAU * half as f64 / if k % 2 == 1 { k as f64 } else { 2.0 * k as f64 });
                us.push((u, ua * mu));
            }
            let pairs: Vec<_> = us.iter().map(|(u, v)| (u, v)).collect();
            let (basis, ns) = intertwiner_space(&pairs, n, 1e-9);
            assert_eq!(ns.dim(), 1);
            assert!(projective_residual(&basis[0], &w.matrix) < 1e-10);
        }
    }

    fn projectivity_residual(a: &SymplecticMatrix<i64>, b: &SymplecticMatrix<i64>, k: u64) -> f64 {
        let opts = WeilOptions::default();
        let wa = weil_intertwiner_at_level::<f64, i64>(a, k, opts).unwrap();
        let wb = weil_intertwiner_at_level::<f64, i64>(b, k, opts).unwrap();
        let wab = weil_intertwiner_at_level::<f64, i64>(&a.mul(b).unwrap(), k, opts).unwrap();
        projective_residual(&(&wa.matrix * &wb.matrix), &wab.matrix)
    }

    #[test]
    fn projective_on_random_pairs_mod_five() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let a = random_symplectic_mod(1, 5, 6, &mut rng).unwrap();
            let b = random_symplectic_mod(1, 5, 6, &mut rng).unwrap();
            assert!(projectivity_residual(&a, &b, 5) < 1e-8);
        }
    }

    #[test]
    fn projective_on_lifts_at_even_level() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(12);
        for (g, k) in [(1, 2), (1, 4), (2, 2)] {
            for _ in 0..10 {
                let a = random_symplectic_mod(g, 2 * k as i64, 6, &mut rng).unwrap();
                let b = random_symplectic_mod(g, 2 * k as i64, 6, &mut rng).unwrap();
                assert!(projectivity_residual(&a, &b, k) < 1e-8, "g={g} k={k}");
            }
        }
    }

    #[test]
    fn parity_commutes_at_odd_level() {
        // −I acts by f(x) ↦ f(−x), which is central
        let (g, k) = (2usize, 3u64);
        let n = 9;
        let parity = DMatrix::<Complex<f64>>::from_fn(n, n, |r, c| {
            let x = state_from_index(c, g, k);
            let y: Vec<u64> = x.iter().map(|v| (k - v) % k).collect();
            Complex::new(if r == state_index(&y, k) { 1.0 } else { 0.0 }, 0.0)
        });
        let minus = SymplecticMatrix::from_rows(vec![vec![2, 0, 0, 0], vec![0, 2, 0, 0], vec![0, 0, 2, 0], vec![0, 0, 0, 2]], Some(3)).unwrap();
        let w = weil_intertwiner::<f64, i64>(&minus, WeilOptions::default()).unwrap();
        assert!(projective_residual(&parity, &w.matrix) < 1e-12);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(13);
        for _ in 0..10 {
            let a = random_symplectic_mod(g, 3, 8, &mut rng).unwrap();
            let wa = weil_intertwiner::<f64, i64>(&a, WeilOptions::default()).unwrap().matrix;
            assert!(frobenius(&(&wa * &parity - &parity * &wa)) < 1e-10);
        }
    }

    #[test]
    fn guard_and_ring_errors() {
        let big = SymplecticMatrix::<i64>::identity(3, Some(7));
        assert!(matches!(weil_intertwiner::<f64, i64>(&big, WeilOptions::default()), Err(Error::GuardExceeded { .. })));
        let integral = SymplecticMatrix::<i64>::identity(1, None);
        assert!(weil_intertwiner::<f64, i64>(&integral, WeilOptions::default()).is_err());
    }

    #[test]
    fn single_precision_works_at_small_size() {
        let s = sp(vec![vec![0, -1], vec![1, 0]], 5);
        let w = weil_intertwiner::<f32, i64>(&s, WeilOptions::default()).unwrap();
        assert!(unitarity_defect(&w.matrix) < 1e-5);
    }

    #[test]
    fn tensor_factorization_of_identities() {
        let id = SymplecticMatrix::<i64>::identity(1, Some(3));
        let r: f64 = weil_tensor_factorization(&id, &id, WeilOptions::default()).unwrap();
        assert!(r < 1e-12);
    }
}
