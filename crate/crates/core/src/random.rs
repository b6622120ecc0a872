//! Seeded generators for test and report inputs.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::Result;
use crate::scalar::{Complex, Real};
use crate::symplectic::SymplecticMatrix;
use crate::theta_weil::SiegelPoint;

/// A product of `length` random transvection powers over ℤ/k.
///
/// Transvections generate `Sp_{2g}(ℤ/k)`, so long words spread over the group.
pub fn random_symplectic_mod<R: Rng + ?Sized>(genus: usize, level: i64, length: usize, rng: &mut R) -> Result<SymplecticMatrix<i64>> {
    let mut m = SymplecticMatrix::identity(genus, Some(level));
    for _ in 0..length {
        let v = loop {
            let v: Vec<i64> = (0..2 * genus).map(|_| rng.gen_range(0..level)).collect();
            if v.iter().any(|&x| x != 0) {
                break v;
            }
        };
        let c = rng.gen_range(1..level.max(2));
        m = m.mul(&SymplecticMatrix::transvection_power(&v, c, Some(level))?)?;
    }
    Ok(m)
}

/// A diagonal Siegel point with real parts in `[−½, ½]` and imaginary parts in `[½, 2]`.
pub fn random_diagonal_siegel<T: Real, R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Result<SiegelPoint<T>> {
    let entries: Vec<Complex<T>> = (0..dim)
        .map(|_| Complex::new(T::lit(rng.gen_range(-0.5..=0.5)), T::lit(rng.gen_range(0.5..=2.0))))
        .collect();
    SiegelPoint::diagonal(&entries)
}

/// Haar-distributed unitary from the QR of a complex Gaussian matrix.
pub fn random_unitary<T: Real, R: Rng + ?Sized>(n: usize, rng: &mut R) -> nalgebra::DMatrix<Complex<T>> {
    let mut gaussian = || T::lit(rng.sample(StandardNormal));
    let z = nalgebra::DMatrix::from_fn(n, n, |_, _| Complex::new(gaussian(), gaussian()));
    let qr = z.qr();
    let (q, r) = (qr.q(), qr.r());
    // fix the phases so the distribution does not depend on the QR convention
    let phases = nalgebra::DMatrix::from_fn(n, n, |i, j| {
        if i == j && r[(i, i)].norm_sqr() > T::zero() {
            r[(i, i)] / Complex::new(r[(i, i)].norm_sqr().sqrt(), T::zero())
        } else if i == j {
            Complex::new(T::one(), T::zero())
        } else {
            Complex::new(T::zero(), T::zero())
        }
    });
    q * phases
}
