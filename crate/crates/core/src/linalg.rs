//! Numerical null spaces and projective comparisons for complex matrices.

use nalgebra::{DMatrix, DVector};

use crate::scalar::{Complex, Real};

pub type CMatrix<T> = DMatrix<Complex<T>>;

/// Default relative singular-value cutoff for rank decisions.
pub const DEFAULT_RANK_CUTOFF: f64 = 1e-7;

/// Numerical kernel of a linear map.
#[derive(Debug, Clone)]
pub struct NullSpace<T: Real> {
    /// Orthonormal kernel basis, one column per vector.
    pub basis: Vec<DVector<Complex<T>>>,
    /// Singular values, descending.
    pub singular_values: Vec<T>,
    /// Some singular value lies within a factor 10 of the cutoff.
    pub ambiguous: bool,
}

impl<T: Real> NullSpace<T> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Kernel of `matrix`, treating singular values `≤ cutoff · σ_max` as zero.
pub fn null_space<T: Real>(matrix: &CMatrix<T>, cutoff: T) -> NullSpace<T> {
    let cols = matrix.ncols();
    if cols == 0 {
        return NullSpace { basis: Vec::new(), singular_values: Vec::new(), ambiguous: false };
    }
    // square the problem: a QR of a tall stack keeps the kernel and the singular values
    let square = if matrix.nrows() > cols {
        matrix.clone().qr().r()
    } else if matrix.nrows() < cols {
        let mut padded = CMatrix::<T>::zeros(cols, cols);
        padded.view_mut((0, 0), (matrix.nrows(), cols)).copy_from(matrix);
        padded
    } else {
        matrix.clone()
    };
    let svd = square.svd(false, true);
    let v_t = svd.v_t.expect("requested V");
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&i, &j| svd.singular_values[j].partial_cmp(&svd.singular_values[i]).expect("finite singular values"));
    let singular_values: Vec<T> = order.iter().map(|&i| svd.singular_values[i]).collect();
    let largest = singular_values.first().copied().unwrap_or_else(T::zero);
    let ten = T::lit(10.0);
    let mut basis = Vec::new();
    let mut ambiguous = false;
    for &i in &order {
        let s = svd.singular_values[i];
        let threshold = cutoff * largest;
        if s <= threshold || largest == T::zero() {
            // row i of Vᴴ is the conjugate of the right singular vector
            basis.push(v_t.row(i).transpose().map(|z| z.conj()));
        }
        if largest > T::zero() && s > threshold / ten && s < threshold * ten {
            ambiguous = true;
        }
    }
    NullSpace { basis, singular_values, ambiguous }
}

/// Column-major vectorisation index of entry `(r, c)` of an `n × n` matrix.
fn vec_index(n: usize, r: usize, c: usize) -> usize {
    c * n + r
}

/// Solutions `X` of `X Mᵢ = Nᵢ X` for all pairs, as `n × n` matrices.
pub fn intertwiner_space<T: Real>(pairs: &[(&CMatrix<T>, &CMatrix<T>)], n: usize, cutoff: T) -> (Vec<CMatrix<T>>, NullSpace<T>) {
    let nn = n * n;
    if pairs.is_empty() {
        let basis = (0..nn)
            .map(|i| {
                let mut v = DVector::zeros(nn);
                v[i] = Complex::new(T::one(), T::zero());
                v
            })
            .collect::<Vec<_>>();
        let mats = basis.iter().map(|v| CMatrix::from_column_slice(n, n, v.as_slice())).collect();
        return (mats, NullSpace { basis, singular_values: Vec::new(), ambiguous: false });
    }
    let mut system = CMatrix::<T>::zeros(pairs.len() * nn, nn);
    for (block, (m, nmat)) in pairs.iter().enumerate() {
        let off = block * nn;
        // (X M)[r][c] = Σ_p X[r][p] M[p][c];  (N X)[r][c] = Σ_p N[r][p] X[p][c]
        for r in 0..n {
            for c in 0..n {
                let row = off + vec_index(n, r, c);
                for p in 0..n {
                    system[(row, vec_index(n, r, p))] += m[(p, c)];
                    system[(row, vec_index(n, p, c))] -= nmat[(r, p)];
                }
            }
        }
    }
    let ns = null_space(&system, cutoff);
    let mats = ns.basis.iter().map(|v| CMatrix::from_column_slice(n, n, v.as_slice())).collect();
    (mats, ns)
}

/// Frobenius inner product `⟨x, y⟩ = Σ conj(xᵢⱼ) yᵢⱼ`.
pub fn inner<T: Real>(x: &CMatrix<T>, y: &CMatrix<T>) -> Complex<T> {
    x.iter().zip(y.iter()).fold(Complex::new(T::zero(), T::zero()), |acc, (a, b)| acc + a.conj() * b)
}

pub fn frobenius<T: Real>(x: &CMatrix<T>) -> T {
    x.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr()).sqrt()
}

/// Scalar `c` minimising `‖y − c·x‖`.
pub fn best_fit_scalar<T: Real>(x: &CMatrix<T>, y: &CMatrix<T>) -> Complex<T> {
    let denom = inner(x, x).re;
    if denom == T::zero() {
        return Complex::new(T::zero(), T::zero());
    }
    inner(x, y) / Complex::new(denom, T::zero())
}

/// `min_c ‖y − c·x‖`.
pub fn projective_residual<T: Real>(x: &CMatrix<T>, y: &CMatrix<T>) -> T {
    let c = best_fit_scalar(x, y);
    frobenius(&(y - x * c))
}

/// `‖MᴴM − I‖` in the Frobenius norm.
pub fn unitarity_defect<T: Real>(m: &CMatrix<T>) -> T {
    let n = m.nrows();
    frobenius(&(m.adjoint() * m - CMatrix::<T>::identity(n, n)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn kernel_of_rank_one_map() {
        let m = CMatrix::from_row_slice(2, 3, &[c(1.0, 0.0), c(0.0, 1.0), c(0.0, 0.0), c(2.0, 0.0), c(0.0, 2.0), c(0.0, 0.0)]);
        let ns = null_space(&m, 1e-7);
        assert_eq!(ns.dim(), 2);
        for v in &ns.basis {
            assert!((&m * v).norm() < 1e-12);
        }
        assert!(!ns.ambiguous);
    }

    #[test]
    fn commutant_of_a_diagonal_matrix() {
        let d = CMatrix::from_diagonal(&DVector::from_vec(vec![c(1.0, 0.0), c(2.0, 0.0), c(2.0, 0.0)]));
        let (basis, ns) = intertwiner_space(&[(&d, &d)], 3, 1e-7);
        assert_eq!(ns.dim(), 1 + 4);
        for x in &basis {
            assert!(frobenius(&(x * &d - &d * x)) < 1e-12);
        }
    }

    #[test]
    fn projective_residual_ignores_scalars() {
        let x = CMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(0.0, 1.0), c(3.0, -1.0), c(0.5, 0.0)]);
        let y = &x * c(0.3, -2.0);
        assert!(projective_residual(&x, &y) < 1e-12);
        assert!(projective_residual(&x, &CMatrix::identity(2, 2)) > 0.1);
    }

    #[test]
    fn ambiguity_flag_near_cutoff() {
        let d = CMatrix::from_diagonal(&DVector::from_vec(vec![c(1.0, 0.0), c(3e-7, 0.0)]));
        assert!(null_space(&d, 1e-7).ambiguous);
    }
}
