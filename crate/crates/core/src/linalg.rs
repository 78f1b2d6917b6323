//! Dense complex linear algebra on top of nalgebra.

use nalgebra::DMatrix;
use num_complex::Complex64;

pub type CMatrix = DMatrix<Complex64>;

/// Largest singular value; 0 for an empty matrix.
pub fn spectral_norm(m: &CMatrix) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.clone().svd(false, false).singular_values.max()
}

/// `(m + m*)/2`.
pub fn hermitian_part(m: &CMatrix) -> CMatrix {
    (m + m.adjoint()).scale(0.5)
}

/// Eigenvalues of a Hermitian matrix, ascending. Only the Hermitian part of
/// `m` is used.
pub fn hermitian_eigenvalues(m: &CMatrix) -> Vec<f64> {
    if m.is_empty() {
        return Vec::new();
    }
    let mut ev: Vec<f64> = hermitian_part(m).symmetric_eigen().eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// Spectral norm of a Hermitian matrix, `max |λ|`.
pub fn hermitian_norm(m: &CMatrix) -> f64 {
    hermitian_eigenvalues(m).iter().fold(0.0, |acc, x| acc.max(x.abs()))
}

/// Eigenvalues of a general square matrix from its Schur form, sorted by
/// modulus descending (ties broken by argument).
pub fn eigenvalues(m: &CMatrix) -> Vec<Complex64> {
    let n = m.nrows();
    if n == 0 {
        return Vec::new();
    }
    let (_, t) = m.clone().schur().unpack();
    let scale = t.iter().map(|z| z.norm()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    let mut out = Vec::with_capacity(n);
    let mut i = 0;
    // the solver can leave unreduced 2x2 blocks on the diagonal
    while i < n {
        if i + 1 < n && t[(i + 1, i)].norm() > f64::EPSILON * scale {
            let (a, b, c, d) = (t[(i, i)], t[(i, i + 1)], t[(i + 1, i)], t[(i + 1, i + 1)]);
            let half_tr = (a + d) * 0.5;
            let disc = ((a - d) * 0.5 * ((a - d) * 0.5) + b * c).sqrt();
            out.push(half_tr + disc);
            out.push(half_tr - disc);
            i += 2;
        } else {
            out.push(t[(i, i)]);
            i += 1;
        }
    }
    sort_by_modulus_desc(&mut out);
    out
}

pub fn sort_by_modulus_desc(v: &mut [Complex64]) {
    v.sort_by(|x, y| y.norm().total_cmp(&x.norm()).then(x.arg().total_cmp(&y.arg())));
}

pub fn identity(n: usize) -> CMatrix {
    CMatrix::identity(n, n)
}
