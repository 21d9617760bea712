//! Dense complex linear algebra for non-Hermitian effective Hamiltonians.
//!
//! Everything here wraps `faer` behind `ndarray` containers. The central
//! object is the biorthogonal eigensystem of a diagonalizable matrix `H`:
//! right eigenvectors `r_a` (columns of `R`), left eigenvectors `l_a`
//! normalized to `<l_a|r_b> = delta_ab`, which makes `sum_a |r_a><l_a|` the
//! identity. Left vectors are obtained from `R^{-1}` so the normalization
//! holds by construction.

use faer::complex_native::c64;
use faer::prelude::*;
use faer::Mat;
use ndarray::{Array1, Array2};
use num_complex::Complex64 as C64;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LinalgError {
    #[error("degenerate spectrum: |E_{a} - E_{b}| = {gap:.3e} below tolerance {tol:.3e} (alpha = {a}, beta = {b})")]
    DegenerateSpectrum { a: usize, b: usize, gap: f64, tol: f64 },
    #[error("matrix is singular or numerically rank-deficient")]
    Singular,
    #[error("matrix must be square, got {0}x{1}")]
    NotSquare(usize, usize),
}

/// Left/right eigensystem of a diagonalizable complex matrix.
///
/// `right` holds the right eigenvectors as columns; `left` holds the left
/// eigenvectors as columns, so `left^H * right = I`. Eigenvalues are sorted
/// by real part, then imaginary part, fixing the `alpha` indexing used by
/// every overlap tensor.
#[derive(Debug, Clone)]
pub struct BiorthogonalEig {
    pub energies: Array1<C64>,
    pub right: Array2<C64>,
    pub left: Array2<C64>,
}

impl BiorthogonalEig {
    pub fn dim(&self) -> usize {
        self.energies.len()
    }

    /// `<G| a_v |r_a>` for the site basis: component `v` of `r_a`.
    pub fn right_component(&self, v: usize, alpha: usize) -> C64 {
        self.right[[v, alpha]]
    }

    /// `<l_a| a_v^dag |G>` for the site basis: conjugate component `v` of `l_a`.
    pub fn left_bracket(&self, alpha: usize, v: usize) -> C64 {
        self.left[[v, alpha]].conj()
    }

    /// Reassemble `sum_a E_a |r_a><l_a|`; equals the input matrix up to
    /// numerical error.
    pub fn reconstruct(&self) -> Array2<C64> {
        let n = self.dim();
        let mut m = Array2::zeros((n, n));
        for a in 0..n {
            let e = self.energies[a];
            for i in 0..n {
                for j in 0..n {
                    m[[i, j]] += e * self.right[[i, a]] * self.left[[j, a]].conj();
                }
            }
        }
        m
    }

    /// `exp(-i H t)` evaluated through the eigensystem.
    pub fn propagator(&self, t: f64) -> Array2<C64> {
        let n = self.dim();
        let phases: Vec<C64> = self
            .energies
            .iter()
            .map(|e| (-C64::i() * e * t).exp())
            .collect();
        let mut m = Array2::zeros((n, n));
        for a in 0..n {
            for i in 0..n {
                for j in 0..n {
                    m[[i, j]] += phases[a] * self.right[[i, a]] * self.left[[j, a]].conj();
                }
            }
        }
        m
    }

    /// Apply `exp(-i H t)` to a vector.
    pub fn evolve(&self, state: &Array1<C64>, t: f64) -> Array1<C64> {
        let n = self.dim();
        let mut out = Array1::zeros(n);
        for a in 0..n {
            let mut amp = C64::new(0.0, 0.0);
            for j in 0..n {
                amp += self.left[[j, a]].conj() * state[j];
            }
            amp *= (-C64::i() * self.energies[a] * t).exp();
            for i in 0..n {
                out[i] += amp * self.right[[i, a]];
            }
        }
        out
    }
}

fn to_faer(m: &Array2<C64>) -> Mat<c64> {
    Mat::from_fn(m.nrows(), m.ncols(), |i, j| {
        let z = m[[i, j]];
        c64::new(z.re, z.im)
    })
}

fn from_faer(m: faer::MatRef<'_, c64>) -> Array2<C64> {
    Array2::from_shape_fn((m.nrows(), m.ncols()), |(i, j)| {
        let z = m.read(i, j);
        C64::new(z.re, z.im)
    })
}

/// Frobenius norm.
pub fn frob_norm(m: &Array2<C64>) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Spectral (operator 2-) norm via SVD.
pub fn spectral_norm(m: &Array2<C64>) -> f64 {
    let f = to_faer(m);
    let svd = f.singular_value_decomposition();
    let s = svd.s_diagonal();
    if s.nrows() == 0 {
        0.0
    } else {
        s.read(0, 0).re
    }
}

/// Dense inverse through partial-pivot LU.
pub fn inverse(m: &Array2<C64>) -> Result<Array2<C64>, LinalgError> {
    if m.nrows() != m.ncols() {
        return Err(LinalgError::NotSquare(m.nrows(), m.ncols()));
    }
    let f = to_faer(m);
    let lu = f.partial_piv_lu();
    let inv = lu.inverse();
    let out = from_faer(inv.as_ref());
    if out.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(LinalgError::Singular);
    }
    Ok(out)
}

/// Solve `M x = b`.
pub fn solve(m: &Array2<C64>, b: &Array1<C64>) -> Result<Array1<C64>, LinalgError> {
    if m.nrows() != m.ncols() {
        return Err(LinalgError::NotSquare(m.nrows(), m.ncols()));
    }
    let f = to_faer(m);
    let rhs = Mat::from_fn(b.len(), 1, |i, _| c64::new(b[i].re, b[i].im));
    let x = f.partial_piv_lu().solve(&rhs);
    let out = Array1::from_shape_fn(b.len(), |i| {
        let z = x.read(i, 0);
        C64::new(z.re, z.im)
    });
    if out.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(LinalgError::Singular);
    }
    Ok(out)
}

/// Least-squares solution of an overdetermined complex system via SVD.
pub fn lstsq(a: &Array2<C64>, b: &Array1<C64>) -> Array1<C64> {
    let fa = to_faer(a);
    let rhs = Mat::from_fn(b.len(), 1, |i, _| c64::new(b[i].re, b[i].im));
    let svd = fa.svd();
    let x = svd.solve_lstsq(&rhs);
    Array1::from_shape_fn(a.ncols(), |i| {
        let z = x.read(i, 0);
        C64::new(z.re, z.im)
    })
}

/// Eigenvalues only, sorted by `(Re, Im)`. Degeneracies are fine here.
pub fn eigenvalues(m: &Array2<C64>) -> Result<Array1<C64>, LinalgError> {
    if m.nrows() != m.ncols() {
        return Err(LinalgError::NotSquare(m.nrows(), m.ncols()));
    }
    let f = to_faer(m);
    let vals = f.eigenvalues::<c64>();
    let mut vals: Vec<C64> = vals.into_iter().map(|z| C64::new(z.re, z.im)).collect();
    vals.sort_by(|a, b| {
        a.re.partial_cmp(&b.re)
            .unwrap()
            .then(a.im.partial_cmp(&b.im).unwrap())
    });
    Ok(Array1::from_vec(vals))
}

/// Relative degeneracy tolerance applied by [`eig_biorthogonal`]:
/// eigenvalue pairs closer than `DEGENERACY_TOL_REL * ||H||_F` are rejected.
pub const DEGENERACY_TOL_REL: f64 = 1e-9;

/// Biorthogonal eigendecomposition with a degeneracy guard.
///
/// Errors with [`LinalgError::DegenerateSpectrum`] when the smallest
/// pairwise eigenvalue separation falls below `1e-9 * ||H||_F`; the usual
/// mitigation is a small diagonal disorder on the on-site energies (see
/// `model::HubbardParams::with_diagonal_disorder`).
pub fn eig_biorthogonal(m: &Array2<C64>) -> Result<BiorthogonalEig, LinalgError> {
    if m.nrows() != m.ncols() {
        return Err(LinalgError::NotSquare(m.nrows(), m.ncols()));
    }
    let n = m.nrows();
    if n == 0 {
        return Ok(BiorthogonalEig {
            energies: Array1::zeros(0),
            right: Array2::zeros((0, 0)),
            left: Array2::zeros((0, 0)),
        });
    }
    let f = to_faer(m);
    let evd = f.eigendecomposition::<c64>();
    let s = evd.s().column_vector().to_owned();
    let u = evd.u().to_owned();

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        let (a, b) = (s.read(i), s.read(j));
        a.re.partial_cmp(&b.re)
            .unwrap()
            .then(a.im.partial_cmp(&b.im).unwrap())
    });

    let energies = Array1::from_shape_fn(n, |k| {
        let z = s.read(order[k]);
        C64::new(z.re, z.im)
    });
    let tol = DEGENERACY_TOL_REL * frob_norm(m).max(f64::MIN_POSITIVE);
    let mut min_gap = f64::INFINITY;
    let mut min_pair = (0usize, 0usize);
    for a in 0..n {
        for b in (a + 1)..n {
            let gap = (energies[a] - energies[b]).norm();
            if gap < min_gap {
                min_gap = gap;
                min_pair = (a, b);
            }
        }
    }
    if n > 1 && min_gap < tol {
        return Err(LinalgError::DegenerateSpectrum {
            a: min_pair.0,
            b: min_pair.1,
            gap: min_gap,
            tol,
        });
    }

    let right_f = Mat::from_fn(n, n, |i, k| u.read(i, order[k]));
    let rinv = right_f.partial_piv_lu().inverse();
    let right = from_faer(right_f.as_ref());
    // rows of R^{-1} are <l_a|; store l_a as columns so left^H right = I.
    let left = Array2::from_shape_fn((n, n), |(i, a)| {
        let z = rinv.read(a, i);
        C64::new(z.re, z.im).conj()
    });
    if left.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(LinalgError::Singular);
    }
    Ok(BiorthogonalEig {
        energies,
        right,
        left,
    })
}
