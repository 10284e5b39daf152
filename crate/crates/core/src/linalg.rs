//! Dense linear algebra helpers shared by the provers and the search.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;
pub type RMatrix = DMatrix<f64>;
pub type RVector = DVector<f64>;

/// Relative singular-value cutoff used for every rank decision.
pub const RANK_RTOL: f64 = 1e-8;

pub(crate) const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

/// Largest entry modulus of `a - b`.
pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// `‖U†U − I‖_max`.
pub fn unitarity_defect(u: &CMatrix) -> f64 {
    let n = u.nrows();
    max_abs_diff(&(u.adjoint() * u), &CMatrix::identity(n, n))
}

/// `Tr(A† B)` without forming the product.
pub fn hs_inner(a: &CMatrix, b: &CMatrix) -> Complex64 {
    a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum()
}

/// Real coordinates for the `d²`-dimensional space of `d×d` Hermitian
/// matrices, orthonormal under `⟨A, B⟩ = Tr(AB)`.
///
/// Coordinate order: the `d` diagonal entries, then for each `j < k` the
/// symmetric generator `(E_jk + E_kj)/√2` followed by the antisymmetric
/// generator `i(E_kj − E_jk)/√2`.
#[derive(Clone, Debug)]
pub struct HermitianCoords {
    d: usize,
}

impl HermitianCoords {
    pub fn new(d: usize) -> Self {
        HermitianCoords { d }
    }

    pub fn dim(&self) -> usize {
        self.d * self.d
    }

    fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.d).flat_map(move |j| (j + 1..self.d).map(move |k| (j, k)))
    }

    /// Row vector of the complex functional `M ↦ Tr(W M)` evaluated on each
    /// generator; returns `(real part row, imaginary part row)`.
    pub fn functional(&self, w: &CMatrix) -> (RVector, RVector) {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let mut re = RVector::zeros(self.dim());
        let mut im = RVector::zeros(self.dim());
        for j in 0..self.d {
            let v = w[(j, j)];
            re[j] = v.re;
            im[j] = v.im;
        }
        for (p, (j, k)) in self.pairs().enumerate() {
            // Tr(W E_jk) = W_kj.
            let sym = (w[(k, j)] + w[(j, k)]) * s;
            let anti = (w[(j, k)] - w[(k, j)]) * Complex64::new(0.0, s);
            let base = self.d + 2 * p;
            re[base] = sym.re;
            im[base] = sym.im;
            re[base + 1] = anti.re;
            im[base + 1] = anti.im;
        }
        (re, im)
    }

    /// Hermitian matrix with the given coordinates.
    pub fn to_matrix(&self, x: &RVector) -> CMatrix {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let mut m = CMatrix::zeros(self.d, self.d);
        for j in 0..self.d {
            m[(j, j)] = Complex64::new(x[j], 0.0);
        }
        for (p, (j, k)) in self.pairs().enumerate() {
            let base = self.d + 2 * p;
            let v = Complex64::new(x[base] * s, -x[base + 1] * s);
            m[(j, k)] = v;
            m[(k, j)] = v.conj();
        }
        m
    }

    /// Coordinates of a Hermitian matrix (the anti-Hermitian part is ignored).
    pub fn coords(&self, m: &CMatrix) -> RVector {
        let s = std::f64::consts::SQRT_2;
        let mut x = RVector::zeros(self.dim());
        for j in 0..self.d {
            x[j] = m[(j, j)].re;
        }
        for (p, (j, k)) in self.pairs().enumerate() {
            let v = (m[(j, k)] + m[(k, j)].conj()) * 0.5;
            let base = self.d + 2 * p;
            x[base] = v.re * s;
            x[base + 1] = -v.im * s;
        }
        x
    }
}

/// SVD-based split of `R^n` into the row space of `rows` and its orthogonal
/// complement. Singular values below `RANK_RTOL · σ_max` count as zero.
pub struct RowSpace {
    /// Orthonormal basis of the row space, one vector per column.
    pub range: RMatrix,
    /// Orthonormal basis of the kernel, one vector per column.
    pub kernel: RMatrix,
}

impl RowSpace {
    pub fn of(rows: &RMatrix) -> Self {
        let n = rows.ncols();
        // Pad to a square (or taller) matrix so the SVD returns a full V.
        let padded = if rows.nrows() < n {
            let mut p = RMatrix::zeros(n, n);
            p.rows_mut(0, rows.nrows()).copy_from(rows);
            p
        } else {
            rows.clone()
        };
        let svd = padded.svd(false, true);
        let v_t = svd.v_t.expect("requested V^T");
        let smax = svd.singular_values.iter().cloned().fold(0.0, f64::max);
        let cutoff = RANK_RTOL * smax;
        let mut range = Vec::new();
        let mut kernel = Vec::new();
        for (i, &s) in svd.singular_values.iter().enumerate() {
            let v = v_t.row(i).transpose();
            if smax > 0.0 && s > cutoff {
                range.push(v);
            } else {
                kernel.push(v);
            }
        }
        let to_mat = |vs: Vec<RVector>| {
            if vs.is_empty() {
                RMatrix::zeros(n, 0)
            } else {
                RMatrix::from_columns(&vs)
            }
        };
        RowSpace {
            range: to_mat(range),
            kernel: to_mat(kernel),
        }
    }

    pub fn rank(&self) -> usize {
        self.range.ncols()
    }

    /// Distance from `f` to the row space.
    pub fn residual(&self, f: &RVector) -> f64 {
        if self.range.ncols() == 0 {
            return f.norm();
        }
        let coeffs = self.range.transpose() * f;
        (f - &self.range * coeffs).norm()
    }
}

/// Serializes a complex vector as a list of `[re, im]` pairs.
pub(crate) mod complex_vec {
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use super::CVector;

    pub fn serialize<S: Serializer>(v: &CVector, s: S) -> Result<S::Ok, S::Error> {
        let pairs: Vec<[f64; 2]> = v.iter().map(|z| [z.re, z.im]).collect();
        pairs.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<CVector, D::Error> {
        let pairs = Vec::<[f64; 2]>::deserialize(d)?;
        Ok(CVector::from_iterator(
            pairs.len(),
            pairs.into_iter().map(|[re, im]| Complex64::new(re, im)),
        ))
    }
}
