//! Dense complex square matrices. Everything in this crate is small (at most
//! 27x27), so the implementation favors clarity over blocking or SIMD.

use std::fmt;
use std::ops::{Deref, Index, IndexMut};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub const TOL: f64 = 1e-9;

#[derive(Clone, PartialEq)]
pub struct Matrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl Matrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Self {
        let dim = rows.len();
        let mut m = Self::zeros(dim);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), dim, "rows must form a square matrix");
            for (j, v) in row.iter().enumerate() {
                m[(i, j)] = *v;
            }
        }
        m
    }

    /// Real 0/1 permutation-style matrices written as integer rows.
    pub fn from_int_rows(rows: &[Vec<i64>]) -> Self {
        let rows: Vec<Vec<Complex64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Complex64::new(x as f64, 0.0)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.dim, other.dim, "dimension mismatch in mul");
        let n = self.dim;
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.dim, other.dim);
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(other.data.iter()) {
            *a += b;
        }
        out
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.dim, other.dim);
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(other.data.iter()) {
            *a -= b;
        }
        out
    }

    pub fn scale(&self, s: Complex64) -> Matrix {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a *= s;
        }
        out
    }

    pub fn transpose(&self) -> Matrix {
        let n = self.dim;
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(j, i)] = self[(i, j)];
            }
        }
        out
    }

    pub fn conj(&self) -> Matrix {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = a.conj();
        }
        out
    }

    pub fn adjoint(&self) -> Matrix {
        self.transpose().conj()
    }

    pub fn pow(&self, mut e: u32) -> Matrix {
        let mut acc = Matrix::identity(self.dim);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Gauss-Jordan inverse with partial pivoting.
    pub fn inverse(&self) -> Result<Matrix> {
        let n = self.dim;
        let mut a = self.clone();
        let mut inv = Matrix::identity(n);
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&i, &j| a[(i, col)].norm().partial_cmp(&a[(j, col)].norm()).unwrap())
                .unwrap();
            if a[(pivot, col)].norm() < 1e-14 {
                return Err(Error::Domain("singular matrix".into()));
            }
            if pivot != col {
                for j in 0..n {
                    let (x, y) = (a[(col, j)], a[(pivot, j)]);
                    a[(col, j)] = y;
                    a[(pivot, j)] = x;
                    let (x, y) = (inv[(col, j)], inv[(pivot, j)]);
                    inv[(col, j)] = y;
                    inv[(pivot, j)] = x;
                }
            }
            let p = a[(col, col)];
            for j in 0..n {
                a[(col, j)] /= p;
                inv[(col, j)] /= p;
            }
            for i in 0..n {
                if i == col {
                    continue;
                }
                let f = a[(i, col)];
                if f.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..n {
                    let (acj, icj) = (a[(col, j)], inv[(col, j)]);
                    a[(i, j)] -= f * acj;
                    inv[(i, j)] -= f * icj;
                }
            }
        }
        Ok(inv)
    }

    pub fn kron(&self, other: &Matrix) -> Matrix {
        let (n, m) = (self.dim, other.dim);
        let mut out = Matrix::zeros(n * m);
        for i in 0..n {
            for j in 0..n {
                let a = self[(i, j)];
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for k in 0..m {
                    for l in 0..m {
                        out[(i * m + k, j * m + l)] = a * other[(k, l)];
                    }
                }
            }
        }
        out
    }

    pub fn max_abs_diff(&self, other: &Matrix) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.data
            .iter()
            .zip(other.data.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn unitarity_residual(&self) -> f64 {
        self.mul(&self.adjoint())
            .max_abs_diff(&Matrix::identity(self.dim))
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_residual() < tol
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.dim);
        let n = self.dim;
        let mut out = vec![Complex64::new(0.0, 0.0); n];
        for i in 0..n {
            for j in 0..n {
                out[i] += self[(i, j)] * v[j];
            }
        }
        out
    }

    pub fn rows(&self) -> Vec<Vec<Complex64>> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self[(i, j)]).collect())
            .collect()
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.dim + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.dim, self.dim)?;
        for i in 0..self.dim {
            let row: Vec<String> = (0..self.dim)
                .map(|j| format!("{:.4}{:+.4}i", self[(i, j)].re, self[(i, j)].im))
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// A dense complex square matrix checked to be unitary at construction.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitaryMatrix(Matrix);

impl UnitaryMatrix {
    pub fn new(m: Matrix) -> Result<Self> {
        let r = m.unitarity_residual();
        if r >= TOL {
            return Err(Error::Integrity(format!(
                "matrix is not unitary (residual {r:.3e})"
            )));
        }
        Ok(Self(m))
    }

    pub fn into_matrix(self) -> Matrix {
        self.0
    }
}

impl Deref for UnitaryMatrix {
    type Target = Matrix;
    fn deref(&self) -> &Matrix {
        &self.0
    }
}

/// Multiply `computed` by the unit phase that makes its largest-modulus entry
/// real-positive relative to `reference`. Returns the aligned matrix and the
/// phase that was applied.
pub fn align_global_phase(computed: &Matrix, reference: &Matrix) -> (Matrix, Complex64) {
    assert_eq!(computed.dim(), reference.dim());
    let n = computed.dim();
    let mut best = (0usize, 0usize);
    let mut best_norm = -1.0;
    for i in 0..n {
        for j in 0..n {
            let v = computed[(i, j)].norm();
            if v > best_norm {
                best_norm = v;
                best = (i, j);
            }
        }
    }
    let c = computed[best];
    let r = reference[best];
    let phase = if r.norm() < 1e-12 || c.norm() < 1e-12 {
        Complex64::new(1.0, 0.0)
    } else {
        let ratio = r / c;
        ratio / ratio.norm()
    };
    (computed.scale(phase), phase)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn inverse_roundtrip() {
        let m = Matrix::from_rows(&[
            vec![c(1.0, 1.0), c(2.0, 0.0), c(0.0, -1.0)],
            vec![c(0.0, 0.0), c(3.0, 0.5), c(1.0, 0.0)],
            vec![c(1.0, 0.0), c(0.0, 0.0), c(2.0, 2.0)],
        ]);
        let inv = m.inverse().unwrap();
        let prod = m.mul(&inv);
        assert!(prod.max_abs_diff(&Matrix::identity(3)) < 1e-12);
    }

    #[test]
    fn kron_dims_and_values() {
        let a = Matrix::from_int_rows(&[vec![0, 1], vec![1, 0]]);
        let i2 = Matrix::identity(2);
        let k = a.kron(&i2);
        assert_eq!(k.dim(), 4);
        assert_eq!(k[(0, 2)], c(1.0, 0.0));
        assert_eq!(k[(1, 3)], c(1.0, 0.0));
        assert_eq!(k[(0, 0)], c(0.0, 0.0));
    }

    #[test]
    fn unitary_gate_accepts_rotation() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let h = Matrix::from_rows(&[vec![c(s, 0.0), c(s, 0.0)], vec![c(s, 0.0), c(-s, 0.0)]]);
        assert!(UnitaryMatrix::new(h).is_ok());
        let bad = Matrix::from_int_rows(&[vec![1, 1], vec![0, 1]]);
        assert!(UnitaryMatrix::new(bad).is_err());
    }

    #[test]
    fn phase_alignment_recovers_reference() {
        let reference = Matrix::from_int_rows(&[vec![1, 0], vec![0, 1]]);
        let phase = Complex64::from_polar(1.0, 0.77);
        let computed = reference.scale(phase);
        let (aligned, applied) = align_global_phase(&computed, &reference);
        assert!(aligned.max_abs_diff(&reference) < 1e-12);
        assert!((applied * phase - c(1.0, 0.0)).norm() < 1e-12);
    }
}
