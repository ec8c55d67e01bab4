//! Small dense complex matrices, row-major.

use num_complex::Complex64;
use std::ops::{Index, IndexMut, Mul};

pub type C64 = Complex64;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);

/// Unit-modulus complex number `e^{i t}`.
pub fn cis(t: f64) -> C64 {
    C64::new(t.cos(), t.sin())
}

#[derive(Clone, Debug, PartialEq)]
pub struct CMat {
    dim: usize,
    data: Vec<C64>,
}

impl CMat {
    pub fn zeros(dim: usize) -> Self {
        CMat { dim, data: vec![ZERO; dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_diag(diag: &[C64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &v) in diag.iter().enumerate() {
            m[(i, i)] = v;
        }
        m
    }

    /// Builds a matrix from row-major entries. Panics if the length is not a square.
    pub fn from_rows(dim: usize, data: Vec<C64>) -> Self {
        assert_eq!(data.len(), dim * dim, "entry count must be dim^2");
        CMat { dim, data }
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                data.push(f(r, c));
            }
        }
        CMat { dim, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[C64] {
        &self.data[r * self.dim..(r + 1) * self.dim]
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |r, c| self[(c, r)].conj())
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn scale(&self, s: C64) -> Self {
        CMat { dim: self.dim, data: self.data.iter().map(|&v| v * s).collect() }
    }

    pub fn add(&self, other: &CMat) -> Self {
        assert_eq!(self.dim, other.dim);
        CMat {
            dim: self.dim,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &CMat) -> Self {
        assert_eq!(self.dim, other.dim);
        CMat {
            dim: self.dim,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn matmul(&self, other: &CMat) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let d = self.dim;
        let mut out = vec![ZERO; d * d];
        for r in 0..d {
            let orow = &mut out[r * d..(r + 1) * d];
            for k in 0..d {
                let a = self.data[r * d + k];
                if a == ZERO {
                    continue;
                }
                let brow = &other.data[k * d..(k + 1) * d];
                for (o, b) in orow.iter_mut().zip(brow) {
                    *o += a * b;
                }
            }
        }
        CMat { dim: d, data: out }
    }

    /// `Tr(self^dagger * other)`.
    pub fn inner(&self, other: &CMat) -> C64 {
        assert_eq!(self.dim, other.dim);
        self.data.iter().zip(&other.data).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// `||U^dagger U - I||_F`.
    pub fn unitarity_defect(&self) -> f64 {
        self.adjoint().matmul(self).sub(&Self::identity(self.dim)).frobenius_norm()
    }

    pub fn is_diagonal(&self, tol: f64) -> bool {
        (0..self.dim)
            .all(|r| (0..self.dim).all(|c| r == c || self[(r, c)].norm() <= tol))
    }

    pub fn diagonal(&self) -> Vec<C64> {
        (0..self.dim).map(|i| self[(i, i)]).collect()
    }

    /// Frobenius mass outside the 2x2 diagonal blocks `(2k, 2k+1)`.
    pub fn off_block_mass(&self) -> f64 {
        let mut s = 0.0;
        for r in 0..self.dim {
            for c in 0..self.dim {
                if r / 2 != c / 2 {
                    s += self[(r, c)].norm_sqr();
                }
            }
        }
        s.sqrt()
    }

    /// The 2x2 diagonal block number `k` as `[a, b, c, d]` (row-major).
    pub fn block2(&self, k: usize) -> [C64; 4] {
        let i = 2 * k;
        [self[(i, i)], self[(i, i + 1)], self[(i + 1, i)], self[(i + 1, i + 1)]]
    }

    /// Conjugation `P self P` by a permutation given as an involutive index map.
    pub fn permute_sym(&self, perm: &[usize]) -> Self {
        Self::from_fn(self.dim, |r, c| self[(perm[r], perm[c])])
    }

    /// Determinant by Gaussian elimination with partial pivoting.
    pub fn det(&self) -> C64 {
        let d = self.dim;
        let mut a = self.data.clone();
        let mut det = ONE;
        for col in 0..d {
            let piv = (col..d)
                .max_by(|&x, &y| a[x * d + col].norm().total_cmp(&a[y * d + col].norm()))
                .unwrap();
            if a[piv * d + col].norm() == 0.0 {
                return ZERO;
            }
            if piv != col {
                for k in 0..d {
                    a.swap(piv * d + k, col * d + k);
                }
                det = -det;
            }
            let p = a[col * d + col];
            det *= p;
            for r in col + 1..d {
                let f = a[r * d + col] / p;
                if f == ZERO {
                    continue;
                }
                for k in col..d {
                    let v = a[col * d + k];
                    a[r * d + k] -= f * v;
                }
            }
        }
        det
    }
}

impl Index<(usize, usize)> for CMat {
    type Output = C64;
    fn index(&self, (r, c): (usize, usize)) -> &C64 {
        &self.data[r * self.dim + c]
    }
}

impl IndexMut<(usize, usize)> for CMat {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut C64 {
        &mut self.data[r * self.dim + c]
    }
}

impl Mul for &CMat {
    type Output = CMat;
    fn mul(self, rhs: &CMat) -> CMat {
        self.matmul(rhs)
    }
}

/// In-place unnormalized Walsh-Hadamard transform (natural/Sylvester order).
pub fn fwht(v: &mut [f64]) {
    let n = v.len();
    assert!(n.is_power_of_two(), "length must be a power of two");
    let mut h = 1;
    while h < n {
        for i in (0..n).step_by(2 * h) {
            for j in i..i + h {
                let (a, b) = (v[j], v[j + h]);
                v[j] = a + b;
                v[j + h] = a - b;
            }
        }
        h *= 2;
    }
}

/// Principal argument helper that maps exact zero to zero.
pub fn arg(z: C64) -> f64 {
    if z == ZERO {
        0.0
    } else {
        z.arg()
    }
}
