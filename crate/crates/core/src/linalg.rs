//! Fixed-size dense matrices used throughout the crate.
//!
//! Only 2×2 and 4×4 shapes occur, so these are plain row-major arrays with
//! the handful of operations the closed forms need. Anything heavier
//! (general eigenvalues) goes through nalgebra in `f64`.

use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::{lit, Scalar};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2<T> {
    pub m: [[T; 2]; 2],
}

impl<T: Scalar> Mat2<T> {
    pub fn new(m00: T, m01: T, m10: T, m11: T) -> Self {
        Self {
            m: [[m00, m01], [m10, m11]],
        }
    }

    pub fn from_row_major(e: [T; 4]) -> Self {
        Self::new(e[0], e[1], e[2], e[3])
    }

    pub fn to_row_major(&self) -> [T; 4] {
        [self.m[0][0], self.m[0][1], self.m[1][0], self.m[1][1]]
    }

    pub fn zero() -> Self {
        Self::new(T::zero(), T::zero(), T::zero(), T::zero())
    }

    pub fn identity() -> Self {
        Self::diag(T::one(), T::one())
    }

    pub fn diag(d0: T, d1: T) -> Self {
        Self::new(d0, T::zero(), T::zero(), d1)
    }

    /// The symplectic unit `J = [[0, 1], [−1, 0]]`.
    pub fn j() -> Self {
        Self::new(T::zero(), T::one(), -T::one(), T::zero())
    }

    pub fn det(&self) -> T {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    pub fn trace(&self) -> T {
        self.m[0][0] + self.m[1][1]
    }

    pub fn transpose(&self) -> Self {
        Self::new(self.m[0][0], self.m[1][0], self.m[0][1], self.m[1][1])
    }

    pub fn scale(&self, s: T) -> Self {
        Self::new(
            self.m[0][0] * s,
            self.m[0][1] * s,
            self.m[1][0] * s,
            self.m[1][1] * s,
        )
    }

    /// `J·self`, computed by row permutation.
    pub fn j_left(&self) -> Self {
        Self::new(self.m[1][0], self.m[1][1], -self.m[0][0], -self.m[0][1])
    }

    pub fn inverse(&self) -> Option<Self> {
        let det = self.det();
        if det == T::zero() || !det.is_finite() {
            return None;
        }
        Some(Self::new(self.m[1][1], -self.m[0][1], -self.m[1][0], self.m[0][0]).scale(T::one() / det))
    }

    pub fn mul_vec(&self, v: [T; 2]) -> [T; 2] {
        [
            self.m[0][0] * v[0] + self.m[0][1] * v[1],
            self.m[1][0] * v[0] + self.m[1][1] * v[1],
        ]
    }

    pub fn asymmetry(&self) -> T {
        (self.m[0][1] - self.m[1][0]).abs()
    }

    pub fn symmetrized(&self) -> Self {
        let off = (self.m[0][1] + self.m[1][0]) * lit(0.5);
        Self::new(self.m[0][0], off, off, self.m[1][1])
    }

    pub fn max_abs(&self) -> T {
        self.m
            .iter()
            .flatten()
            .fold(T::zero(), |acc, x| acc.max(x.abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.m.iter().flatten().all(|x| x.is_finite())
    }
}

impl<T: Scalar> Add for Mat2<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(
            self.m[0][0] + o.m[0][0],
            self.m[0][1] + o.m[0][1],
            self.m[1][0] + o.m[1][0],
            self.m[1][1] + o.m[1][1],
        )
    }
}

impl<T: Scalar> Sub for Mat2<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(
            self.m[0][0] - o.m[0][0],
            self.m[0][1] - o.m[0][1],
            self.m[1][0] - o.m[1][0],
            self.m[1][1] - o.m[1][1],
        )
    }
}

impl<T: Scalar> Neg for Mat2<T> {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(-T::one())
    }
}

impl<T: Scalar> Mul for Mat2<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let a = &self.m;
        let b = &o.m;
        Self::new(
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        )
    }
}

/// Row-major 4×4 matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat4<T> {
    pub m: [[T; 4]; 4],
}

impl<T: Scalar> Mat4<T> {
    pub fn from_rows(m: [[T; 4]; 4]) -> Self {
        Self { m }
    }

    pub fn from_row_major(e: &[T; 16]) -> Self {
        let mut m = [[T::zero(); 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            row.copy_from_slice(&e[4 * i..4 * i + 4]);
        }
        Self { m }
    }

    pub fn to_row_major(&self) -> [T; 16] {
        let mut out = [T::zero(); 16];
        for i in 0..4 {
            out[4 * i..4 * i + 4].copy_from_slice(&self.m[i]);
        }
        out
    }

    pub fn zero() -> Self {
        Self {
            m: [[T::zero(); 4]; 4],
        }
    }

    pub fn identity() -> Self {
        Self::diag([T::one(); 4])
    }

    pub fn diag(d: [T; 4]) -> Self {
        let mut out = Self::zero();
        for (i, di) in d.into_iter().enumerate() {
            out.m[i][i] = di;
        }
        out
    }

    /// Assembles `[[a, b], [c, d]]` from 2×2 blocks.
    pub fn from_blocks(a: Mat2<T>, b: Mat2<T>, c: Mat2<T>, d: Mat2<T>) -> Self {
        let mut out = Self::zero();
        for i in 0..2 {
            for j in 0..2 {
                out.m[i][j] = a.m[i][j];
                out.m[i][j + 2] = b.m[i][j];
                out.m[i + 2][j] = c.m[i][j];
                out.m[i + 2][j + 2] = d.m[i][j];
            }
        }
        out
    }

    /// 2×2 block at block-row `bi`, block-column `bj`.
    pub fn block(&self, bi: usize, bj: usize) -> Mat2<T> {
        let (r, c) = (2 * bi, 2 * bj);
        Mat2::new(
            self.m[r][c],
            self.m[r][c + 1],
            self.m[r + 1][c],
            self.m[r + 1][c + 1],
        )
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zero();
        for i in 0..4 {
            for j in 0..4 {
                out.m[i][j] = self.m[j][i];
            }
        }
        out
    }

    pub fn scale(&self, s: T) -> Self {
        let mut out = *self;
        out.m.iter_mut().flatten().for_each(|x| *x *= s);
        out
    }

    pub fn trace(&self) -> T {
        (0..4).fold(T::zero(), |acc, i| acc + self.m[i][i])
    }

    pub fn max_abs(&self) -> T {
        self.m
            .iter()
            .flatten()
            .fold(T::zero(), |acc, x| acc.max(x.abs()))
    }

    /// Infinity norm (max row sum).
    pub fn norm_inf(&self) -> T {
        self.m.iter().fold(T::zero(), |acc, row| {
            acc.max(row.iter().fold(T::zero(), |s, x| s + x.abs()))
        })
    }

    pub fn is_finite(&self) -> bool {
        self.m.iter().flatten().all(|x| x.is_finite())
    }

    pub fn mul_vec(&self, v: [T; 4]) -> [T; 4] {
        let mut out = [T::zero(); 4];
        for (o, row) in out.iter_mut().zip(&self.m) {
            *o = row.iter().zip(&v).fold(T::zero(), |s, (a, b)| s + *a * *b);
        }
        out
    }

    /// `vᵀ·self·w`.
    pub fn bilinear(&self, v: [T; 4], w: [T; 4]) -> T {
        let mw = self.mul_vec(w);
        v.iter().zip(&mw).fold(T::zero(), |s, (a, b)| s + *a * *b)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut result = Self::identity();
        let mut base = *self;
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = result * base;
            }
            base = base * base;
            n >>= 1;
        }
        result
    }

    /// Determinant by Gaussian elimination with partial pivoting.
    pub fn det(&self) -> T {
        let mut a = self.m;
        let mut det = T::one();
        for col in 0..4 {
            let pivot = (col..4)
                .max_by(|&i, &j| a[i][col].abs().partial_cmp(&a[j][col].abs()).unwrap())
                .unwrap();
            if a[pivot][col] == T::zero() {
                return T::zero();
            }
            if pivot != col {
                a.swap(pivot, col);
                det = -det;
            }
            det *= a[col][col];
            for row in col + 1..4 {
                let f = a[row][col] / a[col][col];
                for k in col..4 {
                    let v = a[col][k];
                    a[row][k] -= f * v;
                }
            }
        }
        det
    }

    /// Gauss–Jordan inverse; `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        let mut a = self.m;
        let mut inv = Self::identity().m;
        for col in 0..4 {
            let pivot = (col..4)
                .max_by(|&i, &j| a[i][col].abs().partial_cmp(&a[j][col].abs()).unwrap())
                .unwrap();
            if a[pivot][col] == T::zero() {
                return None;
            }
            a.swap(pivot, col);
            inv.swap(pivot, col);
            let p = T::one() / a[col][col];
            for k in 0..4 {
                a[col][k] *= p;
                inv[col][k] *= p;
            }
            for row in 0..4 {
                if row != col {
                    let f = a[row][col];
                    for k in 0..4 {
                        let (ack, ick) = (a[col][k], inv[col][k]);
                        a[row][k] -= f * ack;
                        inv[row][k] -= f * ick;
                    }
                }
            }
        }
        Some(Self { m: inv })
    }

    pub fn is_symmetric(&self, tol: T) -> bool {
        (0..4).all(|i| (0..4).all(|j| (self.m[i][j] - self.m[j][i]).abs() <= tol))
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        (*self - *other).max_abs()
    }

    /// Conversion to an nalgebra matrix in `f64`.
    pub fn to_nalgebra(&self) -> nalgebra::Matrix4<f64> {
        nalgebra::Matrix4::from_fn(|i, j| crate::scalar::to_f64(self.m[i][j]))
    }
}

impl<T: Scalar> Add for Mat4<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let mut out = self;
        for i in 0..4 {
            for j in 0..4 {
                out.m[i][j] += o.m[i][j];
            }
        }
        out
    }
}

impl<T: Scalar> Sub for Mat4<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        let mut out = self;
        for i in 0..4 {
            for j in 0..4 {
                out.m[i][j] -= o.m[i][j];
            }
        }
        out
    }
}

impl<T: Scalar> Neg for Mat4<T> {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(-T::one())
    }
}

impl<T: Scalar> Mul for Mat4<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let mut out = Self::zero();
        for i in 0..4 {
            for k in 0..4 {
                let a = self.m[i][k];
                if a == T::zero() {
                    continue;
                }
                for j in 0..4 {
                    out.m[i][j] += a * o.m[k][j];
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn j_squares_to_minus_identity() {
        let j = Mat2::<f64>::j();
        assert_eq!(j * j, -Mat2::identity());
        let x = Mat2::new(1.0, 2.0, 3.0, 4.0);
        assert_eq!(j * x, x.j_left());
    }

    #[test]
    fn xjxt_is_det_times_j() {
        let x = Mat2::new(0.3, -1.2, 2.5, 0.7);
        let lhs = x * Mat2::j() * x.transpose();
        let rhs = Mat2::j().scale(x.det());
        assert!((lhs - rhs).max_abs() < 1e-15);
    }

    #[test]
    fn inverse_and_det_agree() {
        let m = Mat4::<f64>::from_rows([
            [2.0, 1.0, 0.0, 0.5],
            [0.0, 1.0, -1.0, 0.0],
            [1.0, 0.0, 3.0, 1.0],
            [0.0, 2.0, 0.0, 1.0],
        ]);
        let inv = m.inverse().unwrap();
        assert!((m * inv - Mat4::identity()).max_abs() < 1e-14);
        assert!((m.det() * inv.det() - 1.0).abs() < 1e-14);
        assert!((m.det() - m.to_nalgebra().determinant()).abs() < 1e-14);
    }

    #[test]
    fn blocks_round_trip() {
        let a = Mat2::new(1.0, 2.0, 3.0, 4.0);
        let b = Mat2::new(5.0, 6.0, 7.0, 8.0);
        let c = Mat2::new(9.0, 10.0, 11.0, 12.0);
        let d = Mat2::new(13.0, 14.0, 15.0, 16.0);
        let m = Mat4::from_blocks(a, b, c, d);
        assert_eq!(m.block(0, 0), a);
        assert_eq!(m.block(0, 1), b);
        assert_eq!(m.block(1, 0), c);
        assert_eq!(m.block(1, 1), d);
        assert_eq!(m.m[1][2], 7.0);
    }

    #[test]
    fn pow_matches_repeated_product() {
        let m = Mat4::from_rows([
            [0.1, 0.2, 0.0, 0.3],
            [0.0, 0.5, -0.1, 0.0],
            [0.2, 0.0, 0.4, 0.1],
            [0.0, 0.3, 0.0, -0.2],
        ]);
        assert!((m.pow(5) - m * m * m * m * m).max_abs() < 1e-15);
        assert_eq!(m.pow(0), Mat4::identity());
    }
}
