//! Minimal 2×2 complex matrix arithmetic.
//!
//! Everything in this crate lives in the two-dimensional coin space, so a
//! fixed-size matrix with hand-written products is both the fastest and the
//! simplest representation. Row/column index 0 is the L chirality, index 1
//! is R.

use num_complex::Complex64;

/// A dense 2×2 complex matrix in (L, R) ordering.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2 {
    pub entries: [[Complex64; 2]; 2],
}

impl Mat2 {
    pub const fn new(entries: [[Complex64; 2]; 2]) -> Self {
        Self { entries }
    }

    pub fn identity() -> Self {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        Self::new([[one, zero], [zero, one]])
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row][col]
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let m = &self.entries;
        Self::new([
            [m[0][0].conj(), m[1][0].conj()],
            [m[0][1].conj(), m[1][1].conj()],
        ])
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let a = &self.entries;
        let b = &rhs.entries;
        Self::new([
            [
                a[0][0] * b[0][0] + a[0][1] * b[1][0],
                a[0][0] * b[0][1] + a[0][1] * b[1][1],
            ],
            [
                a[1][0] * b[0][0] + a[1][1] * b[1][0],
                a[1][0] * b[0][1] + a[1][1] * b[1][1],
            ],
        ])
    }

    pub fn mul_vec(&self, v: [Complex64; 2]) -> [Complex64; 2] {
        let m = &self.entries;
        [
            m[0][0] * v[0] + m[0][1] * v[1],
            m[1][0] * v[0] + m[1][1] * v[1],
        ]
    }

    pub fn scale(&self, z: Complex64) -> Self {
        let m = &self.entries;
        Self::new([[z * m[0][0], z * m[0][1]], [z * m[1][0], z * m[1][1]]])
    }

    pub fn determinant(&self) -> Complex64 {
        let m = &self.entries;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    pub fn trace(&self) -> Complex64 {
        self.entries[0][0] + self.entries[1][1]
    }

    /// t-fold matrix power by repeated multiplication.
    ///
    /// The exponents seen here are walk step counts (hundreds at most), so
    /// plain iteration beats squaring tricks in clarity and matches them in
    /// cost.
    pub fn pow(&self, t: usize) -> Self {
        let mut acc = Self::identity();
        for _ in 0..t {
            acc = self.mul(acc.as_ref());
        }
        acc
    }

    /// Largest entry of |self† · self − I|.
    pub fn unitarity_error(&self) -> f64 {
        let p = self.adjoint().mul(self);
        let mut worst = 0.0f64;
        for r in 0..2 {
            for c in 0..2 {
                let expected = if r == c {
                    Complex64::new(1.0, 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                };
                worst = worst.max((p.entries[r][c] - expected).norm());
            }
        }
        worst
    }

    /// True iff every entry of |self† · self − I| is within `tol`.
    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_error() <= tol
    }

    /// Largest entrywise |a - b|.
    pub fn max_entry_difference(&self, other: &Self) -> f64 {
        let mut worst = 0.0f64;
        for r in 0..2 {
            for c in 0..2 {
                worst = worst.max((self.entries[r][c] - other.entries[r][c]).norm());
            }
        }
        worst
    }
}

impl AsRef<Mat2> for Mat2 {
    fn as_ref(&self) -> &Mat2 {
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn identity_is_unitary() {
        assert!(Mat2::identity().is_unitary(0.0));
        assert_eq!(Mat2::identity().determinant(), c(1.0, 0.0));
    }

    #[test]
    fn perturbed_identity_is_not_unitary() {
        let mut m = Mat2::identity();
        m.entries[0][0] = c(1.1, 0.0);
        assert!(!m.is_unitary(1e-12));
    }

    #[test]
    fn adjoint_conjugates_and_transposes() {
        let m = Mat2::new([[c(1.0, 2.0), c(3.0, -1.0)], [c(0.0, 4.0), c(-2.0, 0.5)]]);
        let a = m.adjoint();
        assert_eq!(a.entry(0, 1), c(0.0, -4.0));
        assert_eq!(a.entry(1, 0), c(3.0, 1.0));
    }

    #[test]
    fn pow_matches_repeated_mul() {
        let phase = Complex64::from_polar(1.0, 0.37);
        let m = Mat2::new([[c(0.0, 0.0), -phase.conj()], [phase, c(0.0, 0.0)]]);
        let p3 = m.pow(3);
        let manual = m.mul(&m.mul(&m));
        assert!(p3.max_entry_difference(&manual) < 1e-15);
        assert!(m.pow(0).max_entry_difference(&Mat2::identity()) == 0.0);
    }
}
