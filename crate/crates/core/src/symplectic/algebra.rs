use crate::error::{Error, Result};
use crate::linalg::{Mat2, Mat4};
use crate::scalar::{lit, to_f64, Scalar};

/// Generator `L = [[a, b], [bᵀ, c]]` with `a`, `c` symmetric.
///
/// The algebra element itself is `m = (J⊕J)·L` in the (q₁,p₁,q₂,p₂) ordering.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LieAlgebraElement<T> {
    a: Mat2<T>,
    b: Mat2<T>,
    c: Mat2<T>,
}

impl<T: Scalar> LieAlgebraElement<T> {
    /// Validates finiteness and symmetry of `a`, `c`. Asymmetry at rounding
    /// level is averaged away; anything larger is rejected.
    pub fn new(a: Mat2<T>, b: Mat2<T>, c: Mat2<T>) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && c.is_finite()) {
            return Err(Error::NonFinite("Lie algebra element"));
        }
        for (name, blk) in [("a", &a), ("c", &c)] {
            let tol = lit::<T>(64.0) * T::epsilon() * blk.max_abs().max(T::one());
            if blk.asymmetry() > tol {
                return Err(Error::NotSymmetric {
                    block: name,
                    asymmetry: to_f64(blk.asymmetry()),
                });
            }
        }
        Ok(Self {
            a: a.symmetrized(),
            b,
            c: c.symmetrized(),
        })
    }

    /// Builds from the ten independent entries, so symmetry holds by construction.
    #[allow(clippy::too_many_arguments)]
    pub fn from_entries(
        a11: T,
        a12: T,
        a22: T,
        b11: T,
        b12: T,
        b21: T,
        b22: T,
        c11: T,
        c12: T,
        c22: T,
    ) -> Self {
        Self {
            a: Mat2::new(a11, a12, a12, a22),
            b: Mat2::new(b11, b12, b21, b22),
            c: Mat2::new(c11, c12, c12, c22),
        }
    }

    pub fn zero() -> Self {
        Self {
            a: Mat2::zero(),
            b: Mat2::zero(),
            c: Mat2::zero(),
        }
    }

    pub fn a(&self) -> Mat2<T> {
        self.a
    }
    pub fn b(&self) -> Mat2<T> {
        self.b
    }
    pub fn c(&self) -> Mat2<T> {
        self.c
    }

    pub fn scale(&self, s: T) -> Self {
        Self {
            a: self.a.scale(s),
            b: self.b.scale(s),
            c: self.c.scale(s),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        Self {
            a: self.a + o.a,
            b: self.b + o.b,
            c: self.c + o.c,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(-T::one()))
    }

    pub fn max_abs(&self) -> T {
        self.a.max_abs().max(self.b.max_abs()).max(self.c.max_abs())
    }

    /// The symmetric 4×4 matrix `L`.
    pub fn l_matrix(&self) -> Mat4<T> {
        Mat4::from_blocks(self.a, self.b, self.b.transpose(), self.c)
    }

    /// Recovers the generator from `m = (J⊕J)L`, i.e. `L = −(J⊕J)m`.
    pub fn from_algebra_matrix(m: &Mat4<T>) -> Result<Self> {
        let l = -(omega_y::<T>() * *m);
        Self::new(l.block(0, 0), l.block(0, 1), l.block(1, 1))
    }
}

/// `J⊕J`, the symplectic form in (q₁,p₁,q₂,p₂) order.
pub fn omega_y<T: Scalar>() -> Mat4<T> {
    Mat4::from_blocks(Mat2::j(), Mat2::zero(), Mat2::zero(), Mat2::j())
}

/// `m = (J⊕J)L`.
pub fn build_m<T: Scalar>(l: &LieAlgebraElement<T>) -> Mat4<T> {
    let (a, b, c) = (l.a, l.b, l.c);
    Mat4::from_blocks(a.j_left(), b.j_left(), b.transpose().j_left(), c.j_left())
}

/// `d = aJb + bJc`.
pub fn d_matrix<T: Scalar>(l: &LieAlgebraElement<T>) -> Mat2<T> {
    let j = Mat2::j();
    l.a * j * l.b + l.b * j * l.c
}

/// Lie bracket written blockwise; `(J⊕J)·bracket(L₁,L₂)` is the commutator
/// of the two algebra matrices.
pub fn bracket<T: Scalar>(l1: &LieAlgebraElement<T>, l2: &LieAlgebraElement<T>) -> LieAlgebraElement<T> {
    let j = Mat2::j();
    let (a1, b1, c1) = (l1.a, l1.b, l1.c);
    let (a2, b2, c2) = (l2.a, l2.b, l2.c);
    let (b1t, b2t) = (b1.transpose(), b2.transpose());
    let a3 = a1 * j * a2 + b1 * j * b2t - a2 * j * a1 - b2 * j * b1t;
    let b3 = a1 * j * b2 + b1 * j * c2 - a2 * j * b1 - b2 * j * c1;
    let c3 = c1 * j * c2 + b1t * j * b2 - c2 * j * c1 - b2t * j * b1;
    LieAlgebraElement {
        a: a3.symmetrized(),
        b: b3,
        c: c3.symmetrized(),
    }
}

/// Coefficients of the quadratic operator `−(i/ħ)[a₁₁q₁²/2 + a₁₂(q₁p₁+p₁q₁)/2 + … ]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolynomialCoefficients<T> {
    pub a11: T,
    pub a12: T,
    pub a22: T,
    pub b11: T,
    pub b12: T,
    pub b21: T,
    pub b22: T,
    pub c11: T,
    pub c12: T,
    pub c22: T,
    pub hbar: T,
}

/// Transcribes `L` into operator-polynomial coefficients.
pub fn iota<T: Scalar>(l: &LieAlgebraElement<T>, hbar: T) -> Result<PolynomialCoefficients<T>> {
    if !(hbar > T::zero()) || !hbar.is_finite() {
        return Err(Error::InvalidParameter(format!("hbar must be positive, got {hbar}")));
    }
    let (a, b, c) = (l.a.m, l.b.m, l.c.m);
    Ok(PolynomialCoefficients {
        a11: a[0][0],
        a12: a[0][1],
        a22: a[1][1],
        b11: b[0][0],
        b12: b[0][1],
        b21: b[1][0],
        b22: b[1][1],
        c11: c[0][0],
        c12: c[0][1],
        c22: c[1][1],
        hbar,
    })
}

pub fn iota_inv<T: Scalar>(p: &PolynomialCoefficients<T>) -> LieAlgebraElement<T> {
    LieAlgebraElement::from_entries(
        p.a11, p.a12, p.a22, p.b11, p.b12, p.b21, p.b22, p.c11, p.c12, p.c22,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symplectic::test_support::arb_lie;
    use proptest::prelude::*;

    fn commutator(x: Mat4<f64>, y: Mat4<f64>) -> Mat4<f64> {
        x * y - y * x
    }

    #[test]
    fn build_m_examples() {
        assert_eq!(build_m(&LieAlgebraElement::<f64>::zero()), Mat4::zero());
        let l = LieAlgebraElement::new(Mat2::identity(), Mat2::zero(), Mat2::zero()).unwrap();
        assert_eq!(build_m(&l).block(0, 0), Mat2::new(0.0, 1.0, -1.0, 0.0));
    }

    #[test]
    fn rejects_asymmetric_and_nonfinite() {
        let bad = Mat2::new(1.0, 0.5, 0.4, 1.0);
        let err = LieAlgebraElement::new(bad, Mat2::zero(), Mat2::zero()).unwrap_err();
        assert_eq!(err.code(), "NotSymmetric");
        let nan = Mat2::new(f64::NAN, 0.0, 0.0, 0.0);
        assert_eq!(
            LieAlgebraElement::new(Mat2::zero(), nan, Mat2::zero()).unwrap_err().code(),
            "NonFinite"
        );
    }

    #[test]
    fn d_vanishes_when_b_or_ac_vanish() {
        let a = Mat2::new(0.3, 0.1, 0.1, -0.4);
        let b = Mat2::new(0.2, -0.7, 0.5, 0.9);
        let l = LieAlgebraElement::new(a, Mat2::zero(), a).unwrap();
        assert_eq!(d_matrix(&l), Mat2::zero());
        let l = LieAlgebraElement::new(Mat2::zero(), b, Mat2::zero()).unwrap();
        assert_eq!(d_matrix(&l), Mat2::zero());
    }

    #[test]
    fn iota_transcribes_squeeze_b_block() {
        let l = LieAlgebraElement::new(Mat2::zero(), Mat2::new(0.0, -1.0, -1.0, 0.0), Mat2::zero()).unwrap();
        let p = iota(&l, 1.0).unwrap();
        assert_eq!((p.b11, p.b12, p.b21, p.b22), (0.0, -1.0, -1.0, 0.0));
        assert_eq!(p.a11 + p.a12 + p.a22 + p.c11 + p.c12 + p.c22, 0.0);
        assert!(iota(&l, 0.0).is_err());
    }

    proptest! {
        #[test]
        fn build_m_matches_block_product(l in arb_lie(1.0)) {
            let direct = omega_y::<f64>() * l.l_matrix();
            prop_assert!((build_m(&l) - direct).max_abs() == 0.0);
            prop_assert!(build_m(&l).trace().abs() < 1e-15);
        }

        #[test]
        fn d_matches_direct(l in arb_lie(1.0)) {
            let j = Mat2::j();
            let d = l.a() * j * l.b() + l.b() * j * l.c();
            prop_assert!((d_matrix(&l) - d).max_abs() < 1e-15);
        }

        #[test]
        fn bracket_is_commutator(l1 in arb_lie(1.0), l2 in arb_lie(1.0)) {
            let lhs = build_m(&bracket(&l1, &l2));
            let rhs = commutator(build_m(&l1), build_m(&l2));
            prop_assert!((lhs - rhs).max_abs() <= 1e-12);
            let anti = bracket(&l1, &l2).add(&bracket(&l2, &l1));
            prop_assert!(anti.max_abs() <= 1e-15);
            prop_assert!(bracket(&l1, &l1).max_abs() <= 1e-15);
        }

        #[test]
        fn jacobi(l1 in arb_lie(1.0), l2 in arb_lie(1.0), l3 in arb_lie(1.0)) {
            let s = bracket(&l1, &bracket(&l2, &l3))
                .add(&bracket(&l2, &bracket(&l3, &l1)))
                .add(&bracket(&l3, &bracket(&l1, &l2)));
            prop_assert!(s.max_abs() <= 1e-12);
        }

        #[test]
        fn iota_round_trip(l in arb_lie(3.0), hbar in 0.1f64..5.0) {
            prop_assert_eq!(iota_inv(&iota(&l, hbar).unwrap()), l);
        }

        #[test]
        fn from_algebra_matrix_inverts_build_m(l in arb_lie(2.0)) {
            let back = LieAlgebraElement::from_algebra_matrix(&build_m(&l)).unwrap();
            prop_assert_eq!(back, l);
        }
    }
}
