use serde::{Deserialize, Serialize};

use super::algebra::{build_m, d_matrix, omega_y, LieAlgebraElement};
use super::oracle::expm_taylor;
use super::series::series_coeffs;
use crate::error::{Error, Result};
use crate::linalg::{Mat2, Mat4};
use crate::scalar::{lit, to_f64, Scalar};

/// Phase-space coordinatization. `Y` is (q₁,p₁,q₂,p₂), `X` is (q₁,q₂,p₁,p₂).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Ordering {
    Y,
    X,
}

impl Ordering {
    /// The symplectic form: `J⊕J` for Y, `[[0, 1], [−1, 0]]` (2×2 blocks) for X.
    pub fn omega<T: Scalar>(self) -> Mat4<T> {
        match self {
            Ordering::Y => omega_y(),
            Ordering::X => Mat4::from_blocks(
                Mat2::zero(),
                Mat2::identity(),
                -Mat2::identity(),
                Mat2::zero(),
            ),
        }
    }
}

/// Numerical tolerances for group-membership checks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub symplectic: f64,
    pub singular: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            symplectic: 1e-10,
            singular: 1e-12,
        }
    }
}

/// A 4×4 real matrix tagged with its ordering.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymplecticMatrix<T> {
    entries: Mat4<T>,
    ordering: Ordering,
}

impl<T: Scalar> SymplecticMatrix<T> {
    /// Checked constructor using the default tolerance.
    pub fn new(entries: Mat4<T>, ordering: Ordering) -> Result<Self> {
        Self::with_tolerance(entries, ordering, Tolerances::default().symplectic)
    }

    pub fn with_tolerance(entries: Mat4<T>, ordering: Ordering, tol: f64) -> Result<Self> {
        if !entries.is_finite() {
            return Err(Error::NonFinite("symplectic matrix"));
        }
        let m = Self { entries, ordering };
        let (residual, det_error) = (m.symplectic_residual(), m.det_error());
        // Relative to the size of M Ω Mᵀ so large squeezes are not rejected by rounding.
        let scale = to_f64(entries.max_abs()).max(1.0).powi(2);
        if residual > tol * scale || det_error > tol * scale * scale {
            return Err(Error::NotSymplectic { residual, det_error });
        }
        Ok(m)
    }

    /// Wraps without checking; for values produced by the closed forms.
    pub fn new_unchecked(entries: Mat4<T>, ordering: Ordering) -> Self {
        Self { entries, ordering }
    }

    pub fn identity(ordering: Ordering) -> Self {
        Self {
            entries: Mat4::identity(),
            ordering,
        }
    }

    pub fn entries(&self) -> &Mat4<T> {
        &self.entries
    }

    pub fn ordering(&self) -> Ordering {
        self.ordering
    }

    pub fn a(&self) -> Mat2<T> {
        self.entries.block(0, 0)
    }
    pub fn b(&self) -> Mat2<T> {
        self.entries.block(0, 1)
    }
    pub fn c(&self) -> Mat2<T> {
        self.entries.block(1, 0)
    }
    pub fn d(&self) -> Mat2<T> {
        self.entries.block(1, 1)
    }

    /// max |M Ω Mᵀ − Ω|.
    pub fn symplectic_residual(&self) -> f64 {
        let omega = self.ordering.omega::<T>();
        to_f64((self.entries * omega * self.entries.transpose() - omega).max_abs())
    }

    pub fn det_error(&self) -> f64 {
        to_f64((self.entries.det() - T::one()).abs())
    }

    pub fn require(&self, ordering: Ordering) -> Result<()> {
        if self.ordering != ordering {
            return Err(Error::WrongOrdering {
                expected: ordering,
                found: self.ordering,
            });
        }
        Ok(())
    }

    /// Matrix product; both factors must share an ordering.
    pub fn compose(&self, rhs: &Self) -> Result<Self> {
        if self.ordering != rhs.ordering {
            return Err(Error::OrderingMismatch {
                left: self.ordering,
                right: rhs.ordering,
            });
        }
        Ok(Self {
            entries: self.entries * rhs.entries,
            ordering: self.ordering,
        })
    }

    /// `M⁻¹ = −Ω Mᵀ Ω`, exact for symplectic input.
    pub fn inverse(&self) -> Self {
        let omega = self.ordering.omega::<T>();
        Self {
            entries: -(omega * self.entries.transpose() * omega),
            ordering: self.ordering,
        }
    }

    pub fn transpose(&self) -> Self {
        Self {
            entries: self.entries.transpose(),
            ordering: self.ordering,
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        Self {
            entries: self.entries.pow(n),
            ordering: self.ordering,
        }
    }
}

/// The permutation taking (q₁,p₁,q₂,p₂) to (q₁,q₂,p₁,p₂).
pub fn gamma2<T: Scalar>() -> Mat4<T> {
    let mut g = Mat4::zero();
    for (row, col) in [(0, 0), (1, 2), (2, 1), (3, 3)] {
        g.m[row][col] = T::one();
    }
    g
}

/// `M̃ = Γ M Γᵀ`.
pub fn to_x_order<T: Scalar>(m: &SymplecticMatrix<T>) -> Result<SymplecticMatrix<T>> {
    m.require(Ordering::Y)?;
    let g = gamma2::<T>();
    Ok(SymplecticMatrix {
        entries: g * m.entries * g.transpose(),
        ordering: Ordering::X,
    })
}

/// `M = Γᵀ M̃ Γ`.
pub fn to_y_order<T: Scalar>(m: &SymplecticMatrix<T>) -> Result<SymplecticMatrix<T>> {
    m.require(Ordering::X)?;
    let g = gamma2::<T>();
    Ok(SymplecticMatrix {
        entries: g.transpose() * m.entries * g,
        ordering: Ordering::Y,
    })
}

/// How an exponential was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ExpMethod {
    ClosedForm,
    /// λ± complex: the Taylor oracle was used instead.
    OracleFallback,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpResult<T> {
    pub matrix: SymplecticMatrix<T>,
    pub method: ExpMethod,
}

/// Closed-form `exp((J⊕J)L)` in Y order. Fails with
/// `ComplexEigenvalueRegime` when λ± are complex; see [`exp_map`] for the
/// total version.
pub fn exp_sp4<T: Scalar>(l: &LieAlgebraElement<T>) -> Result<SymplecticMatrix<T>> {
    let s = series_coeffs(l)?;
    let j = Mat2::<T>::j();
    let (a, b, c) = (l.a(), l.b(), l.c());
    let bt = b.transpose();
    let (ja, jb, jbt, jc) = (j * a, j * b, j * bt, j * c);
    let (da, db, dc) = (a.det(), b.det(), c.det());
    let id = Mat2::identity();

    let blk_a = id.scale(s.alpha_e) + ja.scale(s.alpha_o - s.beta_o * db) + (jb * jc * jbt).scale(s.beta_o);
    let blk_b = jb.scale(s.gamma_o - s.beta_o * da)
        + (ja * jb + jb * jc).scale(s.beta_e)
        + (ja * jb * jc).scale(s.beta_o);
    let blk_c = jbt.scale(s.alpha_o - s.beta_o * dc)
        + (jbt * ja + jc * jbt).scale(s.beta_e)
        + (jc * jbt * ja).scale(s.beta_o);
    let blk_d = id.scale(s.gamma_e) + jc.scale(s.gamma_o - s.beta_o * db) + (jbt * ja * jb).scale(s.beta_o);

    let m = Mat4::from_blocks(blk_a, blk_b, blk_c, blk_d);
    if !m.is_finite() {
        return Err(Error::NonFinite("closed-form exponential"));
    }
    Ok(SymplecticMatrix::new_unchecked(m, Ordering::Y))
}

/// Total exponential: closed form when λ± are real, Taylor oracle otherwise.
pub fn exp_map<T: Scalar>(l: &LieAlgebraElement<T>) -> Result<ExpResult<T>> {
    match exp_sp4(l) {
        Ok(matrix) => Ok(ExpResult {
            matrix,
            method: ExpMethod::ClosedForm,
        }),
        Err(Error::ComplexEigenvalueRegime { .. }) => Ok(ExpResult {
            matrix: SymplecticMatrix::new_unchecked(expm_taylor(&build_m(l)), Ordering::Y),
            method: ExpMethod::OracleFallback,
        }),
        Err(e) => Err(e),
    }
}

pub fn inverse_exp<T: Scalar>(l: &LieAlgebraElement<T>) -> Result<SymplecticMatrix<T>> {
    exp_sp4(&l.scale(-T::one()))
}

pub fn power_exp<T: Scalar>(l: &LieAlgebraElement<T>, n: i32) -> Result<SymplecticMatrix<T>> {
    exp_sp4(&l.scale(lit(n as f64)))
}

/// Checks `Mᵀ = −Ω M⁻¹ Ω` with `M⁻¹` from Gauss–Jordan elimination.
pub fn transpose_identity_check<T: Scalar>(m: &SymplecticMatrix<T>, tol: f64) -> bool {
    let Some(inv) = m.entries.inverse() else {
        return false;
    };
    let omega = m.ordering.omega::<T>();
    let rhs = -(omega * inv * omega);
    to_f64((m.entries.transpose() - rhs).max_abs()) <= tol * to_f64(m.entries.max_abs()).max(1.0)
}

/// `m²` blockwise; used as a readable cross-check of the power structure.
pub fn m_squared<T: Scalar>(l: &LieAlgebraElement<T>) -> Mat4<T> {
    let (da, db, dc) = (l.a().det(), l.b().det(), l.c().det());
    let jd = d_matrix(l).j_left();
    Mat4::from_blocks(
        Mat2::identity().scale(-(da + db)),
        jd,
        -d_matrix(l).transpose().j_left(),
        Mat2::identity().scale(-(db + dc)),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symplectic::test_support::{arb_lie, arb_real_lie};
    use proptest::prelude::*;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn zero_gives_identity() {
        let m = exp_sp4(&LieAlgebraElement::<f64>::zero()).unwrap();
        assert_eq!(*m.entries(), Mat4::identity());
    }

    #[test]
    fn quarter_rotation_gives_j_plus_j() {
        let q = Mat2::diag(FRAC_PI_2, FRAC_PI_2);
        let l = LieAlgebraElement::new(q, Mat2::zero(), q).unwrap();
        let m = exp_sp4(&l).unwrap();
        assert!((*m.entries() - omega_y()).max_abs() <= 1e-12);
    }

    #[test]
    fn gamma2_examples() {
        let g = gamma2::<f64>();
        assert_eq!(g * g.transpose(), Mat4::identity());
        let id = SymplecticMatrix::<f64>::identity(Ordering::Y);
        assert_eq!(*to_x_order(&id).unwrap().entries(), Mat4::identity());
        assert_eq!(to_x_order(&to_x_order(&id).unwrap()).unwrap_err().code(), "WrongOrdering");
        assert_eq!(to_y_order(&id).unwrap_err().code(), "WrongOrdering");
        // Γ Ω_Y Γᵀ = Ω_X
        assert_eq!(g * Ordering::Y.omega::<f64>() * g.transpose(), Ordering::X.omega());
    }

    #[test]
    fn diagonal_decoupled_in_x_order() {
        let (r1, r2) = (0.3f64, -0.7f64);
        let l = LieAlgebraElement::from_entries(0.0, -r1, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, -r2, 0.0);
        let mx = to_x_order(&exp_sp4(&l).unwrap()).unwrap();
        let want = Mat4::diag([(-r1).exp(), (-r2).exp(), r1.exp(), r2.exp()]);
        assert!((*mx.entries() - want).max_abs() < 1e-15);
    }

    #[test]
    fn compose_rejects_mixed_orderings() {
        let y = SymplecticMatrix::<f64>::identity(Ordering::Y);
        let x = SymplecticMatrix::<f64>::identity(Ordering::X);
        assert_eq!(y.compose(&x).unwrap_err().code(), "OrderingMismatch");
        assert!(y.compose(&y).is_ok());
    }

    #[test]
    fn checked_constructor_rejects_non_symplectic() {
        let mut m = Mat4::<f64>::identity();
        m.m[0][2] = 0.5;
        assert_eq!(SymplecticMatrix::new(m, Ordering::Y).unwrap_err().code(), "NotSymplectic");
    }

    #[test]
    fn complex_regime_falls_back() {
        let l = LieAlgebraElement::from_entries(0.0, -1.0, 0.0, 0.5, 0.0, 1.0, -1.0, 0.0, 0.0, -1.0);
        assert_eq!(exp_sp4(&l).unwrap_err().code(), "ComplexEigenvalueRegime");
        let r = exp_map(&l).unwrap();
        assert_eq!(r.method, ExpMethod::OracleFallback);
        assert!(r.matrix.symplectic_residual() < 1e-12);
    }

    #[test]
    fn f32_closed_form() {
        let l = LieAlgebraElement::<f32>::from_entries(0.2, 0.1, -0.3, 0.4, 0.0, -0.2, 0.1, 0.5, 0.0, 0.2);
        let m = exp_sp4(&l).unwrap();
        let oracle = expm_taylor(&build_m(&l));
        assert!((*m.entries() - oracle).max_abs() < 1e-5);
    }

    proptest! {
        #[test]
        fn closed_form_matches_oracle(l in arb_real_lie(1.0)) {
            let m = exp_sp4(&l).unwrap();
            let oracle = expm_taylor(&build_m(&l));
            prop_assert!((*m.entries() - oracle).max_abs() <= 1e-10);
            prop_assert!(m.symplectic_residual() <= 1e-10);
            prop_assert!(m.det_error() <= 1e-10);
        }

        #[test]
        fn closed_form_matches_oracle_wide(l in arb_real_lie(2.0)) {
            let m = exp_sp4(&l).unwrap();
            let oracle = expm_taylor(&build_m(&l));
            prop_assert!((*m.entries() - oracle).max_abs() <= 1e-10 * oracle.max_abs().max(1.0));
        }

        #[test]
        fn m_squared_blocks(l in arb_lie(1.0)) {
            let m = build_m(&l);
            prop_assert!((m_squared(&l) - m * m).max_abs() <= 1e-14);
        }

        #[test]
        fn group_identities(l in arb_real_lie(1.0)) {
            let m = exp_sp4(&l).unwrap();
            let inv = inverse_exp(&l).unwrap();
            prop_assert!((*inv.compose(&m).unwrap().entries() - Mat4::identity()).max_abs() <= 1e-10);
            let sq = power_exp(&l, 2).unwrap();
            prop_assert!((*sq.entries() - *m.pow(2).entries()).max_abs() <= 1e-10 * sq.entries().max_abs().max(1.0));
            prop_assert!(transpose_identity_check(&m, 1e-10));
            prop_assert!((*m.inverse().entries() - *inv.entries()).max_abs() <= 1e-10);
        }

        #[test]
        fn ordering_round_trip(l in arb_real_lie(1.0)) {
            let m = exp_sp4(&l).unwrap();
            let x = to_x_order(&m).unwrap();
            prop_assert!(x.symplectic_residual() <= 1e-10);
            prop_assert_eq!(to_y_order(&x).unwrap(), m);
        }
    }
}
