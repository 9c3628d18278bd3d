//! Schrödinger-representation side: Weyl amplitudes and covariance
//! matrices of squeezed two-mode vacua, plus the metaplectic kernel.
//!
//! Everything here works in X order, (x₁, x₂, p₁, p₂).

pub mod kernel;

pub use kernel::{
    gauss_hermite, kernel_apply_gaussian, kernel_eval, PrefactorTracker, QuadratureResult,
    DEFAULT_GH_ORDER,
};

use crate::error::{Error, Result};
use crate::linalg::{Mat2, Mat4};
use crate::scalar::{lit, to_f64, Scalar};
use crate::special_forms::SqueezeParams;
use crate::symplectic::{analytic_c, analytic_s, gamma2, Ordering, SymplecticMatrix};

/// Oscillator lengths `lⱼ = √(ħ/mⱼωⱼ)` and ħ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatorConfig<T> {
    pub l: [T; 2],
    pub hbar: T,
}

impl<T: Scalar> OscillatorConfig<T> {
    pub fn new(l1: T, l2: T, hbar: T) -> Result<Self> {
        let c = Self { l: [l1, l2], hbar };
        c.validate()?;
        Ok(c)
    }

    pub fn natural() -> Self {
        Self {
            l: [T::one(), T::one()],
            hbar: T::one(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let [l1, l2] = self.l;
        if !(l1.is_finite() && l2.is_finite() && self.hbar.is_finite()) {
            return Err(Error::NonFinite("oscillator config"));
        }
        if !(l1 > T::zero() && l2 > T::zero() && self.hbar > T::zero()) {
            return Err(Error::InvalidParameter("l1, l2 and hbar must be positive".into()));
        }
        Ok(())
    }

    /// diag(l₁², l₂², ħ²/l₁², ħ²/l₂²): twice the vacuum covariance.
    fn vacuum_diag(&self) -> [T; 4] {
        let [l1, l2] = self.l;
        let h2 = self.hbar * self.hbar;
        [l1 * l1, l2 * l2, h2 / (l1 * l1), h2 / (l2 * l2)]
    }
}

impl<T: Scalar> From<&SqueezeParams<T>> for OscillatorConfig<T> {
    fn from(p: &SqueezeParams<T>) -> Self {
        Self {
            l: [p.l1, p.l2],
            hbar: p.hbar,
        }
    }
}

/// Label (a⃗, b⃗) of a Weyl generator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeylLabel<T> {
    pub a: [T; 2],
    pub b: [T; 2],
}

impl<T: Scalar> WeylLabel<T> {
    pub fn new(a: [T; 2], b: [T; 2]) -> Result<Self> {
        if a.iter().chain(b.iter()).all(|x| x.is_finite()) {
            Ok(Self { a, b })
        } else {
            Err(Error::NonFinite("Weyl label"))
        }
    }

    pub fn zero() -> Self {
        Self {
            a: [T::zero(); 2],
            b: [T::zero(); 2],
        }
    }

    pub fn from_vec(w: [T; 4]) -> Self {
        Self {
            a: [w[0], w[1]],
            b: [w[2], w[3]],
        }
    }

    pub fn to_vec(&self) -> [T; 4] {
        [self.a[0], self.a[1], self.b[0], self.b[1]]
    }
}

/// Second moments of a two-mode state, X order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CovarianceMatrix<T> {
    entries: Mat4<T>,
    config: OscillatorConfig<T>,
}

impl<T: Scalar> CovarianceMatrix<T> {
    /// Checks symmetry and positive definiteness. (2/ħ)V being symplectic
    /// only holds for pure states, so it is reported, not enforced.
    pub fn new(entries: Mat4<T>, config: OscillatorConfig<T>) -> Result<Self> {
        config.validate()?;
        if !entries.is_finite() {
            return Err(Error::NonFinite("covariance matrix"));
        }
        let tol = lit::<T>(1e-10) * entries.max_abs().max(T::one());
        if !entries.is_symmetric(tol) {
            return Err(Error::InvalidParameter("covariance matrix is not symmetric".into()));
        }
        if cholesky4(&entries).is_none() {
            return Err(Error::InvalidParameter("covariance matrix is not positive definite".into()));
        }
        Ok(Self { entries, config })
    }

    pub(crate) fn new_unchecked(entries: Mat4<T>, config: OscillatorConfig<T>) -> Self {
        Self { entries, config }
    }

    pub fn entries(&self) -> &Mat4<T> {
        &self.entries
    }

    pub fn config(&self) -> &OscillatorConfig<T> {
        &self.config
    }

    /// `‖S Ω Sᵀ − Ω‖_max` for `S = (2/ħ)V`, X-order Ω.
    pub fn symplectic_residual(&self) -> f64 {
        let s = self.entries.scale(lit::<T>(2.0) / self.config.hbar);
        let omega = Ordering::X.omega::<T>();
        to_f64((s * omega * s.transpose() - omega).max_abs())
    }

    pub fn is_positive_definite(&self) -> bool {
        cholesky4(&self.entries).is_some()
    }

    /// Symplectic eigenvalues ν₋ ≤ ν₊ of (2/ħ)V; both are 1 for a pure
    /// Gaussian state.
    pub fn williamson_eigenvalues(&self) -> [T; 2] {
        let g = gamma2::<T>();
        let y = g.transpose() * self.entries.scale(lit::<T>(2.0) / self.config.hbar) * g;
        let (a, c, b) = (y.block(0, 0), y.block(0, 1), y.block(1, 1));
        let delta = a.det() + b.det() + lit::<T>(2.0) * c.det();
        let disc = (delta * delta - lit::<T>(4.0) * y.det()).max(T::zero()).sqrt();
        let half = lit::<T>(0.5);
        let hi = (delta + disc) * half;
        let lo = (delta - disc) * half;
        [lo.max(T::zero()).sqrt(), hi.max(T::zero()).sqrt()]
    }

    /// Δxⱼ·Δpⱼ for j = 1, 2.
    pub fn heisenberg_products(&self) -> [T; 2] {
        let d = dispersions(self);
        [d[0] * d[2], d[1] * d[3]]
    }
}

/// Lower Cholesky factor of a symmetric 4×4 matrix, `None` unless positive definite.
pub(crate) fn cholesky4<T: Scalar>(m: &Mat4<T>) -> Option<Mat4<T>> {
    let mut l = Mat4::zero();
    for i in 0..4 {
        for j in 0..=i {
            let mut s = m.m[i][j];
            for k in 0..j {
                s -= l.m[i][k] * l.m[j][k];
            }
            if i == j {
                if !(s > T::zero()) {
                    return None;
                }
                l.m[i][i] = s.sqrt();
            } else {
                l.m[i][j] = s / l.m[j][j];
            }
        }
    }
    Some(l)
}

/// Averages with the transpose; M D Mᵀ is symmetric only up to the order
/// of floating-point products.
fn symmetrize<T: Scalar>(m: Mat4<T>) -> Mat4<T> {
    (m + m.transpose()).scale(lit(0.5))
}

fn require_x<T: Scalar>(m: &SymplecticMatrix<T>) -> Result<()> {
    m.require(Ordering::X)
}

/// `Λ = M̃ diag(L²/ħ², L⁻²) M̃ᵀ`.
pub fn lambda_matrix<T: Scalar>(m: &SymplecticMatrix<T>, config: &OscillatorConfig<T>) -> Result<Mat4<T>> {
    require_x(m)?;
    let h2 = config.hbar * config.hbar;
    let d = config.vacuum_diag().map(|x| x / h2);
    let e = *m.entries();
    Ok(symmetrize(e * Mat4::diag(d) * e.transpose()))
}

/// `⟨W(a⃗, b⃗)⟩ = exp(−¼ wᵀΛw)` in the state `Ĉ_M̃|0⟩`.
pub fn weyl_amplitude<T: Scalar>(
    m: &SymplecticMatrix<T>,
    config: &OscillatorConfig<T>,
    w: &WeylLabel<T>,
) -> Result<T> {
    let lambda = lambda_matrix(m, config)?;
    let v = w.to_vec();
    Ok((-lit::<T>(0.25) * lambda.bilinear(v, v)).exp())
}

/// `V = ½ M̃ diag(L², ħ²L⁻²) M̃ᵀ`.
pub fn covariance<T: Scalar>(m: &SymplecticMatrix<T>, config: &OscillatorConfig<T>) -> Result<CovarianceMatrix<T>> {
    require_x(m)?;
    config.validate()?;
    let e = *m.entries();
    let v = symmetrize((e * Mat4::diag(config.vacuum_diag()) * e.transpose()).scale(lit(0.5)));
    Ok(CovarianceMatrix::new_unchecked(v, *config))
}

/// Hessian of [`weyl_amplitude`] at w = 0 by central differences with step
/// `h`, Richardson-extrapolated once against step h/2, scaled by −ħ².
pub fn weyl_hessian_fd<T: Scalar>(
    m: &SymplecticMatrix<T>,
    config: &OscillatorConfig<T>,
    h: T,
) -> Result<Mat4<T>> {
    let lambda = lambda_matrix(m, config)?;
    let f = |w: [T; 4]| (-lit::<T>(0.25) * lambda.bilinear(w, w)).exp();
    let shifted = |i: usize, si: T, j: usize, sj: T| {
        let mut w = [T::zero(); 4];
        w[i] += si;
        w[j] += sj;
        f(w)
    };
    let second = |i: usize, j: usize, h: T| -> T {
        if i == j {
            (shifted(i, h, i, T::zero()) - lit::<T>(2.0) * f([T::zero(); 4]) + shifted(i, -h, i, T::zero()))
                / (h * h)
        } else {
            (shifted(i, h, j, h) - shifted(i, h, j, -h) - shifted(i, -h, j, h) + shifted(i, -h, j, -h))
                / (lit::<T>(4.0) * h * h)
        }
    };
    let h2 = config.hbar * config.hbar;
    let mut out = Mat4::zero();
    for i in 0..4 {
        for j in 0..4 {
            let coarse = second(i, j, h);
            let fine = second(i, j, h * lit(0.5));
            let rich = (lit::<T>(4.0) * fine - coarse) / lit::<T>(3.0);
            out.m[i][j] = -h2 * rich;
        }
    }
    Ok(out)
}

/// Covariance of `Ĉ_M̃₁|0⟩` for the decoupled generator (b = 0), written
/// entry by entry in terms of C(−det a), S(−det a) and likewise for c.
/// Real for either sign of det a.
#[allow(clippy::too_many_arguments)]
pub fn covariance_decoupled<T: Scalar>(
    a11: T,
    a12: T,
    a22: T,
    c11: T,
    c12: T,
    c22: T,
    config: &OscillatorConfig<T>,
) -> Result<CovarianceMatrix<T>> {
    config.validate()?;
    if ![a11, a12, a22, c11, c12, c22].iter().all(|x| x.is_finite()) {
        return Err(Error::NonFinite("decoupled generator"));
    }
    let half = lit::<T>(0.5);
    let two = lit::<T>(2.0);
    let h2 = config.hbar * config.hbar;
    // (V_qq, V_qp, V_pp) for one oscillator.
    let mode = |g11: T, g12: T, g22: T, l: T| -> (T, T, T) {
        let lambda = -(g11 * g22 - g12 * g12);
        let (ch, s) = (analytic_c(lambda), analytic_s(lambda));
        let l2 = l * l;
        let k = h2 / l2;
        let qq = half * (l2 * ch * ch + two * g12 * l2 * ch * s + s * s * (g12 * g12 * l2 + g22 * g22 * k));
        let qp = half * (ch * s * (g22 * k - g11 * l2) - s * s * g12 * (g11 * l2 + g22 * k));
        let pp = half * (k * ch * ch - two * g12 * k * ch * s + s * s * (g11 * g11 * l2 + g12 * g12 * k));
        (qq, qp, pp)
    };
    let (v11, v13, v33) = mode(a11, a12, a22, config.l[0]);
    let (v22, v24, v44) = mode(c11, c12, c22, config.l[1]);
    let z = T::zero();
    let v = Mat4::from_rows([
        [v11, z, v13, z],
        [z, v22, z, v24],
        [v13, z, v33, z],
        [z, v24, z, v44],
    ]);
    Ok(CovarianceMatrix::new_unchecked(v, *config))
}

/// (Δx₁, Δx₂, Δp₁, Δp₂). The states built here have vanishing means, so
/// these are square roots of the diagonal.
pub fn dispersions<T: Scalar>(v: &CovarianceMatrix<T>) -> [T; 4] {
    let e = v.entries();
    [0, 1, 2, 3].map(|i| e.m[i][i].max(T::zero()).sqrt())
}

/// Second moments of sum and difference quadratures.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BipartiteMoments<T> {
    /// ⟨(x₁ + x₂)²⟩
    pub x_plus: T,
    /// ⟨(x₁ − x₂)²⟩
    pub x_minus: T,
    pub p_plus: T,
    pub p_minus: T,
}

impl<T: Scalar> BipartiteMoments<T> {
    /// Δx₁² + Δx₂², the half sum of the two position moments.
    pub fn x_dispersion_sum(&self) -> T {
        (self.x_plus + self.x_minus) * lit(0.5)
    }
}

/// Closed-form bipartite moments of the two-mode squeezed vacuum
/// `Ĉ_M̃ₛ(r,φ)|0⟩`, in the angle convention of [`crate::special_forms::squeeze_matrix_x`].
pub fn bipartite_moments<T: Scalar>(p: &SqueezeParams<T>) -> Result<BipartiteMoments<T>> {
    p.validate()?;
    let two_r = lit::<T>(2.0) * p.r;
    let (ch, sh) = (two_r.cosh(), two_r.sinh());
    let cf = p.phi.cos();
    let (l1, l2, h) = (p.l1, p.l2, p.hbar);
    let half = lit::<T>(0.5);
    let xs = (l1 * l1 + l2 * l2) * ch * half;
    let xc = l1 * l2 * sh * cf;
    let h2 = h * h;
    let ps = h2 * ch * (T::one() / (l1 * l1) + T::one() / (l2 * l2)) * half;
    let pc = h2 * sh * cf / (l1 * l2);
    Ok(BipartiteMoments {
        x_plus: xs - xc,
        x_minus: xs + xc,
        p_plus: ps + pc,
        p_minus: ps - pc,
    })
}

/// Same quantities read off a covariance matrix.
pub fn bipartite_from_covariance<T: Scalar>(v: &CovarianceMatrix<T>) -> BipartiteMoments<T> {
    let e = v.entries();
    let two = lit::<T>(2.0);
    let xs = e.m[0][0] + e.m[1][1];
    let ps = e.m[2][2] + e.m[3][3];
    BipartiteMoments {
        x_plus: xs + two * e.m[0][1],
        x_minus: xs - two * e.m[0][1],
        p_plus: ps + two * e.m[2][3],
        p_minus: ps - two * e.m[2][3],
    }
}

/// Labels of `Ĉ W(a⃗, b⃗) Ĉ⁻¹`: a⃗ ↦ D̃a⃗ − C̃b⃗, b⃗ ↦ −B̃a⃗ + Ãb⃗.
/// As a matrix on (a⃗, b⃗) this is M̃⁻ᵀ.
pub fn weyl_conjugation_labels<T: Scalar>(m: &SymplecticMatrix<T>, w: &WeylLabel<T>) -> Result<WeylLabel<T>> {
    require_x(m)?;
    let (a, b, c, d) = (m.a(), m.b(), m.c(), m.d());
    let add = |u: [T; 2], v: [T; 2]| [u[0] + v[0], u[1] + v[1]];
    let neg = |u: [T; 2]| [-u[0], -u[1]];
    Ok(WeylLabel {
        a: add(d.mul_vec(w.a), neg(c.mul_vec(w.b))),
        b: add(neg(b.mul_vec(w.a)), a.mul_vec(w.b)),
    })
}

/// Symmetric part of a 2×2 matrix, used where symplecticity guarantees
/// symmetry up to rounding.
pub(crate) fn sym2<T: Scalar>(m: Mat2<T>) -> Mat2<T> {
    m.symmetrized()
}
