//! Named symplectic matrices: decoupled and coupled examples, pure coupling,
//! and the two-mode squeeze in both orderings.

use crate::error::{Error, Result};
use crate::linalg::{Mat2, Mat4};
use crate::scalar::{lit, Scalar};
use crate::symplectic::{
    analytic_c, analytic_s, to_x_order, LieAlgebraElement, Ordering, SymplecticMatrix,
};

/// `exp(J·a)` for symmetric `a`: C(−det a)·1 + S(−det a)·Ja.
fn sp2_block<T: Scalar>(a: Mat2<T>) -> Mat2<T> {
    let lambda = -a.det();
    Mat2::identity().scale(analytic_c(lambda)) + a.j_left().scale(analytic_s(lambda))
}

/// Block-diagonal exponential for `b = 0`.
pub fn m1_decoupled<T: Scalar>(a: Mat2<T>, c: Mat2<T>) -> Result<SymplecticMatrix<T>> {
    let l = LieAlgebraElement::new(a, Mat2::zero(), c)?;
    Ok(SymplecticMatrix::new_unchecked(
        Mat4::from_blocks(sp2_block(l.a()), Mat2::zero(), Mat2::zero(), sp2_block(l.c())),
        Ordering::Y,
    ))
}

/// Exponential for `a = c = diag(a₁₁, a₂₂)`, `b = diag(b₁₁, b₂₂)`.
///
/// Here λ± = −(a₁₁ ∓ b₁₁)(a₂₂ ∓ b₂₂) are labels, not sorted.
pub fn m2_coupled<T: Scalar>(a11: T, a22: T, b11: T, b22: T) -> SymplecticMatrix<T> {
    let lp = -(a11 - b11) * (a22 - b22);
    let lm = -(a11 + b11) * (a22 + b22);
    let (cp, cm) = (analytic_c(lp), analytic_c(lm));
    let (sp, sm) = (analytic_s(lp), analytic_s(lm));
    let h = lit::<T>(0.5);
    let even = (cm + cp) * h;
    let odd = (cm - cp) * h;
    let u = ((a22 + b22) * sm + (a22 - b22) * sp) * h;
    let v = ((a22 + b22) * sm + (b22 - a22) * sp) * h;
    let w = ((b11 - a11) * sp - (a11 + b11) * sm) * h;
    let z = ((a11 - b11) * sp - (a11 + b11) * sm) * h;
    SymplecticMatrix::new_unchecked(
        Mat4::from_rows([
            [even, u, odd, v],
            [w, even, z, odd],
            [odd, v, even, u],
            [z, odd, w, even],
        ]),
        Ordering::Y,
    )
}

/// Exponential for `a = c = 0`: diagonal blocks C(−det b), off-diagonal
/// blocks S(−det b)·Jb and S(−det b)·Jbᵀ.
pub fn m3_pure_coupling<T: Scalar>(b: Mat2<T>) -> SymplecticMatrix<T> {
    let lambda = -b.det();
    let (c, s) = (analytic_c(lambda), analytic_s(lambda));
    let diag = Mat2::identity().scale(c);
    SymplecticMatrix::new_unchecked(
        Mat4::from_blocks(diag, b.j_left().scale(s), b.transpose().j_left().scale(s), diag),
        Ordering::Y,
    )
}

/// Two-mode squeeze parameters, ζ = r·e^{iφ}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqueezeParams<T> {
    pub r: T,
    pub phi: T,
    pub l1: T,
    pub l2: T,
    pub hbar: T,
}

impl<T: Scalar> SqueezeParams<T> {
    pub fn new(r: T, phi: T, l1: T, l2: T, hbar: T) -> Result<Self> {
        let p = Self { r, phi, l1, l2, hbar };
        p.validate()?;
        Ok(p)
    }

    /// Unit lengths and ħ = 1.
    pub fn natural(r: T, phi: T) -> Self {
        Self {
            r,
            phi,
            l1: T::one(),
            l2: T::one(),
            hbar: T::one(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.r, self.phi, self.l1, self.l2, self.hbar]
            .iter()
            .all(|x| x.is_finite());
        if !finite {
            return Err(Error::NonFinite("squeeze parameters"));
        }
        if self.r < T::zero() {
            return Err(Error::InvalidParameter(format!("r must be ≥ 0, got {}", self.r)));
        }
        if !(self.l1 > T::zero() && self.l2 > T::zero() && self.hbar > T::zero()) {
            return Err(Error::InvalidParameter("l1, l2 and hbar must be positive".into()));
        }
        Ok(())
    }

    pub fn zeta(&self) -> (T, T) {
        (self.r * self.phi.cos(), self.r * self.phi.sin())
    }

    fn with_r(&self, r: T) -> Self {
        Self { r, ..*self }
    }
}

/// `b = [[ħζ_y/(l₁l₂), −l₂ζ_x/l₁], [−l₁ζ_x/l₂, −l₁l₂ζ_y/ħ]]`, `a = c = 0`.
pub fn squeeze_generator<T: Scalar>(p: &SqueezeParams<T>) -> LieAlgebraElement<T> {
    let (zx, zy) = p.zeta();
    let (l1, l2, h) = (p.l1, p.l2, p.hbar);
    let b = Mat2::new(h * zy / (l1 * l2), -l2 * zx / l1, -l1 * zx / l2, -l1 * l2 * zy / h);
    let z = T::zero();
    LieAlgebraElement::from_entries(z, z, z, b.m[0][0], b.m[0][1], b.m[1][0], b.m[1][1], z, z, z)
}

/// `M_s(r, φ)` in Y order.
pub fn squeeze_matrix<T: Scalar>(p: &SqueezeParams<T>) -> SymplecticMatrix<T> {
    squeeze_matrix_signed(p)
}

/// Like [`squeeze_matrix`] but also accepts r < 0, which gives the inverse.
fn squeeze_matrix_signed<T: Scalar>(p: &SqueezeParams<T>) -> SymplecticMatrix<T> {
    let (ch, sh) = (p.r.cosh(), p.r.sinh());
    let (cf, sf) = (p.phi.cos(), p.phi.sin());
    let (l1, l2, h) = (p.l1, p.l2, p.hbar);
    let z = T::zero();
    SymplecticMatrix::new_unchecked(
        Mat4::from_rows([
            [ch, z, -sh * cf * l1 / l2, -sh * sf * l1 * l2 / h],
            [z, ch, -sh * sf * h / (l1 * l2), sh * cf * l2 / l1],
            [-sh * cf * l2 / l1, -sh * sf * l1 * l2 / h, ch, z],
            [-sh * sf * h / (l1 * l2), sh * cf * l1 / l2, z, ch],
        ]),
        Ordering::Y,
    )
}

/// `M̃_s(r, φ)` in X order, obtained by conjugating [`squeeze_matrix`] with Γ.
pub fn squeeze_matrix_x<T: Scalar>(p: &SqueezeParams<T>) -> SymplecticMatrix<T> {
    to_x_order(&squeeze_matrix(p)).expect("squeeze_matrix is Y-ordered")
}

/// The X-order squeeze matrix written with 2φ in every angle. It equals `squeeze_matrix_x` at angle 2φ and is kept only to
/// document that convention difference.
pub fn squeeze_matrix_x_double_angle<T: Scalar>(p: &SqueezeParams<T>) -> SymplecticMatrix<T> {
    let two = lit::<T>(2.0);
    let (ch, sh) = (p.r.cosh(), p.r.sinh());
    let (c2, s2) = ((two * p.phi).cos(), (two * p.phi).sin());
    let (l1, l2, h) = (p.l1, p.l2, p.hbar);
    let z = T::zero();
    SymplecticMatrix::new_unchecked(
        Mat4::from_rows([
            [ch, -l1 * sh * c2 / l2, z, -l1 * l2 * sh * s2 / h],
            [-l2 * sh * c2 / l1, ch, -l1 * l2 * sh * s2 / h, z],
            [z, -h * sh * s2 / (l1 * l2), ch, l2 * sh * c2 / l1],
            [-h * sh * s2 / (l1 * l2), z, l1 * sh * c2 / l2, ch],
        ]),
        Ordering::X,
    )
}

/// `M_s(−r, φ)`, the inverse squeeze.
pub fn squeeze_matrix_inverse<T: Scalar>(p: &SqueezeParams<T>) -> SymplecticMatrix<T> {
    squeeze_matrix_signed(&p.with_r(-p.r))
}

/// A phase-space sample on a trajectory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryPoint<T> {
    pub t: T,
    pub q1: T,
    pub p1: T,
    pub q2: T,
    pub p2: T,
}

impl<T: Scalar> TrajectoryPoint<T> {
    pub fn state(&self) -> [T; 4] {
        [self.q1, self.p1, self.q2, self.p2]
    }

    fn from_state(t: T, s: [T; 4]) -> Self {
        Self {
            t,
            q1: s[0],
            p1: s[1],
            q2: s[2],
            p2: s[3],
        }
    }
}

pub const DEFAULT_SAMPLES: usize = 256;

/// Samples the free rotation qⱼ(t) = cos t·qⱼ + sin t·pⱼ,
/// pⱼ(t) = −sin t·qⱼ + cos t·pⱼ on a uniform grid over [0, 2π] (last sample
/// repeats the first) and pairs each sample with its image under `M_s`.
pub fn squeeze_trajectory<T: Scalar>(
    p: &SqueezeParams<T>,
    n_samples: usize,
    initial: [T; 4],
) -> Result<Vec<(TrajectoryPoint<T>, TrajectoryPoint<T>)>> {
    p.validate()?;
    if n_samples < 2 {
        return Err(Error::InvalidParameter(format!("n_samples must be ≥ 2, got {n_samples}")));
    }
    let m = squeeze_matrix(p);
    let [q1, p1, q2, p2] = initial;
    let step = T::TAU() / lit((n_samples - 1) as f64);
    Ok((0..n_samples)
        .map(|k| {
            let t = if k == n_samples - 1 { T::TAU() } else { step * lit(k as f64) };
            let (c, s) = if k == n_samples - 1 { (T::one(), T::zero()) } else { (t.cos(), t.sin()) };
            let x = [c * q1 + s * p1, -s * q1 + c * p1, c * q2 + s * p2, -s * q2 + c * p2];
            let y = m.entries().mul_vec(x);
            (TrajectoryPoint::from_state(t, x), TrajectoryPoint::from_state(t, y))
        })
        .collect())
}

/// ω(u, v) = uᵀ(J⊕J)v in (q₁,p₁,q₂,p₂) order.
pub fn omega_form<T: Scalar>(u: [T; 4], v: [T; 4]) -> T {
    u[0] * v[1] - u[1] * v[0] + u[2] * v[3] - u[3] * v[2]
}

/// Largest |ω(U_k, U_{k+1}) − ω(u_k, u_{k+1})| over consecutive secant
/// tangents u of the input curve and U of the image curve.
pub fn two_form_defect<T: Scalar>(input: &[[T; 4]], output: &[[T; 4]]) -> T {
    let tangents = |c: &[[T; 4]]| -> Vec<[T; 4]> {
        c.windows(2)
            .map(|w| [w[1][0] - w[0][0], w[1][1] - w[0][1], w[1][2] - w[0][2], w[1][3] - w[0][3]])
            .collect()
    };
    let (ti, to) = (tangents(input), tangents(output));
    ti.windows(2)
        .zip(to.windows(2))
        .map(|(a, b)| (omega_form(b[0], b[1]) - omega_form(a[0], a[1])).abs())
        .fold(T::zero(), T::max)
}

/// Ratio of principal semi-axes (major/minor) of a closed planar curve,
/// from the eigenvalues of its sample second-moment matrix.
pub fn principal_axis_ratio<T: Scalar>(xy: &[(T, T)]) -> T {
    let n = lit::<T>(xy.len() as f64);
    let (mx, my) = xy.iter().fold((T::zero(), T::zero()), |(a, b), (x, y)| (a + *x, b + *y));
    let (mx, my) = (mx / n, my / n);
    let (mut sxx, mut syy, mut sxy) = (T::zero(), T::zero(), T::zero());
    for (x, y) in xy {
        let (dx, dy) = (*x - mx, *y - my);
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    let half = lit::<T>(0.5);
    let mean = (sxx + syy) * half;
    let rad = (((sxx - syy) * half).powi(2) + sxy * sxy).sqrt();
    ((mean + rad) / (mean - rad)).sqrt()
}

/// Signed shoelace area of a closed polygon (repeated endpoint allowed).
pub fn shoelace_area<T: Scalar>(xy: &[(T, T)]) -> T {
    let n = xy.len();
    let mut acc = T::zero();
    for k in 0..n {
        let (x0, y0) = xy[k];
        let (x1, y1) = xy[(k + 1) % n];
        acc += x0 * y1 - x1 * y0;
    }
    acc * lit(0.5)
}

/// Collective-mode projection ((q₁+q₂)/√2, (p₁+p₂)/√2).
pub fn collective_projection<T: Scalar>(s: [T; 4]) -> (T, T) {
    let k = T::FRAC_1_SQRT_2();
    ((s[0] + s[2]) * k, (s[1] + s[3]) * k)
}
