//! The metaplectic integral kernel and a quadrature check of it on the vacuum.

use num_complex::Complex;

use super::{cholesky4, covariance, sym2, CovarianceMatrix, OscillatorConfig};
use crate::error::{Error, Result};
use crate::linalg::{Mat2, Mat4};
use crate::scalar::{lit, to_f64, Scalar};
use crate::symplectic::{Ordering, SymplecticMatrix, Tolerances};

/// Gauss–Hermite order per axis used when none is given.
pub const DEFAULT_GH_ORDER: usize = 64;

/// Nodes and weights for ∫ f(y) e^{−y²/2} dy. Computed in f64 by Newton
/// iteration on the orthonormal Hermite recurrence.
pub fn gauss_hermite(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1, "Gauss–Hermite order must be positive");
    let pim4 = std::f64::consts::PI.powf(-0.25);
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let m = n.div_ceil(2);
    let nf = n as f64;
    let mut z = 0.0f64;
    for i in 0..m {
        z = match i {
            0 => (2.0 * nf + 1.0).sqrt() - 1.85575 * (2.0 * nf + 1.0).powf(-1.0 / 6.0),
            1 => z - 1.14 * nf.powf(0.426) / z,
            2 => 1.86 * z - 0.86 * x[0],
            3 => 1.91 * z - 0.91 * x[1],
            _ => 2.0 * z - x[i - 2],
        };
        let mut pp = 0.0;
        for _ in 0..100 {
            let mut p1 = pim4;
            let mut p2 = 0.0;
            for j in 1..=n {
                let p3 = p2;
                p2 = p1;
                let jf = j as f64;
                p1 = z * (2.0 / jf).sqrt() * p2 - ((jf - 1.0) / jf).sqrt() * p3;
            }
            pp = (2.0 * nf).sqrt() * p2;
            let z1 = z;
            z = z1 - p1 / pp;
            if (z - z1).abs() <= 1e-15 * z.abs().max(1.0) {
                break;
            }
        }
        x[i] = z;
        x[n - 1 - i] = -z;
        w[i] = 2.0 / (pp * pp);
        w[n - 1 - i] = w[i];
    }
    // weight e^{−x²} → e^{−y²/2}: y = √2 x
    let s = std::f64::consts::SQRT_2;
    let mut nodes: Vec<(f64, f64)> = x.iter().zip(&w).map(|(&xi, &wi)| (xi * s, wi * s)).collect();
    nodes.sort_by(|a, b| a.0.total_cmp(&b.0));
    nodes.into_iter().unzip()
}

/// Picks the sign of a square root so that successive values along a
/// parameter path vary continuously.
#[derive(Debug, Clone, Copy, Default)]
pub struct PrefactorTracker<T> {
    last: Option<Complex<T>>,
}

impl<T: Scalar> PrefactorTracker<T> {
    pub fn new() -> Self {
        Self { last: None }
    }

    /// √z on the principal branch for the first call, then whichever of
    /// ±√z is closer to the previous value.
    pub fn sqrt(&mut self, z: Complex<T>) -> Complex<T> {
        let mut s = z.sqrt();
        if let Some(prev) = self.last {
            if (s - prev).norm_sqr() > (s + prev).norm_sqr() {
                s = -s;
            }
        }
        self.last = Some(s);
        s
    }
}

/// Pieces of the kernel that do not depend on the arguments.
struct KernelParts<T> {
    /// sym(D̃B̃⁻¹)
    db: Mat2<T>,
    b_inv: Mat2<T>,
    /// sym(B̃⁻¹Ã)
    ba: Mat2<T>,
    /// (2πiħ)² det B̃
    radicand: Complex<T>,
}

fn kernel_parts<T: Scalar>(m: &SymplecticMatrix<T>, hbar: T) -> Result<KernelParts<T>> {
    m.require(Ordering::X)?;
    if !(hbar > T::zero()) {
        return Err(Error::InvalidParameter("hbar must be positive".into()));
    }
    let (a, b, d) = (m.a(), m.b(), m.d());
    let det = b.det();
    if to_f64(det.abs()) <= Tolerances::default().singular {
        return Err(Error::SingularB { det: to_f64(det) });
    }
    let b_inv = b.inverse().ok_or(Error::SingularB { det: to_f64(det) })?;
    let four_pi2_h2 = lit::<T>(4.0) * T::PI() * T::PI() * hbar * hbar;
    Ok(KernelParts {
        db: sym2(d * b_inv),
        b_inv,
        ba: sym2(b_inv * a),
        radicand: Complex::new(-four_pi2_h2 * det, T::zero()),
    })
}

fn dot<T: Scalar>(u: [T; 2], v: [T; 2]) -> T {
    u[0] * v[0] + u[1] * v[1]
}

/// `C(x, x′) = exp{(i/2ħ)[xᵀD̃B̃⁻¹x − 2x′ᵀB̃⁻¹x + x′ᵀB̃⁻¹Ãx′]} / √((2πiħ)² det B̃)`.
///
/// Pass a tracker to follow the prefactor sign along a path; without one
/// the principal branch is used.
pub fn kernel_eval<T: Scalar>(
    m: &SymplecticMatrix<T>,
    x: [T; 2],
    x_prime: [T; 2],
    config: &OscillatorConfig<T>,
    tracker: Option<&mut PrefactorTracker<T>>,
) -> Result<Complex<T>> {
    config.validate()?;
    let k = kernel_parts(m, config.hbar)?;
    let quad = dot(x, k.db.mul_vec(x)) - lit::<T>(2.0) * dot(x_prime, k.b_inv.mul_vec(x))
        + dot(x_prime, k.ba.mul_vec(x_prime));
    let phase = Complex::new(T::zero(), quad / (lit::<T>(2.0) * config.hbar)).exp();
    let root = match tracker {
        Some(t) => t.sqrt(k.radicand),
        None => k.radicand.sqrt(),
    };
    Ok(phase / root)
}

/// Moments of `Ĉ_M̃ ψ₀` obtained by quadrature.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureResult<T> {
    /// Centered second moments, X order.
    pub covariance: CovarianceMatrix<T>,
    /// ⟨x₁⟩, ⟨x₂⟩, ⟨p₁⟩, ⟨p₂⟩
    pub means: [T; 4],
    /// ‖Ĉψ₀‖²
    pub norm: T,
    pub order: usize,
    /// Largest moment change between `order` and `2·order`.
    pub change: T,
}

type C<T> = Complex<T>;

/// Value and gradient of ψ = Ĉψ₀ at one point.
struct Sample<T> {
    psi: C<T>,
    grad: [C<T>; 2],
}

struct Propagator<T> {
    k: KernelParts<T>,
    hbar: T,
    /// Complex Cholesky factor of P = diag(1/l²) − (i/ħ)·sym(B̃⁻¹Ã), P = LLᵀ.
    l11: C<T>,
    l21: C<T>,
    l22: C<T>,
    /// (πl₁²)^{−1/4}(πl₂²)^{−1/4} / √((2πiħ)² det B̃) / (L₁₁L₂₂)
    pref: C<T>,
    nodes: Vec<T>,
    weights: Vec<T>,
}

impl<T: Scalar> Propagator<T> {
    fn new(m: &SymplecticMatrix<T>, config: &OscillatorConfig<T>, order: usize) -> Result<Self> {
        let k = kernel_parts(m, config.hbar)?;
        let h = config.hbar;
        let [l1, l2] = config.l;
        let p = |i: usize, j: usize, diag: T| C::new(diag, -k.ba.m[i][j] / h);
        let (p11, p21, p22) = (p(0, 0, T::one() / (l1 * l1)), p(1, 0, T::zero()), p(1, 1, T::one() / (l2 * l2)));
        // Re P is positive definite, so every principal root here lies on
        // the branch continuous with the real case.
        let l11 = p11.sqrt();
        let l21 = p21 / l11;
        let l22 = (p22 - l21 * l21).sqrt();
        let vac = (T::PI() * l1 * l1 * T::PI() * l2 * l2).powf(lit(-0.25));
        let pref = C::new(vac, T::zero()) / k.radicand.sqrt() / (l11 * l22);
        let (nodes, weights) = gauss_hermite(order);
        Ok(Self {
            k,
            hbar: h,
            l11,
            l21,
            l22,
            pref,
            nodes: nodes.into_iter().map(lit).collect(),
            weights: weights.into_iter().map(lit).collect(),
        })
    }

    /// (∫e^{βy}, ∫y e^{βy}) against e^{−y²/2} without the common factor
    /// e^{β²/2}, summed on the steepest-descent
    /// line y = β + u. On the real axis the integrand oscillates like
    /// e^{i·Im β·y} and the sum cancels catastrophically once |β| is large.
    fn axis(&self, beta: C<T>) -> (C<T>, C<T>) {
        let mut s0 = C::new(T::zero(), T::zero());
        let mut s1 = s0;
        for (&u, &w) in self.nodes.iter().zip(&self.weights) {
            s0 += C::from(w);
            s1 += (beta + u) * w;
        }
        (s0, s1)
    }

    fn sample(&self, x: [T; 2]) -> Sample<T> {
        let i_h = C::new(T::zero(), T::one() / self.hbar);
        let bx = self.k.b_inv.mul_vec(x);
        // linear coefficient b = −(i/ħ)B̃⁻¹x, β = L⁻¹b
        let b = [-i_h * bx[0], -i_h * bx[1]];
        let beta1 = b[0] / self.l11;
        let beta2 = (b[1] - self.l21 * beta1) / self.l22;
        let (i1, j1) = self.axis(beta1);
        let (i2, j2) = self.axis(beta2);
        let outer_phase = (i_h * lit::<T>(0.5) * dot(x, self.k.db.mul_vec(x))).exp();
        // e^{(β₁² + β₂²)/2}, combined before exponentiating: the two halves
        // can separately overflow while their product decays
        let gauss = ((beta1 * beta1 + beta2 * beta2) * lit::<T>(0.5)).exp();
        let front = self.pref * outer_phase * gauss;
        let psi = front * i1 * i2;
        // ∫x′ = L⁻ᵀ∫y
        let ey = [j1 * i2, i1 * j2];
        let u2 = ey[1] / self.l22;
        let u1 = (ey[0] - self.l21 * u2) / self.l11;
        let bt = self.k.b_inv.transpose();
        let bu = [
            C::from(bt.m[0][0]) * u1 + C::from(bt.m[0][1]) * u2,
            C::from(bt.m[1][0]) * u1 + C::from(bt.m[1][1]) * u2,
        ];
        let dbx = self.k.db.mul_vec(x);
        let grad = [0, 1].map(|j| i_h * dbx[j] * psi - i_h * front * bu[j]);
        Sample { psi, grad }
    }
}

struct RawMoments<T> {
    cov: Mat4<T>,
    means: [T; 4],
    norm: T,
}

/// Outer quadrature on x = L_g z, with z on the Gauss–Hermite grid and the
/// weight e^{−z²/2} divided back out.
fn moments<T: Scalar>(prop: &Propagator<T>, grid: &Mat2<T>, order: usize) -> RawMoments<T> {
    let (z, w) = gauss_hermite(order);
    let wt: Vec<T> = z.iter().zip(&w).map(|(&zi, &wi)| lit::<T>((wi.ln() + 0.5 * zi * zi).exp())).collect();
    let z: Vec<T> = z.into_iter().map(lit).collect();
    let jac = grid.det().abs();
    let h = prop.hbar;
    let mut norm = T::zero();
    let mut s1 = [T::zero(); 4];
    let mut s2 = Mat4::zero();
    for (ia, &za) in z.iter().enumerate() {
        for (ib, &zb) in z.iter().enumerate() {
            let x = grid.mul_vec([za, zb]);
            let s = prop.sample(x);
            let weight = wt[ia] * wt[ib] * jac;
            let rho = s.psi.norm_sqr();
            // −iħ∂ψ
            let mom = s.grad.map(|g| C::new(T::zero(), -h) * g);
            let pm = [0, 1].map(|j| (s.psi.conj() * mom[j]).re);
            norm += weight * rho;
            for i in 0..2 {
                s1[i] += weight * rho * x[i];
                s1[2 + i] += weight * pm[i];
                for j in 0..2 {
                    s2.m[i][j] += weight * rho * x[i] * x[j];
                    s2.m[2 + i][2 + j] += weight * (mom[i].conj() * mom[j]).re;
                    s2.m[i][2 + j] += weight * x[i] * pm[j];
                }
            }
        }
    }
    for i in 0..4 {
        for j in 0..4 {
            s2.m[i][j] -= s1[i] * s1[j] / norm;
        }
    }
    for i in 0..2 {
        for j in 0..2 {
            s2.m[2 + j][i] = s2.m[i][2 + j];
        }
    }
    RawMoments {
        cov: s2,
        means: s1,
        norm,
    }
}

/// Propagates the vacuum ψ₀ through the kernel of `M̃` by tensor-product
/// Gauss–Hermite quadrature and returns its second moments. The run is
/// repeated at twice the order; a change above 1e−6 is an error.
pub fn kernel_apply_gaussian<T: Scalar>(
    m: &SymplecticMatrix<T>,
    config: &OscillatorConfig<T>,
    order: usize,
) -> Result<QuadratureResult<T>> {
    config.validate()?;
    if order < 2 {
        return Err(Error::InvalidParameter("quadrature order must be at least 2".into()));
    }
    let run = |n: usize| -> Result<RawMoments<T>> {
        let prop = Propagator::new(m, config, n)?;
        // pilot at the vacuum scale, then re-grid on the pilot's position spread
        let half = lit::<T>(0.5).sqrt();
        let pilot = moments(&prop, &Mat2::diag(config.l[0] * half, config.l[1] * half), n);
        let pos = Mat4::from_blocks(
            pilot.cov.block(0, 0).scale(T::one() / pilot.norm),
            Mat2::zero(),
            Mat2::zero(),
            Mat2::identity(),
        );
        let chol = cholesky4(&pos).ok_or_else(|| Error::QuadratureNotConverged { change: f64::NAN })?;
        Ok(moments(&prop, &chol.block(0, 0), n))
    };
    let base = run(order)?;
    let fine = run(2 * order)?;
    let mut change = (base.norm - fine.norm).abs();
    for i in 0..4 {
        change = change.max((base.means[i] - fine.means[i]).abs());
        for j in 0..4 {
            change = change.max((base.cov.m[i][j] - fine.cov.m[i][j]).abs());
        }
    }
    if !(to_f64(change) <= 1e-6) {
        return Err(Error::QuadratureNotConverged { change: to_f64(change) });
    }
    Ok(QuadratureResult {
        covariance: CovarianceMatrix::new_unchecked(base.cov, *config),
        means: base.means,
        norm: base.norm,
        order,
        change,
    })
}

/// Closed-form moments next to the quadrature ones, for reporting.
pub fn quadrature_discrepancy<T: Scalar>(
    m: &SymplecticMatrix<T>,
    config: &OscillatorConfig<T>,
    q: &QuadratureResult<T>,
) -> Result<T> {
    let exact = covariance(m, config)?;
    Ok(exact.entries().max_abs_diff(q.covariance.entries()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special_forms::{squeeze_matrix_x, SqueezeParams};
    use crate::symplectic::{exp_map, to_x_order};
    use crate::symplectic::test_support::arb_real_lie;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn gauss_hermite_moments() {
        let root = (2.0 * std::f64::consts::PI).sqrt();
        for n in [1, 2, 5, 64, 128] {
            let (y, w) = gauss_hermite(n);
            let m = |k: i32| y.iter().zip(&w).map(|(y, w)| w * y.powi(k)).sum::<f64>();
            assert_relative_eq!(m(0), root, max_relative = 1e-13);
            if n >= 2 {
                assert_relative_eq!(m(2), root, max_relative = 1e-13);
                assert!(m(1).abs() < 1e-13);
            }
            if n >= 3 {
                assert_relative_eq!(m(4), 3.0 * root, max_relative = 1e-13);
            }
            assert!(y.windows(2).all(|p| p[0] < p[1]));
        }
        // e^{βy} integrates to √(2π)e^{β²/2}
        let (y, w) = gauss_hermite(64);
        let s: f64 = y.iter().zip(&w).map(|(y, w)| w * (1.5 * y).exp()).sum();
        assert_relative_eq!(s, root * 1.125f64.exp(), max_relative = 1e-13);
    }

    #[test]
    fn tracker_follows_continuous_branch() {
        let mut t = PrefactorTracker::<f64>::new();
        let mut prev = t.sqrt(Complex::new(1.0, 0.0));
        // go once around the origin; the principal root would jump at the cut
        for k in 1..=200 {
            let th = 2.0 * std::f64::consts::PI * k as f64 / 200.0;
            let s = t.sqrt(Complex::from_polar(1.0, th));
            assert!((s - prev).norm() < 0.05);
            prev = s;
        }
        assert_relative_eq!(prev.re, -1.0, epsilon = 1e-12);
    }

    #[test]
    fn squeeze_kernel_is_finite_with_constant_modulus() {
        let p = SqueezeParams::natural(0.3, std::f64::consts::FRAC_PI_4);
        let m = squeeze_matrix_x(&p);
        let c = OscillatorConfig::natural();
        assert!(m.b().det().abs() > 1e-3);
        let first = kernel_eval(&m, [0.0, 0.0], [0.0, 0.0], &c, None).unwrap().norm();
        for x in [-2.0, -0.5, 0.7, 3.0] {
            for y in [-1.5, 0.0, 2.5] {
                let k = kernel_eval(&m, [x, y], [y, -x], &c, None).unwrap();
                assert!(k.re.is_finite() && k.im.is_finite());
                assert_relative_eq!(k.norm(), first, max_relative = 1e-12);
            }
        }
    }

    #[test]
    fn kernel_inverse_symmetry() {
        let p = SqueezeParams::new(0.7, 0.4, 1.3, 0.8, 1.1).unwrap();
        let m = squeeze_matrix_x(&p);
        let inv = m.inverse();
        let c = OscillatorConfig::new(1.3, 0.8, 1.1).unwrap();
        let pref2 = {
            let a = kernel_eval(&m, [0.0; 2], [0.0; 2], &c, None).unwrap();
            let b = kernel_eval(&inv, [0.0; 2], [0.0; 2], &c, None).unwrap();
            a * b
        };
        for (x, xp) in [([0.3, -1.0], [2.0, 0.5]), ([-1.2, 0.1], [0.0, 0.9])] {
            let a = kernel_eval(&m, x, xp, &c, None).unwrap();
            let b = kernel_eval(&inv, xp, x, &c, None).unwrap();
            // phases are conjugate, so the product is the squared prefactor
            assert!((a * b - pref2).norm() < 1e-12 * pref2.norm());
        }
    }

    #[test]
    fn singular_b_is_refused() {
        let id = SymplecticMatrix::<f64>::identity(Ordering::X);
        let c = OscillatorConfig::natural();
        assert_eq!(kernel_eval(&id, [0.0; 2], [0.0; 2], &c, None).unwrap_err().code(), "SingularB");
        assert_eq!(kernel_apply_gaussian(&id, &c, 16).unwrap_err().code(), "SingularB");
    }

    #[test]
    fn quadrature_reproduces_squeezed_covariance() {
        let p = SqueezeParams::natural(0.3, std::f64::consts::FRAC_PI_4);
        let m = squeeze_matrix_x(&p);
        let c = OscillatorConfig::natural();
        let q = kernel_apply_gaussian(&m, &c, DEFAULT_GH_ORDER).unwrap();
        assert!((q.norm - 1.0).abs() <= 1e-6, "norm {}", q.norm);
        assert!(quadrature_discrepancy(&m, &c, &q).unwrap() <= 1e-6);
        assert!(q.covariance.entries().is_symmetric(1e-8));
        assert!(q.means.iter().all(|x| x.abs() < 1e-8));
    }

    #[test]
    fn quadrature_at_r_one_with_lengths() {
        let p = SqueezeParams::<f64>::new(1.0, 1.1, 1.4, 0.6, 0.8).unwrap();
        let m = squeeze_matrix_x(&p);
        let c = OscillatorConfig::from(&p);
        let q = kernel_apply_gaussian(&m, &c, DEFAULT_GH_ORDER).unwrap();
        assert!((q.norm - 1.0).abs() <= 1e-6);
        assert!(quadrature_discrepancy(&m, &c, &q).unwrap() <= 1e-6);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(12))]
        #[test]
        fn quadrature_matches_closed_form(l in arb_real_lie(0.6)) {
            let m = to_x_order(&exp_map(&l).unwrap().matrix).unwrap();
            prop_assume!(m.b().det().abs() > 0.05);
            let c = OscillatorConfig::natural();
            let q = kernel_apply_gaussian(&m, &c, 48).unwrap();
            prop_assert!((q.norm - 1.0).abs() <= 1e-6);
            prop_assert!(quadrature_discrepancy(&m, &c, &q).unwrap() <= 1e-6);
        }
    }
}
