use num_complex::Complex64;

use super::algebra::{d_matrix, LieAlgebraElement};
use super::entire::analytic_c;
use super::group::SymplecticMatrix;
use crate::error::{Error, Result};
use crate::scalar::{lit, to_f64, Scalar};

/// Eigenvalues λ₊ ≥ λ₋ of the 2×2 recursion matrix governing powers of m².
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenPair<T> {
    pub lambda_plus: T,
    pub lambda_minus: T,
    pub delta: T,
}

/// The determinants that every closed form is built from.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Dets<T> {
    pub da: T,
    pub db: T,
    pub dc: T,
    pub dd: T,
}

pub(crate) fn dets<T: Scalar>(l: &LieAlgebraElement<T>) -> Dets<T> {
    Dets {
        da: l.a().det(),
        db: l.b().det(),
        dc: l.c().det(),
        dd: d_matrix(l).det(),
    }
}

/// λ± = −(det a + det c + 2 det b)/2 ± ½√((det a − det c)² + 4 det d).
///
/// A radicand that is negative only by rounding is clamped to zero.
pub fn lambda_pm<T: Scalar>(l: &LieAlgebraElement<T>) -> Result<EigenPair<T>> {
    let Dets { da, db, dc, dd } = dets(l);
    let diff = da - dc;
    let four = lit::<T>(4.0);
    let radicand = diff * diff + four * dd;
    let scale = diff * diff + four * dd.abs();
    let mut radicand = radicand;
    if radicand < T::zero() {
        if radicand >= -lit::<T>(64.0) * T::epsilon() * scale {
            radicand = T::zero();
        } else {
            return Err(Error::ComplexEigenvalueRegime {
                radicand: to_f64(radicand),
            });
        }
    }
    if !radicand.is_finite() {
        return Err(Error::NonFinite("λ± radicand"));
    }
    let half = lit::<T>(0.5);
    let mean = -(da + dc + db + db) * half;
    let delta = radicand.sqrt();
    Ok(EigenPair {
        lambda_plus: mean + half * delta,
        lambda_minus: mean - half * delta,
        delta,
    })
}

/// (αₙ, βₙ, γₙ) with (m²)ⁿ = [[αₙ·1, βₙ·J·d], [−βₙ·J·dᵀ, γₙ·1]], from the
/// two-term recursion. Needs no eigenvalues, so it also covers the complex
/// regime and the degenerate Δ = 0 case.
pub fn power_coeffs<T: Scalar>(l: &LieAlgebraElement<T>, n: u32) -> Result<(T, T, T)> {
    if n == 0 {
        return Err(Error::InvalidParameter("power_coeffs needs n ≥ 1".into()));
    }
    let Dets { da, db, dc, dd } = dets(l);
    let alpha1 = -da - db;
    let gamma1 = -dc - db;
    let (mut alpha, mut beta, mut gamma) = (alpha1, T::one(), gamma1);
    for _ in 1..n {
        let next_alpha = alpha1 * alpha + dd * beta;
        let next_gamma = gamma1 * gamma + dd * beta;
        beta = alpha + gamma1 * beta;
        alpha = next_alpha;
        gamma = next_gamma;
    }
    Ok((alpha, beta, gamma))
}

/// Same coefficients through the eigenvalue closed form; requires Δ > 0.
pub fn power_coeffs_closed_form<T: Scalar>(l: &LieAlgebraElement<T>, n: u32) -> Result<(T, T, T)> {
    let ep = lambda_pm(l)?;
    if ep.delta == T::zero() {
        return Err(Error::InvalidParameter("closed form needs λ₊ ≠ λ₋".into()));
    }
    let gamma1 = -l.c().det() - l.b().det();
    let (p, m) = (ep.lambda_plus.powi(n as i32), ep.lambda_minus.powi(n as i32));
    let (lp, lm) = (ep.lambda_plus, ep.lambda_minus);
    Ok((
        ((lp - gamma1) * p - (lm - gamma1) * m) / ep.delta,
        (p - m) / ep.delta,
        ((lp - gamma1) * m - (lm - gamma1) * p) / ep.delta,
    ))
}

/// `Tr(Mⁿ) = 2C(n²λ₊) + 2C(n²λ₋)` for `M = exp((J⊕J)L)`.
pub fn trace_power<T: Scalar>(l: &LieAlgebraElement<T>, n: u32) -> Result<T> {
    let ep = lambda_pm(l)?;
    let n2 = lit::<T>((n as f64) * (n as f64));
    let two = lit::<T>(2.0);
    Ok(two * analytic_c(n2 * ep.lambda_plus) + two * analytic_c(n2 * ep.lambda_minus))
}

/// Eigenvalues {e^{−√λ₊}, e^{−√λ₋}, e^{√λ₋}, e^{√λ₊}} in ascending order.
///
/// When λ₋ < 0 some eigenvalues sit on the unit circle; the error then carries
/// the phases `√−λ` of every elliptic pair.
pub fn symplectic_eigenvalues<T: Scalar>(l: &LieAlgebraElement<T>) -> Result<[T; 4]> {
    let ep = lambda_pm(l)?;
    if ep.lambda_minus < T::zero() {
        let phase = |x: T| (x < T::zero()).then(|| to_f64((-x).sqrt()));
        return Err(Error::EllipticSpectrum {
            lambda_plus: to_f64(ep.lambda_plus),
            lambda_minus: to_f64(ep.lambda_minus),
            phases: [phase(ep.lambda_plus), phase(ep.lambda_minus)],
        });
    }
    let (up, um) = (ep.lambda_plus.sqrt(), ep.lambda_minus.sqrt());
    Ok([(-up).exp(), (-um).exp(), um.exp(), up.exp()])
}

/// Coefficients [c₀, c₁, c₂, c₃, c₄] of the characteristic quartic of a
/// unimodular 4×4 matrix in terms of the power traces t₁, t₂, t₃.
pub fn char_poly_from_traces(t1: f64, t2: f64, t3: f64) -> [f64; 5] {
    [
        1.0,
        -t1 * t1 * t1 / 6.0 + t1 * t2 / 2.0 - t3 / 3.0,
        (t1 * t1 - t2) / 2.0,
        -t1,
        1.0,
    ]
}

/// Evaluates the trace-built quartic at each eigenvalue of `M` (dense solver)
/// and returns the largest residual, each normalized by Σ|cₖ||Λ|ᵏ.
pub fn char_poly_check<T: Scalar>(m: &SymplecticMatrix<T>) -> f64 {
    let mm = m.entries().to_nalgebra();
    let m2 = mm * mm;
    let m3 = m2 * mm;
    let coeffs = char_poly_from_traces(mm.trace(), m2.trace(), m3.trace());
    mm.complex_eigenvalues()
        .iter()
        .map(|&z| quartic_residual(&coeffs, z))
        .fold(0.0, f64::max)
}

pub(crate) fn quartic_residual(coeffs: &[f64; 5], z: Complex64) -> f64 {
    let mut value = Complex64::new(0.0, 0.0);
    let mut scale = 0.0;
    for &c in coeffs.iter().rev() {
        value = value * z + c;
    }
    for (k, &c) in coeffs.iter().enumerate() {
        scale += c.abs() * z.norm().powi(k as i32);
    }
    value.norm() / scale.max(1.0)
}
