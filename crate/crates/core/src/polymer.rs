//! Polymer states on finite graphs in the plane and the point-map actions
//! of block-diagonal symplectic matrices on them.
//!
//! A state is a finite superposition Σ Ψ_x |x⟩ of plane-wave labels with
//! Kronecker-delta inner product. The position operator q̂ⱼ acts on the
//! label x with eigenvalue −xⱼ; means carry that sign, squares do not.

use std::collections::HashMap;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{lit, to_f64, Scalar};
use crate::symplectic::{Ordering, SymplecticMatrix};

/// Points closer than this (max-norm) after a map are merged.
pub const MERGE_TOL: f64 = 1e-12;
/// Allowed |‖Ψ‖² − 1| in strict mode.
pub const NORM_TOL: f64 = 1e-12;
/// Largest |B̃|, |C̃| entry accepted by [`apply_point_transform`].
pub const POINT_TRANSFORM_TOL: f64 = 1e-12;

/// Bit-pattern key of a coordinate with −0 folded into +0.
fn key<T: Scalar>(x: T) -> (u64, i16, i8) {
    (x + T::zero()).integer_decode()
}

fn key2<T: Scalar>(p: [T; 2]) -> [(u64, i16, i8); 2] {
    [key(p[0]), key(p[1])]
}

/// Two-mode polymer state.
#[derive(Debug, Clone, PartialEq)]
pub struct PolymerState<T> {
    points: Vec<[T; 2]>,
    coeffs: Vec<Complex<T>>,
    mu: Option<[T; 2]>,
}

impl<T: Scalar> PolymerState<T> {
    /// Builds a state, adding the coefficients of repeated points.
    pub fn new(points: Vec<[T; 2]>, coeffs: Vec<Complex<T>>) -> Result<Self> {
        if points.len() != coeffs.len() {
            return Err(Error::LengthMismatch(format!(
                "{} points but {} coefficients",
                points.len(),
                coeffs.len()
            )));
        }
        let finite = points.iter().all(|p| p[0].is_finite() && p[1].is_finite())
            && coeffs.iter().all(|c| c.re.is_finite() && c.im.is_finite());
        if !finite {
            return Err(Error::NonFinite("polymer state"));
        }
        let mut index: HashMap<_, usize> = HashMap::new();
        let mut pts: Vec<[T; 2]> = Vec::with_capacity(points.len());
        let mut cs: Vec<Complex<T>> = Vec::with_capacity(points.len());
        for (p, c) in points.into_iter().zip(coeffs) {
            let p = [p[0] + T::zero(), p[1] + T::zero()];
            match index.get(&key2(p)) {
                Some(&i) => cs[i] += c,
                None => {
                    index.insert(key2(p), pts.len());
                    pts.push(p);
                    cs.push(c);
                }
            }
        }
        Ok(Self {
            points: pts,
            coeffs: cs,
            mu: None,
        })
    }

    /// Attaches the polymer scales μ₁, μ₂. They are reporting metadata only.
    pub fn with_mu(mut self, mu: [T; 2]) -> Self {
        self.mu = Some(mu);
        self
    }

    pub fn points(&self) -> &[[T; 2]] {
        &self.points
    }

    pub fn coeffs(&self) -> &[Complex<T>] {
        &self.coeffs
    }

    pub fn mu(&self) -> Option<[T; 2]> {
        self.mu
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Σ|Ψ_x|².
    pub fn norm_sqr(&self) -> T {
        self.coeffs.iter().fold(T::zero(), |s, c| s + c.norm_sqr())
    }

    pub fn normalized(&self) -> Result<(Self, T)> {
        let n = self.norm_sqr();
        if !(n > T::zero()) {
            return Err(Error::NotNormalized { norm_sq: to_f64(n) });
        }
        let f = T::one() / n.sqrt();
        let mut out = self.clone();
        for c in &mut out.coeffs {
            *c = *c * f;
        }
        Ok((out, f))
    }

    /// Relabels every point by `f`, merging images closer than [`MERGE_TOL`].
    pub fn map_points(&self, f: impl Fn([T; 2]) -> [T; 2]) -> Self {
        let mapped: Vec<([T; 2], Complex<T>)> = self
            .points
            .iter()
            .zip(&self.coeffs)
            .map(|(p, c)| {
                let q = f(*p);
                ([q[0] + T::zero(), q[1] + T::zero()], *c)
            })
            .collect();
        let (points, coeffs) = merge_close(mapped);
        Self {
            points,
            coeffs,
            mu: self.mu,
        }
    }
}

/// Greedy clustering on points sorted by the first coordinate; later points
/// within tolerance of an earlier kept point are added into it.
fn merge_close<T: Scalar>(mut items: Vec<([T; 2], Complex<T>)>) -> (Vec<[T; 2]>, Vec<Complex<T>>) {
    let tol = lit::<T>(MERGE_TOL);
    let order: Vec<usize> = {
        let mut idx: Vec<usize> = (0..items.len()).collect();
        idx.sort_by(|&i, &j| {
            items[i].0[0]
                .partial_cmp(&items[j].0[0])
                .unwrap_or(std::cmp::Ordering::Equal)
                .then(items[i].0[1].partial_cmp(&items[j].0[1]).unwrap_or(std::cmp::Ordering::Equal))
        });
        idx
    };
    let mut rep: Vec<Option<usize>> = vec![None; items.len()];
    let mut kept: Vec<usize> = Vec::new();
    for (pos, &i) in order.iter().enumerate() {
        let p = items[i].0;
        let mut target = None;
        for &j in order[..pos].iter().rev() {
            let q = items[j].0;
            if p[0] - q[0] > tol {
                break;
            }
            if rep[j].is_none() && (p[1] - q[1]).abs() <= tol {
                target = Some(j);
                break;
            }
        }
        match target {
            Some(j) => {
                let c = items[i].1;
                items[j].1 += c;
                rep[i] = Some(j);
            }
            None => kept.push(i),
        }
    }
    // keep input order for the survivors
    kept.sort_unstable();
    kept.into_iter().map(|i| items[i]).unzip()
}

/// Strict rejects unnormalized input; lenient rescales it and reports the factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Normalization {
    #[default]
    Strict,
    Lenient,
}

/// Position statistics of a polymer state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PositionMoments<T> {
    /// ⟨q̂ⱼ⟩ with eigenvalue −xⱼ.
    pub mean: [T; 2],
    /// ⟨q̂ⱼ²⟩
    pub second: [T; 2],
    /// Δxⱼ
    pub dispersion: [T; 2],
    /// ⟨q̂₁q̂₂⟩ − ⟨q̂₁⟩⟨q̂₂⟩
    pub covariance: T,
    /// Amplitude factor applied in lenient mode, 1 otherwise.
    pub rescaled_by: T,
}

/// Σ over terms sorted by value, so that a multiset of terms always gives
/// the same rounding.
fn sorted_sum<T: Scalar>(mut v: Vec<T>) -> T {
    v.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    v.into_iter().fold(T::zero(), |s, x| s + x)
}

/// Σ pᵢxᵢ with positive and negative labels summed separately. For a
/// probability symmetric under x → −x the two halves agree bit for bit and
/// the result is exactly zero.
fn signed_first_moment<T: Scalar>(p: &[T], x: &[T]) -> T {
    let pos: Vec<T> = p.iter().zip(x).filter(|(_, &x)| x > T::zero()).map(|(&p, &x)| p * x).collect();
    let neg: Vec<T> = p.iter().zip(x).filter(|(_, &x)| x < T::zero()).map(|(&p, &x)| p * -x).collect();
    sorted_sum(pos) - sorted_sum(neg)
}

pub fn position_moments<T: Scalar>(psi: &PolymerState<T>, mode: Normalization) -> Result<PositionMoments<T>> {
    let n = psi.norm_sqr();
    let rescaled_by = match mode {
        Normalization::Strict => {
            let tol = NORM_TOL.max(64.0 * to_f64(T::epsilon()));
            if !((to_f64(n) - 1.0).abs() <= tol) {
                return Err(Error::NotNormalized { norm_sq: to_f64(n) });
            }
            T::one()
        }
        Normalization::Lenient => {
            if !(n > T::zero()) {
                return Err(Error::NotNormalized { norm_sq: to_f64(n) });
            }
            T::one() / n.sqrt()
        }
    };
    let scale = rescaled_by * rescaled_by;
    let prob: Vec<T> = psi.coeffs.iter().map(|c| c.norm_sqr() * scale).collect();
    let xs = [0, 1].map(|j| psi.points.iter().map(|p| p[j]).collect::<Vec<T>>());
    // eigenvalue of q̂ⱼ on |x⟩ is −xⱼ
    let mean = [0, 1].map(|j| -signed_first_moment(&prob, &xs[j]));
    let second = [0, 1].map(|j| sorted_sum(prob.iter().zip(&xs[j]).map(|(&p, &x)| p * x * x).collect()));
    // two-pass variances around the label mean, both divided by the total
    // probability so a single point has exactly zero spread
    let total = sorted_sum(prob.clone());
    let centre = [0, 1].map(|j| signed_first_moment(&prob, &xs[j]) / total);
    let var = [0, 1].map(|j| {
        sorted_sum(
            prob.iter()
                .zip(&xs[j])
                .map(|(&p, &x)| p * (x - centre[j]) * (x - centre[j]))
                .collect(),
        ) / total
    });
    let covariance = sorted_sum(
        prob.iter()
            .zip(xs[0].iter().zip(&xs[1]))
            .map(|(&p, (&a, &b))| p * (a - centre[0]) * (b - centre[1]))
            .collect(),
    ) / total;
    Ok(PositionMoments {
        mean,
        second,
        dispersion: var.map(|v| v.max(T::zero()).sqrt()),
        covariance,
        rescaled_by,
    })
}

/// `⟨Ψ|Φ⟩ = Σ_x conj(Ψ_x)Φ_x` over points present in both.
pub fn inner_product<T: Scalar>(psi: &PolymerState<T>, phi: &PolymerState<T>) -> Complex<T> {
    let index: HashMap<_, usize> = phi.points.iter().enumerate().map(|(i, p)| (key2(*p), i)).collect();
    let mut s = Complex::new(T::zero(), T::zero());
    for (p, c) in psi.points.iter().zip(&psi.coeffs) {
        if let Some(&i) = index.get(&key2(*p)) {
            s += c.conj() * phi.coeffs[i];
        }
    }
    s
}

/// Action of M̃₁: (x₁, x₂) ↦ (e^{−r₁}x₁, e^{−r₂}x₂).
pub fn apply_diag_squeeze<T: Scalar>(psi: &PolymerState<T>, r1: T, r2: T) -> PolymerState<T> {
    let (s1, s2) = ((-r1).exp(), (-r2).exp());
    psi.map_points(|p| [s1 * p[0], s2 * p[1]])
}

/// Bipartite action: (x₁, x₂) ↦ (cosh r·x₁ + sinh r·x₂, sinh r·x₁ + cosh r·x₂).
pub fn apply_bipartite_squeeze<T: Scalar>(psi: &PolymerState<T>, r: T) -> PolymerState<T> {
    let (ch, sh) = (r.cosh(), r.sinh());
    psi.map_points(|p| [ch * p[0] + sh * p[1], sh * p[0] + ch * p[1]])
}

/// Relabels x ↦ Ãx for an X-order matrix with B̃ = C̃ = 0.
pub fn apply_point_transform<T: Scalar>(psi: &PolymerState<T>, m: &SymplecticMatrix<T>) -> Result<PolymerState<T>> {
    m.require(Ordering::X)?;
    let residual = m.b().max_abs().max(m.c().max_abs());
    if !(to_f64(residual) <= POINT_TRANSFORM_TOL) {
        return Err(Error::NotPointTransform {
            residual: to_f64(residual),
        });
    }
    let a = m.a();
    if !(a.det().abs() > T::epsilon()) {
        return Err(Error::InvalidParameter("Ã block is singular".into()));
    }
    Ok(psi.map_points(|p| a.mul_vec(p)))
}

/// One-mode factor of a product state.
#[derive(Debug, Clone, PartialEq)]
pub struct PurePolymerFactor<T> {
    points: Vec<T>,
    coeffs: Vec<Complex<T>>,
}

/// Symmetry flags of a factor under x → −x.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SymmetryCertificate {
    pub lattice_symmetric: bool,
    pub coefficients_symmetric: bool,
}

impl SymmetryCertificate {
    pub fn holds(&self) -> bool {
        self.lattice_symmetric && self.coefficients_symmetric
    }
}

impl<T: Scalar> PurePolymerFactor<T> {
    /// Repeated points have their coefficients added.
    pub fn new(points: Vec<T>, coeffs: Vec<Complex<T>>) -> Result<Self> {
        let z = T::zero();
        let s = PolymerState::new(points.into_iter().map(|x| [x, z]).collect(), coeffs)?;
        Ok(Self {
            points: s.points.iter().map(|p| p[0]).collect(),
            coeffs: s.coeffs,
        })
    }

    pub fn points(&self) -> &[T] {
        &self.points
    }

    pub fn coeffs(&self) -> &[Complex<T>] {
        &self.coeffs
    }

    pub fn norm_sqr(&self) -> T {
        self.coeffs.iter().fold(T::zero(), |s, c| s + c.norm_sqr())
    }

    /// Exact checks: the negated point must be present and carry an
    /// identical coefficient.
    pub fn certificate(&self) -> SymmetryCertificate {
        let index: HashMap<_, usize> = self.points.iter().enumerate().map(|(i, &x)| (key(x), i)).collect();
        let mut lattice = true;
        let mut coeffs = true;
        for (&x, c) in self.points.iter().zip(&self.coeffs) {
            match index.get(&key(-x)) {
                Some(&j) => coeffs &= self.coeffs[j] == *c,
                None => {
                    lattice = false;
                    coeffs = false;
                }
            }
        }
        SymmetryCertificate {
            lattice_symmetric: lattice,
            coefficients_symmetric: coeffs,
        }
    }
}

/// Tensor product of two symmetric factors.
pub fn make_pure_symmetric<T: Scalar>(f1: &PurePolymerFactor<T>, f2: &PurePolymerFactor<T>) -> Result<PolymerState<T>> {
    for (i, f) in [f1, f2].into_iter().enumerate() {
        let cert = f.certificate();
        if !cert.holds() {
            return Err(Error::NotSymmetricFactor {
                factor: i + 1,
                lattice: cert.lattice_symmetric,
                coefficients: cert.coefficients_symmetric,
            });
        }
    }
    let mut points = Vec::with_capacity(f1.points.len() * f2.points.len());
    let mut coeffs = Vec::with_capacity(points.capacity());
    for (&x, &c) in f1.points.iter().zip(&f1.coeffs) {
        for (&y, &d) in f2.points.iter().zip(&f2.coeffs) {
            points.push([x, y]);
            coeffs.push(c * d);
        }
    }
    PolymerState::new(points, coeffs)
}

/// Splits a state into two one-mode factors when it is a product state,
/// i.e. its support is a full grid and the coefficient table has rank one.
pub fn factorize<T: Scalar>(psi: &PolymerState<T>) -> Option<(PurePolymerFactor<T>, PurePolymerFactor<T>)> {
    let mut xs: Vec<T> = Vec::new();
    let mut ys: Vec<T> = Vec::new();
    let mut xi: HashMap<_, usize> = HashMap::new();
    let mut yi: HashMap<_, usize> = HashMap::new();
    for p in &psi.points {
        xi.entry(key(p[0])).or_insert_with(|| {
            xs.push(p[0]);
            xs.len() - 1
        });
        yi.entry(key(p[1])).or_insert_with(|| {
            ys.push(p[1]);
            ys.len() - 1
        });
    }
    if xs.len() * ys.len() != psi.points.len() || psi.is_empty() {
        return None;
    }
    let zero = Complex::new(T::zero(), T::zero());
    let mut table = vec![vec![zero; ys.len()]; xs.len()];
    for (p, c) in psi.points.iter().zip(&psi.coeffs) {
        table[xi[&key(p[0])]][yi[&key(p[1])]] = *c;
    }
    // pivot on the largest entry
    let (mut pi, mut pj, mut best) = (0, 0, T::zero());
    for (i, row) in table.iter().enumerate() {
        for (j, c) in row.iter().enumerate() {
            if c.norm() > best {
                (pi, pj, best) = (i, j, c.norm());
            }
        }
    }
    if !(best > T::zero()) {
        return None;
    }
    let pivot = table[pi][pj];
    let tol = lit::<T>(1e-12) * best * best;
    for i in 0..xs.len() {
        for j in 0..ys.len() {
            if (table[i][j] * pivot - table[i][pj] * table[pi][j]).norm() > tol {
                return None;
            }
        }
    }
    let col: Vec<Complex<T>> = (0..xs.len()).map(|i| table[i][pj] / pivot).collect();
    let row: Vec<Complex<T>> = (0..ys.len()).map(|j| table[pi][j]).collect();
    Some((PurePolymerFactor::new(xs, col).ok()?, PurePolymerFactor::new(ys, row).ok()?))
}

/// Before/after figures for the bipartite action.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DispersionLawReport<T> {
    pub r: T,
    /// Δx₁² − Δx₂² before and after.
    pub difference: [T; 2],
    /// Δx₁² + Δx₂² before and after.
    pub sum: [T; 2],
    /// Input Cov(x₁, x₂); the general law is sum′ = cosh2r·sum + 2 sinh2r·Cov.
    pub covariance: T,
    pub predicted_sum: T,
    /// Set when the input factors into symmetric one-mode states.
    pub pure_symmetric: bool,
    /// cosh 2r·(Δx₁² + Δx₂²), the law for pure symmetric states.
    pub pure_symmetric_sum: T,
}

pub fn dispersion_laws<T: Scalar>(psi: &PolymerState<T>, r: T, mode: Normalization) -> Result<DispersionLawReport<T>> {
    let before = position_moments(psi, mode)?;
    let after = position_moments(&apply_bipartite_squeeze(psi, r), mode)?;
    let sq = |m: &PositionMoments<T>| m.dispersion.map(|d| d * d);
    let (b, a) = (sq(&before), sq(&after));
    let two_r = lit::<T>(2.0) * r;
    let sum_before = b[0] + b[1];
    let pure_symmetric = factorize(psi)
        .map(|(f1, f2)| f1.certificate().holds() && f2.certificate().holds())
        .unwrap_or(false);
    Ok(DispersionLawReport {
        r,
        difference: [b[0] - b[1], a[0] - a[1]],
        sum: [sum_before, a[0] + a[1]],
        covariance: before.covariance,
        predicted_sum: two_r.cosh() * sum_before + lit::<T>(2.0) * two_r.sinh() * before.covariance,
        pure_symmetric,
        pure_symmetric_sum: two_r.cosh() * sum_before,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{Mat2, Mat4};
    use crate::special_forms::{m1_decoupled, squeeze_matrix_x, SqueezeParams};
    use crate::symplectic::to_x_order;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    type S = PolymerState<f64>;

    fn c(re: f64) -> Complex<f64> {
        Complex::new(re, 0.0)
    }

    fn two_point(x0: f64) -> S {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        PolymerState::new(vec![[x0, 0.0], [-x0, 0.0]], vec![c(h), c(h)]).unwrap()
    }

    fn symmetric_factor(x0: f64) -> PurePolymerFactor<f64> {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        PurePolymerFactor::new(vec![x0, -x0], vec![c(h), c(h)]).unwrap()
    }

    fn arb_state() -> impl Strategy<Value = S> {
        prop::collection::vec(((-5.0f64..5.0, -5.0f64..5.0), (-1.0f64..1.0, -1.0f64..1.0)), 1..12).prop_map(|v| {
            let (pts, cs): (Vec<_>, Vec<_>) =
                v.into_iter().map(|((a, b), (re, im))| ([a, b], Complex::new(re, im))).unzip();
            let s = PolymerState::new(pts, cs).unwrap();
            s.normalized().map(|(s, _)| s).unwrap_or(s)
        })
    }

    fn arb_sym_factor() -> impl Strategy<Value = PurePolymerFactor<f64>> {
        prop::collection::vec((0.01f64..4.0, -1.0f64..1.0, -1.0f64..1.0), 1..5).prop_map(|v| {
            let mut pts = Vec::new();
            let mut cs = Vec::new();
            for (x, re, im) in v {
                for s in [x, -x] {
                    pts.push(s);
                    cs.push(Complex::new(re, im));
                }
            }
            let norm: f64 = cs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
            PurePolymerFactor::new(pts, cs.into_iter().map(|c| c / norm).collect()).unwrap()
        })
    }

    #[test]
    fn inner_product_is_kronecker() {
        let a = PolymerState::new(vec![[1.0, 2.0]], vec![c(1.0)]).unwrap();
        let b = PolymerState::new(vec![[1.0, 2.5]], vec![c(1.0)]).unwrap();
        assert_eq!(inner_product(&a, &a), c(1.0));
        assert_eq!(inner_product(&a, &b), c(0.0));
    }

    #[test]
    fn duplicates_and_negative_zero_merge() {
        let s = PolymerState::new(vec![[0.0, 1.0], [-0.0, 1.0]], vec![c(0.5), c(0.25)]).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s.coeffs()[0], c(0.75));
        assert_eq!(
            PolymerState::<f64>::new(vec![[0.0, 0.0]], vec![]).unwrap_err().code(),
            "LengthMismatch"
        );
    }

    #[test]
    fn moments_of_simple_states() {
        let one = PolymerState::new(vec![[3.0, 0.0]], vec![c(1.0)]).unwrap();
        let m = position_moments(&one, Normalization::Strict).unwrap();
        assert_eq!(m.dispersion, [0.0, 0.0]);
        assert_eq!(m.mean, [-3.0, 0.0]);
        let m = position_moments(&two_point(1.7), Normalization::Strict).unwrap();
        assert_eq!(m.mean[0], 0.0);
        assert_relative_eq!(m.dispersion[0], 1.7, epsilon = 1e-15);
    }

    #[test]
    fn normalization_modes() {
        let s = PolymerState::new(vec![[1.0, 0.0], [2.0, 0.0]], vec![c(1.0), c(1.0)]).unwrap();
        assert_eq!(position_moments(&s, Normalization::Strict).unwrap_err().code(), "NotNormalized");
        let m = position_moments(&s, Normalization::Lenient).unwrap();
        assert_relative_eq!(m.rescaled_by, std::f64::consts::FRAC_1_SQRT_2, epsilon = 1e-15);
        assert_relative_eq!(m.dispersion[0], 0.5, epsilon = 1e-15);
    }

    #[test]
    fn diag_squeeze_example() {
        let out = apply_diag_squeeze(&two_point(2.0), 0.7, 0.0);
        let m = position_moments(&out, Normalization::Strict).unwrap();
        assert_relative_eq!(m.dispersion[0], (-0.7f64).exp() * 2.0, max_relative = 1e-15);
        assert_eq!(apply_diag_squeeze(&two_point(2.0), 0.0, 0.0), two_point(2.0));
    }

    #[test]
    fn bipartite_single_point() {
        let s = PolymerState::new(vec![[1.5, 0.0]], vec![c(1.0)]).unwrap();
        let out = apply_bipartite_squeeze(&s, 0.4);
        assert_eq!(out.points()[0], [0.4f64.cosh() * 1.5, 0.4f64.sinh() * 1.5]);
        assert_eq!(apply_bipartite_squeeze(&s, 0.0), s);
    }

    #[test]
    fn collisions_merge_coherently() {
        let s = PolymerState::new(vec![[1.0, 0.0], [1.0 + 1e-13, 0.0]], vec![c(0.6), c(0.8)]).unwrap();
        assert_eq!(s.len(), 2);
        let out = s.map_points(|p| p);
        assert_eq!(out.len(), 1);
        assert_relative_eq!(out.coeffs()[0].re, 1.4, epsilon = 1e-15);
    }

    #[test]
    fn point_transform_matches_named_actions() {
        let s = PolymerState::new(vec![[1.0, -2.0], [0.5, 3.0]], vec![c(0.6), c(0.8)]).unwrap();
        let (r1, r2) = (0.3, -0.5);
        let m1 = to_x_order(
            &m1_decoupled(Mat2::new(0.0, -r1, -r1, 0.0), Mat2::new(0.0, -r2, -r2, 0.0)).unwrap(),
        )
        .unwrap();
        let via = apply_point_transform(&s, &m1).unwrap();
        let direct = apply_diag_squeeze(&s, r1, r2);
        for (p, q) in via.points().iter().zip(direct.points()) {
            assert!((p[0] - q[0]).abs() < 1e-14 && (p[1] - q[1]).abs() < 1e-14);
        }
        // the bipartite map is the canonical squeeze at φ = π
        let ms = squeeze_matrix_x(&SqueezeParams::natural(0.6, std::f64::consts::PI));
        let via = apply_point_transform(&s, &ms).unwrap();
        let direct = apply_bipartite_squeeze(&s, 0.6);
        for (p, q) in via.points().iter().zip(direct.points()) {
            assert!((p[0] - q[0]).abs() < 1e-14 && (p[1] - q[1]).abs() < 1e-14);
        }
        let bad = squeeze_matrix_x(&SqueezeParams::natural(0.6, 1.0));
        assert_eq!(apply_point_transform(&s, &bad).unwrap_err().code(), "NotPointTransform");
        let id = SymplecticMatrix::identity(Ordering::X);
        assert_eq!(apply_point_transform(&s, &id).unwrap(), s);
    }

    #[test]
    fn pure_symmetric_product() {
        let s = make_pure_symmetric(&symmetric_factor(1.3), &symmetric_factor(1.3)).unwrap();
        assert_eq!(s.len(), 4);
        let m = position_moments(&s, Normalization::Strict).unwrap();
        assert_eq!(m.mean, [0.0, 0.0]);
        assert_relative_eq!(m.dispersion[0], 1.3, epsilon = 1e-15);
        assert_relative_eq!(m.dispersion[1], 1.3, epsilon = 1e-15);
        let lopsided = PurePolymerFactor::new(vec![1.0, 2.0], vec![c(0.6), c(0.8)]).unwrap();
        let err = make_pure_symmetric(&symmetric_factor(1.0), &lopsided).unwrap_err();
        assert_eq!(err.code(), "NotSymmetric");
        assert!(matches!(err, Error::NotSymmetricFactor { factor: 2, lattice: false, .. }));
        let uneven = PurePolymerFactor::new(vec![1.0, -1.0], vec![c(0.6), c(0.8)]).unwrap();
        let cert = uneven.certificate();
        assert!(cert.lattice_symmetric && !cert.coefficients_symmetric);
    }

    #[test]
    fn laws_for_pure_symmetric_state() {
        // Δx₁ = Δx₂ = l/√2 with l = 1
        let x0 = std::f64::consts::FRAC_1_SQRT_2;
        let s = make_pure_symmetric(&symmetric_factor(x0), &symmetric_factor(x0)).unwrap();
        let rep = dispersion_laws(&s, 0.5, Normalization::Strict).unwrap();
        assert!(rep.pure_symmetric);
        assert_relative_eq!(rep.sum[1], 1f64.cosh(), epsilon = 1e-12);
        let rep0 = dispersion_laws(&s, 0.0, Normalization::Strict).unwrap();
        assert_eq!(rep0.sum[0], rep0.sum[1]);
        assert_eq!(rep0.difference[0], rep0.difference[1]);
    }

    #[test]
    fn factorize_detects_products() {
        let f = PurePolymerFactor::new(vec![0.5, 1.0, 2.0], vec![c(0.2), c(0.4), c(0.8)]).unwrap();
        let g = symmetric_factor(0.7);
        let s = make_pure_symmetric(&g, &g).unwrap();
        assert!(factorize(&s).is_some());
        let mut pts = Vec::new();
        let mut cs = Vec::new();
        for (&x, &a) in f.points().iter().zip(f.coeffs()) {
            for (&y, &b) in g.points().iter().zip(g.coeffs()) {
                pts.push([x, y]);
                cs.push(a * b);
            }
        }
        assert!(factorize(&PolymerState::new(pts, cs).unwrap()).is_some());
        let entangled = PolymerState::new(vec![[1.0, 1.0], [-1.0, -1.0]], vec![c(0.6), c(0.8)]).unwrap();
        assert!(factorize(&entangled).is_none());
    }

    #[test]
    fn generic_over_f32() {
        let h = std::f32::consts::FRAC_1_SQRT_2;
        let s = PolymerState::new(vec![[2.0f32, 0.0], [-2.0, 0.0]], vec![Complex::new(h, 0.0); 2]).unwrap();
        let m = position_moments(&apply_diag_squeeze(&s, 0.5, 0.0), Normalization::Strict).unwrap();
        assert!((m.dispersion[0] - 2.0 * (-0.5f32).exp()).abs() < 1e-6);
    }

    proptest! {
        #[test]
        fn inner_product_properties(a in arb_state(), b in arb_state(), k in -2.0f64..2.0) {
            let ab = inner_product(&a, &b);
            let ba = inner_product(&b, &a);
            prop_assert!((ab - ba.conj()).norm() <= 1e-15);
            let aa = inner_product(&a, &a);
            prop_assert!(aa.im == 0.0 && (aa.re - a.norm_sqr()).abs() <= 1e-15);
            // linearity in the second slot against a direct sum
            let scaled = PolymerState::new(b.points().to_vec(), b.coeffs().iter().map(|c| c * k).collect()).unwrap();
            let mut direct = Complex::new(0.0, 0.0);
            for (p, c) in a.points().iter().zip(a.coeffs()) {
                for (q, d) in scaled.points().iter().zip(scaled.coeffs()) {
                    if p == q { direct += c.conj() * d; }
                }
            }
            prop_assert!((inner_product(&a, &scaled) - direct).norm() <= 1e-14);
        }

        #[test]
        fn diag_squeeze_scales_dispersion(s in arb_state(), r1 in -1.5f64..1.5, r2 in -1.5f64..1.5) {
            let before = position_moments(&s, Normalization::Strict).unwrap();
            let out = apply_diag_squeeze(&s, r1, r2);
            prop_assert!((out.norm_sqr() - s.norm_sqr()).abs() <= 1e-15);
            let after = position_moments(&out, Normalization::Strict).unwrap();
            for (j, r) in [(0, r1), (1, r2)] {
                let want = (-r).exp() * before.dispersion[j];
                let floor = 1e-15 * s.points().iter().map(|p| p[j].abs()).fold(0.0, f64::max);
                prop_assert!((after.dispersion[j] - want).abs() <= 1e-12 * want + floor);
            }
        }

        #[test]
        fn bipartite_preserves_difference(s in arb_state(), r in -1.0f64..1.0) {
            let rep = dispersion_laws(&s, r, Normalization::Strict).unwrap();
            let scale = rep.sum[0].max(rep.difference[0].abs()).max(1e-300);
            prop_assert!((rep.difference[1] - rep.difference[0]).abs() <= 1e-10 * scale);
            prop_assert!((rep.sum[1] - rep.predicted_sum).abs() <= 1e-10 * rep.sum[1].max(1e-300));
        }

        #[test]
        fn bipartite_is_one_parameter_group(s in arb_state(), r in -1.0f64..1.0, t in -1.0f64..1.0) {
            let two = apply_bipartite_squeeze(&apply_bipartite_squeeze(&s, r), t);
            let one = apply_bipartite_squeeze(&s, r + t);
            prop_assert_eq!(two.len(), one.len());
            for (p, q) in two.points().iter().zip(one.points()) {
                prop_assert!((p[0] - q[0]).abs() <= 1e-12 * (1.0 + p[0].abs()));
                prop_assert!((p[1] - q[1]).abs() <= 1e-12 * (1.0 + p[1].abs()));
            }
        }

        #[test]
        fn symmetric_products(f1 in arb_sym_factor(), f2 in arb_sym_factor(), r in 0.0f64..1.0) {
            let s = make_pure_symmetric(&f1, &f2).unwrap();
            prop_assert!((s.norm_sqr() - f1.norm_sqr() * f2.norm_sqr()).abs() <= 1e-14);
            let m = position_moments(&s, Normalization::Lenient).unwrap();
            prop_assert_eq!(m.mean, [0.0, 0.0]);
            let rep = dispersion_laws(&s, r, Normalization::Lenient).unwrap();
            prop_assert!(rep.pure_symmetric);
            prop_assert!((rep.sum[1] - rep.pure_symmetric_sum).abs() <= 1e-12 * rep.sum[1]);
        }

        #[test]
        fn point_transforms_compose(s in arb_state(), a in prop::array::uniform3(-0.8f64..0.8),
                                    b in prop::array::uniform3(-0.8f64..0.8)) {
            // any invertible Ã gives the symplectic diag(Ã, Ã⁻ᵀ)
            let point = |e: [f64; 3]| {
                let a = Mat2::new(e[0].exp(), e[1], 0.0, e[2].exp());
                let ai = a.inverse().unwrap().transpose();
                SymplecticMatrix::new(Mat4::from_blocks(a, Mat2::zero(), Mat2::zero(), ai), Ordering::X).unwrap()
            };
            let (m1, m2) = (point(a), point(b));
            let two = apply_point_transform(&apply_point_transform(&s, &m1).unwrap(), &m2).unwrap();
            let one = apply_point_transform(&s, &m2.compose(&m1).unwrap()).unwrap();
            prop_assert!((two.norm_sqr() - s.norm_sqr()).abs() <= 1e-14 || two.len() < s.len());
            prop_assert_eq!(two.len(), one.len());
            for (p, q) in two.points().iter().zip(one.points()) {
                prop_assert!((p[0] - q[0]).abs() <= 1e-12 * (1.0 + p[0].abs()));
                prop_assert!((p[1] - q[1]).abs() <= 1e-12 * (1.0 + p[1].abs()));
            }
        }
    }
}
