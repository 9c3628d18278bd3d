//! The entire functions `C(λ) = cosh√λ` and `S(λ) = sinh√λ/√λ`, their
//! derivatives, and numerically stable divided differences.
//!
//! Both functions are real on the whole real line: for λ < 0 they turn into
//! `cos√−λ` and `sin√−λ/√−λ`. Near zero they are summed as power series so
//! there is no branch switch visible in the output.

use crate::scalar::{lit, Scalar};

/// Below this |λ| the Maclaurin series is used.
const SERIES_RADIUS: f64 = 0.25;
const MAX_TERMS: usize = 80;

/// Σ λᵏ / (2k + offset)!, offset ∈ {0, 1}.
fn maclaurin<T: Scalar>(lambda: T, offset: u32) -> T {
    let mut term = T::one();
    let mut sum = T::one();
    for k in 1..MAX_TERMS {
        let n = lit::<T>((2 * k) as f64 + offset as f64);
        term = term * lambda / (n * (n - T::one()));
        sum += term;
        if term.abs() <= T::epsilon() * lit(0.5) * sum.abs() {
            break;
        }
    }
    sum
}

/// `C(λ)`: cosh√λ for λ ≥ 0, cos√−λ for λ < 0.
pub fn analytic_c<T: Scalar>(lambda: T) -> T {
    if lambda.abs() < lit(SERIES_RADIUS) {
        maclaurin(lambda, 0)
    } else if lambda > T::zero() {
        lambda.sqrt().cosh()
    } else {
        (-lambda).sqrt().cos()
    }
}

/// `S(λ)`: sinh√λ/√λ for λ > 0, 1 at 0, sin√−λ/√−λ for λ < 0.
pub fn analytic_s<T: Scalar>(lambda: T) -> T {
    if lambda.abs() < lit(SERIES_RADIUS) {
        maclaurin(lambda, 1)
    } else if lambda > T::zero() {
        let u = lambda.sqrt();
        u.sinh() / u
    } else {
        let u = (-lambda).sqrt();
        u.sin() / u
    }
}

/// `C′(λ) = S(λ)/2`.
pub fn analytic_c_prime<T: Scalar>(lambda: T) -> T {
    analytic_s(lambda) * lit(0.5)
}

/// `S′(λ) = (C − S)/(2λ)`, summed as Σ k λᵏ⁻¹/(2k+1)! for |λ| < 1.
pub fn analytic_s_prime<T: Scalar>(lambda: T) -> T {
    if lambda.abs() < T::one() {
        let mut pow = T::one();
        let mut fact = lit::<T>(6.0);
        let mut sum = T::one() / fact;
        for k in 2..MAX_TERMS {
            pow *= lambda;
            let n = lit::<T>((2 * k + 1) as f64);
            fact = fact * n * (n - T::one());
            let term = lit::<T>(k as f64) * pow / fact;
            sum += term;
            if term.abs() <= T::epsilon() * lit(0.5) * sum.abs() {
                break;
            }
        }
        sum
    } else {
        (analytic_c(lambda) - analytic_s(lambda)) / (lambda + lambda)
    }
}

#[derive(Clone, Copy)]
enum Kind {
    C,
    S,
}

fn eval<T: Scalar>(kind: Kind, x: T) -> T {
    match kind {
        Kind::C => analytic_c(x),
        Kind::S => analytic_s(x),
    }
}

fn deriv<T: Scalar>(kind: Kind, x: T) -> T {
    match kind {
        Kind::C => analytic_c_prime(x),
        Kind::S => analytic_s_prime(x),
    }
}

/// Divided difference of the Maclaurin series: Σ f_k·h_{k−1}(x, y) with
/// h_j the complete homogeneous symmetric polynomial of degree j.
fn divided_series<T: Scalar>(kind: Kind, x: T, y: T) -> T {
    let offset = match kind {
        Kind::C => 0.0,
        Kind::S => 1.0,
    };
    let mut coeff = T::one();
    let mut h = T::one();
    let mut y_pow = T::one();
    let mut sum = T::zero();
    for k in 1..MAX_TERMS {
        let n = lit::<T>(2.0 * k as f64 + offset);
        coeff = coeff / (n * (n - T::one()));
        if k > 1 {
            y_pow *= y;
            h = x * h + y_pow;
        }
        let term = coeff * h;
        sum += term;
        if term.abs() <= T::epsilon() * lit(0.25) * sum.abs() && k > 2 {
            break;
        }
    }
    sum
}

fn divided<T: Scalar>(kind: Kind, x: T, y: T) -> T {
    let (x, y) = if x >= y { (x, y) } else { (y, x) };
    let delta = x - y;
    let big = x.abs().max(y.abs());
    if delta <= lit::<T>(1e-8) * T::one().max(x.abs()) {
        return deriv(kind, (x + y) * lit(0.5));
    }
    if big <= T::one() {
        return divided_series(kind, x, y);
    }
    let direct = || (eval(kind, x) - eval(kind, y)) / delta;
    let small = x.abs().min(y.abs());
    if (x > T::zero()) != (y > T::zero()) || small <= lit::<T>(0.25) * big {
        return direct();
    }
    let half = lit::<T>(0.5);
    if y > T::zero() {
        // u = √x > v = √y; σ = u + v, δ = u − v = Δ/σ
        let (u, v) = (x.sqrt(), y.sqrt());
        let sigma = u + v;
        let d = delta / sigma;
        let sinhc = |z: T| analytic_s(z * z);
        match kind {
            Kind::C => half * sinhc(sigma * half) * sinhc(d * half),
            Kind::S => {
                let cosh_half = (sigma * half).cosh();
                (v * cosh_half * sinhc(d * half) - v.sinh()) / (sigma * u * v)
            }
        }
    } else {
        // x = −a², y = −b² with a < b; δ = b − a = Δ/σ
        let (a, b) = ((-x).sqrt(), (-y).sqrt());
        let sigma = a + b;
        let d = delta / sigma;
        let sinc = |z: T| analytic_s(-(z * z));
        match kind {
            Kind::C => half * sinc(sigma * half) * sinc(d * half),
            Kind::S => {
                let cos_half = (sigma * half).cos();
                (b.sin() - b * cos_half * sinc(d * half)) / (sigma * a * b)
            }
        }
    }
}

/// `C[x, y] = (C(x) − C(y))/(x − y)`, confluent limit `C′` when x ≈ y.
pub fn divided_c<T: Scalar>(x: T, y: T) -> T {
    divided(Kind::C, x, y)
}

/// `S[x, y] = (S(x) − S(y))/(x − y)`, confluent limit `S′` when x ≈ y.
pub fn divided_s<T: Scalar>(x: T, y: T) -> T {
    divided(Kind::S, x, y)
}
