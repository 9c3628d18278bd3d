//! Brute-force matrix exponential used as an independent reference.

use crate::linalg::Mat4;
use crate::scalar::{lit, Scalar};

/// Scaling and squaring with a Taylor core: pick k with ‖m‖∞/2ᵏ < 0.5, sum
/// the series of m/2ᵏ to convergence, then square k times.
pub fn expm_taylor<T: Scalar>(m: &Mat4<T>) -> Mat4<T> {
    let norm = m.norm_inf();
    let mut k = 0i32;
    let half = lit::<T>(0.5);
    while norm * lit::<T>(2f64.powi(-k)) >= half {
        k += 1;
    }
    let scaled = m.scale(lit(2f64.powi(-k)));
    let mut sum = Mat4::identity();
    let mut term = Mat4::identity();
    for n in 1..40 {
        term = (term * scaled).scale(T::one() / lit(n as f64));
        sum = sum + term;
        if term.max_abs() <= T::epsilon() * lit(0.01) {
            break;
        }
    }
    for _ in 0..k {
        sum = sum * sum;
    }
    sum
}
