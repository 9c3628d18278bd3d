//! The closed-form correspondence between sp(4,ℝ) and Sp(4,ℝ).

pub mod algebra;
pub mod entire;
pub mod group;
pub mod oracle;
pub mod series;
pub mod spectrum;

pub use algebra::{
    bracket, build_m, d_matrix, iota, iota_inv, omega_y, LieAlgebraElement, PolynomialCoefficients,
};
pub use entire::{analytic_c, analytic_c_prime, analytic_s, analytic_s_prime, divided_c, divided_s};
pub use group::{
    exp_map, exp_sp4, gamma2, inverse_exp, m_squared, power_exp, to_x_order, to_y_order,
    transpose_identity_check, ExpMethod, ExpResult, Ordering, SymplecticMatrix, Tolerances,
};
pub use oracle::expm_taylor;
pub use series::{series_coeffs, SeriesCoefficients};
pub use spectrum::{
    char_poly_check, char_poly_from_traces, lambda_pm, power_coeffs, power_coeffs_closed_form,
    symplectic_eigenvalues, trace_power, EigenPair,
};

#[cfg(test)]
pub(crate) mod test_support {
    use super::algebra::LieAlgebraElement;
    use super::spectrum::lambda_pm;
    use proptest::prelude::*;

    pub fn arb_lie(bound: f64) -> impl Strategy<Value = LieAlgebraElement<f64>> {
        prop::array::uniform10(-bound..bound).prop_map(|e| {
            LieAlgebraElement::from_entries(e[0], e[1], e[2], e[3], e[4], e[5], e[6], e[7], e[8], e[9])
        })
    }

    /// Generators whose λ± are real.
    pub fn arb_real_lie(bound: f64) -> impl Strategy<Value = LieAlgebraElement<f64>> {
        arb_lie(bound).prop_filter("complex λ±", |l| lambda_pm(l).is_ok())
    }
}
