use super::algebra::LieAlgebraElement;
use super::entire::{analytic_c, analytic_s, divided_c, divided_s};
use super::spectrum::{dets, lambda_pm};
use crate::error::Result;
use crate::scalar::{lit, Scalar};

/// Even/odd resummations of the power coefficients:
/// `x_e = Σ xₙ/(2n)!`, `x_o = Σ xₙ/(2n+1)!` for x ∈ {α, β, γ}, with
/// α₀ = γ₀ = 1, β₀ = 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesCoefficients<T> {
    pub alpha_e: T,
    pub alpha_o: T,
    pub beta_e: T,
    pub beta_o: T,
    pub gamma_e: T,
    pub gamma_o: T,
}

/// Evaluates the six coefficients with the entire functions `C`, `S` and
/// their divided differences across λ₊, λ₋ (confluent when Δ is tiny).
pub fn series_coeffs<T: Scalar>(l: &LieAlgebraElement<T>) -> Result<SeriesCoefficients<T>> {
    let ep = lambda_pm(l)?;
    let d = dets(l);
    let (lp, lm) = (ep.lambda_plus, ep.lambda_minus);
    let half = lit::<T>(0.5);
    let skew = (d.dc - d.da) * half;

    let c_mean = (analytic_c(lp) + analytic_c(lm)) * half;
    let s_mean = (analytic_s(lp) + analytic_s(lm)) * half;
    let c_div = divided_c(lp, lm);
    let s_div = divided_s(lp, lm);

    Ok(SeriesCoefficients {
        alpha_e: c_mean + skew * c_div,
        alpha_o: s_mean + skew * s_div,
        beta_e: c_div,
        beta_o: s_div,
        gamma_e: c_mean - skew * c_div,
        gamma_o: s_mean - skew * s_div,
    })
}
