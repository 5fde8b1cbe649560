//! Trotter error bounds for power-law resources.

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BoundError {
    #[error("no bound for alpha = {0}; need alpha >= 0 and alpha != 1")]
    UnsupportedAlpha(f64),
    #[error("invalid bound argument: {0}")]
    InvalidArgument(String),
}

/// `a_α = 2 (α/(α−1))²` for `α > 1`.
pub fn a_alpha(alpha: f64) -> f64 {
    2.0 * (alpha / (alpha - 1.0)).powi(2)
}

/// `b_α = 2 / ((1−α)² (2−α))` for `α < 1`.
pub fn b_alpha(alpha: f64) -> f64 {
    2.0 / ((1.0 - alpha).powi(2) * (2.0 - alpha))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrotterBound {
    pub alpha: f64,
    /// `a_α` or `b_α`.
    pub constant: f64,
    /// Effective system-size factor `N` or `N^{3−2α}`.
    pub size_factor: f64,
    pub value: f64,
}

fn check_alpha(alpha: f64) -> Result<(), BoundError> {
    if !alpha.is_finite() || alpha < 0.0 || alpha == 1.0 {
        return Err(BoundError::UnsupportedAlpha(alpha));
    }
    Ok(())
}

fn size_terms(alpha: f64, n: usize) -> Result<(f64, f64), BoundError> {
    check_alpha(alpha)?;
    if n < 2 {
        return Err(BoundError::InvalidArgument(format!("need at least 2 qubits, got {n}")));
    }
    Ok(if alpha > 1.0 {
        (a_alpha(alpha), n as f64)
    } else {
        (b_alpha(alpha), (n as f64).powf(3.0 - 2.0 * alpha))
    })
}

/// Bound `C_α · S_N · (J T) · (J Σ_q τ_q)` on the first-order product-formula error.
pub fn trotter_bound(
    alpha: f64,
    n_qubits: usize,
    j: f64,
    block_times: &[f64],
    total_time: f64,
) -> Result<TrotterBound, BoundError> {
    let (constant, size_factor) = size_terms(alpha, n_qubits)?;
    if block_times.iter().any(|t| !(*t >= 0.0)) || !(total_time >= 0.0) || !(j > 0.0) {
        return Err(BoundError::InvalidArgument("times and J must be non-negative".into()));
    }
    let cycle: f64 = block_times.iter().sum();
    Ok(TrotterBound {
        alpha,
        constant,
        size_factor,
        value: constant * size_factor * (j * total_time) * (j * cycle),
    })
}

/// Cycle period `J Σ τ_q` that keeps the bound at `kappa` for a run of length `J T`.
pub fn cycle_period_for(alpha: f64, n_qubits: usize, jt: f64, kappa: f64) -> Result<f64, BoundError> {
    let (constant, size_factor) = size_terms(alpha, n_qubits)?;
    if !(jt > 0.0 && kappa > 0.0) {
        return Err(BoundError::InvalidArgument("JT and kappa must be positive".into()));
    }
    Ok(kappa / (constant * size_factor * jt))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants() {
        assert_eq!(a_alpha(3.0), 4.5);
        assert_eq!(b_alpha(0.2), 2.0 / (0.8f64.powi(2) * 1.8));
        assert!(trotter_bound(1.0, 4, 1.0, &[0.1], 1.0).is_err());
    }

    #[test]
    fn bound_is_linear_in_times() {
        let a = trotter_bound(3.0, 8, 1.0, &[0.1, 0.1], 2.0).unwrap().value;
        let b = trotter_bound(3.0, 8, 1.0, &[0.2, 0.2], 2.0).unwrap().value;
        assert!((b / a - 2.0).abs() < 1e-14);
        assert!((a - 4.5 * 8.0 * 2.0 * 0.2).abs() < 1e-12);
    }

    #[test]
    fn period_inverts_bound() {
        let p = cycle_period_for(0.2, 10, 3.0, 0.01).unwrap();
        let v = trotter_bound(0.2, 10, 1.0, &[p], 3.0).unwrap().value;
        assert!((v - 0.01).abs() < 1e-15);
    }
}
