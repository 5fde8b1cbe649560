use crate::sim::{PauliString, PauliStringOperator, StateVector};

/// `|⟨φ|ψ⟩|` for normalised inputs.
pub fn fidelity(psi: &StateVector, phi: &StateVector) -> f64 {
    phi.inner(psi).norm() / (psi.norm() * phi.norm())
}

/// `1 − |⟨φ|ψ⟩|`, accurate far below 1e−16.
pub fn infidelity(psi: &StateVector, phi: &StateVector) -> f64 {
    let r2 = orthogonal_weight(psi, phi);
    r2 / (1.0 + (1.0 - r2).max(0.0).sqrt())
}

/// `1 − |⟨φ|ψ⟩|²` from the component of `ψ` orthogonal to `φ`.
fn orthogonal_weight(psi: &StateVector, phi: &StateVector) -> f64 {
    let np = psi.norm();
    let nf = phi.norm();
    let o = phi.inner(psi) / (nf * nf);
    let r2: f64 = psi
        .amplitudes()
        .iter()
        .zip(phi.amplitudes())
        .map(|(a, b)| (a - o * b).norm_sqr())
        .sum();
    r2 / (np * np)
}

/// `⟨ψ|O|ψ⟩` per stabilizer.
pub fn stabilizer_expectations(psi: &StateVector, stabilizers: &[PauliStringOperator]) -> Vec<f64> {
    stabilizers.iter().map(|s| s.expectation(psi.amplitudes())).collect()
}

/// `1 − |⟨P⟩|` for a Pauli string, computed as `min ‖ψ ∓ Pψ‖² / 2`.
pub fn pauli_deviation(psi: &StateVector, p: PauliString) -> f64 {
    let mut q = psi.clone();
    for qubit in 0..psi.n_qubits() {
        q.apply_pauli(qubit, p.symbol(qubit));
    }
    let (mut minus, mut plus) = (0.0, 0.0);
    for (a, b) in psi.amplitudes().iter().zip(q.amplitudes()) {
        minus += (a - b).norm_sqr();
        plus += (a + b).norm_sqr();
    }
    minus.min(plus) / (2.0 * psi.norm().powi(2))
}

/// Least-squares slope of `log y` against `log x`, ignoring points with
/// `y ≤ 10·floor`. Returns `(slope, points used)`.
pub fn log_log_slope(xs: &[f64], ys: &[f64], floor: f64) -> Option<(f64, usize)> {
    let pts: Vec<(f64, f64)> = xs
        .iter()
        .zip(ys)
        .filter(|(x, y)| **x > 0.0 && **y > 10.0 * floor && y.is_finite())
        .map(|(x, y)| (x.ln(), y.ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    (sxx > 0.0).then(|| (sxy / sxx, pts.len()))
}

/// `n` log-spaced points from `lo` to `hi` inclusive.
pub fn log_space(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    let (a, b) = (lo.ln(), hi.ln());
    (0..n).map(|k| (a + (b - a) * k as f64 / (n - 1) as f64).exp()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::walsh::PulseSymbol;
    use num_complex::Complex64;
    use rand::SeedableRng;

    #[test]
    fn infidelity_of_tiny_rotation() {
        let a = StateVector::zero(1);
        let eps = 1e-9_f64;
        let b = StateVector::from_amplitudes(vec![
            Complex64::new(eps.cos(), 0.0),
            Complex64::new(eps.sin(), 0.0),
        ])
        .unwrap();
        let d = infidelity(&b, &a);
        assert!((d / (eps * eps / 2.0) - 1.0).abs() < 1e-6);
        assert_eq!(infidelity(&a, &a), 0.0);
    }

    #[test]
    fn fidelity_and_infidelity_agree() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        let a = StateVector::haar(3, &mut rng);
        let b = StateVector::haar(3, &mut rng);
        assert!((fidelity(&a, &b) + infidelity(&a, &b) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn deviation_of_eigenstates() {
        let s = StateVector::basis(2, 1);
        let zz = PauliString::from_factors(&[(0, PulseSymbol::Z), (1, PulseSymbol::Z)]);
        assert_eq!(pauli_deviation(&s, zz), 0.0);
        let xx = PauliString::from_factors(&[(0, PulseSymbol::X), (1, PulseSymbol::X)]);
        assert!((pauli_deviation(&s, xx) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn slope_of_power_law() {
        let xs = log_space(1e-3, 1e-2, 6);
        let ys: Vec<f64> = xs.iter().map(|x| 3.0 * x.powi(4)).collect();
        let (s, n) = log_log_slope(&xs, &ys, 0.0).unwrap();
        assert!((s - 4.0).abs() < 1e-9);
        assert_eq!(n, 6);
    }
}
