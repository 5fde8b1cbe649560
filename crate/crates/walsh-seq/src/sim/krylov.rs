//! Action of `exp(−i t H)` on a state via Lanczos with full reorthogonalisation.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use super::pauli::PauliStringOperator;
use super::SimError;

pub const DEFAULT_TOL: f64 = 1e-12;
const MAX_KRYLOV_DIM: usize = 40;
const MAX_HALVINGS: usize = 40;

fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn norm(a: &[Complex64]) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

/// `exp(−i h T) e_1` for the symmetric tridiagonal `T` with diagonal `alpha` and off-diagonal `beta`.
fn small_exp(alpha: &[f64], beta: &[f64], h: f64) -> Vec<Complex64> {
    let m = alpha.len();
    let mut t = DMatrix::<f64>::zeros(m, m);
    for k in 0..m {
        t[(k, k)] = alpha[k];
        if k + 1 < m {
            t[(k, k + 1)] = beta[k];
            t[(k + 1, k)] = beta[k];
        }
    }
    let eig = SymmetricEigen::new(t);
    let q = &eig.eigenvectors;
    let phases: Vec<Complex64> = (0..m)
        .map(|j| Complex64::from_polar(q[(0, j)], -h * eig.eigenvalues[j]))
        .collect();
    (0..m).map(|k| (0..m).map(|j| phases[j] * q[(k, j)]).sum()).collect()
}

/// Replaces `psi` by `exp(−i t H) psi` with an estimated 2-norm error at most `tol·‖psi‖`.
pub fn evolve_in_place(
    h: &PauliStringOperator,
    t: f64,
    psi: &mut [Complex64],
    tol: f64,
) -> Result<(), SimError> {
    if psi.len() != h.dim() {
        return Err(SimError::DimensionMismatch { expected: h.dim(), got: psi.len() });
    }
    if !t.is_finite() || !(tol > 0.0) {
        return Err(SimError::InvalidArgument(format!("time {t} / tolerance {tol}")));
    }
    if t == 0.0 || h.is_zero() {
        return Ok(());
    }
    let total = t.abs();
    let sign = t.signum();
    let mut done = 0.0;
    let mut step = total;
    let mut halvings = 0;
    let mut basis: Vec<Vec<Complex64>> = Vec::with_capacity(MAX_KRYLOV_DIM + 1);
    let mut w = vec![Complex64::new(0.0, 0.0); psi.len()];
    while done < total {
        let hstep = step.min(total - done);
        let beta0 = norm(psi);
        if beta0 == 0.0 {
            return Ok(());
        }
        basis.clear();
        basis.push(psi.iter().map(|x| x / beta0).collect());
        let mut alpha: Vec<f64> = Vec::new();
        let mut beta: Vec<f64> = Vec::new();
        let budget = tol * hstep / total;
        let mut accepted: Option<Vec<Complex64>> = None;
        let kmax = MAX_KRYLOV_DIM.min(psi.len());
        for j in 0..kmax {
            h.apply(&basis[j], &mut w);
            let a = dot(&basis[j], &w).re;
            alpha.push(a);
            for _ in 0..2 {
                for v in &basis {
                    let c = dot(v, &w);
                    w.iter_mut().zip(v).for_each(|(x, y)| *x -= c * y);
                }
            }
            let b = norm(&w);
            let c = small_exp(&alpha, &beta, sign * hstep);
            let err = b * c[j].norm() * beta0;
            if err <= budget || b == 0.0 || j + 1 == psi.len() {
                accepted = Some(c);
                break;
            }
            beta.push(b);
            basis.push(w.iter().map(|x| x / b).collect());
        }
        match accepted {
            Some(c) => {
                psi.iter_mut().for_each(|x| *x = Complex64::new(0.0, 0.0));
                for (ck, v) in c.iter().zip(&basis) {
                    let s = ck * beta0;
                    psi.iter_mut().zip(v).for_each(|(x, y)| *x += s * y);
                }
                done += hstep;
                if alpha.len() < kmax / 2 {
                    step *= 1.5;
                }
            }
            None => {
                halvings += 1;
                if halvings > MAX_HALVINGS {
                    return Err(SimError::NonConvergence { time: t, tol });
                }
                step = hstep / 2.0;
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::pauli::PauliString;
    use nalgebra::DVector;

    fn dense(op: &PauliStringOperator) -> DMatrix<Complex64> {
        let d = op.dim();
        let mut m = DMatrix::zeros(d, d);
        let mut e = vec![Complex64::new(0.0, 0.0); d];
        let mut out = vec![Complex64::new(0.0, 0.0); d];
        for c in 0..d {
            e.iter_mut().for_each(|x| *x = Complex64::new(0.0, 0.0));
            e[c] = Complex64::new(1.0, 0.0);
            op.apply(&e, &mut out);
            for r in 0..d {
                m[(r, c)] = out[r];
            }
        }
        m
    }

    #[test]
    fn matches_dense_exponential() {
        let n = 4;
        let terms = [
            (0.7, "XXII"),
            (-1.1, "IYYI"),
            (0.3, "ZIIZ"),
            (0.9, "IIXZ"),
            (0.25, "YIIY"),
        ];
        let op = PauliStringOperator::new(
            n,
            terms.iter().map(|(c, s)| (*c, PauliString::parse(s).unwrap())),
        );
        let hd = dense(&op);
        let eig = SymmetricEigen::new(hd.clone());
        let t = 2.3;
        let mut psi: Vec<Complex64> =
            (0..16).map(|k| Complex64::new((k as f64).sin(), (k as f64 * 0.3).cos())).collect();
        let nrm = norm(&psi);
        psi.iter_mut().for_each(|x| *x /= nrm);
        let v = DVector::from_vec(psi.clone());
        let u = &eig.eigenvectors;
        let phases = DVector::from_iterator(
            16,
            eig.eigenvalues.iter().map(|&l| Complex64::from_polar(1.0, -t * l)),
        );
        let expect = u * (u.adjoint() * v).component_mul(&phases);
        evolve_in_place(&op, t, &mut psi, 1e-13).unwrap();
        let err: f64 = psi.iter().zip(expect.iter()).map(|(a, b)| (a - b).norm_sqr()).sum();
        assert!(err.sqrt() < 1e-11, "error {}", err.sqrt());
    }

    #[test]
    fn forward_then_backward_is_identity() {
        let op = PauliStringOperator::new(
            3,
            [(1.0, PauliString::parse("XXI").unwrap()), (0.5, PauliString::parse("IZY").unwrap())],
        );
        let mut psi = vec![Complex64::new(0.0, 0.0); 8];
        psi[3] = Complex64::new(1.0, 0.0);
        let orig = psi.clone();
        evolve_in_place(&op, 5.0, &mut psi, 1e-13).unwrap();
        evolve_in_place(&op, -5.0, &mut psi, 1e-13).unwrap();
        let err: f64 = psi.iter().zip(&orig).map(|(a, b)| (a - b).norm()).sum();
        assert!(err < 1e-11);
    }

    #[test]
    fn zero_time_is_noop() {
        let op = PauliStringOperator::new(1, [(1.0, PauliString::parse("X").unwrap())]);
        let mut psi = vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)];
        evolve_in_place(&op, 0.0, &mut psi, 1e-12).unwrap();
        assert_eq!(psi[0], Complex64::new(1.0, 0.0));
    }
}
