use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::compiler::Su2;
use crate::walsh::PulseSymbol;

/// Pure state of `n_qubits` qubits; qubit `i` is bit `i` of the amplitude index.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    pub fn zero(n_qubits: usize) -> Self {
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n_qubits];
        amps[0] = Complex64::new(1.0, 0.0);
        StateVector { n_qubits, amps }
    }

    pub fn basis(n_qubits: usize, index: usize) -> Self {
        let mut s = StateVector::zero(n_qubits);
        s.amps[0] = Complex64::new(0.0, 0.0);
        s.amps[index] = Complex64::new(1.0, 0.0);
        s
    }

    /// Normalises the given amplitudes; `None` for a zero vector or a bad length.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Option<Self> {
        let n_qubits = amps.len().checked_ilog2()? as usize;
        if amps.len() != 1 << n_qubits {
            return None;
        }
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if !(norm > 0.0 && norm.is_finite()) {
            return None;
        }
        Some(StateVector { n_qubits, amps: amps.into_iter().map(|a| a / norm).collect() })
    }

    /// Haar-random state from normalised complex Gaussian amplitudes.
    pub fn haar<R: Rng + ?Sized>(n_qubits: usize, rng: &mut R) -> Self {
        let amps = (0..1usize << n_qubits)
            .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        StateVector::from_amplitudes(amps).expect("gaussian vector is nonzero")
    }

    /// `self ⊗ other` with `self` on the low qubits.
    pub fn tensor(&self, other: &StateVector) -> StateVector {
        let mut amps = Vec::with_capacity(self.amps.len() * other.amps.len());
        for b in &other.amps {
            for a in &self.amps {
                amps.push(a * b);
            }
        }
        StateVector { n_qubits: self.n_qubits + other.n_qubits, amps }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amps
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn renormalize(&mut self) {
        let n = self.norm();
        self.amps.iter_mut().for_each(|a| *a /= n);
    }

    pub fn inner(&self, other: &StateVector) -> Complex64 {
        self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum()
    }

    /// Applies the row-major 2×2 matrix `u` to `qubit`.
    pub fn apply_1q(&mut self, qubit: usize, u: &[[Complex64; 2]; 2]) {
        let bit = 1usize << qubit;
        for b in 0..self.amps.len() {
            if b & bit == 0 {
                let (a0, a1) = (self.amps[b], self.amps[b | bit]);
                self.amps[b] = u[0][0] * a0 + u[0][1] * a1;
                self.amps[b | bit] = u[1][0] * a0 + u[1][1] * a1;
            }
        }
    }

    pub fn apply_su2(&mut self, qubit: usize, g: Su2) {
        if !g.is_identity() {
            self.apply_1q(qubit, &g.matrix());
        }
    }

    /// Applies the Pauli `p` to `qubit` exactly.
    pub fn apply_pauli(&mut self, qubit: usize, p: PulseSymbol) {
        let bit = 1usize << qubit;
        let i = Complex64::new(0.0, 1.0);
        match p {
            PulseSymbol::I => {}
            PulseSymbol::X => {
                for b in 0..self.amps.len() {
                    if b & bit == 0 {
                        self.amps.swap(b, b | bit);
                    }
                }
            }
            PulseSymbol::Y => {
                for b in 0..self.amps.len() {
                    if b & bit == 0 {
                        let (a0, a1) = (self.amps[b], self.amps[b | bit]);
                        self.amps[b] = -i * a1;
                        self.amps[b | bit] = i * a0;
                    }
                }
            }
            PulseSymbol::Z => {
                for (b, a) in self.amps.iter_mut().enumerate() {
                    if b & bit != 0 {
                        *a = -*a;
                    }
                }
            }
        }
    }

    /// Applies `exp(i θ P_a P_b)` for Paulis on two distinct qubits.
    pub fn apply_two_qubit_rotation(
        &mut self,
        a: usize,
        pa: PulseSymbol,
        b: usize,
        pb: PulseSymbol,
        theta: f64,
    ) {
        let mut flipped = self.clone();
        flipped.apply_pauli(a, pa);
        flipped.apply_pauli(b, pb);
        let (c, s) = (Complex64::new(theta.cos(), 0.0), Complex64::new(0.0, theta.sin()));
        for (x, y) in self.amps.iter_mut().zip(&flipped.amps) {
            *x = c * *x + s * y;
        }
    }
}
