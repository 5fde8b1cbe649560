//! Pauli strings as bit masks and matrix-free Hermitian operators built from them.
//!
//! Qubit `i` is bit `i` of the basis-state index. A string with masks `(x, z)` acts as
//! `P|b⟩ = i^{|x∧z|} (−1)^{|b∧z|} |b ⊕ x⟩`.

use num_complex::Complex64;

use crate::walsh::PulseSymbol;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliString {
    pub x: u64,
    pub z: u64,
}

impl PauliString {
    pub const IDENTITY: PauliString = PauliString { x: 0, z: 0 };

    pub fn single(qubit: usize, p: PulseSymbol) -> PauliString {
        let b = 1u64 << qubit;
        match p {
            PulseSymbol::I => PauliString::IDENTITY,
            PulseSymbol::X => PauliString { x: b, z: 0 },
            PulseSymbol::Y => PauliString { x: b, z: b },
            PulseSymbol::Z => PauliString { x: 0, z: b },
        }
    }

    /// Product of the given single-qubit factors.
    pub fn from_factors(factors: &[(usize, PulseSymbol)]) -> PauliString {
        let mut s = PauliString::IDENTITY;
        for &(q, p) in factors {
            let f = PauliString::single(q, p);
            s.x ^= f.x;
            s.z ^= f.z;
        }
        s
    }

    /// Parses strings such as `"XIZY"`, qubit 0 first.
    pub fn parse(text: &str) -> Option<PauliString> {
        let mut f = Vec::new();
        for (q, c) in text.chars().enumerate() {
            let p = match c {
                'I' => PulseSymbol::I,
                'X' => PulseSymbol::X,
                'Y' => PulseSymbol::Y,
                'Z' => PulseSymbol::Z,
                _ => return None,
            };
            f.push((q, p));
        }
        Some(PauliString::from_factors(&f))
    }

    pub fn symbol(&self, qubit: usize) -> PulseSymbol {
        let b = 1u64 << qubit;
        match (self.x & b != 0, self.z & b != 0) {
            (false, false) => PulseSymbol::I,
            (true, false) => PulseSymbol::X,
            (true, true) => PulseSymbol::Y,
            (false, true) => PulseSymbol::Z,
        }
    }

    pub fn weight(&self) -> u32 {
        (self.x | self.z).count_ones()
    }

    /// `i^{number of Y factors}`.
    pub fn y_phase(&self) -> Complex64 {
        match (self.x & self.z).count_ones() % 4 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        }
    }

    pub fn commutes_with(&self, other: &PauliString) -> bool {
        ((self.x & other.z).count_ones() + (self.z & other.x).count_ones()).is_multiple_of(2)
    }
}

/// Real linear combination of Pauli strings on `n_qubits` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliStringOperator {
    n_qubits: usize,
    terms: Vec<(f64, PauliString)>,
    /// `(x mask, first term, end term)` ranges of `terms` sharing an x mask.
    groups: Vec<(u64, usize, usize)>,
}

impl PauliStringOperator {
    pub fn new(n_qubits: usize, terms: impl IntoIterator<Item = (f64, PauliString)>) -> Self {
        assert!(n_qubits <= 30, "state vectors beyond 30 qubits are not supported");
        let mut merged: std::collections::BTreeMap<PauliString, f64> = Default::default();
        for (c, s) in terms {
            let limit = if n_qubits == 64 { u64::MAX } else { (1u64 << n_qubits) - 1 };
            assert!(s.x & !limit == 0 && s.z & !limit == 0, "pauli string exceeds register");
            *merged.entry(s).or_default() += c;
        }
        let mut terms: Vec<(f64, PauliString)> =
            merged.into_iter().filter(|(_, c)| *c != 0.0).map(|(s, c)| (c, s)).collect();
        terms.sort_by_key(|t| (t.1.x, t.1.z));
        let mut groups = Vec::new();
        let mut start = 0;
        for k in 1..=terms.len() {
            if k == terms.len() || terms[k].1.x != terms[start].1.x {
                groups.push((terms[start].1.x, start, k));
                start = k;
            }
        }
        PauliStringOperator { n_qubits, terms, groups }
    }

    pub fn zero(n_qubits: usize) -> Self {
        PauliStringOperator::new(n_qubits, [])
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        1usize << self.n_qubits
    }

    pub fn terms(&self) -> &[(f64, PauliString)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Σ |c|`, an upper bound on the spectral norm.
    pub fn norm_bound(&self) -> f64 {
        self.terms.iter().map(|t| t.0.abs()).sum()
    }

    pub fn scaled(&self, s: f64) -> Self {
        PauliStringOperator::new(self.n_qubits, self.terms.iter().map(|&(c, p)| (c * s, p)))
    }

    pub fn plus(&self, other: &PauliStringOperator) -> Self {
        assert_eq!(self.n_qubits, other.n_qubits);
        PauliStringOperator::new(
            self.n_qubits,
            self.terms.iter().chain(&other.terms).copied(),
        )
    }

    /// `P† H P` for a Pauli layer `P`: each term picks up the sign of its anticommutation.
    pub fn conjugated_by(&self, layer: &PauliString) -> Self {
        PauliStringOperator::new(
            self.n_qubits,
            self.terms.iter().map(|&(c, s)| (if s.commutes_with(layer) { c } else { -c }, s)),
        )
    }

    /// `out = H ψ`.
    pub fn apply(&self, psi: &[Complex64], out: &mut [Complex64]) {
        let dim = self.dim();
        assert!(psi.len() == dim && out.len() == dim);
        out.iter_mut().for_each(|o| *o = Complex64::new(0.0, 0.0));
        let mut coeffs: Vec<(Complex64, u64)> = Vec::new();
        for &(x, a, b) in &self.groups {
            coeffs.clear();
            coeffs.extend(self.terms[a..b].iter().map(|&(c, s)| (s.y_phase() * c, s.z)));
            let x = x as usize;
            if coeffs.len() == 1 {
                let (c, z) = coeffs[0];
                for (b, &amp) in psi.iter().enumerate() {
                    let v = if (b as u64 & z).count_ones().is_multiple_of(2) { c } else { -c };
                    out[b ^ x] += v * amp;
                }
            } else {
                for (b, &amp) in psi.iter().enumerate() {
                    let mut v = Complex64::new(0.0, 0.0);
                    for &(c, z) in &coeffs {
                        if (b as u64 & z).count_ones().is_multiple_of(2) {
                            v += c;
                        } else {
                            v -= c;
                        }
                    }
                    out[b ^ x] += v * amp;
                }
            }
        }
    }

    /// `⟨ψ|H|ψ⟩`.
    pub fn expectation(&self, psi: &[Complex64]) -> f64 {
        let mut out = vec![Complex64::new(0.0, 0.0); psi.len()];
        self.apply(psi, &mut out);
        psi.iter().zip(&out).map(|(a, b)| (a.conj() * b).re).sum()
    }
}
