//! Dense-matrix oracles built from explicit Kronecker products.
//!
//! These avoid the bit-mask Pauli machinery used by the simulator so that the
//! two can check each other.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::compiler::{PulseSchedule, ResourceHamiltonian, Su2, TargetSpec};
use crate::walsh::PulseSymbol;

pub type Dense = DMatrix<Complex64>;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn pauli_matrix(p: PulseSymbol) -> Dense {
    let z = c(0.0, 0.0);
    let o = c(1.0, 0.0);
    let i = c(0.0, 1.0);
    match p {
        PulseSymbol::I => Dense::from_row_slice(2, 2, &[o, z, z, o]),
        PulseSymbol::X => Dense::from_row_slice(2, 2, &[z, o, o, z]),
        PulseSymbol::Y => Dense::from_row_slice(2, 2, &[z, -i, i, z]),
        PulseSymbol::Z => Dense::from_row_slice(2, 2, &[o, z, z, -o]),
    }
}

pub fn bloch_matrix(n: [f64; 3]) -> Dense {
    pauli_matrix(PulseSymbol::X) * c(n[0], 0.0)
        + pauli_matrix(PulseSymbol::Y) * c(n[1], 0.0)
        + pauli_matrix(PulseSymbol::Z) * c(n[2], 0.0)
}

pub fn su2_matrix(g: Su2) -> Dense {
    let m = g.matrix();
    Dense::from_row_slice(2, 2, &[m[0][0], m[0][1], m[1][0], m[1][1]])
}

/// `⊗` of per-qubit 2×2 factors; qubit `i` is bit `i` of the basis index.
pub fn kron_all(factors: &[Dense]) -> Dense {
    let mut m = Dense::from_element(1, 1, c(1.0, 0.0));
    for f in factors {
        m = f.kronecker(&m);
    }
    m
}

/// Embeds single-qubit operators at the given positions.
pub fn embed(n: usize, ops: &[(usize, Dense)]) -> Dense {
    let mut f: Vec<Dense> = (0..n).map(|_| pauli_matrix(PulseSymbol::I)).collect();
    for (q, m) in ops {
        f[*q] = m.clone();
    }
    kron_all(&f)
}

pub fn dense_resource(r: &ResourceHamiltonian) -> Dense {
    let n = r.n_qubits;
    let d = 1 << n;
    let mut h = Dense::zeros(d, d);
    for i in 0..n {
        for j in i + 1..n {
            for (jv, p) in [(r.jx[i][j], PulseSymbol::X), (r.jy[i][j], PulseSymbol::Y)] {
                if jv != 0.0 {
                    h += embed(n, &[(i, pauli_matrix(p)), (j, pauli_matrix(p))]) * c(jv, 0.0);
                }
            }
        }
    }
    for (i, f) in r.fields.iter().enumerate() {
        h += embed(n, &[(i, bloch_matrix(*f))]);
    }
    h
}

pub fn dense_target(t: &TargetSpec) -> Dense {
    let n = t.n_qubits;
    let d = 1 << n;
    let mut h = Dense::zeros(d, d);
    for term in &t.terms {
        let a = bloch_matrix(term.ops[0].bloch());
        let b = bloch_matrix(term.ops[1].bloch());
        h += embed(n, &[(term.i, a), (term.j, b)]) * c(term.strength, 0.0);
    }
    h
}

fn layer_matrix(layer: &[PulseSymbol]) -> Dense {
    kron_all(&layer.iter().map(|&p| pauli_matrix(p)).collect::<Vec<_>>())
}

/// `Σ_k f_k P_k† H P_k` over the layers of block `q`.
pub fn block_toggling_average(schedule: &PulseSchedule, q: usize, h: &Dense) -> Dense {
    let layers = schedule.block_layers(q);
    let fr = &schedule.blocks[q].interval_durations;
    let mut acc = Dense::zeros(h.nrows(), h.ncols());
    for (layer, f) in layers.iter().zip(fr) {
        let p = layer_matrix(layer);
        acc += (p.adjoint() * h * &p) * c(*f, 0.0);
    }
    acc
}

/// Cycle-averaged effective Hamiltonian per unit target time,
/// `Σ_q c_q S_q (Σ_k f_k P_k† H_R P_k) S_q†` with `S_q` the block's closing set pulse.
pub fn averaged_toggling_hamiltonian(schedule: &PulseSchedule, resource: &ResourceHamiltonian) -> Dense {
    let h = dense_resource(resource);
    let mut acc = Dense::zeros(h.nrows(), h.ncols());
    for (q, b) in schedule.blocks.iter().enumerate() {
        let s = kron_all(&b.set_post.iter().map(|g| su2_matrix(*g)).collect::<Vec<_>>());
        let avg = block_toggling_average(schedule, q, &h);
        acc += (&s * avg * s.adjoint()) * c(b.c, 0.0);
    }
    acc
}

/// Largest entry magnitude of `a − b`.
pub fn max_abs_diff(a: &Dense, b: &Dense) -> f64 {
    (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// First-order term in the rotation errors `δ` of block `q`'s toggling average during
/// cycle `l`, for pulses `exp(−i s (π+δ) A/2)`:
/// `Σ_{O} Σ_{i<j} J^O_ij (δ_i s_i Ô_i^j O_j + δ_j s_j O_i Ô_j^i)` with
/// `Ô_i^j = Σ_k f_k [w_{o_i}^{(k)} = −1] w_{o_j}^{(k)} · i O_i A_i^{(k)}`.
pub fn rotation_error_first_order(
    schedule: &PulseSchedule,
    resource: &ResourceHamiltonian,
    q: usize,
    deltas: &[f64],
    l: usize,
) -> Dense {
    let n = schedule.n_qubits;
    let layers = schedule.block_layers(q);
    let fr = &schedule.blocks[q].interval_durations;
    let d = 1 << n;
    let mut acc = Dense::zeros(d, d);
    let flips = |p: PulseSymbol, o: PulseSymbol| {
        p.conjugation_signs()[o.axis().expect("channel op")] < 0
    };
    let i_unit = c(0.0, 1.0);
    for (o, jm) in [(PulseSymbol::X, &resource.jx), (PulseSymbol::Y, &resource.jy)] {
        let om = pauli_matrix(o);
        for a in 0..n {
            for b in 0..n {
                if a == b || jm[a][b] == 0.0 {
                    continue;
                }
                // ordered pairs: qubit `a` carries the error
                let mut hat = Dense::zeros(2, 2);
                for (layer, f) in layers.iter().zip(fr) {
                    if flips(layer[a], o) {
                        let wb = if flips(layer[b], o) { -1.0 } else { 1.0 };
                        let ia = &om * pauli_matrix(layer[a]) * i_unit;
                        hat += ia * c(f * wb, 0.0);
                    }
                }
                let s = schedule.pulse_sign(a, l) as f64;
                let coef = jm[a][b] * deltas[a] * s;
                acc += embed(n, &[(a, hat), (b, om.clone())]) * c(coef, 0.0);
            }
        }
    }
    acc
}

/// `Σ_k f_k P_k† H_ext P_k` for single-qubit fields `(h^x, h^y, h^z)` per qubit.
pub fn toggled_field_average(schedule: &PulseSchedule, q: usize, fields: &[[f64; 3]]) -> Dense {
    let n = schedule.n_qubits;
    let d = 1 << n;
    let mut h = Dense::zeros(d, d);
    for (i, f) in fields.iter().enumerate() {
        h += embed(n, &[(i, bloch_matrix(*f))]);
    }
    block_toggling_average(schedule, q, &h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compiler::{compile, CompileOptions};

    #[test]
    fn kron_order_matches_bits() {
        // X on qubit 1 of 2 maps |00> (index 0) to |10> (index 2).
        let m = embed(2, &[(1, pauli_matrix(PulseSymbol::X))]);
        assert_eq!(m[(2, 0)], c(1.0, 0.0));
    }

    #[test]
    fn ising_schedule_reproduces_target() {
        let r = ResourceHamiltonian::power_law_chain(4, 1.0, 3.0).unwrap();
        let t = TargetSpec::ising_chain(4, 1.0);
        let s = compile(&t, &r, &CompileOptions::default()).unwrap();
        let diff = max_abs_diff(&averaged_toggling_hamiltonian(&s, &r), &dense_target(&t));
        assert!(diff < 1e-12, "{diff}");
    }

    #[test]
    fn first_order_rotation_error_matches_finite_difference() {
        let r = ResourceHamiltonian::power_law_chain(3, 1.0, 1.2).unwrap();
        let t = TargetSpec::ising_chain(3, 1.0);
        let mut s = compile(&t, &r, &CompileOptions::default()).unwrap();
        s.sign_e = vec![1, 2, 3];
        let deltas = [0.3, -0.7, 0.5];
        let h = dense_resource(&r);
        for l in 0..2 {
            let analytic = rotation_error_first_order(&s, &r, 0, &deltas, l);
            let eps = 1e-6;
            let layers = s.block_layers(0);
            let mut num = Dense::zeros(8, 8);
            for (layer, f) in layers.iter().zip(&s.blocks[0].interval_durations) {
                let g: Vec<Dense> = layer
                    .iter()
                    .enumerate()
                    .map(|(qb, &p)| match p.axis() {
                        None => pauli_matrix(PulseSymbol::I),
                        Some(ax) => {
                            let mut v = [0.0; 3];
                            v[ax] = 1.0;
                            let sign = s.pulse_sign(qb, l) as f64;
                            su2_matrix(Su2::rotation(v, sign * (std::f64::consts::PI + eps * deltas[qb])))
                        }
                    })
                    .collect();
                let p = kron_all(&g);
                num += (p.adjoint() * &h * &p) * c(*f, 0.0);
            }
            let base = block_toggling_average(&s, 0, &h);
            let fd = (num - base) / c(eps, 0.0);
            let diff = max_abs_diff(&fd, &analytic);
            assert!(diff < 1e-5, "cycle {l}: {diff}");
        }
    }
}
