use proptest::prelude::*;
use walsh_seq::analysis::oracle::pauli_matrix;
use walsh_seq::walsh::{
    hadamard_row, length_for_max_index, pulse_layers, walsh_inner, walsh_sign, PulseSymbol,
    WalshAssignment,
};

#[test]
fn hadamard_rows_are_orthonormal_up_to_64() {
    let mut n = 2;
    while n <= 64 {
        let rows: Vec<_> = (0..n).map(|a| hadamard_row(a, n).unwrap()).collect();
        for a in &rows {
            for b in &rows {
                let dot: i64 = a.values.iter().zip(&b.values).map(|(x, y)| (*x as i64) * (*y as i64)).sum();
                assert_eq!(dot, if a.index == b.index { n as i64 } else { 0 });
            }
        }
        n *= 2;
    }
}

#[test]
fn documented_rows() {
    assert_eq!(hadamard_row(0, 4).unwrap().values, vec![1, 1, 1, 1]);
    assert_eq!(hadamard_row(1, 2).unwrap().values, vec![1, -1]);
    assert_eq!(hadamard_row(3, 4).unwrap().values, vec![1, -1, -1, 1]);
    assert!(hadamard_row(4, 4).is_err());
    assert!(hadamard_row(0, 6).is_err());
}

#[test]
fn symbols_conjugate_paulis_with_their_signs() {
    let x = pauli_matrix(PulseSymbol::X);
    let y = pauli_matrix(PulseSymbol::Y);
    let z = pauli_matrix(PulseSymbol::Z);
    for sx in [1i8, -1] {
        for sy in [1i8, -1] {
            let p = pauli_matrix(PulseSymbol::from_signs(sx, sy));
            let pi = p.adjoint();
            let f = |s: i8| num_complex::Complex64::new(s as f64, 0.0);
            assert_eq!(&pi * &x * &p, &x * f(sx));
            assert_eq!(&pi * &y * &p, &y * f(sy));
            assert_eq!(&pi * &z * &p, &z * f(sx * sy));
        }
    }
}

proptest! {
    #[test]
    fn recursion_matches_closed_form(q in 0u32..7, seed in any::<u64>()) {
        let n = 1usize << q;
        let a = (seed as usize) % n;
        let row = hadamard_row(a, n).unwrap();
        for k in 0..n {
            prop_assert_eq!(row.values[k], walsh_sign(a, k));
        }
    }

    #[test]
    fn mean_vanishes_except_for_index_zero(q in 1u32..7, a in 0usize..64) {
        let n = 1usize << q;
        let a = a % n;
        let s: i64 = hadamard_row(a, n).unwrap().values.iter().map(|v| *v as i64).sum();
        prop_assert_eq!(s, if a == 0 { n as i64 } else { 0 });
    }

    #[test]
    fn inner_product_is_kronecker_delta(a in 0usize..64, b in 0usize..64) {
        let v = walsh_inner(a, b).unwrap();
        prop_assert_eq!(v, if a == b { 1.0 } else { 0.0 });
    }

    #[test]
    fn layers_follow_the_sign_pairs(xy in proptest::collection::vec((0usize..12, 0usize..12), 1..7)) {
        let (x, y): (Vec<_>, Vec<_>) = xy.into_iter().unzip();
        let a = WalshAssignment::new(x.clone(), y.clone()).unwrap();
        let layers = pulse_layers(&a);
        let n = length_for_max_index(*x.iter().chain(&y).max().unwrap());
        prop_assert_eq!(layers.len(), n);
        prop_assert_eq!(a.sequence_length(), n);
        prop_assert_eq!(&layers, &pulse_layers(&a));
        for (k, layer) in layers.iter().enumerate() {
            for i in 0..x.len() {
                let expect = PulseSymbol::from_signs(walsh_sign(x[i], k), walsh_sign(y[i], k));
                prop_assert_eq!(layer[i], expect);
            }
        }
    }
}
