//! Walsh sign sequences and the pulse layers they generate.

use walsh_seq::walsh::{hadamard_row, pulse_layers, walsh_inner, WalshAssignment};

fn main() {
    for a in 0..4 {
        let row = hadamard_row(a, 4).unwrap();
        println!("w_{a} = {:?}", row.values);
    }
    println!("(w_2|w_3) = {}", walsh_inner(2, 3).unwrap());
    println!("(w_5|w_5) = {}", walsh_inner(5, 5).unwrap());

    // qubits 0 and 1 share X index 1, so their XX coupling survives
    let a = WalshAssignment::new(vec![1, 1, 2], vec![0, 3, 4]).unwrap();
    for (k, layer) in pulse_layers(&a).iter().enumerate() {
        let s: Vec<String> = layer.iter().map(|p| format!("{p:?}")).collect();
        println!("layer {k}: {}", s.join(" "));
    }
}
