//! Bound constants and the cycle period that keeps the product-formula error below κ.

use walsh_seq::analysis::{a_alpha, b_alpha, cycle_period_for, trotter_bound};

fn main() {
    println!("a_3 = {}, a_1.5 = {}", a_alpha(3.0), a_alpha(1.5));
    println!("b_0.2 = {}, b_0.5 = {}", b_alpha(0.2), b_alpha(0.5));
    for alpha in [0.2, 0.8, 1.2, 3.0] {
        let period = cycle_period_for(alpha, 8, 1.0, 1e-2).unwrap();
        let b = trotter_bound(alpha, 8, 1.0, &[period], 1.0).unwrap();
        println!("alpha={alpha}: JΣτ_q ≤ {period:.3e}  (bound {:.3e}, size factor {:.2})", b.value, b.size_factor);
    }
    assert!(cycle_period_for(1.0, 8, 1.0, 1e-2).is_err());
}
