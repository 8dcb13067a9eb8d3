//! Timing scratchpad for the heavy Jacobian computations.

use std::time::Instant;
use unexpected_curves::arrangements::{jacobian_dim, LineArrangement};
use unexpected_curves::field::FieldSpec;

fn main() {
    let forms = [
        "x", "y", "z", "x + y", "x - y", "2*x + y", "2*x - y", "x + z", "x - z", "y + z",
        "y - z", "x + 2*z", "x - 2*z", "y + 2*z", "y - 2*z", "x - y + z", "x - y - z",
        "x - y + 2*z", "x - y - 2*z",
    ];
    let a = LineArrangement::parse(&forms, FieldSpec::Rationals).unwrap();
    for t in [25u32, 26, 34, 35, 36] {
        let now = Instant::now();
        let dim = jacobian_dim(&a, t).unwrap();
        println!("t = {t}: dim = {dim}  ({:.2?})", now.elapsed());
    }
}
