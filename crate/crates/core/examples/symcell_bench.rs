//! Timing probe for the symbolic certification of a splitting cell.
use std::time::Instant;
use unexpected_curves::catalog;
use unexpected_curves::schemes::{generic_fatpoint_dim, GenericMode};

fn main() {
    let a = catalog::h19(unexpected_curves::field::FieldSpec::Rationals).unwrap();
    let z = a.dual_points().unwrap();
    let t0 = Instant::now();
    let (dim, cert) = generic_fatpoint_dim(&z, 8, 9, GenericMode::Symbolic).unwrap();
    println!("j=8 t=9: dim {dim} cert {cert:?} in {:?}", t0.elapsed());
}
