//! Timing probe for symbolic freeness of the 18/19/20-line examples.
use std::time::Instant;
use unexpected_curves::arrangements::freeness;
use unexpected_curves::catalog;
use unexpected_curves::field::FieldSpec;

fn main() {
    for v in ['a', 'b', 'c', 'd'] {
        let arr = catalog::example20(v, FieldSpec::Rationals).unwrap();
        let t0 = Instant::now();
        let r = freeness(&arr).unwrap();
        println!(
            "variant {v}: d {} splitting {:?} c2 {:?} free {:?} in {:?}",
            r.d,
            r.splitting,
            r.c2,
            r.free,
            t0.elapsed()
        );
    }
}
