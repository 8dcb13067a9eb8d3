use std::time::Instant;
use unexpected_curves::arrangements::freeness;
use unexpected_curves::catalog;
use unexpected_curves::field::FieldSpec;
use unexpected_curves::invariants::{compute_tz, unexpected_report};
use unexpected_curves::lefschetz::{power_ideal_hf, quotient_dim_with_power, slp_at, LChoice, PowerIdeal};
use unexpected_curves::schemes::GenericMode;

fn main() {
    let q = FieldSpec::Rationals;
    let probe = GenericMode::Probe { samples: 2, seed: 4, bound: 10_000 };
    let t0 = Instant::now();
    let arr = catalog::a_ab(3, 13, q).unwrap();
    let fr = freeness(&arr).unwrap();
    println!("freeness {:?} in {:?}", fr.splitting, t0.elapsed());
    let t0 = Instant::now();
    let z = arr.dual_points().unwrap();
    let tz = compute_tz(&z).unwrap();
    println!("t_Z {tz} in {:?}", t0.elapsed());
    let t0 = Instant::now();
    let r = unexpected_report(&z, probe).unwrap();
    println!("report unexpected {} in {:?}", r.unexpected, t0.elapsed());
    let t0 = Instant::now();
    let pi = PowerIdeal::uniform(&arr.forms, 8, q).unwrap();
    let hf: Vec<usize> = (0..=15).map(|j| power_ideal_hf(&pi, j).unwrap()).collect();
    println!("power HF {hf:?} in {:?}", t0.elapsed());
    let l = LChoice::Generic(probe);
    let t0 = Instant::now();
    let quot: Vec<usize> = (0..=8).map(|n| quotient_dim_with_power(&pi, 2, n, &l).unwrap().0).collect();
    println!("quotient {quot:?} in {:?}", t0.elapsed());
    let t0 = Instant::now();
    for dlow in 0..=12u32 {
        assert!(slp_at(&pi, 2, dlow, &l).unwrap().maximal_rank);
    }
    println!("slp loop in {:?}", t0.elapsed());
}
