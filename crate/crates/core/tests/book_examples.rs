//! Every code snippet shown in the guide (book/) is included from this file
//! via mdbook anchors, so the guide can never drift from the tested API.

use unexpected_curves::arrangements::{freeness, LineArrangement};
use unexpected_curves::catalog;
use unexpected_curves::curves::{curve_cp, decompose};
use unexpected_curves::field::FieldSpec;
use unexpected_curves::invariants::{compute_tz, unexpected_report};
use unexpected_curves::lefschetz::{power_ideal_hf, slp_at, LChoice, PowerIdeal};
use unexpected_curves::schemes::{GenericMode, PointConfig, ProjPoint};

#[test]
fn quickstart() {
    // ANCHOR: quickstart
    // The seven points of the Fano plane, over GF(2).
    let z = catalog::fano(FieldSpec::Prime(2)).unwrap();
    let report = unexpected_report(&z, GenericMode::Symbolic).unwrap();
    assert_eq!(report.splitting, (2, 4));
    assert_eq!(report.t_z, 3);
    assert!(report.unexpected);
    assert_eq!(report.unexpected_degrees, vec![3]);
    // ANCHOR_END: quickstart
}

#[test]
fn points_and_fields() {
    // ANCHOR: points_and_fields
    // Configurations live over an exact field: Q, GF(p), or their
    // function fields K(s,t) for the generic point P = [s : t : 1].
    let q = FieldSpec::Rationals;
    let pts: Vec<ProjPoint> = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]]
        .iter()
        .map(|c| ProjPoint::from_ints(*c, q).unwrap())
        .collect();
    let z = PointConfig::new(pts, q).unwrap();
    assert_eq!(compute_tz(&z).unwrap(), 1);
    // ANCHOR_END: points_and_fields
}

#[test]
fn probe_vs_symbolic() {
    // ANCHOR: probe_vs_symbolic
    // Probe mode evaluates at random concrete points; dimensions can only
    // grow under specialization, so a probe that matches the forced ramp
    // shape is already reliable, and the first positive cell is always
    // re-verified symbolically.
    let z = catalog::b3(FieldSpec::Rationals).unwrap().dual_points().unwrap();
    let probe = GenericMode::Probe { samples: 2, seed: 1, bound: 10_000 };
    let fast = unexpected_report(&z, probe).unwrap();
    let exact = unexpected_report(&z, GenericMode::Symbolic).unwrap();
    assert_eq!(fast.splitting, exact.splitting);
    assert_eq!(fast.ramp, exact.ramp);
    // ANCHOR_END: probe_vs_symbolic
}

#[test]
fn curve_and_decomposition() {
    // ANCHOR: curve_and_decomposition
    // For the B3 dual points the unexpected quartic at a concrete generic
    // base point is irreducible: nothing peels off as a line.
    let z = catalog::b3(FieldSpec::Rationals).unwrap().dual_points().unwrap();
    let p = ProjPoint::from_ints([2, 3, 4], FieldSpec::Rationals).unwrap();
    let forms = curve_cp(&z, &p, 3).unwrap(); // multiplicity 3 at P, degree 4
    assert_eq!(forms.len(), 1);
    let probe = GenericMode::Probe { samples: 2, seed: 1, bound: 10_000 };
    let rec = decompose(&z, &p, &forms[0], probe).unwrap();
    assert!(rec.peeled.is_empty());
    // ANCHOR_END: curve_and_decomposition
}

#[test]
fn arrangement_freeness() {
    // ANCHOR: arrangement_freeness
    // B3 is free with exponents (3, 5): the second Chern number equals the
    // product of the splitting type, and a modular point certifies
    // supersolvability.
    let arr = catalog::b3(FieldSpec::Rationals).unwrap();
    let r = freeness(&arr).unwrap();
    assert_eq!(r.splitting, (3, 5));
    assert_eq!(r.free, Some(true));
    assert_eq!(r.c2, Some(15));
    assert!(r.modular_point.is_some());
    assert_eq!(r.supersolvable_splitting, Some((3, 5)));
    // ANCHOR_END: arrangement_freeness
}

#[test]
fn parsing_an_arrangement() {
    // ANCHOR: parsing_an_arrangement
    let arr = LineArrangement::parse(
        &["x", "y", "z", "x + y", "x - y"],
        FieldSpec::Rationals,
    )
    .unwrap();
    assert_eq!(arr.d(), 5);
    let dual = arr.dual_points().unwrap();
    assert_eq!(dual.len(), 5);
    // ANCHOR_END: parsing_an_arrangement
}

#[test]
fn lefschetz_and_powers() {
    // ANCHOR: lefschetz_and_powers
    // The ideal of 8th powers of the A(3,13) forms, its Hilbert function,
    // and a maximal-rank multiplication check against a generic square.
    let arr = catalog::a_ab(3, 13, FieldSpec::Rationals).unwrap();
    let pi = PowerIdeal::uniform(&arr.forms, 8, FieldSpec::Rationals).unwrap();
    assert_eq!(power_ideal_hf(&pi, 8).unwrap(), 33);
    let l = LChoice::Generic(GenericMode::Probe { samples: 2, seed: 1, bound: 10_000 });
    assert!(slp_at(&pi, 2, 7, &l).unwrap().maximal_rank);
    // ANCHOR_END: lefschetz_and_powers
}
