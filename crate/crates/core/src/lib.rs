//! Exact-arithmetic toolkit for plane point configurations and their dual
//! line arrangements.
//!
//! Everything here is computed over exact fields: the rationals, prime
//! fields GF(p), and rational function fields K(s,t).  The function field
//! plays the role of a *certified general point*: a point with coordinates
//! [s : t : 1] behaves like a general point of the plane, so dimensions
//! computed over K(s,t) are honest generic values rather than samples.
//!
//! The main pipeline:
//!
//! * [`field`] — scalars and field descriptions;
//! * [`linalg`] — exact rank / kernel computations, including certified
//!   generic rank over function fields;
//! * [`poly`] — homogeneous forms in x, y, z and binary forms on a line;
//! * [`schemes`] — point configurations, Hilbert functions, fat-point
//!   ideal dimensions;
//! * [`invariants`] — the numerical invariants of a configuration
//!   (multiplicity index, speciality threshold, splitting type) and the
//!   unexpected-curve decision;
//! * [`curves`] — construction and structure of the special curves
//!   (kernel forms, line peeling, syzygies, parametrization);
//! * [`arrangements`] — line arrangements, Jacobian ideals, freeness;
//! * [`lefschetz`] — power ideals, strong Lefschetz rank checks, duality;
//! * [`catalog`] — the named example configurations used in tests and
//!   from the command line.
//!
//! ```
//! use unexpected_curves::{catalog, field::FieldSpec,
//!     invariants::unexpected_report, schemes::GenericMode};
//!
//! let z = catalog::fano(FieldSpec::Prime(2)).unwrap();
//! let r = unexpected_report(&z, GenericMode::Symbolic).unwrap();
//! assert_eq!(r.splitting, (2, 4));
//! assert_eq!(r.unexpected_degrees, vec![3]);
//! ```

pub mod arrangements;
pub mod catalog;
pub mod curves;
pub mod field;
pub mod invariants;
pub mod lefschetz;
pub mod linalg;
pub mod poly;
pub mod schemes;
