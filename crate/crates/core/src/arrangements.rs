//! Line arrangements in the projective plane: incidence data, the
//! Jacobian-degree/Chern-class freeness test, addition-deletion
//! certificates, modular points, and supersolvability.
//!
//! Freeness of an arrangement of d lines (characteristic not dividing d)
//! is decided by the Chern-class criterion: the arrangement is free
//! exactly when c₂ = a·b, where (a, b) is the splitting type of the dual
//! point configuration and c₂ = (d−1)² − deg Jac(f).  Modular points and
//! addition-deletion serve as independent certificates.

use crate::field::{FieldError, FieldSpec, Scalar};
use crate::invariants::{compute_splitting, InvariantError};
use crate::linalg::{rank_value, LinalgError, Mat};
use crate::poly::{monomial_basis, space_dim, HomPoly, Monomial, PolyError};
use crate::schemes::{dual_points, GenericMode, PointConfig, ProjPoint, SchemeError};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArrangementError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Scheme(#[from] SchemeError),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error("invalid arrangement: {0}")]
    BadArrangement(String),
    #[error("Jacobian dimension did not stabilize by degree {cap}")]
    NoStabilization { cap: u32 },
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

/// A reduced arrangement of pairwise distinct lines, each form scaled so
/// its first nonzero coefficient (in x, y, z order) is 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineArrangement {
    pub forms: Vec<HomPoly>,
    pub spec: FieldSpec,
}

fn canonical_linear(l: &HomPoly) -> Result<HomPoly, ArrangementError> {
    if l.degree != 1 || l.is_zero() {
        return Err(ArrangementError::BadArrangement(
            "forms must be nonzero and linear".into(),
        ));
    }
    for m in monomial_basis(1) {
        let c = l.coeff(&m);
        if !c.is_zero() {
            return Ok(l.scale(&c.inv()?)?);
        }
    }
    unreachable!()
}

fn linear_coeffs(l: &HomPoly) -> [Scalar; 3] {
    [
        l.coeff(&Monomial { x: 1, y: 0, z: 0 }),
        l.coeff(&Monomial { x: 0, y: 1, z: 0 }),
        l.coeff(&Monomial { x: 0, y: 0, z: 1 }),
    ]
}

impl LineArrangement {
    pub fn new(forms: Vec<HomPoly>, spec: FieldSpec) -> Result<LineArrangement, ArrangementError> {
        if forms.is_empty() {
            return Err(ArrangementError::BadArrangement("no lines".into()));
        }
        let canon: Vec<HomPoly> = forms
            .iter()
            .map(canonical_linear)
            .collect::<Result<_, _>>()?;
        for (i, l) in canon.iter().enumerate() {
            if l.spec != spec {
                return Err(ArrangementError::BadArrangement("field mismatch".into()));
            }
            if canon[..i].contains(l) {
                return Err(ArrangementError::BadArrangement(format!(
                    "lines {i} and an earlier one are proportional"
                )));
            }
        }
        Ok(LineArrangement { forms: canon, spec })
    }

    pub fn parse(texts: &[&str], spec: FieldSpec) -> Result<LineArrangement, ArrangementError> {
        let forms = texts
            .iter()
            .map(|t| HomPoly::parse(t, spec))
            .collect::<Result<Vec<_>, _>>()?;
        LineArrangement::new(forms, spec)
    }

    pub fn d(&self) -> usize {
        self.forms.len()
    }

    /// The defining squarefree form f = ∏ ℓᵢ.
    pub fn product(&self) -> Result<HomPoly, ArrangementError> {
        let mut f = HomPoly::from_terms(
            0,
            self.spec,
            [(Monomial { x: 0, y: 0, z: 0 }, Scalar::one(self.spec))],
        )?;
        for l in &self.forms {
            f = f.mul(l)?;
        }
        Ok(f)
    }

    /// The configuration of points dual to the lines.
    pub fn dual_points(&self) -> Result<PointConfig, ArrangementError> {
        Ok(dual_points(&self.forms, self.spec)?)
    }

    /// Arrangement of lines dual to a point configuration.
    pub fn from_dual(z: &PointConfig) -> Result<LineArrangement, ArrangementError> {
        let forms = crate::schemes::dual_lines(z)?;
        LineArrangement::new(forms, z.spec)
    }

    pub fn without(&self, idx: usize) -> Result<LineArrangement, ArrangementError> {
        let mut forms = self.forms.clone();
        if idx >= forms.len() {
            return Err(ArrangementError::BadArrangement("index out of range".into()));
        }
        forms.remove(idx);
        LineArrangement::new(forms, self.spec)
    }

    fn contains_line(&self, l: &HomPoly) -> Result<bool, ArrangementError> {
        let c = canonical_linear(l)?;
        Ok(self.forms.contains(&c))
    }
}

/// A singular point of the arrangement with its multiplicity and the
/// lines through it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidencePoint {
    pub point: ProjPoint,
    pub multiplicity: usize,
    pub incident: Vec<usize>,
}

/// All pairwise intersection points, grouped, with the incidence count
/// identity Σ C(m_p, 2) = C(d, 2) asserted.
pub fn singular_points(a: &LineArrangement) -> Result<Vec<IncidencePoint>, ArrangementError> {
    let d = a.d();
    let mut seen: Vec<(ProjPoint, Vec<usize>)> = Vec::new();
    for i in 0..d {
        for k in (i + 1)..d {
            let ci = linear_coeffs(&a.forms[i]);
            let ck = linear_coeffs(&a.forms[k]);
            let cross = [
                ci[1].mul(&ck[2])?.sub(&ci[2].mul(&ck[1])?)?,
                ci[2].mul(&ck[0])?.sub(&ci[0].mul(&ck[2])?)?,
                ci[0].mul(&ck[1])?.sub(&ci[1].mul(&ck[0])?)?,
            ];
            let p = ProjPoint::new(cross, a.spec)?;
            if !seen.iter().any(|(q, _)| *q == p) {
                let incident: Vec<usize> = (0..d)
                    .filter(|&j| {
                        a.forms[j]
                            .eval(&p.coords)
                            .map(|v| v.is_zero())
                            .unwrap_or(false)
                    })
                    .collect();
                seen.push((p, incident));
            }
        }
    }
    let out: Vec<IncidencePoint> = seen
        .into_iter()
        .map(|(point, incident)| IncidencePoint {
            point,
            multiplicity: incident.len(),
            incident,
        })
        .collect();
    let lhs: usize = out.iter().map(|p| p.multiplicity * (p.multiplicity - 1) / 2).sum();
    if lhs != d * (d - 1) / 2 {
        return Err(ArrangementError::Internal(format!(
            "incidence count {lhs} != C({d},2)"
        )));
    }
    Ok(out)
}

/// dim (R/J)_t for the full Jacobian ideal J = (f_x, f_y, f_z, f).
pub fn jacobian_dim(a: &LineArrangement, t: u32) -> Result<usize, ArrangementError> {
    let f = a.product()?;
    let d = a.d() as u32;
    let spec = a.spec;
    let nt = space_dim(t);
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    let gens = [f.partial(0), f.partial(1), f.partial(2)];
    let mono = |mu: Monomial, deg: u32| -> Result<HomPoly, PolyError> {
        HomPoly::from_terms(deg, spec, [(mu, Scalar::one(spec))])
    };
    if t + 1 >= d {
        let shift = t + 1 - d;
        for g in &gens {
            if g.is_zero() {
                continue;
            }
            for mu in monomial_basis(shift) {
                rows.push(mono(mu, shift)?.mul(g)?.coeff_vec());
            }
        }
    }
    if t >= d {
        let shift = t - d;
        for mu in monomial_basis(shift) {
            rows.push(mono(mu, shift)?.mul(&f)?.coeff_vec());
        }
    }
    if rows.is_empty() {
        return Ok(nt);
    }
    let r = rank_value(&Mat::from_rows(rows, spec)?)?;
    Ok(nt - r)
}

/// The stabilized Jacobian dimension: computed for increasing t from
/// 2(d−2) until constant over three consecutive degrees, capped at 3d.
pub fn deg_jacobian(a: &LineArrangement) -> Result<usize, ArrangementError> {
    let d = a.d() as u32;
    if d < 2 {
        return Err(ArrangementError::BadArrangement(
            "need at least 2 lines".into(),
        ));
    }
    let start = 2 * (d - 2);
    let cap = 3 * d;
    let mut window: Vec<usize> = Vec::new();
    for t in start..=cap {
        let v = jacobian_dim(a, t)?;
        window.push(v);
        let n = window.len();
        if n >= 3 && window[n - 1] == window[n - 2] && window[n - 2] == window[n - 3] {
            return Ok(v);
        }
    }
    Err(ArrangementError::NoStabilization { cap })
}

/// Second Chern number c₂ = (d−1)² − deg Jac(f).
pub fn c2(a: &LineArrangement) -> Result<i64, ArrangementError> {
    let d = a.d() as i64;
    Ok((d - 1) * (d - 1) - deg_jacobian(a)? as i64)
}

/// Freeness verdict with the data backing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreenessReport {
    pub d: usize,
    /// Splitting type of the dual point configuration (certified).
    pub splitting: (u32, u32),
    pub deg_jac: Option<usize>,
    pub c2: Option<i64>,
    /// None when the Chern route is disabled and no certificate decides.
    pub free: Option<bool>,
    /// False when char K divides d, which disables the c₂ criterion.
    pub chern_route: bool,
    pub modular_point: Option<ProjPoint>,
    pub supersolvable_splitting: Option<(u32, u32)>,
}

pub fn freeness(a: &LineArrangement) -> Result<FreenessReport, ArrangementError> {
    let d = a.d();
    let z = a.dual_points()?;
    let split = compute_splitting(&z, GenericMode::Symbolic)?;
    let (sa, sb) = (split.a, split.b);

    let modular = modular_points(a)?;
    let modular_point = modular.first().map(|p| p.point.clone());
    let supersolvable_splitting = supersolvable(a)?;

    let p = a.spec.characteristic();
    let chern_route = !(p != 0 && d as u64 % p == 0);
    let (deg_jac, c2v, free) = if chern_route {
        let dj = deg_jacobian(a)?;
        let c = (d as i64 - 1) * (d as i64 - 1) - dj as i64;
        if c < (sa as i64) * (sb as i64) {
            return Err(ArrangementError::Internal(format!(
                "c2 = {c} below splitting product {}",
                (sa as i64) * (sb as i64)
            )));
        }
        (Some(dj), Some(c), Some(c == (sa as i64) * (sb as i64)))
    } else {
        // certificate-only: a modular point certifies freeness
        let free = if supersolvable_splitting.is_some() {
            Some(true)
        } else {
            None
        };
        (None, None, free)
    };
    if let Some(ss) = supersolvable_splitting {
        if ss != (sa, sb) {
            return Err(ArrangementError::Internal(format!(
                "supersolvable splitting {ss:?} disagrees with ({sa},{sb})"
            )));
        }
        if free == Some(false) {
            return Err(ArrangementError::Internal(
                "modular point found but c2 criterion says not free".into(),
            ));
        }
    }
    Ok(FreenessReport {
        d,
        splitting: (sa, sb),
        deg_jac,
        c2: c2v,
        free,
        chern_route,
        modular_point,
        supersolvable_splitting,
    })
}

/// Claims for the addition-deletion rule: exponents of the full
/// arrangement and/or of the arrangement minus one line; the restriction
/// count is always computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AddDelClaims {
    Both { full: (u32, u32), deleted: (u32, u32) },
    FullOnly { full: (u32, u32) },
    DeletedOnly { deleted: (u32, u32) },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AddDelVerdict {
    /// The triple satisfies the rule; all three statements reported.
    Consistent {
        full: (u32, u32),
        deleted: (u32, u32),
        restriction: usize,
    },
    Inconsistent(String),
}

fn sorted(p: (u32, u32)) -> (u32, u32) {
    if p.0 <= p.1 {
        p
    } else {
        (p.1, p.0)
    }
}

/// Number of distinct intersection points of the line `idx` with the
/// rest of the arrangement.
pub fn restriction_count(a: &LineArrangement, idx: usize) -> Result<usize, ArrangementError> {
    let pts = singular_points(a)?;
    Ok(pts.iter().filter(|p| p.incident.contains(&idx)).count())
}

/// The rank-2 addition-deletion rule: the arrangement and its deletion
/// are free with exponents (e, k) and (e, k−1) exactly when the deleted
/// line meets the rest in e + 1 distinct points (for one exponent e
/// shared by both).  Any two of the statements imply the third.
pub fn addition_deletion(
    a: &LineArrangement,
    idx: usize,
    claims: AddDelClaims,
) -> Result<AddDelVerdict, ArrangementError> {
    let d = a.d() as u32;
    if idx >= a.d() {
        return Err(ArrangementError::BadArrangement("index out of range".into()));
    }
    let k = restriction_count(a, idx)?;
    let verdict = match claims {
        AddDelClaims::Both { full, deleted } => {
            let full = sorted(full);
            let deleted = sorted(deleted);
            if full.0 + full.1 != d - 1 || deleted.0 + deleted.1 != d - 2 {
                return Ok(AddDelVerdict::Inconsistent(
                    "exponents do not sum to the line counts".into(),
                ));
            }
            // deleted must be full with one exponent dropped by 1, and
            // the shared exponent e must satisfy |A''| = e + 1
            let shared = if sorted((full.0, full.1.wrapping_sub(1))) == deleted {
                Some(full.0)
            } else if full.0 > 0 && sorted((full.0 - 1, full.1)) == deleted {
                Some(full.1)
            } else {
                None
            };
            match shared {
                Some(e) if k == e as usize + 1 => AddDelVerdict::Consistent {
                    full,
                    deleted,
                    restriction: k,
                },
                Some(e) => AddDelVerdict::Inconsistent(format!(
                    "restriction has {k} points, rule needs {}",
                    e + 1
                )),
                None => AddDelVerdict::Inconsistent(
                    "deleted exponents are not the full ones minus 1".into(),
                ),
            }
        }
        AddDelClaims::FullOnly { full } => {
            let full = sorted(full);
            if full.0 + full.1 != d - 1 {
                return Ok(AddDelVerdict::Inconsistent(
                    "exponents do not sum to d−1".into(),
                ));
            }
            let e = k as i64 - 1;
            if e == full.0 as i64 {
                AddDelVerdict::Consistent {
                    full,
                    deleted: sorted((full.0, full.1 - 1)),
                    restriction: k,
                }
            } else if e == full.1 as i64 && full.0 > 0 {
                AddDelVerdict::Consistent {
                    full,
                    deleted: sorted((full.0 - 1, full.1)),
                    restriction: k,
                }
            } else if e == full.1 as i64 && full.0 == 0 {
                // deleting from a pencil-type exponent pair
                AddDelVerdict::Inconsistent("exponent would become negative".into())
            } else {
                AddDelVerdict::Inconsistent(format!(
                    "restriction count {k} matches neither exponent plus 1"
                ))
            }
        }
        AddDelClaims::DeletedOnly { deleted } => {
            let deleted = sorted(deleted);
            if deleted.0 + deleted.1 != d - 2 {
                return Ok(AddDelVerdict::Inconsistent(
                    "exponents do not sum to d−2".into(),
                ));
            }
            let e = k as i64 - 1;
            if e < 0 {
                return Ok(AddDelVerdict::Inconsistent("empty restriction".into()));
            }
            let e = e as u32;
            // adding the line bumps the other exponent by 1
            if e == deleted.0 {
                AddDelVerdict::Consistent {
                    full: sorted((deleted.0, deleted.1 + 1)),
                    deleted,
                    restriction: k,
                }
            } else if e == deleted.1 {
                AddDelVerdict::Consistent {
                    full: sorted((deleted.0 + 1, deleted.1)),
                    deleted,
                    restriction: k,
                }
            } else {
                AddDelVerdict::Inconsistent(format!(
                    "restriction count {k} matches neither exponent plus 1"
                ))
            }
        }
    };
    Ok(verdict)
}

/// Points p such that for every singular point q the line joining p and
/// q belongs to the arrangement (taking q over all pairwise
/// intersections).
pub fn modular_points(a: &LineArrangement) -> Result<Vec<IncidencePoint>, ArrangementError> {
    let pts = singular_points(a)?;
    let mut out = Vec::new();
    'cand: for p in &pts {
        for q in &pts {
            if q.point == p.point {
                continue;
            }
            let l = crate::poly::line_through(&p.point.coords, &q.point.coords, a.spec)?;
            if !a.contains_line(&l)? {
                continue 'cand;
            }
        }
        out.push(p.clone());
    }
    Ok(out)
}

/// A modular point with m lines through it certifies freeness with
/// splitting (m−1, d−m); the result is cross-checked in [`freeness`].
pub fn supersolvable(a: &LineArrangement) -> Result<Option<(u32, u32)>, ArrangementError> {
    let modular = modular_points(a)?;
    let Some(p) = modular.first() else {
        return Ok(None);
    };
    let m = p.multiplicity as u32;
    let d = a.d() as u32;
    Ok(Some(sorted((m - 1, d - m))))
}

/// A sound inequality test for incidence lattices: the sorted multiset
/// of point multiplicities together with the sorted per-line lists of
/// multiplicities of the points on each line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceSignature {
    pub point_multiplicities: Vec<usize>,
    pub per_line: Vec<Vec<usize>>,
}

pub fn incidence_signature(a: &LineArrangement) -> Result<IncidenceSignature, ArrangementError> {
    let pts = singular_points(a)?;
    let mut point_multiplicities: Vec<usize> = pts.iter().map(|p| p.multiplicity).collect();
    point_multiplicities.sort_unstable();
    let mut per_line: Vec<Vec<usize>> = (0..a.d())
        .map(|i| {
            let mut v: Vec<usize> = pts
                .iter()
                .filter(|p| p.incident.contains(&i))
                .map(|p| p.multiplicity)
                .collect();
            v.sort_unstable();
            v
        })
        .collect();
    per_line.sort();
    Ok(IncidenceSignature {
        point_multiplicities,
        per_line,
    })
}

/// Combinatorial cross-check oracle for the stabilized Jacobian
/// dimension: at an ordinary m-fold point the local contribution is
/// (m−1)².
pub fn jacobian_degree_oracle(a: &LineArrangement) -> Result<usize, ArrangementError> {
    Ok(singular_points(a)?
        .iter()
        .map(|p| (p.multiplicity - 1) * (p.multiplicity - 1))
        .sum())
}

/// Multiplicity histogram (multiplicity -> number of points).
pub fn multiplicity_histogram(
    a: &LineArrangement,
) -> Result<BTreeMap<usize, usize>, ArrangementError> {
    let mut h = BTreeMap::new();
    for p in singular_points(a)? {
        *h.entry(p.multiplicity).or_insert(0) += 1;
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn arr(texts: &[&str]) -> LineArrangement {
        LineArrangement::parse(texts, Q).unwrap()
    }

    fn b3() -> LineArrangement {
        arr(&[
            "x", "y", "z", "x + y", "x - y", "x + z", "x - z", "y + z", "y - z",
        ])
    }

    #[test]
    fn triangle_is_free() {
        let a = arr(&["x", "y", "x + y + z"]);
        let pts = singular_points(&a).unwrap();
        assert_eq!(pts.len(), 3);
        assert!(pts.iter().all(|p| p.multiplicity == 2));
        assert_eq!(deg_jacobian(&a).unwrap(), 3);
        assert_eq!(c2(&a).unwrap(), 1);
        let rep = freeness(&a).unwrap();
        assert_eq!(rep.splitting, (1, 1));
        assert_eq!(rep.free, Some(true));
    }

    #[test]
    fn generic_arrangements_are_not_free() {
        // four and five lines dual to points on a conic: only double points
        for d in [4usize, 5] {
            let texts: Vec<String> = (1..=d as i64)
                .map(|k| format!("x + {}*y + {}*z", k, k * k))
                .collect();
            let refs: Vec<&str> = texts.iter().map(String::as_str).collect();
            let a = arr(&refs);
            let pts = singular_points(&a).unwrap();
            assert!(pts.iter().all(|p| p.multiplicity == 2));
            let rep = freeness(&a).unwrap();
            assert_eq!(rep.free, Some(false), "d={d}");
            assert!(rep.modular_point.is_none());
        }
    }

    #[test]
    fn pencil_is_free_with_modular_point() {
        let a = arr(&["x", "y", "x + y", "x - y"]);
        assert_eq!(deg_jacobian(&a).unwrap(), 9);
        let rep = freeness(&a).unwrap();
        assert_eq!(rep.splitting, (0, 3));
        assert_eq!(rep.free, Some(true));
        assert!(rep.modular_point.is_some());
        assert_eq!(rep.supersolvable_splitting, Some((0, 3)));
    }

    #[test]
    fn near_pencil_supersolvable() {
        let a = arr(&["x", "y", "x + y", "z"]);
        let rep = freeness(&a).unwrap();
        assert_eq!(rep.splitting, (1, 2));
        assert_eq!(rep.free, Some(true));
        assert_eq!(rep.supersolvable_splitting, Some((1, 2)));
    }

    #[test]
    fn b3_counts_and_freeness() {
        let a = b3();
        let h = multiplicity_histogram(&a).unwrap();
        assert_eq!(h.get(&4), Some(&3));
        assert_eq!(h.get(&3), Some(&4));
        assert_eq!(h.get(&2), Some(&6));
        assert_eq!(c2(&a).unwrap(), 15);
        let rep = freeness(&a).unwrap();
        assert_eq!(rep.splitting, (3, 5));
        assert_eq!(rep.free, Some(true));
    }

    #[test]
    fn stabilization_matches_local_oracle() {
        for a in [
            arr(&["x", "y", "x + y + z"]),
            arr(&["x", "y", "x + y", "x - y"]),
            arr(&["x", "y", "x + y", "z"]),
            b3(),
        ] {
            assert_eq!(
                deg_jacobian(&a).unwrap(),
                jacobian_degree_oracle(&a).unwrap()
            );
        }
    }

    #[test]
    fn addition_deletion_near_pencil() {
        // delete z from {x, y, x+y, z}: (1,2) -> (0,2), restriction 3
        let a = arr(&["x", "y", "x + y", "z"]);
        let v = addition_deletion(
            &a,
            3,
            AddDelClaims::Both {
                full: (1, 2),
                deleted: (0, 2),
            },
        )
        .unwrap();
        assert_eq!(
            v,
            AddDelVerdict::Consistent {
                full: (1, 2),
                deleted: (0, 2),
                restriction: 3
            }
        );
        // with only the full exponents, the deletion is implied
        let v2 = addition_deletion(&a, 3, AddDelClaims::FullOnly { full: (1, 2) }).unwrap();
        assert_eq!(
            v2,
            AddDelVerdict::Consistent {
                full: (1, 2),
                deleted: (0, 2),
                restriction: 3
            }
        );
        // a wrong claim is flagged
        let bad = addition_deletion(
            &a,
            3,
            AddDelClaims::Both {
                full: (1, 2),
                deleted: (1, 1),
            },
        )
        .unwrap();
        assert!(matches!(bad, AddDelVerdict::Inconsistent(_)));
    }

    #[test]
    fn signatures_distinguish_b3_from_generic() {
        let g: Vec<String> = (1..=9i64)
            .map(|k| format!("x + {}*y + {}*z", k, k * k))
            .collect();
        let refs: Vec<&str> = g.iter().map(String::as_str).collect();
        let generic = arr(&refs);
        assert_ne!(
            incidence_signature(&b3()).unwrap(),
            incidence_signature(&generic).unwrap()
        );
        // and two generic triangles agree
        let t1 = arr(&["x", "y", "x + y + z"]);
        let t2 = arr(&["x + y", "y - z", "x + 3*z"]);
        assert_eq!(
            incidence_signature(&t1).unwrap(),
            incidence_signature(&t2).unwrap()
        );
    }

    #[test]
    fn jacobian_dim_single_line_vanishes() {
        let a = arr(&["x"]);
        for t in 0..4 {
            assert_eq!(jacobian_dim(&a, t).unwrap(), 0);
        }
    }
}
