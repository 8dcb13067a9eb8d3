//! Construction, decomposition, irreducibility testing, and
//! parametrization of the distinguished curve through a configuration Z
//! with an m_Z-fold point at a general base point P.
//!
//! The curve lives in the kernel of the fat-point evaluation matrix at
//! bidegree (m_Z, m_Z + 1).  Its only possible linear components are the
//! lines joining P to single points of Z, so decomposition peels exactly
//! those candidates and checks the degree and multiplicity bookkeeping
//! against the splitting data of the surviving subconfiguration.  The
//! rational parametrization comes from a minimal syzygy of the partial
//! derivatives of the product of the dual lines.

use crate::field::{FieldSpec, Scalar};
use crate::invariants::{compute_splitting, ramp_value, InvariantError};
use crate::linalg::{kernel_basis, LinalgError, Mat};
use crate::poly::{
    binary_splits, complete_to_basis, compose_binary, line_basis_at, line_through, monomial_basis,
    restrict_to_line, space_dim, BinaryForm, HomPoly, Monomial, PolyError,
};
use crate::schemes::{
    dual_line, fat_monomials, fatpoint_dim, fatpoint_matrix, GenericMode, PointConfig, ProjPoint,
    SchemeError,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CurveError {
    #[error(transparent)]
    Field(#[from] crate::field::FieldError),
    #[error(transparent)]
    Scheme(#[from] SchemeError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error("kernel dimension {found} at the initial bidegree; expected 1 or 2 (resample P)")]
    UnexpectedKernelDim { found: usize },
    #[error("base point lies on Z or on a line through two points of Z")]
    SpecialBasePoint,
    #[error("curve structure bookkeeping failed: {0}")]
    StructureViolation(String),
    #[error("degree {t} outside the open range ({lo}, {hi}]")]
    OutOfRange { t: u32, lo: u32, hi: u32 },
    #[error("characteristic {p} divides the arrangement degree {d}")]
    CharDividesDegree { p: u64, d: usize },
    #[error("characteristic {p} obstructs the construction for |Z| = {n}")]
    CharacteristicObstruction { p: u64, n: usize },
    #[error("gcd of the restricted parametrization has degree {got}, expected {expected}")]
    GcdDegreeMismatch { got: u32, expected: usize },
    #[error("operation unsupported over this field: {0}")]
    UnsupportedField(String),
}

/// Match the configuration to the base point's field: a point over the
/// function field of the configuration's field plays the role of a
/// general point.
fn config_for_point(z: &PointConfig, p: &ProjPoint) -> Result<PointConfig, CurveError> {
    if p.spec == z.spec {
        Ok(z.clone())
    } else if p.spec == z.spec.function_field() && p.spec != z.spec {
        Ok(z.lift())
    } else {
        Err(CurveError::UnsupportedField(format!(
            "base point over {} does not extend configuration over {}",
            p.spec, z.spec
        )))
    }
}

/// Scale a nonzero form so its leading (graded-lex, x > y > z)
/// coefficient is 1.
pub fn normalize_leading(f: &HomPoly) -> Result<HomPoly, CurveError> {
    for m in monomial_basis(f.degree) {
        let c = f.coeff(&m);
        if !c.is_zero() {
            return Ok(f.scale(&c.inv().map_err(PolyError::from)?)?);
        }
    }
    Err(CurveError::StructureViolation("zero form".into()))
}

/// The form(s) of degree m_Z + 1 vanishing on Z with an m_Z-fold point
/// at P: a single form when the splitting is unbalanced, a basis of a
/// pencil when it is balanced.  Forms are normalized to leading
/// coefficient 1 in graded-lex order.
pub fn curve_cp(z: &PointConfig, p: &ProjPoint, m_z: u32) -> Result<Vec<HomPoly>, CurveError> {
    let zf = config_for_point(z, p)?;
    // a concrete base point must avoid Z and all lines through two of its
    // points; a function-field point is general by construction
    if p.spec == z.spec {
        if zf.contains(p) {
            return Err(CurveError::SpecialBasePoint);
        }
        for i in 0..zf.len() {
            for k in (i + 1)..zf.len() {
                let l = line_through(&zf.points[i].coords, &zf.points[k].coords, zf.spec)?;
                if l.eval(&p.coords)?.is_zero() {
                    return Err(CurveError::SpecialBasePoint);
                }
            }
        }
    }
    let n = complete_to_basis(&p.coords, p.spec)?;
    let mat = fatpoint_matrix(&zf, &n, m_z, m_z + 1)?;
    let ker = kernel_basis(&mat)?;
    if ker.is_empty() || ker.len() > 2 {
        return Err(CurveError::UnexpectedKernelDim { found: ker.len() });
    }
    let mons = fat_monomials(m_z, m_z + 1);
    let n_inv = n.inverse()?;
    let mut out = Vec::new();
    for v in ker {
        let g = HomPoly::from_terms(
            m_z + 1,
            p.spec,
            mons.iter().cloned().zip(v.into_iter()),
        )?;
        let f = g.apply_transform(&n_inv)?;
        out.push(normalize_leading(&f)?);
    }
    Ok(out)
}

/// A fully decomposed curve: peeled lines through P, the irreducible
/// core, and the multiplicity bookkeeping that certifies the shape.
#[derive(Debug, Clone)]
pub struct CurveRecord {
    pub p: ProjPoint,
    pub m_z: u32,
    pub f: HomPoly,
    /// (linear form, index of the unique point of Z it joins to P)
    pub peeled: Vec<(HomPoly, usize)>,
    pub core: HomPoly,
    /// Indices of points that survive onto the core.
    pub zprime: Vec<usize>,
    pub m_zprime: u32,
    pub mult_f_at_p: u32,
    pub mult_core_at_p: u32,
    pub irreducible_for_this_p: bool,
}

/// Decompose F into lines through P and one point of Z times a core
/// curve, verifying every degree/multiplicity identity along the way.
/// `mode` controls the splitting recomputation for the surviving points.
pub fn decompose(
    z: &PointConfig,
    p: &ProjPoint,
    f: &HomPoly,
    mode: GenericMode,
) -> Result<CurveRecord, CurveError> {
    let zf = config_for_point(z, p)?;
    let d = zf.len();
    let m_z = f
        .degree
        .checked_sub(1)
        .ok_or_else(|| CurveError::StructureViolation("constant form".into()))?;
    for pt in &zf.points {
        if !f.eval(&pt.coords)?.is_zero() {
            return Err(CurveError::StructureViolation(
                "curve misses a point of Z".into(),
            ));
        }
    }
    let mult_f_at_p = f.multiplicity_at(&p.coords)?;
    if mult_f_at_p != m_z {
        return Err(CurveError::StructureViolation(format!(
            "multiplicity {mult_f_at_p} at P, expected {m_z}"
        )));
    }

    let mut cur = f.clone();
    let mut remaining: Vec<usize> = (0..d).collect();
    let mut peeled: Vec<(HomPoly, usize)> = Vec::new();
    'peel: loop {
        for (slot, &idx) in remaining.iter().enumerate() {
            let l = line_through(&p.coords, &zf.points[idx].coords, zf.spec)?;
            if let Some(q) = cur.divide_by_linear(&l) {
                // the peeled line must contain exactly one point of Z
                let on = zf
                    .points
                    .iter()
                    .filter(|pt| l.eval(&pt.coords).map(|v| v.is_zero()).unwrap_or(false))
                    .count();
                if on != 1 {
                    return Err(CurveError::StructureViolation(format!(
                        "peeled line through point {idx} contains {on} points of Z"
                    )));
                }
                peeled.push((normalize_leading(&l)?, idx));
                remaining.remove(slot);
                cur = q;
                continue 'peel;
            }
        }
        break;
    }
    let core = normalize_leading(&cur)?;

    // the core must vanish exactly on the surviving points
    for (idx, pt) in zf.points.iter().enumerate() {
        let vanishes = core.eval(&pt.coords)?.is_zero();
        if vanishes != remaining.contains(&idx) {
            return Err(CurveError::StructureViolation(format!(
                "core vanishing at point {idx} contradicts the peeling"
            )));
        }
    }

    // splitting of the surviving subconfiguration over the base field
    let m_zprime = if remaining.len() >= 2 {
        let pts = remaining.iter().map(|&i| z.points[i].clone()).collect();
        let zp = PointConfig::new(pts, z.spec)?;
        compute_splitting(&zp, mode)?.a
    } else {
        0
    };
    if core.degree != m_zprime + 1 {
        return Err(CurveError::StructureViolation(format!(
            "core degree {} but surviving points have multiplicity index {m_zprime}",
            core.degree
        )));
    }
    if peeled.len() as u32 != m_z - m_zprime {
        return Err(CurveError::StructureViolation(format!(
            "{} peeled lines but multiplicity index dropped {} to {}",
            peeled.len(),
            m_z,
            m_zprime
        )));
    }
    let mult_core_at_p = core.multiplicity_at(&p.coords)?;
    if mult_core_at_p != core.degree - 1 {
        return Err(CurveError::StructureViolation(format!(
            "core multiplicity {mult_core_at_p} at P, expected {}",
            core.degree - 1
        )));
    }
    // reconstruction check: F = core · ∏ peeled up to the normalization
    let mut prod = core.clone();
    for (l, _) in &peeled {
        prod = prod.mul(l)?;
    }
    let prod = normalize_leading(&prod)?;
    if prod != normalize_leading(f)? {
        return Err(CurveError::StructureViolation(
            "core times peeled lines does not reproduce F".into(),
        ));
    }

    let irreducible_for_this_p = peeled.is_empty();
    Ok(CurveRecord {
        p: p.clone(),
        m_z,
        f: f.clone(),
        peeled,
        core,
        zprime: remaining,
        m_zprime,
        mult_f_at_p,
        mult_core_at_p,
        irreducible_for_this_p,
    })
}

/// The unexpected curves of one degree t in the open range
/// (m_Z, u_Z]: the distinguished curve plus r = t − m_Z − 1 free lines
/// through P.
#[derive(Debug, Clone)]
pub struct UnexpectedFamily {
    pub t: u32,
    /// Number of free lines through P in a general member.
    pub free_lines: u32,
    /// dim of forms of degree t vanishing on Z with a (t−1)-fold point at P.
    pub dim: usize,
    pub curve: Vec<HomPoly>,
}

pub fn unexpected_in_degree(
    z: &PointConfig,
    p: &ProjPoint,
    t: u32,
    mode: GenericMode,
) -> Result<UnexpectedFamily, CurveError> {
    let split = compute_splitting(z, mode)?;
    let (a, b) = (split.a, split.b);
    let (m, u) = (a, b - 1);
    if !(m < t && t <= u) {
        return Err(CurveError::OutOfRange { t, lo: m, hi: u });
    }
    let zf = config_for_point(z, p)?;
    let dim = fatpoint_dim(&zf, p, t - 1, t)?;
    let expected = ramp_value(a, b, t - 1);
    if dim != expected {
        return Err(CurveError::StructureViolation(format!(
            "dimension {dim} in degree {t}, splitting predicts {expected} (special P?)"
        )));
    }
    let curve = curve_cp(z, p, m)?;
    Ok(UnexpectedFamily {
        t,
        free_lines: t - m - 1,
        dim,
        curve,
    })
}

/// True when deleting any single point leaves the multiplicity index
/// unchanged, which forces every form at the initial bidegree to be
/// irreducible for general P.
pub fn irreducibility_by_deletion(z: &PointConfig, mode: GenericMode) -> Result<bool, CurveError> {
    if z.len() < 3 {
        return Err(CurveError::StructureViolation(
            "need at least 3 points".into(),
        ));
    }
    let m = compute_splitting(z, mode)?.a;
    for q in 0..z.len() {
        if compute_splitting(&z.without(q)?, mode)?.a != m {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A syzygy s₀·f_x + s₁·f_y + s₂·f_z (+ s₃·ℓ) = 0 of the partial
/// derivatives of an arrangement form, possibly modulo a linear form.
#[derive(Debug, Clone)]
pub struct SyzygyTriple {
    pub s: [HomPoly; 3],
    pub degree: u32,
    pub mod_ell: Option<HomPoly>,
    pub s3: Option<HomPoly>,
}

/// Coefficient vector of a linear form.
fn linear_coeffs(l: &HomPoly) -> Result<[Scalar; 3], CurveError> {
    if l.degree != 1 {
        return Err(CurveError::StructureViolation(
            "expected a linear form".into(),
        ));
    }
    Ok([
        l.coeff(&Monomial { x: 1, y: 0, z: 0 }),
        l.coeff(&Monomial { x: 0, y: 1, z: 0 }),
        l.coeff(&Monomial { x: 0, y: 0, z: 1 }),
    ])
}

fn proportional_linear(l1: &HomPoly, l2: &HomPoly) -> Result<bool, CurveError> {
    let a = linear_coeffs(l1)?;
    let b = linear_coeffs(l2)?;
    for (i, k) in [(0usize, 1usize), (0, 2), (1, 2)] {
        let cross = a[i].mul(&b[k]).map_err(PolyError::from)?.sub(&a[k].mul(&b[i]).map_err(PolyError::from)?).map_err(PolyError::from)?;
        if !cross.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Two plane linear forms restricting to the two coordinates u, v of the
/// line dual to `p` (a section of the restriction map in degree 1).
fn section_forms(p: &[Scalar; 3], spec: FieldSpec) -> Result<[HomPoly; 2], CurveError> {
    let [b1, b2] = line_basis_at(p, spec)?;
    // solve c·b1 = e1, c·b2 = e2 for the 2×3 system with rows b1, b2
    let solve = |t1: Scalar, t2: Scalar| -> Result<[Scalar; 3], CurveError> {
        let mut r1 = b1.clone();
        let mut r2 = b2.clone();
        let mut rhs = [t1, t2];
        // eliminate: pick pivot column of r1
        let j1 = r1
            .iter()
            .position(|c| !c.is_zero())
            .ok_or_else(|| CurveError::StructureViolation("degenerate line basis".into()))?;
        let piv = r1[j1].inv().map_err(PolyError::from)?;
        for c in r1.iter_mut() {
            *c = c.mul(&piv).map_err(PolyError::from)?;
        }
        rhs[0] = rhs[0].mul(&piv).map_err(PolyError::from)?;
        let factor = r2[j1].clone();
        for (c2, c1) in r2.iter_mut().zip(r1.iter()) {
            *c2 = c2.sub(&factor.mul(c1).map_err(PolyError::from)?).map_err(PolyError::from)?;
        }
        rhs[1] = rhs[1].sub(&factor.mul(&rhs[0]).map_err(PolyError::from)?).map_err(PolyError::from)?;
        let j2 = r2
            .iter()
            .position(|c| !c.is_zero())
            .ok_or_else(|| CurveError::StructureViolation("degenerate line basis".into()))?;
        let piv2 = r2[j2].inv().map_err(PolyError::from)?;
        let x2 = rhs[1].mul(&piv2).map_err(PolyError::from)?;
        // back-substitute into row 1 (its j2 entry)
        let x1 = rhs[0].sub(&r1[j2].mul(&x2).map_err(PolyError::from)?).map_err(PolyError::from)?;
        let mut out = [Scalar::zero(spec), Scalar::zero(spec), Scalar::zero(spec)];
        out[j1] = x1;
        out[j2] = x2;
        Ok(out)
    };
    let c1 = solve(Scalar::one(spec), Scalar::zero(spec))?;
    let c2 = solve(Scalar::zero(spec), Scalar::one(spec))?;
    Ok([HomPoly::linear(c1, spec)?, HomPoly::linear(c2, spec)?])
}

/// Search for a syzygy of the partial derivatives of `f` in one exact
/// degree m, globally (ell = None) or modulo the linear form ell.
/// Returns None when no nonzero syzygy of that degree exists.
pub fn syzygy_min_degree(
    f: &HomPoly,
    ell: Option<&HomPoly>,
    m: u32,
) -> Result<Option<SyzygyTriple>, CurveError> {
    let spec = f.spec;
    let d = f.degree;
    let g = [f.partial(0), f.partial(1), f.partial(2)];
    match ell {
        None => {
            let p = spec.characteristic();
            if p != 0 && d as u64 % p == 0 {
                return Err(CurveError::CharDividesDegree { p, d: d as usize });
            }
            let nm = space_dim(m);
            let target = space_dim(m + d - 1);
            let mons = monomial_basis(m);
            // columns: μ·g_i for each block i and monomial μ
            let mut cols: Vec<Vec<Scalar>> = Vec::with_capacity(3 * nm);
            for gi in &g {
                for mu in &mons {
                    let mu_poly = HomPoly::from_terms(
                        m,
                        spec,
                        [(*mu, Scalar::one(spec))],
                    )?;
                    cols.push(mu_poly.mul(gi)?.coeff_vec());
                }
            }
            let rows: Vec<Vec<Scalar>> = (0..target)
                .map(|r| cols.iter().map(|c| c[r].clone()).collect())
                .collect();
            let ker = kernel_basis(&Mat::from_rows(rows, spec)?)?;
            let Some(v) = ker.into_iter().next() else {
                return Ok(None);
            };
            let s = [
                HomPoly::from_coeff_vec(m, spec, &v[0..nm])?,
                HomPoly::from_coeff_vec(m, spec, &v[nm..2 * nm])?,
                HomPoly::from_coeff_vec(m, spec, &v[2 * nm..])?,
            ];
            // defining identity, asserted
            let mut sum = HomPoly::zero(m + d - 1, spec);
            for (si, gi) in s.iter().zip(&g) {
                sum = sum.add(&si.mul(gi)?)?;
            }
            if !sum.is_zero() {
                return Err(CurveError::StructureViolation(
                    "global syzygy identity failed".into(),
                ));
            }
            Ok(Some(SyzygyTriple {
                s,
                degree: m,
                mod_ell: None,
                s3: None,
            }))
        }
        Some(ell) => {
            // restrict the three partials to the line {ell = 0} and solve
            // the small binary-form system, then lift the solution back
            let pl = linear_coeffs(ell)?;
            let gbar: Vec<BinaryForm> = g
                .iter()
                .map(|gi| restrict_to_line(gi, &pl))
                .collect::<Result<_, _>>()?;
            let rows_n = (m + d) as usize; // coefficients of degree m+d−1
            let mut cols: Vec<Vec<Scalar>> = Vec::with_capacity(3 * (m as usize + 1));
            for gb in &gbar {
                for k in 0..=(m as usize) {
                    // u^k v^(m−k) · gb shifts coefficients up by k
                    let mut col = vec![Scalar::zero(spec); rows_n];
                    for (i, c) in gb.coeffs.iter().enumerate() {
                        col[i + k] = c.clone();
                    }
                    cols.push(col);
                }
            }
            let rows: Vec<Vec<Scalar>> = (0..rows_n)
                .map(|r| cols.iter().map(|c| c[r].clone()).collect())
                .collect();
            let ker = kernel_basis(&Mat::from_rows(rows, spec)?)?;
            let Some(v) = ker.into_iter().next() else {
                return Ok(None);
            };
            let w = m as usize + 1;
            let sbar: Vec<BinaryForm> = (0..3)
                .map(|i| BinaryForm {
                    spec,
                    degree: m,
                    coeffs: v[i * w..(i + 1) * w].to_vec(),
                })
                .collect();
            // lift: substitute plane forms restricting to u and v
            let [lam1, lam2] = section_forms(&pl, spec)?;
            let lift = |sb: &BinaryForm| -> Result<HomPoly, CurveError> {
                let mut acc = HomPoly::zero(m, spec);
                for (k, c) in sb.coeffs.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let t = lam1
                        .pow(k as u32)?
                        .mul(&lam2.pow(m - k as u32)?)?
                        .scale(c)?;
                    acc = acc.add(&t)?;
                }
                Ok(acc)
            };
            let s = [lift(&sbar[0])?, lift(&sbar[1])?, lift(&sbar[2])?];
            // Σ s_i g_i vanishes on {ell = 0}, hence is divisible by ell
            let mut sum = HomPoly::zero(m + d - 1, spec);
            for (si, gi) in s.iter().zip(&g) {
                sum = sum.add(&si.mul(gi)?)?;
            }
            let s3 = if sum.is_zero() {
                HomPoly::zero(m + d - 2, spec)
            } else {
                sum.divide_by_linear(ell)
                    .ok_or_else(|| {
                        CurveError::StructureViolation(
                            "lifted syzygy sum not divisible by the modulus".into(),
                        )
                    })?
                    .scale(&Scalar::from_int(-1, spec))?
            };
            Ok(Some(SyzygyTriple {
                s,
                degree: m,
                mod_ell: Some(ell.clone()),
                s3: Some(s3),
            }))
        }
    }
}

/// Least degree (up to `cap`) admitting a syzygy, with a witness.
pub fn least_syzygy_degree(
    f: &HomPoly,
    ell: Option<&HomPoly>,
    cap: u32,
) -> Result<Option<(u32, SyzygyTriple)>, CurveError> {
    for m in 0..=cap {
        if let Some(t) = syzygy_min_degree(f, ell, m)? {
            return Ok(Some((m, t)));
        }
    }
    Ok(None)
}

/// The three bilinear combinations t₀ = y·s₂ − z·s₁, t₁ = z·s₀ − x·s₂,
/// t₂ = x·s₁ − y·s₀ of a syzygy triple.
pub fn parametrization_forms(syz: &SyzygyTriple) -> Result<[HomPoly; 3], CurveError> {
    let spec = syz.s[0].spec;
    let one = Scalar::one(spec);
    let zero = Scalar::zero(spec);
    let x = HomPoly::linear([one.clone(), zero.clone(), zero.clone()], spec)?;
    let y = HomPoly::linear([zero.clone(), one.clone(), zero.clone()], spec)?;
    let zc = HomPoly::linear([zero.clone(), zero.clone(), one.clone()], spec)?;
    let t0 = y.mul(&syz.s[2])?.sub(&zc.mul(&syz.s[1])?)?;
    let t1 = zc.mul(&syz.s[0])?.sub(&x.mul(&syz.s[2])?)?;
    let t2 = x.mul(&syz.s[1])?.sub(&y.mul(&syz.s[0])?)?;
    Ok([t0, t1, t2])
}

/// Rational parametrization of the core curve by the line dual to P.
#[derive(Debug, Clone)]
pub struct Parametrization {
    pub phi: [BinaryForm; 3],
    /// Common factor removed from the restricted forms.
    pub h: BinaryForm,
    /// deg h = number of peeled lines.
    pub n: usize,
    pub component_degree: u32,
    /// Whether h is a product of linear factors over the base field;
    /// None when undecidable by exhaustive search.
    pub h_splits: Option<bool>,
}

/// Build the parametrization of the core of `rec` from a syzygy of
/// degree m_Z taken modulo the line dual to P (or a global one).
pub fn parametrize(
    z: &PointConfig,
    p: &ProjPoint,
    syz: &SyzygyTriple,
    rec: &CurveRecord,
) -> Result<Parametrization, CurveError> {
    let q = z.spec.characteristic();
    if q != 0 && z.len() as u64 % q == 0 {
        return Err(CurveError::CharacteristicObstruction { p: q, n: z.len() });
    }
    if syz.degree != rec.m_z {
        return Err(CurveError::StructureViolation(format!(
            "syzygy degree {} but m_Z = {}",
            syz.degree, rec.m_z
        )));
    }
    let lp = dual_line(p)?;
    if let Some(ell) = &syz.mod_ell {
        if !proportional_linear(ell, &lp)? {
            return Err(CurveError::StructureViolation(
                "syzygy modulus is not the line dual to P".into(),
            ));
        }
    }
    let t = parametrization_forms(syz)?;
    let tau: Vec<BinaryForm> = t
        .iter()
        .map(|ti| restrict_to_line(ti, &p.coords))
        .collect::<Result<_, _>>()?;
    if tau.iter().all(BinaryForm::is_zero) {
        return Err(CurveError::StructureViolation(
            "restricted parametrization vanishes identically".into(),
        ));
    }
    let mut h = tau[0].clone();
    for ti in &tau[1..] {
        h = h.gcd(ti);
    }
    let h = h.monic();
    let n = h.degree as usize;
    if n != rec.peeled.len() {
        return Err(CurveError::GcdDegreeMismatch {
            got: h.degree,
            expected: rec.peeled.len(),
        });
    }
    let phi: Vec<BinaryForm> = tau
        .iter()
        .map(|ti| {
            ti.exact_div(&h).ok_or_else(|| {
                CurveError::StructureViolation("gcd does not divide a component".into())
            })
        })
        .collect::<Result<_, _>>()?;
    let phi: [BinaryForm; 3] = [phi[0].clone(), phi[1].clone(), phi[2].clone()];
    let component_degree = phi[0].degree;
    if component_degree != rec.core.degree {
        return Err(CurveError::StructureViolation(format!(
            "component degree {component_degree} but core has degree {}",
            rec.core.degree
        )));
    }
    // the defining identity: the core composed with the map is zero
    let comp = compose_binary(&rec.core, &phi)?;
    if !comp.is_zero() {
        return Err(CurveError::StructureViolation(
            "core does not vanish on the parametrized image".into(),
        ));
    }
    let h_splits = binary_splits(&h)?;
    Ok(Parametrization {
        phi,
        h,
        n,
        component_degree,
        h_splits,
    })
}

/// Irreducibility via a global syzygy of the dual arrangement: available
/// only when such a syzygy of degree m_Z exists (free dual arrangement)
/// and the characteristic does not divide |Z|.
pub fn irreducible_by_global_syzygy(
    z: &PointConfig,
    mode: GenericMode,
) -> Result<Option<bool>, CurveError> {
    if z.spec.characteristic() != 0 && z.len() as u64 % z.spec.characteristic() == 0 {
        return Ok(None);
    }
    let m = compute_splitting(z, mode)?.a;
    let mut f = HomPoly::from_terms(0, z.spec, [(Monomial { x: 0, y: 0, z: 0 }, Scalar::one(z.spec))])?;
    let duals: Vec<HomPoly> = z
        .points
        .iter()
        .map(dual_line)
        .collect::<Result<_, _>>()?;
    for l in &duals {
        f = f.mul(l)?;
    }
    let Some(syz) = syzygy_min_degree(&f, None, m)? else {
        return Ok(None);
    };
    let t = parametrization_forms(&syz)?;
    for l in &duals {
        if t.iter().all(|ti| ti.is_zero() || ti.divide_by_linear(l).is_some()) {
            return Ok(Some(false));
        }
    }
    Ok(Some(true))
}

/// Whether adding the point Q keeps the multiplicity index unchanged,
/// decided by the divisibility criterion on the syzygy and cross-checked
/// against direct recomputation.
pub fn mz_after_adding_dual(
    z: &PointConfig,
    q: &ProjPoint,
    syz: &SyzygyTriple,
    mode: GenericMode,
) -> Result<bool, CurveError> {
    let p = z.spec.characteristic();
    if p != 0 && (z.len() as u64 % p == 0 || (z.len() as u64 + 1) % p == 0) {
        return Err(CurveError::CharacteristicObstruction { p, n: z.len() });
    }
    if z.contains(q) {
        return Err(CurveError::StructureViolation("Q already lies in Z".into()));
    }
    let divisible = dual_divides_combination(q, syz)?;
    // independent recomputation of the multiplicity index
    let m0 = compute_splitting(z, mode)?.a;
    let m1 = compute_splitting(&z.with_point(q.clone())?, mode)?.a;
    if (m1 == m0) != divisible {
        return Err(CurveError::StructureViolation(format!(
            "divisibility criterion says {divisible} but index went {m0} to {m1}"
        )));
    }
    Ok(divisible)
}

/// The raw criterion: the line dual to Q = (a:b:c) divides
/// a·s₀ + b·s₁ + c·s₂, globally or modulo the syzygy's linear form.
fn dual_divides_combination(q: &ProjPoint, syz: &SyzygyTriple) -> Result<bool, CurveError> {
    let spec = syz.s[0].spec;
    let mut w = HomPoly::zero(syz.degree, spec);
    for (qi, si) in q.coords.iter().zip(&syz.s) {
        w = w.add(&si.scale(qi)?)?;
    }
    let lq = dual_line(q)?;
    match &syz.mod_ell {
        None => Ok(w.is_zero() || w.divide_by_linear(&lq).is_some()),
        Some(ell) => {
            let pl = linear_coeffs(ell)?;
            let wbar = restrict_to_line(&w, &pl)?;
            if wbar.is_zero() {
                return Ok(true);
            }
            let lbar = restrict_to_line(&lq, &pl)?;
            if lbar.is_zero() {
                return Err(CurveError::StructureViolation(
                    "Q is dual to the syzygy modulus".into(),
                ));
            }
            Ok(wbar.exact_div(&lbar).is_some())
        }
    }
}

/// Exhaustive scan over the projective plane of a prime field for points
/// Q satisfying the divisibility criterion (so m_{Z+Q} = m_Z); requires
/// a global syzygy.
pub fn common_points(z: &PointConfig, syz: &SyzygyTriple) -> Result<Vec<ProjPoint>, CurveError> {
    let FieldSpec::Prime(p) = z.spec else {
        return Err(CurveError::UnsupportedField(
            "exhaustive point scan needs a prime field".into(),
        ));
    };
    if syz.mod_ell.is_some() {
        return Err(CurveError::StructureViolation(
            "global syzygy required".into(),
        ));
    }
    let spec = z.spec;
    let mut out = Vec::new();
    let mut candidates: Vec<[i64; 3]> = Vec::new();
    for b in 0..p as i64 {
        for c in 0..p as i64 {
            candidates.push([1, b, c]);
        }
    }
    for c in 0..p as i64 {
        candidates.push([0, 1, c]);
    }
    candidates.push([0, 0, 1]);
    for cand in candidates {
        let q = ProjPoint::from_ints(cand, spec)?;
        if z.contains(&q) {
            continue;
        }
        if dual_divides_combination(&q, syz)? {
            out.push(q);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::default_probe;
    use crate::schemes::dual_lines;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn config(coords: &[[i64; 3]], spec: FieldSpec) -> PointConfig {
        PointConfig::new(
            coords
                .iter()
                .map(|c| ProjPoint::from_ints(*c, spec).unwrap())
                .collect(),
            spec,
        )
        .unwrap()
    }

    fn four_general() -> PointConfig {
        config(&[[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]], Q)
    }

    #[test]
    fn conic_through_four_points_and_p() {
        let z = four_general();
        let p = ProjPoint::from_ints([2, 3, 7], Q).unwrap();
        let forms = curve_cp(&z, &p, 1).unwrap();
        assert_eq!(forms.len(), 1);
        let f = &forms[0];
        assert_eq!(f.degree, 2);
        for pt in &z.points {
            assert!(f.eval(&pt.coords).unwrap().is_zero());
        }
        assert!(f.eval(&p.coords).unwrap().is_zero());
        let rec = decompose(&z, &p, f, default_probe(1)).unwrap();
        assert!(rec.peeled.is_empty());
        assert!(rec.irreducible_for_this_p);
        assert_eq!(rec.mult_f_at_p, 1);
        assert_eq!(rec.m_zprime, 1);
    }

    #[test]
    fn coordinate_triangle_gives_pencil() {
        // |Z| = 3 coordinate points: balanced splitting, 2-dim kernel
        let z = config(&[[1, 0, 0], [0, 1, 0], [0, 0, 1]], Q);
        let p = ProjPoint::from_ints([1, 2, 3], Q).unwrap();
        let forms = curve_cp(&z, &p, 1).unwrap();
        assert_eq!(forms.len(), 2);
    }

    #[test]
    fn special_base_point_rejected() {
        let z = four_general();
        // on the line through the first two points (z = 0)
        let p = ProjPoint::from_ints([3, 5, 0], Q).unwrap();
        assert!(matches!(
            curve_cp(&z, &p, 1),
            Err(CurveError::SpecialBasePoint)
        ));
    }

    #[test]
    fn line_through_collinear_points() {
        let z = config(&[[0, 0, 1], [1, 0, 1], [2, 0, 1]], Q);
        let p = ProjPoint::from_ints([1, 2, 3], Q).unwrap();
        let forms = curve_cp(&z, &p, 0).unwrap();
        assert_eq!(forms.len(), 1);
        let rec = decompose(&z, &p, &forms[0], default_probe(1)).unwrap();
        assert_eq!(rec.core.degree, 1);
        assert!(rec.peeled.is_empty());
    }

    #[test]
    fn global_syzygy_of_xyz() {
        let f = HomPoly::parse("x*y*z", Q).unwrap();
        assert!(syzygy_min_degree(&f, None, 0).unwrap().is_none());
        let syz = syzygy_min_degree(&f, None, 1).unwrap().unwrap();
        assert_eq!(syz.degree, 1);
        // verify the identity independently
        let mut sum = HomPoly::zero(3, Q);
        for (si, i) in syz.s.iter().zip(0..3) {
            sum = sum.add(&si.mul(&f.partial(i)).unwrap()).unwrap();
        }
        assert!(sum.is_zero());
    }

    #[test]
    fn mod_ell_syzygy_lifts_exactly() {
        // dual arrangement of 4 general points, modulus a general line
        let z = four_general();
        let duals = dual_lines(&z).unwrap();
        let mut f = duals[0].clone();
        for l in &duals[1..] {
            f = f.mul(l).unwrap();
        }
        let ell = HomPoly::parse("x + 2*y + 5*z", Q).unwrap();
        assert!(syzygy_min_degree(&f, Some(&ell), 0).unwrap().is_none());
        let syz = syzygy_min_degree(&f, Some(&ell), 1).unwrap().unwrap();
        // s0 f_x + s1 f_y + s2 f_z + s3 ell = 0 identically
        let mut sum = HomPoly::zero(4, Q);
        for (si, i) in syz.s.iter().zip(0..3) {
            sum = sum.add(&si.mul(&f.partial(i)).unwrap()).unwrap();
        }
        sum = sum
            .add(&syz.s3.as_ref().unwrap().mul(&ell).unwrap())
            .unwrap();
        assert!(sum.is_zero());
        // the restriction of (s0, s1, s2) to the line is nonzero
        let pl = linear_coeffs(&ell).unwrap();
        assert!(syz
            .s
            .iter()
            .any(|si| !restrict_to_line(si, &pl).unwrap().is_zero()));
    }

    #[test]
    fn parametrize_conic_through_four_points() {
        let z = four_general();
        let p = ProjPoint::from_ints([2, 3, 7], Q).unwrap();
        let forms = curve_cp(&z, &p, 1).unwrap();
        let rec = decompose(&z, &p, &forms[0], default_probe(1)).unwrap();
        let duals = dual_lines(&z).unwrap();
        let mut f = duals[0].clone();
        for l in &duals[1..] {
            f = f.mul(l).unwrap();
        }
        let ell = dual_line(&p).unwrap();
        let syz = syzygy_min_degree(&f, Some(&ell), 1).unwrap().unwrap();
        let par = parametrize(&z, &p, &syz, &rec).unwrap();
        assert_eq!(par.n, 0);
        assert_eq!(par.component_degree, 2);
    }

    #[test]
    fn deletion_irreducibility_general_even() {
        // even number of points in linearly general position
        let coords: Vec<[i64; 3]> = (0..6i64).map(|k| [1, k, k * k]).collect();
        let z = config(&coords, Q);
        assert!(irreducibility_by_deletion(&z, default_probe(2)).unwrap());
    }

    #[test]
    fn add_dual_general_point_drops_nothing_only_on_base_locus() {
        // 4 general points, m = 1 < (5−1)/2: a general Q must give false
        let z = four_general();
        let duals = dual_lines(&z).unwrap();
        let mut f = duals[0].clone();
        for l in &duals[1..] {
            f = f.mul(l).unwrap();
        }
        let ell = HomPoly::parse("x + 2*y + 5*z", Q).unwrap();
        let syz = syzygy_min_degree(&f, Some(&ell), 1).unwrap().unwrap();
        let q = ProjPoint::from_ints([3, 1, 7], Q).unwrap();
        assert!(!mz_after_adding_dual(&z, &q, &syz, default_probe(6)).unwrap());
    }

    #[test]
    fn common_points_of_near_pencil_fill_the_heavy_line() {
        // Z = three points on {z = 0} plus a point off it; the dual
        // arrangement x·y·(x+y)·z is free with a degree-1 syzygy, and
        // every curve through Z with a simple base point contains the
        // heavy line, so exactly its remaining points keep the index
        let gf11 = FieldSpec::Prime(11);
        let z = config(&[[1, 0, 0], [0, 1, 0], [1, 1, 0], [0, 0, 1]], gf11);
        let duals = dual_lines(&z).unwrap();
        let mut f = duals[0].clone();
        for l in &duals[1..] {
            f = f.mul(l).unwrap();
        }
        let (deg, syz) = least_syzygy_degree(&f, None, 3).unwrap().unwrap();
        assert_eq!(deg, 1);
        let pts = common_points(&z, &syz).unwrap();
        // the line z = 0 has 12 points over GF(11); 3 already lie in Z
        assert_eq!(pts.len(), 9);
        for q in &pts {
            assert!(q.coords[2].is_zero());
        }
        // recomputation agrees on one qualifying and one generic point
        let m0 = compute_splitting(&z, GenericMode::Symbolic).unwrap().a;
        assert_eq!(m0, 1);
        let m_on = compute_splitting(
            &z.with_point(pts[0].clone()).unwrap(),
            GenericMode::Symbolic,
        )
        .unwrap()
        .a;
        assert_eq!(m_on, 1);
        let off = ProjPoint::from_ints([1, 2, 3], gf11).unwrap();
        let m_off =
            compute_splitting(&z.with_point(off).unwrap(), GenericMode::Symbolic).unwrap().a;
        assert_eq!(m_off, 2);
    }
}
