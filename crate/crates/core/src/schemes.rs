//! Point configurations in the projective plane and the linear algebra of
//! their ideals: Hilbert functions and fat-point dimension counts.
//!
//! Vanishing to order j at a point is always imposed through monomial
//! supports after a change of coordinates moving the point to [0:0:1] —
//! never through derivatives — so every count is valid in any
//! characteristic.  A *generic* point is handled two ways: `Symbolic` uses
//! the function-field point [s:t:1], whose dimensions are certified
//! generic values; `Probe` samples random concrete points, which gives an
//! upper bound on the generic value (dimensions can only grow under
//! specialization) and is exact with high probability.

use crate::field::{random_scalar, FieldError, FieldSpec, Scalar};
use crate::linalg::{self, LinalgError, Mat, RankCertificate};
use crate::poly::{
    complete_to_basis, line_through, monomial_basis, space_dim, HomPoly, Monomial, PolyError,
    ProjTransform,
};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SchemeError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("the zero vector is not a projective point")]
    ZeroPoint,
    #[error("configuration contains a repeated point")]
    DuplicatePoint,
    #[error("configuration is empty")]
    EmptyConfiguration,
    #[error("could not sample a point avoiding the configuration")]
    SamplingFailed,
}

/// A point of the projective plane, stored with its first nonzero
/// coordinate normalized to 1 so equal points compare equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjPoint {
    pub spec: FieldSpec,
    pub coords: [Scalar; 3],
}

impl ProjPoint {
    pub fn new(coords: [Scalar; 3], spec: FieldSpec) -> Result<ProjPoint, SchemeError> {
        let i = coords
            .iter()
            .position(|c| !c.is_zero())
            .ok_or(SchemeError::ZeroPoint)?;
        let inv = coords[i].inv()?;
        let normalized = [
            coords[0].mul(&inv)?,
            coords[1].mul(&inv)?,
            coords[2].mul(&inv)?,
        ];
        Ok(ProjPoint {
            spec,
            coords: normalized,
        })
    }

    pub fn from_ints(coords: [i64; 3], spec: FieldSpec) -> Result<ProjPoint, SchemeError> {
        ProjPoint::new(coords.map(|c| Scalar::from_int(c, spec)), spec)
    }

    /// Embed into the function field over the same base.
    pub fn lift(&self) -> ProjPoint {
        ProjPoint {
            spec: self.spec.function_field(),
            coords: [
                self.coords[0].lift(),
                self.coords[1].lift(),
                self.coords[2].lift(),
            ],
        }
    }
}

/// A finite set of distinct points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointConfig {
    pub spec: FieldSpec,
    pub points: Vec<ProjPoint>,
}

impl PointConfig {
    pub fn new(points: Vec<ProjPoint>, spec: FieldSpec) -> Result<PointConfig, SchemeError> {
        if points.is_empty() {
            return Err(SchemeError::EmptyConfiguration);
        }
        for (i, p) in points.iter().enumerate() {
            if points[..i].contains(p) {
                return Err(SchemeError::DuplicatePoint);
            }
        }
        Ok(PointConfig { spec, points })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn lift(&self) -> PointConfig {
        PointConfig {
            spec: self.spec.function_field(),
            points: self.points.iter().map(ProjPoint::lift).collect(),
        }
    }

    /// Configuration with one point removed.
    pub fn without(&self, idx: usize) -> Result<PointConfig, SchemeError> {
        let mut pts = self.points.clone();
        pts.remove(idx);
        PointConfig::new(pts, self.spec)
    }

    pub fn with_point(&self, p: ProjPoint) -> Result<PointConfig, SchemeError> {
        let mut pts = self.points.clone();
        pts.push(p);
        PointConfig::new(pts, self.spec)
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        self.points.contains(p)
    }
}

/// Evaluation matrix of all degree-`t` monomials at the points.
fn evaluation_matrix(z: &PointConfig, t: u32) -> Result<Mat, SchemeError> {
    let basis = monomial_basis(t);
    let rows = z
        .points
        .iter()
        .map(|p| {
            basis
                .iter()
                .map(|m| eval_monomial(m, &p.coords))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Mat::from_rows(rows, z.spec)?)
}

fn eval_monomial(m: &Monomial, p: &[Scalar; 3]) -> Result<Scalar, FieldError> {
    let mut acc = Scalar::one(p[0].spec());
    for (c, e) in p.iter().zip([m.x, m.y, m.z]) {
        for _ in 0..e {
            acc = acc.mul(c)?;
        }
    }
    Ok(acc)
}

/// dim [I_Z]_t for the reduced scheme of points.
pub fn ideal_dim(z: &PointConfig, t: u32) -> Result<usize, SchemeError> {
    let m = evaluation_matrix(z, t)?;
    let (r, _) = linalg::rank(&m)?;
    Ok(space_dim(t) - r)
}

/// Hilbert function h_Z(t) of the reduced points.
pub fn hilbert_function(z: &PointConfig, t: u32) -> Result<usize, SchemeError> {
    Ok(space_dim(t) - ideal_dim(z, t)?)
}

/// First difference Δh_Z on 0..=tmax.
pub fn delta_hf(z: &PointConfig, tmax: u32) -> Result<Vec<usize>, SchemeError> {
    let mut prev = 0usize;
    let mut out = Vec::with_capacity(tmax as usize + 1);
    for t in 0..=tmax {
        let h = hilbert_function(z, t)?;
        out.push(h - prev);
        prev = h;
    }
    Ok(out)
}

/// The degree-`t` monomials (in transformed coordinates) allowed for a
/// point of multiplicity `j` at [0:0:1]: exponents with x + y ≥ j.
pub fn fat_monomials(j: u32, t: u32) -> Vec<Monomial> {
    monomial_basis(t)
        .into_iter()
        .filter(|m| m.x + m.y >= j)
        .collect()
}

/// Matrix whose kernel is [I_{Z + jP}]_t expressed in the transformed
/// monomial coordinates: rows are evaluations of the allowed monomials at
/// the back-transformed points of Z.
pub fn fatpoint_matrix(
    z: &PointConfig,
    n: &ProjTransform,
    j: u32,
    t: u32,
) -> Result<Mat, SchemeError> {
    let n_inv = n.inverse()?;
    let cols = fat_monomials(j, t);
    let rows = z
        .points
        .iter()
        .map(|p| {
            let q = n_inv.apply(&p.coords)?;
            cols.iter()
                .map(|m| eval_monomial(m, &q))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Mat::from_rows(rows, z.spec)?)
}

/// Number of columns of the fat-point matrix, i.e. dim [I_{jP}]_t.
pub fn fat_cols(j: u32, t: u32) -> usize {
    // monomials of degree t with x + y >= j
    (j..=t).map(|k| k as usize + 1).sum()
}

/// dim [I_{Z + jP}]_t for a concrete point P not in Z.
pub fn fatpoint_dim(
    z: &PointConfig,
    p: &ProjPoint,
    j: u32,
    t: u32,
) -> Result<usize, SchemeError> {
    let n = complete_to_basis(&p.coords, z.spec)?;
    let m = fatpoint_matrix(z, &n, j, t)?;
    let (r, _) = linalg::rank(&m)?;
    Ok(fat_cols(j, t) - r)
}

/// How generic dimensions are computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenericMode {
    /// Random concrete points; `samples` of them, coordinates bounded.
    Probe { samples: usize, seed: u64, bound: i64 },
    /// Function-field point [s : t : 1]; certified.
    Symbolic,
}

/// Confidence attached to a computed generic value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Certificate {
    /// Monte-Carlo only: value is an upper bound that is generically exact.
    MonteCarlo,
    /// Consistent with the forced shape of the invariant being computed.
    RampConsistent,
    /// Proven exact.
    Certified,
}

/// Generic dim [I_{Z + jP}]_t over the configuration's field.
///
/// Probe values are upper bounds for the generic value; a probe result of
/// 0, or a probe matrix of full row rank, is automatically exact, and the
/// certificate says so.
pub fn generic_fatpoint_dim(
    z: &PointConfig,
    j: u32,
    t: u32,
    mode: GenericMode,
) -> Result<(usize, Certificate), SchemeError> {
    match mode {
        GenericMode::Symbolic => {
            let zf = z.lift();
            let spec = zf.spec;
            let base = match spec {
                FieldSpec::Function(b) => b,
                _ => unreachable!(),
            };
            let s = Scalar::variable(base, crate::field::Var::S);
            let tt = Scalar::variable(base, crate::field::Var::T);
            let one = Scalar::one(spec);
            let zero = Scalar::zero(spec);
            // N maps [0:0:1] to [s:t:1]
            let n = ProjTransform::new(
                [
                    [one.clone(), zero.clone(), s],
                    [zero.clone(), one.clone(), tt],
                    [zero.clone(), zero.clone(), one.clone()],
                ],
                spec,
            )?;
            let m = fatpoint_matrix(&zf, &n, j, t)?;
            let (r, _) = linalg::rank(&m)?;
            Ok((fat_cols(j, t) - r, Certificate::Certified))
        }
        GenericMode::Probe { samples, seed, bound } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut best: Option<usize> = None;
            let mut full_row_rank = false;
            for _ in 0..samples.max(1) {
                let p = sample_point(z, bound, &mut rng)?;
                let n = complete_to_basis(&p.coords, z.spec)?;
                let m = fatpoint_matrix(z, &n, j, t)?;
                let (r, _) = linalg::rank(&m)?;
                let dim = fat_cols(j, t) - r;
                if r == m.rows {
                    full_row_rank = true;
                }
                best = Some(best.map_or(dim, |b| b.min(dim)));
            }
            let dim = best.unwrap();
            let cert = if dim == 0 || full_row_rank {
                Certificate::Certified
            } else {
                Certificate::MonteCarlo
            };
            Ok((dim, cert))
        }
    }
}

/// h¹ of the ideal sheaf of Z + jP twisted by j+1, for generic P: the
/// generic fat-point dimension plus |Z| − (2j+3), clamped at 0.
pub fn h1_fatpoint(
    z: &PointConfig,
    j: u32,
    mode: GenericMode,
) -> Result<(usize, Certificate), SchemeError> {
    let (dim, cert) = generic_fatpoint_dim(z, j, j + 1, mode)?;
    let val = dim as i64 + z.len() as i64 - (2 * j as i64 + 3);
    Ok((val.max(0) as usize, cert))
}

/// Sample a random point with coordinates [r1 : r2 : 1] avoiding Z.
pub fn sample_point<R: Rng>(
    z: &PointConfig,
    bound: i64,
    rng: &mut R,
) -> Result<ProjPoint, SchemeError> {
    for _ in 0..1000 {
        let a = random_scalar(z.spec, bound, rng);
        let b = random_scalar(z.spec, bound, rng);
        let p = ProjPoint::new([a, b, Scalar::one(z.spec)], z.spec)?;
        if !z.contains(&p) {
            return Ok(p);
        }
    }
    Err(SchemeError::SamplingFailed)
}

/// Largest number of points of Z lying on one line.
pub fn max_collinear(z: &PointConfig) -> Result<usize, SchemeError> {
    let n = z.len();
    if n <= 2 {
        return Ok(n);
    }
    let mut best = 2usize;
    for i in 0..n {
        for k in (i + 1)..n {
            let l = line_through(&z.points[i].coords, &z.points[k].coords, z.spec)?;
            let count = z
                .points
                .iter()
                .filter(|p| l.eval(&p.coords).map(|v| v.is_zero()).unwrap_or(false))
                .count();
            best = best.max(count);
        }
    }
    Ok(best)
}

/// The dual line of a point: the linear form with the point's coordinates.
pub fn dual_line(p: &ProjPoint) -> Result<HomPoly, SchemeError> {
    Ok(HomPoly::linear(p.coords.clone(), p.spec)?)
}

/// Dual lines of all points of a configuration.
pub fn dual_lines(z: &PointConfig) -> Result<Vec<HomPoly>, SchemeError> {
    z.points.iter().map(dual_line).collect()
}

/// The dual points of a set of lines: coefficients become coordinates.
pub fn dual_points(lines: &[HomPoly], spec: FieldSpec) -> Result<PointConfig, SchemeError> {
    let pts = lines
        .iter()
        .map(|l| {
            let coeffs = [
                l.coeff(&Monomial { x: 1, y: 0, z: 0 }),
                l.coeff(&Monomial { x: 0, y: 1, z: 0 }),
                l.coeff(&Monomial { x: 0, y: 0, z: 1 }),
            ];
            ProjPoint::new(coeffs, spec)
        })
        .collect::<Result<Vec<_>, _>>()?;
    PointConfig::new(pts, spec)
}

/// Generic rank certificate passthrough for callers that need to report it.
pub fn rank_with_certificate(m: &Mat) -> Result<(usize, RankCertificate), SchemeError> {
    Ok(linalg::rank(m)?)
}

/// Random configuration of n distinct points, for property tests.
pub fn random_config<R: Rng>(
    n: usize,
    spec: FieldSpec,
    bound: i64,
    rng: &mut R,
) -> Result<PointConfig, SchemeError> {
    let mut pts: Vec<ProjPoint> = Vec::new();
    let mut tries = 0;
    while pts.len() < n {
        tries += 1;
        if tries > 10000 {
            return Err(SchemeError::SamplingFailed);
        }
        let a = random_scalar(spec, bound, rng);
        let b = random_scalar(spec, bound, rng);
        let p = ProjPoint::new([a, b, Scalar::one(spec)], spec)?;
        if !pts.contains(&p) {
            pts.push(p);
        }
    }
    PointConfig::new(pts, spec)
}

#[cfg(test)]
mod tests {
    use super::*;

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

    #[test]
    fn normalization_and_duplicates() {
        let p = ProjPoint::from_ints([2, 4, 6], Q).unwrap();
        let q = ProjPoint::from_ints([1, 2, 3], Q).unwrap();
        assert_eq!(p, q);
        assert!(PointConfig::new(vec![p, q], Q).is_err());
    }

    #[test]
    fn hilbert_function_general_points() {
        // 5 points in general position: h = min(C(t+2,2), 5)
        let z = config(&[[0, 0, 1], [1, 0, 1], [0, 1, 1], [1, 1, 1], [2, 3, 1]], Q);
        assert_eq!(hilbert_function(&z, 0).unwrap(), 1);
        assert_eq!(hilbert_function(&z, 1).unwrap(), 3);
        assert_eq!(hilbert_function(&z, 2).unwrap(), 5);
        assert_eq!(hilbert_function(&z, 3).unwrap(), 5);
        assert_eq!(delta_hf(&z, 3).unwrap(), vec![1, 2, 2, 0]);
    }

    #[test]
    fn hilbert_function_collinear_points() {
        // 4 collinear points: h = min(t+1, 4)
        let z = config(&[[0, 0, 1], [1, 0, 1], [2, 0, 1], [3, 0, 1]], Q);
        assert_eq!(hilbert_function(&z, 1).unwrap(), 2);
        assert_eq!(hilbert_function(&z, 2).unwrap(), 3);
        assert_eq!(hilbert_function(&z, 3).unwrap(), 4);
        assert_eq!(hilbert_function(&z, 4).unwrap(), 4);
        assert_eq!(max_collinear(&z).unwrap(), 4);
    }

    #[test]
    fn fat_point_alone() {
        // a double point imposes 3 conditions on conics: dim [I_{2P}]_2 = 3
        let z = config(&[[5, 7, 1]], Q);
        let p = ProjPoint::from_ints([0, 0, 1], Q).unwrap();
        // use a configuration far from P so only the fat point matters:
        // dim [I_{2P}]_2 = 6 - 3 = 3, minus one condition for the extra point
        let d = fatpoint_dim(&z, &p, 2, 2).unwrap();
        assert_eq!(d, 2);
        assert_eq!(fat_cols(2, 2), 3);
    }

    #[test]
    fn probe_vs_symbolic_generic_dims() {
        let z = config(&[[0, 0, 1], [1, 0, 1], [0, 1, 1], [1, 1, 1], [2, 3, 1]], Q);
        for (j, t) in [(1u32, 2u32), (2, 3), (2, 2)] {
            let (ds, cs) = generic_fatpoint_dim(&z, j, t, GenericMode::Symbolic).unwrap();
            let (dp, _) = generic_fatpoint_dim(
                &z,
                j,
                t,
                GenericMode::Probe {
                    samples: 2,
                    seed: 11,
                    bound: 1000,
                },
            )
            .unwrap();
            assert_eq!(ds, dp);
            assert_eq!(cs, Certificate::Certified);
        }
    }

    #[test]
    fn duality_roundtrip() {
        let z = config(&[[1, 2, 3], [0, 1, 0], [4, 0, 1]], Q);
        let lines = dual_lines(&z).unwrap();
        let back = dual_points(&lines, Q).unwrap();
        assert_eq!(z, back);
    }
}
