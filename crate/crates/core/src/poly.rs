//! Homogeneous polynomials in x, y, z over an exact field, plus binary
//! forms living on a line.
//!
//! Monomials are ordered graded-lexicographically with x > y > z.  All
//! polynomials carry their field; mixing fields is an error.

use crate::field::{FieldError, FieldSpec, Scalar};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("polynomial is not homogeneous of a single degree")]
    NotHomogeneous,
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(u32, u32),
    #[error("cannot parse polynomial `{0}`")]
    Parse(String),
    #[error("transform matrix is singular")]
    SingularTransform,
    #[error("expected a nonzero linear form")]
    NotLinear,
}

/// Exponent triple (x, y, z).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Monomial {
    pub x: u32,
    pub y: u32,
    pub z: u32,
}

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.x + self.y + self.z
    }
}

// Graded lex, x > y > z.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then(self.x.cmp(&other.x))
            .then(self.y.cmp(&other.y))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials of total degree `d`, in decreasing graded-lex order.
/// This fixed order is what matrix columns are indexed by everywhere.
pub fn monomial_basis(d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for x in (0..=d).rev() {
        for y in (0..=(d - x)).rev() {
            out.push(Monomial { x, y, z: d - x - y });
        }
    }
    out
}

/// Dimension of the space of degree-`d` forms, i.e. C(d+2, 2).
pub fn space_dim(d: u32) -> usize {
    ((d as usize + 1) * (d as usize + 2)) / 2
}

/// A homogeneous form of a fixed degree.  The zero form remembers its
/// degree so linear algebra over coefficient vectors stays well typed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomPoly {
    pub spec: FieldSpec,
    pub degree: u32,
    pub terms: BTreeMap<Monomial, Scalar>,
}

impl HomPoly {
    pub fn zero(degree: u32, spec: FieldSpec) -> HomPoly {
        HomPoly {
            spec,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms(
        degree: u32,
        spec: FieldSpec,
        terms: impl IntoIterator<Item = (Monomial, Scalar)>,
    ) -> Result<HomPoly, PolyError> {
        let mut map: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for (m, c) in terms {
            if m.degree() != degree {
                return Err(PolyError::NotHomogeneous);
            }
            if c.spec() != spec {
                return Err(FieldError::FieldMismatch(c.spec().to_string(), spec.to_string()).into());
            }
            if c.is_zero() {
                continue;
            }
            match map.get_mut(&m) {
                Some(e) => {
                    *e = e.add(&c)?;
                    if e.is_zero() {
                        map.remove(&m);
                    }
                }
                None => {
                    map.insert(m, c);
                }
            }
        }
        Ok(HomPoly {
            spec,
            degree,
            terms: map,
        })
    }

    /// The linear form a·x + b·y + c·z.
    pub fn linear(coeffs: [Scalar; 3], spec: FieldSpec) -> Result<HomPoly, PolyError> {
        let [a, b, c] = coeffs;
        HomPoly::from_terms(
            1,
            spec,
            [
                (Monomial { x: 1, y: 0, z: 0 }, a),
                (Monomial { x: 0, y: 1, z: 0 }, b),
                (Monomial { x: 0, y: 0, z: 1 }, c),
            ],
        )
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| Scalar::zero(self.spec))
    }

    /// Coefficient vector with respect to [`monomial_basis`] of this degree.
    pub fn coeff_vec(&self) -> Vec<Scalar> {
        monomial_basis(self.degree)
            .iter()
            .map(|m| self.coeff(m))
            .collect()
    }

    pub fn from_coeff_vec(degree: u32, spec: FieldSpec, v: &[Scalar]) -> Result<HomPoly, PolyError> {
        let basis = monomial_basis(degree);
        if basis.len() != v.len() {
            return Err(PolyError::DegreeMismatch(degree, v.len() as u32));
        }
        HomPoly::from_terms(degree, spec, basis.into_iter().zip(v.iter().cloned()))
    }

    pub fn add(&self, other: &HomPoly) -> Result<HomPoly, PolyError> {
        if self.degree != other.degree {
            return Err(PolyError::DegreeMismatch(self.degree, other.degree));
        }
        HomPoly::from_terms(
            self.degree,
            self.spec,
            self.terms
                .iter()
                .chain(other.terms.iter())
                .map(|(m, c)| (*m, c.clone())),
        )
    }

    pub fn sub(&self, other: &HomPoly) -> Result<HomPoly, PolyError> {
        self.add(&other.scale(&Scalar::one(self.spec).neg())?)
    }

    pub fn scale(&self, c: &Scalar) -> Result<HomPoly, PolyError> {
        HomPoly::from_terms(
            self.degree,
            self.spec,
            self.terms.iter().map(|(m, v)| (*m, v.mul(c).unwrap())),
        )
    }

    pub fn mul(&self, other: &HomPoly) -> Result<HomPoly, PolyError> {
        let mut terms: Vec<(Monomial, Scalar)> = Vec::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                terms.push((
                    Monomial {
                        x: m1.x + m2.x,
                        y: m1.y + m2.y,
                        z: m1.z + m2.z,
                    },
                    c1.mul(c2)?,
                ));
            }
        }
        HomPoly::from_terms(self.degree + other.degree, self.spec, terms)
    }

    pub fn pow(&self, e: u32) -> Result<HomPoly, PolyError> {
        let mut acc = HomPoly::from_terms(
            0,
            self.spec,
            [(Monomial { x: 0, y: 0, z: 0 }, Scalar::one(self.spec))],
        )?;
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn eval(&self, p: &[Scalar; 3]) -> Result<Scalar, FieldError> {
        let mut acc = Scalar::zero(self.spec);
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (coord, e) in p.iter().zip([m.x, m.y, m.z]) {
                for _ in 0..e {
                    term = term.mul(coord)?;
                }
            }
            acc = acc.add(&term)?;
        }
        Ok(acc)
    }

    /// Formal partial derivative; valid in any characteristic (exponents
    /// are reduced into the field, so terms may die in small characteristic).
    pub fn partial(&self, var: usize) -> HomPoly {
        if self.degree == 0 {
            return HomPoly::zero(0, self.spec);
        }
        let mut terms = Vec::new();
        for (m, c) in &self.terms {
            let e = [m.x, m.y, m.z][var];
            if e == 0 {
                continue;
            }
            let mut m2 = *m;
            match var {
                0 => m2.x -= 1,
                1 => m2.y -= 1,
                _ => m2.z -= 1,
            }
            let factor = Scalar::from_int(e as i64, self.spec);
            if factor.is_zero() {
                continue;
            }
            terms.push((m2, c.mul(&factor).unwrap()));
        }
        HomPoly::from_terms(self.degree - 1, self.spec, terms).unwrap()
    }

    /// Euler identity check: x·F_x + y·F_y + z·F_z = deg(F)·F.
    pub fn euler_check(&self) -> bool {
        let vars = [
            Monomial { x: 1, y: 0, z: 0 },
            Monomial { x: 0, y: 1, z: 0 },
            Monomial { x: 0, y: 0, z: 1 },
        ];
        let mut acc = HomPoly::zero(self.degree, self.spec);
        for (i, v) in vars.iter().enumerate() {
            let vp = HomPoly::from_terms(1, self.spec, [(*v, Scalar::one(self.spec))]).unwrap();
            acc = acc.add(&vp.mul(&self.partial(i)).unwrap()).unwrap();
        }
        let d = Scalar::from_int(self.degree as i64, self.spec);
        acc == self.scale(&d).unwrap()
    }

    /// Substitute variables by the columns' action: returns G with
    /// G(v) = F(M·v).
    pub fn apply_transform(&self, m: &ProjTransform) -> Result<HomPoly, PolyError> {
        // Images of x, y, z as linear forms (rows of M).
        let rows: Vec<HomPoly> = (0..3)
            .map(|i| {
                HomPoly::linear(
                    [m.entries[i][0].clone(), m.entries[i][1].clone(), m.entries[i][2].clone()],
                    self.spec,
                )
            })
            .collect::<Result<_, _>>()?;
        let mut acc = HomPoly::zero(self.degree, self.spec);
        for (mono, c) in &self.terms {
            let mut term = HomPoly::from_terms(
                0,
                self.spec,
                [(Monomial { x: 0, y: 0, z: 0 }, c.clone())],
            )?;
            for (row, e) in rows.iter().zip([mono.x, mono.y, mono.z]) {
                term = term.mul(&row.pow(e)?)?;
            }
            acc = acc.add(&term)?;
        }
        Ok(acc)
    }

    /// Exact division by a linear form: `Some(q)` with `self = q·l`, or
    /// `None` if `l` does not divide.
    pub fn divide_by_linear(&self, l: &HomPoly) -> Option<HomPoly> {
        if l.degree != 1 || l.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(HomPoly::zero(self.degree.saturating_sub(1), self.spec));
        }
        if self.degree == 0 {
            return None;
        }
        let (lm, lc) = l.terms.iter().next_back().map(|(m, c)| (*m, c.clone()))?;
        let lc_inv = lc.inv().ok()?;
        let mut rem = self.clone();
        let mut quo = HomPoly::zero(self.degree - 1, self.spec);
        while let Some((rm, rc)) = rem.terms.iter().next_back().map(|(m, c)| (*m, c.clone())) {
            if rm.x < lm.x || rm.y < lm.y || rm.z < lm.z {
                return None;
            }
            let qm = Monomial {
                x: rm.x - lm.x,
                y: rm.y - lm.y,
                z: rm.z - lm.z,
            };
            let qc = rc.mul(&lc_inv).ok()?;
            let q1 = HomPoly::from_terms(self.degree - 1, self.spec, [(qm, qc)]).ok()?;
            quo = quo.add(&q1).ok()?;
            rem = rem.sub(&q1.mul(l).ok()?).ok()?;
        }
        Some(quo)
    }

    /// Order of vanishing at a projective point.
    pub fn multiplicity_at(&self, p: &[Scalar; 3]) -> Result<u32, PolyError> {
        if self.is_zero() {
            return Ok(u32::MAX);
        }
        let n = complete_to_basis(p, self.spec)?;
        let g = self.apply_transform(&n)?;
        // After the change of coordinates the point is [0:0:1]; the order of
        // vanishing is the least x+y exponent present.
        Ok(g.terms.keys().map(|m| m.x + m.y).min().unwrap())
    }

    pub fn parse(text: &str, spec: FieldSpec) -> Result<HomPoly, PolyError> {
        let terms = parse_terms(text, &["x", "y", "z"], spec)?;
        let mut degree: Option<u32> = None;
        let mut list = Vec::new();
        for (exps, coeff) in terms {
            let m = Monomial {
                x: exps[0],
                y: exps[1],
                z: exps[2],
            };
            if coeff.is_zero() {
                continue;
            }
            match degree {
                None => degree = Some(m.degree()),
                Some(d) if d != m.degree() => return Err(PolyError::NotHomogeneous),
                _ => {}
            }
            list.push((m, coeff));
        }
        HomPoly::from_terms(degree.unwrap_or(0), spec, list)
    }
}

impl fmt::Display for HomPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let mut parts = Vec::new();
            for (name, e) in [("x", m.x), ("y", m.y), ("z", m.z)] {
                match e {
                    0 => {}
                    1 => parts.push(name.to_string()),
                    _ => parts.push(format!("{name}^{e}")),
                }
            }
            let mono = parts.join("*");
            let term = if mono.is_empty() {
                c.to_string()
            } else if c.is_one() {
                mono
            } else if c.neg().is_one() {
                format!("-{mono}")
            } else {
                format!("{c}*{mono}")
            };
            if i == 0 {
                write!(f, "{term}")?;
            } else if let Some(rest) = term.strip_prefix('-') {
                write!(f, " - {rest}")?;
            } else {
                write!(f, " + {term}")?;
            }
        }
        Ok(())
    }
}

/// Parse a sum of terms like `x^2*y - 3*z^3` over the named variables.
/// Returns (exponent vector, coefficient) pairs.  Shared by the xyz and st
/// polynomial parsers.
pub fn parse_terms(
    text: &str,
    vars: &[&str],
    spec: FieldSpec,
) -> Result<Vec<(Vec<u32>, Scalar)>, PolyError> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(PolyError::Parse(text.into()));
    }
    // Split into signed terms.
    let mut terms: Vec<(i32, String)> = Vec::new();
    let mut sign = 1;
    let mut cur = String::new();
    for (i, ch) in s.char_indices() {
        match ch {
            '+' | '-' if i > 0 => {
                if cur.is_empty() {
                    // consecutive signs combine, e.g. `+ -3`
                    if ch == '-' {
                        sign = -sign;
                    }
                } else {
                    terms.push((sign, std::mem::take(&mut cur)));
                    sign = if ch == '-' { -1 } else { 1 };
                }
            }
            '-' => sign = -1,
            '+' => {}
            _ => cur.push(ch),
        }
    }
    if cur.is_empty() {
        return Err(PolyError::Parse(text.into()));
    }
    terms.push((sign, cur));

    let mut out = Vec::new();
    for (sign, term) in terms {
        let mut coeff = Scalar::from_int(sign as i64, spec);
        let mut exps = vec![0u32; vars.len()];
        for factor in term.split('*') {
            if factor.is_empty() {
                return Err(PolyError::Parse(text.into()));
            }
            let (head, exp) = match factor.split_once('^') {
                Some((h, e)) => {
                    let e: u32 = e.parse().map_err(|_| PolyError::Parse(text.into()))?;
                    (h, e)
                }
                None => (factor, 1),
            };
            if let Some(vi) = vars.iter().position(|v| *v == head) {
                exps[vi] += exp;
            } else {
                // numeric factor, possibly rational
                let c = Scalar::parse(head, spec.base())
                    .map_err(|_| PolyError::Parse(text.into()))?;
                let c = if spec == spec.base() { c } else { c.lift() };
                if exp != 1 {
                    let mut p = Scalar::one(spec);
                    for _ in 0..exp {
                        p = p.mul(&c).unwrap();
                    }
                    coeff = coeff.mul(&p).unwrap();
                } else {
                    coeff = coeff.mul(&c).unwrap();
                }
            }
        }
        out.push((exps, coeff));
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Projective transforms
// ---------------------------------------------------------------------------

/// An invertible 3×3 matrix acting on the plane.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjTransform {
    pub spec: FieldSpec,
    pub entries: [[Scalar; 3]; 3],
}

impl ProjTransform {
    pub fn new(entries: [[Scalar; 3]; 3], spec: FieldSpec) -> Result<ProjTransform, PolyError> {
        let t = ProjTransform { spec, entries };
        if t.det()?.is_zero() {
            return Err(PolyError::SingularTransform);
        }
        Ok(t)
    }

    pub fn det(&self) -> Result<Scalar, FieldError> {
        let e = &self.entries;
        let mut acc = Scalar::zero(self.spec);
        for (c0, c1, c2, sgn) in [
            (0, 1, 2, 1i64),
            (1, 2, 0, 1),
            (2, 0, 1, 1),
            (2, 1, 0, -1),
            (1, 0, 2, -1),
            (0, 2, 1, -1),
        ] {
            let t = e[0][c0]
                .mul(&e[1][c1])?
                .mul(&e[2][c2])?
                .mul(&Scalar::from_int(sgn, self.spec))?;
            acc = acc.add(&t)?;
        }
        Ok(acc)
    }

    pub fn inverse(&self) -> Result<ProjTransform, PolyError> {
        let d = self.det()?;
        if d.is_zero() {
            return Err(PolyError::SingularTransform);
        }
        let dinv = d.inv()?;
        let e = &self.entries;
        let cof = |r: usize, c: usize| -> Result<Scalar, FieldError> {
            let rs: Vec<usize> = (0..3).filter(|i| *i != r).collect();
            let cs: Vec<usize> = (0..3).filter(|i| *i != c).collect();
            let m = e[rs[0]][cs[0]]
                .mul(&e[rs[1]][cs[1]])?
                .sub(&e[rs[0]][cs[1]].mul(&e[rs[1]][cs[0]])?)?;
            let sgn = if (r + c) % 2 == 0 { 1 } else { -1 };
            m.mul(&Scalar::from_int(sgn, self.spec))
        };
        let mut entries: Vec<Vec<Scalar>> = Vec::new();
        for r in 0..3 {
            let mut row = Vec::new();
            for c in 0..3 {
                // adjugate is the transposed cofactor matrix
                row.push(cof(c, r)?.mul(&dinv)?);
            }
            entries.push(row);
        }
        let arr = [
            [entries[0][0].clone(), entries[0][1].clone(), entries[0][2].clone()],
            [entries[1][0].clone(), entries[1][1].clone(), entries[1][2].clone()],
            [entries[2][0].clone(), entries[2][1].clone(), entries[2][2].clone()],
        ];
        Ok(ProjTransform {
            spec: self.spec,
            entries: arr,
        })
    }

    pub fn apply(&self, p: &[Scalar; 3]) -> Result<[Scalar; 3], FieldError> {
        let mut out = [
            Scalar::zero(self.spec),
            Scalar::zero(self.spec),
            Scalar::zero(self.spec),
        ];
        for i in 0..3 {
            for j in 0..3 {
                out[i] = out[i].add(&self.entries[i][j].mul(&p[j])?)?;
            }
        }
        Ok(out)
    }
}

/// Complete a nonzero point to a basis: the returned transform sends
/// [0:0:1] to the point, with the other two columns standard basis vectors
/// chosen deterministically (the two indices other than the first nonzero
/// coordinate of the point).
pub fn complete_to_basis(p: &[Scalar; 3], spec: FieldSpec) -> Result<ProjTransform, PolyError> {
    let i = p
        .iter()
        .position(|c| !c.is_zero())
        .ok_or(PolyError::SingularTransform)?;
    let others: Vec<usize> = (0..3).filter(|j| *j != i).collect();
    let col = |j: usize| -> [Scalar; 3] {
        let mut v = [
            Scalar::zero(spec),
            Scalar::zero(spec),
            Scalar::zero(spec),
        ];
        v[j] = Scalar::one(spec);
        v
    };
    let cols = [col(others[0]), col(others[1]), p.clone()];
    let entries = [
        [cols[0][0].clone(), cols[1][0].clone(), cols[2][0].clone()],
        [cols[0][1].clone(), cols[1][1].clone(), cols[2][1].clone()],
        [cols[0][2].clone(), cols[1][2].clone(), cols[2][2].clone()],
    ];
    ProjTransform::new(entries, spec)
}

// ---------------------------------------------------------------------------
// Binary forms on a line
// ---------------------------------------------------------------------------

/// Homogeneous form in two parameters (u, v); `coeffs[i]` multiplies
/// u^i v^(d-i).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryForm {
    pub spec: FieldSpec,
    pub degree: u32,
    pub coeffs: Vec<Scalar>,
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let d = self.degree;
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mut parts = Vec::new();
            for (name, e) in [("u", i as u32), ("v", d - i as u32)] {
                match e {
                    0 => {}
                    1 => parts.push(name.to_string()),
                    _ => parts.push(format!("{name}^{e}")),
                }
            }
            let mono = parts.join("*");
            let term = if mono.is_empty() {
                c.to_string()
            } else if c.is_one() {
                mono
            } else if c.neg().is_one() {
                format!("-{mono}")
            } else {
                format!("{c}*{mono}")
            };
            if first {
                write!(f, "{term}")?;
                first = false;
            } else if let Some(rest) = term.strip_prefix('-') {
                write!(f, " - {rest}")?;
            } else {
                write!(f, " + {term}")?;
            }
        }
        Ok(())
    }
}

impl BinaryForm {
    pub fn zero(degree: u32, spec: FieldSpec) -> BinaryForm {
        BinaryForm {
            spec,
            degree,
            coeffs: vec![Scalar::zero(spec); degree as usize + 1],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    pub fn mul(&self, other: &BinaryForm) -> BinaryForm {
        let d = self.degree + other.degree;
        let mut out = BinaryForm::zero(d, self.spec);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let prod = a.mul(b).unwrap();
                out.coeffs[i + j] = out.coeffs[i + j].add(&prod).unwrap();
            }
        }
        out
    }

    pub fn add(&self, other: &BinaryForm) -> Result<BinaryForm, PolyError> {
        if self.degree != other.degree {
            return Err(PolyError::DegreeMismatch(self.degree, other.degree));
        }
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.add(b))
            .collect::<Result<_, _>>()?;
        Ok(BinaryForm {
            spec: self.spec,
            degree: self.degree,
            coeffs,
        })
    }

    pub fn scale(&self, c: &Scalar) -> BinaryForm {
        BinaryForm {
            spec: self.spec,
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|a| a.mul(c).unwrap()).collect(),
        }
    }

    /// Normalize so the highest nonzero coefficient is 1.
    pub fn monic(&self) -> BinaryForm {
        match self.coeffs.iter().rposition(|c| !c.is_zero()) {
            None => self.clone(),
            Some(i) => self.scale(&self.coeffs[i].inv().unwrap()),
        }
    }

    /// Greatest common divisor as binary forms, normalized monic.  Common
    /// powers of both variables are tracked separately from the Euclidean
    /// part on dehomogenizations.
    pub fn gcd(&self, other: &BinaryForm) -> BinaryForm {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        let spec = self.spec;
        // split off powers of u (low coefficients zero) and v (high zero)
        let split = |f: &BinaryForm| -> (u32, u32, Vec<Scalar>) {
            let lo = f.coeffs.iter().position(|c| !c.is_zero()).unwrap();
            let hi = f.coeffs.iter().rposition(|c| !c.is_zero()).unwrap();
            (lo as u32, (f.degree as usize - hi) as u32, f.coeffs[lo..=hi].to_vec())
        };
        let (u1, v1, c1) = split(self);
        let (u2, v2, c2) = split(other);
        // Euclid on the dehomogenized parts (polynomials in u with v = 1).
        let gcd_uni = |mut a: Vec<Scalar>, mut b: Vec<Scalar>| -> Vec<Scalar> {
            let trim = |v: &mut Vec<Scalar>| {
                while v.last().map(|c| c.is_zero()).unwrap_or(false) {
                    v.pop();
                }
            };
            trim(&mut a);
            trim(&mut b);
            while !b.is_empty() {
                // a mod b
                let lb = b.last().unwrap().inv().unwrap();
                while a.len() >= b.len() && !a.is_empty() {
                    let q = a.last().unwrap().mul(&lb).unwrap();
                    let shift = a.len() - b.len();
                    for (i, c) in b.iter().enumerate() {
                        let s = q.mul(c).unwrap();
                        a[i + shift] = a[i + shift].sub(&s).unwrap();
                    }
                    trim(&mut a);
                }
                std::mem::swap(&mut a, &mut b);
            }
            a
        };
        let g = gcd_uni(c1, c2);
        let gu = u1.min(u2);
        let gv = v1.min(v2);
        let gdeg = gu + gv + (g.len() as u32 - 1);
        let mut coeffs = vec![Scalar::zero(spec); gdeg as usize + 1];
        for (i, c) in g.iter().enumerate() {
            coeffs[gu as usize + i] = c.clone();
        }
        BinaryForm {
            spec,
            degree: gdeg,
            coeffs,
        }
        .monic()
    }

    /// Exact division, `None` when `d` does not divide.
    pub fn exact_div(&self, d: &BinaryForm) -> Option<BinaryForm> {
        if d.is_zero() || d.degree > self.degree {
            return None;
        }
        if self.is_zero() {
            return Some(BinaryForm::zero(self.degree - d.degree, self.spec));
        }
        // long division treating u as the main variable; handle v-powers of
        // the divisor first
        let dlo = d.coeffs.iter().position(|c| !c.is_zero()).unwrap();
        let slo = self.coeffs.iter().position(|c| !c.is_zero()).unwrap();
        if slo < dlo {
            return None;
        }
        let mut rem = self.coeffs[..].to_vec();
        let qd = (self.degree - d.degree) as usize;
        let mut quo = vec![Scalar::zero(self.spec); qd + 1];
        let dhi = d.coeffs.iter().rposition(|c| !c.is_zero()).unwrap();
        let lc_inv = d.coeffs[dhi].inv().ok()?;
        for qi in (0..=qd).rev() {
            let ri = qi + dhi;
            if ri >= rem.len() || rem[ri].is_zero() {
                continue;
            }
            let q = rem[ri].mul(&lc_inv).ok()?;
            for (i, c) in d.coeffs.iter().enumerate() {
                let s = q.mul(c).ok()?;
                rem[qi + i] = rem[qi + i].sub(&s).ok()?;
            }
            quo[qi] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(BinaryForm {
            spec: self.spec,
            degree: self.degree - d.degree,
            coeffs: quo,
        })
    }
}

impl BinaryForm {
    /// Evaluate at a point [u : v].
    pub fn eval(&self, u: &Scalar, v: &Scalar) -> Result<Scalar, FieldError> {
        let mut acc = Scalar::zero(self.spec);
        let d = self.degree as usize;
        let mut upow = Scalar::one(self.spec);
        // powers of v computed top-down: v^(d-k) = v^d / ... avoid division
        let mut vpows = Vec::with_capacity(d + 1);
        let mut vp = Scalar::one(self.spec);
        for _ in 0..=d {
            vpows.push(vp.clone());
            vp = vp.mul(v)?;
        }
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add(&c.mul(&upow)?.mul(&vpows[d - k])?)?;
            }
            upow = upow.mul(u)?;
        }
        Ok(acc)
    }

    /// The monic linear form vanishing at [u0 : v0], namely v0·u − u0·v.
    pub fn vanishing_linear(u0: &Scalar, v0: &Scalar, spec: FieldSpec) -> BinaryForm {
        BinaryForm {
            spec,
            degree: 1,
            coeffs: vec![u0.neg(), v0.clone()],
        }
        .monic()
    }
}

/// Substitute three binary forms of one common degree for x, y, z.
pub fn compose_binary(f: &HomPoly, phi: &[BinaryForm; 3]) -> Result<BinaryForm, PolyError> {
    let e = phi[0].degree;
    for b in phi {
        if b.degree != e {
            return Err(PolyError::DegreeMismatch(b.degree, e));
        }
    }
    let mut acc = BinaryForm::zero(f.degree * e, f.spec);
    for (m, c) in &f.terms {
        let mut term = BinaryForm {
            spec: f.spec,
            degree: 0,
            coeffs: vec![c.clone()],
        };
        for (bf, ex) in phi.iter().zip([m.x, m.y, m.z]) {
            for _ in 0..ex {
                term = term.mul(bf);
            }
        }
        acc = acc.add(&term)?;
    }
    Ok(acc)
}

/// All projective roots of a binary form with multiplicities, available
/// over prime fields (exhaustive scan of the projective line) and for
/// degree ≤ 1 over any field; `None` when the field does not support an
/// exhaustive search.
pub fn binary_roots(h: &BinaryForm) -> Result<Option<Vec<([Scalar; 2], u32)>>, PolyError> {
    let spec = h.spec;
    if h.is_zero() {
        return Err(PolyError::NotLinear);
    }
    if h.degree == 0 {
        return Ok(Some(Vec::new()));
    }
    let candidates: Vec<[Scalar; 2]> = match spec {
        FieldSpec::Prime(p) => {
            let mut v = Vec::with_capacity(p as usize + 1);
            for a in 0..p {
                v.push([Scalar::from_int(a as i64, spec), Scalar::one(spec)]);
            }
            v.push([Scalar::one(spec), Scalar::zero(spec)]);
            v
        }
        FieldSpec::Rationals if h.degree == 1 => {
            // single root read off the coefficients: c1·u + c0·v = 0
            let root = [h.coeffs[0].neg(), h.coeffs[1].clone()];
            return Ok(Some(vec![(root, 1)]));
        }
        _ => return Ok(None),
    };
    let mut out = Vec::new();
    for cand in candidates {
        if !h.eval(&cand[0], &cand[1])?.is_zero() {
            continue;
        }
        let lin = BinaryForm::vanishing_linear(&cand[0], &cand[1], spec);
        let mut mult = 0u32;
        let mut cur = h.clone();
        while let Some(q) = cur.exact_div(&lin) {
            mult += 1;
            cur = q;
        }
        out.push((cand, mult));
    }
    Ok(Some(out))
}

/// Whether the form is a product of linear factors over its own field;
/// `None` when that cannot be decided by exhaustive root search.
pub fn binary_splits(h: &BinaryForm) -> Result<Option<bool>, PolyError> {
    Ok(binary_roots(h)?.map(|roots| roots.iter().map(|(_, m)| *m).sum::<u32>() == h.degree))
}

/// Two points spanning the space of linear forms vanishing at `p`,
/// chosen deterministically: let i be the largest index with p_i nonzero;
/// the solutions with the other two coordinates set to (1,0) and (0,1).
pub fn line_basis_at(p: &[Scalar; 3], spec: FieldSpec) -> Result<[[Scalar; 3]; 2], PolyError> {
    let i = p
        .iter()
        .rposition(|c| !c.is_zero())
        .ok_or(PolyError::NotLinear)?;
    let others: Vec<usize> = (0..3).filter(|j| *j != i).collect();
    let pi_inv = p[i].inv()?;
    let mk = |j: usize| -> [Scalar; 3] {
        let mut v = [
            Scalar::zero(spec),
            Scalar::zero(spec),
            Scalar::zero(spec),
        ];
        v[j] = Scalar::one(spec);
        v[i] = p[j].mul(&pi_inv).unwrap().neg();
        v
    };
    Ok([mk(others[0]), mk(others[1])])
}

/// Restrict a form on the plane to the line of linear forms through `p`
/// (i.e., substitute the pencil u·B1 + v·B2 with the deterministic basis
/// from [`line_basis_at`]), producing a binary form of the same degree.
pub fn restrict_to_line(f: &HomPoly, p: &[Scalar; 3]) -> Result<BinaryForm, PolyError> {
    let spec = f.spec;
    let [b1, b2] = line_basis_at(p, spec)?;
    // coordinates of the pencil as binary linear forms
    let coord = |i: usize| -> BinaryForm {
        BinaryForm {
            spec,
            degree: 1,
            coeffs: vec![b2[i].clone(), b1[i].clone()],
        }
    };
    let coords = [coord(0), coord(1), coord(2)];
    let mut acc = BinaryForm::zero(f.degree, spec);
    for (m, c) in &f.terms {
        let mut term = BinaryForm {
            spec,
            degree: 0,
            coeffs: vec![c.clone()],
        };
        for (bf, e) in coords.iter().zip([m.x, m.y, m.z]) {
            for _ in 0..e {
                term = term.mul(bf);
            }
        }
        acc = acc.add(&term)?;
    }
    Ok(acc)
}

/// The linear form vanishing on the line through two distinct points
/// (cross product of coordinates).
pub fn line_through(
    p: &[Scalar; 3],
    q: &[Scalar; 3],
    spec: FieldSpec,
) -> Result<HomPoly, PolyError> {
    let cross = [
        p[1].mul(&q[2])?.sub(&p[2].mul(&q[1])?)?,
        p[2].mul(&q[0])?.sub(&p[0].mul(&q[2])?)?,
        p[0].mul(&q[1])?.sub(&p[1].mul(&q[0])?)?,
    ];
    if cross.iter().all(Scalar::is_zero) {
        return Err(PolyError::NotLinear);
    }
    HomPoly::linear(cross, spec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn hp(s: &str) -> HomPoly {
        HomPoly::parse(s, Q).unwrap()
    }

    #[test]
    fn parse_and_display() {
        let f = hp("x^2*y - 3*z^3");
        assert_eq!(f.degree, 3);
        let again = HomPoly::parse(&f.to_string(), Q).unwrap();
        assert_eq!(f, again);
        assert!(HomPoly::parse("x^2 + y", Q).is_err()); // not homogeneous
    }

    #[test]
    fn basis_and_dims() {
        assert_eq!(monomial_basis(2).len(), space_dim(2));
        assert_eq!(space_dim(3), 10);
        // first element is the pure x power
        assert_eq!(monomial_basis(3)[0], Monomial { x: 3, y: 0, z: 0 });
    }

    #[test]
    fn product_and_division() {
        let l = hp("x - 2*y + z");
        let g = hp("x^2 + y*z");
        let f = l.mul(&g).unwrap();
        assert_eq!(f.divide_by_linear(&l).unwrap(), g);
        assert!(g.divide_by_linear(&l).is_none());
    }

    #[test]
    fn partials_and_euler() {
        let f = hp("x^3 - 2*x*y*z + z^3");
        assert!(f.euler_check());
        let fx = f.partial(0);
        assert_eq!(fx, hp("3*x^2 - 2*y*z"));
    }

    #[test]
    fn euler_fails_positive_characteristic_degree() {
        // over GF(3), x^3 has zero gradient but Euler still balances since
        // deg ≡ 0; the identity check must use field arithmetic
        let spec = FieldSpec::Prime(3);
        let f = HomPoly::parse("x^3 + y^2*z", spec).unwrap();
        assert!(f.euler_check());
    }

    #[test]
    fn multiplicity() {
        let one = Scalar::one(Q);
        let zero = Scalar::zero(Q);
        // x^2*z - y^3 has an ordinary cusp at [0:0:1]
        let f = hp("x^2*z - y^3");
        let p = [zero.clone(), zero.clone(), one.clone()];
        assert_eq!(f.multiplicity_at(&p).unwrap(), 2);
        // a point off the curve has multiplicity 0
        let p1 = [one.clone(), one.clone(), zero.clone()];
        assert!(!f.eval(&p1).unwrap().is_zero());
        assert_eq!(f.multiplicity_at(&p1).unwrap(), 0);
    }

    #[test]
    fn multiplicity_on_curve_smooth_point() {
        let one = Scalar::one(Q);
        let f = hp("x^2*z - y^3");
        let p = [one.clone(), one.clone(), one.clone()];
        assert!(f.eval(&p).unwrap().is_zero());
        assert_eq!(f.multiplicity_at(&p).unwrap(), 1);
    }

    #[test]
    fn restriction_and_binary_gcd() {
        let one = Scalar::one(Q);
        let zero = Scalar::zero(Q);
        let p = [zero.clone(), zero.clone(), one.clone()];
        // forms through [0:0:1] pull back to the full binary space
        let f = hp("x^2*y - x*y^2");
        let r = restrict_to_line(&f, &p).unwrap();
        assert_eq!(r.degree, 3);
        assert!(!r.is_zero());
        // gcd of u^2(u - v) and u(u - v)^2 is u(u - v)
        let u = BinaryForm {
            spec: Q,
            degree: 1,
            coeffs: vec![Scalar::zero(Q), Scalar::one(Q)],
        };
        let umv = BinaryForm {
            spec: Q,
            degree: 1,
            coeffs: vec![Scalar::one(Q).neg(), Scalar::one(Q)],
        };
        let a = u.mul(&u).mul(&umv);
        let b = u.mul(&umv).mul(&umv);
        let g = a.gcd(&b);
        assert_eq!(g, u.mul(&umv).monic());
        assert_eq!(a.exact_div(&g).unwrap().mul(&g), a);
    }

    #[test]
    fn line_through_points() {
        let one = Scalar::one(Q);
        let zero = Scalar::zero(Q);
        let p = [one.clone(), zero.clone(), zero.clone()];
        let q = [zero.clone(), one.clone(), zero.clone()];
        let l = line_through(&p, &q, Q).unwrap();
        assert!(l.eval(&p).unwrap().is_zero());
        assert!(l.eval(&q).unwrap().is_zero());
        assert_eq!(l, hp("z"));
    }
}
