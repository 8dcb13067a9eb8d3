//! Exact scalars: rationals, prime fields, and rational function fields
//! K(s,t) over either of them.
//!
//! A value of the function field is kept in lowest terms with the
//! denominator normalized to leading coefficient 1 (graded lex, s > t),
//! so equality of scalars is equality of representations.

use num_bigint::BigInt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("operands belong to different fields: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("modulus {0} is not an odd prime or 2")]
    NotPrime(u64),
    #[error("cannot parse field description `{0}`")]
    BadFieldSpec(String),
    #[error("cannot parse scalar `{0}`")]
    BadScalar(String),
    #[error("operation not supported over {0}: {1}")]
    Unsupported(String, String),
}

/// Base field of a function field: ℚ or GF(p).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BaseField {
    Rationals,
    Prime(u64),
}

/// Description of the field a computation runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
    /// K(s,t) over the given base field; used for certified generic points.
    Function(BaseField),
}

impl FieldSpec {
    /// Parse the textual forms used on the command line: `Q`, `Fp:7`,
    /// `Q(s,t)`, `Fp:2(s,t)`.
    pub fn parse(text: &str) -> Result<FieldSpec, FieldError> {
        let t = text.trim();
        let (core, fun) = match t.strip_suffix("(s,t)") {
            Some(c) => (c, true),
            None => (t, false),
        };
        let base = if core == "Q" {
            BaseField::Rationals
        } else if let Some(p) = core.strip_prefix("Fp:") {
            let p: u64 = p.parse().map_err(|_| FieldError::BadFieldSpec(text.into()))?;
            if !is_prime(p) {
                return Err(FieldError::NotPrime(p));
            }
            BaseField::Prime(p)
        } else {
            return Err(FieldError::BadFieldSpec(text.into()));
        };
        Ok(match (base, fun) {
            (b, true) => FieldSpec::Function(b),
            (BaseField::Rationals, false) => FieldSpec::Rationals,
            (BaseField::Prime(p), false) => FieldSpec::Prime(p),
        })
    }

    /// The spec of the scalars inside a function field, or `self` if this
    /// is already a plain field.
    pub fn base(&self) -> FieldSpec {
        match self {
            FieldSpec::Function(BaseField::Rationals) => FieldSpec::Rationals,
            FieldSpec::Function(BaseField::Prime(p)) => FieldSpec::Prime(*p),
            other => *other,
        }
    }

    /// Wrap this field into its function field K(s,t).  A function field
    /// stays itself.
    pub fn function_field(&self) -> FieldSpec {
        match self {
            FieldSpec::Rationals => FieldSpec::Function(BaseField::Rationals),
            FieldSpec::Prime(p) => FieldSpec::Function(BaseField::Prime(*p)),
            f => *f,
        }
    }

    /// Number of elements for finite fields, `None` for infinite ones.
    pub fn size(&self) -> Option<u64> {
        match self {
            FieldSpec::Prime(p) => Some(*p),
            _ => None,
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals | FieldSpec::Function(BaseField::Rationals) => 0,
            FieldSpec::Prime(p) | FieldSpec::Function(BaseField::Prime(p)) => *p,
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "Fp:{p}"),
            FieldSpec::Function(BaseField::Rationals) => write!(f, "Q(s,t)"),
            FieldSpec::Function(BaseField::Prime(p)) => write!(f, "Fp:{p}(s,t)"),
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

// ---------------------------------------------------------------------------
// Scalars
// ---------------------------------------------------------------------------

/// An element of one of the supported fields.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Scalar {
    Rat(BigRational),
    Mod { val: u64, p: u64 },
    Fun(Box<RatFun>),
}

impl Scalar {
    pub fn spec(&self) -> FieldSpec {
        match self {
            Scalar::Rat(_) => FieldSpec::Rationals,
            Scalar::Mod { p, .. } => FieldSpec::Prime(*p),
            Scalar::Fun(f) => FieldSpec::Function(f.base),
        }
    }

    pub fn zero(spec: FieldSpec) -> Scalar {
        Scalar::from_int(0, spec)
    }

    pub fn one(spec: FieldSpec) -> Scalar {
        Scalar::from_int(1, spec)
    }

    pub fn from_int(n: i64, spec: FieldSpec) -> Scalar {
        match spec {
            FieldSpec::Rationals => Scalar::Rat(BigRational::from(BigInt::from(n))),
            FieldSpec::Prime(p) => {
                let v = n.rem_euclid(p as i64) as u64;
                Scalar::Mod { val: v, p }
            }
            FieldSpec::Function(base) => {
                let c = Scalar::from_int(n, FieldSpec::Function(base).base());
                Scalar::Fun(Box::new(RatFun::constant(c, base)))
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Mod { val, .. } => *val == 0,
            Scalar::Fun(f) => f.num.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Mod { val, .. } => *val == 1,
            Scalar::Fun(f) => f.num.is_one() && f.den.is_one(),
        }
    }

    fn check(&self, other: &Scalar) -> Result<(), FieldError> {
        if self.spec() == other.spec() {
            Ok(())
        } else {
            Err(FieldError::FieldMismatch(
                self.spec().to_string(),
                other.spec().to_string(),
            ))
        }
    }

    pub fn add(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.check(other)?;
        Ok(match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Mod { val: a, p }, Scalar::Mod { val: b, .. }) => Scalar::Mod {
                val: add_mod(*a, *b, *p),
                p: *p,
            },
            (Scalar::Fun(a), Scalar::Fun(b)) => Scalar::Fun(Box::new(a.add(b))),
            _ => unreachable!(),
        })
    }

    pub fn sub(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Mod { val, p } => Scalar::Mod {
                val: if *val == 0 { 0 } else { p - val },
                p: *p,
            },
            Scalar::Fun(f) => Scalar::Fun(Box::new(f.neg())),
        }
    }

    pub fn mul(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.check(other)?;
        Ok(match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Mod { val: a, p }, Scalar::Mod { val: b, .. }) => Scalar::Mod {
                val: mul_mod(*a, *b, *p),
                p: *p,
            },
            (Scalar::Fun(a), Scalar::Fun(b)) => Scalar::Fun(Box::new(a.mul(b))),
            _ => unreachable!(),
        })
    }

    pub fn inv(&self) -> Result<Scalar, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rat(a) => Scalar::Rat(a.recip()),
            Scalar::Mod { val, p } => Scalar::Mod {
                val: inv_mod(*val, *p),
                p: *p,
            },
            Scalar::Fun(f) => Scalar::Fun(Box::new(f.inv())),
        })
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.mul(&other.inv()?)
    }

    /// Embed a scalar of the base field into its function field.  Function
    /// field elements are returned unchanged.
    pub fn lift(&self) -> Scalar {
        match self {
            Scalar::Fun(_) => self.clone(),
            Scalar::Rat(_) => Scalar::Fun(Box::new(RatFun::constant(
                self.clone(),
                BaseField::Rationals,
            ))),
            Scalar::Mod { p, .. } => {
                Scalar::Fun(Box::new(RatFun::constant(self.clone(), BaseField::Prime(*p))))
            }
        }
    }

    /// The variables s and t of a function field.
    pub fn variable(base: BaseField, var: Var) -> Scalar {
        let one = Scalar::one(FieldSpec::Function(base).base());
        let mono = match var {
            Var::S => (1u16, 0u16),
            Var::T => (0, 1),
        };
        let mut terms = BTreeMap::new();
        terms.insert(mono, one);
        Scalar::Fun(Box::new(RatFun {
            num: BiPoly { base, terms },
            den: BiPoly::one_poly(base),
            base,
        }))
    }

    /// Specialize a function-field element at s = a, t = b.  Errors if the
    /// denominator vanishes there.  Plain field elements pass through.
    pub fn specialize(&self, a: &Scalar, b: &Scalar) -> Result<Scalar, FieldError> {
        match self {
            Scalar::Fun(f) => {
                let den = f.den.eval(a, b)?;
                if den.is_zero() {
                    return Err(FieldError::DivisionByZero);
                }
                f.num.eval(a, b)?.div(&den)
            }
            other => Ok(other.clone()),
        }
    }

    /// Parse a scalar in the given field.  Rationals look like `-3/4`,
    /// prime-field elements like `5`, function-field elements accept
    /// polynomial syntax in s and t such as `s^2*t - 2`, optionally as a
    /// quotient `( num )/( den )`.
    pub fn parse(text: &str, spec: FieldSpec) -> Result<Scalar, FieldError> {
        let t = text.trim();
        match spec {
            FieldSpec::Rationals => {
                let r: BigRational = if let Some((n, d)) = t.split_once('/') {
                    let n: BigInt = n.trim().parse().map_err(|_| FieldError::BadScalar(t.into()))?;
                    let d: BigInt = d.trim().parse().map_err(|_| FieldError::BadScalar(t.into()))?;
                    if d.is_zero() {
                        return Err(FieldError::DivisionByZero);
                    }
                    BigRational::new(n, d)
                } else {
                    let n: BigInt = t.parse().map_err(|_| FieldError::BadScalar(t.into()))?;
                    BigRational::from(n)
                };
                Ok(Scalar::Rat(r))
            }
            FieldSpec::Prime(_p) => {
                let n: i64 = t.parse().map_err(|_| FieldError::BadScalar(t.into()))?;
                Ok(Scalar::from_int(n, spec))
            }
            FieldSpec::Function(base) => {
                // Split a top-level `)/(` quotient if present.
                if let Some(stripped) = t.strip_prefix('(') {
                    if let Some(idx) = find_quotient_split(stripped) {
                        let num = &stripped[..idx];
                        let den = stripped[idx..]
                            .trim_start_matches(")/(")
                            .trim_end_matches(')');
                        let n = BiPoly::parse(num, base)?;
                        let d = BiPoly::parse(den, base)?;
                        return RatFun::new(n, d, base).map(|f| Scalar::Fun(Box::new(f)));
                    }
                }
                let n = BiPoly::parse(t, base)?;
                Ok(Scalar::Fun(Box::new(RatFun {
                    num: n,
                    den: BiPoly::one_poly(base),
                    base,
                })))
            }
        }
    }

    /// Numerator/denominator split of a rational, used when clearing
    /// denominators to run integer elimination.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rat(r) => Some(r),
            _ => None,
        }
    }

    pub fn as_fun(&self) -> Option<&RatFun> {
        match self {
            Scalar::Fun(f) => Some(f),
            _ => None,
        }
    }
}

fn find_quotient_split(s: &str) -> Option<usize> {
    let mut depth = 1i32;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    return if s[i..].starts_with(")/(") { Some(i) } else { None };
                }
            }
            _ => {}
        }
    }
    None
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Mod { val, .. } => write!(f, "{val}"),
            Scalar::Fun(fun) => {
                if fun.den.is_one() {
                    write!(f, "{}", fun.num)
                } else {
                    write!(f, "({})/({})", fun.num, fun.den)
                }
            }
        }
    }
}

/// Draw a scalar uniformly: over GF(p) from the whole field, over the
/// rationals with numerator in [-bound, bound] and denominator 1, over a
/// function field a random constant of the base field.
pub fn random_scalar<R: Rng>(spec: FieldSpec, bound: i64, rng: &mut R) -> Scalar {
    match spec {
        FieldSpec::Rationals => Scalar::from_int(rng.gen_range(-bound..=bound), spec),
        FieldSpec::Prime(p) => Scalar::Mod {
            val: rng.gen_range(0..p),
            p,
        },
        FieldSpec::Function(base) => {
            random_scalar(FieldSpec::Function(base).base(), bound, rng).lift()
        }
    }
}

fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a as u128 + b as u128;
    (s % p as u128) as u64
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // Extended Euclid; a is nonzero mod p, p prime.
    let (mut r0, mut r1) = (p as i128, (a % p) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    debug_assert_eq!(r0, 1);
    s0.rem_euclid(p as i128) as u64
}

// ---------------------------------------------------------------------------
// Bivariate polynomials in s, t over a base field
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Var {
    S,
    T,
}

/// Sparse polynomial in s and t with coefficients in the base field.
/// Terms are keyed by (deg_s, deg_t).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiPoly {
    pub base: BaseField,
    pub terms: BTreeMap<(u16, u16), Scalar>,
}

impl BiPoly {
    fn base_spec(&self) -> FieldSpec {
        FieldSpec::Function(self.base).base()
    }

    pub fn zero_poly(base: BaseField) -> BiPoly {
        BiPoly {
            base,
            terms: BTreeMap::new(),
        }
    }

    pub fn one_poly(base: BaseField) -> BiPoly {
        BiPoly::constant(Scalar::one(FieldSpec::Function(base).base()), base)
    }

    pub fn constant(c: Scalar, base: BaseField) -> BiPoly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((0, 0), c);
        }
        BiPoly { base, terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&(0, 0))
                .map(|c| c.is_one())
                .unwrap_or(false)
    }

    /// Leading monomial under graded lex with s > t.
    pub fn leading(&self) -> Option<((u16, u16), &Scalar)> {
        self.terms
            .iter()
            .max_by(|(a, _), (b, _)| grlex_cmp(**a, **b))
            .map(|(m, c)| (*m, c))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms
            .keys()
            .map(|(a, b)| *a as u32 + *b as u32)
            .max()
    }

    pub fn deg(&self, v: Var) -> Option<u16> {
        self.terms
            .keys()
            .map(|(a, b)| match v {
                Var::S => *a,
                Var::T => *b,
            })
            .max()
    }

    pub fn add(&self, other: &BiPoly) -> BiPoly {
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            match terms.get_mut(m) {
                Some(e) => {
                    *e = e.add(c).expect("same base field");
                    if e.is_zero() {
                        terms.remove(m);
                    }
                }
                None => {
                    terms.insert(*m, c.clone());
                }
            }
        }
        BiPoly {
            base: self.base,
            terms,
        }
    }

    pub fn neg(&self) -> BiPoly {
        BiPoly {
            base: self.base,
            terms: self.terms.iter().map(|(m, c)| (*m, c.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &BiPoly) -> BiPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &BiPoly) -> BiPoly {
        let mut terms: BTreeMap<(u16, u16), Scalar> = BTreeMap::new();
        for ((a1, b1), c1) in &self.terms {
            for ((a2, b2), c2) in &other.terms {
                let m = (a1 + a2, b1 + b2);
                let prod = c1.mul(c2).expect("same base field");
                match terms.get_mut(&m) {
                    Some(e) => *e = e.add(&prod).expect("same base field"),
                    None => {
                        terms.insert(m, prod);
                    }
                }
            }
        }
        terms.retain(|_, c| !c.is_zero());
        BiPoly {
            base: self.base,
            terms,
        }
    }

    pub fn scale(&self, c: &Scalar) -> BiPoly {
        if c.is_zero() {
            return BiPoly::zero_poly(self.base);
        }
        BiPoly {
            base: self.base,
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (*m, v.mul(c).expect("same base field")))
                .collect(),
        }
    }

    pub fn eval(&self, a: &Scalar, b: &Scalar) -> Result<Scalar, FieldError> {
        let spec = self.base_spec();
        let mut acc = Scalar::zero(spec);
        for ((i, j), c) in &self.terms {
            let mut term = c.clone();
            for _ in 0..*i {
                term = term.mul(a)?;
            }
            for _ in 0..*j {
                term = term.mul(b)?;
            }
            acc = acc.add(&term)?;
        }
        Ok(acc)
    }

    /// Exact division: `self / d`, or `None` when `d` does not divide.
    pub fn exact_div(&self, d: &BiPoly) -> Option<BiPoly> {
        if d.is_zero() {
            return None;
        }
        let mut rem = self.clone();
        let mut quo = BiPoly::zero_poly(self.base);
        let (dm, dc) = d.leading().unwrap();
        let dc_inv = dc.inv().ok()?;
        while !rem.is_zero() {
            let (rm, rc) = rem.leading().unwrap();
            if rm.0 < dm.0 || rm.1 < dm.1 {
                return None;
            }
            let qm = (rm.0 - dm.0, rm.1 - dm.1);
            let qc = rc.mul(&dc_inv).ok()?;
            let mut qt = BTreeMap::new();
            qt.insert(qm, qc);
            let q1 = BiPoly {
                base: self.base,
                terms: qt,
            };
            rem = rem.sub(&q1.mul(d));
            quo = quo.add(&q1);
        }
        Some(quo)
    }

    /// GCD, normalized so the leading coefficient (graded lex, s > t) is 1.
    pub fn gcd(&self, other: &BiPoly) -> BiPoly {
        let g = bipoly_gcd(self, other);
        g.monic()
    }

    pub fn monic(&self) -> BiPoly {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = c.inv().expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    /// Parse polynomial text such as `s^2*t - 2*s + 1`.
    pub fn parse(text: &str, base: BaseField) -> Result<BiPoly, FieldError> {
        let spec = FieldSpec::Function(base).base();
        let terms = crate::poly::parse_terms(text, &["s", "t"], spec)
            .map_err(|_| FieldError::BadScalar(text.into()))?;
        let mut poly = BiPoly::zero_poly(base);
        for (exps, coeff) in terms {
            let mut t = BTreeMap::new();
            t.insert((exps[0] as u16, exps[1] as u16), coeff);
            poly = poly.add(&BiPoly { base, terms: t });
        }
        Ok(poly)
    }
}

pub fn grlex_cmp(a: (u16, u16), b: (u16, u16)) -> std::cmp::Ordering {
    let ta = a.0 as u32 + a.1 as u32;
    let tb = b.0 as u32 + b.1 as u32;
    ta.cmp(&tb).then(a.0.cmp(&b.0))
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut monos: Vec<_> = self.terms.iter().collect();
        monos.sort_by(|(a, _), (b, _)| grlex_cmp(**b, **a));
        for (i, ((a, b), c)) in monos.iter().enumerate() {
            let mono = match (a, b) {
                (0, 0) => String::new(),
                (0, 1) => "t".into(),
                (0, b) => format!("t^{b}"),
                (1, 0) => "s".into(),
                (a, 0) => format!("s^{a}"),
                (1, 1) => "s*t".into(),
                (1, b) => format!("s*t^{b}"),
                (a, 1) => format!("s^{a}*t"),
                (a, b) => format!("s^{a}*t^{b}"),
            };
            let term = if mono.is_empty() {
                c.to_string()
            } else if c.is_one() {
                mono
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

// Univariate polynomials in t over the base field, used inside the
// bivariate gcd.
#[derive(Debug, Clone, PartialEq, Eq)]
struct UniPoly {
    spec: FieldSpec,
    // coeffs[i] is the coefficient of t^i; no trailing zeros.
    coeffs: Vec<Scalar>,
}

impl UniPoly {
    fn zero(spec: FieldSpec) -> UniPoly {
        UniPoly {
            spec,
            coeffs: vec![],
        }
    }

    fn trim(mut self) -> UniPoly {
        while self.coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            self.coeffs.pop();
        }
        self
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn deg(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    fn lc(&self) -> &Scalar {
        self.coeffs.last().expect("nonzero polynomial")
    }

    fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        let zero = Scalar::zero(self.spec);
        for i in 0..n {
            let a = self.coeffs.get(i).unwrap_or(&zero);
            let b = other.coeffs.get(i).unwrap_or(&zero);
            coeffs.push(a.add(b).expect("same field"));
        }
        UniPoly {
            spec: self.spec,
            coeffs,
        }
        .trim()
    }

    fn neg(&self) -> UniPoly {
        UniPoly {
            spec: self.spec,
            coeffs: self.coeffs.iter().map(Scalar::neg).collect(),
        }
    }

    fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero(self.spec);
        }
        let mut coeffs = vec![Scalar::zero(self.spec); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let prod = a.mul(b).expect("same field");
                coeffs[i + j] = coeffs[i + j].add(&prod).expect("same field");
            }
        }
        UniPoly {
            spec: self.spec,
            coeffs,
        }
        .trim()
    }

    fn rem(&self, d: &UniPoly) -> UniPoly {
        let mut r = self.clone();
        let dlc_inv = d.lc().inv().expect("nonzero divisor");
        while !r.is_zero() && r.deg() >= d.deg() {
            let shift = r.deg() - d.deg();
            let q = r.lc().mul(&dlc_inv).expect("same field");
            // r -= q * t^shift * d
            for (i, c) in d.coeffs.iter().enumerate() {
                let sub = q.mul(c).expect("same field");
                r.coeffs[i + shift] = r.coeffs[i + shift].sub(&sub).expect("same field");
            }
            r = r.trim();
        }
        r
    }

    fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        let inv = a.lc().inv().expect("nonzero");
        UniPoly {
            spec: a.spec,
            coeffs: a
                .coeffs
                .iter()
                .map(|c| c.mul(&inv).expect("same field"))
                .collect(),
        }
    }

    fn exact_div(&self, d: &UniPoly) -> UniPoly {
        // Used only when d divides self.
        let mut r = self.clone();
        let mut q = vec![Scalar::zero(self.spec); self.coeffs.len().saturating_sub(d.deg())];
        let dlc_inv = d.lc().inv().expect("nonzero divisor");
        while !r.is_zero() && r.deg() >= d.deg() {
            let shift = r.deg() - d.deg();
            let c = r.lc().mul(&dlc_inv).expect("same field");
            q[shift] = c.clone();
            for (i, dc) in d.coeffs.iter().enumerate() {
                let sub = c.mul(dc).expect("same field");
                r.coeffs[i + shift] = r.coeffs[i + shift].sub(&sub).expect("same field");
            }
            r = r.trim();
        }
        debug_assert!(r.is_zero(), "division was not exact");
        UniPoly {
            spec: self.spec,
            coeffs: q,
        }
        .trim()
    }
}

// View a bivariate polynomial as a polynomial in s whose coefficients are
// univariate polynomials in t.
fn coeffs_in_s(p: &BiPoly) -> Vec<UniPoly> {
    let spec = p.base_spec();
    let ds = p.deg(Var::S).map(|d| d as usize + 1).unwrap_or(0);
    let mut out = vec![UniPoly::zero(spec); ds];
    for ((a, b), c) in &p.terms {
        let dst = &mut out[*a as usize];
        while dst.coeffs.len() <= *b as usize {
            dst.coeffs.push(Scalar::zero(spec));
        }
        dst.coeffs[*b as usize] = c.clone();
    }
    for u in &mut out {
        *u = u.clone().trim();
    }
    out
}

fn from_coeffs_in_s(coeffs: &[UniPoly], base: BaseField) -> BiPoly {
    let mut terms = BTreeMap::new();
    for (a, u) in coeffs.iter().enumerate() {
        for (b, c) in u.coeffs.iter().enumerate() {
            if !c.is_zero() {
                terms.insert((a as u16, b as u16), c.clone());
            }
        }
    }
    BiPoly { base, terms }
}

fn content_in_t(coeffs: &[UniPoly], spec: FieldSpec) -> UniPoly {
    let mut g = UniPoly::zero(spec);
    for c in coeffs {
        if !c.is_zero() {
            g = g.gcd(c);
            if g.deg() == 0 && !g.is_zero() {
                break;
            }
        }
    }
    g
}

// Primitive pseudo-remainder sequence gcd in K[s,t].
fn bipoly_gcd(p: &BiPoly, q: &BiPoly) -> BiPoly {
    if p.is_zero() {
        return q.clone();
    }
    if q.is_zero() {
        return p.clone();
    }
    let base = p.base;
    let spec = p.base_spec();

    let pa = coeffs_in_s(p);
    let qa = coeffs_in_s(q);
    let cont_p = content_in_t(&pa, spec);
    let cont_q = content_in_t(&qa, spec);
    let cont_g = cont_p.gcd(&cont_q);

    let prim = |coeffs: &[UniPoly], cont: &UniPoly| -> Vec<UniPoly> {
        coeffs.iter().map(|c| {
            if c.is_zero() {
                c.clone()
            } else {
                c.exact_div(cont)
            }
        }).collect()
    };
    let mut a = prim(&pa, &cont_p);
    let mut b = prim(&qa, &cont_q);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }

    loop {
        if b.iter().all(|c| c.is_zero()) {
            let cont_a = content_in_t(&a, spec);
            let a = prim(&a, &cont_a);
            let g_s = from_coeffs_in_s(&a, base);
            return g_s.mul(&from_coeffs_in_s(&[cont_g.clone()], base));
        }
        if b.len() == 1 {
            // gcd in s is trivial; only the t-content survives.
            return from_coeffs_in_s(&[cont_g], base);
        }
        let r = pseudo_rem(&a, &b, spec);
        let cont_r = content_in_t(&r, spec);
        let r = if r.iter().all(|c| c.is_zero()) {
            r
        } else {
            prim(&r, &cont_r)
        };
        a = b;
        b = r;
    }
}

// Pseudo-remainder of a by b, both viewed in (K[t])[s]; b has positive
// degree in s.
fn pseudo_rem(a: &[UniPoly], b: &[UniPoly], spec: FieldSpec) -> Vec<UniPoly> {
    let mut r: Vec<UniPoly> = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    let trim_top = |r: &mut Vec<UniPoly>| {
        while r.last().map(|c| c.is_zero()).unwrap_or(false) {
            r.pop();
        }
    };
    trim_top(&mut r);
    while r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        // r = lb * r - lr * s^(dr-db) * b
        for c in r.iter_mut() {
            *c = c.mul(lb);
        }
        for (i, bc) in b.iter().enumerate() {
            let sub = lr.mul(bc);
            r[i + dr - db] = r[i + dr - db].add(&sub.neg());
        }
        trim_top(&mut r);
    }
    if r.is_empty() {
        vec![UniPoly::zero(spec)]
    } else {
        r
    }
}

// ---------------------------------------------------------------------------
// Rational functions in s, t
// ---------------------------------------------------------------------------

/// Element of K(s,t), stored in lowest terms with monic denominator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatFun {
    pub num: BiPoly,
    pub den: BiPoly,
    pub base: BaseField,
}

impl RatFun {
    pub fn constant(c: Scalar, base: BaseField) -> RatFun {
        RatFun {
            num: BiPoly::constant(c, base),
            den: BiPoly::one_poly(base),
            base,
        }
    }

    pub fn new(num: BiPoly, den: BiPoly, base: BaseField) -> Result<RatFun, FieldError> {
        if den.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(RatFun { num, den, base }.reduce())
    }

    fn reduce(self) -> RatFun {
        if self.num.is_zero() {
            return RatFun {
                num: BiPoly::zero_poly(self.base),
                den: BiPoly::one_poly(self.base),
                base: self.base,
            };
        }
        let g = self.num.gcd(&self.den);
        let (mut num, mut den) = if g.is_one() {
            (self.num, self.den)
        } else {
            (
                self.num.exact_div(&g).expect("gcd divides"),
                self.den.exact_div(&g).expect("gcd divides"),
            )
        };
        // Make the denominator monic.
        let (_, lc) = den.leading().expect("nonzero denominator");
        if !lc.is_one() {
            let inv = lc.inv().expect("nonzero");
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RatFun {
            base: self.base,
            num,
            den,
        }
    }

    pub fn add(&self, other: &RatFun) -> RatFun {
        let num = self
            .num
            .mul(&other.den)
            .add(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        RatFun {
            num,
            den,
            base: self.base,
        }
        .reduce()
    }

    pub fn neg(&self) -> RatFun {
        RatFun {
            num: self.num.neg(),
            den: self.den.clone(),
            base: self.base,
        }
    }

    pub fn mul(&self, other: &RatFun) -> RatFun {
        RatFun {
            num: self.num.mul(&other.num),
            den: self.den.mul(&other.den),
            base: self.base,
        }
        .reduce()
    }

    pub fn inv(&self) -> RatFun {
        assert!(!self.num.is_zero(), "inverting zero");
        RatFun {
            num: self.den.clone(),
            den: self.num.clone(),
            base: self.base,
        }
        .reduce()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::Rat(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    #[test]
    fn parse_field_specs() {
        assert_eq!(FieldSpec::parse("Q").unwrap(), FieldSpec::Rationals);
        assert_eq!(FieldSpec::parse("Fp:7").unwrap(), FieldSpec::Prime(7));
        assert_eq!(
            FieldSpec::parse("Q(s,t)").unwrap(),
            FieldSpec::Function(BaseField::Rationals)
        );
        assert_eq!(
            FieldSpec::parse("Fp:2(s,t)").unwrap(),
            FieldSpec::Function(BaseField::Prime(2))
        );
        assert!(FieldSpec::parse("Fp:6").is_err());
        assert!(FieldSpec::parse("R").is_err());
    }

    #[test]
    fn rational_arithmetic() {
        let a = q(1, 2);
        let b = q(1, 3);
        assert_eq!(a.add(&b).unwrap(), q(5, 6));
        assert_eq!(a.mul(&b).unwrap(), q(1, 6));
        assert_eq!(a.div(&b).unwrap(), q(3, 2));
        assert!(Scalar::zero(FieldSpec::Rationals).inv().is_err());
    }

    #[test]
    fn mixed_fields_rejected() {
        let a = Scalar::from_int(1, FieldSpec::Rationals);
        let b = Scalar::from_int(1, FieldSpec::Prime(7));
        assert!(matches!(a.add(&b), Err(FieldError::FieldMismatch(_, _))));
    }

    #[test]
    fn prime_field_axioms_small() {
        // Exhaustive check of inverses in GF(101).
        let spec = FieldSpec::Prime(101);
        for v in 1..101 {
            let a = Scalar::Mod { val: v, p: 101 };
            let inv = a.inv().unwrap();
            assert!(a.mul(&inv).unwrap().is_one());
        }
        let _ = spec;
    }

    #[test]
    fn field_axioms_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for spec in [
            FieldSpec::Rationals,
            FieldSpec::Prime(101),
            FieldSpec::Function(BaseField::Prime(5)),
        ] {
            for _ in 0..50 {
                let a = random_scalar(spec, 20, &mut rng);
                let b = random_scalar(spec, 20, &mut rng);
                let c = random_scalar(spec, 20, &mut rng);
                // (a+b)+c == a+(b+c)
                let l = a.add(&b).unwrap().add(&c).unwrap();
                let r = a.add(&b.add(&c).unwrap()).unwrap();
                assert_eq!(l, r);
                // a*(b+c) == a*b + a*c
                let l = a.mul(&b.add(&c).unwrap()).unwrap();
                let r = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
                assert_eq!(l, r);
                if !a.is_zero() {
                    assert!(a.mul(&a.inv().unwrap()).unwrap().is_one());
                }
            }
        }
    }

    #[test]
    fn function_field_reduction() {
        let base = BaseField::Rationals;
        let s = Scalar::variable(base, Var::S);
        let t = Scalar::variable(base, Var::T);
        let one = Scalar::one(FieldSpec::Function(base));
        // (s^2 - t^2) / (s - t) == s + t
        let num = s.mul(&s).unwrap().sub(&t.mul(&t).unwrap()).unwrap();
        let den = s.sub(&t).unwrap();
        let quot = num.div(&den).unwrap();
        assert_eq!(quot, s.add(&t).unwrap());
        // and its denominator is 1 after reduction
        let f = quot.as_fun().unwrap();
        assert!(f.den.is_one());
        // (s*t + 1) * inverse == 1
        let v = s.mul(&t).unwrap().add(&one).unwrap();
        assert!(v.mul(&v.inv().unwrap()).unwrap().is_one());
    }

    #[test]
    fn function_field_gcd_char2() {
        let base = BaseField::Prime(2);
        let s = Scalar::variable(base, Var::S);
        let t = Scalar::variable(base, Var::T);
        // (s+t)^2 = s^2 + t^2 in characteristic 2
        let sum = s.add(&t).unwrap();
        let sq = sum.mul(&sum).unwrap();
        let expect = s.mul(&s).unwrap().add(&t.mul(&t).unwrap()).unwrap();
        assert_eq!(sq, expect);
        let q = sq.div(&sum).unwrap();
        assert_eq!(q, sum);
    }

    #[test]
    fn specialization() {
        let base = BaseField::Rationals;
        let s = Scalar::variable(base, Var::S);
        let t = Scalar::variable(base, Var::T);
        let expr = s.mul(&t).unwrap().sub(&Scalar::one(FieldSpec::Function(base))).unwrap();
        let a = Scalar::from_int(3, FieldSpec::Rationals);
        let b = Scalar::from_int(4, FieldSpec::Rationals);
        assert_eq!(expr.specialize(&a, &b).unwrap(), Scalar::from_int(11, FieldSpec::Rationals));
        // Vanishing denominator is an error.
        let inv = s.inv().unwrap();
        let zero = Scalar::zero(FieldSpec::Rationals);
        assert!(inv.specialize(&zero, &zero).is_err());
    }

    #[test]
    fn scalar_parsing_roundtrip() {
        for (txt, spec) in [
            ("-3/4", FieldSpec::Rationals),
            ("5", FieldSpec::Prime(7)),
            ("s^2*t - 2*s + 1", FieldSpec::Function(BaseField::Rationals)),
        ] {
            let v = Scalar::parse(txt, spec).unwrap();
            let again = Scalar::parse(&v.to_string(), spec).unwrap();
            assert_eq!(v, again);
        }
    }
}
