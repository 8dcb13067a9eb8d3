//! Named configurations, parameterized by field: the Fano points, the
//! 19-line arrangement H19 and its 18/19/20-line variants, the
//! supersolvable family A_{a,b}, the Fermat arrangements, the inductive
//! family containing B₃, random star configurations, and optional
//! entries loaded from user-supplied coordinate files.

use crate::arrangements::{singular_points, ArrangementError, LineArrangement};
use crate::field::{FieldSpec, Scalar};
use crate::poly::{HomPoly, PolyError};
use crate::schemes::{PointConfig, ProjPoint, SchemeError};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("unknown catalog entry `{0}`")]
    UnknownName(String),
    #[error("field constraint violated: {0}")]
    FieldConstraintViolated(String),
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("coordinate file required for `{0}`: supply `file=<path>` with a JSON list of coefficient triples")]
    CoordinatesRequired(String),
    #[error("cannot read coordinate file: {0}")]
    FileError(String),
    #[error(transparent)]
    Arrangement(#[from] ArrangementError),
    #[error(transparent)]
    Scheme(#[from] SchemeError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A catalog listing row.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub params: &'static str,
    pub constraints: &'static str,
    pub note: &'static str,
}

pub fn list_entries() -> Vec<CatalogEntry> {
    vec![
        CatalogEntry {
            name: "fano",
            params: "",
            constraints: "char 2",
            note: "the 7 points of the projective plane over GF(2); unexpected cubic",
        },
        CatalogEntry {
            name: "h19",
            params: "",
            constraints: "char 0 (or large)",
            note: "19 lines; dual points have an unexpected curve of degree 9; not free",
        },
        CatalogEntry {
            name: "example20_a",
            params: "",
            constraints: "char 0 (or large)",
            note: "h19 minus 2x+y; 18 lines; free (7,10)",
        },
        CatalogEntry {
            name: "example20_b",
            params: "",
            constraints: "char 0 (or large)",
            note: "h19 with 2x+y replaced by 2y-x; 19 lines; free (7,11)",
        },
        CatalogEntry {
            name: "example20_c",
            params: "",
            constraints: "char 0 (or large)",
            note: "h19 plus 2y-x; 20 lines; free (8,11)",
        },
        CatalogEntry {
            name: "example20_d",
            params: "",
            constraints: "char 0 (or large)",
            note: "h19 itself; not free",
        },
        CatalogEntry {
            name: "a_ab",
            params: "a, b (1 <= a <= b-1)",
            constraints: "char 0 or p > max(a,b)",
            note: "a+b+1 lines, supersolvable, splitting (a,b); no unexpected curves",
        },
        CatalogEntry {
            name: "b3",
            params: "",
            constraints: "char != 2",
            note: "the 9-line reflection-type arrangement; equals family_a4k with k=1",
        },
        CatalogEntry {
            name: "family_a4k",
            params: "k >= 1; optional abscissas c1,...,ck (defaults 1..k)",
            constraints: "char 0 or p > 2*max abscissa",
            note: "4k+5 lines, free (2k+1, 2k+3); unique unexpected curve of degree 2k+2",
        },
        CatalogEntry {
            name: "fermat",
            params: "t",
            constraints: "t | p-1 over GF(p); t <= 2 over the rationals",
            note: "3t lines from the factors of (x^t-y^t)(x^t-z^t)(y^t-z^t)",
        },
        CatalogEntry {
            name: "star_random",
            params: "d >= 3, seed",
            constraints: "field large enough to separate d random lines",
            note: "d lines, no two parallel and no three concurrent; free iff d <= 3",
        },
        CatalogEntry {
            name: "klein",
            params: "file=<path>",
            constraints: "coordinates required",
            note: "the 21-line quartic-symmetry arrangement; coordinates are not shipped and must be supplied",
        },
        CatalogEntry {
            name: "wiman",
            params: "file=<path>",
            constraints: "coordinates required",
            note: "the 45-line sextic-symmetry arrangement; coordinates are not shipped and must be supplied",
        },
    ]
}

/// Either kind of configuration a catalog entry can produce.
#[derive(Debug, Clone)]
pub enum CatalogOutput {
    Points(PointConfig),
    Lines(LineArrangement),
}

impl CatalogOutput {
    /// Point-side view: the configuration itself, or the points dual to
    /// the lines.
    pub fn points(&self) -> Result<PointConfig, CatalogError> {
        match self {
            CatalogOutput::Points(z) => Ok(z.clone()),
            CatalogOutput::Lines(a) => Ok(a.dual_points()?),
        }
    }

    /// Line-side view: the arrangement itself, or the lines dual to the
    /// points.
    pub fn lines(&self) -> Result<LineArrangement, CatalogError> {
        match self {
            CatalogOutput::Lines(a) => Ok(a.clone()),
            CatalogOutput::Points(z) => Ok(LineArrangement::from_dual(z)?),
        }
    }
}

/// The 7 points of the Fano plane (all coordinates 0 or 1).
pub fn fano(spec: FieldSpec) -> Result<PointConfig, CatalogError> {
    if spec.characteristic() != 2 {
        return Err(CatalogError::FieldConstraintViolated(
            "the Fano configuration needs characteristic 2".into(),
        ));
    }
    let coords = [
        [1, 0, 0],
        [0, 1, 0],
        [0, 0, 1],
        [1, 1, 0],
        [1, 0, 1],
        [0, 1, 1],
        [1, 1, 1],
    ];
    let pts = coords
        .iter()
        .map(|c| ProjPoint::from_ints(*c, spec))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(PointConfig::new(pts, spec)?)
}

const H19_FORMS: [&str; 19] = [
    "x",
    "y",
    "z",
    "x + y",
    "x - y",
    "2*x + y",
    "2*x - y",
    "x + z",
    "x - z",
    "y + z",
    "y - z",
    "x + 2*z",
    "x - 2*z",
    "y + 2*z",
    "y - 2*z",
    "x - y + z",
    "x - y - z",
    "x - y + 2*z",
    "x - y - 2*z",
];

/// The 19-line arrangement whose dual points carry an unexpected curve
/// of degree 9.
pub fn h19(spec: FieldSpec) -> Result<LineArrangement, CatalogError> {
    Ok(LineArrangement::parse(&H19_FORMS, spec)?)
}

/// The variants around h19: (a) remove 2x+y, (b) replace 2x+y by 2y−x,
/// (c) add 2y−x, (d) h19 unchanged.
pub fn example20(variant: char, spec: FieldSpec) -> Result<LineArrangement, CatalogError> {
    let mut forms: Vec<String> = H19_FORMS.iter().map(|s| s.to_string()).collect();
    match variant {
        'a' => {
            forms.remove(5); // 2x + y
        }
        'b' => {
            forms[5] = "2*y - x".into();
        }
        'c' => {
            forms.push("2*y - x".into());
        }
        'd' => {}
        _ => {
            return Err(CatalogError::BadParams(format!(
                "variant must be a..d, got `{variant}`"
            )))
        }
    }
    let refs: Vec<&str> = forms.iter().map(String::as_str).collect();
    Ok(LineArrangement::parse(&refs, spec)?)
}

/// The supersolvable arrangement of a+b+1 lines
/// z; x, x+z, …, x+(a−1)z; y, y+z, …, y+(b−1)z with splitting (a, b).
pub fn a_ab(a: u32, b: u32, spec: FieldSpec) -> Result<LineArrangement, CatalogError> {
    if !(1 <= a && a + 1 <= b) {
        return Err(CatalogError::BadParams("need 1 <= a <= b-1".into()));
    }
    let p = spec.characteristic();
    if p != 0 && p < b as u64 {
        return Err(CatalogError::FieldConstraintViolated(format!(
            "characteristic {p} too small for b = {b} distinct shifts"
        )));
    }
    let mut forms = vec!["z".to_string()];
    for i in 0..a as i64 {
        forms.push(if i == 0 {
            "x".into()
        } else {
            format!("x + {i}*z")
        });
    }
    for i in 0..b as i64 {
        forms.push(if i == 0 {
            "y".into()
        } else {
            format!("y + {i}*z")
        });
    }
    let refs: Vec<&str> = forms.iter().map(String::as_str).collect();
    Ok(LineArrangement::parse(&refs, spec)?)
}

/// The inductive family of 4k+5 lines:
/// x, y, z, x+y, x−y and x ± cⱼz, y ± cⱼz for each abscissa cⱼ.
/// Defaults cⱼ = j; k = 1 gives the B₃ arrangement.
pub fn family_a4k(
    k: u32,
    abscissas: Option<&[i64]>,
    spec: FieldSpec,
) -> Result<LineArrangement, CatalogError> {
    if k < 1 {
        return Err(CatalogError::BadParams("need k >= 1".into()));
    }
    let defaults: Vec<i64> = (1..=k as i64).collect();
    let cs: Vec<i64> = match abscissas {
        Some(v) => v.to_vec(),
        None => defaults,
    };
    if cs.len() != k as usize {
        return Err(CatalogError::BadParams(format!(
            "need exactly {k} abscissas"
        )));
    }
    let mut forms: Vec<String> = ["x", "y", "z", "x + y", "x - y"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    for c in &cs {
        forms.push(format!("x - {c}*z"));
        forms.push(format!("x + {c}*z"));
        forms.push(format!("y - {c}*z"));
        forms.push(format!("y + {c}*z"));
    }
    let refs: Vec<&str> = forms.iter().map(String::as_str).collect();
    Ok(LineArrangement::parse(&refs, spec)?)
}

/// The B₃-type arrangement of 9 lines (the k = 1 member of the family).
pub fn b3(spec: FieldSpec) -> Result<LineArrangement, CatalogError> {
    family_a4k(1, None, spec)
}

/// The t-th roots of unity in GF(p), ascending; requires t | p − 1.
fn roots_of_unity(t: u32, p: u64) -> Result<Vec<u64>, CatalogError> {
    if t as u64 == 0 || (p - 1) % t as u64 != 0 {
        return Err(CatalogError::FieldConstraintViolated(format!(
            "need t | p-1; t = {t}, p = {p}"
        )));
    }
    let mut out = Vec::new();
    for r in 1..p {
        let mut pow = 1u64;
        for _ in 0..t {
            pow = pow * r % p;
        }
        if pow == 1 {
            out.push(r);
        }
    }
    if out.len() != t as usize {
        return Err(CatalogError::FieldConstraintViolated(format!(
            "found {} t-th roots of unity, expected {t}",
            out.len()
        )));
    }
    Ok(out)
}

/// The Fermat-type arrangement of the 3t linear factors of
/// (x^t − y^t)(x^t − z^t)(y^t − z^t).
pub fn fermat(t: u32, spec: FieldSpec) -> Result<LineArrangement, CatalogError> {
    let roots: Vec<i64> = match spec {
        FieldSpec::Prime(p) => roots_of_unity(t, p)?.into_iter().map(|r| r as i64).collect(),
        FieldSpec::Rationals => match t {
            1 => vec![1],
            2 => vec![1, -1],
            _ => {
                return Err(CatalogError::FieldConstraintViolated(
                    "over the rationals only t <= 2 has enough roots of unity".into(),
                ))
            }
        },
        _ => {
            return Err(CatalogError::FieldConstraintViolated(
                "fermat needs a prime field or the rationals".into(),
            ))
        }
    };
    let mut forms = Vec::with_capacity(3 * t as usize);
    for r in &roots {
        forms.push(format!("x - {r}*y"));
    }
    for r in &roots {
        forms.push(format!("x - {r}*z"));
    }
    for r in &roots {
        forms.push(format!("y - {r}*z"));
    }
    let refs: Vec<&str> = forms.iter().map(String::as_str).collect();
    Ok(LineArrangement::parse(&refs, spec)?)
}

/// d random lines with no two proportional and no three concurrent.
pub fn star_random(d: usize, seed: u64, spec: FieldSpec) -> Result<LineArrangement, CatalogError> {
    if d < 3 {
        return Err(CatalogError::BadParams("need d >= 3".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    'attempt: for _ in 0..200 {
        let mut forms = Vec::with_capacity(d);
        for _ in 0..d {
            let c: [Scalar; 3] = loop {
                let c = [
                    Scalar::from_int(rng.gen_range(-50..=50), spec),
                    Scalar::from_int(rng.gen_range(-50..=50), spec),
                    Scalar::from_int(rng.gen_range(-50..=50), spec),
                ];
                if c.iter().any(|x| !x.is_zero()) {
                    break c;
                }
            };
            forms.push(HomPoly::linear(c, spec)?);
        }
        let Ok(a) = LineArrangement::new(forms, spec) else {
            continue 'attempt;
        };
        let Ok(pts) = singular_points(&a) else {
            continue 'attempt;
        };
        if pts.iter().all(|p| p.multiplicity == 2) {
            return Ok(a);
        }
    }
    Err(CatalogError::FieldConstraintViolated(
        "could not sample a generic star arrangement (field too small?)".into(),
    ))
}

/// Load an arrangement from a JSON file holding a list of integer
/// coefficient triples [[a,b,c], ...] interpreted as forms a·x+b·y+c·z.
pub fn arrangement_from_file(path: &str, spec: FieldSpec) -> Result<LineArrangement, CatalogError> {
    let text =
        std::fs::read_to_string(path).map_err(|e| CatalogError::FileError(e.to_string()))?;
    let triples: Vec<[i64; 3]> =
        serde_json::from_str(&text).map_err(|e| CatalogError::FileError(e.to_string()))?;
    let forms = triples
        .iter()
        .map(|c| {
            HomPoly::linear(
                [
                    Scalar::from_int(c[0], spec),
                    Scalar::from_int(c[1], spec),
                    Scalar::from_int(c[2], spec),
                ],
                spec,
            )
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(LineArrangement::new(forms, spec)?)
}

fn get_u32(params: &BTreeMap<String, String>, key: &str) -> Result<u32, CatalogError> {
    params
        .get(key)
        .ok_or_else(|| CatalogError::BadParams(format!("missing parameter `{key}`")))?
        .parse()
        .map_err(|_| CatalogError::BadParams(format!("parameter `{key}` must be an integer")))
}

/// Build a catalog entry by name with string parameters (CLI entrance).
pub fn build(
    name: &str,
    params: &BTreeMap<String, String>,
    spec: FieldSpec,
) -> Result<CatalogOutput, CatalogError> {
    match name {
        "fano" => Ok(CatalogOutput::Points(fano(spec)?)),
        "h19" => Ok(CatalogOutput::Lines(h19(spec)?)),
        "example20_a" => Ok(CatalogOutput::Lines(example20('a', spec)?)),
        "example20_b" => Ok(CatalogOutput::Lines(example20('b', spec)?)),
        "example20_c" => Ok(CatalogOutput::Lines(example20('c', spec)?)),
        "example20_d" => Ok(CatalogOutput::Lines(example20('d', spec)?)),
        "a_ab" => Ok(CatalogOutput::Lines(a_ab(
            get_u32(params, "a")?,
            get_u32(params, "b")?,
            spec,
        )?)),
        "b3" => Ok(CatalogOutput::Lines(b3(spec)?)),
        "family_a4k" => {
            let k = get_u32(params, "k")?;
            let abscissas: Option<Vec<i64>> = match params.get("abscissas") {
                None => None,
                Some(s) => Some(
                    s.split(',')
                        .map(|x| x.trim().parse())
                        .collect::<Result<Vec<i64>, _>>()
                        .map_err(|_| {
                            CatalogError::BadParams("abscissas must be integers".into())
                        })?,
                ),
            };
            Ok(CatalogOutput::Lines(family_a4k(
                k,
                abscissas.as_deref(),
                spec,
            )?))
        }
        "fermat" => Ok(CatalogOutput::Lines(fermat(get_u32(params, "t")?, spec)?)),
        "star_random" => {
            let d = get_u32(params, "d")? as usize;
            let seed = params
                .get("seed")
                .map(|s| s.parse().map_err(|_| CatalogError::BadParams("seed".into())))
                .transpose()?
                .unwrap_or(0);
            Ok(CatalogOutput::Lines(star_random(d, seed, spec)?))
        }
        "klein" | "wiman" => match params.get("file") {
            Some(path) => Ok(CatalogOutput::Lines(arrangement_from_file(path, spec)?)),
            None => Err(CatalogError::CoordinatesRequired(name.into())),
        },
        other => Err(CatalogError::UnknownName(other.into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn fano_needs_char2_and_has_7_points() {
        assert!(fano(Q).is_err());
        let z = fano(FieldSpec::Prime(2)).unwrap();
        assert_eq!(z.len(), 7);
    }

    #[test]
    fn sizes_match() {
        assert_eq!(h19(Q).unwrap().d(), 19);
        assert_eq!(example20('a', Q).unwrap().d(), 18);
        assert_eq!(example20('b', Q).unwrap().d(), 19);
        assert_eq!(example20('c', Q).unwrap().d(), 20);
        assert_eq!(example20('d', Q).unwrap().d(), 19);
        assert_eq!(a_ab(3, 13, Q).unwrap().d(), 17);
        assert_eq!(b3(Q).unwrap().d(), 9);
        assert_eq!(family_a4k(2, None, Q).unwrap().d(), 13);
        assert_eq!(family_a4k(3, None, Q).unwrap().d(), 17);
        assert_eq!(fermat(2, Q).unwrap().d(), 6);
    }

    #[test]
    fn fermat5_over_gf11() {
        let a = fermat(5, FieldSpec::Prime(11)).unwrap();
        assert_eq!(a.d(), 15);
        assert_eq!(roots_of_unity(5, 11).unwrap(), vec![1, 3, 4, 5, 9]);
        assert!(fermat(5, Q).is_err());
        assert!(fermat(5, FieldSpec::Prime(7)).is_err());
    }

    #[test]
    fn star_has_only_double_points() {
        let a = star_random(5, 7, Q).unwrap();
        assert_eq!(a.d(), 5);
        let pts = singular_points(&a).unwrap();
        assert_eq!(pts.len(), 10);
        assert!(pts.iter().all(|p| p.multiplicity == 2));
    }

    #[test]
    fn build_dispatch_and_stubs() {
        let mut params = BTreeMap::new();
        params.insert("t".to_string(), "2".to_string());
        assert!(matches!(
            build("fermat", &params, Q),
            Ok(CatalogOutput::Lines(_))
        ));
        assert!(matches!(
            build("klein", &BTreeMap::new(), Q),
            Err(CatalogError::CoordinatesRequired(_))
        ));
        assert!(matches!(
            build("nonsense", &BTreeMap::new(), Q),
            Err(CatalogError::UnknownName(_))
        ));
        assert_eq!(list_entries().len(), 13);
    }

    #[test]
    fn b3_equals_family_k1() {
        assert_eq!(b3(Q).unwrap(), family_a4k(1, None, Q).unwrap());
    }
}
