//! Exact linear algebra over the supported fields.
//!
//! Ranks over ℚ are computed by clearing denominators and running
//! fraction-free integer elimination with per-row content reduction; over
//! GF(p) by straight elimination.  Over a function field K(s,t) the rank is
//! the *generic* rank and is certified exactly:
//!
//! * any specialization of (s,t) gives a lower bound on the rank;
//! * if that bound already equals the row or column count, it is the rank;
//! * otherwise the claim "all (r+1)-minors vanish identically" is verified
//!   either on an evaluation grid large enough for the degree bounds of
//!   those minors (a nonzero bivariate polynomial of bidegree ≤ (D_s, D_t)
//!   cannot vanish on a (D_s+1) × (D_t+1) grid), or, over small prime
//!   fields where no such grid exists, by fraction-free elimination on the
//!   polynomial entries themselves.
//!
//! Kernel bases use deterministic reduced row echelon form (first nonzero
//! pivot, pivot entries scaled to 1), so results are reproducible.

use crate::field::{BaseField, BiPoly, FieldError, FieldSpec, Scalar};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("matrix entries do not all live in {0}")]
    MixedFields(String),
    #[error("empty matrix dimension")]
    EmptyMatrix,
}

/// Dense row-major matrix of scalars from a single field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat {
    pub spec: FieldSpec,
    pub rows: usize,
    pub cols: usize,
    data: Vec<Scalar>,
}

impl Mat {
    pub fn zero(rows: usize, cols: usize, spec: FieldSpec) -> Mat {
        Mat {
            spec,
            rows,
            cols,
            data: vec![Scalar::zero(spec); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>, spec: FieldSpec) -> Result<Mat, LinalgError> {
        let r = rows.len();
        let c = rows.first().map(|r| r.len()).unwrap_or(0);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(LinalgError::EmptyMatrix);
            }
            for e in row {
                if e.spec() != spec {
                    return Err(LinalgError::MixedFields(spec.to_string()));
                }
                data.push(e);
            }
        }
        Ok(Mat {
            spec,
            rows: r,
            cols: c,
            data,
        })
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }
}

/// How a generic-rank value was established.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RankCertificate {
    /// Plain field: elimination is already exact.
    Direct,
    /// A single specialization reached the maximum possible rank.
    Specialization,
    /// Minor-vanishing identity verified on a degree-bounded grid.
    IdentityGrid { grid_s: usize, grid_t: usize },
    /// Fraction-free elimination on the polynomial entries.
    SymbolicElimination,
}

/// Exact rank.  Over a function field this is the generic rank together
/// with its certificate; over plain fields the certificate is `Direct`.
pub fn rank(m: &Mat) -> Result<(usize, RankCertificate), LinalgError> {
    match m.spec {
        FieldSpec::Rationals => Ok((rank_rational(m), RankCertificate::Direct)),
        FieldSpec::Prime(p) => Ok((rank_prime(m, p), RankCertificate::Direct)),
        FieldSpec::Function(base) => rank_function_field(m, base),
    }
}

// ---------------------------------------------------------------------------
// Rationals: fraction-free integer elimination
// ---------------------------------------------------------------------------

fn clear_row_denominators(row: &[Scalar]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for e in row {
        let r = e.as_rational().expect("rational entries");
        let d = r.denom();
        lcm = &lcm / lcm.gcd(d) * d;
    }
    row.iter()
        .map(|e| {
            let r = e.as_rational().unwrap();
            r.numer() * (&lcm / r.denom())
        })
        .collect()
}

fn reduce_row_content(row: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for e in row.iter() {
        if !e.is_zero() {
            g = g.gcd(e);
            if g.is_one() {
                return;
            }
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for e in row.iter_mut() {
        *e = &*e / &g;
    }
}

pub(crate) fn rank_int_rows(mut rows: Vec<Vec<BigInt>>) -> usize {
    let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
    let mut rank = 0;
    let mut processed = 0;
    for col in 0..ncols {
        if processed >= rows.len() {
            break;
        }
        // pick the pivot with the smallest nonzero magnitude to slow growth
        let mut pivot: Option<usize> = None;
        for i in processed..rows.len() {
            if !rows[i][col].is_zero() {
                match pivot {
                    None => pivot = Some(i),
                    Some(p) => {
                        if rows[i][col].magnitude() < rows[p][col].magnitude() {
                            pivot = Some(i);
                        }
                    }
                }
            }
        }
        let Some(p) = pivot else { continue };
        rows.swap(processed, p);
        let (head, tail) = rows.split_at_mut(processed + 1);
        let prow = &head[processed];
        let pval = prow[col].clone();
        for r in tail.iter_mut() {
            if r[col].is_zero() {
                continue;
            }
            let f = r[col].clone();
            for j in col..ncols {
                r[j] = &r[j] * &pval - &prow[j] * &f;
            }
            reduce_row_content(r);
        }
        processed += 1;
        rank += 1;
    }
    rank
}

fn rank_rational(m: &Mat) -> usize {
    let rows: Vec<Vec<BigInt>> = (0..m.rows).map(|i| clear_row_denominators(m.row(i))).collect();
    rank_int_rows(rows)
}

// ---------------------------------------------------------------------------
// GF(p)
// ---------------------------------------------------------------------------

fn rank_prime_rows(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
    let inv = |a: u64| -> u64 {
        // Fermat inverse; p is prime and a nonzero.
        let mut base = a % p;
        let mut e = p - 2;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = ((acc as u128 * base as u128) % p as u128) as u64;
            }
            base = ((base as u128 * base as u128) % p as u128) as u64;
            e >>= 1;
        }
        acc
    };
    let mut rank = 0;
    let mut processed = 0;
    for col in 0..ncols {
        if processed >= rows.len() {
            break;
        }
        let Some(piv) = (processed..rows.len()).find(|i| rows[*i][col] != 0) else {
            continue;
        };
        rows.swap(processed, piv);
        let pinv = inv(rows[processed][col]);
        let (head, tail) = rows.split_at_mut(processed + 1);
        let prow = &head[processed];
        for r in tail.iter_mut() {
            if r[col] == 0 {
                continue;
            }
            let f = ((r[col] as u128 * pinv as u128) % p as u128) as u64;
            for j in col..ncols {
                let sub = (prow[j] as u128 * f as u128) % p as u128;
                r[j] = ((r[j] as u128 + p as u128 - sub) % p as u128) as u64;
            }
        }
        processed += 1;
        rank += 1;
    }
    rank
}

fn rank_prime(m: &Mat, p: u64) -> usize {
    let rows: Vec<Vec<u64>> = (0..m.rows)
        .map(|i| {
            m.row(i)
                .iter()
                .map(|e| match e {
                    Scalar::Mod { val, .. } => *val,
                    _ => unreachable!("prime field entries"),
                })
                .collect()
        })
        .collect();
    rank_prime_rows(rows, p)
}

// ---------------------------------------------------------------------------
// Function fields: certified generic rank
// ---------------------------------------------------------------------------

// Clear denominators row by row so every entry becomes a polynomial.
fn clear_to_polys(m: &Mat, base: BaseField) -> Vec<Vec<BiPoly>> {
    let mut out = Vec::with_capacity(m.rows);
    for i in 0..m.rows {
        let row = m.row(i);
        let mut lcm = BiPoly::one_poly(base);
        for e in row {
            let f = e.as_fun().expect("function field entries");
            if !f.den.is_one() {
                let g = lcm.gcd(&f.den);
                lcm = lcm.exact_div(&g).unwrap().mul(&f.den);
            }
        }
        out.push(
            row.iter()
                .map(|e| {
                    let f = e.as_fun().unwrap();
                    f.num.mul(&lcm.exact_div(&f.den).expect("lcm of denominators"))
                })
                .collect(),
        );
    }
    out
}

// Integer-coefficient term lists for a rational polynomial matrix, with
// denominators cleared row by row, so grid evaluation is pure BigInt
// arithmetic against cached power tables.
struct IntTermMatrix {
    rows: Vec<Vec<Vec<(u16, u16, BigInt)>>>,
    max_s: u16,
    max_t: u16,
}

impl IntTermMatrix {
    fn new(polys: &[Vec<BiPoly>]) -> IntTermMatrix {
        let mut max_s = 0;
        let mut max_t = 0;
        let rows = polys
            .iter()
            .map(|row| {
                let mut lcm = BigInt::one();
                for p in row {
                    for c in p.terms.values() {
                        let d = c.as_rational().expect("rational coefficients").denom();
                        lcm = &lcm / lcm.gcd(d) * d;
                    }
                }
                row.iter()
                    .map(|p| {
                        p.terms
                            .iter()
                            .map(|(&(a, b), c)| {
                                max_s = max_s.max(a);
                                max_t = max_t.max(b);
                                let r = c.as_rational().unwrap();
                                (a, b, r.numer() * (&lcm / r.denom()))
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        IntTermMatrix { rows, max_s, max_t }
    }

    fn eval(&self, s0: i64, t0: i64) -> Vec<Vec<BigInt>> {
        let pow = |x: i64, top: u16| -> Vec<BigInt> {
            let mut v = Vec::with_capacity(top as usize + 1);
            let mut cur = BigInt::one();
            for _ in 0..=top {
                v.push(cur.clone());
                cur *= x;
            }
            v
        };
        let ps = pow(s0, self.max_s);
        let pt = pow(t0, self.max_t);
        self.rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|terms| {
                        let mut acc = BigInt::zero();
                        for (a, b, c) in terms {
                            acc += c * &ps[*a as usize] * &pt[*b as usize];
                        }
                        acc
                    })
                    .collect()
            })
            .collect()
    }
}

// Same idea over GF(p): u64 term lists evaluated with cached power tables.
struct ModTermMatrix {
    rows: Vec<Vec<Vec<(u16, u16, u64)>>>,
    max_s: u16,
    max_t: u16,
    p: u64,
}

impl ModTermMatrix {
    fn new(polys: &[Vec<BiPoly>], p: u64) -> ModTermMatrix {
        let mut max_s = 0;
        let mut max_t = 0;
        let rows = polys
            .iter()
            .map(|row| {
                row.iter()
                    .map(|q| {
                        q.terms
                            .iter()
                            .map(|(&(a, b), c)| {
                                max_s = max_s.max(a);
                                max_t = max_t.max(b);
                                let v = match c {
                                    Scalar::Mod { val, .. } => *val,
                                    _ => unreachable!("prime coefficients"),
                                };
                                (a, b, v)
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        ModTermMatrix {
            rows,
            max_s,
            max_t,
            p,
        }
    }

    fn eval(&self, s0: u64, t0: u64) -> Vec<Vec<u64>> {
        let p = self.p;
        let pow = |x: u64, top: u16| -> Vec<u64> {
            let mut v = Vec::with_capacity(top as usize + 1);
            let mut cur = 1u64;
            for _ in 0..=top {
                v.push(cur);
                cur = ((cur as u128 * x as u128) % p as u128) as u64;
            }
            v
        };
        let ps = pow(s0 % p, self.max_s);
        let pt = pow(t0 % p, self.max_t);
        self.rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|terms| {
                        let mut acc = 0u128;
                        for (a, b, c) in terms {
                            let m = (ps[*a as usize] as u128 * pt[*b as usize] as u128)
                                % p as u128;
                            acc = (acc + m * *c as u128) % p as u128;
                        }
                        acc as u64
                    })
                    .collect()
            })
            .collect()
    }
}

enum PointEval {
    Int(IntTermMatrix),
    Mod(ModTermMatrix),
}

impl PointEval {
    fn new(polys: &[Vec<BiPoly>], base: BaseField) -> PointEval {
        match base {
            BaseField::Rationals => PointEval::Int(IntTermMatrix::new(polys)),
            BaseField::Prime(p) => PointEval::Mod(ModTermMatrix::new(polys, p)),
        }
    }

    fn rank_at(&self, s0: i64, t0: i64) -> usize {
        match self {
            PointEval::Int(m) => rank_int_rows(m.eval(s0, t0)),
            PointEval::Mod(m) => {
                let p = m.p as i64;
                rank_prime_rows(
                    m.eval(s0.rem_euclid(p) as u64, t0.rem_euclid(p) as u64),
                    m.p,
                )
            }
        }
    }
}

// Total-degree bound for minors of size `k`: row-wise and column-wise
// sums of entry total-degree maxima, whichever is smaller.
fn minor_total_degree_bound(polys: &[Vec<BiPoly>], k: usize) -> usize {
    let rows = polys.len();
    let cols = polys.first().map(|r| r.len()).unwrap_or(0);
    let top_sum = |mut v: Vec<usize>| -> usize {
        v.sort_unstable_by(|a, b| b.cmp(a));
        v.iter().take(k).sum()
    };
    let row_max = top_sum(
        (0..rows)
            .map(|i| {
                polys[i]
                    .iter()
                    .filter_map(|p| p.total_degree().map(|d| d as usize))
                    .max()
                    .unwrap_or(0)
            })
            .collect(),
    );
    let col_max = top_sum(
        (0..cols)
            .map(|j| {
                (0..rows)
                    .filter_map(|i| polys[i][j].total_degree().map(|d| d as usize))
                    .max()
                    .unwrap_or(0)
            })
            .collect(),
    );
    row_max.min(col_max)
}

// Use the rows that are constant in (s, t) to eliminate columns once over
// the base field. Returns the rank contributed by constant rows and the
// reduced polynomial matrix (remaining rows, pivot columns removed); row
// total degrees never grow, so minor degree bounds shrink a lot when many
// rows are constant.
fn eliminate_constant_rows(
    polys: Vec<Vec<BiPoly>>,
    base: BaseField,
) -> (usize, Vec<Vec<BiPoly>>) {
    let cols = polys.first().map(|r| r.len()).unwrap_or(0);
    let is_const = |row: &[BiPoly]| {
        row.iter()
            .all(|p| p.total_degree().map(|d| d == 0).unwrap_or(true))
    };
    let const_val = |p: &BiPoly| -> Scalar {
        let spec = match base {
            BaseField::Rationals => FieldSpec::Rationals,
            BaseField::Prime(q) => FieldSpec::Prime(q),
        };
        if p.is_zero() {
            Scalar::zero(spec)
        } else {
            p.leading().unwrap().1.clone()
        }
    };
    let (const_rows, poly_rows): (Vec<_>, Vec<_>) = polys.into_iter().partition(|r| is_const(r));
    if const_rows.is_empty() {
        return (0, poly_rows);
    }
    // Row-echelon form of the constant block over the base field, pivots
    // normalized to 1.
    let mut echelon: Vec<Vec<Scalar>> = const_rows
        .iter()
        .map(|r| r.iter().map(&const_val).collect())
        .collect();
    let mut pivots: Vec<usize> = Vec::new(); // pivot column of each echelon row
    let mut next = 0usize;
    for col in 0..cols {
        let Some(pr) = (next..echelon.len()).find(|&i| !echelon[i][col].is_zero()) else {
            continue;
        };
        echelon.swap(next, pr);
        let inv = echelon[next][col].inv().expect("nonzero pivot");
        for j in col..cols {
            echelon[next][j] = echelon[next][j].mul(&inv).unwrap();
        }
        for i in 0..echelon.len() {
            if i != next && !echelon[i][col].is_zero() {
                let f = echelon[i][col].clone();
                for j in col..cols {
                    let s = echelon[next][j].mul(&f).unwrap();
                    echelon[i][j] = echelon[i][j].sub(&s).unwrap();
                }
            }
        }
        pivots.push(col);
        next += 1;
        if next == echelon.len() {
            break;
        }
    }
    let alpha = next;
    echelon.truncate(alpha);
    // Reduce the polynomial rows by the pivots and drop the pivot columns.
    let pivot_set: Vec<bool> = {
        let mut v = vec![false; cols];
        for &c in &pivots {
            v[c] = true;
        }
        v
    };
    let reduced = poly_rows
        .into_iter()
        .map(|mut row| {
            for (e, &pc) in echelon.iter().zip(&pivots) {
                if row[pc].is_zero() {
                    continue;
                }
                let f = row[pc].clone();
                for j in 0..cols {
                    if e[j].is_zero() {
                        continue;
                    }
                    let s = f.scale(&e[j]);
                    row[j] = row[j].sub(&s);
                }
            }
            row.into_iter()
                .zip(&pivot_set)
                .filter_map(|(p, &piv)| (!piv).then_some(p))
                .collect::<Vec<_>>()
        })
        .collect();
    (alpha, reduced)
}

fn rank_function_field(m: &Mat, base: BaseField) -> Result<(usize, RankCertificate), LinalgError> {
    if m.rows == 0 || m.cols == 0 {
        return Ok((0, RankCertificate::Direct));
    }
    let polys = clear_to_polys(m, base);
    // Constant rows contribute exact rank and shrink the certification
    // problem for the rest.
    let (alpha, polys) = eliminate_constant_rows(polys, base);
    if polys.is_empty() || polys.first().map(|r| r.len()).unwrap_or(0) == 0 {
        return Ok((alpha, RankCertificate::Direct));
    }
    let maxrank = polys.len().min(polys[0].len());

    let eval = PointEval::new(&polys, base);

    // Lower bound from a few specializations.
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut r = 0usize;
    for _ in 0..3 {
        let (s0, t0) = match base {
            BaseField::Rationals => (rng.gen_range(-1000..=1000), rng.gen_range(-1000..=1000)),
            BaseField::Prime(p) => (
                rng.gen_range(0..p) as i64,
                rng.gen_range(0..p) as i64,
            ),
        };
        r = r.max(eval.rank_at(s0, t0));
        if r == maxrank {
            return Ok((alpha + r, RankCertificate::Specialization));
        }
    }

    // Identity side: show all (r+1)-minors vanish. A minor has total
    // degree at most D, so it vanishes identically iff it vanishes on the
    // triangular lattice {(s,t) : s,t >= 0, s + t <= D} (the principal
    // lattice of the simplex is unisolvent for total degree <= D; over
    // GF(p) this needs D < p so the nodes stay distinct).
    loop {
        if r == maxrank {
            return Ok((alpha + r, RankCertificate::Specialization));
        }
        let d = minor_total_degree_bound(&polys, r + 1);
        if std::env::var("UCT_LINALG_DEBUG").is_ok() {
            eprintln!(
                "identity grid: alpha {alpha}, reduced {}x{}, r {r}, D {d}",
                polys.len(),
                polys[0].len()
            );
        }
        let grid_ok = match base {
            BaseField::Rationals => true,
            BaseField::Prime(p) => (d as u64) < p,
        };
        if !grid_ok {
            // No grid fits in the field: eliminate symbolically.
            let rank = bareiss_rank_polys(polys, base);
            return Ok((alpha + rank, RankCertificate::SymbolicElimination));
        }
        let mut bumped = false;
        'grid: for s0 in 0..=d as i64 {
            for t0 in 0..=(d as i64 - s0) {
                let rp = eval.rank_at(s0, t0);
                if rp > r {
                    r = rp;
                    bumped = true;
                    break 'grid;
                }
            }
        }
        if !bumped {
            return Ok((
                alpha + r,
                RankCertificate::IdentityGrid {
                    grid_s: d + 1,
                    grid_t: d + 1,
                },
            ));
        }
    }
}

// Fraction-free (Bareiss) elimination with full pivoting directly on
// polynomial entries.  Exact: every intermediate entry is a minor of the
// original matrix, so the divisions are exact in K[s,t].
fn bareiss_rank_polys(mut a: Vec<Vec<BiPoly>>, base: BaseField) -> usize {
    let rows = a.len();
    let cols = a.first().map(|r| r.len()).unwrap_or(0);
    let mut prev = BiPoly::one_poly(base);
    let mut rank = 0;
    let mut row_perm: Vec<usize> = (0..rows).collect();
    let mut col_perm: Vec<usize> = (0..cols).collect();
    for k in 0..rows.min(cols) {
        // pick the nonzero entry with the fewest terms
        let mut best: Option<(usize, usize, usize)> = None;
        for i in k..rows {
            for j in k..cols {
                let e = &a[row_perm[i]][col_perm[j]];
                if !e.is_zero() {
                    let n = e.terms.len();
                    if best.map(|(_, _, bn)| n < bn).unwrap_or(true) {
                        best = Some((i, j, n));
                    }
                }
            }
        }
        let Some((pi, pj, _)) = best else { break };
        row_perm.swap(k, pi);
        col_perm.swap(k, pj);
        rank += 1;
        let pivot = a[row_perm[k]][col_perm[k]].clone();
        for i in (k + 1)..rows {
            let head = a[row_perm[i]][col_perm[k]].clone();
            if head.is_zero() {
                // still must scale by pivot/prev per Bareiss bookkeeping
                for j in (k + 1)..cols {
                    let e = a[row_perm[i]][col_perm[j]].clone();
                    if e.is_zero() {
                        continue;
                    }
                    let num = e.mul(&pivot);
                    a[row_perm[i]][col_perm[j]] =
                        num.exact_div(&prev).expect("exact fraction-free division");
                }
                continue;
            }
            for j in (k + 1)..cols {
                let e = a[row_perm[i]][col_perm[j]].clone();
                let num = e.mul(&pivot).sub(&head.mul(&a[row_perm[k]][col_perm[j]]));
                a[row_perm[i]][col_perm[j]] = if num.is_zero() {
                    num
                } else {
                    num.exact_div(&prev).expect("exact fraction-free division")
                };
            }
            a[row_perm[i]][col_perm[k]] = BiPoly::zero_poly(base);
        }
        prev = pivot;
    }
    rank
}

// ---------------------------------------------------------------------------
// Kernel via deterministic RREF
// ---------------------------------------------------------------------------

/// Basis of the right kernel, computed by reduced row echelon form with
/// first-nonzero pivoting.  Basis vectors are indexed by the free columns
/// in increasing order; each has a 1 in its free column.
pub fn kernel_basis(m: &Mat) -> Result<Vec<Vec<Scalar>>, LinalgError> {
    let spec = m.spec;
    let mut rows: Vec<Vec<Scalar>> = (0..m.rows).map(|i| m.row(i).to_vec()).collect();
    let ncols = m.cols;
    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, col)
    let mut processed = 0usize;
    for col in 0..ncols {
        let Some(piv) = (processed..rows.len()).find(|i| !rows[*i][col].is_zero()) else {
            continue;
        };
        rows.swap(processed, piv);
        let inv = rows[processed][col].inv()?;
        for j in col..ncols {
            rows[processed][j] = rows[processed][j].mul(&inv)?;
        }
        for i in 0..rows.len() {
            if i == processed || rows[i][col].is_zero() {
                continue;
            }
            let f = rows[i][col].clone();
            for j in col..ncols {
                let sub = rows[processed][j].mul(&f)?;
                rows[i][j] = rows[i][j].sub(&sub)?;
            }
        }
        pivots.push((processed, col));
        processed += 1;
        if processed == rows.len() {
            break;
        }
    }
    let pivot_cols: Vec<usize> = pivots.iter().map(|(_, c)| *c).collect();
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivot_cols.contains(c)) {
        let mut v = vec![Scalar::zero(spec); ncols];
        v[free] = Scalar::one(spec);
        for (r, c) in &pivots {
            v[*c] = rows[*r][free].neg();
        }
        basis.push(v);
    }
    Ok(basis)
}

/// Convenience: the rank as a bare number (certificate dropped).
pub fn rank_value(m: &Mat) -> Result<usize, LinalgError> {
    rank(m).map(|(r, _)| r)
}
