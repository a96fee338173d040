//! Exact linear algebra over rational functions in `T`: row reduction,
//! kernels, canonical subspaces and initial-term specialization.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use super::poly::{FracT, PolyT};
use crate::error::{Error, Result};
use crate::numerics::Rational;

/// Row-major matrix; operators act on column vectors.
pub type Matrix = Vec<Vec<FracT>>;
pub type Vector = Vec<FracT>;

pub fn zero_matrix(rows: usize, cols: usize) -> Matrix {
    vec![vec![FracT::zero(); cols]; rows]
}

pub fn identity(n: usize) -> Matrix {
    let mut m = zero_matrix(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = FracT::one();
    }
    m
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let k = b.len();
    let m = b.first().map_or(0, Vec::len);
    let mut out = zero_matrix(n, m);
    for i in 0..n {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..m {
                if !b[l][j].is_zero() {
                    out[i][j] = &out[i][j] + &(&a[i][l] * &b[l][j]);
                }
            }
        }
    }
    out
}

pub fn mat_vec(a: &Matrix, v: &[FracT]) -> Vector {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .filter(|(x, y)| !x.is_zero() && !y.is_zero())
                .fold(FracT::zero(), |acc, (x, y)| &acc + &(x * y))
        })
        .collect()
}

pub fn mat_pow(a: &Matrix, n: u32) -> Matrix {
    let mut out = identity(a.len());
    for _ in 0..n {
        out = mat_mul(&out, a);
    }
    out
}

pub fn transpose(a: &Matrix) -> Matrix {
    let m = a.first().map_or(0, Vec::len);
    (0..m).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn is_zero_matrix(a: &Matrix) -> bool {
    a.iter().all(|r| r.iter().all(FracT::is_zero))
}

/// Reduced row echelon form with unit pivots, zero rows dropped, and the
/// pivot columns.
pub fn rref(rows: &[Vector]) -> (Vec<Vector>, Vec<usize>) {
    let mut m: Vec<Vector> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv();
        m[r] = m[r].iter().map(|x| x * &inv).collect();
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let pivot_row = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot_row) {
                    if !y.is_zero() {
                        *x = &*x - &(&f * y);
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank(rows: &[Vector]) -> usize {
    rref(rows).1.len()
}

/// Basis of `{v : a v = 0}` for an `n x n` (or `k x n`) matrix.
pub fn kernel(a: &Matrix, ncols: usize) -> Vec<Vector> {
    let (r, pivots) = rref(a);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![FracT::zero(); ncols];
            v[f] = FracT::one();
            for (row, &p) in r.iter().zip(&pivots) {
                v[p] = -&row[f];
            }
            v
        })
        .collect()
}

/// Subspace of an `n`-dimensional space in canonical reduced form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    pub ambient: usize,
    rows: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn span(ambient: usize, vectors: &[Vector]) -> Self {
        if vectors.is_empty() {
            return Self::zero(ambient);
        }
        let (rows, pivots) = rref(vectors);
        Subspace { ambient, rows, pivots }
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn whole(ambient: usize) -> Self {
        Self::span(ambient, &identity(ambient))
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vector] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn contains(&self, v: &[FracT]) -> bool {
        let mut r = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !r[p].is_zero() {
                let f = r[p].clone();
                for (x, y) in r.iter_mut().zip(row) {
                    if !y.is_zero() {
                        *x = &*x - &(&f * y);
                    }
                }
            }
        }
        r.iter().all(FracT::is_zero)
    }

    pub fn is_within(&self, other: &Subspace) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }

    /// Each row scaled to polynomial entries with coprime content and unit
    /// leading coefficient at its pivot.
    pub fn cleared_rows(&self) -> Vec<Vec<PolyT>> {
        self.rows.iter().map(|r| clear_denominators(r)).collect()
    }
}

/// Smallest polynomial multiple of `v`: denominators cleared, the common
/// polynomial factor removed, integer coefficients without common factor
/// and a positive leading coefficient in the first nonzero entry.
pub fn clear_denominators(v: &[FracT]) -> Vec<PolyT> {
    let mut l = PolyT::one();
    for x in v {
        let g = PolyT::gcd(&l, x.den());
        l = (&l * x.den()).div_rem(&g).0;
    }
    let polys: Vec<PolyT> = v
        .iter()
        .map(|x| x.num() * &l.div_rem(x.den()).0)
        .collect();
    let mut g = PolyT::zero();
    for p in &polys {
        g = PolyT::gcd(&g, p);
    }
    if g.is_zero() {
        return polys;
    }
    let mut out: Vec<PolyT> = polys.iter().map(|p| p.div_rem(&g).0).collect();
    if let Some(first) = out.iter().find(|p| !p.is_zero()) {
        let s = Rational::from_integer(1.into()) / first.leading();
        out = out.iter().map(|p| p.scale(&s)).collect();
    }
    // integer coefficients with no common factor
    let coeffs = || out.iter().flat_map(|p| p.coeffs().iter()).filter(|c| !c.is_zero());
    let den = coeffs().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let num = coeffs().fold(BigInt::zero(), |acc, c| acc.gcd(&(c * &den).to_integer()));
    let s = Rational::new(den, num);
    out.iter().map(|p| p.scale(&s)).collect()
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "span{{")?;
        for (i, r) in self.cleared_rows().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            let parts: Vec<String> = r.iter().map(|p| p.to_string()).collect();
            write!(f, "({})", parts.join(", "))?;
        }
        write!(f, "}}")
    }
}

/// Evaluate at `t`; `None` if some denominator vanishes there.
pub fn eval_matrix(a: &[Vector], t: &Rational) -> Option<Vec<Vec<Rational>>> {
    a.iter()
        .map(|r| r.iter().map(|x| x.eval(t)).collect::<Option<Vec<_>>>())
        .collect()
}

pub fn rank_rational(a: &[Vec<Rational>]) -> usize {
    let rows: Vec<Vector> = a
        .iter()
        .map(|r| r.iter().map(|x| FracT::constant(x.clone())).collect())
        .collect();
    rank(&rows)
}

/// Initial-term subspace of rational vectors with the same dimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InitialSpan {
    /// Reduced rows with rational entries.
    pub rows: Vec<Vec<String>>,
    pub rank: usize,
    pub rounds: usize,
}

fn constant_term_row(row: &[PolyT]) -> Vec<Rational> {
    row.iter().map(|p| p.coeff(0)).collect()
}

fn to_fracs(row: &[Rational]) -> Vector {
    row.iter().map(|x| FracT::constant(x.clone())).collect()
}

/// Rows rescaled so the smallest T-valuation among their entries is zero.
fn normalize_row(row: Vec<PolyT>) -> Vec<PolyT> {
    let v = row.iter().filter_map(PolyT::valuation).min().unwrap_or(0);
    row.into_iter().map(|p| p.unshift(v)).collect()
}

/// Repeatedly rescale rows to valuation zero and replace a row by the
/// combination that kills a dependency among the constant terms, until
/// the constant terms are independent. Returns the rational rows and the
/// number of reduction rounds.
pub fn ini_rows(s: &Subspace) -> Result<(Vec<Vec<Rational>>, usize)> {
    let mut rows: Vec<Vec<PolyT>> = s.cleared_rows().into_iter().map(normalize_row).collect();
    let max_deg = rows
        .iter()
        .flat_map(|r| r.iter().filter_map(PolyT::degree))
        .max()
        .unwrap_or(0);
    let guard = (s.ambient + 1) * (max_deg + 1) * (rows.len() + 1) + s.ambient + 8;
    for round in 0..guard {
        let consts: Vec<Vec<Rational>> = rows.iter().map(|r| constant_term_row(r)).collect();
        let as_cols: Matrix = transpose(&consts.iter().map(|r| to_fracs(r)).collect::<Vec<_>>());
        let deps = kernel(&as_cols, rows.len());
        let Some(dep) = deps.first() else {
            return Ok((consts, round));
        };
        // the dependency has rational entries; combine the polynomial rows
        let coeffs: Vec<Rational> = dep.iter().map(FracT::initial).collect();
        let target = coeffs.iter().rposition(|c| !c.is_zero()).unwrap();
        let width = s.ambient;
        let mut combo = vec![PolyT::zero(); width];
        for (row, c) in rows.iter().zip(&coeffs) {
            if c.is_zero() {
                continue;
            }
            for (x, p) in combo.iter_mut().zip(row) {
                *x = &*x + &p.scale(c);
            }
        }
        if combo.iter().all(PolyT::is_zero) {
            return Err(Error::Internal("initial-term reduction met a dependent row".into()));
        }
        rows[target] = normalize_row(combo);
    }
    Err(Error::Internal("initial-term reduction did not terminate".into()))
}

pub fn ini_specialize(s: &Subspace) -> Result<InitialSpan> {
    let (rows, rounds) = ini_rows(s)?;
    let sub = Subspace::span(s.ambient, &rows.iter().map(|r| to_fracs(r)).collect::<Vec<_>>());
    Ok(InitialSpan {
        rank: sub.dim(),
        rows: sub
            .rows()
            .iter()
            .map(|r| r.iter().map(|x| crate::numerics::fmt_rational(&x.initial())).collect())
            .collect(),
        rounds,
    })
}
