//! Quantum multiplication operators on finite-dimensional graded algebras
//! over `Q(T)`: kernels of powers, the generalized zero eigenspace, the
//! initial-term specialization and ideal checks.

pub mod algebra;
pub mod linalg;
pub mod poly;

use std::collections::BTreeMap;

use serde::Serialize;

pub use algebra::{
    algebra_fixture_names, builtin_algebra, okm, o11, cp1xc, parse_algebra, validate_algebra,
    GradedAlgebra, PolyVec,
};
pub use linalg::{ini_specialize, InitialSpan, Matrix, Subspace, Vector};
pub use poly::{FracT, PolyT};

use crate::error::{Error, Result};
use crate::manifold::Finding;
use crate::numerics::{fmt_rational, Rational};
use algebra::vec_to_frac;
use linalg::{eval_matrix, ini_rows, kernel, mat_pow, rank, rank_rational};

pub fn mult_matrix(a: &GradedAlgebra, c: &[PolyT]) -> Matrix {
    a.mult_matrix(c)
}

pub fn kernel_power(a: &GradedAlgebra, c: &[PolyT], n: u32) -> Subspace {
    let m = mat_pow(&a.mult_matrix(c), n);
    Subspace::span(a.dim(), &kernel(&m, a.dim()))
}

/// Least `N` with `ker c^N = ker c^(N+1)`; zero when `c` is invertible.
pub fn stabilization_index(a: &GradedAlgebra, c: &[PolyT]) -> u32 {
    kernel_chain(a, c).len() as u32 - 1
}

/// `ker c^0, ker c^1, ...` up to and including the first repeat's
/// predecessor, so the last entry is the generalized zero eigenspace.
pub fn kernel_chain(a: &GradedAlgebra, c: &[PolyT]) -> Vec<Subspace> {
    matrix_kernel_chain(&a.mult_matrix(c))
}

/// [`kernel_chain`] for an arbitrary square matrix.
pub fn matrix_kernel_chain(op: &Matrix) -> Vec<Subspace> {
    let n = op.len();
    let mut power = linalg::identity(n);
    let mut chain = vec![Subspace::zero(n)];
    loop {
        power = linalg::mat_mul(&power, op);
        let k = Subspace::span(n, &kernel(&power, n));
        if k.dim() == chain.last().unwrap().dim() {
            return chain;
        }
        chain.push(k);
    }
}

pub fn generalized_zero_eigenspace(a: &GradedAlgebra, c: &[PolyT]) -> Subspace {
    kernel_chain(a, c).pop().unwrap()
}

pub fn sh_rank(a: &GradedAlgebra, c: &[PolyT]) -> usize {
    a.dim() - generalized_zero_eigenspace(a, c).dim()
}

/// How closure under multiplication is tested.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum IdealCheck {
    /// The subspace itself under the quantum product.
    Quantum,
    /// The subspace itself under the product at `T = 0`.
    Cup,
    /// The initial-term subspace under the product at `T = 0`.
    InitialCup,
}

pub fn cup_ideal_check(a: &GradedAlgebra, s: &Subspace, mode: IdealCheck) -> Result<Vec<Finding>> {
    let n = a.dim();
    let mut out = Vec::new();
    let (space, rows): (Subspace, Vec<Vector>) = match mode {
        IdealCheck::Quantum | IdealCheck::Cup => (s.clone(), s.rows().to_vec()),
        IdealCheck::InitialCup => {
            let (r, _) = ini_rows(s)?;
            let rows: Vec<Vector> = r
                .iter()
                .map(|row| row.iter().map(|x| FracT::constant(x.clone())).collect())
                .collect();
            (Subspace::span(n, &rows), rows)
        }
    };
    for i in 0..n {
        let op = match mode {
            IdealCheck::Quantum => a.mult_matrix(&a.basis_vec(i)),
            IdealCheck::Cup | IdealCheck::InitialCup => a.cup_matrix(i),
        };
        for (j, r) in rows.iter().enumerate() {
            let img = linalg::mat_vec(&op, r);
            let ok = space.contains(&img);
            out.push(Finding::new(
                "closed_under_product",
                ok,
                format!("{} times generator {j} ({mode:?})", a.basis[i].name),
            ));
        }
    }
    Ok(out)
}

/// Rank over `Q(T)` together with ranks at sample points that avoid every
/// denominator root; the maximum sample rank must match.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankOracle {
    pub exact: usize,
    pub samples: Vec<(String, usize)>,
}

impl RankOracle {
    pub fn agrees(&self) -> bool {
        self.samples.iter().all(|(_, r)| *r <= self.exact)
            && self.samples.iter().map(|(_, r)| *r).max() == Some(self.exact)
    }
}

pub fn rank_oracle(m: &[Vector], points: &[Rational]) -> RankOracle {
    let exact = rank(m);
    let samples = points
        .iter()
        .filter_map(|t| eval_matrix(m, t).map(|e| (fmt_rational(t), rank_rational(&e))))
        .collect();
    RankOracle { exact, samples }
}

/// Dimension of `ker c^N` recomputed on each graded piece over `Q`.
///
/// Homogeneous elements of total degree `D` form a finite `Q`-space
/// spanned by `T^n e_i` with `deg e_i + n |T| = D`; the operator maps it to
/// degree `D + N |c|`. Summing kernel dimensions over one `D` per residue
/// class modulo `|T|` gives the dimension over `Q(T)`. The lifted kernel
/// vectors are returned so callers can compare spans.
pub fn graded_kernel(a: &GradedAlgebra, c: &[PolyT], n: u32) -> Result<(usize, Subspace)> {
    let t = a.t_degree;
    if t <= 0 {
        return Err(Error::InvalidInput("graded pieces need a positive T degree".into()));
    }
    let dim = a.dim();
    let op = mat_pow(&a.mult_matrix(c), n);
    let shift = match a.homogeneous_degree(c)? {
        Some(d) => d * i64::from(n),
        None if n == 0 => 0,
        None => {
            // the zero operator kills everything
            return Ok((dim, Subspace::whole(dim)));
        }
    };
    let mut residues: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (i, b) in a.basis.iter().enumerate() {
        residues.entry(b.degree.rem_euclid(t)).or_default().push(i);
    }
    let mut total = 0;
    let mut lifted: Vec<Vector> = Vec::new();
    for (r, src) in &residues {
        let d = *r;
        let target = d + shift;
        // source coordinate j is T^{n_j} e_j with n_j = (d - deg e_j) / t
        let n_src: Vec<i64> = src.iter().map(|&j| (d - a.basis[j].degree).div_euclid(t)).collect();
        let tgt: Vec<usize> = (0..dim)
            .filter(|&i| (target - a.basis[i].degree).rem_euclid(t) == 0)
            .collect();
        let n_tgt: Vec<i64> = tgt.iter().map(|&i| (target - a.basis[i].degree) / t).collect();
        let mut q = vec![vec![FracT::zero(); src.len()]; tgt.len()];
        for (row, (&i, &mi)) in q.iter_mut().zip(tgt.iter().zip(&n_tgt)) {
            for (col, (&j, &nj)) in src.iter().zip(&n_src).enumerate() {
                let entry = &op[i][j];
                if entry.is_zero() {
                    continue;
                }
                let p = entry
                    .as_poly()
                    .ok_or_else(|| Error::Internal("operator entries must be polynomials".into()))?;
                let e = mi - nj;
                if e >= 0 {
                    row[col] = FracT::constant(p.coeff(e as usize));
                }
            }
        }
        // entries of the other target classes must vanish for homogeneity
        for (i, orow) in op.iter().enumerate() {
            if tgt.contains(&i) {
                continue;
            }
            if src.iter().any(|&j| !orow[j].is_zero()) {
                return Err(Error::InvalidInput("operator is not homogeneous".into()));
            }
        }
        let ker = kernel(&q, src.len());
        total += ker.len();
        for v in ker {
            let mut full = vec![FracT::zero(); dim];
            for ((&j, &nj), x) in src.iter().zip(&n_src).zip(&v) {
                if x.is_zero() {
                    continue;
                }
                let tp = if nj >= 0 {
                    FracT::from_poly(PolyT::monomial(x.initial(), nj as usize))
                } else {
                    FracT::new(
                        PolyT::constant(x.initial()),
                        PolyT::monomial(Rational::from_integer(1.into()), (-nj) as usize),
                    )
                };
                full[j] = tp;
            }
            lifted.push(full);
        }
    }
    Ok((total, Subspace::span(dim, &lifted)))
}

/// Everything the command-line front end prints about one class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainSummary {
    pub algebra: String,
    pub class: String,
    pub dims: Vec<usize>,
    pub stabilization_index: u32,
    pub e0_dim: usize,
    pub sh_rank: usize,
    pub ambient: usize,
}

pub fn chain_summary(a: &GradedAlgebra, class: &str) -> Result<ChainSummary> {
    let c = a.class(class)?;
    let chain = kernel_chain(a, c);
    let e0 = chain.last().unwrap().dim();
    Ok(ChainSummary {
        algebra: a.name.clone(),
        class: class.to_string(),
        dims: chain.iter().map(Subspace::dim).collect(),
        stabilization_index: chain.len() as u32 - 1,
        e0_dim: e0,
        sh_rank: a.dim() - e0,
        ambient: a.dim(),
    })
}

/// The vector of a named class as fractions.
pub fn class_vector(a: &GradedAlgebra, class: &str) -> Result<Vector> {
    Ok(vec_to_frac(a.class(class)?))
}

/// `true` when every entry of the matrix is zero.
pub fn is_zero_operator(a: &GradedAlgebra, c: &[PolyT]) -> bool {
    linalg::is_zero_matrix(&a.mult_matrix(c))
}

/// A kernel chain starts at zero, grows strictly and stays inside the ambient space.
pub fn strictly_grows_then_stops(dims: &[usize], ambient: usize) -> bool {
    dims.windows(2).all(|w| w[0] < w[1]) && dims.last().is_some_and(|&d| d <= ambient) && dims.first() == Some(&0)
}
