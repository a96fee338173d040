//! Checks shared by the property suite and the acceptance target. Each
//! returns a description of the first violation instead of panicking so
//! callers can report or assert as they prefer.

#![allow(dead_code)]

use std::collections::BTreeMap;

use cstar::bounds::{delta_at, orbit_bookkeeping_at};
use cstar::indices::{
    critical_times, csr_index_shortcut, index_at, index_via_coprime_counts,
    index_via_critical_walk, index_via_lattice_counts, index_via_weight_differences,
};
use cstar::manifold::{builtin_fixture, validate, FixedComponent, ManifoldData};
use cstar::numerics::{int, rat, w_index, Rational, Side, Slope};
use cstar::qalg::linalg::{identity, ini_rows, mat_mul, rank_rational};
use cstar::qalg::{matrix_kernel_chain, rank_oracle, FracT, Matrix, PolyT, Subspace};
use cstar::ssapprox::{approximate_e1, consistency_check};
use num_bigint::BigInt;
use num_traits::Zero;

pub type Check = Result<(), String>;

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

/// Zero, oddness, reflection, period shift and the linear sandwich of the
/// winding count at `x`.
pub fn winding_identities(x: &Rational, shift: i64) -> Check {
    let w = w_index(x);
    ensure(w_index(&int(0)).is_zero(), || "W(0) is not 0".into())?;
    ensure(w_index(&-x.clone()) == -w.clone(), || format!("W(-x) != -W(x) at {x}"))?;
    ensure(w_index(&(x + int(shift))) == &w + BigInt::from(2 * shift), || {
        format!("W(x + {shift}) != W(x) + {} at {x}", 2 * shift)
    })?;
    let odd = (&w % BigInt::from(2)) != BigInt::zero();
    ensure(odd != x.is_integer(), || format!("parity of W wrong at {x}"))?;
    let two_x = x * int(2);
    let wm1 = Rational::from_integer(w - 1);
    ensure(two_x >= wm1 && wm1 >= &two_x - int(2), || format!("2x >= W(x) - 1 >= 2x - 2 fails at {x}"))
}

/// `0+` and the positive slopes at, between and around every critical
/// time up to `up_to`; the counting formulas start from zero.
pub fn probe_slopes(m: &ManifoldData, up_to: &Rational) -> Vec<Slope> {
    let times: Vec<Rational> = critical_times(m, up_to).into_iter().map(|(t, _)| t).collect();
    let mut values: Vec<Rational> = times.windows(2).map(|w| (&w[0] + &w[1]) / int(2)).collect();
    values.extend(times.iter().cloned());
    values.push(up_to + rat(1, 7));
    let mut out = vec![Slope::above(int(0))];
    for v in values {
        for side in [Side::Below, Side::At, Side::Above] {
            if let Ok(s) = Slope::new(v.clone(), side) {
                out.push(s);
            }
        }
    }
    out
}

/// The direct index against the four counting formulas, and against the
/// conical closed form when a conical weight is declared.
pub fn index_forms_agree(m: &ManifoldData, c: &FixedComponent, up_to: &Rational) -> Check {
    for s in probe_slopes(m, up_to) {
        let direct = index_at(c, &s);
        let forms = [
            ("weight differences", index_via_weight_differences(c, &s)),
            ("lattice counts", index_via_lattice_counts(c, &s)),
            ("coprime counts", index_via_coprime_counts(c, &s)),
            ("critical walk", index_via_critical_walk(c, &s)),
        ];
        for (label, v) in forms {
            ensure(v == direct, || format!("{}: {label} gives {v}, direct {direct} at {s}", c.name))?;
        }
    }
    if let Some(s) = m.csr_weight {
        let s = u64::from(s);
        for i in 1..=3 * s {
            let v = csr_index_shortcut(m, c, i).map_err(|e| e.to_string())?;
            let direct = index_at(c, &Slope::above(rat(i as i64, s as i64)));
            ensure(v == direct, || format!("{}: conical form {v} vs {direct} at {i}/{s}+", c.name))?;
        }
    }
    Ok(())
}

pub fn index_forms_agree_all(m: &ManifoldData, up_to: &Rational) -> Check {
    m.components.iter().try_for_each(|c| index_forms_agree(m, c, up_to))
}

/// A mixed-weight component plus a minimum with positive weights of the
/// same total. `None` when the weights leave no room for such a minimum.
pub fn manifold_from_weights(weights: BTreeMap<i64, u64>, dim_c: u32) -> Option<ManifoldData> {
    let n: u64 = weights.values().sum();
    let mu: i64 = weights.iter().map(|(&k, &h)| k * h as i64).sum();
    if !weights.keys().any(|&k| k < 0) || mu < n as i64 || weights.contains_key(&0) {
        return None;
    }
    let mut min_w: BTreeMap<i64, u64> = BTreeMap::new();
    if n > 1 {
        *min_w.entry(1).or_default() += n - 1;
    }
    *min_w.entry(mu - (n as i64 - 1)).or_default() += 1;
    let comp = |name: &str, weights| FixedComponent {
        name: name.into(),
        dim_c,
        betti: vec![1; dim_c as usize + 1],
        weights,
        h_value: int(0),
        outer_weights: None,
    };
    Some(ManifoldData {
        name: "random".into(),
        dim_c_y: dim_c + n as u32,
        c1_zero: false,
        csr_weight: None,
        components: vec![comp("min", min_w), comp("mixed", weights)],
        edges: vec![],
        torsion_arrows: vec![],
        orbit_families: None,
        notes: vec![],
    })
}

pub fn random_weights_agree(m: &ManifoldData) -> Check {
    let report = validate(m);
    ensure(report.ok(), || format!("{:?}", report.failures().collect::<Vec<_>>()))?;
    index_forms_agree_all(m, &int(1))
}

pub fn poly(coeffs: &[i64]) -> PolyT {
    PolyT::from_coeffs(coeffs.iter().map(|&c| int(c)).collect())
}

pub fn frac(coeffs: &[i64]) -> FracT {
    FracT::from_poly(poly(coeffs))
}

/// Block-diagonal operator: nilpotent Jordan blocks of the given sizes and
/// invertible blocks `(a + T) I + N`, conjugated by elementary matrices
/// `I + p E_ij`.
pub fn block_operator(nil: &[usize], inv: &[(usize, i64)], moves: &[(usize, usize, Vec<i64>)]) -> Matrix {
    let n: usize = nil.iter().sum::<usize>() + inv.iter().map(|(b, _)| b).sum::<usize>();
    let mut a = vec![vec![FracT::zero(); n]; n];
    let mut at = 0;
    for &b in nil {
        for i in 0..b - 1 {
            a[at + i][at + i + 1] = FracT::one();
        }
        at += b;
    }
    for &(b, c) in inv {
        for i in 0..b {
            a[at + i][at + i] = frac(&[c, 1]);
            if i + 1 < b {
                a[at + i][at + i + 1] = FracT::one();
            }
        }
        at += b;
    }
    for (i, j, p) in moves {
        let (i, j) = (i % n, j % n);
        if i == j {
            continue;
        }
        let mut e = identity(n);
        e[i][j] = frac(p);
        let mut e_inv = identity(n);
        e_inv[i][j] = -&frac(p);
        a = mat_mul(&mat_mul(&e, &a), &e_inv);
    }
    a
}

/// Kernel dimensions of powers against the Jordan-block count
/// `sum_i min(N, b_i)`, which grows strictly until the largest block.
pub fn kernel_chain_matches_blocks(nil: &[usize], inv: &[(usize, i64)], moves: &[(usize, usize, Vec<i64>)]) -> Check {
    let a = block_operator(nil, inv, moves);
    let dims: Vec<usize> = matrix_kernel_chain(&a).iter().map(Subspace::dim).collect();
    let top = nil.iter().copied().max().unwrap_or(0);
    let expected: Vec<usize> = (0..=top).map(|k| nil.iter().map(|&b| b.min(k)).sum()).collect();
    ensure(dims == expected, || format!("blocks {nil:?}/{inv:?}: dims {dims:?}, expected {expected:?}"))?;
    ensure(dims.windows(2).all(|w| w[0] < w[1]), || format!("chain {dims:?} does not grow strictly"))
}

pub fn to_matrix(raw: &[Vec<Vec<i64>>]) -> Matrix {
    raw.iter().map(|row| row.iter().map(|p| frac(p)).collect()).collect()
}

pub fn initial_terms_preserve_rank(raw: &[Vec<Vec<i64>>]) -> Check {
    let rows = to_matrix(raw);
    let s = Subspace::span(rows[0].len(), &rows);
    let (ini, _) = ini_rows(&s).map_err(|e| e.to_string())?;
    let r = rank_rational(&ini);
    ensure(ini.len() == s.dim() && r == s.dim(), || {
        format!("initial terms have rank {r} for a subspace of dimension {}", s.dim())
    })
}

pub fn rank_survives_evaluation(raw: &[Vec<Vec<i64>>], points: &[Rational]) -> Check {
    let r = rank_oracle(&to_matrix(raw), points);
    ensure(r.agrees(), || format!("{r:?}"))
}

/// Orbit bookkeeping on one fixture: created minus killed classes equals
/// minus delta above each critical time, and the approximate page-one
/// columns pass the balance, parity and reconstruction checks.
pub fn orbit_bookkeeping(name: &str) -> Check {
    let m = builtin_fixture(name).map_err(|e| e.to_string())?;
    if !m.c1_zero {
        return Ok(());
    }
    for (p, _) in critical_times(&m, &int(2)) {
        let above = delta_at(&m, &Slope::above(p.clone()));
        for row in orbit_bookkeeping_at(&m, &p, None).map_err(|e| e.to_string())? {
            ensure(row.delta_above == above[&row.degree], || format!("{name} at {p}: delta mismatch"))?;
            ensure(row.drops >= 0 && row.peak >= row.delta_above.max(0), || {
                format!("{name} at {p}: drops {} peak {}", row.drops, row.peak)
            })?;
            for r in 0..=row.r_upper.max(0) {
                let (odd, even) = row.ranks_for(r);
                ensure(even - odd == -row.delta_above, || {
                    format!("{name} at {p} degree {}: {even} - {odd} != -{}", row.degree, row.delta_above)
                })?;
            }
        }
    }
    let e = approximate_e1(&m, &int(1)).map_err(|e| e.to_string())?;
    let bad: Vec<_> = consistency_check(&e, &m).into_iter().filter(|f| !f.passed).collect();
    ensure(bad.is_empty(), || format!("{name}: {bad:?}"))
}
