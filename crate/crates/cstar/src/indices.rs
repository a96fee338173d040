//! Slope-dependent indices of fixed components and the independent
//! formulas used to cross-check them.
//!
//! [`index_at`] is the primary definition; every other route to the same
//! number (sums over scaled lattice counts, the critical-time recursion,
//! the closed form for conical resolutions) lives here so the test suite
//! can compare them against each other.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::manifold::{FixedComponent, ManifoldData};
use crate::numerics::{
    c_count_weighted, divisors, fmt_rational, fractions_with_denominators, int, n_count_weighted,
    rat, w_at, Rational, Side, Slope,
};

/// Degree to rank, zero entries omitted.
pub type GradedRanks = BTreeMap<i64, u64>;

pub fn total_rank(r: &GradedRanks) -> u64 {
    r.values().sum()
}

pub fn rank_in(r: &GradedRanks, d: i64) -> u64 {
    r.get(&d).copied().unwrap_or(0)
}

/// The common weight sum of all components.
pub fn maslov(m: &ManifoldData) -> Result<i64> {
    let sums: BTreeSet<i64> = m.components.iter().map(FixedComponent::maslov_sum).collect();
    match sums.len() {
        1 => Ok(*sums.iter().next().unwrap()),
        0 => Err(Error::InvalidInput("no components".into())),
        _ => Err(Error::Inconsistent(format!("weight sums differ across components: {sums:?}"))),
    }
}

/// Twice the number of negative weights.
pub fn morse_bott_index(c: &FixedComponent) -> i64 {
    2 * c
        .weights
        .iter()
        .filter(|(&k, _)| k < 0)
        .map(|(_, &h)| h as i64)
        .sum::<i64>()
}

fn shifted_sum<'a>(
    comps: impl Iterator<Item = (&'a FixedComponent, i64)>,
) -> GradedRanks {
    let mut out = GradedRanks::new();
    for (c, shift) in comps {
        for (j, &b) in c.betti.iter().enumerate() {
            if b > 0 {
                *out.entry(shift + 2 * j as i64).or_insert(0) += b;
            }
        }
    }
    out
}

/// Ranks of the cohomology of the whole space, assembled from the
/// components shifted by their Morse–Bott indices.
pub fn cohomology_of_y(m: &ManifoldData) -> GradedRanks {
    shifted_sum(m.components.iter().map(|c| (c, morse_bott_index(c))))
}

/// Sum over nonzero weights, with multiplicity, of `1 - W(s k)`.
pub fn index_at(c: &FixedComponent, s: &Slope) -> i64 {
    let mut total = BigInt::zero();
    for (&k, &h) in &c.weights {
        total += (BigInt::from(1) - w_at(s, k)) * BigInt::from(h);
    }
    total.to_i64().expect("index exceeds i64")
}

/// Ranks of Floer cohomology at slope `s`: each component's cohomology
/// shifted by its index at `s`.
pub fn hf_ranks(m: &ManifoldData, s: &Slope) -> GradedRanks {
    shifted_sum(m.components.iter().map(|c| (c, index_at(c, s))))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IndexTable {
    pub slopes: Vec<Slope>,
    /// Component name and its indices, in file order.
    pub rows: Vec<(String, Vec<i64>)>,
}

impl IndexTable {
    pub fn get(&self, component: &str, slope: &Slope) -> Option<i64> {
        let j = self.slopes.iter().position(|s| s == slope)?;
        let row = self.rows.iter().find(|(n, _)| n == component)?;
        row.1.get(j).copied()
    }

    /// Components as columns, one line per slope.
    pub fn to_markdown(&self) -> String {
        let mut out = String::from("| slope |");
        for (name, _) in &self.rows {
            let _ = write!(out, " {name} |");
        }
        out.push_str("\n|---|");
        for _ in &self.rows {
            out.push_str("---:|");
        }
        out.push('\n');
        for (j, s) in self.slopes.iter().enumerate() {
            let _ = write!(out, "| {s} |");
            for (_, vals) in &self.rows {
                let _ = write!(out, " {} |", vals[j]);
            }
            out.push('\n');
        }
        out
    }

    /// Components as rows, slopes as columns.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("component");
        for s in &self.slopes {
            out.push(',');
            out.push_str(&crate::csv_field(&s.to_string()));
        }
        out.push('\n');
        for (name, vals) in &self.rows {
            out.push_str(&crate::csv_field(name));
            for v in vals {
                let _ = write!(out, ",{v}");
            }
            out.push('\n');
        }
        out
    }
}

pub fn index_table(m: &ManifoldData, slopes: &[Slope]) -> IndexTable {
    IndexTable {
        slopes: slopes.to_vec(),
        rows: m
            .components
            .iter()
            .map(|c| (c.name.clone(), slopes.iter().map(|s| index_at(c, s)).collect()))
            .collect(),
    }
}

/// Reciprocal of the largest absolute weight: below this slope the index
/// equals the Morse–Bott index.
pub fn lambda_alpha(c: &FixedComponent) -> Result<Rational> {
    let top = c
        .weights
        .keys()
        .map(|k| k.abs())
        .max()
        .ok_or_else(|| Error::InvalidInput(format!("component {} has no nonzero weights", c.name)))?;
    Ok(rat(1, top))
}

fn abs_weights(c: &FixedComponent) -> BTreeSet<u64> {
    c.weights.keys().map(|k| k.unsigned_abs()).collect()
}

/// Reduced `k/m <= up_to` such that some weight is divisible by `m`, with
/// the components for which it is critical.
pub fn critical_times(m: &ManifoldData, up_to: &Rational) -> Vec<(Rational, BTreeSet<String>)> {
    let mut out: BTreeMap<Rational, BTreeSet<String>> = BTreeMap::new();
    for c in &m.components {
        let dens: BTreeSet<u64> = abs_weights(c).into_iter().flat_map(divisors).collect();
        for t in fractions_with_denominators(dens, up_to) {
            out.entry(t).or_default().insert(c.name.clone());
        }
    }
    out.into_iter().collect()
}

/// Critical times of a single component up to `up_to`.
pub fn component_critical_times(c: &FixedComponent, up_to: &Rational) -> Vec<Rational> {
    let dens: BTreeSet<u64> = abs_weights(c).into_iter().flat_map(divisors).collect();
    fractions_with_denominators(dens, up_to)
}

/// Reduced `k/m <= up_to` with `m` dividing an outer weight.
pub fn outer_periods(m: &ManifoldData, up_to: &Rational) -> Vec<Rational> {
    let dens: BTreeSet<u64> = m
        .components
        .iter()
        .flat_map(|c| c.outer())
        .map(|k| k.unsigned_abs())
        .flat_map(divisors)
        .collect();
    fractions_with_denominators(dens, up_to)
}

/// `h_m - h_{-m}`.
pub fn f_m(c: &FixedComponent, m: i64) -> i64 {
    c.h(m) as i64 - c.h(-m) as i64
}

/// `sum over b >= 1 of (h_{mb} - h_{-mb})`.
pub fn f_m_alpha(c: &FixedComponent, m: u64) -> i64 {
    let m = m as i64;
    let top = c.weights.keys().map(|k| k.abs()).max().unwrap_or(0);
    (1..=top / m.max(1)).map(|b| f_m(c, m * b)).sum()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompatibilityReport {
    pub compatible: bool,
    /// Per component: distinct absolute weights in decreasing order and
    /// the running sums of `h_k - h_{-k}` along them.
    pub partial_sums: Vec<(String, Vec<(u64, i64)>)>,
}

fn partial_sums(c: &FixedComponent) -> Vec<(u64, i64)> {
    let mut acc = 0;
    abs_weights(c)
        .into_iter()
        .rev()
        .map(|k| {
            acc += f_m(c, k as i64);
            (k, acc)
        })
        .collect()
}

/// True when every running sum of `h_k - h_{-k}`, taken over decreasing
/// absolute weight, is non-negative at every component.
pub fn compatibly_weighted(m: &ManifoldData) -> CompatibilityReport {
    let partial: Vec<(String, Vec<(u64, i64)>)> = m
        .components
        .iter()
        .map(|c| (c.name.clone(), partial_sums(c)))
        .collect();
    let compatible = partial.iter().all(|(_, v)| v.iter().all(|&(_, d)| d >= 0));
    CompatibilityReport {
        compatible,
        partial_sums: partial,
    }
}

/// Index change across `[p/m, (p+1)/m]` computed four ways.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WindowJump {
    pub m: u64,
    pub p: u64,
    /// Index at `p/m` (the Morse–Bott index when `p = 0`) and at `(p+1)/m`.
    pub before: i64,
    pub after: i64,
    /// `before - after` from direct evaluation.
    pub drop: i64,
    /// Distinct absolute weights `k_j` (decreasing) with their double counts `K_j`.
    pub k_counts: Vec<(u64, u64)>,
    pub drop_from_counts: i64,
    /// The same sum regrouped along the running sums of the weight differences.
    pub drop_from_partial_sums: i64,
    /// Coprime double counts `C_d` for each divisor `d` of a weight.
    pub coprime_counts: Vec<(u64, u64)>,
    pub drop_from_coprime_counts: i64,
}

impl WindowJump {
    /// Index increase across the window.
    pub fn jump(&self) -> i64 {
        -self.drop
    }

    /// Number of fractions with reduced denominator `d` in the window,
    /// boundary fractions counting one half.
    pub fn fraction_count(&self, d: u64) -> Rational {
        let c = self
            .coprime_counts
            .iter()
            .find(|(x, _)| *x == d)
            .map(|(_, c)| *c)
            .unwrap_or(0);
        rat(c as i64, 2)
    }
}

fn is_critical_or_early(c: &FixedComponent, t: &Rational) -> bool {
    if t.is_zero() {
        return true;
    }
    let lam = lambda_alpha(c).expect("weights present");
    if t < &lam {
        return true;
    }
    let den = t.denom().to_u64().unwrap_or(0);
    den != 0 && abs_weights(c).iter().any(|k| k % den == 0)
}

pub fn window_jump(c: &FixedComponent, m: u64, p: u64) -> Result<WindowJump> {
    if m == 0 {
        return Err(Error::InvalidInput("window denominator must be positive".into()));
    }
    let lo = rat(p as i64, m as i64);
    let hi = rat(p as i64 + 1, m as i64);
    for t in [&lo, &hi] {
        if !is_critical_or_early(c, t) {
            return Err(Error::InvalidInput(format!(
                "{} is not a critical time of {}",
                fmt_rational(t),
                c.name
            )));
        }
    }
    let mu_alpha = morse_bott_index(c);
    let before = if p == 0 { mu_alpha } else { index_at(c, &Slope::at(lo.clone())) };
    let after = index_at(c, &Slope::at(hi.clone()));
    let drop = before - after;

    // the lower end is open when it sits at zero
    let wlo = u8::from(p > 0);
    let ks: Vec<u64> = abs_weights(c).into_iter().rev().collect();
    let k_counts: Vec<(u64, u64)> = ks
        .iter()
        .map(|&k| (k, n_count_weighted(k, &lo, &hi, wlo, 1).to_u64().unwrap()))
        .collect();
    let drop_from_counts: i64 = k_counts
        .iter()
        .map(|&(k, kk)| kk as i64 * f_m(c, k as i64))
        .sum();

    let deltas = partial_sums(c);
    let r = k_counts.len();
    let mut drop_from_partial_sums = 0i64;
    if r > 0 {
        drop_from_partial_sums += k_counts[r - 1].1 as i64 * deltas[r - 1].1;
        for j in 0..r - 1 {
            let diff = k_counts[j].1 as i64 - k_counts[j + 1].1 as i64;
            drop_from_partial_sums += diff * deltas[j].1;
        }
    }

    let ds: BTreeSet<u64> = ks.iter().copied().flat_map(divisors).collect();
    let coprime_counts: Vec<(u64, u64)> = ds
        .iter()
        .map(|&d| (d, c_count_weighted(d, &lo, &hi, wlo, 1).to_u64().unwrap()))
        .collect();
    let drop_from_coprime_counts: i64 = coprime_counts
        .iter()
        .map(|&(d, cc)| cc as i64 * f_m_alpha(c, d))
        .sum();

    let out = WindowJump {
        m,
        p,
        before,
        after,
        drop,
        k_counts,
        drop_from_counts,
        drop_from_partial_sums,
        coprime_counts,
        drop_from_coprime_counts,
    };
    if [drop_from_counts, drop_from_partial_sums, drop_from_coprime_counts]
        .iter()
        .any(|&x| x != drop)
    {
        return Err(Error::Internal(format!("window jump formulas disagree: {out:?}")));
    }
    Ok(out)
}

/// Closed form for `(i/s)+` on a conical resolution of weight `s`,
/// checked against [`index_at`].
pub fn csr_index_shortcut(m: &ManifoldData, c: &FixedComponent, i: u64) -> Result<i64> {
    let s = m
        .csr_weight
        .ok_or_else(|| Error::InvalidInput("no conical weight declared".into()))? as i64;
    if i == 0 {
        return Err(Error::InvalidInput("i must be positive".into()));
    }
    let i = i as i64;
    let slope = Slope::above(rat(i, s));
    let low: i64 = (1..s)
        .map(|k| (1 - w_at(&slope, k).to_i64().unwrap()) * c.h(k) as i64)
        .sum();
    let beyond: i64 = c
        .weights
        .iter()
        .filter(|(&k, _)| k > s)
        .map(|(_, &h)| h as i64)
        .sum();
    let dim_r = 2 * i64::from(c.dim_c);
    let value = low - i * dim_r - (2 * i - 2) * beyond;
    let direct = index_at(c, &slope);
    if value != direct {
        return Err(Error::Internal(format!(
            "closed form {value} differs from direct index {direct} for {} at {}",
            c.name, slope
        )));
    }
    let special = match i {
        1 => Some(-dim_r),
        2 => {
            let half = if s % 2 == 0 { c.h(s / 2) as i64 } else { 0 };
            Some(-dim_r - i64::from(m.dim_c_y) - half)
        }
        _ => None,
    };
    if let Some(v) = special {
        if v != value {
            return Err(Error::Internal(format!(
                "special case {v} differs from closed form {value} for {}",
                c.name
            )));
        }
    }
    Ok(value)
}

/// No weight `k` with `p k` a nonzero integer.
pub fn p_stable(c: &FixedComponent, p: &Rational) -> bool {
    !c.weights.keys().any(|&k| {
        let x = p * int(k);
        x.is_integer() && !x.is_zero()
    })
}

pub fn m_minimal(c: &FixedComponent, m: i64) -> bool {
    c.m_minimal(m)
}

/// Index from the running difference with the Morse–Bott index:
/// `mu_alpha - sum over k > 0 of (W(s k) - 1)(h_k - h_{-k})`.
pub fn index_via_weight_differences(c: &FixedComponent, s: &Slope) -> i64 {
    let ks = abs_weights(c);
    let sub: i64 = ks
        .into_iter()
        .map(|k| (w_at(s, k as i64).to_i64().unwrap() - 1) * f_m(c, k as i64))
        .sum();
    morse_bott_index(c) - sub
}

fn side_weight(s: &Slope) -> u8 {
    match s.side() {
        Side::Below => 0,
        Side::At => 1,
        Side::Above => 2,
    }
}

/// Index from lattice counts: `mu_alpha - sum_m N_m(0, s] f_m`.
pub fn index_via_lattice_counts(c: &FixedComponent, s: &Slope) -> i64 {
    let zero = Rational::zero();
    let w = side_weight(s);
    let sub: i64 = abs_weights(c)
        .into_iter()
        .map(|k| {
            n_count_weighted(k, &zero, s.value(), 0, w).to_i64().unwrap() * f_m(c, k as i64)
        })
        .sum();
    morse_bott_index(c) - sub
}

/// Index from coprime lattice counts: `mu_alpha - sum_m C_m(0, s] F_m`.
pub fn index_via_coprime_counts(c: &FixedComponent, s: &Slope) -> i64 {
    let zero = Rational::zero();
    let w = side_weight(s);
    let ds: BTreeSet<u64> = abs_weights(c).into_iter().flat_map(divisors).collect();
    let sub: i64 = ds
        .into_iter()
        .map(|d| c_count_weighted(d, &zero, s.value(), 0, w).to_i64().unwrap() * f_m_alpha(c, d))
        .sum();
    morse_bott_index(c) - sub
}

/// Index by walking the critical times: the index is constant between
/// them and drops by `F_m` on each side of a critical time `k/m`.
pub fn index_via_critical_walk(c: &FixedComponent, s: &Slope) -> i64 {
    let mut mu = morse_bott_index(c);
    for t in component_critical_times(c, s.value()) {
        let den = t.denom().to_u64().unwrap();
        let jump = f_m_alpha(c, den);
        if &t < s.value() {
            mu -= 2 * jump;
        } else {
            mu -= match s.side() {
                Side::Below => 0,
                Side::At => jump,
                Side::Above => 2 * jump,
            };
        }
    }
    mu
}

/// Upper bound `2 dim Y - dim F - 2 lambda mu`, exact.
pub fn dimension_bound(m: &ManifoldData, c: &FixedComponent, lambda: &Rational, mu: i64) -> Rational {
    int(2 * i64::from(m.dim_c_y) - i64::from(c.dim_c)) - lambda * int(2 * mu)
}

pub fn rational_floor_i64(r: &BigRational) -> i64 {
    r.floor().to_integer().to_i64().expect("small rational")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::manifold::builtin_fixture;
    use crate::numerics::parse_slope_list;

    fn comp<'a>(m: &'a ManifoldData, n: &str) -> &'a FixedComponent {
        m.component(n).unwrap()
    }

    #[test]
    fn maslov_examples() {
        assert_eq!(maslov(&builtin_fixture("s32").unwrap()).unwrap(), 4);
        assert_eq!(maslov(&builtin_fixture("a2_a").unwrap()).unwrap(), 2);
        assert_eq!(maslov(&builtin_fixture("a1_phi2").unwrap()).unwrap(), 3);
    }

    #[test]
    fn morse_bott_examples() {
        let m = builtin_fixture("s32").unwrap();
        assert_eq!(morse_bott_index(comp(&m, "F_min")), 0);
        assert_eq!(morse_bott_index(comp(&m, "F_p")), 4);
        assert_eq!(morse_bott_index(comp(&m, "F_j^3")), 2);
    }

    #[test]
    fn cohomology_examples() {
        let m = builtin_fixture("s32").unwrap();
        assert_eq!(cohomology_of_y(&m), GradedRanks::from([(0, 1), (2, 4), (4, 5)]));
        let b = builtin_fixture("a2_b").unwrap();
        assert_eq!(cohomology_of_y(&b), GradedRanks::from([(0, 1), (2, 2)]));
    }

    #[test]
    fn index_examples() {
        let m = builtin_fixture("s32").unwrap();
        assert_eq!(index_at(comp(&m, "F_p"), &"1/5+".parse().unwrap()), 2);
        assert_eq!(index_at(comp(&m, "F_min"), &"1+".parse().unwrap()), -8);
        let a = builtin_fixture("a2_a").unwrap();
        let s: Slope = "1/3+".parse().unwrap();
        assert_eq!(index_at(comp(&a, "p"), &s), 0);
        assert_eq!(index_at(comp(&a, "p1"), &s), 0);
        assert_eq!(hf_ranks(&m, &s), GradedRanks::from([(0, 8), (2, 2)]));
        for c in &m.components {
            assert_eq!(index_at(c, &Slope::base()), morse_bott_index(c));
        }
    }

    #[test]
    fn lambda_alpha_examples() {
        let m = builtin_fixture("s32").unwrap();
        assert_eq!(lambda_alpha(comp(&m, "F_p")).unwrap(), rat(1, 5));
        let phi1 = builtin_fixture("a1_phi1").unwrap();
        assert_eq!(lambda_alpha(comp(&phi1, "p2")).unwrap(), int(1));
        let b = builtin_fixture("a2_b").unwrap();
        assert_eq!(lambda_alpha(comp(&b, "S1")).unwrap(), int(1));
    }

    #[test]
    fn critical_and_outer_examples() {
        let m = builtin_fixture("s32").unwrap();
        let times: Vec<Rational> = critical_times(&m, &int(1)).into_iter().map(|(t, _)| t).collect();
        assert_eq!(
            times,
            vec![rat(1, 5), rat(1, 3), rat(2, 5), rat(3, 5), rat(2, 3), rat(4, 5), int(1)]
        );
        let a3 = builtin_fixture("a3_ex59").unwrap();
        let times: Vec<Rational> = critical_times(&a3, &int(1)).into_iter().map(|(t, _)| t).collect();
        assert_eq!(times, vec![rat(1, 3), rat(1, 2), rat(2, 3), int(1)]);
        assert!(critical_times(&m, &rat(1, 6)).is_empty());

        let a = builtin_fixture("a2_a").unwrap();
        assert_eq!(outer_periods(&a, &int(1)), vec![rat(1, 3), rat(2, 3), int(1)]);
        let phi2 = builtin_fixture("a1_phi2").unwrap();
        assert_eq!(
            outer_periods(&phi2, &int(1)),
            vec![rat(1, 5), rat(2, 5), rat(1, 2), rat(3, 5), rat(4, 5), int(1)]
        );
        assert!(outer_periods(&a, &rat(1, 10)).is_empty());
    }

    #[test]
    fn f_m_examples() {
        let m = builtin_fixture("synth_515").unwrap();
        let a = comp(&m, "alpha");
        assert_eq!(f_m_alpha(a, 6), -1);
        assert_eq!(f_m_alpha(a, 3), -1);
        assert_eq!(f_m_alpha(a, 7), 1);
        assert_eq!(f_m_alpha(a, 10), -3);
        assert_eq!(f_m_alpha(a, 5), -3);
        assert_eq!(f_m_alpha(a, 11), 3);
        assert_eq!(f_m_alpha(a, 12), 0);
    }

    #[test]
    fn compatibility_examples() {
        assert!(compatibly_weighted(&builtin_fixture("s32").unwrap()).compatible);
        assert!(compatibly_weighted(&builtin_fixture("a2_a").unwrap()).compatible);
        let synth = compatibly_weighted(&builtin_fixture("synth_515").unwrap());
        assert!(synth.compatible);
        let alpha = &synth.partial_sums.iter().find(|(n, _)| n == "alpha").unwrap().1;
        assert_eq!(alpha, &vec![(11, 3), (10, 0), (7, 1), (6, 0)]);
    }

    #[test]
    fn window_jump_synthetic() {
        let m = builtin_fixture("synth_515").unwrap();
        let j = window_jump(comp(&m, "alpha"), 7, 2).unwrap();
        assert_eq!(j.before, 1);
        assert_eq!(j.after, 7);
        assert_eq!(j.jump(), 6);
        for (d, c) in [(3, 1), (5, 1), (6, 0), (7, 1), (10, 1), (11, 1)] {
            assert_eq!(j.fraction_count(d), int(c), "denominator {d}");
        }
    }

    #[test]
    fn window_jump_full_rotation() {
        let a = builtin_fixture("a2_a").unwrap();
        let p1 = comp(&a, "p1");
        let j = window_jump(p1, 1, 0).unwrap();
        assert_eq!(j.before, 2);
        // index just below 1 from the full-rotation formula
        let mu = maslov(&a).unwrap();
        let hp: i64 = p1.weights.iter().filter(|(&k, _)| k > 0).map(|(_, &h)| h as i64).sum();
        let hm: i64 = p1.weights.iter().filter(|(&k, _)| k < 0).map(|(_, &h)| h as i64).sum();
        let below = morse_bott_index(p1) - 2 * mu + 2 * (hp - hm);
        assert_eq!(below, -2);
        assert_eq!(index_at(p1, &"1-".parse().unwrap()), below);
        assert_eq!(j.after, below - f_m_alpha(p1, 1));
        // 1/4 lies past 1/5 and no weight of F_p is divisible by 4
        let s = builtin_fixture("s32").unwrap();
        let e = window_jump(comp(&s, "F_p"), 4, 0).unwrap_err();
        assert!(e.to_string().contains("critical"));
        // everything below 1 is early for a weight-one component
        assert_eq!(window_jump(comp(&s, "F_min"), 2, 0).unwrap().drop, 0);
    }

    #[test]
    fn csr_shortcut_examples() {
        let m = builtin_fixture("s32").unwrap();
        for c in &m.components {
            assert_eq!(csr_index_shortcut(&m, c, 1).unwrap(), 0);
        }
        assert_eq!(csr_index_shortcut(&m, comp(&m, "F_min"), 2).unwrap(), -8);
        assert_eq!(csr_index_shortcut(&m, comp(&m, "F_j^3"), 2).unwrap(), -6);
        let synth = builtin_fixture("synth_515").unwrap();
        assert!(csr_index_shortcut(&synth, comp(&synth, "alpha"), 1).is_err());
    }

    #[test]
    fn stability_examples() {
        let m = builtin_fixture("s32").unwrap();
        assert!(!p_stable(comp(&m, "F_p"), &rat(1, 5)));
        assert!(p_stable(comp(&m, "F_big"), &rat(1, 5)));
        let b = builtin_fixture("a2_b").unwrap();
        assert!(p_stable(comp(&b, "S1"), &rat(1, 2)));
        assert!(!p_stable(comp(&b, "p2"), &rat(1, 2)));
        let a4 = builtin_fixture("a4_mckay").unwrap();
        for t in &a4.torsion_arrows {
            assert!(m_minimal(comp(&a4, &t.at), t.weight));
        }
    }

    #[test]
    fn crosscheck_paths_agree_on_fixtures() {
        for name in crate::manifold::fixture_names() {
            let m = builtin_fixture(name).unwrap();
            let mut slopes = parse_slope_list("0+,1/7,1/5-,1/5,1/5+,1/3,1/2+,2/3-,1,1+,3/2,2+,7/3").unwrap();
            for (t, _) in critical_times(&m, &int(2)) {
                for side in [Side::Below, Side::At, Side::Above] {
                    slopes.push(Slope::new(t.clone(), side).unwrap());
                }
            }
            for c in &m.components {
                for s in &slopes {
                    let d = index_at(c, s);
                    assert_eq!(index_via_weight_differences(c, s), d, "{name} {} {s}", c.name);
                    assert_eq!(index_via_lattice_counts(c, s), d, "{name} {} {s}", c.name);
                    assert_eq!(index_via_coprime_counts(c, s), d, "{name} {} {s}", c.name);
                    assert_eq!(index_via_critical_walk(c, s), d, "{name} {} {s}", c.name);
                }
            }
        }
    }

    #[test]
    fn example_sequences() {
        let m = builtin_fixture("a3_ex59").unwrap();
        let at = parse_slope_list("1/3,1/2,2/3,1").unwrap();
        let alpha: Vec<i64> = at.iter().map(|s| index_at(comp(&m, "F_alpha"), s)).collect();
        let gamma: Vec<i64> = at.iter().map(|s| index_at(comp(&m, "F_gamma"), s)).collect();
        assert_eq!(alpha, vec![1, 1, 1, 0]);
        assert_eq!(gamma, vec![2, 1, 0, 0]);
        assert_eq!(rational_floor_i64(&rat(-1, 2)), -1);
    }
}
