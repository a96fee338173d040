//! Page-one approximation of the slope spectral sequence, inferred from
//! Floer rank vectors alone.
//!
//! Between consecutive sample slopes, every class that drops out of degree
//! `d` needs a generator in degree `d - 1` to kill it and every new class in
//! degree `d` needs a generator in degree `d`. Beyond that minimum, a column
//! may carry `r` extra cancelling pairs in degrees `(d - 1, d)`, bounded by
//! the classes present on both sides.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use num_traits::Zero;
use serde::Serialize;

use crate::bounds::range_text;
use crate::error::{Error, Result};
use crate::indices::{cohomology_of_y, critical_times, hf_ranks, rank_in, GradedRanks};
use crate::manifold::{Finding, ManifoldData};
use crate::numerics::{Rational, Slope};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct E1Column {
    pub slope: Slope,
    /// Floer ranks at this slope.
    pub hf: GradedRanks,
    /// Degree to `(min, max)` rank.
    pub entries: BTreeMap<i64, (u64, u64)>,
    /// Even degree `d` to the largest number of extra pairs in `(d - 1, d)`.
    pub ambiguity: BTreeMap<i64, u64>,
}

impl E1Column {
    pub fn min(&self, d: i64) -> u64 {
        self.entries.get(&d).map_or(0, |e| e.0)
    }

    pub fn max(&self, d: i64) -> u64 {
        self.entries.get(&d).map_or(0, |e| e.1)
    }

    pub fn ambiguity_at(&self, d: i64) -> u64 {
        self.ambiguity.get(&d).copied().unwrap_or(0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct E1Approx {
    /// Column zero is the cohomology of the space at `0+`.
    pub columns: Vec<E1Column>,
}

fn orbit_cap(m: &ManifoldData, t: &Rational) -> Option<u64> {
    let fams = m.orbit_families.as_ref()?;
    let at: Vec<u64> = fams.iter().filter(|f| &f.period == t).map(|f| f.betti_total).collect();
    (!at.is_empty()).then(|| at.iter().sum())
}

fn column(prev: &GradedRanks, cur: &GradedRanks, slope: Slope, cap: Option<u64>) -> E1Column {
    let degs: BTreeSet<i64> = prev.keys().chain(cur.keys()).copied().collect();
    let mut mins: BTreeMap<i64, u64> = BTreeMap::new();
    for &d in &degs {
        let (a, b) = (rank_in(prev, d), rank_in(cur, d));
        if a > b {
            *mins.entry(d - 1).or_insert(0) += a - b;
        } else if b > a {
            *mins.entry(d).or_insert(0) += b - a;
        }
    }
    let min_total: u64 = mins.values().sum();
    let mut ambiguity: BTreeMap<i64, u64> = BTreeMap::new();
    for &d in &degs {
        let mut r = rank_in(prev, d).min(rank_in(cur, d));
        if let Some(c) = cap {
            r = r.min(c.saturating_sub(min_total) / 2);
        }
        if r > 0 {
            ambiguity.insert(d, r);
        }
    }
    let mut entries: BTreeMap<i64, (u64, u64)> = BTreeMap::new();
    let keys: BTreeSet<i64> = mins
        .keys()
        .copied()
        .chain(ambiguity.keys().flat_map(|&d| [d, d - 1]))
        .collect();
    for d in keys {
        let lo = mins.get(&d).copied().unwrap_or(0);
        let hi = lo
            + ambiguity.get(&d).copied().unwrap_or(0)
            + ambiguity.get(&(d + 1)).copied().unwrap_or(0);
        if hi > 0 {
            entries.insert(d, (lo, hi));
        }
    }
    E1Column {
        slope,
        hf: cur.clone(),
        entries,
        ambiguity,
    }
}

pub fn approximate_e1(m: &ManifoldData, up_to: &Rational) -> Result<E1Approx> {
    if !m.c1_zero {
        return Err(Error::InvalidInput("needs a vanishing first Chern class".into()));
    }
    if up_to < &Rational::zero() {
        return Err(Error::InvalidInput("the slope range must be non-negative".into()));
    }
    let h = cohomology_of_y(m);
    let mut columns = vec![E1Column {
        slope: Slope::base(),
        hf: h.clone(),
        entries: h.iter().map(|(&d, &b)| (d, (b, b))).collect(),
        ambiguity: BTreeMap::new(),
    }];
    let mut prev = h;
    for (t, _) in critical_times(m, up_to) {
        let s = Slope::above(t.clone());
        let cur = hf_ranks(m, &s);
        columns.push(column(&prev, &cur, s, orbit_cap(m, &t)));
        prev = cur;
    }
    Ok(E1Approx { columns })
}

fn finding(rule: &str, passed: bool, detail: String) -> Finding {
    Finding::new(rule, passed, detail)
}

/// Checks the minimal columns against freshly computed Floer ranks: the
/// per-degree balance, odd/even totals and prefix reconstruction.
pub fn consistency_check(e: &E1Approx, m: &ManifoldData) -> Vec<Finding> {
    let mut out = Vec::new();
    let Some(first) = e.columns.first() else {
        out.push(finding("columns", false, "no columns".into()));
        return out;
    };
    let h = cohomology_of_y(m);
    let base_ok = first.entries.iter().all(|(&d, &(lo, hi))| lo == hi && lo == rank_in(&h, d))
        && h.iter().all(|(&d, &b)| first.min(d) == b);
    out.push(finding("base_column", base_ok, format!("column {} equals H(Y)", first.slope)));

    let mut recon: BTreeMap<i64, i64> = h.iter().map(|(&d, &b)| (d, b as i64)).collect();
    let mut prev = h;
    for col in &e.columns[1..] {
        let cur = hf_ranks(m, &col.slope);
        let degs: BTreeSet<i64> = prev
            .keys()
            .chain(cur.keys())
            .chain(col.entries.keys())
            .flat_map(|&d| [d, d + 1])
            .filter(|d| d % 2 == 0)
            .collect();
        let mut balance = true;
        for &d in &degs {
            let lhs = col.min(d) as i64 - col.min(d - 1) as i64;
            let rhs = rank_in(&cur, d) as i64 - rank_in(&prev, d) as i64;
            if lhs != rhs {
                balance = false;
                out.push(finding(
                    "degree_balance",
                    false,
                    format!("column {} degree {d}: {lhs} vs {rhs}", col.slope),
                ));
            }
            *recon.entry(d).or_insert(0) += lhs;
        }
        if balance {
            out.push(finding("degree_balance", true, format!("column {}", col.slope)));
        }
        let odd: u64 = col.entries.iter().filter(|(d, _)| *d % 2 != 0).map(|(_, e)| e.0).sum();
        let even: u64 = col.entries.iter().filter(|(d, _)| *d % 2 == 0).map(|(_, e)| e.0).sum();
        out.push(finding(
            "odd_even_totals",
            odd == even,
            format!("column {}: odd {odd}, even {even}", col.slope),
        ));
        let recon_ok = recon.iter().all(|(&d, &v)| v == rank_in(&cur, d) as i64)
            && cur.iter().all(|(&d, &b)| recon.get(&d).copied().unwrap_or(0) == b as i64);
        out.push(finding(
            "prefix_reconstruction",
            recon_ok,
            format!("columns up to {} rebuild the Floer ranks", col.slope),
        ));
        let ordered = col.entries.values().all(|&(lo, hi)| lo <= hi);
        out.push(finding("min_le_max", ordered, format!("column {}", col.slope)));
        prev = cur;
    }
    out
}

impl E1Approx {
    pub fn column_at(&self, s: &Slope) -> Option<&E1Column> {
        self.columns.iter().find(|c| &c.slope == s)
    }

    fn degree_span(&self) -> Vec<i64> {
        let set: BTreeSet<i64> = self
            .columns
            .iter()
            .flat_map(|c| c.entries.keys().chain(c.hf.keys()).copied())
            .collect();
        match (set.first(), set.last()) {
            (Some(&lo), Some(&hi)) => (lo..=hi).rev().collect(),
            _ => Vec::new(),
        }
    }

    /// Floer ranks on the left, page-one ranges on the right.
    pub fn to_markdown(&self) -> String {
        let degs = self.degree_span();
        let mut out = String::new();
        for (title, right) in [("Floer ranks", false), ("page-one ranks", true)] {
            let _ = write!(out, "#### {title}\n\n| degree |");
            for c in &self.columns {
                let _ = write!(out, " {} |", c.slope);
            }
            out.push_str("\n|---:|");
            for _ in &self.columns {
                out.push_str("---:|");
            }
            out.push('\n');
            for &d in &degs {
                let _ = write!(out, "| {d} |");
                for c in &self.columns {
                    let cell = if right {
                        range_text(c.min(d), c.max(d))
                    } else {
                        rank_in(&c.hf, d).to_string()
                    };
                    let _ = write!(out, " {cell} |");
                }
                out.push('\n');
            }
            out.push('\n');
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let degs = self.degree_span();
        let mut out = String::from("slope,degree,hf_rank,min,max\n");
        for c in &self.columns {
            for &d in &degs {
                let _ = writeln!(
                    out,
                    "{},{d},{},{},{}",
                    crate::csv_field(&c.slope.to_string()),
                    rank_in(&c.hf, d),
                    c.min(d),
                    c.max(d)
                );
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::manifold::builtin_fixture;
    use crate::numerics::rat;

    #[test]
    fn s32_columns() {
        let m = builtin_fixture("s32").unwrap();
        let e = approximate_e1(&m, &rat(2, 5)).unwrap();
        assert_eq!(e.columns.len(), 4);
        let mins = |i: usize| -> Vec<u64> { (0..=4).rev().map(|d| e.columns[i].min(d)).collect() };
        assert_eq!(mins(0), vec![5, 0, 4, 0, 1]);
        assert_eq!(mins(1), vec![0, 2, 2, 0, 0]);
        assert_eq!(mins(2), vec![0, 3, 0, 4, 7]);
        assert_eq!(mins(3), vec![0, 0, 0, 2, 2]);
        assert_eq!(e.columns[2].ambiguity_at(2), 2);
        assert_eq!(e.columns[1].ambiguity_at(4), 3);
        assert!(consistency_check(&e, &m).iter().all(|f| f.passed));
    }

    #[test]
    fn constant_ranks_give_empty_column() {
        let h = GradedRanks::from([(0, 1), (2, 3)]);
        let c = column(&h, &h, Slope::base(), None);
        assert!(c.entries.values().all(|e| e.0 == 0));
    }

    #[test]
    fn corrupted_column_is_flagged() {
        let m = builtin_fixture("s32").unwrap();
        let mut e = approximate_e1(&m, &rat(2, 5)).unwrap();
        e.columns[2].entries.insert(1, (5, 5));
        let bad: Vec<_> = consistency_check(&e, &m).into_iter().filter(|f| !f.passed).collect();
        assert!(bad.iter().any(|f| f.rule == "degree_balance"));
        assert!(bad.iter().any(|f| f.rule == "odd_even_totals"));
    }

    #[test]
    fn a2_a_columns() {
        let m = builtin_fixture("a2_a").unwrap();
        let e = approximate_e1(&m, &crate::numerics::int(1)).unwrap();
        let slopes: Vec<String> = e.columns.iter().map(|c| c.slope.to_string()).collect();
        assert_eq!(slopes, vec!["0+", "1/3+", "2/3+", "1+"]);
        assert!(consistency_check(&e, &m).iter().all(|f| f.passed));
        // two degree-two classes drop to zero at 1/3
        assert_eq!(e.columns[1].min(1), 2);
        assert_eq!(e.columns[1].min(0), 2);
    }

    #[test]
    fn orbit_cap_limits_ambiguity() {
        let mut m = builtin_fixture("s32").unwrap();
        m.orbit_families = Some(vec![
            crate::manifold::OrbitFamily { period: rat(1, 5), betti_total: 2 },
            crate::manifold::OrbitFamily { period: rat(1, 5), betti_total: 2 },
        ]);
        let e = approximate_e1(&m, &rat(1, 5)).unwrap();
        assert_eq!(e.columns[1].ambiguity_at(4), 0);
        assert_eq!(e.columns[1].max(3), 2);
    }
}
