//! Per-window, per-degree rank bounds for the slope filtration of
//! cohomology, assembled from index data alone.
//!
//! The filtration is constant between consecutive outer periods, so every
//! bound is attached to a half-open window `[start, end)` of slopes. Each
//! rule contributes a lower or upper bound and tags the degrees it touched;
//! monotonicity then carries lower bounds forward and upper bounds back
//! until nothing changes.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::indices::{
    cohomology_of_y, critical_times, hf_ranks, lambda_alpha, maslov, morse_bott_index,
    outer_periods, p_stable, rank_in, rational_floor_i64, total_rank, GradedRanks,
};
use crate::manifold::ManifoldData;
use crate::numerics::{fmt_rational, int, rat, Rational, Side, Slope};

/// Even degrees `0, 2, ..., 2 dim_C Y`.
pub fn degrees(m: &ManifoldData) -> Vec<i64> {
    (0..=i64::from(m.dim_c_y)).map(|j| 2 * j).collect()
}

/// `rank H^k(Y) - rank HF^k` at the given slope for every even degree.
pub fn delta_at(m: &ManifoldData, s: &Slope) -> BTreeMap<i64, i64> {
    let h = cohomology_of_y(m);
    let hf = hf_ranks(m, s);
    degrees(m)
        .into_iter()
        .map(|k| (k, rank_in(&h, k) as i64 - rank_in(&hf, k) as i64))
        .collect()
}

pub fn delta_table(m: &ManifoldData, slopes: &[Slope]) -> BTreeMap<(Slope, i64), i64> {
    let mut out = BTreeMap::new();
    for s in slopes {
        for (k, v) in delta_at(m, s) {
            out.insert((s.clone(), k), v);
        }
    }
    out
}

/// Largest clamped delta over the slopes just above each critical time up
/// to and including `start`.
pub fn lower_bounds(m: &ManifoldData, start: &Rational) -> BTreeMap<i64, u64> {
    let mut out: BTreeMap<i64, u64> = degrees(m).into_iter().map(|k| (k, 0)).collect();
    for (t, _) in critical_times(m, start) {
        for (k, v) in delta_at(m, &Slope::above(t)) {
            let e = out.get_mut(&k).unwrap();
            *e = (*e).max(v.max(0) as u64);
        }
    }
    out
}

/// Before the minimum's first critical time nothing supported on the
/// minimal component can die, so only the other components contribute.
pub fn min_exclusion_upper(m: &ManifoldData, start: &Rational) -> Option<BTreeMap<i64, u64>> {
    let min = m.minimal_component()?;
    let lam = lambda_alpha(min).ok()?;
    if start >= &lam {
        return None;
    }
    let others = GradedRanks::from_iter(
        m.components
            .iter()
            .filter(|c| c.name != min.name)
            .flat_map(|c| {
                let mu = morse_bott_index(c);
                c.betti
                    .iter()
                    .enumerate()
                    .map(move |(j, &b)| (mu + 2 * j as i64, b))
            })
            .fold(BTreeMap::new(), |mut acc: BTreeMap<i64, u64>, (d, b)| {
                *acc.entry(d).or_insert(0) += b;
                acc
            }),
    );
    Some(degrees(m).into_iter().map(|k| (k, rank_in(&others, k))).collect())
}

/// Total cohomology minus the components that are stable at `p`.
pub fn p_stable_upper(m: &ManifoldData, p: &Rational) -> u64 {
    let total = total_rank(&cohomology_of_y(m));
    let stable: u64 = m
        .components
        .iter()
        .filter(|c| p_stable(c, p))
        .map(|c| c.betti_total())
        .sum();
    total - stable
}

/// Half the total Betti number of orbit families up to `start`, when the
/// listed families reach at least that far.
pub fn orbit_upper(m: &ManifoldData, start: &Rational) -> Option<u64> {
    let fams = m.orbit_families.as_ref()?;
    let reach = fams.iter().map(|f| &f.period).max()?;
    if start > reach {
        return None;
    }
    let sum: u64 = fams.iter().filter(|f| &f.period <= start).map(|f| f.betti_total).sum();
    Some(sum / 2)
}

/// Exact or one-sided statements that hold for conical resolutions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum CsrStatement {
    /// From this slope on, everything in degree at least two has died.
    ContainsPositiveDegrees { from: String },
    /// On `[from, until)` exactly the positive degrees have died.
    EqualsPositiveDegrees { from: String, until: String },
    /// From this slope on, everything has died.
    Everything { from: String },
}

fn csr_thresholds(m: &ManifoldData) -> Option<(u32, Rational, Rational)> {
    let s = m.csr_weight?;
    if s >= 2 {
        let si = i64::from(s);
        let all = rat(2, si).min(int(1));
        Some((s, rat(1, si), all))
    } else {
        Some((s, int(1), int(2)))
    }
}

pub fn csr_shortcuts(m: &ManifoldData) -> Vec<CsrStatement> {
    let Some((s, pos, all)) = csr_thresholds(m) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    if s >= 2 {
        out.push(CsrStatement::ContainsPositiveDegrees { from: fmt_rational(&pos) });
    } else {
        out.push(CsrStatement::EqualsPositiveDegrees {
            from: fmt_rational(&pos),
            until: fmt_rational(&all),
        });
    }
    out.push(CsrStatement::Everything { from: fmt_rational(&all) });
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeBound {
    pub lower: u64,
    pub upper: u64,
    pub rules: Vec<String>,
}

impl DegreeBound {
    pub fn is_exact(&self) -> bool {
        self.lower == self.upper
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WindowBounds {
    #[serde(with = "crate::manifold::rational_text")]
    pub start: Rational,
    /// `None` for the last window, which is open to the right.
    #[serde(serialize_with = "ser_opt_rational")]
    pub end: Option<Rational>,
    pub per_degree: BTreeMap<i64, DegreeBound>,
    pub lower_total: u64,
    pub upper_total: u64,
}

fn ser_opt_rational<S: serde::Serializer>(
    r: &Option<Rational>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_str(&fmt_rational(r)),
        None => s.serialize_none(),
    }
}

impl WindowBounds {
    pub fn label(&self) -> String {
        match &self.end {
            Some(e) => format!("[{}, {})", fmt_rational(&self.start), fmt_rational(e)),
            None => format!("[{}, ...)", fmt_rational(&self.start)),
        }
    }

    pub fn is_exact(&self) -> bool {
        self.lower_total == self.upper_total
    }

    pub fn bound(&self, k: i64) -> (u64, u64) {
        self.per_degree
            .get(&k)
            .map(|b| (b.lower, b.upper))
            .unwrap_or((0, 0))
    }

    /// Whether `s` lies in this window.
    pub fn contains(&self, s: &Rational) -> bool {
        s >= &self.start && self.end.as_ref().is_none_or(|e| s < e)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeBoundReport {
    pub windows: Vec<WindowBounds>,
}

impl DegreeBoundReport {
    pub fn window_at(&self, s: &Rational) -> Option<&WindowBounds> {
        self.windows.iter().find(|w| w.contains(s))
    }

    /// Window starts at which the guaranteed total rank increases, with the
    /// new lower and upper totals.
    pub fn jumps(&self) -> Vec<(Rational, u64, u64)> {
        let mut prev = 0;
        let mut out = Vec::new();
        for w in &self.windows {
            if w.lower_total > prev {
                out.push((w.start.clone(), w.lower_total, w.upper_total));
            }
            prev = w.lower_total;
        }
        out
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        for w in &self.windows {
            let _ = writeln!(
                out,
                "### window {}\n\ntotal: {}\n\n| degree | lower | upper | rules |\n|---:|---:|---:|---|",
                w.label(),
                range_text(w.lower_total, w.upper_total)
            );
            for (k, b) in &w.per_degree {
                let _ = writeln!(out, "| {k} | {} | {} | {} |", b.lower, b.upper, b.rules.join(", "));
            }
            out.push('\n');
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("window,degree,lower,upper,rules\n");
        for w in &self.windows {
            for (k, b) in &w.per_degree {
                let _ = writeln!(
                    out,
                    "{},{k},{},{},{}",
                    crate::csv_field(&w.label()),
                    b.lower,
                    b.upper,
                    crate::csv_field(&b.rules.join(";"))
                );
            }
        }
        out
    }
}

pub(crate) fn range_text(lo: u64, hi: u64) -> String {
    if lo == hi {
        lo.to_string()
    } else {
        format!("{lo}..{hi}")
    }
}

struct Work {
    start: Rational,
    end: Option<Rational>,
    lower: BTreeMap<i64, u64>,
    upper: BTreeMap<i64, u64>,
    rules: BTreeMap<i64, BTreeSet<&'static str>>,
    lower_total: u64,
    upper_total: u64,
    total_rules: BTreeSet<&'static str>,
}

impl Work {
    fn raise(&mut self, k: i64, v: u64, rule: &'static str) -> bool {
        let e = self.lower.get_mut(&k).unwrap();
        if v > *e {
            *e = v;
            self.rules.get_mut(&k).unwrap().insert(rule);
            true
        } else {
            false
        }
    }

    fn cap(&mut self, k: i64, v: u64, rule: &'static str) -> bool {
        let e = self.upper.get_mut(&k).unwrap();
        if v < *e {
            *e = v;
            self.rules.get_mut(&k).unwrap().insert(rule);
            true
        } else {
            false
        }
    }

    fn raise_total(&mut self, v: u64, rule: &'static str) -> bool {
        if v > self.lower_total {
            self.lower_total = v;
            self.total_rules.insert(rule);
            true
        } else {
            false
        }
    }

    fn cap_total(&mut self, v: u64, rule: &'static str) -> bool {
        if v < self.upper_total {
            self.upper_total = v;
            self.total_rules.insert(rule);
            true
        } else {
            false
        }
    }

    fn everything(&mut self, h: &GradedRanks, rule: &'static str) {
        let ks: Vec<i64> = self.lower.keys().copied().collect();
        for k in ks {
            self.raise(k, rank_in(h, k), rule);
        }
    }

    fn ends_after(&self, x: &Rational) -> bool {
        self.end.as_ref().is_none_or(|e| e > x)
    }
}

/// Windows between consecutive outer periods up to `up_to`, the last one
/// open to the right.
pub fn windows(m: &ManifoldData, up_to: &Rational) -> Vec<(Rational, Option<Rational>)> {
    let mut starts = vec![Rational::zero()];
    starts.extend(outer_periods(m, up_to));
    if up_to > &Rational::zero() && starts.last() != Some(up_to) {
        starts.push(up_to.clone());
    }
    let n = starts.len();
    (0..n)
        .map(|i| (starts[i].clone(), starts.get(i + 1).cloned()))
        .collect()
}

pub fn bound_report(m: &ManifoldData, up_to: &Rational) -> Result<DegreeBoundReport> {
    if !m.c1_zero && m.csr_weight.is_none() {
        return Err(Error::InvalidInput(
            "bounds need a vanishing first Chern class or a conical weight".into(),
        ));
    }
    if up_to <= &Rational::zero() {
        return Err(Error::InvalidInput("the slope range must be positive".into()));
    }
    let h = cohomology_of_y(m);
    let h_total = total_rank(&h);
    let mu = maslov(m)?;
    let degs = degrees(m);
    let first_period = outer_periods(m, up_to).into_iter().next();
    let csr = csr_thresholds(m);

    let mut ws: Vec<Work> = windows(m, up_to)
        .into_iter()
        .map(|(start, end)| Work {
            start,
            end,
            lower: degs.iter().map(|&k| (k, 0)).collect(),
            upper: degs.iter().map(|&k| (k, rank_in(&h, k))).collect(),
            rules: degs.iter().map(|&k| (k, BTreeSet::new())).collect(),
            lower_total: 0,
            upper_total: h_total,
            total_rules: BTreeSet::new(),
        })
        .collect();

    for (i, w) in ws.iter_mut().enumerate() {
        if i == 0 {
            for &k in &degs {
                w.cap(k, 0, "base");
                w.rules.get_mut(&k).unwrap().insert("base");
            }
            w.cap_total(0, "base");
            continue;
        }
        if m.c1_zero {
            for (k, v) in lower_bounds(m, &w.start) {
                w.raise(k, v, "delta");
            }
            if w.start >= int(1) {
                let n = rational_floor_i64(&w.start);
                for &k in &degs {
                    let v = rank_in(&h, k) as i64 - rank_in(&h, k + 2 * n * mu) as i64;
                    w.raise(k, v.max(0) as u64, "full_rotation");
                }
            }
        }
        if let Some(up) = min_exclusion_upper(m, &w.start) {
            for (k, v) in up {
                w.cap(k, v, "min_exclusion");
            }
        }
        if first_period.as_ref() == Some(&w.start) {
            w.cap_total(p_stable_upper(m, &w.start), "p_stable");
        }
        if let Some(v) = orbit_upper(m, &w.start) {
            w.cap_total(v, "orbit");
        }
        if let Some((s, pos, all)) = &csr {
            if w.ends_after(pos) {
                for &k in &degs {
                    if k >= 2 {
                        w.raise(k, rank_in(&h, k), "csr");
                    }
                }
            }
            if *s == 1 && w.start >= *pos && w.start < *all {
                w.cap(0, 0, "csr");
            }
            if w.ends_after(all) && (w.start >= *all || *s >= 2) {
                w.everything(&h, "csr");
            }
        }
    }

    // fixpoint over unit, totals and monotonicity
    loop {
        let mut changed = false;
        for w in ws.iter_mut() {
            if w.lower[&0] >= 1 && rank_in(&h, 0) == 1 {
                let before = w.lower.clone();
                w.everything(&h, "unit");
                changed |= before != w.lower;
            }
            let sum_lower: u64 = w.lower.values().sum();
            let sum_upper: u64 = w.upper.values().sum();
            changed |= w.raise_total(sum_lower, "sum");
            changed |= w.cap_total(sum_upper, "sum");
            for &k in &degs {
                let others: u64 = w.lower.iter().filter(|(&j, _)| j != k).map(|(_, &v)| v).sum();
                let room = w.upper_total.saturating_sub(others);
                changed |= w.cap(k, room, "total");
                let others_up: u64 = w.upper.iter().filter(|(&j, _)| j != k).map(|(_, &v)| v).sum();
                changed |= w.raise(k, w.lower_total.saturating_sub(others_up), "total");
            }
        }
        for i in 1..ws.len() {
            let (a, b) = ws.split_at_mut(i);
            let (prev, cur) = (&mut a[i - 1], &mut b[0]);
            for &k in &degs {
                changed |= cur.raise(k, prev.lower[&k], "forward");
                changed |= prev.cap(k, cur.upper[&k], "backward");
            }
            changed |= cur.raise_total(prev.lower_total, "forward");
            changed |= prev.cap_total(cur.upper_total, "backward");
        }
        for w in &ws {
            for &k in &degs {
                if w.lower[&k] > w.upper[&k] {
                    return Err(Error::Contradiction(format!(
                        "window starting {} degree {k}: lower {} exceeds upper {} (rules: {:?})",
                        fmt_rational(&w.start),
                        w.lower[&k],
                        w.upper[&k],
                        w.rules[&k]
                    )));
                }
            }
            if w.lower_total > w.upper_total {
                return Err(Error::Contradiction(format!(
                    "window starting {}: total lower {} exceeds total upper {} (rules: {:?})",
                    fmt_rational(&w.start),
                    w.lower_total,
                    w.upper_total,
                    w.total_rules
                )));
            }
        }
        if !changed {
            break;
        }
    }

    Ok(DegreeBoundReport {
        windows: ws
            .into_iter()
            .map(|w| WindowBounds {
                per_degree: w
                    .lower
                    .iter()
                    .map(|(&k, &lower)| {
                        (
                            k,
                            DegreeBound {
                                lower,
                                upper: w.upper[&k],
                                rules: w.rules[&k].iter().map(|s| s.to_string()).collect(),
                            },
                        )
                    })
                    .collect(),
                start: w.start,
                end: w.end,
                lower_total: w.lower_total,
                upper_total: w.upper_total,
            })
            .collect(),
    })
}

/// Rank bookkeeping for the complex of orbit families up to a critical slope.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitBookkeeping {
    pub degree: i64,
    /// Peak positive delta up to just above the slope.
    pub peak: i64,
    /// Sum of the positive drops of delta across critical times.
    pub drops: i64,
    /// `drops + delta` just above the slope.
    pub killed_base: i64,
    pub delta_below: i64,
    pub delta_above: i64,
    /// Upper end of the free parameter; negative means the constraints
    /// admit no value.
    pub r_upper: i64,
}

impl OrbitBookkeeping {
    pub fn r_range(&self) -> Option<(i64, i64)> {
        (self.r_upper >= 0).then_some((0, self.r_upper))
    }

    /// Ranks in the odd degree below and in this even degree for a given
    /// value of the free parameter.
    pub fn ranks_for(&self, r: i64) -> (i64, i64) {
        (self.killed_base + r, self.drops + r)
    }
}

/// Rank bookkeeping for the orbit of slope `p` in each even degree, with
/// an optional known kernel below to narrow the free parameter.
pub fn orbit_bookkeeping_at(
    m: &ManifoldData,
    p: &Rational,
    known_below: Option<&BTreeMap<i64, u64>>,
) -> Result<Vec<OrbitBookkeeping>> {
    if !m.c1_zero {
        return Err(Error::InvalidInput("needs a vanishing first Chern class".into()));
    }
    let times: Vec<Rational> = critical_times(m, p).into_iter().map(|(t, _)| t).collect();
    if times.last() != Some(p) {
        return Err(Error::InvalidInput(format!("{} is not a critical time", fmt_rational(p))));
    }
    let h = cohomology_of_y(m);
    let mut out = Vec::new();
    let samples: Vec<(BTreeMap<i64, i64>, BTreeMap<i64, i64>)> = times
        .iter()
        .map(|t| {
            (
                delta_at(m, &Slope::new(t.clone(), Side::Below).unwrap()),
                delta_at(m, &Slope::above(t.clone())),
            )
        })
        .collect();
    for k in degrees(m) {
        let mut peak = 0;
        let mut drops = 0;
        for (below, above) in &samples {
            peak = peak.max(above[&k]).max(below[&k]);
            let d = below[&k] - above[&k];
            if d > 0 {
                drops += d;
            }
        }
        let (below, above) = samples.last().unwrap();
        let killed_base = drops + above[&k];
        let mut r_upper = rank_in(&h, k) as i64 - below[&k] - killed_base;
        if let Some(known) = known_below {
            let f = known.get(&k).copied().unwrap_or(0) as i64;
            r_upper = r_upper.min(f - below[&k]);
        }
        out.push(OrbitBookkeeping {
            degree: k,
            peak,
            drops,
            killed_base,
            delta_below: below[&k],
            delta_above: above[&k],
            r_upper,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::manifold::builtin_fixture;

    fn exact(w: &WindowBounds) -> BTreeMap<i64, u64> {
        w.per_degree
            .iter()
            .map(|(&k, b)| {
                assert!(b.is_exact(), "{} degree {k} not exact: {b:?}", w.label());
                (k, b.lower)
            })
            .collect()
    }

    #[test]
    fn delta_examples() {
        let m = builtin_fixture("s32").unwrap();
        assert_eq!(delta_at(&m, &"1/3+".parse().unwrap())[&4], 5);
        assert_eq!(delta_at(&m, &"1/5+".parse().unwrap())[&2], -2);
        assert!(delta_at(&m, &Slope::base()).values().all(|&v| v == 0));
    }

    #[test]
    fn lower_bound_examples() {
        let m = builtin_fixture("s32").unwrap();
        assert_eq!(lower_bounds(&m, &rat(1, 5))[&4], 2);
        let l = lower_bounds(&m, &rat(2, 5));
        assert_eq!((l[&2], l[&4]), (4, 5));
        assert!(lower_bounds(&m, &rat(1, 6)).values().all(|&v| v == 0));
    }

    #[test]
    fn min_exclusion_examples() {
        let a = builtin_fixture("a2_a").unwrap();
        assert_eq!(min_exclusion_upper(&a, &rat(1, 3)).unwrap()[&0], 0);
        assert!(min_exclusion_upper(&a, &int(1)).is_none());
        let s = builtin_fixture("s32").unwrap();
        assert_eq!(min_exclusion_upper(&s, &rat(4, 5)).unwrap()[&0], 0);
    }

    #[test]
    fn p_stable_examples() {
        assert_eq!(p_stable_upper(&builtin_fixture("s32").unwrap(), &rat(1, 5)), 2);
        assert_eq!(p_stable_upper(&builtin_fixture("a2_a").unwrap(), &rat(1, 3)), 2);
        assert_eq!(p_stable_upper(&builtin_fixture("a2_b").unwrap(), &rat(1, 2)), 1);
    }

    #[test]
    fn orbit_examples() {
        let mut m = builtin_fixture("s32").unwrap();
        assert!(orbit_upper(&m, &rat(1, 5)).is_none());
        m.orbit_families = Some(vec![
            crate::manifold::OrbitFamily { period: rat(1, 5), betti_total: 2 },
            crate::manifold::OrbitFamily { period: rat(1, 5), betti_total: 2 },
        ]);
        assert_eq!(orbit_upper(&m, &rat(1, 5)), Some(2));
        assert_eq!(orbit_upper(&m, &rat(1, 10)), Some(0));
        assert!(orbit_upper(&m, &rat(1, 3)).is_none());
    }

    #[test]
    fn csr_statement_examples() {
        let s = csr_shortcuts(&builtin_fixture("s32").unwrap());
        assert!(s.contains(&CsrStatement::Everything { from: "1".into() }));
        let b = csr_shortcuts(&builtin_fixture("a2_b").unwrap());
        assert!(b.contains(&CsrStatement::EqualsPositiveDegrees { from: "1".into(), until: "2".into() }));
        assert!(csr_shortcuts(&builtin_fixture("synth_515").unwrap()).is_empty());
    }

    #[test]
    fn s32_report() {
        let m = builtin_fixture("s32").unwrap();
        let r = bound_report(&m, &int(1)).unwrap();
        assert_eq!(exact(r.window_at(&rat(1, 10)).unwrap()), BTreeMap::from([(0, 0), (2, 0), (4, 0), (6, 0), (8, 0)]));
        let w = r.window_at(&rat(1, 5)).unwrap();
        assert_eq!(exact(w)[&4], 2);
        assert_eq!(w.lower_total, 2);
        let w = r.window_at(&rat(1, 3)).unwrap();
        assert_eq!(w.bound(4), (5, 5));
        assert_eq!(w.bound(2), (2, 4));
        assert_eq!(w.bound(0), (0, 0));
        for t in [rat(2, 5), rat(1, 2), rat(3, 5), rat(2, 3), rat(4, 5), rat(99, 100)] {
            let e = exact(r.window_at(&t).unwrap());
            assert_eq!((e[&0], e[&2], e[&4]), (0, 4, 5));
        }
        let w = r.window_at(&int(1)).unwrap();
        assert_eq!((w.lower_total, w.upper_total), (10, 10));
    }

    #[test]
    fn orbit_data_tightens_s32() {
        let mut m = builtin_fixture("s32").unwrap();
        m.orbit_families = Some(vec![
            crate::manifold::OrbitFamily { period: rat(1, 5), betti_total: 2 },
            crate::manifold::OrbitFamily { period: rat(1, 5), betti_total: 2 },
        ]);
        let r = bound_report(&m, &int(1)).unwrap();
        assert_eq!(r.window_at(&rat(1, 5)).unwrap().upper_total, 2);
    }

    #[test]
    fn needs_chern_or_csr() {
        let mut m = builtin_fixture("synth_515").unwrap();
        m.c1_zero = false;
        assert!(bound_report(&m, &int(1)).is_err());
    }

    #[test]
    fn contradiction_is_reported() {
        // declaring a conical weight that contradicts the index data
        let mut m = builtin_fixture("a2_a").unwrap();
        m.csr_weight = Some(1);
        let e = bound_report(&m, &int(1)).unwrap_err();
        assert!(matches!(e, Error::Contradiction(_)), "{e}");
    }

    #[test]
    fn bookkeeping_examples() {
        let m = builtin_fixture("s32").unwrap();
        let b = orbit_bookkeeping_at(&m, &rat(1, 3), None).unwrap();
        let d4 = b.iter().find(|x| x.degree == 4).unwrap();
        assert_eq!((d4.peak, d4.drops, d4.killed_base), (5, 0, 5));
        assert_eq!(d4.r_range(), None);
        let b = orbit_bookkeeping_at(&m, &rat(1, 5), None).unwrap();
        let d4 = b.iter().find(|x| x.degree == 4).unwrap();
        assert_eq!(d4.killed_base, 2);
        assert_eq!(d4.r_range(), Some((0, 3)));
        let d8 = b.iter().find(|x| x.degree == 8).unwrap();
        assert_eq!((d8.peak, d8.drops, d8.killed_base, d8.r_upper), (0, 0, 0, 0));
        assert!(orbit_bookkeeping_at(&m, &rat(1, 4), None).is_err());
        let known = BTreeMap::from([(4, 2)]);
        let b = orbit_bookkeeping_at(&m, &rat(1, 5), Some(&known)).unwrap();
        assert_eq!(b.iter().find(|x| x.degree == 4).unwrap().r_range(), Some((0, 2)));
    }
}
