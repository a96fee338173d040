//! Combinatorial description of a C*-manifold: fixed components with
//! weight multiplicities, attraction edges and torsion arrows, plus file
//! ingestion, validation and the built-in fixture library.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::numerics::{fmt_rational, parse_rational, Rational};

/// Serde adapter: integral rationals as JSON numbers, others as `"a/b"`.
pub mod rational_text {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        if r.is_integer() {
            let n: i64 = r
                .to_integer()
                .try_into()
                .map_err(|_| serde::ser::Error::custom("integer too large"))?;
            s.serialize_i64(n)
        } else {
            s.serialize_str(&fmt_rational(r))
        }
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Raw {
        Int(i64),
        Text(String),
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        match Raw::deserialize(d)? {
            Raw::Int(n) => Ok(crate::numerics::int(n)),
            Raw::Text(t) => parse_rational(&t).map_err(serde::de::Error::custom),
        }
    }
}

/// One connected component of the fixed locus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FixedComponent {
    pub name: String,
    pub dim_c: u32,
    /// Even-degree Betti numbers `b0, b2, ..., b_{2 dim_c}`.
    pub betti: Vec<u64>,
    /// Weight `k` to multiplicity `h_k`; weight 0 is implicit.
    pub weights: BTreeMap<i64, u64>,
    #[serde(with = "rational_text")]
    pub h_value: Rational,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub outer_weights: Option<Vec<i64>>,
}

impl FixedComponent {
    /// `h_k`, with `h_0` read as the complex dimension.
    pub fn h(&self, k: i64) -> u64 {
        if k == 0 {
            u64::from(self.dim_c)
        } else {
            self.weights.get(&k).copied().unwrap_or(0)
        }
    }

    /// Each nonzero weight repeated by its multiplicity.
    pub fn weight_list(&self) -> impl Iterator<Item = i64> + '_ {
        self.weights
            .iter()
            .flat_map(|(&k, &h)| std::iter::repeat_n(k, h as usize))
    }

    pub fn betti_total(&self) -> u64 {
        self.betti.iter().sum()
    }

    /// Betti number in real degree `d` (zero off the even range).
    pub fn betti_in_degree(&self, d: i64) -> u64 {
        if d < 0 || d % 2 != 0 {
            return 0;
        }
        self.betti.get((d / 2) as usize).copied().unwrap_or(0)
    }

    pub fn maslov_sum(&self) -> i64 {
        self.weights.iter().map(|(&k, &h)| k * h as i64).sum()
    }

    pub fn weight_dimension(&self) -> u64 {
        self.weights.values().sum()
    }

    /// Positive weights treated as escaping to infinity.
    pub fn outer(&self) -> Vec<i64> {
        match &self.outer_weights {
            Some(w) => w.clone(),
            None => self.weights.keys().copied().filter(|&k| k > 0).collect(),
        }
    }

    /// Some weight is divisible by `m`, and every such weight is positive.
    pub fn m_minimal(&self, m: i64) -> bool {
        let divisible: Vec<i64> = self.weights.keys().copied().filter(|k| k % m == 0).collect();
        !divisible.is_empty() && divisible.iter().all(|&k| k > 0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AttractionEdge {
    pub from: String,
    pub to: String,
    pub weight: i64,
    #[serde(default = "one")]
    pub multiplicity: u64,
}

fn one() -> u64 {
    1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TorsionArrow {
    pub at: String,
    pub weight: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrbitFamily {
    #[serde(with = "rational_text")]
    pub period: Rational,
    pub betti_total: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ManifoldData {
    pub name: String,
    #[serde(rename = "dim_c")]
    pub dim_c_y: u32,
    pub c1_zero: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub csr_weight: Option<u32>,
    pub components: Vec<FixedComponent>,
    #[serde(default)]
    pub edges: Vec<AttractionEdge>,
    #[serde(default)]
    pub torsion_arrows: Vec<TorsionArrow>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orbit_families: Option<Vec<OrbitFamily>>,
    /// Free-form provenance remarks, e.g. which data is synthetic.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl ManifoldData {
    pub fn component(&self, name: &str) -> Option<&FixedComponent> {
        self.components.iter().find(|c| c.name == name)
    }

    /// The component with no negative weights, if it is unique.
    pub fn minimal_component(&self) -> Option<&FixedComponent> {
        let mut mins = self
            .components
            .iter()
            .filter(|c| c.weights.keys().all(|&k| k > 0));
        let first = mins.next()?;
        if mins.next().is_some() {
            None
        } else {
            Some(first)
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("manifold serializes")
    }
}

/// Reads a manifold document. Invariants are checked separately by [`validate`].
pub fn parse_manifold(document: &str) -> Result<ManifoldData> {
    let m: ManifoldData = serde_json::from_str(document).map_err(|e| {
        Error::Parse(format!("line {} column {}: {}", e.line(), e.column(), e))
    })?;
    for c in &m.components {
        if c.weights.contains_key(&0) {
            return Err(Error::Parse(format!("zero weight key in component {}", c.name)));
        }
        if let Some((k, _)) = c.weights.iter().find(|(_, &h)| h == 0) {
            return Err(Error::Parse(format!(
                "malformed weight {k} in component {}: multiplicity must be positive",
                c.name
            )));
        }
    }
    Ok(m)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Finding {
    pub rule: String,
    pub passed: bool,
    pub detail: String,
}

impl Finding {
    pub fn new(rule: &str, passed: bool, detail: impl Into<String>) -> Self {
        Finding {
            rule: rule.to_string(),
            passed,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub findings: Vec<Finding>,
    /// The common weight sum, when it is well defined.
    pub maslov: Option<i64>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.findings.iter().all(|f| f.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Finding> {
        self.findings.iter().filter(|f| !f.passed)
    }

    fn push(&mut self, rule: &str, passed: bool, detail: impl Into<String>) {
        self.findings.push(Finding::new(rule, passed, detail));
    }
}

/// Checks every structural invariant and lists all violations.
pub fn validate(m: &ManifoldData) -> ValidationReport {
    let mut r = ValidationReport::default();

    r.push(
        "nonempty",
        !m.components.is_empty(),
        format!("{} components", m.components.len()),
    );
    let names: BTreeSet<&str> = m.components.iter().map(|c| c.name.as_str()).collect();
    r.push(
        "unique_names",
        names.len() == m.components.len(),
        "component names are distinct",
    );

    for c in &m.components {
        let ok = c.betti.len() == c.dim_c as usize + 1 && c.betti.first().is_some_and(|&b| b >= 1);
        r.push(
            "betti_shape",
            ok,
            format!("{}: {} Betti numbers for complex dimension {}", c.name, c.betti.len(), c.dim_c),
        );
        let dim = u64::from(c.dim_c) + c.weight_dimension();
        r.push(
            "dimension_sum",
            dim == u64::from(m.dim_c_y),
            format!("{}: dim {} + weights {} = {}", c.name, c.dim_c, c.weight_dimension(), dim),
        );
        if let Some(outer) = &c.outer_weights {
            let ok = outer.iter().all(|k| *k > 0 && c.weights.contains_key(k));
            r.push("outer_weights", ok, format!("{}: outer weights {:?}", c.name, outer));
        }
        r.push(
            "h_value",
            !c.h_value.is_negative(),
            format!("{}: H = {}", c.name, fmt_rational(&c.h_value)),
        );
    }

    let sums: BTreeSet<i64> = m.components.iter().map(FixedComponent::maslov_sum).collect();
    let equal = sums.len() == 1;
    r.push("maslov_equal", equal, format!("weight sums {:?}", sums));
    if equal {
        let mu = *sums.iter().next().unwrap();
        r.push("maslov_positive", mu > 0, format!("mu = {mu}"));
        r.maslov = Some(mu);
    }

    let minima: Vec<&str> = m
        .components
        .iter()
        .filter(|c| c.weights.keys().all(|&k| k > 0))
        .map(|c| c.name.as_str())
        .collect();
    r.push(
        "unique_minimum",
        minima.len() == 1,
        format!("index-zero components {:?}", minima),
    );

    if let Some(s) = m.csr_weight {
        let s = i64::from(s);
        for c in &m.components {
            let mut keys: BTreeSet<i64> = c.weights.keys().copied().collect();
            keys.extend(c.weights.keys().map(|k| s - k));
            keys.insert(s);
            let bad: Vec<i64> = keys.into_iter().filter(|&k| c.h(k) != c.h(s - k)).collect();
            r.push(
                "csr_duality",
                bad.is_empty(),
                format!("{}: unpaired weights {:?}", c.name, bad),
            );
        }
        if let Some(mu) = r.maslov {
            r.push(
                "csr_maslov",
                2 * mu == s * i64::from(m.dim_c_y),
                format!("2 mu = {}, s dim = {}", 2 * mu, s * i64::from(m.dim_c_y)),
            );
        }
        if s == 1 {
            for c in &m.components {
                let idx = 2 * c.weights.iter().filter(|(&k, _)| k < 0).map(|(_, &h)| h).sum::<u64>();
                let lhs = 2 * u64::from(c.dim_c) + idx;
                r.push(
                    "csr_lagrangian",
                    lhs == u64::from(m.dim_c_y),
                    format!("{}: 2 dim + index = {}", c.name, lhs),
                );
            }
        }
        if !m.c1_zero {
            r.push("csr_c1", false, "conical resolutions have vanishing first Chern class");
        }
    }

    for e in &m.edges {
        let (Some(a), Some(b)) = (m.component(&e.from), m.component(&e.to)) else {
            r.push("edge_endpoints", false, format!("edge {} -> {} names a missing component", e.from, e.to));
            continue;
        };
        let ok = e.weight > 0 && a.h(e.weight) >= 1 && b.h(-e.weight) >= 1 && e.multiplicity >= 1;
        r.push(
            "edge_weights",
            ok,
            format!("edge {} -> {} weight {}", e.from, e.to, e.weight),
        );
        r.push(
            "edge_order",
            a.h_value < b.h_value,
            format!(
                "edge {} -> {}: H {} < {}",
                e.from,
                e.to,
                fmt_rational(&a.h_value),
                fmt_rational(&b.h_value)
            ),
        );
    }

    for t in &m.torsion_arrows {
        let Some(c) = m.component(&t.at) else {
            r.push("torsion_arrow", false, format!("arrow at missing component {}", t.at));
            continue;
        };
        let divides = t.weight >= 2 && c.weights.keys().any(|&k| k > 0 && k % t.weight == 0);
        r.push(
            "torsion_arrow",
            divides && c.m_minimal(t.weight),
            format!("arrow {} at {}", t.weight, t.at),
        );
    }

    if let Some(fams) = &m.orbit_families {
        for f in fams {
            r.push(
                "orbit_period",
                f.period > Rational::zero(),
                format!("family at {}", fmt_rational(&f.period)),
            );
        }
    }
    r
}

const FIXTURES: &[(&str, &str)] = &[
    ("a2_a", include_str!("../fixtures/a2_a.json")),
    ("a2_b", include_str!("../fixtures/a2_b.json")),
    ("a2_c", include_str!("../fixtures/a2_c.json")),
    ("a1_phi1", include_str!("../fixtures/a1_phi1.json")),
    ("a1_phi2", include_str!("../fixtures/a1_phi2.json")),
    ("a3_ex59", include_str!("../fixtures/a3_ex59.json")),
    ("a4_mckay", include_str!("../fixtures/a4_mckay.json")),
    ("s32", include_str!("../fixtures/s32.json")),
    ("synth_515", include_str!("../fixtures/synth_515.json")),
];

pub fn fixture_names() -> Vec<&'static str> {
    FIXTURES.iter().map(|(n, _)| *n).collect()
}

/// Raw text of a shipped fixture file.
pub fn fixture_source(name: &str) -> Result<&'static str> {
    FIXTURES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, src)| *src)
        .ok_or_else(|| Error::UnknownFixture(name.to_string()))
}

pub fn builtin_fixture(name: &str) -> Result<ManifoldData> {
    parse_manifold(fixture_source(name)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s32_shape() {
        let m = builtin_fixture("s32").unwrap();
        assert_eq!(m.components.len(), 10);
        assert_eq!(m.dim_c_y, 4);
        assert_eq!(m.csr_weight, Some(2));
        let fp = m.component("F_p").unwrap();
        assert_eq!(fp.weights, BTreeMap::from([(5, 1), (3, 1), (-3, 1), (-1, 1)]));
    }

    #[test]
    fn fixture_weights() {
        let phi2 = builtin_fixture("a1_phi2").unwrap();
        assert_eq!(phi2.component("p1").unwrap().weights, BTreeMap::from([(5, 1), (-2, 1)]));
        let synth = builtin_fixture("synth_515").unwrap();
        assert_eq!(synth.component("alpha").unwrap().h(11), 3);
        assert!(builtin_fixture("nope").is_err());
    }

    #[test]
    fn every_fixture_validates() {
        for name in fixture_names() {
            let m = builtin_fixture(name).unwrap();
            let rep = validate(&m);
            let bad: Vec<_> = rep.failures().collect();
            assert!(bad.is_empty(), "{name}: {bad:?}");
            if let Some(s) = m.csr_weight {
                assert_eq!(2 * rep.maslov.unwrap(), i64::from(s) * i64::from(m.dim_c_y), "{name}");
            }
        }
    }

    #[test]
    fn maslov_reported() {
        assert_eq!(validate(&builtin_fixture("s32").unwrap()).maslov, Some(4));
        assert_eq!(validate(&builtin_fixture("a2_a").unwrap()).maslov, Some(2));
    }

    #[test]
    fn round_trip() {
        for name in fixture_names() {
            let m = builtin_fixture(name).unwrap();
            assert_eq!(parse_manifold(&m.to_json()).unwrap(), m, "{name}");
        }
    }

    #[test]
    fn broken_maslov_is_flagged() {
        let mut m = builtin_fixture("a2_a").unwrap();
        let c = m.components.iter_mut().find(|c| c.name == "p1").unwrap();
        c.weights.remove(&3);
        c.weights.insert(4, 1);
        let rep = validate(&m);
        assert!(rep.failures().any(|f| f.rule == "maslov_equal"));
    }

    #[test]
    fn parse_errors() {
        let src = fixture_source("a2_a").unwrap().replace("\"3\": 1", "\"0\": 1");
        let err = parse_manifold(&src).unwrap_err();
        assert!(err.to_string().contains("zero weight key"), "{err}");
        let extra = fixture_source("a2_a").unwrap().replacen("\"c1_zero\"", "\"colour\": 1, \"c1_zero\"", 1);
        assert!(parse_manifold(&extra).is_err());
        let err = parse_manifold("{ \"name\": ").unwrap_err();
        assert!(err.to_string().contains("line"), "{err}");
    }

    #[test]
    fn empty_components_parse_but_fail_validation() {
        let m = parse_manifold(r#"{"name":"e","dim_c":2,"c1_zero":true,"components":[]}"#).unwrap();
        assert!(!validate(&m).ok());
    }
}
