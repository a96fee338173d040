//! Graded commutative algebras given by structure constants in `Q[T]`,
//! their file format, validation, and the shipped fixtures.

use std::collections::BTreeMap;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::linalg::{transpose, Matrix, Vector};
use super::poly::{FracT, PolyT};
use crate::error::{Error, Result};
use crate::manifold::Finding;
use crate::numerics::{fmt_rational, int, parse_rational, Rational};

/// Element with polynomial coefficients, indexed by basis position.
pub type PolyVec = Vec<PolyT>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElement {
    pub name: String,
    pub degree: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedAlgebra {
    pub name: String,
    pub t_degree: i64,
    pub basis: Vec<BasisElement>,
    pub unit: usize,
    /// Products of basis elements as given; a missing `(i, j)` falls back
    /// to `(j, i)` and then to zero.
    pub products: BTreeMap<(usize, usize), PolyVec>,
    pub classes: BTreeMap<String, PolyVec>,
}

impl GradedAlgebra {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|b| b.name == name)
    }

    pub fn zero_vec(&self) -> PolyVec {
        vec![PolyT::zero(); self.dim()]
    }

    pub fn basis_vec(&self, i: usize) -> PolyVec {
        let mut v = self.zero_vec();
        v[i] = PolyT::one();
        v
    }

    pub fn product(&self, i: usize, j: usize) -> PolyVec {
        self.products
            .get(&(i, j))
            .or_else(|| self.products.get(&(j, i)))
            .cloned()
            .unwrap_or_else(|| self.zero_vec())
    }

    pub fn multiply(&self, a: &[PolyT], b: &[PolyT]) -> PolyVec {
        let mut out = self.zero_vec();
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let xy = x * y;
                for (o, p) in out.iter_mut().zip(self.product(i, j)) {
                    if !p.is_zero() {
                        *o = &*o + &(&xy * &p);
                    }
                }
            }
        }
        out
    }

    /// The classical product obtained by setting `T = 0` in the table.
    pub fn cup_product(&self, i: usize, j: usize) -> Vec<Rational> {
        self.product(i, j).iter().map(|p| p.coeff(0)).collect()
    }

    pub fn class(&self, name: &str) -> Result<&PolyVec> {
        self.classes
            .get(name)
            .ok_or_else(|| Error::InvalidInput(format!("algebra {} has no class {name:?}", self.name)))
    }

    /// Matrix of `a -> c * a`; column `j` is `c * e_j`.
    pub fn mult_matrix(&self, c: &[PolyT]) -> Matrix {
        let cols: Matrix = (0..self.dim())
            .map(|j| vec_to_frac(&self.multiply(c, &self.basis_vec(j))))
            .collect();
        transpose(&cols)
    }

    /// Matrix of classical multiplication by a basis element.
    pub fn cup_matrix(&self, i: usize) -> Matrix {
        let cols: Matrix = (0..self.dim())
            .map(|j| self.cup_product(i, j).into_iter().map(FracT::constant).collect())
            .collect();
        transpose(&cols)
    }

    /// Total degree of a nonzero homogeneous element; `Ok(None)` for zero.
    pub fn homogeneous_degree(&self, v: &[PolyT]) -> Result<Option<i64>> {
        let mut deg = None;
        for (i, p) in v.iter().enumerate() {
            for (e, _) in p.terms() {
                let d = self.basis[i].degree + e as i64 * self.t_degree;
                match deg {
                    None => deg = Some(d),
                    Some(x) if x == d => {}
                    Some(x) => {
                        return Err(Error::InvalidInput(format!(
                            "element mixes degrees {x} and {d}"
                        )))
                    }
                }
            }
        }
        Ok(deg)
    }

    pub fn to_json(&self) -> String {
        let file = AlgebraFile::from(self);
        serde_json::to_string_pretty(&file).expect("serializable") + "\n"
    }
}

pub fn vec_to_frac(v: &[PolyT]) -> Vector {
    v.iter().map(|p| FracT::from_poly(p.clone())).collect()
}

// file format

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BasisEntry {
    name: String,
    degree: i64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Term {
    basis: String,
    /// Exponent of `T` to coefficient.
    poly: BTreeMap<String, serde_json::Value>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraFile {
    name: String,
    t_degree: i64,
    basis: Vec<BasisEntry>,
    unit: String,
    #[serde(default)]
    products: BTreeMap<String, Vec<Term>>,
    #[serde(default)]
    classes: BTreeMap<String, Vec<Term>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    presentation: Option<serde_json::Value>,
}

fn coeff_value(c: &Rational) -> serde_json::Value {
    match c.to_integer().to_i64() {
        Some(i) if c.is_integer() => serde_json::Value::from(i),
        _ => serde_json::Value::from(fmt_rational(c)),
    }
}

fn terms_of(a: &GradedAlgebra, v: &[PolyT]) -> Vec<Term> {
    v.iter()
        .enumerate()
        .filter(|(_, p)| !p.is_zero())
        .map(|(i, p)| Term {
            basis: a.basis[i].name.clone(),
            poly: p.terms().map(|(e, c)| (e.to_string(), coeff_value(c))).collect(),
        })
        .collect()
}

impl From<&GradedAlgebra> for AlgebraFile {
    fn from(a: &GradedAlgebra) -> Self {
        let mut products = BTreeMap::new();
        for i in 0..a.dim() {
            for j in i..a.dim() {
                let p = a.product(i, j);
                if p.iter().any(|x| !x.is_zero()) {
                    products.insert(format!("{}*{}", a.basis[i].name, a.basis[j].name), terms_of(a, &p));
                }
            }
        }
        AlgebraFile {
            name: a.name.clone(),
            t_degree: a.t_degree,
            basis: a
                .basis
                .iter()
                .map(|b| BasisEntry { name: b.name.clone(), degree: b.degree })
                .collect(),
            unit: a.basis[a.unit].name.clone(),
            products,
            classes: a.classes.iter().map(|(k, v)| (k.clone(), terms_of(a, v))).collect(),
            presentation: None,
        }
    }
}

fn parse_coeff(v: &serde_json::Value) -> Result<Rational> {
    match v {
        serde_json::Value::Number(n) => {
            let i = n
                .as_i64()
                .ok_or_else(|| Error::Parse(format!("coefficient {n} is not an integer")))?;
            Ok(int(i))
        }
        serde_json::Value::String(s) => parse_rational(s),
        other => Err(Error::Parse(format!("bad coefficient {other}"))),
    }
}

fn parse_terms(names: &BTreeMap<String, usize>, n: usize, terms: &[Term]) -> Result<PolyVec> {
    let mut out = vec![PolyT::zero(); n];
    for t in terms {
        let &i = names
            .get(&t.basis)
            .ok_or_else(|| Error::Parse(format!("unknown basis element {:?}", t.basis)))?;
        for (e, c) in &t.poly {
            let e: usize = e
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent {e:?}")))?;
            let c = parse_coeff(c)?;
            out[i] = &out[i] + &PolyT::monomial(c, e);
        }
    }
    Ok(out)
}

pub fn parse_algebra(document: &str) -> Result<GradedAlgebra> {
    let f: AlgebraFile = serde_json::from_str(document)
        .map_err(|e| Error::Parse(format!("line {} column {}: {e}", e.line(), e.column())))?;
    let names: BTreeMap<String, usize> = f
        .basis
        .iter()
        .enumerate()
        .map(|(i, b)| (b.name.clone(), i))
        .collect();
    if names.len() != f.basis.len() {
        return Err(Error::Parse("duplicate basis names".into()));
    }
    let n = f.basis.len();
    let unit = *names
        .get(&f.unit)
        .ok_or_else(|| Error::Parse(format!("unit {:?} is not a basis element", f.unit)))?;
    let mut products = BTreeMap::new();
    for (key, terms) in &f.products {
        let (a, b) = key
            .split_once('*')
            .ok_or_else(|| Error::Parse(format!("product key {key:?} is not of the form a*b")))?;
        let (Some(&i), Some(&j)) = (names.get(a.trim()), names.get(b.trim())) else {
            return Err(Error::Parse(format!("product key {key:?} names unknown elements")));
        };
        products.insert((i, j), parse_terms(&names, n, terms)?);
    }
    let mut classes = BTreeMap::new();
    for (k, terms) in &f.classes {
        classes.insert(k.clone(), parse_terms(&names, n, terms)?);
    }
    Ok(GradedAlgebra {
        name: f.name,
        t_degree: f.t_degree,
        basis: f
            .basis
            .into_iter()
            .map(|b| BasisElement { name: b.name, degree: b.degree })
            .collect(),
        unit,
        products,
        classes,
    })
}

pub fn validate_algebra(a: &GradedAlgebra) -> Vec<Finding> {
    let n = a.dim();
    let mut out = Vec::new();
    out.push(Finding::new("nonempty", n > 0, format!("dimension {n}")));
    out.push(Finding::new(
        "t_degree",
        a.t_degree >= 0 && a.t_degree % 2 == 0,
        format!("|T| = {}", a.t_degree),
    ));

    let mut comm = Vec::new();
    for (&(i, j), p) in &a.products {
        if let Some(q) = a.products.get(&(j, i)) {
            if p != q {
                comm.push(format!("{}*{}", a.basis[i].name, a.basis[j].name));
            }
        }
    }
    out.push(Finding::new("commutative", comm.is_empty(), format!("asymmetric entries {comm:?}")));

    let mut unit_bad = Vec::new();
    for j in 0..n {
        if a.product(a.unit, j) != a.basis_vec(j) {
            unit_bad.push(a.basis[j].name.clone());
        }
    }
    out.push(Finding::new("unit", unit_bad.is_empty(), format!("unit fails on {unit_bad:?}")));

    let mut assoc = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let ij = a.product(i, j);
            for k in 0..n {
                let left = a.multiply(&ij, &a.basis_vec(k));
                let right = a.multiply(&a.basis_vec(i), &a.product(j, k));
                if left != right {
                    assoc.push(format!("({},{},{})", a.basis[i].name, a.basis[j].name, a.basis[k].name));
                }
            }
        }
    }
    out.push(Finding::new(
        "associative",
        assoc.is_empty(),
        format!("{} failing triples {:?}", assoc.len(), assoc.iter().take(5).collect::<Vec<_>>()),
    ));

    let mut graded = Vec::new();
    for (&(i, j), p) in &a.products {
        let want = a.basis[i].degree + a.basis[j].degree;
        for (k, poly) in p.iter().enumerate() {
            for (e, _) in poly.terms() {
                if a.basis[k].degree + e as i64 * a.t_degree != want {
                    graded.push(format!("{}*{} -> T^{e} {}", a.basis[i].name, a.basis[j].name, a.basis[k].name));
                }
            }
        }
    }
    out.push(Finding::new("graded", graded.is_empty(), format!("inhomogeneous terms {graded:?}")));

    for (name, v) in &a.classes {
        let ok = v.len() == n && a.homogeneous_degree(v).is_ok();
        out.push(Finding::new("class", ok, format!("class {name} homogeneous")));
    }
    out
}

// presentations

/// Sum of `coeff T^e x^monomial` terms.
pub type Terms = Vec<(Rational, usize, Vec<u32>)>;

/// Monomial basis with rewrite rules `lhs -> sum of coeff T^e * monomial`.
pub struct Presentation {
    pub name: String,
    pub t_degree: i64,
    pub variables: Vec<(String, i64)>,
    pub basis: Vec<Vec<u32>>,
    pub rules: Vec<(Vec<u32>, Terms)>,
    pub classes: Vec<(String, Terms)>,
}

fn monomial_name(vars: &[(String, i64)], e: &[u32]) -> String {
    let parts: Vec<String> = vars
        .iter()
        .zip(e)
        .filter(|(_, &k)| k > 0)
        .map(|((v, _), &k)| if k == 1 { v.clone() } else { format!("{v}^{k}") })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("")
    }
}

impl Presentation {
    /// Normal form of `coeff T^e x^mono` in the basis.
    fn reduce(&self, mono: &[u32], depth: usize) -> Result<PolyVec> {
        if depth > 64 {
            return Err(Error::Internal(format!("rewriting of {} does not terminate", self.name)));
        }
        let n = self.basis.len();
        if let Some(i) = self.basis.iter().position(|b| b == mono) {
            let mut v = vec![PolyT::zero(); n];
            v[i] = PolyT::one();
            return Ok(v);
        }
        for (lhs, rhs) in &self.rules {
            if lhs.iter().zip(mono).all(|(a, b)| a <= b) {
                let rest: Vec<u32> = mono.iter().zip(lhs).map(|(b, a)| b - a).collect();
                let mut out = vec![PolyT::zero(); n];
                for (c, e, m) in rhs {
                    let prod: Vec<u32> = m.iter().zip(&rest).map(|(a, b)| a + b).collect();
                    let sub = self.reduce(&prod, depth + 1)?;
                    let scale = PolyT::monomial(c.clone(), *e);
                    for (o, p) in out.iter_mut().zip(sub) {
                        *o = &*o + &(&scale * &p);
                    }
                }
                return Ok(out);
            }
        }
        Err(Error::Internal(format!("monomial {mono:?} has no normal form in {}", self.name)))
    }

    pub fn build(&self) -> Result<GradedAlgebra> {
        let n = self.basis.len();
        let basis: Vec<BasisElement> = self
            .basis
            .iter()
            .map(|e| BasisElement {
                name: monomial_name(&self.variables, e),
                degree: e.iter().zip(&self.variables).map(|(&k, (_, d))| i64::from(k) * d).sum(),
            })
            .collect();
        let unit = self
            .basis
            .iter()
            .position(|e| e.iter().all(|&k| k == 0))
            .ok_or_else(|| Error::Internal("presentation basis lacks 1".into()))?;
        let mut products = BTreeMap::new();
        for i in 0..n {
            for j in i..n {
                let m: Vec<u32> = self.basis[i].iter().zip(&self.basis[j]).map(|(a, b)| a + b).collect();
                let v = self.reduce(&m, 0)?;
                if v.iter().any(|p| !p.is_zero()) {
                    products.insert((i, j), v);
                }
            }
        }
        let mut classes = BTreeMap::new();
        for (name, terms) in &self.classes {
            let mut v = vec![PolyT::zero(); n];
            for (c, e, m) in terms {
                let r = self.reduce(m, 0)?;
                let s = PolyT::monomial(c.clone(), *e);
                for (o, p) in v.iter_mut().zip(r) {
                    *o = &*o + &(&s * &p);
                }
            }
            classes.insert(name.clone(), v);
        }
        Ok(GradedAlgebra {
            name: self.name.clone(),
            t_degree: self.t_degree,
            basis,
            unit,
            products,
            classes,
        })
    }
}

/// `Q[x]/(x^k (x^(1+m-k) - (-k)^k T))` with the class `Q = -k x`.
pub fn okm(k: u32, m: u32) -> Result<GradedAlgebra> {
    if k < 1 || k > m {
        return Err(Error::InvalidInput(format!("need 1 <= k <= m, got k={k} m={m}")));
    }
    let c = int((-(k as i64)).pow(k));
    Presentation {
        name: format!("okm_{k}_{m}"),
        t_degree: 2 * i64::from(1 + m - k),
        variables: vec![("x".into(), 2)],
        basis: (0..=m).map(|e| vec![e]).collect(),
        rules: vec![(vec![m + 1], vec![(c, 1, vec![k])])],
        classes: vec![
            ("Q".into(), vec![(int(-(k as i64)), 0, vec![1])]),
            ("x".into(), vec![(int(1), 0, vec![1])]),
        ],
    }
    .build()
}

/// `Q[x1, x2]/(x1^2 + T X, x2^2 + T X)` with `X = x1 + x2` and class `-X`.
pub fn o11() -> Result<GradedAlgebra> {
    let neg_tx = vec![(int(-1), 1, vec![1, 0]), (int(-1), 1, vec![0, 1])];
    Presentation {
        name: "o11".into(),
        t_degree: 2,
        variables: vec![("x1".into(), 2), ("x2".into(), 2)],
        basis: vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]],
        rules: vec![(vec![2, 0], neg_tx.clone()), (vec![0, 2], neg_tx)],
        classes: vec![
            ("negX".into(), vec![(int(-1), 0, vec![1, 0]), (int(-1), 0, vec![0, 1])]),
            ("X".into(), vec![(int(1), 0, vec![1, 0]), (int(1), 0, vec![0, 1])]),
        ],
    }
    .build()
}

/// `Q[x]/(x^2 - T^2)` with the class `x3 = 0`.
pub fn cp1xc() -> Result<GradedAlgebra> {
    Presentation {
        name: "cp1xc".into(),
        t_degree: 2,
        variables: vec![("x".into(), 2)],
        basis: vec![vec![0], vec![1]],
        rules: vec![(vec![2], vec![(int(1), 2, vec![0])])],
        classes: vec![("x3".into(), vec![]), ("x".into(), vec![(int(1), 0, vec![1])])],
    }
    .build()
}

pub fn algebra_fixture_names() -> Vec<&'static str> {
    vec!["okm_1_1", "okm_1_2", "okm_2_3", "o11", "cp1xc"]
}

/// Shipped algebras by name; `okm_K_M` works for any `1 <= K <= M`.
pub fn builtin_algebra(name: &str) -> Result<GradedAlgebra> {
    match name {
        "o11" => o11(),
        "cp1xc" => cp1xc(),
        _ => {
            let parts: Vec<&str> = name.split('_').collect();
            if let ["okm", k, m] = parts.as_slice() {
                if let (Ok(k), Ok(m)) = (k.parse(), m.parse()) {
                    return okm(k, m);
                }
            }
            Err(Error::UnknownFixture(name.to_string()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> PolyT {
        PolyT::from_coeffs(c.iter().map(|&x| int(x)).collect())
    }

    #[test]
    fn fixtures_validate() {
        for name in algebra_fixture_names() {
            let a = builtin_algebra(name).unwrap();
            let bad: Vec<_> = validate_algebra(&a).into_iter().filter(|f| !f.passed).collect();
            assert!(bad.is_empty(), "{name}: {bad:?}");
        }
        assert!(builtin_algebra("okm_3_2").is_err());
        assert!(builtin_algebra("nope").is_err());
    }

    #[test]
    fn o11_products() {
        let a = o11().unwrap();
        let names: Vec<&str> = a.basis.iter().map(|b| b.name.as_str()).collect();
        assert_eq!(names, vec!["1", "x1", "x2", "x1x2"]);
        // independent reduction: (x1 x2)^2 = x1^2 x2^2 = (T X)^2 = T^2 (x1^2 + 2 x1 x2 + x2^2)
        // = T^2 (-2 T X + 2 x1 x2)
        let p = a.product(3, 3);
        assert_eq!(p, vec![poly(&[]), poly(&[0, 0, 0, -2]), poly(&[0, 0, 0, -2]), poly(&[0, 0, 2])]);
        let negx = a.class("negX").unwrap();
        let img = a.multiply(negx, &a.basis_vec(3));
        // -X x1 x2 = -(x1^2 x2 + x1 x2^2) = 2 T x1 x2 - 2 T^2 (x1 + x2)
        assert_eq!(img, vec![poly(&[]), poly(&[0, 0, -2]), poly(&[0, 0, -2]), poly(&[0, 2])]);
    }

    #[test]
    fn okm_relation() {
        let a = okm(2, 3).unwrap();
        // x * x^3 = (-2)^2 T x^2
        assert_eq!(a.product(1, 3), vec![poly(&[]), poly(&[]), poly(&[0, 4]), poly(&[])]);
        assert_eq!(a.t_degree, 4);
        let a = okm(1, 1).unwrap();
        // x^2 = -T x, so x (x + T) = 0
        assert_eq!(a.product(1, 1), vec![poly(&[]), poly(&[0, -1])]);
    }

    #[test]
    fn non_associative_table_is_flagged() {
        let mut a = okm(1, 2).unwrap();
        a.products.insert((1, 2), vec![poly(&[0, 5]), poly(&[]), poly(&[])]);
        let f = validate_algebra(&a);
        assert!(f.iter().any(|x| x.rule == "associative" && !x.passed));
    }

    #[test]
    fn json_round_trip() {
        for name in algebra_fixture_names() {
            let a = builtin_algebra(name).unwrap();
            let b = parse_algebra(&a.to_json()).unwrap();
            assert_eq!(a, b, "{name}");
        }
        assert!(parse_algebra("{\"name\": 1}").is_err());
    }

    #[test]
    fn unit_and_cup() {
        let a = cp1xc().unwrap();
        let id = a.mult_matrix(&a.basis_vec(a.unit));
        assert_eq!(id, super::super::linalg::identity(2));
        assert_eq!(a.cup_product(1, 1), vec![int(0), int(0)]);
        let z = a.mult_matrix(a.class("x3").unwrap());
        assert!(super::super::linalg::is_zero_matrix(&z));
    }
}
