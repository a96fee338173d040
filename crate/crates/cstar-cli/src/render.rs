//! Plain tables rendered as Markdown or CSV, and the per-command tables
//! that have no renderer in the library.

use std::fmt::Write;

use cstar::graph::{ab_ideal_ranks, ab_order};
use cstar::manifold::{Finding, ManifoldData};
use cstar::numerics::fmt_rational;
use cstar::qalg::{
    chain_summary, cup_ideal_check, ini_specialize, kernel_chain, GradedAlgebra, IdealCheck,
    Subspace,
};

use crate::Format;

pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(headers: &[&str]) -> Self {
        Table {
            headers: headers.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    pub fn to_markdown(&self) -> String {
        let cell = |s: &String| s.replace('|', "\\|");
        let mut out = String::new();
        let _ = writeln!(out, "| {} |", self.headers.iter().map(cell).collect::<Vec<_>>().join(" | "));
        let _ = writeln!(out, "|{}", "---|".repeat(self.headers.len()));
        for r in &self.rows {
            let _ = writeln!(out, "| {} |", r.iter().map(cell).collect::<Vec<_>>().join(" | "));
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let line = |r: &[String]| r.iter().map(|s| cstar::csv_field(s)).collect::<Vec<_>>().join(",");
        let mut out = line(&self.headers);
        out.push('\n');
        for r in &self.rows {
            out.push_str(&line(r));
            out.push('\n');
        }
        out
    }

    pub fn render(&self, f: Format) -> String {
        match f {
            Format::Csv => self.to_csv(),
            _ => self.to_markdown(),
        }
    }
}

fn verdict(ok: bool) -> String {
    if ok { "PASS" } else { "FAIL" }.to_string()
}

pub fn findings(list: &[Finding]) -> Table {
    let mut t = Table::new(&["rule", "result", "detail"]);
    for f in list {
        t.push(vec![f.rule.clone(), verdict(f.passed), f.detail.clone()]);
    }
    t
}

fn ranks_text(r: &cstar::indices::GradedRanks) -> String {
    let parts: Vec<String> = r.iter().filter(|(_, &v)| v > 0).map(|(d, v)| format!("{d}:{v}")).collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" ")
    }
}

/// Moment-map groups in increasing order with the ranks of the ideal
/// spanned by each group and everything above it.
pub fn ab_table(m: &ManifoldData) -> Table {
    let mut t = Table::new(&["H", "components", "ideal ranks"]);
    let ranks = ab_ideal_ranks(m);
    for ((h, names), r) in ab_order(m).iter().zip(&ranks) {
        t.push(vec![fmt_rational(h), names.join(" "), ranks_text(r)]);
    }
    t
}

/// `c1*b1 + c2*b2 + ...` with unit coefficients and the unit basis
/// element left implicit.
fn combination(coeffs: &[String], names: &[&str]) -> String {
    let mut out = String::new();
    for (c, b) in coeffs.iter().zip(names) {
        if c == "0" {
            continue;
        }
        let (neg, mag) = match c.strip_prefix('-') {
            Some(rest) if !rest.contains(' ') => (true, rest.to_string()),
            _ => (false, c.clone()),
        };
        let mag = if mag.contains(' ') { format!("({mag})") } else { mag };
        let term = match (mag.as_str(), *b) {
            (m, "1") => m.to_string(),
            ("1", b) => b.to_string(),
            (m, b) => format!("{m}*{b}"),
        };
        if out.is_empty() {
            out = if neg { format!("-{term}") } else { term };
        } else {
            out.push_str(if neg { " - " } else { " + " });
            out.push_str(&term);
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

fn basis_names(a: &GradedAlgebra) -> Vec<&str> {
    a.basis.iter().map(|b| b.name.as_str()).collect()
}

fn basis_text(a: &GradedAlgebra, s: &Subspace) -> String {
    let names = basis_names(a);
    let rows: Vec<String> = s
        .cleared_rows()
        .iter()
        .map(|r| combination(&r.iter().map(|p| p.to_string()).collect::<Vec<_>>(), &names))
        .collect();
    format!("{{{}}}", rows.join(", "))
}

pub fn kernels(a: &GradedAlgebra, class: &str) -> cstar::Result<Table> {
    let chain = kernel_chain(a, a.class(class)?);
    let mut t = Table::new(&["N", "dim", "basis"]);
    for (n, k) in chain.iter().enumerate() {
        t.push(vec![n.to_string(), k.dim().to_string(), basis_text(a, k)]);
    }
    Ok(t)
}

pub fn e0(a: &GradedAlgebra, class: &str) -> cstar::Result<Table> {
    let s = chain_summary(a, class)?;
    let chain = kernel_chain(a, a.class(class)?);
    let mut t = Table::new(&["class", "stabilization index", "E0 dim", "sh rank", "E0 basis"]);
    t.push(vec![
        class.to_string(),
        s.stabilization_index.to_string(),
        s.e0_dim.to_string(),
        s.sh_rank.to_string(),
        basis_text(a, chain.last().expect("chain starts at zero")),
    ]);
    Ok(t)
}

/// Kernel dimensions up to stabilization, then the whole algebra at `∞`.
pub fn chain(a: &GradedAlgebra, class: &str) -> cstar::Result<Table> {
    let s = chain_summary(a, class)?;
    let mut t = Table::new(&["N", "dim"]);
    for (n, d) in s.dims.iter().enumerate() {
        t.push(vec![n.to_string(), d.to_string()]);
    }
    t.push(vec!["∞".into(), s.ambient.to_string()]);
    Ok(t)
}

pub fn ini(a: &GradedAlgebra, class: &str) -> cstar::Result<Table> {
    let chain = kernel_chain(a, a.class(class)?);
    let names = basis_names(a);
    let mut t = Table::new(&["N", "dim", "initial rank", "rounds", "initial span"]);
    for (n, k) in chain.iter().enumerate() {
        let s = ini_specialize(k)?;
        let rows: Vec<String> = s
            .rows
            .iter()
            .map(|r| combination(r, &names))
            .collect();
        t.push(vec![
            n.to_string(),
            k.dim().to_string(),
            s.rank.to_string(),
            s.rounds.to_string(),
            format!("{{{}}}", rows.join(", ")),
        ]);
    }
    Ok(t)
}

pub fn cupcheck(a: &GradedAlgebra, class: &str) -> cstar::Result<Table> {
    let chain = kernel_chain(a, a.class(class)?);
    let mut t = Table::new(&["N", "dim", "quantum ideal", "cup ideal", "initial cup ideal"]);
    for (n, k) in chain.iter().enumerate() {
        let mut row = vec![n.to_string(), k.dim().to_string()];
        for mode in [IdealCheck::Quantum, IdealCheck::Cup, IdealCheck::InitialCup] {
            let ok = cup_ideal_check(a, k, mode)?.iter().all(|f| f.passed);
            row.push(verdict(ok));
        }
        t.push(row);
    }
    Ok(t)
}
