//! Command-line front end: validation, index tables, filtration bounds,
//! page-one approximations, attraction graphs and quantum kernel chains.
//!
//! Exit status is 0 on success, 1 when validation fails or the data is
//! inconsistent, and 2 on usage errors.

mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cstar::bounds::bound_report;
use cstar::graph::{to_dot, validate_graph};
use cstar::indices::{critical_times, index_table};
use cstar::manifold::{builtin_fixture, fixture_names, parse_manifold, validate, ManifoldData};
use cstar::numerics::{parse_rational, parse_slope_list, Rational, Slope};
use cstar::qalg::{algebra_fixture_names, builtin_algebra, parse_algebra, validate_algebra, GradedAlgebra};
use cstar::ssapprox::approximate_e1;
use render::Table;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Md,
    Csv,
    Dot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum QuantumOp {
    Kernels,
    E0,
    Chain,
    Ini,
    Cupcheck,
}

#[derive(Parser, Debug)]
#[command(name = "cstar", version, about = "Index, filtration and quantum-kernel calculator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
#[group(id = "source", required = true, multiple = false)]
struct Source {
    /// Shipped fixture name (manifold or algebra)
    #[arg(long)]
    fixture: Option<String>,
    /// JSON document describing a manifold or an algebra
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct Common {
    #[command(flatten)]
    source: Source,
    #[arg(long, value_enum, default_value = "md")]
    format: Format,
    /// Write to this file instead of standard output
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a manifold or algebra description
    Validate {
        #[command(flatten)]
        common: Common,
    },
    /// Slope indices of every fixed component
    Indices {
        #[command(flatten)]
        common: Common,
        /// Comma-separated slopes such as `0+,1/5+,1-`; defaults to `0+`
        /// and just above every critical time up to `--up-to`
        #[arg(long)]
        slopes: Option<String>,
        #[arg(long, default_value = "1")]
        up_to: String,
    },
    /// Rank bounds for the filtration on windows between outer periods
    Bounds {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "1")]
        up_to: String,
    },
    /// Page-one approximation of the spectral sequence
    E1page {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "1")]
        up_to: String,
    },
    /// Attraction graph checks, ordering, or DOT output
    Graph {
        #[command(flatten)]
        common: Common,
        /// Shorthand for `--format dot`
        #[arg(long)]
        dot: bool,
    },
    /// Kernels of powers of quantum multiplication by a class
    Quantum {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        class: String,
        #[arg(long, value_enum)]
        op: QuantumOp,
    },
    /// Every applicable table in one Markdown document
    Report {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "1")]
        up_to: String,
    },
}

enum Failure {
    Usage(String),
    Data(String),
}

impl From<cstar::Error> for Failure {
    fn from(e: cstar::Error) -> Self {
        use cstar::Error as E;
        match e {
            E::UnknownFixture(_) | E::InvalidInput(_) => Failure::Usage(e.to_string()),
            _ => Failure::Data(e.to_string()),
        }
    }
}

type Outcome = Result<String, Failure>;

enum Loaded {
    Manifold(ManifoldData),
    Algebra(GradedAlgebra),
}

fn load(src: &Source) -> Result<Loaded, Failure> {
    if let Some(name) = &src.fixture {
        if fixture_names().contains(&name.as_str()) {
            return Ok(Loaded::Manifold(builtin_fixture(name)?));
        }
        return match builtin_algebra(name) {
            Ok(a) => Ok(Loaded::Algebra(a)),
            Err(_) => Err(Failure::Usage(format!(
                "unknown fixture {name:?}; manifolds: {}; algebras: {}",
                fixture_names().join(", "),
                algebra_fixture_names().join(", ")
            ))),
        };
    }
    let path = src.input.as_ref().expect("clap requires one source");
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    let is_algebra = serde_json::from_str::<serde_json::Value>(&text)
        .map(|v| v.get("products").is_some())
        .unwrap_or(false);
    if is_algebra {
        Ok(Loaded::Algebra(parse_algebra(&text)?))
    } else {
        Ok(Loaded::Manifold(parse_manifold(&text)?))
    }
}

fn manifold(src: &Source) -> Result<ManifoldData, Failure> {
    match load(src)? {
        Loaded::Manifold(m) => {
            let report = validate(&m);
            if !report.ok() {
                let bad: Vec<String> = report.failures().map(|f| format!("{}: {}", f.rule, f.detail)).collect();
                return Err(Failure::Data(format!("invalid manifold {}:\n  {}", m.name, bad.join("\n  "))));
            }
            Ok(m)
        }
        Loaded::Algebra(a) => Err(Failure::Usage(format!("{} is an algebra, not a manifold", a.name))),
    }
}

fn algebra(src: &Source) -> Result<GradedAlgebra, Failure> {
    match load(src)? {
        Loaded::Algebra(a) => {
            let bad: Vec<String> = validate_algebra(&a)
                .into_iter()
                .filter(|f| !f.passed)
                .map(|f| format!("{}: {}", f.rule, f.detail))
                .collect();
            if !bad.is_empty() {
                return Err(Failure::Data(format!("invalid algebra {}:\n  {}", a.name, bad.join("\n  "))));
            }
            Ok(a)
        }
        Loaded::Manifold(m) => Err(Failure::Usage(format!("{} is a manifold, not an algebra", m.name))),
    }
}

fn tabular(f: Format, command: &str) -> Result<(), Failure> {
    if f == Format::Dot {
        return Err(Failure::Usage(format!("{command} supports md and csv output")));
    }
    Ok(())
}

fn rational(text: &str) -> Result<Rational, Failure> {
    parse_rational(text).map_err(|e| Failure::Usage(e.to_string()))
}

/// `0+` and just above every critical time up to `up_to`.
fn default_slopes(m: &ManifoldData, up_to: &Rational) -> Vec<Slope> {
    std::iter::once(Slope::base())
        .chain(critical_times(m, up_to).into_iter().map(|(t, _)| Slope::above(t)))
        .collect()
}

fn run_validate(c: &Common) -> Outcome {
    tabular(c.format, "validate")?;
    let (name, list) = match load(&c.source)? {
        Loaded::Manifold(m) => {
            let mut list = validate(&m).findings;
            list.extend(validate_graph(&m));
            (m.name, list)
        }
        Loaded::Algebra(a) => (a.name.clone(), validate_algebra(&a)),
    };
    let text = render::findings(&list).render(c.format);
    if list.iter().all(|f| f.passed) {
        Ok(text)
    } else {
        emit(c, &text)?;
        Err(Failure::Data(format!("{name} failed validation")))
    }
}

fn run_indices(c: &Common, slopes: Option<&str>, up_to: &str) -> Outcome {
    tabular(c.format, "indices")?;
    let m = manifold(&c.source)?;
    let slopes = match slopes {
        Some(s) => parse_slope_list(s).map_err(|e| Failure::Usage(e.to_string()))?,
        None => default_slopes(&m, &rational(up_to)?),
    };
    let t = index_table(&m, &slopes);
    Ok(match c.format {
        Format::Csv => t.to_csv(),
        _ => t.to_markdown(),
    })
}

fn run_bounds(c: &Common, up_to: &str) -> Outcome {
    tabular(c.format, "bounds")?;
    let m = manifold(&c.source)?;
    let r = bound_report(&m, &rational(up_to)?)?;
    Ok(match c.format {
        Format::Csv => r.to_csv(),
        _ => r.to_markdown(),
    })
}

fn run_e1page(c: &Common, up_to: &str) -> Outcome {
    tabular(c.format, "e1page")?;
    let m = manifold(&c.source)?;
    let e = approximate_e1(&m, &rational(up_to)?)?;
    Ok(match c.format {
        Format::Csv => e.to_csv(),
        _ => e.to_markdown(),
    })
}

fn run_graph(c: &Common, dot: bool) -> Outcome {
    let m = manifold(&c.source)?;
    let checks = validate_graph(&m);
    if !checks.iter().all(|f| f.passed) {
        emit(c, &render::findings(&checks).render(if c.format == Format::Csv { Format::Csv } else { Format::Md }))?;
        return Err(Failure::Data(format!("attraction graph of {} failed its checks", m.name)));
    }
    if dot || c.format == Format::Dot {
        return Ok(to_dot(&m));
    }
    let ab = render::ab_table(&m);
    Ok(match c.format {
        Format::Csv => ab.to_csv(),
        _ => format!(
            "## Moment-map order\n\n{}\n## Graph checks\n\n{}",
            ab.to_markdown(),
            render::findings(&checks).to_markdown()
        ),
    })
}

fn quantum_table(a: &GradedAlgebra, class: &str, op: QuantumOp) -> cstar::Result<Table> {
    match op {
        QuantumOp::Kernels => render::kernels(a, class),
        QuantumOp::E0 => render::e0(a, class),
        QuantumOp::Chain => render::chain(a, class),
        QuantumOp::Ini => render::ini(a, class),
        QuantumOp::Cupcheck => render::cupcheck(a, class),
    }
}

fn run_quantum(c: &Common, class: &str, op: QuantumOp) -> Outcome {
    tabular(c.format, "quantum")?;
    let a = algebra(&c.source)?;
    if !a.classes.contains_key(class) {
        let known: Vec<&str> = a.classes.keys().map(String::as_str).collect();
        return Err(Failure::Usage(format!("{} has no class {class:?}; known: {}", a.name, known.join(", "))));
    }
    Ok(quantum_table(&a, class, op)?.render(c.format))
}

fn run_report(c: &Common, up_to: &str) -> Outcome {
    if c.format != Format::Md {
        return Err(Failure::Usage("report supports md output only".into()));
    }
    let mut out = String::new();
    match load(&c.source)? {
        Loaded::Manifold(_) => {
            let m = manifold(&c.source)?;
            let up = rational(up_to)?;
            let mut checks = validate(&m).findings;
            checks.extend(validate_graph(&m));
            out.push_str(&format!("# {}\n\n## Validation\n\n{}\n", m.name, render::findings(&checks).to_markdown()));
            out.push_str(&format!("## Indices\n\n{}\n", index_table(&m, &default_slopes(&m, &up)).to_markdown()));
            out.push_str(&format!("## Bounds\n\n{}\n", bound_report(&m, &up)?.to_markdown()));
            if m.c1_zero {
                out.push_str(&format!("## Page one\n\n{}\n", approximate_e1(&m, &up)?.to_markdown()));
            }
            out.push_str(&format!("## Moment-map order\n\n{}", render::ab_table(&m).to_markdown()));
        }
        Loaded::Algebra(_) => {
            let a = algebra(&c.source)?;
            out.push_str(&format!("# {}\n\n## Validation\n\n{}", a.name, render::findings(&validate_algebra(&a)).to_markdown()));
            for class in a.classes.keys() {
                out.push_str(&format!("\n## Class {class}\n"));
                for (title, op) in [
                    ("Kernel chain", QuantumOp::Chain),
                    ("Generalized zero eigenspace", QuantumOp::E0),
                    ("Kernels", QuantumOp::Kernels),
                    ("Initial terms", QuantumOp::Ini),
                    ("Ideal checks", QuantumOp::Cupcheck),
                ] {
                    out.push_str(&format!("\n### {title}\n\n{}", quantum_table(&a, class, op)?.to_markdown()));
                }
            }
        }
    }
    Ok(out)
}

fn emit(c: &Common, text: &str) -> Result<(), Failure> {
    match &c.output {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (common, result) = match &cli.command {
        Command::Validate { common } => (common, run_validate(common)),
        Command::Indices { common, slopes, up_to } => (common, run_indices(common, slopes.as_deref(), up_to)),
        Command::Bounds { common, up_to } => (common, run_bounds(common, up_to)),
        Command::E1page { common, up_to } => (common, run_e1page(common, up_to)),
        Command::Graph { common, dot } => (common, run_graph(common, *dot)),
        Command::Quantum { common, class, op } => (common, run_quantum(common, class, *op)),
        Command::Report { common, up_to } => (common, run_report(common, up_to)),
    };
    let failure = match result.and_then(|text| emit(common, &text)) {
        Ok(()) => return ExitCode::SUCCESS,
        Err(f) => f,
    };
    match failure {
        Failure::Usage(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Failure::Data(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
