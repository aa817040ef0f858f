use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use iagraph::graph::{
    build_ia, build_ia_domain_product, build_ia_zn_symbolic, build_torsion, build_total,
};
use iagraph::harness::{reports_to_csv, Report};
use iagraph::{
    check_subject, invariants, is_isomorphic, sweep, Caps, CheckId, Error, Family, FiniteRing,
    Graph, GraphKind, InvariantReport, RingSpec, Subject, SweepConfig,
};

#[derive(Parser)]
#[command(name = "iagraph", version, about = "Compressed intersection annihilator graphs of finite commutative rings")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Write output here instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    #[command(flatten)]
    caps: CapArgs,
}

#[derive(Args)]
struct CapArgs {
    /// Largest ring order accepted by the parser.
    #[arg(long, global = true, env = "IAGRAPH_RING_CAP")]
    ring_cap: Option<u64>,
    /// Largest ring order scanned element by element.
    #[arg(long, global = true, env = "IAGRAPH_BRUTE_CAP")]
    brute_cap: Option<u64>,
    /// Largest vertex count of a built graph.
    #[arg(long, global = true, env = "IAGRAPH_VERTEX_CAP")]
    vertex_cap: Option<usize>,
    /// Largest vertex count for isomorphism search.
    #[arg(long, global = true, env = "IAGRAPH_ISO_CAP")]
    iso_cap: Option<usize>,
    /// Largest ring order for torsion-graph checks.
    #[arg(long, global = true, env = "IAGRAPH_TORSION_CAP")]
    torsion_cap: Option<u64>,
    /// Largest ring order for total-graph checks.
    #[arg(long, global = true, env = "IAGRAPH_TOTAL_CAP")]
    total_cap: Option<u64>,
    /// Largest ring order for the generated-subring check.
    #[arg(long, global = true, env = "IAGRAPH_SUBRING_CAP")]
    subring_cap: Option<u64>,
}

impl CapArgs {
    fn resolve(&self) -> Result<Caps, Error> {
        let mut c = Caps::default();
        macro_rules! set {
            ($($arg:ident => $field:ident),*) => {
                $(if let Some(v) = self.$arg { c.$field = v; })*
            };
        }
        set!(ring_cap => ring_order, brute_cap => brute_order, vertex_cap => graph_vertices,
             iso_cap => iso_vertices, torsion_cap => torsion_order, total_cap => total_order,
             subring_cap => subring_order);
        c.validate()?;
        Ok(c)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Build a graph and print it as DOT or JSON.
    Build {
        #[command(flatten)]
        target: Target,
        #[arg(long, value_enum, default_value = "dot")]
        format: Format,
    },
    /// Compute graph invariants.
    Invariants {
        #[command(flatten)]
        target: Target,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Run theorem checks on one ring.
    Verify {
        #[arg(long)]
        ring: Option<String>,
        /// Check a product of this many domains instead of an explicit ring.
        #[arg(long, conflicts_with = "ring")]
        factors: Option<usize>,
        /// Treat `Z<n>` through its divisor lattice, without enumerating elements.
        #[arg(long, requires = "ring")]
        symbolic: bool,
        #[arg(long, default_value = "all")]
        checks: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Run theorem checks over a family of rings.
    Sweep {
        #[arg(long, value_enum)]
        family: FamilyArg,
        /// Smallest modulus, for the Z_n families.
        #[arg(long, default_value_t = 2)]
        min: u64,
        /// Largest modulus, ring order, or domain count.
        #[arg(long)]
        max: u64,
        /// Largest number of factors, for the product families.
        #[arg(long, default_value_t = 3)]
        factors: usize,
        #[arg(long, default_value = "all")]
        checks: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Worker threads; 0 uses every core.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
    /// Decide whether the graphs of two rings are isomorphic.
    Iso {
        /// Give exactly twice.
        #[arg(long, num_args = 1, required = true)]
        ring: Vec<String>,
        #[arg(long, value_enum, default_value = "ia")]
        graph: GraphArg,
        /// Exit with status 1 when the verdict differs.
        #[arg(long, value_enum)]
        expect: Option<Expect>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

#[derive(Args)]
struct Target {
    /// Ring such as `Z12` or `Z4xZ4`.
    #[arg(long, required_unless_present = "factors")]
    ring: Option<String>,
    #[arg(long, value_enum, default_value = "ia")]
    graph: GraphArg,
    /// Number of domains, for `--graph domain-product`.
    #[arg(long)]
    factors: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Dot,
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GraphArg {
    Ia,
    Torsion,
    Total,
    ZnSymbolic,
    DomainProduct,
}

impl GraphArg {
    fn kind(self) -> GraphKind {
        match self {
            GraphArg::Ia => GraphKind::Ia,
            GraphArg::Torsion => GraphKind::Torsion,
            GraphArg::Total => GraphKind::Total,
            GraphArg::ZnSymbolic => GraphKind::ZnSymbolic,
            GraphArg::DomainProduct => GraphKind::DomainProduct,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Zn,
    ZnSymbolic,
    Products,
    LocalProducts,
    DomainProducts,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Expect {
    Iso,
    NonIso,
}

/// Text to emit and whether the run counts as a failure (exit 1).
struct Outcome {
    text: String,
    failed: bool,
}

fn ok(text: String) -> Outcome {
    Outcome { text, failed: false }
}

fn usage(msg: impl Into<String>) -> Error {
    Error::Config(msg.into())
}

fn pretty(v: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("output serializes");
    s.push('\n');
    s
}

/// Build the requested graph; returns it with a display name for the ring.
fn graph_for(ring: Option<&str>, kind: GraphArg, factors: Option<usize>, caps: &Caps) -> Result<(String, Graph), Error> {
    if kind == GraphArg::DomainProduct {
        let k = factors.ok_or_else(|| usage("--graph domain-product needs --factors"))?;
        return Ok((format!("domains{k}"), build_ia_domain_product(k, caps)?));
    }
    if factors.is_some() {
        return Err(usage("--factors only applies to --graph domain-product"));
    }
    let text = ring.ok_or_else(|| usage("--ring is required"))?;
    if kind == GraphArg::ZnSymbolic {
        let spec = RingSpec::parse(text, caps)?;
        if spec.arity() != 1 {
            return Err(usage("--graph zn-symbolic needs a ring of the form Z<n>"));
        }
        let g = build_ia_zn_symbolic(&spec.factorizations()[0], caps)?;
        return Ok((spec.to_string(), g));
    }
    let r = FiniteRing::parse(text, caps)?;
    let g = match kind {
        GraphArg::Ia => build_ia(&r, caps)?,
        GraphArg::Torsion => build_torsion(&r, caps)?,
        GraphArg::Total => build_total(&r, caps)?,
        GraphArg::ZnSymbolic | GraphArg::DomainProduct => unreachable!(),
    };
    Ok((r.name(), g))
}

fn invariants_json(ring: &str, kind: GraphKind, r: &InvariantReport) -> Value {
    let mut v = json!({ "ring": ring, "graph_kind": kind });
    let body = serde_json::to_value(r).expect("report serializes");
    if let (Some(obj), Value::Object(fields)) = (v.as_object_mut(), body) {
        obj.extend(fields);
    }
    v
}

fn reports_output(reports: &[Report], format: Format) -> Result<String, Error> {
    match format {
        Format::Json if reports.len() == 1 => Ok(pretty(&reports[0])),
        Format::Json => Ok(pretty(&reports)),
        Format::Csv => reports_to_csv(reports),
        _ => Err(usage("this command supports --format json or csv")),
    }
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    let caps = cli.caps.resolve()?;
    match &cli.command {
        Command::Build { target, format } => {
            let (name, g) = graph_for(target.ring.as_deref(), target.graph, target.factors, &caps)?;
            let kind = target.graph.kind();
            match format {
                Format::Dot => Ok(ok(g.to_dot(kind))),
                Format::Json => Ok(ok(pretty(&g.to_json(&name, kind)))),
                _ => Err(usage("build supports --format dot or json")),
            }
        }
        Command::Invariants { target, format } => {
            let (name, g) = graph_for(target.ring.as_deref(), target.graph, target.factors, &caps)?;
            let kind = target.graph.kind();
            let r = invariants(&g);
            match format {
                Format::Json => Ok(ok(pretty(&invariants_json(&name, kind, &r)))),
                Format::Csv => Ok(ok(format!(
                    "ring,graph_kind,{}\n{},{},{}\n",
                    InvariantReport::CSV_HEADER,
                    name,
                    kind.as_str(),
                    r.csv_row()
                ))),
                _ => Err(usage("invariants supports --format json or csv")),
            }
        }
        Command::Verify { ring, factors, symbolic, checks, format } => {
            let checks = CheckId::parse_list(checks)?;
            let subject = match (ring, factors) {
                (_, Some(k)) => {
                    if *k < 2 {
                        return Err(usage("--factors must be at least 2"));
                    }
                    Subject::DomainProduct(*k)
                }
                (Some(text), None) if *symbolic => {
                    let spec = RingSpec::parse(text, &caps)?;
                    if spec.arity() != 1 {
                        return Err(usage("--symbolic needs a ring of the form Z<n>"));
                    }
                    Subject::SymbolicZn(spec.factorizations()[0].clone())
                }
                (Some(text), None) => Subject::Ring(FiniteRing::parse(text, &caps)?),
                (None, None) => return Err(usage("verify needs --ring or --factors")),
            };
            let report = check_subject(&subject, &checks, &caps);
            let failed = report.summary.failed > 0;
            Ok(Outcome { text: reports_output(std::slice::from_ref(&report), *format)?, failed })
        }
        Command::Sweep { family, min, max, factors, checks, format, jobs } => {
            let family = match family {
                FamilyArg::Zn => Family::ZnRange { min: *min, max: *max },
                FamilyArg::ZnSymbolic => Family::ZnSymbolicRange { min: *min, max: *max },
                FamilyArg::Products => Family::Products { max_order: *max, max_factors: *factors },
                FamilyArg::LocalProducts => {
                    Family::LocalProducts { max_order: *max, max_factors: *factors }
                }
                FamilyArg::DomainProducts => Family::DomainProducts { max_k: *max as usize },
            };
            let mut cfg = SweepConfig::new(family, CheckId::parse_list(checks)?);
            cfg.caps = caps;
            cfg.jobs = *jobs;
            let s = sweep(&cfg)?;
            let text = match format {
                Format::Json => pretty(&s),
                Format::Csv => s.to_csv()?,
                _ => return Err(usage("sweep supports --format json or csv")),
            };
            Ok(Outcome { text, failed: !s.passed() })
        }
        Command::Iso { ring, graph, expect, format } => {
            if ring.len() != 2 {
                return Err(usage("iso needs --ring exactly twice"));
            }
            if *graph == GraphArg::DomainProduct {
                return Err(usage("iso compares two rings; domain-product is not supported"));
            }
            let (na, ga) = graph_for(Some(&ring[0]), *graph, None, &caps)?;
            let (nb, gb) = graph_for(Some(&ring[1]), *graph, None, &caps)?;
            let map = is_isomorphic(&ga, &gb, &caps)?;
            let verdict = map.is_some();
            let failed = match expect {
                Some(Expect::Iso) => !verdict,
                Some(Expect::NonIso) => verdict,
                None => false,
            };
            let pairs: Vec<(String, String)> = map
                .iter()
                .flatten()
                .enumerate()
                .map(|(i, &j)| (ga.label(i).to_owned(), gb.label(j).to_owned()))
                .collect();
            let text = match format {
                Format::Text => {
                    let mut s = format!("isomorphic: {verdict}\n");
                    for (a, b) in &pairs {
                        s.push_str(&format!("  {a} -> {b}\n"));
                    }
                    s
                }
                Format::Json => pretty(&json!({
                    "rings": [na, nb],
                    "graph_kind": graph.kind(),
                    "isomorphic": verdict,
                    "mapping": map.as_ref().map(|_| pairs.iter().map(|(a, b)| json!([a, b])).collect::<Vec<_>>()),
                })),
                _ => return Err(usage("iso supports --format text or json")),
            };
            Ok(Outcome { text, failed })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let out = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let written = match &cli.output {
        Some(path) => fs::write(path, &out.text),
        None => {
            use std::io::Write;
            std::io::stdout().write_all(out.text.as_bytes())
        }
    };
    if let Err(e) = written {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            return ExitCode::from(u8::from(out.failed));
        }
        eprintln!("error: cannot write output: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(u8::from(out.failed))
}
