use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use super::{check_subject, CheckId, Report, Status, Subject, Summary};
use crate::arith::Factorization;
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::ring::RingSpec;

/// A family of rings enumerated in a fixed order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum Family {
    /// `ℤ_n`, `min ≤ n ≤ max`, built element by element.
    ZnRange { min: u64, max: u64 },
    /// `ℤ_n`, `min ≤ n ≤ max`, via the divisor-lattice model.
    ZnSymbolicRange { min: u64, max: u64 },
    /// `ℤ_{n₁}×…×ℤ_{n_k}`, `2 ≤ k ≤ max_factors`, `2 ≤ n₁ ≤ … ≤ n_k`,
    /// total order at most `max_order`.
    Products { max_order: u64, max_factors: usize },
    /// As `Products`, every factor `ℤ_{p^e}` with `e ≥ 2`.
    LocalProducts { max_order: u64, max_factors: usize },
    /// Products of `k` domains, `2 ≤ k ≤ max_k`.
    DomainProducts { max_k: usize },
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::ZnRange { .. } => "zn",
            Family::ZnSymbolicRange { .. } => "zn-symbolic",
            Family::Products { .. } => "products",
            Family::LocalProducts { .. } => "local-products",
            Family::DomainProducts { .. } => "domain-products",
        }
    }

    fn validate(&self, caps: &Caps) -> Result<()> {
        let bad = |m: String| Err(Error::Config(m));
        match *self {
            Family::ZnRange { min, max } | Family::ZnSymbolicRange { min, max } => {
                if min < 2 || min > max {
                    return bad(format!("modulus range {min}..={max} is empty or below 2"));
                }
                let cap = match self {
                    Family::ZnRange { .. } => caps.brute_order,
                    _ => caps.ring_order,
                };
                if max > cap {
                    return Err(Error::cap("sweep modulus", max, cap));
                }
            }
            Family::Products { max_order, max_factors }
            | Family::LocalProducts { max_order, max_factors } => {
                if max_factors < 2 {
                    return bad(format!("max factors must be at least 2, got {max_factors}"));
                }
                if max_order < 4 {
                    return bad(format!("max order must be at least 4, got {max_order}"));
                }
                if max_order > caps.brute_order {
                    return Err(Error::cap("sweep ring order", max_order, caps.brute_order));
                }
            }
            Family::DomainProducts { max_k } => {
                if max_k < 2 {
                    return bad(format!("max factors must be at least 2, got {max_k}"));
                }
                let verts = if max_k >= 63 { u64::MAX } else { (1u64 << max_k) - 2 };
                if verts > caps.graph_vertices as u64 {
                    return Err(Error::cap("vertex count", verts, caps.graph_vertices as u64));
                }
            }
        }
        Ok(())
    }

    /// Members in sweep order: ascending order, then factor lists
    /// lexicographically.
    pub fn subjects(&self, caps: &Caps) -> Result<Vec<Subject>> {
        self.validate(caps)?;
        Ok(match *self {
            Family::ZnRange { min, max } => (min..=max)
                .map(|n| Ok(Subject::Ring(RingSpec::new(vec![n])?.into())))
                .collect::<Result<_>>()?,
            Family::ZnSymbolicRange { min, max } => (min..=max)
                .map(|n| Subject::SymbolicZn(Factorization::of(n)))
                .collect(),
            Family::Products { max_order, max_factors } => {
                product_subjects(max_order, max_factors, |_| true)?
            }
            Family::LocalProducts { max_order, max_factors } => {
                product_subjects(max_order, max_factors, |n| {
                    let f = Factorization::of(n);
                    f.is_prime_power() && f.big_omega() >= 2
                })?
            }
            Family::DomainProducts { max_k } => (2..=max_k).map(Subject::DomainProduct).collect(),
        })
    }
}

fn product_subjects(
    max_order: u64,
    max_factors: usize,
    allowed: impl Fn(u64) -> bool,
) -> Result<Vec<Subject>> {
    let factors: Vec<u64> = (2..=max_order / 2).filter(|&n| allowed(n)).collect();
    let mut out: Vec<Vec<u64>> = Vec::new();
    let mut cur = Vec::new();
    extend_products(&factors, 0, 1, max_order, max_factors, &mut cur, &mut out);
    out.sort_by_key(|fs| (fs.iter().product::<u64>(), fs.clone()));
    out.into_iter()
        .map(|fs| Ok(Subject::Ring(RingSpec::new(fs)?.into())))
        .collect()
}

fn extend_products(
    factors: &[u64],
    start: usize,
    order: u64,
    max_order: u64,
    max_factors: usize,
    cur: &mut Vec<u64>,
    out: &mut Vec<Vec<u64>>,
) {
    if cur.len() >= 2 {
        out.push(cur.clone());
    }
    if cur.len() == max_factors {
        return;
    }
    for (i, &f) in factors.iter().enumerate().skip(start) {
        if order * f > max_order {
            break;
        }
        cur.push(f);
        extend_products(factors, i, order * f, max_order, max_factors, cur, out);
        cur.pop();
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepConfig {
    #[serde(flatten)]
    pub family: Family,
    pub checks: Vec<CheckId>,
    #[serde(skip)]
    pub caps: Caps,
    /// Worker threads; 0 picks the default.
    #[serde(skip)]
    pub jobs: usize,
}

impl SweepConfig {
    pub fn new(family: Family, checks: Vec<CheckId>) -> Self {
        SweepConfig { family, checks, caps: Caps::default(), jobs: 0 }
    }

    pub fn validate(&self) -> Result<()> {
        self.caps.validate()?;
        if self.checks.is_empty() {
            return Err(Error::Config("no checks selected".into()));
        }
        self.family.validate(&self.caps)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepFailure {
    pub ring: String,
    pub check_id: CheckId,
    pub witness: Option<Value>,
}

/// Skips sharing a check and reason, with one sample ring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SkipGroup {
    pub check_id: CheckId,
    pub reason: String,
    pub count: usize,
    pub first_ring: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Aggregate {
    pub rings: usize,
    pub summary: Summary,
    pub per_check: BTreeMap<String, Summary>,
    pub failures: Vec<SweepFailure>,
    pub skips: Vec<SkipGroup>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Sweep {
    pub config: SweepConfig,
    pub aggregate: Aggregate,
    pub reports: Vec<Report>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl Sweep {
    pub fn passed(&self) -> bool {
        self.aggregate.failures.is_empty()
    }

    /// One row per ring and check: `ring,check_id,applicable,passed,witness`.
    pub fn to_csv(&self) -> Result<String> {
        reports_to_csv(&self.reports)
    }
}

/// CSV with columns `ring,check_id,applicable,passed,witness`. The witness
/// column holds the failure witness as JSON, or `skipped: <reason>`.
pub fn reports_to_csv(reports: &[Report]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::Config(format!("csv: {e}"));
    w.write_record(["ring", "check_id", "applicable", "passed", "witness"])
        .map_err(io)?;
    for rep in reports {
        for c in &rep.checks {
            let witness = match (&c.status, &c.witness, &c.note) {
                (_, Some(v), _) => v.to_string(),
                (Status::Skipped, None, Some(reason)) => format!("skipped: {reason}"),
                _ => String::new(),
            };
            w.write_record([
                rep.ring.as_str(),
                c.id.as_str(),
                if c.applicable { "true" } else { "false" },
                if c.passed { "true" } else { "false" },
                witness.as_str(),
            ])
            .map_err(io)?;
        }
    }
    let bytes = w.into_inner().map_err(|e| Error::Config(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// Run every selected check on every ring of the family. Reports come back
/// in enumeration order whatever the worker count.
pub fn sweep(config: &SweepConfig) -> Result<Sweep> {
    config.validate()?;
    let start = Instant::now();
    let subjects = config.family.subjects(&config.caps)?;
    let run = || -> Vec<Report> {
        subjects
            .par_iter()
            .map(|s| check_subject(s, &config.checks, &config.caps))
            .collect()
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs)
        .build()
        .map_err(|e| Error::Config(format!("worker pool: {e}")))?;
    let reports = pool.install(run);
    Ok(Sweep {
        config: config.clone(),
        aggregate: aggregate(&reports),
        reports,
        elapsed: start.elapsed(),
    })
}

fn aggregate(reports: &[Report]) -> Aggregate {
    let mut summary = Summary::default();
    let mut per_check: BTreeMap<String, Summary> = BTreeMap::new();
    let mut failures = Vec::new();
    let mut skips: BTreeMap<(CheckId, String), SkipGroup> = BTreeMap::new();
    for rep in reports {
        summary.merge(&rep.summary);
        for c in &rep.checks {
            per_check.entry(c.id.as_str().to_owned()).or_default().add(c.status);
            match c.status {
                Status::Failed => failures.push(SweepFailure {
                    ring: rep.ring.clone(),
                    check_id: c.id,
                    witness: c.witness.clone(),
                }),
                Status::Skipped => {
                    let reason = generic_reason(c.note.as_deref().unwrap_or(""));
                    skips
                        .entry((c.id, reason.clone()))
                        .or_insert_with(|| SkipGroup {
                            check_id: c.id,
                            reason,
                            count: 0,
                            first_ring: rep.ring.clone(),
                        })
                        .count += 1;
                }
                _ => {}
            }
        }
    }
    Aggregate {
        rings: reports.len(),
        summary,
        per_check,
        failures,
        skips: skips.into_values().collect(),
    }
}

/// Cap messages carry the offending size; group on the rest.
fn generic_reason(note: &str) -> String {
    match note.split_once(" is ") {
        Some((what, rest)) if rest.contains("above the configured cap") => {
            let cap = rest.rsplit(' ').next().unwrap_or("");
            format!("{what} above the configured cap of {cap}")
        }
        _ => note.to_owned(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(f: Family) -> Vec<String> {
        f.subjects(&Caps::default()).unwrap().iter().map(Subject::name).collect()
    }

    #[test]
    fn product_enumeration_order() {
        let got = names(Family::Products { max_order: 12, max_factors: 3 });
        assert_eq!(got, ["Z2xZ2", "Z2xZ3", "Z2xZ2xZ2", "Z2xZ4", "Z3xZ3", "Z2xZ5", "Z2xZ2xZ3", "Z2xZ6", "Z3xZ4"]);
        let local = names(Family::LocalProducts { max_order: 64, max_factors: 3 });
        assert_eq!(local, ["Z4xZ4", "Z4xZ8", "Z4xZ9", "Z4xZ4xZ4", "Z4xZ16", "Z8xZ8"]);
    }

    #[test]
    fn bounds_are_validated() {
        let caps = Caps::default();
        assert!(Family::ZnRange { min: 1, max: 10 }.subjects(&caps).is_err());
        assert!(Family::ZnRange { min: 10, max: 9 }.subjects(&caps).is_err());
        assert!(Family::ZnRange { min: 2, max: 10_000 }.subjects(&caps).unwrap_err().is_cap_exceeded());
        assert!(Family::Products { max_order: 100, max_factors: 1 }.subjects(&caps).is_err());
        assert!(Family::DomainProducts { max_k: 13 }.subjects(&caps).unwrap_err().is_cap_exceeded());
        let cfg = SweepConfig::new(Family::ZnRange { min: 2, max: 5 }, vec![]);
        assert!(sweep(&cfg).is_err());
    }

    #[test]
    fn zn_sweep_is_clean_and_deterministic() {
        let mut cfg = SweepConfig::new(Family::ZnRange { min: 2, max: 100 }, CheckId::ALL.to_vec());
        cfg.jobs = 4;
        let a = sweep(&cfg).unwrap();
        assert_eq!(a.reports.len(), 99);
        // only prime cubes break the girth-3 conclusion
        let bad: Vec<(&str, CheckId)> =
            a.aggregate.failures.iter().map(|f| (f.ring.as_str(), f.check_id)).collect();
        assert_eq!(bad, [("Z8", CheckId::ThreePrimes), ("Z27", CheckId::ThreePrimes)]);
        cfg.jobs = 1;
        let b = sweep(&cfg).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        assert_eq!(a.to_csv().unwrap(), b.to_csv().unwrap());
    }

    #[test]
    fn skips_are_grouped() {
        let mut cfg = SweepConfig::new(
            Family::ZnRange { min: 2, max: 40 },
            vec![CheckId::TorsionDiam],
        );
        cfg.caps.torsion_order = 30;
        let s = sweep(&cfg).unwrap();
        assert_eq!(s.aggregate.skips.len(), 1);
        let g = &s.aggregate.skips[0];
        assert_eq!((g.count, g.first_ring.as_str()), (10, "Z31"));
        assert_eq!(g.reason, "torsion ring order above the configured cap of 30");
        assert!(s.to_csv().unwrap().contains("Z31,T3.torsion-diam,false,false,\"skipped: torsion ring order is 31,"));
    }
}
