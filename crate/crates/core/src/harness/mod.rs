//! Executable theorem checks over single rings and ring families.

mod checks;
mod sweep;

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::Serialize;
use serde_json::Value;

use crate::arith::Factorization;
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::ring::FiniteRing;

pub use checks::embedding_check;
pub use sweep::{reports_to_csv, sweep, Aggregate, Family, SkipGroup, Sweep, SweepConfig, SweepFailure};

macro_rules! check_ids {
    ($($var:ident => $s:literal,)*) => {
        /// Stable identifier of one executable theorem check.
        #[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub enum CheckId { $($var,)* }

        impl CheckId {
            pub const ALL: &'static [CheckId] = &[$(CheckId::$var,)*];

            pub fn as_str(self) -> &'static str {
                match self { $(CheckId::$var => $s,)* }
            }
        }

        impl FromStr for CheckId {
            type Err = Error;
            fn from_str(s: &str) -> Result<Self> {
                match s {
                    $($s => Ok(CheckId::$var),)*
                    _ => Err(Error::Config(format!("unknown check id `{s}`"))),
                }
            }
        }
    };
}

check_ids! {
    Ideal => "T2.ideal",
    Thann => "T2.thann",
    Goldie => "T2.goldie",
    Subring => "T2.subring",
    NoKmn => "T2.no-Kmn",
    TotalEmbedding => "T2.total-embedding",
    VnrOrNil => "T3.vnr-or-nil",
    Girth => "T3.girth",
    Diam3 => "T3.diam3",
    Card2 => "T3.card2",
    TorsionComplete => "T3.torsion-complete",
    TorsionDiam => "T3.torsion-diam",
    GcdAdj => "L4.gcd-adj",
    ThreePrimes => "L4.three-primes",
    ThreePrimesDistinct => "L4.three-primes-distinct",
    TwoDomains => "T5.two-domains",
    NDomains => "T5.n-domains",
    ArtinianLocal => "T5.artinian-local",
    Mixed => "T5.mixed",
}

impl CheckId {
    /// `all` or a comma-separated id list; duplicates dropped, order kept.
    pub fn parse_list(text: &str) -> Result<Vec<CheckId>> {
        if text.trim() == "all" {
            return Ok(CheckId::ALL.to_vec());
        }
        let mut out = Vec::new();
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let id: CheckId = part.parse()?;
            if !out.contains(&id) {
                out.push(id);
            }
        }
        if out.is_empty() {
            return Err(Error::Config("no checks selected".into()));
        }
        Ok(out)
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for CheckId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Passed,
    Failed,
    NotApplicable,
    Skipped,
}

/// Outcome of one check on one ring. `passed` only means something when
/// `applicable`; `witness` is present iff the check failed.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TheoremCheck {
    pub id: CheckId,
    pub status: Status,
    pub applicable: bool,
    pub passed: bool,
    pub witness: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl TheoremCheck {
    pub fn pass(id: CheckId) -> Self {
        TheoremCheck { id, status: Status::Passed, applicable: true, passed: true, witness: None, note: None }
    }

    pub fn fail(id: CheckId, witness: Value) -> Self {
        TheoremCheck {
            id,
            status: Status::Failed,
            applicable: true,
            passed: false,
            witness: Some(witness),
            note: None,
        }
    }

    pub fn not_applicable(id: CheckId, reason: impl Into<String>) -> Self {
        TheoremCheck {
            id,
            status: Status::NotApplicable,
            applicable: false,
            passed: false,
            witness: None,
            note: Some(reason.into()),
        }
    }

    pub fn skipped(id: CheckId, reason: impl Into<String>) -> Self {
        TheoremCheck {
            id,
            status: Status::Skipped,
            applicable: false,
            passed: false,
            witness: None,
            note: Some(reason.into()),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn is_failure(&self) -> bool {
        self.status == Status::Failed
    }
}

/// What a check runs against: an explicit ring, or a symbolic model that
/// never enumerates elements.
#[derive(Clone, Debug)]
pub enum Subject {
    Ring(FiniteRing),
    /// `ℤ_n` given by its factorization.
    SymbolicZn(Factorization),
    /// Product of `k` integral domains.
    DomainProduct(usize),
}

impl Subject {
    pub fn name(&self) -> String {
        match self {
            Subject::Ring(r) => r.name(),
            Subject::SymbolicZn(f) => format!("Z{}", f.value()),
            Subject::DomainProduct(k) => format!("domains{k}"),
        }
    }
}

impl From<FiniteRing> for Subject {
    fn from(r: FiniteRing) -> Self {
        Subject::Ring(r)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
    pub not_applicable: usize,
    pub skipped: usize,
}

impl Summary {
    pub fn of(checks: &[TheoremCheck]) -> Self {
        let mut s = Summary::default();
        for c in checks {
            s.add(c.status);
        }
        s
    }

    pub(crate) fn add(&mut self, status: Status) {
        match status {
            Status::Passed => self.passed += 1,
            Status::Failed => self.failed += 1,
            Status::NotApplicable => self.not_applicable += 1,
            Status::Skipped => self.skipped += 1,
        }
    }

    pub(crate) fn merge(&mut self, o: &Summary) {
        self.passed += o.passed;
        self.failed += o.failed;
        self.not_applicable += o.not_applicable;
        self.skipped += o.skipped;
    }
}

/// All selected checks on one subject. Timing is kept out of the serialized
/// form so reports are reproducible byte for byte.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub ring: String,
    pub checks: Vec<TheoremCheck>,
    pub summary: Summary,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl Report {
    pub fn failures(&self) -> impl Iterator<Item = &TheoremCheck> {
        self.checks.iter().filter(|c| c.is_failure())
    }

    pub fn get(&self, id: CheckId) -> Option<&TheoremCheck> {
        self.checks.iter().find(|c| c.id == id)
    }
}

/// Run `checks` against `subject`. Cap violations become skips with the
/// reason attached; they never count as passes.
pub fn check_subject(subject: &Subject, checks: &[CheckId], caps: &Caps) -> Report {
    let start = Instant::now();
    let ctx = checks::Ctx::new(subject, caps);
    let results: Vec<TheoremCheck> = checks.iter().map(|&id| ctx.run(id)).collect();
    Report {
        ring: subject.name(),
        summary: Summary::of(&results),
        checks: results,
        elapsed: start.elapsed(),
    }
}

pub fn check_ring(r: &FiniteRing, checks: &[CheckId], caps: &Caps) -> Report {
    check_subject(&Subject::Ring(r.clone()), checks, caps)
}
