//! Verification suites. Each suite checks a family of identities on one
//! datum and emits one [`Record`] per checked instance.
//!
//! Records where the identity is expected to fail (negative controls) carry
//! an anchor starting with `control:`; for those `pass` means the failure
//! was observed.

mod algebra;
mod form;
mod higher;
mod modules;
mod quasi_r;
mod random;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

use crate::covering::CoveringAlgebra;
use crate::datum::Datum;
use crate::error::{Error, Result};
use crate::free_half::FreeHalf;

pub use random::Rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SuiteName {
    Datum,
    Binom,
    Form,
    Serre,
    UAlgebra,
    Theta,
    Casimir,
    Modules,
    Characters,
    HigherSerre,
}

impl SuiteName {
    pub const ALL: [SuiteName; 10] = [
        SuiteName::Datum,
        SuiteName::Binom,
        SuiteName::Form,
        SuiteName::Serre,
        SuiteName::UAlgebra,
        SuiteName::Theta,
        SuiteName::Casimir,
        SuiteName::Modules,
        SuiteName::Characters,
        SuiteName::HigherSerre,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SuiteName::Datum => "datum",
            SuiteName::Binom => "binom",
            SuiteName::Form => "form",
            SuiteName::Serre => "serre",
            SuiteName::UAlgebra => "u-algebra",
            SuiteName::Theta => "theta",
            SuiteName::Casimir => "casimir",
            SuiteName::Modules => "modules",
            SuiteName::Characters => "characters",
            SuiteName::HigherSerre => "higher-serre",
        }
    }
}

impl fmt::Display for SuiteName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SuiteName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SuiteName::ALL
            .into_iter()
            .find(|n| n.as_str() == s.trim())
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite '{s}'")))
    }
}

/// Parse a comma-separated suite list; `all` selects every suite.
pub fn parse_suites(list: &str) -> Result<Vec<SuiteName>> {
    if list.trim() == "all" {
        return Ok(SuiteName::ALL.to_vec());
    }
    let mut out: Vec<SuiteName> = list.split(',').filter(|s| !s.trim().is_empty()).map(str::parse).collect::<Result<_>>()?;
    out.sort();
    out.dedup();
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    /// Height cap for weight sweeps. Suites whose parameter ranges need
    /// deeper weight spaces raise their working cap to what they need.
    pub cap: usize,
    pub suites: Vec<SuiteName>,
    pub seed: u64,
}

impl RunConfig {
    pub fn new(cap: usize, suites: Vec<SuiteName>, seed: u64) -> Result<Self> {
        if cap < 1 {
            return Err(Error::InvalidArgument("cap must be at least 1".into()));
        }
        Ok(RunConfig { cap, suites, seed })
    }
}

/// One checked identity instance.
#[derive(Clone, Debug, Serialize)]
pub struct Record {
    pub suite: SuiteName,
    pub anchor: String,
    pub params: Value,
    pub pass: bool,
    pub millis: u64,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Record {
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("records serialize")
    }
}

/// Collects records for one suite and times each check.
pub(crate) struct Recorder {
    suite: SuiteName,
    seed: u64,
    records: Vec<Record>,
}

impl Recorder {
    fn new(suite: SuiteName, seed: u64) -> Self {
        Recorder { suite, seed, records: Vec::new() }
    }

    /// Run `f`, which reports whether the identity holds. An error counts
    /// as a failure with the error text as detail.
    pub(crate) fn check(&mut self, anchor: &str, params: Value, f: impl FnOnce() -> Result<bool>) {
        self.check_detail(anchor, params, || f().map(|b| (b, None)))
    }

    pub(crate) fn check_detail(
        &mut self,
        anchor: &str,
        params: Value,
        f: impl FnOnce() -> Result<(bool, Option<String>)>,
    ) {
        let start = Instant::now();
        let (pass, detail) = match f() {
            Ok(v) => v,
            Err(e) => (false, Some(e.to_string())),
        };
        self.push(anchor, params, pass, start.elapsed().as_millis() as u64, detail);
    }

    pub(crate) fn push(&mut self, anchor: &str, params: Value, pass: bool, millis: u64, detail: Option<String>) {
        self.records.push(Record {
            suite: self.suite,
            anchor: anchor.to_string(),
            params,
            pass,
            millis,
            seed: self.seed,
            detail,
        });
    }

    /// An explicit record for a check that does not apply to this datum.
    pub(crate) fn not_applicable(&mut self, anchor: &str, reason: &str) {
        self.push(anchor, Value::Null, true, 0, Some(format!("not applicable: {reason}")));
    }
}

/// Shared context for suites: the datum and algebras at a given cap.
pub(crate) struct Ctx {
    pub datum: Arc<Datum>,
    pub cap: usize,
    pub seed: u64,
}

impl Ctx {
    pub fn algebra(&self, cap: usize) -> CoveringAlgebra {
        CoveringAlgebra::new(Arc::new(FreeHalf::new(self.datum.clone(), cap)))
    }

    pub fn free(&self, cap: usize) -> Arc<FreeHalf> {
        Arc::new(FreeHalf::new(self.datum.clone(), cap))
    }
}

/// Run one suite on a datum.
pub fn run_suite(datum: Arc<Datum>, suite: SuiteName, cap: usize, seed: u64) -> Vec<Record> {
    let ctx = Ctx { datum, cap, seed };
    let mut rec = Recorder::new(suite, seed);
    match suite {
        SuiteName::Datum => algebra::datum_suite(&ctx, &mut rec),
        SuiteName::Binom => algebra::binom_suite(&ctx, &mut rec),
        SuiteName::Form => form::form_suite(&ctx, &mut rec),
        SuiteName::Serre => form::serre_suite(&ctx, &mut rec),
        SuiteName::UAlgebra => algebra::u_algebra_suite(&ctx, &mut rec),
        SuiteName::Theta => quasi_r::theta_suite(&ctx, &mut rec),
        SuiteName::Casimir => quasi_r::casimir_suite(&ctx, &mut rec),
        SuiteName::Modules => modules::modules_suite(&ctx, &mut rec),
        SuiteName::Characters => modules::characters_suite(&ctx, &mut rec),
        SuiteName::HigherSerre => higher::higher_serre_suite(&ctx, &mut rec),
    }
    rec.records
}

/// Run the selected suites concurrently and merge their records in suite
/// order; within a suite, records keep their generation order, which is
/// fixed by the datum, cap and seed.
pub fn run(datum: Arc<Datum>, config: &RunConfig) -> Vec<Record> {
    let mut suites = config.suites.clone();
    suites.sort();
    suites.dedup();
    let mut batches: Vec<(SuiteName, Vec<Record>)> = std::thread::scope(|s| {
        let handles: Vec<_> = suites
            .iter()
            .map(|&name| {
                let d = datum.clone();
                s.spawn(move || (name, run_suite(d, name, config.cap, config.seed)))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("suite thread panicked")).collect()
    });
    batches.sort_by_key(|(n, _)| *n);
    batches.into_iter().flat_map(|(_, r)| r).collect()
}

/// Whether every record passed.
pub fn all_pass(records: &[Record]) -> bool {
    records.iter().all(|r| r.pass)
}
