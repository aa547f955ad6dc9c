//! Machine verification of the closed forms, the gluing derivations and the
//! structural properties of the partition functions.
//!
//! Every check returns a [`CheckReport`]; failures are reported, never
//! thrown. Symbolic equality in canonical form is the acceptance relation;
//! the numeric layer is an independent second opinion.

mod closed_forms;
mod derivations;
mod numeric;
mod properties;
mod semisimple;

use std::fmt::{self, Display};
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::exactring::TRat;
use crate::operators::{ClassRefined, Op3};
use crate::phicalc::PhiElem;
use crate::Error;

pub use closed_forms::{
    calabi_yau_closed_form, equal_levels_closed_form, first_shift_closed_form, negative_levels_closed_form,
    second_shift_closed_form, top_class, top_class_closed_form, verify_calabi_yau, verify_special_cases, SpecialRanges,
};
pub use derivations::{verify_genus_zero, verify_gluing_derivations, verify_operator_algebra, verify_word_agreement};
pub use numeric::{numeric_partition_function, random_point, verify_numeric_crosscheck, NumLaurent};
pub use properties::{phi_inverse_square_oracle, verify_genus_tables, verify_grading_properties, PropertySweep};
pub use semisimple::verify_semisimplicity;

/// A reproducible failure: the parameter tuple and both sides.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub params: String,
    pub expected: String,
    pub actual: String,
    pub diff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub id: String,
    pub description: String,
    pub cases: usize,
    pub passed: bool,
    pub counterexample: Option<Counterexample>,
    pub elapsed_ms: u64,
}

impl CheckReport {
    /// One JSON object per line.
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

/// Human-readable summary table.
pub fn summary_table(reports: &[CheckReport]) -> String {
    let width = reports.iter().map(|r| r.id.len()).max().unwrap_or(2).max(5);
    let mut out = format!("{:<width$}  {:>6}  {:>8}  {}\n", "check", "cases", "ms", "result");
    for r in reports {
        out.push_str(&format!(
            "{:<width$}  {:>6}  {:>8}  {}\n",
            r.id,
            r.cases,
            r.elapsed_ms,
            if r.passed { "pass" } else { "FAIL" }
        ));
        if let Some(c) = &r.counterexample {
            out.push_str(&format!(
                "    at {}\n    expected: {}\n    actual:   {}\n    diff:     {}\n",
                c.params, c.expected, c.actual, c.diff
            ));
        }
    }
    let failed = reports.iter().filter(|r| !r.passed).count();
    out.push_str(&format!("{} checks, {} failed\n", reports.len(), failed));
    out
}

/// Values that can be compared and whose difference can be displayed.
pub trait Diffable: PartialEq + Display {
    fn diff(&self, other: &Self) -> String;
}

impl Diffable for PhiElem {
    fn diff(&self, other: &Self) -> String {
        (self - other).to_string()
    }
}

impl Diffable for TRat {
    fn diff(&self, other: &Self) -> String {
        (self - other).to_string()
    }
}

impl Diffable for Op3 {
    fn diff(&self, other: &Self) -> String {
        (self - other).to_string()
    }
}

impl Diffable for ClassRefined {
    fn diff(&self, other: &Self) -> String {
        let mut classes: Vec<i32> = self.classes();
        classes.extend(other.classes());
        classes.sort_unstable();
        classes.dedup();
        let mut parts = Vec::new();
        for n in classes {
            let (a, b) = (self.piece_or_zero(n), other.piece_or_zero(n));
            if a.rank() != b.rank() {
                return format!("rank {} vs {}", a.rank(), b.rank());
            }
            for (pos, (x, y)) in a.entries().iter().zip(b.entries()).enumerate() {
                if x != y {
                    parts.push(format!("n={n} entry {pos}: {}", x - y));
                }
            }
        }
        if self.variance() != other.variance() {
            parts.push("variance differs".into());
        }
        parts.join("; ")
    }
}

/// Accumulates cases of one check and keeps the first counterexample.
pub(crate) struct Tally {
    id: String,
    description: String,
    cases: usize,
    first: Option<Counterexample>,
    start: Instant,
}

impl Tally {
    pub(crate) fn new(id: &str, description: &str) -> Self {
        Tally { id: id.to_string(), description: description.to_string(), cases: 0, first: None, start: Instant::now() }
    }

    fn fail(&mut self, c: Counterexample) {
        if self.first.is_none() {
            self.first = Some(c);
        }
    }

    /// Records `expected == actual`.
    pub(crate) fn eq<T: Diffable>(&mut self, params: impl Display, expected: &T, actual: &T) {
        self.cases += 1;
        if expected != actual {
            self.fail(Counterexample {
                params: params.to_string(),
                expected: expected.to_string(),
                actual: actual.to_string(),
                diff: expected.diff(actual),
            });
        }
    }

    /// Records a computed result that must equal `expected`; errors count
    /// as failures.
    pub(crate) fn eq_result<T: Diffable>(&mut self, params: impl Display, expected: &T, actual: crate::Result<T>) {
        match actual {
            Ok(a) => self.eq(params, expected, &a),
            Err(e) => self.error(params, e),
        }
    }

    /// Records a boolean property with a description of what was seen.
    pub(crate) fn holds(&mut self, params: impl Display, ok: bool, seen: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.fail(Counterexample {
                params: params.to_string(),
                expected: "property holds".into(),
                actual: seen(),
                diff: String::new(),
            });
        }
    }

    pub(crate) fn error(&mut self, params: impl Display, e: Error) {
        self.cases += 1;
        self.fail(Counterexample {
            params: params.to_string(),
            expected: "a value".into(),
            actual: format!("error: {e}"),
            diff: String::new(),
        });
    }

    pub(crate) fn finish(self) -> CheckReport {
        CheckReport {
            id: self.id,
            description: self.description,
            cases: self.cases,
            passed: self.first.is_none() && self.cases > 0,
            counterexample: self.first,
            elapsed_ms: self.start.elapsed().as_millis() as u64,
        }
    }
}

/// Named groups of checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Suite {
    All,
    CalabiYau,
    Special,
    Gluing,
    Semisimple,
    Numeric,
}

impl Suite {
    pub const ALL: [Suite; 6] =
        [Suite::All, Suite::CalabiYau, Suite::Special, Suite::Gluing, Suite::Semisimple, Suite::Numeric];

    pub fn as_str(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::CalabiYau => "cy",
            Suite::Special => "appendixB",
            Suite::Gluing => "gluing",
            Suite::Semisimple => "semisimple",
            Suite::Numeric => "numeric",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.as_str() == s)
            .ok_or_else(|| Error::Unsupported(format!("unknown suite '{s}'")))
    }
}

/// Sweep sizes for a suite run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteConfig {
    /// Genus bound for the Calabi-Yau sweep.
    pub cy_g_max: u32,
    /// Level bound for the Calabi-Yau sweep.
    pub cy_k_max: i64,
    pub special: SpecialRanges,
    pub seed: u64,
    pub trials: usize,
    pub properties: PropertySweep,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            cy_g_max: 6,
            cy_k_max: 6,
            special: SpecialRanges::default(),
            seed: 42,
            trials: 20,
            properties: PropertySweep::default(),
        }
    }
}

type Job<'a> = Box<dyn Fn() -> Vec<CheckReport> + Send + Sync + 'a>;

/// Runs a suite with checks fanned out over the rayon pool; reports are
/// sorted by id.
pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> Vec<CheckReport> {
    let want = |s: Suite| suite == Suite::All || suite == s;
    let mut jobs: Vec<Job<'_>> = Vec::new();
    if want(Suite::CalabiYau) {
        jobs.push(Box::new(|| vec![verify_calabi_yau(cfg.cy_g_max, cfg.cy_k_max)]));
        jobs.push(Box::new(|| vec![verify_genus_tables(4)]));
    }
    if want(Suite::Special) {
        jobs.push(Box::new(|| verify_special_cases(&cfg.special)));
    }
    if want(Suite::Gluing) {
        jobs.push(Box::new(verify_gluing_derivations));
        jobs.push(Box::new(verify_operator_algebra));
        jobs.push(Box::new(|| vec![verify_word_agreement(3, 2)]));
        jobs.push(Box::new(|| vec![verify_genus_zero(3)]));
    }
    if want(Suite::Semisimple) {
        jobs.push(Box::new(|| vec![verify_semisimplicity()]));
    }
    if want(Suite::Numeric) {
        jobs.push(Box::new(|| vec![verify_numeric_crosscheck(cfg.seed, cfg.trials)]));
        jobs.push(Box::new(|| verify_grading_properties(cfg.seed, &cfg.properties)));
    }
    let mut reports: Vec<CheckReport> = jobs.par_iter().flat_map(|job| job()).collect();
    reports.sort_by(|a, b| a.id.cmp(&b.id));
    reports
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.as_str().parse::<Suite>().unwrap(), s);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn tally_keeps_first_counterexample() {
        let mut t = Tally::new("demo", "demo");
        t.eq("a", &PhiElem::one(), &PhiElem::one());
        t.eq("b", &PhiElem::one(), &PhiElem::zero());
        t.eq("c", &PhiElem::zero(), &PhiElem::one());
        let r = t.finish();
        assert!(!r.passed);
        assert_eq!(r.cases, 3);
        let c = r.counterexample.unwrap();
        assert_eq!(c.params, "b");
        assert_eq!(c.diff, "1");
    }

    #[test]
    fn empty_check_does_not_pass() {
        assert!(!Tally::new("x", "x").finish().passed);
    }

    #[test]
    fn report_json_round_trip() {
        let r = Tally::new("x", "y").finish();
        let back: CheckReport = serde_json::from_str(&r.to_json_line()).unwrap();
        assert_eq!(back, r);
    }
}
