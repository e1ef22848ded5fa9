//! Machine-readable report payloads shared by the CLI and the C bindings.
//! Fractions are authoritative; decimals are rounded half-even for display.

use std::collections::BTreeMap;

use serde::{Serialize, Serializer};
use serde_json::{json, Value};

use crate::catalysis::{CatalystVerdict, FilterOutcome, StabilityResult};
use crate::majorization::{FeasibilityReport, LSet};
use crate::probabilistic::{BoundSandwich, ProbabilityReport};
use crate::rational::{format_decimal, format_fraction, Rational};
use crate::search::{Evidence, SearchCounters, SearchHit, TradeOffTable};

pub const DEFAULT_PRECISION: u32 = 4;

pub fn ser_fraction<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_fraction(r))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExactNumber {
    pub fraction: String,
    pub decimal: String,
}

impl ExactNumber {
    pub fn new(r: &Rational, places: u32) -> Self {
        Self {
            fraction: format_fraction(r),
            decimal: format_decimal(r, places),
        }
    }
}

/// Envelope for one CLI invocation.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: String,
    /// Canonical fraction text of every parsed input vector.
    pub inputs: BTreeMap<String, String>,
    pub result: Value,
    pub exact: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

pub fn feasibility(report: &FeasibilityReport) -> Value {
    serde_json::to_value(report).expect("plain struct")
}

pub fn lset(l: &LSet) -> Value {
    json!(l.indices)
}

pub fn filter(outcome: &FilterOutcome) -> Value {
    serde_json::to_value(outcome).expect("plain struct")
}

pub fn verdict(v: &CatalystVerdict) -> Value {
    serde_json::to_value(v).expect("plain struct")
}

pub fn stability(s: &StabilityResult) -> Value {
    serde_json::to_value(s).expect("plain struct")
}

pub fn probability(r: &ProbabilityReport, places: u32) -> Value {
    let ratios: Vec<Value> = r
        .ratios
        .iter()
        .map(|(l, q)| json!({ "l": l, "ratio": ExactNumber::new(q, places) }))
        .collect();
    json!({
        "p_max": ExactNumber::new(&r.p_max, places),
        "minimizing_l": r.minimizing_l,
        "rank_deficient": r.rank_deficient,
        "ratios": ratios,
    })
}

pub fn bounds(b: &BoundSandwich, places: u32) -> Value {
    json!({
        "p": b.p,
        "lower": ExactNumber::new(&b.lower, places),
        "upper": ExactNumber::new(&b.upper, places),
        "collapsed": b.collapsed(),
    })
}

pub fn tradeoff(t: &TradeOffTable) -> Value {
    serde_json::to_value(t).expect("plain struct")
}

pub fn search_hit(hit: &SearchHit, places: u32) -> Value {
    let evidence = match &hit.evidence {
        Evidence::Catalyst(v) => json!({ "catalyst": verdict(v) }),
        Evidence::Probability(r) => json!({ "probability": probability(r, places) }),
    };
    json!({
        "catalyst": hit.catalyst.to_string(),
        "numerators": hit.numerators,
        "evidence": evidence,
    })
}

pub fn counters(c: &SearchCounters) -> Value {
    serde_json::to_value(c).expect("plain struct")
}
