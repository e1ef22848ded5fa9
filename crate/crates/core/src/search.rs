//! Grid search for catalysts and source-copy / catalyst-copy trade-offs.

use num_traits::{One, Signed};
use rayon::prelude::*;
use serde::Serialize;

use crate::catalysis::{
    catalyst_filter, is_catalyst, multicopy_filter, CatalystVerdict, PowerLadder,
};
use crate::error::{Error, Result};
use crate::majorization::majorizes;
use crate::probabilistic::{combined_pmax, ProbabilityReport};
use crate::rational::{from_integer, Rational};
use crate::vector::{Run, SchmidtVector};

/// Candidates evaluated in parallel per batch.
const BATCH: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchMode {
    /// Exact catalysis: `psi ⊗ c^⊗m ≺ phi ⊗ c^⊗m`.
    Deterministic,
    /// `P_max(psi ⊗ c^⊗m → phi ⊗ c^⊗m) ≥ target`.
    Lambda(Rational),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    /// Catalyst Schmidt rank `k ≥ 2`.
    pub dimension: usize,
    /// Grid resolution `q`: coefficients are multiples of `1/q`.
    pub denominator: u64,
    /// Stop after this many verified hits.
    pub max_candidates: usize,
    pub mode: SearchMode,
    /// Catalyst copies `m` used in verification.
    pub copies: u32,
}

impl SearchConfig {
    pub fn deterministic(dimension: usize, denominator: u64, copies: u32) -> Self {
        Self {
            dimension,
            denominator,
            max_candidates: usize::MAX,
            mode: SearchMode::Deterministic,
            copies,
        }
    }

    fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidArgument(msg.into()));
        if self.dimension < 2 {
            return bad("catalyst dimension must be >= 2");
        }
        if self.denominator < self.dimension as u64 {
            return bad("grid denominator must be >= dimension");
        }
        if self.copies == 0 {
            return bad("catalyst copies must be >= 1");
        }
        if self.max_candidates == 0 {
            return bad("max_candidates must be >= 1");
        }
        if let SearchMode::Lambda(t) = &self.mode {
            if !t.is_positive() || *t > Rational::one() {
                return bad("lambda must lie in (0, 1]");
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Evidence {
    Catalyst(CatalystVerdict),
    Probability(ProbabilityReport),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchHit {
    pub catalyst: SchmidtVector,
    /// Grid numerators `j_1 ≥ … ≥ j_k` with `γ_i = j_i / q`.
    pub numerators: Vec<u64>,
    pub evidence: Evidence,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct SearchCounters {
    pub enumerated: u64,
    pub pruned_by_filter: u64,
    pub verified: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub hits: Vec<SearchHit>,
    pub counters: SearchCounters,
}

/// Nonincreasing positive integer `k`-tuples summing to `q`, in ascending
/// lexicographic order (most uniform first).
#[derive(Debug, Clone)]
pub struct SimplexGrid {
    current: Option<Vec<u64>>,
    total: u64,
}

impl SimplexGrid {
    pub fn new(dimension: usize, denominator: u64) -> Self {
        let current = (dimension > 0)
            .then(|| balanced(denominator, dimension, u64::MAX))
            .flatten();
        Self {
            current,
            total: denominator,
        }
    }
}

// Lex-smallest nonincreasing split of `sum` into `parts` positive values, each `≤ cap`.
fn balanced(sum: u64, parts: usize, cap: u64) -> Option<Vec<u64>> {
    if parts == 0 {
        return (sum == 0).then(Vec::new);
    }
    let parts_u = parts as u64;
    let (base, extra) = (sum / parts_u, sum % parts_u);
    if base == 0 || base + u64::from(extra > 0) > cap {
        return None;
    }
    let mut out = vec![base + 1; extra as usize];
    out.resize(parts, base);
    Some(out)
}

impl Iterator for SimplexGrid {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        let cur = self.current.take()?;
        let k = cur.len();
        let mut prefix_sum: u64 = cur.iter().sum();
        for i in (0..k.saturating_sub(1)).rev() {
            prefix_sum -= cur[i + 1];
            let bumped = cur[i] + 1;
            if i > 0 && bumped > cur[i - 1] {
                continue;
            }
            let rest = self.total.checked_sub(prefix_sum + 1);
            if let Some(tail) = rest.and_then(|r| balanced(r, k - i - 1, bumped)) {
                let mut next = cur[..i].to_vec();
                next.push(bumped);
                next.extend(tail);
                self.current = Some(next);
                break;
            }
        }
        Some(cur)
    }
}

fn grid_vector(numerators: &[u64], q: u64) -> SchmidtVector {
    let q = from_integer(q);
    SchmidtVector::from_runs(
        numerators
            .iter()
            .map(|&j| Run {
                value: from_integer(j) / &q,
                count: 1,
            })
            .collect(),
    )
    .expect("grid point sums to one")
}

enum Judgement {
    Pruned,
    Rejected,
    Hit(SearchHit),
}

fn judge(
    numerators: Vec<u64>,
    psi: &SchmidtVector,
    phi: &SchmidtVector,
    cfg: &SearchConfig,
) -> Result<Judgement> {
    let cat = grid_vector(&numerators, cfg.denominator);
    // tensoring with a point mass changes nothing
    if cat.is_product() {
        return Ok(Judgement::Pruned);
    }
    let evidence = match &cfg.mode {
        SearchMode::Deterministic => {
            if !multicopy_filter(&cat, psi, phi).passes {
                return Ok(Judgement::Pruned);
            }
            if cfg.copies == 1 && !catalyst_filter(&cat, psi, phi).passes {
                return Ok(Judgement::Pruned);
            }
            let verdict = is_catalyst(&cat, psi, phi, cfg.copies)?;
            if !verdict.is_catalyst {
                return Ok(Judgement::Rejected);
            }
            Evidence::Catalyst(verdict)
        }
        SearchMode::Lambda(target) => {
            let report = combined_pmax(psi, phi, 1, &cat, cfg.copies)?;
            if report.p_max < *target {
                return Ok(Judgement::Rejected);
            }
            Evidence::Probability(report)
        }
    };
    Ok(Judgement::Hit(SearchHit {
        catalyst: cat,
        numerators,
        evidence,
    }))
}

/// Enumerates grid catalysts, feeding verified hits to `sink` in
/// lexicographic order. Deterministic for a given configuration.
pub fn search_catalysts_with(
    psi: &SchmidtVector,
    phi: &SchmidtVector,
    cfg: &SearchConfig,
    mut sink: impl FnMut(&SearchHit),
) -> Result<SearchCounters> {
    cfg.validate()?;
    if majorizes(psi, phi).feasible {
        return Err(Error::NoSearchNeeded);
    }
    let mut counters = SearchCounters::default();
    let mut found = 0usize;
    let mut grid = SimplexGrid::new(cfg.dimension, cfg.denominator);
    loop {
        let batch: Vec<Vec<u64>> = grid.by_ref().take(BATCH).collect();
        if batch.is_empty() {
            break;
        }
        let judged: Vec<Result<Judgement>> = batch
            .into_par_iter()
            .map(|c| judge(c, psi, phi, cfg))
            .collect();
        for j in judged {
            counters.enumerated += 1;
            match j? {
                Judgement::Pruned => counters.pruned_by_filter += 1,
                Judgement::Rejected => counters.verified += 1,
                Judgement::Hit(hit) => {
                    counters.verified += 1;
                    found += 1;
                    sink(&hit);
                    if found >= cfg.max_candidates {
                        return Ok(counters);
                    }
                }
            }
        }
    }
    Ok(counters)
}

pub fn search_catalysts(
    psi: &SchmidtVector,
    phi: &SchmidtVector,
    cfg: &SearchConfig,
) -> Result<SearchOutcome> {
    let mut hits = Vec::new();
    let counters = search_catalysts_with(psi, phi, cfg, |h| hits.push(h.clone()))?;
    Ok(SearchOutcome { hits, counters })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TradeOffRow {
    pub source_copies: u32,
    pub min_catalyst_copies: Option<u32>,
    pub feasible_without_catalyst: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TradeOffTable {
    pub rows: Vec<TradeOffRow>,
    /// False when the minimal catalyst count ever increases with the
    /// number of source copies.
    pub monotone: bool,
}

impl TradeOffTable {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("source_copies,min_catalyst_copies,feasible_alone\n");
        for r in &self.rows {
            let m = r
                .min_catalyst_copies
                .map(|m| m.to_string())
                .unwrap_or_default();
            out.push_str(&format!(
                "{},{},{}\n",
                r.source_copies, m, r.feasible_without_catalyst
            ));
        }
        out
    }
}

/// For each `s ≤ max_source`: whether `psi^⊗s ≺ phi^⊗s`, and otherwise the
/// fewest catalyst copies `m ≤ max_cat` restoring feasibility.
pub fn trade_off(
    psi: &SchmidtVector,
    phi: &SchmidtVector,
    cat: &SchmidtVector,
    max_source: u32,
    max_cat: u32,
) -> Result<TradeOffTable> {
    if max_source == 0 || max_cat == 0 {
        return Err(Error::InvalidArgument(
            "max_source and max_cat must be >= 1".into(),
        ));
    }
    let mut ladder = PowerLadder::new(psi, phi);
    let mut rows = Vec::with_capacity(max_source as usize);
    for s in 1..=max_source {
        let alone = ladder.feasible(s)?;
        let min_catalyst_copies = if alone {
            None
        } else {
            let (src, dst) = ladder.power(s)?;
            let (mut src, mut dst) = (src.clone(), dst.clone());
            let mut found = None;
            for m in 1..=max_cat {
                src = src.tensor(cat)?;
                dst = dst.tensor(cat)?;
                if majorizes(&src, &dst).feasible {
                    found = Some(m);
                    break;
                }
            }
            found
        };
        rows.push(TradeOffRow {
            source_copies: s,
            min_catalyst_copies,
            feasible_without_catalyst: alone,
        });
    }
    let counts: Vec<u32> = rows.iter().filter_map(|r| r.min_catalyst_copies).collect();
    let monotone = counts.windows(2).all(|w| w[1] <= w[0]);
    Ok(TradeOffTable { rows, monotone })
}
