//! Deterministic catalysis: catalyst checks, multiple-copy thresholds and
//! necessary conditions that rule out catalysts without expanding any
//! tensor product.

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::majorization::{l_set, majorizes, FeasibilityReport, LSet};
use crate::rational::Rational;
use crate::vector::SchmidtVector;

/// Smallest `k` such that `psi^⊗p ≺ phi^⊗p` for every `p ≥ k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StabilityResult {
    pub threshold: Option<u32>,
    /// Largest tensor power that was actually checked.
    pub checked_up_to: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CatalystVerdict {
    pub is_catalyst: bool,
    pub copies_used: u32,
    pub report: FeasibilityReport,
}

/// One failed inequality of a necessary catalyst condition. `l` is the
/// 1-based prefix index from the obstruction set; `i` the catalyst index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FilterViolation {
    /// `γ_1/γ_k ≤ β_l/β_{l+1}`
    Spread { l: u64 },
    /// `γ_1/γ_i ≤ β_l/β_{l+1}` and `γ_i/γ_{i+1} ≥ β_1/β_l`
    Head { l: u64, i: u64 },
    /// `γ_{i+1}/γ_k ≤ β_l/β_{l+1}` and `γ_i/γ_{i+1} ≥ β_{l+1}/β_n`
    Tail { l: u64, i: u64 },
    /// `γ_1/γ_2 ≥ β_1/β_l`
    LeadingRatio { l: u64 },
    /// `γ_{k-1}/γ_k ≥ β_{l+1}/β_n`
    TrailingRatio { l: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FilterOutcome {
    pub passes: bool,
    pub violations: Vec<FilterViolation>,
}

impl FilterOutcome {
    fn from_violations(violations: Vec<FilterViolation>) -> Self {
        Self {
            passes: violations.is_empty(),
            violations,
        }
    }
}

/// Deterministic LOCC convertibility of `psi` into `phi`.
pub fn is_transformable(psi: &SchmidtVector, phi: &SchmidtVector) -> FeasibilityReport {
    majorizes(psi, phi)
}

/// `state ⊗ cat^⊗m`, built one factor at a time.
pub(crate) fn with_copies(
    state: &SchmidtVector,
    cat: &SchmidtVector,
    m: u32,
) -> Result<SchmidtVector> {
    let mut acc = state.clone();
    for _ in 0..m {
        acc = acc.tensor(cat)?;
    }
    Ok(acc)
}

fn require_catalyst_dimension(cat: &SchmidtVector) -> Result<()> {
    if cat.len() < 2 {
        return Err(Error::InvalidArgument(
            "a catalyst needs at least two Schmidt coefficients".into(),
        ));
    }
    Ok(())
}

/// Checks `psi ⊗ cat^⊗m ≺ phi ⊗ cat^⊗m`.
pub fn is_catalyst(
    cat: &SchmidtVector,
    psi: &SchmidtVector,
    phi: &SchmidtVector,
    m: u32,
) -> Result<CatalystVerdict> {
    require_catalyst_dimension(cat)?;
    if m == 0 {
        return Err(Error::InvalidArgument(
            "catalyst copies must be >= 1".into(),
        ));
    }
    let report = majorizes(&with_copies(psi, cat, m)?, &with_copies(phi, cat, m)?);
    Ok(CatalystVerdict {
        is_catalyst: report.feasible,
        copies_used: m,
        report,
    })
}

/// Smallest `m ≤ m_max` for which `cat^⊗m` catalyzes `psi → phi`.
pub fn min_catalyst_copies(
    cat: &SchmidtVector,
    psi: &SchmidtVector,
    phi: &SchmidtVector,
    m_max: u32,
) -> Result<Option<u32>> {
    require_catalyst_dimension(cat)?;
    let (mut src, mut dst) = (psi.clone(), phi.clone());
    for m in 1..=m_max {
        src = src.tensor(cat)?;
        dst = dst.tensor(cat)?;
        if majorizes(&src, &dst).feasible {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

/// Lazily built tensor powers of a pair of states with cached verdicts.
pub(crate) struct PowerLadder<'a> {
    psi: &'a SchmidtVector,
    phi: &'a SchmidtVector,
    powers: Vec<(SchmidtVector, SchmidtVector)>,
    verdicts: Vec<Option<bool>>,
}

impl<'a> PowerLadder<'a> {
    pub fn new(psi: &'a SchmidtVector, phi: &'a SchmidtVector) -> Self {
        Self {
            psi,
            phi,
            powers: Vec::new(),
            verdicts: Vec::new(),
        }
    }

    /// `(psi^⊗p, phi^⊗p)` for `p ≥ 1`.
    pub fn power(&mut self, p: u32) -> Result<&(SchmidtVector, SchmidtVector)> {
        let p = p as usize;
        while self.powers.len() < p {
            let next = match self.powers.last() {
                None => (self.psi.clone(), self.phi.clone()),
                Some((a, b)) => (a.tensor(self.psi)?, b.tensor(self.phi)?),
            };
            self.powers.push(next);
            self.verdicts.push(None);
        }
        Ok(&self.powers[p - 1])
    }

    pub fn feasible(&mut self, p: u32) -> Result<bool> {
        self.power(p)?;
        let idx = p as usize - 1;
        if let Some(v) = self.verdicts[idx] {
            return Ok(v);
        }
        let (a, b) = &self.powers[idx];
        let v = majorizes(a, b).feasible;
        self.verdicts[idx] = Some(v);
        Ok(v)
    }
}

/// Finds the smallest `k ≤ k_max` with `psi^⊗p ≺ phi^⊗p` for all `p` in
/// `[k, 2k-1]`, which certifies every `p ≥ k`.
pub fn mlocc_threshold(
    psi: &SchmidtVector,
    phi: &SchmidtVector,
    k_max: u32,
) -> Result<StabilityResult> {
    let mut ladder = PowerLadder::new(psi, phi);
    let mut checked_up_to = 0;
    let mut k = 1;
    while k <= k_max {
        let mut failed = None;
        for p in k..=2 * k - 1 {
            checked_up_to = checked_up_to.max(p);
            if !ladder.feasible(p)? {
                failed = Some(p);
                break;
            }
        }
        match failed {
            None => {
                return Ok(StabilityResult {
                    threshold: Some(k),
                    checked_up_to,
                })
            }
            // every window containing p fails, so the next candidate is p + 1
            Some(p) => k = p + 1,
        }
    }
    Ok(StabilityResult {
        threshold: None,
        checked_up_to,
    })
}

struct Betas<'a> {
    phi: &'a SchmidtVector,
    n: u64,
    zero: Rational,
}

impl Betas<'_> {
    /// 1-based, zero past the end of `phi`.
    fn at(&self, i: u64) -> &Rational {
        self.phi.get(i - 1).unwrap_or(&self.zero)
    }

    fn last(&self) -> &Rational {
        self.at(self.n)
    }
}

fn obstruction(psi: &SchmidtVector, phi: &SchmidtVector) -> (LSet, u64) {
    (l_set(psi, phi), psi.len().max(phi.len()))
}

/// Necessary conditions for `cat` to be a single-copy catalyst of
/// `psi → phi`. A failing outcome proves `cat` is not a catalyst.
pub fn catalyst_filter(
    cat: &SchmidtVector,
    psi: &SchmidtVector,
    phi: &SchmidtVector,
) -> FilterOutcome {
    let (lset, n) = obstruction(psi, phi);
    let beta = Betas {
        phi,
        n,
        zero: Rational::zero(),
    };
    let gamma = cat.to_vec();
    let k = gamma.len();
    let g = |i: usize| &gamma[i - 1];
    let mut violations = Vec::new();
    for l in lset.iter() {
        let (bl, bl1, b1, bn) = (beta.at(l), beta.at(l + 1), beta.at(1), beta.last());
        // ratios compared by cross-multiplication; all denominators > 0
        if g(1) * bl1 <= bl * g(k) {
            violations.push(FilterViolation::Spread { l });
        }
        for i in 1..k {
            let head = g(1) * bl1 > bl * g(i) || g(i) * bl < b1 * g(i + 1);
            if !head {
                violations.push(FilterViolation::Head { l, i: i as u64 });
            }
            let tail = g(i + 1) * bl1 > bl * g(k) || g(i) * bn < bl1 * g(i + 1);
            if !tail {
                violations.push(FilterViolation::Tail { l, i: i as u64 });
            }
        }
    }
    FilterOutcome::from_violations(violations)
}

/// Necessary conditions for any power `cat^⊗m` to catalyze `psi → phi`.
/// Only the two largest and two smallest catalyst coefficients matter.
pub fn multicopy_filter(
    cat: &SchmidtVector,
    psi: &SchmidtVector,
    phi: &SchmidtVector,
) -> FilterOutcome {
    let (lset, n) = obstruction(psi, phi);
    let beta = Betas {
        phi,
        n,
        zero: Rational::zero(),
    };
    let k = cat.len();
    let mut violations = Vec::new();
    for l in lset.iter() {
        let (bl, bl1, b1, bn) = (beta.at(l), beta.at(l + 1), beta.at(1), beta.last());
        if k < 2 {
            violations.push(FilterViolation::LeadingRatio { l });
            continue;
        }
        let (g1, g2) = (cat.largest(), cat.get(1).expect("k >= 2"));
        let (gk1, gk) = (cat.get(k - 2).expect("k >= 2"), cat.smallest());
        if g1 * bl >= b1 * g2 {
            violations.push(FilterViolation::LeadingRatio { l });
        }
        // bn = 0 leaves the left side at zero, so the condition holds
        if gk1 * bn >= bl1 * gk {
            violations.push(FilterViolation::TrailingRatio { l });
        }
    }
    FilterOutcome::from_violations(violations)
}
