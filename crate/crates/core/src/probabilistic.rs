//! Optimal conversion probabilities and their behavior under catalysts and
//! multiple copies.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::catalysis::{with_copies, PowerLadder};
use crate::error::{Error, Result};
use crate::majorization::segments;
use crate::rational::Rational;
use crate::vector::SchmidtVector;

/// Result of the tail-ratio minimization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbabilityReport {
    pub p_max: Rational,
    /// Smallest 1-based `l` attaining the minimum.
    pub minimizing_l: u64,
    /// `E_l(psi)/E_l(phi)` at every candidate `l`, ascending in `l`.
    /// Between consecutive segment boundaries the ratio is monotone, so
    /// these candidates contain the minimum.
    pub ratios: Vec<(u64, Rational)>,
    /// Set when `phi` has more nonzero coefficients than `psi`; the
    /// conversion is then impossible and `p_max` is zero.
    pub rank_deficient: bool,
}

impl ProbabilityReport {
    pub fn ratio_at(&self, l: u64) -> Option<&Rational> {
        self.ratios
            .binary_search_by_key(&l, |(k, _)| *k)
            .ok()
            .map(|i| &self.ratios[i].1)
    }
}

/// `(P_max)^p ≤ P^E_max(psi^⊗p → phi^⊗p) ≤ min(1, (α_n/β_n)^p)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundSandwich {
    #[serde(serialize_with = "crate::report::ser_fraction")]
    pub lower: Rational,
    #[serde(serialize_with = "crate::report::ser_fraction")]
    pub upper: Rational,
    pub p: u32,
}

impl BoundSandwich {
    pub fn collapsed(&self) -> bool {
        self.lower == self.upper
    }
}

/// Maximal probability of converting `psi` into `phi` by LOCC:
/// `min_l E_l(psi) / E_l(phi)` over `l` with `E_l(phi) > 0`.
pub fn max_probability(psi: &SchmidtVector, phi: &SchmidtVector) -> ProbabilityReport {
    let segs = segments(psi, phi);
    let mut positions: Vec<u64> = segs.iter().flat_map(|s| [s.start, s.end - 1]).collect();
    positions.sort_unstable();
    positions.dedup();

    let mut seg_idx = 0;
    let mut ratios = Vec::with_capacity(positions.len());
    for j in positions {
        while segs[seg_idx].end < j {
            seg_idx += 1;
        }
        let seg = &segs[seg_idx];
        let phi_tail = Rational::one() - seg.y_prefix_at(j);
        if !phi_tail.is_positive() {
            continue;
        }
        let psi_tail = Rational::one() - seg.x_prefix_at(j);
        ratios.push((j + 1, psi_tail / phi_tail));
    }

    let (minimizing_l, p_max) = ratios
        .iter()
        .fold(None::<&(u64, Rational)>, |best, cur| match best {
            Some(b) if b.1 <= cur.1 => Some(b),
            _ => Some(cur),
        })
        .cloned()
        .expect("at least one l with positive target tail");
    ProbabilityReport {
        rank_deficient: p_max.is_zero(),
        p_max,
        minimizing_l,
        ratios,
    }
}

fn check_lambda(lambda: &Rational) -> Result<()> {
    if !lambda.is_positive() || *lambda > Rational::one() {
        return Err(Error::InvalidArgument(format!(
            "lambda must lie in (0, 1], got {lambda}"
        )));
    }
    Ok(())
}

/// `P_max(psi^⊗s ⊗ cat^⊗m → phi^⊗s ⊗ cat^⊗m)`.
pub fn combined_pmax(
    psi: &SchmidtVector,
    phi: &SchmidtVector,
    source_copies: u32,
    cat: &SchmidtVector,
    cat_copies: u32,
) -> Result<ProbabilityReport> {
    if source_copies == 0 {
        return Err(Error::InvalidArgument("source copies must be >= 1".into()));
    }
    let src = with_copies(&psi.power(source_copies)?, cat, cat_copies)?;
    let dst = with_copies(&phi.power(source_copies)?, cat, cat_copies)?;
    Ok(max_probability(&src, &dst))
}

/// Whether `cat^⊗m` raises the conversion probability to at least `lambda`.
pub fn is_lambda_catalyst(
    cat: &SchmidtVector,
    psi: &SchmidtVector,
    phi: &SchmidtVector,
    lambda: &Rational,
    m: u32,
) -> Result<bool> {
    check_lambda(lambda)?;
    if m == 0 {
        return Err(Error::InvalidArgument(
            "catalyst copies must be >= 1".into(),
        ));
    }
    Ok(combined_pmax(psi, phi, 1, cat, m)?.p_max >= *lambda)
}

/// Smallest `k ≤ k_max` with `P_max(psi^⊗k → phi^⊗k) ≥ lambda^k`.
pub fn mlocc_attains(
    psi: &SchmidtVector,
    phi: &SchmidtVector,
    lambda: &Rational,
    k_max: u32,
) -> Result<Option<u32>> {
    check_lambda(lambda)?;
    let mut ladder = PowerLadder::new(psi, phi);
    let mut target = Rational::one();
    for k in 1..=k_max {
        target *= lambda;
        let (a, b) = ladder.power(k)?;
        if max_probability(a, b).p_max >= target {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

fn same_rank(psi: &SchmidtVector, phi: &SchmidtVector) -> Result<()> {
    if psi.len() != phi.len() {
        return Err(Error::DimensionMismatch {
            left: psi.len(),
            right: phi.len(),
        });
    }
    Ok(())
}

fn pow(r: &Rational, p: u32) -> Rational {
    (0..p).fold(Rational::one(), |acc, _| acc * r)
}

/// Bounds on the best catalyst-assisted probability for `p` copies.
pub fn assisted_bounds(psi: &SchmidtVector, phi: &SchmidtVector, p: u32) -> Result<BoundSandwich> {
    same_rank(psi, phi)?;
    if p == 0 {
        return Err(Error::InvalidArgument("power must be >= 1".into()));
    }
    let lower = pow(&max_probability(psi, phi).p_max, p);
    let upper = pow(&(psi.smallest() / phi.smallest()), p).min(Rational::one());
    Ok(BoundSandwich { lower, upper, p })
}

/// True when `P_max = α_n/β_n`: then neither copies nor catalysts can
/// improve the per-copy probability.
pub fn collective_useless(psi: &SchmidtVector, phi: &SchmidtVector) -> Result<bool> {
    same_rank(psi, phi)?;
    Ok(max_probability(psi, phi).p_max == psi.smallest() / phi.smallest())
}
