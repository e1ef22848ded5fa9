//! Majorization, tail sums and the strict-violation index set.
//!
//! All comparisons run over *segments*: maximal position ranges where both
//! (zero-padded) vectors are constant. Prefix sums are linear inside a
//! segment, so every question about "all l" reduces to arithmetic on the
//! segment endpoints and never expands the run-length encoding.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{from_integer, Rational};
use crate::vector::SchmidtVector;

/// Outcome of testing `x ≺ y`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FeasibilityReport {
    pub feasible: bool,
    /// 1-based prefix lengths `l` where `Σ_{i≤l} x_i > Σ_{i≤l} y_i`. For
    /// compressed inputs only the smallest violated `l` of each segment is
    /// listed.
    pub violated_prefixes: Vec<u64>,
    /// Common (padded) length of the compared vectors.
    pub checked_length: u64,
}

/// Prefix lengths `1 ≤ l < n` with a strict prefix-sum excess.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct LSet {
    pub indices: Vec<u64>,
}

impl LSet {
    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, l: u64) -> bool {
        self.indices.binary_search(&l).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.indices.iter().copied()
    }
}

/// Positions `(start, end]` over which both padded vectors are constant.
#[derive(Debug, Clone)]
pub(crate) struct Segment {
    pub start: u64,
    pub end: u64,
    pub x_value: Rational,
    pub y_value: Rational,
    /// Sum of the first `start` entries of `x`.
    pub x_prefix: Rational,
    pub y_prefix: Rational,
}

impl Segment {
    pub fn x_prefix_at(&self, j: u64) -> Rational {
        &self.x_prefix + &self.x_value * from_integer(j - self.start)
    }

    pub fn y_prefix_at(&self, j: u64) -> Rational {
        &self.y_prefix + &self.y_value * from_integer(j - self.start)
    }

    /// Inclusive range of positions `l` in `(start, min(end, last)]` where
    /// the `x` prefix strictly exceeds the `y` prefix.
    fn excess_range(&self, last: u64) -> Option<(u64, u64)> {
        let hi = self.end.min(last);
        if hi <= self.start {
            return None;
        }
        let span = hi - self.start;
        let d0 = &self.x_prefix - &self.y_prefix;
        let slope = &self.x_value - &self.y_value;
        // D(t) = d0 + t·slope for t in 1..=span
        if slope.is_zero() {
            return d0.is_positive().then_some((self.start + 1, hi));
        }
        if slope.is_positive() {
            let t_min = (-d0 / &slope).floor().to_integer() + BigInt::one();
            let t_min = t_min.max(BigInt::one());
            let t_min = t_min.to_u64().filter(|&t| t <= span)?;
            Some((self.start + t_min, hi))
        } else {
            if !d0.is_positive() {
                return None;
            }
            let t_max = (d0 / (-slope)).ceil().to_integer() - BigInt::one();
            if t_max < BigInt::one() {
                return None;
            }
            let t_max = t_max.to_u64().map_or(span, |t| t.min(span));
            Some((self.start + 1, self.start + t_max))
        }
    }
}

/// Splits the zero-padded pair into constant segments covering `(0, n]`.
pub(crate) fn segments(x: &SchmidtVector, y: &SchmidtVector) -> Vec<Segment> {
    let n = x.len().max(y.len());
    let (xr, yr) = (x.runs(), y.runs());
    let (mut i, mut j) = (0usize, 0usize);
    let (mut x_left, mut y_left) = (
        xr.first().map_or(0, |r| r.count),
        yr.first().map_or(0, |r| r.count),
    );
    let mut pos = 0u64;
    let (mut x_prefix, mut y_prefix) = (Rational::zero(), Rational::zero());
    let mut out = Vec::with_capacity(xr.len() + yr.len());
    while pos < n {
        let x_value = xr.get(i).map_or_else(Rational::zero, |r| r.value.clone());
        let y_value = yr.get(j).map_or_else(Rational::zero, |r| r.value.clone());
        let step = match (i < xr.len(), j < yr.len()) {
            (true, true) => x_left.min(y_left),
            (true, false) => x_left,
            (false, true) => y_left,
            (false, false) => unreachable!("position below padded length"),
        };
        let seg = Segment {
            start: pos,
            end: pos + step,
            x_value,
            y_value,
            x_prefix: x_prefix.clone(),
            y_prefix: y_prefix.clone(),
        };
        x_prefix = seg.x_prefix_at(seg.end);
        y_prefix = seg.y_prefix_at(seg.end);
        pos = seg.end;
        out.push(seg);
        if i < xr.len() {
            x_left -= step;
            if x_left == 0 {
                i += 1;
                x_left = xr.get(i).map_or(0, |r| r.count);
            }
        }
        if j < yr.len() {
            y_left -= step;
            if y_left == 0 {
                j += 1;
                y_left = yr.get(j).map_or(0, |r| r.count);
            }
        }
    }
    out
}

/// Tests `x ≺ y`: every prefix sum of `x` is at most that of `y`.
pub fn majorizes(x: &SchmidtVector, y: &SchmidtVector) -> FeasibilityReport {
    let n = x.len().max(y.len());
    let violated_prefixes: Vec<u64> = segments(x, y)
        .iter()
        .filter_map(|s| s.excess_range(n - 1).map(|(lo, _)| lo))
        .collect();
    FeasibilityReport {
        feasible: violated_prefixes.is_empty(),
        violated_prefixes,
        checked_length: n,
    }
}

/// Sum of the first `j` coefficients (`j` may exceed the length).
pub fn prefix_sum(x: &SchmidtVector, j: u64) -> Rational {
    let mut acc = Rational::zero();
    let mut pos = 0;
    for run in x.runs() {
        if pos >= j {
            break;
        }
        let take = run.count.min(j - pos);
        acc += &run.value * from_integer(take);
        pos += take;
    }
    acc
}

/// `E_l(x) = Σ_{i=l}^{n} x_i`, 1-based.
pub fn tail_sum(x: &SchmidtVector, l: u64) -> Result<Rational> {
    if l == 0 || l > x.len() {
        return Err(Error::IndexOutOfRange {
            index: l,
            len: x.len(),
        });
    }
    Ok(Rational::one() - prefix_sum(x, l - 1))
}

/// All `l` in `[1, n)` with `Σ_{j≤l} psi_j > Σ_{j≤l} phi_j`.
pub fn l_set(psi: &SchmidtVector, phi: &SchmidtVector) -> LSet {
    let n = psi.len().max(phi.len());
    let indices = segments(psi, phi)
        .iter()
        .filter_map(|s| s.excess_range(n - 1))
        .flat_map(|(lo, hi)| lo..=hi)
        .collect();
    LSet { indices }
}

/// Neither state can be converted into the other with certainty.
pub fn incomparable(psi: &SchmidtVector, phi: &SchmidtVector) -> bool {
    !majorizes(psi, phi).feasible && !majorizes(phi, psi).feasible
}
