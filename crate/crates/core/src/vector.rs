//! Canonical Schmidt coefficient vectors.
//!
//! A [`SchmidtVector`] is stored run-length compressed: a list of distinct
//! coefficient values in strictly decreasing order, each with its
//! multiplicity. Tensor powers of small vectors repeat values heavily, so
//! `(3/5, 2/5)^⊗11` has 2048 components but only 12 runs.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::limits;
use crate::rational::{format_fraction, from_integer, parse_rational, Rational};

/// A block of `count` equal coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Run {
    pub value: Rational,
    pub count: u64,
}

/// Nonincreasing, strictly positive probability vector summing to one.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SchmidtVector {
    runs: Vec<Run>,
    len: u64,
}

impl SchmidtVector {
    /// Builds a vector from coefficients in any order. Zeros are dropped;
    /// the exact sum must be one.
    pub fn new(coeffs: Vec<Rational>) -> Result<Self> {
        let coeffs = positive_entries(coeffs)?;
        let sum: Rational = coeffs.iter().sum();
        if !sum.is_one() {
            return Err(Error::NotNormalized {
                sum: format_fraction(&sum),
            });
        }
        Ok(Self::from_weighted(coeffs.into_iter().map(|v| (v, 1))))
    }

    /// Like [`SchmidtVector::new`] but rescales by the exact sum.
    pub fn normalized(coeffs: Vec<Rational>) -> Result<Self> {
        let coeffs = positive_entries(coeffs)?;
        let sum: Rational = coeffs.iter().sum();
        Ok(Self::from_weighted(
            coeffs.into_iter().map(|v| (v / &sum, 1)),
        ))
    }

    /// Builds a vector from `(value, multiplicity)` pairs in any order.
    pub fn from_runs(runs: Vec<Run>) -> Result<Self> {
        if runs.iter().any(|r| r.value.is_negative()) {
            let bad = runs.iter().find(|r| r.value.is_negative()).unwrap();
            return Err(Error::NonPositiveEntry(format_fraction(&bad.value)));
        }
        let v = Self::from_weighted(runs.into_iter().map(|r| (r.value, r.count)));
        if v.runs.is_empty() {
            return Err(Error::EmptyInput);
        }
        let sum = v.sum();
        if !sum.is_one() {
            return Err(Error::NotNormalized {
                sum: format_fraction(&sum),
            });
        }
        Ok(v)
    }

    /// Parses comma-separated decimals or fractions, e.g. `"0.4,0.4,0.1,0.1"`
    /// or `"50/103,30/103,23/103"`.
    pub fn parse(text: &str, normalize: bool) -> Result<Self> {
        let coeffs = text
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(parse_rational)
            .collect::<Result<Vec<_>>>()?;
        if normalize {
            Self::normalized(coeffs)
        } else {
            Self::new(coeffs)
        }
    }

    /// Maximally entangled vector `(1/n, …, 1/n)`.
    pub fn uniform(n: u64) -> Self {
        assert!(n > 0, "uniform vector needs at least one component");
        Self {
            runs: vec![Run {
                value: Rational::one() / from_integer(n),
                count: n,
            }],
            len: n,
        }
    }

    /// The point mass `(1)`, a product state.
    pub fn product_state() -> Self {
        Self::uniform(1)
    }

    // Canonicalizes without checking the sum.
    fn from_weighted(items: impl IntoIterator<Item = (Rational, u64)>) -> Self {
        let mut items: Vec<(Rational, u64)> = items
            .into_iter()
            .filter(|(v, c)| *c > 0 && v.is_positive())
            .collect();
        items.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        let mut runs: Vec<Run> = Vec::with_capacity(items.len());
        for (value, count) in items {
            match runs.last_mut() {
                Some(last) if last.value == value => last.count += count,
                _ => runs.push(Run { value, count }),
            }
        }
        let len = runs.iter().map(|r| r.count).sum();
        Self { runs, len }
    }

    /// Number of (expanded) components.
    pub fn len(&self) -> u64 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Number of distinct coefficient values.
    pub fn distinct_len(&self) -> usize {
        self.runs.len()
    }

    pub fn runs(&self) -> &[Run] {
        &self.runs
    }

    pub fn largest(&self) -> &Rational {
        &self.runs[0].value
    }

    pub fn smallest(&self) -> &Rational {
        &self.runs[self.runs.len() - 1].value
    }

    /// A product state has a single coefficient equal to one.
    pub fn is_product(&self) -> bool {
        self.len == 1
    }

    /// Coefficient at 0-based position `index`, or `None` past the end.
    pub fn get(&self, index: u64) -> Option<&Rational> {
        let mut offset = 0;
        for run in &self.runs {
            offset += run.count;
            if index < offset {
                return Some(&run.value);
            }
        }
        None
    }

    /// Iterates the expanded coefficients in nonincreasing order.
    pub fn iter(&self) -> impl Iterator<Item = &Rational> + '_ {
        self.runs
            .iter()
            .flat_map(|r| std::iter::repeat_n(&r.value, r.count as usize))
    }

    pub fn to_vec(&self) -> Vec<Rational> {
        self.iter().cloned().collect()
    }

    pub fn sum(&self) -> Rational {
        self.runs
            .iter()
            .map(|r| &r.value * from_integer(r.count))
            .sum()
    }

    /// Sorted vector of all pairwise products, checked against the
    /// process-wide component cap.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        self.tensor_capped(other, limits::component_cap())
    }

    pub fn tensor_capped(&self, other: &Self, cap: u64) -> Result<Self> {
        limits::check(u128::from(self.len) * u128::from(other.len), cap)?;
        let mut items = Vec::with_capacity(self.runs.len() * other.runs.len());
        for a in &self.runs {
            for b in &other.runs {
                items.push((&a.value * &b.value, a.count * b.count));
            }
        }
        Ok(Self::from_weighted(items))
    }

    /// `self^⊗k` for `k ≥ 1`.
    pub fn power(&self, k: u32) -> Result<Self> {
        self.power_capped(k, limits::component_cap())
    }

    pub fn power_capped(&self, k: u32, cap: u64) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidArgument("tensor power needs k >= 1".into()));
        }
        let expanded = u128::from(self.len).checked_pow(k).unwrap_or(u128::MAX);
        limits::check(expanded, cap)?;
        let mut acc = self.clone();
        for _ in 1..k {
            acc = acc.tensor_capped(self, cap)?;
        }
        Ok(acc)
    }
}

fn positive_entries(coeffs: Vec<Rational>) -> Result<Vec<Rational>> {
    if let Some(neg) = coeffs.iter().find(|v| v.is_negative()) {
        return Err(Error::NonPositiveEntry(format_fraction(neg)));
    }
    let coeffs: Vec<Rational> = coeffs.into_iter().filter(|v| !v.is_zero()).collect();
    if coeffs.is_empty() {
        return Err(Error::EmptyInput);
    }
    Ok(coeffs)
}

/// Canonical text: lowest-terms fractions, comma separated.
impl fmt::Display for SchmidtVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(&format_fraction(v))?;
        }
        Ok(())
    }
}

impl FromStr for SchmidtVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s, false)
    }
}
