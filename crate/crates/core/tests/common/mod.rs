//! Brute-force oracles and seeded generators shared by the integration
//! suites. Oracles work on fully expanded, explicitly sorted vectors and
//! never call into the library's segment machinery.

#![allow(dead_code)]

use entcat::{Rational, SchmidtVector};
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn v(s: &str) -> SchmidtVector {
    s.parse().unwrap()
}

pub fn r(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Descending copy padded with zeros to `n`.
pub fn padded(x: &[Rational], n: usize) -> Vec<Rational> {
    let mut out = x.to_vec();
    out.sort_by(|a, b| b.cmp(a));
    out.resize(n.max(out.len()), Rational::zero());
    out
}

/// All `l` (1-based) where a prefix sum of `x` exceeds that of `y`.
pub fn oracle_violations(x: &[Rational], y: &[Rational]) -> Vec<u64> {
    let n = x.len().max(y.len());
    let (xs, ys) = (padded(x, n), padded(y, n));
    let (mut sx, mut sy) = (Rational::zero(), Rational::zero());
    let mut out = Vec::new();
    for l in 0..n {
        sx += &xs[l];
        sy += &ys[l];
        if sx > sy {
            out.push(l as u64 + 1);
        }
    }
    out
}

pub fn oracle_majorizes(x: &[Rational], y: &[Rational]) -> bool {
    oracle_violations(x, y).is_empty()
}

pub fn oracle_tensor(x: &[Rational], y: &[Rational]) -> Vec<Rational> {
    let mut out: Vec<Rational> = x
        .iter()
        .flat_map(|a| y.iter().map(move |b| a * b))
        .collect();
    out.sort_by(|a, b| b.cmp(a));
    out
}

pub fn oracle_power(x: &[Rational], k: u32) -> Vec<Rational> {
    (1..k).fold(x.to_vec(), |acc, _| oracle_tensor(&acc, x))
}

/// Minimum of tail-sum ratios; zero when the target has larger rank.
pub fn oracle_pmax(x: &[Rational], y: &[Rational]) -> Rational {
    let rank = |v: &[Rational]| v.iter().filter(|c| !c.is_zero()).count();
    if rank(y) > rank(x) {
        return Rational::zero();
    }
    let n = x.len().max(y.len());
    let (xs, ys) = (padded(x, n), padded(y, n));
    (0..n)
        .filter_map(|l| {
            let ey: Rational = ys[l..].iter().sum();
            let ex: Rational = xs[l..].iter().sum();
            (!ey.is_zero()).then(|| ex / ey)
        })
        .min()
        .unwrap_or_else(Rational::one)
}

pub fn sv(x: &[Rational]) -> SchmidtVector {
    SchmidtVector::new(x.to_vec()).unwrap()
}

/// Probability vector of `dim` entries with integer weights in `1..=w`.
pub fn random_vector(rng: &mut ChaCha8Rng, dim: usize, w: i64) -> Vec<Rational> {
    let weights: Vec<i64> = (0..dim).map(|_| rng.gen_range(1..=w)).collect();
    let total: i64 = weights.iter().sum();
    weights.into_iter().map(|a| r(a, total)).collect()
}

/// A vector majorized by `y`: random T-transforms of `y` padded to `dim`.
pub fn majorized_by(rng: &mut ChaCha8Rng, y: &[Rational], dim: usize) -> Vec<Rational> {
    let mut x = padded(y, dim);
    for _ in 0..rng.gen_range(0..=3) {
        let i = rng.gen_range(0..x.len());
        let j = rng.gen_range(0..x.len());
        let t = r(rng.gen_range(0..=4), 4);
        let (a, b) = (x[i].clone(), x[j].clone());
        x[i] = &t * &a + (Rational::one() - &t) * &b;
        x[j] = (Rational::one() - &t) * &a + &t * &b;
    }
    x.retain(|c| !c.is_zero());
    x
}

/// Uniformly chosen nonincreasing positive tuple of `dim` parts summing to `q`.
pub fn random_grid_point(rng: &mut ChaCha8Rng, dim: usize, q: u64) -> Vec<Rational> {
    let all = grid(dim, q);
    let pick = &all[rng.gen_range(0..all.len())];
    pick.iter().map(|&a| r(a as i64, q as i64)).collect()
}

/// Every nonincreasing positive `dim`-tuple summing to `q`, by recursion.
pub fn grid(dim: usize, q: u64) -> Vec<Vec<u64>> {
    fn go(left: u64, parts: usize, cap: u64, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if parts == 0 {
            if left == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        for a in (1..=cap.min(left)).rev() {
            prefix.push(a);
            go(left - a, parts - 1, a, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(q, dim, q, &mut Vec::new(), &mut out);
    out
}

pub fn fraction_vec(nums: &[u64], q: u64) -> Vec<Rational> {
    nums.iter().map(|&a| r(a as i64, q as i64)).collect()
}
