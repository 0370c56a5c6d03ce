//! The DR graph sum evaluated by exhaustive search over residues.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::graphs::{aut, enumerate, Key, Plain};
use crate::{lagrange_at_zero, Rational};

/// Every weighting mod `r` found by trying all `r^{2d}` residues on the edge
/// halves (edge `e` owns entries `2e`, `2e + 1`; legs follow).
pub fn weightings(g: &Plain, a: &[i64], r: u64) -> Vec<Vec<u64>> {
    search(g, a, r, &vec![0; g.nv])
}

/// `k`-weightings: the sum at `v` is `k(2g_v - 2 + n_v)` mod `r`.
pub fn twisted_weightings(g: &Plain, a: &[i64], r: u64, k: i64) -> Vec<Vec<u64>> {
    let gs = g.genera.as_ref().expect("twisted weightings need genera");
    let targets: Vec<i64> = (0..g.nv)
        .map(|v| {
            let n_v = g.legs.iter().filter(|&&x| x == v).count()
                + g.edges.iter().map(|&(x, y)| (x == v) as usize + (y == v) as usize).sum::<usize>();
            k * (2 * gs[v] as i64 - 2 + n_v as i64)
        })
        .collect();
    search(g, a, r, &targets)
}

fn search(g: &Plain, a: &[i64], r: u64, targets: &[i64]) -> Vec<Vec<u64>> {
    let d = g.edges.len();
    let legs: Vec<u64> = a.iter().map(|&x| x.rem_euclid(r as i64) as u64).collect();
    let mut out = Vec::new();
    let total = (r as u128).pow(2 * d as u32);
    for code in 0..total {
        let mut w: Vec<u64> = (0..2 * d).map(|i| (code / (r as u128).pow(i as u32) % r as u128) as u64).collect();
        if (0..d).any(|e| (w[2 * e] + w[2 * e + 1]) % r != 0) {
            continue;
        }
        let mut sums = vec![0u64; g.nv];
        for (e, &(x, y)) in g.edges.iter().enumerate() {
            sums[x] += w[2 * e];
            sums[y] += w[2 * e + 1];
        }
        for (i, &v) in g.legs.iter().enumerate() {
            sums[v] += legs[i];
        }
        if sums.iter().zip(targets).all(|(s, t)| (*s as i64 - t).rem_euclid(r as i64) == 0) {
            w.extend_from_slice(&legs);
            out.push(w);
        }
    }
    out
}

/// `r^{-h1} Σ_w Π_e w(h) w(h') / 2`.
pub fn coefficient(g: &Plain, a: &[i64], r: u64) -> Rational {
    weighted(g, r, weightings(g, a, r))
}

pub fn twisted_coefficient(g: &Plain, a: &[i64], r: u64, k: i64) -> Rational {
    weighted(g, r, twisted_weightings(g, a, r, k))
}

fn weighted(g: &Plain, r: u64, ws: Vec<Vec<u64>>) -> Rational {
    let d = g.edges.len();
    let mut total = BigInt::zero();
    for w in ws {
        let mut prod = BigInt::from(1);
        for e in 0..d {
            prod *= BigInt::from(w[2 * e]) * BigInt::from(w[2 * e + 1]);
        }
        total += prod;
    }
    Rational::new(total, BigInt::from(2).pow(d as u32) * BigInt::from(r).pow(g.h1() as u32))
}

#[derive(Clone, Debug)]
pub struct NaiveDr {
    pub moduli: Vec<i64>,
    /// Genus-free representatives with nonzero constant term, divided by
    /// the automorphism count.
    pub terms: BTreeMap<Key, (Plain, Rational)>,
}

/// Moduli `r_start ..` with `2d + 4` entries, `r_start = max(5, Σ|a_i| + 1)`.
pub fn moduli(a: &[i64], d: usize) -> Vec<i64> {
    let start = 5.max(a.iter().map(|x| x.abs()).sum::<i64>() + 1);
    (start..start + 2 * d as i64 + 4).collect()
}

/// Constant term in `r` of the untwisted DR sum with exactly `d` edges.
///
/// Each coefficient is interpolated through two overlapping windows of
/// `2d + 3` moduli; disagreement means the samples were not polynomial.
pub fn constant_term(g: u32, a: &[i64], d: usize) -> NaiveDr {
    let rs = moduli(a, d);
    let mut terms = BTreeMap::new();
    for (key, plain) in enumerate(a.len(), d, None, Some(g as usize)) {
        let samples: Vec<(i64, Rational)> = rs.iter().map(|&r| (r, coefficient(&plain, a, r as u64))).collect();
        let w = 2 * d + 3;
        let c0 = lagrange_at_zero(&samples[..w]);
        let c1 = lagrange_at_zero(&samples[samples.len() - w..]);
        assert_eq!(c0, c1, "samples are not polynomial for {plain:?}");
        if !c0.is_zero() {
            let c = c0 / Rational::from_integer(aut(&plain).into());
            terms.insert(key, (plain, c));
        }
    }
    NaiveDr { moduli: rs, terms }
}
