//! Depth-first enumeration of baskets in canonical order.
//!
//! Baskets are multisets of points; listing the point universe sorted by
//! `(r, b)` and only ever appending a point at or after the last one visits
//! each multiset exactly once. Weights `r - 1/r` grow with `r`, so once a
//! point overflows the singularity budget every later point does too and the
//! branch is cut.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{gcd, Rational};
use crate::basket::{Basket, OrbifoldPoint};
use crate::error::Result;
use crate::fano::{chi_t_a, compat_check, possible_q, primitive_volume, FanoCandidate, IndexMode, SearchConfig};
use crate::riemann_roch::{chi_neg_nK, h0_neg_K, hilbert_coeffs};

/// All baskets with singularity sum strictly below `budget`, drawn from a
/// filtered point universe.
pub struct BasketSearch {
    points: Vec<OrbifoldPoint>,
    weights: Vec<Rational>,
    budget: Rational,
    max_points: usize,
}

impl BasketSearch {
    /// `keep` filters local orders; `budget` is the exclusive cap on
    /// `Σ (r - 1/r)`.
    pub fn new(budget: Rational, max_points: usize, keep: impl Fn(u32) -> bool) -> Self {
        let mut points = Vec::new();
        let mut r: u32 = 2;
        loop {
            let w = Rational::new(r as i64 * r as i64 - 1, r as i64);
            if w >= budget {
                break;
            }
            if keep(r) {
                for b in 1..=r / 2 {
                    if gcd(b as u64, r as u64) == 1 {
                        points.push(OrbifoldPoint::new(b as i64, r as i64).expect("valid point"));
                    }
                }
            }
            r += 1;
        }
        let weights = points.iter().map(OrbifoldPoint::singularity_weight).collect();
        BasketSearch { points, weights, budget, max_points }
    }

    pub fn universe(&self) -> &[OrbifoldPoint] {
        &self.points
    }

    fn extend(&self, start: usize, sum: &Rational, current: &mut Vec<OrbifoldPoint>, out: &mut Vec<Basket>) {
        out.push(Basket::new(current.clone()));
        if current.len() >= self.max_points {
            return;
        }
        for k in start..self.points.len() {
            let next = sum + &self.weights[k];
            if next >= self.budget {
                break;
            }
            current.push(self.points[k]);
            self.extend(k, &next, current, out);
            current.pop();
        }
    }

    /// Baskets whose smallest point is `points[first]`.
    fn subtree(&self, first: usize) -> Vec<Basket> {
        let mut out = Vec::new();
        if self.max_points == 0 || self.weights[first] >= self.budget {
            return out;
        }
        let mut current = vec![self.points[first]];
        self.extend(first, &self.weights[first].clone(), &mut current, &mut out);
        out
    }

    /// Every basket in the search space, including the empty one, in
    /// canonical order.
    pub fn baskets(&self, parallel: bool) -> Vec<Basket> {
        let roots = 0..self.points.len();
        let mut out = vec![Basket::empty()];
        if parallel {
            let parts: Vec<Vec<Basket>> = roots.into_par_iter().map(|k| self.subtree(k)).collect();
            out.extend(parts.into_iter().flatten());
        } else {
            for k in roots {
                out.extend(self.subtree(k));
            }
        }
        out.sort();
        out
    }
}

fn evaluate(q: u32, basket: Basket, config: &SearchConfig) -> Result<Option<FanoCandidate>> {
    let c2c1 = basket.c2c1();
    if !c2c1.is_positive() {
        return Ok(None);
    }
    let a3 = primitive_volume(q, &basket)?;
    if !a3.is_positive() || !compat_check(q, &basket, &a3, config.mode).passed() {
        return Ok(None);
    }
    for t in (1 - q as i64)..0 {
        if !chi_t_a(q, &basket, &a3, t)?.is_zero() {
            return Ok(None);
        }
    }
    let candidate = FanoCandidate::new(q, basket, a3, config.mode);
    let ratio = candidate.ratio();
    if ratio > config.ratio_lo && ratio <= config.ratio_hi.for_index(q) {
        Ok(Some(candidate))
    } else {
        Ok(None)
    }
}

/// Every `(q, basket, A³)` satisfying the index constraints with ratio
/// `c₁³/c₂c₁` inside the configured window, sorted by `q` then basket.
pub fn enumerate_windowed(config: &SearchConfig) -> Result<Vec<FanoCandidate>> {
    config.validate()?;
    let budget = Rational::integer(24) - &config.c2c1_min;
    let mut out = Vec::new();
    for &q in &config.q_range {
        let keep = |r: u32| gcd(q as u64, r as u64) == 1 && config.allowed_r.as_ref().is_none_or(|s| s.contains(&r));
        let search = BasketSearch::new(budget.clone(), config.max_points, keep);
        let baskets = search.baskets(config.parallel);
        let found: Vec<Option<FanoCandidate>> = if config.parallel {
            baskets.into_par_iter().map(|b| evaluate(q, b, config)).collect::<Result<_>>()?
        } else {
            baskets.into_iter().map(|b| evaluate(q, b, config)).collect::<Result<_>>()?
        };
        out.extend(found.into_iter().flatten());
    }
    out.sort_by(|a, b| (a.q, &a.basket).cmp(&(b.q, &b.basket)));
    Ok(out)
}

/// Parameters of [`enumerate_small_c2c1`].
#[derive(Clone, Debug)]
pub struct SmallC2c1Config {
    /// Exclusive upper bound on `c₂c₁`.
    pub threshold: Rational,
    /// Inclusive upper bound on `c₁³ / c₂c₁`.
    pub ratio_bound: Rational,
    /// `1` imposes only `h⁰(-K) ∈ Z≥0`; larger values also require
    /// `χ(-mK) ∈ Z` for `m <= depth`.
    pub h_depth: u32,
    pub allowed_r: Option<BTreeSet<u32>>,
    pub parallel: bool,
}

impl SmallC2c1Config {
    pub fn new(threshold: Rational, ratio_bound: Rational) -> Self {
        SmallC2c1Config { threshold, ratio_bound, h_depth: 1, allowed_r: None, parallel: false }
    }
}

/// A basket with small `c₂c₁` and an anticanonical degree compatible with
/// integral `h⁰(-K)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmallC2c1Candidate {
    pub basket: Basket,
    #[serde(rename = "R")]
    pub r_set: String,
    pub c2c1: Rational,
    pub c13: Rational,
    pub h0: Rational,
    /// `χ(-mK)` for `m = 0..=max(depth, 2)`.
    pub hilbert: Vec<Rational>,
    /// Weil indices compatible with `r_X·c₁³/q³ ∈ Z≥0`.
    pub possible_q: Vec<u32>,
}

fn small_candidates(basket: &Basket, config: &SmallC2c1Config) -> Vec<SmallC2c1Candidate> {
    let c2c1 = basket.c2c1();
    if !c2c1.is_positive() || c2c1 >= config.threshold {
        return Vec::new();
    }
    let r_x = basket.gorenstein_index();
    let cap = &config.ratio_bound * &c2c1;
    let k_max = (&cap * Rational::integer(r_x)).floor();
    let mut out = Vec::new();
    let mut k = num_bigint::BigInt::from(1);
    while k <= k_max {
        let c13 = Rational::new(k.clone(), r_x);
        k += 1;
        let h0 = h0_neg_K(basket, &c13);
        if !h0.is_nonnegative_integer() {
            continue;
        }
        if (2..=config.h_depth).any(|m| !chi_neg_nK(basket, &c13, m).is_integer()) {
            continue;
        }
        out.push(SmallC2c1Candidate {
            basket: basket.clone(),
            r_set: basket.r_set().to_string(),
            c2c1: c2c1.clone(),
            hilbert: hilbert_coeffs(basket, &c13, config.h_depth.max(2)),
            possible_q: possible_q(r_x, &c13, IndexMode::Weil),
            c13,
            h0,
        });
    }
    out
}

/// Baskets with `0 < c₂c₁ < threshold` together with every
/// `c₁³ = k/r_X <= ratio_bound·c₂c₁` making `h⁰(-K)` a nonnegative integer.
/// Sorted by basket, then `c₁³`.
pub fn enumerate_small_c2c1(config: &SmallC2c1Config) -> Vec<SmallC2c1Candidate> {
    let keep = |r: u32| config.allowed_r.as_ref().is_none_or(|s| s.contains(&r));
    let search = BasketSearch::new(Rational::integer(24), super::MAX_BASKET_POINTS, keep);
    let baskets = search.baskets(config.parallel);
    let mut out: Vec<SmallC2c1Candidate> = if config.parallel {
        baskets.par_iter().flat_map_iter(|b| small_candidates(b, config)).collect()
    } else {
        baskets.iter().flat_map(|b| small_candidates(b, config)).collect()
    };
    out.sort_by(|a, b| (&a.basket, &a.c13).cmp(&(&b.basket, &b.c13)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fano::UpperBound;
    use std::collections::BTreeMap;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn search_space_is_finite_and_bounded() {
        let s = BasketSearch::new(Rational::integer(24), super::super::MAX_BASKET_POINTS, |_| true);
        assert_eq!(s.universe().last().unwrap().r(), 24);
        let all = s.baskets(false);
        assert!(all.iter().all(|b| b.len() <= 16 && b.singularity_sum() < Rational::integer(24)));
        assert!(all.iter().any(|b| b.len() == 15));
        let unique: BTreeSet<_> = all.iter().collect();
        assert_eq!(unique.len(), all.len());
    }

    #[test]
    fn parallel_matches_serial() {
        let s = BasketSearch::new(Rational::integer(24), 16, |r| r % 5 != 0);
        assert_eq!(s.baskets(false), s.baskets(true));
    }

    #[test]
    fn max_points_respected() {
        let s = BasketSearch::new(Rational::integer(24), 2, |_| true);
        assert!(s.baskets(false).iter().all(|b| b.len() <= 2));
    }

    #[test]
    fn p1235_slice() {
        let mut config = SearchConfig::new([11], q("0"), UpperBound::Fixed(q("4")));
        config.allowed_r = Some([2, 3, 5].into());
        let found = enumerate_windowed(&config).unwrap();
        let hit = found.iter().find(|c| c.basket.to_string() == "1/2,1/3,2/5").expect("P(1,2,3,5) basket");
        assert_eq!(hit.a3, q("1/30"));
    }

    #[test]
    fn small_search_over_twos_is_empty() {
        let mut config = SmallC2c1Config::new(q("1/10"), q("25/8"));
        config.allowed_r = Some([2].into());
        assert!(enumerate_small_c2c1(&config).is_empty());
    }

    #[test]
    fn deeper_small_search_is_a_subset() {
        let shallow = enumerate_small_c2c1(&SmallC2c1Config::new(q("1/10"), q("25/8")));
        let mut deep_cfg = SmallC2c1Config::new(q("1/10"), q("25/8"));
        deep_cfg.h_depth = 3;
        let deep = enumerate_small_c2c1(&deep_cfg);
        let key = |c: &SmallC2c1Candidate| (c.basket.clone(), c.c13.clone());
        let shallow_keys: BTreeSet<_> = shallow.iter().map(key).collect();
        assert!(deep.iter().all(|c| shallow_keys.contains(&key(c))));
    }

    #[test]
    fn windowed_is_deterministic_under_parallelism() {
        let serial = enumerate_windowed(&SearchConfig::paper_window(5..=8)).unwrap();
        let mut cfg = SearchConfig::paper_window(5..=8);
        cfg.parallel = true;
        assert_eq!(serial, enumerate_windowed(&cfg).unwrap());
        let classes: BTreeMap<_, _> = serial
            .iter()
            .map(|c| ((c.q, c.basket.r_set().to_string()), (c.c2c1.to_string(), c.c13.to_string())))
            .collect();
        assert_eq!(classes.len(), 3);
    }
}
