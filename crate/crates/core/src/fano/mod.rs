//! Index constraints on a terminal Q-Fano threefold `X` with `-K ~ qA`, and
//! exhaustive searches over baskets that satisfy them.
//!
//! For `-q < t < 0` vanishing forces
//!
//! ```text
//! 0 = χ(tA) = 1 + t(q+t)(q+2t)A³/12 + t·c₂c₁/(12q) + Σ_Q c_Q(tA)
//! ```
//!
//! with local index `i` solving `q·i ≡ -t (mod r)`. The `t = -1` case
//! determines `A³` from the basket ([`primitive_volume`]); the others are
//! checks ([`chi_t_a`]). On top of that `r_X·A³` must be a nonnegative
//! integer and, for the Weil index, `gcd(r_X, q) = 1` ([`compat_check`]).

mod exclusions;
mod search;

pub use exclusions::{Exclusion, ExclusionList, ExclusionOutcome, Removed};
pub use search::{enumerate_small_c2c1, enumerate_windowed, BasketSearch, SmallC2c1Candidate, SmallC2c1Config};

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::{gcd, mod_inverse, smallest_residue, Rational};
use crate::basket::Basket;
use crate::error::{Error, Result};
use crate::hn::km_bound;
use crate::riemann_roch::{h0_neg_K, local_term, LocalDatum};

/// Which Fano index `q` refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum IndexMode {
    /// `-K ~ qB` (linear equivalence).
    #[default]
    #[serde(rename = "qW")]
    Weil,
    /// `-K ~_Q qA` (Q-linear equivalence).
    #[serde(rename = "qQ")]
    Rational,
}

impl fmt::Display for IndexMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IndexMode::Weil => "qW",
            IndexMode::Rational => "qQ",
        })
    }
}

impl FromStr for IndexMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "qW" | "qw" | "weil" => Ok(IndexMode::Weil),
            "qQ" | "qq" | "rational" => Ok(IndexMode::Rational),
            _ => Err(Error::Parse(format!("unknown index mode {s:?} (expected qW or qQ)"))),
        }
    }
}

/// The local index of `tA` at a point of order `r`: the `i` in `[0, r)` with
/// `q·i ≡ -t (mod r)`.
pub fn local_index_t_a(q: u32, t: i64, r: u32) -> Result<u32> {
    if t <= -(q as i64) || t >= 0 {
        return Err(Error::Domain(format!("t = {t} outside (-{q}, 0)")));
    }
    if gcd(q as u64, r as u64) != 1 {
        return Err(Error::IncompatibleIndex { q, r });
    }
    let inv = mod_inverse(q as i64, r as i64)?;
    Ok(smallest_residue(inv * -t, r as i64)? as u32)
}

fn local_sum_t_a(q: u32, basket: &Basket, t: i64) -> Result<Rational> {
    let mut total = Rational::zero();
    for &p in basket.points() {
        let i = local_index_t_a(q, t, p.r())?;
        total += local_term(&LocalDatum::new(p, i)?);
    }
    Ok(total)
}

/// `A³ = 12/((q-1)(q-2)) · (1 - c₂c₁/(12q) + Σ_Q c_Q(-A))`.
///
/// May be zero or negative; callers reject those.
pub fn primitive_volume(q: u32, basket: &Basket) -> Result<Rational> {
    if q < 3 {
        return Err(Error::VolumeUndefined(q));
    }
    let q64 = q as i64;
    let inner = Rational::one() - basket.c2c1() / Rational::integer(12 * q64) + local_sum_t_a(q, basket, -1)?;
    Ok(Rational::new(12, (q64 - 1) * (q64 - 2)) * inner)
}

/// `χ(tA)` for `-q < t < 0`; zero for a genuine candidate.
pub fn chi_t_a(q: u32, basket: &Basket, a3: &Rational, t: i64) -> Result<Rational> {
    let q64 = q as i64;
    let cubic = Rational::new(t * (q64 + t) * (q64 + 2 * t), 12) * a3;
    let linear = Rational::new(t, 12 * q64) * basket.c2c1();
    Ok(Rational::one() + cubic + linear + local_sum_t_a(q, basket, t)?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Compat {
    Pass,
    /// Weil index not coprime to the Gorenstein index.
    GcdFailure {
        r_x: u64,
        q: u32,
    },
    /// `r_X·A³` is not an integer.
    NonIntegralVolume,
    /// `r_X·A³ < 0`.
    NegativeVolume,
}

impl Compat {
    pub fn passed(&self) -> bool {
        matches!(self, Compat::Pass)
    }
}

impl fmt::Display for Compat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Compat::Pass => f.write_str("pass"),
            Compat::GcdFailure { r_x, q } => write!(f, "fail: gcd({r_x}, {q}) != 1"),
            Compat::NonIntegralVolume => f.write_str("fail: r_X·A³ not an integer"),
            Compat::NegativeVolume => f.write_str("fail: r_X·A³ negative"),
        }
    }
}

/// `gcd(r_X, q) = 1` (Weil index only) and `r_X·A³ ∈ Z≥0`.
pub fn compat_check(q: u32, basket: &Basket, a3: &Rational, mode: IndexMode) -> Compat {
    compat_check_rx(q, basket.gorenstein_index(), a3, mode)
}

/// [`compat_check`] given the Gorenstein index directly.
pub fn compat_check_rx(q: u32, r_x: u64, a3: &Rational, mode: IndexMode) -> Compat {
    if mode == IndexMode::Weil && gcd(r_x, q as u64) != 1 {
        return Compat::GcdFailure { r_x, q };
    }
    let scaled = Rational::integer(r_x) * a3;
    if !scaled.is_integer() {
        Compat::NonIntegralVolume
    } else if scaled.is_negative() {
        Compat::NegativeVolume
    } else {
        Compat::Pass
    }
}

/// Every `q >= 1` with `r_X·c₁³/q³ ∈ Z≥0` (and `gcd(r_X, q) = 1` for the Weil
/// index). Empty unless `r_X·c₁³` is a positive integer.
pub fn possible_q(r_x: u64, c13: &Rational, mode: IndexMode) -> Vec<u32> {
    let scaled = Rational::integer(r_x) * c13;
    if !scaled.is_integer() || !scaled.is_positive() {
        return Vec::new();
    }
    let n = scaled.numer().clone();
    let mut out = Vec::new();
    let mut q: u32 = 1;
    loop {
        let cube = num_bigint::BigInt::from(q).pow(3);
        if cube > n {
            break;
        }
        let divides = (&n % &cube) == num_bigint::BigInt::from(0);
        if divides && (mode == IndexMode::Rational || gcd(r_x, q as u64) == 1) {
            out.push(q);
        }
        q += 1;
    }
    out
}

/// Upper end of the ratio window `c₁³ / c₂c₁`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UpperBound {
    Fixed(Rational),
    /// [`km_bound`] of the index under consideration.
    KmBound,
}

impl UpperBound {
    pub fn for_index(&self, q: u32) -> Rational {
        match self {
            UpperBound::Fixed(b) => b.clone(),
            UpperBound::KmBound => km_bound(q).value,
        }
    }
}

/// Parameters of [`enumerate_windowed`].
///
/// Candidates satisfy `ratio_lo < c₁³/c₂c₁ <= ratio_hi` and
/// `c₂c₁ > c2c1_min`.
#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub q_range: BTreeSet<u32>,
    pub ratio_lo: Rational,
    pub ratio_hi: UpperBound,
    pub mode: IndexMode,
    pub max_points: usize,
    pub c2c1_min: Rational,
    /// Restrict baskets to these local orders.
    pub allowed_r: Option<BTreeSet<u32>>,
    /// Spread the search over the rayon pool. Output is identical either way.
    pub parallel: bool,
}

/// Point count can never exceed this: every point contributes at least 3/2
/// to a singularity sum that stays below 24.
pub const MAX_BASKET_POINTS: usize = 16;

impl SearchConfig {
    pub fn new(q_range: impl IntoIterator<Item = u32>, ratio_lo: Rational, ratio_hi: UpperBound) -> Self {
        SearchConfig {
            q_range: q_range.into_iter().collect(),
            ratio_lo,
            ratio_hi,
            mode: IndexMode::Weil,
            max_points: MAX_BASKET_POINTS,
            c2c1_min: Rational::zero(),
            allowed_r: None,
            parallel: false,
        }
    }

    /// `(121/41, km_bound(q)]` over the given indices.
    pub fn paper_window(q_range: impl IntoIterator<Item = u32>) -> Self {
        SearchConfig::new(q_range, Rational::new(121, 41), UpperBound::KmBound)
    }

    /// `(121/41, 64/21]` at `q = 4`.
    pub fn remark_window() -> Self {
        SearchConfig::new([4], Rational::new(121, 41), UpperBound::Fixed(Rational::new(64, 21)))
    }

    pub fn validate(&self) -> Result<()> {
        if self.q_range.is_empty() {
            return Err(Error::Config("empty index range".into()));
        }
        if let Some(&q) = self.q_range.iter().find(|&&q| q < 3) {
            return Err(Error::Config(format!("volume formula needs q >= 3, got {q}")));
        }
        for &q in &self.q_range {
            if self.ratio_lo >= self.ratio_hi.for_index(q) {
                return Err(Error::Config(format!(
                    "empty window ({}, {}] at q = {q}",
                    self.ratio_lo,
                    self.ratio_hi.for_index(q)
                )));
            }
        }
        if self.c2c1_min.is_negative() {
            return Err(Error::Config("c2c1_min must be nonnegative".into()));
        }
        if self.max_points == 0 {
            return Err(Error::Config("max_points must be positive".into()));
        }
        Ok(())
    }
}

/// A basket with an index and primitive volume that passed the searches.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanoCandidate {
    pub q: u32,
    pub basket: Basket,
    pub a3: Rational,
    pub c13: Rational,
    pub c2c1: Rational,
    pub mode: IndexMode,
}

impl FanoCandidate {
    /// Fills in `c₁³ = q³A³` and `c₂c₁` from the basket.
    pub fn new(q: u32, basket: Basket, a3: Rational, mode: IndexMode) -> Self {
        let c13 = Rational::integer((q as i64).pow(3)) * &a3;
        let c2c1 = basket.c2c1();
        FanoCandidate { q, basket, a3, c13, c2c1, mode }
    }

    /// `c₁³ / c₂c₁`.
    pub fn ratio(&self) -> Rational {
        &self.c13 / &self.c2c1
    }

    pub fn h0(&self) -> Rational {
        h0_neg_K(&self.basket, &self.c13)
    }

    pub fn record(&self) -> CandidateRecord {
        CandidateRecord {
            q: self.q,
            basket: self.basket.clone(),
            r_set: self.basket.r_set().to_string(),
            a3: self.a3.clone(),
            c13: self.c13.clone(),
            c2c1: self.c2c1.clone(),
            ratio: self.ratio(),
            h0: self.h0(),
        }
    }

    /// Re-checks every constraint the windowed search imposes (the window
    /// itself excluded).
    pub fn recheck(&self) -> Result<()> {
        let fail = |what: String| Err(Error::Domain(format!("candidate q={} [{}]: {what}", self.q, self.basket)));
        if self.c13 != Rational::integer((self.q as i64).pow(3)) * &self.a3 {
            return fail("c13 != q^3 A3".into());
        }
        if self.c2c1 != self.basket.c2c1() {
            return fail("c2c1 mismatch".into());
        }
        if !self.a3.is_positive() {
            return fail("A3 not positive".into());
        }
        let compat = compat_check(self.q, &self.basket, &self.a3, self.mode);
        if !compat.passed() {
            return fail(compat.to_string());
        }
        for t in (1 - self.q as i64)..0 {
            let chi = chi_t_a(self.q, &self.basket, &self.a3, t)?;
            if !chi.is_zero() {
                return fail(format!("chi(tA) = {chi} at t = {t}"));
            }
        }
        Ok(())
    }
}

/// The JSON-lines form of a [`FanoCandidate`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateRecord {
    pub q: u32,
    pub basket: Basket,
    #[serde(rename = "R")]
    pub r_set: String,
    #[serde(rename = "A3")]
    pub a3: Rational,
    pub c13: Rational,
    pub c2c1: Rational,
    pub ratio: Rational,
    pub h0: Rational,
}

impl CandidateRecord {
    pub fn into_candidate(self, mode: IndexMode) -> FanoCandidate {
        FanoCandidate::new(self.q, self.basket, self.a3, mode)
    }
}
