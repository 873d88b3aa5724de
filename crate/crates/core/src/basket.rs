//! Orbifold points, baskets, and the invariants read directly off a basket.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::{gcd, lcm, Rational};
use crate::error::{Error, Result};

/// A terminal cyclic quotient point of type `1/r(1,-1,b)`.
///
/// `b` and `r - b` describe the same germ; the stored representative always
/// has `0 < b <= r/2`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct OrbifoldPoint {
    b: u32,
    r: u32,
}

impl OrbifoldPoint {
    /// Builds the point from raw `(b, r)`, folding `b > r/2` onto `r - b`.
    pub fn new(b: i64, r: i64) -> Result<Self> {
        if r < 2 {
            return Err(Error::InvalidPoint { b, r, reason: "r must be at least 2" });
        }
        if r > u32::MAX as i64 {
            return Err(Error::InvalidPoint { b, r, reason: "r out of range" });
        }
        if b <= 0 || b >= r {
            return Err(Error::InvalidPoint { b, r, reason: "b must satisfy 0 < b < r" });
        }
        if gcd(b as u64, r as u64) != 1 {
            return Err(Error::InvalidPoint { b, r, reason: "b must be coprime to r" });
        }
        let b = if 2 * b > r { r - b } else { b };
        Ok(OrbifoldPoint { b: b as u32, r: r as u32 })
    }

    pub fn b(&self) -> u32 {
        self.b
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    /// This point's contribution `r - 1/r` to the singularity sum.
    pub fn singularity_weight(&self) -> Rational {
        let r = self.r as i64;
        Rational::new(r * r - 1, r)
    }
}

impl Ord for OrbifoldPoint {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.r, self.b).cmp(&(other.r, other.b))
    }
}

impl PartialOrd for OrbifoldPoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for OrbifoldPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.b, self.r)
    }
}

impl fmt::Debug for OrbifoldPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "1/{}(1,-1,{})", self.r, self.b)
    }
}

impl FromStr for OrbifoldPoint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (b, r) = s.trim().split_once('/').ok_or_else(|| Error::Parse(format!("expected b/r, got {s:?}")))?;
        let b = b.trim().parse().map_err(|_| Error::Parse(format!("bad b in {s:?}")))?;
        let r = r.trim().parse().map_err(|_| Error::Parse(format!("bad r in {s:?}")))?;
        OrbifoldPoint::new(b, r)
    }
}

impl Serialize for OrbifoldPoint {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for OrbifoldPoint {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(deserializer)?.parse().map_err(serde::de::Error::custom)
    }
}

/// A finite multiset of orbifold points, kept sorted by `(r, b)`.
///
/// The empty basket is the Gorenstein case.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "Vec<OrbifoldPoint>", into = "Vec<OrbifoldPoint>")]
pub struct Basket {
    points: Vec<OrbifoldPoint>,
}

impl Basket {
    pub fn new(mut points: Vec<OrbifoldPoint>) -> Self {
        points.sort();
        Basket { points }
    }

    pub fn empty() -> Self {
        Basket::default()
    }

    /// Convenience constructor from raw `(b, r)` pairs.
    pub fn from_pairs(pairs: &[(i64, i64)]) -> Result<Self> {
        pairs.iter().map(|&(b, r)| OrbifoldPoint::new(b, r)).collect::<Result<Vec<_>>>().map(Basket::new)
    }

    pub fn points(&self) -> &[OrbifoldPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// The Gorenstein index `r_X`: lcm of all local orders, 1 when empty.
    pub fn gorenstein_index(&self) -> u64 {
        self.points.iter().fold(1, |acc, p| lcm(acc, p.r as u64))
    }

    /// `Σ (r - 1/r)` over the basket.
    pub fn singularity_sum(&self) -> Rational {
        self.points.iter().map(OrbifoldPoint::singularity_weight).sum()
    }

    /// `c₂·c₁ = 24 - Σ (r - 1/r)`. Not filtered for sign.
    pub fn c2c1(&self) -> Rational {
        Rational::integer(24) - self.singularity_sum()
    }

    /// The multiset of local orders.
    pub fn r_set(&self) -> RSet {
        let mut counts = BTreeMap::new();
        for p in &self.points {
            *counts.entry(p.r).or_insert(0) += 1;
        }
        RSet(counts)
    }

    pub fn union(&self, other: &Basket) -> Basket {
        Basket::new(self.points.iter().chain(&other.points).copied().collect())
    }
}

impl From<Vec<OrbifoldPoint>> for Basket {
    fn from(points: Vec<OrbifoldPoint>) -> Self {
        Basket::new(points)
    }
}

impl From<Basket> for Vec<OrbifoldPoint> {
    fn from(b: Basket) -> Self {
        b.points
    }
}

impl fmt::Display for Basket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, p) in self.points.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Basket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Basket[{self}]")
    }
}

impl FromStr for Basket {
    type Err = Error;

    /// Comma-separated `b/r` pairs; the empty string is the empty basket.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Basket::empty());
        }
        s.split(',').map(str::parse).collect::<Result<Vec<_>>>().map(Basket::new)
    }
}

/// The multiset `R_X` of local orders, displayed as `{2^2,3,5}`.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RSet(BTreeMap<u32, u32>);

impl RSet {
    pub fn multiplicity(&self, r: u32) -> u32 {
        self.0.get(&r).copied().unwrap_or(0)
    }

    /// `(r, multiplicity)` pairs in increasing `r`.
    pub fn iter(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.0.iter().map(|(&r, &k)| (r, k))
    }

    pub fn total(&self) -> u32 {
        self.0.values().sum()
    }
}

impl fmt::Display for RSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, (r, m)) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            if m > 1 {
                write!(f, "{r}^{m}")?;
            } else {
                write!(f, "{r}")?;
            }
        }
        f.write_str("}")
    }
}

impl fmt::Debug for RSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for RSet {
    type Err = Error;

    /// Comma-separated orders with optional `^k` multiplicities; surrounding
    /// braces are optional. Repeated entries accumulate.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |what: &str| Error::Parse(format!("bad R-set {s:?}: {what}"));
        let mut body = s.trim();
        if let Some(inner) = body.strip_prefix('{') {
            body = inner.strip_suffix('}').ok_or_else(|| bad("unbalanced brace"))?.trim();
        }
        let mut counts = BTreeMap::new();
        if body.is_empty() {
            return Ok(RSet(counts));
        }
        for item in body.split(',') {
            let item = item.trim();
            let (r, k) = match item.split_once('^') {
                Some((r, k)) => (r.trim(), k.trim()),
                None => (item, "1"),
            };
            let r: u32 = r.parse().map_err(|_| bad(item))?;
            let k: u32 = k.parse().map_err(|_| bad(item))?;
            if r < 2 || k == 0 {
                return Err(bad(item));
            }
            *counts.entry(r).or_insert(0) += k;
        }
        Ok(RSet(counts))
    }
}
