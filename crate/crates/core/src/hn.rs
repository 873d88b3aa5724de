//! Harder–Narasimhan shapes of the tangent sheaf of a rank-one-Picard
//! threefold and the Kawamata–Miyaoka constants they force.
//!
//! Write `-K = qA` and let the HN filtration of `T_X` have graded pieces of
//! rank `r_i` with `c₁ = q_i A`. The admissible shapes are pure
//! combinatorics: `Σ r_i = 3`, `Σ q_i = q`, every `q_i >= 1`, slopes
//! `q_i / r_i` strictly decreasing, and a rank-one first piece obeys a slope
//! cap (see [`SlopeCap`]). Feeding the first piece into the Langer-type
//! discriminant bound gives a constant `b` with `c₁³ <= b·c₂c₁`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::arith::Rational;
use crate::error::{Error, Result};

/// Cap on the first-Chern-class slope of a rank-one subsheaf.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SlopeCap {
    /// `2 q₁ < q`, strict. This is the rule that produced the published
    /// tables.
    #[default]
    Canonical,
    /// `(2r+1) q₁ <= r q` for Gorenstein index `r`.
    Terminal { gorenstein_index: u32 },
    /// No cap on rank-one pieces.
    Unrestricted,
}

impl SlopeCap {
    fn admits(self, q: u32, q1: u32) -> bool {
        match self {
            SlopeCap::Canonical => 2 * q1 < q,
            SlopeCap::Terminal { gorenstein_index: r } => (2 * r as u64 + 1) * q1 as u64 <= r as u64 * q as u64,
            SlopeCap::Unrestricted => true,
        }
    }
}

/// A candidate HN shape: pieces `(q_i, r_i)` in filtration order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct HnType {
    q: u32,
    pieces: Vec<(u32, u32)>,
}

impl HnType {
    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn pieces(&self) -> &[(u32, u32)] {
        &self.pieces
    }

    pub fn len(&self) -> usize {
        self.pieces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    /// The maximal destabilising piece `(q₁, r₁)`.
    pub fn first(&self) -> (u32, u32) {
        self.pieces[0]
    }
}

/// `q₁/r₁ > q/3`, i.e. a subsheaf with these invariants destabilises `T_X`.
pub fn destabilizes(q: u32, q1: u32, r1: u32) -> bool {
    3 * q1 as u64 > q as u64 * r1 as u64
}

fn valid_shape(q: u32, pieces: &[(u32, u32)], cap: SlopeCap) -> bool {
    let (q1, r1) = pieces[0];
    if !destabilizes(q, q1, r1) || (r1 == 1 && !cap.admits(q, q1)) {
        return false;
    }
    pieces.windows(2).all(|w| {
        let ((qa, ra), (qb, rb)) = (w[0], w[1]);
        qa as u64 * rb as u64 > qb as u64 * ra as u64
    })
}

/// Every HN shape of length 2 or 3 for index `q` allowed by `cap`.
///
/// Output is sorted by the first piece's `(r₁, q₁)` and then by the rest.
pub fn hn_types(q: u32, cap: SlopeCap) -> Vec<HnType> {
    let mut out = Vec::new();
    for ranks in [&[1u32, 2][..], &[2, 1], &[1, 1, 1]] {
        let mut qs = vec![0u32; ranks.len()];
        fill_compositions(q, 0, &mut qs, &mut |qs| {
            let pieces: Vec<_> = qs.iter().copied().zip(ranks.iter().copied()).collect();
            if valid_shape(q, &pieces, cap) {
                out.push(HnType { q, pieces });
            }
        });
    }
    out.sort_by_key(|t| t.pieces.iter().map(|&(qi, ri)| (ri, qi)).collect::<Vec<_>>());
    out
}

/// Writes every composition of `remaining` into `qs[pos..]` with parts >= 1.
fn fill_compositions(remaining: u32, pos: usize, qs: &mut Vec<u32>, visit: &mut dyn FnMut(&[u32])) {
    if pos + 1 == qs.len() {
        if remaining >= 1 {
            qs[pos] = remaining;
            visit(qs);
        }
        return;
    }
    let slots_after = (qs.len() - pos - 1) as u32;
    for part in 1..=remaining.saturating_sub(slots_after) {
        qs[pos] = part;
        fill_compositions(remaining - part, pos + 1, qs, visit);
    }
}

/// Distinct first pieces `(q₁, r₁)` over [`hn_types`], sorted by `(r₁, q₁)`.
pub fn destabilizing_pairs(q: u32, cap: SlopeCap) -> Vec<(u32, u32)> {
    let mut pairs: Vec<_> = hn_types(q, cap).iter().map(HnType::first).collect();
    pairs.sort_by_key(|&(q1, r1)| (r1, q1));
    pairs.dedup();
    pairs
}

/// `b = 6 / (2 - (3q₁ - q r₁)² / (r₁(3 - r₁) q²))`.
pub fn langer_bound(q: u32, q1: u32, r1: u32) -> Result<Rational> {
    if !(r1 == 1 || r1 == 2) || q1 == 0 || q1 >= q || !destabilizes(q, q1, r1) {
        return Err(Error::Domain(format!("({q1},{r1}) is not a destabilising pair for q = {q}")));
    }
    let (q, q1, r1) = (q as i64, q1 as i64, r1 as i64);
    let gap = 3 * q1 - q * r1;
    let defect = Rational::new(gap * gap, r1 * (3 - r1) * q * q);
    let denom = Rational::integer(2) - defect;
    if !denom.is_positive() {
        return Err(Error::Domain(format!("bound undefined for ({q1},{r1}), q = {q}")));
    }
    Ok(Rational::integer(6) / denom)
}

/// One column of the effective-bound table: for each rank `r₁` that occurs,
/// the largest [`langer_bound`] over the admissible `q₁`. Ranks that do not
/// occur are absent.
pub fn table2(q: u32) -> Result<BTreeMap<u32, Rational>> {
    if !(4..=8).contains(&q) {
        return Err(Error::Domain(format!("effective bound table covers 4 <= q <= 8, got {q}")));
    }
    let mut row: BTreeMap<u32, Rational> = BTreeMap::new();
    for (q1, r1) in destabilizing_pairs(q, SlopeCap::Canonical) {
        let b = langer_bound(q, q1, r1)?;
        match row.get(&r1) {
            Some(cur) if *cur >= b => {}
            _ => {
                row.insert(r1, b);
            }
        }
    }
    Ok(row)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundSource {
    /// Semistable tangent sheaf.
    BogomolovGieseker,
    /// Maximum over the effective-bound table column.
    Langer,
    /// Imported classification result; not derived here.
    External(&'static str),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KmBound {
    pub value: Rational,
    pub source: BoundSource,
}

pub const LARGE_INDEX_SOURCE: &str = "external: [Prokhorov2010, Prop 3.6]";

/// Upper constant `b` in `c₁³ <= b·c₂c₁` used for index `q`.
pub fn km_bound(q: u32) -> KmBound {
    let three = Rational::integer(3);
    match q {
        0..=3 => KmBound { value: three, source: BoundSource::BogomolovGieseker },
        4..=8 => {
            let best = table2(q).expect("q in range").into_values().max().filter(|b| *b > three);
            match best {
                Some(value) => KmBound { value, source: BoundSource::Langer },
                None => KmBound { value: three, source: BoundSource::BogomolovGieseker },
            }
        }
        _ => KmBound { value: Rational::new(121, 41), source: BoundSource::External(LARGE_INDEX_SOURCE) },
    }
}

/// Invariants of the generalised cone `Z_m` over a Fano manifold of index
/// `i`, with the rank-one foliation coming from the cone structure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConeData {
    /// `c₁(L) = q_l · A`
    pub q_l: u32,
    /// `c₁(Z_m) = q_x · A`
    pub q_x: u32,
    pub gorenstein_index: u32,
    pub terminal: bool,
    pub canonical: bool,
    /// `c₁(L) / c₁(Z_m)`
    pub cap_ratio: Rational,
}

pub fn cone_data(i: u32, m: u32) -> Result<ConeData> {
    if i == 0 || m == 0 {
        return Err(Error::Domain(format!("cone needs i, m >= 1, got i = {i}, m = {m}")));
    }
    Ok(ConeData {
        q_l: m,
        q_x: m + i,
        gorenstein_index: m,
        terminal: m < i,
        canonical: m <= i,
        cap_ratio: Rational::new(m, m + i),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SlopeCaps {
    pub canonical_cap: Rational,
    pub terminal_cap: Rational,
}

/// Upper bounds on `c₁(L)/c₁(X)` for a rank-one `L ⊂ T_X`.
pub fn slope_caps(gorenstein_index: u32) -> Result<SlopeCaps> {
    if gorenstein_index == 0 {
        return Err(Error::Domain("Gorenstein index must be positive".into()));
    }
    let r = gorenstein_index as i64;
    Ok(SlopeCaps { canonical_cap: Rational::new(1, 2), terminal_cap: Rational::new(r, 2 * r + 1) })
}

fn render_grid(rows: &[Vec<String>]) -> String {
    let ncols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> =
        (0..ncols).map(|c| rows.iter().filter_map(|r| r.get(c)).map(String::len).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for row in rows {
        let mut line = String::new();
        for (c, cell) in row.iter().enumerate() {
            if c > 0 {
                line.push_str(" | ");
            }
            let _ = write!(line, "{cell:<w$}", w = widths[c]);
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

/// Aligned text table of destabilising pairs, one column per `q`.
pub fn table1_text(qs: &[u32]) -> String {
    let mut header = vec!["q".to_string()];
    let mut body = vec!["(q1,r1)".to_string()];
    for &q in qs {
        header.push(q.to_string());
        let pairs = destabilizing_pairs(q, SlopeCap::Canonical);
        body.push(if pairs.is_empty() {
            "/".to_string()
        } else {
            pairs.iter().map(|(a, b)| format!("({a},{b})")).collect::<Vec<_>>().join(" ")
        });
    }
    render_grid(&[header, body])
}

/// `{"q": [[q1, r1], ...]}`, pretty-printed.
pub fn table1_json(qs: &[u32]) -> String {
    let map: BTreeMap<u32, Vec<(u32, u32)>> =
        qs.iter().map(|&q| (q, destabilizing_pairs(q, SlopeCap::Canonical))).collect();
    serde_json::to_string_pretty(&map).expect("plain data") + "\n"
}

/// Aligned text table of effective bounds, `/` where no such rank occurs.
pub fn table2_text(qs: &[u32]) -> Result<String> {
    let mut rows = vec![vec!["q".to_string()], vec!["r1=1".to_string()], vec!["r1=2".to_string()]];
    for &q in qs {
        let col = table2(q)?;
        rows[0].push(q.to_string());
        for r1 in [1u32, 2] {
            rows[r1 as usize].push(col.get(&r1).map_or("/".to_string(), Rational::to_string));
        }
    }
    Ok(render_grid(&rows))
}

/// `{"q": {"r1": "b"}}`, pretty-printed; absent ranks are absent keys.
pub fn table2_json(qs: &[u32]) -> Result<String> {
    let map = qs.iter().map(|&q| table2(q).map(|col| (q, col))).collect::<Result<BTreeMap<_, _>>>()?;
    Ok(serde_json::to_string_pretty(&map).expect("plain data") + "\n")
}
