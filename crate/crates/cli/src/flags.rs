//! Parsers for the compact flag values: index ranges and ratio windows.

use std::collections::BTreeSet;

use anyhow::{bail, Context, Result};
use qfano::fano::{SearchConfig, UpperBound};
use qfano::Rational;

/// `4`, `5..8` (inclusive), `5,7` or a mix such as `4,6..8`.
pub fn parse_indices(s: &str) -> Result<BTreeSet<u32>> {
    let mut out = BTreeSet::new();
    for part in s.split(',').map(str::trim) {
        if let Some((lo, hi)) = part.split_once("..") {
            let lo: u32 = lo.trim().parse().with_context(|| format!("bad range start in {part:?}"))?;
            let hi: u32 =
                hi.trim().trim_start_matches('=').parse().with_context(|| format!("bad range end in {part:?}"))?;
            if lo > hi {
                bail!("empty index range {part:?}");
            }
            out.extend(lo..=hi);
        } else {
            out.insert(part.parse().with_context(|| format!("bad index {part:?}"))?);
        }
    }
    if out.is_empty() {
        bail!("no indices given");
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Window {
    /// `(121/41, km_bound(q)]`.
    Paper,
    /// `(121/41, 64/21]`.
    Remark,
    Explicit(Rational, Rational),
}

impl Window {
    pub fn parse(s: &str) -> Result<Window> {
        match s {
            "paper" => Ok(Window::Paper),
            "remark" => Ok(Window::Remark),
            _ => {
                let Some((lo, hi)) = s.split_once("..") else {
                    bail!("window must be `paper`, `remark` or `LO..HI`, got {s:?}");
                };
                let lo: Rational = lo.parse().with_context(|| format!("bad window start {lo:?}"))?;
                let hi: Rational = hi.parse().with_context(|| format!("bad window end {hi:?}"))?;
                if lo >= hi {
                    bail!("empty window ({lo}, {hi}]");
                }
                Ok(Window::Explicit(lo, hi))
            }
        }
    }

    pub fn default_indices(&self) -> BTreeSet<u32> {
        match self {
            Window::Remark => [4].into(),
            _ => (5..=8).collect(),
        }
    }

    pub fn config(&self, q_range: BTreeSet<u32>) -> SearchConfig {
        match self {
            Window::Paper => SearchConfig::paper_window(q_range),
            Window::Remark => {
                let preset = SearchConfig::remark_window();
                SearchConfig::new(q_range, preset.ratio_lo, preset.ratio_hi)
            }
            Window::Explicit(lo, hi) => SearchConfig::new(q_range, lo.clone(), UpperBound::Fixed(hi.clone())),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Window::Paper => "(121/41, km_bound(q)]".into(),
            Window::Remark => "(121/41, 64/21]".into(),
            Window::Explicit(lo, hi) => format!("({lo}, {hi}]"),
        }
    }
}
