//! Curated `(q, R_X)` exclusions imported from the classification literature.
//!
//! File format, one entry per line:
//!
//! ```text
//! # comment
//! [section]
//! q=5; R={4,7}; reason=free text citation
//! ```
//!
//! Fields appear in that order; `reason` runs to the end of the line. A
//! `[section]` header tags the entries that follow it (default section:
//! `exclusions`).

use std::path::Path;

use crate::basket::RSet;
use crate::error::{Error, Result};
use crate::fano::FanoCandidate;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Exclusion {
    pub q: u32,
    pub r_set: RSet,
    pub reason: String,
    pub section: String,
    pub line: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExclusionList {
    pub entries: Vec<Exclusion>,
    /// Every section header seen, in file order, including empty ones.
    pub sections: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Removed {
    pub candidate: FanoCandidate,
    pub reason: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExclusionOutcome {
    pub kept: Vec<FanoCandidate>,
    pub removed: Vec<Removed>,
}

const DEFAULT_SECTION: &str = "exclusions";

fn field<'a>(part: &'a str, key: &str, line: usize) -> Result<&'a str> {
    let part = part.trim();
    part.strip_prefix(key)
        .and_then(|rest| rest.trim_start().strip_prefix('='))
        .map(str::trim)
        .ok_or_else(|| Error::Exclusion { line, msg: format!("expected `{key}=...`, got {part:?}") })
}

impl ExclusionList {
    pub fn parse(text: &str) -> Result<Self> {
        let mut list = ExclusionList::default();
        let mut section = DEFAULT_SECTION.to_string();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.trim();
            if content.is_empty() || content.starts_with('#') {
                continue;
            }
            if let Some(name) = content.strip_prefix('[') {
                let name = name
                    .strip_suffix(']')
                    .ok_or_else(|| Error::Exclusion { line, msg: "unterminated section header".into() })?
                    .trim();
                if name.is_empty() {
                    return Err(Error::Exclusion { line, msg: "empty section name".into() });
                }
                section = name.to_string();
                list.sections.push(section.clone());
                continue;
            }
            let mut parts = content.splitn(3, ';');
            let (Some(qp), Some(rp), Some(why)) = (parts.next(), parts.next(), parts.next()) else {
                return Err(Error::Exclusion { line, msg: "expected `q=..; R=..; reason=..`".into() });
            };
            let q = field(qp, "q", line)?
                .parse::<u32>()
                .map_err(|e| Error::Exclusion { line, msg: format!("bad q: {e}") })?;
            let r_set =
                field(rp, "R", line)?.parse::<RSet>().map_err(|e| Error::Exclusion { line, msg: e.to_string() })?;
            let reason = field(why, "reason", line)?.to_string();
            if reason.is_empty() {
                return Err(Error::Exclusion { line, msg: "empty reason".into() });
            }
            list.entries.push(Exclusion { q, r_set, reason, section: section.clone(), line });
        }
        Ok(list)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text =
            std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
        ExclusionList::parse(&text)
    }

    pub fn matching(&self, candidate: &FanoCandidate) -> Option<&Exclusion> {
        let r_set = candidate.basket.r_set();
        self.entries.iter().find(|e| e.q == candidate.q && e.r_set == r_set)
    }

    /// Splits `candidates` into those no entry matches and those removed,
    /// each removal carrying the entry's reason. Order is preserved.
    pub fn apply(&self, candidates: Vec<FanoCandidate>) -> ExclusionOutcome {
        let mut outcome = ExclusionOutcome::default();
        for candidate in candidates {
            match self.matching(&candidate) {
                Some(e) => outcome.removed.push(Removed { reason: e.reason.clone(), candidate }),
                None => outcome.kept.push(candidate),
            }
        }
        outcome
    }
}
