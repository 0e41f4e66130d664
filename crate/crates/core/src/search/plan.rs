//! Search plans, read from TOML.
//!
//! ```toml
//! v = 74
//! h_generators = [47]
//! r = 36
//! s = 31
//! translate = true
//!
//! [x]
//! windows = [{ around = [1, 4, 6, 7, 9, 12, 22, 23, 28, 29, 34, 42], radius = 200 }]
//!
//! [y]
//! forced = [37]
//! excluded = [0]
//! windows = [{ start = 0, end = 5000 }]
//! ```

use std::ops::Range;
use std::path::Path;

use serde::Deserialize;

use crate::correlation::PSD_TOLERANCE;
use crate::error::{Error, Result};
use crate::orbits::{close_subgroup, orbit_partition, OrbitTable, UnitSubgroup};
use crate::sequence::{pair_lambda, SdsParams};

use super::enumerate::Enumerator;

/// Records held in memory before the join switches to the external path.
pub const DEFAULT_MEMORY_BUDGET: usize = 4_000_000;
pub const DEFAULT_SHARDS: usize = 8;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Block {
    X,
    Y,
}

impl Block {
    pub fn name(self) -> &'static str {
        match self {
            Block::X => "x",
            Block::Y => "y",
        }
    }
}

/// A slice of the lexicographic combination order for one block.
#[derive(Clone, PartialEq, Eq, Debug, Deserialize)]
#[serde(try_from = "RawWindow")]
pub enum WindowSpec {
    /// Combination ranks `start..end`.
    Ranks { start: u128, end: u128 },
    /// `radius` combinations on either side of the given index set.
    Around { around: Vec<usize>, radius: u128 },
}

// TOML integers are 64-bit, so ranks are read as u64 and widened.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawWindow {
    start: Option<u64>,
    end: Option<u64>,
    around: Option<Vec<usize>>,
    radius: Option<u64>,
}

impl TryFrom<RawWindow> for WindowSpec {
    type Error = String;

    fn try_from(w: RawWindow) -> std::result::Result<Self, String> {
        match w {
            RawWindow { start: Some(start), end: Some(end), around: None, radius: None } => {
                Ok(Self::Ranks { start: start.into(), end: end.into() })
            }
            RawWindow { start: None, end: None, around: Some(around), radius } => {
                Ok(Self::Around { around, radius: radius.unwrap_or(0).into() })
            }
            _ => Err("a window is either `{ start, end }` or `{ around, radius }`".into()),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockPlan {
    #[serde(default)]
    pub forced: Vec<usize>,
    #[serde(default)]
    pub excluded: Vec<usize>,
    /// Empty means the whole combination space.
    #[serde(default)]
    pub windows: Vec<WindowSpec>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPlan {
    v: usize,
    #[serde(default)]
    h_generators: Vec<usize>,
    r: usize,
    s: usize,
    #[serde(default)]
    x: BlockPlan,
    #[serde(default)]
    y: BlockPlan,
    psd_bound_slack: Option<f64>,
    #[serde(default)]
    translate: bool,
    shards: Option<usize>,
    memory_budget: Option<usize>,
}

/// A validated plan for a two-block search at one length.
#[derive(Clone, Debug)]
pub struct SearchPlan {
    pub v: usize,
    pub subgroup: UnitSubgroup,
    pub r: usize,
    pub s: usize,
    pub lambda: usize,
    pub x: BlockPlan,
    pub y: BlockPlan,
    pub psd_bound_slack: f64,
    /// Apply `X → h·X` for every `h ∈ H` to the X candidates.
    pub translate: bool,
    pub shards: usize,
    pub memory_budget: usize,
}

impl SearchPlan {
    /// Plan over the full combination space of both blocks.
    pub fn exhaustive(v: usize, h_generators: &[usize], r: usize, s: usize) -> Result<Self> {
        let mut errors = Vec::new();
        let subgroup = close_subgroup(v, h_generators).map_err(|e| Error::InvalidPlan(vec![format!("h_generators: {e}")]))?;
        let lambda = check_sizes(v, r, s, &mut errors);
        if !errors.is_empty() {
            return Err(Error::InvalidPlan(errors));
        }
        Ok(Self {
            v,
            subgroup,
            r,
            s,
            lambda: lambda.expect("checked"),
            x: BlockPlan::default(),
            y: BlockPlan::default(),
            psd_bound_slack: PSD_TOLERANCE,
            translate: false,
            shards: DEFAULT_SHARDS,
            memory_budget: DEFAULT_MEMORY_BUDGET,
        })
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        let raw: RawPlan = toml::from_str(text).map_err(|e| Error::InvalidPlan(vec![e.message().to_string()]))?;
        Self::from_raw(raw)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_toml(&text)
    }

    fn from_raw(raw: RawPlan) -> Result<Self> {
        let mut errors = Vec::new();
        let subgroup = match close_subgroup(raw.v, &raw.h_generators) {
            Ok(h) => Some(h),
            Err(e) => {
                errors.push(format!("h_generators: {e}"));
                None
            }
        };
        let lambda = check_sizes(raw.v, raw.r, raw.s, &mut errors);
        let slack = raw.psd_bound_slack.unwrap_or(PSD_TOLERANCE);
        if !(slack >= 0.0 && slack.is_finite()) {
            errors.push("psd_bound_slack: must be a finite nonnegative number".into());
        }
        let shards = raw.shards.unwrap_or(DEFAULT_SHARDS);
        if shards == 0 {
            errors.push("shards: must be at least 1".into());
        }
        let memory_budget = raw.memory_budget.unwrap_or(DEFAULT_MEMORY_BUDGET);
        if let Some(h) = &subgroup {
            let table = orbit_partition(h);
            check_block(&table, "x", &raw.x, raw.r, &mut errors);
            check_block(&table, "y", &raw.y, raw.s, &mut errors);
        }
        if !errors.is_empty() {
            return Err(Error::InvalidPlan(errors));
        }
        Ok(Self {
            v: raw.v,
            subgroup: subgroup.expect("checked"),
            r: raw.r,
            s: raw.s,
            lambda: lambda.expect("checked"),
            x: raw.x,
            y: raw.y,
            psd_bound_slack: slack,
            translate: raw.translate,
            shards,
            memory_budget,
        })
    }

    pub fn table(&self) -> OrbitTable {
        orbit_partition(&self.subgroup)
    }

    pub fn block(&self, block: Block) -> &BlockPlan {
        match block {
            Block::X => &self.x,
            Block::Y => &self.y,
        }
    }

    pub fn target(&self, block: Block) -> usize {
        match block {
            Block::X => self.r,
            Block::Y => self.s,
        }
    }

    /// SDS parameters, when `λ(v-1) = r(r-1) + s(s-1)` holds.
    pub fn params(&self) -> Result<SdsParams> {
        SdsParams::new(self.v, vec![self.r, self.s], self.lambda)
    }

    pub fn enumerator<'t>(&self, table: &'t OrbitTable, block: Block) -> Result<Enumerator<'t>> {
        let b = self.block(block);
        Enumerator::new(table, self.target(block), &b.forced, &b.excluded, self.psd_bound_slack)
    }

    /// Rank ranges covered by a block's windows: sorted, disjoint, clipped
    /// to the combination count.
    pub fn resolve_windows(&self, e: &Enumerator<'_>, block: Block) -> Result<Vec<Range<u128>>> {
        resolve_windows(e, &self.block(block).windows)
    }
}

#[allow(clippy::single_range_in_vec_init)]
pub(crate) fn resolve_windows(e: &Enumerator<'_>, windows: &[WindowSpec]) -> Result<Vec<Range<u128>>> {
    let total = e.total();
    if windows.is_empty() {
        return Ok(if total > 0 { vec![0..total] } else { Vec::new() });
    }
    let mut ranges = Vec::with_capacity(windows.len());
    for w in windows {
        let range = match w {
            WindowSpec::Ranks { start, end } => *start.min(&total)..*end.min(&total),
            WindowSpec::Around { around, radius } => {
                let rank = e.rank_of(around).ok_or_else(|| {
                    Error::InvalidPlan(vec![format!("window around {around:?}: not a combination of this block")])
                })?;
                rank.saturating_sub(*radius)..(rank + radius + 1).min(total)
            }
        };
        if range.start < range.end {
            ranges.push(range);
        }
    }
    ranges.sort_by_key(|r| r.start);
    let mut merged: Vec<Range<u128>> = Vec::new();
    for r in ranges {
        match merged.last_mut() {
            Some(last) if r.start <= last.end => last.end = last.end.max(r.end),
            _ => merged.push(r),
        }
    }
    Ok(merged)
}

fn check_sizes(v: usize, r: usize, s: usize, errors: &mut Vec<String>) -> Option<usize> {
    if v < 2 {
        errors.push("v: must be at least 2".into());
        return None;
    }
    if !v.is_multiple_of(2) {
        errors.push(format!("v: {v} is odd"));
        return None;
    }
    if r > v {
        errors.push(format!("r: {r} exceeds v"));
    }
    if s > v {
        errors.push(format!("s: {s} exceeds v"));
    }
    let lambda = pair_lambda(v, r, s);
    if lambda.is_none() {
        errors.push(format!("r, s: lambda = {r} + {s} - {} is negative", v / 2));
    }
    lambda
}

fn check_block(table: &OrbitTable, name: &str, b: &BlockPlan, target: usize, errors: &mut Vec<String>) {
    let v = table.modulus();
    let mut forced_size = 0;
    for (field, reps) in [("forced", &b.forced), ("excluded", &b.excluded)] {
        for &rep in reps {
            if rep >= v || !table.is_representative(rep) {
                errors.push(format!("{name}.{field}: {rep} is not an orbit representative"));
            } else if field == "forced" {
                forced_size += table.orbit_of_rep(rep).map_or(0, |o| o.len());
            }
        }
    }
    if let Some(rep) = b.forced.iter().find(|r| b.excluded.contains(r)) {
        errors.push(format!("{name}: {rep} is both forced and excluded"));
    }
    if forced_size > target {
        errors.push(format!("{name}.forced: orbit sizes sum to {forced_size}, above the block size {target}"));
    }
    for w in &b.windows {
        if let WindowSpec::Ranks { start, end } = w {
            if start > end {
                errors.push(format!("{name}.windows: start {start} exceeds end {end}"));
            }
        }
    }
}
