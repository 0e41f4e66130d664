//! Two-file SDS search over orbit unions.
//!
//! The pipeline generates X and Y candidates of sizes `r` and `s` whose
//! sequences pass the PSD test, records each candidate's difference
//! multiplicities, replaces the Y multiplicities `m` by `λ - m`, and joins the
//! two files on equal multiplicity vectors. A joined pair has
//! `m_X(c) + m_Y(c) = λ` for every `c ≠ 0`, which is exactly the SDS condition.

mod enumerate;
mod file;
mod join;
mod pipeline;
mod plan;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::orbits::{join as join_list, OrbitTable, UnitSubgroup};
use crate::sds::DifferenceMultiplicity;

pub use enumerate::{EnumStats, Enumerator};
pub use file::{external_sort, read_candidates, write_candidates, CandidateReader, SORTED_HEADER};
pub use join::{hash_join, match_join, match_records, merge_join, JoinOptions, JoinOutcome, JoinPath, MatchedPair};
pub use pipeline::{enumerate_candidates, run_pipeline, BlockStats, SearchReport};
pub use plan::{Block, BlockPlan, SearchPlan, WindowSpec, DEFAULT_MEMORY_BUDGET, DEFAULT_SHARDS};

/// One orbit union with its difference-multiplicity fingerprint.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CandidateRecord {
    pub v: usize,
    /// Sorted orbit representatives.
    pub reps: Vec<usize>,
    pub cardinality: usize,
    pub fingerprint: DifferenceMultiplicity,
}

impl CandidateRecord {
    /// Order used for sorted candidate files: fingerprint, then reps.
    pub fn sort_key(&self) -> (&[u32], &[usize]) {
        (self.fingerprint.counts(), &self.reps)
    }
}

impl PartialOrd for CandidateRecord {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CandidateRecord {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.sort_key().cmp(&other.sort_key()).then(self.v.cmp(&other.v))
    }
}

/// `v=<int> reps=<r1>,<r2>,... card=<int> fp=<c1>,...,<c_{v-1}>`
impl fmt::Display for CandidateRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v={} reps={} card={} fp={}", self.v, join_list(&self.reps), self.cardinality, self.fingerprint)
    }
}

impl FromStr for CandidateRecord {
    type Err = String;

    fn from_str(line: &str) -> std::result::Result<Self, String> {
        let mut fields = line.split(' ');
        let mut next = |key: &str| -> std::result::Result<&str, String> {
            let tok = fields.next().ok_or_else(|| format!("missing `{key}`"))?;
            tok.strip_prefix(key)
                .and_then(|t| t.strip_prefix('='))
                .ok_or_else(|| format!("expected `{key}=`, got `{tok}`"))
        };
        let v: usize = next("v")?.parse().map_err(|e| format!("v: {e}"))?;
        let reps = parse_list::<usize>(next("reps")?).map_err(|e| format!("reps: {e}"))?;
        let cardinality: usize = next("card")?.parse().map_err(|e| format!("card: {e}"))?;
        let counts = parse_list::<u32>(next("fp")?).map_err(|e| format!("fp: {e}"))?;
        if fields.next().is_some() {
            return Err("trailing fields".into());
        }
        if counts.len() + 1 != v {
            return Err(format!("fp has {} entries, expected {}", counts.len(), v.saturating_sub(1)));
        }
        Ok(Self { v, reps, cardinality, fingerprint: DifferenceMultiplicity::from_counts(counts) })
    }
}

fn parse_list<T: FromStr>(s: &str) -> std::result::Result<Vec<T>, T::Err> {
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(str::parse).collect()
}

/// `m → λ - m` at every difference.
pub fn complement_fingerprint(f: &DifferenceMultiplicity, lambda: u32) -> Result<DifferenceMultiplicity> {
    let counts = f
        .counts()
        .iter()
        .enumerate()
        .map(|(i, &m)| lambda.checked_sub(m).ok_or(Error::CountExceedsLambda { diff: i + 1, count: m, lambda }))
        .collect::<Result<Vec<u32>>>()?;
    Ok(DifferenceMultiplicity::from_counts(counts))
}

/// For every record and every `h` in `multipliers`, the record of `h·X`.
///
/// Multiplying by a unit maps `H`-orbits to `H`-orbits, so the image is
/// again an orbit union of `table` and its representatives are recomputed
/// from the table. The fingerprint is permuted, not recomputed:
/// `m_{hX}(h·c) = m_X(c)`. For `h ∈ H` every orbit union is fixed.
pub fn translate_candidates(records: &[CandidateRecord], table: &OrbitTable, multipliers: &UnitSubgroup) -> Vec<CandidateRecord> {
    let v = table.modulus();
    let mut out = Vec::with_capacity(records.len() * multipliers.order());
    for rec in records {
        debug_assert_eq!(rec.v, v);
        for &h in multipliers.elements() {
            let mut reps: Vec<usize> = rec.reps.iter().map(|&r| table.rep_of(r * h % v)).collect();
            reps.sort_unstable();
            let mut counts = vec![0u32; v - 1];
            for c in 1..v {
                counts[c * h % v - 1] = rec.fingerprint.at(c);
            }
            out.push(CandidateRecord {
                v,
                reps,
                cardinality: rec.cardinality,
                fingerprint: DifferenceMultiplicity::from_counts(counts),
            });
        }
    }
    out
}
