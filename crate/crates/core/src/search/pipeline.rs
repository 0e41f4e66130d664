use std::fmt;
use std::ops::Range;
use std::path::Path;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fixture::{write_fixture, FixtureSpec};
use crate::orbits::{join, OrbitTable};
use crate::sequence::check_square_decomposition;

use super::enumerate::{EnumStats, Enumerator};
use super::join::{match_records, JoinOptions, JoinPath, MatchedPair};
use super::plan::{Block, SearchPlan};
use super::{translate_candidates, write_candidates, CandidateRecord};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct BlockStats {
    /// Combinations in the whole space.
    pub space: u128,
    /// Combinations covered by the windows.
    pub windowed: u128,
    pub visited: u128,
    pub psd_passed: u128,
    /// Records handed to the join (after translation for X, after dropping
    /// counts above `λ` for Y).
    pub joined: u128,
    /// Distinct representative lists of this block among verified matches.
    pub matched: u128,
}

#[derive(Clone, Debug)]
pub struct SearchReport {
    pub v: usize,
    pub h: Vec<usize>,
    pub r: usize,
    pub s: usize,
    pub lambda: usize,
    /// `λ(v-1) = r(r-1) + s(s-1)` and `(v-2r)² + (v-2s)² = 2v`.
    pub feasible: bool,
    pub x: BlockStats,
    pub y: BlockStats,
    pub join_path: JoinPath,
    pub raw_matches: usize,
    pub verified_matches: usize,
    pub rejected_matches: usize,
    /// Verified pairs, one per elementary-equivalence class.
    pub pairs: Vec<MatchedPair>,
}

impl SearchReport {
    /// Verified pairs as fixture entries.
    pub fn solutions(&self, table: &OrbitTable) -> Result<Vec<FixtureSpec>> {
        self.pairs
            .iter()
            .map(|m| {
                let params = crate::sequence::SdsParams::new(self.v, vec![self.r, self.s], self.lambda)?;
                Ok(FixtureSpec { line: 0, subgroup: table.subgroup().clone(), j_reps: m.j.clone(), k_reps: m.k.clone(), params })
            })
            .collect()
    }
}

impl fmt::Display for SearchReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "search v={} H={} r={} s={} lambda={}", self.v, join(&self.h), self.r, self.s, self.lambda)?;
        if !self.feasible {
            writeln!(f, "parameters infeasible: no periodic Golay pair has these block sizes")?;
        }
        for (name, b) in [("x", &self.x), ("y", &self.y)] {
            writeln!(
                f,
                "{name}: space={} windowed={} visited={} psd_passed={} joined={} matched={}",
                b.space, b.windowed, b.visited, b.psd_passed, b.joined, b.matched
            )?;
        }
        let path = match self.join_path {
            JoinPath::Hash => "hash",
            JoinPath::External => "external",
        };
        writeln!(
            f,
            "join={path} raw_matches={} verified={} rejected={} elementary_inequivalent={}",
            self.raw_matches,
            self.verified_matches,
            self.rejected_matches,
            self.pairs.len()
        )?;
        writeln!(f, "# verified pairs, elementary-inequivalent")?;
        for m in &self.pairs {
            writeln!(f, "J={} K={} H={} v={}", join(&m.j), join(&m.k), join(&self.h), self.v)?;
        }
        Ok(())
    }
}

/// PSD-passing candidates of one block over its windows, in rank order.
pub fn enumerate_candidates(plan: &SearchPlan, table: &OrbitTable, block: Block) -> Result<(Vec<CandidateRecord>, BlockStats)> {
    let e = plan.enumerator(table, block)?;
    let windows = plan.resolve_windows(&e, block)?;
    let shards = shard(&windows, plan.shards);
    let (records, stats) = run_shards(&e, &shards);
    Ok((records.into_iter().flatten().collect(), block_stats(&e, &windows, stats)))
}

/// Generate, filter, fingerprint, complement, join, verify, deduplicate.
///
/// `jobs` bounds the worker threads used for enumeration. When `out_dir` is
/// set, per-shard candidate files, the sorted X file, the complemented sorted
/// Y file, `report.txt` and `solutions.pairs` are written there.
pub fn run_pipeline(plan: &SearchPlan, jobs: usize, out_dir: Option<&Path>) -> Result<SearchReport> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::InvalidPlan(vec![format!("jobs: {e}")]))?;
    let table = plan.table();
    let ex = plan.enumerator(&table, Block::X)?;
    let ey = plan.enumerator(&table, Block::Y)?;
    let wx = plan.resolve_windows(&ex, Block::X)?;
    let wy = plan.resolve_windows(&ey, Block::Y)?;
    let (sx, sy) = (shard(&wx, plan.shards), shard(&wy, plan.shards));

    let ((x_shards, x_enum), (y_shards, y_enum)) = pool.install(|| (run_shards(&ex, &sx), run_shards(&ey, &sy)));
    if let Some(dir) = out_dir {
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        for (name, shards) in [("x", &x_shards), ("y", &y_shards)] {
            for (i, recs) in shards.iter().enumerate() {
                write_candidates(&dir.join(format!("{name}.shard-{i:03}.cand")), recs, false)?;
            }
        }
    }

    let mut xs: Vec<CandidateRecord> = x_shards.into_iter().flatten().collect();
    let ys: Vec<CandidateRecord> = y_shards.into_iter().flatten().collect();
    let mut x_stats = block_stats(&ex, &wx, x_enum);
    let mut y_stats = block_stats(&ey, &wy, y_enum);
    if plan.translate {
        xs = translate_candidates(&xs, &table, table.subgroup());
    }
    x_stats.joined = xs.len() as u128;

    let opts = JoinOptions {
        memory_budget: plan.memory_budget,
        scratch: out_dir.map(|d| d.join("join")),
        ..JoinOptions::default()
    };
    let lambda = u32::try_from(plan.lambda).expect("lambda is below v");
    let outcome = match_records(&table, &xs, &ys, lambda, &opts)?;
    y_stats.joined = ys.len() as u128 - outcome.dropped_y as u128;
    x_stats.matched = distinct_count(outcome.verified.iter().map(|m| &m.j));
    y_stats.matched = distinct_count(outcome.verified.iter().map(|m| &m.k));

    if let Some(dir) = out_dir {
        xs.sort();
        write_candidates(&dir.join("x.sorted.cand"), &xs, true)?;
        let (mut yc, _) = complement_sorted(&ys, lambda);
        yc.sort();
        write_candidates(&dir.join("y.complement.sorted.cand"), &yc, true)?;
    }

    let feasible = plan.params().and_then(|p| check_square_decomposition(&p)).is_ok();
    let report = SearchReport {
        v: plan.v,
        h: plan.subgroup.elements().to_vec(),
        r: plan.r,
        s: plan.s,
        lambda: plan.lambda,
        feasible,
        x: x_stats,
        y: y_stats,
        join_path: outcome.path,
        raw_matches: outcome.raw.len(),
        verified_matches: outcome.verified.len(),
        rejected_matches: outcome.rejected.len(),
        pairs: outcome.distinct,
    };
    if let Some(dir) = out_dir {
        let path = dir.join("report.txt");
        std::fs::write(&path, report.to_string()).map_err(|e| Error::io(&path, e))?;
        if report.feasible {
            let path = dir.join("solutions.pairs");
            std::fs::write(&path, write_fixture(&report.solutions(&table)?)).map_err(|e| Error::io(&path, e))?;
        }
    }
    Ok(report)
}

fn complement_sorted(ys: &[CandidateRecord], lambda: u32) -> (Vec<CandidateRecord>, u64) {
    let mut dropped = 0;
    let out = ys
        .iter()
        .filter_map(|y| match super::complement_fingerprint(&y.fingerprint, lambda) {
            Ok(fingerprint) => Some(CandidateRecord { fingerprint, ..y.clone() }),
            Err(_) => {
                dropped += 1;
                None
            }
        })
        .collect();
    (out, dropped)
}

fn distinct_count<'a>(it: impl Iterator<Item = &'a Vec<usize>>) -> u128 {
    it.collect::<std::collections::BTreeSet<_>>().len() as u128
}

fn block_stats(e: &Enumerator<'_>, windows: &[Range<u128>], s: EnumStats) -> BlockStats {
    BlockStats {
        space: e.total(),
        windowed: windows.iter().map(|w| w.end - w.start).sum(),
        visited: s.visited,
        psd_passed: s.passed,
        joined: s.passed,
        matched: 0,
    }
}

/// Splits each window into at most `n` contiguous pieces. Boundaries depend
/// only on the windows and `n`, never on the worker count.
fn shard(windows: &[Range<u128>], n: usize) -> Vec<Range<u128>> {
    let n = n.max(1) as u128;
    windows
        .iter()
        .flat_map(|w| {
            let len = w.end - w.start;
            let step = len.div_ceil(n).max(1);
            (0..n)
                .map(move |i| (w.start + i * step).min(w.end)..(w.start + (i + 1) * step).min(w.end))
                .filter(|r| r.start < r.end)
        })
        .collect()
}

fn run_shards(e: &Enumerator<'_>, shards: &[Range<u128>]) -> (Vec<Vec<CandidateRecord>>, EnumStats) {
    let results: Vec<(Vec<CandidateRecord>, EnumStats)> = shards.par_iter().map(|w| e.collect(w.clone())).collect();
    let mut stats = EnumStats::default();
    let mut out = Vec::with_capacity(results.len());
    for (recs, s) in results {
        stats += s;
        out.push(recs);
    }
    (out, stats)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shards_cover_windows_exactly() {
        let w = vec![0..10, 20..23, 30..31];
        let s = shard(&w, 4);
        assert_eq!(s, vec![0..3, 3..6, 6..9, 9..10, 20..21, 21..22, 22..23, 30..31]);
        assert_eq!(shard(&[], 4), Vec::<Range<u128>>::new());
    }

    #[test]
    fn v4_exhaustive() {
        let plan = SearchPlan::exhaustive(4, &[], 1, 1).unwrap();
        let report = run_pipeline(&plan, 2, None).unwrap();
        assert!(report.feasible);
        assert_eq!(report.x.visited, 4);
        assert_eq!(report.raw_matches, 16);
        assert_eq!(report.verified_matches, 16);
        assert_eq!(report.pairs.len(), 1);
        assert_eq!((report.pairs[0].j.clone(), report.pairs[0].k.clone()), (vec![0], vec![0]));
        assert!(report.to_string().contains("J=0 K=0 H=1 v=4"));
    }

    #[test]
    fn impossible_length_gives_clean_empty_report() {
        let plan = SearchPlan::exhaustive(6, &[], 2, 2).unwrap();
        let report = run_pipeline(&plan, 1, None).unwrap();
        assert!(!report.feasible);
        assert_eq!(report.raw_matches, 0);
        assert!(report.pairs.is_empty());
        assert!(report.x.visited >= report.x.psd_passed);
    }

    #[test]
    fn deterministic_files() {
        let plan = SearchPlan::from_toml("v = 10\nr = 3\ns = 4\nshards = 3\ntranslate = true").unwrap();
        let a = tempfile::tempdir().unwrap();
        let b = tempfile::tempdir().unwrap();
        run_pipeline(&plan, 1, Some(a.path())).unwrap();
        run_pipeline(&plan, 4, Some(b.path())).unwrap();
        let mut names: Vec<_> = std::fs::read_dir(a.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
        names.sort();
        assert!(names.len() >= 7, "{names:?}");
        for name in names {
            let pa = a.path().join(&name);
            if pa.is_file() {
                assert_eq!(std::fs::read(&pa).unwrap(), std::fs::read(b.path().join(&name)).unwrap(), "{name:?}");
            }
        }
    }
}
