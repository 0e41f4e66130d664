//! Orbit-union candidate enumeration with the PSD filter applied in place.
//!
//! Candidates for one block are the sets of free orbits (all orbits except
//! forced and excluded ones) whose sizes sum to the block size minus the
//! forced part. They are visited depth-first in lexicographic order of their
//! representative lists. `counts[i][m]`, the number of ways to reach size `m`
//! from orbits `i..`, gives every combination a rank, so a window is a plain
//! rank range and whole subtrees outside it are skipped without visiting.
//!
//! For `k ≥ 1` the DFT of the `±1` sequence of `X` is `-2 Σ_{j∈X} ω^{jk}`, so
//! the enumerator keeps one running complex sum per frequency, adds a
//! precomputed per-orbit term when it descends, and tests
//! `4 |Σ|² ≤ 2v + slack` at each leaf.

use std::ops::Range;

use num_complex::Complex64;

use crate::correlation::RootTable;
use crate::error::{Error, Result};
use crate::orbits::{expand_index_set, OrbitTable};
use crate::sds::difference_multiplicities;

use super::CandidateRecord;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct EnumStats {
    /// Combinations reached inside the window.
    pub visited: u128,
    /// Combinations whose sequence passed the PSD test.
    pub passed: u128,
}

impl std::ops::AddAssign for EnumStats {
    fn add_assign(&mut self, o: Self) {
        self.visited += o.visited;
        self.passed += o.passed;
    }
}

pub struct Enumerator<'t> {
    table: &'t OrbitTable,
    target: usize,
    forced: Vec<usize>,
    /// Representatives of the free orbits, ascending.
    free: Vec<usize>,
    sizes: Vec<usize>,
    need: usize,
    /// `counts[i][m]`: subsets of `free[i..]` with sizes summing to `m`.
    counts: Vec<Vec<u128>>,
    orbit_terms: Vec<Vec<Complex64>>,
    forced_term: Vec<Complex64>,
    bound: f64,
}

impl<'t> Enumerator<'t> {
    pub fn new(table: &'t OrbitTable, target: usize, forced: &[usize], excluded: &[usize], slack: f64) -> Result<Self> {
        let v = table.modulus();
        for &rep in forced.iter().chain(excluded) {
            if rep >= v {
                return Err(Error::OutOfRange { v, value: rep });
            }
            if !table.is_representative(rep) {
                return Err(Error::NotARepresentative { value: rep, rep: table.rep_of(rep) });
            }
        }
        let mut forced = forced.to_vec();
        forced.sort_unstable();
        forced.dedup();
        let forced_size: usize = forced.iter().map(|&r| orbit_len(table, r)).sum();
        let need = target.checked_sub(forced_size).ok_or(Error::UnreachableCardinality { target })?;

        let free: Vec<usize> = table
            .representatives()
            .filter(|r| !forced.contains(r) && !excluded.contains(r))
            .collect();
        let sizes: Vec<usize> = free.iter().map(|&r| orbit_len(table, r)).collect();

        let n = free.len();
        let mut counts = vec![vec![0u128; need + 1]; n + 1];
        counts[n][0] = 1;
        for i in (0..n).rev() {
            for m in 0..=need {
                let skip = counts[i + 1][m];
                let take = if sizes[i] <= m { counts[i + 1][m - sizes[i]] } else { 0 };
                counts[i][m] = skip.saturating_add(take);
            }
        }
        if counts[0][need] == 0 {
            return Err(Error::UnreachableCardinality { target });
        }

        let half = v / 2;
        let roots = RootTable::new(v);
        let term = |rep: usize| -> Vec<Complex64> {
            let orbit = table.orbit_of_rep(rep).expect("representative");
            (1..=half).map(|k| orbit.elements().iter().map(|&j| roots.power(j * k)).sum()).collect()
        };
        let orbit_terms = free.iter().map(|&r| term(r)).collect();
        let mut forced_term = vec![Complex64::new(0.0, 0.0); half];
        for &r in &forced {
            for (acc, t) in forced_term.iter_mut().zip(term(r)) {
                *acc += t;
            }
        }

        Ok(Self {
            table,
            target,
            forced,
            free,
            sizes,
            need,
            counts,
            orbit_terms,
            forced_term,
            bound: 2.0 * v as f64 + slack,
        })
    }

    pub fn table(&self) -> &OrbitTable {
        self.table
    }

    pub fn target(&self) -> usize {
        self.target
    }

    /// Number of combinations in the full space.
    pub fn total(&self) -> u128 {
        self.counts[0][self.need]
    }

    /// Rank of a full representative list (forced orbits included), or
    /// `None` when it is not a combination of this space.
    pub fn rank_of(&self, reps: &[usize]) -> Option<u128> {
        let mut reps = reps.to_vec();
        reps.sort_unstable();
        reps.dedup();
        if !self.forced.iter().all(|f| reps.contains(f)) {
            return None;
        }
        let chosen: Vec<usize> = reps.into_iter().filter(|r| !self.forced.contains(r)).collect();
        let mut rank = 0u128;
        let mut remaining = self.need;
        let mut next = chosen.iter().peekable();
        for i in 0..self.free.len() {
            let Some(&&want) = next.peek() else { break };
            let sz = self.sizes[i];
            if self.free[i] == want {
                remaining = remaining.checked_sub(sz)?;
                next.next();
            } else if sz <= remaining {
                rank += self.counts[i + 1][remaining - sz];
            }
        }
        (next.peek().is_none() && remaining == 0).then_some(rank)
    }

    /// The representative list at a given rank, forced orbits included.
    pub fn combination_at(&self, mut rank: u128) -> Option<Vec<usize>> {
        if rank >= self.total() {
            return None;
        }
        let mut out = self.forced.clone();
        let mut remaining = self.need;
        for i in 0..self.free.len() {
            if remaining == 0 {
                break;
            }
            let sz = self.sizes[i];
            if sz > remaining {
                continue;
            }
            let with = self.counts[i + 1][remaining - sz];
            if rank < with {
                out.push(self.free[i]);
                remaining -= sz;
            } else {
                rank -= with;
            }
        }
        out.sort_unstable();
        Some(out)
    }

    /// Visits every combination with rank in `window`, in rank order, and
    /// hands each PSD-passing one to `sink` with its fingerprint.
    pub fn run(&self, window: Range<u128>, mut sink: impl FnMut(CandidateRecord)) -> EnumStats {
        let end = window.end.min(self.total());
        if window.start >= end {
            return EnumStats::default();
        }
        let half = self.forced_term.len();
        let depth = self.free.len() + 1;
        let mut walk = Walk {
            skip: window.start,
            left: end - window.start,
            path: Vec::with_capacity(depth),
            sums: vec![Complex64::new(0.0, 0.0); half * depth],
            half,
            stats: EnumStats::default(),
        };
        walk.sums[..half].copy_from_slice(&self.forced_term);
        self.descend(0, self.need, &mut walk, &mut sink);
        walk.stats
    }

    /// Collects [`Self::run`] into a vector.
    pub fn collect(&self, window: Range<u128>) -> (Vec<CandidateRecord>, EnumStats) {
        let mut out = Vec::new();
        let stats = self.run(window, |r| out.push(r));
        (out, stats)
    }

    fn descend(&self, start: usize, remaining: usize, w: &mut Walk, sink: &mut impl FnMut(CandidateRecord)) {
        let depth = w.path.len();
        if remaining == 0 {
            w.left -= 1;
            w.stats.visited += 1;
            let sums = &w.sums[depth * w.half..(depth + 1) * w.half];
            if sums.iter().all(|s| 4.0 * s.norm_sqr() <= self.bound) {
                w.stats.passed += 1;
                sink(self.record(&w.path));
            }
            return;
        }
        for i in start..self.free.len() {
            if w.left == 0 {
                return;
            }
            let sz = self.sizes[i];
            if sz > remaining {
                continue;
            }
            let below = self.counts[i + 1][remaining - sz];
            if below == 0 {
                continue;
            }
            if w.skip >= below {
                w.skip -= below;
                continue;
            }
            let (lo, hi) = w.sums.split_at_mut((depth + 1) * w.half);
            let parent = &lo[depth * w.half..];
            for ((dst, &p), &t) in hi[..w.half].iter_mut().zip(parent).zip(&self.orbit_terms[i]) {
                *dst = p + t;
            }
            w.path.push(i);
            self.descend(i + 1, remaining - sz, w, sink);
            w.path.pop();
        }
    }

    fn record(&self, path: &[usize]) -> CandidateRecord {
        let mut reps: Vec<usize> = path.iter().map(|&i| self.free[i]).chain(self.forced.iter().copied()).collect();
        reps.sort_unstable();
        let x = expand_index_set(self.table, &reps).expect("free and forced orbits are disjoint representatives");
        let v = self.table.modulus();
        CandidateRecord {
            v,
            cardinality: x.len(),
            fingerprint: difference_multiplicities(v, &[&x]),
            reps,
        }
    }
}

struct Walk {
    skip: u128,
    left: u128,
    path: Vec<usize>,
    /// Running DFT sums, `half` entries per depth.
    sums: Vec<Complex64>,
    half: usize,
    stats: EnumStats,
}

fn orbit_len(table: &OrbitTable, rep: usize) -> usize {
    table.orbit_of_rep(rep).map_or(0, |o| o.len())
}
