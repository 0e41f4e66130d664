//! Matching X candidates against complemented Y candidates.
//!
//! Small inputs use an in-memory hash join. Larger ones go through the
//! external path: the complemented Y file and the X file are sorted by
//! fingerprint on disk and joined with a single linear merge.

use std::collections::{BTreeSet, HashMap};
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::orbits::{expand_index_set, OrbitTable};
use crate::sds::{elementary_canonical_form, verify_periodic_golay_pair};

use super::file::{external_sort, CandidateReader};
use super::{complement_fingerprint, CandidateRecord};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum JoinPath {
    Hash,
    External,
}

#[derive(Clone, Debug)]
pub struct JoinOptions {
    /// Inputs with at most this many records in total use the hash join.
    pub memory_budget: usize,
    /// Records per in-memory run during the external sort.
    pub run_len: usize,
    /// Directory for sorted and spilled files; a temporary one if unset.
    pub scratch: Option<PathBuf>,
}

impl Default for JoinOptions {
    fn default() -> Self {
        Self { memory_budget: super::DEFAULT_MEMORY_BUDGET, run_len: 1 << 18, scratch: None }
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct MatchedPair {
    pub j: Vec<usize>,
    pub k: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct JoinOutcome {
    pub path: JoinPath,
    /// Y records dropped because some count exceeded `λ`.
    pub dropped_y: u64,
    /// Every fingerprint match, sorted, duplicates kept.
    pub raw: Vec<MatchedPair>,
    /// Matches that passed pair verification.
    pub verified: Vec<MatchedPair>,
    /// Matches that failed verification. Nonempty only on a bug.
    pub rejected: Vec<MatchedPair>,
    /// One verified pair per elementary-equivalence class, first in sort order.
    pub distinct: Vec<MatchedPair>,
}

/// Equality join of `xs` against already-complemented `ys`. Output pairs
/// are `(x index, y index)` in X order, then Y order.
pub fn hash_join(xs: &[CandidateRecord], ys_complemented: &[CandidateRecord]) -> Vec<(usize, usize)> {
    let mut by_fp: HashMap<&[u32], Vec<usize>> = HashMap::new();
    for (i, y) in ys_complemented.iter().enumerate() {
        by_fp.entry(y.fingerprint.counts()).or_default().push(i);
    }
    let mut out = Vec::new();
    for (i, x) in xs.iter().enumerate() {
        if let Some(js) = by_fp.get(x.fingerprint.counts()) {
            out.extend(js.iter().map(|&j| (i, j)));
        }
    }
    out
}

/// Linear merge of two files sorted by fingerprint. Calls `sink` once per
/// matching `(x, y)` and returns the number of matches.
pub fn merge_join(x_sorted: &Path, y_sorted: &Path, mut sink: impl FnMut(&CandidateRecord, &CandidateRecord)) -> Result<u64> {
    let mut xs = CandidateReader::open(x_sorted)?;
    let mut ys = CandidateReader::open(y_sorted)?;
    for (r, p) in [(&xs, x_sorted), (&ys, y_sorted)] {
        if !r.has_sorted_header() {
            return Err(Error::Parse { line: 1, message: format!("{} lacks the sorted header", p.display()) });
        }
    }
    let mut x = xs.next().transpose()?;
    let mut y = ys.next().transpose()?;
    let mut matches = 0u64;
    let mut x_group = Vec::new();
    while let (Some(xr), Some(yr)) = (&x, &y) {
        if xr.v != yr.v {
            return Err(Error::IncompatibleModuli { left: xr.v, right: yr.v });
        }
        match xr.fingerprint.counts().cmp(yr.fingerprint.counts()) {
            std::cmp::Ordering::Less => x = xs.next().transpose()?,
            std::cmp::Ordering::Greater => y = ys.next().transpose()?,
            std::cmp::Ordering::Equal => {
                let key = xr.fingerprint.clone();
                x_group.clear();
                while let Some(r) = x.take_if(|r| r.fingerprint == key) {
                    x_group.push(r);
                    x = xs.next().transpose()?;
                }
                while let Some(r) = y.take_if(|r| r.fingerprint == key) {
                    for xr in &x_group {
                        sink(xr, &r);
                        matches += 1;
                    }
                    y = ys.next().transpose()?;
                }
            }
        }
    }
    Ok(matches)
}

/// Joins in-memory candidate lists. `ys` carry their own fingerprints; they
/// are complemented here.
pub fn match_records(table: &OrbitTable, xs: &[CandidateRecord], ys: &[CandidateRecord], lambda: u32, opts: &JoinOptions) -> Result<JoinOutcome> {
    let v = table.modulus();
    if let Some(r) = xs.iter().chain(ys).find(|r| r.v != v) {
        return Err(Error::IncompatibleModuli { left: v, right: r.v });
    }
    let (ys_c, dropped_y) = complement_all(ys, lambda);
    let mut raw = Vec::new();
    let path = if xs.len() + ys_c.len() <= opts.memory_budget {
        for (i, j) in hash_join(xs, &ys_c) {
            raw.push(MatchedPair { j: xs[i].reps.clone(), k: ys_c[j].reps.clone() });
        }
        JoinPath::Hash
    } else {
        let scratch = Scratch::new(opts)?;
        let x_path = scratch.path("x.cand");
        let y_path = scratch.path("y.complement.cand");
        super::write_candidates(&x_path, xs, false)?;
        super::write_candidates(&y_path, &ys_c, false)?;
        external_join(&x_path, &y_path, &scratch, opts, &mut raw)?;
        JoinPath::External
    };
    finish(table, path, dropped_y, raw)
}

/// Joins two candidate files: X as generated, Y with raw fingerprints.
pub fn match_join(table: &OrbitTable, file_x: &Path, file_y: &Path, lambda: u32, opts: &JoinOptions) -> Result<JoinOutcome> {
    let scratch = Scratch::new(opts)?;
    let y_path = scratch.path("y.complement.cand");
    let mut n = 0usize;
    let mut dropped_y = 0u64;
    {
        let file = File::create(&y_path).map_err(|e| Error::io(&y_path, e))?;
        let mut w = BufWriter::new(file);
        for rec in CandidateReader::open(file_y)? {
            let mut rec = rec?;
            check_modulus(table, &rec)?;
            match complement_fingerprint(&rec.fingerprint, lambda) {
                Ok(fp) => {
                    rec.fingerprint = fp;
                    writeln!(w, "{rec}").map_err(|e| Error::io(&y_path, e))?;
                    n += 1;
                }
                Err(_) => dropped_y += 1,
            }
        }
        w.flush().map_err(|e| Error::io(&y_path, e))?;
    }
    let mut x_count = 0usize;
    for rec in CandidateReader::open(file_x)? {
        check_modulus(table, &rec?)?;
        x_count += 1;
    }
    n += x_count;

    let mut raw = Vec::new();
    let path = if n <= opts.memory_budget {
        let xs = super::read_candidates(file_x)?;
        let ys_c = super::read_candidates(&y_path)?;
        for (i, j) in hash_join(&xs, &ys_c) {
            raw.push(MatchedPair { j: xs[i].reps.clone(), k: ys_c[j].reps.clone() });
        }
        JoinPath::Hash
    } else {
        external_join(file_x, &y_path, &scratch, opts, &mut raw)?;
        JoinPath::External
    };
    finish(table, path, dropped_y, raw)
}

fn check_modulus(table: &OrbitTable, rec: &CandidateRecord) -> Result<()> {
    if rec.v != table.modulus() {
        return Err(Error::IncompatibleModuli { left: table.modulus(), right: rec.v });
    }
    Ok(())
}

fn complement_all(ys: &[CandidateRecord], lambda: u32) -> (Vec<CandidateRecord>, u64) {
    let mut dropped = 0;
    let kept = ys
        .iter()
        .filter_map(|y| match complement_fingerprint(&y.fingerprint, lambda) {
            Ok(fingerprint) => Some(CandidateRecord { fingerprint, ..y.clone() }),
            Err(_) => {
                dropped += 1;
                None
            }
        })
        .collect();
    (kept, dropped)
}

fn external_join(x: &Path, y_complemented: &Path, scratch: &Scratch, opts: &JoinOptions, raw: &mut Vec<MatchedPair>) -> Result<()> {
    let xs = scratch.path("x.sorted.cand");
    let ys = scratch.path("y.complement.sorted.cand");
    external_sort(x, &xs, opts.run_len, scratch.dir())?;
    external_sort(y_complemented, &ys, opts.run_len, scratch.dir())?;
    merge_join(&xs, &ys, |a, b| raw.push(MatchedPair { j: a.reps.clone(), k: b.reps.clone() }))?;
    Ok(())
}

fn finish(table: &OrbitTable, path: JoinPath, dropped_y: u64, mut raw: Vec<MatchedPair>) -> Result<JoinOutcome> {
    raw.sort();
    let mut verified = Vec::new();
    let mut rejected = Vec::new();
    let mut seen = BTreeSet::new();
    let mut distinct = Vec::new();
    for m in &raw {
        let x = expand_index_set(table, &m.j)?;
        let y = expand_index_set(table, &m.k)?;
        match verify_periodic_golay_pair(&x, &y) {
            Ok(_) => {
                verified.push(m.clone());
                if seen.insert(elementary_canonical_form(&x, &y)) {
                    distinct.push(m.clone());
                }
            }
            Err(_) => rejected.push(m.clone()),
        }
    }
    Ok(JoinOutcome { path, dropped_y, raw, verified, rejected, distinct })
}

/// A scratch directory: the configured one, or a temporary one removed on drop.
struct Scratch {
    dir: PathBuf,
    _temp: Option<tempfile::TempDir>,
}

impl Scratch {
    fn new(opts: &JoinOptions) -> Result<Self> {
        match &opts.scratch {
            Some(dir) => {
                std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
                Ok(Self { dir: dir.clone(), _temp: None })
            }
            None => {
                let t = tempfile::tempdir().map_err(|e| Error::io(std::env::temp_dir(), e))?;
                Ok(Self { dir: t.path().to_path_buf(), _temp: Some(t) })
            }
        }
    }

    fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.join(name)
    }
}
