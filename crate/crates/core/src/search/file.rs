//! Candidate files and the external sort used by the merge join.
//!
//! One record per line in the `v=.. reps=.. card=.. fp=..` format. Sorted
//! files start with `#sorted-by=fp`; other `#` lines are ignored.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Lines, Write};
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};

use super::CandidateRecord;

pub const SORTED_HEADER: &str = "#sorted-by=fp";

pub fn write_candidates<'a>(path: &Path, records: impl IntoIterator<Item = &'a CandidateRecord>, sorted: bool) -> Result<u64> {
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = BufWriter::new(file);
    let io = |e| Error::io(path, e);
    if sorted {
        writeln!(w, "{SORTED_HEADER}").map_err(io)?;
    }
    let mut n = 0;
    for rec in records {
        writeln!(w, "{rec}").map_err(io)?;
        n += 1;
    }
    w.flush().map_err(io)?;
    Ok(n)
}

pub fn read_candidates(path: &Path) -> Result<Vec<CandidateRecord>> {
    CandidateReader::open(path)?.collect()
}

/// Streams records from a candidate file.
pub struct CandidateReader {
    path: PathBuf,
    lines: Lines<BufReader<File>>,
    line_no: usize,
    sorted: bool,
    peeked: Option<String>,
}

impl CandidateReader {
    pub fn open(path: &Path) -> Result<Self> {
        let file = File::open(path).map_err(|e| Error::io(path, e))?;
        let mut lines = BufReader::new(file).lines();
        let first = lines.next().transpose().map_err(|e| Error::io(path, e))?;
        let sorted = first.as_deref() == Some(SORTED_HEADER);
        Ok(Self {
            path: path.to_path_buf(),
            lines,
            line_no: if sorted { 1 } else { 0 },
            sorted,
            peeked: if sorted { None } else { first },
        })
    }

    /// Whether the file carries the sorted header.
    pub fn has_sorted_header(&self) -> bool {
        self.sorted
    }
}

impl Iterator for CandidateReader {
    type Item = Result<CandidateRecord>;

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            let line = match self.peeked.take() {
                Some(l) => l,
                None => match self.lines.next()? {
                    Ok(l) => l,
                    Err(e) => return Some(Err(Error::io(&self.path, e))),
                },
            };
            self.line_no += 1;
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            return Some(line.parse().map_err(|message| Error::Parse { line: self.line_no, message }));
        }
    }
}

/// Sorts a candidate file of any size into `output` (with the sorted
/// header), holding at most `run_len` records in memory. Runs are spilled
/// to `scratch` and combined with a k-way merge. Returns the record count.
pub fn external_sort(input: &Path, output: &Path, run_len: usize, scratch: &Path) -> Result<u64> {
    let run_len = run_len.max(1);
    let mut runs = Vec::new();
    let mut buf = Vec::with_capacity(run_len.min(1 << 20));
    let mut reader = CandidateReader::open(input)?;
    loop {
        let rec = reader.next().transpose()?;
        let done = rec.is_none();
        if let Some(rec) = rec {
            buf.push(rec);
        }
        if buf.len() >= run_len || (done && !buf.is_empty()) {
            buf.sort_unstable();
            let path = scratch.join(format!("run-{:05}.cand", runs.len()));
            write_candidates(&path, &buf, true)?;
            runs.push(path);
            buf.clear();
        }
        if done {
            break;
        }
    }

    let mut readers = runs.iter().map(|p| CandidateReader::open(p)).collect::<Result<Vec<_>>>()?;
    let mut heap = BinaryHeap::with_capacity(readers.len());
    for (i, r) in readers.iter_mut().enumerate() {
        if let Some(rec) = r.next().transpose()? {
            heap.push(Reverse((rec, i)));
        }
    }
    let file = File::create(output).map_err(|e| Error::io(output, e))?;
    let mut w = BufWriter::new(file);
    let io = |e| Error::io(output, e);
    writeln!(w, "{SORTED_HEADER}").map_err(io)?;
    let mut n = 0u64;
    while let Some(Reverse((rec, i))) = heap.pop() {
        writeln!(w, "{rec}").map_err(io)?;
        n += 1;
        if let Some(next) = readers[i].next().transpose()? {
            heap.push(Reverse((next, i)));
        }
    }
    w.flush().map_err(io)?;
    for p in runs {
        let _ = std::fs::remove_file(p);
    }
    Ok(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sds::DifferenceMultiplicity;

    fn rec(i: u32) -> CandidateRecord {
        // Scrambled but deterministic fingerprints over v = 6.
        let fp = (0..5).map(|c| (i.wrapping_mul(2654435761).rotate_left(c * 5) >> 28) % 4).collect();
        CandidateRecord { v: 6, reps: vec![i as usize % 6], cardinality: 1, fingerprint: DifferenceMultiplicity::from_counts(fp) }
    }

    #[test]
    fn write_then_read() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("a.cand");
        let recs: Vec<_> = (0..50).map(rec).collect();
        assert_eq!(write_candidates(&path, &recs, false).unwrap(), 50);
        let reader = CandidateReader::open(&path).unwrap();
        assert!(!reader.has_sorted_header());
        assert_eq!(reader.collect::<Result<Vec<_>>>().unwrap(), recs);
    }

    #[test]
    fn external_sort_matches_in_memory_sort() {
        let dir = tempfile::tempdir().unwrap();
        let input = dir.path().join("in.cand");
        let output = dir.path().join("out.cand");
        let mut recs: Vec<_> = (0..1000).map(rec).collect();
        write_candidates(&input, &recs, false).unwrap();
        assert_eq!(external_sort(&input, &output, 37, dir.path()).unwrap(), 1000);
        recs.sort();
        let reader = CandidateReader::open(&output).unwrap();
        assert!(reader.has_sorted_header());
        assert_eq!(reader.collect::<Result<Vec<_>>>().unwrap(), recs);
        let text = std::fs::read_to_string(&output).unwrap();
        assert!(text.starts_with("#sorted-by=fp\nv=6 reps="));
    }

    #[test]
    fn bad_line_reports_position() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.cand");
        std::fs::write(&path, "#sorted-by=fp\nv=4 reps=0 card=1 fp=0,0,0\nv=4 reps=0 card=1 fp=0\n").unwrap();
        let err = read_candidates(&path).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
    }
}
