//! Line-oriented fixture format for pairs in orbit notation.
//!
//! ```text
//! # comment
//! pair v=74 H=1,47,63 J=1,4,6,... K=1,2,4,... params=36,31,30
//! ```
//!
//! `H` may list the whole subgroup or just generators; it is closed on
//! parse and written back in full. `J` and `K` list the smallest element of
//! each orbit in `X` and `Y`.

use std::fmt;

use crate::error::{Error, Result};
use crate::orbits::{close_subgroup, expand_index_set, join, orbit_partition, OrbitTable, UnitSubgroup};
use crate::sds::verify_periodic_golay_pair;
use crate::sequence::{derive_pair_params, PeriodicGolayPair, SdsParams, SubsetZv};

/// The eleven published solutions at lengths 74, 82, 122, 164, 202 and 226.
pub const PUBLISHED: &str = include_str!("../data/published.pairs");

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FixtureSpec {
    /// 1-based line in the source document, 0 when built in memory.
    pub line: usize,
    pub subgroup: UnitSubgroup,
    pub j_reps: Vec<usize>,
    pub k_reps: Vec<usize>,
    pub params: SdsParams,
}

impl FixtureSpec {
    pub fn v(&self) -> usize {
        self.subgroup.modulus()
    }

    pub fn table(&self) -> OrbitTable {
        orbit_partition(&self.subgroup)
    }

    pub fn blocks(&self) -> Result<(SubsetZv, SubsetZv)> {
        let t = self.table();
        Ok((expand_index_set(&t, &self.j_reps)?, expand_index_set(&t, &self.k_reps)?))
    }

    pub fn verify(&self) -> Result<PeriodicGolayPair> {
        let (x, y) = self.blocks()?;
        verify_periodic_golay_pair(&x, &y)
    }
}

impl fmt::Display for FixtureSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (r, s) = self.params.pair_sizes().map_err(|_| fmt::Error)?;
        write!(
            f,
            "pair v={} H={} J={} K={} params={},{},{}",
            self.v(),
            self.subgroup,
            join(&self.j_reps),
            join(&self.k_reps),
            r,
            s,
            self.params.lambda()
        )
    }
}

pub fn parse_fixture(text: &str) -> Result<Vec<FixtureSpec>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| {
            let l = l.trim();
            !l.is_empty() && !l.starts_with('#')
        })
        .map(|(i, l)| parse_line(i + 1, l.trim()))
        .collect()
}

/// Serializes specs one per line.
pub fn write_fixture(specs: &[FixtureSpec]) -> String {
    specs.iter().map(|s| format!("{s}\n")).collect()
}

fn parse_line(line: usize, text: &str) -> Result<FixtureSpec> {
    let perr = |message: String| Error::Parse { line, message };
    let mut tokens = text.split_whitespace();
    if tokens.next() != Some("pair") {
        return Err(perr("expected a line starting with `pair`".into()));
    }
    let (mut v, mut h, mut j, mut k, mut params) = (None, None, None, None, None);
    for tok in tokens {
        let (key, value) = tok.split_once('=').ok_or_else(|| perr(format!("expected key=value, got `{tok}`")))?;
        let slot = match key {
            "v" => {
                v = Some(value.parse::<usize>().map_err(|e| perr(format!("v: {e}")))?);
                continue;
            }
            "H" => &mut h,
            "J" => &mut j,
            "K" => &mut k,
            "params" => &mut params,
            _ => return Err(perr(format!("unknown key `{key}`"))),
        };
        if slot.is_some() {
            return Err(perr(format!("duplicate key `{key}`")));
        }
        *slot = Some(parse_list(value).map_err(|e| perr(format!("{key}: {e}")))?);
    }
    let missing = |k: &str| perr(format!("missing `{k}`"));
    let v = v.ok_or_else(|| missing("v"))?;
    let h = h.ok_or_else(|| missing("H"))?;
    let j = j.ok_or_else(|| missing("J"))?;
    let k = k.ok_or_else(|| missing("K"))?;
    let params = params.ok_or_else(|| missing("params"))?;
    if v == 0 {
        return Err(perr("v must be positive".into()));
    }
    let subgroup = close_subgroup(v, &h).map_err(|e| perr(e.to_string()))?;
    let table = orbit_partition(&subgroup);

    for &rep in j.iter().chain(&k) {
        if rep >= v {
            return Err(perr(format!("index {rep} out of range for v={v}")));
        }
        if !table.is_representative(rep) {
            return Err(Error::RepNotCanonical { line, value: rep, rep: table.rep_of(rep) });
        }
    }
    let [r, s, lambda] = params[..] else {
        return Err(perr("params must be r,s,lambda".into()));
    };
    let x = expand_index_set(&table, &j).map_err(|e| perr(format!("J: {e}")))?;
    let y = expand_index_set(&table, &k).map_err(|e| perr(format!("K: {e}")))?;
    let stated = (r, s, lambda as i64);
    let got = (x.len(), y.len(), (x.len() + y.len()) as i64 - (v / 2) as i64);
    if stated != got {
        return Err(Error::ParamMismatch { line, stated, derived: got });
    }
    let derived = derive_pair_params(&x, &y).map_err(|e| perr(e.to_string()))?;
    Ok(FixtureSpec { line, subgroup, j_reps: j, k_reps: k, params: derived })
}

fn parse_list(value: &str) -> std::result::Result<Vec<usize>, std::num::ParseIntError> {
    if value.is_empty() {
        return Ok(Vec::new());
    }
    value.split(',').map(|x| x.trim().parse()).collect()
}
