//! Supplementary difference sets and periodic Golay pair verification.
//!
//! A pair of subsets `(X, Y)` of `Z_v` with `|X| = r`, `|Y| = s` corresponds
//! to a periodic Golay pair exactly when it is an SDS with
//! `λ = r + s - v/2`. [`verify_periodic_golay_pair`] checks both sides of that
//! equivalence independently and refuses to return a pair unless they agree.

use std::fmt;

use crate::correlation::paf;
use crate::error::{Error, Result};
use crate::orbits::units;
use crate::sequence::{derive_pair_params, sequence_from_subset, PeriodicGolayPair, SubsetZv};

/// `counts[c - 1]` is the number of ordered pairs `(a, b)` inside a single
/// block with `a - b ≡ c (mod v)`, summed over blocks.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct DifferenceMultiplicity {
    counts: Vec<u32>,
}

impl DifferenceMultiplicity {
    pub fn from_counts(counts: Vec<u32>) -> Self {
        Self { counts }
    }

    /// The modulus `v`; the vector has `v - 1` entries.
    pub fn modulus(&self) -> usize {
        self.counts.len() + 1
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    pub fn into_counts(self) -> Vec<u32> {
        self.counts
    }

    /// Count for the nonzero difference `c`.
    pub fn at(&self, c: usize) -> u32 {
        self.counts[c - 1]
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().map(|&c| c as u64).sum()
    }
}

impl fmt::Display for DifferenceMultiplicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.counts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

pub fn difference_multiplicities(v: usize, blocks: &[&SubsetZv]) -> DifferenceMultiplicity {
    let mut counts = vec![0u32; v.saturating_sub(1)];
    for block in blocks {
        debug_assert_eq!(block.modulus(), v);
        let e = block.elements();
        for &a in e {
            for &b in e {
                if a != b {
                    counts[(a + v - b) % v - 1] += 1;
                }
            }
        }
    }
    DifferenceMultiplicity { counts }
}

/// Every nonzero difference occurs exactly `lambda` times across the blocks.
pub fn is_sds(v: usize, blocks: &[&SubsetZv], lambda: usize) -> bool {
    difference_multiplicities(v, blocks).counts.iter().all(|&c| c as usize == lambda)
}

/// Checks `PAF_A(s) + PAF_B(s) = 0` for `s ≠ 0` and, separately, the SDS
/// condition with the derived `λ`.
pub fn verify_periodic_golay_pair(x: &SubsetZv, y: &SubsetZv) -> Result<PeriodicGolayPair> {
    if x.modulus() != y.modulus() {
        return Err(Error::IncompatibleModuli { left: x.modulus(), right: y.modulus() });
    }
    let v = x.modulus();
    let a = sequence_from_subset(x);
    let b = sequence_from_subset(y);
    let (pa, pb) = (paf(&a), paf(&b));
    let bad_shift = (1..v).find(|&s| pa[s] + pb[s] != 0);
    if v == 1 {
        // No nonzero shifts or differences: both conditions hold vacuously.
        return Ok(PeriodicGolayPair::new_verified(a, b));
    }

    let params = derive_pair_params(x, y);
    let sds = params.as_ref().is_ok_and(|p| is_sds(v, &[x, y], p.lambda()));

    match (bad_shift, params) {
        (Some(shift), _) if !sds => Err(Error::NotComplementary { shift, sum: pa[shift] + pb[shift] }),
        (None, Ok(_)) if sds => Ok(PeriodicGolayPair::new_verified(a, b)),
        (None, Err(e)) => Err(Error::ParameterInfeasible { reason: e.to_string() }),
        _ => Err(Error::CheckDisagreement { v }),
    }
}

/// Lexicographically least representative of `(X, Y)` under independent
/// shifts and negations of each block, swapping the blocks, and multiplying
/// both blocks by a common unit.
///
/// This is an elementary equivalence only. Pairs with different forms are
/// reported as elementary-inequivalent; they may still be equivalent under
/// a coarser notion.
pub fn elementary_canonical_form(x: &SubsetZv, y: &SubsetZv) -> (SubsetZv, SubsetZv) {
    let v = x.modulus();
    let mut best: Option<(SubsetZv, SubsetZv)> = None;
    for u in units(v) {
        let (ux, uy) = (x.scaled(u), y.scaled(u));
        // The per-block transforms act independently, so for fixed u and
        // block order the least pair is the pair of least blocks.
        let (cx, cy) = (block_canonical_form(&ux), block_canonical_form(&uy));
        for cand in [(cx.clone(), cy.clone()), (cy, cx)] {
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
    }
    best.expect("Z_v has at least one unit")
}

/// Least element of `{±X + c}`.
pub fn block_canonical_form(x: &SubsetZv) -> SubsetZv {
    let v = x.modulus();
    let neg = x.negated();
    (0..v)
        .flat_map(|c| [x.shifted(c), neg.shifted(c)])
        .min()
        .expect("v > 0")
}
