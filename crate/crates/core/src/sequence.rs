//! Binary sequences, subsets of `Z_v`, and SDS parameter arithmetic.
//!
//! A `±1` sequence `A` of length `v` and the subset `{i : a_i = -1}` of
//! `Z_v` carry the same information. Correlation code works on sequences,
//! difference counting works on subsets, and the two conversions here are
//! exact inverses of each other.

use std::fmt;

use crate::error::{Error, Result};

/// A `{+1, -1}` sequence of length `v`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BinarySequence {
    entries: Vec<i8>,
}

impl BinarySequence {
    pub fn new(entries: Vec<i8>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::ZeroModulus);
        }
        if let Some((index, &value)) = entries.iter().enumerate().find(|(_, &e)| e != 1 && e != -1) {
            return Err(Error::NotBinary { index, value: value as i64 });
        }
        Ok(Self { entries })
    }

    /// The all-ones sequence.
    pub fn ones(v: usize) -> Self {
        assert!(v > 0, "length must be positive");
        Self { entries: vec![1; v] }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[i8] {
        &self.entries
    }

    /// Sum of the entries, `v - 2|X|`.
    pub fn sum(&self) -> i64 {
        self.entries.iter().map(|&e| e as i64).sum()
    }
}

impl fmt::Display for BinarySequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &e in &self.entries {
            f.write_str(if e > 0 { "+" } else { "-" })?;
        }
        Ok(())
    }
}

/// A subset of `Z_v`, stored as a strictly increasing element list.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct SubsetZv {
    v: usize,
    elements: Vec<usize>,
}

impl SubsetZv {
    /// Builds a subset from elements in any order. Duplicates and values
    /// outside `[0, v)` are rejected.
    pub fn new(v: usize, elements: impl IntoIterator<Item = usize>) -> Result<Self> {
        if v == 0 {
            return Err(Error::ZeroModulus);
        }
        let mut elements: Vec<usize> = elements.into_iter().collect();
        if let Some(&value) = elements.iter().find(|&&e| e >= v) {
            return Err(Error::OutOfRange { v, value });
        }
        elements.sort_unstable();
        if let Some(w) = elements.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateIndex { value: w[0] });
        }
        Ok(Self { v, elements })
    }

    pub fn empty(v: usize) -> Self {
        assert!(v > 0, "modulus must be positive");
        Self { v, elements: Vec::new() }
    }

    /// Caller guarantees the list is strictly increasing and below `v`.
    pub(crate) fn from_sorted(v: usize, elements: Vec<usize>) -> Self {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(elements.last().is_none_or(|&e| e < v));
        Self { v, elements }
    }

    pub fn modulus(&self) -> usize {
        self.v
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, e: usize) -> bool {
        self.elements.binary_search(&e).is_ok()
    }

    /// `X + c`.
    pub fn shifted(&self, c: usize) -> Self {
        self.mapped(|e| (e + c) % self.v)
    }

    /// `u * X`. Only a bijection of `Z_v` when `u` is a unit.
    pub fn scaled(&self, u: usize) -> Self {
        self.mapped(|e| (e * u) % self.v)
    }

    /// `-X`.
    pub fn negated(&self) -> Self {
        self.mapped(|e| (self.v - e) % self.v)
    }

    fn mapped(&self, f: impl Fn(usize) -> usize) -> Self {
        let mut elements: Vec<usize> = self.elements.iter().map(|&e| f(e)).collect();
        elements.sort_unstable();
        elements.dedup();
        Self { v: self.v, elements }
    }
}

/// Entry `i` is `-1` exactly when `i ∈ x`.
pub fn sequence_from_subset(x: &SubsetZv) -> BinarySequence {
    let mut entries = vec![1i8; x.v];
    for &e in &x.elements {
        entries[e] = -1;
    }
    BinarySequence { entries }
}

pub fn subset_from_sequence(a: &BinarySequence) -> SubsetZv {
    let elements = a
        .entries
        .iter()
        .enumerate()
        .filter(|(_, &e)| e < 0)
        .map(|(i, _)| i)
        .collect();
    SubsetZv::from_sorted(a.len(), elements)
}

/// SDS parameters `(v; k_1, ..., k_t; λ)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SdsParams {
    v: usize,
    block_sizes: Vec<usize>,
    lambda: usize,
}

impl SdsParams {
    /// Checks `λ(v-1) = Σ k_i(k_i - 1)`.
    pub fn new(v: usize, block_sizes: Vec<usize>, lambda: usize) -> Result<Self> {
        if v == 0 {
            return Err(Error::ZeroModulus);
        }
        let lhs = (lambda * (v - 1)) as i64;
        let rhs: i64 = block_sizes.iter().map(|&k| (k * k.saturating_sub(1)) as i64).sum();
        if lhs != rhs {
            return Err(Error::InfeasibleParams { lhs, rhs });
        }
        Ok(Self { v, block_sizes, lambda })
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn block_sizes(&self) -> &[usize] {
        &self.block_sizes
    }

    pub fn lambda(&self) -> usize {
        self.lambda
    }

    /// `n = Σ k_i - λ`.
    pub fn n(&self) -> i64 {
        self.block_sizes.iter().sum::<usize>() as i64 - self.lambda as i64
    }

    /// `(r, s)` for a two-block set.
    pub fn pair_sizes(&self) -> Result<(usize, usize)> {
        match self.block_sizes[..] {
            [r, s] => Ok((r, s)),
            _ => Err(Error::NotAPair { blocks: self.block_sizes.len() }),
        }
    }
}

impl fmt::Display for SdsParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({};", self.v)?;
        for (i, k) in self.block_sizes.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{k}")?;
        }
        write!(f, ";{})", self.lambda)
    }
}

/// `λ` implied by block sizes `r, s` for a periodic Golay pair of length `v`,
/// i.e. `r + s - v/2`, or `None` when that is undefined or negative.
pub fn pair_lambda(v: usize, r: usize, s: usize) -> Option<usize> {
    if !v.is_multiple_of(2) {
        return None;
    }
    (r + s).checked_sub(v / 2)
}

/// Parameters `(v; |x|, |y|; λ)` with `n = v/2`.
///
/// `λ` is always derived from the block sizes. The result does not have to
/// satisfy the SDS feasibility identity for arbitrary subsets; when it does
/// not, [`SdsParams::new`]'s check fails and the error is returned.
pub fn derive_pair_params(x: &SubsetZv, y: &SubsetZv) -> Result<SdsParams> {
    if x.v != y.v {
        return Err(Error::IncompatibleModuli { left: x.v, right: y.v });
    }
    let v = x.v;
    if !v.is_multiple_of(2) {
        return Err(Error::OddLength { v });
    }
    let (r, s) = (x.len(), y.len());
    let lambda = pair_lambda(v, r, s).ok_or(Error::NegativeLambda { v, r, s })?;
    SdsParams::new(v, vec![r, s], lambda)
}

/// Returns `(a, b) = (v - 2r, v - 2s)` after checking `a² + b² = 2v`.
pub fn check_square_decomposition(params: &SdsParams) -> Result<(i64, i64)> {
    let (r, s) = params.pair_sizes()?;
    let v = params.v as i64;
    let a = v - 2 * r as i64;
    let b = v - 2 * s as i64;
    let sum = a * a + b * b;
    if sum != 2 * v {
        return Err(Error::DecompositionFails { v: params.v, a, b, sum });
    }
    Ok((a, b))
}

/// A pair of sequences with `PAF_A(s) + PAF_B(s) = 0` for every `s ≠ 0`.
///
/// Only [`crate::sds::verify_periodic_golay_pair`] builds these.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PeriodicGolayPair {
    a: BinarySequence,
    b: BinarySequence,
}

impl PeriodicGolayPair {
    pub(crate) fn new_verified(a: BinarySequence, b: BinarySequence) -> Self {
        Self { a, b }
    }

    pub fn a(&self) -> &BinarySequence {
        &self.a
    }

    pub fn b(&self) -> &BinarySequence {
        &self.b
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn subsets(&self) -> (SubsetZv, SubsetZv) {
        (subset_from_sequence(&self.a), subset_from_sequence(&self.b))
    }
}
