//! Periodic and nonperiodic autocorrelation, and the PSD filter.
//!
//! PAF and NAF are exact integer sums computed directly in `O(v²)`. The PSD
//! is the squared magnitude of the DFT of the `±1` sequence and is the only
//! floating-point quantity in the crate.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::sequence::BinarySequence;

/// Absolute tolerance used when comparing PSD values against `2v`.
pub const PSD_TOLERANCE: f64 = 1e-6;

/// `values[s] = PAF_A(s)` for `s` in `[0, v)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PafVector {
    values: Vec<i64>,
}

impl PafVector {
    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

impl std::ops::Index<usize> for PafVector {
    type Output = i64;
    fn index(&self, s: usize) -> &i64 {
        &self.values[s]
    }
}

/// `values[s] = NAF_A(s)` for `s` in `[0, v)`; larger shifts are zero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NafVector {
    values: Vec<i64>,
}

impl NafVector {
    pub fn values(&self) -> &[i64] {
        &self.values
    }

    /// `NAF_A(s)` for any `s`, using `NAF(-s) = NAF(s)` and zero beyond `v`.
    pub fn at(&self, s: i64) -> i64 {
        let s = s.unsigned_abs() as usize;
        self.values.get(s).copied().unwrap_or(0)
    }
}

impl std::ops::Index<usize> for NafVector {
    type Output = i64;
    fn index(&self, s: usize) -> &i64 {
        &self.values[s]
    }
}

pub fn paf(a: &BinarySequence) -> PafVector {
    let e = a.entries();
    let v = e.len();
    let values = (0..v)
        .map(|s| (0..v).map(|i| (e[i] * e[(i + s) % v]) as i64).sum())
        .collect();
    PafVector { values }
}

pub fn naf(a: &BinarySequence) -> NafVector {
    let e = a.entries();
    let v = e.len();
    let values = (0..v)
        .map(|s| (0..v - s).map(|i| (e[i] * e[i + s]) as i64).sum())
        .collect();
    NafVector { values }
}

/// `psd[k] = |Σ_j a_j ω^{jk}|²`, `ω = e^{2πi/v}`, for `k = 0 ..= v/2`.
pub fn psd(a: &BinarySequence) -> Vec<f64> {
    let e = a.entries();
    let v = e.len();
    let table = RootTable::new(v);
    (0..=v / 2)
        .map(|k| {
            e.iter()
                .enumerate()
                .map(|(j, &x)| table.power(j * k) * x as f64)
                .sum::<Complex64>()
                .norm_sqr()
        })
        .collect()
}

/// `psd[k] ≤ 2v + tol` for every `k` in `1 ..= v/2`.
pub fn psd_test(a: &BinarySequence) -> bool {
    psd_within(&psd(a), a.len(), PSD_TOLERANCE)
}

pub(crate) fn psd_within(psd: &[f64], v: usize, tol: f64) -> bool {
    let bound = 2.0 * v as f64 + tol;
    psd.iter().skip(1).all(|&p| p <= bound)
}

/// Powers of `ω = e^{2πi/v}` indexed modulo `v`.
#[derive(Clone, Debug)]
pub(crate) struct RootTable {
    roots: Vec<Complex64>,
}

impl RootTable {
    pub(crate) fn new(v: usize) -> Self {
        let roots = (0..v)
            .map(|j| Complex64::from_polar(1.0, 2.0 * PI * j as f64 / v as f64))
            .collect();
        Self { roots }
    }

    #[inline]
    pub(crate) fn power(&self, e: usize) -> Complex64 {
        self.roots[e % self.roots.len()]
    }
}
