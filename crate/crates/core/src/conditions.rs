//! Necessary conditions on the length of a (periodic) Golay pair.
//!
//! A periodic Golay number `v > 1` is even, a sum of two squares, and
//! satisfies the Arasu–Xiang bound. A Golay number has no prime factor
//! `≡ 3 (mod 4)` (Eliahou–Kervaire–Saffari). The "known" sets below are a
//! fixed snapshot, not a live census.

use std::fmt;

use crate::error::{Error, Result};

/// Periodic Golay numbers known not to be Golay numbers: the Golay numbers
/// up to 100 are exactly the `2^a 10^b 26^c`, and each of these has a
/// published periodic pair.
pub const KNOWN_PERIODIC_ONLY: [u64; 7] = [34, 50, 58, 68, 72, 74, 82];

/// Lengths with constructed periodic Golay pairs whose Golay status is
/// undecided (the orbit-method constructions above 100).
pub const CONSTRUCTED_PERIODIC: [u64; 4] = [122, 164, 202, 226];

/// The classic list of even sums of two squares up to 500 ruled out by the
/// Arasu–Xiang bound. 196 fails the bound too but is missing from it;
/// [`classify_length`] reports 196 as excluded.
pub const PUBLISHED_EXCLUDED: [u64; 9] = [18, 36, 98, 162, 242, 324, 392, 484, 490];

/// Prime factorization by trial division, ascending primes.
pub fn factorize(mut v: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= v {
        if v.is_multiple_of(p) {
            let mut e = 0;
            while v.is_multiple_of(p) {
                v /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if v > 1 {
        out.push((v, 1));
    }
    out
}

/// Every prime `≡ 3 (mod 4)` divides `v` to an even power.
pub fn is_sum_of_two_squares(v: u64) -> bool {
    factorize(v).iter().all(|&(p, e)| p % 4 != 3 || e % 2 == 0)
}

/// `true` when `v` has a prime factor `≡ 3 (mod 4)`, so it is not a Golay number.
pub fn eks_golay_exclusion(v: u64) -> bool {
    factorize(v).iter().any(|&(p, _)| p % 4 == 3)
}

/// For every prime `p ≡ 3 (mod 4)` with `p^t ∥ v` and `u = v / p^t`, checks
/// `u ≥ 2 p^{t/2}`. An odd exponent means `v` already fails the two-squares
/// test and is reported as [`Error::OddExponent`].
pub fn arasu_xiang_test(v: u64) -> Result<bool> {
    for (p, t) in factorize(v) {
        if p % 4 != 3 {
            continue;
        }
        if t % 2 != 0 {
            return Err(Error::OddExponent { p, t });
        }
        let u = v / p.pow(t);
        if u < 2 * p.pow(t / 2) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `v = 2^a 10^b 26^c`.
pub fn is_golay_form(mut v: u64) -> bool {
    if v == 0 {
        return false;
    }
    for f in [26, 10, 2] {
        while v.is_multiple_of(f) {
            v /= f;
        }
    }
    v == 1
}

/// Lengths known to be periodic Golay numbers but not of Golay form: the
/// published lengths and their products with Golay-form numbers (a Golay
/// pair times a periodic Golay pair gives a periodic Golay pair).
pub fn is_known_periodic(v: u64) -> bool {
    KNOWN_PERIODIC_ONLY
        .iter()
        .chain(CONSTRUCTED_PERIODIC.iter())
        .any(|&p| v.is_multiple_of(p) && is_golay_form(v / p))
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum KnownStatus {
    /// Of the form `2^a 10^b 26^c`.
    Golay,
    /// A periodic Golay number known not to be a Golay number.
    PeriodicOnly,
    /// A periodic Golay number whose Golay status is undecided.
    Periodic,
    /// Fails at least one necessary condition.
    Excluded,
    /// Passes every necessary condition, existence undecided.
    Open,
}

impl fmt::Display for KnownStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            KnownStatus::Golay => "golay",
            KnownStatus::PeriodicOnly => "periodic_only",
            KnownStatus::Periodic => "periodic",
            KnownStatus::Excluded => "excluded",
            KnownStatus::Open => "open",
        })
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LengthVerdict {
    pub v: u64,
    /// `v` is even, or `v = 1`.
    pub even: bool,
    pub two_squares: bool,
    pub eks_golay_possible: bool,
    /// `None` when an odd exponent makes the bound undefined; the failure
    /// then shows up in `two_squares`.
    pub arasu_xiang_pass: Option<bool>,
    pub known_status: KnownStatus,
}

impl LengthVerdict {
    /// Names of the necessary conditions that fail, in evaluation order.
    pub fn failures(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.even {
            out.push("even");
        }
        if !self.two_squares {
            out.push("two-squares");
        }
        if self.arasu_xiang_pass == Some(false) {
            out.push("arasu-xiang");
        }
        out
    }
}

impl fmt::Display for LengthVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ax = match self.arasu_xiang_pass {
            Some(true) => "yes",
            Some(false) => "no",
            None => "n/a",
        };
        let yn = |b: bool| if b { "yes" } else { "no" };
        write!(
            f,
            "{:>5}  even={:<3} two_squares={:<3} eks_golay_possible={:<3} arasu_xiang={:<3} status={}",
            self.v,
            yn(self.even),
            yn(self.two_squares),
            yn(self.eks_golay_possible),
            ax,
            self.known_status
        )
    }
}

pub fn classify_length(v: u64) -> LengthVerdict {
    assert!(v >= 1, "lengths start at 1");
    let even = v == 1 || v.is_multiple_of(2);
    let two_squares = is_sum_of_two_squares(v);
    let arasu_xiang_pass = arasu_xiang_test(v).ok();
    let necessary = even && two_squares && arasu_xiang_pass != Some(false);
    let known_status = if is_golay_form(v) {
        KnownStatus::Golay
    } else if !necessary {
        KnownStatus::Excluded
    } else if KNOWN_PERIODIC_ONLY.contains(&v) {
        KnownStatus::PeriodicOnly
    } else if is_known_periodic(v) {
        KnownStatus::Periodic
    } else {
        KnownStatus::Open
    };
    LengthVerdict {
        v,
        even,
        two_squares,
        eks_golay_possible: !eks_golay_exclusion(v),
        arasu_xiang_pass,
        known_status,
    }
}

/// Lengths up to `range_end` passing every necessary condition whose
/// existence question is still open.
pub fn open_candidates(range_end: u64) -> Vec<u64> {
    (1..=range_end).filter(|&v| classify_length(v).known_status == KnownStatus::Open).collect()
}
