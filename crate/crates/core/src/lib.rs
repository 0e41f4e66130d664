//! Periodic Golay pairs: correlation, supplementary difference sets, orbit
//! compression, existence conditions, a two-file candidate search and the
//! Hadamard matrices built from verified pairs.
//!
//! ```
//! use pgolay::{close_subgroup, orbit_partition, expand_index_set, verify_periodic_golay_pair};
//!
//! let table = orbit_partition(&close_subgroup(74, &[47]).unwrap());
//! let x = expand_index_set(&table, &[1, 4, 6, 7, 9, 12, 22, 23, 28, 29, 34, 42]).unwrap();
//! let y = expand_index_set(&table, &[1, 2, 4, 6, 9, 12, 17, 21, 22, 37, 55]).unwrap();
//! let pair = verify_periodic_golay_pair(&x, &y).unwrap();
//! assert_eq!(pair.len(), 74);
//! ```

pub mod conditions;
pub mod correlation;
pub mod error;
pub mod fixture;
pub mod hadamard;
pub mod orbits;
pub mod sds;
pub mod search;
pub mod sequence;

pub use conditions::{arasu_xiang_test, classify_length, eks_golay_exclusion, is_sum_of_two_squares, open_candidates, KnownStatus, LengthVerdict};
pub use correlation::{naf, paf, psd, psd_test, NafVector, PafVector, PSD_TOLERANCE};
pub use error::{Error, Result};
pub use fixture::{parse_fixture, write_fixture, FixtureSpec};
pub use hadamard::{build_hadamard, circulant, is_hadamard, SquareMatrix};
pub use orbits::{close_subgroup, compress_to_index_set, expand_index_set, orbit_partition, OrbitTable, UnitSubgroup};
pub use sds::{difference_multiplicities, elementary_canonical_form, is_sds, verify_periodic_golay_pair, DifferenceMultiplicity};
pub use sequence::{
    check_square_decomposition, derive_pair_params, sequence_from_subset, subset_from_sequence, BinarySequence, PeriodicGolayPair, SdsParams, SubsetZv,
};

#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
mod readme {}

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/sequences.md")]
    mod sequences {}
    #[doc = include_str!("../../../book/src/orbits.md")]
    mod orbits {}
    #[doc = include_str!("../../../book/src/sds.md")]
    mod sds {}
    #[doc = include_str!("../../../book/src/conditions.md")]
    mod conditions {}
    #[doc = include_str!("../../../book/src/search.md")]
    mod search {}
    #[doc = include_str!("../../../book/src/hadamard.md")]
    mod hadamard {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
