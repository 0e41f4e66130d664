use pgolay::fixture::PUBLISHED;
use pgolay::{
    build_hadamard, check_square_decomposition, derive_pair_params, is_hadamard, paf, parse_fixture, psd_test, sequence_from_subset, write_fixture,
    Error,
};

#[test]
fn round_trip_is_identity() {
    let specs = parse_fixture(PUBLISHED).unwrap();
    let text = write_fixture(&specs);
    let again = parse_fixture(&text).unwrap();
    assert_eq!(write_fixture(&again), text);
    for (a, b) in specs.iter().zip(&again) {
        assert_eq!((&a.subgroup, &a.j_reps, &a.k_reps, &a.params), (&b.subgroup, &b.j_reps, &b.k_reps, &b.params));
    }
}

#[test]
fn every_fixture_satisfies_every_check() {
    for f in parse_fixture(PUBLISHED).unwrap() {
        let (x, y) = f.blocks().unwrap();
        assert_eq!(derive_pair_params(&x, &y).unwrap(), f.params);
        let (a, b) = check_square_decomposition(&f.params).unwrap();
        assert_eq!(a * a + b * b, 2 * f.v() as i64);
        let pair = f.verify().unwrap();
        assert!(psd_test(pair.a()) && psd_test(pair.b()));
        let (pa, pb) = (paf(pair.a()), paf(pair.b()));
        assert!((1..f.v()).all(|s| pa[s] + pb[s] == 0));
        assert!(is_hadamard(&build_hadamard(&pair)));
    }
}

#[test]
fn swapping_a_rep_breaks_verification_not_parsing() {
    let text = PUBLISHED.replacen("J=1,4,6,7,9,12,22,23,28,29,34,42", "J=2,4,6,7,9,12,22,23,28,29,34,42", 1);
    let specs = parse_fixture(&text).unwrap();
    assert!(specs[0].verify().is_err());
    assert!(specs[1..].iter().all(|f| f.verify().is_ok()));
}

#[test]
fn mutated_sizes_are_rejected_on_parse() {
    let text = PUBLISHED.replacen("K=1,2,4,6,9,12,17,21,22,37,55", "K=1,2,4,6,9,12,17,21,22,55", 1);
    assert!(matches!(parse_fixture(&text), Err(Error::ParamMismatch { line: 6, .. })));
    let text = PUBLISHED.replacen("J=1,4,6", "J=1,4,8", 1);
    assert!(matches!(parse_fixture(&text), Err(Error::RepNotCanonical { line: 6, .. })));
}

#[test]
fn blocks_are_sequences_of_the_stated_length() {
    for f in parse_fixture(PUBLISHED).unwrap() {
        let (x, y) = f.blocks().unwrap();
        assert_eq!(sequence_from_subset(&x).len(), f.v());
        assert_eq!((x.len(), y.len()), f.params.pair_sizes().unwrap());
    }
}
