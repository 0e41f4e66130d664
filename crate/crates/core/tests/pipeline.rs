use std::collections::{BTreeSet, HashMap};

use pgolay::search::{run_pipeline, SearchPlan};
use pgolay::sequence::pair_lambda;
use pgolay::{elementary_canonical_form, expand_index_set, orbit_partition, paf, parse_fixture, sequence_from_subset, SubsetZv};

type Canon = (SubsetZv, SubsetZv);

/// Every periodic Golay pair of length `v`, found by comparing the PAF of
/// every subset against the negated PAF of every other subset.
fn brute_force(v: usize) -> BTreeSet<Canon> {
    let subsets: Vec<SubsetZv> = (0u32..1 << v).map(|m| SubsetZv::new(v, (0..v).filter(|i| m >> i & 1 == 1)).unwrap()).collect();
    let pafs: Vec<Vec<i64>> = subsets.iter().map(|x| paf(&sequence_from_subset(x)).values()[1..].to_vec()).collect();
    let mut by_paf: HashMap<&[i64], Vec<usize>> = HashMap::new();
    for (i, p) in pafs.iter().enumerate() {
        by_paf.entry(p.as_slice()).or_default().push(i);
    }
    let mut out = BTreeSet::new();
    for (i, p) in pafs.iter().enumerate() {
        let neg: Vec<i64> = p.iter().map(|x| -x).collect();
        for &j in by_paf.get(neg.as_slice()).into_iter().flatten() {
            out.insert(elementary_canonical_form(&subsets[i], &subsets[j]));
        }
    }
    out
}

fn pipeline_forms(v: usize) -> BTreeSet<Canon> {
    let table = orbit_partition(&pgolay::UnitSubgroup::trivial(v));
    let mut out = BTreeSet::new();
    for r in 0..=v {
        for s in 0..=v {
            if pair_lambda(v, r, s).is_none() {
                continue;
            }
            let plan = SearchPlan::exhaustive(v, &[], r, s).unwrap();
            let report = run_pipeline(&plan, 2, None).unwrap();
            for m in &report.pairs {
                let x = expand_index_set(&table, &m.j).unwrap();
                let y = expand_index_set(&table, &m.k).unwrap();
                out.insert(elementary_canonical_form(&x, &y));
            }
        }
    }
    out
}

#[test]
fn exhaustive_search_agrees_with_brute_force() {
    for v in [4, 10] {
        let oracle = brute_force(v);
        assert!(!oracle.is_empty());
        assert_eq!(pipeline_forms(v), oracle, "v = {v}");
    }
}

#[test]
fn odd_and_impossible_lengths_have_no_pairs() {
    assert!(brute_force(6).is_empty());
    assert!(pipeline_forms(6).is_empty());
}

#[test]
fn seeded_v74_rediscovers_both_published_pairs() {
    let plan = SearchPlan::from_toml(
        r#"
        v = 74
        h_generators = [47]
        r = 36
        s = 31
        translate = true
        [x]
        windows = [{ around = [1, 4, 6, 7, 9, 12, 22, 23, 28, 29, 34, 42], radius = 50 },
                   { around = [1, 2, 3, 6, 7, 21, 22, 23, 28, 29, 34, 55], radius = 50 }]
        [y]
        windows = [{ around = [1, 2, 4, 6, 9, 12, 17, 21, 22, 37, 55], radius = 50 },
                   { around = [2, 4, 5, 7, 9, 10, 17, 21, 34, 37, 42], radius = 50 }]
        "#,
    )
    .unwrap();
    let dir = tempfile::tempdir().unwrap();
    let report = run_pipeline(&plan, 4, Some(dir.path())).unwrap();
    let table = plan.table();
    let published = parse_fixture(pgolay::fixture::PUBLISHED).unwrap();
    let found: BTreeSet<Canon> = report
        .pairs
        .iter()
        .map(|m| elementary_canonical_form(&expand_index_set(&table, &m.j).unwrap(), &expand_index_set(&table, &m.k).unwrap()))
        .collect();
    for f in published.iter().filter(|f| f.v() == 74) {
        let (x, y) = f.blocks().unwrap();
        assert!(found.contains(&elementary_canonical_form(&x, &y)), "missing {f}");
    }
    for b in [&report.x, &report.y] {
        assert!(b.space >= b.windowed && b.windowed >= b.visited && b.visited >= b.psd_passed);
    }
    let text = std::fs::read_to_string(dir.path().join("solutions.pairs")).unwrap();
    let back = parse_fixture(&text).unwrap();
    assert_eq!(back.len(), report.pairs.len());
    assert!(back.iter().all(|f| f.verify().is_ok()));
}
