//! Multiplicative action of a unit subgroup `H ≤ Z_v^*` on `Z_v`.
//!
//! Base blocks in the orbit method are unions of `H`-orbits, written
//! compactly by listing one representative per orbit: the smallest element.
//! The orbit table covers all of `Z_v`, including `0` and other non-units,
//! since fixed points such as `37 ∈ Z_74` show up in real index sets.

use std::fmt;

use crate::error::{Error, Result};
use crate::sequence::SubsetZv;

pub(crate) fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn is_unit(v: usize, x: usize) -> bool {
    v == 1 || (!x.is_multiple_of(v) && gcd(x, v) == 1)
}

/// All units of `Z_v`, ascending.
pub fn units(v: usize) -> Vec<usize> {
    (1..v.max(2)).filter(|&x| is_unit(v, x)).collect()
}

/// A subgroup of the units of `Z_v`, stored as its sorted element list.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct UnitSubgroup {
    v: usize,
    elements: Vec<usize>,
}

impl UnitSubgroup {
    pub fn trivial(v: usize) -> Self {
        assert!(v > 0, "modulus must be positive");
        Self { v, elements: vec![1 % v.max(2)] }
    }

    pub fn modulus(&self) -> usize {
        self.v
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, h: usize) -> bool {
        self.elements.binary_search(&h).is_ok()
    }
}

impl fmt::Display for UnitSubgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join(&self.elements))
    }
}

/// The smallest subgroup of `Z_v^*` containing every generator.
pub fn close_subgroup(v: usize, generators: &[usize]) -> Result<UnitSubgroup> {
    if v == 0 {
        return Err(Error::ZeroModulus);
    }
    if v == 1 {
        return Ok(UnitSubgroup::trivial(1));
    }
    for &g in generators {
        if g == 0 || g >= v || !is_unit(v, g) {
            return Err(Error::NotAUnit { v, value: g });
        }
    }
    let mut member = vec![false; v];
    member[1] = true;
    let mut elements = vec![1];
    let mut i = 0;
    // Breadth-first closure: multiply every found element by every generator.
    while i < elements.len() {
        let x = elements[i];
        for &g in generators {
            let y = x * g % v;
            if !member[y] {
                member[y] = true;
                elements.push(y);
            }
        }
        i += 1;
    }
    elements.sort_unstable();
    Ok(UnitSubgroup { v, elements })
}

/// Partition of `Z_v` into `H`-orbits, ordered by representative.
#[derive(Clone, Debug)]
pub struct OrbitTable {
    subgroup: UnitSubgroup,
    orbits: Vec<SubsetZv>,
    rep_of: Vec<usize>,
    index_of_rep: Vec<Option<usize>>,
}

pub fn orbit_partition(h: &UnitSubgroup) -> OrbitTable {
    let v = h.v;
    let mut rep_of = vec![usize::MAX; v];
    let mut index_of_rep = vec![None; v];
    let mut orbits = Vec::new();
    for j in 0..v {
        if rep_of[j] != usize::MAX {
            continue;
        }
        // j is the smallest element not yet covered, so it is the orbit minimum.
        let orbit: Vec<usize> = h.elements.iter().map(|&g| g * j % v).collect();
        let orbit = SubsetZv::new(v, dedup_sorted(orbit)).expect("orbit elements lie in Z_v");
        for &e in orbit.elements() {
            rep_of[e] = j;
        }
        index_of_rep[j] = Some(orbits.len());
        orbits.push(orbit);
    }
    OrbitTable { subgroup: h.clone(), orbits, rep_of, index_of_rep }
}

fn dedup_sorted(mut xs: Vec<usize>) -> Vec<usize> {
    xs.sort_unstable();
    xs.dedup();
    xs
}

impl OrbitTable {
    pub fn modulus(&self) -> usize {
        self.subgroup.v
    }

    pub fn subgroup(&self) -> &UnitSubgroup {
        &self.subgroup
    }

    pub fn orbits(&self) -> &[SubsetZv] {
        &self.orbits
    }

    pub fn rep_of(&self, e: usize) -> usize {
        self.rep_of[e]
    }

    pub fn is_representative(&self, e: usize) -> bool {
        e < self.modulus() && self.rep_of[e] == e
    }

    /// The orbit whose representative is `rep`, if `rep` is one.
    pub fn orbit_of_rep(&self, rep: usize) -> Option<&SubsetZv> {
        self.index_of_rep.get(rep).copied().flatten().map(|i| &self.orbits[i])
    }

    pub fn orbit_containing(&self, e: usize) -> &SubsetZv {
        self.orbit_of_rep(self.rep_of[e]).expect("every element has an orbit")
    }

    pub fn representatives(&self) -> impl Iterator<Item = usize> + '_ {
        self.orbits.iter().map(|o| o.elements()[0])
    }
}

impl fmt::Display for OrbitTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "v={} H={} |H|={} orbits={}", self.modulus(), self.subgroup, self.subgroup.order(), self.orbits.len())?;
        for o in &self.orbits {
            writeln!(f, "rep={} size={} elements={}", o.elements()[0], o.len(), join(o.elements()))?;
        }
        Ok(())
    }
}

/// Union of the orbits named by `reps`.
pub fn expand_index_set(t: &OrbitTable, reps: &[usize]) -> Result<SubsetZv> {
    let v = t.modulus();
    let mut seen = vec![false; v];
    let mut elements = Vec::new();
    for &r in reps {
        if r >= v {
            return Err(Error::OutOfRange { v, value: r });
        }
        if !t.is_representative(r) {
            return Err(Error::NotARepresentative { value: r, rep: t.rep_of(r) });
        }
        if seen[r] {
            return Err(Error::DuplicateIndex { value: r });
        }
        seen[r] = true;
        elements.extend_from_slice(t.orbit_of_rep(r).expect("checked representative").elements());
    }
    elements.sort_unstable();
    Ok(SubsetZv::from_sorted(v, elements))
}

/// Inverse of [`expand_index_set`]: the sorted representatives of the orbits
/// making up `x`.
pub fn compress_to_index_set(t: &OrbitTable, x: &SubsetZv) -> Result<Vec<usize>> {
    if x.modulus() != t.modulus() {
        return Err(Error::IncompatibleModuli { left: x.modulus(), right: t.modulus() });
    }
    let mut reps: Vec<usize> = x.elements().iter().map(|&e| t.rep_of(e)).collect();
    reps.sort_unstable();
    reps.dedup();
    for &r in &reps {
        let orbit = t.orbit_of_rep(r).expect("rep_of yields representatives");
        if !orbit.elements().iter().all(|&e| x.contains(e)) {
            return Err(Error::NotOrbitUnion { rep: r });
        }
    }
    Ok(reps)
}

pub(crate) fn join(xs: &[usize]) -> String {
    let mut out = String::new();
    for (i, x) in xs.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(&x.to_string());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subgroup_closure() {
        assert_eq!(close_subgroup(74, &[47]).unwrap().elements(), &[1, 47, 63]);
        assert_eq!(close_subgroup(82, &[37]).unwrap().elements(), &[1, 37, 51, 57, 59]);
        assert_eq!(close_subgroup(10, &[1]).unwrap().elements(), &[1]);
        assert_eq!(close_subgroup(10, &[]).unwrap().elements(), &[1]);
        assert!(matches!(close_subgroup(74, &[2]), Err(Error::NotAUnit { v: 74, value: 2 })));
        assert!(matches!(close_subgroup(74, &[74]), Err(Error::NotAUnit { .. })));
    }

    #[test]
    fn published_subgroups_are_closed() {
        for (v, h) in [
            (74, vec![1, 47, 63]),
            (82, vec![1, 37, 51, 57, 59]),
            (122, vec![1, 9, 81, 95, 119]),
            (164, vec![1, 37, 57, 133, 141]),
            (202, vec![1, 87, 95, 137, 185]),
            (226, vec![1, 49, 109, 129, 141, 143, 219]),
        ] {
            assert_eq!(close_subgroup(v, &h).unwrap().elements(), &h[..], "v={v}");
        }
    }

    #[test]
    fn orbits_at_74() {
        let t = orbit_partition(&close_subgroup(74, &[47]).unwrap());
        assert_eq!(t.orbit_containing(1).elements(), &[1, 47, 63]);
        assert_eq!(t.orbit_containing(2).elements(), &[2, 20, 52]);
        assert_eq!(t.orbit_containing(37).elements(), &[37]);
        assert_eq!(t.orbit_containing(0).elements(), &[0]);
        assert_eq!(t.orbits().len(), 26);
        assert_eq!(t.rep_of(63), 1);
    }

    #[test]
    fn trivial_group_gives_singletons() {
        let t = orbit_partition(&close_subgroup(5, &[]).unwrap());
        assert_eq!(t.orbits().len(), 5);
        assert!(t.orbits().iter().all(|o| o.len() == 1));
    }

    #[test]
    fn fixed_point_at_226() {
        let h = close_subgroup(226, &[49, 109, 129, 141, 143, 219]).unwrap();
        let t = orbit_partition(&h);
        assert_eq!(t.orbit_containing(113).elements(), &[113]);
    }

    #[test]
    fn orbit_table_invariants() {
        for (v, gens) in [(74, vec![47]), (82, vec![37]), (164, vec![37]), (226, vec![49, 109]), (34, vec![13]), (60, vec![7, 11])] {
            let h = close_subgroup(v, &gens).unwrap();
            let t = orbit_partition(&h);
            let total: usize = t.orbits().iter().map(|o| o.len()).sum();
            assert_eq!(total, v);
            let mut covered = vec![0; v];
            for o in t.orbits() {
                assert_eq!(h.order() % o.len(), 0);
                assert_eq!(o.elements()[0], t.rep_of(o.elements()[0]));
                for &e in o.elements() {
                    covered[e] += 1;
                }
            }
            assert!(covered.iter().all(|&c| c == 1));
            for e in 0..v {
                for &g in h.elements() {
                    assert_eq!(t.rep_of(e), t.rep_of(g * e % v));
                }
            }
        }
    }

    #[test]
    fn expand_and_compress() {
        let t = orbit_partition(&close_subgroup(74, &[47]).unwrap());
        let j = [1, 4, 6, 7, 9, 12, 22, 23, 28, 29, 34, 42];
        let k = [1, 2, 4, 6, 9, 12, 17, 21, 22, 37, 55];
        let x = expand_index_set(&t, &j).unwrap();
        let y = expand_index_set(&t, &k).unwrap();
        assert_eq!((x.len(), y.len()), (36, 31));
        assert_eq!(compress_to_index_set(&t, &x).unwrap(), j);
        assert_eq!(compress_to_index_set(&t, &y).unwrap(), k);
        assert!(expand_index_set(&t, &[]).unwrap().is_empty());
        assert_eq!(compress_to_index_set(&t, &SubsetZv::new(74, [0]).unwrap()).unwrap(), vec![0]);
    }

    #[test]
    fn expand_and_compress_errors() {
        let t = orbit_partition(&close_subgroup(74, &[47]).unwrap());
        assert!(matches!(expand_index_set(&t, &[47]), Err(Error::NotARepresentative { value: 47, rep: 1 })));
        assert!(matches!(expand_index_set(&t, &[1, 1]), Err(Error::DuplicateIndex { value: 1 })));
        assert!(matches!(expand_index_set(&t, &[80]), Err(Error::OutOfRange { .. })));
        let cut = SubsetZv::new(74, [1, 47]).unwrap();
        assert!(matches!(compress_to_index_set(&t, &cut), Err(Error::NotOrbitUnion { rep: 1 })));
    }

    #[test]
    fn units_of_small_moduli() {
        assert_eq!(units(10), vec![1, 3, 7, 9]);
        assert_eq!(units(2), vec![1]);
        assert_eq!(units(74).len(), 36);
    }
}
