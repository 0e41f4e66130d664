//! Hadamard matrices of order `2v` from periodic Golay pairs.
//!
//! With circulants `C_A`, `C_B` built from a pair, `C_A C_Aᵗ + C_B C_Bᵗ = 2v·I`,
//! and the block matrix `[[C_A, C_B], [-C_Bᵗ, C_Aᵗ]]` is Hadamard.

use std::fmt;

use crate::sequence::{BinarySequence, PeriodicGolayPair};

/// Dense row-major `±1` matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SquareMatrix {
    order: usize,
    entries: Vec<i8>,
}

impl SquareMatrix {
    pub fn from_rows(rows: &[Vec<i8>]) -> Self {
        let order = rows.len();
        assert!(rows.iter().all(|r| r.len() == order), "matrix must be square");
        assert!(rows.iter().flatten().all(|&e| e == 1 || e == -1), "entries must be ±1");
        Self { order, entries: rows.concat() }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> i8 {
        self.entries[i * self.order + j]
    }

    pub fn row(&self, i: usize) -> &[i8] {
        &self.entries[i * self.order..(i + 1) * self.order]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[i8]> {
        self.entries.chunks(self.order)
    }

    pub fn transpose(&self) -> Self {
        let n = self.order;
        let mut entries = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                entries[j * n + i] = self.entries[i * n + j];
            }
        }
        Self { order: n, entries }
    }

    /// `M Mᵗ` in exact integer arithmetic.
    pub fn gram(&self) -> Vec<Vec<i64>> {
        (0..self.order)
            .map(|i| (0..self.order).map(|j| dot(self.row(i), self.row(j))).collect())
            .collect()
    }

    /// CSV of `±1` integers, one row per line.
    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(self.order * self.order * 3);
        for row in self.rows() {
            let cells: Vec<&str> = row.iter().map(|&e| if e > 0 { "1" } else { "-1" }).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

/// One row per line, `+` for `1` and `-` for `-1`.
impl fmt::Display for SquareMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.rows() {
            let line: String = row.iter().map(|&e| if e > 0 { '+' } else { '-' }).collect();
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

fn dot(a: &[i8], b: &[i8]) -> i64 {
    a.iter().zip(b).map(|(&x, &y)| (x * y) as i64).sum()
}

/// Row `i` is `A` cyclically shifted right by `i`.
pub fn circulant(a: &BinarySequence) -> SquareMatrix {
    let e = a.entries();
    let v = e.len();
    let mut entries = Vec::with_capacity(v * v);
    for i in 0..v {
        entries.extend((0..v).map(|j| e[(j + v - i) % v]));
    }
    SquareMatrix { order: v, entries }
}

pub fn build_hadamard(p: &PeriodicGolayPair) -> SquareMatrix {
    let ca = circulant(p.a());
    let cb = circulant(p.b());
    let (cat, cbt) = (ca.transpose(), cb.transpose());
    let v = ca.order;
    let n = 2 * v;
    let mut entries = Vec::with_capacity(n * n);
    for i in 0..v {
        entries.extend_from_slice(ca.row(i));
        entries.extend_from_slice(cb.row(i));
    }
    for i in 0..v {
        entries.extend(cbt.row(i).iter().map(|&e| -e));
        entries.extend_from_slice(cat.row(i));
    }
    SquareMatrix { order: n, entries }
}

/// `M Mᵗ = order · I` exactly.
pub fn is_hadamard(m: &SquareMatrix) -> bool {
    let n = m.order;
    (0..n).all(|i| (i..n).all(|j| dot(m.row(i), m.row(j)) == if i == j { n as i64 } else { 0 }))
}
