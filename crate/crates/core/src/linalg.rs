//! Exact Gaussian elimination over a [`Field`].
//!
//! Matrices are plain `Vec<Vec<FieldElem>>` rows. [`Echelon`] is an
//! incremental row basis used for rank profiles; over F_2 it packs rows into
//! 64-bit words, and over small odd prime fields it uses byte rows with a
//! multiplication table.

use crate::galois::{Field, FieldElem};

/// Reduces `rows` to reduced row echelon form in place, dropping zero rows.
/// Returns the pivot column of each remaining row.
pub fn rref(field: &Field, rows: &mut Vec<Vec<FieldElem>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(sel) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, sel);
        let inv = field.inv(rows[r][c]).expect("pivot is nonzero");
        if inv != FieldElem::ONE {
            for x in rows[r][c..].iter_mut() {
                *x = field.mul(*x, inv);
            }
        }
        let (head, tail) = rows.split_at_mut(r);
        let (pivot_row, tail) = tail.split_first_mut().expect("row r exists");
        for other in head.iter_mut().chain(tail.iter_mut()) {
            let factor = other[c];
            if factor.is_zero() {
                continue;
            }
            let factor = field.neg(factor);
            for (x, &y) in other[c..].iter_mut().zip(&pivot_row[c..]) {
                if !y.is_zero() {
                    *x = field.add(*x, field.mul(factor, y));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub fn rank(field: &Field, rows: &[Vec<FieldElem>], ncols: usize) -> usize {
    let mut ech = Echelon::new(field, ncols);
    for row in rows {
        ech.insert(row);
        if ech.rank() == ncols {
            break;
        }
    }
    ech.rank()
}

/// Basis of the right kernel `{x : A x = 0}` of the matrix with the given rows.
pub fn nullspace(field: &Field, rows: &[Vec<FieldElem>], ncols: usize) -> Vec<Vec<FieldElem>> {
    let mut reduced = rows.to_vec();
    let pivots = rref(field, &mut reduced, ncols);
    let mut is_pivot = vec![false; ncols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    (0..ncols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![FieldElem::ZERO; ncols];
            v[free] = FieldElem::ONE;
            for (row, &pc) in reduced.iter().zip(&pivots) {
                v[pc] = field.neg(row[free]);
            }
            v
        })
        .collect()
}

/// Whether two row sets span the same subspace.
pub fn same_row_space(
    field: &Field,
    a: &[Vec<FieldElem>],
    b: &[Vec<FieldElem>],
    ncols: usize,
) -> bool {
    let mut ra = a.to_vec();
    let mut rb = b.to_vec();
    rref(field, &mut ra, ncols);
    rref(field, &mut rb, ncols);
    ra == rb
}

/// An incrementally grown row basis in semi-echelon form: each stored row's
/// first nonzero entry is its pivot and no two rows share a pivot.
pub struct Echelon<'f> {
    field: &'f Field,
    ncols: usize,
    pivot_of: Vec<Option<u32>>,
    store: Store,
}

enum Store {
    Bits {
        words: usize,
        rows: Vec<Vec<u64>>,
    },
    Small {
        p: u8,
        /// mul[a][b] = a b mod p.
        mul: Vec<[u8; 256]>,
        inv: Vec<u8>,
        rows: Vec<Vec<u8>>,
    },
    Elems {
        rows: Vec<Vec<FieldElem>>,
    },
}

impl<'f> Echelon<'f> {
    pub fn new(field: &'f Field, ncols: usize) -> Self {
        let store = if field.q() == 2 {
            Store::Bits {
                words: ncols.div_ceil(64),
                rows: Vec::new(),
            }
        } else if field.m() == 1 && field.p() < 256 {
            let p = field.p() as usize;
            let mul = (0..p)
                .map(|a| {
                    let mut t = [0u8; 256];
                    for (b, x) in t.iter_mut().enumerate().take(p) {
                        *x = (a * b % p) as u8;
                    }
                    t
                })
                .collect();
            let inv = (0..p)
                .map(|a| (0..p).find(|&b| a * b % p == 1).unwrap_or(0) as u8)
                .collect();
            Store::Small {
                p: p as u8,
                mul,
                inv,
                rows: Vec::new(),
            }
        } else {
            Store::Elems { rows: Vec::new() }
        };
        Echelon {
            field,
            ncols,
            pivot_of: vec![None; ncols],
            store,
        }
    }

    pub fn rank(&self) -> usize {
        match &self.store {
            Store::Bits { rows, .. } => rows.len(),
            Store::Small { rows, .. } => rows.len(),
            Store::Elems { rows } => rows.len(),
        }
    }

    pub fn is_full(&self) -> bool {
        self.rank() == self.ncols
    }

    /// Adds a row; returns whether the rank grew.
    pub fn insert(&mut self, row: &[FieldElem]) -> bool {
        debug_assert_eq!(row.len(), self.ncols);
        match &mut self.store {
            Store::Bits { words, rows } => {
                let mut v = vec![0u64; *words];
                for (i, x) in row.iter().enumerate() {
                    if !x.is_zero() {
                        v[i / 64] |= 1 << (i % 64);
                    }
                }
                let mut w = 0;
                while w < *words {
                    if v[w] == 0 {
                        w += 1;
                        continue;
                    }
                    let c = w * 64 + v[w].trailing_zeros() as usize;
                    match self.pivot_of[c] {
                        Some(r) => {
                            for (a, b) in v[w..].iter_mut().zip(&rows[r as usize][w..]) {
                                *a ^= *b;
                            }
                        }
                        None => {
                            self.pivot_of[c] = Some(rows.len() as u32);
                            rows.push(v);
                            return true;
                        }
                    }
                }
                false
            }
            Store::Small { p, mul, inv, rows } => {
                let p = *p;
                let mut v: Vec<u8> = row.iter().map(|x| x.raw() as u8).collect();
                for c in 0..self.ncols {
                    if v[c] == 0 {
                        continue;
                    }
                    match self.pivot_of[c] {
                        Some(r) => {
                            let table = &mul[(p - v[c]) as usize];
                            for (a, &b) in v[c..].iter_mut().zip(&rows[r as usize][c..]) {
                                let s = a.wrapping_add(table[b as usize]);
                                *a = if s >= p || s < *a {
                                    s.wrapping_sub(p)
                                } else {
                                    s
                                };
                            }
                        }
                        None => {
                            let table = &mul[inv[v[c] as usize] as usize];
                            for x in v[c..].iter_mut() {
                                *x = table[*x as usize];
                            }
                            self.pivot_of[c] = Some(rows.len() as u32);
                            rows.push(v);
                            return true;
                        }
                    }
                }
                false
            }
            Store::Elems { rows } => {
                let field = self.field;
                let mut v = row.to_vec();
                for c in 0..self.ncols {
                    if v[c].is_zero() {
                        continue;
                    }
                    match self.pivot_of[c] {
                        Some(r) => {
                            let factor = field.neg(v[c]);
                            for (a, &b) in v[c..].iter_mut().zip(&rows[r as usize][c..]) {
                                if !b.is_zero() {
                                    *a = field.add(*a, field.mul(factor, b));
                                }
                            }
                        }
                        None => {
                            let inv = field.inv(v[c]).expect("nonzero");
                            for x in v[c..].iter_mut() {
                                *x = field.mul(*x, inv);
                            }
                            self.pivot_of[c] = Some(rows.len() as u32);
                            rows.push(v);
                            return true;
                        }
                    }
                }
                false
            }
        }
    }
}
