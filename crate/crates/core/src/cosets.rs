//! Minimal cyclotomic cosets of Z_N under multiplication by p.

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::galois::Field;

/// The orbit `{b p^i mod N}` of its smallest element `b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CycCoset {
    pub rep: usize,
    /// Sorted ascending.
    pub elements: Vec<usize>,
}

impl CycCoset {
    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, t: usize) -> bool {
        self.elements.binary_search(&t).is_ok()
    }
}

/// The partition of Z_N into minimal cyclotomic cosets, with a reverse index.
#[derive(Clone, Debug)]
pub struct CosetTable {
    p: usize,
    n: usize,
    cosets: Vec<CycCoset>,
    coset_index: Vec<u32>,
}

impl CosetTable {
    pub fn new(field: &Field) -> Self {
        Self::with_modulus(field.p() as usize, field.n())
    }

    /// Cosets of Z_n under multiplication by p (p coprime to n).
    pub fn with_modulus(p: usize, n: usize) -> Self {
        let mut coset_index = vec![u32::MAX; n];
        let mut cosets = Vec::new();
        for b in 0..n {
            if coset_index[b] != u32::MAX {
                continue;
            }
            let mut elements = vec![b];
            let mut t = b * p % n;
            while t != b {
                elements.push(t);
                t = t * p % n;
            }
            for &t in &elements {
                coset_index[t] = cosets.len() as u32;
            }
            elements.sort_unstable();
            cosets.push(CycCoset { rep: b, elements });
        }
        CosetTable {
            p,
            n,
            cosets,
            coset_index,
        }
    }

    /// Sorted by representative.
    pub fn cosets(&self) -> &[CycCoset] {
        &self.cosets
    }

    pub fn modulus(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn coset_of(&self, t: usize) -> Result<&CycCoset> {
        if t >= self.n {
            return Err(Error::ExponentOutOfRange { exp: t, n: self.n });
        }
        Ok(&self.cosets[self.coset_index[t] as usize])
    }

    pub fn rep_of(&self, t: usize) -> usize {
        self.cosets[self.coset_index[t] as usize].rep
    }

    pub fn is_rep(&self, b: usize) -> bool {
        b < self.n && self.rep_of(b) == b
    }

    pub fn coset(&self, rep: usize) -> Result<&CycCoset> {
        if !self.is_rep(rep) {
            return Err(Error::NotRepresentative(rep));
        }
        self.coset_of(rep)
    }

    /// All exponents in the union of the cosets with the given representatives, sorted.
    pub fn union_elements(&self, reps: &[usize]) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        for &b in reps {
            out.extend_from_slice(&self.coset(b)?.elements);
        }
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    /// Whether a set of exponents is closed under multiplication by p.
    pub fn is_union(&self, exps: &[usize]) -> bool {
        let mut member = vec![false; self.n];
        for &t in exps {
            if t >= self.n {
                return false;
            }
            member[t] = true;
        }
        exps.iter().all(|&t| member[t * self.p % self.n])
    }

    /// Representatives of the cosets making up a Frobenius-closed exponent set.
    pub fn reps_of_union(&self, exps: &[usize]) -> Result<Vec<usize>> {
        if !self.is_union(exps) {
            return Err(Error::NotCosetUnion);
        }
        let mut reps: Vec<usize> = exps.iter().map(|&t| self.rep_of(t)).collect();
        reps.sort_unstable();
        reps.dedup();
        Ok(reps)
    }

    /// Unions of 1..=max_parts distinct cosets, as ascending representative
    /// tuples: all single cosets first, then pairs, then triples, each group
    /// in lexicographic order. The zero coset {0} is skipped unless requested.
    pub fn unions(
        &self,
        max_parts: usize,
        include_zero: bool,
    ) -> impl Iterator<Item = Vec<usize>> + '_ {
        let reps: Vec<usize> = self
            .cosets
            .iter()
            .map(|c| c.rep)
            .filter(|&b| include_zero || b != 0)
            .collect();
        (1..=max_parts.min(reps.len()))
            .flat_map(move |parts| reps.clone().into_iter().combinations(parts))
    }
}

pub fn minimal_cosets(field: &Field) -> Vec<CycCoset> {
    CosetTable::new(field).cosets
}

pub fn coset_of(field: &Field, t: usize) -> Result<CycCoset> {
    CosetTable::new(field).coset_of(t).cloned()
}

/// Unions of nonzero minimal cosets; see [`CosetTable::unions`].
pub fn coset_unions(field: &Field, max_parts: usize) -> Vec<Vec<usize>> {
    CosetTable::new(field).unions(max_parts, false).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf16_cosets() {
        let t = CosetTable::with_modulus(2, 15);
        let got: Vec<(usize, Vec<usize>)> = t
            .cosets()
            .iter()
            .map(|c| (c.rep, c.elements.clone()))
            .collect();
        assert_eq!(
            got,
            vec![
                (0, vec![0]),
                (1, vec![1, 2, 4, 8]),
                (3, vec![3, 6, 9, 12]),
                (5, vec![5, 10]),
                (7, vec![7, 11, 13, 14]),
            ]
        );
    }

    #[test]
    fn gf125_fixed_points() {
        let t = CosetTable::with_modulus(5, 124);
        assert_eq!(t.coset_of(31).unwrap().elements, vec![31]);
        assert_eq!(t.coset_of(32).unwrap().elements, vec![32, 36, 56]);
        assert_eq!(t.coset_of(56).unwrap().rep, 32);
        assert!(t.cosets().iter().all(|c| 3 % c.size() == 0));
    }

    #[test]
    fn gf256_coset_of_fifteen() {
        let t = CosetTable::with_modulus(2, 255);
        assert_eq!(
            t.coset_of(15).unwrap().elements,
            vec![15, 30, 60, 120, 135, 195, 225, 240]
        );
        assert_eq!(t.coset_of(0).unwrap().elements, vec![0]);
        assert!(t.coset_of(255).is_err());
    }

    #[test]
    fn union_order() {
        let t = CosetTable::with_modulus(2, 15);
        let one: Vec<_> = t.unions(1, false).collect();
        assert_eq!(one, vec![vec![1], vec![3], vec![5], vec![7]]);
        let two: Vec<_> = t.unions(2, false).skip(4).collect();
        assert_eq!(
            two,
            vec![
                vec![1, 3],
                vec![1, 5],
                vec![1, 7],
                vec![3, 5],
                vec![3, 7],
                vec![5, 7]
            ]
        );
        // c + C(c,2) + C(c,3) with c = 4
        assert_eq!(t.unions(3, false).count(), 4 + 6 + 4);
        assert_eq!(t.unions(1, true).next(), Some(vec![0]));
    }

    #[test]
    fn union_membership() {
        let t = CosetTable::with_modulus(2, 15);
        assert!(t.is_union(&[5, 10]));
        assert!(!t.is_union(&[5]));
        assert_eq!(t.reps_of_union(&[1, 2, 4, 8, 5, 10]).unwrap(), vec![1, 5]);
        assert_eq!(t.union_elements(&[5, 0]).unwrap(), vec![0, 5, 10]);
        assert!(t.union_elements(&[2]).is_err());
    }
}
