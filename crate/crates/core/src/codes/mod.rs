//! Linear codes over F_p and F_{p^m}.
//!
//! A [`LinearCode`] keeps its generator rows in reduced row echelon form, so
//! the dimension is the row count and row-space equality is plain equality.
//! Each code also tracks a lower bound on its minimum distance together with
//! where that bound came from.

mod grs;
mod text;

pub use grs::{grs, grs_dual_closed_form, monomial_equivalence, GrsSpec};
pub use text::{parse_matrix, CodeSummary};

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::galois::{Field, FieldElem};
use crate::linalg;

/// Default cap on the number of codewords [`LinearCode::min_distance_exact`] may enumerate.
pub const DEFAULT_ENUMERATION_BUDGET: u128 = 1 << 24;

/// How a code's distance lower bound was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DistanceProvenance {
    /// d ≥ 1 holds for every nonzero code.
    #[serde(rename = "trivial")]
    Trivial,
    /// Singleton-bound equality of an MDS code, or a subcode of one.
    #[serde(rename = "design (MDS)")]
    DesignMds,
    /// Carried through puncturing or shortening.
    #[serde(rename = "inherited")]
    Inherited,
    /// Computed by full enumeration.
    #[serde(rename = "exact")]
    Exact,
}

impl fmt::Display for DistanceProvenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DistanceProvenance::Trivial => "trivial",
            DistanceProvenance::DesignMds => "design (MDS)",
            DistanceProvenance::Inherited => "inherited",
            DistanceProvenance::Exact => "exact",
        })
    }
}

#[derive(Clone, Debug)]
pub struct LinearCode {
    field: Arc<Field>,
    n: usize,
    basis: Vec<Vec<FieldElem>>,
    pivots: Vec<usize>,
    d_lb: usize,
    provenance: DistanceProvenance,
}

impl PartialEq for LinearCode {
    /// Same field, length, and row space. Distance bookkeeping is ignored.
    fn eq(&self, other: &Self) -> bool {
        self.field.same_as(&other.field) && self.n == other.n && self.basis == other.basis
    }
}

impl LinearCode {
    /// The row space of `rows`, with the trivial distance bound.
    pub fn new(field: &Arc<Field>, n: usize, rows: Vec<Vec<FieldElem>>) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::LengthMismatch {
                expected: n,
                got: bad.len(),
            });
        }
        let mut basis = rows;
        let pivots = linalg::rref(field, &mut basis, n);
        Ok(LinearCode {
            field: Arc::clone(field),
            n,
            basis,
            pivots,
            d_lb: 1,
            provenance: DistanceProvenance::Trivial,
        })
    }

    pub fn zero(field: &Arc<Field>, n: usize) -> Self {
        Self::new(field, n, Vec::new()).expect("no rows")
    }

    pub fn full(field: &Arc<Field>, n: usize) -> Self {
        let rows = (0..n)
            .map(|i| {
                let mut r = vec![FieldElem::ZERO; n];
                r[i] = FieldElem::ONE;
                r
            })
            .collect();
        Self::new(field, n, rows).expect("rows have length n")
    }

    pub fn with_distance(mut self, d_lb: usize, provenance: DistanceProvenance) -> Self {
        self.d_lb = d_lb;
        self.provenance = provenance;
        self
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Reduced row echelon generator matrix.
    pub fn basis(&self) -> &[Vec<FieldElem>] {
        &self.basis
    }

    /// Pivot column of each basis row; the positions form an information set.
    pub fn information_set(&self) -> &[usize] {
        &self.pivots
    }

    pub fn d_lb(&self) -> usize {
        self.d_lb
    }

    pub fn provenance(&self) -> DistanceProvenance {
        self.provenance
    }

    pub fn contains(&self, word: &[FieldElem]) -> bool {
        if word.len() != self.n {
            return false;
        }
        let mut rows = self.basis.clone();
        rows.push(word.to_vec());
        linalg::rank(&self.field, &rows, self.n) == self.dimension()
    }

    /// Rank n - k, orthogonal to every codeword under the standard inner product.
    /// The dual of an MDS code is MDS, so a bound meeting Singleton carries over.
    pub fn dual(&self) -> LinearCode {
        let rows = linalg::nullspace(&self.field, &self.basis, self.n);
        let dual =
            LinearCode::new(&self.field, self.n, rows).expect("nullspace rows have length n");
        let k = self.dimension();
        if k > 0 && k < self.n && self.d_lb == self.n - k + 1 {
            dual.with_distance(k + 1, DistanceProvenance::DesignMds)
        } else {
            dual
        }
    }

    /// Componentwise trace of the code, as a code over F_p. Spanned by
    /// tr(η^j r) over generator rows r and 0 ≤ j < m.
    pub fn trace_code(&self) -> LinearCode {
        let f = &self.field;
        let prime = f.prime_field();
        let mut rows = Vec::with_capacity(self.basis.len() * f.m() as usize);
        for r in &self.basis {
            for j in 0..f.m() {
                let scale = f.eta_pow(j as i64);
                rows.push(
                    r.iter()
                        .map(|&x| f.trace(f.mul(scale, x)))
                        .collect::<Vec<_>>(),
                );
            }
        }
        LinearCode::new(&prime, self.n, rows).expect("rows have length n")
    }

    /// The codewords with every coordinate in F_p, computed as the dual of
    /// the trace code of the dual.
    pub fn subfield_subcode(&self) -> LinearCode {
        let sub = self.dual().trace_code().dual();
        let (d, prov) = self.subcode_distance();
        sub.with_distance(d, prov)
    }

    /// Same code as [`subfield_subcode`](Self::subfield_subcode), found by
    /// expanding each parity check over the polynomial basis and solving over F_p.
    pub fn subfield_subcode_direct(&self) -> LinearCode {
        let f = &self.field;
        let prime = f.prime_field();
        let checks = self.dual();
        let mut rows = Vec::with_capacity(checks.dimension() * f.m() as usize);
        for h in checks.basis() {
            for t in 0..f.m() as usize {
                rows.push(
                    h.iter()
                        .map(|&x| prime.from_int(f.digit(x, t) as i64))
                        .collect::<Vec<_>>(),
                );
            }
        }
        let sub = LinearCode::new(&prime, self.n, linalg::nullspace(&prime, &rows, self.n))
            .expect("nullspace rows have length n");
        let (d, prov) = self.subcode_distance();
        sub.with_distance(d, prov)
    }

    fn subcode_distance(&self) -> (usize, DistanceProvenance) {
        match self.provenance {
            DistanceProvenance::Exact => (self.d_lb, DistanceProvenance::Inherited),
            p => (self.d_lb, p),
        }
    }

    /// dim_{F_p} of the kernel of the componentwise trace on this code.
    pub fn trace_kernel_dimension(&self) -> usize {
        self.field.m() as usize * self.dimension() - self.trace_code().dimension()
    }

    fn check_coords(&self, coords: &[usize]) -> Result<Vec<bool>> {
        let mut hit = vec![false; self.n];
        for &c in coords {
            if c == 0 || c > self.n {
                return Err(Error::CoordinateOutOfRange {
                    coord: c,
                    n: self.n,
                });
            }
            if hit[c - 1] {
                return Err(Error::DuplicateCoordinate(c));
            }
            hit[c - 1] = true;
        }
        if coords.len() >= self.n && self.n > 0 {
            return Err(Error::RemovesAllCoordinates(self.n));
        }
        Ok(hit)
    }

    /// Deletes the given 1-based coordinates. The distance bound drops by
    /// one per deleted coordinate, never below 1.
    pub fn puncture(&self, coords: &[usize]) -> Result<LinearCode> {
        let removed = self.check_coords(coords)?;
        if coords.is_empty() {
            return Ok(self.clone());
        }
        let rows = self
            .basis
            .iter()
            .map(|r| keep_columns(r, &removed))
            .collect();
        let code = LinearCode::new(&self.field, self.n - coords.len(), rows)?;
        Ok(match self.provenance {
            DistanceProvenance::Trivial => code,
            _ => code.with_distance(
                self.d_lb.saturating_sub(coords.len()).max(1),
                DistanceProvenance::Inherited,
            ),
        })
    }

    /// Keeps the codewords that vanish on the given 1-based coordinates, then
    /// deletes those coordinates. The distance bound is unchanged.
    pub fn shorten(&self, coords: &[usize]) -> Result<LinearCode> {
        let removed = self.check_coords(coords)?;
        if coords.is_empty() {
            return Ok(self.clone());
        }
        // Eliminate with the shortened columns first: rows whose pivot lies
        // outside them vanish on every shortened coordinate.
        let order: Vec<usize> = (0..self.n)
            .filter(|&c| removed[c])
            .chain((0..self.n).filter(|&c| !removed[c]))
            .collect();
        let mut permuted: Vec<Vec<FieldElem>> = self
            .basis
            .iter()
            .map(|r| order.iter().map(|&c| r[c]).collect())
            .collect();
        let pivots = linalg::rref(&self.field, &mut permuted, self.n);
        let s = coords.len();
        let rows = permuted
            .into_iter()
            .zip(pivots)
            .filter(|&(_, pc)| pc >= s)
            .map(|(r, _)| r[s..].to_vec())
            .collect();
        let code = LinearCode::new(&self.field, self.n - s, rows)?;
        Ok(match self.provenance {
            DistanceProvenance::Trivial => code,
            _ => code.with_distance(self.d_lb, DistanceProvenance::Inherited),
        })
    }

    /// Multiplies coordinate i by `scales[i]`.
    pub fn scale_coordinates(&self, scales: &[FieldElem]) -> Result<LinearCode> {
        if scales.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                got: scales.len(),
            });
        }
        let f = &self.field;
        let rows = self
            .basis
            .iter()
            .map(|r| r.iter().zip(scales).map(|(&x, &s)| f.mul(x, s)).collect())
            .collect();
        Ok(LinearCode::new(f, self.n, rows)?.with_distance(self.d_lb, self.provenance))
    }

    /// True minimum distance by enumerating every codeword. Fails when
    /// q^k exceeds `budget`.
    pub fn min_distance_exact(&self, budget: u128) -> Result<usize> {
        let k = self.dimension();
        if k == 0 {
            return Err(Error::ZeroCode);
        }
        let q = self.field.q() as u128;
        let needed = q.checked_pow(k as u32).unwrap_or(u128::MAX);
        if needed > budget {
            return Err(Error::BudgetExceeded { needed, budget });
        }
        let f = &self.field;
        // Digit value a ↦ element: 0 ↦ 0, a ↦ η^(a-1).
        let elem = |a: u32| {
            if a == 0 {
                FieldElem::ZERO
            } else {
                f.eta_pow(a as i64 - 1)
            }
        };
        let mut digits = vec![0u32; k];
        let mut word = vec![FieldElem::ZERO; self.n];
        let mut best = self.n;
        'outer: loop {
            let mut i = 0;
            loop {
                if i == k {
                    break 'outer;
                }
                let old = elem(digits[i]);
                digits[i] = (digits[i] + 1) % self.field.q();
                let delta = f.sub(elem(digits[i]), old);
                for (w, &g) in word.iter_mut().zip(&self.basis[i]) {
                    *w = f.add(*w, f.mul(delta, g));
                }
                if digits[i] != 0 {
                    break;
                }
                i += 1;
            }
            let weight = word.iter().filter(|x| !x.is_zero()).count();
            if weight > 0 && weight < best {
                best = weight;
            }
        }
        Ok(best)
    }

    pub fn summary(&self) -> CodeSummary {
        CodeSummary {
            p: self.field.p(),
            m: self.field.m(),
            n: self.n,
            k: self.dimension(),
            d_lb: self.d_lb,
            provenance: self.provenance,
        }
    }
}

fn keep_columns(row: &[FieldElem], removed: &[bool]) -> Vec<FieldElem> {
    row.iter()
        .zip(removed)
        .filter(|(_, &r)| !r)
        .map(|(&x, _)| x)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u32) -> Arc<Field> {
        Arc::new(Field::new(p, 1).unwrap())
    }

    fn code(f: &Arc<Field>, rows: &[&[i64]]) -> LinearCode {
        let n = rows[0].len();
        LinearCode::new(
            f,
            n,
            rows.iter()
                .map(|r| r.iter().map(|&x| f.from_int(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    fn hamming() -> LinearCode {
        code(
            &fp(2),
            &[
                &[1, 0, 0, 0, 1, 1, 0],
                &[0, 1, 0, 0, 1, 0, 1],
                &[0, 0, 1, 0, 0, 1, 1],
                &[0, 0, 0, 1, 1, 1, 1],
            ],
        )
    }

    #[test]
    fn dual_of_full_and_zero() {
        let f = fp(3);
        assert_eq!(LinearCode::full(&f, 4).dual().dimension(), 0);
        assert_eq!(LinearCode::zero(&f, 4).dual().dimension(), 4);
    }

    #[test]
    fn hamming_distance_is_three() {
        let h = hamming();
        assert_eq!(h.min_distance_exact(DEFAULT_ENUMERATION_BUDGET).unwrap(), 3);
        assert_eq!(h.dual().dimension(), 3);
        assert_eq!(h.dual().dual(), h);
    }

    #[test]
    fn repetition_distance() {
        let f = fp(5);
        let rep = code(&f, &[&[1, 1, 1, 1, 1, 1]]);
        assert_eq!(rep.min_distance_exact(1 << 10).unwrap(), 6);
        assert!(matches!(
            LinearCode::full(&f, 12).min_distance_exact(1000),
            Err(Error::BudgetExceeded { .. })
        ));
        assert_eq!(
            LinearCode::zero(&f, 3).min_distance_exact(10),
            Err(Error::ZeroCode)
        );
    }

    #[test]
    fn trace_of_the_gf4_repetition_code() {
        let f = Arc::new(Field::new(2, 2).unwrap());
        let rep = LinearCode::new(&f, 3, vec![vec![FieldElem::ONE; 3]]).unwrap();
        let t = rep.trace_code();
        assert_eq!(t.dimension(), 1);
        assert_eq!(t.basis()[0], vec![FieldElem::ONE; 3]);
        assert_eq!(LinearCode::zero(&f, 3).trace_code().dimension(), 0);
        let sub = rep.subfield_subcode();
        assert_eq!(sub.dimension(), 1);
        assert_eq!(sub, rep.subfield_subcode_direct());
    }

    #[test]
    fn full_space_subfield_subcode() {
        let f = Arc::new(Field::new(3, 2).unwrap());
        let sub = LinearCode::full(&f, 5).subfield_subcode();
        assert_eq!(sub, LinearCode::full(&f.prime_field(), 5));
    }

    #[test]
    fn even_weight_puncture() {
        let f = fp(2);
        let even = code(&f, &[&[1, 1, 0, 0], &[0, 1, 1, 0], &[0, 0, 1, 1]]);
        assert_eq!(even.min_distance_exact(1 << 10).unwrap(), 2);
        for c in 1..=4 {
            let p = even.puncture(&[c]).unwrap();
            assert_eq!(p.dimension(), 3);
            assert_eq!(p.min_distance_exact(1 << 10).unwrap(), 1);
        }
    }

    #[test]
    fn empty_sets_leave_codes_alone() {
        let h = hamming();
        assert_eq!(h.puncture(&[]).unwrap(), h);
        assert_eq!(h.shorten(&[]).unwrap(), h);
    }

    #[test]
    fn coordinate_validation() {
        let h = hamming();
        assert_eq!(
            h.puncture(&[0]).unwrap_err(),
            Error::CoordinateOutOfRange { coord: 0, n: 7 }
        );
        assert_eq!(
            h.shorten(&[8]).unwrap_err(),
            Error::CoordinateOutOfRange { coord: 8, n: 7 }
        );
        assert_eq!(
            h.puncture(&[2, 2]).unwrap_err(),
            Error::DuplicateCoordinate(2)
        );
        assert_eq!(
            h.puncture(&[1, 2, 3, 4, 5, 6, 7]).unwrap_err(),
            Error::RemovesAllCoordinates(7)
        );
    }

    #[test]
    fn shortening_hamming() {
        let h = hamming().with_distance(3, DistanceProvenance::Exact);
        let s = h.shorten(&[7]).unwrap();
        assert_eq!((s.len(), s.dimension()), (6, 3));
        assert_eq!(s.d_lb(), 3);
        assert_eq!(s.provenance(), DistanceProvenance::Inherited);
        assert!(s.min_distance_exact(1 << 10).unwrap() >= 3);
        let p = h.puncture(&[7]).unwrap();
        assert_eq!(p.d_lb(), 2);
        // (C^⊥)_S = (C^S)^⊥
        assert_eq!(h.dual().shorten(&[7]).unwrap(), p.dual());
    }

    #[test]
    fn trace_kernel_of_a_prime_code_is_trivial() {
        assert_eq!(hamming().trace_kernel_dimension(), 0);
    }
}
