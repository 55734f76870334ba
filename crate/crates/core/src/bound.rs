//! Dimension of trace kernels on twisted polynomial spaces, and the
//! coset-counting lower bound for subfield-subcode dimension.
//!
//! Throughout, `g` is a cyclotomic twist polynomial with n non-roots and
//! `D` is a degree bound. The quantity of interest is
//!
//! ```text
//! ker(g, D) = dim_{F_p} { f : deg f < D, T(f g) = 0 }
//! ```
//!
//! and the subfield-subcode of GRS_{n-D} with dual twist g has dimension
//! n - mD + ker(g, D). The lower bound replaces ker(g, D) by the number of
//! explicit kernel-basis polynomials of degree below D.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cosets::CosetTable;
use crate::error::{Error, Result};
use crate::galois::{relative_trace_kernel_basis, Field, FieldElem};
use crate::linalg::Echelon;
use crate::ring::PolyR;

/// Which dimension the `k` of a bound query refers to.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    /// `k` is the dimension of GRS_k⟨g⟩; the subcode is taken of its dual,
    /// so A = {0, ..., k-1}.
    #[default]
    Twist,
    /// `k` is the dimension of the code whose subfield-subcode is taken,
    /// so A = {0, ..., n-k-1}.
    Parent,
}

impl Orientation {
    /// |A| for a code of length n.
    pub fn degree_bound(self, n: usize, k: usize) -> usize {
        match self {
            Orientation::Twist => k,
            Orientation::Parent => n - k,
        }
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Orientation::Twist => "twist",
            Orientation::Parent => "parent",
        })
    }
}

impl std::str::FromStr for Orientation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "twist" => Ok(Orientation::Twist),
            "parent" => Ok(Orientation::Parent),
            _ => Err(Error::Parse(format!(
                "orientation must be twist or parent, got {s:?}"
            ))),
        }
    }
}

/// Contribution of one minimal coset I_b with b < |A|.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosetTerm {
    pub rep: usize,
    pub size: usize,
    /// |I_b ∩ A|.
    pub in_a: usize,
    /// m(|I_b ∩ A| - 1) + m - n_b.
    pub term: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub p: u32,
    pub m: u32,
    pub n: usize,
    pub k: usize,
    pub orientation: Orientation,
    /// |A|, the degree bound on f.
    pub a_len: usize,
    /// n - m|A|, which may be negative.
    pub naive: i64,
    pub contributions: Vec<CosetTerm>,
    pub bound: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kernel_dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact_dim: Option<usize>,
    /// exact_dim > bound, when the exact dimension is known.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub strict: Option<bool>,
}

impl BoundReport {
    /// Fills in the exact kernel and subfield-subcode dimensions from g.
    pub fn with_exact(mut self, g: &PolyR) -> Self {
        let ker = kernel_dim_exact(g, self.a_len);
        let exact = (self.n + ker) - self.m as usize * self.a_len;
        self.kernel_dim = Some(ker);
        self.exact_dim = Some(exact);
        self.strict = Some(exact as i64 > self.bound);
        self
    }

    /// Aligned plain-text rendering with one line per contributing coset.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "field GF({}^{})  n {}  k {} ({})  |A| {}\n",
            self.p, self.m, self.n, self.k, self.orientation, self.a_len
        ));
        out.push_str(&format!(
            "{:>8} {:>6} {:>6} {:>6}\n",
            "rep", "n_b", "|I∩A|", "term"
        ));
        for c in &self.contributions {
            out.push_str(&format!(
                "{:>8} {:>6} {:>6} {:>6}\n",
                c.rep, c.size, c.in_a, c.term
            ));
        }
        out.push_str(&format!("naive  {}\n", self.naive));
        out.push_str(&format!("bound  {}\n", self.bound));
        if let Some(k) = self.kernel_dim {
            out.push_str(&format!("kernel {k}\n"));
        }
        if let Some(e) = self.exact_dim {
            out.push_str(&format!("exact  {e}\n"));
        }
        if let Some(s) = self.strict {
            out.push_str(&format!("strict {s}\n"));
        }
        out
    }
}

/// Kernel elements of T supported on I_b: the differences
/// η^k x^b - (η^k x^b)^{p^ℓ} for k < m and 0 < ℓ < n_b, then γ_i x^b for a
/// basis γ_i of the kernel of the trace down to F_{p^{n_b}}.
pub fn kernel_basis_for_coset(field: &Arc<Field>, b: usize) -> Result<Vec<PolyR>> {
    let table = CosetTable::new(field);
    let coset = table.coset(b)?;
    let n_b = coset.size();
    let big_n = field.n();
    let p = field.p() as usize;
    let mut out = Vec::new();
    for k in 0..field.m() {
        let alpha = field.eta_pow(k as i64);
        let mut exp = b;
        for l in 1..n_b {
            exp = exp * p % big_n;
            let mut g = PolyR::monomial(field, alpha, b);
            let image = PolyR::monomial(field, field.frobenius(alpha, l as u32), exp);
            g = g.sub(&image)?;
            out.push(g);
        }
    }
    for gamma in relative_trace_kernel_basis(field, n_b as u32)? {
        out.push(PolyR::monomial(field, gamma, b));
    }
    Ok(out)
}

/// tr(η^e) for every exponent e < N.
pub fn trace_table(field: &Field) -> Vec<FieldElem> {
    (0..field.n())
        .map(|e| field.trace(field.eta_pow(e as i64)))
        .collect()
}

/// Rank profile of the F_p-linear map f ↦ Ev(T(f g)) on the points
/// `points`, where `twist_logs[t]` is the discrete log of g at `points[t]`.
///
/// Entry D of the result (0 ≤ D ≤ d_max) is the rank of the map restricted
/// to deg f < D. The subfield-subcode of GRS_{n-D} with dual twist g then has
/// dimension n - profile[D].
pub fn trace_rank_profile(
    field: &Field,
    traces: &[FieldElem],
    points: &[usize],
    twist_logs: &[usize],
    d_max: usize,
) -> Vec<usize> {
    let prime = Field::new(field.p(), 1).expect("p is prime");
    trace_rank_profile_in(&prime, field, traces, points, twist_logs, d_max)
}

pub(crate) fn trace_rank_profile_in(
    prime: &Field,
    field: &Field,
    traces: &[FieldElem],
    points: &[usize],
    twist_logs: &[usize],
    d_max: usize,
) -> Vec<usize> {
    let big_n = field.n();
    let n = points.len();
    let m = field.m() as usize;
    let mut ech = Echelon::new(prime, n);
    let mut profile = Vec::with_capacity(d_max + 1);
    profile.push(0);
    // base[t] = log of η^{i a_t} g(a_t) for the current degree i.
    let mut base: Vec<usize> = twist_logs.to_vec();
    let mut row = vec![FieldElem::ZERO; n];
    for _ in 0..d_max {
        if !ech.is_full() {
            for j in 0..m {
                for (r, &b) in row.iter_mut().zip(&base) {
                    let e = b + j;
                    *r = traces[if e >= big_n { e - big_n } else { e }];
                }
                ech.insert(&row);
                if ech.is_full() {
                    break;
                }
            }
            for (b, &a) in base.iter_mut().zip(points) {
                *b = (*b + a) % big_n;
            }
        }
        profile.push(ech.rank());
    }
    profile
}

/// dim_{F_p} { f : deg f < deg_bound, T(f g) = 0 }.
pub fn kernel_dim_exact(g: &PolyR, deg_bound: usize) -> usize {
    let field = g.field();
    let values = g.ev();
    let (points, logs): (Vec<usize>, Vec<usize>) = values
        .iter()
        .enumerate()
        .filter_map(|(t, &v)| field.log(v).map(|l| (t, l as usize)))
        .unzip();
    if points.is_empty() {
        return field.m() as usize * deg_bound;
    }
    let traces = trace_table(field);
    let profile = trace_rank_profile(field, &traces, &points, &logs, deg_bound);
    field.m() as usize * deg_bound - profile[deg_bound]
}

/// The lower bound for a code of length n = N - |Z| built on the
/// non-roots of a twist polynomial with zero set Z (given as η-exponents).
pub fn mainbound(
    field: &Arc<Field>,
    zero_set: &[usize],
    k: usize,
    orientation: Orientation,
) -> Result<BoundReport> {
    let table = CosetTable::new(field);
    if !table.is_union(zero_set) {
        return Err(Error::NotCosetUnion);
    }
    let mut zs = zero_set.to_vec();
    zs.sort_unstable();
    zs.dedup();
    let n = field.n() - zs.len();
    if n == 0 {
        return Err(Error::EmptyEvaluationSet);
    }
    bound_for_length(field, &table, n, k, orientation)
}

/// The bound with its exact counterpart, for a cyclotomic twist g.
pub fn mainbound_for_twist(g: &PolyR, k: usize, orientation: Orientation) -> Result<BoundReport> {
    if !g.is_cyclotomic() {
        return Err(Error::NotCyclotomic);
    }
    let report = mainbound(g.field(), &g.zero_set(), k, orientation)?;
    Ok(report.with_exact(g))
}

/// The bound for length n without a zero-set check, reusing a coset table.
pub fn bound_for_length(
    field: &Arc<Field>,
    table: &CosetTable,
    n: usize,
    k: usize,
    orientation: Orientation,
) -> Result<BoundReport> {
    if k > n {
        return Err(Error::DimensionOutOfRange { k, n });
    }
    let m = field.m() as usize;
    let a_len = orientation.degree_bound(n, k);
    let contributions: Vec<CosetTerm> = table
        .cosets()
        .iter()
        .filter(|c| c.rep < a_len)
        .map(|c| {
            let in_a = c.elements.iter().take_while(|&&e| e < a_len).count();
            CosetTerm {
                rep: c.rep,
                size: c.size(),
                in_a,
                term: m * (in_a - 1) + m - c.size(),
            }
        })
        .collect();
    let naive = n as i64 - (m * a_len) as i64;
    let bound = naive + contributions.iter().map(|c| c.term as i64).sum::<i64>();
    Ok(BoundReport {
        p: field.p(),
        m: field.m(),
        n,
        k,
        orientation,
        a_len,
        naive,
        contributions,
        bound,
        kernel_dim: None,
        exact_dim: None,
        strict: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg;

    fn gf(p: u32, m: u32) -> Arc<Field> {
        Arc::new(Field::new(p, m).unwrap())
    }

    /// F_p coordinates of a polynomial: N coefficients of m digits each.
    fn flatten(f: &PolyR) -> Vec<FieldElem> {
        let field = f.field();
        f.coeffs()
            .iter()
            .flat_map(|&c| field.digits(c))
            .map(|d| field.prime_field().from_int(d as i64))
            .collect()
    }

    #[test]
    fn kernel_basis_sizes_and_independence() {
        for (p, m) in [(2, 4), (3, 3), (2, 3)] {
            let f = gf(p, m);
            let table = CosetTable::new(&f);
            let mut total = 0;
            for c in table.cosets() {
                let basis = kernel_basis_for_coset(&f, c.rep).unwrap();
                let m = m as usize;
                assert_eq!(basis.len(), m * (c.size() - 1) + m - c.size());
                for g in &basis {
                    assert!(g.t_map().is_zero());
                    assert!(g.support().iter().all(|&e| c.contains(e)));
                }
                let rows: Vec<_> = basis.iter().map(flatten).collect();
                assert_eq!(
                    linalg::rank(&f.prime_field(), &rows, m * f.n()),
                    basis.len()
                );
                total += basis.len();
            }
            assert_eq!(total, (m as usize - 1) * f.n());
        }
    }

    #[test]
    fn zero_coset_basis_is_trace_zero_constants() {
        let f = gf(5, 3);
        let basis = kernel_basis_for_coset(&f, 0).unwrap();
        assert_eq!(basis.len(), 2);
        for g in basis {
            assert_eq!(g.support(), vec![0]);
            assert_eq!(f.trace_value(g.coeff(0)), 0);
        }
        assert_eq!(
            kernel_basis_for_coset(&f, 5).unwrap_err(),
            Error::NotRepresentative(5)
        );
    }

    #[test]
    fn kernel_dims_at_the_extremes() {
        let f = gf(2, 4);
        let one = PolyR::constant(&f, FieldElem::ONE);
        assert_eq!(kernel_dim_exact(&one, 0), 0);
        assert_eq!(kernel_dim_exact(&one, f.n()), 3 * f.n());
    }

    #[test]
    fn full_length_degenerate_bound() {
        let f = gf(2, 4);
        let r = mainbound(&f, &[], 15, Orientation::Parent).unwrap();
        assert_eq!((r.a_len, r.bound), (0, 15));
        assert!(r.contributions.is_empty());
        assert!(mainbound(&f, &[1], 3, Orientation::Twist).is_err());
        assert_eq!(
            mainbound(&f, &[], 16, Orientation::Twist).unwrap_err(),
            Error::DimensionOutOfRange { k: 16, n: 15 }
        );
    }

    #[test]
    fn orientations_agree_on_mirrored_k() {
        let f = gf(3, 3);
        for k in 0..=26 {
            let a = mainbound(&f, &[], k, Orientation::Twist).unwrap();
            let b = mainbound(&f, &[], 26 - k, Orientation::Parent).unwrap();
            assert_eq!(a.bound, b.bound);
        }
    }

    #[test]
    fn bound_never_exceeds_exact_on_gf16() {
        let f = gf(2, 4);
        let g = PolyR::from_support(&f, &[1, 2, 4, 8]);
        for k in 0..=g.ev().iter().filter(|v| !v.is_zero()).count() {
            let r = mainbound_for_twist(&g, k, Orientation::Twist).unwrap();
            assert!(r.bound <= r.exact_dim.unwrap() as i64, "k = {k}: {r:?}");
            assert!(r.bound >= r.naive);
        }
    }
}
