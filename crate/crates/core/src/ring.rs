//! The ring R = F_{p^m}[x]/(x^N - 1) and the trace map T lifted to it.
//!
//! Evaluation at the N nonzero points `1, η, ..., η^(N-1)` is a ring
//! isomorphism R → F_{p^m}^N; [`PolyR::ev`] and [`interp`] are the two
//! directions. Cyclotomic polynomials (those with g^p = g) are exactly the
//! elements of R whose values all lie in F_p.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::cosets::CosetTable;
use crate::error::{Error, Result};
use crate::galois::{Field, FieldElem};

#[derive(Clone, PartialEq, Eq)]
pub struct PolyR {
    field: Arc<Field>,
    coeffs: Vec<FieldElem>,
}

impl fmt::Debug for PolyR {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyR[{}]({self})", self.field)
    }
}

/// Which cyclotomicity tests a polynomial passes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CyclotomicCheck {
    /// g^p ≡ g mod x^N - 1; this is the deciding test.
    pub frobenius_fixed: bool,
    /// Every value of ev(g) lies in F_p.
    pub prime_valued: bool,
}

impl PolyR {
    pub fn zero(field: &Arc<Field>) -> Self {
        PolyR {
            field: Arc::clone(field),
            coeffs: vec![FieldElem::ZERO; field.n()],
        }
    }

    pub fn constant(field: &Arc<Field>, c: FieldElem) -> Self {
        Self::monomial(field, c, 0)
    }

    /// c x^e, exponent taken mod N.
    pub fn monomial(field: &Arc<Field>, c: FieldElem, e: usize) -> Self {
        let mut f = Self::zero(field);
        f.coeffs[e % field.n()] = c;
        f
    }

    pub fn from_coeffs(field: &Arc<Field>, coeffs: Vec<FieldElem>) -> Result<Self> {
        if coeffs.len() != field.n() {
            return Err(Error::LengthMismatch {
                expected: field.n(),
                got: coeffs.len(),
            });
        }
        Ok(PolyR {
            field: Arc::clone(field),
            coeffs,
        })
    }

    /// The sum of x^e over the given exponents (mod N), each coefficient 1.
    pub fn from_support(field: &Arc<Field>, exps: &[usize]) -> Self {
        let mut f = Self::zero(field);
        for &e in exps {
            let e = e % field.n();
            f.coeffs[e] = field.add(f.coeffs[e], FieldElem::ONE);
        }
        f
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElem {
        self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Largest index with a nonzero coefficient; `None` (below every integer)
    /// for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.coeffs.len())
            .filter(|&i| !self.coeffs[i].is_zero())
            .collect()
    }

    fn check_same(&self, other: &PolyR) -> Result<()> {
        if self.field.same_as(&other.field) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn add(&self, other: &PolyR) -> Result<PolyR> {
        self.check_same(other)?;
        let f = &self.field;
        Ok(PolyR {
            field: Arc::clone(f),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| f.add(a, b))
                .collect(),
        })
    }

    pub fn sub(&self, other: &PolyR) -> Result<PolyR> {
        self.add(&other.scale(self.field.neg(FieldElem::ONE)))
    }

    pub fn scale(&self, c: FieldElem) -> PolyR {
        let f = &self.field;
        PolyR {
            field: Arc::clone(f),
            coeffs: self.coeffs.iter().map(|&a| f.mul(a, c)).collect(),
        }
    }

    /// Product modulo x^N - 1.
    pub fn mul(&self, other: &PolyR) -> Result<PolyR> {
        self.check_same(other)?;
        let f = &self.field;
        let n = f.n();
        let mut out = vec![FieldElem::ZERO; n];
        let rhs: Vec<(usize, FieldElem)> = other
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, &c)| (i, c))
            .collect();
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for &(j, b) in &rhs {
                let t = (i + j) % n;
                out[t] = f.add(out[t], f.mul(a, b));
            }
        }
        Ok(PolyR {
            field: Arc::clone(f),
            coeffs: out,
        })
    }

    /// f^p, computed as Σ c_i^p x^(ip mod N).
    pub fn frobenius(&self) -> PolyR {
        let f = &self.field;
        let n = f.n();
        let p = f.p() as usize;
        let mut out = vec![FieldElem::ZERO; n];
        for (i, &c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                out[i * p % n] = f.frobenius(c, 1);
            }
        }
        PolyR {
            field: Arc::clone(f),
            coeffs: out,
        }
    }

    /// T(f) = f + f^p + ... + f^(p^(m-1)).
    pub fn t_map(&self) -> PolyR {
        let f = &self.field;
        let mut acc = self.clone();
        let mut term = self.clone();
        for _ in 1..f.m() {
            term = term.frobenius();
            for (a, &b) in acc.coeffs.iter_mut().zip(&term.coeffs) {
                *a = f.add(*a, b);
            }
        }
        acc
    }

    /// f(x) for a single point.
    pub fn eval(&self, x: FieldElem) -> FieldElem {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(FieldElem::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// (f(1), f(η), ..., f(η^(N-1))).
    pub fn ev(&self) -> Vec<FieldElem> {
        let f = &self.field;
        let n = f.n();
        let terms: Vec<(usize, u32)> = self
            .coeffs
            .iter()
            .enumerate()
            .filter_map(|(i, &c)| f.log(c).map(|l| (i, l)))
            .collect();
        (0..n)
            .map(|j| {
                terms.iter().fold(FieldElem::ZERO, |acc, &(i, l)| {
                    let e = (l as usize + i * j % n) % n;
                    f.add(acc, f.eta_pow(e as i64))
                })
            })
            .collect()
    }

    pub fn cyclotomic_check(&self) -> CyclotomicCheck {
        CyclotomicCheck {
            frobenius_fixed: self.frobenius() == *self,
            prime_valued: self.ev().iter().all(|&v| self.field.in_prime_field(v)),
        }
    }

    pub fn is_cyclotomic(&self) -> bool {
        self.frobenius() == *self
    }

    /// Some h with T(h) = self, built by lifting each value through the
    /// (surjective) trace and interpolating. `None` unless self is cyclotomic.
    pub fn trace_preimage(&self) -> Option<PolyR> {
        let f = &self.field;
        let values = self.ev();
        if !values.iter().all(|&v| f.in_prime_field(v)) {
            return None;
        }
        let lift_one = f.elements().find(|&b| f.trace_value(b) == 1)?;
        let lifted: Vec<FieldElem> = values.iter().map(|&v| f.mul(v, lift_one)).collect();
        interp(f, &lifted).ok()
    }

    /// Exponents j with g(η^j) = 0, ascending.
    pub fn zero_set(&self) -> Vec<usize> {
        self.ev()
            .iter()
            .enumerate()
            .filter(|(_, v)| v.is_zero())
            .map(|(j, _)| j)
            .collect()
    }

    /// ĝ: the interpolation of the 0/1 indicator of the non-roots of g.
    pub fn normalize_hat(&self) -> Result<PolyR> {
        if !self.is_cyclotomic() {
            return Err(Error::NotCyclotomic);
        }
        let values: Vec<FieldElem> = self
            .ev()
            .into_iter()
            .map(|v| {
                if v.is_zero() {
                    FieldElem::ZERO
                } else {
                    FieldElem::ONE
                }
            })
            .collect();
        interp(&self.field, &values)
    }

    /// Splits f into components f_b supported on the minimal coset I_b. Only
    /// nonzero components are returned.
    pub fn coset_decompose(&self) -> BTreeMap<usize, PolyR> {
        let table = CosetTable::new(&self.field);
        let mut parts: BTreeMap<usize, PolyR> = BTreeMap::new();
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let part = parts
                .entry(table.rep_of(i))
                .or_insert_with(|| PolyR::zero(&self.field));
            part.coeffs[i] = c;
        }
        parts
    }

    pub fn parse(field: &Arc<Field>, s: &str) -> Result<PolyR> {
        let mut f = PolyR::zero(field);
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        for term in s.split('+') {
            let term: String = term.split_whitespace().collect();
            if term.is_empty() {
                return Err(Error::Parse(format!("empty term in {s:?}")));
            }
            let (coeff, exp) = match term.find('x') {
                None => (field.parse_elem(&term)?, 0),
                Some(pos) => {
                    let c = term[..pos].trim_end_matches('*');
                    let c = if c.is_empty() {
                        FieldElem::ONE
                    } else {
                        field.parse_elem(c)?
                    };
                    let rest = &term[pos + 1..];
                    let e = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^')
                            .and_then(|e| e.parse::<usize>().ok())
                            .ok_or_else(|| Error::Parse(format!("bad exponent in {term:?}")))?
                    };
                    (c, e)
                }
            };
            let e = exp % field.n();
            f.coeffs[e] = field.add(f.coeffs[e], coeff);
        }
        Ok(f)
    }
}

impl fmt::Display for PolyR {
    /// Sparse terms in descending degree, coefficients as `e<j>` (omitted when 1).
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let f = &self.field;
        let mut first = true;
        for i in (0..self.coeffs.len()).rev() {
            let c = self.coeffs[i];
            if c.is_zero() {
                continue;
            }
            if !first {
                out.write_str(" + ")?;
            }
            first = false;
            let coeff = f.format_elem(c);
            match (i, c == FieldElem::ONE) {
                (0, _) if c == FieldElem::ONE => out.write_str("1")?,
                (0, _) => out.write_str(&coeff)?,
                (1, true) => out.write_str("x")?,
                (1, false) => write!(out, "{coeff}*x")?,
                (_, true) => write!(out, "x^{i}")?,
                (_, false) => write!(out, "{coeff}*x^{i}")?,
            }
        }
        if first {
            out.write_str("0")?;
        }
        Ok(())
    }
}

/// Ev⁻¹ by the inverse transform over ⟨η⟩: c_i = N⁻¹ Σ_j v_j η^(-ij), with N⁻¹ = -1.
pub fn interp(field: &Arc<Field>, values: &[FieldElem]) -> Result<PolyR> {
    let n = field.n();
    if values.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: values.len(),
        });
    }
    let terms: Vec<(usize, u32)> = values
        .iter()
        .enumerate()
        .filter_map(|(j, &v)| field.log(v).map(|l| (j, l)))
        .collect();
    let coeffs = (0..n)
        .map(|i| {
            let s = terms.iter().fold(FieldElem::ZERO, |acc, &(j, l)| {
                let e = l as i64 - (i * j % n) as i64;
                field.add(acc, field.eta_pow(e))
            });
            field.neg(s)
        })
        .collect();
    PolyR::from_coeffs(field, coeffs)
}

/// Lagrange interpolation through the N nonzero points, multiplying out the
/// basis polynomials explicitly. Cubic in N; kept as a reference for [`interp`].
pub fn interp_lagrange(field: &Arc<Field>, values: &[FieldElem]) -> Result<PolyR> {
    let n = field.n();
    if values.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: values.len(),
        });
    }
    let points: Vec<FieldElem> = (0..n).map(|j| field.eta_pow(j as i64)).collect();
    let mut acc = vec![FieldElem::ZERO; n];
    for (j, &v) in values.iter().enumerate() {
        if v.is_zero() {
            continue;
        }
        // Numerator Π_{t≠j} (x - α_t) in F[x] (degree N-1, no reduction needed).
        let mut num = vec![FieldElem::ONE];
        let mut denom = FieldElem::ONE;
        for (t, &a) in points.iter().enumerate() {
            if t == j {
                continue;
            }
            let mut next = vec![FieldElem::ZERO; num.len() + 1];
            for (d, &c) in num.iter().enumerate() {
                next[d + 1] = field.add(next[d + 1], c);
                next[d] = field.sub(next[d], field.mul(c, a));
            }
            num = next;
            denom = field.mul(denom, field.sub(points[j], a));
        }
        let scale = field.div(v, denom).expect("distinct points");
        for (d, &c) in num.iter().enumerate() {
            acc[d] = field.add(acc[d], field.mul(c, scale));
        }
    }
    PolyR::from_coeffs(field, acc)
}

/// T(α x^b) for a minimal coset representative b.
pub fn cyclotomic_component(field: &Arc<Field>, b: usize, alpha: FieldElem) -> Result<PolyR> {
    let table = CosetTable::new(field);
    if !table.is_rep(b) {
        return Err(Error::NotRepresentative(b));
    }
    Ok(PolyR::monomial(field, alpha, b).t_map())
}
