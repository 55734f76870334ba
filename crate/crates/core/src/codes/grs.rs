use std::sync::Arc;

use crate::codes::{DistanceProvenance, LinearCode};
use crate::error::{Error, Result};
use crate::galois::{Field, FieldElem};
use crate::ring::PolyR;

/// GRS_k(α, v): evaluation points given as η-exponents, coordinate i being
/// v_i f(η^{points[i]}) for deg f < k.
#[derive(Clone, Debug, PartialEq)]
pub struct GrsSpec {
    field: Arc<Field>,
    points: Vec<usize>,
    twist: Vec<FieldElem>,
    k: usize,
}

impl GrsSpec {
    pub fn new(
        field: &Arc<Field>,
        points: Vec<usize>,
        twist: Vec<FieldElem>,
        k: usize,
    ) -> Result<Self> {
        if twist.len() != points.len() {
            return Err(Error::LengthMismatch {
                expected: points.len(),
                got: twist.len(),
            });
        }
        let n = points.len();
        if n == 0 {
            return Err(Error::EmptyEvaluationSet);
        }
        let big_n = field.n();
        let mut seen = vec![false; big_n];
        for &e in &points {
            if e >= big_n {
                return Err(Error::ExponentOutOfRange { exp: e, n: big_n });
            }
            if seen[e] {
                return Err(Error::DuplicatePoint);
            }
            seen[e] = true;
        }
        if twist.iter().any(|v| v.is_zero()) {
            return Err(Error::ZeroTwist);
        }
        if k > n {
            return Err(Error::DimensionOutOfRange { k, n });
        }
        Ok(GrsSpec {
            field: Arc::clone(field),
            points,
            twist,
            k,
        })
    }

    /// GRS_k⟨g⟩: evaluate at every nonzero point where g does not vanish,
    /// in ascending exponent order, with twist v_i = g(α_i).
    pub fn from_twist_poly(g: &PolyR, k: usize) -> Result<Self> {
        let values = g.ev();
        let (points, twist): (Vec<usize>, Vec<FieldElem>) = values
            .into_iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .unzip();
        Self::new(g.field(), points, twist, k)
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn points(&self) -> &[usize] {
        &self.points
    }

    pub fn twist(&self) -> &[FieldElem] {
        &self.twist
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn with_k(&self, k: usize) -> Result<Self> {
        Self::new(&self.field, self.points.clone(), self.twist.clone(), k)
    }
}

/// Generator rows Ev_{α,v}(x^j) for j < k. MDS, so d = n - k + 1.
pub fn grs(spec: &GrsSpec) -> LinearCode {
    let f = &spec.field;
    let n = spec.len();
    let rows = (0..spec.k)
        .map(|j| {
            spec.points
                .iter()
                .zip(&spec.twist)
                .map(|(&e, &v)| f.mul(v, f.eta_pow((e * j) as i64)))
                .collect()
        })
        .collect();
    let code = LinearCode::new(f, n, rows).expect("rows have length n");
    if spec.k == 0 {
        code
    } else {
        code.with_distance(n - spec.k + 1, DistanceProvenance::DesignMds)
    }
}

/// GRS_k(α, v)^⊥ = GRS_{n-k}(α, u) with u_i^{-1} = v_i ∏_{j≠i} (α_i - α_j).
pub fn grs_dual_closed_form(spec: &GrsSpec) -> GrsSpec {
    let f = &spec.field;
    let alphas: Vec<FieldElem> = spec.points.iter().map(|&e| f.eta_pow(e as i64)).collect();
    let twist = alphas
        .iter()
        .zip(&spec.twist)
        .enumerate()
        .map(|(i, (&a, &v))| {
            let prod = alphas
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .fold(v, |acc, (_, &b)| f.mul(acc, f.sub(a, b)));
            f.inv(prod).expect("points are distinct and v is nonzero")
        })
        .collect();
    GrsSpec {
        field: Arc::clone(f),
        points: spec.points.clone(),
        twist,
        k: spec.len() - spec.k,
    }
}

/// The diagonal scaling c_i ↦ c_i g1(α_i)^{-1} g2(α_i) over the common
/// evaluation points, taking GRS_k⟨g1⟩ onto GRS_k⟨g2⟩ for every k.
pub fn monomial_equivalence(g1: &PolyR, g2: &PolyR) -> Result<Vec<FieldElem>> {
    if !g1.field().same_as(g2.field()) {
        return Err(Error::FieldMismatch);
    }
    if !g1.is_cyclotomic() || !g2.is_cyclotomic() {
        return Err(Error::NotCyclotomic);
    }
    let f = g1.field();
    let (v1, v2) = (g1.ev(), g2.ev());
    let mut scales = Vec::new();
    for (&a, &b) in v1.iter().zip(&v2) {
        match (a.is_zero(), b.is_zero()) {
            (true, true) => {}
            (false, false) => scales.push(f.div(b, a).expect("a is nonzero")),
            _ => return Err(Error::ZeroSetMismatch),
        }
    }
    Ok(scales)
}
