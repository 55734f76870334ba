//! Searches over coset-indexed twist polynomials and evaluation sets.
//!
//! Both searches walk unions of minimal cyclotomic cosets. For a union U:
//!
//! * `alg1` takes the twist g = Σ_{i ∈ U} x^i, evaluates at the non-roots of
//!   g with twist vector v_i = g(α_i);
//! * `alg2` evaluates at every nonzero point outside {η^i : i ∈ U} with the
//!   all-ones twist.
//!
//! For each k the candidate is E = tr(GRS_k(S, v))^⊥, the subfield-subcode
//! of the dual GRS code, with designed distance k + 1. Dimensions for every
//! k come from a single rank profile per union.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bkt::{BktTable, Verdict};
use crate::bound::{self, BoundReport, Orientation};
use crate::codes::{grs, DistanceProvenance, GrsSpec, LinearCode};
use crate::cosets::CosetTable;
use crate::error::{Error, Result};
use crate::galois::{Field, FieldElem};
use crate::ring::PolyR;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    #[default]
    Alg1,
    Alg2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HitKind {
    Alg1,
    Alg2,
    Derived,
}

impl From<Algorithm> for HitKind {
    fn from(a: Algorithm) -> Self {
        match a {
            Algorithm::Alg1 => HitKind::Alg1,
            Algorithm::Alg2 => HitKind::Alg2,
        }
    }
}

/// One puncture or shorten step, with 1-based coordinates of the code it
/// is applied to.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", content = "coords", rename_all = "lowercase")]
pub enum ChainStep {
    Puncture(Vec<usize>),
    Shorten(Vec<usize>),
}

impl ChainStep {
    pub fn coords(&self) -> &[usize] {
        match self {
            ChainStep::Puncture(c) | ChainStep::Shorten(c) => c,
        }
    }

    pub fn apply(&self, code: &LinearCode) -> Result<LinearCode> {
        match self {
            ChainStep::Puncture(c) => code.puncture(c),
            ChainStep::Shorten(c) => code.shorten(c),
        }
    }
}

impl fmt::Display for ChainStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (op, c) = match self {
            ChainStep::Puncture(c) => ("puncture", c),
            ChainStep::Shorten(c) => ("shorten", c),
        };
        let coords: Vec<String> = c.iter().map(usize::to_string).collect();
        write!(f, "{op}:{}", coords.join(","))
    }
}

impl FromStr for ChainStep {
    type Err = Error;

    /// `puncture:240` or `shorten:239,238`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("step {s:?} is not op:c1,c2,..."));
        let (op, rest) = s.trim().split_once(':').ok_or_else(bad)?;
        let coords = rest
            .split(',')
            .map(|c| c.trim().parse::<usize>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?;
        match op.trim() {
            "puncture" => Ok(ChainStep::Puncture(coords)),
            "shorten" => Ok(ChainStep::Shorten(coords)),
            _ => Err(bad()),
        }
    }
}

/// Parses `step;step;...`, ignoring empty entries.
pub fn parse_steps(s: &str) -> Result<Vec<ChainStep>> {
    s.split(';')
        .filter(|t| !t.trim().is_empty())
        .map(str::parse)
        .collect()
}

/// A found code together with enough information to rebuild it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchHit {
    /// Field description `p^m/modulus`.
    pub field: String,
    pub p: u32,
    pub m: u32,
    pub kind: HitKind,
    /// The construction behind a derived hit.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub base: Option<Algorithm>,
    /// Representatives of the coset union: the twist support for alg1, the
    /// removed exponents for alg2.
    pub cosets: Vec<usize>,
    /// Twist polynomial in text form ("1" for alg2).
    pub twist: String,
    pub k: usize,
    pub n: usize,
    pub dim: usize,
    pub d_lb: usize,
    pub provenance: DistanceProvenance,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<BoundReport>,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub best_known: Option<u32>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub chain: Vec<ChainStep>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub algorithm: Algorithm,
    pub max_parts: usize,
    pub k_min: usize,
    /// Defaults to n - 1 for each candidate.
    pub k_max: Option<usize>,
    pub include_zero_coset: bool,
    /// Restricts the search to these unions instead of enumerating.
    pub unions: Option<Vec<Vec<usize>>>,
    /// Keep below/unknown candidates as well.
    pub keep_all: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            algorithm: Algorithm::Alg1,
            max_parts: 3,
            k_min: 1,
            k_max: None,
            include_zero_coset: false,
            unions: None,
            keep_all: false,
        }
    }
}

/// Evaluation points and twist for one coset union.
#[derive(Clone, Debug)]
pub struct Candidate {
    pub algorithm: Algorithm,
    pub reps: Vec<usize>,
    pub twist: PolyR,
    pub points: Vec<usize>,
    pub twist_values: Vec<FieldElem>,
}

impl Candidate {
    pub fn new(field: &Arc<Field>, algorithm: Algorithm, reps: &[usize]) -> Result<Self> {
        let table = CosetTable::new(field);
        let exps = table.union_elements(reps)?;
        let mut reps = reps.to_vec();
        reps.sort_unstable();
        reps.dedup();
        match algorithm {
            Algorithm::Alg1 => {
                let g = PolyR::from_support(field, &exps);
                let (points, twist_values): (Vec<usize>, Vec<FieldElem>) = g
                    .ev()
                    .into_iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .unzip();
                Ok(Candidate {
                    algorithm,
                    reps,
                    twist: g,
                    points,
                    twist_values,
                })
            }
            Algorithm::Alg2 => {
                let mut removed = vec![false; field.n()];
                for &e in &exps {
                    removed[e] = true;
                }
                let points: Vec<usize> = (0..field.n()).filter(|&e| !removed[e]).collect();
                let twist_values = vec![FieldElem::ONE; points.len()];
                Ok(Candidate {
                    algorithm,
                    reps,
                    twist: PolyR::constant(field, FieldElem::ONE),
                    points,
                    twist_values,
                })
            }
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Exponents of the points left out, which form a coset union.
    pub fn zero_set(&self) -> Vec<usize> {
        let n = self.twist.field().n();
        let mut keep = vec![false; n];
        for &e in &self.points {
            keep[e] = true;
        }
        (0..n).filter(|&e| !keep[e]).collect()
    }

    pub fn grs_spec(&self, k: usize) -> Result<GrsSpec> {
        GrsSpec::new(
            self.twist.field(),
            self.points.clone(),
            self.twist_values.clone(),
            k,
        )
    }

    /// tr(GRS_k)^⊥ with d_lb = k + 1.
    pub fn code(&self, k: usize) -> Result<LinearCode> {
        let spec = self.grs_spec(k)?;
        let e = grs(&spec).trace_code().dual();
        Ok(e.with_distance(k + 1, DistanceProvenance::DesignMds))
    }

    /// dim tr(GRS_k)^⊥ for k = 0..=k_max.
    pub fn dimension_profile(&self, k_max: usize) -> Vec<usize> {
        let field = self.twist.field();
        let traces = bound::trace_table(field);
        self.profile_with(field, &traces, k_max)
    }

    fn profile_with(&self, field: &Field, traces: &[FieldElem], k_max: usize) -> Vec<usize> {
        let logs: Vec<usize> = self
            .twist_values
            .iter()
            .map(|&v| field.log(v).expect("twist values are nonzero") as usize)
            .collect();
        let prime = Field::new(field.p(), 1).expect("p is prime");
        bound::trace_rank_profile_in(&prime, field, traces, &self.points, &logs, k_max)
            .into_iter()
            .map(|r| self.len() - r)
            .collect()
    }

    fn twist_text(&self) -> String {
        match self.algorithm {
            Algorithm::Alg1 => self.twist.to_string(),
            Algorithm::Alg2 => "1".to_string(),
        }
    }
}

/// Runs the configured construction over every coset union. Hits come out ordered by coset
/// tuple, then k, independent of scheduling.
pub fn search(
    field: &Arc<Field>,
    config: &SearchConfig,
    table: &BktTable,
) -> Result<Vec<SearchHit>> {
    let cosets = CosetTable::new(field);
    let unions: Vec<Vec<usize>> = match &config.unions {
        Some(u) => u.clone(),
        None => cosets
            .unions(config.max_parts, config.include_zero_coset)
            .collect(),
    };
    let traces = bound::trace_table(field);
    let per_union: Vec<Result<Vec<SearchHit>>> = unions
        .par_iter()
        .map(|reps| search_union(field, &traces, config, table, reps))
        .collect();
    let mut hits = Vec::new();
    for h in per_union {
        hits.extend(h?);
    }
    Ok(hits)
}

pub fn alg1_search(
    field: &Arc<Field>,
    max_parts: usize,
    k_min: usize,
    k_max: Option<usize>,
    table: &BktTable,
) -> Result<Vec<SearchHit>> {
    let config = SearchConfig {
        algorithm: Algorithm::Alg1,
        max_parts,
        k_min,
        k_max,
        ..SearchConfig::default()
    };
    search(field, &config, table)
}

pub fn alg2_search(
    field: &Arc<Field>,
    max_parts: usize,
    k_min: usize,
    k_max: Option<usize>,
    table: &BktTable,
) -> Result<Vec<SearchHit>> {
    let config = SearchConfig {
        algorithm: Algorithm::Alg2,
        max_parts,
        k_min,
        k_max,
        ..SearchConfig::default()
    };
    search(field, &config, table)
}

fn search_union(
    field: &Arc<Field>,
    traces: &[FieldElem],
    config: &SearchConfig,
    table: &BktTable,
    reps: &[usize],
) -> Result<Vec<SearchHit>> {
    let cand = Candidate::new(field, config.algorithm, reps)?;
    let n = cand.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    let k_hi = config.k_max.unwrap_or(n - 1).min(n - 1);
    let k_lo = config.k_min.max(1);
    if k_lo > k_hi {
        return Ok(Vec::new());
    }
    let profile = cand.profile_with(field, traces, k_hi);
    let zero_set = cand.zero_set();
    let mut hits = Vec::new();
    for (k, &dim) in profile.iter().enumerate().skip(k_lo) {
        if dim == 0 {
            continue;
        }
        let d_lb = k + 1;
        let verdict = table.verdict(n, dim, d_lb);
        if !config.keep_all && !matches!(verdict, Verdict::Improves | Verdict::Ties) {
            continue;
        }
        let mut report = bound::mainbound(field, &zero_set, k, Orientation::Twist)?;
        let m = field.m() as usize;
        report.kernel_dim = Some(dim + m * k - n);
        report.exact_dim = Some(dim);
        report.strict = Some(dim as i64 > report.bound);
        hits.push(SearchHit {
            field: field.to_string(),
            p: field.p(),
            m: field.m(),
            kind: config.algorithm.into(),
            base: None,
            cosets: cand.reps.clone(),
            twist: cand.twist_text(),
            k,
            n,
            dim,
            d_lb,
            provenance: DistanceProvenance::DesignMds,
            bound: Some(report),
            verdict,
            best_known: table.lookup(n, dim),
            chain: Vec::new(),
        });
    }
    Ok(hits)
}

fn base_algorithm(hit: &SearchHit) -> Result<Algorithm> {
    match (hit.kind, hit.base) {
        (HitKind::Alg1, _) => Ok(Algorithm::Alg1),
        (HitKind::Alg2, _) => Ok(Algorithm::Alg2),
        (HitKind::Derived, Some(a)) => Ok(a),
        (HitKind::Derived, None) => Err(Error::Parse(
            "derived hit does not name its base construction".into(),
        )),
    }
}

/// Rebuilds the code a hit describes, including any derivation chain.
pub fn rebuild(hit: &SearchHit) -> Result<LinearCode> {
    let field = Arc::new(hit.field.parse::<Field>()?);
    let cand = Candidate::new(&field, base_algorithm(hit)?, &hit.cosets)?;
    let mut code = cand.code(hit.k)?;
    for step in &hit.chain {
        code = step.apply(&code)?;
    }
    Ok(code)
}

/// A search hit for a single construction, whatever its verdict.
pub fn construct_hit(
    field: &Arc<Field>,
    algorithm: Algorithm,
    reps: &[usize],
    k: usize,
    table: &BktTable,
) -> Result<SearchHit> {
    let config = SearchConfig {
        algorithm,
        k_min: k,
        k_max: Some(k),
        unions: Some(vec![reps.to_vec()]),
        keep_all: true,
        ..SearchConfig::default()
    };
    let cand = Candidate::new(field, algorithm, reps)?;
    if k == 0 || k >= cand.len() {
        return Err(Error::DimensionOutOfRange {
            k,
            n: cand.len().saturating_sub(1),
        });
    }
    search(field, &config, table)?
        .pop()
        .ok_or(Error::DimensionOutOfRange { k, n: cand.len() })
}

/// Applies the steps in order and reports each intermediate code with its
/// exact dimension. Puncturing lowers d_lb by the number of removed
/// coordinates; shortening keeps it.
pub fn derive_chain(
    hit: &SearchHit,
    steps: &[ChainStep],
    table: &BktTable,
) -> Result<Vec<SearchHit>> {
    if steps.is_empty() {
        return Ok(vec![hit.clone()]);
    }
    let mut code = rebuild(hit)?.with_distance(hit.d_lb, hit.provenance);
    let base = base_algorithm(hit)?;
    let mut chain = hit.chain.clone();
    let mut out = Vec::with_capacity(steps.len());
    for step in steps {
        code = step.apply(&code)?;
        chain.push(step.clone());
        let (n, dim, d_lb) = (code.len(), code.dimension(), code.d_lb());
        out.push(SearchHit {
            kind: HitKind::Derived,
            base: Some(base),
            n,
            dim,
            d_lb,
            provenance: code.provenance(),
            bound: None,
            verdict: table.verdict(n, dim, d_lb),
            best_known: table.lookup(n, dim),
            chain: chain.clone(),
            ..hit.clone()
        });
    }
    Ok(out)
}
