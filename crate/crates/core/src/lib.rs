//! Generalized Reed-Solomon codes with cyclotomic twist polynomials and their
//! subfield-subcodes.
//!
//! The crate covers finite-field arithmetic ([`galois`]), the ring
//! F_{p^m}[x]/(x^N - 1) ([`ring`]), cyclotomic cosets ([`cosets`]), linear
//! codes ([`codes`]), a lower bound on subfield-subcode dimension
//! ([`bound`]), best-known parameter tables ([`bkt`]) and the code searches
//! built on them ([`search`]).

pub mod bkt;
pub mod bound;
pub mod codes;
pub mod cosets;
pub mod error;
pub mod galois;
pub mod linalg;
pub mod ring;
pub mod search;

pub use bkt::{BktTable, Verdict};
pub use bound::{
    kernel_basis_for_coset, kernel_dim_exact, mainbound, mainbound_for_twist, BoundReport,
    CosetTerm, Orientation,
};
pub use codes::{
    grs, grs_dual_closed_form, monomial_equivalence, parse_matrix, CodeSummary, DistanceProvenance,
    GrsSpec, LinearCode,
};
pub use cosets::{coset_of, coset_unions, minimal_cosets, CosetTable, CycCoset};
pub use error::{Error, Result};
pub use galois::{make_field, relative_trace_kernel_basis, Field, FieldElem};
pub use ring::{cyclotomic_component, interp, interp_lagrange, PolyR};
pub use search::{
    alg1_search, alg2_search, derive_chain, parse_steps, rebuild, search, Algorithm, ChainStep,
    SearchConfig, SearchHit,
};
